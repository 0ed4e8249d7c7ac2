//! The chain maps between the cochain complexes:
//!
//! * `Var: Ω^q(g) → Ω^{q-1}(g; g')`, `(Var α)(g_1..g_{q-1})(g_0) = (-1)^{q-1} α(g_0, .., g_{q-1})`
//! * `i: Ω^{q-1}(g; g') → C^q(g)`, `(iβ)(g_0 ⊗ .. ⊗ g_{q-1}) = (-1)^{q-1} β(g_1..g_{q-1})(g_0)`
//! * `D: Ω^q(g) → Ω^q(J g)`, the time derivative at `t = 0`
//! * `Φ: Ω^{q-1}(g; g') → Ω^q(J g)`, `Φ(γ)(φ_1..φ_q) = Σ_i (-1)^{q-i} γ(.., φ̂_i(0), ..)(φ_i'(0))`
//! * the inclusion `Ω^q(g) → C^q(g)` of alternating cochains
//!
//! `J g` is the 1-jet algebra (value index `2k`, velocity index `2k + 1`).

use std::fmt;

use serde::Serialize;

use crate::cochain::{BasisIndex, Cochain, CochainSpace, Coefficients, Flavor, Term};
use crate::error::{Error, Result};
use crate::homology::{coboundary_between, matrix_from_terms, CohomologyBasis};
use crate::liealg::Algebra;
use crate::linalg::{DenseMatrix, SparseMatrix};
use crate::rational::{sign, Q};
use num_traits::One;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Var,
    I,
    D,
    Phi,
    Inclusion,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapKind::Var => "Var",
            MapKind::I => "i",
            MapKind::D => "D",
            MapKind::Phi => "Phi",
            MapKind::Inclusion => "inclusion",
        })
    }
}

/// Which cochain space a map reads from or writes to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceDescriptor {
    pub algebra: String,
    pub degree: usize,
    pub flavor: Flavor,
    pub coefficients: Coefficients,
    pub weight: Option<i64>,
}

/// The matrix of a chain map in the enumerated bases of one source degree.
#[derive(Clone, Debug, Serialize)]
pub struct ChainMapMatrix {
    pub kind: MapKind,
    pub source: SliceDescriptor,
    pub target: SliceDescriptor,
    pub matrix: SparseMatrix,
}

impl MapKind {
    /// The algebra the target lives over.
    fn target_algebra(self, alg: &Algebra) -> Algebra {
        match self {
            MapKind::D | MapKind::Phi => alg.jet(),
            _ => alg.clone(),
        }
    }

    /// `(source degree, flavor, coefficients)` for the map that lands in degree `q`.
    fn source_shape(self, q: usize) -> Option<(usize, Flavor, Coefficients)> {
        use Coefficients::*;
        use Flavor::*;
        Some(match self {
            MapKind::Var | MapKind::D | MapKind::Inclusion => (q, Alternating, Trivial),
            MapKind::I | MapKind::Phi => (q.checked_sub(1)?, Alternating, Coadjoint),
        })
    }

    /// `(target degree, flavor, coefficients)` for the map out of the
    /// trivial or coadjoint source indexed by `q` (see [`map_matrix`]).
    fn target_shape(self, q: usize) -> Option<(usize, Flavor, Coefficients)> {
        use Coefficients::*;
        use Flavor::*;
        Some(match self {
            MapKind::Var => (q.checked_sub(1)?, Alternating, Coadjoint),
            MapKind::I => (q, Tensor, Trivial),
            MapKind::D | MapKind::Phi => (q, Alternating, Trivial),
            MapKind::Inclusion => (q, Tensor, Trivial),
        })
    }

    /// Terms of `α ↦ F(α)(target)`.
    fn terms(self, q: usize, target: &BasisIndex) -> Vec<Term> {
        let s = &target.slots;
        match self {
            MapKind::Var => {
                let mut slots = vec![target.dual.expect("coadjoint target")];
                slots.extend(s);
                vec![Term {
                    slots,
                    dual: None,
                    coeff: sign(q - 1),
                }]
            }
            MapKind::I => vec![Term {
                slots: s[1..].to_vec(),
                dual: Some(s[0]),
                coeff: sign(q - 1),
            }],
            MapKind::Inclusion => vec![Term {
                slots: s.clone(),
                dual: None,
                coeff: Q::one(),
            }],
            MapKind::D | MapKind::Phi => {
                let velocities: Vec<usize> = (0..s.len()).filter(|&p| s[p] % 2 == 1).collect();
                let [p] = velocities[..] else {
                    return Vec::new();
                };
                if self == MapKind::D {
                    vec![Term {
                        slots: s.iter().map(|&a| a / 2).collect(),
                        dual: None,
                        coeff: Q::one(),
                    }]
                } else {
                    let others = s.iter().enumerate().filter(|&(i, _)| i != p).map(|(_, &a)| a / 2);
                    vec![Term {
                        slots: others.collect(),
                        dual: Some(s[p] / 2),
                        coeff: sign(q - (p + 1)),
                    }]
                }
            }
        }
    }
}

/// The matrix of `kind` indexed by the degree `q` appearing in its defining formula:
/// `Var_q: Ω^q → Ω^{q-1}(g')`, `i_q: Ω^{q-1}(g') → C^q`, `D_q: Ω^q → Ω^q(J)`,
/// `Φ_q: Ω^{q-1}(g') → Ω^q(J)`, inclusion `Ω^q → C^q`.
pub fn map_matrix(kind: MapKind, alg: &Algebra, q: usize, weight: Option<i64>) -> Result<ChainMapMatrix> {
    let degree_err = Error::Degree { min: 1, got: q };
    let (sd, sf, sc) = match kind {
        MapKind::Var => (q, Flavor::Alternating, Coefficients::Trivial),
        _ => kind.source_shape(q).ok_or(degree_err)?,
    };
    let (td, tf, tc) = kind.target_shape(q).ok_or(Error::Degree { min: 1, got: q })?;
    let talg = kind.target_algebra(alg);
    let source = CochainSpace::new(alg, sd, sf, sc, weight)?;
    let target = CochainSpace::new(&talg, td, tf, tc, weight)?;
    Ok(ChainMapMatrix {
        kind,
        source: describe(alg, &source),
        target: describe(&talg, &target),
        matrix: matrix_from_terms(&source, &target, |idx| kind.terms(q, idx)),
    })
}

fn describe(alg: &Algebra, s: &CochainSpace) -> SliceDescriptor {
    SliceDescriptor {
        algebra: alg.name(),
        degree: s.degree,
        flavor: s.flavor,
        coefficients: s.coefficients,
        weight: s.weight,
    }
}

fn apply_map(kind: MapKind, alg: &Algebra, alpha: &Cochain, q: usize) -> Result<Cochain> {
    let weights: Vec<Option<i64>> = if alg.is_finite() && alpha.weight.is_none() {
        vec![None]
    } else {
        alpha.support_weights(alg).into_iter().map(Some).collect()
    };
    let (td, tf, tc) = kind.target_shape(q).ok_or(Error::Degree { min: 1, got: q })?;
    let mut out = Cochain::zero(td, tf, tc);
    let talg = kind.target_algebra(alg);
    for w in &weights {
        let m = map_matrix(kind, alg, q, *w)?;
        let source = CochainSpace::new(alg, alpha.degree, alpha.flavor, alpha.coefficients, *w)?;
        let target = CochainSpace::new(&talg, td, tf, tc, *w)?;
        let mut part = alpha.clone();
        part.weight = *w;
        let image = target.cochain_of(&m.matrix.apply(&source.vector_of(&restrict(alg, &part, *w))?));
        out = out.add(&image)?;
    }
    out.weight = match weights.as_slice() {
        [w] => *w,
        _ => None,
    };
    Ok(out)
}

fn restrict(alg: &Algebra, alpha: &Cochain, w: Option<i64>) -> Cochain {
    let mut out = Cochain::zero(alpha.degree, alpha.flavor, alpha.coefficients).with_weight(w);
    for (k, v) in alpha.entries() {
        if w.is_none_or(|w| k.weight(alg) == w) {
            out.set(k.clone(), v.clone());
        }
    }
    out
}

fn expect(alpha: &Cochain, flavor: Flavor, coeffs: Coefficients) -> Result<()> {
    if alpha.flavor != flavor || alpha.coefficients != coeffs {
        return Err(Error::FlavorMismatch {
            expected: format!("{flavor} {coeffs}"),
            got: format!("{} {}", alpha.flavor, alpha.coefficients),
        });
    }
    Ok(())
}

/// `Var` on an alternating trivial cochain of degree `q >= 1`.
pub fn var_map(alg: &Algebra, alpha: &Cochain) -> Result<Cochain> {
    expect(alpha, Flavor::Alternating, Coefficients::Trivial)?;
    if alpha.degree == 0 {
        return Err(Error::Degree { min: 1, got: 0 });
    }
    apply_map(MapKind::Var, alg, alpha, alpha.degree)
}

/// `i` on a coadjoint cochain of degree `q - 1`, landing in tensor degree `q`.
pub fn i_map(alg: &Algebra, beta: &Cochain) -> Result<Cochain> {
    expect(beta, Flavor::Alternating, Coefficients::Coadjoint)?;
    apply_map(MapKind::I, alg, beta, beta.degree + 1)
}

/// The time-derivative map into cochains on the jet algebra.
pub fn d_time_map(alg: &Algebra, alpha: &Cochain) -> Result<Cochain> {
    expect(alpha, Flavor::Alternating, Coefficients::Trivial)?;
    apply_map(MapKind::D, alg, alpha, alpha.degree)
}

/// `Φ` on a coadjoint cochain of degree `q - 1`, landing in `Ω^q` of the jet algebra.
pub fn phi_map(alg: &Algebra, gamma: &Cochain) -> Result<Cochain> {
    expect(gamma, Flavor::Alternating, Coefficients::Coadjoint)?;
    apply_map(MapKind::Phi, alg, gamma, gamma.degree + 1)
}

/// Result of checking `d ∘ F = F ∘ d` for one degree.
#[derive(Clone, Debug, Serialize)]
pub struct CommutationCheck {
    pub map: MapKind,
    pub q: usize,
    pub weight: Option<i64>,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub injective: bool,
    pub commutes: bool,
}

fn source_space(kind: MapKind, alg: &Algebra, q: usize, w: Option<i64>) -> Result<CochainSpace> {
    let (d, f, c) = match kind {
        MapKind::Var => (q, Flavor::Alternating, Coefficients::Trivial),
        _ => kind.source_shape(q).ok_or(Error::Degree { min: 1, got: q })?,
    };
    CochainSpace::new(alg, d, f, c, w)
}

fn target_space(kind: MapKind, alg: &Algebra, q: usize, w: Option<i64>) -> Result<CochainSpace> {
    let (d, f, c) = kind.target_shape(q).ok_or(Error::Degree { min: 1, got: q })?;
    CochainSpace::new(&kind.target_algebra(alg), d, f, c, w)
}

/// Verifies `d_target ∘ F_q = F_{q+1} ∘ d_source` as an exact matrix identity.
pub fn check_commutes(kind: MapKind, alg: &Algebra, q: usize, w: Option<i64>) -> Result<CommutationCheck> {
    let talg = kind.target_algebra(alg);
    let f_q = map_matrix(kind, alg, q, w)?.matrix;
    let f_next = map_matrix(kind, alg, q + 1, w)?.matrix;
    let d_src = coboundary_between(alg, &source_space(kind, alg, q, w)?, &source_space(kind, alg, q + 1, w)?);
    let d_tgt = coboundary_between(&talg, &target_space(kind, alg, q, w)?, &target_space(kind, alg, q + 1, w)?);
    let lhs = d_tgt.mul(&f_q);
    let rhs = f_next.mul(&d_src);
    let rank = f_q.rank();
    Ok(CommutationCheck {
        map: kind,
        q,
        weight: w,
        source_dim: f_q.cols(),
        target_dim: f_q.rows(),
        rank,
        injective: rank == f_q.cols(),
        commutes: lhs.same_entries(&rhs),
    })
}

/// The smallest `q` for which the map's formula makes sense.
pub fn min_degree(kind: MapKind) -> usize {
    match kind {
        MapKind::Var | MapKind::I | MapKind::Phi => 1,
        MapKind::D | MapKind::Inclusion => 0,
    }
}

/// `Φ_q ∘ Var_q == D_q` as matrices.
pub fn phi_var_equals_d(alg: &Algebra, q: usize, w: Option<i64>) -> Result<bool> {
    let var = map_matrix(MapKind::Var, alg, q, w)?.matrix;
    let phi = map_matrix(MapKind::Phi, alg, q, w)?.matrix;
    let d = map_matrix(MapKind::D, alg, q, w)?.matrix;
    Ok(phi.mul(&var).same_entries(&d))
}

/// The map induced on cohomology by a chain map `F: X → Y` in one degree.
pub fn induced_map(f: &SparseMatrix, source: &CohomologyBasis, target: &CohomologyBasis) -> Option<DenseMatrix> {
    let mut cols = Vec::with_capacity(source.betti());
    for r in &source.representatives {
        cols.push(target.class_of(&f.apply(r))?);
    }
    Some(DenseMatrix::from_columns(target.betti(), &cols))
}

fn cohomology_of(alg: &Algebra, space: impl Fn(usize) -> Result<CochainSpace>, q: usize) -> Result<CohomologyBasis> {
    let here = space(q)?;
    let next = space(q + 1)?;
    let d_out = coboundary_between(alg, &here, &next);
    let d_in = if q > 0 {
        Some(coboundary_between(alg, &space(q - 1)?, &here))
    } else {
        None
    };
    CohomologyBasis::compute(here.dim(), d_in.as_ref(), &d_out, q)
}

/// The square `D* = Φ* ∘ V*` on cohomology in degree `q`.
#[derive(Clone, Debug, Serialize)]
pub struct DiagramCheck {
    pub q: usize,
    pub weight: Option<i64>,
    pub dim_lie: usize,
    pub dim_coadjoint: usize,
    pub dim_jet: usize,
    pub rank_d_star: usize,
    pub chain_level: bool,
    pub commutes: bool,
}

pub fn diagram_check(alg: &Algebra, q: usize, w: Option<i64>) -> Result<DiagramCheck> {
    let jet = alg.jet();
    let lie = |d| CochainSpace::new(alg, d, Flavor::Alternating, Coefficients::Trivial, w);
    let coad = |d: usize| CochainSpace::new(alg, d, Flavor::Alternating, Coefficients::Coadjoint, w);
    let jets = |d| CochainSpace::new(&jet, d, Flavor::Alternating, Coefficients::Trivial, w);
    let h_lie = cohomology_of(alg, lie, q)?;
    let h_coad = cohomology_of(alg, coad, q - 1)?;
    let h_jet = cohomology_of(&jet, jets, q)?;
    let var = map_matrix(MapKind::Var, alg, q, w)?.matrix;
    let phi = map_matrix(MapKind::Phi, alg, q, w)?.matrix;
    let d = map_matrix(MapKind::D, alg, q, w)?.matrix;
    let v_star = induced_map(&var, &h_lie, &h_coad);
    let p_star = induced_map(&phi, &h_coad, &h_jet);
    let d_star = induced_map(&d, &h_lie, &h_jet);
    let (commutes, rank_d_star) = match (v_star, p_star, d_star) {
        (Some(v), Some(p), Some(ds)) => (p.mul(&v) == ds, ds.rank()),
        _ => (false, 0),
    };
    Ok(DiagramCheck {
        q,
        weight: w,
        dim_lie: h_lie.betti(),
        dim_coadjoint: h_coad.betti(),
        dim_jet: h_jet.betti(),
        rank_d_star,
        chain_level: phi.mul(&var).same_entries(&d),
        commutes,
    })
}

/// The full chain-map suite for one algebra and slice.
#[derive(Clone, Debug, Serialize)]
pub struct MapsReport {
    pub algebra: String,
    pub weight: Option<i64>,
    pub max_degree: usize,
    pub commutation: Vec<CommutationCheck>,
    pub phi_var_equals_d: Vec<(usize, bool)>,
    pub diagram: Vec<DiagramCheck>,
    pub pass: bool,
}

pub fn maps_report(alg: &Algebra, max_degree: usize, w: Option<i64>) -> Result<MapsReport> {
    let mut commutation = Vec::new();
    for kind in [MapKind::Var, MapKind::I, MapKind::D, MapKind::Phi, MapKind::Inclusion] {
        for q in min_degree(kind)..=max_degree {
            commutation.push(check_commutes(kind, alg, q, w)?);
        }
    }
    let mut pv = Vec::new();
    let mut diagram = Vec::new();
    for q in 1..=max_degree {
        pv.push((q, phi_var_equals_d(alg, q, w)?));
        diagram.push(diagram_check(alg, q, w)?);
    }
    let pass = commutation
        .iter()
        .all(|c| c.commutes && (c.injective || !matches!(c.map, MapKind::Var | MapKind::I)))
        && pv.iter().all(|&(_, ok)| ok)
        && diagram.iter().all(|d| d.commutes && d.chain_level);
    Ok(MapsReport {
        algebra: alg.name(),
        weight: w,
        max_degree,
        commutation,
        phi_var_equals_d: pv,
        diagram,
        pass,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Rigid,
    /// The vanishing hypothesis fails; this is not evidence of variability.
    NotCertified,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeVerdict {
    pub n: usize,
    pub verdict: Verdict,
    /// `HL^m = 0` for all `1 <= m <= n`.
    pub leibniz_route: bool,
    /// `H^{n-1}_Lie(g; g') = 0`, so the variation map lands in zero.
    pub coadjoint_route: bool,
    pub provenance: String,
}

/// Rigidity of `H^n_Lie(g)` classes for `1 <= n <= p`, with the vanishing evidence.
#[derive(Clone, Debug, Serialize)]
pub struct RigidityCertificate {
    pub algebra: String,
    pub p: usize,
    /// `null` when the whole finite-dimensional cochain space was used.
    pub weight_window: Option<u32>,
    /// `hl_betti[n]` for `0 <= n <= p`, summed over the window.
    pub hl_betti: Vec<usize>,
    /// `coadjoint_betti[n - 1] = dim H^{n-1}_Lie(g; g')` for `1 <= n <= p`.
    pub coadjoint_betti: Vec<usize>,
    pub verdicts: Vec<DegreeVerdict>,
    /// Every degree certified by the Leibniz route is also certified directly.
    pub routes_agree: bool,
}

const LEIBNIZ_PROVENANCE: &str = "HL^m(g) = 0 for 1 <= m <= n; the spectral sequence of the RG filtration then \
     forces H^{m-1}_Lie(g; g') = 0, so Var* vanishes and every class in H^n_Lie(g) has zero first variation";
const FAILED_PROVENANCE: &str = "HL^m(g) != 0 for some 1 <= m <= n; the vanishing hypothesis fails and no \
     conclusion about variability is drawn";

/// Certifies rigidity through the vanishing of Leibniz cohomology and cross-checks
/// each degree against the vanishing of `H^{n-1}_Lie(g; g')`.
pub fn rigidity_certify(alg: &Algebra, p: usize, window: u32) -> Result<RigidityCertificate> {
    use crate::homology::{cohomology, weight_sweep, Theory};
    let weights = weight_sweep(alg, window);
    let total = |theory: Theory, q: usize| -> Result<usize> {
        let mut sum = 0;
        for &w in &weights {
            sum += cohomology(alg, q, theory, w)?.betti;
        }
        Ok(sum)
    };
    let hl_betti = (0..=p).map(|n| total(Theory::Leibniz, n)).collect::<Result<Vec<_>>>()?;
    let coadjoint_betti = (0..p).map(|n| total(Theory::Coadjoint, n)).collect::<Result<Vec<_>>>()?;
    let mut verdicts = Vec::new();
    for n in 1..=p {
        let leibniz_route = hl_betti[1..=n].iter().all(|&b| b == 0);
        let coadjoint_route = coadjoint_betti[n - 1] == 0;
        verdicts.push(DegreeVerdict {
            n,
            verdict: if leibniz_route { Verdict::Rigid } else { Verdict::NotCertified },
            leibniz_route,
            coadjoint_route,
            provenance: if leibniz_route { LEIBNIZ_PROVENANCE } else { FAILED_PROVENANCE }.to_string(),
        });
    }
    let routes_agree = verdicts.iter().all(|v| !v.leibniz_route || v.coadjoint_route);
    Ok(RigidityCertificate {
        algebra: alg.name(),
        p,
        weight_window: (!alg.is_finite()).then_some(window),
        hl_betti,
        coadjoint_betti,
        verdicts,
        routes_agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::StructureConstants;
    use crate::rational::q;

    fn sl2() -> Algebra {
        StructureConstants::sl2().into()
    }

    #[test]
    fn var_low_degrees() {
        let g = sl2();
        // q = 1: (Var α)()(g0) = α(g0)
        let v = var_map(&g, &Cochain::wedge(&[2])).unwrap();
        assert_eq!(v, Cochain::coadjoint_wedge(&[], 2));
        // q = 2: (Var α)(g1)(g0) = -α(g0, g1)
        let v = var_map(&g, &Cochain::wedge(&[0, 1])).unwrap();
        assert_eq!(v.value(&[1], Some(0)), q(-1));
        assert_eq!(v.value(&[0], Some(1)), q(1));
        assert!(var_map(&g, &Cochain::wedge(&[])).is_err());
    }

    #[test]
    fn var_of_godbillon_vey() {
        let v = var_map(&Algebra::W1, &Cochain::wedge(&[0, 1, 2])).unwrap();
        assert_eq!(v.value(&[1, 2], Some(0)), q(1));
        assert_eq!(v.value(&[2, 1], Some(0)), q(-1));
        assert_eq!(v.value(&[0, 2], Some(1)), q(-1));
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn i_degree_one() {
        let g = sl2();
        let t = i_map(&g, &Cochain::coadjoint_wedge(&[], 1)).unwrap();
        assert_eq!(t, Cochain::tensor_basis(&[1]));
    }

    #[test]
    fn d_time_degree_one() {
        // D(α)(x, y) = α(y): β_e ↦ β_{e'}
        let g = sl2();
        let d = d_time_map(&g, &Cochain::wedge(&[1])).unwrap();
        assert_eq!(d, Cochain::wedge(&[3]));
        assert!(d_time_map(&g, &Cochain::zero(2, Flavor::Alternating, Coefficients::Trivial))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn phi_degree_one() {
        let g = sl2();
        let p = phi_map(&g, &Cochain::coadjoint_wedge(&[], 0)).unwrap();
        assert_eq!(p, Cochain::wedge(&[1]));
    }

    #[test]
    fn sl2_commutation_and_factorization() {
        let g = sl2();
        for kind in [MapKind::Var, MapKind::I, MapKind::D, MapKind::Phi, MapKind::Inclusion] {
            for q in min_degree(kind)..=4 {
                let c = check_commutes(kind, &g, q, None).unwrap();
                assert!(c.commutes, "{kind} fails to commute at q = {q}");
            }
        }
        for q in 1..=4 {
            assert!(phi_var_equals_d(&g, q, None).unwrap());
        }
    }

    #[test]
    fn certificate_sl2() {
        let c = rigidity_certify(&sl2(), 4, 0).unwrap();
        assert_eq!(c.hl_betti, vec![1, 0, 0, 0, 0]);
        assert!(c.verdicts.iter().all(|v| v.verdict == Verdict::Rigid && v.coadjoint_route));
        assert!(c.routes_agree);
        assert_eq!(c.weight_window, None);
    }

    #[test]
    fn certificate_abelian_line() {
        let c = rigidity_certify(&StructureConstants::abelian(1).into(), 2, 0).unwrap();
        assert_eq!(c.hl_betti, vec![1, 1, 1]);
        assert_eq!(c.verdicts[0].verdict, Verdict::NotCertified);
        assert_eq!(c.verdicts[1].verdict, Verdict::NotCertified);
        assert!(c.routes_agree);
    }
}
