//! Quotient complexes, short exact sequences of cochain complexes and the
//! verification of their long exact cohomology sequences.
//!
//! Three sequences are supported, each `0 → A → B → C → 0` in every degree `q`:
//!
//! * [`SequenceKind::RelativeGeneral`]: `A^q = Ω^{q-1}(g; g')`, `B^q = C^q(g)`,
//!   map `i`, `C = C_RG` (degree `q` of `C` is `H^{q-2}_RG`).
//! * [`SequenceKind::Variation`]: `A^q = Ω^q(g)` truncated by `A^0 = 0`,
//!   `B^q = Ω^{q-1}(g; g')`, map `Var`, `C = CR` (degree `q` of `C` is `HR^{q-1}`).
//! * [`SequenceKind::Relative`]: `A = Ω(g)`, `B = C(g)`, the inclusion, `C = C_rel`.

use std::fmt;

use serde::Serialize;

use crate::cochain::{permutations, BasisIndex, CochainSpace, Coefficients, Flavor};
use crate::error::{Error, Result};
use crate::homology::{coboundary_between, CohomologyBasis};
use crate::liealg::Algebra;
use crate::linalg::{unit, DenseMatrix, Echelon, SparseMatrix, SparseVec};
use crate::maps::{map_matrix, MapKind};
use crate::rational::Q;
use num_traits::One;

/// Degrees `0..=top` of a cochain complex; `d[q]: X^q → X^{q+1}` for `q < top`.
#[derive(Clone, Debug)]
pub struct Complex {
    pub dims: Vec<usize>,
    pub d: Vec<SparseMatrix>,
}

impl Complex {
    pub fn new(dims: Vec<usize>, d: Vec<SparseMatrix>) -> Self {
        assert_eq!(d.len() + 1, dims.len());
        for (q, m) in d.iter().enumerate() {
            assert_eq!((m.rows(), m.cols()), (dims[q + 1], dims[q]));
        }
        Self { dims, d }
    }

    /// The complex spanned by the given cochain spaces of degrees `0..=top`.
    pub fn of_spaces(alg: &Algebra, spaces: &[CochainSpace]) -> Self {
        let dims = spaces.iter().map(CochainSpace::dim).collect();
        let d = spaces
            .windows(2)
            .map(|w| {
                if w[0].dim() == 0 || w[1].dim() == 0 {
                    SparseMatrix::zeros(w[1].dim(), w[0].dim())
                } else {
                    coboundary_between(alg, &w[0], &w[1])
                }
            })
            .collect();
        Self::new(dims, d)
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    /// Degrees `q` with `d[q+1] ∘ d[q] ≠ 0`.
    pub fn square_zero_violations(&self) -> Vec<usize> {
        (0..self.d.len().saturating_sub(1))
            .filter(|&q| !self.d[q + 1].mul(&self.d[q]).is_zero())
            .collect()
    }

    /// Cohomology in degree `q < top`.
    pub fn cohomology(&self, q: usize) -> Result<CohomologyBasis> {
        let d_in = q.checked_sub(1).map(|p| &self.d[p]);
        CohomologyBasis::compute(self.dims[q], d_in, &self.d[q], q)
    }
}

/// `B / f(A)` with its projection and a section by standard basis vectors.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub complex: Complex,
    /// `π_q: B^q → C^q`.
    pub projections: Vec<SparseMatrix>,
    /// `s_q: C^q → B^q`, sending the `k`-th quotient basis vector to `e_{complement[q][k]}`.
    pub sections: Vec<SparseMatrix>,
    /// Indices of the `B` basis vectors chosen as the quotient basis.
    pub complement: Vec<Vec<usize>>,
}

/// The quotient of `b` by the image of the injective chain map with matrices `f`.
/// The complement is chosen greedily in enumeration order.
pub fn quotient(b: &Complex, f: &[SparseMatrix]) -> Result<Quotient> {
    let mut projections = Vec::new();
    let mut sections = Vec::new();
    let mut complement = Vec::new();
    for (q, fq) in f.iter().enumerate() {
        let mut e = Echelon::new();
        for col in fq.columns() {
            e.insert(&col, None);
        }
        let rank = e.rank();
        if rank != fq.cols() {
            return Err(Error::NotInjective {
                degree: q,
                rank,
                cols: fq.cols(),
            });
        }
        let mut comp = Vec::new();
        for j in 0..b.dims[q] {
            if e.insert(&unit(j), Some(comp.len())) {
                comp.push(j);
            }
        }
        let pi_cols: Vec<SparseVec> = (0..b.dims[q])
            .map(|j| e.coordinates(&unit(j)).expect("standard vectors span B"))
            .collect();
        projections.push(SparseMatrix::from_columns(comp.len(), &pi_cols));
        let s_cols: Vec<SparseVec> = comp.iter().map(|&j| unit(j)).collect();
        sections.push(SparseMatrix::from_columns(b.dims[q], &s_cols));
        complement.push(comp);
    }
    let dims = complement.iter().map(Vec::len).collect();
    let d = (0..b.d.len())
        .map(|q| projections[q + 1].mul(&b.d[q]).mul(&sections[q]))
        .collect();
    Ok(Quotient {
        complex: Complex::new(dims, d),
        projections,
        sections,
        complement,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceKind {
    /// `0 → Ω^{*-1}(g; g') → C^*(g) → C_RG → 0`
    RelativeGeneral,
    /// `0 → Ω^*(g) → Ω^{*-1}(g; g') → CR → 0`
    Variation,
    /// `0 → Ω^*(g) → C^*(g) → C_rel → 0`
    Relative,
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SequenceKind::RelativeGeneral => "rg",
            SequenceKind::Variation => "cr",
            SequenceKind::Relative => "rel",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Position {
    A,
    B,
    C,
}

impl SequenceKind {
    /// Human-readable name of the cohomology group at `(position, q)`.
    pub fn node_label(self, pos: Position, q: usize) -> String {
        let shifted = |k: usize, f: &dyn Fn(usize) -> String| q.checked_sub(k).map_or("0".to_string(), f);
        match (self, pos) {
            (SequenceKind::RelativeGeneral, Position::A) => shifted(1, &|n| format!("H^{n}_Lie(g;g')")),
            (SequenceKind::RelativeGeneral, Position::B) => format!("HL^{q}"),
            (SequenceKind::RelativeGeneral, Position::C) => shifted(2, &|n| format!("H^{n}_RG")),
            (SequenceKind::Variation, Position::A) => shifted(1, &|_| format!("H^{q}_Lie(g)")),
            (SequenceKind::Variation, Position::B) => shifted(1, &|n| format!("H^{n}_Lie(g;g')")),
            (SequenceKind::Variation, Position::C) => shifted(1, &|n| format!("HR^{n}")),
            (SequenceKind::Relative, Position::A) => format!("H^{q}_Lie(g)"),
            (SequenceKind::Relative, Position::B) => format!("HL^{q}"),
            (SequenceKind::Relative, Position::C) => shifted(2, &|n| format!("H^{n}_rel")),
        }
    }
}

/// A short exact sequence of complexes `0 → A →f B →g C → 0` in degrees `0..=top`.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub kind: SequenceKind,
    pub a: Complex,
    pub b: Complex,
    pub c: Complex,
    pub f: Vec<SparseMatrix>,
    pub g: Vec<SparseMatrix>,
    sections: Vec<SparseMatrix>,
    /// Per degree: the columns of `f`, tagged by column, for solving `f(a) = b`.
    f_solvers: Vec<Echelon>,
}

fn spaces(
    alg: &Algebra,
    top: usize,
    shape: impl Fn(usize) -> Option<(usize, Flavor, Coefficients)>,
    weight: Option<i64>,
) -> Result<Vec<CochainSpace>> {
    (0..=top)
        .map(|q| match shape(q) {
            Some((d, f, c)) => CochainSpace::new(alg, d, f, c, weight),
            None => Ok(CochainSpace::empty(q, Flavor::Alternating, Coefficients::Trivial, weight)),
        })
        .collect()
}

impl ShortExactSequence {
    /// Builds the sequence in degrees `0..=top` of the given weight slice.
    pub fn build(kind: SequenceKind, alg: &Algebra, top: usize, weight: Option<i64>) -> Result<Self> {
        use Coefficients::*;
        use Flavor::*;
        let omega = |q: usize| Some((q, Alternating, Trivial));
        let coad = |q: usize| q.checked_sub(1).map(|p| (p, Alternating, Coadjoint));
        let tensor = |q: usize| Some((q, Tensor, Trivial));
        let (a_sp, b_sp, map) = match kind {
            SequenceKind::RelativeGeneral => (spaces(alg, top, coad, weight)?, spaces(alg, top, tensor, weight)?, MapKind::I),
            SequenceKind::Variation => (
                spaces(alg, top, |q| if q == 0 { None } else { omega(q) }, weight)?,
                spaces(alg, top, coad, weight)?,
                MapKind::Var,
            ),
            SequenceKind::Relative => (spaces(alg, top, omega, weight)?, spaces(alg, top, tensor, weight)?, MapKind::Inclusion),
        };
        let f = (0..=top)
            .map(|q| {
                if a_sp[q].dim() == 0 {
                    Ok(SparseMatrix::zeros(b_sp[q].dim(), 0))
                } else {
                    map_matrix(map, alg, q, weight).map(|m| m.matrix)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let a = Complex::of_spaces(alg, &a_sp);
        let b = Complex::of_spaces(alg, &b_sp);
        let quot = quotient(&b, &f)?;
        let f_solvers = f
            .iter()
            .map(|m| {
                let mut e = Echelon::new();
                for (j, col) in m.columns().iter().enumerate() {
                    e.insert(col, Some(j));
                }
                e
            })
            .collect();
        Ok(Self {
            kind,
            a,
            b,
            c: quot.complex,
            f,
            g: quot.projections,
            sections: quot.sections,
            f_solvers,
        })
    }

    pub fn top(&self) -> usize {
        self.a.top()
    }

    /// Degreewise checks of short exactness and of the chain-map property.
    pub fn degree_checks(&self) -> Vec<DegreeCheck> {
        (0..=self.top())
            .map(|q| {
                let (f, g) = (&self.f[q], &self.g[q]);
                let rank_f = f.rank();
                let rank_g = g.rank();
                let f_chain = q == self.top() || self.b.d[q].mul(f).same_entries(&self.f[q + 1].mul(&self.a.d[q]));
                let g_chain = q == self.top() || self.c.d[q].mul(g).same_entries(&self.g[q + 1].mul(&self.b.d[q]));
                DegreeCheck {
                    q,
                    dim_a: self.a.dims[q],
                    dim_b: self.b.dims[q],
                    dim_c: self.c.dims[q],
                    rank_f,
                    rank_g,
                    short_exact: rank_f == self.a.dims[q]
                        && rank_g == self.c.dims[q]
                        && rank_f + rank_g == self.b.dims[q]
                        && g.mul(f).is_zero(),
                    chain_maps: f_chain && g_chain,
                }
            })
            .collect()
    }

    /// The connecting map `δ: H^q(C) → H^{q+1}(A)` by lift, `d`, pull back.
    pub fn connecting(&self, q: usize, hc: &CohomologyBasis, ha_next: &CohomologyBasis) -> Result<DenseMatrix> {
        let mut cols = Vec::new();
        for z in &hc.representatives {
            let lift = self.sections[q].apply(z);
            let db = self.b.d[q].apply(&lift);
            let a = self.f_solvers[q + 1].coordinates(&db).ok_or(Error::Definition(format!(
                "connecting map in degree {q}: d(lift) is not in the image of A"
            )))?;
            if !self.a.d.get(q + 1).is_none_or(|d| d.apply(&a).is_empty()) {
                return Err(Error::NotAComplex { degree: q + 1 });
            }
            cols.push(
                ha_next
                    .class_of(&a)
                    .ok_or_else(|| Error::Definition(format!("connecting map in degree {q}: no class")))?,
            );
        }
        Ok(DenseMatrix::from_columns(ha_next.betti(), &cols))
    }
}

fn induced(m: &SparseMatrix, src: &CohomologyBasis, tgt: &CohomologyBasis, what: &str) -> Result<DenseMatrix> {
    crate::maps::induced_map(m, src, tgt).ok_or_else(|| Error::Definition(format!("{what}: image of a cocycle is not a cocycle")))
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeCheck {
    pub q: usize,
    pub dim_a: usize,
    pub dim_b: usize,
    pub dim_c: usize,
    pub rank_f: usize,
    pub rank_g: usize,
    pub short_exact: bool,
    pub chain_maps: bool,
}

/// One node of the long exact sequence with the ranks of the maps in and out.
#[derive(Clone, Debug, Serialize)]
pub struct LesNode {
    pub label: String,
    pub position: Position,
    pub q: usize,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub composite_zero: bool,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LesReport {
    pub sequence: SequenceKind,
    pub algebra: String,
    pub weight: Option<i64>,
    pub max_degree: usize,
    pub degreewise: Vec<DegreeCheck>,
    pub nodes: Vec<LesNode>,
    /// For the `RelativeGeneral` sequence: `H^0_Lie(g;g') → HL^1` is an isomorphism.
    pub head_isomorphism: Option<bool>,
    pub complexes_square_zero: bool,
    pub pass: bool,
}

impl LesReport {
    /// The first node that fails, if any.
    pub fn first_failure(&self) -> Option<&LesNode> {
        self.nodes.iter().find(|n| !n.exact)
    }
}

/// Verifies the long exact sequence node by node through `H^{max_degree}` of `C`
/// and `H^{max_degree + 1}` of `A`.
pub fn les_check(kind: SequenceKind, alg: &Algebra, max_degree: usize, weight: Option<i64>) -> Result<LesReport> {
    let top = max_degree + 2;
    let ses = ShortExactSequence::build(kind, alg, top, weight)?;
    let degreewise = ses.degree_checks();
    let square_zero = [&ses.a, &ses.b, &ses.c].iter().all(|c| c.square_zero_violations().is_empty());
    let n = max_degree + 1;
    let mut ha = Vec::new();
    let mut hb = Vec::new();
    let mut hc = Vec::new();
    for q in 0..=n {
        ha.push(ses.a.cohomology(q)?);
        hb.push(ses.b.cohomology(q)?);
        hc.push(ses.c.cohomology(q)?);
    }
    // The maps in sequence order: f*_0, g*_0, δ_0, f*_1, ...
    let mut chain: Vec<(Position, usize, usize, DenseMatrix)> = Vec::new();
    for q in 0..=n {
        chain.push((Position::A, q, ha[q].betti(), induced(&ses.f[q], &ha[q], &hb[q], "f*")?));
        if q == n {
            break;
        }
        chain.push((Position::B, q, hb[q].betti(), induced(&ses.g[q], &hb[q], &hc[q], "g*")?));
        chain.push((Position::C, q, hc[q].betti(), ses.connecting(q, &hc[q], &ha[q + 1])?));
    }
    let mut nodes = Vec::new();
    for k in 0..chain.len() {
        let (position, q, dim, out) = &chain[k];
        let (rank_in, composite_zero) = match k.checked_sub(1) {
            None => (0, true),
            Some(p) => {
                let inm = &chain[p].3;
                (inm.rank(), out.mul(inm).is_zero())
            }
        };
        let rank_out = out.rank();
        nodes.push(LesNode {
            label: kind.node_label(*position, *q),
            position: *position,
            q: *q,
            dim: *dim,
            rank_in,
            rank_out,
            composite_zero,
            exact: composite_zero && rank_in + rank_out == *dim,
        });
    }
    let head_isomorphism = (kind == SequenceKind::RelativeGeneral).then(|| {
        let f1 = &chain[3].3;
        ha[1].betti() == hb[1].betti() && f1.rank() == ha[1].betti() && ses.c.dims[1] == 0
    });
    let pass = degreewise.iter().all(|d| d.short_exact && d.chain_maps)
        && square_zero
        && nodes.iter().all(|n| n.exact)
        && head_isomorphism.unwrap_or(true);
    Ok(LesReport {
        sequence: kind,
        algebra: alg.name(),
        weight,
        max_degree,
        degreewise,
        nodes,
        head_isomorphism,
        complexes_square_zero: square_zero,
        pass,
    })
}

/// The quotient complexes `C_rel`, `C_RG` and `CR`, by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuotientKind {
    Rel,
    Rg,
    Cr,
}

/// The quotient complex in the unshifted degrees `0..=top` of its ambient complex.
pub fn quotient_complex(kind: QuotientKind, alg: &Algebra, top: usize, weight: Option<i64>) -> Result<Complex> {
    let seq = match kind {
        QuotientKind::Rel => SequenceKind::Relative,
        QuotientKind::Rg => SequenceKind::RelativeGeneral,
        QuotientKind::Cr => SequenceKind::Variation,
    };
    Ok(ShortExactSequence::build(seq, alg, top, weight)?.c)
}

/// Vectors spanning the tensor `q`-cochains that are skew-symmetric in the last
/// `k` slots.
pub fn skew_tail_span(space: &CochainSpace, k: usize) -> Vec<SparseVec> {
    let q = space.degree;
    assert!(k <= q);
    let perms = permutations(k);
    let mut out = Vec::new();
    for idx in space.basis() {
        let tail = &idx.slots[q - k..];
        if tail.windows(2).any(|w| w[0] >= w[1]) {
            continue;
        }
        let mut v = SparseVec::new();
        for (p, odd) in &perms {
            let mut slots = idx.slots[..q - k].to_vec();
            slots.extend(p.iter().map(|&i| tail[i]));
            let j = space.index_of(&BasisIndex::new(slots)).expect("permuted tuple has the same weight");
            let c = if *odd { -Q::one() } else { Q::one() };
            crate::linalg::add_entry(&mut v, j, &c);
        }
        out.push(v);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationEntry {
    pub s: usize,
    /// Degree of the ambient tensor complex (`s + 2` is the bottom row).
    pub q: usize,
    pub dim_a: usize,
    pub dim_b: usize,
    pub dim_span: usize,
    pub d_preserves: bool,
    pub contains_next: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationReport {
    pub algebra: String,
    pub weight: Option<i64>,
    pub s_max: usize,
    pub max_degree: usize,
    pub entries: Vec<FiltrationEntry>,
    /// Per `s`: whether `A = B` in the bottom degree `s + 2`, so `F^s_0 = 0`.
    pub bottom_vanishes: Vec<(usize, bool)>,
    pub pass: bool,
}

/// Checks that `F^s = (A^s + B)/B` is a decreasing filtration by subcomplexes of
/// `C_RG`, in tensor degrees `s + 2 ..= max_degree`, and that its bottom row vanishes.
pub fn filtration_check(alg: &Algebra, s_max: usize, max_degree: usize, weight: Option<i64>) -> Result<FiltrationReport> {
    let top = max_degree + 1;
    let tensor: Vec<CochainSpace> = (0..=top)
        .map(|q| CochainSpace::new(alg, q, Flavor::Tensor, Coefficients::Trivial, weight))
        .collect::<Result<_>>()?;
    let image_i: Vec<Vec<SparseVec>> = (0..=top)
        .map(|q| {
            if q == 0 {
                Ok(Vec::new())
            } else {
                Ok(map_matrix(MapKind::I, alg, q, weight)?.matrix.columns())
            }
        })
        .collect::<Result<_>>()?;
    let span_of = |q: usize, s: usize| -> (Echelon, usize) {
        let mut e = Echelon::new();
        for v in &image_i[q] {
            e.insert(v, None);
        }
        let mut dim_a = 0;
        if s < q {
            for v in skew_tail_span(&tensor[q], s + 1) {
                e.insert(&v, None);
                dim_a += 1;
            }
        }
        (e, dim_a)
    };
    let mut entries = Vec::new();
    let mut bottom_vanishes = Vec::new();
    for s in 0..=s_max {
        if s + 2 > max_degree {
            break;
        }
        for q in s + 2..=max_degree {
            let (here, dim_a) = span_of(q, s);
            let (next, _) = span_of(q + 1, s);
            let d = coboundary_between(alg, &tensor[q], &tensor[q + 1]);
            let d_preserves = here.basis().iter().all(|v| next.contains(&d.apply(v)));
            let (deeper, _) = span_of(q, s + 1);
            let contains_next = deeper.basis().iter().all(|v| here.contains(v));
            entries.push(FiltrationEntry {
                s,
                q,
                dim_a,
                dim_b: image_i[q].len(),
                dim_span: here.rank(),
                d_preserves,
                contains_next,
            });
        }
        let q = s + 2;
        let mut b = Echelon::new();
        for v in &image_i[q] {
            b.insert(v, None);
        }
        let a_in_b = skew_tail_span(&tensor[q], s + 1).iter().all(|v| b.contains(v));
        let (full, _) = span_of(q, s);
        bottom_vanishes.push((s, a_in_b && full.rank() == b.rank()));
    }
    let pass = entries.iter().all(|e| e.d_preserves && e.contains_next) && bottom_vanishes.iter().all(|&(_, ok)| ok);
    Ok(FiltrationReport {
        algebra: alg.name(),
        weight,
        s_max,
        max_degree,
        entries,
        bottom_vanishes,
        pass,
    })
}
