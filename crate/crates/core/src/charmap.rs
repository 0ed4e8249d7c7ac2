//! The symbolic characteristic map of the connection `θ_F = Σ ω_k f_k` on `W_1`
//! and of its jet extension `Θ`, whose velocity components are `ω'_k`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cochain::{ce_d, Cochain, CochainSpace, Coefficients, Flavor};
use crate::error::{Error, Result};
use crate::forms::{FormExpr, Generator};
use crate::homology::{cohomology, same_class_up_to_scalar, Theory};
use crate::liealg::{w1_bracket, Algebra};
use crate::linalg::Echelon;
use crate::maps::{d_time_map, i_map, map_matrix, phi_map, var_map, MapKind};
use crate::rational::Q;

/// `θ(v) = Σ_{k <= truncation} ω_k(v) f_k`; with `jet`, component `k` also carries `ω'_k`.
#[derive(Clone, Debug, Serialize)]
pub struct SymbolicConnection {
    pub truncation: u32,
    pub jet: bool,
    pub components: BTreeMap<u32, (FormExpr, Option<FormExpr>)>,
}

impl SymbolicConnection {
    pub fn theta_f(truncation: u32) -> Self {
        Self::build(truncation, false)
    }

    pub fn theta_jet(truncation: u32) -> Self {
        Self::build(truncation, true)
    }

    fn build(truncation: u32, jet: bool) -> Self {
        let components = (0..=truncation)
            .map(|k| (k, (FormExpr::omega(k), jet.then(|| FormExpr::omega_dot(k)))))
            .collect();
        Self {
            truncation,
            jet,
            components,
        }
    }

    /// The `f_k` component of `½[θ, θ] = Σ_{i<j} ω_i ∧ ω_j [f_i, f_j]`.
    pub fn half_bracket_component(&self, k: u32) -> FormExpr {
        let mut out = FormExpr::zero();
        for j in 0..=k + 1 {
            let i = k + 1 - j;
            if i >= j {
                continue;
            }
            if let Some(c) = w1_bracket(i as usize, j as usize).get(&(k as usize)) {
                out = out.add(&self.components[&i].0.wedge(&self.components[&j].0).scale(c));
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct McComponent {
    pub k: u32,
    pub d_theta: FormExpr,
    pub half_bracket: FormExpr,
    /// `Some(ε)` if `dθ_k = ε ½[θ,θ]_k`.
    pub sign: Option<i8>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MaurerCartanReport {
    pub truncation: u32,
    pub components: Vec<McComponent>,
    /// The single sign with `dθ = ε ½[θ, θ]` in every component, if one exists.
    pub epsilon: Option<i8>,
    pub consistent: bool,
}

/// Compares `dω_k` with the `f_k` component of `½[θ, θ]` for `k <= truncation`.
pub fn maurer_cartan_check(truncation: u32) -> Result<MaurerCartanReport> {
    if truncation == 0 {
        return Err(Error::Degree { min: 1, got: 0 });
    }
    let theta = SymbolicConnection::theta_f(truncation + 1);
    let mut components = Vec::new();
    for k in 0..=truncation {
        let d_theta = theta.components[&k].0.differential().normal_form();
        let half_bracket = theta.half_bracket_component(k).normal_form();
        let sign = if d_theta.equivalent(&half_bracket) {
            Some(1)
        } else if d_theta.equivalent(&half_bracket.neg()) {
            Some(-1)
        } else {
            None
        };
        components.push(McComponent {
            k,
            d_theta,
            half_bracket,
            sign,
        });
    }
    let first = components[0].sign;
    let consistent = first.is_some() && components.iter().all(|c| c.sign == first);
    Ok(MaurerCartanReport {
        truncation,
        components,
        epsilon: if consistent { first } else { None },
        consistent,
    })
}

fn generator_for(alg: &Algebra, slot: usize) -> Result<Generator> {
    match alg {
        Algebra::W1 => Ok(Generator::Omega(slot as u32)),
        Algebra::Jet(inner) if **inner == Algebra::W1 => Ok(if slot.is_multiple_of(2) {
            Generator::Omega((slot / 2) as u32)
        } else {
            Generator::OmegaDot((slot / 2) as u32)
        }),
        other => Err(Error::Definition(format!(
            "the characteristic map is defined on w1 and its jet algebra, not {}",
            other.name()
        ))),
    }
}

/// `β_{i_1} ∧ .. ∧ β_{i_k} ↦ ω_{i_1} ∧ .. ∧ ω_{i_k}` on `W_1`; on the jet algebra
/// value indices go to `ω` and velocity indices to `ω'`.
pub fn phi_theta(alg: &Algebra, alpha: &Cochain) -> Result<FormExpr> {
    if alpha.flavor != Flavor::Alternating || alpha.coefficients != Coefficients::Trivial {
        return Err(Error::FlavorMismatch {
            expected: "alternating trivial".into(),
            got: format!("{} {}", alpha.flavor, alpha.coefficients),
        });
    }
    let mut out = FormExpr::zero();
    for (idx, c) in alpha.entries() {
        let gens = idx.slots.iter().map(|&s| generator_for(alg, s)).collect::<Result<Vec<_>>>()?;
        out = out.add(&FormExpr::wedge_of(&gens).scale(c));
    }
    Ok(out.normal_form())
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainMapCheck {
    pub cochain: String,
    pub d_phi: FormExpr,
    pub phi_d: FormExpr,
    /// `d ∘ φ = factor · φ ∘ d` is asserted with `factor = -ε`.
    pub factor: i8,
    pub holds: bool,
}

/// Checks `d(φ(α)) = -ε φ(dα)` in the algebra of forms.
pub fn phi_chain_check(alg: &Algebra, alpha: &Cochain, epsilon: i8) -> Result<ChainMapCheck> {
    let d_phi = phi_theta(alg, alpha)?.differential().normal_form();
    let phi_d = phi_theta(alg, &ce_d(alpha, alg)?)?;
    let factor = -epsilon;
    let holds = d_phi.equivalent(&phi_d.scale(&Q::from_integer(factor.into())));
    Ok(ChainMapCheck {
        cochain: alpha.describe(alg),
        d_phi,
        phi_d,
        factor,
        holds,
    })
}

/// `phi_chain_check` on low-degree wedges of `W_1`, including the Godbillon-Vey cochain.
pub fn phi_chain_suite(epsilon: i8) -> Result<Vec<ChainMapCheck>> {
    [&[0][..], &[0, 1], &[1, 2], &[0, 3], &[0, 1, 2], &[0, 1, 3], &[1, 2, 3, 4]]
        .into_iter()
        .map(|slots| phi_chain_check(&Algebra::W1, &Cochain::wedge(slots), epsilon))
        .collect()
}

/// The pipeline `ζ ↦ c(ζ)` through `H^3(W_1; W_1')`, `Φ` and `φ_Θ`.
#[derive(Clone, Debug, Serialize)]
pub struct ZetaImage {
    /// `β_1 ⊗ (β_0 ∧ β_1 ∧ β_2)`.
    pub zeta_representative: Cochain,
    /// `(β_0 ∧ β_1 ∧ β_2) ⊗ β_1`.
    pub generator: Cochain,
    /// `i(generator) = -zeta_representative`.
    pub sign_identity: bool,
    /// The unique `γ` with `i(γ) = zeta_representative`.
    pub preimage: Cochain,
    pub preimage_is_minus_generator: bool,
    /// The generator spans `H^3_Lie(W_1; W_1')` in weight 0.
    pub generator_spans_cohomology: bool,
    pub phi_of_preimage: Cochain,
    pub image: FormExpr,
    pub expected: FormExpr,
    pub matches: bool,
    /// The image with every `ω'_k = 0`.
    pub constant_family: FormExpr,
    /// `φ_Θ(D(β_0 ∧ β_1 ∧ β_2))`, which equals `φ_Θ(Φ(Var(β_0 ∧ β_1 ∧ β_2)))`.
    pub godbillon_vey_derivative: FormExpr,
    pub godbillon_vey_factorizes: bool,
    pub godbillon_vey_derivative_is_time_derivative: bool,
    pub pass: bool,
}

pub fn zeta_image() -> Result<ZetaImage> {
    let w1 = Algebra::W1;
    let jet = w1.jet();
    let gv = Cochain::wedge(&[0, 1, 2]).with_weight(Some(0));
    let zeta = gv.prepend(1).with_weight(Some(0));
    let generator = Cochain::coadjoint_wedge(&[0, 1, 2], 1).with_weight(Some(0));
    let i_gen = i_map(&w1, &generator)?;
    let sign_identity = i_gen.add(&zeta)?.is_zero();

    let source = CochainSpace::new(&w1, 3, Flavor::Alternating, Coefficients::Coadjoint, Some(0))?;
    let target = CochainSpace::new(&w1, 4, Flavor::Tensor, Coefficients::Trivial, Some(0))?;
    let i4 = map_matrix(MapKind::I, &w1, 4, Some(0))?.matrix;
    let mut solver = Echelon::new();
    for (j, col) in i4.columns().iter().enumerate() {
        solver.insert(col, Some(j));
    }
    let coords = solver
        .coordinates(&target.vector_of(&zeta)?)
        .ok_or_else(|| Error::Definition("zeta representative is not in the image of i".into()))?;
    let preimage = source.cochain_of(&coords).with_weight(Some(0));
    let preimage_is_minus_generator = preimage.add(&generator)?.is_zero();
    let h3 = cohomology(&w1, 3, Theory::Coadjoint, Some(0))?;
    let generator_spans_cohomology = h3.betti == 1
        && same_class_up_to_scalar(&w1, Theory::Coadjoint, Some(0), &generator, &h3.representatives[0])?;

    let phi_of_preimage = phi_map(&w1, &preimage)?;
    let image = phi_theta(&jet, &phi_of_preimage)?;
    let expected = crate::forms::c_zeta();
    let matches = image.equivalent(&expected);
    let constant_family = image.drop_velocities().normal_form();

    let d_gv = d_time_map(&w1, &gv)?;
    let godbillon_vey_derivative = phi_theta(&jet, &d_gv)?;
    let via_var = phi_theta(&jet, &phi_map(&w1, &var_map(&w1, &gv)?)?)?;
    let godbillon_vey_factorizes = via_var.equivalent(&godbillon_vey_derivative);
    let godbillon_vey_derivative_is_time_derivative =
        phi_theta(&w1, &gv)?.time_derivative()?.equivalent(&godbillon_vey_derivative);

    let pass = sign_identity
        && preimage_is_minus_generator
        && generator_spans_cohomology
        && matches
        && constant_family.is_zero()
        && godbillon_vey_factorizes
        && godbillon_vey_derivative_is_time_derivative;
    Ok(ZetaImage {
        zeta_representative: zeta,
        generator,
        sign_identity,
        preimage,
        preimage_is_minus_generator,
        generator_spans_cohomology,
        phi_of_preimage,
        image,
        expected,
        matches,
        constant_family,
        godbillon_vey_derivative,
        godbillon_vey_factorizes,
        godbillon_vey_derivative_is_time_derivative,
        pass,
    })
}

/// The Maurer-Cartan sign, the chain-map checks and the images of GV and ζ.
#[derive(Clone, Debug, Serialize)]
pub struct CharmapReport {
    pub maurer_cartan: MaurerCartanReport,
    pub godbillon_vey_image: FormExpr,
    pub chain_map: Vec<ChainMapCheck>,
    pub zeta: ZetaImage,
    pub pass: bool,
}

pub fn charmap_report(truncation: u32) -> Result<CharmapReport> {
    let mc = maurer_cartan_check(truncation)?;
    let epsilon = mc.epsilon.ok_or_else(|| Error::Definition("no consistent Maurer-Cartan sign".into()))?;
    let w1 = Algebra::W1;
    let chain_map = phi_chain_suite(epsilon)?;
    let zeta = zeta_image()?;
    let pass = mc.consistent && chain_map.iter().all(|c| c.holds) && zeta.pass;
    Ok(CharmapReport {
        godbillon_vey_image: phi_theta(&w1, &Cochain::wedge(&[0, 1, 2]))?,
        maurer_cartan: mc,
        chain_map,
        zeta,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_components() {
        let r = maurer_cartan_check(2).unwrap();
        assert!(r.components[0].d_theta.equivalent(&FormExpr::parse("w0^w1").unwrap()));
        assert!(r.components[0].half_bracket.equivalent(&FormExpr::parse("w0^w1").unwrap()));
        assert!(r.components[2].half_bracket.equivalent(&FormExpr::parse("w0^w3 + w1^w2").unwrap()));
        assert_eq!(r.epsilon, Some(1));
    }

    #[test]
    fn truncation_zero_rejected() {
        assert!(maurer_cartan_check(0).is_err());
    }

    #[test]
    fn phi_theta_examples() {
        let w1 = Algebra::W1;
        assert_eq!(phi_theta(&w1, &Cochain::wedge(&[0])).unwrap(), FormExpr::omega(0));
        assert_eq!(phi_theta(&w1, &Cochain::wedge(&[0, 1, 2])).unwrap().to_string(), "w0^w1^w2");
        let jet = w1.jet();
        assert_eq!(phi_theta(&jet, &Cochain::wedge(&[0, 3])).unwrap().to_string(), "-w1'^w0");
        let sl2: Algebra = crate::liealg::StructureConstants::sl2().into();
        assert!(phi_theta(&sl2, &Cochain::wedge(&[0])).is_err());
    }

    #[test]
    fn chain_map_on_godbillon_vey() {
        let c = phi_chain_check(&Algebra::W1, &Cochain::wedge(&[0, 1, 2]), 1).unwrap();
        assert!(c.holds && c.d_phi.is_zero() && c.phi_d.is_zero());
        let c = phi_chain_check(&Algebra::W1, &Cochain::wedge(&[1, 2]), 1).unwrap();
        assert!(c.holds && !c.d_phi.is_zero());
    }

    #[test]
    fn zeta() {
        let z = zeta_image().unwrap();
        assert!(z.sign_identity);
        assert!(z.preimage_is_minus_generator);
        assert_eq!(z.image.to_string(), "w1'^w0^w1^w2");
        assert!(z.pass);
    }
}
