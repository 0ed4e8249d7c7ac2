//! Cochain spaces `C^q(g)`, `Ω^q(g)` and `Ω^q(g; g')`, their bases and coboundaries.
//!
//! Conventions:
//!
//! * The bracket-insertion term carries `(-1)^(j+1)` for `1 <= i < j <= q+1`,
//!   so that in degree one `dα(x ⊗ y) = -α([x, y])`. On alternating cochains
//!   this is exactly the Chevalley-Eilenberg differential.
//! * Coadjoint cochains add the action terms `Σ_i (-1)^(i+1) x_i · γ(.., x̂_i, ..)`
//!   with `(x · γ)(h) = γ([h, x])`.
//! * A basis multi-index `(i_1, .., i_q; m)` has weight `-(Σ wt(e_{i_j}) + wt(e_m))`,
//!   so that every coboundary and every chain map is weight homogeneous. For
//!   formal vector fields `β_{i_1} ⊗ .. ⊗ β_{i_q}` has weight `Σ (1 - i_j)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::Algebra;
use crate::linalg::{add_entry, SparseVec};
use crate::rational::{self, sign, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Tensor,
    Alternating,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    Trivial,
    Coadjoint,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Tensor => "tensor",
            Flavor::Alternating => "alternating",
        })
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coefficients::Trivial => "trivial",
            Coefficients::Coadjoint => "coadjoint",
        })
    }
}

/// A basis multi-index: argument slots plus, for coadjoint cochains, the dual
/// index of the output functional.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisIndex {
    pub slots: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<usize>,
}

impl BasisIndex {
    pub fn new(slots: Vec<usize>) -> Self {
        Self { slots, dual: None }
    }

    pub fn coadjoint(slots: Vec<usize>, dual: usize) -> Self {
        Self {
            slots,
            dual: Some(dual),
        }
    }

    pub fn weight(&self, alg: &Algebra) -> i64 {
        -(self.slots.iter().chain(self.dual.iter()).map(|&i| alg.weight(i)).sum::<i64>())
    }
}

/// Sorts `slots` in place, returning the permutation sign, or `None` on a repeat.
pub fn sort_with_sign(slots: &mut [usize]) -> Option<bool> {
    let mut odd = false;
    for i in 1..slots.len() {
        let mut j = i;
        while j > 0 && slots[j - 1] > slots[j] {
            slots.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if slots.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(odd)
    }
}

/// All permutations of `0..n` with their parity (`true` = odd), in lexicographic order.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, bool)>) {
        if prefix.len() == used.len() {
            let mut p = prefix.clone();
            let odd = sort_with_sign(&mut p).unwrap();
            out.push((prefix.clone(), odd));
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                rec(prefix, used, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// A sparse cochain.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    pub degree: usize,
    pub flavor: Flavor,
    pub coefficients: Coefficients,
    pub weight: Option<i64>,
    entries: BTreeMap<BasisIndex, Q>,
}

impl Cochain {
    pub fn zero(degree: usize, flavor: Flavor, coefficients: Coefficients) -> Self {
        Self {
            degree,
            flavor,
            coefficients,
            weight: None,
            entries: BTreeMap::new(),
        }
    }

    pub fn with_weight(mut self, w: Option<i64>) -> Self {
        self.weight = w;
        self
    }

    /// The tensor cochain `β_{i_1} ⊗ .. ⊗ β_{i_q}`.
    pub fn tensor_basis(slots: &[usize]) -> Self {
        let mut c = Self::zero(slots.len(), Flavor::Tensor, Coefficients::Trivial);
        c.set(BasisIndex::new(slots.to_vec()), Q::one());
        c
    }

    /// The alternating cochain `β_{i_1} ∧ .. ∧ β_{i_q}` (value 1 on the sorted tuple).
    pub fn wedge(slots: &[usize]) -> Self {
        let mut c = Self::zero(slots.len(), Flavor::Alternating, Coefficients::Trivial);
        c.add_at(slots, None, &Q::one());
        c
    }

    /// The coadjoint cochain `(β_{i_1} ∧ .. ∧ β_{i_q}) ⊗ β_m`.
    pub fn coadjoint_wedge(slots: &[usize], m: usize) -> Self {
        let mut c = Self::zero(slots.len(), Flavor::Alternating, Coefficients::Coadjoint);
        c.add_at(slots, Some(m), &Q::one());
        c
    }

    pub fn entries(&self) -> impl Iterator<Item = (&BasisIndex, &Q)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sets the value at a stored (canonical) index.
    pub fn set(&mut self, idx: BasisIndex, value: Q) {
        assert_eq!(idx.slots.len(), self.degree, "index length differs from degree");
        assert_eq!(
            idx.dual.is_some(),
            self.coefficients == Coefficients::Coadjoint,
            "dual index presence must match the coefficient flavor"
        );
        if value.is_zero() {
            self.entries.remove(&idx);
        } else {
            self.entries.insert(idx, value);
        }
    }

    /// Adds `c` at an arbitrary tuple, normalizing alternating indices.
    pub fn add_at(&mut self, slots: &[usize], dual: Option<usize>, c: &Q) {
        let mut s = slots.to_vec();
        let mut c = c.clone();
        if self.flavor == Flavor::Alternating {
            match sort_with_sign(&mut s) {
                None => return,
                Some(true) => c = -c,
                Some(false) => {}
            }
        }
        let idx = BasisIndex { slots: s, dual };
        let v = self.entries.get(&idx).cloned().unwrap_or_else(Q::zero) + c;
        self.set(idx, v);
    }

    /// Evaluates on an arbitrary tuple (with the permutation sign for alternating cochains).
    pub fn value(&self, slots: &[usize], dual: Option<usize>) -> Q {
        let mut s = slots.to_vec();
        let mut negate = false;
        if self.flavor == Flavor::Alternating {
            match sort_with_sign(&mut s) {
                None => return Q::zero(),
                Some(odd) => negate = odd,
            }
        }
        let v = self
            .entries
            .get(&BasisIndex { slots: s, dual })
            .cloned()
            .unwrap_or_else(Q::zero);
        if negate {
            -v
        } else {
            v
        }
    }

    pub fn scale(&self, c: &Q) -> Cochain {
        let mut out = self.clone();
        out.entries = self
            .entries
            .iter()
            .filter(|_| !c.is_zero())
            .map(|(k, v)| (k.clone(), v * c))
            .collect();
        out
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.same_kind(other)?;
        let mut out = self.clone();
        for (k, v) in &other.entries {
            let s = out.entries.get(k).cloned().unwrap_or_else(Q::zero) + v;
            out.set(k.clone(), s);
        }
        if out.weight != other.weight {
            out.weight = None;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add(&other.scale(&-Q::one()))
    }

    fn same_kind(&self, other: &Cochain) -> Result<()> {
        if (self.degree, self.flavor, self.coefficients) != (other.degree, other.flavor, other.coefficients) {
            return Err(Error::FlavorMismatch {
                expected: format!("{} {} degree {}", self.flavor, self.coefficients, self.degree),
                got: format!("{} {} degree {}", other.flavor, other.coefficients, other.degree),
            });
        }
        Ok(())
    }

    /// Distinct weights present in the support.
    pub fn support_weights(&self, alg: &Algebra) -> Vec<i64> {
        let mut w: Vec<i64> = self.entries.keys().map(|k| k.weight(alg)).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    /// Whether every supported index has the declared weight.
    pub fn is_weight_homogeneous(&self, alg: &Algebra) -> bool {
        match self.weight {
            Some(w) => self.entries.keys().all(|k| k.weight(alg) == w),
            None => self.support_weights(alg).len() <= 1,
        }
    }

    /// Whether the stored table is skew under every adjacent transposition.
    pub fn is_skew(&self) -> bool {
        match self.flavor {
            Flavor::Alternating => self.entries.keys().all(|k| k.slots.windows(2).all(|w| w[0] < w[1])),
            Flavor::Tensor => self.entries.iter().all(|(k, v)| {
                (0..k.slots.len().saturating_sub(1)).all(|a| {
                    let mut s = k.slots.clone();
                    s.swap(a, a + 1);
                    self.value(&s, k.dual) == -v.clone()
                })
            }),
        }
    }

    /// Expands an alternating cochain into the equal tensor cochain.
    pub fn to_tensor(&self) -> Cochain {
        if self.flavor == Flavor::Tensor {
            return self.clone();
        }
        let mut out = Cochain::zero(self.degree, Flavor::Tensor, self.coefficients).with_weight(self.weight);
        let perms = permutations(self.degree);
        for (k, v) in &self.entries {
            for (p, odd) in &perms {
                let slots: Vec<usize> = p.iter().map(|&i| k.slots[i]).collect();
                let c = if *odd { -v.clone() } else { v.clone() };
                out.set(BasisIndex { slots, dual: k.dual }, c);
            }
        }
        out
    }

    /// `β_a ⊗ self` for a trivial cochain, as a tensor cochain of one degree higher.
    pub fn prepend(&self, a: usize) -> Cochain {
        let t = self.to_tensor();
        let mut out = Cochain::zero(self.degree + 1, Flavor::Tensor, Coefficients::Trivial);
        for (k, v) in &t.entries {
            let mut slots = vec![a];
            slots.extend(&k.slots);
            out.set(BasisIndex::new(slots), v.clone());
        }
        out
    }

    /// The cochain written in readable form, e.g. `b1⊗b0⊗b2 - ...`.
    pub fn describe(&self, alg: &Algebra) -> String {
        if self.entries.is_empty() {
            return "0".into();
        }
        let join = if self.flavor == Flavor::Alternating { "∧" } else { "⊗" };
        let mut out = String::new();
        for (n, (k, v)) in self.entries.iter().enumerate() {
            let body = if k.slots.is_empty() {
                "1".to_string()
            } else {
                k.slots
                    .iter()
                    .map(|&i| format!("β[{}]", alg.label(i)))
                    .collect::<Vec<_>>()
                    .join(join)
            };
            let body = match k.dual {
                Some(m) => format!("({body})⊗β[{}]", alg.label(m)),
                None => body,
            };
            let coef = rational::format_q(v);
            let (neg, mag) = match coef.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, coef),
            };
            if n > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            if mag != "1" {
                out.push_str(&mag);
                out.push('*');
            }
            out.push_str(&body);
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct CochainJson {
    degree: usize,
    flavor: Flavor,
    coefficients: Coefficients,
    #[serde(default)]
    weight: Option<i64>,
    entries: Vec<EntryJson>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    slots: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dual: Option<usize>,
    #[serde(with = "rational")]
    value: Q,
}

impl Serialize for Cochain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CochainJson {
            degree: self.degree,
            flavor: self.flavor,
            coefficients: self.coefficients,
            weight: self.weight,
            entries: self
                .entries
                .iter()
                .map(|(k, v)| EntryJson {
                    slots: k.slots.clone(),
                    dual: k.dual,
                    value: v.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cochain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = CochainJson::deserialize(d)?;
        let mut c = Cochain::zero(j.degree, j.flavor, j.coefficients).with_weight(j.weight);
        for e in j.entries {
            if e.slots.len() != j.degree {
                return Err(D::Error::custom("entry length differs from degree"));
            }
            if e.dual.is_some() != (j.coefficients == Coefficients::Coadjoint) {
                return Err(D::Error::custom("dual index must be present exactly for coadjoint cochains"));
            }
            c.add_at(&e.slots, e.dual, &e.value);
        }
        Ok(c)
    }
}

/// Enumerates the basis of a cochain space in lexicographic order.
///
/// For an infinite algebra the weight is mandatory; each weight piece is finite.
pub fn enumerate_basis(
    alg: &Algebra,
    degree: usize,
    flavor: Flavor,
    coefficients: Coefficients,
    weight: Option<i64>,
) -> Result<Vec<BasisIndex>> {
    if weight.is_none() && !alg.is_finite() {
        return Err(Error::WeightRequired(alg.name()));
    }
    let with_dual = coefficients == Coefficients::Coadjoint;
    let positions = degree + usize::from(with_dual);
    let target = weight.map(|w| -w);
    let min_wt = alg.min_weight();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(positions);
    enumerate_rec(alg, degree, positions, flavor, target, min_wt, 0, &mut cur, &mut out);
    if with_dual {
        out.sort();
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_rec(
    alg: &Algebra,
    degree: usize,
    positions: usize,
    flavor: Flavor,
    target: Option<i64>,
    min_wt: i64,
    partial: i64,
    cur: &mut Vec<usize>,
    out: &mut Vec<BasisIndex>,
) {
    let pos = cur.len();
    if pos == positions {
        if target.is_none_or(|t| t == partial) {
            let mut slots = cur.clone();
            let dual = if positions > degree { slots.pop() } else { None };
            out.push(BasisIndex { slots, dual });
        }
        return;
    }
    let candidates = match target {
        Some(t) => {
            let remaining = (positions - pos - 1) as i64;
            alg.indices_up_to_weight(t - partial - remaining * min_wt)
        }
        None => alg.scan_indices(0),
    };
    let increasing = flavor == Flavor::Alternating && pos > 0 && pos < degree;
    for i in candidates {
        if increasing && i <= cur[pos - 1] {
            continue;
        }
        cur.push(i);
        enumerate_rec(alg, degree, positions, flavor, target, min_wt, partial + alg.weight(i), cur, out);
        cur.pop();
    }
}

/// A cochain space with its enumerated basis and an index lookup.
#[derive(Clone, Debug)]
pub struct CochainSpace {
    pub degree: usize,
    pub flavor: Flavor,
    pub coefficients: Coefficients,
    pub weight: Option<i64>,
    basis: Vec<BasisIndex>,
    lookup: HashMap<BasisIndex, usize>,
}

impl CochainSpace {
    pub fn new(
        alg: &Algebra,
        degree: usize,
        flavor: Flavor,
        coefficients: Coefficients,
        weight: Option<i64>,
    ) -> Result<Self> {
        let basis = enumerate_basis(alg, degree, flavor, coefficients, weight)?;
        Ok(Self::from_basis(degree, flavor, coefficients, weight, basis))
    }

    /// A zero-dimensional space (used to truncate complexes below degree 0).
    pub fn empty(degree: usize, flavor: Flavor, coefficients: Coefficients, weight: Option<i64>) -> Self {
        Self::from_basis(degree, flavor, coefficients, weight, Vec::new())
    }

    fn from_basis(
        degree: usize,
        flavor: Flavor,
        coefficients: Coefficients,
        weight: Option<i64>,
        basis: Vec<BasisIndex>,
    ) -> Self {
        let lookup = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        Self {
            degree,
            flavor,
            coefficients,
            weight,
            basis,
            lookup,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisIndex] {
        &self.basis
    }

    pub fn index_of(&self, idx: &BasisIndex) -> Option<usize> {
        self.lookup.get(idx).copied()
    }

    /// Position and sign of an arbitrary tuple; `None` if it vanishes or lies
    /// outside this space.
    pub fn locate(&self, slots: &[usize], dual: Option<usize>) -> Option<(usize, bool)> {
        let mut s = slots.to_vec();
        let mut odd = false;
        if self.flavor == Flavor::Alternating {
            odd = sort_with_sign(&mut s)?;
        }
        self.lookup
            .get(&BasisIndex { slots: s, dual })
            .map(|&i| (i, odd))
    }

    /// Coordinates of a cochain; entries outside this space are reported as an error.
    pub fn vector_of(&self, c: &Cochain) -> Result<SparseVec> {
        if (c.degree, c.flavor, c.coefficients) != (self.degree, self.flavor, self.coefficients) {
            return Err(Error::FlavorMismatch {
                expected: format!("{} {} degree {}", self.flavor, self.coefficients, self.degree),
                got: format!("{} {} degree {}", c.flavor, c.coefficients, c.degree),
            });
        }
        let mut v = SparseVec::new();
        for (k, x) in c.entries() {
            let i = self.index_of(k).ok_or_else(|| {
                Error::Definition(format!("cochain entry {:?} lies outside the space", k))
            })?;
            add_entry(&mut v, i, x);
        }
        Ok(v)
    }

    pub fn cochain_of(&self, v: &SparseVec) -> Cochain {
        let mut c = Cochain::zero(self.degree, self.flavor, self.coefficients).with_weight(self.weight);
        for (&i, x) in v {
            c.set(self.basis[i].clone(), x.clone());
        }
        c
    }
}

/// One term `coeff * α(slots; dual)` of a linear functional on cochains.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub slots: Vec<usize>,
    pub dual: Option<usize>,
    pub coeff: Q,
}

/// The terms of `α ↦ (dα)(target)` for a cochain `α` of degree `target.slots.len() - 1`.
pub fn coboundary_terms(alg: &Algebra, target: &BasisIndex) -> Vec<Term> {
    let s = &target.slots;
    let n = s.len();
    let mut terms = Vec::new();
    // bracket insertion: position a gets [s_a, s_b], position b is dropped
    for b in 1..n {
        let sg = sign(b);
        for a in 0..b {
            for (k, c) in alg.bracket_basis(s[a], s[b]) {
                let mut slots = s.clone();
                slots[a] = k;
                slots.remove(b);
                terms.push(Term {
                    slots,
                    dual: target.dual,
                    coeff: &sg * c,
                });
            }
        }
    }
    // action terms: (x · γ)(h) = γ([h, x])
    if let Some(h) = target.dual {
        for a in 0..n {
            let sg = sign(a);
            for (k, c) in alg.bracket_basis(h, s[a]) {
                let mut slots = s.clone();
                slots.remove(a);
                terms.push(Term {
                    slots,
                    dual: Some(k),
                    coeff: &sg * c,
                });
            }
        }
    }
    terms
}

fn check_flavor(alpha: &Cochain, flavor: Flavor, coefficients: Option<Coefficients>) -> Result<()> {
    let ok = alpha.flavor == flavor && coefficients.is_none_or(|c| c == alpha.coefficients);
    if ok {
        Ok(())
    } else {
        Err(Error::FlavorMismatch {
            expected: match coefficients {
                Some(c) => format!("{flavor} {c}"),
                None => flavor.to_string(),
            },
            got: format!("{} {}", alpha.flavor, alpha.coefficients),
        })
    }
}

/// Applies the coboundary to a cochain, slice by slice over its support weights.
fn apply_coboundary(alg: &Algebra, alpha: &Cochain) -> Result<Cochain> {
    let mut out = Cochain::zero(alpha.degree + 1, alpha.flavor, alpha.coefficients);
    let weights: Vec<Option<i64>> = if alg.is_finite() && alpha.weight.is_none() {
        vec![None]
    } else {
        alpha.support_weights(alg).into_iter().map(Some).collect()
    };
    for w in &weights {
        let target = CochainSpace::new(alg, alpha.degree + 1, alpha.flavor, alpha.coefficients, *w)?;
        for idx in target.basis() {
            let mut v = Q::zero();
            for t in coboundary_terms(alg, idx) {
                let x = alpha.value(&t.slots, t.dual);
                if !x.is_zero() {
                    v += &t.coeff * x;
                }
            }
            out.set(idx.clone(), v);
        }
    }
    out.weight = match weights.as_slice() {
        [w] => *w,
        _ => None,
    };
    Ok(out)
}

/// The Leibniz coboundary on tensor cochains with trivial coefficients.
pub fn leibniz_d(alpha: &Cochain, alg: &Algebra) -> Result<Cochain> {
    check_flavor(alpha, Flavor::Tensor, Some(Coefficients::Trivial))?;
    apply_coboundary(alg, alpha)
}

/// The Chevalley-Eilenberg coboundary on alternating cochains (trivial or coadjoint).
pub fn ce_d(alpha: &Cochain, alg: &Algebra) -> Result<Cochain> {
    check_flavor(alpha, Flavor::Alternating, None)?;
    apply_coboundary(alg, alpha)
}

/// Antisymmetrization `Σ_σ sgn(σ) α(x_σ(1), ..)` without the `1/q!` factor.
/// Alternating inputs are returned unchanged.
pub fn skew_project(alpha: &Cochain) -> Result<Cochain> {
    if alpha.coefficients != Coefficients::Trivial {
        return Err(Error::FlavorMismatch {
            expected: "trivial".into(),
            got: alpha.coefficients.to_string(),
        });
    }
    if alpha.flavor == Flavor::Alternating {
        return Ok(alpha.clone());
    }
    let mut out = Cochain::zero(alpha.degree, Flavor::Alternating, Coefficients::Trivial).with_weight(alpha.weight);
    for (k, v) in alpha.entries() {
        out.add_at(&k.slots, None, v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::StructureConstants;
    use crate::rational::q;

    fn count_compositions(total: usize, parts: usize) -> usize {
        // stars and bars
        let n = total + parts - 1;
        let k = parts - 1;
        (0..k).fold(1usize, |acc, t| acc * (n - t) / (t + 1))
    }

    #[test]
    fn w1_weight_zero_bases() {
        let b = enumerate_basis(&Algebra::W1, 3, Flavor::Alternating, Coefficients::Trivial, Some(0)).unwrap();
        assert_eq!(b, vec![BasisIndex::new(vec![0, 1, 2])]);
        let t = enumerate_basis(&Algebra::W1, 4, Flavor::Tensor, Coefficients::Trivial, Some(0)).unwrap();
        assert_eq!(t.len(), 35);
        assert_eq!(t.len(), count_compositions(4, 4));
        assert!(t.iter().all(|k| k.slots.iter().sum::<usize>() == 4));
    }

    #[test]
    fn w1_requires_weight() {
        let e = enumerate_basis(&Algebra::W1, 2, Flavor::Tensor, Coefficients::Trivial, None);
        assert!(matches!(e, Err(Error::WeightRequired(_))));
    }

    #[test]
    fn exterior_power_vanishes_above_dimension() {
        let g = Algebra::from(StructureConstants::sl2());
        assert!(enumerate_basis(&g, 4, Flavor::Alternating, Coefficients::Trivial, None)
            .unwrap()
            .is_empty());
        assert_eq!(
            enumerate_basis(&g, 2, Flavor::Tensor, Coefficients::Trivial, None).unwrap().len(),
            9
        );
    }

    #[test]
    fn degree_one_coboundary() {
        let g = Algebra::from(StructureConstants::sl2());
        // α = β_e, dα(h ⊗ e) = -α([h, e]) = -2
        let d = leibniz_d(&Cochain::tensor_basis(&[1]), &g).unwrap();
        assert_eq!(d.value(&[0, 1], None), q(-2));
        assert_eq!(d.value(&[1, 0], None), q(2));
        let d = ce_d(&Cochain::wedge(&[1]), &g).unwrap();
        assert_eq!(d.value(&[0, 1], None), q(-2));
    }

    #[test]
    fn constant_cochain_is_closed() {
        let g = Algebra::from(StructureConstants::sl2());
        let one = Cochain::tensor_basis(&[]);
        assert!(leibniz_d(&one, &g).unwrap().is_zero());
    }

    #[test]
    fn flavor_mismatch_rejected() {
        let g = Algebra::from(StructureConstants::sl2());
        assert!(leibniz_d(&Cochain::wedge(&[0]), &g).is_err());
        assert!(ce_d(&Cochain::tensor_basis(&[0]), &g).is_err());
    }

    #[test]
    fn skew_projection_examples() {
        let p = skew_project(&Cochain::tensor_basis(&[0, 1])).unwrap();
        assert_eq!(p, Cochain::wedge(&[0, 1]));
        assert!(skew_project(&Cochain::tensor_basis(&[1, 1])).unwrap().is_zero());
        let w = Cochain::wedge(&[0, 1, 2]);
        assert_eq!(skew_project(&w).unwrap(), w);
    }

    #[test]
    fn zeta_representative_is_a_cocycle() {
        let zeta = Cochain::wedge(&[0, 1, 2]).prepend(1);
        assert_eq!(zeta.len(), 6);
        assert!(leibniz_d(&zeta, &Algebra::W1).unwrap().is_zero());
    }

    #[test]
    fn coadjoint_degree_zero() {
        // d(γ)(x)(h) = (x·γ)(h) = γ([h, x])
        let g = Algebra::from(StructureConstants::sl2());
        let gamma = Cochain::coadjoint_wedge(&[], 1); // β_e
        let d = ce_d(&gamma, &g).unwrap();
        // x = e, h = h: γ([h, e]) = 2
        assert_eq!(d.value(&[1], Some(0)), q(2));
        // x = h, h = e: γ([e, h]) = -2
        assert_eq!(d.value(&[0], Some(1)), q(-2));
    }

    #[test]
    fn cochain_json_roundtrip() {
        let c = Cochain::coadjoint_wedge(&[0, 1, 2], 1).scale(&crate::rational::qr(-3, 2));
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.contains("\"-3/2\""));
        let back: Cochain = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }
}
