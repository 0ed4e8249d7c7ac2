//! Lie algebras given by structure constants, the weight-graded algebra of
//! formal vector fields on the line, the coadjoint module and the 1-jet model
//! of the current algebra.
//!
//! Formal vector fields use the basis `f_k = (x^k / k!) d/dx`, `k >= 0`, with
//! weight `k - 1`. The jet of any algebra interleaves its basis: index `2k` is
//! the constant path at `e_k` (value), `2k + 1` is the path `t e_k` (velocity).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{add_entry, add_scaled, SparseVec};
use crate::rational::{format_q, parse_q, q, Q};

/// A finite-dimensional Lie algebra presented by rational structure constants.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants {
    name: String,
    labels: Vec<String>,
    weights: Option<Vec<i64>>,
    table: BTreeMap<(usize, usize), SparseVec>,
}

impl StructureConstants {
    /// Builds an algebra from the listed brackets `[e_i, e_j]`. A bracket whose
    /// mirror `(j, i)` is not listed gets the antisymmetric partner filled in;
    /// when both are listed they are stored verbatim, so inconsistent input
    /// stays visible to [`StructureConstants::antisymmetry_violations`].
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        weights: Option<Vec<i64>>,
        brackets: Vec<(usize, usize, SparseVec)>,
    ) -> Result<Self> {
        let dim = labels.len();
        if let Some(w) = &weights {
            if w.len() != dim {
                return Err(Error::Definition(format!(
                    "{} weights given for {} basis elements",
                    w.len(),
                    dim
                )));
            }
        }
        let mut table = BTreeMap::new();
        for (i, j, mut out) in brackets {
            for &k in [i, j].iter().chain(out.keys()) {
                if k >= dim {
                    return Err(Error::UnknownBasis { index: k, dim });
                }
            }
            out.retain(|_, x| !x.is_zero());
            if !out.is_empty() {
                table.insert((i, j), out);
            }
        }
        let given: Vec<(usize, usize)> = table.keys().copied().collect();
        for (i, j) in given {
            if i != j && !table.contains_key(&(j, i)) {
                let neg = table[&(i, j)].iter().map(|(&k, x)| (k, -x.clone())).collect();
                table.insert((j, i), neg);
            }
        }
        Ok(Self {
            name: name.into(),
            labels,
            weights,
            table,
        })
    }

    pub fn abelian(n: usize) -> Self {
        let labels = (1..=n).map(|i| format!("e{i}")).collect();
        Self::new(format!("abelian({n})"), labels, None, vec![]).unwrap()
    }

    /// The 3-dimensional Heisenberg algebra `[x, y] = z`.
    pub fn heisenberg3() -> Self {
        let labels = ["x", "y", "z"].map(String::from).to_vec();
        let br = vec![(0, 1, single(2, q(1)))];
        Self::new("heisenberg3", labels, Some(vec![1, 1, 2]), br).unwrap()
    }

    /// `sl_2` in the basis `h, e, f`.
    pub fn sl2() -> Self {
        let labels = ["h", "e", "f"].map(String::from).to_vec();
        let br = vec![
            (0, 1, single(1, q(2))),
            (0, 2, single(2, q(-2))),
            (1, 2, single(0, q(1))),
        ];
        Self::new("sl2", labels, Some(vec![0, 1, -1]), br).unwrap()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> Option<&[i64]> {
        self.weights.as_deref()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        self.table.get(&(i, j)).cloned().unwrap_or_default()
    }

    fn check_vec(&self, x: &SparseVec) -> Result<()> {
        match x.keys().find(|&&k| k >= self.dim()) {
            Some(&index) => Err(Error::UnknownBasis {
                index,
                dim: self.dim(),
            }),
            None => Ok(()),
        }
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> Result<SparseVec> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        let mut out = SparseVec::new();
        for (&i, a) in x {
            for (&j, b) in y {
                if let Some(v) = self.table.get(&(i, j)) {
                    add_scaled(&mut out, v, &(a * b));
                }
            }
        }
        Ok(out)
    }

    pub fn bracket_labels(&self, a: &str, b: &str) -> Result<SparseVec> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        Ok(self.bracket_basis(i, j))
    }

    /// Pairs `(i, j)` with `c[i][j] != -c[j][i]` (including nonzero `c[i][i]`).
    pub fn antisymmetry_violations(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let mut s = self.bracket_basis(i, j);
                add_scaled(&mut s, &self.bracket_basis(j, i), &Q::one());
                if !s.is_empty() {
                    bad.push((i, j));
                }
            }
        }
        bad
    }

    /// The 1-jet algebra of pairs (value, velocity), with interleaved basis.
    pub fn jet_algebra(&self) -> StructureConstants {
        let n = self.dim();
        let labels = self
            .labels
            .iter()
            .flat_map(|l| [l.clone(), format!("{l}'")])
            .collect();
        let weights = self
            .weights
            .as_ref()
            .map(|w| w.iter().flat_map(|&x| [x, x]).collect());
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = self.bracket_basis(i, j);
                if v.is_empty() {
                    continue;
                }
                let val: SparseVec = v.iter().map(|(&k, x)| (2 * k, x.clone())).collect();
                let vel: SparseVec = v.iter().map(|(&k, x)| (2 * k + 1, x.clone())).collect();
                brackets.push((2 * i, 2 * j, val));
                brackets.push((2 * i, 2 * j + 1, vel.clone()));
                brackets.push((2 * i + 1, 2 * j, vel));
            }
        }
        Self::new(format!("jet({})", self.name), labels, weights, brackets)
            .expect("jet of a valid algebra is valid")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: AlgebraFile = serde_json::from_str(text)?;
        file.into_algebra()
    }

    pub fn to_json(&self) -> AlgebraFile {
        let mut brackets = Vec::new();
        for (&(i, j), out) in &self.table {
            if i < j || !self.table.contains_key(&(j, i)) {
                brackets.push(BracketEntry {
                    i,
                    j,
                    out: out.iter().map(|(k, x)| (k.to_string(), format_q(x))).collect(),
                });
            }
        }
        AlgebraFile {
            name: Some(self.name.clone()),
            basis: self.labels.clone(),
            weights: self.weights.clone(),
            brackets,
        }
    }
}

fn single(k: usize, c: Q) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(k, c);
    v
}

/// On-disk algebra definition.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<i64>>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    /// Output coefficients keyed by basis index (or label).
    pub out: BTreeMap<String, String>,
}

impl AlgebraFile {
    pub fn into_algebra(self) -> Result<StructureConstants> {
        let dim = self.basis.len();
        let mut brackets = Vec::new();
        for (n, b) in self.brackets.iter().enumerate() {
            let mut out = SparseVec::new();
            for (key, val) in &b.out {
                let k = match key.parse::<usize>() {
                    Ok(k) => k,
                    Err(_) => self.basis.iter().position(|l| l == key).ok_or_else(|| {
                        Error::Definition(format!("brackets[{n}]: unknown basis key `{key}`"))
                    })?,
                };
                if k >= dim {
                    return Err(Error::Definition(format!(
                        "brackets[{n}]: output index {k} out of range (dimension {dim})"
                    )));
                }
                let c = parse_q(val)
                    .map_err(|_| Error::Definition(format!("brackets[{n}]: bad coefficient `{val}`")))?;
                add_entry(&mut out, k, &c);
            }
            if b.i >= dim || b.j >= dim {
                return Err(Error::Definition(format!(
                    "brackets[{n}]: index ({}, {}) out of range (dimension {dim})",
                    b.i, b.j
                )));
            }
            brackets.push((b.i, b.j, out));
        }
        let name = self.name.unwrap_or_else(|| "custom".to_string());
        StructureConstants::new(name, self.basis, self.weights, brackets)
    }
}

/// `[f_i, f_j]` in formal vector fields: `(j - i) (i+j-1)! / (i! j!) f_{i+j-1}`.
pub fn w1_bracket(i: usize, j: usize) -> SparseVec {
    let mut out = SparseVec::new();
    if i == j || i + j == 0 {
        return out;
    }
    let n = i + j - 1;
    let coef = Q::new(
        factorial(n) * BigInt::from(j as i64 - i as i64),
        factorial(i) * factorial(j),
    );
    if !coef.is_zero() {
        out.insert(n, coef);
    }
    out
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, t| acc * BigInt::from(t))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    acc
}

/// Any Lie algebra the cochain machinery can work over.
#[derive(Clone, Debug, PartialEq)]
pub enum Algebra {
    Finite(StructureConstants),
    /// Formal vector fields on the line, graded by weight.
    W1,
    /// The 1-jet algebra of an infinite-dimensional algebra.
    Jet(Box<Algebra>),
}

impl From<StructureConstants> for Algebra {
    fn from(s: StructureConstants) -> Self {
        Algebra::Finite(s)
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Algebra {
    pub fn name(&self) -> String {
        match self {
            Algebra::Finite(s) => s.name().to_string(),
            Algebra::W1 => "w1".to_string(),
            Algebra::Jet(a) => format!("jet({})", a.name()),
        }
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            Algebra::Finite(s) => Some(s.dim()),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Algebra::Finite(_))
    }

    /// Whether the algebra carries a genuine weight grading.
    pub fn is_graded(&self) -> bool {
        match self {
            Algebra::Finite(s) => s.weights.is_some(),
            _ => true,
        }
    }

    /// Weight of a basis element; ungraded finite algebras sit in weight 0.
    pub fn weight(&self, i: usize) -> i64 {
        match self {
            Algebra::Finite(s) => s.weights.as_ref().map_or(0, |w| w[i]),
            Algebra::W1 => i as i64 - 1,
            Algebra::Jet(a) => a.weight(i / 2),
        }
    }

    pub fn min_weight(&self) -> i64 {
        match self {
            Algebra::Finite(s) => (0..s.dim()).map(|i| self.weight(i)).min().unwrap_or(0),
            Algebra::W1 => -1,
            Algebra::Jet(a) => a.min_weight(),
        }
    }

    /// All basis indices of weight at most `max`, ascending.
    pub fn indices_up_to_weight(&self, max: i64) -> Vec<usize> {
        match self {
            Algebra::Finite(s) => (0..s.dim()).filter(|&i| self.weight(i) <= max).collect(),
            Algebra::W1 => {
                if max < -1 {
                    Vec::new()
                } else {
                    (0..=(max + 1) as usize).collect()
                }
            }
            Algebra::Jet(a) => a
                .indices_up_to_weight(max)
                .into_iter()
                .flat_map(|k| [2 * k, 2 * k + 1])
                .collect(),
        }
    }

    pub fn indices_of_weight(&self, w: i64) -> Vec<usize> {
        self.indices_up_to_weight(w)
            .into_iter()
            .filter(|&i| self.weight(i) == w)
            .collect()
    }

    pub fn label(&self, i: usize) -> String {
        match self {
            Algebra::Finite(s) => s.labels[i].clone(),
            Algebra::W1 => format!("f{i}"),
            Algebra::Jet(a) => {
                if i.is_multiple_of(2) {
                    a.label(i / 2)
                } else {
                    format!("{}'", a.label(i / 2))
                }
            }
        }
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        match self {
            Algebra::Finite(s) => s.bracket_basis(i, j),
            Algebra::W1 => w1_bracket(i, j),
            Algebra::Jet(a) => {
                let (vi, vj) = (i % 2 == 1, j % 2 == 1);
                if vi && vj {
                    return SparseVec::new();
                }
                let shift = usize::from(vi || vj);
                a.bracket_basis(i / 2, j / 2)
                    .into_iter()
                    .map(|(k, x)| (2 * k + shift, x))
                    .collect()
            }
        }
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> Result<SparseVec> {
        if let Algebra::Finite(s) = self {
            return s.bracket(x, y);
        }
        let mut out = SparseVec::new();
        for (&i, a) in x {
            for (&j, b) in y {
                add_scaled(&mut out, &self.bracket_basis(i, j), &(a * b));
            }
        }
        Ok(out)
    }

    /// The 1-jet algebra; finite algebras are materialized.
    pub fn jet(&self) -> Algebra {
        match self {
            Algebra::Finite(s) => Algebra::Finite(s.jet_algebra()),
            other => Algebra::Jet(Box::new(other.clone())),
        }
    }

    /// Basis indices to scan: everything for finite algebras, `0..bound` otherwise.
    pub fn scan_indices(&self, bound: usize) -> Vec<usize> {
        match self.dim() {
            Some(n) => (0..n).collect(),
            None => (0..bound).collect(),
        }
    }

    /// Triples violating Jacobi. Infinite algebras are scanned over index
    /// triples with `i + j + k <= bound`.
    pub fn jacobi_violations(&self, bound: usize) -> Vec<(usize, usize, usize)> {
        let idx = self.scan_indices(bound + 1);
        let mut bad = Vec::new();
        for &i in &idx {
            for &j in &idx {
                for &k in &idx {
                    if !self.is_finite() && i + j + k > bound {
                        continue;
                    }
                    if !self.jacobiator(i, j, k).is_empty() {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }

    fn bracket_with_basis(&self, x: &SparseVec, k: usize) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, a) in x {
            add_scaled(&mut out, &self.bracket_basis(i, k), a);
        }
        out
    }

    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> SparseVec {
        let mut s = self.bracket_with_basis(&self.bracket_basis(i, j), k);
        add_scaled(&mut s, &self.bracket_with_basis(&self.bracket_basis(j, k), i), &Q::one());
        add_scaled(&mut s, &self.bracket_with_basis(&self.bracket_basis(k, i), j), &Q::one());
        s
    }

    /// Pairs violating antisymmetry within the scan range.
    pub fn antisymmetry_violations(&self, bound: usize) -> Vec<(usize, usize)> {
        if let Algebra::Finite(s) = self {
            return s.antisymmetry_violations();
        }
        let idx = self.scan_indices(bound + 1);
        let mut bad = Vec::new();
        for &i in &idx {
            for &j in &idx {
                if i > j || i + j > bound {
                    continue;
                }
                let mut s = self.bracket_basis(i, j);
                add_scaled(&mut s, &self.bracket_basis(j, i), &Q::one());
                if !s.is_empty() {
                    bad.push((i, j));
                }
            }
        }
        bad
    }

    /// Pairs whose bracket has a component of the wrong weight.
    pub fn grading_violations(&self, bound: usize) -> Vec<(usize, usize)> {
        let idx = self.scan_indices(bound + 1);
        let mut bad = Vec::new();
        for &i in &idx {
            for &j in &idx {
                if !self.is_finite() && i + j > bound {
                    continue;
                }
                let w = self.weight(i) + self.weight(j);
                if self.bracket_basis(i, j).keys().any(|&k| self.weight(k) != w) {
                    bad.push((i, j));
                }
            }
        }
        bad
    }
}

/// A finitely supported functional in the graded dual, over the dual basis.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoadjointVector(#[serde(with = "sparse_q")] pub SparseVec);

impl CoadjointVector {
    pub fn dual_basis(m: usize) -> Self {
        CoadjointVector(single(m, Q::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, x: &SparseVec) -> Q {
        x.iter()
            .filter_map(|(k, a)| self.0.get(k).map(|b| a * b))
            .fold(Q::zero(), |acc, t| acc + t)
    }
}

/// `(g . γ)(h) = γ([h, g])`.
pub fn coadjoint_action(alg: &Algebra, g: &SparseVec, gamma: &CoadjointVector) -> CoadjointVector {
    let mut out = SparseVec::new();
    for (&k, a) in g {
        for (&m, b) in &gamma.0 {
            let candidates = if alg.is_finite() {
                alg.scan_indices(0)
            } else {
                alg.indices_of_weight(alg.weight(m) - alg.weight(k))
            };
            for h in candidates {
                if let Some(c) = alg.bracket_basis(h, k).get(&m) {
                    add_entry(&mut out, h, &(a * b * c));
                }
            }
        }
    }
    CoadjointVector(out)
}

/// An element of the 1-jet model of the current algebra: `(φ(0), φ'(0))`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct JetElement {
    pub value: SparseVec,
    pub velocity: SparseVec,
}

impl JetElement {
    pub fn new(value: SparseVec, velocity: SparseVec) -> Self {
        Self { value, velocity }
    }

    pub fn constant(value: SparseVec) -> Self {
        Self::new(value, SparseVec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_empty() && self.velocity.is_empty()
    }

    /// The jet as a vector over the interleaved basis of the jet algebra.
    pub fn to_jet_vector(&self) -> SparseVec {
        let mut v = SparseVec::new();
        for (&k, x) in &self.value {
            v.insert(2 * k, x.clone());
        }
        for (&k, x) in &self.velocity {
            v.insert(2 * k + 1, x.clone());
        }
        v
    }
}

/// `[(x, y), (x', y')] = ([x, x'], [x, y'] + [y, x'])`.
pub fn jet_bracket(alg: &Algebra, a: &JetElement, b: &JetElement) -> Result<JetElement> {
    let value = alg.bracket(&a.value, &b.value)?;
    let mut velocity = alg.bracket(&a.value, &b.velocity)?;
    add_scaled(&mut velocity, &alg.bracket(&a.velocity, &b.value)?, &Q::one());
    Ok(JetElement { value, velocity })
}

/// `<a, b> = [a, const(b'(0))]`; a Leibniz bracket that is not antisymmetric.
pub fn current_leibniz_bracket(alg: &Algebra, a: &JetElement, b: &JetElement) -> Result<JetElement> {
    jet_bracket(alg, a, &JetElement::constant(b.velocity.clone()))
}

pub(crate) mod sparse_q {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &SparseVec, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<String, String> = v.iter().map(|(k, x)| (k.to_string(), format_q(x))).collect();
        m.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<SparseVec, D::Error> {
        let m = BTreeMap::<String, String>::deserialize(d)?;
        let mut v = SparseVec::new();
        for (k, x) in m {
            let k: usize = k.parse().map_err(serde::de::Error::custom)?;
            let x = parse_q(&x).map_err(serde::de::Error::custom)?;
            add_entry(&mut v, k, &x);
        }
        Ok(v)
    }
}
