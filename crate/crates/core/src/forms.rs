//! A free graded-commutative differential algebra on the one-form tower
//! `ω_k`, its time derivatives `ω'_k`, and `df`, `dg`, with coefficients in the
//! commuting scalar symbols `f^{±1}`, `g` and `log|f|`.
//!
//! `dω_k = Σ_{i=0}^{⌊k/2⌋} (k-2i+1)/(k+1) C(k+1, i) ω_i ∧ ω_{k+1-i}`, and `dω'_k`
//! is its formal time derivative.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::cochain::sort_with_sign;
use crate::error::{Error, Result};
use crate::liealg::binomial;
use crate::rational::{format_q, parse_q, qr, Q};

/// A degree-one generator. The derived order is the canonical wedge order:
/// all `ω'_k`, then all `ω_k`, then `df`, `dg`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    OmegaDot(u32),
    Omega(u32),
    Df,
    Dg,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::OmegaDot(k) => write!(f, "w{k}'"),
            Generator::Omega(k) => write!(f, "w{k}"),
            Generator::Df => f.write_str("df"),
            Generator::Dg => f.write_str("dg"),
        }
    }
}

/// The scalar monomial `f^f · g^g · log|f|^log_f`; a negative `f` exponent is a power of `1/f`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    pub f: i32,
    pub g: u32,
    pub log_f: u32,
}

impl std::ops::Mul for Scalar {
    type Output = Scalar;

    fn mul(self, other: Scalar) -> Scalar {
        Scalar {
            f: self.f + other.f,
            g: self.g + other.g,
            log_f: self.log_f + other.log_f,
        }
    }
}

impl Scalar {
    pub const ONE: Scalar = Scalar { f: 0, g: 0, log_f: 0 };

    fn is_one(self) -> bool {
        self == Scalar::ONE
    }

    fn factors(self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let fs = if self.f >= 0 { "f" } else { "1/f" };
        out.extend(std::iter::repeat_n(fs, self.f.unsigned_abs() as usize));
        out.extend(std::iter::repeat_n("g", self.g as usize));
        out.extend(std::iter::repeat_n("log|f|", self.log_f as usize));
        out
    }
}

/// `coeff · scalar · wedge[0] ∧ wedge[1] ∧ ...`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Q,
    pub scalar: Scalar,
    pub wedge: Vec<Generator>,
}

/// A finite sum of terms, not necessarily in normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormExpr {
    pub terms: Vec<Term>,
}

impl FormExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(coeff: Q, scalar: Scalar, wedge: Vec<Generator>) -> Self {
        Self {
            terms: vec![Term { coeff, scalar, wedge }],
        }
    }

    pub fn constant(c: Q) -> Self {
        Self::term(c, Scalar::ONE, Vec::new())
    }

    pub fn scalar(s: Scalar) -> Self {
        Self::term(Q::one(), s, Vec::new())
    }

    pub fn gen(g: Generator) -> Self {
        Self::term(Q::one(), Scalar::ONE, vec![g])
    }

    pub fn omega(k: u32) -> Self {
        Self::gen(Generator::Omega(k))
    }

    pub fn omega_dot(k: u32) -> Self {
        Self::gen(Generator::OmegaDot(k))
    }

    pub fn f() -> Self {
        Self::scalar(Scalar { f: 1, ..Scalar::ONE })
    }

    pub fn f_inv() -> Self {
        Self::scalar(Scalar { f: -1, ..Scalar::ONE })
    }

    pub fn g() -> Self {
        Self::scalar(Scalar { g: 1, ..Scalar::ONE })
    }

    pub fn log_f() -> Self {
        Self::scalar(Scalar { log_f: 1, ..Scalar::ONE })
    }

    /// `ω'_{i_1} ∧ ω_{i_2} ∧ ...` style products of generators.
    pub fn wedge_of(gens: &[Generator]) -> Self {
        Self::term(Q::one(), Scalar::ONE, gens.to_vec())
    }

    pub fn add(&self, other: &FormExpr) -> FormExpr {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        FormExpr { terms }
    }

    pub fn neg(&self) -> FormExpr {
        self.scale(&-Q::one())
    }

    pub fn sub(&self, other: &FormExpr) -> FormExpr {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Q) -> FormExpr {
        FormExpr {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    ..t.clone()
                })
                .collect(),
        }
    }

    /// The product in the algebra: scalars commute, generators are concatenated.
    pub fn wedge(&self, other: &FormExpr) -> FormExpr {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let mut wedge = a.wedge.clone();
                wedge.extend(&b.wedge);
                terms.push(Term {
                    coeff: &a.coeff * &b.coeff,
                    scalar: a.scalar * b.scalar,
                    wedge,
                });
            }
        }
        FormExpr { terms }
    }

    /// Canonical form: sorted wedges with sign, collected coefficients, no zeros.
    pub fn normal_form(&self) -> FormExpr {
        let mut acc: BTreeMap<(Vec<Generator>, Scalar), Q> = BTreeMap::new();
        for t in &self.terms {
            if t.coeff.is_zero() {
                continue;
            }
            let mut w = t.wedge.clone();
            let Some(odd) = sort_generators(&mut w) else {
                continue;
            };
            let c = if odd { -t.coeff.clone() } else { t.coeff.clone() };
            *acc.entry((w, t.scalar)).or_insert_with(Q::zero) += c;
        }
        FormExpr {
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((wedge, scalar), coeff)| Term { coeff, scalar, wedge })
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.normal_form().terms.is_empty()
    }

    /// Equality in the algebra.
    pub fn equivalent(&self, other: &FormExpr) -> bool {
        self.sub(other).is_zero()
    }

    /// The form degree, if all nonzero terms share one.
    pub fn degree(&self) -> Option<usize> {
        let nf = self.normal_form();
        let mut degs = nf.terms.iter().map(|t| t.wedge.len());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// The exterior derivative, a degree +1 derivation.
    pub fn differential(&self) -> FormExpr {
        let mut out = FormExpr::zero();
        for t in &self.terms {
            let body = FormExpr::term(Q::one(), Scalar::ONE, t.wedge.clone());
            let ds = d_scalar(t.scalar).scale(&t.coeff);
            out = out.add(&ds.wedge(&body));
            for (i, g) in t.wedge.iter().enumerate() {
                let dg = d_generator(*g);
                if dg.terms.is_empty() {
                    continue;
                }
                let sign = if i % 2 == 0 { t.coeff.clone() } else { -t.coeff.clone() };
                let left = FormExpr::term(sign, t.scalar, t.wedge[..i].to_vec());
                let right = FormExpr::wedge_of(&t.wedge[i + 1..]);
                out = out.add(&left.wedge(&dg).wedge(&right));
            }
        }
        out
    }

    /// The formal time derivative: `ω_k ↦ ω'_k`, scalars and `df`, `dg` are constant.
    pub fn time_derivative(&self) -> Result<FormExpr> {
        let mut out = FormExpr::zero();
        for t in &self.terms {
            for (i, g) in t.wedge.iter().enumerate() {
                let dot = match g {
                    Generator::Omega(k) => Generator::OmegaDot(*k),
                    Generator::OmegaDot(k) => {
                        return Err(Error::Definition(format!("second time derivative of w{k}' is not modeled")))
                    }
                    Generator::Df | Generator::Dg => continue,
                };
                let mut wedge = t.wedge.clone();
                wedge[i] = dot;
                out.terms.push(Term {
                    coeff: t.coeff.clone(),
                    scalar: t.scalar,
                    wedge,
                });
            }
        }
        Ok(out)
    }

    /// Substitutes `ω'_k = 0` for all `k` (a constant family).
    pub fn drop_velocities(&self) -> FormExpr {
        FormExpr {
            terms: self
                .terms
                .iter()
                .filter(|t| !t.wedge.iter().any(|g| matches!(g, Generator::OmegaDot(_))))
                .cloned()
                .collect(),
        }
    }

    /// Parses the text syntax, e.g. `w1'^w0^w1^w2`, `d(w2)`, `f*w0 - 1/2*g*g*w0'^d(w0)`.
    pub fn parse(text: &str) -> Result<FormExpr> {
        let mut p = Parser { s: text.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(e)
    }
}

fn sort_generators(w: &mut [Generator]) -> Option<bool> {
    let mut keys: Vec<usize> = Vec::with_capacity(w.len());
    let mut order: Vec<Generator> = w.to_vec();
    order.sort();
    order.dedup();
    for g in w.iter() {
        keys.push(order.binary_search(g).expect("present"));
    }
    let odd = sort_with_sign(&mut keys)?;
    w.sort();
    Some(odd)
}

fn d_scalar(s: Scalar) -> FormExpr {
    let mut out = FormExpr::zero();
    if s.f != 0 {
        out.terms.push(Term {
            coeff: Q::from_integer(s.f.into()),
            scalar: Scalar { f: s.f - 1, ..s },
            wedge: vec![Generator::Df],
        });
    }
    if s.g != 0 {
        out.terms.push(Term {
            coeff: Q::from_integer(s.g.into()),
            scalar: Scalar { g: s.g - 1, ..s },
            wedge: vec![Generator::Dg],
        });
    }
    if s.log_f != 0 {
        out.terms.push(Term {
            coeff: Q::from_integer(s.log_f.into()),
            scalar: Scalar {
                f: s.f - 1,
                log_f: s.log_f - 1,
                ..s
            },
            wedge: vec![Generator::Df],
        });
    }
    out
}

/// The coefficients of `dω_k` as `(i, k + 1 - i, c)`.
pub fn tower_coefficients(k: u32) -> Vec<(u32, u32, Q)> {
    (0..=k / 2)
        .map(|i| {
            let c = Q::new((k - 2 * i + 1).into(), (k + 1).into()) * Q::from_integer(binomial((k + 1) as usize, i as usize));
            (i, k + 1 - i, c)
        })
        .collect()
}

fn d_generator(g: Generator) -> FormExpr {
    use Generator::*;
    let mut out = FormExpr::zero();
    match g {
        Omega(k) => {
            for (i, j, c) in tower_coefficients(k) {
                out.terms.push(Term {
                    coeff: c,
                    scalar: Scalar::ONE,
                    wedge: vec![Omega(i), Omega(j)],
                });
            }
        }
        OmegaDot(k) => {
            for (i, j, c) in tower_coefficients(k) {
                out.terms.push(Term {
                    coeff: c.clone(),
                    scalar: Scalar::ONE,
                    wedge: vec![OmegaDot(i), Omega(j)],
                });
                out.terms.push(Term {
                    coeff: c,
                    scalar: Scalar::ONE,
                    wedge: vec![Omega(i), OmegaDot(j)],
                });
            }
        }
        Df | Dg => {}
    }
    out
}

impl fmt::Display for FormExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nf = self.normal_form();
        if nf.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, t) in nf.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = t.coeff.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || (t.scalar.is_one() && t.wedge.is_empty()) {
                factors.push(format_q(&abs));
            }
            factors.extend(t.scalar.factors().into_iter().map(String::from));
            if !t.wedge.is_empty() {
                factors.push(t.wedge.iter().map(ToString::to_string).collect::<Vec<_>>().join("^"));
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for FormExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<FormExpr> {
        let mut acc = if self.eat("-") { self.product()?.neg() } else { self.product()? };
        loop {
            if self.eat("+") {
                acc = acc.add(&self.product()?);
            } else if self.eat("-") {
                acc = acc.sub(&self.product()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<FormExpr> {
        let mut acc = self.factor()?;
        while self.eat("*") || self.eat("^") {
            acc = acc.wedge(&self.factor()?);
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn factor(&mut self) -> Result<FormExpr> {
        if self.eat("(") {
            let e = self.expr()?;
            if !self.eat(")") {
                return Err(self.err("expected ')'"));
            }
            return Ok(e);
        }
        if self.eat("d(") {
            let e = self.expr()?;
            if !self.eat(")") {
                return Err(self.err("expected ')'"));
            }
            return Ok(e.differential());
        }
        if self.eat("df") {
            return Ok(FormExpr::gen(Generator::Df));
        }
        if self.eat("dg") {
            return Ok(FormExpr::gen(Generator::Dg));
        }
        if self.eat("log|f|") {
            return Ok(FormExpr::log_f());
        }
        if let Some(n) = self.integer() {
            if self.eat("/") {
                if self.eat("f") {
                    return Ok(FormExpr::f_inv().scale(&parse_q(&n)?));
                }
                let d = self.integer().ok_or_else(|| self.err("expected a denominator or 'f'"))?;
                return Ok(FormExpr::constant(parse_q(&format!("{n}/{d}"))?));
            }
            return Ok(FormExpr::constant(parse_q(&n)?));
        }
        if self.eat("w") {
            let k = self.integer().ok_or_else(|| self.err("expected an index after 'w'"))?;
            let k: u32 = k.parse().map_err(|_| self.err("index out of range"))?;
            return Ok(if self.eat("'") { FormExpr::omega_dot(k) } else { FormExpr::omega(k) });
        }
        if self.eat("f") {
            return Ok(FormExpr::f());
        }
        if self.eat("g") {
            return Ok(FormExpr::g());
        }
        Err(match self.peek() {
            None => self.err("unexpected end of input"),
            Some(c) => self.err(&format!("unexpected character '{}'", c as char)),
        })
    }
}

/// One checked identity `lhs = rhs`, with the normal form of `lhs - rhs` as witness.
#[derive(Clone, Debug, Serialize)]
pub struct Identity {
    pub name: String,
    pub lhs: FormExpr,
    pub rhs: FormExpr,
    pub difference: FormExpr,
    pub holds: bool,
}

impl Identity {
    pub fn check(name: &str, lhs: FormExpr, rhs: FormExpr) -> Identity {
        let difference = lhs.sub(&rhs).normal_form();
        Identity {
            name: name.to_string(),
            holds: difference.terms.is_empty(),
            lhs: lhs.normal_form(),
            rhs: rhs.normal_form(),
            difference,
        }
    }
}

/// A list of identities verified as exact algebra equalities.
#[derive(Clone, Debug, Serialize)]
pub struct Proof {
    pub statement: String,
    pub identities: Vec<Identity>,
    pub holds: bool,
}

impl Proof {
    fn new(statement: &str, identities: Vec<Identity>) -> Proof {
        Proof {
            statement: statement.to_string(),
            holds: identities.iter().all(|i| i.holds),
            identities,
        }
    }
}

fn w(k: u32) -> FormExpr {
    FormExpr::omega(k)
}

fn wd(k: u32) -> FormExpr {
    FormExpr::omega_dot(k)
}

/// `c(ζ) = ω'_1 ∧ ω_0 ∧ ω_1 ∧ ω_2`.
pub fn c_zeta() -> FormExpr {
    wd(1).wedge(&w(0)).wedge(&w(1)).wedge(&w(2))
}

/// `c(ζ) = -ω'_1 ∧ ω_1 ∧ dω_1`, and the same rewriting with `ω'_0` in front.
pub fn c_zeta_rewrite_check() -> Proof {
    let rhs = wd(1).wedge(&w(1)).wedge(&w(1).differential()).neg();
    let lhs0 = wd(0).wedge(&w(0)).wedge(&w(1)).wedge(&w(2));
    let rhs0 = wd(0).wedge(&w(1)).wedge(&w(1).differential()).neg();
    Proof::new(
        "c(zeta) = -w1'^w1^d(w1)",
        vec![
            Identity::check("c(zeta) = -w1'^w1^d(w1)", c_zeta(), rhs),
            Identity::check("w0'^w0^w1^w2 = -w0'^w1^d(w1)", lhs0, rhs0),
        ],
    )
}

/// Replacing `ω_0` by `f ω_0` changes `ω'_1 ∧ ω_1 ∧ dω_1` by an exact form.
pub fn verify_scale_invariance() -> Result<Proof> {
    let df_over_f = FormExpr::f_inv().wedge(&FormExpr::gen(Generator::Df));
    let u0 = FormExpr::f().wedge(&w(0));
    let u1 = df_over_f.neg().add(&w(1));
    let u1_dot = u1.time_derivative()?;
    let gv_term = |a: &FormExpr, a_dot: &FormExpr| a_dot.wedge(a).wedge(&a.differential());
    let lhs = gv_term(&u1, &u1_dot);
    let base = gv_term(&w(1), &wd(1));
    let correction = FormExpr::log_f().wedge(&wd(1)).wedge(&w(1).differential()).differential();
    Ok(Proof::new(
        "u1'^u1^d(u1) = w1'^w1^d(w1) + d(log|f|*w1'^d(w1)) for u0 = f*w0, u1 = -df/f + w1",
        vec![
            Identity::check("d(u0) = u0^(-df/f + w1)", u0.differential(), u0.wedge(&u1)),
            Identity::check(
                "u1'^u1^d(u1) = w1'^w1^d(w1) + df/f^w1'^d(w1)",
                lhs.clone(),
                base.add(&df_over_f.wedge(&wd(1)).wedge(&w(1).differential())),
            ),
            Identity::check(
                "d(w1') = w0'^w2 + w0^w2'",
                wd(1).differential(),
                wd(0).wedge(&w(2)).add(&w(0).wedge(&wd(2))),
            ),
            Identity::check("u1'^u1^d(u1) = w1'^w1^d(w1) + d(log|f|*w1'^d(w1))", lhs, base.add(&correction)),
        ],
    ))
}

/// Replacing `ω_1` by `ω_1 + g ω_0` changes `ω'_1 ∧ ω_1 ∧ dω_1` by `d(A)`.
pub fn verify_shift_invariance() -> Result<Proof> {
    let g = FormExpr::g();
    let dg = FormExpr::gen(Generator::Dg);
    let u = w(1).add(&g.wedge(&w(0)));
    let u_dot = u.time_derivative()?;
    let lhs = u_dot.wedge(&u).wedge(&u.differential());
    let base = wd(1).wedge(&w(1)).wedge(&w(1).differential());
    let expansion = base
        .add(&g.wedge(&wd(0)).wedge(&w(1)).wedge(&w(1).differential()))
        .add(&wd(1).wedge(&w(1)).wedge(&dg).wedge(&w(0)))
        .add(&g.wedge(&wd(0)).wedge(&w(1)).wedge(&dg).wedge(&w(0)));
    let a = g
        .wedge(&wd(0))
        .wedge(&w(1).differential())
        .sub(&dg.wedge(&wd(0)).wedge(&w(1)))
        .sub(&g.wedge(&g).wedge(&wd(0)).wedge(&w(0).differential()).scale(&qr(1, 2)));
    Ok(Proof::new(
        "u'^u^d(u) = w1'^w1^d(w1) + d(A) for u = w1 + g*w0",
        vec![
            Identity::check("u'^u^d(u) = four-term expansion", lhs.clone(), expansion),
            Identity::check("u'^u^d(u) = w1'^w1^d(w1) + d(A)", lhs, base.add(&a.differential())),
        ],
    ))
}

/// Results of `d ∘ d = 0` on generators and random products.
#[derive(Clone, Debug, Serialize)]
pub struct SquareZeroReport {
    pub seed: u64,
    pub max_k: u32,
    pub generators_checked: usize,
    pub products_checked: usize,
    pub failures: Vec<FormExpr>,
    pub holds: bool,
}

fn random_factor<R: Rng>(rng: &mut R, max_k: u32) -> FormExpr {
    let c = Q::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into());
    let scalar = Scalar {
        f: rng.gen_range(-2..=2),
        g: rng.gen_range(0..=2),
        log_f: rng.gen_range(0..=1),
    };
    let gen = match rng.gen_range(0..8) {
        0 => Some(Generator::Df),
        1 => Some(Generator::Dg),
        2 => None,
        3..=5 => Some(Generator::Omega(rng.gen_range(0..=max_k))),
        _ => Some(Generator::OmegaDot(rng.gen_range(0..=max_k))),
    };
    FormExpr::term(c, scalar, gen.into_iter().collect())
}

/// A random sum of products of up to four random factors.
pub fn random_expr<R: Rng>(rng: &mut R, max_k: u32) -> FormExpr {
    let mut out = FormExpr::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut p = random_factor(rng, max_k);
        for _ in 1..rng.gen_range(1..=4) {
            p = p.wedge(&random_factor(rng, max_k));
        }
        out = out.add(&p);
    }
    out
}

/// `d ∘ d = 0` on every generator and scalar symbol, and on `products` seeded random expressions.
pub fn square_zero_check(max_k: u32, products: usize, seed: u64) -> SquareZeroReport {
    use rand::SeedableRng;
    let mut samples: Vec<FormExpr> = Vec::new();
    for k in 0..=max_k {
        samples.push(w(k));
        samples.push(wd(k));
    }
    samples.extend([
        FormExpr::gen(Generator::Df),
        FormExpr::gen(Generator::Dg),
        FormExpr::f(),
        FormExpr::f_inv(),
        FormExpr::g(),
        FormExpr::log_f(),
    ]);
    let generators_checked = samples.len();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..products {
        samples.push(random_expr(&mut rng, max_k));
    }
    let failures: Vec<FormExpr> = samples.into_iter().filter(|e| !e.differential().differential().is_zero()).collect();
    SquareZeroReport {
        seed,
        max_k,
        generators_checked,
        products_checked: products,
        holds: failures.is_empty(),
        failures,
    }
}

/// Everything the forms suite verifies, for the CLI and the acceptance run.
#[derive(Clone, Debug, Serialize)]
pub struct FormsReport {
    pub square_zero: SquareZeroReport,
    pub c_zeta: FormExpr,
    pub d_c_zeta: FormExpr,
    pub c_zeta_rewrite: Proof,
    pub scale_invariance: Proof,
    pub shift_invariance: Proof,
    pub pass: bool,
}

pub fn forms_report(max_k: u32, products: usize, seed: u64) -> Result<FormsReport> {
    let square_zero = square_zero_check(max_k, products, seed);
    let c_zeta_rewrite = c_zeta_rewrite_check();
    let scale_invariance = verify_scale_invariance()?;
    let shift_invariance = verify_shift_invariance()?;
    let pass = square_zero.holds && c_zeta_rewrite.holds && scale_invariance.holds && shift_invariance.holds;
    Ok(FormsReport {
        square_zero,
        c_zeta: c_zeta(),
        d_c_zeta: c_zeta().differential().normal_form(),
        c_zeta_rewrite,
        scale_invariance,
        shift_invariance,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn anticommutativity() {
        assert!(w(0).wedge(&w(1)).add(&w(1).wedge(&w(0))).is_zero());
        assert!(w(3).wedge(&w(3)).is_zero());
    }

    #[test]
    fn inverse_cancels() {
        let e = FormExpr::f().wedge(&FormExpr::f_inv()).wedge(&w(0));
        assert_eq!(e.normal_form(), w(0));
    }

    #[test]
    fn tower_low_degrees() {
        assert!(w(0).differential().equivalent(&w(0).wedge(&w(1))));
        assert!(w(1).differential().equivalent(&w(0).wedge(&w(2))));
        assert!(w(2).differential().equivalent(&w(0).wedge(&w(3)).add(&w(1).wedge(&w(2)))));
        let d3 = w(0).wedge(&w(4)).add(&w(1).wedge(&w(3)).scale(&q(2)));
        assert!(w(3).differential().equivalent(&d3));
    }

    #[test]
    fn scalar_rules() {
        let df = FormExpr::gen(Generator::Df);
        let inv2 = FormExpr::f_inv().wedge(&FormExpr::f_inv());
        assert!(FormExpr::log_f().differential().equivalent(&FormExpr::f_inv().wedge(&df)));
        assert!(FormExpr::f_inv().differential().equivalent(&inv2.wedge(&df).neg()));
        assert!(FormExpr::g().differential().equivalent(&FormExpr::gen(Generator::Dg)));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(c_zeta().to_string(), "w1'^w0^w1^w2");
        let e = FormExpr::parse("f*w0 - 1/2*g*g*w0'^d(w0) + 3/f*log|f|*df").unwrap();
        let again = FormExpr::parse(&e.to_string()).unwrap();
        assert!(e.equivalent(&again));
        assert_eq!(FormExpr::parse("d(w2)").unwrap().to_string(), "w0^w3 + w1^w2");
        assert_eq!(FormExpr::zero().to_string(), "0");
        assert_eq!(FormExpr::constant(q(-3)).to_string(), "-3");
        assert!(matches!(FormExpr::parse("w0 +"), Err(Error::Parse { .. })));
        assert!(matches!(FormExpr::parse("w"), Err(Error::Parse { .. })));
    }

    #[test]
    fn time_derivative_rules() {
        let e = FormExpr::parse("g*w0^w1 + df").unwrap();
        let t = e.time_derivative().unwrap();
        assert!(t.equivalent(&FormExpr::parse("g*w0'^w1 + g*w0^w1'").unwrap()));
        assert!(wd(0).time_derivative().is_err());
        // d commutes with the time derivative on the tower
        for k in 0..6 {
            assert!(w(k).differential().time_derivative().unwrap().equivalent(&wd(k).differential()));
        }
    }

    #[test]
    fn identities_hold() {
        assert!(c_zeta_rewrite_check().holds);
        assert!(verify_scale_invariance().unwrap().holds);
        assert!(verify_shift_invariance().unwrap().holds);
    }

    #[test]
    fn degree_of_c_zeta() {
        assert_eq!(c_zeta().degree(), Some(4));
        assert_eq!(FormExpr::zero().degree(), None);
    }
}
