//! Characters: the group ring `ℤ[P]` with coefficients that are either
//! exact Laurent polynomials in `q` or power series truncated at `q^N`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Weight};

/// Dense Laurent polynomial in `q`: `Σ_k coeffs[k] q^{lo+k}`.
/// Normalised so that the first and last coefficients are nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    lo: i64,
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "QPoly{:?}",
            self.terms().map(|(e, c)| (e, c.to_string())).collect::<Vec<_>>()
        )
    }
}

impl QPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn monomial(exp: i64, c: BigInt) -> Self {
        let mut p = Self {
            lo: exp,
            coeffs: vec![c],
        };
        p.normalize();
        p
    }

    pub fn from_coeffs(lo: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { lo, coeffs };
        p.normalize();
        p
    }

    /// `Π_j (1 - q^j)` style helpers build on this: `1 - q^k`.
    pub fn one_minus_q_pow(k: i64) -> Self {
        Self::one() - Self::monomial(k, BigInt::one())
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.lo = 0;
            }
            Some(k) => {
                if k > 0 {
                    self.coeffs.drain(..k);
                    self.lo += k as i64;
                }
                while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                    self.coeffs.pop();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.lo == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lo)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.lo + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let k = exp - self.lo;
        if k < 0 || k >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.lo + k as i64, c))
    }

    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            lo: self.lo + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.lo, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Drops every exponent `≥ n`.
    pub fn truncate(&self, n: u32) -> Self {
        let n = n as i64;
        if self.is_zero() || self.lo >= n {
            return Self::zero();
        }
        let keep = ((n - self.lo) as usize).min(self.coeffs.len());
        Self::from_coeffs(self.lo, self.coeffs[..keep].to_vec())
    }

    /// `q ↦ q⁻¹`.
    pub fn q_invert(&self) -> Self {
        match self.max_exp() {
            None => Self::zero(),
            Some(hi) => Self::from_coeffs(-hi, self.coeffs.iter().rev().cloned().collect()),
        }
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    fn add_into(&mut self, other: &QPoly, sign: bool) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = if sign { other.clone() } else { -other.clone() };
            return;
        }
        let lo = self.lo.min(other.lo);
        let hi = self.max_exp().unwrap().max(other.max_exp().unwrap());
        if lo < self.lo {
            let pad = (self.lo - lo) as usize;
            let mut v = vec![BigInt::zero(); pad];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.lo = lo;
        }
        self.coeffs.resize((hi - lo + 1) as usize, BigInt::zero());
        let off = (other.lo - lo) as usize;
        for (k, c) in other.coeffs.iter().enumerate() {
            if sign {
                self.coeffs[off + k] += c;
            } else {
                self.coeffs[off + k] -= c;
            }
        }
        self.normalize();
    }

    fn mul_ref(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::from_coeffs(self.lo + other.lo, v)
    }

    /// Power-series inverse modulo `q^n`; requires a unit constant term and
    /// no negative exponents.
    pub fn inverse_series(&self, n: u32) -> Result<QPoly> {
        let a0 = self.coeff(0);
        if self.lo < 0 || !(a0.is_one() || (-&a0).is_one()) {
            return Err(Error::AssumptionViolated("series is not invertible over ℤ[[q]]".into()));
        }
        let n = n as usize;
        let mut b: Vec<BigInt> = vec![BigInt::zero(); n];
        for k in 0..n {
            let mut s = if k == 0 { BigInt::one() } else { BigInt::zero() };
            for j in 1..=k {
                s -= self.coeff(j as i64) * &b[k - j];
            }
            b[k] = s * &a0;
        }
        Ok(QPoly::from_coeffs(0, b))
    }
}

impl Add for QPoly {
    type Output = QPoly;
    fn add(mut self, rhs: QPoly) -> QPoly {
        self.add_into(&rhs, true);
        self
    }
}

impl Sub for QPoly {
    type Output = QPoly;
    fn sub(mut self, rhs: QPoly) -> QPoly {
        self.add_into(&rhs, false);
        self
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            lo: self.lo,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        self.mul_ref(rhs)
    }
}

/// A `q`-series: an exact Laurent polynomial, or a series known modulo `q^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    pub order: Option<u32>,
    pub poly: QPoly,
}

impl QSeries {
    pub fn exact(poly: QPoly) -> Self {
        Self { order: None, poly }
    }

    pub fn truncated(poly: QPoly, n: u32) -> Self {
        Self {
            order: Some(n),
            poly: poly.truncate(n),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn first_nonzero_order(&self) -> Option<i64> {
        self.poly.min_exp()
    }

    pub fn to_json(&self) -> Value {
        json!({"N": self.order, "q": qpoly_json(&self.poly)})
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = CharPoly {
            order: self.order,
            terms: if self.poly.is_zero() {
                BTreeMap::new()
            } else {
                BTreeMap::from([(Weight::zero(1), self.poly.clone())])
            },
        };
        write!(f, "{}", c.to_text())
    }
}

fn bigint_json(c: &BigInt) -> Value {
    Value::Number(c.to_string().parse().expect("integer literal is a JSON number"))
}

fn qpoly_json(p: &QPoly) -> Value {
    Value::Array(p.terms().map(|(e, c)| json!([e, bigint_json(c)])).collect())
}

/// `(q)_λ = Π_i Π_{j=1}^{r_i} (1 - q^j)` with `r_i` the coordinates of the
/// dominant representative of `λ`, so that `(q)_{wλ} = (q)_λ`.
pub fn q_factor(rs: &RootSystem, lambda: &Weight) -> QPoly {
    let (dom, _) = rs.to_dominant(lambda);
    let mut p = QPoly::one();
    for &r in dom.coords() {
        for j in 1..=r as i64 {
            p = &p * &QPoly::one_minus_q_pow(j);
        }
    }
    p
}

/// `(q)_λ^{-1}` modulo `q^n`.
pub fn q_factor_inv(rs: &RootSystem, lambda: &Weight, n: u32) -> QSeries {
    let inv = q_factor(rs, lambda)
        .inverse_series(n)
        .expect("(q)_λ has constant term 1");
    QSeries::truncated(inv, n)
}

/// Element of `ℤ[P] ⊗ ℤ[q, q⁻¹]` (exact) or of `ℤ[P] ⊗ ℤ[[q]]/(q^N)`.
#[derive(Clone, PartialEq, Eq)]
pub struct CharPoly {
    order: Option<u32>,
    terms: BTreeMap<Weight, QPoly>,
}

impl fmt::Debug for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharPoly[N={:?}] {}", self.order, self.to_text())
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn join_orders(a: Option<u32>, b: Option<u32>) -> Result<Option<u32>> {
    match (a, b) {
        (None, x) | (x, None) => Ok(x),
        (Some(x), Some(y)) if x == y => Ok(Some(x)),
        _ => Err(Error::TruncationMismatch { left: a, right: b }),
    }
}

impl CharPoly {
    pub fn zero() -> Self {
        Self {
            order: None,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(Weight::zero(n), 0, BigInt::one())
    }

    /// `c · x^μ q^k`.
    pub fn monomial(mu: Weight, k: i64, c: BigInt) -> Self {
        let mut f = Self::zero();
        f.add_term(mu, &QPoly::monomial(k, c));
        f
    }

    pub fn from_terms(order: Option<u32>, terms: impl IntoIterator<Item = (Weight, QPoly)>) -> Self {
        let mut f = Self {
            order,
            terms: BTreeMap::new(),
        };
        for (w, p) in terms {
            f.add_term(w, &p);
        }
        f
    }

    pub fn order(&self) -> Option<u32> {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Weight, QPoly> {
        &self.terms
    }

    pub fn coefficient(&self, mu: &Weight) -> QPoly {
        self.terms.get(mu).cloned().unwrap_or_default()
    }

    /// Adds `x^μ · p`, respecting the truncation order.
    pub fn add_term(&mut self, mu: Weight, p: &QPoly) {
        let p = match self.order {
            Some(n) => p.truncate(n),
            None => p.clone(),
        };
        if p.is_zero() {
            return;
        }
        let entry = self.terms.entry(mu).or_default();
        entry.add_into(&p, true);
        if entry.is_zero() {
            self.terms.remove(&mu);
        }
    }

    /// Reinterprets the character modulo `q^n`.
    pub fn truncate(&self, n: u32) -> Result<Self> {
        if let Some(m) = self.order {
            if m < n {
                return Err(Error::TruncationMismatch {
                    left: Some(m),
                    right: Some(n),
                });
            }
        }
        Ok(Self::from_terms(
            Some(n),
            self.terms.iter().map(|(w, p)| (*w, p.clone())),
        ))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let order = join_orders(self.order, other.order)?;
        let mut out = Self::from_terms(order, self.terms.iter().map(|(w, p)| (*w, p.clone())));
        for (w, p) in &other.terms {
            out.add_term(*w, p);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&BigInt::from(-1)))
    }

    fn min_q(&self) -> Option<i64> {
        self.terms.values().filter_map(|p| p.min_exp()).min()
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let order = join_orders(self.order, other.order)?;
        if order.is_some() && (self.min_q().unwrap_or(0) < 0 || other.min_q().unwrap_or(0) < 0) {
            return Err(Error::AssumptionViolated(
                "truncated products need nonnegative q-exponents".into(),
            ));
        }
        let right: Vec<(&Weight, &QPoly)> = other.terms.iter().collect();
        let partial = |(wa, pa): (&Weight, &QPoly)| {
            let mut acc = Self {
                order,
                terms: BTreeMap::new(),
            };
            for (wb, pb) in &right {
                let a = match order {
                    Some(n) => pa.truncate(n.saturating_sub(pb.lo.max(0) as u32)),
                    None => pa.clone(),
                };
                acc.add_term(*wa + **wb, &(&a * pb));
            }
            acc
        };
        let merge = |mut a: Self, b: Self| {
            for (w, p) in b.terms {
                a.add_term(w, &p);
            }
            a
        };
        let empty = Self {
            order,
            terms: BTreeMap::new(),
        };
        if self.terms.len() * right.len() > 256 {
            let left: Vec<(&Weight, &QPoly)> = self.terms.iter().collect();
            Ok(left.into_par_iter().map(partial).reduce(|| empty.clone(), merge))
        } else {
            Ok(self.terms.iter().map(partial).fold(empty, merge))
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_terms(self.order, self.terms.iter().map(|(w, p)| (*w, p.scale(c))))
    }

    /// Multiplies by `x^μ q^k`.
    pub fn shift(&self, mu: &Weight, k: i64) -> Self {
        Self::from_terms(self.order, self.terms.iter().map(|(w, p)| (*w + *mu, p.shift(k))))
    }

    pub fn mul_qseries(&self, s: &QSeries) -> Result<Self> {
        let f = Self::from_terms(s.order, [(Weight::zero(self.rank_hint()), s.poly.clone())]);
        self.checked_mul(&f)
    }

    fn rank_hint(&self) -> usize {
        self.terms.keys().next().map_or(1, |w| w.rank())
    }

    /// Relabels weights by `w_0`.
    pub fn w0_twist(&self, rs: &RootSystem) -> Self {
        let w0 = rs.longest_element();
        self.map_weights(|w| w0.act(w))
    }

    pub fn map_weights(&self, f: impl Fn(&Weight) -> Weight) -> Self {
        Self::from_terms(self.order, self.terms.iter().map(|(w, p)| (f(w), p.clone())))
    }

    /// `x^μ ↦ x^{-μ}`.
    pub fn x_invert(&self) -> Self {
        self.map_weights(|w| -*w)
    }

    /// `q ↦ q⁻¹`; only meaningful for exact characters.
    pub fn q_invert(&self) -> Result<Self> {
        if !self.is_exact() {
            return Err(Error::NotExact);
        }
        Ok(Self::from_terms(
            None,
            self.terms.iter().map(|(w, p)| (*w, p.q_invert())),
        ))
    }

    pub fn constant_term_x(&self) -> QSeries {
        let n = self.rank_hint();
        QSeries {
            order: self.order,
            poly: self.coefficient(&Weight::zero(n)),
        }
    }

    /// Value at `x = q = 1`.
    pub fn dimension(&self) -> BigInt {
        self.terms.values().map(|p| p.eval_at_one()).sum()
    }

    /// Term with the lowest `q`-exponent, ties broken by the smallest weight.
    pub fn min_term(&self) -> Option<(Weight, i64, BigInt)> {
        self.terms
            .iter()
            .filter_map(|(w, p)| p.min_exp().map(|e| (e, *w, p.coeff(e))))
            .min_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)))
            .map(|(e, w, c)| (w, e, c))
    }

    /// True when every coefficient is `≥` the matching one of `other`.
    pub fn dominates(&self, other: &Self) -> bool {
        let diff = self.checked_sub(other);
        diff.map(|d| d.terms.values().all(|p| p.terms().all(|(_, c)| !c.is_negative())))
            .unwrap_or(false)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "N": self.order,
            "terms": self.terms.iter().map(|(w, p)| json!({
                "weight": w.coords(),
                "q": qpoly_json(p),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("character JSON: {what}"));
        let order = match v.get("N") {
            None | Some(Value::Null) => None,
            Some(x) => Some(x.as_u64().ok_or_else(|| bad("N must be a nonnegative integer"))? as u32),
        };
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing terms"))?;
        let mut out = Self {
            order,
            terms: BTreeMap::new(),
        };
        for t in terms {
            let w: Vec<i32> = serde_json::from_value(t.get("weight").cloned().ok_or_else(|| bad("missing weight"))?)
                .map_err(|e| bad(&e.to_string()))?;
            let q = t.get("q").and_then(Value::as_array).ok_or_else(|| bad("missing q"))?;
            for pair in q {
                let pair = pair
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| bad("q entries are pairs"))?;
                let e = pair[0].as_i64().ok_or_else(|| bad("exponent"))?;
                let c: BigInt = match &pair[1] {
                    Value::Number(n) => n.to_string().parse().map_err(|_| bad("coefficient"))?,
                    _ => return Err(bad("coefficient")),
                };
                out.add_term(Weight::new(&w), &QPoly::monomial(e, c));
            }
        }
        Ok(out)
    }

    fn sorted_terms(&self) -> Vec<(i64, Weight, BigInt)> {
        let mut v: Vec<(i64, Weight, BigInt)> = self
            .terms
            .iter()
            .flat_map(|(w, p)| p.terms().map(move |(e, c)| (e, *w, c.clone())))
            .collect();
        v.sort_by_key(|(e, w, _)| (*e, w.coords().iter().map(|c| c.unsigned_abs()).sum::<u32>(), *w));
        v
    }

    fn render(&self, latex: bool) -> String {
        let terms = self.sorted_terms();
        let mut s = String::new();
        if terms.is_empty() {
            s.push('0');
        }
        for (k, (e, w, c)) in terms.iter().enumerate() {
            let mut mono = Vec::new();
            match *e {
                0 => {}
                1 => mono.push("q".to_string()),
                e => mono.push(format!("q^{{{e}}}")),
            }
            for (i, &m) in w.coords().iter().enumerate() {
                if m == 0 {
                    continue;
                }
                let var = match (w.rank(), latex) {
                    (1, _) => "x".to_string(),
                    (_, true) => format!("x_{{{}}}", i + 1),
                    (_, false) => format!("x{}", i + 1),
                };
                if m == 1 {
                    mono.push(var);
                } else {
                    mono.push(format!("{var}^{{{m}}}"));
                }
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                let _ = write!(s, "{abs}");
            } else {
                if !abs.is_one() {
                    let _ = write!(s, "{abs} ");
                }
                s.push_str(&mono.join(" "));
            }
        }
        if let Some(n) = self.order {
            if latex {
                let _ = write!(s, " + O(q^{{{n}}})");
            } else {
                let _ = write!(s, " + O(q^{n})");
            }
        }
        s
    }

    /// Terms ordered by `q`-degree, then total absolute degree in `x`, then
    /// weight, e.g. `1 + x^{2} + q + q x^{-2}`.
    pub fn to_text(&self) -> String {
        self.render(false)
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }
}

impl Add for &CharPoly {
    type Output = CharPoly;
    fn add(self, rhs: &CharPoly) -> CharPoly {
        self.checked_add(rhs).expect("compatible truncation orders")
    }
}

impl Sub for &CharPoly {
    type Output = CharPoly;
    fn sub(self, rhs: &CharPoly) -> CharPoly {
        self.checked_sub(rhs).expect("compatible truncation orders")
    }
}

impl Mul for &CharPoly {
    type Output = CharPoly;
    fn mul(self, rhs: &CharPoly) -> CharPoly {
        self.checked_mul(rhs).expect("compatible truncation orders")
    }
}

fn require_ade(rs: &RootSystem) -> Result<()> {
    if !rs.cartan_type().is_simply_laced() {
        return Err(Error::UnsupportedType(rs.cartan_type().to_string()));
    }
    Ok(())
}

/// Multiplies by `1 - x^μ q^k` in place (modulo the truncation order).
fn mul_binomial(f: &CharPoly, mu: &Weight, k: i64) -> CharPoly {
    let g = f.shift(mu, k);
    f.checked_sub(&g).expect("same order")
}

/// The `t = 0` Cherednik kernel modulo `q^n`:
/// `Π_{α>0}(1 - x^α) · Π_{k=1}^{n-1} [(1 - q^k)^r Π_{α∈Δ}(1 - x^α q^k)]`.
pub fn cherednik_kernel_t0(rs: &RootSystem, n: u32) -> Result<CharPoly> {
    require_ade(rs)?;
    if n == 0 {
        return Err(Error::OutOfRange { index: 0, max: 0 });
    }
    let r = rs.rank();
    let zero = Weight::zero(r);
    let mut f = CharPoly::one(r).truncate(n)?;
    for a in 0..rs.num_positive_roots() {
        f = mul_binomial(&f, &rs.root_weight(a), 0);
    }
    for k in 1..n as i64 {
        for _ in 0..r {
            f = mul_binomial(&f, &zero, k);
        }
        for a in 0..rs.num_roots() {
            f = mul_binomial(&f, &rs.root_weight(a), k);
        }
    }
    Ok(f)
}

/// `(f, g)_C`: the `x⁰`-coefficient of `f · g · κ(x, q, 0)` modulo `q^n`.
pub fn pair_c(f: &CharPoly, g: &CharPoly, rs: &RootSystem, n: u32) -> Result<QSeries> {
    let kernel = cherednik_kernel_t0(rs, n)?;
    pair_c_with_kernel(f, g, &kernel)
}

/// As [`pair_c`] with a precomputed kernel; only the `x⁰`-coefficient of the
/// triple product is formed.
pub fn pair_c_with_kernel(f: &CharPoly, g: &CharPoly, kernel: &CharPoly) -> Result<QSeries> {
    let n = kernel.order().ok_or(Error::NotExact)?;
    let fg = f.checked_mul(g)?.truncate(n)?;
    let mut acc = QPoly::zero();
    for (w, p) in fg.terms() {
        if let Some(k) = kernel.terms().get(&-*w) {
            acc = acc + (p * k).truncate(n);
        }
    }
    Ok(QSeries::truncated(acc, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(k: i32) -> Weight {
        Weight::new(&[k])
    }

    fn mono(w: i32, e: i64, c: i64) -> CharPoly {
        CharPoly::monomial(x(w), e, BigInt::from(c))
    }

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    #[test]
    fn product_example() {
        let a = &mono(1, 0, 1) + &mono(-1, 1, 1);
        let b = &mono(-1, 0, 1) + &mono(1, 0, 1);
        let p = &a * &b;
        assert_eq!(p.to_text(), "1 + x^{2} + q + q x^{-2}");
    }

    #[test]
    fn truncation_drops_high_powers() {
        let q = mono(0, 1, 1).truncate(2).unwrap();
        assert!((&q * &q).is_zero());
        let err = mono(0, 1, 1)
            .truncate(2)
            .unwrap()
            .checked_add(&mono(0, 0, 1).truncate(3).unwrap());
        assert!(matches!(err, Err(Error::TruncationMismatch { .. })));
    }

    #[test]
    fn text_and_json() {
        let f = &mono(-1, 0, 1) + &mono(1, 1, 1);
        assert_eq!(f.to_text(), "x^{-1} + q x");
        assert_eq!(CharPoly::from_json(&f.to_json()).unwrap(), f);
        assert_eq!(CharPoly::one(1).to_text(), "1");
        assert_eq!(CharPoly::zero().to_text(), "0");
        let g = CharPoly::monomial(Weight::new(&[1, -2]), 2, BigInt::from(-3));
        assert_eq!(g.to_text(), "-3 q^{2} x1 x2^{-2}");
        assert_eq!(g.to_latex(), "-3 q^{2} x_{1} x_{2}^{-2}");
    }

    #[test]
    fn q_factors() {
        let a1 = rs("A1");
        assert!(q_factor(&a1, &x(0)).is_one());
        assert_eq!(q_factor(&a1, &x(1)), QPoly::one_minus_q_pow(1));
        let p = q_factor(&a1, &x(2));
        let expect: Vec<(i64, i64)> = vec![(0, 1), (1, -1), (2, -1), (3, 1)];
        let got: Vec<(i64, i64)> = p.terms().map(|(e, c)| (e, i64::try_from(c).unwrap())).collect();
        assert_eq!(got, expect);
        assert_eq!(q_factor(&a1, &x(-2)), p);
        let inv = q_factor_inv(&a1, &x(1), 3);
        assert_eq!(inv.poly, QPoly::from_coeffs(0, vec![1.into(), 1.into(), 1.into()]));
    }

    #[test]
    fn kernel_a1() {
        let a1 = rs("A1");
        let k1 = cherednik_kernel_t0(&a1, 1).unwrap();
        assert_eq!(k1.to_text(), "1 - x^{2} + O(q^1)");
        let k2 = cherednik_kernel_t0(&a1, 2).unwrap();
        // (1-x²)(1-q)(1-x²q)(1-x⁻²q): the -q from (1-q) cancels against
        // (-x²)(-x⁻²q), so the x⁰ part is 1 modulo q².
        assert!(k2.constant_term_x().poly.is_one());
        assert_eq!(k2.coefficient(&x(-2)).to_owned(), QPoly::monomial(1, BigInt::from(-1)));
        assert_eq!(k2.coefficient(&x(4)), QPoly::monomial(1, BigInt::one()));
        assert!(matches!(
            cherednik_kernel_t0(&rs("C2"), 2),
            Err(Error::UnsupportedType(_))
        ));
    }

    #[test]
    fn inversions() {
        let f = &mono(1, 0, 1) + &mono(-1, 1, 1);
        let a1 = rs("A1");
        assert_eq!(f.w0_twist(&a1).to_text(), "x^{-1} + q x");
        assert_eq!(f.x_invert().x_invert(), f);
        assert_eq!(f.q_invert().unwrap().q_invert().unwrap(), f);
        assert!(matches!(f.truncate(3).unwrap().q_invert(), Err(Error::NotExact)));
    }
}
