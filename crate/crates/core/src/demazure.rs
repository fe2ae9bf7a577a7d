//! The `t = 0` side: level-one affine Demazure characters, `E_λ(x, q, 0)`
//! and Weyl-module characters. Only simply-laced types are supported.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::affweyl::{pi_permutation, reduced_word, u_of};
use crate::charring::{q_factor_inv, CharPoly, QPoly};
use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Weight};

/// `fin + level·Λ_0 + dgrade·δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffWeight {
    pub fin: Weight,
    pub level: i32,
    pub dgrade: i32,
}

impl fmt::Display for AffWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}Λ0{:+}δ", self.fin, self.level, self.dgrade)
    }
}

impl AffWeight {
    pub fn new(fin: Weight, level: i32, dgrade: i32) -> Self {
        Self { fin, level, dgrade }
    }

    /// `<Λ, α_i∨>`, with `<Λ, α_0∨> = level - <fin, θ∨>`.
    pub fn pairing(&self, rs: &RootSystem, i: usize) -> i64 {
        if i == 0 {
            self.level as i64 - self.fin.dot(&rs.highest_coroot())
        } else {
            self.fin[i - 1] as i64
        }
    }

    fn sub_scaled(&self, a: &AffWeight, k: i64) -> Self {
        let k = k as i32;
        Self {
            fin: self.fin - a.fin.scale(k),
            level: self.level - k * a.level,
            dgrade: self.dgrade - k * a.dgrade,
        }
    }

    /// `s_i(Λ) = Λ - <Λ, α_i∨> α_i`.
    pub fn reflect(&self, rs: &RootSystem, i: usize) -> Self {
        self.sub_scaled(&simple_root(rs, i), self.pairing(rs, i))
    }
}

/// `α_i`, with `α_0 = δ - θ`.
pub fn simple_root(rs: &RootSystem, i: usize) -> AffWeight {
    if i == 0 {
        AffWeight::new(-rs.root_weight(rs.highest_root()), 0, 1)
    } else {
        AffWeight::new(rs.simple_root_weight(i), 0, 0)
    }
}

/// Finitely supported integer combination of `e^Λ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AffCharPoly {
    terms: BTreeMap<AffWeight, BigInt>,
}

impl AffCharPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(l: AffWeight) -> Self {
        let mut f = Self::zero();
        f.add(l, BigInt::one());
        f
    }

    pub fn add(&mut self, l: AffWeight, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(l).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&l);
        }
    }

    pub fn terms(&self) -> &BTreeMap<AffWeight, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, l: &AffWeight) -> BigInt {
        self.terms.get(l).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add(*l, c.clone());
        }
        out
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Every coefficient of `self` is at least the matching one of `other`.
    pub fn dominates(&self, other: &Self) -> bool {
        let neg = other.terms.iter().map(|(l, c)| (*l, -c.clone()));
        let mut d = self.clone();
        for (l, c) in neg {
            d.add(l, c);
        }
        d.is_nonnegative()
    }
}

fn require_ade(rs: &RootSystem) -> Result<()> {
    if !rs.cartan_type().is_simply_laced() {
        return Err(Error::UnsupportedType(rs.cartan_type().to_string()));
    }
    Ok(())
}

/// The Demazure operator `D_i`: on `e^Λ` with `m = <Λ, α_i∨>` it gives
/// `Σ_{k=0}^{m} e^{Λ-kα_i}` for `m ≥ 0`, `0` for `m = -1` and
/// `-Σ_{k=1}^{-m-1} e^{Λ+kα_i}` for `m ≤ -2`.
pub fn demazure_op(rs: &RootSystem, i: usize, f: &AffCharPoly) -> Result<AffCharPoly> {
    require_ade(rs)?;
    if i > rs.rank() {
        return Err(Error::OutOfRange {
            index: i,
            max: rs.rank(),
        });
    }
    let a = simple_root(rs, i);
    let mut out = AffCharPoly::zero();
    for (l, c) in &f.terms {
        let m = l.pairing(rs, i);
        if m >= 0 {
            for k in 0..=m {
                out.add(l.sub_scaled(&a, k), c.clone());
            }
        } else {
            for k in 1..=(-m - 1) {
                out.add(l.sub_scaled(&a, -k), -c.clone());
            }
        }
    }
    Ok(out)
}

/// The operator word and starting weight for `λ`: `u(λ) = s_{i_1}⋯s_{i_ℓ}π`
/// and `Λ = πΛ_0`.
pub fn demazure_data(rs: &RootSystem, lambda: &Weight) -> Result<(Vec<usize>, AffWeight)> {
    require_ade(rs)?;
    rs.check_rank(lambda.rank())?;
    let word = reduced_word(rs, &u_of(rs, lambda));
    // π s_j = s_{π(j)} π
    let perm = pi_permutation(rs, &word.pi)?;
    let ops = word.letters.iter().map(|&j| perm[j]).collect();
    Ok((ops, AffWeight::new(word.pi.tr, 1, 0)))
}

/// The partial products `D_{i_k} ⋯ D_{i_ℓ}(e^Λ)` for `k = ℓ+1, ℓ, …, 1`.
pub fn demazure_chain(rs: &RootSystem, lambda: &Weight) -> Result<Vec<AffCharPoly>> {
    let (ops, start) = demazure_data(rs, lambda)?;
    let mut f = AffCharPoly::monomial(start);
    let mut chain = vec![f.clone()];
    for &i in ops.iter().rev() {
        f = demazure_op(rs, i, &f)?;
        chain.push(f.clone());
    }
    Ok(chain)
}

/// Affine Demazure character of `D_λ`, with the level dropped and `δ`
/// turned into `q` so that the extreme weight `λ` sits at `q^0`.
pub fn char_demazure(rs: &RootSystem, lambda: &Weight) -> Result<CharPoly> {
    let chain = demazure_chain(rs, lambda)?;
    let f = chain.last().expect("chain is nonempty");
    let d0 = f
        .terms
        .keys()
        .filter(|l| l.fin == *lambda)
        .map(|l| l.dgrade)
        .min()
        .ok_or_else(|| Error::AssumptionViolated(format!("x^{lambda} missing from the Demazure character")))?;
    Ok(CharPoly::from_terms(
        None,
        f.terms
            .iter()
            .map(|(l, c)| (l.fin, QPoly::monomial((l.dgrade - d0) as i64, c.clone()))),
    ))
}

/// `E_λ(x, q, 0)`, computed as the Demazure character of `D_λ`.
pub fn e_zero(rs: &RootSystem, lambda: &Weight) -> Result<CharPoly> {
    char_demazure(rs, lambda)
}

/// `ch W(λ) = E_{w_0λ}(x, q, 0)` for dominant `λ`.
pub fn char_local_weyl(rs: &RootSystem, lambda: &Weight) -> Result<CharPoly> {
    rs.check_rank(lambda.rank())?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    e_zero(rs, &rs.longest_element().act(lambda))
}

/// `ch 𝕎(λ) = (q)_λ^{-1} ch W(λ)` modulo `q^n`.
pub fn char_global_weyl(rs: &RootSystem, lambda: &Weight, n: u32) -> Result<CharPoly> {
    let local = char_local_weyl(rs, lambda)?;
    local.truncate(n)?.mul_qseries(&q_factor_inv(rs, lambda, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    fn w(c: &[i32]) -> Weight {
        Weight::new(c)
    }

    #[test]
    fn operator_strings() {
        let a1 = rs("A1");
        let l = AffWeight::new(w(&[1]), 1, 0);
        let f = demazure_op(&a1, 1, &AffCharPoly::monomial(l)).unwrap();
        let mut expect = AffCharPoly::monomial(l);
        expect.add(AffWeight::new(w(&[-1]), 1, 0), BigInt::one());
        assert_eq!(f, expect);
        let fixed = AffWeight::new(w(&[0]), 1, 0);
        assert_eq!(
            demazure_op(&a1, 1, &AffCharPoly::monomial(fixed)).unwrap(),
            AffCharPoly::monomial(fixed)
        );
        let dead = AffWeight::new(w(&[-1]), 1, 0);
        assert!(demazure_op(&a1, 1, &AffCharPoly::monomial(dead)).unwrap().is_zero());
    }

    #[test]
    fn a1_values() {
        let a1 = rs("A1");
        assert_eq!(e_zero(&a1, &w(&[0])).unwrap().to_text(), "1");
        assert_eq!(e_zero(&a1, &w(&[-1])).unwrap().to_text(), "x^{-1} + x");
        assert_eq!(e_zero(&a1, &w(&[1])).unwrap().to_text(), "x");
        assert_eq!(e_zero(&a1, &w(&[-2])).unwrap().to_text(), "1 + x^{-2} + x^{2} + q");
        assert_eq!(char_local_weyl(&a1, &w(&[1])).unwrap().to_text(), "x^{-1} + x");
        assert_eq!(
            char_global_weyl(&a1, &w(&[1]), 3).unwrap().to_text(),
            "x^{-1} + x + q x^{-1} + q x + q^{2} x^{-1} + q^{2} x + O(q^3)"
        );
        assert!(matches!(char_local_weyl(&a1, &w(&[-1])), Err(Error::NotDominant(_))));
    }

    #[test]
    fn non_ade_rejected() {
        assert!(matches!(e_zero(&rs("C2"), &w(&[0, 0])), Err(Error::UnsupportedType(_))));
    }
}
