//! The extended affine Weyl group `W ⋉ P`, acting on affine coroots.
//!
//! An element is stored as `t_tr · dir`. Affine simple indices are
//! `0..=n`, with `0` the affine node.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{CorootVec, RootSystem, RootVec, Weight, WeylElt};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffElt {
    pub tr: Weight,
    pub dir: WeylElt,
}

impl fmt::Debug for AffElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t_{}·{:?}", self.tr, self.dir.matrix())
    }
}

impl AffElt {
    pub fn identity(n: usize) -> Self {
        Self {
            tr: Weight::zero(n),
            dir: WeylElt::identity(n),
        }
    }

    pub fn translation(mu: Weight) -> Self {
        Self {
            tr: mu,
            dir: WeylElt::identity(mu.rank()),
        }
    }

    pub fn finite(w: WeylElt) -> Self {
        Self {
            tr: Weight::zero(w.rank()),
            dir: w,
        }
    }

    pub fn rank(&self) -> usize {
        self.tr.rank()
    }

    /// `(t_μ u)(t_ν v) = t_{μ+uν} uv`.
    pub fn mul(&self, other: &Self) -> Self {
        Self {
            tr: self.tr + self.dir.act(&other.tr),
            dir: self.dir.mul(&other.dir),
        }
    }

    pub fn inverse(&self) -> Self {
        let inv = self.dir.inverse();
        Self {
            tr: -inv.act(&self.tr),
            dir: inv,
        }
    }

    pub fn is_translation(&self) -> bool {
        self.dir.is_identity()
    }

    pub fn is_identity(&self) -> bool {
        self.tr.is_zero() && self.dir.is_identity()
    }

    /// `t_μ u (β̄ + kδ) = uβ̄ + (k - <μ, uβ̄>)δ`.
    pub fn act_on_coroot(&self, beta: &AffineCoroot) -> AffineCoroot {
        let bar = self.dir.act_coroot(&beta.bar);
        AffineCoroot {
            bar,
            deg: beta.deg - self.tr.dot(&bar),
        }
    }
}

/// Real affine coroot `bar + deg·δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineCoroot {
    pub bar: CorootVec,
    pub deg: i64,
}

impl AffineCoroot {
    pub fn new(bar: CorootVec, deg: i64) -> Self {
        Self { bar, deg }
    }

    pub fn is_positive(&self) -> bool {
        self.deg > 0 || (self.deg == 0 && self.bar.is_positive())
    }

    pub fn neg(&self) -> Self {
        Self {
            bar: -self.bar,
            deg: -self.deg,
        }
    }
}

impl fmt::Display for AffineCoroot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}δ", self.bar, self.deg)
    }
}

fn check_index(rs: &RootSystem, i: usize) -> Result<()> {
    if i > rs.rank() {
        return Err(Error::OutOfRange {
            index: i,
            max: rs.rank(),
        });
    }
    Ok(())
}

/// `α_i∨` for `i ≥ 1`, and `α_0∨ = -θ∨ + δ` with `θ∨` the highest coroot.
pub fn simple_coroot(rs: &RootSystem, i: usize) -> AffineCoroot {
    if i == 0 {
        AffineCoroot::new(-rs.highest_coroot(), 1)
    } else {
        AffineCoroot::new(rs.simple_coroot(i), 0)
    }
}

/// `s_i`; the affine one is `t_γ s_γ` where `γ∨` is the highest coroot.
pub fn simple_reflection(rs: &RootSystem, i: usize) -> Result<AffElt> {
    check_index(rs, i)?;
    if i == 0 {
        let g = rs.highest_coroot_root();
        Ok(AffElt {
            tr: rs.root_weight(g),
            dir: rs.reflection(g),
        })
    } else {
        Ok(AffElt::finite(rs.simple_reflection(i)))
    }
}

/// Reflection in `a∨ + kδ`, which is `t_{-k a} s_a`.
pub fn affine_reflection(rs: &RootSystem, beta: &AffineCoroot) -> Result<AffElt> {
    let idx = rs
        .index_of_coroot(&beta.bar)
        .ok_or_else(|| Error::NotARoot(format!("{}", beta.bar)))?;
    Ok(AffElt {
        tr: rs.root_weight(idx).scale(-(beta.deg as i32)),
        dir: rs.reflection(idx),
    })
}

/// Number of positive affine coroots made negative by `x`.
///
/// For a fixed bar `β̄` the positive coroots are `β̄ + kδ` with `k ≥ k_min`
/// and their images have degree `k - c`, `c = <tr, dir β̄>`; the count of
/// offending `k` is therefore `max(0, c + ε - k_min)`.
pub fn aff_length(rs: &RootSystem, x: &AffElt) -> usize {
    (0..rs.num_roots())
        .map(|r| {
            let b = rs.coroot(r);
            let ub = x.dir.act_coroot(&b);
            let c = x.tr.dot(&ub);
            let eps = ub.is_negative() as i64;
            let k_min = (!rs.is_positive(r)) as i64;
            (c + eps - k_min).max(0) as usize
        })
        .sum()
}

/// Literal inversion count over positive affine coroots of degree `≤ max_deg`.
pub fn aff_length_by_enumeration(rs: &RootSystem, x: &AffElt, max_deg: i64) -> usize {
    let mut count = 0;
    for r in 0..rs.num_roots() {
        for k in 0..=max_deg {
            let b = AffineCoroot::new(rs.coroot(r), k);
            if b.is_positive() && !x.act_on_coroot(&b).is_positive() {
                count += 1;
            }
        }
    }
    count
}

/// `ℓ(x s_i) < ℓ(x)`.
pub fn is_right_descent(rs: &RootSystem, x: &AffElt, i: usize) -> bool {
    !x.act_on_coroot(&simple_coroot(rs, i)).is_positive()
}

/// `π s_{j_1} ⋯ s_{j_l}` with `π` of length zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedWord {
    pub pi: AffElt,
    pub letters: Vec<usize>,
}

impl ReducedWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn evaluate(&self, rs: &RootSystem) -> Result<AffElt> {
        let mut x = self.pi;
        for &j in &self.letters {
            x = x.mul(&simple_reflection(rs, j)?);
        }
        Ok(x)
    }

    /// Checks that the word evaluates to an element of length `len()`.
    pub fn check_reduced(&self, rs: &RootSystem) -> Result<AffElt> {
        let x = self.evaluate(rs)?;
        let pi_len = aff_length(rs, &self.pi);
        let length = aff_length(rs, &x);
        if pi_len != 0 || length != self.len() {
            return Err(Error::NotReduced {
                letters: self.len(),
                length,
            });
        }
        Ok(x)
    }

    /// Word for the product `self · other`, moving `other.pi` to the front:
    /// `π₁ s_w π₂ s_v = π₁π₂ s_{π₂⁻¹(w)} s_v`.
    pub fn concat(&self, rs: &RootSystem, other: &ReducedWord) -> Result<ReducedWord> {
        let perm = pi_permutation(rs, &other.pi.inverse())?;
        let mut letters: Vec<usize> = self.letters.iter().map(|&j| perm[j]).collect();
        letters.extend_from_slice(&other.letters);
        Ok(ReducedWord {
            pi: self.pi.mul(&other.pi),
            letters,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "pi": {
                "translation": self.pi.tr.coords(),
                "images": self.pi.dir.matrix(),
            },
            "letters": self.letters,
        })
    }

    pub fn from_json(rs: &RootSystem, v: &serde_json::Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("reduced word JSON: {what}"));
        let letters: Vec<usize> =
            serde_json::from_value(v.get("letters").cloned().ok_or_else(|| bad("missing letters"))?)
                .map_err(|e| bad(&e.to_string()))?;
        for &j in &letters {
            check_index(rs, j)?;
        }
        let pi = match v.get("pi") {
            None | Some(serde_json::Value::Null) => AffElt::identity(rs.rank()),
            Some(p) => {
                let tr: Vec<i32> = serde_json::from_value(
                    p.get("translation")
                        .cloned()
                        .ok_or_else(|| bad("missing pi.translation"))?,
                )
                .map_err(|e| bad(&e.to_string()))?;
                let images: Vec<Vec<i32>> =
                    serde_json::from_value(p.get("images").cloned().ok_or_else(|| bad("missing pi.images"))?)
                        .map_err(|e| bad(&e.to_string()))?;
                rs.check_rank(tr.len())?;
                rs.check_rank(images.len())?;
                AffElt {
                    tr: Weight::new(&tr),
                    dir: WeylElt::from_matrix(&images)?,
                }
            }
        };
        if aff_length(rs, &pi) != 0 {
            return Err(bad("pi does not have length zero"));
        }
        Ok(Self { pi, letters })
    }
}

/// Canonical reduced word: repeatedly strip the smallest right descent.
pub fn reduced_word(rs: &RootSystem, x: &AffElt) -> ReducedWord {
    let mut y = *x;
    let mut stripped = Vec::new();
    'outer: loop {
        for i in 0..=rs.rank() {
            if is_right_descent(rs, &y, i) {
                stripped.push(i);
                y = y.mul(&simple_reflection(rs, i).expect("index in range"));
                continue 'outer;
            }
        }
        break;
    }
    stripped.reverse();
    ReducedWord {
        pi: y,
        letters: stripped,
    }
}

/// The permutation of `0..=n` induced by a length-zero element:
/// `π(α_i∨) = α_{π(i)}∨`.
pub fn pi_permutation(rs: &RootSystem, pi: &AffElt) -> Result<Vec<usize>> {
    let simple: Vec<AffineCoroot> = (0..=rs.rank()).map(|i| simple_coroot(rs, i)).collect();
    simple
        .iter()
        .map(|a| {
            let img = pi.act_on_coroot(a);
            simple
                .iter()
                .position(|b| *b == img)
                .ok_or_else(|| Error::AssumptionViolated("element does not have length zero".into()))
        })
        .collect()
}

/// Shortest `v` with `vλ` antidominant.
pub fn v_of(rs: &RootSystem, lambda: &Weight) -> WeylElt {
    rs.to_antidominant(lambda).1
}

/// Minimal-length element of `t_λ W`, so that `t_λ = u(λ) v(λ)`.
pub fn u_of(rs: &RootSystem, lambda: &Weight) -> AffElt {
    AffElt {
        tr: *lambda,
        dir: v_of(rs, lambda).inverse(),
    }
}

/// `λ = σ(λ_-)` with `λ_-` antidominant and `σ` of maximal length in its
/// coset modulo the stabiliser of `λ_-`.
pub fn decompose(rs: &RootSystem, lambda: &Weight) -> (Weight, WeylElt) {
    let (lm, v) = rs.to_antidominant(lambda);
    let mut sigma = v.inverse();
    let mut len = rs.length(&sigma);
    'outer: loop {
        for i in 1..=rs.rank() {
            if lm[i - 1] == 0 {
                let cand = sigma.mul(&rs.simple_reflection(i));
                let l = rs.length(&cand);
                if l > len {
                    sigma = cand;
                    len = l;
                    continue 'outer;
                }
            }
        }
        break;
    }
    (lm, sigma)
}

/// Canonical word of the translation `t_μ`.
pub fn translation_word(rs: &RootSystem, mu: &Weight) -> ReducedWord {
    reduced_word(rs, &AffElt::translation(*mu))
}

/// The concatenated word of `t_{λ_-}` built from `v(λ')` and `u(λ')` where
/// `λ' = w_0σλ_-`. Returns the word and the length `ℓ(w_0) - ℓ(σ)` of the
/// `v`-prefix.
pub fn u_module_word(rs: &RootSystem, lambda_minus: &Weight, sigma: &WeylElt) -> Result<(ReducedWord, usize)> {
    let w0 = rs.longest_element();
    let lp = w0.mul(sigma).act(lambda_minus);
    let v = v_of(rs, &lp);
    let vword = ReducedWord {
        pi: AffElt::identity(rs.rank()),
        letters: rs.reduced_word(&v),
    };
    let uword = reduced_word(rs, &u_of(rs, &lp));
    let word = vword.concat(rs, &uword)?;
    let x = word.check_reduced(rs)?;
    if x != AffElt::translation(*lambda_minus) {
        return Err(Error::AssumptionViolated(format!(
            "concatenated word does not evaluate to t_{lambda_minus}"
        )));
    }
    Ok((word, vword.len()))
}

/// `β_k = s_{j_l} ⋯ s_{j_{k+1}}(α∨_{j_k})`.
pub fn beta_sequence(rs: &RootSystem, word: &ReducedWord) -> Result<Vec<AffineCoroot>> {
    word.check_reduced(rs)?;
    let mut y = AffElt::identity(rs.rank());
    let mut out = vec![AffineCoroot::new(CorootVec::zero(rs.rank()), 0); word.len()];
    for (k, &j) in word.letters.iter().enumerate().rev() {
        out[k] = y.act_on_coroot(&simple_coroot(rs, j));
        y = y.mul(&simple_reflection(rs, j)?);
    }
    Ok(out)
}

fn check_m(betas: &[AffineCoroot], m: usize) -> Result<()> {
    if m > betas.len() {
        return Err(Error::OutOfRange {
            index: m,
            max: betas.len(),
        });
    }
    Ok(())
}

/// `l_{α,m} = -<λ_-, α∨> - #{j ≤ m : β̄_j = -α∨}`, indexed by positive root.
pub fn l_numbers(rs: &RootSystem, lambda_minus: &Weight, betas: &[AffineCoroot], m: usize) -> Result<Vec<i64>> {
    check_m(betas, m)?;
    rs.check_rank(lambda_minus.rank())?;
    Ok(rs
        .positive_coroots()
        .iter()
        .map(|c| {
            let used = betas[..m].iter().filter(|b| b.bar == -*c).count() as i64;
            -lambda_minus.dot(c) - used
        })
        .collect())
}

/// `ω(m) = Σ ω_j` over `i ≤ m` with `-β̄_i = α_j∨` simple.
pub fn omega_m(rs: &RootSystem, betas: &[AffineCoroot], m: usize) -> Result<Weight> {
    check_m(betas, m)?;
    let n = rs.rank();
    let mut w = Weight::zero(n);
    for b in &betas[..m] {
        let c = -b.bar;
        if let Some(j) = (1..=n).find(|&j| rs.simple_coroot(j) == c) {
            w[j - 1] += 1;
        }
    }
    Ok(w)
}

/// `(λ_-)_σ = λ_- + Σ_{j : σα_j > 0} ω_j`.
pub fn lambda_sigma(rs: &RootSystem, lambda_minus: &Weight, sigma: &WeylElt) -> Result<Weight> {
    rs.check_rank(lambda_minus.rank())?;
    if !lambda_minus.is_antidominant() {
        return Err(Error::AssumptionViolated(format!("{lambda_minus} is not antidominant")));
    }
    let mut out = *lambda_minus;
    for j in 1..=rs.rank() {
        if rs.is_positive(rs.act_root(sigma, j - 1)) {
            if lambda_minus[j - 1] >= 0 {
                return Err(Error::AssumptionViolated(format!(
                    "σα_{j} > 0 but <λ_-, α_{j}∨> = {}",
                    lambda_minus[j - 1]
                )));
            }
            out[j - 1] += 1;
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HatKind {
    Raising,
    Lowering,
}

/// Root and `z`-degree of the generator `e_{σ̂α + rδ}` (raising) or
/// `e_{-σ̂α + rδ}` (lowering).
pub fn hat_generator(rs: &RootSystem, sigma: &WeylElt, alpha: usize, kind: HatKind, r: u32) -> Result<(RootVec, u32)> {
    if !rs.is_positive(alpha) {
        return Err(Error::NotARoot(format!("{} is not a positive root", rs.root(alpha))));
    }
    let img = rs.act_root(sigma, alpha);
    let positive = rs.is_positive(img);
    Ok(match kind {
        HatKind::Raising => (rs.root(img), if positive { r } else { r + 1 }),
        HatKind::Lowering => (-rs.root(img), if positive { r + 1 } else { r }),
    })
}

/// Order of `s_i s_j`, or `None` if it exceeds 6 (infinite in affine rank 1).
pub fn coxeter_order(rs: &RootSystem, i: usize, j: usize) -> Result<Option<usize>> {
    let p = simple_reflection(rs, i)?.mul(&simple_reflection(rs, j)?);
    let mut x = p;
    for k in 1..=6 {
        if x.is_identity() {
            return Ok(Some(k));
        }
        x = x.mul(&p);
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    #[test]
    fn s0_in_a1() {
        let a1 = rs("A1");
        let s0 = simple_reflection(&a1, 0).unwrap();
        assert_eq!(s0.tr, Weight::new(&[2]));
        assert_eq!(s0.dir, a1.simple_reflection(1));
        let s1 = simple_reflection(&a1, 1).unwrap();
        assert_eq!(s0.mul(&s1), AffElt::translation(Weight::new(&[2])));
        let a0 = simple_coroot(&a1, 0);
        assert_eq!(s0.act_on_coroot(&a0), a0.neg());
        assert!(s0.mul(&s0).is_identity());
    }

    #[test]
    fn translation_action() {
        let a1 = rs("A1");
        let t = AffElt::translation(Weight::new(&[1]));
        let a = AffineCoroot::new(a1.simple_coroot(1), 0);
        assert_eq!(t.act_on_coroot(&a), AffineCoroot::new(a1.simple_coroot(1), -1));
        let s1 = simple_reflection(&a1, 1).unwrap();
        let b = AffineCoroot::new(a1.simple_coroot(1), 1);
        assert_eq!(s1.act_on_coroot(&b), AffineCoroot::new(-a1.simple_coroot(1), 1));
    }

    #[test]
    fn lengths() {
        let a1 = rs("A1");
        assert_eq!(aff_length(&a1, &AffElt::identity(1)), 0);
        assert_eq!(aff_length(&a1, &AffElt::translation(Weight::new(&[1]))), 1);
        let a2 = rs("A2");
        assert_eq!(aff_length(&a2, &AffElt::translation(Weight::new(&[-1, -1]))), 4);
    }

    #[test]
    fn words_in_a1() {
        let a1 = rs("A1");
        let t = AffElt::translation(Weight::new(&[-1]));
        let w = reduced_word(&a1, &t);
        assert_eq!(w.letters.len(), 1);
        assert_eq!(w.evaluate(&a1).unwrap(), t);
        let betas = beta_sequence(&a1, &w).unwrap();
        assert_eq!(betas, vec![AffineCoroot::new(-a1.simple_coroot(1), 1)]);
        assert_eq!(l_numbers(&a1, &Weight::new(&[-1]), &betas, 1).unwrap(), vec![0]);
        assert_eq!(omega_m(&a1, &betas, 1).unwrap(), Weight::new(&[1]));
    }

    #[test]
    fn u_and_v() {
        let a1 = rs("A1");
        let w = Weight::new(&[1]);
        assert_eq!(v_of(&a1, &w), a1.simple_reflection(1));
        let u = u_of(&a1, &w);
        assert_eq!(u.tr, w);
        assert_eq!(u.dir, a1.simple_reflection(1));
        assert_eq!(u.mul(&AffElt::finite(v_of(&a1, &w))), AffElt::translation(w));
    }

    #[test]
    fn lambda_sigma_examples() {
        let a2 = rs("A2");
        let rho_m = Weight::new(&[-1, -1]);
        let s1 = a2.simple_reflection(1);
        assert_eq!(lambda_sigma(&a2, &rho_m, &s1).unwrap(), Weight::new(&[-1, 0]));
        assert_eq!(lambda_sigma(&a2, &rho_m, &a2.longest_element()).unwrap(), rho_m);
        assert!(matches!(
            lambda_sigma(&a2, &Weight::new(&[0, -1]), &WeylElt::identity(2)),
            Err(Error::AssumptionViolated(_))
        ));
    }

    #[test]
    fn hat_tables() {
        let a1 = rs("A1");
        let s1 = a1.simple_reflection(1);
        let a = RootVec::new(&[1]);
        assert_eq!(
            hat_generator(&a1, &WeylElt::identity(1), 0, HatKind::Raising, 0).unwrap(),
            (a, 0)
        );
        assert_eq!(hat_generator(&a1, &s1, 0, HatKind::Raising, 0).unwrap(), (-a, 1));
        assert_eq!(hat_generator(&a1, &s1, 0, HatKind::Lowering, 0).unwrap(), (a, 0));
    }

    #[test]
    fn word_json_round_trip() {
        let a2 = rs("A2");
        let x = u_of(&a2, &Weight::new(&[1, 0]));
        let w = reduced_word(&a2, &x);
        let back = ReducedWord::from_json(&a2, &w.to_json()).unwrap();
        assert_eq!(back, w);
    }
}
