//! Golden values, pinned against independent oracles: brute-force subset
//! enumeration for the path sums and a hand-rolled `A1` Demazure calculus.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use macd::affweyl::{affine_reflection, beta_sequence, reduced_word, u_of, AffElt, AffineCoroot};
use macd::charring::{CharPoly, QPoly};
use macd::demazure::{char_global_weyl, char_local_weyl, e_zero};
use macd::macdinf::{char_u, char_u_global, e_infinity, weight_box, ModuleSpec};
use macd::qbgpath::Qbg;
use macd::rootsys::{RootSystem, Weight, WeylElt};

fn rs(t: &str) -> RootSystem {
    RootSystem::new(t.parse().unwrap())
}

fn w1(k: i32) -> Weight {
    Weight::new(&[k])
}

/// `ℓ(w) = #{α∨ > 0 : <wρ, α∨> < 0}`.
fn oracle_length(rs: &RootSystem, w: &WeylElt) -> i64 {
    let wrho = w.act(&rs.rho());
    rs.positive_coroots().iter().filter(|c| wrho.dot(c) < 0).count() as i64
}

/// `Some(quantum?)` when `w → w s_α` is an edge of the quantum Bruhat graph.
fn oracle_edge(rs: &RootSystem, w: &WeylElt, alpha: usize) -> Option<bool> {
    let l = oracle_length(rs, w);
    let l2 = oracle_length(rs, &w.mul(&rs.reflection(alpha)));
    let two_rho_height: i64 = 2 * rs.rho().dot(&rs.coroot(alpha));
    if l2 == l + 1 {
        Some(false)
    } else if l2 == l + 1 - two_rho_height {
        Some(true)
    } else {
        None
    }
}

/// Sums `x^{wt} q^{qdeg}` over all admissible subsets of `betas[from..]`,
/// checking every subset.
fn oracle_paths(rs: &RootSystem, z0: &AffElt, betas: &[AffineCoroot], from: usize, reversed: bool) -> CharPoly {
    let idx: Vec<usize> = (from..betas.len()).collect();
    assert!(idx.len() <= 20, "oracle is exponential");
    let mut tally: BTreeMap<(Weight, i64), i64> = BTreeMap::new();
    'subsets: for mask in 0u32..(1 << idx.len()) {
        let mut z = *z0;
        let mut qdeg = 0;
        for (bit, &j) in idx.iter().enumerate() {
            if mask & (1 << bit) == 0 {
                continue;
            }
            let b = &betas[j];
            let alpha = rs
                .positive_index_of_coroot(&b.bar)
                .or_else(|| rs.positive_index_of_coroot(&-b.bar))
                .unwrap();
            let from_vertex = if reversed {
                z.dir.mul(&rs.reflection(alpha))
            } else {
                z.dir
            };
            match oracle_edge(rs, &from_vertex, alpha) {
                None => continue 'subsets,
                Some(true) => qdeg += b.deg,
                Some(false) => {}
            }
            z = z.mul(&affine_reflection(rs, b).unwrap());
        }
        *tally.entry((z.tr, qdeg)).or_insert(0) += 1;
    }
    CharPoly::from_terms(
        None,
        tally
            .into_iter()
            .map(|((w, e), c)| (w, QPoly::monomial(e, BigInt::from(c)))),
    )
}

fn oracle_e_infinity(rs: &RootSystem, lambda: &Weight) -> CharPoly {
    let u = u_of(rs, lambda);
    let betas = beta_sequence(rs, &reduced_word(rs, &u)).unwrap();
    oracle_paths(rs, &u, &betas, 0, true)
}

fn oracle_char_u(rs: &RootSystem, lambda: &Weight) -> CharPoly {
    let spec = ModuleSpec::for_u(rs, lambda).unwrap();
    oracle_paths(rs, &spec.z0(), &spec.betas(rs).unwrap(), spec.m, false)
}

#[test]
fn path_sums_match_brute_force() {
    for (t, b) in [("A1", 4), ("A2", 1), ("C2", 1), ("G2", 1), ("A3", 1)] {
        let g = Qbg::new(&rs(t));
        let r = g.root_system();
        for lambda in weight_box(r.rank(), b) {
            if reduced_word(r, &u_of(r, &lambda)).len() > 16 {
                continue;
            }
            assert_eq!(
                e_infinity(&g, &lambda).unwrap(),
                oracle_e_infinity(r, &lambda),
                "{t} E_{lambda}"
            );
            assert_eq!(
                char_u(&g, &lambda).unwrap().char,
                oracle_char_u(r, &lambda),
                "{t} U_{lambda}"
            );
        }
    }
}

/// `A1` affine weights `(k ω, level, d δ)`, with `α_1 = (2, 0, 0)` and
/// `α_0 = (-2, 0, 1)`.
type A1Weight = (i32, i32, i32);

fn a1_demazure(i: usize, f: &BTreeMap<A1Weight, i64>) -> BTreeMap<A1Weight, i64> {
    let mut out: BTreeMap<A1Weight, i64> = BTreeMap::new();
    let alpha = if i == 1 { (2, 0) } else { (-2, 1) };
    for (&(k, lev, d), &c) in f {
        let m = if i == 1 { k } else { lev - k };
        let shift = |j: i32| (k - j * alpha.0, lev, d - j * alpha.1);
        if m >= 0 {
            for j in 0..=m {
                *out.entry(shift(j)).or_insert(0) += c;
            }
        } else {
            for j in 1..=(-m - 1) {
                *out.entry(shift(-j)).or_insert(0) -= c;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `E_{nω}(x, q, 0)` for `A1` from `u = t_{-nω} = (s_1π)^n` for `n ≥ 0`
/// and `u = t_{nω} s_1 = (πs_1)^n s_1` for `n > 0`, with `π s_i = s_{1-i} π`.
fn oracle_a1_e_zero(n: i32) -> CharPoly {
    let mut word: Vec<Option<usize>> = Vec::new(); // None is π
    if n <= 0 {
        for _ in 0..-n {
            word.extend([Some(1), None]);
        }
    } else {
        for _ in 0..n {
            word.extend([None, Some(1)]);
        }
        word.push(Some(1));
    }
    // Push every π to the right.
    let mut letters = Vec::new();
    let mut flips = 0;
    for x in &word {
        match x {
            None => flips += 1,
            Some(i) => letters.push(if flips % 2 == 0 { *i } else { 1 - i }),
        }
    }
    // Cancel adjacent equal letters (the `n > 0` word ends in `s_1 s_1`).
    let mut reduced: Vec<usize> = Vec::new();
    for l in letters {
        if reduced.last() == Some(&l) {
            reduced.pop();
        } else {
            reduced.push(l);
        }
    }
    let start = if flips % 2 == 0 { (0, 1, 0) } else { (1, 1, 0) };
    let mut f = BTreeMap::from([(start, 1i64)]);
    for &i in reduced.iter().rev() {
        f = a1_demazure(i, &f);
    }
    let d0 = f.keys().filter(|(k, _, _)| *k == n).map(|(_, _, d)| *d).min().unwrap();
    CharPoly::from_terms(
        None,
        f.into_iter()
            .map(|((k, _, d), c)| (w1(k), QPoly::monomial((d - d0) as i64, BigInt::from(c)))),
    )
}

fn q_binomial(n: i64, k: i64) -> QPoly {
    let mut num = QPoly::one();
    let mut den = QPoly::one();
    for j in 0..k {
        num = &num * &QPoly::one_minus_q_pow(n - j);
        den = &den * &QPoly::one_minus_q_pow(j + 1);
    }
    let inv = den.inverse_series((n * n + 1) as u32).unwrap();
    (&num * &inv).truncate((k * (n - k) + 1) as u32)
}

#[test]
fn a1_demazure_matches_hand_calculus() {
    let a1 = rs("A1");
    for n in -6..=6 {
        assert_eq!(e_zero(&a1, &w1(n)).unwrap(), oracle_a1_e_zero(n), "E_{n}(x,q,0)");
    }
}

#[test]
fn a1_local_weyl_is_q_binomial() {
    // ch W(nω) = Σ_j [n choose j]_q x^{n-2j}.
    let a1 = rs("A1");
    for n in 0..=6i64 {
        let expect = CharPoly::from_terms(None, (0..=n).map(|j| (w1((n - 2 * j) as i32), q_binomial(n, j))));
        assert_eq!(char_local_weyl(&a1, &w1(n as i32)).unwrap(), expect, "W({n})");
    }
}

#[test]
fn a1_golden_values() {
    let a1 = rs("A1");
    let g = Qbg::new(&a1);
    let text = |c: CharPoly| c.to_text();
    assert_eq!(text(e_infinity(&g, &w1(-1)).unwrap()), "x^{-1} + q x");
    assert_eq!(text(e_infinity(&g, &w1(1)).unwrap()), "x");
    assert_eq!(text(char_u(&g, &w1(1)).unwrap().char), "x + q x^{-1}");
    assert_eq!(text(char_u(&g, &w1(-1)).unwrap().char), "x^{-1}");
    assert_eq!(text(e_zero(&a1, &w1(-1)).unwrap()), "x^{-1} + x");
    assert_eq!(text(e_zero(&a1, &w1(1)).unwrap()), "x");
    assert_eq!(text(char_local_weyl(&a1, &w1(1)).unwrap()), "x^{-1} + x");
    assert_eq!(text(e_zero(&a1, &w1(-2)).unwrap()), "1 + x^{-2} + x^{2} + q");
    assert_eq!(text(char_u_global(&g, &w1(-1), 3).unwrap().char), "x^{-1} + O(q^3)");
    assert_eq!(
        text(char_global_weyl(&a1, &w1(1), 3).unwrap()),
        "x^{-1} + x + q x^{-1} + q x + q^{2} x^{-1} + q^{2} x + O(q^3)"
    );
}

#[test]
fn a1_brute_force_values_agree_with_hand_values() {
    let a1 = rs("A1");
    assert_eq!(oracle_e_infinity(&a1, &w1(-1)).to_text(), "x^{-1} + q x");
    assert_eq!(oracle_char_u(&a1, &w1(1)).to_text(), "x + q x^{-1}");
    assert_eq!(oracle_char_u(&a1, &w1(-1)).to_text(), "x^{-1}");
    assert_eq!(oracle_a1_e_zero(-1).to_text(), "x^{-1} + x");
    assert_eq!(oracle_a1_e_zero(1).to_text(), "x");
}
