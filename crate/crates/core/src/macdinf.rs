//! The `t = ∞` side: `E_λ(x, q⁻¹, ∞)` as a sum over reversed quantum alcove
//! paths, characters of generalized Weyl modules with characteristics and of
//! `U`-modules, their global versions, and verifiers for the decomposition
//! procedure.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::affweyl::{
    aff_length, beta_sequence, coxeter_order, decompose, lambda_sigma, omega_m, reduced_word, translation_word,
    u_module_word, u_of, v_of, AffElt, AffineCoroot, ReducedWord,
};
use crate::charring::{q_factor_inv, CharPoly};
use crate::error::{Error, Result};
use crate::qbgpath::{first_step, path_character, Qbg, StepKind};
use crate::rootsys::{RootSystem, Weight, WeylElt};

/// Data of `W_{σ(λ_-)}(m)`: a reduced word for `t_{λ_-}` whose first
/// `prefix_len` letters form the `t_μ` part, and `0 ≤ m ≤ prefix_len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub sigma: WeylElt,
    pub lambda_minus: Weight,
    pub mu: Weight,
    pub word: ReducedWord,
    pub prefix_len: usize,
    pub m: usize,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::SpecInvalid(msg.into())
}

impl ModuleSpec {
    /// Uses the canonical words of `t_μ` and `t_{λ_- - μ}`, concatenated.
    pub fn new(rs: &RootSystem, sigma: WeylElt, lambda_minus: Weight, mu: Weight, m: usize) -> Result<Self> {
        rs.check_rank(lambda_minus.rank())?;
        rs.check_rank(mu.rank())?;
        let rest = lambda_minus - mu;
        if !lambda_minus.is_antidominant() || !mu.is_antidominant() || !rest.is_antidominant() {
            return Err(invalid(format!(
                "need λ_-, μ and λ_- - μ antidominant (λ_- = {lambda_minus}, μ = {mu})"
            )));
        }
        Self::with_words(
            rs,
            sigma,
            lambda_minus,
            mu,
            &translation_word(rs, &mu),
            &translation_word(rs, &rest),
            m,
        )
    }

    /// Uses explicit words for `t_μ` and `t_{λ_- - μ}`.
    pub fn with_words(
        rs: &RootSystem,
        sigma: WeylElt,
        lambda_minus: Weight,
        mu: Weight,
        word_mu: &ReducedWord,
        word_rest: &ReducedWord,
        m: usize,
    ) -> Result<Self> {
        let wrong = |w: &ReducedWord, target: Weight| -> Result<bool> {
            Ok(w.check_reduced(rs).map_err(|e| invalid(e.to_string()))? != AffElt::translation(target))
        };
        if wrong(word_mu, mu)? {
            return Err(invalid(format!("word does not evaluate to t_{mu}")));
        }
        if wrong(word_rest, lambda_minus - mu)? {
            return Err(invalid(format!("word does not evaluate to t_{}", lambda_minus - mu)));
        }
        let word = word_mu.concat(rs, word_rest)?;
        Self::with_word(rs, sigma, lambda_minus, mu, word, word_mu.len(), m)
    }

    /// Uses a single word for `t_{λ_-}` with a marked prefix length.
    pub fn with_word(
        rs: &RootSystem,
        sigma: WeylElt,
        lambda_minus: Weight,
        mu: Weight,
        word: ReducedWord,
        prefix_len: usize,
        m: usize,
    ) -> Result<Self> {
        rs.check_rank(sigma.rank())?;
        if !lambda_minus.is_antidominant() {
            return Err(invalid(format!("{lambda_minus} is not antidominant")));
        }
        let x = word.check_reduced(rs).map_err(|e| invalid(e.to_string()))?;
        if x != AffElt::translation(lambda_minus) {
            return Err(invalid(format!("word does not evaluate to t_{lambda_minus}")));
        }
        if prefix_len > word.len() || m > prefix_len {
            return Err(invalid(format!(
                "need m ≤ prefix ≤ ℓ (m = {m}, prefix = {prefix_len}, ℓ = {})",
                word.len()
            )));
        }
        // `π s_{i_1} ⋯ s_{i_p}` must be `t_μ` up to a length-zero factor.
        let head = ReducedWord {
            pi: word.pi,
            letters: word.letters[..prefix_len].to_vec(),
        };
        let rest = AffElt::translation(mu).inverse().mul(&head.evaluate(rs)?);
        if aff_length(rs, &rest) != 0 {
            return Err(invalid(format!("the first {prefix_len} letters do not spell t_{mu}")));
        }
        Ok(Self {
            sigma,
            lambda_minus,
            mu,
            word,
            prefix_len,
            m,
        })
    }

    /// The spec whose module is `U_λ`: `λ = σ(λ_-)` with `σ` maximal, the
    /// concatenated `v`/`u` word of `t_{λ_-}`, and `m = ℓ(w_0) - ℓ(σ)`.
    pub fn for_u(rs: &RootSystem, lambda: &Weight) -> Result<Self> {
        rs.check_rank(lambda.rank())?;
        let (lm, sigma) = decompose(rs, lambda);
        let (word, r) = u_module_word(rs, &lm, &sigma)?;
        let len = word.len();
        Self::with_word(rs, sigma, lm, lm, word, len, r)
    }

    pub fn with_m(&self, m: usize) -> Result<Self> {
        if m > self.prefix_len {
            return Err(invalid(format!("m = {m} exceeds {}", self.prefix_len)));
        }
        Ok(Self { m, ..self.clone() })
    }

    pub fn with_sigma(&self, sigma: WeylElt) -> Self {
        Self { sigma, ..self.clone() }
    }

    pub fn betas(&self, rs: &RootSystem) -> Result<Vec<AffineCoroot>> {
        beta_sequence(rs, &self.word)
    }

    /// `z_0 = t_{σ(λ_-)} σ`.
    pub fn z0(&self) -> AffElt {
        AffElt {
            tr: self.sigma.act(&self.lambda_minus),
            dir: self.sigma,
        }
    }

    /// The cyclic weight `σ(λ_-)`.
    pub fn extreme_weight(&self) -> Weight {
        self.sigma.act(&self.lambda_minus)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    PathSum,
    Recursion,
    Division,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterResult {
    pub char: CharPoly,
    pub provenance: Provenance,
}

impl CharacterResult {
    pub fn to_json(&self) -> Value {
        json!({"character": self.char.to_json(), "provenance": self.provenance})
    }
}

/// `ch W_{σ(λ_-)}(m)` as a sum over forward quantum alcove paths from
/// `t_{σ(λ_-)}σ` using positions `m+1, …, ℓ`.
pub fn char_wm(qbg: &Qbg, spec: &ModuleSpec) -> Result<CharacterResult> {
    let betas = spec.betas(qbg.root_system())?;
    Ok(CharacterResult {
        char: path_character(qbg, &spec.z0(), &betas, spec.m, false)?,
        provenance: Provenance::PathSum,
    })
}

/// `ch U_λ`.
pub fn char_u(qbg: &Qbg, lambda: &Weight) -> Result<CharacterResult> {
    char_wm(qbg, &ModuleSpec::for_u(qbg.root_system(), lambda)?)
}

/// `E_λ(x, q⁻¹, ∞)`: reversed paths from `u(λ)` along the β-sequence of its
/// canonical reduced word.
pub fn e_infinity(qbg: &Qbg, lambda: &Weight) -> Result<CharPoly> {
    let rs = qbg.root_system();
    rs.check_rank(lambda.rank())?;
    let u = u_of(rs, lambda);
    let betas = beta_sequence(rs, &reduced_word(rs, &u))?;
    path_character(qbg, &u, &betas, 0, true)
}

/// `E_λ(x, q, ∞)`, i.e. [`e_infinity`] with `q ↦ q⁻¹`.
pub fn e_infinity_q(qbg: &Qbg, lambda: &Weight) -> Result<CharPoly> {
    e_infinity(qbg, lambda)?.q_invert()
}

/// `ch 𝕌_λ = ch U_λ / (q)_{(λ_-)_σ}` modulo `q^n`.
pub fn char_u_global(qbg: &Qbg, lambda: &Weight, n: u32) -> Result<CharacterResult> {
    let rs = qbg.root_system();
    let spec = ModuleSpec::for_u(rs, lambda)?;
    let local = char_wm(qbg, &spec)?.char;
    let ls = lambda_sigma(rs, &spec.lambda_minus, &spec.sigma)?;
    Ok(CharacterResult {
        char: local.truncate(n)?.mul_qseries(&q_factor_inv(rs, &ls, n))?,
        provenance: Provenance::Division,
    })
}

/// `ch 𝕎_{σ(λ_-)}(m) = ch W_{σ(λ_-)}(m) / (q)_{λ_- + ω(m)}` modulo `q^n`.
pub fn char_wm_global(qbg: &Qbg, spec: &ModuleSpec, n: u32) -> Result<CharacterResult> {
    let local = char_wm(qbg, spec)?.char;
    globalize(qbg.root_system(), spec, &spec.betas(qbg.root_system())?, &local, n)
}

fn globalize(
    rs: &RootSystem,
    spec: &ModuleSpec,
    betas: &[AffineCoroot],
    local: &CharPoly,
    n: u32,
) -> Result<CharacterResult> {
    let shift = spec.lambda_minus + omega_m(rs, betas, spec.m)?;
    Ok(CharacterResult {
        char: local.truncate(n)?.mul_qseries(&q_factor_inv(rs, &shift, n))?,
        provenance: Provenance::Division,
    })
}

/// A single term `c · x^μ q^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub weight: Weight,
    pub qexp: i64,
    pub coeff: BigInt,
}

impl Monomial {
    pub fn to_char(&self) -> CharPoly {
        CharPoly::monomial(self.weight, self.qexp, self.coeff.clone())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "weight": self.weight.coords(),
            "q": self.qexp,
            "coef": self.coeff.to_string(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
}

/// Outcome of one verified claim.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub claim: String,
    pub status: Status,
    /// The offending difference when the claim fails.
    pub witness: Option<CharPoly>,
    pub monomial: Option<Monomial>,
    pub runtime_ms: u128,
    pub note: Option<String>,
}

impl VerificationReport {
    pub fn is_ok(&self) -> bool {
        self.status == Status::Ok
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "claim": self.claim,
            "status": self.status,
            "witness": self.witness.as_ref().map(CharPoly::to_json),
            "monomial": self.monomial.as_ref().map(Monomial::to_json),
            "runtime_ms": self.runtime_ms as u64,
        });
        if let Some(n) = &self.note {
            v["note"] = json!(n);
        }
        v
    }

    /// Converts a failed report into [`Error::VerificationFailed`].
    pub fn into_result(self) -> Result<Self> {
        if self.is_ok() {
            Ok(self)
        } else {
            Err(Error::VerificationFailed(format!(
                "{}: {}",
                self.claim,
                self.witness.map(|w| w.to_text()).unwrap_or_default()
            )))
        }
    }
}

fn report(
    claim: String,
    start: Instant,
    witness: Option<CharPoly>,
    monomial: Option<Monomial>,
    note: Option<String>,
) -> VerificationReport {
    VerificationReport {
        claim,
        status: if witness.is_none() && note.is_none() {
            Status::Ok
        } else {
            Status::Fail
        },
        witness,
        monomial,
        runtime_ms: start.elapsed().as_millis(),
        note,
    }
}

fn spec_label(rs: &RootSystem, spec: &ModuleSpec) -> String {
    format!(
        "{} σ={:?} λ_-={} μ={} m={}",
        rs.cartan_type(),
        rs.reduced_word(&spec.sigma),
        spec.lambda_minus,
        spec.mu,
        spec.m
    )
}

/// `E_λ(x, q⁻¹, ∞) = w_0 ch U_{w_0 λ}`, exactly.
pub fn verify_theorem1(qbg: &Qbg, lambda: &Weight) -> Result<VerificationReport> {
    let start = Instant::now();
    let rs = qbg.root_system();
    let lhs = e_infinity(qbg, lambda)?;
    let w0l = rs.longest_element().act(lambda);
    let rhs = char_u(qbg, &w0l)?.char.w0_twist(rs);
    let diff = lhs.checked_sub(&rhs)?;
    Ok(report(
        format!("{} E_{lambda}(x,q^-1,inf) = w0 ch U_{w0l}", rs.cartan_type()),
        start,
        (!diff.is_zero()).then_some(diff),
        None,
        None,
    ))
}

/// What the first step along `β_m` predicts for the kernel term.
struct FirstStep {
    sigma_prime: WeylElt,
    predicted: Monomial,
}

fn first_step_prediction(qbg: &Qbg, spec: &ModuleSpec, betas: &[AffineCoroot]) -> Result<Option<FirstStep>> {
    let rs = qbg.root_system();
    let beta = betas[spec.m - 1];
    let Some((kind, _)) = first_step(qbg, &spec.z0(), &beta, false)? else {
        return Ok(None);
    };
    let r = rs.index_of_coroot(&beta.bar).expect("β̄ is a coroot");
    let shift = (spec.lambda_minus.dot(&beta.bar) - beta.deg) as i32;
    Ok(Some(FirstStep {
        sigma_prime: spec.sigma.mul(&rs.reflection(r)),
        predicted: Monomial {
            weight: spec.sigma.act(&rs.root_weight(r)).scale(shift),
            qexp: if kind == StepKind::Quantum { beta.deg } else { 0 },
            coeff: BigInt::one(),
        },
    }))
}

/// The ratio of lowest terms, which must be a monomial.
fn observed_monomial(diff: &CharPoly, kernel: &CharPoly) -> Option<Monomial> {
    let (wd, ed, cd) = diff.min_term()?;
    let (wk, ek, ck) = kernel.min_term()?;
    (&cd % &ck == BigInt::from(0)).then(|| Monomial {
        weight: wd - wk,
        qexp: ed - ek,
        coeff: cd / ck,
    })
}

/// Compares `prev - cur` against `mono · kernel` (or against zero when
/// there is no first step).
fn check_difference(
    label: String,
    start: Instant,
    prev: &CharPoly,
    cur: &CharPoly,
    kernel: Option<(&CharPoly, &Monomial)>,
) -> Result<VerificationReport> {
    let diff = prev.checked_sub(cur)?;
    let Some((kernel, predicted)) = kernel else {
        return Ok(report(
            format!("{label}: no edge, ch(m-1) = ch(m)"),
            start,
            (!diff.is_zero()).then_some(diff),
            None,
            None,
        ));
    };
    let claim = format!("{label}: ch(m-1) - ch(m) = monomial · ch_σ'");
    let Some(mono) = observed_monomial(&diff, kernel) else {
        let note = Some("difference is not a monomial multiple of the kernel character".to_string());
        return Ok(report(claim, start, Some(diff), None, note));
    };
    let rest = diff.checked_sub(&mono.to_char().checked_mul(kernel)?)?;
    let note = (mono != *predicted).then(|| {
        format!(
            "observed monomial x^{} q^{} differs from first-step prediction x^{} q^{}",
            mono.weight, mono.qexp, predicted.weight, predicted.qexp
        )
    });
    Ok(report(
        claim,
        start,
        (!rest.is_zero()).then_some(rest),
        Some(mono),
        note,
    ))
}

/// One step of the decomposition procedure for `W_{σ(λ_-)}(m-1) ↠ W_{σ(λ_-)}(m)`.
pub fn verify_decomposition_local(qbg: &Qbg, spec: &ModuleSpec) -> Result<VerificationReport> {
    let start = Instant::now();
    let rs = qbg.root_system();
    if spec.m == 0 {
        return Err(invalid("decomposition needs m ≥ 1"));
    }
    let betas = spec.betas(rs)?;
    let prev = char_wm(qbg, &spec.with_m(spec.m - 1)?)?.char;
    let cur = char_wm(qbg, spec)?.char;
    let step = first_step_prediction(qbg, spec, &betas)?;
    let kernel = match &step {
        Some(s) => Some(char_wm(qbg, &spec.with_sigma(s.sigma_prime))?.char),
        None => None,
    };
    check_difference(
        spec_label(rs, spec),
        start,
        &prev,
        &cur,
        kernel.as_ref().zip(step.as_ref().map(|s| &s.predicted)),
    )
}

/// The global counterpart: `𝕎(m-1) - 𝕎(m) = monomial · 𝕎_{σ'}(m-1)` modulo `q^n`.
pub fn verify_decomposition_global(qbg: &Qbg, spec: &ModuleSpec, n: u32) -> Result<VerificationReport> {
    let start = Instant::now();
    let rs = qbg.root_system();
    if spec.m == 0 {
        return Err(invalid("decomposition needs m ≥ 1"));
    }
    let betas = spec.betas(rs)?;
    let prev_spec = spec.with_m(spec.m - 1)?;
    let prev = char_wm_global(qbg, &prev_spec, n)?.char;
    let cur = char_wm_global(qbg, spec, n)?.char;
    let step = first_step_prediction(qbg, spec, &betas)?;
    let kernel = match &step {
        Some(s) => Some(char_wm_global(qbg, &prev_spec.with_sigma(s.sigma_prime), n)?.char),
        None => None,
    };
    check_difference(
        format!("{} (global, N={n})", spec_label(rs, spec)),
        start,
        &prev,
        &cur,
        kernel.as_ref().zip(step.as_ref().map(|s| &s.predicted)),
    )
}

/// `dim W_{σ(λ_-)}(m)` equals the number of label-compatible QBG walks from
/// `σ` with labels `β̄_{m+1}, …, β̄_ℓ`, counted on the explicit edge table.
pub fn verify_path_count(qbg: &Qbg, spec: &ModuleSpec) -> Result<VerificationReport> {
    let start = Instant::now();
    let rs = qbg.root_system();
    let betas = spec.betas(rs)?;
    let labels: Vec<usize> = betas[spec.m..]
        .iter()
        .map(|b| rs.positive_index_of_coroot(&b.bar).expect("coroot"))
        .collect();
    let count = qbg.count_label_paths(qbg.index_of(&spec.sigma), &labels);
    let dim = char_wm(qbg, spec)?.char.dimension();
    let note = (count != dim).then(|| format!("dimension {dim} but {count} QBG walks"));
    Ok(report(
        format!("{}: dim = #QBG walks", spec_label(rs, spec)),
        start,
        None,
        None,
        note,
    ))
}

/// `ch 𝕎(m) · (q)_{λ_- + ω(m)} = ch W(m)` modulo `q^n`.
pub fn verify_global_ratio(qbg: &Qbg, spec: &ModuleSpec, n: u32) -> Result<VerificationReport> {
    let start = Instant::now();
    let rs = qbg.root_system();
    let betas = spec.betas(rs)?;
    let local = char_wm(qbg, spec)?.char;
    let global = globalize(rs, spec, &betas, &local, n)?.char;
    let shift = spec.lambda_minus + omega_m(rs, &betas, spec.m)?;
    let factor = CharPoly::from_terms(None, [(Weight::zero(rs.rank()), crate::charring::q_factor(rs, &shift))]);
    let back = global.checked_mul(&factor)?;
    let diff = back.checked_sub(&local.truncate(n)?)?;
    Ok(report(
        format!("{} (N={n}): ch 𝕎(m)·(q)_(λ_-+ω(m)) = ch W(m)", spec_label(rs, spec)),
        start,
        (!diff.is_zero()).then_some(diff),
        None,
        None,
    ))
}

/// The `σ(λ_-)`-weight series of `ch 𝕌_λ` equals `(q)^{-1}_{(λ_-)_σ}`.
pub fn verify_u_global_extreme(qbg: &Qbg, lambda: &Weight, n: u32) -> Result<VerificationReport> {
    let start = Instant::now();
    let rs = qbg.root_system();
    let spec = ModuleSpec::for_u(rs, lambda)?;
    let global = char_u_global(qbg, lambda, n)?.char;
    let ls = lambda_sigma(rs, &spec.lambda_minus, &spec.sigma)?;
    let expected = q_factor_inv(rs, &ls, n).poly;
    let got = global.coefficient(lambda);
    let diff = CharPoly::from_terms(Some(n), [(*lambda, got - expected)]);
    Ok(report(
        format!("{} (N={n}): [x^{lambda}] ch 𝕌_{lambda} = 1/(q)_{ls}", rs.cartan_type()),
        start,
        (!diff.is_zero()).then_some(diff),
        None,
        None,
    ))
}

/// Windows `(k, m, i, j)` where `word[k..k+m]` is the alternating braid
/// `i j i …` of the relation of order `m`.
pub fn braid_windows(rs: &RootSystem, word: &ReducedWord) -> Result<Vec<(usize, usize, usize, usize)>> {
    let l = &word.letters;
    let mut out = Vec::new();
    for k in 0..l.len().saturating_sub(1) {
        let (i, j) = (l[k], l[k + 1]);
        if i == j {
            continue;
        }
        let Some(m) = coxeter_order(rs, i, j)? else { continue };
        if k + m <= l.len() && (0..m).all(|r| l[k + r] == if r % 2 == 0 { i } else { j }) {
            out.push((k, m, i, j));
        }
    }
    Ok(out)
}

/// Applies the braid move at a window from [`braid_windows`].
pub fn apply_braid_move(word: &ReducedWord, (k, m, i, j): (usize, usize, usize, usize)) -> ReducedWord {
    let mut w = word.clone();
    for r in 0..m {
        w.letters[k + r] = if r % 2 == 0 { j } else { i };
    }
    w
}

/// Word and β-sequence invariants over the box `|coords| ≤ b`: for
/// antidominant `μ`, every `β` of `t_μ` has negative finite part and
/// positive degree, `-α∨` occurs `-<μ, α∨>` times, and every braid move
/// reverses exactly its window of β's; for every `λ`,
/// `ℓ(t_{λ_-}) = ℓ(u(λ)) + ℓ(v(λ))` and `reduced_word(u(λ))` round-trips.
pub fn verify_words(rs: &RootSystem, b: i32) -> Result<Vec<VerificationReport>> {
    let ty = rs.cartan_type();
    let mut out = Vec::new();
    for mu in antidominant_box(rs.rank(), b) {
        let start = Instant::now();
        let word = translation_word(rs, &mu);
        let betas = beta_sequence(rs, &word)?;
        let mut problems = Vec::new();
        if !betas.iter().all(|x| x.deg > 0 && x.bar.is_negative()) {
            problems.push("a β has nonnegative finite part or degree ≤ 0".to_string());
        }
        for c in rs.positive_coroots() {
            let count = betas.iter().filter(|x| x.bar == -*c).count() as i64;
            if count != -mu.dot(c) {
                problems.push(format!("-{c} occurs {count} times, expected {}", -mu.dot(c)));
            }
        }
        let target = AffElt::translation(mu);
        for win in braid_windows(rs, &word)? {
            let next = apply_braid_move(&word, win);
            if next.check_reduced(rs).ok() != Some(target) {
                problems.push(format!("braid move at {win:?} breaks the word"));
                continue;
            }
            let after = beta_sequence(rs, &next)?;
            let (k, m, _, _) = win;
            let same_outside = (0..betas.len())
                .filter(|&p| p < k || p >= k + m)
                .all(|p| betas[p] == after[p]);
            let reversed = (0..m).all(|r| after[k + r] == betas[k + m - 1 - r]);
            if !same_outside || !reversed {
                problems.push(format!("braid move at {win:?} does not reverse its β-window"));
            }
        }
        let note = (!problems.is_empty()).then(|| problems.join("; "));
        out.push(report(
            format!("{ty} μ={mu}: β-sequence invariants"),
            start,
            None,
            None,
            note,
        ));
    }
    for lambda in weight_box(rs.rank(), b) {
        let start = Instant::now();
        let (lm, _) = rs.to_antidominant(&lambda);
        let u = u_of(rs, &lambda);
        let lt = aff_length(rs, &AffElt::translation(lm));
        let lu = aff_length(rs, &u);
        let lv = rs.length(&v_of(rs, &lambda));
        let mut problems = Vec::new();
        if lt != lu + lv {
            problems.push(format!("ℓ(t_λ-) = {lt} but ℓ(u) + ℓ(v) = {lu} + {lv}"));
        }
        let word = reduced_word(rs, &u);
        if word.check_reduced(rs).ok() != Some(u) {
            problems.push("reduced word of u(λ) does not round-trip".to_string());
        }
        let note = (!problems.is_empty()).then(|| problems.join("; "));
        out.push(report(
            format!("{ty} λ={lambda}: ℓ(t_λ-) = ℓ(u) + ℓ(v), word round trip"),
            start,
            None,
            None,
            note,
        ));
    }
    Ok(out)
}

/// Antidominant weights with coordinates in `-b..=0`.
pub fn antidominant_box(rank: usize, b: i32) -> Vec<Weight> {
    weight_box(rank, b)
        .into_iter()
        .filter(Weight::is_antidominant)
        .collect()
}

/// All weights with coordinates in `-b..=b`, lexicographically sorted.
pub fn weight_box(rank: usize, b: i32) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i32>| {
                (-b..=b).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    let mut w: Vec<Weight> = out.iter().map(|v| Weight::new(v)).collect();
    w.sort();
    w
}

/// Every `(λ_-, μ)` in the box with `λ_- - μ` antidominant, with canonical
/// words.
pub fn spec_families(rs: &RootSystem, b: i32) -> Vec<(Weight, Weight)> {
    let ad = antidominant_box(rs.rank(), b);
    let mut out = Vec::new();
    for lm in &ad {
        for mu in &ad {
            if (*lm - *mu).is_antidominant() {
                out.push((*lm, *mu));
            }
        }
    }
    out
}

/// All characters `ch W_{σ(λ_-)}(m)` for one `(λ_-, μ)` and every `σ ∈ W`,
/// `0 ≤ m ≤ ℓ(t_μ)`; `table[σ][m]` with `σ` indexed as in the QBG.
pub struct CharTable {
    pub base: ModuleSpec,
    pub betas: Vec<AffineCoroot>,
    pub table: Vec<Vec<CharPoly>>,
}

impl CharTable {
    pub fn new(qbg: &Qbg, lambda_minus: Weight, mu: Weight) -> Result<Self> {
        let rs = qbg.root_system();
        let base = ModuleSpec::new(rs, WeylElt::identity(rs.rank()), lambda_minus, mu, 0)?;
        let betas = base.betas(rs)?;
        let table = qbg
            .vertices()
            .par_iter()
            .map(|sigma| {
                let spec = base.with_sigma(*sigma);
                (0..=base.prefix_len)
                    .map(|m| path_character(qbg, &spec.z0(), &betas, m, false))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { base, betas, table })
    }

    pub fn spec(&self, sigma: WeylElt, m: usize) -> ModuleSpec {
        ModuleSpec {
            sigma,
            m,
            ..self.base.clone()
        }
    }
}

/// Local decomposition checks for every `σ` and `1 ≤ m ≤ ℓ(t_μ)` in a table.
pub fn decomposition_sweep_local(qbg: &Qbg, t: &CharTable) -> Result<Vec<VerificationReport>> {
    let rs = qbg.root_system();
    let mut out = Vec::new();
    for (si, sigma) in qbg.vertices().iter().enumerate() {
        for m in 1..=t.base.prefix_len {
            let start = Instant::now();
            let spec = t.spec(*sigma, m);
            let step = first_step_prediction(qbg, &spec, &t.betas)?;
            let kernel = step.as_ref().map(|s| &t.table[qbg.index_of(&s.sigma_prime)][m]);
            out.push(check_difference(
                spec_label(rs, &spec),
                start,
                &t.table[si][m - 1],
                &t.table[si][m],
                kernel.zip(step.as_ref().map(|s| &s.predicted)),
            )?);
        }
    }
    Ok(out)
}

/// Global decomposition and ratio checks for every entry of a table.
pub fn decomposition_sweep_global(qbg: &Qbg, t: &CharTable, n: u32) -> Result<Vec<VerificationReport>> {
    let rs = qbg.root_system();
    let global = |si: usize, m: usize| -> Result<CharPoly> {
        let spec = t.spec(qbg.vertices()[si], m);
        Ok(globalize(rs, &spec, &t.betas, &t.table[si][m], n)?.char)
    };
    let mut out = Vec::new();
    for (si, sigma) in qbg.vertices().iter().enumerate() {
        for m in 1..=t.base.prefix_len {
            let start = Instant::now();
            let spec = t.spec(*sigma, m);
            let step = first_step_prediction(qbg, &spec, &t.betas)?;
            let kernel = match &step {
                Some(s) => Some(global(qbg.index_of(&s.sigma_prime), m - 1)?),
                None => None,
            };
            out.push(check_difference(
                format!("{} (global, N={n})", spec_label(rs, &spec)),
                start,
                &global(si, m - 1)?,
                &global(si, m)?,
                kernel.as_ref().zip(step.as_ref().map(|s| &s.predicted)),
            )?);
        }
    }
    Ok(out)
}
