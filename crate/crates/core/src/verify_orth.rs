//! Constant-term orthogonality between `t = ∞` characters (`ch U`) and
//! `t = 0` characters (`ch D`).

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::charring::{cherednik_kernel_t0, pair_c_with_kernel, CharPoly, QSeries};
use crate::demazure::e_zero;
use crate::error::{Error, Result};
use crate::macdinf::{char_u, weight_box};
use crate::qbgpath::Qbg;
use crate::rootsys::{CartanType, RootSystem, Weight};

/// Which `U`-character is paired with `ch D_λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pairing {
    /// `(ch U_μ, ch D_λ)_C`.
    Stated,
    /// `(ch U_{-μ}, ch D_λ)_C`.
    Dual,
}

impl Pairing {
    fn u_weight(self, mu: &Weight) -> Weight {
        match self {
            Pairing::Stated => *mu,
            Pairing::Dual => -*mu,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrthStatus {
    Ok,
    Fail,
    /// `λ - μ ∉ Q`; not computed.
    SkippedTrivial,
    /// `λ = μ`; computed and reported, not asserted.
    Diagonal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthEntry {
    pub mu: Weight,
    pub lambda: Weight,
    pub status: OrthStatus,
    pub first_nonzero_order: Option<i64>,
    pub series: Option<QSeries>,
}

impl OrthEntry {
    pub fn to_json(&self) -> Value {
        json!({
            "mu": self.mu.coords(),
            "lambda": self.lambda.coords(),
            "status": self.status,
            "first_nonzero_order": self.first_nonzero_order,
            "series": self.series.as_ref().map(|s| s.to_json()),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthReport {
    pub cartan_type: CartanType,
    pub n: u32,
    pub pairing: Pairing,
    pub pairs: Vec<OrthEntry>,
}

impl OrthReport {
    pub fn all_ok(&self) -> bool {
        self.pairs.iter().all(|p| p.status != OrthStatus::Fail)
    }

    pub fn count(&self, status: OrthStatus) -> usize {
        self.pairs.iter().filter(|p| p.status == status).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &OrthEntry> {
        self.pairs.iter().filter(|p| p.status == OrthStatus::Fail)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "type": self.cartan_type.to_string(),
            "N": self.n,
            "pairing": self.pairing,
            "pairs": self.pairs.iter().map(OrthEntry::to_json).collect::<Vec<_>>(),
        })
    }

    /// One row per pair.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<14} {:<14} {:<16} {:<6} series",
            "mu", "lambda", "status", "first"
        );
        for p in &self.pairs {
            let status = match p.status {
                OrthStatus::Ok => "ok",
                OrthStatus::Fail => "FAIL",
                OrthStatus::SkippedTrivial => "skipped-trivial",
                OrthStatus::Diagonal => "diagonal",
            };
            let first = p.first_nonzero_order.map_or("-".to_string(), |k| k.to_string());
            let series = p.series.as_ref().map_or(String::new(), |s| s.to_string());
            let _ = writeln!(
                s,
                "{:<14} {:<14} {:<16} {:<6} {}",
                p.mu.to_string(),
                p.lambda.to_string(),
                status,
                first,
                series
            );
        }
        s
    }
}

fn require_ade(rs: &RootSystem) -> Result<()> {
    if !rs.cartan_type().is_simply_laced() {
        return Err(Error::UnsupportedType(rs.cartan_type().to_string()));
    }
    Ok(())
}

fn entry(
    qbg: &Qbg,
    kernel: &CharPoly,
    pairing: Pairing,
    mu: &Weight,
    lambda: &Weight,
    u_cache: Option<&CharPoly>,
    d_cache: Option<&CharPoly>,
) -> Result<OrthEntry> {
    let rs = qbg.root_system();
    let u = match u_cache {
        Some(u) => u.clone(),
        None => char_u(qbg, &pairing.u_weight(mu))?.char,
    };
    let d = match d_cache {
        Some(d) => d.clone(),
        None => e_zero(rs, lambda)?,
    };
    let series = pair_c_with_kernel(&u, &d, kernel)?;
    let first = series.first_nonzero_order();
    let status = if mu == lambda {
        OrthStatus::Diagonal
    } else if first.is_none() {
        OrthStatus::Ok
    } else {
        OrthStatus::Fail
    };
    Ok(OrthEntry {
        mu: *mu,
        lambda: *lambda,
        status,
        first_nonzero_order: first,
        series: Some(series),
    })
}

/// Pairs `ch U_μ` (or `ch U_{-μ}` for [`Pairing::Dual`]) with `E_λ(x, q, 0)`
/// modulo `q^n`. Off-diagonal entries are `Ok` exactly when the series
/// vanishes.
pub fn verify_orthogonality(qbg: &Qbg, mu: &Weight, lambda: &Weight, n: u32, pairing: Pairing) -> Result<OrthEntry> {
    let rs = qbg.root_system();
    require_ade(rs)?;
    let kernel = cherednik_kernel_t0(rs, n)?;
    entry(qbg, &kernel, pairing, mu, lambda, None, None)
}

/// All ordered pairs from the weight box `|coords| ≤ b`, sorted by `(μ, λ)`.
/// Pairs with `λ - μ ∉ Q` are reported as skipped.
pub fn orth_sweep(qbg: &Qbg, b: i32, n: u32, pairing: Pairing) -> Result<OrthReport> {
    let rs = qbg.root_system();
    require_ade(rs)?;
    let weights = if b < 0 { Vec::new() } else { weight_box(rs.rank(), b) };
    let kernel = cherednik_kernel_t0(rs, n)?;
    let us: Vec<CharPoly> = weights
        .par_iter()
        .map(|mu| Ok(char_u(qbg, &pairing.u_weight(mu))?.char))
        .collect::<Result<_>>()?;
    let ds: Vec<CharPoly> = weights.par_iter().map(|l| e_zero(rs, l)).collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..weights.len())
        .flat_map(|i| (0..weights.len()).map(move |j| (i, j)))
        .collect();
    let entries = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (mu, lambda) = (&weights[i], &weights[j]);
            if !rs.in_root_lattice(&(*lambda - *mu)) {
                return Ok(OrthEntry {
                    mu: *mu,
                    lambda: *lambda,
                    status: OrthStatus::SkippedTrivial,
                    first_nonzero_order: None,
                    series: None,
                });
            }
            entry(qbg, &kernel, pairing, mu, lambda, Some(&us[i]), Some(&ds[j]))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OrthReport {
        cartan_type: rs.cartan_type(),
        n,
        pairing,
        pairs: entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(s: &str) -> Qbg {
        Qbg::new(&RootSystem::new(s.parse().unwrap()))
    }

    #[test]
    fn empty_box() {
        let g = setup("A1");
        let r = orth_sweep(&g, -1, 4, Pairing::Stated).unwrap();
        assert!(r.pairs.is_empty());
    }

    #[test]
    fn a1_box1_pairs() {
        let g = setup("A1");
        let w = |k| Weight::new(&[k]);
        // (U_ω, D_ω) vanishes; (U_ω, D_{-ω}) is where the stated sign differs.
        assert_eq!(
            verify_orthogonality(&g, &w(1), &w(1), 8, Pairing::Dual).unwrap().status,
            OrthStatus::Diagonal
        );
        assert_eq!(
            verify_orthogonality(&g, &w(-1), &w(1), 8, Pairing::Dual)
                .unwrap()
                .status,
            OrthStatus::Ok
        );
        assert_eq!(
            verify_orthogonality(&g, &w(1), &w(-1), 8, Pairing::Dual)
                .unwrap()
                .status,
            OrthStatus::Ok
        );
        let stated = verify_orthogonality(&g, &w(1), &w(-1), 8, Pairing::Stated).unwrap();
        assert_eq!(stated.status, OrthStatus::Fail);
        assert_eq!(stated.first_nonzero_order, Some(0));
    }

    #[test]
    fn skipped_pairs_are_outside_root_lattice() {
        let g = setup("A1");
        let r = orth_sweep(&g, 1, 3, Pairing::Dual).unwrap();
        for p in &r.pairs {
            let outside = (p.lambda[0] - p.mu[0]) % 2 != 0;
            assert_eq!(p.status == OrthStatus::SkippedTrivial, outside);
        }
        assert!(r.all_ok());
    }
}
