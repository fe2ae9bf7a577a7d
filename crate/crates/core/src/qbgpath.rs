//! The quantum Bruhat graph and quantum alcove paths.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::affweyl::{affine_reflection, AffElt, AffineCoroot};
use crate::charring::{CharPoly, QPoly};
use crate::error::{Error, Result};
use crate::rootsys::{CorootVec, RootSystem, Weight, WeylElt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Bruhat,
    Quantum,
}

/// Edge `w → w s_α` with `α` a positive root (by index).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QbgEdge {
    pub from: usize,
    pub to: usize,
    pub root: usize,
    pub kind: StepKind,
}

/// Kind of the edge `w → w s_α` in the quantum Bruhat graph, if any.
pub fn edge_kind(rs: &RootSystem, w: &WeylElt, alpha: usize) -> Option<StepKind> {
    let l = rs.length(w) as i64;
    let l2 = rs.length(&w.mul(&rs.reflection(alpha))) as i64;
    let height = rs.two_rho().dot(&rs.coroot(alpha));
    if l2 == l + 1 {
        Some(StepKind::Bruhat)
    } else if l2 == l - height + 1 {
        Some(StepKind::Quantum)
    } else {
        None
    }
}

/// Classifies the step `w → w s_α` (or `w s_α → w` when `reversed`) where
/// `α` is the positive root with `α∨ = ±β̄`.
pub fn classify_step(rs: &RootSystem, w: &WeylElt, bar: &CorootVec, reversed: bool) -> Result<Option<StepKind>> {
    let alpha = rs
        .positive_index_of_coroot(bar)
        .ok_or_else(|| Error::NotARoot(format!("{bar} is not a coroot")))?;
    Ok(if reversed {
        edge_kind(rs, &w.mul(&rs.reflection(alpha)), alpha)
    } else {
        edge_kind(rs, w, alpha)
    })
}

/// The quantum Bruhat graph of `W`, with lookup tables for fast walks.
#[derive(Clone, Debug)]
pub struct Qbg {
    rs: RootSystem,
    elements: Vec<WeylElt>,
    index: HashMap<WeylElt, usize>,
    lengths: Vec<usize>,
    /// `right_mul[w][p]` is the index of `w s_{α_p}`.
    right_mul: Vec<Vec<u32>>,
    kinds: Vec<Vec<Option<StepKind>>>,
    /// `root_image[w][r]` is the index of the root `w(α_r)`.
    root_image: Vec<Vec<u32>>,
    edges: Vec<QbgEdge>,
}

impl Qbg {
    pub fn new(rs: &RootSystem) -> Self {
        let elements = rs.weyl_group();
        let index: HashMap<WeylElt, usize> = elements.iter().enumerate().map(|(i, w)| (*w, i)).collect();
        let lengths: Vec<usize> = elements.iter().map(|w| rs.length(w)).collect();
        let p = rs.num_positive_roots();
        let refl: Vec<WeylElt> = (0..p).map(|a| rs.reflection(a)).collect();
        let right_mul: Vec<Vec<u32>> = elements
            .par_iter()
            .map(|w| refl.iter().map(|s| index[&w.mul(s)] as u32).collect())
            .collect();
        let heights: Vec<i64> = (0..p).map(|a| rs.two_rho().dot(&rs.coroot(a))).collect();
        let kinds: Vec<Vec<Option<StepKind>>> = (0..elements.len())
            .map(|w| {
                (0..p)
                    .map(|a| {
                        let l = lengths[w] as i64;
                        let l2 = lengths[right_mul[w][a] as usize] as i64;
                        if l2 == l + 1 {
                            Some(StepKind::Bruhat)
                        } else if l2 == l - heights[a] + 1 {
                            Some(StepKind::Quantum)
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        let root_image = elements
            .par_iter()
            .map(|w| (0..rs.num_roots()).map(|r| rs.act_root(w, r) as u32).collect())
            .collect();
        let mut edges = Vec::new();
        for (w, row) in kinds.iter().enumerate() {
            for (a, k) in row.iter().enumerate() {
                if let Some(kind) = k {
                    edges.push(QbgEdge {
                        from: w,
                        to: right_mul[w][a] as usize,
                        root: a,
                        kind: *kind,
                    });
                }
            }
        }
        Self {
            rs: rs.clone(),
            elements,
            index,
            lengths,
            right_mul,
            kinds,
            root_image,
            edges,
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn vertices(&self) -> &[WeylElt] {
        &self.elements
    }

    pub fn edges(&self) -> &[QbgEdge] {
        &self.edges
    }

    pub fn index_of(&self, w: &WeylElt) -> usize {
        self.index[w]
    }

    pub fn length_of(&self, idx: usize) -> usize {
        self.lengths[idx]
    }

    /// Kind of `w → w s_α` (forward) or `w s_α → w` (reversed).
    pub fn classify(&self, w: usize, alpha: usize, reversed: bool) -> Option<StepKind> {
        if reversed {
            self.kinds[self.right_mul[w][alpha] as usize][alpha]
        } else {
            self.kinds[w][alpha]
        }
    }

    fn vertex_label(&self, idx: usize) -> String {
        let word = self.rs.reduced_word(&self.elements[idx]);
        if word.is_empty() {
            "e".into()
        } else {
            word.iter().map(|i| format!("s{i}")).collect()
        }
    }

    fn root_label(&self, a: usize) -> String {
        let c = self.rs.root(a);
        let mut parts = Vec::new();
        for (i, &x) in c.coords().iter().enumerate() {
            match x {
                0 => {}
                1 => parts.push(format!("a{}", i + 1)),
                x => parts.push(format!("{x}a{}", i + 1)),
            }
        }
        parts.join("+")
    }

    /// Graphviz rendering: Bruhat edges solid, quantum edges dashed; labels
    /// give the root and `<2ρ, α∨>`.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph QBG_{} {{", self.rs.cartan_type());
        for i in 0..self.elements.len() {
            let _ = writeln!(s, "  v{i} [label=\"{}\"];", self.vertex_label(i));
        }
        for e in &self.edges {
            let style = match e.kind {
                StepKind::Bruhat => "solid",
                StepKind::Quantum => "dashed",
            };
            let h = self.rs.two_rho().dot(&self.rs.coroot(e.root));
            let _ = writeln!(
                s,
                "  v{} -> v{} [style={style}, label=\"{} <{h}>\"];",
                e.from,
                e.to,
                self.root_label(e.root)
            );
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "type": self.rs.cartan_type().to_string(),
            "vertices": (0..self.elements.len()).map(|i| json!({
                "id": i,
                "word": self.rs.reduced_word(&self.elements[i]),
                "length": self.lengths[i],
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!({
                "from": e.from,
                "to": e.to,
                "root": self.rs.root(e.root).coords(),
                "kind": e.kind,
            })).collect::<Vec<_>>(),
        })
    }

    /// Number of label-compatible walks starting at `start`: subsets of the
    /// label sequence (positive root indices) that trace a directed path.
    /// Computed by dynamic programming over the explicit edge list.
    pub fn count_label_paths(&self, start: usize, labels: &[usize]) -> BigInt {
        let mut by_root: Vec<Vec<&QbgEdge>> = vec![Vec::new(); self.rs.num_positive_roots()];
        for e in &self.edges {
            by_root[e.root].push(e);
        }
        let mut counts = vec![BigInt::from(0); self.elements.len()];
        counts[start] = BigInt::from(1);
        for &a in labels {
            let mut next = counts.clone();
            for e in &by_root[a] {
                next[e.to] += &counts[e.from];
            }
            counts = next;
        }
        counts.into_iter().sum()
    }

    fn prepare(&self, betas: &[AffineCoroot]) -> Result<Vec<PreparedBeta>> {
        betas
            .iter()
            .map(|b| {
                let root = self
                    .rs
                    .index_of_coroot(&b.bar)
                    .ok_or_else(|| Error::NotARoot(format!("{}", b.bar)))?;
                let alpha = if self.rs.is_positive(root) {
                    root
                } else {
                    self.rs.negate(root)
                };
                Ok(PreparedBeta {
                    alpha,
                    root,
                    deg: b.deg,
                })
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug)]
struct PreparedBeta {
    alpha: usize,
    root: usize,
    deg: i64,
}

#[derive(Clone, Copy, Debug)]
struct WalkState {
    tr: Weight,
    dir: usize,
    qdeg: i64,
}

/// A quantum alcove path: positions `J` (0-based, increasing) into a
/// β-sequence, with its points `z_0, …, z_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QAlcovePath {
    pub z0: AffElt,
    pub positions: Vec<usize>,
    pub endpoints: Vec<AffElt>,
    pub step_kinds: Vec<StepKind>,
    pub quantum_deg: i64,
}

impl QAlcovePath {
    pub fn end(&self) -> &AffElt {
        self.endpoints.last().unwrap_or(&self.z0)
    }

    /// Translation part of the end point.
    pub fn weight(&self) -> Weight {
        self.end().tr
    }

    pub fn qdeg(&self) -> i64 {
        self.quantum_deg
    }
}

struct Walker<'a> {
    qbg: &'a Qbg,
    betas: Vec<PreparedBeta>,
    reversed: bool,
}

impl Walker<'_> {
    fn step(&self, s: &WalkState, j: usize) -> Option<(WalkState, StepKind)> {
        let b = self.betas[j];
        let kind = self.qbg.classify(s.dir, b.alpha, self.reversed)?;
        let moved = self.qbg.rs.root_weight(self.qbg.root_image[s.dir][b.root] as usize);
        let next = WalkState {
            tr: s.tr - moved.scale(b.deg as i32),
            dir: self.qbg.right_mul[s.dir][b.alpha] as usize,
            qdeg: s.qdeg + if kind == StepKind::Quantum { b.deg } else { 0 },
        };
        Some((next, kind))
    }

    /// Pre-order DFS over indices `≥ from`, calling `visit` on every path.
    fn walk(
        &self,
        s: &WalkState,
        from: usize,
        stack: &mut Vec<(usize, StepKind)>,
        visit: &mut impl FnMut(&WalkState, &[(usize, StepKind)]),
    ) {
        visit(s, stack);
        for j in from..self.betas.len() {
            if let Some((next, kind)) = self.step(s, j) {
                stack.push((j, kind));
                self.walk(&next, j + 1, stack, visit);
                stack.pop();
            }
        }
    }

    fn start(&self, z0: &AffElt) -> WalkState {
        WalkState {
            tr: z0.tr,
            dir: self.qbg.index_of(&z0.dir),
            qdeg: 0,
        }
    }
}

fn materialize(
    rs: &RootSystem,
    z0: &AffElt,
    betas: &[AffineCoroot],
    stack: &[(usize, StepKind)],
    qdeg: i64,
) -> QAlcovePath {
    let mut z = *z0;
    let mut endpoints = Vec::with_capacity(stack.len());
    for &(j, _) in stack {
        z = z.mul(&affine_reflection(rs, &betas[j]).expect("validated coroot"));
        endpoints.push(z);
    }
    QAlcovePath {
        z0: *z0,
        positions: stack.iter().map(|(j, _)| *j).collect(),
        endpoints,
        step_kinds: stack.iter().map(|(_, k)| *k).collect(),
        quantum_deg: qdeg,
    }
}

/// All quantum alcove paths from `z0` along `betas`, in lexicographic order
/// of their position lists.
pub fn enumerate_paths(qbg: &Qbg, z0: &AffElt, betas: &[AffineCoroot], reversed: bool) -> Result<Vec<QAlcovePath>> {
    let walker = Walker {
        qbg,
        betas: qbg.prepare(betas)?,
        reversed,
    };
    let mut out = Vec::new();
    walker.walk(&walker.start(z0), 0, &mut Vec::new(), &mut |s, stack| {
        out.push(materialize(&qbg.rs, z0, betas, stack, s.qdeg));
    });
    Ok(out)
}

/// As [`enumerate_paths`], with the subtrees below each first step explored
/// in parallel and concatenated in order.
pub fn enumerate_paths_par(qbg: &Qbg, z0: &AffElt, betas: &[AffineCoroot], reversed: bool) -> Result<Vec<QAlcovePath>> {
    let walker = Walker {
        qbg,
        betas: qbg.prepare(betas)?,
        reversed,
    };
    let s0 = walker.start(z0);
    let branches: Vec<Vec<QAlcovePath>> = (0..betas.len())
        .into_par_iter()
        .map(|j| {
            let mut out = Vec::new();
            if let Some((next, kind)) = walker.step(&s0, j) {
                let mut stack = vec![(j, kind)];
                walker.walk(&next, j + 1, &mut stack, &mut |s, st| {
                    out.push(materialize(&qbg.rs, z0, betas, st, s.qdeg));
                });
            }
            out
        })
        .collect();
    let mut out = vec![materialize(&qbg.rs, z0, betas, &[], 0)];
    out.extend(branches.into_iter().flatten());
    Ok(out)
}

fn tally_into(acc: &mut HashMap<(Weight, i64), u64>, s: &WalkState) {
    *acc.entry((s.tr, s.qdeg)).or_insert(0) += 1;
}

/// `Σ_p x^{wt(end p)} q^{qdeg(p)}` over the paths starting at `betas[from..]`;
/// first steps are explored in parallel.
pub fn path_character(qbg: &Qbg, z0: &AffElt, betas: &[AffineCoroot], from: usize, reversed: bool) -> Result<CharPoly> {
    let walker = Walker {
        qbg,
        betas: qbg.prepare(betas)?,
        reversed,
    };
    let s0 = walker.start(z0);
    let mut acc = HashMap::new();
    tally_into(&mut acc, &s0);
    let branches: Vec<HashMap<(Weight, i64), u64>> = (from..betas.len())
        .into_par_iter()
        .map(|j| {
            let mut acc = HashMap::new();
            if let Some((next, kind)) = walker.step(&s0, j) {
                let mut stack = vec![(j, kind)];
                walker.walk(&next, j + 1, &mut stack, &mut |s, _| tally_into(&mut acc, s));
            }
            acc
        })
        .collect();
    for b in branches {
        for (k, v) in b {
            *acc.entry(k).or_insert(0) += v;
        }
    }
    Ok(CharPoly::from_terms(
        None,
        acc.into_iter()
            .map(|((w, e), c)| (w, QPoly::monomial(e, BigInt::from(c)))),
    ))
}

/// Kind of the single step from `z0` along `betas[j]`, with the point reached.
pub fn first_step(qbg: &Qbg, z0: &AffElt, beta: &AffineCoroot, reversed: bool) -> Result<Option<(StepKind, AffElt)>> {
    let alpha = qbg
        .rs
        .positive_index_of_coroot(&beta.bar)
        .ok_or_else(|| Error::NotARoot(format!("{}", beta.bar)))?;
    let w = qbg.index_of(&z0.dir);
    Ok(qbg
        .classify(w, alpha, reversed)
        .map(|k| (k, z0.mul(&affine_reflection(&qbg.rs, beta).expect("coroot checked")))))
}
