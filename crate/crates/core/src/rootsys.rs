//! Finite root systems and Weyl groups.
//!
//! Weights are stored in the fundamental-weight basis, roots in the
//! simple-root basis and coroots in the simple-coroot basis. With these
//! choices the pairing `<λ, β∨>` is a plain dot product, and a simple root
//! `α_j` has weight coordinates given by column `j` of the Cartan matrix.
//!
//! Simple indices are numbered `1..=n` throughout the crate so that the
//! affine node can be `0`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Index, IndexMut, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_RANK: usize = 8;

macro_rules! lattice_vector {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name {
            n: u8,
            c: [i32; MAX_RANK],
        }

        impl $name {
            pub fn new(coords: &[i32]) -> Self {
                assert!(coords.len() <= MAX_RANK, "rank exceeds {MAX_RANK}");
                let mut c = [0; MAX_RANK];
                c[..coords.len()].copy_from_slice(coords);
                Self { n: coords.len() as u8, c }
            }

            pub fn zero(n: usize) -> Self {
                Self::new(&vec![0; n])
            }

            /// Unit vector for the simple index `i ∈ 1..=n`.
            pub fn unit(n: usize, i: usize) -> Self {
                let mut v = Self::zero(n);
                v.c[i - 1] = 1;
                v
            }

            pub fn rank(&self) -> usize {
                self.n as usize
            }

            pub fn coords(&self) -> &[i32] {
                &self.c[..self.n as usize]
            }

            pub fn is_zero(&self) -> bool {
                self.coords().iter().all(|&x| x == 0)
            }

            pub fn scale(&self, k: i32) -> Self {
                let mut v = *self;
                for x in v.c.iter_mut() {
                    *x *= k;
                }
                v
            }

            pub fn height(&self) -> i64 {
                self.coords().iter().map(|&x| x as i64).sum()
            }
        }

        impl Index<usize> for $name {
            type Output = i32;
            fn index(&self, i: usize) -> &i32 {
                &self.coords()[i]
            }
        }

        impl IndexMut<usize> for $name {
            fn index_mut(&mut self, i: usize) -> &mut i32 {
                let n = self.n as usize;
                &mut self.c[..n][i]
            }
        }

        impl Add for $name {
            type Output = Self;
            fn add(mut self, rhs: Self) -> Self {
                self += rhs;
                self
            }
        }

        impl AddAssign for $name {
            fn add_assign(&mut self, rhs: Self) {
                debug_assert_eq!(self.n, rhs.n);
                for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
                    *a += *b;
                }
            }
        }

        impl Sub for $name {
            type Output = Self;
            fn sub(mut self, rhs: Self) -> Self {
                self -= rhs;
                self
            }
        }

        impl SubAssign for $name {
            fn sub_assign(&mut self, rhs: Self) {
                debug_assert_eq!(self.n, rhs.n);
                for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
                    *a -= *b;
                }
            }
        }

        impl Neg for $name {
            type Output = Self;
            fn neg(self) -> Self {
                self.scale(-1)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}{:?}", stringify!($name), self.coords())
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (k, x) in self.coords().iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                self.coords().serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let v = Vec::<i32>::deserialize(d)?;
                if v.len() > MAX_RANK {
                    return Err(serde::de::Error::custom("rank too large"));
                }
                Ok(Self::new(&v))
            }
        }
    };
}

lattice_vector!(
    /// Integral weight in the fundamental-weight basis.
    Weight
);
lattice_vector!(
    /// Element of the root lattice in the simple-root basis.
    RootVec
);
lattice_vector!(
    /// Element of the coroot lattice in the simple-coroot basis.
    CorootVec
);

impl Weight {
    pub fn is_dominant(&self) -> bool {
        self.coords().iter().all(|&x| x >= 0)
    }

    pub fn is_antidominant(&self) -> bool {
        self.coords().iter().all(|&x| x <= 0)
    }

    /// The pairing `<self, β∨>` without a rank check.
    pub fn dot(&self, b: &CorootVec) -> i64 {
        self.coords()
            .iter()
            .zip(b.coords())
            .map(|(&x, &y)| x as i64 * y as i64)
            .sum()
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Comma-separated fundamental coordinates, e.g. `-1,2`.
    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i32>()
                    .map_err(|_| Error::Parse(format!("bad weight coordinate {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.is_empty() || coords.len() > MAX_RANK {
            return Err(Error::Parse(format!("bad weight {s:?}")));
        }
        Ok(Weight::new(&coords))
    }
}

impl RootVec {
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.coords().iter().all(|&x| x >= 0)
    }
}

impl CorootVec {
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.coords().iter().all(|&x| x >= 0)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.coords().iter().all(|&x| x <= 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub letter: Letter,
    pub rank: usize,
}

impl CartanType {
    pub fn new(letter: Letter, rank: usize) -> Result<Self> {
        let ok = match letter {
            Letter::A => rank >= 1,
            Letter::B | Letter::C => rank >= 2,
            Letter::D => rank >= 3,
            Letter::E => (6..=8).contains(&rank),
            Letter::F => rank == 4,
            Letter::G => rank == 2,
        };
        if !ok || rank > MAX_RANK {
            return Err(Error::InvalidType(format!("{letter:?}{rank}")));
        }
        Ok(Self { letter, rank })
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.letter, Letter::A | Letter::D | Letter::E)
    }

    /// `a[i][j] = <α_{i+1}∨, α_{j+1}>` in Bourbaki numbering.
    pub fn cartan_matrix(&self) -> Vec<Vec<i32>> {
        let n = self.rank;
        let mut a = vec![vec![0; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.letter {
            Letter::A | Letter::B | Letter::C | Letter::F | Letter::G => {
                for i in 0..n - 1 {
                    link(i, i + 1);
                }
            }
            Letter::D => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            Letter::E => {
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
        }
        match self.letter {
            Letter::B => a[n - 1][n - 2] = -2,
            Letter::C => a[n - 2][n - 1] = -2,
            Letter::F => a[2][1] = -2,
            Letter::G => a[0][1] = -3,
            _ => {}
        }
        a
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.letter, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Letter::A,
            Some('B') => Letter::B,
            Some('C') => Letter::C,
            Some('D') => Letter::D,
            Some('E') => Letter::E,
            Some('F') => Letter::F,
            Some('G') => Letter::G,
            _ => return Err(Error::InvalidType(s.to_string())),
        };
        let rank = chars
            .as_str()
            .parse::<usize>()
            .map_err(|_| Error::InvalidType(s.to_string()))?;
        CartanType::new(letter, rank)
    }
}

type Mat = [[i32; MAX_RANK]; MAX_RANK];

fn mat_identity(n: usize) -> Mat {
    let mut m = [[0; MAX_RANK]; MAX_RANK];
    for (i, row) in m.iter_mut().enumerate().take(n) {
        row[i] = 1;
    }
    m
}

fn mat_mul(n: usize, a: &Mat, b: &Mat) -> Mat {
    let mut m = [[0; MAX_RANK]; MAX_RANK];
    for i in 0..n {
        for k in 0..n {
            let x = a[i][k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                m[i][j] += x * b[k][j];
            }
        }
    }
    m
}

fn mat_transpose(n: usize, a: &Mat) -> Mat {
    let mut m = [[0; MAX_RANK]; MAX_RANK];
    for i in 0..n {
        for j in 0..n {
            m[i][j] = a[j][i];
        }
    }
    m
}

/// Element of the finite Weyl group, stored as its matrix on weight
/// coordinates together with the contragredient matrix on coroot
/// coordinates. Equality is equality of the weight matrices.
#[derive(Clone, Copy)]
pub struct WeylElt {
    n: u8,
    on_weights: Mat,
    on_coroots: Mat,
}

impl PartialEq for WeylElt {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.on_weights == other.on_weights
    }
}

impl Eq for WeylElt {}

impl Hash for WeylElt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        let n = self.n as usize;
        for row in &self.on_weights[..n] {
            row[..n].hash(state);
        }
    }
}

impl fmt::Debug for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElt{:?}", self.matrix())
    }
}

impl WeylElt {
    pub fn identity(n: usize) -> Self {
        let m = mat_identity(n);
        Self {
            n: n as u8,
            on_weights: m,
            on_coroots: m,
        }
    }

    pub fn rank(&self) -> usize {
        self.n as usize
    }

    pub fn is_identity(&self) -> bool {
        self.on_weights == mat_identity(self.rank())
    }

    /// Reflection `λ ↦ λ - <λ, a∨> a` for a root with weight coordinates
    /// `a` and coroot `a∨`.
    fn reflection_from(root: &Weight, coroot: &CorootVec) -> Self {
        let n = root.rank();
        let mut w = mat_identity(n);
        for (k, row) in w.iter_mut().enumerate().take(n) {
            for (j, x) in row.iter_mut().enumerate().take(n) {
                *x -= root[k] * coroot[j];
            }
        }
        Self {
            n: n as u8,
            on_weights: w,
            on_coroots: mat_transpose(n, &w),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.rank();
        Self {
            n: self.n,
            on_weights: mat_mul(n, &self.on_weights, &other.on_weights),
            on_coroots: mat_mul(n, &self.on_coroots, &other.on_coroots),
        }
    }

    pub fn inverse(&self) -> Self {
        let n = self.rank();
        Self {
            n: self.n,
            on_weights: mat_transpose(n, &self.on_coroots),
            on_coroots: mat_transpose(n, &self.on_weights),
        }
    }

    pub fn act(&self, lambda: &Weight) -> Weight {
        let n = self.rank();
        let mut out = Weight::zero(n);
        for i in 0..n {
            out[i] = (0..n).map(|j| self.on_weights[i][j] * lambda[j]).sum();
        }
        out
    }

    pub fn act_coroot(&self, beta: &CorootVec) -> CorootVec {
        let n = self.rank();
        let mut out = CorootVec::zero(n);
        for i in 0..n {
            out[i] = (0..n).map(|j| self.on_coroots[i][j] * beta[j]).sum();
        }
        out
    }

    /// Row `i` is the image of the fundamental weight `ω_{i+1}`.
    pub fn matrix(&self) -> Vec<Vec<i32>> {
        let n = self.rank();
        (0..n)
            .map(|j| (0..n).map(|i| self.on_weights[i][j]).collect())
            .collect()
    }

    /// Inverse of [`WeylElt::matrix`]; the coroot action is recovered by
    /// inverting over the rationals.
    pub fn from_matrix(images: &[Vec<i32>]) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_RANK || images.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("Weyl matrix must be square".into()));
        }
        let mut w = [[0; MAX_RANK]; MAX_RANK];
        for (j, row) in images.iter().enumerate() {
            for (i, &x) in row.iter().enumerate() {
                w[i][j] = x;
            }
        }
        let dense: Vec<Vec<i32>> = (0..n).map(|i| w[i][..n].to_vec()).collect();
        let inv = rational_inverse(&dense).ok_or_else(|| Error::Parse("Weyl matrix is singular".into()))?;
        let mut c = [[0; MAX_RANK]; MAX_RANK];
        for i in 0..n {
            for j in 0..n {
                let r = inv[j][i];
                if !r.is_integer() {
                    return Err(Error::Parse("Weyl matrix is not unimodular".into()));
                }
                c[i][j] = *r.numer() as i32;
            }
        }
        Ok(Self {
            n: n as u8,
            on_weights: w,
            on_coroots: c,
        })
    }
}

fn rational_inverse(a: &[Vec<i32>]) -> Option<Vec<Vec<Ratio<i64>>>> {
    let n = a.len();
    let mut m: Vec<Vec<Ratio<i64>>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Ratio<i64>> = row.iter().map(|&x| Ratio::from_integer(x as i64)).collect();
            r.extend((0..n).map(|j| Ratio::from_integer((i == j) as i64)));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| *m[r][col].numer() != 0)?;
        m.swap(col, piv);
        let p = m[col][col];
        for x in m[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && *m[r][col].numer() != 0 {
                let f = m[r][col];
                let pivot_row = m[col].clone();
                for (x, v) in m[r].iter_mut().zip(pivot_row) {
                    *x -= f * v;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Finite Cartan datum with its roots, coroots and Weyl-group helpers.
///
/// Roots are indexed `0..2P` where `0..P` are the positive roots (sorted by
/// height, simple roots first in index order) and `p + P` is `-root(p)`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    ty: CartanType,
    cartan: Vec<Vec<i32>>,
    roots: Vec<RootVec>,
    root_weights: Vec<Weight>,
    coroots: Vec<CorootVec>,
    root_by_weight: HashMap<Weight, usize>,
    root_by_coroot: HashMap<CorootVec, usize>,
    two_rho: Weight,
    highest_root: usize,
    highest_coroot: usize,
    fund_to_root: Vec<Vec<Ratio<i64>>>,
    simple: Vec<WeylElt>,
}

/// Reflection closure of the simple roots, applying simple reflections in
/// the given order. Returns all roots in simple-root coordinates.
pub(crate) fn root_closure(cartan: &[Vec<i32>], order: &[usize]) -> HashSet<RootVec> {
    let n = cartan.len();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    for &i in order {
        let e = RootVec::unit(n, i);
        if seen.insert(e) {
            queue.push_back(e);
        }
    }
    while let Some(b) = queue.pop_front() {
        for &i in order {
            let p: i32 = (0..n).map(|j| cartan[i - 1][j] * b[j]).sum();
            let mut r = b;
            r[i - 1] -= p;
            if seen.insert(r) {
                queue.push_back(r);
            }
        }
    }
    seen
}

/// `d_i` with `d_i a_ij = d_j a_ji`, normalised to coprime positive integers.
fn symmetrizer(cartan: &[Vec<i32>]) -> Vec<i64> {
    let n = cartan.len();
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
    d[0] = Some(Ratio::from_integer(1));
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for j in 0..n {
                if let (Some(di), None) = (d[i], d[j]) {
                    if cartan[i][j] != 0 {
                        d[j] = Some(di * cartan[i][j] as i64 / cartan[j][i] as i64);
                        changed = true;
                    }
                }
            }
        }
    }
    let d: Vec<Ratio<i64>> = d.into_iter().map(|x| x.expect("connected diagram")).collect();
    let lcm = d.iter().fold(1i64, |l, r| l.lcm(r.denom()));
    let ints: Vec<i64> = d.iter().map(|r| (r * lcm).to_integer()).collect();
    let g = ints.iter().fold(0i64, |g, x| g.gcd(x));
    ints.into_iter().map(|x| x / g).collect()
}

impl RootSystem {
    pub fn new(ty: CartanType) -> Self {
        let n = ty.rank;
        let cartan = ty.cartan_matrix();
        let order: Vec<usize> = (1..=n).collect();
        let mut positive: Vec<RootVec> = root_closure(&cartan, &order)
            .into_iter()
            .filter(|r| r.is_positive())
            .collect();
        positive.sort_by_key(|r| (r.height(), std::cmp::Reverse(*r)));

        let d = symmetrizer(&cartan);
        let norm = |c: &RootVec| -> i64 {
            let mut s = 0;
            for i in 0..n {
                for j in 0..n {
                    s += c[i] as i64 * c[j] as i64 * d[i] * cartan[i][j] as i64;
                }
            }
            s
        };
        let weight_of = |c: &RootVec| -> Weight {
            let mut w = Weight::zero(n);
            for k in 0..n {
                w[k] = (0..n).map(|j| cartan[k][j] * c[j]).sum();
            }
            w
        };
        let coroot_of = |c: &RootVec| -> CorootVec {
            let nn = norm(c);
            let mut v = CorootVec::zero(n);
            for i in 0..n {
                let num = 2 * c[i] as i64 * d[i];
                debug_assert_eq!(num % nn, 0);
                v[i] = (num / nn) as i32;
            }
            v
        };

        let p = positive.len();
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(|r| -*r));
        let root_weights: Vec<Weight> = roots.iter().map(weight_of).collect();
        let coroots: Vec<CorootVec> = roots.iter().map(coroot_of).collect();
        let root_by_weight = root_weights.iter().enumerate().map(|(i, w)| (*w, i)).collect();
        let root_by_coroot = coroots.iter().enumerate().map(|(i, c)| (*c, i)).collect();

        let mut two_rho = Weight::zero(n);
        for w in &root_weights[..p] {
            two_rho += *w;
        }
        let highest_root = (0..p).max_by_key(|&i| roots[i].height()).unwrap();
        let highest_coroot = (0..p).max_by_key(|&i| coroots[i].height()).unwrap();

        let fund_to_root = rational_inverse(&cartan).expect("Cartan matrix is invertible");
        let simple = (0..n)
            .map(|i| WeylElt::reflection_from(&root_weights[i], &coroots[i]))
            .collect();

        Self {
            ty,
            cartan,
            roots,
            root_weights,
            coroots,
            root_by_weight,
            root_by_coroot,
            two_rho,
            highest_root,
            highest_coroot,
            fund_to_root,
            simple,
        }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn num_positive_roots(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn positive_roots(&self) -> &[RootVec] {
        &self.roots[..self.num_positive_roots()]
    }

    pub fn positive_coroots(&self) -> &[CorootVec] {
        &self.coroots[..self.num_positive_roots()]
    }

    pub fn root(&self, idx: usize) -> RootVec {
        self.roots[idx]
    }

    pub fn root_weight(&self, idx: usize) -> Weight {
        self.root_weights[idx]
    }

    pub fn coroot(&self, idx: usize) -> CorootVec {
        self.coroots[idx]
    }

    pub fn is_positive(&self, idx: usize) -> bool {
        idx < self.num_positive_roots()
    }

    pub fn negate(&self, idx: usize) -> usize {
        let p = self.num_positive_roots();
        if idx < p {
            idx + p
        } else {
            idx - p
        }
    }

    /// Index of the positive root `α` with `α∨ = ±β∨`.
    pub fn positive_index_of_coroot(&self, beta: &CorootVec) -> Option<usize> {
        let i = *self.root_by_coroot.get(beta)?;
        Some(if self.is_positive(i) { i } else { self.negate(i) })
    }

    pub fn index_of_coroot(&self, beta: &CorootVec) -> Option<usize> {
        self.root_by_coroot.get(beta).copied()
    }

    pub fn index_of_root_weight(&self, w: &Weight) -> Option<usize> {
        self.root_by_weight.get(w).copied()
    }

    pub fn index_of_root(&self, r: &RootVec) -> Option<usize> {
        self.roots.iter().position(|x| x == r)
    }

    pub fn simple_coroot(&self, i: usize) -> CorootVec {
        self.coroots[i - 1]
    }

    pub fn simple_root_weight(&self, i: usize) -> Weight {
        self.root_weights[i - 1]
    }

    pub fn two_rho(&self) -> Weight {
        self.two_rho
    }

    pub fn rho(&self) -> Weight {
        Weight::new(&vec![1; self.rank()])
    }

    pub fn highest_root(&self) -> usize {
        self.highest_root
    }

    /// Index of the positive root whose coroot is the highest coroot.
    pub fn highest_coroot_root(&self) -> usize {
        self.highest_coroot
    }

    pub fn highest_coroot(&self) -> CorootVec {
        self.coroots[self.highest_coroot]
    }

    pub fn fund_to_root_basis(&self) -> &[Vec<Ratio<i64>>] {
        &self.fund_to_root
    }

    pub fn check_rank(&self, found: usize) -> Result<()> {
        if found != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found,
            });
        }
        Ok(())
    }

    pub fn pairing(&self, lambda: &Weight, beta: &CorootVec) -> Result<i64> {
        self.check_rank(lambda.rank())?;
        self.check_rank(beta.rank())?;
        Ok(lambda.dot(beta))
    }

    /// Coordinates of `λ` in the simple-root basis, over the rationals.
    pub fn to_root_coords(&self, lambda: &Weight) -> Vec<Ratio<i64>> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| self.fund_to_root[i][j] * lambda[j] as i64).sum())
            .collect()
    }

    pub fn in_root_lattice(&self, lambda: &Weight) -> bool {
        self.to_root_coords(lambda).iter().all(|r| r.is_integer())
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElt {
        self.simple[i - 1]
    }

    pub fn reflection(&self, root_idx: usize) -> WeylElt {
        WeylElt::reflection_from(&self.root_weights[root_idx], &self.coroots[root_idx])
    }

    pub fn reflection_of(&self, root: &RootVec) -> Result<WeylElt> {
        let idx = self
            .index_of_root(root)
            .ok_or_else(|| Error::NotARoot(format!("{root}")))?;
        Ok(self.reflection(idx))
    }

    pub fn act_root(&self, w: &WeylElt, root_idx: usize) -> usize {
        let img = w.act(&self.root_weights[root_idx]);
        self.root_by_weight[&img]
    }

    pub fn act_root_vec(&self, w: &WeylElt, root: &RootVec) -> Result<RootVec> {
        let idx = self
            .index_of_root(root)
            .ok_or_else(|| Error::NotARoot(format!("{root}")))?;
        Ok(self.roots[self.act_root(w, idx)])
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, w: &WeylElt) -> usize {
        self.positive_coroots()
            .iter()
            .filter(|c| w.act_coroot(c).is_negative())
            .count()
    }

    pub fn from_word(&self, word: &[usize]) -> WeylElt {
        word.iter().fold(WeylElt::identity(self.rank()), |acc, &i| {
            acc.mul(&self.simple_reflection(i))
        })
    }

    /// Reduced word by repeatedly stripping the smallest right descent.
    pub fn reduced_word(&self, w: &WeylElt) -> Vec<usize> {
        let mut x = *w;
        let mut letters = Vec::new();
        'outer: loop {
            for i in 1..=self.rank() {
                if x.act_coroot(&self.simple_coroot(i)).is_negative() {
                    letters.push(i);
                    x = x.mul(&self.simple_reflection(i));
                    continue 'outer;
                }
            }
            break;
        }
        letters.reverse();
        letters
    }

    /// Sorts `λ` into the antidominant chamber by simple reflections,
    /// returning the antidominant weight and the (minimal) Weyl element used.
    pub fn to_antidominant(&self, lambda: &Weight) -> (Weight, WeylElt) {
        let mut mu = *lambda;
        let mut v = WeylElt::identity(self.rank());
        while let Some(i) = (0..self.rank()).find(|&i| mu[i] > 0) {
            let s = self.simple_reflection(i + 1);
            mu = s.act(&mu);
            v = s.mul(&v);
        }
        (mu, v)
    }

    pub fn to_dominant(&self, lambda: &Weight) -> (Weight, WeylElt) {
        let mut mu = *lambda;
        let mut v = WeylElt::identity(self.rank());
        while let Some(i) = (0..self.rank()).find(|&i| mu[i] < 0) {
            let s = self.simple_reflection(i + 1);
            mu = s.act(&mu);
            v = s.mul(&v);
        }
        (mu, v)
    }

    pub fn longest_element(&self) -> WeylElt {
        self.to_antidominant(&self.rho()).1
    }

    /// All elements `w s_α` (α > 0) with `ℓ(w s_α) = ℓ(w) + 1`.
    pub fn bruhat_covers(&self, w: &WeylElt) -> Vec<WeylElt> {
        let l = self.length(w);
        (0..self.num_positive_roots())
            .map(|a| w.mul(&self.reflection(a)))
            .filter(|x| self.length(x) == l + 1)
            .collect()
    }

    /// Breadth-first enumeration of the whole Weyl group, identity first.
    pub fn weyl_group(&self) -> Vec<WeylElt> {
        let id = WeylElt::identity(self.rank());
        let mut seen: HashSet<WeylElt> = HashSet::from([id]);
        let mut out = vec![id];
        let mut k = 0;
        while k < out.len() {
            let w = out[k];
            k += 1;
            for i in 1..=self.rank() {
                let x = w.mul(&self.simple_reflection(i));
                if seen.insert(x) {
                    out.push(x);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    #[test]
    fn parses_types() {
        assert_eq!("A2".parse::<CartanType>().unwrap().to_string(), "A2");
        assert!("G3".parse::<CartanType>().is_err());
        assert!("D2".parse::<CartanType>().is_err());
        assert!("E9".parse::<CartanType>().is_err());
        assert!("X1".parse::<CartanType>().is_err());
        assert!("A".parse::<CartanType>().is_err());
    }

    #[test]
    fn positive_root_counts() {
        for (t, p) in [
            ("A1", 1),
            ("A2", 3),
            ("A3", 6),
            ("B2", 4),
            ("C2", 4),
            ("C3", 9),
            ("D4", 12),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
        ] {
            assert_eq!(rs(t).num_positive_roots(), p, "{t}");
        }
    }

    #[test]
    fn pairing_examples() {
        let a2 = rs("A2");
        let w1 = Weight::new(&[1, 0]);
        assert_eq!(a2.pairing(&w1, &a2.simple_coroot(1)).unwrap(), 1);
        assert_eq!(a2.pairing(&w1, &a2.simple_coroot(2)).unwrap(), 0);
        assert_eq!(a2.pairing(&a2.rho(), &a2.highest_coroot()).unwrap(), 2);
        assert!(matches!(
            a2.pairing(&Weight::new(&[1]), &a2.simple_coroot(1)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn reflections() {
        let a1 = rs("A1");
        let s = a1.simple_reflection(1);
        assert_eq!(s.act(&Weight::new(&[1])), Weight::new(&[-1]));
        assert!(s.mul(&s).is_identity());

        let a2 = rs("A2");
        assert_eq!(a2.from_word(&[1, 2, 1]), a2.from_word(&[2, 1, 2]));
        let w0 = a2.longest_element();
        assert_eq!(w0.act(&Weight::new(&[1, 0])), Weight::new(&[0, -1]));
        assert_eq!(a2.length(&w0), 3);
        assert!(matches!(
            a2.reflection_of(&RootVec::new(&[1, -1])),
            Err(Error::NotARoot(_))
        ));
    }

    #[test]
    fn bruhat_covers_of_identity() {
        let a2 = rs("A2");
        let covers = a2.bruhat_covers(&WeylElt::identity(2));
        assert_eq!(covers.len(), 2);
        assert!(covers.contains(&a2.simple_reflection(1)));
        assert!(covers.contains(&a2.simple_reflection(2)));
    }

    #[test]
    fn coroots_of_c2() {
        let c2 = rs("C2");
        let mut cs: Vec<Vec<i32>> = c2.positive_coroots().iter().map(|c| c.coords().to_vec()).collect();
        cs.sort();
        assert_eq!(cs, vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 2]]);
        assert_eq!(c2.highest_coroot(), CorootVec::new(&[1, 2]));
    }

    #[test]
    fn matrix_round_trip() {
        let g2 = rs("G2");
        for w in g2.weyl_group() {
            assert_eq!(WeylElt::from_matrix(&w.matrix()).unwrap(), w);
        }
    }

    #[test]
    fn root_lattice_membership() {
        let a2 = rs("A2");
        assert!(a2.in_root_lattice(&Weight::new(&[1, 1])));
        assert!(!a2.in_root_lattice(&Weight::new(&[1, 0])));
        assert!(a2.in_root_lattice(&Weight::new(&[2, -1])));
    }
}
