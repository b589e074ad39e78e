//! Exact contraction of vertex spin models by greedy bucket elimination.
//!
//! A model is a set of factors, each a table over a few spin variables with
//! values in `{0..q-1}`.  Variables are summed out one at a time in
//! min-degree order; on the laminar double-tree graphs produced by
//! [`crate::gamma`] the intermediate scopes stay small, so partition
//! functions on graphs far beyond brute-force range evaluate exactly.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_complex::Complex64;

/// Ring of values a spin model can be contracted over.
pub trait SpinScalar: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn from_count(n: u64) -> Self;
}

impl SpinScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn from_count(n: u64) -> Self {
        n as f64
    }
}

impl SpinScalar for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn add(&self, other: &Self) -> Self {
        self.checked_add(*other).expect("spin sum overflow")
    }
    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(*other).expect("spin product overflow")
    }
    fn from_count(n: u64) -> Self {
        n as i128
    }
}

impl SpinScalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn from_count(n: u64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
}

/// A table over the variables in `scope` (strictly increasing), indexed in
/// mixed radix `q` with the first scope variable most significant.
#[derive(Clone, Debug)]
pub struct Factor<T> {
    pub scope: Vec<usize>,
    pub table: Vec<T>,
}

impl<T: SpinScalar> Factor<T> {
    /// A factor on one edge `(u, v)` with `weight(s_u, s_v)`.
    pub fn on_edge(u: usize, v: usize, q: u32, weight: impl Fn(u32, u32) -> T) -> Factor<T> {
        assert_ne!(u, v, "loops have no spin factor");
        let (a, b, flip) = if u < v { (u, v, false) } else { (v, u, true) };
        let q = q as usize;
        let mut table = Vec::with_capacity(q * q);
        for sa in 0..q {
            for sb in 0..q {
                let (su, sv) = if flip { (sb, sa) } else { (sa, sb) };
                table.push(weight(su as u32, sv as u32));
            }
        }
        Factor {
            scope: vec![a, b],
            table,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct WidthExceeded {
    pub width: usize,
    pub cap: usize,
}

impl fmt::Display for WidthExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "elimination width {} exceeds cap {}",
            self.width, self.cap
        )
    }
}

const WIDTH_CAP: usize = 12;

/// Contracts the model: `sum over all spin assignments of the product of all
/// factor values`, times `q` for every variable in `0..n` missing from every
/// scope.
pub fn contract<T: SpinScalar>(
    n: usize,
    q: u32,
    mut factors: Vec<Factor<T>>,
) -> Result<T, WidthExceeded> {
    let mut touched = vec![false; n];
    for f in &factors {
        for &v in &f.scope {
            touched[v] = true;
        }
    }
    let vars: Vec<usize> = (0..n).filter(|&v| touched[v]).collect();
    let mut alive: Vec<bool> = vec![true; n];
    let mut remaining = vars.clone();
    while let Some(&v) = pick_min_degree(&remaining, &factors) {
        let (with_v, rest): (Vec<Factor<T>>, Vec<Factor<T>>) =
            factors.into_iter().partition(|f| f.scope.contains(&v));
        let joined = join(&with_v, q)?;
        let summed = sum_out(&joined, v, q);
        factors = rest;
        if !summed.scope.is_empty() {
            factors.push(summed);
        } else {
            factors.push(summed); // scalar factor, folded below
        }
        alive[v] = false;
        remaining.retain(|&u| u != v);
    }
    let mut out = T::one();
    for f in &factors {
        debug_assert!(f.scope.is_empty());
        out = out.mul(&f.table[0]);
    }
    // isolated variables contribute a free sum of q ones each
    let isolated = (0..n).filter(|&v| !touched[v]).count();
    for _ in 0..isolated {
        out = out.mul(&T::from_count(q as u64));
    }
    Ok(out)
}

fn pick_min_degree<T>(remaining: &[usize], factors: &[Factor<T>]) -> Option<&usize> {
    remaining.iter().min_by_key(|&&v| {
        let mut joint: Vec<usize> = Vec::new();
        for f in factors {
            if f.scope.contains(&v) {
                for &u in &f.scope {
                    if u != v && !joint.contains(&u) {
                        joint.push(u);
                    }
                }
            }
        }
        joint.len()
    })
}

fn join<T: SpinScalar>(factors: &[Factor<T>], q: u32) -> Result<Factor<T>, WidthExceeded> {
    let q = q as usize;
    let mut scope: Vec<usize> = Vec::new();
    for f in factors {
        for &v in &f.scope {
            if !scope.contains(&v) {
                scope.push(v);
            }
        }
    }
    scope.sort_unstable();
    if scope.len() > WIDTH_CAP {
        return Err(WidthExceeded {
            width: scope.len(),
            cap: WIDTH_CAP,
        });
    }
    let size = q.pow(scope.len() as u32);
    let mut table = vec![T::one(); size];
    // positions of each factor's scope inside the joint scope
    for f in factors {
        let pos: Vec<usize> = f
            .scope
            .iter()
            .map(|v| scope.iter().position(|u| u == v).unwrap())
            .collect();
        let mut assign = vec![0usize; scope.len()];
        for (idx, cell) in table.iter_mut().enumerate() {
            // decode mixed radix, most significant first
            let mut rest = idx;
            for i in (0..scope.len()).rev() {
                assign[i] = rest % q;
                rest /= q;
            }
            let mut fidx = 0;
            for &p in &pos {
                fidx = fidx * q + assign[p];
            }
            *cell = cell.mul(&f.table[fidx]);
        }
    }
    Ok(Factor { scope, table })
}

fn sum_out<T: SpinScalar>(f: &Factor<T>, v: usize, q: u32) -> Factor<T> {
    let q = q as usize;
    let pos = f
        .scope
        .iter()
        .position(|&u| u == v)
        .expect("variable in scope");
    let new_scope: Vec<usize> = f.scope.iter().copied().filter(|&u| u != v).collect();
    let new_size = q.pow(new_scope.len() as u32);
    let mut table = vec![T::zero(); new_size];
    let k = f.scope.len();
    let mut assign = vec![0usize; k];
    for (idx, val) in f.table.iter().enumerate() {
        let mut rest = idx;
        for i in (0..k).rev() {
            assign[i] = rest % q;
            rest /= q;
        }
        let mut nidx = 0;
        for (i, &a) in assign.iter().enumerate() {
            if i != pos {
                nidx = nidx * q + a;
            }
        }
        table[nidx] = table[nidx].add(val);
    }
    Factor {
        scope: new_scope,
        table,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force reference contraction.
    fn brute<T: SpinScalar>(n: usize, q: u32, factors: &[Factor<T>]) -> T {
        let q = q as usize;
        let mut total = T::zero();
        let size = q.pow(n as u32);
        for idx in 0..size {
            let mut assign = vec![0usize; n];
            let mut rest = idx;
            for i in (0..n).rev() {
                assign[i] = rest % q;
                rest /= q;
            }
            let mut term = T::one();
            for f in factors {
                let mut fidx = 0;
                for &v in &f.scope {
                    fidx = fidx * q + assign[v];
                }
                term = term.mul(&f.table[fidx]);
            }
            total = total.add(&term);
        }
        total
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        use rand_chacha::rand_core::{RngCore, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        for _ in 0..30 {
            let n = 2 + (rng.next_u64() % 5) as usize;
            let q = 2 + (rng.next_u64() % 3) as u32;
            let mut factors = Vec::new();
            let edges = 1 + (rng.next_u64() % 8) as usize;
            for _ in 0..edges {
                let u = (rng.next_u64() % n as u64) as usize;
                let v = (rng.next_u64() % n as u64) as usize;
                if u == v {
                    continue;
                }
                let bump = (rng.next_u64() % 3) as i128;
                factors.push(Factor::on_edge(u, v, q, |s, t| {
                    if s == t {
                        1 + bump
                    } else {
                        2
                    }
                }));
            }
            let fast = contract(n, q, factors.clone()).unwrap();
            let slow = brute(n, q, &factors);
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn isolated_vertices_multiply_by_q() {
        let factors: Vec<Factor<i128>> = vec![];
        assert_eq!(contract(3, 4, factors).unwrap(), 64);
    }
}
