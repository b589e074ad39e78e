//! Small numeric/algebraic helpers: union-find, integer Smith diagonal
//! form, and Jacobi eigenvalues for symmetric / Hermitian matrices.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Float;

/// Disjoint-set forest with path compression and union by size.
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        Self {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn find(&mut self, id: usize) -> usize {
        let mut root = id;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut id = id;
        while self.parent[id] != root {
            let next = self.parent[id];
            self.parent[id] = root;
            id = next;
        }
        root
    }

    /// Returns `true` when two distinct sets were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        true
    }

    pub fn component_count(&mut self) -> usize {
        let n = self.parent.len();
        (0..n).filter(|&i| self.find(i) == i).count()
    }

    pub fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i;
        }
        for s in self.size.iter_mut() {
            *s = 1;
        }
    }
}

/// Diagonal entries of a Smith-equivalent diagonal form of `m` (unimodular
/// row/column operations only; no divisibility chain is enforced).  Only the
/// nonzero entries are returned.
pub fn smith_diagonal(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut out = Vec::new();
    let mut top = 0;
    let mut left = 0;
    while top < rows && left < cols {
        // find a pivot of smallest absolute value
        let mut pivot: Option<(usize, usize)> = None;
        for i in top..rows {
            for j in left..cols {
                if m[i][j] != 0
                    && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(top, pi);
        for row in m.iter_mut() {
            row.swap(left, pj);
        }
        // clear the pivot row and column by euclidean steps
        loop {
            let p = m[top][left];
            let mut done = true;
            for i in top + 1..rows {
                if m[i][left] != 0 {
                    let q = m[i][left].div_euclid(p);
                    for j in left..cols {
                        m[i][j] -= q * m[top][j];
                    }
                    if m[i][left] != 0 {
                        m.swap(top, i);
                        done = false;
                    }
                }
            }
            for j in left + 1..cols {
                if m[top][j] != 0 {
                    let q = m[top][j].div_euclid(p);
                    for i in top..rows {
                        let sub = q * m[i][left];
                        m[i][j] -= sub;
                    }
                    if m[top][j] != 0 {
                        for row in m.iter_mut() {
                            row.swap(left, j);
                        }
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        out.push(m[top][left].abs());
        top += 1;
        left += 1;
    }
    out
}

/// Number of solutions of `M x = 0` over `Z_q`, for `M` with `nvars`
/// columns.
pub fn nullspace_count_mod(m: Vec<Vec<i128>>, nvars: usize, q: u32) -> u128 {
    let divisors = smith_diagonal(m);
    let rank = divisors.len();
    let mut count: u128 = 1;
    for d in &divisors {
        count *= gcd(*d, q as i128) as u128;
    }
    for _ in 0..nvars - rank {
        count *= q as u128;
    }
    count
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi sweeps.
pub fn symmetric_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    let scale: f64 = a
        .iter()
        .flat_map(|row| row.iter().map(|x| x.abs()))
        .fold(0.0, f64::max)
        .max(1.0);
    for _sweep in 0..200 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p][q].abs();
            }
        }
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() <= 1e-18 * scale {
                    continue;
                }
                let theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eig
}

/// Eigenvalues of a Hermitian matrix via the real symmetric embedding
/// `[[Re, -Im], [Im, Re]]` (each eigenvalue appears twice; duplicates are
/// kept, so the minimum is unaffected).
pub fn hermitian_eigenvalues(m: &[Vec<Complex64>]) -> Vec<f64> {
    let n = m.len();
    let mut b = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            b[i][j] = m[i][j].re;
            b[n + i][n + j] = m[i][j].re;
            b[i][n + j] = -m[i][j].im;
            b[n + i][j] = m[i][j].im;
        }
    }
    symmetric_eigenvalues(b)
}

pub fn hermitian_min_eigenvalue(m: &[Vec<Complex64>]) -> f64 {
    hermitian_eigenvalues(m).first().copied().unwrap_or(0.0)
}
