//! Exact linear algebra over the rationals: assembled systems with labelled
//! columns, rank and kernel extraction by Gaussian elimination with
//! deterministic pivoting, kernel bases normalized to primitive integer
//! vectors with a fixed sign convention.

use crate::rat::Rat;
use num::{BigInt, Integer, One, Signed, Zero};

/// A dense exact rational matrix seen as an equation system `A x = b`
/// (homogeneous when no right-hand side is attached).
#[derive(Clone, Debug)]
pub struct LinSystem {
    pub rows: Vec<Vec<Rat>>,
    pub ncols: usize,
}

impl LinSystem {
    pub fn new(ncols: usize) -> Self {
        LinSystem {
            rows: Vec::new(),
            ncols,
        }
    }

    pub fn push_row(&mut self, row: Vec<Rat>) {
        assert_eq!(row.len(), self.ncols);
        if row.iter().any(|c| !c.is_zero()) {
            self.rows.push(row);
        }
    }

    /// Reduced row echelon form; returns the pivot column of each row.
    fn rref(&self) -> (Vec<Vec<Rat>>, Vec<usize>) {
        let mut m = self.rows.clone();
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..self.ncols {
            let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            let inv = Rat::one() / m[row][col].clone();
            for c in col..self.ncols {
                let v = m[row][c].clone() * &inv;
                m[row][c] = v;
            }
            for r in 0..m.len() {
                if r != row && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for c in col..self.ncols {
                        let v = m[r][c].clone() - &factor * &m[row][c];
                        m[r][c] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == m.len() {
                break;
            }
        }
        m.truncate(row);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the kernel, one vector per free column in column order.
    /// Vectors are scaled to primitive integer entries with the first
    /// nonzero entry positive.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (m, pivots) = self.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.ncols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if is_pivot[free] {
                continue;
            }
            let mut vec = vec![Rat::zero(); self.ncols];
            vec[free] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                vec[p] = -m[r][free].clone();
            }
            basis.push(normalize_primitive(vec));
        }
        basis
    }

    /// Solve `A x = rhs`; `None` when inconsistent, `Err` when undetermined.
    pub fn solve_unique(&self, rhs: &[Rat]) -> Result<Option<Vec<Rat>>, String> {
        assert_eq!(rhs.len(), self.rows.len());
        let mut aug = LinSystem::new(self.ncols + 1);
        for (row, b) in self.rows.iter().zip(rhs) {
            let mut r = row.clone();
            r.push(b.clone());
            aug.rows.push(r);
        }
        let (m, pivots) = aug.rref();
        if pivots.contains(&self.ncols) {
            return Ok(None); // inconsistent
        }
        if pivots.len() < self.ncols {
            return Err("underdetermined system".to_string());
        }
        let mut x = vec![Rat::zero(); self.ncols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = m[r][self.ncols].clone();
        }
        Ok(Some(x))
    }
}

/// Scale a rational vector to primitive integer entries, first nonzero positive.
pub fn normalize_primitive(v: Vec<Rat>) -> Vec<Rat> {
    let mut lcm = BigInt::one();
    for c in v.iter().filter(|c| !c.is_zero()) {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut g = BigInt::zero();
    for c in ints.iter().filter(|c| !c.is_zero()) {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return v;
    }
    if let Some(first) = ints.iter().find(|c| !c.is_zero()) {
        if first.is_negative() {
            g = -g;
        }
    }
    ints.into_iter()
        .map(|c| Rat::from_integer(c / &g))
        .collect()
}
