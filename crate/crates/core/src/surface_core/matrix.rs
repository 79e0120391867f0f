//! Exact integer matrices and Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// `U · M · V = S` with `U`, `V` unimodular and `S` diagonal, `d1 | d2 | …`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    /// Non-zero diagonal entries of `S`, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s.get(i, i).clone())
            .filter(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntegerMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds from rows; all rows must have the same length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Option<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        let data = rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect();
        Some(IntegerMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        let mut m = IntegerMatrix::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone().into());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = IntegerMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = IntegerMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn block_sum(&self, other: &IntegerMatrix) -> IntegerMatrix {
        let mut out = IntegerMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k · row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k · col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.data[idx] = -&self.data[idx];
        }
    }

    pub fn smith_normal_form(&self) -> SmithForm {
        let (r, c) = (self.rows, self.cols);
        let mut s = self.clone();
        let mut u = IntegerMatrix::identity(r);
        let mut v = IntegerMatrix::identity(c);
        for t in 0..r.min(c) {
            loop {
                // smallest non-zero entry of the trailing block
                let mut best: Option<(usize, usize)> = None;
                for i in t..r {
                    for j in t..c {
                        let x = s.get(i, j);
                        if x.is_zero() {
                            continue;
                        }
                        if best.is_none_or(|(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = best else {
                    return SmithForm { s, u, v };
                };
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);

                let pivot = s.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..r {
                    if s.get(i, t).is_zero() {
                        continue;
                    }
                    let q = -(s.get(i, t) / &pivot);
                    s.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                    clean &= s.get(i, t).is_zero();
                }
                for j in t + 1..c {
                    if s.get(t, j).is_zero() {
                        continue;
                    }
                    let q = -(s.get(t, j) / &pivot);
                    s.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                    clean &= s.get(t, j).is_zero();
                }
                if !clean {
                    continue;
                }
                // divisibility of the trailing block
                let bad_row = (t + 1..r).find(|&i| (t + 1..c).any(|j| !s.get(i, j).is_multiple_of(&pivot)));
                if let Some(i) = bad_row {
                    let one = BigInt::one();
                    s.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                    continue;
                }
                break;
            }
            if s.get(t, t).is_negative() {
                s.negate_row(t);
                u.negate_row(t);
            }
        }
        SmithForm { s, u, v }
    }

    /// Cokernel `Z^rows / column span`.
    pub fn cokernel(&self) -> AbelianGroup {
        let factors = self.smith_normal_form().invariant_factors();
        let one = BigInt::one();
        AbelianGroup {
            free_rank: self.rows - factors.len(),
            torsion: factors.into_iter().filter(|d| *d != one).collect(),
        }
    }

    /// A basis (as columns) of the integer kernel `{x : self · x = 0}`.
    pub fn kernel_basis(&self) -> IntegerMatrix {
        let snf = self.smith_normal_form();
        let rank = snf.rank();
        let mut out = IntegerMatrix::zeros(self.cols, self.cols - rank);
        for (k, j) in (rank..self.cols).enumerate() {
            for i in 0..self.cols {
                out.set(i, k, snf.v.get(i, j).clone());
            }
        }
        out
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// A finitely generated abelian group `Z^r ⊕ Z/d1 ⊕ …` with `d_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows).unwrap()
    }

    fn check(mat: &IntegerMatrix) -> SmithForm {
        let snf = mat.smith_normal_form();
        assert_eq!(snf.u.mul(mat).mul(&snf.v), snf.s);
        assert!(snf.u.determinant().abs().is_one());
        assert!(snf.v.determinant().abs().is_one());
        let f = snf.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        for i in 0..mat.rows() {
            for j in 0..mat.cols() {
                if i != j {
                    assert!(snf.s.get(i, j).is_zero());
                }
            }
        }
        snf
    }

    #[test]
    fn diag_two_three() {
        let snf = check(&IntegerMatrix::diagonal(&[2, 3]));
        assert_eq!(snf.s, IntegerMatrix::diagonal(&[1, 6]));
    }

    #[test]
    fn zero_and_identity() {
        let z = IntegerMatrix::zeros(3, 2);
        assert_eq!(check(&z).s, z);
        let id = IntegerMatrix::identity(4);
        assert_eq!(check(&id).s, id);
    }

    #[test]
    fn rectangular_and_kernel() {
        let a = m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let snf = check(&a);
        assert_eq!(snf.invariant_factors(), vec![2.into(), 6.into(), 12.into()]);
        let b = m(&[vec![1, 2, 3]]);
        let k = b.kernel_basis();
        assert_eq!(k.cols(), 2);
        assert!(b.mul(&k).is_zero());
    }

    #[test]
    fn determinant_bareiss() {
        let a = m(&[vec![2, -3, 1], vec![2, 0, -1], vec![1, 4, 5]]);
        assert_eq!(a.determinant(), BigInt::from(49));
        assert_eq!(IntegerMatrix::zeros(0, 0).determinant(), BigInt::one());
    }

    #[test]
    fn cokernel_display() {
        let g = m(&[vec![1, 1], vec![0, 2]]).cokernel();
        assert_eq!(
            g,
            AbelianGroup {
                free_rank: 0,
                torsion: vec![2.into()]
            }
        );
        assert_eq!(g.to_string(), "Z/2");
        assert_eq!(IntegerMatrix::zeros(2, 2).cokernel().to_string(), "Z^2");
    }
}
