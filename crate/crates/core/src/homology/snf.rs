//! Smith normal form over the integers with exact arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type BigMatrix = Vec<Vec<BigInt>>;

/// `U · M · V = D` with `U`, `V` unimodular, so `M = R · D · C` for
/// `R = U⁻¹`, `C = V⁻¹`. The diagonal of `D` is non-negative and each entry
/// divides the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub d: BigMatrix,
    pub u: BigMatrix,
    pub u_inv: BigMatrix,
    pub v: BigMatrix,
    pub v_inv: BigMatrix,
}

impl SmithForm {
    /// The nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..n).map(|i| self.d[i][i].clone()).filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// `R = U⁻¹`.
    pub fn row_ops(&self) -> &BigMatrix {
        &self.u_inv
    }

    /// `C = V⁻¹`.
    pub fn col_ops(&self) -> &BigMatrix {
        &self.v_inv
    }
}

pub fn identity(n: usize) -> BigMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn mat_mul(a: &BigMatrix, b: &BigMatrix) -> BigMatrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[t][j].is_zero() {
                    out[i][j] += &a[i][t] * &b[t][j];
                }
            }
        }
    }
    out
}

/// Determinant by fraction-free Gaussian elimination.
pub fn determinant(a: &BigMatrix) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

struct Work {
    m: BigMatrix,
    u: BigMatrix,
    u_inv: BigMatrix,
    v: BigMatrix,
    v_inv: BigMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.m.swap(i, j);
            self.u.swap(i, j);
            for row in &mut self.u_inv {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.m {
                row.swap(i, j);
            }
            for row in &mut self.v {
                row.swap(i, j);
            }
            self.v_inv.swap(i, j);
        }
    }

    /// row_i −= q · row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &BigInt) {
        for mat in [&mut self.m, &mut self.u] {
            let src = mat[t].clone();
            for (x, s) in mat[i].iter_mut().zip(&src) {
                *x -= q * s;
            }
        }
        for row in &mut self.u_inv {
            let add = q * &row[i];
            row[t] += add;
        }
    }

    /// col_j −= q · col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &BigInt) {
        for mat in [&mut self.m, &mut self.v] {
            for row in mat.iter_mut() {
                let s = q * &row[t];
                row[j] -= s;
            }
        }
        let src = self.v_inv[j].clone();
        for (x, s) in self.v_inv[t].iter_mut().zip(&src) {
            *x += q * s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.m[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -x.clone();
        }
        for row in &mut self.u_inv {
            row[i] = -row[i].clone();
        }
    }
}

/// Smith normal form with transforms. Pivots are chosen by minimal absolute
/// value.
pub fn smith_normal_form(m: &BigMatrix) -> SmithForm {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut w = Work { m: m.clone(), u: identity(rows), u_inv: identity(rows), v: identity(cols), v_inv: identity(cols) };
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !w.m[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| w.m[i][j].abs() < w.m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(w);
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                if !w.m[i][t].is_zero() {
                    let q = w.m[i][t].div_floor(&w.m[t][t]);
                    w.row_sub(i, t, &q);
                    if !w.m[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !w.m[t][j].is_zero() {
                    let q = w.m[t][j].div_floor(&w.m[t][t]);
                    w.col_sub(j, t, &q);
                    if !w.m[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&w.m[i][j] % &w.m[t][t]).is_zero()));
            match offending {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    w.row_sub(t, i, &minus_one);
                }
                None => break,
            }
        }
        if w.m[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    finish(w)
}

fn finish(w: Work) -> SmithForm {
    SmithForm { d: w.m, u: w.u, u_inv: w.u_inv, v: w.v, v_inv: w.v_inv }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> BigMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn check(m: &BigMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        assert_eq!(mat_mul(&mat_mul(&s.u, m), &s.v), s.d);
        assert_eq!(mat_mul(&mat_mul(&s.u_inv, &s.d), &s.v_inv), *m);
        assert_eq!(mat_mul(&s.u, &s.u_inv), identity(m.len()));
        assert_eq!(mat_mul(&s.v, &s.v_inv), identity(m.first().map_or(0, Vec::len)));
        s
    }

    #[test]
    fn two_by_two() {
        let s = check(&big(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_and_empty() {
        let s = check(&big(&[&[0, 0], &[0, 0], &[0, 0]]));
        assert!(s.invariant_factors().is_empty());
        let e: BigMatrix = Vec::new();
        assert_eq!(smith_normal_form(&e).rank(), 0);
    }

    #[test]
    fn divisibility_is_enforced() {
        // diag(2, 3) has Smith form diag(1, 6)
        let s = check(&big(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&big(&[&[2, 1], &[1, 1]])), BigInt::from(1));
        assert_eq!(determinant(&big(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&big(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])), BigInt::from(-3));
    }
}
