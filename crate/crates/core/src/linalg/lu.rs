use alloc::vec::Vec;
use core::fmt;

use super::Matrix;

/// Error from the LU-based solve path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LuError {
    Singular,
}

impl fmt::Display for LuError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LuError::Singular => write!(f, "matrix is singular to working precision"),
        }
    }
}

impl core::error::Error for LuError {}

/// Packed partial-pivot LU factorization of a square matrix.
pub(crate) struct Lu {
    lu: Matrix,
    perm: Vec<usize>,
    sign: f64,
    singular: bool,
}

impl Lu {
    pub fn new(a: &Matrix) -> Lu {
        let n = a.n();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let mut singular = false;
        let scale = a.norm_inf().max(1.0);

        for k in 0..n {
            let mut p = k;
            let mut best = lu[(k, k)].abs();
            for i in k + 1..n {
                let v = lu[(i, k)].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best <= f64::EPSILON * scale {
                singular = true;
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[(k, k)];
            if pivot == 0.0 {
                continue;
            }
            for i in k + 1..n {
                let m = lu[(i, k)] / pivot;
                lu[(i, k)] = m;
                for j in k + 1..n {
                    lu[(i, j)] -= m * lu[(k, j)];
                }
            }
        }

        Lu {
            lu,
            perm,
            sign,
            singular,
        }
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn det(&self) -> f64 {
        let mut d = self.sign;
        for i in 0..self.lu.n() {
            d *= self.lu[(i, i)];
        }
        d
    }

    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>, LuError> {
        if self.singular {
            return Err(LuError::Singular);
        }
        Ok(self.solve_unchecked(b))
    }

    /// Forward/back substitution without the singularity gate. Used by
    /// inverse iteration, where a nearly singular system is the whole point;
    /// zero pivots are replaced by a tiny value so the solution blows up in
    /// the null direction instead of producing NaN.
    pub fn solve_unchecked(&self, b: &[f64]) -> Vec<f64> {
        let n = self.lu.n();
        let tiny = f64::EPSILON * self.lu.norm_inf().max(1.0) * 1e-4 + f64::MIN_POSITIVE;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            for j in 0..i {
                x[i] -= self.lu[(i, j)] * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                x[i] -= self.lu[(i, j)] * x[j];
            }
            let mut d = self.lu[(i, i)];
            if d.abs() < tiny {
                d = if d < 0.0 { -tiny } else { tiny };
            }
            x[i] /= d;
        }
        x
    }
}

impl Matrix {
    /// Determinant via partial-pivot LU.
    pub fn det(&self) -> f64 {
        Lu::new(self).det()
    }

    /// Solve `A x = b`.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>, LuError> {
        Lu::new(self).solve(b)
    }

    /// Matrix inverse via LU; errors on singular input.
    pub fn inverse(&self) -> Result<Matrix, LuError> {
        let n = self.n();
        let lu = Lu::new(self);
        if lu.is_singular() {
            return Err(LuError::Singular);
        }
        let mut inv = Matrix::zeros(n);
        let mut e = alloc::vec![0.0; n];
        for col in 0..n {
            if col > 0 {
                e[col - 1] = 0.0;
            }
            e[col] = 1.0;
            let x = lu.solve(&e)?;
            for row in 0..n {
                inv[(row, col)] = x[row];
            }
        }
        Ok(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_2x2() {
        let a = Matrix::from_rows(2, &[3.0, 8.0, 4.0, 6.0]);
        assert!((a.det() + 14.0).abs() < 1e-12);
    }

    #[test]
    fn solve_3x3() {
        let a = Matrix::from_rows(3, &[2.0, 1.0, -1.0, -3.0, -1.0, 2.0, -2.0, 1.0, 2.0]);
        let x = a.solve(&[8.0, -11.0, -3.0]).unwrap();
        assert!((x[0] - 2.0).abs() < 1e-12);
        assert!((x[1] - 3.0).abs() < 1e-12);
        assert!((x[2] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = Matrix::from_rows(2, &[4.0, 7.0, 2.0, 6.0]);
        let id = a.matmul(&a.inverse().unwrap());
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((id[(i, j)] - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn singular_detected() {
        let a = Matrix::from_rows(2, &[1.0, 2.0, 2.0, 4.0]);
        assert_eq!(a.inverse().unwrap_err(), LuError::Singular);
        assert_eq!(a.solve(&[1.0, 1.0]).unwrap_err(), LuError::Singular);
    }
}
