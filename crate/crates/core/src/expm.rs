//! Matrix exponential by scaling and squaring with a degree-6 diagonal Padé
//! approximant. Serves the Lyapunov integral oracle, so it deliberately
//! shares no code with the Kronecker solve path.

use crate::linalg::Matrix;

/// Coefficients of the [6/6] Padé numerator for `exp`; the denominator uses
/// the same coefficients with alternating signs.
const PADE6: [f64; 7] = [
    1.0,
    1.0 / 2.0,
    5.0 / 44.0,
    1.0 / 66.0,
    1.0 / 792.0,
    1.0 / 15840.0,
    1.0 / 665280.0,
];

/// `e^A` for a square matrix.
pub fn expm(a: &Matrix) -> Matrix {
    let n = a.n();
    // Scale so the ∞-norm is at most 1/2, where the degree-6 approximant is
    // accurate to machine precision.
    let norm = a.norm_inf();
    let mut squarings = 0u32;
    let mut scale = 1.0;
    while norm * scale > 0.5 && squarings < 64 {
        scale *= 0.5;
        squarings += 1;
    }
    let b = a.scale(scale);

    let mut power = Matrix::identity(n);
    let mut num = Matrix::zeros(n);
    let mut den = Matrix::zeros(n);
    for (k, &c) in PADE6.iter().enumerate() {
        num = num.add(&power.scale(c));
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        den = den.add(&power.scale(sign * c));
        if k + 1 < PADE6.len() {
            power = power.matmul(&b);
        }
    }

    // Solve den · X = num column by column.
    let mut x = Matrix::zeros(n);
    let mut col = alloc::vec![0.0; n];
    for j in 0..n {
        for i in 0..n {
            col[i] = num[(i, j)];
        }
        let sol = den
            .solve(&col)
            .expect("Pade denominator is nonsingular for scaled input");
        for i in 0..n {
            x[(i, j)] = sol[i];
        }
    }

    for _ in 0..squarings {
        x = x.matmul(&x);
    }
    x
}
