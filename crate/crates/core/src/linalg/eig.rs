use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
// Float methods come from num_traits under no_std; std test builds shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use super::lu::Lu;
use super::Matrix;

/// Largest supported matrix dimension.
pub const MAX_DIM: usize = 16;

/// Relative imaginary-part tolerance below which an eigenvalue counts as real.
const REAL_IM_TOL: f64 = 1e-9;

/// Full spectrum of a real square matrix.
///
/// Eigenvalues are sorted by real part (ties by imaginary part) and complex
/// values appear in exact conjugate pairs. `eigvec_condition` is the ∞-norm
/// condition estimate of an eigenvector basis, `+∞` when the matrix is
/// numerically defective; it is the gate used by the diagonalizability tests.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex64>,
    pub min_real_part: f64,
    pub eigvec_condition: f64,
}

impl Spectrum {
    /// True when every eigenvalue is real within `1e-9·(1+|λ|)`.
    pub fn all_real(&self) -> bool {
        self.eigenvalues
            .iter()
            .all(|l| l.im.abs() <= REAL_IM_TOL * (1.0 + l.norm()))
    }

    /// Spectral radius `max |λ|`.
    pub fn max_abs(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|l| l.norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone)]
pub enum EigError {
    /// Input contained non-finite entries.
    NotFinite,
    /// The QR iteration exhausted its budget; carries the eigenvalues that
    /// had already deflated.
    NonConvergence { partial: Vec<Complex64> },
    /// A real eigenvector basis was requested but the spectrum is not real.
    ComplexSpectrum,
}

impl fmt::Display for EigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EigError::NotFinite => write!(f, "matrix has non-finite entries"),
            EigError::NonConvergence { partial } => write!(
                f,
                "eigenvalue iteration did not converge ({} of the eigenvalues deflated)",
                partial.len()
            ),
            EigError::ComplexSpectrum => write!(f, "matrix has complex eigenvalues"),
        }
    }
}

impl core::error::Error for EigError {}

/// All eigenvalues of `a` (with multiplicity) plus an eigenvector-basis
/// condition estimate.
///
/// Dimensions up to 4 go through the characteristic polynomial with
/// closed-form root formulas (quadratic, Cardano, Ferrari) followed by a
/// complex Newton polish; larger matrices use Hessenberg reduction and a
/// shifted double-step QR iteration with a budget of `100·n` sweeps.
pub fn eigenvalues(a: &Matrix, tol: f64) -> Result<Spectrum, EigError> {
    let eigs = eigenvalue_list(a, tol)?;
    let min_real_part = eigs.iter().map(|l| l.re).fold(f64::INFINITY, f64::min);
    let eigvec_condition = eigvec_condition(a, &eigs);

    Ok(Spectrum {
        eigenvalues: eigs,
        min_real_part,
        eigvec_condition,
    })
}

/// Eigenvalues only, skipping the eigenvector-basis condition estimate;
/// the cheap path for hot loops like the CFL spectral radius.
pub fn eigenvalue_list(a: &Matrix, _tol: f64) -> Result<Vec<Complex64>, EigError> {
    let n = a.n();
    assert!(n <= MAX_DIM, "dimension above {MAX_DIM} is unsupported");
    if !a.is_finite() {
        return Err(EigError::NotFinite);
    }
    let mut eigs = if n <= 4 {
        char_poly_roots(a)
    } else {
        francis_eigenvalues(a)?
    };
    canonicalize(&mut eigs);
    Ok(eigs)
}

/// Spectral radius `max |λ|`.
pub fn spectral_radius(a: &Matrix) -> Result<f64, EigError> {
    let eigs = eigenvalue_list(a, 0.0)?;
    Ok(eigs.iter().map(|l| l.norm()).fold(0.0, f64::max))
}

/// Real eigendecomposition witness `A = P Λ P⁻¹`.
///
/// Eigenvectors come from guarded inverse iteration, one per eigenvalue in
/// ascending order. The returned condition number of `P` tells the caller
/// how trustworthy the basis is; defective inputs surface as a huge or
/// infinite condition rather than as an error here.
pub struct RealEigenBasis {
    pub lambdas: Vec<f64>,
    pub p: Matrix,
    pub condition: f64,
}

pub fn real_eigen_basis(a: &Matrix, tol: f64) -> Result<RealEigenBasis, EigError> {
    let spectrum = eigenvalues(a, tol)?;
    if !spectrum.all_real() {
        return Err(EigError::ComplexSpectrum);
    }
    let n = a.n();
    let lambdas: Vec<f64> = spectrum.eigenvalues.iter().map(|l| l.re).collect();

    let mut p = Matrix::zeros(n);
    for (k, &lambda) in lambdas.iter().enumerate() {
        let v = real_inverse_iteration(a, lambda, k);
        for i in 0..n {
            p[(i, k)] = v[i];
        }
    }
    let condition = match p.inverse() {
        Ok(pinv) => p.norm_inf() * pinv.norm_inf(),
        Err(_) => f64::INFINITY,
    };
    Ok(RealEigenBasis {
        lambdas,
        p,
        condition,
    })
}

/// Sort by (re, im) and snap conjugate pairs to exact symmetry.
fn canonicalize(eigs: &mut [Complex64]) {
    for l in eigs.iter_mut() {
        if l.im.abs() <= 1e-12 * (1.0 + l.norm()) {
            l.im = 0.0;
        }
    }
    // Greedy conjugate pairing of the remaining complex values.
    let m = eigs.len();
    let mut used = vec![false; m];
    for i in 0..m {
        if used[i] || eigs[i].im == 0.0 {
            continue;
        }
        let mut best: Option<usize> = None;
        let mut best_d = f64::INFINITY;
        for j in i + 1..m {
            if used[j] || eigs[j].im == 0.0 || eigs[j].im.signum() == eigs[i].im.signum() {
                continue;
            }
            let d = (eigs[j].conj() - eigs[i]).norm();
            if d < best_d {
                best_d = d;
                best = Some(j);
            }
        }
        if let Some(j) = best {
            let re = 0.5 * (eigs[i].re + eigs[j].re);
            let im = 0.5 * (eigs[i].im.abs() + eigs[j].im.abs());
            let si = eigs[i].im.signum();
            eigs[i] = Complex64::new(re, si * im);
            eigs[j] = Complex64::new(re, -si * im);
            used[i] = true;
            used[j] = true;
        }
    }
    eigs.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .expect("finite eigenvalues")
    });
}

// ── characteristic polynomial route (n ≤ 4) ─────────────────────────

/// Monic characteristic polynomial coefficients `[c₁, …, cₙ]` of
/// `λⁿ + c₁λⁿ⁻¹ + ⋯ + cₙ` via the Faddeev–LeVerrier recursion.
fn char_poly(a: &Matrix) -> Vec<f64> {
    let n = a.n();
    let mut coeffs = Vec::with_capacity(n);
    let mut m = a.clone();
    for k in 1..=n {
        let c = -m.trace() / k as f64;
        coeffs.push(c);
        if k < n {
            for i in 0..n {
                m[(i, i)] += c;
            }
            m = a.matmul(&m);
        }
    }
    coeffs
}

fn char_poly_roots(a: &Matrix) -> Vec<Complex64> {
    let n = a.n();
    let c = char_poly(a);
    let mut roots = match n {
        1 => vec![Complex64::new(-c[0], 0.0)],
        2 => quadratic_roots(c[0], c[1]).to_vec(),
        3 => cubic_roots(c[0], c[1], c[2]).to_vec(),
        4 => quartic_roots(c[0], c[1], c[2], c[3]).to_vec(),
        _ => unreachable!(),
    };
    // Newton polish on the characteristic polynomial recovers the accuracy
    // lost to coefficient arithmetic in the closed forms.
    for r in roots.iter_mut() {
        *r = polish_root(&c, *r);
    }
    roots
}

/// Roots of `λ² + bλ + c`, computed with the cancellation-free formula.
fn quadratic_roots(b: f64, c: f64) -> [Complex64; 2] {
    let disc = b * b - 4.0 * c;
    if disc >= 0.0 {
        let s = disc.sqrt();
        let q = -0.5 * (b + b.signum() * s);
        let r1 = if q != 0.0 { q } else { -0.5 * b };
        let r2 = if q != 0.0 { c / q } else { -0.5 * b };
        [Complex64::new(r1, 0.0), Complex64::new(r2, 0.0)]
    } else {
        let im = 0.5 * (-disc).sqrt();
        [Complex64::new(-0.5 * b, im), Complex64::new(-0.5 * b, -im)]
    }
}

/// Roots of `λ³ + aλ² + bλ + c` (trigonometric form for three real roots,
/// Cardano plus quadratic deflation otherwise).
fn cubic_roots(a: f64, b: f64, c: f64) -> [Complex64; 3] {
    // Depress: λ = t − a/3 gives t³ + pt + q.
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let disc = -4.0 * p * p * p - 27.0 * q * q;

    if p.abs() < 1e-14 * (1.0 + a * a) && q.abs() < 1e-14 * (1.0 + a * a * a.abs()) {
        // Near-triple root.
        let r = Complex64::new(-shift, 0.0);
        return [r, r, r];
    }

    if disc >= 0.0 {
        // Three real roots: t_k = 2√(−p/3)·cos(θ/3 − 2πk/3).
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos();
        let two_pi = 2.0 * core::f64::consts::PI;
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for (k, root) in out.iter_mut().enumerate() {
            let t = m * (theta / 3.0 - two_pi * k as f64 / 3.0).cos();
            *root = Complex64::new(t - shift, 0.0);
        }
        out
    } else {
        // One real root via Cardano, then deflate to a quadratic. Taking the
        // cube root of the larger-magnitude branch avoids cancellation.
        let half_q = q / 2.0;
        let d = (half_q * half_q + p * p * p / 27.0).sqrt();
        let u = cbrt(-half_q - d.copysign(q));
        let t0 = u - p / (3.0 * u);
        let r0 = t0 - shift;
        // λ³ + aλ² + bλ + c = (λ − r0)(λ² + (a + r0)λ + (b + r0(a + r0)))
        let b2 = a + r0;
        let c2 = b + r0 * b2;
        let pair = quadratic_roots(b2, c2);
        [Complex64::new(r0, 0.0), pair[0], pair[1]]
    }
}

fn cbrt(x: f64) -> f64 {
    x.abs().powf(1.0 / 3.0).copysign(x)
}

/// Roots of `λ⁴ + aλ³ + bλ² + cλ + d` by Descartes/Ferrari factorization
/// into two quadratics using the resolvent cubic.
fn quartic_roots(a: f64, b: f64, c: f64, d: f64) -> [Complex64; 4] {
    // Depress: λ = y − a/4 gives y⁴ + py² + qy + r.
    let shift = a / 4.0;
    let a2 = a * a;
    let p = b - 3.0 * a2 / 8.0;
    let q = c - a * b / 2.0 + a2 * a / 8.0;
    let r = d - a * c / 4.0 + a2 * b / 16.0 - 3.0 * a2 * a2 / 256.0;

    let ys: [Complex64; 4] = if q.abs() <= 1e-13 * (1.0 + p.abs() + r.abs()) {
        // Biquadratic: z² + pz + r with y = ±√z.
        let zs = quadratic_roots(p, r);
        let s0 = zs[0].sqrt();
        let s1 = zs[1].sqrt();
        [s0, -s0, s1, -s1]
    } else {
        // Resolvent cubic z³ + 2pz² + (p² − 4r)z − q² has a positive real
        // root z₀ (value at 0 is −q² < 0); u = √z₀ splits the quartic into
        // (y² + uy + s)(y² − uy + t).
        let res = cubic_roots(2.0 * p, p * p - 4.0 * r, -q * q);
        let mut z0 = 0.0_f64;
        for root in res.iter() {
            if root.im.abs() <= 1e-8 * (1.0 + root.re.abs()) && root.re > z0 {
                z0 = root.re;
            }
        }
        let u = z0.max(0.0).sqrt();
        let (s, t) = if u > 0.0 {
            (0.5 * (p + z0 - q / u), 0.5 * (p + z0 + q / u))
        } else {
            (0.5 * p, 0.5 * p)
        };
        let q1 = quadratic_roots(u, s);
        let q2 = quadratic_roots(-u, t);
        [q1[0], q1[1], q2[0], q2[1]]
    };

    let mut out = [Complex64::new(0.0, 0.0); 4];
    for (o, y) in out.iter_mut().zip(ys.iter()) {
        *o = y - Complex64::new(shift, 0.0);
    }
    out
}

/// A few complex Newton steps on the monic polynomial with coefficients `c`.
fn polish_root(c: &[f64], mut x: Complex64) -> Complex64 {
    for _ in 0..3 {
        let mut p = Complex64::new(1.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &ck in c {
            dp = dp * x + p;
            p = p * x + Complex64::new(ck, 0.0);
        }
        if dp.norm() < 1e-300 {
            break;
        }
        let step = p / dp;
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        x -= step;
    }
    x
}

// ── Hessenberg + double-shift QR route (n ≥ 5) ──────────────────────

/// Householder reduction to upper Hessenberg form, in place.
fn hessenberg(h: &mut Matrix) {
    let n = h.n();
    for k in 0..n.saturating_sub(2) {
        let mut alpha = 0.0;
        for i in k + 1..n {
            alpha += h[(i, k)] * h[(i, k)];
        }
        let alpha = alpha.sqrt();
        if alpha <= f64::EPSILON * h.norm_inf() {
            continue;
        }
        let alpha = -alpha.copysign(h[(k + 1, k)]);
        let mut v = vec![0.0; n];
        v[k + 1] = h[(k + 1, k)] - alpha;
        for i in k + 2..n {
            v[i] = h[(i, k)];
        }
        let vtv: f64 = v.iter().map(|x| x * x).sum();
        if vtv == 0.0 {
            continue;
        }
        // H ← (I − 2vvᵀ/vᵀv) H (I − 2vvᵀ/vᵀv)
        for j in 0..n {
            let dot: f64 = (k + 1..n).map(|i| v[i] * h[(i, j)]).sum();
            let f = 2.0 * dot / vtv;
            for i in k + 1..n {
                h[(i, j)] -= f * v[i];
            }
        }
        for i in 0..n {
            let dot: f64 = (k + 1..n).map(|j| v[j] * h[(i, j)]).sum();
            let f = 2.0 * dot / vtv;
            for j in k + 1..n {
                h[(i, j)] -= f * v[j];
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = 0.0;
        }
    }
}

/// Eigenvalues of a general real matrix by the implicit double-shift QR
/// iteration on the Hessenberg form (the classic EISPACK `hqr` scheme).
fn francis_eigenvalues(a: &Matrix) -> Result<Vec<Complex64>, EigError> {
    let n = a.n();
    let mut h = a.clone();
    hessenberg(&mut h);

    let anorm = h.norm_inf().max(f64::MIN_POSITIVE);
    let eps = f64::EPSILON;
    let budget = 100 * n;
    let mut total_iters = 0usize;
    let mut out: Vec<Complex64> = Vec::with_capacity(n);

    let mut en = n as isize - 1; // index of the active trailing eigenvalue
    let mut exshift = 0.0;
    let mut iter = 0usize;

    while en >= 0 {
        let enu = en as usize;
        // Find the start of the active unreduced block.
        let mut l = enu;
        while l > 0 {
            let s = h[(l - 1, l - 1)].abs() + h[(l, l)].abs();
            let s = if s == 0.0 { anorm } else { s };
            if h[(l, l - 1)].abs() <= eps * s {
                h[(l, l - 1)] = 0.0;
                break;
            }
            l -= 1;
        }

        if l == enu {
            out.push(Complex64::new(h[(enu, enu)] + exshift, 0.0));
            en -= 1;
            iter = 0;
            continue;
        }
        if l + 1 == enu {
            let w = h[(enu, enu - 1)] * h[(enu - 1, enu)];
            let p = 0.5 * (h[(enu - 1, enu - 1)] - h[(enu, enu)]);
            let q = p * p + w;
            let z = q.abs().sqrt();
            let x = h[(enu, enu)] + exshift;
            if q >= 0.0 {
                let z = p + z.copysign(p);
                let r1 = x + z;
                let r2 = if z != 0.0 { x - w / z } else { r1 };
                out.push(Complex64::new(r1, 0.0));
                out.push(Complex64::new(r2, 0.0));
            } else {
                out.push(Complex64::new(x + p, z));
                out.push(Complex64::new(x + p, -z));
            }
            en -= 2;
            iter = 0;
            continue;
        }

        total_iters += 1;
        if total_iters > budget {
            return Err(EigError::NonConvergence { partial: out });
        }

        let mut x = h[(enu, enu)];
        let mut y = h[(enu - 1, enu - 1)];
        let mut w = h[(enu, enu - 1)] * h[(enu - 1, enu)];
        if iter == 10 || iter == 20 {
            // Exceptional shift.
            exshift += x;
            for i in l..=enu {
                h[(i, i)] -= x;
            }
            let s = h[(enu, enu - 1)].abs() + h[(enu - 1, enu - 2)].abs();
            x = 0.75 * s;
            y = x;
            w = -0.4375 * s * s;
        }
        iter += 1;

        // Look for two consecutive small subdiagonal elements.
        let mut m = enu - 2;
        let (mut p, mut q, mut r);
        loop {
            let z = h[(m, m)];
            let rr = x - z;
            let ss = y - z;
            p = (rr * ss - w) / h[(m + 1, m)] + h[(m, m + 1)];
            q = h[(m + 1, m + 1)] - z - rr - ss;
            r = h[(m + 2, m + 1)];
            let s = p.abs() + q.abs() + r.abs();
            p /= s;
            q /= s;
            r /= s;
            if m == l {
                break;
            }
            let lhs = h[(m, m - 1)].abs() * (q.abs() + r.abs());
            let rhs = p.abs() * (h[(m - 1, m - 1)].abs() + z.abs() + h[(m + 1, m + 1)].abs());
            if lhs <= eps * rhs {
                break;
            }
            m -= 1;
        }
        for i in m + 2..=enu {
            h[(i, i - 2)] = 0.0;
            if i > m + 2 {
                h[(i, i - 3)] = 0.0;
            }
        }

        // Double QR sweep on rows l..=en.
        for k in m..enu {
            let notlast = k != enu - 1;
            if k != m {
                p = h[(k, k - 1)];
                q = h[(k + 1, k - 1)];
                r = if notlast { h[(k + 2, k - 1)] } else { 0.0 };
                x = p.abs() + q.abs() + r.abs();
                if x == 0.0 {
                    continue;
                }
                p /= x;
                q /= x;
                r /= x;
            }
            let s = (p * p + q * q + r * r).sqrt().copysign(p);
            if s == 0.0 {
                continue;
            }
            if k != m {
                h[(k, k - 1)] = -s * x;
            } else if l != m {
                h[(k, k - 1)] = -h[(k, k - 1)];
            }
            p += s;
            x = p / s;
            y = q / s;
            let z = r / s;
            q /= p;
            r /= p;

            for j in k..=enu {
                let mut f = h[(k, j)] + q * h[(k + 1, j)];
                if notlast {
                    f += r * h[(k + 2, j)];
                }
                h[(k, j)] -= f * x;
                h[(k + 1, j)] -= f * y;
                if notlast {
                    h[(k + 2, j)] -= f * z;
                }
            }
            let upper = if enu < k + 3 { enu } else { k + 3 };
            for i in l..=upper {
                let mut f = x * h[(i, k)] + y * h[(i, k + 1)];
                if notlast {
                    f += z * h[(i, k + 2)];
                }
                h[(i, k)] -= f;
                h[(i, k + 1)] -= f * q;
                if notlast {
                    h[(i, k + 2)] -= f * r;
                }
            }
        }
    }

    Ok(out)
}

// ── eigenvector bases ───────────────────────────────────────────────

/// Guarded inverse iteration for a real eigenvalue; start vector varies with
/// the eigenvalue index so repeated eigenvalues yield independent columns.
fn real_inverse_iteration(a: &Matrix, lambda: f64, k: usize) -> Vec<f64> {
    let n = a.n();
    let mut shifted = a.clone();
    for i in 0..n {
        shifted[(i, i)] -= lambda;
    }
    let lu = Lu::new(&shifted);

    let run = |start: Vec<f64>| -> Vec<f64> {
        let mut x = start;
        for _ in 0..3 {
            x = lu.solve_unchecked(&x);
            normalize(&mut x);
        }
        x
    };

    let mut e = vec![0.0; n];
    e[k % n] = 1.0;
    let x = run(e);
    if eigen_residual(a, lambda, &x) < 1e-6 * (1.0 + a.norm_inf()) {
        return x;
    }
    // Retry from a mixed start when the unit vector was (near) orthogonal to
    // the eigenvector.
    let alt: Vec<f64> = (0..n)
        .map(|i| 1.0 + 0.5 * ((i + 3 * k + 1) as f64).sin())
        .collect();
    run(alt)
}

fn normalize(x: &mut [f64]) {
    let norm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return;
    }
    // Fix the sign by the largest component for determinism.
    let mut lead = 0;
    for (i, v) in x.iter().enumerate() {
        if v.abs() > x[lead].abs() {
            lead = i;
        }
    }
    let s = if x[lead] < 0.0 { -norm } else { norm };
    for v in x.iter_mut() {
        *v /= s;
    }
}

fn eigen_residual(a: &Matrix, lambda: f64, x: &[f64]) -> f64 {
    let ax = a.mul_vec(x);
    ax.iter()
        .zip(x.iter())
        .map(|(axi, xi)| (axi - lambda * xi).abs())
        .fold(0.0, f64::max)
}

/// Condition estimate of an eigenvector basis assembled from complex inverse
/// iteration; `+∞` when the basis is numerically singular (defective input).
fn eigvec_condition(a: &Matrix, eigs: &[Complex64]) -> f64 {
    let n = a.n();
    if n == 1 {
        return 1.0;
    }
    let mut basis: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); n * n];
    for (k, &lambda) in eigs.iter().enumerate() {
        let mut shifted: Vec<Complex64> = a
            .as_slice()
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect();
        for i in 0..n {
            shifted[i * n + i] -= lambda;
        }
        let lu = CLu::new(n, shifted);
        let mut x: Vec<Complex64> = (0..n)
            .map(|i| {
                if i == k % n {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        for _ in 0..2 {
            x = lu.solve(&x);
            let norm: f64 = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            if norm == 0.0 || !norm.is_finite() {
                return f64::INFINITY;
            }
            for v in x.iter_mut() {
                *v /= norm;
            }
        }
        for i in 0..n {
            basis[i * n + k] = x[i];
        }
    }
    complex_cond_inf(n, &basis).unwrap_or(f64::INFINITY)
}

/// Minimal complex LU with guarded pivots for inverse iteration.
struct CLu {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
    guard: f64,
}

impl CLu {
    fn new(n: usize, mut m: Vec<Complex64>) -> CLu {
        let scale: f64 = m.iter().map(|v| v.norm()).fold(1.0, f64::max);
        let guard = f64::EPSILON * scale * 1e-4 + f64::MIN_POSITIVE;
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut p = k;
            let mut best = m[k * n + k].norm();
            for i in k + 1..n {
                let v = m[i * n + k].norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if p != k {
                for j in 0..n {
                    m.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let mut pivot = m[k * n + k];
            if pivot.norm() < guard {
                pivot = Complex64::new(guard, 0.0);
                m[k * n + k] = pivot;
            }
            for i in k + 1..n {
                let f = m[i * n + k] / pivot;
                m[i * n + k] = f;
                for j in k + 1..n {
                    let sub = f * m[k * n + j];
                    m[i * n + j] -= sub;
                }
            }
        }
        CLu {
            n,
            lu: m,
            perm,
            guard,
        }
    }

    fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            for j in 0..i {
                let sub = self.lu[i * n + j] * x[j];
                x[i] -= sub;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let sub = self.lu[i * n + j] * x[j];
                x[i] -= sub;
            }
            let mut d = self.lu[i * n + i];
            if d.norm() < self.guard {
                d = Complex64::new(self.guard, 0.0);
            }
            x[i] /= d;
        }
        x
    }
}

fn complex_cond_inf(n: usize, m: &[Complex64]) -> Option<f64> {
    let norm = |mat: &[Complex64]| -> f64 {
        (0..n)
            .map(|i| (0..n).map(|j| mat[i * n + j].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    };
    let scale: f64 = norm(m).max(1.0);
    let lu = CLu::new(n, m.to_vec());
    // Reject if any pivot had to be guarded: singular basis.
    for i in 0..n {
        if lu.lu[i * n + i].norm() <= f64::EPSILON * scale * 10.0 {
            return None;
        }
    }
    let mut inv = vec![Complex64::new(0.0, 0.0); n * n];
    let mut e = vec![Complex64::new(0.0, 0.0); n];
    for col in 0..n {
        if col > 0 {
            e[col - 1] = Complex64::new(0.0, 0.0);
        }
        e[col] = Complex64::new(1.0, 0.0);
        let x = lu.solve(&e);
        for row in 0..n {
            inv[row * n + col] = x[row];
        }
    }
    let c = norm(m) * norm(&inv);
    if c.is_finite() {
        Some(c)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::default_tol;

    fn eig(a: &Matrix) -> Spectrum {
        eigenvalues(a, default_tol(a.norm_inf())).unwrap()
    }

    #[test]
    fn identity_spectrum() {
        let s = eig(&Matrix::identity(3));
        for l in &s.eigenvalues {
            assert!((l.re - 1.0).abs() < 1e-12 && l.im == 0.0);
        }
        assert!((s.min_real_part - 1.0).abs() < 1e-12);
        assert!(s.eigvec_condition < 10.0);
    }

    #[test]
    fn complex_pair_2x2() {
        // Arises as the cross-diffusion Keller–Segel matrix at u₁ = 4, δ = 1.
        let a = Matrix::from_rows(2, &[1.0, -4.0, 1.0, 1.0]);
        let s = eig(&a);
        assert!((s.eigenvalues[0].re - 1.0).abs() < 1e-12);
        assert!((s.eigenvalues[0].im + 2.0).abs() < 1e-12);
        assert!((s.eigenvalues[1].im - 2.0).abs() < 1e-12);
        assert_eq!(s.eigenvalues[0].im, -s.eigenvalues[1].im);
        assert!((s.min_real_part - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cubic_spectrum_with_pair() {
        // Characteristic polynomial (1−λ)³ + 1: roots 2 and 1/2 ± i√3/2.
        let a = Matrix::from_rows(3, &[1.0, 0.0, 1.0, 1.0, 1.0, 0.0, 0.0, 1.0, 1.0]);
        let s = eig(&a);
        let half_sqrt3 = 0.5 * 3.0_f64.sqrt();
        assert!((s.eigenvalues[0].re - 0.5).abs() < 1e-10);
        assert!((s.eigenvalues[0].im.abs() - half_sqrt3).abs() < 1e-10);
        assert!((s.eigenvalues[2].re - 2.0).abs() < 1e-10);
        assert!((s.min_real_part - 0.5).abs() < 1e-10);
    }

    #[test]
    fn quartic_with_two_complex_pairs() {
        // Block diagonal with two rotation-scaled blocks: spectrum
        // {0.5 ± 1.5i, 2 ± 0.7i}, conjugated by a fixed basis.
        let mut d = Matrix::zeros(4);
        d[(0, 0)] = 0.5;
        d[(0, 1)] = -1.5;
        d[(1, 0)] = 1.5;
        d[(1, 1)] = 0.5;
        d[(2, 2)] = 2.0;
        d[(2, 3)] = -0.7;
        d[(3, 2)] = 0.7;
        d[(3, 3)] = 2.0;
        let p = Matrix::from_fn(4, |i, j| {
            if i == j {
                1.0
            } else {
                0.25 * ((i * 3 + j) as f64).sin()
            }
        });
        let a = p.matmul(&d).matmul(&p.inverse().unwrap());
        let s = eig(&a);
        assert!((s.eigenvalues[0].re - 0.5).abs() < 1e-9);
        assert!((s.eigenvalues[0].im.abs() - 1.5).abs() < 1e-9);
        assert!((s.eigenvalues[2].re - 2.0).abs() < 1e-9);
        assert!((s.eigenvalues[2].im.abs() - 0.7).abs() < 1e-9);
        assert_eq!(s.eigenvalues[0].im, -s.eigenvalues[1].im);
        assert_eq!(s.eigenvalues[2].im, -s.eigenvalues[3].im);
        assert!((s.min_real_part - 0.5).abs() < 1e-9);
    }

    #[test]
    fn trace_and_det_consistency_4x4() {
        let a = Matrix::from_rows(
            4,
            &[
                0.3, -1.2, 0.7, 2.0, 1.1, 0.4, -0.6, 0.2, -0.5, 0.9, 1.3, -0.8, 0.6, -0.1, 0.5,
                -1.0,
            ],
        );
        let s = eig(&a);
        let sum: Complex64 = s.eigenvalues.iter().sum();
        let prod = s
            .eigenvalues
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, l| acc * l);
        assert!((sum.re - a.trace()).abs() < 1e-9);
        assert!(sum.im.abs() < 1e-9);
        assert!((prod.re - a.det()).abs() < 1e-8);
        assert!(prod.im.abs() < 1e-8);
    }

    #[test]
    fn qr_route_matches_jacobi_on_symmetric_6x6() {
        let n = 6;
        let mut a = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let v = ((i * 7 + j * 3 + 1) as f64).sin();
                a[(i, j)] += v;
                a[(j, i)] += v;
            }
        }
        let s = eig(&a);
        assert!(s.all_real());
        let from_qr: Vec<f64> = s.eigenvalues.iter().map(|l| l.re).collect();
        let from_jacobi = super::super::symmetric_eigenvalues(&a);
        for (x, y) in from_qr.iter().zip(from_jacobi.iter()) {
            assert!((x - y).abs() < 1e-9, "{x} vs {y}");
        }
    }

    #[test]
    fn defective_matrix_flagged_by_condition() {
        let a = Matrix::from_rows(2, &[1.0, 1.0, 0.0, 1.0]);
        let s = eig(&a);
        assert!(s.eigvec_condition > 1e8);
    }

    #[test]
    fn real_basis_reconstructs() {
        let a = Matrix::from_rows(2, &[1.0, 2.0, 0.0, 2.0]);
        let basis = real_eigen_basis(&a, 1e-10).unwrap();
        assert!(basis.condition < 100.0);
        let lam = Matrix::diag(&basis.lambdas);
        let rec = basis.p.matmul(&lam).matmul(&basis.p.inverse().unwrap());
        assert!(rec.sub(&a).norm_inf() < 1e-10);
    }

    #[test]
    fn real_basis_rejects_rotation() {
        let a = Matrix::from_rows(2, &[0.0, 1.0, -1.0, 0.0]);
        assert!(matches!(
            real_eigen_basis(&a, 1e-10),
            Err(EigError::ComplexSpectrum)
        ));
    }

    #[test]
    fn non_finite_rejected() {
        let a = Matrix::from_rows(2, &[f64::NAN, 0.0, 0.0, 1.0]);
        assert!(matches!(eigenvalues(&a, 1e-10), Err(EigError::NotFinite)));
    }
}
