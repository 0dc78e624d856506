use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::Matrix;
use crate::models::ModelSpec;

use super::EntropyError;

/// Relative tolerance for the detailed-balance identity on constant
/// coefficients.
pub const DB_CONSTANT_TOL: f64 = 1e-9;
/// Looser tolerance across samples of u-dependent Jacobians.
pub const DB_SAMPLED_TOL: f64 = 1e-7;

/// Why detailed balance is infeasible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DbViolation {
    /// Exactly one of `aᵢⱼ`, `aⱼᵢ` vanishes: no positive weights exist.
    OneSidedZero { i: usize, j: usize },
    /// `aᵢⱼ` and `aⱼᵢ` have opposite signs.
    SignMismatch { i: usize, j: usize },
    /// A non-tree edge is inconsistent with the spanning-forest assignment.
    CycleInconsistent { i: usize, j: usize },
    /// The weights from the first sample fail at a later sample.
    SampleInconsistent { sample: usize, i: usize, j: usize },
}

/// Result of a detailed-balance solve: weights `π` (roots of each forest
/// component normalized to 1), feasibility, a violation witness when
/// infeasible, and the index pairs skipped because both coefficients vanish.
///
/// Skipped zero pairs are reported because the spanning-forest construction
/// handles arbitrarily many of them; the balance condition is vacuous there.
#[derive(Debug, Clone)]
pub struct DetailedBalance {
    pub pi: Vec<f64>,
    pub feasible: bool,
    pub violation: Option<DbViolation>,
    pub skipped_zero_pairs: Vec<(usize, usize)>,
}

/// Solve `πᵢ aᵢⱼ = πⱼ aⱼᵢ` for positive weights over the graph with an edge
/// wherever `aᵢⱼ·aⱼᵢ ≠ 0`.
///
/// Weights propagate over a spanning forest (BFS from the lowest unvisited
/// index, roots at 1); every non-tree edge is then checked, which is exactly
/// the cycle condition. Pairs with `aᵢⱼ = aⱼᵢ = 0` impose nothing and are
/// skipped; a pair where only one side vanishes is an immediate witness of
/// infeasibility.
pub fn solve_detailed_balance_constant(a: &Matrix) -> DetailedBalance {
    let n = a.n();
    let zero_tol = 1e-14 * a.norm_inf().max(1.0);
    let is_zero = |x: f64| x.abs() <= zero_tol;

    let mut skipped = Vec::new();
    let mut pi = vec![1.0; n];
    let fail = |violation: DbViolation, pi: Vec<f64>| DetailedBalance {
        pi,
        feasible: false,
        violation: Some(violation),
        skipped_zero_pairs: Vec::new(),
    };

    for i in 0..n {
        for j in i + 1..n {
            let (fwd, bwd) = (a[(i, j)], a[(j, i)]);
            match (is_zero(fwd), is_zero(bwd)) {
                (true, true) => skipped.push((i, j)),
                (true, false) | (false, true) => {
                    return fail(DbViolation::OneSidedZero { i, j }, pi);
                }
                (false, false) => {
                    if fwd.signum() != bwd.signum() {
                        return fail(DbViolation::SignMismatch { i, j }, pi);
                    }
                }
            }
        }
    }

    // BFS spanning forest.
    let mut visited = vec![false; n];
    let mut tree_edge = Matrix::zeros(n); // 1 on tree edges
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        pi[root] = 1.0;
        let mut queue = vec![root];
        while let Some(i) = queue.pop() {
            for j in 0..n {
                if visited[j] || is_zero(a[(i, j)]) || is_zero(a[(j, i)]) {
                    continue;
                }
                pi[j] = pi[i] * a[(i, j)] / a[(j, i)];
                visited[j] = true;
                tree_edge[(i, j)] = 1.0;
                tree_edge[(j, i)] = 1.0;
                queue.push(j);
            }
        }
    }

    // Verify every non-tree edge (the cycle condition).
    for i in 0..n {
        for j in i + 1..n {
            if is_zero(a[(i, j)]) || tree_edge[(i, j)] == 1.0 {
                continue;
            }
            let lhs = pi[i] * a[(i, j)];
            let rhs = pi[j] * a[(j, i)];
            if (lhs - rhs).abs() > DB_CONSTANT_TOL * (lhs.abs() + rhs.abs()) {
                return fail(DbViolation::CycleInconsistent { i, j }, pi);
            }
        }
    }

    DetailedBalance {
        pi,
        feasible: true,
        violation: None,
        skipped_zero_pairs: skipped,
    }
}

/// Detailed balance for a u-dependent pressure Jacobian: solve on the first
/// sample, then verify the same weights at every other sample, since the
/// condition must hold uniformly on the domain.
pub fn solve_detailed_balance_pressures(
    model: &ModelSpec,
    samples: &[&[f64]],
) -> Result<DetailedBalance, EntropyError> {
    assert!(!samples.is_empty(), "at least one sample required");
    let q0 = model.pressure_jacobian(samples[0])?;
    let mut db = solve_detailed_balance_constant(&q0);
    if !db.feasible {
        return Ok(db);
    }
    let n = model.n();
    for (k, &u) in samples.iter().enumerate().skip(1) {
        let q = model.pressure_jacobian(u)?;
        for i in 0..n {
            for j in i + 1..n {
                let lhs = db.pi[i] * q[(i, j)];
                let rhs = db.pi[j] * q[(j, i)];
                let scale = lhs.abs().max(rhs.abs()).max(1e-30);
                if (lhs - rhs).abs() > DB_SAMPLED_TOL * scale {
                    db.feasible = false;
                    db.violation = Some(DbViolation::SampleInconsistent { sample: k, i, j });
                    return Ok(db);
                }
            }
        }
    }
    Ok(db)
}
