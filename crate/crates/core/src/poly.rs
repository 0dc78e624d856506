//! Multivariate and univariate polynomials with explicit coefficient blocks.
//!
//! Pressures and fluxes in the model catalog are polynomials so that
//! Jacobians and curl checks come out exactly, without a symbolic engine.

use alloc::vec::Vec;

// Float methods come from num_traits under no_std; std test builds shadow it.
#[allow(unused_imports)]
use num_traits::Float;

/// Multivariate polynomial: a sum of `coef · ∏ uₖ^eₖ` terms.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(f64, Vec<u32>)>,
}

impl Poly {
    pub fn new(nvars: usize, terms: Vec<(f64, Vec<u32>)>) -> Self {
        for (_, exps) in &terms {
            assert_eq!(exps.len(), nvars, "exponent block must have nvars entries");
        }
        Poly { nvars, terms }
    }

    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: f64) -> Self {
        Poly::new(nvars, alloc::vec![(c, alloc::vec![0; nvars])])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(f64, Vec<u32>)] {
        &self.terms
    }

    /// Total degree, 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(_, e)| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, u: &[f64]) -> f64 {
        assert_eq!(u.len(), self.nvars);
        self.terms
            .iter()
            .map(|(c, exps)| {
                c * exps
                    .iter()
                    .zip(u.iter())
                    .map(|(&e, &x)| x.powi(e as i32))
                    .product::<f64>()
            })
            .sum()
    }

    /// Value of `∂/∂u_j` at `u`, computed term by term (exact, no finite
    /// differences).
    pub fn partial_eval(&self, j: usize, u: &[f64]) -> f64 {
        assert!(j < self.nvars);
        assert_eq!(u.len(), self.nvars);
        self.terms
            .iter()
            .filter(|(_, exps)| exps[j] > 0)
            .map(|(c, exps)| {
                let mut v = c * exps[j] as f64;
                for (k, (&e, &x)) in exps.iter().zip(u.iter()).enumerate() {
                    let e = if k == j { e - 1 } else { e };
                    v *= x.powi(e as i32);
                }
                v
            })
            .sum()
    }

    /// Product polynomial (used to build flux blocks like `uᵢ·pᵢ(u)`).
    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut terms: Vec<(f64, Vec<u32>)> = Vec::new();
        for (ca, ea) in &self.terms {
            for (cb, eb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                let c = ca * cb;
                if let Some(t) = terms.iter_mut().find(|(_, e)| *e == exps) {
                    t.0 += c;
                } else {
                    terms.push((c, exps));
                }
            }
        }
        terms.retain(|(c, _)| *c != 0.0);
        Poly {
            nvars: self.nvars,
            terms,
        }
    }
}

/// Univariate polynomial with ascending coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly1 {
    coeffs: Vec<f64>,
}

impl Poly1 {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Poly1 { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Poly1::new(alloc::vec![c])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Antiderivative value `∫₀ˣ p(t) dt`.
    pub fn antiderivative_eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            acc = acc * x + c / (k as f64 + 1.0);
        }
        acc * x
    }
}
