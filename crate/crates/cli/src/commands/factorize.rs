use std::fs;
use std::path::PathBuf;

use anyhow::Result;
use clap::Args;

use crossdiff_core::factorize::{pd_factorize, spd_factorize, sym_factorize, Factorization};
use crossdiff_core::linalg::is_positive_definite;
use crossdiff_core::Matrix;

use crate::exit_code;
use crate::spec_file::parse_matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FactorKindArg {
    /// A₁ spd, A₂ positive definite (exists iff normally elliptic).
    Pd,
    /// A₁ spd, A₂ symmetric (exists iff real-diagonalizable).
    Sym,
    /// Both factors spd (exists iff diagonalizable with positive spectrum).
    Spd,
}

#[derive(Debug, Args)]
pub struct FactorizeArgs {
    /// JSON matrix file (array of rows).
    pub matrix: PathBuf,
    #[arg(long, value_enum)]
    pub kind: FactorKindArg,
}

/// Factor the matrix and print both factors, the reconstruction residual,
/// and the verdicts. Exit 0 on success, 2 when the requested factorization
/// does not exist, 1 on parse errors.
pub fn cmd_factorize(args: &FactorizeArgs) -> Result<i32> {
    let text = match fs::read_to_string(&args.matrix) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.matrix.display());
            return Ok(exit_code::PARSE);
        }
    };
    let matrix = match parse_matrix(&text) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e:#}");
            return Ok(exit_code::PARSE);
        }
    };

    let result = match args.kind {
        FactorKindArg::Pd => pd_factorize(&matrix),
        FactorKindArg::Sym => sym_factorize(&matrix),
        FactorKindArg::Spd => spd_factorize(&matrix),
    };
    match result {
        Ok(f) => {
            print_factorization(&f);
            Ok(exit_code::OK)
        }
        Err(e) => {
            eprintln!("error: {e}");
            Ok(exit_code::ABSENT)
        }
    }
}

fn print_factorization(f: &Factorization) {
    println!("kind: {:?}", f.kind);
    print_matrix("a1", &f.a1);
    print_matrix("a2", &f.a2);
    println!("residual: {:.3e}", f.residual);
    let (a1_pd, a1_margin) = is_positive_definite(&f.a1, 1e-12);
    println!("a1_spd: {} (margin {:.6e})", a1_pd, a1_margin);
    let (a2_pd, a2_margin) = is_positive_definite(&f.a2, 1e-12);
    println!(
        "a2_pd: {} (margin {:.6e}), a2_symmetry_defect: {:.3e}",
        a2_pd,
        a2_margin,
        f.a2.symmetry_defect()
    );
}

fn print_matrix(name: &str, m: &Matrix) {
    let n = m.n();
    print!("{name}: [");
    for i in 0..n {
        print!("[");
        for j in 0..n {
            print!("{}{:.12e}", if j > 0 { ", " } else { "" }, m[(i, j)]);
        }
        print!("]{}", if i + 1 < n { ", " } else { "" });
    }
    println!("]");
}
