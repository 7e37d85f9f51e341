//! Solve every embedded reference regime with Jaya and PSO, compare the
//! wall shear with the tabulated values, and write the long-format CSV.
//!
//! `cargo run --release --example case_matrix > matrix.csv`

use fskan::io::emit_matrix;
use fskan::reference::embedded;
use fskan::{run_case_matrix, Algorithm, SolveOptions};

fn main() {
    let set = embedded();
    let algs = [Algorithm::Jaya, Algorithm::Pso];
    let table = run_case_matrix(&set.regimes(), &algs, &SolveOptions::default()).expect("matrix");

    for (rec, row) in set.records.iter().zip(&table) {
        for cell in &row.cells {
            match &cell.outcome {
                Ok(r) => eprintln!(
                    "{:<26} {:<5} alpha {:.6} (table {:.6}, diff {:+.1e})",
                    rec.name,
                    cell.algorithm,
                    r.best.alpha,
                    rec.alpha.for_algorithm(cell.algorithm),
                    r.best.alpha - rec.alpha.for_algorithm(cell.algorithm)
                ),
                Err(e) => eprintln!("{:<26} {:<5} failed: {e}", rec.name, cell.algorithm),
            }
        }
    }
    emit_matrix(&table, &mut std::io::stdout().lock()).expect("write");
}
