//! Runs every acceptance criterion at its stated tolerance and runtime
//! budget, one line per criterion.

use knotcover_cli::selftest::{run, Options};

fn main() {
    let results = run(&Options::default());
    for r in &results {
        println!("{}", r.line());
    }
    let failed: Vec<usize> = results
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.id)
        .collect();
    if failed.is_empty() {
        println!(
            "acceptance: {} of {} criteria pass",
            results.len(),
            results.len()
        );
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
