//! Run the whole fact registry under the field backend and print a summary
//! table. `rigikit paperlab --all` is the CLI equivalent and also offers the
//! rational backend and JUnit output.

use rigikit::paperlab::{run_all, CheckContext};

fn main() {
    let ctx = CheckContext::default();
    let results = run_all(&ctx).expect("registry runs");
    let mut failures = 0;
    for r in &results {
        println!(
            "{:32} {:4} {:>6} ms",
            r.name,
            if r.passed { "ok" } else { "FAIL" },
            r.elapsed_ms
        );
        if !r.passed {
            failures += 1;
            println!("  expected {}", r.expected);
            println!("  observed {}", r.observed);
        }
    }
    println!(
        "{} checks, {} failures (seed {:#x})",
        results.len(),
        failures,
        ctx.seed
    );
    std::process::exit(if failures == 0 { 0 } else { 1 });
}
