//! Drive a bound sweep from a config document and print the CSV it writes.

use clocklab::scenario::{parse_config, run};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::temp_dir().join("clocklab_bound_sweep.csv");
    let doc = format!(
        "kind = QUANTUM_BOUND_SWEEP
output = {}
e0 = 10
sigma_e = 0.1
sigma_p = 0.05
t_max = 100
samples = 3
sweep.param = sigma_e
sweep.from = 0.05
sweep.to = 0.4
sweep.count = 4
sweep.spacing = log
",
        out.display()
    );
    let config = parse_config(&doc)?;
    let report = run(&config)?;
    for c in &report.checks {
        println!(
            "{:<5} {:<14} measured {:.3e} (tolerance {:.0e})",
            if c.passed { "pass" } else { "FAIL" },
            c.name,
            c.measured,
            c.tolerance
        );
    }
    println!("{} rows -> {}\n", report.rows_written, out.display());
    print!("{}", std::fs::read_to_string(&out)?);
    Ok(())
}
