//! Scenario files end to end: write a few JSON scenarios, run them through
//! the same entry points the `nd` binary uses, and inspect the reports.
//!
//! Run with: cargo run --example scenario_files

use std::fs;

use terracini::cli::run_scenario_file;

fn main() -> terracini::Result<()> {
    let dir = std::env::temp_dir().join("nd_scenarios");
    fs::create_dir_all(&dir)?;

    let mixture = dir.join("mixture.json");
    fs::write(
        &mixture,
        r#"{
  "family": {"kind": "moments", "n": 27, "families": ["gaussian", "laplace"]},
  "mode": "bounds",
  "alpha": [5, 7]
}
"#,
    )?;

    let exceptional = dir.join("exceptional_quartics.json");
    fs::write(
        &exceptional,
        r#"{
  "family": {"kind": "fatpoints", "n": 3, "degree": 4, "multiplicities": [2]},
  "mode": "certify",
  "alpha": [5],
  "prime": [2147483647, 2147483629, 1000000007],
  "seeds": [0, 1, 2],
  "seed": 0
}
"#,
    )?;

    for path in [&mixture, &exceptional] {
        let report = run_scenario_file(path)?;
        println!("== {} -> exit {}", path.display(), report.exit_status);
        println!("{}", report.to_json());
    }
    Ok(())
}
