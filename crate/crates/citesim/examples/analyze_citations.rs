//! Analyze a citation dataset from a CSV file, including the zero-inflation
//! check, exactly as the `citesim fit` subcommand does.
//!
//!     cargo run --release --example analyze_citations [path/to/data.csv]
//!
//! Without an argument this writes a small simulated dataset first. The
//! expected file format is a header line `citations,factor` followed by one
//! `count,group` row per paper, with group 0 or 1.

use citesim::cli::fit::render_fit_table;
use citesim::cli::{cmd_fit, FitPolicy};
use citesim::montecarlo::{generate_dataset, SimConfig};
use std::path::PathBuf;

fn main() -> citesim::Result<()> {
    let dir = std::env::temp_dir();
    let data_path = match std::env::args().nth(1) {
        Some(p) => PathBuf::from(p),
        None => {
            // No input given: simulate 600 papers where group 1 is cited
            // more (log means 0.5 vs 0.9).
            let cfg = SimConfig {
                mu0: 0.5,
                mu1: 0.9,
                sigma: 1.0,
                n: 600,
                ..SimConfig::default()
            };
            let d = generate_dataset(&cfg, 0);
            let mut text = String::from("citations,factor\n");
            for (c, g) in d.citations().iter().zip(d.factor()) {
                text.push_str(&format!("{c},{}\n", u8::from(*g)));
            }
            let path = dir.join("citesim_demo_citations.csv");
            std::fs::write(&path, text).map_err(|source| citesim::Error::Io {
                path: path.clone(),
                source,
            })?;
            println!("no input file given; wrote a simulated one: {}\n", path.display());
            path
        }
    };

    let (report, report_path) = cmd_fit(&data_path, 0.05, FitPolicy::Auto, &dir)?;
    print!("{}", render_fit_table(&report));
    println!("\nreport written to {}", report_path.display());
    Ok(())
}
