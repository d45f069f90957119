//! Regenerate the two standard sweep figures as CSV plus SVG.
//!
//! Blue: the largest r whose expected dimension stays below the ambient
//! space. Orange: the largest r the criterion still guarantees. The ratio
//! subplot shows how the guarantee sharpens as n grows.
//!
//! Run with: cargo run --example figure_sweeps

use terracini::cli::figures::{
    figure_fatpoints, figure_froberg, rows_to_csv, FatPointsFigure, Fraction, FrobergFigure,
};
use terracini::cli::plot::emit_plot;

fn main() -> terracini::Result<()> {
    let dir = std::env::temp_dir().join("nd_figures");
    std::fs::create_dir_all(&dir)?;

    let froberg = figure_froberg(
        &FrobergFigure::standard(10, 60),
        Fraction { num: 1, den: 5 },
    )?;
    let csv = dir.join("froberg.csv");
    std::fs::write(&csv, rows_to_csv(&froberg))?;
    emit_plot(&csv, &dir.join("froberg.svg"))?;
    println!(
        "froberg sweep: {} rows, ratio {:.4} at n = {} up to {:.4} at n = {}",
        froberg.len(),
        froberg.first().unwrap().ratio,
        froberg.first().unwrap().n,
        froberg.last().unwrap().ratio,
        froberg.last().unwrap().n,
    );

    let fat = figure_fatpoints(
        &FatPointsFigure::standard(4, 60),
        Fraction { num: 3, den: 10 },
    )?;
    let csv = dir.join("fatpoints.csv");
    std::fs::write(&csv, rows_to_csv(&fat))?;
    emit_plot(&csv, &dir.join("fatpoints.svg"))?;
    let threshold = fat.iter().find(|row| row.r_orange.is_some());
    println!(
        "fatpoints sweep: {} rows, criterion first bites at n = {:?}",
        fat.len(),
        threshold.map(|row| row.n),
    );
    println!("wrote CSV + SVG under {}", dir.display());
    Ok(())
}
