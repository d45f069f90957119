//! Standalone SVG line plots for figure CSVs: the two bound curves on top,
//! the ratio as a subplot below.

use std::path::Path;

use crate::error::{Error, Result};

struct Parsed {
    n: f64,
    r_blue: f64,
    /// Negative means vacuous; the orange polyline skips the point.
    r_orange: f64,
    ratio: f64,
}

fn parse_csv(text: &str) -> Result<Vec<Parsed>> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidArgument("empty CSV".into()))?;
    if header.trim() != "n,r_blue,r_orange,ratio" {
        return Err(Error::InvalidArgument(format!(
            "unexpected CSV header '{header}', need 'n,r_blue,r_orange,ratio'"
        )));
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(Error::InvalidArgument(format!(
                "CSV row {} has {} fields, need 4",
                i + 2,
                fields.len()
            )));
        }
        let parse = |s: &str, what: &str| -> Result<f64> {
            s.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("CSV row {}: bad {what} '{s}'", i + 2))
            })
        };
        rows.push(Parsed {
            n: parse(fields[0], "n")?,
            r_blue: parse(fields[1], "r_blue")?,
            r_orange: parse(fields[2], "r_orange")?,
            ratio: parse(fields[3], "ratio")?,
        });
    }
    if rows.is_empty() {
        return Err(Error::InvalidArgument("CSV has a header but no rows".into()));
    }
    Ok(rows)
}

const WIDTH: f64 = 900.0;
const TOP_H: f64 = 420.0;
const GAP: f64 = 60.0;
const BOT_H: f64 = 200.0;
const MARGIN: f64 = 60.0;

struct Scale {
    min: f64,
    max: f64,
    log: bool,
}

impl Scale {
    fn fit(values: impl Iterator<Item = f64>) -> Scale {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for v in values {
            min = min.min(v);
            max = max.max(v);
        }
        if !min.is_finite() {
            return Scale {
                min: 0.0,
                max: 1.0,
                log: false,
            };
        }
        let log = min > 0.0 && max / min.max(1.0) > 1_000.0;
        if (max - min).abs() < f64::EPSILON {
            // Degenerate single-value range.
            max = min + 1.0;
        }
        Scale { min, max, log }
    }

    fn place(&self, v: f64, lo_px: f64, hi_px: f64) -> f64 {
        let (a, b, x) = if self.log {
            (self.min.ln(), self.max.ln(), v.max(self.min).ln())
        } else {
            (self.min, self.max, v)
        };
        let t = ((x - a) / (b - a)).clamp(0.0, 1.0);
        lo_px + t * (hi_px - lo_px)
    }
}

fn polyline(points: &[(f64, f64)], color: &str) -> String {
    if points.is_empty() {
        return String::new();
    }
    if points.len() == 1 {
        // Degenerate but valid: a single marker.
        return format!(
            "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"{color}\"/>\n",
            points[0].0, points[0].1
        );
    }
    let coords: Vec<String> = points
        .iter()
        .map(|(x, y)| format!("{x:.2},{y:.2}"))
        .collect();
    format!(
        "  <polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
        coords.join(" ")
    )
}

fn render(rows: &[Parsed]) -> String {
    let height = TOP_H + GAP + BOT_H + 2.0 * MARGIN;
    let xs = Scale::fit(rows.iter().map(|r| r.n));
    let ys = Scale::fit(
        rows.iter()
            .flat_map(|r| [r.r_blue, if r.r_orange >= 0.0 { r.r_orange } else { r.r_blue }]),
    );
    let x_of = |n: f64| xs.place(n, MARGIN, WIDTH - MARGIN);
    let y_top = |v: f64| ys.place(v, MARGIN + TOP_H, MARGIN);

    let blue: Vec<(f64, f64)> = rows.iter().map(|r| (x_of(r.n), y_top(r.r_blue))).collect();
    // Break the orange curve at vacuous rows.
    let mut orange_segments: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
    for r in rows {
        if r.r_orange >= 0.0 {
            orange_segments
                .last_mut()
                .unwrap()
                .push((x_of(r.n), y_top(r.r_orange)));
        } else if !orange_segments.last().unwrap().is_empty() {
            orange_segments.push(Vec::new());
        }
    }

    let bot_top = MARGIN + TOP_H + GAP;
    let ratio_scale = Scale {
        min: 0.0,
        max: 1.0,
        log: false,
    };
    let y_bot = |v: f64| ratio_scale.place(v.clamp(0.0, 1.0), bot_top + BOT_H, bot_top);
    let ratio: Vec<(f64, f64)> = rows.iter().map(|r| (x_of(r.n), y_bot(r.ratio))).collect();

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{height}\" viewBox=\"0 0 {WIDTH} {height}\">\n"
    ));
    svg.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    // Axes.
    for (top, h) in [(MARGIN, TOP_H), (bot_top, BOT_H)] {
        svg.push_str(&format!(
            "  <rect x=\"{MARGIN}\" y=\"{top}\" width=\"{:.2}\" height=\"{h}\" fill=\"none\" stroke=\"#999\"/>\n",
            WIDTH - 2.0 * MARGIN
        ));
    }
    svg.push_str(&polyline(&blue, "#1f77b4"));
    for seg in &orange_segments {
        svg.push_str(&polyline(seg, "#ff7f0e"));
    }
    svg.push_str(&polyline(&ratio, "#1f77b4"));
    // Labels.
    let label = |x: f64, y: f64, text: &str, anchor: &str| {
        format!(
            "  <text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"12\" font-family=\"sans-serif\" text-anchor=\"{anchor}\">{text}</text>\n"
        )
    };
    svg.push_str(&label(
        WIDTH / 2.0,
        MARGIN - 20.0,
        &format!(
            "max r below ambient (blue) vs guaranteed by the criterion (orange){}",
            if ys.log { ", log scale" } else { "" }
        ),
        "middle",
    ));
    svg.push_str(&label(WIDTH / 2.0, bot_top - 15.0, "ratio orange / blue", "middle"));
    svg.push_str(&label(MARGIN, MARGIN + TOP_H + 18.0, &format!("n = {}", xs.min), "start"));
    svg.push_str(&label(
        WIDTH - MARGIN,
        MARGIN + TOP_H + 18.0,
        &format!("n = {}", xs.max),
        "end",
    ));
    svg.push_str(&label(MARGIN - 6.0, MARGIN + 12.0, &format!("{:.0}", ys.max), "end"));
    svg.push_str(&label(MARGIN - 6.0, MARGIN + TOP_H, &format!("{:.0}", ys.min), "end"));
    svg.push_str(&label(MARGIN - 6.0, bot_top + 12.0, "1", "end"));
    svg.push_str(&label(MARGIN - 6.0, bot_top + BOT_H, "0", "end"));
    svg.push_str("</svg>\n");
    svg
}

/// Read a figure CSV and write the corresponding SVG.
pub fn emit_plot(csv_path: &Path, svg_path: &Path) -> Result<()> {
    let text = std::fs::read_to_string(csv_path)?;
    let rows = parse_csv(&text)?;
    std::fs::write(svg_path, render(&rows))?;
    Ok(())
}
