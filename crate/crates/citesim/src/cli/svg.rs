//! Zero-dependency SVG line charts of detection rate against sample size.
//!
//! Fixed 800x500 canvas, log-scaled x axis, one polyline per method, a
//! legend, and a dashed horizontal reference line at the significance level.

use std::fmt::Write as _;
use std::path::Path;

use crate::cli::config::ExperimentConfig;
use crate::error::{Error, Result};
use crate::montecarlo::{DetectionSummary, Method};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 170.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 55.0;

/// Colorblind-safe palette (Okabe-Ito), one entry per method in
/// `Method::ALL` order.
fn color(m: Method) -> &'static str {
    match m {
        Method::NbRaw => "#D55E00",
        Method::LognoTrunc => "#0072B2",
        Method::AnovaLogTrunc => "#009E73",
        Method::LognoPlus1 => "#56B4E9",
        Method::AnovaLogPlus1 => "#CC79A7",
    }
}

fn x_scale(n: f64, n_min: f64, n_max: f64) -> f64 {
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    if n_max <= n_min {
        return MARGIN_LEFT + plot_w / 2.0;
    }
    MARGIN_LEFT + plot_w * (n.ln() - n_min.ln()) / (n_max.ln() - n_min.ln())
}

fn y_scale(rate: f64) -> f64 {
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    MARGIN_TOP + plot_h * (1.0 - rate)
}

/// Render the chart as an SVG 1.1 document.
pub fn render_svg(cfg: &ExperimentConfig, rows: &[DetectionSummary]) -> String {
    let ns: Vec<usize> = {
        let mut v: Vec<usize> = rows.iter().map(|r| r.n).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let n_min = ns.first().copied().unwrap_or(1) as f64;
    let n_max = ns.last().copied().unwrap_or(1) as f64;
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = y_scale(0.0);
    let y1 = y_scale(1.0);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let title = format!(
        "detection rate vs sample size (mu0={}, mu1={}, sigma={}, {} iterations, seed {})",
        cfg.mu0, cfg.mu1, cfg.sigma, cfg.iterations, cfg.seed
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="15" text-anchor="middle">{title}</text>"#,
        (x0 + x1) / 2.0
    );

    // Horizontal gridlines and y ticks every 0.2.
    for i in 0..=5 {
        let rate = i as f64 * 0.2;
        let y = y_scale(rate);
        let _ = writeln!(
            s,
            r##"<line x1="{x0}" y1="{y:.2}" x2="{x1}" y2="{y:.2}" stroke="#dddddd" stroke-width="1"/>"##
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="end">{rate:.1}</text>"#,
            x0 - 8.0,
            y + 4.0
        );
    }
    // X ticks at the grid's sample sizes.
    for &n in &ns {
        let x = x_scale(n as f64, n_min, n_max);
        let _ = writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{y0}" x2="{x:.2}" y2="{:.2}" stroke="#aaaaaa" stroke-width="1"/>"##,
            y0 + 5.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="middle">{n}</text>"#,
            y0 + 18.0
        );
    }
    // Axes.
    let _ = writeln!(
        s,
        r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black" stroke-width="1.5"/>"#
    );
    let _ = writeln!(
        s,
        r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black" stroke-width="1.5"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="13" text-anchor="middle">sample size n (log scale)</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.2}" font-family="sans-serif" font-size="13" text-anchor="middle" transform="rotate(-90 18 {:.2})">detection rate</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );

    // Reference line at alpha.
    let y_alpha = y_scale(cfg.alpha);
    let _ = writeln!(
        s,
        r##"<line x1="{x0}" y1="{y_alpha:.2}" x2="{x1}" y2="{y_alpha:.2}" stroke="#888888" stroke-width="1" stroke-dasharray="6 4"/>"##
    );
    let _ = writeln!(
        s,
        r##"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" fill="#555555">alpha = {}</text>"##,
        x1 - 70.0,
        y_alpha - 5.0,
        cfg.alpha
    );

    // One polyline per method, in canonical order, plus the legend.
    let mut legend_y = MARGIN_TOP + 10.0;
    for method in Method::ALL {
        let mut pts: Vec<(usize, f64)> = rows
            .iter()
            .filter(|r| r.method == method)
            .map(|r| (r.n, r.detection_rate()))
            .collect();
        if pts.is_empty() {
            continue;
        }
        pts.sort_by_key(|&(n, _)| n);
        let path: Vec<String> = pts
            .iter()
            .map(|&(n, rate)| {
                format!(
                    "{:.2},{:.2}",
                    x_scale(n as f64, n_min, n_max),
                    y_scale(rate)
                )
            })
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="2"/>"#,
            path.join(" "),
            color(method)
        );
        let lx = x1 + 12.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx}" y1="{legend_y:.2}" x2="{:.2}" y2="{legend_y:.2}" stroke="{}" stroke-width="2"/>"#,
            lx + 22.0,
            color(method)
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11">{}</text>"#,
            lx + 28.0,
            legend_y + 4.0,
            method.name()
        );
        legend_y += 20.0;
    }
    s.push_str("</svg>\n");
    s
}

pub fn write_svg(path: &Path, cfg: &ExperimentConfig, rows: &[DetectionSummary]) -> Result<()> {
    std::fs::write(path, render_svg(cfg, rows)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
