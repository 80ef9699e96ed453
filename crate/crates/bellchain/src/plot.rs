// Copyright 2026 The Bellchain Developers
// SPDX-License-Identifier: Apache-2.0

//! Self-contained SVG line and scatter plots of the CSV outputs.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{HarnessError, Result};
use crate::formats;

const W: f64 = 720.0;
const H: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 55.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Trace,
    Sweep,
    DisorderScatter,
}

impl PlotKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "trace" => Some(PlotKind::Trace),
            "sweep" => Some(PlotKind::Sweep),
            "disorder" | "disorder_scatter" => Some(PlotKind::DisorderScatter),
            _ => None,
        }
    }
}

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn new(xs: impl Iterator<Item = f64> + Clone, y: (f64, f64)) -> Self {
        let lo = xs.clone().fold(f64::INFINITY, f64::min);
        let hi = xs.fold(f64::NEG_INFINITY, f64::max);
        let (lo, hi) = if lo.is_finite() { (lo, hi) } else { (0.0, 1.0) };
        let x = if hi > lo { (lo, hi) } else { (lo - 0.5, lo + 0.5) };
        Self { x, y }
    }

    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x.0) / (self.x.1 - self.x.0) * (W - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        H - BOTTOM - (y - self.y.0) / (self.y.1 - self.y.0) * (H - TOP - BOTTOM)
    }
}

fn header(out: &mut String, title: &str) {
    let _ = write!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">
<title>{}</title>
<rect width="{W}" height="{H}" fill="white"/>
"#,
        escape(title)
    );
}

fn axes(out: &mut String, f: &Frame, xlabel: &str, ylabel: &str) {
    let (x0, x1, y0, y1) = (LEFT, W - RIGHT, TOP, H - BOTTOM);
    let _ = writeln!(out, r#"<g class="axes" stroke="black" fill="none"><rect x="{x0}" y="{y0}" width="{}" height="{}"/></g>"#, x1 - x0, y1 - y0);
    for k in 0..=5 {
        let t = k as f64 / 5.0;
        let xv = f.x.0 + t * (f.x.1 - f.x.0);
        let yv = f.y.0 + t * (f.y.1 - f.y.0);
        let (px, py) = (f.px(xv), f.py(yv));
        let _ = writeln!(
            out,
            r#"<line x1="{px:.2}" y1="{y1}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            y1 + 5.0,
            y1 + 18.0,
            tick(xv)
        );
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{x0}" y2="{py:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            x0 - 5.0,
            x0 - 8.0,
            py + 4.0,
            tick(yv)
        );
    }
    let _ = writeln!(
        out,
        r#"<text class="xlabel" x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        (x0 + x1) / 2.0,
        H - 12.0,
        escape(xlabel)
    );
    let _ = writeln!(
        out,
        r#"<text class="ylabel" x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0,
        escape(ylabel)
    );
}

fn tick(v: f64) -> String {
    let s = format!("{:.3}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn polyline(out: &mut String, f: &Frame, pts: &[(f64, f64)], class: &str, color: &str, dash: &str) {
    if pts.len() == 1 {
        let (x, y) = pts[0];
        let _ = writeln!(out, r#"<circle class="{class}" cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#, f.px(x), f.py(y));
        return;
    }
    let mut d = String::new();
    for (x, y) in pts {
        let _ = write!(d, "{:.2},{:.2} ", f.px(*x), f.py(*y));
    }
    let _ = writeln!(
        out,
        r#"<polyline class="{class}" points="{}" fill="none" stroke="{color}" stroke-width="1.5"{dash}/>"#,
        d.trim_end()
    );
}

fn legend(out: &mut String, entries: &[(&str, &str)]) {
    for (i, (name, color)) in entries.iter().enumerate() {
        let y = TOP + 14.0 + 16.0 * i as f64;
        let x = W - RIGHT - 150.0;
        let _ = writeln!(
            out,
            r#"<line x1="{x}" y1="{y}" x2="{}" y2="{y}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
            x + 20.0,
            x + 26.0,
            y + 4.0,
            escape(name)
        );
    }
}

fn footer(mut out: String) -> String {
    out.push_str("</svg>\n");
    out
}

/// EoF and fidelity against time.
pub fn trace_svg(records: &[bellchain_core::TransmissionRecord]) -> String {
    let mut out = String::new();
    header(&mut out, "Receiver EoF and fidelity");
    let f = Frame::new(records.iter().map(|r| r.tau), (0.0, 1.0));
    axes(&mut out, &f, "Jt/ħ", "EoF, fidelity");
    let eof: Vec<_> = records.iter().map(|r| (r.tau, r.eof)).collect();
    let fid: Vec<_> = records.iter().map(|r| (r.tau, r.fidelity)).collect();
    polyline(&mut out, &f, &fid, "fidelity", "#d62728", r#" stroke-dasharray="4 3""#);
    polyline(&mut out, &f, &eof, "eof", "#1f77b4", "");
    legend(&mut out, &[("EoF", "#1f77b4"), ("fidelity", "#d62728")]);
    footer(out)
}

/// Best objective per `J_m`, with the peak marked by `J_m`, `Jt/ħ` and value.
pub fn sweep_svg(samples: &[bellchain_core::SweepSample]) -> String {
    let mut out = String::new();
    header(&mut out, "Best objective per coupling");
    let f = Frame::new(samples.iter().map(|s| s.jm), (0.0, 1.0));
    axes(&mut out, &f, "J_m/J", "max over time");
    let pts: Vec<_> = samples.iter().map(|s| (s.jm, s.objective)).collect();
    polyline(&mut out, &f, &pts, "objective", "#1f77b4", "");
    let mut best: Option<&bellchain_core::SweepSample> = None;
    for s in samples {
        let take = match best {
            None => true,
            Some(b) => s.objective > b.objective || (s.objective == b.objective && s.tau_star < b.tau_star),
        };
        if take {
            best = Some(s);
        }
    }
    if let Some(b) = best {
        let (px, py) = (f.px(b.jm), f.py(b.objective));
        let tx = if px > W / 2.0 { px - 8.0 } else { px + 8.0 };
        let anchor = if px > W / 2.0 { "end" } else { "start" };
        let _ = writeln!(
            out,
            r#"<g class="peak" data-jm="{}" data-tau-star="{}" data-value="{}"><circle cx="{px:.2}" cy="{py:.2}" r="4" fill="none" stroke="black"/><text x="{tx:.2}" y="{:.2}" text-anchor="{anchor}">J_m = {}, Jt/ħ = {}, value = {}</text></g>"#,
            formats::fmt_num(b.jm),
            formats::fmt_num(b.tau_star),
            formats::fmt_num(b.objective),
            (py - 8.0).max(TOP + 12.0),
            tick(b.jm),
            tick(b.tau_star),
            format!("{:.4}", b.objective)
        );
    }
    footer(out)
}

/// Every realization as a cross plus mean, min and max curves.
pub fn disorder_svg(samples: &[formats::DisorderSample]) -> String {
    let mut out = String::new();
    header(&mut out, "Receiver EoF under static disorder");
    let mut by_p: BTreeMap<u64, (f64, Vec<f64>)> = BTreeMap::new();
    for s in samples {
        by_p.entry(s.p.to_bits()).or_insert((s.p, Vec::new())).1.push(s.eof);
    }
    let lo = samples.iter().map(|s| s.eof).fold(1.0, f64::min);
    let y0 = (lo * 10.0).floor() / 10.0;
    let f = Frame::new(samples.iter().map(|s| s.p * 100.0), (y0.min(0.9).max(0.0), 1.0));
    axes(&mut out, &f, "p (%)", "EoF");
    out.push_str(r##"<g class="marks" stroke="#888888" stroke-width="0.6">"##);
    out.push('\n');
    for s in samples {
        let (x, y) = (f.px(s.p * 100.0), f.py(s.eof));
        let _ = writeln!(out, r#"<path class="mark" d="M{:.2} {:.2}l4 4m0 -4l-4 4"/>"#, x - 2.0, y - 2.0);
    }
    out.push_str("</g>\n");
    let mut groups: Vec<(f64, Vec<f64>)> = by_p.into_values().collect();
    groups.sort_by(|a, b| a.0.total_cmp(&b.0));
    let curve = |g: &dyn Fn(&[f64]) -> f64| groups.iter().map(|(p, v)| (p * 100.0, g(v))).collect::<Vec<_>>();
    let mean = curve(&|v| v.iter().sum::<f64>() / v.len() as f64);
    let min = curve(&|v| v.iter().copied().fold(f64::INFINITY, f64::min));
    let max = curve(&|v| v.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    polyline(&mut out, &f, &max, "summary max", "#1f77b4", "");
    polyline(&mut out, &f, &mean, "summary mean", "#d62728", r#" stroke-dasharray="2 2""#);
    polyline(&mut out, &f, &min, "summary min", "#2ca02c", r#" stroke-dasharray="6 3""#);
    legend(&mut out, &[("max", "#1f77b4"), ("mean", "#d62728"), ("min", "#2ca02c")]);
    footer(out)
}

/// Reads `csv` with the schema of `kind` and writes the SVG to `out`.
pub fn emit_plot(csv: &Path, kind: PlotKind, out: &Path) -> Result<()> {
    let svg = match kind {
        PlotKind::Trace => trace_svg(&formats::read_trace(csv)?),
        PlotKind::Sweep => sweep_svg(&formats::read_sweep(csv)?),
        PlotKind::DisorderScatter => disorder_svg(&formats::read_disorder(csv)?),
    };
    std::fs::write(out, svg).map_err(|e| HarnessError::io(out, e))
}
