//! Minimal SVG line, scatter and bar charts.

use std::fmt::Write;

const W: f64 = 640.0;
const H: f64 = 420.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

pub const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

pub struct Series {
    pub name: String,
    pub color: &'static str,
    pub points: Vec<(f64, f64)>,
    pub dashed: bool,
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn new(xs: impl Iterator<Item = f64> + Clone, ys: impl Iterator<Item = f64> + Clone) -> Self {
        let (x0, x1) = bounds(xs);
        let (y0, y1) = bounds(ys);
        Frame { x0, x1, y0, y1 }
    }

    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x0) / (self.x1 - self.x0) * (W - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        H - BOTTOM - (y - self.y0) / (self.y1 - self.y0) * (H - TOP - BOTTOM)
    }
}

fn bounds(v: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = v.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    let pad = if hi > lo { 0.05 * (hi - lo) } else { lo.abs().max(1.0) * 0.1 };
    (lo - pad, hi + pad)
}

fn open(title: &str, xlabel: &str, ylabel: &str) -> String {
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#).unwrap();
    writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#).unwrap();
    writeln!(s, r#"<text x="{:.1}" y="22" text-anchor="middle" font-size="14">{}</text>"#, W / 2.0, esc(title)).unwrap();
    writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#, (LEFT + W - RIGHT) / 2.0, H - 15.0, esc(xlabel)).unwrap();
    writeln!(s, r#"<text x="18" y="{:.1}" text-anchor="middle" transform="rotate(-90 18 {:.1})">{}</text>"#, H / 2.0, H / 2.0, esc(ylabel)).unwrap();
    s
}

fn axes(s: &mut String, f: &Frame, x_ticks: bool) {
    let (l, r, t, b) = (LEFT, W - RIGHT, TOP, H - BOTTOM);
    writeln!(s, r#"<path d="M{l:.1},{t:.1} L{l:.1},{b:.1} L{r:.1},{b:.1}" fill="none" stroke="black"/>"#).unwrap();
    for i in 0..=4 {
        let y = f.y0 + (f.y1 - f.y0) * i as f64 / 4.0;
        let py = f.py(y);
        writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#, l - 6.0, py + 4.0, tick(y)).unwrap();
        writeln!(s, r#"<line x1="{l:.1}" y1="{py:.1}" x2="{r:.1}" y2="{py:.1}" stroke="lightgray"/>"#).unwrap();
        if x_ticks {
            let x = f.x0 + (f.x1 - f.x0) * i as f64 / 4.0;
            writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#, f.px(x), b + 16.0, tick(x)).unwrap();
        }
    }
}

fn legend(s: &mut String, names: &[(&str, &str)]) {
    for (i, (name, color)) in names.iter().enumerate() {
        let y = TOP + 10.0 + 18.0 * i as f64;
        let x = W - RIGHT + 12.0;
        writeln!(s, r#"<rect x="{x:.1}" y="{:.1}" width="12" height="12" fill="{color}"/>"#, y - 10.0).unwrap();
        writeln!(s, r#"<text x="{:.1}" y="{y:.1}">{}</text>"#, x + 18.0, esc(name)).unwrap();
    }
}

fn tick(v: f64) -> String {
    if v == 0.0 || (v.abs() >= 0.01 && v.abs() < 1e5) {
        format!("{v:.3}").trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{v:.2e}")
    }
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Polyline chart with point markers.
pub fn line_chart(title: &str, xlabel: &str, ylabel: &str, series: &[Series]) -> String {
    let all = series.iter().flat_map(|s| s.points.iter().copied());
    let f = Frame::new(all.clone().map(|p| p.0), all.map(|p| p.1));
    let mut s = open(title, xlabel, ylabel);
    axes(&mut s, &f, true);
    for sr in series {
        let d: Vec<String> = sr.points.iter().map(|(x, y)| format!("{:.1},{:.1}", f.px(*x), f.py(*y))).collect();
        let dash = if sr.dashed { r#" stroke-dasharray="6,4""# } else { "" };
        writeln!(s, r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="2"{dash}/>"#, d.join(" "), sr.color).unwrap();
        for (x, y) in &sr.points {
            writeln!(s, r#"<circle cx="{:.1}" cy="{:.1}" r="3" fill="{}"/>"#, f.px(*x), f.py(*y), sr.color).unwrap();
        }
    }
    legend(&mut s, &series.iter().map(|x| (x.name.as_str(), x.color)).collect::<Vec<_>>());
    s.push_str("</svg>\n");
    s
}

/// Scatter of predicted against target with the 1:1 line.
pub fn parity_plot(title: &str, label: &str, groups: &[(&str, &'static str, Vec<(f64, f64)>)]) -> String {
    let all: Vec<f64> = groups.iter().flat_map(|g| g.2.iter().flat_map(|p| [p.0, p.1])).collect();
    let f = Frame::new(all.iter().copied(), all.iter().copied());
    let mut s = open(title, &format!("target {label}"), &format!("predicted {label}"));
    axes(&mut s, &f, true);
    writeln!(s, r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="black" stroke-dasharray="4,4"/>"#, f.px(f.x0), f.py(f.y0), f.px(f.x1), f.py(f.y1)).unwrap();
    for (_, color, pts) in groups {
        for (x, y) in pts {
            writeln!(s, r#"<circle cx="{:.1}" cy="{:.1}" r="2" fill="{color}" fill-opacity="0.6"/>"#, f.px(*x), f.py(*y)).unwrap();
        }
    }
    legend(&mut s, &groups.iter().map(|g| (g.0, g.1)).collect::<Vec<_>>());
    s.push_str("</svg>\n");
    s
}

/// Grouped bars, one group per category.
pub fn bar_chart(title: &str, ylabel: &str, categories: &[String], groups: &[(&str, &'static str, Vec<f64>)]) -> String {
    let vals = groups.iter().flat_map(|g| g.2.iter().copied()).chain(std::iter::once(0.0));
    let f = Frame::new([0.0, categories.len() as f64].into_iter(), vals);
    let mut s = open(title, "section", ylabel);
    axes(&mut s, &f, false);
    let slot = (W - LEFT - RIGHT) / categories.len().max(1) as f64;
    let bw = 0.8 * slot / groups.len().max(1) as f64;
    let zero = f.py(0.0);
    for (c, name) in categories.iter().enumerate() {
        let x0 = LEFT + slot * c as f64 + 0.1 * slot;
        for (g, (_, color, v)) in groups.iter().enumerate() {
            let y = f.py(v[c]);
            writeln!(s, r#"<rect x="{:.1}" y="{:.1}" width="{bw:.1}" height="{:.1}" fill="{color}"/>"#, x0 + bw * g as f64, y.min(zero), (y - zero).abs()).unwrap();
        }
        let cx = LEFT + slot * (c as f64 + 0.5);
        writeln!(s, r#"<text x="{cx:.1}" y="{:.1}" text-anchor="middle" font-size="10">{}</text>"#, H - BOTTOM + 16.0, esc(name)).unwrap();
    }
    legend(&mut s, &groups.iter().map(|g| (g.0, g.1)).collect::<Vec<_>>());
    s.push_str("</svg>\n");
    s
}
