//! Minimal static SVG plots. Output depends only on the input data.

use std::fmt::Write as _;

const W: f64 = 640.0;
const H: f64 = 400.0;
const PAD: f64 = 56.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

fn frame(out: &mut String, title: &str, xlabel: &str, ylabel: &str, x: (f64, f64), y: (f64, f64)) {
    let _ = write!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <text x=\"{cx}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">{t}</text>\n\
         <line x1=\"{PAD}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <line x1=\"{PAD}\" y1=\"{PAD}\" x2=\"{PAD}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <text x=\"{cx}\" y=\"{xl}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">{xlabel}</text>\n\
         <text x=\"14\" y=\"{cy}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 14 {cy})\">{ylabel}</text>\n\
         <text x=\"{PAD}\" y=\"{tx}\" font-family=\"sans-serif\" font-size=\"10\">{x0:.4}</text>\n\
         <text x=\"{r}\" y=\"{tx}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">{x1:.4}</text>\n\
         <text x=\"{ty}\" y=\"{b}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">{y0:.4}</text>\n\
         <text x=\"{ty}\" y=\"{PAD}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">{y1:.4}</text>\n",
        cx = W / 2.0,
        cy = H / 2.0,
        t = escape(title),
        b = H - PAD,
        r = W - PAD,
        xl = H - 12.0,
        tx = H - PAD + 14.0,
        ty = PAD - 4.0,
        xlabel = escape(xlabel),
        ylabel = escape(ylabel),
        x0 = x.0,
        x1 = x.1,
        y0 = y.0,
        y1 = y.1,
    );
}

fn sx(x: f64, r: (f64, f64)) -> f64 {
    PAD + (x - r.0) / (r.1 - r.0) * (W - 2.0 * PAD)
}

fn sy(y: f64, r: (f64, f64)) -> f64 {
    H - PAD - (y - r.0) / (r.1 - r.0) * (H - 2.0 * PAD)
}

/// Polyline of `(x, y)` points.
pub fn line_plot(title: &str, xlabel: &str, ylabel: &str, points: &[(f64, f64)]) -> String {
    let xr = bounds(points.iter().map(|p| p.0));
    let yr = bounds(points.iter().map(|p| p.1));
    let mut out = String::new();
    frame(&mut out, title, xlabel, ylabel, xr, yr);
    out.push_str("<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"");
    for (i, &(x, y)) in points.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{:.2},{:.2}", sx(x, xr), sy(y, yr));
    }
    out.push_str("\"/>\n</svg>\n");
    out
}

/// One horizontal bar per labelled interval.
pub fn interval_plot(title: &str, rows: &[(String, f64, f64)]) -> String {
    let xr = bounds(rows.iter().flat_map(|r| [r.1, r.2]));
    let yr = (0.0, rows.len().max(1) as f64);
    let mut out = String::new();
    frame(&mut out, title, "value", "", xr, yr);
    for (i, (label, lo, hi)) in rows.iter().enumerate() {
        let y = sy(i as f64 + 0.5, yr);
        let _ = writeln!(
            out,
            "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"firebrick\" stroke-width=\"3\"/>\n\
             <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"10\">{}</text>",
            sx(*lo, xr),
            sx(*hi, xr),
            PAD + 4.0,
            y - 6.0,
            escape(label)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_well_formed() {
        let pts = [(0.0, 1.0), (1.0, 3.0), (2.0, 2.0)];
        let a = line_plot("J <h>", "h", "J", &pts);
        assert_eq!(a, line_plot("J <h>", "h", "J", &pts));
        assert!(a.starts_with("<svg") && a.ends_with("</svg>\n"));
        assert!(a.contains("J &lt;h&gt;"));
        let b = interval_plot("ci", &[("delta".into(), 0.1, 0.4)]);
        assert!(b.contains("delta"));
        assert!(line_plot("empty", "x", "y", &[]).ends_with("</svg>\n"));
    }
}
