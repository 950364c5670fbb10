//! Minimal self-contained SVG line charts (no external assets, no scripts);
//! used by the scan command for the Q₁-versus-distance plot.

/// Render a single-series line chart as a standalone SVG document.
///
/// Axes carry five evenly spaced labeled ticks; the document embeds no
/// fonts, images, or stylesheets. Output is byte-deterministic for a given
/// input.
pub fn line_chart(
    points: &[(f64, f64)],
    width: u32,
    height: u32,
    x_label: &str,
    y_label: &str,
) -> String {
    let w = width.max(120) as f64;
    let h = height.max(100) as f64;
    let (ml, mr, mt, mb) = (64.0, 16.0, 16.0, 46.0);
    let plot_w = w - ml - mr;
    let plot_h = h - mt - mb;

    let (mut x_min, mut x_max) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        x_min = x_min.min(x);
        x_max = x_max.max(x);
        y_min = y_min.min(y);
        y_max = y_max.max(y);
    }
    if points.is_empty() || !x_min.is_finite() || !y_min.is_finite() {
        x_min = 0.0;
        x_max = 1.0;
        y_min = 0.0;
        y_max = 1.0;
    }
    if x_max - x_min < f64::MIN_POSITIVE {
        x_min -= 0.5;
        x_max += 0.5;
    }
    if y_max - y_min < f64::MIN_POSITIVE {
        y_min -= 0.5;
        y_max += 0.5;
    }
    let px = |x: f64| ml + (x - x_min) / (x_max - x_min) * plot_w;
    let py = |y: f64| mt + plot_h - (y - y_min) / (y_max - y_min) * plot_h;

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    ));
    s.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"white\"/>\n"
    ));
    // plot frame
    s.push_str(&format!(
        "  <rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n",
        ml, mt, plot_w, plot_h
    ));
    // ticks and labels
    for i in 0..=4u32 {
        let frac = i as f64 / 4.0;
        let xv = x_min + frac * (x_max - x_min);
        let xp = px(xv);
        s.push_str(&format!(
            "  <line x1=\"{xp:.2}\" y1=\"{:.2}\" x2=\"{xp:.2}\" y2=\"{:.2}\" stroke=\"black\" stroke-width=\"1\"/>\n",
            mt + plot_h,
            mt + plot_h + 5.0
        ));
        s.push_str(&format!(
            "  <text x=\"{xp:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
            mt + plot_h + 18.0,
            tick_label(xv)
        ));
        let yv = y_min + frac * (y_max - y_min);
        let yp = py(yv);
        s.push_str(&format!(
            "  <line x1=\"{:.2}\" y1=\"{yp:.2}\" x2=\"{:.2}\" y2=\"{yp:.2}\" stroke=\"black\" stroke-width=\"1\"/>\n",
            ml - 5.0,
            ml
        ));
        s.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{}</text>\n",
            ml - 8.0,
            yp + 4.0,
            tick_label(yv)
        ));
    }
    // axis labels
    s.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">{}</text>\n",
        ml + plot_w / 2.0,
        h - 8.0,
        escape(x_label)
    ));
    s.push_str(&format!(
        "  <text x=\"14\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 14 {:.2})\">{}</text>\n",
        mt + plot_h / 2.0,
        mt + plot_h / 2.0,
        escape(y_label)
    ));
    // data polyline
    if !points.is_empty() {
        s.push_str("  <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"");
        for (i, &(x, y)) in points.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push_str(&format!("{:.2},{:.2}", px(x), py(y)));
        }
        s.push_str("\"/>\n");
    }
    s.push_str("</svg>\n");
    s
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if (1e-3..1e5).contains(&a) {
        let s = format!("{v:.4}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_string()
    } else {
        format!("{v:.3e}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
