//! Self-contained SVG line plots. Rendering reads only the [`ResultTable`]
//! (first column = x axis, remaining columns = series); no physics is
//! computed here.

use crate::table::ResultTable;

const WIDTH: f64 = 960.0;
const HEIGHT: f64 = 600.0;
const MARGIN_LEFT: f64 = 90.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 70.0;

const PALETTE: &[&str] = &[
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf",
];

fn axis_label(col: &crate::table::Column) -> String {
    if col.unit.is_empty() {
        col.name.to_string()
    } else {
        format!("{} ({})", col.name, col.unit)
    }
}

/// Renders every column after the first against the first column as a
/// polyline, with linear or (for the x axis) logarithmic scaling, ticks and
/// a legend.
pub fn render(table: &ResultTable) -> String {
    let n_series = table.columns.len().saturating_sub(1);
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str(&format!(
        "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    ));
    if n_series == 0 || table.rows.is_empty() {
        svg.push_str("</svg>\n");
        return svg;
    }

    let xmap = |v: f64| -> Option<f64> {
        if table.log_x {
            if v > 0.0 {
                Some(v.log10())
            } else {
                None
            }
        } else {
            v.is_finite().then_some(v)
        }
    };
    let xs: Vec<Option<f64>> = table.rows.iter().map(|r| xmap(r[0])).collect();
    let (mut x_lo, mut x_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for x in xs.iter().flatten() {
        x_lo = x_lo.min(*x);
        x_hi = x_hi.max(*x);
    }
    let (mut y_lo, mut y_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for row in &table.rows {
        for v in &row[1..] {
            if v.is_finite() {
                y_lo = y_lo.min(*v);
                y_hi = y_hi.max(*v);
            }
        }
    }
    if !(x_lo < x_hi) {
        x_hi = x_lo + 1.0;
    }
    if !(y_lo < y_hi) {
        let pad = y_lo.abs().max(1.0) * 0.1;
        y_lo -= pad;
        y_hi += pad;
    }
    let y_pad = 0.05 * (y_hi - y_lo);
    y_lo -= y_pad;
    y_hi += y_pad;

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let px = |x: f64| MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let py = |y: f64| MARGIN_TOP + (y_hi - y) / (y_hi - y_lo) * plot_h;

    // frame
    svg.push_str(&format!(
        "<rect x=\"{MARGIN_LEFT}\" y=\"{MARGIN_TOP}\" width=\"{plot_w}\" height=\"{plot_h}\" \
         fill=\"none\" stroke=\"#333\"/>\n"
    ));

    // ticks
    let n_ticks = 6;
    for t in 0..n_ticks {
        let fx = t as f64 / (n_ticks - 1) as f64;
        let xv = x_lo + fx * (x_hi - x_lo);
        let x = px(xv);
        let label = if table.log_x {
            format!("{:.3e}", 10f64.powf(xv))
        } else {
            format!("{xv:.4}")
        };
        svg.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#333\"/>\n",
            MARGIN_TOP + plot_h,
            MARGIN_TOP + plot_h + 6.0
        ));
        svg.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\">{label}</text>\n",
            MARGIN_TOP + plot_h + 22.0
        ));
        let yv = y_lo + fx * (y_hi - y_lo);
        let y = py(yv);
        svg.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{MARGIN_LEFT}\" y2=\"{y:.2}\" stroke=\"#333\"/>\n",
            MARGIN_LEFT - 6.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">{yv:.3e}</text>\n",
            MARGIN_LEFT - 10.0,
            y + 4.0
        ));
    }

    // axis labels
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 18.0,
        axis_label(&table.columns[0])
    ));
    svg.push_str(&format!(
        "<text x=\"20\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\" \
         transform=\"rotate(-90 20 {:.2})\">{}</text>\n",
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0,
        table.scenario
    ));

    // series
    for (si, col) in table.columns[1..].iter().enumerate() {
        let color = PALETTE[si % PALETTE.len()];
        let mut points = String::new();
        for (row, x) in table.rows.iter().zip(&xs) {
            let (Some(x), y) = (x, row[si + 1]) else { continue };
            if !y.is_finite() {
                continue;
            }
            points.push_str(&format!("{:.2},{:.2} ", px(*x), py(y)));
        }
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            points.trim_end()
        ));
        // legend entry
        let ly = MARGIN_TOP + 16.0 + 18.0 * si as f64;
        let lx = MARGIN_LEFT + plot_w - 180.0;
        svg.push_str(&format!(
            "<line x1=\"{lx:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" \
             stroke=\"{color}\" stroke-width=\"2\"/>\n",
            lx + 24.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">{}</text>\n",
            lx + 30.0,
            ly + 4.0,
            axis_label(col)
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
