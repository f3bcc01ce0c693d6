//! CSV and SVG emitters.

use std::fmt::Write;

use ccm_core::format::sig12;
use ccm_core::gaussian::{RegimeLabel, RegimeMap, SweepRow, SweepSummary};

pub fn regime_color(label: RegimeLabel) -> &'static str {
    match label {
        RegimeLabel::VeryStrong => "#2e9d3a",
        RegimeLabel::Pdc => "#2f5fbf",
        RegimeLabel::Both => "#1b9a9a",
        RegimeLabel::GapOnly => "#a0a0a0",
    }
}

pub fn regime_csv(map: &RegimeMap) -> String {
    let mut s = String::from("a_lo,a_hi,b_lo,b_hi,label\n");
    let n = map.spec.cells;
    for row in 0..n {
        let (b0, b1) = map.b_range(row);
        for col in 0..n {
            let (a0, a1) = map.a_range(col);
            let _ = writeln!(s, "{},{},{},{},{}", sig12(a0), sig12(a1), sig12(b0), sig12(b1), map.label(row, col));
        }
    }
    s
}

/// Heat map with `a` to the right and `b` upward, plus a legend.
pub fn regime_svg(map: &RegimeMap) -> String {
    const PLOT: f64 = 480.0;
    const LEFT: f64 = 60.0;
    const TOP: f64 = 20.0;
    let n = map.spec.cells;
    let cell = PLOT / n as f64;
    let width = LEFT + PLOT + 170.0;
    let height = TOP + PLOT + 50.0;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">"#
    );
    for row in 0..n {
        for col in 0..n {
            let x = LEFT + col as f64 * cell;
            let y = TOP + PLOT - (row + 1) as f64 * cell;
            let _ = writeln!(
                s,
                r#"<rect x="{x:.3}" y="{y:.3}" width="{cell:.3}" height="{cell:.3}" fill="{}"/>"#,
                regime_color(map.label(row, col))
            );
        }
    }
    let _ = writeln!(s, r#"<rect x="{LEFT}" y="{TOP}" width="{PLOT}" height="{PLOT}" fill="none" stroke="black"/>"#);
    let (bottom, right) = (TOP + PLOT, LEFT + PLOT);
    let _ = writeln!(s, r#"<text x="{LEFT}" y="{}" text-anchor="middle">0</text>"#, bottom + 15.0);
    let _ = writeln!(s, r#"<text x="{right}" y="{}" text-anchor="middle">{}</text>"#, bottom + 15.0, sig12(map.spec.a_max));
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">a</text>"#, LEFT + PLOT / 2.0, bottom + 35.0);
    let _ = writeln!(s, r#"<text x="{}" y="{bottom}" text-anchor="end">0</text>"#, LEFT - 6.0);
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#, LEFT - 6.0, TOP + 10.0, sig12(map.spec.b_max));
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">|b|</text>"#, LEFT - 6.0, TOP + PLOT / 2.0);
    let legend = [RegimeLabel::VeryStrong, RegimeLabel::Pdc, RegimeLabel::Both, RegimeLabel::GapOnly];
    for (i, l) in legend.into_iter().enumerate() {
        let y = TOP + 20.0 * i as f64;
        let _ = writeln!(s, r#"<rect x="{}" y="{y}" width="14" height="14" fill="{}"/>"#, right + 20.0, regime_color(l));
        let _ = writeln!(s, r#"<text x="{}" y="{}">{l}</text>"#, right + 40.0, y + 11.0);
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}">P1={} P2={}</text>"#,
        right + 20.0,
        TOP + 100.0,
        sig12(map.spec.p1),
        sig12(map.spec.p2)
    );
    s.push_str("</svg>\n");
    s
}

pub const SWEEP_HEADER: &str = "kind,a_re,a_im,b_re,b_im,p1,p2,gap_bits,ratio,contained";

fn sweep_line(s: &mut String, kind: &str, r: &SweepRow) {
    let p = &r.params;
    let _ = writeln!(
        s,
        "{kind},{},{},{},{},{},{},{},{},{}",
        sig12(p.a.re),
        sig12(p.a.im),
        sig12(p.b.re),
        sig12(p.b.im),
        sig12(p.p1),
        sig12(p.p2),
        sig12(r.gap_bits),
        sig12(r.ratio),
        r.contained
    );
}

/// One `point` row per grid point, then `max_gap` and `max_ratio` rows that
/// repeat the arg-max parameters.
pub fn sweep_csv(summary: &SweepSummary) -> String {
    let mut s = String::from(SWEEP_HEADER);
    s.push('\n');
    for r in &summary.rows {
        sweep_line(&mut s, "point", r);
    }
    for (kind, at) in [("max_gap", summary.max_gap_at), ("max_ratio", summary.max_ratio_at)] {
        let row = summary.rows.iter().find(|r| r.params == at).expect("arg-max is a grid point");
        sweep_line(&mut s, kind, row);
    }
    s
}
