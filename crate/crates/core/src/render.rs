//! Minimal SVG output for portrait and wake diagrams: plain text emission,
//! no plotting dependency. Floating point is used here only to place marks
//! on the page; all combinatorics stay exact upstream.

use num_traits::ToPrimitive;

use crate::angle::Angle;
use crate::atlas::{Atlas, ComponentKind};
use crate::portrait::OrbitPortrait;

const SIZE: f64 = 600.0;
const RADIUS: f64 = 260.0;

const CLASS_COLORS: [&str; 6] = [
    "#1f77b4", "#2ca02c", "#9467bd", "#e377c2", "#8c564b", "#17becf",
];

fn position(theta: &Angle) -> (f64, f64) {
    let t = theta.num().to_f64().unwrap_or(0.0) / theta.den().to_f64().unwrap_or(1.0);
    let rad = std::f64::consts::TAU * t;
    (SIZE / 2.0 + RADIUS * rad.cos(), SIZE / 2.0 - RADIUS * rad.sin())
}

fn header(out: &mut String) {
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">\n",
        s = SIZE
    ));
    out.push_str(&format!(
        "  <circle cx=\"{c}\" cy=\"{c}\" r=\"{r}\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n",
        c = SIZE / 2.0,
        r = RADIUS
    ));
}

fn chord(out: &mut String, a: &Angle, b: &Angle, color: &str, dashed: bool) {
    let (x1, y1) = position(a);
    let (x2, y2) = position(b);
    let dash = if dashed { " stroke-dasharray=\"6,4\"" } else { "" };
    out.push_str(&format!(
        "  <line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"{color}\" stroke-width=\"1.5\"{dash}/>\n",
    ));
}

/// Arc drawn along the circle from `start` counterclockwise to `end`.
fn boundary_arc(out: &mut String, start: &Angle, end: &Angle, color: &str, dashed: bool) {
    let (x1, y1) = position(start);
    let (x2, y2) = position(end);
    let len = crate::angle::DirectedArc::new(start.clone(), end.clone())
        .map(|a| a.length().num().to_f64().unwrap_or(0.0) / a.length().den().to_f64().unwrap_or(1.0))
        .unwrap_or(0.0);
    let large = if len > 0.5 { 1 } else { 0 };
    let dash = if dashed { " stroke-dasharray=\"6,4\"" } else { "" };
    // SVG y grows downward, so counterclockwise on the circle is sweep 0.
    out.push_str(&format!(
        "  <path d=\"M {x1:.2} {y1:.2} A {r} {r} 0 {large} 0 {x2:.2} {y2:.2}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"4\"{dash}/>\n",
        r = RADIUS
    ));
}

fn label(out: &mut String, theta: &Angle) {
    let t = theta.num().to_f64().unwrap_or(0.0) / theta.den().to_f64().unwrap_or(1.0);
    let rad = std::f64::consts::TAU * t;
    let lr = RADIUS + 22.0;
    let x = SIZE / 2.0 + lr * rad.cos();
    let y = SIZE / 2.0 - lr * rad.sin();
    out.push_str(&format!(
        "  <text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"13\" text-anchor=\"middle\" dominant-baseline=\"middle\">{theta}</text>\n",
    ));
}

/// Portrait diagram: class chords, one color per class, with the
/// characteristic arc highlighted and the critical arc dashed.
pub fn render_portrait(portrait: &OrbitPortrait) -> String {
    let mut out = String::new();
    header(&mut out);
    for (i, class) in portrait.classes().iter().enumerate() {
        let color = CLASS_COLORS[i % CLASS_COLORS.len()];
        let v = class.len();
        if v == 2 {
            chord(&mut out, &class[0], &class[1], color, false);
        } else if v > 2 {
            for t in 0..v {
                chord(&mut out, &class[t], &class[(t + 1) % v], color, false);
            }
        }
        for theta in class {
            label(&mut out, theta);
        }
    }
    if let Ok(arc) = portrait.characteristic_arc() {
        boundary_arc(&mut out, arc.start(), arc.end(), "#d62728", false);
    }
    if let Ok(arc) = portrait.critical_arc() {
        boundary_arc(&mut out, arc.start(), arc.end(), "#ff7f0e", true);
    }
    out.push_str("</svg>\n");
    out
}

/// Wake diagram: one chord per root pair, nested by construction.
/// Returns the SVG text and the number of chords drawn.
pub fn render_wakes(atlas: &Atlas, max_period: u32) -> (String, usize) {
    let mut out = String::new();
    header(&mut out);
    let mut chords = 0;
    for c in atlas.components() {
        if c.kind == ComponentKind::MainCardioid || c.period > max_period {
            continue;
        }
        let color = CLASS_COLORS[(c.period as usize) % CLASS_COLORS.len()];
        chord(&mut out, &c.root_pair.0, &c.root_pair.1, color, false);
        chords += 1;
    }
    out.push_str("</svg>\n");
    (out, chords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::portrait::realize_portrait;

    fn a(s: &str) -> Angle {
        s.parse().unwrap()
    }

    #[test]
    fn airplane_has_three_chords() {
        let p = realize_portrait(&a("3/7"), &a("4/7")).unwrap();
        let svg = render_portrait(&p);
        assert_eq!(svg.matches("<line").count(), 3);
        assert!(svg.contains("stroke-dasharray"));
    }

    #[test]
    fn basilica_single_chord() {
        let p = realize_portrait(&a("1/3"), &a("2/3")).unwrap();
        let svg = render_portrait(&p);
        assert_eq!(svg.matches("<line").count(), 1);
    }

    #[test]
    fn wake_chord_count() {
        let atlas = Atlas::build(4).unwrap();
        let (_, chords) = render_wakes(&atlas, 4);
        assert_eq!(chords, 10);
    }
}
