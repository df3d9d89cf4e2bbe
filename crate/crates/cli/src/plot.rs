//! SVG pictures of central arrangements restricted to a plane.

use std::cmp::Ordering;
use std::fmt::Write;

use gitfan::exactgeom::num::{dot, primitive, sign_of};
use gitfan::exactgeom::Int;
use num_traits::{ToPrimitive, Zero};

use crate::error::CliError;

const SIZE: f64 = 480.0;
const RADIUS: f64 = 200.0;
const PALETTE: [&str; 12] = [
    "#cfe3f7", "#f9d8c4", "#d3efd0", "#efd5ef", "#fbefc0", "#cdeeee", "#e6dccd", "#dcdcf5", "#f5cdd6", "#e3f2c4",
    "#d9e7e2", "#f2e2f8",
];

pub struct Line {
    pub normal: Vec<Int>,
    pub label: String,
    pub emphasized: bool,
}

type Locate<'a> = Box<dyn Fn(&[Int]) -> Option<(usize, String)> + 'a>;

/// An arrangement in fan coordinates together with a way to name the cone through a
/// point: `Some((colour index, label))` for a chamber, `None` outside every chamber.
pub struct Scene<'a> {
    pub title: String,
    pub dim: usize,
    pub lines: Vec<Line>,
    pub locate: Locate<'a>,
}

fn half(p: &[Int; 2]) -> u8 {
    u8::from(p[1] < Int::zero() || (p[1].is_zero() && p[0] < Int::zero()))
}

fn cross(a: &[Int; 2], b: &[Int; 2]) -> Int {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn by_angle(a: &[Int; 2], b: &[Int; 2]) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| sign_of(&cross(b, a)).cmp(&0))
}

fn to_f(x: &Int) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

fn screen(p: &[Int; 2]) -> (f64, f64) {
    let (x, y) = (to_f(&p[0]), to_f(&p[1]));
    let len = x.hypot(y);
    (x / len, y / len)
}

fn at(dir: (f64, f64), r: f64) -> (f64, f64) {
    (SIZE / 2.0 + r * dir.0, SIZE / 2.0 - r * dir.1)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Restricts the arrangement to the plane spanned by `u` and `v` and draws one sector
/// per cell, coloured by the chamber it lies in. A line is drawn as the plane with
/// `v = 0`.
pub fn render(scene: &Scene, slice: Option<(Vec<Int>, Vec<Int>)>) -> Result<String, CliError> {
    let (u, v) = match slice {
        Some((u, v)) => {
            if u.len() != scene.dim || v.len() != scene.dim {
                return Err(CliError::Malformed(format!("slice vectors must have {} entries", scene.dim)));
            }
            (u, v)
        }
        None if scene.dim == 1 => (vec![Int::from(1)], vec![Int::zero()]),
        None if scene.dim == 2 => (vec![Int::from(1), Int::zero()], vec![Int::zero(), Int::from(1)]),
        None => {
            return Err(CliError::Malformed(format!(
                "the fan lives in dimension {}; plotting needs dimension at most 2 or a slice",
                scene.dim
            )))
        }
    };
    let lift = |p: &[Int; 2]| -> Vec<Int> { u.iter().zip(&v).map(|(a, b)| &p[0] * a + &p[1] * b).collect() };
    let restricted: Vec<Option<[Int; 2]>> = scene
        .lines
        .iter()
        .map(|l| {
            let r = primitive(&[dot(&l.normal, &u), dot(&l.normal, &v)]);
            (!r.iter().all(Zero::is_zero)).then(|| [r[0].clone(), r[1].clone()])
        })
        .collect();
    let mut dirs: Vec<[Int; 2]> = Vec::new();
    for r in restricted.iter().flatten() {
        let d = [-r[1].clone(), r[0].clone()];
        let e = [r[1].clone(), -r[0].clone()];
        for x in [d, e] {
            if !dirs.contains(&x) {
                dirs.push(x);
            }
        }
    }
    dirs.sort_by(by_angle);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(svg, "<title>{}</title>", escape(&scene.title));
    let _ = writeln!(svg, r##"<rect width="{SIZE}" height="{SIZE}" fill="#ffffff"/>"##);
    let fill = |cell: &Option<(usize, String)>| match cell {
        Some((i, _)) => PALETTE[i % PALETTE.len()],
        None => "#ffffff",
    };
    let mut labels = Vec::new();
    if dirs.is_empty() {
        let cell = (scene.locate)(&lift(&[Int::from(1), Int::zero()]));
        let c = SIZE / 2.0;
        let _ = writeln!(svg, r##"<circle cx="{c:.2}" cy="{c:.2}" r="{RADIUS:.2}" fill="{}" stroke="#888888"/>"##, fill(&cell));
        labels.push(((0.0, 0.0), cell));
    } else {
        for (i, d1) in dirs.iter().enumerate() {
            let d2 = &dirs[(i + 1) % dirs.len()];
            let inner = if sign_of(&cross(d1, d2)) > 0 {
                primitive(&[&d1[0] + &d2[0], &d1[1] + &d2[1]])
            } else {
                vec![-d1[1].clone(), d1[0].clone()]
            };
            let inner = [inner[0].clone(), inner[1].clone()];
            let cell = (scene.locate)(&lift(&inner));
            let (a, b) = (at(screen(d1), RADIUS), at(screen(d2), RADIUS));
            let c = SIZE / 2.0;
            let _ = writeln!(
                svg,
                r#"<path d="M {c:.2} {c:.2} L {:.2} {:.2} A {RADIUS:.2} {RADIUS:.2} 0 0 0 {:.2} {:.2} Z" fill="{}" stroke="none"/>"#,
                a.0,
                a.1,
                b.0,
                b.1,
                fill(&cell)
            );
            labels.push((screen(&inner), cell));
        }
    }
    for (line, r) in scene.lines.iter().zip(&restricted) {
        let Some(r) = r else { continue };
        let d = screen(&[-r[1].clone(), r[0].clone()]);
        let (a, b) = (at(d, RADIUS), at((-d.0, -d.1), RADIUS));
        let (width, colour) = if line.emphasized { (3.0, "#202020") } else { (1.2, "#606060") };
        let dash = if line.emphasized { "" } else { r#" stroke-dasharray="6 4""# };
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{colour}" stroke-width="{width}"{dash}/>"#,
            a.0, a.1, b.0, b.1
        );
        let t = at(d, RADIUS + 14.0);
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="11" text-anchor="middle">{}</text>"#,
            t.0,
            t.1,
            escape(&line.label)
        );
    }
    for (dir, cell) in labels {
        let p = at(dir, RADIUS * 0.62);
        let text = cell.map_or_else(|| "unstable".to_string(), |(_, s)| s);
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="13" text-anchor="middle">{}</text>"#,
            p.0,
            p.1,
            escape(&text)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
