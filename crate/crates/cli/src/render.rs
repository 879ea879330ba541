//! SVG and TikZ output for evaluated scenes.
//!
//! Base lines are solid and derived lines dashed; literal points are filled
//! and constructed points hollow. Lines are clipped to the viewport, and
//! points outside it are left out. Coordinates carry six decimals.

use std::fmt::Write as _;
use std::str::FromStr;

use harmonica_scene::Figure;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Viewport {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Viewport, String> {
        if !(x0 < x1 && y0 < y1) || [x0, y0, x1, y1].iter().any(|v| !v.is_finite()) {
            return Err(format!("empty viewport {x0},{y0},{x1},{y1}"));
        }
        Ok(Viewport { x0, y0, x1, y1 })
    }

    /// Bounding box of the finite points, padded by a tenth of its size.
    pub fn fit(figure: &Figure) -> Viewport {
        let pts: Vec<(f64, f64)> = figure
            .points
            .iter()
            .filter_map(|p| p.at)
            .chain(figure.gons.iter().flat_map(|g| g.vertices.iter().copied()))
            .collect();
        if pts.is_empty() {
            return Viewport { x0: -1.0, y0: -1.0, x1: 1.0, y1: 1.0 };
        }
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for (x, y) in pts {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
        let pad = 0.1 * (x1 - x0).max(y1 - y0).max(1.0);
        Viewport { x0: x0 - pad, y0: y0 - pad, x1: x1 + pad, y1: y1 + pad }
    }

    pub fn contains(&self, (x, y): (f64, f64)) -> bool {
        x >= self.x0 && x <= self.x1 && y >= self.y0 && y <= self.y1
    }

    /// Segment of `a x + b y + c = 0` inside the box.
    pub fn clip_line(&self, [a, b, c]: [f64; 3]) -> Option<((f64, f64), (f64, f64))> {
        let mut hits: Vec<(f64, f64)> = Vec::new();
        let eps = 1e-12 * (self.x1 - self.x0).max(self.y1 - self.y0);
        if b.abs() > 0.0 {
            for x in [self.x0, self.x1] {
                let y = -(a * x + c) / b;
                if y >= self.y0 - eps && y <= self.y1 + eps {
                    hits.push((x, y.clamp(self.y0, self.y1)));
                }
            }
        }
        if a.abs() > 0.0 {
            for y in [self.y0, self.y1] {
                let x = -(b * y + c) / a;
                if x >= self.x0 - eps && x <= self.x1 + eps {
                    hits.push((x.clamp(self.x0, self.x1), y));
                }
            }
        }
        let mut best: Option<((f64, f64), (f64, f64))> = None;
        let mut longest = 0.0;
        for i in 0..hits.len() {
            for j in i + 1..hits.len() {
                let d = (hits[i].0 - hits[j].0).hypot(hits[i].1 - hits[j].1);
                if d > longest {
                    longest = d;
                    best = Some((hits[i], hits[j]));
                }
            }
        }
        best
    }
}

impl FromStr for Viewport {
    type Err = String;
    fn from_str(s: &str) -> Result<Viewport, String> {
        let v: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| format!("bad viewport number `{t}`")))
            .collect::<Result<_, _>>()?;
        match v[..] {
            [x0, y0, x1, y1] => Viewport::new(x0, y0, x1, y1),
            _ => Err(format!("viewport needs x0,y0,x1,y1, got `{s}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Svg,
    Tikz,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Format, String> {
        match s {
            "svg" => Ok(Format::Svg),
            "tikz" => Ok(Format::Tikz),
            _ => Err(format!("unknown format `{s}` (expected svg or tikz)")),
        }
    }
}

fn f6(v: f64) -> String {
    // Avoid "-0.000000".
    let s = format!("{v:.6}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.000000".into()
    } else {
        s
    }
}

pub fn render(figure: &Figure, view: &Viewport, format: Format, width: f64) -> String {
    match format {
        Format::Svg => svg(figure, view, width),
        Format::Tikz => tikz(figure, view),
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn svg(figure: &Figure, view: &Viewport, width: f64) -> String {
    let scale = width / (view.x1 - view.x0);
    let height = (view.y1 - view.y0) * scale;
    let tx = |x: f64| f6((x - view.x0) * scale);
    let ty = |y: f64| f6((view.y1 - y) * scale);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        f6(width),
        f6(height),
        f6(width),
        f6(height)
    );
    for g in &figure.gons {
        let pts: Vec<String> = g.vertices.iter().map(|&(x, y)| format!("{},{}", tx(x), ty(y))).collect();
        let _ = writeln!(
            out,
            r##"  <polygon class="gon" id="gon-{}" points="{}" fill="none" stroke="#999999" stroke-width="0.5"/>"##,
            escape(&g.name),
            pts.join(" ")
        );
    }
    for l in &figure.lines {
        match view.clip_line(l.coords) {
            Some(((ax, ay), (bx, by))) => {
                let dash = if l.base { "" } else { r#" stroke-dasharray="4 3""# };
                let _ = writeln!(
                    out,
                    r#"  <line class="{}" id="line-{}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="1"{dash}/>"#,
                    if l.base { "base" } else { "derived" },
                    escape(&l.name),
                    tx(ax),
                    ty(ay),
                    tx(bx),
                    ty(by)
                );
            }
            None => {
                let _ = writeln!(out, "  <!-- line {} misses the viewport -->", escape(&l.name));
            }
        }
    }
    for p in &figure.points {
        match p.at.filter(|&q| view.contains(q)) {
            Some((x, y)) => {
                let fill = if p.literal { "black" } else { "white" };
                let _ = writeln!(
                    out,
                    r#"  <circle class="point" id="point-{}" cx="{}" cy="{}" r="3" fill="{fill}" stroke="black" stroke-width="1"/>"#,
                    escape(&p.name),
                    tx(x),
                    ty(y)
                );
                let _ = writeln!(
                    out,
                    r#"  <text x="{}" y="{}" font-size="10">{}</text>"#,
                    f6((x - view.x0) * scale + 4.0),
                    f6((view.y1 - y) * scale - 4.0),
                    escape(&p.name)
                );
            }
            None => {
                let _ = writeln!(out, "  <!-- point {} outside the viewport -->", escape(&p.name));
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

fn tex_name(s: &str) -> String {
    s.replace('_', r"\_")
}

pub fn tikz(figure: &Figure, view: &Viewport) -> String {
    let pt = |(x, y): (f64, f64)| format!("({}, {})", f6(x), f6(y));
    let mut out = String::new();
    out.push_str("\\begin{tikzpicture}\n");
    let _ = writeln!(out, "  \\clip {} rectangle {};", pt((view.x0, view.y0)), pt((view.x1, view.y1)));
    for g in &figure.gons {
        let pts: Vec<String> = g.vertices.iter().map(|&p| pt(p)).collect();
        let _ = writeln!(out, "  % gon {}", g.name);
        let _ = writeln!(out, "  \\path[draw=gray, very thin] {} -- cycle;", pts.join(" -- "));
    }
    for l in &figure.lines {
        match view.clip_line(l.coords) {
            Some((a, b)) => {
                let style = if l.base { "thin" } else { "thin, dashed" };
                let _ = writeln!(out, "  \\draw[{style}] {} -- {}; % {}", pt(a), pt(b), l.name);
            }
            None => {
                let _ = writeln!(out, "  % line {} misses the viewport", l.name);
            }
        }
    }
    for p in &figure.points {
        match p.at.filter(|&q| view.contains(q)) {
            Some(q) => {
                if p.literal {
                    let _ = writeln!(out, "  \\fill {} circle (1.5pt);", pt(q));
                } else {
                    let _ = writeln!(out, "  \\filldraw[fill=white] {} circle (1.5pt);", pt(q));
                }
                let _ = writeln!(out, "  \\node[above right] at {} {{${}$}};", pt(q), tex_name(&p.name));
            }
            None => {
                let _ = writeln!(out, "  % point {} outside the viewport", p.name);
            }
        }
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clip_diagonal() {
        let v = Viewport::new(0.0, 0.0, 2.0, 2.0).unwrap();
        let (a, b) = v.clip_line([1.0, -1.0, 0.0]).unwrap();
        let mut e = [a, b];
        e.sort_by(|p, q| p.0.total_cmp(&q.0));
        assert_eq!(e, [(0.0, 0.0), (2.0, 2.0)]);
        assert!(v.clip_line([1.0, 0.0, -5.0]).is_none());
        assert!(v.clip_line([0.0, 0.0, 1.0]).is_none());
    }

    #[test]
    fn viewport_parse() {
        assert!("0,0,1,1".parse::<Viewport>().is_ok());
        assert!("0,0,0,1".parse::<Viewport>().is_err());
        assert!("0,0,1".parse::<Viewport>().is_err());
    }

    #[test]
    fn no_negative_zero() {
        assert_eq!(f6(-0.0000001), "0.000000");
        assert_eq!(f6(-1.5), "-1.500000");
    }
}
