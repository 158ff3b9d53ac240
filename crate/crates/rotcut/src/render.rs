//! SVG rendering of cross-sections and their dual median levels. All
//! drawing coordinates are decimal approximations of the exact values at a
//! requested precision; nothing here feeds back into exact computation.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exact::{rat, rat_to_decimal, rat_to_f64, ExactNum, ExtReal, Rat, RationalFn};
use crate::geometry::{cross_section, Color, CrossSection, Scene, SlopeParam};
use crate::levels::{CrossingOutcome, LevelPolyline};
use crate::signseq::Sign;
use crate::solver::Solution;

#[derive(Clone, Debug)]
pub struct RenderSpec {
    pub width: u32,
    pub height: u32,
    /// Decimal digits used for emitted coordinates; at least 6.
    pub precision: usize,
    /// Draw the dual arrangement with the three median levels instead of
    /// the primal point set.
    pub dual: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            width: 800,
            height: 600,
            precision: 9,
            dual: false,
        }
    }
}

fn color_css(c: Color) -> &'static str {
    match c {
        Color::Red => "#d62728",
        Color::Green => "#2ca02c",
        Color::Blue => "#1f77b4",
    }
}

/// Rational approximation of an exact coordinate at the render slope.
fn approx_value(v: &RationalFn, at: &SlopeParam, digits: usize) -> Result<Rat> {
    match at {
        ExtReal::Finite(ExactNum::Rational(m)) => Ok(v.eval_rat(m)),
        ExtReal::Finite(ExactNum::Algebraic(a)) => {
            let width = rat(1, 10).pow(digits as i32 + 6);
            let refined = a.refined_below_width(&width);
            let mid = (refined.lo() + refined.hi()) / Rat::from_integer(2.into());
            Ok(v.eval_rat(&mid))
        }
        ExtReal::Finite(ExactNum::Perturbed(p)) => Ok(v.eval_rat(p.base())),
        _ => {
            // Endpoint charts carry constant coordinates.
            v.as_constant().ok_or_else(|| {
                Error::Usage("cannot render non-constant values at infinite slope".into())
            })
        }
    }
}

struct Frame {
    min_x: f64,
    max_x: f64,
    min_y: f64,
    max_y: f64,
}

impl Frame {
    fn from_points(points: &[(Rat, Rat)]) -> Frame {
        let mut f = Frame {
            min_x: f64::INFINITY,
            max_x: f64::NEG_INFINITY,
            min_y: f64::INFINITY,
            max_y: f64::NEG_INFINITY,
        };
        for (x, y) in points {
            let (x, y) = (rat_to_f64(x), rat_to_f64(y));
            f.min_x = f.min_x.min(x);
            f.max_x = f.max_x.max(x);
            f.min_y = f.min_y.min(y);
            f.max_y = f.max_y.max(y);
        }
        if !f.min_x.is_finite() {
            f = Frame {
                min_x: -1.0,
                max_x: 1.0,
                min_y: -1.0,
                max_y: 1.0,
            };
        }
        let pad_x = ((f.max_x - f.min_x) * 0.15).max(1.0);
        let pad_y = ((f.max_y - f.min_y) * 0.15).max(1.0);
        f.min_x -= pad_x;
        f.max_x += pad_x;
        f.min_y -= pad_y;
        f.max_y += pad_y;
        f
    }

    fn marker_radius(&self) -> f64 {
        ((self.max_x - self.min_x) + (self.max_y - self.min_y)) / 150.0
    }
}

fn svg_header(out: &mut String, spec: &RenderSpec, frame: &Frame) {
    let w = frame.max_x - frame.min_x;
    let h = frame.max_y - frame.min_y;
    // Flip the y-axis so larger z is drawn upward.
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"{:.6} {:.6} {:.6} {:.6}\">",
        spec.width, spec.height, frame.min_x, -frame.max_y, w, h
    );
    let _ = writeln!(out, "<g transform=\"scale(1,-1)\">");
}

fn svg_footer(out: &mut String) {
    out.push_str("</g>\n</svg>\n");
}

/// Render the cross-section at a slope: colored points, the witness
/// bisector when a solution is supplied, or the dual arrangement with the
/// three median levels and crossing signs when `spec.dual` is set.
pub fn render_svg(
    scene: &Scene,
    slope: &SlopeParam,
    spec: &RenderSpec,
    solution: Option<&Solution>,
) -> Result<String> {
    if spec.precision < 6 {
        return Err(Error::Usage(format!(
            "render precision must be at least 6 digits, got {}",
            spec.precision
        )));
    }
    if spec.width == 0 || spec.height == 0 {
        return Err(Error::Usage("render dimensions must be positive".into()));
    }
    let cs = cross_section(scene, slope);
    if spec.dual {
        render_dual(&cs, spec)
    } else {
        render_primal(&cs, spec, solution)
    }
}

fn render_primal(
    cs: &CrossSection,
    spec: &RenderSpec,
    solution: Option<&Solution>,
) -> Result<String> {
    let digits = spec.precision;
    let mut coords: Vec<(Rat, Rat, Color, u32)> = Vec::new();
    for p in &cs.points {
        let u = approx_value(&p.u, &cs.slope, digits)?;
        let z = approx_value(&p.z, &cs.slope, digits)?;
        coords.push((u, z, p.color, p.id));
    }
    let frame = Frame::from_points(
        &coords
            .iter()
            .map(|(u, z, _, _)| (u.clone(), z.clone()))
            .collect::<Vec<_>>(),
    );
    let mut out = String::new();
    svg_header(&mut out, spec, &frame);
    if let Some(sol) = solution {
        // Infinite line through the two witness points, clipped to the frame.
        let find = |id| coords.iter().find(|(_, _, _, pid)| *pid == id);
        if let (Some((x1, y1, _, _)), Some((x2, y2, _, _))) =
            (find(sol.bisector.0), find(sol.bisector.1))
        {
            let (fx1, fy1) = (rat_to_f64(x1), rat_to_f64(y1));
            let (fx2, fy2) = (rat_to_f64(x2), rat_to_f64(y2));
            let (dx, dy) = (fx2 - fx1, fy2 - fy1);
            let span = (frame.max_x - frame.min_x) + (frame.max_y - frame.min_y);
            let norm = (dx * dx + dy * dy).sqrt().max(1e-12);
            let (ex1, ey1) = (fx1 - dx / norm * span, fy1 - dy / norm * span);
            let (ex2, ey2) = (fx1 + dx / norm * span, fy1 + dy / norm * span);
            let _ = writeln!(
                out,
                "<line x1=\"{ex1:.6}\" y1=\"{ey1:.6}\" x2=\"{ex2:.6}\" y2=\"{ey2:.6}\" \
                 stroke=\"#555555\" stroke-width=\"{:.6}\"/>",
                frame.marker_radius() / 3.0
            );
        }
    }
    for (u, z, color, id) in &coords {
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{:.6}\" fill=\"{}\"><title>line {} ({})</title></circle>",
            rat_to_decimal(u, digits),
            rat_to_decimal(z, digits),
            frame.marker_radius(),
            color_css(*color),
            id,
            color
        );
    }
    svg_footer(&mut out);
    Ok(out)
}

fn render_dual(cs: &CrossSection, spec: &RenderSpec) -> Result<String> {
    let digits = spec.precision;
    let at = &cs.slope;
    let (green, red, blue) = crate::oracle::median_levels(cs)?;
    // Frame from all level breakpoints plus dual-line intercepts.
    let mut pts: Vec<(Rat, Rat)> = Vec::new();
    for level in [&green, &red, &blue] {
        for (x, _) in &level.breaks {
            let bx = approx_value(x, at, digits)?;
            let by = approx_value(&level.value_at(x, at), at, digits)?;
            pts.push((bx, by));
        }
    }
    for p in &cs.points {
        pts.push((Rat::from_integer(0.into()), approx_value(&p.z, at, digits)?));
    }
    let frame = Frame::from_points(&pts);
    let mut out = String::new();
    svg_header(&mut out, spec, &frame);

    // Thin dual lines.
    for p in &cs.points {
        let slope = approx_value(&p.u, at, digits)?;
        let icept = approx_value(&p.z, at, digits)?;
        let (s, c) = (rat_to_f64(&slope), rat_to_f64(&icept));
        let y_at = |x: f64| s * x + c;
        let _ = writeln!(
            out,
            "<line x1=\"{:.6}\" y1=\"{:.6}\" x2=\"{:.6}\" y2=\"{:.6}\" stroke=\"{}\" \
             stroke-width=\"{:.6}\" opacity=\"0.35\"/>",
            frame.min_x,
            y_at(frame.min_x),
            frame.max_x,
            y_at(frame.max_x),
            color_css(p.color),
            frame.marker_radius() / 4.0
        );
    }
    // Median levels as thick polylines.
    for (level, color) in [
        (&green, Color::Green),
        (&red, Color::Red),
        (&blue, Color::Blue),
    ] {
        let path = level_points(level, at, &frame, digits)?;
        let _ = writeln!(
            out,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{:.6}\"/>",
            path,
            color_css(color),
            frame.marker_radius() / 1.5
        );
    }
    // Crossing markers with their signs along the green level.
    if let CrossingOutcome::Sequence(crossings) =
        crate::levels::crossing_sequence(&green, &red, &blue, at)?
    {
        for c in &crossings {
            let x = approx_value(&c.x, at, digits)?;
            let y = approx_value(&green.value_at(&c.x, at), at, digits)?;
            let css = match c.color {
                crate::signseq::ColorRB::Red => color_css(Color::Red),
                crate::signseq::ColorRB::Blue => color_css(Color::Blue),
            };
            let _ = writeln!(
                out,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{:.6}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{:.6}\"/>",
                rat_to_decimal(&x, digits),
                rat_to_decimal(&y, digits),
                frame.marker_radius() * 1.2,
                css,
                frame.marker_radius() / 4.0
            );
            let glyph = match c.sign {
                Sign::Plus => "+",
                Sign::Minus => "-",
            };
            let _ = writeln!(
                out,
                "<text x=\"{:.6}\" y=\"{:.6}\" font-size=\"{:.6}\" fill=\"{}\" transform=\"scale(1,-1)\">{}</text>",
                rat_to_f64(&x) + 1.5 * frame.marker_radius(),
                -(rat_to_f64(&y) + 1.5 * frame.marker_radius()),
                3.0 * frame.marker_radius(),
                css,
                glyph
            );
        }
    }
    svg_footer(&mut out);
    Ok(out)
}

/// Level sample points "x,y x,y ..." at frame edges and breakpoints.
fn level_points(
    level: &LevelPolyline,
    at: &SlopeParam,
    frame: &Frame,
    digits: usize,
) -> Result<String> {
    let mut coords: Vec<(Rat, Rat)> = Vec::new();
    let left = RationalFn::constant(f64_to_rat(frame.min_x));
    let right = RationalFn::constant(f64_to_rat(frame.max_x));
    let mut xs: Vec<RationalFn> = vec![left.clone()];
    for (x, _) in &level.breaks {
        xs.push(x.clone());
    }
    xs.push(right.clone());
    for x in &xs {
        let y = level.value_at(x, at);
        coords.push((approx_value(x, at, digits)?, approx_value(&y, at, digits)?));
    }
    let mut s = String::new();
    for (x, y) in coords {
        let _ = write!(
            s,
            "{},{} ",
            rat_to_decimal(&x, digits),
            rat_to_decimal(&y, digits)
        );
    }
    Ok(s.trim_end().to_string())
}

fn f64_to_rat(v: f64) -> Rat {
    let scaled = (v * 1024.0).round() as i64;
    rat(scaled, 1024)
}
