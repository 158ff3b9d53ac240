//! Median levels of the dual line arrangements of a cross-section, and the
//! ordered red/blue crossing sequence along the green median level.
//!
//! A primal point (u, z) dualizes to the line y = u x + z. For an odd class
//! the median level is the x-monotone polyline that keeps exactly
//! floor(m/2) lines strictly below it. A bisecting line of all three
//! classes corresponds to a common point of the three median levels, which
//! surfaces here as a red and a blue crossing coinciding on the green level.

use crate::error::{Error, Result};
use crate::exact::RationalFn;
use crate::geometry::{Color, LineId, SlopeParam};
use crate::signseq::{ColorRB, Sign, SignSeq, Symbol};

/// Dual line of a cross-section point: slope = u, intercept = z.
#[derive(Clone, Debug)]
pub struct DualLine {
    pub id: LineId,
    pub color: Color,
    pub slope: RationalFn,
    pub intercept: RationalFn,
}

impl DualLine {
    pub fn from_point(p: &crate::geometry::CrossPoint) -> Self {
        DualLine {
            id: p.id,
            color: p.color,
            slope: p.u.clone(),
            intercept: p.z.clone(),
        }
    }

    fn value_at(&self, x: &RationalFn) -> RationalFn {
        self.slope.mul(x).add(&self.intercept)
    }
}

/// An x-monotone piecewise-linear level: the line active at x = -infinity
/// plus the breakpoints (strictly increasing) where the active line changes.
#[derive(Clone, Debug)]
pub struct LevelPolyline {
    pub start: DualLine,
    pub breaks: Vec<(RationalFn, DualLine)>,
}

impl LevelPolyline {
    /// Active line on the piece containing x; on a breakpoint both
    /// neighbors agree in value and the later piece is returned.
    pub fn active_at(&self, x: &RationalFn, at: &SlopeParam) -> &DualLine {
        let mut cur = &self.start;
        for (bx, line) in &self.breaks {
            if bx.cmp_sign(x, at) <= 0 {
                cur = line;
            } else {
                break;
            }
        }
        cur
    }

    pub fn value_at(&self, x: &RationalFn, at: &SlopeParam) -> RationalFn {
        self.active_at(x, at).value_at(x)
    }

    /// The line active on the rightmost piece.
    pub fn end(&self) -> &DualLine {
        self.breaks.last().map_or(&self.start, |(_, l)| l)
    }
}

/// A crossing of the red or blue median level with the green one. Sign '+'
/// records an intersection from above (the other level is above the green
/// level before the crossing), '-' one from below.
#[derive(Clone, Debug)]
pub struct Crossing {
    pub x: RationalFn,
    pub color: ColorRB,
    pub sign: Sign,
    pub other_id: LineId,
    pub green_id: LineId,
}

/// A red and a blue crossing at one point of the green level: the dual of a
/// simultaneously bisecting line.
#[derive(Clone, Debug)]
pub struct Coincidence {
    pub x: RationalFn,
    pub y: RationalFn,
    pub green_id: LineId,
    pub red_id: LineId,
    pub blue_id: LineId,
}

#[derive(Clone, Debug)]
pub enum CrossingOutcome {
    Sequence(Vec<Crossing>),
    Coincidence(Coincidence),
}

pub fn sign_seq_of(crossings: &[Crossing]) -> SignSeq {
    SignSeq::from_symbols(
        crossings
            .iter()
            .map(|c| Symbol::new(c.color, c.sign))
            .collect(),
    )
}

fn cmp_fn(at: &SlopeParam) -> impl Fn(&RationalFn, &RationalFn) -> std::cmp::Ordering + '_ {
    |a, b| match a.cmp_sign(b, at) {
        s if s < 0 => std::cmp::Ordering::Less,
        s if s > 0 => std::cmp::Ordering::Greater,
        _ => std::cmp::Ordering::Equal,
    }
}

/// The floor(m/2)-level of an odd arrangement of dual lines, walked from
/// x = -infinity. Parallel dual lines are fine; coincident ones are a
/// degenerate arrangement.
pub fn median_level(duals: &[DualLine], at: &SlopeParam) -> Result<LevelPolyline> {
    let n = duals.len();
    if n == 0 || n.is_multiple_of(2) {
        return Err(Error::Usage(format!(
            "median level needs an odd number of lines, got {n}"
        )));
    }
    for (i, a) in duals.iter().enumerate() {
        for b in &duals[i + 1..] {
            if a.slope.cmp_sign(&b.slope, at) == 0 && a.intercept.cmp_sign(&b.intercept, at) == 0 {
                return Err(Error::DegenerateArrangement(format!(
                    "dual lines {} and {} coincide",
                    a.id, b.id
                )));
            }
        }
    }
    let k = n / 2;
    let cmp = cmp_fn(at);

    // Order at x -> -infinity: larger slope means lower value; intercepts
    // break ties among parallels.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        // Ascending by value at x -> -infinity: larger slope lies lower,
        // intercepts break ties among parallels.
        match duals[i].slope.cmp_sign(&duals[j].slope, at) {
            0 => cmp(&duals[i].intercept, &duals[j].intercept),
            s if s > 0 => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Greater,
        }
    });
    let start = duals[order[k]].clone();
    let mut cur = start.clone();
    let mut cur_x: Option<RationalFn> = None;
    let mut breaks: Vec<(RationalFn, DualLine)> = Vec::new();

    loop {
        // Nearest crossing of the current line strictly to the right.
        let mut next_x: Option<RationalFn> = None;
        for other in duals {
            if other.id == cur.id {
                continue;
            }
            if cur.slope.cmp_sign(&other.slope, at) == 0 {
                continue;
            }
            let x = other
                .intercept
                .sub(&cur.intercept)
                .div(&cur.slope.sub(&other.slope));
            if let Some(cx) = &cur_x {
                if cmp(&x, cx) != std::cmp::Ordering::Greater {
                    continue;
                }
            }
            match &next_x {
                Some(best) if cmp(&x, best) != std::cmp::Ordering::Less => {}
                _ => next_x = Some(x),
            }
        }
        let Some(x) = next_x else { break };
        let y0 = cur.value_at(&x);

        // Lines through the vertex, and the count strictly below it.
        let mut vertex: Vec<&DualLine> = Vec::new();
        let mut below = 0usize;
        for other in duals {
            match other.value_at(&x).cmp_sign(&y0, at) {
                0 => vertex.push(other),
                s if s < 0 => below += 1,
                _ => {}
            }
        }
        // Just after x the vertex lines stack lowest slope first; the level
        // continues on the one keeping exactly k lines strictly below.
        vertex.sort_by(|a, b| cmp(&a.slope, &b.slope));
        assert!(
            k >= below && k - below < vertex.len(),
            "median level lost continuity at a vertex"
        );
        let next = vertex[k - below].clone();
        if next.id != cur.id {
            breaks.push((x.clone(), next.clone()));
            cur = next;
        }
        cur_x = Some(x);
    }
    Ok(LevelPolyline { start, breaks })
}

/// Sign of (a - b) in the limit x -> -infinity.
fn sign_at_neg_inf(a: &DualLine, b: &DualLine, at: &SlopeParam) -> i8 {
    match a.slope.cmp_sign(&b.slope, at) {
        0 => a.intercept.cmp_sign(&b.intercept, at),
        s => -s,
    }
}

fn sign_at_pos_inf(a: &DualLine, b: &DualLine, at: &SlopeParam) -> i8 {
    match a.slope.cmp_sign(&b.slope, at) {
        0 => a.intercept.cmp_sign(&b.intercept, at),
        s => s,
    }
}

/// All sign changes of (other - green) from left to right: a simultaneous
/// merge of the two x-monotone polylines, linear in their total size.
fn crossings_with_green(
    other: &LevelPolyline,
    green: &LevelPolyline,
    color: ColorRB,
    at: &SlopeParam,
) -> Result<Vec<Crossing>> {
    let cmp = cmp_fn(at);
    // Candidates where (other - green) may change sign: every breakpoint of
    // either polyline plus each overlapping piece pair's intersection.
    let mut candidates: Vec<RationalFn> = Vec::new();
    let mut oi = 0usize;
    let mut gi = 0usize;
    let o_lines: Vec<&DualLine> = std::iter::once(&other.start)
        .chain(other.breaks.iter().map(|(_, l)| l))
        .collect();
    let g_lines: Vec<&DualLine> = std::iter::once(&green.start)
        .chain(green.breaks.iter().map(|(_, l)| l))
        .collect();
    loop {
        let o_hi: Option<&RationalFn> = other.breaks.get(oi).map(|(x, _)| x);
        let g_hi: Option<&RationalFn> = green.breaks.get(gi).map(|(x, _)| x);
        let ol = o_lines[oi];
        let gl = g_lines[gi];
        let slope_diff = ol.slope.cmp_sign(&gl.slope, at);
        if slope_diff == 0 {
            if ol.intercept.cmp_sign(&gl.intercept, at) == 0 {
                return Err(Error::DegenerateArrangement(format!(
                    "levels overlap on a segment (lines {} and {})",
                    ol.id, gl.id
                )));
            }
        } else {
            let x = gl
                .intercept
                .sub(&ol.intercept)
                .div(&ol.slope.sub(&gl.slope));
            let above_lo = candidates
                .last()
                .is_none_or(|last| cmp(&x, last) != std::cmp::Ordering::Less);
            let upper = match (o_hi, g_hi) {
                (Some(a), Some(b)) => Some(if cmp(a, b) == std::cmp::Ordering::Less {
                    a
                } else {
                    b
                }),
                (Some(a), None) => Some(a),
                (None, b) => b,
            };
            let below_hi = upper.is_none_or(|u| cmp(&x, u) != std::cmp::Ordering::Greater);
            // The piece pair covers the interval up to `upper`; roots left
            // of an already-recorded candidate belong to earlier pieces.
            if above_lo && below_hi {
                candidates.push(x);
            }
        }
        // Advance the polyline whose piece ends first.
        match (o_hi, g_hi) {
            (None, None) => break,
            (Some(a), Some(b)) => match cmp(a, b) {
                std::cmp::Ordering::Less => {
                    candidates.push(a.clone());
                    oi += 1;
                }
                std::cmp::Ordering::Greater => {
                    candidates.push(b.clone());
                    gi += 1;
                }
                std::cmp::Ordering::Equal => {
                    candidates.push(a.clone());
                    oi += 1;
                    gi += 1;
                }
            },
            (Some(a), None) => {
                candidates.push(a.clone());
                oi += 1;
            }
            (None, Some(b)) => {
                candidates.push(b.clone());
                gi += 1;
            }
        }
    }
    candidates.sort_by(&cmp);
    candidates.dedup_by(|a, b| cmp(a, b) == std::cmp::Ordering::Equal);

    // Signs of (other - green) on the gaps between candidates.
    let mut gap_signs: Vec<i8> = Vec::with_capacity(candidates.len() + 1);
    gap_signs.push(sign_at_neg_inf(&other.start, &green.start, at));
    for w in 0..candidates.len().saturating_sub(1) {
        let mid = candidates[w].midpoint(&candidates[w + 1]);
        let d = other.value_at(&mid, at).sub(&green.value_at(&mid, at));
        gap_signs.push(d.sign_at(at));
    }
    if !candidates.is_empty() {
        gap_signs.push(sign_at_pos_inf(other.end(), green.end(), at));
    }
    let mut crossings = Vec::new();
    for (t, x) in candidates.iter().enumerate() {
        let before = gap_signs[t];
        let after = gap_signs[t + 1];
        if before == 0 || after == 0 {
            return Err(Error::DegenerateArrangement(
                "levels overlap on a segment".into(),
            ));
        }
        if before != after {
            crossings.push(Crossing {
                x: x.clone(),
                color,
                sign: if before > 0 { Sign::Plus } else { Sign::Minus },
                other_id: other.active_at(x, at).id,
                green_id: green.active_at(x, at).id,
            });
        }
    }
    Ok(crossings)
}

/// Merge the red and blue crossings along the green level into one ordered
/// sequence, or detect a red/blue coincidence (a solution witness).
pub fn crossing_sequence(
    green: &LevelPolyline,
    red: &LevelPolyline,
    blue: &LevelPolyline,
    at: &SlopeParam,
) -> Result<CrossingOutcome> {
    let reds = crossings_with_green(red, green, ColorRB::Red, at)?;
    let blues = crossings_with_green(blue, green, ColorRB::Blue, at)?;
    let mut merged: Vec<Crossing> = Vec::with_capacity(reds.len() + blues.len());
    let (mut i, mut j) = (0, 0);
    while i < reds.len() && j < blues.len() {
        match reds[i].x.cmp_sign(&blues[j].x, at) {
            0 => {
                let x = reds[i].x.clone();
                let y = green.value_at(&x, at);
                return Ok(CrossingOutcome::Coincidence(Coincidence {
                    green_id: green.active_at(&x, at).id,
                    red_id: reds[i].other_id,
                    blue_id: blues[j].other_id,
                    x,
                    y,
                }));
            }
            s if s < 0 => {
                merged.push(reds[i].clone());
                i += 1;
            }
            _ => {
                merged.push(blues[j].clone());
                j += 1;
            }
        }
    }
    merged.extend_from_slice(&reds[i..]);
    merged.extend_from_slice(&blues[j..]);
    Ok(CrossingOutcome::Sequence(merged))
}
