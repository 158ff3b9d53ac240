//! The sidedness oracle: at any slope, extract the bi-chromatic sign
//! sequence of the cross-section's dual median levels and report its trace,
//! or detect a red/blue coincidence on the green level, which is a solution
//! witness. Endpoint traces at the two charts of the plane x = 0 differ by
//! construction, which seeds every search with a guaranteed flip.

use crate::error::{Error, Result};
use crate::exact::RationalFn;
use crate::geometry::{cross_section, Color, CrossSection, LineId, Scene, SlopeParam};
pub use crate::levels::CrossingOutcome;

use crate::levels::{
    crossing_sequence, median_level, sign_seq_of, Crossing, DualLine, LevelPolyline,
};
use crate::signseq::{SignSeq, Trace};

/// A coincidence of the three median levels, i.e. the dual of a line that
/// simultaneously bisects all three classes of the cross-section.
#[derive(Clone, Debug)]
pub struct CoincidenceWitness {
    pub slope: SlopeParam,
    /// Dual point of the bisector; the primal line is z = -dual_x * u + dual_y.
    pub dual_x: RationalFn,
    pub dual_y: RationalFn,
    pub green_id: LineId,
    pub red_id: LineId,
    pub blue_id: LineId,
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum OracleResult {
    Trace(Trace),
    Solution(CoincidenceWitness),
}

/// The three median levels of a cross-section's dual arrangement.
pub fn median_levels(cs: &CrossSection) -> Result<(LevelPolyline, LevelPolyline, LevelPolyline)> {
    let class = |color: Color| -> Vec<DualLine> {
        cs.points
            .iter()
            .filter(|p| p.color == color)
            .map(DualLine::from_point)
            .collect()
    };
    let green = median_level(&class(Color::Green), &cs.slope)?;
    let red = median_level(&class(Color::Red), &cs.slope)?;
    let blue = median_level(&class(Color::Blue), &cs.slope)?;
    Ok((green, red, blue))
}

fn parallel_line_at(scene: &Scene, slope: &SlopeParam) -> Option<LineId> {
    if !slope.is_finite() {
        return None;
    }
    scene
        .lines
        .iter()
        .find(|l| slope.sign_of(&l.den_poly()) == 0)
        .map(|l| l.id)
}

/// Crossing extraction at a slope. The slope must not be a parallel slope
/// of any line (those cross-sections have an even class; query just before
/// or after instead).
pub fn extract_crossings(scene: &Scene, slope: &SlopeParam) -> Result<CrossingOutcome> {
    if let Some(id) = parallel_line_at(scene, slope) {
        return Err(Error::Usage(format!(
            "slope is the parallel slope of line {id}; query a perturbed slope instead"
        )));
    }
    let cs = cross_section(scene, slope);
    let (green, red, blue) = median_levels(&cs)?;
    crossing_sequence(&green, &red, &blue, slope)
}

fn validated_seq(crossings: &[Crossing]) -> Result<SignSeq> {
    let seq = sign_seq_of(crossings);
    seq.validate().map_err(|e| {
        Error::InternalInconsistency(format!(
            "crossing sequence violates sign-sequence invariants: {e}"
        ))
    })?;
    Ok(seq)
}

/// The sidedness oracle: the cross-section's trace, or a solution witness
/// when a red and a blue crossing coincide on the green median level.
pub fn sidedness(scene: &Scene, slope: &SlopeParam) -> Result<OracleResult> {
    match extract_crossings(scene, slope)? {
        CrossingOutcome::Coincidence(c) => Ok(OracleResult::Solution(CoincidenceWitness {
            slope: slope.clone(),
            dual_x: c.x,
            dual_y: c.y,
            green_id: c.green_id,
            red_id: c.red_id,
            blue_id: c.blue_id,
        })),
        CrossingOutcome::Sequence(crossings) => {
            Ok(OracleResult::Trace(validated_seq(&crossings)?.trace()))
        }
    }
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum EndpointOutcome {
    Traces {
        neg: Trace,
        pos: Trace,
        neg_seq: SignSeq,
        pos_seq: SignSeq,
    },
    /// The chart plane x = 0 itself carries a bisector.
    Solution(CoincidenceWitness),
}

/// Traces of the two endpoint charts on the plane x = 0. The two sign
/// sequences are exact reverses of each other, hence the traces differ; a
/// violation indicates a predicate bug and is reported as an internal
/// inconsistency.
pub fn endpoint_traces(scene: &Scene) -> Result<EndpointOutcome> {
    let neg = match extract_crossings(scene, &SlopeParam::NegInfinity)? {
        CrossingOutcome::Coincidence(c) => {
            return Ok(EndpointOutcome::Solution(CoincidenceWitness {
                slope: SlopeParam::NegInfinity,
                dual_x: c.x,
                dual_y: c.y,
                green_id: c.green_id,
                red_id: c.red_id,
                blue_id: c.blue_id,
            }))
        }
        CrossingOutcome::Sequence(cs) => validated_seq(&cs)?,
    };
    let pos = match extract_crossings(scene, &SlopeParam::PosInfinity)? {
        CrossingOutcome::Coincidence(c) => {
            return Ok(EndpointOutcome::Solution(CoincidenceWitness {
                slope: SlopeParam::PosInfinity,
                dual_x: c.x,
                dual_y: c.y,
                green_id: c.green_id,
                red_id: c.red_id,
                blue_id: c.blue_id,
            }))
        }
        CrossingOutcome::Sequence(cs) => validated_seq(&cs)?,
    };
    if pos != neg.reverse() {
        return Err(Error::InternalInconsistency(
            "endpoint sign sequences are not exact reverses of each other".into(),
        ));
    }
    let (tn, tp) = (neg.trace(), pos.trace());
    if tn == tp {
        return Err(Error::InternalInconsistency(
            "endpoint traces agree; reversed sequences must have different traces".into(),
        ));
    }
    Ok(EndpointOutcome::Traces {
        neg: tn,
        pos: tp,
        neg_seq: neg,
        pos_seq: pos,
    })
}
