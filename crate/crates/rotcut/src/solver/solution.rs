use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rat_from_str, rat_to_string, AlgebraicReal, ExactNum, ExtReal, Polynomial};
use crate::geometry::{orientation_in_section, Color, CrossSection, LineId, Rotation, SlopeParam};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolutionKind {
    CollinearTriple,
    ParallelDegenerate,
}

/// Per-color occupancy of the two open sides of the witness line: counts of
/// points on its positive orientation side, on the line, and on the
/// negative side, with the line directed from the lower witness id to the
/// higher.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideCount {
    pub above: usize,
    pub on: usize,
    pub below: usize,
}

/// A verified-bisector description: the slope of the cutting plane, the
/// witness ids, the point pair defining the bisecting line, and the exact
/// per-color side counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub slope: SlopeParam,
    pub kind: SolutionKind,
    /// Three ids: the collinear triple, or the two bisector points plus the
    /// line that is parallel to the plane.
    pub witness: [LineId; 3],
    pub bisector: (LineId, LineId),
    /// Counts for red, green, blue in this order.
    pub counts: [SideCount; 3],
    /// Rotation applied to the input scene before solving, when one was
    /// needed to move every line off the chart boundary.
    pub rotation: Option<Rotation>,
}

impl Solution {
    pub fn count_for(&self, color: Color) -> SideCount {
        match color {
            Color::Red => self.counts[0],
            Color::Green => self.counts[1],
            Color::Blue => self.counts[2],
        }
    }
}

/// Side counts of every cross-section point against the line through points
/// `a` and `b`, directed from the smaller id to the larger.
pub fn side_counts(cs: &CrossSection, a: LineId, b: LineId) -> [SideCount; 3] {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    let mut counts = [SideCount::default(); 3];
    for p in &cs.points {
        let idx = match p.color {
            Color::Red => 0,
            Color::Green => 1,
            Color::Blue => 2,
        };
        if p.id == a || p.id == b {
            counts[idx].on += 1;
            continue;
        }
        match orientation_in_section(cs, a, b, p.id) {
            1 => counts[idx].above += 1,
            -1 => counts[idx].below += 1,
            _ => counts[idx].on += 1,
        }
    }
    counts
}

/// The bisection contract: each open side holds at most floor(|C|/2) points
/// of every color class C present in the cross-section.
pub fn satisfies_bisection(counts: &[SideCount; 3]) -> bool {
    counts.iter().all(|c| {
        let size = c.above + c.on + c.below;
        c.above <= size / 2 && c.below <= size / 2
    })
}

/// First color violating the contract, with its counts, for error reports.
pub fn bisection_violation(counts: &[SideCount; 3]) -> Option<(Color, SideCount, usize)> {
    for (i, c) in counts.iter().enumerate() {
        let size = c.above + c.on + c.below;
        if c.above > size / 2 || c.below > size / 2 {
            let color = [Color::Red, Color::Green, Color::Blue][i];
            return Some((color, *c, size / 2));
        }
    }
    None
}

// Wire form of slopes and solutions.

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum SlopeJson {
    Rational {
        value: String,
    },
    Algebraic {
        poly: Vec<String>,
        lo: String,
        hi: String,
    },
    NegInfinity,
    PosInfinity,
}

impl SlopeJson {
    fn from_slope(slope: &SlopeParam) -> Result<Self> {
        Ok(match slope {
            ExtReal::NegInfinity => SlopeJson::NegInfinity,
            ExtReal::PosInfinity => SlopeJson::PosInfinity,
            ExtReal::Finite(ExactNum::Rational(r)) => SlopeJson::Rational {
                value: rat_to_string(r),
            },
            ExtReal::Finite(ExactNum::Algebraic(a)) => SlopeJson::Algebraic {
                poly: a.defining().coeffs().iter().map(rat_to_string).collect(),
                lo: rat_to_string(a.lo()),
                hi: rat_to_string(a.hi()),
            },
            ExtReal::Finite(ExactNum::Perturbed(_)) => {
                return Err(Error::Usage(
                    "perturbed slopes have no serialized form".into(),
                ))
            }
        })
    }

    fn to_slope(&self) -> Result<SlopeParam> {
        Ok(match self {
            SlopeJson::NegInfinity => ExtReal::NegInfinity,
            SlopeJson::PosInfinity => ExtReal::PosInfinity,
            SlopeJson::Rational { value } => ExtReal::rational(rat_from_str(value)?),
            SlopeJson::Algebraic { poly, lo, hi } => {
                let coeffs = poly
                    .iter()
                    .map(|s| rat_from_str(s))
                    .collect::<Result<Vec<_>>>()?;
                let lo = rat_from_str(lo)?;
                let hi = rat_from_str(hi)?;
                ExtReal::algebraic(AlgebraicReal::try_new(Polynomial::new(coeffs), lo, hi)?)
            }
        })
    }
}

#[derive(Serialize, Deserialize)]
struct CountsJson {
    #[serde(rename = "R")]
    r: [usize; 3],
    #[serde(rename = "G")]
    g: [usize; 3],
    #[serde(rename = "B")]
    b: [usize; 3],
}

#[derive(Serialize, Deserialize)]
struct SolutionJson {
    slope: SlopeJson,
    kind: SolutionKind,
    witness: [LineId; 3],
    bisector: (LineId, LineId),
    counts: CountsJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    rotation: Option<(String, String)>,
}

impl Solution {
    pub fn to_json(&self) -> Result<String> {
        let c = |s: &SideCount| [s.above, s.on, s.below];
        let dto = SolutionJson {
            slope: SlopeJson::from_slope(&self.slope)?,
            kind: self.kind,
            witness: self.witness,
            bisector: self.bisector,
            counts: CountsJson {
                r: c(&self.counts[0]),
                g: c(&self.counts[1]),
                b: c(&self.counts[2]),
            },
            rotation: self
                .rotation
                .as_ref()
                .map(|r| (rat_to_string(&r.cos), rat_to_string(&r.sin))),
        };
        let mut s = serde_json::to_string_pretty(&dto)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Solution> {
        let dto: SolutionJson = serde_json::from_str(text)?;
        let c = |v: [usize; 3]| SideCount {
            above: v[0],
            on: v[1],
            below: v[2],
        };
        let rotation = match dto.rotation {
            Some((cos, sin)) => Some(Rotation {
                cos: rat_from_str(&cos)?,
                sin: rat_from_str(&sin)?,
            }),
            None => None,
        };
        Ok(Solution {
            slope: dto.slope.to_slope()?,
            kind: dto.kind,
            witness: dto.witness,
            bisector: dto.bisector,
            counts: [c(dto.counts.r), c(dto.counts.g), c(dto.counts.b)],
            rotation,
        })
    }
}

/// Slope serialization shared with the brute-force event export.
pub fn slope_json(slope: &SlopeParam) -> Result<serde_json::Value> {
    Ok(serde_json::to_value(SlopeJson::from_slope(slope)?)?)
}
