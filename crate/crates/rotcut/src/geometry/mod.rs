//! 3D scene model: colored lines in space, the rotating-plane slope
//! parameter, cross-section extraction, the exact orientation predicate,
//! and collinearity-event generation.
//!
//! Planes through the z-axis are parametrized by their in-plane horizontal
//! direction (1, m, 0); sweeping m from -inf to +inf performs the half-turn.
//! Every cross-section coordinate is a degree-one-over-degree-one rational
//! function of m, so all predicates reduce to polynomial signs.

mod scene;
mod section;

pub use scene::{generate_scene, validate_and_normalize, Rotation};
pub use section::{
    collinearity_events, cross_section, orientation, orientation_in_section, orientation_poly,
};

use serde::{Deserialize, Serialize};

use crate::exact::{ExtReal, Rat, RationalFn};
use crate::signseq::ColorRB;

/// The slope m of the cutting plane {y = m x}, plus the two limit charts on
/// the plane x = 0.
pub type SlopeParam = ExtReal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Green,
    Blue,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Red, Color::Green, Color::Blue];

    pub fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Green => 'G',
            Color::Blue => 'B',
        }
    }

    pub fn from_letter(c: char) -> Option<Color> {
        match c {
            'R' | 'r' => Some(Color::Red),
            'G' | 'g' => Some(Color::Green),
            'B' | 'b' => Some(Color::Blue),
            _ => None,
        }
    }

    /// Red and blue map to the sign-sequence colors; green is the walked
    /// level and has no symbol.
    pub fn as_rb(self) -> Option<ColorRB> {
        match self {
            Color::Red => Some(ColorRB::Red),
            Color::Blue => Some(ColorRB::Blue),
            Color::Green => None,
        }
    }
}

impl std::fmt::Display for Color {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl Serialize for Color {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.letter().to_string())
    }
}

impl<'de> Deserialize<'de> for Color {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        let mut chars = text.chars();
        match (chars.next().and_then(Color::from_letter), chars.next()) {
            (Some(c), None) => Ok(c),
            _ => Err(serde::de::Error::custom(format!("invalid color {text:?}"))),
        }
    }
}

mod triple_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(t: &[Rat; 3], s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(3))?;
        for r in t {
            seq.serialize_element(&crate::exact::rat_to_string(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Rat; 3], D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        if v.len() != 3 {
            return Err(serde::de::Error::custom("expected 3 coordinates"));
        }
        let mut out = [Rat::default(), Rat::default(), Rat::default()];
        for (i, s) in v.iter().enumerate() {
            out[i] = crate::exact::rat_from_str(s).map_err(serde::de::Error::custom)?;
        }
        Ok(out)
    }
}

pub type LineId = u32;

/// A line in 3-space through `anchor` with direction `dir`, colored.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Line3 {
    pub id: LineId,
    #[serde(with = "triple_str")]
    pub anchor: [Rat; 3],
    #[serde(with = "triple_str")]
    pub dir: [Rat; 3],
    pub color: Color,
}

impl Line3 {
    /// Cross product of the xy-projections of anchor and direction; nonzero
    /// exactly when the line misses the z-axis (given it is not vertical).
    /// This is also the constant numerator of the cross-section u-coordinate.
    pub fn chart_numerator(&self) -> Rat {
        &self.anchor[0] * &self.dir[1] - &self.anchor[1] * &self.dir[0]
    }

    /// Coefficients of the z-coordinate numerator z_num(m) = B m + C.
    pub fn z_coeffs(&self) -> (Rat, Rat) {
        let b = &self.dir[2] * &self.anchor[0] - &self.anchor[2] * &self.dir[0];
        let c = &self.anchor[2] * &self.dir[1] - &self.dir[2] * &self.anchor[1];
        (b, c)
    }

    /// Denominator d(m) = vy - m vx shared by both coordinates.
    pub fn den_poly(&self) -> crate::exact::Polynomial {
        crate::exact::Polynomial::new(vec![self.dir[1].clone(), -self.dir[0].clone()])
    }

    /// The unique finite slope at which the plane direction (1, m, 0) is
    /// parallel to this line: m = vy / vx. Requires vx != 0.
    pub fn parallel_slope(&self) -> Rat {
        assert!(
            !num::Zero::is_zero(&self.dir[0]),
            "parallel_slope requires vx != 0 (normalize the scene first)"
        );
        &self.dir[1] / &self.dir[0]
    }
}

/// A validated 3-colored line arrangement.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Scene {
    pub lines: Vec<Line3>,
}

impl Scene {
    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn color_count(&self, color: Color) -> usize {
        self.lines.iter().filter(|l| l.color == color).count()
    }

    pub fn line(&self, id: LineId) -> &Line3 {
        self.lines
            .iter()
            .find(|l| l.id == id)
            .expect("unknown line id")
    }

    pub fn to_json(&self) -> crate::Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> crate::Result<Scene> {
        Ok(serde_json::from_str(text)?)
    }
}

/// One cross-section point: exact coordinates as rational functions of the
/// slope parameter.
#[derive(Clone, Debug)]
pub struct CrossPoint {
    pub id: LineId,
    pub color: Color,
    pub u: RationalFn,
    pub z: RationalFn,
}

/// The planar point set cut out of the scene at a slope, one point per
/// non-parallel line.
#[derive(Clone, Debug)]
pub struct CrossSection {
    pub points: Vec<CrossPoint>,
    pub slope: SlopeParam,
    /// The line parallel to the cutting plane, absent from `points`.
    pub omitted: Option<LineId>,
}

impl CrossSection {
    pub fn color_count(&self, color: Color) -> usize {
        self.points.iter().filter(|p| p.color == color).count()
    }

    pub fn point(&self, id: LineId) -> &CrossPoint {
        self.points
            .iter()
            .find(|p| p.id == id)
            .expect("unknown point id in cross-section")
    }
}
