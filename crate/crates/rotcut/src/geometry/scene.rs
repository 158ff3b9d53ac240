use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Color, Line3, LineId, Scene};
use crate::error::{Error, Result};
use crate::exact::{rat_int, Rat};

/// Rational rotation about the z-axis, (cos, sin) on the unit circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rotation {
    pub cos: Rat,
    pub sin: Rat,
}

impl Rotation {
    pub fn identity() -> Self {
        Rotation {
            cos: Rat::one(),
            sin: Rat::zero(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.cos.is_one() && self.sin.is_zero()
    }

    /// Pythagorean-triple point ((a^2-b^2)/(a^2+b^2), 2ab/(a^2+b^2)).
    pub fn from_pair(a: i64, b: i64) -> Self {
        let (a, b) = (rat_int(a), rat_int(b));
        let den = &a * &a + &b * &b;
        Rotation {
            cos: (&a * &a - &b * &b) / &den,
            sin: rat_int(2) * a * b / den,
        }
    }

    fn apply_xy(&self, x: &Rat, y: &Rat) -> (Rat, Rat) {
        (&self.cos * x - &self.sin * y, &self.sin * x + &self.cos * y)
    }

    pub fn apply_line(&self, line: &Line3) -> Line3 {
        let (ax, ay) = self.apply_xy(&line.anchor[0], &line.anchor[1]);
        let (vx, vy) = self.apply_xy(&line.dir[0], &line.dir[1]);
        Line3 {
            id: line.id,
            anchor: [ax, ay, line.anchor[2].clone()],
            dir: [vx, vy, line.dir[2].clone()],
            color: line.color,
        }
    }

    pub fn apply_scene(&self, scene: &Scene) -> Scene {
        Scene {
            lines: scene.lines.iter().map(|l| self.apply_line(l)).collect(),
        }
    }
}

fn check_line_basic(line: &Line3) -> Result<()> {
    if line.dir.iter().all(Zero::is_zero) {
        return Err(Error::DegenerateInput(format!(
            "line {} has zero direction",
            line.id
        )));
    }
    if line.dir[0].is_zero() && line.dir[1].is_zero() {
        return Err(Error::DegenerateInput(format!(
            "line {} is vertical",
            line.id
        )));
    }
    if line.chart_numerator().is_zero() {
        return Err(Error::DegenerateInput(format!(
            "line {} intersects the z-axis",
            line.id
        )));
    }
    Ok(())
}

fn check_pair(a: &Line3, b: &Line3) -> Result<()> {
    // Projected directions must not be parallel: this keeps all parallel
    // slopes pairwise distinct and, a fortiori, the lines non-parallel in
    // space. Rotations about the z-axis cannot repair a violation.
    let proj_cross = &a.dir[0] * &b.dir[1] - &a.dir[1] * &b.dir[0];
    if proj_cross.is_zero() {
        return Err(Error::DegenerateInput(format!(
            "lines {} and {} have parallel xy-projections (equal parallel slopes)",
            a.id, b.id
        )));
    }
    // Skewness: det[b.anchor - a.anchor, a.dir, b.dir] != 0 rules out both
    // intersecting and parallel pairs.
    let d = [
        &b.anchor[0] - &a.anchor[0],
        &b.anchor[1] - &a.anchor[1],
        &b.anchor[2] - &a.anchor[2],
    ];
    let det = &d[0] * (&a.dir[1] * &b.dir[2] - &a.dir[2] * &b.dir[1])
        - &d[1] * (&a.dir[0] * &b.dir[2] - &a.dir[2] * &b.dir[0])
        + &d[2] * (&a.dir[0] * &b.dir[1] - &a.dir[1] * &b.dir[0]);
    if det.is_zero() {
        return Err(Error::DegenerateInput(format!(
            "lines {} and {} are coplanar (parallel or intersecting)",
            a.id, b.id
        )));
    }
    Ok(())
}

fn check_scene_core(scene: &Scene) -> Result<()> {
    if scene.lines.is_empty() {
        return Err(Error::DegenerateInput("scene has no lines".into()));
    }
    let mut ids = std::collections::HashSet::new();
    for line in &scene.lines {
        if !ids.insert(line.id) {
            return Err(Error::DegenerateInput(format!(
                "duplicate line id {}",
                line.id
            )));
        }
        check_line_basic(line)?;
    }
    for color in Color::ALL {
        let count = scene.color_count(color);
        if count == 0 || count.is_multiple_of(2) {
            return Err(Error::DegenerateInput(format!(
                "color {} has {} lines; each class must be odd and nonempty",
                color, count
            )));
        }
    }
    for (i, a) in scene.lines.iter().enumerate() {
        for b in &scene.lines[i + 1..] {
            check_pair(a, b)?;
        }
    }
    Ok(())
}

/// The chart needs every line transversal to the plane x = 0.
fn chart_ok(scene: &Scene) -> bool {
    scene.lines.iter().all(|l| !l.dir[0].is_zero())
}

/// Validate all scene invariants, applying a random rational rotation about
/// the z-axis when some direction is parallel to the chart-boundary plane.
/// Returns the (possibly rotated) scene and the rotation used.
pub fn validate_and_normalize(scene: &Scene, seed: u64) -> Result<(Scene, Rotation)> {
    check_scene_core(scene)?;
    if chart_ok(scene) {
        return Ok((scene.clone(), Rotation::identity()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let a = rng.random_range(2..100i64);
        let b = rng.random_range(1..a);
        let rot = Rotation::from_pair(a, b);
        let rotated = rot.apply_scene(scene);
        if chart_ok(&rotated) {
            check_scene_core(&rotated)?;
            return Ok((rotated, rot));
        }
    }
    Err(Error::DegenerateInput(
        "could not rotate the scene away from the chart boundary".into(),
    ))
}

/// Random integer-coordinate scene with the requested odd class sizes,
/// rejection-sampled until all invariants hold. Deterministic in the seed.
pub fn generate_scene(
    reds: usize,
    greens: usize,
    blues: usize,
    coord_bound: i64,
    seed: u64,
) -> Result<Scene> {
    for (color, count) in [
        (Color::Red, reds),
        (Color::Green, greens),
        (Color::Blue, blues),
    ] {
        if count == 0 || count % 2 == 0 {
            return Err(Error::Usage(format!(
                "{color} class size {count} must be odd and positive"
            )));
        }
    }
    if coord_bound < 2 {
        return Err(Error::Usage("coord bound must be at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines: Vec<Line3> = Vec::new();
    let mut colors = Vec::new();
    colors.extend(std::iter::repeat_n(Color::Red, reds));
    colors.extend(std::iter::repeat_n(Color::Green, greens));
    colors.extend(std::iter::repeat_n(Color::Blue, blues));

    let total_budget = 2000 * colors.len();
    let mut attempts = 0usize;
    for (idx, color) in colors.iter().enumerate() {
        'sample: loop {
            attempts += 1;
            if attempts > total_budget {
                return Err(Error::Usage(format!(
                    "couldn't generate a valid scene within {attempts} attempts; \
                     increase the coordinate bound"
                )));
            }
            let coord =
                |rng: &mut ChaCha8Rng| rat_int(rng.random_range(-coord_bound..=coord_bound));
            let candidate = Line3 {
                id: idx as LineId,
                anchor: [coord(&mut rng), coord(&mut rng), coord(&mut rng)],
                dir: [coord(&mut rng), coord(&mut rng), coord(&mut rng)],
                color: *color,
            };
            if candidate.dir[0].is_zero() || check_line_basic(&candidate).is_err() {
                continue 'sample;
            }
            for existing in &lines {
                if check_pair(existing, &candidate).is_err() {
                    continue 'sample;
                }
            }
            lines.push(candidate);
            break;
        }
    }
    let scene = Scene { lines };
    debug_assert!(check_scene_core(&scene).is_ok() && chart_ok(&scene));
    Ok(scene)
}
