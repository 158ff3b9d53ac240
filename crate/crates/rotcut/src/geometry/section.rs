use num::Zero;

use super::{CrossPoint, CrossSection, LineId, Scene, SlopeParam};
use crate::error::{Error, Result};
use crate::exact::{isolate_roots, AlgebraicReal, ExtReal, Polynomial, Rat, RationalFn};

/// Cross-section of the scene at a slope. At a finite slope m the cutting
/// plane is {y = m x} with in-plane coordinates (u, z) = (x, z); a line
/// parallel to the plane is omitted. At the infinities the plane is x = 0
/// under the charts u = -y (NegInfinity) and u = +y (PosInfinity), which are
/// the orientation-true limits of the rescaled coordinates |m| u.
pub fn cross_section(scene: &Scene, slope: &SlopeParam) -> CrossSection {
    let mut points = Vec::with_capacity(scene.len());
    let mut omitted = None;
    match slope {
        ExtReal::Finite(_) => {
            for line in &scene.lines {
                let den = line.den_poly();
                if slope.sign_of(&den) == 0 {
                    debug_assert!(omitted.is_none(), "two lines parallel to one plane");
                    omitted = Some(line.id);
                    continue;
                }
                let (b, c) = line.z_coeffs();
                let u = RationalFn::new(Polynomial::constant(line.chart_numerator()), den.clone());
                let z = RationalFn::new(Polynomial::new(vec![c, b]), den);
                points.push(CrossPoint {
                    id: line.id,
                    color: line.color,
                    u,
                    z,
                });
            }
        }
        ExtReal::NegInfinity | ExtReal::PosInfinity => {
            let flip = if matches!(slope, ExtReal::NegInfinity) {
                Rat::from_integer(1.into())
            } else {
                Rat::from_integer((-1).into())
            };
            for line in &scene.lines {
                assert!(
                    !line.dir[0].is_zero(),
                    "endpoint charts need vx != 0 (normalize the scene first)"
                );
                let (b, _) = line.z_coeffs();
                let u = &flip * line.chart_numerator() / &line.dir[0];
                let z = -b / &line.dir[0];
                points.push(CrossPoint {
                    id: line.id,
                    color: line.color,
                    u: RationalFn::constant(u),
                    z: RationalFn::constant(z),
                });
            }
        }
    }
    CrossSection {
        points,
        slope: slope.clone(),
        omitted,
    }
}

/// The cleared-denominator orientation polynomial of a line triple: the
/// 3x3 orientation determinant of their cross-section points multiplied by
/// d_i d_j d_k. Degree at most 2; its real roots are the collinearity event
/// slopes of the triple.
pub fn orientation_poly(scene: &Scene, i: LineId, j: LineId, k: LineId) -> Polynomial {
    let cols: Vec<(Polynomial, Polynomial, Polynomial)> = [i, j, k]
        .iter()
        .map(|&id| {
            let line = scene.line(id);
            let (b, c) = line.z_coeffs();
            (
                Polynomial::constant(line.chart_numerator()),
                Polynomial::new(vec![c, b]),
                line.den_poly(),
            )
        })
        .collect();
    let det2 =
        |a: &Polynomial, b: &Polynomial, c: &Polynomial, d: &Polynomial| a.mul(d).sub(&b.mul(c));
    // Expansion along the first row of [[u*d], [z*d], [d]] columns.
    let (ref u0, ref z0, ref d0) = cols[0];
    let (ref u1, ref z1, ref d1) = cols[1];
    let (ref u2, ref z2, ref d2) = cols[2];
    u0.mul(&det2(z1, z2, d1, d2))
        .sub(&u1.mul(&det2(z0, z2, d0, d2)))
        .add(&u2.mul(&det2(z0, z1, d0, d1)))
        .primitive()
}

/// Exact orientation sign of the cross-section points of lines (i, j, k) at
/// a slope: +1 counterclockwise, -1 clockwise, 0 collinear. The slope must
/// not be a parallel slope of any of the three lines.
pub fn orientation(
    scene: &Scene,
    slope: &SlopeParam,
    i: LineId,
    j: LineId,
    k: LineId,
) -> Result<i8> {
    if i == j || j == k || i == k {
        return Err(Error::Usage(format!(
            "orientation requires distinct ids, got ({i}, {j}, {k})"
        )));
    }
    let mut den_sign = 1i8;
    // At the endpoint charts the determinant is taken on the chart
    // coordinates directly; denominators only matter at finite slopes.
    if let ExtReal::Finite(_) = slope {
        for id in [i, j, k] {
            let s = slope.sign_of(&scene.line(id).den_poly());
            if s == 0 {
                return Err(Error::Usage(format!(
                    "line {id} is parallel to the plane at this slope"
                )));
            }
            den_sign *= s;
        }
    }
    match slope {
        ExtReal::Finite(_) => Ok(slope.sign_of(&orientation_poly(scene, i, j, k)) * den_sign),
        _ => {
            let cs = cross_section(scene, slope);
            Ok(orientation_in_section(&cs, i, j, k))
        }
    }
}

/// Orientation determinant evaluated directly on cross-section coordinates.
/// Each column of [[u], [z], [1]] is cleared by its point's denominator
/// product; the cleared determinant's sign is then corrected by the exact
/// signs of those denominators at the slope.
pub fn orientation_in_section(cs: &CrossSection, i: LineId, j: LineId, k: LineId) -> i8 {
    let col = |id: LineId| {
        let p = cs.point(id);
        (
            p.u.num().mul(p.z.den()),
            p.z.num().mul(p.u.den()),
            p.u.den().mul(p.z.den()),
        )
    };
    let (u0, z0, w0) = col(i);
    let (u1, z1, w1) = col(j);
    let (u2, z2, w2) = col(k);
    let det = u0
        .mul(&z1.mul(&w2).sub(&z2.mul(&w1)))
        .sub(&u1.mul(&z0.mul(&w2).sub(&z2.mul(&w0))))
        .add(&u2.mul(&z0.mul(&w1).sub(&z1.mul(&w0))));
    let mut sign = cs.slope.sign_of(&det);
    for id in [i, j, k] {
        let p = cs.point(id);
        let du = cs.slope.sign_of(p.u.den());
        let dz = cs.slope.sign_of(p.z.den());
        debug_assert!(du != 0 && dz != 0);
        sign *= du * dz;
    }
    sign
}

/// All slopes at which the cross-section points of the triple become
/// collinear: the real roots of the orientation polynomial, excluding the
/// three parallel slopes (where a point vanishes instead). An identically
/// zero polynomial means the triple is collinear in every cross-section,
/// which violates general position.
pub fn collinearity_events(
    scene: &Scene,
    i: LineId,
    j: LineId,
    k: LineId,
) -> Result<Vec<AlgebraicReal>> {
    if i == j || j == k || i == k {
        return Err(Error::Usage(format!(
            "collinearity_events requires distinct ids, got ({i}, {j}, {k})"
        )));
    }
    let poly = orientation_poly(scene, i, j, k);
    if poly.is_zero() {
        return Err(Error::DegenerateInput(format!(
            "lines ({i}, {j}, {k}) are persistently collinear in every cross-section"
        )));
    }
    if poly.degree() == 0 {
        return Ok(vec![]);
    }
    let roots = isolate_roots(&poly, None)?;
    // Lines with vx == 0 (pre-normalization scenes) are parallel to the
    // plane only in the limit and exclude no finite root.
    let parallels: Vec<Rat> = [i, j, k]
        .iter()
        .map(|&id| scene.line(id))
        .filter(|l| !l.dir[0].is_zero())
        .map(|l| l.parallel_slope())
        .collect();
    Ok(roots
        .into_iter()
        .filter(|r| {
            parallels
                .iter()
                .all(|p| r.cmp_rat(p) != std::cmp::Ordering::Equal)
        })
        .collect())
}
