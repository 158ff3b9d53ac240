//! The full search: a binary scan over the parallel-event slopes that pins
//! down a parallel-free interval with a trace flip, then a parametric
//! search that simulates sorting every point's angular neighbor order by a
//! comparison network, answering comparator batches through median event
//! queries to the sidedness oracle until a query lands on a switch event
//! and surfaces the bisector.

mod network;
mod solution;

pub use network::batcher_rounds;
pub use solution::{
    bisection_violation, satisfies_bisection, side_counts, slope_json, SideCount, Solution,
    SolutionKind,
};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exact::{AlgebraicReal, ExactNum, ExtReal, Rat, RootKey};
use crate::geometry::{
    collinearity_events, cross_section, orientation, validate_and_normalize, LineId, Scene,
    SlopeParam,
};
use crate::oracle::{
    endpoint_traces, sidedness, CoincidenceWitness, EndpointOutcome, OracleResult,
};
use crate::signseq::Trace;

/// A slope interval with differing traces at its ends and no parallel slope
/// strictly inside: the search space handed to the parametric search.
#[derive(Clone, Debug)]
pub struct Interval {
    pub lo: SlopeParam,
    pub hi: SlopeParam,
    pub tau_lo: Trace,
    pub tau_hi: Trace,
}

impl Interval {
    fn contains_strictly(&self, x: &SlopeParam) -> bool {
        &self.lo < x && x < &self.hi
    }
}

/// A continuously deforming point family: per-triple orientations change
/// sign only at finitely many event slopes, computable per triple.
pub trait KineticFamily {
    fn point_ids(&self) -> Vec<LineId>;
    fn events(&self, i: LineId, j: LineId, k: LineId) -> Result<Vec<AlgebraicReal>>;
    fn orientation(&self, at: &SlopeParam, i: LineId, j: LineId, k: LineId) -> Result<i8>;
}

/// The geometry-backed family of cross-section point sets.
pub struct SceneFamily<'a> {
    pub scene: &'a Scene,
}

impl KineticFamily for SceneFamily<'_> {
    fn point_ids(&self) -> Vec<LineId> {
        self.scene.lines.iter().map(|l| l.id).collect()
    }

    fn events(&self, i: LineId, j: LineId, k: LineId) -> Result<Vec<AlgebraicReal>> {
        collinearity_events(self.scene, i, j, k)
    }

    fn orientation(&self, at: &SlopeParam, i: LineId, j: LineId, k: LineId) -> Result<i8> {
        orientation(self.scene, at, i, j, k)
    }
}

#[derive(Clone, Debug, Default)]
pub struct SolveStats {
    /// Oracle calls issued by the parallel-event scan.
    pub scan_calls: usize,
    /// Oracle calls per bundled round of the parametric search.
    pub round_calls: Vec<usize>,
}

impl SolveStats {
    pub fn search_calls(&self) -> usize {
        self.round_calls.iter().sum()
    }
}

#[derive(Clone, Debug)]
pub enum ScanOutcome {
    Solution(Solution),
    Interval(Interval),
}

/// Assemble a full solution from a median-level coincidence: side counts of
/// the witness line through the three involved points.
pub fn assemble_solution(scene: &Scene, w: &CoincidenceWitness) -> Result<Solution> {
    let cs = cross_section(scene, &w.slope);
    let mut ids = [w.red_id, w.green_id, w.blue_id];
    ids.sort_unstable();
    let bisector = (ids[0], ids[1]);
    let counts = side_counts(&cs, bisector.0, bisector.1);
    Ok(Solution {
        slope: w.slope.clone(),
        kind: SolutionKind::CollinearTriple,
        witness: ids,
        bisector,
        counts,
        rotation: None,
    })
}

/// Exhaustive bisector check on the degenerate plane parallel to one line:
/// the vanished line's class is even there, so a bisector must pass through
/// one point of each of the two odd classes. Every such pair is tested.
pub fn check_parallel_plane(scene: &Scene, line_id: LineId) -> Result<Option<Solution>> {
    let line = scene.line(line_id);
    let m = line.parallel_slope();
    let at = ExtReal::rational(m);
    let cs = cross_section(scene, &at);
    debug_assert_eq!(cs.omitted, Some(line_id));
    let odd_colors: Vec<crate::geometry::Color> = crate::geometry::Color::ALL
        .into_iter()
        .filter(|c| *c != line.color)
        .collect();
    for a in cs.points.iter().filter(|p| p.color == odd_colors[0]) {
        for b in cs.points.iter().filter(|p| p.color == odd_colors[1]) {
            let counts = side_counts(&cs, a.id, b.id);
            if satisfies_bisection(&counts) {
                let (x, y) = (a.id.min(b.id), a.id.max(b.id));
                return Ok(Some(Solution {
                    slope: at,
                    kind: SolutionKind::ParallelDegenerate,
                    witness: [x, y, line_id],
                    bisector: (x, y),
                    counts,
                    rotation: None,
                }));
            }
        }
    }
    Ok(None)
}

/// Locate a trace flip between consecutive parallel slopes (or beyond the
/// extremes) by binary search over one probe slope per gap, handling any
/// straddled parallel slope with the degenerate-plane check and perturbed
/// queries on both sides.
pub fn scan_parallel(scene: &Scene) -> Result<ScanOutcome> {
    let mut stats = SolveStats::default();
    scan_parallel_with(scene, &mut stats)
}

pub fn scan_parallel_with(scene: &Scene, stats: &mut SolveStats) -> Result<ScanOutcome> {
    let (tau_neg, tau_pos) = match endpoint_traces(scene)? {
        EndpointOutcome::Solution(w) => {
            return Ok(ScanOutcome::Solution(assemble_solution(scene, &w)?))
        }
        EndpointOutcome::Traces { neg, pos, .. } => (neg, pos),
    };
    let mut parallels: Vec<(Rat, LineId)> = scene
        .lines
        .iter()
        .map(|l| (l.parallel_slope(), l.id))
        .collect();
    parallels.sort_by(|a, b| a.0.cmp(&b.0));
    let n = parallels.len();

    // One probe per gap between consecutive parallel slopes; perturbed
    // probes just beyond the extremes.
    let mut probes: Vec<SlopeParam> = Vec::with_capacity(n + 1);
    probes.push(ExtReal::just_below(parallels[0].0.clone()));
    for w in parallels.windows(2) {
        let mid = (&w[0].0 + &w[1].0) / Rat::from_integer(2.into());
        probes.push(ExtReal::rational(mid));
    }
    probes.push(ExtReal::just_above(parallels[n - 1].0.clone()));

    // Chain values: index 0 = -infinity, 1..=n+1 the probes, n+2 = +infinity.
    let mut cache: HashMap<usize, Trace> = HashMap::new();
    cache.insert(0, tau_neg);
    cache.insert(probes.len() + 1, tau_pos);
    let mut eval =
        |idx: usize, stats: &mut SolveStats| -> Result<std::result::Result<Trace, Solution>> {
            if let Some(t) = cache.get(&idx) {
                return Ok(Ok(*t));
            }
            stats.scan_calls += 1;
            match sidedness(scene, &probes[idx - 1])? {
                OracleResult::Solution(w) => Ok(Err(assemble_solution(scene, &w)?)),
                OracleResult::Trace(t) => {
                    cache.insert(idx, t);
                    Ok(Ok(t))
                }
            }
        };

    let mut lo = 0usize;
    let mut hi = probes.len() + 1;
    let tau_at_lo = tau_neg;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        let t = match eval(mid, stats)? {
            Ok(t) => t,
            Err(sol) => return Ok(ScanOutcome::Solution(sol)),
        };
        if t == tau_at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Adjacent chain entries with differing traces.
    let tau_at_hi = tau_at_lo.flipped();

    if lo == 0 {
        return Ok(ScanOutcome::Interval(Interval {
            lo: ExtReal::NegInfinity,
            hi: probes[0].clone(),
            tau_lo: tau_neg,
            tau_hi: tau_at_hi,
        }));
    }
    if hi == probes.len() + 1 {
        return Ok(ScanOutcome::Interval(Interval {
            lo: probes[probes.len() - 1].clone(),
            hi: ExtReal::PosInfinity,
            tau_lo: tau_at_lo,
            tau_hi: tau_pos,
        }));
    }
    // The flip straddles the parallel slope between probes lo-1 and hi-1.
    let (m, line_id) = parallels[lo - 1].clone();
    if let Some(sol) = check_parallel_plane(scene, line_id)? {
        return Ok(ScanOutcome::Solution(sol));
    }
    let query = |scene: &Scene,
                 s: SlopeParam,
                 stats: &mut SolveStats|
     -> Result<std::result::Result<Trace, Solution>> {
        stats.scan_calls += 1;
        match sidedness(scene, &s)? {
            OracleResult::Solution(w) => Ok(Err(assemble_solution(scene, &w)?)),
            OracleResult::Trace(t) => Ok(Ok(t)),
        }
    };
    let before = ExtReal::just_below(m.clone());
    let after = ExtReal::just_above(m.clone());
    let tau_before = match query(scene, before.clone(), stats)? {
        Ok(t) => t,
        Err(sol) => return Ok(ScanOutcome::Solution(sol)),
    };
    let tau_after = match query(scene, after.clone(), stats)? {
        Ok(t) => t,
        Err(sol) => return Ok(ScanOutcome::Solution(sol)),
    };
    if tau_before != tau_after {
        // With no solution at the degenerate plane, the sign sequence
        // changes only by insertions, deletions and transfers across it, so
        // the trace must be preserved.
        return Err(Error::InternalInconsistency(format!(
            "trace flips across the parallel slope of line {line_id} with no solution there"
        )));
    }
    if tau_at_lo != tau_before {
        Ok(ScanOutcome::Interval(Interval {
            lo: probes[lo - 1].clone(),
            hi: before,
            tau_lo: tau_at_lo,
            tau_hi: tau_before,
        }))
    } else {
        Ok(ScanOutcome::Interval(Interval {
            lo: after,
            hi: probes[hi - 1].clone(),
            tau_lo: tau_after,
            tau_hi: tau_at_hi,
        }))
    }
}

/// Angular comparator around pivot `p` with reference `q`: whether `a`
/// precedes `b` in the unsigned local sequence linearized at `q`. Valid
/// only at slopes where none of the involved triples are collinear.
fn angular_before<F: KineticFamily>(
    family: &F,
    at: &SlopeParam,
    p: LineId,
    q: LineId,
    a: LineId,
    b: LineId,
) -> Result<bool> {
    if a == q {
        return Ok(true);
    }
    if b == q {
        return Ok(false);
    }
    let ha = family.orientation(at, p, q, a)?;
    let hb = family.orientation(at, p, q, b)?;
    let o = family.orientation(at, p, a, b)?;
    debug_assert!(ha != 0 && hb != 0 && o != 0);
    Ok(o * ha * hb > 0)
}

/// Parametric search over the kinetic family: simulate, for every point, a
/// comparison network sorting the others into its local sequence; bundle
/// each network round across all runs, and resolve the round by querying
/// the oracle at median event slopes while narrowing the interval. Returns
/// the coincidence surfaced by an oracle query at a switch event.
pub fn parametric_search<F, O>(
    family: &F,
    mut oracle: O,
    mut interval: Interval,
    stats: &mut SolveStats,
) -> Result<CoincidenceWitness>
where
    F: KineticFamily,
    O: FnMut(&SlopeParam) -> Result<OracleResult>,
{
    let ids = family.point_ids();
    let n = ids.len();
    let rounds = batcher_rounds(n.saturating_sub(1));
    // Per-pivot arrays of the other points, to be sorted angularly; the
    // reference is the lowest-id other point and sorts first.
    let mut arrays: Vec<Vec<LineId>> = ids
        .iter()
        .map(|&p| ids.iter().copied().filter(|&x| x != p).collect())
        .collect();
    let refs: Vec<LineId> = arrays
        .iter()
        .map(|arr| *arr.iter().min().unwrap())
        .collect();
    let mut event_cache: HashMap<(LineId, LineId, LineId), Vec<ExactNum>> = HashMap::new();

    for round in &rounds {
        let mut calls = 0usize;
        // Gather the round's comparisons and their candidate events.
        let mut candidates: HashMap<RootKey, ExactNum> = HashMap::new();
        let mut involved: Vec<(LineId, LineId, LineId)> = Vec::new();
        for (pi, &p) in ids.iter().enumerate() {
            let q = refs[pi];
            for &(x, y) in round {
                let a = arrays[pi][x];
                let b = arrays[pi][y];
                // Comparisons against the reference resolve by definition
                // (the reference is first at every slope), but the triple's
                // events still gate the order type and must be examined;
                // without this, a 3-point family would never surface its
                // switch.
                let all = [(p, q, a), (p, q, b), (p, a, b)];
                let triples = if a == q || b == q {
                    &all[2..]
                } else {
                    &all[..]
                };
                for t in triples {
                    let mut key = [t.0, t.1, t.2];
                    key.sort_unstable();
                    involved.push((key[0], key[1], key[2]));
                }
            }
        }
        involved.sort_unstable();
        involved.dedup();
        for (i, j, k) in involved {
            let events = match event_cache.entry((i, j, k)) {
                std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
                std::collections::hash_map::Entry::Vacant(v) => {
                    // Tight isolating intervals make the oracle's many sign
                    // evaluations at a queried event slope cheap, and event
                    // comparisons mostly resolve by interval disjointness.
                    let width = crate::exact::rat(1, 1i64 << 44);
                    let evs = family
                        .events(i, j, k)?
                        .into_iter()
                        .map(|r| ExactNum::algebraic(r.refined_below_width(&width)))
                        .collect::<Vec<_>>();
                    v.insert(evs)
                }
            };
            for e in events.iter() {
                let slope = ExtReal::Finite(e.clone());
                if interval.contains_strictly(&slope) {
                    candidates.entry(e_key(e)).or_insert_with(|| e.clone());
                }
            }
        }
        let mut events: Vec<ExactNum> = candidates.into_values().collect();

        // Median queries until every event of this round is resolved.
        while !events.is_empty() {
            let mid = events.len() / 2;
            let (_, median, _) = events.select_nth_unstable_by(mid, |a, b| a.cmp(b));
            let slope = ExtReal::Finite(median.clone());
            calls += 1;
            match oracle(&slope)? {
                OracleResult::Solution(w) => {
                    stats.round_calls.push(calls);
                    return Ok(w);
                }
                OracleResult::Trace(t) => {
                    if t != interval.tau_lo {
                        interval.hi = slope;
                        interval.tau_hi = t;
                    } else {
                        interval.lo = slope;
                        interval.tau_lo = t;
                    }
                    debug_assert!(interval.tau_lo != interval.tau_hi);
                }
            }
            events.retain(|e| interval.contains_strictly(&ExtReal::Finite(e.clone())));
        }
        stats.round_calls.push(calls);

        // All of the round's triples are event-free inside the interval:
        // resolve the comparators at any rational slope strictly inside.
        let witness = ExtReal::rational(interval.lo.rational_between(&interval.hi));
        for (pi, &p) in ids.iter().enumerate() {
            let q = refs[pi];
            for &(x, y) in round {
                let a = arrays[pi][x];
                let b = arrays[pi][y];
                if !angular_before(family, &witness, p, q, a, b)? {
                    arrays[pi].swap(x, y);
                }
            }
        }
    }
    Err(Error::InternalInconsistency(
        "local sequences resolved without encountering a switch event".into(),
    ))
}

fn e_key(e: &ExactNum) -> RootKey {
    match e {
        ExactNum::Rational(r) => RootKey::Rational(r.clone()),
        ExactNum::Algebraic(a) => a.dedup_key(),
        ExactNum::Perturbed(_) => unreachable!("events are real slopes"),
    }
}

/// End-to-end: normalize, scan the parallel events, run the parametric
/// search if needed, and re-verify the result against the brute-force side
/// counter before returning it.
pub fn solve(scene: &Scene) -> Result<Solution> {
    Ok(solve_with_stats(scene, 0)?.0)
}

pub fn solve_seeded(scene: &Scene, seed: u64) -> Result<Solution> {
    Ok(solve_with_stats(scene, seed)?.0)
}

pub fn solve_with_stats(scene: &Scene, seed: u64) -> Result<(Solution, SolveStats)> {
    let (normalized, rotation) = validate_and_normalize(scene, seed)?;
    let mut stats = SolveStats::default();
    let mut sol = match scan_parallel_with(&normalized, &mut stats)? {
        ScanOutcome::Solution(s) => s,
        ScanOutcome::Interval(iv) => {
            let family = SceneFamily { scene: &normalized };
            let w = parametric_search(
                &family,
                |slope| sidedness(&normalized, slope),
                iv,
                &mut stats,
            )?;
            assemble_solution(&normalized, &w)?
        }
    };
    if !rotation.is_identity() {
        sol.rotation = Some(rotation);
    }
    crate::bruteforce::verify_solution(scene, &sol).map_err(|e| {
        Error::InternalInconsistency(format!("solve produced an unverifiable solution: {e}"))
    })?;
    Ok((sol, stats))
}
