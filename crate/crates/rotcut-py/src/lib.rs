//! Python bindings: scene generation and I/O, the fast and brute-force
//! solvers, verification, trace inspection, and SVG rendering.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use rotcut::exact::{rat_from_str, rat_to_string, ExtReal};
use rotcut::geometry::Color;
use rotcut::oracle::CrossingOutcome;
use rotcut::render::RenderSpec;

fn to_py_err(e: rotcut::Error) -> PyErr {
    match e {
        rotcut::Error::InternalInconsistency(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A validated 3-colored line arrangement in 3-space.
#[pyclass(frozen)]
struct Scene {
    inner: rotcut::geometry::Scene,
}

#[pymethods]
impl Scene {
    /// Generate a random valid scene; class sizes must be odd.
    #[staticmethod]
    #[pyo3(signature = (reds, greens, blues, bound=50, seed=0))]
    fn generate(
        reds: usize,
        greens: usize,
        blues: usize,
        bound: i64,
        seed: u64,
    ) -> PyResult<Scene> {
        Ok(Scene {
            inner: rotcut::geometry::generate_scene(reds, greens, blues, bound, seed)
                .map_err(to_py_err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Scene> {
        Ok(Scene {
            inner: rotcut::geometry::Scene::from_json(text).map_err(to_py_err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().map_err(to_py_err)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// (reds, greens, blues)
    fn color_counts(&self) -> (usize, usize, usize) {
        (
            self.inner.color_count(Color::Red),
            self.inner.color_count(Color::Green),
            self.inner.color_count(Color::Blue),
        )
    }

    /// Parallel slopes "p/q" per line id, the finite slopes at which each
    /// line is parallel to the cutting plane.
    fn parallel_slopes(&self) -> Vec<(u32, String)> {
        self.inner
            .lines
            .iter()
            .map(|l| (l.id, rat_to_string(&l.parallel_slope())))
            .collect()
    }

    fn __repr__(&self) -> String {
        let (r, g, b) = self.color_counts();
        format!("Scene(reds={r}, greens={g}, blues={b})")
    }
}

/// A verified bisecting cross-section: exact slope, witness line, counts.
#[pyclass(frozen)]
struct Solution {
    inner: rotcut::solver::Solution,
}

#[pymethods]
impl Solution {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Solution> {
        Ok(Solution {
            inner: rotcut::solver::Solution::from_json(text).map_err(to_py_err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().map_err(to_py_err)
    }

    /// "collinear-triple" or "parallel-degenerate".
    #[getter]
    fn kind(&self) -> &'static str {
        match self.inner.kind {
            rotcut::solver::SolutionKind::CollinearTriple => "collinear-triple",
            rotcut::solver::SolutionKind::ParallelDegenerate => "parallel-degenerate",
        }
    }

    #[getter]
    fn witness(&self) -> [u32; 3] {
        self.inner.witness
    }

    #[getter]
    fn bisector(&self) -> (u32, u32) {
        self.inner.bisector
    }

    /// Slope as a float approximation (the JSON carries the exact value).
    #[getter]
    fn slope_approx(&self) -> f64 {
        self.inner.slope.approx_f64()
    }

    /// {"R": (above, on, below), "G": ..., "B": ...}
    fn counts<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for color in Color::ALL {
            let c = self.inner.count_for(color);
            d.set_item(color.letter().to_string(), (c.above, c.on, c.below))?;
        }
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!(
            "Solution(kind={}, slope~{:.6}, bisector=({}, {}))",
            self.kind(),
            self.slope_approx(),
            self.inner.bisector.0,
            self.inner.bisector.1
        )
    }
}

/// Find a plane through the z-axis whose cross-section has a line bisecting
/// all three color classes; the result is re-verified before returning.
#[pyfunction]
#[pyo3(signature = (scene, seed=0))]
fn solve(scene: &Scene, seed: u64) -> PyResult<Solution> {
    Ok(Solution {
        inner: rotcut::solver::solve_seeded(&scene.inner, seed).map_err(to_py_err)?,
    })
}

/// Re-verify a solution against a scene with exact side counts.
#[pyfunction]
fn verify(scene: &Scene, solution: &Solution) -> PyResult<bool> {
    match rotcut::bruteforce::verify_solution(&scene.inner, &solution.inner) {
        Ok(()) => Ok(true),
        Err(rotcut::Error::VerificationFailed { .. }) => Ok(false),
        Err(e) => Err(to_py_err(e)),
    }
}

/// All brute-force candidate events as a JSON string.
#[pyfunction]
fn brute_events_json(scene: &Scene) -> PyResult<String> {
    let records = rotcut::bruteforce::brute_solve(&scene.inner).map_err(to_py_err)?;
    rotcut::bruteforce::events_to_json(&records).map_err(to_py_err)
}

/// Crossing sequence and trace at an exact rational slope "p/q"; `side`
/// may be "before" or "after" for perturbed queries. Returns a dict with
/// either sequence+trace or a solution.
#[pyfunction]
#[pyo3(signature = (scene, slope, side=None))]
fn trace<'py>(
    py: Python<'py>,
    scene: &Scene,
    slope: &str,
    side: Option<&str>,
) -> PyResult<Bound<'py, PyDict>> {
    let base = rat_from_str(slope).map_err(to_py_err)?;
    let at = match side {
        None => ExtReal::rational(base),
        Some("before") => ExtReal::just_below(base),
        Some("after") => ExtReal::just_above(base),
        Some(other) => {
            return Err(PyValueError::new_err(format!(
                "side must be \"before\" or \"after\", got {other:?}"
            )))
        }
    };
    let out = PyDict::new(py);
    match rotcut::oracle::extract_crossings(&scene.inner, &at).map_err(to_py_err)? {
        CrossingOutcome::Sequence(cs) => {
            let seq = rotcut::levels::sign_seq_of(&cs);
            seq.validate().map_err(to_py_err)?;
            out.set_item("sequence", seq.encode())?;
            out.set_item("trace", seq.trace().0)?;
        }
        CrossingOutcome::Coincidence(_) => {
            let w = match rotcut::oracle::sidedness(&scene.inner, &at).map_err(to_py_err)? {
                rotcut::oracle::OracleResult::Solution(w) => w,
                rotcut::oracle::OracleResult::Trace(_) => unreachable!(),
            };
            let sol = rotcut::solver::assemble_solution(&scene.inner, &w).map_err(to_py_err)?;
            out.set_item("solution", Solution { inner: sol }.into_pyobject(py)?)?;
        }
    }
    Ok(out)
}

/// SVG rendering of the cross-section at "p/q" (or the dual median levels
/// with `dual=True`).
#[pyfunction]
#[pyo3(signature = (scene, slope, dual=false, width=800, height=600, precision=9))]
fn render_svg(
    scene: &Scene,
    slope: &str,
    dual: bool,
    width: u32,
    height: u32,
    precision: usize,
) -> PyResult<String> {
    let at = ExtReal::rational(rat_from_str(slope).map_err(to_py_err)?);
    let spec = RenderSpec {
        width,
        height,
        precision,
        dual,
    };
    rotcut::render::render_svg(&scene.inner, &at, &spec, None).map_err(to_py_err)
}

#[pymodule]
fn rotcut_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Scene>()?;
    m.add_class::<Solution>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(brute_events_json, m)?)?;
    m.add_function(wrap_pyfunction!(trace, m)?)?;
    m.add_function(wrap_pyfunction!(render_svg, m)?)?;
    Ok(())
}
