//! Python bindings. SI units throughout, as in the Rust crate.

use pyo3::create_exception;
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use slabk::ann::AnnModel as CoreModel;
use slabk::distress::{self, CornerDeflections, FaultingMonth};
use slabk::forward::{self, ForwardModel};
use slabk::hydrostatics::{self, SuctionProfile};
use slabk::ingest;
use slabk::kvalue::{self, AreaConstants, PipelineOptions};
use slabk::resilient_modulus::{self as mr, StressState, SuctionModelOptions};
use slabk::slab;

create_exception!(slabk, SlabkError, PyValueError);

fn err(e: slabk::Error) -> PyErr {
    match e {
        slabk::Error::Io(msg) => PyOSError::new_err(msg),
        other => SlabkError::new_err(other.to_string()),
    }
}

fn model_from(name: &str, subgrade_depth: Option<f64>) -> PyResult<ForwardModel> {
    match name {
        "layered" => Ok(ForwardModel::LayeredSlab { subgrade_depth }),
        "halfspace" => Ok(ForwardModel::EquivalentHalfspace),
        other => Err(PyValueError::new_err(format!("unknown forward model '{other}'; use 'layered' or 'halfspace'"))),
    }
}

fn load_or_default(load: Option<PyRef<'_, FwdLoad>>) -> forward::FwdLoad {
    load.map(|l| l.0).unwrap_or_default()
}

#[pyclass(module = "slabk", skip_from_py_object)]
#[derive(Clone)]
pub struct PavementSection(slab::PavementSection);

#[pymethods]
impl PavementSection {
    #[new]
    #[pyo3(signature = (h_s, h_b, e_slab, e_base, e_subgrade, delta, nu_slab=0.15, nu_base=0.35, nu_subgrade=0.40))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        h_s: f64,
        h_b: f64,
        e_slab: f64,
        e_base: f64,
        e_subgrade: f64,
        delta: f64,
        nu_slab: f64,
        nu_base: f64,
        nu_subgrade: f64,
    ) -> PyResult<Self> {
        let s = slab::PavementSection { h_s, h_b, e_slab, e_base, e_subgrade, nu_slab, nu_base, nu_subgrade, delta };
        s.validate().map_err(err)?;
        Ok(PavementSection(s))
    }

    #[getter]
    fn h_s(&self) -> f64 {
        self.0.h_s
    }
    #[getter]
    fn h_b(&self) -> f64 {
        self.0.h_b
    }
    #[getter]
    fn e_slab(&self) -> f64 {
        self.0.e_slab
    }
    #[getter]
    fn e_base(&self) -> f64 {
        self.0.e_base
    }
    #[getter]
    fn e_subgrade(&self) -> f64 {
        self.0.e_subgrade
    }
    #[getter]
    fn nu_slab(&self) -> f64 {
        self.0.nu_slab
    }
    #[getter]
    fn nu_base(&self) -> f64 {
        self.0.nu_base
    }
    #[getter]
    fn nu_subgrade(&self) -> f64 {
        self.0.nu_subgrade
    }
    #[getter]
    fn delta(&self) -> f64 {
        self.0.delta
    }

    fn with_delta(&self, delta: f64) -> PyResult<Self> {
        let s = self.0.with_delta(delta);
        s.validate().map_err(err)?;
        Ok(PavementSection(s))
    }

    fn with_base_modulus(&self, e_base: f64) -> PyResult<Self> {
        let s = self.0.with_base_modulus(e_base);
        s.validate().map_err(err)?;
        Ok(PavementSection(s))
    }

    fn __repr__(&self) -> String {
        let s = &self.0;
        format!(
            "PavementSection(h_s={}, h_b={}, e_slab={}, e_base={}, e_subgrade={}, delta={})",
            s.h_s, s.h_b, s.e_slab, s.e_base, s.e_subgrade, s.delta
        )
    }
}

#[pyclass(module = "slabk", skip_from_py_object)]
#[derive(Clone)]
pub struct FwdLoad(forward::FwdLoad);

#[pymethods]
impl FwdLoad {
    #[new]
    #[pyo3(signature = (magnitude=40_000.0, radius=0.15))]
    fn new(magnitude: f64, radius: f64) -> PyResult<Self> {
        let l = forward::FwdLoad { magnitude, radius };
        l.validate().map_err(err)?;
        Ok(FwdLoad(l))
    }

    #[getter]
    fn magnitude(&self) -> f64 {
        self.0.magnitude
    }
    #[getter]
    fn radius(&self) -> f64 {
        self.0.radius
    }

    fn pressure(&self) -> f64 {
        self.0.pressure()
    }

    fn __repr__(&self) -> String {
        format!("FwdLoad(magnitude={}, radius={})", self.0.magnitude, self.0.radius)
    }
}

#[pyclass(module = "slabk", skip_from_py_object)]
#[derive(Clone)]
pub struct DeflectionBasin(forward::DeflectionBasin);

#[pymethods]
impl DeflectionBasin {
    #[new]
    fn new(offsets: Vec<f64>, deflections: Vec<f64>) -> PyResult<Self> {
        Ok(DeflectionBasin(forward::DeflectionBasin::new(offsets, deflections).map_err(err)?))
    }

    #[getter]
    fn offsets(&self) -> Vec<f64> {
        self.0.offsets.clone()
    }
    #[getter]
    fn deflections(&self) -> Vec<f64> {
        self.0.deflections.clone()
    }

    fn d0(&self) -> f64 {
        self.0.d0()
    }

    fn scaled(&self, s: f64) -> Self {
        DeflectionBasin(self.0.scaled(s))
    }

    fn __len__(&self) -> usize {
        self.0.offsets.len()
    }

    fn __repr__(&self) -> String {
        format!("DeflectionBasin(offsets={:?}, deflections={:?})", self.0.offsets, self.0.deflections)
    }
}

#[pyclass(module = "slabk", skip_from_py_object)]
#[derive(Clone)]
pub struct SwccParams(hydrostatics::SwccParams);

#[pymethods]
impl SwccParams {
    #[new]
    fn new(a_f: f64, b_f: f64, c_f: f64, h_r: f64, theta_sat: f64) -> PyResult<Self> {
        let p = hydrostatics::SwccParams { a_f, b_f, c_f, h_r, theta_sat };
        p.validate().map_err(err)?;
        Ok(SwccParams(p))
    }

    /// Degree of saturation at suction head `h` (cm of water).
    fn saturation(&self, h: f64) -> PyResult<f64> {
        hydrostatics::swcc_saturation(h, &self.0).map_err(err)
    }

    /// Suction head (cm) at which the curve reaches saturation `s`.
    fn invert(&self, s: f64) -> PyResult<f64> {
        hydrostatics::invert_swcc(s, &self.0).map_err(err)
    }

    /// Moisture state at suction head `h` (cm).
    fn state(&self, h: f64) -> PyResult<MoistureState> {
        Ok(MoistureState(hydrostatics::moisture_state(&self.0, h).map_err(err)?))
    }
}

#[pyclass(module = "slabk", skip_from_py_object)]
#[derive(Clone)]
pub struct MoistureState(hydrostatics::MoistureState);

#[pymethods]
impl MoistureState {
    #[new]
    fn new(theta: f64, saturation: f64, suction_kpa: f64, f: f64) -> PyResult<Self> {
        let m = hydrostatics::MoistureState { theta, saturation, suction_kpa, f };
        m.validate().map_err(err)?;
        Ok(MoistureState(m))
    }

    #[getter]
    fn theta(&self) -> f64 {
        self.0.theta
    }
    #[getter]
    fn saturation(&self) -> f64 {
        self.0.saturation
    }
    #[getter]
    fn suction_kpa(&self) -> f64 {
        self.0.suction_kpa
    }
    #[getter]
    fn f(&self) -> f64 {
        self.0.f
    }

    fn __repr__(&self) -> String {
        let m = &self.0;
        format!("MoistureState(theta={}, saturation={}, suction_kpa={}, f={})", m.theta, m.saturation, m.suction_kpa, m.f)
    }
}

#[pyclass(module = "slabk", skip_from_py_object)]
#[derive(Clone)]
pub struct MrCoefficients(mr::MrCoefficients);

#[pymethods]
impl MrCoefficients {
    #[new]
    fn new(k1: f64, k2: f64, k3: f64) -> Self {
        MrCoefficients(mr::MrCoefficients { k1, k2, k3 })
    }

    #[getter]
    fn k1(&self) -> f64 {
        self.0.k1
    }
    #[getter]
    fn k2(&self) -> f64 {
        self.0.k2
    }
    #[getter]
    fn k3(&self) -> f64 {
        self.0.k3
    }
}

#[pyclass(module = "slabk", skip_from_py_object)]
#[derive(Clone)]
pub struct KValue(kvalue::KValue);

#[pymethods]
impl KValue {
    #[getter]
    fn basin_area_in(&self) -> f64 {
        self.0.basin_area_in
    }
    #[getter]
    fn l_e_in(&self) -> f64 {
        self.0.l_e_in
    }
    #[getter]
    fn d_star(&self) -> f64 {
        self.0.d_star
    }
    #[getter]
    fn k_pci(&self) -> f64 {
        self.0.k_pci
    }
    #[getter]
    fn k_pa_per_m(&self) -> f64 {
        self.0.k_pa_per_m
    }

    fn __repr__(&self) -> String {
        let k = &self.0;
        format!("KValue(basin_area_in={}, l_e_in={}, d_star={}, k_pci={})", k.basin_area_in, k.l_e_in, k.d_star, k.k_pci)
    }
}

#[pyclass(module = "slabk")]
pub struct AnnModel(CoreModel);

#[pymethods]
impl AnnModel {
    #[staticmethod]
    fn load(path: std::path::PathBuf) -> PyResult<Self> {
        Ok(AnnModel(CoreModel::load(&path).map_err(err)?))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(AnnModel(CoreModel::from_json(text).map_err(err)?))
    }

    fn to_json(&self) -> PyResult<String> {
        self.0.to_json().map_err(err)
    }

    #[getter]
    fn inputs(&self) -> usize {
        self.0.inputs
    }
    #[getter]
    fn hidden(&self) -> usize {
        self.0.hidden
    }

    /// k (pci) for raw SI inputs `[h_slab, h_base, e_slab, e_base, e_subgrade, delta]`.
    fn predict(&self, x: Vec<f64>) -> PyResult<f64> {
        Ok(self.0.forward(&x).map_err(err)?.k_pci)
    }

    /// `(k_pci, warnings)`; warnings list inputs outside the training range.
    fn forward(&self, x: Vec<f64>) -> PyResult<(f64, Vec<String>)> {
        let p = self.0.forward(&x).map_err(err)?;
        Ok((p.k_pci, p.warnings))
    }
}

/// Built-in (or `$SLABK_FIXTURES`) sections keyed by `state_code-shrp_id`.
#[pyfunction]
fn load_sections(py: Python<'_>) -> PyResult<Bound<'_, PyDict>> {
    let d = PyDict::new(py);
    for s in ingest::default_sections().map_err(err)? {
        d.set_item(s.id(), PavementSection(s.to_section()))?;
    }
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (coeffs, i1=208.0, tau_oct=48.6, p_a=101.325))]
fn mr_nchrp(coeffs: PyRef<'_, MrCoefficients>, i1: f64, tau_oct: f64, p_a: f64) -> PyResult<f64> {
    mr::mr_nchrp(&coeffs.0, &StressState { i1, tau_oct, p_a }).map_err(err)
}

#[pyfunction]
fn mr_me_ratio(a: f64, b: f64, k_m: f64, s_opt: f64, mr_opt: f64, s_now: f64) -> PyResult<f64> {
    mr::mr_me_ratio(&mr::MeMoistureParams { a, b, k_m, s_opt, mr_opt }, s_now).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (coeffs, state, i1=208.0, tau_oct=48.6, p_a=101.325, shear_plus_one=false))]
fn mr_suction(
    coeffs: PyRef<'_, MrCoefficients>,
    state: PyRef<'_, MoistureState>,
    i1: f64,
    tau_oct: f64,
    p_a: f64,
    shear_plus_one: bool,
) -> PyResult<f64> {
    mr::mr_suction(&coeffs.0, &StressState { i1, tau_oct, p_a }, &state.0, SuctionModelOptions { shear_plus_one })
        .map_err(err)
}

/// Signed pressure head (cm) at elevation `z` on the equilibrium profile.
#[pyfunction]
fn suction_at_elevation(z_ref: f64, h_ref: f64, z: f64) -> f64 {
    hydrostatics::suction_at_elevation(&SuctionProfile { z_ref, h_ref }, z)
}

#[pyfunction]
fn transformed_section<'py>(py: Python<'py>, sec: PyRef<'_, PavementSection>) -> PyResult<Bound<'py, PyDict>> {
    let t = slab::transformed_section(&sec.0).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("i_slab", t.i_slab)?;
    d.set_item("i_base", t.i_base)?;
    d.set_item("i_tr", t.i_tr)?;
    d.set_item("z_bar", t.z_bar)?;
    d.set_item("h_eq", t.h_eq)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (sec, p=40_000.0, a=0.15))]
fn contact_params<'py>(py: Python<'py>, sec: PyRef<'_, PavementSection>, p: f64, a: f64) -> PyResult<Bound<'py, PyDict>> {
    let c = slab::contact_params(&sec.0, p, a).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("mu", c.mu)?;
    d.set_item("n_pressure", c.n_pressure)?;
    d.set_item("tau_max", c.tau_max)?;
    d.set_item("k_l", c.k_l)?;
    d.set_item("f_slip", c.f_slip)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (h_eq, e_slab, nu, k, load=None, offsets=None))]
fn winkler_plate_basin(
    h_eq: f64,
    e_slab: f64,
    nu: f64,
    k: f64,
    load: Option<PyRef<'_, FwdLoad>>,
    offsets: Option<Vec<f64>>,
) -> PyResult<DeflectionBasin> {
    let offsets = offsets.unwrap_or_else(|| forward::SENSOR_OFFSETS.to_vec());
    let b = forward::winkler_plate_basin(h_eq, e_slab, nu, k, &load_or_default(load), &offsets).map_err(err)?;
    Ok(DeflectionBasin(b))
}

#[pyfunction]
#[pyo3(signature = (h_eq, e_slab, nu, e_subgrade, nu_subgrade, load=None, offsets=None))]
fn halfspace_plate_basin(
    h_eq: f64,
    e_slab: f64,
    nu: f64,
    e_subgrade: f64,
    nu_subgrade: f64,
    load: Option<PyRef<'_, FwdLoad>>,
    offsets: Option<Vec<f64>>,
) -> PyResult<DeflectionBasin> {
    let offsets = offsets.unwrap_or_else(|| forward::SENSOR_OFFSETS.to_vec());
    let load = load_or_default(load);
    let b = forward::halfspace_plate_basin(h_eq, e_slab, nu, e_subgrade, nu_subgrade, &load, &offsets).map_err(err)?;
    Ok(DeflectionBasin(b))
}

/// Surface basin of the full structure. `model` is `"layered"` (default) or `"halfspace"`.
#[pyfunction]
#[pyo3(signature = (sec, e_base=None, load=None, model="layered", subgrade_depth=Some(3.0), offsets=None))]
fn full_structure_basin(
    sec: PyRef<'_, PavementSection>,
    e_base: Option<f64>,
    load: Option<PyRef<'_, FwdLoad>>,
    model: &str,
    subgrade_depth: Option<f64>,
    offsets: Option<Vec<f64>>,
) -> PyResult<DeflectionBasin> {
    let offsets = offsets.unwrap_or_else(|| forward::SENSOR_OFFSETS.to_vec());
    let m = model_from(model, subgrade_depth)?;
    let b = forward::full_structure_basin_at(&sec.0, e_base.unwrap_or(sec.0.e_base), &load_or_default(load), &m, &offsets)
        .map_err(err)?;
    Ok(DeflectionBasin(b))
}

/// AREA-method k from four deflections in inches.
#[pyfunction]
#[pyo3(signature = (d_in, p_lbf=9000.0))]
fn k_from_deflections_in(d_in: [f64; 4], p_lbf: f64) -> PyResult<KValue> {
    Ok(KValue(kvalue::k_from_deflections_in(&d_in, p_lbf, &AreaConstants::default()).map_err(err)?))
}

/// AREA-method k from a basin in metres at the standard sensors.
#[pyfunction]
#[pyo3(signature = (basin, p_lbf=9000.0))]
fn k_from_basin(basin: PyRef<'_, DeflectionBasin>, p_lbf: f64) -> PyResult<KValue> {
    Ok(KValue(kvalue::k_from_basin(&basin.0, p_lbf).map_err(err)?))
}

fn pipeline(load: Option<PyRef<'_, FwdLoad>>, model: &str, subgrade_depth: Option<f64>) -> PyResult<PipelineOptions> {
    Ok(PipelineOptions { model: model_from(model, subgrade_depth)?, load: load_or_default(load), ..Default::default() })
}

/// Modified k with the base modulus given directly (section value by default).
#[pyfunction]
#[pyo3(signature = (sec, e_base=None, load=None, model="layered", subgrade_depth=Some(3.0)))]
fn k_for_base_modulus(
    sec: PyRef<'_, PavementSection>,
    e_base: Option<f64>,
    load: Option<PyRef<'_, FwdLoad>>,
    model: &str,
    subgrade_depth: Option<f64>,
) -> PyResult<KValue> {
    let opts = pipeline(load, model, subgrade_depth)?;
    Ok(KValue(kvalue::k_for_base_modulus(&sec.0, e_base.unwrap_or(sec.0.e_base), &opts).map_err(err)?))
}

/// Modified k with the base modulus from the suction model at `state`.
#[pyfunction]
#[pyo3(signature = (sec, state, coeffs, load=None, model="layered", subgrade_depth=Some(3.0)))]
fn modified_k(
    sec: PyRef<'_, PavementSection>,
    state: PyRef<'_, MoistureState>,
    coeffs: PyRef<'_, MrCoefficients>,
    load: Option<PyRef<'_, FwdLoad>>,
    model: &str,
    subgrade_depth: Option<f64>,
) -> PyResult<KValue> {
    let opts = pipeline(load, model, subgrade_depth)?;
    Ok(KValue(kvalue::modified_k(&sec.0, &state.0, &coeffs.0, &opts).map_err(err)?))
}

#[pyfunction]
fn crack_fraction(fd: f64) -> PyResult<f64> {
    distress::crack_fraction(fd).map_err(err)
}

#[pyfunction]
fn total_crack(bottom_up: f64, top_down: f64) -> PyResult<f64> {
    distress::total_crack(bottom_up, top_down).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (modulus_rupture, stress, c1=2.0, c2=1.22))]
fn allowable_loads(modulus_rupture: f64, stress: f64, c1: f64, c2: f64) -> PyResult<f64> {
    distress::allowable_loads(modulus_rupture, stress, c1, c2).map_err(err)
}

#[pyfunction]
fn differential_energy(loaded: f64, unloaded: f64, k: f64) -> PyResult<f64> {
    distress::differential_energy(&CornerDeflections { loaded, unloaded, k }).map_err(err)
}

/// Cumulative faulting (in) after each month.
#[pyfunction]
#[pyo3(signature = (faultmax, de, c34=0.005))]
fn accumulate_faulting(faultmax: Vec<f64>, de: Vec<f64>, c34: f64) -> PyResult<Vec<f64>> {
    if faultmax.len() != de.len() {
        return Err(PyValueError::new_err("faultmax and de must have the same length"));
    }
    let months: Vec<FaultingMonth> = faultmax.into_iter().zip(de).map(|(faultmax, de)| FaultingMonth { faultmax, de }).collect();
    Ok(distress::accumulate_faulting(&months, c34).map_err(err)?.fault)
}

#[pymodule(name = "slabk")]
fn slabk_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SlabkError", m.py().get_type::<SlabkError>())?;
    m.add("SENSOR_OFFSETS", forward::SENSOR_OFFSETS.to_vec())?;
    m.add_class::<PavementSection>()?;
    m.add_class::<FwdLoad>()?;
    m.add_class::<DeflectionBasin>()?;
    m.add_class::<SwccParams>()?;
    m.add_class::<MoistureState>()?;
    m.add_class::<MrCoefficients>()?;
    m.add_class::<KValue>()?;
    m.add_class::<AnnModel>()?;
    m.add_function(wrap_pyfunction!(load_sections, m)?)?;
    m.add_function(wrap_pyfunction!(mr_nchrp, m)?)?;
    m.add_function(wrap_pyfunction!(mr_me_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(mr_suction, m)?)?;
    m.add_function(wrap_pyfunction!(suction_at_elevation, m)?)?;
    m.add_function(wrap_pyfunction!(transformed_section, m)?)?;
    m.add_function(wrap_pyfunction!(contact_params, m)?)?;
    m.add_function(wrap_pyfunction!(winkler_plate_basin, m)?)?;
    m.add_function(wrap_pyfunction!(halfspace_plate_basin, m)?)?;
    m.add_function(wrap_pyfunction!(full_structure_basin, m)?)?;
    m.add_function(wrap_pyfunction!(k_from_deflections_in, m)?)?;
    m.add_function(wrap_pyfunction!(k_from_basin, m)?)?;
    m.add_function(wrap_pyfunction!(k_for_base_modulus, m)?)?;
    m.add_function(wrap_pyfunction!(modified_k, m)?)?;
    m.add_function(wrap_pyfunction!(crack_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(total_crack, m)?)?;
    m.add_function(wrap_pyfunction!(allowable_loads, m)?)?;
    m.add_function(wrap_pyfunction!(differential_energy, m)?)?;
    m.add_function(wrap_pyfunction!(accumulate_faulting, m)?)?;
    Ok(())
}
