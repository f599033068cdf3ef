//! Python bindings for the `qlam` crate.
//!
//! The module mirrors the Rust API: exact angles under doubling, orbit
//! portraits, the atlas of hyperbolic components, and the truncated dyadic
//! solenoid. Angles print and parse as "num/den" exactly as the CLI does.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qlam::atlas::{internal_address, Atlas};
use qlam::leaf::{invariant_bundle, lu_discrepancy_report, unbounded_count};
use qlam::portrait::{enumerate_nontrivial_portraits, realize_portrait, OrbitPortrait};
use qlam::solenoid::{periodic_point, rho, SolenoidPoint};
use qlam::Angle;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A rational angle in [0, 1), exact under the doubling map.
#[pyclass(name = "Angle", frozen, eq, ord, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PyAngle(Angle);

#[pymethods]
impl PyAngle {
    /// Parse "num/den"; the fraction is reduced mod 1.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        spec.parse().map(PyAngle).map_err(value_err)
    }

    #[staticmethod]
    fn fraction(num: u64, den: u64) -> PyResult<Self> {
        Angle::new(num, den).map(PyAngle).map_err(value_err)
    }

    #[getter]
    fn num(&self) -> BigUint {
        self.0.num().clone()
    }

    #[getter]
    fn den(&self) -> BigUint {
        self.0.den().clone()
    }

    fn double(&self) -> Self {
        PyAngle(self.0.double())
    }

    /// The preimage under doubling in [0, 1/2) for `bit` false, [1/2, 1) for
    /// `bit` true.
    fn halve(&self, bit: bool) -> Self {
        PyAngle(self.0.halve(bit))
    }

    fn add(&self, other: &Self) -> Self {
        PyAngle(self.0.add(&other.0))
    }

    fn sub(&self, other: &Self) -> Self {
        PyAngle(self.0.sub(&other.0))
    }

    fn is_periodic(&self) -> bool {
        self.0.is_periodic()
    }

    fn exact_period(&self) -> Option<u32> {
        self.0.exact_period()
    }

    /// The forward orbit under doubling: (preperiodic prefix, cycle).
    fn orbit(&self) -> (Vec<PyAngle>, Vec<PyAngle>) {
        let orbit = self.0.orbit();
        (
            orbit.prefix.into_iter().map(PyAngle).collect(),
            orbit.cycle.into_iter().map(PyAngle).collect(),
        )
    }

    fn kneading_sequence(&self) -> PyResult<String> {
        qlam::angle::kneading_sequence(&self.0)
            .map(|nu| nu.to_string())
            .map_err(value_err)
    }

    fn internal_address(&self) -> PyResult<Vec<u32>> {
        internal_address(&self.0).map_err(value_err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Angle('{}')", self.0)
    }
}

/// A collection of angle classes closed under doubling, describing the rays
/// landing on one periodic orbit.
#[pyclass(name = "OrbitPortrait", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
struct PyOrbitPortrait(OrbitPortrait);

#[pymethods]
impl PyOrbitPortrait {
    #[new]
    fn new(classes: Vec<Vec<PyAngle>>) -> PyResult<Self> {
        let raw = classes
            .into_iter()
            .map(|c| c.into_iter().map(|a| a.0).collect())
            .collect();
        OrbitPortrait::new(raw).map(PyOrbitPortrait).map_err(value_err)
    }

    /// The portrait whose characteristic arc has the given endpoints.
    #[staticmethod]
    fn realize(theta1: &PyAngle, theta2: &PyAngle) -> PyResult<Self> {
        realize_portrait(&theta1.0, &theta2.0)
            .map(PyOrbitPortrait)
            .map_err(value_err)
    }

    fn classes(&self) -> Vec<Vec<PyAngle>> {
        self.0
            .classes()
            .iter()
            .map(|c| c.iter().cloned().map(PyAngle).collect())
            .collect()
    }

    fn point_period(&self) -> usize {
        self.0.point_period()
    }

    fn ray_period(&self) -> u32 {
        self.0.ray_period()
    }

    fn valence(&self) -> usize {
        self.0.valence()
    }

    /// "trivial", "satellite", or "primitive".
    fn kind(&self) -> String {
        self.0.kind().to_string()
    }

    fn characteristic_arc(&self) -> PyResult<(PyAngle, PyAngle)> {
        let arc = self.0.characteristic_arc().map_err(value_err)?;
        Ok((PyAngle(arc.start().clone()), PyAngle(arc.end().clone())))
    }

    fn critical_arc(&self) -> PyResult<(PyAngle, PyAngle)> {
        let arc = self.0.critical_arc().map_err(value_err)?;
        Ok((PyAngle(arc.start().clone()), PyAngle(arc.end().clone())))
    }

    fn rotation_number(&self) -> PyResult<(u64, u64)> {
        let r = self.0.rotation_number().map_err(value_err)?;
        Ok((*r.numer(), *r.denom()))
    }

    /// Unbounded Fatou components per leaf of the associated leaf cycle.
    fn unbounded_count(&self, is_root: bool) -> u32 {
        unbounded_count(&self.0, is_root, self.0.kind())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("OrbitPortrait({})", self.0)
    }
}

/// One hyperbolic component: root pair, kind, and labelled internal address.
#[pyclass(name = "Component", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
struct PyComponent(qlam::HyperbolicComponent);

#[pymethods]
impl PyComponent {
    #[getter]
    fn period(&self) -> u32 {
        self.0.period
    }

    #[getter]
    fn root_pair(&self) -> (PyAngle, PyAngle) {
        (
            PyAngle(self.0.root_pair.0.clone()),
            PyAngle(self.0.root_pair.1.clone()),
        )
    }

    /// "cardioid", "satellite", or "primitive".
    #[getter]
    fn kind(&self) -> String {
        self.0.kind.to_string()
    }

    #[getter]
    fn rotation(&self) -> Option<(u64, u64)> {
        self.0.rotation.map(|r| (*r.numer(), *r.denom()))
    }

    #[getter]
    fn address(&self) -> String {
        self.0.address.to_string()
    }

    #[getter]
    fn address_periods(&self) -> Vec<u32> {
        self.0.address.periods()
    }

    fn wake(&self) -> PyResult<(PyAngle, PyAngle)> {
        let arc = self.0.wake().map_err(value_err)?;
        Ok((PyAngle(arc.start().clone()), PyAngle(arc.end().clone())))
    }

    fn root_portrait(&self) -> PyResult<PyOrbitPortrait> {
        self.0.root_portrait().map(PyOrbitPortrait).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Component(period={}, root={}, address={})",
            self.0.period, self.0.root_pair.0, self.0.address
        )
    }
}

/// The hyperbolic components of period up to a bound, with wake queries.
#[pyclass(name = "Atlas", frozen)]
struct PyAtlas(Atlas);

#[pymethods]
impl PyAtlas {
    #[staticmethod]
    fn build(max_period: u32) -> PyResult<Self> {
        Atlas::build(max_period).map(PyAtlas).map_err(value_err)
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Atlas::load(path.as_ref()).map(PyAtlas).map_err(value_err)
    }

    fn save(&self, path: &str) -> PyResult<()> {
        self.0.save(path.as_ref()).map_err(value_err)
    }

    #[getter]
    fn max_period(&self) -> u32 {
        self.0.max_period()
    }

    fn components(&self) -> Vec<PyComponent> {
        self.0.components().iter().cloned().map(PyComponent).collect()
    }

    fn per_period_counts(&self) -> std::collections::BTreeMap<u32, usize> {
        self.0.per_period_counts()
    }

    fn find_by_root_angle(&self, theta: &PyAngle) -> Option<PyComponent> {
        self.0.find_by_root_angle(&theta.0).cloned().map(PyComponent)
    }

    /// The smallest component whose wake contains the angle.
    fn enclosing_component(&self, theta: &PyAngle) -> Option<PyComponent> {
        self.0.enclosing_component(&theta.0).cloned().map(PyComponent)
    }

    fn find_by_address(&self, periods: Vec<u32>) -> Vec<PyComponent> {
        self.0
            .find_by_address(&periods)
            .into_iter()
            .cloned()
            .map(PyComponent)
            .collect()
    }

    /// Counts of distinct complete invariant bundles of the component: the
    /// number of irregular points on the associated lamination leaves.
    fn irregular_points(&self, component: &PyComponent) -> PyResult<u32> {
        invariant_bundle(&component.0, &self.0)
            .map(|b| b.irregular_points)
            .map_err(value_err)
    }

    /// Per-cycle (leaf_count, unbounded) profile disagreements between the
    /// address rule and the portrait rule, as
    /// (cycle_period, address_leaves, portrait_leaves) triples.
    fn lu_disagreements(&self, component: &PyComponent) -> PyResult<Vec<(u32, u32, u32)>> {
        let report = lu_discrepancy_report(&component.0, &self.0).map_err(value_err)?;
        Ok(report
            .iter()
            .filter(|s| !s.leaf_count_agree() || !s.unbounded_agree())
            .map(|s| {
                (
                    s.cycle_period,
                    s.address_record.leaf_count,
                    s.portrait_record.leaf_count,
                )
            })
            .collect())
    }

    fn __len__(&self) -> usize {
        self.0.components().len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Atlas(max_period={}, components={})",
            self.0.max_period(),
            self.0.components().len()
        )
    }
}

/// A point of the depth-truncated dyadic solenoid: a base angle plus the
/// halving bits picked at each deeper level.
#[pyclass(name = "SolenoidPoint", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PySolenoidPoint(SolenoidPoint);

#[pymethods]
impl PySolenoidPoint {
    #[new]
    fn new(base: &PyAngle, tail: Vec<bool>) -> Self {
        PySolenoidPoint(SolenoidPoint::new(base.0.clone(), tail))
    }

    #[staticmethod]
    fn unit(depth: usize) -> Self {
        PySolenoidPoint(SolenoidPoint::unit(depth))
    }

    /// The canonical image of the rational num/den under the embedding of
    /// the rationals into the solenoid.
    #[staticmethod]
    fn rho(num: i64, den: i64, depth: usize) -> PyResult<Self> {
        if den == 0 {
            return Err(PyValueError::new_err("zero denominator"));
        }
        let t = BigRational::new(BigInt::from(num), BigInt::from(den));
        Ok(PySolenoidPoint(rho(&t, depth)))
    }

    /// The unique shift-periodic point over a periodic base angle.
    #[staticmethod]
    fn periodic(theta: &PyAngle, depth: usize) -> PyResult<Self> {
        periodic_point(&theta.0, depth)
            .map(PySolenoidPoint)
            .map_err(value_err)
    }

    #[getter]
    fn base(&self) -> PyAngle {
        PyAngle(self.0.base().clone())
    }

    #[getter]
    fn depth(&self) -> usize {
        self.0.depth()
    }

    fn coordinates(&self) -> Vec<PyAngle> {
        self.0.coordinates().into_iter().map(PyAngle).collect()
    }

    fn group_mul(&self, other: &Self) -> PyResult<Self> {
        self.0
            .group_mul(&other.0)
            .map(PySolenoidPoint)
            .map_err(value_err)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.group_mul(other)
    }

    fn inverse(&self) -> Self {
        PySolenoidPoint(self.0.inverse())
    }

    fn adding_machine(&self) -> Self {
        PySolenoidPoint(self.0.adding_machine())
    }

    fn shift(&self) -> Self {
        PySolenoidPoint(self.0.shift())
    }

    fn unshift(&self) -> PyResult<Self> {
        self.0.unshift().map(PySolenoidPoint).map_err(value_err)
    }

    fn truncate(&self, depth: usize) -> Self {
        PySolenoidPoint(self.0.truncate(depth))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("SolenoidPoint({})", self.0)
    }
}

/// Every angle of exact period n under doubling, in circular order.
#[pyfunction]
fn enumerate_periodic_angles(n: u32) -> Vec<PyAngle> {
    qlam::atlas::enumerate_periodic_angles(n)
        .into_iter()
        .map(PyAngle)
        .collect()
}

/// Every nontrivial portrait with ray period up to the bound.
#[pyfunction]
fn nontrivial_portraits(max_ray_period: u32) -> Vec<PyOrbitPortrait> {
    enumerate_nontrivial_portraits(max_ray_period)
        .into_iter()
        .map(PyOrbitPortrait)
        .collect()
}

#[pymodule]
fn qlam_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAngle>()?;
    m.add_class::<PyOrbitPortrait>()?;
    m.add_class::<PyComponent>()?;
    m.add_class::<PyAtlas>()?;
    m.add_class::<PySolenoidPoint>()?;
    m.add_function(wrap_pyfunction!(enumerate_periodic_angles, m)?)?;
    m.add_function(wrap_pyfunction!(nontrivial_portraits, m)?)?;
    Ok(())
}
