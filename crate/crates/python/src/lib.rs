//! Python bindings: groups, modules, fusion systems, cohomology dimensions
//! and the theorem checks.

use fusionlab::check::corpus::{self, ModuleChoice};
use fusionlab::check::io::{GroupDoc, ModuleDoc};
use fusionlab::check::{self, CheckSpec, Manifest};
use fusionlab::cohom::{CohomologyEngine, GroupCohomology};
use fusionlab::fusion::{CollectionKind, FusionData};
use fusionlab::module::GModule;
use fusionlab::nerve::{FiniteCategory, NerveComplex};
use fusionlab::perm::PermGroup;
use fusionlab::stable::{stable_subspaces, Family, PairMode};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use std::sync::Arc;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn collection(name: &str) -> PyResult<CollectionKind> {
    name.parse().map_err(err)
}

/// A finite permutation group.
#[pyclass(frozen, module = "fusionlab_py")]
struct Group {
    inner: Arc<PermGroup>,
    doc: GroupDoc,
}

#[pymethods]
impl Group {
    /// A group name (S4, A4, D8, Q8, SL(2,3), C6, ...) or a JSON group document.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        let doc = if spec.trim_start().starts_with('{') {
            serde_json::from_str(spec).map_err(err)?
        } else {
            GroupDoc::named(spec)
        };
        let inner = Arc::new(doc.build().map_err(err)?);
        Ok(Group { inner, doc })
    }

    /// Generators in cycle notation on points `1..=degree`.
    #[staticmethod]
    fn from_generators(degree: usize, generators: Vec<Vec<Vec<usize>>>) -> PyResult<Self> {
        let doc = GroupDoc::Generators { degree, generators };
        let inner = Arc::new(doc.build().map_err(err)?);
        Ok(Group { inner, doc })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.doc).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Group(order={}, degree={})", self.inner.order(), self.inner.degree())
    }
}

/// A finite-dimensional F_p[G]-module.
#[pyclass(frozen, module = "fusionlab_py")]
struct Module {
    inner: GModule,
}

#[pymethods]
impl Module {
    #[staticmethod]
    #[pyo3(signature = (group, p, dim = 1))]
    fn trivial(group: &Group, p: u32, dim: usize) -> Self {
        Module { inner: GModule::trivial(group.inner.clone(), p, dim) }
    }

    #[staticmethod]
    fn sign(group: &Group, p: u32) -> Self {
        Module { inner: GModule::sign(group.inner.clone(), p) }
    }

    /// A JSON module document over `group`.
    #[staticmethod]
    fn from_json(group: &Group, p: u32, text: &str) -> PyResult<Self> {
        let doc: ModuleDoc = serde_json::from_str(text).map_err(err)?;
        Ok(Module { inner: doc.build(group.inner.clone(), p).map_err(err)? })
    }

    /// The corpus module for an instance such as "S4@2".
    #[staticmethod]
    #[pyo3(signature = (instance, twisted = false))]
    fn corpus(instance: &str, twisted: bool) -> PyResult<Self> {
        let inst = corpus::instance(instance).map_err(err)?;
        let which = if twisted { ModuleChoice::Twisted } else { ModuleChoice::Trivial };
        Ok(Module { inner: inst.module(which) })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn prime(&self) -> u32 {
        self.inner.p()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&ModuleDoc::from_module(&self.inner)).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Module(dim={}, p={})", self.inner.dim(), self.inner.p())
    }
}

/// The fusion system of a group on a Sylow p-subgroup.
#[pyclass(frozen, module = "fusionlab_py")]
struct FusionSystem {
    inner: FusionData,
}

#[pymethods]
impl FusionSystem {
    #[new]
    fn new(group: &Group, p: u32) -> PyResult<Self> {
        Ok(FusionSystem { inner: FusionData::build(group.inner.clone(), p).map_err(err)? })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn sylow_order(&self) -> usize {
        self.inner.sylow().order()
    }

    #[getter]
    fn num_subgroups(&self) -> usize {
        self.inner.subgroups().len()
    }

    #[getter]
    fn num_classes(&self) -> usize {
        self.inner.classes().len()
    }

    fn is_constrained(&self) -> bool {
        self.inner.is_constrained()
    }

    /// Orders of the fully normalized essential class representatives.
    fn essential_orders(&self) -> Vec<usize> {
        self.inner.essential_subgroups().into_iter().map(|i| self.inner.subgroup(i).order()).collect()
    }

    /// Per subgroup: order, class and the classification flags.
    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let rows: Vec<_> = (0..self.inner.subgroups().len())
            .map(|i| {
                serde_json::json!({
                    "order": self.inner.subgroup(i).order(),
                    "class": self.inner.class_of(i),
                    "flags": self.inner.flags(i),
                })
            })
            .collect();
        to_py(py, &rows)
    }

    /// Number of subgroups in a collection: all, centric, cr, constrained.
    fn collection_size(&self, kind: &str) -> PyResult<usize> {
        Ok(self.inner.collection(collection(kind)?).len())
    }

    /// Dimensions of the stable elements for degrees `0..=n`. `family` is a
    /// collection name or "grodal".
    #[pyo3(signature = (module, n, family = "centric", exhaustive = false))]
    fn stable_dims(&self, py: Python<'_>, module: &Module, n: usize, family: &str, exhaustive: bool) -> PyResult<Vec<usize>> {
        let fam = match family {
            "grodal" => Family::Subgroups(self.inner.grodal_family(&module.inner)),
            k => Family::Collection(collection(k)?),
        };
        let mode = if exhaustive { PairMode::Exhaustive } else { PairMode::Reduced };
        py.detach(|| {
            let e = CohomologyEngine::with_sylow(&module.inner, self.inner.sylow(), n);
            stable_subspaces(&self.inner, &e, n, &fam, mode).map(|v| v.iter().map(|s| s.dim()).collect())
        })
        .map_err(err)
    }

    /// Dimensions of the nerve cohomology of the transporter or linking
    /// category over a collection, degrees `0..=n`.
    #[pyo3(signature = (module, n, collection = "centric", category = "transporter"))]
    fn nerve_dims(
        &self,
        py: Python<'_>,
        module: &Module,
        n: usize,
        collection: &str,
        category: &str,
    ) -> PyResult<Vec<usize>> {
        let coll = self.inner.collection(self::collection(collection)?);
        let linking = match category {
            "transporter" => false,
            "linking" => true,
            other => return Err(PyValueError::new_err(format!("unknown category {other:?}"))),
        };
        py.detach(|| {
            let cat = if linking {
                FiniteCategory::linking(&self.inner, &coll)?
            } else {
                FiniteCategory::transporter(&self.inner, &coll)?
            };
            NerveComplex::new(&cat, &module.inner, n).map(|nc| nc.dims().to_vec())
        })
        .map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("FusionSystem(p={}, |S|={})", self.inner.p(), self.inner.sylow().order())
    }
}

/// Dimensions of `H^k(G, M)` for `k = 0..=n`.
#[pyfunction]
fn group_cohomology(py: Python<'_>, module: &Module, n: usize) -> Vec<usize> {
    py.detach(|| GroupCohomology::new(&module.inner, n).dims().to_vec())
}

/// Names of the built-in corpus instances.
#[pyfunction]
fn corpus_instances() -> Vec<&'static str> {
    corpus::INSTANCE_NAMES.to_vec()
}

/// Names of the theorem checks.
#[pyfunction]
fn check_names() -> Vec<&'static str> {
    check::CHECK_NAMES.to_vec()
}

/// Runs one check on a corpus instance and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (name, instance, twisted = false, max_degree = check::DEFAULT_DEGREE))]
fn run_check<'py>(py: Python<'py>, name: &str, instance: &str, twisted: bool, max_degree: usize) -> PyResult<Bound<'py, PyAny>> {
    let which = if twisted { ModuleChoice::Twisted } else { ModuleChoice::Trivial };
    let spec = CheckSpec::corpus(name, instance, which, max_degree);
    let report = py.detach(|| check::run_check(name, &spec)).map_err(err)?;
    to_py(py, &report)
}

/// Runs one check from a JSON check spec and returns the report as a dict.
#[pyfunction]
fn run_check_json<'py>(py: Python<'py>, spec: &str) -> PyResult<Bound<'py, PyAny>> {
    let mut spec: CheckSpec = serde_json::from_str(spec).map_err(err)?;
    spec.load_files(std::path::Path::new(".")).map_err(err)?;
    let name = spec.check.clone();
    let report = py.detach(|| check::run_check(&name, &spec)).map_err(err)?;
    to_py(py, &report)
}

/// Runs a manifest given as JSON text, or a builtin manifest by name.
#[pyfunction]
fn run_suite<'py>(py: Python<'py>, manifest: &str) -> PyResult<Bound<'py, PyAny>> {
    let m = match Manifest::builtin(manifest) {
        Some(m) => m,
        None => serde_json::from_str(manifest).map_err(err)?,
    };
    let report = py.detach(|| check::run_suite(&m)).map_err(err)?;
    to_py(py, &report)
}

#[pymodule]
fn fusionlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Group>()?;
    m.add_class::<Module>()?;
    m.add_class::<FusionSystem>()?;
    m.add_function(wrap_pyfunction!(group_cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_instances, m)?)?;
    m.add_function(wrap_pyfunction!(check_names, m)?)?;
    m.add_function(wrap_pyfunction!(run_check, m)?)?;
    m.add_function(wrap_pyfunction!(run_check_json, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
