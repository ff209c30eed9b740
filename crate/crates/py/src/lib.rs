//! Python bindings. The module mirrors the library surface at the
//! granularity a notebook wants: build a group from a spec string, count
//! irreducible modules, chop, take cohomology, walk a chief series, and run
//! the named verification suites. Values cross the boundary as plain ints,
//! strings and small record classes.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use repgrowth_core::cohom::{h1_dim, lh1_search};
use repgrowth_core::crowns::{chief_series, epi_census, fp1_sup, ChiefFactorKind, TieBreak};
use repgrowth_core::fqlinalg::field_of_order;
use repgrowth_core::gmod::{chop_with_cap, GModule};
use repgrowth_core::groups::{FiniteGroup, GroupSpec};
use repgrowth_core::growth::{series_from_counts, series_product_eval};
use repgrowth_core::repcount::irreducibles;
use repgrowth_core::verify::{run_suite as core_run_suite, VerifyConfig, SUITE_NAMES};
use std::sync::Arc;

fn err(e: repgrowth_core::Error) -> PyErr {
    use repgrowth_core::Error::*;
    match e {
        Invalid(_) | Parse(_) | NotPrime(_) | FieldTooLarge(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// A finite group built from a spec string such as "sym 4", "sl 2 5",
/// "gstar 7 2" or "product (alt 5) (cyclic 3)".
#[pyclass(frozen)]
struct Group {
    inner: Arc<FiniteGroup>,
}

#[pymethods]
impl Group {
    #[new]
    #[pyo3(signature = (spec, cap = 100_000))]
    fn new(spec: &str, cap: usize) -> PyResult<Group> {
        let inner = GroupSpec::parse(spec).map_err(err)?.build(cap).map_err(err)?;
        Ok(Group { inner })
    }

    fn order(&self) -> usize {
        self.inner.order()
    }

    fn summary(&self) -> String {
        self.inner.kind_summary()
    }

    fn conjugacy_class_count(&self) -> usize {
        self.inner.conjugacy_classes().len()
    }

    fn __repr__(&self) -> String {
        format!("Group({}, order={})", self.inner.kind_summary(), self.inner.order())
    }
}

/// Counts of irreducible modules by dimension over one field.
#[pyclass(frozen)]
struct CountTable {
    #[pyo3(get)]
    group: String,
    #[pyo3(get)]
    p: u32,
    #[pyo3(get)]
    k: u32,
    #[pyo3(get)]
    r: Vec<u64>,
    #[pyo3(get)]
    r_star: Vec<u64>,
    #[pyo3(get)]
    cumulative: Vec<u64>,
}

#[pymethods]
impl CountTable {
    fn __repr__(&self) -> String {
        format!(
            "CountTable({} over GF({}^{}), r_star={:?})",
            self.group, self.p, self.k, self.r_star
        )
    }
}

/// One isomorphism type among the composition factors of a module.
#[pyclass(frozen)]
struct Factor {
    #[pyo3(get)]
    dim: usize,
    #[pyo3(get)]
    endo_degree: usize,
    #[pyo3(get)]
    multiplicity: usize,
    #[pyo3(get)]
    faithful: bool,
    #[pyo3(get)]
    absolutely_irreducible: bool,
    /// dim H^1(G, V) over the coefficient field; filled by `cohomology`.
    #[pyo3(get)]
    h1: Option<usize>,
}

#[pymethods]
impl Factor {
    fn __repr__(&self) -> String {
        match self.h1 {
            Some(h1) => format!(
                "Factor(dim={}, e={}, mult={}, h1={})",
                self.dim, self.endo_degree, self.multiplicity, h1
            ),
            None => format!(
                "Factor(dim={}, e={}, mult={})",
                self.dim, self.endo_degree, self.multiplicity
            ),
        }
    }
}

/// One chief factor, top of the series first.
#[pyclass(frozen)]
struct ChiefRow {
    #[pyo3(get)]
    order: usize,
    #[pyo3(get)]
    abelian: bool,
    #[pyo3(get)]
    frattini: bool,
    /// (p, dim) for abelian factors.
    #[pyo3(get)]
    module_shape: Option<(u32, usize)>,
    /// (simple order, copies, acting-group order) for non-abelian factors.
    #[pyo3(get)]
    socle_shape: Option<(usize, usize, usize)>,
}

#[pymethods]
impl ChiefRow {
    fn __repr__(&self) -> String {
        format!(
            "ChiefRow(order={}, abelian={}, frattini={})",
            self.order, self.abelian, self.frattini
        )
    }
}

/// Tabulate r and r* for dimensions 1..=max_dim.
#[pyfunction]
#[pyo3(signature = (group, field, max_dim, seed = 1, chop_cap = 2000))]
fn count_irreducibles(
    group: &Group,
    field: u64,
    max_dim: usize,
    seed: u64,
    chop_cap: usize,
) -> PyResult<CountTable> {
    let f = field_of_order(field).map_err(err)?;
    let gi = irreducibles(&group.inner, &f, max_dim, seed, chop_cap, None).map_err(err)?;
    let t = gi.table;
    Ok(CountTable {
        group: t.group.clone(),
        p: t.p,
        k: t.k,
        cumulative: t.cumulative().expect("chopped tables carry r"),
        r: t.r.expect("chopped tables carry r"),
        r_star: t.r_star,
    })
}

/// Composition factors of the regular module.
#[pyfunction]
#[pyo3(signature = (group, field, seed = 1, chop_cap = 2000))]
fn chop_regular(group: &Group, field: u64, seed: u64, chop_cap: usize) -> PyResult<Vec<Factor>> {
    factor_rows(group, field, seed, chop_cap, false)
}

/// Composition factors of the regular module with dim H^1 per factor.
#[pyfunction]
#[pyo3(signature = (group, field, seed = 1, chop_cap = 2000))]
fn cohomology(group: &Group, field: u64, seed: u64, chop_cap: usize) -> PyResult<Vec<Factor>> {
    factor_rows(group, field, seed, chop_cap, true)
}

fn factor_rows(
    group: &Group,
    field: u64,
    seed: u64,
    chop_cap: usize,
    with_h1: bool,
) -> PyResult<Vec<Factor>> {
    let f = field_of_order(field).map_err(err)?;
    let reg = GModule::regular(group.inner.clone(), f, chop_cap).map_err(err)?;
    let series = chop_with_cap(&reg, seed, chop_cap).map_err(err)?;
    series
        .factors
        .iter()
        .map(|fac| {
            let h1 = if with_h1 {
                Some(h1_dim(&fac.module).map_err(err)?.0)
            } else {
                None
            };
            Ok(Factor {
                dim: fac.descriptor.dim,
                endo_degree: fac.descriptor.endo_degree,
                multiplicity: fac.multiplicity,
                faithful: fac.descriptor.faithful,
                absolutely_irreducible: fac.descriptor.absolutely_irreducible,
                h1,
            })
        })
        .collect()
}

/// Least size of a faithful irreducible module with nonvanishing H^1, as
/// (size, p, k, dim, h1), or None when no module at or below the bound
/// qualifies.
#[pyfunction]
#[pyo3(signature = (group, bound, seed = 1, chop_cap = 2000))]
fn lh1(
    group: &Group,
    bound: u64,
    seed: u64,
    chop_cap: usize,
) -> PyResult<Option<(u64, u32, u32, usize, usize)>> {
    let witness = lh1_search(&group.inner, u128::from(bound), seed, chop_cap).map_err(err)?;
    Ok(witness.map(|w| (w.size as u64, w.p, w.k, w.dim, w.h1)))
}

/// Chief series factors, top of the series first.
#[pyfunction]
#[pyo3(signature = (group, greatest = false))]
fn chief(group: &Group, greatest: bool) -> PyResult<Vec<ChiefRow>> {
    let tie = if greatest { TieBreak::Greatest } else { TieBreak::Least };
    let series = chief_series(&group.inner, tie).map_err(err)?;
    Ok(series
        .factors
        .iter()
        .map(|fac| match &fac.kind {
            ChiefFactorKind::Abelian { descriptor, .. } => ChiefRow {
                order: fac.order,
                abelian: true,
                frattini: fac.frattini,
                module_shape: Some((descriptor.p, descriptor.dim)),
                socle_shape: None,
            },
            ChiefFactorKind::NonAbelian { simple_order, copies, acting } => ChiefRow {
                order: fac.order,
                abelian: false,
                frattini: fac.frattini,
                module_shape: None,
                socle_shape: Some((*simple_order, *copies, acting.order())),
            },
        })
        .collect())
}

/// Finiteness indicator sup of ceil((delta + h')/r), with the witness
/// module's (p, k, dim) when the sup is positive.
#[pyfunction]
#[pyo3(signature = (group, seed = 1, chop_cap = 2000))]
fn crown_sup(
    group: &Group,
    seed: u64,
    chop_cap: usize,
) -> PyResult<(u64, Option<(u32, u32, usize)>)> {
    let (sup, witness) = fp1_sup(&group.inner, seed, chop_cap).map_err(err)?;
    Ok((sup, witness.map(|d| (d.p, d.k, d.dim))))
}

/// Count epimorphisms onto the target, as (epis, conjugacy classes).
#[pyfunction]
#[pyo3(signature = (group, target, budget = 1 << 32))]
fn epimorphisms(group: &Group, target: &Group, budget: u64) -> PyResult<(usize, usize)> {
    let census = epi_census(&group.inner, &target.inner, None, u128::from(budget)).map_err(err)?;
    Ok((census.epis, census.classes))
}

/// Coefficients of the truncated counting series sum r*(n) X^(n-1).
#[pyfunction]
#[pyo3(signature = (group, field, degree, seed = 1, chop_cap = 2000))]
fn series_coefficients(
    group: &Group,
    field: u64,
    degree: usize,
    seed: u64,
    chop_cap: usize,
) -> PyResult<Vec<u64>> {
    let f = field_of_order(field).map_err(err)?;
    let gi = irreducibles(&group.inner, &f, degree, seed, chop_cap, None).map_err(err)?;
    let series = series_from_counts(&gi.table, degree).map_err(err)?;
    Ok((1..=degree).map(|n| series.coeff(n)).collect())
}

/// Exact value of the truncated counting series at x = 1/field^c, as a
/// rational string like "97/64".
#[pyfunction]
#[pyo3(signature = (group, field, degree, c, seed = 1, chop_cap = 2000))]
fn series_eval(
    group: &Group,
    field: u64,
    degree: usize,
    c: u32,
    seed: u64,
    chop_cap: usize,
) -> PyResult<String> {
    let f = field_of_order(field).map_err(err)?;
    let gi = irreducibles(&group.inner, &f, degree, seed, chop_cap, None).map_err(err)?;
    let series = series_from_counts(&gi.table, degree).map_err(err)?;
    Ok(series_product_eval(std::slice::from_ref(&series), degree, field, c).to_string())
}

/// Registered verification suite names, in acceptance order.
#[pyfunction]
fn suite_names() -> Vec<&'static str> {
    SUITE_NAMES.to_vec()
}

/// Run one named verification suite; returns (passed, items) where each
/// item is (label, passed, detail).
#[pyfunction]
#[pyo3(signature = (name, seed = 1, enum_cap = 100_000, chop_cap = 2000))]
fn run_suite(
    name: &str,
    seed: u64,
    enum_cap: usize,
    chop_cap: usize,
) -> PyResult<(bool, Vec<(String, bool, String)>)> {
    let cfg = VerifyConfig { seed, enum_cap, chop_cap };
    let report = core_run_suite(name, &cfg).map_err(err)?;
    let items = report
        .items
        .iter()
        .map(|i| (i.label.clone(), i.passed, i.detail.clone()))
        .collect();
    Ok((report.passed(), items))
}

#[pymodule]
fn _native(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Group>()?;
    m.add_class::<CountTable>()?;
    m.add_class::<Factor>()?;
    m.add_class::<ChiefRow>()?;
    m.add_function(wrap_pyfunction!(count_irreducibles, m)?)?;
    m.add_function(wrap_pyfunction!(chop_regular, m)?)?;
    m.add_function(wrap_pyfunction!(cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(lh1, m)?)?;
    m.add_function(wrap_pyfunction!(chief, m)?)?;
    m.add_function(wrap_pyfunction!(crown_sup, m)?)?;
    m.add_function(wrap_pyfunction!(epimorphisms, m)?)?;
    m.add_function(wrap_pyfunction!(series_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(series_eval, m)?)?;
    m.add_function(wrap_pyfunction!(suite_names, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
