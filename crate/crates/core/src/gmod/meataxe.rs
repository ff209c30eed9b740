use super::module::{intertwiners, left_kernel, rref_rows, GModule, DEFAULT_CHOP_CAP};
use crate::fqlinalg::{spin, Matrix};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random algebra elements tried before switching to the deterministic
/// enumeration of the enveloping algebra.
const RANDOM_ATTEMPTS: usize = 200;
/// Deterministic algebra elements tried before the projective sweep.
const ENUM_ATTEMPTS: usize = 20_000;
/// The projective sweep spins every normalized vector; feasible only when
/// q^dim stays below this bound.
const PROJECTIVE_LIMIT: u128 = 1 << 22;

/// Isomorphism-type invariants of an irreducible module. `fingerprint` holds
/// the traces of the action at the canonical conjugacy-class representatives
/// of the acting group, so equal types always agree on it; `endo_degree` is
/// the F-dimension e of the endomorphism field GF(q^e).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IrreducibleDescriptor {
    pub dim: usize,
    pub p: u32,
    pub k: u32,
    pub endo_degree: usize,
    pub absolutely_irreducible: bool,
    pub fingerprint: Vec<u16>,
    pub faithful: bool,
    pub central_character: Option<u16>,
}

impl IrreducibleDescriptor {
    /// Canonical ordering key: dimension, then endomorphism degree, then
    /// fingerprint.
    pub fn sort_key(&self) -> (usize, usize, Vec<u16>) {
        (self.dim, self.endo_degree, self.fingerprint.clone())
    }
}

/// One isomorphism type among the composition factors, with a concrete
/// representative module and its multiplicity.
#[derive(Clone)]
pub struct ChopFactor {
    pub module: GModule,
    pub descriptor: IrreducibleDescriptor,
    pub multiplicity: usize,
}

/// Composition factors of a module, grouped by isomorphism type and sorted
/// by the canonical descriptor key.
#[derive(Clone)]
pub struct CompositionSeries {
    pub factors: Vec<ChopFactor>,
}

impl CompositionSeries {
    /// Sum of multiplicity times dimension; equals the chopped dimension.
    pub fn total_dim(&self) -> usize {
        self.factors.iter().map(|f| f.multiplicity * f.descriptor.dim).sum()
    }

    pub fn num_constituents(&self) -> usize {
        self.factors.iter().map(|f| f.multiplicity).sum()
    }

    pub fn dims_with_multiplicity(&self) -> Vec<(usize, usize)> {
        self.factors.iter().map(|f| (f.descriptor.dim, f.multiplicity)).collect()
    }
}

enum Verdict {
    Split(Matrix),
    Irreducible,
}

/// Composition series with the default dimension cap.
pub fn chop(m: &GModule, seed: u64) -> Result<CompositionSeries> {
    chop_with_cap(m, seed, DEFAULT_CHOP_CAP)
}

/// Split `m` into composition factors. Deterministic for a fixed seed, and
/// the resulting descriptor list is seed-independent because factors are
/// grouped up to isomorphism and canonically sorted.
pub fn chop_with_cap(m: &GModule, seed: u64, cap: usize) -> Result<CompositionSeries> {
    if m.dim() > cap {
        return Err(Error::ChopCapExceeded { dim: m.dim(), cap });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut leaves: Vec<GModule> = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(cur) = stack.pop() {
        if cur.dim() == 0 {
            continue;
        }
        match split_or_certify(&cur, &mut rng)? {
            Verdict::Split(basis) => {
                stack.push(cur.submodule(&basis)?);
                stack.push(cur.quotient(&basis)?);
            }
            Verdict::Irreducible => leaves.push(cur),
        }
    }
    group_leaves(leaves)
}

/// Group irreducible leaves into isomorphism classes. Descriptor data is the
/// first filter; collisions are confirmed with an intertwiner solve.
fn group_leaves(leaves: Vec<GModule>) -> Result<CompositionSeries> {
    let mut factors: Vec<ChopFactor> = Vec::new();
    'next: for leaf in leaves {
        let desc = descriptor(&leaf)?;
        for fac in &mut factors {
            if fac.descriptor == desc && intertwiners(&fac.module, &leaf)?.nrows() > 0 {
                fac.multiplicity += 1;
                continue 'next;
            }
        }
        factors.push(ChopFactor { module: leaf, descriptor: desc, multiplicity: 1 });
    }
    factors.sort_by_key(|f| f.descriptor.sort_key());
    Ok(CompositionSeries { factors })
}

/// Descriptor of an irreducible module (the irreducibility is the caller's
/// responsibility; chop leaves are certified).
pub fn descriptor(m: &GModule) -> Result<IrreducibleDescriptor> {
    let endo_degree = intertwiners(m, m)?.nrows();
    let fingerprint =
        m.group().class_reps().iter().map(|&r| m.element_action(r).trace()).collect();
    Ok(IrreducibleDescriptor {
        dim: m.dim(),
        p: m.field().p,
        k: m.field().k,
        endo_degree,
        absolutely_irreducible: endo_degree == 1,
        fingerprint,
        faithful: m.is_faithful()?,
        central_character: None,
    })
}

/// Irreducibility test used by `iso_test`; runs the same certification as
/// chop with a fixed seed.
pub fn is_irreducible(m: &GModule) -> Result<bool> {
    if m.dim() == 0 {
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    Ok(matches!(split_or_certify(m, &mut rng)?, Verdict::Irreducible))
}

/// Whether two irreducible modules of the same group over the same field are
/// isomorphic. Errors if an input is reducible.
pub fn iso_test(a: &GModule, b: &GModule) -> Result<bool> {
    if !is_irreducible(a)? || !is_irreducible(b)? {
        return Err(Error::Invalid("iso_test requires irreducible inputs".into()));
    }
    if a.dim() != b.dim() {
        return Ok(false);
    }
    Ok(intertwiners(a, b)?.nrows() > 0)
}

/// Restriction of `w` to a normal subgroup: by Clifford theory it is
/// semisimple with G-conjugate factors of a common multiplicity.
pub struct CliffordRestriction {
    /// One composition factor of the restriction (canonically least).
    pub factor: GModule,
    /// Common multiplicity of each factor.
    pub multiplicity: usize,
    /// Number of distinct isomorphism types among the factors.
    pub num_conjugates: usize,
}

pub fn clifford_restriction(
    w: &GModule,
    sub: &[u32],
    seed: u64,
    cap: usize,
) -> Result<CliffordRestriction> {
    if !w.group().is_normal(sub) {
        return Err(Error::Invalid("clifford restriction needs a normal subgroup".into()));
    }
    let (res, _) = w.restrict(sub, w.group().order())?;
    let series = chop_with_cap(&res, seed, cap)?;
    let first = series.factors.first().ok_or_else(|| {
        Error::Invalid("restriction of a nonzero module has factors".into())
    })?;
    let (dim, mult) = (first.descriptor.dim, first.multiplicity);
    if series.factors.iter().any(|f| f.descriptor.dim != dim || f.multiplicity != mult) {
        return Err(Error::Invalid(
            "restriction factors are not uniform; subgroup is not normal in the action".into(),
        ));
    }
    let t = series.factors.len();
    debug_assert_eq!(w.dim(), t * mult * dim);
    Ok(CliffordRestriction {
        factor: first.module.clone(),
        multiplicity: mult,
        num_conjugates: t,
    })
}

/// Either a proper nonzero invariant subspace (reduced echelon rows) or a
/// certificate of irreducibility.
///
/// The certificate follows the standard one-sided criterion: for an
/// algebra element theta whose characteristic polynomial has an irreducible
/// factor f of multiplicity one, the kernel of f(theta) is a simple
/// F[theta]-module, so if it meets a proper submodule U it lies inside U and
/// any kernel vector spins properly. If instead the kernel misses every U,
/// then f divides the characteristic polynomial on some quotient and the
/// transposed spin of a vector of the right kernel stays inside the
/// annihilator of a submodule. Both spins filling the space therefore
/// certifies irreducibility, and a proper transposed spin yields a submodule
/// as its orthogonal complement.
fn split_or_certify(m: &GModule, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let d = m.dim();
    let f = m.field().clone();
    if d == 1 {
        return Ok(Verdict::Irreducible);
    }
    // Standard basis vectors split permutation-flavored modules immediately.
    for i in 0..d {
        let mut e = vec![0u16; d];
        e[i] = 1;
        let s = spin(&f, d, &[e], m.actions());
        if s.nrows() < d {
            return Ok(Verdict::Split(s));
        }
    }
    let transposed: Vec<Matrix> = m.actions().iter().map(Matrix::transpose).collect();
    let mut algebra: Option<AlgebraEnum> = None;
    for attempt in 0..RANDOM_ATTEMPTS + ENUM_ATTEMPTS {
        let theta = if attempt < RANDOM_ATTEMPTS {
            random_theta(m, rng)
        } else {
            let alg = algebra.get_or_insert_with(|| AlgebraEnum::new(m));
            match alg.theta(attempt - RANDOM_ATTEMPTS) {
                Some(t) => t,
                None => break,
            }
        };
        let facs = theta.charpoly().factor(rng);
        for (fac, mult) in &facs {
            let w = theta.poly_eval(fac);
            let lk = left_kernel(&w);
            for r in 0..lk.nrows() {
                let s = spin(&f, d, &[lk.row(r)], m.actions());
                if s.nrows() < d {
                    return Ok(Verdict::Split(s));
                }
            }
            if *mult == 1 {
                // Every kernel vector spins to the whole space, so the dual
                // side decides.
                let rk = w.rref().nullspace;
                let st = spin(&f, d, &[rk.row(0)], &transposed);
                if st.nrows() < d {
                    let compl = rref_rows(&st.rref().nullspace);
                    return Ok(Verdict::Split(compl));
                }
                return Ok(Verdict::Irreducible);
            }
        }
    }
    // Projective sweep: spin one representative of every line of F^d. A
    // proper submodule contains a nonzero vector, so this decides exactly.
    let q = u128::from(f.q);
    if q.checked_pow(d as u32).is_none_or(|n| n > PROJECTIVE_LIMIT) {
        return Err(Error::Invalid(format!(
            "chop undecided after {} algebra elements on a {}-dimensional module",
            RANDOM_ATTEMPTS + ENUM_ATTEMPTS,
            d
        )));
    }
    let mut v = vec![0u16; d];
    while next_normalized(&f, &mut v) {
        let s = spin(&f, d, &[v.clone()], m.actions());
        if s.nrows() < d {
            return Ok(Verdict::Split(s));
        }
    }
    Ok(Verdict::Irreducible)
}

/// Random element of the enveloping algebra: a short sum of short words in
/// the generator actions with nonzero coefficients.
fn random_theta(m: &GModule, rng: &mut ChaCha8Rng) -> Matrix {
    let d = m.dim();
    let f = m.field().clone();
    let nslots = m.actions().len();
    let mut theta = Matrix::zero_unpacked(f.clone(), d, d);
    let words = rng.random_range(1..=3);
    for _ in 0..words {
        let mut w = Matrix::identity(f.clone(), d);
        for _ in 0..rng.random_range(1..=12) {
            w = w.mul(m.action(rng.random_range(0..nslots)));
        }
        let c = rng.random_range(1..f.q) as u16;
        for i in 0..d {
            for j in 0..d {
                let add = f.mul(c, w.get(i, j));
                if add != 0 {
                    theta.set(i, j, f.add(theta.get(i, j), add));
                }
            }
        }
    }
    theta
}

/// Deterministic enumeration of the enveloping algebra: a basis is computed
/// by closing the identity under right multiplication by the generator
/// actions inside the d^2-dimensional matrix space, and candidate elements
/// walk all nonzero coefficient vectors over that basis in base-q order.
struct AlgebraEnum {
    basis: Vec<Matrix>,
    field: crate::fqlinalg::FieldRef,
    dim: usize,
}

impl AlgebraEnum {
    fn new(m: &GModule) -> AlgebraEnum {
        let d = m.dim();
        let f = m.field().clone();
        let mut rows: Vec<Vec<u16>> = Vec::new();
        let mut mats: Vec<Matrix> = Vec::new();
        let mut queue: Vec<Matrix> = vec![Matrix::identity(f.clone(), d)];
        while let Some(w) = queue.pop() {
            let flat: Vec<u16> =
                (0..d).flat_map(|i| (0..d).map(|j| w.get(i, j)).collect::<Vec<_>>()).collect();
            if in_span(&f, &rows, &flat) {
                continue;
            }
            rows.push(flat);
            reechelon(&f, &mut rows);
            mats.push(w.clone());
            for a in m.actions() {
                queue.push(w.mul(a));
            }
        }
        AlgebraEnum { basis: mats, field: f, dim: d }
    }

    /// The idx-th nonzero coefficient vector (little-endian base q digits of
    /// idx + 1) applied to the basis; None once all combinations are spent.
    fn theta(&self, idx: usize) -> Option<Matrix> {
        let f = &self.field;
        let q = f.q as u128;
        let mut code = idx as u128 + 1;
        if q.checked_pow(self.basis.len() as u32).is_some_and(|n| code >= n) {
            return None;
        }
        let mut theta = Matrix::zero_unpacked(f.clone(), self.dim, self.dim);
        let mut b = 0;
        while code > 0 {
            let digit = (code % q) as u16;
            code /= q;
            if digit != 0 {
                let w = &self.basis[b];
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        let add = f.mul(digit, w.get(i, j));
                        if add != 0 {
                            theta.set(i, j, f.add(theta.get(i, j), add));
                        }
                    }
                }
            }
            b += 1;
        }
        Some(theta)
    }
}

/// Membership test against a running echelon list of flattened matrices.
fn in_span(f: &crate::fqlinalg::FieldRef, rows: &[Vec<u16>], v: &[u16]) -> bool {
    let mut rem = v.to_vec();
    for row in rows {
        let p = row.iter().position(|&x| x != 0).expect("echelon rows are nonzero");
        let c = rem[p];
        if c != 0 {
            for (x, y) in rem.iter_mut().zip(row) {
                *x = f.sub(*x, f.mul(c, *y));
            }
        }
    }
    rem.iter().all(|&x| x == 0)
}

/// Keep the span rows in echelon form (each begins with a unit pivot and is
/// reduced against the others), so `in_span` stays a single sweep.
fn reechelon(f: &crate::fqlinalg::FieldRef, rows: &mut Vec<Vec<u16>>) {
    let v = rows.pop().expect("just pushed");
    let mut rem = v;
    for row in rows.iter() {
        let p = row.iter().position(|&x| x != 0).expect("echelon rows");
        let c = rem[p];
        if c != 0 {
            for (x, y) in rem.iter_mut().zip(row) {
                *x = f.sub(*x, f.mul(c, *y));
            }
        }
    }
    let p = rem.iter().position(|&x| x != 0).expect("caller checked independence");
    let inv = f.inv(rem[p]);
    if inv != 1 {
        for x in rem.iter_mut() {
            *x = f.mul(*x, inv);
        }
    }
    for row in rows.iter_mut() {
        let c = row[p];
        if c != 0 {
            for (x, y) in row.iter_mut().zip(&rem) {
                *x = f.sub(*x, f.mul(c, *y));
            }
        }
    }
    let pos = rows.iter().position(|r| {
        r.iter().position(|&x| x != 0).expect("echelon rows") > p
    });
    match pos {
        Some(i) => rows.insert(i, rem),
        None => rows.push(rem),
    }
}

/// Advance to the next vector whose first nonzero entry is 1, covering one
/// representative per line. Starts from zero; returns false when exhausted.
fn next_normalized(f: &crate::fqlinalg::FieldRef, v: &mut [u16]) -> bool {
    loop {
        // Increment as a base-q counter.
        let mut i = 0;
        loop {
            if i == v.len() {
                return false;
            }
            let next = v[i] as u32 + 1;
            if next < f.q {
                v[i] = next as u16;
                break;
            }
            v[i] = 0;
            i += 1;
        }
        if v.iter().rev().find(|&&x| x != 0) == Some(&1) {
            return true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fqlinalg::field_make;
    use crate::groups::{catalog, Element, FiniteGroup, GroupSpec};
    use std::sync::Arc;

    /// Wedderburn count over the distinct factor classes: sum of dim^2 / e.
    fn wedderburn_sum(series: &CompositionSeries) -> usize {
        series
            .factors
            .iter()
            .map(|f| f.descriptor.dim * f.descriptor.dim / f.descriptor.endo_degree)
            .sum()
    }

    fn regular_series(g: &Arc<FiniteGroup>, p: u32, k: u32, seed: u64) -> CompositionSeries {
        let f = field_make(p, k).unwrap();
        let m = GModule::regular(g.clone(), f, DEFAULT_CHOP_CAP).unwrap();
        chop(&m, seed).unwrap()
    }

    fn build(s: &str) -> Arc<FiniteGroup> {
        GroupSpec::parse(s).unwrap().build(crate::groups::DEFAULT_ENUM_CAP).unwrap()
    }

    fn natural(g: &Arc<FiniteGroup>) -> GModule {
        let f = match g.element(0) {
            Element::Mat(m) => m.field().clone(),
            _ => panic!("matrix group"),
        };
        GModule::new(
            g.clone(),
            f,
            (0..g.num_gens())
                .map(|s| match g.element(g.gen_index(s)) {
                    Element::Mat(a) => a.clone(),
                    _ => unreachable!(),
                })
                .collect(),
        )
        .unwrap()
    }

    /// Brute-force irreducibility: spin every line of F^d. Exact for any
    /// module small enough to sweep.
    fn oracle_irreducible(m: &GModule) -> bool {
        let d = m.dim();
        let f = m.field().clone();
        let mut v = vec![0u16; d];
        while next_normalized(&f, &mut v) {
            if spin(&f, d, &[v.clone()], m.actions()).nrows() < d {
                return false;
            }
        }
        d > 0
    }

    #[test]
    fn group_algebra_of_c3_over_gf2_has_the_frozen_factors() {
        let g = build("cyclic 3");
        let f = field_make(2, 1).unwrap();
        let m = GModule::regular(g, f, DEFAULT_CHOP_CAP).unwrap();
        let series = chop(&m, 1).unwrap();
        assert_eq!(series.factors.len(), 2);
        let triv = &series.factors[0];
        assert_eq!((triv.descriptor.dim, triv.multiplicity), (1, 1));
        assert!(triv.descriptor.absolutely_irreducible);
        let quad = &series.factors[1];
        assert_eq!((quad.descriptor.dim, quad.multiplicity), (2, 1));
        assert_eq!(quad.descriptor.endo_degree, 2);
        assert!(!quad.descriptor.absolutely_irreducible);
        assert_eq!(series.total_dim(), 3);
    }

    #[test]
    fn chop_conserves_dimension_and_is_seed_independent() {
        let g = build("sym 4");
        let f = field_make(2, 1).unwrap();
        let m = GModule::regular(g, f, DEFAULT_CHOP_CAP).unwrap();
        let reference = chop(&m, 0).unwrap();
        assert_eq!(reference.total_dim(), 24);
        let key: Vec<_> = reference
            .factors
            .iter()
            .map(|fa| (fa.descriptor.clone(), fa.multiplicity))
            .collect();
        for seed in 1..10 {
            let other = chop(&m, seed).unwrap();
            let other_key: Vec<_> = other
                .factors
                .iter()
                .map(|fa| (fa.descriptor.clone(), fa.multiplicity))
                .collect();
            assert_eq!(key, other_key, "seed {seed} changed the factor list");
        }
    }

    #[test]
    fn certification_agrees_with_the_projective_oracle_on_small_modules() {
        let f2 = field_make(2, 1).unwrap();
        let f3 = field_make(3, 1).unwrap();
        let mut cases: Vec<GModule> = Vec::new();
        let s4 = build("sym 4");
        cases.push(GModule::permutation(s4.clone(), f2.clone()).unwrap());
        cases.push(GModule::permutation(s4, f3.clone()).unwrap());
        cases.push(GModule::fully_deleted_permutation(5, 2, 10_000).unwrap());
        cases.push(GModule::fully_deleted_permutation(5, 3, 10_000).unwrap());
        let c3 = build("cyclic 3");
        cases.push(GModule::regular(c3, f2.clone(), DEFAULT_CHOP_CAP).unwrap());
        let s3 = build("sym 3");
        let perm3 = GModule::permutation(s3, f3).unwrap();
        cases.push(perm3.tensor(&perm3).unwrap());
        for m in &cases {
            assert!(m.dim() <= 9);
            assert_eq!(
                is_irreducible(m).unwrap(),
                oracle_irreducible(m),
                "certification disagrees with sweep on dim {}",
                m.dim()
            );
        }
    }

    #[test]
    fn direct_sum_doubles_multiplicity() {
        let g = catalog::sl(2, 3, 10_000).unwrap();
        let v = natural(&g);
        assert!(is_irreducible(&v).unwrap());
        let sum = v.direct_sum(&v).unwrap();
        let series = chop(&sum, 7).unwrap();
        assert_eq!(series.factors.len(), 1);
        assert_eq!(series.factors[0].multiplicity, 2);
        assert_eq!(series.factors[0].descriptor.dim, 2);
    }

    #[test]
    fn regular_module_of_sl3_f2_has_factor_dims_1_3_3_8() {
        let g = catalog::sl(3, 2, 10_000).unwrap();
        let f = field_make(2, 1).unwrap();
        let m = GModule::regular(g, f, DEFAULT_CHOP_CAP).unwrap();
        let series = chop(&m, 11).unwrap();
        let dims: Vec<usize> = series.factors.iter().map(|f| f.descriptor.dim).collect();
        assert_eq!(dims, vec![1, 3, 3, 8]);
        assert!(series.factors.iter().all(|f| f.descriptor.absolutely_irreducible));
        assert_eq!(series.total_dim(), 168);
        // The two 3-dimensional classes are dual, not isomorphic.
        let a = &series.factors[1].module;
        let b = &series.factors[2].module;
        assert!(!iso_test(a, b).unwrap());
        assert!(iso_test(&a.dual(), b).unwrap());
    }

    #[test]
    fn wedderburn_sum_matches_group_order_in_coprime_characteristic() {
        // GF(7)[A5] is semisimple; the sum of dim^2 / e over the distinct
        // classes recovers |A5| = 60.
        let a5 = build("alt 5");
        let series = regular_series(&a5, 7, 1, 3);
        assert_eq!(wedderburn_sum(&series), 60);
        // GF(2)[C5]: one trivial factor and one 4-dimensional with e = 4.
        let c5 = build("cyclic 5");
        let series = regular_series(&c5, 2, 1, 3);
        assert_eq!(wedderburn_sum(&series), 5);
        assert_eq!(
            series.factors.iter().map(|f| f.descriptor.endo_degree).collect::<Vec<_>>(),
            vec![1, 4]
        );
    }

    #[test]
    fn distinct_classes_count_p_regular_classes_via_endo_degrees() {
        // Sum of endo degrees over distinct factor classes of the regular
        // module equals the number of p-regular conjugacy classes.
        for (spec, p) in [("alt 5", 2u32), ("sym 3", 3), ("cyclic 5", 2), ("sym 4", 2)] {
            let g = build(spec);
            let series = regular_series(&g, p, 1, 5);
            let endo_sum: usize =
                series.factors.iter().map(|f| f.descriptor.endo_degree).sum();
            assert_eq!(
                endo_sum,
                g.p_regular_reps(p).len(),
                "{spec} over GF({p})"
            );
        }
    }

    #[test]
    fn a5_mod_2_fuses_the_conjugate_pair_into_an_endo_degree_2_class() {
        let a5 = build("alt 5");
        let series = regular_series(&a5, 2, 1, 9);
        let shapes: Vec<(usize, usize)> = series
            .factors
            .iter()
            .map(|f| (f.descriptor.dim, f.descriptor.endo_degree))
            .collect();
        assert_eq!(shapes, vec![(1, 1), (4, 1), (4, 2)]);
    }

    #[test]
    fn fully_deleted_permutation_dims() {
        let m55 = GModule::fully_deleted_permutation(5, 5, 10_000).unwrap();
        assert_eq!(m55.dim(), 3);
        assert!(is_irreducible(&m55).unwrap());
        let m52 = GModule::fully_deleted_permutation(5, 2, 10_000).unwrap();
        assert_eq!(m52.dim(), 4);
        assert!(is_irreducible(&m52).unwrap());
        let m63 = GModule::fully_deleted_permutation(6, 3, 10_000).unwrap();
        assert_eq!(m63.dim(), 4);
    }

    #[test]
    fn induction_from_the_borel_of_sl2_f5_over_gf2_has_dimension_6() {
        let g = catalog::sl(2, 5, 10_000).unwrap();
        let f5 = field_make(5, 1).unwrap();
        let diag = g
            .find_element(&Element::Mat(Matrix::from_rows(
                f5.clone(),
                &[vec![2, 0], vec![0, 3]],
            )))
            .unwrap();
        let upper = g
            .find_element(&Element::Mat(Matrix::from_rows(f5, &[vec![1, 1], vec![0, 1]])))
            .unwrap();
        let borel = g.subgroup_closure(&[diag, upper]);
        assert_eq!(borel.len(), 20);
        let (b, embed) = g.subgroup_as_group(&borel, 10_000).unwrap();
        let triv = GModule::trivial(b, field_make(2, 1).unwrap());
        let ind = triv.induce(&g, &embed).unwrap();
        assert_eq!(ind.dim(), 6);
        let series = chop(&ind, 2).unwrap();
        assert_eq!(series.total_dim(), 6);
    }

    #[test]
    fn iso_test_rejects_reducible_inputs_and_detects_self_isomorphism() {
        let g = build("sym 3");
        let f = field_make(2, 1).unwrap();
        let perm = GModule::permutation(g.clone(), f.clone()).unwrap();
        assert!(iso_test(&perm, &perm).is_err());
        let m52 = GModule::fully_deleted_permutation(5, 2, 10_000).unwrap();
        assert!(iso_test(&m52, &m52).unwrap());
        assert!(iso_test(&m52, &m52.dual().dual()).unwrap());
        let triv = GModule::trivial(m52.group().clone(), f);
        assert!(!iso_test(&m52, &triv).unwrap());
    }

    #[test]
    fn tensor_with_the_dual_contains_one_trivial_factor() {
        // V (x) V* for an absolutely irreducible V in coprime characteristic
        // is semisimple with End(V) = F, so the trivial module appears once.
        let m = GModule::fully_deleted_permutation(5, 7, 10_000).unwrap();
        assert_eq!(m.dim(), 4);
        let desc = chop(&m, 0).unwrap();
        assert!(desc.factors[0].descriptor.absolutely_irreducible);
        let t = m.tensor(&m.dual()).unwrap();
        let series = chop(&t, 5).unwrap();
        let trivial: Vec<&ChopFactor> = series
            .factors
            .iter()
            .filter(|f| f.descriptor.dim == 1 && f.module.actions().iter().all(Matrix::is_identity))
            .collect();
        assert_eq!(trivial.len(), 1);
        assert_eq!(trivial[0].multiplicity, 1);
    }

    #[test]
    fn clifford_restriction_of_the_deleted_module_to_the_klein_four() {
        let s4 = build("sym 4");
        let f = field_make(5, 1).unwrap();
        let perm = GModule::permutation(s4.clone(), f.clone()).unwrap();
        let ones = Matrix::from_rows(f, &[vec![1, 1, 1, 1]]);
        let sub = perm.submodule(&ones).unwrap();
        let _ = sub;
        let quo = perm.quotient(&ones).unwrap();
        assert!(is_irreducible(&quo).unwrap());
        let v4 = s4
            .minimal_normal_subgroups()
            .into_iter()
            .find(|n| n.len() == 4)
            .unwrap();
        let c = clifford_restriction(&quo, &v4, 0, DEFAULT_CHOP_CAP).unwrap();
        assert_eq!(c.factor.dim(), 1);
        assert_eq!(c.multiplicity, 1);
        assert_eq!(c.num_conjugates, 3);
    }

    #[test]
    fn faithfulness_flags_in_the_regular_series_of_s4_mod_3() {
        let g = build("sym 4");
        let series = regular_series(&g, 3, 1, 1);
        assert_eq!(series.total_dim(), 24);
        // The trivial and sign factors are unfaithful; S4 mod 3 is faithful
        // on its 3-dimensional simples.
        for f in &series.factors {
            assert_eq!(f.descriptor.faithful, f.descriptor.dim >= 3, "dim {}", f.descriptor.dim);
        }
    }
}
