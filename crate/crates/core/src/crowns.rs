//! Chief series with Frattini classification, the per-module counting data
//! behind the kernel-generator formula, T-rank of non-abelian factors, and
//! epimorphism censuses.

use crate::cohom::{complement_exists, h1_dim};
use crate::fqlinalg::{field_make, Matrix};
use crate::gmod::{descriptor, intertwiners, iso_test, GModule, IrreducibleDescriptor};
use crate::groups::{epimorphism_exists, hom_search, FiniteGroup, Homomorphism};
use crate::{Error, Result};
use std::collections::HashMap;
use std::sync::Arc;

/// Largest group order accepted by the chief-series walk.
pub const CHIEF_CAP: usize = 10_000;

/// Direction of the deterministic choice among the minimal normal subgroups
/// of each quotient. The factor multiset must not depend on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    Least,
    Greatest,
}

pub enum ChiefFactorKind {
    /// Elementary abelian factor of order p^dim with its conjugation
    /// G-module structure.
    Abelian { module: GModule, descriptor: IrreducibleDescriptor },
    /// Direct power of a non-abelian simple group, with the quotient of G by
    /// the factor's centralizer (the group acting on the factor).
    NonAbelian { simple_order: usize, copies: usize, acting: Arc<FiniteGroup> },
}

pub struct ChiefFactor {
    pub order: usize,
    /// True when the factor X/Y lies inside the Frattini subgroup of G/Y,
    /// equivalently (for abelian factors) when it has no complement there.
    pub frattini: bool,
    pub kind: ChiefFactorKind,
}

impl ChiefFactor {
    pub fn is_abelian(&self) -> bool {
        matches!(self.kind, ChiefFactorKind::Abelian { .. })
    }
}

/// Chief series G = N_0 > N_1 > ... > 1; `factors[i]` describes
/// N_i / N_{i+1}, so the top factor comes first.
pub struct ChiefSeries {
    /// Element lists of the chain subgroups, descending from all of G.
    pub chain: Vec<Vec<u32>>,
    pub factors: Vec<ChiefFactor>,
}

impl ChiefSeries {
    /// (order, abelian, frattini) multiset key, for invariance checks.
    pub fn factor_multiset(&self) -> Vec<(usize, bool, bool)> {
        let mut v: Vec<_> = self
            .factors
            .iter()
            .map(|f| (f.order, f.is_abelian(), f.frattini))
            .collect();
        v.sort_unstable();
        v
    }
}

/// Compute a chief series bottom-up: repeatedly pick a minimal normal
/// subgroup of G over the part already built (deterministically: the
/// quotient's minimal normal subgroups are ordered by (order, element list),
/// and the tie-break picks the first or last). Abelian factors get their
/// conjugation module over GF(p); Frattini flags come from a complement
/// search in the corresponding quotient, and non-abelian factors are always
/// complemented there, hence never Frattini.
pub fn chief_series(g: &Arc<FiniteGroup>, tie: TieBreak) -> Result<ChiefSeries> {
    if g.order() > CHIEF_CAP {
        return Err(Error::CapExceeded { cap: CHIEF_CAP });
    }
    let mut chain: Vec<Vec<u32>> = vec![vec![0]];
    let mut factors: Vec<ChiefFactor> = Vec::new();
    let mut current: Vec<u32> = vec![0];
    while current.len() < g.order() {
        let (q, proj) = quotient_or_self(g, &current)?;
        let mins = q.minimal_normal_subgroups();
        let w_q = match tie {
            TieBreak::Least => mins.first(),
            TieBreak::Greatest => mins.last(),
        }
        .expect("nontrivial group has a minimal normal subgroup")
        .clone();
        let order = w_q.len();
        let gens_wq = q.subgroup_generators(&w_q);
        let abelian = gens_wq
            .iter()
            .all(|&a| gens_wq.iter().all(|&b| q.mult(a, b) == q.mult(b, a)));
        let factor = if abelian {
            let module = conjugation_module(g, &q, &proj, &w_q)?;
            let desc = descriptor(&module)?;
            let frattini = complement_exists(&q, &w_q)?.is_none();
            ChiefFactor { order, frattini, kind: ChiefFactorKind::Abelian { module, descriptor: desc } }
        } else {
            let (w_group, _) = q.subgroup_as_group(&w_q, CHIEF_CAP)?;
            let mins_w = w_group.minimal_normal_subgroups();
            let (simple_order, copies) =
                if mins_w.len() == 1 && mins_w[0].len() == w_group.order() {
                    (w_group.order(), 1)
                } else {
                    (mins_w[0].len(), mins_w.len())
                };
            debug_assert_eq!(simple_order.pow(copies as u32), order);
            let cq = q.centralizer(&w_q);
            let (acting, _) = q.quotient(&cq, CHIEF_CAP)?;
            ChiefFactor {
                order,
                frattini: false,
                kind: ChiefFactorKind::NonAbelian { simple_order, copies, acting },
            }
        };
        let next: Vec<u32> = (0..g.order() as u32)
            .filter(|&x| w_q.binary_search(&proj.apply(x)).is_ok())
            .collect();
        debug_assert_eq!(next.len(), current.len() * order);
        factors.push(factor);
        chain.push(next.clone());
        current = next;
    }
    chain.reverse();
    factors.reverse();
    Ok(ChiefSeries { chain, factors })
}

fn quotient_or_self(
    g: &Arc<FiniteGroup>,
    sub: &[u32],
) -> Result<(Arc<FiniteGroup>, Homomorphism)> {
    if sub.len() == 1 {
        let ids = (0..g.num_gens()).map(|s| g.gen_index(s)).collect();
        let identity = Homomorphism::new(g.clone(), g.clone(), ids)?;
        Ok((g.clone(), identity))
    } else {
        g.quotient(sub, CHIEF_CAP)
    }
}

/// The G-module on an elementary abelian minimal normal subgroup W of the
/// quotient q = G/N: rows are coordinates in a greedily chosen basis of W,
/// and the generator s of G acts by conjugation with its image in q.
fn conjugation_module(
    g: &Arc<FiniteGroup>,
    q: &Arc<FiniteGroup>,
    proj: &Homomorphism,
    w_q: &[u32],
) -> Result<GModule> {
    let order = w_q.len();
    let p = (2..).find(|d| order % d == 0).expect("nontrivial order");
    let dim = order.ilog(p) as usize;
    assert_eq!((p as usize).pow(dim as u32), order, "factor is elementary abelian");
    let field = field_make(p as u32, 1)?;
    let mut basis: Vec<u32> = Vec::new();
    let mut span = vec![0u32];
    for &e in &w_q[1..] {
        if span.binary_search(&e).is_err() {
            basis.push(e);
            span = q.subgroup_closure(&basis);
            if span.len() == order {
                break;
            }
        }
    }
    assert_eq!(basis.len(), dim);
    // Coordinates of every element of W, walked by an odometer over the
    // exponent tuples.
    let mut coords: HashMap<u32, Vec<u16>> = HashMap::with_capacity(order);
    let mut exps = vec![0u16; dim];
    loop {
        let mut elem = 0u32;
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                elem = q.mult(elem, basis[i]);
            }
        }
        coords.insert(elem, exps.clone());
        let mut pos = 0;
        loop {
            if pos == dim {
                let actions: Vec<Matrix> = (0..g.num_gens())
                    .map(|s| {
                        let gbar = proj.apply(g.gen_index(s));
                        let rows: Vec<Vec<u16>> = basis
                            .iter()
                            .map(|&b| coords[&q.conj(b, gbar)].clone())
                            .collect();
                        Matrix::from_rows(field.clone(), &rows)
                    })
                    .collect();
                return GModule::new(g.clone(), field, actions);
            }
            exps[pos] += 1;
            if (exps[pos] as usize) < p {
                break;
            }
            exps[pos] = 0;
            pos += 1;
        }
    }
}

/// Per-module counting data: delta counts the non-Frattini abelian chief
/// factors G-isomorphic to M, r is dim M over the endomorphism field, and
/// h' is the H^1 dimension over that field of the faithful quotient action.
pub struct DeltaReport {
    pub delta: usize,
    pub r: usize,
    pub h_prime: usize,
}

pub fn delta_and_r(g: &Arc<FiniteGroup>, m: &GModule) -> Result<DeltaReport> {
    let series = chief_series(g, TieBreak::Least)?;
    delta_against_series(g, &series, m)
}

fn delta_against_series(
    g: &Arc<FiniteGroup>,
    series: &ChiefSeries,
    m: &GModule,
) -> Result<DeltaReport> {
    let mut delta = 0;
    for f in &series.factors {
        if f.frattini {
            continue;
        }
        let ChiefFactorKind::Abelian { module, descriptor: d } = &f.kind else { continue };
        if (d.p, d.k, d.dim) != (m.field().p, m.field().k, m.dim()) {
            continue;
        }
        if iso_test(module, m)? {
            delta += 1;
        }
    }
    let e = intertwiners(m, m)?.nrows();
    assert_eq!(m.dim() % e, 0);
    let r = m.dim() / e;
    let kernel = m.kernel_of_action()?;
    let h_prime = if kernel.len() == g.order() {
        0
    } else {
        let (q, proj) = g.quotient(&kernel, CHIEF_CAP)?;
        let actions: Vec<Matrix> = (0..q.num_gens())
            .map(|s| {
                let target = q.gen_index(s);
                let x = (0..g.order() as u32)
                    .find(|&x| proj.apply(x) == target)
                    .expect("projection is onto");
                m.element_action(x)
            })
            .collect();
        let mq = GModule::new(q.clone(), m.field().clone(), actions)?;
        let (h1, _) = h1_dim(&mq)?;
        assert_eq!(h1 % e, 0, "H^1 dimension not divisible by the endo degree");
        h1 / e
    };
    Ok(DeltaReport { delta, r, h_prime })
}

/// sup over irreducible modules M of ceil((delta(M) + h'(M)) / r(M)), the
/// generator count of the kernel in the presentation formula. The scan
/// covers all composition factors of the regular modules over GF(p) for
/// every prime p dividing |G|; modules over other primes contribute zero
/// since both delta and h' vanish there.
pub fn fp1_sup(
    g: &Arc<FiniteGroup>,
    seed: u64,
    chop_cap: usize,
) -> Result<(u64, Option<IrreducibleDescriptor>)> {
    if g.order() == 1 {
        return Ok((0, None));
    }
    let series = chief_series(g, TieBreak::Least)?;
    let mut primes = Vec::new();
    let mut rest = g.order();
    let mut d = 2;
    while rest > 1 {
        if rest % d == 0 {
            primes.push(d as u32);
            while rest % d == 0 {
                rest /= d;
            }
        }
        d += 1;
    }
    let mut best: (u64, Option<IrreducibleDescriptor>) = (0, None);
    for p in primes {
        let field = field_make(p, 1)?;
        let reg = GModule::regular(g.clone(), field, chop_cap)?;
        let chopped = crate::gmod::chop_with_cap(&reg, seed, chop_cap)?;
        for fac in &chopped.factors {
            let report = delta_against_series(g, &series, &fac.module)?;
            let value = ((report.delta + report.h_prime) as u64).div_ceil(report.r as u64);
            if value > best.0 {
                best = (value, Some(fac.descriptor.clone()));
            }
        }
    }
    Ok(best)
}

/// Number of non-abelian chief factors A of G with G/C_G(A) isomorphic
/// to T. Isomorphism is decided by order, conjugacy-class-size multiset,
/// and an epimorphism search (surjective + equal order = isomorphic).
pub fn rk_t(g: &Arc<FiniteGroup>, t: &Arc<FiniteGroup>, budget: u128) -> Result<usize> {
    let series = chief_series(g, TieBreak::Least)?;
    let t_classes = class_size_multiset(t);
    let mut count = 0;
    for f in &series.factors {
        let ChiefFactorKind::NonAbelian { acting, .. } = &f.kind else { continue };
        if acting.order() != t.order() || class_size_multiset(acting) != t_classes {
            continue;
        }
        if epimorphism_exists(t, acting, budget)? {
            count += 1;
        }
    }
    Ok(count)
}

fn class_size_multiset(g: &FiniteGroup) -> Vec<usize> {
    let mut v: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.members.len()).collect();
    v.sort_unstable();
    v
}

/// Epimorphism census: the number of epimorphisms G -> T, the number of
/// their T-conjugacy classes, and (when an irreducible T-module V is
/// supplied) the sandwich |Epi|/|T| <= classes <= |V| |Epi|/|T|.
pub struct EpiCensus {
    pub epis: usize,
    pub classes: usize,
    pub sandwich: Option<(bool, bool)>,
}

pub fn epi_census(
    g: &Arc<FiniteGroup>,
    t: &Arc<FiniteGroup>,
    v: Option<&GModule>,
    budget: u128,
) -> Result<EpiCensus> {
    if let Some(module) = v {
        if !Arc::ptr_eq(module.group(), t) {
            return Err(Error::Invalid("census module is not a T-module".into()));
        }
    }
    let epis = hom_search(g, t, true, budget, None)?;
    let mut canon = std::collections::HashSet::new();
    for e in &epis {
        let images = e.gen_images();
        let best = (0..t.order() as u32)
            .map(|c| images.iter().map(|&im| t.conj(im, c)).collect::<Vec<u32>>())
            .min()
            .expect("nonempty conjugator range");
        canon.insert(best);
    }
    let classes = canon.len();
    let sandwich = v.map(|module| {
        let vol = (module.field().p as u128)
            .pow(module.field().k * module.dim() as u32);
        let lower = epis.len() as u128 <= classes as u128 * t.order() as u128;
        let upper = (classes * t.order()) as u128 <= vol * epis.len() as u128;
        (lower, upper)
    });
    Ok(EpiCensus { epis: epis.len(), classes, sandwich })
}

/// Least d with a generating d-tuple, or None if every tuple up to `max_d`
/// fails. The first slot only ranges over conjugacy-class representatives,
/// since conjugating a generating tuple gives another one.
pub fn d_bruteforce(g: &Arc<FiniteGroup>, max_d: usize, budget: u128) -> Result<Option<usize>> {
    if g.order() == 1 {
        return Ok(Some(0));
    }
    let reps: Vec<u32> = g.class_reps().into_iter().filter(|&r| r != 0).collect();
    let mut cost: u128 = 0;
    for d in 1..=max_d {
        cost = cost.saturating_add(
            (reps.len() as u128).saturating_mul((g.order() as u128).saturating_pow(d as u32 - 1)),
        );
    }
    if cost > budget {
        return Err(Error::BudgetExceeded { budget, needed: cost });
    }
    for d in 1..=max_d {
        let mut tuple = Vec::with_capacity(d);
        if search_tuples(g, &reps, &mut tuple, d) {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

fn search_tuples(g: &Arc<FiniteGroup>, reps: &[u32], tuple: &mut Vec<u32>, d: usize) -> bool {
    if tuple.len() == d {
        return g.subgroup_closure(tuple).len() == g.order();
    }
    // Shorter generating prefixes were ruled out at smaller d, so only
    // extend non-generating prefixes.
    if !tuple.is_empty() && g.subgroup_closure(tuple).len() == g.order() {
        return false;
    }
    let candidates: Vec<u32> = if tuple.is_empty() {
        reps.to_vec()
    } else {
        (1..g.order() as u32).collect()
    };
    for x in candidates {
        tuple.push(x);
        if search_tuples(g, reps, tuple, d) {
            return true;
        }
        tuple.pop();
    }
    false
}
