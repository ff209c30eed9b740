//! Counting irreducible modules by dimension: the r / r* / R tables, their
//! product and central-quotient combination rules, minimal degrees, and the
//! subalgebra counting inequalities.

use crate::fqlinalg::{field_make, FieldRef};
use crate::gmod::{chop_with_cap, CompositionSeries, GModule, IrreducibleDescriptor};
use crate::groups::{catalog, FiniteGroup};
use crate::{Error, Result};
use std::collections::HashMap;
use std::sync::Arc;

/// Counts of irreducible F[G]-modules per dimension. `r[n-1]` counts all
/// isomorphism classes of dimension n, `r_star[n-1]` those with trivial
/// endomorphism field (defined over F). Synthesized tables (products,
/// central quotients) carry only `r_star`, so `r` is optional.
#[derive(Clone, Debug)]
pub struct CountTable {
    pub group: String,
    pub p: u32,
    pub k: u32,
    pub max_dim: usize,
    pub r: Option<Vec<u64>>,
    pub r_star: Vec<u64>,
    /// Descriptors by dimension (index n-1), canonical order; empty lists
    /// for synthesized tables.
    pub descriptors: Vec<Vec<IrreducibleDescriptor>>,
}

impl CountTable {
    pub fn r_at(&self, n: usize) -> Option<u64> {
        self.r.as_ref().map(|r| r[n - 1])
    }

    pub fn r_star_at(&self, n: usize) -> u64 {
        self.r_star[n - 1]
    }

    /// Cumulative counts R[n] = sum of r[j] for j <= n.
    pub fn cumulative(&self) -> Option<Vec<u64>> {
        self.r.as_ref().map(|r| {
            r.iter()
                .scan(0u64, |acc, &x| {
                    *acc += x;
                    Some(*acc)
                })
                .collect()
        })
    }
}

/// Composition factors of the regular module plus the tabulated counts.
/// Every irreducible F[G]-module occurs in F[G], so the table is complete.
pub struct GroupIrreducibles {
    pub series: CompositionSeries,
    pub table: CountTable,
}

/// Chop the regular module and tabulate counts up to `max_dim`. When a
/// central element `central` is supplied, every factor must act on it by a
/// scalar, recorded as the descriptor's central character.
pub fn irreducibles(
    g: &Arc<FiniteGroup>,
    field: &FieldRef,
    max_dim: usize,
    seed: u64,
    chop_cap: usize,
    central: Option<u32>,
) -> Result<GroupIrreducibles> {
    let reg = GModule::regular(g.clone(), field.clone(), chop_cap)?;
    let mut series = chop_with_cap(&reg, seed, chop_cap)?;
    if let Some(z) = central {
        for fac in &mut series.factors {
            let scalar = fac.module.scalar_action_of(z).ok_or_else(|| {
                Error::Invalid("designated element is not central on a factor".into())
            })?;
            fac.descriptor.central_character = Some(scalar);
        }
    }
    let mut r = vec![0u64; max_dim];
    let mut r_star = vec![0u64; max_dim];
    let mut descriptors = vec![Vec::new(); max_dim];
    for fac in &series.factors {
        let n = fac.descriptor.dim;
        if n == 0 || n > max_dim {
            continue;
        }
        r[n - 1] += 1;
        if fac.descriptor.endo_degree == 1 {
            r_star[n - 1] += 1;
        }
        descriptors[n - 1].push(fac.descriptor.clone());
    }
    let table = CountTable {
        group: g.kind_summary(),
        p: field.p,
        k: field.k,
        max_dim,
        r: Some(r),
        r_star,
        descriptors,
    };
    Ok(GroupIrreducibles { series, table })
}

/// r* table of a direct product by dimension convolution: an absolutely
/// irreducible module of a product is an outer tensor of absolutely
/// irreducible factor modules, so counts multiply over factorizations of n.
/// Only r* combines this way; r needs Galois descent bookkeeping and is left
/// to a direct chop.
pub fn product_counts(tables: &[&CountTable], max_dim: usize) -> Result<CountTable> {
    let (p, k) = check_same_field(tables)?;
    let mut acc = vec![0u64; max_dim];
    acc[0] = 1;
    for t in tables {
        let mut next = vec![0u64; max_dim];
        for n in 1..=max_dim {
            let mut total = 0u64;
            for d in 1..=n {
                if n % d == 0 && acc[d - 1] > 0 {
                    let other = n / d;
                    if other <= t.max_dim {
                        total += acc[d - 1] * t.r_star_at(other);
                    }
                }
            }
            next[n - 1] = total;
        }
        acc = next;
    }
    Ok(CountTable {
        group: format!(
            "product({})",
            tables.iter().map(|t| t.group.as_str()).collect::<Vec<_>>().join(", ")
        ),
        p,
        k,
        max_dim,
        r: None,
        r_star: acc,
        descriptors: vec![Vec::new(); max_dim],
    })
}

/// r* table of the quotient of a direct product by the diagonal central
/// subgroup: a product irreducible factors through the quotient exactly when
/// its central characters multiply to 1, so the convolution walks (degree,
/// running character product) states.
pub fn central_quotient_counts(tables: &[&CountTable], max_dim: usize) -> Result<CountTable> {
    let (p, k) = check_same_field(tables)?;
    let field = field_make(p, k)?;
    let mut acc: HashMap<(usize, u16), u64> = HashMap::new();
    acc.insert((1, 1), 1);
    for t in tables {
        let mut next: HashMap<(usize, u16), u64> = HashMap::new();
        for (&(deg, chi), &count) in &acc {
            for (i, descs) in t.descriptors.iter().enumerate() {
                let d = i + 1;
                if deg * d > max_dim {
                    continue;
                }
                for desc in descs {
                    if desc.endo_degree != 1 {
                        continue;
                    }
                    let omega = desc.central_character.ok_or_else(|| {
                        Error::Invalid("factor table lacks central characters".into())
                    })?;
                    *next.entry((deg * d, field.mul(chi, omega))).or_insert(0) += count;
                }
            }
        }
        acc = next;
    }
    let mut r_star = vec![0u64; max_dim];
    for ((deg, chi), count) in acc {
        if chi == 1 {
            r_star[deg - 1] += count;
        }
    }
    Ok(CountTable {
        group: format!(
            "central_quotient({})",
            tables.iter().map(|t| t.group.as_str()).collect::<Vec<_>>().join(", ")
        ),
        p,
        k,
        max_dim,
        r: None,
        r_star,
        descriptors: vec![Vec::new(); max_dim],
    })
}

fn check_same_field(tables: &[&CountTable]) -> Result<(u32, u32)> {
    let first = tables.first().ok_or_else(|| Error::Invalid("no factor tables".into()))?;
    for t in tables {
        if (t.p, t.k) != (first.p, first.k) {
            return Err(Error::FieldMismatch(format!(
                "tables over GF({}^{}) and GF({}^{})",
                first.p, first.k, t.p, t.k
            )));
        }
    }
    Ok((first.p, first.k))
}

/// Least dimension of a nontrivial irreducible, with its descriptor.
pub fn min_degree(gi: &GroupIrreducibles) -> Option<(usize, IrreducibleDescriptor)> {
    gi.series
        .factors
        .iter()
        .find(|f| !f.module.actions().iter().all(crate::fqlinalg::Matrix::is_identity))
        .map(|f| (f.descriptor.dim, f.descriptor.clone()))
}

/// A faithful irreducible module of minimal size |F|^dim, reported over its
/// minimal realization field GF(p^e).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaithfulWitness {
    pub size: u128,
    pub p: u32,
    pub k: u32,
    pub dim: usize,
    pub fingerprint: Vec<u16>,
}

/// Scan prime fields p <= bound: an irreducible of size p^d over GF(p) has
/// the same size over its minimal field GF(p^e) (dimension d/e), so the
/// prime-field chops cover every candidate. Ties resolve by
/// (size, p, k, fingerprint).
pub fn min_faithful_size(
    g: &Arc<FiniteGroup>,
    bound: u128,
    seed: u64,
    chop_cap: usize,
) -> Result<Option<FaithfulWitness>> {
    let mut best: Option<FaithfulWitness> = None;
    for p in 2..=bound.min(u32::MAX as u128) as u32 {
        if !catalog::is_prime(p) {
            continue;
        }
        let field = field_make(p, 1)?;
        let gi = irreducibles(g, &field, g.order(), seed, chop_cap, None)?;
        for fac in &gi.series.factors {
            let d = &fac.descriptor;
            if !d.faithful {
                continue;
            }
            let Some(size) = (p as u128).checked_pow(d.dim as u32) else { continue };
            if size > bound {
                continue;
            }
            let e = d.endo_degree;
            let cand = FaithfulWitness {
                size,
                p,
                k: e as u32,
                dim: d.dim / e,
                fingerprint: d.fingerprint.clone(),
            };
            let better = match &best {
                None => true,
                Some(b) => {
                    (cand.size, cand.p, cand.k, &cand.fingerprint)
                        < (b.size, b.p, b.k, &b.fingerprint)
                }
            };
            if better {
                best = Some(cand);
            }
        }
    }
    Ok(best)
}

/// One compared pair of cumulative counts; the inequality holds when
/// lhs <= rhs.
#[derive(Clone, Debug)]
pub struct InequalityRow {
    pub n: usize,
    pub lhs: u64,
    pub rhs: u64,
}

impl InequalityRow {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }
}

/// Counting inequalities between a group and a subgroup of index h: the
/// restriction bound R(H,F,n) <= h * R(G,F,nh) and the subalgebra bound
/// R(G,F,n) <= h * R(H,F,n), reported per dimension up to `max_dim`.
#[derive(Debug)]
pub struct SubalgebraReport {
    pub index: usize,
    pub restriction_rows: Vec<InequalityRow>,
    pub subalgebra_rows: Vec<InequalityRow>,
}

impl SubalgebraReport {
    pub fn all_hold(&self) -> bool {
        self.restriction_rows.iter().chain(&self.subalgebra_rows).all(InequalityRow::holds)
    }
}

pub fn subalgebra_inequality_check(
    g: &Arc<FiniteGroup>,
    sub: &[u32],
    field: &FieldRef,
    max_dim: usize,
    seed: u64,
    chop_cap: usize,
) -> Result<SubalgebraReport> {
    let (h_group, _) = g.subgroup_as_group(sub, g.order())?;
    let h = g.order() / sub.len();
    let g_table = irreducibles(g, field, max_dim * h, seed, chop_cap, None)?.table;
    let h_table = irreducibles(&h_group, field, max_dim, seed, chop_cap, None)?.table;
    let big_r_g = g_table.cumulative().expect("chopped table");
    let big_r_h = h_table.cumulative().expect("chopped table");
    let mut restriction_rows = Vec::with_capacity(max_dim);
    let mut subalgebra_rows = Vec::with_capacity(max_dim);
    for n in 1..=max_dim {
        restriction_rows.push(InequalityRow {
            n,
            lhs: big_r_h[n - 1],
            rhs: h as u64 * big_r_g[n * h - 1],
        });
        subalgebra_rows.push(InequalityRow {
            n,
            lhs: big_r_g[n - 1],
            rhs: h as u64 * big_r_h[n - 1],
        });
    }
    Ok(SubalgebraReport { index: h, restriction_rows, subalgebra_rows })
}

/// Least integer c with r[n] <= q^(cn) for all tabulated n, together with
/// the verification that R[n] <= n * q^(cn) follows numerically.
pub fn growth_exponent_check(table: &CountTable) -> Option<(u32, bool)> {
    let r = table.r.as_ref()?;
    let big_r = table.cumulative()?;
    let q = u128::from(table.p).pow(table.k);
    let mut c = 0u32;
    for (i, &rn) in r.iter().enumerate() {
        let n = (i + 1) as u32;
        // checked_pow overflow means the bound certainly holds.
        while q.checked_pow(c * n).is_some_and(|b| u128::from(rn) > b) {
            c += 1;
        }
    }
    let ok = big_r.iter().enumerate().all(|(i, &bn)| {
        let n = (i + 1) as u128;
        q.checked_pow(c * (i as u32 + 1))
            .is_none_or(|b| u128::from(bn) <= n.saturating_mul(b))
    });
    Some((c, ok))
}
