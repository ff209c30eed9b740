//! Group constructors and the text input grammar.
//!
//! Keyword specs: `gstar p n`, `sl n q`, `psl n q`, `alt b`, `sym b`,
//! `cyclic n`, `elem p n`, `gnqm n q m`, `sl2zmod p`, `crown (<spec>) k`,
//! `product (<spec>) (<spec>) ...`.  Inline generators: `perm: (1 2 3)(4 5); (1 2)`
//! with `;` separating generators, or `mat GF(q): [[1,1],[0,1]]; [[0,1],[1,0]]`.
//! `crown` uses the least minimal normal subgroup of its base.

use std::sync::Arc;

use super::element::Element;
use super::group::FiniteGroup;
use crate::error::{Error, Result};
use crate::fqlinalg::{field_make, Matrix};

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power into `(p, k)`.
pub(crate) fn prime_power(q: u32) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::Invalid(format!("{q} is not a prime power")));
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q; // q itself prime (or 1, rejected below)
    }
    if p < 2 {
        return Err(Error::Invalid(format!("{q} is not a prime power")));
    }
    let mut k = 0u32;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    if rest != 1 || k == 0 {
        return Err(Error::Invalid(format!("{q} is not a prime power")));
    }
    Ok((p, k))
}

fn check_cap(expected: u128, cap: usize) -> Result<()> {
    if expected > cap as u128 {
        return Err(Error::CapExceeded { cap });
    }
    Ok(())
}

pub fn cyclic(n: usize, cap: usize) -> Result<Arc<FiniteGroup>> {
    if n == 0 {
        return Err(Error::Invalid("cyclic group order must be positive".into()));
    }
    check_cap(n as u128, cap)?;
    if n == 1 {
        return Ok(FiniteGroup::trivial());
    }
    let images: Vec<u16> = (0..n).map(|i| ((i + 1) % n) as u16).collect();
    let g = FiniteGroup::enumerate(vec![Element::Perm(images)], cap)?;
    debug_assert_eq!(g.order(), n);
    Ok(g)
}

/// Elementary abelian p-group of rank `n`, one disjoint p-cycle per rank.
pub fn elementary(p: u32, n: usize, cap: usize) -> Result<Arc<FiniteGroup>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p as u64));
    }
    if n == 0 {
        return Ok(FiniteGroup::trivial());
    }
    check_cap((p as u128).pow(n as u32), cap)?;
    let deg = n * p as usize;
    let gens = (0..n)
        .map(|i| {
            let mut im: Vec<u16> = (0..deg as u16).collect();
            for j in 0..p as usize {
                im[i * p as usize + j] = (i * p as usize + (j + 1) % p as usize) as u16;
            }
            Element::Perm(im)
        })
        .collect();
    let g = FiniteGroup::enumerate(gens, cap)?;
    debug_assert_eq!(g.order(), (p as usize).pow(n as u32));
    Ok(g)
}

pub fn sym(b: usize, cap: usize) -> Result<Arc<FiniteGroup>> {
    if b <= 1 {
        return Ok(FiniteGroup::trivial());
    }
    let transposition = Element::perm_from_cycles(b, &[vec![1, 2]])?;
    let cycle = Element::perm_from_cycles(b, &[(1..=b).collect()])?;
    FiniteGroup::enumerate(vec![transposition, cycle], cap)
}

pub fn alt(b: usize, cap: usize) -> Result<Arc<FiniteGroup>> {
    if b <= 2 {
        return Ok(FiniteGroup::trivial());
    }
    let three_cycle = Element::perm_from_cycles(b, &[vec![1, 2, 3]])?;
    // For even b the long cycle is odd, so use the (b-1)-cycle fixing point 1.
    let cycle = if b % 2 == 1 {
        Element::perm_from_cycles(b, &[(1..=b).collect()])?
    } else {
        Element::perm_from_cycles(b, &[(2..=b).collect()])?
    };
    FiniteGroup::enumerate(vec![three_cycle, cycle], cap)
}

fn sl_order(n: usize, q: u32) -> u128 {
    let q = q as u128;
    let mut ord = q.pow((n * (n - 1) / 2) as u32);
    for i in 2..=n {
        ord *= q.pow(i as u32) - 1;
    }
    ord
}

/// Special linear group via elementary transvections `I + a^t E_{ij}`,
/// `t < k`; their spans cover every transvection, which generate SL.
pub fn sl(n: usize, q: u32, cap: usize) -> Result<Arc<FiniteGroup>> {
    if n < 2 {
        return Err(Error::Invalid("sl needs dimension at least 2".into()));
    }
    let (p, k) = prime_power(q)?;
    check_cap(sl_order(n, q), cap)?;
    let f = field_make(p, k)?;
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for t in 0..k {
                let coeff = f.pow(if k == 1 { 1 } else { p as u16 }, t as u64);
                let mut m = Matrix::identity(f.clone(), n);
                m.set(i, j, coeff);
                gens.push(Element::Mat(m));
            }
        }
    }
    let g = FiniteGroup::enumerate(gens, cap)?;
    debug_assert_eq!(g.order() as u128, sl_order(n, q));
    Ok(g)
}

/// Indices of the scalar subgroup `{c I : c^n = 1}` inside a matrix group.
fn scalar_centre(g: &Arc<FiniteGroup>, n: usize, q: u32) -> Result<Vec<u32>> {
    let (p, k) = prime_power(q)?;
    let f = field_make(p, k)?;
    let dim = match g.element(0) {
        Element::Mat(m) => m.nrows(),
        _ => return Err(Error::Invalid("scalar centre needs a matrix group".into())),
    };
    let mut idxs = Vec::new();
    for c in 1..q as u16 {
        if f.pow(c, n as u64) == 1 {
            let m = Matrix::from_fn(f.clone(), dim, dim, |i, j| if i == j { c } else { 0 });
            let idx = g
                .find_element(&Element::Mat(m))
                .ok_or_else(|| Error::Invalid("scalar matrix missing from group".into()))?;
            idxs.push(idx);
        }
    }
    idxs.sort_unstable();
    Ok(idxs)
}

pub fn psl(n: usize, q: u32, cap: usize) -> Result<Arc<FiniteGroup>> {
    let s = sl(n, q, cap)?;
    let z = scalar_centre(&s, n, q)?;
    let (quot, _) = s.quotient(&z, cap)?;
    Ok(quot)
}

/// `C_p^n ⋊ C` with `C` the odd-order half of `Aut(C_p)`, acting by scalars;
/// realized as permutations of the `p^n` vectors.  Requires `p ≡ 3 (mod 4)`,
/// `p > 3`, so that `(p-1)/2` is odd.
pub fn g_star(p: u32, n: usize, cap: usize) -> Result<Arc<FiniteGroup>> {
    if !is_prime(p) || p % 4 != 3 || p <= 3 {
        return Err(Error::Invalid(format!(
            "gstar requires a prime p > 3 with p = 3 mod 4, got {p}"
        )));
    }
    if n == 0 {
        return Err(Error::Invalid("gstar rank must be positive".into()));
    }
    let eta = (p as u128 - 1) / 2;
    let deg = (p as u128).pow(n as u32);
    if deg > u16::MAX as u128 + 1 {
        return Err(Error::Invalid(format!("gstar degree {deg} exceeds 65536")));
    }
    check_cap(deg * eta, cap)?;
    let deg = deg as usize;
    let pu = p as usize;
    let mut gens = Vec::new();
    // Translations by the standard basis vectors.
    for i in 0..n {
        let step = pu.pow(i as u32);
        let im = (0..deg)
            .map(|v| {
                let d = (v / step) % pu;
                (v - step * d + step * ((d + 1) % pu)) as u16
            })
            .collect();
        gens.push(Element::Perm(im));
    }
    // Scalar multiplication by r = g^2 for g the least primitive root mod p;
    // squares of a generator of C_{p-1} generate its index-2 subgroup.
    let g0 = (2..p)
        .find(|&g| {
            let mut x = g as u64;
            let mut ord = 1;
            while x != 1 {
                x = x * g as u64 % p as u64;
                ord += 1;
            }
            ord == p - 1
        })
        .expect("primitive root exists");
    let r = (g0 as u64 * g0 as u64 % p as u64) as usize;
    let im = (0..deg)
        .map(|v| {
            let mut out = 0usize;
            let mut rest = v;
            let mut place = 1usize;
            for _ in 0..n {
                out += (rest % pu * r) % pu * place;
                rest /= pu;
                place *= pu;
            }
            out as u16
        })
        .collect();
    gens.push(Element::Perm(im));
    let g = FiniteGroup::enumerate(gens, cap)?;
    debug_assert_eq!(g.order() as u128, deg as u128 * eta);
    Ok(g)
}

/// `SL_n(F_q)^m` modulo the diagonally embedded scalar centre.
pub fn g_nqm(n: usize, q: u32, m: usize, cap: usize) -> Result<Arc<FiniteGroup>> {
    if m == 0 {
        return Err(Error::Invalid("gnqm needs at least one factor".into()));
    }
    let base_order = sl_order(n, q);
    check_cap(base_order.pow(m as u32), cap)?;
    let base = sl(n, q, cap)?;
    let power = direct_power(&base, m, cap)?;
    let z = scalar_centre(&power, n, q)?;
    let (quot, _) = power.quotient(&z, cap)?;
    Ok(quot)
}

/// `SL₂(Z/p²)`, generated by the two elementary matrices.
pub fn sl2_zmod(p: u32, cap: usize) -> Result<Arc<FiniteGroup>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p as u64));
    }
    let m = p as u128 * p as u128;
    if m > u32::MAX as u128 {
        return Err(Error::Invalid("modulus p^2 exceeds u32".into()));
    }
    let expected = (p as u128).pow(4) * (m - 1);
    check_cap(expected, cap)?;
    let m = m as u32;
    let e12 = Element::ZMat { m, n: 2, entries: vec![1, 1, 0, 1] };
    let e21 = Element::ZMat { m, n: 2, entries: vec![1, 0, 1, 1] };
    let g = FiniteGroup::enumerate(vec![e12, e21], cap)?;
    debug_assert_eq!(g.order() as u128, expected);
    Ok(g)
}

/// Pads permutation generators of two groups onto disjoint point sets.
fn perm_product_gens(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Vec<Element> {
    let da = a.element(0).degree();
    let db = b.element(0).degree();
    let mut gens = Vec::new();
    for s in 0..a.num_gens() {
        if let Element::Perm(p) = a.element(a.gen_index(s)) {
            let mut im: Vec<u16> = p.clone();
            im.extend((da..da + db).map(|x| x as u16));
            gens.push(Element::Perm(im));
        }
    }
    for s in 0..b.num_gens() {
        if let Element::Perm(p) = b.element(b.gen_index(s)) {
            let mut im: Vec<u16> = (0..da as u16).collect();
            im.extend(p.iter().map(|&x| x + da as u16));
            gens.push(Element::Perm(im));
        }
    }
    gens
}

/// Direct product.  Same-kind groups stay in kind (disjoint point sets or
/// block-diagonal matrices); otherwise both factors fall back to their
/// right-regular permutation images.
pub fn direct_product(
    a: &Arc<FiniteGroup>,
    b: &Arc<FiniteGroup>,
    cap: usize,
) -> Result<Arc<FiniteGroup>> {
    check_cap(a.order() as u128 * b.order() as u128, cap)?;
    let gens: Vec<Element> = match (a.element(0), b.element(0)) {
        (Element::Perm(_), Element::Perm(_)) => perm_product_gens(a, b),
        (Element::Mat(ma), Element::Mat(mb)) if ma.field() == mb.field() => {
            let f = ma.field().clone();
            let (na, nb) = (ma.nrows(), mb.nrows());
            let mut gens = Vec::new();
            for s in 0..a.num_gens() {
                if let Element::Mat(g) = a.element(a.gen_index(s)) {
                    let mut m = Matrix::identity(f.clone(), na + nb);
                    for i in 0..na {
                        for j in 0..na {
                            m.set(i, j, g.get(i, j));
                        }
                    }
                    gens.push(Element::Mat(m));
                }
            }
            for s in 0..b.num_gens() {
                if let Element::Mat(g) = b.element(b.gen_index(s)) {
                    let mut m = Matrix::identity(f.clone(), na + nb);
                    for i in 0..nb {
                        for j in 0..nb {
                            m.set(na + i, na + j, g.get(i, j));
                        }
                    }
                    gens.push(Element::Mat(m));
                }
            }
            gens
        }
        (Element::ZMat { m: ma, n: na, .. }, Element::ZMat { m: mb, n: nb, .. }) if ma == mb => {
            let (m, na, nb) = (*ma, *na, *nb);
            let n = na + nb;
            let block = |g: &Element, off: usize, side: usize| -> Element {
                let mut entries = vec![0u32; n * n];
                for i in 0..n {
                    entries[i * n + i] = 1 % m;
                }
                if let Element::ZMat { entries: ge, .. } = g {
                    for i in 0..side {
                        for j in 0..side {
                            entries[(off + i) * n + (off + j)] = ge[i * side + j];
                        }
                    }
                }
                Element::ZMat { m, n, entries }
            };
            let mut gens = Vec::new();
            for s in 0..a.num_gens() {
                gens.push(block(a.element(a.gen_index(s)), 0, na));
            }
            for s in 0..b.num_gens() {
                gens.push(block(b.element(b.gen_index(s)), na, nb));
            }
            gens
        }
        _ => {
            let pa = perm_group_of(a, cap)?;
            let pb = perm_group_of(b, cap)?;
            perm_product_gens(&pa, &pb)
        }
    };
    let g = if gens.is_empty() {
        FiniteGroup::trivial()
    } else {
        FiniteGroup::enumerate(gens, cap)?
    };
    debug_assert_eq!(g.order(), a.order() * b.order());
    Ok(g)
}

/// The group itself if it already permutes points, else its right-regular
/// permutation image.
fn perm_group_of(g: &Arc<FiniteGroup>, cap: usize) -> Result<Arc<FiniteGroup>> {
    if matches!(g.element(0), Element::Perm(_)) {
        return Ok(g.clone());
    }
    if g.num_gens() == 0 {
        return Ok(FiniteGroup::trivial());
    }
    FiniteGroup::enumerate(g.regular_perm_gens()?, cap)
}

pub fn direct_power(g: &Arc<FiniteGroup>, m: usize, cap: usize) -> Result<Arc<FiniteGroup>> {
    if m == 0 {
        return Err(Error::Invalid("direct power needs a positive exponent".into()));
    }
    check_cap((g.order() as u128).pow(m as u32), cap)?;
    let mut acc = g.clone();
    for _ in 1..m {
        acc = direct_product(&acc, g, cap)?;
    }
    Ok(acc)
}

/// The subgroup of `L^k` of tuples lying in one coset of `N^k` over the
/// diagonal: generated by diagonal copies of `L`'s generators together with
/// copies of `N` in the first `k-1` coordinates.  `n_sub` must be a minimal
/// normal subgroup of `l`, given as its sorted element list.
pub fn crown_power(
    l: &Arc<FiniteGroup>,
    n_sub: &[u32],
    k: usize,
    cap: usize,
) -> Result<Arc<FiniteGroup>> {
    if k == 0 {
        return Err(Error::Invalid("crown power needs k >= 1".into()));
    }
    if !l.minimal_normal_subgroups().iter().any(|m| m == n_sub) {
        return Err(Error::Invalid(
            "crown base subgroup is not minimal normal".into(),
        ));
    }
    let expected = (n_sub.len() as u128).pow(k as u32 - 1) * l.order() as u128;
    check_cap(expected, cap)?;
    let n_gens = l.subgroup_generators(n_sub);
    let mut gens: Vec<Element> = Vec::new();
    match l.element(0) {
        Element::Perm(p0) => {
            let d = p0.len();
            let diag = |g: &Element| {
                if let Element::Perm(p) = g {
                    let mut im = Vec::with_capacity(d * k);
                    for blk in 0..k {
                        im.extend(p.iter().map(|&x| x + (blk * d) as u16));
                    }
                    Element::Perm(im)
                } else {
                    unreachable!()
                }
            };
            let coord = |g: &Element, blk: usize| {
                if let Element::Perm(p) = g {
                    let mut im: Vec<u16> = (0..(d * k) as u16).collect();
                    for (x, &px) in p.iter().enumerate() {
                        im[blk * d + x] = px + (blk * d) as u16;
                    }
                    Element::Perm(im)
                } else {
                    unreachable!()
                }
            };
            if d * k > u16::MAX as usize + 1 {
                return Err(Error::Invalid("crown degree exceeds 65536".into()));
            }
            for s in 0..l.num_gens() {
                gens.push(diag(l.element(l.gen_index(s))));
            }
            for blk in 0..k.saturating_sub(1) {
                for &ng in &n_gens {
                    gens.push(coord(l.element(ng), blk));
                }
            }
        }
        Element::Mat(m0) => {
            let f = m0.field().clone();
            let d = m0.nrows();
            let place = |g: &Matrix, blocks: &[usize]| {
                let mut m = Matrix::identity(f.clone(), d * k);
                for &blk in blocks {
                    for i in 0..d {
                        for j in 0..d {
                            m.set(blk * d + i, blk * d + j, g.get(i, j));
                        }
                    }
                }
                Element::Mat(m)
            };
            let all: Vec<usize> = (0..k).collect();
            for s in 0..l.num_gens() {
                if let Element::Mat(g) = l.element(l.gen_index(s)) {
                    gens.push(place(g, &all));
                }
            }
            for blk in 0..k.saturating_sub(1) {
                for &ng in &n_gens {
                    if let Element::Mat(g) = l.element(ng) {
                        gens.push(place(g, &[blk]));
                    }
                }
            }
        }
        Element::ZMat { .. } => {
            return Err(Error::Invalid(
                "crown power over integer matrix groups is not supported".into(),
            ));
        }
    }
    if gens.is_empty() {
        return Ok(FiniteGroup::trivial());
    }
    let g = FiniteGroup::enumerate(gens, cap)?;
    if g.order() as u128 != expected {
        return Err(Error::Invalid(format!(
            "crown power order {} differs from {}",
            g.order(),
            expected
        )));
    }
    Ok(g)
}
