//! Finite group engine.
//!
//! A [`FiniteGroup`] is built by breadth-first closure of a generator list.
//! Element indices are assigned layer by layer, sorting each layer by the
//! canonical element encoding, so the numbering depends only on the
//! generator list and never on hash iteration order.  All structural
//! operations (multiplication, inversion, conjugation, subgroup closures,
//! quotients) work on `u32` indices; payloads are only touched during
//! enumeration and lookups.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hasher;
use std::sync::{Arc, OnceLock};

use super::element::Element;
use crate::error::{Error, Result};

/// Default element-enumeration cap.
pub const DEFAULT_ENUM_CAP: usize = 100_000;

/// One conjugacy class: `members` ascending by element index, `rep` the
/// member with the least canonical encoding.
#[derive(Clone, Debug)]
pub struct ConjClass {
    pub rep: u32,
    pub members: Vec<u32>,
}

pub struct FiniteGroup {
    elems: Vec<Element>,
    /// Hash of encoding -> candidate indices (collisions resolved by payload
    /// comparison, so a 64-bit hash clash cannot corrupt lookups).
    index: HashMap<u64, Vec<u32>>,
    /// Element index of each kept generator slot, in the order given.
    gens: Vec<u32>,
    /// `parent[x] = (p, s)` with `x = p * gen(s)`; identity has slot `u32::MAX`.
    parent: Vec<(u32, u32)>,
    /// `right_gen[s][x] = x * gen(s)`.
    right_gen: Vec<Vec<u32>>,
    inv: Vec<u32>,
    classes: OnceLock<Vec<ConjClass>>,
    orders: OnceLock<Vec<u32>>,
}

fn enc_key(enc: &[u8]) -> u64 {
    let mut h = std::collections::hash_map::DefaultHasher::new();
    h.write(enc);
    h.finish()
}

fn find_in(elems: &[Element], index: &HashMap<u64, Vec<u32>>, enc: &[u8], e: &Element) -> Option<u32> {
    index
        .get(&enc_key(enc))?
        .iter()
        .copied()
        .find(|&i| elems[i as usize] == *e)
}

impl FiniteGroup {
    /// Enumerates the group generated by `generators`.  All payloads must
    /// share one kind and shape.  Fails with [`Error::CapExceeded`] once more
    /// than `cap` elements appear.
    pub fn enumerate(generators: Vec<Element>, cap: usize) -> Result<Arc<FiniteGroup>> {
        let first = generators
            .first()
            .ok_or_else(|| Error::Invalid("empty generator list".into()))?;
        let id = first.identity_like();
        for g in &generators {
            if g.identity_like() != id {
                return Err(Error::Invalid(
                    "generators have mixed kinds or shapes".into(),
                ));
            }
        }
        let mut kept: Vec<Element> = Vec::new();
        for g in generators {
            if !g.is_identity() && !kept.contains(&g) {
                kept.push(g);
            }
        }
        let nslots = kept.len();

        let mut elems = vec![id];
        let mut index: HashMap<u64, Vec<u32>> = HashMap::new();
        index.entry(enc_key(&elems[0].encode())).or_default().push(0);
        let mut parent: Vec<(u32, u32)> = vec![(0, u32::MAX)];
        let mut right_gen: Vec<Vec<u32>> = vec![Vec::new(); nslots];

        let mut lo = 0usize;
        while lo < elems.len() {
            let hi = elems.len();
            let width = hi - lo;
            let mut prods = vec![u32::MAX; width * nslots];
            // New payloads staged by encoding; sorted iteration below makes
            // in-layer index assignment canonical.
            let mut staged: BTreeMap<Vec<u8>, Vec<usize>> = BTreeMap::new();
            for x in lo..hi {
                for s in 0..nslots {
                    let y = elems[x].mul(&kept[s]);
                    let enc = y.encode();
                    let pos = (x - lo) * nslots + s;
                    match find_in(&elems, &index, &enc, &y) {
                        Some(i) => prods[pos] = i,
                        None => staged.entry(enc).or_default().push(pos),
                    }
                }
            }
            for (enc, positions) in staged {
                if elems.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                let idx = elems.len() as u32;
                let pos0 = positions[0];
                let (x, s) = (lo + pos0 / nslots, pos0 % nslots);
                let payload = elems[x].mul(&kept[s]);
                index.entry(enc_key(&enc)).or_default().push(idx);
                elems.push(payload);
                parent.push((x as u32, s as u32));
                for pos in positions {
                    prods[pos] = idx;
                }
            }
            for (s, rg) in right_gen.iter_mut().enumerate() {
                for x in lo..hi {
                    rg.push(prods[(x - lo) * nslots + s]);
                }
            }
            lo = hi;
        }

        let gens: Vec<u32> = kept
            .iter()
            .map(|g| find_in(&elems, &index, &g.encode(), g).expect("generator enumerated"))
            .collect();
        let gen_inv: Vec<u32> = kept
            .iter()
            .map(|g| {
                let gi = g.inverse();
                find_in(&elems, &index, &gi.encode(), &gi).expect("inverse enumerated")
            })
            .collect();

        // inv[p * g_s] = g_s^-1 * p^-1; parents precede children, so a single
        // ascending pass fills the table with index arithmetic only.
        let n = elems.len();
        let mut inv = vec![0u32; n];
        for idx in 1..n {
            let (p, s) = parent[idx];
            inv[idx] = mult_raw(&parent, &right_gen, gen_inv[s as usize], inv[p as usize]);
        }

        Ok(Arc::new(FiniteGroup {
            elems,
            index,
            gens,
            parent,
            right_gen,
            inv,
            classes: OnceLock::new(),
            orders: OnceLock::new(),
        }))
    }

    /// Group of order one, realized on a single point.
    pub fn trivial() -> Arc<FiniteGroup> {
        FiniteGroup::enumerate(vec![Element::Perm(vec![0])], 2).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn element(&self, x: u32) -> &Element {
        &self.elems[x as usize]
    }

    pub fn find_element(&self, e: &Element) -> Option<u32> {
        find_in(&self.elems, &self.index, &e.encode(), e)
    }

    /// Number of generator slots (identity and duplicate inputs dropped).
    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    /// Element index of generator slot `s`.
    pub fn gen_index(&self, s: usize) -> u32 {
        self.gens[s]
    }

    pub fn gen_indices(&self) -> &[u32] {
        &self.gens
    }

    /// `x * gen(s)` by table lookup.
    pub fn right_by_gen(&self, s: usize, x: u32) -> u32 {
        self.right_gen[s][x as usize]
    }

    /// BFS link `(parent, slot)` with `x = parent * gen(slot)`.
    pub fn parent_link(&self, x: u32) -> (u32, u32) {
        self.parent[x as usize]
    }

    /// Generator word for `x`, to be applied left to right from the identity.
    pub fn word(&self, x: u32) -> Vec<u32> {
        let mut w = Vec::new();
        let mut cur = x;
        while cur != 0 {
            let (p, s) = self.parent[cur as usize];
            w.push(s);
            cur = p;
        }
        w.reverse();
        w
    }

    pub fn mult_word(&self, a: u32, word: &[u32]) -> u32 {
        word.iter().fold(a, |acc, &s| self.right_gen[s as usize][acc as usize])
    }

    pub fn mult(&self, a: u32, b: u32) -> u32 {
        mult_raw(&self.parent, &self.right_gen, a, b)
    }

    pub fn inv_of(&self, x: u32) -> u32 {
        self.inv[x as usize]
    }

    /// `g^-1 * x * g`.
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mult(self.mult(self.inv_of(g), x), g)
    }

    pub fn element_order(&self, x: u32) -> u32 {
        if x == 0 {
            return 1;
        }
        let w = self.word(x);
        // y tracks x^k; the loop exits at the least k with x^k = 1.
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mult_word(y, &w);
            k += 1;
        }
        k
    }

    /// Orders of every element, computed once on demand.
    pub fn orders_table(&self) -> &[u32] {
        self.orders
            .get_or_init(|| (0..self.order() as u32).map(|x| self.element_order(x)).collect())
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().all(|&a| {
            self.gens
                .iter()
                .all(|&b| self.mult(a, b) == self.mult(b, a))
        })
    }

    /// Conjugacy classes, deterministically ordered by representative
    /// encoding.  Orbits are closed under conjugation by generators, which
    /// suffices since conjugation by a word is a composite of those maps.
    pub fn conjugacy_classes(&self) -> &[ConjClass] {
        self.classes.get_or_init(|| {
            let n = self.order();
            let mut seen = vec![false; n];
            let mut classes = Vec::new();
            for x0 in 0..n as u32 {
                if seen[x0 as usize] {
                    continue;
                }
                seen[x0 as usize] = true;
                let mut members = vec![x0];
                let mut stack = vec![x0];
                while let Some(y) = stack.pop() {
                    for &g in &self.gens {
                        let c = self.conj(y, g);
                        if !seen[c as usize] {
                            seen[c as usize] = true;
                            members.push(c);
                            stack.push(c);
                        }
                    }
                }
                members.sort_unstable();
                let rep = *members
                    .iter()
                    .min_by_key(|&&i| self.elems[i as usize].encode())
                    .expect("nonempty class");
                classes.push(ConjClass { rep, members });
            }
            classes.sort_by(|a, b| {
                self.elems[a.rep as usize]
                    .encode()
                    .cmp(&self.elems[b.rep as usize].encode())
            });
            classes
        })
    }

    pub fn class_reps(&self) -> Vec<u32> {
        self.conjugacy_classes().iter().map(|c| c.rep).collect()
    }

    /// Class representatives of order coprime to `p`, in canonical class order.
    pub fn p_regular_reps(&self, p: u32) -> Vec<u32> {
        self.conjugacy_classes()
            .iter()
            .map(|c| c.rep)
            .filter(|&r| self.element_order(r) % p != 0)
            .collect()
    }

    /// Elements commuting with every element of `xs`, ascending.
    pub fn centralizer(&self, xs: &[u32]) -> Vec<u32> {
        let words: Vec<Vec<u32>> = xs.iter().map(|&x| self.word(x)).collect();
        (0..self.order() as u32)
            .filter(|&y| {
                let wy = self.word(y);
                xs.iter()
                    .zip(&words)
                    .all(|(&x, wx)| self.mult_word(x, &wy) == self.mult_word(y, wx))
            })
            .collect()
    }

    pub fn centre(&self) -> Vec<u32> {
        self.centralizer(&self.gens.clone())
    }

    /// Subgroup generated by `seed`, as a sorted index list.
    pub fn subgroup_closure(&self, seed: &[u32]) -> Vec<u32> {
        let words: Vec<Vec<u32>> = seed.iter().map(|&s| self.word(s)).collect();
        let mut in_h = vec![false; self.order()];
        in_h[0] = true;
        let mut stack = vec![0u32];
        while let Some(x) = stack.pop() {
            for w in &words {
                let y = self.mult_word(x, w);
                if !in_h[y as usize] {
                    in_h[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order() as u32).filter(|&x| in_h[x as usize]).collect()
    }

    /// Greedy small generating set for a subgroup given as its full sorted
    /// element list.  Scans ascending and keeps elements that enlarge the
    /// closure, so the result is deterministic.
    pub fn subgroup_generators(&self, sub: &[u32]) -> Vec<u32> {
        let mut gens: Vec<u32> = Vec::new();
        let mut closure = vec![0u32];
        for &x in sub {
            if closure.binary_search(&x).is_err() {
                gens.push(x);
                closure = self.subgroup_closure(&gens);
                if closure.len() == sub.len() {
                    break;
                }
            }
        }
        gens
    }

    /// Validates that `sub` is a sorted subgroup element list and returns a
    /// greedy generating set for it.
    pub fn require_subgroup(&self, sub: &[u32]) -> Result<Vec<u32>> {
        if sub.first() != Some(&0) {
            return Err(Error::Invalid("subgroup list must start with the identity".into()));
        }
        if !sub.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Invalid("subgroup list must be strictly ascending".into()));
        }
        if sub.last().map(|&x| x as usize >= self.order()).unwrap_or(false) {
            return Err(Error::Invalid("subgroup index out of range".into()));
        }
        let gens = self.subgroup_generators(sub);
        if self.subgroup_closure(&gens) != sub {
            return Err(Error::Invalid("element list is not closed under products".into()));
        }
        Ok(gens)
    }

    /// True when the subgroup `sub` (sorted element list) is normal.
    pub fn is_normal(&self, sub: &[u32]) -> bool {
        sub.iter().all(|&h| {
            self.gens
                .iter()
                .all(|&g| sub.binary_search(&self.conj(h, g)).is_ok())
        })
    }

    /// Smallest normal subgroup containing `seed`.
    pub fn normal_closure(&self, seed: &[u32]) -> Vec<u32> {
        let mut gens: Vec<u32> = seed.to_vec();
        gens.sort_unstable();
        gens.dedup();
        loop {
            let h = self.subgroup_closure(&gens);
            let mut fresh = Vec::new();
            for &x in &h {
                for &g in &self.gens {
                    let c = self.conj(x, g);
                    if h.binary_search(&c).is_err() {
                        fresh.push(c);
                    }
                }
            }
            if fresh.is_empty() {
                return h;
            }
            gens = h;
            gens.extend(fresh);
            gens.sort_unstable();
            gens.dedup();
        }
    }

    /// Minimal normal subgroups, ordered by (order, element list).  Every
    /// minimal normal subgroup is the normal closure of any of its nontrivial
    /// elements, so closures of class representatives cover all of them.
    pub fn minimal_normal_subgroups(&self) -> Vec<Vec<u32>> {
        if self.order() == 1 {
            return Vec::new();
        }
        let mut cands: Vec<Vec<u32>> = Vec::new();
        for c in self.conjugacy_classes() {
            if c.rep == 0 {
                continue;
            }
            let n = self.normal_closure(&[c.rep]);
            if !cands.contains(&n) {
                cands.push(n);
            }
        }
        let mut minimal: Vec<Vec<u32>> = cands
            .iter()
            .filter(|n| {
                !cands
                    .iter()
                    .any(|m| m.len() < n.len() && is_sorted_subset(m, n))
            })
            .cloned()
            .collect();
        minimal.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        minimal
    }

    /// Representatives of the left cosets `xH`, ascending by element index.
    pub fn left_transversal(&self, sub: &[u32]) -> Vec<u32> {
        let words: Vec<Vec<u32>> = sub.iter().map(|&h| self.word(h)).collect();
        let mut seen = vec![false; self.order()];
        let mut reps = Vec::new();
        for x in 0..self.order() as u32 {
            if !seen[x as usize] {
                reps.push(x);
                for w in &words {
                    seen[self.mult_word(x, w) as usize] = true;
                }
            }
        }
        reps
    }

    /// Representatives of the right cosets `Hx`, ascending by element index.
    pub fn right_transversal(&self, sub: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.order()];
        let mut reps = Vec::new();
        for x in 0..self.order() as u32 {
            if !seen[x as usize] {
                reps.push(x);
                let wx = self.word(x);
                for &h in sub {
                    seen[self.mult_word(h, &wx) as usize] = true;
                }
            }
        }
        reps
    }

    /// Quotient by a normal subgroup, realized as the permutation action on
    /// left cosets by right multiplication, together with the projection.
    pub fn quotient(
        self: &Arc<Self>,
        sub: &[u32],
        cap: usize,
    ) -> Result<(Arc<FiniteGroup>, super::hom::Homomorphism)> {
        self.require_subgroup(sub)?;
        if !self.is_normal(sub) {
            return Err(Error::Invalid("subgroup is not normal".into()));
        }
        let n = self.order();
        let ncosets = n / sub.len();
        if ncosets > u16::MAX as usize + 1 {
            return Err(Error::Invalid(format!(
                "quotient degree {ncosets} exceeds 65536"
            )));
        }
        let words: Vec<Vec<u32>> = sub.iter().map(|&h| self.word(h)).collect();
        let mut coset_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n as u32 {
            if coset_of[x as usize] == u32::MAX {
                let c = reps.len() as u32;
                reps.push(x);
                for w in &words {
                    coset_of[self.mult_word(x, w) as usize] = c;
                }
            }
        }
        let imgs: Vec<Element> = (0..self.num_gens())
            .map(|s| {
                let im = reps
                    .iter()
                    .map(|&r| coset_of[self.right_by_gen(s, r) as usize] as u16)
                    .collect();
                Element::Perm(im)
            })
            .collect();
        let q = if imgs.is_empty() {
            FiniteGroup::trivial()
        } else {
            FiniteGroup::enumerate(imgs.clone(), cap)?
        };
        let gen_images: Vec<u32> = imgs
            .iter()
            .map(|e| q.find_element(e).expect("generator image enumerated"))
            .collect();
        let proj = super::hom::Homomorphism::new(self.clone(), q.clone(), gen_images)?;
        Ok((q, proj))
    }

    /// Standalone group for a subgroup, plus the embedding table sending the
    /// standalone element index to the parent index.
    pub fn subgroup_as_group(
        self: &Arc<Self>,
        sub: &[u32],
        cap: usize,
    ) -> Result<(Arc<FiniteGroup>, Vec<u32>)> {
        let gens = self.require_subgroup(sub)?;
        let payloads: Vec<Element> = if gens.is_empty() {
            vec![self.elems[0].identity_like()]
        } else {
            gens.iter().map(|&g| self.elems[g as usize].clone()).collect()
        };
        let h = FiniteGroup::enumerate(payloads, cap)?;
        debug_assert_eq!(h.order(), sub.len());
        let embed = (0..h.order() as u32)
            .map(|i| {
                self.find_element(h.element(i))
                    .expect("subgroup element found in parent")
            })
            .collect();
        Ok((h, embed))
    }

    /// Right-regular permutation images of the generators; the backbone for
    /// converting matrix groups into permutation groups.
    pub fn regular_perm_gens(&self) -> Result<Vec<Element>> {
        if self.order() > u16::MAX as usize + 1 {
            return Err(Error::Invalid(format!(
                "regular representation degree {} exceeds 65536",
                self.order()
            )));
        }
        Ok((0..self.num_gens())
            .map(|s| Element::Perm(self.right_gen[s].iter().map(|&x| x as u16).collect()))
            .collect())
    }

    /// Least `d` such that some `d`-tuple generates, testing tuples up to
    /// simultaneous conjugacy: first entries range over class representatives,
    /// second entries over orbit representatives of centralizer conjugation,
    /// deeper entries over everything outside the running closure.
    pub fn min_generators(&self, max_d: usize) -> Result<usize> {
        if self.order() == 1 {
            return Ok(0);
        }
        for d in 1..=max_d {
            let mut tuple = Vec::new();
            if self.extend_tuple(&mut tuple, d) {
                return Ok(d);
            }
        }
        Err(Error::Invalid(format!(
            "no generating tuple of size <= {max_d} found"
        )))
    }

    fn extend_tuple(&self, tuple: &mut Vec<u32>, d: usize) -> bool {
        let closure = self.subgroup_closure(tuple);
        if closure.len() == self.order() {
            return true;
        }
        if tuple.len() == d {
            return false;
        }
        let candidates: Vec<u32> = match tuple.len() {
            0 => self.class_reps().into_iter().filter(|&r| r != 0).collect(),
            1 => {
                // Conjugating the pair by the centralizer of the fixed first
                // entry reaches every pair class, so orbit reps suffice.
                let cz = self.centralizer(&tuple.clone());
                let czgens = self.subgroup_generators(&cz);
                let mut seen = vec![false; self.order()];
                let mut reps = Vec::new();
                for y in 0..self.order() as u32 {
                    if seen[y as usize] {
                        continue;
                    }
                    if closure.binary_search(&y).is_err() {
                        reps.push(y);
                    }
                    let mut stack = vec![y];
                    seen[y as usize] = true;
                    while let Some(z) = stack.pop() {
                        for &c in &czgens {
                            let zc = self.conj(z, c);
                            if !seen[zc as usize] {
                                seen[zc as usize] = true;
                                stack.push(zc);
                            }
                        }
                    }
                }
                reps
            }
            _ => (0..self.order() as u32)
                .filter(|&y| closure.binary_search(&y).is_err())
                .collect(),
        };
        for y in candidates {
            tuple.push(y);
            if self.extend_tuple(tuple, d) {
                return true;
            }
            tuple.pop();
        }
        false
    }

    /// Short human-readable description of the payload kind.
    pub fn kind_summary(&self) -> String {
        match &self.elems[0] {
            Element::Perm(p) => format!("perm(deg {})", p.len()),
            Element::Mat(a) => format!("mat({}x{} over GF({}))", a.nrows(), a.ncols(), a.field().q),
            Element::ZMat { m, n, .. } => format!("zmat({n}x{n} mod {m})"),
        }
    }
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup(order {}, {})", self.order(), self.kind_summary())
    }
}

fn mult_raw(parent: &[(u32, u32)], right_gen: &[Vec<u32>], a: u32, b: u32) -> u32 {
    let mut w = Vec::new();
    let mut cur = b;
    while cur != 0 {
        let (p, s) = parent[cur as usize];
        w.push(s);
        cur = p;
    }
    w.iter()
        .rev()
        .fold(a, |acc, &s| right_gen[s as usize][acc as usize])
}

/// Subset test for strictly ascending index lists.
pub fn is_sorted_subset(a: &[u32], b: &[u32]) -> bool {
    let mut it = b.iter();
    'outer: for x in a {
        for y in it.by_ref() {
            match y.cmp(x) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::super::catalog;
    use super::*;

    /// Every normal subgroup is a union of conjugacy classes containing the
    /// identity; at small order we can afford to test all class unions for
    /// closure under multiplication.
    fn normal_subgroups_by_class_unions(g: &FiniteGroup) -> Vec<Vec<u32>> {
        let classes = g.conjugacy_classes();
        let id_pos = classes
            .iter()
            .position(|c| c.members == [0])
            .expect("identity class");
        let mut found = Vec::new();
        for mask in 0u32..1 << classes.len() {
            if mask & (1 << id_pos) == 0 {
                continue;
            }
            let mut members: Vec<u32> = classes
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .flat_map(|(_, c)| c.members.iter().copied())
                .collect();
            members.sort_unstable();
            if g.order() % members.len() != 0 {
                continue;
            }
            let closed = members.iter().all(|&a| {
                members
                    .iter()
                    .all(|&b| members.binary_search(&g.mult(a, b)).is_ok())
            });
            if closed {
                found.push(members);
            }
        }
        found
    }

    fn minimal_nontrivial(subs: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let mut mins: Vec<Vec<u32>> = subs
            .iter()
            .filter(|n| n.len() > 1)
            .filter(|n| {
                !subs
                    .iter()
                    .any(|m| m.len() > 1 && m.len() < n.len() && is_sorted_subset(m, n))
            })
            .cloned()
            .collect();
        mins.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        mins
    }

    #[test]
    fn s4_classes_partition_with_known_sizes() {
        let g = catalog::sym(4, 1000).unwrap();
        assert_eq!(g.order(), 24);
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.members.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        let mut all: Vec<u32> = g
            .conjugacy_classes()
            .iter()
            .flat_map(|c| c.members.iter().copied())
            .collect();
        all.sort_unstable();
        assert_eq!(all, (0..24).collect::<Vec<u32>>());
    }

    #[test]
    fn sl2_f5_has_nine_classes_five_of_them_5_regular() {
        let g = catalog::sl(2, 5, 1000).unwrap();
        assert_eq!(g.order(), 120);
        assert_eq!(g.conjugacy_classes().len(), 9);
        assert_eq!(g.p_regular_reps(5).len(), 5);
        assert_eq!(g.centre().len(), 2);
    }

    #[test]
    fn minimal_normal_subgroups_match_class_union_oracle() {
        for (g, expected_orders) in [
            (catalog::sym(4, 1000).unwrap(), vec![4]),
            (
                catalog::direct_product(
                    &catalog::cyclic(2, 10).unwrap(),
                    &catalog::cyclic(3, 10).unwrap(),
                    100,
                )
                .unwrap(),
                vec![2, 3],
            ),
            (catalog::alt(5, 1000).unwrap(), vec![60]),
        ] {
            let got = g.minimal_normal_subgroups();
            let oracle = minimal_nontrivial(&normal_subgroups_by_class_unions(&g));
            assert_eq!(got, oracle);
            let orders: Vec<usize> = got.iter().map(|n| n.len()).collect();
            assert_eq!(orders, expected_orders);
            for n in &got {
                assert!(g.is_normal(n));
            }
        }
    }

    #[test]
    fn quotient_s4_by_v4_is_s3_shaped() {
        let g = catalog::sym(4, 1000).unwrap();
        let v4 = g
            .minimal_normal_subgroups()
            .into_iter()
            .next()
            .expect("V4 present");
        assert_eq!(v4.len(), 4);
        let (q, proj) = g.quotient(&v4, 1000).unwrap();
        assert_eq!(q.order(), 6);
        assert!(!q.is_abelian());
        assert!(proj.verify());
        assert_eq!(proj.kernel(), v4);
        assert!(proj.is_surjective());
    }

    #[test]
    fn quotient_by_trivial_subgroup_is_bijective() {
        let g = catalog::alt(4, 1000).unwrap();
        let (q, proj) = g.quotient(&[0], 1000).unwrap();
        assert_eq!(q.order(), g.order());
        assert!(proj.verify());
        assert_eq!(proj.kernel(), vec![0]);
    }

    #[test]
    fn sl2_f5_central_quotient_has_order_60() {
        let g = catalog::sl(2, 5, 1000).unwrap();
        let z = g.centre();
        let (q, proj) = g.quotient(&z, 1000).unwrap();
        assert_eq!(q.order(), 60);
        assert!(proj.verify());
    }

    #[test]
    fn quotient_rejects_non_normal_subgroup() {
        let g = catalog::sym(3, 100).unwrap();
        // A 2-element subgroup generated by a transposition is not normal.
        let x = (1..g.order() as u32)
            .find(|&x| g.element_order(x) == 2)
            .unwrap();
        let mut sub = vec![0, x];
        sub.sort_unstable();
        assert!(!g.is_normal(&sub));
        assert!(g.quotient(&sub, 100).is_err());
    }

    #[test]
    fn inverse_table_and_associativity_spot_checks() {
        let g = catalog::sl(2, 4, 1000).unwrap();
        assert_eq!(g.order(), 60);
        for x in 0..g.order() as u32 {
            assert_eq!(g.mult(x, g.inv_of(x)), 0);
            assert_eq!(g.mult(g.inv_of(x), x), 0);
        }
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 60) as u32
        };
        for _ in 0..200 {
            let (a, b, c) = (next(), next(), next());
            assert_eq!(g.mult(a, g.mult(b, c)), g.mult(g.mult(a, b), c));
        }
    }

    #[test]
    fn words_reproduce_elements() {
        let g = catalog::sym(4, 1000).unwrap();
        for x in 0..g.order() as u32 {
            let w = g.word(x);
            assert_eq!(g.mult_word(0, &w), x);
        }
    }

    #[test]
    fn transversals_have_index_many_reps() {
        let g = catalog::sym(4, 1000).unwrap();
        let a4: Vec<u32> = (0..24)
            .filter(|&x| {
                // even permutations: squares of the 4-cycle class etc; use
                // order parity via sign of the permutation payload instead.
                let Element::Perm(p) = g.element(x) else { unreachable!() };
                let mut sign = 0usize;
                for i in 0..4 {
                    for j in i + 1..4 {
                        if p[i] > p[j] {
                            sign += 1;
                        }
                    }
                }
                sign % 2 == 0
            })
            .collect();
        assert_eq!(a4.len(), 12);
        assert!(g.require_subgroup(&a4).is_ok());
        assert_eq!(g.left_transversal(&a4).len(), 2);
        assert_eq!(g.right_transversal(&a4).len(), 2);
        // Coset reps plus subgroup words cover the group exactly once.
        let reps = g.left_transversal(&a4);
        let mut covered: Vec<u32> = reps
            .iter()
            .flat_map(|&r| a4.iter().map(move |&h| (r, h)))
            .map(|(r, h)| g.mult(r, h))
            .collect();
        covered.sort_unstable();
        assert_eq!(covered, (0..24).collect::<Vec<u32>>());
    }

    #[test]
    fn subgroup_closure_and_greedy_generators_round_trip() {
        let g = catalog::alt(5, 1000).unwrap();
        let x = (1..g.order() as u32).find(|&x| g.element_order(x) == 5).unwrap();
        let sub = g.subgroup_closure(&[x]);
        assert_eq!(sub.len(), 5);
        let gens = g.subgroup_generators(&sub);
        assert_eq!(g.subgroup_closure(&gens), sub);
        assert!(g.require_subgroup(&sub).is_ok());
        assert!(g.require_subgroup(&[0, x]).is_err());
    }

    #[test]
    fn normal_closure_of_three_cycle_in_a5_is_everything() {
        let g = catalog::alt(5, 1000).unwrap();
        let x = (1..g.order() as u32).find(|&x| g.element_order(x) == 3).unwrap();
        assert_eq!(g.normal_closure(&[x]).len(), 60);
    }

    #[test]
    fn min_generators_known_values() {
        let c6 = catalog::cyclic(6, 100).unwrap();
        assert_eq!(c6.min_generators(3).unwrap(), 1);
        let c2sq = catalog::elementary(2, 2, 100).unwrap();
        assert_eq!(c2sq.min_generators(3).unwrap(), 2);
        let s4 = catalog::sym(4, 1000).unwrap();
        assert_eq!(s4.min_generators(3).unwrap(), 2);
        let a5 = catalog::alt(5, 1000).unwrap();
        assert_eq!(a5.min_generators(3).unwrap(), 2);
        assert_eq!(FiniteGroup::trivial().min_generators(3).unwrap(), 0);
    }

    #[test]
    fn enumeration_order_is_reproducible() {
        let a = catalog::sl(2, 5, 1000).unwrap();
        let b = catalog::sl(2, 5, 1000).unwrap();
        for x in 0..a.order() as u32 {
            assert_eq!(a.element(x), b.element(x));
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            catalog::sym(5, 100),
            Err(crate::Error::CapExceeded { cap: 100 })
        ));
    }

    #[test]
    fn sorted_subset_helper() {
        assert!(is_sorted_subset(&[1, 3], &[0, 1, 2, 3]));
        assert!(!is_sorted_subset(&[1, 4], &[0, 1, 2, 3]));
        assert!(is_sorted_subset(&[], &[0]));
        assert!(!is_sorted_subset(&[5], &[]));
    }
}
