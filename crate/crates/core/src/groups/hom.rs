//! Homomorphisms between enumerated groups and exhaustive image search.

use std::sync::{Arc, OnceLock};

use super::group::FiniteGroup;
use crate::error::{Error, Result};

/// A homomorphism determined by the images of the source generators.
/// The full image table is materialized lazily by walking the source BFS
/// tree, so `apply` is a table lookup after the first call.
#[derive(Clone)]
pub struct Homomorphism {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    gen_images: Vec<u32>,
    table: OnceLock<Vec<u32>>,
}

impl Homomorphism {
    pub fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        gen_images: Vec<u32>,
    ) -> Result<Homomorphism> {
        if gen_images.len() != source.num_gens() {
            return Err(Error::Invalid(format!(
                "expected {} generator images, got {}",
                source.num_gens(),
                gen_images.len()
            )));
        }
        Ok(Homomorphism { source, target, gen_images, table: OnceLock::new() })
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn gen_images(&self) -> &[u32] {
        &self.gen_images
    }

    pub fn table(&self) -> &[u32] {
        self.table.get_or_init(|| {
            let n = self.source.order();
            let mut t = vec![0u32; n];
            for x in 1..n as u32 {
                let (p, s) = self.source.parent_link(x);
                t[x as usize] = self
                    .target
                    .mult(t[p as usize], self.gen_images[s as usize]);
            }
            t
        })
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.table()[x as usize]
    }

    /// Full multiplicative check over every (element, generator) pair; this
    /// covers all products by induction over BFS words.
    pub fn verify(&self) -> bool {
        let t = self.table();
        (0..self.source.order() as u32).all(|x| {
            (0..self.source.num_gens()).all(|s| {
                t[self.source.right_by_gen(s, x) as usize]
                    == self.target.mult(t[x as usize], self.gen_images[s])
            })
        })
    }

    pub fn kernel(&self) -> Vec<u32> {
        let t = self.table();
        (0..self.source.order() as u32)
            .filter(|&x| t[x as usize] == 0)
            .collect()
    }

    /// Sorted element indices of the image subgroup.
    pub fn image(&self) -> Vec<u32> {
        let mut im: Vec<u32> = self.table().to_vec();
        im.sort_unstable();
        im.dedup();
        im
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.order()
    }
}

impl std::fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Homomorphism({:?} -> {:?}, gen images {:?})",
            self.source, self.target, self.gen_images
        )
    }
}

/// Subgroup generated by a prefix of the generator slots, with enough BFS
/// structure to verify candidate images against every product relation.
struct PrefixTable {
    /// Source element index per position; position 0 is the identity.
    members: Vec<u32>,
    /// `(position, slot)` link producing each non-identity position.
    parent: Vec<(u32, u32)>,
    /// `edges[s][pos]` = position of `members[pos] * gen(s)` for each slot
    /// `s` below the prefix length.
    edges: Vec<Vec<u32>>,
}

fn prefix_table(g: &FiniteGroup, nslots: usize) -> PrefixTable {
    let mut members = vec![0u32];
    let mut parent = vec![(0u32, u32::MAX)];
    let mut pos_of = std::collections::HashMap::new();
    pos_of.insert(0u32, 0u32);
    let mut head = 0usize;
    while head < members.len() {
        let x = members[head];
        for s in 0..nslots {
            let y = g.right_by_gen(s, x);
            if !pos_of.contains_key(&y) {
                pos_of.insert(y, members.len() as u32);
                members.push(y);
                parent.push((head as u32, s as u32));
            }
        }
        head += 1;
    }
    let edges = (0..nslots)
        .map(|s| {
            members
                .iter()
                .map(|&x| pos_of[&g.right_by_gen(s, x)])
                .collect()
        })
        .collect();
    PrefixTable { members, parent, edges }
}

/// Search state shared across the recursion.
struct HomSearch<'a> {
    source: &'a Arc<FiniteGroup>,
    target: &'a Arc<FiniteGroup>,
    prefixes: Vec<PrefixTable>,
    src_gen_orders: Vec<u32>,
    tgt_orders: Vec<u32>,
    onto_only: bool,
    limit: Option<usize>,
    found: Vec<Homomorphism>,
}

impl HomSearch<'_> {
    /// Propagates candidate images over the prefix subgroup and checks every
    /// product edge.  At full depth this is a complete verification on G.
    fn consistent(&self, images: &[u32]) -> Option<Vec<u32>> {
        let p = &self.prefixes[images.len() - 1];
        let mut phi = vec![0u32; p.members.len()];
        for pos in 1..p.members.len() {
            let (pp, s) = p.parent[pos];
            phi[pos] = self.target.mult(phi[pp as usize], images[s as usize]);
        }
        for (s, edge) in p.edges.iter().enumerate() {
            for pos in 0..p.members.len() {
                if phi[edge[pos] as usize] != self.target.mult(phi[pos], images[s]) {
                    return None;
                }
            }
        }
        Some(phi)
    }

    fn at_limit(&self) -> bool {
        self.limit.map(|l| self.found.len() >= l).unwrap_or(false)
    }

    fn recurse(&mut self, images: &mut Vec<u32>) {
        let depth = images.len();
        for t in 0..self.target.order() as u32 {
            if self.at_limit() {
                return;
            }
            if self.src_gen_orders[depth] % self.tgt_orders[t as usize] != 0 {
                continue;
            }
            images.push(t);
            if let Some(phi) = self.consistent(images) {
                if images.len() == self.source.num_gens() {
                    let onto = {
                        let mut seen = vec![false; self.target.order()];
                        let mut count = 0usize;
                        for &v in &phi {
                            if !seen[v as usize] {
                                seen[v as usize] = true;
                                count += 1;
                            }
                        }
                        count == self.target.order()
                    };
                    if !self.onto_only || onto {
                        self.found.push(
                            Homomorphism::new(
                                self.source.clone(),
                                self.target.clone(),
                                images.clone(),
                            )
                            .expect("image count matches slots"),
                        );
                    }
                } else {
                    self.recurse(images);
                }
            }
            images.pop();
        }
    }
}

/// All homomorphisms (or only the surjections) from `source` to `target`,
/// ordered lexicographically by generator image tuple.  `budget` caps the
/// raw search space `|target|^slots`; `limit` stops after that many results.
pub fn hom_search(
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
    onto_only: bool,
    budget: u128,
    limit: Option<usize>,
) -> Result<Vec<Homomorphism>> {
    let slots = source.num_gens();
    let mut needed: u128 = 1;
    for _ in 0..slots {
        needed = needed.saturating_mul(target.order() as u128);
    }
    if needed > budget {
        return Err(Error::BudgetExceeded { budget, needed });
    }
    if slots == 0 {
        // Trivial source: only the trivial map, surjective iff target is trivial.
        let h = Homomorphism::new(source.clone(), target.clone(), Vec::new())?;
        if onto_only && target.order() > 1 {
            return Ok(Vec::new());
        }
        return Ok(vec![h]);
    }
    let mut search = HomSearch {
        source,
        target,
        prefixes: (1..=slots).map(|j| prefix_table(source, j)).collect(),
        src_gen_orders: (0..slots)
            .map(|s| source.element_order(source.gen_index(s)))
            .collect(),
        tgt_orders: target.orders_table().to_vec(),
        onto_only,
        limit,
        found: Vec::new(),
    };
    debug_assert_eq!(
        search.prefixes[slots - 1].members.len(),
        source.order(),
        "last prefix covers the whole group"
    );
    let mut images = Vec::new();
    search.recurse(&mut images);
    Ok(search.found)
}

pub fn count_homomorphisms(
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
    budget: u128,
) -> Result<usize> {
    Ok(hom_search(source, target, false, budget, None)?.len())
}

pub fn count_epimorphisms(
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
    budget: u128,
) -> Result<usize> {
    Ok(hom_search(source, target, true, budget, None)?.len())
}

pub fn epimorphism_exists(
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
    budget: u128,
) -> Result<bool> {
    Ok(!hom_search(source, target, true, budget, Some(1))?.is_empty())
}
