use crate::fqlinalg::{FieldRef, Matrix};
use crate::groups::{Element, FiniteGroup, Homomorphism};
use crate::{Error, Result};
use std::collections::HashMap;
use std::sync::Arc;

/// Default upper bound on module dimension accepted by the regular-module
/// constructor and by chop.
pub const DEFAULT_CHOP_CAP: usize = 2000;

/// Module over a group algebra F[G], given by one invertible matrix per
/// generator slot. The action of an arbitrary element is the product of the
/// generator actions along its BFS word, so any matrix assignment that is
/// consistent on the multiplication table defines the same module.
#[derive(Clone)]
pub struct GModule {
    group: Arc<FiniteGroup>,
    field: FieldRef,
    dim: usize,
    actions: Vec<Matrix>,
}

impl GModule {
    pub fn new(group: Arc<FiniteGroup>, field: FieldRef, actions: Vec<Matrix>) -> Result<GModule> {
        if actions.len() != group.num_gens() {
            return Err(Error::Invalid(format!(
                "expected {} generator actions, got {}",
                group.num_gens(),
                actions.len()
            )));
        }
        let dim = actions.first().map_or(0, |a| a.nrows());
        for a in &actions {
            if a.nrows() != dim || a.ncols() != dim {
                return Err(Error::DimMismatch(format!(
                    "action is {}x{}, module dimension {}",
                    a.nrows(),
                    a.ncols(),
                    dim
                )));
            }
            if a.field() != &field {
                return Err(Error::FieldMismatch("action over wrong field".into()));
            }
            if a.try_inverse().is_none() {
                return Err(Error::Invalid("generator action is singular".into()));
            }
        }
        Ok(GModule { group, field, dim, actions })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
    pub fn field(&self) -> &FieldRef {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }
    pub fn action(&self, slot: usize) -> &Matrix {
        &self.actions[slot]
    }

    /// Action matrix of an arbitrary element, as the product of generator
    /// actions along its word.
    pub fn element_action(&self, x: u32) -> Matrix {
        let mut a = Matrix::identity(self.field.clone(), self.dim);
        for s in self.group.word(x) {
            a = a.mul(&self.actions[s as usize]);
        }
        a
    }

    /// The one-dimensional module with every generator acting trivially.
    pub fn trivial(group: Arc<FiniteGroup>, field: FieldRef) -> GModule {
        let actions = (0..group.num_gens()).map(|_| Matrix::identity(field.clone(), 1)).collect();
        GModule { group, field, dim: 1, actions }
    }

    /// The group algebra F[G] as a module over itself: basis e_x indexed by
    /// the elements, generators acting by translation e_x -> e_{xg}.
    pub fn regular(group: Arc<FiniteGroup>, field: FieldRef, cap: usize) -> Result<GModule> {
        let n = group.order();
        if n > cap {
            return Err(Error::ChopCapExceeded { dim: n, cap });
        }
        let actions = (0..group.num_gens())
            .map(|s| {
                Matrix::from_fn(field.clone(), n, n, |i, j| {
                    u16::from(group.right_by_gen(s, i as u32) == j as u32)
                })
            })
            .collect();
        Ok(GModule { group, field, dim: n, actions })
    }

    /// Permutation module of the natural action on points. Requires a
    /// permutation group.
    pub fn permutation(group: Arc<FiniteGroup>, field: FieldRef) -> Result<GModule> {
        if !matches!(group.element(0), Element::Perm(_)) {
            return Err(Error::Invalid(
                "permutation module requires a permutation group".into(),
            ));
        }
        let actions: Vec<Matrix> = (0..group.num_gens())
            .map(|s| match group.element(group.gen_index(s)) {
                Element::Perm(p) => perm_matrix(&field, p),
                _ => unreachable!("uniform element kind"),
            })
            .collect();
        GModule::new(group, field, actions)
    }

    /// Fully deleted permutation module of Alt(b) over GF(p): the sum-zero
    /// subspace of the natural permutation module, modulo the constants when
    /// p divides b. Dimension b-1, or b-2 in the dividing case.
    pub fn fully_deleted_permutation(b: usize, p: u32, cap: usize) -> Result<GModule> {
        if b < 5 {
            return Err(Error::Invalid("fully deleted module needs b >= 5".into()));
        }
        let g = crate::groups::catalog::alt(b, cap)?;
        let f = crate::fqlinalg::field_make(p, 1)?;
        let m = GModule::permutation(g, f.clone())?;
        let diffs: Vec<Vec<u16>> = (0..b - 1)
            .map(|i| {
                let mut r = vec![0u16; b];
                r[i] = 1;
                r[i + 1] = f.neg(1);
                r
            })
            .collect();
        let basis = rref_rows(&Matrix::from_rows(f.clone(), &diffs));
        let sub = m.submodule(&basis)?;
        if b % p as usize != 0 {
            return Ok(sub);
        }
        let (pivots, _) = echelon_pivots(&basis)?;
        let (coords, rem) = reduce_against(&f, &vec![1u16; b], &basis, &pivots);
        debug_assert!(rem.iter().all(|&x| x == 0), "constants lie in the sum-zero space");
        let line = rref_rows(&Matrix::from_rows(f, &[coords]));
        sub.quotient(&line)
    }

    /// Module on the rows of `basis` (a reduced-echelon basis of a subspace
    /// closed under every action). Errors if the subspace is not invariant.
    pub fn submodule(&self, basis: &Matrix) -> Result<GModule> {
        let (pivots, r) = echelon_pivots(basis)?;
        let f = &self.field;
        let mut actions = Vec::with_capacity(self.actions.len());
        for a in &self.actions {
            let mut m = Matrix::zero(f.clone(), r, r);
            for i in 0..r {
                let img = a.act_row(&basis.row(i));
                let (coords, rem) = reduce_against(f, &img, basis, &pivots);
                if rem.iter().any(|&x| x != 0) {
                    return Err(Error::Invalid("subspace is not action-invariant".into()));
                }
                for (j, c) in coords.into_iter().enumerate() {
                    if c != 0 {
                        m.set(i, j, c);
                    }
                }
            }
            actions.push(m);
        }
        Ok(GModule { group: self.group.clone(), field: f.clone(), dim: r, actions })
    }

    /// Quotient by the row space of `basis` (same echelon precondition as
    /// `submodule`), on the basis of non-pivot coordinates.
    pub fn quotient(&self, basis: &Matrix) -> Result<GModule> {
        let (pivots, r) = echelon_pivots(basis)?;
        let f = &self.field;
        let free: Vec<usize> = (0..self.dim).filter(|c| !pivots.contains(c)).collect();
        let q = free.len();
        debug_assert_eq!(q, self.dim - r);
        let mut actions = Vec::with_capacity(self.actions.len());
        for a in &self.actions {
            let mut m = Matrix::zero(f.clone(), q, q);
            for (i, &fc) in free.iter().enumerate() {
                let (_, rem) = reduce_against(f, &a.row(fc), basis, &pivots);
                for (j, &cc) in free.iter().enumerate() {
                    if rem[cc] != 0 {
                        m.set(i, j, rem[cc]);
                    }
                }
            }
            actions.push(m);
        }
        // Invariance of the subspace makes this well defined; verify cheaply
        // that the quotient actions are invertible (catches bad bases).
        GModule::new(self.group.clone(), f.clone(), actions)
    }

    /// Contragredient module: g acts by the inverse-transpose.
    pub fn dual(&self) -> GModule {
        let actions = self
            .actions
            .iter()
            .map(|a| a.try_inverse().expect("invertible action").transpose())
            .collect();
        GModule { group: self.group.clone(), field: self.field.clone(), dim: self.dim, actions }
    }

    /// Tensor product over F of two modules of the same group.
    pub fn tensor(&self, other: &GModule) -> Result<GModule> {
        if !Arc::ptr_eq(&self.group, &other.group) {
            return Err(Error::Invalid("tensor factors have different groups".into()));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch("tensor factors over different fields".into()));
        }
        let actions =
            self.actions.iter().zip(&other.actions).map(|(a, b)| a.kron(b)).collect();
        GModule::new(self.group.clone(), self.field.clone(), actions)
    }

    /// Block-diagonal direct sum of two modules of the same group.
    pub fn direct_sum(&self, other: &GModule) -> Result<GModule> {
        if !Arc::ptr_eq(&self.group, &other.group) {
            return Err(Error::Invalid("summands have different groups".into()));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch("summands over different fields".into()));
        }
        let (d1, d2) = (self.dim, other.dim);
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| {
                Matrix::from_fn(self.field.clone(), d1 + d2, d1 + d2, |i, j| {
                    if i < d1 && j < d1 {
                        a.get(i, j)
                    } else if i >= d1 && j >= d1 {
                        b.get(i - d1, j - d1)
                    } else {
                        0
                    }
                })
            })
            .collect();
        GModule::new(self.group.clone(), self.field.clone(), actions)
    }

    /// Restriction to a subgroup, returned as a module over the standalone
    /// subgroup group together with the embedding table (standalone index ->
    /// parent index).
    pub fn restrict(&self, sub: &[u32], cap: usize) -> Result<(GModule, Vec<u32>)> {
        let (h, embed) = self.group.subgroup_as_group(sub, cap)?;
        let actions = (0..h.num_gens())
            .map(|s| self.element_action(embed[h.gen_index(s) as usize]))
            .collect();
        let m = GModule::new(h, self.field.clone(), actions)?;
        Ok((m, embed))
    }

    /// Induction to a supergroup `g` along the embedding table produced by
    /// `restrict` / `subgroup_as_group`. Basis m (x) t_i over the right
    /// transversal in ascending BFS order; dimension is index times dim.
    pub fn induce(&self, g: &Arc<FiniteGroup>, embed: &[u32]) -> Result<GModule> {
        if embed.len() != self.group.order() {
            return Err(Error::Invalid("embedding table has wrong length".into()));
        }
        let rev: HashMap<u32, u32> =
            embed.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
        let trans = g.right_transversal(embed);
        let r = trans.len();
        let d = self.dim;
        let mut coset_of = vec![usize::MAX; g.order()];
        for (i, &t) in trans.iter().enumerate() {
            for &h in embed {
                coset_of[g.mult(h, t) as usize] = i;
            }
        }
        let f = &self.field;
        let mut actions = Vec::with_capacity(g.num_gens());
        for s in 0..g.num_gens() {
            let gs = g.gen_index(s);
            let mut m = Matrix::zero(f.clone(), r * d, r * d);
            for (i, &t) in trans.iter().enumerate() {
                // t_i * g = h * t_j, so the i-block maps into the j-block by h.
                let x = g.mult(t, gs);
                let j = coset_of[x as usize];
                let hp = g.mult(x, g.inv_of(trans[j]));
                let hi = *rev
                    .get(&hp)
                    .ok_or_else(|| Error::Invalid("embedding is not a subgroup".into()))?;
                let block = self.element_action(hi);
                for a in 0..d {
                    for b in 0..d {
                        let v = block.get(a, b);
                        if v != 0 {
                            m.set(i * d + a, j * d + b, v);
                        }
                    }
                }
            }
            actions.push(m);
        }
        GModule::new(g.clone(), f.clone(), actions)
    }

    /// Same action matrices over an extension field.
    pub fn extend_scalars(&self, target: &FieldRef) -> Result<GModule> {
        let emb = self.field.embed_into(target)?;
        let actions = self.actions.iter().map(|a| a.map_entries(&emb)).collect();
        GModule::new(self.group.clone(), target.clone(), actions)
    }

    /// Pull a module of the quotient back along a projection: the source
    /// generator in slot s acts as its image does.
    pub fn inflate(proj: &Homomorphism, of_quotient: &GModule) -> Result<GModule> {
        if !Arc::ptr_eq(proj.target(), of_quotient.group()) {
            return Err(Error::Invalid("module is not over the projection target".into()));
        }
        let actions =
            proj.gen_images().iter().map(|&q| of_quotient.element_action(q)).collect();
        GModule::new(proj.source().clone(), of_quotient.field.clone(), actions)
    }

    /// Sorted element indices acting as the identity. Computed by
    /// enumerating the image of G in GL(dim, F) and propagating the induced
    /// homomorphism, so the cost is governed by the image order, not |G|.
    pub fn kernel_of_action(&self) -> Result<Vec<u32>> {
        if self.group.num_gens() == 0 {
            return Ok(vec![0]);
        }
        if self.actions.iter().all(Matrix::is_identity) {
            return Ok((0..self.group.order() as u32).collect());
        }
        // Permutation matrices enumerate much faster as permutations.
        let perms: Option<Vec<Vec<u16>>> =
            self.actions.iter().map(matrix_to_perm).collect();
        let payloads: Vec<Element> = match perms {
            Some(ps) => ps.into_iter().map(Element::Perm).collect(),
            None => self.actions.iter().map(|a| Element::Mat(a.clone())).collect(),
        };
        let image = FiniteGroup::enumerate(payloads.clone(), self.group.order())?;
        let gen_images = payloads
            .iter()
            .map(|e| image.find_element(e).expect("generator image enumerated"))
            .collect();
        let hom = Homomorphism::new(self.group.clone(), image, gen_images)?;
        Ok(hom.kernel())
    }

    pub fn is_faithful(&self) -> Result<bool> {
        Ok(self.kernel_of_action()? == [0])
    }

    /// Scalar by which element `z` acts, if it acts as a scalar matrix.
    pub fn scalar_action_of(&self, z: u32) -> Option<u16> {
        let a = self.element_action(z);
        let lambda = a.get(0, 0);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let want = if i == j { lambda } else { 0 };
                if a.get(i, j) != want {
                    return None;
                }
            }
        }
        Some(lambda)
    }

    /// Full multiplication-table check that the generator assignment extends
    /// to a homomorphism. Quadratic in |G|; intended for test-scale groups.
    pub fn verify_consistency(&self) -> bool {
        let n = self.group.order();
        let mut mats: Vec<Matrix> = Vec::with_capacity(n);
        mats.push(Matrix::identity(self.field.clone(), self.dim));
        for x in 1..n as u32 {
            let (p, s) = self.group.parent_link(x);
            let m = mats[p as usize].mul(&self.actions[s as usize]);
            mats.push(m);
        }
        (0..n as u32).all(|x| {
            (0..self.actions.len()).all(|s| {
                let y = self.group.right_by_gen(s, x);
                mats[x as usize].mul(&self.actions[s]) == mats[y as usize]
            })
        })
    }
}

/// Permutation matrix sending e_i to e_{p[i]} under right action.
fn perm_matrix(field: &FieldRef, p: &[u16]) -> Matrix {
    Matrix::from_fn(field.clone(), p.len(), p.len(), |i, j| u16::from(p[i] as usize == j))
}

/// If every row and column of `m` holds exactly one 1, return the point map.
fn matrix_to_perm(m: &Matrix) -> Option<Vec<u16>> {
    if m.nrows() != m.ncols() || m.nrows() > u16::MAX as usize + 1 {
        return None;
    }
    let mut img = Vec::with_capacity(m.nrows());
    let mut hit = vec![false; m.ncols()];
    for i in 0..m.nrows() {
        let mut found = None;
        for j in 0..m.ncols() {
            match (m.get(i, j), found) {
                (0, _) => {}
                (1, None) => found = Some(j),
                _ => return None,
            }
        }
        let j = found?;
        if hit[j] {
            return None;
        }
        hit[j] = true;
        img.push(j as u16);
    }
    Some(img)
}

/// Pivot columns of a reduced-echelon basis (first nonzero of each row, which
/// must be 1 and strictly increasing).
fn echelon_pivots(basis: &Matrix) -> Result<(Vec<usize>, usize)> {
    let mut pivots = Vec::with_capacity(basis.nrows());
    for i in 0..basis.nrows() {
        let row = basis.row(i);
        let p = row
            .iter()
            .position(|&x| x != 0)
            .ok_or_else(|| Error::Invalid("zero row in basis".into()))?;
        if row[p] != 1 || pivots.last().is_some_and(|&q| p <= q) {
            return Err(Error::Invalid("basis is not reduced echelon".into()));
        }
        pivots.push(p);
    }
    let r = pivots.len();
    Ok((pivots, r))
}

/// Coordinates of `v` in the echelon basis plus the remainder after
/// subtracting them (zero exactly when v lies in the row space).
fn reduce_against(
    f: &FieldRef,
    v: &[u16],
    basis: &Matrix,
    pivots: &[usize],
) -> (Vec<u16>, Vec<u16>) {
    let mut rem = v.to_vec();
    let mut coords = Vec::with_capacity(pivots.len());
    for (i, &p) in pivots.iter().enumerate() {
        let c = rem[p];
        coords.push(c);
        if c != 0 {
            let row = basis.row(i);
            for (x, y) in rem.iter_mut().zip(&row) {
                *x = f.sub(*x, f.mul(c, *y));
            }
        }
    }
    (coords, rem)
}

/// Reduced-echelon basis (rank rows) of the row space of `m`.
pub(crate) fn rref_rows(m: &Matrix) -> Matrix {
    let r = m.rref();
    Matrix::from_fn(m.field().clone(), r.rank, m.ncols(), |i, j| r.mat.get(i, j))
}

/// Rows annihilated by right multiplication: { v : v * m = 0 }.
pub(crate) fn left_kernel(m: &Matrix) -> Matrix {
    m.transpose().rref().nullspace
}

/// Basis of the space of intertwiners Hom_{F[G]}(a, b), one flattened
/// dim(a) x dim(b) matrix (row-major) per row. A matrix X intertwines when
/// A_s X = X B_s for every generator slot.
pub fn intertwiners(a: &GModule, b: &GModule) -> Result<Matrix> {
    if !Arc::ptr_eq(a.group(), b.group()) {
        return Err(Error::Invalid("intertwiners need a common group".into()));
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch("intertwiners need a common field".into()));
    }
    let f = a.field().clone();
    let (da, db) = (a.dim(), b.dim());
    let nvars = da * db;
    let mut sys = Matrix::zero_unpacked(f.clone(), a.actions().len() * nvars, nvars);
    let mut eq = 0;
    for (am, bm) in a.actions().iter().zip(b.actions()) {
        for i in 0..da {
            for j in 0..db {
                for k in 0..da {
                    let c = am.get(i, k);
                    if c != 0 {
                        sys.set(eq, k * db + j, c);
                    }
                }
                for l in 0..db {
                    let c = bm.get(l, j);
                    if c != 0 {
                        let var = i * db + l;
                        let cur = sys.get(eq, var);
                        sys.set(eq, var, f.sub(cur, c));
                    }
                }
                eq += 1;
            }
        }
    }
    Ok(sys.rref().nullspace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fqlinalg::field_make;
    use crate::groups::{catalog, GroupSpec};

    fn build(s: &str) -> Arc<FiniteGroup> {
        GroupSpec::parse(s).unwrap().build(crate::groups::DEFAULT_ENUM_CAP).unwrap()
    }

    #[test]
    fn regular_module_is_consistent_and_faithful() {
        let g = build("sym 4");
        let f = field_make(2, 1).unwrap();
        let m = GModule::regular(g, f, DEFAULT_CHOP_CAP).unwrap();
        assert_eq!(m.dim(), 24);
        assert!(m.verify_consistency());
        assert_eq!(m.kernel_of_action().unwrap(), vec![0]);
    }

    #[test]
    fn trivial_module_kernel_is_everything() {
        let g = build("cyclic 6");
        let f = field_make(5, 1).unwrap();
        let m = GModule::trivial(g, f);
        assert_eq!(m.kernel_of_action().unwrap().len(), 6);
        assert!(!m.is_faithful().unwrap());
    }

    #[test]
    fn permutation_module_matches_action() {
        let g = build("sym 3");
        let f = field_make(3, 1).unwrap();
        let m = GModule::permutation(g.clone(), f).unwrap();
        assert_eq!(m.dim(), 3);
        assert!(m.verify_consistency());
        // e_i * A_g lands on e_{g(i)} for every element, not just generators.
        for x in 0..g.order() as u32 {
            let a = m.element_action(x);
            let Element::Perm(p) = g.element(x) else { panic!("perm group") };
            for i in 0..3 {
                let mut e = vec![0u16; 3];
                e[i] = 1;
                let img = a.act_row(&e);
                assert_eq!(img[p[i] as usize], 1);
                assert_eq!(img.iter().filter(|&&x| x != 0).count(), 1);
            }
        }
    }

    #[test]
    fn submodule_and_quotient_split_the_sum_zero_line() {
        // Natural S3 permutation module over GF(3): constants sit inside the
        // sum-zero plane; both layers of the chain produce consistent actions.
        let g = build("sym 3");
        let f = field_make(3, 1).unwrap();
        let m = GModule::permutation(g, f.clone()).unwrap();
        let ones = Matrix::from_rows(f.clone(), &[vec![1, 1, 1]]);
        let sub = m.submodule(&ones).unwrap();
        assert_eq!(sub.dim(), 1);
        assert!(sub.actions().iter().all(Matrix::is_identity));
        let quo = m.quotient(&ones).unwrap();
        assert_eq!(quo.dim(), 2);
        assert!(quo.verify_consistency());
    }

    #[test]
    fn submodule_rejects_non_invariant_subspace() {
        let g = build("sym 3");
        let f = field_make(3, 1).unwrap();
        let m = GModule::permutation(g, f.clone()).unwrap();
        let line = Matrix::from_rows(f, &[vec![1, 0, 0]]);
        assert!(m.submodule(&line).is_err());
    }

    #[test]
    fn dual_is_an_involution_and_preserves_consistency() {
        let g = build("sl 2 3");
        let f = field_make(3, 1).unwrap();
        let m = GModule::new(
            g.clone(),
            f,
            (0..g.num_gens())
                .map(|s| match g.element(g.gen_index(s)) {
                    Element::Mat(a) => a.clone(),
                    _ => panic!("matrix group"),
                })
                .collect(),
        )
        .unwrap();
        let dd = m.dual().dual();
        assert!(m.actions().iter().zip(dd.actions()).all(|(a, b)| a == b));
        assert!(m.dual().verify_consistency());
    }

    #[test]
    fn tensor_multiplies_dimensions() {
        let g = build("sym 3");
        let f = field_make(2, 1).unwrap();
        let m = GModule::permutation(g.clone(), f.clone()).unwrap();
        let t = m.tensor(&m).unwrap();
        assert_eq!(t.dim(), 9);
        assert!(t.verify_consistency());
    }

    #[test]
    fn restriction_keeps_the_action_of_subgroup_elements() {
        let g = build("sym 4");
        let f = field_make(2, 1).unwrap();
        let m = GModule::permutation(g.clone(), f).unwrap();
        // V4 = normal Klein four subgroup: closure of a double transposition.
        let x = g
            .find_element(&Element::perm_from_cycles(4, &[vec![1, 2], vec![3, 4]]).unwrap())
            .unwrap();
        let v4 = g.normal_closure(&[x]);
        assert_eq!(v4.len(), 4);
        let (res, embed) = m.restrict(&v4, 10_000).unwrap();
        assert_eq!(res.dim(), 4);
        assert!(res.verify_consistency());
        for s in 0..res.group().num_gens() {
            let parent = m.element_action(embed[res.group().gen_index(s) as usize]);
            assert_eq!(&parent, res.action(s));
        }
    }

    #[test]
    fn inducing_the_trivial_module_gives_the_coset_permutation_module() {
        let g = build("sym 4");
        let f = field_make(3, 1).unwrap();
        let c = g.find_element(&Element::perm_from_cycles(4, &[vec![1, 2, 3]]).unwrap()).unwrap();
        let sub = g.subgroup_closure(&[c]);
        let (h, embed) = g.subgroup_as_group(&sub, 1000).unwrap();
        let triv = GModule::trivial(h, f);
        let ind = triv.induce(&g, &embed).unwrap();
        assert_eq!(ind.dim(), 8);
        assert!(ind.verify_consistency());
        for a in ind.actions() {
            assert!(matrix_to_perm(a).is_some());
        }
    }

    #[test]
    fn extend_scalars_keeps_prime_subfield_entries() {
        let g = build("sym 3");
        let f2 = field_make(2, 1).unwrap();
        let f4 = field_make(2, 2).unwrap();
        let m = GModule::permutation(g, f2).unwrap();
        let ext = m.extend_scalars(&f4).unwrap();
        assert_eq!(ext.field().q, 4);
        assert!(ext.verify_consistency());
        for (a, b) in m.actions().iter().zip(ext.actions()) {
            for i in 0..3 {
                for j in 0..3 {
                    assert_eq!(a.get(i, j), b.get(i, j));
                }
            }
        }
    }

    #[test]
    fn inflation_has_the_normal_subgroup_in_its_kernel() {
        let g = build("sym 4");
        let v4 = g
            .minimal_normal_subgroups()
            .into_iter()
            .find(|n| n.len() == 4)
            .expect("Klein four is minimal normal in S4");
        let (q, proj) = g.quotient(&v4, 1000).unwrap();
        assert_eq!(q.order(), 6);
        let f = field_make(5, 1).unwrap();
        // The quotient acts on its 6 cosets, so inflation keeps dimension 6
        // and kills exactly the subgroup that was factored out.
        let qm = GModule::permutation(q, f).unwrap();
        let infl = GModule::inflate(&proj, &qm).unwrap();
        assert_eq!(infl.dim(), 6);
        assert!(infl.verify_consistency());
        assert_eq!(infl.kernel_of_action().unwrap(), v4);
    }

    #[test]
    fn scalar_action_detects_the_sign_character() {
        let g = build("cyclic 2");
        let f = field_make(3, 1).unwrap();
        let sign = GModule::new(g.clone(), f.clone(), vec![Matrix::from_rows(f, &[vec![2]])])
            .unwrap();
        assert_eq!(sign.scalar_action_of(1), Some(2));
        assert_eq!(sign.scalar_action_of(0), Some(1));
        let p = GModule::permutation(build("sym 3"), field_make(3, 1).unwrap()).unwrap();
        assert_eq!(p.scalar_action_of(1), None);
    }

    #[test]
    fn direct_sum_blocks_do_not_interact() {
        let g = build("sym 3");
        let f = field_make(2, 1).unwrap();
        let m = GModule::permutation(g.clone(), f.clone()).unwrap();
        let t = GModule::trivial(g, f);
        let s = m.direct_sum(&t).unwrap();
        assert_eq!(s.dim(), 4);
        assert!(s.verify_consistency());
    }

    #[test]
    fn intertwiners_of_a_module_with_itself_contain_the_identity() {
        let g = build("sym 3");
        let f = field_make(2, 1).unwrap();
        let m = GModule::permutation(g, f.clone()).unwrap();
        let basis = intertwiners(&m, &m).unwrap();
        assert!(basis.nrows() >= 1);
        // The identity matrix flattens to a solution row; check membership by
        // solving against the basis.
        let id: Vec<u16> = (0..9).map(|v| u16::from(v % 4 == 0)).collect();
        let sol = basis.transpose().solve(&id);
        assert!(sol.is_some());
    }

    #[test]
    fn left_kernel_matches_definition() {
        let f = field_make(3, 1).unwrap();
        let m = Matrix::from_rows(f.clone(), &[vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 0]]);
        let lk = left_kernel(&m);
        assert_eq!(lk.nrows(), 2);
        for i in 0..lk.nrows() {
            let v = lk.row(i);
            let prod = Matrix::from_rows(f.clone(), &[v]).mul(&m);
            assert!(prod.is_zero());
        }
    }

    #[test]
    fn catalog_matrix_generators_make_valid_modules() {
        let g = catalog::sl(2, 5, crate::groups::DEFAULT_ENUM_CAP).unwrap();
        let f = field_make(5, 1).unwrap();
        let nat = GModule::new(
            g.clone(),
            f,
            (0..g.num_gens())
                .map(|s| match g.element(g.gen_index(s)) {
                    Element::Mat(a) => a.clone(),
                    _ => panic!("matrix group"),
                })
                .collect(),
        )
        .unwrap();
        assert_eq!(nat.dim(), 2);
        assert!(nat.is_faithful().unwrap());
    }
}
