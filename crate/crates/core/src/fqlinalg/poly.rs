use super::field::FieldRef;
use rand::Rng;

/// Polynomial over a finite field, coefficients constant term first with no
/// trailing zeros (the zero polynomial is the empty coefficient list).
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldRef,
    c: Vec<u16>,
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poly{:?}", self.c)
    }
}

impl Poly {
    pub fn new(field: FieldRef, mut c: Vec<u16>) -> Poly {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { field, c }
    }

    pub fn zero(field: FieldRef) -> Poly {
        Poly { field, c: vec![] }
    }

    pub fn constant(field: FieldRef, v: u16) -> Poly {
        Poly::new(field, vec![v])
    }

    pub fn x(field: FieldRef) -> Poly {
        Poly::new(field, vec![0, 1])
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[u16] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0 alongside is_zero().
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> u16 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let f = &self.field;
        let n = self.c.len().max(rhs.c.len());
        let mut out = vec![0u16; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = rhs.c.get(i).copied().unwrap_or(0);
            *o = f.add(a, b);
        }
        Poly::new(self.field.clone(), out)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        let f = &self.field;
        let n = self.c.len().max(rhs.c.len());
        let mut out = vec![0u16; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = rhs.c.get(i).copied().unwrap_or(0);
            *o = f.sub(a, b);
        }
        Poly::new(self.field.clone(), out)
    }

    pub fn scale(&self, v: u16) -> Poly {
        let f = &self.field;
        Poly::new(self.field.clone(), self.c.iter().map(|&x| f.mul(x, v)).collect())
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field.clone());
        }
        let f = &self.field;
        let mut out = vec![0u16; self.c.len() + rhs.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.c.iter().enumerate() {
                if b != 0 {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        Poly::new(self.field.clone(), out)
    }

    pub fn divrem(&self, rhs: &Poly) -> (Poly, Poly) {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        let f = &self.field;
        let dr = rhs.deg();
        if self.is_zero() || self.deg() < dr {
            return (Poly::zero(self.field.clone()), self.clone());
        }
        let inv_lead = f.inv(rhs.lead());
        let mut rem = self.c.clone();
        let mut quo = vec![0u16; self.deg() - dr + 1];
        for i in (dr..rem.len()).rev() {
            let coef = f.mul(rem[i], inv_lead);
            if coef == 0 {
                continue;
            }
            quo[i - dr] = coef;
            for (j, &b) in rhs.c.iter().enumerate() {
                if b != 0 {
                    rem[i - dr + j] = f.sub(rem[i - dr + j], f.mul(coef, b));
                }
            }
        }
        rem.truncate(dr);
        (Poly::new(self.field.clone(), quo), Poly::new(self.field.clone(), rem))
    }

    pub fn rem(&self, rhs: &Poly) -> Poly {
        self.divrem(rhs).1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.lead() == 1 {
            return self.clone();
        }
        self.scale(self.field.inv(self.lead()))
    }

    pub fn gcd(&self, rhs: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        if self.c.len() <= 1 {
            return Poly::zero(self.field.clone());
        }
        let mut out = vec![0u16; self.c.len() - 1];
        for (i, o) in out.iter_mut().enumerate() {
            // (i+1) * c_{i+1}, multiplier reduced into the prime subfield.
            let m = ((i as u32 + 1) % f.p) as u16;
            *o = f.mul(self.c[i + 1], m);
        }
        Poly::new(self.field.clone(), out)
    }

    pub fn eval(&self, x: u16) -> u16 {
        let f = &self.field;
        let mut acc: u16 = 0;
        for &c in self.c.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// self^e mod m.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::constant(self.field.clone(), 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// p-th root of a polynomial in x^p (each coefficient c -> c^(q/p)).
    fn pth_root(&self) -> Poly {
        let f = &self.field;
        let p = f.p as usize;
        let root_exp = (f.q / f.p) as u64; // c^(q/p) is the p-th root in GF(q)
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.c.len() {
            out.push(f.pow(self.c[i], root_exp));
            i += p;
        }
        Poly::new(self.field.clone(), out)
    }

    /// Squarefree decomposition: list of (monic squarefree part, multiplicity)
    /// with pairwise coprime parts, product over parts^mult = self/lead.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        let mut out: Vec<(Poly, usize)> = Vec::new();
        sqfree_rec(&self.monic(), 1, &mut out);
        out.sort_by_key(|(_, m)| *m);
        out
    }

    /// Full factorization into monic irreducibles with multiplicities.
    /// Equal-degree splitting is randomized; the caller supplies the RNG so
    /// the whole pipeline stays seed-deterministic.
    pub fn factor(&self, rng: &mut impl Rng) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        for (part, mult) in self.squarefree_decomposition() {
            if part.deg() == 0 {
                continue;
            }
            for (irr, d) in distinct_degree(&part) {
                for factor in equal_degree_all(&irr, d, rng) {
                    out.push((factor, mult));
                }
            }
        }
        out.sort_by(|(a, _), (b, _)| a.c.len().cmp(&b.c.len()).then_with(|| a.c.cmp(&b.c)));
        out
    }

    /// Irreducible factors of multiplicity exactly one, smallest degree
    /// first. Cheaper than full factorization: only the multiplicity-one
    /// squarefree part is split.
    pub fn mult1_factors(&self, rng: &mut impl Rng) -> Vec<Poly> {
        let mut out = Vec::new();
        for (part, mult) in self.squarefree_decomposition() {
            if mult != 1 || part.deg() == 0 {
                continue;
            }
            for (prod, d) in distinct_degree(&part) {
                for factor in equal_degree_all(&prod, d, rng) {
                    out.push(factor);
                }
            }
        }
        out.sort_by(|a, b| a.c.len().cmp(&b.c.len()).then_with(|| a.c.cmp(&b.c)));
        out
    }
}

fn sqfree_rec(f: &Poly, outer_mult: usize, out: &mut Vec<(Poly, usize)>) {
    if f.deg() == 0 {
        return;
    }
    let d = f.derivative();
    if d.is_zero() {
        // f = g(x^p): recurse on the p-th root with multiplicity * p.
        let g = f.pth_root();
        sqfree_rec(&g, outer_mult * f.field.p as usize, out);
        return;
    }
    // Yun-style: t = gcd(f, f').
    let mut t = f.gcd(&d);
    let mut w = f.divrem(&t).0; // product of squarefree part
    let mut mult = 1usize;
    while w.deg() > 0 {
        let y = w.gcd(&t);
        let part = w.divrem(&y).0;
        if part.deg() > 0 {
            merge_part(out, part, mult * outer_mult);
        }
        w = y.clone();
        t = t.divrem(&y).0;
        mult += 1;
    }
    if t.deg() > 0 {
        // Remaining factor is a polynomial in x^p.
        sqfree_rec(&t, outer_mult, out);
    }
}

fn merge_part(out: &mut Vec<(Poly, usize)>, part: Poly, mult: usize) {
    for (p, m) in out.iter_mut() {
        if *m == mult {
            *p = p.mul(&part);
            return;
        }
    }
    out.push((part, mult));
}

/// Distinct-degree decomposition of a monic squarefree polynomial: returns
/// (product of all irreducible factors of degree d, d) for each occupied d.
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field().clone();
    let mut out = Vec::new();
    let mut f = f.monic();
    let x = Poly::x(field.clone());
    let mut h = x.pow_mod(field.q as u64, &f); // x^q mod f
    let mut d = 1usize;
    while f.deg() >= 2 * d {
        let g = h.sub(&x).gcd(&f);
        if g.deg() > 0 {
            out.push((g.clone(), d));
            f = f.divrem(&g).0;
            h = h.rem(&f);
        }
        d += 1;
        if f.deg() == 0 {
            break;
        }
        h = h.pow_mod(field.q as u64, &f);
    }
    if f.deg() > 0 {
        out.push((f.clone(), f.deg()));
    }
    out
}

/// Split a product of distinct irreducibles all of degree d into the
/// irreducibles (Cantor-Zassenhaus; char-2 fields use the trace map).
fn equal_degree_all(f: &Poly, d: usize, rng: &mut impl Rng) -> Vec<Poly> {
    let mut stack = vec![f.monic()];
    let mut out = Vec::new();
    while let Some(g) = stack.pop() {
        if g.deg() == d {
            out.push(g);
            continue;
        }
        let (a, b) = equal_degree_split(&g, d, rng);
        stack.push(a);
        stack.push(b);
    }
    out.sort_by(|a, b| a.c.cmp(&b.c));
    out
}

fn random_poly_below(deg: usize, field: &FieldRef, rng: &mut impl Rng) -> Poly {
    let c: Vec<u16> = (0..deg).map(|_| (rng.random_range(0..field.q)) as u16).collect();
    Poly::new(field.clone(), c)
}

fn equal_degree_split(f: &Poly, d: usize, rng: &mut impl Rng) -> (Poly, Poly) {
    let field = f.field().clone();
    let n = f.deg();
    debug_assert!(n > d && n % d == 0);
    loop {
        let a = random_poly_below(n, &field, rng);
        if a.deg() == 0 {
            continue;
        }
        let g = a.gcd(f);
        if g.deg() > 0 && g.deg() < n {
            return (g.clone(), f.divrem(&g).0);
        }
        let h = if field.p == 2 {
            // Trace map T(a) = a + a^2 + a^4 + ... over GF(2^k), kd terms.
            let reps = field.k as usize * d;
            let mut acc = Poly::zero(field.clone());
            let mut t = a.clone();
            for _ in 0..reps {
                acc = acc.add(&t).rem(f);
                t = t.mul(&t).rem(f);
            }
            acc
        } else {
            // a^((q^d - 1)/2) - 1
            let mut e = num_bigint::BigUint::from(field.q);
            e = e.pow(d as u32);
            e -= 1u32;
            e /= 2u32;
            pow_mod_big(&a, &e, f).sub(&Poly::constant(field.clone(), 1))
        };
        let g = h.gcd(f);
        if g.deg() > 0 && g.deg() < n {
            return (g.clone(), f.divrem(&g).0);
        }
    }
}

fn pow_mod_big(a: &Poly, e: &num_bigint::BigUint, m: &Poly) -> Poly {
    use num_traits::Zero;
    let field = a.field().clone();
    let mut base = a.rem(m);
    let mut acc = Poly::constant(field, 1);
    let mut e = e.clone();
    let one = num_bigint::BigUint::from(1u32);
    while !e.is_zero() {
        if (&e & &one) == one {
            acc = acc.mul(&base).rem(m);
        }
        base = base.mul(&base).rem(m);
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::super::field::field_make;
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn divrem_reconstructs() {
        let f = field_make(5, 1).unwrap();
        let a = Poly::new(f.clone(), vec![1, 2, 3, 4, 1]);
        let b = Poly::new(f.clone(), vec![2, 0, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.deg() < b.deg() || r.is_zero());
    }

    #[test]
    fn gcd_of_known_product() {
        let f = field_make(3, 1).unwrap();
        let p1 = Poly::new(f.clone(), vec![1, 1]); // x + 1
        let p2 = Poly::new(f.clone(), vec![2, 1]); // x + 2
        let a = p1.mul(&p2);
        let b = p1.mul(&p1);
        assert_eq!(a.gcd(&b), p1);
    }

    #[test]
    fn factor_x4_x_1_over_gf2_irreducible() {
        let f = field_make(2, 1).unwrap();
        let p = Poly::new(f.clone(), vec![1, 1, 0, 0, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fac = p.factor(&mut rng);
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].1, 1);
        assert_eq!(fac[0].0, p);
    }

    #[test]
    fn factor_with_multiplicities_gf3() {
        // (x+1)^2 (x^2+1) over GF(3); x^2+1 is irreducible mod 3.
        let f = field_make(3, 1).unwrap();
        let x1 = Poly::new(f.clone(), vec![1, 1]);
        let q = Poly::new(f.clone(), vec![1, 0, 1]);
        let prod = x1.mul(&x1).mul(&q);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fac = prod.factor(&mut rng);
        assert_eq!(fac.len(), 2);
        assert!(fac.contains(&(x1.clone(), 2)));
        assert!(fac.contains(&(q.clone(), 1)));
        // mult1_factors picks out exactly the simple factor.
        let m1 = prod.mult1_factors(&mut rng);
        assert_eq!(m1, vec![q]);
    }

    #[test]
    fn factor_random_product_round_trip() {
        let f = field_make(2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let degs = [1usize, 2, 3];
            let mut prod = Poly::constant(f.clone(), 1);
            for &d in &degs {
                // Random monic of degree d.
                let mut c = vec![0u16; d + 1];
                for x in c.iter_mut().take(d) {
                    *x = rng.random_range(0..4) as u16;
                }
                c[d] = 1;
                prod = prod.mul(&Poly::new(f.clone(), c));
            }
            let fac = prod.factor(&mut rng);
            let mut recon = Poly::constant(f.clone(), 1);
            for (p, m) in &fac {
                for _ in 0..*m {
                    recon = recon.mul(p);
                }
                // Each reported factor must be irreducible: no root check for
                // deg <= 3 is complete over the base field only for deg <= 3
                // with roots... use divisibility by all monic linears as a
                // lower-bound sanity check plus degree bound.
                if p.deg() >= 2 {
                    for r in 0..4u16 {
                        assert_ne!(p.eval(r), 0, "reducible factor reported: {:?}", p);
                    }
                }
            }
            assert_eq!(recon, prod.monic());
        }
    }

    #[test]
    fn squarefree_handles_pth_powers() {
        // (x^2 + x)^2 = x^4 + x^2 over GF(2) has zero derivative.
        let f = field_make(2, 1).unwrap();
        let p = Poly::new(f.clone(), vec![0, 0, 1, 0, 1]);
        let dec = p.squarefree_decomposition();
        // x^4 + x^2 = (x(x+1))^2 -> squarefree part x^2 + x at multiplicity 2.
        assert_eq!(dec.len(), 1);
        assert_eq!(dec[0].1, 2);
        assert_eq!(dec[0].0, Poly::new(f, vec![0, 1, 1]));
    }
}
