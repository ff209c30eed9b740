use crate::{Error, Result};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

pub type FieldRef = Arc<Field>;

/// GF(p^k) with a fixed modulus. Arithmetic uses full lookup tables when
/// q <= 2^8 and on-the-fly polynomial arithmetic otherwise.
pub struct Field {
    pub p: u32,
    pub k: u32,
    pub q: u32,
    /// Monic modulus of degree k, constant term first, length k+1.
    modulus: Vec<u32>,
    mul_t: Option<Vec<u16>>,
    inv_t: Option<Vec<u16>>,
    add_t: Option<Vec<u16>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k
    }
}
impl Eq for Field {}

const TABLE_LIMIT: u32 = 256;

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Split q = p^k with p prime, or report that q is not a prime power.
pub fn split_prime_power(q: u64) -> Result<(u32, u32)> {
    let mut p = 2u64;
    while p * p <= q {
        if q % p == 0 {
            let mut k = 0;
            let mut rest = q;
            while rest % p == 0 {
                rest /= p;
                k += 1;
            }
            if rest != 1 {
                return Err(Error::Invalid(format!("{q} is not a prime power")));
            }
            return Ok((p as u32, k));
        }
        p += 1;
    }
    if q < 2 {
        return Err(Error::Invalid(format!("{q} is not a prime power")));
    }
    Ok((q as u32, 1))
}

/// Construct GF(q), factoring q into p^k first.
pub fn field_of_order(q: u64) -> Result<FieldRef> {
    let (p, k) = split_prime_power(q)?;
    field_make(p, k)
}

/// Construct (or fetch from the process-wide intern table) GF(p^k).
pub fn field_make(p: u32, k: u32) -> Result<FieldRef> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), FieldRef>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&(p, k)) {
        return Ok(f.clone());
    }
    let f = Arc::new(Field::build(p, k)?);
    cache.lock().unwrap().insert((p, k), f.clone());
    Ok(f)
}

impl Field {
    fn build(p: u32, k: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p as u64));
        }
        if k == 0 {
            return Err(Error::Invalid("extension degree must be >= 1".into()));
        }
        let mut q: u128 = 1;
        for _ in 0..k {
            q *= p as u128;
            if q > 1 << 16 {
                return Err(Error::FieldTooLarge(q));
            }
        }
        let q = q as u32;
        let modulus = least_irreducible(p, k);
        let mut field = Field { p, k, q, modulus, mul_t: None, inv_t: None, add_t: None };
        if q <= TABLE_LIMIT {
            let mut mul = vec![0u16; (q * q) as usize];
            let mut add = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    mul[(a * q + b) as usize] = field.mul_raw(a as u16, b as u16);
                    add[(a * q + b) as usize] = field.add_raw(a as u16, b as u16);
                }
            }
            let mut inv = vec![0u16; q as usize];
            for a in 1..q {
                for b in 1..q {
                    if mul[(a * q + b) as usize] == 1 {
                        inv[a as usize] = b as u16;
                        break;
                    }
                }
            }
            field.mul_t = Some(mul);
            field.add_t = Some(add);
            field.inv_t = Some(inv);
        }
        Ok(field)
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.k == 1
    }

    fn digits(&self, code: u16) -> Vec<u32> {
        let mut c = code as u32;
        let mut out = vec![0u32; self.k as usize];
        for d in out.iter_mut() {
            *d = c % self.p;
            c /= self.p;
        }
        out
    }

    fn code(&self, digits: &[u32]) -> u16 {
        let mut acc: u32 = 0;
        for &d in digits.iter().rev() {
            acc = acc * self.p + d;
        }
        acc as u16
    }

    fn add_raw(&self, a: u16, b: u16) -> u16 {
        if self.k == 1 {
            return ((a as u32 + b as u32) % self.p) as u16;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.code(&sum)
    }

    fn mul_raw(&self, a: u16, b: u16) -> u16 {
        if self.k == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u16;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let k = self.k as usize;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] += x as u64 * y as u64;
            }
        }
        // Reduce by the monic modulus, top degree down.
        for i in (k..2 * k - 1).rev() {
            let c = prod[i] % self.p as u64;
            if c != 0 {
                for j in 0..k {
                    // prod[i - k + j] -= c * modulus[j]; keep values nonnegative.
                    let m = self.modulus[j] as u64;
                    prod[i - k + j] += (self.p as u64 * m) * c; // pad to avoid underflow
                    prod[i - k + j] -= c * m;
                }
            }
            prod[i] = 0;
        }
        let digits: Vec<u32> = prod[..k].iter().map(|&x| (x % self.p as u64) as u32).collect();
        self.code(&digits)
    }

    pub fn add(&self, a: u16, b: u16) -> u16 {
        debug_assert!((a as u32) < self.q && (b as u32) < self.q);
        match &self.add_t {
            Some(t) => t[(a as u32 * self.q + b as u32) as usize],
            None => self.add_raw(a, b),
        }
    }

    pub fn neg(&self, a: u16) -> u16 {
        if self.k == 1 {
            return if a == 0 { 0 } else { (self.p - a as u32) as u16 };
        }
        let d: Vec<u32> = self.digits(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.code(&d)
    }

    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        debug_assert!((a as u32) < self.q && (b as u32) < self.q);
        match &self.mul_t {
            Some(t) => t[(a as u32 * self.q + b as u32) as usize],
            None => self.mul_raw(a, b),
        }
    }

    pub fn inv(&self, a: u16) -> u16 {
        assert!(a != 0, "inverse of zero");
        if let Some(t) = &self.inv_t {
            return t[a as usize];
        }
        self.pow(a, self.q as u64 - 2)
    }

    pub fn div(&self, a: u16, b: u16) -> u16 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u16, mut e: u64) -> u16 {
        let mut base = a;
        let mut acc: u16 = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: u16) -> u64 {
        assert!(a != 0);
        let mut x = a;
        let mut n = 1u64;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// Some element of multiplicative order exactly d (None if d does not
    /// divide q - 1).
    pub fn element_of_order(&self, d: u64) -> Option<u16> {
        if d == 0 || (self.q as u64 - 1) % d != 0 {
            return None;
        }
        (1..self.q as u16).find(|&a| self.mult_order(a) == d)
    }

    /// The canonical copy of GF(p) inside this field: codes 0..p-1 are the
    /// constant polynomials, so prime subfield elements embed as themselves.
    pub fn from_prime_subfield(&self, c: u32) -> u16 {
        debug_assert!(c < self.p);
        c as u16
    }

    /// Embedding of this field into `target` = GF(p^(k*e)), sending the
    /// modulus root to the least root of the same modulus in the target.
    /// Direct extension of the chosen modulus; no compatibility promised
    /// between different towers over the same prime.
    pub fn embed_into(self: &FieldRef, target: &FieldRef) -> Result<Embedding> {
        if self.p != target.p || target.k % self.k != 0 {
            return Err(Error::FieldMismatch(format!(
                "no embedding GF({}) -> GF({})",
                self.q, target.q
            )));
        }
        if self.k == target.k {
            return Ok(Embedding { source: self.clone(), target: target.clone(), map: (0..self.q as u16).collect() });
        }
        // Least root of our modulus inside the target field.
        let root = (0..target.q as u16)
            .find(|&b| {
                // Horner, highest coefficient first; coefficients are prime-subfield codes.
                let mut acc: u16 = 0;
                for &c in self.modulus.iter().rev() {
                    acc = target.add(target.mul(acc, b), target.from_prime_subfield(c));
                }
                acc == 0
            })
            .expect("modulus must split in an extension of its own degree");
        let mut map = vec![0u16; self.q as usize];
        for a in 0..self.q as u16 {
            let mut acc: u16 = 0;
            for &c in self.digits(a).iter().rev() {
                acc = target.add(target.mul(acc, root), target.from_prime_subfield(c));
            }
            map[a as usize] = acc;
        }
        Ok(Embedding { source: self.clone(), target: target.clone(), map })
    }
}

/// A field inclusion GF(p^k) -> GF(p^(k*e)) tabulated on element codes.
pub struct Embedding {
    pub source: FieldRef,
    pub target: FieldRef,
    map: Vec<u16>,
}

impl Embedding {
    pub fn apply(&self, a: u16) -> u16 {
        self.map[a as usize]
    }
}

/// Lexicographically least monic irreducible of degree k over GF(p), with
/// coefficients compared constant term first. Degree 1 gives X itself.
fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    let k = k as usize;
    if k == 1 {
        return vec![0, 1];
    }
    // Odometer over (c_0, ..., c_{k-1}) in lex order: c_0 most significant.
    let mut coeffs = vec![0u32; k];
    loop {
        // Advance to next tuple (start from all zeros, step before testing
        // is fine: the zero polynomial X^k is reducible anyway).
        if coeffs[0] != 0 && poly_irreducible(p, &coeffs) {
            let mut m = coeffs.clone();
            m.push(1);
            return m;
        }
        let mut i = k - 1;
        loop {
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            assert!(i > 0, "no irreducible of degree {k} over GF({p})?");
            i -= 1;
        }
    }
}

/// Trial division test for X^k + sum coeffs[i] X^i over GF(p): irreducible
/// iff no monic divisor of degree 1..=k/2. Bootstrap arithmetic mod p only.
fn poly_irreducible(p: u32, coeffs: &[u32]) -> bool {
    let k = coeffs.len();
    let mut f: Vec<u32> = coeffs.to_vec();
    f.push(1);
    for d in 1..=k / 2 {
        // All monic divisor candidates of degree d.
        let mut g = vec![0u32; d + 1];
        g[d] = 1;
        loop {
            if poly_rem_is_zero(p, &f, &g) {
                return false;
            }
            let mut i = 0;
            loop {
                if i == d {
                    break;
                }
                g[i] += 1;
                if g[i] < p {
                    break;
                }
                g[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    true
}

fn poly_rem_is_zero(p: u32, f: &[u32], g: &[u32]) -> bool {
    let dg = g.len() - 1;
    let mut r: Vec<u64> = f.iter().map(|&x| x as u64).collect();
    while r.len() > dg {
        let lead = r[r.len() - 1] % p as u64;
        if lead != 0 {
            let shift = r.len() - 1 - dg;
            for j in 0..dg {
                let sub = lead * g[j] as u64 % p as u64;
                r[shift + j] = (r[shift + j] + p as u64 - sub) % p as u64;
            }
        }
        r.pop();
    }
    r.iter().all(|&x| x % p as u64 == 0)
}
