//! Concrete group element payloads.
//!
//! Three kinds cover every constructor in the catalog: permutations of
//! `{0, .., d-1}`, invertible matrices over a finite field, and square
//! matrices over `Z/m` for prime-power `m`.  Composition is read left to
//! right everywhere: `a.mul(&b)` is "apply `a`, then `b`", so permutations
//! satisfy `(a*b)[i] = b[a[i]]` and matrices multiply as `A_a * A_b`, which
//! matches the row-vector module convention `v * A`.

use crate::error::{Error, Result};
use crate::fqlinalg::Matrix;

/// A group element.  Equality, ordering, and hashing go through the
/// canonical byte encoding, so structurally equal payloads of the same kind
/// always collide and different kinds never do.
#[derive(Clone, Debug)]
pub enum Element {
    /// Permutation by images: `p[i]` is where point `i` goes.
    Perm(Vec<u16>),
    /// Invertible matrix over a finite field.
    Mat(Matrix),
    /// Square matrix over `Z/m`, entries in `0..m`, row major.
    ZMat { m: u32, n: usize, entries: Vec<u32> },
}

impl Element {
    pub fn identity_like(&self) -> Element {
        match self {
            Element::Perm(p) => Element::Perm((0..p.len() as u16).collect()),
            Element::Mat(a) => Element::Mat(Matrix::identity(a.field().clone(), a.nrows())),
            Element::ZMat { m, n, .. } => {
                let mut entries = vec![0u32; n * n];
                for i in 0..*n {
                    entries[i * n + i] = 1 % *m;
                }
                Element::ZMat { m: *m, n: *n, entries }
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Element::Perm(p) => p.iter().enumerate().all(|(i, &im)| im as usize == i),
            Element::Mat(a) => a.is_identity(),
            Element::ZMat { m, n, entries } => (0..*n).all(|i| {
                (0..*n).all(|j| entries[i * n + j] == if i == j { 1 % *m } else { 0 })
            }),
        }
    }

    /// `self` then `other`.  Panics if the kinds or shapes differ; the group
    /// engine only ever multiplies elements of one parent group.
    pub fn mul(&self, other: &Element) -> Element {
        match (self, other) {
            (Element::Perm(a), Element::Perm(b)) => {
                assert_eq!(a.len(), b.len(), "permutation degree mismatch");
                Element::Perm(a.iter().map(|&i| b[i as usize]).collect())
            }
            (Element::Mat(a), Element::Mat(b)) => Element::Mat(a.mul(b)),
            (
                Element::ZMat { m, n, entries: a },
                Element::ZMat { m: m2, n: n2, entries: b },
            ) => {
                assert_eq!((m, n), (m2, n2), "integer matrix shape mismatch");
                let (m, n) = (*m, *n);
                let mut c = vec![0u32; n * n];
                for i in 0..n {
                    for k in 0..n {
                        let aik = a[i * n + k] as u64;
                        if aik == 0 {
                            continue;
                        }
                        for j in 0..n {
                            let v = c[i * n + j] as u64 + aik * b[k * n + j] as u64;
                            c[i * n + j] = (v % m as u64) as u32;
                        }
                    }
                }
                Element::ZMat { m, n, entries: c }
            }
            _ => panic!("cannot multiply elements of different kinds"),
        }
    }

    /// Inverse of the payload.  `ZMat` falls back to powering, which is only
    /// used for generator payloads; full inverse tables are built by index
    /// recurrences in the group engine.
    pub fn inverse(&self) -> Element {
        match self {
            Element::Perm(p) => {
                let mut inv = vec![0u16; p.len()];
                for (i, &im) in p.iter().enumerate() {
                    inv[im as usize] = i as u16;
                }
                Element::Perm(inv)
            }
            Element::Mat(a) => Element::Mat(a.inverse().expect("group element is invertible")),
            Element::ZMat { .. } => {
                let mut pow = self.clone();
                let mut prev = self.identity_like();
                // x^(ord-1) is the inverse; ord is bounded by the group order,
                // and this only runs on the handful of generator payloads.
                loop {
                    if pow.is_identity() {
                        return prev;
                    }
                    prev = pow.clone();
                    pow = pow.mul(self);
                }
            }
        }
    }

    /// Canonical byte encoding; injective across kinds.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::new();
        match self {
            Element::Perm(p) => {
                out.push(1u8);
                out.extend_from_slice(&(p.len() as u32).to_le_bytes());
                for &im in p {
                    out.extend_from_slice(&im.to_le_bytes());
                }
            }
            Element::Mat(a) => {
                out.push(2u8);
                let f = a.field();
                out.extend_from_slice(&f.p.to_le_bytes());
                out.extend_from_slice(&f.k.to_le_bytes());
                out.extend_from_slice(&(a.nrows() as u32).to_le_bytes());
                for i in 0..a.nrows() {
                    for j in 0..a.ncols() {
                        out.extend_from_slice(&a.get(i, j).to_le_bytes());
                    }
                }
            }
            Element::ZMat { m, n, entries } => {
                out.push(3u8);
                out.extend_from_slice(&m.to_le_bytes());
                out.extend_from_slice(&(*n as u32).to_le_bytes());
                for &e in entries {
                    out.extend_from_slice(&e.to_le_bytes());
                }
            }
        }
        out
    }

    /// Degree of the natural domain: points for a permutation, matrix side
    /// otherwise.  Used for size checks when combining groups.
    pub fn degree(&self) -> usize {
        match self {
            Element::Perm(p) => p.len(),
            Element::Mat(a) => a.nrows(),
            Element::ZMat { n, .. } => *n,
        }
    }

    /// Converts a 1-based cycle list into an image table of the given degree.
    pub fn perm_from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Element> {
        if degree > u16::MAX as usize + 1 {
            return Err(Error::Invalid(format!(
                "permutation degree {degree} exceeds 65536"
            )));
        }
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                let a = cycle[w];
                let b = cycle[(w + 1) % cycle.len()];
                if a == 0 || b == 0 || a > degree || b > degree {
                    return Err(Error::Invalid(format!(
                        "cycle point out of range 1..={degree}"
                    )));
                }
                if images[a - 1] != (a - 1) as u16 {
                    return Err(Error::Invalid(format!(
                        "point {a} appears twice in cycle list"
                    )));
                }
                images[a - 1] = (b - 1) as u16;
            }
            // A cycle writes each member exactly once, so the double-write
            // check above catches overlapping cycles but not a repeated
            // point inside one cycle; that shows up as a non-bijection.
        }
        let mut seen = vec![false; degree];
        for &im in &images {
            if seen[im as usize] {
                return Err(Error::Invalid("cycle list is not a permutation".into()));
            }
            seen[im as usize] = true;
        }
        Ok(Element::Perm(images))
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.encode() == other.encode()
    }
}
impl Eq for Element {}

impl std::hash::Hash for Element {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.encode().hash(state);
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Element {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.encode().cmp(&other.encode())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_composition_is_left_to_right() {
        // a = (1 2 3), b = (1 2) on three points, 0-based internally.
        let a = Element::Perm(vec![1, 2, 0]);
        let b = Element::Perm(vec![1, 0, 2]);
        // apply a then b: 0 -> 1 -> 0, 1 -> 2 -> 2, 2 -> 0 -> 1.
        assert_eq!(a.mul(&b), Element::Perm(vec![0, 2, 1]));
        // the other order: 0 -> 1 -> 2, 1 -> 0 -> 1, 2 -> 2 -> 0.
        assert_eq!(b.mul(&a), Element::Perm(vec![2, 1, 0]));
    }

    #[test]
    fn inverse_round_trips_each_kind() {
        let p = Element::Perm(vec![2, 0, 1, 4, 3]);
        assert!(p.mul(&p.inverse()).is_identity());

        let f = crate::fqlinalg::field_make(5, 1).unwrap();
        let m = Element::Mat(Matrix::from_rows(f, &[vec![1, 2], vec![0, 1]]));
        assert!(m.mul(&m.inverse()).is_identity());

        let z = Element::ZMat { m: 25, n: 2, entries: vec![1, 1, 0, 1] };
        let zi = z.inverse();
        assert!(z.mul(&zi).is_identity());
        assert_eq!(zi, Element::ZMat { m: 25, n: 2, entries: vec![1, 24, 0, 1] });
    }

    #[test]
    fn cycle_parser_builds_expected_images() {
        let e = Element::perm_from_cycles(5, &[vec![1, 2, 3], vec![4, 5]]).unwrap();
        assert_eq!(e, Element::Perm(vec![1, 2, 0, 4, 3]));
        assert!(Element::perm_from_cycles(3, &[vec![1, 2], vec![2, 3]]).is_err());
        assert!(Element::perm_from_cycles(2, &[vec![1, 3]]).is_err());
    }

    #[test]
    fn encodings_distinguish_kinds_and_values() {
        let a = Element::Perm(vec![0, 1]);
        let b = Element::Perm(vec![1, 0]);
        let f = crate::fqlinalg::field_make(2, 1).unwrap();
        let c = Element::Mat(Matrix::identity(f, 2));
        assert_ne!(a.encode(), b.encode());
        assert_ne!(a.encode(), c.encode());
        assert!(a < b, "identity sorts before the transposition");
    }
}
