//! Truncated representation-growth series with exact rational evaluation,
//! plus the arithmetic certificate suites behind the uniform-boundedness
//! and product-family arguments. No floating point anywhere: evaluations
//! are BigRational, comparisons are exact.

use crate::fqlinalg::field_of_order;
use crate::groups::{GroupSpec, DEFAULT_ENUM_CAP};
use crate::repcount::{irreducibles, product_counts, CountTable};
use crate::{Error, Result};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial truncation of sum a[n] X^(n-1); coeffs[i] stores a[i+1].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<u64>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<u64>) -> TruncatedSeries {
        assert!(!coeffs.is_empty());
        TruncatedSeries { coeffs }
    }

    /// The series of the trivial group: a[1] = 1, everything else 0.
    pub fn one(degree: usize) -> TruncatedSeries {
        let mut coeffs = vec![0; degree.max(1)];
        coeffs[0] = 1;
        TruncatedSeries { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// a[n], 1-based; zero beyond the truncation.
    pub fn coeff(&self, n: usize) -> u64 {
        if n == 0 {
            return 0;
        }
        self.coeffs.get(n - 1).copied().unwrap_or(0)
    }

    /// Ordinary power-series product truncated to `degree` coefficients.
    /// Dropping the tail only loses non-negative terms, so evaluations of
    /// the truncation at x in [0, 1) are lower bounds.
    pub fn mul_truncated(&self, other: &TruncatedSeries, degree: usize) -> TruncatedSeries {
        let mut coeffs = vec![0u64; degree.max(1)];
        for n in 1..=coeffs.len() {
            coeffs[n - 1] = (1..=n).map(|i| self.coeff(i) * other.coeff(n + 1 - i)).sum();
        }
        TruncatedSeries { coeffs }
    }

    /// Exact value of sum a[n] x^(n-1).
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for &a in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(a.into());
        }
        acc
    }
}

pub fn series_from_counts(table: &CountTable, degree: usize) -> Result<TruncatedSeries> {
    if degree == 0 || degree > table.max_dim {
        return Err(Error::Invalid(format!(
            "series degree {degree} outside the tabulated range 1..={}",
            table.max_dim
        )));
    }
    Ok(TruncatedSeries::new(table.r_star[..degree].to_vec()))
}

/// Exact value at x = q^(-c) of the product of the truncations to `degree`.
/// Coefficients are non-negative, so this is a certified lower bound for
/// the value of the full product series.
pub fn series_product_eval(
    series: &[TruncatedSeries],
    degree: usize,
    q: u64,
    c: u32,
) -> BigRational {
    let product = series
        .iter()
        .fold(TruncatedSeries::one(degree), |acc, s| acc.mul_truncated(s, degree));
    product.eval(&q_power_inverse(q, c))
}

fn q_power_inverse(q: u64, c: u32) -> BigRational {
    BigRational::new(1.into(), BigUint::from(q).pow(c).into())
}

/// One sampled uniform-boundedness inequality S(q^-c) <= B q^c.
pub struct UniformRow {
    pub q: u64,
    pub value: BigRational,
    pub bound: BigRational,
}

impl UniformRow {
    pub fn holds(&self) -> bool {
        self.value <= self.bound
    }
}

pub fn uniform_bounded_check(
    samples: &[(u64, TruncatedSeries)],
    c: u32,
    b: &BigRational,
) -> Vec<UniformRow> {
    samples
        .iter()
        .map(|(q, s)| {
            let value = s.eval(&q_power_inverse(*q, c));
            let bound = b * BigRational::from_integer(BigUint::from(*q).pow(c).into());
            UniformRow { q: *q, value, bound }
        })
        .collect()
}

/// Two exactly evaluated sides of a closed-form series inequality.
pub struct BoundReport {
    pub computed: BigRational,
    pub bound: BigRational,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        self.computed <= self.bound
    }
}

/// Exact truncated series of the metabelian group C_p^n x| C_eta over
/// GF(q) against its closed form gcd(eta, q-1) + (p^n - 1) x^(eta - 1).
/// Every irreducible dimension is 1 or eta, so truncation at eta is exact.
pub fn gstar_bound_check(
    p: u32,
    n: usize,
    q: u64,
    x: &BigRational,
    seed: u64,
    chop_cap: usize,
) -> Result<BoundReport> {
    if x.is_negative() || *x >= BigRational::one() {
        return Err(Error::Invalid("evaluation point must lie in [0, 1)".into()));
    }
    let eta = u64::from(p - 1) / 2;
    let g = crate::groups::catalog::g_star(p, n, DEFAULT_ENUM_CAP)?;
    let field = field_of_order(q)?;
    let table = irreducibles(&g, &field, eta as usize, seed, chop_cap, None)?.table;
    let computed = series_from_counts(&table, eta as usize)?.eval(x);
    let gcd = num_integer::gcd(eta, q - 1);
    let pn_minus_1 = BigUint::from(p).pow(n as u32) - BigUint::one();
    let bound = BigRational::from_integer(gcd.into())
        + BigRational::from_integer(pn_minus_1.into()) * pow_rational(x, eta as usize - 1);
    Ok(BoundReport { computed, bound })
}

fn pow_rational(x: &BigRational, e: usize) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Exact truncated series of SL_n(F_q)^m over GF(ell^j) against the
/// non-defining-characteristic closed form (1 + q^(n+3) x^(q^(n-1)-1))^m.
/// The single-factor table is full, so the m-fold convolution is exact up
/// to the largest product dimension.
pub fn sl_bound_check(
    n: u32,
    q: u64,
    m: u32,
    coeff_field_order: u64,
    x: &BigRational,
    seed: u64,
    chop_cap: usize,
) -> Result<BoundReport> {
    if x.is_negative() || *x >= BigRational::one() {
        return Err(Error::Invalid("evaluation point must lie in [0, 1)".into()));
    }
    let g = GroupSpec::parse(&format!("sl {n} {q}"))?.build(DEFAULT_ENUM_CAP)?;
    let field = field_of_order(coeff_field_order)?;
    let order = g.order();
    let single = irreducibles(&g, &field, order, seed, chop_cap, None)?.table;
    let top = single
        .r_star
        .iter()
        .rposition(|&a| a > 0)
        .map(|i| i + 1)
        .unwrap_or(1);
    let degree = top.pow(m);
    let tables: Vec<&CountTable> = std::iter::repeat_n(&single, m as usize).collect();
    let combined = product_counts(&tables, degree)?;
    let computed = series_from_counts(&combined, degree)?.eval(x);
    let exponent = BigUint::from(q).pow(n - 1) - BigUint::one();
    let exponent = exponent
        .to_usize()
        .ok_or_else(|| Error::Invalid("bound exponent overflows".into()))?;
    let factor = BigRational::one()
        + BigRational::from_integer(BigUint::from(q).pow(n + 3).into())
            * pow_rational(x, exponent);
    Ok(BoundReport { computed, bound: pow_rational(&factor, m as usize) })
}

/// One verified arithmetic claim with the range it was checked over.
pub struct SuiteRow {
    pub label: &'static str,
    pub checked: usize,
    pub first_failure: Option<u64>,
}

impl SuiteRow {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// The elementary inequality chains, each verified by exact integer
/// arithmetic over its configured range (squaring removes half powers).
pub fn inequality_suite() -> Vec<SuiteRow> {
    let mut rows = Vec::new();

    // 2n^(3/2) < n^2 - n - 2, i.e. 4n^3 < (n^2 - n - 2)^2.
    let mut first = None;
    for n in 9u64..=10_000 {
        let lhs = 4u128 * u128::from(n).pow(3);
        let rhs = (u128::from(n) * u128::from(n) - u128::from(n) - 2).pow(2);
        if lhs >= rhs {
            first = Some(n);
            break;
        }
    }
    rows.push(SuiteRow { label: "2n^(3/2) < n^2-n-2 for 9 <= n <= 10^4", checked: 9992, first_failure: first });

    // 1 - n^-k - k n^(3/2-k) >= 1/3, i.e. (2n^k - 3)^2 >= 9 k^2 n^3.
    let mut first = None;
    let mut checked = 0;
    'outer: for n in 12u64..=1000 {
        let n3 = BigUint::from(n).pow(3);
        for k in 2u32..=40 {
            checked += 1;
            let lhs = (BigUint::from(2u32) * BigUint::from(n).pow(k) - BigUint::from(3u32)).pow(2);
            let rhs = BigUint::from(9 * u64::from(k) * u64::from(k)) * &n3;
            if lhs < rhs {
                first = Some(n);
                break 'outer;
            }
        }
    }
    rows.push(SuiteRow {
        label: "1 - n^-k - k n^(3/2-k) >= 1/3 for 12 <= n <= 10^3, 2 <= k <= 40",
        checked,
        first_failure: first,
    });

    // q^(2 floor(n^(3/2))) <= |PSL_n(F_q)|.
    let mut first = None;
    let mut checked = 0;
    'outer: for n in 9u32..=20 {
        for q in [2u64, 3, 4, 5, 7, 9] {
            checked += 1;
            let e = BigUint::from(n).pow(3).sqrt().to_u32().unwrap();
            if BigUint::from(q).pow(2 * e) > psl_order(n, q) {
                first = Some(u64::from(n));
                break 'outer;
            }
        }
    }
    rows.push(SuiteRow {
        label: "q^(n^(3/2)) <= sqrt(|PSL_n(F_q)|) for 9 <= n <= 20, q <= 9",
        checked,
        first_failure: first,
    });

    rows
}

fn psl_order(n: u32, q: u64) -> BigUint {
    let qb = BigUint::from(q);
    let mut order = qb.pow(n * (n - 1) / 2);
    for i in 2..=n {
        order *= qb.pow(i) - BigUint::one();
    }
    order / BigUint::from(num_integer::gcd(u64::from(n), q - 1))
}

/// Conjugacy-class count of the group against the bound 28 q^(n-1).
pub fn class_count_check(n: u32, q: u64) -> Result<(usize, u64, bool)> {
    let g = GroupSpec::parse(&format!("sl {n} {q}"))?.build(DEFAULT_ENUM_CAP)?;
    let classes = g.conjugacy_classes().len();
    let bound = 28 * q.pow(n - 1);
    Ok((classes, bound, (classes as u64) < bound))
}

/// Multiplicity-versus-module-size families: a(i) <= bound(i)^c across the
/// range, exact big-integer comparison.
#[derive(Clone, Copy, Debug)]
pub enum Pfp1Family {
    /// a(p) = 2^p against 2^((p-1)/2) over primes p.
    Sl2Exponential,
    /// a(b) = b!/8 against b^(b-2).
    AltFactorial,
}

pub fn family_pfp1_check(family: Pfp1Family, c: u32, lo: u64, hi: u64) -> SuiteRow {
    let mut first = None;
    let mut checked = 0;
    match family {
        Pfp1Family::Sl2Exponential => {
            for p in lo.max(5)..=hi {
                if !is_prime_u64(p) {
                    continue;
                }
                checked += 1;
                let a = BigUint::from(2u32).pow(p as u32);
                let bound = BigUint::from(2u32).pow(((p as u32) - 1) / 2 * c);
                if a > bound {
                    first = Some(p);
                    break;
                }
            }
            SuiteRow { label: "2^p <= (2^((p-1)/2))^c over primes", checked, first_failure: first }
        }
        Pfp1Family::AltFactorial => {
            let mut factorial = BigUint::one();
            for i in 2..lo.max(5) {
                factorial *= i;
            }
            for b in lo.max(5)..=hi {
                factorial *= b;
                checked += 1;
                let a = &factorial / BigUint::from(8u32);
                let bound = BigUint::from(b).pow((b as u32 - 2) * c);
                if a > bound {
                    first = Some(b);
                    break;
                }
            }
            SuiteRow { label: "b!/8 <= (b^(b-2))^c", checked, first_failure: first }
        }
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// One member of the metabelian product family: prime p = 3 mod 4, rank n,
/// eta = (p-1)/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyPair {
    pub p: u64,
    pub n: u32,
    pub eta: u64,
}

/// Deterministic greedy family: the i-th member takes n_i = i and the
/// smallest prime p = 3 mod 4 above the previous one whose eta = (p-1)/2 is
/// coprime to all earlier ones and satisfies p^i - 1 <= 2^eta. The ranks
/// are then strictly increasing and unbounded by construction.
pub fn gstar_family_pairs(count: usize) -> Vec<FamilyPair> {
    let mut pairs: Vec<FamilyPair> = Vec::with_capacity(count);
    let mut p = 3u64;
    for i in 1..=count as u32 {
        loop {
            p += 4;
            if !is_prime_u64(p) {
                continue;
            }
            let eta = (p - 1) / 2;
            if pairs.iter().any(|prev| num_integer::gcd(prev.eta, eta) != 1) {
                continue;
            }
            if BigUint::from(p).pow(i) - BigUint::one() <= BigUint::from(2u32).pow(eta as u32) {
                pairs.push(FamilyPair { p, n: i, eta });
                break;
            }
        }
    }
    pairs
}

/// Partial product of the per-factor closed-form majorants
/// gcd(eta_i, q-1) + (p_i^(n_i) - 1) q^(-2(eta_i - 1)) for the greedy
/// family, against (q-1) times a rational strict upper bound for e.
pub fn family_product_bound(count: usize, qs: &[u64]) -> Vec<UniformRow> {
    let e_majorant = BigRational::new(2_718_281_829u64.into(), 1_000_000_000u64.into());
    let pairs = gstar_family_pairs(count);
    qs.iter()
        .map(|&q| {
            let mut value = BigRational::one();
            for pair in &pairs {
                let gcd = num_integer::gcd(pair.eta, q - 1);
                let pn_minus_1 =
                    BigRational::from_integer((BigUint::from(pair.p).pow(pair.n) - BigUint::one()).into());
                let tail = BigRational::new(
                    1.into(),
                    BigUint::from(q).pow(2 * (pair.eta as u32 - 1)).into(),
                );
                value *= BigRational::from_integer(gcd.into()) + pn_minus_1 * tail;
            }
            let bound =
                BigRational::from_integer(BigUint::from(q - 1).into()) * e_majorant.clone();
            UniformRow { q, value, bound }
        })
        .collect()
}

/// r* of a direct product by direct chop equals the divisor convolution of
/// the factor tables, for every dimension up to `degree`.
pub struct ConvolutionReport {
    pub direct: Vec<u64>,
    pub convolved: Vec<u64>,
}

impl ConvolutionReport {
    pub fn holds(&self) -> bool {
        self.direct == self.convolved
    }
}

pub fn convolution_identity_check(
    g_spec: &str,
    h_spec: &str,
    field_order: u64,
    degree: usize,
    seed: u64,
    chop_cap: usize,
) -> Result<ConvolutionReport> {
    let field = field_of_order(field_order)?;
    let g = GroupSpec::parse(g_spec)?.build(DEFAULT_ENUM_CAP)?;
    let h = GroupSpec::parse(h_spec)?.build(DEFAULT_ENUM_CAP)?;
    let product = GroupSpec::parse(&format!("product ({g_spec}) ({h_spec})"))?
        .build(DEFAULT_ENUM_CAP)?;
    let tg = irreducibles(&g, &field, degree, seed, chop_cap, None)?.table;
    let th = irreducibles(&h, &field, degree, seed, chop_cap, None)?.table;
    let direct = irreducibles(&product, &field, degree, seed, chop_cap, None)?.table;
    let convolved = product_counts(&[&tg, &th], degree)?;
    Ok(ConvolutionReport {
        direct: direct.r_star[..degree].to_vec(),
        convolved: convolved.r_star[..degree].to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn series_arithmetic_and_evaluation() {
        let one = TruncatedSeries::one(4);
        assert_eq!(one.eval(&rat(1, 2)), rat(1, 1));
        let prod = one.mul_truncated(&one, 4);
        assert_eq!(prod, TruncatedSeries::one(4));

        // (1 + 2X)(1 + X) at x = 1/2: (1+1)(1+1/2) = 3, truncation exact
        // since a[4] of the product vanishes.
        let a = TruncatedSeries::new(vec![1, 2]);
        let b = TruncatedSeries::new(vec![1, 1]);
        assert_eq!(series_product_eval(&[a, b], 4, 2, 1), rat(3, 1));
    }

    #[test]
    fn truncated_product_evaluation_is_monotone_in_degree() {
        let a = TruncatedSeries::new(vec![1, 2, 1, 3, 0, 2]);
        let b = TruncatedSeries::new(vec![2, 1, 2, 0, 1, 1]);
        let x = rat(1, 3);
        let mut last = BigRational::zero();
        for d in 1..=6 {
            let v = a.mul_truncated(&b, d).eval(&x);
            assert!(v >= last, "degree {d}");
            last = v;
        }
    }

    #[test]
    fn gstar_series_coefficients_from_counts() {
        let g = crate::groups::catalog::g_star(7, 2, DEFAULT_ENUM_CAP).unwrap();
        let f2 = field_make(2, 1).unwrap();
        let table = irreducibles(&g, &f2, 4, 1, 2000, None).unwrap().table;
        let s = series_from_counts(&table, 4).unwrap();
        assert_eq!(s.coeff(1), 1, "gcd(3, 1) linear characters");
        assert_eq!(s.coeff(2), 0);
        assert!(s.coeff(3) > 0, "induced characters of dimension eta");
    }

    #[test]
    fn gstar_closed_form_bound_holds() {
        let report = gstar_bound_check(7, 2, 4, &rat(1, 16), 1, 2000).unwrap();
        assert!(report.holds());
        let report = gstar_bound_check(7, 1, 2, &rat(1, 4), 1, 2000).unwrap();
        assert!(report.holds());
        // x = 0 collapses to the linear-character count, with equality.
        let report = gstar_bound_check(7, 2, 4, &rat(0, 1), 1, 2000).unwrap();
        assert_eq!(report.computed, rat(3, 1));
        assert_eq!(report.computed, report.bound);
    }

    #[test]
    fn sl_closed_form_bound_holds_on_desk_instances() {
        // SL2(F5) over GF(4): series 1 + 2x + x^3 against 1 + 5^5 x^4.
        let report = sl_bound_check(2, 5, 1, 4, &rat(1, 4), 1, 2000).unwrap();
        assert_eq!(report.computed, rat(97, 64));
        assert!(report.holds());
        // The exact product-group series sits below the ordinary square of
        // the single-factor value, which sits below the closed form.
        let report = sl_bound_check(2, 5, 2, 4, &rat(1, 4), 1, 2000).unwrap();
        assert!(report.computed <= rat(97 * 97, 64 * 64));
        assert!(report.computed > rat(2, 1));
        assert!(report.holds());
    }

    #[test]
    fn uniform_check_flags_constructed_violations() {
        let fine = TruncatedSeries::one(3);
        let rows = uniform_bounded_check(&[(2, fine)], 1, &rat(1, 1));
        assert!(rows[0].holds());

        // a[1] = q^(3c) forces S(q^-c) = q^3c > B q^c for B = q.
        let q = 3u64;
        let bad = TruncatedSeries::new(vec![q.pow(3), 0, 0]);
        let rows = uniform_bounded_check(&[(q, bad)], 1, &rat(3, 1));
        assert!(!rows[0].holds());
    }

    #[test]
    fn inequality_suite_is_all_green() {
        for row in inequality_suite() {
            assert!(row.holds(), "{}: first failure {:?}", row.label, row.first_failure);
            assert!(row.checked > 0);
        }
    }

    #[test]
    fn class_counts_stay_under_the_linear_bound() {
        let (classes, bound, holds) = class_count_check(2, 5).unwrap();
        assert_eq!((classes, bound), (9, 140));
        assert!(holds);
        let (classes, _, holds) = class_count_check(3, 2).unwrap();
        assert_eq!(classes, 6);
        assert!(holds);
    }

    #[test]
    fn exponential_family_fails_at_square_but_holds_at_cube() {
        // 2^p versus 2^(p-1): false for every prime, and honestly reported.
        let row = family_pfp1_check(Pfp1Family::Sl2Exponential, 2, 5, 100);
        assert_eq!(row.first_failure, Some(5));
        // One extra power restores it: 2^p <= 2^(3(p-1)/2) for p >= 3.
        let row = family_pfp1_check(Pfp1Family::Sl2Exponential, 3, 5, 10_000);
        assert!(row.holds());
        assert_eq!(row.checked, 1227);
    }

    #[test]
    fn factorial_family_holds_at_square() {
        let row = family_pfp1_check(Pfp1Family::AltFactorial, 2, 5, 500);
        assert!(row.holds());
        assert_eq!(row.checked, 496);
    }

    #[test]
    fn greedy_family_pairs_are_admissible() {
        let pairs = gstar_family_pairs(50);
        assert_eq!(pairs.len(), 50);
        assert_eq!(pairs[0], FamilyPair { p: 7, n: 1, eta: 3 });
        assert_eq!(pairs[1], FamilyPair { p: 23, n: 2, eta: 11 });
        for (i, pair) in pairs.iter().enumerate() {
            assert_eq!(pair.p % 4, 3);
            assert_eq!(pair.n as usize, i + 1);
            assert!(
                BigUint::from(pair.p).pow(pair.n) - BigUint::one()
                    <= BigUint::from(2u32).pow(pair.eta as u32)
            );
            for prev in &pairs[..i] {
                assert_eq!(num_integer::gcd(prev.eta, pair.eta), 1);
            }
        }
    }

    #[test]
    fn family_partial_products_stay_under_the_uniform_bound() {
        let rows = family_product_bound(50, &[2, 3, 4, 5, 7, 8, 9]);
        for row in &rows {
            assert!(row.holds(), "q = {}", row.q);
        }
    }

    #[test]
    fn convolution_identity_on_small_products() {
        let report = convolution_identity_check("cyclic 3", "sym 3", 2, 4, 1, 2000).unwrap();
        assert!(report.holds(), "{:?} vs {:?}", report.direct, report.convolved);
        let report = convolution_identity_check("cyclic 2", "cyclic 2", 2, 2, 1, 2000).unwrap();
        assert!(report.holds());
        assert_eq!(report.direct, vec![1, 0]);
    }
}
