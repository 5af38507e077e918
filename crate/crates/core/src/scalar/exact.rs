//! Exact real arithmetic for the max-times semiring.
//!
//! Cycle geometric means are k-th roots of rationals, so an exact backend
//! cannot stop at `Q`. An [`Exact`] value is either a rational or an element
//! `c₀ + c₁θ + … + c_{k−1}θ^{k−1}` of a simple radical extension `Q(θ)` with
//! `θ = m^{1/k}` real and positive. The extension is kept in canonical form
//! (`m` an integer that is not a p-th power for any prime `p | k`), which makes
//! `t^k − m` irreducible, so the coefficient vector is unique and equality is
//! structural. Signs are decided by interval refinement of `θ`.
//!
//! Values from two different extensions cannot be combined; doing so panics.
//! In practice every value of a pipeline lives in the extension generated by
//! the λ of the input matrix.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial-division bound used when pulling k-th powers out of a radicand.
const TRIAL_DIVISION_LIMIT: u64 = 1 << 16;

/// The real field `Q(m^{1/k})`.
#[derive(Debug, Clone)]
pub struct RadicalField {
    radicand: BigInt,
    degree: u32,
    /// `θ` as a float, cached for the sign fast paths.
    theta: f64,
}

impl PartialEq for RadicalField {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.radicand == other.radicand
    }
}

impl Eq for RadicalField {}

impl std::hash::Hash for RadicalField {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.radicand.hash(state);
        self.degree.hash(state);
    }
}

impl RadicalField {
    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    fn new(radicand: BigInt, degree: u32) -> Self {
        let theta = (big_ln(&radicand) / degree as f64).exp();
        RadicalField { radicand, degree, theta }
    }

    fn generator_f64(&self) -> f64 {
        self.theta
    }

    /// Rational bounds `lo ≤ θ < hi` with `hi − lo = 2^{-bits}`.
    fn generator_bounds(&self, bits: usize) -> (BigRational, BigRational) {
        let scaled: BigInt = &self.radicand << (self.degree as usize * bits);
        let floor = scaled.nth_root(self.degree);
        let den = BigInt::one() << bits;
        (
            BigRational::new(floor.clone(), den.clone()),
            BigRational::new(floor + 1, den),
        )
    }
}

#[derive(Clone)]
enum Repr {
    Rational(BigRational),
    /// Invariant: `coeffs.len() == field.degree` and some coefficient of
    /// index ≥ 1 is nonzero.
    Radical {
        field: Arc<RadicalField>,
        coeffs: Vec<BigRational>,
    },
}

/// An exact real number: a rational or an element of a radical extension.
#[derive(Clone)]
pub struct Exact(Repr);

impl Exact {
    pub fn zero() -> Self {
        Exact(Repr::Rational(BigRational::zero()))
    }

    pub fn one() -> Self {
        Exact(Repr::Rational(BigRational::one()))
    }

    /// The rational `numer / denom`. Panics if `denom == 0`.
    pub fn new(numer: i64, denom: i64) -> Self {
        Exact(Repr::Rational(BigRational::new(numer.into(), denom.into())))
    }

    pub fn from_integer(value: i64) -> Self {
        Exact(Repr::Rational(BigRational::from_integer(value.into())))
    }

    pub fn from_ratio(value: BigRational) -> Self {
        Exact(Repr::Rational(value))
    }

    /// Exact binary expansion of a finite float.
    pub fn from_f64(value: f64) -> Option<Self> {
        BigRational::from_float(value).map(Self::from_ratio)
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Rational(r) if r.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.0, Repr::Rational(_))
    }

    pub fn as_ratio(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(r) => Some(r),
            Repr::Radical { .. } => None,
        }
    }

    pub fn field(&self) -> Option<&RadicalField> {
        match &self.0 {
            Repr::Rational(_) => None,
            Repr::Radical { field, .. } => Some(field),
        }
    }

    /// Coefficients on the power basis `1, θ, …, θ^{k−1}`; a single entry for
    /// rationals.
    pub fn coefficients(&self) -> Vec<BigRational> {
        match &self.0 {
            Repr::Rational(r) => vec![r.clone()],
            Repr::Radical { coeffs, .. } => coeffs.clone(),
        }
    }

    pub fn signum(&self) -> Ordering {
        match &self.0 {
            Repr::Rational(r) => r.cmp(&BigRational::zero()),
            Repr::Radical { field, coeffs } => radical_sign(field, coeffs),
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Self {
        match &self.0 {
            Repr::Rational(r) => {
                assert!(!r.is_zero(), "reciprocal of zero");
                Exact(Repr::Rational(r.recip()))
            }
            Repr::Radical { field, coeffs } => radical_recip(field, coeffs),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Exact::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The positive real `degree`-th root of a nonnegative value.
    ///
    /// Roots of rationals always succeed (possibly opening a new extension).
    /// Roots of irrational values succeed only for monomials `cθ^e` whose
    /// root lies in the same extension.
    pub fn nth_root(&self, degree: u32) -> Result<Self> {
        assert!(degree > 0, "zeroth root");
        if self.signum() == Ordering::Less {
            return Err(Error::Unrepresentable(format!(
                "even root of negative value {self}"
            )));
        }
        if self.is_zero() || degree == 1 {
            return Ok(self.clone());
        }
        match &self.0 {
            Repr::Rational(r) => Ok(rational_root(r, degree)),
            Repr::Radical { field, coeffs } => monomial_root(field, coeffs, degree)
                .ok_or_else(|| {
                    Error::Unrepresentable(format!(
                        "{degree}-th root of {self} does not lie in Q({}^(1/{}))",
                        field.radicand, field.degree
                    ))
                }),
        }
    }

    /// Float value and the sum of absolute term values, which bounds the
    /// rounding error of the value.
    fn estimate(&self) -> (f64, f64) {
        match &self.0 {
            Repr::Rational(r) => {
                let v = r.to_f64().unwrap_or(f64::NAN);
                (v, v.abs())
            }
            Repr::Radical { field, coeffs } => {
                let mut power = 1.0;
                let (mut sum, mut magnitude) = (0.0f64, 0.0f64);
                for c in coeffs {
                    let term = c.to_f64().unwrap_or(f64::NAN) * power;
                    sum += term;
                    magnitude += term.abs();
                    power *= field.theta;
                }
                (sum, magnitude)
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Repr::Radical { field, coeffs } => {
                let theta = field.generator_f64();
                let mut power = 1.0;
                let mut sum = 0.0;
                for c in coeffs {
                    sum += c.to_f64().unwrap_or(f64::NAN) * power;
                    power *= theta;
                }
                sum
            }
        }
    }

    /// `ln` of a positive value with a conservative bound on its absolute
    /// error; the bound is infinite when no float estimate is reliable.
    pub fn ln_with_error(&self) -> (f64, f64) {
        match &self.0 {
            Repr::Rational(r) => {
                let (n, d) = (big_ln(r.numer()), big_ln(r.denom()));
                (n - d, 1e-13 * (1.0 + n.abs() + d.abs()))
            }
            Repr::Radical { .. } => {
                let (v, magnitude) = self.estimate();
                if v > 0.0 && magnitude.is_finite() && magnitude > 1e-280 {
                    let ln = v.ln();
                    (ln, 1e-13 * (1.0 + ln.abs() + magnitude / v))
                } else {
                    (f64::NAN, f64::INFINITY)
                }
            }
        }
    }

    /// Natural logarithm of a positive value; robust for huge rationals.
    pub fn ln(&self) -> f64 {
        match &self.0 {
            Repr::Rational(r) => {
                if r.is_zero() {
                    return f64::NEG_INFINITY;
                }
                big_ln(r.numer()) - big_ln(r.denom())
            }
            Repr::Radical { .. } => self.to_f64().ln(),
        }
    }

    fn coeffs_in(&self, field: &RadicalField) -> Vec<BigRational> {
        match &self.0 {
            Repr::Rational(r) => {
                let mut v = vec![BigRational::zero(); field.degree as usize];
                v[0] = r.clone();
                v
            }
            Repr::Radical { coeffs, .. } => coeffs.clone(),
        }
    }
}

fn build(field: Arc<RadicalField>, coeffs: Vec<BigRational>) -> Exact {
    debug_assert_eq!(coeffs.len(), field.degree as usize);
    if coeffs[1..].iter().all(Zero::is_zero) {
        let mut coeffs = coeffs;
        Exact(Repr::Rational(coeffs.swap_remove(0)))
    } else {
        Exact(Repr::Radical { field, coeffs })
    }
}

fn common_field(a: &Exact, b: &Exact) -> Arc<RadicalField> {
    match (&a.0, &b.0) {
        (Repr::Radical { field: f, .. }, Repr::Radical { field: g, .. }) => {
            assert!(
                Arc::ptr_eq(f, g) || f == g,
                "cannot combine values of Q({}^(1/{})) and Q({}^(1/{}))",
                f.radicand,
                f.degree,
                g.radicand,
                g.degree
            );
            f.clone()
        }
        (Repr::Radical { field, .. }, _) | (_, Repr::Radical { field, .. }) => field.clone(),
        _ => unreachable!("common_field called on two rationals"),
    }
}

fn radical_sign(field: &RadicalField, coeffs: &[BigRational]) -> Ordering {
    let theta = field.generator_f64();
    if theta.is_finite() {
        let mut power = 1.0;
        let mut sum = 0.0f64;
        let mut magnitude = 0.0f64;
        let mut usable = true;
        for c in coeffs {
            match c.to_f64() {
                Some(cf) if cf.is_finite() => {
                    let term = cf * power;
                    sum += term;
                    magnitude += term.abs();
                }
                _ => usable = false,
            }
            power *= theta;
        }
        if usable && magnitude.is_finite() && magnitude > 1e-280 && sum.abs() > 1e-9 * magnitude {
            return sum.partial_cmp(&0.0).unwrap();
        }
    }
    let zero = BigRational::zero();
    let mut bits = 64;
    loop {
        let (lo, hi) = field.generator_bounds(bits);
        let mut lower = BigRational::zero();
        let mut upper = BigRational::zero();
        let mut p_lo = BigRational::one();
        let mut p_hi = BigRational::one();
        for c in coeffs {
            if c > &zero {
                lower += c * &p_lo;
                upper += c * &p_hi;
            } else if c < &zero {
                lower += c * &p_hi;
                upper += c * &p_lo;
            }
            p_lo *= &lo;
            p_hi *= &hi;
        }
        if lower > zero {
            return Ordering::Greater;
        }
        if upper < zero {
            return Ordering::Less;
        }
        bits *= 2;
    }
}

fn radical_recip(field: &Arc<RadicalField>, coeffs: &[BigRational]) -> Exact {
    let k = field.degree as usize;
    let m = BigRational::from_integer(field.radicand.clone());
    let nonzero: Vec<usize> = (0..k).filter(|&e| !coeffs[e].is_zero()).collect();
    if let [e] = nonzero[..] {
        // (cθ^e)^{-1} = θ^{k-e} / (c m)
        let mut out = vec![BigRational::zero(); k];
        out[k - e] = (&coeffs[e] * &m).recip();
        return build(field.clone(), out);
    }
    // Column j of the multiplication-by-α map holds the coefficients of αθ^j.
    let mut system = vec![vec![BigRational::zero(); k]; k];
    for j in 0..k {
        for (i, c) in coeffs.iter().enumerate() {
            if i + j >= k {
                system[i + j - k][j] = c * &m;
            } else {
                system[i + j][j] = c.clone();
            }
        }
    }
    let mut rhs = vec![BigRational::zero(); k];
    rhs[0] = BigRational::one();
    build(field.clone(), solve(system, rhs))
}

/// Gauss–Jordan elimination for a nonsingular rational system.
fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Vec<BigRational> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("singular multiplication map: radical field is not canonical");
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for j in col..n {
            a[col][j] = &a[col][j] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for j in col..n {
                    let t = &factor * &a[col][j];
                    a[r][j] -= t;
                }
                let t = &factor * &b[col];
                b[r] -= t;
            }
        }
    }
    b
}

fn prime_factors(mut d: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= d {
        if d.is_multiple_of(p) {
            out.push(p);
            while d.is_multiple_of(p) {
                d /= p;
            }
        }
        p += 1;
    }
    if d > 1 {
        out.push(d);
    }
    out
}

fn perfect_root(x: &BigInt, p: u32) -> Option<BigInt> {
    let r = x.nth_root(p);
    (num_traits::pow(r.clone(), p as usize) == *x).then_some(r)
}

fn perfect_rational_root(x: &BigRational, p: u32) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = perfect_root(x.numer(), p)?;
    let d = perfect_root(x.denom(), p)?;
    Some(BigRational::new(n, d))
}

/// Canonical form of `r^{1/degree}` for a positive rational `r`.
fn rational_root(r: &BigRational, degree: u32) -> Exact {
    let mut r = r.clone();
    let mut degree = degree;
    'reduce: loop {
        for p in prime_factors(degree) {
            if let Some(root) = perfect_rational_root(&r, p) {
                r = root;
                degree /= p;
                continue 'reduce;
            }
        }
        break;
    }
    if degree == 1 {
        return Exact::from_ratio(r);
    }
    // r^{1/k} = (a b^{k-1})^{1/k} / b
    let (a, b) = (r.numer().clone(), r.denom().clone());
    let radicand = a * num_traits::pow(b.clone(), degree as usize - 1);
    let (outside, radicand) = extract_powers(radicand, degree);
    let coefficient = BigRational::new(outside, b);
    if radicand.is_one() {
        return Exact::from_ratio(coefficient);
    }
    let field = Arc::new(RadicalField::new(radicand, degree));
    let mut coeffs = vec![BigRational::zero(); degree as usize];
    coeffs[1] = coefficient;
    build(field, coeffs)
}

/// Splits `m = c^k · m'` by trial division; returns `(c, m')`.
fn extract_powers(mut m: BigInt, k: u32) -> (BigInt, BigInt) {
    let mut outside = BigInt::one();
    let mut p: u64 = 2;
    while p <= TRIAL_DIVISION_LIMIT {
        let pb = BigInt::from(p);
        if num_traits::pow(pb.clone(), k as usize) > m {
            break;
        }
        let mut count = 0u32;
        while (&m % &pb).is_zero() {
            m /= &pb;
            count += 1;
        }
        let whole = count / k;
        let rest = count % k;
        outside *= num_traits::pow(pb.clone(), whole as usize);
        // the leftover multiplicity stays under the radical
        m *= num_traits::pow(pb, rest as usize);
        p =if p == 2 { 3 } else { p + 2 };
    }
    (outside, m)
}

/// `(cθ^e)^{1/d}` as `c'θ^j` if such an element exists.
fn monomial_root(field: &Arc<RadicalField>, coeffs: &[BigRational], d: u32) -> Option<Exact> {
    let k = field.degree as usize;
    let nonzero: Vec<usize> = (0..k).filter(|&e| !coeffs[e].is_zero()).collect();
    let [e] = nonzero[..] else { return None };
    let c = &coeffs[e];
    let m = BigRational::from_integer(field.radicand.clone());
    let d = d as usize;
    for j in 0..k {
        if (j * d) % k != e % k || j * d < e {
            continue;
        }
        // (c'θ^j)^d = c'^d m^t θ^e with t = (jd − e)/k
        let t = (j * d - e) / k;
        let target = c / num_traits::pow(m.clone(), t);
        if let Some(root) = perfect_rational_root(&target, d as u32) {
            let mut out = vec![BigRational::zero(); k];
            out[j] = root;
            return Some(build(field.clone(), out));
        }
    }
    None
}

fn big_ln(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        x.to_f64().map_or(f64::NAN, f64::ln)
    } else {
        let shift = bits - 64;
        let top: BigInt = x >> shift as usize;
        top.to_f64().map_or(f64::NAN, f64::ln) + shift as f64 * std::f64::consts::LN_2
    }
}

impl PartialEq for Exact {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => a == b,
            (
                Repr::Radical { field: f, coeffs: a },
                Repr::Radical { field: g, coeffs: b },
            ) => (Arc::ptr_eq(f, g) || f == g) && a == b,
            _ => false,
        }
    }
}

impl Eq for Exact {}

impl PartialOrd for Exact {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exact {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => a.cmp(b),
            _ => {
                let ((x, mx), (y, my)) = (self.estimate(), other.estimate());
                let bound = 1e-9 * (mx + my);
                if (x - y).abs() > bound && bound.is_finite() && bound > 1e-280 {
                    return x.partial_cmp(&y).unwrap();
                }
                (self - other).signum()
            }
        }
    }
}

impl<'a> Add<&'a Exact> for &'a Exact {
    type Output = Exact;
    fn add(self, rhs: &Exact) -> Exact {
        if let (Repr::Rational(a), Repr::Rational(b)) = (&self.0, &rhs.0) {
            return Exact(Repr::Rational(a + b));
        }
        let field = common_field(self, rhs);
        let a = self.coeffs_in(&field);
        let b = rhs.coeffs_in(&field);
        build(field, a.into_iter().zip(b).map(|(x, y)| x + y).collect())
    }
}

impl Neg for &Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        match &self.0 {
            Repr::Rational(r) => Exact(Repr::Rational(-r)),
            Repr::Radical { field, coeffs } => Exact(Repr::Radical {
                field: field.clone(),
                coeffs: coeffs.iter().map(|c| -c).collect(),
            }),
        }
    }
}

impl<'a> Sub<&'a Exact> for &'a Exact {
    type Output = Exact;
    fn sub(self, rhs: &Exact) -> Exact {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Exact> for &'a Exact {
    type Output = Exact;
    fn mul(self, rhs: &Exact) -> Exact {
        match (&self.0, &rhs.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Exact(Repr::Rational(a * b)),
            (Repr::Rational(a), Repr::Radical { field, coeffs })
            | (Repr::Radical { field, coeffs }, Repr::Rational(a)) => {
                build(field.clone(), coeffs.iter().map(|c| c * a).collect())
            }
            (Repr::Radical { coeffs: a, .. }, Repr::Radical { coeffs: b, .. }) => {
                // Convolve integer numerators over a common denominator, then
                // reduce once per coefficient.
                let field = common_field(self, rhs);
                let k = field.degree as usize;
                let (a, da) = integer_form(a);
                let (b, db) = integer_form(b);
                let mut out = vec![BigInt::zero(); k];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        let t = x * y;
                        if i + j >= k {
                            out[i + j - k] += t * &field.radicand;
                        } else {
                            out[i + j] += t;
                        }
                    }
                }
                let den = da * db;
                build(field, out.into_iter().map(|c| BigRational::new(c, den.clone())).collect())
            }
        }
    }
}

/// `coeffs = ints / den` with `den` the least common denominator.
fn integer_form(coeffs: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (ints, den)
}

impl<'a> Div<&'a Exact> for &'a Exact {
    type Output = Exact;
    fn div(self, rhs: &Exact) -> Exact {
        if let (Repr::Rational(a), Repr::Rational(b)) = (&self.0, &rhs.0) {
            assert!(!b.is_zero(), "division by zero");
            return Exact(Repr::Rational(a / b));
        }
        self * &rhs.recip()
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Exact> for Exact {
            type Output = Exact;
            fn $m(self, rhs: Exact) -> Exact {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        -&self
    }
}

impl From<i64> for Exact {
    fn from(value: i64) -> Self {
        Exact::from_integer(value)
    }
}

impl From<BigRational> for Exact {
    fn from(value: BigRational) -> Self {
        Exact::from_ratio(value)
    }
}

fn fmt_ratio(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(r) => f.write_str(&fmt_ratio(r)),
            Repr::Radical { field, coeffs } => {
                let k = field.degree as usize;
                let mut first = true;
                for (e, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let magnitude = c.abs();
                    if first {
                        if c.is_negative() {
                            f.write_str("-")?;
                        }
                    } else {
                        f.write_str(if c.is_negative() { " - " } else { " + " })?;
                    }
                    first = false;
                    if e == 0 {
                        f.write_str(&fmt_ratio(&magnitude))?;
                        continue;
                    }
                    if !magnitude.is_one() {
                        if magnitude.denom().is_one() {
                            write!(f, "{}*", magnitude.numer())?;
                        } else {
                            write!(f, "({})*", fmt_ratio(&magnitude))?;
                        }
                    }
                    let g = e.gcd(&k);
                    write!(f, "{}^({}/{})", field.radicand, e / g, k / g)?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
