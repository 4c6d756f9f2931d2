use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::fp::FieldElement;
use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = divide_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// The cyclotomic field `Q(ζ_m)` in the power basis `ζ^0, …, ζ^{φ(m)-1}`.
///
/// `m ≡ 2 (mod 4)` is replaced by `m/2` since both give the same field.
/// Roots of unity of any order dividing `natural_order()` are available.
#[derive(Debug, PartialEq, Eq)]
pub struct CycField {
    m: u64,
    phi: usize,
    poly: Vec<i64>,
    natural: u64,
    // ζ_natural^k in the power basis of ζ_m.
    roots: Vec<IntCyc>,
}

/// An element of `Z[ζ_m]` with machine-integer coefficients in the power basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntCyc(pub Vec<i64>);

impl CycField {
    pub fn new(m: u64) -> Arc<Self> {
        assert!(m >= 1);
        let m = if m % 4 == 2 { m / 2 } else { m };
        let poly = cyclotomic_polynomial(m);
        let phi = poly.len() - 1;
        let mut field = CycField {
            m,
            phi,
            poly,
            natural: if m % 2 == 1 { 2 * m } else { m },
            roots: Vec::new(),
        };
        let mut zeta_m = Vec::with_capacity(m as usize);
        for k in 0..m as usize {
            let mut c = vec![0i64; k.max(phi) + 1];
            c[k] = 1;
            field.reduce(&mut c);
            zeta_m.push(IntCyc(c));
        }
        field.roots = (0..field.natural)
            .map(|t| {
                if field.natural == m {
                    zeta_m[t as usize].clone()
                } else {
                    // ζ_{2m} = -ζ_m^{(m+1)/2}
                    let k = (t * ((m + 1) / 2)) % m;
                    let v = zeta_m[k as usize].clone();
                    if t % 2 == 1 {
                        field.int_neg(&v)
                    } else {
                        v
                    }
                }
            })
            .collect();
        Arc::new(field)
    }

    /// Smallest field containing the `p`-th roots of unity and the values of
    /// characters of groups of exponent `exponent`.
    pub fn for_exponent(p: u64, exponent: u64) -> Arc<Self> {
        Self::new(p.lcm(&exponent.max(1)))
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    /// Dimension over the rationals.
    pub fn degree(&self) -> usize {
        self.phi
    }

    /// Roots of unity of every order dividing this number live in the field.
    pub fn natural_order(&self) -> u64 {
        self.natural
    }

    fn reduce(&self, c: &mut Vec<i64>) {
        let phi = self.phi;
        for k in (phi..c.len()).rev() {
            let coef = c[k];
            if coef != 0 {
                for i in 0..phi {
                    c[k - phi + i] -= coef * self.poly[i];
                }
                c[k] = 0;
            }
        }
        c.resize(phi, 0);
    }

    /// `exp(2πi k / n)`; `n` must divide [`Self::natural_order`].
    pub fn root(&self, k: i64, n: u64) -> &IntCyc {
        assert!(self.natural % n == 0, "order {n} not available in Q(ζ_{})", self.m);
        let t = (k.rem_euclid(n as i64) as u64) * (self.natural / n);
        &self.roots[t as usize]
    }

    pub fn int_zero(&self) -> IntCyc {
        IntCyc(vec![0; self.phi])
    }

    pub fn int_from(&self, v: i64) -> IntCyc {
        let mut c = vec![0; self.phi];
        c[0] = v;
        IntCyc(c)
    }

    pub fn int_neg(&self, a: &IntCyc) -> IntCyc {
        IntCyc(a.0.iter().map(|&x| -x).collect())
    }

    pub fn int_add_assign(&self, acc: &mut IntCyc, a: &IntCyc) {
        for (x, y) in acc.0.iter_mut().zip(&a.0) {
            *x += y;
        }
    }

    pub fn int_sub(&self, a: &IntCyc, b: &IntCyc) -> IntCyc {
        IntCyc(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn int_scale(&self, a: &IntCyc, s: i64) -> IntCyc {
        IntCyc(a.0.iter().map(|&x| x * s).collect())
    }

    pub fn int_mul(&self, a: &IntCyc, b: &IntCyc) -> IntCyc {
        let mut c = vec![0i64; 2 * self.phi];
        for (i, &x) in a.0.iter().enumerate() {
            if x != 0 {
                for (j, &y) in b.0.iter().enumerate() {
                    c[i + j] += x * y;
                }
            }
        }
        self.reduce(&mut c);
        IntCyc(c)
    }

    /// `acc += a * b`
    pub fn int_mul_add(&self, acc: &mut IntCyc, a: &IntCyc, b: &IntCyc) {
        let prod = self.int_mul(a, b);
        self.int_add_assign(acc, &prod);
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn int_conj(&self, a: &IntCyc) -> IntCyc {
        let mut out = self.int_zero();
        let step = self.natural / self.m;
        for (k, &c) in a.0.iter().enumerate() {
            if c != 0 {
                let t = (self.natural - (k as u64 * step) % self.natural) % self.natural;
                for (o, &r) in out.0.iter_mut().zip(&self.roots[t as usize].0) {
                    *o += c * r;
                }
            }
        }
        out
    }

    /// `Some(v)` if `a` is the rational integer `v`.
    pub fn int_as_integer(&self, a: &IntCyc) -> Option<i64> {
        if a.0[1..].iter().all(|&c| c == 0) {
            Some(a.0[0])
        } else {
            None
        }
    }

    /// Exact division by an integer; `None` if some coefficient is not divisible.
    pub fn int_div_exact(&self, a: &IntCyc, d: i64) -> Option<IntCyc> {
        let mut out = Vec::with_capacity(self.phi);
        for &c in &a.0 {
            if c % d != 0 {
                return None;
            }
            out.push(c / d);
        }
        Some(IntCyc(out))
    }
}

/// An exact element of a cyclotomic field with rational coefficients.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    field: Arc<CycField>,
    coeffs: Vec<Rational>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.m == other.field.m && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl std::hash::Hash for Cyclotomic {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.m.hash(state);
        self.coeffs.hash(state);
    }
}

impl Cyclotomic {
    pub fn zero(field: &Arc<CycField>) -> Self {
        Self {
            field: field.clone(),
            coeffs: vec![Rational::zero(); field.phi],
        }
    }

    pub fn from_rational(field: &Arc<CycField>, r: Rational) -> Self {
        let mut z = Self::zero(field);
        z.coeffs[0] = r;
        z
    }

    pub fn from_integer(field: &Arc<CycField>, v: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(v.into()))
    }

    pub fn one(field: &Arc<CycField>) -> Self {
        Self::from_integer(field, 1)
    }

    pub fn from_int(field: &Arc<CycField>, a: &IntCyc) -> Self {
        Self {
            field: field.clone(),
            coeffs: a
                .0
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        }
    }

    /// `exp(2πi k / n)`.
    pub fn root_of_unity(field: &Arc<CycField>, k: i64, n: u64) -> Self {
        Self::from_int(field, field.root(k, n))
    }

    /// The additive character `t ↦ ζ_p^t` of the prime field.
    pub fn additive_character(field: &Arc<CycField>, t: FieldElement) -> Self {
        Self::root_of_unity(field, t.value() as i64, t.modulus() as u64)
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Integer-coefficient form, if every coefficient is integral and fits.
    pub fn to_int(&self) -> Option<IntCyc> {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect::<Option<Vec<_>>>()
            .map(IntCyc)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field.m != other.field.m {
            return Err(Error::usage(format!(
                "cyclotomic fields differ: Q(ζ_{}) vs Q(ζ_{})",
                self.field.m, other.field.m
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let phi = self.field.phi;
        let mut c = vec![Rational::zero(); 2 * phi];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        for k in (phi..c.len()).rev() {
            let coef = std::mem::take(&mut c[k]);
            if !coef.is_zero() {
                for i in 0..phi {
                    let f = self.field.poly[i];
                    if f != 0 {
                        c[k - phi + i] -= &coef * BigInt::from(f);
                    }
                }
            }
        }
        c.truncate(phi);
        Ok(Self {
            field: self.field.clone(),
            coeffs: c,
        })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Image under the Galois automorphism `ζ_m ↦ ζ_m^a`, `gcd(a, m) = 1`.
    pub fn galois(&self, a: u64) -> Self {
        let f = &self.field;
        let step = f.natural / f.m;
        let mut out = Self::zero(f);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = (k as u64 * a % f.m) * step;
            for (o, &r) in out.coeffs.iter_mut().zip(&f.roots[t as usize].0) {
                if r != 0 {
                    *o += c * BigInt::from(r);
                }
            }
        }
        out
    }

    pub fn conjugate(&self) -> Self {
        self.galois(self.field.m - 1)
    }

    /// Multiplicative inverse via the field norm.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let m = self.field.m;
        let mut cofactor = Self::one(&self.field);
        for a in 2..m.max(2) {
            if a.gcd(&m) == 1 {
                cofactor = &cofactor * &self.galois(a);
            }
        }
        let norm = (self * &cofactor)
            .as_rational()
            .cloned()
            .expect("norm is rational");
        Some(cofactor.scale(&norm.recip()))
    }

    /// Coefficients as `"num/den"` strings, the denominator omitted when 1.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.denom().is_one() {
                    c.numer().to_string()
                } else {
                    format!("{}/{}", c.numer(), c.denom())
                }
            })
            .collect()
    }

    pub fn from_strings<S: AsRef<str>>(field: &Arc<CycField>, parts: &[S]) -> Result<Self> {
        if parts.len() != field.phi {
            return Err(Error::usage(format!(
                "expected {} coefficients, found {}",
                field.phi,
                parts.len()
            )));
        }
        let coeffs = parts
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            field: field.clone(),
            coeffs,
        })
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::usage(format!("malformed rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() || d.is_negative() {
        return Err(bad());
    }
    let r = Rational::new(n, d.clone());
    // Reject non-canonical input so that parsing inverts printing exactly.
    if r.denom() != &d {
        return Err(bad());
    }
    Ok(r)
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'a> Add for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Self) -> Cyclotomic {
        self.checked_add(rhs).unwrap()
    }
}

impl<'a> Sub for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Self) -> Cyclotomic {
        self.checked_sub(rhs).unwrap()
    }
}

impl<'a> Mul for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Self) -> Cyclotomic {
        self.checked_mul(rhs).unwrap()
    }
}

impl<'a> Neg for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(20).len() - 1, 8);
        assert_eq!(euler_phi(20), 8);
    }

    #[test]
    fn prime_field_basis() {
        let k = CycField::new(5);
        assert_eq!(k.degree(), 4);
        let z = Cyclotomic::root_of_unity(&k, 1, 5);
        let z4 = Cyclotomic::root_of_unity(&k, 4, 5);
        assert_eq!(&z * &z4, Cyclotomic::one(&k));
        // ζ^4 = -1 - ζ - ζ^2 - ζ^3
        assert_eq!(z4.to_strings(), vec!["-1", "-1", "-1", "-1"]);
        let mut s = Cyclotomic::zero(&k);
        for t in 0..5 {
            s = &s + &Cyclotomic::root_of_unity(&k, t, 5);
        }
        assert!(s.is_zero());
        assert_eq!(&z + &(-&z), Cyclotomic::zero(&k));
    }

    #[test]
    fn conjugate_product_by_expansion() {
        // (ζ+ζ²)(ζ⁴+ζ³) = ζ⁵+ζ⁴+ζ⁶+ζ⁵ = 2 + ζ + ζ⁴ = 1 - ζ² - ζ³
        let k = CycField::new(5);
        let z = |t| Cyclotomic::root_of_unity(&k, t, 5);
        let a = &z(1) + &z(2);
        assert_eq!(a.conjugate(), &z(4) + &z(3));
        assert_eq!((&a * &a.conjugate()).to_strings(), vec!["1", "0", "-1", "-1"]);
        assert_eq!(a.conjugate().conjugate(), a);
        assert_eq!(Cyclotomic::one(&k).conjugate(), Cyclotomic::one(&k));
    }

    #[test]
    fn odd_conductor_contains_sign() {
        // Q(ζ_6) = Q(ζ_3); -1 is a 2nd root of unity there.
        let k = CycField::new(6);
        assert_eq!(k.conductor(), 3);
        assert_eq!(k.natural_order(), 6);
        assert_eq!(Cyclotomic::root_of_unity(&k, 1, 2), Cyclotomic::from_integer(&k, -1));
        let w = Cyclotomic::root_of_unity(&k, 1, 6);
        let mut acc = Cyclotomic::one(&k);
        for _ in 0..6 {
            acc = &acc * &w;
        }
        assert_eq!(acc, Cyclotomic::one(&k));
        assert_ne!(&w * &w, Cyclotomic::one(&k));
    }

    #[test]
    fn additive_character_is_a_homomorphism() {
        let f = PrimeField::new(7).unwrap();
        let k = CycField::for_exponent(7, 6);
        for s in f.elements() {
            for t in f.elements() {
                assert_eq!(
                    Cyclotomic::additive_character(&k, s + t),
                    &Cyclotomic::additive_character(&k, s) * &Cyclotomic::additive_character(&k, t)
                );
            }
        }
        assert_ne!(Cyclotomic::additive_character(&k, f.element(1)), Cyclotomic::one(&k));
    }

    #[test]
    fn inverse_via_norm() {
        let k = CycField::new(20);
        let a = &Cyclotomic::root_of_unity(&k, 3, 20) + &Cyclotomic::from_integer(&k, 2);
        assert_eq!(&a * &a.inv().unwrap(), Cyclotomic::one(&k));
    }

    #[test]
    fn int_arithmetic_matches_rational() {
        let k = CycField::new(12);
        let a = k.root(5, 12).clone();
        let b = k.int_from(3);
        let c = k.int_mul(&a, &k.int_conj(&b));
        let ra = Cyclotomic::from_int(&k, &a);
        let rb = Cyclotomic::from_int(&k, &b);
        assert_eq!(Cyclotomic::from_int(&k, &c), &ra * &rb.conjugate());
        assert_eq!(Cyclotomic::from_int(&k, &k.int_conj(&a)), ra.conjugate());
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let a = Cyclotomic::one(&CycField::new(3));
        let b = Cyclotomic::one(&CycField::new(5));
        assert!(matches!(a.checked_add(&b), Err(Error::Usage(_))));
    }

    #[test]
    fn parse_rejects_noncanonical() {
        let k = CycField::new(3);
        assert!(Cyclotomic::from_strings(&k, &["2/4", "0"]).is_err());
        assert!(Cyclotomic::from_strings(&k, &["1/2", "-3"]).is_ok());
        assert!(Cyclotomic::from_strings(&k, &["1"]).is_err());
    }
}
