//! Exact arithmetic in the cyclotomic field Q(ζ_m).
//!
//! Elements are stored as dense coefficient vectors of length φ(m) holding the
//! unique residue modulo the m-th cyclotomic polynomial Φ_m, so equality is
//! plain coefficient equality. For m ∈ {1, 2} the field is Q itself.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("conductor {from} does not divide {to}")]
    NotDivisible { from: u32, to: u32 },
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("cannot parse scalar {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

/// Euler's totient.
pub fn totient(m: u32) -> u32 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Coefficients of Φ_m, lowest degree first. Monic with integer coefficients.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(poly) = cache.lock().unwrap().get(&m) {
        return poly.clone();
    }
    // x^m - 1 divided by Φ_d for every proper divisor d of m.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        let div = cyclotomic_polynomial(d);
        num = exact_monic_div(&num, &div);
    }
    let poly = Arc::new(num);
    cache.lock().unwrap().insert(m, poly.clone());
    poly
}

fn exact_monic_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Reduce a polynomial with rational coefficients modulo Φ_m.
fn reduce_mod_cyclotomic(mut poly: Vec<Rational>, m: u32) -> Vec<Rational> {
    let phi = totient(m) as usize;
    if poly.len() <= phi {
        poly.resize(phi, Rational::zero());
        return poly;
    }
    if phi == 1 {
        // Φ_1 = x - 1, Φ_2 = x + 1: evaluate at the root.
        let root = if m == 1 {
            Rational::one()
        } else {
            -Rational::one()
        };
        let mut acc = Rational::zero();
        for c in poly.iter().rev() {
            acc = acc * &root + c;
        }
        return vec![acc];
    }
    let cyc = cyclotomic_polynomial(m);
    for top in (phi..poly.len()).rev() {
        let c = std::mem::take(&mut poly[top]);
        if c.is_zero() {
            continue;
        }
        let base = top - phi;
        for (j, pc) in cyc.iter().enumerate().take(phi) {
            if !pc.is_zero() {
                poly[base + j] -= &c * Rational::from_integer(pc.clone());
            }
        }
    }
    poly.truncate(phi);
    poly
}

/// An element of Q(ζ_m) in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloScalar {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl CycloScalar {
    pub fn zero(m: u32) -> Self {
        assert!(m >= 1, "conductor must be positive");
        Self {
            conductor: m,
            coeffs: vec![Rational::zero(); totient(m) as usize],
        }
    }

    pub fn one(m: u32) -> Self {
        Self::from_rational(m, Rational::one())
    }

    pub fn from_rational(m: u32, q: Rational) -> Self {
        let mut s = Self::zero(m);
        s.coeffs[0] = q;
        s
    }

    pub fn from_int(m: u32, n: i64) -> Self {
        Self::from_rational(m, Rational::from_integer(n.into()))
    }

    pub fn from_ratio(m: u32, p: i64, q: i64) -> Self {
        Self::from_rational(m, Rational::new(p.into(), q.into()))
    }

    /// Build from an arbitrary polynomial in ζ_m (lowest degree first).
    pub fn from_poly(m: u32, poly: Vec<Rational>) -> Self {
        Self {
            conductor: m,
            coeffs: reduce_mod_cyclotomic(poly, m),
        }
    }

    /// ζ_m^k, with k taken mod m.
    pub fn root(m: u32, k: i64) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let e = k.rem_euclid(m as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Self::from_poly(m, poly)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    fn check(&self, other: &Self) -> Result<(), ScalarError> {
        if self.conductor != other.conductor {
            Err(ScalarError::ConductorMismatch(
                self.conductor,
                other.conductor,
            ))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        Ok(Self {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        Ok(Self {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        if self.coeffs.len() == 1 {
            return Ok(Self {
                conductor: self.conductor,
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.conductor));
        }
        let mut prod = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(Self::from_poly(self.conductor, prod))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_m.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.conductor, q.recip()));
        }
        let modulus: Vec<Rational> = cyclotomic_polynomial(self.conductor)
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        // Invariant: s_i * a ≡ r_i (mod Φ_m).
        let mut r0 = modulus;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant since Φ_m is irreducible.
        let c = r1[0].recip();
        let inv: Vec<Rational> = s1.into_iter().map(|x| x * &c).collect();
        Ok(Self::from_poly(self.conductor, inv))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The same field element expressed with conductor `target`.
    pub fn lift(&self, target: u32) -> Result<Self, ScalarError> {
        if target == 0 {
            return Err(ScalarError::ZeroConductor);
        }
        if !target.is_multiple_of(self.conductor) {
            return Err(ScalarError::NotDivisible {
                from: self.conductor,
                to: target,
            });
        }
        let step = (target / self.conductor) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Ok(Self::from_poly(target, poly))
    }

    /// Parse the text form: a polynomial in `z` with rational coefficients,
    /// e.g. `1/2*z^2 - 3`, reduced modulo Φ_m.
    pub fn parse(text: &str, m: u32) -> Result<Self, ScalarError> {
        if m == 0 {
            return Err(ScalarError::ZeroConductor);
        }
        let poly = PolyParser::new(text).parse()?;
        Ok(Self::from_poly(m, poly))
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(out)
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let den = trim(den.to_vec());
    let mut rem = trim(num.to_vec());
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let lead = den.last().expect("nonzero divisor").clone();
    let mut quot = vec![Rational::zero(); rem.len() - den.len() + 1];
    while rem.len() >= den.len() {
        let shift = rem.len() - den.len();
        let c = rem.last().unwrap() / &lead;
        for (j, d) in den.iter().enumerate() {
            rem[shift + j] -= &c * d;
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

impl Add for &CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: Self) -> CycloScalar {
        self.checked_add(rhs).expect("scalar addition")
    }
}

impl Sub for &CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: Self) -> CycloScalar {
        self.checked_sub(rhs).expect("scalar subtraction")
    }
}

impl Mul for &CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: Self) -> CycloScalar {
        self.checked_mul(rhs).expect("scalar multiplication")
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(mut self) -> CycloScalar {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            match deg {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    f.write_str("z")?;
                    if deg > 1 {
                        write!(f, "^{deg}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (m={})", self, self.conductor)
    }
}

struct PolyParser<'a> {
    text: &'a str,
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
}

impl<'a> PolyParser<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            text,
            chars: text.char_indices().peekable(),
        }
    }

    fn err(&self, reason: impl Into<String>) -> ScalarError {
        ScalarError::Parse {
            text: self.text.to_string(),
            reason: reason.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|(_, c)| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().map(|&(_, c)| c)
    }

    fn integer(&mut self) -> Result<BigInt, ScalarError> {
        self.skip_ws();
        let mut digits = String::new();
        while let Some(&(_, c)) = self.chars.peek() {
            if c.is_ascii_digit() {
                digits.push(c);
                self.chars.next();
            } else {
                break;
            }
        }
        if digits.is_empty() {
            return Err(self.err("expected integer"));
        }
        Ok(digits.parse().expect("ascii digits"))
    }

    fn exponent(&mut self) -> Result<usize, ScalarError> {
        if self.peek() == Some('^') {
            self.chars.next();
            let e = self.integer()?;
            usize::try_from(e)
                .ok()
                .filter(|&e| e <= 1 << 16)
                .ok_or_else(|| self.err("exponent too large"))
        } else {
            Ok(1)
        }
    }

    /// One unsigned term: `p`, `p/q`, `z^k`, `p/q*z^k`.
    fn term(&mut self) -> Result<(Rational, usize), ScalarError> {
        match self.peek() {
            Some('z') => {
                self.chars.next();
                Ok((Rational::one(), self.exponent()?))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.peek() == Some('/') {
                    self.chars.next();
                    self.integer()?
                } else {
                    BigInt::one()
                };
                if den.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                let coef = Rational::new(num, den);
                if self.peek() == Some('*') {
                    self.chars.next();
                    if self.peek() != Some('z') {
                        return Err(self.err("expected 'z' after '*'"));
                    }
                    self.chars.next();
                    Ok((coef, self.exponent()?))
                } else {
                    Ok((coef, 0))
                }
            }
            Some(c) => Err(self.err(format!("unexpected character {c:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn parse(mut self) -> Result<Vec<Rational>, ScalarError> {
        let mut poly: Vec<Rational> = Vec::new();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if !first => break,
                Some('+') if !first => {
                    self.chars.next();
                    1
                }
                Some('-') => {
                    self.chars.next();
                    -1
                }
                Some(_) if first => 1,
                Some(c) => return Err(self.err(format!("expected '+' or '-', found {c:?}"))),
                None => return Err(self.err("empty scalar")),
            };
            first = false;
            let (coef, deg) = self.term()?;
            if poly.len() <= deg {
                poly.resize(deg + 1, Rational::zero());
            }
            if sign < 0 {
                poly[deg] -= coef;
            } else {
                poly[deg] += coef;
            }
        }
        Ok(poly)
    }
}

/// Least common multiple of a list, 1 for the empty list.
pub fn lcm_all(values: impl IntoIterator<Item = u32>) -> u32 {
    values.into_iter().fold(1, |acc, v| acc.lcm(&v))
}
