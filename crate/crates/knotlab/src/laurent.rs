//! Exact arithmetic in the Laurent polynomial rings `Z[t^±1]` and `Q[t^±1]`,
//! in the rational function field `Q(t)`, and in the quotient `Q(t)/Z[t^±1]`.
//!
//! Every value is kept in a canonical form so that equality is a structural
//! comparison:
//!
//! * a [`LaurentPolynomial`] stores a sparse exponent-to-coefficient map with
//!   no zero coefficients;
//! * a [`RationalFunction`] stores a coprime numerator/denominator pair whose
//!   denominator is a monic ordinary polynomial with nonzero constant term
//!   (all units `±t^n` are pushed to the numerator);
//! * a [`TorsionClass`] stores the canonical representative of a class in
//!   `Q(t)/Z[t^±1]`: the polynomial part is reduced coefficient-wise into
//!   `[0, 1)` and the proper part `r/s` has `deg r < deg s` with `r` an
//!   ordinary polynomial.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as DeError;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Int = BigInt;
pub type Rat = BigRational;

/// Exact rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Exact rational `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum LaurentError {
    #[error("the zero polynomial has no unit normalization")]
    ZeroPolynomial,
    #[error("zero denominator in rational function")]
    ZeroDenominator,
    #[error("evaluation at zero requires a polynomial without negative exponents")]
    EvalAtZero,
}

/// Coefficient ring of a Laurent polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffRing {
    IntegerCoeffs,
    RationalCoeffs,
}

/// Element of `Q[t^±1]` (or of `Z[t^±1]` when all coefficients are integers),
/// stored sparsely by exponent. The zero polynomial has an empty map.
#[derive(Clone, Debug)]
pub struct LaurentPolynomial {
    coeffs: BTreeMap<i64, Rat>,
}

impl PartialEq for LaurentPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for LaurentPolynomial {}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, rat(1))
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(1, rat(1))
    }

    /// `c·t^e`.
    pub fn monomial(exp: i64, c: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        Self { coeffs }
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_terms(terms: Vec<(i64, Rat)>) -> Self {
        let mut coeffs: BTreeMap<i64, Rat> = BTreeMap::new();
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            let entry = coeffs.entry(e).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(&e);
            }
        }
        Self { coeffs }
    }

    pub fn from_int_terms(terms: &[(i64, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(e, c)| (e, rat(c))).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0).is_one()
    }

    /// Lowest exponent with nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Highest exponent with nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `max_exp - min_exp`, the Euclidean size of a unit class in `Q[t^±1]`.
    pub fn width(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    pub fn coeff(&self, exp: i64) -> Rat {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    /// True when no exponent is negative.
    pub fn is_ordinary(&self) -> bool {
        self.min_exp().is_none_or(|e| e >= 0)
    }

    /// True when every coefficient lies in `Z`.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// Declared coefficient ring, read off from the stored coefficients.
    pub fn coeff_ring(&self) -> CoeffRing {
        if self.is_integral() {
            CoeffRing::IntegerCoeffs
        } else {
            CoeffRing::RationalCoeffs
        }
    }

    /// Coefficient of the highest power.
    pub fn leading_coeff(&self) -> Rat {
        self.max_exp().map_or_else(Rat::zero, |e| self.coeff(e))
    }

    /// Multiplication by `t^n`.
    pub fn shift(&self, n: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + n, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    /// The involution `t ↦ t^{-1}` (exponent negation); a ring automorphism.
    pub fn involute(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Exact evaluation at a rational point. The point must be nonzero when
    /// negative exponents are present.
    pub fn eval(&self, x: &Rat) -> Result<Rat, LaurentError> {
        if x.is_zero() && self.min_exp().is_some_and(|e| e < 0) {
            return Err(LaurentError::EvalAtZero);
        }
        let mut acc = Rat::zero();
        for (e, c) in self.terms() {
            acc += c * &rat_pow(x, e);
        }
        Ok(acc)
    }

    /// Sum of coefficients, i.e. the value at `t = 1`.
    pub fn eval_one(&self) -> Rat {
        self.coeffs.values().fold(Rat::zero(), |a, c| a + c)
    }

    /// Strip the unit `c·t^n`: the result is monic, ordinary, with nonzero
    /// constant term. Zero maps to zero. Canonical form for associates in
    /// `Q[t^±1]`.
    pub fn unit_normal(&self) -> Self {
        match self.min_exp() {
            None => Self::zero(),
            Some(lo) => {
                let shifted = self.shift(-lo);
                let lc = shifted.leading_coeff();
                shifted.scale(&(Rat::one() / lc))
            }
        }
    }

    /// Normalization by the unique unit `±t^n` that yields an ordinary
    /// polynomial with positive constant term; errors on zero.
    pub fn normalize_alexander(&self) -> Result<Self, LaurentError> {
        let lo = self.min_exp().ok_or(LaurentError::ZeroPolynomial)?;
        let shifted = self.shift(-lo);
        if shifted.coeff(0).is_negative() {
            Ok(-&shifted)
        } else {
            Ok(shifted)
        }
    }

    /// Long division of ordinary polynomials: `self = q·d + r` with
    /// `deg r < deg d`. `None` when `d` is zero.
    pub fn divmod_ordinary(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.max_exp()?;
        debug_assert!(self.is_ordinary() && d.is_ordinary());
        let lc = d.coeff(dd);
        let mut r = self.clone();
        let mut q = Self::zero();
        while let Some(rd) = r.max_exp() {
            if rd < dd {
                break;
            }
            let m = Self::monomial(rd - dd, r.coeff(rd) / &lc);
            q = &q + &m;
            r = &r - &(&m * d);
        }
        Some((q, r))
    }

    /// Monic gcd in `Q[t]` of ordinary polynomials; `gcd(0, 0) = 0`.
    pub fn gcd_monic(a: &Self, b: &Self) -> Self {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod_ordinary(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.unit_normal()
        }
    }

    /// Division with remainder in `Q[t^±1]` with respect to the width
    /// function: `self = q·d + r` with `r = 0` or `width(r) < width(d)`.
    pub fn width_divmod(&self, d: &Self) -> Option<(Self, Self)> {
        let d_lo = d.min_exp()?;
        let d0 = d.shift(-d_lo);
        match self.min_exp() {
            None => Some((Self::zero(), Self::zero())),
            Some(lo) => {
                let (q0, r0) = self.shift(-lo).divmod_ordinary(&d0)?;
                Some((q0.shift(lo - d_lo), r0.shift(lo)))
            }
        }
    }

    /// Exact division in `Q[t^±1]`; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if self.is_zero() {
            return if d.is_zero() { None } else { Some(Self::zero()) };
        }
        let (q, r) = self.width_divmod(d)?;
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Canonical residue of a Laurent polynomial modulo an ordinary
    /// polynomial `s` with nonzero constant term: the unique ordinary
    /// representative of `self` in `Q[t^±1]/(s)` with degree `< deg s`.
    /// Negative powers of `t` are resolved through the inverse of `t` mod
    /// `s`, which exists because `s(0) ≠ 0`.
    pub fn rem_mod(&self, s: &Self) -> Self {
        let d = s.max_exp().expect("nonzero modulus");
        debug_assert!(s.is_ordinary() && !s.coeff(0).is_zero());
        if d == 0 {
            return Self::zero();
        }
        let lo = match self.min_exp() {
            None => return Self::zero(),
            Some(lo) => lo,
        };
        let base = self.shift(-lo.min(0));
        let (_, mut r) = base.divmod_ordinary(s).expect("nonzero modulus");
        if lo < 0 {
            let tinv = t_inverse_mod(s);
            for _ in 0..(-lo) {
                let (_, rr) = (&r * &tinv).divmod_ordinary(s).expect("nonzero modulus");
                r = rr;
            }
        }
        r
    }

    /// Coefficient-wise fractional part `c - floor(c)`; vanishes exactly on
    /// integral polynomials.
    pub fn fractional_part(&self) -> Self {
        Self::from_terms(
            self.terms()
                .map(|(e, c)| (e, c - c.floor()))
                .collect(),
        )
    }

    /// Render coefficients as exact big integers; `None` when any is
    /// fractional.
    pub fn integer_coeff_vec(&self) -> Option<Vec<(i64, Int)>> {
        self.terms()
            .map(|(e, c)| {
                if c.is_integer() {
                    Some((e, c.to_integer()))
                } else {
                    None
                }
            })
            .collect()
    }
}

/// `t^{-1} mod s` for ordinary `s` with `s(0) ≠ 0`: from `s = t·u + s(0)`
/// one gets `t^{-1} ≡ -u/s(0)`.
fn t_inverse_mod(s: &LaurentPolynomial) -> LaurentPolynomial {
    let s0 = s.coeff(0);
    let u = LaurentPolynomial::from_terms(
        s.terms()
            .filter(|&(e, _)| e >= 1)
            .map(|(e, c)| (e - 1, c.clone()))
            .collect(),
    );
    u.scale(&(-Rat::one() / s0))
}

fn rat_pow(x: &Rat, e: i64) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    let mut base = if e > 0 { x.clone() } else { Rat::one() / x };
    let mut n = e.unsigned_abs();
    let mut acc = Rat::one();
    while n > 0 {
        if n & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        n >>= 1;
    }
    acc
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut coeffs = self.coeffs.clone();
        for (&e, c) in &rhs.coeffs {
            let entry = coeffs.entry(e).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(&e);
            }
        }
        LaurentPolynomial { coeffs }
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        let mut coeffs: BTreeMap<i64, Rat> = BTreeMap::new();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &rhs.coeffs {
                let e = e1 + e2;
                let prod = c1 * c2;
                let entry = coeffs.entry(e).or_insert_with(Rat::zero);
                *entry += prod;
                if entry.is_zero() {
                    coeffs.remove(&e);
                }
            }
        }
        LaurentPolynomial { coeffs }
    }
}

fn rat_to_string(c: &Rat) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: Int = n.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
        let d: Int = d.trim().parse().map_err(|e| format!("bad denominator: {e}"))?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(Rat::new(n, d))
    } else {
        let n: Int = s.parse().map_err(|e| format!("bad integer: {e}"))?;
        Ok(Rat::from_integer(n))
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            map.serialize_entry(&e.to_string(), &rat_to_string(c))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (k, v) in raw {
            let e: i64 = k
                .trim()
                .parse()
                .map_err(|e| D::Error::custom(format!("bad exponent {k:?}: {e}")))?;
            let c = parse_rat(&v).map_err(D::Error::custom)?;
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let coeff_str = if e == 0 {
                Some(rat_to_string(&mag))
            } else if mag.is_one() {
                None
            } else if mag.is_integer() {
                Some(mag.numer().to_string())
            } else {
                Some(format!("({}/{})", mag.numer(), mag.denom()))
            };
            if let Some(cs) = coeff_str {
                write!(f, "{cs}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Element of `Q(t)` in canonical form: the denominator is a monic ordinary
/// polynomial with nonzero constant term, coprime to the numerator in `Q[t]`;
/// unit factors `±t^n` live in the numerator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFunction {
    num: LaurentPolynomial,
    den: LaurentPolynomial,
}

impl RationalFunction {
    pub fn new(
        num: LaurentPolynomial,
        den: LaurentPolynomial,
    ) -> Result<Self, LaurentError> {
        let den_lo = den.min_exp().ok_or(LaurentError::ZeroDenominator)?;
        if num.is_zero() {
            return Ok(Self::zero());
        }
        // Push the denominator's unit into the numerator.
        let den0 = den.shift(-den_lo);
        let num = num.shift(-den_lo);
        // Split the numerator as t^a · n0 with n0 ordinary, n0(0) ≠ 0.
        let a = num.min_exp().expect("nonzero numerator");
        let n0 = num.shift(-a);
        let g = LaurentPolynomial::gcd_monic(&n0, &den0);
        let n0 = n0.div_exact(&g).expect("gcd divides");
        let den0 = den0.div_exact(&g).expect("gcd divides");
        let lc = den0.leading_coeff();
        let inv = Rat::one() / lc;
        Ok(Self {
            num: n0.scale(&inv).shift(a),
            den: den0.scale(&inv),
        })
    }

    pub fn from_poly(p: LaurentPolynomial) -> Self {
        Self {
            num: p,
            den: LaurentPolynomial::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPolynomial::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &LaurentPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPolynomial {
        &self.den
    }

    pub fn involute(&self) -> Self {
        Self::new(self.num.involute(), self.den.involute()).expect("nonzero denominator")
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero denominator")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }

    pub fn mul_poly(&self, p: &LaurentPolynomial) -> Self {
        Self::new(&self.num * p, self.den.clone()).expect("nonzero denominator")
    }

    /// Membership in `Z[t^±1]`: the canonical denominator is 1 and every
    /// numerator coefficient is an integer.
    pub fn lambda_membership(&self) -> bool {
        self.den.is_one() && self.num.is_integral()
    }

    /// Canonical reduction modulo `Z[t^±1]`.
    pub fn torsion_reduce(&self) -> TorsionClass {
        TorsionClass::reduce(self)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Canonical representative of a class in `Q(t)/Z[t^±1]`.
///
/// Writing the class as `q + r/s` with `s` the canonical denominator, the
/// stored representative has `r` ordinary with `deg r < deg s`, and the
/// Laurent part `q` reduced coefficient-wise into `[0, 1)` (so it vanishes
/// exactly when the class has an integral polynomial part). Two classes are
/// equal iff their representatives are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionClass {
    representative: RationalFunction,
}

impl TorsionClass {
    pub fn zero() -> Self {
        Self {
            representative: RationalFunction::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.representative.is_zero()
    }

    pub fn representative(&self) -> &RationalFunction {
        &self.representative
    }

    /// Canonical reduction: subtract the `Z[t^±1]`-part of `f`.
    pub fn reduce(f: &RationalFunction) -> Self {
        if f.is_zero() {
            return Self::zero();
        }
        let s = f.denominator().clone();
        let n = f.numerator();
        let r = n.rem_mod(&s);
        let q = (n - &r).div_exact(&s).expect("residue is exact");
        let q_frac = q.fractional_part();
        let rep_num = &(&q_frac * &s) + &r;
        let representative =
            RationalFunction::new(rep_num, s).expect("nonzero denominator");
        Self { representative }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::reduce(&self.representative.add(&rhs.representative))
    }

    pub fn neg(&self) -> Self {
        Self::reduce(&self.representative.neg())
    }

    /// Module action of `Q[t^±1]`.
    pub fn mul_poly(&self, p: &LaurentPolynomial) -> Self {
        Self::reduce(&self.representative.mul_poly(p))
    }

    /// The involution applied to the representative, re-reduced.
    pub fn conjugate(&self) -> Self {
        Self::reduce(&self.representative.involute())
    }
}

impl fmt::Display for TorsionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.representative)
    }
}
