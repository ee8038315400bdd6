//! Exact scalars over the rationals, the Gaussian rationals, and prime fields.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// Largest supported prime modulus.
pub const MAX_PRIME: u64 = 1 << 61;

/// The active field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Gaussian,
    Prime(u64),
}

/// Element of `GF(p)`, stored as its least non-negative residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

/// A Gaussian rational `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: BigRational,
    pub im: BigRational,
}

/// An exact field element.
///
/// Arithmetic between a rational and a Gaussian value promotes to Gaussian;
/// a rational combined with a `GF(p)` value is reduced mod `p`. Any other
/// mix is a programming error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    G(Gaussian),
    P(Fp),
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

fn ratio_mod(r: &BigRational, p: u64) -> Option<u64> {
    let num = bigint_mod(r.numer(), p);
    let den = bigint_mod(r.denom(), p);
    if den == 0 {
        None
    } else {
        Some(mul_mod(num, pow_mod(den, p - 2, p), p))
    }
}

fn parse_ratio(s: &str) -> Option<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    if n.is_empty() || d.is_empty() || d.starts_with(['-', '+']) {
        return None;
    }
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

fn parse_imag(s: &str) -> Option<BigRational> {
    match s {
        "" | "+" => Some(BigRational::one()),
        "-" => Some(-BigRational::one()),
        _ => parse_ratio(s),
    }
}

impl Field {
    /// `GF(p)`; `p` must be a prime below [`MAX_PRIME`].
    pub fn gf(p: u64) -> Result<Field> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not a supported prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Prime(p) => p,
            _ => 0,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(n.clone())),
            Field::Gaussian => Scalar::G(Gaussian {
                re: BigRational::from_integer(n.clone()),
                im: BigRational::zero(),
            }),
            Field::Prime(p) => Scalar::P(Fp { v: bigint_mod(n, p), p }),
        }
    }

    /// Embeds a rational; fails over `GF(p)` when the denominator vanishes mod `p`.
    pub fn from_ratio(self, r: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(Scalar::Q(r.clone())),
            Field::Gaussian => Ok(Scalar::G(Gaussian {
                re: r.clone(),
                im: BigRational::zero(),
            })),
            Field::Prime(p) => ratio_mod(r, p)
                .map(|v| Scalar::P(Fp { v, p }))
                .ok_or_else(|| Error::Domain(format!("{r} has no image mod {p}"))),
        }
    }

    /// The imaginary unit; only available over the Gaussian rationals.
    pub fn i(self) -> Result<Scalar> {
        match self {
            Field::Gaussian => Ok(Scalar::G(Gaussian {
                re: BigRational::zero(),
                im: BigRational::one(),
            })),
            _ => Err(Error::Domain("i is only defined over the Gaussian rationals".into())),
        }
    }

    /// Parses `n`, `p/q`, or (Gaussian only) `a+bi`, `a-bi`, `bi`.
    pub fn parse(self, s: &str) -> Result<Scalar> {
        let bad = || Error::Invalid(format!("malformed scalar '{s}' for field {self}"));
        let s = s.trim();
        if let Some(body) = s.strip_suffix('i') {
            if self != Field::Gaussian {
                return Err(bad());
            }
            let split = body
                .char_indices()
                .skip(1)
                .filter(|&(_, c)| c == '+' || c == '-')
                .map(|(i, _)| i)
                .last();
            let (re, im) = match split {
                Some(i) => (parse_ratio(&body[..i]).ok_or_else(bad)?, &body[i..]),
                None => (BigRational::zero(), body),
            };
            let im = parse_imag(im).ok_or_else(bad)?;
            return Ok(Scalar::G(Gaussian { re, im }));
        }
        let r = parse_ratio(s).ok_or_else(bad)?;
        self.from_ratio(&r)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Gaussian => write!(f, "gaussian"),
            Field::Prime(p) => write!(f, "gf{p}"),
        }
    }
}

impl Gaussian {
    fn mul(&self, o: &Gaussian) -> Gaussian {
        Gaussian {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn inv(&self) -> Option<Gaussian> {
        let n = &self.re * &self.re + &self.im * &self.im;
        if n.is_zero() {
            return None;
        }
        Some(Gaussian {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    fn from_q(r: &BigRational) -> Gaussian {
        Gaussian {
            re: r.clone(),
            im: BigRational::zero(),
        }
    }
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::G(_) => Field::Gaussian,
            Scalar::P(x) => Field::Prime(x.p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::G(g) => g.re.is_zero() && g.im.is_zero(),
            Scalar::P(x) => x.v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::G(g) => g.re.is_one() && g.im.is_zero(),
            Scalar::P(x) => x.v == 1 % x.p,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(r) => (!r.is_zero()).then(|| Scalar::Q(r.recip())),
            Scalar::G(g) => g.inv().map(Scalar::G),
            Scalar::P(x) => (x.v != 0).then(|| {
                Scalar::P(Fp {
                    v: pow_mod(x.v, x.p - 2, x.p),
                    p: x.p,
                })
            }),
        }
    }

    /// `self / o`, `None` when `o` is zero.
    pub fn checked_div(&self, o: &Scalar) -> Option<Scalar> {
        o.inv().map(|i| self * &i)
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The value as an integer when it is a rational (or real Gaussian) integer.
    pub fn to_bigint(&self) -> Option<BigInt> {
        let r = match self {
            Scalar::Q(r) => r,
            Scalar::G(g) if g.im.is_zero() => &g.re,
            Scalar::G(_) => return None,
            Scalar::P(x) => return Some(BigInt::from(x.v)),
        };
        r.is_integer().then(|| r.to_integer())
    }

    /// Reduction into `GF(p)`; `None` if a denominator vanishes or the value is non-real.
    pub fn reduce_mod(&self, p: u64) -> Option<Scalar> {
        match self {
            Scalar::Q(r) => ratio_mod(r, p).map(|v| Scalar::P(Fp { v, p })),
            Scalar::G(g) if g.im.is_zero() => ratio_mod(&g.re, p).map(|v| Scalar::P(Fp { v, p })),
            Scalar::G(_) => None,
            Scalar::P(x) if x.p == p => Some(self.clone()),
            Scalar::P(_) => None,
        }
    }

    /// Converts into `field`, promoting rationals or reducing them mod `p`.
    pub fn to_field(&self, field: Field) -> Option<Scalar> {
        match (self, field) {
            (Scalar::Q(r), f) => f.from_ratio(r).ok(),
            (Scalar::G(_), Field::Gaussian) => Some(self.clone()),
            (Scalar::G(_), Field::Rational) => None,
            (_, Field::Prime(p)) => self.reduce_mod(p),
            (Scalar::P(_), _) => None,
        }
    }
}

#[allow(clippy::large_enum_variant)]
enum Pair<'a> {
    Q(&'a BigRational, &'a BigRational),
    G(Gaussian, Gaussian),
    P(u64, u64, u64),
}

fn pair<'a>(a: &'a Scalar, b: &'a Scalar) -> Pair<'a> {
    let to_p =
        |r: &BigRational, p: u64| ratio_mod(r, p).unwrap_or_else(|| panic!("field mismatch: {r} has no image mod {p}"));
    match (a, b) {
        (Scalar::Q(x), Scalar::Q(y)) => Pair::Q(x, y),
        (Scalar::G(x), Scalar::G(y)) => Pair::G(x.clone(), y.clone()),
        (Scalar::G(x), Scalar::Q(y)) => Pair::G(x.clone(), Gaussian::from_q(y)),
        (Scalar::Q(x), Scalar::G(y)) => Pair::G(Gaussian::from_q(x), y.clone()),
        (Scalar::P(x), Scalar::P(y)) if x.p == y.p => Pair::P(x.v, y.v, x.p),
        (Scalar::P(x), Scalar::Q(y)) => Pair::P(x.v, to_p(y, x.p), x.p),
        (Scalar::Q(x), Scalar::P(y)) => Pair::P(to_p(x, y.p), y.v, y.p),
        _ => panic!("field mismatch: {} vs {}", a.field(), b.field()),
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match pair(self, o) {
            Pair::Q(x, y) => Scalar::Q(x + y),
            Pair::G(x, y) => Scalar::G(Gaussian {
                re: x.re + y.re,
                im: x.im + y.im,
            }),
            Pair::P(x, y, p) => Scalar::P(Fp {
                v: ((x as u128 + y as u128) % p as u128) as u64,
                p,
            }),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match pair(self, o) {
            Pair::Q(x, y) => Scalar::Q(x * y),
            Pair::G(x, y) => Scalar::G(x.mul(&y)),
            Pair::P(x, y, p) => Scalar::P(Fp { v: mul_mod(x, y, p), p }),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(r) => Scalar::Q(-r),
            Scalar::G(g) => Scalar::G(Gaussian { re: -&g.re, im: -&g.im }),
            Scalar::P(x) => Scalar::P(Fp {
                v: (x.p - x.v) % x.p,
                p: x.p,
            }),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

fn fmt_ratio(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => fmt_ratio(r, f),
            Scalar::G(g) if g.im.is_zero() => fmt_ratio(&g.re, f),
            Scalar::G(g) => {
                fmt_ratio(&g.re, f)?;
                write!(f, "{}", if g.im.is_negative() { "-" } else { "+" })?;
                fmt_ratio(&g.im.abs(), f)?;
                write!(f, "i")
            }
            Scalar::P(x) => write!(f, "{}", x.v),
        }
    }
}
