//! Exact arithmetic in the golden field ℚ(√5) on the basis {1, τ}, where
//! τ = (1+√5)/2 satisfies τ² = τ + 1, plus the small dense 4-vector/4×4-matrix
//! layer the geometry is built from.
//!
//! No floating point is used anywhere: signs, comparisons and orthogonality
//! tests are all decided by exact rational arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// An element a + bτ of ℚ(√5) with exact rational coefficients.
///
/// Coefficients are kept in lowest terms with positive denominators
/// (`BigRational` normalizes on construction), so equality and hashing are
/// structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GoldenNumber {
    a: BigRational,
    b: BigRational,
}

impl GoldenNumber {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        GoldenNumber { a, b }
    }

    /// Build (a_num/a_den) + (b_num/b_den)τ. Fails on zero denominators.
    pub fn from_integer_parts(a_num: i64, a_den: i64, b_num: i64, b_den: i64) -> Result<Self> {
        if a_den == 0 || b_den == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(GoldenNumber {
            a: BigRational::new(a_num.into(), a_den.into()),
            b: BigRational::new(b_num.into(), b_den.into()),
        })
    }

    /// (p + qτ)/2 — the shape of every operator-matrix entry.
    pub(crate) fn halves(p: i64, q: i64) -> Self {
        GoldenNumber {
            a: BigRational::new(p.into(), 2.into()),
            b: BigRational::new(q.into(), 2.into()),
        }
    }

    pub fn zero() -> Self {
        GoldenNumber {
            a: BigRational::zero(),
            b: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        GoldenNumber {
            a: BigRational::one(),
            b: BigRational::zero(),
        }
    }

    /// τ itself.
    pub fn tau() -> Self {
        GoldenNumber {
            a: BigRational::zero(),
            b: BigRational::one(),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        GoldenNumber {
            a: BigRational::from_integer(n.into()),
            b: BigRational::zero(),
        }
    }

    /// Coefficient of 1.
    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    /// Coefficient of τ.
    pub fn golden_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign of the real embedding a + b(1+√5)/2.
    ///
    /// If b = 0 the sign of a decides. If a and b agree in sign, that sign
    /// decides. Otherwise the sign equals sign(b)·sign(τ − q) with q = −a/b,
    /// and τ − q > 0 ⇔ 2q − 1 < √5, decided by comparing (2q − 1)² with 5
    /// after checking the sign of 2q − 1.
    pub fn sign(&self) -> i8 {
        if self.b.is_zero() {
            return ratio_sign(&self.a);
        }
        if self.a.is_zero() {
            return ratio_sign(&self.b);
        }
        let sa = ratio_sign(&self.a);
        let sb = ratio_sign(&self.b);
        if sa == sb {
            return sa;
        }
        // q = -a/b is positive here since a, b have opposite signs.
        let q = -&self.a / &self.b;
        let t = &q + &q - BigRational::one();
        let tau_gt_q = if t.is_negative() {
            true
        } else {
            // (2q-1)² vs 5; equality is impossible since √5 is irrational.
            let t2 = &t * &t;
            let five = BigRational::from_integer(5.into());
            debug_assert!(t2 != five, "rational square equal to 5");
            t2 < five
        };
        if tau_gt_q {
            sb
        } else {
            -sb
        }
    }

    /// The nontrivial field automorphism τ ↦ 1 − τ: (a, b) ↦ (a + b, −b).
    pub fn galois_conjugate(&self) -> Self {
        GoldenNumber {
            a: &self.a + &self.b,
            b: -&self.b,
        }
    }

    /// Field norm x·conj(x) = a² + ab − b², a rational.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    /// Multiplicative inverse: conj(x)/norm(x).
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        debug_assert!(!n.is_zero(), "nonzero golden number with zero norm");
        let c = self.galois_conjugate();
        Ok(GoldenNumber {
            a: c.a / &n,
            b: c.b / &n,
        })
    }

    /// True when both coefficient denominators are powers of two. Every value
    /// arising from the operator constructions satisfies this; a violation
    /// signals a transcription or algebra bug, not a legal state.
    pub fn has_dyadic_denominators(&self) -> bool {
        is_power_of_two(self.a.denom()) && is_power_of_two(self.b.denom())
    }

    /// Floating approximation for diagnostics and test cross-checks only;
    /// never used by the exact core.
    pub fn approx_value(&self) -> f64 {
        use num::ToPrimitive;
        let tau = (1.0 + 5.0f64.sqrt()) / 2.0;
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * tau
    }
}

fn ratio_sign(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn is_power_of_two(n: &BigInt) -> bool {
    if !n.is_positive() {
        return false;
    }
    let m = n - BigInt::one();
    (n & &m).is_zero()
}

impl Default for GoldenNumber {
    fn default() -> Self {
        GoldenNumber::zero()
    }
}

impl PartialOrd for GoldenNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldenNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl Add for &GoldenNumber {
    type Output = GoldenNumber;
    fn add(self, rhs: &GoldenNumber) -> GoldenNumber {
        GoldenNumber {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &GoldenNumber {
    type Output = GoldenNumber;
    fn sub(self, rhs: &GoldenNumber) -> GoldenNumber {
        GoldenNumber {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

/// (a₁ + b₁τ)(a₂ + b₂τ) = (a₁a₂ + b₁b₂) + (a₁b₂ + a₂b₁ + b₁b₂)τ, using τ² = τ + 1.
impl Mul for &GoldenNumber {
    type Output = GoldenNumber;
    fn mul(self, rhs: &GoldenNumber) -> GoldenNumber {
        let bb = &self.b * &rhs.b;
        GoldenNumber {
            a: &self.a * &rhs.a + &bb,
            b: &self.a * &rhs.b + &self.b * &rhs.a + &bb,
        }
    }
}

impl Neg for &GoldenNumber {
    type Output = GoldenNumber;
    fn neg(self) -> GoldenNumber {
        GoldenNumber {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Div for &GoldenNumber {
    type Output = GoldenNumber;
    fn div(self, rhs: &GoldenNumber) -> GoldenNumber {
        let inv = rhs.inverse().expect("division by zero golden number");
        self * &inv
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GoldenNumber {
            type Output = GoldenNumber;
            fn $method(self, rhs: GoldenNumber) -> GoldenNumber {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GoldenNumber> for GoldenNumber {
            type Output = GoldenNumber;
            fn $method(self, rhs: &GoldenNumber) -> GoldenNumber {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for GoldenNumber {
    type Output = GoldenNumber;
    fn neg(self) -> GoldenNumber {
        -&self
    }
}

/// Canonical text form "(p+qτ)/r": both coefficients over the least common
/// denominator r ≥ 1, q's sign folded into the separator. Examples:
/// "(1+1τ)/2", "(1-1τ)/2", "(0+0τ)/1".
impl fmt::Display for GoldenNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = num::integer::lcm(self.a.denom().clone(), self.b.denom().clone());
        let p = self.a.numer() * (&r / self.a.denom());
        let q = self.b.numer() * (&r / self.b.denom());
        let sep = if q.is_negative() { "-" } else { "+" };
        write!(f, "({}{}{}τ)/{}", p, sep, q.magnitude(), r)
    }
}

impl fmt::Debug for GoldenNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GoldenNumber {
    type Err = Error;

    /// Parses the canonical form produced by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedGolden(s.to_string());
        let t = s.trim();
        let t = t.strip_prefix('(').ok_or_else(bad)?;
        let (body, denom) = t.split_once(")/").ok_or_else(bad)?;
        let body = body.strip_suffix('τ').ok_or_else(bad)?;
        // split p from signed q at the last '+' or '-' that is not a leading sign
        let split_at = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(bad)?;
        let (p_str, q_str) = body.split_at(split_at);
        let p: BigInt = p_str.parse().map_err(|_| bad())?;
        let q: BigInt = q_str.parse().map_err(|_| bad())?;
        let r: BigInt = denom.parse().map_err(|_| bad())?;
        if r.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(GoldenNumber {
            a: BigRational::new(p, r.clone()),
            b: BigRational::new(q, r),
        })
    }
}

/// A 4-vector over the golden field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GoldenVector4 {
    components: [GoldenNumber; 4],
}

impl GoldenVector4 {
    pub fn new(components: [GoldenNumber; 4]) -> Self {
        GoldenVector4 { components }
    }

    /// Standard basis vector, `i` in 0..4.
    pub fn basis_vector(i: usize) -> Self {
        let mut c = [
            GoldenNumber::zero(),
            GoldenNumber::zero(),
            GoldenNumber::zero(),
            GoldenNumber::zero(),
        ];
        c[i] = GoldenNumber::one();
        GoldenVector4 { components: c }
    }

    pub fn components(&self) -> &[GoldenNumber; 4] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(GoldenNumber::is_zero)
    }

    /// Real inner product Σᵢ vᵢwᵢ (no conjugation — all vectors are real).
    pub fn inner_product(&self, other: &Self) -> GoldenNumber {
        let mut acc = GoldenNumber::zero();
        for (x, y) in self.components.iter().zip(&other.components) {
            acc = &acc + &(x * y);
        }
        acc
    }

    pub fn norm_sq(&self) -> GoldenNumber {
        self.inner_product(self)
    }

    pub fn is_orthogonal_to(&self, other: &Self) -> bool {
        self.inner_product(other).is_zero()
    }

    /// Projective sign normalization: returns v or −v so that the first
    /// nonzero component (scanning positions 1→4) is positive.
    pub fn canonicalize(&self) -> Result<Self> {
        for c in &self.components {
            match c.sign() {
                0 => continue,
                1 => return Ok(self.clone()),
                _ => return Ok(-self),
            }
        }
        Err(Error::ZeroVector)
    }
}

impl Neg for &GoldenVector4 {
    type Output = GoldenVector4;
    fn neg(self) -> GoldenVector4 {
        GoldenVector4 {
            components: std::array::from_fn(|i| -&self.components[i]),
        }
    }
}

/// A dense 4×4 matrix over the golden field, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GoldenMatrix4 {
    rows: [[GoldenNumber; 4]; 4],
}

impl GoldenMatrix4 {
    pub fn new(rows: [[GoldenNumber; 4]; 4]) -> Self {
        GoldenMatrix4 { rows }
    }

    pub fn identity() -> Self {
        GoldenMatrix4 {
            rows: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    if i == j {
                        GoldenNumber::one()
                    } else {
                        GoldenNumber::zero()
                    }
                })
            }),
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> &GoldenNumber {
        &self.rows[row][col]
    }

    pub fn row(&self, i: usize) -> GoldenVector4 {
        GoldenVector4::new(self.rows[i].clone())
    }

    pub fn column(&self, j: usize) -> GoldenVector4 {
        GoldenVector4::new(std::array::from_fn(|i| self.rows[i][j].clone()))
    }

    pub fn transpose(&self) -> Self {
        GoldenMatrix4 {
            rows: std::array::from_fn(|i| std::array::from_fn(|j| self.rows[j][i].clone())),
        }
    }

    /// Matrix product self·rhs.
    pub fn mul_matrix(&self, rhs: &Self) -> Self {
        GoldenMatrix4 {
            rows: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    let mut acc = GoldenNumber::zero();
                    for k in 0..4 {
                        acc = &acc + &(&self.rows[i][k] * &rhs.rows[k][j]);
                    }
                    acc
                })
            }),
        }
    }

    /// Column-vector action self·v.
    pub fn mul_vector(&self, v: &GoldenVector4) -> GoldenVector4 {
        GoldenVector4::new(std::array::from_fn(|i| {
            let mut acc = GoldenNumber::zero();
            for k in 0..4 {
                acc = &acc + &(&self.rows[i][k] * &v.components()[k]);
            }
            acc
        }))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = GoldenMatrix4::identity();
        for _ in 0..e {
            acc = acc.mul_matrix(self);
        }
        acc
    }

    /// Exact orthogonality: MᵀM = I.
    pub fn is_orthogonal(&self) -> bool {
        self.transpose().mul_matrix(self) == GoldenMatrix4::identity()
    }

    pub fn map(&self, f: impl Fn(&GoldenNumber) -> GoldenNumber) -> Self {
        GoldenMatrix4 {
            rows: std::array::from_fn(|i| std::array::from_fn(|j| f(&self.rows[i][j]))),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x)
    }
}
