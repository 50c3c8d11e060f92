//! Exact arithmetic for the Gallai-Ramsey value function `g(r, s, t)` over
//! clique profiles (`r` colors forbidding K5, `s` forbidding K4, `t`
//! forbidding K3), its eleven parity cases, and the twenty-two
//! parameter-reduction ratio types with their bounds. Everything here is
//! integer/rational arithmetic; no floating point.

pub mod tables;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// `R` stands in for one less than the (unknown) two-color Ramsey number of
/// K5; its known range.
pub const R_MIN: u32 = 42;
pub const R_MAX: u32 = 47;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("R must lie in [{R_MIN}, {R_MAX}] (got {0})")]
    ROutOfRange(u32),
    #[error("type T{ty} is inadmissible at (r, s, t) = ({r}, {s}, {t})")]
    Inadmissible { ty: u8, r: u32, s: u32, t: u32 },
    #[error("no ratio type T{0}")]
    NoSuchType(u8),
    #[error("coefficient and count lists differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
}

/// Parameter triple plus the ambient `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrParams {
    pub r: u32,
    pub s: u32,
    pub t: u32,
    pub ramsey_r: u32,
}

impl GrParams {
    pub fn new(r: u32, s: u32, t: u32, ramsey_r: u32) -> Result<Self, FormulaError> {
        if !(R_MIN..=R_MAX).contains(&ramsey_r) {
            return Err(FormulaError::ROutOfRange(ramsey_r));
        }
        Ok(GrParams { r, s, t, ramsey_r })
    }

    pub fn k(&self) -> u32 {
        self.r + self.s + self.t
    }

    pub fn case(&self) -> ParityCase {
        classify_case(self.r, self.s, self.t)
    }
}

/// The eleven mutually exclusive parity cases of the value function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ParityCase {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
    C10,
    C11,
}

impl ParityCase {
    pub const ALL: [ParityCase; 11] = [
        ParityCase::C1,
        ParityCase::C2,
        ParityCase::C3,
        ParityCase::C4,
        ParityCase::C5,
        ParityCase::C6,
        ParityCase::C7,
        ParityCase::C8,
        ParityCase::C9,
        ParityCase::C10,
        ParityCase::C11,
    ];

    pub fn index(&self) -> usize {
        Self::ALL.iter().position(|c| c == self).unwrap()
    }

    pub fn from_index(i: usize) -> Option<ParityCase> {
        Self::ALL.get(i.wrapping_sub(1)).copied()
    }
}

impl std::fmt::Display for ParityCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "c{}", self.index() + 1)
    }
}

/// Total, disjoint classification of a parameter triple.
pub fn classify_case(r: u32, s: u32, t: u32) -> ParityCase {
    let even = |x: u32| x.is_multiple_of(2);
    if even(r) {
        if even(s) {
            if even(t) {
                ParityCase::C1
            } else {
                ParityCase::C2
            }
        } else if t == 0 {
            ParityCase::C3
        } else if !even(t) {
            ParityCase::C5
        } else {
            ParityCase::C7
        }
    } else if even(s) {
        if !even(t) {
            ParityCase::C6
        } else if t >= 2 {
            ParityCase::C9
        } else if s == 0 {
            ParityCase::C4
        } else {
            ParityCase::C11
        }
    } else if even(t) {
        ParityCase::C8
    } else {
        ParityCase::C10
    }
}

/// `g(r, s, t) - 1` factored as `coef * R^a * 17^b * 5^c`.
pub fn g_factors(r: u32, s: u32, t: u32) -> (u64, u32, u32, u32) {
    use ParityCase::*;
    match classify_case(r, s, t) {
        C1 => (1, r / 2, s / 2, t / 2),
        C2 => (2, r / 2, s / 2, (t - 1) / 2),
        C3 => (3, r / 2, (s - 1) / 2, 0),
        C4 => (4, (r - 1) / 2, 0, 0),
        C5 => (8, r / 2, (s - 1) / 2, (t - 1) / 2),
        C6 => (13, (r - 1) / 2, s / 2, (t - 1) / 2),
        C7 => (16, r / 2, (s - 1) / 2, (t - 2) / 2),
        C8 => (24, (r - 1) / 2, (s - 1) / 2, t / 2),
        C9 => (26, (r - 1) / 2, s / 2, (t - 2) / 2),
        C10 => (48, (r - 1) / 2, (s - 1) / 2, (t - 1) / 2),
        C11 => (72, (r - 1) / 2, (s - 2) / 2, 0),
    }
}

/// `g(r, s, t) - 1`: the order of the extremal witness coloring.
pub fn g_minus_one(p: &GrParams) -> BigInt {
    let (coef, a, b, c) = g_factors(p.r, p.s, p.t);
    BigInt::from(coef)
        * BigInt::from(p.ramsey_r).pow(a)
        * BigInt::from(17u32).pow(b)
        * BigInt::from(5u32).pow(c)
}

/// The claimed Gallai-Ramsey value `g(r, s, t)`.
pub fn g_value(p: &GrParams) -> BigInt {
    g_minus_one(p) + 1
}

/// A rational constant, optionally carrying a factor `1/R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frac {
    pub num: i64,
    pub den: i64,
    #[serde(default)]
    pub per_r: bool,
}

impl Frac {
    pub const fn new(num: i64, den: i64) -> Frac {
        Frac {
            num,
            den,
            per_r: false,
        }
    }

    pub const fn per_r(num: i64, den: i64) -> Frac {
        Frac {
            num,
            den,
            per_r: true,
        }
    }

    pub fn eval(&self, ramsey_r: u32) -> BigRational {
        let den = if self.per_r {
            BigInt::from(self.den) * BigInt::from(ramsey_r)
        } else {
            BigInt::from(self.den)
        };
        BigRational::new(BigInt::from(self.num), den)
    }
}

impl std::fmt::Display for Frac {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.per_r {
            if self.den == 1 {
                write!(f, "{}/R", self.num)
            } else {
                write!(f, "{}/({}R)", self.num, self.den)
            }
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// One of the 22 parameter-reduction ratio types: a shift of `(r, s, t)`
/// together with the claimed upper bound on
/// `(g(shifted) - 1) / (g(r, s, t) - 1)`.
#[derive(Clone, Copy, Debug)]
pub struct RatioType {
    pub id: u8,
    pub delta: (i32, i32, i32),
    pub bound: Frac,
}

pub const RATIO_TYPES: [RatioType; 22] = [
    RatioType { id: 1, delta: (0, 0, -1), bound: Frac::new(1, 2) },
    RatioType { id: 2, delta: (0, 0, -2), bound: Frac::new(1, 5) },
    RatioType { id: 3, delta: (0, -1, 1), bound: Frac::new(2, 3) },
    RatioType { id: 4, delta: (0, -1, 0), bound: Frac::new(1, 3) },
    RatioType { id: 5, delta: (0, -1, -1), bound: Frac::new(1, 8) },
    RatioType { id: 6, delta: (0, -2, 2), bound: Frac::new(13, 36) },
    RatioType { id: 7, delta: (0, -2, 1), bound: Frac::new(13, 72) },
    RatioType { id: 8, delta: (0, -2, 0), bound: Frac::new(1, 17) },
    RatioType { id: 9, delta: (-1, 1, 0), bound: Frac::new(3, 4) },
    RatioType { id: 10, delta: (-1, 1, -1), bound: Frac::new(17, 48) },
    RatioType { id: 11, delta: (-1, 0, 1), bound: Frac::new(5, 13) },
    RatioType { id: 12, delta: (-1, 0, 0), bound: Frac::new(5, 26) },
    RatioType { id: 13, delta: (-1, 0, -1), bound: Frac::new(1, 13) },
    RatioType { id: 14, delta: (-1, -1, 2), bound: Frac::new(5, 24) },
    RatioType { id: 15, delta: (-1, -1, 1), bound: Frac::new(1, 9) },
    RatioType { id: 16, delta: (-1, -1, 0), bound: Frac::new(1, 24) },
    RatioType { id: 17, delta: (-2, 2, 0), bound: Frac::per_r(18, 1) },
    RatioType { id: 18, delta: (-2, 1, 1), bound: Frac::per_r(12, 1) },
    RatioType { id: 19, delta: (-2, 1, 0), bound: Frac::per_r(6, 1) },
    RatioType { id: 20, delta: (-2, 0, 2), bound: Frac::per_r(13, 2) },
    RatioType { id: 21, delta: (-2, 0, 1), bound: Frac::per_r(13, 4) },
    RatioType { id: 22, delta: (-2, 0, 0), bound: Frac::per_r(1, 1) },
];

pub fn ratio_type(id: u8) -> Result<&'static RatioType, FormulaError> {
    RATIO_TYPES
        .get(id.wrapping_sub(1) as usize)
        .ok_or(FormulaError::NoSuchType(id))
}

/// Applies the type's shift, or fails when a coordinate would go negative.
pub fn apply_transform(id: u8, r: u32, s: u32, t: u32) -> Result<(u32, u32, u32), FormulaError> {
    let ty = ratio_type(id)?;
    let shift = |x: u32, d: i32| -> Option<u32> { x.checked_add_signed(d) };
    match (
        shift(r, ty.delta.0),
        shift(s, ty.delta.1),
        shift(t, ty.delta.2),
    ) {
        (Some(a), Some(b), Some(c)) => Ok((a, b, c)),
        _ => Err(FormulaError::Inadmissible { ty: id, r, s, t }),
    }
}

/// Exact value of `(g(shifted) - 1) / (g(r, s, t) - 1)` for an admissible type.
pub fn ratio(id: u8, p: &GrParams) -> Result<BigRational, FormulaError> {
    let (r2, s2, t2) = apply_transform(id, p.r, p.s, p.t)?;
    let num = g_minus_one(&GrParams {
        r: r2,
        s: s2,
        t: t2,
        ramsey_r: p.ramsey_r,
    });
    let den = g_minus_one(p);
    Ok(BigRational::new(num, den))
}

/// `sum(coeff_i * count_i)` with exact rationals; the caller compares the
/// result against 1.
pub fn weighted_count_bound(
    coeffs: &[BigRational],
    counts: &[u64],
) -> Result<BigRational, FormulaError> {
    if coeffs.len() != counts.len() {
        return Err(FormulaError::LengthMismatch(coeffs.len(), counts.len()));
    }
    let mut acc = BigRational::new(BigInt::from(0), BigInt::one());
    for (c, &n) in coeffs.iter().zip(counts) {
        acc += c * BigRational::from(BigInt::from(n));
    }
    Ok(acc)
}
