//! Integer and dyadic rational forms, built literally:
//! `n = {n-1 | }`, `1/2^k = {0 | 1/2^(k-1)}`, and `n/2^k` as a sum of `n` copies of `1/2^k`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{GameId, Games};

/// `numerator / 2^exponent`, kept reduced: the numerator is odd unless the exponent is 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DyadicValue {
    numerator: i64,
    exponent: u32,
}

impl DyadicValue {
    pub fn new(numerator: i64, exponent: u32) -> Self {
        let mut n = numerator;
        let mut k = exponent;
        while k > 0 && n % 2 == 0 {
            n /= 2;
            k -= 1;
        }
        DyadicValue {
            numerator: n,
            exponent: k,
        }
    }

    pub fn integer(n: i64) -> Self {
        DyadicValue {
            numerator: n,
            exponent: 0,
        }
    }

    pub fn numerator(&self) -> i64 {
        self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_integer(&self) -> bool {
        self.exponent == 0
    }

    /// `1 / 2^k`
    pub fn unit(k: u32) -> Self {
        DyadicValue::new(1, k)
    }

    pub fn neg(&self) -> Self {
        DyadicValue {
            numerator: -self.numerator,
            exponent: self.exponent,
        }
    }

    /// Exact midpoint of two values.
    pub fn midpoint(&self, other: &Self) -> Self {
        let k = self.exponent.max(other.exponent);
        let a = (self.numerator as i128) << (k - self.exponent);
        let b = (other.numerator as i128) << (k - other.exponent);
        let sum = a + b;
        DyadicValue::new(i64::try_from(sum).expect("dyadic overflow"), k + 1)
    }

    pub fn as_f64(&self) -> f64 {
        self.numerator as f64 / (2f64).powi(self.exponent as i32)
    }
}

impl PartialOrd for DyadicValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DyadicValue {
    fn cmp(&self, other: &Self) -> Ordering {
        let k = self.exponent.max(other.exponent);
        let a = (self.numerator as i128) << (k - self.exponent);
        let b = (other.numerator as i128) << (k - other.exponent);
        a.cmp(&b)
    }
}

impl fmt::Display for DyadicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else if self.exponent < 63 {
            write!(f, "{}/{}", self.numerator, 1u64 << self.exponent)
        } else {
            write!(f, "{}/2^{}", self.numerator, self.exponent)
        }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Rough count of distinct sum nodes created by `copies` copies of `1/2^k`
/// added to an integer chain of length `int_len`.
fn dyadic_cost(copies: u64, k: u32, int_len: u64) -> u128 {
    let positions = k as u128 + 1;
    binomial(copies as u128 + positions, positions).saturating_mul(int_len as u128 + 1)
}

/// The integer form `n`: `{n-1 | }` for `n > 0`, its conjugate for `n < 0`.
pub fn integer_form(games: &Games, n: i64) -> Result<GameId> {
    let limit = games.bounds().max_integer;
    if n.unsigned_abs() > limit {
        return Err(Error::BoundExceeded {
            what: "integer",
            value: n.unsigned_abs() as u128,
            limit: limit as u128,
        });
    }
    let mut g = games.zero();
    for _ in 0..n.unsigned_abs() {
        g = if n > 0 {
            games.intern([g], [])
        } else {
            games.intern([], [g])
        };
    }
    Ok(g)
}

/// `1/2^k`, with `1/2^0 = 1`.
pub fn unit_dyadic(games: &Games, k: u32) -> Result<GameId> {
    let limit = games.bounds().max_integer;
    if k as u64 > limit {
        return Err(Error::BoundExceeded {
            what: "dyadic exponent",
            value: k as u128,
            limit: limit as u128,
        });
    }
    let mut g = games.intern([games.zero()], []);
    for _ in 0..k {
        g = games.intern([games.zero()], [g]);
    }
    Ok(g)
}

/// Sum of `|n|` copies of `1/2^k`, conjugated when `n < 0`. Not reduced: `2` copies of
/// `1/4` is a different form from `1/2`.
pub fn dyadic_copies(games: &Games, n: i64, k: u32) -> Result<GameId> {
    check_dyadic_cost(games, n.unsigned_abs(), k, 0)?;
    let unit = unit_dyadic(games, k)?;
    let mut g = games.zero();
    for _ in 0..n.unsigned_abs() {
        g = games.sum(g, unit);
    }
    Ok(if n < 0 { games.conjugate(g) } else { g })
}

fn check_dyadic_cost(games: &Games, copies: u64, k: u32, int_len: u64) -> Result<()> {
    let limit = games.bounds().max_dyadic_nodes as u128;
    let cost = dyadic_cost(copies, k, int_len);
    if cost > limit {
        return Err(Error::BoundExceeded {
            what: "dyadic form size",
            value: cost,
            limit,
        });
    }
    Ok(())
}

/// The dyadic form of a reduced value: integer part plus the fractional part as a
/// sum of unit dyadics; negative values are conjugates.
pub fn dyadic_form(games: &Games, v: DyadicValue) -> Result<GameId> {
    if v.numerator() < 0 {
        let pos = dyadic_form(games, v.neg())?;
        return Ok(games.conjugate(pos));
    }
    let k = v.exponent();
    if k == 0 {
        return integer_form(games, v.numerator());
    }
    let n = v.numerator() as u64;
    let whole = n >> k;
    let frac = n - (whole << k);
    check_dyadic_cost(games, frac, k, whole)?;
    let int_part = integer_form(games, whole as i64)?;
    let frac_part = dyadic_copies(games, frac as i64, k)?;
    Ok(games.sum(int_part, frac_part))
}
