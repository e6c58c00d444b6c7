use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Q = Ratio<i64>;

/// A weight in the fundamental-weight basis: `coords[i]` is the pairing of the
/// `i`-th simple coroot with the weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<Q>);

impl Weight {
    pub fn new(coords: Vec<Q>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![Q::zero(); rank])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|&c| Q::from_integer(c)).collect())
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// True when every coordinate is an integer, i.e. the weight lies in `P`.
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn scale(&self, k: Q) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }

    /// `self - k * v` for an integer vector `v` in weight coordinates.
    pub(crate) fn sub_scaled_int(&self, k: Q, v: &[i64]) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(v)
                .map(|(c, &x)| c - k * Q::from_integer(x))
                .collect(),
        )
    }

    pub(crate) fn dot_int(&self, v: &[i64]) -> Q {
        self.0
            .iter()
            .zip(v)
            .fold(Q::zero(), |acc, (c, &x)| acc + c * Q::from_integer(x))
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        if self.rank() == rank {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                expected: rank,
                got: self.rank(),
            })
        }
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

pub(crate) fn fmt_q(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_q).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub(crate) fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(n, d))
        }
        None => s.parse::<i64>().map(Q::from_integer).map_err(|_| bad()),
    }
}

/// Parses `"(-1,-1)"`, `"(1/2, 1/2)"` or the bare `"1/2,0"`.
impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('[') {
            return Err(Error::Parse(format!(
                "{s:?}: weights are given in fundamental-weight coordinates as (a,b,...), not root coordinates"
            )));
        }
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        if inner.trim().is_empty() {
            return Err(Error::Parse(format!("empty weight {s:?}")));
        }
        inner
            .split(',')
            .map(parse_q)
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}
