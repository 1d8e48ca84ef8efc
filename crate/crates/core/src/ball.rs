//! The limited-magnitude error ball `B(n, t, k+, k-)`: integer vectors of
//! length `n` with at most `t` non-zero entries, each in `[-k-, k+]`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of vectors materialized by an enumeration.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 48;

/// The quadruple `(n, t, k+, k-)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct BallParams {
    pub n: usize,
    pub t: usize,
    pub k_plus: u32,
    pub k_minus: u32,
}

#[derive(Deserialize)]
struct RawParams {
    n: usize,
    t: usize,
    k_plus: u32,
    k_minus: u32,
}

impl TryFrom<RawParams> for BallParams {
    type Error = Error;

    fn try_from(r: RawParams) -> Result<Self> {
        BallParams::new(r.n, r.t, r.k_plus, r.k_minus)
    }
}

impl fmt::Display for BallParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "B({},{},{},{})",
            self.n, self.t, self.k_plus, self.k_minus
        )
    }
}

impl BallParams {
    pub fn new(n: usize, t: usize, k_plus: u32, k_minus: u32) -> Result<Self> {
        if t < 1 || n < t {
            return Err(Error::InvalidBall(format!(
                "need n >= t >= 1, got n={n}, t={t}"
            )));
        }
        if k_plus < k_minus {
            return Err(Error::InvalidBall(format!(
                "need k+ >= k-, got k+={k_plus}, k-={k_minus}"
            )));
        }
        Ok(Self {
            n,
            t,
            k_plus,
            k_minus,
        })
    }

    /// Tiling questions need a non-empty coefficient set, i.e. `k+ >= 1`.
    pub fn require_tiling(&self) -> Result<()> {
        if self.k_plus == 0 {
            return Err(Error::InvalidBall(format!(
                "{self}: tiling operations need k+ >= 1"
            )));
        }
        Ok(())
    }

    /// `k+ + k-`, the number of non-zero values an entry can take.
    pub fn arm(&self) -> u32 {
        self.k_plus + self.k_minus
    }

    /// The non-zero entry values in enumeration order: `1..=k+`, then `-1..=-k-`.
    pub fn values(&self) -> Vec<i64> {
        let up = 1..=self.k_plus as i64;
        let down = (1..=self.k_minus as i64).map(|v| -v);
        up.chain(down).collect()
    }

    /// `|B(n,t,k+,k-)| = sum_{i=0}^{t} C(n,i) (k+ + k-)^i`, exactly.
    pub fn size(&self) -> BigUint {
        let arm = BigUint::from(self.arm());
        (0..=self.t)
            .map(|i| binomial(self.n, i) * arm.pow(i as u32))
            .sum()
    }

    pub fn size_u64(&self) -> Result<u64> {
        self.size()
            .to_u64()
            .ok_or_else(|| Error::InvalidBall(format!("{self}: size does not fit in 64 bits")))
    }

    /// Volume of the notched cube `[0,k+]^{t+1} \ [k-+1,k+]^{t+1}`,
    /// i.e. `(k+ + 1)^{t+1} - (k+ - k-)^{t+1}`.
    pub fn notched_cube_volume(&self) -> Result<BigUint> {
        if self.k_plus == 0 && self.k_minus == 0 {
            return Err(Error::InvalidBall(format!(
                "{self}: notched cube needs k+ and k- not both zero"
            )));
        }
        let e = (self.t + 1) as u32;
        Ok(
            BigUint::from(self.k_plus + 1).pow(e)
                - BigUint::from(self.k_plus - self.k_minus).pow(e),
        )
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.n
            && x.iter().filter(|&&v| v != 0).count() <= self.t
            && x.iter()
                .all(|&v| v >= -(self.k_minus as i64) && v <= self.k_plus as i64)
    }

    /// Iterates the ball in the fixed order: weight ascending, then support
    /// lexicographic, then values in the order of [`BallParams::values`].
    pub fn iter(&self) -> BallIter {
        BallIter::new(self)
    }
}

/// Exact binomial coefficient.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// A vector of the ball, dense form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ErrorVector(pub Vec<i64>);

impl ErrorVector {
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&v| v != 0).count()
    }
}

impl fmt::Display for ErrorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Walks the ball one vector at a time. The sparse view (`support`, `values`)
/// avoids materializing dense vectors in hot loops.
#[derive(Debug, Clone)]
pub struct BallIter {
    n: usize,
    t: usize,
    values: Vec<i64>,
    weight: usize,
    support: Vec<usize>,
    value_idx: Vec<usize>,
    current: Vec<i64>,
    started: bool,
    done: bool,
}

impl BallIter {
    fn new(p: &BallParams) -> Self {
        let values = p.values();
        Self {
            n: p.n,
            t: if values.is_empty() { 0 } else { p.t },
            values,
            weight: 0,
            support: Vec::new(),
            value_idx: Vec::new(),
            current: Vec::new(),
            started: false,
            done: false,
        }
    }

    /// Advances and returns the next vector as `(support, values)`.
    pub fn next_sparse(&mut self) -> Option<(&[usize], &[i64])> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some((&self.support, &self.current))
    }

    fn advance(&mut self) -> bool {
        let m = self.values.len();
        // values, odometer with the last position fastest
        for i in (0..self.weight).rev() {
            if self.value_idx[i] + 1 < m {
                self.value_idx[i] += 1;
                self.current[i] = self.values[self.value_idx[i]];
                for j in i + 1..self.weight {
                    self.value_idx[j] = 0;
                    self.current[j] = self.values[0];
                }
                return true;
            }
        }
        // next support of the same weight
        let w = self.weight;
        for i in (0..w).rev() {
            if self.support[i] < self.n - w + i {
                self.support[i] += 1;
                for j in i + 1..w {
                    self.support[j] = self.support[j - 1] + 1;
                }
                self.reset_values();
                return true;
            }
        }
        if self.weight == self.t {
            return false;
        }
        self.weight += 1;
        self.support = (0..self.weight).collect();
        self.reset_values();
        true
    }

    fn reset_values(&mut self) {
        self.value_idx = vec![0; self.weight];
        self.current = vec![self.values[0]; self.weight];
    }
}

impl Iterator for BallIter {
    type Item = ErrorVector;

    fn next(&mut self) -> Option<ErrorVector> {
        let n = self.n;
        let (support, values) = self.next_sparse()?;
        let mut v = vec![0i64; n];
        for (&i, &x) in support.iter().zip(values) {
            v[i] = x;
        }
        Some(ErrorVector(v))
    }
}

fn check_cap(p: &BallParams, cap: u128) -> Result<()> {
    let size = p.size();
    if size > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            requested: size.to_string(),
            cap,
        });
    }
    Ok(())
}

/// All vectors of the ball, refusing to materialize more than `cap` of them.
pub fn enumerate_ball_capped(p: &BallParams, cap: u128) -> Result<Vec<ErrorVector>> {
    check_cap(p, cap)?;
    Ok(p.iter().collect())
}

pub fn enumerate_ball(p: &BallParams) -> Result<Vec<ErrorVector>> {
    enumerate_ball_capped(p, DEFAULT_ENUMERATION_CAP)
}

/// The ball in consecutive chunks of at most `chunk` vectors, for handing to
/// parallel consumers.
pub fn ball_chunks(
    p: &BallParams,
    chunk: usize,
    cap: u128,
) -> Result<impl Iterator<Item = Vec<ErrorVector>>> {
    check_cap(p, cap)?;
    let mut it = p.iter();
    let chunk = chunk.max(1);
    Ok(std::iter::from_fn(move || {
        let batch: Vec<ErrorVector> = it.by_ref().take(chunk).collect();
        (!batch.is_empty()).then_some(batch)
    }))
}
