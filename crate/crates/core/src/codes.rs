//! Linear codes over prime fields and brute-force certification of the
//! perfect codes used to build lattice tilings.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::abelian::is_prime;
use crate::ball::binomial;
use crate::error::{Error, Result};
use crate::modp::rref;

/// Largest number of codewords any enumeration here will visit.
pub const CODEWORD_CAP: u64 = 1 << 24;

/// A linear `[n, k]` code over `F_p`, given by a `k x n` generator matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCode")]
pub struct LinearCode {
    p: u64,
    n: usize,
    k: usize,
    gen: Vec<Vec<u64>>,
}

#[derive(Deserialize)]
struct RawCode {
    p: u64,
    n: usize,
    k: usize,
    gen: Vec<Vec<u64>>,
}

impl TryFrom<RawCode> for LinearCode {
    type Error = Error;

    fn try_from(raw: RawCode) -> Result<Self> {
        let code = LinearCode::new(raw.p, raw.n, raw.gen)?;
        if code.k != raw.k {
            return Err(Error::InvalidCode(format!(
                "declared dimension {} but generator has {} rows",
                raw.k, code.k
            )));
        }
        Ok(code)
    }
}

impl LinearCode {
    pub fn new(p: u64, n: usize, gen: Vec<Vec<u64>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::InvalidCode("length must be positive".into()));
        }
        if let Some(row) = gen.iter().find(|r| r.len() != n) {
            return Err(Error::InvalidCode(format!(
                "row of length {} in a length-{n} code",
                row.len()
            )));
        }
        if gen.iter().flatten().any(|&x| x >= p) {
            return Err(Error::InvalidCode(format!(
                "entries must lie in [0, {}]",
                p - 1
            )));
        }
        let (reduced, _) = rref(&gen, p);
        if reduced.len() != gen.len() {
            return Err(Error::InvalidCode(
                "generator rows are linearly dependent".into(),
            ));
        }
        let k = gen.len();
        Ok(Self { p, n, k, gen })
    }

    /// The code spanned by `rows` (any spanning set), stored in reduced row
    /// echelon form, which is systematic whenever the first `k` columns are
    /// an information set.
    pub fn from_spanning_rows(p: u64, n: usize, rows: &[Vec<u64>]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let (reduced, _) = rref(rows, p);
        Self::new(p, n, reduced)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &[Vec<u64>] {
        &self.gen
    }

    /// Whether the generator has the form `[I_k | A]`.
    pub fn is_systematic(&self) -> bool {
        self.gen
            .iter()
            .enumerate()
            .all(|(i, row)| (0..self.k).all(|j| row[j] == u64::from(i == j)))
    }

    /// The `A` block of a systematic generator `[I_k | A]`.
    pub fn redundancy_block(&self) -> Option<Vec<Vec<u64>>> {
        self.is_systematic()
            .then(|| self.gen.iter().map(|r| r[self.k..].to_vec()).collect())
    }

    /// `m G` for a message `m` of length `k`.
    pub fn encode(&self, message: &[u64]) -> Vec<u64> {
        let mut word = vec![0u64; self.n];
        for (&m, row) in message.iter().zip(&self.gen) {
            if m == 0 {
                continue;
            }
            for (w, &g) in word.iter_mut().zip(row) {
                *w = (*w + m * g) % self.p;
            }
        }
        word
    }

    fn word_count(&self) -> Result<u64> {
        let count = BigUint::from(self.p).pow(self.k as u32);
        if count > BigUint::from(CODEWORD_CAP) {
            return Err(Error::CapExceeded {
                requested: count.to_string(),
                cap: CODEWORD_CAP as u128,
            });
        }
        Ok(self.p.pow(self.k as u32))
    }

    /// All `p^k` codewords, messages in lexicographic order.
    pub fn codewords(&self) -> Result<Vec<Vec<u64>>> {
        let count = self.word_count()?;
        let mut message = vec![0u64; self.k];
        let mut out = Vec::with_capacity(count as usize);
        for _ in 0..count {
            out.push(self.encode(&message));
            for digit in message.iter_mut().rev() {
                *digit += 1;
                if *digit < self.p {
                    break;
                }
                *digit = 0;
            }
        }
        Ok(out)
    }

    /// Minimum Hamming weight over non-zero codewords; `None` for the zero code.
    pub fn min_distance(&self) -> Result<Option<usize>> {
        Ok(self
            .codewords()?
            .iter()
            .map(|w| w.iter().filter(|&&x| x != 0).count())
            .filter(|&w| w > 0)
            .min())
    }
}

/// Volume of a radius-`t` Hamming ball in `F_p^n`.
pub fn sphere_volume(p: u64, n: usize, t: usize) -> BigUint {
    let q1 = BigUint::from(p - 1);
    (0..=t.min(n))
        .map(|i| binomial(n, i) * q1.pow(i as u32))
        .sum()
}

/// Result of [`certify_perfect`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeCertificate {
    pub n: usize,
    pub k: usize,
    pub p: u64,
    pub t: usize,
    pub min_distance: Option<usize>,
    /// `|C| * V_p(n, t) == p^n`.
    pub sphere_count_check: bool,
    /// `Some(t)` when the code is perfect with radius `t`.
    pub is_perfect_for_t: Option<usize>,
}

/// Checks the sphere-packing equality and `d >= 2t + 1` by enumeration.
/// Together these are equivalent to perfection, so no covering-radius
/// computation is needed.
pub fn certify_perfect(code: &LinearCode, t: usize) -> Result<CodeCertificate> {
    let d = code.min_distance()?;
    let lhs = BigUint::from(code.p).pow(code.k as u32) * sphere_volume(code.p, code.n, t);
    let sphere_count_check = lhs == BigUint::from(code.p).pow(code.n as u32);
    let distance_ok = d.map_or(true, |d| d > 2 * t);
    Ok(CodeCertificate {
        n: code.n,
        k: code.k,
        p: code.p,
        t,
        min_distance: d,
        sphere_count_check,
        is_perfect_for_t: (sphere_count_check && distance_ok).then_some(t),
    })
}

/// The `p`-ary Hamming code of redundancy `m`, length `(p^m - 1)/(p - 1)`.
///
/// Parity-check columns are the projective points (first non-zero coordinate
/// 1) with the unit vectors moved last, so `H = [B | I_m]` and the generator
/// is `[I_k | -B^T]`.
pub fn hamming_code(p: u64, m: u32) -> Result<LinearCode> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m < 2 {
        return Err(Error::InvalidCode(format!(
            "Hamming redundancy must be >= 2, got {m}"
        )));
    }
    let len = (p.pow(m) - 1) / (p - 1);
    if len > 4096 {
        return Err(Error::CapExceeded {
            requested: format!("Hamming code of length {len}"),
            cap: 4096,
        });
    }
    let m = m as usize;
    let mut points = Vec::new();
    for idx in 0..p.pow(m as u32) {
        let mut v = vec![0u64; m];
        let mut x = idx;
        for slot in v.iter_mut().rev() {
            *slot = x % p;
            x /= p;
        }
        if v.iter().find(|&&c| c != 0) == Some(&1) {
            points.push(v);
        }
    }
    let is_unit = |v: &Vec<u64>| v.iter().filter(|&&c| c != 0).count() == 1;
    let others: Vec<&Vec<u64>> = points.iter().filter(|v| !is_unit(v)).collect();
    let k = others.len();
    let gen = others
        .iter()
        .enumerate()
        .map(|(i, col)| {
            let mut row = vec![0u64; k + m];
            row[i] = 1;
            for (j, &c) in col.iter().enumerate() {
                row[k + j] = (p - c) % p;
            }
            row
        })
        .collect();
    LinearCode::new(p, k + m, gen)
}

/// The binary repetition code `[2t + 1, 1, 2t + 1]`.
pub fn repetition_code(t: usize) -> Result<LinearCode> {
    if t == 0 {
        return Err(Error::InvalidCode("repetition radius must be >= 1".into()));
    }
    LinearCode::new(2, 2 * t + 1, vec![vec![1; 2 * t + 1]])
}

/// Systematic generator of the cyclic code with generator polynomial `g`
/// (coefficients lowest degree first).
fn cyclic_code(p: u64, n: usize, g: &[u64]) -> Result<LinearCode> {
    let k = n + 1 - g.len();
    let rows: Vec<Vec<u64>> = (0..k)
        .map(|shift| {
            let mut row = vec![0u64; n];
            row[shift..shift + g.len()].copy_from_slice(g);
            row
        })
        .collect();
    LinearCode::from_spanning_rows(p, n, &rows)
}

/// The `[23, 12, 7]` binary Golay code, `g(x) = 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11`.
pub fn golay_binary() -> LinearCode {
    cyclic_code(2, 23, &[1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1]).expect("valid Golay generator")
}

/// The `[11, 6, 5]` ternary Golay code, `g(x) = 2 + x^2 + 2x^3 + x^4 + x^5`.
pub fn golay_ternary() -> LinearCode {
    cyclic_code(3, 11, &[2, 0, 1, 2, 1, 1]).expect("valid Golay generator")
}

/// A built-in perfect linear `[n, k, 2t+1]` code over `F_p`, when one of the
/// constructions here provides it.
pub fn builtin_perfect_code(p: u64, n: usize, t: usize) -> Option<LinearCode> {
    if !is_prime(p) || t == 0 || t >= n {
        return None;
    }
    match (p, n, t) {
        (2, 23, 3) => return Some(golay_binary()),
        (3, 11, 2) => return Some(golay_ternary()),
        (2, _, _) if n == 2 * t + 1 => return repetition_code(t).ok(),
        _ => {}
    }
    if t == 1 {
        let mut len = BigUint::one() + BigUint::from(p);
        let mut m = 2;
        while len <= BigUint::from(n) {
            if len == BigUint::from(n) {
                return hamming_code(p, m).ok();
            }
            len = len * BigUint::from(p) + BigUint::one();
            m += 1;
        }
    }
    None
}
