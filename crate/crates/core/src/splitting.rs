//! Splittings of finite abelian groups and their correspondence with lattice
//! tilings by error balls.
//!
//! `G = M <>_t S` means the sums `e . S`, over coefficient vectors `e` with
//! entries in `M u {0}` and weight `1..=t`, are distinct, non-zero, and cover
//! `G \ {0}`. The coefficient vectors are exactly the non-zero vectors of the
//! ball `B(n, t, k+, k-)`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianGroup, GroupElement};
use crate::ball::{BallParams, ErrorVector};
use crate::error::{Error, Result};
use crate::lattice::{hermite_normal_form, quotient_group, IntMatrix, Lattice};

/// Default cap on the number of coefficient vectors a verification visits.
pub const DEFAULT_VERIFY_CAP: u128 = 1 << 30;

const CHUNK: usize = 1 << 15;

/// `M = [-k-, k+] \ {0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoefficientSet {
    pub k_plus: u32,
    pub k_minus: u32,
}

impl CoefficientSet {
    pub fn new(k_plus: u32, k_minus: u32) -> Result<Self> {
        if k_plus < 1 || k_plus < k_minus {
            return Err(Error::InvalidBall(format!(
                "need k+ >= max(k-, 1), got k+={k_plus}, k-={k_minus}"
            )));
        }
        Ok(Self { k_plus, k_minus })
    }

    /// Members in the ball's value order: `1..=k+`, then `-1..=-k-`.
    pub fn values(&self) -> Vec<i64> {
        let up = 1..=self.k_plus as i64;
        let down = (1..=self.k_minus as i64).map(|v| -v);
        up.chain(down).collect()
    }

    pub fn len(&self) -> usize {
        (self.k_plus + self.k_minus) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for CoefficientSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[-{},{}]*", self.k_minus, self.k_plus)
    }
}

/// A candidate splitting: group, ordered splitter elements, coefficients and `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SplitterJson", into = "SplitterJson")]
pub struct SplitterSet {
    group: AbelianGroup,
    s: Vec<GroupElement>,
    coeffs: CoefficientSet,
    t: usize,
}

#[derive(Serialize, Deserialize)]
struct SplitterJson {
    group: AbelianGroup,
    #[serde(rename = "S")]
    s: Vec<Vec<u64>>,
    k_plus: u32,
    k_minus: u32,
    t: usize,
}

impl TryFrom<SplitterJson> for SplitterSet {
    type Error = Error;

    fn try_from(raw: SplitterJson) -> Result<Self> {
        let s = raw
            .s
            .iter()
            .map(|r| {
                let el = raw
                    .group
                    .element(&r.iter().map(|&x| x as i64).collect::<Vec<_>>())?;
                if el.residues() != r.as_slice() {
                    return Err(Error::InvalidGroup(format!(
                        "element {r:?} is not reduced modulo {:?}",
                        raw.group.orders()
                    )));
                }
                Ok(el)
            })
            .collect::<Result<Vec<_>>>()?;
        SplitterSet::new(
            raw.group,
            s,
            CoefficientSet::new(raw.k_plus, raw.k_minus)?,
            raw.t,
        )
    }
}

impl From<SplitterSet> for SplitterJson {
    fn from(sp: SplitterSet) -> Self {
        SplitterJson {
            group: sp.group,
            s: sp.s.iter().map(|e| e.residues().to_vec()).collect(),
            k_plus: sp.coeffs.k_plus,
            k_minus: sp.coeffs.k_minus,
            t: sp.t,
        }
    }
}

impl SplitterSet {
    pub fn new(
        group: AbelianGroup,
        s: Vec<GroupElement>,
        coeffs: CoefficientSet,
        t: usize,
    ) -> Result<Self> {
        if t < 1 || s.len() < t {
            return Err(Error::InvalidBall(format!(
                "need n >= t >= 1, got n={}, t={t}",
                s.len()
            )));
        }
        if let Some(bad) = s.iter().find(|e| !group.contains(e)) {
            return Err(Error::InvalidGroup(format!(
                "{bad} is not an element of {group}"
            )));
        }
        Ok(Self {
            group,
            s,
            coeffs,
            t,
        })
    }

    /// Convenience constructor from plain integer coordinates.
    pub fn from_coords(
        group: AbelianGroup,
        s: &[Vec<i64>],
        k_plus: u32,
        k_minus: u32,
        t: usize,
    ) -> Result<Self> {
        let s = s
            .iter()
            .map(|c| group.element(c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, s, CoefficientSet::new(k_plus, k_minus)?, t)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.s
    }

    pub fn coefficients(&self) -> CoefficientSet {
        self.coeffs
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn n(&self) -> usize {
        self.s.len()
    }

    /// The ball whose non-zero vectors are the coefficient vectors.
    pub fn ball(&self) -> BallParams {
        BallParams::new(self.n(), self.t, self.coeffs.k_plus, self.coeffs.k_minus)
            .expect("validated on construction")
    }

    /// `e . S` for a coefficient vector `e`.
    pub fn image(&self, e: &[i64]) -> Result<GroupElement> {
        if e.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: e.len(),
            });
        }
        let mut acc = self.group.zero();
        for (&c, s) in e.iter().zip(&self.s) {
            if c != 0 {
                acc = self.group.add(&acc, &self.group.scale(c, s)?)?;
            }
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitMode {
    /// Distinct non-zero sums only.
    Weak,
    /// Distinct non-zero sums that also cover every non-zero element.
    Full,
}

/// Why a verification failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SplitFailure {
    /// Two coefficient vectors with the same sum. When `first` is the zero
    /// vector, `second` sums to zero.
    Collision {
        first: ErrorVector,
        second: ErrorVector,
    },
    /// All sums are distinct but they miss part of `G \ {0}`.
    Coverage { covered: u64, group_order: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitReport {
    pub valid: bool,
    pub mode: SplitMode,
    /// Number of non-zero coefficient vectors examined.
    pub sums_checked: u64,
    pub failure: Option<SplitFailure>,
}

/// Precomputed multiples `v * s_i` as residue vectors, for fast image sums.
struct ImageTable {
    orders: Vec<u64>,
    /// `mults[i][j]` = `values[j] * s_i`
    mults: Vec<Vec<Vec<u64>>>,
    value_pos: HashMap<i64, usize>,
}

impl ImageTable {
    fn new(sp: &SplitterSet) -> Self {
        let values = sp.coeffs.values();
        let mults =
            sp.s.iter()
                .map(|s| {
                    values
                        .iter()
                        .map(|&v| {
                            sp.group
                                .scale(v, s)
                                .expect("valid element")
                                .residues()
                                .to_vec()
                        })
                        .collect()
                })
                .collect();
        let value_pos = values.iter().enumerate().map(|(j, &v)| (v, j)).collect();
        Self {
            orders: sp.group.orders().to_vec(),
            mults,
            value_pos,
        }
    }

    fn index(&self, e: &ErrorVector) -> u64 {
        let mut acc = vec![0u64; self.orders.len()];
        for (i, &c) in e.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let m = &self.mults[i][self.value_pos[&c]];
            for ((a, &x), &n) in acc.iter_mut().zip(m).zip(&self.orders) {
                *a = (*a + x) % n;
            }
        }
        acc.iter()
            .zip(&self.orders)
            .fold(0, |idx, (&r, &n)| idx * n + r)
    }
}

/// First-seen bookkeeping: a dense table for small groups, a map otherwise.
enum Seen {
    Dense(Vec<u32>),
    Sparse(HashMap<u64, u32>),
}

impl Seen {
    fn new(order: u64) -> Self {
        if order <= 1 << 26 {
            Seen::Dense(vec![u32::MAX; order as usize])
        } else {
            Seen::Sparse(HashMap::new())
        }
    }

    /// Records `rank` at `idx`, or returns the earlier rank already there.
    fn insert(&mut self, idx: u64, rank: u32) -> Option<u32> {
        match self {
            Seen::Dense(v) => {
                let slot = &mut v[idx as usize];
                if *slot != u32::MAX {
                    return Some(*slot);
                }
                *slot = rank;
                None
            }
            Seen::Sparse(m) => match m.insert(idx, rank) {
                Some(prev) => {
                    m.insert(idx, prev);
                    Some(prev)
                }
                None => None,
            },
        }
    }
}

pub fn verify_splitting(sp: &SplitterSet, mode: SplitMode) -> Result<SplitReport> {
    verify_splitting_capped(sp, mode, DEFAULT_VERIFY_CAP)
}

/// Checks the splitting conditions by enumerating every coefficient vector.
///
/// Coverage is not enumerated: once the sums are known to be distinct and
/// non-zero, they cover `G \ {0}` exactly when there are `|G| - 1` of them.
pub fn verify_splitting_capped(
    sp: &SplitterSet,
    mode: SplitMode,
    cap: u128,
) -> Result<SplitReport> {
    let ball = sp.ball();
    let size = ball.size();
    if size > BigUint::from(cap) || size > BigUint::from(u32::MAX) {
        return Err(Error::CapExceeded {
            requested: (size - 1u32).to_string(),
            cap,
        });
    }
    let table = ImageTable::new(sp);
    let order = sp.group.order();
    let mut seen = Seen::new(order);
    let mut rank: u32 = 0;
    let mut chunk: Vec<ErrorVector> = Vec::with_capacity(CHUNK);
    let mut iter = ball.iter();
    // the zero vector comes first, so a sum equal to zero collides with it
    loop {
        chunk.clear();
        chunk.extend(iter.by_ref().take(CHUNK));
        if chunk.is_empty() {
            break;
        }
        let images: Vec<u64> = chunk.par_iter().map(|e| table.index(e)).collect();
        for (k, &idx) in images.iter().enumerate() {
            if let Some(prev) = seen.insert(idx, rank) {
                let first = ball.iter().nth(prev as usize).expect("rank within ball");
                return Ok(SplitReport {
                    valid: false,
                    mode,
                    sums_checked: rank as u64,
                    failure: Some(SplitFailure::Collision {
                        first,
                        second: chunk[k].clone(),
                    }),
                });
            }
            rank += 1;
        }
    }
    let covered = rank as u64 - 1;
    let failure =
        (mode == SplitMode::Full && covered + 1 != order).then_some(SplitFailure::Coverage {
            covered,
            group_order: order,
        });
    Ok(SplitReport {
        valid: failure.is_none(),
        mode,
        sums_checked: covered,
        failure,
    })
}

/// A basis of `ker(x -> x . S)`, from the Hermite form of
/// `[[S, I_n], [diag(orders), 0]]`: rows whose group part vanishes.
pub fn splitting_to_lattice(sp: &SplitterSet) -> Result<Lattice> {
    let n = sp.n();
    let orders = sp.group.orders();
    let r = orders.len();
    let mut m = IntMatrix::zeros(n + r, r + n)?;
    for (i, s) in sp.s.iter().enumerate() {
        for (j, &x) in s.residues().iter().enumerate() {
            m[(i, j)] = BigInt::from(x);
        }
        m[(i, r + i)] = BigInt::from(1);
    }
    for (j, &o) in orders.iter().enumerate() {
        m[(n + j, j)] = BigInt::from(o);
    }
    let hnf = hermite_normal_form(&m);
    let kernel: Vec<Vec<BigInt>> = hnf
        .basis_rows()
        .iter()
        .zip(hnf.pivots())
        .filter(|(_, &c)| c >= r)
        .map(|(row, _)| row[r..].to_vec())
        .collect();
    if kernel.len() != n {
        return Err(Error::Inconsistent(format!(
            "kernel basis has {} rows, expected {n}",
            kernel.len()
        )));
    }
    Lattice::new(IntMatrix::from_rows(&kernel)?)
}

/// Whether `L` tiles `Z^n` by the ball: volumes agree and the ball vectors
/// land in distinct cosets.
pub fn verify_lattice_tiling(p: &BallParams, l: &Lattice) -> Result<bool> {
    if l.dim() != p.n {
        return Err(Error::DimensionMismatch {
            expected: p.n,
            found: l.dim(),
        });
    }
    p.require_tiling()?;
    if BigInt::from(p.size()) != l.volume() {
        return Ok(false);
    }
    let sp = quotient_splitting(p, l)?;
    Ok(verify_splitting(&sp, SplitMode::Full)?.valid)
}

/// The splitting of `Z^n / L` induced by a tiling lattice.
pub fn tiling_to_splitting(p: &BallParams, l: &Lattice) -> Result<SplitterSet> {
    if !verify_lattice_tiling(p, l)? {
        return Err(Error::Precondition(format!(
            "the lattice does not tile Z^{} by {p}",
            p.n
        )));
    }
    let sp = quotient_splitting(p, l)?;
    let report = verify_splitting(&sp, SplitMode::Full)?;
    if !report.valid {
        return Err(Error::Inconsistent(
            "quotient splitting failed verification".into(),
        ));
    }
    Ok(sp)
}

fn quotient_splitting(p: &BallParams, l: &Lattice) -> Result<SplitterSet> {
    let q = quotient_group(l)?;
    SplitterSet::new(
        q.group,
        q.images,
        CoefficientSet::new(p.k_plus, p.k_minus)?,
        p.t,
    )
}
