//! Results taken from the literature rather than computed here.

use serde::Serialize;

use crate::abelian::AbelianGroup;

/// Which lengths admit a perfect linear code of the given radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AdmissibleLengths {
    /// `(p^m - 1)/(p - 1)` for `m >= 2`.
    Hamming,
    /// `2t + 1`, binary only.
    Repetition,
    Exactly(usize),
    /// `n <= t`: one codeword covers the space.
    Trivial,
}

/// One row of the perfect-code classification over prime fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PerfectCodeFact {
    /// `None` matches every prime.
    pub p: Option<u64>,
    /// `None` matches every radius.
    pub t: Option<usize>,
    pub lengths: AdmissibleLengths,
}

/// Non-trivial perfect codes over `F_p` in the Hamming metric. Anything not
/// listed does not exist.
pub const PERFECT_CODE_FACTS: &[PerfectCodeFact] = &[
    PerfectCodeFact {
        p: None,
        t: None,
        lengths: AdmissibleLengths::Trivial,
    },
    PerfectCodeFact {
        p: None,
        t: Some(1),
        lengths: AdmissibleLengths::Hamming,
    },
    PerfectCodeFact {
        p: Some(2),
        t: None,
        lengths: AdmissibleLengths::Repetition,
    },
    PerfectCodeFact {
        p: Some(2),
        t: Some(3),
        lengths: AdmissibleLengths::Exactly(23),
    },
    PerfectCodeFact {
        p: Some(3),
        t: Some(2),
        lengths: AdmissibleLengths::Exactly(11),
    },
];

pub const PERFECT_CODE_REFERENCE: &str =
    "classification of perfect codes over prime fields (Hamming, Golay and binary repetition codes are the only non-trivial ones)";

fn is_hamming_length(p: u64, n: usize) -> bool {
    let n = n as u128;
    let p = p as u128;
    let mut len = 1 + p;
    while len < n {
        len = len * p + 1;
    }
    len == n
}

impl PerfectCodeFact {
    fn matches(&self, p: u64, n: usize, t: usize) -> bool {
        if self.p.is_some_and(|q| q != p) || self.t.is_some_and(|r| r != t) {
            return false;
        }
        match self.lengths {
            AdmissibleLengths::Hamming => is_hamming_length(p, n),
            AdmissibleLengths::Repetition => n == 2 * t + 1,
            AdmissibleLengths::Exactly(m) => n == m,
            AdmissibleLengths::Trivial => n <= t,
        }
    }
}

/// Whether a perfect linear code of length `n` and radius `t >= 1` exists over
/// `F_p`, by table lookup.
pub fn perfect_code_exists(p: u64, n: usize, t: usize) -> bool {
    PERFECT_CODE_FACTS.iter().any(|f| f.matches(p, n, t))
}

/// A nonexistence statement about one group, with its source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CitedFact {
    pub statement: String,
    pub reference: &'static str,
}

/// Known lattice-tiling nonexistence results for `B(n,2,k+,0)` beyond what is
/// computed here.
pub fn cited_semicross_t2(n: usize, k_plus: u32) -> Option<CitedFact> {
    (n == 4 && k_plus == 2).then(|| CitedFact {
        statement: "B(4,2,2,0) does not lattice-tile Z^4".into(),
        reference: "earlier nonexistence result for B(4,2,2,0)",
    })
}

/// Known non-splitting groups for `B(n,2,k+,0)` that were settled by an
/// earlier computer search.
pub fn cited_group_nonexistence(n: usize, k_plus: u32, g: &AbelianGroup) -> Option<CitedFact> {
    let settled: &[&[u64]] = match (n, k_plus) {
        (11, 2) => &[&[27, 3, 3], &[9, 9, 3], &[9, 3, 3, 3]],
        _ => &[],
    };
    settled
        .iter()
        .any(|o| AbelianGroup::new(o.to_vec()).is_ok_and(|h| h.is_isomorphic(g)))
        .then(|| CitedFact {
            statement: format!("{g} admits no 2-splitting by [-0,{k_plus}]* with {n} elements"),
            reference:
                "earlier exhaustive computer search over the non-elementary groups of order 243",
        })
}
