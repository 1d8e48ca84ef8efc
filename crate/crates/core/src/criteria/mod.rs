//! Nonexistence criteria, classifications, and the combined verdict for a
//! ball.

pub mod classify;
pub mod facts;
pub mod predicates;

use num_bigint::BigUint;
use serde::Serialize;

use crate::ball::BallParams;
use crate::codes::builtin_perfect_code;
use crate::error::{Error, Result};
use crate::lattice::{lattice_from_code, Lattice};
use crate::splitting::{tiling_to_splitting, SplitterSet};

pub use classify::{
    classification_table, classify_n_2_1_0, classify_n_2_2_0, classify_semicross_t2,
    ClassifyOptions, Family, GroupFinding, Resolution,
};
pub use facts::{perfect_code_exists, AdmissibleLengths, PerfectCodeFact, PERFECT_CODE_FACTS};
pub use predicates::{
    blocks_general_density, blocks_general_equal_arm, blocks_general_midrange,
    blocks_lattice_alpha, blocks_lattice_semicross_large_k, blocks_lattice_semicross_range,
    lattice_necessary_sum, lattice_necessary_sym, lemma_order2_ok, lemma_order3_ok,
    parity_dimension_ok, Check, Scope, Source,
};

/// Largest ball for which a constructed witness is verified before being
/// reported.
pub const WITNESS_VERIFY_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    BlockedGeneral,
    BlockedLattice,
    NecessaryConditionsPass,
    ExistsWithWitness,
}

/// A verified lattice tiling and the splitting it induces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub construction: String,
    pub splitter: SplitterSet,
    pub lattice: Lattice,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub params: BallParams,
    pub status: Status,
    /// The checks that block, with their instantiated inequalities.
    pub triggers: Vec<Check>,
    /// Per-group outcomes, for the classified families only.
    pub groups: Vec<GroupFinding>,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn exists(&self) -> bool {
        self.status == Status::ExistsWithWitness
    }

    pub fn blocked(&self) -> bool {
        matches!(self.status, Status::BlockedGeneral | Status::BlockedLattice)
    }
}

/// Every applicable check for `p`, the classification where one exists, and
/// any witness the built-in constructions give. Existence is only claimed with
/// a verified witness; a witness next to a blocking check is an error.
pub fn report_all(p: &BallParams) -> Result<Verdict> {
    report_all_with(p, &ClassifyOptions::default())
}

pub fn report_all_with(p: &BallParams, opts: &ClassifyOptions) -> Result<Verdict> {
    if p.k_plus == 0 {
        return Ok(Verdict {
            params: *p,
            status: Status::NecessaryConditionsPass,
            triggers: Vec::new(),
            groups: Vec::new(),
            witness: None,
        });
    }
    let mut triggers: Vec<Check> = predicates::all_checks(p)
        .into_iter()
        .filter(|c| c.blocks)
        .collect();
    let mut groups = Vec::new();
    let mut witness = None;

    if p.t == 2 && p.k_minus == 0 && p.k_plus <= 2 && p.n >= 3 {
        let v = classify_semicross_t2(p.n, p.k_plus, opts)?;
        if v.status == Status::BlockedLattice {
            triggers.extend(v.triggers);
        }
        groups = v.groups;
        witness = v.witness;
    }
    if witness.is_none() {
        witness = construct_witness(p)?;
    }

    let general = triggers.iter().any(|c| c.scope == Scope::General);
    if witness.is_some() && !triggers.is_empty() {
        let ids: Vec<&str> = triggers.iter().map(|c| c.id.as_str()).collect();
        return Err(Error::Inconsistent(format!(
            "{p} has a verified tiling but is blocked by {}",
            ids.join(", ")
        )));
    }
    let status = if general {
        Status::BlockedGeneral
    } else if !triggers.is_empty() {
        Status::BlockedLattice
    } else if witness.is_some() {
        Status::ExistsWithWitness
    } else {
        Status::NecessaryConditionsPass
    };
    Ok(Verdict {
        params: *p,
        status,
        triggers,
        groups,
        witness,
    })
}

/// Perfect codes over `F_p` with `p = k+ + k- + 1`, or the box lattice when
/// `t = n`. Verified before it is returned.
fn construct_witness(p: &BallParams) -> Result<Option<Witness>> {
    if p.size() > BigUint::from(WITNESS_VERIFY_CAP) {
        return Ok(None);
    }
    let q = u64::from(p.arm()) + 1;
    let (lattice, construction) = if p.t == p.n {
        (Lattice::scaled_identity(p.n, q)?, format!("{q}Z^{}", p.n))
    } else if let Some(code) = builtin_perfect_code(q, p.n, p.t) {
        (
            lattice_from_code(&code)?,
            format!("perfect [{}, {}] code over F_{q}", code.n(), code.k()),
        )
    } else {
        return Ok(None);
    };
    let splitter = tiling_to_splitting(p, &lattice)?;
    Ok(Some(Witness {
        construction,
        splitter,
        lattice,
    }))
}
