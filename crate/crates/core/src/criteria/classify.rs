//! Group-by-group classification of lattice tilings by `B(n,2,k+,0)` for
//! `k+` in `{1, 2}`.

use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use super::facts::{
    cited_group_nonexistence, cited_semicross_t2, perfect_code_exists, PERFECT_CODE_REFERENCE,
};
use super::predicates::{order2_check, order3_check, Check, Scope, Source};
use super::{Status, Verdict, Witness};
use crate::abelian::{groups_of_order, AbelianGroup};
use crate::ball::BallParams;
use crate::codes::builtin_perfect_code;
use crate::error::{Error, Result};
use crate::lattice::lattice_from_code;
use crate::search::{search_splitting, SearchOptions, SearchProblem, SearchStatus, Tier};
use crate::splitting::{splitting_to_lattice, tiling_to_splitting, CoefficientSet, SplitterSet};

pub const PERFECT_CODE_CLASSIFICATION: &str = "perfect-code-classification";
pub const KNOWN_NONEXISTENCE: &str = "known-nonexistence";
pub const EXHAUSTIVE_SEARCH: &str = "exhaustive-search";

/// Knobs for the per-group searches.
#[derive(Debug, Clone, Default)]
pub struct ClassifyOptions {
    pub tier: Tier,
    pub jobs: usize,
    /// One checkpoint file per searched group is kept here.
    pub checkpoint_dir: Option<PathBuf>,
    pub node_budget: Option<u64>,
}

/// How one candidate group was settled.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Resolution {
    /// An order-counting lemma rules the group out.
    LemmaRejected { check: Check },
    /// Elementary abelian: the splitting would be a perfect code.
    PerfectCode { exists: bool },
    Searched {
        status: SearchStatus,
        nodes_explored: u64,
    },
    Cited {
        statement: String,
        reference: String,
    },
    /// Not admitted by the tier and not covered by a cited result.
    Unresolved { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupFinding {
    pub group: AbelianGroup,
    pub resolution: Resolution,
    pub witness: Option<SplitterSet>,
}

impl GroupFinding {
    /// The group cannot carry the splitting.
    pub fn rejected(&self) -> bool {
        match &self.resolution {
            Resolution::LemmaRejected { .. } | Resolution::Cited { .. } => true,
            Resolution::PerfectCode { exists } => !exists,
            Resolution::Searched { status, .. } => *status == SearchStatus::ExhaustedNone,
            Resolution::Unresolved { .. } => false,
        }
    }
}

/// The two families with a complete classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `B(n,2,1,0)`
    B210,
    /// `B(n,2,2,0)`
    B220,
}

impl Family {
    pub fn k_plus(self) -> u32 {
        match self {
            Family::B210 => 1,
            Family::B220 => 2,
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "b210" => Ok(Family::B210),
            "b220" => Ok(Family::B220),
            _ => Err(Error::Precondition(format!(
                "unknown family {s:?}, expected b210 or b220"
            ))),
        }
    }
}

/// Classifies `B(n,2,1,0)` with default options.
pub fn classify_n_2_1_0(n: usize) -> Result<Verdict> {
    classify_semicross_t2(n, 1, &ClassifyOptions::default())
}

/// Classifies `B(n,2,2,0)` with default options.
pub fn classify_n_2_2_0(n: usize) -> Result<Verdict> {
    classify_semicross_t2(n, 2, &ClassifyOptions::default())
}

/// Runs the pipeline over every abelian group of order `|B(n,2,k+,0)|`:
/// order-counting lemma, perfect-code table for elementary abelian groups of
/// exponent `k+ + 1`, exhaustive search where the tier allows, cited results
/// otherwise.
pub fn classify_semicross_t2(n: usize, k_plus: u32, opts: &ClassifyOptions) -> Result<Verdict> {
    if !(1..=2).contains(&k_plus) {
        return Err(Error::Precondition(format!(
            "classification covers k+ in {{1,2}}, got {k_plus}"
        )));
    }
    if n < 3 {
        return Err(Error::Precondition(format!(
            "classification needs n >= 3, got {n}"
        )));
    }
    let params = BallParams::new(n, 2, k_plus, 0)?;
    let order = params.size_u64()?;
    let p = u64::from(k_plus) + 1;
    let coeffs = CoefficientSet::new(k_plus, 0)?;

    let mut findings = Vec::new();
    let mut triggers = Vec::new();
    for g in groups_of_order(order)? {
        let finding = classify_group(&params, &g, p, coeffs, opts)?;
        if let Some(check) = rejection_trigger(&finding) {
            triggers.push(check);
        }
        findings.push(finding);
    }
    let cited = cited_semicross_t2(n, k_plus);
    if let Some(fact) = &cited {
        triggers.push(cited_check(
            KNOWN_NONEXISTENCE,
            fact.statement.clone(),
            fact.reference,
        ));
    }

    let witness = findings
        .iter()
        .find_map(|f| f.witness.clone())
        .map(|sp| -> Result<Witness> {
            let lattice = splitting_to_lattice(&sp)?;
            Ok(Witness {
                construction: format!("splitting of {}", sp.group()),
                splitter: sp,
                lattice,
            })
        })
        .transpose()?;
    let status = if witness.is_some() {
        Status::ExistsWithWitness
    } else if findings.iter().all(GroupFinding::rejected) {
        Status::BlockedLattice
    } else {
        Status::NecessaryConditionsPass
    };
    if status == Status::ExistsWithWitness && cited.is_some() {
        return Err(Error::Inconsistent(format!(
            "{params}: witness found against a cited nonexistence result"
        )));
    }
    Ok(Verdict {
        params,
        status,
        triggers,
        groups: findings,
        witness,
    })
}

fn classify_group(
    params: &BallParams,
    g: &AbelianGroup,
    p: u64,
    coeffs: CoefficientSet,
    opts: &ClassifyOptions,
) -> Result<GroupFinding> {
    let n = params.n;
    let done = |resolution| {
        Ok(GroupFinding {
            group: g.clone(),
            resolution,
            witness: None,
        })
    };

    let lemma = if p == 2 {
        order2_check(g, n)
    } else {
        order3_check(g, n)
    };
    if lemma.blocks {
        return done(Resolution::LemmaRejected { check: lemma });
    }

    if g.elementary_prime() == Some(p) {
        let exists = perfect_code_exists(p, n, params.t);
        let witness = if exists {
            let code = builtin_perfect_code(p, n, params.t).ok_or_else(|| {
                Error::Inconsistent(format!(
                    "no construction for the perfect code of length {n} over F_{p}"
                ))
            })?;
            let sp = tiling_to_splitting(params, &lattice_from_code(&code)?)?;
            if !sp.group().is_isomorphic(g) {
                return Err(Error::Inconsistent(format!(
                    "code lattice has quotient {}, expected {g}",
                    sp.group()
                )));
            }
            Some(sp)
        } else {
            None
        };
        return Ok(GroupFinding {
            group: g.clone(),
            resolution: Resolution::PerfectCode { exists },
            witness,
        });
    }

    if opts.tier.admits(g) {
        let checkpoint = opts
            .checkpoint_dir
            .as_ref()
            .map(|d| d.join(format!("{}.json", checkpoint_name(params, g))));
        let options = SearchOptions {
            jobs: opts.jobs.max(1),
            node_budget: opts.node_budget,
            checkpoint,
            ..SearchOptions::default()
        };
        let prob = SearchProblem::new(g.clone(), coeffs, params.t, n)?.with_options(options);
        let out = search_splitting(&prob)?;
        return Ok(GroupFinding {
            group: g.clone(),
            resolution: Resolution::Searched {
                status: out.status,
                nodes_explored: out.nodes_explored,
            },
            witness: out.witness,
        });
    }

    if let Some(fact) = cited_group_nonexistence(n, params.k_plus, g) {
        return done(Resolution::Cited {
            statement: fact.statement,
            reference: fact.reference.to_string(),
        });
    }
    done(Resolution::Unresolved {
        reason: format!("{g} needs the extended tier"),
    })
}

fn checkpoint_name(params: &BallParams, g: &AbelianGroup) -> String {
    let orders: Vec<String> = g.orders().iter().map(u64::to_string).collect();
    format!(
        "n{}-t{}-kp{}-g{}",
        params.n,
        params.t,
        params.k_plus,
        orders.join("x")
    )
}

fn cited_check(id: &str, statement: String, reference: &str) -> Check {
    Check {
        id: id.into(),
        scope: Scope::Lattice,
        source: Source::Cited,
        applicable: true,
        blocks: true,
        statement: format!("{statement} ({reference})"),
    }
}

fn rejection_trigger(f: &GroupFinding) -> Option<Check> {
    match &f.resolution {
        Resolution::LemmaRejected { check } => Some(check.clone()),
        Resolution::PerfectCode { exists: false } => Some(cited_check(
            PERFECT_CODE_CLASSIFICATION,
            format!("{} would need a perfect code that does not exist", f.group),
            PERFECT_CODE_REFERENCE,
        )),
        Resolution::Searched {
            status: SearchStatus::ExhaustedNone,
            nodes_explored,
        } => Some(Check {
            id: EXHAUSTIVE_SEARCH.into(),
            scope: Scope::Lattice,
            source: Source::Computed,
            applicable: true,
            blocks: true,
            statement: format!("{}: no splitter set after {nodes_explored} nodes", f.group),
        }),
        Resolution::Cited {
            statement,
            reference,
        } => Some(cited_check(
            KNOWN_NONEXISTENCE,
            statement.clone(),
            reference,
        )),
        _ => None,
    }
}

/// Classification of one family for `n = 3..=n_max`.
pub fn classification_table(
    family: Family,
    n_max: usize,
    opts: &ClassifyOptions,
) -> Result<Vec<Verdict>> {
    (3..=n_max)
        .map(|n| classify_semicross_t2(n, family.k_plus(), opts))
        .collect()
}
