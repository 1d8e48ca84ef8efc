//! Reference computations with a pass/fail line each.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::Serialize;

use tiling_forge_core::ball::enumerate_ball;
use tiling_forge_core::codes::{
    certify_perfect, golay_binary, golay_ternary, hamming_code, repetition_code,
};
use tiling_forge_core::criteria::{classification_table, report_all, ClassifyOptions, Family};
use tiling_forge_core::lattice::{extract_code, lattice_from_code};
use tiling_forge_core::search::{search_splitting, SearchProblem, SearchStatus};
use tiling_forge_core::splitting::verify_lattice_tiling;
use tiling_forge_core::{
    verify_splitting, AbelianGroup, BallParams, CoefficientSet, LinearCode, SplitMode, SplitterSet,
};

use crate::{emit, Ctx};

#[derive(Serialize)]
struct Row {
    id: &'static str,
    pass: bool,
    seconds: f64,
    detail: String,
}

type Check = fn(&Ctx) -> anyhow::Result<(bool, String)>;

const CHECKS: &[(&str, Check)] = &[
    ("ball-counts", ball_counts),
    ("known-splittings", known_splittings),
    ("construction-pipeline", construction_pipeline),
    ("dual-extraction", dual_extraction),
    ("search-reproductions", search_reproductions),
    ("classification-b210", classification_b210),
    ("classification-b220", classification_b220),
    ("predicate-sweep", predicate_sweep),
];

pub fn run(ctx: &Ctx, only: &[String]) -> anyhow::Result<u8> {
    if let Some(bad) = only.iter().find(|o| !CHECKS.iter().any(|(id, _)| id == o)) {
        anyhow::bail!("unknown check {bad:?}");
    }
    let mut rows = Vec::new();
    for (id, check) in CHECKS {
        if !only.is_empty() && !only.iter().any(|o| o == id) {
            continue;
        }
        let start = Instant::now();
        let (pass, detail) = check(ctx).unwrap_or_else(|e| (false, format!("error: {e:#}")));
        rows.push(Row {
            id,
            pass,
            seconds: start.elapsed().as_secs_f64(),
            detail,
        });
    }
    let all = rows.iter().all(|r| r.pass);
    emit(ctx, &rows, || {
        rows.iter()
            .map(|r| {
                let mark = if r.pass { "PASS" } else { "FAIL" };
                format!("{mark}  {:<24} {:>8.2}s  {}\n", r.id, r.seconds, r.detail)
            })
            .collect()
    })?;
    Ok(if all { 0 } else { 1 })
}

fn ball_counts(_: &Ctx) -> anyhow::Result<(bool, String)> {
    let size = |n, t, kp, km| BallParams::new(n, t, kp, km).map(|p| p.size());
    let mut ok = size(3, 2, 1, 0)? == 7u32.into()
        && size(5, 2, 1, 0)? == 16u32.into()
        && size(11, 2, 2, 0)? == 243u32.into();
    for n in 2..=50usize {
        ok &= size(n, 2, 2, 0)? == (2 * n * n + 1).into();
    }
    let mut cases = 0;
    for n in 1..=6 {
        for t in 1..=n {
            for kp in 0..=3 {
                for km in 0..=kp {
                    let p = BallParams::new(n, t, kp, km)?;
                    ok &= enumerate_ball(&p)?.len() as u64 == p.size_u64()?;
                    cases += 1;
                }
            }
        }
    }
    Ok((ok, format!("closed forms and {cases} enumerations")))
}

fn known_splittings(_: &Ctx) -> anyhow::Result<(bool, String)> {
    let z7 = SplitterSet::from_coords(
        AbelianGroup::cyclic(7)?,
        &[vec![1], vec![2], vec![4]],
        1,
        0,
        2,
    )?;
    let z19 = SplitterSet::from_coords(
        AbelianGroup::cyclic(19)?,
        &[vec![1], vec![11], vec![7]],
        2,
        0,
        2,
    )?;
    let a = verify_splitting(&z7, SplitMode::Full)?.valid;
    let b = verify_splitting(&z19, SplitMode::Full)?.valid;
    Ok((a && b, format!("Z7 {{1,2,4}}: {a}, Z19 {{1,11,7}}: {b}")))
}

fn constructions() -> anyhow::Result<Vec<(LinearCode, Vec<BallParams>)>> {
    let mut out = Vec::new();
    for t in 1..=4 {
        out.push((
            repetition_code(t)?,
            vec![BallParams::new(2 * t + 1, t, 1, 0)?],
        ));
    }
    out.push((
        hamming_code(3, 2)?,
        vec![BallParams::new(4, 1, 2, 0)?, BallParams::new(4, 1, 1, 1)?],
    ));
    out.push((
        golay_ternary(),
        vec![BallParams::new(11, 2, 2, 0)?, BallParams::new(11, 2, 1, 1)?],
    ));
    out.push((golay_binary(), vec![BallParams::new(23, 3, 1, 0)?]));
    Ok(out)
}

fn construction_pipeline(_: &Ctx) -> anyhow::Result<(bool, String)> {
    let mut ok = true;
    let mut count = 0;
    for (code, balls) in constructions()? {
        let l = lattice_from_code(&code)?;
        for p in balls {
            ok &= verify_lattice_tiling(&p, &l)?;
            count += 1;
        }
    }
    let golay = lattice_from_code(&golay_binary())?.quotient_group()?;
    ok &= golay.group.order() == 2048;
    Ok((ok, format!("{count} code lattices tile")))
}

fn dual_extraction(_: &Ctx) -> anyhow::Result<(bool, String)> {
    let mut ok = true;
    for (code, balls) in constructions()? {
        let back = extract_code(&lattice_from_code(&code)?, code.p())?;
        let a: BTreeSet<_> = code.codewords()?.into_iter().collect();
        let b: BTreeSet<_> = back.codewords()?.into_iter().collect();
        let t = balls[0].t;
        ok &= a == b && certify_perfect(&back, t)?.is_perfect_for_t == Some(t);
    }
    Ok((ok, "codeword sets recovered and certified".into()))
}

fn search_reproductions(ctx: &Ctx) -> anyhow::Result<(bool, String)> {
    let cases: [(&[u64], u32, usize, SearchStatus); 5] = [
        (&[7], 1, 3, SearchStatus::Found),
        (&[4, 2, 2], 1, 5, SearchStatus::ExhaustedNone),
        (&[16], 1, 5, SearchStatus::ExhaustedNone),
        (&[51], 2, 5, SearchStatus::ExhaustedNone),
        (&[73], 2, 6, SearchStatus::ExhaustedNone),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (orders, kp, n, expect) in cases {
        let mut prob = SearchProblem::new(
            AbelianGroup::new(orders.to_vec())?,
            CoefficientSet::new(kp, 0)?,
            2,
            n,
        )?;
        prob.options.jobs = ctx.jobs;
        let out = search_splitting(&prob)?;
        ok &= out.status == expect;
        parts.push(format!("{orders:?}: {:?}", out.status));
    }
    Ok((ok, parts.join(", ")))
}

fn classification(
    ctx: &Ctx,
    family: Family,
    n_max: usize,
    expect: &[usize],
) -> anyhow::Result<(bool, String)> {
    let opts = ClassifyOptions {
        tier: ctx.tier,
        jobs: ctx.jobs,
        ..ClassifyOptions::default()
    };
    let rows = classification_table(family, n_max, &opts)?;
    let exists: Vec<usize> = rows
        .iter()
        .filter(|v| v.exists())
        .map(|v| v.params.n)
        .collect();
    let open: Vec<usize> = rows
        .iter()
        .filter(|v| !v.exists() && !v.blocked())
        .map(|v| v.params.n)
        .collect();
    let ok = exists == expect && open.is_empty();
    Ok((ok, format!("exists at {exists:?}, unresolved at {open:?}")))
}

fn classification_b210(ctx: &Ctx) -> anyhow::Result<(bool, String)> {
    classification(ctx, Family::B210, 20, &[3, 5])
}

fn classification_b220(ctx: &Ctx) -> anyhow::Result<(bool, String)> {
    classification(ctx, Family::B220, 16, &[3, 11])
}

fn predicate_sweep(_: &Ctx) -> anyhow::Result<(bool, String)> {
    let mut cases = 0;
    for n in 1..=8 {
        for t in 1..=n {
            for kp in 0..=4 {
                for km in 0..=kp {
                    let v = report_all(&BallParams::new(n, t, kp, km)?)?;
                    if v.exists() && !v.triggers.is_empty() {
                        return Ok((false, format!("{}: witness and blocking check", v.params)));
                    }
                    cases += 1;
                }
            }
        }
    }
    for (_, balls) in constructions()? {
        for p in balls {
            let v = report_all(&p)?;
            if !v.triggers.is_empty() {
                return Ok((false, format!("{p} is blocked by {}", v.triggers[0].id)));
            }
        }
    }
    Ok((true, format!("{cases} parameter sets consistent")))
}
