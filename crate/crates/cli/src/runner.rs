//! Executes workspace tasks and assembles the run report.

use crate::report::{Report, TaskReport, TaskStatus};
use crate::workspace::{ResolvedWorkspace, TaskKind};
use corings::adjunction::AdjunctionContext;
use corings::bimodule::Bimodule;
use corings::comodule::ComatrixComodules;
use corings::coring::{check_coring_axioms, ComatrixCoring, SweedlerCoring};
use corings::correspondence::{
    coring_endomorphisms, f_left, fixed_elements, hat_map, table_morphisms,
};
use corings::endo::EndoRing;
use corings::error::Error;
use corings::fixtures::all_fixtures;
use corings::separability::{check_hypotheses, Freeness};
use corings::subbimodule::{enumerate_inv, membership_left};
use corings::verify::{verify_adjunction, verify_theorems};
use std::time::Instant;

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub budget: u64,
    pub fail_fast: bool,
    pub seed_check: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            budget: 1_000_000,
            fail_fast: false,
            seed_check: false,
        }
    }
}

struct TaskResult {
    status: TaskStatus,
    witness: Option<String>,
    details: Vec<(String, String)>,
    budget_used: u64,
}

impl TaskResult {
    fn pass() -> TaskResult {
        TaskResult {
            status: TaskStatus::Pass,
            witness: None,
            details: Vec::new(),
            budget_used: 0,
        }
    }

    fn fail(witness: impl Into<String>) -> TaskResult {
        TaskResult {
            status: TaskStatus::Fail,
            witness: Some(witness.into()),
            details: Vec::new(),
            budget_used: 0,
        }
    }

    fn detail(mut self, key: impl Into<String>, value: impl std::fmt::Display) -> TaskResult {
        self.details.push((key.into(), value.to_string()));
        self
    }
}

/// Runs every task in order; budget overruns mark the run with exit code 3.
pub fn run_workspace(ws: &ResolvedWorkspace, opts: &RunOptions) -> Report {
    let mut tasks = Vec::new();
    let mut budget_exceeded = false;
    if opts.seed_check {
        let start = Instant::now();
        let result = seed_check(opts.budget);
        tasks.push(finish("seed-check(fixtures)", result, start, &mut budget_exceeded));
    }
    for task in &ws.tasks {
        let label = format!("{}({})", task.kind.name(), task.arg);
        let start = Instant::now();
        let result = run_task(ws, task.kind, &task.arg, opts.budget);
        let report = finish(&label, result, start, &mut budget_exceeded);
        let stop = opts.fail_fast && report.status != TaskStatus::Pass;
        tasks.push(report);
        if stop {
            break;
        }
    }
    Report::new(tasks, budget_exceeded)
}

fn finish(
    label: &str,
    result: Result<TaskResult, Error>,
    start: Instant,
    budget_exceeded: &mut bool,
) -> TaskReport {
    let elapsed_ms = start.elapsed().as_millis();
    match result {
        Ok(r) => TaskReport {
            task: label.to_string(),
            status: r.status,
            witness: r.witness,
            details: r.details,
            budget_used: r.budget_used,
            elapsed_ms,
        },
        Err(Error::BudgetExceeded { required, budget }) => {
            *budget_exceeded = true;
            TaskReport {
                task: label.to_string(),
                status: TaskStatus::Unverified,
                witness: Some(format!(
                    "budget exceeded: needs {required} candidates, budget is {budget}"
                )),
                details: Vec::new(),
                budget_used: budget,
                elapsed_ms,
            }
        }
        Err(e) => TaskReport {
            task: label.to_string(),
            status: TaskStatus::Fail,
            witness: Some(e.to_string()),
            details: Vec::new(),
            budget_used: 0,
            elapsed_ms,
        },
    }
}

fn get_bimodule<'a>(ws: &'a ResolvedWorkspace, name: &str) -> Result<&'a Bimodule, Error> {
    ws.bimodules
        .get(name)
        .ok_or_else(|| Error::Invalid(format!("no bimodule named {name}")))
}

/// Validates the referenced objects before a computation task touches them.
fn validated_bimodule<'a>(
    ws: &'a ResolvedWorkspace,
    name: &str,
) -> Result<Result<&'a Bimodule, TaskResult>, Error> {
    let sigma = get_bimodule(ws, name)?;
    for (label, report) in [
        ("left algebra", sigma.left.validate()),
        ("right algebra", sigma.right.validate()),
        ("bimodule", sigma.validate()),
    ] {
        if !report.ok() {
            let v = &report.violations[0];
            return Ok(Err(TaskResult::fail(format!(
                "{label} axioms fail: {} at {}",
                v.law, v.witness
            ))));
        }
    }
    Ok(Ok(sigma))
}

fn run_task(
    ws: &ResolvedWorkspace,
    kind: TaskKind,
    arg: &str,
    budget: u64,
) -> Result<TaskResult, Error> {
    match kind {
        TaskKind::Validate => run_validate(ws, arg),
        TaskKind::Coring => {
            let sigma = match validated_bimodule(ws, arg)? {
                Ok(s) => s,
                Err(r) => return Ok(r),
            };
            run_coring(sigma)
        }
        TaskKind::Endos => {
            let sigma = match validated_bimodule(ws, arg)? {
                Ok(s) => s,
                Err(r) => return Ok(r),
            };
            run_endos(sigma, budget)
        }
        TaskKind::Inv => {
            let sigma = match validated_bimodule(ws, arg)? {
                Ok(s) => s,
                Err(r) => return Ok(r),
            };
            run_inv(sigma, budget)
        }
        TaskKind::Gamma => {
            let sigma = match validated_bimodule(ws, arg)? {
                Ok(s) => s,
                Err(r) => return Ok(r),
            };
            run_gamma(sigma, budget)
        }
        TaskKind::Hat => {
            let sigma = match validated_bimodule(ws, arg)? {
                Ok(s) => s,
                Err(r) => return Ok(r),
            };
            run_hat(sigma, budget)
        }
        TaskKind::Separability => {
            let sigma = match validated_bimodule(ws, arg)? {
                Ok(s) => s,
                Err(r) => return Ok(r),
            };
            run_separability(sigma, budget)
        }
        TaskKind::Adjunction => {
            let sigma = match validated_bimodule(ws, arg)? {
                Ok(s) => s,
                Err(r) => return Ok(r),
            };
            run_adjunction(sigma, budget)
        }
        TaskKind::Theorems => {
            let sigma = match validated_bimodule(ws, arg)? {
                Ok(s) => s,
                Err(r) => return Ok(r),
            };
            run_theorems(sigma, budget)
        }
    }
}

fn run_validate(ws: &ResolvedWorkspace, arg: &str) -> Result<TaskResult, Error> {
    if let Some(a) = ws.algebras.get(arg) {
        let report = a.validate();
        if report.ok() {
            return Ok(TaskResult::pass().detail("dimension", a.dim));
        }
        let v = &report.violations[0];
        return Ok(
            TaskResult::fail(format!("{} at {}", v.law, v.witness))
                .detail("violations", report.violations.len()),
        );
    }
    let sigma = get_bimodule(ws, arg)?;
    let mut all = Vec::new();
    for (label, report) in [
        ("left algebra", sigma.left.validate()),
        ("right algebra", sigma.right.validate()),
        ("bimodule", sigma.validate()),
    ] {
        for v in &report.violations {
            all.push(format!("{label}: {} at {}", v.law, v.witness));
        }
    }
    if all.is_empty() {
        Ok(TaskResult::pass()
            .detail("dimension", sigma.dim)
            .detail("left algebra dimension", sigma.left.dim)
            .detail("right algebra dimension", sigma.right.dim))
    } else {
        Ok(TaskResult::fail(all.join("; ")).detail("violations", all.len()))
    }
}

fn run_coring(sigma: &Bimodule) -> Result<TaskResult, Error> {
    let cm = ComatrixCoring::from_bimodule(sigma)?;
    let axioms = check_coring_axioms(&cm.coring)?;
    let sweedler = SweedlerCoring::of_endo_ring(&cm.ctx.endo)?;
    let sw_axioms = check_coring_axioms(&sweedler.coring)?;
    let mut result = if axioms.ok() && sw_axioms.ok() {
        TaskResult::pass()
    } else {
        let v = axioms
            .violations
            .first()
            .or(sw_axioms.violations.first())
            .expect("some violation");
        TaskResult::fail(format!("{} at {}", v.law, v.witness))
    };
    result = result
        .detail("comatrix coring dimension", cm.coring.dim())
        .detail("sweedler coring dimension", sweedler.coring.dim())
        .detail("endomorphism ring dimension", cm.ctx.endo.dim())
        .detail("dual basis size", cm.ctx.dual_basis.len())
        .detail(
            "extension faithful",
            cm.ctx.endo.extension.injective,
        );
    Ok(result)
}

fn run_endos(sigma: &Bimodule, budget: u64) -> Result<TaskResult, Error> {
    let cm = ComatrixCoring::from_bimodule(sigma)?;
    let table = coring_endomorphisms(&cm.coring, budget)?;
    let units = table.units();
    let rows: Vec<String> = table
        .table
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    Ok(TaskResult {
        budget_used: table.len() as u64,
        ..TaskResult::pass()
    }
    .detail("endomorphism monoid size", table.len())
    .detail("automorphism group size", units.len())
    .detail("commutative", table.is_commutative())
    .detail("composition table", rows.join(" | ")))
}

fn run_inv(sigma: &Bimodule, budget: u64) -> Result<TaskResult, Error> {
    let endo = EndoRing::new(sigma)?;
    let inv = enumerate_inv(&endo, budget)?;
    let rows: Vec<String> = inv
        .invertible
        .table
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    let dims: Vec<String> = inv
        .invertible
        .elements
        .iter()
        .map(|i| i.dim().to_string())
        .collect();
    Ok(TaskResult {
        budget_used: inv.all.len() as u64,
        ..TaskResult::pass()
    }
    .detail("sub-bimodule count", inv.all.len())
    .detail("left-sided count", inv.left.len())
    .detail("right-sided count", inv.right.len())
    .detail("invertible group order", inv.invertible.len())
    .detail("commutative", inv.invertible.is_commutative())
    .detail("element dimensions", dims.join(" "))
    .detail("group table", rows.join(" | ")))
}

fn run_gamma(sigma: &Bimodule, budget: u64) -> Result<TaskResult, Error> {
    let bundle = ComatrixComodules::from_bimodule(sigma)?;
    let endo = &bundle.cm.ctx.endo;
    let table = coring_endomorphisms(&bundle.cm.coring, budget)?;
    let endos = table_morphisms(&bundle.cm.coring, &table)?;
    let inv = enumerate_inv(endo, budget)?;
    let mut pairs = Vec::new();
    for (k, g) in endos.iter().enumerate() {
        let image = f_left(&bundle, g)?;
        let Some(pos) = inv.left.iter().position(|i| *i == image) else {
            return Ok(TaskResult::fail(format!(
                "endomorphism {k} maps outside the left-sided monoid"
            )));
        };
        let cert = membership_left(endo, &image)?
            .ok_or_else(|| Error::NoCertificate(format!("image of endomorphism {k}")))?;
        let back = corings::correspondence::gamma_left(&bundle, &cert)?;
        if back.matrix != g.matrix {
            return Ok(TaskResult::fail(format!(
                "round trip fails at endomorphism {k}"
            )));
        }
        pairs.push(format!("g{k}<->I{pos}"));
    }
    Ok(TaskResult {
        budget_used: (table.len() + inv.all.len()) as u64,
        ..TaskResult::pass()
    }
    .detail("endomorphism count", endos.len())
    .detail("left-sided count", inv.left.len())
    .detail("correspondence", pairs.join(" ")))
}

fn run_hat(sigma: &Bimodule, budget: u64) -> Result<TaskResult, Error> {
    let bundle = ComatrixComodules::from_bimodule(sigma)?;
    let endo = &bundle.cm.ctx.endo;
    let sweedler = SweedlerCoring::of_endo_ring(endo)?;
    let table = coring_endomorphisms(&bundle.cm.coring, budget)?;
    let endos = table_morphisms(&bundle.cm.coring, &table)?;
    let mut hats = Vec::new();
    for g in &endos {
        hats.push(hat_map(&bundle, &sweedler, g)?);
    }
    for a in 0..hats.len() {
        for b in a + 1..hats.len() {
            if hats[a].matrix == hats[b].matrix {
                return Ok(TaskResult::fail(format!(
                    "hat map is not injective: endomorphisms {a} and {b}"
                )));
            }
        }
    }
    for (k, g) in endos.iter().enumerate() {
        let fixed = fixed_elements(&bundle, &sweedler, &hats[k])?;
        let fl = f_left(&bundle, g)?;
        if fixed != fl {
            return Ok(TaskResult::fail(format!(
                "fixed elements differ from F_l at endomorphism {k}"
            )));
        }
    }
    Ok(TaskResult {
        budget_used: table.len() as u64,
        ..TaskResult::pass()
    }
    .detail("endomorphism count", endos.len())
    .detail("injective", true)
    .detail("fixed elements match F_l", true))
}

fn run_separability(sigma: &Bimodule, budget: u64) -> Result<TaskResult, Error> {
    let rep = check_hypotheses(sigma, budget)?;
    let free_text = |f: &Freeness| match f {
        Freeness::Free { basis } => format!("free of rank {}", basis.len()),
        Freeness::NotFree { reason } => format!("not free ({reason})"),
        Freeness::Unverified { reason } => format!("unverified ({reason})"),
    };
    let mut result = TaskResult::pass()
        .detail("faithful", rep.faithful)
        .detail("separable", rep.separable.is_some())
        .detail("split extension", rep.split.is_some())
        .detail("left module over B", free_text(&rep.sigma_left_free))
        .detail("right dual over B", free_text(&rep.dual_right_free))
        .detail("hypothesis verified", rep.hypothesis_verified)
        .detail("summary", rep.summary.clone());
    if let Some(w) = &rep.separable {
        result = result.detail("separability section", &w.section);
    }
    if let Some(alpha) = &rep.split {
        result = result.detail("splitting map", alpha);
    }
    if !rep.hypothesis_verified {
        result.status = TaskStatus::Unverified;
        result.witness = Some(rep.summary);
    }
    Ok(result)
}

fn run_adjunction(sigma: &Bimodule, budget: u64) -> Result<TaskResult, Error> {
    // Build eagerly so invariant violations surface as failures.
    let _ctx = AdjunctionContext::from_bimodule(sigma)?;
    let rep = verify_adjunction(sigma, budget)?;
    let mut result = if rep.passed() {
        TaskResult::pass()
    } else {
        TaskResult::fail("adjunction bijection or naturality failed")
    };
    result = result
        .detail("comodule pairs checked", rep.pairs)
        .detail("hom dimensions match", rep.dimension_matches)
        .detail("mutually inverse", rep.all_mutually_inverse)
        .detail("naturality", rep.naturality)
        .detail("unit identifications", rep.unit_identifications);
    Ok(result)
}

fn run_theorems(sigma: &Bimodule, budget: u64) -> Result<TaskResult, Error> {
    let report = verify_theorems(sigma, budget)?;
    let mut result = if report.passed() {
        TaskResult::pass()
    } else {
        let failed = report
            .checks
            .iter()
            .find(|c| !c.pass)
            .expect("failed check exists");
        TaskResult::fail(format!(
            "{}: {}",
            failed.name,
            failed.witness.as_deref().unwrap_or("")
        ))
    };
    result.budget_used = report.budget_used;
    result = result
        .detail("endomorphism monoid size", report.end_size)
        .detail("automorphism group size", report.aut_size)
        .detail("left-sided monoid size", report.il_size)
        .detail("right-sided monoid size", report.ir_size)
        .detail("invertible group order", report.inv_size)
        .detail("invertible group commutative", report.inv_commutative)
        .detail("hypotheses", report.hypotheses.summary.clone());
    let table: Vec<String> = report
        .inv_table
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    result = result.detail("invertible group table", table.join(" | "));
    let pairing: Vec<String> = report
        .aut_to_inv
        .iter()
        .map(|(a, i)| format!("g{a}<->I{i}"))
        .collect();
    result = result.detail("automorphism pairing", pairing.join(" "));
    for check in &report.checks {
        result = result.detail(
            format!("check {}", check.name),
            if check.pass { "pass" } else { "fail" },
        );
    }
    Ok(result)
}

fn seed_check(budget: u64) -> Result<TaskResult, Error> {
    let mut lines = Vec::new();
    let mut ok = true;
    for fixture in all_fixtures() {
        for r in fixture.rederive(budget)? {
            let good = r.ok();
            ok &= good;
            lines.push(format!(
                "{} / {}: frozen {} recomputed {}{}",
                fixture.name,
                r.name,
                r.frozen,
                r.recomputed,
                if good { "" } else { " MISMATCH" }
            ));
        }
    }
    let mut result = if ok {
        TaskResult::pass()
    } else {
        TaskResult::fail("a fixture oracle disagrees with its frozen value")
    };
    for line in lines {
        result = result.detail("oracle", line);
    }
    Ok(result)
}
