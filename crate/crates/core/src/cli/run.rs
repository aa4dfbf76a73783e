//! Executing scenarios and rendering their reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use super::scenario::{parse_scenario, BudgetSpec, Context, ModuleRef, Scenario, Subject, Task};
use crate::differentials::{critical_module, image_tangent, imperfection, kaehler, relative_kaehler, tangent};
use crate::error::{Error, Result};
use crate::groebner::Budget;
use crate::loci::{branch_scheme, critical_scheme, discriminant, smoothness_locus, LocusKind, LocusReport};
use crate::resolve::{torsion_submodule, PresentedModule};
use crate::verify::{
    check_composition_dci, check_dci, check_duality, check_gamma_zero, check_height_bounds, check_purity_branch,
    check_purity_critical, cutkosky_bound_report, defects, DciMode, DciResult, DefectData, Verdict, VerificationReport,
};

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "output", rename_all = "kebab-case")]
pub enum TaskOutput {
    Locus(LocusReport),
    Verification(VerificationReport),
    Dci { subject: String, global: DciResult, at_origin: Option<DciResult> },
    Defects { ring: String, data: DefectData },
    Torsion { ring: String, element: String, generators: String, cyclic: bool },
    Gb { ideal: String, basis: Vec<String> },
    Error { message: String, indeterminate: bool },
}

#[derive(Clone, Debug, Serialize)]
pub struct TaskReport {
    pub task: String,
    #[serde(flatten)]
    pub output: TaskOutput,
}

impl TaskReport {
    pub fn verdict(&self) -> Option<Verdict> {
        match &self.output {
            TaskOutput::Verification(r) => Some(r.verdict),
            _ => None,
        }
    }

    /// Hard failure, as opposed to an indeterminate outcome.
    pub fn is_error(&self) -> bool {
        matches!(self.output, TaskOutput::Error { indeterminate: false, .. })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub tasks: Vec<TaskReport>,
}

/// Exit codes: 0 clean, 1 usage, parse or task error, 2 a violated verdict.
pub fn exit_code(reports: &[TaskReport]) -> i32 {
    if reports.iter().any(|r| r.verdict() == Some(Verdict::Violated)) {
        2
    } else if reports.iter().any(TaskReport::is_error) {
        1
    } else {
        0
    }
}

impl ScenarioReport {
    pub fn exit_code(&self) -> i32 {
        exit_code(&self.tasks)
    }

    pub fn verdict_counts(&self) -> BTreeMap<Verdict, usize> {
        let mut out = BTreeMap::new();
        for v in self.tasks.iter().filter_map(TaskReport::verdict) {
            *out.entry(v).or_insert(0) += 1;
        }
        out
    }
}

fn module(ctx: &Context, r: &ModuleRef, budget: &Budget) -> Result<PresentedModule> {
    match r {
        ModuleRef::Omega(n) => kaehler(&ctx.rings[n], budget),
        ModuleRef::Tangent(n) => tangent(&ctx.rings[n], budget),
        ModuleRef::RelativeOmega(m) => relative_kaehler(&ctx.maps[m], budget),
        ModuleRef::Critical(m) => critical_module(&ctx.maps[m], budget),
        ModuleRef::TBar(m) => image_tangent(&ctx.maps[m], budget),
        ModuleRef::Gamma(m) => imperfection(&ctx.maps[m], budget),
    }
}

fn dci_both(m: &PresentedModule, budget: &Budget) -> Result<(DciResult, Option<DciResult>)> {
    let global = check_dci(m, DciMode::Global, budget)?;
    let local = if m.base.contains_origin() { Some(check_dci(m, DciMode::AtOrigin, budget)?) } else { None };
    Ok((global, local))
}

fn execute(ctx: &Context, task: &Task, budget: &Budget) -> Result<TaskOutput> {
    let a = &ctx.assertions;
    Ok(match task {
        Task::Branch { map, i } => TaskOutput::Locus(branch_scheme(&ctx.maps[map], *i, budget)?),
        Task::Critical { map, i } => TaskOutput::Locus(critical_scheme(&ctx.maps[map], *i, budget)?),
        Task::Duality { map, imax } => TaskOutput::Verification(check_duality(&ctx.maps[map], *imax, a, budget)?),
        Task::Dci(s) => {
            let m = match s {
                Subject::Ring(r) => kaehler(&ctx.rings[r], budget)?,
                Subject::Map(m) => relative_kaehler(&ctx.maps[m], budget)?,
            };
            let (global, at_origin) = dci_both(&m, budget)?;
            TaskOutput::Dci { subject: s.name().to_string(), global, at_origin }
        }
        Task::Gamma(m) => TaskOutput::Verification(check_gamma_zero(&ctx.maps[m], a, budget)?),
        Task::Heights(r) => {
            TaskOutput::Verification(check_height_bounds(&r.to_string(), &module(ctx, r, budget)?, budget)?)
        }
        Task::PurityCritical(m) => TaskOutput::Verification(check_purity_critical(&ctx.maps[m], a, budget)?),
        Task::PurityBranch { map, imax } => {
            TaskOutput::Verification(check_purity_branch(&ctx.maps[map], *imax, a, budget)?)
        }
        Task::Discriminant(m) => {
            let m = &ctx.maps[m];
            let d = discriminant(m, budget)?;
            TaskOutput::Locus(LocusReport::new(LocusKind::Discriminant, 0, &m.source, &d, budget)?)
        }
        Task::Cutkosky(m) => TaskOutput::Verification(cutkosky_bound_report(&ctx.maps[m], a, budget)?),
        Task::Composition(m) => TaskOutput::Verification(check_composition_dci(&ctx.maps[m], a, budget)?),
        Task::Defects(r) => TaskOutput::Defects { ring: r.clone(), data: defects(&ctx.rings[r], budget)? },
        Task::Smoothness(r) => {
            let base = &ctx.rings[r];
            let dim = base.dim(budget)?.max(0) as usize;
            TaskOutput::Locus(smoothness_locus(base, dim, budget)?)
        }
        Task::Torsion { ring, element } => {
            let t = torsion_submodule(&kaehler(&ctx.rings[ring], budget)?, element, budget)?;
            let gens = t.embedding.clone().expect("torsion generators are embedded");
            TaskOutput::Torsion {
                ring: ring.clone(),
                element: element.to_string(),
                generators: gens.to_string(),
                cyclic: t.rank <= 1,
            }
        }
        Task::Gb(n) => {
            let ideal = match ctx.ideals.get(n) {
                Some((_, i)) => i.clone(),
                None => ctx.rings[n].ideal.clone(),
            };
            TaskOutput::Gb { ideal: n.clone(), basis: ideal.gb(budget)?.canonical_strings() }
        }
    })
}

/// Runs the tasks in order; errors become entries of the report.
pub fn run_scenario(name: &str, s: &Scenario, budget: &BudgetSpec) -> Result<ScenarioReport> {
    let budget = s.budget.overridden(budget);
    let ctx = s.context(&budget.budget())?;
    let mut tasks = Vec::new();
    for t in &s.tasks {
        let output = execute(&ctx, t, &budget.budget())
            .unwrap_or_else(|e| TaskOutput::Error { message: e.to_string(), indeterminate: e.is_indeterminate() });
        tasks.push(TaskReport { task: t.to_string(), output });
    }
    Ok(ScenarioReport { scenario: name.to_string(), tasks })
}

pub fn run_file(path: &Path, budget: &BudgetSpec) -> Result<ScenarioReport> {
    let src = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let s = parse_scenario(&src)?;
    run_scenario(&path.display().to_string(), &s, budget)
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub file: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<ScenarioReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusSummary {
    pub scenarios: Vec<CorpusEntry>,
    pub verdicts: BTreeMap<Verdict, usize>,
    pub errors: usize,
}

impl CorpusSummary {
    pub fn exit_code(&self) -> i32 {
        if self.verdicts.get(&Verdict::Violated).copied().unwrap_or(0) > 0 {
            2
        } else if self.errors > 0 {
            1
        } else {
            0
        }
    }
}

/// Runs every `.plc` file of `dir` in parallel; output order follows file names.
pub fn run_corpus(dir: &Path, budget: &BudgetSpec) -> Result<CorpusSummary> {
    let rd = std::fs::read_dir(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> =
        rd.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.extension().is_some_and(|x| x == "plc")).collect();
    files.sort();
    let scenarios: Vec<CorpusEntry> = files
        .par_iter()
        .map(|f| {
            let file = f.file_name().map_or_else(|| f.display().to_string(), |n| n.to_string_lossy().into_owned());
            match run_file(f, budget) {
                Ok(mut r) => {
                    r.scenario = file.clone();
                    CorpusEntry { file, error: None, report: Some(r) }
                }
                Err(e) => CorpusEntry { file, error: Some(e.to_string()), report: None },
            }
        })
        .collect();
    let mut verdicts = BTreeMap::new();
    let mut errors = 0;
    for s in &scenarios {
        match &s.report {
            Some(r) => {
                for (v, n) in r.verdict_counts() {
                    *verdicts.entry(v).or_insert(0) += n;
                }
                errors += r.tasks.iter().filter(|t| t.is_error()).count();
            }
            None => errors += 1,
        }
    }
    Ok(CorpusSummary { scenarios, verdicts, errors })
}

fn opt(v: Option<i64>) -> String {
    v.map_or_else(|| "-".to_string(), |n| n.to_string())
}

fn render_locus(out: &mut String, r: &LocusReport) {
    let c = &r.codim;
    let _ = writeln!(out, "  ideal: ({})", r.generators.join(", "));
    if r.empty {
        let _ = writeln!(out, "  empty");
        return;
    }
    let cert = if c.certified { "certified" } else { "uncertified" };
    let _ = writeln!(out, "  codim-: {}  codim+: {} ({cert})", opt(c.codim_lower), opt(c.codim_upper));
    if let Some(rad) = &c.radical {
        let _ = writeln!(out, "  radical: ({})", rad.join(", "));
    }
    for comp in &c.components {
        let prime = if comp.prime { "prime" } else { "not certified prime" };
        let _ = writeln!(out, "  component ({}): codim {}, {prime}", comp.ideal.join(", "), comp.codim);
    }
}

fn render_dci(out: &mut String, label: &str, d: &DciResult) {
    let _ = write!(out, "  {label}: {}", d.answer);
    if let Some(b) = &d.betti {
        let _ = write!(out, "  betti {b:?}");
    }
    let _ = writeln!(out, "  ({})", d.witness);
}

fn render_verification(out: &mut String, r: &VerificationReport) {
    let _ = writeln!(out, "  {} for {}: {}", r.theorem, r.subject, r.verdict);
    for h in &r.hypotheses {
        let _ = write!(out, "    hypothesis {}: {}", h.name, h.status);
        match &h.detail {
            Some(d) => {
                let _ = writeln!(out, " ({d})");
            }
            None => out.push('\n'),
        }
    }
    for c in &r.clauses {
        let _ = write!(out, "    [{}] {}: {} {} {} ({})", c.verdict, c.name, c.lhs, c.relation, c.rhs, c.form);
        for h in &c.hypotheses {
            let _ = write!(out, "; {}: {}", h.name, h.status);
        }
        if let Some(n) = &c.note {
            let _ = write!(out, "; {n}");
        }
        out.push('\n');
    }
}

pub fn render_task(out: &mut String, t: &TaskReport) {
    let _ = writeln!(out, "task {}", t.task);
    match &t.output {
        TaskOutput::Locus(r) => render_locus(out, r),
        TaskOutput::Verification(r) => render_verification(out, r),
        TaskOutput::Dci { subject, global, at_origin } => {
            let _ = writeln!(out, "  d.c.i. of {subject}");
            render_dci(out, "global", global);
            if let Some(l) = at_origin {
                render_dci(out, "at origin", l);
            }
        }
        TaskOutput::Defects { ring, data } => {
            let _ = writeln!(out, "  {ring}: ed {}, d {}, delta {}, eta {}", data.ed, data.d, data.delta, data.eta);
        }
        TaskOutput::Torsion { ring, element, generators, cyclic } => {
            let _ = writeln!(
                out,
                "  {element}-torsion of Omega_{ring}: {generators}{}",
                if *cyclic { " (cyclic)" } else { "" }
            );
        }
        TaskOutput::Gb { ideal, basis } => {
            let _ = writeln!(out, "  {ideal}: ({})", basis.join(", "));
        }
        TaskOutput::Error { message, indeterminate } => {
            let kind = if *indeterminate { "indeterminate" } else { "error" };
            let _ = writeln!(out, "  {kind}: {message}");
        }
    }
}

pub fn render_scenario(r: &ScenarioReport) -> String {
    let mut out = format!("scenario {}\n", r.scenario);
    for t in &r.tasks {
        render_task(&mut out, t);
    }
    out
}

pub fn render_corpus(s: &CorpusSummary) -> String {
    let mut out = String::new();
    for e in &s.scenarios {
        match (&e.report, &e.error) {
            (Some(r), _) => {
                let counts: Vec<String> = r.verdict_counts().iter().map(|(v, n)| format!("{v} {n}")).collect();
                let errs = r.tasks.iter().filter(|t| t.is_error()).count();
                let errs = if errs > 0 { format!(", errors {errs}") } else { String::new() };
                let _ = writeln!(out, "{}: {} tasks; {}{errs}", e.file, r.tasks.len(), counts.join(", "));
            }
            (None, Some(err)) => {
                let _ = writeln!(out, "{}: ERROR {err}", e.file);
            }
            (None, None) => {}
        }
    }
    let counts: Vec<String> = s.verdicts.iter().map(|(v, n)| format!("{v} {n}")).collect();
    let _ = writeln!(out, "total: {} scenarios; {}; errors {}", s.scenarios.len(), counts.join(", "), s.errors);
    out
}
