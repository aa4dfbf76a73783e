//! Scenario files, the task runner, the corpus driver and report rendering.

mod props;
mod run;
mod scenario;

pub use props::{plane, random_linear_matrix, random_poly, run_properties, PropertyOutcome, PROPERTIES};
pub use run::{
    exit_code, render_corpus, render_scenario, render_task, run_corpus, run_file, run_scenario, CorpusEntry,
    CorpusSummary, ScenarioReport, TaskOutput, TaskReport,
};
pub use scenario::{
    parse_scenario, AssertSpec, BudgetSpec, Context, IdealSpec, MapSpec, ModuleRef, RingSpec, Scenario, Subject, Task,
};
