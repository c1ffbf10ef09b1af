use std::path::Path;

use facloc::instances::{FamilyKind, RandomFamily};
use facloc::model::outcome_cost;
use facloc::scalar::exact_string;
use facloc::solver::{optimal_with_guard, Ratio};
use facloc::verify::{
    find_group_deviation_with_guard, find_unilateral_deviation, group_search_size, replay_lower_bound,
    sweep_with_guard, LowerBound, MisreportSet, RatioReport,
};
use facloc::{Instance, Mechanism, Objective, Scalar};

use crate::error::{CliError, CliResult};
use crate::file::InstanceFile;
use crate::report::{
    to_json, Bucket, ReplayJson, RunJson, Searched, SelectionJson, SolveJson, SweepSummary, Value, VerifyJson,
    OutcomeJson,
};

pub fn read_instance(path: &Path) -> CliResult<Instance> {
    let text = std::fs::read_to_string(path)?;
    InstanceFile::parse(&text)?.to_instance()
}

pub fn cmd_solve(instance: &Instance, objective: Objective, guard: u64) -> CliResult<String> {
    let opt = optimal_with_guard(instance, objective, guard)?;
    Ok(to_json(&SolveJson {
        objective: objective.to_string(),
        optimal_value: (&opt.value).into(),
        optimal_outcomes: opt.all.iter().map(|s| SelectionJson::new(instance, s)).collect(),
    }))
}

pub fn cmd_run(instance: &Instance, mechanism: &Mechanism, guard: u64) -> CliResult<String> {
    mechanism.check_applicable(instance)?;
    let outcome = mechanism.apply(instance)?;
    let cost_sc = outcome_cost(instance, &outcome, Objective::Social)?;
    let cost_mc = outcome_cost(instance, &outcome, Objective::Maximum)?;
    let optimal_sc = optimal_with_guard(instance, Objective::Social, guard)?.value;
    let optimal_mc = optimal_with_guard(instance, Objective::Maximum, guard)?.value;
    Ok(to_json(&RunJson {
        mechanism: mechanism.to_string(),
        outcome: OutcomeJson::new(instance, &outcome),
        ratio_sc: (&Ratio::of(&cost_sc, &optimal_sc)).into(),
        ratio_mc: (&Ratio::of(&cost_mc, &optimal_mc)).into(),
        cost_sc: (&cost_sc).into(),
        cost_mc: (&cost_mc).into(),
        optimal_sc: (&optimal_sc).into(),
        optimal_mc: (&optimal_mc).into(),
    }))
}

/// `group_max == 1` runs the unilateral search.
pub fn cmd_verify(
    instance: &Instance,
    mechanism: &Mechanism,
    group_max: usize,
    grid: usize,
    guard: u64,
) -> CliResult<String> {
    mechanism.check_applicable(instance)?;
    let set = MisreportSet::new(instance, grid);
    let witness = if group_max == 1 {
        find_unilateral_deviation(instance, mechanism, &set)?
    } else {
        find_group_deviation_with_guard(instance, mechanism, &set, group_max, guard)?
    };
    let searched = Searched {
        mechanism: mechanism.to_string(),
        max_coalition: group_max,
        grid,
        reports_per_agent: set.len(),
        evaluations: group_search_size(instance.agent_count(), set.len(), group_max).to_string(),
    };
    Ok(to_json(&VerifyJson::new(instance, witness.as_ref(), searched)))
}

pub const CSV_HEADER: &str = "index,n,m,k,mech_cost,opt_cost,ratio";

/// CSV body with a `max` footer row (`n/a` for an empty sweep).
pub fn sweep_csv(report: &RatioReport) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.index,
            row.agents,
            row.candidates,
            row.facilities,
            exact_string(&row.mechanism_cost),
            exact_string(&row.optimal_cost),
            row.ratio
        ));
    }
    let max = report
        .max_ratio
        .as_ref()
        .map_or_else(|| "n/a".to_string(), Ratio::exact_string);
    out.push_str(&format!("max,,,,,,{max}\n"));
    out
}

pub fn sweep_summary(report: &RatioReport) -> String {
    let edges = &report.histogram.edges;
    let histogram = edges
        .iter()
        .enumerate()
        .map(|(i, from)| Bucket {
            from: exact_string(from),
            to: edges.get(i + 1).map(exact_string),
            count: report.histogram.counts[i],
        })
        .collect();
    to_json(&SweepSummary {
        mechanism: report.mechanism.clone(),
        objective: report.objective.to_string(),
        family: report.family.clone(),
        count: report.count,
        max_ratio: report.max_ratio.as_ref().map(Value::from),
        argmax: report.argmax,
        histogram,
        unbounded: report.histogram.unbounded,
    })
}

pub fn cmd_sweep(
    family: &RandomFamily,
    mechanism: &Mechanism,
    objective: Objective,
    count: u64,
    guard: u64,
) -> CliResult<RatioReport> {
    if let FamilyKind::MetricClosure { .. } = family.kind {
        if mechanism.requires_line() {
            return Err(CliError::Mismatch(facloc::Error::RequiresLine {
                mechanism: mechanism.to_string(),
            }));
        }
    }
    if mechanism.facilities() != family.facilities {
        return Err(CliError::Mismatch(facloc::Error::FacilityCount {
            mechanism: mechanism.to_string(),
            expected: mechanism.facilities(),
            actual: family.facilities,
        }));
    }
    Ok(sweep_with_guard(family, mechanism, objective, count, guard)?)
}

pub fn cmd_replay(
    construction: LowerBound,
    mechanism: &Mechanism,
    epsilon: &Scalar,
    far_point: Option<&Scalar>,
) -> CliResult<String> {
    let report = replay_lower_bound(construction, mechanism, epsilon, far_point)?;
    Ok(to_json(&ReplayJson::from(&report)))
}
