//! The `fit`, `postopt` and `simulate` commands.

use std::fmt::Write;
use std::fs;
use std::path::Path;

use utastar_core::disagg::{fit, RankingChain, ValueModel};
use utastar_core::postopt::{classical_minmax, CriteriaOrder};
use utastar_core::timeseries::{extract_measures, MeasureTensor};

use crate::config::Settings;
use crate::docs::{to_json, EnsembleDoc, ModelDoc, PostoptDoc, ReportDoc};
use crate::error::{CliError, CliResult};
use crate::input::{load_ranking, load_tensor};
use crate::output::write_all;
use crate::plot;
use crate::simulate::simulate;

/// Loaded and validated inputs of a run.
pub struct Inputs {
    pub measures: MeasureTensor,
    pub ranking: RankingChain,
}

pub fn load_inputs(settings: &Settings) -> CliResult<Inputs> {
    let mut tensor = load_tensor(&settings.tensor)?;
    for (id, direction) in &settings.directions {
        tensor.set_direction(id, *direction)?;
    }
    let ranking = load_ranking(&settings.ranking)?;
    let measures = extract_measures(&tensor, &settings.measures, settings.policy)?;
    Ok(Inputs { measures, ranking })
}

pub fn load_model(path: &Path) -> CliResult<ValueModel> {
    let text = fs::read_to_string(path).map_err(|e| CliError::input(path, e))?;
    let doc: ModelDoc = serde_json::from_str(&text).map_err(|e| CliError::Model {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    doc.to_model()
}

/// Files to write plus a human-readable summary.
pub struct Outcome {
    pub files: Vec<(String, String)>,
    pub summary: String,
}

impl Outcome {
    pub fn write(&self, dir: &Path) -> CliResult<()> {
        write_all(dir, &self.files)
    }
}

fn plots(model: &ValueModel, prefix: &str, raw: bool) -> CliResult<Vec<(String, String)>> {
    let mut files = Vec::new();
    for (k, measure) in model.measures().iter().enumerate() {
        for (j, criterion) in model.criteria().iter().enumerate() {
            let mut function = model.marginal_function(k, j)?;
            let y_label = if raw {
                format!("u_{}{}", k + 1, j + 1)
            } else {
                function = function.normalized();
                format!("u_{}{} / u_{}{}(best)", k + 1, j + 1, k + 1, j + 1)
            };
            let title = format!("{} of {}", measure.id(), criterion.id);
            files.push((
                format!("{prefix}value_k{}_c{}.svg", k + 1, j + 1),
                plot::render(&function, &title, &y_label),
            ));
        }
    }
    Ok(files)
}

pub fn cmd_fit(settings: &Settings) -> CliResult<Outcome> {
    let inputs = load_inputs(settings)?;
    let model = fit(&inputs.measures, &inputs.ranking, &settings.disagg)?;
    let report = ReportDoc::new(&model, &inputs.measures, &inputs.ranking)?;
    let mut files = vec![
        ("model.json".to_string(), to_json(&ModelDoc::new(&model, settings.policy))),
        ("report.json".to_string(), to_json(&report)),
    ];
    if settings.plots {
        files.extend(plots(&model, "", settings.raw_plots)?);
    }

    let mut summary = String::new();
    let _ = writeln!(summary, "z* = {}", report.z);
    for row in &report.weights {
        let _ = writeln!(summary, "  {:<10} {:.6}", row.name, row.value);
    }
    let _ = writeln!(summary, "global values:");
    for row in &report.global_values {
        let _ = writeln!(summary, "  {:<10} {:.6}", row.alternative, row.value);
    }
    let _ = writeln!(summary, "kendall tau = {}", report.kendall_tau.tau);
    Ok(Outcome { files, summary })
}

pub fn cmd_postopt(settings: &Settings) -> CliResult<Outcome> {
    let inputs = load_inputs(settings)?;
    let model = fit(&inputs.measures, &inputs.ranking, &settings.disagg)?;
    let bounds = classical_minmax(&inputs.measures, &inputs.ranking, &settings.disagg, &model)?;
    let doc = PostoptDoc::new(&model, &bounds);

    let mut summary = String::new();
    let _ = writeln!(summary, "z* = {}, error bound {}", doc.z, doc.error_bound);
    let _ = writeln!(summary, "  {:<8} {:<10} {:>10} {:>10} {:>10}", "measure", "criterion", "min", "max", "average");
    for row in &doc.rows {
        let _ = writeln!(
            summary,
            "  {:<8} {:<10} {:>10.6} {:>10.6} {:>10.6}",
            doc.measures[row.measure - 1],
            doc.criteria[row.criterion - 1],
            row.min,
            row.max,
            row.average
        );
    }
    Ok(Outcome {
        files: vec![("postopt.json".to_string(), to_json(&doc))],
        summary,
    })
}

pub fn cmd_simulate(settings: &Settings) -> CliResult<Outcome> {
    let inputs = load_inputs(settings)?;
    let model = fit(&inputs.measures, &inputs.ranking, &settings.disagg)?;
    let order = settings
        .criteria_order
        .as_deref()
        .map(|text| CriteriaOrder::parse(inputs.measures.criteria(), text))
        .transpose()?;
    let ensemble = simulate(
        &inputs.measures,
        &inputs.ranking,
        &settings.disagg,
        &model,
        settings.iterations,
        settings.seed,
        order.as_ref(),
        settings.threads,
    )?;
    let doc = EnsembleDoc::new(&model, &ensemble);
    let mut files = vec![("ensemble.json".to_string(), to_json(&doc))];
    if settings.plots {
        let average = ValueModel::from_weights(
            &inputs.measures,
            ensemble.weighted_average.clone(),
            settings.disagg,
        )?;
        files.extend(plots(&average, "wa_", settings.raw_plots)?);
    }
    Ok(Outcome {
        files,
        summary: ensemble_table(&model, &ensemble),
    })
}

/// Nonzero weights of every distinct solution, one column per solution.
fn ensemble_table(model: &ValueModel, ensemble: &utastar_core::postopt::SolutionEnsemble) -> String {
    let mut out = String::new();
    let _ = write!(out, "{:<10}", "occur.");
    for entry in &ensemble.entries {
        let _ = write!(out, " {:>8}", entry.count);
    }
    let _ = writeln!(out, " {:>8}", "WA");
    for (k, j, l, wa) in ensemble.weighted_average.indexed() {
        let column: Vec<f64> = ensemble.entries.iter().map(|e| e.weights.get(k, j, l)).collect();
        if column.iter().all(|w| *w == 0.0) {
            continue;
        }
        let _ = write!(out, "{:<10}", format!("w_{}_{}_{}", k + 1, j + 1, l + 1));
        for w in column {
            let _ = write!(out, " {:>8.4}", w);
        }
        let _ = writeln!(out, " {:>8.4}", wa);
    }
    let _ = writeln!(out, "classes by criterion totals ({}):", model.criteria().iter().map(|c| c.id.as_str()).collect::<Vec<_>>().join(", "));
    for (totals, count) in ensemble.profile_classes(crate::docs::CLASS_TOLERANCE) {
        let shown: Vec<String> = totals.iter().map(|t| format!("{t:.6}")).collect();
        let _ = writeln!(out, "  {:>6}  ({})", count, shown.join(", "));
    }
    out
}
