//! Subcommand implementations. Each returns the text to emit.

use std::collections::BTreeMap;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;

use rindler_twist_core::spectra::{PhysParams, QuadConfig, SpectrumPoint, SpectrumSeries, TwistedMode};
use rindler_twist_core::star::commutator_table;
use rindler_twist_core::twist::{build_twist, rindler_metric};
use rindler_twist_core::verify::{assemble_report, battery_plan, run_check, BatteryConfig, VerificationReport};
use rindler_twist_core::{BiOp, Chart, DeformSymbol, DeformValues, TwistCase};

use crate::cli::{CommutatorsArgs, DataFormat, DumpTwistArgs, SpectrumArgs, TableFormat, VerifyArgs};
use crate::format::{
    spectrum_csv, to_json, CheckOutput, CommutatorEntry, CommutatorsOutput, MetricOutput, Num, OperatorOutput,
    ParamsOutput, SpectrumOutput, SpectrumRow, TwistOutput, VerifyOutput,
};

fn indices(case: &TwistCase) -> [u8; 3] {
    let (i, k, l) = case.indices();
    [i, k, l]
}

pub fn commutators(args: &CommutatorsArgs, case: &TwistCase) -> Result<String> {
    let chart: Chart = args.chart.into();
    let table = commutator_table(case, chart, args.order)?;
    if args.format == TableFormat::Table {
        let names = match chart {
            Chart::Minkowski => ["x₀", "x₁", "x₂", "x₃"],
            Chart::Rindler => ["z₀", "z₁", "z₂", "z₃"],
        };
        let mut out = format!("{case} · {chart} · N = {}\n", args.order);
        for (mu, nu, e) in table.entries() {
            let value = if e.is_zero() { "0".to_string() } else { e.to_pretty() };
            out.push_str(&format!(
                "[{}, {}]⋆ = {value}\n",
                names[mu as usize], names[nu as usize]
            ));
        }
        return Ok(out);
    }
    let out = CommutatorsOutput {
        case: case.kind().as_str().to_string(),
        indices: indices(case),
        chart: chart.as_str().to_string(),
        order: args.order,
        entries: table
            .entries()
            .map(|(mu, nu, e)| CommutatorEntry {
                mu,
                nu,
                expr_text: e.to_ascii(),
            })
            .collect(),
    };
    Ok(to_json(&out)?)
}

pub fn spectrum_params(args: &SpectrumArgs) -> Result<PhysParams> {
    let p = PhysParams::new(args.a, args.omega_hat, args.z)?
        .with_transverse(args.z2, args.z3)
        .with_deform(DeformValues(args.deform.values()));
    p.validate()?;
    Ok(p)
}

pub fn spectrum_grid(args: &SpectrumArgs) -> Result<Vec<f64>> {
    if args.points == 0 {
        bail!("--points must be at least 1");
    }
    if !(args.omega_min.is_finite() && args.omega_max.is_finite()) {
        bail!("--omega-min and --omega-max must be finite");
    }
    if args.omega_min <= 0.0 || args.omega_max <= 0.0 {
        bail!(
            "the frequency grid [{}, {}] must be strictly positive: the base spectrum diverges at omega = 0 \
             and is defined for omega > 0 only",
            args.omega_min,
            args.omega_max
        );
    }
    if args.omega_max < args.omega_min {
        bail!(
            "--omega-max ({}) is below --omega-min ({})",
            args.omega_max,
            args.omega_min
        );
    }
    Ok(SpectrumSeries::linear_grid(args.omega_min, args.omega_max, args.points))
}

/// Evaluate the grid in parallel; points come back in grid order.
pub fn compute_points(case: &TwistCase, params: &PhysParams, grid: &[f64]) -> Result<Vec<SpectrumPoint>> {
    let mode = TwistedMode::new(case, params)?;
    let config = QuadConfig::default();
    grid.par_iter()
        .map(|&w| {
            mode.point(w, &config)
                .with_context(|| format!("spectrum at omega = {w}"))
        })
        .collect()
}

pub fn spectrum_rows(points: &[SpectrumPoint]) -> Vec<SpectrumRow> {
    points
        .iter()
        .map(|p| SpectrumRow {
            omega: Num(p.omega),
            base: Num(p.base),
            re_correction: Num(p.correction.re),
            im_correction: Num(p.correction.im),
            corrected: Num(p.corrected),
            paper_magnitude: Num(p.paper_magnitude),
            magnitude_rel_dev: Num(p.magnitude_rel_dev),
            sign_agrees: p.sign_agrees,
            oracle_residual: Num(p.oracle_residual),
        })
        .collect()
}

fn params_output(p: &PhysParams) -> ParamsOutput {
    let deformation: BTreeMap<String, Num> = DeformSymbol::all()
        .into_iter()
        .map(|s| (s.ascii_name().to_string(), Num(p.deform.0[s.index()])))
        .collect();
    ParamsOutput {
        a: Num(p.a),
        temperature: Num(p.temperature()),
        omega_hat: Num(p.omega_hat),
        z: Num(p.z),
        z2: Num(p.z2),
        z3: Num(p.z3),
        deformation,
    }
}

pub fn spectrum(args: &SpectrumArgs, case: &TwistCase) -> Result<(String, Vec<SpectrumPoint>)> {
    let params = spectrum_params(args)?;
    let grid = spectrum_grid(args)?;
    let points = compute_points(case, &params, &grid)?;
    let rows = spectrum_rows(&points);
    let text = match args.format {
        DataFormat::Csv => spectrum_csv(&rows)?,
        DataFormat::Json => to_json(&SpectrumOutput {
            case: case.kind().as_str().to_string(),
            indices: indices(case),
            params: params_output(&params),
            points: rows,
        })?,
    };
    Ok((text, points))
}

fn operator(op: &BiOp) -> OperatorOutput {
    OperatorOutput {
        terms: op.len(),
        text: op.to_ascii(),
    }
}

pub fn dump_twist(args: &DumpTwistArgs, case: &TwistCase) -> Result<String> {
    let chart: Chart = args.chart.into();
    let f = build_twist(case, chart, args.order)?;
    Ok(to_json(&TwistOutput {
        case: case.kind().as_str().to_string(),
        indices: indices(case),
        chart: chart.as_str().to_string(),
        order: args.order,
        log: operator(&f.log),
        factor: operator(&f.factor),
        inverse: operator(&f.inverse),
    })?)
}

pub fn metric() -> Result<String> {
    let r = rindler_metric();
    Ok(to_json(&MetricOutput {
        chart: Chart::Rindler.as_str().to_string(),
        metric: r.metric.map(|row| row.map(|e| e.to_ascii())),
        g00_alternative: r.g00_alternative.to_ascii(),
        g00_matches_alternative: r.g00_matches_alternative,
        g00_deviation: r.g00_deviation.to_ascii(),
    })?)
}

/// Run the battery with one rayon task per planned check.
pub fn run_verify(config: &BatteryConfig) -> Result<VerificationReport> {
    let plan = battery_plan(config.order)?;
    let chunks = plan
        .par_iter()
        .map(|spec| run_check(spec, config).with_context(|| format!("running {spec:?}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble_report(chunks.into_iter().flatten().collect(), config.seed))
}

/// Returns the rendered report and whether every check passed.
pub fn verify(args: &VerifyArgs) -> Result<(String, bool)> {
    let config = BatteryConfig {
        order: args.order,
        seed: args.seed,
        samples: args.samples,
    };
    let report = run_verify(&config)?;
    let ok = report.all_passed();
    let text = if args.json {
        to_json(&VerifyOutput {
            seed: report.seed,
            order: args.order,
            all_passed: ok,
            checks: report
                .checks
                .iter()
                .map(|c| CheckOutput {
                    name: c.name.clone(),
                    config: c.config.clone(),
                    status: if c.passed { "PASS" } else { "FAIL" }.to_string(),
                    residual: c.residual.clone(),
                })
                .collect(),
        })?
    } else {
        let mut out = String::new();
        for c in &report.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {} [{}]", c.name, c.config));
            if !c.passed {
                out.push_str(&format!(" residual: {}", c.residual));
            }
            out.push('\n');
        }
        let failed = report.failures().count();
        out.push_str(&format!(
            "{} checks, {} passed, {failed} failed (seed {})\n",
            report.checks.len(),
            report.checks.len() - failed,
            report.seed
        ));
        out
    };
    Ok((text, ok))
}
