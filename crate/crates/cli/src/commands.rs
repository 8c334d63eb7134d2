//! Argument definitions and the four verbs.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nonclassical::entpot::{entanglement_potential, pt_spectrum, EPResult};
use nonclassical::states::{low_t_trace_defect, Family, LowTOrder, StateSpec, SweepParam};
use nonclassical::wigner::{default_grid, evaluate_field, ClosedForms, Evaluator, PhaseGrid, WignerField};
use thiserror::Error;

use crate::output::{emit, num, Table};
use crate::ranges::{parse_grid_axis, Axis, Sweep};
use crate::spec_parse::{parse_state_spec, SpecError};
use crate::svg;
use crate::validate;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Core(#[from] nonclassical::Error),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{failed} of {total} validation checks failed")]
    ValidationFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::ValidationFailed { .. } => 1,
            CliError::Core(e) | CliError::Spec(SpecError::Domain(e)) if e.is_numerical() => 3,
            CliError::Core(nonclassical::Error::NotHermitian(_)) => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "nonclassical", version, about = "Wigner functions and entanglement potential of photon-added states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Wigner function on a phase-space grid
    Wigner(WignerArgs),
    /// Entanglement potential, optionally swept over one parameter
    Ep(EpArgs),
    /// Partial-transpose spectrum after mixing with vacuum
    Spectrum(SpectrumArgs),
    /// Run every acceptance check and write a report
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvaluatorArg {
    Closed,
    Numeric,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
    Both,
}

impl Format {
    fn extensions(self) -> &'static [&'static str] {
        match self {
            Format::Csv => &["csv"],
            Format::Svg => &["svg"],
            Format::Both => &["csv", "svg"],
        }
    }
}

#[derive(Debug, Args)]
pub struct WignerArgs {
    /// State, e.g. "pacs:alpha=0.9,m=1"
    pub spec: String,
    /// q and p axes as min:max:count each
    #[arg(long, num_args = 2, value_names = ["Q", "P"], allow_hyphen_values = true, value_parser = parse_grid_axis)]
    pub grid: Option<Vec<Axis>>,
    #[arg(long, value_enum, default_value_t = EvaluatorArg::Numeric)]
    pub evaluator: EvaluatorArg,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Fock truncation override
    #[arg(long)]
    pub dim: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EpArgs {
    /// State or template, e.g. "pacs:m=1"
    pub spec: String,
    /// param=min:max:count with param one of alpha, x, m
    #[arg(long)]
    pub sweep: Option<Sweep>,
    /// Exact photon-added thermal EP next to both low-temperature approximants
    #[arg(long)]
    pub compare_orders: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub dim: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    pub spec: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub dim: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Wigner(a) => cmd_wigner(&a),
        Command::Ep(a) => cmd_ep(&a),
        Command::Spectrum(a) => cmd_spectrum(&a),
        Command::Validate(a) => cmd_validate(&a, &ClosedForms::default()),
    }
}

fn load_spec(text: &str, dim: Option<usize>) -> Result<StateSpec, CliError> {
    let spec = parse_state_spec(text)?;
    Ok(match dim {
        Some(d) => spec.with_dim(Some(d))?,
        None => spec,
    })
}

fn write(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    emit(path, bytes).map_err(|source| CliError::Io {
        path: path.map_or("standard output".into(), |p| p.display().to_string()),
        source,
    })
}

/// Target paths for `tags × extensions` outputs. A single output goes to
/// `--out` verbatim, or to standard output. Several outputs need files:
/// `<base>[.<tag>].<ext>`, with `<base>` taken from `--out` or `default_base`.
fn plan_outputs(out: Option<&Path>, default_base: &str, tags: &[&str], exts: &[&str]) -> Vec<Option<PathBuf>> {
    if tags.len() * exts.len() == 1 {
        return vec![out.map(Path::to_path_buf)];
    }
    let base = out.map_or_else(|| PathBuf::from(default_base), |p| p.with_extension(""));
    let mut paths = Vec::new();
    for tag in tags {
        for ext in exts {
            let mut name = base.as_os_str().to_os_string();
            if tags.len() > 1 {
                name.push(format!(".{tag}"));
            }
            name.push(format!(".{ext}"));
            paths.push(Some(PathBuf::from(name)));
        }
    }
    paths
}

fn announce(path: &Option<PathBuf>) {
    if let Some(p) = path {
        eprintln!("wrote {}", p.display());
    }
}

pub fn field_csv(field: &WignerField) -> Vec<u8> {
    let mut t = Table::new(&["q", "p", "w"]).expect("in-memory writer");
    for ((q, p), w) in field.grid.points().zip(&field.values) {
        t.numbers(&[q, p, *w]).expect("in-memory writer");
    }
    t.into_bytes()
}

pub fn cmd_wigner(a: &WignerArgs) -> Result<(), CliError> {
    let spec = load_spec(&a.spec, a.dim)?;
    let grid = match &a.grid {
        Some(axes) => PhaseGrid::new(axes[0].min, axes[0].max, axes[0].count, axes[1].min, axes[1].max, axes[1].count)?,
        None => default_grid(&spec)?,
    };
    let evaluators: &[Evaluator] = match a.evaluator {
        EvaluatorArg::Closed => &[Evaluator::Closed],
        EvaluatorArg::Numeric => &[Evaluator::Numeric],
        EvaluatorArg::Both => &[Evaluator::Closed, Evaluator::Numeric],
    };
    if a.evaluator != EvaluatorArg::Numeric && !nonclassical::wigner::has_closed_form(&spec) {
        return Err(nonclassical::Error::UnsupportedClosedForm(spec.kind().to_string()).into());
    }
    let fields: Vec<WignerField> =
        evaluators.iter().map(|&e| evaluate_field(&spec, &grid, e)).collect::<Result<_, _>>()?;

    let tags: Vec<&str> = evaluators.iter().map(|e| e.name()).collect();
    let exts = a.format.extensions();
    let paths = plan_outputs(a.out.as_deref(), "wigner", &tags, exts);
    let mut k = 0;
    for field in &fields {
        for ext in exts {
            let bytes = if *ext == "csv" { field_csv(field) } else { svg::heatmap(field).into_bytes() };
            write(paths[k].as_deref(), &bytes)?;
            announce(&paths[k]);
            k += 1;
        }
    }
    if let [closed, numeric] = &fields[..] {
        println!("max_abs_diff,{}", num(closed.max_abs_diff(numeric)?));
    }
    Ok(())
}

/// Value reported in the `param` column when no sweep is given.
fn natural_param(spec: &StateSpec) -> f64 {
    match spec.family {
        Family::Fock { n } => n as f64,
        Family::Coherent { alpha } => alpha.norm(),
        Family::Pacs { alpha, .. } => alpha.norm(),
        Family::Thermal { x } | Family::PaThermal { x } | Family::PaThermalLowT { x, .. } => x,
    }
}

fn ep_of(spec: &StateSpec) -> Result<EPResult, CliError> {
    Ok(entanglement_potential(&spec.density()?)?)
}

pub fn cmd_ep(a: &EpArgs) -> Result<(), CliError> {
    let template = load_spec(&a.spec, a.dim)?;
    // every point is range-checked before any computation
    let points: Vec<(f64, StateSpec)> = match &a.sweep {
        Some(s) => s
            .axis
            .values()
            .into_iter()
            .map(|v| Ok((v, template.with_param(s.param, v)?)))
            .collect::<Result<_, nonclassical::Error>>()?,
        None => vec![(natural_param(&template), template)],
    };
    let param_name = a.sweep.map_or("param", |s| s.param.name());

    let (csv, plot) = if a.compare_orders {
        compare_orders(&points, a)?
    } else {
        let mut t = Table::new(&["param", "negativity", "trace_norm", "ep_bits"]).expect("in-memory writer");
        let mut line = Vec::new();
        for (v, spec) in &points {
            let r = ep_of(spec)?;
            t.numbers(&[*v, r.negativity, r.trace_norm, r.ep_bits]).expect("in-memory writer");
            line.push((*v, r.ep_bits));
        }
        let plot = svg::line_plot(
            &format!("EP  {template}"),
            param_name,
            "EP (bits)",
            &[svg::Series { name: template.kind(), points: line }],
        );
        (t.into_bytes(), plot)
    };

    let exts = a.format.extensions();
    let paths = plan_outputs(a.out.as_deref(), "ep", &["ep"], exts);
    for (path, ext) in paths.iter().zip(exts) {
        let bytes = if *ext == "csv" { csv.clone() } else { plot.clone().into_bytes() };
        write(path.as_deref(), &bytes)?;
        announce(path);
    }
    Ok(())
}

fn compare_orders(points: &[(f64, StateSpec)], a: &EpArgs) -> Result<(Vec<u8>, String), CliError> {
    let mut plans = Vec::new();
    for (v, spec) in points {
        let x = match spec.family {
            Family::PaThermal { x } | Family::PaThermalLowT { x, .. } => x,
            _ => return Err(CliError::Usage("--compare-orders needs a pa_thermal state".into())),
        };
        let exact = StateSpec::new(Family::PaThermal { x })?.with_dim(spec.dim)?;
        let o1 = StateSpec::new(Family::PaThermalLowT { x, order: LowTOrder::First })?.with_dim(spec.dim)?;
        let o2 = StateSpec::new(Family::PaThermalLowT { x, order: LowTOrder::Second })?.with_dim(spec.dim)?;
        plans.push((*v, x, exact, o1, o2));
    }
    if a.sweep.is_some_and(|s| s.param != SweepParam::X) {
        return Err(CliError::Usage("--compare-orders sweeps x only".into()));
    }
    let mut t = Table::new(&["param", "exact", "order1", "order2", "defect"]).expect("in-memory writer");
    let mut series = [Vec::new(), Vec::new(), Vec::new()];
    for (v, x, exact, o1, o2) in &plans {
        let e = [ep_of(exact)?.ep_bits, ep_of(o1)?.ep_bits, ep_of(o2)?.ep_bits];
        t.numbers(&[*v, e[0], e[1], e[2], low_t_trace_defect(*x, LowTOrder::Second)]).expect("in-memory writer");
        for k in 0..3 {
            series[k].push((*v, e[k]));
        }
    }
    let [exact, order1, order2] = series;
    let plot = svg::line_plot(
        "EP of the photon-added thermal state",
        "x",
        "EP (bits)",
        &[
            svg::Series { name: "exact", points: exact },
            svg::Series { name: "order 1", points: order1 },
            svg::Series { name: "order 2", points: order2 },
        ],
    );
    Ok((t.into_bytes(), plot))
}

pub fn cmd_spectrum(a: &SpectrumArgs) -> Result<(), CliError> {
    let spec = load_spec(&a.spec, a.dim)?;
    let s = pt_spectrum(&spec.density()?)?;
    let mut t = Table::new(&["index", "eigenvalue"]).expect("in-memory writer");
    for (k, v) in s.eigenvalues.iter().enumerate() {
        t.row([k.to_string(), num(*v)]).expect("in-memory writer");
    }
    t.row(["negativity".to_string(), num(s.negativity())]).expect("in-memory writer");
    write(a.out.as_deref(), &t.into_bytes())
}

pub fn cmd_validate(a: &ValidateArgs, forms: &ClosedForms) -> Result<(), CliError> {
    let checks = validate::run_checks(forms)?;
    write(a.out.as_deref(), &validate::report(&checks))?;
    let failed: Vec<&validate::Check> = checks.iter().filter(|c| !c.pass()).collect();
    for c in &failed {
        eprintln!("FAIL {}: actual {} target {} tolerance {}", c.name, num(c.actual), num(c.target), num(c.tolerance));
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::ValidationFailed { failed: failed.len(), total: checks.len() })
    }
}
