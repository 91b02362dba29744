mod table;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use std::path::PathBuf;
use std::process::ExitCode;
use steklov_core::ball_spectrum::{ball_eigenvalue, enumerate_spectrum, mode_profile, ProblemParams};
use steklov_core::geometry_iso::{isoperimetric_report, polygons_from_json, shapes, IsoReport, PlanarPolygon};
use steklov_core::hadamard::{
    criticality_check, hadamard_derivative, scaling_oracle, MultipletSpec, NormalSpeed, Problem,
};
use steklov_core::harmonics::sphere_area;
use steklov_core::radial_solver::concentration_experiment;
use steklov_core::rayleigh::{
    annulus_trial_quotient, equal_measure_outer, rayleigh_quotient, RadialDomain, RadialProfile,
};
use steklov_core::selftest::run_selftest;
use steklov_core::Error;
use table::{Cell, Table};

const OUT_DIR_VAR: &str = "STEKLOV_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "steklov", version, about = "Biharmonic Steklov eigenvalue experiments")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Output file. Defaults to $STEKLOV_OUT_DIR/<command>.<format> when
    /// that variable is set, and to standard output otherwise.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ordered ball spectrum grouped by harmonic order.
    Spectrum(SpectrumArgs),
    /// Radial profiles of ball eigenfunctions sampled on [0, 1].
    Modes(ModesArgs),
    /// Neumann eigenvalues under mass concentration toward the boundary.
    Concentrate(ConcentrateArgs),
    /// Rayleigh quotients of ball modes and of annulus trial functions.
    Rayleigh(RayleighArgs),
    /// Isoperimetric bounds for a batch of polygons.
    Iso(IsoArgs),
    /// Shape derivatives on the disk against the dilation oracle.
    Hadamard(HadamardArgs),
    /// Run the built-in invariant suite.
    Selftest,
}

#[derive(Args, Debug)]
struct Physics {
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..=64))]
    dim: u32,
    #[arg(long, default_value_t = 1.0)]
    tau: f64,
}

impl Physics {
    fn params(&self) -> steklov_core::Result<ProblemParams> {
        ProblemParams::new(self.dim as usize, self.tau)
    }
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct SpectrumArgs {
    #[command(flatten)]
    physics: Physics,
    /// Number of eigenvalues, counted with multiplicity.
    #[arg(long, default_value_t = 10)]
    count: usize,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct ModesArgs {
    #[command(flatten)]
    physics: Physics,
    #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2, 3])]
    l: Vec<usize>,
    /// Sample points per profile, including both ends.
    #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u32).range(2..))]
    samples: u32,
}

#[derive(Clone, Copy, Debug)]
enum Mass {
    Auto,
    Value(f64),
}

fn parse_mass(s: &str) -> Result<Mass, String> {
    if s == "auto" {
        return Ok(Mass::Auto);
    }
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(Mass::Value(v)),
        _ => Err(format!("expected 'auto' or a positive number, got '{s}'")),
    }
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct ConcentrateArgs {
    #[command(flatten)]
    physics: Physics,
    #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2])]
    l: Vec<usize>,
    /// Total mass; 'auto' uses the area of the unit sphere.
    #[arg(long, default_value = "auto", value_parser = parse_mass)]
    mass: Mass,
    #[arg(long, value_delimiter = ',', default_values_t = [0.08, 0.04, 0.02, 0.01])]
    eps: Vec<f64>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct RayleighArgs {
    #[command(flatten)]
    physics: Physics,
    /// Orders of the ball modes to evaluate.
    #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2, 3, 4, 5])]
    l: Vec<usize>,
    /// Inner radii for the equal-measure annulus sweep at τ = 0.
    #[arg(long, value_delimiter = ',')]
    annulus: Vec<f64>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct IsoArgs {
    /// JSON file of polygons; the built-in corpus is used when omitted.
    #[arg(long)]
    polygons: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    tau: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ProblemArg {
    Steklov,
    Neumann,
    Both,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct HadamardArgs {
    #[arg(long, default_value_t = 1.0)]
    tau: f64,
    #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2, 3])]
    l: Vec<usize>,
    /// Orders of the symmetric functions.
    #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2])]
    s: Vec<usize>,
    #[arg(long, value_enum, default_value_t = ProblemArg::Both)]
    problem: ProblemArg,
    /// Step of the central difference in the dilation oracle.
    #[arg(long, default_value_t = 1e-4)]
    step: f64,
}

/// What went wrong, and which exit code it maps to.
enum Failure {
    Usage(String),
    Numerical(Error),
    Io(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(m) | Error::InvalidPolygon(m) => Failure::Usage(m),
            other => Failure::Numerical(other),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<(Table, bool), Failure>;

fn spectrum(a: &SpectrumArgs) -> Outcome {
    let entries = enumerate_spectrum(a.physics.params()?, a.count)?;
    let mut t = Table::new(&["index", "l", "lambda", "multiplicity"]);
    for e in entries {
        t.push(vec![e.first_index.into(), e.l.into(), e.lambda.into(), e.multiplicity.into()]);
    }
    Ok((t, true))
}

fn modes(a: &ModesArgs) -> Outcome {
    let params = a.physics.params()?;
    let mut t = Table::new(&["l", "lambda", "r", "R", "dR", "d2R", "d3R"]);
    let n = a.samples as usize;
    for &l in &a.l {
        let lambda = ball_eigenvalue(params, l)?;
        let mode = mode_profile(params, l)?;
        for i in 0..n {
            let r = i as f64 / (n - 1) as f64;
            let d = mode.derivatives(r)?;
            t.push(vec![l.into(), lambda.into(), r.into(), d[0].into(), d[1].into(), d[2].into(), d[3].into()]);
        }
    }
    Ok((t, true))
}

fn concentrate(a: &ConcentrateArgs) -> Outcome {
    let dim = a.physics.dim as usize;
    let mass = match a.mass {
        Mass::Auto => sphere_area(dim),
        Mass::Value(v) => v,
    };
    let tau = a.physics.tau;
    let tables: Vec<Result<Table, Failure>> = a
        .l
        .par_iter()
        .map(|&l| {
            let rows = concentration_experiment(l, dim, tau, mass, &a.eps)?;
            let mut t = Table::new(&["l", "eps", "lambda", "target", "rel_error"]);
            for r in rows {
                t.push(vec![l.into(), r.eps.into(), r.lambda.into(), r.target.into(), r.rel_error.into()]);
            }
            Ok(t)
        })
        .collect();
    let mut out = Table::new(&["l", "eps", "lambda", "target", "rel_error"]);
    for t in tables {
        out.extend(t?);
    }
    Ok((out, true))
}

const RAYLEIGH_FIELDS: [&str; 9] =
    ["kind", "l", "inner", "outer", "tau", "numerator", "denominator", "quotient", "reference"];

fn rayleigh(a: &RayleighArgs) -> Outcome {
    let params = a.physics.params()?;
    let dim = params.dim;
    let mut t = Table::new(&RAYLEIGH_FIELDS);
    for &l in &a.l {
        let p = RadialProfile::from_ball_mode(mode_profile(params, l)?);
        let q = rayleigh_quotient(&p, l, dim, params.tau, RadialDomain::Ball { radius: 1.0 }, &[1.0])?;
        t.push(vec![
            "ball-mode".into(),
            l.into(),
            0.0.into(),
            1.0.into(),
            params.tau.into(),
            q.numerator.into(),
            q.denominator.into(),
            q.quotient.into(),
            ball_eigenvalue(params, l)?.into(),
        ]);
    }
    if !a.annulus.is_empty() {
        let ball = ball_eigenvalue(ProblemParams::new(dim, 0.0)?, 2)?;
        for &inner in &a.annulus {
            let outer = equal_measure_outer(inner, dim);
            let q = annulus_trial_quotient(inner, outer, dim)?;
            t.push(vec![
                "annulus".into(),
                2usize.into(),
                inner.into(),
                outer.into(),
                0.0.into(),
                q.numerator.into(),
                q.denominator.into(),
                q.quotient.into(),
                ball.into(),
            ]);
        }
    }
    Ok((t, true))
}

fn load_polygons(path: &Option<PathBuf>) -> Result<Vec<(String, PlanarPolygon)>, Failure> {
    match path {
        None => Ok(shapes::corpus()),
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(polygons_from_json(&text)?)
        }
    }
}

fn iso(a: &IsoArgs) -> Outcome {
    let polys = load_polygons(&a.polygons)?;
    let reports: Vec<steklov_core::Result<IsoReport>> =
        polys.par_iter().map(|(_, p)| isoperimetric_report(p, a.tau)).collect();
    let header = format!("name,{}", IsoReport::csv_header());
    let fields: Vec<&str> = header.split(',').collect();
    let mut t = Table::new(&fields);
    for ((name, _), r) in polys.iter().zip(reports) {
        let r = r?;
        let mut row: Vec<Cell> = vec![name.as_str().into()];
        for cell in r.csv_row().split(',') {
            row.push(match cell {
                "true" => true.into(),
                "false" => false.into(),
                v => v.parse::<f64>().unwrap_or(f64::NAN).into(),
            });
        }
        t.push(row);
    }
    Ok((t, true))
}

fn hadamard(a: &HadamardArgs) -> Outcome {
    let problems: &[Problem] = match a.problem {
        ProblemArg::Steklov => &[Problem::Steklov],
        ProblemArg::Neumann => &[Problem::Neumann],
        ProblemArg::Both => &[Problem::Steklov, Problem::Neumann],
    };
    let mut jobs = Vec::new();
    for &p in problems {
        for &l in &a.l {
            for &s in &a.s {
                jobs.push((p, l, s));
            }
        }
    }
    let rows: Vec<Result<Vec<Cell>, Failure>> = jobs
        .par_iter()
        .map(|&(p, l, s)| {
            let m = match p {
                Problem::Steklov => MultipletSpec::steklov(l, a.tau, s)?,
                Problem::Neumann => MultipletSpec::neumann(l, a.tau, s)?,
            };
            let d = hadamard_derivative(&m, &NormalSpeed::constant(1.0), 1.0)?;
            let o = scaling_oracle(&m, a.step)?;
            let crit = criticality_check(&m)?;
            let name = match p {
                Problem::Steklov => "steklov",
                Problem::Neumann => "neumann",
            };
            Ok(vec![
                name.into(),
                l.into(),
                s.into(),
                m.lambda.into(),
                d.into(),
                o.into(),
                ((d - o).abs() / o.abs()).into(),
                crit.into(),
            ])
        })
        .collect();
    let mut t = Table::new(&["problem", "l", "s", "lambda", "derivative", "oracle", "rel_diff", "criticality"]);
    for r in rows {
        t.push(r?);
    }
    Ok((t, true))
}

fn selftest() -> Outcome {
    let checks = run_selftest();
    let all = checks.iter().all(|c| c.passed);
    let mut t = Table::new(&["name", "passed", "detail", "seconds"]);
    for c in checks {
        t.push(vec![c.name.into(), c.passed.into(), c.detail.into(), c.seconds.into()]);
    }
    Ok((t, all))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Spectrum(_) => "spectrum",
        Command::Modes(_) => "modes",
        Command::Concentrate(_) => "concentrate",
        Command::Rayleigh(_) => "rayleigh",
        Command::Iso(_) => "iso",
        Command::Hadamard(_) => "hadamard",
        Command::Selftest => "selftest",
    }
}

fn write_output(cli: &Cli, table: &Table) -> anyhow::Result<()> {
    let text = match cli.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    let path = match (&cli.out, std::env::var_os(OUT_DIR_VAR)) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => {
            let dir = PathBuf::from(dir);
            std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
            Some(dir.join(format!("{}.{}", command_name(&cli.command), cli.format.extension())))
        }
        (None, None) => None,
    };
    match path {
        Some(p) => std::fs::write(&p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Spectrum(a) => spectrum(a),
        Command::Modes(a) => modes(a),
        Command::Concentrate(a) => concentrate(a),
        Command::Rayleigh(a) => rayleigh(a),
        Command::Iso(a) => iso(a),
        Command::Hadamard(a) => hadamard(a),
        Command::Selftest => selftest(),
    };
    let (table, ok) = match result {
        Ok(v) => v,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(1);
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
        Err(Failure::Numerical(e)) => {
            let record = serde_json::json!({
                "command": command_name(&cli.command),
                "error": e.kind(),
                "message": e.to_string(),
            });
            eprintln!("{record}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = write_output(&cli, &table) {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
