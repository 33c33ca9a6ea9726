use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hyperfilter::algebra::{find_isomorphism, AlgebraTable, BlockKind, GAMMA3, RC, RC_TO_PRINTED};
use hyperfilter::filter::closed_form::{compare, ClosedForm, COEFF_NAMES};
use hyperfilter::filter::{round_trip_residual, Branch, RealTransfer3, Synthesizer};
use hyperfilter::format::{self, report};
use hyperfilter::linalg;
use hyperfilter::optimize::{self, SearchBox, Stage, StageState, StagedConfig};
use hyperfilter::sensitivity::{
    self, FrequencyGrid, Objective, SensitivityConfig, SensitivityMeasure, ZConvention,
};
use hyperfilter::{Error, ErrorClass, Result};

/// Third-order IIR filters as first-order filters over Γ(e,3).
#[derive(Parser, Debug)]
#[command(name = "hyperfilter", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Built-in algebra tables and the Γ(e,3) ≅ R⊕C isomorphism.
    Info,
    /// Realize a filter file over Γ(e,3) and print A, B, C.
    Convert(FilterArgs),
    /// Expanded coefficients and the closed-form comparison report.
    Expand(FilterArgs),
    /// CSV of |H| for both realizations.
    Respond(SweepArgs),
    /// CSV of per-frequency total sensitivity.
    Sens(SensArgs),
    /// CSV of hypercomplex over real sensitivity.
    Ratio(SweepArgs),
    /// Staged minimization of S_RCS over (a3, b2).
    Optimize(OptimizeArgs),
    /// CSV of S_RCS over a lattice of (a3, b2).
    Surface(SurfaceArgs),
}

#[derive(Args, Debug)]
struct FilterArgs {
    /// Filter file with `num = [φ0, φ1, φ2, φ3]` and `den = [ψ1, ψ2, ψ3]`.
    input: PathBuf,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    a3: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    b2: f64,
    /// Sign of c2 in the denominator solution.
    #[arg(long, default_value_t = Branch::Negative)]
    branch: Branch,
}

#[derive(Args, Debug)]
struct GridArgs {
    /// Number of frequency points over [0, 2π], endpoints included.
    #[arg(long, default_value_t = 33)]
    grid: usize,
    #[arg(long, default_value_t = ZConvention::SinCos)]
    z_convention: ZConvention,
    #[arg(long, default_value_t = SensitivityMeasure::ResponseModulus)]
    measure: SensitivityMeasure,
    /// Charge this value for frequencies where sensitivity is undefined
    /// instead of skipping them.
    #[arg(long, allow_hyphen_values = true)]
    penalty: Option<f64>,
}

impl GridArgs {
    fn grid(&self) -> Result<FrequencyGrid> {
        FrequencyGrid::uniform(self.grid, self.z_convention)
    }

    fn config(&self) -> SensitivityConfig {
        SensitivityConfig {
            measure: self.measure,
            penalty: self.penalty,
        }
    }
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    filter: FilterArgs,
    #[command(flatten)]
    grid: GridArgs,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SensArgs {
    #[command(flatten)]
    sweep: SweepArgs,
    /// Report the real seven-coefficient filter instead of the realization.
    #[arg(long)]
    real: bool,
}

#[derive(Args, Debug)]
struct OptimizeArgs {
    /// Filter file.
    input: PathBuf,
    #[arg(long, default_value_t = Branch::Negative)]
    branch: Branch,
    #[command(flatten)]
    grid: GridArgs,
    /// Wide search box `a3lo,a3hi,b2lo,b2hi`.
    #[arg(
        long = "box",
        default_value = "-10,10,-10,10",
        allow_hyphen_values = true
    )]
    bounds: String,
    /// Wide lattice points per axis.
    #[arg(long, default_value_t = 41)]
    resolution: usize,
    /// Narrow lattice points per axis.
    #[arg(long, default_value_t = 31)]
    narrow_resolution: usize,
    /// Prefix for `<out>.wide.csv` and `<out>.narrow.csv`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SurfaceArgs {
    input: PathBuf,
    #[arg(long, default_value_t = Branch::Negative)]
    branch: Branch,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(
        long = "box",
        default_value = "-10,10,-10,10",
        allow_hyphen_values = true
    )]
    bounds: String,
    #[arg(long, default_value_t = 41)]
    resolution: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read_filter(path: &Path) -> Result<RealTransfer3> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    RealTransfer3::parse(&text)
}

fn emit(out: Option<&Path>, data: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, data)
            .map_err(|e| Error::InvalidArgument(format!("{}: {e}", p.display()))),
        None => {
            print!("{data}");
            Ok(())
        }
    }
}

fn vec_str(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| report(*x)).collect();
    format!("({})", parts.join(", "))
}

fn linear_combination(coeffs: &[f64], names: &[&str]) -> String {
    let mut out = String::new();
    for (k, &c) in coeffs.iter().enumerate().filter(|(_, c)| **c != 0.0) {
        let sign = if c < 0.0 { "-" } else { "+" };
        if out.is_empty() {
            out.push_str(if c < 0.0 { "-" } else { "" });
        } else {
            let _ = write!(out, " {sign} ");
        }
        if c.abs() != 1.0 {
            out.push_str(&report(c.abs()));
        }
        out.push_str(names[k]);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Rounds numerical noise below `1e-12` to zero for display.
fn snap(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        0.0
    } else {
        x
    }
}

fn print_table(t: &AlgebraTable, names: &[&str]) {
    println!("{} (dimension {})", t.name(), t.dim());
    for i in 1..t.dim() {
        for j in i..t.dim() {
            println!(
                "  {}·{} = {}",
                names[i],
                names[j],
                linear_combination(t.product(i, j), names)
            );
        }
    }
    println!(
        "  nonzero structure constants: {} (i ≤ j, non-identity), {} (ordered)",
        t.nonzero_constants(),
        t.nonzero_constants_ordered()
    );
    println!(
        "  commutative: {}, associative: {} (max defect {})",
        t.is_commutative(),
        t.is_associative(1e-12),
        report(t.associativity_defect())
    );
}

fn print_matrix(m: &linalg::Mat3) {
    for row in m {
        println!("  [{}]", row.map(|x| report(snap(x))).join(", "));
    }
}

fn cmd_info() -> Result<()> {
    print_table(&GAMMA3, &["e1", "e2", "e3"]);
    println!();
    print_table(&RC, &["1", "E2", "E3"]);
    println!("  basis: 1 = E1 + E2, E2, E3 (E1, E2 real units, E3 imaginary)");
    println!();
    let iso = find_isomorphism(&GAMMA3, &RC)?;
    let block = match iso.block {
        BlockKind::Complex => "complex",
        BlockKind::Split => "split",
        BlockKind::Nilpotent => "nilpotent",
    };
    println!(
        "isomorphism Γ(e,3) → R⊕C ({block} block, homomorphism defect {})",
        report(iso.max_defect)
    );
    println!(
        "  Γ(e,3) idempotent: {}",
        vec_str(&iso.src_idempotent.map(snap))
    );
    println!("columns are images of e1, e2, e3 in the basis (1, E2, E3):");
    print_matrix(&iso.matrix);
    println!("same map in the basis (E1, E2, E3):");
    print_matrix(&linalg::mat_mul(&RC_TO_PRINTED, &iso.matrix));
    Ok(())
}

fn cmd_convert(args: &FilterArgs) -> Result<()> {
    let target = read_filter(&args.input)?;
    let f = Synthesizer::new(&target, args.branch)?.realize(args.a3, args.b2)?;
    println!("A = {}", vec_str(f.a().coeffs()));
    println!("B = {}", vec_str(f.b().coeffs()));
    println!("C = {}", vec_str(f.c().coeffs()));
    println!(
        "round-trip residual = {}",
        report(round_trip_residual(&f, &target))
    );
    Ok(())
}

fn cmd_expand(args: &FilterArgs) -> Result<()> {
    let target = read_filter(&args.input)?;
    let f = Synthesizer::new(&target, args.branch)?.realize(args.a3, args.b2)?;
    let params = f.parameter_array();
    let oracle = f.expand();
    let printed = ClosedForm::printed().evaluate(&params);
    let corrected = ClosedForm::corrected().evaluate(&params);
    let flat = |e: &hyperfilter::filter::ExpandedForm<f64>| -> Vec<f64> {
        e.numerator.iter().chain(&e.denominator).copied().collect()
    };
    let (o, p, c) = (flat(&oracle), flat(&printed), flat(&corrected));
    let t: Vec<f64> = target.num.iter().chain(&target.den).copied().collect();
    println!("coeff  target  algebraic  printed  corrected");
    for k in 0..7 {
        println!(
            "{:<5}  {}  {}  {}  {}",
            COEFF_NAMES[k],
            report(t[k]),
            report(o[k]),
            report(p[k]),
            report(c[k])
        );
    }
    println!();
    let diffs = compare(&ClosedForm::printed(), &ClosedForm::symbolic());
    if diffs.is_empty() {
        println!("printed closed forms agree with the algebraic expansion");
    } else {
        println!("printed closed forms vs algebraic expansion:");
        for d in &diffs {
            println!(
                "  {}: monomial {} has coefficient {} printed, {} algebraic",
                d.coefficient,
                d.monomial,
                report(d.candidate),
                report(d.reference)
            );
        }
    }
    let rest = compare(&ClosedForm::corrected(), &ClosedForm::symbolic());
    println!(
        "corrected closed forms: {} mismatching monomials",
        rest.len()
    );
    Ok(())
}

fn objective(input: &Path, branch: Branch, grid: &GridArgs) -> Result<Objective> {
    let target = read_filter(input)?;
    Objective::new(&target, branch, grid.grid()?, grid.config())
}

fn warn_failures<'a>(points: impl Iterator<Item = (f64, &'a Error)>) {
    for (omega, e) in points {
        eprintln!("warning: omega = {}: {e}", report(omega));
    }
}

fn cmd_respond(args: &SweepArgs) -> Result<()> {
    let target = read_filter(&args.filter.input)?;
    let f =
        Synthesizer::new(&target, args.filter.branch)?.realize(args.filter.a3, args.filter.b2)?;
    let grid = args.grid.grid()?;
    let rows: Vec<_> = grid
        .points
        .iter()
        .map(|&w| {
            (
                w,
                sensitivity::magnitude(&f, w, grid.convention),
                sensitivity::magnitude(&target, w, grid.convention),
            )
        })
        .collect();
    emit(args.out.as_deref(), &format::response_csv(&rows))
}

fn cmd_sens(args: &SensArgs) -> Result<()> {
    let a = &args.sweep;
    let obj = objective(&a.filter.input, a.filter.branch, &a.grid)?;
    let profile = if args.real {
        obj.real_profile()
    } else {
        obj.profile(a.filter.a3, a.filter.b2)?
    };
    warn_failures(
        profile
            .per_point
            .iter()
            .filter_map(|p| p.rcs.as_ref().err().map(|e| (p.omega, e))),
    );
    eprintln!("S_RCS = {}", report(profile.aggregate));
    emit(a.out.as_deref(), &format::sensitivity_csv(&profile))
}

fn cmd_ratio(args: &SweepArgs) -> Result<()> {
    let obj = objective(&args.filter.input, args.filter.branch, &args.grid)?;
    let points = obj.ratio_profile(args.filter.a3, args.filter.b2)?;
    warn_failures(
        points
            .iter()
            .filter_map(|p| p.ratio.as_ref().err().map(|e| (p.omega, e))),
    );
    emit(args.out.as_deref(), &format::ratio_csv(&points))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn cmd_optimize(args: &OptimizeArgs) -> Result<()> {
    let obj = objective(&args.input, args.branch, &args.grid)?;
    let cfg = StagedConfig {
        wide: SearchBox::parse(&args.bounds, args.resolution)?,
        narrow_resolution: args.narrow_resolution,
        ..StagedConfig::default()
    };
    let r = optimize::staged_optimize(&obj, &cfg)?;
    let mut summary = String::new();
    let mut simplex_steps = 0;
    for t in &r.trace {
        match &t.state {
            StageState::Lattice(b) => {
                let _ = writeln!(
                    summary,
                    "{}: {} → best ({}, {}) S_RCS = {}",
                    t.stage,
                    b,
                    report(t.best.0),
                    report(t.best.1),
                    report(t.best_value)
                );
            }
            StageState::Simplex(_) => simplex_steps += 1,
        }
    }
    if let Some(last) = r.trace.iter().rev().find(|t| t.stage == Stage::Refine) {
        let _ = writeln!(
            summary,
            "refine: {} simplex iterations → best ({}, {}) S_RCS = {}",
            simplex_steps.max(1) - 1,
            report(last.best.0),
            report(last.best.1),
            report(last.best_value)
        );
    }
    let _ = writeln!(
        summary,
        "a3 = {}\nb2 = {}\nS_RCS = {}",
        report(r.best.0),
        report(r.best.1),
        report(r.value)
    );
    print!("{summary}");
    if let Some(prefix) = &args.out {
        for s in &r.surfaces {
            let path = with_suffix(prefix, &format!(".{}.csv", s.stage));
            emit(Some(&path), &format::surface_csv(&s.samples))?;
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn cmd_surface(args: &SurfaceArgs) -> Result<()> {
    let obj = objective(&args.input, args.branch, &args.grid)?;
    let bx = SearchBox::parse(&args.bounds, args.resolution)?;
    let r = optimize::grid_search(&obj, &bx)?;
    eprintln!(
        "lattice minimum ({}, {}) S_RCS = {}",
        report(r.best.0),
        report(r.best.1),
        report(r.value)
    );
    emit(
        args.out.as_deref(),
        &format::surface_csv(&r.surfaces[0].samples),
    )
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Info => cmd_info(),
        Command::Convert(a) => cmd_convert(a),
        Command::Expand(a) => cmd_expand(a),
        Command::Respond(a) => cmd_respond(a),
        Command::Sens(a) => cmd_sens(a),
        Command::Ratio(a) => cmd_ratio(a),
        Command::Optimize(a) => cmd_optimize(a),
        Command::Surface(a) => cmd_surface(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.class() {
                ErrorClass::Parse => 2,
                ErrorClass::Infeasible => 3,
                ErrorClass::Numerical => 4,
            })
        }
    }
}
