mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use coxform::fixtures::FixtureSet;
use coxform::forms::{analyze, FormAnalysis};
use coxform::paper_check::{self, PaperCheckOptions};
use coxform::polynomials::{charpoly, spectrum_in_circle_or_real};
use coxform::posets::{
    count_posets, coxeter_poset, enumerate_posets, euler_form_poset, hasse, mobius, product_poset,
    Poset, MAX_ENUMERATION_SIZE,
};
use coxform::quivers::{hereditary_dictionary, Quiver};
use coxform::reflections::{
    a_plus_minus, a_plus_minus_general, factorization_sides, row_reflection, Permutation,
    ReflectionSystem,
};
use coxform::{Error, IntMatrix};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use report::{
    matrix, Check, FormSection, PosetSection, ProductSection, QuiverSection, RandomTrials,
    ReflectionCase, ReflectionSection, Report, ScanRow, ScanSection,
};

/// Labeled posets on 1..=6 points (OEIS A001035).
const POSET_COUNTS: [u64; 7] = [1, 1, 3, 19, 219, 4231, 130023];

#[derive(Parser)]
#[command(
    name = "coxform",
    version,
    about = "Coxeter transformations of integral forms, posets and quivers"
)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Print nothing on success; the exit code carries the verdict.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze the form given by a square integer matrix file.
    AnalyzeForm { path: PathBuf },
    /// Analyze the incidence algebra of a poset file.
    AnalyzePoset { path: PathBuf },
    /// Analyze the path algebra of an acyclic quiver file.
    AnalyzeQuiver { path: PathBuf },
    /// Product of reflections and its factorization.
    Reflections(ReflectionArgs),
    /// Product of two posets.
    Product {
        left: PathBuf,
        right: PathBuf,
        /// Write the product poset here instead of printing it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce the worked examples and the property suites.
    PaperCheck {
        /// Directory whose files replace the bundled fixtures of the same name.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long, default_value_t = 2008)]
        seed: u64,
        /// Largest poset size in the scan check.
        #[arg(long, default_value_t = 5)]
        scan_max: usize,
    },
    /// Check the spectrum of every labeled poset up to a size.
    Scan {
        #[arg(long, default_value_t = 5)]
        max_size: usize,
    },
}

#[derive(Args)]
struct ReflectionArgs {
    /// Matrix file; diagonal 2 unless --general.
    #[arg(required_unless_present = "random", conflicts_with = "random")]
    path: Option<PathBuf>,
    /// One-line permutation with 1-based images, e.g. "3 1 2".
    #[arg(long)]
    perm: Option<String>,
    /// Allow an arbitrary diagonal.
    #[arg(long)]
    general: bool,
    /// Run this many trials on random matrices and permutations.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 6)]
    size: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum Failure {
    Read(PathBuf, std::io::Error),
    Write(PathBuf, std::io::Error),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Read(..) => 2,
            Failure::Write(..) => 3,
            Failure::Lib(e) => match e {
                Error::Parse { .. }
                | Error::Cycle(_)
                | Error::UnknownElement(_)
                | Error::DuplicateElement(_)
                | Error::InvalidPermutation(_)
                | Error::NotSquare { .. } => 2,
                Error::Internal(_) => 1,
                _ => 3,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Read(p, e) => format!("cannot read {}: {e}", p.display()),
            Failure::Write(p, e) => format!("cannot write {}: {e}", p.display()),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Read(path.to_path_buf(), e))
}

fn read_matrix(path: &Path) -> Outcome<IntMatrix> {
    let a = IntMatrix::parse(&read(path)?)?;
    a.require_square()?;
    Ok(a)
}

fn read_unimodular(path: &Path) -> Outcome<IntMatrix> {
    let c = read_matrix(path)?;
    let det = c.determinant()?;
    if det.is_zero() {
        return Err(Error::Singular.into());
    }
    if det.magnitude() != &One::one() {
        return Err(Error::NotUnimodular(det.to_string()).into());
    }
    Ok(c)
}

fn read_poset(path: &Path) -> Outcome<Poset> {
    Ok(Poset::parse(&read(path)?)?)
}

fn describe(path: &Path) -> Vec<String> {
    vec![path.display().to_string()]
}

/// Checks that hold for every analysis: the defining relation `C Phi = -C^t`
/// and, when a period is claimed, `Phi^period = I` by repeated squaring.
fn verify_analysis(report: &mut Report, c: &IntMatrix, a: &FormAnalysis) {
    let relation = c * &a.coxeter == -&c.transpose();
    report.check("coxeter relation", relation, "C Phi = -C^t");
    if let Some(p) = a.period {
        let ok = a.coxeter.pow(p).map(|m| m.is_identity()).unwrap_or(false);
        report.check("period", ok, format!("Phi^{p} = I"));
    }
}

fn form_report(command: &str, path: &Path, c: &IntMatrix) -> Outcome<Report> {
    let a = analyze(c)?;
    let mut report = Report::new(command, describe(path));
    report.form = Some(FormSection::new(c, &a));
    verify_analysis(&mut report, c, &a);
    Ok(report)
}

fn poset_section(x: &Poset) -> PosetSection {
    PosetSection {
        elements: x.names().to_vec(),
        hasse: hasse(x)
            .edge_names()
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        mobius: matrix(&mobius(x)),
    }
}

fn cmd_analyze_poset(path: &Path) -> Outcome<Report> {
    let x = read_poset(path)?;
    let c = euler_form_poset(&x);
    let mut report = form_report("analyze-poset", path, &c)?;
    report.poset = Some(poset_section(&x));
    let direct = coxeter_poset(&x);
    let same = report
        .form
        .as_ref()
        .map(|f| f.coxeter == matrix(&direct))
        .unwrap_or(false);
    report.check("mobius route", same, "-C^{-1} C^t = -1_X mu_X^t");
    Ok(report)
}

fn cmd_analyze_quiver(path: &Path) -> Outcome<Report> {
    let q = Quiver::parse(&read(path)?)?;
    let h = hereditary_dictionary(&q)?;
    let mut report = Report::new("analyze-quiver", describe(path));
    report.form = Some(FormSection::new(&h.euler_form, &h.analysis));
    let names = q.vertices();
    report.quiver = Some(QuiverSection {
        vertices: names.to_vec(),
        arrows: q
            .arrows()
            .iter()
            .map(|&(a, b)| (names[a].clone(), names[b].clone()))
            .collect(),
        graph_type: h.graph_type.to_string(),
        positive: h.positive(),
        non_negative: h.non_negative(),
    });
    verify_analysis(&mut report, &h.euler_form, &h.analysis);
    if let Some(k) = h.graph_type.coxeter_number() {
        let ok = h.analysis.period == Some(k);
        report.check(
            "coxeter number",
            ok,
            format!("period {k} for {}", h.graph_type),
        );
    }
    Ok(report)
}

fn one_based(pi: &Permutation) -> Vec<usize> {
    pi.images().iter().map(|&i| i + 1).collect()
}

/// The product in the written order and `A_{pi,+}`, `A_{pi,-}`. Holds when
/// the product agrees with `-A_+^{-1} A_-^t`, tested as `A_+ P = -A_-^t` in
/// the general case so no inverse is needed.
fn reflection_case(a: &IntMatrix, pi: &Permutation, general: bool) -> Outcome<ReflectionCase> {
    let n = a.require_square()?;
    if pi.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "permutation of {} for a {n}x{n} matrix",
            pi.len()
        ))
        .into());
    }
    let (product, plus, minus, holds) = if general {
        let product = pi.images().iter().fold(IntMatrix::identity(n), |acc, &i| {
            &acc * &row_reflection(a, i)
        });
        let (plus, minus) = a_plus_minus_general(a, pi)?;
        let holds = &plus * &product == -minus.transpose();
        (product, plus, minus, holds)
    } else {
        let sys = ReflectionSystem::new(a.clone())?;
        let (product, factorized) = factorization_sides(&sys, pi)?;
        let (plus, minus) = a_plus_minus(&sys, pi)?;
        let holds = product == factorized;
        (product, plus, minus, holds)
    };
    Ok(ReflectionCase {
        matrix: matrix(a),
        permutation: one_based(pi),
        product: matrix(&product),
        a_plus: matrix(&plus),
        a_minus: matrix(&minus),
        holds,
    })
}

fn cmd_reflections(args: &ReflectionArgs) -> Outcome<Report> {
    if let Some(trials) = args.random {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        let n = args.size;
        let mut held = 0;
        for _ in 0..trials {
            let a = IntMatrix::from_fn(n, n, |i, j| {
                if i == j && !args.general {
                    BigInt::from(2)
                } else {
                    BigInt::from(rng.gen_range(-4..=4))
                }
            });
            let pi = Permutation::random(n, &mut rng);
            held += reflection_case(&a, &pi, args.general)?.holds as usize;
        }
        let mut report = Report::new("reflections", Vec::new());
        report.reflections = Some(ReflectionSection {
            general: args.general,
            case: None,
            random: Some(RandomTrials {
                trials,
                size: n,
                seed: args.seed,
                held,
            }),
        });
        report.check(
            "factorization",
            held == trials,
            format!("{held} of {trials} trials hold"),
        );
        return Ok(report);
    }
    let path = args
        .path
        .as_deref()
        .expect("clap requires a path without --random");
    let a = read_matrix(path)?;
    let pi = match &args.perm {
        Some(text) => Permutation::parse(text)?,
        None => Permutation::identity(a.rows()),
    };
    let case = reflection_case(&a, &pi, args.general)?;
    let mut report = Report::new("reflections", describe(path));
    report.check(
        "factorization",
        case.holds,
        "product of reflections = -A_+^{-1} A_-^t",
    );
    report.reflections = Some(ReflectionSection {
        general: args.general,
        case: Some(case),
        random: None,
    });
    Ok(report)
}

fn cmd_product(left: &Path, right: &Path, out: Option<&Path>) -> Outcome<Report> {
    let (x, y) = (read_poset(left)?, read_poset(right)?);
    let xy = product_poset(&x, &y);
    let (cx, cy, cxy) = (
        euler_form_poset(&x),
        euler_form_poset(&y),
        euler_form_poset(&xy),
    );
    let (ax, ay, axy) = (analyze(&cx)?, analyze(&cy)?, analyze(&cxy)?);
    let text = xy.to_text();
    if let Some(path) = out {
        fs::write(path, &text).map_err(|e| Failure::Write(path.to_path_buf(), e))?;
    }
    let mut report = Report::new(
        "product",
        vec![left.display().to_string(), right.display().to_string()],
    );
    report.check(
        "euler form",
        cxy == cx.kronecker(&cy),
        "C_{XxY} = C_X (x) C_Y",
    );
    let phi = coxeter_poset(&xy);
    report.check(
        "coxeter matrix",
        phi == -coxeter_poset(&x).kronecker(&coxeter_poset(&y)),
        "Phi_{XxY} = -Phi_X (x) Phi_Y",
    );
    verify_analysis(&mut report, &cxy, &axy);
    if let (Some(p), Some(q)) = (ax.period, ay.period) {
        let bound = 2 * num_integer::lcm(p, q);
        let ok = axy.period.is_some_and(|k| bound % k == 0);
        report.check(
            "periodic factors",
            ok,
            format!("period divides 2 lcm({p}, {q}) = {bound}"),
        );
    }
    report.product = Some(ProductSection {
        left_size: x.len(),
        right_size: y.len(),
        size: xy.len(),
        left_period: ax.period,
        right_period: ay.period,
        period: axy.period,
        output: out.map(|p| p.display().to_string()),
        text,
    });
    Ok(report)
}

fn spectrum_violation(x: &Poset) -> bool {
    charpoly(&coxeter_poset(x)).map_or(true, |p| !spectrum_in_circle_or_real(&p))
}

/// Splits the posets over the available cores; results come back in
/// enumeration order.
fn scan_size(n: usize) -> Outcome<(u64, Vec<String>)> {
    let posets: Vec<Poset> = enumerate_posets(n)?.collect();
    let workers = std::thread::available_parallelism().map_or(1, |k| k.get());
    let chunk = posets.len().div_ceil(workers).max(1);
    let violations = std::thread::scope(|s| {
        let handles: Vec<_> = posets
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || {
                    part.iter()
                        .filter(|x| spectrum_violation(x))
                        .map(Poset::to_text)
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("scan worker panicked"))
            .collect()
    });
    Ok((posets.len() as u64, violations))
}

fn cmd_scan(max_size: usize) -> Outcome<Report> {
    if max_size > MAX_ENUMERATION_SIZE {
        return Err(Error::SizeCap {
            requested: max_size,
            cap: MAX_ENUMERATION_SIZE,
        }
        .into());
    }
    let mut report = Report::new("scan", Vec::new());
    let mut rows = Vec::new();
    let mut all = Vec::new();
    for n in 1..=max_size {
        let (posets, violations) = scan_size(n)?;
        let counted = count_posets(n)?;
        let ok = posets == counted && posets == POSET_COUNTS[n];
        report.check(
            &format!("count n = {n}"),
            ok,
            format!(
                "{posets} enumerated, {counted} counted, {} known",
                POSET_COUNTS[n]
            ),
        );
        rows.push(ScanRow {
            size: n,
            posets,
            violations: violations.len() as u64,
        });
        all.extend(violations);
    }
    report.check(
        "spectrum",
        all.is_empty(),
        format!("{} posets outside S^1 ∪ R", all.len()),
    );
    report.scan = Some(ScanSection {
        max_size,
        rows,
        violations: all,
    });
    Ok(report)
}

fn cmd_paper_check(
    cli: &Cli,
    fixtures: Option<&Path>,
    seed: u64,
    scan_max: usize,
) -> Outcome<bool> {
    if scan_max > MAX_ENUMERATION_SIZE {
        return Err(Error::SizeCap {
            requested: scan_max,
            cap: MAX_ENUMERATION_SIZE,
        }
        .into());
    }
    let set = match fixtures {
        Some(dir) => FixtureSet::from_dir(dir).map_err(|e| Failure::Read(dir.to_path_buf(), e))?,
        None => FixtureSet::embedded(),
    };
    let results = paper_check::run(&set, &PaperCheckOptions { seed, scan_max });
    let passed = results.iter().all(|r| r.passed);
    if cli.json {
        let mut report = Report::new("paper-check", fixtures.map(describe).unwrap_or_default());
        report.checks = results
            .iter()
            .map(|r| Check {
                name: format!("{:>2} {}", r.id, r.name),
                passed: r.passed,
                detail: r.detail.clone(),
                limit_ms: Some(r.limit.as_millis() as u64),
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    } else if !cli.quiet || !passed {
        let ms = |d: Duration| d.as_secs_f64() * 1000.0;
        for r in &results {
            if cli.quiet && r.passed {
                continue;
            }
            println!(
                "{:>2} {} {:<62} {:>9.1} ms / {:>6.0} ms  {}",
                r.id,
                if r.passed { "PASS" } else { "FAIL" },
                r.name,
                ms(r.elapsed),
                ms(r.limit),
                r.detail
            );
        }
        let failed = results.iter().filter(|r| !r.passed).count();
        println!(
            "{} of {} checks passed",
            results.len() - failed,
            results.len()
        );
    }
    Ok(passed)
}

fn run(cli: &Cli) -> Outcome<bool> {
    let report = match &cli.command {
        Command::AnalyzeForm { path } => {
            form_report("analyze-form", path, &read_unimodular(path)?)?
        }
        Command::AnalyzePoset { path } => cmd_analyze_poset(path)?,
        Command::AnalyzeQuiver { path } => cmd_analyze_quiver(path)?,
        Command::Reflections(args) => cmd_reflections(args)?,
        Command::Product { left, right, out } => cmd_product(left, right, out.as_deref())?,
        Command::Scan { max_size } => cmd_scan(*max_size)?,
        Command::PaperCheck {
            fixtures,
            seed,
            scan_max,
        } => return cmd_paper_check(cli, fixtures.as_deref(), *seed, *scan_max),
    };
    let passed = report.all_passed();
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    } else if !cli.quiet {
        print!("{}", report::render(&report));
    } else if !passed {
        for c in report.checks.iter().filter(|c| !c.passed) {
            println!("[FAIL] {}: {}", c.name, c.detail);
        }
    }
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
