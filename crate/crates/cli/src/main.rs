//! `hullforge`: build GRS codes with a prescribed hull, certify them and
//! regenerate EAQECC parameter tables.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use hullforge::fixtures::{compare, fixture_rows_for};
use hullforge::oracle::{hull_enum, mds_minor_check, min_distance_enum, BUDGET_ENV};
use hullforge::{
    certify, construct, generate_table, verify_object, Budget, CodeObject, ConstructionSpec, Error, Fixture, GrsCode,
    InnerProduct, TableFamily, TableRequest, Theorem,
};

const EXIT_FIXTURE_DIFF: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_CERTIFICATION: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(name = "hullforge", version, about = "GRS codes with prescribed hull dimension and their MDS EAQECCs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and certify one code; writes the code object as JSON.
    Construct(ConstructArgs),
    /// Generate an EAQECC parameter table for a family.
    Table(TableArgs),
    /// Re-certify a code object written by `construct`.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Shape {
    /// Subfield size r (additive point sets).
    #[arg(long)]
    r: Option<u32>,
    /// Number of cosets z (additive point sets).
    #[arg(long)]
    z: Option<u32>,
    /// Subspace dimension (additive) or number of cosets (multiplicative).
    #[arg(long)]
    t: Option<u32>,
    /// Number of evaluation points, for constructions that take it directly.
    #[arg(long)]
    n: Option<usize>,
    /// Order n' of the multiplicative subgroup.
    #[arg(long = "nprime")]
    n_prime: Option<u32>,
}

#[derive(Args)]
struct ConstructArgs {
    /// Construction, e.g. t3.3i, t3.6ii, t3.11.
    #[arg(long)]
    theorem: Theorem,
    #[arg(long)]
    q: u64,
    #[command(flatten)]
    shape: Shape,
    /// Code dimension (defaults to q for t3.11).
    #[arg(long)]
    k: Option<usize>,
    /// Prescribed hull dimension.
    #[arg(long)]
    ell: usize,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Csv,
    Json,
    Markdown,
}

#[derive(Args)]
struct TableArgs {
    /// Table family, e.g. t4.8i. Implied by --paper-fixture when absent.
    #[arg(long)]
    family: Option<TableFamily>,
    #[arg(long)]
    q: Option<u64>,
    #[command(flatten)]
    shape: Shape,
    #[arg(long)]
    k_min: Option<usize>,
    #[arg(long)]
    k_max: Option<usize>,
    #[arg(long)]
    ell_min: Option<usize>,
    #[arg(long)]
    ell_max: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Compare against an embedded reference table (table1, table2, table3).
    #[arg(long)]
    paper_fixture: Option<Fixture>,
    /// Include the full code object of every row (json format only).
    #[arg(long)]
    with_codes: bool,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Code object written by `construct`.
    #[arg(long = "in")]
    input: PathBuf,
    /// Also run the brute-force oracles within budget.
    #[arg(long)]
    oracle: bool,
    /// Report the hull for this inner product as well.
    #[arg(long)]
    kind: Option<InnerProduct>,
    /// Treat an oracle that exceeds its budget as a failure.
    #[arg(long)]
    strict: bool,
}

/// Failure carrying the process exit code.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        let code = match err.downcast_ref::<Error>() {
            Some(e) if e.is_precondition() => EXIT_PRECONDITION,
            Some(e) if e.is_certification() => EXIT_CERTIFICATION,
            Some(Error::BudgetExceeded { .. }) => EXIT_BUDGET,
            _ => 1,
        };
        Failure { code, err }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::new(e).into()
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Construct(a) => run_construct(a),
        Command::Table(a) => run_table(a),
        Command::Verify(a) => run_verify(a),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn run_construct(a: ConstructArgs) -> Outcome {
    let k = match (a.k, a.theorem) {
        (Some(k), _) => k,
        (None, Theorem::T3_11) => a.q as usize,
        (None, th) => return Err(Error::Precondition(format!("{th} needs parameter k")).into()),
    };
    let spec = ConstructionSpec {
        theorem: a.theorem,
        q: a.q,
        r: a.shape.r,
        z: a.shape.z,
        t: a.shape.t,
        n: a.shape.n,
        n_prime: a.shape.n_prime,
        k,
        ell: a.ell,
    };
    let built = construct(&spec)?;
    let json = serde_json::to_string_pretty(&built.to_object()).context("serializing code object")?;
    emit(a.out.as_ref(), &json)?;
    eprintln!(
        "{}: length {}, dimension {}, {} hull dimension {} (gram {}, intersection {})",
        a.theorem,
        built.code.length(),
        built.code.dimension(),
        built.certificate.kind,
        built.certificate.dim(),
        built.certificate.dim_by_gram,
        built.certificate.dim_by_intersection
    );
    Ok(0)
}

/// Shape parameters of the embedded tables.
fn fixture_request(fx: Fixture, q: Option<u64>) -> Result<TableRequest, Error> {
    let mut req = match fx {
        Fixture::Table1 => {
            let mut r = TableRequest::new(TableFamily::T4_8i, 9);
            (r.r, r.z, r.t) = (Some(9), Some(1), Some(8));
            r
        }
        Fixture::Table2 => {
            let mut r = TableRequest::new(TableFamily::T4_9i, 11);
            (r.n_prime, r.t) = (Some(12), Some(8));
            r
        }
        Fixture::Table3 => {
            let q = q.ok_or_else(|| Error::Precondition("table3 needs --q".into()))?;
            TableRequest::new(TableFamily::T4_10, q)
        }
    };
    if let Some(q) = q {
        req.q = q;
    }
    Ok(req)
}

fn fixture_family(fx: Fixture) -> TableFamily {
    match fx {
        Fixture::Table1 => TableFamily::T4_8i,
        Fixture::Table2 => TableFamily::T4_9i,
        Fixture::Table3 => TableFamily::T4_10,
    }
}

fn run_table(a: TableArgs) -> Outcome {
    let mut req = match (a.family, a.paper_fixture) {
        (Some(family), fx) => {
            if let Some(fx) = fx {
                if fixture_family(fx) != family {
                    return Err(
                        Error::Precondition(format!("{fx} is a {} table, not {family}", fixture_family(fx))).into()
                    );
                }
            }
            let q = a.q.ok_or_else(|| Error::Precondition("--q is required".into()))?;
            TableRequest::new(family, q)
        }
        (None, Some(fx)) => fixture_request(fx, a.q)?,
        (None, None) => return Err(Error::Precondition("--family or --paper-fixture is required".into()).into()),
    };
    req.r = a.shape.r.or(req.r);
    req.z = a.shape.z.or(req.z);
    req.t = a.shape.t.or(req.t);
    req.n = a.shape.n.or(req.n);
    req.n_prime = a.shape.n_prime.or(req.n_prime);
    (req.k_min, req.k_max, req.ell_min, req.ell_max) = (a.k_min, a.k_max, a.ell_min, a.ell_max);
    let windowed = [a.k_min, a.k_max, a.ell_min, a.ell_max].iter().any(Option::is_some);
    if let (Some(fx), false) = (a.paper_fixture, windowed) {
        let rows = fixture_rows_for(fx, req.q);
        if rows.is_empty() {
            return Err(Error::Precondition(format!("{fx} has no rows for q = {}", req.q)).into());
        }
        req.pairs = Some(rows.iter().map(|r| (r.k, r.ell)).collect());
    }

    let table = generate_table(&req, a.with_codes)?;
    if table.rows.is_empty() {
        return Err(Error::Precondition(format!(
            "no (k, ell) pair of {} over q = {} satisfies the construction's preconditions",
            req.family, req.q
        ))
        .into());
    }
    let text = match a.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json()?,
        Format::Markdown => table.to_markdown(),
    };
    emit(a.out.as_ref(), &text)?;

    let Some(fx) = a.paper_fixture else {
        return Ok(0);
    };
    let report = compare(&table, fx);
    eprintln!("{fx}: {report}");
    for m in &report.mismatched {
        eprintln!("  {m}");
    }
    Ok(if report.all_match() { 0 } else { EXIT_FIXTURE_DIFF })
}

fn run_verify(a: VerifyArgs) -> Outcome {
    let text = fs::read_to_string(&a.input).with_context(|| format!("reading {}", a.input.display()))?;
    let obj: CodeObject = serde_json::from_str(&text).map_err(|e| Error::Shape(format!("bad code object: {e}")))?;
    let cert = verify_object(&obj)?;
    let code = GrsCode::from_data(&obj.code)?;
    println!(
        "certificate ok: {} hull dimension {} (gram {}, intersection {})",
        cert.kind,
        cert.dim(),
        cert.dim_by_gram,
        cert.dim_by_intersection
    );
    if let Some(kind) = a.kind.filter(|&k| k != cert.kind) {
        let other = certify(&code, kind, None)?;
        println!("{kind} hull dimension {}", other.dim());
    }
    if !a.oracle {
        return Ok(0);
    }

    let budget = Budget::from_env()?;
    let mut skipped = Vec::new();
    let mut step = |name: &str, res: Result<(), Error>| -> Result<(), Failure> {
        match res {
            Ok(()) => {
                println!("oracle {name}: ok");
                Ok(())
            }
            Err(e @ Error::BudgetExceeded { .. }) => {
                println!("oracle {name}: skipped ({e})");
                skipped.push(e.to_string());
                Ok(())
            }
            Err(e) => Err(e.into()),
        }
    };
    let n = code.length();
    let k = code.dimension();
    step(
        "min distance",
        min_distance_enum(&code, &budget).and_then(|d| {
            if d == n - k + 1 {
                Ok(())
            } else {
                Err(Error::CertificateMismatch(format!("minimum distance {d}, expected {}", n - k + 1)))
            }
        }),
    )?;
    step(
        "mds minors",
        mds_minor_check(&code, &budget).and_then(|ok| {
            if ok {
                Ok(())
            } else {
                Err(Error::CertificateMismatch("a k x k minor vanishes".into()))
            }
        }),
    )?;
    step(
        "hull enumeration",
        hull_enum(&code, cert.kind, &budget).and_then(|h| {
            if h == cert.dim() {
                Ok(())
            } else {
                Err(Error::CertificateMismatch(format!("enumerated hull {h}, certified {}", cert.dim())))
            }
        }),
    )?;
    if a.strict && !skipped.is_empty() {
        eprintln!("error: {} oracle(s) exceeded the budget; raise it with {BUDGET_ENV}", skipped.len());
        return Ok(EXIT_BUDGET);
    }
    Ok(0)
}
