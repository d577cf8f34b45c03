//! Command-line front end. [`run`] parses arguments, dispatches, and returns
//! the process exit code: 0 success, 2 input error, 3 verification mismatch or
//! property violation, 4 budget exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::census::{run_census, CensusConfig, Family};
use crate::classify::{check_with_witness, classify_3d_deg2, realize_2d, realize_3d_deg2, Degree2Class, Scheme, Witness};
use crate::document::{parse_rational, poly_to_strings, rationals_to_strings, ZonotopeDocument};
use crate::ehrhart::{
    degree_of, degree_via_dilates, ehrhart_oracle_verified, ehrhart_stanley, eulerian_aj, eulerian_table,
    hstar_from_poly, hstar_via_eulerian, interior_count_reciprocity, to_cbasis,
};
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, IntVector};
use crate::poly::Poly;
use crate::zonotope::{Zonotope, DEFAULT_CELL_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "zonoehr", version, about = "Ehrhart polynomials of lattice zonotopes")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Omit timings so that output is byte-for-byte reproducible.
    #[arg(long, global = true)]
    pub no_timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct ZonotopeInput {
    /// ZonotopeDocument JSON file, or `-` for stdin.
    pub input: PathBuf,
    /// Merge parallel generators before computing.
    #[arg(long)]
    pub merge_parallel: bool,
    /// Cap on bounding-box cells per enumeration.
    #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
    pub budget: u128,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Ehrhart polynomial, c-vector, h*-vector, degree and interior count.
    Ehrhart {
        #[command(flatten)]
        input: ZonotopeInput,
        /// Cross-check every quantity by brute-force counting.
        #[arg(long)]
        verify: bool,
    },
    /// Run a coefficient checker: scott, treutlein, zono2d, zono3d-deg2, hstar2d, hstar3d-deg2.
    Classify {
        scheme: String,
        /// Coefficients as integers or p/q.
        #[arg(allow_negative_numbers = true, required = true)]
        coefficients: Vec<String>,
        /// Treutlein only: also require h2 <= h1.
        #[arg(long)]
        strict_treutlein: bool,
    },
    /// Lattice width, facet widths and width-1 decomposition.
    Width {
        #[command(flatten)]
        input: ZonotopeInput,
    },
    /// Degree-2 classification of a 3-dimensional lattice zonotope.
    Degree2 {
        #[command(flatten)]
        input: ZonotopeInput,
    },
    /// Sweep a family of zonotopes and cross-check everything.
    Census {
        #[arg(long)]
        dim: usize,
        /// Entries lie in [-bound, bound].
        #[arg(long)]
        bound: i64,
        #[arg(long)]
        max_generators: usize,
        #[arg(long, default_value_t = 1)]
        min_generators: usize,
        /// Draw this many random instances instead of enumerating.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip brute-force counting of dilates.
        #[arg(long)]
        no_oracle: bool,
        /// JSON-lines output; the summary goes to `<out>.summary.json`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
        budget: u128,
    },
    /// Refined Eulerian polynomials A^d_j, or the whole table for d.
    Eulerian { d: usize, j: Option<usize> },
    /// A zonotope with c-vector (c1, c2) in dimension 2, or (c1, c2, 0) in dimension 3.
    Realize {
        c1: String,
        c2: String,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// For (0, 3) in dimension 3, return the exceptional parallelepiped.
        #[arg(long)]
        exceptional: bool,
    },
}

/// A finished command: its JSON report, a text rendering, and the exit code.
struct Outcome {
    report: Value,
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(report: Value, text: String) -> Self {
        Outcome {
            report,
            text,
            code: EXIT_OK,
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Mismatch(_) | Error::ClassificationContradiction(_) => EXIT_MISMATCH,
        _ => EXIT_INPUT,
    }
}

/// Entry point shared by the binary and the tests.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(stdout, "{rendered}")
            } else {
                write!(stderr, "{rendered}")
            };
            return code;
        }
    };
    let start = Instant::now();
    match dispatch(&cli.command) {
        Ok(mut outcome) => {
            let elapsed = start.elapsed().as_secs_f64() * 1000.0;
            let written = if cli.json {
                if !cli.no_timings {
                    outcome.report["timings"] = json!({ "total_ms": elapsed });
                }
                writeln!(stdout, "{}", serde_json::to_string_pretty(&outcome.report).expect("json"))
            } else {
                let mut text = outcome.text;
                if !cli.no_timings {
                    text.push_str(&format!("time: {elapsed:.3} ms\n"));
                }
                write!(stdout, "{text}")
            };
            if written.is_err() {
                return EXIT_INPUT;
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(command: &Command) -> Result<Outcome> {
    match command {
        Command::Ehrhart { input, verify } => cmd_ehrhart(input, *verify),
        Command::Classify {
            scheme,
            coefficients,
            strict_treutlein,
        } => cmd_classify(scheme, coefficients, *strict_treutlein),
        Command::Width { input } => cmd_width(input),
        Command::Degree2 { input } => cmd_degree2(input),
        Command::Census {
            dim,
            bound,
            max_generators,
            min_generators,
            random,
            seed,
            no_oracle,
            out,
            budget,
        } => {
            let family = match random {
                Some(count) => Family::Random {
                    dim: *dim,
                    bound: *bound,
                    min_generators: *min_generators,
                    max_generators: *max_generators,
                    count: *count,
                    seed: *seed,
                },
                None => Family::Exhaustive {
                    dim: *dim,
                    bound: *bound,
                    min_generators: *min_generators,
                    max_generators: *max_generators,
                },
            };
            let config = CensusConfig {
                families: vec![family],
                budget: *budget,
                oracle: !no_oracle,
            };
            cmd_census(&config, out.as_deref())
        }
        Command::Eulerian { d, j } => cmd_eulerian(*d, *j),
        Command::Realize {
            c1,
            c2,
            dim,
            exceptional,
        } => cmd_realize(c1, c2, *dim, *exceptional),
    }
}

fn read_document(path: &Path) -> Result<ZonotopeDocument> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
    };
    ZonotopeDocument::from_json(&text)
}

fn load(input: &ZonotopeInput) -> Result<(ZonotopeDocument, Zonotope)> {
    let doc = read_document(&input.input)?;
    let z = doc.to_zonotope(input.merge_parallel)?;
    Ok((doc, z))
}

fn doc_value(z: &Zonotope) -> Result<Value> {
    Ok(serde_json::to_value(ZonotopeDocument::from_zonotope(z)?).expect("json"))
}

fn strings(p: &Poly, len: usize) -> Value {
    json!(poly_to_strings(p, len))
}

fn vector_strings(v: &IntVector) -> Vec<String> {
    v.entries().iter().map(ToString::to_string).collect()
}

fn matrix_rows(m: &IntMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| vector_strings(&m.row(i))).collect()
}

pub fn cmd_ehrhart_report(z: &Zonotope, verify: bool, budget: u128) -> Result<(Value, String)> {
    let d = z.dim();
    let p = ehrhart_stanley(z)?;
    let c = to_cbasis(&p, d)?;
    let h = hstar_from_poly(&p, d)?;
    let h_eulerian = hstar_via_eulerian(&c)?;
    let degree = degree_of(&p, d)?;
    let full = z.is_full_dimensional();
    let interior = if full {
        Some(interior_count_reciprocity(&p)?)
    } else {
        None
    };
    let mut report = json!({
        "command": "ehrhart",
        "input": doc_value(z)?,
        "output": {
            "ehrhart": strings(&p, d + 1),
            "c": rationals_to_strings(&c.c),
            "c_valid": c.is_valid(),
            "hstar": rationals_to_strings(&h.h),
            "hstar_eulerian": rationals_to_strings(&h_eulerian.h),
            "hstar_valid": h.is_valid(),
            "degree": degree,
            "full_dimensional": full,
            "interior_points": interior.as_ref().map(ToString::to_string),
        },
    });
    let mut text = format!(
        "ehrhart: {p}\nc: ({})\nh*: ({})\ndegree: {degree}\n",
        rationals_to_strings(&c.c).join(", "),
        rationals_to_strings(&h.h).join(", "),
    );
    if let Some(i) = &interior {
        text.push_str(&format!("interior points: {i}\n"));
    }
    if verify {
        let oracle = ehrhart_oracle_verified(z, budget)?;
        let mut failures = Vec::new();
        if oracle != p {
            failures.push(format!("lattice-point counts give {oracle}, formula gives {p}"));
        }
        if h_eulerian != h {
            failures.push("Eulerian h* differs from converted h*".to_string());
        }
        let mut checks = json!({ "oracle": strings(&oracle, d + 1) });
        if full {
            let by_dilates = degree_via_dilates(z, budget)?;
            let counted = BigInt::from(z.count_interior_lattice_points(1, budget)?);
            if by_dilates != degree {
                failures.push(format!("degree from dilates {by_dilates} != {degree}"));
            }
            if Some(&counted) != interior.as_ref() {
                failures.push(format!("counted {counted} interior points"));
            }
            checks["degree_via_dilates"] = json!(by_dilates);
            checks["interior_counted"] = json!(counted.to_string());
        }
        checks["passed"] = json!(failures.is_empty());
        report["verification"] = checks;
        if !failures.is_empty() {
            return Err(Error::Mismatch(failures.join("; ")));
        }
        text.push_str("verified: oracle agrees\n");
    }
    Ok((report, text))
}

fn cmd_ehrhart(input: &ZonotopeInput, verify: bool) -> Result<Outcome> {
    let (_, z) = load(input)?;
    let (report, text) = cmd_ehrhart_report(&z, verify, input.budget)?;
    Ok(Outcome::ok(report, text))
}

fn witness_value(w: &Option<Witness>) -> Result<Value> {
    Ok(match w {
        None => Value::Null,
        Some(Witness::Zonotope(z)) => doc_value(z)?,
        Some(Witness::Coefficients(c)) => json!(rationals_to_strings(c)),
    })
}

fn cmd_classify(scheme: &str, coefficients: &[String], strict: bool) -> Result<Outcome> {
    let scheme: Scheme = scheme.parse()?;
    let args = coefficients
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<BigRational>>>()?;
    let v = check_with_witness(scheme, &args, strict)?;
    let report = json!({
        "command": "classify",
        "input": { "scheme": scheme.name(), "coefficients": rationals_to_strings(&args) },
        "output": {
            "accepted": v.accepted,
            "case_label": v.case_label,
            "reason": v.reason,
            "witness": witness_value(&v.witness)?,
        },
    });
    let mut text = match (&v.case_label, &v.reason) {
        (Some(label), _) if v.accepted => format!("accepted: {label}\n"),
        (_, reason) => format!("rejected: {}\n", reason.as_deref().unwrap_or("")),
    };
    if let Some(Witness::Zonotope(z)) = &v.witness {
        text.push_str(&format!("witness: {}\n", ZonotopeDocument::from_zonotope(z)?.to_json()));
    }
    Ok(Outcome::ok(report, text))
}

fn cmd_width(input: &ZonotopeInput) -> Result<Outcome> {
    let (_, z) = load(input)?;
    let lw = z.lattice_width_with_budget(input.budget)?;
    let facets = z.facet_directions()?;
    let decomposition = if z.dim() >= 2 && z.has_lattice_translate() {
        z.width1_decomposition()?
    } else {
        None
    };
    let facet_values: Vec<Value> = facets
        .iter()
        .map(|f| {
            json!({
                "normal": vector_strings(&f.normal),
                "min": f.lo.to_string(),
                "max": f.hi.to_string(),
                "width": f.width().to_string(),
            })
        })
        .collect();
    let dec_value = match &decomposition {
        None => Value::Null,
        Some(dec) => json!({
            "factor": doc_value(&dec.factor)?,
            "transform": matrix_rows(&dec.transform),
            "shift": vector_strings(&dec.shift),
            "direction": vector_strings(&dec.direction),
            "crossing_generator": vector_strings(&dec.crossing_generator),
        }),
    };
    let report = json!({
        "command": "width",
        "input": doc_value(&z)?,
        "output": {
            "lattice_width": lw.width.to_string(),
            "witness": vector_strings(&lw.witness),
            "facets": facet_values,
            "width1_decomposition": dec_value,
        },
    });
    let mut text = format!("lattice width: {} along {}\n", lw.width, lw.witness);
    for f in &facets {
        text.push_str(&format!("facet {}: width {}\n", f.normal, f.width()));
    }
    match &decomposition {
        Some(dec) => text.push_str(&format!(
            "width-1 decomposition: factor {}\n",
            ZonotopeDocument::from_zonotope(&dec.factor)?.to_json()
        )),
        None => text.push_str("no width-1 decomposition\n"),
    }
    Ok(Outcome::ok(report, text))
}

fn cmd_degree2(input: &ZonotopeInput) -> Result<Outcome> {
    let (_, z) = load(input)?;
    let c = classify_3d_deg2(&z, input.budget)?;
    let detail = match &c.class {
        Degree2Class::Width1Product(dec) => json!({
            "factor": doc_value(&dec.factor)?,
            "factor_ehrhart": strings(&ehrhart_stanley(&dec.factor)?, 3),
            "transform": matrix_rows(&dec.transform),
            "shift": vector_strings(&dec.shift),
        }),
        Degree2Class::Exceptional(eq) => json!({
            "transform": matrix_rows(&eq.transform),
            "shift": vector_strings(&eq.shift),
            "order": eq.order,
        }),
        Degree2Class::NotDegree2 { reason } => json!({ "reason": reason }),
    };
    let report = json!({
        "command": "degree2",
        "input": doc_value(&z)?,
        "output": {
            "class": c.class.label(),
            "merged": c.merged,
            "merged_zonotope": doc_value(&c.zonotope)?,
            "detail": detail,
        },
    });
    let text = format!("class: {}\n", c.class.label());
    Ok(Outcome::ok(report, text))
}

fn summary_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".summary.json");
    PathBuf::from(s)
}

fn cmd_census(config: &CensusConfig, out: Option<&Path>) -> Result<Outcome> {
    let outcome = run_census(config)?;
    let summary = serde_json::to_value(&outcome.summary).expect("json");
    if let Some(path) = out {
        let io_err = |e: io::Error| Error::Parse(format!("{}: {e}", path.display()));
        let mut file = io::BufWriter::new(fs::File::create(path).map_err(io_err)?);
        for r in &outcome.records {
            writeln!(file, "{}", serde_json::to_string(r).expect("json")).map_err(io_err)?;
        }
        file.flush().map_err(io_err)?;
        let text = serde_json::to_string_pretty(&summary).expect("json") + "\n";
        fs::write(summary_path(path), text).map_err(io_err)?;
    }
    let first_violations: Vec<Value> = outcome
        .violating()
        .take(10)
        .map(|r| json!({ "key": r.key, "violations": r.violations }))
        .collect();
    let families: Vec<String> = config.families.iter().map(Family::name).collect();
    let report = json!({
        "command": "census",
        "input": { "families": families, "oracle": config.oracle, "budget": config.budget.to_string() },
        "output": { "summary": summary, "first_violations": first_violations },
    });
    let s = &outcome.summary;
    let mut text = format!(
        "instances: {}\nfull-dimensional: {}\noracle-checked: {}\nviolations: {}\n",
        s.instances, s.full_dimensional, s.oracle_checked, s.violations
    );
    for (class, n) in &s.classes {
        text.push_str(&format!("{class}: {n}\n"));
    }
    for r in outcome.violating().take(10) {
        text.push_str(&format!("violation {}: {}\n", r.key, r.violations.join("; ")));
    }
    Ok(Outcome {
        report,
        text,
        code: if s.violations == 0 { EXIT_OK } else { EXIT_MISMATCH },
    })
}

fn cmd_eulerian(d: usize, j: Option<usize>) -> Result<Outcome> {
    let rows: Vec<(usize, Poly)> = match j {
        Some(j) => vec![(j, eulerian_aj(d, j)?)],
        None => eulerian_table(d)?.into_iter().enumerate().map(|(i, p)| (i + 1, p)).collect(),
    };
    let values: Vec<Value> = rows
        .iter()
        .map(|(j, p)| json!({ "j": j, "coefficients": strings(p, 1) }))
        .collect();
    let report = json!({
        "command": "eulerian",
        "input": { "d": d, "j": j },
        "output": { "polynomials": values },
    });
    let text = rows
        .iter()
        .map(|(j, p)| format!("A^{d}_{j}(t) = {}\n", p.display_in("t")))
        .collect();
    Ok(Outcome::ok(report, text))
}

fn parse_integer(s: &str) -> Result<BigInt> {
    let r = parse_rational(s)?;
    if !r.is_integer() {
        return Err(Error::arg(format!("{s} is not an integer")));
    }
    Ok(r.to_integer())
}

fn cmd_realize(c1: &str, c2: &str, dim: usize, exceptional: bool) -> Result<Outcome> {
    let (a, b) = (parse_integer(c1)?, parse_integer(c2)?);
    let z = match dim {
        2 => realize_2d(&a, &b)?,
        3 => realize_3d_deg2(&a, &b, exceptional)?,
        _ => return Err(Error::arg(format!("realizers exist for dimension 2 and 3, got {dim}"))),
    };
    let p = ehrhart_stanley(&z)?;
    let doc = ZonotopeDocument::from_zonotope(&z)?;
    let report = json!({
        "command": "realize",
        "input": { "c": [a.to_string(), b.to_string()], "dim": dim, "exceptional": exceptional },
        "output": { "zonotope": doc_value(&z)?, "ehrhart": strings(&p, dim + 1) },
    });
    let text = format!("{}\nehrhart: {p}\n", doc.to_json());
    Ok(Outcome::ok(report, text))
}
