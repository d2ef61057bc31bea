//! The `lchkit` command line, as a library so it can be driven from tests.
//!
//! Every subcommand takes its input either from `--file <path>` (`-` for
//! stdin, DGA text format) or from trailing `family <name> [key=value ...]`
//! tokens.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Display;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lchkit_core::augment::DEFAULT_CAP;
use lchkit_core::families::{attach_s, FamilyObject, FamilySpec};
use lchkit_core::geography::{
    blch_admissible_split, connected_sum_polynomial, lch_admissible_split, plan_realization,
};
use lchkit_core::homotopy::{blch_table, homotopy_classes, Method};
use lchkit_core::{
    bilinearize, enumerate_augmentations, linearize, parse_dga, poincare, Augmentation,
    ChainComplex, Dga, LaurentPoly,
};

#[derive(Parser, Debug)]
#[command(
    name = "lchkit",
    version,
    about = "Bilinearized Legendrian contact homology over GF(2)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// DGA file in text format, `-` for stdin
    #[arg(long, value_name = "PATH")]
    file: Option<String>,
    /// `family <name> [key=value ...]`
    #[arg(value_name = "SOURCE", num_args = 0..)]
    source: Vec<String>,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check degrees and d^2 = 0
    Validate {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Enumerate augmentations in lexicographic order
    Augs {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Poincaré polynomial of the linearized homology
    Lin {
        #[command(flatten)]
        input: Input,
        /// Enumeration index or `name=bit,...`
        #[arg(long)]
        e1: Option<String>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Poincaré polynomial of the bilinearized homology
    Blch {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        e1: Option<String>,
        #[arg(long)]
        e2: Option<String>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Bilinearized polynomials for every ordered pair of augmentations
    Table {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Partition the augmentations into homotopy classes
    Classes {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "cross")]
        method: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Split a polynomial as an admissible bilinearized or linearized polynomial
    Admissible {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        n: i64,
        #[arg(long, value_enum, default_value_t = Mode::Blch)]
        mode: Mode,
        #[command(flatten)]
        output: Output,
    },
    /// Plan a Legendrian link pair realizing a polynomial
    Realize {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        n: i64,
        #[command(flatten)]
        output: Output,
    },
    /// Connected sum, on a polynomial (`--poly`) or on a complex (input source)
    Connsum {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        n: Option<i64>,
        /// `zero`, `nonzero`, or a comma-separated support of degree-n elements
        #[arg(long, default_value = "zero")]
        rho: String,
        #[arg(long)]
        e1: Option<String>,
        #[arg(long)]
        e2: Option<String>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Print a built-in DGA or complex in text format
    Family {
        #[arg(value_name = "SPEC", num_args = 1..)]
        spec: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Blch,
    Lch,
}

enum Failure {
    Usage(String),
    Domain(&'static str, String),
}

fn domain<E: Display>(module: &'static str) -> impl Fn(E) -> Failure {
    move |e| Failure::Domain(module, e.to_string())
}

type Outcome = Result<String, Failure>;

/// Runs the command line and returns the exit status: 0 on success,
/// 1 on a domain error, 2 on a usage error.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    match dispatch(cli.command, stdin) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "lchkit: usage error: {msg}");
            2
        }
        Err(Failure::Domain(module, msg)) => {
            let _ = writeln!(err, "lchkit: {module} error: {msg}");
            1
        }
    }
}

fn dispatch(command: Command, stdin: &mut dyn Read) -> Outcome {
    match command {
        Command::Validate { input, output } => validate(load(&input, stdin)?, output.json),
        Command::Augs { input, cap, output } => augs(&load_dga(&input, stdin)?, cap, output.json),
        Command::Lin {
            input,
            e1,
            cap,
            output,
        } => match load(&input, stdin)? {
            FamilyObject::Complex(cx) => {
                reject_selectors(&[&e1])?;
                homology(&cx, output.json)
            }
            FamilyObject::Dga(dga) => {
                let e1 = select(&dga, e1.as_deref(), cap)?;
                homology(
                    &linearize(&dga, &e1).map_err(domain("augment"))?,
                    output.json,
                )
            }
        },
        Command::Blch {
            input,
            e1,
            e2,
            cap,
            output,
        } => {
            let cx = bilinear_input(load(&input, stdin)?, e1, e2, cap)?;
            homology(&cx, output.json)
        }
        Command::Table { input, cap, output } => table(&load_dga(&input, stdin)?, cap, output.json),
        Command::Classes {
            input,
            method,
            cap,
            output,
        } => {
            let method: Method = method.parse().map_err(Failure::Usage)?;
            classes(&load_dga(&input, stdin)?, method, cap, output.json)
        }
        Command::Admissible {
            poly,
            n,
            mode,
            output,
        } => admissible(&parse_poly(&poly)?, n, mode, output.json),
        Command::Realize { poly, n, output } => realize(&parse_poly(&poly)?, n, output.json),
        Command::Connsum {
            input,
            poly,
            n,
            rho,
            e1,
            e2,
            cap,
            output,
        } => connsum(input, stdin, poly, n, &rho, e1, e2, cap, output.json),
        Command::Family { spec } => Ok(match family(&spec)? {
            FamilyObject::Dga(dga) => dga.serialize(),
            FamilyObject::Complex(cx) => cx.to_text(),
        }),
    }
}

fn family(tokens: &[String]) -> Result<FamilyObject, Failure> {
    let spec = FamilySpec::parse(tokens).map_err(domain("families"))?;
    spec.build().map_err(domain("families"))
}

fn load(input: &Input, stdin: &mut dyn Read) -> Result<FamilyObject, Failure> {
    match (&input.file, input.source.split_first()) {
        (Some(_), Some(_)) => Err(Failure::Usage(
            "give either --file or a family, not both".into(),
        )),
        (None, None) => Err(Failure::Usage(
            "no input: use --file <path> or family <spec>".into(),
        )),
        (None, Some((head, rest))) => {
            if head != "family" {
                return Err(Failure::Usage(format!(
                    "unexpected argument '{head}' (expected 'family')"
                )));
            }
            if rest.is_empty() {
                return Err(Failure::Usage("family needs a name".into()));
            }
            family(rest)
        }
        (Some(path), None) => {
            let mut text = String::new();
            let read = if path == "-" {
                stdin.read_to_string(&mut text).map(|_| ())
            } else {
                std::fs::read_to_string(path).map(|t| text = t)
            };
            read.map_err(|e| Failure::Domain("io", format!("cannot read {path}: {e}")))?;
            parse_dga(&text)
                .map(FamilyObject::Dga)
                .map_err(domain("dga"))
        }
    }
}

fn load_dga(input: &Input, stdin: &mut dyn Read) -> Result<Dga, Failure> {
    match load(input, stdin)? {
        FamilyObject::Dga(dga) => Ok(dga),
        FamilyObject::Complex(_) => Err(Failure::Usage(
            "this family is a chain complex, not a DGA".into(),
        )),
    }
}

fn reject_selectors(selectors: &[&Option<String>]) -> Result<(), Failure> {
    if selectors.iter().any(|s| s.is_some()) {
        return Err(Failure::Usage(
            "augmentation selectors need a DGA input".into(),
        ));
    }
    Ok(())
}

fn bilinear_input(
    obj: FamilyObject,
    e1: Option<String>,
    e2: Option<String>,
    cap: usize,
) -> Result<ChainComplex, Failure> {
    match obj {
        FamilyObject::Complex(cx) => {
            reject_selectors(&[&e1, &e2])?;
            Ok(cx)
        }
        FamilyObject::Dga(dga) => {
            let a = select(&dga, e1.as_deref(), cap)?;
            let b = select(&dga, e2.as_deref(), cap)?;
            bilinearize(&dga, &a, &b).map_err(domain("augment"))
        }
    }
}

/// An enumeration index, or a `name=bit` list with unlisted generators at 0.
fn select(dga: &Dga, selector: Option<&str>, cap: usize) -> Result<Augmentation, Failure> {
    let Some(selector) = selector else {
        return Err(Failure::Usage("missing augmentation selector".into()));
    };
    if let Ok(index) = selector.trim().parse::<usize>() {
        let augs = enumerate_augmentations(dga, cap).map_err(domain("augment"))?;
        let count = augs.len();
        return augs.into_iter().nth(index).ok_or_else(|| {
            Failure::Domain(
                "augment",
                format!("index {index} out of range ({count} augmentations)"),
            )
        });
    }
    let mut assignment = BTreeMap::new();
    for item in selector.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, bit) = item.split_once('=').ok_or_else(|| {
            Failure::Usage(format!(
                "bad selector item '{item}' (expected name=0 or name=1)"
            ))
        })?;
        let bit = match bit.trim() {
            "0" => false,
            "1" => true,
            other => return Err(Failure::Usage(format!("bad bit '{other}' for '{name}'"))),
        };
        assignment.insert(name.trim().to_owned(), bit);
    }
    Augmentation::new(dga, &assignment).map_err(domain("augment"))
}

fn parse_poly(text: &str) -> Result<LaurentPoly, Failure> {
    text.parse()
        .map_err(|e| Failure::Usage(format!("bad polynomial '{text}': {e}")))
}

fn render(value: Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn validate(obj: FamilyObject, as_json: bool) -> Outcome {
    let issues: Vec<String> = match &obj {
        FamilyObject::Dga(dga) => dga
            .validate()
            .issues
            .iter()
            .map(ToString::to_string)
            .collect(),
        FamilyObject::Complex(cx) => cx
            .check_square_zero()
            .err()
            .map(|e| e.to_string())
            .into_iter()
            .collect(),
    };
    if !issues.is_empty() {
        return Err(Failure::Domain("dga", issues.join("; ")));
    }
    if as_json {
        return Ok(render(json!({ "schema": 1, "valid": true })));
    }
    Ok("ok\n".into())
}

fn augs(dga: &Dga, cap: usize, as_json: bool) -> Outcome {
    let augs = enumerate_augmentations(dga, cap).map_err(domain("augment"))?;
    if as_json {
        let list: Vec<Value> = augs.iter().map(|a| assignment_json(dga, a)).collect();
        return Ok(render(json!({ "schema": 1, "augmentations": list })));
    }
    Ok(augs
        .iter()
        .enumerate()
        .map(|(i, a)| format!("{i} {}\n", a.display(dga)))
        .collect())
}

fn assignment_json(dga: &Dga, a: &Augmentation) -> Value {
    let map: serde_json::Map<String, Value> = a
        .assignment(dga)
        .into_iter()
        .map(|(name, bit)| (name, json!(u8::from(bit))))
        .collect();
    Value::Object(map)
}

fn homology(cx: &ChainComplex, as_json: bool) -> Outcome {
    let p = poincare(cx).map_err(domain("complex"))?;
    if as_json {
        return Ok(render(json!({ "schema": 1, "poincare": p.to_string() })));
    }
    Ok(format!("{p}\n"))
}

fn table(dga: &Dga, cap: usize, as_json: bool) -> Outcome {
    let t = blch_table(dga, cap).map_err(domain("homotopy"))?;
    if as_json {
        let augs: Vec<Value> = t
            .augmentations
            .iter()
            .map(|a| assignment_json(dga, a))
            .collect();
        let rows: Vec<Vec<String>> = t
            .table
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect())
            .collect();
        return Ok(render(
            json!({ "schema": 1, "augmentations": augs, "table": rows }),
        ));
    }
    let mut s = String::new();
    for (i, a) in t.augmentations.iter().enumerate() {
        s += &format!("aug {i} {}\n", a.display(dga));
    }
    for (i, row) in t.table.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            s += &format!("P {i} {j} {p}\n");
        }
    }
    Ok(s)
}

fn classes(dga: &Dga, method: Method, cap: usize, as_json: bool) -> Outcome {
    let part = homotopy_classes(dga, method, cap).map_err(domain("homotopy"))?;
    if as_json {
        let augs: Vec<Value> = part
            .augmentations
            .iter()
            .map(|a| assignment_json(dga, a))
            .collect();
        return Ok(render(json!({
            "schema": 1,
            "method": method.to_string(),
            "augmentations": augs,
            "classes": part.classes,
        })));
    }
    let mut s = format!("{} classes ({method})\n", part.classes.len());
    for class in &part.classes {
        let members: Vec<String> = class.iter().map(ToString::to_string).collect();
        s += &format!("{{{}}}", members.join(", "));
        let shown: Vec<String> = class
            .iter()
            .map(|&i| part.augmentations[i].display(dga).to_string())
            .collect();
        s += &format!(" {}\n", shown.join(" | "));
    }
    Ok(s)
}

fn admissible(poly: &LaurentPoly, n: i64, mode: Mode, as_json: bool) -> Outcome {
    let split = match mode {
        Mode::Blch => blch_admissible_split(poly, n),
        Mode::Lch => lch_admissible_split(poly, n),
    }
    .map_err(domain("geography"))?;
    let mode_name = match mode {
        Mode::Blch => "blch",
        Mode::Lch => "lch",
    };
    if as_json {
        let body = match &split {
            Some(sp) => {
                json!({ "schema": 1, "mode": mode_name, "admissible": true, "q": sp.q.to_string(), "p": sp.p.to_string() })
            }
            None => json!({ "schema": 1, "mode": mode_name, "admissible": false }),
        };
        return Ok(render(body));
    }
    Ok(match split {
        Some(sp) => format!("q = {}\np = {}\n", sp.q, sp.p),
        None => "not admissible\n".into(),
    })
}

fn realize(poly: &LaurentPoly, n: i64, as_json: bool) -> Outcome {
    let plan = plan_realization(poly, n).map_err(domain("geography"))?;
    if as_json {
        let mut value = serde_json::to_value(&plan).expect("plans serialize");
        value
            .as_object_mut()
            .expect("plan is an object")
            .insert("schema".into(), json!(1));
        return Ok(render(value));
    }
    let mut s = format!("n = {}\nq = {}\nN = {}\n", plan.n, plan.q, plan.copies);
    for p in &plan.pairs {
        s += &format!("pair u={} v={} m={} k={} a={}\n", p.u, p.v, p.m, p.k, p.a);
    }
    s += &format!("predicted = {}\n", plan.predicted);
    Ok(s)
}

#[allow(clippy::too_many_arguments)]
fn connsum(
    input: Input,
    stdin: &mut dyn Read,
    poly: Option<String>,
    n: Option<i64>,
    rho: &str,
    e1: Option<String>,
    e2: Option<String>,
    cap: usize,
    as_json: bool,
) -> Outcome {
    let has_input = input.file.is_some() || !input.source.is_empty();
    let result = match (poly, has_input) {
        (Some(_), true) => {
            return Err(Failure::Usage(
                "give either --poly or an input source, not both".into(),
            ))
        }
        (None, false) => {
            return Err(Failure::Usage(
                "connsum needs --poly or an input source".into(),
            ))
        }
        (Some(text), false) => {
            let n = n.ok_or_else(|| Failure::Usage("--poly needs --n".into()))?;
            let vanishes = match rho {
                "zero" => true,
                "nonzero" => false,
                other => {
                    return Err(Failure::Usage(format!(
                        "--rho must be zero or nonzero with --poly, got '{other}'"
                    )))
                }
            };
            connected_sum_polynomial(&parse_poly(&text)?, n, vanishes)
                .map_err(domain("geography"))?
        }
        (None, true) => {
            let obj = load(&input, stdin)?;
            let dim = match &obj {
                FamilyObject::Dga(dga) => dga.dim(),
                FamilyObject::Complex(cx) => cx.dim(),
            };
            let n = n.unwrap_or(dim);
            let cx = bilinear_input(obj, e1, e2, cap)?;
            let support: Vec<&str> = match rho {
                "zero" => Vec::new(),
                list => list
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .collect(),
            };
            let summed = attach_s(&cx, n, &support).map_err(domain("families"))?;
            poincare(&summed).map_err(domain("complex"))?
        }
    };
    if as_json {
        return Ok(render(
            json!({ "schema": 1, "poincare": result.to_string() }),
        ));
    }
    Ok(format!("{result}\n"))
}
