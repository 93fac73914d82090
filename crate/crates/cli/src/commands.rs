use std::fmt::{self, Write as _};
use std::path::Path;
use std::sync::Arc;

use chainmat::codes::Code;
use chainmat::enumgeo::{self, ModuleShape};
use chainmat::gallery;
use chainmat::indepsys::{IndependenceSystem, Subset, Violation};
use chainmat::linalg::Matrix;
use chainmat::random;
use chainmat::{make_ring, oracle, Error, Ring};
use serde_json::{json, Value};

use crate::{Cli, Command};

pub enum CliError {
    Usage(String),
    Lib(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Lib(e) => match e {
                Error::Parse { .. }
                | Error::Io(_)
                | Error::BadRingSpec(_)
                | Error::NotPrime(_)
                | Error::NotPrimePower(_)
                | Error::RingTooLarge(_)
                | Error::NotARing(_)
                | Error::NotLocal
                | Error::UnknownElement(_)
                | Error::UnknownLabel(_)
                | Error::DuplicateLabel(_)
                | Error::UnknownEntry(_)
                | Error::GroundSetTooLarge(..) => 2,
                _ => 1,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => f.write_str(s),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// What a command prints, in both output modes, and whether it succeeded.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output { text, json, ok: true }
    }

    fn fail(text: String, json: Value) -> Output {
        Output { text, json, ok: false }
    }
}

fn load(cli: &Cli, path: &Path) -> Result<Matrix> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    Matrix::parse_with_ring(&text, cli.ring.as_deref()).map_err(|e| match e {
        Error::Parse { line, col, msg } => CliError::Usage(format!("{}:{line}:{col}: {msg}", path.display())),
        other => other.into(),
    })
}

fn need_ring(cli: &Cli) -> Result<Arc<Ring>> {
    let spec = cli
        .ring
        .as_deref()
        .ok_or_else(|| CliError::Usage("this command needs --ring".into()))?;
    Ok(make_ring(spec)?)
}

fn system(cli: &Cli, a: &Matrix) -> Result<IndependenceSystem> {
    if cli.oracle {
        let family = oracle::independent_family_by_definition(a)?;
        let set: std::collections::HashSet<Subset> = family.into_iter().collect();
        Ok(IndependenceSystem::from_family(a.labels().to_vec(), |s| set.contains(&s))?)
    } else {
        Ok(IndependenceSystem::from_matrix(a)?)
    }
}

fn export(sys: &IndependenceSystem) -> Value {
    serde_json::to_value(sys.to_export()).expect("export serializes")
}

fn set_list(sys: &IndependenceSystem, sets: &[Subset]) -> String {
    sets.iter().map(|&s| format!("{}\n", sys.format_subset(s))).collect()
}

fn matrix_json(m: &Matrix) -> Value {
    let r = m.ring();
    let rows: Vec<Vec<&str>> = m.rows().iter().map(|row| row.iter().map(|&e| r.name(e)).collect()).collect();
    json!({ "ring": r.spec(), "cols": m.labels(), "rows": rows })
}

fn code_output(code: &Code) -> Output {
    let mut j = matrix_json(code.generator());
    j["free"] = json!(code.is_free());
    j["size"] = json!(code.size());
    Output::ok(code.generator().to_text(), j)
}

fn violation_text(sys: &IndependenceSystem, v: &Violation) -> String {
    match *v {
        Violation::Augmentation { i1, i2 } => format!(
            "augmentation fails: I1 = {}, I2 = {}",
            sys.format_subset(i1),
            sys.format_subset(i2)
        ),
        Violation::Submodularity { x, y } => format!(
            "submodularity fails: X = {}, Y = {}",
            sys.format_subset(x),
            sys.format_subset(y)
        ),
    }
}

fn check_matroid(sys: &IndependenceSystem) -> Output {
    let report = sys.check_matroid();
    let mut text = String::new();
    let _ = writeln!(text, "matroid: {}", if report.is_matroid { "yes" } else { "no" });
    let _ = writeln!(text, "rank: {}", report.rank);
    let _ = writeln!(text, "simple: {}", if report.is_simple { "yes" } else { "no" });
    if !report.loops.is_empty() {
        let loops: Vec<&str> = report.loops.iter().map(|&e| sys.labels()[e].as_str()).collect();
        let _ = writeln!(text, "loops: {}", loops.join(","));
    }
    for &(a, b) in &report.parallel_pairs {
        let _ = writeln!(text, "parallel: {},{}", sys.labels()[a], sys.labels()[b]);
    }
    if let Some(v) = report.violations.first() {
        let _ = writeln!(text, "witness: {}", violation_text(sys, v));
    }
    let j = export(sys);
    if report.is_matroid {
        Output::ok(text, j)
    } else {
        Output::fail(text, j)
    }
}

fn parse_shape(spec: &str) -> Result<ModuleShape> {
    spec.split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(ModuleShape)
        .map_err(|_| CliError::Usage(format!("bad shape `{spec}`: expected comma-separated counts")))
}

fn verify_gallery(name: Option<&str>, all: bool) -> Result<Output> {
    let names: Vec<String> = match (name, all) {
        (Some(n), false) => vec![n.to_string()],
        (None, true) => gallery::names().into_iter().map(String::from).collect(),
        _ => return Err(CliError::Usage("give an entry name or --all".into())),
    };
    let mut text = String::new();
    let mut reports = Vec::new();
    let mut ok = true;
    for n in &names {
        let report = gallery::inspect_entry(n)?;
        let passed = report.passed();
        ok &= passed;
        let _ = writeln!(text, "{n}: {}", if passed { "verified" } else { "FAILED" });
        let mut checks = Vec::new();
        for c in &report.checks {
            let _ = writeln!(text, "  [{}] {}: {}", if c.passed { "ok" } else { "fail" }, c.name, c.detail);
            checks.push(json!({ "name": c.name, "passed": c.passed, "detail": c.detail }));
        }
        reports.push(json!({ "name": n, "passed": passed, "checks": checks }));
    }
    let j = json!({ "entries": reports, "passed": ok });
    Ok(if ok { Output::ok(text, j) } else { Output::fail(text, j) })
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Indep(m) => {
            let sys = system(cli, &load(cli, &m.file)?)?;
            Ok(Output::ok(set_list(&sys, &sys.independent_sets()), export(&sys)))
        }
        Command::Circuits(m) => {
            let a = load(cli, &m.file)?;
            let sys = if cli.oracle {
                IndependenceSystem::from_circuits(&oracle::circuits_by_subset_scan(&a)?)
            } else {
                IndependenceSystem::from_matrix(&a)?
            };
            Ok(Output::ok(set_list(&sys, sys.circuits().members()), export(&sys)))
        }
        Command::Rank(s) => {
            let sys = system(cli, &load(cli, &s.file)?)?;
            let x = sys.parse_subset(&s.x)?;
            let r = sys.rank(x);
            Ok(Output::ok(format!("{r}\n"), json!({ "set": sys.subset_names(x), "rank": r })))
        }
        Command::CheckMatroid(m) => Ok(check_matroid(&system(cli, &load(cli, &m.file)?)?)),
        Command::DualCode(m) => {
            let c = Code::from_matrix(&load(cli, &m.file)?)?;
            let d = if cli.oracle { oracle::dual_by_enumeration(&c)? } else { c.dual()? };
            Ok(code_output(&d))
        }
        Command::DualSystem(m) => {
            let star = system(cli, &load(cli, &m.file)?)?.dual_system();
            Ok(Output::ok(set_list(&star, &star.independent_sets()), export(&star)))
        }
        Command::Puncture(s) => {
            let c = Code::from_matrix(&load(cli, &s.file)?)?;
            Ok(code_output(&c.puncture(c.parse_subset(&s.x)?)?))
        }
        Command::Shorten(s) => {
            let c = Code::from_matrix(&load(cli, &s.file)?)?;
            Ok(code_output(&c.shorten(c.parse_subset(&s.x)?)?))
        }
        Command::Contractible { file, e } => {
            let a = load(cli, file)?;
            let c = Code::from_matrix(&a)?;
            let idx = a.label_index(e)?;
            match c.is_contractible(idx) {
                Ok(Some(w)) => {
                    let names: Vec<&str> = w.iter().map(|&x| c.ring().name(x)).collect();
                    Ok(Output::ok(
                        format!("contractible at {e}\nwitness: {}\n", names.join(" ")),
                        json!({ "contractible": true, "witness": names }),
                    ))
                }
                Ok(None) => Ok(Output::fail(
                    format!("not contractible at {e}\n"),
                    json!({ "contractible": false }),
                )),
                Err(Error::ZeroProjection(_)) => Ok(Output::fail(
                    format!("not contractible at {e}: the projection is zero\n"),
                    json!({ "contractible": false, "zero_projection": true }),
                )),
                Err(err) => Err(err.into()),
            }
        }
        Command::Contract(s) => {
            let c = Code::from_matrix(&load(cli, &s.file)?)?;
            match c.contract(c.parse_subset(&s.x)?) {
                Ok((code, order)) => {
                    let mut out = code_output(&code);
                    out.text = format!("order: {}\n{}", order.join(","), out.text);
                    out.json["order"] = json!(order);
                    Ok(out)
                }
                Err(Error::NotContractible) => Ok(Output::fail(
                    "no contractible ordering\n".into(),
                    json!({ "contractible": false }),
                )),
                Err(e) => Err(e.into()),
            }
        }
        Command::Minor { file, delete, contract } => {
            let sys = system(cli, &load(cli, file)?)?;
            let d = sys.parse_subset(delete)?;
            let c = sys.parse_subset(contract)?;
            if d & c != 0 {
                return Err(CliError::Usage("--delete and --contract overlap".into()));
            }
            let deleted = sys.delete(d);
            let minor = match deleted.contract(deleted.parse_subset(contract)?) {
                Ok(m) => m,
                Err(Error::ContractDependentSet) => {
                    return Ok(Output::fail(
                        "the contracted set contains a circuit\n".into(),
                        json!({ "error": "contract set is dependent" }),
                    ))
                }
                Err(e) => return Err(e.into()),
            };
            Ok(Output::ok(set_list(&minor, &minor.independent_sets()), export(&minor)))
        }
        Command::Snf(m) => {
            let a = load(cli, &m.file)?;
            let snf = a.smith_normal_form()?;
            let text = format!(
                "lambdas: {:?}\nD:\n{}P:\n{}Q:\n{}",
                snf.lambdas,
                snf.d.to_text(),
                snf.p.to_text(),
                snf.q.to_text()
            );
            Ok(Output::ok(
                text,
                json!({
                    "lambdas": snf.lambdas,
                    "d": matrix_json(&snf.d),
                    "p": matrix_json(&snf.p),
                    "q": matrix_json(&snf.q),
                }),
            ))
        }
        Command::Systematic(m) => {
            let c = Code::from_matrix(&load(cli, &m.file)?)?;
            match c.systematic() {
                Some(s) => {
                    let pivots: Vec<&str> = s.pivots.iter().map(|&j| c.labels()[j].as_str()).collect();
                    Ok(Output::ok(
                        format!("pivots: {}\n{}", pivots.join(","), s.matrix.to_text()),
                        json!({ "pivots": pivots, "matrix": matrix_json(&s.matrix) }),
                    ))
                }
                None => Ok(Output::fail(
                    format!("not free: mu = {}, size = {}\n", c.mu(), c.size()),
                    json!({ "free": false }),
                )),
            }
        }
        Command::Uniform { n } => {
            let r = need_ring(cli)?;
            match enumgeo::uniform_rank2_representation(&r, *n)? {
                Some(a) => Ok(Output::ok(a.to_text(), matrix_json(&a))),
                None => {
                    let bound = enumgeo::projective_line_size(&r)?;
                    Ok(Output::fail(
                        format!("unrepresentable: n > {bound}\n"),
                        json!({ "representable": false, "bound": bound }),
                    ))
                }
            }
        }
        Command::Bound { k } => {
            let r = need_ring(cli)?;
            let simple = enumgeo::simple_size_bound(&r, *k)?;
            let width = match enumgeo::cyc_antichain_bound(&r, *k as usize) {
                Ok(w) => Some(w),
                Err(Error::ClosureTooLarge(_)) => None,
                Err(e) => return Err(e.into()),
            };
            let width_text = width.map_or("not computed (too large)".into(), |w| w.to_string());
            Ok(Output::ok(
                format!("simple size bound: {simple}\nantichain bound: {width_text}\n"),
                json!({ "simple_size_bound": simple.to_string(), "antichain_bound": width }),
            ))
        }
        Command::Counting { shape, s } => {
            let r = need_ring(cli)?;
            let shape = parse_shape(shape)?;
            let count = enumgeo::count_cyclic_submodules(&shape, &r, *s)?;
            Ok(Output::ok(format!("{count}\n"), json!({ "shape": shape.0, "s": s, "count": count.to_string() })))
        }
        Command::VerifyGallery { name, all } => verify_gallery(name.as_deref(), *all),
        Command::Iso { a, b } => {
            let sa = system(cli, &load(cli, a)?)?;
            let sb = system(cli, &load(cli, b)?)?;
            match sa.is_isomorphic(&sb)? {
                Some(map) => {
                    let pairs: Vec<String> = map
                        .iter()
                        .enumerate()
                        .map(|(i, &j)| format!("{}->{}", sa.labels()[i], sb.labels()[j]))
                        .collect();
                    Ok(Output::ok(
                        format!("isomorphic: {}\n", pairs.join(" ")),
                        json!({ "isomorphic": true, "map": pairs }),
                    ))
                }
                None => Ok(Output::fail("not isomorphic\n".into(), json!({ "isomorphic": false }))),
            }
        }
        Command::Random { k, n, free } => {
            let r = need_ring(cli)?;
            let mut g = random::rng(cli.seed);
            let a = if *free {
                if k > n {
                    return Err(CliError::Usage("a free code needs k <= n".into()));
                }
                random::random_free_generator(&mut g, &r, *k, *n)
            } else {
                random::random_matrix(&mut g, &r, *k, *n)
            };
            Ok(Output::ok(a.to_text(), matrix_json(&a)))
        }
    }
}
