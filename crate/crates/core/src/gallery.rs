//! Named matroids with explicit representations, and their verification.

use serde::Deserialize;

use crate::codes::Code;
use crate::error::{Error, Result};
use crate::indepsys::{size, Clutter, IndependenceSystem, Subset};
use crate::linalg::Matrix;

const MANIFESTS: &[(&str, &str)] = &[
    ("u26-z4", include_str!("../gallery/u26-z4.json")),
    ("u212-z8", include_str!("../gallery/u212-z8.json")),
    ("p6-z4", include_str!("../gallery/p6-z4.json")),
    ("f7minus-z4", include_str!("../gallery/f7minus-z4.json")),
    ("p8-z4", include_str!("../gallery/p8-z4.json")),
    ("p8eq-z4-vs-f5", include_str!("../gallery/p8eq-z4-vs-f5.json")),
    ("f8-z4", include_str!("../gallery/f8-z4.json")),
    ("ag32prime-z4", include_str!("../gallery/ag32prime-z4.json")),
    ("vamos-z8", include_str!("../gallery/vamos-z8.json")),
    ("u23-z4-nonfree", include_str!("../gallery/u23-z4-nonfree.json")),
];

const MATRICES: &[(&str, &str)] = &[
    ("u26-z4.mat", include_str!("../gallery/u26-z4.mat")),
    ("u212-z8.mat", include_str!("../gallery/u212-z8.mat")),
    ("p6-z4.mat", include_str!("../gallery/p6-z4.mat")),
    ("p6-f5.mat", include_str!("../gallery/p6-f5.mat")),
    ("f7minus-z4.mat", include_str!("../gallery/f7minus-z4.mat")),
    ("f7minus-f3.mat", include_str!("../gallery/f7minus-f3.mat")),
    ("p8-z4.mat", include_str!("../gallery/p8-z4.mat")),
    ("p8-f3.mat", include_str!("../gallery/p8-f3.mat")),
    ("p8eq-z4.mat", include_str!("../gallery/p8eq-z4.mat")),
    ("p8eq-f5.mat", include_str!("../gallery/p8eq-f5.mat")),
    ("f8-z4.mat", include_str!("../gallery/f8-z4.mat")),
    ("ag32prime-z4.mat", include_str!("../gallery/ag32prime-z4.mat")),
    ("vamos-z8.mat", include_str!("../gallery/vamos-z8.mat")),
    ("u23-z4.mat", include_str!("../gallery/u23-z4.mat")),
];

#[derive(Clone, Debug, Deserialize)]
pub struct Manifest {
    pub name: String,
    pub description: String,
    pub matrix: String,
    pub target: Target,
    pub claimed: Claimed,
    /// Name of the dual matroid, present when the representation is free.
    #[serde(default)]
    pub dual: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Target {
    Uniform { k: usize, n: usize },
    /// Rank-`r` paving matroid: the listed `r`-sets are the dependent
    /// hyperplanes, and every `(r+1)`-set containing none of them is a circuit.
    Paving { rank: usize, planes: Vec<String> },
    Circuits { circuits: Vec<String> },
    Reference { matrix: String },
}

#[derive(Clone, Debug, Deserialize)]
pub struct Claimed {
    pub matroid: bool,
    pub rank: usize,
    pub simple: bool,
    pub free: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub name: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }
}

pub fn names() -> Vec<&'static str> {
    MANIFESTS.iter().map(|(n, _)| *n).collect()
}

pub fn manifest(name: &str) -> Result<Manifest> {
    let text = MANIFESTS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))?;
    serde_json::from_str(text).map_err(|e| Error::VerificationFailed(format!("bad manifest {name}: {e}")))
}

/// A matrix file shipped with the gallery.
pub fn matrix_file(file: &str) -> Result<Matrix> {
    let text = MATRICES
        .iter()
        .find(|(n, _)| *n == file)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::UnknownEntry(file.to_string()))?;
    Matrix::parse(text)
}

/// The representation matrix of an entry.
pub fn matrix(name: &str) -> Result<Matrix> {
    matrix_file(&manifest(name)?.matrix)
}

/// The target matroid of an entry on the entry's labels.
pub fn target_system(m: &Manifest, labels: &[String]) -> Result<IndependenceSystem> {
    let named = |list: &[String]| -> Result<Vec<Subset>> {
        let c = Clutter::new(labels.to_vec(), vec![])?;
        list.iter().map(|s| c.parse_subset(s)).collect()
    };
    match &m.target {
        Target::Uniform { k, n } => IndependenceSystem::uniform(*k, *n)?.relabel(labels.to_vec()),
        Target::Circuits { circuits, .. } => {
            Ok(IndependenceSystem::from_circuits(&Clutter::new(labels.to_vec(), named(circuits)?)?))
        }
        Target::Paving { rank, planes, .. } => {
            let planes = named(planes)?;
            let n = labels.len();
            let mut circuits = planes.clone();
            for s in 0..(1u32 << n) {
                if size(s) == rank + 1 && planes.iter().all(|&p| p & s != p) {
                    circuits.push(s);
                }
            }
            Ok(IndependenceSystem::from_circuits(&Clutter::new(labels.to_vec(), circuits)?))
        }
        Target::Reference { matrix, .. } => IndependenceSystem::from_matrix(&matrix_file(matrix)?),
    }
}

fn fmt_set(sys: &IndependenceSystem, s: Subset) -> String {
    format!("{{{}}}", sys.subset_names(s).join(","))
}

fn compare_circuits(report: &mut Report, got: &IndependenceSystem, want: &IndependenceSystem) {
    let a = got.circuits();
    let b = want.circuits();
    let extra: Vec<Subset> = a.members().iter().copied().filter(|s| !b.members().contains(s)).collect();
    let missing: Vec<Subset> = b.members().iter().copied().filter(|s| !a.members().contains(s)).collect();
    let detail = if extra.is_empty() && missing.is_empty() {
        format!("{} circuits", a.len())
    } else {
        let show = |v: &[Subset]| v.iter().map(|&s| fmt_set(got, s)).collect::<Vec<_>>().join(" ");
        format!("extra: {} missing: {}", show(&extra), show(&missing))
    };
    report.push("circuits equal target", extra.is_empty() && missing.is_empty(), detail);
}

/// Run every check of an entry without stopping at the first failure.
pub fn inspect_entry(name: &str) -> Result<Report> {
    let m = manifest(name)?;
    let g = matrix_file(&m.matrix)?;
    let sys = IndependenceSystem::from_matrix(&g)?;
    let code = Code::from_matrix(&g)?;
    let mut report = Report {
        name: m.name.clone(),
        checks: Vec::new(),
    };
    let mr = sys.check_matroid();
    report.push("matroid", mr.is_matroid == m.claimed.matroid, format!("is_matroid = {}", mr.is_matroid));
    report.push("rank", mr.rank == m.claimed.rank, format!("rank = {}", mr.rank));
    report.push("simple", mr.is_simple == m.claimed.simple, format!("simple = {}", mr.is_simple));
    report.push(
        "free",
        code.is_free() == m.claimed.free,
        format!("free = {}, mu = {}, rows = {}", code.is_free(), code.mu(), g.nrows()),
    );
    let target = target_system(&m, g.labels())?;
    match &m.target {
        Target::Uniform { k, n } => {
            report.push(
                "equals target",
                sys == target,
                format!("M[G] {} U_{{{k},{n}}}", if sys == target { "=" } else { "!=" }),
            );
        }
        Target::Paving { .. } | Target::Circuits { .. } => {
            compare_circuits(&mut report, &sys, &target);
            let iso = sys.is_isomorphic(&target)?;
            report.push("isomorphic to target", iso.is_some(), iso_detail(&sys, &target, iso.as_deref()));
        }
        Target::Reference { .. } => {
            let iso = sys.is_isomorphic(&target)?;
            report.push("isomorphic to reference", iso.is_some(), iso_detail(&sys, &target, iso.as_deref()));
        }
    }
    Ok(report)
}

fn iso_detail(a: &IndependenceSystem, b: &IndependenceSystem, map: Option<&[usize]>) -> String {
    match map {
        Some(map) => map
            .iter()
            .enumerate()
            .map(|(i, &j)| format!("{}->{}", a.labels()[i], b.labels()[j]))
            .collect::<Vec<_>>()
            .join(" "),
        None => "no isomorphism".into(),
    }
}

/// Verify an entry; the error names the first failing check.
pub fn verify_entry(name: &str) -> Result<Report> {
    let report = inspect_entry(name)?;
    match report.first_failure() {
        None => Ok(report),
        Some(c) => Err(Error::VerificationFailed(format!("{name}: {}: {}", c.name, c.detail))),
    }
}

#[derive(Clone, Debug)]
pub struct DualReport {
    pub name: String,
    pub dual_name: String,
    pub parity_check: Matrix,
    pub system: IndependenceSystem,
    pub equals_dual_system: bool,
    pub isomorphic_to_target_dual: bool,
}

/// Build `C⊥` for a free entry and check `M(C⊥) = M(C)*` and
/// `M(C⊥) ≅ target*`.
pub fn dual_entry(name: &str) -> Result<DualReport> {
    let m = manifest(name)?;
    let g = matrix_file(&m.matrix)?;
    let code = Code::from_matrix(&g)?;
    if !code.is_free() {
        return Err(Error::NotFree);
    }
    let h = code.parity_check()?;
    let dual_sys = IndependenceSystem::from_matrix(&h)?;
    let primal = IndependenceSystem::from_matrix(&g)?;
    let target = target_system(&m, g.labels())?;
    let target_dual = target.dual_system();
    let iso = if dual_sys.n() <= crate::indepsys::MAX_ISO_GROUND || dual_sys.uniform_rank().is_some() {
        dual_sys.is_isomorphic(&target_dual)?.is_some()
    } else {
        dual_sys == target_dual
    };
    Ok(DualReport {
        name: m.name,
        dual_name: m.dual.unwrap_or_else(|| "dual".into()),
        parity_check: h,
        equals_dual_system: dual_sys == primal.dual_system(),
        system: dual_sys,
        isomorphic_to_target_dual: iso,
    })
}

/// All sets of `sys` of size `k`.
pub fn sets_of_size(sys: &IndependenceSystem, k: usize) -> Vec<Subset> {
    (0..(1u32 << sys.n())).filter(|&s| size(s) == k).collect()
}
