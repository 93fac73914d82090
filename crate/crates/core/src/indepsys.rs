//! Independence systems on small ground sets, stored as explicit bitset families.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::modindep::{is_modular_independent, MuPath};

/// A subset of the ground set; bit `i` is element `i`.
pub type Subset = u32;

pub const MAX_GROUND: usize = 16;
/// Largest ground set handled by the general isomorphism search.
pub const MAX_ISO_GROUND: usize = 10;
/// Largest ground set for which a submodularity witness is searched.
const MAX_SUBMODULAR_SEARCH: usize = 10;
const MAX_VIOLATIONS: usize = 64;

pub fn elements(s: Subset) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| s >> i & 1 == 1)
}

pub fn size(s: Subset) -> usize {
    s.count_ones() as usize
}

pub fn subset_of(indices: &[usize]) -> Subset {
    indices.iter().fold(0, |acc, &i| acc | 1 << i)
}

/// Canonical order: by size, then lexicographically by sorted element list.
fn canonical_key(s: Subset) -> (u32, Vec<usize>) {
    (s.count_ones(), elements(s).collect())
}

fn sort_canonical(sets: &mut [Subset]) {
    sets.sort_by_cached_key(|&s| canonical_key(s));
}

/// Re-index `s` onto the elements of `keep` (ascending indices).
fn compress(s: Subset, keep: &[usize]) -> Subset {
    keep.iter()
        .enumerate()
        .filter(|&(_, &e)| s >> e & 1 == 1)
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

/// Inclusion-minimal members, in canonical order.
pub fn minimal_sets(mut sets: Vec<Subset>) -> Vec<Subset> {
    sets.sort_unstable_by_key(|s| s.count_ones());
    sets.dedup();
    let mut out: Vec<Subset> = Vec::new();
    for s in sets {
        if !out.iter().any(|&m| m & s == m) {
            out.push(s);
        }
    }
    sort_canonical(&mut out);
    out
}

fn check_labels(labels: &[String]) -> Result<()> {
    if labels.len() > MAX_GROUND {
        return Err(Error::GroundSetTooLarge(labels.len(), MAX_GROUND));
    }
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

fn parse_labels(labels: &[String], spec: &str) -> Result<Subset> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .try_fold(0, |acc, name| {
            labels
                .iter()
                .position(|l| l == name)
                .map(|i| acc | 1 << i)
                .ok_or_else(|| Error::UnknownLabel(name.to_string()))
        })
}

fn names(labels: &[String], s: Subset) -> Vec<String> {
    elements(s).map(|i| labels[i].clone()).collect()
}

fn format_set(labels: &[String], s: Subset) -> String {
    format!("{{{}}}", names(labels, s).join(","))
}

/// An antichain of nonempty subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clutter {
    labels: Vec<String>,
    members: Vec<Subset>,
}

impl Clutter {
    pub fn new(labels: Vec<String>, members: Vec<Subset>) -> Result<Clutter> {
        check_labels(&labels)?;
        let full = (1u64 << labels.len()) - 1;
        for &m in &members {
            if m == 0 {
                return Err(Error::NotIndependenceSystem("clutter contains the empty set".into()));
            }
            if m as u64 & !full != 0 {
                return Err(Error::NotIndependenceSystem("member outside the ground set".into()));
            }
        }
        let mut members = members;
        members.sort_unstable();
        members.dedup();
        for &a in &members {
            for &b in &members {
                if a != b && a & b == a {
                    return Err(Error::NotIndependenceSystem(format!(
                        "{} is contained in {}",
                        format_set(&labels, a),
                        format_set(&labels, b)
                    )));
                }
            }
        }
        sort_canonical(&mut members);
        Ok(Clutter { labels, members })
    }

    pub fn from_labels(labels: &[&str], members: &[&[&str]]) -> Result<Clutter> {
        let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let members = members
            .iter()
            .map(|m| parse_labels(&labels, &m.join(",")))
            .collect::<Result<Vec<_>>>()?;
        Clutter::new(labels, members)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member_names(&self) -> Vec<Vec<String>> {
        self.members.iter().map(|&m| names(&self.labels, m)).collect()
    }

    pub fn parse_subset(&self, spec: &str) -> Result<Subset> {
        parse_labels(&self.labels, spec)
    }

    fn remaining(&self, t: Subset) -> (Vec<usize>, Vec<String>) {
        let keep: Vec<usize> = (0..self.labels.len()).filter(|&i| t >> i & 1 == 0).collect();
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        (keep, labels)
    }

    /// `C \ T`: members avoiding `T`, on the ground set `E ∖ T`.
    pub fn delete(&self, t: Subset) -> Clutter {
        let (keep, labels) = self.remaining(t);
        let members = self
            .members
            .iter()
            .filter(|&&m| m & t == 0)
            .map(|&m| compress(m, &keep))
            .collect();
        Clutter { labels, members }
    }

    /// `C / T = Min{D ∖ T}`; `T` must contain no member.
    pub fn contract(&self, t: Subset) -> Result<Clutter> {
        if self.members.iter().any(|&m| m & t == m) {
            return Err(Error::ContractDependentSet);
        }
        let (keep, labels) = self.remaining(t);
        let members = minimal_sets(self.members.iter().map(|&m| compress(m & !t, &keep)).collect());
        Ok(Clutter { labels, members })
    }
}

/// An (I3) or (R3) failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `I1, I2` independent, `|I1| < |I2|`, and no `e ∈ I2 ∖ I1` extends `I1`.
    Augmentation { i1: Subset, i2: Subset },
    /// `r(X ∪ Y) + r(X ∩ Y) > r(X) + r(Y)`.
    Submodularity { x: Subset, y: Subset },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidReport {
    pub is_matroid: bool,
    pub violations: Vec<Violation>,
    pub rank: usize,
    pub is_simple: bool,
    pub loops: Vec<usize>,
    pub parallel_pairs: Vec<(usize, usize)>,
}

/// `(E, I)` with `∅ ∈ I` and `I` closed under taking subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceSystem {
    labels: Vec<String>,
    indep: Vec<bool>,
    rank: Vec<u8>,
}

impl IndependenceSystem {
    /// Build from a membership predicate, rejecting families that are not
    /// downward closed.
    pub fn from_family(labels: Vec<String>, family: impl Fn(Subset) -> bool) -> Result<Self> {
        check_labels(&labels)?;
        let n = labels.len();
        let indep: Vec<bool> = (0..1u32 << n).map(family).collect();
        if !indep[0] {
            return Err(Error::NotIndependenceSystem("∅ is not independent".into()));
        }
        for s in 1..1usize << n {
            if !indep[s] {
                continue;
            }
            if let Some(e) = elements(s as Subset).find(|&e| !indep[s & !(1 << e)]) {
                return Err(Error::NotIndependenceSystem(format!(
                    "{} is independent but {} is not",
                    format_set(&labels, s as Subset),
                    format_set(&labels, (s & !(1 << e)) as Subset)
                )));
            }
        }
        Ok(Self::from_indep(labels, indep))
    }

    /// Build from a predicate that is assumed hereditary: a set is only
    /// evaluated when all its maximal proper subsets are independent.
    pub fn from_hereditary_predicate(
        labels: Vec<String>,
        mut pred: impl FnMut(Subset) -> Result<bool>,
    ) -> Result<Self> {
        check_labels(&labels)?;
        let n = labels.len();
        let mut indep = vec![false; 1 << n];
        indep[0] = true;
        for s in 1..1usize << n {
            if elements(s as Subset).all(|e| indep[s & !(1 << e)]) {
                indep[s] = pred(s as Subset)?;
            }
        }
        Ok(Self::from_indep(labels, indep))
    }

    fn from_indep(labels: Vec<String>, indep: Vec<bool>) -> Self {
        let mut rank = vec![0u8; indep.len()];
        for s in 1..indep.len() {
            rank[s] = if indep[s] {
                s.count_ones() as u8
            } else {
                elements(s as Subset)
                    .map(|e| rank[s & !(1 << e)])
                    .max()
                    .unwrap_or(0)
            };
        }
        IndependenceSystem {
            labels,
            indep,
            rank,
        }
    }

    /// `M[A]`: column sets that are modular independent.
    pub fn from_matrix(a: &Matrix) -> Result<Self> {
        Self::from_matrix_with(a, MuPath::Auto)
    }

    pub fn from_matrix_with(a: &Matrix, path: MuPath) -> Result<Self> {
        check_labels(a.labels())?;
        let cols = a.columns();
        let k = a.nrows();
        let ring = a.ring();
        Self::from_hereditary_predicate(a.labels().to_vec(), |s| {
            // Over a chain ring every submodule of R^k has μ ≤ k.
            if ring.is_chain() && size(s) > k {
                return Ok(false);
            }
            let vs: Vec<_> = elements(s).map(|j| cols[j].clone()).collect();
            is_modular_independent(ring, &vs, path)
        })
    }

    /// Sets containing no member of the clutter.
    pub fn from_circuits(circuits: &Clutter) -> Self {
        let n = circuits.labels.len();
        let indep = (0..1u32 << n)
            .map(|s| !circuits.members.iter().any(|&c| c & s == c))
            .collect();
        Self::from_indep(circuits.labels.clone(), indep)
    }

    pub fn uniform(k: usize, n: usize) -> Result<Self> {
        Self::from_family(Matrix::default_labels(n), |s| size(s) <= k)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn ground(&self) -> Subset {
        ((1u64 << self.n()) - 1) as Subset
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        self.indep[s as usize]
    }

    pub fn rank(&self, s: Subset) -> usize {
        self.rank[s as usize] as usize
    }

    pub fn full_rank(&self) -> usize {
        self.rank(self.ground())
    }

    pub fn parse_subset(&self, spec: &str) -> Result<Subset> {
        parse_labels(&self.labels, spec)
    }

    pub fn subset_names(&self, s: Subset) -> Vec<String> {
        names(&self.labels, s)
    }

    pub fn format_subset(&self, s: Subset) -> String {
        format_set(&self.labels, s)
    }

    /// All independent sets in canonical order.
    pub fn independent_sets(&self) -> Vec<Subset> {
        let mut out: Vec<Subset> = (0..self.indep.len() as u32)
            .filter(|&s| self.indep[s as usize])
            .collect();
        sort_canonical(&mut out);
        out
    }

    /// Independent sets of size `r(E)`.
    pub fn bases(&self) -> Vec<Subset> {
        let r = self.full_rank();
        self.independent_sets().into_iter().filter(|&s| size(s) == r).collect()
    }

    /// Inclusion-maximal independent sets; these are the bases exactly when
    /// the system is pure.
    pub fn maximal_independent_sets(&self) -> Vec<Subset> {
        let ground = self.ground();
        let mut out: Vec<Subset> = self
            .independent_sets()
            .into_iter()
            .filter(|&s| {
                elements(ground & !s).all(|e| !self.indep[(s | 1 << e) as usize])
            })
            .collect();
        sort_canonical(&mut out);
        out
    }

    pub fn circuits(&self) -> Clutter {
        let mut members: Vec<Subset> = (1..self.indep.len() as u32)
            .filter(|&s| {
                !self.indep[s as usize] && elements(s).all(|e| self.indep[(s & !(1 << e)) as usize])
            })
            .collect();
        sort_canonical(&mut members);
        Clutter {
            labels: self.labels.clone(),
            members,
        }
    }

    pub fn loops(&self) -> Vec<usize> {
        (0..self.n()).filter(|&e| !self.indep[1 << e]).collect()
    }

    /// Two-element circuits.
    pub fn parallel_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n() {
            for b in a + 1..self.n() {
                let s = 1 << a | 1 << b;
                if !self.indep[s] && self.indep[1 << a] && self.indep[1 << b] {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_simple(&self) -> bool {
        self.loops().is_empty() && self.parallel_pairs().is_empty()
    }

    /// All maximal independent sets have the same size.
    pub fn is_pure(&self) -> bool {
        let r = self.full_rank();
        self.maximal_independent_sets().iter().all(|&b| size(b) == r)
    }

    /// Whether `(i1, i2)` violates augmentation.
    pub fn augmentation_fails(&self, i1: Subset, i2: Subset) -> bool {
        self.is_independent(i1)
            && self.is_independent(i2)
            && size(i1) < size(i2)
            && elements(i2 & !i1).all(|e| !self.is_independent(i1 | 1 << e))
    }

    /// Exhaustive (I3) check, plus one (R3) witness for non-matroids on small ground sets.
    pub fn check_matroid(&self) -> MatroidReport {
        let ground = self.ground();
        let mut violations = Vec::new();
        let mut is_matroid = true;
        for i1 in self.independent_sets() {
            let extend = elements(ground & !i1)
                .filter(|&e| self.is_independent(i1 | 1 << e))
                .fold(0, |acc, e| acc | 1 << e);
            let rest = ground & !extend;
            if self.rank(rest) <= size(i1) {
                continue;
            }
            is_matroid = false;
            if violations.len() < MAX_VIOLATIONS {
                let i2 = self
                    .independent_sets()
                    .into_iter()
                    .find(|&s| size(s) == size(i1) + 1 && s & rest == s)
                    .expect("rank(rest) exceeds |I1|");
                violations.push(Violation::Augmentation { i1, i2 });
            } else {
                break;
            }
        }
        if !is_matroid && self.n() <= MAX_SUBMODULAR_SEARCH {
            if let Some((x, y)) = self.submodularity_witness() {
                violations.push(Violation::Submodularity { x, y });
            }
        }
        MatroidReport {
            is_matroid,
            violations,
            rank: self.full_rank(),
            is_simple: self.is_simple(),
            loops: self.loops(),
            parallel_pairs: self.parallel_pairs(),
        }
    }

    /// Some `X, Y` with `r(X ∪ Y) + r(X ∩ Y) > r(X) + r(Y)`.
    pub fn submodularity_witness(&self) -> Option<(Subset, Subset)> {
        let all = self.indep.len() as u32;
        (0..all).find_map(|x| {
            (x + 1..all)
                .find(|&y| self.rank(x | y) + self.rank(x & y) > self.rank(x) + self.rank(y))
                .map(|y| (x, y))
        })
    }

    /// `I* = {X : r(E ∖ X) = r(E)}`.
    pub fn dual_system(&self) -> Self {
        let ground = self.ground();
        let r = self.full_rank();
        let indep = (0..self.indep.len() as u32)
            .map(|s| self.rank(ground & !s) == r)
            .collect();
        Self::from_indep(self.labels.clone(), indep)
    }

    /// `M \ T` on the ground set `E ∖ T`.
    pub fn delete(&self, t: Subset) -> Self {
        Self::from_circuits(&self.circuits().delete(t))
    }

    /// `M / T` through the circuit clutter; `T` must be independent.
    pub fn contract(&self, t: Subset) -> Result<Self> {
        Ok(Self::from_circuits(&self.circuits().contract(t)?))
    }

    /// Same family with new labels.
    pub fn relabel(&self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} elements",
                labels.len(),
                self.n()
            )));
        }
        check_labels(&labels)?;
        Ok(IndependenceSystem {
            labels,
            indep: self.indep.clone(),
            rank: self.rank.clone(),
        })
    }

    /// Uniform systems `U_{k,n}` are recognised by their family alone.
    pub fn uniform_rank(&self) -> Option<usize> {
        let k = self.full_rank();
        (0..self.indep.len() as u32)
            .all(|s| self.indep[s as usize] == (size(s) <= k))
            .then_some(k)
    }

    /// A bijection `φ` (as `φ[i]` = image of element `i`) carrying the
    /// independent sets of `self` onto those of `other`.
    pub fn is_isomorphic(&self, other: &Self) -> Result<Option<Vec<usize>>> {
        let n = self.n();
        if n != other.n() || self.full_rank() != other.full_rank() {
            return Ok(None);
        }
        if let (Some(a), Some(b)) = (self.uniform_rank(), other.uniform_rank()) {
            return Ok((a == b).then(|| (0..n).collect()));
        }
        if n > MAX_ISO_GROUND {
            return Err(Error::GroundSetTooLarge(n, MAX_ISO_GROUND));
        }
        let c1 = self.circuits();
        let c2 = other.circuits();
        if c1.len() != c2.len() {
            return Ok(None);
        }
        let sig1 = signatures(n, &c1.members);
        let sig2 = signatures(n, &c2.members);
        let mut s1 = sig1.clone();
        let mut s2 = sig2.clone();
        s1.sort();
        s2.sort();
        if s1 != s2 {
            return Ok(None);
        }
        // Assign the rarest signatures first.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&e| (sig1.iter().filter(|s| **s == sig1[e]).count(), e));
        let search = IsoSearch {
            order,
            sig1,
            sig2,
            circ1: c1.members.iter().copied().collect(),
            circ2: c2.members.iter().copied().collect(),
            by_elem1: by_element(n, &c1.members),
            by_elem2: by_element(n, &c2.members),
        };
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if search.extend(0, &mut map, &mut used) {
            debug_assert!((0..self.indep.len() as u32).all(|s| {
                let image = elements(s).fold(0u32, |acc, e| acc | 1 << map[e]);
                self.is_independent(s) == other.is_independent(image)
            }));
            Ok(Some(map))
        } else {
            Ok(None)
        }
    }

    pub fn to_export(&self) -> SystemExport {
        let report = self.check_matroid();
        let conv = |s: Subset| self.subset_names(s);
        SystemExport {
            ground: self.labels.clone(),
            independent: self.independent_sets().into_iter().map(conv).collect(),
            circuits: self.circuits().member_names(),
            rank: report.rank,
            is_matroid: report.is_matroid,
            violations: report
                .violations
                .iter()
                .map(|v| match *v {
                    Violation::Augmentation { i1, i2 } => ViolationExport::Augmentation {
                        i1: conv(i1),
                        i2: conv(i2),
                    },
                    Violation::Submodularity { x, y } => ViolationExport::Submodularity {
                        x: conv(x),
                        y: conv(y),
                    },
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_export()).expect("export serializes")
    }

    /// Rebuild from the `independent` field of an export.
    pub fn from_export(export: &SystemExport) -> Result<Self> {
        let labels = export.ground.clone();
        check_labels(&labels)?;
        let mut family = HashSet::new();
        for set in &export.independent {
            family.insert(parse_labels(&labels, &set.join(","))?);
        }
        Self::from_family(labels, |s| family.contains(&s))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let export: SystemExport = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            col: e.column(),
            msg: e.to_string(),
        })?;
        Self::from_export(&export)
    }
}

fn by_element(n: usize, circuits: &[Subset]) -> Vec<Vec<Subset>> {
    (0..n)
        .map(|e| circuits.iter().copied().filter(|&c| c >> e & 1 == 1).collect())
        .collect()
}

type Signature = (bool, usize, Vec<usize>);

fn signatures(n: usize, circuits: &[Subset]) -> Vec<Signature> {
    (0..n)
        .map(|e| {
            let mut sizes: Vec<usize> = circuits
                .iter()
                .filter(|&&c| c >> e & 1 == 1)
                .map(|&c| size(c))
                .collect();
            sizes.sort_unstable();
            let is_loop = circuits.contains(&(1 << e));
            (is_loop, sizes.len(), sizes)
        })
        .collect()
}

struct IsoSearch {
    order: Vec<usize>,
    sig1: Vec<Signature>,
    sig2: Vec<Signature>,
    circ1: HashSet<Subset>,
    circ2: HashSet<Subset>,
    by_elem1: Vec<Vec<Subset>>,
    by_elem2: Vec<Vec<Subset>>,
}

impl IsoSearch {
    fn extend(&self, depth: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        let Some(&e) = self.order.get(depth) else {
            return true;
        };
        for f in 0..map.len() {
            if used[f] || self.sig1[e] != self.sig2[f] {
                continue;
            }
            map[e] = f;
            used[f] = true;
            if self.consistent(e, f, map, used) && self.extend(depth + 1, map, used) {
                return true;
            }
            map[e] = usize::MAX;
            used[f] = false;
        }
        false
    }

    /// Circuits through the new pair, inside the mapped region, correspond.
    fn consistent(&self, e: usize, f: usize, map: &[usize], used: &[bool]) -> bool {
        let domain: Subset = (0..map.len())
            .filter(|&i| map[i] != usize::MAX)
            .fold(0, |acc, i| acc | 1 << i);
        let image: Subset = (0..used.len()).filter(|&i| used[i]).fold(0, |acc, i| acc | 1 << i);
        let forward = |c: Subset| elements(c).fold(0u32, |acc, i| acc | 1 << map[i]);
        let mut inverse = vec![usize::MAX; map.len()];
        for (i, &m) in map.iter().enumerate() {
            if m != usize::MAX {
                inverse[m] = i;
            }
        }
        let backward = |c: Subset| elements(c).fold(0u32, |acc, i| acc | 1 << inverse[i]);
        self.by_elem1[e]
            .iter()
            .filter(|&&c| c & domain == c)
            .all(|&c| self.circ2.contains(&forward(c)))
            && self.by_elem2[f]
                .iter()
                .filter(|&&c| c & image == c)
                .all(|&c| self.circ1.contains(&backward(c)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemExport {
    pub ground: Vec<String>,
    pub independent: Vec<Vec<String>>,
    pub circuits: Vec<Vec<String>>,
    pub rank: usize,
    pub is_matroid: bool,
    pub violations: Vec<ViolationExport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ViolationExport {
    Augmentation { i1: Vec<String>, i2: Vec<String> },
    Submodularity { x: Vec<String>, y: Vec<String> },
}
