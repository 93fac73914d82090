//! Matrices over finite local rings.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rings::{make_ring, Elem, Ring};

/// A `k × |E|` matrix with labelled columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: Arc<Ring>,
    labels: Vec<String>,
    rows: Vec<Vec<Elem>>,
}

/// Elementary row operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowOp {
    Swap(usize, usize),
    /// Multiply a row by a unit.
    Scale(usize, Elem),
    /// `row[target] += factor * row[source]`.
    AddMultiple { target: usize, source: usize, factor: Elem },
}

/// Smith normal form `P A Q = D` over a chain ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub p: Matrix,
    pub q: Matrix,
    pub d: Matrix,
    /// Exponents of the nonzero diagonal entries `θ^λ`, nondecreasing.
    pub lambdas: Vec<u32>,
}

impl Snf {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.lambdas.len()
    }
}

/// A free row span in systematic form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Systematic {
    /// Pivot columns (original indices), in row order.
    pub pivots: Vec<usize>,
    /// Column order of `matrix`: pivots first, then the rest in original order.
    pub perm: Vec<usize>,
    /// `[I_r | A]` with columns permuted by `perm` (labels follow).
    pub matrix: Matrix,
    /// The same rows in the original column order.
    pub reduced: Matrix,
}

impl Systematic {
    /// The `r × (n − r)` block `A`.
    pub fn a_block(&self) -> Vec<Vec<Elem>> {
        let r = self.pivots.len();
        self.matrix.rows.iter().map(|row| row[r..].to_vec()).collect()
    }
}

impl Matrix {
    pub fn new(ring: Arc<Ring>, labels: Vec<String>, rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != labels.len() {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    labels.len()
                )));
            }
            if let Some(e) = row.iter().find(|e| e.index() >= ring.size()) {
                return Err(Error::UnknownElement(e.index().to_string()));
            }
        }
        Ok(Matrix { ring, labels, rows })
    }

    /// Labels `1..=n`.
    pub fn default_labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    /// Build from canonical indices with labels `1..=n`.
    pub fn from_indices(ring: &Arc<Ring>, rows: &[Vec<usize>]) -> Result<Matrix> {
        let n = rows.first().map_or(0, Vec::len);
        Matrix::from_indices_labeled(ring, Matrix::default_labels(n), rows)
    }

    pub fn from_indices_labeled(
        ring: &Arc<Ring>,
        labels: Vec<String>,
        rows: &[Vec<usize>],
    ) -> Result<Matrix> {
        let rows = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&i| {
                        if i < ring.size() {
                            Ok(ring.elem(i))
                        } else {
                            Err(Error::UnknownElement(i.to_string()))
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(ring.clone(), labels, rows)
    }

    /// Build from element tokens (as they would appear in a matrix file).
    pub fn from_tokens(ring: &Arc<Ring>, labels: &[&str], rows: &[&[&str]]) -> Result<Matrix> {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|t| ring.parse_elem(t)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(ring.clone(), labels.iter().map(|s| s.to_string()).collect(), rows)
    }

    pub fn identity(ring: &Arc<Ring>, k: usize) -> Matrix {
        let rows = (0..k)
            .map(|i| (0..k).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }).collect())
            .collect();
        Matrix {
            ring: ring.clone(),
            labels: Matrix::default_labels(k),
            rows,
        }
    }

    pub fn zeros(ring: &Arc<Ring>, k: usize, n: usize) -> Matrix {
        Matrix {
            ring: ring.clone(),
            labels: Matrix::default_labels(n),
            rows: vec![vec![Elem::ZERO; n]; k],
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.labels.len()
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.rows[i][j]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Elem>> {
        (0..self.ncols()).map(|j| self.column(j)).collect()
    }

    /// Entries as canonical indices, for compact comparisons.
    pub fn to_indices(&self) -> Vec<Vec<usize>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|e| e.index()).collect())
            .collect()
    }

    pub fn label_index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Parse a comma-separated label list into sorted column indices.
    pub fn parse_subset(&self, spec: &str) -> Result<Vec<usize>> {
        let mut out: Vec<usize> = spec
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| self.label_index(s))
            .collect::<Result<_>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Matrix> {
        if labels.len() != self.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} columns",
                labels.len(),
                self.ncols()
            )));
        }
        self.labels = labels;
        Matrix::new(self.ring, self.labels, self.rows)
    }

    /// Columns in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            labels: cols.iter().map(|&j| self.labels[j].clone()).collect(),
            rows: self
                .rows
                .iter()
                .map(|r| cols.iter().map(|&j| r[j]).collect())
                .collect(),
        }
    }

    pub fn delete_columns(&self, cols: &[usize]) -> Matrix {
        let keep: Vec<usize> = (0..self.ncols()).filter(|j| !cols.contains(j)).collect();
        self.select_columns(&keep)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            labels: self.labels.clone(),
            rows: rows.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            labels: Matrix::default_labels(self.nrows()),
            rows: self.columns(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.ncols() != other.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.ncols(),
                other.nrows(),
                other.ncols()
            )));
        }
        let r = &self.ring;
        let rows = self
            .rows
            .iter()
            .map(|row| {
                (0..other.ncols())
                    .map(|j| {
                        row.iter()
                            .zip(&other.rows)
                            .fold(Elem::ZERO, |acc, (&a, orow)| r.add(acc, r.mul(a, orow[j])))
                    })
                    .collect()
            })
            .collect();
        Ok(Matrix {
            ring: self.ring.clone(),
            labels: other.labels.clone(),
            rows,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|&e| e == Elem::ZERO)
    }

    pub fn is_identity(&self) -> bool {
        self.nrows() == self.ncols()
            && self.rows.iter().enumerate().all(|(i, row)| {
                row.iter()
                    .enumerate()
                    .all(|(j, &e)| e == if i == j { Elem::ONE } else { Elem::ZERO })
            })
    }

    /// Apply a sequence of elementary row operations.
    pub fn apply_ops(&self, ops: &[RowOp]) -> Result<Matrix> {
        let mut out = self.clone();
        for &op in ops {
            out.apply_op(op)?;
        }
        Ok(out)
    }

    pub fn apply_op(&mut self, op: RowOp) -> Result<()> {
        let k = self.nrows();
        let check = |i: usize| if i < k { Ok(()) } else { Err(Error::RowOutOfRange(i)) };
        match op {
            RowOp::Swap(i, j) => {
                check(i)?;
                check(j)?;
                self.rows.swap(i, j);
            }
            RowOp::Scale(i, u) => {
                check(i)?;
                if !self.ring.is_unit(u) {
                    return Err(Error::ScaleByNonUnit(self.ring.name(u).to_string()));
                }
                scale_row(&self.ring, &mut self.rows[i], u);
            }
            RowOp::AddMultiple {
                target,
                source,
                factor,
            } => {
                check(target)?;
                check(source)?;
                if target == source {
                    return Err(Error::DimensionMismatch(
                        "add-multiple needs two distinct rows".into(),
                    ));
                }
                let src = self.rows[source].clone();
                add_multiple(&self.ring, &mut self.rows[target], &src, factor);
            }
        }
        Ok(())
    }

    /// Determinant. Cofactor expansion up to 5×5, division-free Berkowitz above.
    pub fn det(&self) -> Result<Elem> {
        if self.nrows() != self.ncols() {
            return Err(Error::NotSquare {
                rows: self.nrows(),
                cols: self.ncols(),
            });
        }
        if self.nrows() <= 5 {
            Ok(cofactor_det(&self.ring, &self.rows))
        } else {
            Ok(berkowitz_det(&self.ring, &self.rows))
        }
    }

    /// Smith normal form over a chain ring.
    pub fn smith_normal_form(&self) -> Result<Snf> {
        let r = &self.ring;
        let theta = r.theta()?;
        let (k, n) = (self.nrows(), self.ncols());
        let mut d = self.rows.clone();
        let mut p = Matrix::identity(r, k).rows;
        let mut q = Matrix::identity(r, n).rows;
        let mut lambdas = Vec::new();
        for s in 0..k.min(n) {
            let mut best: Option<(u32, usize, usize)> = None;
            for (i, row) in d.iter().enumerate().skip(s) {
                for (j, &x) in row.iter().enumerate().skip(s) {
                    if x == Elem::ZERO {
                        continue;
                    }
                    let t = r.ord_theta(x)?;
                    if best.map_or(true, |(bt, _, _)| t < bt) {
                        best = Some((t, i, j));
                    }
                }
            }
            let Some((t, i, j)) = best else { break };
            d.swap(s, i);
            p.swap(s, i);
            for row in d.iter_mut() {
                row.swap(s, j);
            }
            for row in q.iter_mut() {
                row.swap(s, j);
            }
            let (u, _) = r.unit_factor(d[s][s])?.expect("pivot is nonzero");
            let u_inv = r.inverse(u).expect("unit");
            scale_row(r, &mut d[s], u_inv);
            scale_row(r, &mut p[s], u_inv);
            let pivot = r.pow(theta, t);
            debug_assert_eq!(d[s][s], pivot);
            for i in s + 1..k {
                if d[i][s] == Elem::ZERO {
                    continue;
                }
                let c = r.neg(r.divide(d[i][s], pivot).expect("minimal ord divides"));
                let (ds, ps) = (d[s].clone(), p[s].clone());
                add_multiple(r, &mut d[i], &ds, c);
                add_multiple(r, &mut p[i], &ps, c);
            }
            for j in s + 1..n {
                if d[s][j] == Elem::ZERO {
                    continue;
                }
                let c = r.neg(r.divide(d[s][j], pivot).expect("minimal ord divides"));
                for row in d.iter_mut() {
                    row[j] = r.add(row[j], r.mul(c, row[s]));
                }
                for row in q.iter_mut() {
                    row[j] = r.add(row[j], r.mul(c, row[s]));
                }
            }
            lambdas.push(t);
        }
        let wrap = |rows: Vec<Vec<Elem>>, n: usize| Matrix {
            ring: r.clone(),
            labels: Matrix::default_labels(n),
            rows,
        };
        Ok(Snf {
            p: wrap(p, k),
            q: wrap(q, n),
            d: wrap(d, n),
            lambdas,
        })
    }

    /// Systematic form `[I_r | A]` of the row span, or `NotFree`.
    ///
    /// Zero and redundant rows are dropped, so `r` is the rank of the span.
    pub fn systematic_form(&self) -> Result<Systematic> {
        let r = &self.ring;
        if r.is_chain() && self.smith_normal_form()?.lambdas.iter().any(|&l| l > 0) {
            return Err(Error::NotFree);
        }
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for j in 0..self.ncols() {
            let Some(i) = (next..rows.len()).find(|&i| r.is_unit(rows[i][j])) else {
                continue;
            };
            rows.swap(next, i);
            let inv = r.inverse(rows[next][j]).expect("unit");
            scale_row(r, &mut rows[next], inv);
            let pivot_row = rows[next].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != next && row[j] != Elem::ZERO {
                    let c = r.neg(row[j]);
                    add_multiple(r, row, &pivot_row, c);
                }
            }
            pivots.push(j);
            next += 1;
        }
        // Leftover rows have every pivot coordinate zero and no unit entry; a
        // nonzero one would contribute a non-free summand.
        if rows[next..].iter().flatten().any(|&e| e != Elem::ZERO) {
            return Err(Error::NotFree);
        }
        rows.truncate(next);
        let reduced = Matrix {
            ring: r.clone(),
            labels: self.labels.clone(),
            rows,
        };
        let mut perm = pivots.clone();
        perm.extend((0..self.ncols()).filter(|j| !pivots.contains(j)));
        let matrix = reduced.select_columns(&perm);
        Ok(Systematic {
            pivots,
            perm,
            matrix,
            reduced,
        })
    }

    /// Row operations leaving exactly one nonzero entry in column `col`.
    ///
    /// The pivot is an entry of minimal order (the last such row on ties); the
    /// other rows subtract the least multiple that clears the column.
    pub fn minimal_generator_reduction(&self, col: usize) -> Result<Matrix> {
        let r = &self.ring;
        r.theta()?;
        if col >= self.ncols() {
            return Err(Error::UnknownLabel(col.to_string()));
        }
        let mut pivot: Option<(u32, usize)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if row[col] == Elem::ZERO {
                continue;
            }
            let t = r.ord_theta(row[col])?;
            if pivot.map_or(true, |(bt, _)| t <= bt) {
                pivot = Some((t, i));
            }
        }
        let Some((_, pi)) = pivot else {
            return Err(Error::ZeroColumn(self.labels[col].clone()));
        };
        let mut out = self.clone();
        let prow = self.rows[pi].clone();
        for (i, row) in out.rows.iter_mut().enumerate() {
            if i == pi || row[col] == Elem::ZERO {
                continue;
            }
            let c = r.divide(row[col], prow[col]).expect("minimal ord divides");
            add_multiple(r, row, &prow, r.neg(c));
        }
        Ok(out)
    }

    /// Parse the text matrix format.
    pub fn parse(text: &str) -> Result<Matrix> {
        Matrix::parse_with_ring(text, None)
    }

    /// Parse, optionally overriding the ring named in the file. With an
    /// override the `ring` line may be omitted.
    pub fn parse_with_ring(text: &str, ring_override: Option<&str>) -> Result<Matrix> {
        let mut ring: Option<Arc<Ring>> = match ring_override {
            Some(spec) => Some(make_ring(spec)?),
            None => None,
        };
        let mut labels: Option<Vec<String>> = None;
        let mut rows = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let tokens = tokenize(content);
            let (col0, first) = tokens[0];
            let perr = |col: usize, msg: String| Error::Parse {
                line: line_no,
                col,
                msg,
            };
            if labels.is_none() {
                match first {
                    "ring" => {
                        let (col, spec) = tokens
                            .get(1)
                            .copied()
                            .ok_or_else(|| perr(col0 + 4, "missing ring spec".into()))?;
                        if tokens.len() > 2 {
                            return Err(perr(tokens[2].0, "unexpected token after ring spec".into()));
                        }
                        if ring_override.is_none() {
                            if ring.is_some() {
                                return Err(perr(col0, "duplicate ring line".into()));
                            }
                            ring = Some(make_ring(spec).map_err(|e| perr(col, e.to_string()))?);
                        }
                        continue;
                    }
                    "cols" => {
                        if ring.is_none() {
                            return Err(perr(col0, "expected `ring <spec>` before `cols`".into()));
                        }
                        let mut seen = HashSet::new();
                        let mut ls = Vec::new();
                        for &(col, t) in &tokens[1..] {
                            if !seen.insert(t) {
                                return Err(perr(col, format!("duplicate label `{t}`")));
                            }
                            ls.push(t.to_string());
                        }
                        labels = Some(ls);
                        continue;
                    }
                    _ if ring.is_none() => {
                        return Err(perr(col0, "expected `ring <spec>`".into()));
                    }
                    _ => return Err(perr(col0, "expected `cols <label> ...`".into())),
                }
            }
            let ring = ring.as_ref().expect("ring precedes cols");
            let n = labels.as_ref().map_or(0, Vec::len);
            if tokens.len() != n {
                let col = tokens.get(n).map_or(raw.len() + 1, |t| t.0);
                return Err(perr(col, format!("expected {n} entries, found {}", tokens.len())));
            }
            let row = tokens
                .iter()
                .map(|&(col, t)| ring.parse_elem(t).map_err(|e| perr(col, e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        let ring = ring.ok_or(Error::Parse {
            line: 1,
            col: 1,
            msg: "missing `ring` line".into(),
        })?;
        let labels = labels.ok_or(Error::Parse {
            line: text.lines().count().max(1),
            col: 1,
            msg: "missing `cols` line".into(),
        })?;
        Matrix::new(ring, labels, rows)
    }

    /// Serialize in the text matrix format.
    pub fn to_text(&self) -> String {
        let mut out = format!("ring {}\ncols {}\n", self.ring.spec(), self.labels.join(" "));
        let names: Vec<Vec<&str>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&e| self.ring.name(e)).collect())
            .collect();
        let widths: Vec<usize> = (0..self.ncols())
            .map(|j| {
                names
                    .iter()
                    .map(|r| r[j].len())
                    .chain(std::iter::once(1))
                    .max()
                    .unwrap_or(1)
            })
            .collect();
        for row in &names {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(s, &w)| format!("{s:>w$}"))
                .collect();
            out.push_str(cells.join(" ").trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Whitespace-separated tokens with their 1-based byte column.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn scale_row(r: &Ring, row: &mut [Elem], c: Elem) {
    for x in row.iter_mut() {
        *x = r.mul(c, *x);
    }
}

fn add_multiple(r: &Ring, row: &mut [Elem], src: &[Elem], c: Elem) {
    for (x, &s) in row.iter_mut().zip(src) {
        *x = r.add(*x, r.mul(c, s));
    }
}

fn cofactor_det(r: &Ring, m: &[Vec<Elem>]) -> Elem {
    let n = m.len();
    match n {
        0 => Elem::ONE,
        1 => m[0][0],
        _ => {
            let mut acc = Elem::ZERO;
            for j in 0..n {
                if m[0][j] == Elem::ZERO {
                    continue;
                }
                let minor: Vec<Vec<Elem>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &e)| e)
                            .collect()
                    })
                    .collect();
                let term = r.mul(m[0][j], cofactor_det(r, &minor));
                acc = if j % 2 == 0 { r.add(acc, term) } else { r.sub(acc, term) };
            }
            acc
        }
    }
}

/// Berkowitz: characteristic polynomial from leading principal submatrices,
/// using only ring additions and multiplications.
fn berkowitz_det(r: &Ring, m: &[Vec<Elem>]) -> Elem {
    let n = m.len();
    // Coefficients of det(xI - A_k), highest degree first.
    let mut poly = vec![Elem::ONE];
    for k in 1..=n {
        let a = m[k - 1][k - 1];
        let mut toeplitz = vec![Elem::ONE, r.neg(a)];
        // v = M^j c, starting with c = column k-1 above the diagonal.
        let mut v: Vec<Elem> = (0..k - 1).map(|i| m[i][k - 1]).collect();
        for _ in 0..k.saturating_sub(1) {
            let rv = (0..k - 1).fold(Elem::ZERO, |acc, i| r.add(acc, r.mul(m[k - 1][i], v[i])));
            toeplitz.push(r.neg(rv));
            v = (0..k - 1)
                .map(|i| (0..k - 1).fold(Elem::ZERO, |acc, l| r.add(acc, r.mul(m[i][l], v[l]))))
                .collect();
        }
        let next: Vec<Elem> = (0..=k)
            .map(|i| {
                (0..k).filter(|&j| j <= i).fold(Elem::ZERO, |acc, j| {
                    r.add(acc, r.mul(toeplitz[i - j], poly[j]))
                })
            })
            .collect();
        poly = next;
    }
    let c = poly[n];
    if n % 2 == 0 {
        c
    } else {
        r.neg(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u64) -> Arc<Ring> {
        make_ring(&format!("z:{m}")).unwrap()
    }

    fn mat(r: &Arc<Ring>, rows: &[&[usize]]) -> Matrix {
        Matrix::from_indices(r, &rows.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn leibniz(r: &Ring, m: &[Vec<Elem>]) -> Elem {
        fn perms(n: usize) -> Vec<(Vec<usize>, bool)> {
            if n == 0 {
                return vec![(vec![], true)];
            }
            let mut out = Vec::new();
            for (p, even) in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    let moved = n - 1 - pos;
                    out.push((q, even == (moved % 2 == 0)));
                }
            }
            out
        }
        perms(m.len()).into_iter().fold(Elem::ZERO, |acc, (p, even)| {
            let term = p
                .iter()
                .enumerate()
                .fold(Elem::ONE, |t, (i, &j)| r.mul(t, m[i][j]));
            if even {
                r.add(acc, term)
            } else {
                r.sub(acc, term)
            }
        })
    }

    #[test]
    fn swap_rows() {
        let r = z(4);
        let m = Matrix::identity(&r, 2).apply_ops(&[RowOp::Swap(0, 1)]).unwrap();
        assert_eq!(m.to_indices(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn add_multiple_example() {
        let r = z(4);
        let m = mat(&r, &[&[1, 1, 2], &[0, 2, 2]]);
        let op = RowOp::AddMultiple {
            target: 1,
            source: 0,
            factor: r.neg(r.elem(2)),
        };
        assert_eq!(m.apply_ops(&[op]).unwrap().to_indices(), vec![vec![1, 1, 2], vec![2, 0, 2]]);
    }

    #[test]
    fn scale_by_non_unit_rejected() {
        let r = z(4);
        let err = Matrix::identity(&r, 2)
            .apply_ops(&[RowOp::Scale(0, r.elem(2))])
            .unwrap_err();
        assert_eq!(err, Error::ScaleByNonUnit("2".into()));
        assert_eq!(
            Matrix::identity(&r, 2).apply_ops(&[RowOp::Swap(0, 2)]).unwrap_err(),
            Error::RowOutOfRange(2)
        );
    }

    #[test]
    fn det_examples() {
        let r = z(4);
        assert_eq!(mat(&r, &[&[1, 1], &[0, 2]]).det().unwrap(), r.elem(2));
        assert_eq!(mat(&r, &[&[2, 0], &[0, 2]]).det().unwrap(), r.elem(0));
        for k in 0..8 {
            assert_eq!(Matrix::identity(&r, k).det().unwrap(), Elem::ONE);
        }
        assert_eq!(
            mat(&r, &[&[1, 2, 3]]).det().unwrap_err(),
            Error::NotSquare { rows: 1, cols: 3 }
        );
    }

    #[test]
    fn berkowitz_matches_leibniz() {
        use rand::{Rng as _, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for spec in ["z:4", "z:9", "fpu:2,2", "table:f2xy_xx_yy"] {
            let r = make_ring(spec).unwrap();
            for n in 1..=6 {
                for _ in 0..20 {
                    let m: Vec<Vec<Elem>> = (0..n)
                        .map(|_| (0..n).map(|_| r.elem(rng.gen_range(0..r.size()))).collect())
                        .collect();
                    let expect = leibniz(&r, &m);
                    assert_eq!(berkowitz_det(&r, &m), expect, "{spec} n={n}");
                    assert_eq!(cofactor_det(&r, &m), expect, "{spec} n={n}");
                }
            }
        }
    }

    fn check_snf(a: &Matrix) -> Snf {
        let snf = a.smith_normal_form().unwrap();
        let paq = snf.p.mul(a).unwrap().mul(&snf.q).unwrap();
        assert_eq!(paq.rows, snf.d.rows);
        let r = a.ring();
        assert!(r.is_unit(snf.p.det().unwrap()));
        assert!(r.is_unit(snf.q.det().unwrap()));
        let theta = r.theta().unwrap();
        for (i, row) in snf.d.rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let expect = match snf.lambdas.get(i) {
                    Some(&l) if i == j => r.pow(theta, l),
                    _ => Elem::ZERO,
                };
                assert_eq!(x, expect);
            }
        }
        assert!(snf.lambdas.windows(2).all(|w| w[0] <= w[1]));
        snf
    }

    #[test]
    fn snf_examples() {
        let r = z(4);
        let s = check_snf(&mat(&r, &[&[2, 0], &[0, 2]]));
        assert_eq!(s.d.to_indices(), vec![vec![2, 0], vec![0, 2]]);
        let s = check_snf(&mat(&r, &[&[2, 1], &[0, 2]]));
        assert_eq!(s.d.to_indices(), vec![vec![1, 0], vec![0, 0]]);
        assert_eq!(s.lambdas, vec![0]);
        let s = check_snf(&Matrix::identity(&z(8), 4));
        assert!(s.d.is_identity());
    }

    #[test]
    fn snf_requires_chain_ring() {
        let r = make_ring("table:f2xy_xx_yy").unwrap();
        assert_eq!(
            Matrix::identity(&r, 2).smith_normal_form().unwrap_err(),
            Error::NotChainRing
        );
    }

    #[test]
    fn snf_over_field_and_fpu() {
        let r = make_ring("fpu:2,2").unwrap();
        let s = check_snf(&mat(&r, &[&[2, 3, 1], &[0, 2, 0]]));
        assert_eq!(s.rank(), 2);
        let f = z(5);
        let s = check_snf(&mat(&f, &[&[1, 2, 3], &[2, 4, 2]]));
        assert_eq!(s.lambdas, vec![0, 0]);
    }

    #[test]
    fn systematic_vamos_columns() {
        let r = z(8);
        let g = Matrix::parse(
            "ring z:8\ncols a b c d e f g h\n1 0 0 1 0 1 2 1\n0 1 0 1 0 1 3 2\n0 0 1 1 0 0 1 7\n0 0 0 0 1 1 4 4\n",
        )
        .unwrap();
        let s = g.systematic_form().unwrap();
        assert_eq!(s.pivots, vec![0, 1, 2, 4]);
        assert_eq!(s.reduced, g);
        let labels: Vec<&str> = s.matrix.labels().iter().map(String::as_str).collect();
        assert_eq!(labels, ["a", "b", "c", "e", "d", "f", "g", "h"]);
        assert!(s.matrix.select_columns(&[0, 1, 2, 3]).is_identity());
        let _ = r;
    }

    #[test]
    fn systematic_not_free() {
        let r = z(4);
        assert_eq!(
            mat(&r, &[&[1, 2, 0], &[0, 2, 2]]).systematic_form().unwrap_err(),
            Error::NotFree
        );
    }

    #[test]
    fn systematic_drops_redundant_rows() {
        let r = z(4);
        let s = mat(&r, &[&[1, 3, 2], &[0, 0, 0], &[2, 2, 0]]).systematic_form().unwrap();
        assert_eq!(s.matrix.to_indices(), vec![vec![1, 3, 2]]);
    }

    #[test]
    fn systematic_non_chain_ring() {
        let r = make_ring("table:f2xy_xx_yy").unwrap();
        let g = Matrix::from_tokens(
            &r,
            &["1", "2", "3", "4"],
            &[&["1", "0", "0", "y"], &["0", "1", "x+y+xy", "x+y"]],
        )
        .unwrap();
        let s = g.systematic_form().unwrap();
        assert_eq!(s.pivots, vec![0, 1]);
        let x = Matrix::from_tokens(&r, &["1", "2"], &[&["x", "y"]]).unwrap();
        assert_eq!(x.systematic_form().unwrap_err(), Error::NotFree);
    }

    #[test]
    fn minimal_generator_reduction_examples() {
        let r = z(4);
        let g = mat(&r, &[&[1, 1, 2], &[0, 2, 2]]);
        assert_eq!(
            g.minimal_generator_reduction(1).unwrap().to_indices(),
            vec![vec![1, 1, 2], vec![2, 0, 2]]
        );
        assert_eq!(
            g.minimal_generator_reduction(2).unwrap().to_indices(),
            vec![vec![1, 3, 0], vec![0, 2, 2]]
        );
        assert_eq!(g.minimal_generator_reduction(0).unwrap(), g);
        let z = mat(&r, &[&[0, 1], &[0, 2]]);
        assert_eq!(z.minimal_generator_reduction(0).unwrap_err(), Error::ZeroColumn("1".into()));
    }

    #[test]
    fn parse_round_trip_and_errors() {
        let text = "# sample\nring fpu:2,2\n\ncols p q\n1+u u  # trailing\n0 3\n";
        let m = Matrix::parse(text).unwrap();
        assert_eq!(m.to_indices(), vec![vec![3, 2], vec![0, 3]]);
        assert_eq!(Matrix::parse(&m.to_text()).unwrap(), m);

        let err = Matrix::parse("ring z:4\ncols a b\n1 7\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, col: 3, .. }), "{err:?}");
        let err = Matrix::parse("ring z:4\ncols a b\n1 2 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, col: 5, .. }), "{err:?}");
        let err = Matrix::parse("cols a b\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, col: 1, .. }), "{err:?}");
        let err = Matrix::parse("ring z:6\ncols a\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, col: 6, .. }), "{err:?}");
        let err = Matrix::parse("ring z:4\ncols a a\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, col: 8, .. }), "{err:?}");
    }

    #[test]
    fn parse_with_override() {
        let m = Matrix::parse_with_ring("cols a b\n1 3\n", Some("z:8")).unwrap();
        assert_eq!(m.ring().size(), 8);
        let m = Matrix::parse_with_ring("ring z:4\ncols a b\n1 3\n", Some("z:9")).unwrap();
        assert_eq!(m.ring().size(), 9);
    }

    #[test]
    fn table_ring_tokens() {
        let text = "ring table:f2xy_xx_xy_yy\ncols 1 2 3 4\nx y 1+x 1+y\n";
        let m = Matrix::parse(text).unwrap();
        assert_eq!(m.ring().name(m.get(0, 2)), "1+x");
        assert_eq!(Matrix::parse(&m.to_text()).unwrap(), m);
    }
}
