//! Linear codes `C ≤ R^E` and the independence systems `M(C)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::indepsys::{elements, minimal_sets, Clutter, IndependenceSystem, Subset};
use crate::limits;
use crate::linalg::{Matrix, Systematic};
use crate::modindep::{psi_member, scale_vec, MuPath, Submodule};
use crate::rings::{Elem, Ring};

/// Largest set searched over all orderings by [`Code::contract`].
pub const MAX_CONTRACT_SET: usize = 6;

/// A code with its full codeword set and a minimal generator matrix.
#[derive(Clone, Debug)]
pub struct Code {
    gen: Matrix,
    words: Submodule,
    systematic: Option<Systematic>,
}

impl PartialEq for Code {
    fn eq(&self, other: &Self) -> bool {
        self.gen.labels() == other.gen.labels() && self.words == other.words
    }
}

impl Eq for Code {}

impl Code {
    /// The row span of `g`; rows are reduced to a minimal generating set.
    pub fn from_matrix(g: &Matrix) -> Result<Code> {
        let words = Submodule::span(g.ring(), g.ncols(), g.rows())?;
        Code::from_submodule(g.ring(), g.labels().to_vec(), words)
    }

    pub fn from_submodule(ring: &Arc<Ring>, labels: Vec<String>, words: Submodule) -> Result<Code> {
        let rows = words.minimal_generators()?;
        let gen = Matrix::new(ring.clone(), labels, rows)?;
        let k = gen.nrows() as u32;
        let free = (ring.size() as u64).checked_pow(k) == Some(words.len() as u64);
        let systematic = if free {
            Some(gen.systematic_form()?)
        } else {
            None
        };
        Ok(Code {
            gen,
            words,
            systematic,
        })
    }

    /// `{0} ≤ R^E`.
    pub fn zero(ring: &Arc<Ring>, labels: Vec<String>) -> Result<Code> {
        let words = Submodule::zero(ring, labels.len())?;
        Code::from_submodule(ring, labels, words)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.gen.ring()
    }

    pub fn labels(&self) -> &[String] {
        self.gen.labels()
    }

    pub fn len(&self) -> usize {
        self.gen.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.gen.ncols() == 0
    }

    /// Generator matrix with `μ(C)` rows.
    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn words(&self) -> &Submodule {
        &self.words
    }

    /// Number of codewords.
    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn mu(&self) -> usize {
        self.gen.nrows()
    }

    /// `C ≅ R^{μ(C)}`.
    pub fn is_free(&self) -> bool {
        self.systematic.is_some()
    }

    pub fn systematic(&self) -> Option<&Systematic> {
        self.systematic.as_ref()
    }

    pub fn contains(&self, word: &[Elem]) -> bool {
        self.words.contains(word)
    }

    pub fn parse_subset(&self, spec: &str) -> Result<Subset> {
        Ok(self.gen.parse_subset(spec)?.iter().fold(0, |acc, &i| acc | 1 << i))
    }

    pub fn matroid(&self) -> Result<IndependenceSystem> {
        IndependenceSystem::from_matrix(&self.gen)
    }

    pub fn matroid_with(&self, path: MuPath) -> Result<IndependenceSystem> {
        IndependenceSystem::from_matrix_with(&self.gen, path)
    }

    /// `C⊥`, from the systematic form when free and by enumeration otherwise.
    pub fn dual(&self) -> Result<Code> {
        match &self.systematic {
            Some(_) => Code::from_matrix(&self.parity_check()?),
            None => self.dual_enumerated(),
        }
    }

    /// Parity-check matrix `[−A^⊤ | I]` mapped back to the original column order.
    pub fn parity_check(&self) -> Result<Matrix> {
        let s = self.systematic.as_ref().ok_or(Error::NotFree)?;
        let r = self.ring();
        let n = self.len();
        let k = s.pivots.len();
        let a = s.a_block();
        let mut rows = vec![vec![Elem::ZERO; n]; n - k];
        for (i, row) in rows.iter_mut().enumerate() {
            for j in 0..k {
                row[s.perm[j]] = r.neg(a[j][i]);
            }
            row[s.perm[k + i]] = Elem::ONE;
        }
        Matrix::new(r.clone(), self.labels().to_vec(), rows)
    }

    /// `C⊥` by depth-first search over `R^E`, pruned by the span of the
    /// remaining generator-matrix columns.
    pub fn dual_enumerated(&self) -> Result<Code> {
        let r = self.ring().clone();
        let n = self.len();
        let ambient = (r.size() as u64).checked_pow(n as u32);
        let limit = limits::max_search();
        if ambient.map_or(true, |a| a > limit) {
            return Err(Error::SearchSpaceTooLarge(limit));
        }
        let k = self.mu();
        let cols = self.gen.columns();
        let mut suffix = vec![Submodule::zero(&r, k)?];
        for j in (0..n).rev() {
            let mut s = suffix.last().expect("nonempty").clone();
            s.extend(&cols[j])?;
            suffix.push(s);
        }
        suffix.reverse();
        let mut keys = Vec::new();
        let mut syndrome = vec![Elem::ZERO; k];
        dfs(&r, &cols, &suffix[1..], 0, 0, &mut syndrome, &mut keys);
        let words = Submodule::from_closed_keys(&r, n, keys)?;
        Code::from_submodule(&r, self.labels().to_vec(), words)
    }

    /// `C^X`: delete the coordinates in `X`.
    pub fn puncture(&self, x: Subset) -> Result<Code> {
        let cols: Vec<usize> = elements(x).collect();
        Code::from_matrix(&self.gen.delete_columns(&cols))
    }

    /// `C_X`: codewords vanishing on `X`, with those coordinates deleted.
    pub fn shorten(&self, x: Subset) -> Result<Code> {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| x >> i & 1 == 0).collect();
        let codec = Submodule::zero(self.ring(), keep.len())?.codec();
        let keys: Vec<u64> = self
            .words
            .elements()
            .filter(|w| elements(x).all(|i| w[i] == Elem::ZERO))
            .map(|w| codec.encode(&keep.iter().map(|&i| w[i]).collect::<Vec<_>>()))
            .collect();
        let words = Submodule::from_closed_keys(self.ring(), keep.len(), keys)?;
        let labels = keep.iter().map(|&i| self.labels()[i].clone()).collect();
        Code::from_submodule(self.ring(), labels, words)
    }

    /// The generator matrix `G_{e}` of `C_{e}` built by a minimal-generator
    /// reduction on `e`.
    pub fn shortening_generator(&self, e: usize) -> Result<Matrix> {
        let r = self.ring();
        let theta = r.theta()?;
        let g0 = self.gen.minimal_generator_reduction(e)?;
        let pivot = (0..g0.nrows())
            .find(|&i| g0.get(i, e) != Elem::ZERO)
            .expect("reduced column is nonzero");
        let (u, t) = r.unit_factor(g0.get(pivot, e))?.expect("nonzero pivot");
        let c = r.mul(r.pow(theta, r.nu() - t), r.inverse(u).expect("unit"));
        let reduced = g0.delete_columns(&[e]);
        let mut rows = vec![scale_vec(r, c, &reduced.rows()[pivot])];
        rows.extend(
            (0..reduced.nrows())
                .filter(|&i| i != pivot)
                .map(|i| reduced.rows()[i].clone()),
        );
        Matrix::new(r.clone(), reduced.labels().to_vec(), rows)
    }

    /// `t` with `pr_e(C) = ⟨θ^t⟩`.
    pub fn projection_exponent(&self, e: usize) -> Result<u32> {
        let r = self.ring();
        r.theta()?;
        let col = self.gen.column(e);
        let mut t = None;
        for x in col.into_iter().filter(|&x| x != Elem::ZERO) {
            let o = r.ord_theta(x)?;
            t = Some(t.map_or(o, |b: u32| b.min(o)));
        }
        t.ok_or_else(|| Error::ZeroProjection(self.labels()[e].clone()))
    }

    /// A codeword with `c_e = uθ^t` and all coordinates in `⟨θ^t⟩`, if any.
    pub fn is_contractible(&self, e: usize) -> Result<Option<Vec<Elem>>> {
        let t = self.projection_exponent(e)?;
        let r = self.ring();
        let ord = |x: Elem| r.ord_theta(x).expect("chain ring");
        Ok(self
            .words
            .elements()
            .find(|w| ord(w[e]) == t && w.iter().all(|&x| ord(x) >= t)))
    }

    /// `C_X` together with an ordering of `X` under which every step is
    /// contractible. Orderings are tried in lexicographic order.
    pub fn contract(&self, x: Subset) -> Result<(Code, Vec<String>)> {
        let items: Vec<usize> = elements(x).collect();
        if items.len() > MAX_CONTRACT_SET {
            return Err(Error::SearchSpaceTooLarge(MAX_CONTRACT_SET as u64));
        }
        if items.is_empty() {
            return Ok((self.clone(), Vec::new()));
        }
        self.ring().theta()?;
        let labels: Vec<String> = items.iter().map(|&i| self.labels()[i].clone()).collect();
        let mut perm: Vec<usize> = (0..items.len()).collect();
        loop {
            let order: Vec<String> = perm.iter().map(|&i| labels[i].clone()).collect();
            if let Some(code) = self.contract_in_order(&order)? {
                return Ok((code, order));
            }
            if !next_permutation(&mut perm) {
                return Err(Error::NotContractible);
            }
        }
    }

    fn contract_in_order(&self, order: &[String]) -> Result<Option<Code>> {
        let mut cur = self.clone();
        for label in order {
            let e = cur.gen.label_index(label)?;
            match cur.is_contractible(e) {
                Ok(Some(_)) => cur = cur.shorten(1 << e)?,
                Ok(None) | Err(Error::ZeroProjection(_)) => return Ok(None),
                Err(err) => return Err(err),
            }
        }
        Ok(Some(cur))
    }

    /// Circuits of `M(C)` as the minimal supports of dual codewords with a
    /// unit coordinate.
    pub fn circuits_via_dual(&self) -> Result<Clutter> {
        let dual = self.dual()?;
        let r = self.ring();
        let supports = dual
            .words
            .elements()
            .filter(|w| psi_member(r, w))
            .map(|w| {
                w.iter()
                    .enumerate()
                    .filter(|(_, &x)| x != Elem::ZERO)
                    .fold(0 as Subset, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        Clutter::new(self.labels().to_vec(), minimal_sets(supports))
    }
}

fn dfs(
    r: &Ring,
    cols: &[Vec<Elem>],
    suffix: &[Submodule],
    j: usize,
    prefix: u64,
    syndrome: &mut [Elem],
    out: &mut Vec<u64>,
) {
    if j == cols.len() {
        out.push(prefix);
        return;
    }
    let base = r.size() as u64;
    let saved = syndrome.to_vec();
    for x in r.elements() {
        for (s, (&old, &g)) in syndrome.iter_mut().zip(saved.iter().zip(&cols[j])) {
            *s = r.add(old, r.mul(x, g));
        }
        if suffix[j].contains(syndrome) {
            dfs(r, cols, suffix, j + 1, prefix * base + x.index() as u64, syndrome, out);
        }
    }
    syndrome.copy_from_slice(&saved);
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::make_ring;

    fn code(spec: &str, rows: &[&[usize]]) -> Code {
        let r = make_ring(spec).unwrap();
        let rows: Vec<Vec<usize>> = rows.iter().map(|x| x.to_vec()).collect();
        Code::from_matrix(&Matrix::from_indices(&r, &rows).unwrap()).unwrap()
    }

    fn vamos() -> Code {
        let g = Matrix::parse(
            "ring z:8\ncols a b c d e f g h\n1 0 0 1 0 1 2 1\n0 1 0 1 0 1 3 2\n0 0 1 1 0 0 1 7\n0 0 0 0 1 1 4 4\n",
        )
        .unwrap();
        Code::from_matrix(&g).unwrap()
    }

    #[test]
    fn from_matrix_examples() {
        let c = code("z:4", &[&[2, 1, 1], &[0, 0, 2]]);
        assert_eq!(c.mu(), 2);
        assert_eq!(c.size(), 8);
        assert!(!c.is_free());
        let redundant = code("z:4", &[&[2, 1, 1], &[0, 0, 2], &[2, 1, 3]]);
        assert_eq!(redundant, c);
        assert_eq!(redundant.generator().nrows(), 2);
        let v = vamos();
        assert!(v.is_free());
        assert_eq!(v.mu(), 4);
        assert_eq!(v.size(), 8usize.pow(4));
    }

    #[test]
    fn dual_examples() {
        let c = code("z:4", &[&[1, 2, 0], &[0, 2, 2]]);
        assert_eq!(c.dual().unwrap(), code("z:4", &[&[2, 1, 1], &[0, 0, 2]]));
        let v = vamos();
        let d = v.dual().unwrap();
        assert!(d.is_free());
        assert_eq!(d.mu(), 4);
        let h = v.parity_check().unwrap();
        let gh = v.generator().mul(&h.transpose()).unwrap();
        assert!(gh.is_zero());
        let full = Code::from_matrix(&Matrix::identity(&make_ring("z:4").unwrap(), 3)).unwrap();
        assert_eq!(full.dual().unwrap().size(), 1);
        assert_eq!(full.dual_enumerated().unwrap().size(), 1);
    }

    #[test]
    fn dual_of_zero_is_everything() {
        let r = make_ring("z:4").unwrap();
        let z = Code::zero(&r, Matrix::default_labels(3)).unwrap();
        assert_eq!(z.dual().unwrap().size(), 64);
        assert_eq!(z.dual_enumerated().unwrap().size(), 64);
    }

    #[test]
    fn shorten_examples() {
        let c = code("z:4", &[&[2, 1, 0, 2], &[0, 0, 1, 2]]);
        let s = c.shorten(1 << 3).unwrap();
        let expect = Matrix::from_indices_labeled(
            c.ring(),
            Matrix::default_labels(3),
            &[vec![2, 1, 1], vec![0, 0, 2]],
        )
        .unwrap();
        assert_eq!(s, Code::from_matrix(&expect).unwrap());

        let c = code("z:4", &[&[2, 1], &[0, 2]]);
        let s = c.shorten(1).unwrap();
        assert_eq!(s.labels(), &["2"]);
        let expect = Matrix::from_indices_labeled(c.ring(), vec!["2".into()], &[vec![2]]).unwrap();
        assert_eq!(s, Code::from_matrix(&expect).unwrap());
        assert_eq!(c.puncture(0).unwrap(), c);
    }

    #[test]
    fn shortening_generator_matches_shorten() {
        let c = code("z:4", &[&[2, 1, 0, 2], &[0, 0, 1, 2]]);
        for e in 0..4 {
            let g = c.shortening_generator(e).unwrap();
            assert_eq!(Code::from_matrix(&g).unwrap(), c.shorten(1 << e).unwrap(), "e={e}");
        }
    }

    #[test]
    fn contractibility() {
        let c = code("z:4", &[&[2, 1], &[0, 2]]);
        assert_eq!(c.is_contractible(0).unwrap(), None);
        assert_eq!(c.contract(1).unwrap_err(), Error::NotContractible);
        let v = vamos();
        let w = v.is_contractible(0).unwrap().unwrap();
        assert!(v.ring().is_unit(w[0]));
        let (empty, order) = v.contract(0).unwrap();
        assert_eq!(empty, v);
        assert!(order.is_empty());
        let r = make_ring("table:f2xy_xx_yy").unwrap();
        let t = Code::from_matrix(&Matrix::identity(&r, 2)).unwrap();
        assert_eq!(t.is_contractible(0).unwrap_err(), Error::NotChainRing);
        let z = code("z:4", &[&[0, 1]]);
        assert_eq!(z.is_contractible(0).unwrap_err(), Error::ZeroProjection("1".into()));
    }

    #[test]
    fn vamos_contract_a() {
        let v = vamos();
        let (c, order) = v.contract(1).unwrap();
        assert_eq!(order, vec!["a"]);
        let m = v.matroid().unwrap();
        assert_eq!(c.matroid().unwrap(), m.contract(1).unwrap());
    }

    #[test]
    fn circuits_via_dual_non_matroid() {
        let c = code("z:4", &[&[2, 1, 1], &[0, 0, 2]]);
        let circ = c.circuits_via_dual().unwrap();
        assert_eq!(circ, c.matroid().unwrap().circuits());
    }

    #[test]
    fn permutations_in_order() {
        let mut p = vec![0, 1, 2];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![0, 2, 1]);
        assert_eq!(seen[5], vec![2, 1, 0]);
    }
}
