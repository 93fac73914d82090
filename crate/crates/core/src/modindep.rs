//! Submodules of `R^k`, the minimal generator count `μ`, and modular independence.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::limits;
use crate::linalg::Matrix;
use crate::rings::{Elem, Ring};

/// Packs vectors of `R^k` into `u64` keys, most significant coordinate first,
/// so key order is lexicographic order on canonical indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Codec {
    base: u64,
    dim: usize,
}

impl Codec {
    pub fn new(ring: &Ring, dim: usize) -> Result<Codec> {
        let base = ring.size() as u64;
        if base.checked_pow(dim as u32).is_none() {
            return Err(Error::ClosureTooLarge(limits::max_closure()));
        }
        Ok(Codec { base, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `|R|^k`.
    pub fn ambient_size(&self) -> u64 {
        self.base.pow(self.dim as u32)
    }

    pub fn encode(&self, v: &[Elem]) -> u64 {
        debug_assert_eq!(v.len(), self.dim);
        v.iter().fold(0, |acc, e| acc * self.base + e.index() as u64)
    }

    pub fn decode(&self, mut key: u64) -> Vec<Elem> {
        let mut v = vec![Elem::ZERO; self.dim];
        for x in v.iter_mut().rev() {
            *x = Elem::from_key((key % self.base) as u16);
            key /= self.base;
        }
        v
    }
}

/// An explicitly enumerated submodule of `R^k`.
#[derive(Clone, Debug)]
pub struct Submodule {
    ring: Arc<Ring>,
    codec: Codec,
    gens: Vec<Vec<Elem>>,
    keys: Vec<u64>,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.codec == other.codec && self.keys == other.keys && *self.ring == *other.ring
    }
}

impl Eq for Submodule {}

fn add_vec(r: &Ring, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| r.add(x, y)).collect()
}

pub fn scale_vec(r: &Ring, c: Elem, v: &[Elem]) -> Vec<Elem> {
    v.iter().map(|&x| r.mul(c, x)).collect()
}

impl Submodule {
    pub fn zero(ring: &Arc<Ring>, dim: usize) -> Result<Submodule> {
        Ok(Submodule {
            ring: ring.clone(),
            codec: Codec::new(ring, dim)?,
            gens: Vec::new(),
            keys: vec![0],
        })
    }

    /// The submodule generated by `vectors`, each of length `dim`.
    pub fn span(ring: &Arc<Ring>, dim: usize, vectors: &[Vec<Elem>]) -> Result<Submodule> {
        let mut out = Submodule::zero(ring, dim)?;
        for v in vectors {
            if v.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "vector of length {} in R^{dim}",
                    v.len()
                )));
            }
            out.extend(v)?;
        }
        Ok(out)
    }

    /// Rebuild a submodule from its full (closed) key set, choosing
    /// generators greedily in key order.
    pub fn from_closed_keys(ring: &Arc<Ring>, dim: usize, mut keys: Vec<u64>) -> Result<Submodule> {
        keys.sort_unstable();
        keys.dedup();
        let mut out = Submodule::zero(ring, dim)?;
        for &k in &keys {
            if !out.contains_key(k) {
                out.extend(&out.codec.decode(k))?;
            }
        }
        if out.keys != keys {
            return Err(Error::DimensionMismatch("key set is not closed".into()));
        }
        Ok(out)
    }

    /// Add one generator in place: `V ← V + ⟨v⟩`.
    pub fn extend(&mut self, v: &[Elem]) -> Result<()> {
        let r = self.ring.clone();
        self.gens.push(v.to_vec());
        if self.contains(v) {
            return Ok(());
        }
        let mut multiples: Vec<Vec<Elem>> = r.elements().map(|c| scale_vec(&r, c, v)).collect();
        multiples.sort();
        multiples.dedup();
        let limit = limits::max_closure();
        let projected = self.keys.len() as u64 * multiples.len() as u64;
        let mut seen: HashSet<u64> = HashSet::with_capacity(projected.min(limit) as usize);
        for &key in &self.keys {
            let x = self.codec.decode(key);
            for m in &multiples {
                seen.insert(self.codec.encode(&add_vec(&r, &x, m)));
            }
            if seen.len() as u64 > limit {
                return Err(Error::ClosureTooLarge(limit));
            }
        }
        let mut keys: Vec<u64> = seen.into_iter().collect();
        keys.sort_unstable();
        self.keys = keys;
        Ok(())
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn codec(&self) -> Codec {
        self.codec
    }

    pub fn dim(&self) -> usize {
        self.codec.dim
    }

    /// Generators as supplied (possibly redundant).
    pub fn generators(&self) -> &[Vec<Elem>] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.keys.len() == 1
    }

    /// Sorted element keys.
    pub fn keys(&self) -> &[u64] {
        &self.keys
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        self.keys.iter().map(|&k| self.codec.decode(k))
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.keys.binary_search(&self.codec.encode(v)).is_ok()
    }

    pub fn contains_key(&self, key: u64) -> bool {
        self.keys.binary_search(&key).is_ok()
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.keys.iter().all(|&k| other.contains_key(k))
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        let mut out = self.clone();
        for g in &other.gens {
            out.extend(g)?;
        }
        Ok(out)
    }

    pub fn intersection(&self, other: &Submodule) -> Result<Submodule> {
        let keys: Vec<u64> = self
            .keys
            .iter()
            .copied()
            .filter(|&k| other.contains_key(k))
            .collect();
        Submodule::from_closed_keys(&self.ring, self.dim(), keys)
    }

    /// `mV`, generated by the products of ideal generators with generators of `V`.
    pub fn m_times(&self) -> Result<Submodule> {
        let r = &self.ring;
        let mut out = Submodule::zero(r, self.dim())?;
        for g in &self.gens {
            for &a in r.maximal_ideal_generators() {
                out.extend(&scale_vec(r, a, g))?;
            }
        }
        Ok(out)
    }

    /// `log_q(|V| / |mV|)`.
    pub fn mu(&self) -> Result<usize> {
        let mv = self.m_times()?;
        log_q(self.len() as u64 / mv.len() as u64, self.ring.q())
    }

    /// A minimal generating subset of the supplied generators.
    pub fn minimal_generators(&self) -> Result<Vec<Vec<Elem>>> {
        let mut acc = self.m_times()?;
        let mut chosen = Vec::new();
        for g in &self.gens {
            if !acc.contains(g) {
                acc.extend(g)?;
                chosen.push(g.clone());
            }
        }
        Ok(chosen)
    }
}

pub(crate) fn log_q(ratio: u64, q: usize) -> Result<usize> {
    let q = q as u64;
    let mut t = 0;
    let mut power = 1u64;
    while power < ratio {
        power *= q;
        t += 1;
    }
    if power == ratio {
        Ok(t)
    } else {
        Err(Error::NonIntegralDimension(ratio, q as usize))
    }
}

/// Which algorithm computes `μ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MuPath {
    /// Smith normal form on chain rings, enumeration otherwise.
    #[default]
    Auto,
    Snf,
    Enumeration,
}

fn dim_of(vectors: &[Vec<Elem>]) -> Result<usize> {
    let dim = vectors.first().map_or(0, Vec::len);
    if vectors.iter().any(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch("vectors of different lengths".into()));
    }
    Ok(dim)
}

/// Minimal number of generators of `⟨vectors⟩`.
pub fn mu(ring: &Arc<Ring>, vectors: &[Vec<Elem>], path: MuPath) -> Result<usize> {
    let dim = dim_of(vectors)?;
    if vectors.is_empty() || dim == 0 {
        return Ok(0);
    }
    let use_snf = match path {
        MuPath::Auto => ring.is_chain(),
        MuPath::Snf => true,
        MuPath::Enumeration => false,
    };
    if use_snf {
        let rows: Vec<Vec<Elem>> = vectors.to_vec();
        let m = Matrix::new(ring.clone(), Matrix::default_labels(dim), rows)?;
        Ok(m.smith_normal_form()?.rank())
    } else {
        Submodule::span(ring, dim, vectors)?.mu()
    }
}

/// `μ(⟨v_1..v_ℓ⟩) = ℓ`.
pub fn is_modular_independent(ring: &Arc<Ring>, vectors: &[Vec<Elem>], path: MuPath) -> Result<bool> {
    Ok(mu(ring, vectors, path)? == vectors.len())
}

/// Whether `x` has trivial annihilator, i.e. some coordinate is a unit.
pub fn psi_member(ring: &Ring, x: &[Elem]) -> bool {
    x.iter().any(|&c| ring.is_unit(c))
}

/// Whether some maximal minor of the `k × ℓ` matrix is nonzero (`ℓ ≤ k`).
pub fn has_nonzero_maximal_minor(a: &Matrix) -> Result<bool> {
    let (k, l) = (a.nrows(), a.ncols());
    if l > k {
        return Err(Error::TooManyColumns { rows: k, cols: l });
    }
    let mut rows: Vec<usize> = (0..l).collect();
    loop {
        if a.select_rows(&rows).det()? != Elem::ZERO {
            return Ok(true);
        }
        // Next l-combination of 0..k.
        let Some(i) = (0..l).rev().find(|&i| rows[i] < k - l + i) else {
            return Ok(false);
        };
        rows[i] += 1;
        for j in i + 1..l {
            rows[j] = rows[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::make_ring;

    fn v(r: &Ring, xs: &[usize]) -> Vec<Elem> {
        xs.iter().map(|&i| r.elem(i)).collect()
    }

    fn vs(r: &Ring, xss: &[&[usize]]) -> Vec<Vec<Elem>> {
        xss.iter().map(|xs| v(r, xs)).collect()
    }

    fn named(r: &Ring, xs: &[&str]) -> Vec<Elem> {
        xs.iter().map(|t| r.parse_elem(t).unwrap()).collect()
    }

    #[test]
    fn span_examples() {
        let r = make_ring("z:4").unwrap();
        let s = Submodule::span(&r, 2, &vs(&r, &[&[2, 0], &[1, 0]])).unwrap();
        let elems: Vec<Vec<usize>> = s
            .elements()
            .map(|x| x.iter().map(|e| e.index()).collect())
            .collect();
        assert_eq!(elems, vec![vec![0, 0], vec![1, 0], vec![2, 0], vec![3, 0]]);
        assert_eq!(Submodule::span(&r, 2, &vs(&r, &[&[2, 0], &[0, 2]])).unwrap().len(), 4);
        let zero = Submodule::span(&r, 2, &[]).unwrap();
        assert_eq!(zero.len(), 1);
        assert!(zero.contains(&v(&r, &[0, 0])));
    }

    #[test]
    fn mu_examples() {
        let r = make_ring("z:4").unwrap();
        for path in [MuPath::Auto, MuPath::Snf, MuPath::Enumeration] {
            assert_eq!(mu(&r, &vs(&r, &[&[2, 0], &[0, 2]]), path).unwrap(), 2);
            assert_eq!(mu(&r, &vs(&r, &[&[2, 0], &[1, 2]]), path).unwrap(), 1);
            assert_eq!(mu(&r, &[], path).unwrap(), 0);
        }
    }

    #[test]
    fn independence_examples() {
        let r = make_ring("z:4").unwrap();
        let p = MuPath::Auto;
        assert!(is_modular_independent(&r, &vs(&r, &[&[1, 0], &[1, 2]]), p).unwrap());
        assert!(!is_modular_independent(&r, &vs(&r, &[&[2, 0], &[1, 0]]), p).unwrap());
        let z8 = make_ring("z:8").unwrap();
        // Vámos columns a, b, g, h.
        let abgh = vs(&z8, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[2, 3, 1, 4], &[1, 2, 7, 4]]);
        assert!(!is_modular_independent(&z8, &abgh, p).unwrap());
        assert!(!is_modular_independent(&z8, &abgh, MuPath::Enumeration).unwrap());
    }

    #[test]
    fn psi_examples() {
        let r = make_ring("z:4").unwrap();
        assert!(psi_member(&r, &v(&r, &[2, 1, 1])));
        assert!(!psi_member(&r, &v(&r, &[2, 0, 2])));
        assert!(!psi_member(&r, &v(&r, &[0, 0])));
    }

    #[test]
    fn maximal_minor_examples() {
        let r = make_ring("z:4").unwrap();
        let a = Matrix::from_indices(&r, &[vec![1, 1], vec![0, 2]]).unwrap();
        assert!(has_nonzero_maximal_minor(&a).unwrap());
        let b = Matrix::from_indices(&r, &[vec![2, 0], vec![0, 2]]).unwrap();
        assert!(!has_nonzero_maximal_minor(&b).unwrap());
        assert!(is_modular_independent(&r, &b.columns(), MuPath::Auto).unwrap());
        let z = Matrix::from_indices(&r, &[vec![0], vec![0]]).unwrap();
        assert!(!has_nonzero_maximal_minor(&z).unwrap());
        let wide = Matrix::from_indices(&r, &[vec![1, 0, 1]]).unwrap();
        assert_eq!(
            has_nonzero_maximal_minor(&wide).unwrap_err(),
            Error::TooManyColumns { rows: 1, cols: 3 }
        );
        let tall = Matrix::from_indices(&r, &[vec![2], vec![0], vec![3]]).unwrap();
        assert!(has_nonzero_maximal_minor(&tall).unwrap());
    }

    #[test]
    fn table_ring_not_monotonic() {
        let r = make_ring("table:f2xy_xx_xy_yy").unwrap();
        let a = |s: &str| named(&r, &[s]);
        let vx = vec![a("x"), a("y"), a("1+x")];
        let vy = vec![a("x"), a("y"), a("1+y")];
        let vxy = vec![a("x"), a("y")];
        let e = MuPath::Enumeration;
        assert_eq!(mu(&r, &vx, e).unwrap(), 1);
        assert_eq!(mu(&r, &vy, e).unwrap(), 1);
        assert_eq!(mu(&r, &vxy, e).unwrap(), 2);
        let union = vec![a("x"), a("y"), a("1+x"), a("1+y")];
        assert_eq!(mu(&r, &union, e).unwrap(), 1);
        assert_eq!(mu(&r, &vx, MuPath::Auto).unwrap(), 1);
        assert_eq!(mu(&r, &vx, MuPath::Snf).unwrap_err(), Error::NotChainRing);
    }

    #[test]
    fn minimal_generators_drop_redundant() {
        let r = make_ring("z:4").unwrap();
        let s = Submodule::span(&r, 3, &vs(&r, &[&[1, 2, 0], &[0, 2, 2], &[1, 0, 2]])).unwrap();
        assert_eq!(s.minimal_generators().unwrap().len(), 2);
        assert_eq!(s.mu().unwrap(), 2);
    }

    #[test]
    fn sum_and_intersection() {
        let r = make_ring("z:8").unwrap();
        let a = Submodule::span(&r, 2, &vs(&r, &[&[2, 0]])).unwrap();
        let b = Submodule::span(&r, 2, &vs(&r, &[&[1, 0]])).unwrap();
        assert!(a.is_subset(&b));
        assert_eq!(a.intersection(&b).unwrap(), a);
        assert_eq!(a.sum(&b).unwrap(), b);
        let c = Submodule::span(&r, 2, &vs(&r, &[&[0, 4]])).unwrap();
        assert_eq!(a.intersection(&c).unwrap().len(), 1);
        assert_eq!(a.sum(&c).unwrap().len(), 8);
    }

    #[test]
    fn closure_guard() {
        let r = make_ring("z:4").unwrap();
        assert!(Codec::new(&r, 40).is_err());
    }

    #[test]
    fn log_q_rejects_non_powers() {
        assert_eq!(log_q(8, 2).unwrap(), 3);
        assert_eq!(log_q(1, 3).unwrap(), 0);
        assert_eq!(log_q(6, 2).unwrap_err(), Error::NonIntegralDimension(6, 2));
    }
}
