//! Naive reference implementations for differential testing.
//!
//! Nothing here calls into the fast paths of `linalg`, `modindep` or `codes`;
//! only ring arithmetic is shared.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::codes::Code;
use crate::error::{Error, Result};
use crate::indepsys::{Clutter, Subset, MAX_GROUND};
use crate::limits;
use crate::linalg::Matrix;
use crate::modindep::{Codec, Submodule};
use crate::rings::{Elem, Ring};

type Vector = Vec<Elem>;

fn add(r: &Ring, a: &[Elem], b: &[Elem]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| r.add(x, y)).collect()
}

fn scale(r: &Ring, c: Elem, a: &[Elem]) -> Vector {
    a.iter().map(|&x| r.mul(c, x)).collect()
}

/// Smallest set containing `seeds` and zero, closed under addition.
fn additive_closure(r: &Ring, dim: usize, seeds: Vec<Vector>) -> Result<BTreeSet<Vector>> {
    let limit = limits::max_closure() as usize;
    let mut set: BTreeSet<Vector> = BTreeSet::new();
    set.insert(vec![Elem::ZERO; dim]);
    let seeds: BTreeSet<Vector> = seeds.into_iter().collect();
    let mut frontier: Vec<Vector> = seeds.iter().cloned().collect();
    set.extend(seeds.iter().cloned());
    while let Some(v) = frontier.pop() {
        for s in &seeds {
            let w = add(r, &v, s);
            if set.insert(w.clone()) {
                if set.len() > limit {
                    return Err(Error::ClosureTooLarge(limit as u64));
                }
                frontier.push(w);
            }
        }
    }
    Ok(set)
}

/// `⟨S⟩_R` as an explicit vector set: additive closure of all `r·s`.
pub fn span_by_closure(ring: &Ring, dim: usize, vectors: &[Vector]) -> Result<BTreeSet<Vector>> {
    let seeds = vectors
        .iter()
        .flat_map(|v| ring.elements().map(move |c| scale(ring, c, v)))
        .collect();
    additive_closure(ring, dim, seeds)
}

/// `μ_R(⟨S⟩) = log_q(|V| / |mV|)` from explicit closures.
pub fn mu_by_enumeration(ring: &Ring, dim: usize, vectors: &[Vector]) -> Result<usize> {
    let v = span_by_closure(ring, dim, vectors)?;
    let m: Vec<Elem> = ring.elements().filter(|&a| !ring.is_unit(a)).collect();
    let seeds = v
        .iter()
        .flat_map(|x| m.iter().map(move |&a| scale(ring, a, x)))
        .collect();
    let mv = additive_closure(ring, dim, seeds)?;
    let ratio = (v.len() / mv.len()) as u64;
    let q = ring.q() as u64;
    let mut e = 0;
    let mut acc = 1u64;
    while acc < ratio {
        acc *= q;
        e += 1;
    }
    if acc != ratio || v.len() % mv.len() != 0 {
        return Err(Error::NonIntegralDimension(ratio, ring.q()));
    }
    Ok(e)
}

/// Does some relation `Σ c_i v_i = 0` have a unit coefficient?
pub fn has_unit_relation(ring: &Ring, vectors: &[Vector]) -> bool {
    let dim = vectors.first().map_or(0, |v| v.len());
    let n = ring.size();
    let l = vectors.len();
    let mut coeff = vec![0usize; l];
    loop {
        let c: Vec<Elem> = coeff.iter().map(|&i| ring.elem(i)).collect();
        if c.iter().any(|&x| ring.is_unit(x)) {
            let mut sum = vec![Elem::ZERO; dim];
            for (ci, v) in c.iter().zip(vectors) {
                sum = add(ring, &sum, &scale(ring, *ci, v));
            }
            if sum.iter().all(|&x| x == Elem::ZERO) {
                return true;
            }
        }
        let Some(pos) = (0..l).rev().find(|&p| coeff[p] + 1 < n) else {
            return false;
        };
        coeff[pos] += 1;
        for c in &mut coeff[pos + 1..] {
            *c = 0;
        }
    }
}

/// Modular independence straight from the definition: every relation has
/// all coefficients in `m`.
pub fn is_independent_by_definition(ring: &Ring, vectors: &[Vector]) -> bool {
    !has_unit_relation(ring, vectors)
}

fn column(a: &Matrix, j: usize) -> Vector {
    (0..a.nrows()).map(|i| a.get(i, j)).collect()
}

/// The independent family of `M[A]`, checking every subset by definition.
pub fn independent_family_by_definition(a: &Matrix) -> Result<Vec<Subset>> {
    let n = a.ncols();
    if n > MAX_GROUND {
        return Err(Error::GroundSetTooLarge(n, MAX_GROUND));
    }
    let cols: Vec<Vector> = (0..n).map(|j| column(a, j)).collect();
    let mut out = Vec::new();
    for s in 0..(1u32 << n) {
        let v: Vec<Vector> = (0..n).filter(|&j| s >> j & 1 == 1).map(|j| cols[j].clone()).collect();
        if is_independent_by_definition(a.ring(), &v) {
            out.push(s);
        }
    }
    Ok(out)
}

/// Minimal dependent column sets of `A`, by subset scan in increasing size.
pub fn circuits_by_subset_scan(a: &Matrix) -> Result<Clutter> {
    let n = a.ncols();
    if n > MAX_GROUND {
        return Err(Error::GroundSetTooLarge(n, MAX_GROUND));
    }
    let cols: Vec<Vector> = (0..n).map(|j| column(a, j)).collect();
    let mut subsets: Vec<Subset> = (0..(1u32 << n)).collect();
    subsets.sort_by_key(|s| s.count_ones());
    let mut independent = vec![false; 1 << n];
    let mut circuits = Vec::new();
    for s in subsets {
        // Only sets whose every maximal proper subset is independent can be
        // circuits or independent.
        let proper_ok = (0..n)
            .filter(|&j| s >> j & 1 == 1)
            .all(|j| independent[(s & !(1 << j)) as usize]);
        if !proper_ok {
            continue;
        }
        let v: Vec<Vector> = (0..n).filter(|&j| s >> j & 1 == 1).map(|j| cols[j].clone()).collect();
        if is_independent_by_definition(a.ring(), &v) {
            independent[s as usize] = true;
        } else {
            circuits.push(s);
        }
    }
    Clutter::new(a.labels().to_vec(), circuits)
}

/// `C⊥` by testing every `x ∈ R^E` against each generator row.
pub fn dual_by_enumeration(code: &Code) -> Result<Code> {
    let ring: &Arc<Ring> = code.ring();
    let n = code.len();
    let limit = limits::max_search();
    let size = ring.size() as u64;
    let total = size.checked_pow(n as u32).filter(|&t| t <= limit);
    let Some(total) = total else {
        return Err(Error::SearchSpaceTooLarge(limit));
    };
    let g = code.generator();
    let rows: Vec<Vector> = (0..g.nrows()).map(|i| (0..n).map(|j| g.get(i, j)).collect()).collect();
    let codec = Codec::new(ring, n)?;
    let mut keys = Vec::new();
    let mut x = vec![Elem::ZERO; n];
    for key in 0..total {
        // Base-|R| digits, most significant coordinate first.
        let mut k = key;
        for c in x.iter_mut().rev() {
            *c = ring.elem((k % size) as usize);
            k /= size;
        }
        let orthogonal = rows.iter().all(|row| {
            row.iter()
                .zip(&x)
                .fold(Elem::ZERO, |acc, (&a, &b)| ring.add(acc, ring.mul(a, b)))
                == Elem::ZERO
        });
        if orthogonal {
            keys.push(codec.encode(&x));
        }
    }
    let words = Submodule::from_closed_keys(ring, n, keys)?;
    Code::from_submodule(ring, code.labels().to_vec(), words)
}

/// Width of a finite poset via Dilworth: `n` minus a maximum matching in
/// the bipartite graph of strict comparabilities.
pub fn poset_width_by_matching(less: &[Vec<bool>]) -> usize {
    let n = less.len();
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    fn augment(u: usize, less: &[Vec<bool>], seen: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
        for v in 0..less.len() {
            if less[u][v] && !seen[v] {
                seen[v] = true;
                if match_right[v].map_or(true, |w| augment(w, less, seen, match_right)) {
                    match_right[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let mut matching = 0;
    for u in 0..n {
        let mut seen = vec![false; n];
        if augment(u, less, &mut seen, &mut match_right) {
            matching += 1;
        }
    }
    n - matching
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indepsys::IndependenceSystem;
    use crate::rings::{make_ring, F2XY_SQUARE_ZERO};

    fn v(r: &Ring, xs: &[&str]) -> Vector {
        xs.iter().map(|s| r.parse_elem(s).unwrap()).collect()
    }

    #[test]
    fn mu_examples() {
        let z4 = make_ring("z:4").unwrap();
        assert_eq!(mu_by_enumeration(&z4, 2, &[v(&z4, &["1", "0"]), v(&z4, &["1", "2"])]).unwrap(), 2);
        assert_eq!(mu_by_enumeration(&z4, 2, &[v(&z4, &["2", "0"]), v(&z4, &["1", "2"])]).unwrap(), 1);
        assert_eq!(mu_by_enumeration(&z4, 2, &[]).unwrap(), 0);
        let t = make_ring(&format!("table:{F2XY_SQUARE_ZERO}")).unwrap();
        assert_eq!(mu_by_enumeration(&t, 1, &[v(&t, &["x"]), v(&t, &["1+x"])]).unwrap(), 1);
    }

    #[test]
    fn span_examples() {
        let z4 = make_ring("z:4").unwrap();
        let s = span_by_closure(&z4, 2, &[v(&z4, &["2", "0"]), v(&z4, &["1", "0"])]).unwrap();
        assert_eq!(s.len(), 4);
        let s = span_by_closure(&z4, 2, &[v(&z4, &["2", "0"]), v(&z4, &["0", "2"])]).unwrap();
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn circuits_non_matroid() {
        let a = Matrix::parse("ring z:4\ncols 1 2 3\n2 1 1\n0 0 2\n").unwrap();
        let c = circuits_by_subset_scan(&a).unwrap();
        assert_eq!(c, Clutter::from_labels(&["1", "2", "3"], &[&["1", "2"], &["1", "3"]]).unwrap());
        let id = Matrix::identity(&make_ring("z:8").unwrap(), 3);
        assert!(circuits_by_subset_scan(&id).unwrap().members().is_empty());
    }

    #[test]
    fn family_matches_fast_path() {
        let a = Matrix::parse("ring z:4\ncols 1 2 3\n2 1 1\n0 0 2\n").unwrap();
        let fam = independent_family_by_definition(&a).unwrap();
        let sys = IndependenceSystem::from_matrix(&a).unwrap();
        let mut fast = sys.independent_sets();
        fast.sort_unstable();
        assert_eq!(fam, fast);
    }

    #[test]
    fn dual_duality_may_fail() {
        let g = Matrix::parse("ring z:4\ncols 1 2 3\n1 2 0\n0 2 2\n").unwrap();
        let h = Matrix::parse("ring z:4\ncols 1 2 3\n2 1 1\n0 0 2\n").unwrap();
        let c = Code::from_matrix(&g).unwrap();
        assert_eq!(dual_by_enumeration(&c).unwrap(), Code::from_matrix(&h).unwrap());
        let z = Code::zero(c.ring(), c.labels().to_vec()).unwrap();
        assert_eq!(dual_by_enumeration(&z).unwrap().size(), 64);
    }

    #[test]
    fn dilworth_chain_and_antichain() {
        let chain = vec![vec![false, true, true], vec![false, false, true], vec![false; 3]];
        assert_eq!(poset_width_by_matching(&chain), 1);
        assert_eq!(poset_width_by_matching(&vec![vec![false; 4]; 4]), 4);
    }
}
