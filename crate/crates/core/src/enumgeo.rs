//! Cyclic-submodule counting, projective lines and size bounds over chain rings.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::indepsys::IndependenceSystem;
use crate::limits;
use crate::linalg::Matrix;
use crate::modindep::{is_modular_independent, scale_vec, Codec, MuPath};
use crate::rings::{Elem, Ring};

/// Multiplicities `k_0..k_{ν−1}` of `R^{k_0} ⊕ ⊕_i (R/⟨θ^{ν−i}⟩)^{k_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleShape(pub Vec<usize>);

impl ModuleShape {
    fn check(&self, ring: &Ring) -> Result<()> {
        ring.theta()?;
        if self.0.len() > ring.nu() as usize {
            return Err(Error::DimensionMismatch(format!(
                "shape has {} parts, the ring has ν = {}",
                self.0.len(),
                ring.nu()
            )));
        }
        Ok(())
    }

    /// `log_q |U[θ^s]| = Σ k_i · min(s, ν − i)`.
    pub fn torsion_exponent(&self, ring: &Ring, s: u32) -> u32 {
        let nu = ring.nu();
        self.0
            .iter()
            .enumerate()
            .map(|(i, &k)| k as u32 * s.min(nu - i as u32))
            .sum()
    }

    /// `log_q |U|`.
    pub fn size_exponent(&self, ring: &Ring) -> u32 {
        self.torsion_exponent(ring, ring.nu())
    }

    /// Number of coordinates of the concrete embedding `⊕ θ^i R ⊆ R^K`.
    pub fn rank(&self) -> usize {
        self.0.iter().sum()
    }
}

fn q_pow(ring: &Ring, e: u32) -> Result<u128> {
    (ring.q() as u128)
        .checked_pow(e)
        .ok_or(Error::ClosureTooLarge(u64::MAX))
}

/// `N_U(s)`, the number of cyclic submodules isomorphic to `R/⟨θ^s⟩`.
pub fn count_cyclic_submodules(shape: &ModuleShape, ring: &Ring, s: u32) -> Result<u128> {
    shape.check(ring)?;
    let nu = ring.nu();
    if s == 0 || s > nu {
        return Err(Error::BadTorsionIndex(s, nu));
    }
    let hi = q_pow(ring, shape.torsion_exponent(ring, s))?;
    let lo = q_pow(ring, shape.torsion_exponent(ring, s - 1))?;
    let q = ring.q() as u128;
    Ok((hi - lo) / (q_pow(ring, s - 1)? * (q - 1)))
}

/// Counts of cyclic submodules of each type `s = 1..=ν`, found by enumerating
/// every element of the concrete module and collecting the distinct `⟨x⟩`.
pub fn count_cyclic_brute(shape: &ModuleShape, ring: &Arc<Ring>) -> Result<Vec<u64>> {
    shape.check(ring)?;
    let theta = ring.theta()?;
    let nu = ring.nu();
    let size = q_pow(ring, shape.size_exponent(ring))?;
    if size > limits::max_closure() as u128 {
        return Err(Error::ClosureTooLarge(limits::max_closure()));
    }
    // Allowed values per coordinate: θ^i R for a summand of index i.
    let mut coords: Vec<Vec<Elem>> = Vec::new();
    for (i, &k) in shape.0.iter().enumerate() {
        let power = ring.pow(theta, i as u32);
        let mut vals: Vec<Elem> = ring.elements().map(|r| ring.mul(r, power)).collect();
        vals.sort();
        vals.dedup();
        coords.extend(std::iter::repeat(vals).take(k));
    }
    let codec = Codec::new(ring, coords.len())?;
    let mut seen: Vec<HashSet<Vec<u64>>> = vec![HashSet::new(); nu as usize + 1];
    let mut x: Vec<Elem> = coords.iter().map(|c| c[0]).collect();
    let mut idx = vec![0usize; coords.len()];
    loop {
        if x.iter().any(|&c| c != Elem::ZERO) {
            let s = (1..=nu)
                .find(|&s| scale_vec(ring, ring.pow(theta, s), &x).iter().all(|&c| c == Elem::ZERO))
                .expect("θ^ν kills everything");
            let mut multiples: Vec<u64> = ring
                .elements()
                .map(|r| codec.encode(&scale_vec(ring, r, &x)))
                .collect();
            multiples.sort_unstable();
            multiples.dedup();
            seen[s as usize].insert(multiples);
        }
        // Odometer over the coordinate value lists.
        let Some(pos) = (0..coords.len()).rev().find(|&p| idx[p] + 1 < coords[p].len()) else {
            break;
        };
        idx[pos] += 1;
        x[pos] = coords[pos][idx[pos]];
        for p in pos + 1..coords.len() {
            idx[p] = 0;
            x[p] = coords[p][0];
        }
    }
    Ok(seen[1..].iter().map(|s| s.len() as u64).collect())
}

/// Every shape whose module has at most `max_size` elements.
pub fn shapes_up_to(ring: &Ring, max_size: u64) -> Result<Vec<ModuleShape>> {
    ring.theta()?;
    let nu = ring.nu() as usize;
    let q = ring.q() as u64;
    let mut out = Vec::new();
    let mut cur = vec![0usize; nu];
    fn rec(i: usize, budget: u64, q: u64, nu: usize, cur: &mut Vec<usize>, out: &mut Vec<ModuleShape>) {
        if i == nu {
            out.push(ModuleShape(cur.clone()));
            return;
        }
        let part = q.pow((nu - i) as u32);
        let mut b = budget;
        let mut k = 0;
        loop {
            cur[i] = k;
            rec(i + 1, b, q, nu, cur, out);
            if b < part {
                break;
            }
            b /= part;
            k += 1;
        }
        cur[i] = 0;
    }
    rec(0, max_size, q, nu, &mut cur, &mut out);
    Ok(out)
}

/// `(1,0), (0,1), (1,r)` for nonzero `r`, then `(l,1)` for nonzero `l ∈ m`.
pub fn projective_line(ring: &Ring) -> Result<Vec<[Elem; 2]>> {
    ring.theta()?;
    let mut out = vec![[Elem::ONE, Elem::ZERO], [Elem::ZERO, Elem::ONE]];
    out.extend(ring.elements().skip(1).map(|r| [Elem::ONE, r]));
    out.extend(
        ring.maximal_ideal()
            .iter()
            .filter(|&&l| l != Elem::ZERO)
            .map(|&l| [l, Elem::ONE]),
    );
    Ok(out)
}

/// `q^ν + q^{ν−1}`.
pub fn projective_line_size(ring: &Ring) -> Result<usize> {
    ring.theta()?;
    Ok(ring.size() + ring.maximal_ideal().len())
}

/// The first `n` projective-line columns, verified to represent
/// `U_{min(2,n),n}`; `None` when `n > q^ν + q^{ν−1}`.
pub fn uniform_rank2_representation(ring: &Arc<Ring>, n: usize) -> Result<Option<Matrix>> {
    if n == 0 {
        return Err(Error::DimensionMismatch("n must be at least 1".into()));
    }
    let line = projective_line(ring)?;
    if n > line.len() {
        return Ok(None);
    }
    let cols = &line[..n];
    let rows = (0..2).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let m = Matrix::new(ring.clone(), Matrix::default_labels(n), rows)?;
    for (i, a) in cols.iter().enumerate() {
        for b in &cols[i + 1..] {
            if !is_modular_independent(ring, &[a.to_vec(), b.to_vec()], MuPath::Auto)? {
                return Err(Error::VerificationFailed(format!(
                    "projective-line columns {a:?}, {b:?} are dependent"
                )));
            }
        }
    }
    if n <= crate::indepsys::MAX_GROUND {
        let target = IndependenceSystem::uniform(2.min(n), n)?;
        if IndependenceSystem::from_matrix(&m)? != target {
            return Err(Error::VerificationFailed(format!("M[A] is not U_{{2,{n}}}")));
        }
    }
    Ok(Some(m))
}

/// `q^{(ν−1)(k−1)} (q^k − 1)/(q − 1)`.
pub fn simple_size_bound(ring: &Ring, k: u32) -> Result<u128> {
    ring.theta()?;
    if k == 0 {
        return Err(Error::DimensionMismatch("k must be at least 1".into()));
    }
    let q = ring.q() as u128;
    Ok(q_pow(ring, (ring.nu() - 1) * (k - 1))? * ((q_pow(ring, k)? - 1) / (q - 1)))
}

/// The nonzero cyclic submodules of `R^k`, each as a sorted key set.
pub fn cyclic_submodules(ring: &Arc<Ring>, k: usize) -> Result<Vec<Vec<u64>>> {
    let codec = Codec::new(ring, k)?;
    let total = codec.ambient_size();
    if total > limits::max_closure() {
        return Err(Error::ClosureTooLarge(limits::max_closure()));
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for key in 1..total {
        let x = codec.decode(key);
        let mut multiples: Vec<u64> = ring
            .elements()
            .map(|r| codec.encode(&scale_vec(ring, r, &x)))
            .collect();
        multiples.sort_unstable();
        multiples.dedup();
        if seen.insert(multiples.clone()) {
            out.push(multiples);
        }
    }
    out.sort();
    Ok(out)
}

fn is_sub(a: &[u64], b: &[u64]) -> bool {
    a.len() <= b.len() && a.iter().all(|k| b.binary_search(k).is_ok())
}

/// Comparability graph of `Cyc(R^k)` under inclusion.
pub fn cyclic_poset(ring: &Arc<Ring>, k: usize) -> Result<Vec<Vec<bool>>> {
    let subs = cyclic_submodules(ring, k)?;
    let n = subs.len();
    let mut less = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            less[i][j] = i != j && is_sub(&subs[i], &subs[j]);
        }
    }
    Ok(less)
}

/// Width of `Cyc(R^k)`: the largest family of pairwise incomparable
/// nonzero cyclic submodules.
pub fn cyc_antichain_bound(ring: &Arc<Ring>, k: usize) -> Result<usize> {
    let less = cyclic_poset(ring, k)?;
    let n = less.len();
    let comparable: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| less[i][j] || less[j][i]).collect())
        .collect();
    // Fewest comparabilities first tends to find large antichains early.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| comparable[i].iter().filter(|&&c| c).count());
    let mut best = 0;
    let mut chosen = Vec::new();
    max_antichain(&comparable, &order, &mut chosen, &mut best);
    Ok(best)
}

fn max_antichain(comparable: &[Vec<bool>], candidates: &[usize], chosen: &mut Vec<usize>, best: &mut usize) {
    if chosen.len() + candidates.len() <= *best {
        return;
    }
    let Some((&v, rest)) = candidates.split_first() else {
        *best = chosen.len();
        return;
    };
    let with: Vec<usize> = rest.iter().copied().filter(|&u| !comparable[v][u]).collect();
    chosen.push(v);
    max_antichain(comparable, &with, chosen, best);
    chosen.pop();
    max_antichain(comparable, rest, chosen, best);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::make_ring;

    fn ring(spec: &str) -> Arc<Ring> {
        make_ring(spec).unwrap()
    }

    #[test]
    fn counting_examples() {
        let z4 = ring("z:4");
        let free2 = ModuleShape(vec![2]);
        assert_eq!(count_cyclic_submodules(&free2, &z4, 1).unwrap(), 3);
        assert_eq!(count_cyclic_submodules(&free2, &z4, 2).unwrap(), 6);
        let z8 = ring("z:8");
        assert_eq!(count_cyclic_submodules(&free2, &z8, 3).unwrap(), 12);
        assert_eq!(
            count_cyclic_submodules(&free2, &z8, 4).unwrap_err(),
            Error::BadTorsionIndex(4, 3)
        );
        let table = ring("table:f2xy_xx_yy");
        assert_eq!(
            count_cyclic_submodules(&free2, &table, 1).unwrap_err(),
            Error::NotChainRing
        );
    }

    #[test]
    fn brute_force_matches_small_cases() {
        let z4 = ring("z:4");
        assert_eq!(count_cyclic_brute(&ModuleShape(vec![2]), &z4).unwrap(), vec![3, 6]);
        let z8 = ring("z:8");
        let shape = ModuleShape(vec![1, 1, 1]);
        let brute = count_cyclic_brute(&shape, &z8).unwrap();
        for s in 1..=3 {
            assert_eq!(
                brute[s as usize - 1] as u128,
                count_cyclic_submodules(&shape, &z8, s).unwrap()
            );
        }
        assert_eq!(count_cyclic_brute(&ModuleShape(vec![]), &z8).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn shapes_enumeration() {
        let z4 = ring("z:4");
        let shapes = shapes_up_to(&z4, 16).unwrap();
        // 4^a 2^b <= 16.
        let expect = [(0, 0), (0, 1), (0, 2), (0, 3), (0, 4), (1, 0), (1, 1), (1, 2), (2, 0)];
        assert_eq!(shapes.len(), expect.len());
        for (a, b) in expect {
            assert!(shapes.contains(&ModuleShape(vec![a, b])), "{a} {b}");
        }
    }

    #[test]
    fn projective_lines() {
        let z4 = ring("z:4");
        let line = projective_line(&z4).unwrap();
        let flat: Vec<[usize; 2]> = line.iter().map(|c| [c[0].index(), c[1].index()]).collect();
        assert_eq!(flat, vec![[1, 0], [0, 1], [1, 1], [1, 2], [1, 3], [2, 1]]);
        assert_eq!(projective_line(&ring("z:8")).unwrap().len(), 12);
        assert_eq!(projective_line(&ring("z:2")).unwrap().len(), 3);
        assert_eq!(projective_line_size(&ring("z:9")).unwrap(), 12);
    }

    #[test]
    fn uniform_rank2() {
        let z4 = ring("z:4");
        let m = uniform_rank2_representation(&z4, 6).unwrap().unwrap();
        assert_eq!(m.to_indices(), vec![vec![1, 0, 1, 1, 1, 2], vec![0, 1, 1, 2, 3, 1]]);
        assert!(uniform_rank2_representation(&z4, 7).unwrap().is_none());
        let z8 = ring("z:8");
        let m = uniform_rank2_representation(&z8, 12).unwrap().unwrap();
        assert_eq!(
            m.to_indices(),
            vec![
                vec![1, 0, 1, 1, 1, 1, 1, 1, 1, 2, 4, 6],
                vec![0, 1, 1, 2, 3, 4, 5, 6, 7, 1, 1, 1]
            ]
        );
        let one = uniform_rank2_representation(&z4, 1).unwrap().unwrap();
        assert_eq!(one.ncols(), 1);
    }

    #[test]
    fn simple_bounds() {
        assert_eq!(simple_size_bound(&ring("z:4"), 2).unwrap(), 6);
        assert_eq!(simple_size_bound(&ring("z:8"), 2).unwrap(), 12);
        assert_eq!(simple_size_bound(&ring("z:5"), 3).unwrap(), 31);
    }

    #[test]
    fn antichain_widths() {
        assert_eq!(cyc_antichain_bound(&ring("z:4"), 1).unwrap(), 1);
        assert_eq!(cyc_antichain_bound(&ring("z:4"), 2).unwrap(), 6);
        assert_eq!(cyc_antichain_bound(&ring("z:2"), 2).unwrap(), 3);
    }
}
