//! Seeded random instances for property and differential suites.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{Matrix, RowOp};
use crate::rings::{Elem, Ring};

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_elem(r: &mut Rng, ring: &Ring) -> Elem {
    ring.elem(r.gen_range(0..ring.size()))
}

pub fn random_vector(r: &mut Rng, ring: &Ring, dim: usize) -> Vec<Elem> {
    (0..dim).map(|_| random_elem(r, ring)).collect()
}

pub fn random_matrix(r: &mut Rng, ring: &Arc<Ring>, k: usize, n: usize) -> Matrix {
    let rows = (0..k).map(|_| random_vector(r, ring, n)).collect();
    Matrix::new(ring.clone(), Matrix::default_labels(n), rows).expect("well-formed")
}

/// A random unit-scaled elementary operation on a `k`-row matrix.
pub fn random_op(r: &mut Rng, ring: &Ring, k: usize) -> RowOp {
    let units: Vec<Elem> = ring.units().collect();
    let kinds = if k > 1 { 3 } else { 2 };
    match r.gen_range(0..kinds) {
        0 => RowOp::Swap(r.gen_range(0..k), r.gen_range(0..k)),
        1 => RowOp::Scale(r.gen_range(0..k), *units.choose(r).expect("1 is a unit")),
        _ => {
            let target = r.gen_range(0..k);
            let source = (target + r.gen_range(1..k)) % k;
            RowOp::AddMultiple {
                target,
                source,
                factor: random_elem(r, ring),
            }
        }
    }
}

/// `[I_k | A]` with random `A`, mixed by random row operations and a random
/// column permutation; its row span is free of rank `k`.
pub fn random_free_generator(r: &mut Rng, ring: &Arc<Ring>, k: usize, n: usize) -> Matrix {
    assert!(k <= n);
    let mut rows: Vec<Vec<Elem>> = (0..k)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j < k {
                        if i == j { Elem::ONE } else { Elem::ZERO }
                    } else {
                        random_elem(r, ring)
                    }
                })
                .collect()
        })
        .collect();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(r);
    for row in &mut rows {
        *row = perm.iter().map(|&j| row[j]).collect();
    }
    let m = Matrix::new(ring.clone(), Matrix::default_labels(n), rows).expect("well-formed");
    if k < 2 {
        return m;
    }
    let ops: Vec<RowOp> = (0..2 * k)
        .map(|_| {
            let target = r.gen_range(0..k);
            let source = (target + r.gen_range(1..k)) % k;
            RowOp::AddMultiple {
                target,
                source,
                factor: random_elem(r, ring),
            }
        })
        .collect();
    m.apply_ops(&ops).expect("add-multiple never fails")
}

pub fn random_subset(r: &mut Rng, n: usize) -> u32 {
    r.gen_range(0..(1u32 << n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::Code;
    use crate::rings::make_ring;

    #[test]
    fn seeded_is_deterministic() {
        let z8 = make_ring("z:8").unwrap();
        let a = random_matrix(&mut rng(7), &z8, 3, 4);
        let b = random_matrix(&mut rng(7), &z8, 3, 4);
        assert_eq!(a, b);
    }

    #[test]
    fn free_generators_are_free() {
        let mut r = rng(1);
        for spec in ["z:4", "z:8", "z:9", "table:f2xy_xx_yy"] {
            let ring = make_ring(spec).unwrap();
            for _ in 0..20 {
                let k = r.gen_range(1..=3);
                let n = r.gen_range(k..=5);
                let g = random_free_generator(&mut r, &ring, k, n);
                let c = Code::from_matrix(&g).unwrap();
                assert!(c.is_free());
                assert_eq!(c.mu(), k);
            }
        }
    }
}
