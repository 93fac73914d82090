#![allow(dead_code)]

use std::sync::Arc;

use chainmat::rings::{make_ring, Elem, Ring};

pub const CHAIN_RINGS: &[&str] = &["z:4", "z:8", "z:9", "fpu:2,2"];
pub const TABLE_RINGS: &[&str] = &["table:f2xy_xx_xy_yy", "table:f2xy_xx_yy"];
pub const ALL_RINGS: &[&str] = &["z:4", "z:8", "z:9", "fpu:2,2", "table:f2xy_xx_xy_yy", "table:f2xy_xx_yy"];

pub fn ring(spec: &str) -> Arc<Ring> {
    make_ring(spec).unwrap()
}

pub fn elems(r: &Ring, xs: &[&str]) -> Vec<Elem> {
    xs.iter().map(|s| r.parse_elem(s).unwrap()).collect()
}

pub fn subsets(n: usize) -> impl Iterator<Item = u32> {
    0..(1u32 << n)
}
