//! Finite commutative local rings with table-driven arithmetic.
//!
//! Every ring element is a dense index `0..|R|`; index 0 is the additive
//! identity and index 1 the multiplicative identity. Three families are
//! supported: `Z/p^ν`, `F_p[u]/⟨u^ν⟩`, and table-defined rings (two of which
//! are built in).

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::Deserialize;

use crate::error::{Error, Result};

pub const MAX_RING_SIZE: u64 = 4096;

/// Name of the built-in ring `F_2[x,y]/⟨x², xy, y²⟩` (8 elements).
pub const F2XY_SQUARE_ZERO: &str = "f2xy_xx_xy_yy";
/// Name of the built-in ring `F_2[x,y]/⟨x², y²⟩` (16 elements).
pub const F2XY_EXTERIOR: &str = "f2xy_xx_yy";

/// A ring element, stored as its canonical index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_key(i: u16) -> Elem {
        Elem(i)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingKind {
    Zpn { p: u64, nu: u32 },
    Fpu { p: u64, nu: u32 },
    Table { name: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct ChainData {
    theta: Elem,
}

/// A finite commutative local ring. Immutable after construction.
pub struct Ring {
    kind: RingKind,
    spec: String,
    size: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inverse: Vec<Option<u16>>,
    maximal_ideal: Vec<Elem>,
    ideal_generators: Vec<Elem>,
    residue: Vec<u32>,
    residue_size: usize,
    nilpotency: u32,
    chain: Option<ChainData>,
    ord: Vec<u32>,
    names: Vec<String>,
    lookup: HashMap<String, Elem>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ring")
            .field("spec", &self.spec)
            .field("size", &self.size)
            .field("is_chain", &self.is_chain())
            .finish()
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.add == other.add && self.mul == other.mul
    }
}

impl Eq for Ring {}

/// Parse a ring spec (`z:<m>`, `zpn:<p>,<nu>`, `fpu:<p>,<nu>`, `table:<name-or-path>`).
pub fn make_ring(spec: &str) -> Result<Arc<Ring>> {
    let spec = spec.trim();
    let (head, tail) = spec
        .split_once(':')
        .ok_or_else(|| Error::BadRingSpec(spec.to_string()))?;
    let ring = match head {
        "z" => {
            let m: u64 = tail
                .trim()
                .parse()
                .map_err(|_| Error::BadRingSpec(spec.to_string()))?;
            let (p, nu) = prime_power(m)?;
            Ring::zpn(p, nu)?
        }
        "zpn" | "fpu" => {
            let (p, nu) = tail
                .split_once(',')
                .ok_or_else(|| Error::BadRingSpec(spec.to_string()))?;
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|_| Error::BadRingSpec(spec.to_string()))?;
            let nu: u32 = nu
                .trim()
                .parse()
                .map_err(|_| Error::BadRingSpec(spec.to_string()))?;
            if nu == 0 {
                return Err(Error::BadRingSpec(spec.to_string()));
            }
            if head == "zpn" {
                Ring::zpn(p, nu)?
            } else {
                Ring::fpu(p, nu)?
            }
        }
        "table" => {
            let name = tail.trim();
            match name {
                F2XY_SQUARE_ZERO => Ring::f2xy_square_zero(),
                F2XY_EXTERIOR => Ring::f2xy_exterior(),
                path => Ring::from_table_file(path)?,
            }
        }
        _ => return Err(Error::BadRingSpec(spec.to_string())),
    };
    Ok(Arc::new(ring))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_power(m: u64) -> Result<(u64, u32)> {
    if m < 2 {
        return Err(Error::NotPrimePower(m));
    }
    let mut p = 2;
    while m % p != 0 {
        p += 1;
    }
    let mut rest = m;
    let mut nu = 0;
    while rest % p == 0 {
        rest /= p;
        nu += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(m));
    }
    Ok((p, nu))
}

fn checked_size(p: u64, nu: u32) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let size = p
        .checked_pow(nu)
        .filter(|&s| s <= MAX_RING_SIZE)
        .ok_or(Error::RingTooLarge(p.saturating_pow(nu)))?;
    Ok(size as usize)
}

#[derive(Deserialize)]
struct TableFile {
    size: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    names: Vec<String>,
}

impl Ring {
    /// `Z/p^ν`.
    pub fn zpn(p: u64, nu: u32) -> Result<Ring> {
        let n = checked_size(p, nu)?;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = ((a + b) % n) as u16;
                mul[a * n + b] = ((a * b) % n) as u16;
            }
        }
        let names = (0..n).map(|a| a.to_string()).collect();
        let theta = (p as usize % n) as u16;
        let spec = format!("z:{n}");
        Ring::assemble(RingKind::Zpn { p, nu }, spec, n, add, mul, names, Some(Elem(theta)))
    }

    /// `F_p[u]/⟨u^ν⟩`; the polynomial `Σ c_i u^i` has index `Σ c_i p^i`.
    pub fn fpu(p: u64, nu: u32) -> Result<Ring> {
        let n = checked_size(p, nu)?;
        let p_us = p as usize;
        let nu_us = nu as usize;
        let digits = |mut a: usize| {
            let mut c = vec![0usize; nu_us];
            for d in c.iter_mut() {
                *d = a % p_us;
                a /= p_us;
            }
            c
        };
        let encode = |c: &[usize]| c.iter().rev().fold(0usize, |acc, &d| acc * p_us + d);
        let polys: Vec<Vec<usize>> = (0..n).map(digits).collect();
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                let (x, y) = (&polys[a], &polys[b]);
                let s: Vec<usize> = x.iter().zip(y).map(|(u, v)| (u + v) % p_us).collect();
                let mut prod = vec![0usize; nu_us];
                for i in 0..nu_us {
                    for j in 0..nu_us - i {
                        prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_us;
                    }
                }
                add[a * n + b] = encode(&s) as u16;
                mul[a * n + b] = encode(&prod) as u16;
            }
        }
        let names = polys.iter().map(|c| poly_name(c, "u")).collect();
        let theta = if nu == 1 { 0 } else { p_us as u16 };
        let spec = format!("fpu:{p},{nu}");
        Ring::assemble(RingKind::Fpu { p, nu }, spec, n, add, mul, names, Some(Elem(theta)))
    }

    /// `F_2[x,y]/⟨x², xy, y²⟩` on the basis `1, x, y`.
    pub fn f2xy_square_zero() -> Ring {
        Ring::monomial_f2(F2XY_SQUARE_ZERO, &[(0, 0), (1, 0), (0, 1)])
            .expect("built-in table ring is valid")
    }

    /// `F_2[x,y]/⟨x², y²⟩` on the basis `1, x, y, xy`.
    pub fn f2xy_exterior() -> Ring {
        Ring::monomial_f2(F2XY_EXTERIOR, &[(0, 0), (1, 0), (0, 1), (1, 1)])
            .expect("built-in table ring is valid")
    }

    /// Monomial quotient of `F_2[x,y]`: any product of basis monomials that is
    /// not itself a basis monomial is zero. Element bit `i` is the coefficient
    /// of `basis[i]`.
    fn monomial_f2(name: &str, basis: &[(u32, u32)]) -> Result<Ring> {
        let n = 1usize << basis.len();
        let position: HashMap<(u32, u32), usize> =
            basis.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = (a ^ b) as u16;
                let mut prod = 0usize;
                for (i, &(ai, aj)) in basis.iter().enumerate() {
                    if a >> i & 1 == 0 {
                        continue;
                    }
                    for (j, &(bi, bj)) in basis.iter().enumerate() {
                        if b >> j & 1 == 0 {
                            continue;
                        }
                        if let Some(&k) = position.get(&(ai + bi, aj + bj)) {
                            prod ^= 1 << k;
                        }
                    }
                }
                mul[a * n + b] = prod as u16;
            }
        }
        let monomial = |&(i, j): &(u32, u32)| match (i, j) {
            (0, 0) => "1".to_string(),
            _ => {
                let mut s = String::new();
                for (var, e) in [("x", i), ("y", j)] {
                    match e {
                        0 => {}
                        1 => s.push_str(var),
                        e => s.push_str(&format!("{var}^{e}")),
                    }
                }
                s
            }
        };
        let names = (0..n)
            .map(|a| {
                let terms: Vec<String> = basis
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| a >> i & 1 == 1)
                    .map(|(_, m)| monomial(m))
                    .collect();
                if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join("+")
                }
            })
            .collect();
        let kind = RingKind::Table {
            name: name.to_string(),
        };
        Ring::from_tables(kind, format!("table:{name}"), n, add, mul, names)
    }

    /// Load a ring from a JSON table file with fields `size`, `add`, `mul`, `names`.
    pub fn from_table_file(path: &str) -> Result<Ring> {
        let text = std::fs::read_to_string(path)?;
        let file: TableFile =
            serde_json::from_str(&text).map_err(|e| Error::NotARing(e.to_string()))?;
        Ring::from_table_parts(path, file)
    }

    /// Build a table ring from JSON text (same schema as [`Ring::from_table_file`]).
    pub fn from_table_json(name: &str, json: &str) -> Result<Ring> {
        let file: TableFile =
            serde_json::from_str(json).map_err(|e| Error::NotARing(e.to_string()))?;
        Ring::from_table_parts(name, file)
    }

    fn from_table_parts(name: &str, file: TableFile) -> Result<Ring> {
        let n = file.size;
        if n < 2 {
            return Err(Error::NotARing("a ring needs 0 != 1".into()));
        }
        if n as u64 > MAX_RING_SIZE {
            return Err(Error::RingTooLarge(n as u64));
        }
        let flatten = |t: &[Vec<usize>], what: &str| -> Result<Vec<u16>> {
            if t.len() != n || t.iter().any(|row| row.len() != n) {
                return Err(Error::NotARing(format!("{what} table is not {n}x{n}")));
            }
            if t.iter().flatten().any(|&v| v >= n) {
                return Err(Error::NotARing(format!("{what} table entry out of range")));
            }
            Ok(t.iter().flatten().map(|&v| v as u16).collect())
        };
        let add = flatten(&file.add, "add")?;
        let mul = flatten(&file.mul, "mul")?;
        if file.names.len() != n {
            return Err(Error::NotARing(format!("expected {n} names")));
        }
        let kind = RingKind::Table {
            name: name.to_string(),
        };
        Ring::from_tables(kind, format!("table:{name}"), n, add, mul, file.names)
    }

    fn from_tables(
        kind: RingKind,
        spec: String,
        n: usize,
        add: Vec<u16>,
        mul: Vec<u16>,
        names: Vec<String>,
    ) -> Result<Ring> {
        check_ring_axioms(n, &add, &mul)?;
        Ring::assemble(kind, spec, n, add, mul, names, None)
    }

    /// Derive units, the maximal ideal, chain data and names from the tables.
    /// `theta` is supplied for the families known to be chain rings.
    fn assemble(
        kind: RingKind,
        spec: String,
        n: usize,
        add: Vec<u16>,
        mul: Vec<u16>,
        names: Vec<String>,
        theta: Option<Elem>,
    ) -> Result<Ring> {
        let mut neg = vec![0u16; n];
        for a in 0..n {
            neg[a] = (0..n)
                .find(|&b| add[a * n + b] == 0)
                .ok_or_else(|| Error::NotARing(format!("{a} has no additive inverse")))?
                as u16;
        }
        let mut inverse = vec![None; n];
        for a in 0..n {
            inverse[a] = (0..n).find(|&b| mul[a * n + b] == 1).map(|b| b as u16);
        }
        let maximal_ideal: Vec<Elem> = (0..n)
            .filter(|&a| inverse[a].is_none())
            .map(|a| Elem(a as u16))
            .collect();
        let in_m: Vec<bool> = inverse.iter().map(Option::is_none).collect();
        // Local iff the non-units are closed under addition; they are always
        // closed under multiplication by R.
        for &a in &maximal_ideal {
            for &b in &maximal_ideal {
                if !in_m[add[a.index() * n + b.index()] as usize] {
                    return Err(Error::NotLocal);
                }
            }
        }

        let mut ring = Ring {
            kind,
            spec,
            size: n,
            add,
            mul,
            neg,
            inverse,
            maximal_ideal,
            ideal_generators: Vec::new(),
            residue: vec![0; n],
            residue_size: 0,
            nilpotency: 0,
            chain: None,
            ord: Vec::new(),
            lookup: names
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), Elem(i as u16)))
                .collect(),
            names,
        };
        if ring.lookup.len() != n {
            return Err(Error::NotARing("element names are not distinct".into()));
        }

        ring.ideal_generators = ring.minimal_ideal_generators(&ring.maximal_ideal.clone());

        let mut next = 0u32;
        let mut assigned = vec![false; n];
        for a in 0..n {
            if assigned[a] {
                continue;
            }
            for &m in &ring.maximal_ideal {
                let b = ring.add(Elem(a as u16), m).index();
                assigned[b] = true;
                ring.residue[b] = next;
            }
            next += 1;
        }
        ring.residue_size = next as usize;

        ring.nilpotency = ring.compute_nilpotency();

        let theta = match theta {
            Some(t) => Some(t),
            None => ring.find_chain_generator(),
        };
        if let Some(theta) = theta {
            ring.chain = Some(ChainData { theta });
            let nu = ring.nilpotency;
            let mut ord = vec![0u32; n];
            for t in 1..=nu {
                let power = ring.pow(theta, t);
                for r in 0..n {
                    let x = ring.mul(Elem(r as u16), power).index();
                    ord[x] = ord[x].max(t);
                }
            }
            ring.ord = ord;
        }
        Ok(ring)
    }

    fn ideal_closure(&self, gens: &[Elem]) -> Vec<bool> {
        let n = self.size;
        let mut member = vec![false; n];
        member[0] = true;
        let mut elems = vec![Elem::ZERO];
        for &g in gens {
            if member[g.index()] {
                continue;
            }
            let multiples: HashSet<Elem> = self.elements().map(|r| self.mul(r, g)).collect();
            let mut grown = Vec::with_capacity(elems.len() * multiples.len());
            for &x in &elems {
                for &y in &multiples {
                    let s = self.add(x, y);
                    if !member[s.index()] {
                        member[s.index()] = true;
                        grown.push(s);
                    }
                }
            }
            elems.extend(grown);
        }
        member
    }

    fn minimal_ideal_generators(&self, ideal: &[Elem]) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut current = self.ideal_closure(&[]);
        for &a in ideal {
            if !current[a.index()] {
                gens.push(a);
                current = self.ideal_closure(&gens);
            }
        }
        gens
    }

    fn compute_nilpotency(&self) -> u32 {
        // m^1 = m; m^(i+1) is generated by products of m^i with m.
        let mut power: Vec<Elem> = self.maximal_ideal.clone();
        let mut nu = 1;
        while power.iter().any(|&a| a != Elem::ZERO) {
            let products: Vec<Elem> = power
                .iter()
                .flat_map(|&a| self.maximal_ideal.iter().map(move |&b| (a, b)))
                .map(|(a, b)| self.mul(a, b))
                .collect::<HashSet<_>>()
                .into_iter()
                .collect();
            let member = self.ideal_closure(&products);
            power = (0..self.size)
                .filter(|&i| member[i])
                .map(|i| Elem(i as u16))
                .collect();
            nu += 1;
        }
        nu
    }

    /// Chain test: finite ideals are linearly ordered iff the principal ideals are.
    fn find_chain_generator(&self) -> Option<Elem> {
        let mut ideals: Vec<Vec<bool>> = Vec::new();
        let mut seen = HashSet::new();
        for a in self.elements() {
            let member = self.principal_ideal(a);
            if seen.insert(member.clone()) {
                ideals.push(member);
            }
        }
        for (i, x) in ideals.iter().enumerate() {
            for y in &ideals[i + 1..] {
                let x_in_y = x.iter().zip(y).all(|(&a, &b)| !a || b);
                let y_in_x = x.iter().zip(y).all(|(&a, &b)| !b || a);
                if !x_in_y && !y_in_x {
                    return None;
                }
            }
        }
        let m_size = self.maximal_ideal.len();
        self.maximal_ideal
            .iter()
            .copied()
            .find(|&a| self.principal_ideal(a).iter().filter(|&&b| b).count() == m_size)
    }

    fn principal_ideal(&self, a: Elem) -> Vec<bool> {
        let mut member = vec![false; self.size];
        for r in self.elements() {
            member[self.mul(r, a).index()] = true;
        }
        member
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    /// Canonical ring spec, suitable for the `ring` line of a matrix file.
    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.size as u16).map(Elem)
    }

    /// Element with the given canonical index. Panics when out of range.
    pub fn elem(&self, index: usize) -> Elem {
        assert!(index < self.size, "index {index} outside ring of size {}", self.size);
        Elem(index as u16)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.add[a.index() * self.size + b.index()])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.mul[a.index() * self.size + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: Elem, e: u32) -> Elem {
        (0..e).fold(Elem::ONE, |acc, _| self.mul(acc, a))
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inverse[a.index()].is_some()
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.inverse[a.index()].map(Elem)
    }

    pub fn units(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements().filter(|&a| self.is_unit(a))
    }

    /// The non-units, in index order.
    pub fn maximal_ideal(&self) -> &[Elem] {
        &self.maximal_ideal
    }

    pub fn in_maximal_ideal(&self, a: Elem) -> bool {
        !self.is_unit(a)
    }

    /// A minimal generating set of the maximal ideal.
    pub fn maximal_ideal_generators(&self) -> &[Elem] {
        &self.ideal_generators
    }

    pub fn is_chain(&self) -> bool {
        self.chain.is_some()
    }

    /// A generator of the maximal ideal of a chain ring.
    pub fn theta(&self) -> Result<Elem> {
        self.chain.map(|c| c.theta).ok_or(Error::NotChainRing)
    }

    /// Nilpotency index of the maximal ideal: the least `ν` with `m^ν = 0`.
    pub fn nu(&self) -> u32 {
        self.nilpotency
    }

    /// Size of the residue field `R/m`.
    pub fn q(&self) -> usize {
        self.residue_size
    }

    /// Largest `t` with `a ∈ ⟨θ^t⟩`; `ord(0) = ν`.
    pub fn ord_theta(&self, a: Elem) -> Result<u32> {
        if self.chain.is_none() {
            return Err(Error::NotChainRing);
        }
        Ok(self.ord[a.index()])
    }

    /// For nonzero `a` in a chain ring, a unit `u` and `t = ord(a)` with `a = u θ^t`.
    pub fn unit_factor(&self, a: Elem) -> Result<Option<(Elem, u32)>> {
        let theta = self.theta()?;
        if a == Elem::ZERO {
            return Ok(None);
        }
        let t = self.ord[a.index()];
        let power = self.pow(theta, t);
        let u = self
            .units()
            .find(|&u| self.mul(u, power) == a)
            .expect("chain factorisation exists");
        Ok(Some((u, t)))
    }

    /// `{x : x a = 0}` in index order.
    pub fn annihilator(&self, a: Elem) -> Vec<Elem> {
        self.elements().filter(|&x| self.mul(x, a) == Elem::ZERO).collect()
    }

    /// Index of the coset `a + m` in `R/m`; cosets are numbered by least representative.
    pub fn residue(&self, a: Elem) -> u32 {
        self.residue[a.index()]
    }

    /// Least `c` (by index) with `c a = b`, if any.
    pub fn divide(&self, b: Elem, a: Elem) -> Option<Elem> {
        self.elements().find(|&c| self.mul(c, a) == b)
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a.index()]
    }

    /// Parse an element token: a name, a decimal index, or (for `F_p[u]`) a polynomial.
    pub fn parse_elem(&self, token: &str) -> Result<Elem> {
        if let Some(&e) = self.lookup.get(token) {
            return Ok(e);
        }
        if let Ok(i) = token.parse::<usize>() {
            if i < self.size {
                return Ok(Elem(i as u16));
            }
        }
        if let RingKind::Fpu { p, nu } = self.kind {
            if let Some(e) = parse_poly(token, p as usize, nu as usize) {
                return Ok(Elem(e as u16));
            }
        }
        Err(Error::UnknownElement(token.to_string()))
    }
}

fn poly_name(coeffs: &[usize], var: &str) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let power = match i {
                0 => String::new(),
                1 => var.to_string(),
                i => format!("{var}^{i}"),
            };
            match (c, i) {
                (c, 0) => c.to_string(),
                (1, _) => power,
                (c, _) => format!("{c}{power}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// Parse `c0+c1u+c2u^2...` (terms in any order) into the `F_p[u]` index.
fn parse_poly(token: &str, p: usize, nu: usize) -> Option<usize> {
    let mut coeffs = vec![0usize; nu];
    for term in token.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return None;
        }
        let (coef, exp) = match term.find('u') {
            None => (term.parse::<usize>().ok()?, 0),
            Some(pos) => {
                let c = if pos == 0 {
                    1
                } else {
                    term[..pos].parse::<usize>().ok()?
                };
                let rest = &term[pos + 1..];
                let e = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')?.parse::<usize>().ok()?
                };
                (c, e)
            }
        };
        if exp < nu {
            coeffs[exp] = (coeffs[exp] + coef) % p;
        }
    }
    Some(coeffs.iter().rev().fold(0, |acc, &d| acc * p + d))
}

fn check_ring_axioms(n: usize, add: &[u16], mul: &[u16]) -> Result<()> {
    let a_ = |a: usize, b: usize| add[a * n + b] as usize;
    let m_ = |a: usize, b: usize| mul[a * n + b] as usize;
    let fail = |msg: String| Err(Error::NotARing(msg));
    for a in 0..n {
        if a_(0, a) != a {
            return fail(format!("0 is not an additive identity for {a}"));
        }
        if m_(1, a) != a {
            return fail(format!("1 is not a multiplicative identity for {a}"));
        }
        if !(0..n).any(|b| a_(a, b) == 0) {
            return fail(format!("{a} has no additive inverse"));
        }
        for b in 0..n {
            if a_(a, b) != a_(b, a) {
                return fail(format!("addition is not commutative at ({a},{b})"));
            }
            if m_(a, b) != m_(b, a) {
                return fail(format!("multiplication is not commutative at ({a},{b})"));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = a_(a, b);
            let mab = m_(a, b);
            for c in 0..n {
                if a_(ab, c) != a_(a, a_(b, c)) {
                    return fail(format!("addition is not associative at ({a},{b},{c})"));
                }
                if m_(mab, c) != m_(a, m_(b, c)) {
                    return fail(format!("multiplication is not associative at ({a},{b},{c})"));
                }
                if m_(a, a_(b, c)) != a_(mab, m_(a, c)) {
                    return fail(format!("distributivity fails at ({a},{b},{c})"));
                }
            }
        }
    }
    Ok(())
}
