//! Brute-force oracles recomputed from the multiplication table alone.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use mfd_core::catalog::{expand_catalog, Params};
use mfd_core::group::Group;
use mfd_core::presentation::enumerate_regular;
use mfd_core::Limits;

pub fn params(kv: &[(&str, i64)]) -> Params {
    kv.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// Catalog groups of order at most 729, plus SD16.
pub fn small_corpus() -> Vec<(&'static str, u64, Params)> {
    vec![
        ("xsp_p3_expP", 3, params(&[])),
        ("xsp_p3_expP", 5, params(&[])),
        ("xsp_p3_expP2", 3, params(&[])),
        ("xsp_p3_expP2", 5, params(&[])),
        ("xsp_x_cp", 3, params(&[])),
        ("xsp_x_cp", 5, params(&[])),
        ("xsp2_x_cp2", 3, params(&[])),
        ("abelian", 3, params(&[("r1", 1), ("r2", 2)])),
        ("abelian", 3, params(&[("r1", 1), ("r2", 1), ("r3", 1)])),
        ("abelian", 2, params(&[("r1", 1), ("r2", 2)])),
        ("sd16", 2, params(&[])),
        ("tower", 3, params(&[("n", 3), ("i", 2)])),
        ("tower", 5, params(&[("n", 4), ("i", 2)])),
        ("tower", 5, params(&[("n", 4), ("i", 3)])),
    ]
}

pub fn build(family: &str, p: u64, ps: &Params) -> Group {
    let spec = expand_catalog(family, p, ps).unwrap();
    Group::new(enumerate_regular(&spec, &Limits::default()).unwrap())
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: u32) {
        self.0[i as usize / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: u32) -> bool {
        self.0[i as usize / 64] >> (i % 64) & 1 == 1
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
}

pub struct Oracle<'a> {
    g: &'a Group,
    n: usize,
    e: u32,
    inv: Vec<u32>,
}

impl<'a> Oracle<'a> {
    pub fn new(g: &'a Group) -> Self {
        let n = g.order();
        let e = (0..n as u32).find(|&x| g.mul(x, x) == x).unwrap();
        let inv = (0..n as u32)
            .map(|x| (0..n as u32).find(|&y| g.mul(x, y) == e).unwrap())
            .collect();
        Oracle { g, n, e, inv }
    }

    fn pow(&self, x: u32, k: u64) -> u32 {
        (0..k).fold(self.e, |acc, _| self.g.mul(acc, x))
    }

    fn elem_order(&self, x: u32) -> u64 {
        let mut y = x;
        let mut k = 1;
        while y != self.e {
            y = self.g.mul(y, x);
            k += 1;
        }
        k
    }

    /// Every subgroup, built bottom-up: in a p-group each subgroup sits at
    /// the top of a chain whose steps `H < <H, x>` have index p with `x`
    /// normalising `H` and `x^p` in `H`.
    pub fn all_subgroups(&self, p: u64) -> Vec<Vec<u32>> {
        let inv = &self.inv;
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut level = vec![vec![self.e]];
        seen.insert(vec![self.e]);
        let mut out = Vec::new();
        while !level.is_empty() {
            let mut next = Vec::new();
            for h in &level {
                let mut in_h = Bits::new(self.n);
                for &x in h {
                    in_h.set(x);
                }
                let mut covered = in_h.clone();
                for x in 0..self.n as u32 {
                    if covered.get(x) || !in_h.get(self.pow(x, p)) {
                        continue;
                    }
                    let normalises = h
                        .iter()
                        .all(|&y| in_h.get(self.g.mul(self.g.mul(x, y), inv[x as usize])));
                    if !normalises {
                        continue;
                    }
                    let mut k = Vec::with_capacity(h.len() * p as usize);
                    let mut xi = self.e;
                    for _ in 0..p {
                        k.extend(h.iter().map(|&y| self.g.mul(y, xi)));
                        xi = self.g.mul(xi, x);
                    }
                    k.sort_unstable();
                    for &y in &k {
                        covered.set(y);
                    }
                    if seen.insert(k.clone()) {
                        next.push(k);
                    }
                }
            }
            out.append(&mut level);
            level = next;
        }
        out
    }

    fn core(&self, h: &[u32]) -> Bits {
        let mut in_h = Bits::new(self.n);
        for &x in h {
            in_h.set(x);
        }
        let inv = &self.inv;
        let mut core = Bits::new(self.n);
        for &y in h {
            if (0..self.n as u32).all(|x| in_h.get(self.g.mul(self.g.mul(x, y), inv[x as usize]))) {
                core.set(y);
            }
        }
        core
    }

    pub fn center_rank(&self, p: u64) -> usize {
        let central: Vec<u32> = (0..self.n as u32)
            .filter(|&z| (0..self.n as u32).all(|x| self.g.mul(x, z) == self.g.mul(z, x)))
            .collect();
        let omega = central
            .iter()
            .filter(|&&z| p.is_multiple_of(self.elem_order(z)))
            .count();
        let mut d = 0;
        while (p as usize).pow(d) < omega {
            d += 1;
        }
        d as usize
    }

    /// Smallest total index of at most `d` subgroups with trivial common core.
    pub fn mu(&self, p: u64) -> u64 {
        let d = self.center_rank(p);
        let mut by_core: HashMap<Bits, u64> = HashMap::new();
        for h in self.all_subgroups(p) {
            let idx = (self.n / h.len()) as u64;
            let c = self.core(&h);
            by_core
                .entry(c)
                .and_modify(|v| *v = (*v).min(idx))
                .or_insert(idx);
        }
        let cores: Vec<(Bits, u64)> = by_core.into_iter().collect();
        let mut best = u64::MAX;
        fn rec(
            cores: &[(Bits, u64)],
            start: usize,
            left: usize,
            meet: Option<&Bits>,
            total: u64,
            best: &mut u64,
        ) {
            if total >= *best {
                return;
            }
            if meet.is_some_and(|m| m.count() == 1) {
                *best = total;
                return;
            }
            if left == 0 {
                return;
            }
            for i in start..cores.len() {
                let m = match meet {
                    Some(m) => m.and(&cores[i].0),
                    None => cores[i].0.clone(),
                };
                rec(cores, i + 1, left - 1, Some(&m), total + cores[i].1, best);
            }
        }
        rec(&cores, 0, d.max(1), None, 0, &mut best);
        best
    }

    pub fn class_count(&self) -> usize {
        let inv = &self.inv;
        let mut seen = vec![false; self.n];
        let mut k = 0;
        for x in 0..self.n {
            if seen[x] {
                continue;
            }
            k += 1;
            for y in 0..self.n as u32 {
                let c = self.g.mul(self.g.mul(y, x as u32), inv[y as usize]);
                seen[c as usize] = true;
            }
        }
        k
    }
}
