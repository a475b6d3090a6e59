//! Galois sums of irreducible characters and the minimal degree `c(G)` of a
//! faithful quasi-permutation representation.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::chartab::{CharTable, ClassSet};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// `Ψ = Σ_σ χ^σ` over the Galois orbit of an irreducible `χ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisSum {
    /// Character indices in the orbit, ascending.
    pub orbit: Vec<usize>,
    pub values: Vec<i64>,
    pub psi_degree: u64,
    pub char_degree: u64,
    pub kernel: ClassSet,
    pub contains_linear: bool,
}

impl GaloisSum {
    pub fn representative(&self) -> usize {
        self.orbit[0]
    }
}

/// Partition `Irr(G)` into Galois orbits, ordered by `Ψ(1)` then by
/// representative index.
pub fn galois_orbits(t: &CharTable) -> Result<Vec<GaloisSum>> {
    let e = t.exponent;
    let units: Vec<u64> = (1..=e).filter(|&k| gcd(k, e) == 1).collect();
    let index: HashMap<&[crate::cyclotomic::CycInt], usize> = t
        .chars
        .iter()
        .enumerate()
        .map(|(i, c)| (c.values.as_slice(), i))
        .collect();
    let mut assigned = vec![false; t.chars.len()];
    let mut sums = Vec::new();
    for chi in 0..t.chars.len() {
        if assigned[chi] {
            continue;
        }
        let mut orbit = Vec::new();
        for &k in &units {
            let conj = t.galois_conjugate(chi, k);
            let j = *index.get(conj.as_slice()).ok_or_else(|| {
                Error::Internal(format!(
                    "Galois conjugate of character {chi} is not irreducible"
                ))
            })?;
            if !orbit.contains(&j) {
                orbit.push(j);
            }
        }
        orbit.sort_unstable();
        if !units.len().is_multiple_of(orbit.len()) {
            return Err(Error::Internal("orbit size does not divide φ(e)".into()));
        }
        let mut values = Vec::with_capacity(t.num_classes());
        for c in 0..t.num_classes() {
            let mut acc = crate::cyclotomic::CycInt::zero(e)?;
            for &j in &orbit {
                acc = acc.add(&t.chars[j].values[c])?;
            }
            values.push(acc.as_integer()?);
        }
        let ch = &t.chars[chi];
        for &j in &orbit {
            assigned[j] = true;
            if t.chars[j].kernel != ch.kernel {
                return Err(Error::Internal(
                    "Galois conjugates with different kernels".into(),
                ));
            }
        }
        sums.push(GaloisSum {
            psi_degree: orbit.len() as u64 * ch.degree,
            char_degree: ch.degree,
            kernel: ch.kernel.clone(),
            contains_linear: ch.degree == 1,
            orbit,
            values,
        });
    }
    sums.sort_by_key(|s| (s.psi_degree, s.orbit[0]));
    Ok(sums)
}

/// `m(ξ) = max(0, -min ξ)`.
pub fn m_of(xi: &[i64]) -> u64 {
    xi.iter().copied().min().map_or(0, |m| (-m).max(0) as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CMode {
    /// Families of `min_size..=max_size` Galois sums; assumes a p-group,
    /// where `m(ξ) = ξ(1)/(p-1)` makes `ξ(1)·p/(p-1)` a bound.
    PGroupFast {
        p: u64,
        min_size: usize,
        max_size: usize,
    },
    /// All irredundant kernel-trivial families.
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CSolution {
    pub c_value: u64,
    pub witness: Vec<GaloisSum>,
    /// One character per witness sum.
    pub representatives: Vec<usize>,
    pub xi_degree: u64,
    pub m_value: u64,
    /// Base-p digits of `c`, index 0 holding the coefficient of `p^1`.
    pub base_p_digits: Vec<u64>,
    pub contains_linear_witness: bool,
}

/// `c`, sorted `Ψ(1)` values, sorted representatives, chosen indices.
type Ranked = (u64, Vec<u64>, Vec<usize>, Vec<usize>);

struct Search<'a> {
    sums: &'a [GaloisSum],
    mode: CMode,
    nodes: usize,
    limit: usize,
    limits: &'a Limits,
    best: Option<Ranked>,
}

impl Search<'_> {
    fn bound(&self, deg: u64) -> u64 {
        match self.mode {
            CMode::PGroupFast { p, .. } => deg * p / (p - 1),
            CMode::Exhaustive => deg,
        }
    }

    fn max_size(&self) -> usize {
        match self.mode {
            CMode::PGroupFast { max_size, .. } => max_size,
            CMode::Exhaustive => usize::MAX,
        }
    }

    fn dfs(
        &mut self,
        start: usize,
        chosen: &mut Vec<usize>,
        kernel: &ClassSet,
        deg: u64,
    ) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::BudgetExceeded {
                what: "c(G) search nodes",
                limit: self.limit,
            });
        }
        if self.nodes.is_multiple_of(4096) {
            self.limits.check_deadline("c(G) search")?;
        }
        if kernel.is_identity_only() {
            let size_ok = match self.mode {
                CMode::PGroupFast { min_size, .. } => chosen.len() >= min_size,
                CMode::Exhaustive => true,
            };
            if size_ok && irredundant(self.sums, chosen) {
                self.offer(chosen);
            }
            return Ok(());
        }
        if chosen.len() == self.max_size() {
            return Ok(());
        }
        for i in start..self.sums.len() {
            let s = &self.sums[i];
            let next_deg = deg + s.psi_degree;
            if let Some((best, ..)) = &self.best {
                if self.bound(next_deg) > *best {
                    // Sums are sorted by degree, so later ones are no better.
                    break;
                }
            }
            let k = kernel.intersect(&s.kernel);
            if k.count() == kernel.count() {
                continue;
            }
            chosen.push(i);
            self.dfs(i + 1, chosen, &k, next_deg)?;
            chosen.pop();
        }
        Ok(())
    }

    fn offer(&mut self, chosen: &[usize]) {
        let k = self.sums[0].values.len();
        let mut xi = vec![0i64; k];
        for &i in chosen {
            for (x, v) in xi.iter_mut().zip(&self.sums[i].values) {
                *x += v;
            }
        }
        let c = xi[0] as u64 + m_of(&xi);
        let mut degs: Vec<u64> = chosen.iter().map(|&i| self.sums[i].psi_degree).collect();
        degs.sort_unstable();
        let mut reps: Vec<usize> = chosen
            .iter()
            .map(|&i| self.sums[i].representative())
            .collect();
        reps.sort_unstable();
        let cand = (c, degs, reps, chosen.to_vec());
        let better = match &self.best {
            None => true,
            Some(b) => (&cand.0, &cand.1, &cand.2) < (&b.0, &b.1, &b.2),
        };
        if better {
            self.best = Some(cand);
        }
    }
}

/// Dropping any member leaves a nontrivial kernel intersection.
pub fn irredundant(sums: &[GaloisSum], chosen: &[usize]) -> bool {
    (0..chosen.len()).all(|skip| {
        let mut k: Option<ClassSet> = None;
        for (j, &i) in chosen.iter().enumerate() {
            if j == skip {
                continue;
            }
            k = Some(match k {
                None => sums[i].kernel.clone(),
                Some(k) => k.intersect(&sums[i].kernel),
            });
        }
        !k.is_some_and(|k| k.is_identity_only())
    })
}

impl CMode {
    /// Fast mode for a p-group whose center has rank `d`: exactly `d` sums
    /// for odd `p`, between `⌈d/2⌉` and `d` for `p = 2`.
    pub fn for_p_group(p: u64, d: usize) -> Self {
        let min_size = if p == 2 { d.div_ceil(2) } else { d };
        CMode::PGroupFast {
            p,
            min_size,
            max_size: d,
        }
    }
}

/// Minimise `ξ(1) + m(ξ)` over irredundant faithful families of Galois sums.
pub fn solve_c(
    t: &CharTable,
    sums: &[GaloisSum],
    mode: CMode,
    limits: &Limits,
) -> Result<CSolution> {
    let mut search = Search {
        sums,
        mode,
        nodes: 0,
        limit: limits.c_nodes,
        limits,
        best: None,
    };
    search.dfs(0, &mut Vec::new(), &ClassSet::full(t.num_classes()), 0)?;
    let (c, _, reps, chosen) = search.best.ok_or(Error::NoFaithfulIrreducible)?;
    let witness: Vec<GaloisSum> = chosen.iter().map(|&i| sums[i].clone()).collect();
    let mut xi = vec![0i64; t.num_classes()];
    for s in &witness {
        for (x, v) in xi.iter_mut().zip(&s.values) {
            *x += v;
        }
    }
    let digits = match t.order {
        1 => Vec::new(),
        _ => match crate::arith::prime_power(t.order) {
            Some((p, _)) => base_p_digits(c, p)?,
            None => Vec::new(),
        },
    };
    Ok(CSolution {
        c_value: c,
        contains_linear_witness: witness.iter().any(|s| s.contains_linear),
        witness,
        representatives: reps,
        xi_degree: xi[0] as u64,
        m_value: m_of(&xi),
        base_p_digits: digits,
    })
}

/// Little-endian base-p digits of `c / p`.
pub fn base_p_digits(c: u64, p: u64) -> Result<Vec<u64>> {
    if !c.is_multiple_of(p) {
        return Err(Error::NonzeroUnitsDigit { value: c, p });
    }
    let mut v = c / p;
    let mut out = Vec::new();
    while v > 0 {
        out.push(v % p);
        v /= p;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits() {
        assert_eq!(base_p_digits(150, 5), Ok(vec![0, 1, 1]));
        assert_eq!(base_p_digits(50, 5), Ok(vec![0, 2]));
        assert_eq!(base_p_digits(625, 5), Ok(vec![0, 0, 0, 1]));
        assert_eq!(
            base_p_digits(151, 5),
            Err(Error::NonzeroUnitsDigit { value: 151, p: 5 })
        );
    }

    #[test]
    fn m_values() {
        assert_eq!(m_of(&[1, 1, 1]), 0);
        assert_eq!(m_of(&[2, -1, -1]), 1);
        assert_eq!(m_of(&[6, -3, 0]), 3);
    }
}
