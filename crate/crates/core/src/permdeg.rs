//! Minimal faithful permutation degree `μ(G)` of a p-group.
//!
//! A family of subgroups acts faithfully on its coset spaces exactly when the
//! intersection of their cores is trivial. In a p-group every nontrivial
//! normal subgroup meets `S = Ω_1(Z(G))`, and `core(H) ∩ S = H ∩ S`, so the
//! condition only depends on the subspaces `H_i ∩ S` of `S`. For each proper
//! subspace `U` we find the largest `H ⊇ U` with `H ∩ S = U` by descending
//! through maximal subgroups level by level, then combine subspaces with
//! trivial intersection at minimal total index.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Elt, Group, Subgroup};
use crate::limits::Limits;

/// Permutation action on the disjoint union of right-coset spaces; points
/// are numbered from 0 internally and printed from 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermAction {
    pub degree: usize,
    pub generator_names: Vec<String>,
    pub images: Vec<Vec<u32>>,
}

impl PermAction {
    /// Cycle notation of generator `i`, points numbered from 1.
    pub fn cycles(&self, i: usize) -> String {
        let img = &self.images[i];
        let mut seen = vec![false; self.degree];
        let mut out = String::new();
        for start in 0..self.degree {
            if seen[start] || img[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push((x + 1).to_string());
                x = img[x] as usize;
            }
            out.push('(');
            out.push_str(&cyc.join(","));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }

    pub fn orbit_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.degree).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for img in &self.images {
            for (x, &y) in img.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y as usize));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..self.degree)
            .filter(|&x| find(&mut parent, x) == x)
            .count()
    }
}

#[derive(Clone, Debug)]
pub struct MuSolution {
    pub mu_value: u64,
    pub witness: Vec<Subgroup>,
    pub degrees: Vec<u64>,
    pub action: PermAction,
    /// False when the search budget ran out; `mu_value` is then an upper bound.
    pub optimal: bool,
}

/// All subgroups of the elementary abelian group `s`, by decreasing order
/// then element list.
fn subspaces(g: &Group, s: &Subgroup) -> Vec<Subgroup> {
    let mut seen: HashSet<Vec<Elt>> = HashSet::new();
    let triv = Subgroup::trivial();
    seen.insert(triv.elements().to_vec());
    let mut all = vec![triv];
    let mut i = 0;
    while i < all.len() {
        let v = all[i].clone();
        for &x in s.elements() {
            if v.contains(x) {
                continue;
            }
            let mut gens = v.generators().to_vec();
            gens.push(x);
            let w = g.closure(&gens);
            if seen.insert(w.elements().to_vec()) {
                all.push(w);
            }
        }
        i += 1;
    }
    all.sort_by(|a, b| {
        b.order()
            .cmp(&a.order())
            .then_with(|| a.elements().cmp(b.elements()))
    });
    all
}

struct Counter<'a> {
    nodes: usize,
    limits: &'a Limits,
}

impl Counter<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limits.mu_nodes {
            return Err(Error::BudgetExceeded {
                what: "mu(G) search nodes",
                limit: self.limits.mu_nodes,
            });
        }
        if self.nodes.is_multiple_of(256) {
            self.limits.check_deadline("mu(G) search")?;
        }
        Ok(())
    }
}

/// Largest `H ⊇ u` with `H ∩ s = u`, provided its index is below `cap`.
fn best_avoiding(
    g: &Group,
    p: u64,
    s: &Subgroup,
    u: &Subgroup,
    cap: u64,
    counter: &mut Counter,
) -> Result<Option<Subgroup>> {
    let meet = |h: &Subgroup| s.elements().iter().filter(|&&x| h.contains(x)).count();
    let whole = g.whole();
    if meet(&whole) == u.order() {
        return Ok(Some(whole));
    }
    let mut level = vec![whole];
    let mut index = 1u64;
    loop {
        index *= p;
        if index >= cap || level.is_empty() {
            return Ok(None);
        }
        let mut seen: HashSet<Vec<Elt>> = HashSet::new();
        let mut next = Vec::new();
        for h in &level {
            for m in g.maximal_subgroups_containing(h, p, u.generators()) {
                counter.tick()?;
                if !seen.insert(m.elements().to_vec()) {
                    continue;
                }
                if meet(&m) == u.order() {
                    return Ok(Some(m));
                }
                next.push(m);
            }
        }
        level = next;
    }
}

struct Candidate {
    meet: Vec<Elt>,
    index: u64,
    subgroup: Subgroup,
}

/// Cheapest irredundant family of candidates whose meets intersect trivially.
fn best_family(cands: &[Candidate], s: &[Elt]) -> Option<(u64, Vec<usize>)> {
    fn dfs(
        cands: &[Candidate],
        start: usize,
        meet: &[Elt],
        total: u64,
        chosen: &mut Vec<usize>,
        best: &mut Option<(u64, Vec<usize>)>,
    ) {
        if meet.len() == 1 {
            if best.as_ref().is_none_or(|b| total < b.0) {
                *best = Some((total, chosen.clone()));
            }
            return;
        }
        for i in start..cands.len() {
            let t = total + cands[i].index;
            if best.as_ref().is_some_and(|b| t >= b.0) {
                break;
            }
            let next: Vec<Elt> = meet
                .iter()
                .copied()
                .filter(|x| cands[i].meet.binary_search(x).is_ok())
                .collect();
            if next.len() == meet.len() {
                continue;
            }
            chosen.push(i);
            dfs(cands, i + 1, &next, t, chosen, best);
            chosen.pop();
        }
    }
    let mut best = None;
    dfs(cands, 0, s, 0, &mut Vec::new(), &mut best);
    best
}

/// `μ(G)` for a p-group.
pub fn solve_mu(g: &Group, limits: &Limits) -> Result<MuSolution> {
    let Some((p, _)) = g.prime_power() else {
        if g.order() != 1 {
            return Err(Error::Internal("mu(G) search needs a p-group".into()));
        }
        let w = vec![g.whole()];
        let action = realize_permutation(g, &w)?;
        return Ok(MuSolution {
            mu_value: 1,
            degrees: vec![1],
            witness: w,
            action,
            optimal: true,
        });
    };
    let n = g.order() as u64;
    let s = g.omega1(&g.center(), p);
    let spaces: Vec<Subgroup> = subspaces(g, &s)
        .into_iter()
        .filter(|u| u.order() < s.order())
        .collect();
    let mut counter = Counter { nodes: 0, limits };
    let mut cands: Vec<Candidate> = Vec::new();
    let mut optimal = true;
    let hyper = s.order() / p as usize;
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut exhausted = false;
    // Hyperplanes first: they give an upper bound that caps the deeper searches.
    for phase in [true, false] {
        for u in spaces.iter().filter(|u| (u.order() == hyper) == phase) {
            let cap = match (&best, phase) {
                (Some(b), false) => b.0,
                _ => n + 1,
            };
            match best_avoiding(g, p, &s, u, cap, &mut counter) {
                Ok(Some(h)) => cands.push(Candidate {
                    meet: s.intersect_elements(&h),
                    index: n / h.order() as u64,
                    subgroup: h,
                }),
                Ok(None) => {}
                Err(Error::BudgetExceeded { .. }) | Err(Error::Timeout(_)) => {
                    optimal = false;
                    exhausted = true;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        cands.sort_by_key(|c| c.index);
        best = best_family(&cands, s.elements());
        if exhausted {
            break;
        }
    }
    let witness: Vec<Subgroup> = match &best {
        Some((_, idx)) => idx.iter().map(|&i| cands[i].subgroup.clone()).collect(),
        None => {
            optimal = false;
            vec![Subgroup::trivial()]
        }
    };
    let degrees: Vec<u64> = witness.iter().map(|h| n / h.order() as u64).collect();
    let action = realize_permutation(g, &witness)?;
    Ok(MuSolution {
        mu_value: degrees.iter().sum(),
        witness,
        degrees,
        action,
        optimal,
    })
}

/// Action of `G` on the disjoint union of the right cosets of the witness
/// subgroups; fails unless the action is faithful.
pub fn realize_permutation(g: &Group, witness: &[Subgroup]) -> Result<PermAction> {
    let n = g.order();
    let mut kernel: Option<Subgroup> = None;
    for h in witness {
        let core = g.core(h);
        kernel = Some(match kernel {
            None => core,
            Some(k) => g.subgroup_from_elements(k.intersect_elements(&core)),
        });
    }
    let kernel_order = kernel.map_or(n, |k| k.order());
    if kernel_order != 1 {
        return Err(Error::NotFaithful { kernel_order });
    }
    let gens = g.generators();
    let mut images = vec![Vec::new(); gens.len()];
    let mut offset = 0u32;
    for h in witness {
        let mut label = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n as Elt {
            if label[x as usize] != u32::MAX {
                continue;
            }
            let id = offset + reps.len() as u32;
            reps.push(x);
            for &y in h.elements() {
                label[g.mul(y, x) as usize] = id;
            }
        }
        for (img, &s) in images.iter_mut().zip(&gens) {
            img.extend(reps.iter().map(|&r| label[g.mul(r, s) as usize]));
        }
        offset += reps.len() as u32;
    }
    Ok(PermAction {
        degree: offset as usize,
        generator_names: g.generator_names().to_vec(),
        images,
    })
}

/// `c(G) = μ(G)` for odd p.
pub fn cross_check_c_mu(c: u64, mu: u64) -> Result<()> {
    if c == mu {
        Ok(())
    } else {
        Err(Error::CMuMismatch { c, mu })
    }
}
