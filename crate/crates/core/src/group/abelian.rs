use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Closure, Elt, Group, Subgroup};
use crate::arith::{log_exact, prime_factors};
use crate::error::{Error, Result};

/// Primary decomposition of a finite abelian group, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianInvariants(pub Vec<u64>);

impl AbelianInvariants {
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn order(&self) -> u64 {
        self.0.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.0.iter().copied().fold(1, crate::arith::lcm)
    }

    pub fn is_cyclic(&self) -> bool {
        self.0.len() <= 1
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(|q| format!("C{q}")).collect();
        f.write_str(&parts.join(" x "))
    }
}

/// Result of an upward search through abelian normal subgroups.
#[derive(Clone, Debug)]
pub struct AbelianSearch {
    /// Every abelian normal subgroup containing the base, in discovery order.
    pub subgroups: Vec<Subgroup>,
}

impl AbelianSearch {
    pub fn max_order(&self) -> usize {
        self.subgroups.iter().map(|s| s.order()).max().unwrap_or(0)
    }

    /// Subgroups of maximal order, sorted by element list.
    pub fn of_max_order(&self) -> Vec<&Subgroup> {
        let m = self.max_order();
        let mut v: Vec<&Subgroup> = self.subgroups.iter().filter(|s| s.order() == m).collect();
        v.sort_by(|a, b| a.elements().cmp(b.elements()));
        v
    }
}

impl Group {
    pub fn abelian_invariants(&self, a: &Subgroup) -> Result<AbelianInvariants> {
        let gens = a.generators();
        for (i, &x) in gens.iter().enumerate() {
            for &y in &gens[i + 1..] {
                if self.mul(x, y) != self.mul(y, x) {
                    return Err(Error::NotAbelian);
                }
            }
        }
        let mut out = Vec::new();
        for q in prime_factors(a.order() as u64) {
            // w[k] = log_q |{x : x^(q^k) = 1}|
            let mut w = vec![0u32];
            let mut k = 0;
            loop {
                k += 1;
                let qk = q.pow(k);
                let count = a
                    .elements()
                    .iter()
                    .filter(|&&x| qk % self.element_order(x) as u64 == 0)
                    .count();
                let wk = log_exact(count as u64, q).expect("layer is a q-group");
                w.push(wk);
                if wk == w[k as usize - 1] {
                    break;
                }
            }
            let at_least: Vec<u32> = (1..w.len()).map(|k| w[k] - w[k - 1]).collect();
            for k in 1..=at_least.len() {
                let ge = at_least[k - 1];
                let gt = at_least.get(k).copied().unwrap_or(0);
                for _ in 0..ge - gt {
                    out.push(q.pow(k as u32));
                }
            }
        }
        out.sort_unstable();
        Ok(AbelianInvariants(out))
    }

    /// `Ω_1` of an abelian subgroup: its elements of order dividing `p`.
    pub fn omega1(&self, a: &Subgroup, p: u64) -> Subgroup {
        let elems = a
            .elements()
            .iter()
            .copied()
            .filter(|&x| p.is_multiple_of(self.element_order(x) as u64))
            .collect();
        self.subgroup_from_elements(elems)
    }

    /// All abelian normal subgroups containing the abelian normal subgroup
    /// `base`, found by adjoining one element at a time whose image is central
    /// of order `p` modulo the current subgroup. With `elementary`, only
    /// elementary abelian subgroups are produced (then `base` must be one).
    pub fn abelian_normal_search(
        &self,
        base: &Subgroup,
        p: u64,
        elementary: bool,
        budget: usize,
    ) -> Result<AbelianSearch> {
        let n = self.order();
        let ngens = self.num_generators();
        let mut seen: HashSet<Vec<Elt>> = HashSet::new();
        seen.insert(base.elements().to_vec());
        let pool: Vec<Elt> = (0..n as Elt)
            .filter(|&x| {
                base.generators()
                    .iter()
                    .all(|&s| self.mul(x, s) == self.mul(s, x))
            })
            .collect();
        let mut stack = vec![(base.clone(), pool)];
        let mut found = Vec::new();
        let mut label = vec![u32::MAX; n];
        let mut covered = vec![false; n];
        while let Some((a, pool)) = stack.pop() {
            if found.len() >= budget {
                return Err(Error::BudgetExceeded {
                    what: "abelian normal subgroup search",
                    limit: budget,
                });
            }
            // Cosets of `a` inside its centralizer.
            for &y in &pool {
                if label[y as usize] != u32::MAX {
                    continue;
                }
                label[y as usize] = y;
                let mut coset = vec![y];
                let mut i = 0;
                while i < coset.len() {
                    let z = coset[i];
                    for &s in a.generators() {
                        let w = self.mul(z, s);
                        if label[w as usize] == u32::MAX {
                            label[w as usize] = y;
                            coset.push(w);
                        }
                    }
                    i += 1;
                }
            }
            let mut children = Vec::new();
            for &x in &pool {
                if covered[x as usize] || a.contains(x) {
                    continue;
                }
                let lx = label[x as usize];
                let central = (0..ngens).all(|g| label[self.conj_gen(x, g) as usize] == lx);
                if !central {
                    continue;
                }
                let ok = if elementary {
                    self.element_order(x) as u64 == p
                } else {
                    a.contains(self.power(x, p as i64))
                };
                if !ok {
                    continue;
                }
                let mut c = Closure::new(n);
                for &s in a.generators() {
                    c.add(self, s);
                }
                c.add(self, x);
                for &y in &c.elems {
                    covered[y as usize] = true;
                }
                children.push((c.into_subgroup(), x));
            }
            for &y in &pool {
                label[y as usize] = u32::MAX;
                covered[y as usize] = false;
            }
            for (b, x) in children.into_iter().rev() {
                if !seen.insert(b.elements().to_vec()) {
                    continue;
                }
                let sub: Vec<Elt> = pool
                    .iter()
                    .copied()
                    .filter(|&y| self.mul(y, x) == self.mul(x, y))
                    .collect();
                stack.push((b, sub));
            }
            found.push(a);
        }
        Ok(AbelianSearch { subgroups: found })
    }

    /// An abelian normal subgroup of maximal order; among those, one of
    /// largest exponent, then smallest element list.
    pub fn max_abelian_normal(&self, p: u64, budget: usize) -> Result<Subgroup> {
        let search = self.abelian_normal_search(&self.center(), p, false, budget)?;
        let best = search
            .of_max_order()
            .into_iter()
            .max_by(|a, b| {
                let ea = self.subgroup_exponent(a);
                let eb = self.subgroup_exponent(b);
                ea.cmp(&eb).then_with(|| b.elements().cmp(a.elements()))
            })
            .expect("center itself is abelian normal")
            .clone();
        Ok(best)
    }

    pub fn subgroup_exponent(&self, h: &Subgroup) -> u64 {
        h.elements()
            .iter()
            .map(|&x| self.element_order(x) as u64)
            .fold(1, crate::arith::lcm)
    }
}
