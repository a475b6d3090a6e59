//! Todd–Coxeter enumeration over the trivial subgroup (Felsch strategy).
//!
//! Cosets are defined at the first undefined table entry in scan order; every
//! new entry is pushed on a deduction stack and all relator conjugates through
//! it are scanned. Coincidences are resolved with a union-find queue.

use serde::{Deserialize, Serialize};

use super::{cyclic_reduce, invert_word, GroupSpec, Letter, Word};
use crate::error::{Error, Result};
use crate::limits::Limits;

const NONE: u32 = u32::MAX;

/// The right regular action of a finite group on its element ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularGroup {
    pub order: usize,
    pub generator_names: Vec<String>,
    /// `gen_perms[g][x]` is the id of `x * g`.
    pub gen_perms: Vec<Vec<u32>>,
    /// `inv_perms[g][x]` is the id of `x * g^-1`.
    pub inv_perms: Vec<Vec<u32>>,
    /// Breadth-first spanning tree: `parent[x] * letter[x] = x`.
    pub parent: Vec<u32>,
    pub letter: Vec<Letter>,
    /// Concatenated definition words, `word_start[x]..word_start[x + 1]`.
    word_cols: Vec<u8>,
    word_start: Vec<u32>,
}

impl RegularGroup {
    pub const IDENTITY: u32 = 0;

    pub fn num_generators(&self) -> usize {
        self.gen_perms.len()
    }

    /// Word in the generators reaching `x` from the identity.
    pub fn def_word(&self, x: u32) -> Word {
        self.def_columns(x)
            .iter()
            .map(|&c| Letter::from_column(c as usize))
            .collect()
    }

    #[inline]
    pub fn def_columns(&self, x: u32) -> &[u8] {
        let x = x as usize;
        &self.word_cols[self.word_start[x] as usize..self.word_start[x + 1] as usize]
    }

    #[inline]
    pub fn act_column(&self, x: u32, col: usize) -> u32 {
        if col.is_multiple_of(2) {
            self.gen_perms[col / 2][x as usize]
        } else {
            self.inv_perms[col / 2][x as usize]
        }
    }

    pub fn apply_word(&self, mut x: u32, w: &[Letter]) -> u32 {
        for l in w {
            x = self.act_column(x, l.column());
        }
        x
    }

    fn from_table(table: &[u32], ncols: usize, live: &[u32], names: Vec<String>) -> Self {
        // Renumber live cosets breadth-first from the subgroup coset.
        let n = live.len();
        let max = table.len() / ncols;
        let mut new_id = vec![NONE; max];
        let mut order = Vec::with_capacity(n);
        let mut parent = Vec::with_capacity(n);
        let mut letter = Vec::with_capacity(n);
        new_id[0] = 0;
        order.push(0u32);
        parent.push(0u32);
        letter.push(Letter::new(0, false));
        let mut head = 0;
        while head < order.len() {
            let c = order[head] as usize;
            for col in 0..ncols {
                let d = table[c * ncols + col] as usize;
                if new_id[d] == NONE {
                    new_id[d] = order.len() as u32;
                    order.push(d as u32);
                    parent.push(head as u32);
                    letter.push(Letter::from_column(col));
                }
            }
            head += 1;
        }
        debug_assert_eq!(order.len(), n);
        let ngens = ncols / 2;
        let mut gen_perms = vec![vec![0u32; n]; ngens];
        let mut inv_perms = vec![vec![0u32; n]; ngens];
        for (i, &c) in order.iter().enumerate() {
            for g in 0..ngens {
                gen_perms[g][i] = new_id[table[c as usize * ncols + 2 * g] as usize];
                inv_perms[g][i] = new_id[table[c as usize * ncols + 2 * g + 1] as usize];
            }
        }
        let mut word_cols = Vec::new();
        let mut word_start = Vec::with_capacity(n + 1);
        let mut scratch = Vec::new();
        for x in 0..n {
            word_start.push(word_cols.len() as u32);
            scratch.clear();
            let mut y = x;
            while y != 0 {
                scratch.push(letter[y].column() as u8);
                y = parent[y] as usize;
            }
            word_cols.extend(scratch.iter().rev());
        }
        word_start.push(word_cols.len() as u32);
        RegularGroup {
            order: n,
            generator_names: names,
            gen_perms,
            inv_perms,
            parent,
            letter,
            word_cols,
            word_start,
        }
    }
}

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    /// Union-find parent; `rep[a] == a` iff `a` is alive.
    rep: Vec<u32>,
    deductions: Vec<(u32, u8)>,
    queue: Vec<u32>,
    /// Relator conjugates (as column sequences) grouped by first column.
    by_first: Vec<Vec<Vec<u8>>>,
    limit: usize,
    alive: usize,
}

impl Enumerator {
    #[inline]
    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.ncols + col]
    }

    #[inline]
    fn set(&mut self, c: u32, col: usize, v: u32) {
        self.table[c as usize * self.ncols + col] = v;
    }

    fn new_coset(&mut self) -> Result<u32> {
        if self.alive >= self.limit {
            return Err(Error::BudgetExceeded {
                what: "coset enumeration",
                limit: self.limit,
            });
        }
        let id = self.rep.len() as u32;
        self.rep.push(id);
        self.table.extend(std::iter::repeat_n(NONE, self.ncols));
        self.alive += 1;
        Ok(id)
    }

    fn define(&mut self, c: u32, col: usize) -> Result<()> {
        let d = self.new_coset()?;
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        self.deductions.push((c, col as u8));
        Ok(())
    }

    fn find(&mut self, mut a: u32) -> u32 {
        let mut root = a;
        while self.rep[root as usize] != root {
            root = self.rep[root as usize];
        }
        while self.rep[a as usize] != root {
            let next = self.rep[a as usize];
            self.rep[a as usize] = root;
            a = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.rep[hi as usize] = lo;
            self.queue.push(hi);
            self.alive -= 1;
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for col in 0..self.ncols {
                let d = self.get(g, col);
                if d == NONE {
                    continue;
                }
                self.set(d, col ^ 1, NONE);
                let mu = self.find(g);
                let nu = self.find(d);
                let mu_x = self.get(mu, col);
                if mu_x != NONE {
                    self.merge(nu, mu_x);
                } else {
                    let nu_inv = self.get(nu, col ^ 1);
                    if nu_inv != NONE {
                        self.merge(mu, nu_inv);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, col ^ 1, mu);
                        self.deductions.push((mu, col as u8));
                    }
                }
            }
        }
    }

    /// Scan `w` at coset `a`, recording a deduction or coincidence if it closes.
    fn scan(&mut self, a: u32, w: &[u8]) {
        let n = w.len();
        let mut f = a;
        let mut i = 0;
        while i < n {
            let next = self.get(f, w[i] as usize);
            if next == NONE {
                break;
            }
            f = next;
            i += 1;
        }
        if i == n {
            if f != a {
                self.coincidence(f, a);
            }
            return;
        }
        let mut b = a;
        let mut j = n;
        while j > i {
            let next = self.get(b, (w[j - 1] ^ 1) as usize);
            if next == NONE {
                break;
            }
            b = next;
            j -= 1;
        }
        if j == i {
            self.coincidence(f, b);
        } else if j == i + 1 {
            let col = w[i] as usize;
            self.set(f, col, b);
            self.set(b, col ^ 1, f);
            self.deductions.push((f, col as u8));
        }
    }

    fn process_deductions(&mut self) {
        while let Some((a, col)) = self.deductions.pop() {
            let col = col as usize;
            if self.rep[a as usize] != a {
                continue;
            }
            let nrel = self.by_first[col].len();
            for k in 0..nrel {
                let w = std::mem::take(&mut self.by_first[col][k]);
                self.scan(a, &w);
                self.by_first[col][k] = w;
                if self.rep[a as usize] != a {
                    break;
                }
            }
            if self.rep[a as usize] != a {
                continue;
            }
            let b = self.get(a, col);
            if b == NONE {
                continue;
            }
            let inv = col ^ 1;
            let nrel = self.by_first[inv].len();
            for k in 0..nrel {
                let w = std::mem::take(&mut self.by_first[inv][k]);
                self.scan(b, &w);
                self.by_first[inv][k] = w;
                if self.rep[b as usize] != b {
                    break;
                }
            }
        }
    }
}

/// All distinct cyclic conjugates of the relators and their inverses.
fn relator_conjugates(relators: &[Word], ncols: usize) -> Vec<Vec<Vec<u8>>> {
    let mut by_first: Vec<Vec<Vec<u8>>> = vec![Vec::new(); ncols];
    let mut seen = std::collections::HashSet::new();
    for r in relators {
        let r = cyclic_reduce(r);
        if r.is_empty() {
            continue;
        }
        for w in [r.clone(), invert_word(&r)] {
            let cols: Vec<u8> = w.iter().map(|l| l.column() as u8).collect();
            for s in 0..cols.len() {
                let mut c = cols[s..].to_vec();
                c.extend_from_slice(&cols[..s]);
                if seen.insert(c.clone()) {
                    by_first[c[0] as usize].push(c);
                }
            }
        }
    }
    by_first
}

/// Enumerate the cosets of the trivial subgroup and return the regular action.
pub fn enumerate_regular(spec: &GroupSpec, limits: &Limits) -> Result<RegularGroup> {
    let ngens = spec.generators.len();
    let ncols = 2 * ngens;
    let mut e = Enumerator {
        ncols,
        table: Vec::new(),
        rep: Vec::new(),
        deductions: Vec::new(),
        queue: Vec::new(),
        by_first: relator_conjugates(&spec.relators, ncols),
        limit: limits.enumeration,
        alive: 0,
    };
    e.new_coset()?;
    if ngens == 0 {
        return Ok(RegularGroup {
            order: 1,
            generator_names: Vec::new(),
            gen_perms: Vec::new(),
            inv_perms: Vec::new(),
            parent: vec![0],
            letter: vec![Letter::new(0, false)],
            word_cols: Vec::new(),
            word_start: vec![0, 0],
        });
    }
    let mut a: u32 = 0;
    let mut steps = 0usize;
    while (a as usize) < e.rep.len() {
        if e.rep[a as usize] == a {
            for col in 0..ncols {
                if e.rep[a as usize] != a {
                    break;
                }
                if e.get(a, col) == NONE {
                    e.define(a, col)?;
                    e.process_deductions();
                    steps += 1;
                    if steps.is_multiple_of(4096) {
                        limits.check_deadline("coset enumeration")?;
                    }
                }
            }
        }
        a += 1;
    }
    let live: Vec<u32> = (0..e.rep.len() as u32)
        .filter(|&c| e.rep[c as usize] == c)
        .collect();
    let g = RegularGroup::from_table(&e.table, ncols, &live, spec.generators.clone());
    verify_relators(&g, spec)?;
    Ok(g)
}

fn verify_relators(g: &RegularGroup, spec: &GroupSpec) -> Result<()> {
    for (k, r) in spec.relators.iter().enumerate() {
        for x in 0..g.order as u32 {
            if g.apply_word(x, r) != x {
                return Err(Error::Internal(format!(
                    "relator {k} acts non-trivially on element {x} after enumeration"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn order(text: &str) -> usize {
        let spec = parse_presentation(text).unwrap();
        enumerate_regular(&spec, &Limits::default()).unwrap().order
    }

    #[test]
    fn small_orders() {
        assert_eq!(order("gens a; rels a^5"), 5);
        assert_eq!(order("gens a,b; rels a^3, b^9, [a,b]"), 27);
        assert_eq!(order("gens a,b; rels a^4, b^2, (ab)^2"), 8);
        assert_eq!(order("gens a,b; rels a^2, b^3, (ab)^5"), 60);
        assert_eq!(order("gens a,b; rels a^8, b^2, b^-1*a*b = a^3"), 16);
    }

    #[test]
    fn trivial_presentations() {
        assert_eq!(order("gens a; rels a"), 1);
        assert_eq!(order("gens a,b; rels a^2, a^3, b*a"), 1);
        // a^6 = a forces a^5 = 1 and b = a^2
        assert_eq!(order("gens a,b; rels a^2 = b, b^3 = a"), 5);
    }

    #[test]
    fn infinite_presentation_exhausts_budget() {
        let spec = parse_presentation("gens a,b; rels [a,b]").unwrap();
        let limits = Limits {
            enumeration: 2000,
            ..Limits::default()
        };
        assert!(matches!(
            enumerate_regular(&spec, &limits),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn numbering_is_deterministic_and_words_reach_elements() {
        let spec = parse_presentation("gens a,b; rels a^4, b^2, (ab)^2").unwrap();
        let g1 = enumerate_regular(&spec, &Limits::default()).unwrap();
        let g2 = enumerate_regular(&spec, &Limits::default()).unwrap();
        assert_eq!(g1, g2);
        for x in 0..g1.order as u32 {
            assert_eq!(g1.apply_word(0, &g1.def_word(x)), x);
        }
    }
}
