use std::hash::{Hash, Hasher};

use super::{Elt, Group};
use crate::arith::log_exact;

/// A subgroup stored as its sorted element ids plus a small generating set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    elements: Vec<Elt>,
    gens: Vec<Elt>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

/// 64-bit FNV-1a over the sorted id list.
pub fn fingerprint(elements: &[Elt]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &x in elements {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

impl Subgroup {
    pub fn trivial() -> Self {
        Subgroup {
            elements: vec![0],
            gens: Vec::new(),
        }
    }

    /// Caller guarantees `elements` is a sorted subgroup generated by `gens`.
    pub fn from_parts(mut elements: Vec<Elt>, gens: Vec<Elt>) -> Self {
        elements.sort_unstable();
        Subgroup { elements, gens }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Elt] {
        &self.elements
    }

    pub fn generators(&self) -> &[Elt] {
        &self.gens
    }

    pub fn contains(&self, x: Elt) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn fingerprint(&self) -> u64 {
        fingerprint(&self.elements)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Sorted ids of `self ∩ other`.
    pub fn intersect_elements(&self, other: &Subgroup) -> Vec<Elt> {
        let (a, b) = (&self.elements, &other.elements);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }
}

/// Incremental subgroup closure with a dense membership mask.
pub(crate) struct Closure {
    pub mark: Vec<bool>,
    pub elems: Vec<Elt>,
    pub gens: Vec<Elt>,
}

impl Closure {
    pub fn new(n: usize) -> Self {
        let mut mark = vec![false; n];
        mark[0] = true;
        Closure {
            mark,
            elems: vec![0],
            gens: Vec::new(),
        }
    }

    /// Replace the current set by `⟨current, x⟩`; returns false if `x` was present.
    pub fn add(&mut self, g: &Group, x: Elt) -> bool {
        if self.mark[x as usize] {
            return false;
        }
        self.gens.push(x);
        let old = self.elems.len();
        for i in 0..old {
            let y = g.mul(self.elems[i], x);
            if !self.mark[y as usize] {
                self.mark[y as usize] = true;
                self.elems.push(y);
            }
        }
        let mut i = old;
        while i < self.elems.len() {
            let y = self.elems[i];
            for k in 0..self.gens.len() {
                let z = g.mul(y, self.gens[k]);
                if !self.mark[z as usize] {
                    self.mark[z as usize] = true;
                    self.elems.push(z);
                }
            }
            i += 1;
        }
        true
    }

    pub fn into_subgroup(self) -> Subgroup {
        Subgroup::from_parts(self.elems, self.gens)
    }
}

impl Group {
    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elements: (0..self.order() as Elt).collect(),
            gens: self.generators(),
        }
    }

    pub fn closure(&self, gens: &[Elt]) -> Subgroup {
        let mut c = Closure::new(self.order());
        for &x in gens {
            c.add(self, x);
        }
        c.into_subgroup()
    }

    /// Subgroup with the given element set; generators are chosen greedily by
    /// decreasing element order.
    pub fn subgroup_from_elements(&self, mut elements: Vec<Elt>) -> Subgroup {
        elements.sort_unstable();
        let mut by_order = elements.clone();
        by_order.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        let mut c = Closure::new(self.order());
        for x in by_order {
            if c.elems.len() == elements.len() {
                break;
            }
            c.add(self, x);
        }
        debug_assert_eq!(c.elems.len(), elements.len());
        Subgroup {
            elements,
            gens: c.gens,
        }
    }

    fn normal_closure_by(
        &self,
        set: &[Elt],
        conj: impl Fn(Elt, usize) -> Elt,
        nconj: usize,
    ) -> Subgroup {
        let mut c = Closure::new(self.order());
        for &x in set {
            c.add(self, x);
        }
        let mut i = 0;
        while i < c.gens.len() {
            let x = c.gens[i];
            for k in 0..nconj {
                let y = conj(x, k);
                c.add(self, y);
            }
            i += 1;
        }
        c.into_subgroup()
    }

    /// Smallest normal subgroup of `G` containing `set`.
    pub fn normal_closure(&self, set: &[Elt]) -> Subgroup {
        self.normal_closure_by(set, |x, k| self.conj_gen(x, k), self.num_generators())
    }

    /// Smallest normal subgroup of `h` containing `set` (a subset of `h`).
    pub fn normal_closure_in(&self, h: &Subgroup, set: &[Elt]) -> Subgroup {
        let hg = h.generators();
        self.normal_closure_by(set, |x, k| self.conj(x, hg[k]), hg.len())
    }

    pub fn center(&self) -> Subgroup {
        let ngens = self.num_generators();
        let elems: Vec<Elt> = (0..self.order() as Elt)
            .filter(|&x| (0..ngens).all(|g| self.commutes_with_gen(x, g)))
            .collect();
        self.subgroup_from_elements(elems)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let gens = self.generators();
        let mut comms = Vec::new();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                comms.push(self.commutator(gens[i], gens[j]));
            }
        }
        self.normal_closure(&comms)
    }

    /// Elements commuting with every element of `set`.
    pub fn centralizer(&self, set: &[Elt]) -> Subgroup {
        let elems: Vec<Elt> = (0..self.order() as Elt)
            .filter(|&x| set.iter().all(|&s| self.mul(x, s) == self.mul(s, x)))
            .collect();
        self.subgroup_from_elements(elems)
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        (0..self.num_generators()).all(|g| {
            h.generators()
                .iter()
                .all(|&x| h.contains(self.conj_gen(x, g)))
        })
    }

    pub fn conjugate(&self, h: &Subgroup, y: Elt) -> Subgroup {
        let mut elems: Vec<Elt> = h.elements().iter().map(|&x| self.conj(x, y)).collect();
        elems.sort_unstable();
        let gens = h.generators().iter().map(|&x| self.conj(x, y)).collect();
        Subgroup {
            elements: elems,
            gens,
        }
    }

    /// Largest normal subgroup of `G` contained in `h`.
    pub fn core(&self, h: &Subgroup) -> Subgroup {
        let n = self.order();
        let mut mark = vec![false; n];
        let mut cur: Vec<Elt> = h.elements().to_vec();
        loop {
            for &x in &cur {
                mark[x as usize] = true;
            }
            let next: Vec<Elt> = cur
                .iter()
                .copied()
                .filter(|&x| {
                    (0..self.num_generators()).all(|g| {
                        // x ∈ K^g  iff  g x g^-1 ∈ K.
                        let y = self.regular().inv_perms[g][x as usize];
                        mark[self.left[2 * g][y as usize] as usize]
                    })
                })
                .collect();
            for &x in &cur {
                mark[x as usize] = false;
            }
            if next.len() == cur.len() {
                break;
            }
            cur = next;
        }
        self.subgroup_from_elements(cur)
    }

    /// `Φ(h) = h^p [h, h]` for a `p`-subgroup `h`.
    pub fn frattini(&self, h: &Subgroup, p: u64) -> Subgroup {
        let gens = h.generators();
        let mut set: Vec<Elt> = gens.iter().map(|&x| self.power(x, p as i64)).collect();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                set.push(self.commutator(gens[i], gens[j]));
            }
        }
        self.normal_closure_in(h, &set)
    }

    /// `d(h)`, the rank of `h / Φ(h)`.
    pub fn frattini_quotient_rank(&self, h: &Subgroup, p: u64) -> u32 {
        let phi = self.frattini(h, p);
        log_exact((h.order() / phi.order()) as u64, p).expect("p-group")
    }

    /// All subgroups of index `p` in the `p`-subgroup `h`, as preimages of the
    /// hyperplanes of `h / Φ(h)`, in a fixed order of normalised functionals.
    pub fn maximal_subgroups(&self, h: &Subgroup, p: u64) -> Vec<Subgroup> {
        self.maximal_subgroups_containing(h, p, &[])
    }

    /// Maximal subgroups of `h` that contain every element of `set` (a subset of `h`).
    pub fn maximal_subgroups_containing(&self, h: &Subgroup, p: u64, set: &[Elt]) -> Vec<Subgroup> {
        if h.is_trivial() {
            return Vec::new();
        }
        let phi = self.frattini(h, p);
        let mut c = Closure::new(self.order());
        for &x in phi.generators() {
            c.add(self, x);
        }
        let mut basis = Vec::new();
        for &x in h.generators() {
            if c.add(self, x) {
                basis.push(x);
            }
        }
        let d = basis.len();
        let p32 = p as u32;
        let mut pw = vec![1u32; d + 1];
        for i in 0..d {
            pw[i + 1] = pw[i] * p32;
        }
        // Coordinates in h / Φ(h) packed in base p.
        let mut coord = vec![u32::MAX; self.order()];
        coord[0] = 0;
        let mut queue = vec![0u32];
        let mut qi = 0;
        while qi < queue.len() {
            let y = queue[qi];
            qi += 1;
            let cy = coord[y as usize];
            for &f in phi.generators() {
                let z = self.mul(y, f);
                if coord[z as usize] == u32::MAX {
                    coord[z as usize] = cy;
                    queue.push(z);
                }
            }
            for (i, &b) in basis.iter().enumerate() {
                let z = self.mul(y, b);
                if coord[z as usize] == u32::MAX {
                    let digit = (cy / pw[i]) % p32;
                    let bumped = if digit + 1 == p32 {
                        cy - digit * pw[i]
                    } else {
                        cy + pw[i]
                    };
                    coord[z as usize] = bumped;
                    queue.push(z);
                }
            }
        }
        debug_assert_eq!(queue.len(), h.order());
        let elems = h.elements();
        let digits: Vec<Vec<u32>> = elems
            .iter()
            .map(|&x| {
                let cx = coord[x as usize];
                (0..d).map(|i| (cx / pw[i]) % p32).collect()
            })
            .collect();
        let fixed: Vec<Vec<u32>> = set
            .iter()
            .map(|&x| {
                let cx = coord[x as usize];
                (0..d).map(|i| (cx / pw[i]) % p32).collect()
            })
            .collect();
        let mut out = Vec::new();
        for f in normalized_functionals(d, p32) {
            let vanishes = fixed
                .iter()
                .all(|dg| dg.iter().zip(&f).map(|(a, b)| a * b).sum::<u32>() % p32 == 0);
            if !vanishes {
                continue;
            }
            let j = f.iter().position(|&v| v != 0).unwrap();
            let members: Vec<Elt> = elems
                .iter()
                .zip(&digits)
                .filter(|(_, dg)| dg.iter().zip(&f).map(|(a, b)| a * b).sum::<u32>() % p32 == 0)
                .map(|(&x, _)| x)
                .collect();
            let mut gens: Vec<Elt> = phi.generators().to_vec();
            for i in 0..d {
                if i == j {
                    continue;
                }
                let t = (p32 - f[i]) % p32;
                gens.push(self.mul(basis[i], self.power(basis[j], t as i64)));
            }
            out.push(Subgroup::from_parts(members, gens));
        }
        out
    }
}

/// Nonzero vectors of `F_p^d` whose first nonzero entry is 1, in lexicographic
/// order of that leading position then the remaining entries.
fn normalized_functionals(d: usize, p: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for lead in 0..d {
        let tail = d - lead - 1;
        let count = (p as u64).pow(tail as u32);
        for mut k in 0..count {
            let mut f = vec![0u32; d];
            f[lead] = 1;
            for slot in f.iter_mut().skip(lead + 1) {
                *slot = (k % p as u64) as u32;
                k /= p as u64;
            }
            out.push(f);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::tests::group;
    use super::*;

    const XSP27: &str = "gens x,y,z; rels [x,y]=z, [x,z], [y,z], x^3, y^3, z^3";

    #[test]
    fn center_and_derived_of_extraspecial() {
        let g = group(XSP27);
        let z = g.center();
        assert_eq!(z.order(), 3);
        assert_eq!(g.derived_subgroup(), z);
        assert_eq!(g.core(&z), z);
        assert_eq!(g.core(&g.whole()), g.whole());
        assert_eq!(g.frattini(&g.whole(), 3), z);
        assert_eq!(g.frattini_quotient_rank(&g.whole(), 3), 2);
    }

    #[test]
    fn maximal_subgroups_counts() {
        let g = group(XSP27);
        let max = g.maximal_subgroups(&g.whole(), 3);
        assert_eq!(max.len(), 4);
        for m in &max {
            assert_eq!(m.order(), 9);
            assert!(g.is_normal(m));
            assert_eq!(&g.closure(m.generators()), m);
        }
        let c9 = group("gens a; rels a^9");
        let m = c9.maximal_subgroups(&c9.whole(), 3);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].order(), 3);
        let c33 = group("gens a,b; rels a^3, b^3, [a,b]");
        assert_eq!(c33.maximal_subgroups(&c33.whole(), 3).len(), 4);
    }

    #[test]
    fn core_of_noncentral_subgroup_is_trivial() {
        let g = group(XSP27);
        let x = g.generators()[0];
        let h = g.closure(&[x]);
        assert!(g.core(&h).is_trivial());
        assert!(!g.is_normal(&h));
    }

    #[test]
    fn centralizer_and_elements() {
        let g = group(XSP27);
        let x = g.generators()[0];
        let c = g.centralizer(&[x]);
        assert_eq!(c.order(), 9);
        let s = g.subgroup_from_elements(c.elements().to_vec());
        assert_eq!(g.closure(s.generators()), c);
        assert!(s.generators().len() <= 2);
    }

    #[test]
    fn functionals_enumerated() {
        assert_eq!(normalized_functionals(3, 3).len(), 13);
        assert_eq!(normalized_functionals(1, 5), vec![vec![1]]);
    }
}
