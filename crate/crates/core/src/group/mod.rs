//! Arithmetic and structure of a realized finite group.
//!
//! Elements are ids of the regular action. `x * y` applies the definition
//! word of `y` to `x`; left multiplication and inversion by generators are
//! tabulated once at construction.

mod abelian;
mod classes;
mod subgroup;

use std::sync::OnceLock;

use crate::arith::{lcm, prime_power};
use crate::presentation::RegularGroup;

pub use abelian::{AbelianInvariants, AbelianSearch};
pub use classes::Classes;
pub(crate) use subgroup::Closure;
pub use subgroup::{fingerprint, Subgroup};

pub type Elt = u32;

pub struct Group {
    reg: RegularGroup,
    /// `left[col][x]` is `letter(col) * x`.
    left: Vec<Vec<Elt>>,
    inverse: Vec<Elt>,
    orders: Vec<u32>,
    exponent: u64,
    classes: OnceLock<Classes>,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group")
            .field("order", &self.order())
            .field("generators", &self.reg.generator_names)
            .finish()
    }
}

impl Group {
    pub fn new(reg: RegularGroup) -> Self {
        let n = reg.order;
        let ncols = 2 * reg.num_generators();
        let mut left = vec![vec![0u32; n]; ncols];
        for (col, l) in left.iter_mut().enumerate() {
            l[0] = reg.act_column(0, col);
            for x in 1..n {
                let par = reg.parent[x];
                l[x] = reg.act_column(l[par as usize], reg.letter[x].column());
            }
        }
        let mut inverse = vec![0u32; n];
        for x in 1..n {
            let par = reg.parent[x] as usize;
            let col = reg.letter[x].column() ^ 1;
            inverse[x] = left[col][inverse[par] as usize];
        }
        let mut g = Group {
            reg,
            left,
            inverse,
            orders: Vec::new(),
            exponent: 1,
            classes: OnceLock::new(),
        };
        let mut orders = vec![0u32; n];
        for x in 0..n as Elt {
            let mut y = x;
            let mut k = 1;
            while y != 0 {
                y = g.mul(y, x);
                k += 1;
            }
            orders[x as usize] = if x == 0 { 1 } else { k };
        }
        g.exponent = orders.iter().fold(1u64, |acc, &o| lcm(acc, o as u64));
        g.orders = orders;
        g
    }

    pub fn regular(&self) -> &RegularGroup {
        &self.reg
    }

    pub fn order(&self) -> usize {
        self.reg.order
    }

    pub fn num_generators(&self) -> usize {
        self.reg.num_generators()
    }

    /// Element ids of the presentation generators.
    pub fn generators(&self) -> Vec<Elt> {
        (0..self.num_generators())
            .map(|g| self.reg.gen_perms[g][0])
            .collect()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.reg.generator_names
    }

    /// `(p, n)` with `|G| = p^n`, if the order is a prime power.
    pub fn prime_power(&self) -> Option<(u64, u32)> {
        match prime_power(self.order() as u64) {
            Some((p, n)) if n > 0 => Some((p, n)),
            _ => None,
        }
    }

    pub fn prime(&self) -> Option<u64> {
        self.prime_power().map(|(p, _)| p)
    }

    #[inline]
    pub fn mul(&self, x: Elt, y: Elt) -> Elt {
        let mut z = x;
        for &c in self.reg.def_columns(y) {
            z = self.reg.act_column(z, c as usize);
        }
        z
    }

    #[inline]
    pub fn inv(&self, x: Elt) -> Elt {
        self.inverse[x as usize]
    }

    pub fn power(&self, x: Elt, k: i64) -> Elt {
        let o = self.orders[x as usize] as i64;
        let mut e = k.rem_euclid(o);
        let mut base = x;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub fn element_order(&self, x: Elt) -> u32 {
        self.orders[x as usize]
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// `y^-1 x y`.
    pub fn conj(&self, x: Elt, y: Elt) -> Elt {
        self.mul(self.mul(self.inverse[y as usize], x), y)
    }

    /// `x^-1 y^-1 x y`.
    pub fn commutator(&self, x: Elt, y: Elt) -> Elt {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(self.inverse[yx as usize], xy)
    }

    /// Conjugate of `x` by generator `g`: `g^-1 x g`.
    #[inline]
    pub fn conj_gen(&self, x: Elt, g: usize) -> Elt {
        let y = self.left[2 * g + 1][x as usize];
        self.reg.gen_perms[g][y as usize]
    }

    /// Whether `x` commutes with generator `g`.
    #[inline]
    pub fn commutes_with_gen(&self, x: Elt, g: usize) -> bool {
        self.left[2 * g][x as usize] == self.reg.gen_perms[g][x as usize]
    }

    /// Right multiplication `y -> y * x` as a permutation of all elements.
    pub fn right_perm(&self, x: Elt) -> Vec<Elt> {
        (0..self.order() as Elt).map(|y| self.mul(y, x)).collect()
    }

    /// Left multiplication `y -> x * y` as a permutation of all elements.
    pub fn left_perm(&self, x: Elt) -> Vec<Elt> {
        let n = self.order();
        let mut out = vec![0u32; n];
        out[0] = x;
        for y in 1..n {
            let par = self.reg.parent[y];
            out[y] = self
                .reg
                .act_column(out[par as usize], self.reg.letter[y].column());
        }
        out
    }

    /// Element as a word in the presentation generators.
    pub fn word(&self, x: Elt) -> String {
        let w = self.reg.def_word(x);
        if w.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < w.len() {
            let l = w[i];
            let mut run = 1;
            while i + run < w.len() && w[i + run] == l {
                run += 1;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(&self.reg.generator_names[l.generator as usize]);
            let e = if l.inverse { -(run as i64) } else { run as i64 };
            if e != 1 {
                out.push_str(&format!("^{e}"));
            }
            i += run;
        }
        out
    }

    pub fn classes(&self) -> &Classes {
        self.classes.get_or_init(|| Classes::compute(self))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        (0..gens.len()).all(|g| (0..gens.len()).all(|h| self.commutes_with_gen(gens[h], g)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{enumerate_regular, parse_presentation};
    use crate::Limits;

    pub(crate) fn group(text: &str) -> Group {
        let spec = parse_presentation(text).unwrap();
        Group::new(enumerate_regular(&spec, &Limits::default()).unwrap())
    }

    #[test]
    fn arithmetic_laws() {
        let g = group("gens a,b; rels a^8, b^2, b^-1*a*b = a^3");
        let n = g.order() as Elt;
        for x in 0..n {
            assert_eq!(g.mul(0, x), x);
            assert_eq!(g.mul(x, g.inv(x)), 0);
            assert_eq!(g.mul(g.inv(x), x), 0);
            assert_eq!(g.power(x, g.element_order(x) as i64), 0);
            for y in 0..n {
                let z = (x * 7 + y) % n;
                assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
            }
        }
        assert_eq!(g.exponent(), 8);
    }

    #[test]
    fn cyclic_orders() {
        let g = group("gens a; rels a^9");
        let a = g.generators()[0];
        assert_eq!(g.element_order(g.power(a, 3)), 3);
        assert_eq!(g.power(a, -1), g.inv(a));
    }

    #[test]
    fn conjugation_by_generators() {
        let g = group("gens x,y,z; rels [x,y]=z, [x,z], [y,z], x^3, y^3, z^3");
        let gens = g.generators();
        for x in 0..g.order() as Elt {
            for (i, &h) in gens.iter().enumerate() {
                assert_eq!(g.conj_gen(x, i), g.conj(x, h));
                assert_eq!(g.commutes_with_gen(x, i), g.mul(x, h) == g.mul(h, x));
            }
            assert!(g.element_order(x) == 1 || g.element_order(x) == 3);
        }
        let lp = g.left_perm(gens[1]);
        for x in 0..g.order() as Elt {
            assert_eq!(lp[x as usize], g.mul(gens[1], x));
        }
        assert!(!g.is_abelian());
    }
}
