//! Finite presentations and their realization as regular permutation groups.

mod enumerate;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use enumerate::{enumerate_regular, RegularGroup};
pub use parse::parse_presentation;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub generator: u16,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter {
            generator: generator as u16,
            inverse,
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    /// Column index in a coset table: `2g` for `g`, `2g + 1` for `g^-1`.
    #[inline]
    pub fn column(self) -> usize {
        2 * self.generator as usize + self.inverse as usize
    }

    #[inline]
    pub fn from_column(col: usize) -> Self {
        Letter::new(col / 2, col % 2 == 1)
    }
}

pub type Word = Vec<Letter>;

pub fn invert_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inv()).collect()
}

pub fn commutator(x: &[Letter], y: &[Letter]) -> Word {
    let mut w = invert_word(x);
    w.extend(invert_word(y));
    w.extend_from_slice(x);
    w.extend_from_slice(y);
    w
}

/// Free cancellation of adjacent inverse pairs.
pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free and cyclic cancellation.
pub fn cyclic_reduce(w: &[Letter]) -> Word {
    let mut r = free_reduce(w);
    while r.len() >= 2 && r[0] == r[r.len() - 1].inv() {
        r.pop();
        r.remove(0);
    }
    r
}

/// Catalog assertions that the pipeline does not compute itself.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisFlags {
    pub cyclic_center_expected: bool,
    /// Not a direct product of an abelian and a non-abelian subgroup.
    pub not_nontrivial_split: bool,
    pub metabelian_expected: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecMeta {
    pub family: Option<String>,
    pub p: Option<u64>,
    pub params: BTreeMap<String, i64>,
    pub flags: HypothesisFlags,
}

/// A finite presentation together with catalog metadata.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    pub meta: SpecMeta,
}

impl GroupSpec {
    pub fn render_word(&self, w: &[Letter]) -> String {
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
            out.push_str(&self.generators[l.generator as usize]);
            let e = if l.inverse { -(run as i64) } else { run as i64 };
            if e != 1 {
                out.push_str(&format!("^{e}"));
            }
            i += run;
        }
        out
    }

    /// Presentation text in the same format accepted by [`parse_presentation`].
    pub fn to_text(&self) -> String {
        let rels: Vec<String> = self.relators.iter().map(|r| self.render_word(r)).collect();
        format!(
            "gens {}; rels {};",
            self.generators.join(","),
            rels.join(", ")
        )
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
