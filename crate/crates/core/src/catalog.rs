//! Parameterised families of named p-groups with their claimed invariants.
//!
//! Every presentation follows the power-commutator convention where any pair
//! of generators whose commutator is not given explicitly commutes; the
//! builder inserts those trivial commutators.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{inv_mod, is_prime, smallest_nonresidue};
use crate::error::{Error, Result};
use crate::presentation::{parse_presentation, GroupSpec, HypothesisFlags, SpecMeta};

pub type Params = BTreeMap<String, i64>;

/// Static description of a catalog family.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub description: &'static str,
    pub constraint: &'static str,
    pub params: &'static [&'static str],
    pub default_p: u64,
    pub min_p: u64,
}

const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        id: "xsp_p3_expP",
        description: "extraspecial group of order p^3 and exponent p",
        constraint: "p >= 3",
        params: &[],
        default_p: 3,
        min_p: 3,
    },
    CatalogEntry {
        id: "xsp_p3_expP2",
        description: "extraspecial group of order p^3 and exponent p^2, <x,y | [y,x] = x^p, x^(p^2) = y^p = 1>",
        constraint: "p >= 3",
        params: &[],
        default_p: 3,
        min_p: 3,
    },
    CatalogEntry {
        id: "xsp_x_cp",
        description: "H x C_p with H extraspecial of order p^3 and exponent p",
        constraint: "p >= 3",
        params: &[],
        default_p: 3,
        min_p: 3,
    },
    CatalogEntry {
        id: "xsp2_x_cp2",
        description: "H x C_{p^2} with H extraspecial of order p^3 and exponent p^2",
        constraint: "p >= 3",
        params: &[],
        default_p: 3,
        min_p: 3,
    },
    CatalogEntry {
        id: "abelian",
        description: "C_{p^r1} x C_{p^r2} x ... (parameters r1, r2, ... >= 1)",
        constraint: "p prime; at least r1",
        params: &["r1", "r2", "..."],
        default_p: 3,
        min_p: 2,
    },
    CatalogEntry {
        id: "sd16",
        description: "semidihedral group of order 16",
        constraint: "p = 2",
        params: &[],
        default_p: 2,
        min_p: 2,
    },
    CatalogEntry {
        id: "phi4_221b",
        description: "Phi_4(221)b, order p^5",
        constraint: "p >= 5",
        params: &[],
        default_p: 5,
        min_p: 5,
    },
    CatalogEntry {
        id: "phi4_221f0",
        description: "Phi_4(221)f_0, order p^5",
        constraint: "p >= 5",
        params: &[],
        default_p: 5,
        min_p: 5,
    },
    CatalogEntry {
        id: "phi4_2111a",
        description: "Phi_4(2111)a, order p^5",
        constraint: "p >= 5",
        params: &[],
        default_p: 5,
        min_p: 5,
    },
    CatalogEntry {
        id: "phi9",
        description: "Phi_9 group of order p^6 with Z(G) = C_p x C_p",
        constraint: "p >= 5",
        params: &[],
        default_p: 5,
        min_p: 5,
    },
    CatalogEntry {
        id: "phi10_g1",
        description: "Phi_10 group of order p^6 with Z(G) = C_{p^2}",
        constraint: "p >= 5",
        params: &[],
        default_p: 5,
        min_p: 5,
    },
    CatalogEntry {
        id: "phi10_g2",
        description: "Phi_10 group of order p^6 with Z(G) = C_p x C_p",
        constraint: "p >= 5",
        params: &[],
        default_p: 5,
        min_p: 5,
    },
    CatalogEntry {
        id: "phi12_g3",
        description: "Phi_12 group of order p^6, [a3,a4] = a1, [a5,a6] = a2, a3^p = a1",
        constraint: "p >= 5",
        params: &[],
        default_p: 5,
        min_p: 5,
    },
    CatalogEntry {
        id: "phi12_ex_g1",
        description: "Phi_12 group of order p^6 with a3^p = a2",
        constraint: "p >= 5",
        params: &[],
        default_p: 5,
        min_p: 5,
    },
    CatalogEntry {
        id: "phi12_ex_g2",
        description: "Phi_12 group of order p^6 with a3^p = a1",
        constraint: "p >= 5",
        params: &[],
        default_p: 5,
        min_p: 5,
    },
    CatalogEntry {
        id: "phi12_ex_g3",
        description: "Phi_12 group of order p^6 with a4^p = a5^p = a1 a2",
        constraint: "p >= 5",
        params: &[],
        default_p: 5,
        min_p: 5,
    },
    CatalogEntry {
        id: "phi17",
        description: "Phi_17 group of order p^6 without elementary abelian normal subgroups of index p^2",
        constraint: "p >= 5",
        params: &[],
        default_p: 5,
        min_p: 5,
    },
    CatalogEntry {
        id: "phi42_1",
        description: "G_(42,1), order p^6, cyclic center",
        constraint: "p >= 5",
        params: &[],
        default_p: 5,
        min_p: 5,
    },
    CatalogEntry {
        id: "phi42_2",
        description: "G_(42,2), order p^6, cyclic center",
        constraint: "p >= 5",
        params: &[],
        default_p: 5,
        min_p: 5,
    },
    CatalogEntry {
        id: "phi42_3k",
        description: "G_(42,3k), order p^6; a, b smallest positive with a^2 - b^2 = k mod p",
        constraint: "p >= 5, 1 <= k <= p-1",
        params: &["k"],
        default_p: 5,
        min_p: 5,
    },
    CatalogEntry {
        id: "phi43_1",
        description: "G_(43,1), order p^6, cyclic center",
        constraint: "p >= 5",
        params: &[],
        default_p: 5,
        min_p: 5,
    },
    CatalogEntry {
        id: "phi43_2k",
        description: "G_(43,2k), order p^6; a, b smallest positive with a^2 - b^2/nu = k mod p",
        constraint: "p >= 5, 1 <= k <= p-1",
        params: &["k"],
        default_p: 5,
        min_p: 5,
    },
    CatalogEntry {
        id: "tower",
        description: "order p^n group G_i with cyclic center and mu(G_i) = p^i",
        constraint: "p >= n >= 3, p >= 3, 2 <= i <= n-1",
        params: &["n", "i"],
        default_p: 5,
        min_p: 3,
    },
];

pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn entry(id: &str) -> Result<&'static CatalogEntry> {
    ENTRIES
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownFamily(id.to_string()))
}

/// Presentation text builder that fills in trivial commutators.
struct Builder {
    gens: Vec<String>,
    rels: Vec<String>,
    pairs: BTreeSet<(usize, usize)>,
}

impl Builder {
    fn new(gens: &[&str]) -> Self {
        Builder {
            gens: gens.iter().map(|s| s.to_string()).collect(),
            rels: Vec::new(),
            pairs: BTreeSet::new(),
        }
    }

    fn idx(&self, g: &str) -> usize {
        self.gens
            .iter()
            .position(|x| x == g)
            .expect("known generator")
    }

    fn comm(&mut self, x: &str, y: &str, rhs: &str) -> &mut Self {
        let (i, j) = (self.idx(x), self.idx(y));
        self.pairs.insert((i.min(j), i.max(j)));
        self.rels.push(format!("[{x},{y}] = {rhs}"));
        self
    }

    fn rel(&mut self, r: impl Into<String>) -> &mut Self {
        self.rels.push(r.into());
        self
    }

    /// `g^e` for each listed generator.
    fn powers(&mut self, gens: &[&str], e: u64) -> &mut Self {
        for g in gens {
            self.rels.push(format!("{g}^{e}"));
        }
        self
    }

    fn text(&self) -> String {
        let mut rels = self.rels.clone();
        for i in 0..self.gens.len() {
            for j in i + 1..self.gens.len() {
                if !self.pairs.contains(&(i, j)) {
                    rels.push(format!("[{},{}]", self.gens[i], self.gens[j]));
                }
            }
        }
        format!("gens {}; rels {};", self.gens.join(","), rels.join(", "))
    }
}

fn param(family: &str, params: &Params, name: &str) -> Result<i64> {
    params
        .get(name)
        .copied()
        .ok_or_else(|| Error::ParameterOutOfRange {
            family: family.to_string(),
            param: name.to_string(),
            value: 0,
            reason: "missing".to_string(),
        })
}

fn k_param(family: &str, p: u64, params: &Params) -> Result<i64> {
    let k = params.get("k").copied().unwrap_or(1);
    if k < 1 || k >= p as i64 {
        return Err(Error::ParameterOutOfRange {
            family: family.to_string(),
            param: "k".to_string(),
            value: k,
            reason: format!("k must lie in 1..={}", p - 1),
        });
    }
    Ok(k)
}

/// Smallest positive `(a, b)`, ordered by `a` then `b`, with `a^2 - scale*b^2 ≡ k (mod p)`.
pub fn solve_ab(p: u64, scale: u64, k: i64) -> (u64, u64) {
    let k = k.rem_euclid(p as i64) as u64;
    for a in 1..=p {
        for b in 1..=p {
            let lhs = (a * a % p + p - scale * (b * b % p) % p) % p;
            if lhs == k {
                return (a, b);
            }
        }
    }
    unreachable!("a^2 - s b^2 represents every residue modulo an odd prime")
}

fn tower_text(p: u64, n: i64, i: i64) -> String {
    if i == 2 {
        let names: Vec<String> = std::iter::once("a".to_string())
            .chain((1..n).map(|j| format!("a{j}")))
            .collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let mut b = Builder::new(&refs);
        for j in 1..=n - 2 {
            b.comm(&format!("a{j}"), "a", &format!("a{}", j + 1));
        }
        b.powers(&refs, p);
        return b.text();
    }
    let top = n - i + 2;
    let names: Vec<String> = std::iter::once("a".to_string())
        .chain((1..=top).map(|j| format!("a{j}")))
        .collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut b = Builder::new(&refs);
    b.comm("a1", "a", "a2");
    for j in 2..=n - i + 1 {
        b.comm(&format!("a{j}"), "a", &format!("a{}", j + 1));
    }
    b.rel(format!("a1^{} = a{top}", p.pow((i - 2) as u32)));
    b.powers(&["a"], p);
    for j in 2..=top {
        b.powers(&[&format!("a{j}")], p);
    }
    b.text()
}

fn phi42_43_text(family: &str, p: u64, params: &Params) -> Result<String> {
    let mut b = Builder::new(&["a1", "a2", "a3", "a4", "a5", "a6"]);
    let nu = smallest_nonresidue(p);
    let nu_inv = inv_mod(nu, p).expect("nu is a unit");
    b.comm("a5", "a6", "a4")
        .comm("a4", "a6", "a3")
        .comm("a4", "a5", "a2")
        .comm("a3", "a6", "a1");
    let (c25, p5, p6) = match family {
        "phi42_1" => (
            "a1^-1".to_string(),
            "a3*a1".to_string(),
            "a2*a1^-1".to_string(),
        ),
        "phi42_2" => ("a1^-1".to_string(), "a3".to_string(), "a2".to_string()),
        "phi42_3k" => {
            let k = k_param(family, p, params)?;
            let (a, bb) = solve_ab(p, 1, k);
            (
                "a1^-1".to_string(),
                format!("a3*a1^({})", -(a as i64) - 1),
                format!("a2*a1^({})", 1 - bb as i64),
            )
        }
        "phi43_1" => (
            format!("a1^({})", -(nu_inv as i64)),
            "a3*a1^-1".to_string(),
            format!("a2^{nu}*a1"),
        ),
        "phi43_2k" => {
            let k = k_param(family, p, params)?;
            let (a, bb) = solve_ab(p, nu_inv, k);
            (
                format!("a1^({})", -(nu_inv as i64)),
                format!("a3*a1^({})", -(a as i64) - 1),
                format!("a2^{nu}*a1^({})", 1 - bb as i64),
            )
        }
        _ => unreachable!(),
    };
    b.comm("a2", "a5", &c25)
        .rel(format!("a4^{p} = a1"))
        .rel(format!("a5^{p} = {p5}"))
        .rel(format!("a6^{p} = {p6}"))
        .powers(&["a1", "a2", "a3"], p);
    Ok(b.text())
}

fn presentation_text(family: &str, p: u64, params: &Params) -> Result<String> {
    let p2 = p * p;
    let text = match family {
        "xsp_p3_expP" => Builder::new(&["x", "y", "z"])
            .comm("x", "y", "z")
            .powers(&["x", "y", "z"], p)
            .text(),
        "xsp_p3_expP2" => Builder::new(&["x", "y"])
            .comm("y", "x", &format!("x^{p}"))
            .powers(&["x"], p2)
            .powers(&["y"], p)
            .text(),
        "xsp_x_cp" => Builder::new(&["x", "y", "z", "w"])
            .comm("x", "y", "z")
            .powers(&["x", "y", "z", "w"], p)
            .text(),
        "xsp2_x_cp2" => Builder::new(&["x", "y", "w"])
            .comm("y", "x", &format!("x^{p}"))
            .powers(&["x", "w"], p2)
            .powers(&["y"], p)
            .text(),
        "abelian" => {
            let mut exps = Vec::new();
            for j in 1.. {
                match params.get(&format!("r{j}")) {
                    Some(&r) if r >= 1 => exps.push(r as u32),
                    Some(&r) => {
                        return Err(Error::ParameterOutOfRange {
                            family: family.to_string(),
                            param: format!("r{j}"),
                            value: r,
                            reason: "exponents must be positive".to_string(),
                        })
                    }
                    None => break,
                }
            }
            if exps.is_empty() {
                param(family, params, "r1")?;
            }
            let names: Vec<String> = (1..=exps.len()).map(|j| format!("g{j}")).collect();
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            let mut b = Builder::new(&refs);
            for (g, r) in refs.iter().zip(&exps) {
                b.powers(&[g], p.pow(*r));
            }
            b.text()
        }
        "sd16" => "gens a,b; rels a^8, b^2, b^-1*a*b = a^3;".to_string(),
        "phi4_221b" | "phi4_221f0" | "phi4_2111a" => {
            let mut b = Builder::new(&["a", "a1", "a2", "b1", "b2"]);
            b.comm("a1", "a", "b1").comm("a2", "a", "b2");
            match family {
                "phi4_221b" => {
                    b.rel(format!("a^{p} = b2"))
                        .rel(format!("a2^{p} = b1"))
                        .powers(&["a1", "b1", "b2"], p);
                }
                "phi4_221f0" => {
                    let nu = smallest_nonresidue(p);
                    b.rel(format!("a1^{p} = b2"))
                        .rel(format!("a2^{p} = b1^{nu}"))
                        .powers(&["a", "b1", "b2"], p);
                }
                _ => {
                    b.rel(format!("a^{p} = b2"))
                        .powers(&["a1", "a2", "b1", "b2"], p);
                }
            }
            b.text()
        }
        "phi9" => Builder::new(&["a1", "a2", "a3", "a4", "a5", "b1", "b2"])
            .comm("a4", "a5", "a3")
            .comm("a3", "a5", "a2")
            .comm("a2", "a5", "a1")
            .rel("a1 = b1")
            .rel(format!("a4^{p} = b2"))
            .rel(format!("a5^{p} = b1"))
            .powers(&["a2", "a3", "b1", "b2"], p)
            .text(),
        "phi10_g1" => Builder::new(&["a1", "a2", "a3", "a4", "a5", "b1"])
            .comm("a4", "a5", "a3")
            .comm("a3", "a5", "a2")
            .comm("a2", "a5", "a1")
            .comm("a3", "a4", "a1")
            .rel(format!("a1 = b1^{p}"))
            .powers(&["a2", "a3", "a4", "a5"], p)
            .powers(&["b1"], p2)
            .text(),
        "phi10_g2" => Builder::new(&["a1", "a2", "a3", "a4", "a5", "b1", "b2"])
            .comm("a4", "a5", "a3")
            .comm("a3", "a5", "a2")
            .comm("a2", "a5", "a1")
            .comm("a3", "a4", "a1")
            .rel("a1 = b1")
            .rel(format!("a5^{p} = b2"))
            .powers(&["a2", "a3", "a4", "b1", "b2"], p)
            .text(),
        "phi12_g3" | "phi12_ex_g2" => Builder::new(&["a1", "a2", "a3", "a4", "a5", "a6"])
            .comm("a3", "a4", "a1")
            .comm("a5", "a6", "a2")
            .rel(format!("a3^{p} = a1"))
            .powers(&["a1", "a2", "a4", "a5", "a6"], p)
            .text(),
        "phi12_ex_g1" => Builder::new(&["a1", "a2", "a3", "a4", "a5", "a6"])
            .comm("a3", "a4", "a1")
            .comm("a5", "a6", "a2")
            .rel(format!("a3^{p} = a2"))
            .powers(&["a1", "a2", "a4", "a5", "a6"], p)
            .text(),
        "phi12_ex_g3" => Builder::new(&["a1", "a2", "a3", "a4", "a5", "a6"])
            .comm("a3", "a4", "a1")
            .comm("a5", "a6", "a2")
            .rel(format!("a4^{p} = a1*a2"))
            .rel(format!("a5^{p} = a1*a2"))
            .powers(&["a1", "a2", "a3", "a6"], p)
            .text(),
        "phi17" => Builder::new(&["a1", "a2", "a3", "a4", "a5", "a6"])
            .comm("a5", "a6", "a3")
            .comm("a4", "a5", "a2")
            .comm("a3", "a6", "a1")
            .rel(format!("a4^{p} = a1"))
            .rel(format!("a5^{p} = a2"))
            .powers(&["a1", "a2", "a3", "a6"], p)
            .text(),
        "phi42_1" | "phi42_2" | "phi42_3k" | "phi43_1" | "phi43_2k" => {
            phi42_43_text(family, p, params)?
        }
        "tower" => {
            let n = param(family, params, "n")?;
            let i = param(family, params, "i")?;
            if n < 3 {
                return Err(Error::ParameterOutOfRange {
                    family: family.to_string(),
                    param: "n".to_string(),
                    value: n,
                    reason: "n must be at least 3".to_string(),
                });
            }
            if i < 2 || i > n - 1 {
                return Err(Error::ParameterOutOfRange {
                    family: family.to_string(),
                    param: "i".to_string(),
                    value: i,
                    reason: format!("i must lie in 2..={}", n - 1),
                });
            }
            if (p as i64) < n {
                return Err(Error::PrimeConstraint {
                    family: family.to_string(),
                    p,
                    reason: format!("requires p >= n = {n}"),
                });
            }
            tower_text(p, n, i)
        }
        other => return Err(Error::UnknownFamily(other.to_string())),
    };
    Ok(text)
}

fn flags_for(family: &str) -> HypothesisFlags {
    let cyclic = matches!(
        family,
        "xsp_p3_expP"
            | "xsp_p3_expP2"
            | "sd16"
            | "phi10_g1"
            | "phi42_1"
            | "phi42_2"
            | "phi42_3k"
            | "phi43_1"
            | "phi43_2k"
            | "tower"
    );
    let not_split = cyclic && family != "sd16"
        || matches!(
            family,
            "phi4_221b"
                | "phi4_221f0"
                | "phi4_2111a"
                | "phi9"
                | "phi10_g2"
                | "phi12_g3"
                | "phi12_ex_g1"
                | "phi12_ex_g2"
                | "phi12_ex_g3"
                | "phi17"
        );
    let metabelian = family != "abelian";
    HypothesisFlags {
        cyclic_center_expected: cyclic,
        not_nontrivial_split: not_split,
        metabelian_expected: metabelian,
    }
}

/// Instantiate a family at prime `p` with integer parameters.
pub fn expand_catalog(family: &str, p: u64, params: &Params) -> Result<GroupSpec> {
    let e = entry(family)?;
    if !is_prime(p) {
        return Err(Error::PrimeConstraint {
            family: family.to_string(),
            p,
            reason: "p is not prime".to_string(),
        });
    }
    if p < e.min_p || (family == "sd16" && p != 2) {
        return Err(Error::PrimeConstraint {
            family: family.to_string(),
            p,
            reason: format!("requires {}", e.constraint),
        });
    }
    let text = presentation_text(family, p, params)?;
    let mut spec = parse_presentation(&text)?;
    let mut stored = params.clone();
    if matches!(family, "phi42_3k" | "phi43_2k") {
        stored.insert("k".to_string(), k_param(family, p, params)?);
    }
    spec.meta = SpecMeta {
        family: Some(family.to_string()),
        p: Some(p),
        params: stored,
        flags: flags_for(family),
    };
    Ok(spec)
}

/// Alias of [`expand_catalog`] addressed by entry.
pub fn instantiate(entry: &CatalogEntry, p: u64, params: &Params) -> Result<GroupSpec> {
    expand_catalog(entry.id, p, params)
}

/// Quantities the catalog can make claims about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Quantity {
    Order,
    C,
    Mu,
    CenterOrder,
    CenterRank,
    Exponent,
    DegreeSet,
    DerivedInvariants,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Order => "order",
            Quantity::C => "c",
            Quantity::Mu => "mu",
            Quantity::CenterOrder => "center_order",
            Quantity::CenterRank => "center_rank",
            Quantity::Exponent => "exponent",
            Quantity::DegreeSet => "degree_set",
            Quantity::DerivedInvariants => "derived_invariants",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClaimedValue {
    Int(u64),
    Set(Vec<u64>),
}

impl fmt::Display for ClaimedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClaimedValue::Int(v) => write!(f, "{v}"),
            ClaimedValue::Set(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "{{{}}}", parts.join(","))
            }
        }
    }
}

/// A claimed value together with its closed form in `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub quantity: Quantity,
    pub value: ClaimedValue,
    pub formula: String,
}

fn int(q: Quantity, v: u64, formula: &str) -> Expectation {
    Expectation {
        quantity: q,
        value: ClaimedValue::Int(v),
        formula: formula.to_string(),
    }
}

fn set(q: Quantity, mut v: Vec<u64>, formula: &str) -> Expectation {
    v.sort_unstable();
    Expectation {
        quantity: q,
        value: ClaimedValue::Set(v),
        formula: formula.to_string(),
    }
}

/// Closed-form claims for a family evaluated at `p`.
pub fn expected_values(family: &str, p: u64, params: &Params) -> Result<Vec<Expectation>> {
    // Validates the family and parameters.
    expand_catalog(family, p, params)?;
    use Quantity::*;
    let p2 = p * p;
    let p3 = p2 * p;
    let p4 = p3 * p;
    let p5 = p4 * p;
    let p6 = p5 * p;
    let mut out = match family {
        "xsp_p3_expP" => vec![
            int(Order, p3, "p^3"),
            int(Exponent, p, "p"),
            int(CenterOrder, p, "p"),
            int(CenterRank, 1, "1"),
            set(DegreeSet, vec![1, p], "{1, p}"),
            int(C, p2, "|G/Z(G)|^(1/2) |Z(G)| = p^2"),
            int(Mu, p2, "p^2"),
        ],
        "xsp_p3_expP2" => vec![
            int(Order, p3, "p^3"),
            int(Exponent, p2, "p^2"),
            int(CenterOrder, p, "p"),
            set(DegreeSet, vec![1, p], "{1, p}"),
            int(C, p2, "|G/Z(G)|^(1/2) |Z(G)| = p^2"),
            int(Mu, p2, "p^2"),
        ],
        "xsp_x_cp" => vec![
            int(Order, p4, "p^4"),
            int(CenterRank, 2, "2"),
            int(C, p2 + p, "p^2 + p"),
            int(Mu, p2 + p, "p^2 + p"),
        ],
        "xsp2_x_cp2" => vec![
            int(Order, p5, "p^5"),
            int(CenterRank, 2, "2"),
            int(Mu, 2 * p2, "mu(H) + mu(K) = 2p^2"),
            int(C, 2 * p2, "2p^2"),
        ],
        "abelian" => {
            let exps: Vec<u32> = (1..)
                .map_while(|j| params.get(&format!("r{j}")).map(|&r| r as u32))
                .collect();
            let sum: u64 = exps.iter().map(|&r| p.pow(r)).sum();
            let order = p.pow(exps.iter().sum());
            let exp = p.pow(*exps.iter().max().unwrap());
            let mut v = vec![
                int(Order, order, "prod p^r_i"),
                int(Exponent, exp, "p^max r_i"),
                int(CenterRank, exps.len() as u64, "k"),
                set(DegreeSet, vec![1], "{1}"),
            ];
            if p >= 3 {
                v.push(int(C, sum, "sum p^r_i"));
                v.push(int(Mu, sum, "sum p^r_i"));
            }
            v
        }
        "sd16" => vec![int(Order, 16, "16")],
        "phi4_221b" | "phi4_221f0" | "phi4_2111a" => {
            let (c, f) = match family {
                "phi4_221b" => (p3 + p2, "p^3 + p^2"),
                "phi4_221f0" => (2 * p3, "2p^3"),
                _ => (2 * p2, "2p^2"),
            };
            vec![
                int(Order, p5, "p^5"),
                int(Exponent, p2, "p^2"),
                int(CenterOrder, p2, "|<b1, b2>| = p^2"),
                int(CenterRank, 2, "2"),
                set(DegreeSet, vec![1, p], "{1, p}"),
                int(C, c, f),
                int(Mu, c, f),
            ]
        }
        "phi9" => vec![
            int(Order, p6, "p^6"),
            int(CenterOrder, p2, "C_p x C_p"),
            int(CenterRank, 2, "2"),
            set(DegreeSet, vec![1, p], "{1, p}"),
            set(DerivedInvariants, vec![p, p, p], "C_p^3"),
            int(C, 2 * p2, "2p^2"),
            int(Mu, 2 * p2, "2p^2"),
        ],
        "phi10_g1" => vec![
            int(Order, p6, "p^6"),
            int(Exponent, p2, "p^2"),
            int(CenterOrder, p2, "C_{p^2}"),
            int(CenterRank, 1, "1"),
            set(DegreeSet, vec![1, p, p2], "{1, p, p^2}"),
            int(C, p4, "p^4"),
        ],
        "phi10_g2" => vec![
            int(Order, p6, "p^6"),
            int(Exponent, p2, "p^2"),
            int(CenterOrder, p2, "C_p x C_p"),
            int(CenterRank, 2, "2"),
            set(DegreeSet, vec![1, p, p2], "{1, p, p^2}"),
            int(C, p3 + p2, "p^3 + p^2"),
        ],
        "phi12_g3" | "phi12_ex_g1" | "phi12_ex_g2" | "phi12_ex_g3" => {
            let (c, f) = match family {
                "phi12_ex_g1" => (p3 + p2, "p^3 + p^2"),
                "phi12_ex_g3" => (2 * p3, "2p^3"),
                _ => (2 * p2, "2p^2"),
            };
            vec![
                int(Order, p6, "p^6"),
                int(Exponent, p2, "p^2"),
                int(CenterOrder, p2, "|<a1, a2>| = p^2"),
                int(CenterRank, 2, "2"),
                set(DegreeSet, vec![1, p, p2], "{1, p, p^2}"),
                int(C, c, f),
            ]
        }
        "phi17" => vec![
            int(Order, p6, "p^6"),
            set(DegreeSet, vec![1, p, p2], "{1, p, p^2}"),
        ],
        "phi42_1" | "phi42_2" | "phi42_3k" | "phi43_1" | "phi43_2k" => vec![
            int(Order, p6, "p^6"),
            int(CenterOrder, p, "C_p"),
            int(CenterRank, 1, "1"),
            set(DegreeSet, vec![1, p, p2], "{1, p, p^2}"),
            set(DerivedInvariants, vec![p2, p, p], "C_{p^2} x C_p x C_p"),
            int(C, p4, "p^4"),
        ],
        "tower" => {
            let n = params["n"] as u32;
            let i = params["i"] as u32;
            let z = if i == 2 { p } else { p.pow(i - 2) };
            vec![
                int(Order, p.pow(n), "p^n"),
                int(CenterOrder, z, if i == 2 { "p" } else { "p^(i-2)" }),
                int(CenterRank, 1, "1"),
                set(DegreeSet, vec![1, p], "{1, p}"),
                int(Mu, p.pow(i), "p^i"),
                int(C, p.pow(i), "p^i"),
            ]
        }
        _ => unreachable!("validated above"),
    };
    out.sort_by_key(|e| e.quantity);
    Ok(out)
}

pub fn expected_value(
    family: &str,
    p: u64,
    params: &Params,
    quantity: Quantity,
) -> Result<Expectation> {
    expected_values(family, p, params)?
        .into_iter()
        .find(|e| e.quantity == quantity)
        .ok_or_else(|| Error::QuantityNotClaimed {
            family: family.to_string(),
            quantity: quantity.name().to_string(),
        })
}

/// Parse `k=1`-style parameter assignments.
pub fn parse_params<'a>(items: impl IntoIterator<Item = &'a str>) -> Result<Params> {
    let mut out = Params::new();
    for item in items {
        let (k, v) = item.split_once('=').ok_or_else(|| Error::Syntax {
            offset: 0,
            message: format!("expected name=value, got `{item}`"),
        })?;
        let v: i64 = v.trim().parse().map_err(|_| Error::Syntax {
            offset: k.len() + 1,
            message: format!("`{v}` is not an integer"),
        })?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(kv: &[(&str, i64)]) -> Params {
        kv.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn phi42_3k_solves_congruence() {
        let (a, b) = solve_ab(5, 1, 1);
        assert_eq!((a * a + 25 - b * b % 5) % 5, 1);
        assert_eq!((a, b), (1, 5));
        for p in [5u64, 7, 11] {
            for k in 1..p as i64 {
                let (a, b) = solve_ab(p, 1, k);
                assert_eq!(((a * a) as i64 - (b * b) as i64).rem_euclid(p as i64), k);
            }
        }
        let spec = expand_catalog("phi42_3k", 5, &params(&[("k", 1)])).unwrap();
        assert_eq!(spec.generators.len(), 6);
    }

    #[test]
    fn prime_constraint_violations() {
        assert!(matches!(
            expand_catalog("phi43_1", 3, &Params::new()),
            Err(Error::PrimeConstraint { .. })
        ));
        assert!(matches!(
            expand_catalog("tower", 3, &params(&[("n", 4), ("i", 2)])),
            Err(Error::PrimeConstraint { .. })
        ));
        assert!(matches!(
            expand_catalog("phi42_3k", 5, &params(&[("k", 5)])),
            Err(Error::ParameterOutOfRange { .. })
        ));
        assert!(matches!(
            expand_catalog("nope", 5, &Params::new()),
            Err(Error::UnknownFamily(_))
        ));
    }

    #[test]
    fn phi4_2111a_has_power_relator_with_b2() {
        let spec = expand_catalog("phi4_2111a", 5, &Params::new()).unwrap();
        assert_eq!(spec.generators, vec!["a", "a1", "a2", "b1", "b2"]);
        let text = spec.to_text();
        assert!(text.contains("a^5*b2^-1"), "{text}");
    }

    #[test]
    fn expected_value_closed_forms() {
        let c = |f: &str, p: u64, kv: &[(&str, i64)], q| {
            expected_value(f, p, &params(kv), q).unwrap().value
        };
        assert_eq!(c("phi4_221f0", 5, &[], Quantity::C), ClaimedValue::Int(250));
        assert_eq!(c("phi42_1", 5, &[], Quantity::C), ClaimedValue::Int(625));
        assert_eq!(
            c("tower", 5, &[("n", 5), ("i", 4)], Quantity::Mu),
            ClaimedValue::Int(625)
        );
        assert!(matches!(
            expected_value("sd16", 2, &Params::new(), Quantity::C),
            Err(Error::QuantityNotClaimed { .. })
        ));
    }

    #[test]
    fn every_entry_instantiates_at_default_prime() {
        for e in entries() {
            let mut ps = Params::new();
            match e.id {
                "abelian" => {
                    ps.insert("r1".into(), 1);
                    ps.insert("r2".into(), 2);
                }
                "tower" => {
                    ps.insert("n".into(), 4);
                    ps.insert("i".into(), 3);
                }
                _ => {}
            }
            let spec = expand_catalog(e.id, e.default_p, &ps).unwrap();
            assert_eq!(spec.meta.family.as_deref(), Some(e.id));
            assert!(!expected_values(e.id, e.default_p, &ps).unwrap().is_empty());
        }
    }

    #[test]
    fn parameter_parsing() {
        let p = parse_params(["k=2", "n = 5"]).unwrap();
        assert_eq!(p["k"], 2);
        assert_eq!(p["n"], 5);
        assert!(parse_params(["k"]).is_err());
    }
}
