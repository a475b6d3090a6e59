//! End-to-end computation for one group: structure, character table, `c(G)`
//! and optionally `μ(G)`, collected into a serialisable report.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::chartab::{character_table, check_orthogonality, CharTable};
use crate::error::{Error, Result};
use crate::group::{AbelianInvariants, Group, Subgroup};
use crate::limits::Limits;
use crate::permdeg::{solve_mu, MuSolution};
use crate::presentation::{enumerate_regular, GroupSpec};
use crate::quasiperm::{galois_orbits, solve_c, CMode, CSolution, GaloisSum};

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub mu: bool,
    pub exhaustive_c: bool,
}

/// Structural invariants computed directly from the group.
#[derive(Clone, Debug)]
pub struct Structure {
    pub order: u64,
    pub prime: Option<u64>,
    pub exponent: u64,
    pub is_abelian: bool,
    pub center: Subgroup,
    pub center_invariants: AbelianInvariants,
    pub derived: Subgroup,
    /// `None` when `G'` is not abelian.
    pub derived_invariants: Option<AbelianInvariants>,
    /// `d(Z(G) ∩ G')`.
    pub center_derived_rank: usize,
    /// `G' ≤ Z(G)`.
    pub class_at_most_two: bool,
}

impl Structure {
    pub fn compute(g: &Group) -> Result<Self> {
        let center = g.center();
        let derived = g.derived_subgroup();
        let center_invariants = g.abelian_invariants(&center)?;
        let derived_invariants = g.abelian_invariants(&derived).ok();
        let meet = g.subgroup_from_elements(center.intersect_elements(&derived));
        let center_derived_rank = g.abelian_invariants(&meet)?.rank();
        Ok(Structure {
            order: g.order() as u64,
            prime: g.prime(),
            exponent: g.exponent(),
            is_abelian: derived.is_trivial(),
            class_at_most_two: derived.is_subgroup_of(&center),
            center,
            center_invariants,
            derived,
            derived_invariants,
            center_derived_rank,
        })
    }

    pub fn center_rank(&self) -> usize {
        self.center_invariants.rank()
    }
}

/// Everything computed for one group. Stages that failed are `None` and
/// their errors are listed in `failures`.
pub struct Analysis {
    pub spec: GroupSpec,
    pub group: Group,
    pub structure: Structure,
    pub table: Option<CharTable>,
    pub orthogonality: Option<bool>,
    pub sums: Option<Vec<GaloisSum>>,
    pub c: Option<CSolution>,
    pub c_exhaustive: Option<CSolution>,
    pub mu: Option<MuSolution>,
    pub failures: Vec<(&'static str, Error)>,
}

impl Analysis {
    pub fn run(spec: &GroupSpec, opts: Options, limits: &Limits) -> Result<Self> {
        let group = Group::new(enumerate_regular(spec, limits)?);
        limits.check_deadline("group structure")?;
        let structure = Structure::compute(&group)?;
        let mut a = Analysis {
            spec: spec.clone(),
            group,
            structure,
            table: None,
            orthogonality: None,
            sums: None,
            c: None,
            c_exhaustive: None,
            mu: None,
            failures: Vec::new(),
        };
        a.run_characters(opts, limits);
        if opts.mu {
            a.run_mu(limits);
        }
        Ok(a)
    }

    pub fn run_mu(&mut self, limits: &Limits) {
        if self.structure.prime.is_none() && self.structure.order > 1 {
            self.failures.push((
                "mu",
                Error::Internal("mu(G) is only computed for p-groups".into()),
            ));
            return;
        }
        match solve_mu(&self.group, limits) {
            Ok(m) => self.mu = Some(m),
            Err(e) => self.failures.push(("mu", e)),
        }
    }

    fn run_characters(&mut self, opts: Options, limits: &Limits) {
        let table = match character_table(&self.group, limits) {
            Ok(t) => t,
            Err(e) => {
                self.failures.push(("character table", e));
                return;
            }
        };
        let ok = check_orthogonality(&table);
        self.orthogonality = Some(ok);
        if !ok {
            self.failures.push((
                "character table",
                Error::Internal("orthogonality check failed".into()),
            ));
        }
        let sums = match galois_orbits(&table) {
            Ok(s) => s,
            Err(e) => {
                self.failures.push(("galois sums", e));
                self.table = Some(table);
                return;
            }
        };
        let mode = match self.structure.prime {
            Some(p) => CMode::for_p_group(p, self.structure.center_rank()),
            None => CMode::Exhaustive,
        };
        match solve_c(&table, &sums, mode, limits) {
            Ok(c) => self.c = Some(c),
            Err(e) => self.failures.push(("c", e)),
        }
        if opts.exhaustive_c {
            match solve_c(&table, &sums, CMode::Exhaustive, limits) {
                Ok(c) => self.c_exhaustive = Some(c),
                Err(e) => self.failures.push(("c exhaustive", e)),
            }
        }
        self.table = Some(table);
        self.sums = Some(sums);
    }

    /// Whether any stage stopped on a budget or timeout.
    pub fn hit_budget(&self) -> bool {
        self.failures
            .iter()
            .any(|(_, e)| matches!(e, Error::BudgetExceeded { .. } | Error::Timeout(_)))
    }

    pub fn report(&self, dump_table: bool) -> Report {
        let s = &self.structure;
        let g = &self.group;
        let c = self.c.as_ref().map(|c| CReport {
            value: c.c_value,
            xi_degree: c.xi_degree,
            m_value: c.m_value,
            base_p_digits: c.base_p_digits.clone(),
            contains_linear: c.contains_linear_witness,
            witness: c
                .witness
                .iter()
                .map(|w| WitnessSum {
                    character: w.representative(),
                    char_degree: w.char_degree,
                    orbit_size: w.orbit.len(),
                    psi_degree: w.psi_degree,
                })
                .collect(),
        });
        let mu = self.mu.as_ref().map(|m| MuReport {
            value: m.mu_value,
            optimal: m.optimal,
            degrees: m.degrees.clone(),
            subgroups: m
                .witness
                .iter()
                .map(|h| {
                    let gens: Vec<String> = h.generators().iter().map(|&x| g.word(x)).collect();
                    if gens.is_empty() {
                        "<1>".to_string()
                    } else {
                        format!("<{}>", gens.join(", "))
                    }
                })
                .collect(),
            orbits: m.action.orbit_count(),
            action: (0..m.action.images.len())
                .map(|i| (m.action.generator_names[i].clone(), m.action.cycles(i)))
                .collect(),
        });
        Report {
            group: self
                .spec
                .meta
                .family
                .clone()
                .unwrap_or_else(|| "presentation".to_string()),
            p: self.spec.meta.p,
            params: self.spec.meta.params.clone(),
            presentation: self.spec.to_text(),
            order: s.order,
            exponent: s.exponent,
            center: s.center_invariants.to_string(),
            center_rank: s.center_rank(),
            derived: s.derived_invariants.as_ref().map_or_else(
                || format!("non-abelian of order {}", s.derived.order()),
                |d| d.to_string(),
            ),
            classes: self.table.as_ref().map(|t| t.num_classes()),
            degree_set: self.table.as_ref().map(|t| t.degree_set()),
            c,
            c_exhaustive: self.c_exhaustive.as_ref().map(|c| c.c_value),
            mu,
            table: if dump_table {
                self.table.as_ref().map(|t| t.dump())
            } else {
                None
            },
            incomplete: self
                .failures
                .iter()
                .map(|(stage, e)| format!("{stage}: {e}"))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSum {
    pub character: usize,
    pub char_degree: u64,
    pub orbit_size: usize,
    pub psi_degree: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CReport {
    pub value: u64,
    pub xi_degree: u64,
    pub m_value: u64,
    pub base_p_digits: Vec<u64>,
    pub contains_linear: bool,
    pub witness: Vec<WitnessSum>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuReport {
    pub value: u64,
    pub optimal: bool,
    pub degrees: Vec<u64>,
    /// Generator words of each witness subgroup.
    pub subgroups: Vec<String>,
    pub orbits: usize,
    /// Generator name and its image in cycle notation.
    pub action: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub group: String,
    pub p: Option<u64>,
    pub params: BTreeMap<String, i64>,
    pub presentation: String,
    pub order: u64,
    pub exponent: u64,
    pub center: String,
    pub center_rank: usize,
    pub derived: String,
    pub classes: Option<usize>,
    pub degree_set: Option<Vec<u64>>,
    pub c: Option<CReport>,
    pub c_exhaustive: Option<u64>,
    pub mu: Option<MuReport>,
    pub table: Option<String>,
    pub incomplete: Vec<String>,
}

fn digits_poly(digits: &[u64]) -> String {
    let terms: Vec<String> = digits
        .iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(i, &a)| {
            let pw = if i == 0 {
                "p".to_string()
            } else {
                format!("p^{}", i + 1)
            };
            if a == 1 {
                pw
            } else {
                format!("{a}{pw}")
            }
        })
        .collect();
    terms.join(" + ")
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut name = self.group.clone();
        if let Some(p) = self.p {
            let _ = write!(name, " p={p}");
        }
        for (k, v) in &self.params {
            let _ = write!(name, " {k}={v}");
        }
        let _ = writeln!(out, "group       {name}");
        let _ = writeln!(out, "order       {}", self.order);
        let _ = writeln!(out, "exponent    {}", self.exponent);
        let _ = writeln!(
            out,
            "Z(G)        {}  (d = {})",
            self.center, self.center_rank
        );
        let _ = writeln!(out, "G'          {}", self.derived);
        if let (Some(k), Some(d)) = (self.classes, &self.degree_set) {
            let ds: Vec<String> = d.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "classes     {k}");
            let _ = writeln!(out, "cd(G)       {{{}}}", ds.join(", "));
        }
        if let Some(c) = &self.c {
            let _ = writeln!(
                out,
                "c(G)        {}  = xi(1) {} + m {}  [{}]",
                c.value,
                c.xi_degree,
                c.m_value,
                digits_poly(&c.base_p_digits)
            );
            for w in &c.witness {
                let _ = writeln!(
                    out,
                    "  witness   X.{}  degree {}  orbit {}  Psi(1) {}",
                    w.character, w.char_degree, w.orbit_size, w.psi_degree
                );
            }
            let _ = writeln!(out, "  linear in witness: {}", c.contains_linear);
        }
        if let Some(v) = self.c_exhaustive {
            let _ = writeln!(out, "c(G) exhaustive {v}");
        }
        if let Some(m) = &self.mu {
            let flag = if m.optimal {
                ""
            } else {
                "  (upper bound: search budget exhausted)"
            };
            let _ = writeln!(
                out,
                "mu(G)       {}  degrees {:?}{flag}",
                m.value, m.degrees
            );
            for (i, h) in m.subgroups.iter().enumerate() {
                let _ = writeln!(out, "  H{}        {h}", i + 1);
            }
            let _ = writeln!(out, "  orbits    {}", m.orbits);
            for (name, cyc) in &m.action {
                let _ = writeln!(out, "  {name} -> {cyc}");
            }
        }
        for f in &self.incomplete {
            let _ = writeln!(out, "incomplete  {f}");
        }
        if let Some(t) = &self.table {
            out.push_str(t);
        }
        out
    }
}
