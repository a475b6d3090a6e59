//! Reproduction suites: catalog claims compared against computed values, and
//! structural properties evaluated on every corpus group.
//!
//! Property verdicts only use quantities computed from the group itself and
//! the hypothesis flags attached to its presentation, never the catalog's
//! expected values.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{Analysis, Options};
use crate::arith::{isqrt, log_exact};
use crate::catalog::{expand_catalog, expected_values, ClaimedValue, Params, Quantity};
use crate::limits::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub group: String,
    pub params: String,
    pub claimed: String,
    pub computed: String,
    pub status: Status,
    /// Why a check was skipped.
    pub reason: Option<String>,
    /// Wall time of the group's analysis; not part of the structured report.
    #[serde(skip)]
    pub runtime: Option<Duration>,
}

impl PartialEq for CheckResult {
    fn eq(&self, o: &Self) -> bool {
        (
            &self.check,
            &self.group,
            &self.params,
            &self.claimed,
            &self.computed,
            self.status,
            &self.reason,
        ) == (
            &o.check,
            &o.group,
            &o.params,
            &o.claimed,
            &o.computed,
            o.status,
            &o.reason,
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Smoke,
    PaperP5,
    Stretch,
}

impl Suite {
    pub fn parse(name: &str) -> Option<Suite> {
        match name {
            "smoke" => Some(Suite::Smoke),
            "paper-p5" => Some(Suite::PaperP5),
            "stretch" => Some(Suite::Stretch),
            _ => None,
        }
    }

    pub fn default_timeout(self) -> Duration {
        Duration::from_secs(match self {
            Suite::Smoke => 60,
            Suite::PaperP5 => 600,
            Suite::Stretch => 1800,
        })
    }
}

/// One catalog instance in a suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusGroup {
    pub family: String,
    pub p: u64,
    pub params: Params,
}

impl CorpusGroup {
    pub fn new(family: &str, p: u64, params: &[(&str, i64)]) -> Self {
        CorpusGroup {
            family: family.to_string(),
            p,
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    pub fn label(&self) -> String {
        let mut s = format!("p={}", self.p);
        for (k, v) in &self.params {
            let _ = write!(s, " {k}={v}");
        }
        s
    }
}

pub fn suite_groups(suite: Suite) -> Vec<CorpusGroup> {
    let g = CorpusGroup::new;
    match suite {
        Suite::Smoke => vec![
            g("xsp_p3_expP", 3, &[]),
            g("xsp_p3_expP", 5, &[]),
            g("xsp_p3_expP2", 3, &[]),
            g("xsp_x_cp", 3, &[]),
            g("xsp2_x_cp2", 3, &[]),
            g("abelian", 3, &[("r1", 1), ("r2", 2)]),
            g("abelian", 3, &[("r1", 1), ("r2", 1), ("r3", 1)]),
            g("sd16", 2, &[]),
            g("tower", 5, &[("n", 4), ("i", 2)]),
            g("tower", 5, &[("n", 4), ("i", 3)]),
        ],
        Suite::PaperP5 => vec![
            g("xsp_p3_expP", 5, &[]),
            g("xsp_p3_expP2", 5, &[]),
            g("xsp_x_cp", 5, &[]),
            g("xsp2_x_cp2", 5, &[]),
            g("abelian", 5, &[("r1", 1), ("r2", 2)]),
            g("phi4_221b", 5, &[]),
            g("phi4_221f0", 5, &[]),
            g("phi4_2111a", 5, &[]),
            g("tower", 5, &[("n", 4), ("i", 2)]),
            g("tower", 5, &[("n", 4), ("i", 3)]),
            g("tower", 5, &[("n", 5), ("i", 2)]),
            g("tower", 5, &[("n", 5), ("i", 3)]),
            g("tower", 5, &[("n", 5), ("i", 4)]),
        ],
        Suite::Stretch => vec![
            g("phi9", 5, &[]),
            g("phi10_g1", 5, &[]),
            g("phi10_g2", 5, &[]),
            g("phi12_g3", 5, &[]),
            g("phi12_ex_g1", 5, &[]),
            g("phi12_ex_g2", 5, &[]),
            g("phi12_ex_g3", 5, &[]),
            g("phi17", 5, &[]),
            g("phi42_1", 5, &[]),
            g("phi42_2", 5, &[]),
            g("phi42_3k", 5, &[("k", 1)]),
            g("phi43_1", 5, &[]),
            g("phi43_2k", 5, &[("k", 1)]),
        ],
    }
}

/// Orders up to this bound also get the exhaustive `c(G)` search.
const EXHAUSTIVE_C_ORDER: u64 = 729;

struct Recorder {
    group: String,
    params: String,
    out: Vec<CheckResult>,
}

impl Recorder {
    fn push(
        &mut self,
        check: &str,
        claimed: String,
        computed: String,
        status: Status,
        reason: Option<String>,
    ) {
        self.out.push(CheckResult {
            check: check.to_string(),
            group: self.group.clone(),
            params: self.params.clone(),
            claimed,
            computed,
            status,
            reason,
            runtime: None,
        });
    }

    fn verdict(&mut self, check: &str, claimed: String, computed: String, ok: bool) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.push(check, claimed, computed, status, None);
    }

    fn skip(&mut self, check: &str, claimed: &str, reason: impl Into<String>) {
        self.push(
            check,
            claimed.to_string(),
            "-".to_string(),
            Status::Skipped,
            Some(reason.into()),
        );
    }
}

/// Run every check for one corpus group.
pub fn run_group(cg: &CorpusGroup, limits: &Limits) -> Vec<CheckResult> {
    let start = Instant::now();
    let mut rec = Recorder {
        group: cg.family.clone(),
        params: cg.label(),
        out: Vec::new(),
    };
    let spec = match expand_catalog(&cg.family, cg.p, &cg.params) {
        Ok(s) => s,
        Err(e) => {
            rec.verdict(
                "instantiate",
                "valid catalog instance".into(),
                e.to_string(),
                false,
            );
            return rec.out;
        }
    };
    let opts = Options {
        mu: true,
        exhaustive_c: false,
    };
    let analysis = match Analysis::run(&spec, opts, limits) {
        Ok(a) => a,
        Err(e) if e.is_budget() => {
            rec.skip(
                "analysis",
                "group enumerated within budget",
                format!("budget: {e}"),
            );
            return rec.out;
        }
        Err(e) => {
            rec.verdict("analysis", "group enumerated".into(), e.to_string(), false);
            return rec.out;
        }
    };
    let mut analysis = analysis;
    if analysis.structure.order <= EXHAUSTIVE_C_ORDER {
        if let (Some(t), Some(s)) = (&analysis.table, &analysis.sums) {
            match crate::quasiperm::solve_c(t, s, crate::quasiperm::CMode::Exhaustive, limits) {
                Ok(c) => analysis.c_exhaustive = Some(c),
                Err(e) => analysis.failures.push(("c exhaustive", e)),
            }
        }
    }
    for (stage, e) in &analysis.failures {
        if e.is_budget() {
            rec.skip(
                &format!("stage.{stage}"),
                "stage completes",
                format!("budget: {e}"),
            );
        } else {
            rec.verdict(
                &format!("stage.{stage}"),
                "stage completes".into(),
                e.to_string(),
                false,
            );
        }
    }
    claims(&mut rec, cg, &analysis);
    properties(&mut rec, &analysis, limits);
    let elapsed = start.elapsed();
    for r in &mut rec.out {
        r.runtime = Some(elapsed);
    }
    rec.out
}

fn claims(rec: &mut Recorder, cg: &CorpusGroup, a: &Analysis) {
    let Ok(exps) = expected_values(&cg.family, cg.p, &cg.params) else {
        return;
    };
    let s = &a.structure;
    for e in exps {
        let id = format!("claim.{}", e.quantity.name());
        let claimed = format!("{} = {}", e.formula, e.value);
        let computed: Option<ClaimedValue> = match e.quantity {
            Quantity::Order => Some(ClaimedValue::Int(s.order)),
            Quantity::Exponent => Some(ClaimedValue::Int(s.exponent)),
            Quantity::CenterOrder => Some(ClaimedValue::Int(s.center.order() as u64)),
            Quantity::CenterRank => Some(ClaimedValue::Int(s.center_rank() as u64)),
            Quantity::DerivedInvariants => s
                .derived_invariants
                .as_ref()
                .map(|d| ClaimedValue::Set(d.0.clone())),
            Quantity::DegreeSet => a.table.as_ref().map(|t| ClaimedValue::Set(t.degree_set())),
            Quantity::C => a.c.as_ref().map(|c| ClaimedValue::Int(c.c_value)),
            Quantity::Mu => {
                a.mu.as_ref()
                    .filter(|m| m.optimal)
                    .map(|m| ClaimedValue::Int(m.mu_value))
            }
        };
        match computed {
            Some(v) => {
                let ok = v == e.value;
                rec.verdict(&id, claimed, v.to_string(), ok);
            }
            None => rec.skip(&id, &claimed, "quantity not computed within budget"),
        }
    }
}

fn set_str(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn properties(rec: &mut Recorder, a: &Analysis, limits: &Limits) {
    let s = &a.structure;
    let g = &a.group;
    let d = s.center_rank();
    let z = s.center.order() as u64;

    if let Some(ok) = a.orthogonality {
        let t = a.table.as_ref().unwrap();
        let sq: u64 = t.chars.iter().map(|c| c.degree * c.degree).sum();
        rec.verdict(
            "table-orthogonality",
            format!(
                "row and column orthogonality; sum of squared degrees = {}",
                s.order
            ),
            format!(
                "orthogonality {}; sum of squares {sq}",
                if ok { "holds" } else { "violated" }
            ),
            ok && sq == s.order,
        );
    }
    if a.table.is_some() {
        let ok = a.sums.is_some();
        rec.verdict(
            "galois-sums-integral",
            "every Galois orbit sum is integer-valued".into(),
            if ok {
                "all integer-valued".into()
            } else {
                "non-integral value".into()
            },
            ok,
        );
    }

    let Some(p) = s.prime else {
        rec.skip("p-group-properties", "p-group invariants", "not a p-group");
        return;
    };
    let nonabelian = !s.is_abelian;
    let odd = p >= 3;
    let c = a.c.as_ref();
    let mu = a.mu.as_ref().filter(|m| m.optimal);
    let table = a.table.as_ref();
    let maxcd = table.map(|t| t.max_degree());
    let cd = table.map(|t| t.degree_set());
    let z_cyclic = s.center_invariants.is_cyclic() && z > 1;
    let b = log_exact(s.exponent, p).unwrap_or(0);
    let not_split = a.spec.meta.flags.not_nontrivial_split;
    let c_missing = "c(G) not available";
    let mu_missing = "mu(G) not available";

    // Fast search against the unrestricted search.
    if let (Some(c), Some(x)) = (c, a.c_exhaustive.as_ref()) {
        rec.verdict(
            "c-fast-equals-exhaustive",
            format!("restricted search value = exhaustive value = {}", x.c_value),
            c.c_value.to_string(),
            c.c_value == x.c_value,
        );
    }

    let claim = "m(xi) = xi(1)/(p-1) and |X_G| = d(Z(G))";
    match (odd, c) {
        (false, _) => rec.skip("witness-shape", claim, "p = 2"),
        (true, None) => rec.skip("witness-shape", claim, c_missing),
        (true, Some(c)) => {
            // The exhaustive witness does not fix the family size in advance.
            let w = a.c_exhaustive.as_ref().unwrap_or(c);
            rec.verdict(
                "witness-shape",
                format!("{claim} = {d}"),
                format!(
                    "m = {}, xi(1) = {}, |X_G| = {}",
                    w.m_value,
                    w.xi_degree,
                    w.witness.len()
                ),
                w.m_value * (p - 1) == w.xi_degree && w.witness.len() == d,
            );
        }
    }

    let claim = "sum of base-p digits of c(G) = d(Z(G))";
    match c {
        // With d(Z(G)) >= p the powers of p may carry.
        _ if d as u64 >= p => rec.skip("digit-sum", claim, format!("d(Z(G)) = {d} is not below p")),
        Some(c) => {
            let sum: u64 = c.base_p_digits.iter().sum();
            rec.verdict(
                "digit-sum",
                format!("{claim} = {d}"),
                sum.to_string(),
                sum == d as u64,
            );
        }
        None => rec.skip("digit-sum", claim, c_missing),
    }

    let claim = "c(G) = mu(G)";
    match (odd, c, mu) {
        (false, ..) => rec.skip("c-equals-mu", claim, "p = 2"),
        (true, None, _) => rec.skip("c-equals-mu", claim, c_missing),
        (true, _, None) => rec.skip("c-equals-mu", claim, mu_missing),
        (true, Some(c), Some(m)) => rec.verdict(
            "c-equals-mu",
            claim.into(),
            format!("c = {}, mu = {}", c.c_value, m.mu_value),
            c.c_value == m.mu_value,
        ),
    }

    let claim = "orbits of a minimal faithful action = d(Z(G))";
    match (odd, mu) {
        (false, _) => rec.skip("mu-orbit-count", claim, "p = 2"),
        (true, None) => rec.skip("mu-orbit-count", claim, mu_missing),
        (true, Some(m)) => {
            let k = m.action.orbit_count();
            rec.verdict(
                "mu-orbit-count",
                format!("{claim} = {d}"),
                k.to_string(),
                k == d,
            );
        }
    }

    if let Some(m) = a.mu.as_ref() {
        let k = m.action.orbit_count();
        rec.verdict(
            "mu-action-realized",
            format!(
                "faithful action of degree {} with {} orbits",
                m.mu_value,
                m.witness.len()
            ),
            format!("degree {}, {k} orbits", m.action.degree),
            m.action.degree as u64 == m.mu_value && k == m.witness.len(),
        );
    }

    // Remaining properties concern non-abelian groups.
    if !nonabelian {
        rec.skip(
            "non-abelian-properties",
            "non-abelian p-group invariants",
            "G is abelian",
        );
        return;
    }
    let (Some(c), Some(maxcd), Some(cd), Some(t)) = (c, maxcd, cd, table) else {
        rec.skip(
            "non-abelian-properties",
            "non-abelian p-group invariants",
            c_missing,
        );
        return;
    };
    let cv = c.c_value;
    let e = log_exact(maxcd, p).unwrap_or(0);

    let claim = "p^alpha |Z(G)| divides c(G), c(G) divides p^e exp(G)";
    if !z_cyclic {
        rec.skip(
            "cyclic-center-bounds",
            claim,
            format!("Z(G) = {} is not cyclic", s.center_invariants),
        );
    } else {
        match t.min_faithful_degree() {
            Ok(pa) => {
                let lo = pa * z;
                let hi = maxcd * s.exponent;
                rec.verdict(
                    "cyclic-center-bounds",
                    format!("{lo} | c | {hi}"),
                    cv.to_string(),
                    cv % lo == 0 && hi.is_multiple_of(cv),
                );
            }
            Err(e) => rec.verdict("cyclic-center-bounds", claim.into(), e.to_string(), false),
        }
    }

    let metabelian = s.derived_invariants.is_some();
    let claim = "max cd(G) |Z(G)| divides c(G), c(G) divides max cd(G) exp(A)";
    if !z_cyclic {
        rec.skip(
            "metabelian-bounds",
            claim,
            format!("Z(G) = {} is not cyclic", s.center_invariants),
        );
        rec.skip(
            "derived-maximal-bounds",
            claim,
            format!("Z(G) = {} is not cyclic", s.center_invariants),
        );
    } else if !metabelian {
        rec.skip("metabelian-bounds", claim, "G' is not abelian");
        rec.skip("derived-maximal-bounds", claim, "G' is not abelian");
    } else {
        match g.max_abelian_normal(p, limits.mu_nodes) {
            Ok(big) => {
                let exp_a = g.subgroup_exponent(&big);
                let lo = maxcd * z;
                let hi = maxcd * exp_a;
                rec.verdict(
                    "metabelian-bounds",
                    format!("{lo} | c | {hi}  (|A| = {}, exp(A) = {exp_a})", big.order()),
                    cv.to_string(),
                    cv % lo == 0 && hi.is_multiple_of(cv),
                );
                if big.order() == s.derived.order() {
                    let hi = maxcd * g.subgroup_exponent(&s.derived);
                    rec.verdict(
                        "derived-maximal-bounds",
                        format!("{lo} | c | {hi} = max cd(G) exp(G')"),
                        cv.to_string(),
                        cv % lo == 0 && hi.is_multiple_of(cv),
                    );
                } else {
                    rec.skip(
                        "derived-maximal-bounds",
                        claim,
                        format!(
                            "|G'| = {} is below the maximal abelian normal order {}",
                            s.derived.order(),
                            big.order()
                        ),
                    );
                }
            }
            Err(e) => {
                rec.skip("metabelian-bounds", claim, format!("budget: {e}"));
                rec.skip("derived-maximal-bounds", claim, format!("budget: {e}"));
            }
        }
    }

    let claim = "X_G has no linear character and p^(s+1) divides c(G)";
    if s.center_derived_rank != d {
        rec.skip(
            "linear-exclusion",
            claim,
            format!(
                "d(Z(G) cap G') = {} differs from d(Z(G)) = {d}",
                s.center_derived_rank
            ),
        );
    } else {
        let ps = t.min_nonlinear_degree().unwrap_or(1);
        let m = ps * p;
        rec.verdict(
            "linear-exclusion",
            format!("no linear character in X_G; {m} | c"),
            format!(
                "linear in X_G: {}; c = {cv}",
                if c.contains_linear_witness {
                    "yes"
                } else {
                    "no"
                }
            ),
            !c.contains_linear_witness && cv % m == 0,
        );
    }

    let claim = "some abelian normal subgroup of maximum order has exponent |Z(G)|";
    let class2_cyclic = s.class_at_most_two && z_cyclic;
    if !odd {
        rec.skip("class2-abelian-normal", claim, "p = 2");
    } else if !class2_cyclic {
        rec.skip(
            "class2-abelian-normal",
            claim,
            "not of class 2 with cyclic center",
        );
    } else {
        match g.abelian_normal_search(&s.center, p, false, limits.mu_nodes) {
            Ok(search) => {
                let exps: Vec<u64> = search
                    .of_max_order()
                    .iter()
                    .map(|h| g.subgroup_exponent(h))
                    .collect();
                rec.verdict(
                    "class2-abelian-normal",
                    format!("{claim} = {z}"),
                    format!("exponents of maximal ones: {}", set_str(&exps)),
                    exps.contains(&z),
                );
            }
            Err(e) => rec.skip("class2-abelian-normal", claim, format!("budget: {e}")),
        }
    }

    let claim = "c(G) = |G/Z(G)|^(1/2) |Z(G)|";
    if !class2_cyclic {
        rec.skip("class2-formula", claim, "not of class 2 with cyclic center");
    } else {
        let want = isqrt(s.order / z) * z;
        rec.verdict(
            "class2-formula",
            format!("{claim} = {want}"),
            cv.to_string(),
            cv == want,
        );
    }

    let r = c.base_p_digits.len() as u32;
    if (d as u64) < p {
        rec.verdict(
            "digit-range",
            format!("{b} <= r <= {}", b + e),
            format!("r = {r}"),
            b <= r && r <= b + e,
        );
    } else {
        rec.verdict(
            "digit-range",
            format!("{b} <= r (upper bound needs d(Z(G)) = {d} < p)"),
            format!("r = {r}"),
            b <= r,
        );
    }

    let claim =
        "c(G) <= d(Z(G)) p^2, with equality when p >= 3 and G is not a nontrivial direct product";
    if s.exponent != p || cd != [1, p] {
        rec.skip(
            "exp-p-degree-p-formula",
            claim,
            "needs exp(G) = p and cd(G) = {1, p}",
        );
    } else {
        let want = d as u64 * p * p;
        if odd && not_split {
            rec.verdict(
                "exp-p-degree-p-formula",
                format!("c = {want}"),
                cv.to_string(),
                cv == want,
            );
        } else {
            rec.verdict(
                "exp-p-degree-p-formula",
                format!("c <= {want}"),
                cv.to_string(),
                cv <= want,
            );
        }
    }

    let claim = "c(G) = mu(G) lies in {p^2, ..., p^(n-1)}";
    if !odd || !z_cyclic {
        rec.skip("cyclic-center-range", claim, "needs p >= 3 and cyclic Z(G)");
    } else {
        let n = log_exact(s.order, p).unwrap_or(0);
        let in_range = (2..n).any(|k| p.pow(k) == cv);
        let (ok, computed) = match mu {
            Some(m) => (
                in_range && m.mu_value == cv,
                format!("c = {cv}, mu = {}", m.mu_value),
            ),
            None => (in_range, format!("c = {cv}")),
        };
        rec.verdict(
            "cyclic-center-range",
            format!("{claim}, n = {n}"),
            computed,
            ok,
        );
    }

    let claim = "c(G) = p^(a+1) for max cd(G) = p^a";
    if !(z_cyclic && metabelian && s.exponent == p) {
        rec.skip(
            "exp-p-cyclic-center-formula",
            claim,
            "needs exp(G) = p, cyclic Z(G) and abelian G'",
        );
    } else {
        let want = maxcd * p;
        rec.verdict(
            "exp-p-cyclic-center-formula",
            format!("c = {want}"),
            cv.to_string(),
            cv == want,
        );
    }

    let claim = "c(G) = d(Z(G)) p^(s+1)";
    let single = cd.len() == 2 && maxcd > p;
    if !(s.exponent == p && single && s.center_derived_rank == d) {
        rec.skip(
            "exp-p-single-degree-formula",
            claim,
            "needs exp(G) = p, cd(G) = {1, p^s} with s > 1 and d(Z(G) cap G') = d(Z(G))",
        );
    } else {
        let want = d as u64 * maxcd * p;
        rec.verdict(
            "exp-p-single-degree-formula",
            format!("c = {want}"),
            cv.to_string(),
            cv == want,
        );
    }

    let claim = "c(G) = d(Z(G)) p^2";
    let elementary_index_p = g
        .maximal_subgroups(&g.whole(), p)
        .iter()
        .any(|m| g.subgroup_exponent(m) == p && g.abelian_invariants(m).is_ok());
    if !elementary_index_p {
        rec.skip(
            "elementary-index-p-formula",
            claim,
            "no elementary abelian subgroup of index p",
        );
    } else if c.contains_linear_witness {
        rec.skip(
            "elementary-index-p-formula",
            claim,
            "the computed X_G contains a linear character",
        );
    } else {
        let want = d as u64 * p * p;
        rec.verdict(
            "elementary-index-p-formula",
            format!("c = {want}"),
            cv.to_string(),
            cv == want,
        );
    }

    let claim = "p^2 divides mu(G)";
    if !odd || !not_split {
        rec.skip(
            "p2-divides-mu",
            claim,
            "needs p >= 3 and G not a nontrivial direct product",
        );
    } else {
        match mu {
            Some(m) => rec.verdict(
                "p2-divides-mu",
                claim.into(),
                m.mu_value.to_string(),
                m.mu_value % (p * p) == 0,
            ),
            None => rec.skip("p2-divides-mu", claim, mu_missing),
        }
    }

    let claim = "c(G) = a p^2 + b p^3 with a + b = d(Z(G))";
    let two_digit = |c: &crate::quasiperm::CSolution| {
        let dg = &c.base_p_digits;
        dg.len() <= 3 && dg.first().copied().unwrap_or(0) == 0 && dg.iter().sum::<u64>() == d as u64
    };
    let exp_ok = s.exponent == p || s.exponent == p * p;
    if !(odd && exp_ok && cd == [1, p, p * p] && d >= 2 && not_split) {
        rec.skip(
            "two-digit-form",
            claim,
            "needs p >= 3, exp(G) in {p, p^2}, cd(G) = {1, p, p^2}, d(Z(G)) >= 2, G not a nontrivial direct product",
        );
    } else {
        let base = g.omega1(&s.center, p);
        match g.abelian_normal_search(&base, p, true, limits.mu_nodes) {
            Ok(search) => {
                let target = (s.order / (p * p)) as usize;
                if search.subgroups.iter().any(|h| h.order() >= target) {
                    rec.verdict(
                        "two-digit-form",
                        claim.into(),
                        format!("c = {cv}, digits {:?}", c.base_p_digits),
                        two_digit(c),
                    );
                } else {
                    rec.skip(
                        "two-digit-form",
                        claim,
                        "no elementary abelian normal subgroup of index p^2",
                    );
                }
            }
            Err(e) => rec.skip("two-digit-form", claim, format!("budget: {e}")),
        }
    }

    if !(odd && exp_ok && cd == [1, p] && (d as u64) < p && not_split) {
        rec.skip(
            "two-digit-form-degree-p",
            claim,
            "needs p >= 3, exp(G) in {p, p^2}, cd(G) = {1, p}, d(Z(G)) < p, G not a nontrivial direct product",
        );
    } else {
        rec.verdict(
            "two-digit-form-degree-p",
            claim.into(),
            format!("c = {cv}, digits {:?}", c.base_p_digits),
            two_digit(c),
        );
    }
}

/// Run a suite; groups are processed in parallel and reported in suite order.
pub fn run_suite(suite: Suite, limits: &Limits, timeout: Option<Duration>) -> Vec<CheckResult> {
    let timeout = timeout.unwrap_or(suite.default_timeout());
    suite_groups(suite)
        .par_iter()
        .map(|cg| run_group(cg, &limits.with_timeout(Some(timeout))))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

pub fn any_failed(results: &[CheckResult]) -> bool {
    results.iter().any(|r| r.status == Status::Fail)
}

/// Human-readable table, one line per check.
pub fn render_text(results: &[CheckResult]) -> String {
    let mut out = String::new();
    for r in results {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let _ = write!(
            out,
            "{status}  {:<12} {:<12} {:<30} claimed: {}  computed: {}",
            r.group, r.params, r.check, r.claimed, r.computed
        );
        if let Some(reason) = &r.reason {
            let _ = write!(out, "  ({reason})");
        }
        if let Some(t) = r.runtime {
            let _ = write!(out, "  [{:.2}s]", t.as_secs_f64());
        }
        out.push('\n');
    }
    let count = |s: Status| results.iter().filter(|r| r.status == s).count();
    let _ = writeln!(
        out,
        "{} passed, {} failed, {} skipped",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skipped)
    );
    out
}
