//! Exact irreducible character tables by the Dixon–Schneider method.
//!
//! Central characters are common eigenvectors of the class matrices over a
//! prime field `F_q` with `q ≡ 1 (mod exp G)` and `q > 2√|G|`. Each
//! one-dimensional common eigenspace yields a character mod `q`, which is
//! lifted to `Z[w]` through the eigenvalue multiplicities of `ρ(g)`.

pub mod modp;

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arith::{isqrt, prime_one_mod, prime_power, primitive_root};
use crate::cyclotomic::{root_of_unity_mod, CycInt};
use crate::error::{Error, Result};
use crate::group::{Elt, Group, Subgroup};
use crate::limits::Limits;
use modp::{charpoly, nullspace, roots, rref, transpose, Fq};

/// A set of class ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassSet {
    bits: Vec<u64>,
    len: usize,
}

impl ClassSet {
    pub fn empty(len: usize) -> Self {
        ClassSet {
            bits: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for c in 0..len {
            s.insert(c);
        }
        s
    }

    pub fn insert(&mut self, c: usize) {
        self.bits[c / 64] |= 1 << (c % 64);
    }

    pub fn contains(&self, c: usize) -> bool {
        self.bits[c / 64] >> (c % 64) & 1 == 1
    }

    pub fn intersect(&self, other: &ClassSet) -> ClassSet {
        ClassSet {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a & b)
                .collect(),
            len: self.len,
        }
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Only the identity class remains.
    pub fn is_identity_only(&self) -> bool {
        self.bits[0] == 1 && self.bits[1..].iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&c| self.contains(c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Character {
    pub values: Vec<CycInt>,
    pub degree: u64,
    pub kernel: ClassSet,
}

impl Character {
    pub fn is_linear(&self) -> bool {
        self.degree == 1
    }

    pub fn is_faithful(&self) -> bool {
        self.kernel.is_identity_only()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharTable {
    pub order: u64,
    pub exponent: u64,
    pub prime_modulus: u64,
    pub class_sizes: Vec<u64>,
    pub class_reps: Vec<Elt>,
    pub class_words: Vec<String>,
    pub element_orders: Vec<u32>,
    /// `power[c][k]`: class of `g_c^k`, `0 <= k < exponent`.
    pub power: Vec<Vec<u32>>,
    pub inverse: Vec<u32>,
    pub chars: Vec<Character>,
}

impl CharTable {
    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn power_class(&self, c: usize, k: u64) -> usize {
        self.power[c][(k % self.exponent) as usize] as usize
    }

    /// Values of `χ^σ_k`, i.e. `g ↦ χ(g^k)`.
    pub fn galois_conjugate(&self, chi: usize, k: u64) -> Vec<CycInt> {
        (0..self.num_classes())
            .map(|c| self.chars[chi].values[self.power_class(c, k)].clone())
            .collect()
    }

    /// Kernel of a character as a subgroup of `g`.
    pub fn kernel(&self, g: &Group, chi: usize) -> Subgroup {
        let cl = g.classes();
        let mut elems: Vec<Elt> = self.chars[chi]
            .kernel
            .iter()
            .flat_map(|c| cl.members[c].iter().copied())
            .collect();
        elems.sort_unstable();
        g.subgroup_from_elements(elems)
    }

    pub fn degree_set(&self) -> Vec<u64> {
        let mut d: Vec<u64> = self.chars.iter().map(|c| c.degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn max_degree(&self) -> u64 {
        self.chars.iter().map(|c| c.degree).max().unwrap_or(1)
    }

    pub fn min_nonlinear_degree(&self) -> Option<u64> {
        self.chars.iter().map(|c| c.degree).filter(|&d| d > 1).min()
    }

    pub fn min_faithful_degree(&self) -> Result<u64> {
        self.chars
            .iter()
            .filter(|c| c.is_faithful())
            .map(|c| c.degree)
            .min()
            .ok_or(Error::NoFaithfulIrreducible)
    }

    pub fn num_linear(&self) -> usize {
        self.chars.iter().filter(|c| c.is_linear()).count()
    }

    /// Human-readable dump: class header, then one row per character with
    /// values as integer polynomials in `w = exp(2πi/e)`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# order {}  exponent {}  classes {}  (w = primitive {}-th root of unity)",
            self.order,
            self.exponent,
            self.num_classes(),
            self.exponent
        );
        for (c, w) in self.class_words.iter().enumerate() {
            let _ = writeln!(
                out,
                "class {c}: rep {w}  size {}  order {}",
                self.class_sizes[c], self.element_orders[c]
            );
        }
        for (i, chi) in self.chars.iter().enumerate() {
            let vals: Vec<String> = chi.values.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "X.{i} [deg {}]: {}", chi.degree, vals.join(" | "));
        }
        out
    }
}

struct Split<'a> {
    g: &'a Group,
    f: Fq,
    k: usize,
    sizes: Vec<u64>,
    rows: HashMap<(usize, usize), Vec<u32>>,
}

impl Split<'_> {
    /// Row `l` of the class matrix of class `j`: entry `i` is the number of
    /// `x ∈ C_j` with `x^-1 z_i ∈ C_l`.
    fn row(&mut self, j: usize, l: usize) -> &[u32] {
        if !self.rows.contains_key(&(j, l)) {
            let cl = self.g.classes();
            let zl = cl.reps[l];
            let mut b = vec![0u64; self.k];
            for &x in &cl.members[j] {
                b[cl.class_of[self.g.mul(x, zl) as usize] as usize] += 1;
            }
            let row = b
                .iter()
                .enumerate()
                .map(|(i, &bi)| {
                    let num = self.sizes[l] * bi;
                    debug_assert_eq!(num % self.sizes[i], 0);
                    ((num / self.sizes[i]) % self.f.q) as u32
                })
                .collect();
            self.rows.insert((j, l), row);
        }
        &self.rows[&(j, l)]
    }

    /// Common eigenspaces of class `j` inside the space with RREF basis `basis`.
    fn split(&mut self, j: usize, basis: &[Vec<u32>], pivots: &[usize]) -> Vec<Vec<Vec<u32>>> {
        let f = self.f;
        let m = basis.len();
        // R[r][s]: coefficient of basis[s] in M_j basis[r].
        let mut r = vec![vec![0u32; m]; m];
        for (s, &l) in pivots.iter().enumerate() {
            let row = self.row(j, l).to_vec();
            for (rr, b) in basis.iter().enumerate() {
                r[rr][s] = f.dot(b, &row);
            }
        }
        // Coordinates c with c R = λ c are null vectors of (R - λ)^T.
        let rt = transpose(&r);
        let poly = charpoly(f, rt.clone());
        let lambdas = roots(f, &poly);
        if lambdas.len() <= 1 {
            return vec![basis.to_vec()];
        }
        let mut pieces = Vec::new();
        for lam in lambdas {
            let mut a = rt.clone();
            for (i, row) in a.iter_mut().enumerate() {
                row[i] = f.sub(row[i], lam);
            }
            let coords = nullspace(f, &a, m);
            let mut vecs: Vec<Vec<u32>> = coords
                .iter()
                .map(|c| {
                    let mut v = vec![0u32; self.k];
                    for (cr, b) in c.iter().zip(basis) {
                        if *cr != 0 {
                            for (vi, &bi) in v.iter_mut().zip(b) {
                                *vi = f.add(*vi, f.mul(*cr, bi));
                            }
                        }
                    }
                    v
                })
                .collect();
            rref(f, &mut vecs);
            pieces.push(vecs);
        }
        pieces
    }
}

fn pivots_of(basis: &[Vec<u32>]) -> Vec<usize> {
    basis
        .iter()
        .map(|b| b.iter().position(|&x| x != 0).expect("nonzero basis row"))
        .collect()
}

/// Compute the full character table of `g`.
pub fn character_table(g: &Group, limits: &Limits) -> Result<CharTable> {
    let n = g.order() as u64;
    if g.order() > limits.chartab {
        return Err(Error::BudgetExceeded {
            what: "character table (group order)",
            limit: limits.chartab,
        });
    }
    let e = g.exponent();
    let Some((p, _)) = prime_power(e) else {
        return Err(Error::ConductorNotPrimePower(e));
    };
    let q = prime_one_mod(e, isqrt(4 * n));
    let f = Fq { q };
    let zeta = root_of_unity_mod(q, primitive_root(q), e) as u32;
    let cl = g.classes();
    let k = cl.len();
    let sizes = cl.sizes.clone();

    // Split by central elements: their class matrices are permutations.
    let mut spaces: Vec<Vec<Vec<u32>>> = vec![(0..k)
        .map(|i| {
            let mut v = vec![0u32; k];
            v[i] = 1;
            v
        })
        .collect()];
    let center = g.center();
    for &z in center.generators() {
        let o = g.element_order(z) as usize;
        let zo = f.pow(zeta, e / o as u64);
        // sigma[t][l] = class of z^t z_l
        let mut sigma = vec![vec![0usize; k]; o];
        for l in 0..k {
            let mut y = cl.reps[l];
            for row in sigma.iter_mut() {
                row[l] = cl.class_of[y as usize] as usize;
                y = g.mul(z, y);
            }
        }
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            for s in 0..o {
                let lam_inv = f.inv(f.pow(zo, s as u64));
                let mut imgs: Vec<Vec<u32>> = basis
                    .iter()
                    .map(|b| {
                        let mut v = vec![0u32; k];
                        let mut c = 1u32;
                        for sig in &sigma {
                            for (l, vl) in v.iter_mut().enumerate() {
                                let bl = b[sig[l]];
                                if bl != 0 {
                                    *vl = f.add(*vl, f.mul(c, bl));
                                }
                            }
                            c = f.mul(c, lam_inv);
                        }
                        v
                    })
                    .collect();
                rref(f, &mut imgs);
                if !imgs.is_empty() {
                    next.push(imgs);
                }
            }
        }
        spaces = next;
    }

    // Remaining splits with non-central class matrices, smallest classes first.
    let mut order: Vec<usize> = (1..k).filter(|&c| sizes[c] > 1).collect();
    order.sort_by_key(|&c| (sizes[c], c));
    let mut split = Split {
        g,
        f,
        k,
        sizes: sizes.clone(),
        rows: HashMap::new(),
    };
    let mut done: Vec<Vec<u32>> = Vec::new();
    let mut stack: Vec<(Vec<Vec<u32>>, usize)> = spaces.into_iter().map(|s| (s, 0)).collect();
    let mut steps = 0usize;
    while let Some((basis, mut next_class)) = stack.pop() {
        if basis.len() == 1 {
            done.push(basis.into_iter().next().unwrap());
            continue;
        }
        steps += 1;
        if steps.is_multiple_of(16) {
            limits.check_deadline("character table")?;
        }
        let pivots = pivots_of(&basis);
        let mut pieces = vec![basis];
        while pieces.len() == 1 {
            if next_class == order.len() {
                return Err(Error::Internal(format!(
                    "class matrices do not split a {}-dimensional eigenspace",
                    pieces[0].len()
                )));
            }
            pieces = split.split(order[next_class], &pieces[0], &pivots);
            next_class += 1;
        }
        let total: usize = pieces.iter().map(|p| p.len()).sum();
        if total != pivots.len() {
            return Err(Error::Internal(
                "class matrix not diagonalisable over the table prime".into(),
            ));
        }
        for p in pieces {
            stack.push((p, next_class));
        }
    }
    if done.len() != k {
        return Err(Error::Internal(format!(
            "found {} characters for {k} classes",
            done.len()
        )));
    }

    let inv_sizes: Vec<u32> = sizes.iter().map(|&s| f.inv((s % q) as u32)).collect();
    let mut chars = Vec::with_capacity(k);
    for v in done {
        debug_assert_eq!(v[0], 1);
        // Σ ω_i ω_{i*} / |C_i| = |G| / χ(1)^2
        let mut s = 0u32;
        for i in 0..k {
            let t = f.mul(f.mul(v[i], v[cl.inverse[i] as usize]), inv_sizes[i]);
            s = f.add(s, t);
        }
        let target = f.mul((n % q) as u32, f.inv(s));
        let degs: Vec<u64> = (1..=isqrt(n))
            .filter(|d| n.is_multiple_of(d * d) || n.is_multiple_of(*d))
            .filter(|&d| (d * d % q) as u32 == target)
            .collect();
        if degs.len() != 1 {
            return Err(Error::Internal(format!(
                "degree not determined modulo {q}: candidates {degs:?}"
            )));
        }
        let d = degs[0];
        let dq = (d % q) as u32;
        let modvals: Vec<u32> = (0..k)
            .map(|i| f.mul(f.mul(v[i], dq), inv_sizes[i]))
            .collect();
        let mut values = Vec::with_capacity(k);
        for i in 0..k {
            let o = g.element_order(cl.reps[i]) as u64;
            let zo_inv = f.inv(f.pow(zeta, e / o));
            let o_inv = f.inv((o % q) as u32);
            let mut raw = vec![0i64; e as usize];
            let mut total = 0u64;
            let xs: Vec<u32> = (0..o as usize)
                .map(|l| modvals[cl.power[i][l] as usize])
                .collect();
            // m_t = (1/o) Σ_l χ(g^l) ζ_o^(-t l)
            let ms = modp::dft(f, &xs, zo_inv, p);
            for (t, &mt) in ms.iter().enumerate() {
                let m = f.mul(mt, o_inv) as u64;
                if m > d {
                    return Err(Error::Internal(format!(
                        "eigenvalue multiplicity {m} exceeds degree {d}"
                    )));
                }
                total += m;
                raw[t * (e / o) as usize] += m as i64;
            }
            if total != d {
                return Err(Error::Internal(
                    "multiplicities do not sum to the degree".into(),
                ));
            }
            let val = CycInt::reduce(&raw, e)?;
            if val.eval_mod(q, zeta as u64) != modvals[i] as u64 {
                return Err(Error::Internal("lifted value disagrees modulo q".into()));
            }
            values.push(val);
        }
        let deg_val = CycInt::int_embed(d as i64, e)?;
        let mut kernel = ClassSet::empty(k);
        for (c, val) in values.iter().enumerate() {
            if *val == deg_val {
                kernel.insert(c);
            }
        }
        chars.push(Character {
            values,
            degree: d,
            kernel,
        });
    }
    chars.sort_by(|a, b| {
        a.degree.cmp(&b.degree).then_with(|| {
            for (x, y) in a.values.iter().zip(&b.values) {
                let o = y.coeffs().cmp(x.coeffs());
                if o.is_ne() {
                    return o;
                }
            }
            std::cmp::Ordering::Equal
        })
    });
    Ok(CharTable {
        order: n,
        exponent: e,
        prime_modulus: q,
        class_sizes: sizes,
        class_reps: cl.reps.clone(),
        class_words: cl.reps.iter().map(|&r| g.word(r)).collect(),
        element_orders: cl.reps.iter().map(|&r| g.element_order(r)).collect(),
        power: cl.power.clone(),
        inverse: cl.inverse.clone(),
        chars,
    })
}

/// First and second orthogonality modulo a large auxiliary prime, plus the
/// exact integer orthogonality of the Galois sums and `Σ χ(1)^2 = |G|`.
pub fn check_orthogonality(t: &CharTable) -> bool {
    let k = t.num_classes();
    if t.chars.len() != k {
        return false;
    }
    let n = t.order;
    if t.chars.iter().map(|c| c.degree * c.degree).sum::<u64>() != n {
        return false;
    }
    let e = t.exponent;
    let q = prime_one_mod(e, 1 << 25);
    let f = Fq { q };
    let zeta = root_of_unity_mod(q, primitive_root(q), e);
    let vals: Vec<Vec<u32>> = t
        .chars
        .iter()
        .map(|c| {
            c.values
                .iter()
                .map(|v| v.eval_mod(q, zeta) as u32)
                .collect()
        })
        .collect();
    let conj: Vec<Vec<u32>> = vals
        .iter()
        .map(|row| (0..k).map(|i| row[t.inverse[i] as usize]).collect())
        .collect();
    // Σ_i |C_i| χ(g_i) ψ(g_i^-1) = |G| δ
    for a in 0..k {
        let weighted: Vec<u32> = (0..k)
            .map(|i| f.mul((t.class_sizes[i] % q) as u32, vals[a][i]))
            .collect();
        for b in a..k {
            let want = if a == b { n % q } else { 0 };
            if f.dot(&weighted, &conj[b]) as u64 != want {
                return false;
            }
        }
    }
    // Σ_χ χ(g_i) χ(g_j^-1) = δ |G| / |C_i|
    let cols = transpose(&vals);
    let conj_cols = transpose(&conj);
    for i in 0..k {
        for j in i..k {
            let want = if i == j {
                (n / t.class_sizes[i]) % q
            } else {
                0
            };
            if f.dot(&cols[i], &conj_cols[j]) as u64 != want {
                return false;
            }
        }
    }
    match crate::quasiperm::galois_orbits(t) {
        Ok(sums) => {
            for (a, x) in sums.iter().enumerate() {
                for (b, y) in sums.iter().enumerate().skip(a) {
                    let s: i128 = (0..k)
                        .map(|i| {
                            t.class_sizes[i] as i128 * x.values[i] as i128 * y.values[i] as i128
                        })
                        .sum();
                    let want = if a == b {
                        (n as i128) * x.orbit.len() as i128
                    } else {
                        0
                    };
                    if s != want {
                        return false;
                    }
                }
            }
            true
        }
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{enumerate_regular, parse_presentation};

    fn table(text: &str) -> (Group, CharTable) {
        let spec = parse_presentation(text).unwrap();
        let g = Group::new(enumerate_regular(&spec, &Limits::default()).unwrap());
        let t = character_table(&g, &Limits::default()).unwrap();
        (g, t)
    }

    const XSP27: &str = "gens x,y,z; rels [x,y]=z, [x,z], [y,z], x^3, y^3, z^3";

    #[test]
    fn elementary_abelian_has_only_linear_characters() {
        let (_, t) = table("gens a,b; rels a^3, b^3, [a,b]");
        assert_eq!(t.chars.len(), 9);
        assert!(t.chars.iter().all(|c| c.is_linear()));
        assert!(check_orthogonality(&t));
        assert!(t.min_faithful_degree().is_err());
    }

    #[test]
    fn extraspecial_degrees_and_faithfulness() {
        let (g, t) = table(XSP27);
        let degs: Vec<u64> = t.chars.iter().map(|c| c.degree).collect();
        assert_eq!(degs, [1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3]);
        assert_eq!(t.min_faithful_degree(), Ok(3));
        assert_eq!(t.min_nonlinear_degree(), Some(3));
        assert!(check_orthogonality(&t));
        // Trivial character first.
        assert!(t.chars[0].kernel.count() == t.num_classes());
        for (i, c) in t.chars.iter().enumerate() {
            let expect = match (i, c.is_linear()) {
                (0, _) => 27,
                (_, true) => 9,
                _ => 1,
            };
            assert_eq!(t.kernel(&g, i).order(), expect);
        }
    }

    #[test]
    fn semidihedral_table() {
        let (g, t) = table("gens a,b; rels a^8, b^2, b^-1*a*b = a^3");
        assert_eq!(g.order(), 16);
        assert_eq!(t.degree_set(), [1, 2]);
        assert_eq!(t.num_linear(), 4);
        assert!(check_orthogonality(&t));
        // One faithful degree-2 character has irrational values (sqrt(-2)).
        let irrational = t
            .chars
            .iter()
            .filter(|c| c.values.iter().any(|v| v.as_integer().is_err()))
            .count();
        assert_eq!(irrational, 2);
    }

    #[test]
    fn linear_count_is_abelianisation_order() {
        for text in [
            XSP27,
            "gens a,b; rels a^9, b^3, b^-1*a*b = a^4",
            "gens a,b; rels a^4, b^2, b^-1*a*b = a^-1",
        ] {
            let (g, t) = table(text);
            let d = g.derived_subgroup();
            assert_eq!(t.num_linear(), g.order() / d.order());
            let sum: u64 = t.chars.iter().map(|c| c.degree * c.degree).sum();
            assert_eq!(sum, g.order() as u64);
        }
    }

    #[test]
    fn complex_orthogonality_agrees() {
        let (_, t) = table("gens a,b; rels a^9, b^3, b^-1*a*b = a^4");
        let k = t.num_classes();
        for a in &t.chars {
            for b in &t.chars {
                let (mut re, mut im) = (0.0, 0.0);
                for i in 0..k {
                    let (x, y) = a.values[i].to_complex();
                    let (u, v) = b.values[i].to_complex();
                    re += t.class_sizes[i] as f64 * (x * u + y * v);
                    im += t.class_sizes[i] as f64 * (y * u - x * v);
                }
                let want = if a == b { t.order as f64 } else { 0.0 };
                assert!((re - want).abs() < 1e-6 && im.abs() < 1e-6);
            }
        }
    }

    #[test]
    fn corrupted_table_fails_check() {
        let (_, mut t) = table(XSP27);
        let last = t.chars.len() - 1;
        t.chars[last].values[1] = CycInt::int_embed(1, 3).unwrap();
        assert!(!check_orthogonality(&t));
    }

    #[test]
    fn dump_lists_every_character() {
        let (_, t) = table(XSP27);
        let d = t.dump();
        assert_eq!(d.lines().filter(|l| l.starts_with("X.")).count(), 11);
        assert!(d.contains("class 0: rep 1  size 1"));
    }

    #[test]
    fn order_budget_is_enforced() {
        let spec = parse_presentation(XSP27).unwrap();
        let g = Group::new(enumerate_regular(&spec, &Limits::default()).unwrap());
        let limits = Limits {
            chartab: 10,
            ..Limits::default()
        };
        assert!(matches!(
            character_table(&g, &limits),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
