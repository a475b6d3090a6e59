//! Dense linear algebra over a small prime field `F_q`.

use crate::arith::pow_mod;

#[derive(Clone, Copy, Debug)]
pub struct Fq {
    pub q: u64,
}

impl Fq {
    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.q) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.q - b as u64) % self.q) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a as u64 * b as u64 % self.q) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            (self.q - a as u64) as u32
        }
    }

    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(a != 0);
        pow_mod(a as u64, self.q - 2, self.q) as u32
    }

    pub fn pow(self, a: u32, e: u64) -> u32 {
        pow_mod(a as u64, e, self.q) as u32
    }

    pub fn from_i64(self, a: i64) -> u32 {
        a.rem_euclid(self.q as i64) as u32
    }

    /// `row[j] -= c * src[j]` for all `j`.
    #[inline]
    pub fn axpy_neg(self, row: &mut [u32], c: u32, src: &[u32]) {
        if c == 0 {
            return;
        }
        let nc = self.q - c as u64;
        for (r, &s) in row.iter_mut().zip(src) {
            *r = ((*r as u64 + nc * s as u64) % self.q) as u32;
        }
    }

    pub fn scale(self, row: &mut [u32], c: u32) {
        for r in row.iter_mut() {
            *r = self.mul(*r, c);
        }
    }

    pub fn dot(self, a: &[u32], b: &[u32]) -> u32 {
        let mut acc: u64 = 0;
        for (chunk_a, chunk_b) in a.chunks(1 << 12).zip(b.chunks(1 << 12)) {
            let s: u64 = chunk_a
                .iter()
                .zip(chunk_b)
                .map(|(&x, &y)| x as u64 * y as u64)
                .sum();
            acc = (acc + s % self.q) % self.q;
        }
        acc as u32
    }
}

/// Reduced row echelon form in place; zero rows are removed. Returns the
/// pivot column of each remaining row.
pub fn rref(f: Fq, rows: &mut Vec<Vec<u32>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = f.inv(rows[r][col]);
        f.scale(&mut rows[r], inv);
        let pivot_row = std::mem::take(&mut rows[r]);
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let c = row[col];
                f.axpy_neg(row, c, &pivot_row);
            }
        }
        rows[r] = pivot_row;
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : A x = 0}` for a matrix given by rows.
pub fn nullspace(f: Fq, a: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
    let mut rows: Vec<Vec<u32>> = a.to_vec();
    let pivots = rref(f, &mut rows);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (row, &pc) in rows.iter().zip(&pivots) {
            v[pc] = f.neg(row[free]);
        }
        out.push(v);
    }
    out
}

/// Characteristic polynomial `det(xI - A)`, coefficients from the constant
/// term upwards (monic), via reduction to upper Hessenberg form.
pub fn charpoly(f: Fq, mut h: Vec<Vec<u32>>) -> Vec<u32> {
    let n = h.len();
    for j in 0..n.saturating_sub(2) {
        let Some(i) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if i != j + 1 {
            h.swap(i, j + 1);
            for row in h.iter_mut() {
                row.swap(i, j + 1);
            }
        }
        let inv = f.inv(h[j + 1][j]);
        for k in j + 2..n {
            let u = f.mul(h[k][j], inv);
            if u == 0 {
                continue;
            }
            let src = h[j + 1].clone();
            f.axpy_neg(&mut h[k], u, &src);
            // Column j+1 += u * column k.
            for row in h.iter_mut() {
                row[j + 1] = f.add(row[j + 1], f.mul(u, row[k]));
            }
        }
    }
    // p[m] = char poly of leading m x m block.
    let mut p: Vec<Vec<u32>> = vec![vec![1]];
    for m in 1..=n {
        let mm = m - 1;
        // (x - h[mm][mm]) * p[m-1]
        let prev = &p[m - 1];
        let mut cur = vec![0u32; m + 1];
        for (d, &c) in prev.iter().enumerate() {
            cur[d + 1] = f.add(cur[d + 1], c);
            cur[d] = f.sub(cur[d], f.mul(h[mm][mm], c));
        }
        let mut t = 1u32;
        for i in 1..m {
            t = f.mul(t, h[mm - i + 1][mm - i]);
            let coef = f.mul(h[mm - i][mm], t);
            if coef == 0 {
                continue;
            }
            for (d, &c) in p[m - i - 1].iter().enumerate() {
                cur[d] = f.sub(cur[d], f.mul(coef, c));
            }
        }
        p.push(cur);
    }
    p.pop().unwrap()
}

pub fn eval_poly(f: Fq, poly: &[u32], x: u32) -> u32 {
    poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Distinct roots in `F_q`, ascending.
pub fn roots(f: Fq, poly: &[u32]) -> Vec<u32> {
    (0..f.q as u32)
        .filter(|&x| eval_poly(f, poly, x) == 0)
        .collect()
}

/// `X_t = Σ_l x_l w^(t l)` for `x` of length a power of `p`, `w` of that order.
pub fn dft(f: Fq, x: &[u32], w: u32, p: u64) -> Vec<u32> {
    let n = x.len();
    if n == 1 {
        return x.to_vec();
    }
    let p = p as usize;
    let sub = n / p;
    let wp = f.pow(w, p as u64);
    let parts: Vec<Vec<u32>> = (0..p)
        .map(|r| {
            let xs: Vec<u32> = x.iter().skip(r).step_by(p).copied().collect();
            dft(f, &xs, wp, p as u64)
        })
        .collect();
    let mut out = vec![0u32; n];
    let mut wt = 1u32;
    for (t, o) in out.iter_mut().enumerate() {
        let mut acc = 0u32;
        let mut wtr = 1u32;
        for part in &parts {
            acc = f.add(acc, f.mul(wtr, part[t % sub]));
            wtr = f.mul(wtr, wt);
        }
        *o = acc;
        wt = f.mul(wt, w);
    }
    out
}

pub fn transpose(a: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let n = a.len();
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| (0..n).map(|i| a[i][j]).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const F: Fq = Fq { q: 31 };

    fn det(f: Fq, mut a: Vec<Vec<u32>>) -> u32 {
        let n = a.len();
        let mut d = 1u32;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| a[i][c] != 0) else {
                return 0;
            };
            if p != c {
                a.swap(p, c);
                d = f.neg(d);
            }
            d = f.mul(d, a[c][c]);
            let inv = f.inv(a[c][c]);
            for i in c + 1..n {
                let u = f.mul(a[i][c], inv);
                let src = a[c].clone();
                f.axpy_neg(&mut a[i], u, &src);
            }
        }
        d
    }

    #[test]
    fn rref_and_nullspace() {
        let a = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        let ns = nullspace(F, &a, 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            assert_eq!(F.dot(row, &ns[0]), 0);
        }
    }

    #[test]
    fn dft_matches_direct_sum() {
        let f = Fq { q: 101 };
        let w = (1..101u32)
            .find(|&a| f.pow(a, 25) == 1 && f.pow(a, 5) != 1)
            .unwrap();
        let x: Vec<u32> = (0..25).map(|i| (i * i + 3) % 101).collect();
        let fast = dft(f, &x, w, 5);
        for (t, &v) in fast.iter().enumerate() {
            let mut s = 0;
            for (l, &xl) in x.iter().enumerate() {
                s = f.add(s, f.mul(xl, f.pow(w, (t * l) as u64)));
            }
            assert_eq!(v, s);
        }
    }

    proptest! {
        #[test]
        fn charpoly_matches_determinant(entries in prop::collection::vec(0u32..31, 16), x in 0u32..31) {
            let a: Vec<Vec<u32>> = entries.chunks(4).map(|c| c.to_vec()).collect();
            let cp = charpoly(F, a.clone());
            prop_assert_eq!(cp.len(), 5);
            prop_assert_eq!(cp[4], 1);
            let xa: Vec<Vec<u32>> = (0..4)
                .map(|i| (0..4).map(|j| {
                    let d = if i == j { x } else { 0 };
                    F.sub(d, a[i][j])
                }).collect())
                .collect();
            prop_assert_eq!(eval_poly(F, &cp, x), det(F, xa));
        }
    }
}
