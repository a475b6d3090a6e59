//! Cyclotomic integers `Σ a_j w^j` with `w` a primitive `e`-th root of unity,
//! `e` a prime power, kept in the canonical basis `1, w, …, w^(φ(e)-1)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{euler_phi, pow_mod, prime_power};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycInt {
    conductor: u64,
    /// Length `φ(e)` after reduction.
    coeffs: Vec<i64>,
}

fn check_conductor(e: u64) -> Result<(u64, u32)> {
    match prime_power(e) {
        Some(pb) => Ok(pb),
        None => Err(Error::ConductorNotPrimePower(e)),
    }
}

impl CycInt {
    /// Reduce a raw coefficient vector (indices taken modulo `e`).
    pub fn reduce(raw: &[i64], e: u64) -> Result<Self> {
        let (p, b) = check_conductor(e)?;
        let n = e as usize;
        let mut a = vec![0i64; n];
        for (j, &v) in raw.iter().enumerate() {
            a[j % n] += v;
        }
        let phi = euler_phi(e) as usize;
        if b > 0 {
            let step = p.pow(b - 1) as usize;
            // w^(φ(e)) = -Σ_{i<p-1} w^(i·p^(b-1)).
            for j in (phi..n).rev() {
                let c = a[j];
                if c == 0 {
                    continue;
                }
                for t in 1..p as usize {
                    a[j - t * step] -= c;
                }
                a[j] = 0;
            }
        }
        a.truncate(phi);
        Ok(CycInt {
            conductor: e,
            coeffs: a,
        })
    }

    pub fn zero(e: u64) -> Result<Self> {
        Self::int_embed(0, e)
    }

    pub fn int_embed(n: i64, e: u64) -> Result<Self> {
        check_conductor(e)?;
        let mut coeffs = vec![0i64; euler_phi(e) as usize];
        coeffs[0] = n;
        Ok(CycInt {
            conductor: e,
            coeffs,
        })
    }

    /// `w^k`.
    pub fn root_power(k: i64, e: u64) -> Result<Self> {
        let mut raw = vec![0i64; e as usize];
        raw[k.rem_euclid(e as i64) as usize] = 1;
        Self::reduce(&raw, e)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &CycInt) -> Result<CycInt> {
        if self.conductor != other.conductor {
            return Err(Error::ConductorMismatch(self.conductor, other.conductor));
        }
        Ok(CycInt {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &CycInt) -> Result<CycInt> {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> CycInt {
        CycInt {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> CycInt {
        CycInt {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }

    /// The rational integer `n` when the value is `n·w^0`.
    pub fn as_integer(&self) -> Result<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Ok(self.coeffs[0])
        } else {
            Err(Error::NotRational)
        }
    }

    /// Image in `F_q` under `w ↦ zeta`, where `zeta` has multiplicative order `e`.
    pub fn eval_mod(&self, q: u64, zeta: u64) -> u64 {
        let mut acc = 0u64;
        let mut z = 1u64;
        for &c in &self.coeffs {
            let c = c.rem_euclid(q as i64) as u64;
            acc = (acc + c * z) % q;
            z = z * zeta % q;
        }
        acc
    }

    /// Complex value with `w = exp(2πi/e)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, &c) in self.coeffs.iter().enumerate() {
            let t = 2.0 * std::f64::consts::PI * j as f64 / self.conductor as f64;
            re += c as f64 * t.cos();
            im += c as f64 * t.sin();
        }
        (re, im)
    }

    /// Image under the Galois automorphism `w ↦ w^k`, `gcd(k, e) = 1`.
    pub fn galois(&self, k: u64) -> CycInt {
        let e = self.conductor;
        let mut raw = vec![0i64; e as usize];
        for (j, &c) in self.coeffs.iter().enumerate() {
            raw[(j as u64 * k % e) as usize] += c;
        }
        Self::reduce(&raw, e).expect("conductor already validated")
    }
}

/// Primitive `e`-th root of unity in `F_q`, from a primitive root `g` of `q`.
pub fn root_of_unity_mod(q: u64, g: u64, e: u64) -> u64 {
    pow_mod(g, (q - 1) / e, q)
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mono = match j {
                0 => String::new(),
                1 => "w".to_string(),
                _ => format!("w^{j}"),
            };
            let term = match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                (-1, false) => format!("-{mono}"),
                _ => format!("{c}*{mono}"),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            match t.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(t);
                }
            }
        }
        f.write_str(&out)
    }
}
