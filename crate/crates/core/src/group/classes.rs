use super::{Elt, Group};

/// Conjugacy classes numbered by their smallest element id.
#[derive(Clone, Debug)]
pub struct Classes {
    pub class_of: Vec<u32>,
    pub reps: Vec<Elt>,
    pub sizes: Vec<u64>,
    pub members: Vec<Vec<Elt>>,
    /// `power[c][k]` is the class of `reps[c]^k` for `0 <= k < exp(G)`.
    pub power: Vec<Vec<u32>>,
    /// Class of the inverses.
    pub inverse: Vec<u32>,
}

impl Classes {
    pub(super) fn compute(g: &Group) -> Self {
        let n = g.order();
        let ngens = g.num_generators();
        let mut class_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        let mut members = Vec::new();
        for x in 0..n as Elt {
            if class_of[x as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            class_of[x as usize] = c;
            let mut orbit = vec![x];
            let mut i = 0;
            while i < orbit.len() {
                let y = orbit[i];
                for h in 0..ngens {
                    let z = g.conj_gen(y, h);
                    if class_of[z as usize] == u32::MAX {
                        class_of[z as usize] = c;
                        orbit.push(z);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            members.push(orbit);
        }
        let sizes = members.iter().map(|m| m.len() as u64).collect();
        let e = g.exponent() as usize;
        let power = reps
            .iter()
            .map(|&r| {
                let mut row = Vec::with_capacity(e);
                let mut y = 0;
                for _ in 0..e {
                    row.push(class_of[y as usize]);
                    y = g.mul(y, r);
                }
                row
            })
            .collect();
        let inverse = reps.iter().map(|&r| class_of[g.inv(r) as usize]).collect();
        Classes {
            class_of,
            reps,
            sizes,
            members,
            power,
            inverse,
        }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Class of `reps[c]^k` for any integer `k`.
    pub fn power_class(&self, c: usize, k: i64) -> u32 {
        let e = self.power[c].len() as i64;
        self.power[c][k.rem_euclid(e) as usize]
    }
}
