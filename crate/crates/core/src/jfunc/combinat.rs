use std::fmt;

/// Weak compositions of `d` into `parts` nonnegative entries, in
/// lexicographic order.
pub fn compositions(d: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0; parts];
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[pos] = k;
            rec(pos + 1, left - k, cur, out);
        }
    }
    if parts == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// Cartesian product of per-level compositions, lexicographic.
pub fn level_compositions(degrees: &[u32], ranks: &[usize]) -> Vec<Vec<Vec<u32>>> {
    let mut out: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
    for (&d, &m) in degrees.iter().zip(ranks) {
        let local = compositions(d, m);
        out = out
            .into_iter()
            .flat_map(|prefix| {
                local.iter().map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c.clone());
                    p
                })
            })
            .collect();
    }
    out
}

/// A nondecreasing splitting `d_1 <= ... <= d_r`.
///
/// Equal entries form blocks; block `i` has multiplicity `r_i` and ends at
/// the jumping index `m_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpProfile {
    degrees: Vec<u32>,
    multiplicities: Vec<usize>,
    values: Vec<u32>,
}

impl JumpProfile {
    pub fn new(degrees: Vec<u32>) -> Option<Self> {
        if degrees.is_empty() || !degrees.windows(2).all(|w| w[0] <= w[1]) {
            return None;
        }
        let mut multiplicities = Vec::new();
        let mut values: Vec<u32> = Vec::new();
        for &d in &degrees {
            if values.last() == Some(&d) {
                *multiplicities.last_mut().unwrap() += 1;
            } else {
                values.push(d);
                multiplicities.push(1);
            }
        }
        Some(JumpProfile { degrees, multiplicities, values })
    }

    /// All profiles of total degree `d` with `r` entries, lexicographic.
    pub fn all(r: usize, d: u32) -> Vec<JumpProfile> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(r);
        fn rec(r: usize, left: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<JumpProfile>) {
            if cur.len() + 1 == r {
                if left >= min {
                    cur.push(left);
                    out.push(JumpProfile::new(cur.clone()).unwrap());
                    cur.pop();
                }
                return;
            }
            let slots = (r - cur.len()) as u32;
            let mut k = min;
            while k * slots <= left {
                cur.push(k);
                rec(r, left - k, k, cur, out);
                cur.pop();
                k += 1;
            }
        }
        if r > 0 {
            rec(r, d, 0, &mut cur, &mut out);
        }
        out
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn total(&self) -> u32 {
        self.degrees.iter().sum()
    }

    /// `r_1, …, r_{k+1}`.
    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Common degree of each block.
    pub fn block_degrees(&self) -> &[u32] {
        &self.values
    }

    /// `m_1 < … < m_k`, block ends excluding the last (which is `r`).
    pub fn jumping_indices(&self) -> Vec<usize> {
        let mut acc = 0;
        let mut out = Vec::new();
        for &m in &self.multiplicities[..self.multiplicities.len() - 1] {
            acc += m;
            out.push(acc);
        }
        out
    }

    /// `d_{ij} = d_i - d_j` between blocks (0-based).
    pub fn gap(&self, i: usize, j: usize) -> i64 {
        self.values[i] as i64 - self.values[j] as i64
    }
}

impl fmt::Display for JumpProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}
