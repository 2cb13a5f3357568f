//! Rank computation over prime fields.
//!
//! GF(2) matrices pack 64 columns per word; odd primes use one `u32`
//! per entry. Both kernels do plain row reduction, which is all the
//! boundary-rank workload needs.

/// Bit-packed matrix over GF(2). Rows are added incrementally; `rank`
/// reduces in place.
pub struct Gf2Matrix {
    words: usize,
    rows: Vec<u64>,
}

impl Gf2Matrix {
    pub fn new(cols: usize) -> Gf2Matrix {
        Gf2Matrix { words: cols.div_ceil(64), rows: Vec::new() }
    }

    pub fn rows(&self) -> usize {
        if self.words == 0 {
            0
        } else {
            self.rows.len() / self.words
        }
    }

    /// Appends a row given its set column indices.
    pub fn push_row_sparse(&mut self, cols: &[usize]) {
        let base = self.rows.len();
        self.rows.resize(base + self.words, 0);
        for &c in cols {
            self.rows[base + c / 64] |= 1 << (c % 64);
        }
    }

    pub fn rank(mut self) -> usize {
        let words = self.words;
        if words == 0 {
            return 0;
        }
        let nrows = self.rows();
        // pivot_of[bit] = row index whose leading bit is `bit`.
        let mut pivot_of: Vec<u32> = vec![u32::MAX; words * 64];
        let mut rank = 0;
        for r in 0..nrows {
            let row_start = r * words;
            loop {
                let Some(bit) = leading_bit(&self.rows[row_start..row_start + words]) else {
                    break;
                };
                let p = pivot_of[bit];
                if p == u32::MAX {
                    pivot_of[bit] = r as u32;
                    rank += 1;
                    break;
                }
                // Pivot rows always precede the row being reduced.
                let p_start = p as usize * words;
                let (head, tail) = self.rows.split_at_mut(row_start);
                for w in 0..words {
                    tail[w] ^= head[p_start + w];
                }
            }
        }
        rank
    }
}

fn leading_bit(row: &[u64]) -> Option<usize> {
    for (w, &word) in row.iter().enumerate() {
        if word != 0 {
            return Some(w * 64 + word.trailing_zeros() as usize);
        }
    }
    None
}

/// Dense matrix over GF(p) for an odd prime p.
pub struct GfPrimeMatrix {
    cols: usize,
    p: u32,
    rows: Vec<u32>,
}

impl GfPrimeMatrix {
    pub fn new(cols: usize, p: u32) -> GfPrimeMatrix {
        GfPrimeMatrix { cols, p, rows: Vec::new() }
    }

    /// Appends a row given `(column, value)` pairs; values need not be
    /// reduced mod p.
    pub fn push_row_sparse(&mut self, entries: &[(usize, i64)]) {
        let base = self.rows.len();
        self.rows.resize(base + self.cols, 0);
        let p = self.p as i64;
        for &(c, v) in entries {
            self.rows[base + c] = v.rem_euclid(p) as u32;
        }
    }

    pub fn rank(mut self) -> usize {
        let cols = self.cols;
        if cols == 0 {
            return 0;
        }
        let p = self.p as u64;
        let nrows = self.rows.len() / cols;
        let mut rank = 0;
        for col in 0..cols {
            // Find a pivot row at or below `rank`.
            let Some(pivot) = (rank..nrows).find(|&r| self.rows[r * cols + col] != 0) else {
                continue;
            };
            for w in 0..cols {
                self.rows.swap(rank * cols + w, pivot * cols + w);
            }
            let inv = mod_inverse(self.rows[rank * cols + col] as u64, p);
            for w in col..cols {
                let v = self.rows[rank * cols + w] as u64 * inv % p;
                self.rows[rank * cols + w] = v as u32;
            }
            for r in 0..nrows {
                if r == rank {
                    continue;
                }
                let factor = self.rows[r * cols + col] as u64;
                if factor == 0 {
                    continue;
                }
                for w in col..cols {
                    let sub = factor * self.rows[rank * cols + w] as u64 % p;
                    let v = (self.rows[r * cols + w] as u64 + p - sub) % p;
                    self.rows[r * cols + w] = v as u32;
                }
            }
            rank += 1;
            if rank == nrows {
                break;
            }
        }
        rank
    }
}

/// Inverse of `a` mod the prime `p`, via Fermat.
pub fn mod_inverse(a: u64, p: u64) -> u64 {
    mod_pow(a % p, p - 2, p)
}

pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
