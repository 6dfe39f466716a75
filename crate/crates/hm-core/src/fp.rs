//! Exact arithmetic in the prime field F_p.
//!
//! Everything downstream (quintic evaluation, point counting, node
//! bookkeeping, Weil-bound solving) runs on top of this module: a validated
//! [`PrimeContext`] carrying the roots of unity that exist for a given
//! residue class of p, Legendre symbols, Tonelli-Shanks square roots, and
//! dense matrix rank over F_p.
//!
//! Elements are `u64` values reduced into `[0, p)`. The context bound
//! `p < 2^20` keeps every product of two elements inside `u64` without
//! widening tricks.

use crate::Error;

/// Largest admissible prime, exclusive. Products of two reduced elements
/// stay below 2^40.
pub const MAX_PRIME: u64 = 1 << 20;

/// A good-reduction prime together with the cached field constants the rest
/// of the pipeline keeps asking for.
///
/// * `i_root`: a square root of -1, present iff p ≡ 1 (mod 4);
/// * `eps_root`: an element of multiplicative order 5, present iff p ≡ 1 (mod 5);
/// * `sqrt5`: a square root of 5, present iff 5 is a quadratic residue,
///   i.e. iff p ≡ ±1 (mod 5).
///
/// Each cached root is the smallest valid representative in `[0, p)`, so
/// results are identical across runs and platforms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeContext {
    p: u64,
    i_root: Option<u64>,
    eps_root: Option<u64>,
    sqrt5: Option<u64>,
    p_mod_4: u64,
    p_mod_5: u64,
    p_mod_20: u64,
    p_mod_40: u64,
}

impl PrimeContext {
    /// Validates `p` (odd prime, 7 ≤ p < 2^20, p ∉ {2, 5}) and caches the
    /// roots listed above.
    pub fn new(p: u64) -> Result<Self, Error> {
        if p == 2 || p == 5 || !is_prime(p) {
            return Err(Error::BadPrime(p));
        }
        if !(7..MAX_PRIME).contains(&p) {
            return Err(Error::PrimeOutOfRange(p));
        }
        let i_root = if p % 4 == 1 { sqrt_mod(p - 1, p) } else { None };
        let eps_root = if p % 5 == 1 {
            Some(smallest_order5(p))
        } else {
            None
        };
        let sqrt5 = if legendre(5, p) == 1 {
            sqrt_mod(5, p)
        } else {
            None
        };
        Ok(PrimeContext {
            p,
            i_root,
            eps_root,
            sqrt5,
            p_mod_4: p % 4,
            p_mod_5: p % 5,
            p_mod_20: p % 20,
            p_mod_40: p % 40,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn i_root(&self) -> Option<u64> {
        self.i_root
    }

    pub fn eps_root(&self) -> Option<u64> {
        self.eps_root
    }

    pub fn sqrt5(&self) -> Option<u64> {
        self.sqrt5
    }

    pub fn has_i(&self) -> bool {
        self.i_root.is_some()
    }

    pub fn has_eps(&self) -> bool {
        self.eps_root.is_some()
    }

    pub fn has_sqrt5(&self) -> bool {
        self.sqrt5.is_some()
    }

    pub fn p_mod_4(&self) -> u64 {
        self.p_mod_4
    }

    pub fn p_mod_5(&self) -> u64 {
        self.p_mod_5
    }

    pub fn p_mod_20(&self) -> u64 {
        self.p_mod_20
    }

    pub fn p_mod_40(&self) -> u64 {
        self.p_mod_40
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, base: u64, exp: u64) -> u64 {
        pow_mod(base, exp, self.p)
    }

    /// Multiplicative inverse; `a` must be nonzero mod p.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        pow_mod(a % self.p, self.p - 2, self.p)
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn reduce_signed(&self, a: i64) -> u64 {
        let m = a.rem_euclid(self.p as i64);
        m as u64
    }

    pub fn legendre(&self, a: i64) -> i32 {
        legendre(a, self.p)
    }

    /// Canonical (smaller-of-the-two) square root, if one exists.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        sqrt_mod(a % self.p, self.p)
    }
}

/// Deterministic Miller-Rabin, valid for all n < 2^64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    // This witness set is known to be exact below 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_wide(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_wide(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod_wide(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_wide(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_wide(acc, base, m);
        }
        base = mul_mod_wide(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Modular exponentiation for moduli below 2^20 (no widening needed).
pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Legendre symbol (a/p) via Euler's criterion: 0 if p | a, +1 for nonzero
/// squares, -1 otherwise.
pub fn legendre(a: i64, p: u64) -> i32 {
    debug_assert!(p > 2 && is_prime(p));
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    let e = pow_mod(r, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        -1
    }
}

/// Square root of `a` mod an odd prime `p` by Tonelli-Shanks, canonicalized
/// to the smaller of the two roots. `None` exactly when (a/p) = -1.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre(a as i64, p) != 1 {
        return None;
    }
    let r = if p % 4 == 3 {
        pow_mod(a, (p + 1) / 4, p)
    } else {
        tonelli_shanks(a, p)
    };
    Some(r.min(p - r))
}

fn tonelli_shanks(a: u64, p: u64) -> u64 {
    // p - 1 = q * 2^s with q odd.
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    // Smallest quadratic non-residue; two is correct half the time and the
    // scan is deterministic either way.
    let mut z = 2u64;
    while legendre(z as i64, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = t2 * t2 % p;
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    r
}

/// Smallest element of multiplicative order exactly 5 (requires 5 | p - 1).
fn smallest_order5(p: u64) -> u64 {
    debug_assert!(p % 5 == 1);
    for x in 2..p {
        if pow_mod(x, 5, p) == 1 {
            return x;
        }
    }
    unreachable!("5 | p - 1 guarantees an order-5 element");
}

/// Dense matrix over F_p, row-major, dimensions at most 16.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    p: u64,
    entries: Vec<u64>,
}

impl FpMatrix {
    pub fn new(rows: usize, cols: usize, p: u64) -> Self {
        assert!(rows <= 16 && cols <= 16, "matrix dimensions capped at 16");
        FpMatrix {
            rows,
            cols,
            p,
            entries: vec![0; rows * cols],
        }
    }

    pub fn from_rows(p: u64, rows: &[&[u64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = FpMatrix::new(r, c, p);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    pub fn identity(n: usize, p: u64) -> Self {
        let mut m = FpMatrix::new(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        debug_assert!(v < self.p);
        self.entries[r * self.cols + c] = v;
    }

    /// Glues `other` onto the right of `self` (same row count).
    pub fn hconcat(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.p, other.p);
        let mut m = FpMatrix::new(self.rows, self.cols + other.cols, self.p);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c));
            }
        }
        m
    }

    /// Matrix-vector product over F_p.
    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let p = self.p;
        (0..self.rows)
            .map(|r| {
                let mut acc = 0u64;
                for (c, &vc) in v.iter().enumerate() {
                    acc = (acc + self.get(r, c) * (vc % p)) % p;
                }
                acc
            })
            .collect()
    }

    /// Rank by Gaussian elimination with exact modular inverses.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_echelon().len()
    }

    /// Determinant (square matrices only).
    pub fn det(&self) -> u64 {
        assert_eq!(self.rows, self.cols);
        let p = self.p;
        let mut m = self.clone();
        let mut det = 1u64;
        for col in 0..m.cols {
            let pivot = (col..m.rows).find(|&r| m.get(r, col) != 0);
            let Some(pr) = pivot else { return 0 };
            if pr != col {
                m.swap_rows(pr, col);
                det = p - det;
                if det == p {
                    det = 0;
                }
            }
            let pv = m.get(col, col);
            det = det * pv % p;
            let inv = pow_mod(pv, p - 2, p);
            for r in col + 1..m.rows {
                let factor = m.get(r, col) * inv % p;
                if factor == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let v = (m.get(r, c) + p - factor * m.get(col, c) % p) % p;
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    /// One nonzero kernel vector, if the kernel is nontrivial.
    pub fn kernel_vector(&self) -> Option<Vec<u64>> {
        let p = self.p;
        let mut m = self.clone();
        let pivots = m.row_echelon();
        if pivots.len() == self.cols {
            return None;
        }
        let pivot_cols: Vec<usize> = pivots.clone();
        let free_col = (0..self.cols).find(|c| !pivot_cols.contains(c))?;
        let mut v = vec![0u64; self.cols];
        v[free_col] = 1;
        // Echelon rows are normalized to a unit pivot; back-substitute.
        for (row, &pc) in pivot_cols.iter().enumerate().rev() {
            let mut acc = 0u64;
            for (c, &vc) in v.iter().enumerate().skip(pc + 1) {
                acc = (acc + m.get(row, c) * vc) % p;
            }
            v[pc] = (p - acc) % p;
        }
        Some(v)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            let t = self.get(a, c);
            self.set(a, c, self.get(b, c));
            self.set(b, c, t);
        }
    }

    /// Reduces in place to row echelon form with unit pivots; returns the
    /// pivot column of each nonzero row.
    fn row_echelon(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            self.swap_rows(pr, row);
            let inv = pow_mod(self.get(row, col), p - 2, p);
            for c in col..self.cols {
                let v = self.get(row, c) * inv % p;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col) == 0 {
                    continue;
                }
                let factor = self.get(r, col);
                for c in col..self.cols {
                    let v = (self.get(r, c) + p - factor * self.get(row, c) % p) % p;
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }
}
