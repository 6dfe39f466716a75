//! Exact point counts over F_p.
//!
//! Projective space is enumerated in five affine strata (leading coordinate
//! 1, earlier coordinates 0), exactly the decomposition the reference
//! counting loop walks. Two optimizations keep the p⁴ sweep fast without
//! changing what is counted:
//!
//! * for each choice of the first four coordinates, the quintic collapses to
//!   a univariate polynomial of degree ≤ 5 in the last coordinate, whose
//!   values are tabulated by finite differences (additions only);
//! * the outermost free coordinate is split into contiguous chunks handed to
//!   worker threads; partial counts are combined by addition, so the result
//!   is identical for any thread count.
//!
//! Counting requires p < 2¹⁶ so that totals stay below 2⁶⁴ in plain 64-bit
//! accumulators.

use std::time::{Duration, Instant};

use crate::fp::PrimeContext;
use crate::varieties::elliptic_system_with_unit;
use crate::Error;

/// Primes admitted by the counting routines, exclusive bound.
pub const MAX_COUNT_PRIME: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variety {
    G,
    F,
    EUnion,
    E1,
    E2,
}

impl Variety {
    pub fn label(&self) -> &'static str {
        match self {
            Variety::G => "G",
            Variety::F => "F",
            Variety::EUnion => "E",
            Variety::E1 => "E1",
            Variety::E2 => "E2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    Computed,
    Cached,
}

/// One exact count with provenance.
#[derive(Debug, Clone)]
pub struct CountRecord {
    pub p: u64,
    pub variety: Variety,
    pub count: u64,
    pub elapsed: Duration,
    pub method: CountMethod,
}

/// Number of points of P⁴(F_p).
pub fn projective_space_size(p: u64) -> u64 {
    p.pow(4) + p.pow(3) + p.pow(2) + p + 1
}

/// A homogeneous form on five coordinates, stored as signed monomials.
#[derive(Debug, Clone)]
pub struct MonomialForm {
    terms: Vec<(bool, [u8; 5])>,
}

impl MonomialForm {
    pub fn new(terms: Vec<(bool, [u8; 5])>) -> Self {
        MonomialForm { terms }
    }

    /// The identically zero form (vanishes everywhere).
    pub fn zero() -> Self {
        MonomialForm { terms: Vec::new() }
    }

    /// The quintic F as a 20-monomial list.
    pub fn quintic_f() -> Self {
        Self::cyclic_quintic([true, false, true, false])
    }

    /// The quintic G as a 20-monomial list.
    pub fn quintic_g() -> Self {
        Self::cyclic_quintic([true, false, false, true])
    }

    /// Σ_i of the four monomial shapes x_i³x_{i+1}x_{i+4}, x_i³x_{i+2}x_{i+3},
    /// x_ix_{i+1}²x_{i+4}², x_ix_{i+2}²x_{i+3}² with the given signs.
    fn cyclic_quintic(signs: [bool; 4]) -> Self {
        let mut terms = Vec::with_capacity(20);
        for i in 0..5 {
            let mk = |parts: [(usize, u8); 3]| {
                let mut e = [0u8; 5];
                for (idx, pw) in parts {
                    e[idx % 5] += pw;
                }
                e
            };
            terms.push((signs[0], mk([(i, 3), (i + 1, 1), (i + 4, 1)])));
            terms.push((signs[1], mk([(i, 3), (i + 2, 1), (i + 3, 1)])));
            terms.push((signs[2], mk([(i, 1), (i + 1, 2), (i + 4, 2)])));
            terms.push((signs[3], mk([(i, 1), (i + 2, 2), (i + 3, 2)])));
        }
        MonomialForm { terms }
    }

    /// Renames variable i to variable i+s (mod 5) in every monomial.
    pub fn shift_variables(&self, s: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|&(sign, e)| {
                let mut ne = [0u8; 5];
                for i in 0..5 {
                    ne[(i + s) % 5] = e[i];
                }
                (sign, ne)
            })
            .collect();
        MonomialForm { terms }
    }

    /// Direct evaluation at a coordinate tuple.
    pub fn eval(&self, c: &[u64; 5], ctx: &PrimeContext) -> u64 {
        let p = ctx.p();
        let mut acc = 0u64;
        for &(plus, e) in &self.terms {
            let mut term = 1u64;
            for i in 0..5 {
                for _ in 0..e[i] {
                    term = term * c[i] % p;
                }
            }
            acc = if plus {
                (acc + term) % p
            } else {
                (acc + p - term) % p
            };
        }
        acc
    }

    fn max_last_degree(&self) -> usize {
        self.terms
            .iter()
            .map(|&(_, e)| e[4] as usize)
            .max()
            .unwrap_or(0)
    }

    /// Coefficients of the form as a polynomial in the last coordinate, the
    /// first four being fixed.
    fn last_coeffs(&self, prefix: &[u64; 4], p: u64) -> [u64; 6] {
        // Powers of each fixed coordinate up to the largest exponent used.
        let mut pows = [[1u64; 6]; 4];
        for i in 0..4 {
            for e in 1..6 {
                pows[i][e] = pows[i][e - 1] * prefix[i] % p;
            }
        }
        let mut coeffs = [0u64; 6];
        for &(plus, e) in &self.terms {
            let mut term = pows[0][e[0] as usize] * pows[1][e[1] as usize] % p;
            term = term * pows[2][e[2] as usize] % p;
            term = term * pows[3][e[3] as usize] % p;
            let slot = &mut coeffs[e[4] as usize];
            *slot = if plus {
                (*slot + term) % p
            } else {
                (*slot + p - term) % p
            };
        }
        coeffs
    }
}

/// Splits `0..n` into contiguous chunks, runs `f(lo, hi)` on scoped worker
/// threads, and adds the partial results. Addition is associative, so the
/// total does not depend on the number of workers.
pub fn parallel_sum<F>(threads: usize, n: u64, f: F) -> u64
where
    F: Fn(u64, u64) -> u64 + Sync,
{
    let threads = threads.max(1).min(n.max(1) as usize);
    if threads == 1 {
        return f(0, n);
    }
    let chunk = n.div_ceil(threads as u64);
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for t in 0..threads {
            let lo = chunk * t as u64;
            let hi = (lo + chunk).min(n);
            if lo >= hi {
                break;
            }
            let f = &f;
            handles.push(scope.spawn(move || f(lo, hi)));
        }
        handles.into_iter().map(|h| h.join().unwrap()).sum()
    })
}

#[inline]
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

/// Counts roots of the univariate polynomial with the given coefficients
/// (constant term first) as its variable runs over F_p, by tabulating the
/// values with a forward-difference table.
fn count_univariate_roots(coeffs: &[u64; 6], degree: usize, p: u64) -> u64 {
    let d = (0..=degree.min(5)).rev().find(|&k| coeffs[k] != 0);
    let Some(d) = d else {
        return p; // zero polynomial
    };
    if d == 0 {
        return 0;
    }
    // diffs[j] starts as the value at t = j, then becomes the j-th forward
    // difference at 0.
    let mut diffs = [0u64; 6];
    for (t, slot) in diffs.iter_mut().enumerate().take(d + 1) {
        let mut acc = 0u64;
        for k in (0..=d).rev() {
            acc = (acc * t as u64 + coeffs[k]) % p;
        }
        *slot = acc;
    }
    for j in 1..=d {
        for k in (j..=d).rev() {
            diffs[k] = add_mod(diffs[k], p - diffs[k - 1], p);
        }
    }
    let mut count = 0u64;
    for _ in 0..p {
        if diffs[0] == 0 {
            count += 1;
        }
        for j in 0..d {
            diffs[j] = add_mod(diffs[j], diffs[j + 1], p);
        }
    }
    count
}

fn ensure_countable(ctx: &PrimeContext) -> Result<(), Error> {
    if ctx.p() >= MAX_COUNT_PRIME {
        return Err(Error::CountBound(ctx.p()));
    }
    Ok(())
}

/// Counts the points of P⁴(F_p) where the form vanishes.
pub fn count_hypersurface(
    form: &MonomialForm,
    variety: Variety,
    ctx: &PrimeContext,
    threads: usize,
) -> Result<CountRecord, Error> {
    ensure_countable(ctx)?;
    let start = Instant::now();
    let p = ctx.p();
    let degree = form.max_last_degree();
    let mut total = 0u64;
    for s in 0..5usize {
        total += match s {
            4 => {
                let point = [0, 0, 0, 0, 1u64];
                u64::from(form.eval(&point, ctx) == 0)
            }
            3 => {
                let prefix = [0u64, 0, 0, 1];
                count_univariate_roots(&form.last_coeffs(&prefix, p), degree, p)
            }
            _ => parallel_sum(threads, p, |lo, hi| {
                let mut acc = 0u64;
                let mut prefix = [0u64; 4];
                prefix[s] = 1;
                for first in lo..hi {
                    prefix[s + 1] = first;
                    match s {
                        0 => {
                            for b in 0..p {
                                prefix[2] = b;
                                for c in 0..p {
                                    prefix[3] = c;
                                    acc += count_univariate_roots(
                                        &form.last_coeffs(&prefix, p),
                                        degree,
                                        p,
                                    );
                                }
                            }
                        }
                        1 => {
                            for c in 0..p {
                                prefix[3] = c;
                                acc += count_univariate_roots(
                                    &form.last_coeffs(&prefix, p),
                                    degree,
                                    p,
                                );
                            }
                        }
                        _ => {
                            acc += count_univariate_roots(&form.last_coeffs(&prefix, p), degree, p);
                        }
                    }
                }
                acc
            }),
        };
    }
    debug_assert!(total <= projective_space_size(p));
    Ok(CountRecord {
        p,
        variety,
        count: total,
        elapsed: start.elapsed(),
        method: CountMethod::Computed,
    })
}

/// Inverse table 1..p via the standard linear-time recurrence.
fn inverse_table(p: u64) -> Vec<u64> {
    let mut inv = vec![0u64; p as usize];
    if p > 1 {
        inv[1] = 1;
        for i in 2..p as usize {
            inv[i] = (p - (p / i as u64) * inv[(p % i as u64) as usize] % p) % p;
        }
    }
    inv
}

/// Counts projective points where all five branch quadrics vanish. The
/// first quadric is linear in the last coordinate, which pins it down (or
/// rules the prefix out) before the remaining four are checked.
fn count_branch_points(ctx: &PrimeContext, unit: u64, threads: usize) -> u64 {
    let p = ctx.p();
    let inv = inverse_table(p);
    let check = |c: &[u64; 5]| -> u64 {
        u64::from(
            elliptic_system_with_unit(c, unit, ctx)
                .iter()
                .all(|&v| v == 0),
        )
    };
    let count_prefix = |c0: u64, c1: u64, c2: u64, c3: u64| -> u64 {
        // unit·c0² + c1·z + c2·c3 = 0 in the unknown last coordinate z.
        let b = (unit * c0 % p * c0 + c2 * c3) % p;
        if c1 != 0 {
            let z = (p - b) % p * inv[c1 as usize] % p;
            check(&[c0, c1, c2, c3, z])
        } else if b != 0 {
            0
        } else {
            (0..p).map(|z| check(&[c0, c1, c2, c3, z])).sum()
        }
    };
    let mut total = 0u64;
    // Stratum with z0 = 1 dominates; chunk it over z1.
    total += parallel_sum(threads, p, |lo, hi| {
        let mut acc = 0u64;
        for c1 in lo..hi {
            for c2 in 0..p {
                for c3 in 0..p {
                    acc += count_prefix(1, c1, c2, c3);
                }
            }
        }
        acc
    });
    for c2 in 0..p {
        for c3 in 0..p {
            total += count_prefix(0, 1, c2, c3);
        }
    }
    for c3 in 0..p {
        total += count_prefix(0, 0, 1, c3);
    }
    total += count_prefix(0, 0, 0, 1);
    total += check(&[0, 0, 0, 0, 1]);
    total
}

/// Exact count for one branch. Only defined when i ∈ F_p, i.e. p ≡ 1 (mod 4).
pub fn count_e_single(
    ctx: &PrimeContext,
    branch: crate::varieties::EllipticBranch,
    threads: usize,
) -> Result<CountRecord, Error> {
    ensure_countable(ctx)?;
    let i = ctx.i_root().ok_or(Error::NoSqrtMinusOne(ctx.p()))?;
    let start = Instant::now();
    let unit = match branch {
        crate::varieties::EllipticBranch::One => i,
        crate::varieties::EllipticBranch::Two => ctx.neg(i),
    };
    let count = count_branch_points(ctx, unit, threads);
    Ok(CountRecord {
        p: ctx.p(),
        variety: match branch {
            crate::varieties::EllipticBranch::One => Variety::E1,
            crate::varieties::EllipticBranch::Two => Variety::E2,
        },
        count,
        elapsed: start.elapsed(),
        method: CountMethod::Computed,
    })
}

/// Count of E₁(F_p) ∪ E₂(F_p). For p ≡ 3 (mod 4) this is zero without any
/// enumeration: an F_p point on either branch would force i into F_p (some
/// coordinate is nonzero, so the branch quadric solves for i).
pub fn count_e_union(ctx: &PrimeContext, threads: usize) -> Result<CountRecord, Error> {
    ensure_countable(ctx)?;
    let start = Instant::now();
    let count = match ctx.i_root() {
        None => 0,
        Some(i) => {
            count_branch_points(ctx, i, threads) + count_branch_points(ctx, ctx.neg(i), threads)
        }
    };
    Ok(CountRecord {
        p: ctx.p(),
        variety: Variety::EUnion,
        count,
        elapsed: start.elapsed(),
        method: CountMethod::Computed,
    })
}
