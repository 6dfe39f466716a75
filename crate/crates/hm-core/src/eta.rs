//! The level-5 weight-4 cusp form f = (η(q)η(q⁵))⁴ as an exact integer
//! q-expansion: f = q·∏_{k≥1}(1-q^k)⁴(1-q^{5k})⁴.
//!
//! ∏(1-q^k) is taken as the pentagonal-number series (sparse, coefficients
//! ±1) and applied four times; every intermediate is then a truncation of a
//! small eta power, whose coefficients stay far inside 64 bits. The q ↦ q⁵
//! factor is the same series dilated, so one final convolution finishes the
//! product. Applying the quartic factors (1-q^k)⁴ one k at a time instead
//! looks equivalent but overflows: the tails of those partial products grow
//! like restricted partition counts until the remaining factors cancel
//! them. All arithmetic is checked and an overflow surfaces as an error.

use crate::Error;

/// Hard cap on the expansion length.
pub const MAX_SERIES_LEN: usize = 100_000;

/// Integer coefficients a_1..a_{n_max} of the q-expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesCoeffs {
    a: Vec<i64>,
}

impl SeriesCoeffs {
    pub fn n_max(&self) -> usize {
        self.a.len() - 1
    }

    /// a_n, 1-indexed.
    pub fn coeff(&self, n: usize) -> i64 {
        self.a[n]
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.a[1..]
    }
}

/// The generalized pentagonal terms of ∏(1-q^k) up to degree `deg`,
/// excluding the constant 1: pairs (degree, ±1).
fn pentagonal_terms(deg: usize) -> Vec<(usize, i64)> {
    let mut terms = Vec::new();
    let mut j = 1usize;
    loop {
        let g1 = j * (3 * j - 1) / 2;
        if g1 > deg {
            break;
        }
        let sign = if j % 2 == 1 { -1 } else { 1 };
        terms.push((g1, sign));
        let g2 = j * (3 * j + 1) / 2;
        if g2 <= deg {
            terms.push((g2, sign));
        }
        j += 1;
    }
    terms.sort_unstable();
    terms
}

/// Multiplies the series in place by ∏(1-q^k), truncated.
fn apply_euler_product(prod: &mut [i64], terms: &[(usize, i64)]) -> Result<(), Error> {
    let deg = prod.len() - 1;
    for i in (1..=deg).rev() {
        let mut acc = prod[i];
        for &(g, c) in terms {
            if g > i {
                break;
            }
            let term = c.checked_mul(prod[i - g]).ok_or(Error::SeriesOverflow)?;
            acc = acc.checked_add(term).ok_or(Error::SeriesOverflow)?;
        }
        prod[i] = acc;
    }
    Ok(())
}

/// ∏(1-q^k)⁴ truncated at `deg`.
fn eta_fourth(deg: usize) -> Result<Vec<i64>, Error> {
    let terms = pentagonal_terms(deg);
    let mut prod = vec![0i64; deg + 1];
    prod[0] = 1;
    for _ in 0..4 {
        apply_euler_product(&mut prod, &terms)?;
    }
    Ok(prod)
}

/// Expands f to n_max coefficients.
pub fn expand_f(n_max: usize) -> Result<SeriesCoeffs, Error> {
    if !(1..=MAX_SERIES_LEN).contains(&n_max) {
        return Err(Error::SeriesLength(n_max));
    }
    // Product part lives in degrees 0..n_max-1; the final q shift turns
    // degree n-1 into a_n.
    let deg = n_max - 1;
    let quartic = eta_fourth(deg)?;
    // ∏(1-q^{5k})⁴ is the same series in q⁵; convolve over its support.
    let mut prod = vec![0i64; deg + 1];
    for (j, &b) in quartic.iter().enumerate().take(deg / 5 + 1) {
        if b == 0 {
            continue;
        }
        for (i, &a) in quartic.iter().take(deg + 1 - 5 * j).enumerate() {
            let term = a.checked_mul(b).ok_or(Error::SeriesOverflow)?;
            let slot = &mut prod[i + 5 * j];
            *slot = slot.checked_add(term).ok_or(Error::SeriesOverflow)?;
        }
    }
    let mut a = vec![0i64; n_max + 1];
    a[1..=n_max].copy_from_slice(&prod[..n_max]);
    Ok(SeriesCoeffs { a })
}

/// Sieve of the primes up to and including `n`.
pub(crate) fn primes_up_to(n: usize) -> Vec<usize> {
    if n < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2;
    while p * p <= n {
        if sieve[p] {
            let mut q = p * p;
            while q <= n {
                sieve[q] = false;
                q += p;
            }
        }
        p += 1;
    }
    (2..=n).filter(|&i| sieve[i]).collect()
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Outcome of the eigenform property checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeReport {
    pub violations: Vec<String>,
    pub coprime_pairs_checked: usize,
    pub prime_squares_checked: usize,
}

/// Verifies multiplicativity a_{mn} = a_m·a_n for coprime m, n with
/// mn ≤ n_max, and the prime-square recursion a_{p²} = a_p² - p³ (for the
/// level-dividing prime 5 the recursion degenerates to a_{25} = a_5²).
pub fn hecke_checks(s: &SeriesCoeffs) -> HeckeReport {
    assert!(s.n_max() >= 25, "need at least 25 coefficients");
    let n_max = s.n_max();
    let mut violations = Vec::new();
    let mut pairs = 0usize;
    for m in 2..=n_max {
        for n in m + 1..=n_max / m {
            if gcd(m, n) != 1 {
                continue;
            }
            pairs += 1;
            let expected = s.coeff(m) as i128 * s.coeff(n) as i128;
            if s.coeff(m * n) as i128 != expected {
                violations.push(format!(
                    "a_{} = {} but a_{}·a_{} = {}",
                    m * n,
                    s.coeff(m * n),
                    m,
                    n,
                    expected
                ));
            }
        }
    }
    let mut squares = 0usize;
    for p in primes_up_to((n_max as f64).sqrt() as usize + 1) {
        if p * p > n_max {
            break;
        }
        squares += 1;
        let ap = s.coeff(p) as i128;
        let expected = if p == 5 {
            ap * ap
        } else {
            ap * ap - (p as i128).pow(3)
        };
        if s.coeff(p * p) as i128 != expected {
            violations.push(format!(
                "a_{} = {} but the prime-square rule gives {}",
                p * p,
                s.coeff(p * p),
                expected
            ));
        }
    }
    HeckeReport {
        violations,
        coprime_pairs_checked: pairs,
        prime_squares_checked: squares,
    }
}

/// Parity scan of the prime coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityReport {
    /// Primes p ≠ 2, 5 with a_p odd (expected empty).
    pub odd_primes: Vec<usize>,
    pub primes_checked: usize,
}

/// Checks a_p even for every prime p ≠ 2, 5 up to n_max.
pub fn ap_parity(s: &SeriesCoeffs) -> ParityReport {
    let mut odd = Vec::new();
    let mut checked = 0usize;
    for p in primes_up_to(s.n_max()) {
        if p == 2 || p == 5 {
            continue;
        }
        checked += 1;
        if s.coeff(p) % 2 != 0 {
            odd.push(p);
        }
    }
    ParityReport {
        odd_primes: odd,
        primes_checked: checked,
    }
}
