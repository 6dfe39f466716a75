//! The modularity verdict machinery: Frobenius images in the Galois group of
//! the compositum Q(i, √2, √5), coverage of its seven non-identity classes
//! by a test set of primes, the trace split between the elliptic-surface
//! piece W and the two-dimensional piece V, and the final comparison of V
//! against the cusp-form coefficients.

use crate::fp::{is_prime, legendre, PrimeContext};
use crate::Error;

/// The Faltings-Serre-Livné test set.
pub const LIVNE_T: [u64; 7] = [67, 71, 101, 103, 113, 131, 157];

/// Image of Frob_p in Gal(Q(i,√2,√5)/Q) ≅ (Z/2)³, recorded as the triple of
/// Legendre symbols ((-1/p), (2/p), (5/p)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FrobImage {
    pub chi_minus1: i8,
    pub chi_2: i8,
    pub chi_5: i8,
}

impl FrobImage {
    pub fn is_identity(&self) -> bool {
        self.chi_minus1 == 1 && self.chi_2 == 1 && self.chi_5 == 1
    }
}

/// Lookup keyed by p mod 40; agrees with the direct Legendre computation.
const MOD_40_TABLE: [(u64, u64, (i8, i8, i8)); 8] = [
    (3, 27, (-1, -1, -1)),
    (7, 23, (-1, 1, -1)),
    (11, 19, (-1, -1, 1)),
    (13, 37, (1, -1, -1)),
    (17, 33, (1, 1, -1)),
    (21, 29, (1, -1, 1)),
    (31, 39, (-1, 1, 1)),
    (1, 9, (1, 1, 1)),
];

/// The table row for a residue class coprime to 40.
pub fn image_from_residue(p_mod_40: u64) -> Option<FrobImage> {
    MOD_40_TABLE
        .iter()
        .find(|&&(a, b, _)| p_mod_40 == a || p_mod_40 == b)
        .map(|&(_, _, (m1, t, f))| FrobImage {
            chi_minus1: m1,
            chi_2: t,
            chi_5: f,
        })
}

/// Frobenius image of a prime p coprime to 40, computed from the symbols.
pub fn frobenius_image(p: u64) -> Result<FrobImage, Error> {
    if p.is_multiple_of(2) || p.is_multiple_of(5) {
        return Err(Error::NotCoprimeTo40(p));
    }
    if !is_prime(p) {
        return Err(Error::BadPrime(p));
    }
    Ok(FrobImage {
        chi_minus1: legendre(-1, p) as i8,
        chi_2: legendre(2, p) as i8,
        chi_5: legendre(5, p) as i8,
    })
}

/// Coverage breakdown of a candidate test set.
#[derive(Debug, Clone)]
pub struct CoverageDetail {
    /// Distinct non-identity classes hit, out of 7.
    pub covered: usize,
    /// Members whose Frobenius lands on the identity (allowed but useless).
    pub identity_members: Vec<u64>,
    pub images: Vec<(u64, FrobImage)>,
}

pub fn coverage_detail(primes: &[u64]) -> Result<CoverageDetail, Error> {
    let mut images = Vec::with_capacity(primes.len());
    let mut identity_members = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for &p in primes {
        let img = frobenius_image(p)?;
        if img.is_identity() {
            identity_members.push(p);
        } else {
            seen.insert(img);
        }
        images.push((p, img));
    }
    Ok(CoverageDetail {
        covered: seen.len(),
        identity_members,
        images,
    })
}

/// True iff the images of the set hit all 7 non-identity classes of (Z/2)³.
pub fn verify_t_coverage(primes: &[u64]) -> Result<bool, Error> {
    Ok(coverage_detail(primes)?.covered == 7)
}

/// Trace of Frobenius on the induced four-dimensional piece W:
/// p·(2p + 2 - #E(F_p)) when i ∈ F_p, and zero when p ≡ 3 (mod 4), where
/// Frobenius swaps the two elliptic factors.
pub fn trace_w(ctx: &PrimeContext, count_e: u64) -> i64 {
    if ctx.p_mod_4() == 1 {
        let p = ctx.p() as i64;
        p * (2 * p + 2 - count_e as i64)
    } else {
        debug_assert_eq!(count_e, 0);
        0
    }
}

/// Evenness of #X̃(F_p), equivalently of the H³ trace.
pub fn parity_check(_p: u64, n: u64) -> bool {
    n.is_multiple_of(2)
}

/// One prime's worth of the trace comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModularityRow {
    pub p: u64,
    pub trace_h3: i64,
    pub trace_w: i64,
    pub trace_v: i64,
    pub a_p: i64,
    pub matched: bool,
}

/// Assembles the V/W split given the resolved trace and the elliptic count.
pub fn modularity_row(ctx: &PrimeContext, trace_h3: i64, count_e: u64, a_p: i64) -> ModularityRow {
    let w = trace_w(ctx, count_e);
    let v = trace_h3 - w;
    ModularityRow {
        p: ctx.p(),
        trace_h3,
        trace_w: w,
        trace_v: v,
        a_p,
        matched: v == a_p,
    }
}
