//! Evaluators for the defining equations of the Horrocks-Mumford pencil:
//! the invariant quintics F and G, the bilinear matrices M(x) and L(z) whose
//! common vanishing cuts out the complete intersection X ⊂ P⁴ × P⁴, the
//! elliptic curves E₁/E₂ inside G, and the one-parameter family of
//! Heisenberg-invariant elliptic normal curves.
//!
//! No symbolic algebra happens anywhere: every identity (determinant
//! proportionality, duality of the two matrix equations) is checked
//! numerically at sampled or exhaustive points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fp::{FpMatrix, PrimeContext};
use crate::Error;

/// A point of P⁴(F_p) in canonical form: the first nonzero coordinate is 1,
/// so equality of points is equality of coordinate arrays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint5 {
    coords: [u64; 5],
}

impl ProjPoint5 {
    /// Canonicalizes `coords`; rejects the zero tuple.
    pub fn new(coords: [u64; 5], ctx: &PrimeContext) -> Result<Self, Error> {
        let p = ctx.p();
        let mut c = coords.map(|v| v % p);
        let Some(lead) = c.iter().position(|&v| v != 0) else {
            return Err(Error::ZeroPoint);
        };
        let inv = ctx.inv(c[lead]);
        for v in &mut c {
            *v = *v * inv % p;
        }
        Ok(ProjPoint5 { coords: c })
    }

    /// Builds from signed integers (handy for orbit formulas with minus signs).
    pub fn from_signed(coords: [i64; 5], ctx: &PrimeContext) -> Result<Self, Error> {
        Self::new(coords.map(|v| ctx.reduce_signed(v)), ctx)
    }

    pub fn coords(&self) -> [u64; 5] {
        self.coords
    }

    /// The standard basis point e_k.
    pub fn basis(k: usize, ctx: &PrimeContext) -> Self {
        let mut c = [0u64; 5];
        c[k] = 1;
        ProjPoint5::new(c, ctx).expect("basis point is nonzero")
    }

    /// Cyclic coordinate shift: entry i of the image is entry i+s of the source.
    pub fn shift(&self, s: usize, ctx: &PrimeContext) -> Self {
        let c = core::array::from_fn(|i| self.coords[(i + s) % 5]);
        ProjPoint5::new(c, ctx).expect("shift preserves nonzeroness")
    }

    /// All points of P⁴(F_p), one canonical representative each, enumerated
    /// stratum by stratum (leading coordinate 1, earlier coordinates 0).
    /// Exhaustive, so only sensible for small p; p⁴ must fit in 64 bits.
    pub fn all(ctx: &PrimeContext) -> impl Iterator<Item = ProjPoint5> + '_ {
        let p = ctx.p();
        assert!(p < (1 << 16), "exhaustive enumeration needs p < 2^16");
        (0..5u32).flat_map(move |s| {
            let free = 4 - s as usize;
            let total = p.pow(free as u32);
            (0..total).map(move |mut n| {
                let mut c = [0u64; 5];
                c[s as usize] = 1;
                for slot in (s as usize + 1..5).rev() {
                    c[slot] = n % p;
                    n /= p;
                }
                ProjPoint5 { coords: c }
            })
        })
    }
}

/// A projective parameter (λ:μ) for the elliptic-normal-curve family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveParam {
    lambda: u64,
    mu: u64,
}

impl CurveParam {
    pub fn new(lambda: u64, mu: u64, ctx: &PrimeContext) -> Result<Self, Error> {
        let p = ctx.p();
        let (l, m) = (lambda % p, mu % p);
        if l == 0 && m == 0 {
            return Err(Error::ZeroPoint);
        }
        // Same canonical form as ProjPoint5: first nonzero coordinate 1.
        let inv = ctx.inv(if l != 0 { l } else { m });
        Ok(CurveParam {
            lambda: l * inv % p,
            mu: m * inv % p,
        })
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    pub fn mu(&self) -> u64 {
        self.mu
    }
}

/// Quintic F: Σ_i (x_i³x_{i+1}x_{i+4} - x_i³x_{i+2}x_{i+3}
///                 + x_ix_{i+1}²x_{i+4}² - x_ix_{i+2}²x_{i+3}²).
///
/// This is det M(x)/2 expanded; the identity is recalibrated per prime by
/// [`calibrate_quintic_determinants`].
pub fn quintic_f(x: &ProjPoint5, ctx: &PrimeContext) -> u64 {
    let c = x.coords();
    let mut acc = 0u64;
    for i in 0..5 {
        let (a, b1, b4, b2, b3) = (
            c[i],
            c[(i + 1) % 5],
            c[(i + 4) % 5],
            c[(i + 2) % 5],
            c[(i + 3) % 5],
        );
        let cube = ctx.mul(ctx.mul(a, a), a);
        acc = ctx.add(acc, ctx.mul(cube, ctx.mul(b1, b4)));
        acc = ctx.sub(acc, ctx.mul(cube, ctx.mul(b2, b3)));
        acc = ctx.add(acc, ctx.mul(a, ctx.mul(ctx.mul(b1, b1), ctx.mul(b4, b4))));
        acc = ctx.sub(acc, ctx.mul(a, ctx.mul(ctx.mul(b2, b2), ctx.mul(b3, b3))));
    }
    acc
}

/// Quintic G: Σ_i (z_i³z_{i+1}z_{i+4} - z_i³z_{i+2}z_{i+3}
///                 - z_iz_{i+1}²z_{i+4}² + z_iz_{i+2}²z_{i+3}²).
pub fn quintic_g(z: &ProjPoint5, ctx: &PrimeContext) -> u64 {
    let c = z.coords();
    let mut acc = 0u64;
    for i in 0..5 {
        let (a, b1, b4, b2, b3) = (
            c[i],
            c[(i + 1) % 5],
            c[(i + 4) % 5],
            c[(i + 2) % 5],
            c[(i + 3) % 5],
        );
        let cube = ctx.mul(ctx.mul(a, a), a);
        acc = ctx.add(acc, ctx.mul(cube, ctx.mul(b1, b4)));
        acc = ctx.sub(acc, ctx.mul(cube, ctx.mul(b2, b3)));
        acc = ctx.sub(acc, ctx.mul(a, ctx.mul(ctx.mul(b1, b1), ctx.mul(b4, b4))));
        acc = ctx.add(acc, ctx.mul(a, ctx.mul(ctx.mul(b2, b2), ctx.mul(b3, b3))));
    }
    acc
}

/// Entry table for M(x): (row, col, sign, coordinate index).
const M_ENTRIES: [(usize, usize, bool, usize); 20] = [
    (0, 1, false, 3),
    (0, 2, true, 1),
    (0, 3, true, 4),
    (0, 4, false, 2),
    (1, 0, false, 3),
    (1, 2, false, 4),
    (1, 3, true, 2),
    (1, 4, true, 0),
    (2, 0, true, 1),
    (2, 1, false, 4),
    (2, 3, false, 0),
    (2, 4, true, 3),
    (3, 0, true, 4),
    (3, 1, true, 2),
    (3, 2, false, 0),
    (3, 4, false, 1),
    (4, 0, false, 2),
    (4, 1, true, 0),
    (4, 2, true, 3),
    (4, 3, false, 1),
];

/// Entry table for L(z): (row, col, sign, coordinate index).
const L_ENTRIES: [(usize, usize, bool, usize); 20] = [
    (0, 1, true, 2),
    (0, 2, false, 4),
    (0, 3, false, 1),
    (0, 4, true, 3),
    (1, 0, true, 4),
    (1, 2, true, 3),
    (1, 3, false, 0),
    (1, 4, false, 2),
    (2, 0, false, 3),
    (2, 1, true, 0),
    (2, 3, true, 4),
    (2, 4, false, 1),
    (3, 0, false, 2),
    (3, 1, false, 4),
    (3, 2, true, 1),
    (3, 4, true, 0),
    (4, 0, true, 1),
    (4, 1, false, 3),
    (4, 2, false, 0),
    (4, 3, true, 2),
];

fn matrix_from_table(
    table: &[(usize, usize, bool, usize); 20],
    c: &[u64; 5],
    ctx: &PrimeContext,
) -> FpMatrix {
    let mut m = FpMatrix::new(5, 5, ctx.p());
    for &(r, col, plus, idx) in table {
        let v = if plus { c[idx] } else { ctx.neg(c[idx]) };
        m.set(r, col, v);
    }
    m
}

/// The 5×5 matrix M(x) whose kernel condition M(x)z = 0 defines X.
pub fn matrix_m(x: &ProjPoint5, ctx: &PrimeContext) -> FpMatrix {
    matrix_from_table(&M_ENTRIES, &x.coords(), ctx)
}

/// The 5×5 matrix L(z) of the equivalent condition L(z)x = 0.
pub fn matrix_l(z: &ProjPoint5, ctx: &PrimeContext) -> FpMatrix {
    matrix_from_table(&L_ENTRIES, &z.coords(), ctx)
}

/// Membership in X: all five bilinear forms of M(x)z vanish.
pub fn on_x(x: &ProjPoint5, z: &ProjPoint5, ctx: &PrimeContext) -> bool {
    matrix_m(x, ctx)
        .mul_vec(&z.coords())
        .iter()
        .all(|&v| v == 0)
}

/// Which of the two conjugate elliptic curves inside G.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EllipticBranch {
    One,
    Two,
}

/// The five quadrics cutting out E₁ (branch one, using +i) or E₂ (branch
/// two, using -i): ±i·z_i² + z_{i+1}z_{i+4} + z_{i+2}z_{i+3}.
///
/// Only the unordered pair of branches is meaningful; conjugation swaps them.
pub fn elliptic_system(
    z: &ProjPoint5,
    branch: EllipticBranch,
    ctx: &PrimeContext,
) -> Result<[u64; 5], Error> {
    let i = ctx.i_root().ok_or(Error::NoSqrtMinusOne(ctx.p()))?;
    let unit = match branch {
        EllipticBranch::One => i,
        EllipticBranch::Two => ctx.neg(i),
    };
    Ok(elliptic_system_with_unit(&z.coords(), unit, ctx))
}

#[inline]
pub(crate) fn elliptic_system_with_unit(c: &[u64; 5], unit: u64, ctx: &PrimeContext) -> [u64; 5] {
    let mut out = [0u64; 5];
    for i in 0..5 {
        let sq = ctx.mul(c[i], c[i]);
        let t = ctx.add(
            ctx.mul(c[(i + 1) % 5], c[(i + 4) % 5]),
            ctx.mul(c[(i + 2) % 5], c[(i + 3) % 5]),
        );
        out[i] = ctx.add(ctx.mul(unit, sq), t);
    }
    out
}

/// The quadrics q_i = -λμ·z_i² - μ²·z_{i+1}z_{i+4} + λ²·z_{i+2}z_{i+3}
/// defining the elliptic normal curve with parameter (λ:μ).
pub fn family_system(z: &ProjPoint5, par: &CurveParam, ctx: &PrimeContext) -> [u64; 5] {
    let c = z.coords();
    let (l, m) = (par.lambda(), par.mu());
    let lm = ctx.neg(ctx.mul(l, m));
    let m2 = ctx.neg(ctx.mul(m, m));
    let l2 = ctx.mul(l, l);
    let mut out = [0u64; 5];
    for i in 0..5 {
        let sq = ctx.mul(c[i], c[i]);
        out[i] = ctx.add(
            ctx.add(
                ctx.mul(lm, sq),
                ctx.mul(m2, ctx.mul(c[(i + 1) % 5], c[(i + 4) % 5])),
            ),
            ctx.mul(l2, ctx.mul(c[(i + 2) % 5], c[(i + 3) % 5])),
        );
    }
    out
}

/// The constants relating the matrix determinants to the quintics:
/// det M(x) = f_const · F(x) and det L(z) = g_const · G(z).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetCalibration {
    pub f_const: u64,
    pub g_const: u64,
}

/// Calibrates the two proportionality constants at one sample with a nonzero
/// quintic value, then asserts consistency on `samples` further random
/// points. Any disagreement aborts with [`Error::Calibration`]; it would
/// mean the entry tables no longer match the quintics.
pub fn calibrate_quintic_determinants(
    ctx: &PrimeContext,
    samples: usize,
) -> Result<DetCalibration, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x484d_5e32 ^ ctx.p());
    let random_point = |rng: &mut ChaCha8Rng| loop {
        let c: [u64; 5] = core::array::from_fn(|_| rng.gen_range(0..ctx.p()));
        if let Ok(pt) = ProjPoint5::new(c, ctx) {
            return pt;
        }
    };
    let mut f_const = None;
    let mut g_const = None;
    let mut checked = 0usize;
    while checked < samples.max(1) {
        let pt = random_point(&mut rng);
        let f = quintic_f(&pt, ctx);
        let g = quintic_g(&pt, ctx);
        let det_m = matrix_m(&pt, ctx).det();
        let det_l = matrix_l(&pt, ctx).det();
        if f != 0 {
            let c = ctx.mul(det_m, ctx.inv(f));
            match f_const {
                None => f_const = Some(c),
                Some(prev) if prev != c => return Err(Error::Calibration(ctx.p())),
                _ => {}
            }
        } else if det_m != 0 {
            return Err(Error::Calibration(ctx.p()));
        }
        if g != 0 {
            let c = ctx.mul(det_l, ctx.inv(g));
            match g_const {
                None => g_const = Some(c),
                Some(prev) if prev != c => return Err(Error::Calibration(ctx.p())),
                _ => {}
            }
        } else if det_l != 0 {
            return Err(Error::Calibration(ctx.p()));
        }
        if f != 0 || g != 0 {
            checked += 1;
        }
    }
    match (f_const, g_const) {
        (Some(f), Some(g)) => Ok(DetCalibration {
            f_const: f,
            g_const: g,
        }),
        _ => Err(Error::Calibration(ctx.p())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64) -> PrimeContext {
        PrimeContext::new(p).unwrap()
    }

    /// The twenty monomials of F written out term by term, independently of
    /// the summation loop in `quintic_f`: (sign, exponent vector).
    const F_MONOMIALS: [(bool, [u8; 5]); 20] = [
        (true, [3, 1, 0, 0, 1]),
        (true, [1, 3, 1, 0, 0]),
        (true, [0, 1, 3, 1, 0]),
        (true, [0, 0, 1, 3, 1]),
        (true, [1, 0, 0, 1, 3]),
        (false, [3, 0, 1, 1, 0]),
        (false, [0, 3, 0, 1, 1]),
        (false, [1, 0, 3, 0, 1]),
        (false, [1, 1, 0, 3, 0]),
        (false, [0, 1, 1, 0, 3]),
        (true, [1, 2, 0, 0, 2]),
        (true, [2, 1, 2, 0, 0]),
        (true, [0, 2, 1, 2, 0]),
        (true, [0, 0, 2, 1, 2]),
        (true, [2, 0, 0, 2, 1]),
        (false, [1, 0, 2, 2, 0]),
        (false, [0, 1, 0, 2, 2]),
        (false, [2, 0, 1, 0, 2]),
        (false, [2, 2, 0, 1, 0]),
        (false, [0, 2, 2, 0, 1]),
    ];

    fn eval_monomials(mono: &[(bool, [u8; 5])], c: &[u64; 5], ctx: &PrimeContext) -> u64 {
        let mut acc = 0u64;
        for &(plus, exps) in mono {
            let mut term = 1u64;
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    term = ctx.mul(term, c[i]);
                }
            }
            acc = if plus {
                ctx.add(acc, term)
            } else {
                ctx.sub(acc, term)
            };
        }
        acc
    }

    /// Literal transcription of the quintic in the reference counting
    /// program for G, kept verbatim as an oracle.
    fn reference_g(z: &[u64; 5], p: u64) -> u64 {
        let m = |a: u64, b: u64| a * b % p;
        let [z0, z1, z2, z3, z4] = *z;
        let mut pos = 0u64;
        for (a, b, c) in [
            (m(m(z0, z0), z0), z1, z4),
            (m(m(z1, z1), z1), z2, z0),
            (m(m(z2, z2), z2), z3, z1),
            (m(m(z3, z3), z3), z4, z2),
            (m(m(z4, z4), z4), z0, z3),
            (z0, m(z2, z2), m(z3, z3)),
            (z1, m(z3, z3), m(z4, z4)),
            (z2, m(z4, z4), m(z0, z0)),
            (z3, m(z0, z0), m(z1, z1)),
            (z4, m(z1, z1), m(z2, z2)),
        ] {
            pos = (pos + m(m(a, b), c)) % p;
        }
        let mut neg = 0u64;
        for (a, b, c) in [
            (z0, m(z1, z1), m(z4, z4)),
            (z1, m(z2, z2), m(z0, z0)),
            (z2, m(z3, z3), m(z1, z1)),
            (z3, m(z4, z4), m(z2, z2)),
            (z4, m(z0, z0), m(z3, z3)),
            (m(m(z0, z0), z0), z2, z3),
            (m(m(z1, z1), z1), z3, z4),
            (m(m(z2, z2), z2), z4, z0),
            (m(m(z3, z3), z3), z0, z1),
            (m(m(z4, z4), z4), z1, z2),
        ] {
            neg = (neg + m(m(a, b), c)) % p;
        }
        (pos + p - neg) % p
    }

    #[test]
    fn quintics_vanish_on_obvious_points() {
        let ctx = ctx(101);
        let e0 = ProjPoint5::basis(0, &ctx);
        let ones = ProjPoint5::new([1; 5], &ctx).unwrap();
        assert_eq!(quintic_f(&e0, &ctx), 0);
        assert_eq!(quintic_f(&ones, &ctx), 0);
        assert_eq!(quintic_g(&e0, &ctx), 0);
        assert_eq!(quintic_g(&ones, &ctx), 0);
    }

    #[test]
    fn quintic_f_matches_monomial_list() {
        use rand::{Rng, SeedableRng};
        let ctx = ctx(101);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let c: [u64; 5] = core::array::from_fn(|_| rng.gen_range(0..101));
            if c.iter().all(|&v| v == 0) {
                continue;
            }
            let pt = ProjPoint5 { coords: c };
            assert_eq!(quintic_f(&pt, &ctx), eval_monomials(&F_MONOMIALS, &c, &ctx));
        }
    }

    #[test]
    fn quintic_g_matches_reference_program() {
        use rand::{Rng, SeedableRng};
        let ctx = ctx(59);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..500 {
            let c: [u64; 5] = core::array::from_fn(|_| rng.gen_range(0..59));
            if c.iter().all(|&v| v == 0) {
                continue;
            }
            let pt = ProjPoint5 { coords: c };
            assert_eq!(quintic_g(&pt, &ctx), reference_g(&c, 59));
        }
    }

    #[test]
    fn matrix_m_layout_at_basis_point() {
        let ctx = ctx(101);
        let m = matrix_m(&ProjPoint5::basis(0, &ctx), &ctx);
        let neg1 = 100;
        let expected = FpMatrix::from_rows(
            101,
            &[
                &[0, 0, 0, 0, 0],
                &[0, 0, 0, 0, 1],
                &[0, 0, 0, neg1, 0],
                &[0, 0, neg1, 0, 0],
                &[0, 1, 0, 0, 0],
            ],
        );
        assert_eq!(m, expected);
    }

    /// M and L follow one circulant rule per diagonal; regenerate them from
    /// it and compare with the entry tables.
    #[test]
    fn matrix_tables_match_circulant_rule() {
        let ctx = ctx(103);
        let pt = ProjPoint5::new([2, 3, 5, 7, 11], &ctx).unwrap();
        let c = pt.coords();
        let m = matrix_m(&pt, &ctx);
        let l = matrix_l(&pt, &ctx);
        for i in 0..5 {
            for d in 0..5 {
                let j = (i + d) % 5;
                let (em, el) = match d {
                    0 => (0, 0),
                    1 => (ctx.neg(c[(i + 3) % 5]), c[(i + 2) % 5]),
                    2 => (c[(i + 1) % 5], ctx.neg(c[(i + 4) % 5])),
                    3 => (c[(i + 4) % 5], ctx.neg(c[(i + 1) % 5])),
                    _ => (ctx.neg(c[(i + 2) % 5]), c[(i + 3) % 5]),
                };
                assert_eq!(m.get(i, j), em, "M[{i}][{j}]");
                assert_eq!(l.get(i, j), el, "L[{i}][{j}]");
            }
        }
    }

    /// The five components of M(x)z, written out longhand.
    pub(crate) fn bilinear_forms(x: &[u64; 5], z: &[u64; 5], ctx: &PrimeContext) -> [u64; 5] {
        let m = |a, b| ctx.mul(a, b);
        let s = |a, b| ctx.sub(a, b);
        let a = |a, b| ctx.add(a, b);
        [
            s(
                a(m(x[1], z[2]), m(x[4], z[3])),
                a(m(x[3], z[1]), m(x[2], z[4])),
            ),
            s(
                a(m(x[2], z[3]), m(x[0], z[4])),
                a(m(x[3], z[0]), m(x[4], z[2])),
            ),
            s(
                a(m(x[1], z[0]), m(x[3], z[4])),
                a(m(x[4], z[1]), m(x[0], z[3])),
            ),
            s(
                a(m(x[4], z[0]), m(x[2], z[1])),
                a(m(x[0], z[2]), m(x[1], z[4])),
            ),
            s(
                a(m(x[0], z[1]), m(x[3], z[2])),
                a(m(x[2], z[0]), m(x[1], z[3])),
            ),
        ]
    }

    #[test]
    fn both_matrix_products_give_the_five_forms() {
        use rand::{Rng, SeedableRng};
        let ctx = ctx(101);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let xc: [u64; 5] = core::array::from_fn(|_| rng.gen_range(0..101));
            let zc: [u64; 5] = core::array::from_fn(|_| rng.gen_range(0..101));
            if xc.iter().all(|&v| v == 0) || zc.iter().all(|&v| v == 0) {
                continue;
            }
            let (x, z) = (ProjPoint5 { coords: xc }, ProjPoint5 { coords: zc });
            let forms = bilinear_forms(&xc, &zc, &ctx);
            assert_eq!(matrix_m(&x, &ctx).mul_vec(&zc), forms.to_vec());
            assert_eq!(matrix_l(&z, &ctx).mul_vec(&xc), forms.to_vec());
        }
    }

    #[test]
    fn on_x_examples() {
        let ctx = ctx(101);
        let e0 = ProjPoint5::basis(0, &ctx);
        let e1 = ProjPoint5::basis(1, &ctx);
        let ones = ProjPoint5::new([1; 5], &ctx).unwrap();
        assert!(on_x(&e0, &e0, &ctx));
        assert!(on_x(&ones, &ones, &ctx));
        assert!(!on_x(&e0, &e1, &ctx));
    }

    #[test]
    fn duality_is_exhaustive_at_p7() {
        let ctx = ctx(7);
        for x in ProjPoint5::all(&ctx) {
            let mx = matrix_m(&x, &ctx);
            for z in ProjPoint5::all(&ctx) {
                let via_m = mx.mul_vec(&z.coords());
                let via_l = matrix_l(&z, &ctx).mul_vec(&x.coords());
                assert_eq!(via_m, via_l);
            }
        }
    }

    #[test]
    fn elliptic_system_matches_reference_program() {
        use rand::{Rng, SeedableRng};
        let ctx = ctx(101);
        let y = ctx.i_root().unwrap();
        // Reference quadrics: -y z_i² - z_{i+1}z_{i+4} + y² z_{i+2}z_{i+3}.
        let reference = |c: &[u64; 5]| -> [u64; 5] {
            let mut out = [0u64; 5];
            for i in 0..5 {
                let t1 = ctx.mul(ctx.neg(y), ctx.mul(c[i], c[i]));
                let t2 = ctx.neg(ctx.mul(c[(i + 1) % 5], c[(i + 4) % 5]));
                let t3 = ctx.mul(ctx.mul(y, y), ctx.mul(c[(i + 2) % 5], c[(i + 3) % 5]));
                out[i] = ctx.add(ctx.add(t1, t2), t3);
            }
            out
        };
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        for _ in 0..400 {
            let c: [u64; 5] = core::array::from_fn(|_| rng.gen_range(0..101));
            if c.iter().all(|&v| v == 0) {
                continue;
            }
            let z = ProjPoint5 { coords: c };
            let ours = elliptic_system(&z, EllipticBranch::One, &ctx).unwrap();
            let theirs = reference(&c);
            // The reference system is -1 times branch one.
            for i in 0..5 {
                assert_eq!(theirs[i], ctx.neg(ours[i]));
            }
        }
    }

    #[test]
    fn elliptic_system_needs_i() {
        let ctx = ctx(59);
        let e0 = ProjPoint5::basis(0, &ctx);
        assert!(matches!(
            elliptic_system(&e0, EllipticBranch::One, &ctx),
            Err(Error::NoSqrtMinusOne(59))
        ));
    }

    #[test]
    fn basis_point_misses_branch_one() {
        let ctx = ctx(101);
        let e0 = ProjPoint5::basis(0, &ctx);
        let sys = elliptic_system(&e0, EllipticBranch::One, &ctx).unwrap();
        assert_eq!(sys[0], ctx.i_root().unwrap());
        assert_ne!(sys[0], 0);
    }

    #[test]
    fn family_degenerate_parameters() {
        let ctx = ctx(101);
        let par10 = CurveParam::new(1, 0, &ctx).unwrap();
        let par01 = CurveParam::new(0, 1, &ctx).unwrap();
        let e0 = ProjPoint5::basis(0, &ctx);
        assert_eq!(family_system(&e0, &par10, &ctx), [0; 5]);
        let z = ProjPoint5::new([2, 3, 5, 7, 11], &ctx).unwrap();
        let c = z.coords();
        let q10 = family_system(&z, &par10, &ctx);
        let q01 = family_system(&z, &par01, &ctx);
        for i in 0..5 {
            assert_eq!(q10[i], ctx.mul(c[(i + 2) % 5], c[(i + 3) % 5]));
            assert_eq!(q01[i], ctx.neg(ctx.mul(c[(i + 1) % 5], c[(i + 4) % 5])));
        }
    }

    #[test]
    fn family_at_param_i_is_branch_two() {
        // Exhaustive over P⁴(F_13): the (1:i) member of the family cuts out
        // the same locus as branch two.
        let ctx = ctx(13);
        let i = ctx.i_root().unwrap();
        let par = CurveParam::new(1, i, &ctx).unwrap();
        for z in ProjPoint5::all(&ctx) {
            let fam = family_system(&z, &par, &ctx).iter().all(|&v| v == 0);
            let branch = elliptic_system(&z, EllipticBranch::Two, &ctx)
                .unwrap()
                .iter()
                .all(|&v| v == 0);
            assert_eq!(fam, branch, "z = {:?}", z.coords());
        }
    }

    #[test]
    fn homogeneity_and_symmetry() {
        use rand::{Rng, SeedableRng};
        let ctx = ctx(101);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for _ in 0..300 {
            let c: [u64; 5] = core::array::from_fn(|_| rng.gen_range(0..101));
            if c.iter().all(|&v| v == 0) {
                continue;
            }
            let s = rng.gen_range(1..101);
            let scaled = ProjPoint5 {
                coords: c.map(|v| ctx.mul(v, s)),
            };
            let pt = ProjPoint5 { coords: c };
            let s5 = ctx.pow(s, 5);
            assert_eq!(quintic_f(&scaled, &ctx), ctx.mul(s5, quintic_f(&pt, &ctx)));
            assert_eq!(quintic_g(&scaled, &ctx), ctx.mul(s5, quintic_g(&pt, &ctx)));
            // E-system components scale by s².
            let s2 = ctx.mul(s, s);
            let sys = elliptic_system(&pt, EllipticBranch::One, &ctx).unwrap();
            let sys_scaled = elliptic_system(&scaled, EllipticBranch::One, &ctx).unwrap();
            for i in 0..5 {
                assert_eq!(sys_scaled[i], ctx.mul(s2, sys[i]));
            }
            // Cyclic shift invariance (raw coordinates, no rescaling) and
            // index reversal.
            let mut sh = [0u64; 5];
            for i in 0..5 {
                sh[i] = c[(i + 1) % 5];
            }
            let shifted = ProjPoint5 { coords: sh };
            assert_eq!(quintic_f(&pt, &ctx), quintic_f(&shifted, &ctx));
            assert_eq!(quintic_g(&pt, &ctx), quintic_g(&shifted, &ctx));
            let mut rev = [0u64; 5];
            for i in 0..5 {
                rev[i] = c[(5 - i) % 5];
            }
            let rev_pt = ProjPoint5 { coords: rev };
            assert_eq!(quintic_g(&pt, &ctx), quintic_g(&rev_pt, &ctx));
        }
    }

    #[test]
    fn determinant_calibration_holds() {
        for p in [59u64, 101, 157] {
            let ctx = ctx(p);
            let cal = calibrate_quintic_determinants(&ctx, 150).unwrap();
            // Interpolation in the invariant-quintic basis pins both
            // constants to exactly 2 over the integers.
            assert_eq!(cal.f_const, 2, "p = {p}");
            assert_eq!(cal.g_const, 2, "p = {p}");
        }
    }

    #[test]
    fn determinants_reproduce_quintics_pointwise() {
        use rand::{Rng, SeedableRng};
        let ctx = ctx(101);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let c: [u64; 5] = core::array::from_fn(|_| rng.gen_range(0..101));
            if c.iter().all(|&v| v == 0) {
                continue;
            }
            let pt = ProjPoint5 { coords: c };
            assert_eq!(matrix_m(&pt, &ctx).det(), ctx.mul(2, quintic_f(&pt, &ctx)));
            assert_eq!(matrix_l(&pt, &ctx).det(), ctx.mul(2, quintic_g(&pt, &ctx)));
        }
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let ctx = ctx(101);
        for raw in [[0, 0, 3, 4, 5], [7, 0, 0, 0, 0], [0, 0, 0, 0, 9]] {
            let a = ProjPoint5::new(raw, &ctx).unwrap();
            let b = ProjPoint5::new(a.coords(), &ctx).unwrap();
            assert_eq!(a, b);
            let lead = a.coords().iter().position(|&v| v != 0).unwrap();
            assert_eq!(a.coords()[lead], 1);
        }
        assert!(matches!(
            ProjPoint5::new([0; 5], &ctx),
            Err(Error::ZeroPoint)
        ));
    }

    #[test]
    fn all_points_has_projective_cardinality() {
        let ctx = ctx(7);
        let pts: Vec<_> = ProjPoint5::all(&ctx).collect();
        assert_eq!(pts.len() as u64, 7u64.pow(4) + 7u64.pow(3) + 49 + 7 + 1);
        let mut dedup = pts.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), pts.len());
    }
}
