//! The 60 singular points of X and their blowup bookkeeping.
//!
//! The nodes come in three Heisenberg orbits: five σ-nodes (coordinate
//! points, paired with themselves), five τ-nodes (the ε-power diagonal orbit
//! of the all-ones point), and fifty regular nodes. Node coordinates are
//! generated from the orbit formulas, never read from tables, so the same
//! code serves every prime. Whether a node is defined over F_p is decided by
//! which of i and ε the field contains; whether the exceptional quadric's
//! two rulings are individually defined is decided by the square class of
//! the local determinant (1 for σ, 5 for τ, -12+16i for regular nodes).

use crate::fp::PrimeContext;
use crate::varieties::{matrix_l, matrix_m, on_x, ProjPoint5};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeClass {
    Sigma,
    Tau,
    Regular,
}

/// Square class of the symmetric-matrix determinant at the node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RulingDetClass {
    /// Determinant 1: always a square.
    One,
    /// Determinant 5: square iff p ≡ ±1 (mod 5).
    Five,
    /// Determinant -12+16i = (2+4i)²: a square whenever i exists.
    Gauss,
}

/// One of the 60 singular points, with its orbit coordinates and (when
/// defined over F_p) its actual position on X.
#[derive(Debug, Clone)]
pub struct NodeRecord {
    pub class: NodeClass,
    /// σ-power applied to the orbit seed.
    pub shift: u8,
    /// ε-power: j for τ-nodes, k for regular nodes, unused for σ-nodes.
    pub power: u8,
    /// Choice of ±i in the regular-node seed.
    pub sign_plus: Option<bool>,
    pub ruling_det: RulingDetClass,
    pub defined: bool,
    pub coords: Option<(ProjPoint5, ProjPoint5)>,
    pub ruling_rational: Option<bool>,
}

/// Aggregated tallies over all 60 records for one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeInventory {
    pub p: u64,
    pub sigma_defined: u32,
    pub tau_defined: u32,
    pub regular_defined: u32,
    pub sigma_rational: u32,
    pub tau_rational: u32,
    pub regular_rational: u32,
    /// Σ over defined nodes of the points the blowup adds.
    pub correction_total: u64,
}

impl NodeInventory {
    pub fn defined_total(&self) -> u32 {
        self.sigma_defined + self.tau_defined + self.regular_defined
    }

    pub fn rational_total(&self) -> u32 {
        self.sigma_rational + self.tau_rational + self.regular_rational
    }
}

/// Materializes all 60 nodes for the given prime: 5 σ, 5 τ, 50 regular.
pub fn enumerate_nodes(ctx: &PrimeContext) -> Vec<NodeRecord> {
    let mut out = Vec::with_capacity(60);
    for k in 0..5u8 {
        let e = ProjPoint5::basis(k as usize, ctx);
        let mut rec = NodeRecord {
            class: NodeClass::Sigma,
            shift: k,
            power: 0,
            sign_plus: None,
            ruling_det: RulingDetClass::One,
            defined: true,
            coords: Some((e, e)),
            ruling_rational: None,
        };
        rec.ruling_rational = Some(ruling_rational(&rec, ctx).expect("σ-node is defined"));
        out.push(rec);
    }
    for j in 0..5u8 {
        let defined = j == 0 || ctx.has_eps();
        let coords = if defined {
            let eps = if j == 0 { 1 } else { ctx.eps_root().unwrap() };
            let pw = |m: u64| ctx.pow(eps, m);
            let jj = j as u64;
            let x = ProjPoint5::new([1, pw(3 * jj), pw(jj), pw(4 * jj), pw(2 * jj)], ctx).unwrap();
            let z = ProjPoint5::new([1, pw(jj), pw(2 * jj), pw(3 * jj), pw(4 * jj)], ctx).unwrap();
            Some((x, z))
        } else {
            None
        };
        let mut rec = NodeRecord {
            class: NodeClass::Tau,
            shift: 0,
            power: j,
            sign_plus: None,
            ruling_det: RulingDetClass::Five,
            defined,
            coords,
            ruling_rational: None,
        };
        if defined {
            rec.ruling_rational = Some(ruling_rational(&rec, ctx).expect("defined τ-node"));
        }
        out.push(rec);
    }
    for k in 0..5u8 {
        for sign_plus in [true, false] {
            for s in 0..5u8 {
                let defined = ctx.has_i() && (k == 0 || ctx.has_eps());
                let coords = if defined {
                    let i = ctx.i_root().unwrap();
                    let eps = if k == 0 { 1 } else { ctx.eps_root().unwrap() };
                    let pw = |m: u64| ctx.pow(eps, m);
                    let kk = k as u64;
                    let signed_i = if sign_plus { i } else { ctx.neg(i) };
                    let x = ProjPoint5::new(
                        [0, 1, ctx.neg(pw(kk)), ctx.neg(pw(2 * kk)), pw(3 * kk)],
                        ctx,
                    )
                    .unwrap();
                    let z = ProjPoint5::new(
                        [
                            0,
                            1,
                            ctx.mul(signed_i, pw(2 * kk)),
                            ctx.neg(ctx.mul(signed_i, pw(4 * kk))),
                            ctx.neg(pw(kk)),
                        ],
                        ctx,
                    )
                    .unwrap();
                    Some((x.shift(s as usize, ctx), z.shift(s as usize, ctx)))
                } else {
                    None
                };
                let mut rec = NodeRecord {
                    class: NodeClass::Regular,
                    shift: s,
                    power: k,
                    sign_plus: Some(sign_plus),
                    ruling_det: RulingDetClass::Gauss,
                    defined,
                    coords,
                    ruling_rational: None,
                };
                if defined {
                    rec.ruling_rational =
                        Some(ruling_rational(&rec, ctx).expect("defined regular node"));
                }
                out.push(rec);
            }
        }
    }
    debug_assert_eq!(out.len(), 60);
    out
}

/// Whether the two rulings on the exceptional P¹×P¹ over this node are
/// individually defined over F_p.
///
/// For regular nodes the determinant class -12+16i is a perfect square of
/// the Gaussian integer 2+4i, so the answer must be `true` whenever the node
/// is defined; a non-square here means a broken context and is reported as
/// an error rather than returned as a value.
pub fn ruling_rational(rec: &NodeRecord, ctx: &PrimeContext) -> Result<bool, Error> {
    if !rec.defined {
        return Err(Error::UndefinedNode(ctx.p()));
    }
    match rec.ruling_det {
        RulingDetClass::One => Ok(true),
        RulingDetClass::Five => Ok(ctx.legendre(5) == 1),
        RulingDetClass::Gauss => {
            let i = ctx.i_root().ok_or(Error::UndefinedNode(ctx.p()))?;
            let det = ctx.reduce_signed(16 * i as i64 - 12);
            if ctx.legendre(det as i64) == 1 {
                Ok(true)
            } else {
                Err(Error::RulingAssertion(ctx.p()))
            }
        }
    }
}

/// Net points added by blowing up this node: the exceptional quadric has
/// (p+1)² points when its rulings are rational and p²+1 otherwise, replacing
/// a single point either way.
pub fn blowup_correction(rec: &NodeRecord, ctx: &PrimeContext) -> Result<u64, Error> {
    let p = ctx.p();
    if ruling_rational(rec, ctx)? {
        Ok(p * p + 2 * p)
    } else {
        Ok(p * p)
    }
}

/// Rank criterion for singularity: the point lies on X and the 5×10
/// concatenation [L(z) | M(x)] has rank at most 4 (kernel dimension ≥ 6).
pub fn verify_node_singular(rec: &NodeRecord, ctx: &PrimeContext) -> Result<bool, Error> {
    let (x, z) = rec.coords.as_ref().ok_or(Error::UndefinedNode(ctx.p()))?;
    if !on_x(x, z, ctx) {
        return Ok(false);
    }
    let concat = matrix_l(z, ctx).hconcat(&matrix_m(x, ctx));
    Ok(concat.rank() <= 4)
}

/// Tallies definedness, ruling rationality, and the total blowup correction.
pub fn inventory(records: &[NodeRecord], ctx: &PrimeContext) -> Result<NodeInventory, Error> {
    let mut inv = NodeInventory {
        p: ctx.p(),
        sigma_defined: 0,
        tau_defined: 0,
        regular_defined: 0,
        sigma_rational: 0,
        tau_rational: 0,
        regular_rational: 0,
        correction_total: 0,
    };
    for rec in records {
        if !rec.defined {
            continue;
        }
        let rational = ruling_rational(rec, ctx)?;
        match rec.class {
            NodeClass::Sigma => {
                inv.sigma_defined += 1;
                inv.sigma_rational += u32::from(rational);
            }
            NodeClass::Tau => {
                inv.tau_defined += 1;
                inv.tau_rational += u32::from(rational);
            }
            NodeClass::Regular => {
                inv.regular_defined += 1;
                inv.regular_rational += u32::from(rational);
            }
        }
        inv.correction_total += blowup_correction(rec, ctx)?;
    }
    Ok(inv)
}
