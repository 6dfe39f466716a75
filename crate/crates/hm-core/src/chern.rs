//! Characteristic-class arithmetic in the truncated ring
//! Z[X, Y]/(X⁵, Y⁵), where X and Y are the hyperplane classes of the two
//! P⁴ factors. Integration over the ambient space reads off the X⁴Y⁴
//! coefficient, so the hard truncation loses nothing.

/// Polynomial with exact integer coefficients, exponents capped below 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncPoly2 {
    c: [[i64; 5]; 5],
}

impl TruncPoly2 {
    pub fn zero() -> Self {
        TruncPoly2 { c: [[0; 5]; 5] }
    }

    pub fn constant(v: i64) -> Self {
        let mut p = Self::zero();
        p.c[0][0] = v;
        p
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn x() -> Self {
        let mut p = Self::zero();
        p.c[1][0] = 1;
        p
    }

    pub fn y() -> Self {
        let mut p = Self::zero();
        p.c[0][1] = 1;
        p
    }

    pub fn coeff(&self, a: usize, b: usize) -> i64 {
        self.c[a][b]
    }

    pub fn set_coeff(&mut self, a: usize, b: usize, v: i64) {
        self.c[a][b] = v;
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for a in 0..5 {
            for b in 0..5 {
                out.c[a][b] = self.c[a][b] + other.c[a][b];
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for a in 0..5 {
            for b in 0..5 {
                out.c[a][b] = self.c[a][b] - other.c[a][b];
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for a1 in 0..5 {
            for b1 in 0..5 {
                let v = self.c[a1][b1];
                if v == 0 {
                    continue;
                }
                for a2 in 0..5 - a1 {
                    for b2 in 0..5 - b1 {
                        out.c[a1 + a2][b1 + b2] += v * other.c[a2][b2];
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse for units (constant term ±1). The augmentation
    /// ideal is nilpotent here, so the geometric series terminates.
    pub fn inverse(&self) -> Option<Self> {
        let u = self.c[0][0];
        if u != 1 && u != -1 {
            return None;
        }
        let normalized = if u == 1 {
            *self
        } else {
            self.mul(&Self::constant(-1))
        };
        let n = Self::one().sub(&normalized);
        let mut acc = Self::one();
        let mut term = Self::one();
        for _ in 0..8 {
            term = term.mul(&n);
            acc = acc.add(&term);
        }
        if u == 1 {
            Some(acc)
        } else {
            Some(acc.mul(&Self::constant(-1)))
        }
    }

    /// The homogeneous degree-d part.
    pub fn grade(&self, d: usize) -> Self {
        let mut out = Self::zero();
        for a in 0..5 {
            for b in 0..5 {
                if a + b == d {
                    out.c[a][b] = self.c[a][b];
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|row| row.iter().all(|&v| v == 0))
    }
}

impl std::fmt::Display for TruncPoly2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for d in 0..9 {
            for a in (0..5).rev() {
                let b = d as i64 - a as i64;
                if !(0..5).contains(&b) {
                    continue;
                }
                let b = b as usize;
                let v = self.c[a][b];
                if v == 0 {
                    continue;
                }
                if first {
                    write!(f, "{v}")?;
                    first = false;
                } else if v > 0 {
                    write!(f, " + {v}")?;
                } else {
                    write!(f, " - {}", -v)?;
                }
                if a == 1 {
                    write!(f, "*X")?;
                } else if a > 1 {
                    write!(f, "*X^{a}")?;
                }
                if b == 1 {
                    write!(f, "*Y")?;
                } else if b > 1 {
                    write!(f, "*Y^{b}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Total Chern class of the smooth (1,1)-quintuple section X' of P⁴ × P⁴:
/// (1+X)⁵(1+Y)⁵ divided by the normal-bundle class (1+X+Y)⁵, with the
/// division done exactly in the truncated ring.
pub fn chern_total() -> TruncPoly2 {
    let one = TruncPoly2::one();
    let ambient = one
        .add(&TruncPoly2::x())
        .pow(5)
        .mul(&one.add(&TruncPoly2::y()).pow(5));
    let normal_inv = one
        .add(&TruncPoly2::x())
        .add(&TruncPoly2::y())
        .pow(5)
        .inverse()
        .expect("unit constant term");
    ambient.mul(&normal_inv)
}

/// (χ(X'), χ(X̃)): the X⁴Y⁴ coefficient of c₃(X')·(1+X+Y)⁵, then the
/// surgery correction, replacing 60 vanishing three-spheres by quadric
/// surfaces: χ(X̃) = χ(X') + 60·χ(P¹×P¹).
pub fn euler_characteristic() -> (i64, i64) {
    let c3 = chern_total().grade(3);
    let normal = TruncPoly2::one()
        .add(&TruncPoly2::x())
        .add(&TruncPoly2::y())
        .pow(5);
    let chi_smooth = c3.mul(&normal).coeff(4, 4);
    (chi_smooth, chi_smooth + 240)
}
