//! Double-double arithmetic (~106 significand bits).
//!
//! Used by the floating cross-ratio path: applying a long hyperbolic word to
//! four projective points drives them together at rate ~separation^(-2·|word|),
//! and the 2×2 brackets of the images then cancel almost completely. Plain
//! `f64` loses the cross-ratio entirely beyond word length ~8; a compensated
//! double-double evaluation keeps enough headroom for words of length 20 at
//! the default separation. Standard error-free transformations (TwoSum,
//! TwoProd via FMA), cf. Dekker / Hida–Li–Bailey.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let v = s - a;
    let e = (a - (s - v)) + (b - v);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let e = e + self.lo + o.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul(Dd::from(q1)));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul(Dd::from(q2)));
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from(q3))
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            self.neg()
        } else {
            self
        }
    }
}

/// 2×2 matrix over [`Dd`], row major.
#[derive(Debug, Clone, Copy)]
pub struct DdMat2 {
    pub a: Dd,
    pub b: Dd,
    pub c: Dd,
    pub d: Dd,
}

impl DdMat2 {
    pub fn from_f64(a: f64, b: f64, c: f64, d: f64) -> DdMat2 {
        DdMat2 {
            a: Dd::from(a),
            b: Dd::from(b),
            c: Dd::from(c),
            d: Dd::from(d),
        }
    }

    pub const IDENTITY: DdMat2 = DdMat2 {
        a: Dd::ONE,
        b: Dd::ZERO,
        c: Dd::ZERO,
        d: Dd::ONE,
    };

    pub fn mul(self, o: DdMat2) -> DdMat2 {
        DdMat2 {
            a: self.a.mul(o.a).add(self.b.mul(o.c)),
            b: self.a.mul(o.b).add(self.b.mul(o.d)),
            c: self.c.mul(o.a).add(self.d.mul(o.c)),
            d: self.c.mul(o.b).add(self.d.mul(o.d)),
        }
    }

    pub fn apply(self, x: Dd, y: Dd) -> (Dd, Dd) {
        (
            self.a.mul(x).add(self.b.mul(y)),
            self.c.mul(x).add(self.d.mul(y)),
        )
    }
}

/// Bracket [p, q] = x_p·y_q − y_p·x_q of two homogeneous points.
pub fn bracket(p: (Dd, Dd), q: (Dd, Dd)) -> Dd {
    p.0.mul(q.1).sub(p.1.mul(q.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catastrophic_cancellation_is_recovered() {
        // (1 + 2^-40)·(1 - 2^-40) - 1 = -2^-80; plain f64 returns 0.
        let a = Dd::ONE.add(Dd::from(2f64.powi(-40)));
        let b = Dd::ONE.sub(Dd::from(2f64.powi(-40)));
        let r = a.mul(b).sub(Dd::ONE);
        assert!(r.hi != 0.0);
        assert!((r.to_f64() + 2f64.powi(-80)).abs() < 1e-31);
    }

    #[test]
    fn division_round_trips() {
        let x = Dd::from(std::f64::consts::PI);
        let y = Dd::from(std::f64::consts::E);
        let z = x.div(y).mul(y).sub(x);
        assert!(z.to_f64().abs() < 1e-30);
    }
}
