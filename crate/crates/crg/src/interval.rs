//! Complex interval arithmetic with exact rational endpoints, used for the
//! numeric embeddings of number-field elements (rendering and real-locus
//! checks). Everything outside this module stays exact.

use crate::field::{rat_int, Elem, Field, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Closed interval [lo, hi] with rational endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn point(v: Rat) -> Self {
        RatInterval { lo: v.clone(), hi: v }
    }

    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "inverted interval");
        RatInterval { lo, hi }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / rat_int(2)
    }

    pub fn contains(&self, v: &Rat) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_interval(&self, o: &RatInterval) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    pub fn add(&self, o: &RatInterval) -> Self {
        RatInterval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &RatInterval) -> Self {
        RatInterval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Self {
        RatInterval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn mul(&self, o: &RatInterval) -> Self {
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }

    pub fn scale(&self, q: &Rat) -> Self {
        if q.is_negative() {
            RatInterval { lo: &self.hi * q, hi: &self.lo * q }
        } else {
            RatInterval { lo: &self.lo * q, hi: &self.hi * q }
        }
    }

    /// 1/self; requires 0 outside the interval.
    pub fn recip(&self) -> Option<Self> {
        if self.lo.is_negative() != self.hi.is_negative() || self.lo.is_zero() || self.hi.is_zero()
        {
            if !(self.lo.is_positive() || self.hi.is_negative()) {
                return None;
            }
        }
        Some(RatInterval { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    /// Round endpoints outward to denominator 2^bits to limit blowup.
    pub fn round_out(&self, bits: u32) -> Self {
        let scale = BigInt::one() << bits;
        let s = Rat::from_integer(scale);
        let lo = Rat::from_integer((&self.lo * &s).floor().to_integer()) / &s;
        let hi = Rat::from_integer((&self.hi * &s).ceil().to_integer()) / &s;
        RatInterval { lo, hi }
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.mid())
    }
}

pub fn rat_to_f64(q: &Rat) -> f64 {
    // scale to keep precision for large numerators/denominators
    let n = q.numer();
    let d = q.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift = (nb.max(db) - 52).max(0);
    let ns: BigInt = n >> shift as u64;
    let ds: BigInt = d >> shift as u64;
    let nf = ns.to_string().parse::<f64>().unwrap_or(0.0);
    let df = ds.to_string().parse::<f64>().unwrap_or(1.0);
    if df == 0.0 {
        0.0
    } else {
        nf / df
    }
}

/// A rectangle in the complex plane.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexInterval {
    pub re: RatInterval,
    pub im: RatInterval,
}

impl ComplexInterval {
    pub fn point(re: Rat, im: Rat) -> Self {
        ComplexInterval { re: RatInterval::point(re), im: RatInterval::point(im) }
    }

    pub fn zero() -> Self {
        ComplexInterval::point(Rat::zero(), Rat::zero())
    }

    pub fn width(&self) -> Rat {
        let wr = self.re.width();
        let wi = self.im.width();
        if wr > wi {
            wr
        } else {
            wi
        }
    }

    pub fn add(&self, o: &ComplexInterval) -> Self {
        ComplexInterval { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &ComplexInterval) -> Self {
        ComplexInterval { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &ComplexInterval) -> Self {
        ComplexInterval {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale(&self, q: &Rat) -> Self {
        ComplexInterval { re: self.re.scale(q), im: self.im.scale(q) }
    }

    /// 1/self; None when the box may contain 0.
    pub fn recip(&self) -> Option<Self> {
        // 1/z = conj(z)/|z|^2; bound |z|^2 from below
        let n2 = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        if !n2.lo.is_positive() {
            return None;
        }
        let inv_n2 = RatInterval { lo: n2.hi.recip(), hi: n2.lo.recip() };
        Some(ComplexInterval {
            re: self.re.mul(&inv_n2),
            im: self.im.neg().mul(&inv_n2),
        })
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains(&Rat::zero()) && self.im.contains(&Rat::zero())
    }

    pub fn contains_interval(&self, o: &ComplexInterval) -> bool {
        self.re.contains_interval(&o.re) && self.im.contains_interval(&o.im)
    }

    pub fn round_out(&self, bits: u32) -> Self {
        ComplexInterval { re: self.re.round_out(bits), im: self.im.round_out(bits) }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

fn f64_to_rat(x: f64) -> Rat {
    // exact conversion of a finite double
    let s = format!("{x:.17e}");
    // parse mantissa e exponent
    let (m, e) = s.split_once('e').unwrap();
    let exp: i64 = e.parse().unwrap();
    let neg = m.starts_with('-');
    let digits: String = m.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = m.find('.').map(|i| m.len() - i - 1).unwrap_or(0) as i64;
    let mut num: BigInt = digits.parse().unwrap();
    if neg {
        num = -num;
    }
    let ten = BigInt::from(10);
    let shift = exp - point;
    if shift >= 0 {
        Rat::from_integer(num * ten.pow(shift as u32))
    } else {
        Rat::new(num, ten.pow((-shift) as u32))
    }
}

/// Evaluate a rational polynomial (constant-first) on a complex box.
fn eval_poly_box(p: &[Rat], z: &ComplexInterval) -> ComplexInterval {
    let mut acc = ComplexInterval::zero();
    for c in p.iter().rev() {
        acc = acc.mul(z).add(&ComplexInterval::point(c.clone(), Rat::zero()));
    }
    acc
}

/// Certified enclosure of the embedding root of a number field at roughly the
/// requested precision, via interval Newton started from the stored hint.
pub fn root_enclosure(min_poly: &[Rat], hint: (f64, f64), precision_bits: u32) -> ComplexInterval {
    let deg = min_poly.len() - 1;
    let deriv: Vec<Rat> = (1..=deg).map(|i| &min_poly[i] * rat_int(i as i64)).collect();
    // refine the hint in f64 first with Newton steps (complex)
    let (mut re, mut im) = hint;
    for _ in 0..60 {
        let (fr, fi) = eval_poly_f64(min_poly, re, im);
        let (dr, di) = eval_poly_f64(&deriv, re, im);
        let dn = dr * dr + di * di;
        if dn == 0.0 {
            break;
        }
        let sr = (fr * dr + fi * di) / dn;
        let si = (fi * dr - fr * di) / dn;
        re -= sr;
        im -= si;
    }
    let target: Rat = Rat::new(BigInt::one(), BigInt::one() << precision_bits);
    // initial box around the refined point
    let mut w = Rat::new(BigInt::one(), BigInt::from(1u64 << 40));
    let c_re = f64_to_rat(re);
    let c_im = f64_to_rat(im);
    let mut x = ComplexInterval {
        re: RatInterval::new(&c_re - &w, &c_re + &w),
        im: RatInterval::new(&c_im - &w, &c_im + &w),
    };
    let guard = precision_bits + 32;
    let mut certified = false;
    for _ in 0..200 {
        // interval Newton: N = mid - f(mid) / f'(X)
        let mid = ComplexInterval::point(x.re.mid(), x.im.mid());
        let fm = eval_poly_box(min_poly, &mid);
        let dfx = eval_poly_box(&deriv, &x);
        let Some(dinv) = dfx.recip() else {
            // widen slightly and retry
            w = &w * rat_int(2);
            x = ComplexInterval {
                re: RatInterval::new(&c_re - &w, &c_re + &w),
                im: RatInterval::new(&c_im - &w, &c_im + &w),
            };
            continue;
        };
        let n = mid.sub(&fm.mul(&dinv)).round_out(guard);
        if x.contains_interval(&n) {
            certified = true;
        }
        // intersect with previous box
        let nr = RatInterval::new(
            if n.re.lo > x.re.lo { n.re.lo.clone() } else { x.re.lo.clone() },
            if n.re.hi < x.re.hi { n.re.hi.clone() } else { x.re.hi.clone() },
        );
        let ni = RatInterval::new(
            if n.im.lo > x.im.lo { n.im.lo.clone() } else { x.im.lo.clone() },
            if n.im.hi < x.im.hi { n.im.hi.clone() } else { x.im.hi.clone() },
        );
        let next = ComplexInterval { re: nr, im: ni };
        let done = certified && next.width() < target;
        let stalled = next == x;
        x = next;
        if done || stalled {
            break;
        }
    }
    x
}

fn eval_poly_f64(p: &[Rat], re: f64, im: f64) -> (f64, f64) {
    let mut ar = 0.0;
    let mut ai = 0.0;
    for c in p.iter().rev() {
        let nr = ar * re - ai * im + rat_to_f64(c);
        let ni = ar * im + ai * re;
        ar = nr;
        ai = ni;
    }
    (ar, ai)
}

/// Numeric embedding of a field element as a complex box of width about
/// 2^-precision_bits.
pub fn embed_numeric(a: &Elem, precision_bits: u32) -> ComplexInterval {
    match &a.field {
        Field::Q => ComplexInterval::point(a.coeffs[0].clone(), Rat::zero()),
        Field::Ext(nf) => {
            if a.is_rational() {
                return ComplexInterval::point(a.coeffs[0].clone(), Rat::zero());
            }
            let root = root_enclosure(&nf.min_poly, nf.root_hint, precision_bits + 16);
            let mut acc = ComplexInterval::zero();
            for c in a.coeffs.iter().rev() {
                acc = acc
                    .mul(&root)
                    .add(&ComplexInterval::point(c.clone(), Rat::zero()))
                    .round_out(precision_bits + 48);
            }
            acc
        }
    }
}

/// f64 value of an element under the field embedding (midpoint of the box).
pub fn embed_f64(a: &Elem) -> (f64, f64) {
    embed_numeric(a, 53).to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, wellknown};

    #[test]
    fn sqrt5_enclosure() {
        let f = wellknown::QSQRT5.clone();
        let t = f.gen().unwrap();
        let b = embed_numeric(&t, 53);
        // the box squared must contain 5 exactly
        let sq = b.mul(&b);
        assert!(sq.re.contains(&rat(5, 1)));
        assert!(b.width() < rat(1, 1_000_000_000));
        assert!(b.im.contains(&Rat::zero()));
        assert!(b.re.lo > rat(2, 1) && b.re.hi < rat(3, 1));
    }

    #[test]
    fn zeta4_is_i() {
        let f = wellknown::QI.clone();
        let t = f.gen().unwrap();
        let (re, im) = embed_f64(&t);
        assert!(re.abs() < 1e-12 && (im - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rho_is_positive_real() {
        let f = wellknown::QRHO.clone();
        let t = f.gen().unwrap();
        let (re, im) = embed_f64(&t);
        assert!((re - 1.9021130325903071).abs() < 1e-9);
        assert!(im.abs() < 1e-12);
    }

    #[test]
    fn zero_is_exact() {
        let b = embed_numeric(&Field::Q.zero(), 10);
        assert_eq!(b.width(), Rat::zero());
        assert!(b.contains_zero());
    }

    #[test]
    fn embedding_respects_arithmetic() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let f = wellknown::QZETA3.clone();
        for _ in 0..100 {
            let a = f.elem(vec![rat(rng.gen_range(-9..9), 1), rat(rng.gen_range(-9..9), 1)]);
            let b = f.elem(vec![rat(rng.gen_range(-9..9), 1), rat(rng.gen_range(-9..9), 1)]);
            let prod = a.mul(&b);
            let ba = embed_numeric(&a, 60);
            let bb = embed_numeric(&b, 60);
            let bp = embed_numeric(&prod, 60);
            let prod_box = ba.mul(&bb);
            // boxes must overlap (both contain the true value)
            let overlap = |x: &RatInterval, y: &RatInterval| x.lo <= y.hi && y.lo <= x.hi;
            assert!(overlap(&bp.re, &prod_box.re) && overlap(&bp.im, &prod_box.im));
        }
    }

    #[test]
    fn precision_shrinks_width() {
        let f = wellknown::QSQRT5.clone();
        let t = f.gen().unwrap();
        let w1 = embed_numeric(&t, 20).width();
        let w2 = embed_numeric(&t, 80).width();
        assert!(w2 < w1);
        assert!(w2 < Rat::new(BigInt::one(), BigInt::one() << 70));
    }
}
