//! Exact arithmetic over Q and simple number fields Q[t]/(m(t)).
//!
//! Every scalar in the toolkit is an [`Elem`]: a vector of rational
//! coordinates in the power basis of its field. Fields are either the
//! rationals or a simple extension described by a monic integer-primitive
//! minimal polynomial together with a numeric hint isolating the chosen
//! embedding root.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

pub type Rat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("invalid field description: {0}")]
    BadField(String),
}

/// A simple number field Q[t]/(min_poly).
#[derive(Debug)]
pub struct NumberField {
    pub name: String,
    /// Monic minimal polynomial, constant coefficient first, length degree+1.
    pub min_poly: Vec<Rat>,
    pub degree: usize,
    /// Approximate complex embedding root (re, im); refined on demand by the
    /// interval machinery when certified enclosures are required.
    pub root_hint: (f64, f64),
    /// t^(degree+i) reduced mod min_poly, for i in 0..degree-1.
    tpows: Vec<Vec<Rat>>,
}

impl NumberField {
    pub fn new(name: &str, min_poly: Vec<Rat>, root_hint: (f64, f64)) -> Result<Arc<Self>, FieldError> {
        let degree = min_poly.len().checked_sub(1).filter(|&d| d >= 1).ok_or_else(|| {
            FieldError::BadField("minimal polynomial must have degree >= 1".into())
        })?;
        if !min_poly[degree].is_one() {
            return Err(FieldError::BadField("minimal polynomial must be monic".into()));
        }
        // squarefree check: gcd(m, m') = 1
        let deriv: Vec<Rat> = (1..=degree).map(|i| &min_poly[i] * rat_int(i as i64)).collect();
        if crate::unipoly::rat_gcd_deg(&min_poly, &deriv) != 0 {
            return Err(FieldError::BadField("minimal polynomial is not squarefree".into()));
        }
        let red: Vec<Rat> = min_poly[..degree].iter().map(|c| -c).collect();
        let mut tpows = Vec::with_capacity(degree.saturating_sub(1));
        let mut cur = red.clone();
        tpows.push(cur.clone());
        for _ in 0..degree.saturating_sub(2) {
            // multiply by t and reduce
            let lead = cur[degree - 1].clone();
            let mut next = vec![Rat::zero(); degree];
            for i in 1..degree {
                next[i] = cur[i - 1].clone();
            }
            if !lead.is_zero() {
                for i in 0..degree {
                    next[i] += &lead * &red[i];
                }
            }
            cur = next;
            tpows.push(cur.clone());
        }
        Ok(Arc::new(NumberField { name: name.into(), min_poly, degree, root_hint, tpows }))
    }
}

/// Coefficient domain tag: the rationals or a shared number field.
#[derive(Clone, Debug)]
pub enum Field {
    Q,
    Ext(Arc<NumberField>),
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Field::Q, Field::Q) => true,
            (Field::Ext(a), Field::Ext(b)) => Arc::ptr_eq(a, b) || a.min_poly == b.min_poly,
            _ => false,
        }
    }
}
impl Eq for Field {}

impl Field {
    pub fn degree(&self) -> usize {
        match self {
            Field::Q => 1,
            Field::Ext(nf) => nf.degree,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Field::Q => "Q".into(),
            Field::Ext(nf) => nf.name.clone(),
        }
    }

    pub fn zero(&self) -> Elem {
        Elem { field: self.clone(), coeffs: vec![Rat::zero(); self.degree()] }
    }

    pub fn one(&self) -> Elem {
        let mut e = self.zero();
        e.coeffs[0] = Rat::one();
        e
    }

    pub fn from_rat(&self, q: Rat) -> Elem {
        let mut e = self.zero();
        e.coeffs[0] = q;
        e
    }

    pub fn from_int(&self, n: i64) -> Elem {
        self.from_rat(rat_int(n))
    }

    /// The image of the field generator t (errors for Q).
    pub fn gen(&self) -> Option<Elem> {
        if self.degree() < 2 {
            return None;
        }
        let mut e = self.zero();
        e.coeffs[1] = Rat::one();
        Some(e)
    }

    pub fn elem(&self, coeffs: Vec<Rat>) -> Elem {
        assert_eq!(coeffs.len(), self.degree(), "coefficient vector length");
        Elem { field: self.clone(), coeffs }
    }
}

/// An exact element of Q or of a number field, in reduced power-basis form.
#[derive(Clone, Debug)]
pub struct Elem {
    pub field: Field,
    pub coeffs: Vec<Rat>,
}

impl PartialEq for Elem {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}
impl Eq for Elem {}

impl std::hash::Hash for Elem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl Elem {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value when the element lies in Q, else None.
    pub fn as_rat(&self) -> Option<&Rat> {
        if self.is_rational() {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn unify(a: &Elem, b: &Elem) -> Result<(Elem, Elem), FieldError> {
        if a.field == b.field {
            return Ok((a.clone(), b.clone()));
        }
        match (&a.field, &b.field) {
            (Field::Q, Field::Ext(_)) => {
                let mut aa = b.field.zero();
                aa.coeffs[0] = a.coeffs[0].clone();
                Ok((aa, b.clone()))
            }
            (Field::Ext(_), Field::Q) => {
                let mut bb = a.field.zero();
                bb.coeffs[0] = b.coeffs[0].clone();
                Ok((a.clone(), bb))
            }
            _ => Err(FieldError::FieldMismatch(format!(
                "{} vs {}",
                a.field.name(),
                b.field.name()
            ))),
        }
    }

    pub fn add(&self, other: &Elem) -> Elem {
        let (a, b) = Elem::unify(self, other).expect("field mismatch in add");
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Elem { field: a.field, coeffs }
    }

    pub fn sub(&self, other: &Elem) -> Elem {
        let (a, b) = Elem::unify(self, other).expect("field mismatch in sub");
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        Elem { field: a.field, coeffs }
    }

    pub fn neg(&self) -> Elem {
        Elem { field: self.field.clone(), coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, other: &Elem) -> Elem {
        let (a, b) = Elem::unify(self, other).expect("field mismatch in mul");
        match &a.field {
            Field::Q => a.field.from_rat(&a.coeffs[0] * &b.coeffs[0]),
            Field::Ext(nf) => {
                let d = nf.degree;
                let mut prod = vec![Rat::zero(); 2 * d - 1];
                for (i, x) in a.coeffs.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.coeffs.iter().enumerate() {
                        if !y.is_zero() {
                            prod[i + j] += x * y;
                        }
                    }
                }
                let mut out = prod[..d].to_vec();
                for i in d..2 * d - 1 {
                    if !prod[i].is_zero() {
                        let red = &nf.tpows[i - d];
                        for k in 0..d {
                            out[k] += &prod[i] * &red[k];
                        }
                    }
                }
                Elem { field: a.field, coeffs: out }
            }
        }
    }

    pub fn mul_rat(&self, q: &Rat) -> Elem {
        Elem { field: self.field.clone(), coeffs: self.coeffs.iter().map(|x| x * q).collect() }
    }

    pub fn inv(&self) -> Result<Elem, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match &self.field {
            Field::Q => Ok(self.field.from_rat(self.coeffs[0].recip())),
            Field::Ext(nf) => {
                // extended Euclid in Q[t]: u*a + v*m = 1
                let a: Vec<Rat> = self.coeffs.clone();
                let m = nf.min_poly.clone();
                let (g, u) = crate::unipoly::rat_half_xgcd(&a, &m);
                debug_assert_eq!(crate::unipoly::rat_deg(&g), 0);
                let ginv = g[0].recip();
                let mut coeffs = vec![Rat::zero(); nf.degree];
                // u may have degree < degree(m); reduce is unnecessary
                for (i, c) in u.iter().enumerate() {
                    if i < nf.degree {
                        coeffs[i] = c * &ginv;
                    }
                }
                Ok(Elem { field: self.field.clone(), coeffs })
            }
        }
    }

    pub fn div(&self, other: &Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut e: u64) -> Elem {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Apply a field endomorphism determined by t -> image.
    pub fn galois_map(&self, image: &Elem) -> Elem {
        let mut acc = image.field.zero();
        let mut p = image.field.one();
        for c in &self.coeffs {
            if !c.is_zero() {
                acc = acc.add(&p.mul_rat(c));
            }
            p = p.mul(image);
        }
        acc
    }
}

/// Spec-level arithmetic entry point with explicit error reporting.
pub fn field_arith(a: &Elem, b: &Elem, op: &str) -> Result<Elem, FieldError> {
    let (a, b) = Elem::unify(a, b)?;
    match op {
        "add" => Ok(a.add(&b)),
        "sub" => Ok(a.sub(&b)),
        "mul" => Ok(a.mul(&b)),
        "div" => a.div(&b),
        other => Err(FieldError::BadField(format!("unknown op {other}"))),
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = if c.denom().is_one() { c.numer().to_string() } else { c.to_string() };
            let part = match i {
                0 => cs,
                1 => {
                    if c.is_one() {
                        "t".into()
                    } else if (-c).is_one() {
                        "-t".into()
                    } else {
                        format!("{cs}*t")
                    }
                }
                _ => {
                    if c.is_one() {
                        format!("t^{i}")
                    } else if (-c).is_one() {
                        format!("-t^{i}")
                    } else {
                        format!("{cs}*t^{i}")
                    }
                }
            };
            parts.push(part);
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let mut s = String::new();
        for (k, p) in parts.iter().enumerate() {
            if k == 0 {
                s.push_str(p);
            } else if let Some(stripped) = p.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(stripped);
            } else {
                s.push_str(" + ");
                s.push_str(p);
            }
        }
        write!(f, "{s}")
    }
}

/// Built-in fields used by the stored group models.
pub mod wellknown {
    use super::*;
    use once_cell::sync::Lazy;

    fn nf(name: &str, coeffs: &[i64], hint: (f64, f64)) -> Field {
        let mp = coeffs.iter().map(|&c| rat_int(c)).collect();
        Field::Ext(NumberField::new(name, mp, hint).expect("well-known field"))
    }

    /// Q(sqrt5), t^2 - 5, t -> +sqrt(5).
    pub static QSQRT5: Lazy<Field> = Lazy::new(|| nf("Q(sqrt5)", &[-5, 0, 1], (5f64.sqrt(), 0.0)));
    /// Q(sqrt(-7)), t^2 + 7, t -> i*sqrt(7).
    pub static QSQRTM7: Lazy<Field> =
        Lazy::new(|| nf("Q(sqrt-7)", &[7, 0, 1], (0.0, 7f64.sqrt())));
    /// Q(zeta3), t^2 + t + 1, t -> exp(2 pi i/3).
    pub static QZETA3: Lazy<Field> =
        Lazy::new(|| nf("Q(zeta3)", &[1, 1, 1], (-0.5, 3f64.sqrt() / 2.0)));
    /// Q(i), t^2 + 1, t -> i.
    pub static QI: Lazy<Field> = Lazy::new(|| nf("Q(i)", &[1, 0, 1], (0.0, 1.0)));
    /// Q(rho), rho^4 = 5 rho^2 - 5, t -> positive real root ~ 1.902.
    pub static QRHO: Lazy<Field> =
        Lazy::new(|| nf("Q(rho)", &[5, 0, -5, 0, 1], (((5.0 + 5f64.sqrt()) / 2.0f64).sqrt(), 0.0)));
    /// Q(zeta15), Phi_15 = t^8 - t^7 + t^5 - t^4 + t^3 - t + 1, t -> exp(2 pi i/15).
    pub static QZETA15: Lazy<Field> = Lazy::new(|| {
        nf(
            "Q(zeta15)",
            &[1, -1, 0, 1, -1, 1, 0, -1, 1],
            ((2.0 * std::f64::consts::PI / 15.0).cos(), (2.0 * std::f64::consts::PI / 15.0).sin()),
        )
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arith() {
        let f = Field::Q;
        let a = f.from_rat(rat(3, 4));
        let b = f.from_rat(rat(1, 4));
        assert!(a.add(&b).is_one());
        assert_eq!(a.mul(&b), f.from_rat(rat(3, 16)));
        assert_eq!(a.div(&b).unwrap(), f.from_int(3));
    }

    #[test]
    fn sqrt5_defining_relation() {
        let f = wellknown::QSQRT5.clone();
        let t = f.gen().unwrap();
        assert_eq!(t.mul(&t), f.from_int(5));
    }

    #[test]
    fn rho_defining_relation() {
        // t^4 = 5 t^2 - 5
        let f = wellknown::QRHO.clone();
        let t = f.gen().unwrap();
        let t4 = t.pow(4);
        let want = t.pow(2).mul_rat(&rat_int(5)).sub(&f.from_int(5));
        assert_eq!(t4, want);
    }

    #[test]
    fn min_poly_vanishes_in_every_wellknown_field() {
        for f in [
            wellknown::QSQRT5.clone(),
            wellknown::QSQRTM7.clone(),
            wellknown::QZETA3.clone(),
            wellknown::QI.clone(),
            wellknown::QRHO.clone(),
            wellknown::QZETA15.clone(),
        ] {
            let Field::Ext(nf) = &f else { panic!() };
            let t = f.gen().unwrap();
            let mut acc = f.zero();
            let mut p = f.one();
            for c in &nf.min_poly {
                acc = acc.add(&p.mul_rat(c));
                p = p.mul(&t);
            }
            assert!(acc.is_zero(), "min poly of {} does not vanish", f.name());
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = wellknown::QZETA15.clone();
        let t = f.gen().unwrap();
        // a modestly complicated element
        let a = t.pow(5).add(&t.pow(3).mul_rat(&rat(2, 3))).sub(&f.from_int(7));
        let ainv = a.inv().unwrap();
        assert!(a.mul(&ainv).is_one());
    }

    #[test]
    fn division_by_zero_reported() {
        let f = Field::Q;
        assert_eq!(f.one().div(&f.zero()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn promotion_q_into_extension() {
        let f = wellknown::QI.clone();
        let i = f.gen().unwrap();
        let half = Field::Q.from_rat(rat(1, 2));
        let s = i.add(&half);
        assert_eq!(s.field, f);
        assert_eq!(s.coeffs, vec![rat(1, 2), rat_int(1)]);
    }

    #[test]
    fn mismatched_extensions_error() {
        let a = wellknown::QI.gen().unwrap();
        let b = wellknown::QZETA3.gen().unwrap();
        assert!(matches!(field_arith(&a, &b, "add"), Err(FieldError::FieldMismatch(_))));
    }

    #[test]
    fn galois_conjugation_on_qi() {
        let f = wellknown::QI.clone();
        let i = f.gen().unwrap();
        let a = i.mul_rat(&rat(2, 1)).add(&f.from_int(3)); // 3 + 2i
        let conj = a.galois_map(&i.neg());
        assert_eq!(conj, i.mul_rat(&rat(-2, 1)).add(&f.from_int(3)));
    }
}
