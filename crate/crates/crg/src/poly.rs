//! Sparse multivariate polynomials over [`Elem`] with global and local
//! monomial orderings, plus the text grammar used by the CLI.

use crate::field::{Elem, Field, Rat};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering as CmpOrd;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("ring mismatch")]
    RingMismatch,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Monomial: exponent vector, length = ring variable count.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(n: usize) -> Self {
        Mono(vec![0; n])
    }

    pub fn deg(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Monomial orderings. The first three are global; LOCAL_DS is the local
/// degree-anticompatible ordering used by the singular module (Mora).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonOrd {
    Grevlex,
    Lex,
    /// Block elimination: the first k variables are eliminated (any monomial
    /// involving them is larger); grevlex within each block.
    BlockElim(usize),
    /// Local: smaller total degree is larger; grevlex tie-break.
    LocalDs,
}

impl MonOrd {
    pub fn is_global(&self) -> bool {
        !matches!(self, MonOrd::LocalDs)
    }

    fn grevlex_cmp(a: &[u32], b: &[u32]) -> CmpOrd {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        match da.cmp(&db) {
            CmpOrd::Equal => {
                // last variable with differing exponent: smaller exponent wins
                for i in (0..a.len()).rev() {
                    match a[i].cmp(&b[i]) {
                        CmpOrd::Equal => continue,
                        CmpOrd::Less => return CmpOrd::Greater,
                        CmpOrd::Greater => return CmpOrd::Less,
                    }
                }
                CmpOrd::Equal
            }
            o => o,
        }
    }

    /// Compare monomials; Greater means "comes first" (leading).
    pub fn cmp(&self, a: &Mono, b: &Mono) -> CmpOrd {
        match self {
            MonOrd::Grevlex => Self::grevlex_cmp(&a.0, &b.0),
            MonOrd::Lex => {
                for i in 0..a.0.len() {
                    match a.0[i].cmp(&b.0[i]) {
                        CmpOrd::Equal => continue,
                        o => return o,
                    }
                }
                CmpOrd::Equal
            }
            MonOrd::BlockElim(k) => {
                let c = Self::grevlex_cmp(&a.0[..*k], &b.0[..*k]);
                if c != CmpOrd::Equal {
                    return c;
                }
                Self::grevlex_cmp(&a.0[*k..], &b.0[*k..])
            }
            MonOrd::LocalDs => {
                let da = a.deg();
                let db = b.deg();
                match db.cmp(&da) {
                    CmpOrd::Equal => Self::grevlex_cmp(&a.0, &b.0),
                    o => o, // smaller degree is larger
                }
            }
        }
    }
}

/// Polynomial ring: named variables, coefficient field, monomial ordering.
#[derive(Clone, Debug)]
pub struct Ring {
    pub vars: Vec<String>,
    pub field: Field,
    pub order: MonOrd,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(vars: &[&str], field: &Field, order: MonOrd) -> RingRef {
        Arc::new(Ring {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            field: field.clone(),
            order,
        })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn compatible(&self, other: &Ring) -> bool {
        self.vars == other.vars && self.field == other.field && self.order == other.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same ring with a different ordering.
    pub fn with_order(self: &Arc<Self>, order: MonOrd) -> RingRef {
        Arc::new(Ring { vars: self.vars.clone(), field: self.field.clone(), order })
    }
}

/// Sparse multivariate polynomial; terms sorted descending by ring ordering.
#[derive(Clone, Debug)]
pub struct MPoly {
    pub ring: RingRef,
    pub terms: Vec<(Mono, Elem)>,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}
impl Eq for MPoly {}

impl MPoly {
    pub fn zero(ring: &RingRef) -> Self {
        MPoly { ring: ring.clone(), terms: vec![] }
    }

    pub fn one(ring: &RingRef) -> Self {
        MPoly::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &RingRef, c: Elem) -> Self {
        if c.is_zero() {
            return MPoly::zero(ring);
        }
        MPoly { ring: ring.clone(), terms: vec![(Mono::one(ring.nvars()), c)] }
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        let mut e = vec![0; ring.nvars()];
        e[i] = 1;
        MPoly { ring: ring.clone(), terms: vec![(Mono(e), ring.field.one())] }
    }

    pub fn monomial(ring: &RingRef, m: Mono, c: Elem) -> Self {
        if c.is_zero() {
            return MPoly::zero(ring);
        }
        MPoly { ring: ring.clone(), terms: vec![(m, c)] }
    }

    pub fn from_terms(ring: &RingRef, terms: Vec<(Mono, Elem)>) -> Self {
        let mut map: HashMap<Mono, Elem> = HashMap::new();
        for (m, c) in terms {
            match map.entry(m) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let v = e.get().add(&c);
                    if v.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = v;
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    if !c.is_zero() {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<(Mono, Elem)> = map.into_iter().collect();
        let ord = ring.order;
        terms.sort_by(|(a, _), (b, _)| ord.cmp(b, a));
        MPoly { ring: ring.clone(), terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term under the ring ordering.
    pub fn lt(&self) -> Option<(&Mono, &Elem)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn lm(&self) -> Option<&Mono> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn lc(&self) -> Option<&Elem> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.deg()).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.deg()).min().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.deg() == w[1].0.deg())
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        assert!(self.ring.compatible(&other.ring), "ring mismatch");
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        MPoly::from_terms(&self.ring, terms)
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        assert!(self.ring.compatible(&other.ring), "ring mismatch");
        if self.is_zero() || other.is_zero() {
            return MPoly::zero(&self.ring);
        }
        let mut map: HashMap<Mono, Elem> = HashMap::with_capacity(self.nterms() * other.nterms());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match map.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let v = e.get().add(&c);
                        if v.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = v;
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<(Mono, Elem)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let ord = self.ring.order;
        terms.sort_by(|(a, _), (b, _)| ord.cmp(b, a));
        MPoly { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &Elem) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.ring);
        }
        MPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.mul(c))).collect(),
        }
    }

    pub fn scale_rat(&self, q: &Rat) -> MPoly {
        if q.is_zero() {
            return MPoly::zero(&self.ring);
        }
        MPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.mul_rat(q))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal partial derivative.
    pub fn derivative(&self, var: usize) -> MPoly {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut nm = m.clone();
            nm.0[var] = e - 1;
            terms.push((nm, c.mul(&self.ring.field.from_int(e as i64))));
        }
        MPoly::from_terms(&self.ring, terms)
    }

    /// Substitute 1 for a variable; result lives in a ring without it.
    pub fn dehomogenize(&self, var: usize) -> Result<MPoly, PolyError> {
        if !self.is_homogeneous() {
            return Err(PolyError::NotHomogeneous);
        }
        Ok(self.substitute_one(var))
    }

    /// Substitute 1 for a variable without the homogeneity requirement.
    pub fn substitute_one(&self, var: usize) -> MPoly {
        let mut vars: Vec<&str> = Vec::new();
        for (i, v) in self.ring.vars.iter().enumerate() {
            if i != var {
                vars.push(v);
            }
        }
        let nring = Ring::new(&vars, &self.ring.field, self.ring.order);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = Vec::with_capacity(m.0.len() - 1);
                for (i, &x) in m.0.iter().enumerate() {
                    if i != var {
                        e.push(x);
                    }
                }
                (Mono(e), c.clone())
            })
            .collect();
        MPoly::from_terms(&nring, terms)
    }

    /// Replace every variable x_i by x_i^k.
    pub fn power_substitute(&self, k: u32) -> MPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Mono(m.0.iter().map(|e| e * k).collect()), c.clone()))
            .collect();
        MPoly::from_terms(&self.ring, terms)
    }

    /// Exact evaluation at a point.
    pub fn evaluate(&self, point: &[Elem]) -> Elem {
        assert_eq!(point.len(), self.ring.nvars(), "point length");
        // determine the common field
        let mut field = self.ring.field.clone();
        for p in point {
            if p.field.degree() > field.degree() {
                field = p.field.clone();
            }
        }
        // cache powers per variable
        let maxe: Vec<u32> = (0..self.ring.nvars())
            .map(|i| self.terms.iter().map(|(m, _)| m.0[i]).max().unwrap_or(0))
            .collect();
        let mut pows: Vec<Vec<Elem>> = Vec::with_capacity(point.len());
        for (i, p) in point.iter().enumerate() {
            let mut v = vec![field.one()];
            for e in 1..=maxe[i] {
                let last = v[(e - 1) as usize].clone();
                v.push(last.mul(p));
            }
            pows.push(v);
        }
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&pows[i][e as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitute variables by polynomials (same target ring for all images).
    pub fn substitute(&self, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.ring.nvars());
        let tring = images
            .first()
            .map(|p| p.ring.clone())
            .unwrap_or_else(|| self.ring.clone());
        let maxe: Vec<u32> = (0..self.ring.nvars())
            .map(|i| self.terms.iter().map(|(m, _)| m.0[i]).max().unwrap_or(0))
            .collect();
        let mut pows: Vec<Vec<MPoly>> = Vec::with_capacity(images.len());
        for (i, img) in images.iter().enumerate() {
            let mut v = vec![MPoly::one(&tring)];
            for e in 1..=maxe[i] {
                let last = v[(e - 1) as usize].clone();
                v.push(last.mul(img));
            }
            pows.push(v);
        }
        let mut acc = MPoly::zero(&tring);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(&tring, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&pows[i][e as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Group action on polynomials: (act_matrix(f, M))(x) = f(M x).
    pub fn act_matrix(&self, m: &[Vec<Elem>]) -> MPoly {
        let n = self.ring.nvars();
        assert_eq!(m.len(), n, "matrix size");
        // target ring: promote field if the matrix lives in an extension
        let mut field = self.ring.field.clone();
        for row in m {
            for e in row {
                if e.field.degree() > field.degree() {
                    field = e.field.clone();
                }
            }
        }
        let tring = if field == self.ring.field {
            self.ring.clone()
        } else {
            Arc::new(Ring { vars: self.ring.vars.clone(), field, order: self.ring.order })
        };
        let images: Vec<MPoly> = (0..n)
            .map(|i| {
                let mut acc = MPoly::zero(&tring);
                for (j, _) in self.ring.vars.iter().enumerate() {
                    let c = &m[i][j];
                    if !c.is_zero() {
                        acc = acc.add(&MPoly::var(&tring, j).scale(c));
                    }
                }
                acc
            })
            .collect();
        let moved = MPoly::from_terms(
            &tring,
            self.terms.iter().map(|(mm, c)| (mm.clone(), c.clone())).collect(),
        );
        moved.substitute(&images)
    }

    /// Content over Q (gcd of rational coefficients) when all coefficients
    /// are rational; 1 otherwise.
    pub fn rational_content(&self) -> Rat {
        use num_integer::Integer;
        let mut num = num_bigint::BigInt::zero();
        let mut den = num_bigint::BigInt::one();
        for (_, c) in &self.terms {
            let Some(q) = c.as_rat() else { return Rat::one() };
            num = num.gcd(q.numer());
            den = den.lcm(q.denom());
        }
        if num.is_zero() {
            Rat::one()
        } else {
            Rat::new(num, den)
        }
    }

    /// Strip rational content and normalize the leading coefficient to be 1
    /// when it is rational, else scale so the leading coefficient is 1.
    pub fn monic(&self) -> MPoly {
        match self.lc() {
            None => self.clone(),
            Some(c) => {
                let inv = c.inv().unwrap();
                self.scale(&inv)
            }
        }
    }

    /// Move into a ring with the same variables but possibly different order
    /// or a larger field.
    pub fn into_ring(&self, ring: &RingRef) -> MPoly {
        assert_eq!(self.ring.vars, ring.vars, "variable mismatch");
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let c = if c.field == ring.field {
                    c.clone()
                } else {
                    // promote rationals into the new field
                    assert!(c.is_rational(), "cannot move irrational coefficients");
                    ring.field.from_rat(c.as_rat().unwrap().clone())
                };
                (m.clone(), c)
            })
            .collect();
        MPoly::from_terms(ring, terms)
    }

    /// Embed into a ring with more variables (matching names map over).
    pub fn embed(&self, ring: &RingRef) -> MPoly {
        let map: Vec<usize> = self
            .ring
            .vars
            .iter()
            .map(|v| ring.var_index(v).expect("missing variable in target ring"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; ring.nvars()];
                for (i, &x) in m.0.iter().enumerate() {
                    e[map[i]] = x;
                }
                let c = if c.field == ring.field {
                    c.clone()
                } else {
                    ring.field.from_rat(c.as_rat().expect("irrational coefficient").clone())
                };
                (Mono(e), c)
            })
            .collect();
        MPoly::from_terms(ring, terms)
    }

    /// Coefficient of a monomial.
    pub fn coeff(&self, m: &Mono) -> Elem {
        for (mm, c) in &self.terms {
            if mm == m {
                return c.clone();
            }
        }
        self.ring.field.zero()
    }

    /// View as univariate in `var` with MPoly coefficients (constant-first).
    pub fn as_univariate(&self, var: usize) -> Vec<MPoly> {
        let d = self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0) as usize;
        let mut out = vec![MPoly::zero(&self.ring); d + 1];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut nm = m.clone();
            nm.0[var] = 0;
            out[e] = out[e].add(&MPoly::monomial(&self.ring, nm, c.clone()));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Text grammar: integer/rational coefficients, ^, *, variables, generator t
// ---------------------------------------------------------------------------

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    ring: &'a RingRef,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.chars[self.pos..].iter().find(|c| !c.is_whitespace()).copied()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.pos < self.chars.len() && self.chars[self.pos] == c {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_expr(&mut self) -> Result<MPoly, PolyError> {
        let mut acc = if self.eat('-') {
            self.parse_term()?.neg()
        } else {
            self.eat('+');
            self.parse_term()?
        };
        loop {
            self.skip_ws();
            if self.eat('+') {
                acc = acc.add(&self.parse_term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.parse_term()?);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<MPoly, PolyError> {
        let mut acc = self.parse_power()?;
        loop {
            self.skip_ws();
            if self.eat('*') {
                acc = acc.mul(&self.parse_power()?);
            } else {
                // implicit multiplication: a variable, digit or '(' follows
                match self.peek() {
                    Some(c) if c.is_ascii_alphabetic() || c == '(' => {
                        acc = acc.mul(&self.parse_power()?);
                    }
                    _ => break,
                }
            }
        }
        Ok(acc)
    }

    fn parse_power(&mut self) -> Result<MPoly, PolyError> {
        let base = self.parse_atom()?;
        self.skip_ws();
        if self.eat('^') {
            self.skip_ws();
            let e = self.parse_uint()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn parse_uint(&mut self) -> Result<u32, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(PolyError::Parse(format!("expected integer at {}", self.pos)));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| PolyError::Parse(format!("bad integer {s}")))
    }

    fn parse_atom(&mut self) -> Result<MPoly, PolyError> {
        self.skip_ws();
        if self.eat('(') {
            let e = self.parse_expr()?;
            if !self.eat(')') {
                return Err(PolyError::Parse("expected )".into()));
            }
            return Ok(e);
        }
        if self.eat('-') {
            return Ok(self.parse_power()?.neg());
        }
        let c = self
            .chars
            .get(self.pos)
            .copied()
            .ok_or_else(|| PolyError::Parse("unexpected end".into()))?;
        if c.is_ascii_digit() {
            // rational: int [/ int]
            let n = self.parse_bigint()?;
            self.skip_ws();
            let q = if self.eat('/') {
                let d = self.parse_bigint()?;
                if d.is_zero() {
                    return Err(PolyError::Parse("zero denominator".into()));
                }
                Rat::new(n, d)
            } else {
                Rat::from_integer(n)
            };
            return Ok(MPoly::constant(self.ring, self.ring.field.from_rat(q)));
        }
        if c.is_ascii_alphabetic() {
            let start = self.pos;
            self.pos += 1;
            while self.pos < self.chars.len()
                && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
            {
                self.pos += 1;
            }
            let name: String = self.chars[start..self.pos].iter().collect();
            if name == "t" {
                let g = self
                    .ring
                    .field
                    .gen()
                    .ok_or_else(|| PolyError::Parse("t used over Q".into()))?;
                return Ok(MPoly::constant(self.ring, g));
            }
            let idx = self
                .ring
                .var_index(&name)
                .ok_or_else(|| PolyError::Parse(format!("unknown variable {name}")))?;
            return Ok(MPoly::var(self.ring, idx));
        }
        Err(PolyError::Parse(format!("unexpected character {c:?} at {}", self.pos)))
    }

    fn parse_bigint(&mut self) -> Result<num_bigint::BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(PolyError::Parse("expected integer".into()));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| PolyError::Parse(format!("bad integer {s}")))
    }
}

/// Parse a polynomial in the text grammar into the given ring.
pub fn parse_poly(ring: &RingRef, input: &str) -> Result<MPoly, PolyError> {
    let mut p = Parser { chars: input.chars().collect(), pos: 0, ring };
    let out = p.parse_expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(PolyError::Parse(format!("trailing input at {}", p.pos)));
    }
    Ok(out)
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.ring.vars[i].clone()
                    } else {
                        format!("{}^{}", self.ring.vars[i], e)
                    }
                })
                .collect();
            let mstr = mono.join("*");
            let (sign, mag) = coeff_string(c);
            if first {
                first = false;
                if sign < 0 {
                    write!(f, "-")?;
                }
            } else if sign < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mstr.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{mstr}")?;
            } else {
                write!(f, "{mag}*{mstr}")?;
            }
        }
        Ok(())
    }
}

/// (sign, magnitude-string) of a coefficient for printing.
fn coeff_string(c: &Elem) -> (i32, String) {
    if let Some(q) = c.as_rat() {
        let sign = if q.is_negative() { -1 } else { 1 };
        let mag = q.abs();
        let s = if mag.denom().is_one() {
            mag.numer().to_string()
        } else {
            format!("{}/{}", mag.numer(), mag.denom())
        };
        (sign, s)
    } else {
        (1, format!("({c})"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, wellknown};

    fn qring() -> RingRef {
        Ring::new(&["x1", "x2", "x3"], &Field::Q, MonOrd::Grevlex)
    }

    #[test]
    fn parse_and_print_roundtrip() {
        let r = qring();
        let p = parse_poly(&r, "x1^2 - 2*x2*x3 + 7/3").unwrap();
        let s = p.to_string();
        let q = parse_poly(&r, &s).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn implicit_multiplication() {
        let r = qring();
        let a = parse_poly(&r, "3 x1 x2").unwrap();
        let b = parse_poly(&r, "3*x1*x2").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn product_difference_of_squares() {
        let r = qring();
        let a = parse_poly(&r, "x1+x2").unwrap();
        let b = parse_poly(&r, "x1-x2").unwrap();
        assert_eq!(a.mul(&b), parse_poly(&r, "x1^2-x2^2").unwrap());
    }

    #[test]
    fn power_sum_identity() {
        // sigma1[2]^2 - 2 sigma2[2] = sum of x_i^4 in 3 vars
        let r = qring();
        let s1 = parse_poly(&r, "x1^2+x2^2+x3^2").unwrap();
        let s2 = parse_poly(&r, "x1^2*x2^2+x1^2*x3^2+x2^2*x3^2").unwrap();
        let lhs = s1.mul(&s1).sub(&s2.scale_rat(&rat(2, 1)));
        assert_eq!(lhs, parse_poly(&r, "x1^4+x2^4+x3^4").unwrap());
    }

    #[test]
    fn derivative_basic() {
        let r = qring();
        let p = parse_poly(&r, "x1^3*x2").unwrap();
        assert_eq!(p.derivative(0), parse_poly(&r, "3*x1^2*x2").unwrap());
        assert_eq!(MPoly::one(&r).derivative(1), MPoly::zero(&r));
    }

    #[test]
    fn dehomogenize_chart() {
        let r = qring();
        let p = parse_poly(&r, "x1^2 + x2*x3").unwrap();
        let q = p.dehomogenize(2).unwrap();
        assert_eq!(q.ring.vars, vec!["x1", "x2"]);
        assert_eq!(q, parse_poly(&q.ring, "x1^2 + x2").unwrap());
        // non-homogeneous input is rejected
        let bad = parse_poly(&r, "x1^2 + x2").unwrap();
        assert!(bad.dehomogenize(0).is_err());
    }

    #[test]
    fn power_substitute_properties() {
        let r = qring();
        let p = parse_poly(&r, "x1 + x2").unwrap();
        assert_eq!(p.power_substitute(1), p);
        assert_eq!(p.power_substitute(2), parse_poly(&r, "x1^2 + x2^2").unwrap());
        // homomorphism on random pairs
        let a = parse_poly(&r, "x1^2 - 3*x2*x3 + 1").unwrap();
        let b = parse_poly(&r, "x3^2 + 2*x1").unwrap();
        assert_eq!(a.mul(&b).power_substitute(3), a.power_substitute(3).mul(&b.power_substitute(3)));
        // degree multiplies
        assert_eq!(a.power_substitute(3).total_degree(), 6);
    }

    #[test]
    fn evaluate_exact() {
        let r = qring();
        let p = parse_poly(&r, "x1^2 + x2^2").unwrap();
        let v = p.evaluate(&[Field::Q.from_int(3), Field::Q.from_int(4), Field::Q.zero()]);
        assert_eq!(v, Field::Q.from_int(25));
    }

    #[test]
    fn homogeneous_scaling_property() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let r = qring();
        let p = parse_poly(&r, "x1^3 - 2*x1*x2*x3 + x3^3").unwrap(); // degree 3
        for _ in 0..10 {
            let lam = Field::Q.from_int(rng.gen_range(-5..6));
            let pt: Vec<Elem> = (0..3).map(|_| Field::Q.from_int(rng.gen_range(-5..6))).collect();
            let scaled: Vec<Elem> = pt.iter().map(|x| x.mul(&lam)).collect();
            assert_eq!(p.evaluate(&scaled), lam.pow(3).mul(&p.evaluate(&pt)));
        }
    }

    #[test]
    fn act_identity_and_swap() {
        let r = qring();
        let p = parse_poly(&r, "x1^2 - x2^2").unwrap();
        let f = &r.field;
        let id: Vec<Vec<Elem>> = (0..3)
            .map(|i| (0..3).map(|j| if i == j { f.one() } else { f.zero() }).collect())
            .collect();
        assert_eq!(p.act_matrix(&id), p);
        // swap x1 <-> x2
        let mut sw = id.clone();
        sw.swap(0, 1);
        assert_eq!(p.act_matrix(&sw), parse_poly(&r, "x2^2 - x1^2").unwrap());
    }

    #[test]
    fn lt_multiplicative_on_random_pairs() {
        use rand::{Rng, SeedableRng};
        for ord in [MonOrd::Grevlex, MonOrd::Lex, MonOrd::BlockElim(1), MonOrd::LocalDs] {
            let r = Ring::new(&["x1", "x2", "x3"], &Field::Q, ord);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
            for _ in 0..100 {
                let mk = |rng: &mut rand_chacha::ChaCha8Rng| {
                    let terms: Vec<(Mono, Elem)> = (0..4)
                        .map(|_| {
                            let m = Mono(vec![
                                rng.gen_range(0..4),
                                rng.gen_range(0..4),
                                rng.gen_range(0..4),
                            ]);
                            (m, Field::Q.from_int(rng.gen_range(1..7)))
                        })
                        .collect();
                    MPoly::from_terms(&r, terms)
                };
                let a = mk(&mut rng);
                let b = mk(&mut rng);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let prod = a.mul(&b);
                // with positive coefficients no cancellation occurs
                assert_eq!(prod.lm().unwrap(), &a.lm().unwrap().mul(b.lm().unwrap()));
            }
        }
    }

    #[test]
    fn local_ordering_prefers_low_degree() {
        let r = Ring::new(&["x", "y"], &Field::Q, MonOrd::LocalDs);
        let p = parse_poly(&r, "x^3 + x*y + y^2 + x^5").unwrap();
        // leading term under ds is the lowest-degree one
        assert_eq!(p.lm().unwrap().deg(), 2);
    }

    #[test]
    fn elimination_order_blocks() {
        let r = Ring::new(&["x", "y", "u"], &Field::Q, MonOrd::BlockElim(2));
        // any monomial containing x or y beats any pure-u monomial
        let a = Mono(vec![1, 0, 0]);
        let b = Mono(vec![0, 0, 9]);
        assert_eq!(r.order.cmp(&a, &b), CmpOrd::Greater);
    }

    #[test]
    fn field_coefficients_parse() {
        let f = wellknown::QZETA3.clone();
        let r = Ring::new(&["x1", "x2"], &f, MonOrd::Grevlex);
        let p = parse_poly(&r, "t*x1 + (1-t)*x2").unwrap();
        assert_eq!(p.nterms(), 2);
        let t = f.gen().unwrap();
        assert_eq!(p.coeff(&Mono(vec![1, 0])), t);
    }

    #[test]
    fn univariate_view() {
        let r = qring();
        let p = parse_poly(&r, "x1^2*x2 + x1*x3 + 5").unwrap();
        let v = p.as_univariate(0);
        assert_eq!(v.len(), 3);
        assert_eq!(v[0], parse_poly(&r, "5").unwrap());
        assert_eq!(v[1], parse_poly(&r, "x3").unwrap());
        assert_eq!(v[2], parse_poly(&r, "x2").unwrap());
    }
}
