//! Dense univariate polynomials: helpers over Q used by the field layer,
//! generic polynomials over any [`Elem`] field, factorization over Q
//! (Zassenhaus), factorization over number fields (Trager), and Sturm
//! real-root counting.
//!
//! Coefficient vectors are constant-first throughout.

use crate::field::{rat_int, Elem, Field, Rat};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

// ---------------------------------------------------------------------------
// Raw Vec<Rat> helpers (used by field.rs for inverse computation)
// ---------------------------------------------------------------------------

pub fn rat_deg(p: &[Rat]) -> usize {
    for i in (0..p.len()).rev() {
        if !p[i].is_zero() {
            return i;
        }
    }
    0
}

fn rat_trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    p
}

fn rat_is_zero(p: &[Rat]) -> bool {
    p.iter().all(|c| c.is_zero())
}

/// Quotient and remainder in Q[t].
pub fn rat_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let b = rat_trim(b.to_vec());
    let db = rat_deg(&b);
    assert!(!rat_is_zero(&b), "division by zero polynomial");
    let mut r = rat_trim(a.to_vec());
    let mut q = vec![Rat::zero(); a.len().max(1)];
    let binv = b[db].recip();
    while !rat_is_zero(&r) && rat_deg(&r) >= db {
        let dr = rat_deg(&r);
        let c = &r[dr] * &binv;
        q[dr - db] = c.clone();
        for i in 0..=db {
            let v = &b[i] * &c;
            r[dr - db + i] -= v;
        }
        r = rat_trim(r);
    }
    (rat_trim(q), r)
}

/// Degree of gcd(a, b) in Q[t].
pub fn rat_gcd_deg(a: &[Rat], b: &[Rat]) -> usize {
    let mut x = rat_trim(a.to_vec());
    let mut y = rat_trim(b.to_vec());
    while !rat_is_zero(&y) {
        let (_, r) = rat_divmod(&x, &y);
        x = y;
        y = r;
    }
    rat_deg(&x)
}

/// Half extended gcd: returns (g, u) with u*a = g mod m and g = gcd(a, m).
pub fn rat_half_xgcd(a: &[Rat], m: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r0 = rat_trim(m.to_vec());
    let mut r1 = rat_trim(a.to_vec());
    let mut u0 = vec![Rat::zero()];
    let mut u1 = vec![Rat::one()];
    while !rat_is_zero(&r1) {
        let (q, r) = rat_divmod(&r0, &r1);
        let qu = rat_mul(&q, &u1);
        let nu = rat_sub(&u0, &qu);
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = nu;
    }
    (r0, u0)
}

pub fn rat_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    rat_trim(out)
}

pub fn rat_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    rat_trim(out)
}

// ---------------------------------------------------------------------------
// Univariate polynomials over an arbitrary coefficient field
// ---------------------------------------------------------------------------

/// Univariate polynomial over a field, constant coefficient first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    pub field: Field,
    pub coeffs: Vec<Elem>,
}

impl UPoly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(field.zero());
        }
        UPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> Self {
        UPoly::new(field, vec![field.zero()])
    }

    pub fn one(field: &Field) -> Self {
        UPoly::new(field, vec![field.one()])
    }

    pub fn x(field: &Field) -> Self {
        UPoly::new(field, vec![field.zero(), field.one()])
    }

    pub fn constant(field: &Field, c: Elem) -> Self {
        UPoly::new(field, vec![c])
    }

    pub fn from_rats(field: &Field, rats: &[Rat]) -> Self {
        UPoly::new(field, rats.iter().map(|r| field.from_rat(r.clone())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn deg(&self) -> usize {
        for i in (0..self.coeffs.len()).rev() {
            if !self.coeffs[i].is_zero() {
                return i;
            }
        }
        0
    }

    pub fn lead(&self) -> &Elem {
        &self.coeffs[self.deg()]
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv().unwrap();
        UPoly::new(&self.field, self.coeffs.iter().map(|c| c.mul(&inv)).collect())
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![self.field.zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = out[i].add(c);
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] = out[i].add(c);
        }
        UPoly::new(&self.field, out)
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![self.field.zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = out[i].add(c);
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] = out[i].sub(c);
        }
        UPoly::new(&self.field, out)
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.deg() + other.deg() + 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] = out[i + j].add(&x.mul(y));
                }
            }
        }
        UPoly::new(&self.field, out)
    }

    pub fn scale(&self, c: &Elem) -> UPoly {
        UPoly::new(&self.field, self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub fn divmod(&self, other: &UPoly) -> (UPoly, UPoly) {
        assert!(!other.is_zero(), "division by zero polynomial");
        let db = other.deg();
        let binv = other.lead().inv().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); self.coeffs.len()];
        let rdeg = |v: &Vec<Elem>| -> Option<usize> {
            (0..v.len()).rev().find(|&i| !v[i].is_zero())
        };
        while let Some(dr) = rdeg(&r) {
            if dr < db {
                break;
            }
            let c = r[dr].mul(&binv);
            q[dr - db] = c.clone();
            for i in 0..=db {
                let v = other.coeffs[i].mul(&c);
                r[dr - db + i] = r[dr - db + i].sub(&v);
            }
        }
        (UPoly::new(&self.field, q), UPoly::new(&self.field, r))
    }

    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn derivative(&self) -> UPoly {
        if self.coeffs.len() <= 1 {
            return UPoly::zero(&self.field);
        }
        let out = (1..self.coeffs.len())
            .map(|i| self.coeffs[i].mul(&self.field.from_int(i as i64)))
            .collect();
        UPoly::new(&self.field, out)
    }

    pub fn squarefree_part(&self) -> UPoly {
        let g = self.gcd(&self.derivative());
        if g.deg() == 0 {
            return self.monic();
        }
        let (q, _) = self.divmod(&g);
        q.monic()
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, inner: &UPoly) -> UPoly {
        let mut acc = UPoly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&UPoly::constant(&self.field, c.clone()));
        }
        acc
    }

    /// Coefficients as rationals; None if any coefficient is irrational.
    pub fn rat_coeffs(&self) -> Option<Vec<Rat>> {
        self.coeffs.iter().map(|c| c.as_rat().cloned()).collect()
    }
}

// ---------------------------------------------------------------------------
// Integer polynomial machinery for Zassenhaus factorization over Q
// ---------------------------------------------------------------------------

fn zx_trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    p
}

fn zx_deg(p: &[BigInt]) -> usize {
    p.len() - 1
}


fn zx_content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
    }
    if g.is_zero() {
        BigInt::one()
    } else {
        g
    }
}

fn zx_primitive(p: &[BigInt]) -> Vec<BigInt> {
    let c = zx_content(p);
    p.iter().map(|x| x / &c).collect()
}

// modular arithmetic helpers over prime p (BigInt to be safe with lifting)

fn mmod(a: &BigInt, p: &BigInt) -> BigInt {
    let r = a % p;
    if r.sign() == num_bigint::Sign::Minus {
        r + p
    } else {
        r
    }
}

fn minv(a: &BigInt, p: &BigInt) -> BigInt {
    // extended euclid
    let (mut r0, mut r1) = (p.clone(), mmod(a, p));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s);
    }
    assert!(r0.is_one(), "not invertible");
    mmod(&s0, p)
}

fn px_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
    v
}

fn px_mul(a: &[BigInt], b: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = mmod(&(&out[i + j] + x * y), p);
        }
    }
    px_trim(out)
}

fn px_divmod(a: &[BigInt], b: &[BigInt], p: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let b = px_trim(b.to_vec());
    let db = zx_deg(&b);
    let mut r = px_trim(a.to_vec());
    let mut q = vec![BigInt::zero(); a.len()];
    let binv = minv(&b[db], p);
    loop {
        let dr = zx_deg(&r);
        if (dr == 0 && r[0].is_zero()) || dr < db {
            break;
        }
        let c = mmod(&(&r[dr] * &binv), p);
        q[dr - db] = c.clone();
        for i in 0..=db {
            r[dr - db + i] = mmod(&(&r[dr - db + i] - &b[i] * &c), p);
        }
        r = px_trim(r);
    }
    (px_trim(q), r)
}

fn px_gcd(a: &[BigInt], b: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let mut x = px_trim(a.to_vec());
    let mut y = px_trim(b.to_vec());
    while !(zx_deg(&y) == 0 && y[0].is_zero()) {
        let (_, r) = px_divmod(&x, &y, p);
        x = y;
        y = r;
    }
    // monic
    let d = zx_deg(&x);
    let inv = minv(&x[d], p);
    px_trim(x.iter().map(|c| mmod(&(c * &inv), p)).collect())
}

fn px_pow_mod(base: &[BigInt], mut e: BigUint, m: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let mut b = px_divmod(base, m, p).1;
    let mut acc = vec![BigInt::one()];
    while !e.is_zero() {
        if (&e % 2u32).is_one() {
            acc = px_divmod(&px_mul(&acc, &b, p), m, p).1;
        }
        e >>= 1;
        if !e.is_zero() {
            b = px_divmod(&px_mul(&b, &b, p), m, p).1;
        }
    }
    acc
}

/// Distinct-degree + equal-degree (Cantor-Zassenhaus) factorization of a
/// squarefree monic polynomial mod p. Returns monic irreducible factors.
fn px_factor_squarefree(f: &[BigInt], p: &BigInt, rng: &mut impl rand::Rng) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut f = px_trim(f.to_vec());
    let mut h = vec![BigInt::zero(), BigInt::one()]; // x
    let mut d = 0usize;
    while zx_deg(&f) > 0 {
        d += 1;
        if 2 * d > zx_deg(&f) {
            out.push(f.clone());
            break;
        }
        // h = x^(p^d) mod f
        h = px_pow_mod(&h, p.to_biguint().unwrap(), &f, p);
        let mut diff = h.clone();
        // diff = h - x
        if diff.len() < 2 {
            diff.resize(2, BigInt::zero());
        }
        diff[1] = mmod(&(&diff[1] - BigInt::one()), p);
        let diff = px_trim(diff);
        let g = px_gcd(&f, &diff, p);
        if zx_deg(&g) > 0 {
            // g is a product of degree-d irreducibles; split by Cantor-Zassenhaus
            let mut stack = vec![g.clone()];
            while let Some(cur) = stack.pop() {
                if zx_deg(&cur) == d {
                    out.push(cur);
                    continue;
                }
                // random split
                loop {
                    let deg = zx_deg(&cur);
                    let r: Vec<BigInt> = (0..deg)
                        .map(|_| BigInt::from(rng.gen_range(0..i64::MAX)) % p)
                        .collect();
                    let r = px_trim(r);
                    let e = (p.to_biguint().unwrap().pow(d as u32) - 1u32) / 2u32;
                    let mut t = px_pow_mod(&r, e, &cur, p);
                    // t - 1
                    t[0] = mmod(&(&t[0] - BigInt::one()), p);
                    let t = px_trim(t);
                    let g2 = px_gcd(&cur, &t, p);
                    let dg = zx_deg(&g2);
                    if dg > 0 && dg < zx_deg(&cur) {
                        let (q, _) = px_divmod(&cur, &g2, p);
                        stack.push(g2);
                        stack.push(q);
                        break;
                    }
                }
            }
            let (q, _) = px_divmod(&f, &g, p);
            f = q;
        }
    }
    out
}

fn hensel_lift_pair(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    p: &BigInt,
    iters: u32,
) -> (Vec<BigInt>, Vec<BigInt>, BigInt) {
    // lift factorization f = g*h mod p to mod p^(2^iters); f, g monic*, h monic
    // standard quadratic Hensel with Bezout update
    // compute s, t with s g + t h = 1 mod p
    let (mut g, mut h) = (px_trim(g.to_vec()), px_trim(h.to_vec()));
    // extended euclid over F_p
    let (s0, t0) = {
        let (mut r0, mut r1) = (g.clone(), h.clone());
        let (mut s0, mut s1) = (vec![BigInt::one()], vec![BigInt::zero()]);
        let (mut t0, mut t1) = (vec![BigInt::zero()], vec![BigInt::one()]);
        while !(zx_deg(&r1) == 0 && r1[0].is_zero()) {
            let (q, r) = px_divmod(&r0, &r1, p);
            let new_r = r;
            r0 = std::mem::replace(&mut r1, new_r);
            let qs = px_mul(&q, &s1, p);
            let ns = px_sub_mod(&s0, &qs, p);
            s0 = std::mem::replace(&mut s1, ns);
            let qt = px_mul(&q, &t1, p);
            let nt = px_sub_mod(&t0, &qt, p);
            t0 = std::mem::replace(&mut t1, nt);
        }
        let inv = minv(&r0[0], p);
        let s = px_trim(s0.iter().map(|c| mmod(&(c * &inv), p)).collect());
        let t = px_trim(t0.iter().map(|c| mmod(&(c * &inv), p)).collect());
        (s, t)
    };
    let (mut s, mut t) = (s0, t0);
    let mut q = p.clone();
    for _ in 0..iters {
        let q2 = &q * &q;
        // e = f - g h mod q2
        let gh = pxq_mul(&g, &h, &q2);
        let e = pxq_sub(f, &gh, &q2);
        // (qd, rd) = divmod(s e, h) mod q2
        let se = pxq_mul(&s, &e, &q2);
        let (qd, rd) = pxq_divmod_monic(&se, &h, &q2);
        // g' = g + t e + qd g ; h' = h + rd
        let te = pxq_mul(&t, &e, &q2);
        let qdg = pxq_mul(&qd, &g, &q2);
        g = pxq_add(&pxq_add(&g, &te, &q2), &qdg, &q2);
        h = pxq_add(&h, &rd, &q2);
        // update Bezout: b = s g + t h - 1
        let sg = pxq_mul(&s, &g, &q2);
        let th = pxq_mul(&t, &h, &q2);
        let mut b = pxq_add(&sg, &th, &q2);
        b[0] = mmod(&(&b[0] - BigInt::one()), &q2);
        let b = px_trim(b);
        // (c, d) = divmod(s b, h); s' = s - d; t' = t - t b - c g
        let sb = pxq_mul(&s, &b, &q2);
        let (c, d) = pxq_divmod_monic(&sb, &h, &q2);
        s = pxq_sub(&s, &d, &q2);
        let tb = pxq_mul(&t, &b, &q2);
        let cg = pxq_mul(&c, &g, &q2);
        t = pxq_sub(&pxq_sub(&t, &tb, &q2), &cg, &q2);
        q = q2;
    }
    (g, h, q)
}

fn px_sub_mod(a: &[BigInt], b: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    px_trim(out.iter().map(|c| mmod(c, p)).collect())
}

fn pxq_mul(a: &[BigInt], b: &[BigInt], q: &BigInt) -> Vec<BigInt> {
    px_mul(a, b, q)
}

fn pxq_add(a: &[BigInt], b: &[BigInt], q: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    px_trim(out.iter().map(|c| mmod(c, q)).collect())
}

fn pxq_sub(a: &[BigInt], b: &[BigInt], q: &BigInt) -> Vec<BigInt> {
    px_sub_mod(a, b, q)
}

fn pxq_divmod_monic(a: &[BigInt], b: &[BigInt], q: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    // b must be monic mod q
    let b = px_trim(b.to_vec());
    let db = zx_deg(&b);
    debug_assert!(b[db].is_one());
    let mut r = px_trim(a.to_vec());
    let mut qq = vec![BigInt::zero(); a.len()];
    loop {
        let dr = zx_deg(&r);
        if (dr == 0 && r[0].is_zero()) || dr < db {
            break;
        }
        let c = r[dr].clone();
        qq[dr - db] = c.clone();
        for i in 0..=db {
            r[dr - db + i] = mmod(&(&r[dr - db + i] - &b[i] * &c), q);
        }
        r = px_trim(r);
    }
    (px_trim(qq), r)
}

/// Symmetric remainder in (-q/2, q/2].
fn symrem(a: &BigInt, q: &BigInt) -> BigInt {
    let r = mmod(a, q);
    if &r * 2 > *q {
        r - q
    } else {
        r
    }
}

/// Factor a primitive squarefree polynomial over Z into irreducible factors
/// over Q (returned as primitive integer polynomials with positive lead).
fn zx_factor_squarefree(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let f = zx_primitive(&zx_trim(f.to_vec()));
    let n = zx_deg(&f);
    if n == 0 {
        return vec![];
    }
    if n == 1 {
        return vec![f];
    }
    // pick a prime p not dividing lead(f) with f squarefree mod p
    let small_primes: Vec<i64> = {
        let mut v = Vec::new();
        let mut c = 3i64;
        while v.len() < 200 {
            if (2..c).take_while(|d| d * d <= c).all(|d| c % d != 0) {
                v.push(c);
            }
            c += 2;
        }
        v
    };
    let mut chosen = None;
    for &pi in &small_primes {
        let p = BigInt::from(pi);
        if (&f[n] % &p).is_zero() {
            continue;
        }
        let fp: Vec<BigInt> = f.iter().map(|c| mmod(c, &p)).collect();
        let fp = px_trim(fp);
        if zx_deg(&fp) != n {
            continue;
        }
        let dfp: Vec<BigInt> = (1..=zx_deg(&fp))
            .map(|i| mmod(&(&fp[i] * BigInt::from(i as i64)), &p))
            .collect();
        let dfp = px_trim(dfp);
        if dfp.iter().all(|c| c.is_zero()) {
            continue;
        }
        let g = px_gcd(&fp, &dfp, &p);
        if zx_deg(&g) == 0 {
            chosen = Some(p);
            break;
        }
    }
    let p = chosen.expect("no good prime found");
    // factor mod p
    let fp: Vec<BigInt> = px_trim(f.iter().map(|c| mmod(c, &p)).collect());
    let lead_inv = minv(&fp[n], &p);
    let fp_monic: Vec<BigInt> = fp.iter().map(|c| mmod(&(c * &lead_inv), &p)).collect();
    let mut modular = px_factor_squarefree(&fp_monic, &p, &mut rng);
    modular.sort_by_key(|g| zx_deg(g));
    if modular.len() == 1 {
        return vec![f];
    }
    // Landau-Mignotte style bound on factor coefficients
    let norm: BigInt = {
        let s: BigInt = f.iter().map(|c| c * c).sum();
        s.sqrt() + 1
    };
    let bound: BigInt = (BigInt::one() << (n + 1)) * &norm * f[n].abs();
    // lift to p^(2^k) > 2*bound
    let mut iters = 0u32;
    let mut q = p.clone();
    while q <= &bound * 2 {
        q = &q * &q;
        iters += 1;
    }
    // iterated pairwise lifting: lift factor tree
    fn lift_tree(
        f: &[BigInt],
        factors: &[Vec<BigInt>],
        p: &BigInt,
        iters: u32,
    ) -> Vec<Vec<BigInt>> {
        if factors.len() == 1 {
            // make f monic-lifted copy of the single factor: the caller divides out
            return vec![px_trim(f.to_vec())];
        }
        let mid = factors.len() / 2;
        let (lo, hi) = factors.split_at(mid);
        let mut g = vec![BigInt::one()];
        for fac in lo {
            g = px_mul(&g, fac, p);
        }
        let mut h = vec![BigInt::one()];
        for fac in hi {
            h = px_mul(&h, fac, p);
        }
        let (gl, hl, q) = hensel_lift_pair(f, &g, &h, p, iters);
        let _ = q;
        let mut out = lift_tree(&gl, lo, p, iters);
        out.extend(lift_tree(&hl, hi, p, iters));
        out
    }
    // make f monic over Z[1/lc]: work with f* = lc^(n-1) f(x/lc) monic
    let lc = f[n].clone();
    let fstar: Vec<BigInt> = (0..=n)
        .map(|i| &f[i] * lc.modpow(&BigInt::from((n - 1).max(i) as i64 - i as i64), &(&bound * 4 + 1)))
        .collect();
    // simpler: keep f non-monic and lift with monic modular factors times lead.
    let _ = fstar;
    // We lift the monic factorization of fp_monic against f scaled monic:
    // f_monic(x) = f(x/lc)*lc^(n-1) has integer coefficients.
    let mut f_monic = vec![BigInt::zero(); n + 1];
    for i in 0..=n {
        // coefficient of x^i is f[i]*lc^(n-1-i)
        f_monic[i] = if i == n {
            BigInt::one()
        } else {
            &f[i] * lc.pow((n - 1 - i) as u32)
        };
    }
    // transform modular factors accordingly: gi(x) -> gi_monic under x -> x/lc
    // Each monic gi of degree d maps to gi*(x) = lc^d gi(x/lc) mod p, still monic.
    let modular_star: Vec<Vec<BigInt>> = modular
        .iter()
        .map(|g| {
            let d = zx_deg(g);
            (0..=d)
                .map(|i| mmod(&(&g[i] * lc.modpow(&BigInt::from((d - i) as i64), &p)), &p))
                .collect::<Vec<_>>()
        })
        .map(px_trim)
        .collect();
    let qfull = {
        let mut q = p.clone();
        for _ in 0..iters {
            q = &q * &q;
        }
        q
    };
    let f_monic_mod: Vec<BigInt> = f_monic.iter().map(|c| mmod(c, &qfull)).collect();
    let lifted = lift_tree(&f_monic_mod, &modular_star, &p, iters);
    // recombination over subsets
    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut result: Vec<Vec<BigInt>> = Vec::new();
    let mut cur_f = f_monic; // monic, integer coefficients
    let mut subset_size = 1usize;
    'outer: while 2 * subset_size <= remaining.len() {
        let idxs: Vec<usize> = (0..remaining.len()).collect();
        for combo in combinations(&idxs, subset_size) {
            // candidate = product of chosen lifted factors mod qfull, sym-centered
            let mut cand = vec![BigInt::one()];
            for &i in &combo {
                cand = px_mul(&cand, &remaining[i], &qfull);
            }
            let cand: Vec<BigInt> = cand.iter().map(|c| symrem(c, &qfull)).collect();
            let cand = zx_trim(cand);
            // trial divide cur_f by cand over Q (both monic-ish; cand monic)
            if let Some(quot) = zx_exact_div(&cur_f, &cand) {
                // found a true factor (in the x -> lc x transformed world)
                result.push(cand.clone());
                cur_f = quot;
                let mut keep = Vec::new();
                for (i, fac) in remaining.into_iter().enumerate() {
                    if !combo.contains(&i) {
                        keep.push(fac);
                    }
                }
                remaining = keep;
                continue 'outer;
            }
        }
        subset_size += 1;
    }
    if zx_deg(&cur_f) > 0 {
        result.push(cur_f);
    }
    // undo the x -> x/lc substitution: factor g*(x) corresponds to g(x) =
    // primitive part of g*(lc x)
    result
        .into_iter()
        .map(|g| {
            let d = zx_deg(&g);
            let mapped: Vec<BigInt> = (0..=d).map(|i| &g[i] * lc.pow(i as u32)).collect();
            let mut prim = zx_primitive(&mapped);
            if prim.last().unwrap().sign() == num_bigint::Sign::Minus {
                prim = prim.iter().map(|c| -c).collect();
            }
            prim
        })
        .collect()
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = items.len();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exact division over Z (None if not divisible).
fn zx_exact_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let a = zx_trim(a.to_vec());
    let b = zx_trim(b.to_vec());
    let (da, db) = (zx_deg(&a), zx_deg(&b));
    if db > da {
        return None;
    }
    let mut r = a;
    let mut q = vec![BigInt::zero(); da - db + 1];
    for k in (0..=(da - db)).rev() {
        let dr = zx_deg(&r);
        if dr < db + k {
            continue;
        }
        let (c, rem) = r[db + k].div_rem(&b[db]);
        if !rem.is_zero() {
            return None;
        }
        q[k] = c.clone();
        for i in 0..=db {
            let v = &b[i] * &c;
            r[i + k] -= v;
        }
        r = zx_trim(r);
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(zx_trim(q))
    } else {
        None
    }
}

/// Factor an arbitrary polynomial over Q. Returns (factor, multiplicity)
/// pairs with monic factors, plus the overall rational constant, so that the
/// product reconstructs the input.
pub fn factor_over_q(p: &UPoly) -> (Rat, Vec<(UPoly, usize)>) {
    assert_eq!(p.field, Field::Q, "factor_over_q needs rational coefficients");
    if p.is_zero() {
        return (Rat::zero(), vec![]);
    }
    if p.deg() == 0 {
        return (p.coeffs[0].as_rat().unwrap().clone(), vec![]);
    }
    // constant = leading coefficient once all factors are monic
    let lead = p.lead().as_rat().unwrap().clone();
    // squarefree decomposition by repeated gcd
    let mut rest = p.monic();
    let mut factors: Vec<(UPoly, usize)> = Vec::new();
    let mut mult = 1usize;
    loop {
        let g = rest.gcd(&rest.derivative());
        let (sqf, _) = rest.divmod(&g); // squarefree part at this level
        // factor sqf over Q via Zassenhaus
        if sqf.deg() > 0 {
            let rats = sqf.rat_coeffs().unwrap();
            // scale to integer
            let mut den = BigInt::one();
            for c in &rats {
                den = den.lcm(c.denom());
            }
            let ints: Vec<BigInt> = rats.iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
            for fac in zx_factor_squarefree(&ints) {
                let fpoly = UPoly::new(
                    &Field::Q,
                    fac.iter().map(|c| Field::Q.from_rat(Rat::from_integer(c.clone()))).collect(),
                )
                .monic();
                // determine multiplicity of fpoly in the original monic p
                let mut m = 0usize;
                let mut cur = p.monic();
                loop {
                    let (q, r) = cur.divmod(&fpoly);
                    if r.is_zero() {
                        m += 1;
                        cur = q;
                    } else {
                        break;
                    }
                }
                if m >= mult && !factors.iter().any(|(f, _)| f == &fpoly) {
                    factors.push((fpoly, m));
                }
            }
        }
        if g.deg() == 0 {
            break;
        }
        rest = g;
        mult += 1;
    }
    factors.sort_by(|(a, _), (b, _)| {
        a.deg().cmp(&b.deg()).then_with(|| {
            let ar = a.rat_coeffs().unwrap();
            let br = b.rat_coeffs().unwrap();
            ar.partial_cmp(&br).unwrap()
        })
    });
    (lead, factors)
}

/// Is this rational polynomial irreducible over Q?
pub fn is_irreducible_over_q(p: &UPoly) -> bool {
    if p.deg() == 0 {
        return false;
    }
    let (_, f) = factor_over_q(p);
    f.len() == 1 && f[0].1 == 1 && f[0].0.deg() == p.deg()
}

// ---------------------------------------------------------------------------
// Trager factorization over a number field
// ---------------------------------------------------------------------------

/// Resultant_y(m(y), F(x, y)) where F is given as a polynomial in x whose
/// coefficients are polynomials in y (the field generator). Computed via the
/// classical determinant-free PRS on polynomials in y over Q(x) is expensive;
/// here we use evaluation + interpolation free approach: treat F as a
/// univariate polynomial in y with coefficients in Q[x] and run a subresultant
/// PRS over the fraction field Q(x) implemented with exact Q[x] arithmetic.
fn norm_poly(f: &UPoly) -> UPoly {
    let Field::Ext(nf) = &f.field else {
        return f.clone();
    };
    let d = nf.degree;
    // Represent F(x, y): vector over y-powers of Q[x] polys
    let nx = f.deg() + 1;
    let mut fy: Vec<Vec<Rat>> = vec![vec![Rat::zero(); nx]; d];
    for (i, c) in f.coeffs.iter().enumerate() {
        for (j, q) in c.coeffs.iter().enumerate() {
            fy[j][i] = q.clone();
        }
    }
    let my: Vec<Vec<Rat>> = nf.min_poly.iter().map(|c| vec![c.clone()]).collect();
    // resultant via pseudo-remainder sequence over Q[x]
    let res = resultant_y(&my, &fy);
    UPoly::from_rats(&Field::Q, &res)
}

// polynomials in y with coefficients in Q[x]: Vec over y-degree of Vec<Rat>

fn qx_is_zero(p: &[Rat]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn yy_trim(mut p: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    while p.len() > 1 && qx_is_zero(p.last().unwrap()) {
        p.pop();
    }
    p
}

fn yy_deg(p: &[Vec<Rat>]) -> usize {
    for i in (0..p.len()).rev() {
        if !qx_is_zero(&p[i]) {
            return i;
        }
    }
    0
}

/// Resultant of two univariate rational polynomials.
pub fn resultant_q(a: &UPoly, b: &UPoly) -> Rat {
    let mut a = a.clone();
    let mut b = b.clone();
    let mut acc = Rat::one();
    loop {
        if b.is_zero() {
            return Rat::zero();
        }
        let (da, db) = (a.deg(), b.deg());
        if db == 0 {
            let lb = b.coeffs[0].as_rat().unwrap();
            let mut r = Rat::one();
            for _ in 0..da {
                r *= lb;
            }
            return acc * r;
        }
        if da < db {
            if (da * db) % 2 == 1 {
                acc = -acc;
            }
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        let (_, r) = a.divmod(&b);
        let dr = if r.is_zero() { return Rat::zero() } else { r.deg() };
        let lb = b.lead().as_rat().unwrap().clone();
        // res(a, b) = (-1)^(da db) lc(b)^(da - dr) res(b, r)
        if (da * db) % 2 == 1 {
            acc = -acc;
        }
        let mut pw = Rat::one();
        for _ in 0..(da - dr) {
            pw *= &lb;
        }
        acc *= pw;
        a = b;
        b = r;
    }
}

/// Res_y(a(y), b(x, y)) by evaluation at rational points and Lagrange
/// interpolation; a has constant (in x) coefficients with a monic lead, so
/// specialization commutes with the resultant whenever the y-leading
/// coefficient of b does not vanish at the evaluation point.
fn resultant_y(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Rat> {
    let a = yy_trim(a.to_vec());
    let b = yy_trim(b.to_vec());
    let da = yy_deg(&a);
    let db = yy_deg(&b);
    if db == 0 && qx_is_zero(&b[0]) {
        return vec![Rat::zero()];
    }
    let max_x: usize = b.iter().map(|c| rat_deg(c)).max().unwrap_or(0);
    let target_deg = da * max_x; // resultant degree bound in x
    let lead_b = &b[db];
    let mut points: Vec<(Rat, Rat)> = Vec::new();
    let mut c: i64 = 0;
    while points.len() <= target_deg {
        let xv = rat_int(c);
        c = if c > 0 { -c } else { -c + 1 };
        // skip points where deg_y b drops
        let lb_at: Rat = eval_qx(lead_b, &xv);
        if lb_at.is_zero() {
            continue;
        }
        let av = UPoly::from_rats(&Field::Q, &a.iter().map(|cf| eval_qx(cf, &xv)).collect::<Vec<_>>());
        let bv = UPoly::from_rats(&Field::Q, &b.iter().map(|cf| eval_qx(cf, &xv)).collect::<Vec<_>>());
        let r = resultant_q(&av, &bv);
        points.push((xv, r));
    }
    lagrange_interpolate(&points)
}

fn eval_qx(p: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn lagrange_interpolate(points: &[(Rat, Rat)]) -> Vec<Rat> {
    // Newton's divided differences for stability of exact arithmetic
    let n = points.len();
    let mut coef: Vec<Rat> = points.iter().map(|(_, y)| y.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &coef[i] - &coef[i - 1];
            let den = &points[i].0 - &points[i - j].0;
            coef[i] = num / den;
        }
    }
    // expand Newton form
    let mut out = vec![Rat::zero(); n];
    let mut basis = vec![Rat::one()]; // product so far
    out[0] = coef[0].clone();
    for j in 1..n {
        // basis *= (x - x_{j-1})
        let xj = &points[j - 1].0;
        let mut nb = vec![Rat::zero(); basis.len() + 1];
        for (i, cb) in basis.iter().enumerate() {
            nb[i + 1] += cb;
            nb[i] -= cb * xj;
        }
        basis = nb;
        for (i, cb) in basis.iter().enumerate() {
            out[i] += &coef[j] * cb;
        }
    }
    rat_trim(out)
}

/// Factor a squarefree polynomial over a number field (Trager's method).
/// Returns monic irreducible factors.
pub fn factor_squarefree_over_field(p: &UPoly) -> Vec<UPoly> {
    if p.field == Field::Q {
        let (_, f) = factor_over_q(p);
        return f.into_iter().map(|(g, _)| g).collect();
    }
    let p = p.monic();
    if p.deg() <= 1 {
        return vec![p];
    }
    let field = p.field.clone();
    let t = field.gen().unwrap();
    // find shift s so that Norm(p(x - s t)) is squarefree
    for s in 0..40i64 {
        let shift = field.from_int(s);
        // q(x) = p(x - s t)
        let inner = UPoly::new(
            &field,
            vec![t.mul(&shift).neg(), field.one()],
        );
        let q = p.compose(&inner);
        let nrm = norm_poly(&q);
        let nd = nrm.deg();
        if nd == 0 {
            continue;
        }
        let sq = nrm.gcd(&nrm.derivative());
        if sq.deg() != 0 {
            continue;
        }
        // factor norm over Q
        let (_, nfacs) = factor_over_q(&nrm.monic());
        if nfacs.len() == 1 && nfacs[0].0.deg() == nd {
            // norm irreducible => p irreducible
            return vec![p];
        }
        let mut out = Vec::new();
        let mut rest = q.clone();
        for (nf_factor, _) in nfacs {
            // lift factor: gcd(rest, nf_factor(x)) over the field
            let lifted = UPoly::new(
                &field,
                nf_factor.coeffs.iter().map(|c| field.from_rat(c.as_rat().unwrap().clone())).collect(),
            );
            let g = rest.gcd(&lifted);
            if g.deg() > 0 {
                let (qq, _) = rest.divmod(&g);
                rest = qq;
                // undo shift: factor of p is g(x + s t)
                let inner_back = UPoly::new(&field, vec![t.mul(&shift), field.one()]);
                out.push(g.compose(&inner_back).monic());
            }
        }
        if out.iter().map(|f| f.deg()).sum::<usize>() == p.deg() {
            return out;
        }
    }
    panic!("Trager: no squarefree shift found");
}

// ---------------------------------------------------------------------------
// Sturm sequences: counting real roots of rational polynomials
// ---------------------------------------------------------------------------

fn sign_at_pos_infinity(p: &UPoly) -> i32 {
    let lc = p.lead().as_rat().unwrap();
    if lc.is_zero() {
        0
    } else if lc.is_positive() {
        1
    } else {
        -1
    }
}

fn sign_at_neg_infinity(p: &UPoly) -> i32 {
    let s = sign_at_pos_infinity(p);
    if p.deg() % 2 == 0 {
        s
    } else {
        -s
    }
}

fn sign_variations(signs: &[i32]) -> usize {
    let nz: Vec<i32> = signs.iter().copied().filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of a rational polynomial.
pub fn count_real_roots(p: &UPoly) -> usize {
    assert_eq!(p.field, Field::Q);
    let p = p.squarefree_part();
    if p.deg() == 0 {
        return 0;
    }
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let last = &seq[seq.len() - 1];
        if last.is_zero() {
            seq.pop();
            break;
        }
        if last.deg() == 0 {
            break;
        }
        let prev = &seq[seq.len() - 2];
        let (_, r) = prev.divmod(last);
        if r.is_zero() {
            break;
        }
        let neg = UPoly::new(&Field::Q, r.coeffs.iter().map(|c| c.neg()).collect());
        seq.push(neg);
    }
    let at_pos: Vec<i32> = seq.iter().map(sign_at_pos_infinity).collect();
    let at_neg: Vec<i32> = seq.iter().map(sign_at_neg_infinity).collect();
    sign_variations(&at_neg) - sign_variations(&at_pos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, wellknown};

    fn qp(coeffs: &[i64]) -> UPoly {
        UPoly::new(&Field::Q, coeffs.iter().map(|&c| Field::Q.from_int(c)).collect())
    }

    #[test]
    fn divmod_roundtrip() {
        let a = qp(&[2, 0, -3, 1, 4]);
        let b = qp(&[1, 2, 1]);
        let (q, r) = a.divmod(&b);
        assert_eq!(b.mul(&q).add(&r), a);
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn gcd_of_products() {
        let a = qp(&[-1, 1]); // x-1
        let b = qp(&[1, 1]); // x+1
        let c = qp(&[0, 1]); // x
        let p1 = a.mul(&b);
        let p2 = a.mul(&c);
        assert_eq!(p1.gcd(&p2), a.monic());
    }

    #[test]
    fn factor_quadratic_splits() {
        let p = qp(&[-1, 0, 1]); // x^2-1
        let (lead, f) = factor_over_q(&p);
        assert_eq!(lead, rat(1, 1));
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|(g, m)| g.deg() == 1 && *m == 1));
    }

    #[test]
    fn factor_irreducible_stays() {
        let p = qp(&[1, 1, 1, 1, 1, 1, 1]); // Phi_7, irreducible
        assert!(is_irreducible_over_q(&p));
    }

    #[test]
    fn factor_with_multiplicity() {
        // (x-1)^2 (x+2)
        let p = qp(&[-1, 1]).mul(&qp(&[-1, 1])).mul(&qp(&[2, 1]));
        let (_, f) = factor_over_q(&p);
        assert_eq!(f.len(), 2);
        let mults: Vec<usize> = f.iter().map(|(_, m)| *m).collect();
        assert!(mults.contains(&2) && mults.contains(&1));
    }

    #[test]
    fn factor_high_degree_product() {
        // (x^2+1)(x^2-2)(x^3 - x - 1)
        let p = qp(&[1, 0, 1]).mul(&qp(&[-2, 0, 1])).mul(&qp(&[-1, -1, 0, 1]));
        let (_, f) = factor_over_q(&p);
        assert_eq!(f.len(), 3);
        let degs: Vec<usize> = f.iter().map(|(g, _)| g.deg()).collect();
        assert_eq!(degs, vec![2, 2, 3]);
    }

    #[test]
    fn factor_large_coefficients() {
        // eliminant-style: (10 u + 9)(64 u + 63)(u + 1) scaled
        let p = qp(&[9, 10]).mul(&qp(&[63, 64])).mul(&qp(&[1, 1]));
        let (_, f) = factor_over_q(&p);
        assert_eq!(f.len(), 3);
        assert!(f.iter().all(|(g, _)| g.deg() == 1));
        // roots are -9/10, -63/64, -1
        let mut roots: Vec<Rat> = f
            .iter()
            .map(|(g, _)| -(g.coeffs[0].as_rat().unwrap().clone()))
            .collect();
        roots.sort();
        assert_eq!(roots, vec![rat(-1, 1), rat(-63, 64), rat(-9, 10)]);
    }

    #[test]
    fn trager_splits_x2_plus_1_over_qi() {
        let f = wellknown::QI.clone();
        let p = UPoly::new(&f, vec![f.one(), f.zero(), f.one()]); // x^2+1
        let facs = factor_squarefree_over_field(&p);
        assert_eq!(facs.len(), 2);
        assert!(facs.iter().all(|g| g.deg() == 1));
    }

    #[test]
    fn trager_keeps_irreducible() {
        let f = wellknown::QZETA3.clone();
        // x^2 - 2 is irreducible over Q(zeta3)
        let p = UPoly::new(&f, vec![f.from_int(-2), f.zero(), f.one()]);
        let facs = factor_squarefree_over_field(&p);
        assert_eq!(facs.len(), 1);
        assert_eq!(facs[0].deg(), 2);
    }

    #[test]
    fn sturm_counts() {
        // (x^2-2)(x^2+1): two real roots
        let p = qp(&[-2, 0, 1]).mul(&qp(&[1, 0, 1]));
        assert_eq!(count_real_roots(&p), 2);
        // x^2+1: none
        assert_eq!(count_real_roots(&qp(&[1, 0, 1])), 0);
        // x^3-x: three
        assert_eq!(count_real_roots(&qp(&[0, -1, 0, 1])), 3);
    }

    #[test]
    fn squarefree_part_strips() {
        let p = qp(&[-1, 1]).mul(&qp(&[-1, 1])).mul(&qp(&[1, 1]));
        let s = p.squarefree_part();
        assert_eq!(s.deg(), 2);
    }
}
