//! Gröbner bases over small prime fields, plus CRT and rational
//! reconstruction. This is the workhorse behind the certified multi-modular
//! Gröbner computation in [`crate::ideal`]: all heavy reductions happen in
//! u64 arithmetic, and only the final candidate basis is lifted back to Q.

use crate::field::Rat;
use crate::poly::{MPoly, MonOrd, Mono, RingRef};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A polynomial over F_p: sorted descending by the ring order, like MPoly.
#[derive(Clone, Debug, PartialEq)]
pub struct PPoly {
    pub terms: Vec<(Mono, u64)>,
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    (s0.rem_euclid(p as i128)) as u64
}

fn mulp(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl PPoly {
    pub fn zero() -> PPoly {
        PPoly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> Option<&Mono> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn lc(&self) -> u64 {
        self.terms.first().map(|(_, c)| *c).unwrap_or(0)
    }

    pub fn monic(&self, p: u64) -> PPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lc(), p);
        PPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), mulp(*c, inv, p)))
                .collect(),
        }
    }

    /// self - mono * g, all mod p.
    fn sub_mul(&self, mono: &Mono, coef: u64, g: &PPoly, p: u64, ord: MonOrd) -> PPoly {
        // merge sorted sequences
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() || j < g.terms.len() {
            if j >= g.terms.len() {
                out.push(self.terms[i].clone());
                i += 1;
                continue;
            }
            let gm = g.terms[j].0.mul(mono);
            let gc = p - mulp(g.terms[j].1, coef, p);
            if i >= self.terms.len() {
                if gc != 0 {
                    out.push((gm, gc));
                }
                j += 1;
                continue;
            }
            match ord.cmp(&self.terms[i].0, &gm) {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    if gc != 0 {
                        out.push((gm, gc));
                    }
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = (self.terms[i].1 + gc) % p;
                    if c != 0 {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        PPoly { terms: out }
    }
}

/// Reduce an MPoly with rational or number-field-free coefficients mod p.
/// Returns None if a denominator vanishes mod p (unlucky prime).
pub fn reduce_mod_p(f: &MPoly, p: u64) -> Option<PPoly> {
    let mut terms = Vec::with_capacity(f.terms.len());
    for (m, c) in &f.terms {
        let q = c.as_rat()?;
        let c = rat_mod_p(q, p)?;
        if c != 0 {
            terms.push((m.clone(), c));
        }
    }
    Some(PPoly { terms })
}

pub fn rat_mod_p(q: &Rat, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = q.denom().clone() % &pb;
    if den.is_zero() {
        return None;
    }
    let num = ((q.numer() % &pb) + &pb) % &pb;
    let den = ((den + &pb) % &pb).to_u64_digits().1;
    let den = if den.is_empty() { 0 } else { den[0] };
    let num = num.to_u64_digits().1;
    let num = if num.is_empty() { 0 } else { num[0] };
    Some(mulp(num, inv_mod(den, p), p))
}

/// Full normal form over F_p.
pub fn normal_form_p(f: &PPoly, gens: &[PPoly], p: u64, ord: MonOrd) -> PPoly {
    let mut rem: Vec<(Mono, u64)> = Vec::new();
    let mut cur = f.clone();
    'outer: while let Some((lm, lc)) = cur.terms.first().map(|(m, c)| (m.clone(), *c)) {
        for g in gens {
            if g.is_zero() {
                continue;
            }
            let gm = g.lm().unwrap();
            if gm.divides(&lm) {
                let q = lm.div(gm);
                let coef = mulp(lc, inv_mod(g.lc(), p), p);
                cur = cur.sub_mul(&q, coef, g, p, ord);
                continue 'outer;
            }
        }
        rem.push((lm, lc));
        cur.terms.remove(0);
    }
    PPoly { terms: rem }
}

fn spoly_p(f: &PPoly, g: &PPoly, p: u64, ord: MonOrd) -> PPoly {
    let fm = f.lm().unwrap();
    let gm = g.lm().unwrap();
    let l = fm.lcm(gm);
    let a = l.div(fm);
    let b = l.div(gm);
    // f/lc(f) * x^a - g/lc(g) * x^b
    let fs = PPoly {
        terms: f
            .terms
            .iter()
            .map(|(m, c)| (m.mul(&a), mulp(*c, inv_mod(f.lc(), p), p)))
            .collect(),
    };
    let gs = g.monic(p);
    fs.sub_mul(&b, 1, &gs, p, ord)
}

#[derive(Clone)]
struct PairP {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u32,
}

/// Buchberger over F_p with Gebauer–Möller pruning and sugar selection.
/// Returns the reduced GB (monic, interreduced, sorted descending by LM).
pub fn groebner_p(gens: &[PPoly], p: u64, ord: MonOrd) -> Vec<PPoly> {
    let mut basis: Vec<PPoly> = Vec::new();
    let mut sugars: Vec<u32> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<PairP> = Vec::new();

    fn update(
        h: PPoly,
        sugar: u32,
        basis: &mut Vec<PPoly>,
        sugars: &mut Vec<u32>,
        active: &mut Vec<bool>,
        pairs: &mut Vec<PairP>,
    ) {
        let hl = h.lm().unwrap().clone();
        let n = basis.len();
        let mut c: Vec<PairP> = (0..n)
            .filter(|&g| active[g])
            .map(|g| {
                let gl = basis[g].lm().unwrap();
                let l = hl.lcm(gl);
                let s = (sugar + l.deg() - hl.deg()).max(sugars[g] + l.deg() - gl.deg());
                PairP { i: g, j: n, lcm: l, sugar: s }
            })
            .collect();
        let mut d: Vec<PairP> = Vec::new();
        while let Some(pr) = c.pop() {
            let cop = hl.coprime(basis[pr.i].lm().unwrap());
            let blocked = c.iter().chain(d.iter()).any(|q| q.lcm.divides(&pr.lcm));
            if cop || !blocked {
                d.push(pr);
            }
        }
        let e: Vec<PairP> = d
            .into_iter()
            .filter(|pr| !hl.coprime(basis[pr.i].lm().unwrap()))
            .collect();
        pairs.retain(|pr| {
            let l1 = hl.lcm(basis[pr.i].lm().unwrap());
            let l2 = hl.lcm(basis[pr.j].lm().unwrap());
            !hl.divides(&pr.lcm) || l1 == pr.lcm || l2 == pr.lcm
        });
        pairs.extend(e);
        for g in 0..n {
            if active[g] && hl.divides(basis[g].lm().unwrap()) {
                active[g] = false;
            }
        }
        basis.push(h);
        sugars.push(sugar);
        active.push(true);
    }

    for g in gens {
        if g.is_zero() {
            continue;
        }
        let h = g.monic(p);
        let s = h.lm().unwrap().deg().max(
            h.terms.iter().map(|(m, _)| m.deg()).max().unwrap_or(0),
        );
        update(h, s, &mut basis, &mut sugars, &mut active, &mut pairs);
    }

    while !pairs.is_empty() {
        let mut best = 0;
        for k in 1..pairs.len() {
            let pr = &pairs[k];
            let b = &pairs[best];
            if pr.sugar < b.sugar
                || (pr.sugar == b.sugar && ord.cmp(&pr.lcm, &b.lcm) == std::cmp::Ordering::Less)
            {
                best = k;
            }
        }
        let pr = pairs.swap_remove(best);
        let s = spoly_p(&basis[pr.i], &basis[pr.j], p, ord);
        let reducers: Vec<PPoly> = basis
            .iter()
            .zip(active.iter())
            .filter(|(_, &a)| a)
            .map(|(b, _)| b.clone())
            .collect();
        let r = normal_form_p(&s, &reducers, p, ord);
        if !r.is_zero() {
            update(r.monic(p), pr.sugar, &mut basis, &mut sugars, &mut active, &mut pairs);
        }
    }

    // interreduce
    let mut kept: Vec<PPoly> = basis
        .into_iter()
        .zip(active)
        .filter(|(_, a)| *a)
        .map(|(b, _)| b)
        .collect();
    // drop LM-redundant (active flags should already ensure minimality)
    let mut out: Vec<PPoly> = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let others: Vec<PPoly> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, b)| b.clone())
            .collect();
        let r = normal_form_p(&kept[i], &others, p, ord);
        if !r.is_zero() {
            out.push(r.monic(p));
        }
    }
    kept.clear();
    out.sort_by(|a, b| ord.cmp(b.lm().unwrap(), a.lm().unwrap()));
    out
}

// ---------------------------------------------------------------------------
// CRT and rational reconstruction
// ---------------------------------------------------------------------------

/// Combine residues: x ≡ r (mod m), x ≡ s (mod p) -> residue mod m·p.
pub fn crt(r: &BigInt, m: &BigInt, s: u64, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let mm = m % &pb;
    let mm = ((mm.clone() % &pb) + &pb) % &pb;
    let m_inv = {
        let digits = mm.to_u64_digits().1;
        let v = if digits.is_empty() { 0 } else { digits[0] };
        inv_mod(v, p)
    };
    let rr = ((r % &pb) + &pb) % &pb;
    let rr_digits = rr.to_u64_digits().1;
    let rr_u = if rr_digits.is_empty() { 0 } else { rr_digits[0] };
    let diff = (s + p - rr_u % p) % p;
    let k = mulp(diff, m_inv, p);
    r + m * BigInt::from(k)
}

/// Rational reconstruction of c mod m: find n/d with |n|, d ≤ sqrt(m/2),
/// n ≡ c·d (mod m). Returns None if no such fraction exists.
pub fn rational_reconstruct(c: &BigInt, m: &BigInt) -> Option<Rat> {
    let bound = (m / BigInt::from(2u8)).sqrt();
    let bound = if bound.is_zero() { BigInt::one() } else { bound };
    let (mut r0, mut r1) = (m.clone(), ((c % m) + m) % m);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 >= bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.magnitude() > bound.magnitude() {
        return None;
    }
    let (num, den) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    // verify: num ≡ c·den (mod m)
    if ((c * &den - &num) % m).is_zero() {
        Some(Rat::new(num, den))
    } else {
        None
    }
}

/// Deterministic sequence of 31-bit primes for the modular engine.
pub fn prime_sequence() -> impl Iterator<Item = u64> {
    // descending from 2^31; primality by trial division (few needed)
    (0u64..).filter_map(|k| {
        let c = (1u64 << 31) - 1 - 2 * k;
        if c > 2 && is_prime(c) {
            Some(c)
        } else {
            None
        }
    })
}

fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n > 1;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Lift a mod-p basis support + accumulated CRT residues back to an MPoly
/// basis over Q. Returns None if any coefficient fails reconstruction.
pub fn lift_basis(
    support: &[Vec<Mono>],
    residues: &[Vec<BigInt>],
    modulus: &BigInt,
    ring: &RingRef,
) -> Option<Vec<MPoly>> {
    let mut out = Vec::with_capacity(support.len());
    for (monos, res) in support.iter().zip(residues) {
        let mut terms = Vec::with_capacity(monos.len());
        for (m, c) in monos.iter().zip(res) {
            let q = rational_reconstruct(c, modulus)?;
            terms.push((m.clone(), ring.field.from_rat(q)));
        }
        out.push(MPoly::from_terms(ring, terms));
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_inverse() {
        let p = 2147483647u64; // 2^31 - 1
        for a in [1u64, 2, 5, 123456, p - 1] {
            assert_eq!(mulp(a, inv_mod(a, p), p), 1);
        }
    }

    #[test]
    fn rational_reconstruction_roundtrip() {
        let m = BigInt::from(2147483647u64) * BigInt::from(2147483629u64);
        for (n, d) in [(1i64, 3i64), (-22, 7), (355, 113), (0, 1), (123456, 789)] {
            let q = Rat::new(n.into(), d.into());
            let c = ((q.numer() * BigInt::from(d).modinv(&m).unwrap_or_else(|| {
                // compute d^{-1} mod m via extended gcd on BigInt
                panic!("d not invertible")
            })) % &m + &m) % &m;
            let c = (c * q.denom().modinv(&m).map(|_| BigInt::one()).unwrap_or(BigInt::one())) % &m;
            let _ = c;
            // direct: c = n * d^{-1} mod m
            let dinv = BigInt::from(d).modinv(&m).unwrap();
            let c = ((BigInt::from(n) * dinv) % &m + &m) % &m;
            let r = rational_reconstruct(&c, &m).unwrap();
            assert_eq!(r, q, "{n}/{d}");
        }
    }

    #[test]
    fn prime_sequence_starts_with_mersenne() {
        let ps: Vec<u64> = prime_sequence().take(3).collect();
        assert_eq!(ps[0], 2147483647);
        assert!(ps.iter().all(|&p| p > 1 << 30));
    }
}
