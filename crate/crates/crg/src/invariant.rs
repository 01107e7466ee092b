//! Invariant theory: Molien series, Reynolds-style bases of homogeneous
//! invariants, fundamental-invariant selection, signed orbit sums, and the
//! explicit polynomial corpus.

use crate::field::{Elem, Field, Rat};
use crate::group::{mat_mul, mat_rank, Group, GroupError, Matrix};
use crate::ideal::{dimension, groebner};
use crate::poly::{MPoly, Mono, MonOrd, Ring, RingRef};
use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("Molien coefficient is not an integer")]
    NonIntegralMolien,
    #[error("invariant space has dimension {got}, expected {want}")]
    DegenerateSpace { got: usize, want: usize },
    #[error("monomial cap exceeded at degree {0}")]
    MonomialCapExceeded(u32),
    #[error("unknown corpus name {0}")]
    UnknownName(String),
    #[error("degrees unknown for group {0}")]
    NoDegrees(String),
}

/// The polynomial ring C[V] for a group: variables x1..xn over its field.
pub fn natural_ring(g: &Group) -> RingRef {
    let names: Vec<String> = (1..=g.rank).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    Ring::new(&refs, &g.field, MonOrd::Grevlex)
}

/// Coefficients of Π 1/(1 - t^{d_i}) up to degree `up_to` (inclusive) —
/// the Molien series of a reflection group with those degrees.
pub fn molien_from_degrees(degrees: &[u32], up_to: usize) -> Vec<u64> {
    let mut h = vec![0u64; up_to + 1];
    h[0] = 1;
    for &d in degrees {
        for k in d as usize..=up_to {
            h[k] += h[k - d as usize];
        }
    }
    h
}

/// Exact Molien series (1/|G|) Σ_g det(1 - t g)^{-1} up to `up_to`.
pub fn molien_coefficients(g: &Group, up_to: usize) -> Result<Vec<u64>, InvariantError> {
    let els = g.enumerate()?;
    let field = &g.field;
    let n = g.rank;
    let sums: Vec<Elem> = els
        .par_iter()
        .fold(
            || vec![field.zero(); up_to + 1],
            |mut acc, m| {
                let inv = det_one_minus_tm_inverse(m, field, n, up_to);
                for (a, b) in acc.iter_mut().zip(inv) {
                    *a = a.add(&b);
                }
                acc
            },
        )
        .reduce(
            || vec![field.zero(); up_to + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x = x.add(&y);
                }
                a
            },
        );
    let order = Rat::from_integer(BigInt::from(els.len() as u64));
    let mut out = Vec::with_capacity(up_to + 1);
    for s in sums {
        let v = s.mul_rat(&(Rat::one() / order.clone()));
        let q = v.as_rat().ok_or(InvariantError::NonIntegralMolien)?;
        if !q.denom().is_one() || q.numer().sign() == num_bigint::Sign::Minus {
            return Err(InvariantError::NonIntegralMolien);
        }
        out.push(q.numer().to_string().parse().map_err(|_| InvariantError::NonIntegralMolien)?);
    }
    Ok(out)
}

/// Power-series coefficients of det(1 - t M)^{-1} up to `up_to`.
fn det_one_minus_tm_inverse(m: &Matrix, field: &Field, n: usize, up_to: usize) -> Vec<Elem> {
    // char coefficients e_k (elementary symmetric in eigenvalues) via
    // Newton's identities from power traces p_j = tr(M^j)
    let mut pows = Vec::with_capacity(n);
    let mut cur = m.clone();
    for _ in 0..n {
        pows.push(cur.clone());
        cur = mat_mul(&cur, m);
    }
    let tr = |mm: &Matrix| -> Elem {
        let mut acc = field.zero();
        for (i, row) in mm.iter().enumerate() {
            acc = acc.add(&row[i]);
        }
        acc
    };
    let p: Vec<Elem> = pows.iter().map(tr).collect();
    let mut e = vec![field.one()];
    for k in 1..=n {
        let mut acc = field.zero();
        let mut sign = true; // (-1)^{i-1}
        for i in 1..=k {
            let term = e[k - i].mul(&p[i - 1]);
            acc = if sign { acc.add(&term) } else { acc.sub(&term) };
            sign = !sign;
        }
        e.push(acc.mul_rat(&Rat::new(BigInt::one(), BigInt::from(k as i64))));
    }
    // a_k = (-1)^k e_k are the coefficients of det(1 - tM)
    let a: Vec<Elem> = e
        .iter()
        .enumerate()
        .map(|(k, v)| if k % 2 == 1 { v.neg() } else { v.clone() })
        .collect();
    // invert the series: b_0 = 1, b_k = -sum_{j=1..min(k,n)} a_j b_{k-j}
    let mut b = vec![field.one()];
    for k in 1..=up_to {
        let mut acc = field.zero();
        for j in 1..=k.min(n) {
            acc = acc.add(&a[j].mul(&b[k - j]));
        }
        b.push(acc.neg());
    }
    b
}

/// A linearly independent set of homogeneous invariants of one degree.
pub struct InvariantSpace {
    pub group: String,
    pub degree: u32,
    pub basis: Vec<MPoly>,
}

/// Expand (Σ w_i x_i)^d for a covector w, via multinomial coefficients.
fn linear_form_power(ring: &RingRef, w: &[Elem], d: u32) -> MPoly {
    let n = ring.nvars();
    // power tables
    let mut pw: Vec<Vec<Elem>> = Vec::with_capacity(n);
    for wi in w {
        let mut v = vec![ring.field.one()];
        for e in 1..=d {
            let last = v[(e - 1) as usize].clone();
            v.push(last.mul(wi));
        }
        pw.push(v);
    }
    let mut terms = Vec::new();
    let mut expo = vec![0u32; n];
    fn rec(
        i: usize,
        left: u32,
        expo: &mut Vec<u32>,
        out: &mut Vec<(Mono, Elem)>,
        pw: &[Vec<Elem>],
        d: u32,
        field: &Field,
    ) {
        let n = expo.len();
        if i == n - 1 {
            expo[i] = left;
            // multinomial d! / prod e_i!
            let mut c = BigInt::one();
            let mut k = 0u32;
            for &e in expo.iter() {
                for _ in 0..e {
                    k += 1;
                    c = c * BigInt::from(k);
                }
                let mut f = BigInt::one();
                for j in 1..=e {
                    f *= BigInt::from(j);
                }
                c /= f;
            }
            let _ = d;
            let mut coef = field.from_rat(Rat::from_integer(c));
            let mut zero = false;
            for (v, &e) in pw.iter().zip(expo.iter()) {
                if e > 0 {
                    if v[e as usize].is_zero() {
                        zero = true;
                        break;
                    }
                    coef = coef.mul(&v[e as usize]);
                }
            }
            if !zero && !coef.is_zero() {
                out.push((Mono(expo.clone()), coef));
            }
            return;
        }
        for e in 0..=left {
            expo[i] = e;
            rec(i + 1, left - e, expo, out, pw, d, field);
        }
        expo[i] = 0;
    }
    rec(0, d, &mut expo, &mut terms, &pw, d, &ring.field);
    MPoly::from_terms(ring, terms)
}

/// Orbit of a covector under the transposed generators (closure).
fn covector_orbit(g: &Group, v: &[Elem], cap: usize) -> Option<Vec<Vec<Elem>>> {
    let gts: Vec<Matrix> = g
        .gens
        .iter()
        .map(|m| {
            (0..g.rank)
                .map(|i| (0..g.rank).map(|j| m[j][i].clone()).collect())
                .collect()
        })
        .collect();
    let mut seen: std::collections::HashSet<Vec<Elem>> = std::collections::HashSet::new();
    let mut orbit = vec![v.to_vec()];
    seen.insert(v.to_vec());
    let mut idx = 0;
    while idx < orbit.len() {
        let cur = orbit[idx].clone();
        idx += 1;
        for gt in &gts {
            let img = crate::group::mat_vec(gt, &cur);
            if seen.insert(img.clone()) {
                if orbit.len() >= cap {
                    return None;
                }
                orbit.push(img);
            }
        }
    }
    Some(orbit)
}

/// Candidate starting covectors: coordinate vectors, root directions of the
/// generators (columns of g - 1), small sums.
fn candidate_covectors(g: &Group) -> Vec<Vec<Elem>> {
    let field = &g.field;
    let n = g.rank;
    let mut out: Vec<Vec<Elem>> = Vec::new();
    for i in 0..n {
        let mut v = vec![field.zero(); n];
        v[i] = field.one();
        out.push(v);
    }
    for m in &g.gens {
        for j in 0..n {
            let col: Vec<Elem> = (0..n)
                .map(|i| {
                    let d = if i == j { field.one() } else { field.zero() };
                    m[i][j].sub(&d)
                })
                .collect();
            if col.iter().any(|c| !c.is_zero()) {
                out.push(col);
            }
        }
    }
    // small integer combinations
    for i in 0..n {
        for j in (i + 1)..n {
            for (a, b) in [(1i64, 1i64), (1, -1), (1, 2), (2, -1)] {
                let mut v = vec![field.zero(); n];
                v[i] = field.from_int(a);
                v[j] = field.from_int(b);
                out.push(v);
            }
        }
    }
    out
}

/// Row-reduce candidate polynomials to a linearly independent subset,
/// stopping at `target` members.
fn independent_subset(cands: Vec<MPoly>, target: usize) -> Vec<MPoly> {
    let mut monos: Vec<Mono> = Vec::new();
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    let mut picked: Vec<MPoly> = Vec::new();
    for c in cands {
        if c.is_zero() || picked.len() >= target {
            if picked.len() >= target {
                break;
            }
            continue;
        }
        let field = c.ring.field.clone();
        for (m, _) in &c.terms {
            if !monos.contains(m) {
                monos.push(m.clone());
            }
        }
        let vecify = |p: &MPoly| -> Vec<Elem> {
            monos.iter().map(|m| p.coeff(m)).collect()
        };
        // re-vectorize existing rows to the grown monomial list
        let prev: Vec<Vec<Elem>> = picked.iter().map(|p| vecify(p)).collect();
        let v = vecify(&c);
        let mut work = prev.clone();
        if !in_span(&mut work, &v, &field) {
            rows = prev;
            rows.push(v);
            picked.push(c);
        }
    }
    let _ = rows;
    picked
}

fn in_span(rows: &mut Vec<Vec<Elem>>, v: &[Elem], field: &Field) -> bool {
    // Gaussian elimination: reduce v against an echelonized copy of rows
    let n = v.len();
    let mut a = rows.clone();
    for r in a.iter_mut() {
        r.resize(n, field.zero());
    }
    let mut target = v.to_vec();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].inv().unwrap();
        for c in 0..n {
            a[r][c] = a[r][c].mul(&inv);
        }
        if !target[col].is_zero() {
            let f = target[col].clone();
            for c in 0..n {
                let s = a[r][c].mul(&f);
                target[c] = target[c].sub(&s);
            }
        }
        for i in (r + 1)..a.len() {
            if !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for c in 0..n {
                    let s = a[r][c].mul(&f);
                    a[i][c] = a[i][c].sub(&s);
                }
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    // remaining target must reduce to zero for v in span
    target.iter().all(|c| c.is_zero())
}

/// Normalize an invariant: coefficient of the lexicographically-first
/// monomial becomes 1.
fn normalize_invariant(p: &MPoly) -> MPoly {
    if p.is_zero() {
        return p.clone();
    }
    let lexfirst = p
        .terms
        .iter()
        .map(|(m, _)| m)
        .max_by(|a, b| MonOrd::Lex.cmp(a, b))
        .unwrap()
        .clone();
    let c = p.coeff(&lexfirst);
    p.scale(&c.inv().unwrap())
}

const MONOMIAL_CAP: usize = 20_000;

/// Basis of the degree-d homogeneous invariants: orbit sums of powers of
/// linear forms (exact), reduced to Molien dimension; falls back to direct
/// Reynolds averaging of monomials for small groups.
pub fn reynolds_basis(g: &Group, d: u32) -> Result<InvariantSpace, InvariantError> {
    reynolds_basis_with(g, d, &[])
}

/// Same, with extra known invariants (e.g. products of lower-degree
/// fundamental invariants) supplied as candidates.
pub fn reynolds_basis_with(
    g: &Group,
    d: u32,
    extra: &[MPoly],
) -> Result<InvariantSpace, InvariantError> {
    let ring = natural_ring(g);
    let want = expected_dim(g, d as usize)?;
    if d == 0 {
        return Ok(InvariantSpace { group: g.name.clone(), degree: 0, basis: vec![MPoly::one(&ring)] });
    }
    let nmono = num_monomials(g.rank, d);
    if nmono > MONOMIAL_CAP {
        return Err(InvariantError::MonomialCapExceeded(d));
    }
    let mut cands: Vec<MPoly> = Vec::new();
    for e in extra {
        cands.push(e.clone());
    }
    let mut picked = independent_subset(cands.clone(), want);
    if picked.len() < want {
        // covector orbit sums
        'outer: for v in candidate_covectors(&g) {
            let Some(orbit) = covector_orbit(g, &v, crate::group::ENUMERATION_CAP) else {
                continue;
            };
            let sums: Vec<MPoly> = orbit
                .par_iter()
                .map(|w| linear_form_power(&ring, w, d))
                .collect();
            let mut acc = MPoly::zero(&ring);
            for s in sums {
                acc = acc.add(&s);
            }
            if !acc.is_zero() {
                cands.push(acc);
                picked = independent_subset(cands.clone(), want);
                if picked.len() >= want {
                    break 'outer;
                }
            }
        }
    }
    if picked.len() < want {
        // fall back to averaging monomials over the whole group
        let els = g.enumerate()?;
        let monos = monomials_of_degree(g.rank, d);
        for mo in monos {
            let base = MPoly::monomial(&ring, mo, ring.field.one());
            let avg: MPoly = els
                .par_iter()
                .map(|m| base.act_matrix(m))
                .reduce(|| MPoly::zero(&ring), |a, b| a.add(&b));
            if !avg.is_zero() {
                cands.push(avg);
                picked = independent_subset(cands.clone(), want);
                if picked.len() >= want {
                    break;
                }
            }
        }
    }
    if picked.len() != want {
        return Err(InvariantError::DegenerateSpace { got: picked.len(), want });
    }
    // exact invariance check against generators
    let basis: Vec<MPoly> = picked.iter().map(normalize_invariant).collect();
    for b in &basis {
        for m in &g.gens {
            assert!(b.act_matrix(m) == *b, "basis element not invariant");
        }
    }
    Ok(InvariantSpace { group: g.name.clone(), degree: d, basis })
}

fn expected_dim(g: &Group, d: usize) -> Result<usize, InvariantError> {
    match &g.degrees {
        Some(degs) => Ok(molien_from_degrees(degs, d)[d] as usize),
        None => Ok(molien_coefficients(g, d)?[d] as usize),
    }
}

fn num_monomials(n: usize, d: u32) -> usize {
    // C(n + d - 1, d)
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..(n - 1) as u128 {
        num *= d as u128 + 1 + i;
        den *= i + 1;
    }
    (num / den) as usize
}

fn monomials_of_degree(n: usize, d: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut expo = vec![0u32; n];
    fn rec(i: usize, left: u32, expo: &mut Vec<u32>, out: &mut Vec<Mono>) {
        let n = expo.len();
        if i == n - 1 {
            expo[i] = left;
            out.push(Mono(expo.clone()));
            return;
        }
        for e in 0..=left {
            expo[i] = e;
            rec(i + 1, left - e, expo, out);
        }
        expo[i] = 0;
    }
    rec(0, d, &mut expo, &mut out);
    out
}

/// Fundamental invariants f1..fr where r is minimal with the degree-d_r
/// invariant space of dimension ≥ 2, plus the unique product f of the
/// lower invariants with deg f = d_r.
pub struct FundamentalSet {
    pub group: String,
    pub r: usize,
    /// f1..f_{r-1} then f_r; degrees d_1..d_r.
    pub invariants: Vec<MPoly>,
    /// The unique product f1^{m1}..f_{r-1}^{m_{r-1}} of degree d_r.
    pub product: MPoly,
    pub product_exponents: Vec<u32>,
}

/// Find the exponents (m1..m_{k}) with Σ m_i d_i = target; must be unique.
fn product_exponents(degs: &[u32], target: u32) -> Option<Vec<u32>> {
    let mut sols: Vec<Vec<u32>> = Vec::new();
    let k = degs.len();
    let mut cur = vec![0u32; k];
    fn rec(i: usize, left: u32, degs: &[u32], cur: &mut Vec<u32>, sols: &mut Vec<Vec<u32>>) {
        if i == degs.len() {
            if left == 0 {
                sols.push(cur.clone());
            }
            return;
        }
        let mut e = 0;
        while e * degs[i] <= left {
            cur[i] = e;
            rec(i + 1, left - e * degs[i], degs, cur, sols);
            e += 1;
        }
        cur[i] = 0;
    }
    rec(0, target, degs, &mut cur, &mut sols);
    if sols.len() == 1 {
        Some(sols.pop().unwrap())
    } else {
        None
    }
}

pub fn fundamental_scan(g: &Group) -> Result<FundamentalSet, InvariantError> {
    let degs = g
        .degrees
        .clone()
        .ok_or_else(|| InvariantError::NoDegrees(g.name.clone()))?;
    // r = minimal index with invariant-space dim >= 2 at degree d_r
    let maxd = *degs.iter().max().unwrap() as usize;
    let series = molien_from_degrees(&degs, maxd);
    let r = degs
        .iter()
        .position(|&d| series[d as usize] >= 2)
        .map(|i| i + 1)
        .expect("no degree with dimension >= 2");
    let mut inv: Vec<MPoly> = Vec::new();
    for k in 0..r - 1 {
        let sp = reynolds_basis(g, degs[k])?;
        if sp.basis.len() != 1 {
            return Err(InvariantError::DegenerateSpace { got: sp.basis.len(), want: 1 });
        }
        inv.push(sp.basis[0].clone());
    }
    let dr = degs[r - 1];
    let expo = product_exponents(&degs[..r - 1], dr)
        .expect("product of lower invariants with degree d_r must be unique");
    let mut product = MPoly::one(&natural_ring(g));
    for (f, &e) in inv.iter().zip(&expo) {
        product = product.mul(&f.pow(e));
    }
    let sp = reynolds_basis_with(g, dr, &[product.clone()])?;
    if sp.basis.len() != 2 {
        return Err(InvariantError::DegenerateSpace { got: sp.basis.len(), want: 2 });
    }
    // pick the basis member independent of the product as f_r
    let fr = sp
        .basis
        .iter()
        .find(|b| {
            let mut rows = vec![poly_vec(&product, b)];
            let v = poly_vec(b, &product);
            !in_span(&mut rows, &v, &g.field)
        })
        .expect("2-dimensional space must contain a complement")
        .clone();
    inv.push(fr);
    // independence certificate: Jacobian rank r at a random rational point
    let ring = natural_ring(g);
    let jac: Vec<Vec<MPoly>> = inv
        .iter()
        .map(|f| (0..g.rank).map(|i| f.derivative(i)).collect())
        .collect();
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    let mut ok = false;
    for _ in 0..8 {
        let pt: Vec<Elem> = (0..g.rank)
            .map(|_| g.field.from_int(rng.gen_range(-9..=9)))
            .collect();
        let m: Matrix = jac
            .iter()
            .map(|row| row.iter().map(|p| p.evaluate(&pt)).collect())
            .collect();
        if mat_rank(&m) == r {
            ok = true;
            break;
        }
    }
    assert!(ok, "Jacobian independence certificate failed");
    // coprimality certificate for plane (rank-3) r=2 cases: gcd(f1, f2) = 1
    // iff V(f1, f2) has codimension 2
    if g.rank == 3 && r == 2 {
        let gb = groebner(&[inv[0].clone(), inv[1].clone()]);
        assert!(
            dimension(&gb) <= g.rank as i64 - 2,
            "fundamental invariants share a factor"
        );
    }
    let _ = ring;
    Ok(FundamentalSet {
        group: g.name.clone(),
        r,
        invariants: inv,
        product,
        product_exponents: expo,
    })
}

/// Full set of fundamental invariants f1..fn, one per reflection degree.
/// Each f_i is chosen in the complement of the span of products of the
/// earlier invariants, normalized by lex-first monomial.
pub fn fundamental_all(g: &Group) -> Result<Vec<MPoly>, InvariantError> {
    let degs = g
        .degrees
        .clone()
        .ok_or_else(|| InvariantError::NoDegrees(g.name.clone()))?;
    let mut fs: Vec<MPoly> = Vec::new();
    for (i, &d) in degs.iter().enumerate() {
        let products = all_products(&fs, &degs[..i], d);
        let sp = reynolds_basis_with(g, d, &products)?;
        let fi = sp
            .basis
            .iter()
            .find(|b| {
                let mut rows: Vec<Vec<Elem>> = Vec::new();
                let mut monos: Vec<Mono> = Vec::new();
                for p in products.iter().chain(std::iter::once(*b)) {
                    for (m, _) in &p.terms {
                        if !monos.contains(m) {
                            monos.push(m.clone());
                        }
                    }
                }
                for p in &products {
                    rows.push(monos.iter().map(|m| p.coeff(m)).collect());
                }
                let v: Vec<Elem> = monos.iter().map(|m| b.coeff(m)).collect();
                !in_span(&mut rows, &v, &g.field)
            })
            .expect("invariant space must exceed products span at a reflection degree")
            .clone();
        fs.push(fi);
    }
    Ok(fs)
}

/// All products f1^{e1}..fk^{ek} of total degree `target`.
pub fn all_products(fs: &[MPoly], degs: &[u32], target: u32) -> Vec<MPoly> {
    let mut sols: Vec<Vec<u32>> = Vec::new();
    let mut cur = vec![0u32; degs.len()];
    fn rec(i: usize, left: u32, degs: &[u32], cur: &mut Vec<u32>, sols: &mut Vec<Vec<u32>>) {
        if i == degs.len() {
            if left == 0 {
                sols.push(cur.clone());
            }
            return;
        }
        let mut e = 0;
        while e * degs[i] <= left {
            cur[i] = e;
            rec(i + 1, left - e * degs[i], degs, cur, sols);
            e += 1;
        }
        cur[i] = 0;
    }
    rec(0, target, degs, &mut cur, &mut sols);
    sols.iter()
        .map(|expo| {
            let mut p = MPoly::one(&fs[0].ring);
            for (f, &e) in fs.iter().zip(expo) {
                p = p.mul(&f.pow(e));
            }
            p
        })
        .collect()
}

/// Coefficient vector of `p` on the union support of p and q (helper for
/// pairwise independence checks).
fn poly_vec(p: &MPoly, q: &MPoly) -> Vec<Elem> {
    let mut monos: Vec<Mono> = p.terms.iter().map(|(m, _)| m.clone()).collect();
    for (m, _) in &q.terms {
        if !monos.contains(m) {
            monos.push(m.clone());
        }
    }
    monos.sort_by(|a, b| MonOrd::Lex.cmp(a, b));
    monos.iter().map(|m| p.coeff(m)).collect()
}

// ---------------------------------------------------------------------------
// Orbit sums and the corpus
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitKind {
    /// Symmetric group (permutations): the classical m_λ.
    Sym,
    /// W1-orbit (signed): m_λ^-.
    W1,
}

/// Rational 4-variable ring used by the corpus.
pub fn corpus_ring() -> RingRef {
    Ring::new(&["x1", "x2", "x3", "x4"], &Field::Q, MonOrd::Grevlex)
}

/// Signed monomial orbit sum m_λ^ε for a partition λ of 8 (length ≤ 4).
pub fn orbit_sum(kind: OrbitKind, lambda: &[u32]) -> Result<MPoly, InvariantError> {
    assert!(lambda.len() <= 4, "partition length at most 4");
    assert_eq!(lambda.iter().sum::<u32>(), 8, "partition of 8 expected");
    let ring = corpus_ring();
    let mut expo = vec![0u32; 4];
    expo[..lambda.len()].copy_from_slice(lambda);
    let base = MPoly::monomial(&ring, Mono(expo), Field::Q.one());
    let els: Vec<Matrix> = match kind {
        OrbitKind::Sym => {
            // all 24 permutation matrices
            let mut out = Vec::new();
            let mut perm = [0usize, 1, 2, 3];
            permute_all(&mut perm, 0, &mut out);
            out
        }
        OrbitKind::W1 => {
            let w1 = crate::group::load_builtin("W1")?;
            w1.enumerate()?.to_vec()
        }
    };
    // orbit of the signed monomial: collect distinct images
    let mut seen: std::collections::HashSet<(Mono, String)> = std::collections::HashSet::new();
    let mut acc = MPoly::zero(&ring);
    for m in &els {
        let img = base.act_matrix(m);
        assert_eq!(img.nterms(), 1, "signed monomial group expected");
        let (mo, c) = (&img.terms[0].0, &img.terms[0].1);
        if seen.insert((mo.clone(), c.to_string())) {
            acc = acc.add(&img);
        }
    }
    Ok(acc)
}

fn permute_all(perm: &mut [usize; 4], k: usize, out: &mut Vec<Matrix>) {
    if k == 4 {
        let f = Field::Q;
        out.push(
            (0..4)
                .map(|i| {
                    (0..4)
                        .map(|j| if perm[i] == j { f.one() } else { f.zero() })
                        .collect()
                })
                .collect(),
        );
        return;
    }
    for i in k..4 {
        perm.swap(k, i);
        permute_all(perm, k + 1, out);
        perm.swap(k, i);
    }
}

/// Elementary symmetric polynomial σ_i evaluated at (x1^k, .., x4^k).
pub fn sigma(i: usize, k: u32) -> MPoly {
    let ring = corpus_ring();
    let mut terms = Vec::new();
    let idxs = [0usize, 1, 2, 3];
    fn combos(idxs: &[usize], i: usize) -> Vec<Vec<usize>> {
        if i == 0 {
            return vec![vec![]];
        }
        if idxs.len() < i {
            return vec![];
        }
        let mut out = combos(&idxs[1..], i - 1)
            .into_iter()
            .map(|mut c| {
                c.insert(0, idxs[0]);
                c
            })
            .collect::<Vec<_>>();
        out.extend(combos(&idxs[1..], i));
        out
    }
    for c in combos(&idxs, i) {
        let mut e = vec![0u32; 4];
        for ix in c {
            e[ix] = k;
        }
        terms.push((Mono(e), Field::Q.one()));
    }
    MPoly::from_terms(&ring, terms)
}

/// The paper's explicit polynomials, by name. Accepted names (case
/// insensitive): g, g2, g3, g4, m611_minus, phi1_F4, phi2_F4,
/// Fu2_G29, Fu3_G29, phi1_G29, phi2_G29.
pub fn corpus_get(name: &str) -> Result<MPoly, InvariantError> {
    let n = name.to_ascii_lowercase();
    let int = |k: i64| Rat::from_integer(BigInt::from(k));
    match n.as_str() {
        "g" => {
            let terms: [(i64, &[u32]); 10] = [
                (1, &[8]),
                (-6, &[6, 2]),
                (-60, &[6, 1, 1]),
                (2240, &[5, 2, 1]),
                (-14, &[4, 4]),
                (10180, &[4, 3, 1]),
                (40412, &[4, 2, 2]),
                (-23440, &[4, 2, 1, 1]),
                (111980, &[3, 3, 2]),
                (154704, &[2, 2, 2, 2]),
            ];
            let mut acc = MPoly::zero(&corpus_ring());
            for (c, lam) in terms {
                let m = orbit_sum(OrbitKind::W1, lam)?;
                acc = acc.add(&m.scale_rat(&int(c)));
            }
            Ok(acc)
        }
        "g2" => Ok(corpus_get("g")?.power_substitute(2)),
        "g3" => Ok(corpus_get("g")?.power_substitute(3)),
        "g4" => Ok(corpus_get("g")?.power_substitute(4)),
        "m611_minus" => orbit_sum(OrbitKind::W1, &[6, 1, 1]),
        "phi1_f4" => {
            // 7σ1[2]^4 − 72σ1[2]^2σ2[2] + 4320σ4[2] + 432σ2[4]
            let p = sigma(1, 2).pow(4).scale_rat(&int(7));
            let p = p.sub(&sigma(1, 2).pow(2).mul(&sigma(2, 2)).scale_rat(&int(72)));
            let p = p.add(&sigma(4, 2).scale_rat(&int(4320)));
            Ok(p.add(&sigma(2, 4).scale_rat(&int(432))))
        }
        "phi2_f4" => {
            // σ1[2]^4 − 9σ1[2]^2σ2[2] + 27σ2[2]^2 − 27σ1[2]σ3[2] + 324σ4[2]
            let p = sigma(1, 2).pow(4);
            let p = p.sub(&sigma(1, 2).pow(2).mul(&sigma(2, 2)).scale_rat(&int(9)));
            let p = p.add(&sigma(2, 2).pow(2).scale_rat(&int(27)));
            let p = p.sub(&sigma(1, 2).mul(&sigma(3, 2)).scale_rat(&int(27)));
            Ok(p.add(&sigma(4, 2).scale_rat(&int(324))))
        }
        "fu2_g29" => {
            // σ1[2]^4 − 32σ1[2]σ3[2] + 256σ4[2]
            let p = sigma(1, 2).pow(4);
            let p = p.sub(&sigma(1, 2).mul(&sigma(3, 2)).scale_rat(&int(32)));
            Ok(p.add(&sigma(4, 2).scale_rat(&int(256))))
        }
        "fu3_g29" => {
            // σ1[8] + 3σ1[2]^2σ2[2] + 2σ2[4] − 30σ1[2]σ3[2] + 240σ4[2]
            let p = sigma(1, 8);
            let p = p.add(&sigma(1, 2).pow(2).mul(&sigma(2, 2)).scale_rat(&int(3)));
            let p = p.add(&sigma(2, 4).scale_rat(&int(2)));
            let p = p.sub(&sigma(1, 2).mul(&sigma(3, 2)).scale_rat(&int(30)));
            Ok(p.add(&sigma(4, 2).scale_rat(&int(240))))
        }
        "phi1_g29" => {
            // σ1[2]^6 − 3/2σ1[2]^4σ2[2] − 78σ1[2]^2σ2[2]^2 + 585/2σ1[2]^3σ3[2]
            // + 208σ2[2]^3 − 990σ1[2]σ2[2]σ3[2] + 1710σ1[2]^2σ4[2]
            // + 1350σ3[2]^2 − 2880σ2[2]σ4[2]
            let half = |a: i64| Rat::new(BigInt::from(a), BigInt::from(2));
            let p = sigma(1, 2).pow(6);
            let p = p.sub(&sigma(1, 2).pow(4).mul(&sigma(2, 2)).scale_rat(&half(3)));
            let p = p.sub(&sigma(1, 2).pow(2).mul(&sigma(2, 2).pow(2)).scale_rat(&int(78)));
            let p = p.add(&sigma(1, 2).pow(3).mul(&sigma(3, 2)).scale_rat(&half(585)));
            let p = p.add(&sigma(2, 2).pow(3).scale_rat(&int(208)));
            let p = p.sub(&sigma(1, 2).mul(&sigma(2, 2)).mul(&sigma(3, 2)).scale_rat(&int(990)));
            let p = p.add(&sigma(1, 2).pow(2).mul(&sigma(4, 2)).scale_rat(&int(1710)));
            let p = p.add(&sigma(3, 2).pow(2).scale_rat(&int(1350)));
            Ok(p.sub(&sigma(2, 2).mul(&sigma(4, 2)).scale_rat(&int(2880))))
        }
        "phi2_g29" => {
            // σ3[2]σ1[2]^3 − 4σ1[2]σ2[2]σ3[2] + 4σ1[2]^2σ4[2] + 4σ3[2]^2
            let p = sigma(3, 2).mul(&sigma(1, 2).pow(3));
            let p = p.sub(&sigma(1, 2).mul(&sigma(2, 2)).mul(&sigma(3, 2)).scale_rat(&int(4)));
            let p = p.add(&sigma(1, 2).pow(2).mul(&sigma(4, 2)).scale_rat(&int(4)));
            Ok(p.add(&sigma(3, 2).pow(2).scale_rat(&int(4))))
        }
        _ => Err(InvariantError::UnknownName(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::load_builtin;
    use crate::poly::parse_poly;

    #[test]
    fn molien_product_formula_h3() {
        let m = molien_from_degrees(&[2, 6, 10], 6);
        assert_eq!(m, vec![1, 0, 1, 0, 1, 0, 2]);
    }

    #[test]
    fn molien_exact_matches_products() {
        for name in ["G23", "G25", "G28"] {
            let g = load_builtin(name).unwrap();
            let degs = g.degrees.clone().unwrap();
            let maxd = 12usize;
            let exact = molien_coefficients(&g, maxd).unwrap();
            let prod = molien_from_degrees(&degs, maxd);
            assert_eq!(exact, prod, "{name}");
        }
    }

    #[test]
    fn molien_g24_degree14() {
        let g = load_builtin("G24").unwrap();
        let m = molien_coefficients(&g, 14).unwrap();
        assert_eq!(m[14], 2);
        assert_eq!(m, molien_from_degrees(&[4, 6, 14], 14));
    }

    #[test]
    fn reynolds_small_spaces() {
        let g25 = load_builtin("G25").unwrap();
        let sp = reynolds_basis(&g25, 12).unwrap();
        assert_eq!(sp.basis.len(), 2);
        let g28 = load_builtin("G28").unwrap();
        let sp = reynolds_basis(&g28, 2).unwrap();
        assert_eq!(sp.basis.len(), 1);
        // B4-standard form: the quadratic invariant is the sum of squares
        let r = natural_ring(&g28);
        let expect = parse_poly(&r, "x1^2 + x2^2 + x3^2 + x4^2").unwrap();
        assert_eq!(sp.basis[0], normalize_invariant(&expect));
    }

    #[test]
    fn fundamental_scan_h3() {
        let g = load_builtin("G23").unwrap();
        let fs = fundamental_scan(&g).unwrap();
        assert_eq!(fs.r, 2);
        assert_eq!(fs.invariants.len(), 2);
        assert_eq!(fs.invariants[0].total_degree(), 2);
        assert_eq!(fs.invariants[1].total_degree(), 6);
        assert_eq!(fs.product_exponents, vec![3]);
    }

    #[test]
    fn fundamental_scan_g28() {
        let g = load_builtin("G28").unwrap();
        let fs = fundamental_scan(&g).unwrap();
        assert_eq!(fs.r, 2);
        assert_eq!(fs.invariants[1].total_degree(), 6);
        assert_eq!(fs.product_exponents, vec![3]); // f1^3 at degree 6
    }

    #[test]
    fn orbit_sums_basic() {
        let m8 = orbit_sum(OrbitKind::Sym, &[8]).unwrap();
        let r = corpus_ring();
        assert_eq!(m8, parse_poly(&r, "x1^8+x2^8+x3^8+x4^8").unwrap());
        // all even: signed equals plain
        let a = orbit_sum(OrbitKind::Sym, &[4, 4]).unwrap();
        let b = orbit_sum(OrbitKind::W1, &[4, 4]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn m611_minus_matches_display() {
        let m = corpus_get("m611_minus").unwrap();
        assert_eq!(m.nterms(), 12);
        let r = corpus_ring();
        let expect = parse_poly(
            &r,
            "x1^6 x2 x3 + x1^6 x2 x4 - x1^6 x3 x4 + x1 x2^6 x3 - x1 x2^6 x4 \
             + x2^6 x3 x4 + x1 x2 x3^6 + x1 x3^6 x4 - x2 x3^6 x4 - x1 x2 x4^6 \
             - x1 x3 x4^6 - x2 x3 x4^6",
        )
        .unwrap();
        assert_eq!(m, expect);
    }

    #[test]
    fn corpus_invariance_f4() {
        let g28 = load_builtin("G28").unwrap();
        for name in ["phi1_F4", "phi2_F4"] {
            let p = corpus_get(name).unwrap();
            for m in &g28.gens {
                assert!(p.act_matrix(m) == p, "{name}");
            }
        }
    }

    #[test]
    fn corpus_invariance_g29() {
        let g29 = load_builtin("G29").unwrap();
        for name in ["Fu2_G29", "Fu3_G29", "phi1_G29", "phi2_G29"] {
            let p = corpus_get(name).unwrap();
            for m in &g29.gens {
                let moved = p.act_matrix(m);
                // embed p into the Q(i) ring for comparison
                let q = p.into_ring(&moved.ring);
                assert!(moved == q, "{name}");
            }
        }
    }

    #[test]
    fn g_invariant_under_w1() {
        let g = corpus_get("g").unwrap();
        assert_eq!(g.total_degree(), 8);
        assert!(g.is_homogeneous());
        let w1 = load_builtin("W1").unwrap();
        for m in &w1.gens {
            assert!(g.act_matrix(m) == g);
        }
    }

    #[test]
    fn g2_invariant_under_w2() {
        let g2 = corpus_get("g2").unwrap();
        let w2 = load_builtin("W2").unwrap();
        for m in &w2.gens {
            let moved = g2.act_matrix(m);
            let q = g2.into_ring(&moved.ring);
            assert!(moved == q);
        }
    }

    #[test]
    fn g3_invariant_under_g32() {
        let g3 = corpus_get("g3").unwrap();
        let w3 = load_builtin("G32").unwrap();
        for m in &w3.gens {
            let moved = g3.act_matrix(m);
            let q = g3.into_ring(&moved.ring);
            assert!(moved == q);
        }
    }
}
