//! Gröbner bases (Buchberger), normal forms, elimination, dimension.

use crate::poly::{MPoly, MonOrd, Mono, Ring, RingRef};

/// Full normal form of `f` with respect to `gens` (top and tail reduction).
/// All polynomials must share a ring with a global ordering.
pub fn normal_form(f: &MPoly, gens: &[MPoly]) -> MPoly {
    let ring = &f.ring;
    let mut rem = MPoly::zero(ring);
    let mut cur = f.clone();
    'outer: while let Some((lm, lc)) = cur.lt().map(|(m, c)| (m.clone(), c.clone())) {
        for g in gens {
            if g.is_zero() {
                continue;
            }
            let (gm, gc) = g.lt().unwrap();
            if gm.divides(&lm) {
                let q = lm.div(gm);
                let coef = lc.div(gc).expect("division by leading coefficient");
                let sub = g.mul(&MPoly::monomial(ring, q, coef));
                cur = cur.sub(&sub);
                continue 'outer;
            }
        }
        // leading term is irreducible: move it to the remainder
        let lead = MPoly::monomial(ring, lm.clone(), lc.clone());
        rem = rem.add(&lead);
        cur = cur.sub(&lead);
    }
    rem
}

/// Normalize a working basis element: strip rational content only. Making
/// elements monic over a number field inflates coefficients badly, so the
/// monic pass happens once, in interreduce.
fn normalize(p: &MPoly) -> MPoly {
    let c = p.rational_content();
    p.scale_rat(&(num_rational::BigRational::from_integer(1.into()) / c))
}

/// Reduce `f` until its leading term is irreducible against `gens` (top
/// reduction only; the tail is left alone). Sufficient for the Buchberger
/// loop and far cheaper than a full normal form: full tail reduction
/// manufactures dense polynomials with enormous coefficients mid-run.
fn top_normal_form(f: &MPoly, gens: &[MPoly]) -> MPoly {
    let ring = &f.ring;
    let mut cur = f.clone();
    'outer: while let Some((lm, lc)) = cur.lt().map(|(m, c)| (m.clone(), c.clone())) {
        for g in gens {
            if g.is_zero() {
                continue;
            }
            let (gm, gc) = g.lt().unwrap();
            if gm.divides(&lm) {
                // pseudo-reduction: cross-multiply instead of dividing by
                // the leading coefficient. Inverting a number-field element
                // drags in its conjugate and doubles coefficient size at
                // every step; scalar multiples are harmless here.
                let q = lm.div(gm);
                let sub = g.mul(&MPoly::monomial(ring, q, lc.clone()));
                cur = cur.scale(&gc.clone()).sub(&sub);
                cur = normalize(&cur);
                continue 'outer;
            }
        }
        break;
    }
    cur
}

fn spoly(f: &MPoly, g: &MPoly) -> MPoly {
    // cross-multiplied form (gc·x^a·f - fc·x^b·g): no field inverses, which
    // matters over number fields (see top_normal_form)
    let ring = &f.ring;
    let (fm, fc) = f.lt().unwrap();
    let (gm, gc) = g.lt().unwrap();
    let l = fm.lcm(gm);
    let a = MPoly::monomial(ring, l.div(fm), gc.clone());
    let b = MPoly::monomial(ring, l.div(gm), fc.clone());
    f.mul(&a).sub(&g.mul(&b))
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u32,
}

/// Buchberger with Gebauer–Möller pair pruning and sugar selection;
/// returns the reduced Gröbner basis (monic, fully interreduced, sorted
/// descending by LM).
pub fn groebner(gens: &[MPoly]) -> Vec<MPoly> {
    let Some(first) = gens.iter().find(|g| !g.is_zero()) else {
        return vec![];
    };
    let ring = first.ring.clone();
    assert!(ring.order.is_global(), "groebner requires a global ordering");
    if ring.field == crate::field::Field::Q && ring.order == MonOrd::Grevlex {
        // rational grevlex inputs go through the certified modular engine;
        // direct Buchberger over Q suffers severe coefficient swell
        return groebner_certified(gens);
    }
    let trace = std::env::var_os("CRG_GB_TRACE").is_some();

    let mut basis: Vec<MPoly> = Vec::new();
    let mut sugars: Vec<u32> = Vec::new();
    // active members are usable reducers; members whose LM became divisible
    // by a newer LM are deactivated (their pending pairs stay)
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    // Gebauer–Möller UPDATE: install h, prune new and old pairs
    let update = |h: MPoly,
                  sugar: u32,
                  basis: &mut Vec<MPoly>,
                  sugars: &mut Vec<u32>,
                  active: &mut Vec<bool>,
                  pairs: &mut Vec<Pair>| {
        let hl = h.lm().unwrap().clone();
        let n = basis.len();
        let mk = |g: usize, basis: &Vec<MPoly>, sugars: &Vec<u32>| -> Pair {
            let gl = basis[g].lm().unwrap();
            let l = hl.lcm(gl);
            let s = (sugar + l.deg() - hl.deg()).max(sugars[g] + l.deg() - gl.deg());
            Pair { i: g, j: n, lcm: l, sugar: s }
        };
        let mut c: Vec<Pair> = (0..n)
            .filter(|&g| active[g])
            .map(|g| mk(g, basis, sugars))
            .collect();
        let mut d: Vec<Pair> = Vec::new();
        while let Some(p) = c.pop() {
            let cop = hl.coprime(basis[p.i].lm().unwrap());
            let blocked = c
                .iter()
                .chain(d.iter())
                .any(|q| q.lcm.divides(&p.lcm));
            if cop || !blocked {
                d.push(p);
            }
        }
        // product criterion on survivors
        let e: Vec<Pair> = d
            .into_iter()
            .filter(|p| !hl.coprime(basis[p.i].lm().unwrap()))
            .collect();
        // old-pair (B) criterion
        pairs.retain(|p| {
            let l1 = hl.lcm(basis[p.i].lm().unwrap());
            let l2 = hl.lcm(basis[p.j].lm().unwrap());
            !hl.divides(&p.lcm) || l1 == p.lcm || l2 == p.lcm
        });
        pairs.extend(e);
        // deactivate superseded reducers
        for g in 0..n {
            if active[g] && hl.divides(basis[g].lm().unwrap()) {
                active[g] = false;
            }
        }
        basis.push(h);
        sugars.push(sugar);
        active.push(true);
    };

    for g in gens {
        if g.is_zero() {
            continue;
        }
        let h = normalize(g).monic();
        let s = h.total_degree();
        update(h, s, &mut basis, &mut sugars, &mut active, &mut pairs);
    }

    while !pairs.is_empty() {
        // sugar selection: smallest sugar, then smallest lcm in the order
        let mut best = 0;
        for k in 1..pairs.len() {
            let p = &pairs[k];
            let b = &pairs[best];
            if p.sugar < b.sugar
                || (p.sugar == b.sugar
                    && ring.order.cmp(&p.lcm, &b.lcm) == std::cmp::Ordering::Less)
            {
                best = k;
            }
        }
        let p = pairs.swap_remove(best);
        let s = spoly(&basis[p.i], &basis[p.j]);
        let reducers: Vec<MPoly> = basis
            .iter()
            .zip(active.iter())
            .filter(|(_, &a)| a)
            .map(|(b, _)| b.clone())
            .collect();
        let r = normal_form(&s, &reducers);
        if !r.is_zero() {
            let h = normalize(&r).monic();
            if trace {
                let csize = h
                    .terms
                    .iter()
                    .map(|(_, c)| format!("{c}").len())
                    .max()
                    .unwrap_or(0);
                eprintln!(
                    "gb: basis {} pairs {} new lm deg {} terms {} coeflen {} sugar {}",
                    basis.len() + 1,
                    pairs.len(),
                    h.lm().unwrap().deg(),
                    h.nterms(),
                    csize,
                    p.sugar
                );
            }
            update(h, p.sugar, &mut basis, &mut sugars, &mut active, &mut pairs);
        }
    }

    let final_basis: Vec<MPoly> = basis
        .into_iter()
        .zip(active)
        .filter(|(_, a)| *a)
        .map(|(b, _)| b)
        .collect();
    interreduce(final_basis)
}

/// Interreduce a generating set whose ideal of leading terms is already
/// final: drop redundant members, fully reduce each against the others.
fn interreduce(mut basis: Vec<MPoly>) -> Vec<MPoly> {
    // drop elements whose LM is divisible by another's LM
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (mi, mj) = (basis[i].lm().unwrap(), basis[j].lm().unwrap());
            if mj.divides(mi) && (mi != mj || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let kept: Vec<MPoly> = basis
        .drain(..)
        .zip(keep)
        .filter_map(|(b, k)| if k { Some(b) } else { None })
        .collect();
    // full tail reduction
    let mut out: Vec<MPoly> = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let others: Vec<MPoly> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let r = normal_form(&kept[i], &others);
        if !r.is_zero() {
            out.push(normalize(&r).monic());
        }
    }
    let ord = out
        .first()
        .map(|p| p.ring.order)
        .unwrap_or(MonOrd::Grevlex);
    out.sort_by(|a, b| ord.cmp(b.lm().unwrap(), a.lm().unwrap()));
    out
}

/// Certified multi-modular Gröbner basis over Q, grevlex order.
///
/// The basis is computed mod several 31-bit primes, lifted by CRT +
/// rational reconstruction, and then certified exactly: the input is
/// homogenized, so if (i) the lifted G is a Gröbner basis of the ideal it
/// generates (all S-polynomials reduce to zero, checked with exact
/// arithmetic), (ii) every homogenized input generator reduces to zero
/// modulo G, and (iii) lm(G) equals the mod-p leading ideal, then a
/// Hilbert-function comparison forces ⟨G⟩ to equal the input ideal:
/// degreewise, dim (R/⟨G⟩)_d = dim (R_p/I_p)_d ≥ dim (R/I)_d ≥
/// dim (R/⟨G⟩)_d, where the middle inequality is rank semicontinuity mod p
/// and the last is containment I ⊆ ⟨G⟩. Dehomogenizing a grevlex GB of the
/// homogenized ideal yields a grevlex GB of the affine ideal.
pub fn groebner_certified(gens: &[MPoly]) -> Vec<MPoly> {
    use crate::modp;
    let Some(first) = gens.iter().find(|g| !g.is_zero()) else {
        return vec![];
    };
    let ring = first.ring.clone();
    assert!(ring.field == crate::field::Field::Q, "certified GB needs rational coefficients");
    assert!(ring.order == MonOrd::Grevlex, "certified GB needs grevlex");
    let live: Vec<MPoly> = gens.iter().filter(|g| !g.is_zero()).map(|g| normalize(g)).collect();

    // homogenize with a cheapest extra variable
    let already_homogeneous = live.iter().all(|g| g.is_homogeneous());
    let (hring, hgens) = if already_homogeneous {
        (ring.clone(), live.clone())
    } else {
        let mut names: Vec<String> = ring.vars.clone();
        names.push("hh_".into());
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let hring = Ring::new(&refs, &ring.field, MonOrd::Grevlex);
        let hg = live.iter().map(|g| homogenize(g, &hring)).collect();
        (hring, hg)
    };

    let mut primes = modp::prime_sequence();
    // buckets keyed by the GB support (leading ideal + full monomial support)
    struct Bucket {
        support: Vec<Vec<Mono>>,
        modulus: num_bigint::BigInt,
        residues: Vec<Vec<num_bigint::BigInt>>,
        count: usize,
    }
    let mut buckets: Vec<Bucket> = Vec::new();
    let mut last_lift: Option<Vec<MPoly>> = None;
    for _attempt in 0..400 {
        let p = primes.next().unwrap();
        let Some(pgens) = hgens
            .iter()
            .map(|g| modp::reduce_mod_p(g, p))
            .collect::<Option<Vec<_>>>()
        else {
            continue; // denominator vanished: unlucky prime
        };
        let gb_p = modp::groebner_p(&pgens, p, MonOrd::Grevlex);
        let support: Vec<Vec<Mono>> = gb_p
            .iter()
            .map(|g| g.terms.iter().map(|(m, _)| m.clone()).collect())
            .collect();
        let idx = buckets.iter().position(|b| b.support == support);
        let idx = match idx {
            Some(i) => {
                let b = &mut buckets[i];
                for (res, g) in b.residues.iter_mut().zip(&gb_p) {
                    for (r, (_, c)) in res.iter_mut().zip(&g.terms) {
                        *r = modp::crt(r, &b.modulus, *c, p);
                    }
                }
                b.modulus *= num_bigint::BigInt::from(p);
                b.count += 1;
                i
            }
            None => {
                buckets.push(Bucket {
                    support,
                    modulus: num_bigint::BigInt::from(p),
                    residues: gb_p
                        .iter()
                        .map(|g| {
                            g.terms
                                .iter()
                                .map(|(_, c)| num_bigint::BigInt::from(*c))
                                .collect()
                        })
                        .collect(),
                    count: 1,
                });
                buckets.len() - 1
            }
        };
        let b = &buckets[idx];
        if b.count < 2 {
            continue;
        }
        let Some(cand) = modp::lift_basis(&b.support, &b.residues, &b.modulus, &hring) else {
            last_lift = None;
            continue;
        };
        // run the expensive exact verification only once the reconstruction
        // is stable across two consecutive primes
        let stable = last_lift.as_deref() == Some(cand.as_slice());
        last_lift = Some(cand.clone());
        if stable && verify_groebner(&cand, &hgens) {
            let affine = if already_homogeneous {
                cand
            } else {
                cand.iter()
                    .map(|g| g.dehomogenize(hring.nvars() - 1).unwrap().embed(&ring))
                    .collect()
            };
            return interreduce(affine);
        }
    }
    panic!("certified modular Groebner failed to stabilize after 40 primes");
}

fn homogenize(g: &MPoly, hring: &RingRef) -> MPoly {
    let d = g.total_degree();
    let terms = g
        .terms
        .iter()
        .map(|(m, c)| {
            let mut e = m.0.clone();
            e.push(d - m.deg());
            (Mono(e), c.clone())
        })
        .collect();
    MPoly::from_terms(hring, terms)
}

/// Exact Buchberger certification: every S-polynomial of `g` reduces to
/// zero, and every input generator reduces to zero. Pairs are pruned by the
/// product criterion and by Buchberger's chain criterion applied along an
/// lcm-sorted processing order; the surviving normal forms are independent
/// and run in parallel.
fn verify_groebner(g: &[MPoly], gens: &[MPoly]) -> bool {
    use rayon::prelude::*;
    if g.iter().any(|x| x.is_zero()) {
        return false;
    }
    let ring = g[0].ring.clone();
    let lms: Vec<Mono> = g.iter().map(|x| x.lm().unwrap().clone()).collect();
    let mut pairs: Vec<(usize, usize, Mono)> = Vec::new();
    for i in 0..g.len() {
        for j in 0..i {
            pairs.push((j, i, lms[i].lcm(&lms[j])));
        }
    }
    pairs.sort_by(|a, b| ring.order.cmp(&a.2, &b.2));
    let mut survivors: Vec<(usize, usize)> = Vec::new();
    let mut done: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    for (i, j, l) in &pairs {
        let key = (*i, *j);
        if lms[*i].coprime(&lms[*j]) {
            done.insert(key);
            continue;
        }
        let mut skip = false;
        for (k, lk) in lms.iter().enumerate() {
            if k == *i || k == *j || !lk.divides(l) {
                continue;
            }
            let p1 = (k.min(*i), k.max(*i));
            let p2 = (k.min(*j), k.max(*j));
            if done.contains(&p1) && done.contains(&p2) {
                skip = true;
                break;
            }
        }
        done.insert(key);
        if !skip {
            survivors.push(key);
        }
    }
    let ok = survivors
        .par_iter()
        .all(|&(i, j)| normal_form(&spoly(&g[i], &g[j]), g).is_zero());
    ok && gens.par_iter().all(|f| normal_form(f, g).is_zero())
}

/// Ideal membership: f reduces to 0 modulo the Gröbner basis.
pub fn in_ideal(f: &MPoly, gb: &[MPoly]) -> bool {
    normal_form(f, gb).is_zero()
}

/// Replace number-field coefficients by a new last variable `t_` carrying
/// the field generator, and append the generator's minimal polynomial. The
/// returned system generates the preimage of the ideal in Q[x, t_], and the
/// quotient rings are isomorphic: Q[x, t_]/Ĵ ≅ K[x]/J. Krull dimension,
/// unit-ideal detection, and elimination questions transfer directly, which
/// lets all heavy Gröbner work run through the certified rational engine.
pub fn adjoin_generator(gens: &[MPoly]) -> (RingRef, Vec<MPoly>) {
    use num_traits::Zero;
    let ring = &gens
        .iter()
        .find(|g| !g.is_zero())
        .expect("nonzero generator required")
        .ring;
    let crate::field::Field::Ext(nf) = &ring.field else {
        panic!("adjoin_generator expects number-field coefficients");
    };
    let mut names: Vec<String> = ring.vars.clone();
    names.push("t_".into());
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let qring = Ring::new(&refs, &crate::field::Field::Q, ring.order);
    let mut out: Vec<MPoly> = gens
        .iter()
        .map(|g| {
            let mut terms = Vec::new();
            for (m, c) in &g.terms {
                for (j, a) in c.coeffs.iter().enumerate() {
                    if !a.is_zero() {
                        let mut e = m.0.clone();
                        e.push(j as u32);
                        terms.push((Mono(e), crate::field::Field::Q.from_rat(a.clone())));
                    }
                }
            }
            MPoly::from_terms(&qring, terms)
        })
        .collect();
    let n = qring.nvars();
    let minp = MPoly::from_terms(
        &qring,
        nf.min_poly
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(j, a)| {
                let mut e = vec![0u32; n];
                e[n - 1] = j as u32;
                (Mono(e), crate::field::Field::Q.from_rat(a.clone()))
            })
            .collect(),
    );
    out.push(minp);
    (qring, out)
}

/// Krull dimension of the zero locus over the coefficient field. Over Q this
/// is `dimension(groebner(gens))`; over a number field the generator is
/// adjoined as a variable first, which leaves the dimension unchanged (the
/// adjoined coordinate is algebraic over the base).
pub fn dimension_over_field(gens: &[MPoly]) -> i64 {
    let Some(first) = gens.iter().find(|g| !g.is_zero()) else {
        return gens.first().map(|g| g.ring.nvars() as i64).unwrap_or(0);
    };
    match first.ring.field {
        crate::field::Field::Q => dimension(&groebner(gens)),
        crate::field::Field::Ext(_) => {
            let (_, hat) = adjoin_generator(gens);
            dimension(&groebner(&hat))
        }
    }
}

/// Is the ideal the unit ideal?
pub fn is_unit_ideal(gb: &[MPoly]) -> bool {
    gb.iter().any(|g| g.total_degree() == 0 && !g.is_zero())
}

/// Eliminate the first `k` variables: compute a Gröbner basis under
/// BLOCK_ELIM(k) and keep the members free of the first k variables.
/// Returned polynomials live in a ring on the remaining variables (grevlex).
pub fn eliminate(gens: &[MPoly], k: usize) -> Vec<MPoly> {
    let Some(first) = gens.iter().find(|g| !g.is_zero()) else {
        return vec![];
    };
    let ring = &first.ring;
    let ering = ring.with_order(MonOrd::BlockElim(k));
    let egens: Vec<MPoly> = gens.iter().map(|g| g.into_ring(&ering)).collect();
    let gb = groebner(&egens);
    let rest: Vec<&str> = ring.vars[k..].iter().map(|s| s.as_str()).collect();
    let rring = Ring::new(&rest, &ring.field, MonOrd::Grevlex);
    let mut out = Vec::new();
    for g in gb {
        if g.terms.iter().all(|(m, _)| m.0[..k].iter().all(|&e| e == 0)) {
            let terms = g
                .terms
                .iter()
                .map(|(m, c)| (Mono(m.0[k..].to_vec()), c.clone()))
                .collect();
            out.push(MPoly::from_terms(&rring, terms));
        }
    }
    out
}

/// Krull dimension of R/I from a Gröbner basis: the size of the largest
/// subset S of variables such that no leading monomial is supported inside
/// S. Returns -1 for the unit ideal.
pub fn dimension(gb: &[MPoly]) -> i64 {
    if is_unit_ideal(gb) {
        return -1;
    }
    let Some(first) = gb.first() else {
        // zero ideal: whole space
        return i64::MAX; // caller should handle; avoided in practice
    };
    let n = first.ring.nvars();
    assert!(n <= 16, "dimension: too many variables");
    let lms: Vec<&Mono> = gb.iter().map(|g| g.lm().unwrap()).collect();
    let mut best: i64 = -1;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as i64;
        if size <= best {
            continue;
        }
        // S independent iff no LM has support contained in S
        let ok = lms.iter().all(|m| {
            m.0.iter()
                .enumerate()
                .any(|(i, &e)| e > 0 && mask & (1 << i) == 0)
        });
        if ok {
            best = size;
        }
    }
    best
}

/// Vector-space dimension of R/I for a zero-dimensional ideal: the number
/// of standard monomials (monomials outside the leading-term ideal).
pub fn quotient_degree(gb: &[MPoly]) -> Option<u64> {
    if gb.is_empty() {
        return None;
    }
    let ring = &gb[0].ring;
    let n = ring.nvars();
    // per-variable caps: need a pure power of each variable among the LMs
    let mut caps = vec![None; n];
    for g in gb {
        let m = g.lm().unwrap();
        let supp: Vec<usize> = (0..n).filter(|&i| m.0[i] > 0).collect();
        if supp.len() == 1 {
            let i = supp[0];
            let e = m.0[i];
            if caps[i].map_or(true, |c| e < c) {
                caps[i] = Some(e);
            }
        }
        if m.deg() == 0 {
            return Some(0); // unit ideal
        }
    }
    let caps: Option<Vec<u32>> = caps.into_iter().collect();
    let caps = caps?; // not zero-dimensional
    let lms: Vec<&Mono> = gb.iter().map(|g| g.lm().unwrap()).collect();
    // enumerate the box and count standard monomials
    let mut count = 0u64;
    let mut idx = vec![0u32; n];
    loop {
        let m = Mono(idx.clone());
        if !lms.iter().any(|l| l.divides(&m)) {
            count += 1;
        }
        // increment
        let mut i = 0;
        loop {
            if i == n {
                return Some(count);
            }
            idx[i] += 1;
            if idx[i] >= caps[i] {
                idx[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::{parse_poly, RingRef};

    fn ring3(order: MonOrd) -> RingRef {
        Ring::new(&["x1", "x2", "x3"], &Field::Q, order)
    }

    fn ps(r: &RingRef, ss: &[&str]) -> Vec<MPoly> {
        ss.iter().map(|s| parse_poly(r, s).unwrap()).collect()
    }

    #[test]
    fn groebner_of_gb_is_itself() {
        let r = ring3(MonOrd::Lex);
        let gens = ps(&r, &["x1 - x3^2", "x2 - x3^3"]);
        let gb = groebner(&gens);
        assert_eq!(gb.len(), 2);
        for g in &gens {
            assert!(in_ideal(g, &gb));
        }
    }

    #[test]
    fn spolys_reduce_to_zero() {
        let r = ring3(MonOrd::Grevlex);
        let gens = ps(&r, &["x1^2 + x2^2 + x3^2 - 1", "x1*x2 - x3", "x1^3 - x2"]);
        let gb = groebner(&gens);
        for i in 0..gb.len() {
            for j in 0..i {
                let s = spoly(&gb[i], &gb[j]);
                assert!(normal_form(&s, &gb).is_zero());
            }
        }
        // generators lie in the ideal
        for g in &gens {
            assert!(in_ideal(g, &gb));
        }
    }

    #[test]
    fn elimination_computes_resultant_like_relation() {
        // x2 = x1^2, x3 = x1^3  =>  eliminating x1 gives x2^3 - x3^2
        let r = ring3(MonOrd::Grevlex);
        let gens = ps(&r, &["x2 - x1^2", "x3 - x1^3"]);
        let out = eliminate(&gens, 1);
        assert_eq!(out.len(), 1);
        let expect = parse_poly(&out[0].ring, "x2^3 - x3^2").unwrap();
        assert_eq!(out[0], expect.monic());
    }

    #[test]
    fn dimension_cases() {
        let r = ring3(MonOrd::Grevlex);
        // hypersurface: dim 2
        let gb = groebner(&ps(&r, &["x1^2 + x2^2 + x3^2 - 1"]));
        assert_eq!(dimension(&gb), 2);
        // a point: dim 0, degree 1
        let gb = groebner(&ps(&r, &["x1 - 1", "x2 - 2", "x3"]));
        assert_eq!(dimension(&gb), 0);
        assert_eq!(quotient_degree(&gb), Some(1));
        // unit ideal
        let gb = groebner(&ps(&r, &["x1", "x1 + 1"]));
        assert!(is_unit_ideal(&gb));
        assert_eq!(dimension(&gb), -1);
        // twisted-cubic-style curve: dim 1
        let gb = groebner(&ps(&r, &["x2 - x1^2", "x3 - x1^3"]));
        assert_eq!(dimension(&gb), 1);
    }

    #[test]
    fn quotient_degree_counts_intersection_points() {
        // circle and line meet in 2 points
        let r = Ring::new(&["x1", "x2"], &Field::Q, MonOrd::Grevlex);
        let gb = groebner(&ps(&r, &["x1^2 + x2^2 - 1", "x1 - x2"]));
        assert_eq!(dimension(&gb), 0);
        assert_eq!(quotient_degree(&gb), Some(2));
        // two conics: 4 points (Bezout)
        let gb = groebner(&ps(&r, &["x1^2 + x2^2 - 4", "x1^2 - x2 - 1"]));
        assert_eq!(quotient_degree(&gb), Some(4));
    }

    #[test]
    fn cyclic3_zero_dimensional() {
        let r = ring3(MonOrd::Grevlex);
        let gens = ps(
            &r,
            &["x1 + x2 + x3", "x1*x2 + x2*x3 + x3*x1", "x1*x2*x3 - 1"],
        );
        let gb = groebner(&gens);
        assert_eq!(dimension(&gb), 0);
        assert_eq!(quotient_degree(&gb), Some(6));
    }

    #[test]
    fn membership_respects_arithmetic() {
        let r = ring3(MonOrd::Grevlex);
        let gens = ps(&r, &["x1^2 - x2", "x2^2 - x3"]);
        let gb = groebner(&gens);
        let f = parse_poly(&r, "x1^4 - x3").unwrap();
        assert!(in_ideal(&f, &gb));
        let g = parse_poly(&r, "x1^4 - x3 + 1").unwrap();
        assert!(!in_ideal(&g, &gb));
    }
}
