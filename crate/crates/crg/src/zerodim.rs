//! Zero-dimensional ideals: quotient algebra, geometric point counting via
//! random linear forms, explicit point extraction over splitting fields,
//! and the derivation-based absolute-irreducibility test for plane curves.

use crate::field::{Elem, Field, NumberField, Rat};
use crate::ideal::{dimension, groebner, is_unit_ideal, normal_form, quotient_degree};
use crate::poly::{MPoly, Mono, Ring, RingRef};
use crate::unipoly::UPoly;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ZeroDimError {
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("splitting field degree {0} exceeds cap {1}")]
    SplittingFieldTooLarge(usize, usize),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("generic linear form not found")]
    NoGenericForm,
}

/// Splitting cap: points over extensions of degree beyond this are reported
/// by conjugacy class only.
pub const SPLITTING_CAP: usize = 16;

/// A conjugacy class of geometric points: all coordinates lie in one field
/// (the base field or a constructed extension); the class contributes
/// `field_degree / base_degree` geometric points (its Galois conjugates).
#[derive(Debug, Clone)]
pub struct PointClass {
    pub field: Field,
    /// Degree of the class over the base field (number of conjugate points).
    pub class_degree: usize,
    pub point: Vec<Elem>,
}

#[derive(Debug, Clone)]
pub struct ZeroDimDescription {
    pub degree: u64,
    pub radical_degree: u64,
    /// Explicit points, one representative per conjugacy class, when all
    /// classes are within the splitting cap.
    pub points: Option<Vec<PointClass>>,
    /// Seed used for the random linear forms (reproducibility).
    pub seed: u64,
}

/// The quotient algebra R/I for a zero-dimensional I, with a monomial basis.
pub struct Quotient {
    pub gb: Vec<MPoly>,
    pub basis: Vec<Mono>,
    pub ring: RingRef,
}

impl Quotient {
    pub fn new(gb: Vec<MPoly>) -> Result<Quotient, ZeroDimError> {
        if gb.is_empty() || dimension(&gb) != 0 {
            return Err(ZeroDimError::NotZeroDimensional);
        }
        let ring = gb[0].ring.clone();
        let n = ring.nvars();
        let lms: Vec<Mono> = gb.iter().map(|g| g.lm().unwrap().clone()).collect();
        let mut caps = vec![0u32; n];
        for m in &lms {
            let supp: Vec<usize> = (0..n).filter(|&i| m.0[i] > 0).collect();
            if supp.len() == 1 && (caps[supp[0]] == 0 || m.0[supp[0]] < caps[supp[0]]) {
                caps[supp[0]] = m.0[supp[0]];
            }
        }
        if caps.iter().any(|&c| c == 0) {
            return Err(ZeroDimError::NotZeroDimensional);
        }
        // enumerate standard monomials
        let mut basis = Vec::new();
        let mut idx = vec![0u32; n];
        'outer: loop {
            let m = Mono(idx.clone());
            if !lms.iter().any(|l| l.divides(&m)) {
                basis.push(m);
            }
            let mut i = 0;
            loop {
                if i == n {
                    break 'outer;
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
        let ord = ring.order;
        basis.sort_by(|a, b| ord.cmp(a, b));
        Ok(Quotient { gb, basis, ring })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of f mod I in the standard-monomial basis.
    pub fn coords(&self, f: &MPoly) -> Vec<Elem> {
        let nf = normal_form(f, &self.gb);
        let field = &self.ring.field;
        let mut v = vec![field.zero(); self.basis.len()];
        for (m, c) in &nf.terms {
            let i = self
                .basis
                .iter()
                .position(|b| b == m)
                .expect("normal form outside standard basis");
            v[i] = c.clone();
        }
        v
    }

    /// Minimal polynomial of the multiplication-by-f operator (monic, as a
    /// univariate polynomial over the coefficient field).
    pub fn min_poly_of(&self, f: &MPoly) -> UPoly {
        let field = &self.ring.field;
        let d = self.dim();
        // rows: coordinates of f^0, f^1, ... until linear dependency
        let mut rows: Vec<Vec<Elem>> = Vec::new();
        let mut pow = MPoly::one(&self.ring);
        loop {
            let v = self.coords(&pow);
            // try to express v in the row space; if dependent, recover combo
            if let Some(combo) = in_row_space(&rows, &v, field) {
                // f^k = sum combo_i f^i  =>  minpoly = x^k - sum combo_i x^i
                let mut coeffs: Vec<Elem> = combo.iter().map(|c| c.neg()).collect();
                coeffs.push(field.one());
                return UPoly::new(field, coeffs);
            }
            rows.push(v);
            if rows.len() > d + 1 {
                unreachable!("minimal polynomial search exceeded quotient dimension");
            }
            pow = pow.mul(f);
        }
    }
}

/// Minimal polynomial of f over a number field K = Q(θ), read off from the
/// quotient of the generator-adjoined ideal (see
/// [`crate::ideal::adjoin_generator`]): the quotient is a Q-algebra in which
/// the variable `t_var` acts as θ, so a monic K-relation
/// u^m = Σ c_{ij} θ^j u^i is exactly a Q-linear dependence of f^m on the
/// vectors {t^j f^i : i < m, j < deg K}. The first such dependence gives the
/// monic generator of J ∩ K[f], multiplicities included.
pub fn min_poly_over_adjoined(q: &Quotient, f: &MPoly, t_var: usize, ext: &Field) -> UPoly {
    let k = ext.degree();
    let base = &q.ring.field;
    let t = MPoly::var(&q.ring, t_var);
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    let mut tags: Vec<(usize, usize)> = Vec::new();
    let mut pow = MPoly::one(&q.ring);
    let mut i = 0usize;
    loop {
        let v = q.coords(&pow);
        if let Some(combo) = in_row_space(&rows, &v, base) {
            let mut coeffs: Vec<Elem> = vec![ext.zero(); i + 1];
            for (r, c) in combo.iter().enumerate() {
                if !c.is_zero() {
                    let (ir, jr) = tags[r];
                    coeffs[ir].coeffs[jr] = &coeffs[ir].coeffs[jr] - &c.coeffs[0];
                }
            }
            coeffs[i] = ext.one();
            return UPoly::new(ext, coeffs);
        }
        rows.push(v);
        tags.push((i, 0));
        let mut tp = pow.clone();
        for j in 1..k {
            tp = tp.mul(&t);
            rows.push(q.coords(&tp));
            tags.push((i, j));
        }
        assert!(rows.len() <= k * (q.dim() + 1), "minimal polynomial search overran the quotient");
        pow = pow.mul(f);
        i += 1;
    }
}

/// If v lies in the span of rows, return the coefficients expressing it.
fn in_row_space(rows: &[Vec<Elem>], v: &[Elem], field: &Field) -> Option<Vec<Elem>> {
    // Gaussian elimination on the fly: carry an augmented identity
    let k = rows.len();
    if k == 0 {
        return if v.iter().all(|c| c.is_zero()) {
            Some(vec![])
        } else {
            None
        };
    }
    let n = v.len();
    let mut a: Vec<Vec<Elem>> = Vec::with_capacity(k);
    for (i, r) in rows.iter().enumerate() {
        let mut row = r.clone();
        for j in 0..k {
            row.push(if i == j { field.one() } else { field.zero() });
        }
        a.push(row);
    }
    let mut target: Vec<Elem> = v.to_vec();
    let mut tcoef = vec![field.zero(); k];
    // reduce a to row echelon while applying the same ops conceptually;
    // then reduce target against the echelon rows
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].inv().unwrap();
        for c in 0..n + k {
            a[r][c] = a[r][c].mul(&inv);
        }
        for i in 0..a.len() {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for c in 0..n + k {
                    let s = a[r][c].mul(&f);
                    a[i][c] = a[i][c].sub(&s);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    for (ri, &col) in pivots.iter().enumerate() {
        if !target[col].is_zero() {
            let f = target[col].clone();
            for c in 0..n {
                let s = a[ri][c].mul(&f);
                target[c] = target[c].sub(&s);
            }
            for c in 0..k {
                let s = a[ri][n + c].mul(&f);
                tcoef[c] = tcoef[c].add(&s);
            }
        }
    }
    if target.iter().all(|c| c.is_zero()) {
        Some(tcoef)
    } else {
        None
    }
}

fn random_linear_form(ring: &RingRef, rng: &mut ChaCha8Rng, wide: bool) -> MPoly {
    let hi: i64 = if wide { 50 } else { 7 };
    let mut acc = MPoly::zero(ring);
    for i in 0..ring.nvars() {
        let c = rng.gen_range(-hi..=hi);
        if c != 0 {
            acc = acc.add(&MPoly::var(ring, i).scale(&ring.field.from_int(c)));
        }
    }
    acc
}

/// Describe a zero-dimensional ideal: quotient degree, geometric point
/// count via the squarefree part of a generic linear form's minimal
/// polynomial (two independent forms must agree), optional explicit points.
pub fn zero_dim_describe(
    gens: &[MPoly],
    want_points: bool,
    seed: u64,
) -> Result<ZeroDimDescription, ZeroDimError> {
    use rand::SeedableRng;
    let gb = groebner(gens);
    if is_unit_ideal(&gb) {
        return Ok(ZeroDimDescription {
            degree: 0,
            radical_degree: 0,
            points: Some(vec![]),
            seed,
        });
    }
    let q = Quotient::new(gb)?;
    let degree = quotient_degree(&q.gb).ok_or(ZeroDimError::NotZeroDimensional)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // A form separates the points iff its squarefree minimal polynomial
    // reaches the maximal degree (the number of geometric points); sample
    // until the running maximum is stable, since two non-separating forms
    // can agree on a smaller degree.
    let mut best: Option<(MPoly, UPoly)> = None;
    let mut stable = 0;
    for attempt in 0..24 {
        let wide = attempt > 11;
        let l = random_linear_form(&q.ring, &mut rng, wide);
        if l.is_zero() {
            continue;
        }
        let m = q.min_poly_of(&l).squarefree_part();
        match &best {
            Some((_, bm)) if bm.deg() >= m.deg() => stable += 1,
            _ => {
                best = Some((l, m));
                stable = 0;
            }
        }
        if stable >= 4 {
            break;
        }
    }
    let (ell, mp_sqfree) = best.ok_or(ZeroDimError::NoGenericForm)?;
    let radical_degree = mp_sqfree.deg() as u64;

    let points = if want_points {
        extract_points(&q, &ell, &mp_sqfree)?
    } else {
        None
    };
    Ok(ZeroDimDescription { degree, radical_degree, points, seed })
}

/// Factor the separating form's minimal polynomial; for each irreducible
/// factor construct the extension field and read off the (unique) point of
/// that class by computing per-coordinate minimal polynomials.
fn extract_points(
    q: &Quotient,
    ell: &MPoly,
    mp_sqfree: &UPoly,
) -> Result<Option<Vec<PointClass>>, ZeroDimError> {
    let base = &q.ring.field;
    let factors = match base {
        Field::Q => crate::unipoly::factor_over_q(mp_sqfree)
            .1
            .into_iter()
            .map(|(f, _)| f)
            .collect::<Vec<_>>(),
        Field::Ext(_) => crate::unipoly::factor_squarefree_over_field(mp_sqfree)
            .into_iter()
            .collect::<Vec<_>>(),
    };
    let mut out = Vec::new();
    for fac in factors {
        let d = fac.deg() as usize;
        if d > SPLITTING_CAP {
            return Ok(None); // counts only; coordinates beyond the cap
        }
        let (kfield, theta) = match extension_with_root(base, &fac) {
            Ok(x) => x,
            Err(ZeroDimError::SplittingFieldTooLarge(..)) => return Ok(None),
            Err(e) => return Err(e),
        };
        // solve for the point with ell = theta over K
        let kring = Ring::new(
            &q.ring.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            &kfield,
            q.ring.order,
        );
        let mut kgens: Vec<MPoly> = q.gb.iter().map(|g| lift_poly(g, &kring, base)).collect();
        let lk = lift_poly(ell, &kring, base);
        kgens.push(lk.sub(&MPoly::constant(&kring, theta.clone())));
        let kgb = groebner(&kgens);
        if is_unit_ideal(&kgb) {
            // should not happen: theta is a root of the minimal polynomial
            continue;
        }
        let kq = Quotient::new(kgb)?;
        let mut coords = Vec::new();
        for i in 0..kring.nvars() {
            let xi = MPoly::var(&kring, i);
            let mp = kq.min_poly_of(&xi);
            // separating form + radical class: minimal polynomial of each
            // coordinate is (x - a)^k; recover a from the trace
            let deg = mp.deg();
            if deg < 1 {
                return Err(ZeroDimError::NoGenericForm);
            }
            let lead_inv = mp.lead().inv().unwrap();
            let c1 = mp.coeffs[deg as usize - 1].mul(&lead_inv);
            let a = c1
                .neg()
                .mul(&kfield.from_rat(Rat::new(1.into(), (deg as i64).into())));
            // verify: substitute back
            if !mp.eval(&a).is_zero() {
                return Err(ZeroDimError::NoGenericForm);
            }
            coords.push(a);
        }
        out.push(PointClass { field: kfield, class_degree: d, point: coords });
    }
    Ok(Some(out))
}

/// Build the field obtained by adjoining a root of the (irreducible) monic
/// polynomial `fac` to `base`; returns the field and the image of the root.
/// For a degree-1 factor this is just the base field and the root itself.
pub fn extension_with_root(base: &Field, fac: &UPoly) -> Result<(Field, Elem), ZeroDimError> {
    let d = fac.deg();
    if d == 1 {
        // root = -c0 / c1
        let root = fac.coeffs[0].neg().div(&fac.coeffs[1]).unwrap();
        return Ok((base.clone(), root));
    }
    match base {
        Field::Q => {
            let coeffs: Vec<Rat> = fac
                .coeffs
                .iter()
                .map(|c| c.as_rat().unwrap().clone())
                .collect();
            // numeric hint: find a root of fac near some complex number by
            // coarse search over a grid of starting points
            let hint = numeric_root_hint(&coeffs);
            let name = format!("ext{d}_{}", short_hash(&coeffs));
            let nf = NumberField::new(&name, coeffs, hint)
                .map_err(|_| ZeroDimError::NoGenericForm)?;
            let f = Field::Ext(nf);
            Ok((f.clone(), f.gen().unwrap()))
        }
        Field::Ext(_) => {
            // proper extension of a proper extension would require a
            // compositum with a canonical embedding of the base, which no
            // target computation needs; report the class by degree only
            Err(ZeroDimError::SplittingFieldTooLarge(
                d as usize * base.degree(),
                SPLITTING_CAP,
            ))
        }
    }
}

fn short_hash(coeffs: &[Rat]) -> String {
    use std::collections::hash_map::DefaultHasher;
    use std::hash::{Hash, Hasher};
    let mut h = DefaultHasher::new();
    for c in coeffs {
        c.to_string().hash(&mut h);
    }
    format!("{:08x}", h.finish() as u32)
}

/// Coarse complex Newton search for some root of a rational polynomial.
fn numeric_root_hint(coeffs: &[Rat]) -> (f64, f64) {
    let cf: Vec<f64> = coeffs
        .iter()
        .map(|c| {
            let n = c.numer().to_string().parse::<f64>().unwrap_or(0.0);
            let d = c.denom().to_string().parse::<f64>().unwrap_or(1.0);
            n / d
        })
        .collect();
    let eval = |re: f64, im: f64| -> (f64, f64) {
        let (mut ar, mut ai) = (0.0f64, 0.0f64);
        for c in cf.iter().rev() {
            let nr = ar * re - ai * im + c;
            let ni = ar * im + ai * re;
            ar = nr;
            ai = ni;
        }
        (ar, ai)
    };
    let dcf: Vec<f64> = cf
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * i as f64)
        .collect();
    let evald = |re: f64, im: f64| -> (f64, f64) {
        let (mut ar, mut ai) = (0.0f64, 0.0f64);
        for c in dcf.iter().rev() {
            let nr = ar * re - ai * im + c;
            let ni = ar * im + ai * re;
            ar = nr;
            ai = ni;
        }
        (ar, ai)
    };
    let starts = [
        (1.3, 0.7),
        (-0.9, 1.1),
        (0.4, -1.3),
        (2.1, 0.3),
        (-1.7, -0.5),
        (0.1, 0.1),
        (3.0, 1.0),
        (-2.5, 2.0),
    ];
    let mut best = (1.0, 1.0);
    let mut best_res = f64::INFINITY;
    for &(sr, si) in &starts {
        let (mut re, mut im) = (sr, si);
        for _ in 0..200 {
            let (fr, fi) = eval(re, im);
            let (dr, di) = evald(re, im);
            let den = dr * dr + di * di;
            if den < 1e-300 {
                break;
            }
            re -= (fr * dr + fi * di) / den;
            im -= (fi * dr - fr * di) / den;
        }
        let (fr, fi) = eval(re, im);
        let res = fr.hypot(fi);
        if res < best_res {
            best_res = res;
            best = (re, im);
        }
    }
    best
}

/// Move a polynomial with base-field coefficients into a ring over an
/// extension of Q (base must be Q) or the same field.
fn lift_poly(p: &MPoly, target: &RingRef, base: &Field) -> MPoly {
    if *base == target.field {
        return MPoly::from_terms(target, p.terms.clone());
    }
    assert!(matches!(base, Field::Q), "lift_poly: base must be Q or equal");
    let terms = p
        .terms
        .iter()
        .map(|(m, c)| (m.clone(), target.field.from_rat(c.as_rat().unwrap().clone())))
        .collect();
    MPoly::from_terms(target, terms)
}

// ---------------------------------------------------------------------------
// Absolute irreducibility of plane curves (derivation / Ruppert–Gao test)
// ---------------------------------------------------------------------------

/// Number of absolutely irreducible factors of a squarefree bivariate
/// polynomial, by the dimension of the space of closed differential forms
/// (g/f) dx + (h/f) dy: solve g_y f − g f_y = h_x f − h f_x with the Gao
/// bidegree bounds. Returns (is_abs_irreducible, factor_count).
pub fn is_abs_irreducible_curve(f: &MPoly) -> Result<(bool, usize), ZeroDimError> {
    let ring = &f.ring;
    assert_eq!(ring.nvars(), 2, "plane curve expected");
    // squarefree check via gcd(f, f_x) and gcd(f, f_y) resultant-style:
    // f squarefree iff the ideal (f, f_x, f_y) is zero-dimensional or unit
    let fx = f.derivative(0);
    let fy = f.derivative(1);
    {
        let gb = groebner(&[f.clone(), fx.clone(), fy.clone()]);
        if !is_unit_ideal(&gb) && dimension(&gb) > 0 {
            return Err(ZeroDimError::NotSquarefree);
        }
    }
    let m = f
        .terms
        .iter()
        .map(|(mm, _)| mm.0[0])
        .max()
        .unwrap_or(0);
    let n = f
        .terms
        .iter()
        .map(|(mm, _)| mm.0[1])
        .max()
        .unwrap_or(0);
    // unknowns: g with deg_x <= m-1, deg_y <= n ; h with deg_x <= m, deg_y <= n-1
    let gcols: Vec<Mono> = monos_box(m.saturating_sub(1), n);
    let hcols: Vec<Mono> = monos_box(m, n.saturating_sub(1));
    let ncols = gcols.len() + hcols.len();
    // relation: g_y f - g f_y - h_x f + h f_x = 0
    let mut rows: std::collections::HashMap<Mono, Vec<Elem>> = std::collections::HashMap::new();
    let field = &ring.field;
    let add_terms = |p: &MPoly, col: usize, rows: &mut std::collections::HashMap<Mono, Vec<Elem>>| {
        for (mm, c) in &p.terms {
            let row = rows
                .entry(mm.clone())
                .or_insert_with(|| vec![field.zero(); ncols]);
            row[col] = row[col].add(c);
        }
    };
    for (ci, gm) in gcols.iter().enumerate() {
        let gmono = MPoly::monomial(ring, gm.clone(), field.one());
        let expr = gmono.derivative(1).mul(f).sub(&gmono.mul(&fy));
        add_terms(&expr, ci, &mut rows);
    }
    for (ci, hm) in hcols.iter().enumerate() {
        let hmono = MPoly::monomial(ring, hm.clone(), field.one());
        let expr = hmono.mul(&fx).sub(&hmono.derivative(0).mul(f));
        add_terms(&expr, gcols.len() + ci, &mut rows);
    }
    let mat: Vec<Vec<Elem>> = rows.into_values().collect();
    let rank = crate::group::mat_rank(&mat);
    let count = ncols - rank;
    Ok((count == 1, count))
}

fn monos_box(mx: u32, my: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    for a in 0..=mx {
        for b in 0..=my {
            out.push(Mono(vec![a, b]));
        }
    }
    out
}

/// Irreducibility certificate for a squarefree homogeneous surface in P³:
/// if the projective singular locus has dimension ≤ 0 the surface is
/// irreducible (distinct components would meet in a curve of singular
/// points). Returns false when the criterion does not apply.
pub fn surface_irreducible_from_sing(f: &MPoly) -> bool {
    let ring = &f.ring;
    assert_eq!(ring.nvars(), 4, "surface in P3 expected");
    assert!(f.is_homogeneous(), "homogeneous input expected");
    let mut gens = vec![f.clone()];
    for i in 0..4 {
        gens.push(f.derivative(i));
    }
    let gb = groebner(&gens);
    // affine cone: dim <= 1 means projective dim <= 0
    is_unit_ideal(&gb) || dimension(&gb) <= 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, MonOrd, RingRef};

    fn ring2() -> RingRef {
        Ring::new(&["x1", "x2"], &Field::Q, MonOrd::Grevlex)
    }

    #[test]
    fn describe_two_rational_points() {
        let r = ring2();
        let gens = vec![
            parse_poly(&r, "x1^2 - 1").unwrap(),
            parse_poly(&r, "x2 - x1").unwrap(),
        ];
        let d = zero_dim_describe(&gens, true, 7).unwrap();
        assert_eq!(d.degree, 2);
        assert_eq!(d.radical_degree, 2);
        let pts = d.points.unwrap();
        assert_eq!(pts.len(), 2);
        for p in &pts {
            assert_eq!(p.field, Field::Q);
            assert_eq!(p.point[0], p.point[1]);
        }
    }

    #[test]
    fn fat_point_degree_vs_radical() {
        let r = ring2();
        let gens = vec![
            parse_poly(&r, "x1^2").unwrap(),
            parse_poly(&r, "x2^3").unwrap(),
        ];
        let d = zero_dim_describe(&gens, true, 7).unwrap();
        assert_eq!(d.degree, 6);
        assert_eq!(d.radical_degree, 1);
        let pts = d.points.unwrap();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].point.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn irrational_points_get_extension_fields() {
        // x^2 = 2, y = x: two conjugate points over Q(sqrt2)
        let r = ring2();
        let gens = vec![
            parse_poly(&r, "x1^2 - 2").unwrap(),
            parse_poly(&r, "x2 - x1").unwrap(),
        ];
        let d = zero_dim_describe(&gens, true, 7).unwrap();
        assert_eq!(d.radical_degree, 2);
        let pts = d.points.unwrap();
        assert_eq!(pts.len(), 1); // one conjugacy class
        let p = &pts[0];
        assert_eq!(p.field.degree(), 2);
        // the coordinate squares to 2
        let sq = p.point[0].mul(&p.point[0]);
        assert_eq!(sq, p.field.from_int(2));
    }

    #[test]
    fn radical_degree_stable_across_seeds() {
        let r = Ring::new(&["x1", "x2", "x3"], &Field::Q, MonOrd::Grevlex);
        let gens = vec![
            parse_poly(&r, "x1^3 - x1").unwrap(),
            parse_poly(&r, "x2^2 - x1").unwrap(),
            parse_poly(&r, "x3 - x1*x2").unwrap(),
        ];
        let a = zero_dim_describe(&gens, false, 1).unwrap();
        let b = zero_dim_describe(&gens, false, 99).unwrap();
        assert_eq!(a.radical_degree, b.radical_degree);
    }

    #[test]
    fn abs_irreducibility_basic() {
        let r = ring2();
        let circle = parse_poly(&r, "x1^2 + x2^2 - 1").unwrap();
        assert_eq!(is_abs_irreducible_curve(&circle).unwrap(), (true, 1));
        let split = parse_poly(&r, "x1^2 + x2^2").unwrap();
        assert_eq!(is_abs_irreducible_curve(&split).unwrap(), (false, 2));
        let lines = parse_poly(&r, "x1*x2").unwrap();
        assert_eq!(is_abs_irreducible_curve(&lines).unwrap(), (false, 2));
        let three = parse_poly(&r, "x1*x2*(x1 - x2 - 1)").unwrap();
        assert_eq!(is_abs_irreducible_curve(&three).unwrap(), (false, 3));
        let notsq = parse_poly(&r, "x1^2").unwrap();
        assert!(is_abs_irreducible_curve(&notsq).is_err());
    }

    #[test]
    fn abs_irreducibility_matches_brute_force_products() {
        use rand::{Rng, SeedableRng};
        let r = ring2();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        // random products of distinct absolutely irreducible conics/lines
        let pool: Vec<MPoly> = vec![
            parse_poly(&r, "x1 + x2 - 1").unwrap(),
            parse_poly(&r, "x1 - 2*x2 + 3").unwrap(),
            parse_poly(&r, "x1^2 + x2^2 - 1").unwrap(),
            parse_poly(&r, "x2 - x1^2").unwrap(),
            parse_poly(&r, "x1*x2 - 1").unwrap(),
        ];
        for _ in 0..10 {
            let k = rng.gen_range(1..=3);
            let mut picks: Vec<usize> = (0..pool.len()).collect();
            // shuffle-lite
            for i in 0..picks.len() {
                let j = rng.gen_range(0..picks.len());
                picks.swap(i, j);
            }
            let mut f = MPoly::one(&r);
            for &i in picks.iter().take(k) {
                f = f.mul(&pool[i]);
            }
            let (irr, count) = is_abs_irreducible_curve(&f).unwrap();
            assert_eq!(count, k, "f = {f}");
            assert_eq!(irr, k == 1);
        }
    }

    #[test]
    fn surface_criterion() {
        let r4 = Ring::new(&["x1", "x2", "x3", "x4"], &Field::Q, MonOrd::Grevlex);
        let smooth = parse_poly(&r4, "x1^2 + x2^2 + x3^2 + x4^2").unwrap();
        assert!(surface_irreducible_from_sing(&smooth));
        let planes = parse_poly(&r4, "x1*x2").unwrap();
        assert!(!surface_irreducible_from_sing(&planes));
        // nodal cubic surface: finitely many singular points -> irreducible
        let cayley = parse_poly(
            &r4,
            "x1*x2*x3 + x1*x2*x4 + x1*x3*x4 + x2*x3*x4",
        )
        .unwrap();
        assert!(surface_irreducible_from_sing(&cayley));
    }
}
