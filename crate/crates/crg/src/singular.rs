//! Isolated hypersurface singularities: singular-locus computation for
//! projective hypersurfaces, local invariants (multiplicity, Milnor and
//! Tjurina numbers, Hessian corank) via Mora standard bases in a local
//! ordering, label classification, group-orbit partitions, and certified
//! reports.

use crate::field::{Elem, Field, Rat};
use crate::group::{mat_rank, normalize_projective, Group, GroupError};
use crate::ideal::{adjoin_generator, dimension_over_field};

use crate::pencil::member_irreducible;
use crate::poly::{MPoly, MonOrd, Mono, Ring};
use crate::unipoly::{count_real_roots, UPoly};
use crate::zerodim::{zero_dim_describe, ZeroDimError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SingularError {
    #[error(transparent)]
    ZeroDim(#[from] ZeroDimError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("point is not singular on the hypersurface")]
    NotSingular,
    #[error("singularity is not isolated (local quotient is infinite)")]
    NonIsolated,
    #[error("no separating linear form found for the orbit partition")]
    NoSeparatingForm,
    #[error("singular point beyond the splitting cap; types unavailable")]
    FieldTooLarge,
    #[error("base point lies on a coordinate hyperplane; covering inapplicable")]
    BasePointOnCoordinateHyperplane,
}

/// Local analytic type labels used by the classification table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Label {
    A1,
    A2,
    Ak(usize),
    D4,
    E6,
    X9,
    T444,
    Ordinary(u32),
    NonOrdinary,
    Unknown,
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Label::A1 => write!(f, "A1"),
            Label::A2 => write!(f, "A2"),
            Label::Ak(k) => write!(f, "A{k}"),
            Label::D4 => write!(f, "D4"),
            Label::E6 => write!(f, "E6"),
            Label::X9 => write!(f, "X9"),
            Label::T444 => write!(f, "T444"),
            Label::Ordinary(m) => write!(f, "ORDINARY({m})"),
            Label::NonOrdinary => write!(f, "NON_ORDINARY"),
            Label::Unknown => write!(f, "UNKNOWN"),
        }
    }
}

/// Invariants of an isolated hypersurface singularity at a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalType {
    /// Multiplicity: lowest total degree after translation to the origin.
    pub m: u32,
    /// Milnor number: local quotient dimension by the Jacobian ideal.
    pub mu: usize,
    /// Tjurina number: likewise for f together with its partials.
    pub tau: usize,
    /// Chart dimension minus the rank of the Hessian at the point.
    pub corank: usize,
    /// Distinct linear factors of the tangent cone over the closure
    /// (curves only).
    pub tangent_cone_factors: Option<usize>,
    pub label: Label,
}

// ---------------------------------------------------------------------------
// Mora standard bases in the local ordering
// ---------------------------------------------------------------------------

fn ecart(f: &MPoly) -> u32 {
    f.total_degree() - f.lm().map(|m| m.deg()).unwrap_or(0)
}

/// Mora's weak normal form with respect to a local (ds) ordering: reducers
/// of larger ecart push the intermediate result into the working list, which
/// guarantees termination in the localized ring.
fn mora_normal_form(f: &MPoly, basis: &[MPoly]) -> MPoly {
    let mut work: Vec<MPoly> = basis.to_vec();
    let mut h = f.clone();
    loop {
        if h.is_zero() {
            return h;
        }
        let hl = h.lm().unwrap().clone();
        let candidates: Vec<usize> = work
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero() && g.lm().unwrap().divides(&hl))
            .map(|(i, _)| i)
            .collect();
        let Some(&best) = candidates.iter().min_by_key(|&&i| ecart(&work[i])) else {
            return h;
        };
        if ecart(&work[best]) > ecart(&h) {
            work.push(h.clone());
        }
        let g = work[best].clone();
        let q = hl.div(g.lm().unwrap());
        let c = h.lc().unwrap().div(g.lc().unwrap()).unwrap();
        let sub = MPoly::from_terms(
            &h.ring,
            g.terms.iter().map(|(m, gc)| (m.mul(&q), gc.mul(&c))).collect(),
        );
        h = h.sub(&sub);
    }
}

fn spoly_local(f: &MPoly, g: &MPoly) -> MPoly {
    let fm = f.lm().unwrap();
    let gm = g.lm().unwrap();
    let l = fm.lcm(gm);
    let a = l.div(fm);
    let b = l.div(gm);
    let fc = f.lc().unwrap().clone();
    let gc = g.lc().unwrap().clone();
    let fs = MPoly::from_terms(
        &f.ring,
        f.terms.iter().map(|(m, c)| (m.mul(&a), c.mul(&gc))).collect(),
    );
    let gs = MPoly::from_terms(
        &g.ring,
        g.terms.iter().map(|(m, c)| (m.mul(&b), c.mul(&fc))).collect(),
    );
    fs.sub(&gs)
}

/// Standard basis of the ideal in the local ring (Mora's tangent cone
/// algorithm): plain Buchberger pair loop with the Mora weak normal form.
pub fn standard_basis(gens: &[MPoly]) -> Vec<MPoly> {
    let mut basis: Vec<MPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (fi, fj) = (&basis[i], &basis[j]);
        if fi.lm().unwrap().coprime(fj.lm().unwrap()) {
            continue;
        }
        let s = spoly_local(fi, fj);
        let r = mora_normal_form(&s, &basis);
        if !r.is_zero() {
            let n = basis.len();
            for k in 0..n {
                pairs.push((k, n));
            }
            basis.push(r);
        }
    }
    // minimalize leading terms
    let ord = gens[0].ring.order;
    let mut keep: Vec<MPoly> = Vec::new();
    basis.sort_by(|a, b| ord.cmp(b.lm().unwrap(), a.lm().unwrap()).reverse());
    for g in basis {
        let gl = g.lm().unwrap();
        if !keep.iter().any(|k| k.lm().unwrap().divides(gl)) {
            keep.push(g);
        }
    }
    keep
}

/// Dimension of the local quotient ring by the leading ideal of a standard
/// basis; None when infinite (non-isolated singularity).
pub fn local_quotient_dim(sb: &[MPoly]) -> Option<usize> {
    if sb.is_empty() {
        return None;
    }
    if sb.iter().any(|g| g.lm().map(|m| m.deg()) == Some(0)) {
        return Some(0);
    }
    let n = sb[0].ring.nvars();
    let lms: Vec<Mono> = sb.iter().map(|g| g.lm().unwrap().clone()).collect();
    let mut caps = vec![0u32; n];
    for m in &lms {
        let supp: Vec<usize> = (0..n).filter(|&i| m.0[i] > 0).collect();
        if supp.len() == 1 && (caps[supp[0]] == 0 || m.0[supp[0]] < caps[supp[0]]) {
            caps[supp[0]] = m.0[supp[0]];
        }
    }
    if caps.iter().any(|&c| c == 0) {
        return None;
    }
    let mut count = 0usize;
    let mut idx = vec![0u32; n];
    'outer: loop {
        let m = Mono(idx.clone());
        if !lms.iter().any(|l| l.divides(&m)) {
            count += 1;
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
    Some(count)
}

/// Milnor and Tjurina numbers of an analytic germ at the origin, by local
/// standard bases of the Jacobian ideal and of (f) + Jacobian.
pub fn milnor_tjurina(h: &MPoly) -> Result<(usize, usize), SingularError> {
    let n = h.ring.nvars();
    let jac: Vec<MPoly> = (0..n).map(|i| h.derivative(i)).collect();
    let sb = standard_basis(&jac);
    let mu = local_quotient_dim(&sb).ok_or(SingularError::NonIsolated)?;
    let mut full = jac;
    full.push(h.clone());
    let sb2 = standard_basis(&full);
    let tau = local_quotient_dim(&sb2).ok_or(SingularError::NonIsolated)?;
    Ok((mu, tau))
}

/// Brute-force oracle for the Milnor number: dimension of the truncated
/// power-series quotient, iterated over the cap until stable. Only suitable
/// for small germs; used to cross-check the Mora computation.
pub fn milnor_series_oracle(h: &MPoly, cap: u32) -> Option<usize> {
    let n = h.ring.nvars();
    let jac: Vec<MPoly> = (0..n).map(|i| h.derivative(i)).collect();
    let mut prev: Option<usize> = None;
    for d in 2..=cap {
        let dim = truncated_quotient_dim(&jac, d);
        if Some(dim) == prev {
            return Some(dim);
        }
        prev = Some(dim);
    }
    None
}

/// Dimension of k[x]/(J + m^D) where m is the maximal ideal at the origin.
fn truncated_quotient_dim(gens: &[MPoly], cap: u32) -> usize {
    let ring = &gens[0].ring;
    let n = ring.nvars();
    let field = ring.field.clone();
    // enumerate monomials of degree < cap
    let mut monos: Vec<Mono> = Vec::new();
    let mut idx = vec![0u32; n];
    'outer: loop {
        let m = Mono(idx.clone());
        if m.deg() < cap {
            monos.push(m);
        }
        let mut i = 0;
        loop {
            if i == n {
                break 'outer;
            }
            idx[i] += 1;
            if idx[i] > cap {
                idx[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
    let pos: std::collections::HashMap<Mono, usize> =
        monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    // rows: x^a * g truncated below cap
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    for g in gens {
        for m in &monos {
            if m.deg() + g.min_degree() >= cap {
                continue;
            }
            let mut row = vec![field.zero(); monos.len()];
            let mut nonzero = false;
            for (gm, gc) in &g.terms {
                let t = gm.mul(m);
                if t.deg() < cap {
                    if let Some(&i) = pos.get(&t) {
                        row[i] = row[i].add(gc);
                        nonzero = true;
                    }
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
    }
    let rank = row_rank(&mut rows, &field);
    monos.len() - rank
}

fn row_rank(rows: &mut Vec<Vec<Elem>>, field: &Field) -> usize {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().unwrap();
        for c in col..ncols {
            rows[rank][c] = rows[rank][c].mul(&inv);
        }
        for i in 0..rows.len() {
            if i != rank && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for c in col..ncols {
                    let s = rows[rank][c].mul(&f);
                    rows[i][c] = rows[i][c].sub(&s);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    let _ = field;
    rank
}

// ---------------------------------------------------------------------------
// Local type classification
// ---------------------------------------------------------------------------

/// Number of distinct linear factors of a nonzero binary form over the
/// algebraic closure.
fn binary_form_distinct_factors(form: &MPoly) -> usize {
    // u(z) = form(z, 1); distinct roots = deg of squarefree part, plus one
    // if the second variable divides the form (degree drop).
    let d = form.total_degree();
    let field = form.ring.field.clone();
    let mut coeffs = vec![field.zero(); d as usize + 1];
    for (m, c) in &form.terms {
        coeffs[m.0[0] as usize] = c.clone();
    }
    let u = UPoly::new(&field, coeffs);
    let mut cnt = u.squarefree_part().deg() as usize;
    if (u.deg() as u32) < d {
        cnt += 1;
    }
    cnt
}

/// The degree-d homogeneous part of a polynomial.
fn homogeneous_part(f: &MPoly, d: u32) -> MPoly {
    MPoly::from_terms(
        &f.ring,
        f.terms
            .iter()
            .filter(|(m, _)| m.deg() == d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect(),
    )
}

/// Hessian matrix of the quadratic part at the origin.
fn hessian_at_origin(h: &MPoly) -> Vec<Vec<Elem>> {
    let n = h.ring.nvars();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let d2 = h.derivative(i).derivative(j);
                    d2.coeff(&Mono(vec![0; n]))
                })
                .collect()
        })
        .collect()
}

/// Kernel basis of a symmetric matrix over the field.
fn kernel_basis(mat: &[Vec<Elem>], field: &Field) -> Vec<Vec<Elem>> {
    let n = mat.len();
    let mut rows: Vec<Vec<Elem>> = mat.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().unwrap();
        for c in 0..n {
            rows[r][c] = rows[r][c].mul(&inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for c in 0..n {
                    let s = rows[r][c].mul(&f);
                    rows[i][c] = rows[i][c].sub(&s);
                }
            }
        }
        pivots.push((r, col));
        r += 1;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut out = Vec::new();
    for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![field.zero(); n];
        v[free] = field.one();
        for &(pr, pc) in &pivots {
            v[pc] = rows[pr][free].neg();
        }
        out.push(v);
    }
    out
}

/// Restriction of the cubic part to the kernel of the Hessian (surfaces,
/// corank 2): the residual cubic of the splitting lemma as a binary form.
fn kernel_cubic(h: &MPoly, kernel: &[Vec<Elem>]) -> MPoly {
    let field = h.ring.field.clone();
    let r2 = Ring::new(&["y1", "y2"], &field, MonOrd::Grevlex);
    let cubic = homogeneous_part(h, 3);
    let n = h.ring.nvars();
    let images: Vec<MPoly> = (0..n)
        .map(|i| {
            let mut acc = MPoly::zero(&r2);
            for (k, v) in kernel.iter().enumerate() {
                if !v[i].is_zero() {
                    acc = acc.add(&MPoly::var(&r2, k).scale(&v[i]));
                }
            }
            acc
        })
        .collect();
    cubic.substitute(&images)
}

/// Label assignment from the computed invariants; total on everything the
/// target corpus produces, with NON_ORDINARY/UNKNOWN as safe fallbacks.
fn assign_label(
    chart_dim: usize,
    m: u32,
    mu: usize,
    tau: usize,
    corank: usize,
    tc_factors: Option<usize>,
    kernel_cubic_factors: Option<usize>,
    tangent_cone_squarefree: bool,
) -> Label {
    if mu == 1 {
        return Label::A1;
    }
    if mu == 2 {
        return Label::A2;
    }
    if chart_dim == 2 {
        let tc = tc_factors.unwrap_or(0);
        if m == 3 && mu == 4 && tc == 3 {
            return Label::D4;
        }
        if m == 3 && mu == 6 && tau == 6 && tc == 1 {
            return Label::E6;
        }
        if m == 4 && mu == 9 && tc == 4 {
            return Label::X9;
        }
        if corank <= 1 && mu == tau {
            return Label::Ak(mu);
        }
        if tc == m as usize {
            return Label::Ordinary(m);
        }
        return Label::NonOrdinary;
    }
    // surfaces
    if mu == 4 && tau == 4 && corank == 2 {
        return Label::D4;
    }
    if mu == 6 && tau == 6 && corank == 2 && kernel_cubic_factors == Some(1) {
        return Label::E6;
    }
    if m == 3 && mu == 11 && tau == 10 {
        return Label::T444;
    }
    if corank <= 1 && mu == tau {
        return Label::Ak(mu);
    }
    if tangent_cone_squarefree {
        return Label::Ordinary(m);
    }
    Label::NonOrdinary
}

/// Classify the germ of a polynomial at the origin of an affine chart.
/// `h` must vanish at the origin; the ring ordering is ignored (a local
/// ring is built internally).
pub fn local_type_at_origin(h: &MPoly) -> Result<LocalType, SingularError> {
    let n = h.ring.nvars();
    let field = h.ring.field.clone();
    let names: Vec<String> = (1..=n).map(|i| format!("z{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let lring = Ring::new(&refs, &field, MonOrd::LocalDs);
    let h = MPoly::from_terms(
        &lring,
        h.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect(),
    );
    assert!(h.coeff(&Mono(vec![0; n])).is_zero(), "germ must vanish at the origin");
    let m = h.min_degree();
    if m < 2 {
        return Err(SingularError::NotSingular);
    }
    let (mu, tau) = milnor_tjurina(&h)?;
    let hess = hessian_at_origin(&h);
    let corank = n - mat_rank(&hess);
    let tangent_cone = homogeneous_part(&h, m);
    let (tc_factors, tc_squarefree) = if n == 2 {
        let k = binary_form_distinct_factors(&tangent_cone);
        (Some(k), k == m as usize)
    } else {
        (None, tangent_cone_squarefree(&tangent_cone))
    };
    let kc = if n == 3 && corank == 2 {
        let kern = kernel_basis(&hess, &field);
        let kc = kernel_cubic(&h, &kern);
        if kc.is_zero() {
            None
        } else {
            Some(binary_form_distinct_factors(&kc))
        }
    } else {
        None
    };
    let label = assign_label(n, m, mu, tau, corank, tc_factors, kc, tc_squarefree);
    Ok(LocalType { m, mu, tau, corank, tangent_cone_factors: tc_factors, label })
}

/// A form in >= 3 variables is squarefree iff the singular locus of its
/// cone has codimension >= 2 in the cone.
fn tangent_cone_squarefree(form: &MPoly) -> bool {
    let n = form.ring.nvars();
    let names: Vec<String> = (1..=n).map(|i| format!("w{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let gring = Ring::new(&refs, &form.ring.field, MonOrd::Grevlex);
    let f = MPoly::from_terms(
        &gring,
        form.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect(),
    );
    let mut gens = vec![f.clone()];
    for i in 0..n {
        gens.push(f.derivative(i));
    }
    dimension_over_field(&gens) <= n as i64 - 2
}

// ---------------------------------------------------------------------------
// Singular locus of a projective hypersurface
// ---------------------------------------------------------------------------

/// One conjugacy class of singular points in canonical projective
/// coordinates (first nonzero coordinate normalized to 1).
#[derive(Debug, Clone)]
pub struct LocusPoint {
    /// Extension of Q containing the coordinates (and τ).
    pub field: Field,
    /// Number of Q-conjugate points in the class.
    pub class_degree: usize,
    pub proj: Vec<Elem>,
    /// Image of the coefficient-field generator at this class when the
    /// hypersurface is defined over a number field (the locus is computed
    /// with the generator adjoined as a coordinate).
    pub tau: Option<Elem>,
}

#[derive(Debug)]
pub struct SingularLocus {
    /// Projective dimension: -1 smooth, 0 finite, > 0 positive-dimensional.
    pub proj_dim: i64,
    /// Scheme degree of the (adjoined) singular subscheme over Q.
    pub degree: u64,
    /// Geometric point count of the hypersurface's singular locus.
    pub point_count: u64,
    /// One representative per conjugacy class, when within the splitting cap.
    pub points: Option<Vec<LocusPoint>>,
    /// Degree of the coefficient field over Q.
    pub base_degree: usize,
    pub seed: u64,
}

/// Singular locus of a projective hypersurface Z(f), assembled chart by
/// chart: chart i is {x_i = 1, x_j = 0 for j < i}, so every point appears
/// in exactly one chart, in canonical coordinates. Over a number field the
/// generator is adjoined as an extra affine coordinate, which multiplies
/// every geometric count by the field degree.
pub fn singular_locus(f: &MPoly, seed: u64) -> Result<SingularLocus, SingularError> {
    let n = f.ring.nvars();
    let field = f.ring.field.clone();
    let k = field.degree();
    let gens: Vec<MPoly> = (0..n).map(|i| f.derivative(i)).collect();
    let cone = dimension_over_field(&gens);
    if cone <= 0 {
        return Ok(SingularLocus {
            proj_dim: -1,
            degree: 0,
            point_count: 0,
            points: Some(vec![]),
            base_degree: k,
            seed,
        });
    }
    if cone >= 2 {
        return Ok(SingularLocus {
            proj_dim: cone - 1,
            degree: 0,
            point_count: 0,
            points: None,
            base_degree: k,
            seed,
        });
    }
    let mut points: Option<Vec<LocusPoint>> = Some(Vec::new());
    let mut degree = 0u64;
    let mut radical = 0u64;
    for chart in 0..n {
        let nrem = n - 1 - chart;
        if nrem == 0 {
            // the single point (0, …, 0, 1)
            let mut pt = vec![field.zero(); n];
            pt[chart] = field.one();
            if gens.iter().all(|g| g.evaluate(&pt).is_zero()) {
                radical += k as u64;
                degree += k as u64;
                if let Some(ps) = points.as_mut() {
                    ps.push(LocusPoint {
                        field: field.clone(),
                        class_degree: k,
                        proj: pt,
                        tau: field.gen(),
                    });
                }
            }
            continue;
        }
        let names: Vec<String> = (chart + 1..n).map(|j| format!("x{}", j + 1)).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let cring = Ring::new(&refs, &field, MonOrd::Grevlex);
        let images: Vec<MPoly> = (0..n)
            .map(|j| {
                if j < chart {
                    MPoly::zero(&cring)
                } else if j == chart {
                    MPoly::one(&cring)
                } else {
                    MPoly::var(&cring, j - chart - 1)
                }
            })
            .collect();
        let cgens: Vec<MPoly> = gens.iter().map(|g| g.substitute(&images)).collect();
        let desc = match &field {
            Field::Q => zero_dim_describe(&cgens, true, seed)?,
            Field::Ext(_) => {
                let (_, hgens) = adjoin_generator(&cgens);
                zero_dim_describe(&hgens, true, seed)?
            }
        };
        degree += desc.degree;
        radical += desc.radical_degree;
        match (points.as_mut(), desc.points) {
            (Some(ps), Some(cls)) => {
                for c in cls {
                    let is_ext = matches!(field, Field::Ext(_));
                    let (coords, tau) = if is_ext {
                        let (xs, t) = c.point.split_at(c.point.len() - 1);
                        (xs.to_vec(), Some(t[0].clone()))
                    } else {
                        (c.point.clone(), None)
                    };
                    let mut proj = vec![c.field.zero(); n];
                    proj[chart] = c.field.one();
                    for (off, v) in coords.iter().enumerate() {
                        proj[chart + 1 + off] = v.clone();
                    }
                    ps.push(LocusPoint {
                        field: c.field,
                        class_degree: c.class_degree,
                        proj,
                        tau,
                    });
                }
            }
            _ => points = None,
        }
    }
    assert_eq!(radical % k as u64, 0, "adjoined point count must be divisible by the field degree");
    Ok(SingularLocus {
        proj_dim: 0,
        degree,
        point_count: radical / k as u64,
        points,
        base_degree: k,
        seed,
    })
}

// ---------------------------------------------------------------------------
// Orbit partitions and full certification
// ---------------------------------------------------------------------------

/// One group orbit of singular points.
#[derive(Debug, Clone)]
pub struct OrbitInfo {
    pub size: u64,
    pub local_type: LocalType,
    pub field_degree: usize,
}

#[derive(Debug)]
pub struct SingularReport {
    pub group: String,
    pub irreducible: bool,
    pub proj_dim: i64,
    pub point_count: u64,
    /// One entry per orbit; sizes sum to point_count.
    pub orbits: Vec<OrbitInfo>,
    /// Distinct extension degrees of the points' fields of definition.
    pub fields_of_definition: Vec<usize>,
    /// Points whose coordinates are all real (base field Q only).
    pub real_point_count: Option<u64>,
    pub seed: u64,
}

/// Map a base-field element into a class field, sending the base generator
/// to τ.
fn elem_into(e: &Elem, target: &Field, tau: Option<&Elem>) -> Elem {
    match tau {
        None => {
            let q = e.as_rat().expect("rational coefficient expected");
            target.from_rat(q.clone())
        }
        Some(t) => {
            let mut acc = target.zero();
            let mut pw = target.one();
            for a in &e.coeffs {
                use num_traits::Zero;
                if !a.is_zero() {
                    acc = acc.add(&pw.mul_rat(a));
                }
                pw = pw.mul(t);
            }
            acc
        }
    }
}

/// Move a polynomial over the base field into the same variables over a
/// class field (θ ↦ τ for number-field coefficients).
fn poly_into(f: &MPoly, target: &Field, tau: Option<&Elem>) -> MPoly {
    let refs: Vec<&str> = f.ring.vars.iter().map(|s| s.as_str()).collect();
    let tring = Ring::new(&refs, target, f.ring.order);
    MPoly::from_terms(
        &tring,
        f.terms
            .iter()
            .map(|(m, c)| (m.clone(), elem_into(c, target, tau)))
            .collect(),
    )
}

/// Minimal polynomial over Q of a number-field element.
fn min_poly_q(alpha: &Elem) -> UPoly {
    let d = alpha.field.degree();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut pw = alpha.field.one();
    for _ in 0..=d {
        if let Some(combo) = rat_in_row_space(&rows, &pw.coeffs) {
            let mut coeffs: Vec<Elem> = combo
                .iter()
                .map(|c| Field::Q.from_rat(-c.clone()))
                .collect();
            coeffs.push(Field::Q.one());
            return UPoly::new(&Field::Q, coeffs);
        }
        rows.push(pw.coeffs.clone());
        pw = pw.mul(alpha);
    }
    unreachable!("element degree exceeds field degree");
}

fn rat_in_row_space(rows: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<Rat>> {
    use num_traits::Zero;
    let k = rows.len();
    let n = v.len();
    // augmented elimination: [rows | I], reduce, then express v
    let mut a: Vec<Vec<Rat>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            for j in 0..k {
                row.push(if i == j { Rat::from_integer(1.into()) } else { Rat::zero() });
            }
            row
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].clone();
        for c in 0..n + k {
            a[r][c] = &a[r][c] / &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for c in 0..n + k {
                    let s = &a[r][c] * &f;
                    a[i][c] = &a[i][c] - &s;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut target = v.to_vec();
    let mut combo = vec![Rat::zero(); k];
    for (ri, &col) in pivots.iter().enumerate() {
        if !target[col].is_zero() {
            let f = target[col].clone();
            for c in 0..n {
                let s = &a[ri][c] * &f;
                target[c] = &target[c] - &s;
            }
            for j in 0..k {
                let s = &a[ri][n + j] * &f;
                combo[j] = &combo[j] + &s;
            }
        }
    }
    if target.iter().all(|x| x.is_zero()) {
        Some(combo)
    } else {
        None
    }
}

fn upoly_q_eval(p: &UPoly, x: &Elem) -> Elem {
    let field = x.field.clone();
    let mut acc = field.zero();
    for c in p.coeffs.iter().rev() {
        acc = acc.mul(x);
        let q = c.as_rat().expect("rational polynomial expected");
        acc = acc.add(&field.from_rat(q.clone()));
    }
    acc
}

/// Group matrix with entries mapped into a class field.
fn matrix_into(w: &[Vec<Elem>], target: &Field, tau: Option<&Elem>) -> Vec<Vec<Elem>> {
    w.iter()
        .map(|row| row.iter().map(|e| elem_into(e, target, tau)).collect())
        .collect()
}

fn apply_proj(w: &[Vec<Elem>], p: &[Elem]) -> Vec<Elem> {
    let v: Vec<Elem> = w
        .iter()
        .map(|row| {
            let mut acc = row[0].field.zero();
            for (a, b) in row.iter().zip(p.iter()) {
                acc = acc.add(&a.mul(b));
            }
            acc
        })
        .collect();
    normalize_projective(&v)
}

/// Full certification pipeline: irreducibility, singular locus, orbit
/// partition, one local type per orbit, fields of definition, real points.
pub fn certify(f: &MPoly, group: &Group, seed: u64) -> Result<SingularReport, SingularError> {
    let irreducible = member_irreducible(f);
    let locus = singular_locus(f, seed)?;
    if locus.proj_dim != 0 {
        return Ok(SingularReport {
            group: group.name.clone(),
            irreducible,
            proj_dim: locus.proj_dim,
            point_count: locus.point_count,
            orbits: vec![],
            fields_of_definition: vec![],
            real_point_count: None,
            seed,
        });
    }
    let classes = locus.points.as_ref().ok_or(SingularError::FieldTooLarge)?;
    let k = locus.base_degree as u64;
    let els = group.enumerate()?;
    let order = els.len() as u64;

    // orbit size of each class representative from its stabilizer
    let sizes: Vec<u64> = {
        use rayon::prelude::*;
        classes
            .par_iter()
            .map(|c| {
                let mats: Vec<Vec<Vec<Elem>>> = els
                    .iter()
                    .map(|w| matrix_into(w, &c.field, c.tau.as_ref()))
                    .collect();
                let base = normalize_projective(&c.proj);
                let stab = mats
                    .iter()
                    .filter(|w| apply_proj(w, &c.proj) == base)
                    .count() as u64;
                order / stab
            })
            .collect()
    };

    // separating linear form over Q on (projective coords, τ)
    let n = f.ring.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(101));
    let total: u64 = classes.iter().map(|c| c.class_degree as u64).sum();
    let mut chosen: Option<(Vec<Rat>, Vec<UPoly>)> = None;
    'search: for _ in 0..24 {
        let coeffs: Vec<Rat> = (0..n + 1)
            .map(|_| Rat::from_integer(rng.gen_range(-9i64..=9).into()))
            .collect();
        let mut polys = Vec::with_capacity(classes.len());
        for c in classes {
            let alpha = eval_form(&coeffs, c);
            let mp = min_poly_q(&alpha);
            if mp.deg() as usize != c.class_degree {
                continue 'search; // not primitive for the class
            }
            polys.push(mp);
        }
        // distinct irreducible minimal polynomials separate the classes
        for i in 0..polys.len() {
            for j in 0..i {
                if polys[i] == polys[j] {
                    continue 'search;
                }
            }
        }
        let degsum: u64 = polys.iter().map(|p| p.deg() as u64).sum();
        if degsum == total {
            chosen = Some((coeffs, polys));
            break;
        }
    }
    let (ell, class_polys) = chosen.ok_or(SingularError::NoSeparatingForm)?;

    // linkage graph under the group generators
    let mut dsu: Vec<usize> = (0..classes.len()).collect();
    fn find(dsu: &mut Vec<usize>, mut i: usize) -> usize {
        while dsu[i] != i {
            dsu[i] = dsu[dsu[i]];
            i = dsu[i];
        }
        i
    }
    for (ci, c) in classes.iter().enumerate() {
        for w in &group.gens {
            let wk = matrix_into(w, &c.field, c.tau.as_ref());
            let img = apply_proj(&wk, &c.proj);
            let moved = LocusPoint {
                field: c.field.clone(),
                class_degree: c.class_degree,
                proj: img,
                tau: c.tau.clone(),
            };
            let alpha = eval_form(&ell, &moved);
            let target = (0..classes.len())
                .find(|&j| upoly_q_eval(&class_polys[j], &alpha).is_zero())
                .expect("group image must land in a known class");
            let (a, b) = (find(&mut dsu, ci), find(&mut dsu, target));
            if a != b {
                dsu[a] = b;
            }
        }
    }
    let mut comps: std::collections::HashMap<usize, Vec<usize>> = std::collections::HashMap::new();
    for i in 0..classes.len() {
        let r = find(&mut dsu, i);
        comps.entry(r).or_default().push(i);
    }

    // one local type per component, replicated per orbit
    let mut orbits: Vec<OrbitInfo> = Vec::new();
    let mut comp_list: Vec<Vec<usize>> = comps.into_values().collect();
    comp_list.sort_by_key(|c| (sizes[c[0]], c.iter().map(|&i| classes[i].class_degree).min()));
    for comp in &comp_list {
        let s = sizes[comp[0]];
        assert!(
            comp.iter().all(|&i| sizes[i] == s),
            "conjugate classes must have equal orbit sizes"
        );
        let comp_total: u64 = comp.iter().map(|&i| classes[i].class_degree as u64).sum();
        assert_eq!(comp_total % (s * k), 0, "component size must be a multiple of orbit size");
        let norbits = comp_total / (s * k);
        let rep = &classes[comp[0]];
        let lt = local_type_at_point(f, rep)?;
        for _ in 0..norbits {
            orbits.push(OrbitInfo {
                size: s,
                local_type: lt.clone(),
                field_degree: rep.field.degree(),
            });
        }
    }
    let sum: u64 = orbits.iter().map(|o| o.size).sum();
    assert_eq!(sum, locus.point_count, "orbit sizes must sum to the point count");

    let mut fields: Vec<usize> = classes.iter().map(|c| c.field.degree()).collect();
    fields.sort_unstable();
    fields.dedup();

    let real = if matches!(f.ring.field, Field::Q) {
        let mut cnt = 0u64;
        for c in classes {
            cnt += match &c.field {
                Field::Q => 1,
                Field::Ext(nf) => {
                    let mp = UPoly::new(
                        &Field::Q,
                        nf.min_poly.iter().map(|q| Field::Q.from_rat(q.clone())).collect(),
                    );
                    count_real_roots(&mp) as u64
                }
            };
        }
        Some(cnt)
    } else {
        None
    };

    Ok(SingularReport {
        group: group.name.clone(),
        irreducible,
        proj_dim: 0,
        point_count: locus.point_count,
        orbits,
        fields_of_definition: fields,
        real_point_count: real,
        seed,
    })
}

fn eval_form(coeffs: &[Rat], p: &LocusPoint) -> Elem {
    let field = p.field.clone();
    let mut acc = field.zero();
    for (c, x) in coeffs.iter().zip(p.proj.iter()) {
        acc = acc.add(&x.mul_rat(c));
    }
    if let Some(t) = &p.tau {
        acc = acc.add(&t.mul_rat(&coeffs[p.proj.len()]));
    }
    acc
}

/// Local type of the hypersurface at a singular point: move into the
/// canonical chart of the point, translate to the origin, classify.
pub fn local_type_at_point(f: &MPoly, p: &LocusPoint) -> Result<LocalType, SingularError> {
    let n = f.ring.nvars();
    let chart = p.proj.iter().position(|c| !c.is_zero()).expect("nonzero point");
    let fk = poly_into(f, &p.field, p.tau.as_ref());
    // dehomogenize at the chart variable, translate by the point
    let names: Vec<String> = (0..n)
        .filter(|&j| j != chart)
        .map(|j| format!("x{}", j + 1))
        .collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let cring = Ring::new(&refs, &p.field, MonOrd::Grevlex);
    let mut off = 0;
    let images: Vec<MPoly> = (0..n)
        .map(|j| {
            if j == chart {
                MPoly::one(&cring)
            } else {
                let v = MPoly::var(&cring, off);
                off += 1;
                v.add(&MPoly::constant(&cring, p.proj[j].clone()))
            }
        })
        .collect();
    let h = fk.substitute(&images);
    local_type_at_origin(&h)
}

/// Predicted singular-point count of f(x_i ↦ x_i^k) inside the open torus,
/// by the étale covering argument: requires every certified base point to
/// avoid the coordinate hyperplanes, and returns k^(n-1) · base count.
pub fn lift_count_by_covering(
    f: &MPoly,
    k: u32,
    base: &SingularLocus,
) -> Result<u64, SingularError> {
    let n = f.ring.nvars();
    let classes = base.points.as_ref().ok_or(SingularError::FieldTooLarge)?;
    for c in classes {
        if c.proj.iter().any(|x| x.is_zero()) {
            return Err(SingularError::BasePointOnCoordinateHyperplane);
        }
    }
    Ok(base.point_count * (k as u64).pow(n as u32 - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn classify(src: &str, vars: &[&str]) -> LocalType {
        let r = Ring::new(vars, &Field::Q, MonOrd::Grevlex);
        let h = parse_poly(&r, src).unwrap();
        local_type_at_origin(&h).unwrap()
    }

    #[test]
    fn normal_form_suite_curves() {
        let a1 = classify("x y", &["x", "y"]);
        assert_eq!((a1.m, a1.mu, a1.tau, a1.label.clone()), (2, 1, 1, Label::A1));
        let a2 = classify("y^2 - x^3", &["x", "y"]);
        assert_eq!((a2.m, a2.mu, a2.tau, a2.label.clone()), (2, 2, 2, Label::A2));
        let d4 = classify("x (y^2 - x^2)", &["x", "y"]);
        assert_eq!((d4.m, d4.mu, d4.tau, d4.label.clone()), (3, 4, 4, Label::D4));
        assert_eq!(d4.tangent_cone_factors, Some(3));
        let e6 = classify("y^3 - x^4", &["x", "y"]);
        assert_eq!((e6.m, e6.mu, e6.tau, e6.label.clone()), (3, 6, 6, Label::E6));
        let x9 = classify("x y (y - x) (y + x)", &["x", "y"]);
        assert_eq!((x9.m, x9.mu, x9.tau, x9.label.clone()), (4, 9, 9, Label::X9));
        assert_eq!(x9.tangent_cone_factors, Some(4));
    }

    #[test]
    fn normal_form_suite_surfaces() {
        let d4 = classify("x (x^2 - y^2) + z^2", &["x", "y", "z"]);
        assert_eq!((d4.m, d4.mu, d4.tau, d4.corank, d4.label.clone()), (2, 4, 4, 2, Label::D4));
        let t = classify("x y z + x^4 + y^4 + z^4", &["x", "y", "z"]);
        assert_eq!((t.m, t.mu, t.tau, t.label.clone()), (3, 11, 10, Label::T444));
    }

    #[test]
    fn milnor_matches_series_oracle() {
        for (src, vars) in [
            ("x y", vec!["x", "y"]),
            ("y^2 - x^3", vec!["x", "y"]),
            ("x (y^2 - x^2)", vec!["x", "y"]),
            ("y^3 - x^4", vec!["x", "y"]),
            ("x y (y - x) (y + x)", vec!["x", "y"]),
            ("x (x^2 - y^2) + z^2", vec!["x", "y", "z"]),
            ("x y z + x^4 + y^4 + z^4", vec!["x", "y", "z"]),
        ] {
            let r = Ring::new(&vars, &Field::Q, MonOrd::Grevlex);
            let h = parse_poly(&r, src).unwrap();
            let lt = local_type_at_origin(&h).unwrap();
            let oracle = milnor_series_oracle(&h, 12).unwrap();
            assert_eq!(lt.mu, oracle, "{src}");
        }
    }
}
