//! Reflection group models: JSON loading, exact enumeration, reflections,
//! center, projective orbits.

use crate::field::{Elem, Field, FieldError, NumberField, Rat};
use crate::poly::{parse_poly, MonOrd, Ring};
use once_cell::sync::OnceCell;
use serde::Deserialize;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("bad model file: {0}")]
    BadModel(String),
    #[error("enumeration exceeded cap {0}")]
    CapExceeded(usize),
    #[error("unknown group {0}")]
    Unknown(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Field descriptor as it appears in model/config files.
#[derive(Debug, Clone, Deserialize)]
pub struct FieldDescriptor {
    pub name: String,
    pub min_poly: String,
    pub root_hint: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ModelFile {
    pub name: String,
    pub field: FieldDescriptor,
    pub rank: usize,
    pub degrees: Option<Vec<u32>>,
    pub order: u64,
    pub num_reflections: Option<u64>,
    pub generators: Vec<Vec<Vec<String>>>,
    #[serde(default)]
    pub note: Option<String>,
}

/// Parse a root hint of the form "a", "bi", or "a+bi" / "a-bi".
pub fn parse_root_hint(s: &str) -> Result<(f64, f64), GroupError> {
    let s = s.trim();
    let bad = || GroupError::BadModel(format!("bad root_hint {s:?}"));
    if let Some(body) = s.strip_suffix('i') {
        // split into real and imaginary parts at the last +/- not at pos 0
        let mut split = None;
        for (idx, c) in body.char_indices().skip(1) {
            if (c == '+' || c == '-') && !body[..idx].ends_with(['e', 'E']) {
                split = Some(idx);
            }
        }
        match split {
            Some(idx) => {
                let re: f64 = body[..idx].parse().map_err(|_| bad())?;
                let imtxt = &body[idx..];
                let im: f64 = if imtxt == "+" || imtxt == "-" {
                    if imtxt == "-" {
                        -1.0
                    } else {
                        1.0
                    }
                } else {
                    imtxt.parse().map_err(|_| bad())?
                };
                Ok((re, im))
            }
            None => {
                let im: f64 = if body.is_empty() {
                    1.0
                } else if body == "-" {
                    -1.0
                } else {
                    body.parse().map_err(|_| bad())?
                };
                Ok((0.0, im))
            }
        }
    } else {
        Ok((s.parse().map_err(|_| bad())?, 0.0))
    }
}

/// Build a [`Field`] from a descriptor. The name "Q" (or a degree-1
/// minimal polynomial) yields the rationals.
pub fn field_from_descriptor(d: &FieldDescriptor) -> Result<Field, GroupError> {
    // parse min_poly as a univariate polynomial in t over Q
    let tring = Ring::new(&["tt"], &Field::Q, MonOrd::Lex);
    let text = d.min_poly.replace('t', "tt");
    let p = parse_poly(&tring, &text)
        .map_err(|e| GroupError::BadModel(format!("min_poly: {e}")))?;
    let deg = p.total_degree() as usize;
    if d.name == "Q" || deg <= 1 {
        return Ok(Field::Q);
    }
    let mut coeffs = vec![Rat::from_integer(0.into()); deg + 1];
    for (m, c) in &p.terms {
        coeffs[m.0[0] as usize] = c.as_rat().unwrap().clone();
    }
    let hint = parse_root_hint(&d.root_hint)?;
    let nf = NumberField::new(&d.name, coeffs, hint)?;
    Ok(Field::Ext(nf))
}

pub type Matrix = Vec<Vec<Elem>>;

pub fn mat_identity(field: &Field, n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { field.one() } else { field.zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let field = &a[0][0].field;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = field.zero();
                    for (k, row) in b.iter().enumerate() {
                        if !a[i][k].is_zero() && !row[j].is_zero() {
                            acc = acc.add(&a[i][k].mul(&row[j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[Elem]) -> Vec<Elem> {
    let field = &a[0][0].field;
    a.iter()
        .map(|row| {
            let mut acc = field.zero();
            for (k, x) in v.iter().enumerate() {
                if !row[k].is_zero() && !x.is_zero() {
                    acc = acc.add(&row[k].mul(x));
                }
            }
            acc
        })
        .collect()
}

fn flatten(m: &Matrix) -> Vec<Elem> {
    m.iter().flat_map(|r| r.iter().cloned()).collect()
}

/// Rank of a matrix over its field by Gaussian elimination.
pub fn mat_rank(m: &Matrix) -> usize {
    if m.is_empty() {
        return 0;
    }
    let mut a: Vec<Vec<Elem>> = m.to_vec();
    let rows = a.len();
    let cols = a[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = a[rank][col].inv().unwrap();
        for c in col..cols {
            a[rank][c] = a[rank][c].mul(&inv);
        }
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..cols {
                    let s = a[rank][c].mul(&f);
                    a[r][c] = a[r][c].sub(&s);
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// A reflection group model with lazily enumerated element list.
pub struct Group {
    pub name: String,
    pub field: Field,
    pub rank: usize,
    pub degrees: Option<Vec<u32>>,
    pub expected_order: u64,
    pub expected_reflections: Option<u64>,
    pub gens: Vec<Matrix>,
    elements: OnceCell<Vec<Matrix>>,
}

pub const ENUMERATION_CAP: usize = 200_000;

impl Group {
    pub fn from_model(model: &ModelFile) -> Result<Group, GroupError> {
        let field = field_from_descriptor(&model.field)?;
        // matrix entries parse in a 0-variable ring over the field
        let ering = Ring::new(&[], &field, MonOrd::Grevlex);
        let mut gens = Vec::new();
        for g in &model.generators {
            if g.len() != model.rank {
                return Err(GroupError::BadModel("generator row count".into()));
            }
            let mut mat = Vec::new();
            for row in g {
                if row.len() != model.rank {
                    return Err(GroupError::BadModel("generator column count".into()));
                }
                let mut r = Vec::new();
                for e in row {
                    let p = parse_poly(&ering, e)
                        .map_err(|er| GroupError::BadModel(format!("entry {e:?}: {er}")))?;
                    let v = if p.is_zero() {
                        field.zero()
                    } else {
                        p.terms[0].1.clone()
                    };
                    r.push(v);
                }
                mat.push(r);
            }
            gens.push(mat);
        }
        Ok(Group {
            name: model.name.clone(),
            field,
            rank: model.rank,
            degrees: model.degrees.clone(),
            expected_order: model.order,
            expected_reflections: model.num_reflections,
            gens,
            elements: OnceCell::new(),
        })
    }

    pub fn from_json(text: &str) -> Result<Group, GroupError> {
        let model: ModelFile = serde_json::from_str(text)
            .map_err(|e| GroupError::BadModel(e.to_string()))?;
        Group::from_model(&model)
    }

    /// Breadth-first closure of the generators. Errors if the cap is hit
    /// (guards against accidentally infinite groups).
    pub fn enumerate(&self) -> Result<&[Matrix], GroupError> {
        if let Some(e) = self.elements.get() {
            return Ok(e);
        }
        let id = mat_identity(&self.field, self.rank);
        let mut seen: HashMap<Vec<Elem>, usize> = HashMap::new();
        let mut els: Vec<Matrix> = vec![id.clone()];
        seen.insert(flatten(&id), 0);
        let mut frontier: Vec<usize> = vec![0];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &fi in &frontier {
                for g in &self.gens {
                    let m = mat_mul(&els[fi], g);
                    let key = flatten(&m);
                    if !seen.contains_key(&key) {
                        if els.len() >= ENUMERATION_CAP {
                            return Err(GroupError::CapExceeded(ENUMERATION_CAP));
                        }
                        seen.insert(key, els.len());
                        next.push(els.len());
                        els.push(m);
                    }
                }
            }
            frontier = next;
        }
        let _ = self.elements.set(els);
        Ok(self.elements.get().unwrap())
    }

    pub fn order(&self) -> Result<u64, GroupError> {
        Ok(self.enumerate()?.len() as u64)
    }

    /// Elements g with rank(g - 1) = 1, i.e. (pseudo-)reflections.
    pub fn reflections(&self) -> Result<Vec<Matrix>, GroupError> {
        let id = mat_identity(&self.field, self.rank);
        let els = self.enumerate()?;
        Ok(els
            .iter()
            .filter(|m| {
                let d: Matrix = (0..self.rank)
                    .map(|i| (0..self.rank).map(|j| m[i][j].sub(&id[i][j])).collect())
                    .collect();
                mat_rank(&d) == 1
            })
            .cloned()
            .collect())
    }

    /// Center: elements commuting with every generator.
    pub fn center(&self) -> Result<Vec<Matrix>, GroupError> {
        let els = self.enumerate()?;
        Ok(els
            .iter()
            .filter(|m| self.gens.iter().all(|g| mat_mul(m, g) == mat_mul(g, m)))
            .cloned()
            .collect())
    }

    /// Orbit of a projective point. Points are normalized so the first
    /// nonzero coordinate is 1.
    pub fn projective_orbit(&self, point: &[Elem]) -> Result<Vec<Vec<Elem>>, GroupError> {
        let els = self.enumerate()?;
        let mut seen: HashMap<Vec<Elem>, ()> = HashMap::new();
        let mut orbit = Vec::new();
        for m in els {
            let p = normalize_projective(&mat_vec(m, point));
            if seen.insert(p.clone(), ()).is_none() {
                orbit.push(p);
            }
        }
        Ok(orbit)
    }

    /// Partition a set of projective points into orbits; returns indices
    /// into `points` grouped by orbit, each sorted, orbits sorted by first
    /// member.
    pub fn orbit_partition(&self, points: &[Vec<Elem>]) -> Result<Vec<Vec<usize>>, GroupError> {
        let normed: Vec<Vec<Elem>> = points.iter().map(|p| normalize_projective(p)).collect();
        let index: HashMap<Vec<Elem>, usize> =
            normed.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut assigned = vec![usize::MAX; points.len()];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for i in 0..points.len() {
            if assigned[i] != usize::MAX {
                continue;
            }
            let orb = self.projective_orbit(&normed[i])?;
            let mut members: Vec<usize> = orb
                .iter()
                .filter_map(|p| index.get(p).copied())
                .collect();
            members.sort_unstable();
            members.dedup();
            let oid = orbits.len();
            for &m in &members {
                assigned[m] = oid;
            }
            orbits.push(members);
        }
        orbits.sort_by_key(|o| o[0]);
        Ok(orbits)
    }
}

/// Scale a projective point so its first nonzero coordinate is 1.
pub fn normalize_projective(p: &[Elem]) -> Vec<Elem> {
    match p.iter().find(|c| !c.is_zero()) {
        None => p.to_vec(),
        Some(c) => {
            let inv = c.inv().unwrap();
            p.iter().map(|x| x.mul(&inv)).collect()
        }
    }
}

/// Built-in models shipped with the crate.
pub static MODEL_SOURCES: &[(&str, &str)] = &[
    ("W1", include_str!("../data/groups/w1.json")),
    ("W2", include_str!("../data/groups/w2.json")),
    ("G23", include_str!("../data/groups/g23.json")),
    ("G24", include_str!("../data/groups/g24.json")),
    ("G25", include_str!("../data/groups/g25.json")),
    ("G26", include_str!("../data/groups/g26.json")),
    ("G27", include_str!("../data/groups/g27.json")),
    ("G28", include_str!("../data/groups/g28.json")),
    ("G29", include_str!("../data/groups/g29.json")),
    ("G30", include_str!("../data/groups/g30.json")),
    ("G31", include_str!("../data/groups/g31.json")),
    ("G32", include_str!("../data/groups/g32.json")),
];

pub fn builtin_names() -> Vec<&'static str> {
    MODEL_SOURCES.iter().map(|(n, _)| *n).collect()
}

pub fn load_builtin(name: &str) -> Result<Group, GroupError> {
    let src = MODEL_SOURCES
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, s)| *s)
        .ok_or_else(|| GroupError::Unknown(name.to_string()))?;
    Group::from_json(src)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_hints_parse() {
        assert_eq!(parse_root_hint("2.236").unwrap(), (2.236, 0.0));
        assert_eq!(parse_root_hint("1i").unwrap(), (0.0, 1.0));
        assert_eq!(parse_root_hint("-0.5+0.866i").unwrap(), (-0.5, 0.866));
        assert_eq!(parse_root_hint("2.6457513i").unwrap(), (0.0, 2.6457513));
    }

    #[test]
    fn small_models_enumerate_to_expected_order() {
        for name in ["W1", "G23", "G25", "G26", "G28"] {
            let g = load_builtin(name).unwrap();
            assert_eq!(g.order().unwrap(), g.expected_order, "{name}");
        }
    }

    #[test]
    fn g23_reflection_count_and_center() {
        let g = load_builtin("G23").unwrap();
        assert_eq!(g.reflections().unwrap().len(), 15);
        assert_eq!(g.center().unwrap().len(), 2);
    }

    #[test]
    fn g24_descent_model() {
        let g = load_builtin("G24").unwrap();
        assert_eq!(g.order().unwrap(), 336);
        assert_eq!(g.reflections().unwrap().len(), 21);
        assert_eq!(g.center().unwrap().len(), 2);
    }

    #[test]
    fn order_matches_degree_product_on_small_groups() {
        for name in ["G23", "G25", "G26", "G28"] {
            let g = load_builtin(name).unwrap();
            let degs = g.degrees.clone().unwrap();
            let prod: u64 = degs.iter().map(|&d| d as u64).product();
            assert_eq!(g.order().unwrap(), prod, "{name}");
            // reflections = sum(d_i - 1)
            let sum: u64 = degs.iter().map(|&d| (d - 1) as u64).sum();
            assert_eq!(g.reflections().unwrap().len() as u64, sum, "{name}");
            // center = gcd of degrees
            let gcd = degs.iter().fold(0u32, |a, &b| num_integer::gcd(a, b));
            assert_eq!(g.center().unwrap().len() as u64, gcd as u64, "{name}");
        }
    }

    #[test]
    fn projective_orbit_of_coordinate_point() {
        let g = load_builtin("G28").unwrap();
        let f = &g.field;
        // orbit of e1 under F4: the 24 "short/long" root directions project
        // to 12 lines {e_i} + {e_i +- e_j} ... just check the size divides |G|
        let pt = vec![f.one(), f.zero(), f.zero(), f.zero()];
        let orb = g.projective_orbit(&pt).unwrap();
        assert!(1152 % orb.len() as u64 == 0);
        // partition recovers a single orbit
        let parts = g.orbit_partition(&orb).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].len(), orb.len());
    }
}
