//! Objective-space image of one slice and its nondominated faces.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{fm::Row, project_rows, Polytope};
use crate::lp::{solve_lp, Constraint, LinearProgram, Relation};
use crate::problem::{MomilpProblem, Slice};
use crate::rational::{dot, int, Rational};

/// `{f(x) : x feasible in the slice} ⊕ R^k_{>=0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperImage {
    pub polyhedron: Polytope,
    pub slice: Slice,
}

/// A bounded face of a slice's upper image with a strictly positive
/// supporting weight vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FrontPiece {
    pub id: usize,
    pub polytope: Polytope,
    pub slice: Slice,
    /// The piece this one was carved from, if any.
    pub parent: Option<usize>,
}

/// Projects `{(x, y) : x feasible in the slice, y >= C x + offsets}` onto
/// `y`. Integer variables are substituted by their slice values before
/// eliminating the continuous ones.
pub fn compute_upper_image(problem: &MomilpProblem, slice: &Slice) -> Result<UpperImage> {
    problem.check_slice(slice)?;
    if solve_lp(&problem.slice_lp(slice)).is_infeasible() {
        return Err(Error::SliceInfeasible);
    }
    let k = problem.k();
    let ints = problem.integer_indices();
    let conts = problem.continuous_indices();
    let m = conts.len();
    let fixed = |coeffs: &[Rational]| -> Rational {
        ints.iter().zip(&slice.0).map(|(&i, &v)| &coeffs[i] * int(v)).sum()
    };
    let spread = |coeffs: &[Rational]| -> Vec<Rational> {
        let mut row: Vec<Rational> = conts.iter().map(|&j| coeffs[j].clone()).collect();
        row.resize(m + k, int(0));
        row
    };
    let negate = |(a, b): Row| -> Row { (a.iter().map(|x| -x).collect(), -b) };

    let mut rows: Vec<Row> = Vec::new();
    for c in problem.constraints() {
        let row = (spread(&c.coeffs), &c.rhs - fixed(&c.coeffs));
        match c.relation {
            Relation::Le => rows.push(row),
            Relation::Ge => rows.push(negate(row)),
            Relation::Eq => {
                rows.push(row.clone());
                rows.push(negate(row));
            }
        }
    }
    for (col, &j) in conts.iter().enumerate() {
        let v = &problem.variables()[j];
        let mut e = vec![int(0); m + k];
        e[col] = int(1);
        if let Some(u) = &v.upper {
            rows.push((e.clone(), u.clone()));
        }
        if let Some(l) = &v.lower {
            rows.push(negate((e, l.clone())));
        }
    }
    for (i, (obj, off)) in problem.objectives().iter().zip(problem.offsets()).enumerate() {
        // C_i x - y_i <= -(offset_i + fixed part)
        let mut row = spread(obj);
        row[m + i] = int(-1);
        rows.push((row, -(off + fixed(obj))));
    }
    let drop: Vec<usize> = (0..m).collect();
    let polyhedron = project_rows(rows, m + k, &drop)?;
    if polyhedron.is_empty() {
        return Err(Error::SliceInfeasible);
    }
    if polyhedron.rays().iter().any(|r| r.iter().any(Signed::is_negative)) {
        return Err(Error::Pipeline("slice image is unbounded below".into()));
    }
    Ok(UpperImage {
        polyhedron,
        slice: slice.clone(),
    })
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Face {
    /// Tight facet indices.
    tight: BTreeSet<usize>,
    vertices: BTreeSet<usize>,
    rays: BTreeSet<usize>,
}

/// Whether a nonnegative combination of the facets' inward weights
/// `w_j = -normal_j` is strictly positive.
fn strictly_supported(p: &Polytope, tight: &BTreeSet<usize>) -> bool {
    let k = p.dim();
    if tight.is_empty() {
        return false;
    }
    let mut lp = LinearProgram::new(tight.len());
    for b in lp.bounds.iter_mut() {
        b.lower = Some(int(0));
    }
    for i in 0..k {
        let row: Vec<Rational> = tight.iter().map(|&j| -&p.facets()[j].normal()[i]).collect();
        lp.push(Constraint::ge(row, int(1)));
    }
    !solve_lp(&lp).is_infeasible()
}

fn face_lattice(p: &Polytope) -> Vec<Face> {
    let facets = p.facets();
    let tight_on = |face_v: &BTreeSet<usize>, face_r: &BTreeSet<usize>| -> BTreeSet<usize> {
        (0..facets.len())
            .filter(|&j| {
                face_v.iter().all(|&v| facets[j].is_tight(&p.vertices()[v]))
                    && face_r.iter().all(|&r| dot(facets[j].normal(), &p.rays()[r]).is_zero())
            })
            .collect()
    };
    let mut seen: BTreeSet<(BTreeSet<usize>, BTreeSet<usize>)> = BTreeSet::new();
    let mut frontier: Vec<Face> = Vec::new();
    for j in 0..facets.len() {
        let vertices: BTreeSet<usize> = (0..p.vertices().len())
            .filter(|&v| facets[j].is_tight(&p.vertices()[v]))
            .collect();
        let rays: BTreeSet<usize> = (0..p.rays().len())
            .filter(|&r| dot(facets[j].normal(), &p.rays()[r]).is_zero())
            .collect();
        if seen.insert((vertices.clone(), rays.clone())) {
            let tight = tight_on(&vertices, &rays);
            frontier.push(Face { tight, vertices, rays });
        }
    }
    let mut all = Vec::new();
    while let Some(face) = frontier.pop() {
        for j in 0..facets.len() {
            if face.tight.contains(&j) {
                continue;
            }
            let vertices: BTreeSet<usize> = face
                .vertices
                .iter()
                .copied()
                .filter(|&v| facets[j].is_tight(&p.vertices()[v]))
                .collect();
            if vertices.is_empty() {
                continue;
            }
            let rays: BTreeSet<usize> = face
                .rays
                .iter()
                .copied()
                .filter(|&r| dot(facets[j].normal(), &p.rays()[r]).is_zero())
                .collect();
            if seen.insert((vertices.clone(), rays.clone())) {
                let tight = tight_on(&vertices, &rays);
                frontier.push(Face { tight, vertices, rays });
            }
        }
        all.push(face);
    }
    all
}

/// Maximal faces admitting a strictly positive supporting weight vector,
/// ordered by tight-set size then lexicographically. Piece ids are assigned
/// consecutively from `first_id`.
pub fn nondominated_faces(image: &UpperImage, first_id: usize) -> Result<Vec<FrontPiece>> {
    let p = &image.polyhedron;
    let mut faces = face_lattice(p);
    faces.sort_by(|a, b| a.tight.len().cmp(&b.tight.len()).then_with(|| a.cmp(b)));
    let mut kept: Vec<Face> = Vec::new();
    for face in faces {
        let covered = kept
            .iter()
            .any(|f| face.vertices.is_subset(&f.vertices) && face.rays.is_subset(&f.rays));
        if covered || !strictly_supported(p, &face.tight) {
            continue;
        }
        kept.push(face);
    }
    kept.into_iter()
        .enumerate()
        .map(|(n, face)| {
            if !face.rays.is_empty() {
                return Err(Error::Pipeline("strictly supported face is unbounded".into()));
            }
            let vertices: Vec<Vec<Rational>> = face.vertices.iter().map(|&v| p.vertices()[v].clone()).collect();
            Ok(FrontPiece {
                id: first_id + n,
                polytope: Polytope::from_vertices(p.dim(), vertices, Vec::new())?,
                slice: image.slice.clone(),
                parent: None,
            })
        })
        .collect()
}
