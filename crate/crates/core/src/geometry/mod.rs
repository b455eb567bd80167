//! Exact polyhedra with both representations kept in canonical form.
//!
//! A [`Polytope`] stores its affine hull as equalities in reduced row
//! echelon form, its facets with normals orthogonal to that hull and scaled
//! so the leading coefficient has magnitude one, and its extreme points and
//! extreme rays in lexicographic order. Two polytopes describing the same
//! point set therefore compare equal field by field.

mod dd;
mod dominance;
pub(crate) mod fm;

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub use dominance::{classify_polytope_dominance, some_point_dominates, DominanceRelation};

use crate::error::{Error, Result};
use crate::linalg::{project_out, rank, rref};
use crate::lp::{solve_lp, Bound, Constraint, LinearProgram, LpOutcome};
use crate::rational::{
    dot, from_integers, int, is_zero_vector, normalize_leading, to_primitive_integers, Rational,
};

/// `{x : normal · x <= offset}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSpace {
    normal: Vec<Rational>,
    offset: Rational,
}

impl HalfSpace {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Result<Self> {
        Self::canonical(normal, offset).ok_or_else(|| Error::input("halfspace normal is zero"))
    }

    /// `{x : normal · x >= offset}`.
    pub fn at_least(normal: Vec<Rational>, offset: Rational) -> Result<Self> {
        Self::new(normal.into_iter().map(|x| -x).collect(), -offset)
    }

    pub(crate) fn canonical(mut normal: Vec<Rational>, mut offset: Rational) -> Option<Self> {
        let lead = normalize_leading(&mut normal)?;
        offset /= lead;
        Some(HalfSpace { normal, offset })
    }

    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `normal · x - offset`; nonpositive inside.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        dot(&self.normal, x) - &self.offset
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        !self.slack(x).is_positive()
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.slack(x).is_zero()
    }

    /// The closed complement `{x : normal · x >= offset}`.
    pub fn complement(&self) -> HalfSpace {
        HalfSpace {
            normal: self.normal.iter().map(|x| -x).collect(),
            offset: -&self.offset,
        }
    }

    fn as_row(&self) -> fm::Row {
        (self.normal.clone(), self.offset.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polytope {
    dim: usize,
    equalities: Vec<HalfSpace>,
    facets: Vec<HalfSpace>,
    vertices: Vec<Vec<Rational>>,
    rays: Vec<Vec<Rational>>,
    affine_dim: isize,
}

fn check_dim(dim: usize, len: usize, what: &str) -> Result<()> {
    if dim != len {
        return Err(Error::input(alloc::format!(
            "{what} has length {len}, expected {dim}"
        )));
    }
    Ok(())
}

fn canonical_direction(v: &[Rational]) -> Option<Vec<Rational>> {
    let mut v = v.to_vec();
    normalize_leading(&mut v)?;
    Some(v)
}

/// Extreme points, extreme rays and lineality basis of `{x : rows}`; `None`
/// when empty.
type Generators = (Vec<Vec<Rational>>, Vec<Vec<Rational>>, Vec<Vec<Rational>>);

fn generators_of(dim: usize, halfspaces: &[HalfSpace]) -> Option<Generators> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(halfspaces.len() + 1);
    let mut t = vec![BigInt::zero(); dim + 1];
    t[0] = BigInt::from(1);
    rows.push(t);
    for h in halfspaces {
        let mut row = Vec::with_capacity(dim + 1);
        row.push(h.offset.clone());
        row.extend(h.normal.iter().map(|x| -x));
        rows.push(to_primitive_integers(&row));
    }
    let cone = dd::double_description(&rows, dim + 1);

    let mut vertices = BTreeSet::new();
    let mut rays = BTreeSet::new();
    for r in &cone.rays {
        if r[0].is_positive() {
            let t = Rational::from_integer(r[0].clone());
            vertices.insert(from_integers(&r[1..]).into_iter().map(|x| x / &t).collect::<Vec<_>>());
        } else if let Some(d) = canonical_direction(&from_integers(&r[1..])) {
            rays.insert(d);
        }
    }
    if vertices.is_empty() {
        return None;
    }
    let lines = cone
        .lines
        .iter()
        .filter_map(|l| canonical_direction(&from_integers(&l[1..])))
        .collect();
    Some((vertices.into_iter().collect(), rays.into_iter().collect(), lines))
}

/// Canonical equalities and facets of `conv(vertices) + cone(rays)`.
fn hrep_of(dim: usize, vertices: &[Vec<Rational>], rays: &[Vec<Rational>]) -> (Vec<HalfSpace>, Vec<HalfSpace>) {
    // Polar cone over (a, beta): beta - a·v >= 0 and -a·r >= 0.
    let mut rows = Vec::with_capacity(vertices.len() + rays.len());
    for v in vertices {
        let mut row: Vec<Rational> = v.iter().map(|x| -x).collect();
        row.push(int(1));
        rows.push(to_primitive_integers(&row));
    }
    for r in rays {
        let mut row: Vec<Rational> = r.iter().map(|x| -x).collect();
        row.push(int(0));
        rows.push(to_primitive_integers(&row));
    }
    let cone = dd::double_description(&rows, dim + 1);

    let mut eq_rows: Vec<Vec<Rational>> = cone.lines.iter().map(|l| from_integers(l)).collect();
    rref(&mut eq_rows);
    let equalities: Vec<HalfSpace> = eq_rows
        .iter()
        .filter_map(|row| HalfSpace::canonical(row[..dim].to_vec(), row[dim].clone()))
        .collect();
    let eq_normals: Vec<Vec<Rational>> = equalities.iter().map(|h| h.normal.clone()).collect();

    let mut facets = BTreeSet::new();
    for r in &cone.rays {
        let a = project_out(&from_integers(&r[..dim]), &eq_normals);
        if is_zero_vector(&a) {
            continue;
        }
        let offset = vertices
            .iter()
            .map(|v| dot(&a, v))
            .max()
            .expect("vertices are nonempty");
        if let Some(h) = HalfSpace::canonical(a, offset) {
            facets.insert(h);
        }
    }
    (equalities, facets.into_iter().collect())
}

impl Polytope {
    pub fn empty(dim: usize) -> Polytope {
        Polytope {
            dim,
            equalities: Vec::new(),
            facets: Vec::new(),
            vertices: Vec::new(),
            rays: Vec::new(),
            affine_dim: -1,
        }
    }

    pub fn point(p: Vec<Rational>) -> Result<Polytope> {
        let dim = p.len();
        Polytope::from_vertices(dim, vec![p], Vec::new())
    }

    /// Builds from an H-representation; any finite set of halfspaces,
    /// redundant or contradictory, is accepted.
    pub fn from_halfspaces(dim: usize, halfspaces: &[HalfSpace]) -> Result<Polytope> {
        if dim == 0 {
            return Err(Error::input("ambient dimension must be positive"));
        }
        for h in halfspaces {
            check_dim(dim, h.dim(), "halfspace normal")?;
        }
        let Some((vertices, mut rays, lines)) = generators_of(dim, halfspaces) else {
            return Ok(Polytope::empty(dim));
        };
        for l in lines {
            rays.push(l.iter().map(|x| -x).collect());
            rays.push(l);
        }
        rays.sort();
        rays.dedup();
        let (equalities, facets) = hrep_of(dim, &vertices, &rays);
        let affine_dim = dim as isize - equalities.len() as isize;
        Ok(Polytope {
            dim,
            equalities,
            facets,
            vertices,
            rays,
            affine_dim,
        })
    }

    /// Builds from generators; the stored V-representation keeps only the
    /// extreme ones.
    pub fn from_vertices(
        dim: usize,
        vertices: Vec<Vec<Rational>>,
        rays: Vec<Vec<Rational>>,
    ) -> Result<Polytope> {
        if dim == 0 {
            return Err(Error::input("ambient dimension must be positive"));
        }
        if vertices.is_empty() {
            return Err(Error::input("at least one vertex is required"));
        }
        for v in &vertices {
            check_dim(dim, v.len(), "vertex")?;
        }
        for r in &rays {
            check_dim(dim, r.len(), "ray")?;
        }
        let rays: Vec<Vec<Rational>> = rays
            .iter()
            .filter_map(|r| canonical_direction(r))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let (equalities, facets) = hrep_of(dim, &vertices, &rays);

        let mut all_normals: Vec<Vec<Rational>> =
            equalities.iter().chain(&facets).map(|h| h.normal.clone()).collect();
        if rank(&all_normals) < dim {
            // Not pointed: extreme points are not unique, fall back to DD.
            let mut hs = equalities.clone();
            hs.extend(equalities.iter().map(HalfSpace::complement));
            hs.extend(facets.iter().cloned());
            return Polytope::from_halfspaces(dim, &hs);
        }
        all_normals.clear();

        let tight_rank = |tight: &dyn Fn(&HalfSpace) -> bool| {
            let rows: Vec<Vec<Rational>> = equalities
                .iter()
                .chain(facets.iter().filter(|h| tight(h)))
                .map(|h| h.normal.clone())
                .collect();
            rank(&rows)
        };
        let extreme: BTreeSet<Vec<Rational>> = vertices
            .into_iter()
            .filter(|v| tight_rank(&|h: &HalfSpace| h.is_tight(v)) == dim)
            .collect();
        let extreme_rays: Vec<Vec<Rational>> = rays
            .into_iter()
            .filter(|r| tight_rank(&|h: &HalfSpace| dot(&h.normal, r).is_zero()) == dim - 1)
            .collect();
        let affine_dim = dim as isize - equalities.len() as isize;
        Ok(Polytope {
            dim,
            equalities,
            facets,
            vertices: extreme.into_iter().collect(),
            rays: extreme_rays,
            affine_dim,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the affine hull; `-1` when empty.
    pub fn affine_dim(&self) -> isize {
        self.affine_dim
    }

    pub fn is_empty(&self) -> bool {
        self.affine_dim < 0
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn rays(&self) -> &[Vec<Rational>] {
        &self.rays
    }

    /// Affine hull equations `normal · x = offset`, in reduced row echelon
    /// form.
    pub fn equalities(&self) -> &[HalfSpace] {
        &self.equalities
    }

    pub fn facets(&self) -> &[HalfSpace] {
        &self.facets
    }

    /// Full H-representation: facets plus each equality as an opposing pair,
    /// sorted. The empty polytope is `{x_1 <= -1, -x_1 <= 0}`.
    pub fn halfspaces(&self) -> Vec<HalfSpace> {
        if self.is_empty() {
            let mut e = vec![Rational::zero(); self.dim];
            e[0] = int(1);
            let a = HalfSpace::new(e.clone(), int(-1)).expect("unit normal");
            let b = HalfSpace::new(e.iter().map(|x| -x).collect(), int(0)).expect("unit normal");
            return vec![b, a];
        }
        let mut hs: Vec<HalfSpace> = self.facets.clone();
        for e in &self.equalities {
            hs.push(e.clone());
            hs.push(e.complement());
        }
        hs.sort();
        hs
    }

    pub fn contains(&self, y: &[Rational]) -> bool {
        !self.is_empty()
            && y.len() == self.dim
            && self.equalities.iter().all(|h| h.is_tight(y))
            && self.facets.iter().all(|h| h.contains(y))
    }

    /// Whether `r` lies in the recession cone.
    pub fn recedes_along(&self, r: &[Rational]) -> bool {
        self.equalities.iter().all(|h| dot(&h.normal, r).is_zero())
            && self.facets.iter().all(|h| !dot(&h.normal, r).is_positive())
    }

    pub fn contains_polytope(&self, other: &Polytope) -> bool {
        other.vertices.iter().all(|v| self.contains(v)) && other.rays.iter().all(|r| self.recedes_along(r))
    }

    /// Indices into [`Polytope::facets`] of the facets tight at `y`.
    pub fn tight_facets(&self, y: &[Rational]) -> Vec<usize> {
        (0..self.facets.len()).filter(|&i| self.facets[i].is_tight(y)).collect()
    }

    /// Arithmetic mean of the vertices; a relative interior point of a
    /// bounded polytope.
    pub fn centroid(&self) -> Option<Vec<Rational>> {
        let n = self.vertices.len();
        if n == 0 {
            return None;
        }
        let mut c = vec![Rational::zero(); self.dim];
        for v in &self.vertices {
            for (x, y) in c.iter_mut().zip(v) {
                *x += y;
            }
        }
        let n = int(n as i64);
        Some(c.into_iter().map(|x| x / &n).collect())
    }

    pub fn intersect(&self, other: &Polytope) -> Result<Polytope> {
        check_dim(self.dim, other.dim, "intersection operand")?;
        if self.is_empty() || other.is_empty() {
            return Ok(Polytope::empty(self.dim));
        }
        let mut hs = self.halfspaces();
        hs.extend(other.halfspaces());
        Polytope::from_halfspaces(self.dim, &hs)
    }

    /// Intersection with extra halfspaces.
    pub fn cut(&self, halfspaces: &[HalfSpace]) -> Result<Polytope> {
        if self.is_empty() {
            return Ok(self.clone());
        }
        let mut hs = self.halfspaces();
        hs.extend(halfspaces.iter().cloned());
        Polytope::from_halfspaces(self.dim, &hs)
    }

    /// Orthogonal projection dropping the given coordinates, by
    /// Fourier–Motzkin elimination on the H-representation.
    pub fn eliminate_variables(&self, drop: &[usize]) -> Result<Polytope> {
        let drop: BTreeSet<usize> = drop.iter().copied().collect();
        if let Some(&bad) = drop.iter().find(|&&i| i >= self.dim) {
            return Err(Error::input(alloc::format!("coordinate {bad} out of range")));
        }
        if drop.len() >= self.dim {
            return Err(Error::input("cannot eliminate every coordinate"));
        }
        let out_dim = self.dim - drop.len();
        if self.is_empty() {
            return Ok(Polytope::empty(out_dim));
        }
        let rows = self.halfspaces().iter().map(HalfSpace::as_row).collect();
        let drop: Vec<usize> = drop.into_iter().collect();
        project_rows(rows, self.dim, &drop)
    }

    /// `self ⊕ {d : d >= 0}`.
    pub fn minkowski_sum_orthant(&self) -> Result<Polytope> {
        if self.is_empty() {
            return Err(Error::input("Minkowski sum of an empty polytope"));
        }
        let mut rays = self.rays.clone();
        for i in 0..self.dim {
            let mut e = vec![Rational::zero(); self.dim];
            e[i] = int(1);
            rays.push(e);
        }
        Polytope::from_vertices(self.dim, self.vertices.clone(), rays)
    }

    /// Whether some point lies in the relative interior of both.
    pub fn relative_interiors_intersect(&self, other: &Polytope) -> Result<bool> {
        check_dim(self.dim, other.dim, "operand")?;
        if self.is_empty() || other.is_empty() {
            return Ok(false);
        }
        // Maximize a common slack s over both facet sets.
        let n = self.dim;
        let mut lp = LinearProgram::new(n + 1);
        lp.objective[n] = int(-1);
        lp.bounds[n] = Bound {
            lower: None,
            upper: Some(int(1)),
        };
        for p in [self, other] {
            for h in &p.equalities {
                let mut row = h.normal.clone();
                row.push(int(0));
                lp.push(Constraint::eq(row, h.offset.clone()));
            }
            for h in &p.facets {
                let mut row = h.normal.clone();
                row.push(int(1));
                lp.push(Constraint::le(row, h.offset.clone()));
            }
        }
        Ok(match solve_lp(&lp) {
            LpOutcome::Optimal(sol) => sol.value.is_negative(),
            _ => false,
        })
    }
}

/// Projects `{x : rows}` in `ncols` dimensions onto the coordinates not in
/// `drop`.
pub(crate) fn project_rows(rows: Vec<fm::Row>, ncols: usize, drop: &[usize]) -> Result<Polytope> {
    let out_dim = ncols - drop.len();
    match fm::eliminate(rows, ncols, drop) {
        None => Ok(Polytope::empty(out_dim)),
        Some(rows) => {
            let hs: Vec<HalfSpace> = rows
                .into_iter()
                .filter_map(|(a, b)| HalfSpace::canonical(a, b))
                .collect();
            Polytope::from_halfspaces(out_dim, &hs)
        }
    }
}

/// Common dimension of a set of points; errors on mismatch or emptiness.
fn common_dim(points: &[Vec<Rational>]) -> Result<usize> {
    let dim = points
        .first()
        .map(Vec::len)
        .ok_or_else(|| Error::input("at least one vertex is required"))?;
    Ok(dim)
}

pub fn vrep_to_hrep(vertices: Vec<Vec<Rational>>, rays: Vec<Vec<Rational>>) -> Result<Polytope> {
    let dim = common_dim(&vertices)?;
    Polytope::from_vertices(dim, vertices, rays)
}

pub fn hrep_to_vrep(halfspaces: &[HalfSpace], dim: usize) -> Result<Polytope> {
    Polytope::from_halfspaces(dim, halfspaces)
}

pub fn intersect(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    p.intersect(q)
}

pub fn eliminate_variables(p: &Polytope, drop: &[usize]) -> Result<Polytope> {
    p.eliminate_variables(drop)
}

pub fn minkowski_sum_orthant(p: &Polytope) -> Result<Polytope> {
    p.minkowski_sum_orthant()
}

/// Convex pieces covering `x \ relint-ish(r)`: for the halfspaces `H_1..H_m`
/// of `r` that do not already contain `x`, the pieces
/// `x ∩ H_1 ∩ … ∩ H_{j-1} ∩ ¬H_j` of full dimension relative to `x`.
/// The pieces have disjoint relative interiors and together with `x ∩ r`
/// cover `x`.
pub fn difference_pieces(x: &Polytope, r: &Polytope) -> Result<Vec<Polytope>> {
    check_dim(x.dim, r.dim, "operand")?;
    if x.is_empty() {
        return Ok(Vec::new());
    }
    if r.is_empty() || x.intersect(r)?.is_empty() {
        return Ok(vec![x.clone()]);
    }
    let mut pieces = Vec::new();
    let mut accumulated: Vec<HalfSpace> = Vec::new();
    for h in r.halfspaces() {
        if x.vertices.iter().all(|v| h.contains(v)) && x.rays.iter().all(|d| !dot(&h.normal, d).is_positive()) {
            continue;
        }
        let mut hs = accumulated.clone();
        hs.push(h.complement());
        let piece = x.cut(&hs)?;
        if piece.affine_dim == x.affine_dim {
            pieces.push(piece);
        }
        accumulated.push(h);
    }
    Ok(pieces)
}
