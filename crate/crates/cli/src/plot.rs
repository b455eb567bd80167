//! Plot data: one CSV row per vertex of every region base and removal.
//!
//! Columns are `region_id, kind, part, vertex_index`, the coordinates as
//! decimals (`y1..yk`) and the same coordinates exactly (`y1_exact..`).
//! `part` numbers the removals of a region; it is 0 for the base. Polygon
//! vertices are listed in boundary order.

use std::cmp::Ordering;
use std::io::Write;
use std::path::Path;

use momilp_core::geometry::Polytope;
use momilp_core::rational::{format_rational, to_f64};
use momilp_core::{ParetoFront, Rational};
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PlotError {
    #[error("plot data needs 2 or 3 objectives, not {0}")]
    UnsupportedDimension(usize),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn cross(o: &[Rational; 2], a: &[Rational; 2], b: &[Rational; 2]) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Vertices of a polytope in boundary order when it is a polygon, otherwise
/// as stored.
pub fn ordered_vertices(p: &Polytope) -> Vec<Vec<Rational>> {
    let vs = p.vertices().to_vec();
    if p.affine_dim() != 2 || vs.len() < 3 {
        return vs;
    }
    // A coordinate pair on which the polygon does not flatten.
    let dim = p.dim();
    let pair = (0..dim)
        .flat_map(|a| (a + 1..dim).map(move |b| (a, b)))
        .find(|&(a, b)| {
            let q: Vec<[Rational; 2]> = vs.iter().map(|v| [v[a].clone(), v[b].clone()]).collect();
            (1..q.len()).any(|i| (i + 1..q.len()).any(|j| !cross(&q[0], &q[i], &q[j]).is_zero()))
        });
    let Some((a, b)) = pair else { return vs };
    let n = Rational::from_integer(vs.len().into());
    let c = [
        vs.iter().map(|v| v[a].clone()).sum::<Rational>() / &n,
        vs.iter().map(|v| v[b].clone()).sum::<Rational>() / &n,
    ];
    let key = |v: &Vec<Rational>| {
        let (dx, dy) = (&v[a] - &c[0], &v[b] - &c[1]);
        let half = if dy.is_positive() || (dy.is_zero() && dx.is_positive()) { 0 } else { 1 };
        (half, dx, dy)
    };
    let mut sorted = vs;
    sorted.sort_by(|u, v| {
        let (hu, ux, uy) = key(u);
        let (hv, vx, vy) = key(v);
        hu.cmp(&hv).then_with(|| match (&vx * &uy).cmp(&(&ux * &vy)) {
            Ordering::Equal => u.cmp(v),
            o => o,
        })
    });
    sorted
}

pub fn write_plot<W: Write>(front: &ParetoFront, out: W) -> Result<(), PlotError> {
    let k = front.k;
    if !(2..=3).contains(&k) {
        return Err(PlotError::UnsupportedDimension(k));
    }
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = ["region_id", "kind", "part", "vertex_index"].map(String::from).to_vec();
    header.extend((1..=k).map(|i| format!("y{i}")));
    header.extend((1..=k).map(|i| format!("y{i}_exact")));
    w.write_record(&header)?;
    for (id, region) in front.regions.iter().enumerate() {
        let parts = std::iter::once(("base", 0, &region.base))
            .chain(region.removals.iter().enumerate().map(|(i, r)| ("removal", i + 1, &r.polytope)));
        for (kind, part, poly) in parts {
            for (j, v) in ordered_vertices(poly).iter().enumerate() {
                let mut row = vec![id.to_string(), kind.to_string(), part.to_string(), j.to_string()];
                row.extend(v.iter().map(|x| to_f64(x).to_string()));
                row.extend(v.iter().map(format_rational));
                w.write_record(&row)?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn emit_plot_data(front: &ParetoFront, path: &Path) -> Result<(), PlotError> {
    let file = std::fs::File::create(path)?;
    write_plot(front, std::io::BufWriter::new(file))
}

#[cfg(test)]
mod tests {
    use super::*;
    use momilp_core::geometry::vrep_to_hrep;
    use momilp_core::rational::ints;
    use momilp_core::{ParetoRegion, Slice};

    fn front(k: usize, polys: Vec<Polytope>) -> ParetoFront {
        ParetoFront {
            k,
            regions: polys
                .into_iter()
                .enumerate()
                .map(|(i, base)| ParetoRegion {
                    base,
                    removals: vec![],
                    piece_id: i,
                    slice: Slice(vec![]),
                })
                .collect(),
        }
    }

    fn csv_of(f: &ParetoFront) -> String {
        let mut buf = Vec::new();
        write_plot(f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn segment_rows() {
        let seg = vrep_to_hrep(vec![ints(&[1, 0]), ints(&[0, 1])], vec![]).unwrap();
        assert_eq!(
            csv_of(&front(2, vec![seg])),
            "region_id,kind,part,vertex_index,y1,y2,y1_exact,y2_exact\n\
             0,base,0,0,0,1,0,1\n\
             0,base,0,1,1,0,1,0\n"
        );
    }

    #[test]
    fn empty_front_is_header_only() {
        assert_eq!(csv_of(&front(3, vec![])), "region_id,kind,part,vertex_index,y1,y2,y3,y1_exact,y2_exact,y3_exact\n");
    }

    #[test]
    fn four_objectives_rejected() {
        let err = write_plot(&front(4, vec![]), Vec::new()).unwrap_err();
        assert!(matches!(err, PlotError::UnsupportedDimension(4)));
    }

    #[test]
    fn polygon_in_boundary_order() {
        // A square in the plane y1 + y2 + y3 = 2, stored in sorted order.
        let sq = vrep_to_hrep(
            vec![ints(&[0, 0, 2]), ints(&[1, 0, 1]), ints(&[0, 1, 1]), ints(&[1, 1, 0])],
            vec![],
        )
        .unwrap();
        let vs = ordered_vertices(&sq);
        assert_eq!(vs.len(), 4);
        // Turning is consistent around the boundary in the (y1, y2) shadow.
        let q: Vec<[Rational; 2]> = vs.iter().map(|v| [v[0].clone(), v[1].clone()]).collect();
        let turns: Vec<bool> = (0..4).map(|i| cross(&q[i], &q[(i + 1) % 4], &q[(i + 2) % 4]).is_positive()).collect();
        assert!(turns.iter().all(|&t| t == turns[0]));
        for i in 0..4 {
            assert!(!cross(&q[i], &q[(i + 1) % 4], &q[(i + 2) % 4]).is_zero());
        }
    }
}
