//! JSON artifacts. Every rational is a `[numerator, denominator]` pair of
//! JSON integers of arbitrary size.

use std::collections::BTreeSet;
use std::str::FromStr;

use momilp_core::geometry::Polytope;
use momilp_core::phase1::{CandidateSet, CollectStats, Strategy};
use momilp_core::phase2::CarvedSet;
use momilp_core::{FrontPiece, OracleFront, ParetoFront, ParetoRegion, Rational, Removal, Slice};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error(transparent)]
    Syntax(#[from] serde_json::Error),
    #[error("invalid artifact: {0}")]
    Invalid(String),
}

fn invalid(e: impl std::fmt::Display) -> JsonError {
    JsonError::Invalid(e.to_string())
}

/// A rational as `[num, den]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exact(pub Rational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let num = serde_json::Number::from_str(&self.0.numer().to_string()).map_err(serde::ser::Error::custom)?;
        let den = serde_json::Number::from_str(&self.0.denom().to_string()).map_err(serde::ser::Error::custom)?;
        [num, den].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [num, den] = <[serde_json::Number; 2]>::deserialize(d)?;
        let num = BigInt::from_str(&num.to_string()).map_err(D::Error::custom)?;
        let den = BigInt::from_str(&den.to_string()).map_err(D::Error::custom)?;
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Exact(Rational::new(num, den)))
    }
}

type Point = Vec<Exact>;

fn point(v: &[Rational]) -> Point {
    v.iter().cloned().map(Exact).collect()
}

fn unpoint(v: Vec<Exact>) -> Vec<Rational> {
    v.into_iter().map(|e| e.0).collect()
}

#[derive(Debug, Serialize, Deserialize)]
pub struct HalfSpaceDto {
    pub normal: Point,
    pub offset: Exact,
}

/// The vertices and rays are authoritative; `halfspaces` (`normal · y <=
/// offset`) are written for readers and ignored on input.
#[derive(Debug, Serialize, Deserialize)]
pub struct PolytopeDto {
    pub dim: usize,
    pub vertices: Vec<Point>,
    pub rays: Vec<Point>,
    #[serde(default)]
    pub halfspaces: Vec<HalfSpaceDto>,
}

impl From<&Polytope> for PolytopeDto {
    fn from(p: &Polytope) -> Self {
        PolytopeDto {
            dim: p.dim(),
            vertices: p.vertices().iter().map(|v| point(v)).collect(),
            rays: p.rays().iter().map(|v| point(v)).collect(),
            halfspaces: p
                .halfspaces()
                .iter()
                .map(|h| HalfSpaceDto {
                    normal: point(h.normal()),
                    offset: Exact(h.offset().clone()),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolytopeDto> for Polytope {
    type Error = JsonError;

    fn try_from(d: PolytopeDto) -> Result<Self, JsonError> {
        if d.vertices.is_empty() {
            return Ok(Polytope::empty(d.dim));
        }
        let vertices = d.vertices.into_iter().map(unpoint).collect();
        let rays = d.rays.into_iter().map(unpoint).collect();
        Polytope::from_vertices(d.dim, vertices, rays).map_err(invalid)
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PieceDto {
    pub id: usize,
    pub slice: Vec<i64>,
    pub parent: Option<usize>,
    pub polytope: PolytopeDto,
}

impl From<&FrontPiece> for PieceDto {
    fn from(p: &FrontPiece) -> Self {
        PieceDto {
            id: p.id,
            slice: p.slice.0.clone(),
            parent: p.parent,
            polytope: (&p.polytope).into(),
        }
    }
}

impl TryFrom<PieceDto> for FrontPiece {
    type Error = JsonError;

    fn try_from(d: PieceDto) -> Result<Self, JsonError> {
        Ok(FrontPiece {
            id: d.id,
            polytope: d.polytope.try_into()?,
            slice: Slice(d.slice),
            parent: d.parent,
        })
    }
}

fn pieces_from(dtos: Vec<PieceDto>) -> Result<Vec<FrontPiece>, JsonError> {
    dtos.into_iter().map(FrontPiece::try_from).collect()
}

pub fn strategy_name(s: Strategy) -> &'static str {
    match s {
        Strategy::Exhaustive => "exhaustive",
        Strategy::MilpDriven => "milp",
    }
}

pub fn strategy_from_name(name: &str) -> Option<Strategy> {
    match name {
        "exhaustive" => Some(Strategy::Exhaustive),
        "milp" => Some(Strategy::MilpDriven),
        _ => None,
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CandidatesDto {
    pub k: usize,
    pub strategy: String,
    pub slices_examined: usize,
    pub milp_solves: usize,
    pub cuts_dropped: usize,
    pub discovered_slices: Vec<Vec<i64>>,
    pub pieces: Vec<PieceDto>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CarvedDto {
    pub k: usize,
    pub splits: usize,
    pub pieces: Vec<PieceDto>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RemovalDto {
    pub generator_id: usize,
    pub generator: PolytopeDto,
    pub polytope: PolytopeDto,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RegionDto {
    pub piece_id: usize,
    pub slice: Vec<i64>,
    pub base: PolytopeDto,
    pub removals: Vec<RemovalDto>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FrontDto {
    pub k: usize,
    pub regions: Vec<RegionDto>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OracleDto {
    pub k: usize,
    pub resolution: usize,
    pub points: Vec<Point>,
}

fn to_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("artifacts serialize");
    s.push('\n');
    s
}

pub fn candidates_to_json(c: &CandidateSet) -> String {
    to_string(&CandidatesDto {
        k: c.k,
        strategy: strategy_name(c.strategy).into(),
        slices_examined: c.stats.slices_examined,
        milp_solves: c.stats.milp_solves,
        cuts_dropped: c.stats.cuts_dropped,
        discovered_slices: c.discovered_slices.iter().map(|s| s.0.clone()).collect(),
        pieces: c.pieces.iter().map(PieceDto::from).collect(),
    })
}

pub fn candidates_from_json(text: &str) -> Result<CandidateSet, JsonError> {
    let d: CandidatesDto = serde_json::from_str(text)?;
    Ok(CandidateSet {
        k: d.k,
        pieces: pieces_from(d.pieces)?,
        strategy: strategy_from_name(&d.strategy).ok_or_else(|| invalid(format!("unknown strategy {}", d.strategy)))?,
        discovered_slices: d.discovered_slices.into_iter().map(Slice).collect::<BTreeSet<_>>(),
        stats: CollectStats {
            slices_examined: d.slices_examined,
            milp_solves: d.milp_solves,
            cuts_dropped: d.cuts_dropped,
        },
    })
}

pub fn carved_to_json(c: &CarvedSet) -> String {
    to_string(&CarvedDto {
        k: c.k,
        splits: c.splits,
        pieces: c.pieces.iter().map(PieceDto::from).collect(),
    })
}

pub fn carved_from_json(text: &str) -> Result<CarvedSet, JsonError> {
    let d: CarvedDto = serde_json::from_str(text)?;
    Ok(CarvedSet {
        k: d.k,
        pieces: pieces_from(d.pieces)?,
        splits: d.splits,
    })
}

pub fn front_to_json(f: &ParetoFront) -> String {
    to_string(&FrontDto {
        k: f.k,
        regions: f
            .regions
            .iter()
            .map(|r| RegionDto {
                piece_id: r.piece_id,
                slice: r.slice.0.clone(),
                base: (&r.base).into(),
                removals: r
                    .removals
                    .iter()
                    .map(|m| RemovalDto {
                        generator_id: m.generator_id,
                        generator: (&m.generator).into(),
                        polytope: (&m.polytope).into(),
                    })
                    .collect(),
            })
            .collect(),
    })
}

pub fn front_from_json(text: &str) -> Result<ParetoFront, JsonError> {
    let d: FrontDto = serde_json::from_str(text)?;
    let mut regions = Vec::with_capacity(d.regions.len());
    for r in d.regions {
        let mut removals = Vec::with_capacity(r.removals.len());
        for m in r.removals {
            removals.push(Removal {
                polytope: m.polytope.try_into()?,
                generator_id: m.generator_id,
                generator: m.generator.try_into()?,
            });
        }
        regions.push(ParetoRegion {
            base: r.base.try_into()?,
            removals,
            piece_id: r.piece_id,
            slice: Slice(r.slice),
        });
    }
    Ok(ParetoFront { k: d.k, regions })
}

pub fn oracle_to_json(o: &OracleFront) -> String {
    to_string(&OracleDto {
        k: o.k,
        resolution: o.resolution,
        points: o.points.iter().map(|p| point(p)).collect(),
    })
}

pub fn oracle_from_json(text: &str) -> Result<OracleFront, JsonError> {
    let d: OracleDto = serde_json::from_str(text)?;
    Ok(OracleFront {
        k: d.k,
        resolution: d.resolution,
        points: d.points.into_iter().map(unpoint).collect(),
    })
}
