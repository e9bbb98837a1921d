//! The Desarguesian plane PG(2, q) and its orthogonal polarity graph.
//!
//! The polarity is realized by the identity form `x0*y0 + x1*y1 + x2*y2`:
//! point `p` is adjacent to `r` when `r` lies on the polar line of `p`.
//! Absolute points (those on their own polar) would carry loops in the looped
//! model; the stored graph drops them.

use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::graph::Graph;

/// Homogeneous coordinates, normalized so the first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: [FieldElem; 3],
}

impl ProjPoint {
    /// Normalizes a nonzero vector of `F_q^3`; returns `None` for the zero vector.
    pub fn new(field: &FieldSpec, x0: FieldElem, x1: FieldElem, x2: FieldElem) -> Option<Self> {
        let coords = [x0, x1, x2];
        let lead = coords.iter().find(|c| !c.is_zero())?;
        let scale = field.inv(lead).expect("leading coordinate is nonzero");
        Some(ProjPoint {
            coords: coords.map(|c| field.mul(&c, &scale)),
        })
    }

    pub fn coords(&self) -> &[FieldElem; 3] {
        &self.coords
    }
}

#[derive(Debug, Clone)]
pub struct PolarityGraphBundle {
    pub field: FieldSpec,
    /// Vertex order of `simple_graph`.
    pub points: Vec<ProjPoint>,
    pub simple_graph: Graph,
    pub absolute_indices: Vec<usize>,
    pub looped_degree: usize,
}

impl PolarityGraphBundle {
    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn is_absolute(&self, v: usize) -> bool {
        self.absolute_indices.binary_search(&v).is_ok()
    }
}

/// `(1, a, b)` for all `a, b`; then `(0, 1, c)`; then `(0, 0, 1)`.
pub fn enumerate_points(field: &FieldSpec) -> Vec<ProjPoint> {
    let elems = field.enumerate_elements();
    let (zero, one) = (field.zero(), field.one());
    let q = elems.len();
    let mut points = Vec::with_capacity(q * q + q + 1);
    for a in &elems {
        for b in &elems {
            points.push(ProjPoint {
                coords: [one.clone(), a.clone(), b.clone()],
            });
        }
    }
    for c in &elems {
        points.push(ProjPoint {
            coords: [zero.clone(), one.clone(), c.clone()],
        });
    }
    points.push(ProjPoint {
        coords: [zero.clone(), zero, one],
    });
    points
}

pub fn form(field: &FieldSpec, p: &ProjPoint, r: &ProjPoint) -> FieldElem {
    p.coords
        .iter()
        .zip(&r.coords)
        .fold(field.zero(), |acc, (x, y)| field.add(&acc, &field.mul(x, y)))
}

fn absolute_in(field: &FieldSpec, points: &[ProjPoint]) -> Result<Vec<usize>> {
    let abs: Vec<usize> = points
        .iter()
        .enumerate()
        .filter(|(_, p)| form(field, p, p).is_zero())
        .map(|(i, _)| i)
        .collect();
    let expected = field.q() as usize + 1;
    if abs.len() != expected {
        return Err(Error::PolarityDegenerate {
            expected,
            found: abs.len(),
        });
    }
    Ok(abs)
}

/// Indices (in point enumeration order) of the self-orthogonal points.
pub fn absolute_points(field: &FieldSpec) -> Result<Vec<usize>> {
    absolute_in(field, &enumerate_points(field))
}

/// Indices of the points on the polar line of `p`.
pub fn polar_line(field: &FieldSpec, points: &[ProjPoint], p: &ProjPoint) -> Vec<usize> {
    points
        .iter()
        .enumerate()
        .filter(|(_, r)| form(field, p, r).is_zero())
        .map(|(i, _)| i)
        .collect()
}

pub fn build_er_graph(field: &FieldSpec) -> Result<PolarityGraphBundle> {
    let points = enumerate_points(field);
    let absolute_indices = absolute_in(field, &points)?;
    let simple_graph = Graph::from_fn(points.len(), |i, j| form(field, &points[i], &points[j]).is_zero());
    Ok(PolarityGraphBundle {
        field: field.clone(),
        points,
        simple_graph,
        absolute_indices,
        looped_degree: field.q() as usize + 1,
    })
}

/// Convenience: `build_er_graph(make_field(q))`.
pub fn er_graph(q: u64) -> Result<PolarityGraphBundle> {
    build_er_graph(&crate::field::make_field(q)?)
}
