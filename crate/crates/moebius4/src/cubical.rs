//! Finite subcomplexes of the 2-skeleton of the unit cubulation of R^4,
//! and their barycentric subdivisions.
//!
//! Cells are identified by their lexicographically minimal vertex (the
//! anchor) plus the set of coordinate axes they extend along; this canonical
//! form gives cheap set semantics. All barycenters live in (1/2)Z^4, so
//! positions are stored doubled as integer 4-vectors and exposed as exact
//! rationals in original units.

use crate::rat::{rat, Vec4};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CubicalError {
    #[error("axis {0} out of range (must be 0..=3)")]
    BadAxis(usize),
    #[error("duplicate axis {0}")]
    DuplicateAxis(usize),
    #[error("cell {0} is not a square (dimension {1})")]
    NotASquare(CubicalCell, usize),
    #[error("cell with {0} axes exceeds dimension 2")]
    TooManyAxes(usize),
}

/// A vertex, edge, or square of the unit cubulation, in canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubicalCell {
    anchor: [i64; 4],
    axes_mask: u8,
}

impl CubicalCell {
    pub fn new(anchor: [i64; 4], axes: &[usize]) -> Result<Self, CubicalError> {
        if axes.len() > 2 {
            return Err(CubicalError::TooManyAxes(axes.len()));
        }
        let mut mask = 0u8;
        for &a in axes {
            if a > 3 {
                return Err(CubicalError::BadAxis(a));
            }
            if mask & (1 << a) != 0 {
                return Err(CubicalError::DuplicateAxis(a));
            }
            mask |= 1 << a;
        }
        Ok(CubicalCell {
            anchor,
            axes_mask: mask,
        })
    }

    pub fn vertex(anchor: [i64; 4]) -> Self {
        CubicalCell {
            anchor,
            axes_mask: 0,
        }
    }

    pub fn edge(anchor: [i64; 4], axis: usize) -> Self {
        Self::new(anchor, &[axis]).expect("valid edge axis")
    }

    pub fn square(anchor: [i64; 4], axis_a: usize, axis_b: usize) -> Self {
        Self::new(anchor, &[axis_a, axis_b]).expect("valid square axes")
    }

    pub fn anchor(&self) -> [i64; 4] {
        self.anchor
    }

    pub fn axes(&self) -> Vec<usize> {
        (0..4).filter(|a| self.axes_mask & (1 << a) != 0).collect()
    }

    pub fn dim(&self) -> usize {
        self.axes_mask.count_ones() as usize
    }

    /// All faces of this cell, including itself: 1 for a vertex, 3 for an
    /// edge, 9 for a square.
    pub fn closure(&self) -> Vec<CubicalCell> {
        let axes = self.axes();
        let mut out = Vec::new();
        // every subset of the axes, with every 0/1 offset on the dropped axes
        for sub in 0..(1u8 << axes.len()) {
            let mut kept = 0u8;
            let mut dropped = Vec::new();
            for (bit, &a) in axes.iter().enumerate() {
                if sub & (1 << bit) != 0 {
                    kept |= 1 << a;
                } else {
                    dropped.push(a);
                }
            }
            for offsets in 0..(1u32 << dropped.len()) {
                let mut anchor = self.anchor;
                for (i, &a) in dropped.iter().enumerate() {
                    if offsets & (1 << i) != 0 {
                        anchor[a] += 1;
                    }
                }
                out.push(CubicalCell {
                    anchor,
                    axes_mask: kept,
                });
            }
        }
        out
    }

    pub fn proper_faces(&self) -> Vec<CubicalCell> {
        self.closure().into_iter().filter(|f| f != self).collect()
    }

    /// True iff `self` is a face of `other` (possibly equal).
    pub fn is_face_of(&self, other: &CubicalCell) -> bool {
        if self.axes_mask & !other.axes_mask != 0 {
            return false;
        }
        for a in 0..4 {
            let da = self.anchor[a] - other.anchor[a];
            if self.axes_mask & (1 << a) != 0 || other.axes_mask & (1 << a) == 0 {
                if da != 0 {
                    return false;
                }
            } else if da != 0 && da != 1 {
                return false;
            }
        }
        true
    }

    /// Barycenter in doubled coordinates (exact integers).
    pub fn barycenter_doubled(&self) -> [i64; 4] {
        let mut b = self.anchor.map(|x| 2 * x);
        for a in 0..4 {
            if self.axes_mask & (1 << a) != 0 {
                b[a] += 1;
            }
        }
        b
    }

    /// Barycenter in original units.
    pub fn barycenter(&self) -> Vec4 {
        self.barycenter_doubled().map(|x| rat(x, 2))
    }
}

impl fmt::Display for CubicalCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cell(anchor=({},{},{},{}), axes={:?})",
            self.anchor[0], self.anchor[1], self.anchor[2], self.anchor[3],
            self.axes()
        )
    }
}

/// JSON form of a cell: `{"anchor":[a,b,c,d],"axes":[i,j]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellJson {
    pub anchor: [i64; 4],
    pub axes: Vec<usize>,
}

impl CellJson {
    pub fn to_cell(&self) -> Result<CubicalCell, CubicalError> {
        CubicalCell::new(self.anchor, &self.axes)
    }

    pub fn from_cell(cell: &CubicalCell) -> Self {
        CellJson {
            anchor: cell.anchor(),
            axes: cell.axes(),
        }
    }
}

/// A face-closed finite set of vertices, edges, and squares.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CubicalComplex2 {
    cells: BTreeSet<CubicalCell>,
}

impl CubicalComplex2 {
    /// Face closure of a set of squares. Rejects non-square cells; duplicate
    /// squares are silently deduplicated.
    pub fn build_complex(squares: &[CubicalCell]) -> Result<Self, CubicalError> {
        for sq in squares {
            if sq.dim() != 2 {
                return Err(CubicalError::NotASquare(*sq, sq.dim()));
            }
        }
        Ok(Self::from_cells(squares.iter().copied()))
    }

    /// Face closure of arbitrary cells (any dimension 0..=2).
    pub fn from_cells(cells: impl IntoIterator<Item = CubicalCell>) -> Self {
        let mut set = BTreeSet::new();
        for cell in cells {
            for face in cell.closure() {
                set.insert(face);
            }
        }
        CubicalComplex2 { cells: set }
    }

    pub fn cells(&self) -> impl Iterator<Item = &CubicalCell> {
        self.cells.iter()
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn contains(&self, cell: &CubicalCell) -> bool {
        self.cells.contains(cell)
    }

    pub fn cells_of_dim(&self, dim: usize) -> impl Iterator<Item = &CubicalCell> {
        self.cells.iter().filter(move |c| c.dim() == dim)
    }

    pub fn squares(&self) -> impl Iterator<Item = &CubicalCell> {
        self.cells_of_dim(2)
    }

    pub fn edges(&self) -> impl Iterator<Item = &CubicalCell> {
        self.cells_of_dim(1)
    }

    pub fn vertices(&self) -> impl Iterator<Item = &CubicalCell> {
        self.cells_of_dim(0)
    }

    /// (vertex, edge, square) counts.
    pub fn census(&self) -> (usize, usize, usize) {
        let mut counts = [0usize; 3];
        for c in &self.cells {
            counts[c.dim()] += 1;
        }
        (counts[0], counts[1], counts[2])
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// True iff every vertex of the complex is a face of some square.
    pub fn check_vertex_condition(&self) -> bool {
        self.vertex_condition_failures().is_empty()
    }

    /// Vertices that belong to no square, in canonical order.
    pub fn vertex_condition_failures(&self) -> Vec<CubicalCell> {
        let mut in_square: BTreeSet<CubicalCell> = BTreeSet::new();
        for sq in self.squares() {
            for face in sq.closure() {
                if face.dim() == 0 {
                    in_square.insert(face);
                }
            }
        }
        self.vertices()
            .filter(|v| !in_square.contains(v))
            .copied()
            .collect()
    }

    pub fn is_subcomplex_of(&self, other: &CubicalComplex2) -> bool {
        self.cells.iter().all(|c| other.contains(c))
    }

    /// Barycentric subdivision: one vertex per cell (at its barycenter),
    /// one simplex per chain of distinct cells ordered by strict face
    /// inclusion. Each square contributes 8 triangles, each edge 2 segments.
    pub fn barycentric_subdivision(&self) -> SimplicialComplex {
        let ids: BTreeMap<CubicalCell, u32> = self
            .cells
            .iter()
            .enumerate()
            .map(|(i, c)| (*c, i as u32))
            .collect();
        let vertices: Vec<[i64; 4]> = self.cells.iter().map(|c| c.barycenter_doubled()).collect();
        let mut simplices: BTreeSet<Vec<u32>> = BTreeSet::new();
        for cell in &self.cells {
            let top = ids[cell];
            simplices.insert(vec![top]);
            for face in cell.proper_faces() {
                let mid = ids[&face];
                simplices.insert(sorted(vec![mid, top]));
                if face.dim() == 1 && cell.dim() == 2 {
                    for v in face.proper_faces() {
                        let low = ids[&v];
                        simplices.insert(sorted(vec![low, mid, top]));
                    }
                }
            }
        }
        SimplicialComplex::new_closed(vertices, simplices)
    }

    /// The 24 squares of a unit 4-cube anchored at the origin, closed under
    /// faces: 16 vertices, 32 edges, 24 squares.
    pub fn unit_4cube_2_skeleton() -> Self {
        let mut squares = Vec::new();
        for a in 0..4usize {
            for b in (a + 1)..4 {
                let others: Vec<usize> = (0..4).filter(|&i| i != a && i != b).collect();
                for off in 0..4u32 {
                    let mut anchor = [0i64; 4];
                    anchor[others[0]] = (off & 1) as i64;
                    anchor[others[1]] = ((off >> 1) & 1) as i64;
                    squares.push(CubicalCell::square(anchor, a, b));
                }
            }
        }
        CubicalComplex2::build_complex(&squares).expect("squares are squares")
    }

    /// Parse from JSON: either a bare array of squares or an object with a
    /// `squares` field.
    pub fn from_json_str(s: &str) -> Result<Self, ComplexJsonError> {
        let squares: Vec<CellJson> = match serde_json::from_str::<serde_json::Value>(s) {
            Ok(serde_json::Value::Array(_)) => {
                serde_json::from_str(s).map_err(ComplexJsonError::Json)?
            }
            Ok(serde_json::Value::Object(_)) => {
                #[derive(Deserialize)]
                struct Wrapper {
                    squares: Vec<CellJson>,
                }
                let w: Wrapper = serde_json::from_str(s).map_err(ComplexJsonError::Json)?;
                w.squares
            }
            Ok(other) => {
                return Err(ComplexJsonError::BadShape(format!(
                    "expected array or object, got {other}"
                )))
            }
            Err(e) => return Err(ComplexJsonError::Json(e)),
        };
        let cells: Vec<CubicalCell> = squares
            .iter()
            .map(|c| c.to_cell())
            .collect::<Result<_, _>>()
            .map_err(ComplexJsonError::Cell)?;
        CubicalComplex2::build_complex(&cells).map_err(ComplexJsonError::Cell)
    }

    /// Emit the complex in the input schema plus its computed faces.
    pub fn to_json_value(&self) -> serde_json::Value {
        let by_dim = |d: usize| -> Vec<CellJson> {
            self.cells_of_dim(d).map(CellJson::from_cell).collect()
        };
        serde_json::json!({
            "squares": by_dim(2),
            "edges": by_dim(1),
            "vertices": by_dim(0),
            "vertex_condition": self.check_vertex_condition(),
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ComplexJsonError {
    #[error("complex JSON parse error: {0}")]
    Json(serde_json::Error),
    #[error("invalid cell in complex: {0}")]
    Cell(CubicalError),
    #[error("complex JSON has wrong shape: {0}")]
    BadShape(String),
}

fn sorted(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v.dedup();
    v
}

/// Abstract finite simplicial complex with geometric vertex positions.
/// Positions are stored in doubled coordinates (all complexes built here
/// have barycenter vertices in (1/2)Z^4).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    positions2: Vec<[i64; 4]>,
    simplices: BTreeSet<Vec<u32>>,
}

impl SimplicialComplex {
    /// Build from vertex positions and a set of simplices, adding all faces.
    pub fn from_simplices(
        positions2: Vec<[i64; 4]>,
        simplices: impl IntoIterator<Item = Vec<u32>>,
    ) -> Self {
        let mut set: BTreeSet<Vec<u32>> = BTreeSet::new();
        for s in simplices {
            let s = sorted(s);
            assert!(
                s.iter().all(|&v| (v as usize) < positions2.len()),
                "simplex vertex id out of range"
            );
            for sub in 1u32..(1 << s.len()) {
                let face: Vec<u32> = s
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| sub & (1 << i) != 0)
                    .map(|(_, &v)| v)
                    .collect();
                set.insert(face);
            }
        }
        SimplicialComplex {
            positions2,
            simplices: set,
        }
    }

    fn new_closed(positions2: Vec<[i64; 4]>, simplices: BTreeSet<Vec<u32>>) -> Self {
        let c = SimplicialComplex {
            positions2,
            simplices,
        };
        debug_assert!(c.is_downward_closed());
        c
    }

    pub fn vertex_count(&self) -> usize {
        self.positions2.len()
    }

    pub fn position_doubled(&self, id: u32) -> [i64; 4] {
        self.positions2[id as usize]
    }

    /// Vertex position in original units.
    pub fn position(&self, id: u32) -> Vec4 {
        self.positions2[id as usize].map(|x| rat(x, 2))
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.simplices.iter()
    }

    pub fn simplices_of_dim(&self, dim: usize) -> impl Iterator<Item = &Vec<u32>> {
        self.simplices.iter().filter(move |s| s.len() == dim + 1)
    }

    pub fn contains_simplex(&self, s: &[u32]) -> bool {
        self.simplices.contains(&sorted(s.to_vec()))
    }

    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.len() - 1).max()
    }

    /// Counts per dimension, `f_vector()[k]` = number of k-simplices.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = Vec::new();
        for s in &self.simplices {
            let d = s.len() - 1;
            if f.len() <= d {
                f.resize(d + 1, 0);
            }
            f[d] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn is_downward_closed(&self) -> bool {
        self.simplices.iter().all(|s| {
            s.len() == 1
                || s.iter().all(|&v| {
                    let mut face = s.clone();
                    face.retain(|&w| w != v);
                    self.simplices.contains(&face)
                })
        })
    }

    /// Simplices not properly contained in another simplex.
    pub fn maximal_simplices(&self) -> Vec<&Vec<u32>> {
        self.simplices
            .iter()
            .filter(|s| {
                !self
                    .simplices
                    .iter()
                    .any(|t| t.len() == s.len() + 1 && s.iter().all(|v| t.contains(v)))
            })
            .collect()
    }

    /// Subcomplex induced on a subset of vertices; ids are renumbered in
    /// increasing order of the old ids.
    pub fn induced_subcomplex(&self, keep: &BTreeSet<u32>) -> SimplicialComplex {
        let old_ids: Vec<u32> = keep.iter().copied().collect();
        let new_id: BTreeMap<u32, u32> = old_ids
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as u32))
            .collect();
        let positions2 = old_ids
            .iter()
            .map(|&v| self.positions2[v as usize])
            .collect();
        let simplices = self
            .simplices
            .iter()
            .filter(|s| s.iter().all(|v| keep.contains(v)))
            .map(|s| s.iter().map(|v| new_id[v]).collect())
            .collect();
        SimplicialComplex::new_closed(positions2, simplices)
    }

    /// Look up a vertex id by doubled position.
    pub fn vertex_at(&self, pos2: [i64; 4]) -> Option<u32> {
        self.positions2
            .iter()
            .position(|&p| p == pos2)
            .map(|i| i as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> CubicalCell {
        CubicalCell::square([0, 0, 0, 0], 0, 1)
    }

    #[test]
    fn cell_validation() {
        assert!(CubicalCell::new([0; 4], &[0, 1]).is_ok());
        assert!(matches!(
            CubicalCell::new([0; 4], &[0, 4]),
            Err(CubicalError::BadAxis(4))
        ));
        assert!(matches!(
            CubicalCell::new([0; 4], &[1, 1]),
            Err(CubicalError::DuplicateAxis(1))
        ));
        assert!(matches!(
            CubicalCell::new([0; 4], &[0, 1, 2]),
            Err(CubicalError::TooManyAxes(3))
        ));
    }

    #[test]
    fn square_closure_has_nine_cells() {
        let closure = unit_square().closure();
        assert_eq!(closure.len(), 9);
        let dims: Vec<usize> = closure.iter().map(|c| c.dim()).collect();
        assert_eq!(dims.iter().filter(|&&d| d == 0).count(), 4);
        assert_eq!(dims.iter().filter(|&&d| d == 1).count(), 4);
        assert_eq!(dims.iter().filter(|&&d| d == 2).count(), 1);
    }

    #[test]
    fn face_predicate_matches_closure() {
        let sq = unit_square();
        for f in sq.closure() {
            assert!(f.is_face_of(&sq), "{f} should be a face");
        }
        let far_vertex = CubicalCell::vertex([2, 0, 0, 0]);
        assert!(!far_vertex.is_face_of(&sq));
        let other_axis_edge = CubicalCell::edge([0, 0, 0, 0], 2);
        assert!(!other_axis_edge.is_face_of(&sq));
        // a square is never a face of an edge
        assert!(!sq.is_face_of(&CubicalCell::edge([0, 0, 0, 0], 0)));
    }

    #[test]
    fn build_complex_single_square() {
        let k = CubicalComplex2::build_complex(&[unit_square()]).unwrap();
        assert_eq!(k.census(), (4, 4, 1));
    }

    #[test]
    fn build_complex_empty() {
        let k = CubicalComplex2::build_complex(&[]).unwrap();
        assert!(k.is_empty());
        assert!(k.check_vertex_condition());
    }

    #[test]
    fn build_complex_two_squares_sharing_edge() {
        // expected census derived by enumerating the faces of both squares
        // by hand: the shared edge (anchor 0, axis 0) and its two endpoints
        // are counted once.
        let k = CubicalComplex2::build_complex(&[
            CubicalCell::square([0, 0, 0, 0], 0, 1),
            CubicalCell::square([0, 0, 0, 0], 0, 2),
        ])
        .unwrap();
        assert_eq!(k.census(), (6, 7, 2));
    }

    #[test]
    fn build_complex_rejects_non_square() {
        let e = CubicalCell::edge([0; 4], 1);
        assert!(matches!(
            CubicalComplex2::build_complex(&[e]),
            Err(CubicalError::NotASquare(_, 1))
        ));
    }

    #[test]
    fn build_complex_dedupes_squares() {
        let k = CubicalComplex2::build_complex(&[unit_square(), unit_square()]).unwrap();
        assert_eq!(k.census(), (4, 4, 1));
    }

    #[test]
    fn vertex_condition() {
        let one_square = CubicalComplex2::build_complex(&[unit_square()]).unwrap();
        assert!(one_square.check_vertex_condition());

        let with_dangling_edge = CubicalComplex2::from_cells([
            unit_square(),
            CubicalCell::edge([5, 0, 0, 0], 0),
        ]);
        assert!(!with_dangling_edge.check_vertex_condition());
        let failures = with_dangling_edge.vertex_condition_failures();
        assert_eq!(
            failures,
            vec![
                CubicalCell::vertex([5, 0, 0, 0]),
                CubicalCell::vertex([6, 0, 0, 0])
            ]
        );

        assert!(CubicalComplex2::default().check_vertex_condition());
    }

    #[test]
    fn subdivision_single_square() {
        let k = CubicalComplex2::build_complex(&[unit_square()]).unwrap();
        let b = k.barycentric_subdivision();
        assert_eq!(b.f_vector(), vec![9, 16, 8]);
        assert_eq!(b.euler_characteristic(), 1);
        assert!(b.is_downward_closed());
    }

    #[test]
    fn subdivision_single_edge() {
        let k = CubicalComplex2::from_cells([CubicalCell::edge([0; 4], 3)]);
        let b = k.barycentric_subdivision();
        assert_eq!(b.f_vector(), vec![3, 2]);
        // midpoint of the edge sits at doubled coordinate 1 on axis 3
        assert!(b.vertex_at([0, 0, 0, 1]).is_some());
    }

    #[test]
    fn subdivision_empty() {
        let b = CubicalComplex2::default().barycentric_subdivision();
        assert!(b.is_empty());
        assert_eq!(b.vertex_count(), 0);
    }

    #[test]
    fn subdivision_maximal_simplex_count() {
        // 8 per square plus 2 per edge not contained in a square
        let k = CubicalComplex2::from_cells([
            unit_square(),
            CubicalCell::edge([7, 0, 0, 0], 1),
        ]);
        let b = k.barycentric_subdivision();
        assert_eq!(b.maximal_simplices().len(), 8 + 2);
    }

    #[test]
    fn subdivision_simplices_are_flags() {
        let k = CubicalComplex2::build_complex(&[
            CubicalCell::square([0, 0, 0, 0], 0, 1),
            CubicalCell::square([0, 0, 0, 0], 2, 3),
            CubicalCell::square([1, 1, 0, 0], 0, 1),
        ])
        .unwrap();
        let cells: Vec<CubicalCell> = k.cells().copied().collect();
        let b = k.barycentric_subdivision();
        for s in b.simplices() {
            // reconstruct the chain of cells from barycenter positions
            let mut chain: Vec<CubicalCell> = s
                .iter()
                .map(|&v| {
                    *cells
                        .iter()
                        .find(|c| c.barycenter_doubled() == b.position_doubled(v))
                        .expect("vertex is a cell barycenter")
                })
                .collect();
            chain.sort_by_key(|c| c.dim());
            for pair in chain.windows(2) {
                assert!(pair[0] != pair[1]);
                assert!(pair[0].is_face_of(&pair[1]), "chain must be a flag");
            }
        }
    }

    #[test]
    fn subdivision_functorial_on_inclusions() {
        let big = CubicalComplex2::build_complex(&[
            CubicalCell::square([0, 0, 0, 0], 0, 1),
            CubicalCell::square([0, 0, 0, 0], 0, 2),
            CubicalCell::square([1, 0, 0, 0], 1, 3),
        ])
        .unwrap();
        let small = CubicalComplex2::build_complex(&[CubicalCell::square([0, 0, 0, 0], 0, 1)])
            .unwrap();
        assert!(small.is_subcomplex_of(&big));

        let beta_big = big.barycentric_subdivision();
        let beta_small = small.barycentric_subdivision();
        let keep: BTreeSet<u32> = small
            .cells()
            .map(|c| beta_big.vertex_at(c.barycenter_doubled()).unwrap())
            .collect();
        let induced = beta_big.induced_subcomplex(&keep);
        assert_eq!(induced, beta_small);
    }

    #[test]
    fn four_cube_skeleton_census() {
        let k = CubicalComplex2::unit_4cube_2_skeleton();
        assert_eq!(k.census(), (16, 32, 24));
        assert!(k.check_vertex_condition());
    }

    #[test]
    fn complex_json_round_trip() {
        let k = CubicalComplex2::build_complex(&[
            unit_square(),
            CubicalCell::square([0, 0, 0, 0], 2, 3),
        ])
        .unwrap();
        let v = k.to_json_value();
        let parsed = CubicalComplex2::from_json_str(&v.to_string()).unwrap();
        assert_eq!(parsed, k);

        // bare array form is accepted too
        let bare = r#"[{"anchor":[0,0,0,0],"axes":[0,1]}]"#;
        let parsed = CubicalComplex2::from_json_str(bare).unwrap();
        assert_eq!(parsed.census(), (4, 4, 1));
    }

    #[test]
    fn complex_json_rejects_bad_input() {
        assert!(CubicalComplex2::from_json_str("3").is_err());
        assert!(CubicalComplex2::from_json_str(r#"[{"anchor":[0,0,0,0],"axes":[0]}]"#).is_err());
        assert!(CubicalComplex2::from_json_str(r#"[{"anchor":[0,0],"axes":[0,1]}]"#).is_err());
    }
}
