//! Box geometry over the nonnegative orthant.
//!
//! A point `(a_1, …, a_d)` is identified with the axis-aligned box
//! `[0, a_1] × … × [0, a_d]` it spans from the origin, so "point" and "box"
//! are used interchangeably throughout the crate.

use crate::error::{Error, Result};

/// A point in nonnegative d-space, identified with the box it spans from the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    /// Validates that every coordinate is finite and nonnegative and that d >= 1.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyPoint);
        }
        for (index, &value) in coords.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidCoordinate { index, value });
            }
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Volume of the box the point spans from the origin.
    pub fn volume(&self) -> f64 {
        self.coords.iter().product()
    }

    /// Weak dominance: true iff `self_i >= other_i` in every dimension.
    /// A point weakly dominates itself.
    pub fn dominates(&self, other: &Point) -> Result<bool> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(dominates_coords(&self.coords, &other.coords))
    }
}

pub(crate) fn dominates_coords(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

/// Shared scan behind [`Front::find_dominated`], usable on raw rows.
pub(crate) fn find_dominated_by<'a>(n: usize, row: impl Fn(usize) -> &'a [f64]) -> Option<usize> {
    for j in 0..n {
        let bj = row(j);
        for i in 0..n {
            if i == j {
                continue;
            }
            let bi = row(i);
            if dominates_coords(bi, bj) && (bi != bj || i < j) {
                return Some(j);
            }
        }
    }
    None
}

/// Volume of the axis-aligned box `[lower, upper]`, with inverted intervals
/// clamping to zero.
pub fn box_volume(lower: &[f64], upper: &[f64]) -> f64 {
    debug_assert_eq!(lower.len(), upper.len());
    lower
        .iter()
        .zip(upper)
        .map(|(l, u)| (u - l).max(0.0))
        .product()
}

/// The minimal axis-aligned box enclosing the region uniquely dominated by one
/// point of a front. `upper` equals the owning point's coordinates. When the
/// owning point is weakly dominated the box is collapsed and has volume zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ContributionBox {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl ContributionBox {
    pub fn volume(&self) -> f64 {
        box_volume(&self.lower, &self.upper)
    }
}

/// An ordered set of points, all of one dimension. Indices `0..n-1` are stable
/// identifiers for the lifetime of the value.
#[derive(Debug, Clone, PartialEq)]
pub struct Front {
    points: Vec<Point>,
    dim: usize,
}

impl Front {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let dim = match points.first() {
            Some(p) => p.dim(),
            None => return Err(Error::EmptyFront),
        };
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
        }
        Ok(Self { points, dim })
    }

    /// Builds a front from raw coordinate rows.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let points = rows.into_iter().map(Point::new).collect::<Result<_>>()?;
        Self::new(points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, idx: usize) -> &Point {
        &self.points[idx]
    }

    fn check_index(&self, idx: usize) -> Result<()> {
        if idx >= self.len() {
            return Err(Error::IndexOutOfBounds {
                index: idx,
                len: self.len(),
            });
        }
        Ok(())
    }

    /// Smallest index weakly dominated by some other point, or `None` if the
    /// front is an antichain. For an exact duplicate pair only the larger
    /// index counts as dominated, so exactly one of the two is reported.
    pub fn find_dominated(&self) -> Option<usize> {
        find_dominated_by(self.len(), |i| self.points[i].coords())
    }

    /// Bounding box of the region uniquely dominated by point `idx`.
    ///
    /// `upper` is the point itself; `lower` starts at the origin and is cut in
    /// dimension `i` by every other point that dominates `idx` in all
    /// dimensions but `i`. A point that weakly dominates `idx` in every
    /// dimension collapses the box to volume zero. Runs in O(d·n).
    pub fn contribution_box(&self, idx: usize) -> Result<ContributionBox> {
        self.check_index(idx)?;
        let a = self.points[idx].coords();
        let mut lower = vec![0.0; self.dim];
        for (j, other) in self.points.iter().enumerate() {
            if j == idx {
                continue;
            }
            let b = other.coords();
            let mut below = None;
            let mut below_count = 0;
            for i in 0..self.dim {
                if b[i] < a[i] {
                    below = Some(i);
                    below_count += 1;
                    if below_count > 1 {
                        break;
                    }
                }
            }
            if below_count == 0 {
                // b weakly dominates a: the unique contribution is empty.
                return Ok(ContributionBox {
                    lower: a.to_vec(),
                    upper: a.to_vec(),
                });
            }
            if below_count == 1 {
                let i = below.unwrap();
                if b[i] > lower[i] {
                    lower[i] = b[i];
                }
            }
        }
        Ok(ContributionBox {
            lower,
            upper: a.to_vec(),
        })
    }

    /// Indices of the points that can dominate a point sampled inside `bb`,
    /// i.e. the points whose coordinates all strictly exceed `bb.lower`.
    ///
    /// Sorted by the volume of the part of `bb` they dominate, descending,
    /// with ties broken by ascending index. Equivalently these are exactly the
    /// other boxes whose intersection with `bb` has positive volume.
    pub fn influencers(&self, idx: usize, bb: &ContributionBox) -> Result<Vec<usize>> {
        self.check_index(idx)?;
        let mut entries: Vec<(usize, f64)> = Vec::new();
        for (j, other) in self.points.iter().enumerate() {
            if j == idx {
                continue;
            }
            let b = other.coords();
            if b.iter().zip(&bb.lower).all(|(bi, li)| bi > li) {
                let overlap: f64 = bb
                    .lower
                    .iter()
                    .zip(&bb.upper)
                    .zip(b)
                    .map(|((l, u), bi)| (bi.min(*u) - l).max(0.0))
                    .product();
                entries.push((j, overlap));
            }
        }
        entries.sort_by(|(i, vi), (j, vj)| vj.partial_cmp(vi).unwrap().then(i.cmp(j)));
        Ok(entries.into_iter().map(|(j, _)| j).collect())
    }
}
