//! Partial bijections of a finite set `0..m`.
//!
//! Composition follows the convention of applying the right factor first:
//! `(f * g)(x) = f(g(x))`, defined where both steps are. Under this
//! convention `f * f^-1` is the identity on the range of `f`.

use std::fmt;

use thiserror::Error;

use crate::semigroup::Semilattice;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PbijError {
    #[error("image list has length {len}, expected {m}")]
    BadLength { m: usize, len: usize },
    #[error("image of {point} is {value}, out of range for ground size {m}")]
    OutOfRange { point: usize, value: usize, m: usize },
    #[error("points {p1} and {p2} both map to {image}")]
    NotInjective { p1: usize, p2: usize, image: usize },
    #[error("ground sizes differ: {left} vs {right}")]
    GroundMismatch { left: usize, right: usize },
}

/// Why a family of partial bijections has no common upper bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JoinConflict {
    /// Two members disagree on the image of a point.
    TwoImages {
        point: usize,
        first: usize,
        second: usize,
    },
    /// The union of graphs maps two points to the same image.
    InjectivityBreach { p1: usize, p2: usize, image: usize },
}

impl fmt::Display for JoinConflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JoinConflict::TwoImages {
                point,
                first,
                second,
            } => write!(f, "point {point} sent to both {first} and {second}"),
            JoinConflict::InjectivityBreach { p1, p2, image } => {
                write!(f, "points {p1} and {p2} both sent to {image}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JoinError {
    #[error("ground sizes differ: {left} vs {right}")]
    GroundMismatch { left: usize, right: usize },
    #[error("join does not exist: {0}")]
    Conflict(JoinConflict),
}

/// A partial bijection on `0..m`, stored as the image of each point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialBijection {
    m: usize,
    img: Vec<Option<usize>>,
}

impl PartialBijection {
    pub fn new(m: usize, img: Vec<Option<usize>>) -> Result<Self, PbijError> {
        if img.len() != m {
            return Err(PbijError::BadLength { m, len: img.len() });
        }
        for (point, &v) in img.iter().enumerate() {
            if let Some(value) = v {
                if value >= m {
                    return Err(PbijError::OutOfRange { point, value, m });
                }
            }
        }
        let mut seen = vec![None; m];
        for (p, &v) in img.iter().enumerate() {
            if let Some(image) = v {
                if let Some(p1) = seen[image] {
                    return Err(PbijError::NotInjective { p1, p2: p, image });
                }
                seen[image] = Some(p);
            }
        }
        Ok(PartialBijection { m, img })
    }

    pub fn empty(m: usize) -> Self {
        PartialBijection {
            m,
            img: vec![None; m],
        }
    }

    pub fn identity(m: usize) -> Self {
        PartialBijection {
            m,
            img: (0..m).map(Some).collect(),
        }
    }

    /// Identity restricted to the given points.
    pub fn identity_on(m: usize, points: &[usize]) -> Self {
        let mut img = vec![None; m];
        for &p in points {
            assert!(p < m, "point out of range");
            img[p] = Some(p);
        }
        PartialBijection { m, img }
    }

    pub fn ground_size(&self) -> usize {
        self.m
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.img[x]
    }

    pub fn defined_at(&self, x: usize) -> bool {
        self.img[x].is_some()
    }

    /// Domain in ascending order.
    pub fn dom(&self) -> Vec<usize> {
        (0..self.m).filter(|&x| self.defined_at(x)).collect()
    }

    /// Range in ascending order.
    pub fn ran(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.img.iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }

    pub fn ran_contains(&self, y: usize) -> bool {
        self.img.contains(&Some(y))
    }

    pub fn defined_count(&self) -> usize {
        self.img.iter().filter(|v| v.is_some()).count()
    }

    pub fn is_partial_identity(&self) -> bool {
        self.img
            .iter()
            .enumerate()
            .all(|(x, &v)| v.is_none() || v == Some(x))
    }

    pub fn inverse(&self) -> Self {
        let mut img = vec![None; self.m];
        for (x, &v) in self.img.iter().enumerate() {
            if let Some(y) = v {
                img[y] = Some(x);
            }
        }
        PartialBijection { m: self.m, img }
    }

    /// `self * other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self, PbijError> {
        if self.m != other.m {
            return Err(PbijError::GroundMismatch {
                left: self.m,
                right: other.m,
            });
        }
        let img = (0..self.m)
            .map(|x| other.apply(x).and_then(|y| self.apply(y)))
            .collect();
        Ok(PartialBijection { m: self.m, img })
    }

    /// Restriction order: self is a restriction of other.
    pub fn leq(&self, other: &Self) -> Result<bool, PbijError> {
        if self.m != other.m {
            return Err(PbijError::GroundMismatch {
                left: self.m,
                right: other.m,
            });
        }
        Ok(self
            .img
            .iter()
            .enumerate()
            .all(|(x, &v)| v.is_none() || v == other.apply(x)))
    }

    /// Least common extension of a family, when the union of graphs is still
    /// a partial bijection.
    pub fn join(m: usize, parts: &[&PartialBijection]) -> Result<Self, JoinError> {
        let mut img: Vec<Option<usize>> = vec![None; m];
        let mut preimage: Vec<Option<usize>> = vec![None; m];
        for part in parts {
            if part.m != m {
                return Err(JoinError::GroundMismatch {
                    left: m,
                    right: part.m,
                });
            }
            for (point, &v) in part.img.iter().enumerate() {
                let Some(image) = v else { continue };
                match img[point] {
                    Some(first) if first != image => {
                        return Err(JoinError::Conflict(JoinConflict::TwoImages {
                            point,
                            first,
                            second: image,
                        }));
                    }
                    Some(_) => continue,
                    None => {
                        if let Some(p1) = preimage[image] {
                            return Err(JoinError::Conflict(JoinConflict::InjectivityBreach {
                                p1,
                                p2: point,
                                image,
                            }));
                        }
                        img[point] = Some(image);
                        preimage[image] = Some(point);
                    }
                }
            }
        }
        Ok(PartialBijection { m, img })
    }

    /// Whether this map is an order isomorphism between two order ideals of
    /// the semilattice: domain and range closed downward, and the map and
    /// its inverse both monotone.
    pub fn is_ideal_isomorphism(&self, sl: &Semilattice) -> bool {
        assert_eq!(self.m, sl.size(), "ground must match the semilattice");
        let dom = self.dom();
        let ran = self.ran();
        if !sl.is_order_ideal(&dom) || !sl.is_order_ideal(&ran) {
            return false;
        }
        for &x in &dom {
            for &y in &dom {
                let (fx, fy) = (self.img[x].unwrap(), self.img[y].unwrap());
                if sl.le(x, y) != sl.le(fx, fy) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .img
            .iter()
            .enumerate()
            .filter_map(|(x, &v)| v.map(|y| format!("{x}>{y}")))
            .collect();
        write!(f, "({})", pairs.join(","))
    }
}

/// Every partial bijection on `0..m`, in a fixed depth-first order: the
/// image of point 0 varies slowest, with `None` before increasing images.
pub fn all_partial_bijections(m: usize) -> Vec<PartialBijection> {
    let mut out = Vec::new();
    let mut img: Vec<Option<usize>> = vec![None; m];
    let mut used = vec![false; m];
    fn rec(
        point: usize,
        m: usize,
        img: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        out: &mut Vec<PartialBijection>,
    ) {
        if point == m {
            out.push(PartialBijection {
                m,
                img: img.clone(),
            });
            return;
        }
        img[point] = None;
        rec(point + 1, m, img, used, out);
        for y in 0..m {
            if !used[y] {
                img[point] = Some(y);
                used[y] = true;
                rec(point + 1, m, img, used, out);
                used[y] = false;
                img[point] = None;
            }
        }
    }
    rec(0, m, &mut img, &mut used, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::Semilattice;

    fn v_lattice() -> Semilattice {
        let table = vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]];
        Semilattice::from_meet_table(&table, None).unwrap()
    }

    #[test]
    fn validation_rejects_bad_maps() {
        assert_eq!(
            PartialBijection::new(2, vec![Some(0)]).unwrap_err(),
            PbijError::BadLength { m: 2, len: 1 }
        );
        assert_eq!(
            PartialBijection::new(2, vec![Some(2), None]).unwrap_err(),
            PbijError::OutOfRange {
                point: 0,
                value: 2,
                m: 2
            }
        );
        assert_eq!(
            PartialBijection::new(2, vec![Some(0), Some(0)]).unwrap_err(),
            PbijError::NotInjective {
                p1: 0,
                p2: 1,
                image: 0
            }
        );
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let f = PartialBijection::new(3, vec![Some(1), None, None]).unwrap();
        let g = PartialBijection::new(3, vec![None, None, Some(0)]).unwrap();
        let fg = f.compose(&g).unwrap();
        assert_eq!(fg, PartialBijection::new(3, vec![None, None, Some(1)]).unwrap());
        let id = PartialBijection::identity(3);
        assert_eq!(id.compose(&f).unwrap(), f);
        assert_eq!(f.compose(&id).unwrap(), f);
    }

    #[test]
    fn self_times_inverse_is_identity_on_range() {
        let f = PartialBijection::new(4, vec![Some(2), Some(3), None, None]).unwrap();
        let finv = f.inverse();
        assert_eq!(
            f.compose(&finv).unwrap(),
            PartialBijection::identity_on(4, &[2, 3])
        );
        assert_eq!(
            finv.compose(&f).unwrap(),
            PartialBijection::identity_on(4, &[0, 1])
        );
    }

    #[test]
    fn restriction_order() {
        let small = PartialBijection::identity_on(3, &[0]);
        let big = PartialBijection::identity_on(3, &[0, 1]);
        assert!(small.leq(&big).unwrap());
        assert!(!big.leq(&small).unwrap());
        // Restrictions of distinct partial identities are incomparable when
        // neither graph contains the other.
        let e = PartialBijection::identity_on(3, &[0, 1]);
        let f = PartialBijection::identity_on(3, &[0, 2]);
        assert!(!e.leq(&f).unwrap());
        assert!(!f.leq(&e).unwrap());
    }

    #[test]
    fn join_of_compatible_restrictions() {
        let e = PartialBijection::identity_on(3, &[0, 1]);
        let bottom = PartialBijection::identity_on(3, &[0]);
        assert_eq!(PartialBijection::join(3, &[&e, &bottom]).unwrap(), e);
        let empty = PartialBijection::empty(3);
        assert_eq!(PartialBijection::join(3, &[&empty]).unwrap(), empty);
        assert_eq!(PartialBijection::join(3, &[]).unwrap(), empty);
    }

    #[test]
    fn join_conflicts_are_witnessed() {
        let f = PartialBijection::new(2, vec![Some(0), None]).unwrap();
        let g = PartialBijection::new(2, vec![Some(1), None]).unwrap();
        assert_eq!(
            PartialBijection::join(2, &[&f, &g]).unwrap_err(),
            JoinError::Conflict(JoinConflict::TwoImages {
                point: 0,
                first: 0,
                second: 1
            })
        );
        let h = PartialBijection::new(2, vec![None, Some(0)]).unwrap();
        assert_eq!(
            PartialBijection::join(2, &[&f, &h]).unwrap_err(),
            JoinError::Conflict(JoinConflict::InjectivityBreach {
                p1: 0,
                p2: 1,
                image: 0
            })
        );
    }

    #[test]
    fn ideal_isomorphism_on_v() {
        let sl = v_lattice();
        // Identity on the ideal {0, e}.
        assert!(PartialBijection::identity_on(3, &[0, 1]).is_ideal_isomorphism(&sl));
        // {e} is not an ideal: it misses the bottom.
        assert!(!PartialBijection::identity_on(3, &[1]).is_ideal_isomorphism(&sl));
        // Swapping the incomparable atoms while fixing bottom is an order
        // isomorphism of the whole lattice.
        let swap = PartialBijection::new(3, vec![Some(0), Some(2), Some(1)]).unwrap();
        assert!(swap.is_ideal_isomorphism(&sl));
        // Sending the ideal {0} to {e} is not: {e} is no ideal.
        let shift = PartialBijection::new(3, vec![Some(1), None, None]).unwrap();
        assert!(!shift.is_ideal_isomorphism(&sl));
    }

    #[test]
    fn enumeration_counts_match_known_values() {
        assert_eq!(all_partial_bijections(0).len(), 1);
        assert_eq!(all_partial_bijections(1).len(), 2);
        assert_eq!(all_partial_bijections(2).len(), 7);
        assert_eq!(all_partial_bijections(3).len(), 34);
        let all = all_partial_bijections(2);
        assert_eq!(all[0], PartialBijection::empty(2));
    }

    #[test]
    fn display_is_compact() {
        let f = PartialBijection::new(3, vec![Some(1), None, Some(2)]).unwrap();
        assert_eq!(f.to_string(), "(0>1,2>2)");
        assert_eq!(PartialBijection::empty(2).to_string(), "()");
    }
}
