//! Built-in instance families and the test corpus.
//!
//! Families: symmetric inverse monoids on up to 3 points, meet chains,
//! cyclic groups, and the three-element semilattice with two incomparable
//! atoms together with its standard congruence. The corpus additionally
//! enumerates all meet-semilattices up to isomorphism on up to 6 elements.

use std::str::FromStr;

use thiserror::Error;

use crate::instance::{CongruenceBlock, InstanceFile};
use crate::pbij::{all_partial_bijections, PartialBijection};
use crate::semigroup::FiniteInverseSemigroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Partial bijections of an n-point set under composition.
    SymmetricInverse,
    /// Meet-semilattice 0 < 1 < ... < k-1.
    Chain,
    /// Cyclic group of order m.
    CyclicGroup,
    /// Semilattice 0 < e, f with the congruence collapsing 0 and e.
    TwoAtoms,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("unknown family {0:?}; known: in, chain, z, two-atoms")]
    UnknownFamily(String),
    #[error("family {family} takes a parameter in {low}..={high}, got {got}")]
    OutOfRange {
        family: &'static str,
        low: usize,
        high: usize,
        got: usize,
    },
    #[error("family {family} requires a parameter")]
    MissingParam { family: &'static str },
    #[error("family {family} takes no parameter")]
    UnexpectedParam { family: &'static str },
}

impl FromStr for Family {
    type Err = GenerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "in" => Ok(Family::SymmetricInverse),
            "chain" => Ok(Family::Chain),
            "z" => Ok(Family::CyclicGroup),
            "two-atoms" => Ok(Family::TwoAtoms),
            other => Err(GenerateError::UnknownFamily(other.to_string())),
        }
    }
}

pub fn generate(family: Family, param: Option<usize>) -> Result<InstanceFile, GenerateError> {
    let need = |name: &'static str, low: usize, high: usize| -> Result<usize, GenerateError> {
        let got = param.ok_or(GenerateError::MissingParam { family: name })?;
        if got < low || got > high {
            return Err(GenerateError::OutOfRange {
                family: name,
                low,
                high,
                got,
            });
        }
        Ok(got)
    };
    let semigroup_only = |s: &FiniteInverseSemigroup| InstanceFile {
        n: s.n(),
        table: s.mul_table(),
        names: s.names().map(|nm| nm.to_vec()),
        congruence: None,
        action: None,
        subset: None,
    };
    match family {
        Family::SymmetricInverse => {
            let n = need("in", 0, 3)?;
            Ok(semigroup_only(&symmetric_inverse_monoid(n)))
        }
        Family::Chain => {
            let k = need("chain", 1, 8)?;
            Ok(semigroup_only(&chain_semilattice(k)))
        }
        Family::CyclicGroup => {
            let m = need("z", 1, 8)?;
            Ok(semigroup_only(&cyclic_group(m)))
        }
        Family::TwoAtoms => {
            if param.is_some() {
                return Err(GenerateError::UnexpectedParam {
                    family: "two-atoms",
                });
            }
            Ok(two_atoms_instance())
        }
    }
}

/// All partial bijections of `0..points` as an inverse monoid. Elements are
/// indexed in the enumeration order of `all_partial_bijections` and named
/// by their graphs.
pub fn symmetric_inverse_monoid(points: usize) -> FiniteInverseSemigroup {
    let elems = all_partial_bijections(points);
    let pos = |f: &PartialBijection| {
        elems
            .iter()
            .position(|g| g == f)
            .expect("composition stays in the monoid")
    };
    let table: Vec<Vec<usize>> = elems
        .iter()
        .map(|f| elems.iter().map(|g| pos(&f.compose(g).unwrap())).collect())
        .collect();
    let names: Vec<String> = elems.iter().map(|f| f.to_string()).collect();
    FiniteInverseSemigroup::validate(&table, Some(names))
        .expect("partial bijections form an inverse monoid")
}

/// The chain 0 < 1 < ... < k-1 under minimum.
pub fn chain_semilattice(k: usize) -> FiniteInverseSemigroup {
    let table: Vec<Vec<usize>> = (0..k).map(|a| (0..k).map(|b| a.min(b)).collect()).collect();
    FiniteInverseSemigroup::validate(&table, None).expect("chains are semilattices")
}

/// The cyclic group of order m under addition.
pub fn cyclic_group(m: usize) -> FiniteInverseSemigroup {
    let table: Vec<Vec<usize>> = (0..m)
        .map(|a| (0..m).map(|b| (a + b) % m).collect())
        .collect();
    FiniteInverseSemigroup::validate(&table, None).expect("cyclic groups are inverse")
}

/// Semilattice 0 < e, f with e, f incomparable.
pub fn two_atoms_semigroup() -> FiniteInverseSemigroup {
    let table = vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]];
    let names = vec!["0".to_string(), "e".to_string(), "f".to_string()];
    FiniteInverseSemigroup::validate(&table, Some(names)).expect("fixed table")
}

/// The two-atom semilattice with the congruence identifying 0 and e; its
/// lifted conjugation action is the stock example of a non-globalizable
/// partial action.
pub fn two_atoms_instance() -> InstanceFile {
    let s = two_atoms_semigroup();
    InstanceFile {
        n: s.n(),
        table: s.mul_table(),
        names: s.names().map(|nm| nm.to_vec()),
        congruence: Some(CongruenceBlock::Generators(vec![(0, 1)])),
        action: None,
        subset: None,
    }
}

/// All meet-semilattices on `k` elements up to isomorphism, each given as
/// the lexicographically least meet table over all relabelings, listed in
/// ascending table order. Element 0 need not be the bottom; tables are
/// whatever the canonical form makes them.
pub fn all_semilattices(k: usize) -> Vec<FiniteInverseSemigroup> {
    if k == 0 {
        return Vec::new();
    }
    // Grow partial orders one element at a time; each new element's strict
    // down-set must be downward closed. This enumerates every poset with a
    // linear extension 0..k, which covers every semilattice shape.
    let mut canonical: Vec<Vec<usize>> = Vec::new();
    let mut le = vec![vec![false; k]; k];
    for x in 0..k {
        le[x][x] = true;
    }
    grow(1, k, &mut le, &mut canonical);
    canonical.sort();
    canonical.dedup();
    return canonical
        .into_iter()
        .map(|flat| {
            let table: Vec<Vec<usize>> = flat.chunks(k).map(|c| c.to_vec()).collect();
            FiniteInverseSemigroup::validate(&table, None).expect("canonical semilattice")
        })
        .collect();

    fn grow(i: usize, k: usize, le: &mut Vec<Vec<bool>>, out: &mut Vec<Vec<usize>>) {
        if i == k {
            if let Some(flat) = meet_table(k, le) {
                out.push(canonical_form(k, &flat));
            }
            return;
        }
        // Choose the down-set of element i among the previous elements.
        for mask in 0..(1u32 << i) {
            let closed = (0..i).all(|j| {
                mask >> j & 1 == 0
                    || (0..i).all(|l| !le[l][j] || mask >> l & 1 == 1)
            });
            if !closed {
                continue;
            }
            for j in 0..i {
                le[j][i] = mask >> j & 1 == 1;
            }
            grow(i + 1, k, le, out);
            for j in 0..i {
                le[j][i] = false;
            }
        }
    }

    fn meet_table(k: usize, le: &[Vec<bool>]) -> Option<Vec<usize>> {
        let mut flat = Vec::with_capacity(k * k);
        for a in 0..k {
            for b in 0..k {
                let lower: Vec<usize> =
                    (0..k).filter(|&c| le[c][a] && le[c][b]).collect();
                let meet = lower
                    .iter()
                    .copied()
                    .find(|&m| lower.iter().all(|&c| le[c][m]))?;
                flat.push(meet);
            }
        }
        Some(flat)
    }

    fn canonical_form(k: usize, flat: &[usize]) -> Vec<usize> {
        let mut best: Option<Vec<usize>> = None;
        let mut perm: Vec<usize> = (0..k).collect();
        permute(&mut perm, 0, k, flat, &mut best);
        return best.expect("at least the identity relabeling");

        fn permute(
            perm: &mut Vec<usize>,
            i: usize,
            k: usize,
            flat: &[usize],
            best: &mut Option<Vec<usize>>,
        ) {
            if i == k {
                let mut inv = vec![0; k];
                for (a, &b) in perm.iter().enumerate() {
                    inv[b] = a;
                }
                let relabeled: Vec<usize> = (0..k * k)
                    .map(|idx| {
                        let (a, b) = (idx / k, idx % k);
                        inv[flat[perm[a] * k + perm[b]]]
                    })
                    .collect();
                if best.as_ref().is_none_or(|b| relabeled < *b) {
                    *best = Some(relabeled);
                }
                return;
            }
            for j in i..k {
                perm.swap(i, j);
                permute(perm, i + 1, k, flat, best);
                perm.swap(i, j);
            }
        }
    }
}

/// Named corpus of small inverse semigroups: all semilattices up to
/// isomorphism on up to min(max_n, 6) elements, chains and cyclic groups
/// up to min(max_n, 8), the two-atom example, and the symmetric inverse
/// monoids on 1 and (when max_n allows their size) 2 points.
pub fn corpus(max_n: usize) -> Vec<(String, FiniteInverseSemigroup)> {
    let mut out = Vec::new();
    for k in 1..=max_n.min(6) {
        for (i, sl) in all_semilattices(k).into_iter().enumerate() {
            out.push((format!("sl{k}-{i}"), sl));
        }
    }
    for k in 2..=max_n.min(8) {
        out.push((format!("chain{k}"), chain_semilattice(k)));
    }
    for m in 2..=max_n.min(8) {
        out.push((format!("z{m}"), cyclic_group(m)));
    }
    if max_n >= 2 {
        out.push(("i1".to_string(), symmetric_inverse_monoid(1)));
    }
    if max_n >= 7 {
        out.push(("i2".to_string(), symmetric_inverse_monoid(2)));
    }
    if max_n >= 3 {
        out.push(("two-atoms".to_string(), two_atoms_semigroup()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_inverse_monoid_sizes() {
        assert_eq!(symmetric_inverse_monoid(0).n(), 1);
        assert_eq!(symmetric_inverse_monoid(1).n(), 2);
        let i2 = symmetric_inverse_monoid(2);
        assert_eq!(i2.n(), 7);
        assert_eq!(i2.idempotents().len(), 4);
        assert!(!i2.is_e_unitary());
        assert_eq!(symmetric_inverse_monoid(3).n(), 34);
    }

    #[test]
    fn i2_green_r_classes_group_by_range() {
        // Composition applies the right factor first, so s s^-1 is the
        // identity on the range of s and relatedness means equal range.
        let i2 = symmetric_inverse_monoid(2);
        let elems = all_partial_bijections(2);
        let r = i2.green_r();
        for (a, fa) in elems.iter().enumerate() {
            for (b, fb) in elems.iter().enumerate() {
                assert_eq!(r.contains(a, b), fa.ran() == fb.ran(), "{fa} vs {fb}");
            }
        }
        // Class sizes: the empty map alone, two classes of two maps with a
        // singleton range, and two maps with full range.
        let sizes: Vec<usize> = i2
            .green_r()
            .pairs()
            .iter()
            .fold(vec![0; 7], |mut acc, &(a, _)| {
                acc[a] += 1;
                acc
            });
        let mut sorted = sizes;
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 2, 2, 2, 2, 2, 2]);
    }

    #[test]
    fn chain_and_cyclic_basics() {
        let c4 = chain_semilattice(4);
        assert!(c4.leq(1, 3) && !c4.leq(3, 1));
        let z6 = cyclic_group(6);
        assert!(z6.is_group());
        assert_eq!(z6.inv(2), 4);
    }

    #[test]
    fn semilattice_counts_match_lattice_counts() {
        // A meet-semilattice on k elements is a lattice with a top element
        // removed, so the counts match the lattices on k+1 nodes.
        let counts: Vec<usize> = (1..=6).map(|k| all_semilattices(k).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 53]);
    }

    #[test]
    fn canonical_forms_are_deduplicated_and_valid() {
        for sl in all_semilattices(4) {
            // Every output is idempotent and commutative.
            for a in 0..4 {
                assert_eq!(sl.mul(a, a), a);
                for b in 0..4 {
                    assert_eq!(sl.mul(a, b), sl.mul(b, a));
                }
            }
        }
        // The two shapes on three elements: the chain and the two-atom
        // semilattice.
        let three = all_semilattices(3);
        assert_eq!(three.len(), 2);
    }

    #[test]
    fn corpus_is_deterministic_and_bounded() {
        let a = corpus(6);
        let b = corpus(6);
        let names_a: Vec<&String> = a.iter().map(|(n, _)| n).collect();
        let names_b: Vec<&String> = b.iter().map(|(n, _)| n).collect();
        assert_eq!(names_a, names_b);
        assert!(a.iter().all(|(_, s)| s.n() <= 6));
        let full = corpus(8);
        assert!(full.iter().any(|(n, _)| n == "i2"));
        assert!(full.iter().any(|(n, _)| n == "chain8"));
        assert!(!a.iter().any(|(n, _)| n == "i2"));
    }

    #[test]
    fn family_parsing_and_ranges() {
        assert_eq!("in".parse::<Family>().unwrap(), Family::SymmetricInverse);
        assert!("bogus".parse::<Family>().is_err());
        assert!(generate(Family::SymmetricInverse, Some(4)).is_err());
        assert!(generate(Family::Chain, None).is_err());
        let f = generate(Family::TwoAtoms, None).unwrap();
        assert_eq!(f.n, 3);
        assert!(f.congruence.is_some());
        let i1 = generate(Family::SymmetricInverse, Some(1)).unwrap();
        assert_eq!(i1.n, 2);
    }
}
