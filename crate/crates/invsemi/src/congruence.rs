//! Congruences on finite inverse semigroups.
//!
//! A congruence is stored as a class id per element, with ids normalized to
//! first-occurrence order so that equal partitions compare equal.

use thiserror::Error;

use crate::semigroup::{FiniteInverseSemigroup, SemigroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("class list has length {len}, expected {n}")]
    BadLength { n: usize, len: usize },
    #[error("element {element} is assigned class {class}, outside 0..{n}")]
    ClassOutOfRange {
        element: usize,
        class: usize,
        n: usize,
    },
    #[error("partition relates {s} and {t} but left translation by {u} separates their products")]
    NotLeftCompatible { u: usize, s: usize, t: usize },
    #[error("partition relates {s} and {t} but right translation by {u} separates their products")]
    NotRightCompatible { u: usize, s: usize, t: usize },
    #[error("semigroup has {n} elements, above the enumeration bound {bound}")]
    SizeBound { n: usize, bound: usize },
    #[error("generating pair ({s},{t}) out of range for n={n}")]
    PairOutOfRange { s: usize, t: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    n: usize,
    k: usize,
    class_of: Vec<usize>,
}

/// Quotient semigroup together with the projection onto class ids.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub semigroup: FiniteInverseSemigroup,
    pub projection: Vec<usize>,
}

fn normalize(class_of: &[usize]) -> (usize, Vec<usize>) {
    let mut relabel: Vec<Option<usize>> = vec![None; class_of.len()];
    let mut next = 0;
    let out = class_of
        .iter()
        .map(|&c| {
            *relabel[c].get_or_insert_with(|| {
                let id = next;
                next += 1;
                id
            })
        })
        .collect();
    (next, out)
}

impl Congruence {
    /// Checks translation compatibility of the partition. Class ids must
    /// lie below `n`; they are normalized on acceptance.
    pub fn validate(
        s: &FiniteInverseSemigroup,
        class_of: &[usize],
    ) -> Result<Self, CongruenceError> {
        let n = s.n();
        if class_of.len() != n {
            return Err(CongruenceError::BadLength {
                n,
                len: class_of.len(),
            });
        }
        for (element, &class) in class_of.iter().enumerate() {
            if class >= n {
                return Err(CongruenceError::ClassOutOfRange { element, class, n });
            }
        }
        for a in 0..n {
            for b in 0..n {
                if class_of[a] != class_of[b] {
                    continue;
                }
                for u in 0..n {
                    if class_of[s.mul(u, a)] != class_of[s.mul(u, b)] {
                        return Err(CongruenceError::NotLeftCompatible { u, s: a, t: b });
                    }
                    if class_of[s.mul(a, u)] != class_of[s.mul(b, u)] {
                        return Err(CongruenceError::NotRightCompatible { u, s: a, t: b });
                    }
                }
            }
        }
        let (k, class_of) = normalize(class_of);
        Ok(Congruence { n, k, class_of })
    }

    pub fn equality(s: &FiniteInverseSemigroup) -> Self {
        let n = s.n();
        Congruence {
            n,
            k: n,
            class_of: (0..n).collect(),
        }
    }

    pub fn universal(s: &FiniteInverseSemigroup) -> Self {
        let n = s.n();
        Congruence {
            n,
            k: 1,
            class_of: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class_count(&self) -> usize {
        self.k
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn class_map(&self) -> &[usize] {
        &self.class_of
    }

    pub fn same(&self, s: usize, t: usize) -> bool {
        self.class_of[s] == self.class_of[t]
    }

    pub fn is_equality(&self) -> bool {
        self.k == self.n
    }

    pub fn is_universal(&self) -> bool {
        self.k == 1
    }

    /// Classes as sorted element lists, indexed by class id.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c].push(x);
        }
        out
    }

    /// Idempotent pure: any element related to an idempotent is idempotent.
    pub fn is_idempotent_pure(&self, s: &FiniteInverseSemigroup) -> bool {
        assert_eq!(self.n, s.n());
        let pure = (0..self.n).all(|a| {
            (0..self.n).all(|b| {
                !(self.same(a, b) && s.is_idempotent(a)) || s.is_idempotent(b)
            })
        });
        if pure {
            // Idempotent pure congruences sit between equality and the
            // minimum group congruence, and within compatibility.
            let sigma = s.sigma();
            let compat = s.compatibility_relation();
            for a in 0..self.n {
                for b in 0..self.n {
                    if self.same(a, b) {
                        assert!(sigma.same(a, b), "pure congruence exceeds sigma");
                        assert!(compat.contains(a, b), "pure congruence exceeds compatibility");
                    }
                }
            }
        }
        pure
    }

    /// Label for each class: bracketed name of the least-index element among
    /// the order-maximal members of the class.
    pub fn class_labels(&self, s: &FiniteInverseSemigroup) -> Vec<String> {
        assert_eq!(self.n, s.n());
        self.classes()
            .iter()
            .map(|cls| {
                let rep = cls
                    .iter()
                    .copied()
                    .find(|&m| cls.iter().all(|&x| !s.leq(m, x) || m == x))
                    .expect("finite nonempty class has a maximal element");
                format!("[{}]", s.name(rep))
            })
            .collect()
    }

    /// Quotient table on class ids. The quotient of an inverse semigroup by
    /// a congruence is again inverse.
    pub fn quotient(&self, s: &FiniteInverseSemigroup) -> Quotient {
        assert_eq!(self.n, s.n());
        let reps: Vec<usize> = self
            .classes()
            .iter()
            .map(|cls| cls[0])
            .collect();
        let table: Vec<Vec<usize>> = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| self.class_of[s.mul(a, b)]).collect())
            .collect();
        let semigroup = FiniteInverseSemigroup::validate(&table, Some(self.class_labels(s)))
            .expect("quotient of an inverse semigroup is inverse");
        Quotient {
            semigroup,
            projection: self.class_of.clone(),
        }
    }

    /// Smallest congruence containing the given pairs, by closing under
    /// symmetry, transitivity, and left and right translations.
    pub fn generated_by(
        s: &FiniteInverseSemigroup,
        pairs: &[(usize, usize)],
    ) -> Result<Self, CongruenceError> {
        let n = s.n();
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(CongruenceError::PairOutOfRange { s: a, t: b, n });
            }
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut work: Vec<(usize, usize)> = pairs.to_vec();
        while let Some((a, b)) = work.pop() {
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            if ra == rb {
                continue;
            }
            parent[ra.max(rb)] = ra.min(rb);
            for u in 0..n {
                work.push((s.mul(u, a), s.mul(u, b)));
                work.push((s.mul(a, u), s.mul(b, u)));
            }
        }
        let class_of: Vec<usize> = (0..n).map(|x| root(&mut parent, x)).collect();
        let cong = Congruence::validate(s, &class_of)
            .expect("translation closure of an equivalence is a congruence");
        Ok(cong)
    }

    /// Restriction of the relation to the idempotents of `s`, as a class id
    /// per idempotent position.
    pub fn trace_on_idempotents(&self, s: &FiniteInverseSemigroup) -> Vec<usize> {
        let idems = s.idempotents();
        let (_, normalized) = normalize(&idems.iter().map(|&e| self.class_of[e]).collect::<Vec<_>>());
        normalized
    }
}

/// All congruences on `s`, by depth-first search over restricted growth
/// strings with compatibility pruning on the assigned prefix.
pub fn enumerate_congruences(
    s: &FiniteInverseSemigroup,
    bound: usize,
) -> Result<Vec<Congruence>, CongruenceError> {
    let n = s.n();
    if n > bound {
        return Err(CongruenceError::SizeBound { n, bound });
    }
    let mut out = Vec::new();
    let mut assign = vec![0usize; n];
    fn prefix_ok(s: &FiniteInverseSemigroup, assign: &[usize], i: usize) -> bool {
        // Check pairs involving the fresh element i whose products also lie
        // in the assigned prefix. The full check at the leaves catches the
        // rest.
        for j in 0..i {
            if assign[j] != assign[i] {
                continue;
            }
            for u in 0..s.n() {
                let (p, q) = (s.mul(u, j), s.mul(u, i));
                if p <= i && q <= i && assign[p] != assign[q] {
                    return false;
                }
                let (p, q) = (s.mul(j, u), s.mul(i, u));
                if p <= i && q <= i && assign[p] != assign[q] {
                    return false;
                }
            }
        }
        true
    }
    fn rec(
        s: &FiniteInverseSemigroup,
        assign: &mut Vec<usize>,
        i: usize,
        out: &mut Vec<Congruence>,
    ) {
        let n = s.n();
        if i == n {
            if let Ok(c) = Congruence::validate(s, assign) {
                out.push(c);
            }
            return;
        }
        let ceiling = assign[..i].iter().copied().max().map_or(0, |m| m + 1);
        for c in 0..=ceiling {
            assign[i] = c;
            if prefix_ok(s, assign, i) {
                rec(s, assign, i + 1, out);
            }
        }
        assign[i] = 0;
    }
    rec(s, &mut assign, 1.min(n), &mut out);
    if n > 0 && out.is_empty() {
        // The equality partition always validates.
        unreachable!("every semigroup admits the equality congruence");
    }
    Ok(out)
}

/// The idempotent-pure congruences among all congruences on `s`.
pub fn enumerate_idempotent_pure(
    s: &FiniteInverseSemigroup,
    bound: usize,
) -> Result<Vec<Congruence>, CongruenceError> {
    Ok(enumerate_congruences(s, bound)?
        .into_iter()
        .filter(|c| c.is_idempotent_pure(s))
        .collect())
}

/// Convenience wrapper to expose quotient construction as a standalone
/// operation returning the semigroup error if the table fails revalidation.
pub fn quotient_checked(
    s: &FiniteInverseSemigroup,
    c: &Congruence,
) -> Result<Quotient, SemigroupError> {
    Ok(c.quotient(s))
}
