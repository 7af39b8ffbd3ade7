//! Finite inverse semigroups presented by Cayley tables.
//!
//! Elements are `0..n`. A table is accepted as an inverse semigroup when it
//! is associative, every element has at least one generalized inverse, and
//! idempotents commute; under those conditions the generalized inverse is
//! unique and is stored alongside the table.

use thiserror::Error;

use crate::congruence::Congruence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("empty multiplication table")]
    Empty,
    #[error("table must be {n}x{n} but row {row} has length {len}")]
    BadShape { n: usize, row: usize, len: usize },
    #[error("entry at ({row},{col}) is {value}, out of range for n={n}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
    #[error("expected {n} element names, got {len}")]
    BadNames { n: usize, len: usize },
    #[error("not associative: ({s}*{t})*{u} != {s}*({t}*{u})")]
    NotAssociative { s: usize, t: usize, u: usize },
    #[error("idempotents {e} and {f} do not commute")]
    IdempotentsDontCommute { e: usize, f: usize },
    #[error("element {element} has no generalized inverse")]
    NoInverse { element: usize },
    #[error("element {element} is not idempotent")]
    NotIdempotent { element: usize },
    #[error("elements {s} and {t} do not commute")]
    NotCommutative { s: usize, t: usize },
}

/// Reflexive relation on `0..n` stored as a dense boolean matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryRelation {
    n: usize,
    bits: Vec<bool>,
}

impl BinaryRelation {
    pub fn empty(n: usize) -> Self {
        BinaryRelation {
            n,
            bits: vec![false; n * n],
        }
    }

    pub fn equality(n: usize) -> Self {
        let mut r = Self::empty(n);
        for x in 0..n {
            r.set(x, x);
        }
        r
    }

    pub fn universal(n: usize) -> Self {
        BinaryRelation {
            n,
            bits: vec![true; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, s: usize, t: usize) {
        self.bits[s * self.n + t] = true;
    }

    pub fn contains(&self, s: usize, t: usize) -> bool {
        self.bits[s * self.n + t]
    }

    /// All related pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for s in 0..self.n {
            for t in 0..self.n {
                if self.contains(s, t) {
                    out.push((s, t));
                }
            }
        }
        out
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|x| self.contains(x, x))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|s| (0..self.n).all(|t| self.contains(s, t) == self.contains(t, s)))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n)
            .all(|s| (0..self.n).all(|t| s == t || !(self.contains(s, t) && self.contains(t, s))))
    }

    pub fn is_transitive(&self) -> bool {
        for s in 0..self.n {
            for t in 0..self.n {
                if !self.contains(s, t) {
                    continue;
                }
                for u in 0..self.n {
                    if self.contains(t, u) && !self.contains(s, u) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_subset_of(&self, other: &BinaryRelation) -> bool {
        assert_eq!(self.n, other.n);
        self.bits
            .iter()
            .zip(&other.bits)
            .all(|(a, b)| !*a || *b)
    }
}

/// Whether a semigroup is F-inverse: every class of the minimum group
/// congruence has a greatest element under the natural partial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FInverse {
    pub holds: bool,
    /// Greatest element of each congruence class, indexed by class id;
    /// `None` where a class has no greatest element.
    pub maxima: Vec<Option<usize>>,
}

/// A finite inverse semigroup: validated Cayley table plus the (unique)
/// inverse of each element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteInverseSemigroup {
    n: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    names: Option<Vec<String>>,
}

impl FiniteInverseSemigroup {
    /// Checks that `table` describes an inverse semigroup. Failure order is
    /// fixed: shape, associativity, commuting idempotents, inverses.
    pub fn validate(
        table: &[Vec<usize>],
        names: Option<Vec<String>>,
    ) -> Result<Self, SemigroupError> {
        let n = table.len();
        if n == 0 {
            return Err(SemigroupError::Empty);
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(SemigroupError::BadShape {
                    n,
                    row,
                    len: r.len(),
                });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(SemigroupError::EntryOutOfRange { row, col, value, n });
                }
            }
        }
        if let Some(ref nm) = names {
            if nm.len() != n {
                return Err(SemigroupError::BadNames { n, len: nm.len() });
            }
        }
        let mul = |s: usize, t: usize| table[s][t];
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    if mul(mul(s, t), u) != mul(s, mul(t, u)) {
                        return Err(SemigroupError::NotAssociative { s, t, u });
                    }
                }
            }
        }
        let idems: Vec<usize> = (0..n).filter(|&e| mul(e, e) == e).collect();
        for &e in &idems {
            for &f in &idems {
                if mul(e, f) != mul(f, e) {
                    return Err(SemigroupError::IdempotentsDontCommute { e, f });
                }
            }
        }
        let mut inv = Vec::with_capacity(n);
        for s in 0..n {
            // With commuting idempotents the generalized inverse is unique,
            // so taking the least candidate is canonical, not a choice.
            let t = (0..n)
                .find(|&t| mul(mul(s, t), s) == s && mul(mul(t, s), t) == t)
                .ok_or(SemigroupError::NoInverse { element: s })?;
            inv.push(t);
        }
        Ok(FiniteInverseSemigroup {
            n,
            mul: table.iter().flatten().copied().collect(),
            inv,
            names,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mul(&self, s: usize, t: usize) -> usize {
        self.mul[s * self.n + t]
    }

    pub fn inv(&self, s: usize) -> usize {
        self.inv[s]
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|s| (0..self.n).map(|t| self.mul(s, t)).collect())
            .collect()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, s: usize) -> String {
        match &self.names {
            Some(nm) => nm[s].clone(),
            None => s.to_string(),
        }
    }

    pub fn is_idempotent(&self, s: usize) -> bool {
        self.mul(s, s) == s
    }

    /// Idempotents in ascending element order.
    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.n).filter(|&e| self.is_idempotent(e)).collect()
    }

    pub fn is_group(&self) -> bool {
        self.idempotents().len() == 1
    }

    /// Natural partial order: s <= t iff s = s s^-1 t.
    pub fn leq(&self, s: usize, t: usize) -> bool {
        s == self.mul(self.mul(s, self.inv(s)), t)
    }

    pub fn natural_partial_order(&self) -> BinaryRelation {
        let mut r = BinaryRelation::empty(self.n);
        for s in 0..self.n {
            for t in 0..self.n {
                if self.leq(s, t) {
                    r.set(s, t);
                }
            }
        }
        debug_assert!(r.is_reflexive() && r.is_antisymmetric() && r.is_transitive());
        r
    }

    /// Compatibility: s ~ t iff both s^-1 t and s t^-1 are idempotent.
    pub fn compatible(&self, s: usize, t: usize) -> bool {
        self.is_idempotent(self.mul(self.inv(s), t)) && self.is_idempotent(self.mul(s, self.inv(t)))
    }

    pub fn compatibility_relation(&self) -> BinaryRelation {
        let mut r = BinaryRelation::empty(self.n);
        for s in 0..self.n {
            for t in 0..self.n {
                if self.compatible(s, t) {
                    r.set(s, t);
                }
            }
        }
        r
    }

    /// Minimum group congruence: s sigma t iff some u lies below both.
    pub fn sigma(&self) -> Congruence {
        let n = self.n;
        let related = |s: usize, t: usize| (0..n).any(|u| self.leq(u, s) && self.leq(u, t));
        // Union the raw relation, then confirm classes agree with it
        // pairwise; a mismatch would mean sigma failed to be transitive,
        // which cannot happen over a validated table.
        let mut class_of: Vec<usize> = (0..n).collect();
        fn root(class_of: &mut [usize], mut x: usize) -> usize {
            while class_of[x] != x {
                class_of[x] = class_of[class_of[x]];
                x = class_of[x];
            }
            x
        }
        for s in 0..n {
            for t in s + 1..n {
                if related(s, t) {
                    let (a, b) = (root(&mut class_of, s), root(&mut class_of, t));
                    if a != b {
                        class_of[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let flat: Vec<usize> = (0..n).map(|x| root(&mut class_of.clone(), x)).collect();
        for s in 0..n {
            for t in 0..n {
                assert_eq!(
                    flat[s] == flat[t],
                    related(s, t),
                    "minimum group congruence must be transitive"
                );
            }
        }
        Congruence::validate(self, &flat).expect("sigma is a congruence on an inverse semigroup")
    }

    /// E-unitary: the minimum group congruence is idempotent pure.
    pub fn is_e_unitary(&self) -> bool {
        self.sigma().is_idempotent_pure(self)
    }

    /// F-inverse: every sigma-class has a greatest element.
    pub fn f_inverse(&self) -> FInverse {
        let sigma = self.sigma();
        let classes = sigma.classes();
        let maxima: Vec<Option<usize>> = classes
            .iter()
            .map(|cls| {
                cls.iter()
                    .copied()
                    .find(|&m| cls.iter().all(|&x| self.leq(x, m)))
            })
            .collect();
        let holds = maxima.iter().all(|m| m.is_some());
        if holds {
            assert!(self.is_e_unitary(), "F-inverse semigroups are E-unitary");
        }
        FInverse { holds, maxima }
    }

    /// Green's R relation: s R t iff s s^-1 = t t^-1.
    pub fn green_r(&self) -> BinaryRelation {
        let mut r = BinaryRelation::empty(self.n);
        for s in 0..self.n {
            for t in 0..self.n {
                if self.mul(s, self.inv(s)) == self.mul(t, self.inv(t)) {
                    r.set(s, t);
                }
            }
        }
        r
    }

    /// The idempotents as a semilattice under multiplication, together with
    /// the map from semilattice positions back to semigroup elements.
    pub fn idempotent_semilattice(&self) -> (Semilattice, Vec<usize>) {
        let idems = self.idempotents();
        let pos = |e: usize| idems.binary_search(&e).expect("closed under products");
        let table: Vec<Vec<usize>> = idems
            .iter()
            .map(|&e| idems.iter().map(|&f| pos(self.mul(e, f))).collect())
            .collect();
        let names = self
            .names
            .as_ref()
            .map(|nm| idems.iter().map(|&e| nm[e].clone()).collect());
        let fis = FiniteInverseSemigroup::validate(&table, names)
            .expect("idempotents of an inverse semigroup form a semilattice");
        let sl = Semilattice::from_inverse(fis).expect("idempotent and commutative");
        (sl, idems)
    }
}

/// A finite meet-semilattice, stored as a commutative idempotent semigroup.
/// The derived natural order makes multiplication the binary meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semilattice {
    base: FiniteInverseSemigroup,
    le: BinaryRelation,
}

impl Semilattice {
    pub fn from_inverse(base: FiniteInverseSemigroup) -> Result<Self, SemigroupError> {
        for s in 0..base.n() {
            if !base.is_idempotent(s) {
                return Err(SemigroupError::NotIdempotent { element: s });
            }
        }
        for s in 0..base.n() {
            for t in 0..base.n() {
                if base.mul(s, t) != base.mul(t, s) {
                    return Err(SemigroupError::NotCommutative { s, t });
                }
            }
        }
        let le = base.natural_partial_order();
        // For an idempotent commutative table the product of e and f is the
        // greatest lower bound; spot-checked here as a defensive invariant.
        debug_assert!((0..base.n()).all(|e| {
            (0..base.n()).all(|f| {
                let m = base.mul(e, f);
                le.contains(m, e) && le.contains(m, f)
            })
        }));
        Ok(Semilattice { base, le })
    }

    pub fn from_meet_table(
        table: &[Vec<usize>],
        names: Option<Vec<String>>,
    ) -> Result<Self, SemigroupError> {
        Self::from_inverse(FiniteInverseSemigroup::validate(table, names)?)
    }

    pub fn size(&self) -> usize {
        self.base.n()
    }

    pub fn meet(&self, e: usize, f: usize) -> usize {
        self.base.mul(e, f)
    }

    pub fn le(&self, e: usize, f: usize) -> bool {
        self.le.contains(e, f)
    }

    pub fn name(&self, e: usize) -> String {
        self.base.name(e)
    }

    pub fn base(&self) -> &FiniteInverseSemigroup {
        &self.base
    }

    /// Least element; every finite semilattice has one.
    pub fn bottom(&self) -> usize {
        let mut b = 0;
        for e in 1..self.size() {
            b = self.meet(b, e);
        }
        b
    }

    pub fn principal_ideal(&self, e: usize) -> Vec<usize> {
        (0..self.size()).filter(|&f| self.le(f, e)).collect()
    }

    /// Order ideal test: closed downward. Membership given as a slice of
    /// element indices.
    pub fn is_order_ideal(&self, subset: &[usize]) -> bool {
        let mut inside = vec![false; self.size()];
        for &x in subset {
            inside[x] = true;
        }
        subset
            .iter()
            .all(|&x| (0..self.size()).all(|y| !self.le(y, x) || inside[y]))
    }
}
