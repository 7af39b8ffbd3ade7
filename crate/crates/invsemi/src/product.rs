//! Semidirect products of a semilattice by an inverse semigroup acting
//! partially on it, and the embedding of a semigroup into the product over
//! its quotient by an idempotent pure congruence.
//!
//! Elements of the product are pairs (e, s) with e in the range of the map
//! of s, multiplied by (e, s)(f, t) = (s . (s^-1 . e ^ f), st) where dots
//! apply maps and ^ is the meet.

use thiserror::Error;

use crate::action::{ActionTarget, PartialAction};
use crate::congruence::Congruence;
use crate::semigroup::{FiniteInverseSemigroup, SemigroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrictnessError {
    #[error("no idempotent has ground point {point} in its map's domain")]
    EmptyWitnessSet { point: usize },
    #[error("idempotents whose maps cover ground point {point} have no minimum")]
    NoMinimum { point: usize },
    #[error("minimum-idempotent map fails to preserve the meet of points {e} and {f}")]
    NotMeetMorphism { e: usize, f: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("semidirect product needs a semilattice-valued action")]
    NotSemilatticeValued,
    #[error("product of pairs {i} and {j} left the pair set")]
    NotClosed { i: usize, j: usize },
    #[error("pair table is not an inverse semigroup: {0}")]
    Invalid(#[from] SemigroupError),
    #[error("idempotent set of the product disagrees with its characterization at pair {pair}")]
    IdempotentFormula { pair: usize },
    #[error("inverse of pair {pair} disagrees with its characterization")]
    InverseFormula { pair: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("congruence is not idempotent pure")]
    NotIdempotentPure,
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error("strictness failed: {0}")]
    Strictness(#[from] StrictnessError),
}

/// Violation of the equivalence "strict part is everything iff the acting
/// semigroup is a group", for fully strict actions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("strict part covers the product: {m_equals_full}, acting semigroup is a group: {group}")]
pub struct RemarkViolation {
    pub m_equals_full: bool,
    pub group: bool,
}

#[derive(Debug, Clone)]
pub struct SemidirectProduct {
    action: PartialAction,
    pairs: Vec<(usize, usize)>,
    index: Vec<Vec<Option<usize>>>,
    semigroup: FiniteInverseSemigroup,
}

/// The pairs (e, s) whose ground point has minimum idempotent s s^-1,
/// closed under the product operations.
#[derive(Debug, Clone)]
pub struct MSubsemigroup {
    pub indices: Vec<usize>,
    pub semigroup: FiniteInverseSemigroup,
}

impl SemidirectProduct {
    pub fn build(action: &PartialAction) -> Result<Self, ProductError> {
        let sl = match action.target() {
            ActionTarget::Semilattice(sl) => sl.clone(),
            ActionTarget::Set => return Err(ProductError::NotSemilatticeValued),
        };
        let src = action.source();
        let n = src.n();
        let m = action.ground_size();
        let mut pairs = Vec::new();
        let mut index = vec![vec![None; m]; n];
        for s in 0..n {
            for e in 0..m {
                if action.map(s).ran_contains(e) {
                    index[s][e] = Some(pairs.len());
                    pairs.push((e, s));
                }
            }
        }
        let k = pairs.len();
        let mut table = vec![vec![0usize; k]; k];
        for i in 0..k {
            for j in 0..k {
                let (e, s) = pairs[i];
                let (f, t) = pairs[j];
                let back = action
                    .map(src.inv(s))
                    .apply(e)
                    .expect("range of s is domain of s^-1");
                let met = sl.meet(back, f);
                let fwd = action
                    .map(s)
                    .apply(met)
                    .expect("domains are order ideals");
                let st = src.mul(s, t);
                table[i][j] = index[st][fwd].ok_or(ProductError::NotClosed { i, j })?;
            }
        }
        let names: Vec<String> = pairs
            .iter()
            .map(|&(e, s)| format!("({},{})", sl.name(e), src.name(s)))
            .collect();
        let semigroup = FiniteInverseSemigroup::validate(&table, Some(names))?;
        let product = SemidirectProduct {
            action: action.clone(),
            pairs,
            index,
            semigroup,
        };
        product.check_idempotent_formula()?;
        product.check_inverse_formula()?;
        Ok(product)
    }

    fn check_idempotent_formula(&self) -> Result<(), ProductError> {
        let src = self.action.source();
        for (pair, &(_, s)) in self.pairs.iter().enumerate() {
            if self.semigroup.is_idempotent(pair) != src.is_idempotent(s) {
                return Err(ProductError::IdempotentFormula { pair });
            }
        }
        Ok(())
    }

    fn check_inverse_formula(&self) -> Result<(), ProductError> {
        let src = self.action.source();
        for (pair, &(e, s)) in self.pairs.iter().enumerate() {
            let back = self
                .action
                .map(src.inv(s))
                .apply(e)
                .expect("range of s is domain of s^-1");
            let expected = self.index[src.inv(s)][back].expect("inverse pair exists");
            if self.semigroup.inv(pair) != expected {
                return Err(ProductError::InverseFormula { pair });
            }
        }
        Ok(())
    }

    pub fn action(&self) -> &PartialAction {
        &self.action
    }

    pub fn semigroup(&self) -> &FiniteInverseSemigroup {
        &self.semigroup
    }

    /// Pairs (ground point, source element) in element order.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn pair_index(&self, e: usize, s: usize) -> Option<usize> {
        self.index[s][e]
    }

    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    /// Minimum-idempotent map of the underlying action.
    pub fn strictness(&self) -> Result<Vec<usize>, StrictnessError> {
        let alpha = strictness_map(&self.action)?;
        // Every pair (e, s) satisfies alpha(e) <= s s^-1.
        let src = self.action.source();
        for &(e, s) in &self.pairs {
            debug_assert!(src.leq(alpha[e], src.mul(s, src.inv(s))));
        }
        Ok(alpha)
    }

    /// Restriction to the pairs (e, s) with alpha(e) = s s^-1.
    pub fn m_subsemigroup(&self, alpha: &[usize]) -> MSubsemigroup {
        let src = self.action.source();
        let keep: Vec<usize> = self
            .pairs
            .iter()
            .enumerate()
            .filter(|&(_, &(e, s))| alpha[e] == src.mul(s, src.inv(s)))
            .map(|(i, _)| i)
            .collect();
        let inside = |i: usize| keep.binary_search(&i).ok();
        let table: Vec<Vec<usize>> = keep
            .iter()
            .map(|&i| {
                keep.iter()
                    .map(|&j| {
                        inside(self.semigroup.mul(i, j))
                            .expect("strict pairs are closed under multiplication")
                    })
                    .collect()
            })
            .collect();
        for &i in &keep {
            assert!(
                inside(self.semigroup.inv(i)).is_some(),
                "strict pairs are closed under inversion"
            );
        }
        // Conjugation compatibility: acting by s keeps the map alpha
        // equivariant on the points it moves.
        for s in 0..src.n() {
            for e in 0..self.action.ground_size() {
                if let Some(img) = self.action.map(s).apply(e) {
                    assert_eq!(
                        alpha[img],
                        src.mul(src.mul(s, alpha[e]), src.inv(s)),
                        "minimum idempotents transform by conjugation"
                    );
                }
            }
        }
        let names = keep
            .iter()
            .map(|&i| self.semigroup.name(i))
            .collect::<Vec<_>>();
        let semigroup = FiniteInverseSemigroup::validate(&table, Some(names))
            .expect("strict part is an inverse subsemigroup");
        MSubsemigroup {
            indices: keep,
            semigroup,
        }
    }

    /// Fully strict: every source element occurs in some strict pair.
    pub fn is_fully_strict(&self, msub: &MSubsemigroup) -> bool {
        let mut seen = vec![false; self.action.source().n()];
        for &i in &msub.indices {
            seen[self.pairs[i].1] = true;
        }
        seen.into_iter().all(|b| b)
    }

    /// For fully strict actions: the strict part is the whole product
    /// exactly when the acting semigroup is a group.
    pub fn check_group_remark(&self, msub: &MSubsemigroup) -> Result<bool, RemarkViolation> {
        assert!(self.is_fully_strict(msub), "remark assumes a fully strict action");
        let m_equals_full = msub.indices.len() == self.pairs.len();
        let group = self.action.source().is_group();
        if m_equals_full == group {
            Ok(group)
        } else {
            Err(RemarkViolation {
                m_equals_full,
                group,
            })
        }
    }
}

pub const EMBEDDING_CLAUSES: [&str; 5] = [
    "embedding-homomorphism",
    "embedding-injective",
    "image-is-strict-part",
    "congruence-recovered-from-projection",
    "surjective-iff-e-unitary-and-minimum-group-congruence",
];

#[derive(Debug, Clone)]
pub struct ClauseOutcome {
    pub name: &'static str,
    pub pass: bool,
    pub witness: Option<String>,
}

/// Everything produced and checked on the way from (S, rho) to the
/// embedding of S into the semidirect product over S/rho.
#[derive(Debug, Clone)]
pub struct EmbeddingReport {
    pub quotient: FiniteInverseSemigroup,
    pub projection: Vec<usize>,
    pub lifted: PartialAction,
    pub product: SemidirectProduct,
    pub alpha: Vec<usize>,
    pub msub: MSubsemigroup,
    pub fully_strict: bool,
    /// Pair index of the image of each source element.
    pub phi: Vec<usize>,
    pub clauses: Vec<ClauseOutcome>,
}

impl EmbeddingReport {
    pub fn all_pass(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }
}

/// Minimum-idempotent map of a semilattice-valued partial action: sends a
/// ground point to the least idempotent whose map covers it, then checks
/// the assignment preserves meets.
pub fn strictness_map(action: &PartialAction) -> Result<Vec<usize>, StrictnessError> {
    let sl = action
        .target()
        .semilattice()
        .expect("strictness is about semilattice-valued actions");
    let src = action.source();
    let idems = src.idempotents();
    let mut alpha = Vec::with_capacity(action.ground_size());
    for point in 0..action.ground_size() {
        let witnesses: Vec<usize> = idems
            .iter()
            .copied()
            .filter(|&f| action.map(f).defined_at(point))
            .collect();
        if witnesses.is_empty() {
            return Err(StrictnessError::EmptyWitnessSet { point });
        }
        let min = witnesses
            .iter()
            .copied()
            .find(|&f| witnesses.iter().all(|&g| src.leq(f, g)))
            .ok_or(StrictnessError::NoMinimum { point })?;
        alpha.push(min);
    }
    for e in 0..action.ground_size() {
        for f in 0..action.ground_size() {
            if alpha[sl.meet(e, f)] != src.mul(alpha[e], alpha[f]) {
                return Err(StrictnessError::NotMeetMorphism { e, f });
            }
        }
    }
    Ok(alpha)
}

/// Builds the full chain of the embedding: quotient by an idempotent pure
/// congruence, lift of the conjugation action, semidirect product, strict
/// part, and the five certified clauses about the map s -> (s s^-1, [s]).
pub fn embedding_theorem(
    s: &FiniteInverseSemigroup,
    rho: &Congruence,
) -> Result<EmbeddingReport, EmbedError> {
    if !rho.is_idempotent_pure(s) {
        return Err(EmbedError::NotIdempotentPure);
    }
    let base = crate::action::munn(s);
    let lifted = base
        .lift(rho)
        .expect("lift along an idempotent pure congruence succeeds");
    let quotient = lifted.source().clone();
    let product = SemidirectProduct::build(&lifted)?;
    let alpha = product.strictness()?;
    let msub = product.m_subsemigroup(&alpha);
    let fully_strict = product.is_fully_strict(&msub);

    let (_, idems) = s.idempotent_semilattice();
    let epos = |e: usize| idems.binary_search(&e).expect("idempotent position");
    let phi: Vec<usize> = (0..s.n())
        .map(|x| {
            let e = epos(s.mul(x, s.inv(x)));
            product
                .pair_index(e, rho.class_of(x))
                .expect("s s^-1 lies in the range of the lifted map of [s]")
        })
        .collect();

    let mut clauses = Vec::new();

    let mut hom_witness = None;
    'hom: for a in 0..s.n() {
        for b in 0..s.n() {
            if product.semigroup().mul(phi[a], phi[b]) != phi[s.mul(a, b)] {
                hom_witness = Some(format!("at ({},{})", s.name(a), s.name(b)));
                break 'hom;
            }
        }
    }
    clauses.push(ClauseOutcome {
        name: EMBEDDING_CLAUSES[0],
        pass: hom_witness.is_none(),
        witness: hom_witness,
    });

    let mut inj_witness = None;
    'inj: for a in 0..s.n() {
        for b in a + 1..s.n() {
            if phi[a] == phi[b] {
                inj_witness = Some(format!("{} and {} collide", s.name(a), s.name(b)));
                break 'inj;
            }
        }
    }
    clauses.push(ClauseOutcome {
        name: EMBEDDING_CLAUSES[1],
        pass: inj_witness.is_none(),
        witness: inj_witness,
    });

    let mut image: Vec<usize> = phi.clone();
    image.sort_unstable();
    image.dedup();
    let image_witness = if image == msub.indices {
        None
    } else {
        Some("image and strict part differ as pair sets".to_string())
    };
    clauses.push(ClauseOutcome {
        name: EMBEDDING_CLAUSES[2],
        pass: image_witness.is_none(),
        witness: image_witness,
    });

    let mut rec_witness = None;
    'rec: for a in 0..s.n() {
        for b in 0..s.n() {
            let projected = product.pairs()[phi[a]].1 == product.pairs()[phi[b]].1;
            if projected != rho.same(a, b) {
                rec_witness = Some(format!("at ({},{})", s.name(a), s.name(b)));
                break 'rec;
            }
        }
    }
    clauses.push(ClauseOutcome {
        name: EMBEDDING_CLAUSES[3],
        pass: rec_witness.is_none(),
        witness: rec_witness,
    });

    let surjective = image.len() == product.size();
    let rhs = s.is_e_unitary() && *rho == s.sigma();
    clauses.push(ClauseOutcome {
        name: EMBEDDING_CLAUSES[4],
        pass: surjective == rhs,
        witness: if surjective == rhs {
            Some(format!("surjective={surjective}, e-unitary-and-sigma={rhs}"))
        } else {
            Some(format!(
                "surjective={surjective} but e-unitary-and-sigma={rhs}"
            ))
        },
    });

    Ok(EmbeddingReport {
        quotient,
        projection: rho.class_map().to_vec(),
        lifted,
        product,
        alpha,
        msub,
        fully_strict,
        phi,
        clauses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::munn;
    use crate::pbij::PartialBijection;
    use crate::semigroup::Semilattice;

    fn v_semigroup() -> FiniteInverseSemigroup {
        let table = vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]];
        let names = Some(vec!["0".into(), "e".into(), "f".into()]);
        FiniteInverseSemigroup::validate(&table, names).unwrap()
    }

    fn v_rho() -> (FiniteInverseSemigroup, Congruence) {
        let v = v_semigroup();
        let rho = Congruence::generated_by(&v, &[(0, 1)]).unwrap();
        (v, rho)
    }

    #[test]
    fn product_over_lifted_action_on_v() {
        let (v, rho) = v_rho();
        let lifted = munn(&v).lift(&rho).unwrap();
        let p = SemidirectProduct::build(&lifted).unwrap();
        assert_eq!(p.pairs(), &[(0, 0), (1, 0), (0, 1), (2, 1)]);
        let names: Vec<String> = (0..4).map(|i| p.semigroup().name(i)).collect();
        assert_eq!(names, vec!["(0,[e])", "(e,[e])", "(0,[f])", "(f,[f])"]);
        // Sample product: (e,[e]) (f,[f]) = (tau_[e](e ^ f), [e][f]) = (0,[e]),
        // and symmetrically for (f,[f]) (e,[e]); the whole product is a
        // semilattice, so multiplication is commutative.
        assert_eq!(p.semigroup().mul(1, 3), 0);
        assert_eq!(p.semigroup().mul(3, 1), 0);
        // Idempotents: every pair, as V/rho is a semilattice.
        assert_eq!(p.semigroup().idempotents(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn product_requires_semilattice_target() {
        let (v, rho) = v_rho();
        let lifted = munn(&v).lift(&rho).unwrap().over_set();
        assert!(matches!(
            SemidirectProduct::build(&lifted),
            Err(ProductError::NotSemilatticeValued)
        ));
    }

    #[test]
    fn strictness_on_lifted_v_action() {
        let (v, rho) = v_rho();
        let lifted = munn(&v).lift(&rho).unwrap();
        let p = SemidirectProduct::build(&lifted).unwrap();
        assert_eq!(p.strictness().unwrap(), vec![0, 0, 1]);
    }

    #[test]
    fn strictness_fails_without_meet_morphism() {
        // Source semilattice z < c < a, b with a, b incomparable, acting on
        // the three-point ground y0 < y1, y2 by partial identities:
        // z, c on {y0}; a on {y0,y1}; b on {y0,y2}. Each covering set has a
        // minimum (alpha(y0)=z, alpha(y1)=a, alpha(y2)=b), but the meet is
        // not preserved: alpha(y1 ^ y2) = z while a*b = c.
        let src = FiniteInverseSemigroup::validate(
            &[
                vec![0, 0, 0, 0],
                vec![0, 1, 1, 1],
                vec![0, 1, 2, 1],
                vec![0, 1, 1, 3],
            ],
            Some(vec!["z".into(), "c".into(), "a".into(), "b".into()]),
        )
        .unwrap();
        let ground = Semilattice::from_meet_table(
            &[vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]],
            None,
        )
        .unwrap();
        let maps = vec![
            PartialBijection::identity_on(3, &[0]),
            PartialBijection::identity_on(3, &[0]),
            PartialBijection::identity_on(3, &[0, 1]),
            PartialBijection::identity_on(3, &[0, 2]),
        ];
        let action =
            PartialAction::validate(src, maps, ActionTarget::Semilattice(ground)).unwrap();
        assert_eq!(
            strictness_map(&action).unwrap_err(),
            StrictnessError::NotMeetMorphism { e: 1, f: 2 }
        );
    }

    #[test]
    fn strictness_empty_witness_set() {
        // Bottom of a two-chain acts by the empty map, top by identity on
        // the bottom ground point only; the other ground point is covered
        // by no idempotent.
        let chain = FiniteInverseSemigroup::validate(&[vec![0, 0], vec![0, 1]], None).unwrap();
        let ground = Semilattice::from_meet_table(&[vec![0, 0], vec![0, 1]], None).unwrap();
        let maps = vec![
            PartialBijection::empty(2),
            PartialBijection::identity_on(2, &[0]),
        ];
        let action =
            PartialAction::validate(chain, maps, ActionTarget::Semilattice(ground)).unwrap();
        assert_eq!(
            strictness_map(&action).unwrap_err(),
            StrictnessError::EmptyWitnessSet { point: 1 }
        );
    }

    #[test]
    fn m_subsemigroup_and_group_remark_on_v() {
        let (v, rho) = v_rho();
        let lifted = munn(&v).lift(&rho).unwrap();
        let p = SemidirectProduct::build(&lifted).unwrap();
        let alpha = p.strictness().unwrap();
        let msub = p.m_subsemigroup(&alpha);
        assert_eq!(msub.indices, vec![0, 1, 3]);
        assert!(p.is_fully_strict(&msub));
        // Strict part is proper and V/rho is not a group: remark holds.
        assert_eq!(p.check_group_remark(&msub), Ok(false));
    }

    #[test]
    fn group_remark_positive_direction() {
        let z2 = FiniteInverseSemigroup::validate(&[vec![0, 1], vec![1, 0]], None).unwrap();
        let rho = Congruence::equality(&z2);
        let lifted = munn(&z2).lift(&rho).unwrap();
        let p = SemidirectProduct::build(&lifted).unwrap();
        let alpha = p.strictness().unwrap();
        let msub = p.m_subsemigroup(&alpha);
        assert_eq!(p.check_group_remark(&msub), Ok(true));
        assert_eq!(msub.indices.len(), p.size());
    }

    #[test]
    fn embedding_theorem_on_v() {
        let (v, rho) = v_rho();
        let report = embedding_theorem(&v, &rho).unwrap();
        assert!(report.all_pass(), "clauses: {:?}", report.clauses);
        assert!(report.fully_strict);
        assert_eq!(report.alpha, vec![0, 0, 1]);
        assert_eq!(report.phi, vec![0, 1, 3]);
        assert_eq!(report.msub.indices, vec![0, 1, 3]);
        // Not surjective: rho differs from the minimum group congruence.
        assert_eq!(report.msub.indices.len() + 1, report.product.size());
    }

    #[test]
    fn embedding_rejects_impure_congruence() {
        // On a semilattice every congruence is idempotent pure, so the
        // impure example needs a non-idempotent element: the universal
        // congruence on Z2 merges the generator into the identity class.
        let z2 = FiniteInverseSemigroup::validate(&[vec![0, 1], vec![1, 0]], None).unwrap();
        let universal = Congruence::universal(&z2);
        assert!(matches!(
            embedding_theorem(&z2, &universal),
            Err(EmbedError::NotIdempotentPure)
        ));
    }

    #[test]
    fn embedding_with_sigma_on_e_unitary_group_is_onto() {
        let z2 = FiniteInverseSemigroup::validate(&[vec![0, 1], vec![1, 0]], None).unwrap();
        let sigma = z2.sigma();
        let report = embedding_theorem(&z2, &sigma).unwrap();
        assert!(report.all_pass());
        assert_eq!(report.phi.len(), report.product.size());
    }
}
