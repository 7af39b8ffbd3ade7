//! Partial actions of inverse semigroups by partial bijections.
//!
//! An action assigns to every semigroup element a partial bijection of a
//! fixed ground set, subject to the premorphism axioms: inverses map to
//! inverse bijections and the composite of two maps is a restriction of the
//! map of the product. When equality holds throughout, the action is a
//! global one (a homomorphism). Ground sets are either bare sets or
//! semilattices; over a semilattice every map must be an order isomorphism
//! between order ideals.

use thiserror::Error;

use crate::congruence::Congruence;
use crate::pbij::{JoinConflict, JoinError, PartialBijection, PbijError};
use crate::semigroup::{FiniteInverseSemigroup, Semilattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("expected {n} maps, got {len}")]
    BadCount { n: usize, len: usize },
    #[error("map of element {element} is on a ground of size {found}, expected {expected}")]
    GroundMismatch {
        element: usize,
        expected: usize,
        found: usize,
    },
    #[error("map of {s}^-1 is not the inverse of the map of {s}")]
    InverseAxiom { s: usize },
    #[error("composite of maps {s} and {t} is not a restriction of the map of their product")]
    CompositionAxiom { s: usize, t: usize },
    #[error("map of {s} is not an order isomorphism between order ideals")]
    NotIdealIso { s: usize },
    #[error("ground semilattice has size {sl}, maps are on ground {ground}")]
    TargetMismatch { sl: usize, ground: usize },
    #[error(transparent)]
    Pbij(#[from] PbijError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("maps of class {label} have no join: {conflict}")]
    JoinConflict {
        class: usize,
        label: String,
        conflict: JoinConflict,
    },
    #[error("joined maps break a premorphism axiom: {0}")]
    Premorphism(ActionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RestrictError {
    #[error("restriction is defined for global actions only")]
    NotGlobal,
    #[error("subset point {point} out of range for ground size {m}")]
    BadSubset { point: usize, m: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FLiftError {
    #[error("source semigroup is not F-inverse")]
    NotFInverse,
    #[error("comparison with maps of maxima needs a global action")]
    NotGlobal,
}

/// What the maps act on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionTarget {
    /// Bare finite set; no order conditions on the maps.
    Set,
    /// Meet-semilattice; maps must be ideal-to-ideal order isomorphisms.
    Semilattice(Semilattice),
}

impl ActionTarget {
    pub fn semilattice(&self) -> Option<&Semilattice> {
        match self {
            ActionTarget::Semilattice(sl) => Some(sl),
            ActionTarget::Set => None,
        }
    }
}

/// A validated partial action: one partial bijection per source element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAction {
    source: FiniteInverseSemigroup,
    target: ActionTarget,
    maps: Vec<PartialBijection>,
    ground: usize,
    global: bool,
}

/// A restricted action together with the inclusion of its ground set into
/// the original one.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub action: PartialAction,
    pub iota: Vec<usize>,
}

impl PartialAction {
    /// Validates the premorphism axioms, and the ideal-isomorphism
    /// condition when the target is a semilattice. Records whether the
    /// action is in fact global.
    pub fn validate(
        source: FiniteInverseSemigroup,
        maps: Vec<PartialBijection>,
        target: ActionTarget,
    ) -> Result<Self, ActionError> {
        let n = source.n();
        if maps.len() != n {
            return Err(ActionError::BadCount { n, len: maps.len() });
        }
        let ground = maps[0].ground_size();
        for (element, f) in maps.iter().enumerate() {
            if f.ground_size() != ground {
                return Err(ActionError::GroundMismatch {
                    element,
                    expected: ground,
                    found: f.ground_size(),
                });
            }
        }
        if let ActionTarget::Semilattice(sl) = &target {
            if sl.size() != ground {
                return Err(ActionError::TargetMismatch {
                    sl: sl.size(),
                    ground,
                });
            }
        }
        for s in 0..n {
            if maps[source.inv(s)] != maps[s].inverse() {
                return Err(ActionError::InverseAxiom { s });
            }
        }
        let mut global = true;
        for s in 0..n {
            for t in 0..n {
                let st = maps[s].compose(&maps[t])?;
                if !st.leq(&maps[source.mul(s, t)])? {
                    return Err(ActionError::CompositionAxiom { s, t });
                }
                if st != maps[source.mul(s, t)] {
                    global = false;
                }
            }
        }
        if let ActionTarget::Semilattice(sl) = &target {
            for s in 0..n {
                if !maps[s].is_ideal_isomorphism(sl) {
                    return Err(ActionError::NotIdealIso { s });
                }
            }
        }
        Ok(PartialAction {
            source,
            target,
            maps,
            ground,
            global,
        })
    }

    pub fn source(&self) -> &FiniteInverseSemigroup {
        &self.source
    }

    pub fn target(&self) -> &ActionTarget {
        &self.target
    }

    pub fn map(&self, s: usize) -> &PartialBijection {
        &self.maps[s]
    }

    pub fn maps(&self) -> &[PartialBijection] {
        &self.maps
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn is_global(&self) -> bool {
        self.global
    }

    /// Re-validates the same maps against a semilattice structure on the
    /// ground set.
    pub fn over_semilattice(&self, sl: Semilattice) -> Result<PartialAction, ActionError> {
        PartialAction::validate(
            self.source.clone(),
            self.maps.clone(),
            ActionTarget::Semilattice(sl),
        )
    }

    /// Forgets the semilattice structure of the target.
    pub fn over_set(&self) -> PartialAction {
        PartialAction {
            source: self.source.clone(),
            target: ActionTarget::Set,
            maps: self.maps.clone(),
            ground: self.ground,
            global: self.global,
        }
    }

    /// Least witness against monotonicity of the assignment s -> map(s):
    /// a source pair s <= t whose maps fail map(s) <= map(t).
    pub fn order_preserving_witness(&self) -> Option<(usize, usize)> {
        for s in 0..self.source.n() {
            for t in 0..self.source.n() {
                if self.source.leq(s, t) && !self.maps[s].leq(&self.maps[t]).unwrap() {
                    return Some((s, t));
                }
            }
        }
        None
    }

    pub fn is_order_preserving(&self) -> bool {
        self.order_preserving_witness().is_none()
    }

    /// Joins the maps inside each congruence class, giving an action of the
    /// quotient. For an idempotent pure congruence the joins always exist
    /// and the result is again a partial action; for other congruences the
    /// construction may fail, and the failure is returned as a witness.
    pub fn lift(&self, rho: &Congruence) -> Result<PartialAction, LiftError> {
        assert_eq!(rho.n(), self.source.n(), "congruence on the acting semigroup");
        let pure = rho.is_idempotent_pure(&self.source);
        let quotient = rho.quotient(&self.source);
        let classes = rho.classes();
        let labels = rho.class_labels(&self.source);
        let mut lifted = Vec::with_capacity(classes.len());
        for (class, members) in classes.iter().enumerate() {
            let parts: Vec<&PartialBijection> = members.iter().map(|&s| &self.maps[s]).collect();
            match PartialBijection::join(self.ground, &parts) {
                Ok(j) => lifted.push(j),
                Err(JoinError::Conflict(conflict)) => {
                    assert!(
                        !pure,
                        "join of a class of an idempotent pure congruence must exist"
                    );
                    return Err(LiftError::JoinConflict {
                        class,
                        label: labels[class].clone(),
                        conflict,
                    });
                }
                Err(JoinError::GroundMismatch { .. }) => unreachable!("uniform ground"),
            }
        }
        match PartialAction::validate(quotient.semigroup, lifted, self.target.clone()) {
            Ok(a) => Ok(a),
            Err(e) => {
                assert!(!pure, "lift along an idempotent pure congruence is an action");
                Err(LiftError::Premorphism(e))
            }
        }
    }

    /// Restricts a global action to an arbitrary subset of the ground set:
    /// keep the points of the subset and the transitions staying inside it.
    /// Returns the restricted action on ground `0..subset.len()` and the
    /// inclusion back into the original ground set.
    pub fn restrict(&self, subset: &[usize]) -> Result<Restriction, RestrictError> {
        if !self.global {
            return Err(RestrictError::NotGlobal);
        }
        let mut iota: Vec<usize> = subset.to_vec();
        iota.sort_unstable();
        iota.dedup();
        for &point in &iota {
            if point >= self.ground {
                return Err(RestrictError::BadSubset {
                    point,
                    m: self.ground,
                });
            }
        }
        let m = iota.len();
        let pos = |x: usize| iota.binary_search(&x).ok();
        let maps: Vec<PartialBijection> = (0..self.source.n())
            .map(|s| {
                let img = iota
                    .iter()
                    .map(|&x| self.maps[s].apply(x).and_then(pos))
                    .collect();
                PartialBijection::new(m, img).expect("restriction of a bijection is a bijection")
            })
            .collect();
        let action = PartialAction::validate(self.source.clone(), maps, ActionTarget::Set)
            .expect("restriction of a global action satisfies the premorphism axioms");
        Ok(Restriction { action, iota })
    }
}

/// The canonical action of an inverse semigroup on its own idempotents:
/// element s acts on the ideal below s^-1 s by e -> s e s^-1. This action
/// is always global.
pub fn munn(s: &FiniteInverseSemigroup) -> PartialAction {
    let (sl, idems) = s.idempotent_semilattice();
    let pos = |e: usize| idems.binary_search(&e).expect("conjugate of idempotent");
    let m = idems.len();
    let maps: Vec<PartialBijection> = (0..s.n())
        .map(|t| {
            let anchor = s.mul(s.inv(t), t);
            let img = idems
                .iter()
                .map(|&e| {
                    if s.leq(e, anchor) {
                        Some(pos(s.mul(s.mul(t, e), s.inv(t))))
                    } else {
                        None
                    }
                })
                .collect();
            PartialBijection::new(m, img).expect("conjugation is injective on the ideal")
        })
        .collect();
    let action = PartialAction::validate(s.clone(), maps, ActionTarget::Semilattice(sl))
        .expect("conjugation on idempotents is a global action");
    assert!(action.is_global());
    action
}

/// For a global action of an F-inverse semigroup, checks that the lift
/// along the minimum group congruence sends each class to the map of its
/// greatest element.
pub fn check_f_inverse_lift(tau: &PartialAction) -> Result<bool, FLiftError> {
    if !tau.is_global() {
        return Err(FLiftError::NotGlobal);
    }
    let s = tau.source();
    let fi = s.f_inverse();
    if !fi.holds {
        return Err(FLiftError::NotFInverse);
    }
    let sigma = s.sigma();
    // F-inverse implies E-unitary, so sigma is idempotent pure and the
    // lift cannot fail.
    let lifted = tau.lift(&sigma).expect("sigma is idempotent pure here");
    Ok(fi
        .maxima
        .iter()
        .enumerate()
        .all(|(class, m)| lifted.map(class) == tau.map(m.expect("F-inverse"))))
}
