//! Triples (T, X, Y): a global action of an inverse semigroup T on a
//! down-directed poset X, restricted to an order ideal Y that is a
//! semilattice and generates X under the action.
//!
//! These are the order-theoretic counterpart of semilattice-valued partial
//! actions: restricting the global action to Y gives a partial action, the
//! associated semigroup L(T,X,Y) is isomorphic to the semidirect product
//! over the restriction, and conversely an order-preserving strict partial
//! action with nonempty domains can be rebuilt into a triple from any
//! globalization witness.

use thiserror::Error;

use crate::action::{ActionTarget, PartialAction};
use crate::pbij::PartialBijection;
use crate::product::{strictness_map, MSubsemigroup, ProductError, SemidirectProduct, StrictnessError};
use crate::semigroup::{BinaryRelation, FiniteInverseSemigroup, Semilattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relation must be {n}x{n} but row {row} has length {len}")]
    BadShape { n: usize, row: usize, len: usize },
    #[error("relation is not reflexive at {x}")]
    NotReflexive { x: usize },
    #[error("relation is not antisymmetric on {x} and {y}")]
    NotAntisymmetric { x: usize, y: usize },
    #[error("relation is not transitive on {x}, {y}, {z}")]
    NotTransitive { x: usize, y: usize, z: usize },
}

/// Finite partial order on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    le: BinaryRelation,
}

impl Poset {
    pub fn new(rows: &[Vec<bool>]) -> Result<Self, PosetError> {
        let n = rows.len();
        let mut le = BinaryRelation::empty(n);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(PosetError::BadShape {
                    n,
                    row,
                    len: r.len(),
                });
            }
            for (col, &b) in r.iter().enumerate() {
                if b {
                    le.set(row, col);
                }
            }
        }
        Self::from_relation(le)
    }

    pub fn from_relation(le: BinaryRelation) -> Result<Self, PosetError> {
        let n = le.n();
        for x in 0..n {
            if !le.contains(x, x) {
                return Err(PosetError::NotReflexive { x });
            }
        }
        for x in 0..n {
            for y in 0..n {
                if x != y && le.contains(x, y) && le.contains(y, x) {
                    return Err(PosetError::NotAntisymmetric { x, y });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !le.contains(x, y) {
                    continue;
                }
                for z in 0..n {
                    if le.contains(y, z) && !le.contains(x, z) {
                        return Err(PosetError::NotTransitive { x, y, z });
                    }
                }
            }
        }
        Ok(Poset { n, le })
    }

    pub fn of_semilattice(sl: &Semilattice) -> Self {
        let mut le = BinaryRelation::empty(sl.size());
        for a in 0..sl.size() {
            for b in 0..sl.size() {
                if sl.le(a, b) {
                    le.set(a, b);
                }
            }
        }
        Poset {
            n: sl.size(),
            le,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le.contains(a, b)
    }

    pub fn relation(&self) -> &BinaryRelation {
        &self.le
    }

    /// Greatest lower bound, when it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.n)
            .filter(|&c| self.le(c, a) && self.le(c, b))
            .collect();
        lower
            .iter()
            .copied()
            .find(|&m| lower.iter().all(|&c| self.le(c, m)))
    }

    /// First pair (in lexicographic order) without a common lower bound.
    pub fn down_directed_witness(&self) -> Option<(usize, usize)> {
        for a in 0..self.n {
            for b in 0..self.n {
                if !(0..self.n).any(|c| self.le(c, a) && self.le(c, b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_order_ideal(&self, subset: &[usize]) -> bool {
        let mut inside = vec![false; self.n];
        for &x in subset {
            inside[x] = true;
        }
        subset
            .iter()
            .all(|&x| (0..self.n).all(|y| !self.le(y, x) || inside[y]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LTripleError {
    #[error("action ground has {ground} points, poset has {poset}")]
    GroundMismatch { ground: usize, poset: usize },
    #[error("the action of the triple must be global")]
    PhiNotGlobal,
    #[error("poset is not down-directed: {a} and {b} have no common lower bound")]
    XNotDownDirected { a: usize, b: usize },
    #[error("distinguished subset is empty")]
    YEmpty,
    #[error("distinguished point {point} out of range for poset size {n}")]
    YOutOfRange { point: usize, n: usize },
    #[error("subset is not an order ideal: {below} <= {inside} is missing")]
    YNotOrderIdeal { inside: usize, below: usize },
    #[error("points {y1} and {y2} of the subset have no meet in the poset")]
    YMeetMissing { y1: usize, y2: usize },
    #[error("meet {meet} of subset points {y1} and {y2} lies outside the subset")]
    YMeetOutside { y1: usize, y2: usize, meet: usize },
    #[error("domain of the map of {t} is not an order ideal: {below} <= {inside} is missing")]
    PhiDomNotIdeal {
        t: usize,
        inside: usize,
        below: usize,
    },
    #[error("map of {t} is not an order isomorphism at points {a}, {b}")]
    PhiNotOrderIso { t: usize, a: usize, b: usize },
    #[error("poset point {x} is not reached from the subset by the action")]
    NotGenerated { x: usize },
    #[error("pair table closure failed at entries {i}, {j}")]
    NotClosed { i: usize, j: usize },
    #[error("pair table is not an inverse semigroup: {0}")]
    Semigroup(#[from] crate::semigroup::SemigroupError),
    #[error("bridge certificate failed: {0}")]
    BridgeMismatch(String),
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error("strictness failed: {0}")]
    Strictness(#[from] StrictnessError),
}

/// A validated triple: global action `phi` of `phi.source()` on the poset
/// `x`, with `y` an order ideal and subsemilattice generating `x`.
#[derive(Debug, Clone)]
pub struct LTriple {
    x: Poset,
    y: Vec<usize>,
    phi: PartialAction,
}

/// Pair semigroup of a triple: elements (a, t) with a in the subset, a in
/// the range of the map of t, and the preimage of a back in the subset.
#[derive(Debug, Clone)]
pub struct LSemigroup {
    pub pairs: Vec<(usize, usize)>,
    pub semigroup: FiniteInverseSemigroup,
}

/// Strict part of the pair semigroup.
#[derive(Debug, Clone)]
pub struct StrictPart {
    pub indices: Vec<usize>,
    pub semigroup: FiniteInverseSemigroup,
}

impl LTriple {
    pub fn validate(x: Poset, y: &[usize], phi: PartialAction) -> Result<Self, LTripleError> {
        if phi.ground_size() != x.n() {
            return Err(LTripleError::GroundMismatch {
                ground: phi.ground_size(),
                poset: x.n(),
            });
        }
        if !phi.is_global() {
            return Err(LTripleError::PhiNotGlobal);
        }
        if let Some((a, b)) = x.down_directed_witness() {
            return Err(LTripleError::XNotDownDirected { a, b });
        }
        let mut y: Vec<usize> = y.to_vec();
        y.sort_unstable();
        y.dedup();
        if y.is_empty() {
            return Err(LTripleError::YEmpty);
        }
        for &point in &y {
            if point >= x.n() {
                return Err(LTripleError::YOutOfRange { point, n: x.n() });
            }
        }
        let in_y = |p: usize| y.binary_search(&p).is_ok();
        for &inside in &y {
            for below in 0..x.n() {
                if x.le(below, inside) && !in_y(below) {
                    return Err(LTripleError::YNotOrderIdeal { inside, below });
                }
            }
        }
        for &y1 in &y {
            for &y2 in &y {
                match x.meet(y1, y2) {
                    None => return Err(LTripleError::YMeetMissing { y1, y2 }),
                    Some(meet) => {
                        if !in_y(meet) {
                            return Err(LTripleError::YMeetOutside { y1, y2, meet });
                        }
                    }
                }
            }
        }
        let t_count = phi.source().n();
        for t in 0..t_count {
            let map = phi.map(t);
            let dom = map.dom();
            let dom_set: Vec<bool> = (0..x.n()).map(|p| map.defined_at(p)).collect();
            for &inside in &dom {
                for below in 0..x.n() {
                    if x.le(below, inside) && !dom_set[below] {
                        return Err(LTripleError::PhiDomNotIdeal { t, inside, below });
                    }
                }
            }
            // Ranges are domains of inverses, so ideal-ness follows; the
            // isomorphism condition is checked both ways here.
            for &a in &dom {
                for &b in &dom {
                    let (fa, fb) = (map.apply(a).unwrap(), map.apply(b).unwrap());
                    if x.le(a, b) != x.le(fa, fb) {
                        return Err(LTripleError::PhiNotOrderIso { t, a, b });
                    }
                }
            }
        }
        for point in 0..x.n() {
            let reached = (0..t_count).any(|t| {
                y.iter()
                    .any(|&yy| phi.map(t).apply(yy) == Some(point))
            });
            if !reached {
                return Err(LTripleError::NotGenerated { x: point });
            }
        }
        Ok(LTriple { x, y, phi })
    }

    pub fn poset(&self) -> &Poset {
        &self.x
    }

    pub fn subset(&self) -> &[usize] {
        &self.y
    }

    pub fn action(&self) -> &PartialAction {
        &self.phi
    }

    pub fn source(&self) -> &FiniteInverseSemigroup {
        self.phi.source()
    }

    fn y_position(&self, point: usize) -> Option<usize> {
        self.y.binary_search(&point).ok()
    }

    /// Meet semilattice structure on the subset, inherited from the poset.
    pub fn y_semilattice(&self) -> Semilattice {
        let table: Vec<Vec<usize>> = self
            .y
            .iter()
            .map(|&a| {
                self.y
                    .iter()
                    .map(|&b| {
                        let m = self.x.meet(a, b).expect("validated: meets exist");
                        self.y_position(m).expect("validated: meets stay inside")
                    })
                    .collect()
            })
            .collect();
        Semilattice::from_meet_table(&table, None).expect("meet table of a poset ideal")
    }
}

/// Pair semigroup L of a triple, with pairs ordered by source element then
/// ground point.
pub fn build_l(lt: &LTriple) -> Result<LSemigroup, LTripleError> {
    let t_count = lt.source().n();
    let src = lt.source();
    let in_y = |p: usize| lt.y_position(p).is_some();
    let mut pairs = Vec::new();
    let mut index = vec![vec![None; lt.x.n()]; t_count];
    for t in 0..t_count {
        for &a in &lt.y {
            let back = lt.phi.map(src.inv(t)).apply(a);
            if let Some(b) = back {
                if in_y(b) {
                    index[t][a] = Some(pairs.len());
                    pairs.push((a, t));
                }
            }
        }
    }
    let k = pairs.len();
    let mut table = vec![vec![0usize; k]; k];
    for i in 0..k {
        for j in 0..k {
            let (a, t) = pairs[i];
            let (b, u) = pairs[j];
            let back = lt
                .phi
                .map(src.inv(t))
                .apply(a)
                .expect("membership requires a preimage");
            let met = lt
                .x
                .meet(back, b)
                .expect("meets of subset points exist");
            let fwd = lt
                .phi
                .map(t)
                .apply(met)
                .expect("domains are order ideals");
            let tu = src.mul(t, u);
            table[i][j] = index[tu][fwd].ok_or(LTripleError::NotClosed { i, j })?;
        }
    }
    let names: Vec<String> = pairs
        .iter()
        .map(|&(a, t)| format!("({a},{})", src.name(t)))
        .collect();
    let semigroup = FiniteInverseSemigroup::validate(&table, Some(names))?;
    Ok(LSemigroup { pairs, semigroup })
}

/// Minimum idempotent covering each subset point, checked to preserve
/// meets. Indexed by subset position.
pub fn minimum_idempotent_map(lt: &LTriple) -> Result<Vec<usize>, StrictnessError> {
    let src = lt.source();
    let idems = src.idempotents();
    let mut emap = Vec::with_capacity(lt.y.len());
    for (pos, &point) in lt.y.iter().enumerate() {
        let covering: Vec<usize> = idems
            .iter()
            .copied()
            .filter(|&f| lt.phi.map(f).defined_at(point))
            .collect();
        if covering.is_empty() {
            return Err(StrictnessError::EmptyWitnessSet { point: pos });
        }
        let min = covering
            .iter()
            .copied()
            .find(|&f| covering.iter().all(|&g| src.leq(f, g)))
            .ok_or(StrictnessError::NoMinimum { point: pos })?;
        emap.push(min);
    }
    for (i, &a) in lt.y.iter().enumerate() {
        for (j, &b) in lt.y.iter().enumerate() {
            let met = lt.x.meet(a, b).expect("validated");
            let pos = lt.y_position(met).expect("validated");
            if emap[pos] != src.mul(emap[i], emap[j]) {
                return Err(StrictnessError::NotMeetMorphism { e: i, f: j });
            }
        }
    }
    Ok(emap)
}

/// Strict part of L: pairs (a, t) whose point's minimum idempotent is
/// exactly t t^-1.
pub fn build_lm(lt: &LTriple, l: &LSemigroup, emap: &[usize]) -> StrictPart {
    let src = lt.source();
    let keep: Vec<usize> = l
        .pairs
        .iter()
        .enumerate()
        .filter(|&(_, &(a, t))| {
            emap[lt.y_position(a).expect("pair points lie in the subset")]
                == src.mul(t, src.inv(t))
        })
        .map(|(i, _)| i)
        .collect();
    let inside = |i: usize| keep.binary_search(&i).ok();
    let table: Vec<Vec<usize>> = keep
        .iter()
        .map(|&i| {
            keep.iter()
                .map(|&j| {
                    inside(l.semigroup.mul(i, j))
                        .expect("strict pairs are closed under multiplication")
                })
                .collect()
        })
        .collect();
    for &i in &keep {
        assert!(
            inside(l.semigroup.inv(i)).is_some(),
            "strict pairs are closed under inversion"
        );
    }
    let names: Vec<String> = keep.iter().map(|&i| l.semigroup.name(i)).collect();
    let semigroup = FiniteInverseSemigroup::validate(&table, Some(names))
        .expect("strict part is an inverse subsemigroup");
    StrictPart {
        indices: keep,
        semigroup,
    }
}

/// Certificates tying a triple to the semidirect product over the
/// restriction of its action to the subset.
#[derive(Debug, Clone)]
pub struct ActionBridge {
    /// Restriction of the triple's action to the subset, as a
    /// semilattice-valued partial action on subset positions.
    pub tau: PartialAction,
    pub y_semilattice: Semilattice,
    pub l: LSemigroup,
    pub product: SemidirectProduct,
    /// Pair-for-pair match: l.pairs[i] = (y[product.pairs[i].0], product.pairs[i].1)
    /// and the two tables agree entrywise.
    pub tables_match: bool,
    pub tau_strictness: Result<Vec<usize>, StrictnessError>,
    pub point_strictness: Result<Vec<usize>, StrictnessError>,
    pub strictness_agrees: bool,
    pub lm: Option<StrictPart>,
    pub msub: Option<MSubsemigroup>,
    pub strict_parts_match: Option<bool>,
    pub fully_strict: Option<bool>,
}

impl ActionBridge {
    pub fn all_certified(&self) -> bool {
        self.tables_match
            && self.strictness_agrees
            && self.strict_parts_match.unwrap_or(true)
    }
}

/// Restricts the triple's action to the subset, builds both the pair
/// semigroup and the semidirect product, and certifies they are the same
/// semigroup under (a, t) <-> (position of a, t).
pub fn ltriple_to_action(lt: &LTriple) -> Result<ActionBridge, LTripleError> {
    let restriction = lt
        .phi
        .restrict(&lt.y)
        .expect("triple actions are global and subsets in range");
    let y_semilattice = lt.y_semilattice();
    let tau = restriction
        .action
        .over_semilattice(y_semilattice.clone())
        .map_err(|e| LTripleError::BridgeMismatch(format!("restriction not ideal isos: {e}")))?;
    let l = build_l(lt)?;
    let product = SemidirectProduct::build(&tau)?;
    let mut tables_match = l.pairs.len() == product.size();
    if tables_match {
        for (i, &(a, t)) in l.pairs.iter().enumerate() {
            let (e, s) = product.pairs()[i];
            if a != lt.y[e] || t != s {
                tables_match = false;
                break;
            }
        }
    }
    if tables_match {
        tables_match = l.semigroup.mul_table() == product.semigroup().mul_table();
    }
    let tau_strictness = strictness_map(&tau);
    let point_strictness = minimum_idempotent_map(lt);
    let strictness_agrees = tau_strictness == point_strictness;
    let (lm, msub, strict_parts_match, fully_strict) =
        if let (Ok(alpha), Ok(emap)) = (&tau_strictness, &point_strictness) {
            let msub = product.m_subsemigroup(alpha);
            let lm = build_lm(lt, &l, emap);
            let matched = lm.indices == msub.indices
                && lm.semigroup.mul_table() == msub.semigroup.mul_table();
            let fully = product.is_fully_strict(&msub);
            (Some(lm), Some(msub), Some(matched), Some(fully))
        } else {
            (None, None, None, None)
        };
    Ok(ActionBridge {
        tau,
        y_semilattice,
        l,
        product,
        tables_match,
        tau_strictness,
        point_strictness,
        strictness_agrees,
        lm,
        msub,
        strict_parts_match,
        fully_strict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShrinkError {
    #[error("shrinking needs a global action")]
    NotGlobal,
    #[error("subset point {point} out of range for ground size {m}")]
    BadSubset { point: usize, m: usize },
    #[error("restriction to the subset is not strict: {0}")]
    NotStrict(#[from] StrictnessError),
    #[error("restriction maps are not ideal isomorphisms of the subset semilattice: {0}")]
    Action(#[from] crate::action::ActionError),
    #[error("subset point {y} does not lie in the orbit of the subset")]
    YEscapesOrbit { y: usize },
    #[error("orbit of the subset is not invariant: map of {t} leaves it")]
    NotInvariant { t: usize },
}

/// A globalization cut down to the orbit of the subset.
#[derive(Debug, Clone)]
pub struct Shrunk {
    /// Global action on the orbit points, reindexed to `0..x_points.len()`.
    pub action: PartialAction,
    /// Orbit points as indices into the original ground set, ascending.
    pub x_points: Vec<usize>,
    /// Positions of the subset inside `x_points`.
    pub y_positions: Vec<usize>,
}

/// Cuts a global action down to the orbit of a subset whose restriction is
/// strict, producing a smaller globalization of the same restriction.
pub fn shrink_globalization(
    phi: &PartialAction,
    y: &[usize],
    y_semilattice: &Semilattice,
) -> Result<Shrunk, ShrinkError> {
    if !phi.is_global() {
        return Err(ShrinkError::NotGlobal);
    }
    let mut y: Vec<usize> = y.to_vec();
    y.sort_unstable();
    y.dedup();
    for &point in &y {
        if point >= phi.ground_size() {
            return Err(ShrinkError::BadSubset {
                point,
                m: phi.ground_size(),
            });
        }
    }
    let restriction = phi.restrict(&y).expect("checked global and in range");
    let tau = restriction.action.over_semilattice(y_semilattice.clone())?;
    strictness_map(&tau)?;
    let n = phi.source().n();
    let mut orbit = vec![false; phi.ground_size()];
    for t in 0..n {
        for &point in &y {
            if let Some(img) = phi.map(t).apply(point) {
                orbit[img] = true;
            }
        }
    }
    for &point in &y {
        if !orbit[point] {
            return Err(ShrinkError::YEscapesOrbit { y: point });
        }
    }
    let x_points: Vec<usize> = (0..phi.ground_size()).filter(|&p| orbit[p]).collect();
    for t in 0..n {
        for &p in &x_points {
            if let Some(img) = phi.map(t).apply(p) {
                if !orbit[img] {
                    return Err(ShrinkError::NotInvariant { t });
                }
            }
        }
    }
    let cut = phi.restrict(&x_points).expect("checked global and in range");
    assert!(
        cut.action.is_global(),
        "restriction to an invariant subset stays global"
    );
    let y_positions: Vec<usize> = y
        .iter()
        .map(|&p| x_points.binary_search(&p).expect("subset is in the orbit"))
        .collect();
    // The shrunk action must still restrict to the original partial action.
    let again = cut
        .action
        .restrict(&y_positions)
        .expect("global and in range");
    assert_eq!(
        again.action.maps(),
        tau.maps(),
        "shrinking must not disturb the restriction"
    );
    Ok(Shrunk {
        action: cut.action,
        x_points,
        y_positions,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InduceOrderError {
    #[error("inducing an order needs a global action")]
    NotGlobal,
    #[error("point {x} is not reached from the subset, so reflexivity fails")]
    NotGenerated { x: usize },
    #[error("induced relation is not antisymmetric on {x1} and {x2}")]
    NotAntisymmetric { x1: usize, x2: usize },
    #[error("induced relation is not transitive on {x1}, {x2}, {x3}")]
    NotTransitive { x1: usize, x2: usize, x3: usize },
    #[error("map of {t} is not an isomorphism of induced order ideals at {a}, {b}")]
    MapsNotIso { t: usize, a: usize, b: usize },
    #[error("domain of the map of {t} is not an induced order ideal: {below} <= {inside} missing")]
    DomNotIdeal {
        t: usize,
        inside: usize,
        below: usize,
    },
    #[error("subset is not an ideal of the induced order: {below} <= {inside} escapes it")]
    SubsetNotIdeal { inside: usize, below: usize },
    #[error("induced order disagrees with the subset semilattice at {y1}, {y2}")]
    DisagreesOnSubset { y1: usize, y2: usize },
}

/// The candidate partial order on the ground of a global action generated
/// by a subset semilattice: x1 <= x2 when some map sends comparable subset
/// points onto x1 and x2. Fails with a witness when the relation is not a
/// partial order, when a map fails to respect it, or when the subset does
/// not sit in it the way it sits in its own semilattice.
pub fn induce_order(
    phi: &PartialAction,
    y_positions: &[usize],
    y_semilattice: &Semilattice,
) -> Result<Poset, InduceOrderError> {
    if !phi.is_global() {
        return Err(InduceOrderError::NotGlobal);
    }
    let m = phi.ground_size();
    let n = phi.source().n();
    let mut le = BinaryRelation::empty(m);
    for t in 0..n {
        for (i, &yi) in y_positions.iter().enumerate() {
            for (j, &yj) in y_positions.iter().enumerate() {
                if !y_semilattice.le(i, j) {
                    continue;
                }
                if let (Some(a), Some(b)) = (phi.map(t).apply(yi), phi.map(t).apply(yj)) {
                    le.set(a, b);
                }
            }
        }
    }
    for x in 0..m {
        if !le.contains(x, x) {
            return Err(InduceOrderError::NotGenerated { x });
        }
    }
    for x1 in 0..m {
        for x2 in 0..m {
            if x1 != x2 && le.contains(x1, x2) && le.contains(x2, x1) {
                return Err(InduceOrderError::NotAntisymmetric { x1, x2 });
            }
        }
    }
    for x1 in 0..m {
        for x2 in 0..m {
            if !le.contains(x1, x2) {
                continue;
            }
            for x3 in 0..m {
                if le.contains(x2, x3) && !le.contains(x1, x3) {
                    return Err(InduceOrderError::NotTransitive { x1, x2, x3 });
                }
            }
        }
    }
    let poset = Poset { n: m, le };
    for t in 0..n {
        let map = phi.map(t);
        let dom = map.dom();
        for &inside in &dom {
            for below in 0..m {
                if poset.le(below, inside) && !map.defined_at(below) {
                    return Err(InduceOrderError::DomNotIdeal { t, inside, below });
                }
            }
        }
        for &a in &dom {
            for &b in &dom {
                let (fa, fb) = (map.apply(a).unwrap(), map.apply(b).unwrap());
                if poset.le(a, b) != poset.le(fa, fb) {
                    return Err(InduceOrderError::MapsNotIso { t, a, b });
                }
            }
        }
    }
    let in_y = |p: usize| y_positions.contains(&p);
    for &inside in y_positions {
        for below in 0..m {
            if poset.le(below, inside) && !in_y(below) {
                return Err(InduceOrderError::SubsetNotIdeal { inside, below });
            }
        }
    }
    for (i, &yi) in y_positions.iter().enumerate() {
        for (j, &yj) in y_positions.iter().enumerate() {
            if y_semilattice.le(i, j) != poset.le(yi, yj) {
                return Err(InduceOrderError::DisagreesOnSubset { y1: i, y2: j });
            }
        }
    }
    Ok(poset)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildLTripleError {
    #[error("the partial action must be semilattice-valued")]
    NotSemilatticeValued,
    #[error("assignment of maps is not order-preserving at source pair ({s},{t})")]
    NotOrderPreserving { s: usize, t: usize },
    #[error("the partial action is not strict: {0}")]
    NotStrict(StrictnessError),
    #[error("map of {t} has empty domain")]
    EmptyDomain { t: usize },
    #[error("globalization witness rejected: {reason}")]
    BadWitness { reason: String },
    #[error(transparent)]
    Shrink(#[from] ShrinkError),
    #[error(transparent)]
    Induce(#[from] InduceOrderError),
    #[error(transparent)]
    Triple(#[from] LTripleError),
}

/// A triple built from a partial action and a globalization witness, with
/// the certificates tying it back to the action.
#[derive(Debug, Clone)]
pub struct BuiltLTriple {
    pub ltriple: LTriple,
    /// Orbit points, as indices into the witness ground set.
    pub x_points: Vec<usize>,
    /// Positions in the triple's poset of the images of the original
    /// ground points, in original ground order.
    pub y_positions: Vec<usize>,
    pub bridge: ActionBridge,
}

fn permuted_semilattice(sl: &Semilattice, new_to_old: &[usize]) -> Semilattice {
    let mut old_to_new = vec![0; new_to_old.len()];
    for (new, &old) in new_to_old.iter().enumerate() {
        old_to_new[old] = new;
    }
    let table: Vec<Vec<usize>> = new_to_old
        .iter()
        .map(|&a| {
            new_to_old
                .iter()
                .map(|&b| old_to_new[sl.meet(a, b)])
                .collect()
        })
        .collect();
    Semilattice::from_meet_table(&table, None).expect("permutation of a semilattice")
}

/// Reconstructs a triple from a strict, order-preserving partial action
/// with nonempty domains and an explicit globalization witness: a global
/// action on a larger ground set together with an injection of the
/// action's ground set into it under which the witness restricts to the
/// action.
pub fn build_ltriple(
    tau: &PartialAction,
    witness: &PartialAction,
    iota: &[usize],
) -> Result<BuiltLTriple, BuildLTripleError> {
    let sl = match tau.target() {
        ActionTarget::Semilattice(sl) => sl,
        ActionTarget::Set => return Err(BuildLTripleError::NotSemilatticeValued),
    };
    if let Some((s, t)) = tau.order_preserving_witness() {
        return Err(BuildLTripleError::NotOrderPreserving { s, t });
    }
    strictness_map(tau).map_err(BuildLTripleError::NotStrict)?;
    for t in 0..tau.source().n() {
        if tau.map(t).defined_count() == 0 {
            return Err(BuildLTripleError::EmptyDomain { t });
        }
    }
    if !witness.is_global() {
        return Err(BuildLTripleError::BadWitness {
            reason: "witness action is not global".into(),
        });
    }
    if witness.source().mul_table() != tau.source().mul_table() {
        return Err(BuildLTripleError::BadWitness {
            reason: "witness acts for a different semigroup".into(),
        });
    }
    let m = tau.ground_size();
    if iota.len() != m {
        return Err(BuildLTripleError::BadWitness {
            reason: format!("injection lists {} points, ground has {m}", iota.len()),
        });
    }
    let mut seen = vec![false; witness.ground_size()];
    for &p in iota {
        if p >= witness.ground_size() {
            return Err(BuildLTripleError::BadWitness {
                reason: format!("injection point {p} out of witness ground"),
            });
        }
        if seen[p] {
            return Err(BuildLTripleError::BadWitness {
                reason: format!("injection repeats point {p}"),
            });
        }
        seen[p] = true;
    }
    let iota_pos = |img: usize| iota.iter().position(|&p| p == img);
    for t in 0..tau.source().n() {
        for y in 0..m {
            let expected = tau.map(t).apply(y);
            let actual = witness.map(t).apply(iota[y]).and_then(iota_pos);
            if expected != actual {
                return Err(BuildLTripleError::BadWitness {
                    reason: format!(
                        "witness restricted to the injected ground differs at element {t}, point {y}"
                    ),
                });
            }
        }
    }
    // Work on the sorted image of the injection; the subset semilattice is
    // carried along the sorting permutation.
    let mut sorted: Vec<usize> = iota.to_vec();
    sorted.sort_unstable();
    let rank_to_orig: Vec<usize> = sorted
        .iter()
        .map(|&p| iota.iter().position(|&q| q == p).unwrap())
        .collect();
    let sorted_sl = permuted_semilattice(sl, &rank_to_orig);
    let shrunk = shrink_globalization(witness, &sorted, &sorted_sl)?;
    let poset = induce_order(&shrunk.action, &shrunk.y_positions, &sorted_sl)?;
    let ltriple = LTriple::validate(poset, &shrunk.y_positions, shrunk.action.clone())?;
    let bridge = ltriple_to_action(&ltriple)?;
    // The bridge's restricted action must be the original one, up to the
    // sorting permutation of ground points.
    for t in 0..tau.source().n() {
        for (rank, &orig) in rank_to_orig.iter().enumerate() {
            let expected = tau.map(t).apply(orig).map(|img| {
                rank_to_orig
                    .iter()
                    .position(|&o| o == img)
                    .expect("permutation covers the ground")
            });
            if bridge.tau.map(t).apply(rank) != expected {
                return Err(BuildLTripleError::BadWitness {
                    reason: format!("rebuilt restriction differs at element {t}"),
                });
            }
        }
    }
    let y_positions_in_ground_order: Vec<usize> = (0..m)
        .map(|y| {
            let rank = sorted.binary_search(&iota[y]).unwrap();
            shrunk.y_positions[rank]
        })
        .collect();
    Ok(BuiltLTriple {
        ltriple,
        x_points: shrunk.x_points,
        y_positions: y_positions_in_ground_order,
        bridge,
    })
}

/// Node-budgeted depth-first search for a globalization witness on the
/// ground set extended by up to `max_extra` fresh points. Returns the
/// witness and the identity injection on success. The search is exact up
/// to the budget: `None` means none was found within it.
pub fn search_globalization(
    tau: &PartialAction,
    max_extra: usize,
    node_budget: u64,
) -> Option<(PartialAction, Vec<usize>)> {
    let src = tau.source().clone();
    let n = src.n();
    let m = tau.ground_size();
    let mut budget = node_budget;
    for extra in 0..=max_extra {
        let g = m + extra;
        let mut maps: Vec<Option<PartialBijection>> = vec![None; n];
        if let Some(found) = assign(&src, tau, g, &mut maps, 0, &mut budget) {
            let action = PartialAction::validate(src, found, ActionTarget::Set)
                .expect("search checked the axioms");
            assert!(action.is_global());
            return Some((action, (0..m).collect()));
        }
        if budget == 0 {
            return None;
        }
    }
    return None;

    fn consistent(
        src: &FiniteInverseSemigroup,
        maps: &[Option<PartialBijection>],
        upto: usize,
    ) -> bool {
        for s in 0..=upto {
            for t in 0..=upto {
                let p = src.mul(s, t);
                if p > upto {
                    continue;
                }
                let (Some(fs), Some(ft), Some(fp)) = (&maps[s], &maps[t], &maps[p]) else {
                    continue;
                };
                if &fs.compose(ft).unwrap() != fp {
                    return false;
                }
            }
        }
        true
    }

    fn candidates(
        tau: &PartialAction,
        element: usize,
        g: usize,
    ) -> Vec<PartialBijection> {
        // Extensions of the map of `element` to the enlarged ground whose
        // restriction back to the original points is exactly that map: old
        // points may additionally go to fresh points, fresh points may go
        // anywhere unused.
        let m = tau.ground_size();
        let base = tau.map(element);
        let mut out = Vec::new();
        let mut img: Vec<Option<usize>> = vec![None; g];
        let mut used = vec![false; g];
        fn rec(
            point: usize,
            g: usize,
            m: usize,
            base: &PartialBijection,
            img: &mut Vec<Option<usize>>,
            used: &mut Vec<bool>,
            out: &mut Vec<PartialBijection>,
        ) {
            if point == g {
                out.push(PartialBijection::new(g, img.clone()).unwrap());
                return;
            }
            let choices: Vec<Option<usize>> = if point < m {
                match base.apply(point) {
                    Some(y) => vec![Some(y)],
                    None => std::iter::once(None)
                        .chain((m..g).map(Some))
                        .collect(),
                }
            } else {
                std::iter::once(None).chain((0..g).map(Some)).collect()
            };
            for choice in choices {
                if let Some(y) = choice {
                    if used[y] {
                        continue;
                    }
                    used[y] = true;
                    img[point] = Some(y);
                    rec(point + 1, g, m, base, img, used, out);
                    used[y] = false;
                    img[point] = None;
                } else {
                    img[point] = None;
                    rec(point + 1, g, m, base, img, used, out);
                }
            }
        }
        rec(0, g, m, base, &mut img, &mut used, &mut out);
        out
    }

    fn assign(
        src: &FiniteInverseSemigroup,
        tau: &PartialAction,
        g: usize,
        maps: &mut Vec<Option<PartialBijection>>,
        element: usize,
        budget: &mut u64,
    ) -> Option<Vec<PartialBijection>> {
        if element == src.n() {
            return Some(maps.iter().map(|f| f.clone().unwrap()).collect());
        }
        if *budget == 0 {
            return None;
        }
        let forced = src.inv(element) < element;
        let options: Vec<PartialBijection> = if forced {
            let f = maps[src.inv(element)].as_ref().unwrap().inverse();
            // The forced inverse must still restrict correctly.
            let ok = (0..tau.ground_size())
                .all(|y| {
                    let expected = tau.map(element).apply(y);
                    let actual = f.apply(y).filter(|&img| img < tau.ground_size());
                    expected == actual
                });
            if ok {
                vec![f]
            } else {
                vec![]
            }
        } else {
            candidates(tau, element, g)
        };
        for f in options {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            maps[element] = Some(f);
            if consistent(src, maps, element) {
                if let Some(found) = assign(src, tau, g, maps, element + 1, budget) {
                    return Some(found);
                }
            }
            maps[element] = None;
        }
        None
    }
}
