//! Command line verbs. Each verb resolves an instance (from a file or a
//! built-in family), runs one slice of the verification pipeline, and
//! renders a plain-text report. Exit codes: 0 when every check passed, 1
//! when some verified claim is false, 2 on unusable input.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use thiserror::Error;

use crate::action::{munn, ActionTarget, PartialAction};
use crate::congruence::{enumerate_congruences, Congruence, CongruenceError};
use crate::generate::{corpus, generate, Family, GenerateError};
use crate::instance::{parse_instance, resolve, InstanceError, InstanceFile, ResolveError};
use crate::ltriple::{build_ltriple, search_globalization};
use crate::pbij::PartialBijection;
use crate::product::{embedding_theorem, SemidirectProduct};
use crate::report::Report;
use crate::semigroup::{BinaryRelation, FiniteInverseSemigroup};

/// Largest instance the congruence-enumeration verbs accept; partition
/// counts grow too fast beyond this.
const ENUMERATION_BOUND: usize = 10;

/// Globalization search budget: extra ground points beyond the action's
/// own, and total search tree nodes.
const SEARCH_EXTRA: usize = 2;
const SEARCH_NODES: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    /// Validate every block of the instance.
    Validate,
    /// Natural partial order, compatibility, minimum group congruence,
    /// Green's R.
    Orders,
    /// Enumerate all congruences; flag the idempotent pure ones.
    Congruences,
    /// Quotient by the instance congruence.
    Quotient,
    /// Conjugation action on the idempotent semilattice.
    Munn,
    /// Lift the base action along the instance congruence.
    Lift,
    /// Semidirect product of the idempotent semilattice by the (lifted)
    /// conjugation action, with its strict part.
    Product,
    /// Certify the embedding into the semidirect product over the quotient.
    Embed,
    /// Decide whether the action extends to a global one.
    Globalizable,
    /// Reconstruct the poset triple behind the action and certify the
    /// round trip.
    Ltriple,
    /// Run the embedding certificate over the whole corpus and every
    /// idempotent pure congruence.
    CertifyAll,
}

impl Verb {
    fn name(self) -> &'static str {
        match self {
            Verb::Validate => "validate",
            Verb::Orders => "orders",
            Verb::Congruences => "congruences",
            Verb::Quotient => "quotient",
            Verb::Munn => "munn",
            Verb::Lift => "lift",
            Verb::Product => "product",
            Verb::Embed => "embed",
            Verb::Globalizable => "globalizable",
            Verb::Ltriple => "ltriple",
            Verb::CertifyAll => "certify-all",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "invsemi",
    about = "Finite inverse semigroups: partial actions, semidirect products, and embedding certificates",
    version
)]
pub struct Cli {
    #[arg(value_enum)]
    pub verb: Verb,
    /// Instance file to read.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Built-in family: in, chain, z, two-atoms.
    #[arg(long, value_name = "NAME", conflicts_with = "input")]
    pub family: Option<String>,
    /// Parameter of the family.
    #[arg(long, value_name = "K", requires = "family")]
    pub param: Option<usize>,
    /// Corpus size bound for certify-all.
    #[arg(long, value_name = "N", default_value_t = 8)]
    pub max_n: usize,
    /// Write the report to this file instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error("invalid instance: {0}")]
    Resolve(#[from] ResolveError),
    #[error("{0}")]
    Enumeration(#[from] CongruenceError),
    #[error("{0}")]
    Usage(String),
}

/// Runs a verb to a rendered report plus exit code. Input problems come
/// back as a one-line error message with code 2.
pub fn run(cli: &Cli) -> (String, i32) {
    match execute(cli) {
        Ok(report) => (report.render(), report.exit_code()),
        Err(e) => (format!("error: {e}\n"), 2),
    }
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    match cli.verb {
        Verb::Validate => verb_validate(cli),
        Verb::Orders => verb_orders(cli),
        Verb::Congruences => verb_congruences(cli),
        Verb::Quotient => verb_quotient(cli),
        Verb::Munn => verb_munn(cli),
        Verb::Lift => verb_lift(cli),
        Verb::Product => verb_product(cli),
        Verb::Embed => verb_embed(cli),
        Verb::Globalizable => verb_globalizable(cli),
        Verb::Ltriple => verb_ltriple(cli),
        Verb::CertifyAll => verb_certify_all(cli),
    }
}

fn load(cli: &Cli) -> Result<Option<InstanceFile>, CliError> {
    if let Some(path) = &cli.input {
        return Ok(Some(parse_instance(path)?));
    }
    if let Some(name) = &cli.family {
        let family: Family = name.parse()?;
        return Ok(Some(generate(family, cli.param)?));
    }
    Ok(None)
}

fn require_file(cli: &Cli) -> Result<InstanceFile, CliError> {
    load(cli)?.ok_or_else(|| {
        CliError::Usage(format!(
            "{} needs --input FILE or --family NAME",
            cli.verb.name()
        ))
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn set_str(names: impl IntoIterator<Item = String>) -> String {
    format!(
        "{{{}}}",
        names.into_iter().collect::<Vec<_>>().join(",")
    )
}

fn classes_str(rho: &Congruence, s: &FiniteInverseSemigroup) -> String {
    rho.classes()
        .iter()
        .map(|cl| set_str(cl.iter().map(|&x| s.name(x))))
        .collect::<Vec<_>>()
        .join(" ")
}

fn pbij_str(f: &PartialBijection, name: &dyn Fn(usize) -> String) -> String {
    if f.defined_count() == 0 {
        return "empty".into();
    }
    if f.is_partial_identity() {
        return format!("identity on {}", set_str(f.dom().into_iter().map(name)));
    }
    let moves: Vec<String> = f
        .dom()
        .into_iter()
        .map(|x| format!("{}>{}", name(x), name(f.apply(x).expect("x is in dom"))))
        .collect();
    format!("({})", moves.join(","))
}

fn point_namer(tau: &PartialAction) -> impl Fn(usize) -> String + '_ {
    move |p| match tau.target() {
        ActionTarget::Semilattice(sl) => sl.name(p),
        ActionTarget::Set => p.to_string(),
    }
}

fn relation_classes(rel: &BinaryRelation) -> Vec<Vec<usize>> {
    let n = rel.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for a in 0..n {
        if seen[a] {
            continue;
        }
        let class: Vec<usize> = (0..n).filter(|&b| rel.contains(a, b)).collect();
        for &b in &class {
            seen[b] = true;
        }
        out.push(class);
    }
    out
}

/// Lifts the conjugation action along the instance congruence, recording
/// the class layout and the join check. `None` means the join failed and
/// the report already carries the failing check.
fn lift_conjugation(
    s: &FiniteInverseSemigroup,
    rho: &Congruence,
    r: &mut Report,
) -> Option<PartialAction> {
    r.info(format!("classes {}", classes_str(rho, s)));
    r.info(format!(
        "congruence idempotent-pure: {}",
        yes(rho.is_idempotent_pure(s))
    ));
    match munn(s).lift(rho) {
        Ok(lifted) => {
            r.check("lift-join-defined", true);
            Some(lifted)
        }
        Err(e) => {
            r.check_with("lift-join-defined", false, e.to_string());
            None
        }
    }
}

fn verb_validate(cli: &Cli) -> Result<Report, CliError> {
    let file = require_file(cli)?;
    let mut r = Report::new();
    r.info(format!("order {}", file.n));
    match resolve(&file) {
        Ok(ri) => {
            r.check("semigroup-axioms", true);
            let s = &ri.semigroup;
            r.info(format!("idempotents {}", s.idempotents().len()));
            r.info(format!("group: {}", yes(s.is_group())));
            r.info(format!("e-unitary: {}", yes(s.is_e_unitary())));
            r.info(format!("f-inverse: {}", yes(s.f_inverse().holds)));
            if let Some(rho) = &ri.congruence {
                r.check("congruence-valid", true);
                r.info(format!("congruence classes: {}", classes_str(rho, s)));
                r.info(format!(
                    "congruence idempotent-pure: {}",
                    yes(rho.is_idempotent_pure(s))
                ));
            }
            if let Some(tau) = &ri.action {
                r.check("action-premorphism", true);
                r.info(format!("action ground {}", tau.ground_size()));
                r.info(format!("action global: {}", yes(tau.is_global())));
                r.info(format!(
                    "action order-preserving: {}",
                    yes(tau.is_order_preserving())
                ));
            }
            if let Some(subset) = &ri.subset {
                r.info(format!("subset size {}", subset.len()));
            }
        }
        Err(ResolveError::Semigroup(e)) => {
            r.check_with("semigroup-axioms", false, e.to_string());
        }
        Err(ResolveError::Congruence(e)) => {
            r.check("semigroup-axioms", true);
            r.check_with("congruence-valid", false, e.to_string());
        }
        Err(ResolveError::Action(e)) => {
            r.check("semigroup-axioms", true);
            if file.congruence.is_some() {
                r.check("congruence-valid", true);
            }
            r.check_with("action-premorphism", false, e.to_string());
        }
        Err(ResolveError::Maps(e)) => {
            r.check("semigroup-axioms", true);
            if file.congruence.is_some() {
                r.check("congruence-valid", true);
            }
            r.check_with("action-premorphism", false, e.to_string());
        }
    }
    Ok(r)
}

fn verb_orders(cli: &Cli) -> Result<Report, CliError> {
    let ri = resolve(&require_file(cli)?)?;
    let s = &ri.semigroup;
    let n = s.n();
    let mut r = Report::new();
    r.info(format!("order {n}"));
    r.info(format!(
        "idempotents {}",
        set_str(s.idempotents().into_iter().map(|e| s.name(e)))
    ));
    let strict: Vec<String> = (0..n)
        .flat_map(|a| {
            (0..n)
                .filter(move |&b| a != b)
                .map(move |b| (a, b))
        })
        .filter(|&(a, b)| s.leq(a, b))
        .map(|(a, b)| format!("{}<{}", s.name(a), s.name(b)))
        .collect();
    r.info(format!(
        "natural-order: {}",
        if strict.is_empty() {
            "none".to_string()
        } else {
            strict.join(" ")
        }
    ));
    let compat: Vec<String> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| s.compatible(a, b))
        .map(|(a, b)| format!("{}~{}", s.name(a), s.name(b)))
        .collect();
    r.info(format!(
        "compatible: {}",
        if compat.is_empty() {
            "none".to_string()
        } else {
            compat.join(" ")
        }
    ));
    let sigma = s.sigma();
    r.info(format!("sigma-classes: {}", classes_str(&sigma, s)));
    let green: Vec<String> = relation_classes(&s.green_r())
        .into_iter()
        .map(|cl| set_str(cl.into_iter().map(|x| s.name(x))))
        .collect();
    r.info(format!("green-r-classes: {}", green.join(" ")));
    r.info(format!("e-unitary: {}", yes(s.is_e_unitary())));
    r.info(format!("f-inverse: {}", yes(s.f_inverse().holds)));
    let order = s.natural_partial_order();
    r.check(
        "natural-order-is-partial-order",
        order.is_reflexive() && order.is_antisymmetric() && order.is_transitive(),
    );
    r.check(
        "sigma-quotient-is-group",
        sigma.quotient(s).semigroup.is_group(),
    );
    r.check(
        "natural-order-within-compatibility",
        order.is_subset_of(&s.compatibility_relation()),
    );
    let f = s.f_inverse();
    r.check(
        "f-inverse-implies-e-unitary",
        !f.holds || s.is_e_unitary(),
    );
    Ok(r)
}

fn verb_congruences(cli: &Cli) -> Result<Report, CliError> {
    let ri = resolve(&require_file(cli)?)?;
    let s = &ri.semigroup;
    let all = enumerate_congruences(s, ENUMERATION_BOUND)?;
    let mut r = Report::new();
    r.info(format!("order {}", s.n()));
    r.info(format!("congruences {}", all.len()));
    let pure_count = all.iter().filter(|c| c.is_idempotent_pure(s)).count();
    r.info(format!("idempotent-pure {pure_count}"));
    for (i, c) in all.iter().enumerate() {
        r.info(format!(
            "rho {i}: {} {}",
            classes_str(c, s),
            if c.is_idempotent_pure(s) {
                "pure"
            } else {
                "impure"
            }
        ));
    }
    r.check(
        "equality-and-universal-present",
        all.iter().any(|c| c.is_equality()) && all.iter().any(|c| c.is_universal()),
    );
    let sigma = s.sigma();
    let within = |c: &Congruence, coarser: &dyn Fn(usize, usize) -> bool| {
        (0..s.n()).all(|a| (0..s.n()).all(|b| !c.same(a, b) || coarser(a, b)))
    };
    r.check(
        "pure-congruences-within-sigma",
        all.iter()
            .filter(|c| c.is_idempotent_pure(s))
            .all(|c| within(c, &|a, b| sigma.same(a, b))),
    );
    r.check(
        "pure-congruences-within-compatibility",
        all.iter()
            .filter(|c| c.is_idempotent_pure(s))
            .all(|c| within(c, &|a, b| s.compatible(a, b))),
    );
    Ok(r)
}

fn verb_quotient(cli: &Cli) -> Result<Report, CliError> {
    let ri = resolve(&require_file(cli)?)?;
    let s = &ri.semigroup;
    let rho = ri.congruence.as_ref().ok_or_else(|| {
        CliError::Usage("quotient needs a congruence or congruence-gen block".into())
    })?;
    let q = rho.quotient(s);
    let mut r = Report::new();
    r.info(format!("order {}", s.n()));
    r.info(format!("classes {}", classes_str(rho, s)));
    r.info(format!("quotient-order {}", q.semigroup.n()));
    for a in 0..q.semigroup.n() {
        let row: Vec<String> = (0..q.semigroup.n())
            .map(|b| q.semigroup.name(q.semigroup.mul(a, b)))
            .collect();
        r.info(format!("row {}: {}", q.semigroup.name(a), row.join(" ")));
    }
    r.check(
        "quotient-axioms",
        FiniteInverseSemigroup::validate(&q.semigroup.mul_table(), None).is_ok(),
    );
    r.check(
        "projection-is-homomorphism",
        (0..s.n()).all(|a| {
            (0..s.n()).all(|b| {
                q.projection[s.mul(a, b)]
                    == q.semigroup.mul(q.projection[a], q.projection[b])
            })
        }),
    );
    r.check(
        "projection-recovers-congruence",
        (0..s.n()).all(|a| {
            (0..s.n()).all(|b| rho.same(a, b) == (q.projection[a] == q.projection[b]))
        }),
    );
    Ok(r)
}

fn verb_munn(cli: &Cli) -> Result<Report, CliError> {
    let ri = resolve(&require_file(cli)?)?;
    let s = &ri.semigroup;
    let tau = munn(s);
    let sl = tau
        .target()
        .semilattice()
        .expect("conjugation acts on the idempotent semilattice")
        .clone();
    let mut r = Report::new();
    r.info(format!("order {}", s.n()));
    r.info(format!("idempotents {}", sl.size()));
    let namer = point_namer(&tau);
    for t in 0..s.n() {
        r.info(format!("map {}: {}", s.name(t), pbij_str(tau.map(t), &namer)));
    }
    r.check("munn-global", tau.is_global());
    r.check(
        "munn-maps-are-ideal-isomorphisms",
        tau.maps().iter().all(|f| f.is_ideal_isomorphism(&sl)),
    );
    r.check(
        "munn-idempotent-maps-are-partial-identities",
        s.idempotents()
            .into_iter()
            .all(|e| tau.map(e).is_partial_identity()),
    );
    r.check("munn-order-preserving", tau.is_order_preserving());
    Ok(r)
}

fn verb_lift(cli: &Cli) -> Result<Report, CliError> {
    let ri = resolve(&require_file(cli)?)?;
    let s = &ri.semigroup;
    let rho = ri.congruence.as_ref().ok_or_else(|| {
        CliError::Usage("lift needs a congruence or congruence-gen block".into())
    })?;
    let base = match &ri.action {
        Some(a) => a.clone(),
        None => munn(s),
    };
    let mut r = Report::new();
    r.info(format!("order {}", s.n()));
    r.info(format!(
        "base action: {}",
        if ri.action.is_some() {
            "instance action block"
        } else {
            "conjugation on idempotents"
        }
    ));
    r.info(format!("classes {}", classes_str(rho, s)));
    r.info(format!(
        "congruence idempotent-pure: {}",
        yes(rho.is_idempotent_pure(s))
    ));
    match base.lift(rho) {
        Ok(lifted) => {
            r.check("lift-join-defined", true);
            let q = lifted.source();
            let namer = point_namer(&lifted);
            for c in 0..q.n() {
                r.info(format!(
                    "map {}: {}",
                    q.name(c),
                    pbij_str(lifted.map(c), &namer)
                ));
            }
            r.info(format!("lifted global: {}", yes(lifted.is_global())));
            match lifted.order_preserving_witness() {
                None => r.info("order-preserving: yes".to_string()),
                Some((a, b)) => r.info(format!(
                    "order-preserving: no, witness ({},{})",
                    q.name(a),
                    q.name(b)
                )),
            }
        }
        Err(e) => r.check_with("lift-join-defined", false, e.to_string()),
    }
    Ok(r)
}

fn verb_product(cli: &Cli) -> Result<Report, CliError> {
    let ri = resolve(&require_file(cli)?)?;
    let s = &ri.semigroup;
    let mut r = Report::new();
    r.info(format!("order {}", s.n()));
    if ri.action.is_some() {
        r.info("note: the instance action block is not used by this verb".to_string());
    }
    let tau = match &ri.congruence {
        Some(rho) => match lift_conjugation(s, rho, &mut r) {
            Some(t) => t,
            None => return Ok(r),
        },
        None => munn(s),
    };
    report_product(&tau, &mut r);
    Ok(r)
}

/// Builds the semidirect product of `tau` and writes the structure checks
/// shared by the product and embed verbs.
fn report_product(tau: &PartialAction, r: &mut Report) -> Option<SemidirectProduct> {
    let prod = match SemidirectProduct::build(tau) {
        Ok(p) => p,
        Err(e) => {
            r.check_with("product-axioms", false, e.to_string());
            return None;
        }
    };
    r.check("product-axioms", true);
    r.info(format!("product-order {}", prod.size()));
    let pair_names: Vec<String> = (0..prod.size())
        .map(|i| prod.semigroup().name(i))
        .collect();
    r.info(format!("pairs: {}", pair_names.join(" ")));
    match prod.strictness() {
        Ok(alpha) => {
            r.check("action-strict", true);
            let sl = tau
                .target()
                .semilattice()
                .expect("products are over semilattice-valued actions");
            let src = tau.source();
            let alpha_str: Vec<String> = alpha
                .iter()
                .enumerate()
                .map(|(p, &e)| format!("{}>{}", sl.name(p), src.name(e)))
                .collect();
            r.info(format!("strictness: {}", alpha_str.join(" ")));
            let msub = prod.m_subsemigroup(&alpha);
            r.info(format!("strict-part-order {}", msub.indices.len()));
            let member_names: Vec<String> = msub
                .indices
                .iter()
                .map(|&i| prod.semigroup().name(i))
                .collect();
            r.info(format!("strict-pairs: {}", member_names.join(" ")));
            let fully = prod.is_fully_strict(&msub);
            r.info(format!("fully-strict: {}", yes(fully)));
            if fully {
                match prod.check_group_remark(&msub) {
                    Ok(both) => {
                        r.check("strict-part-full-iff-group", true);
                        r.info(format!("strict part is everything: {}", yes(both)));
                    }
                    Err(v) => r.check_with(
                        "strict-part-full-iff-group",
                        false,
                        format!(
                            "strict part {} the product, source group: {}",
                            if v.m_equals_full { "equals" } else { "misses" },
                            yes(v.group)
                        ),
                    ),
                }
            }
        }
        Err(e) => r.check_with("action-strict", false, e.to_string()),
    }
    Some(prod)
}

fn verb_embed(cli: &Cli) -> Result<Report, CliError> {
    let ri = resolve(&require_file(cli)?)?;
    let s = &ri.semigroup;
    let mut r = Report::new();
    r.info(format!("order {}", s.n()));
    let rho = match &ri.congruence {
        Some(rho) => rho.clone(),
        None => {
            r.info("congruence: equality (default)".to_string());
            Congruence::equality(s)
        }
    };
    r.info(format!("classes {}", classes_str(&rho, s)));
    if !rho.is_idempotent_pure(s) {
        let witness = impure_witness(s, &rho);
        r.check_with("congruence-idempotent-pure", false, witness);
        return Ok(r);
    }
    r.check("congruence-idempotent-pure", true);
    let report = match embedding_theorem(s, &rho) {
        Ok(rep) => rep,
        Err(e) => {
            r.check_with("embedding-pipeline", false, e.to_string());
            return Ok(r);
        }
    };
    r.info(format!("quotient-order {}", report.quotient.n()));
    let namer = point_namer(&report.lifted);
    for c in 0..report.quotient.n() {
        r.info(format!(
            "map {}: {}",
            report.quotient.name(c),
            pbij_str(report.lifted.map(c), &namer)
        ));
    }
    r.info(format!("product-order {}", report.product.size()));
    r.info(format!(
        "strict-part-order {}",
        report.msub.indices.len()
    ));
    r.info(format!("fully-strict: {}", yes(report.fully_strict)));
    let phi_str: Vec<String> = report
        .phi
        .iter()
        .enumerate()
        .map(|(x, &p)| format!("{}>{}", s.name(x), report.product.semigroup().name(p)))
        .collect();
    r.info(format!("phi: {}", phi_str.join(" ")));
    for clause in &report.clauses {
        match &clause.witness {
            Some(w) if !clause.pass => r.check_with(clause.name, false, w.clone()),
            _ => r.check(clause.name, clause.pass),
        }
    }
    Ok(r)
}

/// First element whose class contains an idempotent without being one.
fn impure_witness(s: &FiniteInverseSemigroup, rho: &Congruence) -> String {
    for x in 0..s.n() {
        if s.is_idempotent(x) {
            continue;
        }
        for e in s.idempotents() {
            if rho.same(x, e) {
                return format!(
                    "class of {} contains non-idempotent {}",
                    s.name(e),
                    s.name(x)
                );
            }
        }
    }
    "no witness".to_string()
}

fn verb_globalizable(cli: &Cli) -> Result<Report, CliError> {
    let ri = resolve(&require_file(cli)?)?;
    let s = &ri.semigroup;
    let mut r = Report::new();
    r.info(format!("order {}", s.n()));
    let tau = match (&ri.action, &ri.congruence) {
        (Some(a), _) => {
            r.info("action: instance action block".to_string());
            a.clone()
        }
        (None, Some(rho)) => {
            r.info("action: lifted conjugation on idempotents".to_string());
            match lift_conjugation(s, rho, &mut r) {
                Some(t) => t,
                None => return Ok(r),
            }
        }
        (None, None) => {
            r.info("action: conjugation on idempotents".to_string());
            munn(s)
        }
    };
    r.info(format!("ground {}", tau.ground_size()));
    if tau.is_global() {
        r.info("already global".to_string());
        r.check("globalizable", true);
        return Ok(r);
    }
    let src = tau.source().clone();
    if let Some((a, b)) = tau.order_preserving_witness() {
        r.info(format!(
            "order-preserving: no, witness ({},{})",
            src.name(a),
            src.name(b)
        ));
        r.check_with(
            "globalizable",
            false,
            format!(
                "order preservation fails at ({},{})",
                src.name(a),
                src.name(b)
            ),
        );
        return Ok(r);
    }
    r.info("order-preserving: yes".to_string());
    match search_globalization(&tau, tau.ground_size() + SEARCH_EXTRA, SEARCH_NODES) {
        Some((witness, _iota)) => {
            r.info(format!("witness ground {}", witness.ground_size()));
            for t in 0..src.n() {
                r.info(format!(
                    "witness map {}: {}",
                    src.name(t),
                    pbij_str(witness.map(t), &|p| p.to_string())
                ));
            }
            r.check("globalizable", true);
        }
        None => r.check_with(
            "globalizable",
            false,
            format!(
                "no witness within search budget ({} extra points, {} nodes)",
                tau.ground_size() + SEARCH_EXTRA,
                SEARCH_NODES
            ),
        ),
    }
    Ok(r)
}

fn verb_ltriple(cli: &Cli) -> Result<Report, CliError> {
    let ri = resolve(&require_file(cli)?)?;
    let s = &ri.semigroup;
    let mut r = Report::new();
    r.info(format!("order {}", s.n()));
    let tau = match &ri.congruence {
        Some(rho) => match lift_conjugation(s, rho, &mut r) {
            Some(t) => t,
            None => return Ok(r),
        },
        None => munn(s),
    };
    let m = tau.ground_size();
    let (witness, iota): (PartialAction, Vec<usize>) = if tau.is_global() {
        (tau.clone(), (0..m).collect())
    } else {
        // A definitive obstruction beats a budget report.
        if let Some((a, b)) = tau.order_preserving_witness() {
            let src = tau.source();
            r.check_with(
                "ltriple-built",
                false,
                format!(
                    "no globalization: order preservation fails at ({},{})",
                    src.name(a),
                    src.name(b)
                ),
            );
            return Ok(r);
        }
        r.info("action not global; searching for a globalization witness".to_string());
        match search_globalization(&tau, m + SEARCH_EXTRA, SEARCH_NODES) {
            Some(found) => found,
            None => {
                r.check_with(
                    "ltriple-built",
                    false,
                    "no globalization witness within search budget".to_string(),
                );
                return Ok(r);
            }
        }
    };
    match build_ltriple(&tau, &witness, &iota) {
        Ok(built) => {
            r.check("ltriple-built", true);
            r.info(format!("poset size {}", built.ltriple.poset().n()));
            let y: Vec<String> = built
                .ltriple
                .subset()
                .iter()
                .map(|p| p.to_string())
                .collect();
            r.info(format!("ideal positions {}", y.join(" ")));
            r.info(format!("pair-semigroup-order {}", built.bridge.l.pairs.len()));
            r.check(
                "pair-semigroup-matches-product",
                built.bridge.tables_match,
            );
            r.check("strictness-maps-agree", built.bridge.strictness_agrees);
            r.check(
                "strict-parts-match",
                built.bridge.strict_parts_match.unwrap_or(false),
            );
            if let Some(lm) = &built.bridge.lm {
                r.info(format!("strict-part-order {}", lm.indices.len()));
            }
            if let Some(fully) = built.bridge.fully_strict {
                r.info(format!("fully-strict: {}", yes(fully)));
            }
        }
        Err(e) => r.check_with("ltriple-built", false, e.to_string()),
    }
    Ok(r)
}

fn verb_certify_all(cli: &Cli) -> Result<Report, CliError> {
    let mut r = Report::new();
    let instances: Vec<(String, FiniteInverseSemigroup)> = match load(cli)? {
        Some(file) => vec![("input".to_string(), resolve(&file)?.semigroup)],
        None => corpus(cli.max_n),
    };
    r.info(format!("instances {}", instances.len()));
    let mut lift_fail: Option<String> = None;
    let mut product_fail: Option<String> = None;
    let mut embed_fail: Option<String> = None;
    let mut certified = 0usize;
    for (name, s) in &instances {
        let all = enumerate_congruences(s, s.n())?;
        let pure: Vec<&Congruence> =
            all.iter().filter(|c| c.is_idempotent_pure(s)).collect();
        for rho in &pure {
            if let Err(e) = munn(s).lift(rho) {
                lift_fail.get_or_insert_with(|| {
                    format!("instance {name}, classes {}: {e}", classes_str(rho, s))
                });
            }
            match embedding_theorem(s, rho) {
                Ok(rep) => {
                    if rep.all_pass() {
                        certified += 1;
                    } else {
                        let failing = rep
                            .clauses
                            .iter()
                            .find(|c| !c.pass)
                            .expect("all_pass was false");
                        embed_fail.get_or_insert_with(|| {
                            format!(
                                "instance {name}, classes {}: clause {}{}",
                                classes_str(rho, s),
                                failing.name,
                                failing
                                    .witness
                                    .as_ref()
                                    .map(|w| format!(" ({w})"))
                                    .unwrap_or_default()
                            )
                        });
                    }
                }
                Err(e) => {
                    let text =
                        format!("instance {name}, classes {}: {e}", classes_str(rho, s));
                    product_fail.get_or_insert_with(|| text.clone());
                    embed_fail.get_or_insert(text);
                }
            }
        }
        r.info(format!(
            "instance {name}: order {}, congruences {}, idempotent-pure {}",
            s.n(),
            all.len(),
            pure.len()
        ));
    }
    r.info(format!("embeddings certified {certified}"));
    r.check_with(
        "corpus-lift-joins",
        lift_fail.is_none(),
        lift_fail.unwrap_or_default(),
    );
    r.check_with(
        "corpus-product-axioms",
        product_fail.is_none(),
        product_fail.unwrap_or_default(),
    );
    r.check_with(
        "corpus-embedding-theorem",
        embed_fail.is_none(),
        embed_fail.unwrap_or_default(),
    );
    Ok(r)
}
