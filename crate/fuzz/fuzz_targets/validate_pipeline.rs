#![no_main]

use invsemi::action::munn;
use invsemi::instance::{parse_instance_str, resolve};
use invsemi::product::{embedding_theorem, SemidirectProduct};
use libfuzzer_sys::fuzz_target;

// Whatever the validator accepts, the structural theorems must hold for.
// Sizes are capped so one execution stays cheap; past that the pipeline
// is the same code the CLI runs.
const MAX_ORDER: usize = 6;
const MAX_GROUND: usize = 6;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(file) = parse_instance_str(text) else {
        return;
    };
    if file.n > MAX_ORDER {
        return;
    }
    if file.action.as_ref().is_some_and(|a| a.ground > MAX_GROUND) {
        return;
    }
    let Ok(ri) = resolve(&file) else {
        return;
    };
    let s = &ri.semigroup;

    let conj = munn(s);
    let prod = SemidirectProduct::build(&conj)
        .expect("conjugation on idempotents yields a semidirect product");
    prod.strictness()
        .expect("an action on the idempotents of its source is strict");

    if let Some(rho) = &ri.congruence {
        if rho.is_idempotent_pure(s) {
            conj.lift(rho)
                .expect("classes of an idempotent pure congruence have joins");
            let report = embedding_theorem(s, rho)
                .expect("the embedding pipeline accepts a pure congruence");
            assert!(report.all_pass(), "an embedding clause failed");
        } else {
            let _ = conj.lift(rho);
        }
        if let Some(tau) = &ri.action {
            let _ = tau.lift(rho);
        }
    }
});
