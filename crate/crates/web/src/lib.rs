//! Browser bindings for lgmirror. Each call takes the text of a spec file
//! and returns the same report the command line prints.

use lgmirror::cli::{execute, render_text, Command};
use lgmirror::symmetry::DEFAULT_CAP;
use wasm_bindgen::prelude::*;

fn report(command: Command, spec: &str) -> String {
    match execute(command, spec, DEFAULT_CAP, false) {
        Ok(doc) => render_text(&doc),
        Err(e) => format!("error[{}]: {}\n", e.kind(), e),
    }
}

/// Weights of `W` and its transpose.
#[wasm_bindgen]
pub fn dual_polynomial(spec: &str) -> String {
    report(Command::DualPoly, spec)
}

/// Both Hodge diamonds, the verdict, and the restricted mirror map.
#[wasm_bindgen]
pub fn mirror_check(spec: &str) -> String {
    report(Command::MirrorCheck, spec)
}

/// Parity condition over the subgroups of `G`.
#[wasm_bindgen]
pub fn pc_check(spec: &str) -> String {
    report(Command::PcCheck, spec)
}
