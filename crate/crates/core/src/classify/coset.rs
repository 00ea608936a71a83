//! The index-2 coset argument.
//!
//! Let `H` have index 2 in `G`. A generating pair cannot lie inside `H`, and
//! `gh` lies outside `H` exactly when one of `g`, `h` does. If every
//! admissible placement puts `gh` in a coset without involutions, no
//! `(2, m, n)` generating pair exists.

use serde::{Deserialize, Serialize};

use crate::perm::{ClassData, PermGroup};

/// Which cosets of `H` contain elements of a given order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cosets {
    pub inside: bool,
    pub outside: bool,
}

impl Cosets {
    fn get(&self, outside: bool) -> bool {
        if outside {
            self.outside
        } else {
            self.inside
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetReport {
    pub m: Cosets,
    pub n: Cosets,
    pub involutions: Cosets,
    /// Placements `(g outside, h outside)` that survive.
    pub admissible: Vec<(bool, bool)>,
    pub refuted: bool,
}

/// Locates the elements of each order relative to the index-2 subgroup `sub`.
pub fn coset_orders(classes: &ClassData, sub: &PermGroup, order: u64) -> Cosets {
    let mut c = Cosets::default();
    for i in classes.classes_of_order(order) {
        if sub.chain().contains(&classes.class(i).representative) {
            c.inside = true;
        } else {
            c.outside = true;
        }
    }
    c
}

pub fn coset_parity(classes: &ClassData, sub: &PermGroup, m: u64, n: u64) -> CosetReport {
    let cm = coset_orders(classes, sub, m);
    let cn = coset_orders(classes, sub, n);
    let inv = coset_orders(classes, sub, 2);
    let mut admissible = Vec::new();
    for (g_out, h_out) in [(true, false), (false, true), (true, true)] {
        let product_out = g_out != h_out;
        if cm.get(g_out) && cn.get(h_out) && inv.get(product_out) {
            admissible.push((g_out, h_out));
        }
    }
    CosetReport {
        m: cm,
        n: cn,
        involutions: inv,
        refuted: admissible.is_empty(),
        admissible,
    }
}
