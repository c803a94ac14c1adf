//! The bundled 6_2 example: its DGA, the projection used to refute the
//! unit-product claim for it, and the presentation of the quotient algebra.

use crate::cli::document::{parse_dga, parse_map, parse_rules};
use crate::dga::ChekanovDga;
use crate::obstruction::{RefutationPlan, Witness};
use crate::rewrite::RewriteSystem;

pub const K6_2_DGA: &str = include_str!("../data/k6_2.dga");
pub const K6_2_MAP: &str = include_str!("../data/k6_2.map");
pub const QUOTIENT_RULES: &str = include_str!("../data/quotient.rules");

/// DGA of the Legendrian 6_2 knot with 11 crossings.
pub fn k6_2() -> ChekanovDga {
    parse_dga(K6_2_DGA).expect("bundled DGA parses")
}

/// Substitutions `a3 -> a3 + 1`, `a11 -> a11 + a5` followed by
/// `a5 -> al`, `a10 -> be`, everything else to 0.
pub fn k6_2_plan() -> RefutationPlan {
    let dga = k6_2();
    parse_map(K6_2_MAP)
        .and_then(|doc| doc.bind(dga.algebra()))
        .expect("bundled map binds")
}

/// The system `be al -> 1` over the two-generator algebra.
pub fn quotient_rules() -> RewriteSystem {
    parse_rules(QUOTIENT_RULES).expect("bundled rules parse")
}

/// The two known witnesses for `1 in H_1 . H_-1` on 6_2:
/// `(a10, a5 a3, a1)` and `(a10, a11, a9)`.
pub fn k6_2_witnesses() -> [Witness; 2] {
    let dga = k6_2();
    let alg = dga.algebra();
    let w = |x: &str, y: &str, z: &str| Witness {
        x: alg.parse(x).expect("bundled witness"),
        y: alg.parse(y).expect("bundled witness"),
        z: alg.parse(z).expect("bundled witness"),
        p: 1,
        q: -1,
    };
    [w("a10", "a5 a3", "a1"), w("a10", "a11", "a9")]
}
