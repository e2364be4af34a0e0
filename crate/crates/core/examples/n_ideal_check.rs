//! The N-ideal decision with failure witnesses and consequence bounds.
//!
//! An N-function is an N-ideal exactly when every nonempty cut is a crisp
//! ideal. One structure here passes; the other fails with a concrete
//! threshold and violating product. Accepted structures are then run
//! through the four inequality consequences every N-ideal satisfies.

use bealg::fixtures;
use bealg::nfun::{check_n_ideal_bounds, is_n_ideal};

fn main() {
    let a = fixtures::alpha5();
    let fa = fixtures::alpha5_nfun();
    let va = is_n_ideal(&a, &fa).unwrap();
    println!("alpha5 structure: N-ideal = {}", va.holds);

    let bounds = check_n_ideal_bounds(&a, &fa).unwrap();
    println!("  f(1) minimal over X: {}", bounds.unit_minimum.holds);
    println!(
        "  f((x∗y)∗y) ≤ f(x) everywhere: {}",
        bounds.double_product_bound.holds
    );
    println!(
        "  f(y) ≤ max{{f(x), f(x∗y)}} everywhere: {}",
        bounds.upper_max_bound.holds
    );
    println!(
        "  x ≤ y implies f(y) ≤ f(x): {}",
        bounds.order_antitone.holds
    );
    assert!(bounds.all_hold(), "every consequence holds on an N-ideal");

    let g = fixtures::gamma5();
    let fg = fixtures::gamma5_nfun();
    let vg = is_n_ideal(&g, &fg).unwrap();
    println!("\ngamma5 structure: N-ideal = {}", vg.holds);
    let w = vg.witness.expect("failing verdicts carry a witness");
    println!(
        "  witness: C(f; {}) = {} and {}",
        w.t,
        w.cut.labels(&g),
        w.violation.describe(&g)
    );

    // The bounds are necessary, not sufficient: one can still hold on a
    // non-N-ideal. They are reported independently for exactly that reason.
    let bounds = check_n_ideal_bounds(&g, &fg).unwrap();
    println!(
        "  consequence survey on the failing structure: unit {} / double product {} / upper max {} / antitone {}",
        bounds.unit_minimum.holds,
        bounds.double_product_bound.holds,
        bounds.upper_max_bound.holds,
        bounds.order_antitone.holds
    );
}
