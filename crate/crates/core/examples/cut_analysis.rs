//! N-function cuts over the critical-threshold grid.
//!
//! The cut C(f; t) is piecewise constant in t, changing only at function
//! values. Sweeping breakpoints and interval midpoints therefore covers
//! every distinct cut. The example prints the grid, each cut with its
//! ideal status, and compares against a reference table that deliberately
//! disagrees on the last interval.

use bealg::fixtures;
use bealg::grid::critical_thresholds;
use bealg::ideal::is_ideal_def;
use bealg::nfun::cut;
use bealg::rat::Rat;
use bealg::subset::Subset;

fn main() {
    let alg = fixtures::alpha5();
    let f = fixtures::alpha5_nfun();
    for (label, v) in f.labeled(&alg) {
        println!("f({label}) = {v}");
    }

    let grid = critical_thresholds(&f, None).unwrap();
    println!("\nbreakpoints:");
    for b in grid.breakpoints() {
        let sources: Vec<String> = b.sources.iter().map(|s| s.to_string()).collect();
        println!("  {} ({})", b.value, sources.join("+"));
    }

    println!("\ncuts (one threshold per constancy interval):");
    for t in grid.point_thresholds() {
        let c = cut(&f, &t).unwrap();
        let status = if c.is_empty() {
            "empty".to_string()
        } else if is_ideal_def(&alg, &c).unwrap().holds {
            "ideal".to_string()
        } else {
            "not an ideal".to_string()
        };
        println!("  C(f; {t}) = {} ({status})", c.labels(&alg));
    }

    println!("\nreference-table comparison:");
    for (lo, hi, display) in fixtures::alpha5_reference_cuts() {
        let mut claimed = Subset::empty(alg.size());
        for label in &display {
            claimed.insert(alg.index_of(label).unwrap());
        }
        let probe = Rat::mid(&lo, &hi);
        let computed = cut(&f, &probe).unwrap();
        if computed == claimed {
            println!("  [{lo}, {hi}]: agrees ({})", computed.labels(&alg));
        } else {
            println!(
                "  [{lo}, {hi}]: display claims {} but the computed cut is {}",
                claimed.labels(&alg),
                computed.labels(&alg)
            );
        }
    }
}
