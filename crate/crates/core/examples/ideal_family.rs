//! Deciding and enumerating crisp ideals.
//!
//! Runs both ideal formulations on hand-picked subsets of a five-element
//! algebra, then enumerates the full ideal family J(X).

use bealg::fixtures;
use bealg::ideal::{enumerate_ideals, is_ideal_def, is_ideal_lemma};
use bealg::subset::Subset;

fn main() {
    let alg = fixtures::alpha5();
    println!("algebra on {{{}}}", alg.names().join(", "));

    for labels in ["1", "1,m", "1,α,h", "1,m,0", "α,h"] {
        let s = match Subset::from_labels(&alg, labels) {
            Ok(s) => s,
            Err(e) => {
                println!("{labels}: rejected ({e})");
                continue;
            }
        };
        let d = is_ideal_def(&alg, &s).unwrap();
        let l = is_ideal_lemma(&alg, &s).unwrap();
        assert_eq!(d.holds, l.holds, "formulations must agree");
        match &d.witness {
            None => println!("{}: ideal (both formulations)", s.labels(&alg)),
            Some(w) => println!("{}: not an ideal, {}", s.labels(&alg), w.describe(&alg)),
        }
    }

    let family = enumerate_ideals(&alg).unwrap();
    println!("\nJ(X) has {} members, by cardinality:", family.len());
    for s in family.subsets() {
        println!("  {}", s.labels(&alg));
    }
}
