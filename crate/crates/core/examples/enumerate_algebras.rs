//! Exhaustive enumeration up to isomorphism.
//!
//! Enumeration fixes element 0 as the unit, prunes partial tables against
//! the exchange axiom, and reduces to canonical representatives (the
//! lexicographically least relabeling among unit-fixing permutations).
//! Orbit sizes of the representatives partition the labeled count, which
//! the example verifies for every size it prints.

use bealg::enumerate::{count_algebras, enumerate_algebras, orbit_size, EnumerationConfig};

fn main() {
    println!("size | labeled | canonical | transitive | self-distributive");
    for size in 1..=4 {
        let labeled = count_algebras(&EnumerationConfig::all_of_size(size)).unwrap();
        let canonical = count_algebras(&EnumerationConfig {
            up_to_iso: true,
            ..EnumerationConfig::all_of_size(size)
        })
        .unwrap();
        let transitive = count_algebras(&EnumerationConfig {
            transitive_only: true,
            ..EnumerationConfig::all_of_size(size)
        })
        .unwrap();
        let selfdist = count_algebras(&EnumerationConfig {
            self_distributive_only: true,
            ..EnumerationConfig::all_of_size(size)
        })
        .unwrap();
        println!("{size:>4} | {labeled:>7} | {canonical:>9} | {transitive:>10} | {selfdist}");
    }

    let reps = enumerate_algebras(&EnumerationConfig {
        up_to_iso: true,
        ..EnumerationConfig::all_of_size(3)
    })
    .unwrap();
    println!("\nsize-3 representatives with orbit sizes:");
    let mut total = 0;
    for alg in &reps {
        let orbit = orbit_size(alg);
        total += orbit;
        let rows: Vec<String> = alg
            .rows()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| alg.label(x))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        println!("  [{}] orbit {}", rows.join(" | "), orbit);
    }
    let labeled = count_algebras(&EnumerationConfig::all_of_size(3)).unwrap();
    assert_eq!(total, labeled, "orbits partition the labeled algebras");
    println!("orbit sizes sum to the labeled count: {total} = {labeled}");
}
