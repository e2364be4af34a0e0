//! The full verification campaign, scaled down to run in seconds.
//!
//! Exhausts every BE-algebra of size at most 3 against every N-function
//! on a step-1/4 grid and a four-point k grid, checking each decision
//! procedure against its independent formulations and every consequence
//! bound. Violations would surface as replayable counterexamples; this
//! universe has none, so the interesting output is the findings.

use bealg::campaign::{run_campaign, CampaignConfig};

fn main() {
    let cfg = CampaignConfig {
        max_size: 3,
        exhaustive_max_size: 3,
        ..CampaignConfig::default()
    };
    let report = run_campaign(&cfg).unwrap();

    for (size, s) in &report.universe {
        println!(
            "size {size}: {} labeled / {} canonical ({} transitive, {} self-distributive)",
            s.labeled, s.canonical, s.transitive, s.self_distributive
        );
    }

    println!("\nchecks:");
    for (name, t) in &report.checks {
        println!(
            "  {name}: {} instances ({} passes, {} vacuous, {} violations)",
            t.instances, t.passes, t.vacuous, t.violations
        );
    }

    println!("\nfindings:");
    for f in &report.findings {
        println!("  [{}] {}", f.kind, f.detail);
    }

    println!(
        "\ntotal violations: {}; exit code this report maps to: {}",
        report.total_violations(),
        report.exit_code()
    );
    for (check, cxs) in &report.counterexamples {
        for cx in cxs {
            println!("counterexample for {check}: {}", cx.detail);
        }
    }
}
