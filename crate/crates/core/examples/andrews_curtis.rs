//! Bounded Andrews–Curtis search on the Akbulut–Kirby presentations.

use trisect::gprc_ac::{ab_det, ac_search, ak_presentation, AcSearchConfig, AcSearchResult};

fn main() -> trisect::Result<()> {
    let config = AcSearchConfig {
        max_states: 50_000,
        ..AcSearchConfig::new(32, 20)
    };
    for n in 1..=2 {
        let p = ak_presentation(n)?;
        println!("P_{n}: {p}  (ab_det = {})", ab_det(&p));
        let outcome = ac_search(&p, &config);
        match &outcome.result {
            AcSearchResult::Trivialized { path, .. } => {
                for m in path {
                    println!("  {m}");
                }
            }
            other => println!("  {other:?}"),
        }
        let v = outcome.verdict();
        println!(
            "  [{}] {}  ({} states)",
            v.status, v.reason, outcome.stats.states_visited
        );
    }
    Ok(())
}
