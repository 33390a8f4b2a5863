//! A small seeded campaign over plane curves and surfaces, printed as CSV.

use weilbench::campaign::{run_campaign, to_csv, CampaignConfig};
use weilbench::counting::DEFAULT_BUDGET;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for nvars in [2, 3] {
        let config = CampaignConfig {
            fields: vec!["5".into(), "3^2".into()],
            nvars,
            min_degree: 2,
            max_degree: 3,
            instances: 4,
            seed: 42,
            assert: None,
            budget: DEFAULT_BUDGET,
        };
        let report = run_campaign(&config)?;
        print!("{}", to_csv(&report)?);
        println!(
            "n = {nvars}: {} instances, {} violations, tightest {:?} ({:?})\n",
            report.summary.instances,
            report.summary.violations,
            report.summary.tightest_ratio,
            report.summary.tightest_formula
        );
    }
    Ok(())
}
