//! Derive plan targets for the bundled prospect lists from random 19-well
//! portfolios, and print them as a `[targets]` block.
//!
//!     cargo run -p drillopt --example derive_targets

use std::path::Path;

use drillopt::io::load_prospects;
use drillopt::model::{derive_targets, DeriveSettings};

fn main() -> drillopt::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let list = load_prospects(&data.join("traps.csv"), &data.join("appraisals.csv"))?;
    println!("# {} projects loaded, {} rejected", list.projects.len(), list.rejected.len());

    let settings = DeriveSettings::default();
    let derived = derive_targets(&list.projects, &settings)?;
    println!(
        "# {} sampled portfolios, {:.1}% satisfy every derived constraint",
        settings.samples,
        100.0 * derived.joint_feasible_fraction
    );

    let mut block = toml::Table::new();
    block.insert("targets".into(), toml::Value::try_from(&derived.targets).expect("targets serialize"));
    print!("{}", toml::to_string(&block).expect("toml"));
    Ok(())
}
