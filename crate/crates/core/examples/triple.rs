//! Three effects that coexist in pairs but not all together.

use qprep::coexistence::{triple_witness, DykstraConfig};
use qprep::operator::basis_vector;

fn main() -> qprep::Result<()> {
    let report = triple_witness(&basis_vector(2, 0), &basis_vector(2, 1), &DykstraConfig::default())?;
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(())
}
