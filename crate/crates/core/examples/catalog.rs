// Exhaustive enumeration of small inducing data, checked against the oracle.

use knapp_stein::oracle::{catalog, FuzzSummary};
use knapp_stein::GroupFamily;

fn main() {
    for family in GroupFamily::ALL {
        let rank = if family.is_unitary() { 1 } else { 2 };
        let records = catalog(family, 2, rank).unwrap();
        let summary = FuzzSummary::from_records(&records);
        println!("{family}: {}", serde_json::to_string(&summary).unwrap());
    }
}
