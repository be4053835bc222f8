// A small seeded fuzz run.

use knapp_stein::oracle::{fuzz, FuzzConfig};

fn main() {
    let run = fuzz(&FuzzConfig {
        count: 200,
        seed: 7,
        ..Default::default()
    })
    .unwrap();
    println!("{}", serde_json::to_string_pretty(&run.summary).unwrap());
    if let Some(first) = run.records.first() {
        println!("{}", serde_json::to_string(first).unwrap());
    }
}
