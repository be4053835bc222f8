// The three GSp instances with 8, 4 and 2 elliptic constituents.

use knapp_stein::{bundled, report::analyze};

fn main() {
    for name in ["EX_A", "EX_B", "EX_C"] {
        let datum = bundled(name).expect("bundled instance");
        let report = analyze(&datum, true).expect("within caps");
        println!("== {name}");
        print!("{}", report.to_text());
    }
}
