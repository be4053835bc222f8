// Constituents, their signs, adapted generators and restriction fibers.

use knapp_stein::components::{adapted_generators, component_table, restriction_fibers, sub_rgroup};
use knapp_stein::rgroup::closed_form_r;
use knapp_stein::{bundled, BlockSet};

fn main() {
    let datum = bundled("EX_A").unwrap();
    let rg = closed_form_r(&datum);
    let table = component_table(&datum, &rg);
    for row in &table.rows {
        println!("{}  ε = {:+}", row.kappa, row.epsilon.unwrap());
    }
    println!("Σ ε = {}", table.epsilon_sum.unwrap());

    let adapted = adapted_generators(&rg).unwrap();
    println!("adapted generators verify: {}", adapted.verify(&rg).unwrap());

    let sub = sub_rgroup(&rg, BlockSet::singleton(0)).unwrap();
    println!("|R_{{1}}| = {}", sub.order());
    for kappa_prime in knapp_stein::components::characters_of_r(&sub) {
        let fiber = restriction_fibers(&rg, 0, kappa_prime).unwrap();
        let shown: Vec<String> = fiber.iter().map(ToString::to_string).collect();
        println!("over {kappa_prime}: {}", shown.join(" "));
    }
}
