// The R-group by its generator description and by filtering `W(σ)`.

use knapp_stein::datum::BUNDLED_NAMES;
use knapp_stein::rgroup::{brute_force_r, closed_form_r, compute_delta_prime};
use knapp_stein::weyl::sign_change_label;
use knapp_stein::bundled;

fn main() {
    for name in BUNDLED_NAMES {
        let datum = bundled(name).unwrap();
        let closed = closed_form_r(&datum);
        let brute: Vec<_> = brute_force_r(&datum).unwrap().iter().map(|w| w.signs()).collect();
        let shown: Vec<String> = closed.elements.iter().map(|&b| sign_change_label(b)).collect();
        println!(
            "{name}: |Δ′| = {}, d = {}, R = {{{}}}, agrees with brute force: {}",
            compute_delta_prime(&datum).roots.len(),
            closed.d,
            shown.join(", "),
            {
                let mut b = brute.clone();
                b.sort();
                b == closed.elements
            }
        );
    }
}
