// Direct classification next to the closed-form criteria.

use knapp_stein::datum::BUNDLED_NAMES;
use knapp_stein::elliptic::{classify, theorem_predicates};
use knapp_stein::rgroup::closed_form_r;
use knapp_stein::bundled;

fn main() {
    for name in BUNDLED_NAMES {
        let datum = bundled(name).unwrap();
        let rg = closed_form_r(&datum);
        let c = classify(&datum, &rg);
        let t = theorem_predicates(&datum, &rg).unwrap();
        println!(
            "{name} ({}): {} with support {} and dim 𝔞_R = {}; criterion implies {:?}",
            datum.family(),
            c.verdict,
            c.support,
            c.a_r_dim,
            t.implied
        );
    }
}
