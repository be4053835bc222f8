// Elements of the block Weyl group, their action on roots and on an
// inducing datum.

use knapp_stein::weyl::{act_on_datum, enumerate_weyl, fixed_subspace, negativity_set, ReducedRoot};
use knapp_stein::{bundled, BlockSet, SignedBlockPermutation};

fn main() {
    let datum = bundled("EX_B").unwrap();
    let w = SignedBlockPermutation::sign_change(3, BlockSet::from_indices([1, 2]));
    let swap = SignedBlockPermutation::transposition(3, 1, 2);
    let product = w.compose(&swap).unwrap();
    println!("w = {w}, s = {swap}, w·s = {product}, (w·s)⁻¹ = {}", product.inverse());

    for root in [ReducedRoot::Alpha(0, 1), ReducedRoot::Beta(1, 2), ReducedRoot::Gamma(2)] {
        let image = knapp_stein::weyl::act_on_root(&w, root);
        println!("{w} · {root} = {:?} (negative: {})", image.0, image.is_negative());
    }
    let roots: Vec<String> = negativity_set(&w).iter().map(ToString::to_string).collect();
    println!("R({w}) = {{{}}}", roots.join(", "));

    let acted = act_on_datum(&w, &datum);
    println!("{w}·σ has classes {:?}, twist {}", acted.classes, acted.twist);
    println!("dim 𝔞_w = {}", fixed_subspace(&w).dim());
    println!("|W(G,A)| = {}", enumerate_weyl(&datum).unwrap().len());
}
