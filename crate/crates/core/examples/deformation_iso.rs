//! Twisting σ by an invariant unital χ and checking that the induced map
//! intertwines the two deformed products on B#kG.

use std::sync::Arc;

use hopf_lift::cocycle::{deformation_iso_check_b, delta_connecting, Bosonization, KCharacter, Nichols};
use hopf_lift::datum::CartanDatum;
use hopf_lift::presented::retraction_u;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let nich = Arc::new(Nichols::from_datum(&CartanDatum::qplane(3))?);
    let boson = Arc::new(Bosonization::new(nich.clone()));
    let sigma = delta_connecting(&nich, &KCharacter::from_ints(&nich.p, &[1, 2, 1])?, &retraction_u(&nich.p))?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..3 {
        let chi = nich.random_invariant_chi(&mut rng);
        let pairs = boson.sample_pairs(&mut rng, 100);
        let out = deformation_iso_check_b(&boson, &sigma, &chi, &pairs)?;
        println!("χ #{trial}: {} pairs, isomorphism {}", out.pairs_checked, if out.mismatch.is_none() { "holds" } else { "fails" });
    }
    Ok(())
}
