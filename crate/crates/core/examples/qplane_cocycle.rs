//! The quantum-plane cocycle σ = δf: cocycle check over all basis triples and
//! its values on pairs of root-vector powers.

use hopf_lift::cocycle::{delta_connecting, KCharacter, Nichols};
use hopf_lift::datum::CartanDatum;
use hopf_lift::presented::retraction_u;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let nich = Nichols::from_datum(&CartanDatum::qplane(3))?;
    let sigma = delta_connecting(&nich, &KCharacter::from_ints(&nich.p, &[1, 2, 1])?, &retraction_u(&nich.p))?;
    match nich.cos.cocycle_failure(&sigma) {
        None => println!("σ is a braided 2-cocycle on all {} triples", nich.dim().pow(3)),
        Some(t) => println!("cocycle condition fails at {}", nich.triple_name(t)),
    }
    for k in 0..sigma.values.len() {
        if !sigma.values[k].is_zero() {
            println!("σ({}) = {}", nich.pair_name(k), sigma.values[k]);
        }
    }
    Ok(())
}
