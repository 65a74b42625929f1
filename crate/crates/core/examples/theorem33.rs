//! Compares δ(e^d) with the q-exponential of the Hochschild class of d on the
//! quantum plane, for the four standard choices of d.

use hopf_lift::cocycle::{theorem33_check, Nichols};
use hopf_lift::cyclotomic::CycNum;
use hopf_lift::datum::CartanDatum;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let nich = Nichols::from_datum(&CartanDatum::qplane(3))?;
    for (label, d) in [("d1", [1, 0, 0]), ("d2", [0, 1, 0]), ("d21", [0, 0, 1]), ("d1+d2+d21", [1, 1, 1])] {
        let out = theorem33_check(&nich, &d.map(CycNum::from_int))?;
        match &out.mismatch {
            None => println!("{label}: δ(e^d) = Exp_q(δ_hoch d)"),
            Some(k) => println!(
                "{label}: differs at {}; z21-first order {}",
                nich.pair_name(*k),
                if out.reordered_mismatch.is_none() { "agrees" } else { "differs too" }
            ),
        }
    }
    Ok(())
}
