//! Splitting over unlinked vertices: a quantum linear space with x1, x2
//! linked and x3 free, checked against the product of the two pieces.

use hopf_lift::cocycle::{prop36_check, sigma_formula_failure, split_values, KCharacter, Nichols};
use hopf_lift::cyclotomic::CycNum;
use hopf_lift::datum::CartanDatum;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = CartanDatum::qls(3, 3, &[(1, 2)])?;
    let nich = Nichols::from_datum(&d)?;
    let names = nich.p.k_generator_names();
    let f: Vec<CycNum> = (1..=names.len() as i64).map(CycNum::from_int).collect();
    println!("K generators: {}", names.join(", "));
    for s in [vec![0, 1], vec![0, 1, 2]] {
        let (f_s, f_t) = split_values(&d, &s, &f)?;
        let out = prop36_check(&d, &s, &f_s, &f_t)?;
        println!("S = {s:?}: {} pairs, mismatch {:?}", out.pairs_checked, out.mismatch);
    }
    let failure = sigma_formula_failure(&nich, &KCharacter::new(&nich.p, f)?)?;
    println!("σ on root-vector powers matches the factorial formula: {}", failure.is_none());
    Ok(())
}
