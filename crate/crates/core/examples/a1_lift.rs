//! Lifts the A1 Nichols algebra k[x]/(x^3): builds σ = δf for f(z) = λ,
//! deforms B#kG and prints the products x^m · x^n.

use std::sync::Arc;

use hopf_lift::cocycle::{delta_connecting, Bosonization, KCharacter, LiftedAlgebra, Nichols};
use hopf_lift::cyclotomic::CycNum;
use hopf_lift::datum::CartanDatum;
use hopf_lift::presented::retraction_u;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let nich = Arc::new(Nichols::from_datum(&CartanDatum::a1(3))?);
    let boson = Arc::new(Bosonization::new(nich.clone()));
    let lambda = CycNum::from_int(2);
    let sigma = delta_connecting(&nich, &KCharacter::new(&nich.p, vec![lambda.clone()])?, &retraction_u(&nich.p))?;
    let alg = LiftedAlgebra::from_braided(boson.clone(), &sigma)?;
    println!("f(z) = {lambda}");
    for m in 0..3u32 {
        for n in 0..3u32 {
            let (a, b) = (nich.index_of(&[m]).unwrap(), nich.index_of(&[n]).unwrap());
            let terms: Vec<String> = alg
                .mul_basis(boson.index(a, 0), boson.index(b, 0))
                .into_iter()
                .map(|(k, c)| format!("({c}) {}", boson.name(k)))
                .collect();
            println!("x^{m} · x^{n} = {}", terms.join(" + "));
        }
    }
    Ok(())
}
