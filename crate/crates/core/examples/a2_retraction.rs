//! Type A2: the corrected retraction u2 against the generic one, and the
//! filtration-by-filtration builder.

use std::time::Instant;

use hopf_lift::datum::CartanDatum;
use hopf_lift::presented::{build_coalgebra_retraction, retraction_u, retraction_u2, Presented};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = Instant::now();
    let d = CartanDatum::a2(3, -1);
    let p = Presented::new(&d)?;
    println!("rules:");
    for r in p.rules() {
        println!("  {} * {} -> {} terms", p.slots[r.beta].name, p.slots[r.alpha].name, r.rhs.len());
    }
    let cutoff = 12;
    let u = retraction_u(&p);
    let u2 = retraction_u2(&p)?;
    match u.check_coalgebra(&p, cutoff)? {
        Some(m) => println!("u = (eps x 1)theta is not a coalgebra map: witness {}", p.mono_name(&m)),
        None => println!("u is a coalgebra map up to height {cutoff}"),
    }
    match u2.check_coalgebra(&p, cutoff)? {
        Some(m) => println!("u2 fails the coalgebra law at {}", p.mono_name(&m)),
        None => println!("u2 is a coalgebra map up to height {cutoff}"),
    }
    let built = build_coalgebra_retraction(&p, cutoff, &[])?;
    let agree = p.b_basis().iter().all(|b| built.apply_mono(&p, b) == u2.apply_mono(&p, b));
    println!("built retraction agrees with u2 on B: {agree}");
    println!("elapsed {:?}", t.elapsed());
    Ok(())
}
