//! Checks the quantum-plane commutation formula against ideal membership in
//! the free algebra for a grid of exponents.

use hopf_lift::datum::CartanDatum;
use hopf_lift::freehopf::lemma31_oracle;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n_ord in [3, 5] {
        let d = CartanDatum::qplane(n_ord);
        for m in 0..=4 {
            for n in 0..=4 {
                let out = lemma31_oracle(&d, m, n)?;
                println!(
                    "N={n_ord} m={m} n={n}: remainder terms {:>3}, in ideal: {}",
                    out.remainder.len(),
                    out.holds()
                );
            }
        }
    }
    Ok(())
}
