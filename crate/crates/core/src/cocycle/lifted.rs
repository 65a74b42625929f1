//! Bosonization `Y = B # kG`, the deformed product `m_σ = σ ∗ m ∗ σ⁻¹`, and
//! the isomorphism `ψ = χ⁻¹ ∗ 1 ∗ χ` between deformations by equivalent cocycles.

use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{Cocycle2, Cosimplicial, Nichols};
use crate::convolution::{conv_inverse, conv_inverse_solve, convolve, BasisCoalgebra, Functional};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::lin::Lin;

/// An element of `Y` in the basis `x h`, indexed by `b·|G| + h`.
pub type YElt = Lin<usize>;
/// An element of `Y ⊗ Y`.
pub type YTensor = Lin<(usize, usize)>;

type Cop3 = Vec<Vec<(usize, usize, usize, CycNum)>>;

/// `Y = B # kG` with its ordinary Hopf structure.
pub struct Bosonization {
    pub nich: Arc<Nichols>,
    pub y: Arc<BasisCoalgebra>,
    ng: usize,
    gmul: Vec<Vec<usize>>,
    /// `g^{|b|}` as a group index.
    deg_group: Vec<usize>,
    /// Exponent of `χ^{|b|}(h)`.
    char_exp: Vec<Vec<u32>>,
    /// `Δ^{(2)}` on `B` (braided, so no crossing scalars for one factor).
    cop3_b: Cop3,
}

impl Bosonization {
    pub fn new(nich: Arc<Nichols>) -> Self {
        let d = nich.datum();
        let group = d.group_elements();
        let ng = group.len();
        let gmul = group.iter().map(|a| group.iter().map(|b| d.group_index(&d.group_mul(a, b))).collect()).collect();
        let b = nich.b();
        let deg_group = b.degrees.iter().map(|deg| d.group_index(&d.group_of_deg(deg))).collect();
        let char_exp = b.degrees.iter().map(|deg| group.iter().map(|h| d.char_on_group_exp(deg, h)).collect()).collect();
        let cop3_b = iterated_coproduct(b);
        let y = Arc::new(BasisCoalgebra::bosonized(&nich.p, b));
        Bosonization { nich, y, ng, gmul, deg_group, char_exp, cop3_b }
    }

    pub fn group_order(&self) -> usize {
        self.ng
    }

    pub fn dim(&self) -> usize {
        self.y.dim()
    }

    pub fn index(&self, b: usize, h: usize) -> usize {
        b * self.ng + h
    }

    pub fn split(&self, i: usize) -> (usize, usize) {
        (i / self.ng, i % self.ng)
    }

    pub fn group_mul(&self, a: usize, b: usize) -> usize {
        self.gmul[a][b]
    }

    /// Group index of `g^{|b|}`.
    pub fn deg_group(&self, b: usize) -> usize {
        self.deg_group[b]
    }

    /// `χ^{|b|}(h)`.
    pub fn char_value(&self, b: usize, h: usize) -> &CycNum {
        self.nich.datum().zeta(self.char_exp[b][h] as i64)
    }

    pub fn name(&self, i: usize) -> String {
        let (b, h) = self.split(i);
        let g = &self.nich.datum().group_elements()[h];
        format!("{}·g{:?}", self.nich.name(b), g)
    }

    /// `(x h)(y g) = χ^{|y|}(h) xy hg`.
    pub fn mul_basis(&self, i: usize, j: usize) -> Vec<(usize, CycNum)> {
        let (x, h) = self.split(i);
        let (y, g) = self.split(j);
        let c = self.char_value(y, h);
        let hg = self.gmul[h][g];
        self.nich.cos.mul(x, y).iter().map(|(k, v)| (self.index(*k, hg), v.mul_ref(c))).collect()
    }

    pub fn mul(&self, a: &YElt, b: &YElt) -> YElt {
        let mut out = YElt::zero();
        for (i, ca) in a.iter() {
            for (j, cb) in b.iter() {
                let c = ca.mul_ref(cb);
                for (k, v) in self.mul_basis(*i, *j) {
                    out.add_term(k, v.mul_ref(&c));
                }
            }
        }
        out
    }

    pub fn product_table(&self) -> Vec<Vec<Vec<(usize, CycNum)>>> {
        (0..self.dim()).map(|i| (0..self.dim()).map(|j| self.mul_basis(i, j)).collect()).collect()
    }

    pub fn coproduct(&self, i: usize) -> YTensor {
        self.y.coproduct[i].iter().map(|(a, b, c)| ((*a as usize, *b as usize), c.clone())).collect()
    }

    /// `ψ¹f(xh) = f(x)ε(h)`.
    pub fn bosonize_functional(&self, f: &Functional) -> Functional {
        let values = (0..self.dim()).map(|i| f.values[self.split(i).0].clone()).collect();
        Functional { domain: self.y.clone(), values }
    }

    /// `σ_Y(xh ⊗ yg) = χ^{|y|}(h) σ(x⊗y)`.
    pub fn sigma_y(&self, sigma: &Cocycle2, i: usize, j: usize) -> CycNum {
        let (x, h) = self.split(i);
        let (y, _) = self.split(j);
        let v = &sigma.values[x * self.nich.dim() + y];
        if v.is_zero() {
            return CycNum::zero();
        }
        v.mul_ref(self.char_value(y, h))
    }

    /// Full table of `σ_Y` on `Y ⊗ Y`; only sensible for small `G`.
    pub fn bosonize_cocycle(&self, sigma: &Cocycle2, square: &Arc<BasisCoalgebra>) -> Functional {
        let n = self.dim();
        let values = (0..n * n).map(|k| self.sigma_y(sigma, k / n, k % n)).collect();
        Functional { domain: square.clone(), values }
    }

    /// The ordinary cosimplicial structure on `Y` (dense tables).
    pub fn cosimplicial(&self) -> Cosimplicial {
        Cosimplicial::new(self.y.clone(), self.product_table())
    }

    /// Ordinary cocycle identity `σ(y₁⊗z₁)σ(x⊗y₂z₂) = σ(x₁⊗y₁)σ(x₂y₂⊗z)`
    /// for `σ_Y` at the given triples; first failure.
    pub fn ordinary_cocycle_failure(
        &self,
        sigma: &Cocycle2,
        triples: &[(usize, usize, usize)],
    ) -> Option<(usize, usize, usize)> {
        let s = |a: usize, b: usize| self.sigma_y(sigma, a, b);
        triples
            .par_iter()
            .find_first(|&&(x, y, z)| {
                let mut lhs = CycNum::zero();
                for (y1, y2, cy) in &self.y.coproduct[y] {
                    for (z1, z2, cz) in &self.y.coproduct[z] {
                        let a = s(*y1 as usize, *z1 as usize);
                        if a.is_zero() {
                            continue;
                        }
                        for (k, c) in self.mul_basis(*y2 as usize, *z2 as usize) {
                            let b = s(x, k);
                            if !b.is_zero() {
                                lhs = lhs.add_ref(&a.mul_ref(&b).mul_ref(&c).mul_ref(cy).mul_ref(cz));
                            }
                        }
                    }
                }
                let mut rhs = CycNum::zero();
                for (x1, x2, cx) in &self.y.coproduct[x] {
                    for (y1, y2, cy) in &self.y.coproduct[y] {
                        let a = s(*x1 as usize, *y1 as usize);
                        if a.is_zero() {
                            continue;
                        }
                        for (k, c) in self.mul_basis(*x2 as usize, *y2 as usize) {
                            let b = s(k, z);
                            if !b.is_zero() {
                                rhs = rhs.add_ref(&a.mul_ref(&b).mul_ref(&c).mul_ref(cx).mul_ref(cy));
                            }
                        }
                    }
                }
                lhs != rhs
            })
            .copied()
    }

    /// All `B`-triples (group parts trivial) followed by `extra` random triples.
    pub fn sample_triples(&self, rng: &mut impl Rng, extra: usize) -> Vec<(usize, usize, usize)> {
        let nb = self.nich.dim();
        let mut out = Vec::with_capacity(nb * nb * nb + extra);
        for x in 0..nb {
            for y in 0..nb {
                for z in 0..nb {
                    out.push((self.index(x, 0), self.index(y, 0), self.index(z, 0)));
                }
            }
        }
        let n = self.dim();
        out.extend((0..extra).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))));
        out
    }

    pub fn sample_pairs(&self, rng: &mut impl Rng, extra: usize) -> Vec<(usize, usize)> {
        let nb = self.nich.dim();
        let mut out: Vec<_> = (0..nb * nb).map(|k| (self.index(k / nb, 0), self.index(k % nb, 0))).collect();
        let n = self.dim();
        out.extend((0..extra).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))));
        out
    }

    /// `ψ(xh) = Σ χ⁻¹(x₁) x₂ g^{|x₃|} h χ(x₃)` for `χ` on `B` (bosonized).
    pub fn psi_from_b(&self, chi: &Functional, chi_inv: &Functional) -> Vec<YElt> {
        let nb = self.nich.dim();
        let base: Vec<YElt> = (0..nb)
            .map(|x| {
                let mut out = YElt::zero();
                for (x1, x2, x3, c) in &self.cop3_b[x] {
                    let v = chi_inv.values[*x1].mul_ref(&chi.values[*x3]);
                    if !v.is_zero() {
                        out.add_term(self.index(*x2, self.deg_group[*x3]), v.mul_ref(c));
                    }
                }
                out
            })
            .collect();
        (0..self.dim())
            .map(|i| {
                let (x, h) = self.split(i);
                base[x].iter().map(|(k, c)| {
                    let (b, g) = self.split(*k);
                    (self.index(b, self.gmul[g][h]), c.clone())
                }).collect()
            })
            .collect()
    }

    /// `ψ(a) = Σ χ⁻¹(a₁) a₂ χ(a₃)` for `χ` on `Y`.
    pub fn psi_from_y(&self, chi: &Functional, chi_inv: &Functional) -> Vec<YElt> {
        let cop3 = iterated_coproduct(&self.y);
        cop3.iter()
            .map(|terms| {
                let mut out = YElt::zero();
                for (a1, a2, a3, c) in terms {
                    let v = chi_inv.values[*a1].mul_ref(&chi.values[*a3]);
                    if !v.is_zero() {
                        out.add_term(*a2, v.mul_ref(c));
                    }
                }
                out
            })
            .collect()
    }
}

/// `Δ^{(2)}` of every basis element of a single (non-tensor) coalgebra.
fn iterated_coproduct(c: &BasisCoalgebra) -> Cop3 {
    (0..c.dim())
        .map(|x| {
            let mut acc: std::collections::BTreeMap<(usize, usize, usize), CycNum> = Default::default();
            for (x1, rest, c1) in &c.coproduct[x] {
                for (x2, x3, c2) in &c.coproduct[*rest as usize] {
                    let e = acc.entry((*x1 as usize, *x2 as usize, *x3 as usize)).or_default();
                    *e = e.add_ref(&c1.mul_ref(c2));
                }
            }
            acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|((a, b, d), v)| (a, b, d, v)).collect()
        })
        .collect()
}

enum Table {
    /// `m_σ` on `B`-pairs; other pairs follow from `m_σ(xh⊗yg) = χ^{|y|}(h) m_σ(x⊗y)·hg`.
    Equivariant(Vec<Vec<(usize, CycNum)>>),
    /// `m_σ` on every pair of `Y` basis elements.
    Full(Vec<Vec<(usize, CycNum)>>),
}

/// `Y_σ`: the coalgebra `Y` with product `m_σ`.
pub struct LiftedAlgebra {
    pub boson: Arc<Bosonization>,
    table: Table,
}

impl LiftedAlgebra {
    /// `m_σ` from a braided cocycle on `B` and its braided inverse:
    /// `m_σ(x⊗y) = Σ χ^{|y₁|}(g^{|x₂|+|x₃|}) χ^{|y₂|}(g^{|x₃|}) σ(x₁⊗y₁) x₂y₂ g^{|x₃|+|y₃|} σ⁻¹(x₃⊗y₃)`.
    pub fn from_braided(boson: Arc<Bosonization>, sigma: &Cocycle2) -> Result<Self> {
        let nich = &boson.nich;
        if let Some(t) = nich.cos.cocycle_failure(sigma) {
            return Err(Error::NotCocycle(nich.triple_name(t)));
        }
        let inv = conv_inverse(sigma)?;
        let nb = nich.dim();
        let d = nich.datum();
        let e = |a: usize, b: usize| d.chi_exp(&nich.b().degrees[a], &nich.b().degrees[b]) as i64;
        let table = (0..nb * nb)
            .into_par_iter()
            .map(|k| {
                let (x, y) = (k / nb, k % nb);
                let mut out: Lin<usize> = Lin::zero();
                for (x1, x2, x3, cx) in &boson.cop3_b[x] {
                    for (y1, y2, y3, cy) in &boson.cop3_b[y] {
                        let s = &sigma.values[x1 * nb + y1];
                        if s.is_zero() {
                            continue;
                        }
                        let si = &inv.values[x3 * nb + y3];
                        if si.is_zero() {
                            continue;
                        }
                        let z = d.zeta(e(*y1, *x2) + e(*y1, *x3) + e(*y2, *x3));
                        let c = s.mul_ref(si).mul_ref(cx).mul_ref(cy).mul_ref(z);
                        let g = boson.gmul[boson.deg_group[*x3]][boson.deg_group[*y3]];
                        for (m, v) in nich.cos.mul(*x2, *y2) {
                            out.add_term(boson.index(*m, g), v.mul_ref(&c));
                        }
                    }
                }
                out.into_iter_terms().collect()
            })
            .collect();
        Ok(LiftedAlgebra { boson, table: Table::Equivariant(table) })
    }

    /// `m_σ(a⊗b) = Σ σ(a₁⊗b₁) a₂b₂ σ⁻¹(a₃⊗b₃)` from dense tables on `Y ⊗ Y`.
    pub fn from_full(boson: Arc<Bosonization>, sigma: &Functional, sigma_inv: &Functional) -> Result<Self> {
        let n = boson.dim();
        if sigma.values.len() != n * n || sigma_inv.values.len() != n * n {
            return Err(Error::DomainMismatch("cocycle tables must live on Y ⊗ Y".into()));
        }
        let cop3 = iterated_coproduct(&boson.y);
        let table = (0..n * n)
            .into_par_iter()
            .map(|k| {
                let (a, b) = (k / n, k % n);
                let mut out: Lin<usize> = Lin::zero();
                for (a1, a2, a3, ca) in &cop3[a] {
                    for (b1, b2, b3, cb) in &cop3[b] {
                        let s = &sigma.values[a1 * n + b1];
                        if s.is_zero() {
                            continue;
                        }
                        let si = &sigma_inv.values[a3 * n + b3];
                        if si.is_zero() {
                            continue;
                        }
                        let c = s.mul_ref(si).mul_ref(ca).mul_ref(cb);
                        for (m, v) in boson.mul_basis(*a2, *b2) {
                            out.add_term(m, v.mul_ref(&c));
                        }
                    }
                }
                out.into_iter_terms().collect()
            })
            .collect();
        Ok(LiftedAlgebra { boson, table: Table::Full(table) })
    }

    pub fn dim(&self) -> usize {
        self.boson.dim()
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Vec<(usize, CycNum)> {
        match &self.table {
            Table::Full(t) => t[i * self.dim() + j].clone(),
            Table::Equivariant(t) => {
                let b = &self.boson;
                let (x, h) = b.split(i);
                let (y, g) = b.split(j);
                let c = b.char_value(y, h);
                let hg = b.gmul[h][g];
                let mut out: Vec<(usize, CycNum)> = t[x * b.nich.dim() + y]
                    .iter()
                    .map(|(k, v)| {
                        let (m, f) = b.split(*k);
                        (b.index(m, b.gmul[f][hg]), v.mul_ref(c))
                    })
                    .collect();
                out.sort_by_key(|t| t.0);
                out
            }
        }
    }

    pub fn mul(&self, a: &YElt, b: &YElt) -> YElt {
        let mut out = YElt::zero();
        for (i, ca) in a.iter() {
            for (j, cb) in b.iter() {
                let c = ca.mul_ref(cb);
                for (k, v) in self.mul_basis(*i, *j) {
                    out.add_term(k, v.mul_ref(&c));
                }
            }
        }
        out
    }

    /// First triple with `(ab)c ≠ a(bc)`.
    pub fn associativity_failure(&self, triples: &[(usize, usize, usize)]) -> Option<(usize, usize, usize)> {
        triples
            .par_iter()
            .find_first(|&&(a, b, c)| {
                let ab = self.mul(&YElt::basis(a), &YElt::basis(b));
                let bc = self.mul(&YElt::basis(b), &YElt::basis(c));
                self.mul(&ab, &YElt::basis(c)) != self.mul(&YElt::basis(a), &bc)
            })
            .copied()
    }

    /// First basis element `a` with `1·a ≠ a` or `a·1 ≠ a`.
    pub fn unit_failure(&self) -> Option<usize> {
        let one = YElt::basis(self.boson.y.unit);
        (0..self.dim()).find(|&a| {
            let e = YElt::basis(a);
            self.mul(&one, &e) != e || self.mul(&e, &one) != e
        })
    }

    /// First pair with `Δ(m_σ(a⊗b)) ≠ m_σ(a₁⊗b₁) ⊗ m_σ(a₂⊗b₂)`.
    pub fn bialgebra_failure(&self, pairs: &[(usize, usize)]) -> Option<(usize, usize)> {
        let b = &self.boson;
        pairs
            .par_iter()
            .find_first(|&&(x, y)| {
                let mut lhs = YTensor::zero();
                for (k, c) in self.mul_basis(x, y) {
                    lhs.add_scaled(&b.coproduct(k), &c);
                }
                let mut rhs = YTensor::zero();
                for (x1, x2, cx) in &b.y.coproduct[x] {
                    for (y1, y2, cy) in &b.y.coproduct[y] {
                        let l = self.mul_basis(*x1 as usize, *y1 as usize);
                        let r = self.mul_basis(*x2 as usize, *y2 as usize);
                        let c = cx.mul_ref(cy);
                        for (p, cp) in &l {
                            for (q, cq) in &r {
                                rhs.add_term((*p, *q), cp.mul_ref(cq).mul_ref(&c));
                            }
                        }
                    }
                }
                lhs != rhs
            })
            .copied()
    }

    /// Structure constants on `B`-pairs (all of them for the full table).
    pub fn to_json(&self) -> Value {
        let b = &self.boson;
        let label = |i: usize| b.y.labels[i].clone();
        let pairs: Vec<(usize, usize)> = match &self.table {
            Table::Full(_) => (0..self.dim() * self.dim()).map(|k| (k / self.dim(), k % self.dim())).collect(),
            Table::Equivariant(_) => {
                let nb = b.nich.dim();
                (0..nb * nb).map(|k| (b.index(k / nb, 0), b.index(k % nb, 0))).collect()
            }
        };
        let entries: Vec<Value> = pairs
            .into_iter()
            .map(|(i, j)| {
                let terms: Vec<Value> =
                    self.mul_basis(i, j).into_iter().map(|(k, c)| json!({"basis": label(k), "coeff": c})).collect();
                json!({"left": label(i), "right": label(j), "product": terms})
            })
            .collect();
        let kind = match self.table {
            Table::Full(_) => "full",
            Table::Equivariant(_) => "equivariant",
        };
        json!({"algebra": "Y_sigma", "table": kind, "group_order": b.ng, "entries": entries})
    }
}

/// Outcome of `ψ∘m_σ = m_{σ′}∘(ψ⊗ψ)`.
#[derive(Clone, Debug)]
pub struct IsoOutcome {
    pub pairs_checked: usize,
    pub mismatch: Option<(usize, usize)>,
}

impl IsoOutcome {
    pub fn holds(&self) -> bool {
        self.mismatch.is_none()
    }
}

fn iso_failure(a: &LiftedAlgebra, a2: &LiftedAlgebra, psi: &[YElt], pairs: &[(usize, usize)]) -> IsoOutcome {
    let apply = |e: &YElt| {
        let mut out = YElt::zero();
        for (k, c) in e.iter() {
            out.add_scaled(&psi[*k], c);
        }
        out
    };
    let mismatch = pairs
        .par_iter()
        .find_first(|&&(x, y)| {
            let lhs = apply(&a.mul(&YElt::basis(x), &YElt::basis(y)));
            lhs != a2.mul(&psi[x], &psi[y])
        })
        .copied();
    IsoOutcome { pairs_checked: pairs.len(), mismatch }
}

/// Twists a braided `σ` on `B` by a unital invariant `χ` on `B`, deforms `Y` by
/// both bosonized cocycles and checks that `ψ` intertwines the products.
pub fn deformation_iso_check_b(
    boson: &Arc<Bosonization>,
    sigma: &Cocycle2,
    chi: &Functional,
    pairs: &[(usize, usize)],
) -> Result<IsoOutcome> {
    let nich = &boson.nich;
    let sigma2 = nich.cos.twist(sigma, chi)?;
    let a = LiftedAlgebra::from_braided(boson.clone(), sigma)?;
    let a2 = LiftedAlgebra::from_braided(boson.clone(), &sigma2)?;
    let psi = boson.psi_from_b(chi, &conv_inverse(chi)?);
    Ok(iso_failure(&a, &a2, &psi, pairs))
}

/// The same check on `Y` itself, for an arbitrary unital `χ` on `Y` and
/// dense `σ_Y`. Uses `σ′⁻¹ = ∂¹χ ∗ σ⁻¹ ∗ ∂²χ⁻¹ ∗ ∂⁰χ⁻¹`.
pub fn deformation_iso_check_y(
    boson: &Arc<Bosonization>,
    cos: &Cosimplicial,
    sigma_y: &Functional,
    sigma_y_inv: &Functional,
    chi: &Functional,
) -> Result<IsoOutcome> {
    let chi_inv = conv_inverse_solve(chi)?;
    let sigma2 = cos.twist(sigma_y, chi)?;
    let sigma2_inv = convolve(
        &convolve(&convolve(&cos.coface(1, chi)?, sigma_y_inv)?, &cos.coface(2, &chi_inv)?)?,
        &cos.coface(0, &chi_inv)?,
    )?;
    let a = LiftedAlgebra::from_full(boson.clone(), sigma_y, sigma_y_inv)?;
    let a2 = LiftedAlgebra::from_full(boson.clone(), &sigma2, &sigma2_inv)?;
    let psi = boson.psi_from_y(chi, &chi_inv);
    let n = boson.dim();
    let pairs: Vec<(usize, usize)> = (0..n * n).map(|k| (k / n, k % n)).collect();
    Ok(iso_failure(&a, &a2, &psi, &pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::{delta_connecting, KCharacter};
    use crate::datum::CartanDatum;
    use crate::presented::retraction_u;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup(d: CartanDatum, vals: &[i64]) -> (Arc<Bosonization>, Cocycle2) {
        let nich = Arc::new(Nichols::from_datum(&d).unwrap());
        let u = retraction_u(&nich.p);
        let f = KCharacter::from_ints(&nich.p, vals).unwrap();
        let s = delta_connecting(&nich, &f, &u).unwrap();
        (Arc::new(Bosonization::new(nich)), s)
    }

    #[test]
    fn a1_deformed_product_matches_closed_form() {
        let (boson, s) = setup(CartanDatum::a1(3), &[1]);
        let alg = LiftedAlgebra::from_braided(boson.clone(), &s).unwrap();
        let d = boson.nich.datum();
        let gn = d.group_index(&d.group_of_deg(&crate::datum::MultiDeg(vec![3])));
        for m in 0..3usize {
            for n in 0..3usize {
                let got: YElt = alg.mul_basis(boson.index(m, 0), boson.index(n, 0)).into_iter().collect();
                let want = if m + n < 3 {
                    YElt::basis(boson.index(m + n, 0))
                } else {
                    let mut w = YElt::term(boson.index(m + n - 3, 0), CycNum::from_int(-1));
                    w.add_term(boson.index(m + n - 3, gn), CycNum::one());
                    w
                };
                assert_eq!(got, want, "{m} {n}");
            }
        }
    }

    #[test]
    fn trivial_cocycle_gives_original_product() {
        let (boson, _) = setup(CartanDatum::qplane(3), &[0, 0, 0]);
        let eps = Functional::counit(boson.nich.b2());
        let alg = LiftedAlgebra::from_braided(boson.clone(), &eps).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (i, j) in boson.sample_pairs(&mut rng, 50) {
            assert_eq!(alg.mul_basis(i, j), boson.mul_basis(i, j).into_iter().filter(|(_, c)| !c.is_zero()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn qplane_lifted_algebra_laws() {
        let (boson, s) = setup(CartanDatum::qplane(3), &[1, 2, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let alg = LiftedAlgebra::from_braided(boson.clone(), &s).unwrap();
        assert_eq!(alg.associativity_failure(&boson.sample_triples(&mut rng, 200)), None);
        assert_eq!(alg.unit_failure(), None);
        assert_eq!(alg.bialgebra_failure(&boson.sample_pairs(&mut rng, 100)), None);
        assert_eq!(boson.ordinary_cocycle_failure(&s, &boson.sample_triples(&mut rng, 200)), None);
        let mut bad = s.clone();
        let k = boson.nich.pair(&boson.nich.mono(&[(1, 1)]), &boson.nich.mono(&[(0, 1)]));
        bad.values[k] = bad.values[k].add_ref(&CycNum::one());
        assert!(boson.ordinary_cocycle_failure(&bad, &boson.sample_triples(&mut rng, 0)).is_some());
        assert!(matches!(LiftedAlgebra::from_braided(boson.clone(), &bad), Err(Error::NotCocycle(_))));
    }

    #[test]
    fn a1_bosonized_inverse_and_full_table() {
        let (boson, s) = setup(CartanDatum::a1(3), &[2]);
        let cos = boson.cosimplicial();
        let sy = boson.bosonize_cocycle(&s, &cos.square);
        let sy_inv = boson.bosonize_cocycle(&conv_inverse(&s).unwrap(), &cos.square);
        assert_eq!(convolve(&sy, &sy_inv).unwrap(), Functional::counit(&cos.square));
        assert_eq!(cos.cocycle_failure(&sy), None);
        let full = LiftedAlgebra::from_full(boson.clone(), &sy, &sy_inv).unwrap();
        let eq = LiftedAlgebra::from_braided(boson.clone(), &s).unwrap();
        for i in 0..boson.dim() {
            for j in 0..boson.dim() {
                assert_eq!(full.mul_basis(i, j), eq.mul_basis(i, j), "{i} {j}");
            }
        }
    }

    #[test]
    fn a1_deformation_iso_on_y() {
        let (boson, s) = setup(CartanDatum::a1(3), &[1]);
        let cos = boson.cosimplicial();
        let sy = boson.bosonize_cocycle(&s, &cos.square);
        let sy_inv = boson.bosonize_cocycle(&conv_inverse(&s).unwrap(), &cos.square);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut vals: Vec<CycNum> = (0..boson.dim()).map(|_| CycNum::from_int(rng.gen_range(-2..=2))).collect();
        for h in 0..boson.group_order() {
            vals[boson.index(boson.nich.b().unit, h)] = CycNum::from_int([1, 2, -1][h % 3]);
        }
        let chi = Functional::from_values(&boson.y, vals).unwrap();
        let out = deformation_iso_check_y(&boson, &cos, &sy, &sy_inv, &chi).unwrap();
        assert!(out.holds(), "{:?}", out.mismatch);
        assert_eq!(out.pairs_checked, 729);
    }

    #[test]
    fn qplane_deformation_iso_on_b() {
        let (boson, s) = setup(CartanDatum::qplane(3), &[1, 2, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let chi = boson.nich.random_invariant_chi(&mut rng);
        let pairs = boson.sample_pairs(&mut rng, 50);
        let out = deformation_iso_check_b(&boson, &s, &chi, &pairs).unwrap();
        assert!(out.holds());
        // a wrong ψ (χ replaced by something else on one side) is rejected
        let other = boson.nich.random_invariant_chi(&mut rng);
        let a = LiftedAlgebra::from_braided(boson.clone(), &s).unwrap();
        let a2 = LiftedAlgebra::from_braided(boson.clone(), &boson.nich.cos.twist(&s, &chi).unwrap()).unwrap();
        let psi = boson.psi_from_b(&other, &conv_inverse(&other).unwrap());
        if other != chi {
            assert!(!iso_failure(&a, &a2, &psi, &pairs).holds());
        }
    }
}
