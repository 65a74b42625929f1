//! Cofaces, 2-cocycles and the connecting map `δ: Alg_G(K,k) → H²_G(B,k)`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use rand::Rng;
use rayon::prelude::*;

use crate::convolution::{check_generator_values, conv_inverse, convolve, BasisCoalgebra, Functional};
use crate::cyclotomic::CycNum;
use crate::datum::CartanDatum;
use crate::error::{Error, Result};
use crate::presented::{AlgElt, Mono, Presented, Retraction};

pub mod hochschild;
pub mod lifted;

pub use hochschild::{
    delta_hoch, exp_derivation, exp_q_total, kunneth_split, order_sensitivity, prop36_check, sigma_formula_failure, split_values, theorem33_check,
    twist_search, HochSign, KunnethParts, OrderSensitivity, SplitOutcome, SquareLevel, Theorem33Outcome,
};
pub use lifted::{deformation_iso_check_b, deformation_iso_check_y, Bosonization, IsoOutcome, LiftedAlgebra, YElt};


/// A 2-cocycle is stored as a functional on `X⊗X`.
pub type Cocycle2 = Functional;

/// Product structure constants `a·b = Σ c_k e_k` of a based algebra.
pub type ProductTable = Vec<Vec<Vec<(usize, CycNum)>>>;

/// A unital algebra map `K → k`, given by its values on the generators `z_α`.
#[derive(Clone, Debug, PartialEq)]
pub struct KCharacter {
    pub values: Vec<CycNum>,
    gens: Vec<Mono>,
}

impl KCharacter {
    pub fn new(p: &Presented, values: Vec<CycNum>) -> Result<Self> {
        check_generator_values(p, &values)?;
        Ok(KCharacter { values, gens: p.k_generators() })
    }

    pub fn from_ints(p: &Presented, values: &[i64]) -> Result<Self> {
        Self::new(p, values.iter().map(|&v| CycNum::from_int(v)).collect())
    }

    /// The counit `ε`.
    pub fn trivial(p: &Presented) -> Self {
        KCharacter { values: vec![CycNum::zero(); p.nslots()], gens: p.k_generators() }
    }

    /// `f(z^b) = ∏ f(z_α)^{b_α}` on a `K` monomial.
    pub fn eval_mono(&self, m: &[u32]) -> CycNum {
        let mut acc = CycNum::one();
        for (s, g) in self.gens.iter().enumerate() {
            let b = m[s] / g[s];
            if b > 0 {
                acc = acc.mul_ref(&self.values[s].powu(b as u64));
            }
        }
        acc
    }

    pub fn eval(&self, a: &AlgElt) -> CycNum {
        let mut acc = CycNum::zero();
        for (m, c) in a.iter() {
            acc = acc.add_ref(&c.mul_ref(&self.eval_mono(m)));
        }
        acc
    }

    /// `f∘s`, again an algebra map since `K` is commutative.
    pub fn antipode(&self, p: &Presented) -> Result<KCharacter> {
        let values = self
            .gens
            .iter()
            .map(|g| Ok(self.eval(&p.antipode_k(g, p.mono_height(g))?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(KCharacter { values, gens: self.gens.clone() })
    }

    /// Value table on a truncated `K`.
    pub fn on_k(&self, k: &Arc<BasisCoalgebra>) -> Functional {
        let values = k
            .labels
            .iter()
            .map(|l| self.eval_mono(&serde_json::from_value::<Mono>(l.clone()).expect("K labels are monomials")))
            .collect();
        Functional { domain: k.clone(), values }
    }
}

/// A braided or ordinary based Hopf algebra `X` with its tensor square and
/// (on demand) cube, carrying the cosimplicial structure of `Hom(X^n, k)`.
pub struct Cosimplicial {
    pub base: Arc<BasisCoalgebra>,
    pub square: Arc<BasisCoalgebra>,
    cube: OnceLock<Arc<BasisCoalgebra>>,
    prod: ProductTable,
    base_unit: usize,
}

impl Cosimplicial {
    pub fn new(base: Arc<BasisCoalgebra>, prod: ProductTable) -> Self {
        let square = Arc::new(base.tensor_power(2));
        let base_unit = base.unit;
        Cosimplicial { base, square, cube: OnceLock::new(), prod, base_unit }
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn mul(&self, a: usize, b: usize) -> &[(usize, CycNum)] {
        &self.prod[a][b]
    }

    pub fn cube(&self) -> &Arc<BasisCoalgebra> {
        self.cube.get_or_init(|| Arc::new(self.base.tensor_power(3)))
    }

    pub fn power(&self, n: usize) -> Result<Arc<BasisCoalgebra>> {
        match n {
            1 => Ok(self.base.clone()),
            2 => Ok(self.square.clone()),
            3 => Ok(self.cube().clone()),
            _ => Err(Error::FaceIndex { index: n, power: 3 }),
        }
    }

    /// `∂^i f` for `f` on `X^n`: `ε⊗f`, `f(1⊗…⊗m⊗…⊗1)` or `f⊗ε`.
    pub fn coface(&self, i: usize, f: &Functional) -> Result<Functional> {
        let n = f.domain.power();
        if i > n + 1 {
            return Err(Error::FaceIndex { index: i, power: n });
        }
        if f.domain.factors.iter().any(|&d| d != self.dim()) {
            return Err(Error::DomainMismatch(format!("{} is not a power of {}", f.domain.name, self.base.name)));
        }
        let target = self.power(n + 1)?;
        let values = (0..target.dim())
            .map(|idx| {
                let parts = target.tensor_split(idx);
                if i == 0 || i == n + 1 {
                    let (edge, rest) = if i == 0 { (parts[0], &parts[1..]) } else { (parts[n], &parts[..n]) };
                    let e = &self.base.counit[edge];
                    if e.is_zero() {
                        return CycNum::zero();
                    }
                    return f.values[f.domain.tensor_index(rest)].mul_ref(e);
                }
                let mut acc = CycNum::zero();
                for (m, c) in self.mul(parts[i - 1], parts[i]) {
                    let mut merged = parts[..i - 1].to_vec();
                    merged.push(*m);
                    merged.extend_from_slice(&parts[i + 1..]);
                    let v = &f.values[f.domain.tensor_index(&merged)];
                    if !v.is_zero() {
                        acc = acc.add_ref(&v.mul_ref(c));
                    }
                }
                acc
            })
            .collect();
        Ok(Functional { domain: target, values })
    }

    /// `∂χ = ∂⁰χ ∗ ∂²χ ∗ ∂¹χ⁻¹`.
    pub fn coboundary(&self, chi: &Functional) -> Result<Cocycle2> {
        self.twist(&Functional::counit(&self.square), chi)
    }

    /// `σ′ = ∂⁰χ ∗ ∂²χ ∗ σ ∗ ∂¹χ⁻¹`.
    pub fn twist(&self, sigma: &Cocycle2, chi: &Functional) -> Result<Cocycle2> {
        if !chi.is_unital() {
            return Err(Error::NotUnital);
        }
        let inv = conv_inverse(chi)?;
        let left = convolve(&self.coface(0, chi)?, &self.coface(2, chi)?)?;
        convolve(&convolve(&left, sigma)?, &self.coface(1, &inv)?)
    }

    /// `σ(1⊗x) = ε(x) = σ(x⊗1)`; returns the first violating basis element.
    pub fn normalization_failure(&self, sigma: &Cocycle2) -> Option<usize> {
        let u = self.base_unit;
        (0..self.dim()).find(|&x| {
            let e = &self.base.counit[x];
            sigma.values[self.square.tensor_index(&[u, x])] != *e || sigma.values[self.square.tensor_index(&[x, u])] != *e
        })
    }

    /// `∂⁰σ ∗ ∂²σ = ∂³σ ∗ ∂¹σ` on all of `X^{⊗3}`; the first failing index.
    pub fn cocycle_failure_by_cofaces(&self, sigma: &Cocycle2) -> Result<Option<usize>> {
        let lhs = convolve(&self.coface(0, sigma)?, &self.coface(2, sigma)?)?;
        let rhs = convolve(&self.coface(3, sigma)?, &self.coface(1, sigma)?)?;
        Ok(lhs.first_difference(&rhs))
    }

    /// The braided (or, without braiding, ordinary) 2-cocycle identity
    /// `σ(y₁ ⊗ (y₂)₋₁z₁) σ(x ⊗ (y₂)₀z₂) = σ(x₁ ⊗ (x₂)₋₁y₁) σ((x₂)₀y₂ ⊗ z)`
    /// on every basis triple; returns the first failure.
    pub fn cocycle_failure(&self, sigma: &Cocycle2) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let b = &self.base;
        let s = |x: usize, y: usize| &sigma.values[x * n + y];
        let crossing: Option<Vec<Vec<CycNum>>> = b.braiding.as_ref().map(|d| {
            (0..n).map(|a| (0..n).map(|c| d.zeta(d.chi_exp(&b.degrees[a], &b.degrees[c]) as i64).clone()).collect()).collect()
        });
        let cross = |a: usize, c: usize| crossing.as_ref().map(|t| t[a][c].clone()).unwrap_or_else(CycNum::one);
        // T1[x][a][c] = σ(x, ac), T2[a][c][z] = σ(ac, z)
        let sigma_on = |x: usize, terms: &[(usize, CycNum)], left: bool| {
            let mut acc = CycNum::zero();
            for (m, c) in terms {
                let v = if left { s(*m, x) } else { s(x, *m) };
                if !v.is_zero() {
                    acc = acc.add_ref(&v.mul_ref(c));
                }
            }
            acc
        };
        // W[y][z] = Σ c χ^{z₁}(g^{y₂}) σ(y₁,z₁) · [y₂ ⊗ z₂]; V[x][y] = Σ c χ^{y₁}(g^{x₂}) σ(x₁,y₁) · [x₂ ⊗ y₂]
        let contract = |u: usize, w: usize| -> Vec<(usize, usize, CycNum)> {
            let mut acc: HashMap<(usize, usize), CycNum> = HashMap::new();
            for (u1, u2, cu) in &b.coproduct[u] {
                for (w1, w2, cw) in &b.coproduct[w] {
                    let v = s(*u1 as usize, *w1 as usize);
                    if v.is_zero() {
                        continue;
                    }
                    let t = v.mul_ref(cu).mul_ref(cw).mul_ref(&cross(*w1 as usize, *u2 as usize));
                    let e = acc.entry((*u2 as usize, *w2 as usize)).or_default();
                    *e = e.add_ref(&t);
                }
            }
            let mut out: Vec<_> = acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|((a, c), v)| (a, c, v)).collect();
            out.sort_by_key(|t| (t.0, t.1));
            out
        };
        let pairs: Vec<Vec<(usize, usize, CycNum)>> = (0..n * n).map(|k| contract(k / n, k % n)).collect();
        let t1: Vec<CycNum> = (0..n * n * n).map(|k| sigma_on(k / (n * n), self.mul((k / n) % n, k % n), false)).collect();
        let t2: Vec<CycNum> = (0..n * n * n).map(|k| sigma_on(k % n, self.mul(k / (n * n), (k / n) % n), true)).collect();
        let failures: Vec<Option<(usize, usize, usize)>> = (0..n)
            .into_par_iter()
            .map(|x| {
                for y in 0..n {
                    let v = &pairs[x * n + y];
                    for z in 0..n {
                        let mut lhs = CycNum::zero();
                        for (y2, z2, c) in &pairs[y * n + z] {
                            let t = &t1[(x * n + y2) * n + z2];
                            if !t.is_zero() {
                                lhs = lhs.add_ref(&t.mul_ref(c));
                            }
                        }
                        let mut rhs = CycNum::zero();
                        for (x2, y2, c) in v {
                            let t = &t2[(x2 * n + y2) * n + z];
                            if !t.is_zero() {
                                rhs = rhs.add_ref(&t.mul_ref(c));
                            }
                        }
                        if lhs != rhs {
                            return Some((x, y, z));
                        }
                    }
                }
                None
            })
            .collect();
        failures.into_iter().flatten().next()
    }
}

/// `B` with its braided structure, product table and PBW monomials.
pub struct Nichols {
    pub p: Arc<Presented>,
    pub monos: Vec<Mono>,
    pub cos: Cosimplicial,
    index: HashMap<Mono, usize>,
}

impl Nichols {
    pub fn new(p: Arc<Presented>) -> Self {
        let b = Arc::new(BasisCoalgebra::braided_b(&p));
        let monos = p.b_basis();
        let index: HashMap<Mono, usize> = monos.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        let prod = monos
            .iter()
            .map(|a| {
                monos
                    .iter()
                    .map(|c| p.mul_b(a, c).iter().map(|(m, v)| (index[m], v.clone())).collect())
                    .collect()
            })
            .collect();
        Nichols { p, monos, cos: Cosimplicial::new(b, prod), index }
    }

    pub fn from_datum(d: &CartanDatum) -> Result<Self> {
        Ok(Self::new(Arc::new(Presented::new(d)?)))
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.p.datum
    }

    pub fn b(&self) -> &Arc<BasisCoalgebra> {
        &self.cos.base
    }

    pub fn b2(&self) -> &Arc<BasisCoalgebra> {
        &self.cos.square
    }

    pub fn dim(&self) -> usize {
        self.monos.len()
    }

    pub fn index_of(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Index of `x ⊗ y` in `B⊗B`.
    pub fn pair(&self, x: &[u32], y: &[u32]) -> usize {
        self.index[x] * self.dim() + self.index[y]
    }

    /// A `B` monomial from `(slot, exponent)` pairs.
    pub fn mono(&self, parts: &[(usize, u32)]) -> Mono {
        let mut m = self.p.one();
        for &(s, e) in parts {
            m[s] = e;
        }
        m
    }

    pub fn name(&self, idx: usize) -> String {
        self.p.mono_name(&self.monos[idx])
    }

    pub fn pair_name(&self, idx: usize) -> String {
        let n = self.dim();
        format!("{} ⊗ {}", self.name(idx / n), self.name(idx % n))
    }

    pub fn triple_name(&self, t: (usize, usize, usize)) -> String {
        format!("{} ⊗ {} ⊗ {}", self.name(t.0), self.name(t.1), self.name(t.2))
    }

    /// A unital G-invariant functional on `B` with values from `rng` on the
    /// invariant monomials of positive height.
    pub fn random_invariant_chi(&self, rng: &mut impl Rng) -> Functional {
        let d = self.datum();
        let b = self.b();
        let values = (0..self.dim())
            .map(|k| {
                if k == b.unit {
                    CycNum::one()
                } else if d.is_invariant(&b.degrees[k]) {
                    CycNum::from_int(rng.gen_range(-3..=3))
                } else {
                    CycNum::zero()
                }
            })
            .collect();
        Functional { domain: b.clone(), values }
    }
}

/// `fu` and `fsu` on `R̄` monomials, memoized.
pub struct Retracted<'a> {
    p: &'a Presented,
    u: &'a Retraction,
    f: KCharacter,
    fs: KCharacter,
    fu: RefCell<HashMap<Mono, CycNum>>,
    fsu: RefCell<HashMap<Mono, CycNum>>,
}

impl<'a> Retracted<'a> {
    pub fn new(p: &'a Presented, u: &'a Retraction, f: &KCharacter) -> Result<Self> {
        Ok(Retracted {
            p,
            u,
            f: f.clone(),
            fs: f.antipode(p)?,
            fu: RefCell::new(HashMap::new()),
            fsu: RefCell::new(HashMap::new()),
        })
    }

    fn cached(&self, cache: &RefCell<HashMap<Mono, CycNum>>, f: &KCharacter, m: &[u32]) -> CycNum {
        if let Some(v) = cache.borrow().get(m) {
            return v.clone();
        }
        let v = f.eval(&self.u.apply_mono(self.p, m));
        cache.borrow_mut().insert(m.to_vec(), v.clone());
        v
    }

    pub fn fu(&self, m: &[u32]) -> CycNum {
        self.cached(&self.fu, &self.f, m)
    }

    pub fn fsu(&self, m: &[u32]) -> CycNum {
        self.cached(&self.fsu, &self.fs, m)
    }

    pub fn fsu_elt(&self, a: &AlgElt) -> CycNum {
        let mut acc = CycNum::zero();
        for (m, c) in a.iter() {
            let v = self.fsu(m);
            if !v.is_zero() {
                acc = acc.add_ref(&v.mul_ref(c));
            }
        }
        acc
    }

    pub fn fu_elt(&self, a: &AlgElt) -> CycNum {
        let mut acc = CycNum::zero();
        for (m, c) in a.iter() {
            let v = self.fu(m);
            if !v.is_zero() {
                acc = acc.add_ref(&v.mul_ref(c));
            }
        }
        acc
    }

    /// `σ_R(r⊗r′) = Σ χ^{|r′₁|}(g^{|r₂|}) fu(r₁) fu(r′₁) fsu(r₂r′₂)`.
    pub fn sigma_r(&self, r: &[u32], r2: &[u32]) -> CycNum {
        let p = self.p;
        let d = &p.datum;
        let dx = p.coproduct(r);
        let dy = p.coproduct(r2);
        let mut acc = CycNum::zero();
        for ((x1, x2), cx) in dx.iter() {
            let a = self.fu(x1);
            if a.is_zero() {
                continue;
            }
            let deg_x2 = p.mono_deg(x2);
            for ((y1, y2), cy) in dy.iter() {
                let b = self.fu(y1);
                if b.is_zero() {
                    continue;
                }
                let w = self.fsu_elt(&p.mul_mono(x2, y2));
                if w.is_zero() {
                    continue;
                }
                let scal = d.chi_eval(&p.mono_deg(y1), &deg_x2);
                acc = acc.add_ref(&cx.mul_ref(cy).mul_ref(&a).mul_ref(&b).mul_ref(&w).mul_ref(&scal));
            }
        }
        acc
    }

    pub fn sigma_r_elt(&self, r: &AlgElt, r2: &AlgElt) -> CycNum {
        let mut acc = CycNum::zero();
        for (a, ca) in r.iter() {
            for (b, cb) in r2.iter() {
                acc = acc.add_ref(&self.sigma_r(a, b).mul_ref(ca).mul_ref(cb));
            }
        }
        acc
    }

    /// `σ_R⁻¹ = ∂¹fu ∗ ∂²fsu ∗ ∂⁰fsu`:
    /// `Σ χ^{|r′₁|}(g^{|r₂|}) fu(r₁r′₁) fsu(r₂) fsu(r′₂)`.
    pub fn sigma_r_inverse(&self, r: &[u32], r2: &[u32]) -> CycNum {
        let p = self.p;
        let d = &p.datum;
        let dx = p.coproduct(r);
        let dy = p.coproduct(r2);
        let mut acc = CycNum::zero();
        for ((x1, x2), cx) in dx.iter() {
            let a = self.fsu(x2);
            if a.is_zero() {
                continue;
            }
            let deg_x2 = p.mono_deg(x2);
            for ((y1, y2), cy) in dy.iter() {
                let b = self.fsu(y2);
                if b.is_zero() {
                    continue;
                }
                let w = self.fu_elt(&p.mul_mono(x1, y1));
                if w.is_zero() {
                    continue;
                }
                let scal = d.chi_eval(&p.mono_deg(y1), &deg_x2);
                acc = acc.add_ref(&cx.mul_ref(cy).mul_ref(&a).mul_ref(&b).mul_ref(&w).mul_ref(&scal));
            }
        }
        acc
    }

    /// `(fu′ ∗ fsu)(r)` for a second retraction `u′` (with the same `f`).
    pub fn comparison(&self, other: &Retracted, r: &[u32]) -> CycNum {
        let mut acc = CycNum::zero();
        for ((r1, r2), c) in self.p.coproduct(r).iter() {
            let a = other.fu(r1);
            if a.is_zero() {
                continue;
            }
            acc = acc.add_ref(&a.mul_ref(&self.fsu(r2)).mul_ref(c));
        }
        acc
    }
}

/// `δf = σ` on `B⊗B`, through `σ = ∂(fu)(v⊗v)`.
pub fn delta_connecting(nich: &Nichols, f: &KCharacter, u: &Retraction) -> Result<Cocycle2> {
    if !u.coalgebra {
        return Err(Error::Retraction(format!("`{}` is not known to be a coalgebra map", u.name)));
    }
    let ev = Retracted::new(&nich.p, u, f)?;
    let values = (0..nich.dim() * nich.dim())
        .map(|k| ev.sigma_r(&nich.monos[k / nich.dim()], &nich.monos[k % nich.dim()]))
        .collect();
    Ok(Functional { domain: nich.b2().clone(), values })
}

/// `σ⁻¹` from `∂¹fu ∗ ∂²fsu ∗ ∂⁰fsu` pulled back along `v⊗v`.
pub fn delta_inverse_formula(nich: &Nichols, f: &KCharacter, u: &Retraction) -> Result<Functional> {
    let ev = Retracted::new(&nich.p, u, f)?;
    let values = (0..nich.dim() * nich.dim())
        .map(|k| ev.sigma_r_inverse(&nich.monos[k / nich.dim()], &nich.monos[k % nich.dim()]))
        .collect();
    Ok(Functional { domain: nich.b2().clone(), values })
}

/// Checks that `∂(fu)` vanishes on `K⁺R⊗R + R⊗RK⁺` for the given sample
/// monomials of `R̄`, multiplied by every generator `z_α`; returns the first
/// `(r, r′)` where it does not.
pub fn factorization_failure(
    p: &Presented,
    f: &KCharacter,
    u: &Retraction,
    samples: &[Mono],
) -> Result<Option<(AlgElt, AlgElt)>> {
    let ev = Retracted::new(p, u, f)?;
    for z in p.k_generators() {
        for r in samples {
            for r2 in samples {
                let zr = (*p.mul_mono(&z, r)).clone();
                let rb = AlgElt::basis(r2.clone());
                if !ev.sigma_r_elt(&zr, &rb).is_zero() {
                    return Ok(Some((zr, rb)));
                }
                let ra = AlgElt::basis(r.clone());
                let r2z = (*p.mul_mono(r2, &z)).clone();
                if !ev.sigma_r_elt(&ra, &r2z).is_zero() {
                    return Ok(Some((ra, r2z)));
                }
            }
        }
    }
    Ok(None)
}

/// `χ = fu′ ∗ fsu` restricted to `B`, which twists `δ_u f` into `δ_{u′} f`.
pub fn comparison_functional(nich: &Nichols, f: &KCharacter, u: &Retraction, u2: &Retraction) -> Result<Functional> {
    let ev = Retracted::new(&nich.p, u, f)?;
    let ev2 = Retracted::new(&nich.p, u2, f)?;
    let values = nich.monos.iter().map(|m| ev.comparison(&ev2, m)).collect();
    Ok(Functional { domain: nich.b().clone(), values })
}

/// Outcome of comparing the cocycles of two retractions.
#[derive(Clone, Debug)]
pub struct IndependenceOutcome {
    pub chi: Functional,
    pub sigma: Cocycle2,
    pub sigma_prime: Cocycle2,
    /// First `B⊗B` index where `twist(δ_u f, χ) ≠ δ_{u′} f`.
    pub mismatch: Option<usize>,
}

impl IndependenceOutcome {
    pub fn holds(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Verifies `twist(δ_u f, fu′ ∗ fsu) = δ_{u′} f`.
pub fn retraction_independence_check(
    nich: &Nichols,
    f: &KCharacter,
    u: &Retraction,
    u2: &Retraction,
) -> Result<IndependenceOutcome> {
    let sigma = delta_connecting(nich, f, u)?;
    let sigma_prime = delta_connecting(nich, f, u2)?;
    let chi = comparison_functional(nich, f, u, u2)?;
    let twisted = nich.cos.twist(&sigma, &chi)?;
    let mismatch = twisted.first_difference(&sigma_prime);
    Ok(IndependenceOutcome { chi, sigma, sigma_prime, mismatch })
}

/// Per simple root: whether some group generator acts non-trivially, which
/// forces `f(x_i) = 0` for every invariant algebra map `f` on `R`.
pub fn alg_maps_forced(d: &CartanDatum) -> Vec<bool> {
    (0..d.theta)
        .map(|i| {
            let a = crate::datum::MultiDeg::unit(d.theta, i);
            (0..d.group_orders.len()).any(|j| {
                let mut h = vec![0; d.group_orders.len()];
                h[j] = 1;
                d.char_on_group_exp(&a, &h) != 0
            })
        })
        .collect()
}

/// `Alg_G(R,k) = {ε}` by the generator argument.
pub fn alg_maps_trivial(d: &CartanDatum) -> bool {
    alg_maps_forced(d).into_iter().all(|b| b)
}

/// First pair of distinct characters in `fs` whose cocycles coincide.
pub fn injectivity_failure(nich: &Nichols, u: &Retraction, fs: &[KCharacter]) -> Result<Option<(usize, usize)>> {
    let tables = fs.iter().map(|f| delta_connecting(nich, f, u)).collect::<Result<Vec<_>>>()?;
    for i in 0..fs.len() {
        for j in i + 1..fs.len() {
            if fs[i] != fs[j] && tables[i] == tables[j] {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convolution::conv_inverse;
    use crate::cyclotomic::q_factorial;
    use crate::presented::{retraction_u, retraction_u2};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn qplane() -> Nichols {
        Nichols::from_datum(&CartanDatum::qplane(3)).unwrap()
    }

    #[test]
    fn a1_cocycle_values() {
        let nich = Nichols::from_datum(&CartanDatum::a1(3)).unwrap();
        let u = retraction_u(&nich.p);
        let f = KCharacter::from_ints(&nich.p, &[5]).unwrap();
        let s = delta_connecting(&nich, &f, &u).unwrap();
        for i in 0..3u32 {
            for j in 0..3u32 {
                let want = match (i, j) {
                    (0, 0) => 1,
                    _ if i + j == 3 => -5,
                    _ => 0,
                };
                assert_eq!(s.values[nich.pair(&[i], &[j])], CycNum::from_int(want), "{i} {j}");
            }
        }
        assert!(nich.cos.cocycle_failure(&s).is_none());
        assert!(nich.cos.normalization_failure(&s).is_none());
    }

    #[test]
    fn inverse_formula_against_geometric_series() {
        let nich = Nichols::from_datum(&CartanDatum::a1(3)).unwrap();
        let u = retraction_u(&nich.p);
        let f = KCharacter::from_ints(&nich.p, &[2]).unwrap();
        let s = delta_connecting(&nich, &f, &u).unwrap();
        assert_eq!(conv_inverse(&s).unwrap(), delta_inverse_formula(&nich, &f, &u).unwrap());

        // J is not a coideal on the quantum plane, so (u⊗u)Δ and Δ_K u differ on
        // non-ordered products and the closed form drifts from the true inverse.
        let nich = qplane();
        let u = retraction_u(&nich.p);
        let f = KCharacter::from_ints(&nich.p, &[1, 2, 1]).unwrap();
        let s = delta_connecting(&nich, &f, &u).unwrap();
        let inv = conv_inverse(&s).unwrap();
        assert_eq!(convolve(&s, &inv).unwrap(), Functional::counit(nich.b2()));
        let formula = delta_inverse_formula(&nich, &f, &u).unwrap();
        let k = nich.pair(&nich.mono(&[(1, 2)]), &nich.mono(&[(0, 2)]));
        assert_eq!(inv.values[k], CycNum::from_int(-1));
        assert_eq!(formula.values[k], CycNum::one().add_ref(&nich.datum().q()));
    }

    #[test]
    fn trivial_f_gives_trivial_cocycle() {
        let nich = qplane();
        let u = retraction_u(&nich.p);
        let s = delta_connecting(&nich, &KCharacter::trivial(&nich.p), &u).unwrap();
        assert_eq!(s, Functional::counit(nich.b2()));
    }

    #[test]
    fn qplane_cocycle_and_inverse() {
        let nich = qplane();
        let u = retraction_u(&nich.p);
        let f = KCharacter::from_ints(&nich.p, &[1, 2, 1]).unwrap();
        let s = delta_connecting(&nich, &f, &u).unwrap();
        assert!(nich.cos.cocycle_failure(&s).is_none());
        assert_eq!(nich.cos.cocycle_failure_by_cofaces(&s).unwrap(), None);
        // σ(x2^n ⊗ x1^n) = n!_q fs(z21)^n
        let q = nich.datum().q();
        for n in 1..3u32 {
            let v = &s.values[nich.pair(&nich.mono(&[(1, n)]), &nich.mono(&[(0, n)]))];
            let want = q_factorial(n, &q).mul_ref(&CycNum::from_int(-1).powu(n as u64));
            assert_eq!(*v, want);
        }
        let mut bad = s.clone();
        let k = nich.pair(&nich.mono(&[(1, 1)]), &nich.mono(&[(0, 1)]));
        bad.values[k] = bad.values[k].add_ref(&CycNum::one());
        assert!(nich.cos.cocycle_failure(&bad).is_some());
        assert!(nich.cos.cocycle_failure_by_cofaces(&bad).unwrap().is_some());
    }

    #[test]
    fn cofaces_satisfy_cosimplicial_identities() {
        let nich = qplane();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let chi = nich.random_invariant_chi(&mut rng);
        for j in 0..3 {
            for i in 0..j {
                let a = nich.cos.coface(j, &nich.cos.coface(i, &chi).unwrap()).unwrap();
                let b = nich.cos.coface(i, &nich.cos.coface(j - 1, &chi).unwrap()).unwrap();
                assert_eq!(a, b, "{i} {j}");
            }
        }
        assert!(matches!(nich.cos.coface(3, &chi), Err(Error::FaceIndex { .. })));
        let e = Functional::counit(nich.b());
        assert_eq!(nich.cos.coface(0, &e).unwrap(), Functional::counit(nich.b2()));
    }

    #[test]
    fn coboundaries_and_twists() {
        let nich = qplane();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let eps = Functional::counit(nich.b());
        assert_eq!(nich.cos.coboundary(&eps).unwrap(), Functional::counit(nich.b2()));
        let u = retraction_u(&nich.p);
        let s = delta_connecting(&nich, &KCharacter::from_ints(&nich.p, &[1, 2, 1]).unwrap(), &u).unwrap();
        assert_eq!(nich.cos.twist(&s, &eps).unwrap(), s);
        for _ in 0..3 {
            let chi = nich.random_invariant_chi(&mut rng);
            let cb = nich.cos.coboundary(&chi).unwrap();
            assert!(nich.cos.cocycle_failure(&cb).is_none());
            let t = nich.cos.twist(&s, &chi).unwrap();
            assert!(nich.cos.cocycle_failure(&t).is_none());
            assert!(nich.cos.normalization_failure(&t).is_none());
            let back = nich.cos.twist(&t, &conv_inverse(&chi).unwrap()).unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn faces_zero_and_two_commute() {
        let nich = qplane();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = nich.random_invariant_chi(&mut rng);
        let b = nich.random_invariant_chi(&mut rng);
        let l = convolve(&nich.cos.coface(0, &a).unwrap(), &nich.cos.coface(2, &b).unwrap()).unwrap();
        let r = convolve(&nich.cos.coface(2, &b).unwrap(), &nich.cos.coface(0, &a).unwrap()).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn factorization_through_b() {
        let nich = qplane();
        let u = retraction_u(&nich.p);
        let f = KCharacter::from_ints(&nich.p, &[1, 2, 1]).unwrap();
        let samples: Vec<Mono> = nich.monos.iter().take(5).cloned().collect();
        assert!(factorization_failure(&nich.p, &f, &u, &samples).unwrap().is_none());
    }

    #[test]
    fn missing_coalgebra_flag_is_rejected() {
        let nich = Nichols::from_datum(&CartanDatum::a2(3, -1)).unwrap();
        let u = retraction_u(&nich.p);
        let f = KCharacter::from_ints(&nich.p, &[1, 1, 1]).unwrap();
        assert!(matches!(delta_connecting(&nich, &f, &u), Err(Error::Retraction(_))));
        let mut u2 = retraction_u2(&nich.p).unwrap();
        assert_eq!(u2.verify_coalgebra(&nich.p, 8).unwrap(), None);
        assert!(delta_connecting(&nich, &f, &u2).is_ok());
    }

    #[test]
    fn alg_maps_are_trivial_on_presets() {
        for name in ["a1", "qplane", "qls", "a2"] {
            assert!(alg_maps_trivial(&CartanDatum::preset(name, 3).unwrap()));
        }
    }
}
