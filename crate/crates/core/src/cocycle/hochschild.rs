//! The Hochschild side: `δ_hoch`, the Künneth split on the quantum plane,
//! `Exp_q`, and the comparisons with `δ` on exponentials and on splittings.

use std::sync::Arc;

use super::{delta_connecting, Cocycle2, KCharacter, Nichols};
use crate::convolution::{check_generator_values, conv_exp, conv_q_exp, convolve, derivation_k, BasisCoalgebra, Functional};
use crate::cyclotomic::{q_factorial, CycNum};
#[cfg(test)]
use crate::cyclotomic::q_binomial;
use crate::datum::{CartanDatum, Family, MultiDeg, SlotKind};
use crate::error::{Error, Result};
use crate::presented::{retraction_u, Mono, Presented, Retraction};

/// Sign convention for `δ_hoch`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HochSign {
    /// `ζ = −d∘u∘m = d∘s∘u∘m`.
    Negative,
    /// `ζ = d∘u∘m`, the sign of the linking display.
    Positive,
}

/// `ζ(x⊗y) = ∓ d(u(xy))` on `B⊗B`, for the `ε`-derivation `d` with the given
/// generator values.
pub fn delta_hoch(nich: &Nichols, d_vals: &[CycNum], u: &Retraction, sign: HochSign) -> Result<Functional> {
    let p = &nich.p;
    check_generator_values(p, d_vals)?;
    let gens = p.k_generators();
    let n = nich.dim();
    let values = (0..n * n)
        .map(|k| {
            let prod = p.mul_mono(&nich.monos[k / n], &nich.monos[k % n]);
            let image = u.apply(p, &prod);
            let mut acc = CycNum::zero();
            for (s, g) in gens.iter().enumerate() {
                let c = image.coeff(g);
                if !c.is_zero() && !d_vals[s].is_zero() {
                    acc = acc.add_ref(&c.mul_ref(&d_vals[s]));
                }
            }
            match sign {
                HochSign::Negative => acc.neg_ref(),
                HochSign::Positive => acc,
            }
        })
        .collect();
    Ok(Functional { domain: nich.b2().clone(), values })
}

/// `ζ = ζ₁ + ζ₂ + ζ₂₁` by support on the quantum plane.
#[derive(Clone, Debug)]
pub struct KunnethParts {
    pub line1: Functional,
    pub line2: Functional,
    pub mixed: Functional,
}

impl KunnethParts {
    pub fn sum(&self) -> Result<Functional> {
        self.line1.add(&self.line2)?.add(&self.mixed)
    }
}

/// Splits a functional on `B⊗B` into its `B₁⊗B₁`, `B₂⊗B₂` and mixed parts.
pub fn kunneth_split(nich: &Nichols, zeta: &Functional) -> Result<KunnethParts> {
    if nich.datum().family != Family::QPlane {
        return Err(Error::Unsupported("the Künneth split is implemented for the quantum plane".into()));
    }
    let n = nich.dim();
    let has = |m: &Mono, s: usize| m[s] > 0;
    let mut parts = [zeta.clone(), zeta.clone(), zeta.clone()];
    for k in 0..n * n {
        let (x, y) = (&nich.monos[k / n], &nich.monos[k % n]);
        let which = if !has(x, 1) && !has(y, 1) {
            0
        } else if !has(x, 0) && !has(y, 0) {
            1
        } else {
            2
        };
        for (i, part) in parts.iter_mut().enumerate() {
            if i != which {
                part.values[k] = CycNum::zero();
            }
        }
    }
    let [line1, line2, mixed] = parts;
    Ok(KunnethParts { line1, line2, mixed })
}

/// `Exp_q(ζ) = e_q^{ζ₁} ∗ e_q^{ζ₂} ∗ e_q^{ζ₂₁}`.
pub fn exp_q_total(parts: &KunnethParts, q: &CycNum, n: u32) -> Result<Cocycle2> {
    let a = conv_q_exp(&parts.line1, q, n)?;
    let b = conv_q_exp(&parts.line2, q, n)?;
    let c = conv_q_exp(&parts.mixed, q, n)?;
    convolve(&convolve(&a, &b)?, &c)
}

/// `K` truncated at the largest generator height.
pub fn k_through_generators(p: &Presented) -> Result<Arc<BasisCoalgebra>> {
    let h = p.k_generators().iter().map(|g| p.mono_height(g)).max().unwrap_or(0);
    Ok(Arc::new(BasisCoalgebra::k(p, h)?))
}

/// `e^d` as an algebra map, read off the convolution exponential on `K`.
pub fn exp_derivation(p: &Presented, d_vals: &[CycNum]) -> Result<KCharacter> {
    let k = k_through_generators(p)?;
    let e = conv_exp(&derivation_k(p, &k, d_vals)?)?;
    let values = p
        .k_generators()
        .iter()
        .map(|g| {
            let label = serde_json::to_value(g).expect("monomials serialize");
            let idx = k.labels.iter().position(|l| *l == label).expect("generators lie in K");
            e.values[idx].clone()
        })
        .collect();
    KCharacter::new(p, values)
}

/// The level at which the exponential square was found to commute.
#[derive(Clone, Debug, PartialEq)]
pub enum SquareLevel {
    /// Equal value tables.
    Cocycle,
    /// Equal after twisting `δ(e^d)` by the witness.
    Class(Functional),
    /// Neither equality nor a witness within the search bound.
    Unresolved,
}

/// Both sides of the exponential square on the quantum plane.
#[derive(Clone, Debug)]
pub struct Theorem33Outcome {
    pub delta_exp: Cocycle2,
    pub exp_q: Cocycle2,
    /// First `B⊗B` index where the two cocycles differ.
    pub mismatch: Option<usize>,
    /// First difference between `δ(e^d)` and `e_q^{ζ₂₁} ∗ e_q^{ζ₁} ∗ e_q^{ζ₂}`.
    pub reordered_mismatch: Option<usize>,
    pub level: SquareLevel,
}

impl Theorem33Outcome {
    pub fn holds(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Compares `δ(e^d)` with `Exp_q(δ_hoch d)` value by value; on a mismatch,
/// searches for a twist supported on `K`-degrees relating the two.
pub fn theorem33_check(nich: &Nichols, d_vals: &[CycNum]) -> Result<Theorem33Outcome> {
    let p = &nich.p;
    let u = retraction_u(p);
    let delta_exp = delta_connecting(nich, &exp_derivation(p, d_vals)?, &u)?;
    let zeta = delta_hoch(nich, d_vals, &u, HochSign::Negative)?;
    let parts = kunneth_split(nich, &zeta)?;
    let q = nich.datum().q();
    let exp_q = exp_q_total(&parts, &q, p.n)?;
    let mismatch = delta_exp.first_difference(&exp_q);
    let reordered = convolve(
        &convolve(&conv_q_exp(&parts.mixed, &q, p.n)?, &conv_q_exp(&parts.line1, &q, p.n)?)?,
        &conv_q_exp(&parts.line2, &q, p.n)?,
    )?;
    let level = match mismatch {
        None => SquareLevel::Cocycle,
        Some(_) => match twist_search(nich, &delta_exp, &exp_q)? {
            Some(chi) => SquareLevel::Class(chi),
            None => SquareLevel::Unresolved,
        },
    };
    Ok(Theorem33Outcome { reordered_mismatch: delta_exp.first_difference(&reordered), delta_exp, exp_q, mismatch, level })
}

fn in_k_degrees(gens: &[MultiDeg], deg: &MultiDeg) -> bool {
    deg.is_zero() || gens.iter().any(|g| deg.checked_sub(g).is_some_and(|rest| in_k_degrees(gens, &rest)))
}

/// Looks for a unital invariant `χ` on `B`, supported on `K`-degrees, with
/// `σ^χ = target`. Fixes the lowest mismatching pair one unknown at a time,
/// using that the twist is affine in each single value at that pair.
pub fn twist_search(nich: &Nichols, sigma: &Cocycle2, target: &Cocycle2) -> Result<Option<Functional>> {
    let p = &nich.p;
    let d = nich.datum();
    let b = nich.b();
    let gens: Vec<MultiDeg> = p.k_generators().iter().map(|g| p.mono_deg(g)).collect();
    let mut unknowns: Vec<usize> = (0..nich.dim())
        .filter(|&k| k != b.unit && d.is_invariant(&b.degrees[k]) && in_k_degrees(&gens, &b.degrees[k]))
        .collect();
    unknowns.sort_by_key(|&k| std::cmp::Reverse(b.heights[k]));
    let heights = &nich.b2().heights;
    let mut chi = Functional::counit(b);
    let eval = |chi: &Functional, k: usize| -> Result<CycNum> {
        Ok(nich.cos.twist(sigma, chi)?.values[k].sub_ref(&target.values[k]))
    };
    for _ in 0..4 * unknowns.len() + 4 {
        let current = nich.cos.twist(sigma, &chi)?;
        let Some(k) = (0..current.values.len())
            .filter(|&k| current.values[k] != target.values[k])
            .min_by_key(|&k| (heights[k], k))
        else {
            return Ok(Some(chi));
        };
        let v0 = current.values[k].sub_ref(&target.values[k]);
        let mut fixed = false;
        for &x in unknowns.iter().filter(|&&x| b.heights[x] <= heights[k]) {
            let shifted = |t: i64| {
                let mut c = chi.clone();
                c.values[x] = c.values[x].add_ref(&CycNum::from_int(t));
                c
            };
            let (v1, v2) = (eval(&shifted(1), k)?, eval(&shifted(2), k)?);
            let slope = v1.sub_ref(&v0);
            if slope.is_zero() || v2.sub_ref(&v1) != slope {
                continue;
            }
            let t = v0.neg_ref().div_ref(&slope)?;
            chi.values[x] = chi.values[x].add_ref(&t);
            fixed = true;
            break;
        }
        if !fixed {
            return Ok(None);
        }
    }
    Ok(None)
}

/// `δf₂ ∗ δf₂₁` and `δf₂₁ ∗ δf₂` at `x₂² ⊗ x₁x₂^{N−1}` with the closed forms
/// `q⁻¹(1+q)f₂(z₂)f₂₁(z₂₁)` and `(1+q)f₂₁(z₂₁)f₂(z₂)`.
#[derive(Clone, Debug)]
pub struct OrderSensitivity {
    pub forward: CycNum,
    pub backward: CycNum,
    pub forward_expected: CycNum,
    pub backward_expected: CycNum,
}

pub fn order_sensitivity(nich: &Nichols, f2: &CycNum, f21: &CycNum) -> Result<OrderSensitivity> {
    let p = &nich.p;
    if nich.datum().family != Family::QPlane {
        return Err(Error::Unsupported("order sensitivity is stated for the quantum plane".into()));
    }
    let u = retraction_u(p);
    let zero = CycNum::zero();
    let d2 = delta_connecting(nich, &KCharacter::new(p, vec![zero.clone(), f2.clone(), zero.clone()])?, &u)?;
    let d21 = delta_connecting(nich, &KCharacter::new(p, vec![zero.clone(), zero, f21.clone()])?, &u)?;
    let n = p.n;
    let k = nich.pair(&nich.mono(&[(1, 2)]), &nich.mono(&[(0, 1), (1, n - 1)]));
    let q = nich.datum().q();
    let one_q = CycNum::one().add_ref(&q);
    let ff = f2.mul_ref(f21);
    Ok(OrderSensitivity {
        forward: convolve(&d2, &d21)?.values[k].clone(),
        backward: convolve(&d21, &d2)?.values[k].clone(),
        forward_expected: q.inv()?.mul_ref(&one_q).mul_ref(&ff),
        backward_expected: one_q.mul_ref(&ff),
    })
}

/// Outcome of `δ(ρ¹(f_S, f_T)) = ρ²(δf_S, δf_T)`.
#[derive(Clone, Debug)]
pub struct SplitOutcome {
    pub pairs_checked: usize,
    pub mismatch: Option<usize>,
}

impl SplitOutcome {
    pub fn holds(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Sub-datum on `vertices` together with the slot of the full datum each of
/// its slots comes from.
fn sub_presentation(full: &Presented, vertices: &[usize]) -> Result<(Nichols, Vec<usize>)> {
    let d = full.datum.restrict(vertices)?;
    let nich = Nichols::from_datum(&d)?;
    let map = nich
        .p
        .slots
        .iter()
        .map(|s| match (s.kind, s.pair) {
            (SlotKind::Root, _) => vertices[s.deg.0.iter().position(|&e| e == 1).expect("simple root")],
            (SlotKind::Linking, Some((j, i))) => full
                .slots
                .iter()
                .position(|t| t.pair == Some((vertices[j], vertices[i])))
                .expect("linking survives restriction"),
            (SlotKind::Linking, None) => unreachable!("linking slots carry their pair"),
        })
        .collect();
    Ok((nich, map))
}

/// Splits values on the slots of `d` into values on the slots of the
/// sub-data on `s` and on its complement.
pub fn split_values(d: &CartanDatum, s: &[usize], f: &[CycNum]) -> Result<(Vec<CycNum>, Vec<CycNum>)> {
    let full = Presented::new(d)?;
    check_generator_values(&full, f)?;
    let t: Vec<usize> = (0..d.theta).filter(|v| !s.contains(v)).collect();
    let (_, map_s) = sub_presentation(&full, s)?;
    let f_t = if t.is_empty() { Vec::new() } else { sub_presentation(&full, &t)?.1.iter().map(|&k| f[k].clone()).collect() };
    Ok((map_s.iter().map(|&k| f[k].clone()).collect(), f_t))
}

/// Checks the splitting square for a vertex set `s` not linked to its
/// complement. An empty complement compares `δf` with itself.
pub fn prop36_check(d: &CartanDatum, s: &[usize], f_s: &[CycNum], f_t: &[CycNum]) -> Result<SplitOutcome> {
    let mut s: Vec<usize> = s.to_vec();
    s.sort_unstable();
    s.dedup();
    let t: Vec<usize> = (0..d.theta).filter(|v| !s.contains(v)).collect();
    if d.linking.iter().any(|&(i, j)| s.contains(&i) != s.contains(&j)) {
        return Err(Error::Datum("a vertex of S is linked to a vertex outside S".into()));
    }
    let full = Nichols::from_datum(d)?;
    let u = retraction_u(&full.p);
    let (nich_s, map_s) = sub_presentation(&full.p, &s)?;
    let mut combined = vec![CycNum::zero(); full.p.nslots()];
    for (k, &slot) in map_s.iter().enumerate() {
        combined[slot] = f_s.get(k).cloned().ok_or_else(|| Error::DomainMismatch("f_S is too short".into()))?;
    }
    let sigma_s = delta_connecting(&nich_s, &KCharacter::new(&nich_s.p, f_s.to_vec())?, &retraction_u(&nich_s.p))?;
    let sub_t = if t.is_empty() {
        None
    } else {
        let (nich_t, map_t) = sub_presentation(&full.p, &t)?;
        for (k, &slot) in map_t.iter().enumerate() {
            combined[slot] = f_t.get(k).cloned().ok_or_else(|| Error::DomainMismatch("f_T is too short".into()))?;
        }
        let sigma_t = delta_connecting(&nich_t, &KCharacter::new(&nich_t.p, f_t.to_vec())?, &retraction_u(&nich_t.p))?;
        Some((nich_t, map_t, sigma_t))
    };
    let sigma = delta_connecting(&full, &KCharacter::new(&full.p, combined)?, &u)?;
    let project = |m: &Mono, sub: &Nichols, map: &[usize]| -> usize {
        let part: Mono = map.iter().map(|&slot| m[slot]).collect();
        sub.index_of(&part).expect("B monomials restrict to B monomials")
    };
    let dg = full.datum();
    let n = full.dim();
    let mismatch = (0..n * n).find(|&k| {
        let (x, y) = (&full.monos[k / n], &full.monos[k % n]);
        let (xs, ys) = (project(x, &nich_s, &map_s), project(y, &nich_s, &map_s));
        let mut want = sigma_s.values[xs * nich_s.dim() + ys].clone();
        if let Some((nich_t, map_t, sigma_t)) = &sub_t {
            let (xt, yt) = (project(x, nich_t, map_t), project(y, nich_t, map_t));
            let deg_ys = full.p.mono_deg(&map_s.iter().fold(full.p.one(), |mut m, &slot| {
                m[slot] = y[slot];
                m
            }));
            let deg_xt = full.p.mono_deg(&map_t.iter().fold(full.p.one(), |mut m, &slot| {
                m[slot] = x[slot];
                m
            }));
            want = want.mul_ref(&sigma_t.values[xt * nich_t.dim() + yt]).mul_ref(&dg.chi_eval(&deg_ys, &deg_xt));
        }
        sigma.values[k] != want
    });
    Ok(SplitOutcome { pairs_checked: n * n, mismatch })
}

/// First pair `x_i^m ⊗ x_j^n` where `δf` on a quantum plane or linear space departs
/// from: `fs(z_i)` if `i = j`, `m + n = N`; `n!_{q_j} fs(z_ij)^n` if `i > j` are
/// linked and `m = n`; `0` otherwise (for `m, n ≥ 1`).
pub fn sigma_formula_failure(nich: &Nichols, f: &KCharacter) -> Result<Option<usize>> {
    let p = &nich.p;
    let d = nich.datum();
    let sigma = delta_connecting(nich, f, &retraction_u(p))?;
    let fs = f.antipode(p)?;
    let n = p.n;
    for i in 0..d.theta {
        for j in 0..d.theta {
            for a in 1..n {
                for b in 1..n {
                    let k = nich.pair(&nich.mono(&[(i, a)]), &nich.mono(&[(j, b)]));
                    let want = if i == j && a + b == n {
                        fs.values[i].clone()
                    } else if i > j && a == b {
                        match p.slots.iter().position(|s| s.pair == Some((i, j))) {
                            Some(slot) => {
                                let qj = d.chi_eval(&d.deg_of_letter(j), &d.deg_of_letter(j));
                                q_factorial(b, &qj).mul_ref(&fs.values[slot].powu(b as u64))
                            }
                            None => CycNum::zero(),
                        }
                    } else {
                        CycNum::zero()
                    };
                    if sigma.values[k] != want {
                        return Ok(Some(k));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<CycNum> {
        v.iter().map(|&x| CycNum::from_int(x)).collect()
    }

    #[test]
    fn hochschild_cocycle_on_a1_and_linking() {
        let nich = Nichols::from_datum(&CartanDatum::a1(3)).unwrap();
        let u = retraction_u(&nich.p);
        let z = delta_hoch(&nich, &ints(&[4]), &u, HochSign::Negative).unwrap();
        for i in 0..3u32 {
            for j in 0..3u32 {
                let want = if i + j == 3 { -4 } else { 0 };
                assert_eq!(z.values[nich.pair(&[i], &[j])], CycNum::from_int(want));
            }
        }
        let nich = Nichols::from_datum(&CartanDatum::qplane(3)).unwrap();
        let u = retraction_u(&nich.p);
        let pos = delta_hoch(&nich, &ints(&[0, 0, 5]), &u, HochSign::Positive).unwrap();
        let neg = delta_hoch(&nich, &ints(&[0, 0, 5]), &u, HochSign::Negative).unwrap();
        let k = nich.pair(&nich.mono(&[(1, 1)]), &nich.mono(&[(0, 1)]));
        assert_eq!(pos.values[k], CycNum::from_int(5));
        assert_eq!(neg.values[k], CycNum::from_int(-5));
        assert_eq!(pos.values.iter().filter(|v| !v.is_zero()).count(), 1);
    }

    #[test]
    fn kunneth_split_recombines() {
        let nich = Nichols::from_datum(&CartanDatum::qplane(3)).unwrap();
        let u = retraction_u(&nich.p);
        let z1 = delta_hoch(&nich, &ints(&[1, 0, 0]), &u, HochSign::Negative).unwrap();
        let parts = kunneth_split(&nich, &z1).unwrap();
        assert_eq!(parts.line1, z1);
        assert!(parts.line2.is_zero() && parts.mixed.is_zero());
        let z21 = delta_hoch(&nich, &ints(&[0, 0, 1]), &u, HochSign::Negative).unwrap();
        let parts = kunneth_split(&nich, &z21).unwrap();
        assert_eq!(parts.mixed, z21);
        let all = delta_hoch(&nich, &ints(&[1, 2, 3]), &u, HochSign::Negative).unwrap();
        assert_eq!(kunneth_split(&nich, &all).unwrap().sum().unwrap(), all);
        let a1 = Nichols::from_datum(&CartanDatum::a1(3)).unwrap();
        assert!(kunneth_split(&a1, &Functional::zero(a1.b2())).is_err());
    }

    #[test]
    fn delta_matches_closed_quantum_plane_formula() {
        let nich = Nichols::from_datum(&CartanDatum::qplane(3)).unwrap();
        let p = &nich.p;
        let f = KCharacter::from_ints(p, &[2, 3, 5]).unwrap();
        let fs = f.antipode(p).unwrap();
        let sigma = delta_connecting(&nich, &f, &retraction_u(p)).unwrap();
        let q = nich.datum().q();
        let (s1, s2, s21) = (&fs.values[0], &fs.values[1], &fs.values[2]);
        let n = 3u32;
        for k in 0..n {
            for m in 0..n {
                for j in 0..n {
                    for l in 0..n {
                        let mut want = CycNum::zero();
                        if k == 0 && l == 0 && m == j {
                            want = want.add_ref(&q_factorial(j, &q).mul_ref(&s21.powu(j as u64)));
                        }
                        if k == 0 && m + l >= n && j == m + l - n {
                            let c = q_factorial(j, &q).mul_ref(&q_binomial(m, j, &q));
                            want = want.add_ref(&c.mul_ref(s2).mul_ref(&s21.powu(j as u64)));
                        }
                        if l == 0 && k + j >= n && m == k + j - n {
                            let c = q_factorial(m, &q).mul_ref(&q_binomial(j, m, &q));
                            want = want.add_ref(&c.mul_ref(s1).mul_ref(&s21.powu(m as u64)));
                        }
                        if k + j == m + l && k + j >= n {
                            let r = k + j - n;
                            let c = q.powu(((n - l) * (n - k)) as u64).mul_ref(&q_factorial(r, &q));
                            let c = c.mul_ref(&q_binomial(m, r, &q)).mul_ref(&q_binomial(j, r, &q));
                            want = want.add_ref(&c.mul_ref(s1).mul_ref(s2).mul_ref(&s21.powu(r as u64)));
                        }
                        let idx = nich.pair(&nich.mono(&[(0, k), (1, m)]), &nich.mono(&[(0, j), (1, l)]));
                        assert_eq!(sigma.values[idx], want, "{}", nich.pair_name(idx));
                    }
                }
            }
        }
        let u = retraction_u(p);
        let part = |v: [i64; 3]| delta_connecting(&nich, &KCharacter::from_ints(p, &v).unwrap(), &u).unwrap();
        let (d1, d2, d21) = (part([2, 0, 0]), part([0, 3, 0]), part([0, 0, 5]));
        assert_eq!(convolve(&d1, &d2).unwrap(), convolve(&d2, &d1).unwrap());
        let linking_first = convolve(&convolve(&d21, &d1).unwrap(), &d2).unwrap();
        assert_eq!(linking_first, sigma);
        let linking_last = convolve(&convolve(&d1, &d2).unwrap(), &d21).unwrap();
        assert!(linking_last.first_difference(&sigma).is_some());
    }

    #[test]
    fn exponential_square_on_single_generators() {
        let nich = Nichols::from_datum(&CartanDatum::qplane(3)).unwrap();
        for d in [[0, 0, 0], [1, 0, 0], [0, 2, 0], [0, 0, 1], [1, 2, 0], [0, 0, -3]] {
            let out = theorem33_check(&nich, &ints(&d)).unwrap();
            assert!(out.holds(), "{d:?} at {}", nich.pair_name(out.mismatch.unwrap()));
            assert_eq!(out.level, SquareLevel::Cocycle);
        }
        let out = theorem33_check(&nich, &ints(&[0, 0, 0])).unwrap();
        assert_eq!(out.exp_q, Functional::counit(nich.b2()));
    }

    #[test]
    fn exponential_square_with_linking_and_roots() {
        let nich = Nichols::from_datum(&CartanDatum::qplane(3)).unwrap();
        for d in [[1, 1, 1], [1, 2, 1], [0, 1, 1]] {
            let out = theorem33_check(&nich, &ints(&d)).unwrap();
            assert!(!out.holds(), "{d:?}");
            assert_eq!(out.reordered_mismatch, None, "{d:?}");
            // x1*x2 and x1^2*x2^2 carry every invariant twist, and no twist
            // on them relates the two sides
            assert_eq!(out.level, SquareLevel::Unresolved, "{d:?}");
        }
    }

    #[test]
    fn twist_search_recovers_a_known_twist() {
        let nich = Nichols::from_datum(&CartanDatum::qplane(3)).unwrap();
        let sigma = delta_connecting(&nich, &KCharacter::from_ints(&nich.p, &[1, 2, 1]).unwrap(), &retraction_u(&nich.p)).unwrap();
        let mut chi = Functional::counit(nich.b());
        chi.values[nich.index_of(&nich.mono(&[(0, 1), (1, 1)])).unwrap()] = CycNum::from_int(3);
        chi.values[nich.index_of(&nich.mono(&[(0, 2), (1, 2)])).unwrap()] = CycNum::from_int(-2);
        let target = nich.cos.twist(&sigma, &chi).unwrap();
        let found = twist_search(&nich, &sigma, &target).unwrap().expect("witness");
        assert_eq!(nich.cos.twist(&sigma, &found).unwrap(), target);
    }

    #[test]
    fn remark_order_sensitivity() {
        let nich = Nichols::from_datum(&CartanDatum::qplane(3)).unwrap();
        let r = order_sensitivity(&nich, &CycNum::from_int(2), &CycNum::from_int(3)).unwrap();
        let q = nich.datum().q();
        assert_eq!(r.backward, r.backward_expected);
        assert_ne!(r.forward, r.backward);
        // the two orders differ by q, not q⁻¹
        assert_eq!(r.forward, r.backward.mul_ref(&q));
        assert_ne!(r.forward, r.forward_expected);
    }

    #[test]
    fn splitting_square_on_qls() {
        let d = CartanDatum::preset("qls", 3).unwrap();
        let out = prop36_check(&d, &[0, 1], &ints(&[1, 2, 1]), &ints(&[3])).unwrap();
        assert!(out.holds());
        let out = prop36_check(&d, &[0, 1], &ints(&[0, 0, 0]), &ints(&[3])).unwrap();
        assert!(out.holds());
        assert!(prop36_check(&d, &[0, 2], &ints(&[1, 1]), &ints(&[1])).is_err());
        let nich = Nichols::from_datum(&d).unwrap();
        let f = KCharacter::from_ints(&nich.p, &[1, 2, 3, 1]).unwrap();
        assert_eq!(sigma_formula_failure(&nich, &f).unwrap(), None);
    }
}
