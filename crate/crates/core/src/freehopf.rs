//! The free braided Hopf algebra `T(V)` on letters `x_1, …, x_θ`.
//!
//! Letters are zero-based internally and one-based in JSON. The coproduct
//! makes every letter primitive and extends multiplicatively through the
//! single crossing rule `(a⊗b)(c⊗d) = χ^{deg c}(g^{deg b}) ac⊗bd`.

use serde_json::{json, Value};

use crate::cyclotomic::{q_binomial, q_factorial, CycNum};
use crate::datum::{CartanDatum, Family, MultiDeg};
use crate::error::{Error, Result};
use crate::lin::Lin;
use crate::linalg::Echelon;

pub type Word = Vec<u8>;
pub type FreeElt = Lin<Word>;
pub type TensorElt = Lin<(Word, Word)>;
pub type Tensor3Elt = Lin<(Word, Word, Word)>;

pub fn word_deg(theta: usize, w: &[u8]) -> MultiDeg {
    let mut v = vec![0u32; theta];
    for &l in w {
        v[l as usize] += 1;
    }
    MultiDeg(v)
}

pub fn letter(i: usize) -> FreeElt {
    FreeElt::basis(vec![i as u8])
}

pub fn word_elt(w: &[u8]) -> FreeElt {
    FreeElt::basis(w.to_vec())
}

pub fn one() -> FreeElt {
    FreeElt::basis(Vec::new())
}

/// `x_i^k`.
pub fn letter_power(i: usize, k: usize) -> FreeElt {
    FreeElt::basis(vec![i as u8; k])
}

/// Concatenation product.
pub fn free_mul(a: &FreeElt, b: &FreeElt) -> FreeElt {
    let mut out = FreeElt::zero();
    for (u, c) in a.iter() {
        for (v, e) in b.iter() {
            let mut w = u.clone();
            w.extend_from_slice(v);
            out.add_term(w, c.mul_ref(e));
        }
    }
    out
}

pub fn free_pow(a: &FreeElt, k: usize) -> FreeElt {
    (0..k).fold(one(), |acc, _| free_mul(&acc, a))
}

/// The MultiDeg of a homogeneous element (zero counts as homogeneous of degree 0).
pub fn degree(theta: usize, a: &FreeElt) -> Result<MultiDeg> {
    let mut degs = a.keys().map(|w| word_deg(theta, w));
    let Some(first) = degs.next() else {
        return Ok(MultiDeg::zero(theta));
    };
    if degs.all(|d| d == first) {
        Ok(first)
    } else {
        Err(Error::NotHomogeneous)
    }
}

/// Splits an element into its homogeneous components.
pub fn components(theta: usize, a: &FreeElt) -> Vec<(MultiDeg, FreeElt)> {
    let mut map: std::collections::BTreeMap<MultiDeg, FreeElt> = Default::default();
    for (w, c) in a.iter() {
        map.entry(word_deg(theta, w)).or_default().add_term(w.clone(), c.clone());
    }
    map.into_iter().collect()
}

pub fn counit(a: &FreeElt) -> CycNum {
    a.coeff(&Vec::new())
}

/// Braided product in `T(V) ⊗ T(V)`.
pub fn braided_tensor_mul(d: &CartanDatum, s: &TensorElt, t: &TensorElt) -> TensorElt {
    let th = d.theta;
    let mut out = TensorElt::zero();
    for ((a, b), x) in s.iter() {
        let db = word_deg(th, b);
        for ((c, e), y) in t.iter() {
            let scalar = d.chi_eval(&word_deg(th, c), &db);
            let mut l = a.clone();
            l.extend_from_slice(c);
            let mut r = b.clone();
            r.extend_from_slice(e);
            out.add_term((l, r), x.mul_ref(y).mul_ref(&scalar));
        }
    }
    out
}

/// `Δ` of a single word: the sum over position subsets sent to the left leg,
/// with one crossing scalar per (right, later left) pair of letters.
pub fn word_coproduct(d: &CartanDatum, w: &[u8]) -> TensorElt {
    let n = w.len();
    let mut out = TensorElt::zero();
    // pairwise exponents chi(α_{w_j}, α_{w_i})
    let th = d.theta;
    let units: Vec<MultiDeg> = (0..th).map(|i| MultiDeg::unit(th, i)).collect();
    let ex: Vec<Vec<u32>> = (0..th).map(|a| (0..th).map(|b| d.chi_exp(&units[a], &units[b])).collect()).collect();
    for mask in 0u64..(1u64 << n) {
        let mut e = 0u64;
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut right_counts = vec![0u64; th];
        for (j, &lj) in w.iter().enumerate() {
            if mask >> j & 1 == 1 {
                for (i, &rc) in right_counts.iter().enumerate() {
                    e += rc * ex[lj as usize][i] as u64;
                }
                left.push(lj);
            } else {
                right_counts[lj as usize] += 1;
                right.push(lj);
            }
        }
        out.add_term((left, right), d.zeta(e as i64).clone());
    }
    out
}

/// `Δ` on `T(V)`.
pub fn free_coproduct(d: &CartanDatum, a: &FreeElt) -> TensorElt {
    let mut out = TensorElt::zero();
    for (w, c) in a.iter() {
        out.add_scaled(&word_coproduct(d, w), c);
    }
    out
}

/// `Δ` computed as the braided product of the letter coproducts.
pub fn free_coproduct_multiplicative(d: &CartanDatum, a: &FreeElt) -> TensorElt {
    let mut out = TensorElt::zero();
    for (w, c) in a.iter() {
        let mut acc = TensorElt::basis((vec![], vec![]));
        for &l in w {
            let mut prim = TensorElt::basis((vec![l], vec![]));
            prim.add_term((vec![], vec![l]), CycNum::one());
            acc = braided_tensor_mul(d, &acc, &prim);
        }
        out.add_scaled(&acc, c);
    }
    out
}

/// `(Δ⊗1)Δ` and `(1⊗Δ)Δ`.
pub fn iterated_coproducts(d: &CartanDatum, a: &FreeElt) -> (Tensor3Elt, Tensor3Elt) {
    let delta = free_coproduct(d, a);
    let mut left = Tensor3Elt::zero();
    let mut right = Tensor3Elt::zero();
    for ((u, v), c) in delta.iter() {
        for ((u1, u2), e) in word_coproduct(d, u).iter() {
            left.add_term((u1.clone(), u2.clone(), v.clone()), c.mul_ref(e));
        }
        for ((v1, v2), e) in word_coproduct(d, v).iter() {
            right.add_term((u.clone(), v1.clone(), v2.clone()), c.mul_ref(e));
        }
    }
    (left, right)
}

/// `[a, b] = ab − χ^{deg b}(g^{deg a}) ba` for homogeneous `a`, `b`.
pub fn braided_commutator(d: &CartanDatum, a: &FreeElt, b: &FreeElt) -> Result<FreeElt> {
    let da = degree(d.theta, a)?;
    let db = degree(d.theta, b)?;
    let mut out = free_mul(a, b);
    out.add_scaled(&free_mul(b, a), &d.chi_eval(&db, &da).neg_ref());
    Ok(out)
}

/// All words with the given letter counts, in lexicographic order.
pub fn words_of_degree(deg: &MultiDeg) -> Vec<Word> {
    fn rec(counts: &mut [u32], cur: &mut Word, out: &mut Vec<Word>, left: u32) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i] > 0 {
                counts[i] -= 1;
                cur.push(i as u8);
                rec(counts, cur, out, left - 1);
                cur.pop();
                counts[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    let mut counts = deg.0.clone();
    rec(&mut counts, &mut Vec::new(), &mut out, deg.height());
    out
}

/// One spanning element `w · g · w′` of an ideal component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealTerm {
    pub left: Word,
    pub generator: usize,
    pub right: Word,
    pub coeff: CycNum,
}

/// Outcome of a membership test.
#[derive(Clone, Debug)]
pub struct Membership {
    pub member: bool,
    /// When a member: `e = Σ coeff · left · gens[generator] · right`.
    pub certificate: Vec<IdealTerm>,
    /// When not a member: the reduced residual.
    pub residual: FreeElt,
}

/// All sub-multidegrees `r ≤ total` (entrywise).
fn sub_degrees(total: &MultiDeg) -> Vec<MultiDeg> {
    let mut out = vec![Vec::new()];
    for &t in &total.0 {
        out = out.into_iter().flat_map(|p: Vec<u32>| (0..=t).map(move |k| [p.clone(), vec![k]].concat())).collect();
    }
    out.into_iter().map(MultiDeg).collect()
}

/// Homogeneous components of the generators, tagged with their source index.
fn generator_parts(theta: usize, gens: &[FreeElt]) -> Vec<(usize, MultiDeg, FreeElt)> {
    gens.iter()
        .enumerate()
        .flat_map(|(gi, g)| components(theta, g).into_iter().map(move |(deg, part)| (gi, deg, part)))
        .collect()
}

/// The component of degree `deg` of the ideal generated by `gens`: the words
/// of that degree (columns, lexicographic), an echelon basis of the span of
/// all `w · g · w′`, and the list of spanning elements in insertion order.
pub struct IdealComponent {
    pub words: Vec<Word>,
    pub index: std::collections::HashMap<Word, usize>,
    pub echelon: Echelon,
    pub spanning: Vec<(Word, usize, Word)>,
}

impl IdealComponent {
    pub fn build(theta: usize, gens: &[FreeElt], deg: &MultiDeg) -> Self {
        let words = words_of_degree(deg);
        let index: std::collections::HashMap<Word, usize> = words.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        let mut comp = IdealComponent { echelon: Echelon::new(words.len()), words, index, spanning: Vec::new() };
        for (gi, gdeg, gpart) in generator_parts(theta, gens) {
            let Some(rest) = deg.checked_sub(&gdeg) else { continue };
            for ldeg in sub_degrees(&rest) {
                let rwords = words_of_degree(&(&rest - &ldeg));
                for lw in words_of_degree(&ldeg) {
                    for rw in &rwords {
                        let elt = free_mul(&free_mul(&word_elt(&lw), &gpart), &word_elt(rw));
                        let v = comp.dense(&elt);
                        comp.echelon.insert(&v);
                        comp.spanning.push((lw.clone(), gi, rw.clone()));
                    }
                }
            }
        }
        comp
    }

    /// Coordinates of a homogeneous element of this degree.
    pub fn dense(&self, x: &FreeElt) -> Vec<CycNum> {
        let mut v = vec![CycNum::zero(); self.words.len()];
        for (w, c) in x.iter() {
            v[self.index[w]] = c.clone();
        }
        v
    }
}

/// Degree-wise membership of `e` in the two-sided ideal generated by `gens`.
pub fn ideal_membership(d: &CartanDatum, e: &FreeElt, gens: &[FreeElt], cutoff: u32) -> Result<Membership> {
    let th = d.theta;
    for w in e.keys() {
        if w.len() as u32 > cutoff {
            return Err(Error::CutoffExceeded { height: w.len() as u32, cutoff });
        }
    }
    let mut certificate = Vec::new();
    let mut residual = FreeElt::zero();
    for (deg, part) in components(th, e) {
        let comp = IdealComponent::build(th, gens, &deg);
        let red = comp.echelon.reduce(&comp.dense(&part));
        if red.is_member() {
            for (&k, c) in &red.combination {
                let (l, gi, r) = &comp.spanning[k];
                certificate.push(IdealTerm { left: l.clone(), generator: *gi, right: r.clone(), coeff: c.clone() });
            }
        } else {
            for (k, c) in red.residual.into_iter().enumerate() {
                residual.add_term(comp.words[k].clone(), c);
            }
        }
    }
    Ok(Membership { member: residual.is_zero(), certificate, residual })
}

/// Result of the quantum-plane commutation oracle.
#[derive(Clone, Debug)]
pub struct Lemma31Outcome {
    pub m: u32,
    pub n: u32,
    pub remainder: FreeElt,
    pub membership: Membership,
}

impl Lemma31Outcome {
    pub fn holds(&self) -> bool {
        self.membership.member
    }
}

/// The linked pair `(i, j)`, `i < j`, whose letters play `x_1`, `x_2`.
pub fn linked_pair(d: &CartanDatum) -> Result<(usize, usize)> {
    match d.family {
        Family::QPlane => Ok((0, 1)),
        Family::Qls => d.linking.first().copied().ok_or_else(|| Error::Unsupported("QLS datum without a linked pair".into())),
        f => Err(Error::Unsupported(format!("{} has no linked pair", f.name()))),
    }
}

/// `z_ji = [x_j, x_i]` in `T(V)`.
pub fn linking_element(d: &CartanDatum, i: usize, j: usize) -> FreeElt {
    braided_commutator(d, &letter(j), &letter(i)).expect("letters are homogeneous")
}

/// Checks `x_2^m x_1^n − Σ_r q^{(m−r)(n−r)} r!_q binom(m,r)_q binom(n,r)_q x_1^{n−r} x_2^{m−r} z_21^r`
/// against the ideal generated by `[x_1, z_21]` and `[x_2, z_21]`.
pub fn lemma31_oracle(d: &CartanDatum, m: u32, n: u32) -> Result<Lemma31Outcome> {
    let (i, j) = linked_pair(d)?;
    let th = d.theta;
    let q = d.chi_eval(&MultiDeg::unit(th, i), &MultiDeg::unit(th, j));
    let z = linking_element(d, i, j);
    let x1 = letter(i);
    let x2 = letter(j);
    let mut remainder = free_mul(&letter_power(j, m as usize), &letter_power(i, n as usize));
    for r in 0..=m.min(n) {
        let coeff = q
            .powu(((m - r) * (n - r)) as u64)
            .mul_ref(&q_factorial(r, &q))
            .mul_ref(&q_binomial(m, r, &q))
            .mul_ref(&q_binomial(n, r, &q));
        let term = free_mul(
            &free_mul(&letter_power(i, (n - r) as usize), &letter_power(j, (m - r) as usize)),
            &free_pow(&z, r as usize),
        );
        remainder.add_scaled(&term, &coeff.neg_ref());
    }
    let gens = [braided_commutator(d, &x1, &z)?, braided_commutator(d, &x2, &z)?];
    let membership = ideal_membership(d, &remainder, &gens, m + n)?;
    Ok(Lemma31Outcome { m, n, remainder, membership })
}

pub fn free_elt_to_json(a: &FreeElt) -> Value {
    let terms: Vec<Value> = a
        .iter()
        .map(|(w, c)| {
            let word: Vec<usize> = w.iter().map(|&l| l as usize + 1).collect();
            json!({"word": word, "coeff": serde_json::to_value(c).expect("serializable")})
        })
        .collect();
    json!({ "terms": terms })
}

pub fn free_elt_from_json(v: &Value, theta: usize) -> Result<FreeElt> {
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("FreeElt needs a `terms` array".into()))?;
    let mut out = FreeElt::zero();
    for t in terms {
        let word = t
            .get("word")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("term needs a `word` array".into()))?;
        let mut w = Word::new();
        for l in word {
            match l.as_u64() {
                Some(k) if k >= 1 && k as usize <= theta => w.push((k - 1) as u8),
                _ => return Err(Error::Parse(format!("invalid letter {l}"))),
            }
        }
        let c = CycNum::from_json(t.get("coeff").ok_or_else(|| Error::Parse("term needs a `coeff`".into()))?)?;
        out.add_term(w, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::q_binomial;

    #[test]
    fn products() {
        let x1 = letter(0);
        let x2 = letter(1);
        assert_eq!(free_mul(&x1, &x2), word_elt(&[0, 1]));
        let mut s = x1.clone();
        s.add_assign(&x2);
        let mut expect = word_elt(&[0, 0]);
        expect.add_assign(&word_elt(&[1, 0]));
        assert_eq!(free_mul(&s, &x1), expect);
        assert!(free_mul(&FreeElt::zero(), &x1).is_zero());
    }

    #[test]
    fn crossing_rule() {
        let d = CartanDatum::qplane(3);
        let s = TensorElt::basis((vec![], vec![0]));
        let t = TensorElt::basis((vec![1], vec![]));
        let p = braided_tensor_mul(&d, &s, &t);
        let chi21 = d.braid_matrix()[0][1].clone(); // χ_2(g_1)
        assert_eq!(p, TensorElt::term((vec![1], vec![0]), chi21));
        let u = TensorElt::basis((vec![0], vec![]));
        assert_eq!(braided_tensor_mul(&d, &u, &t), TensorElt::basis((vec![0, 1], vec![])));
    }

    #[test]
    fn coproduct_examples() {
        let d = CartanDatum::qplane(3);
        let dx = free_coproduct(&d, &letter(0));
        let mut expect = TensorElt::basis((vec![0], vec![]));
        expect.add_term((vec![], vec![0]), CycNum::one());
        assert_eq!(dx, expect);
        let a1 = CartanDatum::a1(5);
        let q = a1.q();
        let m = 4;
        let delta = free_coproduct(&a1, &letter_power(0, m));
        for i in 0..=m {
            assert_eq!(delta.coeff(&(vec![0; i], vec![0; m - i])), q_binomial(m as u32, i as u32, &q));
        }
    }

    #[test]
    fn multiplicative_agrees_with_subsets() {
        let d = CartanDatum::a2(3, -1);
        let w = word_elt(&[0, 1, 1, 0, 1]);
        assert_eq!(free_coproduct(&d, &w), free_coproduct_multiplicative(&d, &w));
    }

    #[test]
    fn commutators() {
        let d = CartanDatum::qplane(3);
        let q = d.q();
        let z = braided_commutator(&d, &letter(1), &letter(0)).unwrap();
        let mut expect = word_elt(&[1, 0]);
        expect.add_term(vec![0, 1], q.neg_ref());
        assert_eq!(z, expect);
        let xx = braided_commutator(&d, &letter(0), &letter(0)).unwrap();
        assert_eq!(xx, FreeElt::term(vec![0, 0], CycNum::one().sub_ref(&q)));
        let mut mixed = letter(0);
        mixed.add_assign(&word_elt(&[0, 1]));
        assert_eq!(braided_commutator(&d, &mixed, &letter(0)), Err(Error::NotHomogeneous));
    }

    #[test]
    fn membership_examples() {
        let d = CartanDatum::qplane(3);
        let z = linking_element(&d, 0, 1);
        let g = braided_commutator(&d, &letter(0), &z).unwrap();
        assert!(ideal_membership(&d, &g, std::slice::from_ref(&g), 5).unwrap().member);
        assert!(ideal_membership(&d, &FreeElt::zero(), std::slice::from_ref(&g), 5).unwrap().member);
        let r = ideal_membership(&d, &letter(0), std::slice::from_ref(&g), 5).unwrap();
        assert!(!r.member);
        assert_eq!(r.residual, letter(0));
        assert!(matches!(ideal_membership(&d, &letter_power(0, 6), &[g], 5), Err(Error::CutoffExceeded { .. })));
    }

    #[test]
    fn membership_certificate_rebuilds() {
        let d = CartanDatum::qplane(3);
        let z = linking_element(&d, 0, 1);
        let gens = [braided_commutator(&d, &letter(0), &z).unwrap(), braided_commutator(&d, &letter(1), &z).unwrap()];
        let e = free_mul(&free_mul(&letter(1), &gens[0]), &letter(0));
        let m = ideal_membership(&d, &e, &gens, 6).unwrap();
        assert!(m.member);
        let mut rebuilt = FreeElt::zero();
        for t in &m.certificate {
            let piece = free_mul(&free_mul(&word_elt(&t.left), &gens[t.generator]), &word_elt(&t.right));
            rebuilt.add_scaled(&piece, &t.coeff);
        }
        assert_eq!(rebuilt, e);
    }

    #[test]
    fn lemma31_small() {
        let d = CartanDatum::qplane(3);
        let o = lemma31_oracle(&d, 1, 1).unwrap();
        assert!(o.remainder.is_zero());
        assert!(lemma31_oracle(&d, 2, 1).unwrap().holds());
        let o = lemma31_oracle(&d, 2, 2).unwrap();
        assert!(o.holds());
    }

    #[test]
    fn json_round_trip() {
        let d = CartanDatum::qplane(3);
        let z = linking_element(&d, 0, 1);
        let v = free_elt_to_json(&z);
        assert_eq!(free_elt_from_json(&v, 2).unwrap(), z);
    }
}
