//! The algebras `R̄ = R/J`, `K` and `B` in PBW bases.
//!
//! A monomial stores the full exponent of every PBW slot, so a root exponent
//! `a ≥ N` reads as `x^{a mod N} z^{⌊a/N⌋}`. Products are reduced by a
//! memoized right-multiplication by single slots, using straightening rules
//! derived by exact echelon in `T(V)` modulo the defining ideal. Coproducts
//! are computed on the ordered lift of a monomial as the braided product of
//! the slot coproducts.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use serde_json::{json, Value};

use crate::cyclotomic::CycNum;
use crate::datum::{CartanDatum, Family, MultiDeg, Slot, SlotKind};
use crate::error::{Error, Result};
use crate::freehopf::{self, FreeElt, IdealComponent};
use crate::lin::Lin;
use crate::linalg::solve;

/// Exponents over the ordered PBW slots.
pub type Mono = Vec<u32>;
pub type AlgElt = Lin<Mono>;
pub type AlgTensor = Lin<(Mono, Mono)>;

/// One rewrite `slot_β · slot_α ↦ Σ c · monomial` with `β > α`.
#[derive(Clone, Debug)]
pub struct Rule {
    pub beta: usize,
    pub alpha: usize,
    pub rhs: AlgElt,
}

pub struct Presented {
    pub datum: CartanDatum,
    pub slots: Vec<Slot>,
    pub n: u32,
    lifts: Vec<FreeElt>,
    letter_slot: Vec<usize>,
    rules: HashMap<(usize, usize), AlgElt>,
    ideal_gens: Vec<FreeElt>,
    slot_coproducts: Vec<AlgTensor>,
    mul_letter_cache: RwLock<HashMap<(Mono, usize), Arc<AlgElt>>>,
    mul_cache: RwLock<HashMap<(Mono, Mono), Arc<AlgElt>>>,
    cop_cache: RwLock<HashMap<Mono, Arc<AlgTensor>>>,
}

fn unit_mono(len: usize, s: usize) -> Mono {
    let mut m = vec![0; len];
    m[s] = 1;
    m
}

impl Presented {
    /// Derives the straightening system and slot coproducts for a datum.
    pub fn new(datum: &CartanDatum) -> Result<Self> {
        let slots = datum.slots();
        let th = datum.theta;
        let lifts: Vec<FreeElt> = slots
            .iter()
            .map(|s| match (datum.family, s.kind) {
                (_, SlotKind::Linking) => {
                    let (j, i) = s.pair.expect("linking slot has a pair");
                    freehopf::linking_element(datum, i, j)
                }
                (Family::A2, SlotKind::Root) if s.deg.height() == 2 => {
                    freehopf::braided_commutator(datum, &freehopf::letter(0), &freehopf::letter(1)).expect("homogeneous")
                }
                (_, SlotKind::Root) => {
                    let i = s.deg.0.iter().position(|&e| e == 1).expect("simple root");
                    freehopf::letter(i)
                }
            })
            .collect();
        let letter_slot: Vec<usize> = (0..th)
            .map(|i| slots.iter().position(|s| s.kind == SlotKind::Root && s.deg == MultiDeg::unit(th, i)).expect("simple slot"))
            .collect();
        let ideal_gens = Self::ideal_generators(datum)?;
        let mut p = Presented {
            datum: datum.clone(),
            n: datum.n,
            slots,
            lifts,
            letter_slot,
            rules: HashMap::new(),
            ideal_gens,
            slot_coproducts: Vec::new(),
            mul_letter_cache: RwLock::new(HashMap::new()),
            mul_cache: RwLock::new(HashMap::new()),
            cop_cache: RwLock::new(HashMap::new()),
        };
        for rule in p.derive_straightening()? {
            p.rules.insert((rule.beta, rule.alpha), rule.rhs);
        }
        p.slot_coproducts = (0..p.slots.len())
            .map(|s| {
                let delta = freehopf::free_coproduct(datum, &p.lifts[s]);
                let mut out = AlgTensor::zero();
                for ((a, b), c) in delta.iter() {
                    let na = p.normal_form_word(a);
                    let nb = p.normal_form_word(b);
                    for (ma, ca) in na.iter() {
                        for (mb, cb) in nb.iter() {
                            out.add_term((ma.clone(), mb.clone()), c.mul_ref(ca).mul_ref(cb));
                        }
                    }
                }
                out
            })
            .collect();
        Ok(p)
    }

    /// Generators of the ideal defining `R̄` inside `T(V)`.
    pub fn ideal_generators(d: &CartanDatum) -> Result<Vec<FreeElt>> {
        use freehopf::{braided_commutator, letter, linking_element};
        let mut gens = Vec::new();
        match d.family {
            Family::A1 => {}
            Family::A2 => {
                let x1 = letter(0);
                let x2 = letter(1);
                gens.push(braided_commutator(d, &x1, &braided_commutator(d, &x1, &x2)?)?);
                gens.push(braided_commutator(d, &x2, &braided_commutator(d, &x2, &x1)?)?);
            }
            Family::QPlane | Family::Qls => {
                for i in 0..d.theta {
                    for j in i + 1..d.theta {
                        let z = linking_element(d, i, j);
                        if d.linking.contains(&(i, j)) {
                            for k in 0..d.theta {
                                gens.push(braided_commutator(d, &letter(k), &z)?);
                            }
                        } else {
                            gens.push(z);
                        }
                    }
                }
            }
        }
        Ok(gens)
    }

    pub fn nslots(&self) -> usize {
        self.slots.len()
    }

    pub fn lift_of_slot(&self, s: usize) -> &FreeElt {
        &self.lifts[s]
    }

    pub fn ideal(&self) -> &[FreeElt] {
        &self.ideal_gens
    }

    pub fn rules(&self) -> Vec<Rule> {
        let mut out: Vec<Rule> =
            self.rules.iter().map(|(&(beta, alpha), rhs)| Rule { beta, alpha, rhs: rhs.clone() }).collect();
        out.sort_by_key(|r| (r.beta, r.alpha));
        out
    }

    pub fn one(&self) -> Mono {
        vec![0; self.nslots()]
    }

    pub fn slot_mono(&self, s: usize) -> Mono {
        unit_mono(self.nslots(), s)
    }

    pub fn mono_deg(&self, m: &[u32]) -> MultiDeg {
        let mut v = vec![0u32; self.datum.theta];
        for (s, &e) in m.iter().enumerate() {
            if e > 0 {
                for (k, &dk) in self.slots[s].deg.0.iter().enumerate() {
                    v[k] += e * dk;
                }
            }
        }
        MultiDeg(v)
    }

    pub fn mono_height(&self, m: &[u32]) -> u32 {
        m.iter().zip(&self.slots).map(|(&e, s)| e * s.deg.height()).sum()
    }

    /// All ordered monomials of a given degree.
    pub fn monos_of_degree(&self, deg: &MultiDeg) -> Vec<Mono> {
        fn rec(p: &Presented, s: usize, rest: &MultiDeg, cur: &mut Mono, out: &mut Vec<Mono>) {
            if s == p.nslots() {
                if rest.is_zero() {
                    out.push(cur.clone());
                }
                return;
            }
            let sd = &p.slots[s].deg;
            let mut r = rest.clone();
            let mut e = 0;
            loop {
                cur[s] = e;
                rec(p, s + 1, &r, cur, out);
                match r.checked_sub(sd) {
                    Some(next) => r = next,
                    None => break,
                }
                e += 1;
            }
            cur[s] = 0;
        }
        let mut out = Vec::new();
        rec(self, 0, deg, &mut vec![0; self.nslots()], &mut out);
        out.sort();
        out
    }

    /// Ordered lift of a monomial into `T(V)`.
    pub fn lift(&self, m: &[u32]) -> FreeElt {
        let mut acc = freehopf::one();
        for (s, &e) in m.iter().enumerate() {
            for _ in 0..e {
                acc = freehopf::free_mul(&acc, &self.lifts[s]);
            }
        }
        acc
    }

    pub fn lift_elt(&self, a: &AlgElt) -> FreeElt {
        let mut out = FreeElt::zero();
        for (m, c) in a.iter() {
            out.add_scaled(&self.lift(m), c);
        }
        out
    }

    /// Straightening rules for every slot pair `β > α`, solved in the degree
    /// `deg β + deg α` component of `T(V)` modulo the ideal.
    pub fn derive_straightening(&self) -> Result<Vec<Rule>> {
        let th = self.datum.theta;
        let mut rules = Vec::new();
        for beta in 0..self.nslots() {
            for alpha in 0..beta {
                let deg = &self.slots[beta].deg + &self.slots[alpha].deg;
                let comp = IdealComponent::build(th, &self.ideal_gens, &deg);
                let target = freehopf::free_mul(&self.lifts[beta], &self.lifts[alpha]);
                let monos = self.monos_of_degree(&deg);
                let cols: Vec<Vec<CycNum>> =
                    monos.iter().map(|m| comp.echelon.reduce(&comp.dense(&self.lift(m))).residual).collect();
                let rhs = comp.echelon.reduce(&comp.dense(&target)).residual;
                let rows: Vec<Vec<CycNum>> =
                    (0..comp.words.len()).map(|w| cols.iter().map(|c| c[w].clone()).collect()).collect();
                let sol = solve(&rows, &rhs, monos.len()).ok_or_else(|| {
                    Error::Straightening(format!("{}·{} has no PBW expansion", self.slots[beta].name, self.slots[alpha].name))
                })?;
                if !sol.kernel.is_empty() {
                    return Err(Error::Straightening(format!(
                        "PBW monomials of degree {deg} are dependent modulo the ideal"
                    )));
                }
                let rhs: AlgElt = monos.into_iter().zip(sol.particular).collect();
                rules.push(Rule { beta, alpha, rhs });
            }
        }
        Ok(rules)
    }

    /// `m · slot_γ` in normal form.
    pub fn mul_letter(&self, m: &[u32], gamma: usize) -> Arc<AlgElt> {
        let last = m.iter().rposition(|&e| e > 0);
        match last {
            Some(last) if last > gamma => {}
            _ => {
                let mut out = m.to_vec();
                out[gamma] += 1;
                return Arc::new(AlgElt::basis(out));
            }
        }
        let key = (m.to_vec(), gamma);
        if let Some(v) = self.mul_letter_cache.read().expect("cache lock").get(&key) {
            return v.clone();
        }
        let beta = last.expect("checked above");
        let mut prefix = m.to_vec();
        prefix[beta] -= 1;
        let mut out = AlgElt::zero();
        let rule = self.rules.get(&(beta, gamma)).expect("rule for every ordered pair");
        for (r, c) in rule.iter() {
            out.add_scaled(&self.mul_mono(&prefix, r), c);
        }
        let out = Arc::new(out);
        self.mul_letter_cache.write().expect("cache lock").insert(key, out.clone());
        out
    }

    /// Normal form of the product of two ordered monomials.
    pub fn mul_mono(&self, a: &[u32], b: &[u32]) -> Arc<AlgElt> {
        let last_a = a.iter().rposition(|&e| e > 0);
        let first_b = b.iter().position(|&e| e > 0);
        match (last_a, first_b) {
            (_, None) => return Arc::new(AlgElt::basis(a.to_vec())),
            (None, _) => return Arc::new(AlgElt::basis(b.to_vec())),
            (Some(la), Some(fb)) if fb >= la => {
                return Arc::new(AlgElt::basis(a.iter().zip(b).map(|(x, y)| x + y).collect()));
            }
            _ => {}
        }
        let key = (a.to_vec(), b.to_vec());
        if let Some(v) = self.mul_cache.read().expect("cache lock").get(&key) {
            return v.clone();
        }
        let mut acc = AlgElt::basis(a.to_vec());
        for (s, &e) in b.iter().enumerate() {
            for _ in 0..e {
                let mut next = AlgElt::zero();
                for (m, c) in acc.iter() {
                    next.add_scaled(&self.mul_letter(m, s), c);
                }
                acc = next;
            }
        }
        let out = Arc::new(acc);
        self.mul_cache.write().expect("cache lock").insert(key, out.clone());
        out
    }

    pub fn mul(&self, a: &AlgElt, b: &AlgElt) -> AlgElt {
        let mut out = AlgElt::zero();
        for (ma, ca) in a.iter() {
            for (mb, cb) in b.iter() {
                out.add_scaled(&self.mul_mono(ma, mb), &ca.mul_ref(cb));
            }
        }
        out
    }

    fn normal_form_word(&self, w: &[u8]) -> AlgElt {
        let mut acc = AlgElt::basis(self.one());
        for &l in w {
            let s = self.letter_slot[l as usize];
            let mut next = AlgElt::zero();
            for (m, c) in acc.iter() {
                next.add_scaled(&self.mul_letter(m, s), c);
            }
            acc = next;
        }
        acc
    }

    /// Normal form in `R̄` of a free-algebra element.
    pub fn normal_form(&self, e: &FreeElt, cutoff: u32) -> Result<AlgElt> {
        let mut out = AlgElt::zero();
        for (w, c) in e.iter() {
            if w.len() as u32 > cutoff {
                return Err(Error::CutoffExceeded { height: w.len() as u32, cutoff });
            }
            out.add_scaled(&self.normal_form_word(w), c);
        }
        Ok(out)
    }

    /// Normal form in `B`: `R̄` normal form with every `z`-carrying monomial dropped.
    pub fn normal_form_b(&self, e: &FreeElt, cutoff: u32) -> Result<AlgElt> {
        Ok(self.project_b(&self.normal_form(e, cutoff)?))
    }

    pub fn is_b_mono(&self, m: &[u32]) -> bool {
        m.iter().zip(&self.slots).all(|(&e, s)| match s.kind {
            SlotKind::Root => e < self.n,
            SlotKind::Linking => e == 0,
        })
    }

    pub fn is_k_mono(&self, m: &[u32]) -> bool {
        m.iter().zip(&self.slots).all(|(&e, s)| s.kind == SlotKind::Linking || e % self.n == 0)
    }

    /// `x^a` of `x^a z^b`.
    pub fn b_part(&self, m: &[u32]) -> Mono {
        m.iter()
            .zip(&self.slots)
            .map(|(&e, s)| match s.kind {
                SlotKind::Root => e % self.n,
                SlotKind::Linking => 0,
            })
            .collect()
    }

    /// `z^b` of `x^a z^b`.
    pub fn k_part(&self, m: &[u32]) -> Mono {
        m.iter()
            .zip(&self.slots)
            .map(|(&e, s)| match s.kind {
                SlotKind::Root => e - e % self.n,
                SlotKind::Linking => e,
            })
            .collect()
    }

    pub fn project_b(&self, a: &AlgElt) -> AlgElt {
        a.filter(|m| self.is_b_mono(m))
    }

    /// Product in `B`.
    pub fn mul_b(&self, a: &[u32], b: &[u32]) -> AlgElt {
        self.project_b(&self.mul_mono(a, b))
    }

    /// The `B` basis in lexicographic order; the unit comes first.
    pub fn b_basis(&self) -> Vec<Mono> {
        let mut out = vec![Vec::new()];
        for s in &self.slots {
            let top = if s.kind == SlotKind::Root { self.n } else { 1 };
            out = out.into_iter().flat_map(|p: Mono| (0..top).map(move |e| [p.clone(), vec![e]].concat())).collect();
        }
        out
    }

    /// `K` monomials of height at most `cutoff`, ordered by height then exponents.
    pub fn k_basis(&self, cutoff: u32) -> Vec<Mono> {
        let mut out = vec![(0u32, Vec::new())];
        for s in &self.slots {
            let step = if s.kind == SlotKind::Root { self.n } else { 1 };
            let h = s.deg.height() * step;
            out = out
                .into_iter()
                .flat_map(|(ht, p): (u32, Mono)| {
                    (0..)
                        .map(move |k| (ht + k * h, k))
                        .take_while(move |(t, _)| *t <= cutoff)
                        .map(move |(t, k)| (t, [p.clone(), vec![k * step]].concat()))
                })
                .collect();
        }
        out.sort();
        out.into_iter().map(|(_, m)| m).collect()
    }

    /// All `R̄` monomials of height at most `cutoff`, ordered by height.
    pub fn rbar_basis(&self, cutoff: u32) -> Vec<Mono> {
        let mut out = vec![(0u32, Vec::new())];
        for s in &self.slots {
            let h = s.deg.height();
            out = out
                .into_iter()
                .flat_map(|(ht, p): (u32, Mono)| {
                    (0..)
                        .map(move |k| (ht + k * h, k))
                        .take_while(move |(t, _)| *t <= cutoff)
                        .map(move |(t, k)| (t, [p.clone(), vec![k]].concat()))
                })
                .collect();
        }
        out.sort();
        out.into_iter().map(|(_, m)| m).collect()
    }

    /// Braided product in `R̄ ⊗ R̄`.
    pub fn tensor_mul(&self, s: &AlgTensor, t: &AlgTensor) -> AlgTensor {
        let mut out = AlgTensor::zero();
        for ((a, b), x) in s.iter() {
            let db = self.mono_deg(b);
            for ((c, e), y) in t.iter() {
                let scalar = self.datum.chi_eval(&self.mono_deg(c), &db);
                let coeff = x.mul_ref(y).mul_ref(&scalar);
                let left = self.mul_mono(a, c);
                let right = self.mul_mono(b, e);
                for (l, cl) in left.iter() {
                    for (r, cr) in right.iter() {
                        out.add_term((l.clone(), r.clone()), coeff.mul_ref(cl).mul_ref(cr));
                    }
                }
            }
        }
        out
    }

    /// Coproduct of the ordered lift of a monomial, both legs in normal form.
    pub fn coproduct(&self, m: &[u32]) -> Arc<AlgTensor> {
        if let Some(v) = self.cop_cache.read().expect("cache lock").get(m) {
            return v.clone();
        }
        let out = match m.iter().rposition(|&e| e > 0) {
            None => AlgTensor::basis((self.one(), self.one())),
            Some(last) => {
                let mut prefix = m.to_vec();
                prefix[last] -= 1;
                let head = self.coproduct(&prefix);
                self.tensor_mul(&head, &self.slot_coproducts[last])
            }
        };
        let out = Arc::new(out);
        self.cop_cache.write().expect("cache lock").insert(m.to_vec(), out.clone());
        out
    }

    /// `pbw_coproduct` with an explicit height bound.
    pub fn pbw_coproduct(&self, m: &[u32], cutoff: u32) -> Result<Arc<AlgTensor>> {
        let h = self.mono_height(m);
        if h > cutoff {
            return Err(Error::CutoffExceeded { height: h, cutoff });
        }
        Ok(self.coproduct(m))
    }

    /// Coproduct of a `B` basis element inside `B ⊗ B`.
    pub fn coproduct_b(&self, m: &[u32]) -> AlgTensor {
        self.coproduct(m).filter(|(a, b)| self.is_b_mono(a) && self.is_b_mono(b))
    }

    pub fn coproduct_elt(&self, a: &AlgElt) -> AlgTensor {
        let mut out = AlgTensor::zero();
        for (m, c) in a.iter() {
            out.add_scaled(&self.coproduct(m), c);
        }
        out
    }

    /// `Δ_K` on a `K` monomial; errors if a leg leaves `K`.
    pub fn coproduct_k(&self, m: &[u32]) -> Result<Arc<AlgTensor>> {
        let out = self.coproduct(m);
        if let Some(((a, b), _)) = out.iter().find(|((a, b), _)| !self.is_k_mono(a) || !self.is_k_mono(b)) {
            return Err(Error::Straightening(format!("coproduct of K monomial {m:?} has leg {a:?} ⊗ {b:?} outside K")));
        }
        Ok(out)
    }

    /// The linear section `v : B → R̄`.
    pub fn section_v(&self, m: &[u32]) -> AlgElt {
        debug_assert!(self.is_b_mono(m));
        AlgElt::basis(m.to_vec())
    }

    pub fn counit(&self, a: &AlgElt) -> CycNum {
        a.coeff(&self.one())
    }

    /// Letter triples `γ > β > α` whose two bracketings disagree.
    pub fn confluence_failures(&self) -> Vec<(usize, usize, usize)> {
        let mut bad = Vec::new();
        for g in 0..self.nslots() {
            for b in 0..g {
                for a in 0..b {
                    let gm = self.slot_mono(g);
                    let left = self.mul(&self.mul_mono(&gm, &self.slot_mono(b)), &AlgElt::basis(self.slot_mono(a)));
                    let right = self.mul(&AlgElt::basis(gm), &self.mul_mono(&self.slot_mono(b), &self.slot_mono(a)));
                    if left != right {
                        bad.push((g, b, a));
                    }
                }
            }
        }
        bad
    }

    /// K-generators (as monomials) that fail to commute with some slot.
    pub fn non_central_generators(&self) -> Vec<(Mono, usize)> {
        let mut bad = Vec::new();
        for z in self.k_generators() {
            for s in 0..self.nslots() {
                let sm = self.slot_mono(s);
                if *self.mul_mono(&z, &sm) != *self.mul_mono(&sm, &z) {
                    bad.push((z.clone(), s));
                }
            }
        }
        bad
    }

    /// `z_α = x_α^N` for roots and `z_ji` for linking slots.
    pub fn k_generators(&self) -> Vec<Mono> {
        (0..self.nslots())
            .map(|s| {
                let mut m = self.one();
                m[s] = if self.slots[s].kind == SlotKind::Root { self.n } else { 1 };
                m
            })
            .collect()
    }

    pub fn k_generator_names(&self) -> Vec<String> {
        self.slots.iter().map(|s| s.z_name.clone()).collect()
    }

    /// Antipode of `K` on a monomial by the connected-graded recursion.
    pub fn antipode_k(&self, m: &[u32], cutoff: u32) -> Result<AlgElt> {
        let mut memo = HashMap::new();
        self.antipode_k_memo(m, cutoff, &mut memo)
    }

    fn antipode_k_memo(&self, m: &[u32], cutoff: u32, memo: &mut HashMap<Mono, AlgElt>) -> Result<AlgElt> {
        let h = self.mono_height(m);
        if h > cutoff {
            return Err(Error::CutoffExceeded { height: h, cutoff });
        }
        if let Some(v) = memo.get(m) {
            return Ok(v.clone());
        }
        let one = self.one();
        if m == one.as_slice() {
            return Ok(AlgElt::basis(one));
        }
        let delta = self.coproduct_k(m)?;
        let mut out = AlgElt::term(m.to_vec(), CycNum::from_int(-1));
        for ((a, b), c) in delta.iter() {
            if *a == one || *b == one {
                continue;
            }
            let sa = self.antipode_k_memo(a, cutoff, memo)?;
            out.add_scaled(&self.mul(&sa, &AlgElt::basis(b.clone())), &c.neg_ref());
        }
        memo.insert(m.to_vec(), out.clone());
        Ok(out)
    }

    pub fn mono_to_json(&self, m: &[u32]) -> Value {
        json!(m)
    }

    pub fn mono_name(&self, m: &[u32]) -> String {
        let parts: Vec<String> = m
            .iter()
            .zip(&self.slots)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, s)| if e == 1 { s.name.clone() } else { format!("{}^{e}", s.name) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

pub fn alg_elt_to_json(a: &AlgElt) -> Value {
    let terms: Vec<Value> =
        a.iter().map(|(m, c)| json!({"exponents": m, "coeff": serde_json::to_value(c).expect("serializable")})).collect();
    json!({ "terms": terms })
}

pub fn alg_elt_from_json(v: &Value, nslots: usize) -> Result<AlgElt> {
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("AlgElt needs a `terms` array".into()))?;
    let mut out = AlgElt::zero();
    for t in terms {
        let m: Mono = serde_json::from_value(t.get("exponents").cloned().unwrap_or(Value::Null))
            .map_err(|e| Error::Parse(format!("invalid exponents: {e}")))?;
        if m.len() != nslots {
            return Err(Error::Parse(format!("exponent vector must have length {nslots}")));
        }
        let c = CycNum::from_json(t.get("coeff").ok_or_else(|| Error::Parse("term needs a `coeff`".into()))?)?;
        out.add_term(m, c);
    }
    Ok(out)
}

/// A K-bimodule retraction `u = m_K(φ⊗1)ϑ`, stored through `φ` on `B` monomials.
#[derive(Clone, Debug)]
pub struct Retraction {
    pub name: String,
    pub phi: BTreeMap<Mono, AlgElt>,
    /// Whether `(u⊗u)Δ = Δ_K u` has been established for this retraction.
    pub coalgebra: bool,
}

impl Retraction {
    pub fn phi_of(&self, b: &[u32]) -> Option<&AlgElt> {
        self.phi.get(b)
    }

    /// `u(x^a z^b) = φ(x^a) z^b`.
    pub fn apply_mono(&self, p: &Presented, m: &[u32]) -> AlgElt {
        let b = p.b_part(m);
        let k = p.k_part(m);
        match self.phi.get(&b) {
            None => AlgElt::zero(),
            Some(v) => p.mul(v, &AlgElt::basis(k)),
        }
    }

    pub fn apply(&self, p: &Presented, a: &AlgElt) -> AlgElt {
        let mut out = AlgElt::zero();
        for (m, c) in a.iter() {
            out.add_scaled(&self.apply_mono(p, m), c);
        }
        out
    }

    pub fn apply_tensor(&self, p: &Presented, t: &AlgTensor) -> AlgTensor {
        let mut cache: HashMap<&Mono, AlgElt> = HashMap::new();
        let mut out = AlgTensor::zero();
        for ((a, b), c) in t.iter() {
            let ua = cache.entry(a).or_insert_with(|| self.apply_mono(p, a)).clone();
            if ua.is_zero() {
                continue;
            }
            let ub = cache.entry(b).or_insert_with(|| self.apply_mono(p, b)).clone();
            for (ka, ca) in ua.iter() {
                for (kb, cb) in ub.iter() {
                    out.add_term((ka.clone(), kb.clone()), c.mul_ref(ca).mul_ref(cb));
                }
            }
        }
        out
    }

    /// First `K` monomial `z` (height ≤ cutoff) with `u(z) ≠ z`.
    pub fn check_u_kappa(&self, p: &Presented, cutoff: u32) -> Option<Mono> {
        p.k_basis(cutoff).into_iter().find(|z| self.apply_mono(p, z) != AlgElt::basis(z.clone()))
    }

    /// First sample `(z, r, z′)` violating `u(z r z′) = z u(r) z′`.
    pub fn check_bimodule(&self, p: &Presented, samples: &[Mono]) -> Option<(Mono, Mono, Mono)> {
        let mut gens = p.k_generators();
        gens.push(p.one());
        for r in samples {
            for z in &gens {
                for z2 in &gens {
                    let zr = p.mul_mono(z, r);
                    let lhs = self.apply(p, &p.mul(&zr, &AlgElt::basis(z2.clone())));
                    let ur = self.apply_mono(p, r);
                    let rhs = p.mul(&p.mul(&AlgElt::basis(z.clone()), &ur), &AlgElt::basis(z2.clone()));
                    if lhs != rhs {
                        return Some((z.clone(), r.clone(), z2.clone()));
                    }
                }
            }
        }
        None
    }

    /// First `R̄` monomial of height ≤ cutoff where `(u⊗u)Δ ≠ Δ_K u`.
    pub fn check_coalgebra(&self, p: &Presented, cutoff: u32) -> Result<Option<Mono>> {
        for m in p.rbar_basis(cutoff) {
            let lhs = self.apply_tensor(p, &p.coproduct(&m));
            let mut rhs = AlgTensor::zero();
            for (k, c) in self.apply_mono(p, &m).iter() {
                rhs.add_scaled(&*p.coproduct_k(k)?, c);
            }
            if lhs != rhs {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }

    /// Runs the coalgebra check and records the outcome in `coalgebra`.
    pub fn verify_coalgebra(&mut self, p: &Presented, cutoff: u32) -> Result<Option<Mono>> {
        let witness = self.check_coalgebra(p, cutoff)?;
        self.coalgebra = witness.is_none();
        Ok(witness)
    }

    pub fn to_json(&self) -> Value {
        let phi: Vec<Value> = self
            .phi
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(m, v)| json!({"exponents": m, "value": alg_elt_to_json(v)}))
            .collect();
        json!({"name": self.name, "coalgebra": self.coalgebra, "phi": phi})
    }
}

/// `u = (ε⊗1)ϑ`: `φ(x^a) = ε(x^a)`.
pub fn retraction_u(p: &Presented) -> Retraction {
    let mut phi = BTreeMap::new();
    phi.insert(p.one(), AlgElt::basis(p.one()));
    Retraction { name: "u".into(), phi, coalgebra: p.datum.family != Family::A2 }
}

/// The corrected retraction of type `A2`:
/// `φ_2(e12^m e13^n e23^l) = (1−q^{-1})^{-m} χ12(g23)^{C(n,2)−C(m+n,2)} u(e12^{m−t} e13^{n+t} e23^{l−t})`, `t = min(m, l)`.
pub fn retraction_u2(p: &Presented) -> Result<Retraction> {
    if p.datum.family != Family::A2 {
        return Err(Error::Unsupported("u2 is defined for type A2 only".into()));
    }
    let th = p.datum.theta;
    let q = p.datum.q();
    let lam = CycNum::one().sub_ref(&q.inv()?);
    let chi_exp = p.datum.chi_exp(&MultiDeg::unit(th, 0), &MultiDeg::unit(th, 1)) as i64;
    let c2 = |k: u32| (k as i64) * (k as i64 - 1) / 2;
    let base = retraction_u(p);
    let mut phi = BTreeMap::new();
    for b in p.b_basis() {
        let (m, n, l) = (b[0], b[1], b[2]);
        let t = m.min(l);
        let shifted = vec![m - t, n + t, l - t];
        let ub = base.apply_mono(p, &shifted);
        if ub.is_zero() {
            continue;
        }
        let scalar = lam.pow(-(m as i64))?.mul_ref(p.datum.zeta(chi_exp * (c2(n) - c2(m + n))));
        phi.insert(b, ub.scaled(&scalar));
    }
    Ok(Retraction { name: "u2".into(), phi, coalgebra: false })
}

/// Filtration key: maximal root height present, number of distinct roots of
/// that height, total height.
fn filtration_key(p: &Presented, m: &[u32]) -> (u32, usize, u32, Mono) {
    let heights: Vec<u32> = m.iter().zip(&p.slots).filter(|(&e, _)| e > 0).map(|(_, s)| s.deg.height()).collect();
    let top = heights.iter().copied().max().unwrap_or(0);
    let count = heights.iter().filter(|&&h| h == top).count();
    (top, count, p.mono_height(m), m.to_vec())
}

/// Builds a coalgebra retraction monomial by monomial along the root-height
/// filtration of `B`, solving
/// `Δ_K z − z⊗1 − 1⊗z = (u⊗u)Δ(v x) − [x⊗1 + 1⊗x terms]` for `z = φ(x)` in
/// `K_{deg x}`. Free parameters are set to zero unless `shifts` supplies a
/// value to add at that monomial.
pub fn build_coalgebra_retraction(p: &Presented, cutoff: u32, shifts: &[(Mono, AlgElt)]) -> Result<Retraction> {
    let one = p.one();
    let mut ret = Retraction { name: "u_built".into(), phi: BTreeMap::new(), coalgebra: false };
    ret.phi.insert(one.clone(), AlgElt::basis(one.clone()));
    let mut order = p.b_basis();
    order.retain(|m| *m != one);
    order.sort_by_key(|m| filtration_key(p, m));
    let kb = p.k_basis(cutoff);
    for x in order {
        let deg = p.mono_deg(&x);
        let delta = p.coproduct(&x);
        let mut rhs = AlgTensor::zero();
        for ((a, b), c) in delta.iter() {
            if (*a == x && *b == one) || (*a == one && *b == x) {
                continue;
            }
            for leg in [a, b] {
                let bp = p.b_part(leg);
                if bp == x {
                    return Err(Error::Retraction(format!("leg {} of {} repeats the monomial", p.mono_name(leg), p.mono_name(&x))));
                }
            }
            let ua = ret.apply_mono(p, a);
            if ua.is_zero() {
                continue;
            }
            let ub = ret.apply_mono(p, b);
            for (ka, ca) in ua.iter() {
                for (kb2, cb) in ub.iter() {
                    rhs.add_term((ka.clone(), kb2.clone()), c.mul_ref(ca).mul_ref(cb));
                }
            }
        }
        let candidates: Vec<&Mono> = kb.iter().filter(|k| p.mono_deg(k) == deg).collect();
        let mut images = Vec::new();
        for k in &candidates {
            let mut t = (*p.coproduct_k(k)?).clone();
            t.add_term(((*k).clone(), one.clone()), CycNum::from_int(-1));
            t.add_term((one.clone(), (*k).clone()), CycNum::from_int(-1));
            images.push(t);
        }
        let mut keys: Vec<(Mono, Mono)> = rhs.keys().cloned().collect();
        for t in &images {
            keys.extend(t.keys().cloned());
        }
        keys.sort();
        keys.dedup();
        let rows: Vec<Vec<CycNum>> = keys.iter().map(|key| images.iter().map(|t| t.coeff(key)).collect()).collect();
        let b: Vec<CycNum> = keys.iter().map(|key| rhs.coeff(key)).collect();
        let sol = solve(&rows, &b, candidates.len()).ok_or_else(|| Error::NoExtension(p.mono_name(&x)))?;
        let mut value: AlgElt = candidates.iter().map(|k| (*k).clone()).zip(sol.particular).collect();
        for (m, shift) in shifts {
            if *m == x {
                value.add_assign(shift);
            }
        }
        ret.phi.insert(x, value);
    }
    ret.coalgebra = true;
    Ok(ret)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elt(terms: &[(Mono, CycNum)]) -> AlgElt {
        terms.iter().cloned().collect()
    }

    #[test]
    fn qplane_rules() {
        let d = CartanDatum::qplane(3);
        let p = Presented::new(&d).unwrap();
        let q = d.q();
        // x2 x1 = q x1 x2 + z21
        let r = p.mul_mono(&[0, 1, 0], &[1, 0, 0]);
        assert_eq!(*r, elt(&[(vec![1, 1, 0], q.clone()), (vec![0, 0, 1], CycNum::one())]));
        assert_eq!(*p.mul_mono(&[0, 0, 1], &[1, 0, 0]), AlgElt::basis(vec![1, 0, 1]));
        assert!(p.confluence_failures().is_empty());
        assert!(p.non_central_generators().is_empty());
        let nfb = p.normal_form_b(&freehopf::word_elt(&[1, 0]), 5).unwrap();
        assert_eq!(nfb, AlgElt::term(vec![1, 1, 0], q));
        let z1 = p.normal_form(&freehopf::letter_power(0, 3), 5).unwrap();
        assert_eq!(z1, AlgElt::basis(vec![3, 0, 0]));
        assert_eq!(p.b_basis().len(), 9);
        assert_eq!(p.b_basis()[0], vec![0, 0, 0]);
    }

    #[test]
    fn a1_basics() {
        let p = Presented::new(&CartanDatum::a1(3)).unwrap();
        assert!(p.rules().is_empty());
        assert!(p.normal_form_b(&freehopf::letter_power(0, 3), 5).unwrap().is_zero());
        assert_eq!(p.b_basis().len(), 3);
    }

    #[test]
    fn a2_structure() {
        let d = CartanDatum::a2(3, -1);
        let p = Presented::new(&d).unwrap();
        assert_eq!(p.b_basis().len(), 27);
        assert!(p.confluence_failures().is_empty());
        assert!(p.non_central_generators().is_empty());
        // Δ(e13) = e13⊗1 + 1⊗e13 + (1 − q^{-1}) e12⊗e23
        let q = d.q();
        let delta = p.coproduct(&[0, 1, 0]);
        let lam = CycNum::one().sub_ref(&q.inv().unwrap());
        let mut expect = AlgTensor::basis((vec![0, 1, 0], vec![0, 0, 0]));
        expect.add_term((vec![0, 0, 0], vec![0, 1, 0]), CycNum::one());
        expect.add_term((vec![1, 0, 0], vec![0, 0, 1]), lam);
        assert_eq!(*delta, expect);
    }

    #[test]
    fn a2_z13_coproduct() {
        let d = CartanDatum::a2(3, -1);
        let p = Presented::new(&d).unwrap();
        let q = d.q();
        let lam = CycNum::one().sub_ref(&q.inv().unwrap());
        let chi = d.chi_eval(&MultiDeg::unit(2, 0), &MultiDeg::unit(2, 1));
        let delta = p.coproduct_k(&[0, 3, 0]).unwrap();
        let mut expect = AlgTensor::basis((vec![0, 3, 0], vec![0, 0, 0]));
        expect.add_term((vec![0, 0, 0], vec![0, 3, 0]), CycNum::one());
        expect.add_term((vec![3, 0, 0], vec![0, 0, 3]), lam.powu(3).mul_ref(&chi.powu(3)));
        assert_eq!(*delta, expect);
    }

    #[test]
    fn normal_form_matches_ideal_oracle() {
        for d in [CartanDatum::qplane(3), CartanDatum::a2(3, -1)] {
            let p = Presented::new(&d).unwrap();
            for w in [vec![1u8, 0, 1, 0], vec![1, 1, 0, 0, 1], vec![1, 0, 0, 1, 0, 1]] {
                let nf = p.normal_form(&freehopf::word_elt(&w), 10).unwrap();
                let mut diff = p.lift_elt(&nf);
                diff.sub_assign(&freehopf::word_elt(&w));
                let m = freehopf::ideal_membership(&d, &diff, p.ideal(), 10).unwrap();
                assert!(m.member, "{w:?}");
            }
        }
    }

    #[test]
    fn retraction_u_basics() {
        let d = CartanDatum::qplane(3);
        let p = Presented::new(&d).unwrap();
        let u = retraction_u(&p);
        assert_eq!(u.apply_mono(&p, &[0, 0, 2]), AlgElt::basis(vec![0, 0, 2]));
        assert!(u.apply_mono(&p, &[1, 0, 1]).is_zero());
        assert_eq!(u.apply_mono(&p, &[3, 0, 0]), AlgElt::basis(vec![3, 0, 0]));
        assert!(u.check_u_kappa(&p, 12).is_none());
        assert_eq!(u.check_coalgebra(&p, 8).unwrap(), None);
    }

    #[test]
    fn antipode_of_k() {
        let d = CartanDatum::qplane(3);
        let p = Presented::new(&d).unwrap();
        assert_eq!(p.antipode_k(&[3, 0, 0], 12).unwrap(), AlgElt::term(vec![3, 0, 0], CycNum::from_int(-1)));
        assert_eq!(p.antipode_k(&[0, 0, 0], 12).unwrap(), AlgElt::basis(vec![0, 0, 0]));
    }

    #[test]
    fn u2_values() {
        let d = CartanDatum::a2(3, -1);
        let p = Presented::new(&d).unwrap();
        let u2 = retraction_u2(&p).unwrap();
        assert_eq!(u2.apply_mono(&p, &[0, 3, 0]), AlgElt::basis(vec![0, 3, 0]));
        assert!(u2.apply_mono(&p, &[1, 0, 1]).is_zero());
        let q = d.q();
        let lam = CycNum::one().sub_ref(&q.inv().unwrap());
        let chi_e = d.chi_exp(&MultiDeg::unit(2, 0), &MultiDeg::unit(2, 1)) as i64;
        let expect = lam.pow(-2).unwrap().mul_ref(d.zeta(-3 * chi_e));
        assert_eq!(u2.apply_mono(&p, &[2, 1, 2]), AlgElt::term(vec![0, 3, 0], expect));
    }
}
