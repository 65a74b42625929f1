//! Cartan-type data: the abelian group, group-likes `g_i`, characters `χ_i`,
//! the `Z[I]`-grading and the ordered PBW slots of each preset family.
//!
//! Every character value is a root of unity of order dividing
//! `L = lcm(group_orders)`, so the datum stores exponents of `ζ_L` and hands
//! out cached `CycNum` powers.

use std::fmt;
use std::ops::{Add, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};

/// A `Z[I]`-degree: exponents over the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiDeg(pub Vec<u32>);

impl MultiDeg {
    pub fn zero(theta: usize) -> Self {
        MultiDeg(vec![0; theta])
    }

    pub fn unit(theta: usize, i: usize) -> Self {
        let mut v = vec![0; theta];
        v[i] = 1;
        MultiDeg(v)
    }

    pub fn height(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn scaled(&self, k: u32) -> Self {
        MultiDeg(self.0.iter().map(|e| e * k).collect())
    }

    pub fn checked_sub(&self, other: &MultiDeg) -> Option<MultiDeg> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(MultiDeg)
    }

    pub fn theta(&self) -> usize {
        self.0.len()
    }
}

impl Add for &MultiDeg {
    type Output = MultiDeg;
    fn add(self, rhs: &MultiDeg) -> MultiDeg {
        MultiDeg(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &MultiDeg {
    type Output = MultiDeg;
    fn sub(self, rhs: &MultiDeg) -> MultiDeg {
        self.checked_sub(rhs).expect("multidegree subtraction underflow")
    }
}

impl fmt::Display for MultiDeg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A1,
    #[serde(rename = "QPLANE")]
    QPlane,
    #[serde(rename = "QLS")]
    Qls,
    A2,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::A1 => "A1",
            Family::QPlane => "QPLANE",
            Family::Qls => "QLS",
            Family::A2 => "A2",
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        match s.to_ascii_uppercase().as_str() {
            "A1" => Ok(Family::A1),
            "QPLANE" => Ok(Family::QPlane),
            "QLS" => Ok(Family::Qls),
            "A2" => Ok(Family::A2),
            other => Err(Error::Unsupported(format!("unknown family `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SlotKind {
    /// A root vector `x_α`; its `N`-th power is the K-generator `z_α`.
    Root,
    /// A linking element `z_ji = [x_j, x_i]`, itself a K-generator.
    Linking,
}

/// One ordered PBW letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub name: String,
    pub z_name: String,
    pub deg: MultiDeg,
    pub kind: SlotKind,
    /// For linking slots the pair `(j, i)` with `j > i`, zero-based.
    pub pair: Option<(usize, usize)>,
}

/// A group element of `G = ∏ Z/M_k` as exponents per cyclic factor.
pub type GroupElt = Vec<u32>;

/// One constraint of the datum validation report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

/// Serializable description of a datum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatumSpec {
    pub family: Family,
    pub theta: usize,
    #[serde(rename = "N")]
    pub n: u32,
    pub group_orders: Vec<u32>,
    pub generator_images: Vec<Vec<u32>>,
    pub character_values: Vec<Vec<CycNum>>,
    #[serde(default)]
    pub linking: Vec<[usize; 2]>,
}

#[derive(Clone, Debug)]
pub struct CartanDatum {
    pub family: Family,
    pub theta: usize,
    pub n: u32,
    pub group_orders: Vec<u32>,
    /// `g_i` as a group element.
    pub generators: Vec<GroupElt>,
    /// `χ_i` on the generator of each cyclic factor, as exponents of `ζ_L`.
    pub char_exp: Vec<Vec<u32>>,
    /// Linked pairs `(i, j)` with `i < j`, zero-based.
    pub linking: Vec<(usize, usize)>,
    l: u32,
    /// `chi_g[i][j]`: exponent of `χ_i(g_j)`.
    chi_g: Vec<Vec<u32>>,
    zeta: Vec<CycNum>,
}

impl CartanDatum {
    pub fn from_spec(spec: &DatumSpec) -> Result<Self> {
        let theta = spec.theta;
        let r = spec.group_orders.len();
        if theta == 0 {
            return Err(Error::Datum("theta must be positive".into()));
        }
        if spec.n <= 2 {
            return Err(Error::Datum(format!("N must exceed 2, got {}", spec.n)));
        }
        if r == 0 || spec.group_orders.contains(&0) {
            return Err(Error::Datum("group orders must be positive".into()));
        }
        if spec.generator_images.len() != theta || spec.generator_images.iter().any(|g| g.len() != r) {
            return Err(Error::Datum(format!("generator_images must be {theta} vectors of length {r}")));
        }
        if spec.character_values.len() != theta || spec.character_values.iter().any(|c| c.len() != r) {
            return Err(Error::Datum(format!("character_values must be {theta} rows of length {r}")));
        }
        let l = spec.group_orders.iter().fold(1u32, |acc, m| acc.lcm(m));
        let mut char_exp = vec![vec![0u32; r]; theta];
        for i in 0..theta {
            for k in 0..r {
                let m = spec.group_orders[k];
                let v = &spec.character_values[i][k];
                let e = v.root_exponent(m).ok_or_else(|| {
                    Error::Datum(format!("character value chi_{}(factor {}) = {v} is not a {m}-th root of unity", i + 1, k + 1))
                })?;
                char_exp[i][k] = e * (l / m);
            }
        }
        let generators: Vec<GroupElt> = spec
            .generator_images
            .iter()
            .map(|g| g.iter().zip(&spec.group_orders).map(|(e, m)| e % m).collect())
            .collect();
        let mut linking = Vec::new();
        for &[a, b] in &spec.linking {
            let (i, j) = (a.min(b), a.max(b));
            if i == 0 || j > theta || i == j {
                return Err(Error::Datum(format!("invalid linking pair [{a}, {b}]")));
            }
            linking.push((i - 1, j - 1));
        }
        linking.sort_unstable();
        linking.dedup();
        if spec.family != Family::Qls && spec.family != Family::QPlane && !linking.is_empty() {
            return Err(Error::Datum(format!("family {} takes no linking pairs", spec.family.name())));
        }
        match spec.family {
            Family::A1 if theta != 1 => return Err(Error::Datum("A1 needs theta = 1".into())),
            Family::QPlane | Family::A2 if theta != 2 => {
                return Err(Error::Datum(format!("{} needs theta = 2", spec.family.name())))
            }
            _ => {}
        }
        let mut d = CartanDatum {
            family: spec.family,
            theta,
            n: spec.n,
            group_orders: spec.group_orders.clone(),
            generators,
            char_exp,
            linking,
            l,
            chi_g: Vec::new(),
            zeta: (0..l).map(|e| CycNum::root_of_unity(l, e as i64)).collect(),
        };
        if d.family == Family::QPlane {
            d.linking = vec![(0, 1)];
        }
        d.chi_g = (0..theta).map(|i| (0..theta).map(|j| d.char_on_group_exp_single(i, &d.generators[j])).collect()).collect();
        Ok(d)
    }

    pub fn to_spec(&self) -> DatumSpec {
        DatumSpec {
            family: self.family,
            theta: self.theta,
            n: self.n,
            group_orders: self.group_orders.clone(),
            generator_images: self.generators.clone(),
            character_values: self
                .char_exp
                .iter()
                .map(|row| row.iter().map(|&e| self.zeta[e as usize].clone()).collect())
                .collect(),
            linking: if self.family == Family::Qls {
                self.linking.iter().map(|&(i, j)| [i + 1, j + 1]).collect()
            } else {
                Vec::new()
            },
        }
    }

    /// `A1`: `G = Z/N²`, `χ(g) = ζ_{N²}^N`.
    pub fn a1(n: u32) -> Self {
        let m = n * n;
        Self::from_spec(&DatumSpec {
            family: Family::A1,
            theta: 1,
            n,
            group_orders: vec![m],
            generator_images: vec![vec![1]],
            character_values: vec![vec![CycNum::root_of_unity(m, n as i64)]],
            linking: vec![],
        })
        .expect("A1 preset")
    }

    /// Quantum plane: `G = (Z/N²)²`, `χ_1(g_j) = q`, `χ_2 = χ_1^{-1}`.
    pub fn qplane(n: u32) -> Self {
        let m = n * n;
        let q = |e: i64| CycNum::root_of_unity(m, e * n as i64);
        Self::from_spec(&DatumSpec {
            family: Family::QPlane,
            theta: 2,
            n,
            group_orders: vec![m, m],
            generator_images: vec![vec![1, 0], vec![0, 1]],
            character_values: vec![vec![q(1), q(1)], vec![q(-1), q(-1)]],
            linking: vec![],
        })
        .expect("QPLANE preset")
    }

    /// Type `A2` with `χ_i(g_i) = q`, `χ_1(g_2) = q^a`, `χ_2(g_1) = q^{-1-a}`.
    pub fn a2(n: u32, a: i64) -> Self {
        let m = n * n;
        let q = |e: i64| CycNum::root_of_unity(m, e * n as i64);
        Self::from_spec(&DatumSpec {
            family: Family::A2,
            theta: 2,
            n,
            group_orders: vec![m, m],
            generator_images: vec![vec![1, 0], vec![0, 1]],
            character_values: vec![vec![q(1), q(a)], vec![q(-1 - a), q(1)]],
            linking: vec![],
        })
        .expect("A2 preset")
    }

    /// Quantum linear space on `theta` vertices over `(Z/N²)^θ`. Linked pairs
    /// get quantum-plane characters `χ_j = χ_i^{-1}`; every other pair braids
    /// trivially across.
    pub fn qls(n: u32, theta: usize, links: &[(usize, usize)]) -> Result<Self> {
        let m = n * n;
        let mut chars = vec![vec![0i64; theta]; theta];
        for (i, row) in chars.iter_mut().enumerate() {
            row[i] = 1;
        }
        let mut used = vec![false; theta];
        for &(a, b) in links {
            let (i, j) = (a.min(b), a.max(b));
            if i == 0 || j > theta || i == j || used[i - 1] || used[j - 1] {
                return Err(Error::Datum(format!("invalid or overlapping linking pair ({a}, {b})")));
            }
            used[i - 1] = true;
            used[j - 1] = true;
            chars[i - 1] = vec![0; theta];
            chars[i - 1][i - 1] = 1;
            chars[i - 1][j - 1] = 1;
            chars[j - 1] = chars[i - 1].iter().map(|e| -e).collect();
        }
        Self::from_spec(&DatumSpec {
            family: Family::Qls,
            theta,
            n,
            group_orders: vec![m; theta],
            generator_images: (0..theta).map(|i| (0..theta).map(|k| u32::from(k == i)).collect()).collect(),
            character_values: chars
                .iter()
                .map(|row| row.iter().map(|&e| CycNum::root_of_unity(m, e * n as i64)).collect())
                .collect(),
            linking: links.iter().map(|&(i, j)| [i, j]).collect(),
        })
    }

    /// Preset by name: `a1`, `qplane`, `qls` (three vertices, `{1,2}` linked), `a2`.
    pub fn preset(name: &str, n: u32) -> Result<Self> {
        if n <= 2 {
            return Err(Error::Datum(format!("N must exceed 2, got {n}")));
        }
        match name.to_ascii_lowercase().as_str() {
            "a1" => Ok(Self::a1(n)),
            "qplane" => Ok(Self::qplane(n)),
            "qls" => Self::qls(n, 3, &[(1, 2)]),
            "a2" => Ok(Self::a2(n, -1)),
            other => Err(Error::Unsupported(format!("unknown preset `{other}`"))),
        }
    }

    pub fn zeta_order(&self) -> u32 {
        self.l
    }

    /// `ζ_L^e`.
    pub fn zeta(&self, e: i64) -> &CycNum {
        &self.zeta[e.rem_euclid(self.l as i64) as usize]
    }

    /// `q = χ_1(g_1)`.
    pub fn q(&self) -> CycNum {
        self.zeta(self.chi_g[0][0] as i64).clone()
    }

    /// `Q[i][j] = χ_j(g_i)`.
    pub fn braid_matrix(&self) -> Vec<Vec<CycNum>> {
        (0..self.theta).map(|i| (0..self.theta).map(|j| self.zeta(self.chi_g[j][i] as i64).clone()).collect()).collect()
    }

    fn char_on_group_exp_single(&self, i: usize, h: &GroupElt) -> u32 {
        let l = self.l as u64;
        (self.char_exp[i].iter().zip(h).map(|(&c, &e)| c as u64 * e as u64).sum::<u64>() % l) as u32
    }

    /// Exponent of `χ^a(g^b)`.
    pub fn chi_exp(&self, a: &MultiDeg, b: &MultiDeg) -> u32 {
        let mut acc = 0u64;
        for (i, &ai) in a.0.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.0.iter().enumerate() {
                if bj != 0 {
                    acc += ai as u64 * bj as u64 * self.chi_g[i][j] as u64;
                }
            }
        }
        (acc % self.l as u64) as u32
    }

    /// `χ^a(g^b) = ∏ χ_i(g_j)^{a_i b_j}`.
    pub fn chi_eval(&self, a: &MultiDeg, b: &MultiDeg) -> CycNum {
        self.zeta(self.chi_exp(a, b) as i64).clone()
    }

    /// Exponent of `χ^a(h)` for an arbitrary group element.
    pub fn char_on_group_exp(&self, a: &MultiDeg, h: &GroupElt) -> u32 {
        let l = self.l as u64;
        let mut acc = 0u64;
        for (i, &ai) in a.0.iter().enumerate() {
            if ai != 0 {
                acc += ai as u64 * self.char_on_group_exp_single(i, h) as u64;
            }
        }
        (acc % l) as u32
    }

    /// `g^b` as a group element.
    pub fn group_of_deg(&self, b: &MultiDeg) -> GroupElt {
        let mut h = vec![0u32; self.group_orders.len()];
        for (j, &bj) in b.0.iter().enumerate() {
            for (k, hk) in h.iter_mut().enumerate() {
                *hk = ((*hk as u64 + bj as u64 * self.generators[j][k] as u64) % self.group_orders[k] as u64) as u32;
            }
        }
        h
    }

    pub fn group_mul(&self, a: &GroupElt, b: &GroupElt) -> GroupElt {
        a.iter().zip(b).zip(&self.group_orders).map(|((x, y), m)| (x + y) % m).collect()
    }

    pub fn group_order(&self) -> usize {
        self.group_orders.iter().map(|&m| m as usize).product()
    }

    /// All elements of `G`, in lexicographic order of exponent vectors.
    pub fn group_elements(&self) -> Vec<GroupElt> {
        let mut out = vec![vec![]];
        for &m in &self.group_orders {
            out = out.into_iter().flat_map(|p| (0..m).map(move |e| [p.clone(), vec![e]].concat())).collect();
        }
        out
    }

    pub fn group_index(&self, h: &GroupElt) -> usize {
        h.iter().zip(&self.group_orders).fold(0usize, |acc, (&e, &m)| acc * m as usize + e as usize)
    }

    /// True iff `χ^a` is the trivial character of `G`.
    pub fn is_invariant(&self, a: &MultiDeg) -> bool {
        let r = self.group_orders.len();
        (0..r).all(|k| {
            let mut e = vec![0; r];
            e[k] = 1;
            self.char_on_group_exp(a, &e) == 0
        })
    }

    pub fn deg_of_letter(&self, i: usize) -> MultiDeg {
        MultiDeg::unit(self.theta, i)
    }

    /// Ordered PBW slots: root vectors, then linking elements.
    pub fn slots(&self) -> Vec<Slot> {
        let root = |name: &str, z: &str, deg: Vec<u32>| Slot {
            name: name.into(),
            z_name: z.into(),
            deg: MultiDeg(deg),
            kind: SlotKind::Root,
            pair: None,
        };
        match self.family {
            Family::A1 => vec![root("x", "z", vec![1])],
            Family::A2 => vec![root("e12", "z12", vec![1, 0]), root("e13", "z13", vec![1, 1]), root("e23", "z23", vec![0, 1])],
            Family::QPlane | Family::Qls => {
                let mut out: Vec<Slot> = (0..self.theta)
                    .map(|i| root(&format!("x{}", i + 1), &format!("z{}", i + 1), MultiDeg::unit(self.theta, i).0))
                    .collect();
                for &(i, j) in &self.linking {
                    let deg = &MultiDeg::unit(self.theta, i) + &MultiDeg::unit(self.theta, j);
                    let name = format!("z{}{}", j + 1, i + 1);
                    out.push(Slot { name: name.clone(), z_name: name, deg, kind: SlotKind::Linking, pair: Some((j, i)) });
                }
                out
            }
        }
    }

    /// Positive roots in PBW order with their multidegrees.
    pub fn positive_roots(&self) -> Vec<MultiDeg> {
        self.slots().into_iter().filter(|s| s.kind == SlotKind::Root).map(|s| s.deg).collect()
    }

    /// Default height cutoff `2·N·|Φ⁺|`.
    pub fn default_cutoff(&self) -> u32 {
        2 * self.n * self.positive_roots().len() as u32
    }

    /// Sub-datum on a set of (zero-based) vertices, keeping `G`.
    pub fn restrict(&self, vertices: &[usize]) -> Result<CartanDatum> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        if vs.is_empty() || vs.iter().any(|&v| v >= self.theta) {
            return Err(Error::Datum(format!("invalid vertex set {vertices:?}")));
        }
        let pos = |v: usize| vs.iter().position(|&w| w == v);
        let mut spec = self.to_spec();
        spec.family = Family::Qls;
        spec.theta = vs.len();
        spec.generator_images = vs.iter().map(|&v| self.generators[v].clone()).collect();
        spec.character_values = vs.iter().map(|&v| spec.character_values[v].clone()).collect();
        spec.linking = self
            .linking
            .iter()
            .filter_map(|&(i, j)| Some([pos(i)? + 1, pos(j)? + 1]))
            .collect();
        if self.family == Family::A2 {
            return Err(Error::Unsupported("restriction of A2".into()));
        }
        CartanDatum::from_spec(&spec)
    }

    fn q_exp(&self, i: usize, j: usize) -> u32 {
        // exponent of χ_j(g_i)
        self.chi_g[j][i]
    }

    fn exp_order(&self, e: u32) -> u32 {
        self.l / e.gcd(&self.l)
    }

    /// Checks every structural constraint of the family.
    pub fn validate(&self) -> Vec<Check> {
        let mut out = Vec::new();
        let mut push = |name: String, pass: bool, witness: Option<String>| out.push(Check { name, pass, witness: if pass { None } else { witness } });
        let n = self.n;
        let r = self.group_orders.len();
        let show = |e: u32| format!("zeta_{}^{}", self.l, e);
        for i in 0..self.theta {
            let e = self.q_exp(i, i);
            let ord = self.exp_order(e);
            if self.family == Family::Qls {
                push(format!("order of chi_{0}(g_{0}) > 2", i + 1), ord > 2, Some(format!("chi_{0}(g_{0}) = {1} has order {ord}", i + 1, show(e))));
            } else {
                push(format!("chi_{0}(g_{0}) primitive of order N", i + 1), ord == n, Some(format!("chi_{0}(g_{0}) = {1} has order {ord}", i + 1, show(e))));
            }
            let bad = (0..r).find(|&k| !(self.char_exp[i][k] as u64 * n as u64).is_multiple_of(self.l as u64));
            push(
                format!("chi_{}^N = eps", i + 1),
                bad.is_none(),
                bad.map(|k| format!("chi_{}(factor {}) = {} has order not dividing N", i + 1, k + 1, show(self.char_exp[i][k]))),
            );
        }
        let product_trivial = |i: usize, j: usize| {
            (0..r).find(|&k| !(self.char_exp[i][k] + self.char_exp[j][k]).is_multiple_of(self.l))
        };
        match self.family {
            Family::QPlane => {
                let bad = product_trivial(0, 1);
                push("chi_1 chi_2 = eps".into(), bad.is_none(), bad.map(|k| format!("fails on factor {}", k + 1)));
                let e = (self.q_exp(1, 0) + self.q_exp(0, 1)) % self.l;
                push("chi_1(g_2) chi_2(g_1) = 1".into(), e == 0, Some(format!("product = {}", show(e))));
            }
            Family::Qls => {
                for i in 0..self.theta {
                    for j in i + 1..self.theta {
                        let e = (self.q_exp(i, j) + self.q_exp(j, i)) % self.l;
                        push(format!("chi_{0}(g_{1}) chi_{1}(g_{0}) = 1", i + 1, j + 1), e == 0, Some(format!("product = {}", show(e))));
                    }
                }
                for &(i, j) in &self.linking {
                    let bad = product_trivial(i, j);
                    push(format!("chi_{} chi_{} = eps", i + 1, j + 1), bad.is_none(), bad.map(|k| format!("fails on factor {}", k + 1)));
                }
            }
            Family::A2 => {
                let q = self.q_exp(0, 0);
                push("chi_2(g_2) = q".into(), self.q_exp(1, 1) == q, Some(format!("chi_2(g_2) = {}", show(self.q_exp(1, 1)))));
                let e = (self.q_exp(1, 0) + self.q_exp(0, 1)) % self.l;
                let target = (self.l - q) % self.l;
                push("chi_1(g_2) chi_2(g_1) = q^-1".into(), e == target, Some(format!("product = {}", show(e))));
            }
            Family::A1 => {}
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().iter().all(|c| c.pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: &[u32]) -> MultiDeg {
        MultiDeg(v.to_vec())
    }

    #[test]
    fn presets_validate() {
        for n in [3, 5] {
            for name in ["a1", "qplane", "qls", "a2"] {
                let dat = CartanDatum::preset(name, n).unwrap();
                let report = dat.validate();
                assert!(report.iter().all(|c| c.pass), "{name} N={n}: {report:?}");
            }
        }
    }

    #[test]
    fn broken_qplane_fails() {
        let mut spec = CartanDatum::qplane(3).to_spec();
        spec.character_values[1] = spec.character_values[0].clone();
        let dat = CartanDatum::from_spec(&spec).unwrap();
        let report = dat.validate();
        let c = report.iter().find(|c| c.name == "chi_1 chi_2 = eps").unwrap();
        assert!(!c.pass);
        assert!(c.witness.is_some());
    }

    #[test]
    fn chi_eval_examples() {
        let dat = CartanDatum::qplane(3);
        let q = dat.q();
        assert!(dat.chi_eval(&d(&[0, 0]), &d(&[2, 1])).is_one());
        assert_eq!(dat.chi_eval(&d(&[0, 1]), &d(&[1, 0])), q.inv().unwrap());
        assert!(dat.chi_eval(&d(&[1, 1]), &d(&[1, 0])).is_one());
        assert_eq!(dat.braid_matrix()[1][0], q);
    }

    #[test]
    fn invariance() {
        let dat = CartanDatum::qplane(3);
        assert!(dat.is_invariant(&d(&[0, 0])));
        assert!(dat.is_invariant(&d(&[1, 1])));
        assert!(!dat.is_invariant(&d(&[1, 0])));
        assert!(dat.is_invariant(&d(&[3, 0])));
    }

    #[test]
    fn roots() {
        assert_eq!(CartanDatum::a1(3).positive_roots(), vec![d(&[1])]);
        let a2 = CartanDatum::a2(3, -1).positive_roots();
        assert_eq!(a2.len(), 3);
        assert_eq!(a2[1], d(&[1, 1]));
        let qp = CartanDatum::qplane(3).slots();
        assert_eq!(qp.len(), 3);
        assert_eq!(qp[2].deg, d(&[1, 1]));
        assert_eq!(qp[2].kind, SlotKind::Linking);
    }

    #[test]
    fn a2_characters() {
        let dat = CartanDatum::a2(3, -1);
        let q = dat.q();
        let qm = dat.braid_matrix();
        assert_eq!(qm[1][1], q);
        assert_eq!(qm[0][1].mul_ref(&qm[1][0]), q.inv().unwrap());
        assert!(qm[1][0].is_one() || qm[0][1].is_one());
    }

    #[test]
    fn spec_round_trip() {
        for name in ["a1", "qplane", "qls", "a2"] {
            let dat = CartanDatum::preset(name, 3).unwrap();
            let json = serde_json::to_string(&dat.to_spec()).unwrap();
            let back: DatumSpec = serde_json::from_str(&json).unwrap();
            assert_eq!(back, dat.to_spec());
        }
    }

    #[test]
    fn restriction() {
        let dat = CartanDatum::preset("qls", 3).unwrap();
        let s = dat.restrict(&[0, 1]).unwrap();
        assert_eq!(s.linking, vec![(0, 1)]);
        assert!(s.is_valid());
        let t = dat.restrict(&[2]).unwrap();
        assert!(t.linking.is_empty());
        assert_eq!(t.chi_eval(&d(&[1]), &d(&[1])), dat.q());
    }

    #[test]
    fn group_helpers() {
        let dat = CartanDatum::a1(3);
        assert_eq!(dat.group_order(), 9);
        let els = dat.group_elements();
        assert_eq!(els.len(), 9);
        for (k, h) in els.iter().enumerate() {
            assert_eq!(dat.group_index(h), k);
        }
        assert_eq!(dat.group_of_deg(&d(&[4])), vec![4]);
    }
}
