//! Finitely supported linear combinations with exact coefficients.

use std::collections::BTreeMap;

use crate::cyclotomic::CycNum;

/// `Σ c_k · key_k`, with no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lin<K: Ord> {
    terms: BTreeMap<K, CycNum>,
}

impl<K: Ord> Default for Lin<K> {
    fn default() -> Self {
        Lin { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Lin<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, CycNum::one())
    }

    pub fn term(k: K, c: CycNum) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, k: &K) -> Option<&CycNum> {
        self.terms.get(k)
    }

    pub fn coeff(&self, k: &K) -> CycNum {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &CycNum)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, k: K, c: CycNum) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(k) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Lin<K>, c: &CycNum) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), if c.is_one() { v.clone() } else { v.mul_ref(c) });
        }
    }

    pub fn add_assign(&mut self, other: &Lin<K>) {
        self.add_scaled(other, &CycNum::one());
    }

    pub fn sub_assign(&mut self, other: &Lin<K>) {
        self.add_scaled(other, &CycNum::from_int(-1));
    }

    pub fn scaled(&self, c: &CycNum) -> Lin<K> {
        if c.is_zero() {
            return Self::zero();
        }
        Lin { terms: self.terms.iter().map(|(k, v)| (k.clone(), v.mul_ref(c))).collect() }
    }

    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Option<K2>) -> Lin<K2> {
        let mut out = Lin::zero();
        for (k, v) in &self.terms {
            if let Some(k2) = f(k) {
                out.add_term(k2, v.clone());
            }
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Lin<K> {
        Lin { terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (k.clone(), v.clone())).collect() }
    }

    pub fn into_iter_terms(self) -> impl Iterator<Item = (K, CycNum)> {
        self.terms.into_iter()
    }
}

impl<K: Ord + Clone> FromIterator<(K, CycNum)> for Lin<K> {
    fn from_iter<I: IntoIterator<Item = (K, CycNum)>>(iter: I) -> Self {
        let mut out = Lin::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}
