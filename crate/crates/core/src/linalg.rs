//! Dense exact linear algebra over cyclotomic fields.

use std::collections::BTreeMap;

use crate::cyclotomic::CycNum;

/// An incrementally built reduced row echelon basis. Each stored row
/// remembers the combination of inserted vectors that produced it.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<Vec<CycNum>>,
    pivots: Vec<usize>,
    combos: Vec<BTreeMap<usize, CycNum>>,
    inserted: usize,
}

/// Result of reducing a vector against an [`Echelon`].
#[derive(Clone, Debug)]
pub struct Reduction {
    pub residual: Vec<CycNum>,
    /// `v = residual + Σ coeff · inserted[index]`.
    pub combination: BTreeMap<usize, CycNum>,
}

impl Reduction {
    pub fn is_member(&self) -> bool {
        self.residual.iter().all(CycNum::is_zero)
    }
}

fn add_combo(acc: &mut BTreeMap<usize, CycNum>, other: &BTreeMap<usize, CycNum>, c: &CycNum) {
    for (k, v) in other {
        let s = acc.get(k).cloned().unwrap_or_default().add_ref(&v.mul_ref(c));
        if s.is_zero() {
            acc.remove(k);
        } else {
            acc.insert(*k, s);
        }
    }
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivots: Vec::new(), combos: Vec::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` by the stored rows.
    pub fn reduce(&self, v: &[CycNum]) -> Reduction {
        let mut residual = v.to_vec();
        let mut combination = BTreeMap::new();
        for (r, &p) in self.pivots.iter().enumerate() {
            if residual[p].is_zero() {
                continue;
            }
            let c = residual[p].clone();
            for (j, x) in self.rows[r].iter().enumerate() {
                if !x.is_zero() {
                    residual[j] = residual[j].sub_ref(&x.mul_ref(&c));
                }
            }
            add_combo(&mut combination, &self.combos[r], &c);
        }
        Reduction { residual, combination }
    }

    /// Inserts a vector; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &[CycNum]) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        let red = self.reduce(v);
        let Some(p) = red.residual.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = red.residual[p].inv().expect("nonzero pivot");
        let row: Vec<CycNum> = red.residual.iter().map(|x| x.mul_ref(&inv)).collect();
        // the new row equals (v - Σ combination) * inv
        let mut combo = BTreeMap::new();
        combo.insert(idx, inv.clone());
        add_combo(&mut combo, &red.combination, &inv.neg_ref());
        // keep the basis fully reduced
        for r in 0..self.rows.len() {
            let c = self.rows[r][p].clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..self.ncols {
                if !row[j].is_zero() {
                    self.rows[r][j] = self.rows[r][j].sub_ref(&row[j].mul_ref(&c));
                }
            }
            let mut updated = self.combos[r].clone();
            add_combo(&mut updated, &combo, &c.neg_ref());
            self.combos[r] = updated;
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, row);
        self.combos.insert(pos, combo);
        true
    }
}

/// Solution set of a linear system: one particular solution and a basis of
/// the homogeneous solutions.
#[derive(Clone, Debug)]
pub struct Solution {
    pub particular: Vec<CycNum>,
    pub kernel: Vec<Vec<CycNum>>,
}

/// Solves `A x = b` for `A` given by rows. Returns `None` when inconsistent.
pub fn solve(a: &[Vec<CycNum>], b: &[CycNum], nvars: usize) -> Option<Solution> {
    let mut m: Vec<Vec<CycNum>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..nvars {
        let Some(pr) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = m[rank][col].inv().expect("nonzero pivot");
        for x in m[rank].iter_mut() {
            if !x.is_zero() {
                *x = x.mul_ref(&inv);
            }
        }
        for r in 0..m.len() {
            if r == rank || m[r][col].is_zero() {
                continue;
            }
            let c = m[r][col].clone();
            for j in col..=nvars {
                if !m[rank][j].is_zero() {
                    m[r][j] = m[r][j].sub_ref(&m[rank][j].mul_ref(&c));
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if m[rank..].iter().any(|row| !row[nvars].is_zero()) {
        return None;
    }
    let mut particular = vec![CycNum::zero(); nvars];
    for (r, &p) in pivots.iter().enumerate() {
        particular[p] = m[r][nvars].clone();
    }
    let free: Vec<usize> = (0..nvars).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&fc| {
            let mut v = vec![CycNum::zero(); nvars];
            v[fc] = CycNum::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = m[r][fc].neg_ref();
            }
            v
        })
        .collect();
    Some(Solution { particular, kernel })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<CycNum> {
        xs.iter().map(|&x| CycNum::from_int(x)).collect()
    }

    #[test]
    fn echelon_membership_with_certificate() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&v(&[1, 2, 0])));
        assert!(e.insert(&v(&[0, 1, 1])));
        assert!(!e.insert(&v(&[1, 3, 1])));
        let target = v(&[2, 5, 1]);
        let red = e.reduce(&target);
        assert!(red.is_member());
        // rebuild from the certificate
        let inputs = [v(&[1, 2, 0]), v(&[0, 1, 1]), v(&[1, 3, 1])];
        let mut acc = v(&[0, 0, 0]);
        for (&i, c) in &red.combination {
            for j in 0..3 {
                acc[j] = acc[j].add_ref(&inputs[i][j].mul_ref(c));
            }
        }
        assert_eq!(acc, target);
        assert!(!e.reduce(&v(&[0, 0, 1])).is_member());
    }

    #[test]
    fn solve_system() {
        let a = vec![v(&[1, 1, 0]), v(&[0, 1, 1])];
        let sol = solve(&a, &v(&[2, 3]), 3).unwrap();
        assert_eq!(sol.kernel.len(), 1);
        assert_eq!(sol.particular, v(&[-1, 3, 0]));
        assert!(solve(&[v(&[1, 1]), v(&[1, 1])], &v(&[1, 2]), 2).is_none());
    }
}
