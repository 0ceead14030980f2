//! Hermite normal forms of lattices `L` with `diag(n_1, ..., n_r) Z^r <= L <= Z^r`.
//!
//! Subgroups of a finite abelian group `Z/n_1 x ... x Z/n_r` correspond
//! one-to-one with such lattices, so subgroup closure, joins, intersections,
//! kernels and preimages all reduce to echelon forms here. Because every
//! `n_j e_j` lies in the lattice, column `j` may always be reduced mod `n_j`,
//! which keeps all entries word-sized.

use crate::arith::ext_gcd;

/// Canonical (upper triangular, reduced) basis of a full-rank lattice that
/// contains `diag(moduli) Z^r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hnf {
    moduli: Vec<u64>,
    rows: Vec<Vec<u64>>,
}

impl Hnf {
    /// The lattice spanned by `generators` and `diag(moduli) Z^r`.
    pub fn span(moduli: &[u64], generators: &[Vec<u64>]) -> Hnf {
        let rows = echelon(moduli, generators);
        let mut hnf = Hnf {
            moduli: moduli.to_vec(),
            rows,
        };
        hnf.reduce();
        hnf
    }

    /// The lattice `Z^r` (the whole group).
    pub fn full(moduli: &[u64]) -> Hnf {
        let r = moduli.len();
        let rows = (0..r)
            .map(|j| {
                let mut v = vec![0; r];
                v[j] = 1;
                v
            })
            .collect();
        Hnf {
            moduli: moduli.to_vec(),
            rows,
        }
    }

    /// The lattice `diag(moduli) Z^r` (the trivial subgroup).
    pub fn trivial(moduli: &[u64]) -> Hnf {
        Hnf::span(moduli, &[])
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivot(&self, j: usize) -> u64 {
        self.rows[j][j]
    }

    /// Rows that are nonzero modulo the column moduli, i.e. a generating set
    /// of the subgroup without the implicit relations.
    pub fn generators(&self) -> Vec<Vec<u64>> {
        self.rows
            .iter()
            .filter(|row| row.iter().zip(&self.moduli).any(|(&x, &n)| x % n != 0))
            .map(|row| row.iter().zip(&self.moduli).map(|(&x, &n)| x % n).collect())
            .collect()
    }

    /// `[Z^r : L]`, the index of the subgroup.
    pub fn index(&self) -> Option<u128> {
        (0..self.rank()).try_fold(1u128, |acc, j| acc.checked_mul(self.pivot(j) as u128))
    }

    /// `[L : diag(moduli) Z^r]`, the order of the subgroup.
    pub fn order(&self) -> Option<u128> {
        (0..self.rank()).try_fold(1u128, |acc, j| {
            acc.checked_mul((self.moduli[j] / self.pivot(j)) as u128)
        })
    }

    /// Every element of `L / diag(moduli) Z^r`; callers bound the order first.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let r = self.rank();
        let mut out = vec![vec![0u64; r]];
        for (j, row) in self.rows.iter().enumerate() {
            let radix = self.moduli[j] / self.pivot(j);
            let base = out.clone();
            for c in 1..radix {
                out.extend(base.iter().map(|v| {
                    v.iter()
                        .zip(row)
                        .zip(&self.moduli)
                        .map(|((&x, &y), &n)| ((x as u128 + c as u128 * y as u128) % n as u128) as u64)
                        .collect::<Vec<_>>()
                }));
            }
        }
        out
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        debug_assert_eq!(v.len(), self.rank());
        let mut x: Vec<i128> = v.iter().map(|&a| a as i128).collect();
        for j in 0..self.rank() {
            let n = self.moduli[j] as i128;
            let xj = x[j].rem_euclid(n);
            let g = self.pivot(j) as i128;
            if xj % g != 0 {
                return false;
            }
            let c = xj / g;
            for k in j..self.rank() {
                let nk = self.moduli[k] as i128;
                x[k] = (x[k] - c * self.rows[j][k] as i128).rem_euclid(nk);
            }
        }
        true
    }

    pub fn contains_lattice(&self, other: &Hnf) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Sum of two lattices (join of subgroups).
    pub fn join(&self, other: &Hnf) -> Hnf {
        debug_assert_eq!(self.moduli, other.moduli);
        let gens: Vec<Vec<u64>> = self.generators().into_iter().chain(other.generators()).collect();
        Hnf::span(&self.moduli, &gens)
    }

    /// Intersection of two lattices.
    ///
    /// Spans `{(b, b)} u {(c, 0)}` for `b` in `self`, `c` in `other`; the
    /// vectors with zero first half are exactly `{0} x (self n other)`.
    pub fn intersect(&self, other: &Hnf) -> Hnf {
        debug_assert_eq!(self.moduli, other.moduli);
        let r = self.rank();
        let mut moduli = self.moduli.clone();
        moduli.extend_from_slice(&self.moduli);
        let mut gens = Vec::with_capacity(2 * r);
        for b in &self.rows {
            let mut v = b.clone();
            v.extend_from_slice(b);
            gens.push(v);
        }
        for c in &other.rows {
            let mut v = c.clone();
            v.extend(std::iter::repeat(0).take(r));
            gens.push(v);
        }
        Hnf::span(&self.moduli, &tail_block(&moduli, &gens, r))
    }

    /// Preimage of the lattice `target` under the homomorphism
    /// `Z^r -> Z^s / diag(target.moduli)` sending `e_i` to `images[i]`.
    pub fn preimage(source_moduli: &[u64], images: &[Vec<u64>], target: &Hnf) -> Hnf {
        let s = target.rank();
        let mut moduli = target.moduli.clone();
        moduli.extend_from_slice(source_moduli);
        let mut gens = Vec::with_capacity(images.len() + s);
        for (i, img) in images.iter().enumerate() {
            let mut v = img.clone();
            v.extend((0..source_moduli.len()).map(|k| u64::from(k == i)));
            gens.push(v);
        }
        for row in &target.rows {
            let mut v = row.clone();
            v.extend(std::iter::repeat(0).take(source_moduli.len()));
            gens.push(v);
        }
        Hnf::span(source_moduli, &tail_block(&moduli, &gens, s))
    }

    /// Image of this lattice under `e_i -> images[i]` into `Z^s / diag(target_moduli)`.
    pub fn image(&self, images: &[Vec<u64>], target_moduli: &[u64]) -> Hnf {
        let gens: Vec<Vec<u64>> = self
            .generators()
            .iter()
            .map(|g| apply(g, images, target_moduli))
            .collect();
        Hnf::span(target_moduli, &gens)
    }

    fn reduce(&mut self) {
        let r = self.rank();
        for k in 0..r {
            let g = self.rows[k][k] as i128;
            for i in 0..k {
                let c = (self.rows[i][k] as i128).div_euclid(g);
                if c == 0 {
                    continue;
                }
                for col in k..r {
                    let n = self.moduli[col] as i128;
                    let v = self.rows[i][col] as i128 - c * self.rows[k][col] as i128;
                    // column k is now in [0, g); later columns are reduced mod n
                    self.rows[i][col] = if col == k { v } else { v.rem_euclid(n) } as u64;
                }
            }
        }
    }
}

/// Applies `x -> sum_i x_i images[i]` modulo `target_moduli`.
pub fn apply(x: &[u64], images: &[Vec<u64>], target_moduli: &[u64]) -> Vec<u64> {
    let mut out = vec![0u128; target_moduli.len()];
    for (xi, img) in x.iter().zip(images) {
        if *xi == 0 {
            continue;
        }
        for (k, &n) in target_moduli.iter().enumerate() {
            out[k] = (out[k] + (*xi as u128 % n as u128) * (img[k] as u128 % n as u128)) % n as u128;
        }
    }
    out.into_iter().map(|v| v as u64).collect()
}

/// Echelon basis of the span; then keeps the rows whose pivot lies past
/// `split`, restricted to the trailing block.
fn tail_block(moduli: &[u64], gens: &[Vec<u64>], split: usize) -> Vec<Vec<u64>> {
    echelon(moduli, gens)
        .into_iter()
        .skip(split)
        .map(|row| row[split..].to_vec())
        .collect()
}

/// Upper-triangular basis (row `j` has pivot in column `j`) of the lattice
/// spanned by `generators` together with `diag(moduli) Z^r`.
fn echelon(moduli: &[u64], generators: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let r = moduli.len();
    let m: Vec<i128> = moduli.iter().map(|&n| n as i128).collect();
    let mut pending: Vec<Vec<i128>> = generators
        .iter()
        .map(|g| {
            debug_assert_eq!(g.len(), r);
            g.iter().zip(&m).map(|(&x, &n)| (x as i128).rem_euclid(n)).collect()
        })
        .collect();
    let mut basis = Vec::with_capacity(r);
    for j in 0..r {
        let mut pivot = vec![0i128; r];
        pivot[j] = m[j];
        for row in pending.iter_mut() {
            let b = row[j];
            if b == 0 {
                continue;
            }
            let a = pivot[j];
            let (g, s, t) = ext_gcd(a, b);
            let (ag, bg) = (a / g, b / g);
            let mut new_pivot = vec![0i128; r];
            for k in j..r {
                new_pivot[k] = s * pivot[k] + t * row[k];
                row[k] = ag * row[k] - bg * pivot[k];
                if k > j {
                    new_pivot[k] = new_pivot[k].rem_euclid(m[k]);
                    row[k] = row[k].rem_euclid(m[k]);
                }
            }
            new_pivot[j] = g;
            row[j] = 0;
            pivot = new_pivot;
        }
        pending.retain(|row| row.iter().any(|&x| x != 0));
        // (n_j / g) * pivot - n_j e_j stays in the lattice and has no entry in column j
        let mult = m[j] / pivot[j];
        if mult > 1 {
            let extra: Vec<i128> = (0..r)
                .map(|k| if k <= j { 0 } else { (mult * pivot[k]).rem_euclid(m[k]) })
                .collect();
            if extra.iter().any(|&x| x != 0) {
                pending.push(extra);
            }
        }
        basis.push(pivot.into_iter().map(|x| x as u64).collect());
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn elements(moduli: &[u64], gens: &[Vec<u64>]) -> BTreeSet<Vec<u64>> {
        let mut set = BTreeSet::new();
        let zero = vec![0; moduli.len()];
        set.insert(zero.clone());
        let mut frontier = vec![zero];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y: Vec<u64> = x.iter().zip(g).zip(moduli).map(|((a, b), n)| (a + b) % n).collect();
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    fn all_vectors(moduli: &[u64]) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for &n in moduli {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u64>| {
                    (0..n).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn span_matches_brute_force_closure() {
        let moduli = [4u64, 6, 2];
        let cases = vec![
            vec![],
            vec![vec![2, 3, 1]],
            vec![vec![1, 0, 0], vec![0, 2, 1]],
            vec![vec![2, 2, 0], vec![0, 3, 1]],
            vec![vec![3, 5, 1]],
        ];
        for gens in cases {
            let hnf = Hnf::span(&moduli, &gens);
            let brute = elements(&moduli, &gens);
            assert_eq!(hnf.order(), Some(brute.len() as u128), "{gens:?}");
            for v in all_vectors(&moduli) {
                assert_eq!(hnf.contains(&v), brute.contains(&v), "{gens:?} {v:?}");
            }
        }
    }

    #[test]
    fn intersection_matches_brute_force() {
        let moduli = [6u64, 4];
        let a = vec![vec![2, 2]];
        let b = vec![vec![3, 0], vec![0, 2]];
        let ha = Hnf::span(&moduli, &a);
        let hb = Hnf::span(&moduli, &b);
        let ea = elements(&moduli, &a);
        let eb = elements(&moduli, &b);
        let meet = ha.intersect(&hb);
        let expected: BTreeSet<_> = ea.intersection(&eb).cloned().collect();
        assert_eq!(meet.order(), Some(expected.len() as u128));
        for v in &expected {
            assert!(meet.contains(v));
        }
    }

    #[test]
    fn canonical_form_is_unique() {
        let moduli = [12u64, 6];
        let a = Hnf::span(&moduli, &[vec![2, 1]]);
        let b = Hnf::span(&moduli, &[vec![10, 5], vec![4, 2]]);
        assert_eq!(a, b);
        assert_eq!(Hnf::full(&moduli), Hnf::span(&moduli, &[vec![1, 0], vec![0, 1]]));
    }

    #[test]
    fn listed_elements_match_closure() {
        let moduli = [4, 6, 10];
        for gens in [vec![], vec![vec![2, 3, 5]], vec![vec![1, 2, 0], vec![0, 4, 6]]] {
            let listed: Vec<Vec<u64>> = Hnf::span(&moduli, &gens).elements();
            let set: BTreeSet<Vec<u64>> = listed.iter().cloned().collect();
            assert_eq!(set.len(), listed.len());
            assert_eq!(set, elements(&moduli, &gens));
        }
    }
}
