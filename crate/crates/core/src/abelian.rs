//! Cyclic decomposition of finite abelian groups with explicit coordinates.
//!
//! A finite abelian table group is split into a direct sum of cyclic groups
//! by repeatedly peeling off a maximal-order cyclic summand. The resulting
//! basis gives every element a unique coordinate vector; for the linear
//! algebra all coordinates are rescaled into the single modulus d = exponent,
//! where the cyclic factor Z/o embeds as the multiples of d/o.

use crate::error::{Error, Result};
use crate::group::{quotient, Group, Subgroup};
use crate::zlin::Mat;
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct AbelianStructure {
    group: Arc<Group>,
    basis: Vec<usize>,
    orders: Vec<usize>,
    exponent: i64,
    coords: Vec<Vec<i64>>,
    scaled: Vec<Vec<i64>>,
    from_scaled: HashMap<Vec<i64>, usize>,
}

fn peel_basis(g: &Arc<Group>) -> Result<(Vec<usize>, Vec<usize>)> {
    if g.order() == 1 {
        return Ok((Vec::new(), Vec::new()));
    }
    let max_order = g.elements().map(|x| g.element_order(x)).max().unwrap();
    let head = g
        .elements()
        .find(|&x| g.element_order(x) == max_order)
        .unwrap();
    let span = Subgroup::generated(g.clone(), &[head])?;
    if span.order() == g.order() {
        return Ok((vec![head], vec![max_order]));
    }
    let (q, proj) = quotient(g, &span)?;
    let (q_basis, q_orders) = peel_basis(&q)?;
    let mut basis = vec![head];
    let mut orders = vec![max_order];
    for (&qb, &qo) in q_basis.iter().zip(&q_orders) {
        // a cyclic summand of maximal order splits off, so a preimage of
        // the same order exists
        let lift = proj
            .preimages(qb)
            .into_iter()
            .find(|&x| g.element_order(x) == qo)
            .ok_or(Error::NotWellDefined(qb, qo))?;
        basis.push(lift);
        orders.push(qo);
    }
    Ok((basis, orders))
}

impl AbelianStructure {
    pub fn new(group: Arc<Group>) -> Result<AbelianStructure> {
        if !group.is_abelian() {
            return Err(Error::NotAbelian);
        }
        let (basis, orders) = peel_basis(&group)?;
        let exponent = orders.first().copied().unwrap_or(1) as i64;
        let k = basis.len();
        // enumerate all coordinate tuples and record the element each one hits
        let mut coords = vec![Vec::new(); group.order()];
        let mut hit = vec![false; group.order()];
        let mut tuple = vec![0i64; k];
        loop {
            let mut elem = 0usize;
            for (i, &b) in basis.iter().enumerate() {
                for _ in 0..tuple[i] {
                    elem = group.mul(elem, b);
                }
            }
            if hit[elem] {
                return Err(Error::NotWellDefined(elem, 0));
            }
            hit[elem] = true;
            coords[elem] = tuple.clone();
            // mixed-radix increment
            let mut i = k;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                tuple[i] += 1;
                if tuple[i] < orders[i] as i64 {
                    break;
                }
                tuple[i] = 0;
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if k == 0 || i == usize::MAX {
                break;
            }
        }
        if hit.iter().any(|&h| !h) {
            return Err(Error::NotWellDefined(0, 0));
        }
        let scaled: Vec<Vec<i64>> = coords
            .iter()
            .map(|c| {
                c.iter()
                    .zip(&orders)
                    .map(|(&v, &o)| v * (exponent / o as i64))
                    .collect()
            })
            .collect();
        let from_scaled: HashMap<Vec<i64>, usize> = scaled
            .iter()
            .enumerate()
            .map(|(e, s)| (s.clone(), e))
            .collect();
        Ok(AbelianStructure {
            group,
            basis,
            orders,
            exponent,
            coords,
            scaled,
            from_scaled,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Cyclic factor orders, largest first; each later order divides the
    /// one before it.
    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    /// Common modulus for the linear algebra: the group exponent (1 for the
    /// trivial group).
    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn coords(&self, elem: usize) -> &[i64] {
        &self.coords[elem]
    }

    /// Coordinates rescaled into Z/exponent: factor j contributes multiples
    /// of exponent/orders[j].
    pub fn scaled_coords(&self, elem: usize) -> &[i64] {
        &self.scaled[elem]
    }

    pub fn element_from_scaled(&self, scaled: &[i64]) -> Option<usize> {
        let reduced: Vec<i64> = scaled
            .iter()
            .map(|&x| x.rem_euclid(self.exponent))
            .collect();
        self.from_scaled.get(&reduced).copied()
    }

    /// Matrix of a group automorphism (given as a permutation) acting on
    /// scaled coordinates, entries mod exponent.
    pub fn action_matrix_scaled(&self, perm: &[usize]) -> Mat {
        let k = self.rank();
        let d = self.exponent;
        let mut m = vec![vec![0i64; k]; k];
        for (j, &b) in self.basis.iter().enumerate() {
            let image = self.coords(perm[b]).to_vec();
            let dj = self.orders[j] as i64;
            for i in 0..k {
                let di = self.orders[i] as i64;
                // scaled entry: image_i * dj / di, integral because the
                // image of a basis element has order dividing dj
                let num = image[i] * dj;
                debug_assert_eq!(num % di, 0);
                m[i][j] = (num / di).rem_euclid(d);
            }
        }
        m
    }

    /// Invariant factors (ascending divisibility chain, entries > 1).
    pub fn invariant_factors(&self) -> Vec<i64> {
        let orders: Vec<i64> = self.orders.iter().map(|&o| o as i64).collect();
        crate::zlin::invariant_factors(&orders)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn cyclic_structure() {
        let s = AbelianStructure::new(catalog::cyclic(8)).unwrap();
        assert_eq!(s.rank(), 1);
        assert_eq!(s.orders(), &[8]);
        assert_eq!(s.exponent(), 8);
        assert_eq!(s.invariant_factors(), vec![8]);
    }

    #[test]
    fn klein_structure() {
        let s = AbelianStructure::new(catalog::product(&catalog::cyclic(2), &catalog::cyclic(2)))
            .unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(s.orders(), &[2, 2]);
        assert_eq!(s.invariant_factors(), vec![2, 2]);
    }

    #[test]
    fn mixed_structure_roundtrip() {
        let g = catalog::product(&catalog::cyclic(2), &catalog::cyclic(4));
        let s = AbelianStructure::new(g.clone()).unwrap();
        assert_eq!(s.orders(), &[4, 2]);
        assert_eq!(s.exponent(), 4);
        assert_eq!(s.invariant_factors(), vec![2, 4]);
        for x in g.elements() {
            assert_eq!(s.element_from_scaled(s.scaled_coords(x)), Some(x));
        }
        // scaled coords add like the group does
        for a in g.elements() {
            for b in g.elements() {
                let sum: Vec<i64> = s
                    .scaled_coords(a)
                    .iter()
                    .zip(s.scaled_coords(b))
                    .map(|(&x, &y)| (x + y).rem_euclid(s.exponent()))
                    .collect();
                assert_eq!(s.element_from_scaled(&sum), Some(g.mul(a, b)));
            }
        }
    }

    #[test]
    fn trivial_structure() {
        let s = AbelianStructure::new(crate::group::Group::trivial()).unwrap();
        assert_eq!(s.rank(), 0);
        assert_eq!(s.exponent(), 1);
    }

    #[test]
    fn action_matrix_of_inversion() {
        let g = catalog::cyclic(4);
        let s = AbelianStructure::new(g.clone()).unwrap();
        let inversion: Vec<usize> = g.elements().map(|x| g.inv(x)).collect();
        let m = s.action_matrix_scaled(&inversion);
        // applying the matrix to scaled coords matches the permutation
        for x in g.elements() {
            let out = crate::zlin::mat_vec(&m, s.scaled_coords(x), s.exponent());
            assert_eq!(s.element_from_scaled(&out), Some(inversion[x]));
        }
    }

    #[test]
    fn nonabelian_group_is_rejected() {
        assert!(AbelianStructure::new(catalog::symmetric_3()).is_err());
    }
}
