//! Enumeration of the F_p-points of a projective space P^{d-1}.
//!
//! Points are normalized with their first nonzero coordinate equal to 1 and
//! numbered by the position of that coordinate, then by the remaining
//! coordinates read as base-p digits.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

#[derive(Clone, Copy, Debug)]
pub struct ProjectiveFp {
    dim: usize,
    p: u64,
}

impl ProjectiveFp {
    /// Points of P(F_p^dim).
    pub fn new(dim: usize, p: u64) -> Self {
        ProjectiveFp { dim, p }
    }

    /// `(p^dim - 1) / (p - 1)`, or `None` on overflow.
    pub fn count(&self) -> Option<u64> {
        let mut total: u64 = 0;
        let mut block: u64 = 1;
        for _ in 0..self.dim {
            total = total.checked_add(block)?;
            block = block.checked_mul(self.p)?;
        }
        Some(total)
    }

    /// Fails when the space has more than `budget` points.
    pub fn check_budget(&self, budget: u64) -> Result<u64> {
        match self.count() {
            Some(c) if c <= budget => Ok(c),
            _ => Err(Error::Budget(format!(
                "P^{}(F_{}) has more than {budget} points",
                self.dim as isize - 1,
                self.p
            ))),
        }
    }

    /// Coordinates of the point with number `k`.
    pub fn point(&self, mut k: u64) -> Vec<u64> {
        let mut lead = 0;
        loop {
            let block = self.p.pow((self.dim - 1 - lead) as u32);
            if k < block {
                break;
            }
            k -= block;
            lead += 1;
        }
        let mut v = vec![0u64; self.dim];
        v[lead] = 1;
        for i in (lead + 1..self.dim).rev() {
            v[i] = k % self.p;
            k /= self.p;
        }
        v
    }

    pub fn point_scalars(&self, k: u64) -> Vec<Scalar> {
        let field = FieldSpec::Prime { p: self.p };
        self.point(k).into_iter().map(|c| Scalar::from_i64(field, c as i64)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn enumerates_each_point_once() {
        let space = ProjectiveFp::new(3, 3);
        assert_eq!(space.count(), Some(13));
        let pts: HashSet<Vec<u64>> = (0..13).map(|k| space.point(k)).collect();
        assert_eq!(pts.len(), 13);
        for p in &pts {
            assert_eq!(p.iter().find(|&&c| c != 0), Some(&1));
        }
        assert!(ProjectiveFp::new(6, 101).check_budget(1_000_000).is_err());
    }
}
