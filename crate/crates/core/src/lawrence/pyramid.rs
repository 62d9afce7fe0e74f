use std::ops::AddAssign;

use num_traits::Zero;

pub const DEFAULT_CAPACITY: usize = 8;

/// Leveled accumulator for long sums of fractions.
///
/// A summand goes into level 0 until that level holds `capacity` summands;
/// then the level's partial sum is carried into level 1 and the level restarts
/// with the new summand, and so on upward. Most additions therefore involve
/// operands of similar size.
#[derive(Debug, Clone)]
pub struct AdditionPyramid<T> {
    levels: Vec<(T, usize)>,
    capacity: usize,
}

impl<T> Default for AdditionPyramid<T> {
    fn default() -> Self {
        Self::with_capacity(DEFAULT_CAPACITY)
    }
}

impl<T> AdditionPyramid<T> {
    pub fn with_capacity(capacity: usize) -> Self {
        assert!(capacity > 0, "capacity must be positive");
        Self {
            levels: Vec::new(),
            capacity,
        }
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }
}

impl<T: Zero + for<'a> AddAssign<&'a T>> AdditionPyramid<T> {
    pub fn push(&mut self, summand: T) {
        let mut carry = summand;
        let mut level = 0;
        loop {
            if level == self.levels.len() {
                self.levels.push((carry, 1));
                return;
            }
            let (q, count) = &mut self.levels[level];
            if *count < self.capacity {
                *q += &carry;
                *count += 1;
                return;
            }
            carry = std::mem::replace(q, carry);
            *count = 1;
            level += 1;
        }
    }

    /// Exact sum of everything pushed so far.
    pub fn finalize(self) -> T {
        let mut total = T::zero();
        for (q, _) in self.levels.iter().rev() {
            total += q;
        }
        total
    }

    /// Combines two accumulators, e.g. from different workers.
    pub fn merge(mut self, other: Self) -> Self {
        self.push(other.finalize());
        self
    }
}

pub fn pyramid_add<T: Zero + for<'a> AddAssign<&'a T>>(pyr: &mut AdditionPyramid<T>, s: T) {
    pyr.push(s);
}

pub fn pyramid_finalize<T: Zero + for<'a> AddAssign<&'a T>>(pyr: AdditionPyramid<T>) -> T {
    pyr.finalize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Rat};
    use rand::{Rng, SeedableRng};

    #[test]
    fn small_sums() {
        let mut p = AdditionPyramid::default();
        for i in 1..=10 {
            pyramid_add(&mut p, rat(i, 1));
        }
        assert_eq!(pyramid_finalize(p), rat(55, 1));

        let mut p = AdditionPyramid::default();
        p.push(rat(1, 2));
        p.push(rat(-1, 2));
        assert_eq!(p.finalize(), rat(0, 1));
        assert_eq!(AdditionPyramid::<Rat>::default().finalize(), rat(0, 1));
    }

    #[test]
    fn levels_grow_logarithmically() {
        let mut p = AdditionPyramid::with_capacity(2);
        for _ in 0..100 {
            p.push(rat(1, 1));
        }
        assert!(p.depth() <= 7);
        assert_eq!(p.finalize(), rat(100, 1));
    }

    #[test]
    fn matches_naive_fold_on_many_random_rationals() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let xs: Vec<Rat> = (0..100_000)
            .map(|_| rat(rng.gen_range(-1000i64..=1000), rng.gen_range(1i64..=60)))
            .collect();
        let naive = xs.iter().fold(rat(0, 1), |acc, x| acc + x);
        let mut p = AdditionPyramid::default();
        for x in xs {
            p.push(x);
        }
        assert_eq!(p.finalize(), naive);
    }
}
