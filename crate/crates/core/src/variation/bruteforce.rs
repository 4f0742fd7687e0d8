use crate::error::{Error, Result};
use crate::expr::HyperbolicFn;
use crate::hyperbolic::Hyperbolic;
use crate::intervals::{uniform_grid, HInterval};

/// Largest lattice side accepted by [`variation_sum_set_bruteforce`].
pub const MAX_LATTICE_SIDE: usize = 6;

/// Every variation sum of `f` over strong partitions drawn from the
/// `m × n` lattice of `interval` (`m` points along e1, `n` along e2).
///
/// A strong partition on the lattice is a chain from the lower corner to
/// the upper one; all of them are enumerated. The distinct sums come back
/// sorted by `(e1, e2)`.
pub fn variation_sum_set_bruteforce<F: HyperbolicFn + ?Sized>(
    f: &F,
    interval: &HInterval,
    m: usize,
    n: usize,
) -> Result<Vec<Hyperbolic>> {
    if m > MAX_LATTICE_SIDE || n > MAX_LATTICE_SIDE {
        return Err(Error::GridTooLarge { m, n });
    }
    if m < 2 || n < 2 {
        return Err(Error::InvalidArgument(format!(
            "lattice needs at least 2 points per axis, got {m}x{n}"
        )));
    }
    if interval.is_degenerate() {
        return Err(Error::InvalidArgument(
            "lattice of a degenerate interval repeats points".into(),
        ));
    }
    let (i1, i2) = interval.projections();
    let xs = uniform_grid(i1.lo, i1.hi, m - 1);
    let ys = uniform_grid(i2.lo, i2.hi, n - 1);
    let mut values = Vec::with_capacity(m * n);
    for &x in &xs {
        for &y in &ys {
            values.push(f.eval(Hyperbolic::new(x, y))?);
        }
    }

    let mut walk = Walk {
        m,
        n,
        values: &values,
        steps: Vec::new(),
        sums: Vec::new(),
    };
    walk.visit(0, 0);
    let mut sums = walk.sums;
    sums.sort_by(|a, b| a.a1.total_cmp(&b.a1).then(a.a2.total_cmp(&b.a2)));
    sums.dedup();
    Ok(sums)
}

struct Walk<'a> {
    m: usize,
    n: usize,
    values: &'a [Hyperbolic],
    steps: Vec<Hyperbolic>,
    sums: Vec<Hyperbolic>,
}

impl Walk<'_> {
    fn value(&self, i: usize, j: usize) -> Hyperbolic {
        self.values[i * self.n + j]
    }

    fn visit(&mut self, i: usize, j: usize) {
        if (i, j) == (self.m - 1, self.n - 1) {
            self.sums
                .push(Hyperbolic::exact_sum(self.steps.iter().copied()));
            return;
        }
        let here = self.value(i, j);
        for next_i in i..self.m {
            for next_j in j..self.n {
                if (next_i, next_j) == (i, j) {
                    continue;
                }
                self.steps.push(self.value(next_i, next_j).metric(here));
                self.visit(next_i, next_j);
                self.steps.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::NaturalFunction;

    /// One sum is recorded per chain before deduplication.
    fn count_chains(m: usize, n: usize) -> usize {
        let values = vec![Hyperbolic::ZERO; m * n];
        let mut walk = Walk {
            m,
            n,
            values: &values,
            steps: Vec::new(),
            sums: Vec::new(),
        };
        walk.visit(0, 0);
        walk.sums.len()
    }

    #[test]
    fn chain_counts() {
        assert_eq!(count_chains(2, 2), 3);
        assert_eq!(count_chains(3, 3), 26);
        assert_eq!(count_chains(4, 4), 252);
        assert_eq!(count_chains(2, 3), 8);
    }

    #[test]
    fn constant_has_single_sum() {
        let c = NaturalFunction::constant(Hyperbolic::new(2.0, 5.0));
        let sums = variation_sum_set_bruteforce(&c, &HInterval::unit(), 4, 5).unwrap();
        assert_eq!(sums, vec![Hyperbolic::ZERO]);
    }

    #[test]
    fn identity_sums_telescope() {
        let id = NaturalFunction::identity();
        let sums = variation_sum_set_bruteforce(&id, &HInterval::unit(), 3, 3).unwrap();
        assert_eq!(sums, vec![Hyperbolic::new(1.0, 1.0)]);
    }

    #[test]
    fn limits() {
        let id = NaturalFunction::identity();
        let unit = HInterval::unit();
        assert_eq!(
            variation_sum_set_bruteforce(&id, &unit, 7, 2),
            Err(Error::GridTooLarge { m: 7, n: 2 })
        );
        assert!(variation_sum_set_bruteforce(&id, &unit, 1, 2).is_err());
        let flat = HInterval::closed(Hyperbolic::ZERO, Hyperbolic::new(1.0, 0.0)).unwrap();
        assert!(variation_sum_set_bruteforce(&id, &flat, 2, 2).is_err());
    }
}
