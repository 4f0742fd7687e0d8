//! Correctly rounded summation.
//!
//! Length identities of partitions are checked with exact equality. A plain
//! left-to-right sum of `1/3`-style endpoints drifts by an ulp, so sums that
//! take part in those identities go through [`exact_sum`], which returns the
//! real sum of its (finite) inputs rounded once to the nearest `f64`.

/// Shewchuk's non-overlapping partials, with the half-way correction used by
/// Python's `math.fsum`.
pub fn exact_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut partials: Vec<f64> = Vec::new();
    for mut x in values {
        let mut i = 0;
        for j in 0..partials.len() {
            let mut y = partials[j];
            if x.abs() < y.abs() {
                std::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                partials[i] = lo;
                i += 1;
            }
            x = hi;
        }
        partials.truncate(i);
        partials.push(x);
    }

    let mut n = partials.len();
    if n == 0 {
        return 0.0;
    }
    n -= 1;
    let mut hi = partials[n];
    let mut lo = 0.0;
    while n > 0 {
        let x = hi;
        n -= 1;
        let y = partials[n];
        hi = x + y;
        let yr = hi - x;
        lo = y - yr;
        if lo != 0.0 {
            break;
        }
    }
    if n > 0 && ((lo < 0.0 && partials[n - 1] < 0.0) || (lo > 0.0 && partials[n - 1] > 0.0)) {
        let y = lo * 2.0;
        let x = hi + y;
        let yr = x - hi;
        if y == yr {
            hi = x;
        }
    }
    hi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thirds_sum_exactly() {
        let third = 1.0 / 3.0;
        let two_thirds = 2.0 / 3.0;
        let lengths = [third, two_thirds - third, 1.0 - two_thirds];
        let naive: f64 = lengths.iter().cycle().take(9).sum();
        assert_ne!(naive, 3.0);
        assert_eq!(exact_sum(lengths.iter().cycle().take(9).copied()), 3.0);
    }

    #[test]
    fn cancellation() {
        assert_eq!(exact_sum([1e100, 1.0, -1e100]), 1.0);
        assert_eq!(exact_sum([0.1; 10]), 1.0);
        assert_eq!(exact_sum(std::iter::empty()), 0.0);
    }

    #[test]
    fn half_way_rounds_to_even() {
        // 1 + 2^-53 + 2^-106 lies just above the midpoint.
        let v = exact_sum([1.0, 2f64.powi(-53), 2f64.powi(-106)]);
        assert_eq!(v, 1.0 + f64::EPSILON);
    }
}
