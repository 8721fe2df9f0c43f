use serde::Serialize;

/// An upper bound on the Ramsey number `R(k, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RamseyBound {
    pub k: usize,
    pub m: usize,
    pub value: u64,
    /// `value` is the exact Ramsey number.
    pub exact: bool,
}

/// Known values `R(k, m)` with `3 <= k <= m`.
const TABLE: &[(usize, usize, u64)] = &[
    (3, 3, 6),
    (3, 4, 9),
    (3, 5, 14),
    (3, 6, 18),
    (3, 7, 23),
    (3, 8, 28),
    (3, 9, 36),
    (4, 4, 18),
    (4, 5, 25),
];

impl RamseyBound {
    /// Exact where known, otherwise `binomial(k + m - 2, k - 1)`.
    pub fn new(k: usize, m: usize) -> Self {
        let (a, b) = (k.min(m), k.max(m));
        let exact = match a {
            0 => Some(0),
            1 => Some(1),
            2 => Some(b as u64),
            _ => TABLE.iter().find(|&&(x, y, _)| x == a && y == b).map(|&(_, _, v)| v),
        };
        match exact {
            Some(value) => RamseyBound { k, m, value, exact: true },
            None => RamseyBound { k, m, value: binomial(k + m - 2, k - 1), exact: false },
        }
    }
}

/// Saturating binomial coefficient.
fn binomial(n: usize, r: usize) -> u64 {
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_and_small_cases() {
        assert_eq!(RamseyBound::new(3, 6), RamseyBound { k: 3, m: 6, value: 18, exact: true });
        assert_eq!(RamseyBound::new(6, 3).value, 18);
        assert_eq!(RamseyBound::new(2, 7).value, 7);
        assert_eq!(RamseyBound::new(1, 9).value, 1);
        let r = RamseyBound::new(5, 5);
        assert!(!r.exact);
        assert_eq!(r.value, 70);
    }

    #[test]
    fn formula_dominates_table() {
        for &(k, m, v) in TABLE {
            assert!(binomial(k + m - 2, k - 1) >= v);
        }
    }

    #[test]
    fn small_values_by_brute_force() {
        // R(3,3) = 6: C5 has neither triangle nor independent triple, and
        // every 2-colouring of K6 has a monochromatic triangle.
        let pairs: Vec<(usize, usize)> = (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).collect();
        for mask in 0u32..1 << pairs.len() {
            let red = |a: usize, b: usize| {
                let i = pairs.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
                mask >> i & 1 == 1
            };
            let mono = (0..6).any(|a| {
                (a + 1..6).any(|b| (b + 1..6).any(|c| red(a, b) == red(a, c) && red(a, b) == red(b, c)))
            });
            assert!(mono);
        }
        assert_eq!(RamseyBound::new(3, 3).value, 6);
    }
}
