//! Shared oracles for the integration and acceptance tests.
#![allow(dead_code)]

use num_bigint::BigUint;
use twobridge::identities::binomial;
use twobridge::Rational;

/// `(c, TK, TG, avg, TK*, TG*, avg*)` with averages as `(num, den)`.
pub type Row = (u32, u64, u64, (i64, i64), u64, u64, (i64, i64));

/// Published values for `c = 3..=15`.
pub const PUBLISHED: [Row; 13] = [
    (3, 2, 2, (1, 1), 1, 1, (1, 1)),
    (4, 1, 1, (1, 1), 1, 1, (1, 1)),
    (5, 4, 6, (3, 2), 2, 3, (3, 2)),
    (6, 5, 8, (8, 5), 3, 5, (5, 3)),
    (7, 14, 26, (13, 7), 7, 13, (13, 7)),
    (8, 21, 44, (44, 21), 12, 25, (25, 12)),
    (9, 48, 114, (19, 8), 24, 57, (19, 8)),
    (10, 85, 220, (44, 17), 45, 117, (13, 5)),
    (11, 182, 518, (37, 13), 91, 259, (37, 13)),
    (12, 341, 1052, (1052, 341), 176, 543, (543, 176)),
    (13, 704, 2354, (107, 32), 352, 1177, (107, 32)),
    (14, 1365, 4892, (4892, 1365), 693, 2485, (355, 99)),
    (15, 2774, 10646, (5323, 1387), 1387, 5323, (5323, 1387)),
];

pub fn ratio((n, d): (i64, i64)) -> Rational {
    Rational::new(n, d)
}

fn b(n: i64, k: i64) -> BigUint {
    binomial(n, k)
}

/// Stratum count and genus sum for crossing number `c` and `l`, as the
/// unsimplified sums over the length parameter `m`.
pub fn stratum_by_summation(c: u32, l: i64) -> (BigUint, BigUint) {
    let k = (c / 2) as i64;
    let mut count = BigUint::from(0u32);
    let mut genus = BigUint::from(0u32);
    if c.is_multiple_of(2) {
        for m in (l + 1)..=((k + l) / 2) {
            let t = b(k + l - 1, 2 * l) * b(k - l - 1, 2 * m - 2 * l - 1);
            genus += &t * BigUint::from(m as u64);
            count += t;
        }
    } else {
        for m in (l + 1)..=((k + l + 1) / 2) {
            let mut t = b(k + l, 2 * l + 1) * b(k - l - 1, 2 * m - 2 * l - 2);
            if (k + l) % 2 == 1 {
                t += b((k + l - 1) / 2, l) * b((k - l - 1) / 2, m - l - 1);
            }
            genus += &t * BigUint::from(m as u64);
            count += t;
        }
    }
    (count, genus)
}
