//! Linear-scan reference answers for access, rank and select.
//!
//! Positions are 1-based, as in the query API.

use crate::error::{Error, Result};

pub fn naive_access(text: &[u8], i: u64) -> Result<u8> {
    let n = text.len() as u64;
    if i == 0 || i > n {
        return Err(Error::OutOfBounds {
            pos: i,
            min: 1,
            max: n,
        });
    }
    Ok(text[(i - 1) as usize])
}

/// Occurrences of `c` in the first `i` characters.
pub fn naive_rank(text: &[u8], c: u8, i: u64) -> Result<u64> {
    let n = text.len() as u64;
    if i > n {
        return Err(Error::OutOfBounds {
            pos: i,
            min: 0,
            max: n,
        });
    }
    Ok(text[..i as usize].iter().filter(|&&b| b == c).count() as u64)
}

/// Position of the `j`-th occurrence of `c`.
pub fn naive_select(text: &[u8], c: u8, j: u64) -> Result<u64> {
    if j == 0 {
        return Err(Error::OutOfBounds {
            pos: 0,
            min: 1,
            max: u64::MAX,
        });
    }
    text.iter()
        .enumerate()
        .filter(|&(_, &b)| b == c)
        .nth((j - 1) as usize)
        .map(|(p, _)| p as u64 + 1)
        .ok_or(Error::NotFound {
            symbol: c,
            occurrence: j,
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const FIG: &[u8] = b"abrainadrain";

    #[test]
    fn access_examples() {
        assert_eq!(naive_access(FIG, 1).unwrap(), b'a');
        assert_eq!(naive_access(FIG, 12).unwrap(), b'n');
        assert_eq!(naive_access(FIG, 4).unwrap(), b'a');
        assert!(matches!(
            naive_access(FIG, 0),
            Err(Error::OutOfBounds { .. })
        ));
        assert!(matches!(
            naive_access(FIG, 13),
            Err(Error::OutOfBounds { .. })
        ));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(naive_rank(FIG, b'a', 12).unwrap(), 4);
        assert_eq!(naive_rank(FIG, b'q', 0).unwrap(), 0);
        assert_eq!(naive_rank(b"aaaa", b'a', 3).unwrap(), 3);
        assert!(matches!(
            naive_rank(FIG, b'a', 13),
            Err(Error::OutOfBounds { .. })
        ));
    }

    #[test]
    fn select_examples() {
        assert_eq!(naive_select(FIG, b'r', 2).unwrap(), 9);
        assert_eq!(naive_select(b"aaaa", b'a', 4).unwrap(), 4);
        assert!(matches!(
            naive_select(FIG, b'z', 1),
            Err(Error::NotFound { .. })
        ));
        assert!(matches!(
            naive_select(FIG, b'a', 5),
            Err(Error::NotFound { .. })
        ));
    }

    proptest! {
        #[test]
        fn rank_is_monotone_by_steps_of_one(text in proptest::collection::vec(0u8..4, 1..200), c in 0u8..4) {
            for i in 0..text.len() as u64 {
                let a = naive_rank(&text, c, i).unwrap();
                let b = naive_rank(&text, c, i + 1).unwrap();
                prop_assert!(a <= b && b <= a + 1);
            }
        }

        #[test]
        fn rank_select_duality(text in proptest::collection::vec(0u8..4, 1..200), c in 0u8..4) {
            let total = naive_rank(&text, c, text.len() as u64).unwrap();
            for j in 1..=total {
                let p = naive_select(&text, c, j).unwrap();
                prop_assert_eq!(naive_rank(&text, c, p).unwrap(), j);
            }
            for p in 1..=text.len() as u64 {
                let r = naive_rank(&text, c, p).unwrap();
                if r > 0 {
                    prop_assert!(naive_select(&text, c, r).unwrap() <= p);
                }
            }
            prop_assert!(naive_select(&text, c, total + 1).is_err());
        }
    }
}
