//! Integer-set syntax for sweep grids: `3`, `2-5`, `2..5`, and comma lists
//! such as `2,3,4,7-9`. Ranges are inclusive.

use crate::error::{Error, Result};

/// Most values a single set may expand to.
pub const MAX_SET_SIZE: u64 = 10_000;

/// Parses an integer set into ascending, deduplicated values.
pub fn parse_int_set(s: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err(Error::Parse(format!("empty item in {s:?}")));
        }
        let (lo, hi) = if let Some((a, b)) = part.split_once("..") {
            (parse_one(a)?, parse_one(b)?)
        } else if let Some((a, b)) = part.split_once('-') {
            (parse_one(a)?, parse_one(b)?)
        } else {
            let v = parse_one(part)?;
            (v, v)
        };
        if lo > hi {
            return Err(Error::Parse(format!("empty range {part:?}")));
        }
        if hi - lo >= MAX_SET_SIZE || out.len() as u64 + (hi - lo) >= MAX_SET_SIZE {
            return Err(Error::Parse(format!(
                "set {s:?} has more than {MAX_SET_SIZE} values"
            )));
        }
        out.extend(lo..=hi);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_one(s: &str) -> Result<u64> {
    let s = s.trim();
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("not a nonnegative integer: {s:?}")));
    }
    s.parse()
        .map_err(|_| Error::Parse(format!("integer out of range: {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(parse_int_set("3").unwrap(), vec![3]);
        assert_eq!(parse_int_set("2-4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_int_set("2..4, 9,3").unwrap(), vec![2, 3, 4, 9]);
        assert_eq!(parse_int_set("2,3,4,5,7,8,9,11").unwrap().len(), 8);
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", ",", "a", "3-", "-3", "5-2", "1..", "1-2-3", "0-99999", "+1", "99999999999999999999"] {
            assert!(parse_int_set(bad).is_err(), "{bad:?}");
        }
    }

    proptest! {
        #[test]
        fn listed_values_roundtrip(v in proptest::collection::vec(0u64..1000, 1..20)) {
            let s = v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            let mut expect = v.clone();
            expect.sort_unstable();
            expect.dedup();
            prop_assert_eq!(parse_int_set(&s).unwrap(), expect);
        }

        #[test]
        fn never_panics(s in ".{0,30}") {
            let _ = parse_int_set(&s);
        }
    }
}
