//! Query specifications: `access:i`, `rank:c:i`, `select:c:j`.
//!
//! Symbols are a single byte or a `\xNN` escape, so `rank:::3` asks for the
//! colons among the first three characters.

use blocktree::{BlockTree, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Query {
    Access(u64),
    Rank(u8, u64),
    Select(u8, u64),
}

/// Reads one symbol from the start of `bytes`, returning it and the number
/// of bytes consumed.
pub fn parse_symbol_prefix(bytes: &[u8]) -> Result<(u8, usize), String> {
    match bytes {
        [] => Err("missing symbol".into()),
        [b'\\', b'x', hi, lo, ..] => {
            let hex = std::str::from_utf8(&[*hi, *lo])
                .map_err(|e| e.to_string())?
                .to_owned();
            let b = u8::from_str_radix(&hex, 16).map_err(|_| format!("bad escape \\x{hex}"))?;
            Ok((b, 4))
        }
        [b, ..] if b.is_ascii() => Ok((*b, 1)),
        _ => Err("symbols must be ASCII or \\xNN escapes".into()),
    }
}

/// Printable form of a byte, the inverse of [`parse_symbol_prefix`].
pub fn format_symbol(b: u8) -> String {
    if b.is_ascii_graphic() {
        (b as char).to_string()
    } else {
        format!("\\x{b:02x}")
    }
}

fn parse_number(s: &str) -> Result<u64, String> {
    s.parse().map_err(|_| format!("not a number: {s:?}"))
}

pub fn parse_query(spec: &str) -> Result<Query, String> {
    let spec = spec.trim();
    let with_symbol = |rest: &str| -> Result<(u8, u64), String> {
        let (c, used) = parse_symbol_prefix(rest.as_bytes())?;
        let tail = rest[used..]
            .strip_prefix(':')
            .ok_or_else(|| format!("expected ':' after symbol in {spec:?}"))?;
        Ok((c, parse_number(tail)?))
    };
    if let Some(rest) = spec.strip_prefix("access:") {
        Ok(Query::Access(parse_number(rest)?))
    } else if let Some(rest) = spec.strip_prefix("rank:") {
        let (c, i) = with_symbol(rest)?;
        Ok(Query::Rank(c, i))
    } else if let Some(rest) = spec.strip_prefix("select:") {
        let (c, j) = with_symbol(rest)?;
        Ok(Query::Select(c, j))
    } else {
        Err(format!(
            "unknown query {spec:?}; expected access:i, rank:c:i or select:c:j"
        ))
    }
}

pub fn answer(tree: &BlockTree, q: Query) -> Result<String> {
    Ok(match q {
        Query::Access(i) => format_symbol(tree.access(i)?),
        Query::Rank(c, i) => tree.rank(c, i)?.to_string(),
        Query::Select(c, j) => tree.select(c, j)?.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_query("access:10"), Ok(Query::Access(10)));
        assert_eq!(parse_query("rank:a:0"), Ok(Query::Rank(b'a', 0)));
        assert_eq!(parse_query(" select:r:2\n"), Ok(Query::Select(b'r', 2)));
        assert_eq!(parse_query("rank:::3"), Ok(Query::Rank(b':', 3)));
        assert_eq!(parse_query("rank:\\x0a:3"), Ok(Query::Rank(b'\n', 3)));
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "",
            "access",
            "access:x",
            "rank:a",
            "rank:ab:1",
            "select::",
            "count:a:1",
            "rank:\\xzz:1",
        ] {
            assert!(parse_query(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn symbols_round_trip() {
        for b in 0..128u8 {
            let s = format_symbol(b);
            assert_eq!(parse_symbol_prefix(s.as_bytes()), Ok((b, s.len())));
        }
    }
}
