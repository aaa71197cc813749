//! Line-oriented input grammar:
//!
//! ```text
//! # comment
//! name=V8 rank=4 n=1,1,1,1,2,2 m=4,4
//! rank = 3  n = 1, 1, 2, 2, 2  m = 3, 5   # name is optional
//! ```
//!
//! Whitespace around `=` and `,` is ignored. `name` must come first when present.

use crate::error::{Error, Result};
use crate::twist::TwistSum;

use super::table::TableEntry;

struct Scanner<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str, line: usize) -> Self {
        Scanner {
            src: src.as_bytes(),
            pos: 0,
            line,
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::parse(self.line, self.pos + 1, message)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\r')) {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }

    fn word(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_alphanumeric() || b == b'_' || b == b'-' || b == b'.')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a key or name"));
        }
        // Only ASCII bytes were consumed.
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() != Some(byte) {
            return Err(self.err(format!("expected '{}'", byte as char)));
        }
        self.pos += 1;
        self.skip_ws();
        Ok(())
    }

    fn starts_int(&self) -> bool {
        match self.peek() {
            Some(b) if b.is_ascii_digit() => true,
            Some(b'-' | b'+') => self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit),
            _ => false,
        }
    }

    fn int(&mut self) -> Result<i64> {
        if !self.starts_int() {
            return Err(self.err("expected an integer"));
        }
        let start = self.pos;
        if matches!(self.peek(), Some(b'-' | b'+')) {
            self.pos += 1;
        }
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse()
            .map_err(|_| Error::parse(self.line, start + 1, "integer out of range"))
    }

    fn int_list(&mut self) -> Result<Vec<i64>> {
        let mut out = Vec::new();
        if !self.starts_int() {
            if self.peek() == Some(b',') {
                return Err(self.err("expected an integer"));
            }
            return Ok(out);
        }
        out.push(self.int()?);
        loop {
            let save = self.pos;
            self.skip_ws();
            if self.peek() == Some(b',') {
                self.pos += 1;
                self.skip_ws();
                out.push(self.int()?);
            } else {
                self.pos = save;
                return Ok(out);
            }
        }
    }
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(head, _)| head)
}

fn parse_line(text: &str, line: usize, default_name: &str) -> Result<TableEntry> {
    let mut sc = Scanner::new(text, line);
    let mut name: Option<String> = None;
    let mut rank: Option<i64> = None;
    let mut n: Option<Vec<i64>> = None;
    let mut m: Option<Vec<i64>> = None;

    let mut first = true;
    while !sc.at_end() {
        let key_pos = sc.pos;
        let key = sc.word()?;
        sc.expect(b'=')?;
        let duplicate = || Error::parse(line, key_pos + 1, format!("duplicate key '{key}'"));
        match key {
            "name" if first => name = Some(sc.word()?.to_string()),
            "name" => return Err(Error::parse(line, key_pos + 1, "'name' must come first")),
            "rank" if rank.is_some() => return Err(duplicate()),
            "rank" => rank = Some(sc.int()?),
            "n" if n.is_some() => return Err(duplicate()),
            "n" => n = Some(sc.int_list()?),
            "m" if m.is_some() => return Err(duplicate()),
            "m" => m = Some(sc.int_list()?),
            other => {
                return Err(Error::parse(
                    line,
                    key_pos + 1,
                    format!("unknown key '{other}'"),
                ))
            }
        }
        first = false;
        if !matches!(sc.peek(), None | Some(b' ' | b'\t' | b'\r')) {
            return Err(sc.err("expected whitespace between fields"));
        }
    }

    let end = sc.pos + 1;
    let missing = |k: &str| Error::parse(line, end, format!("missing '{k}='"));
    let rank = rank.ok_or_else(|| missing("rank"))?;
    let n = n.ok_or_else(|| missing("n"))?;
    let m = m.ok_or_else(|| missing("m"))?;
    let name = name.unwrap_or_else(|| default_name.to_string());
    TableEntry::new(
        name,
        rank,
        TwistSum::from_twists(n)?,
        TwistSum::from_twists(m)?,
    )
}

/// Parses a single entry. A missing `name` defaults to `input`.
pub fn parse_entry(text: &str) -> Result<TableEntry> {
    parse_line(strip_comment(text.trim_end_matches('\n')), 1, "input")
}

/// Parses one entry per nonblank line; unnamed entries are called `line<N>`.
pub fn parse_entries(text: &str) -> Result<Vec<TableEntry>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        out.push(parse_line(body, i + 1, &format!("line{}", i + 1))?);
    }
    Ok(out)
}

fn csv(sum: &TwistSum) -> String {
    sum.expanded()
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Writes an entry back in the input grammar.
pub fn render_entry(e: &TableEntry) -> String {
    format!(
        "name={} rank={} n={} m={}",
        e.name(),
        e.rank(),
        csv(e.n_twists()),
        csv(e.m_twists())
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::table::builtin_entry;

    #[test]
    fn parses_v8_and_v4() {
        let v8 = parse_entry("rank=4 n=1,1,1,1,2,2 m=4,4").unwrap();
        let reference = builtin_entry("V8").unwrap();
        assert_eq!(v8.n_twists(), reference.n_twists());
        assert_eq!(v8.m_twists(), reference.m_twists());
        assert_eq!(v8.rank(), 4);
        assert_eq!(v8.name(), "input");

        let v4 = parse_entry("rank=3 n=1,1,2,2,2 m=3,5").unwrap();
        let reference = builtin_entry("V4").unwrap();
        assert_eq!(v4.n_twists(), reference.n_twists());
        assert_eq!(v4.m_twists(), reference.m_twists());
    }

    #[test]
    fn whitespace_and_comments() {
        let e =
            parse_entry("  name = V8 rank = 4  n = 1 , 1,1, 1,2 ,2 m= 4,4  # the example").unwrap();
        assert_eq!(e.name(), "V8");
        assert_eq!(e, builtin_entry("V8").unwrap());
    }

    #[test]
    fn rank_mismatch_is_validation_error() {
        let err = parse_entry("rank=5 n=1,1 m=3").unwrap_err();
        assert!(matches!(err, Error::Validation(_)), "{err:?}");
        assert!(err.to_string().contains("2 - 1 != 5"), "{err}");
    }

    #[test]
    fn ordering_violation_names_the_pair() {
        let err = parse_entry("rank=1 n=1,6 m=5").unwrap_err();
        assert!(
            err.to_string().contains("n twist 6 exceeds m twist 5"),
            "{err}"
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_entry("rank=4 n=1,,2 m=4").unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (1, 12)),
            other => panic!("{other:?}"),
        }
        match parse_entry("rank=4 q=1 m=4").unwrap_err() {
            Error::Parse {
                column, message, ..
            } => {
                assert_eq!(column, 8);
                assert!(message.contains("unknown key"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_entry("rank 4 n=1 m="),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_entry("rank=4 n=1"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_entry("rank=4 rank=4 n=1 m=2"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_entry("rank=x n=1 m=2"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_entry("rank=99999999999999999999 n=1 m=2"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_entry("rank=1 name=a n=1 m="),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn empty_m_is_allowed() {
        let e = parse_entry("rank=2 n=0,0 m=").unwrap();
        assert!(e.m_twists().is_empty());
        assert_eq!(render_entry(&e), "name=input rank=2 n=0,0 m=");
        assert_eq!(parse_entry(&render_entry(&e)).unwrap(), e);
    }

    #[test]
    fn multi_line_input() {
        let text =
            "# two entries\nrank=4 n=1,1,1,1,1 m=5\n\n  \nname=W rank=3 n=1,1,1,3,3 m=4,5 # V5\n";
        let entries = parse_entries(text).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].name(), "line2");
        assert_eq!(entries[1].name(), "W");
        match parse_entries("rank=4 n=1,1,1,1,1 m=5\nrank=4 n=1 m=?\n").unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn render_v8() {
        assert_eq!(
            render_entry(&builtin_entry("V8").unwrap()),
            "name=V8 rank=4 n=1,1,1,1,2,2 m=4,4"
        );
    }
}
