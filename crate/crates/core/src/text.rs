//! Text grammar for antichains, shared by the CLI and test fixtures:
//!
//! ```text
//! antichain := "{" [ set ( "," set )* ] "}"
//! set       := "{" [ int ( "," int )* ] "}"
//! ```
//!
//! `⊥` is written `{}`, the antichain `{∅}` is `{{}}`. Whitespace is ignored;
//! elements are `1..n`. By default non-antichain input is rejected; with
//! `normalize` set the max-operator is applied instead.

use crate::error::{Error, Result};
use crate::lattice::{Antichain, SubsetMask, Universe};
use std::fmt;

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<()> {
        match self.peek() {
            Some(c) if c == ch => {
                self.pos += 1;
                Ok(())
            }
            other => Err(Error::Parse {
                pos: self.pos,
                msg: format!(
                    "expected '{}', found {}",
                    ch as char,
                    other.map_or("end of input".to_string(), |c| format!("'{}'", c as char))
                ),
            }),
        }
    }

    fn integer(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Parse { pos: self.pos, msg: "expected an element label".into() });
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse::<u32>()
            .map_err(|e| Error::Parse { pos: start, msg: e.to_string() })
    }

    fn set(&mut self, n: u32) -> Result<SubsetMask> {
        self.expect(b'{')?;
        let mut mask = SubsetMask::EMPTY;
        if self.peek() != Some(b'}') {
            loop {
                let start = self.pos;
                let e = self.integer()?;
                if e < 1 || e > n {
                    return Err(Error::Parse {
                        pos: start,
                        msg: format!("element {e} out of range 1..={n}"),
                    });
                }
                mask = mask.union(&SubsetMask::from_elements([e]));
                if self.peek() == Some(b',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(b'}')?;
        Ok(mask)
    }
}

/// Parse an antichain over universe `u`.
pub fn parse_antichain(u: Universe, input: &str, normalize: bool) -> Result<Antichain> {
    let mut p = Parser { bytes: input.as_bytes(), pos: 0 };
    p.expect(b'{')?;
    let mut masks: Vec<SubsetMask> = Vec::new();
    if p.peek() != Some(b'}') {
        loop {
            masks.push(p.set(u.n())?);
            if p.peek() == Some(b',') {
                p.pos += 1;
            } else {
                break;
            }
        }
    }
    p.expect(b'}')?;
    if p.peek().is_some() {
        return Err(Error::Parse { pos: p.pos, msg: "trailing input".into() });
    }
    if normalize {
        Antichain::normalize(u, masks)
    } else {
        Antichain::from_sets(u, masks)
    }
}

/// Grammar-conforming rendering; members in increasing mask order.
pub fn format_antichain(a: &Antichain) -> String {
    let mut out = String::from("{");
    for (i, s) in a.sets().iter().rev().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push('{');
        for (j, e) in s.elements().enumerate() {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&e.to_string());
        }
        out.push('}');
    }
    out.push('}');
    out
}

impl fmt::Display for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_antichain(self))
    }
}
