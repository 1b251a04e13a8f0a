//! Tokenizing signed sums such as `-(12131) + 2*(121)` or `[x|y] - [y|x]`.

use crate::error::{Error, Result};

/// Splits a formal sum into `(coefficient, term text)` pairs. Signs and
/// `c*` prefixes are read at bracket depth zero only.
pub fn split_sum(s: &str) -> Result<Vec<(i64, String)>> {
    let s = s.trim();
    if s == "0" {
        return Ok(Vec::new());
    }
    let mut pieces: Vec<(i64, String)> = Vec::new();
    let mut depth = 0i32;
    let mut sign = 1i64;
    let mut cur = String::new();
    let flush = |sign: i64, cur: &mut String, pieces: &mut Vec<(i64, String)>| -> Result<()> {
        let t = cur.trim();
        if t.is_empty() {
            return Err(Error::Parse(s.to_string()));
        }
        let (c, body) = match t.split_once('*') {
            Some((c, body)) if c.trim().chars().all(|ch| ch.is_ascii_digit()) => (
                c.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(s.to_string()))?,
                body.trim(),
            ),
            _ => (1, t),
        };
        pieces.push((sign * c, body.to_string()));
        cur.clear();
        Ok(())
    };
    for ch in s.chars() {
        match ch {
            '(' | '[' => {
                depth += 1;
                cur.push(ch);
            }
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(s.to_string()));
                }
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if !cur.trim().is_empty() {
                    flush(sign, &mut cur, &mut pieces)?;
                    sign = 1;
                }
                if ch == '-' {
                    sign = -sign;
                }
            }
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return Err(Error::Parse(s.to_string()));
    }
    flush(sign, &mut cur, &mut pieces)?;
    Ok(pieces)
}

/// Splits `text` at top-level occurrences of `sep` (outside brackets).
pub fn split_top(text: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if ch == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    out.push(cur);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums() {
        let v = split_sum("-(12131) + 2*(121)").unwrap();
        assert_eq!(v, vec![(-1, "(12131)".into()), (2, "(121)".into())]);
        let v = split_sum("[x|y]+[y|x]-[(121)(x,y)]").unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v[2].0, -1);
        assert!(split_sum("(12").is_err());
        assert_eq!(split_sum("0").unwrap(), vec![]);
    }

    #[test]
    fn top_level_split() {
        assert_eq!(split_top("x|(12)(a,b)|y", '|'), vec!["x", "(12)(a,b)", "y"]);
        assert_eq!(split_top("a,(1 2)(b,c)", ','), vec!["a", "(1 2)(b,c)"]);
    }
}
