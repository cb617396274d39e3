//! Plain-text digraph format: a header line `n m_arcs` followed by one
//! `u v` line per arc, 0-based and newline terminated.

use std::io::{BufRead, Write};

use super::Digraph;
use crate::{Error, Result};

impl Digraph {
    pub fn write_text<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{} {}", self.n(), self.arc_count())?;
        for (u, v) in self.arcs() {
            writeln!(w, "{u} {v}")?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_text(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("ascii")
    }

    /// Parses the text format. Errors carry the 1-based line number.
    pub fn read_text<R: BufRead>(r: R) -> Result<Digraph> {
        let mut lines = r.lines().enumerate();
        let parse_pair = |line_no: usize, line: &str| -> Result<(usize, usize)> {
            let mut it = line.split_whitespace();
            let bad = || Error::Parse { line: line_no, msg: format!("expected two integers, got {line:?}") };
            let a = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let b = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if it.next().is_some() {
                return Err(bad());
            }
            Ok((a, b))
        };

        let (n, m) = match lines.next() {
            Some((i, line)) => parse_pair(i + 1, &line?)?,
            None => return Err(Error::Parse { line: 1, msg: "missing header".into() }),
        };
        let mut arcs = Vec::with_capacity(m);
        let mut seen = std::collections::HashSet::with_capacity(m);
        for (i, line) in lines {
            let line = line?;
            let line_no = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            let (u, v) = parse_pair(line_no, &line)?;
            if u >= n || v >= n {
                return Err(Error::Parse { line: line_no, msg: format!("vertex out of range in arc {u} {v} (n = {n})") });
            }
            if u == v {
                return Err(Error::Parse { line: line_no, msg: format!("loop at vertex {u}") });
            }
            if !seen.insert((u, v)) {
                return Err(Error::Parse { line: line_no, msg: format!("duplicate arc {u} {v}") });
            }
            arcs.push((u, v));
        }
        if arcs.len() != m {
            return Err(Error::Parse { line: 1, msg: format!("header declares {m} arcs, found {}", arcs.len()) });
        }
        arcs.sort_unstable();
        Ok(Digraph::from_sorted_unique(n, &arcs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::sample_digraph;

    #[test]
    fn text_round_trip() {
        let d = sample_digraph(60, 0.05, 3).unwrap();
        let text = d.to_text();
        assert!(text.starts_with(&format!("60 {}\n", d.arc_count())));
        assert_eq!(Digraph::read_text(text.as_bytes()).unwrap(), d);
    }

    #[test]
    fn exact_layout() {
        let d = Digraph::from_arcs(3, [(1, 0), (0, 2)]).unwrap();
        assert_eq!(d.to_text(), "3 2\n0 2\n1 0\n");
    }

    #[test]
    fn line_numbered_errors() {
        let err = Digraph::read_text("3 2\n0 1\n1 1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = Digraph::read_text("3 3\n0 1\n1 2\n0 1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
        let err = Digraph::read_text("3 1\n0 x\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        assert!(Digraph::read_text("3 2\n0 1\n".as_bytes()).is_err());
    }
}
