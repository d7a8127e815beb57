//! The generator text format shared by the library and the CLI.
//!
//! A group file is a `degree: n` header followed by one generator per line
//! in disjoint-cycle notation over 0-based points:
//!
//! ```text
//! degree: 4
//! (0 1 2 3)
//! (0 1)
//! ```
//!
//! The identity is written `()`. Blank lines are ignored. The parser is
//! meant for untrusted input: degrees are capped and every line is
//! validated as a bijection.

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Upper bound on accepted degrees; the library targets small degrees and
/// this keeps hostile headers from forcing huge allocations.
pub const MAX_DEGREE: usize = 4096;

/// Parses a group file into its degree and generator list.
pub fn parse_group_file(text: &str) -> Result<(usize, Vec<Perm>)> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        match degree {
            None => {
                let rest = line.strip_prefix("degree:").ok_or(Error::Parse {
                    line: lineno,
                    msg: "expected 'degree: n' header".into(),
                })?;
                let n: usize = rest.trim().parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("invalid degree {:?}", rest.trim()),
                })?;
                if n == 0 || n > MAX_DEGREE {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("degree must be in 1..={MAX_DEGREE}"),
                    });
                }
                degree = Some(n);
            }
            Some(n) => {
                let p = Perm::parse_cycles(n, line).map_err(|e| Error::Parse {
                    line: lineno,
                    msg: e.to_string(),
                })?;
                gens.push(p);
            }
        }
    }
    match degree {
        Some(n) => Ok((n, gens)),
        None => Err(Error::Parse {
            line: 1,
            msg: "empty input; expected 'degree: n' header".into(),
        }),
    }
}

/// Serializes a degree and generators back to the text format. Parsing the
/// result reproduces the same generators.
pub fn format_group_file(degree: usize, gens: &[Perm]) -> String {
    let mut out = format!("degree: {degree}\n");
    for g in gens {
        out.push_str(&g.cycle_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_a_simple_file() {
        let (n, gens) = parse_group_file("degree: 4\n(0 1 2 3)\n(0 1)\n").unwrap();
        assert_eq!(n, 4);
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0].cycle_string(), "(0 1 2 3)");
    }

    #[test]
    fn identity_line_and_blanks() {
        let (n, gens) = parse_group_file("degree: 5\n\n()\n(0 1)\n").unwrap();
        assert_eq!(n, 5);
        assert!(gens[0].is_identity());
        assert_eq!(gens.len(), 2);
    }

    #[test]
    fn reports_the_offending_line() {
        let err = parse_group_file("degree: 3\n(0 1)\n(0 1)(1 2)\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other}"),
        }
        assert!(parse_group_file("degree: 0\n").is_err());
        assert!(parse_group_file("degree: 99999999\n").is_err());
        assert!(parse_group_file("(0 1)\n").is_err());
        assert!(parse_group_file("").is_err());
        assert!(parse_group_file("degree: 3\n(0 5)\n").is_err());
    }

    proptest! {
        #[test]
        fn round_trip(seed in 0u64..4000, count in 1usize..4) {
            let mut state = seed;
            let mut next = |m: usize| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) % m as u64) as usize
            };
            let degree = 2 + next(10);
            let mut gens = Vec::new();
            for _ in 0..count {
                let mut v: Vec<usize> = (0..degree).collect();
                for i in (1..degree).rev() {
                    let j = next(i + 1);
                    v.swap(i, j);
                }
                gens.push(Perm::from_images(&v).unwrap());
            }
            let text = format_group_file(degree, &gens);
            let (n2, gens2) = parse_group_file(&text).unwrap();
            prop_assert_eq!(degree, n2);
            prop_assert_eq!(gens, gens2);
        }
    }
}
