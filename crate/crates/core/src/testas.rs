//! The TESTAS text format.
//!
//! Whitespace-separated tokens: the alphabet size `d`, the state count `n`,
//! then `n * d` cells in row-major order (row = state, column = letter). A
//! cell is a target state in `[0, n)` or a lone `;` for an undefined
//! transition.
//!
//! ```
//! use synchro::testas::{parse_testas, serialize_testas};
//!
//! let a = parse_testas("2 6 1 0 2 1 0 3 5 2 3 2 4 5").unwrap();
//! assert_eq!((a.d(), a.n()), (2, 6));
//! assert_eq!(a.target(3, 0), Some(5));
//! assert_eq!(serialize_testas(&a), "2 6 1 0 2 1 0 3 5 2 3 2 4 5");
//! ```

use crate::automaton::Automaton;
use crate::error::{Error, Result};

const EMPTY_CELL: &str = ";";

fn header_value(position: usize, token: &str) -> Result<i64> {
    token.parse::<i64>().map_err(|_| Error::MalformedToken {
        position,
        token: token.to_string(),
    })
}

pub fn parse_testas(text: &str) -> Result<Automaton> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.len() < 2 {
        return Err(Error::TokenCountMismatch {
            expected: 2,
            found: tokens.len(),
        });
    }
    let d = header_value(0, tokens[0])?;
    let n = header_value(1, tokens[1])?;
    if d < 1 || n < 1 {
        return Err(Error::NonPositiveHeader { d, n });
    }
    let (d, n) = (d as usize, n as usize);
    let cells = &tokens[2..];
    let expected = n.checked_mul(d).ok_or(Error::CapExceeded { cap: usize::MAX })?;
    if cells.len() != expected {
        return Err(Error::TokenCountMismatch {
            expected,
            found: cells.len(),
        });
    }
    let mut table = Vec::with_capacity(expected);
    for (i, &token) in cells.iter().enumerate() {
        if token == EMPTY_CELL {
            table.push(None);
            continue;
        }
        let target: usize = token.parse().map_err(|_| Error::MalformedToken {
            position: i + 2,
            token: token.to_string(),
        })?;
        if target >= n {
            return Err(Error::TargetOutOfRange {
                state: i / d,
                letter: i % d,
                target,
                n,
            });
        }
        table.push(Some(target));
    }
    Automaton::new(n, d, table)
}

/// Single-line, single-space serialization; the inverse of [`parse_testas`].
pub fn serialize_testas(a: &Automaton) -> String {
    let mut out = format!("{} {}", a.d(), a.n());
    for cell in a.cells() {
        out.push(' ');
        match cell {
            Some(t) => out.push_str(&t.to_string()),
            None => out.push_str(EMPTY_CELL),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SIX: &str = "2 6 1 0 2 1 0 3 5 2 3 2 4 5";

    #[test]
    fn six_state_example() {
        let a = parse_testas(SIX).unwrap();
        assert!(a.is_complete());
        assert_eq!(a.row(0), &[Some(1), Some(0)]);
        assert_eq!(a.row(3), &[Some(5), Some(2)]);
        assert_eq!(serialize_testas(&a), SIX);
    }

    #[test]
    fn smallest_automaton() {
        let a = parse_testas("1 1 0").unwrap();
        assert_eq!((a.n(), a.d(), a.target(0, 0)), (1, 1, Some(0)));
        assert_eq!(serialize_testas(&a), "1 1 0");
    }

    #[test]
    fn semicolons_mark_empty_cells() {
        let a = parse_testas("2 5 1 0 2 1 ; 3 4 ; 3 ;").unwrap();
        assert!(!a.is_complete());
        assert_eq!(a.target(2, 0), None);
        assert_eq!(a.target(3, 1), None);
        assert_eq!(a.target(4, 1), None);
        assert_eq!(serialize_testas(&a), "2 5 1 0 2 1 ; 3 4 ; 3 ;");
    }

    #[test]
    fn second_published_string_names_a_sixth_state() {
        // The literal string uses target 5 in a 5-state table.
        assert_eq!(
            parse_testas("2 5 1 0 2 1 ; 3 5 ; 3 ;"),
            Err(Error::TargetOutOfRange {
                state: 3,
                letter: 0,
                target: 5,
                n: 5
            })
        );
    }

    #[test]
    fn whitespace_variants() {
        let a = parse_testas("2\t6\n1 0\n2 1\n0 3\n5 2\n3 2\n4 5\n").unwrap();
        assert_eq!(serialize_testas(&a), SIX);
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_testas("2 2 0 1 1"),
            Err(Error::TokenCountMismatch {
                expected: 4,
                found: 3
            })
        );
        assert_eq!(
            parse_testas("1 1 0 0"),
            Err(Error::TokenCountMismatch {
                expected: 1,
                found: 2
            })
        );
        assert_eq!(
            parse_testas("0 3"),
            Err(Error::NonPositiveHeader { d: 0, n: 3 })
        );
        assert!(matches!(
            parse_testas("1 2 0 x"),
            Err(Error::MalformedToken { position: 3, .. })
        ));
        assert!(matches!(
            parse_testas("1 2 0 ;;"),
            Err(Error::MalformedToken { .. })
        ));
        assert!(matches!(
            parse_testas("1 2 0 -1"),
            Err(Error::MalformedToken { .. })
        ));
        assert!(matches!(
            parse_testas("1 2 0 2"),
            Err(Error::TargetOutOfRange { target: 2, .. })
        ));
        assert!(matches!(parse_testas(""), Err(Error::TokenCountMismatch { .. })));
    }

    fn any_automaton() -> impl Strategy<Value = Automaton> {
        (1usize..7, 1usize..4).prop_flat_map(|(n, d)| {
            prop::collection::vec(prop::option::of(0..n), n * d)
                .prop_map(move |cells| Automaton::new(n, d, cells).unwrap())
        })
    }

    proptest! {
        #[test]
        fn round_trip(a in any_automaton(), seps in prop::collection::vec(prop::sample::select(vec![" ", "  ", "\t", "\n", " \n "]), 64)) {
            let text = serialize_testas(&a);
            prop_assert_eq!(parse_testas(&text).unwrap(), a.clone());
            // Re-join with arbitrary whitespace; structure survives.
            let spaced: String = text
                .split(' ')
                .enumerate()
                .map(|(i, t)| format!("{}{}", seps[i % seps.len()], t))
                .collect();
            let b = parse_testas(&spaced).unwrap();
            prop_assert_eq!(serialize_testas(&b), text);
        }
    }
}
