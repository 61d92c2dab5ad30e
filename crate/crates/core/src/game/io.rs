//! Game file format.
//!
//! ```text
//! # comment
//! game <n_questions> <k_answers>
//! forbid <a> <b> <x> <y>
//! ```
//!
//! Tuples not listed are allowed; the synchronicity zeros `(a,b,x,x)`,
//! `a ≠ b`, are implicit. `forbid a a x x` removes a diagonal answer.

use std::fmt::Write as _;

use super::model::{RuleTuple, SynchronousGame, Violation};
use crate::format::{expect_arity, field, records, ParseError};

pub fn parse_game(text: &str) -> Result<SynchronousGame, ParseError> {
    let mut game: Option<SynchronousGame> = None;
    for (line, fields) in records(text) {
        match fields[0] {
            "game" => {
                expect_arity(line, &fields, 3)?;
                if game.is_some() {
                    return Err(ParseError::new(line, "duplicate `game` header"));
                }
                let n: usize = field(line, &fields, 1, "question count")?;
                let k: usize = field(line, &fields, 2, "answer count")?;
                if n == 0 || k == 0 {
                    return Err(ParseError::new(line, "question and answer counts must be positive"));
                }
                game = Some(SynchronousGame::new(n, k));
            }
            "forbid" => {
                expect_arity(line, &fields, 5)?;
                let g = game
                    .as_mut()
                    .ok_or_else(|| ParseError::new(line, "`forbid` before `game` header"))?;
                let t = RuleTuple::new(
                    field(line, &fields, 1, "answer a")?,
                    field(line, &fields, 2, "answer b")?,
                    field(line, &fields, 3, "question x")?,
                    field(line, &fields, 4, "question y")?,
                );
                let (n, k) = (g.n_questions(), g.k_answers());
                let in_range = |v: usize, hi: usize| (1..=hi).contains(&v);
                if !(in_range(t.a, k) && in_range(t.b, k) && in_range(t.x, n) && in_range(t.y, n)) {
                    return Err(ParseError::new(line, Violation::OutOfRange(t).to_string()));
                }
                g.forbid(t.a, t.b, t.x, t.y);
            }
            other => return Err(ParseError::new(line, format!("unknown directive `{other}`"))),
        }
    }
    game.ok_or_else(|| ParseError::new(0, "missing `game` header"))
}

/// Serializes `g`; forbidden tuples are written in lexicographic order and
/// the implicit synchronicity zeros are omitted.
pub fn write_game(g: &SynchronousGame) -> String {
    let mut out = format!("game {} {}\n", g.n_questions(), g.k_answers());
    for t in g.zero_tuples().filter(|t| t.x != t.y || t.a == t.b) {
        writeln!(out, "forbid {} {} {} {}", t.a, t.b, t.x, t.y).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::fixtures::{fixture_magic_square, fixture_tiny_unsat};
    use proptest::prelude::*;

    #[test]
    fn parses_with_comments() {
        let text = "# tiny\ngame 2 2\nforbid 1 1 1 2  # same colour\n\nforbid 2 2 2 2\n";
        let g = parse_game(text).unwrap();
        assert!(!g.rule(1, 1, 1, 2));
        assert!(!g.rule(2, 2, 2, 2));
        assert!(g.rule(1, 2, 1, 2));
        assert!(!g.rule(1, 2, 1, 1));
    }

    #[test]
    fn rejects_out_of_range_and_garbage() {
        let e = parse_game("game 2 2\nforbid 1 3 1 2\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("out of range"));
        assert!(parse_game("forbid 1 1 1 2\n").is_err());
        assert!(parse_game("game 2\n").is_err());
        assert!(parse_game("game 2 2\nallow 1 1 1 1\n").is_err());
        assert!(parse_game("").is_err());
        assert!(parse_game("game 0 2\n").is_err());
    }

    #[test]
    fn writer_is_sorted_and_stable() {
        let text = write_game(&fixture_tiny_unsat());
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "game 2 3");
        assert_eq!(lines[1], "forbid 1 1 1 2");
        assert_eq!(lines.len(), 10);
        let mut sorted = lines[1..].to_vec();
        sorted.sort_by_key(|l| {
            l.split_whitespace()
                .skip(1)
                .map(|v| v.parse::<usize>().unwrap())
                .collect::<Vec<_>>()
        });
        assert_eq!(sorted, lines[1..]);
        assert_eq!(write_game(&parse_game(&text).unwrap()), text);
    }

    #[test]
    fn magic_square_round_trips() {
        let g = fixture_magic_square();
        assert_eq!(parse_game(&write_game(&g)).unwrap(), g);
    }

    fn arb_game() -> impl Strategy<Value = SynchronousGame> {
        (1usize..4, 1usize..4).prop_flat_map(|(n, k)| {
            proptest::collection::vec(any::<bool>(), n * n * k * k).prop_map(move |bits| {
                let mut i = 0;
                SynchronousGame::from_fn(n, k, |a, b, x, y| {
                    i += 1;
                    if x == y && a != b {
                        false
                    } else {
                        bits[i - 1]
                    }
                })
            })
        })
    }

    proptest! {
        #[test]
        fn round_trip(g in arb_game()) {
            prop_assert_eq!(parse_game(&write_game(&g)).unwrap(), g);
        }
    }
}
