use std::fmt;
use std::str::FromStr;

/// The three vertices of the base triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseVertex {
    A,
    B,
    C,
}

impl BaseVertex {
    pub const ALL: [BaseVertex; 3] = [BaseVertex::A, BaseVertex::B, BaseVertex::C];

    /// The color a canonical 3-coloring gives this vertex: `A ↦ 1, B ↦ 2, C ↦ 3`.
    pub fn canonical_color(self) -> usize {
        match self {
            BaseVertex::A => 1,
            BaseVertex::B => 2,
            BaseVertex::C => 3,
        }
    }
}

/// Structured vertex names. Gadget indices are 1-based.
///
/// The derived order (variant first, then fields in declaration order) picks
/// the representative when several labels are identified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexLabel {
    Base(BaseVertex),
    /// `v(i,j,α,x)`: cell `(i,j)` of the rook copy `R_{α,x}`.
    Rook {
        i: usize,
        j: usize,
        alpha: usize,
        x: usize,
    },
    /// `t(t,α,x)`: an extra vertex of the prism `T_{α,x}`.
    Prism { t: usize, alpha: usize, x: usize },
    /// `q(i,j,a,b,x,y)`: cell `(i,j)` of the orthogonality rook `Q_{a,b,x,y}`.
    QRook {
        i: usize,
        j: usize,
        a: usize,
        b: usize,
        x: usize,
        y: usize,
    },
    /// An ordinary vertex, numbered from 1.
    Plain(usize),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VertexLabel::Base(v) => write!(f, "BASE:{v:?}"),
            VertexLabel::Rook { i, j, alpha, x } => write!(f, "R:i={i},j={j},alpha={alpha},x={x}"),
            VertexLabel::Prism { t, alpha, x } => write!(f, "T:t={t},alpha={alpha},x={x}"),
            VertexLabel::QRook { i, j, a, b, x, y } => {
                write!(f, "Q:i={i},j={j},a={a},b={b},x={x},y={y}")
            }
            VertexLabel::Plain(v) => write!(f, "V:{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelParseError(pub String);

impl fmt::Display for LabelParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bad vertex label {:?}", self.0)
    }
}

impl std::error::Error for LabelParseError {}

fn keyed(body: &str, keys: &[&str]) -> Option<Vec<usize>> {
    let parts: Vec<&str> = body.split(',').collect();
    if parts.len() != keys.len() {
        return None;
    }
    parts
        .iter()
        .zip(keys)
        .map(|(p, k)| p.strip_prefix(k)?.strip_prefix('=')?.parse().ok())
        .collect()
}

impl FromStr for VertexLabel {
    type Err = LabelParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || LabelParseError(s.to_string());
        let (tag, body) = s.split_once(':').ok_or_else(err)?;
        let label = match tag {
            "BASE" => VertexLabel::Base(match body {
                "A" => BaseVertex::A,
                "B" => BaseVertex::B,
                "C" => BaseVertex::C,
                _ => return Err(err()),
            }),
            "R" => {
                let v = keyed(body, &["i", "j", "alpha", "x"]).ok_or_else(err)?;
                VertexLabel::Rook {
                    i: v[0],
                    j: v[1],
                    alpha: v[2],
                    x: v[3],
                }
            }
            "T" => {
                let v = keyed(body, &["t", "alpha", "x"]).ok_or_else(err)?;
                VertexLabel::Prism {
                    t: v[0],
                    alpha: v[1],
                    x: v[2],
                }
            }
            "Q" => {
                let v = keyed(body, &["i", "j", "a", "b", "x", "y"]).ok_or_else(err)?;
                VertexLabel::QRook {
                    i: v[0],
                    j: v[1],
                    a: v[2],
                    b: v[3],
                    x: v[4],
                    y: v[5],
                }
            }
            "V" => VertexLabel::Plain(body.parse().map_err(|_| err())?),
            _ => return Err(err()),
        };
        Ok(label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn grammar_examples() {
        let r = VertexLabel::Rook {
            i: 3,
            j: 2,
            alpha: 1,
            x: 4,
        };
        assert_eq!(r.to_string(), "R:i=3,j=2,alpha=1,x=4");
        let q = VertexLabel::QRook {
            i: 1,
            j: 3,
            a: 2,
            b: 2,
            x: 1,
            y: 2,
        };
        assert_eq!(q.to_string(), "Q:i=1,j=3,a=2,b=2,x=1,y=2");
        let t = VertexLabel::Prism { t: 1, alpha: 2, x: 3 };
        assert_eq!(t.to_string(), "T:t=1,alpha=2,x=3");
        assert_eq!(VertexLabel::Base(BaseVertex::A).to_string(), "BASE:A");
        assert_eq!("R:i=3,j=2,alpha=1,x=4".parse::<VertexLabel>().unwrap(), r);
        assert!("R:i=3,j=2,x=4".parse::<VertexLabel>().is_err());
        assert!("BASE:D".parse::<VertexLabel>().is_err());
        assert!("nonsense".parse::<VertexLabel>().is_err());
    }

    #[test]
    fn base_vertices_sort_first() {
        let b = VertexLabel::Base(BaseVertex::C);
        let r = VertexLabel::Rook {
            i: 1,
            j: 1,
            alpha: 1,
            x: 1,
        };
        assert!(b < r);
        let r2 = VertexLabel::Rook {
            i: 3,
            j: 2,
            alpha: 1,
            x: 1,
        };
        let r3 = VertexLabel::Rook {
            i: 1,
            j: 1,
            alpha: 2,
            x: 1,
        };
        assert!(r3 < r2);
    }

    fn arb_label() -> impl Strategy<Value = VertexLabel> {
        let s = 1usize..20;
        prop_oneof![
            prop::sample::select(BaseVertex::ALL.to_vec()).prop_map(VertexLabel::Base),
            (s.clone(), s.clone(), s.clone(), s.clone())
                .prop_map(|(i, j, alpha, x)| VertexLabel::Rook { i, j, alpha, x }),
            (s.clone(), s.clone(), s.clone()).prop_map(|(t, alpha, x)| VertexLabel::Prism {
                t,
                alpha,
                x
            }),
            (s.clone(), s.clone(), s.clone(), s.clone(), s.clone(), s.clone())
                .prop_map(|(i, j, a, b, x, y)| VertexLabel::QRook { i, j, a, b, x, y }),
            s.prop_map(VertexLabel::Plain),
        ]
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(l in arb_label()) {
            prop_assert_eq!(l.to_string().parse::<VertexLabel>().unwrap(), l);
        }
    }
}
