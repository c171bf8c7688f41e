//! PD-code text format.
//!
//! A diagram is a whitespace- or comma-separated sequence of items:
//!
//! * `X(a,b,c,d)`: a crossing, arcs counterclockwise from the incoming
//!   under-arc; the over-strand direction is inferred by arc-chasing.
//! * `X+(a,b,c,d)` / `X-(a,b,c,d)`: the same with the sign given. Needed
//!   only when the over strand belongs to a component that never passes
//!   under anything, since nothing else fixes its orientation.
//! * `O(a)`: a crossingless circle.
//!
//! [`PlanarDiagram::to_pd_text`] writes signs exactly where they are needed,
//! so parsing its output reproduces the diagram.

use crate::error::{Error, Result};

use super::planar::{PlanarDiagram, Sign};

pub fn parse_pd(text: &str) -> Result<PlanarDiagram> {
    let mut raw = Vec::new();
    let mut hints = Vec::new();
    let mut circles = Vec::new();

    let mut rest = text.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
    while !rest.is_empty() {
        let open = rest
            .find('(')
            .ok_or_else(|| Error::parse(rest, "expected `X(...)` or `O(...)`"))?;
        let close = rest[open..]
            .find(')')
            .map(|i| open + i)
            .ok_or_else(|| Error::parse(rest, "unclosed parenthesis"))?;
        let head = rest[..open].trim();
        let item = &rest[..=close];
        let args: Vec<u32> = rest[open + 1..close]
            .split(',')
            .map(|s| {
                let s = s.trim();
                s.parse::<u32>()
                    .map_err(|_| Error::parse(s, format!("arc label in `{item}` is not a nonnegative integer")))
            })
            .collect::<Result<_>>()?;

        match head {
            "X" | "X+" | "X-" => {
                let arcs: [u32; 4] = args
                    .try_into()
                    .map_err(|_| Error::parse(item, "a crossing needs exactly four arcs"))?;
                raw.push(arcs);
                hints.push(match head {
                    "X+" => Some(Sign::Positive),
                    "X-" => Some(Sign::Negative),
                    _ => None,
                });
            }
            "O" => {
                if args.len() != 1 {
                    return Err(Error::parse(item, "a circle takes exactly one label"));
                }
                circles.push(args[0]);
            }
            _ => return Err(Error::parse(head, "unknown item; expected X, X+, X- or O")),
        }
        rest = rest[close + 1..].trim_start_matches(|c: char| c.is_whitespace() || c == ',');
    }

    PlanarDiagram::from_unsigned(raw, hints, circles)
}

impl PlanarDiagram {
    pub fn to_pd_text(&self) -> String {
        let unforced = self.unforced_sign_crossings();
        let mut items: Vec<String> = self
            .crossings()
            .iter()
            .zip(unforced)
            .map(|(c, unforced)| {
                let tag = match (unforced, c.sign) {
                    (false, _) => "X",
                    (true, Sign::Positive) => "X+",
                    (true, Sign::Negative) => "X-",
                };
                let [a, b, cc, d] = c.arcs;
                format!("{tag}({a},{b},{cc},{d})")
            })
            .collect();
        items.extend(self.circles().iter().map(|c| format!("O({c})")));
        items.join(" ")
    }
}
