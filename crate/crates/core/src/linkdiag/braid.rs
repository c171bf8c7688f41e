//! Braid words and the moves that preserve their closure in the annulus.
//!
//! Text grammar: whitespace-separated nonzero integers, `g > 0` for the
//! generator `σ_g` and `g < 0` for its inverse. The empty string is the
//! trivial braid. [`BraidWord::to_text`] emits the same grammar.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Diagram("a braid needs at least one strand".into()));
        }
        for &g in &letters {
            check_letter(g, strands).map_err(|reason| Error::parse(g.to_string(), reason))?;
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn trivial(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    pub fn strand_count(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Underlying permutation: `perm[p]` is the position at the top of the
    /// braid reached by the strand entering at position `p` at the bottom.
    pub fn permutation(&self) -> Vec<usize> {
        // occupant[q] = starting position of the strand currently at q
        let mut occupant: Vec<usize> = (0..self.strands).collect();
        for &g in &self.letters {
            let left = g.unsigned_abs() as usize - 1;
            occupant.swap(left, left + 1);
        }
        let mut perm = vec![0; self.strands];
        for (q, &start) in occupant.iter().enumerate() {
            perm[start] = q;
        }
        perm
    }

    /// Cycles of the permutation, each listed from its smallest position.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut cycles = Vec::new();
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = perm[p];
            }
            cycles.push(cycle);
        }
        cycles
    }

    pub fn to_text(&self) -> String {
        self.letters
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn apply_move(&self, mv: BraidMove) -> Result<BraidWord> {
        apply_move(self, mv)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] on {} strands", self.to_text(), self.strands)
    }
}

fn check_letter(g: i32, strands: usize) -> std::result::Result<(), String> {
    if g == 0 {
        return Err("zero is not a braid generator".into());
    }
    if g.unsigned_abs() as usize >= strands {
        return Err(format!(
            "generator index {} out of range for {} strands",
            g.unsigned_abs(),
            strands
        ));
    }
    Ok(())
}

pub fn parse_braid(text: &str, strands: usize) -> Result<BraidWord> {
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        let g: i32 = token
            .parse()
            .map_err(|_| Error::parse(token, "not an integer"))?;
        check_letter(g, strands).map_err(|reason| Error::parse(token, reason))?;
        letters.push(g);
    }
    BraidWord::new(strands, letters)
}

/// Moves on braid words whose closures are isotopic in the annulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraidMove {
    /// `w ↦ g w g⁻¹`, cancelling inverse pairs created at the two seams.
    Conjugate { letter: i32 },
    /// Insert `g g⁻¹` before position `at`.
    InsertPair { at: usize, letter: i32 },
    /// Delete the inverse pair occupying positions `at`, `at + 1`.
    DeletePair { at: usize },
    /// `σ_i σ_j σ_i ↦ σ_j σ_i σ_j` for `|i − j| = 1`, all letters of one sign.
    BraidRelation { at: usize },
    /// `σ_i σ_j ↦ σ_j σ_i` for `|i − j| ≥ 2`.
    FarCommute { at: usize },
}

pub fn apply_move(word: &BraidWord, mv: BraidMove) -> Result<BraidWord> {
    let n = word.strands;
    let w = &word.letters;
    let letters = match mv {
        BraidMove::Conjugate { letter } => {
            check_letter(letter, n).map_err(Error::Move)?;
            let mut out = Vec::with_capacity(w.len() + 2);
            out.push(letter);
            for &g in w {
                if out.last() == Some(&-g) {
                    out.pop();
                } else {
                    out.push(g);
                }
            }
            if out.last() == Some(&letter) {
                out.pop();
            } else {
                out.push(-letter);
            }
            out
        }
        BraidMove::InsertPair { at, letter } => {
            check_letter(letter, n).map_err(Error::Move)?;
            if at > w.len() {
                return Err(Error::Move(format!(
                    "insert position {at} beyond word length {}",
                    w.len()
                )));
            }
            let mut out = w.clone();
            out.splice(at..at, [letter, -letter]);
            out
        }
        BraidMove::DeletePair { at } => {
            if at + 1 >= w.len() || w[at] != -w[at + 1] {
                return Err(Error::Move(format!("no inverse pair at position {at}")));
            }
            let mut out = w.clone();
            out.drain(at..at + 2);
            out
        }
        BraidMove::BraidRelation { at } => {
            if at + 3 > w.len() {
                return Err(Error::Move(format!(
                    "braid relation needs three letters at position {at}"
                )));
            }
            let (a, b, c) = (w[at], w[at + 1], w[at + 2]);
            let same_sign = a.signum() == b.signum() && b.signum() == c.signum();
            if a != c || !same_sign || (a.abs() - b.abs()).abs() != 1 {
                return Err(Error::Move(format!(
                    "letters {a} {b} {c} at position {at} do not form a braid relation"
                )));
            }
            let mut out = w.clone();
            out[at] = b;
            out[at + 1] = a;
            out[at + 2] = b;
            out
        }
        BraidMove::FarCommute { at } => {
            if at + 1 >= w.len() {
                return Err(Error::Move(format!(
                    "commutation needs two letters at position {at}"
                )));
            }
            let (a, b) = (w[at], w[at + 1]);
            if (a.abs() - b.abs()).abs() < 2 {
                return Err(Error::Move(format!(
                    "letters {a} {b} at position {at} do not commute"
                )));
            }
            let mut out = w.clone();
            out.swap(at, at + 1);
            out
        }
    };
    BraidWord::new(n, letters)
}
