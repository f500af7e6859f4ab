use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WordKind {
    FreeGroup,
    FreeMonoid,
}

impl FromStr for WordKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "free-group" | "group" => Ok(WordKind::FreeGroup),
            "free-monoid" | "monoid" => Ok(WordKind::FreeMonoid),
            other => Err(Error::Parse(format!("unknown word kind {other:?}"))),
        }
    }
}

impl fmt::Display for WordKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WordKind::FreeGroup => "free-group",
            WordKind::FreeMonoid => "free-monoid",
        })
    }
}

/// Letter `(generator, ±1)`.
pub type Letter = (usize, i8);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Enumeration order key: shorter first, then letters with `g⁺` before `g⁻`.
    pub fn order_key(&self) -> (usize, Vec<(usize, bool)>) {
        (self.0.len(), self.0.iter().map(|&(g, e)| (g, e < 0)).collect())
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !(w[0].0 == w[1].0 && w[0].1 == -w[1].1))
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&(g, e)| {
                let n = names.get(g).cloned().unwrap_or_else(|| format!("g{}", g + 1));
                if e < 0 {
                    format!("{n}^-1")
                } else {
                    n
                }
            })
            .collect::<Vec<_>>()
            .join("·")
    }
}

/// Letters in enumeration order: `g1, g1⁻¹, g2, g2⁻¹, ...`.
pub fn letters(kind: WordKind, generators: usize) -> Vec<Letter> {
    (0..generators)
        .flat_map(|g| match kind {
            WordKind::FreeGroup => vec![(g, 1), (g, -1)],
            WordKind::FreeMonoid => vec![(g, 1)],
        })
        .collect()
}

/// Length-then-lexicographic, reduced for group words.
pub fn enumerate_words(kind: WordKind, generators: usize, max_len: usize) -> Vec<Word> {
    let ls = letters(kind, generators);
    let mut out = vec![Word::default()];
    let mut level = vec![Word::default()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &level {
            for &l in &ls {
                if let Some(&(g, e)) = w.0.last() {
                    if g == l.0 && e == -l.1 {
                        continue;
                    }
                }
                let mut v = w.0.clone();
                v.push(l);
                next.push(Word(v));
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(enumerate_words(WordKind::FreeGroup, 2, 0).len(), 1);
        assert_eq!(enumerate_words(WordKind::FreeGroup, 2, 1).len(), 5);
        assert_eq!(enumerate_words(WordKind::FreeGroup, 2, 2).len(), 17);
        assert_eq!(enumerate_words(WordKind::FreeGroup, 2, 3).len(), 53);
        assert_eq!(enumerate_words(WordKind::FreeMonoid, 2, 3).len(), 15);
        assert_eq!(enumerate_words(WordKind::FreeMonoid, 2, 4).len(), 31);
    }

    #[test]
    fn order_and_reduction() {
        let ws = enumerate_words(WordKind::FreeGroup, 2, 3);
        assert!(ws.iter().all(Word::is_reduced));
        for p in ws.windows(2) {
            assert!(p[0].order_key() < p[1].order_key());
        }
        let mut sorted = ws.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), ws.len());
        let names = vec!["s".to_string(), "t".to_string()];
        assert_eq!(ws[2].render(&names), "s^-1");
        assert_eq!(ws[0].render(&names), "1");
    }
}
