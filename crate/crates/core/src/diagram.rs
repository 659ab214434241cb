//! Framed chord diagrams: representation, canonical form, enumeration and
//! subdiagram extraction.
//!
//! A diagram of order `n` lives on an oriented circle carrying `2n` chord
//! endpoints. It is stored as the cyclic word of chord labels read along the
//! orientation plus one framing bit per chord (0 = oriented, 1 =
//! disorienting). Two diagrams are equal iff one is a rotation of the other;
//! reflections are *not* quotiented out.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A framed chord diagram in canonical form.
///
/// Canonical form: chord labels are numbered by first occurrence along the
/// word, and the pair `(word, framing)` is the lexicographic minimum over
/// all `2n` rotations of the circle. Constructors canonicalize, so two
/// values compare equal exactly when they are the same circular diagram.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FramedChordDiagram {
    word: Vec<u8>,
    framing: Vec<u8>,
}

impl FramedChordDiagram {
    /// The empty diagram (order 0), the unit of the diagram algebra.
    pub fn empty() -> Self {
        FramedChordDiagram {
            word: Vec::new(),
            framing: Vec::new(),
        }
    }

    /// Builds a diagram from a raw word (0-based labels, each in `0..n`
    /// occurring exactly twice) and framing bits, then canonicalizes.
    pub fn from_parts(word: Vec<u8>, framing: Vec<u8>) -> Result<Self> {
        let n = framing.len();
        if word.len() != 2 * n {
            return Err(Error::Parse {
                msg: format!("word has {} endpoints, framing has {} bits", word.len(), n),
                pos: None,
            });
        }
        let mut counts = vec![0usize; n];
        for (i, &c) in word.iter().enumerate() {
            if (c as usize) >= n {
                return Err(Error::Parse {
                    msg: format!("label {} out of range (order {})", c as usize + 1, n),
                    pos: Some(i),
                });
            }
            counts[c as usize] += 1;
        }
        for (c, &k) in counts.iter().enumerate() {
            if k != 2 {
                return Err(Error::Parse {
                    msg: format!("label {} occurs {} times, expected 2", c + 1, k),
                    pos: None,
                });
            }
        }
        for (c, &b) in framing.iter().enumerate() {
            if b > 1 {
                return Err(Error::Parse {
                    msg: format!("framing bit of chord {} is not 0/1", c + 1),
                    pos: None,
                });
            }
        }
        let (word, framing) = canonical_parts(&word, &framing);
        Ok(FramedChordDiagram { word, framing })
    }

    /// Parses the textual diagram code, e.g. `1 2 1 2;01`. The empty diagram
    /// is `;`. Non-canonical input is accepted and canonicalized.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let parts: Vec<&str> = text.split(';').collect();
        if parts.len() != 2 {
            return Err(Error::Parse {
                msg: "diagram code must contain exactly one ';'".into(),
                pos: None,
            });
        }
        let mut word = Vec::new();
        for (i, tok) in parts[0].split_whitespace().enumerate() {
            let label: usize = tok.parse().map_err(|_| Error::Parse {
                msg: format!("bad chord label `{tok}`"),
                pos: Some(i),
            })?;
            if label == 0 || label > 255 {
                return Err(Error::Parse {
                    msg: format!("chord label {label} out of range"),
                    pos: Some(i),
                });
            }
            word.push((label - 1) as u8);
        }
        let mut framing = Vec::new();
        for (i, ch) in parts[1].trim().chars().enumerate() {
            match ch {
                '0' => framing.push(0),
                '1' => framing.push(1),
                _ => {
                    return Err(Error::Parse {
                        msg: format!("bad framing character `{ch}`"),
                        pos: Some(i),
                    })
                }
            }
        }
        Self::from_parts(word, framing)
    }

    /// Number of chords.
    pub fn order(&self) -> usize {
        self.framing.len()
    }

    /// The canonical cyclic word (0-based labels).
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    /// Framing bits indexed by chord label.
    pub fn framing(&self) -> &[u8] {
        &self.framing
    }

    /// Framing bit of one chord.
    pub fn framing_of(&self, chord: usize) -> u8 {
        self.framing[chord]
    }

    /// True when every chord is oriented (includes the empty diagram).
    pub fn is_black(&self) -> bool {
        self.framing.iter().all(|&b| b == 0)
    }

    /// True when every chord is disorienting (includes the empty diagram).
    pub fn is_white(&self) -> bool {
        self.framing.iter().all(|&b| b == 1)
    }

    /// Number of oriented chords.
    pub fn oriented_count(&self) -> usize {
        self.framing.iter().filter(|&&b| b == 0).count()
    }

    /// Number of disorienting chords.
    pub fn disorienting_count(&self) -> usize {
        self.framing.iter().filter(|&&b| b == 1).count()
    }

    /// Textual diagram code, `1 2 1 2;01` style; the empty diagram is `;`.
    pub fn code(&self) -> String {
        let word = self
            .word
            .iter()
            .map(|&c| (c as usize + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let framing = self
            .framing
            .iter()
            .map(|b| b.to_string())
            .collect::<String>();
        format!("{word};{framing}")
    }

    /// Subdiagram formed by exactly the chords in `keep` (circular order and
    /// framings inherited), canonicalized.
    pub fn subdiagram(&self, keep: &[usize]) -> Result<Self> {
        let set = self.chord_set(keep)?;
        self.restrict(&set)
    }

    /// Complementary subdiagram: all chords *not* in `drop`.
    pub fn remove_chords(&self, drop: &[usize]) -> Result<Self> {
        let set = self.chord_set(drop)?;
        let complement: Vec<bool> = set.iter().map(|&b| !b).collect();
        self.restrict(&complement)
    }

    fn chord_set(&self, chords: &[usize]) -> Result<Vec<bool>> {
        let n = self.order();
        let mut set = vec![false; n];
        for &c in chords {
            if c >= n {
                return Err(Error::ChordIndex { index: c, order: n });
            }
            set[c] = true;
        }
        Ok(set)
    }

    /// Subdiagram on the chords whose flag is set.
    pub(crate) fn restrict(&self, keep: &[bool]) -> Result<Self> {
        let mut relabel = vec![u8::MAX; self.order()];
        let mut next = 0u8;
        let mut word = Vec::new();
        let mut framing = Vec::new();
        for &c in &self.word {
            if keep[c as usize] {
                if relabel[c as usize] == u8::MAX {
                    relabel[c as usize] = next;
                    framing.push(self.framing[c as usize]);
                    next += 1;
                }
                word.push(relabel[c as usize]);
            }
        }
        Self::from_parts(word, framing)
    }

    /// All distinct canonical diagrams of order `n`; all-zero framings only
    /// when `framed` is false. Sorted by canonical code.
    pub fn enumerate(n: usize, framed: bool) -> Vec<Self> {
        assert!(n <= 7, "diagram enumeration is sized for order <= 7");
        let mut out = BTreeSet::new();
        for word in pairing_words(n) {
            let masks: u32 = if framed { 1 << n } else { 1 };
            for mask in 0..masks {
                let framing: Vec<u8> = (0..n).map(|k| ((mask >> k) & 1) as u8).collect();
                out.insert(Self::from_parts(word.clone(), framing).expect("valid pairing"));
            }
        }
        out.into_iter().collect()
    }
}

impl fmt::Display for FramedChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

/// Reads the word starting at `start`, renumbering labels by first
/// occurrence and permuting the framing string accordingly.
fn relabel_from(word: &[u8], framing: &[u8], start: usize) -> (Vec<u8>, Vec<u8>) {
    let len = word.len();
    let n = framing.len();
    let mut map = vec![u8::MAX; n];
    let mut next = 0u8;
    let mut new_word = Vec::with_capacity(len);
    let mut new_framing = vec![0u8; n];
    for k in 0..len {
        let old = word[(start + k) % len] as usize;
        if map[old] == u8::MAX {
            map[old] = next;
            new_framing[next as usize] = framing[old];
            next += 1;
        }
        new_word.push(map[old]);
    }
    (new_word, new_framing)
}

fn canonical_parts(word: &[u8], framing: &[u8]) -> (Vec<u8>, Vec<u8>) {
    if word.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let mut best: Option<(Vec<u8>, Vec<u8>)> = None;
    for start in 0..word.len() {
        let cand = relabel_from(word, framing, start);
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best.unwrap()
}

/// All perfect matchings of `2n` points, written as words labeled by first
/// occurrence. `(2n-1)!!` of them.
fn pairing_words(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut slots = vec![u8::MAX; 2 * n];
    fill_pairings(&mut slots, 0, &mut out);
    out
}

fn fill_pairings(slots: &mut Vec<u8>, next_label: u8, out: &mut Vec<Vec<u8>>) {
    let first = match slots.iter().position(|&s| s == u8::MAX) {
        Some(i) => i,
        None => {
            out.push(slots.clone());
            return;
        }
    };
    slots[first] = next_label;
    for j in first + 1..slots.len() {
        if slots[j] == u8::MAX {
            slots[j] = next_label;
            fill_pairings(slots, next_label + 1, out);
            slots[j] = u8::MAX;
        }
    }
    slots[first] = u8::MAX;
}
