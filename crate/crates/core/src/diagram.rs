//! Horizontal chord diagrams as words in the free monoid on chords.
//!
//! A [`ChordWord`] stores its chords bottom-to-top: position 0 is the chord
//! applied first. Composition `a ∘ b` places `a` on top of `b`, so it is the
//! concatenation `b.chords ++ a.chords`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rational;

/// A chord `(i, j)` joining strands `i < j` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Chord {
    i: usize,
    j: usize,
}

impl Chord {
    /// Builds a chord, swapping the endpoints if `a > b`.
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::Argument(format!("strand indices are 1-based, got ({a},{b})")));
        }
        if a == b {
            return Err(Error::Argument(format!("chord endpoints coincide: ({a},{b})")));
        }
        Ok(Chord { i: a.min(b), j: a.max(b) })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// All chords on `strands` strands in lexicographic order.
pub fn chord_types(strands: usize) -> Vec<Chord> {
    let mut out = Vec::with_capacity(strands * strands.saturating_sub(1) / 2);
    for i in 1..=strands {
        for j in i + 1..=strands {
            out.push(Chord { i, j });
        }
    }
    out
}

/// An element of the free monoid of horizontal chord diagrams on `strands` strands.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ChordWord {
    strands: usize,
    chords: Vec<Chord>,
}

impl ChordWord {
    /// The chord-less diagram on `strands` strands.
    pub fn identity(strands: usize) -> Self {
        ChordWord { strands, chords: Vec::new() }
    }

    pub fn new(strands: usize, chords: Vec<Chord>) -> Result<Self> {
        if let Some(c) = chords.iter().find(|c| c.j > strands) {
            return Err(Error::Argument(format!(
                "chord {c} out of range for {strands} strands"
            )));
        }
        Ok(ChordWord { strands, chords })
    }

    /// Convenience constructor from endpoint pairs listed bottom-to-top.
    pub fn from_pairs(strands: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let chords = pairs
            .iter()
            .map(|&(a, b)| Chord::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(strands, chords)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    /// Chords bottom-to-top.
    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    /// `self ∘ below`: `self` stacked on top of `below`.
    pub fn compose(&self, below: &ChordWord) -> Result<ChordWord> {
        if self.strands != below.strands {
            return Err(Error::Dimension(format!(
                "cannot compose diagrams on {} and {} strands",
                self.strands, below.strands
            )));
        }
        let mut chords = Vec::with_capacity(self.len() + below.len());
        chords.extend_from_slice(&below.chords);
        chords.extend_from_slice(&self.chords);
        Ok(ChordWord { strands: self.strands, chords })
    }

    /// Reads the diagram backwards.
    pub fn star(&self) -> ChordWord {
        let mut chords = self.chords.clone();
        chords.reverse();
        ChordWord { strands: self.strands, chords }
    }

    /// Replaces strand `r` by `widths[r]` parallel strands and every chord by
    /// the sum of its lifts.
    pub fn tensor_split(&self, widths: &[usize]) -> Result<DiagramExpr> {
        let blocks = SplitBlocks::new(self.strands, widths)?;
        let mut words: Vec<Vec<Chord>> = vec![Vec::with_capacity(self.len())];
        for chord in &self.chords {
            let lifts = blocks.lifts(chord);
            let mut next = Vec::with_capacity(words.len() * lifts.len());
            for w in &words {
                for l in &lifts {
                    let mut w = w.clone();
                    w.push(*l);
                    next.push(w);
                }
            }
            words = next;
        }
        let strands = blocks.total();
        let one = Rational::one();
        Ok(DiagramExpr::from_terms_unchecked(
            strands,
            words
                .into_iter()
                .map(|chords| (ChordWord { strands, chords }, one.clone())),
        ))
    }
}

/// Strand blocks of a tensor splitting.
#[derive(Debug, Clone)]
pub(crate) struct SplitBlocks {
    offsets: Vec<usize>,
    widths: Vec<usize>,
}

impl SplitBlocks {
    pub(crate) fn new(strands: usize, widths: &[usize]) -> Result<Self> {
        if widths.len() != strands {
            return Err(Error::Dimension(format!(
                "{} split widths given for {strands} strands",
                widths.len()
            )));
        }
        if widths.contains(&0) {
            return Err(Error::Argument("split widths must be positive".into()));
        }
        let mut offsets = Vec::with_capacity(strands);
        let mut acc = 0;
        for &w in widths {
            offsets.push(acc);
            acc += w;
        }
        Ok(SplitBlocks { offsets, widths: widths.to_vec() })
    }

    pub(crate) fn total(&self) -> usize {
        self.offsets.last().map_or(0, |o| o + self.widths.last().unwrap())
    }

    /// Block of original strand `s` (1-based) as 1-based strand indices.
    pub(crate) fn block(&self, s: usize) -> std::ops::RangeInclusive<usize> {
        let o = self.offsets[s - 1];
        o + 1..=o + self.widths[s - 1]
    }

    pub(crate) fn lifts(&self, chord: &Chord) -> Vec<Chord> {
        let mut out = Vec::with_capacity(self.widths[chord.i - 1] * self.widths[chord.j - 1]);
        for r in self.block(chord.i) {
            for s in self.block(chord.j) {
                out.push(Chord { i: r, j: s });
            }
        }
        out
    }
}

impl fmt::Display for ChordWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for c in &self.chords {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

impl FromStr for ChordWord {
    type Err = Error;

    /// Grammar: `N: (i,j) (k,l) ...`, chords bottom-to-top.
    fn from_str(s: &str) -> Result<Self> {
        WordParser::new(s).parse()
    }
}

struct WordParser {
    chars: Vec<char>,
    pos: usize,
}

impl WordParser {
    fn new(src: &str) -> Self {
        WordParser { chars: src.chars().collect(), pos: 0 }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(Error::parse(self.column(), format!("expected `{want}`, found `{c}`"))),
            None => Err(Error::parse(self.column(), format!("expected `{want}`, found end of input"))),
        }
    }

    fn number(&mut self) -> Result<(usize, usize)> {
        self.skip_ws();
        let col = self.column();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(col, "expected a non-negative integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let v = digits
            .parse::<usize>()
            .map_err(|_| Error::parse(col, format!("integer `{digits}` too large")))?;
        Ok((v, col))
    }

    fn parse(mut self) -> Result<ChordWord> {
        let (strands, _) = self.number()?;
        self.expect(':')?;
        let mut chords = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('(') => {
                    let open = self.column();
                    self.pos += 1;
                    let (a, ca) = self.number()?;
                    self.expect(',')?;
                    let (b, cb) = self.number()?;
                    self.expect(')')?;
                    for (v, c) in [(a, ca), (b, cb)] {
                        if v == 0 || v > strands {
                            return Err(Error::parse(
                                c,
                                format!("strand index {v} out of range 1..={strands}"),
                            ));
                        }
                    }
                    if a == b {
                        return Err(Error::parse(open, format!("chord ({a},{b}) joins a strand to itself")));
                    }
                    chords.push(Chord { i: a.min(b), j: a.max(b) });
                }
                Some(c) => {
                    return Err(Error::parse(self.column(), format!("unexpected `{c}`, expected `(`")))
                }
            }
        }
        Ok(ChordWord { strands, chords })
    }
}

/// A finite rational linear combination of chord words on a fixed strand count.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramExpr {
    strands: usize,
    terms: BTreeMap<ChordWord, Rational>,
}

impl DiagramExpr {
    pub fn zero(strands: usize) -> Self {
        DiagramExpr { strands, terms: BTreeMap::new() }
    }

    /// The unit `1·↑_N`.
    pub fn one(strands: usize) -> Self {
        Self::from_word(ChordWord::identity(strands))
    }

    pub fn from_word(word: ChordWord) -> Self {
        let strands = word.strands;
        let mut terms = BTreeMap::new();
        terms.insert(word, Rational::one());
        DiagramExpr { strands, terms }
    }

    pub fn from_terms(
        strands: usize,
        terms: impl IntoIterator<Item = (ChordWord, Rational)>,
    ) -> Result<Self> {
        let mut out = Self::zero(strands);
        for (w, c) in terms {
            if w.strands != strands {
                return Err(Error::Dimension(format!(
                    "term `{w}` does not live on {strands} strands"
                )));
            }
            out.add_term(w, c);
        }
        Ok(out)
    }

    fn from_terms_unchecked(
        strands: usize,
        terms: impl IntoIterator<Item = (ChordWord, Rational)>,
    ) -> Self {
        let mut out = Self::zero(strands);
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    fn add_term(&mut self, word: ChordWord, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ChordWord, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &ChordWord) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_strands(&self, other: &DiagramExpr) -> Result<()> {
        if self.strands != other.strands {
            return Err(Error::Dimension(format!(
                "diagram expressions on {} and {} strands",
                self.strands, other.strands
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &DiagramExpr) -> Result<DiagramExpr> {
        self.check_strands(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> DiagramExpr {
        Self::from_terms_unchecked(self.strands, self.terms.iter().map(|(w, c)| (w.clone(), c * s)))
    }

    /// Bilinear extension of [`ChordWord::compose`]: `self ∘ other`.
    pub fn multiply(&self, other: &DiagramExpr) -> Result<DiagramExpr> {
        self.check_strands(other)?;
        let mut out = Self::zero(self.strands);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.compose(b)?, ca * cb);
            }
        }
        Ok(out)
    }

    /// Word reversal; conjugation is trivial on rational coefficients.
    pub fn star(&self) -> DiagramExpr {
        Self::from_terms_unchecked(self.strands, self.terms.iter().map(|(w, c)| (w.star(), c.clone())))
    }

    pub fn tensor_split(&self, widths: &[usize]) -> Result<DiagramExpr> {
        let blocks = SplitBlocks::new(self.strands, widths)?;
        let mut out = Self::zero(blocks.total());
        for (w, c) in &self.terms {
            for (lw, lc) in w.tensor_split(widths)?.terms {
                out.add_term(lw, lc * c);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for DiagramExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 [{}:]", self.strands);
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c} [{w}]")?;
        }
        Ok(())
    }
}

/// `(i,j)∘(k,l) − (k,l)∘(i,j)` for `i < j < k < l ≤ N`.
pub fn two_t_generator(i: usize, j: usize, k: usize, l: usize, strands: usize) -> Result<DiagramExpr> {
    if !(1 <= i && i < j && j < k && k < l && l <= strands) {
        return Err(Error::Argument(format!(
            "2T generator needs 1 <= i < j < k < l <= N, got ({i},{j},{k},{l}) with N = {strands}"
        )));
    }
    // `(a)∘(b)` has `b` at the bottom.
    let ij_over_kl = ChordWord::from_pairs(strands, &[(k, l), (i, j)])?;
    let kl_over_ij = ChordWord::from_pairs(strands, &[(i, j), (k, l)])?;
    DiagramExpr::from_terms(
        strands,
        [(ij_over_kl, Rational::one()), (kl_over_ij, -Rational::one())],
    )
}

/// `(i,j)∘(i,k) + (i,j)∘(j,k) − (i,k)∘(i,j) − (j,k)∘(i,j)` for `i < j < k ≤ N`.
pub fn four_t_generator(i: usize, j: usize, k: usize, strands: usize) -> Result<DiagramExpr> {
    if !(1 <= i && i < j && j < k && k <= strands) {
        return Err(Error::Argument(format!(
            "4T generator needs 1 <= i < j < k <= N, got ({i},{j},{k}) with N = {strands}"
        )));
    }
    let w = |top: (usize, usize), bottom: (usize, usize)| ChordWord::from_pairs(strands, &[bottom, top]);
    let one = Rational::one();
    DiagramExpr::from_terms(
        strands,
        [
            (w((i, j), (i, k))?, one.clone()),
            (w((i, j), (j, k))?, one.clone()),
            (w((i, k), (i, j))?, -one.clone()),
            (w((j, k), (i, j))?, -one),
        ],
    )
}

/// Every 2T generator on `strands` strands.
pub fn all_two_t_generators(strands: usize) -> Vec<DiagramExpr> {
    let mut out = Vec::new();
    for i in 1..=strands {
        for j in i + 1..=strands {
            for k in j + 1..=strands {
                for l in k + 1..=strands {
                    out.push(two_t_generator(i, j, k, l, strands).expect("indices ordered"));
                }
            }
        }
    }
    out
}

/// Every 4T generator on `strands` strands.
pub fn all_four_t_generators(strands: usize) -> Vec<DiagramExpr> {
    let mut out = Vec::new();
    for i in 1..=strands {
        for j in i + 1..=strands {
            for k in j + 1..=strands {
                out.push(four_t_generator(i, j, k, strands).expect("indices ordered"));
            }
        }
    }
    out
}

/// All words with at most `max_chords` chords, ordered by length and then
/// lexicographically on the chord sequence.
pub fn enumerate_words(strands: usize, max_chords: usize) -> Vec<ChordWord> {
    let types = chord_types(strands);
    let mut out = vec![ChordWord::identity(strands)];
    let mut layer: Vec<Vec<Chord>> = vec![Vec::new()];
    for _ in 0..max_chords {
        if types.is_empty() {
            break;
        }
        let mut next = Vec::with_capacity(layer.len() * types.len());
        for w in &layer {
            for c in &types {
                let mut w = w.clone();
                w.push(*c);
                next.push(w);
            }
        }
        out.extend(next.iter().map(|chords| ChordWord { strands, chords: chords.clone() }));
        layer = next;
    }
    out
}

/// Number of words [`enumerate_words`] returns, or `None` on overflow.
pub fn word_count(strands: usize, max_chords: usize) -> Option<usize> {
    let types = strands * strands.saturating_sub(1) / 2;
    let mut total: usize = 1;
    let mut power: usize = 1;
    for _ in 0..max_chords {
        if types == 0 {
            break;
        }
        power = power.checked_mul(types)?;
        total = total.checked_add(power)?;
    }
    Some(total)
}
