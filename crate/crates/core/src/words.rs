//! Words over the ordered alphabet `a < b`, Lyndon words and their standard
//! bracketing.
//!
//! A [`Word`] is packed into a `u64`, most significant letter first, with
//! `a = 0` and `b = 1`. Two words of equal length therefore compare
//! lexicographically exactly when their bit patterns compare numerically,
//! which is what the per-bidegree indexing in [`Word::rank_in_bidegree`]
//! relies on.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::algebra::Bidegree;
use crate::error::{invalid, Error, Result};

/// Longest word representable by [`Word`].
pub const MAX_WEIGHT: usize = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    fn bit(self) -> u64 {
        match self {
            Letter::A => 0,
            Letter::B => 1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Word {
    len: u8,
    bits: u64,
}

impl Word {
    pub const EMPTY: Word = Word { len: 0, bits: 0 };

    pub fn letter(l: Letter) -> Word {
        Word { len: 1, bits: l.bit() }
    }

    pub fn from_letters(letters: &[Letter]) -> Result<Word> {
        if letters.len() > MAX_WEIGHT {
            return invalid(format!("word longer than {MAX_WEIGHT} letters"));
        }
        let bits = letters.iter().fold(0u64, |acc, l| (acc << 1) | l.bit());
        Ok(Word { len: letters.len() as u8, bits })
    }

    pub(crate) fn from_raw(len: usize, bits: u64) -> Word {
        debug_assert!(len <= MAX_WEIGHT);
        Word { len: len as u8, bits }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn letter_at(&self, i: usize) -> Letter {
        assert!(i < self.len(), "letter index out of range");
        if (self.bits >> (self.len() - 1 - i)) & 1 == 1 {
            Letter::B
        } else {
            Letter::A
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.len()).map(move |i| self.letter_at(i))
    }

    pub fn bidegree(&self) -> Bidegree {
        let l = self.bits.count_ones() as usize;
        Bidegree::new(self.len() - l, l)
    }

    /// Concatenation `self · other`. Panics past [`MAX_WEIGHT`].
    pub fn concat(&self, other: &Word) -> Word {
        let len = self.len() + other.len();
        assert!(len <= MAX_WEIGHT, "word product exceeds {MAX_WEIGHT} letters");
        Word { len: len as u8, bits: (self.bits << other.len) | other.bits }
    }

    /// The factor `self[start..end]`.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        assert!(start <= end && end <= self.len());
        let len = end - start;
        let shifted = self.bits >> (self.len() - end);
        Word { len: len as u8, bits: shifted & mask(len) }
    }

    /// Left rotation by `i` positions.
    pub fn rotate(&self, i: usize) -> Word {
        let n = self.len();
        if n == 0 || i.is_multiple_of(n) {
            return *self;
        }
        let i = i % n;
        let bits = ((self.bits << i) | (self.bits >> (n - i))) & mask(n);
        Word { len: self.len, bits }
    }

    /// Position of this word among all words of its bidegree in
    /// lexicographic order.
    pub fn rank_in_bidegree(&self) -> usize {
        // combinatorial number system over the set bit positions, counted
        // from the least significant end
        let mut rank = 0u64;
        let mut seen = 0usize;
        for pos in 0..self.len() {
            if (self.bits >> pos) & 1 == 1 {
                seen += 1;
                rank += small_binom(pos, seen);
            }
        }
        rank as usize
    }
}

fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

pub(crate) fn small_binom(n: usize, k: usize) -> u64 {
    static TABLE: OnceLock<Vec<Vec<u64>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = vec![vec![0u64; MAX_WEIGHT + 2]; MAX_WEIGHT + 2];
        for n in 0..=MAX_WEIGHT + 1 {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1].saturating_add(t[n - 1][k]);
            }
        }
        t
    });
    if k > n {
        0
    } else {
        table[n][k]
    }
}

/// Number of words of the given bidegree.
pub(crate) fn words_in_bidegree(bd: Bidegree) -> usize {
    small_binom(bd.weight(), bd.b) as usize
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        let m = self.len.min(other.len);
        let lhs = self.bits >> (self.len - m);
        let rhs = other.bits >> (other.len - m);
        lhs.cmp(&rhs).then(self.len.cmp(&other.len))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let letters = s
            .chars()
            .map(|c| match c {
                'a' => Ok(Letter::A),
                'b' => Ok(Letter::B),
                other => invalid(format!("letter {other:?} is not in {{a, b}}")),
            })
            .collect::<Result<Vec<_>>>()?;
        Word::from_letters(&letters)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// True iff `w` is strictly smaller than each of its proper rotations.
pub fn is_lyndon(w: &Word) -> Result<bool> {
    if w.is_empty() {
        return invalid("the empty word is not a Lyndon candidate");
    }
    Ok((1..w.len()).all(|i| w.rotate(i).bits > w.bits))
}

/// A word known to be Lyndon.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct LyndonWord(Word);

impl LyndonWord {
    pub fn new(w: Word) -> Result<LyndonWord> {
        if is_lyndon(&w)? {
            Ok(LyndonWord(w))
        } else {
            invalid(format!("{w} is not a Lyndon word"))
        }
    }

    pub fn letter(l: Letter) -> LyndonWord {
        LyndonWord(Word::letter(l))
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bidegree(&self) -> Bidegree {
        self.0.bidegree()
    }
}

impl fmt::Display for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for LyndonWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<LyndonWord> {
        LyndonWord::new(s.parse()?)
    }
}

impl<'de> Deserialize<'de> for LyndonWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Word::deserialize(d)?;
        LyndonWord::new(w).map_err(serde::de::Error::custom)
    }
}

/// Splits `w = u·v` where `v` is the longest proper suffix of `w` that is
/// itself Lyndon.
pub fn standard_factorization(w: &LyndonWord) -> Result<(LyndonWord, LyndonWord)> {
    let word = w.word();
    let n = word.len();
    if n < 2 {
        return Err(Error::NoFactorization(word.to_string()));
    }
    for start in 1..n {
        let suffix = word.slice(start, n);
        if is_lyndon(&suffix)? {
            let prefix = word.slice(0, start);
            // the prefix of a standard factorization is always Lyndon
            let u = LyndonWord::new(prefix)
                .map_err(|_| Error::Internal(format!("left factor {prefix} of {word} not Lyndon")))?;
            return Ok((u, LyndonWord(suffix)));
        }
    }
    unreachable!("the last letter of a Lyndon word of length >= 2 is a Lyndon suffix")
}

/// Binary bracket tree over the letters.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum BracketTree {
    Leaf(Letter),
    Node(Box<BracketTree>, Box<BracketTree>),
}

impl BracketTree {
    pub fn node(left: BracketTree, right: BracketTree) -> BracketTree {
        BracketTree::Node(Box::new(left), Box::new(right))
    }

    pub fn weight(&self) -> usize {
        self.bidegree().weight()
    }

    pub fn bidegree(&self) -> Bidegree {
        match self {
            BracketTree::Leaf(Letter::A) => Bidegree::new(1, 0),
            BracketTree::Leaf(Letter::B) => Bidegree::new(0, 1),
            BracketTree::Node(x, y) => x.bidegree() + y.bidegree(),
        }
    }
}

impl fmt::Display for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketTree::Leaf(l) => write!(f, "{l}"),
            BracketTree::Node(x, y) => write!(f, "[{x},{y}]"),
        }
    }
}

impl fmt::Debug for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The Lyndon–Shirshov bracketing `[w]`: a letter is its own bracket,
/// otherwise `[w] = [[u],[v]]` over the standard factorization.
pub fn lyndon_bracket(w: &LyndonWord) -> BracketTree {
    if w.len() == 1 {
        return BracketTree::Leaf(w.word().letter_at(0));
    }
    let (u, v) = standard_factorization(w).expect("length checked above");
    BracketTree::node(lyndon_bracket(&u), lyndon_bracket(&v))
}

/// All Lyndon words with `k` letters `a` and `l` letters `b`, in
/// lexicographic order. This is the canonical basis order of `L_{k,l}`.
pub fn lyndon_words(k: usize, l: usize) -> Result<Vec<LyndonWord>> {
    let n = k + l;
    if n == 0 {
        return invalid("bidegree (0,0) has no words");
    }
    if n > MAX_WEIGHT {
        return invalid(format!("weight {n} exceeds {MAX_WEIGHT}"));
    }
    let mut out = Vec::new();
    for w in words_of_bidegree(Bidegree::new(k, l)) {
        if is_lyndon(&w)? {
            out.push(LyndonWord(w));
        }
    }
    Ok(out)
}

/// Every word of the given bidegree in lexicographic order.
pub fn words_of_bidegree(bd: Bidegree) -> impl Iterator<Item = Word> {
    let n = bd.weight();
    let ones = bd.b;
    let first: u64 = mask(ones);
    let count = small_binom(n, ones);
    let mut current = first;
    (0..count).map(move |_| {
        let w = Word::from_raw(n, current);
        // Gosper's hack: next integer with the same popcount
        if current != 0 {
            let c = current & current.wrapping_neg();
            let r = current + c;
            current = (((r ^ current) >> 2) / c) | r;
        }
        w
    })
}
