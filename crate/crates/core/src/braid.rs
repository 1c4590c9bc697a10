use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

// visited-word cap for the positive-monoid closure
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Artin generator sigma_index^sign; indices start at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidLetter {
    pub index: usize,
    pub sign: i8,
}

impl BraidLetter {
    pub fn pos(index: usize) -> Self {
        BraidLetter { index, sign: 1 }
    }

    pub fn neg(index: usize) -> Self {
        BraidLetter { index, sign: -1 }
    }

    pub fn inverse(self) -> Self {
        BraidLetter { index: self.index, sign: -self.sign }
    }

    pub fn signed(self) -> i64 {
        self.sign as i64 * self.index as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBraid", into = "RawBraid")]
pub struct BraidWord {
    strands: usize,
    letters: Vec<BraidLetter>,
}

#[derive(Serialize, Deserialize)]
struct RawBraid {
    n: usize,
    word: Vec<i64>,
}

impl TryFrom<RawBraid> for BraidWord {
    type Error = Error;

    fn try_from(raw: RawBraid) -> Result<Self> {
        BraidWord::from_signed(raw.n, &raw.word)
    }
}

impl From<BraidWord> for RawBraid {
    fn from(w: BraidWord) -> Self {
        RawBraid { n: w.strands, word: w.to_signed() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraidEquality {
    Equal,
    Distinct,
    BudgetExhausted,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<BraidLetter>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidInput("a braid needs at least one strand".into()));
        }
        for l in &letters {
            if l.index == 0 || l.index >= strands || (l.sign != 1 && l.sign != -1) {
                return Err(Error::InvalidInput(format!("letter {} out of range for {} strands", l.signed(), strands)));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self> {
        BraidWord::new(strands, Vec::new())
    }

    /// Builds a word from signed indices, e.g. [1, -2, 1].
    pub fn from_signed(strands: usize, word: &[i64]) -> Result<Self> {
        let letters = word
            .iter()
            .map(|&x| {
                if x == 0 {
                    Err(Error::InvalidInput("generator index 0 is not allowed".into()))
                } else {
                    Ok(BraidLetter { index: x.unsigned_abs() as usize, sign: x.signum() as i8 })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        BraidWord::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.signed()).collect()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.sign == 1)
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> BraidWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// perm[h] is the end height of the strand starting at height h (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect(); // at[height] = strand
        for l in &self.letters {
            at.swap(l.index - 1, l.index);
        }
        let mut perm = vec![0; self.strands];
        for (h, &s) in at.iter().enumerate() {
            perm[s] = h;
        }
        perm
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}[", self.strands)?;
        for (i, x) in self.to_signed().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

pub fn writhe(w: &BraidWord) -> i64 {
    w.letters.iter().map(|l| l.sign as i64).sum()
}

pub fn full_twist(n: usize, k: i64) -> Result<BraidWord> {
    if n == 0 {
        return Err(Error::InvalidInput("a braid needs at least one strand".into()));
    }
    let sign = if k < 0 { -1 } else { 1 };
    let mut letters = Vec::new();
    for _ in 0..(k.unsigned_abs() as usize * n) {
        for i in 1..n {
            letters.push(BraidLetter { index: i, sign });
        }
    }
    if k < 0 {
        letters.reverse();
    }
    BraidWord::new(n, letters)
}

pub fn closure_components(w: &BraidWord) -> usize {
    let perm = w.permutation();
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            h = perm[h];
        }
    }
    cycles
}

// one-step Artin moves on a positive index word
fn artin_neighbors(word: &[usize], out: &mut Vec<Vec<usize>>) {
    for p in 0..word.len() {
        if p + 1 < word.len() && word[p].abs_diff(word[p + 1]) >= 2 {
            let mut v = word.to_vec();
            v.swap(p, p + 1);
            out.push(v);
        }
        if p + 2 < word.len() && word[p] == word[p + 2] && word[p].abs_diff(word[p + 1]) == 1 {
            let mut v = word.to_vec();
            v[p] = word[p + 1];
            v[p + 1] = word[p];
            v[p + 2] = word[p + 1];
            out.push(v);
        }
    }
}

fn closure(start: Vec<usize>, cyclic: bool, budget: usize) -> Result<BTreeSet<Vec<usize>>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    let mut next = Vec::new();
    while let Some(w) = queue.pop_front() {
        next.clear();
        artin_neighbors(&w, &mut next);
        if cyclic && w.len() > 1 {
            let mut v = w.clone();
            v.rotate_left(1);
            next.push(v);
            let mut v = w.clone();
            v.rotate_right(1);
            next.push(v);
        }
        for v in next.drain(..) {
            if !seen.contains(&v) {
                if seen.len() >= budget {
                    return Err(Error::BudgetExhausted(budget));
                }
                seen.insert(v.clone());
                queue.push_back(v);
            }
        }
    }
    Ok(seen)
}

fn positive_indices(w: &BraidWord) -> Result<Vec<usize>> {
    if !w.is_positive() {
        return Err(Error::NonPositiveInput);
    }
    Ok(w.letters.iter().map(|l| l.index).collect())
}

/// All positive words equal to `w` in the positive braid monoid.
pub fn positive_monoid_class(w: &BraidWord, budget: usize) -> Result<BTreeSet<Vec<usize>>> {
    closure(positive_indices(w)?, false, budget)
}

/// Closure of `w` under the Artin relations and cyclic rotation.
pub fn positive_conjugacy_class(w: &BraidWord, budget: usize) -> Result<BTreeSet<Vec<usize>>> {
    closure(positive_indices(w)?, true, budget)
}

pub fn positive_monoid_equivalent(w1: &BraidWord, w2: &BraidWord) -> Result<bool> {
    if w1.strands != w2.strands {
        return Err(Error::StrandMismatch(w1.strands, w2.strands));
    }
    let target = positive_indices(w2)?;
    let start = positive_indices(w1)?;
    if start.len() != target.len() {
        return Ok(false);
    }
    Ok(closure(start, false, DEFAULT_BUDGET)?.contains(&target))
}

// free-group words: generator x_j is j+1, its inverse -(j+1)
fn push_reduced(out: &mut Vec<i32>, g: i32) {
    if out.last() == Some(&-g) {
        out.pop();
    } else {
        out.push(g);
    }
}

fn letter_images(strands: usize, l: BraidLetter) -> Vec<Vec<i32>> {
    let mut img: Vec<Vec<i32>> = (1..=strands as i32).map(|g| vec![g]).collect();
    let a = l.index as i32;
    let b = a + 1;
    if l.sign > 0 {
        img[l.index - 1] = vec![a, b, -a];
        img[l.index] = vec![a];
    } else {
        img[l.index - 1] = vec![b];
        img[l.index] = vec![-b, a, b];
    }
    img
}

fn artin_action(w: &BraidWord, max_len: usize) -> Option<Vec<Vec<i32>>> {
    let mut img: Vec<Vec<i32>> = (1..=w.strands as i32).map(|g| vec![g]).collect();
    for &l in &w.letters {
        let step = letter_images(w.strands, l);
        let mut next = Vec::with_capacity(w.strands);
        for target in &step {
            let mut out = Vec::new();
            for &g in target {
                let src = &img[g.unsigned_abs() as usize - 1];
                if g > 0 {
                    for &h in src {
                        push_reduced(&mut out, h);
                    }
                } else {
                    for &h in src.iter().rev() {
                        push_reduced(&mut out, -h);
                    }
                }
            }
            if out.len() > max_len {
                return None;
            }
            next.push(out);
        }
        img = next;
    }
    Some(img)
}

/// Braid-group equality through the faithful Artin action on the free group;
/// gives up once an image word exceeds `max_len` letters.
pub fn braid_equal(w1: &BraidWord, w2: &BraidWord, max_len: usize) -> Result<BraidEquality> {
    if w1.strands != w2.strands {
        return Err(Error::StrandMismatch(w1.strands, w2.strands));
    }
    match (artin_action(w1, max_len), artin_action(w2, max_len)) {
        (Some(a), Some(b)) => Ok(if a == b { BraidEquality::Equal } else { BraidEquality::Distinct }),
        _ => Ok(BraidEquality::BudgetExhausted),
    }
}
