use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::braid::{self, BraidWord};
use crate::error::{Error, Result};
use crate::legtangle::{BasicBlock, OrientedLetter};

pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Alphabet shared by all relation sets; the derived order is the canonical-form order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    ZPlus,
    ZMinus,
    SPlus,
    SMinus,
    Z,
    S,
    X(usize),
}

impl Letter {
    pub fn flip(self) -> Letter {
        match self {
            Letter::ZPlus => Letter::ZMinus,
            Letter::ZMinus => Letter::ZPlus,
            Letter::SPlus => Letter::SMinus,
            Letter::SMinus => Letter::SPlus,
            other => other,
        }
    }

    pub fn oriented(self) -> Option<OrientedLetter> {
        match self {
            Letter::ZPlus => Some(OrientedLetter::ZPlus),
            Letter::ZMinus => Some(OrientedLetter::ZMinus),
            Letter::SPlus => Some(OrientedLetter::SPlus),
            Letter::SMinus => Some(OrientedLetter::SMinus),
            _ => None,
        }
    }

    pub fn block(self) -> BasicBlock {
        match self {
            Letter::ZPlus | Letter::ZMinus | Letter::Z => BasicBlock::Z,
            Letter::SPlus | Letter::SMinus | Letter::S => BasicBlock::S,
            Letter::X(i) => BasicBlock::X(i),
        }
    }
}

impl From<OrientedLetter> for Letter {
    fn from(l: OrientedLetter) -> Self {
        match l {
            OrientedLetter::ZPlus => Letter::ZPlus,
            OrientedLetter::ZMinus => Letter::ZMinus,
            OrientedLetter::SPlus => Letter::SPlus,
            OrientedLetter::SMinus => Letter::SMinus,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::ZPlus => f.write_str("Z+"),
            Letter::ZMinus => f.write_str("Z-"),
            Letter::SPlus => f.write_str("S+"),
            Letter::SMinus => f.write_str("S-"),
            Letter::Z => f.write_str("Z"),
            Letter::S => f.write_str("S"),
            Letter::X(i) => write!(f, "X{i}"),
        }
    }
}

pub fn word_string(w: &[Letter]) -> String {
    w.iter().map(|l| l.to_string()).collect()
}

/// Bidirectional equal-length rewrites, optionally with cyclic rotation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSet {
    rules: Vec<(Vec<Letter>, Vec<Letter>)>,
    cyclic: bool,
    sign_flip_on_wrap: bool,
}

impl RelationSet {
    pub fn new(rules: Vec<(Vec<Letter>, Vec<Letter>)>, cyclic: bool, sign_flip_on_wrap: bool) -> Result<Self> {
        for (a, b) in &rules {
            if a.len() != b.len() || a.is_empty() {
                return Err(Error::InvalidInput(format!(
                    "rule {} <-> {} must have equal nonempty sides",
                    word_string(a),
                    word_string(b)
                )));
            }
        }
        Ok(RelationSet { rules, cyclic, sign_flip_on_wrap })
    }

    pub fn rules(&self) -> &[(Vec<Letter>, Vec<Letter>)] {
        &self.rules
    }

    pub fn cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn sign_flip_on_wrap(&self) -> bool {
        self.sign_flip_on_wrap
    }

    pub fn with_rule(mut self, a: Vec<Letter>, b: Vec<Letter>) -> Result<Self> {
        self.rules.push((a, b));
        RelationSet::new(self.rules, self.cyclic, self.sign_flip_on_wrap)
    }

    fn neighbors(&self, w: &[Letter], out: &mut Vec<Vec<Letter>>) {
        for (a, b) in &self.rules {
            for (from, to) in [(a, b), (b, a)] {
                if from.len() > w.len() {
                    continue;
                }
                for p in 0..=w.len() - from.len() {
                    if &w[p..p + from.len()] == from.as_slice() {
                        let mut v = w.to_vec();
                        v[p..p + to.len()].copy_from_slice(to);
                        out.push(v);
                    }
                }
            }
        }
        if self.cyclic && !w.is_empty() {
            let wrap = |l: Letter| if self.sign_flip_on_wrap { l.flip() } else { l };
            // last letter to the front, and its inverse move
            let mut v = Vec::with_capacity(w.len());
            v.push(wrap(w[w.len() - 1]));
            v.extend_from_slice(&w[..w.len() - 1]);
            out.push(v);
            let mut v = w[1..].to_vec();
            v.push(wrap(w[0]));
            out.push(v);
        }
    }
}

/// Every word reachable from `word`.
pub fn class_members(word: &[Letter], rel: &RelationSet, budget: usize) -> Result<BTreeSet<Vec<Letter>>> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(word.to_vec());
    queue.push_back(word.to_vec());
    let mut next = Vec::new();
    while let Some(w) = queue.pop_front() {
        next.clear();
        rel.neighbors(&w, &mut next);
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
    Ok(seen.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordClass {
    pub canonical: Vec<Letter>,
    pub size: usize,
    pub tag: Vec<i64>,
}

impl Serialize for WordClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("WordClass", 3)?;
        st.serialize_field("canonical", &word_string(&self.canonical))?;
        st.serialize_field("size", &self.size)?;
        st.serialize_field("tag", &self.tag)?;
        st.end()
    }
}

pub fn class_of(word: &[Letter], rel: &RelationSet, budget: usize) -> Result<WordClass> {
    let members = class_members(word, rel, budget)?;
    let canonical = members.iter().next().expect("contains the start word").clone();
    Ok(WordClass { canonical, size: members.len(), tag: Vec::new() })
}

/// Partitions `words` into classes, ordered by canonical representative.
pub fn enumerate_classes<F>(words: &[Vec<Letter>], rel: &RelationSet, budget: usize, tag: F) -> Result<Vec<WordClass>>
where
    F: Fn(&[Letter]) -> Vec<i64>,
{
    let mut covered: HashSet<Vec<Letter>> = HashSet::new();
    let mut classes = Vec::new();
    for w in words {
        if covered.contains(w) {
            continue;
        }
        let members = class_members(w, rel, budget)?;
        let canonical = members.iter().next().expect("nonempty").clone();
        classes.push(WordClass { tag: tag(&canonical), canonical, size: members.len() });
        covered.extend(members);
    }
    classes.sort_by(|a, b| a.canonical.cmp(&b.canonical));
    Ok(classes)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleCensus {
    pub m: i64,
    pub classes: Vec<WordClass>,
}

fn whitehead_rules() -> Vec<(Vec<Letter>, Vec<Letter>)> {
    use Letter::*;
    vec![
        // Z S S <-> S S Z with alternating signs
        (vec![ZPlus, SMinus, SPlus], vec![SPlus, SMinus, ZPlus]),
        (vec![ZMinus, SPlus, SMinus], vec![SMinus, SPlus, ZMinus]),
        // Z Z S <-> S Z Z
        (vec![ZPlus, ZMinus, SPlus], vec![SPlus, ZMinus, ZPlus]),
        (vec![ZMinus, ZPlus, SMinus], vec![SMinus, ZPlus, ZMinus]),
    ]
}

/// Relations on maximal Whitehead box words with |m| letters, plus the stabilization exchanges.
pub fn whitehead_relations(m: i64, pos_stab: usize, neg_stab: usize) -> RelationSet {
    let mut rules = whitehead_rules();
    if pos_stab > 0 {
        rules.push((vec![Letter::ZPlus], vec![Letter::SPlus]));
    }
    if neg_stab > 0 {
        rules.push((vec![Letter::ZMinus], vec![Letter::SMinus]));
    }
    RelationSet::new(rules, true, m.rem_euclid(2) == 1).expect("well-formed rules")
}

/// All alternating-sign words of length |m| over Z+-, S+-.
pub fn whitehead_words(m: i64) -> Vec<Vec<Letter>> {
    let len = m.unsigned_abs() as usize;
    let mut out = Vec::new();
    for first in [1i8, -1] {
        for mask in 0u64..(1u64 << len) {
            let w = (0..len)
                .map(|p| {
                    let sign = if p % 2 == 0 { first } else { -first };
                    Letter::from(OrientedLetter::new(mask >> p & 1 == 1, sign))
                })
                .collect();
            out.push(w);
        }
    }
    out.sort();
    out
}

fn count_letter(w: &[Letter], l: Letter) -> i64 {
    w.iter().filter(|&&x| x == l).count() as i64
}

fn negative_m(m: i64) -> Result<()> {
    if m >= 0 {
        return Err(Error::InvalidInput(format!("m = {m} must be negative")));
    }
    Ok(())
}

pub fn whitehead_classes(m: i64) -> Result<Vec<WordClass>> {
    stabilized_classes_inner(m, 0, 0)
}

pub fn stabilized_classes(m: i64, pos_stab: usize, neg_stab: usize) -> Result<Vec<WordClass>> {
    if pos_stab + neg_stab == 0 {
        return Err(Error::InvalidInput("at least one stabilization is required".into()));
    }
    stabilized_classes_inner(m, pos_stab, neg_stab)
}

fn stabilized_classes_inner(m: i64, pos_stab: usize, neg_stab: usize) -> Result<Vec<WordClass>> {
    negative_m(m)?;
    let rel = whitehead_relations(m, pos_stab, neg_stab);
    let even = m % 2 == 0;
    let tag = |w: &[Letter]| -> Vec<i64> {
        let zp = count_letter(w, Letter::ZPlus);
        let zm = count_letter(w, Letter::ZMinus);
        match (even, pos_stab > 0, neg_stab > 0) {
            (true, false, false) => vec![zp, zm],
            (true, true, false) => vec![zm],
            (true, false, true) => vec![zp],
            (false, false, false) => vec![zp + zm],
            _ => vec![],
        }
    };
    enumerate_classes(&whitehead_words(m), &rel, DEFAULT_BUDGET, tag)
}

/// Closed-form class count for maximal Whitehead patterns with m < 0 after the given stabilizations.
pub fn expected_whitehead_classes(m: i64, pos_stab: usize, neg_stab: usize) -> usize {
    let a = m.unsigned_abs() as usize;
    if m % 2 != 0 {
        return if pos_stab + neg_stab > 0 { 1 } else { a + 1 };
    }
    match (pos_stab > 0, neg_stab > 0) {
        (false, false) => (a / 2 + 1) * (a / 2 + 1),
        (true, true) => 1,
        _ => a / 2 + 1,
    }
}

pub fn two_braid_relations() -> RelationSet {
    use Letter::{S, Z};
    RelationSet::new(vec![(vec![Z, S, S], vec![S, S, Z]), (vec![Z, Z, S], vec![S, Z, Z])], true, false)
        .expect("well-formed rules")
}

pub fn two_braid_words(m: i64) -> Vec<Vec<Letter>> {
    let len = m.unsigned_abs() as usize;
    let mut out: Vec<Vec<Letter>> = (0u64..(1u64 << len))
        .map(|mask| (0..len).map(|p| if mask >> p & 1 == 1 { Letter::Z } else { Letter::S }).collect())
        .collect();
    out.sort();
    out
}

pub fn two_braid_classes(m: i64) -> Result<Vec<WordClass>> {
    negative_m(m)?;
    if m % 2 == 0 {
        return Err(Error::EvenM(m));
    }
    let rel = two_braid_relations();
    enumerate_classes(&two_braid_words(m), &rel, DEFAULT_BUDGET, |w| vec![count_letter(w, Letter::Z)])
}

/// Artin relations realized on X letters: X(i) stands for sigma_{i+1}.
pub fn artin_relations(strands: usize, cyclic: bool) -> RelationSet {
    let mut rules = Vec::new();
    let gens = strands.saturating_sub(1);
    for i in 0..gens {
        if i + 1 < gens {
            rules.push((
                vec![Letter::X(i), Letter::X(i + 1), Letter::X(i)],
                vec![Letter::X(i + 1), Letter::X(i), Letter::X(i + 1)],
            ));
        }
        for j in i + 2..gens {
            rules.push((vec![Letter::X(i), Letter::X(j)], vec![Letter::X(j), Letter::X(i)]));
        }
    }
    RelationSet::new(rules, cyclic, false).expect("well-formed rules")
}

pub fn x_word(indices: &[usize]) -> Vec<Letter> {
    indices.iter().map(|&i| Letter::X(i - 1)).collect()
}

/// Number of maximal Legendrian classes among X-words whose braid is equivalent
/// (positive-monoid equal when open, conjugate when closed) to the positive word `w`.
pub fn positive_leg_classes(w: &BraidWord, closed: bool) -> Result<usize> {
    let candidates = if closed {
        braid::positive_conjugacy_class(w, braid::DEFAULT_BUDGET)?
    } else {
        braid::positive_monoid_class(w, braid::DEFAULT_BUDGET)?
    };
    let rel = artin_relations(w.strands(), closed);
    let words: Vec<Vec<Letter>> = candidates.iter().map(|c| x_word(c)).collect();
    Ok(enumerate_classes(&words, &rel, DEFAULT_BUDGET, |_| Vec::new())?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::*;

    #[test]
    fn class_of_examples() {
        let rel = whitehead_relations(-3, 0, 0);
        let members = class_members(&[ZPlus, SMinus, SPlus], &rel, 1000).unwrap();
        assert!(members.contains(&vec![SPlus, SMinus, ZPlus]));
        let c = class_of(&[Z], &two_braid_relations(), 1000).unwrap();
        assert_eq!(c.size, 1);
        let rel = RelationSet::new(vec![(vec![Z, S, S], vec![S, S, Z])], true, false).unwrap();
        let members = class_members(&[Z, S, S], &rel, 1000).unwrap();
        let expect: BTreeSet<Vec<Letter>> = [vec![Z, S, S], vec![S, S, Z], vec![S, Z, S]].into_iter().collect();
        assert_eq!(members, expect);
        assert_eq!(class_of(&[S, Z, S], &rel, 1000).unwrap().canonical, vec![Z, S, S]);
    }

    #[test]
    fn budget_is_enforced() {
        let rel = two_braid_relations();
        let w = vec![Z, S, Z, S, S, Z, S];
        assert_eq!(class_of(&w, &rel, 3), Err(Error::BudgetExhausted(3)));
    }

    #[test]
    fn unequal_rule_rejected() {
        assert!(RelationSet::new(vec![(vec![Z], vec![S, S])], false, false).is_err());
    }

    #[test]
    fn whitehead_examples() {
        let c = whitehead_classes(-2).unwrap();
        assert_eq!(c.len(), 4);
        let tags: BTreeSet<Vec<i64>> = c.iter().map(|x| x.tag.clone()).collect();
        assert_eq!(tags, [vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]].into_iter().collect());
        let c = whitehead_classes(-3).unwrap();
        let tags: BTreeSet<Vec<i64>> = c.iter().map(|x| x.tag.clone()).collect();
        assert_eq!(tags, (0..=3).map(|z| vec![z]).collect());
        assert_eq!(whitehead_classes(-1).unwrap().len(), 2);
        assert!(whitehead_classes(2).is_err());
    }

    #[test]
    fn stabilized_examples() {
        assert_eq!(stabilized_classes(-4, 1, 0).unwrap().len(), 3);
        assert_eq!(stabilized_classes(-4, 1, 1).unwrap().len(), 1);
        assert_eq!(stabilized_classes(-3, 1, 0).unwrap().len(), 1);
        assert!(stabilized_classes(-3, 0, 0).is_err());
    }

    #[test]
    fn two_braid_examples() {
        assert_eq!(two_braid_classes(-3).unwrap().len(), 4);
        assert_eq!(two_braid_classes(-1).unwrap().len(), 2);
        assert_eq!(two_braid_classes(-5).unwrap().len(), 6);
        assert_eq!(two_braid_classes(-4), Err(Error::EvenM(-4)));
    }

    #[test]
    fn positive_examples() {
        let w = BraidWord::from_signed(3, &[1, 2, 1]).unwrap();
        assert_eq!(positive_leg_classes(&w, false).unwrap(), 1);
        let w = BraidWord::from_signed(2, &[1]).unwrap();
        assert_eq!(positive_leg_classes(&w, true).unwrap(), 1);
        let w = BraidWord::from_signed(2, &[1, 1, 1]).unwrap();
        assert_eq!(positive_leg_classes(&w, true).unwrap(), 1);
        let w = BraidWord::from_signed(2, &[1, -1]).unwrap();
        assert_eq!(positive_leg_classes(&w, true), Err(Error::NonPositiveInput));
    }

    #[test]
    fn census_json() {
        let census = OracleCensus { m: -1, classes: whitehead_classes(-1).unwrap() };
        let s = serde_json::to_string(&census).unwrap();
        assert_eq!(
            s,
            r#"{"m":-1,"classes":[{"canonical":"Z+","size":2,"tag":[1]},{"canonical":"S+","size":2,"tag":[0]}]}"#
        );
    }
}
