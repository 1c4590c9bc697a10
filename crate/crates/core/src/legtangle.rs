use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::braid::{BraidLetter, BraidWord};
use crate::error::{Error, Result};

/// Exact value in (1/2)Z, stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub fn twice(self) -> i64 {
        self.twice
    }

    pub fn integer(self) -> Option<i64> {
        (self.twice % 2 == 0).then_some(self.twice / 2)
    }
}

impl From<i64> for HalfInt {
    fn from(v: i64) -> Self {
        HalfInt { twice: 2 * v }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.integer() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}/2", self.twice),
        }
    }
}

/// Cusp and crossing census of a front.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiagramStats {
    pub u: i64,
    pub d: i64,
    pub c: i64,
    pub xp: i64,
    pub xm: i64,
    pub wp: i64,
    pub wm: i64,
}

impl DiagramStats {
    pub fn writhe(&self) -> i64 {
        self.xp - self.xm
    }

    /// writhe - c/2
    pub fn reltb(&self) -> HalfInt {
        HalfInt::from_twice(2 * self.writhe() - self.c)
    }

    /// (d - u)/2
    pub fn relrot(&self) -> HalfInt {
        HalfInt::from_twice(self.d - self.u)
    }

    pub fn winding(&self) -> i64 {
        self.wp - self.wm
    }

    /// Adds one zig-zag: St+ contributes two down cusps, St- two up cusps.
    pub fn stabilize(mut self, sign: i8) -> Self {
        if sign > 0 {
            self.d += 2;
        } else {
            self.u += 2;
        }
        self.c += 2;
        self
    }

    pub fn is_valid(&self) -> bool {
        self.c == self.u + self.d
            && [self.u, self.d, self.c, self.xp, self.xm, self.wp, self.wm].iter().all(|&v| v >= 0)
    }
}

// cusps and crossings add; wrap counts belong to the whole word and are kept from the left operand
impl Add for DiagramStats {
    type Output = DiagramStats;

    fn add(self, o: DiagramStats) -> DiagramStats {
        DiagramStats {
            u: self.u + o.u,
            d: self.d + o.d,
            c: self.c + o.c,
            xp: self.xp + o.xp,
            xm: self.xm + o.xm,
            wp: self.wp,
            wm: self.wm,
        }
    }
}

impl AddAssign for DiagramStats {
    fn add_assign(&mut self, o: DiagramStats) {
        *self = *self + o;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasicBlock {
    X(usize),
    S,
    Z,
    Xg { i: usize, k: usize, l: usize },
    Sg { i: usize, k: usize, l: usize },
    Zg { i: usize, k: usize, l: usize },
}

impl BasicBlock {
    pub fn is_basic(&self) -> bool {
        matches!(self, BasicBlock::X(_) | BasicBlock::S | BasicBlock::Z)
    }

    fn check(&self, n: usize) -> Result<()> {
        let ok = match *self {
            BasicBlock::X(i) => i + 2 <= n,
            BasicBlock::S | BasicBlock::Z => n >= 1,
            BasicBlock::Xg { i, k, l } | BasicBlock::Sg { i, k, l } | BasicBlock::Zg { i, k, l } => i + k + l <= n,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("block {self} does not fit on {n} strands")))
        }
    }

    /// perm[h] = end height of the strand entering at height h.
    pub fn permutation(&self, n: usize) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..n).collect();
        // lower group [lo, lo+a) trades places with upper group [lo+a, lo+a+b)
        let mut exchange = |lo: usize, a: usize, b: usize| {
            for (h, slot) in perm.iter_mut().enumerate().skip(lo).take(a + b) {
                *slot = if h < lo + a { h + b } else { h - a };
            }
        };
        match *self {
            BasicBlock::X(i) => exchange(i, 1, 1),
            BasicBlock::S => exchange(0, 1, n - 1),
            BasicBlock::Z => exchange(0, n - 1, 1),
            BasicBlock::Xg { i, k, l } | BasicBlock::Sg { i, k, l } => exchange(i, k, l),
            BasicBlock::Zg { i, k, l } => exchange(i, l, k),
        }
        perm
    }
}

impl fmt::Display for BasicBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BasicBlock::X(i) => write!(f, "X{i}"),
            BasicBlock::S => write!(f, "S"),
            BasicBlock::Z => write!(f, "Z"),
            BasicBlock::Xg { i, k, l } => write!(f, "Xg:{i},{k},{l}"),
            BasicBlock::Sg { i, k, l } => write!(f, "Sg:{i},{k},{l}"),
            BasicBlock::Zg { i, k, l } => write!(f, "Zg:{i},{k},{l}"),
        }
    }
}

impl FromStr for BasicBlock {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("unknown block token {s:?}"));
        match s {
            "S" => return Ok(BasicBlock::S),
            "Z" => return Ok(BasicBlock::Z),
            _ => {}
        }
        if let Some((head, args)) = s.split_once(':') {
            let v: Vec<usize> =
                args.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| bad())).collect::<Result<_>>()?;
            let [i, k, l] = v[..] else { return Err(bad()) };
            return match head {
                "Xg" => Ok(BasicBlock::Xg { i, k, l }),
                "Sg" => Ok(BasicBlock::Sg { i, k, l }),
                "Zg" => Ok(BasicBlock::Zg { i, k, l }),
                _ => Err(bad()),
            };
        }
        match s.strip_prefix('X') {
            Some(i) if !i.is_empty() => i.parse().map(BasicBlock::X).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

impl Serialize for BasicBlock {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BasicBlock {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn check_orientation(n: usize, orient: &[i8]) -> Result<()> {
    if orient.len() != n {
        return Err(Error::OrientationMismatch(format!("{} directions given for {} strands", orient.len(), n)));
    }
    if orient.iter().any(|&o| o != 1 && o != -1) {
        return Err(Error::OrientationMismatch("directions must be +1 or -1".into()));
    }
    Ok(())
}

fn crossing(stats: &mut DiagramStats, letter_sign: i64, oa: i8, ob: i8) {
    if letter_sign * (oa as i64) * (ob as i64) > 0 {
        stats.xp += 1;
    } else {
        stats.xm += 1;
    }
}

// one strand looping through `others`; an S-type loop moving right has up cusps, a Z-type loop down cusps
fn loop_stats(stats: &mut DiagramStats, s_type: bool, looper: i8, others: &[i8]) {
    if s_type == (looper > 0) {
        stats.u += 2;
    } else {
        stats.d += 2;
    }
    stats.c += 2;
    for &o in others {
        crossing(stats, -1, looper, o);
    }
}

/// Census of a single block given the strand directions (by height) at its left edge.
pub fn block_stats(b: &BasicBlock, orient: &[i8]) -> Result<DiagramStats> {
    let n = orient.len();
    check_orientation(n, orient)?;
    b.check(n)?;
    let mut st = DiagramStats::default();
    match *b {
        BasicBlock::X(i) => crossing(&mut st, 1, orient[i], orient[i + 1]),
        BasicBlock::S => loop_stats(&mut st, true, orient[0], &orient[1..]),
        BasicBlock::Z => loop_stats(&mut st, false, orient[n - 1], &orient[..n - 1]),
        BasicBlock::Xg { i, k, l } => {
            for a in i..i + k {
                for bb in i + k..i + k + l {
                    crossing(&mut st, 1, orient[a], orient[bb]);
                }
            }
        }
        BasicBlock::Sg { i, k, l } => {
            for a in i..i + k {
                loop_stats(&mut st, true, orient[a], &orient[i + k..i + k + l]);
            }
        }
        BasicBlock::Zg { i, k, l } => {
            for a in i + l..i + l + k {
                loop_stats(&mut st, false, orient[a], &orient[i..i + l]);
            }
        }
    }
    Ok(st)
}

fn transport(perm: &[usize], orient: &[i8]) -> Vec<i8> {
    let mut out = vec![0; orient.len()];
    for (h, &o) in orient.iter().enumerate() {
        out[perm[h]] = o;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawLegWord", into = "RawLegWord")]
pub struct LegWord {
    n: usize,
    orient: Vec<i8>,
    closed: bool,
    blocks: Vec<BasicBlock>,
}

#[derive(Serialize, Deserialize)]
struct RawLegWord {
    n: usize,
    orient: Vec<i8>,
    closed: bool,
    blocks: Vec<BasicBlock>,
}

impl TryFrom<RawLegWord> for LegWord {
    type Error = Error;

    fn try_from(r: RawLegWord) -> Result<Self> {
        LegWord::new(r.n, r.orient, r.closed, r.blocks)
    }
}

impl From<LegWord> for RawLegWord {
    fn from(w: LegWord) -> Self {
        RawLegWord { n: w.n, orient: w.orient, closed: w.closed, blocks: w.blocks }
    }
}

impl LegWord {
    pub fn new(n: usize, orient: Vec<i8>, closed: bool, blocks: Vec<BasicBlock>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("a word needs at least one strand".into()));
        }
        check_orientation(n, &orient)?;
        for b in &blocks {
            b.check(n)?;
        }
        let w = LegWord { n, orient, closed, blocks };
        if closed && w.exit_orientation() != w.orient {
            return Err(Error::OrientationMismatch("closing the word joins strands of opposite direction".into()));
        }
        Ok(w)
    }

    pub fn open(n: usize, orient: Vec<i8>, blocks: Vec<BasicBlock>) -> Result<Self> {
        LegWord::new(n, orient, false, blocks)
    }

    /// Open word with every strand running along the longitude.
    pub fn parallel(n: usize, blocks: Vec<BasicBlock>) -> Result<Self> {
        LegWord::new(n, vec![1; n], false, blocks)
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn orientation(&self) -> &[i8] {
        &self.orient
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn blocks(&self) -> &[BasicBlock] {
        &self.blocks
    }

    pub fn close(&self) -> Result<LegWord> {
        LegWord::new(self.n, self.orient.clone(), true, self.blocks.clone())
    }

    pub fn permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.n).collect();
        for b in &self.blocks {
            let p = b.permutation(self.n);
            for h in perm.iter_mut() {
                *h = p[*h];
            }
        }
        perm
    }

    pub fn exit_orientation(&self) -> Vec<i8> {
        transport(&self.permutation(), &self.orient)
    }

    /// Concatenation; the right word's entry directions must match this word's exit.
    pub fn concat(&self, other: &LegWord) -> Result<LegWord> {
        if self.n != other.n {
            return Err(Error::StrandMismatch(self.n, other.n));
        }
        if self.exit_orientation() != other.orient {
            return Err(Error::OrientationMismatch("boundary directions differ".into()));
        }
        let mut blocks = self.blocks.clone();
        blocks.extend_from_slice(&other.blocks);
        LegWord::new(self.n, self.orient.clone(), false, blocks)
    }

    /// Rotates a closed word, moving the first `k` blocks to the end.
    pub fn rotate(&self, k: usize) -> Result<LegWord> {
        if self.blocks.is_empty() {
            return Ok(self.clone());
        }
        let k = k % self.blocks.len();
        let head = LegWord::new(self.n, self.orient.clone(), false, self.blocks[..k].to_vec())?;
        let mut blocks = self.blocks[k..].to_vec();
        blocks.extend_from_slice(&self.blocks[..k]);
        LegWord::new(self.n, head.exit_orientation(), self.closed, blocks)
    }
}

impl fmt::Display for LegWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "1");
        }
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Summed block census; wp/wm count strands with/against the longitude.
pub fn word_stats(w: &LegWord) -> Result<DiagramStats> {
    let mut orient = w.orient.clone();
    let mut total = DiagramStats {
        wp: orient.iter().filter(|&&o| o > 0).count() as i64,
        wm: orient.iter().filter(|&&o| o < 0).count() as i64,
        ..DiagramStats::default()
    };
    for b in &w.blocks {
        total += block_stats(b, &orient)?;
        orient = transport(&b.permutation(w.n), &orient);
    }
    Ok(total)
}

/// (reltb, relrot). Blocks carry cusps in like-oriented pairs, so both are integers.
pub fn word_invariants(w: &LegWord) -> (i64, i64) {
    let st = word_stats(w).expect("validated word");
    (st.reltb().integer().expect("even cusp count"), st.relrot().integer().expect("paired cusps"))
}

fn single_loop_s(n: usize, h: usize, l: usize, out: &mut Vec<BasicBlock>) {
    out.extend((0..h).rev().map(BasicBlock::X));
    out.push(BasicBlock::S);
    out.extend((h + l..n - 1).rev().map(BasicBlock::X));
}

fn single_loop_z(n: usize, h: usize, l: usize, out: &mut Vec<BasicBlock>) {
    out.extend((h + l..n - 1).map(BasicBlock::X));
    out.push(BasicBlock::Z);
    out.extend((0..h).map(BasicBlock::X));
}

/// Expansion of one block over {X(i), S, Z} on `n` strands.
pub fn expand_block(b: &BasicBlock, n: usize) -> Result<Vec<BasicBlock>> {
    b.check(n)?;
    let mut out = Vec::new();
    match *b {
        BasicBlock::X(_) | BasicBlock::S | BasicBlock::Z => out.push(*b),
        BasicBlock::Xg { i, k, l } => {
            for j in 0..l {
                for s in (0..k).rev() {
                    out.push(BasicBlock::X(i + j + s));
                }
            }
        }
        BasicBlock::Sg { i, k, l } => {
            for j in 0..k {
                single_loop_s(n, i + k - 1 - j, l, &mut out);
            }
        }
        BasicBlock::Zg { i, k, l } => {
            for j in 0..k {
                single_loop_z(n, i + j, l, &mut out);
            }
        }
    }
    Ok(out)
}

pub fn simplify(w: &LegWord) -> LegWord {
    let mut blocks = Vec::new();
    for b in &w.blocks {
        blocks.extend(expand_block(b, w.n).expect("validated word"));
    }
    LegWord { n: w.n, orient: w.orient.clone(), closed: w.closed, blocks }
}

/// X(i) -> sigma_{i+1}; Z -> sigma_{n-1}^-1...sigma_1^-1 (top strand down);
/// S -> sigma_1^-1...sigma_{n-1}^-1 (bottom strand up).
pub fn underlying_braid(w: &LegWord) -> BraidWord {
    let n = w.n;
    let mut letters = Vec::new();
    for b in &simplify(w).blocks {
        match *b {
            BasicBlock::X(i) => letters.push(BraidLetter::pos(i + 1)),
            BasicBlock::S => letters.extend((1..n).map(BraidLetter::neg)),
            BasicBlock::Z => letters.extend((1..n).rev().map(BraidLetter::neg)),
            _ => unreachable!("simplify leaves only basic blocks"),
        }
    }
    BraidWord::new(n, letters).expect("indices within range")
}

fn prefix_orientation(n: usize, prefix: &[BasicBlock], exit: &[i8]) -> Vec<i8> {
    let mut perm: Vec<usize> = (0..n).collect();
    for b in prefix {
        let p = b.permutation(n);
        for h in perm.iter_mut() {
            *h = p[*h];
        }
    }
    // entry direction at h is the exit direction where that strand lands
    (0..n).map(|h| exit[perm[h]]).collect()
}

/// Prepends Z^z S^s (the image of the pattern under zeta^z sigma^s).
pub fn prefix_zeta_sigma(w: &LegWord, z: usize, s: usize) -> Result<LegWord> {
    if w.closed {
        return Err(Error::ClosedWord);
    }
    let mut blocks = vec![BasicBlock::Z; z];
    blocks.extend(std::iter::repeat_n(BasicBlock::S, s));
    let orient = prefix_orientation(w.n, &blocks, &w.orient);
    blocks.extend_from_slice(&w.blocks);
    LegWord::new(w.n, orient, false, blocks)
}

/// Greedy split of a leading Z^z S^s prefix.
pub fn factor_zeta_sigma(w: &LegWord) -> Result<(usize, usize, LegWord)> {
    if w.closed {
        return Err(Error::ClosedWord);
    }
    let z = w.blocks.iter().take_while(|b| **b == BasicBlock::Z).count();
    let s = w.blocks[z..].iter().take_while(|b| **b == BasicBlock::S).count();
    let head = LegWord::new(w.n, w.orient.clone(), false, w.blocks[..z + s].to_vec())?;
    let rest = LegWord::new(w.n, head.exit_orientation(), false, w.blocks[z + s..].to_vec())?;
    Ok((z, s, rest))
}

/// Z or S on two anti-parallel strands, labelled by the top strand's direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrientedLetter {
    ZPlus,
    ZMinus,
    SPlus,
    SMinus,
}

impl OrientedLetter {
    pub fn sign(self) -> i8 {
        match self {
            OrientedLetter::ZPlus | OrientedLetter::SPlus => 1,
            OrientedLetter::ZMinus | OrientedLetter::SMinus => -1,
        }
    }

    pub fn is_z(self) -> bool {
        matches!(self, OrientedLetter::ZPlus | OrientedLetter::ZMinus)
    }

    pub fn new(is_z: bool, sign: i8) -> Self {
        match (is_z, sign > 0) {
            (true, true) => OrientedLetter::ZPlus,
            (true, false) => OrientedLetter::ZMinus,
            (false, true) => OrientedLetter::SPlus,
            (false, false) => OrientedLetter::SMinus,
        }
    }

    pub fn block(self) -> BasicBlock {
        if self.is_z() {
            BasicBlock::Z
        } else {
            BasicBlock::S
        }
    }
}

impl fmt::Display for OrientedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OrientedLetter::ZPlus => "Z+",
            OrientedLetter::ZMinus => "Z-",
            OrientedLetter::SPlus => "S+",
            OrientedLetter::SMinus => "S-",
        };
        f.write_str(s)
    }
}

/// Two-strand anti-parallel open word for a sequence of labelled letters.
pub fn oriented_word(letters: &[OrientedLetter]) -> Result<LegWord> {
    let top = letters.first().map_or(1, |l| l.sign());
    let w = LegWord::open(2, vec![-top, top], letters.iter().map(|l| l.block()).collect())?;
    if oriented_letters(&w)? != letters {
        return Err(Error::OrientationMismatch("letter signs must alternate".into()));
    }
    Ok(w)
}

pub fn oriented_letters(w: &LegWord) -> Result<Vec<OrientedLetter>> {
    if w.n != 2 || w.orient[0] == w.orient[1] {
        return Err(Error::OrientationMismatch("labelled letters need two anti-parallel strands".into()));
    }
    let mut top = w.orient[1];
    let mut out = Vec::new();
    for b in &w.blocks {
        let is_z = match b {
            BasicBlock::Z => true,
            BasicBlock::S => false,
            _ => return Err(Error::InvalidInput(format!("block {b} is not S or Z"))),
        };
        out.push(OrientedLetter::new(is_z, top));
        top = -top;
    }
    Ok(out)
}

// Clasp of the Whitehead pattern closing a two-strand anti-parallel box.
pub const EVEN_CLASP: DiagramStats = DiagramStats { u: 1, d: 1, c: 2, xp: 2, xm: 0, wp: 0, wm: 0 };
// odd clasp entered with the top strand running along the longitude; the other direction swaps u and d
pub const ODD_CLASP: DiagramStats = DiagramStats { u: 0, d: 2, c: 2, xp: 0, xm: 2, wp: 0, wm: 0 };

pub fn clasp_stats(odd: bool, top: i8) -> DiagramStats {
    match (odd, top > 0) {
        (false, _) => EVEN_CLASP,
        (true, true) => ODD_CLASP,
        (true, false) => DiagramStats { u: ODD_CLASP.d, d: ODD_CLASP.u, ..ODD_CLASP },
    }
}

/// Census of the Whitehead pattern obtained by closing an anti-parallel box with the clasp.
pub fn whitehead_stats(boxw: &LegWord) -> Result<DiagramStats> {
    if boxw.n != 2 || boxw.orient[0] == boxw.orient[1] {
        return Err(Error::OrientationMismatch("the twist box needs two anti-parallel strands".into()));
    }
    if boxw.closed {
        return Err(Error::ClosedWord);
    }
    let mut st = word_stats(boxw)?;
    let top = boxw.exit_orientation()[1];
    st += clasp_stats(boxw.blocks.len() % 2 == 1, top);
    st.wp = 0;
    st.wm = 0;
    Ok(st)
}

pub fn whitehead_invariants(boxw: &LegWord) -> Result<(i64, i64)> {
    let st = whitehead_stats(boxw)?;
    Ok((st.reltb().integer().expect("integral"), st.relrot().integer().expect("integral")))
}

/// Every maximal box word for m half twists: X0^m for m >= 0, all {S,Z} words of length |m| for m < 0,
/// each with both choices of the top direction.
pub fn whitehead_maximal_boxes(m: i64) -> Vec<LegWord> {
    let mut out = Vec::new();
    for top in [1i8, -1] {
        if m >= 0 {
            let blocks = vec![BasicBlock::X(0); m as usize];
            out.push(LegWord::open(2, vec![-top, top], blocks).expect("fits"));
        } else {
            let len = m.unsigned_abs() as usize;
            for mask in 0u64..(1u64 << len) {
                let blocks = (0..len).map(|p| if mask >> p & 1 == 1 { BasicBlock::Z } else { BasicBlock::S }).collect();
                out.push(LegWord::open(2, vec![-top, top], blocks).expect("fits"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::positive_monoid_equivalent;
    use BasicBlock::*;

    fn st(u: i64, d: i64, xp: i64, xm: i64) -> DiagramStats {
        DiagramStats { u, d, c: u + d, xp, xm, wp: 0, wm: 0 }
    }

    #[test]
    fn block_stats_examples() {
        assert_eq!(block_stats(&X(0), &[1, 1]).unwrap(), st(0, 0, 1, 0));
        assert_eq!(block_stats(&S, &[1, 1]).unwrap(), st(2, 0, 0, 1));
        assert_eq!(block_stats(&X(0), &[-1, 1]).unwrap(), st(0, 0, 0, 1));
        assert!(matches!(block_stats(&X(0), &[1, 1, 1][..1]), Err(Error::InvalidInput(_))));
        assert!(matches!(block_stats(&X(0), &[1, 0]), Err(Error::OrientationMismatch(_))));
    }

    #[test]
    fn parallel_table() {
        for n in 1..6usize {
            let par = vec![1; n];
            let s = block_stats(&S, &par).unwrap();
            let z = block_stats(&Z, &par).unwrap();
            assert_eq!((s.reltb(), s.relrot()), ((-(n as i64)).into(), (-1).into()));
            assert_eq!((z.reltb(), z.relrot()), ((-(n as i64)).into(), 1.into()));
            if n >= 2 {
                let x = block_stats(&X(n - 2), &par).unwrap();
                assert_eq!((x.reltb(), x.relrot()), (1.into(), 0.into()));
            }
        }
    }

    #[test]
    fn word_invariant_examples() {
        let xxx = LegWord::parallel(2, vec![X(0); 3]).unwrap();
        assert_eq!(word_invariants(&xxx), (3, 0));
        assert_eq!(word_invariants(&LegWord::parallel(3, vec![]).unwrap()), (0, 0));
        let sz = LegWord::new(2, vec![1, 1], true, vec![S, Z]).unwrap();
        assert_eq!(word_invariants(&sz), (-4, 0));
    }

    #[test]
    fn closed_word_orientation_check() {
        assert!(LegWord::new(2, vec![1, -1], true, vec![X(0)]).is_err());
        assert!(LegWord::new(2, vec![1, -1], true, vec![X(0), X(0)]).is_ok());
        assert!(LegWord::new(2, vec![1, 1, 1], false, vec![]).is_err());
    }

    #[test]
    fn simplify_examples() {
        let w = LegWord::parallel(3, vec![Xg { i: 0, k: 2, l: 1 }]).unwrap();
        let s = simplify(&w);
        assert_eq!(s.blocks(), &[X(1), X(0)]);
        assert_eq!(word_invariants(&s), (2, 0));
        let w = LegWord::parallel(4, vec![Sg { i: 0, k: 1, l: 3 }]).unwrap();
        assert_eq!(simplify(&w).blocks(), &[S]);
        let w = LegWord::parallel(3, vec![Zg { i: 0, k: 2, l: 1 }]).unwrap();
        let s = simplify(&w);
        assert_eq!(s.blocks().iter().filter(|b| **b == Z).count(), 2);
        assert_eq!(s.blocks().len(), 4);
        assert_eq!(word_invariants(&s), word_invariants(&w));
        assert_eq!(s.permutation(), w.permutation());
    }

    #[test]
    fn underlying_braid_examples() {
        let w = LegWord::parallel(2, vec![X(0), X(0)]).unwrap();
        assert_eq!(underlying_braid(&w).to_signed(), vec![1, 1]);
        assert_eq!(underlying_braid(&LegWord::parallel(2, vec![S]).unwrap()).to_signed(), vec![-1]);
        let zs = LegWord::parallel(2, vec![Z, S]).unwrap();
        assert_eq!(underlying_braid(&zs).to_signed(), vec![-1, -1]);
        let z = LegWord::parallel(4, vec![Z]).unwrap();
        assert_eq!(underlying_braid(&z).to_signed(), vec![-3, -2, -1]);
    }

    #[test]
    fn braid_permutation_agrees() {
        let w = LegWord::parallel(4, vec![S, X(1), Z, Xg { i: 1, k: 2, l: 1 }, Sg { i: 1, k: 1, l: 2 }]).unwrap();
        assert_eq!(underlying_braid(&w).permutation(), w.permutation());
    }

    #[test]
    fn xg_expansion_is_positive_grid() {
        let w = LegWord::parallel(5, vec![Xg { i: 1, k: 2, l: 2 }]).unwrap();
        let s = simplify(&w);
        assert_eq!(s.blocks().len(), 4);
        let direct = LegWord::parallel(5, vec![X(2), X(1), X(3), X(2)]).unwrap();
        assert!(positive_monoid_equivalent(&underlying_braid(&s), &underlying_braid(&direct)).unwrap());
    }

    #[test]
    fn prefix_examples() {
        let e = LegWord::parallel(2, vec![]).unwrap();
        assert_eq!(prefix_zeta_sigma(&e, 1, 0).unwrap().blocks(), &[Z]);
        let xx = LegWord::parallel(2, vec![X(0), X(0)]).unwrap();
        let p = prefix_zeta_sigma(&xx, 0, 2).unwrap();
        assert_eq!(p.blocks(), &[S, S, X(0), X(0)]);
        assert_eq!(word_invariants(&p).0, -2);
        let z = LegWord::parallel(2, vec![Z]).unwrap();
        let p = prefix_zeta_sigma(&z, 0, 1).unwrap();
        assert_eq!(p.blocks(), &[S, Z]);
        assert_eq!(word_invariants(&p).1, 0);
        assert_eq!(prefix_zeta_sigma(&z.close().unwrap(), 1, 1), Err(Error::ClosedWord));
    }

    #[test]
    fn factor_examples() {
        let w = LegWord::parallel(2, vec![Z, Z, S, X(0)]).unwrap();
        let (z, s, rest) = factor_zeta_sigma(&w).unwrap();
        assert_eq!((z, s, rest.blocks()), (2, 1, &[X(0)][..]));
        let w = LegWord::parallel(2, vec![X(0), Z]).unwrap();
        let (z, s, rest) = factor_zeta_sigma(&w).unwrap();
        assert_eq!((z, s, rest.blocks()), (0, 0, &[X(0), Z][..]));
        let w = LegWord::parallel(2, vec![S, Z]).unwrap();
        let (z, s, rest) = factor_zeta_sigma(&w).unwrap();
        assert_eq!((z, s, rest.blocks()), (0, 1, &[Z][..]));
    }

    #[test]
    fn factor_then_prefix_roundtrip_mixed() {
        let w = LegWord::open(3, vec![1, -1, 1], vec![Z, S, S, X(1), Z]).unwrap();
        let (z, s, rest) = factor_zeta_sigma(&w).unwrap();
        assert_eq!(prefix_zeta_sigma(&rest, z, s).unwrap(), w);
    }

    #[test]
    fn oriented_letters_alternate() {
        use OrientedLetter::*;
        let w = oriented_word(&[ZPlus, SMinus, SPlus]).unwrap();
        assert_eq!(w.orientation(), &[-1, 1]);
        assert_eq!(oriented_letters(&w).unwrap(), vec![ZPlus, SMinus, SPlus]);
        assert!(oriented_word(&[ZPlus, SPlus]).is_err());
        // a labelled letter contributes reltb 0 and relrot equal to its sign
        for l in [ZPlus, ZMinus, SPlus, SMinus] {
            assert_eq!(word_invariants(&oriented_word(&[l]).unwrap()), (0, l.sign() as i64));
        }
    }

    #[test]
    fn whitehead_pinning() {
        for m in -7i64..=7 {
            let expected: Vec<(i64, i64)> = match (m >= 0, m.rem_euclid(2) == 0) {
                (true, true) => vec![(1 - m, 0)],
                (true, false) => vec![(-m - 3, 1), (-m - 3, -1)],
                (false, false) => vec![(-3, 0)],
                (false, true) => vec![(1, 0)],
            };
            let mut seen = std::collections::BTreeSet::new();
            for b in whitehead_maximal_boxes(m) {
                let inv = whitehead_invariants(&b).unwrap();
                assert!(expected.contains(&inv), "m={m} box {b} gave {inv:?}");
                seen.insert(inv);
            }
            assert_eq!(seen.len(), expected.len(), "m={m}");
        }
    }

    #[test]
    fn block_json_tokens() {
        let w = LegWord::parallel(3, vec![X(0), S, Z, Xg { i: 1, k: 1, l: 1 }]).unwrap();
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"n":3,"orient":[1,1,1],"closed":false,"blocks":["X0","S","Z","Xg:1,1,1"]}"#);
        assert_eq!(serde_json::from_str::<LegWord>(&s).unwrap(), w);
        assert!("Q".parse::<BasicBlock>().is_err());
        assert!("Xg:1,2".parse::<BasicBlock>().is_err());
        assert!("X".parse::<BasicBlock>().is_err());
    }

    #[test]
    fn stabilization_shifts() {
        let s = DiagramStats::default();
        assert_eq!((s.stabilize(1).reltb(), s.stabilize(1).relrot()), ((-1).into(), 1.into()));
        assert_eq!((s.stabilize(-1).reltb(), s.stabilize(-1).relrot()), ((-1).into(), (-1).into()));
    }
}
