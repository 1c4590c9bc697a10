use serde::{Deserialize, Serialize};

use crate::atlas::KnotProfile;
use crate::braid::{self, BraidWord};
use crate::error::{Error, Result};
use crate::legtangle::DiagramStats;

/// A pattern knot type in the solid torus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPattern", into = "RawPattern")]
pub enum PatternSpec {
    Braid(BraidWord),
    TwoBraid { m: i64 },
    Cable { p: i64, q: i64 },
    Whitehead { m: i64 },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
enum RawPattern {
    Braid { n: usize, word: Vec<i64> },
    TwoBraid { m: i64 },
    Cable { p: i64, q: i64 },
    Whitehead { m: i64 },
}

impl TryFrom<RawPattern> for PatternSpec {
    type Error = Error;

    fn try_from(raw: RawPattern) -> Result<Self> {
        match raw {
            RawPattern::Braid { n, word } => PatternSpec::braid(BraidWord::from_signed(n, &word)?),
            RawPattern::TwoBraid { m } => PatternSpec::two_braid(m),
            RawPattern::Cable { p, q } => PatternSpec::cable(p, q),
            RawPattern::Whitehead { m } => Ok(PatternSpec::Whitehead { m }),
        }
    }
}

impl From<PatternSpec> for RawPattern {
    fn from(s: PatternSpec) -> Self {
        match s {
            PatternSpec::Braid(w) => RawPattern::Braid { n: w.strands(), word: w.to_signed() },
            PatternSpec::TwoBraid { m } => RawPattern::TwoBraid { m },
            PatternSpec::Cable { p, q } => RawPattern::Cable { p, q },
            PatternSpec::Whitehead { m } => RawPattern::Whitehead { m },
        }
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl PatternSpec {
    /// Closed braid pattern; its closure must be a knot.
    pub fn braid(w: BraidWord) -> Result<Self> {
        if braid::closure_components(&w) != 1 {
            return Err(Error::InvalidInput(format!("closure of {w} is not a knot")));
        }
        Ok(PatternSpec::Braid(w))
    }

    pub fn two_braid(m: i64) -> Result<Self> {
        if m % 2 == 0 {
            return Err(Error::EvenM(m));
        }
        Ok(PatternSpec::TwoBraid { m })
    }

    /// Cable with coprime (p, q), normalized to q >= 1.
    pub fn cable(p: i64, q: i64) -> Result<Self> {
        if q == 0 || gcd(p, q) != 1 {
            return Err(Error::InvalidInput(format!("cable ({p},{q}) needs gcd 1 and q != 0")));
        }
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        Ok(PatternSpec::Cable { p, q })
    }

    pub fn whitehead(m: i64) -> Self {
        PatternSpec::Whitehead { m }
    }
}

pub fn winding(spec: &PatternSpec) -> i64 {
    match spec {
        PatternSpec::Braid(w) => w.strands() as i64,
        PatternSpec::TwoBraid { .. } => 2,
        PatternSpec::Cable { q, .. } => *q,
        PatternSpec::Whitehead { .. } => 0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternInvariants {
    pub winding: i64,
    pub reltb: i64,
    pub relrot: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompanionInvariants {
    pub tb: i64,
    pub rot: i64,
}

/// (tb, rot) of the satellite.
pub fn satellite_classical(pat: PatternInvariants, comp: CompanionInvariants) -> (i64, i64) {
    let n = pat.winding;
    (n * n * comp.tb + pat.reltb, n * comp.rot + pat.relrot)
}

fn choose2(w: i64) -> i64 {
    w * (w - 1) / 2
}

/// Census of the satellite front: each strand of the pattern runs along a parallel
/// copy of the companion, and the pattern's own cusps and crossings are inserted once.
pub fn compose_stats(pat: DiagramStats, comp: DiagramStats) -> Result<DiagramStats> {
    if comp.wp != 1 || comp.wm != 0 {
        return Err(Error::MultiComponentCompanion);
    }
    let (wp, wm) = (pat.wp, pat.wm);
    let w = wp + wm;
    let u = wp * comp.u + wm * comp.d + pat.u;
    let d = wp * comp.d + wm * comp.u + pat.d;
    Ok(DiagramStats {
        u,
        d,
        c: w * comp.c + pat.c,
        xp: wp * wm * comp.c + (wp * wp + wm * wm) * comp.xp + 2 * wp * wm * comp.xm + pat.xp,
        xm: (choose2(wp) + choose2(wm)) * comp.c + 2 * wp * wm * comp.xp + (wp * wp + wm * wm) * comp.xm + pat.xm,
        wp: 1,
        wm: 0,
    })
}

pub fn self_linking(tb: i64, rot: i64) -> i64 {
    tb - rot
}

/// The satellite self-linking expression exactly as stated: (n^2 tb - n rot) - relsl.
pub fn transverse_satellite_sl(n: i64, tb: i64, rot: i64, relsl: i64) -> i64 {
    (n * n * tb - n * rot) - relsl
}

/// Pattern obtained by k extra full twists.
pub fn twist_pattern(spec: &PatternSpec, k: i64) -> Result<PatternSpec> {
    Ok(match spec {
        PatternSpec::Braid(w) => PatternSpec::Braid(w.concat(&braid::full_twist(w.strands(), k)?)?),
        PatternSpec::TwoBraid { m } => PatternSpec::TwoBraid { m: m + 2 * k },
        PatternSpec::Whitehead { m } => PatternSpec::Whitehead { m: m + 2 * k },
        PatternSpec::Cable { p, q } => PatternSpec::Cable { p: p + k * q, q: *q },
    })
}

pub fn pattern_max_reltb(spec: &PatternSpec) -> Result<i64> {
    Ok(match *spec {
        PatternSpec::Braid(ref w) => {
            if !w.is_positive() {
                return Err(Error::NonPositiveBraid);
            }
            w.len() as i64
        }
        PatternSpec::TwoBraid { m } => {
            if m > 0 {
                m
            } else {
                2 * m
            }
        }
        PatternSpec::Cable { p, q } => {
            if p > 0 {
                p * q - p
            } else {
                p * q
            }
        }
        PatternSpec::Whitehead { m } => match (m >= 0, m.rem_euclid(2) == 0) {
            (true, true) => 1 - m,
            (true, false) => -m - 3,
            (false, false) => -3,
            (false, true) => 1,
        },
    })
}

pub fn max_tb_satellite(profile: &KnotProfile, spec: &PatternSpec) -> Result<i64> {
    if !profile.flags.uniformly_thick {
        return Err(Error::HypothesisNotDeclared { missing: "uniformly_thick".into() });
    }
    let n = winding(spec);
    Ok(n * n * profile.t_bar + pattern_max_reltb(&twist_pattern(spec, -profile.t_bar)?)?)
}
