use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::braid::{full_twist, writhe, BraidWord};
use crate::error::{Error, Result};

use super::profile::{valleys, KnotProfile, ValleyData};
use super::table::ClassTable;

/// Rows emitted below the maximal tb unless the caller asks otherwise (six rows in total).
pub const DEFAULT_DEPTH: i64 = 5;

const WINDING_ZERO_FLAGS: [&str; 5] =
    ["legendrian_simple", "uniformly_thick", "no_unoriented_symmetry", "self_mirror", "oriented_symmetry"];
const WINDING_FLAGS: [&str; 3] = ["legendrian_simple", "uniformly_thick", "no_unoriented_symmetry"];
const SIMPLE_FLAGS: [&str; 2] = ["legendrian_simple", "uniformly_thick"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RangeKind {
    Legendrian,
    Transverse,
}

/// Counts per (tb, rot), or per sl for transverse ranges (stored with rot 0).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawRange", into = "RawRange")]
pub struct MountainRange {
    kind: RangeKind,
    max: i64,
    entries: BTreeMap<(i64, i64), i64>,
}

#[derive(Serialize, Deserialize)]
struct RawEntry {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    tb: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    rot: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    sl: Option<i64>,
    count: i64,
}

#[derive(Serialize, Deserialize)]
struct RawRange {
    kind: RangeKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    max_tb: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    max_sl: Option<i64>,
    entries: Vec<RawEntry>,
}

impl TryFrom<RawRange> for MountainRange {
    type Error = Error;

    fn try_from(raw: RawRange) -> Result<Self> {
        let bad = |what: &str| Error::InvalidInput(format!("range entry is missing {what}"));
        match raw.kind {
            RangeKind::Legendrian => {
                let max = raw.max_tb.ok_or_else(|| bad("max_tb"))?;
                let mut entries = BTreeMap::new();
                for e in raw.entries {
                    entries.insert((e.tb.ok_or_else(|| bad("tb"))?, e.rot.ok_or_else(|| bad("rot"))?), e.count);
                }
                MountainRange::legendrian(max, entries)
            }
            RangeKind::Transverse => {
                let max = raw.max_sl.ok_or_else(|| bad("max_sl"))?;
                let mut by_sl = BTreeMap::new();
                for e in raw.entries {
                    by_sl.insert(e.sl.ok_or_else(|| bad("sl"))?, e.count);
                }
                MountainRange::transverse(max, by_sl)
            }
        }
    }
}

impl From<MountainRange> for RawRange {
    fn from(r: MountainRange) -> Self {
        let legendrian = r.kind == RangeKind::Legendrian;
        let entries = r
            .rows()
            .into_iter()
            .map(|(tb, rot, count)| {
                if legendrian {
                    RawEntry { tb: Some(tb), rot: Some(rot), sl: None, count }
                } else {
                    RawEntry { tb: None, rot: None, sl: Some(tb), count }
                }
            })
            .collect();
        RawRange { kind: r.kind, max_tb: legendrian.then_some(r.max), max_sl: (!legendrian).then_some(r.max), entries }
    }
}

impl MountainRange {
    pub fn legendrian(max_tb: i64, entries: BTreeMap<(i64, i64), i64>) -> Result<Self> {
        MountainRange::checked(RangeKind::Legendrian, max_tb, entries)
    }

    pub fn transverse(max_sl: i64, entries: BTreeMap<i64, i64>) -> Result<Self> {
        MountainRange::checked(RangeKind::Transverse, max_sl, entries.into_iter().map(|(s, c)| ((s, 0), c)).collect())
    }

    fn checked(kind: RangeKind, max: i64, entries: BTreeMap<(i64, i64), i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("a range needs at least one entry".into()));
        }
        if let Some((&(t, r), &c)) = entries.iter().find(|(&(t, _), &c)| t > max || c < 1) {
            return Err(Error::InvalidInput(format!("entry ({t}, {r}) -> {c} is above the maximum or not positive")));
        }
        Ok(MountainRange { kind, max, entries })
    }

    pub fn kind(&self) -> RangeKind {
        self.kind
    }

    /// Maximal tb (or sl for transverse ranges).
    pub fn max_tb(&self) -> i64 {
        self.max
    }

    pub fn count(&self, tb: i64, rot: i64) -> i64 {
        self.entries.get(&(tb, rot)).copied().unwrap_or(0)
    }

    pub fn sl_count(&self, sl: i64) -> i64 {
        self.count(sl, 0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// (tb or sl, rot, count) with tb descending and rot ascending.
    pub fn rows(&self) -> Vec<(i64, i64, i64)> {
        let mut out: Vec<(i64, i64, i64)> = self.entries.iter().map(|(&(t, r), &c)| (t, r, c)).collect();
        out.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        out
    }

    /// Counts of one tb row, rot ascending.
    pub fn row(&self, tb: i64) -> Vec<i64> {
        self.entries.range((tb, i64::MIN)..=(tb, i64::MAX)).map(|(_, &c)| c).collect()
    }
}

/// General count of satellite classes at (t, r) from the pattern table of the
/// family twisted by -t_bar.
pub fn count_general(profile: &KnotProfile, table: &dyn ClassTable, winding: i64, t: i64, r: i64) -> Result<i64> {
    if winding == 0 {
        profile.flags.require(&WINDING_ZERO_FLAGS)?;
    } else {
        profile.flags.require(&WINDING_FLAGS)?;
    }
    if !table.injectivity_hypothesis() {
        return Err(Error::HypothesisNotDeclared { missing: "sigma/zeta image injectivity".into() });
    }
    let v = valleys(profile)?;
    let tb = profile.t_bar;
    let n = winding;
    let total = if n != 0 {
        let peaks: i64 = profile.peak_rots.iter().map(|&ri| table.count(t - n * n * tb, r - n * ri)).sum();
        let valleys: i64 =
            v.depths.iter().zip(&v.rots).map(|(&d, &rv)| table.sigma_image(d, t - n * n * (tb - d), r - n * rv)).sum();
        peaks - valleys
    } else {
        let k = v.k as i64;
        let full = (k + 1) / 2 * table.count(t, r);
        let middle = if k % 2 == 0 { table.f_quotient(t, r) } else { 0 };
        let valleys: i64 = v.depths.iter().take(v.k / 2).map(|&d| table.sigma_image(d, t, r)).sum();
        full + middle - valleys
    };
    if total < 0 {
        return Err(Error::NegativeCount { t, r, count: total });
    }
    Ok(total)
}

// closed forms for Whitehead doubles, organised by the twisted clasp parameter M = m - 2 t_bar
struct WhiteheadForms {
    t_bar: i64,
    m: i64,
    v: ValleyData,
    big_k: i64,
}

impl WhiteheadForms {
    fn new(profile: &KnotProfile, m: i64) -> Result<Self> {
        profile.flags.require(&WINDING_ZERO_FLAGS)?;
        let v = valleys(profile)?;
        let big_k = (v.k as i64 + 2) / 2;
        Ok(WhiteheadForms { t_bar: profile.t_bar, m, v, big_k })
    }

    fn twisted(&self) -> i64 {
        self.m - 2 * self.t_bar
    }

    fn max_tb(&self) -> i64 {
        let big_m = self.twisted();
        match (big_m >= 0, big_m % 2 == 0) {
            (true, true) => 2 * self.t_bar - self.m + 1,
            (true, false) => 2 * self.t_bar - self.m - 3,
            (false, false) => -3,
            (false, true) => 1,
        }
    }

    fn max_sl(&self) -> i64 {
        let big_m = self.twisted();
        match (big_m >= 0, big_m % 2 == 0) {
            (true, true) => 2 * self.t_bar - self.m + 1,
            (true, false) => 2 * self.t_bar - self.m - 2,
            (false, false) => -3,
            (false, true) => 1,
        }
    }

    // maximal class with the largest sl, as (tb, rot)
    fn sl_peak(&self) -> (i64, i64) {
        let big_m = self.twisted();
        let top = self.max_tb();
        if big_m > 0 && big_m % 2 != 0 {
            (top, -1)
        } else {
            (top, 0)
        }
    }

    fn s(&self, lo: i64, hi: i64) -> i64 {
        self.v.n_sum(lo, hi)
    }

    fn count(&self, t: i64, r: i64) -> i64 {
        let (tb, m, kk) = (self.t_bar, self.m, self.big_k);
        let k = self.v.k as i64;
        let big_m = self.twisted();
        // stabilizations (positive, negative) below an apex at (apex, 0)
        let stabs = |apex: i64| -> Option<(i64, i64)> {
            let a = apex - t;
            (a >= 0 && r.abs() <= a && (a - r) % 2 == 0).then(|| ((a + r) / 2, (a - r) / 2))
        };
        // common stabilizations below the pair of peaks at (top, +-1)
        let side_depth = |top: i64| -> Option<i64> {
            let a = top - t;
            let e = (r.abs() - 1).abs();
            (a >= 0 && e <= a && (a - e) % 2 == 0).then_some((a - e) / 2)
        };
        if big_m >= 0 && big_m % 2 == 0 {
            let p = 2 * tb - m + 1;
            match stabs(p) {
                Some((0, 0)) => k + 1,
                Some((a1, a2)) => kk - self.s(1, a1.min(a2)),
                None => 0,
            }
        } else if big_m > 0 {
            match side_depth(2 * tb - m - 3) {
                Some(h) => kk - self.s(1, h),
                None => 0,
            }
        } else if big_m % 2 != 0 {
            let l = (2 * tb - m) / 2;
            if t == -3 && r == 0 {
                let sum: i64 = (1..=l).map(|d| self.v.n(d) * (2 * tb - 2 * d - m + 1)).sum();
                return (k + 1) * (2 * tb - m + 1) / 2 - sum;
            }
            match side_depth(-4) {
                Some(h) => kk - self.s(1, l) - self.s(l + 1, h),
                None => 0,
            }
        } else {
            let l = (2 * tb - m) / 2;
            let big_n = l + 1;
            match stabs(1) {
                Some((0, 0)) => {
                    let sum: i64 = (1..l).map(|d| self.v.n(d) * (big_n - d) * (big_n - d)).sum();
                    ((k + 1) * big_n * big_n + 1) / 2 - sum - 2 * self.v.n(l)
                }
                Some((a1, a2)) if a1 == 0 || a2 == 0 => {
                    kk * big_n - (1..=l).map(|d| self.v.n(d) * (big_n - d)).sum::<i64>()
                }
                Some((a1, a2)) => kk - self.s(1, l) - self.s(l + 1, a1.min(a2)),
                None => 0,
            }
        }
    }

    // transverse classes at sl = max_sl - 2a
    fn transverse(&self, a: i64) -> i64 {
        let (tb, m, kk) = (self.t_bar, self.m, self.big_k);
        let big_m = self.twisted();
        if big_m >= 0 {
            kk - self.s(1, a)
        } else if big_m % 2 != 0 {
            let l = (2 * tb - m) / 2;
            kk - self.s(1, l) - self.s(l + 1, a)
        } else {
            let l = (2 * tb - m) / 2;
            if a == 0 {
                let lead = kk * ((2 * tb - m) / 2 + 1);
                lead - (1..=l).map(|d| self.v.n(d) * ((2 * tb - m - 2 * d) / 2 + 1)).sum::<i64>()
            } else {
                kk - self.s(1, l) - self.s(l + 1, a)
            }
        }
    }
}

/// Closed-form count of Legendrian Whitehead doubles at (tb, rot).
pub fn whitehead_double_count(profile: &KnotProfile, m: i64, t: i64, r: i64) -> Result<i64> {
    Ok(WhiteheadForms::new(profile, m)?.count(t, r))
}

pub fn range_whitehead_double(profile: &KnotProfile, m: i64, depth: i64) -> Result<MountainRange> {
    let f = WhiteheadForms::new(profile, m)?;
    let top = f.max_tb();
    let mut entries = BTreeMap::new();
    for t in (top - depth.max(0))..=top {
        let span = top - t + 2;
        for r in -span..=span {
            let c = f.count(t, r);
            if c < 0 {
                return Err(Error::NegativeCount { t, r, count: c });
            }
            if c > 0 {
                entries.insert((t, r), c);
            }
        }
    }
    MountainRange::legendrian(top, entries)
}

/// Transverse count at sl = max_sl - 2a, evaluated from the transverse closed forms.
pub fn transverse_whitehead_value(profile: &KnotProfile, m: i64, a: i64) -> Result<i64> {
    if a < 0 {
        return Err(Error::InvalidInput("a must be nonnegative".into()));
    }
    Ok(WhiteheadForms::new(profile, m)?.transverse(a))
}

/// Legendrian count after a positive and many negative stabilizations of the
/// maximal-sl class, i.e. the class count seen by transverse push-off.
pub fn whitehead_ray_limit(profile: &KnotProfile, m: i64, a: i64) -> Result<i64> {
    let f = WhiteheadForms::new(profile, m)?;
    let (t0, r0) = f.sl_peak();
    let b = a + 2 * (f.v.j + f.twisted().abs() + 2);
    Ok(f.count(t0 - a - b, r0 + a - b))
}

pub fn transverse_whitehead_double(profile: &KnotProfile, m: i64, depth: i64) -> Result<MountainRange> {
    let f = WhiteheadForms::new(profile, m)?;
    let top = f.max_sl();
    let mut entries = BTreeMap::new();
    for a in 0..=depth.max(0) {
        let c = f.transverse(a);
        if c < 0 {
            return Err(Error::NegativeCount { t: top - 2 * a, r: 0, count: c });
        }
        if c > 0 {
            entries.insert(top - 2 * a, c);
        }
    }
    MountainRange::transverse(top, entries)
}

// union of stabilization cones below peaks sharing one tb, each class counted once
fn cone_range(top: i64, rots: &[i64], depth: i64) -> Result<MountainRange> {
    let lo = *rots.iter().min().expect("peaks");
    let hi = *rots.iter().max().expect("peaks");
    let mut entries = BTreeMap::new();
    for t in (top - depth.max(0))..=top {
        let a = top - t;
        for r in (lo - a)..=(hi + a) {
            if rots.iter().any(|&p| (r - p).abs() <= a && (a - (r - p)) % 2 == 0) {
                entries.insert((t, r), 1);
            }
        }
    }
    MountainRange::legendrian(top, entries)
}

/// Closed-form range of the 2-braid satellite with m half twists.
pub fn range_two_braid_satellite(profile: &KnotProfile, m: i64, depth: i64) -> Result<MountainRange> {
    if m % 2 == 0 {
        return Err(Error::EvenM(m));
    }
    profile.flags.require(&SIMPLE_FLAGS)?;
    profile.validate()?;
    let tb = profile.t_bar;
    let (top, mut rots): (i64, Vec<i64>) = if m > 2 * tb {
        (2 * tb + m, profile.peak_rots.iter().map(|r| 2 * r).collect())
    } else {
        let rots = profile
            .peak_rots
            .iter()
            .flat_map(|r| (0..=2 * tb - m).map(move |l| 2 * r + (m - 2 * tb) + 2 * l))
            .collect();
        (2 * m, rots)
    };
    rots.sort();
    rots.dedup();
    cone_range(top, &rots, depth)
}

/// Closed-form range of the (p, q)-cable.
pub fn range_cable(profile: &KnotProfile, p: i64, q: i64, depth: i64) -> Result<MountainRange> {
    let (p, q) = match crate::satellite::PatternSpec::cable(p, q)? {
        crate::satellite::PatternSpec::Cable { p, q } => (p, q),
        _ => unreachable!(),
    };
    profile.flags.require(&SIMPLE_FLAGS)?;
    profile.validate()?;
    let tb = profile.t_bar;
    let (top, mut rots): (i64, Vec<i64>) = if p > tb * q {
        (p * q - p + tb * q, profile.peak_rots.iter().map(|r| q * r).collect())
    } else {
        if q == 1 {
            return Err(Error::Unsupported(format!("integral slope {p} at or below t_bar")));
        }
        // slope of the cable relative to the contact framing
        let p1 = p - tb * q;
        let n = (-p1) / q;
        let e = -p1 - n * q;
        let mut rots = Vec::new();
        for &ri in &profile.peak_rots {
            for j in 0..=n {
                let rot_l = ri - n + 2 * j;
                rots.push(q * rot_l + e);
                rots.push(q * rot_l - e);
            }
        }
        (p * q, rots)
    };
    rots.sort();
    rots.dedup();
    cone_range(top, &rots, depth)
}

/// Maximal self-linking number of the braid satellite (transversely simple).
pub fn transverse_braid_satellite(profile: &KnotProfile, w: &BraidWord) -> Result<(i64, bool)> {
    profile.flags.require(&SIMPLE_FLAGS)?;
    profile.validate()?;
    let n = w.strands() as i64;
    let twisted = w.concat(&full_twist(w.strands(), -profile.t_bar)?)?;
    let r0 = profile.peak_rots[0];
    Ok((n * n * profile.t_bar - n * r0 + writhe(&twisted), true))
}
