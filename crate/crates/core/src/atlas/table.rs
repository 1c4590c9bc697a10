use crate::error::{Error, Result};
use crate::satellite::{twist_pattern, PatternSpec};

use super::profile::KnotProfile;

/// Counts of Legendrian pattern classes per (reltb, relrot), together with the
/// image sizes of the reimbeddings sigma^d / zeta^d used by the counting engine.
pub trait ClassTable {
    fn count(&self, t: i64, r: i64) -> i64;
    /// Size of the sigma^d image landing at (t, r), in the coordinates of the
    /// family twisted by d.
    fn sigma_image(&self, d: i64, t: i64, r: i64) -> i64;
    fn zeta_image(&self, d: i64, t: i64, r: i64) -> i64 {
        self.sigma_image(d, t, r)
    }
    /// Classes modulo the orientation-reversing symmetry f.
    fn f_quotient(&self, t: i64, r: i64) -> i64;
    /// Whether sigma^d Q = sigma^d Q' exactly when zeta^d Q = zeta^d Q'.
    fn injectivity_hypothesis(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternTable {
    Whitehead(i64),
    TwoBraid(i64),
    Cable(i64, i64),
}

fn in_cone(peak_t: i64, peak_r: i64, t: i64, r: i64) -> bool {
    let a = peak_t - t;
    a >= 0 && (r - peak_r).abs() <= a && (a - (r - peak_r)) % 2 == 0
}

/// Stabilization counts (positive, negative) from a peak, if (t, r) lies in its cone.
fn stab_counts(peak_t: i64, peak_r: i64, t: i64, r: i64) -> Option<(i64, i64)> {
    in_cone(peak_t, peak_r, t, r).then(|| ((peak_t - t + r - peak_r) / 2, (peak_t - t - r + peak_r) / 2))
}

fn pos_even(m: i64) -> bool {
    m % 2 == 0
}

/// Rotation numbers of the maximal classes of a cable with negative slope.
pub(crate) fn cable_peak_rots(p: i64, q: i64) -> Result<Vec<i64>> {
    if p >= 0 || q < 2 {
        return Err(Error::Unsupported(format!("cable ({p},{q}) has no negative-slope peak set")));
    }
    let n = (-p) / q;
    let mut rots: Vec<i64> = (0..=n)
        .map(|i| -n + 2 * i)
        .flat_map(|k| {
            let v = p + q * (n + k);
            [v, -v]
        })
        .collect();
    rots.sort();
    rots.dedup();
    Ok(rots)
}

impl PatternTable {
    /// Maximal classes as (reltb, relrot, count).
    pub fn peaks(&self) -> Vec<(i64, i64, i64)> {
        match *self {
            PatternTable::Whitehead(m) => match (m >= 0, pos_even(m)) {
                (true, true) => vec![(1 - m, 0, 2)],
                (true, false) => vec![(-m - 3, -1, 1), (-m - 3, 1, 1)],
                (false, false) => vec![(-3, 0, -m + 1)],
                (false, true) => {
                    let n = -m / 2 + 1;
                    vec![(1, 0, n * n)]
                }
            },
            PatternTable::TwoBraid(m) => {
                if m > 0 {
                    vec![(m, 0, 1)]
                } else {
                    (0..=-m).map(|i| (2 * m, m + 2 * i, 1)).collect()
                }
            }
            PatternTable::Cable(p, q) => {
                if p > 0 {
                    vec![(p * q - p, 0, 1)]
                } else {
                    cable_peak_rots(p, q).expect("validated table").into_iter().map(|r| (p * q, r, 1)).collect()
                }
            }
        }
    }

    pub fn max_reltb(&self) -> i64 {
        self.peaks()[0].0
    }

    fn peak_count(&self, t: i64, r: i64) -> Option<i64> {
        self.peaks().into_iter().find(|&(pt, pr, _)| pt == t && pr == r).map(|(_, _, c)| c)
    }

    fn below_peaks(&self, t: i64, r: i64) -> bool {
        self.peaks().iter().any(|&(pt, pr, _)| t < pt && in_cone(pt, pr, t, r))
    }

    /// Number of common stabilizations needed to reach (t, r) from the maximal
    /// classes of a Whitehead pattern; None outside the range.
    fn whitehead_depth(m: i64, t: i64, r: i64) -> Option<i64> {
        if pos_even(m) {
            let top = if m >= 0 { 1 - m } else { 1 };
            stab_counts(top, 0, t, r).map(|(a1, a2)| a1.min(a2))
        } else {
            let t1 = if m > 0 { -m - 3 } else { -4 };
            let a = t1 - t;
            let e = (r.abs() - 1).abs();
            (a >= 0 && e <= a && (a - e) % 2 == 0).then_some((a - e) / 2)
        }
    }

    fn twisted(&self, d: i64) -> PatternTable {
        match *self {
            PatternTable::Whitehead(m) => PatternTable::Whitehead(m + 2 * d),
            PatternTable::TwoBraid(m) => PatternTable::TwoBraid(m + 2 * d),
            PatternTable::Cable(p, q) => PatternTable::Cable(p + d * q, q),
        }
    }
}

impl ClassTable for PatternTable {
    fn count(&self, t: i64, r: i64) -> i64 {
        if let Some(c) = self.peak_count(t, r) {
            return c;
        }
        if !self.below_peaks(t, r) {
            return 0;
        }
        match *self {
            PatternTable::Whitehead(m) if m < 0 && pos_even(m) => {
                let (a1, a2) = stab_counts(1, 0, t, r).expect("inside the cone");
                if a1 == 0 || a2 == 0 {
                    -m / 2 + 1
                } else {
                    1
                }
            }
            _ => 1,
        }
    }

    fn sigma_image(&self, d: i64, t: i64, r: i64) -> i64 {
        match *self {
            PatternTable::Whitehead(m) => {
                // while the twisted family is still at or below the untwisted clasp, the map is
                // a bijection onto it; beyond that only classes deep enough below the peak survive
                let l = if m < 0 { (-m) / 2 } else { 0 };
                if d <= l {
                    self.twisted(d).count(t, r)
                } else if self.peak_count(t, r).is_some() || !self.below_peaks(t, r) {
                    0
                } else {
                    match PatternTable::whitehead_depth(m, t, r) {
                        Some(h) if h >= d => 1,
                        _ => 0,
                    }
                }
            }
            _ => self.twisted(d).count(t, r),
        }
    }

    fn f_quotient(&self, t: i64, r: i64) -> i64 {
        let c = self.count(t, r);
        if r == 0 {
            (c + 1) / 2
        } else {
            c
        }
    }
}

/// Class table of a pattern family in its own framing.
pub fn pattern_table(spec: &PatternSpec) -> Result<PatternTable> {
    match *spec {
        PatternSpec::Braid(_) => Err(Error::UnsupportedFamily),
        PatternSpec::Whitehead { m } => Ok(PatternTable::Whitehead(m)),
        PatternSpec::TwoBraid { m } => {
            if m % 2 == 0 {
                return Err(Error::EvenM(m));
            }
            Ok(PatternTable::TwoBraid(m))
        }
        PatternSpec::Cable { p, q } => {
            if p < 0 || (p == 0 && q == 1) {
                cable_peak_rots(p, q)?;
            }
            Ok(PatternTable::Cable(p, q))
        }
    }
}

/// Table of the pattern twisted by -t_bar, the family the counting engine consumes.
pub fn satellite_table(profile: &KnotProfile, spec: &PatternSpec) -> Result<PatternTable> {
    pattern_table(&twist_pattern(spec, -profile.t_bar)?)
}
