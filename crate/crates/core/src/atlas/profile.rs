use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Declared hypotheses on the companion knot type; never computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub legendrian_simple: bool,
    pub uniformly_thick: bool,
    pub self_mirror: bool,
    pub no_unoriented_symmetry: bool,
    pub oriented_symmetry: bool,
}

impl Flags {
    pub fn all() -> Self {
        Flags {
            legendrian_simple: true,
            uniformly_thick: true,
            self_mirror: true,
            no_unoriented_symmetry: true,
            oriented_symmetry: true,
        }
    }

    fn named(&self) -> [(&'static str, bool); 5] {
        [
            ("legendrian_simple", self.legendrian_simple),
            ("uniformly_thick", self.uniformly_thick),
            ("self_mirror", self.self_mirror),
            ("no_unoriented_symmetry", self.no_unoriented_symmetry),
            ("oriented_symmetry", self.oriented_symmetry),
        ]
    }

    /// Errors with the list of required flags that are not declared.
    pub fn require(&self, needed: &[&str]) -> Result<()> {
        let missing: Vec<&str> =
            self.named().iter().filter(|(name, set)| needed.contains(name) && !set).map(|(name, _)| *name).collect();
        if missing.is_empty() {
            Ok(())
        } else {
            Err(Error::HypothesisNotDeclared { missing: missing.join(", ") })
        }
    }
}

/// Peak data of a companion knot type: maximal tb and the rotation numbers realized there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawProfile")]
pub struct KnotProfile {
    pub name: String,
    pub t_bar: i64,
    pub peak_rots: Vec<i64>,
    pub flags: Flags,
}

#[derive(Deserialize)]
struct RawProfile {
    name: String,
    t_bar: i64,
    peak_rots: Vec<i64>,
    flags: Flags,
}

impl TryFrom<RawProfile> for KnotProfile {
    type Error = Error;

    fn try_from(r: RawProfile) -> Result<Self> {
        KnotProfile::new(r.name, r.t_bar, r.peak_rots, r.flags)
    }
}

impl KnotProfile {
    pub fn new(name: impl Into<String>, t_bar: i64, peak_rots: Vec<i64>, flags: Flags) -> Result<Self> {
        let p = KnotProfile { name: name.into(), t_bar, peak_rots, flags };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.peak_rots.is_empty() {
            return Err(Error::InvalidInput("a profile needs at least one peak".into()));
        }
        if self.peak_rots.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("peak rotations must be strictly increasing".into()));
        }
        if self.flags.self_mirror {
            let mut mirrored: Vec<i64> = self.peak_rots.iter().map(|r| -r).collect();
            mirrored.reverse();
            if mirrored != self.peak_rots {
                return Err(Error::InvalidInput("a self-mirror profile needs rotations symmetric about 0".into()));
            }
        }
        Ok(())
    }

    /// The (-13,3) torus knot.
    pub fn torus_13_3() -> Self {
        KnotProfile::new("T(-13,3)", -39, vec![-10, -8, -4, -2, 2, 4, 8, 10], Flags::all()).expect("valid profile")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValleyData {
    /// d_i = (r_i - r_{i-1})/2 for i = 1..k
    pub depths: Vec<i64>,
    /// rotation of each valley, (r_{i-1} + r_i)/2
    pub rots: Vec<i64>,
    /// n_d over valleys with negative rotation
    pub histogram: BTreeMap<i64, i64>,
    pub j: i64,
    pub k: usize,
}

impl ValleyData {
    pub fn n(&self, d: i64) -> i64 {
        self.histogram.get(&d).copied().unwrap_or(0)
    }

    /// n_lo + ... + n_hi, zero when hi < lo.
    pub fn n_sum(&self, lo: i64, hi: i64) -> i64 {
        let lo = lo.max(1);
        if hi < lo {
            return 0;
        }
        self.histogram.range(lo..=hi).map(|(_, v)| v).sum()
    }
}

pub fn valleys(profile: &KnotProfile) -> Result<ValleyData> {
    profile.validate()?;
    let mut depths = Vec::new();
    let mut rots = Vec::new();
    let mut histogram = BTreeMap::new();
    for w in profile.peak_rots.windows(2) {
        let diff = w[1] - w[0];
        if diff % 2 != 0 {
            return Err(Error::ParityViolation(w[0], w[1]));
        }
        let d = diff / 2;
        let rot = (w[0] + w[1]) / 2;
        depths.push(d);
        rots.push(rot);
        if rot < 0 {
            *histogram.entry(d).or_insert(0) += 1;
        }
    }
    Ok(ValleyData { j: depths.iter().copied().max().unwrap_or(0), k: depths.len(), depths, rots, histogram })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prof(rots: Vec<i64>) -> KnotProfile {
        KnotProfile::new("p", -1, rots, Flags { self_mirror: false, ..Flags::all() }).unwrap()
    }

    #[test]
    fn valley_examples() {
        let v = valleys(&KnotProfile::torus_13_3()).unwrap();
        assert_eq!(v.depths, vec![1, 2, 1, 2, 1, 2, 1]);
        assert_eq!((v.n(1), v.n(2), v.j, v.k), (2, 1, 2, 7));
        let v = valleys(&prof(vec![0])).unwrap();
        assert_eq!((v.k, v.j), (0, 0));
        let v = valleys(&prof(vec![-1, 1])).unwrap();
        assert_eq!(v.depths, vec![1]);
        assert_eq!(valleys(&prof(vec![-1, 2])), Err(Error::ParityViolation(-1, 2)));
    }

    #[test]
    fn profile_validation() {
        assert!(KnotProfile::new("x", 0, vec![], Flags::all()).is_err());
        assert!(KnotProfile::new("x", 0, vec![1, 1], Flags::all()).is_err());
        assert!(KnotProfile::new("x", 0, vec![-1, 3], Flags::all()).is_err());
        let json = r#"{"name":"T(-13,3)","t_bar":-39,"peak_rots":[-10,-8,-4,-2,2,4,8,10],"flags":{"legendrian_simple":true,"uniformly_thick":true,"self_mirror":true,"no_unoriented_symmetry":true,"oriented_symmetry":true}}"#;
        let p: KnotProfile = serde_json::from_str(json).unwrap();
        assert_eq!(p, KnotProfile::torus_13_3());
        assert_eq!(serde_json::to_string(&p).unwrap(), json);
    }

    #[test]
    fn missing_flags_are_listed() {
        let mut f = Flags::all();
        f.self_mirror = false;
        f.uniformly_thick = false;
        assert_eq!(
            f.require(&["uniformly_thick", "self_mirror", "legendrian_simple"]),
            Err(Error::HypothesisNotDeclared { missing: "uniformly_thick, self_mirror".into() })
        );
        assert!(f.require(&["legendrian_simple"]).is_ok());
    }
}
