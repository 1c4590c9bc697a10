// Independent brute-force oracles for values the library computes in closed form.

use std::collections::BTreeSet;

use legsat::atlas::{
    count_general, range_cable, range_two_braid_satellite, satellite_table, transverse_braid_satellite, Flags,
    KnotProfile,
};
use legsat::braid::{full_twist, writhe, BraidWord};
use legsat::legtangle::{
    oriented_letters, simplify, underlying_braid, whitehead_stats, word_stats, BasicBlock, DiagramStats, LegWord,
    OrientedLetter, EVEN_CLASP, ODD_CLASP,
};
use legsat::rewrite::{class_members, stabilized_classes, whitehead_classes, whitehead_relations, DEFAULT_BUDGET};
use legsat::satellite::{compose_stats, PatternSpec};

fn inv(s: &DiagramStats) -> Option<(i64, i64)> {
    Some((s.reltb().integer()?, s.relrot().integer()?))
}

fn boxes(m: i64, top: i8) -> Vec<LegWord> {
    let blocks: Vec<Vec<BasicBlock>> = if m >= 0 {
        vec![vec![BasicBlock::X(0); m as usize]]
    } else {
        let len = m.unsigned_abs() as usize;
        (0u32..1 << len)
            .map(|mask| (0..len).map(|p| if mask >> p & 1 == 1 { BasicBlock::Z } else { BasicBlock::S }).collect())
            .collect()
    };
    blocks.into_iter().map(|b| LegWord::open(2, vec![-top, top], b).unwrap()).collect()
}

fn pinned(m: i64) -> BTreeSet<(i64, i64)> {
    match (m >= 0, m % 2 == 0) {
        (true, true) => [(1 - m, 0)].into(),
        (true, false) => [(-m - 3, 1), (-m - 3, -1)].into(),
        (false, false) => [(-3, 0)].into(),
        (false, true) => [(1, 0)].into(),
    }
}

// every census with at most 3 of each cusp/crossing type that can close two
// anti-parallel ends (a cusp pair) through a clasp (two crossings)
fn small_censuses() -> Vec<DiagramStats> {
    let mut out = Vec::new();
    for u in 0..=3 {
        for d in 0..=3 {
            for xp in 0..=3 {
                for xm in 0..=3 {
                    if u + d >= 2 && xp + xm >= 2 {
                        out.push(DiagramStats { u, d, c: u + d, xp, xm, wp: 0, wm: 0 });
                    }
                }
            }
        }
    }
    out
}

fn cost(s: &DiagramStats) -> i64 {
    s.c + s.xp + s.xm
}

fn minimal(cands: Vec<DiagramStats>) -> Vec<DiagramStats> {
    let best = cands.iter().map(cost).min().expect("some clasp fits");
    cands.into_iter().filter(|s| cost(s) == best).collect()
}

#[test]
fn even_clasp_is_the_unique_minimal_fit() {
    let fits: Vec<DiagramStats> = small_censuses()
        .into_iter()
        .filter(|clasp| {
            (-6..=6).filter(|m| m % 2 == 0).all(|m| {
                [1i8, -1].iter().all(|&top| {
                    boxes(m, top).iter().all(|b| {
                        let st = word_stats(b).unwrap() + *clasp;
                        inv(&st).is_some_and(|v| pinned(m).contains(&v))
                    })
                })
            })
        })
        .collect();
    assert_eq!(minimal(fits), vec![EVEN_CLASP]);
}

#[test]
fn odd_clasp_is_the_unique_minimal_fit() {
    // the clasp for a box whose top strand leaves along the longitude
    let fits: Vec<DiagramStats> = small_censuses()
        .into_iter()
        .filter(|clasp| {
            (-7..=7).filter(|m| m % 2 != 0).all(|m| {
                [1i8, -1].iter().all(|&top| {
                    boxes(m, top).iter().filter(|b| b.exit_orientation()[1] > 0).all(|b| {
                        let st = word_stats(b).unwrap() + *clasp;
                        inv(&st).is_some_and(|v| pinned(m).contains(&v))
                    })
                })
            })
        })
        .collect();
    assert_eq!(minimal(fits), vec![ODD_CLASP]);
}

// satellite census by enumerating strand pairs over every companion feature
fn compose_by_pairs(pat: DiagramStats, comp: DiagramStats) -> DiagramStats {
    let strands: Vec<i64> =
        std::iter::repeat_n(1, pat.wp as usize).chain(std::iter::repeat_n(-1, pat.wm as usize)).collect();
    let mut out = DiagramStats { wp: 1, wm: 0, ..pat };
    let tally = |sign: i64, out: &mut DiagramStats| {
        if sign > 0 {
            out.xp += 1
        } else {
            out.xm += 1
        }
    };
    for &o in &strands {
        // a copy running against the companion turns its cusps over
        if o > 0 {
            out.u += comp.u;
            out.d += comp.d;
        } else {
            out.u += comp.d;
            out.d += comp.u;
        }
        out.c += comp.c;
    }
    for &a in &strands {
        for &b in &strands {
            for _ in 0..comp.xp {
                tally(a * b, &mut out);
            }
            for _ in 0..comp.xm {
                tally(-a * b, &mut out);
            }
        }
    }
    for i in 0..strands.len() {
        for j in i + 1..strands.len() {
            for _ in 0..comp.c {
                tally(-strands[i] * strands[j], &mut out);
            }
        }
    }
    out
}

#[test]
fn compose_matches_pairwise_enumeration() {
    for wp in 0..4 {
        for wm in 0..4 {
            for (u, d, xp, xm) in [(1, 1, 0, 0), (2, 2, 3, 0), (3, 1, 1, 4), (0, 2, 2, 2), (4, 6, 0, 7)] {
                let comp = DiagramStats { u, d, c: u + d, xp, xm, wp: 1, wm: 0 };
                let pat = DiagramStats { u: 2, d: 4, c: 6, xp: 5, xm: 1, wp, wm };
                assert_eq!(compose_stats(pat, comp).unwrap(), compose_by_pairs(pat, comp), "{pat:?} {comp:?}");
            }
        }
    }
}

// writhe of the underlying braid with each strand carrying its own direction
fn oriented_braid_writhe(w: &LegWord) -> i64 {
    let braid = underlying_braid(w);
    let mut at: Vec<i8> = w.orientation().to_vec();
    let mut total = 0;
    for l in braid.letters() {
        let (i, j) = (l.index - 1, l.index);
        total += l.signed().signum() * (at[i] as i64) * (at[j] as i64);
        at.swap(i, j);
    }
    total
}

#[test]
fn crossing_census_matches_braid_tracking() {
    use BasicBlock::*;
    let words: Vec<(usize, Vec<BasicBlock>)> = vec![
        (2, vec![S, Z, X(0), S]),
        (3, vec![S, X(1), Z, Z, X(0)]),
        (4, vec![Xg { i: 0, k: 2, l: 2 }, Sg { i: 1, k: 1, l: 2 }, Zg { i: 0, k: 2, l: 1 }]),
        (4, vec![Sg { i: 0, k: 2, l: 2 }, X(2), Zg { i: 1, k: 1, l: 2 }, S]),
        (5, vec![Zg { i: 0, k: 2, l: 3 }, Xg { i: 1, k: 1, l: 3 }, Z, S]),
    ];
    for (n, blocks) in words {
        for mask in 0u32..(1 << n) {
            let orient: Vec<i8> = (0..n).map(|h| if mask >> h & 1 == 1 { 1 } else { -1 }).collect();
            let w = LegWord::open(n, orient, blocks.clone()).unwrap();
            let st = word_stats(&w).unwrap();
            assert_eq!(st.writhe(), oriented_braid_writhe(&w), "{w}");
            assert_eq!(word_stats(&simplify(&w)).unwrap().writhe(), st.writhe(), "{w}");
        }
    }
}

fn labelled(w: &[legsat::rewrite::Letter], m: i64) -> LegWord {
    let letters: Vec<OrientedLetter> = w.iter().map(|l| l.oriented().expect("labelled letter")).collect();
    let top = letters[0].sign();
    let w = LegWord::open(2, vec![-top, top], letters.iter().map(|l| l.block()).collect()).unwrap();
    assert_eq!(oriented_letters(&w).unwrap(), letters, "m={m}");
    w
}

#[test]
fn whitehead_classes_carry_constant_census() {
    for m in [-2i64, -3, -4, -5, -6] {
        let rel = whitehead_relations(m, 0, 0);
        let mut seen = BTreeSet::new();
        for class in whitehead_classes(m).unwrap() {
            let members = class_members(&class.canonical, &rel, DEFAULT_BUDGET).unwrap();
            assert_eq!(members.len(), class.size);
            let stats: BTreeSet<(i64, i64, i64, i64)> = members
                .iter()
                .map(|w| {
                    let st = whitehead_stats(&labelled(w, m)).unwrap();
                    (st.u, st.d, st.xp, st.xm)
                })
                .collect();
            assert_eq!(stats.len(), 1, "m={m}: class {:?}", class.canonical);
            assert!(seen.insert(class.tag.clone()), "m={m}: repeated tag {:?}", class.tag);
        }
    }
    for m in [-2i64, -4] {
        for c in stabilized_classes(m, 1, 0).unwrap() {
            assert_eq!(c.tag.len(), 1);
        }
    }
}

fn profiles() -> Vec<KnotProfile> {
    let flags = Flags::all();
    vec![
        KnotProfile::torus_13_3(),
        KnotProfile::new("unknot", -1, vec![0], flags).unwrap(),
        KnotProfile::new("two peaks", -5, vec![-1, 1], flags).unwrap(),
        KnotProfile::new("spread", -12, vec![-7, -5, -1, 1, 5, 7], flags).unwrap(),
    ]
}

#[test]
fn two_braid_engine_matches_closed_form() {
    for p in profiles() {
        for m in (2 * p.t_bar - 9..=2 * p.t_bar + 9).filter(|m| m % 2 != 0) {
            let spec = PatternSpec::two_braid(m).unwrap();
            let table = satellite_table(&p, &spec).unwrap();
            let range = range_two_braid_satellite(&p, m, 8).unwrap();
            let top = range.max_tb();
            for t in top - 8..=top + 1 {
                for r in -60..=60 {
                    let engine = count_general(&p, &table, 2, t, r).unwrap();
                    assert_eq!(engine, range.count(t, r), "{} m={m} ({t},{r})", p.name);
                }
            }
        }
    }
}

#[test]
fn cable_engine_matches_closed_form() {
    for p in profiles() {
        for q in 2..=4i64 {
            for p_num in (p.t_bar * q - 9)..=(p.t_bar * q + 9) {
                let Ok(spec) = PatternSpec::cable(p_num, q) else { continue };
                let table = satellite_table(&p, &spec).unwrap();
                let range = range_cable(&p, p_num, q, 8).unwrap();
                let top = range.max_tb();
                for t in top - 8..=top + 1 {
                    for r in -80..=80 {
                        let engine = count_general(&p, &table, q, t, r).unwrap();
                        assert_eq!(engine, range.count(t, r), "{} ({p_num},{q}) ({t},{r})", p.name);
                    }
                }
            }
        }
    }
}

#[test]
fn unknot_braid_satellite_is_bennequin_sharp() {
    // closures of braids about an unknotted axis have sl = writhe - n
    let unknot = KnotProfile::new("unknot", -1, vec![0], Flags::all()).unwrap();
    for (n, word) in [(1usize, vec![]), (2, vec![1]), (2, vec![1, 1, 1]), (3, vec![1, -2]), (3, vec![1, 2, 1, 2, 2])] {
        let w = BraidWord::from_signed(n, &word).unwrap();
        let (sl, simple) = transverse_braid_satellite(&unknot, &w).unwrap();
        assert!(simple);
        assert_eq!(sl, writhe(&w) - n as i64, "{w}");
    }
}

#[test]
fn braid_satellite_sl_matches_legendrian_peaks() {
    // sl of the maximal Legendrian satellite: n^2 t + len(twisted positive word) - n * rot, maximized over peaks
    let p = KnotProfile::torus_13_3();
    for (n, word) in [(2usize, vec![1, 1, 1]), (2, vec![1]), (3, vec![1, 2]), (3, vec![1, 2, 2, 1, 2])] {
        let w = BraidWord::from_signed(n, &word).unwrap();
        let twisted = w.concat(&full_twist(n, -p.t_bar).unwrap()).unwrap();
        assert!(twisted.is_positive());
        let n = n as i64;
        let best = p.peak_rots.iter().map(|r| n * n * p.t_bar + twisted.len() as i64 - n * r).max().unwrap();
        assert_eq!(transverse_braid_satellite(&p, &w).unwrap().0, best, "{w}");
    }
    let w = BraidWord::from_signed(2, &[1, 1, 1]).unwrap();
    assert_eq!(transverse_braid_satellite(&p, &w).unwrap().0, -55);
}
