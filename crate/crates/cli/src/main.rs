use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use legsat::atlas::{
    pattern_table, range_cable, range_two_braid_satellite, range_whitehead_double, render, transverse_whitehead_double,
    ClassTable, KnotProfile, MountainRange, DEFAULT_DEPTH,
};
use legsat::braid::{positive_conjugacy_class, positive_monoid_class, BraidWord, DEFAULT_BUDGET};
use legsat::legtangle::{word_stats, HalfInt, LegWord};
use legsat::rewrite::{
    expected_whitehead_classes, positive_leg_classes, stabilized_classes, two_braid_classes, whitehead_classes,
    word_string, OracleCensus, WordClass,
};
use legsat::satellite::{
    pattern_max_reltb, satellite_classical, self_linking, winding, CompanionInvariants, PatternInvariants, PatternSpec,
};

#[derive(Parser)]
#[command(name = "legsat", version, about = "Legendrian satellites: invariants, class censuses and mountain ranges")]
struct Cli {
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Relative invariants of a block word
    Invariants {
        /// Word as inline JSON, a file, or - for stdin
        #[arg(long)]
        legword: String,
    },
    /// Classical invariants of the satellite of a companion
    Satellite {
        /// Pattern family or {"winding","reltb","relrot"} as inline JSON, a file, or -
        #[arg(long)]
        pattern: String,
        /// Companion invariants as tb,rot
        #[arg(long, allow_hyphen_values = true)]
        companion: String,
    },
    /// Mountain range of a satellite family over a companion profile
    Range {
        family: RangeFamily,
        /// Companion profile JSON file, or -
        #[arg(long)]
        profile: String,
        #[arg(short = 'm', allow_negative_numbers = true)]
        m: Option<i64>,
        #[arg(short = 'p', allow_negative_numbers = true)]
        p: Option<i64>,
        #[arg(short = 'q', allow_negative_numbers = true)]
        q: Option<i64>,
        /// Rows below the maximum
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: i64,
        /// Transverse classes by self-linking number
        #[arg(long)]
        transverse: bool,
    },
    /// Closed-form class list of a pattern family
    Classify {
        family: ClassFamily,
        #[arg(short = 'm', allow_negative_numbers = true)]
        m: i64,
        /// Stabilizations as +a,-b
        #[arg(long, allow_hyphen_values = true)]
        stab: Option<String>,
    },
    /// Rewriting census checked against the closed-form count
    Oracle {
        family: OracleFamily,
        #[arg(short = 'm', allow_negative_numbers = true)]
        m: Option<i64>,
        /// Positive braid word as comma-separated generator indices
        #[arg(short = 'w')]
        word: Option<String>,
        /// Strand count for the braid word (default: one more than the largest index)
        #[arg(long)]
        strands: Option<usize>,
        /// Treat the braid word as closed
        #[arg(long)]
        closed: bool,
        /// Stabilizations as +a,-b
        #[arg(long, allow_hyphen_values = true)]
        stab: Option<String>,
    },
    /// Text grid of a range JSON
    Render {
        /// Range JSON file, or -
        #[arg(long)]
        range: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RangeFamily {
    WhiteheadDouble,
    TwoBraid,
    Cable,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassFamily {
    Whitehead,
    TwoBraid,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleFamily {
    Whitehead,
    TwoBraid,
    Positive,
}

enum CliError {
    Usage(String),
    Domain(legsat::Error),
    // the command ran but its self-check failed; the report is still printed
    Failed(String),
}

impl From<legsat::Error> for CliError {
    fn from(e: legsat::Error) -> Self {
        CliError::Domain(e)
    }
}

type CliResult = Result<String, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

// inline JSON, "-" for stdin, or a file path
fn read_source(arg: &str) -> Result<String, CliError> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(arg).map_err(|e| usage(format!("reading {arg}: {e}")))
}

fn parse_json<T: serde::de::DeserializeOwned>(arg: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(&read_source(arg)?).map_err(|e| usage(format!("invalid {what}: {e}")))
}

fn half(v: HalfInt) -> Value {
    match v.integer() {
        Some(i) => json!(i),
        None => json!(v.to_string()),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn invariants(legword: &str, as_json: bool) -> CliResult {
    let w: LegWord = parse_json(legword, "legword")?;
    let st = word_stats(&w)?;
    if as_json {
        return Ok(pretty(&json!({ "reltb": half(st.reltb()), "relrot": half(st.relrot()) })));
    }
    Ok(format!("reltb={} relrot={}\n", st.reltb(), st.relrot()))
}

fn parse_pair(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || usage(format!("expected tb,rot but got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn satellite(pattern: &str, companion: &str, as_json: bool) -> CliResult {
    let (tb, rot) = parse_pair(companion)?;
    let raw: Value = parse_json(pattern, "pattern")?;
    let pats: Vec<PatternInvariants> = if raw.get("family").is_some() {
        let spec: PatternSpec = serde_json::from_value(raw).map_err(|e| usage(format!("invalid pattern: {e}")))?;
        let n = winding(&spec);
        match spec {
            // positive braids have a unique maximal class with rotation 0
            PatternSpec::Braid(_) => {
                vec![PatternInvariants { winding: n, reltb: pattern_max_reltb(&spec)?, relrot: 0 }]
            }
            _ => pattern_table(&spec)?
                .peaks()
                .into_iter()
                .map(|(t, r, _)| PatternInvariants { winding: n, reltb: t, relrot: r })
                .collect(),
        }
    } else {
        vec![serde_json::from_value(raw).map_err(|e| usage(format!("invalid pattern: {e}")))?]
    };
    let rows: Vec<(i64, i64, i64)> = pats
        .into_iter()
        .map(|p| {
            let (t, r) = satellite_classical(p, CompanionInvariants { tb, rot });
            (t, r, self_linking(t, r))
        })
        .collect();
    if as_json {
        let list: Vec<Value> = rows.iter().map(|&(t, r, s)| json!({ "tb": t, "rot": r, "sl": s })).collect();
        return Ok(pretty(&json!(list)));
    }
    Ok(rows.iter().map(|(t, r, s)| format!("tb={t} rot={r} sl={s}\n")).collect())
}

fn need(v: Option<i64>, flag: &str, family: &str) -> Result<i64, CliError> {
    v.ok_or_else(|| usage(format!("{family} needs {flag}")))
}

fn range(
    family: RangeFamily,
    profile: &str,
    (m, p, q): (Option<i64>, Option<i64>, Option<i64>),
    depth: i64,
    transverse: bool,
    as_json: bool,
) -> CliResult {
    if depth < 0 {
        return Err(usage("--depth must be nonnegative"));
    }
    let prof: KnotProfile = parse_json(profile, "profile")?;
    let r: MountainRange = match family {
        RangeFamily::WhiteheadDouble => {
            let m = need(m, "-m", "whitehead-double")?;
            if transverse {
                transverse_whitehead_double(&prof, m, depth)?
            } else {
                range_whitehead_double(&prof, m, depth)?
            }
        }
        RangeFamily::TwoBraid | RangeFamily::Cable if transverse => {
            return Err(CliError::Domain(legsat::Error::Unsupported(
                "transverse ranges are available for Whitehead doubles only".into(),
            )))
        }
        RangeFamily::TwoBraid => range_two_braid_satellite(&prof, need(m, "-m", "two-braid")?, depth)?,
        RangeFamily::Cable => range_cable(&prof, need(p, "-p", "cable")?, need(q, "-q", "cable")?, depth)?,
    };
    if as_json {
        return Ok(pretty(&serde_json::to_value(&r).expect("serializable")));
    }
    Ok(render(&r))
}

/// "+a,-b" as (positive, negative) stabilization counts.
fn parse_stab(s: Option<&str>) -> Result<(usize, usize), CliError> {
    let Some(s) = s else { return Ok((0, 0)) };
    let bad = || usage(format!("expected stabilizations like +2,-1 but got {s:?}"));
    let (mut pos, mut neg) = (0, 0);
    for tok in s.split(',').map(str::trim) {
        if let Some(v) = tok.strip_prefix('+') {
            pos += v.parse::<usize>().map_err(|_| bad())?;
        } else if let Some(v) = tok.strip_prefix('-') {
            neg += v.parse::<usize>().map_err(|_| bad())?;
        } else {
            return Err(bad());
        }
    }
    Ok((pos, neg))
}

fn classify(family: ClassFamily, m: i64, stab: Option<&str>, as_json: bool) -> CliResult {
    let (a, b) = parse_stab(stab)?;
    let (name, spec) = match family {
        ClassFamily::Whitehead => ("whitehead", PatternSpec::whitehead(m)),
        ClassFamily::TwoBraid => ("two-braid", PatternSpec::two_braid(m)?),
    };
    let table = pattern_table(&spec)?;
    let (a, b) = (a as i64, b as i64);
    // every maximal class stabilized a times positively and b times negatively
    let mut reached: BTreeMap<(i64, i64), i64> = BTreeMap::new();
    for (t, r, _) in table.peaks() {
        let at = (t - a - b, r + a - b);
        reached.insert(at, table.count(at.0, at.1));
    }
    let mut rows: Vec<(i64, i64, i64)> = reached.into_iter().map(|((t, r), c)| (t, r, c)).collect();
    rows.sort_by_key(|&(t, r, _)| (-t, r));
    let total: i64 = rows.iter().map(|e| e.2).sum();
    if as_json {
        let classes: Vec<Value> =
            rows.iter().map(|&(t, r, c)| json!({ "reltb": t, "relrot": r, "count": c })).collect();
        return Ok(pretty(&json!({
            "family": name, "m": m, "stab": [a, b], "classes": classes, "total": total
        })));
    }
    let mut out = format!("{name} m={m} stab=+{a},-{b}\n");
    for (t, r, c) in rows {
        let _ = writeln!(out, "reltb={t} relrot={r} count={c}");
    }
    let _ = writeln!(out, "total: {total}");
    Ok(out)
}

fn census_lines(classes: &[WordClass]) -> String {
    let mut out = String::new();
    for c in classes {
        let tag: Vec<String> = c.tag.iter().map(|t| t.to_string()).collect();
        let _ = writeln!(out, "  {} size={} tag=[{}]", word_string(&c.canonical), c.size, tag.join(","));
    }
    out
}

fn verdict(mut text: String, json_body: Value, found: usize, expected: usize, as_json: bool) -> CliResult {
    let pass = found == expected;
    let word = if pass { "PASS" } else { "FAIL" };
    let out = if as_json {
        let mut v = json_body;
        v["classes_found"] = json!(found);
        v["expected"] = json!(expected);
        v["verdict"] = json!(word);
        pretty(&v)
    } else {
        let _ = write!(text, "classes: {found}\nexpected: {expected}\n{word}\n");
        text
    };
    if pass {
        Ok(out)
    } else {
        Err(CliError::Failed(out))
    }
}

fn parse_word(s: &str, strands: Option<usize>) -> Result<BraidWord, CliError> {
    let letters: Vec<i64> = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<i64>().map_err(|_| usage(format!("bad generator {t:?}"))))
        .collect::<Result<_, _>>()?;
    let n = strands.unwrap_or_else(|| letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(1) + 1);
    Ok(BraidWord::from_signed(n, &letters)?)
}

struct OracleArgs<'a> {
    m: Option<i64>,
    word: Option<&'a str>,
    strands: Option<usize>,
    closed: bool,
    stab: Option<&'a str>,
}

fn oracle(family: OracleFamily, args: OracleArgs<'_>, as_json: bool) -> CliResult {
    match family {
        OracleFamily::Whitehead => {
            let m = need(args.m, "-m", "whitehead")?;
            let (a, b) = parse_stab(args.stab)?;
            let classes = if a + b == 0 { whitehead_classes(m)? } else { stabilized_classes(m, a, b)? };
            let expected = expected_whitehead_classes(m, a, b);
            let text = format!("whitehead m={m} stab=+{a},-{b}\n{}", census_lines(&classes));
            let found = classes.len();
            let body = json!({ "family": "whitehead", "stab": [a, b], "census": OracleCensus { m, classes } });
            verdict(text, body, found, expected, as_json)
        }
        OracleFamily::TwoBraid => {
            let m = need(args.m, "-m", "two-braid")?;
            let classes = two_braid_classes(m)?;
            let expected = m.unsigned_abs() as usize + 1;
            let text = format!("two-braid m={m}\n{}", census_lines(&classes));
            let found = classes.len();
            let body = json!({ "family": "two-braid", "census": OracleCensus { m, classes } });
            verdict(text, body, found, expected, as_json)
        }
        OracleFamily::Positive => {
            let w = parse_word(args.word.ok_or_else(|| usage("positive needs -w"))?, args.strands)?;
            if !w.is_positive() {
                return Err(CliError::Domain(legsat::Error::NonPositiveBraid));
            }
            let braids = if args.closed {
                positive_conjugacy_class(&w, DEFAULT_BUDGET)?.len()
            } else {
                positive_monoid_class(&w, DEFAULT_BUDGET)?.len()
            };
            let found = positive_leg_classes(&w, args.closed)?;
            let text = format!("positive {w} closed={}\n  equivalent positive words: {braids}\n", args.closed);
            let body = json!({
                "family": "positive", "word": w, "closed": args.closed, "equivalent_words": braids
            });
            verdict(text, body, found, 1, as_json)
        }
    }
}

fn render_file(path: &str) -> CliResult {
    let r: MountainRange = parse_json(path, "range")?;
    Ok(render(&r))
}

fn run(cli: Cli) -> CliResult {
    let as_json = cli.json;
    match cli.verb {
        Verb::Invariants { legword } => invariants(&legword, as_json),
        Verb::Satellite { pattern, companion } => satellite(&pattern, &companion, as_json),
        Verb::Range { family, profile, m, p, q, depth, transverse } => {
            range(family, &profile, (m, p, q), depth, transverse, as_json)
        }
        Verb::Classify { family, m, stab } => classify(family, m, stab.as_deref(), as_json),
        Verb::Oracle { family, m, word, strands, closed, stab } => {
            oracle(family, OracleArgs { m, word: word.as_deref(), strands, closed, stab: stab.as_deref() }, as_json)
        }
        Verb::Render { range } => render_file(&range),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Failed(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
