//! Self-check suites run by `khcausal verify`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::causality::{decide_akh, decide_kh, Method};
use crate::cube::{build_akh_complex, build_kh_complex};
use crate::invariants::{akh, chain_euler, graded_euler, kh, GradedDims};
use crate::linkdiag::{
    annular_to_planar, augment_with_meridian, braid_closure, model_link, parse_braid, parse_pd,
    AnnularDiagram, BraidMove, BraidWord, ModelLink, ModelName, PlanarDiagram,
};
use crate::skies::{classify_metric, end_to_end, CausalClass, Event, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Models,
    Euler,
    Integrity,
    Invariance,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Models,
        Suite::Euler,
        Suite::Integrity,
        Suite::Invariance,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Models => "models",
            Suite::Euler => "euler",
            Suite::Integrity => "integrity",
            Suite::Invariance => "invariance",
            Suite::Oracle => "oracle",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub suites: Vec<Suite>,
    pub max_crossings: usize,
    pub pairs: usize,
    pub braids: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub crossing_limit: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            suites: Suite::ALL.to_vec(),
            max_crossings: 12,
            pairs: 200,
            braids: 50,
            seed: 7,
            tolerances: Tolerances::default(),
            crossing_limit: crate::cube::DEFAULT_CROSSING_LIMIT,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn result<T>(&mut self, r: crate::Result<T>, what: &str) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{what}: {e}"));
                None
            }
        }
    }

    fn finish(self, name: &'static str) -> SuiteReport {
        SuiteReport {
            name,
            passed: self.failures.is_empty(),
            checks: self.checks,
            failures: self.failures,
        }
    }
}

/// Fixed braid words used by the Euler and integrity suites.
pub const BRAID_CORPUS: &[(&str, usize)] = &[
    ("", 1),
    ("", 2),
    ("1", 2),
    ("1 1", 2),
    ("-1 -1", 2),
    ("1 -1", 2),
    ("1 1 1", 2),
    ("-1 -1 -1", 2),
    ("1 1 1 1", 2),
    ("1 2", 3),
    ("1 -2 1 -2", 3),
    ("1 2 1 2", 3),
    ("1 1 2 2", 3),
    ("1 -2 3", 4),
    ("1 2 3 1", 4),
    ("1 1 1 1 1", 2),
    ("1 -2 1 -2 1 -2", 3),
];

/// Fixed PD codes used alongside the braid corpus.
pub const PD_CORPUS: &[&str] = &[
    "O(1)",
    "O(1) O(2)",
    "X(1,1,2,2)",
    "X(2,1,1,2)",
    "X(1,3,2,4) X(3,1,4,2)",
    "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)",
    "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)",
];

pub fn corpus(max_crossings: usize) -> Vec<(String, PlanarDiagram, Option<AnnularDiagram>)> {
    let mut out = Vec::new();
    for &(word, m) in BRAID_CORPUS {
        let a = braid_closure(&parse_braid(word, m).expect("corpus braid"));
        let p = annular_to_planar(&a);
        if p.crossing_count() <= max_crossings {
            out.push((format!("closure[{word}]/{m}"), p, Some(a.clone())));
        }
        let aug = augment_with_meridian(&a);
        if aug.crossing_count() <= max_crossings {
            out.push((format!("augment[{word}]/{m}"), aug, None));
        }
    }
    for &pd in PD_CORPUS {
        let d = parse_pd(pd).expect("corpus PD");
        if d.crossing_count() <= max_crossings {
            out.push((format!("pd[{pd}]"), d, None));
        }
    }
    out
}

/// Seeded event pairs with `| |Δp| − |Δt| | > min_margin`, alternating
/// between timelike and spacelike separations.
pub fn random_event_pairs(seed: u64, count: usize, min_margin: f64) -> Vec<(Event, Event)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let want_timelike = out.len() % 2 == 0;
        let mut c = || rng.gen_range(-3.0..3.0);
        let x = Event::new(c(), c(), c()).unwrap();
        let y = Event::new(c(), c(), c()).unwrap();
        let Ok(r) = classify_metric(&x, &y, 0.0) else {
            continue;
        };
        if r.margin > min_margin && (r.class == CausalClass::Timelike) == want_timelike {
            out.push((x, y));
        }
    }
    out
}

/// Seeded braid words on 2–3 strands with at most `max_len` letters.
pub fn random_braid(rng: &mut impl Rng, max_len: usize) -> BraidWord {
    let m = rng.gen_range(2..=3);
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..m as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    BraidWord::new(m, letters).unwrap()
}

/// Applies `count` random conjugations or free insertions.
pub fn perturb(rng: &mut impl Rng, word: &BraidWord, count: usize) -> BraidWord {
    let m = word.strand_count() as i32;
    let mut w = word.clone();
    for _ in 0..count {
        let g = rng.gen_range(1..m) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let mv = if rng.gen_bool(0.5) {
            BraidMove::Conjugate { letter: g }
        } else {
            BraidMove::InsertPair {
                at: rng.gen_range(0..=w.len()),
                letter: g,
            }
        };
        w = w.apply_move(mv).expect("random move is valid");
    }
    w
}

fn models_suite() -> SuiteReport {
    let mut t = Tally::new();
    let unknot = model_link(ModelName::Unknot).planar();
    if let Some(g) = t.result(kh(&unknot, 20), "kh(unknot)") {
        t.check(g == GradedDims::bigraded(&[((0, 1), 1), ((0, -1), 1)]), || format!("kh(unknot) = {g}"));
    }
    let hopf = GradedDims::bigraded(&[((0, 0), 1), ((0, 2), 1), ((2, 4), 1), ((2, 6), 1)]);
    if let Some(g) = t.result(kh(&model_link(ModelName::HopfPositive).planar(), 20), "kh(hopf+)") {
        t.check(g == hopf, || format!("kh(hopf_positive) = {g}"));
    }
    if let Some(g) = t.result(kh(&model_link(ModelName::HopfNegative).planar(), 20), "kh(hopf-)") {
        t.check(g == hopf.mirrored(), || format!("kh(hopf_negative) = {g}"));
    }
    let ModelLink::Annular(u2) = model_link(ModelName::U2) else {
        unreachable!()
    };
    if let Some(g) = t.result(akh(&u2, 20), "akh(U2)") {
        let want = GradedDims::trigraded(&[((0, 2, 2), 1), ((0, 0, 0), 2), ((0, -2, -2), 1)]);
        t.check(g == want, || format!("akh(U2) = {g}"));
    }
    if let Some(v) = t.result(decide_akh(&u2, 20), "decide_akh(U2)") {
        t.check(!v.related, || "U2 judged related".into());
    }
    let p3 = model_link(ModelName::P3).planar();
    if let Some(g) = t.result(kh(&p3, 20), "kh(P3)") {
        t.check(g.total_dimension() == 8, || format!("kh(P3) total {}", g.total_dimension()));
        if let Some(e) = t.result(chain_euler(&p3, 20), "chain_euler(P3)") {
            t.check(graded_euler(&g) == e, || "P3 Euler mismatch".into());
        }
    }
    t.finish("models")
}

fn euler_suite(opts: &VerifyOptions) -> SuiteReport {
    let mut t = Tally::new();
    for (name, d, annular) in corpus(opts.max_crossings) {
        let Some(g) = t.result(kh(&d, opts.crossing_limit), &name) else {
            continue;
        };
        let Some(e) = t.result(chain_euler(&d, opts.crossing_limit), &name) else {
            continue;
        };
        t.check(graded_euler(&g) == e, || format!("{name}: {} != {e}", graded_euler(&g)));
        t.check(g.total_dimension() >= 1 << d.component_count(), || {
            format!("{name}: total dimension {} below 2^components", g.total_dimension())
        });
        if let Some(a) = annular {
            if let Some(ag) = t.result(akh(&a, opts.crossing_limit), &name) {
                t.check(graded_euler(&ag) == e, || format!("{name}: annular Euler mismatch"));
            }
        }
    }
    t.finish("euler")
}

fn integrity_suite(opts: &VerifyOptions) -> SuiteReport {
    let mut t = Tally::new();
    for (name, d, annular) in corpus(opts.max_crossings) {
        if let Some(c) = t.result(build_kh_complex(&d, opts.crossing_limit), &name) {
            let r = c.check_d_squared();
            t.check(r.is_ok(), || format!("{name}: {}", r.unwrap_err()));
        }
        if let Some(a) = annular {
            if let Some(c) = t.result(build_akh_complex(&a, opts.crossing_limit), &name) {
                let r = c.check_d_squared();
                t.check(r.is_ok(), || format!("{name} (annular): {}", r.unwrap_err()));
            }
        }
    }
    t.finish("integrity")
}

fn invariance_suite(opts: &VerifyOptions) -> SuiteReport {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.braids {
        let w = random_braid(&mut rng, 8);
        let p = perturb(&mut rng, &w, 3);
        let (a, b) = (braid_closure(&w), braid_closure(&p));
        let kh_a = t.result(kh(&annular_to_planar(&a), opts.crossing_limit), &w.to_string());
        let kh_b = t.result(kh(&annular_to_planar(&b), opts.crossing_limit), &p.to_string());
        if let (Some(x), Some(y)) = (kh_a, kh_b) {
            t.check(x == y, || format!("kh changed: {w} -> {p}"));
        }
        let akh_a = t.result(akh(&a, opts.crossing_limit), &w.to_string());
        let akh_b = t.result(akh(&b, opts.crossing_limit), &p.to_string());
        if let (Some(x), Some(y)) = (akh_a, akh_b) {
            t.check(x == y, || format!("akh changed: {w} -> {p}"));
        }
    }
    t.finish("invariance")
}

fn oracle_suite(opts: &VerifyOptions) -> SuiteReport {
    let mut t = Tally::new();
    for (x, y) in random_event_pairs(opts.seed, opts.pairs, 0.1) {
        let label = format!("{x};{y}");
        let a = t.result(end_to_end(&x, &y, Method::Akh, opts.tolerances, opts.crossing_limit), &label);
        let k = t.result(end_to_end(&x, &y, Method::Kh, opts.tolerances, opts.crossing_limit), &label);
        if let (Some(a), Some(k)) = (a, k) {
            t.check(a.agrees_with_oracle(), || {
                format!("{label}: related={} but oracle {:?}", a.verdict.related, a.oracle.class)
            });
            t.check(a.verdict.related == k.verdict.related, || format!("{label}: routes disagree"));
        }
    }
    for (word, _) in BRAID_CORPUS.iter().filter(|(_, m)| *m == 2) {
        let d = braid_closure(&parse_braid(word, 2).unwrap());
        if crate::causality::validate_sky_pair(&d).is_err() {
            continue;
        }
        let a = t.result(decide_akh(&d, opts.crossing_limit), word);
        let k = t.result(decide_kh(&d, opts.crossing_limit), word);
        if let (Some(a), Some(k)) = (a, k) {
            t.check(a.related == k.related, || format!("[{word}]: routes disagree"));
        }
    }
    t.finish("oracle")
}

pub fn run(opts: &VerifyOptions) -> VerifyReport {
    let suites: Vec<SuiteReport> = opts
        .suites
        .iter()
        .map(|s| match s {
            Suite::Models => models_suite(),
            Suite::Euler => euler_suite(opts),
            Suite::Integrity => integrity_suite(opts),
            Suite::Invariance => invariance_suite(opts),
            Suite::Oracle => oracle_suite(opts),
        })
        .collect();
    VerifyReport {
        passed: suites.iter().all(|s| s.passed),
        seed: opts.seed,
        suites,
    }
}

/// Shuffles `items` with a seeded generator; used to exercise order
/// independence in batch mode.
pub fn seeded_shuffle<T>(items: &mut [T], seed: u64) {
    items.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
}
