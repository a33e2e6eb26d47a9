//! Cross-validation suites behind `lspace selftest` and the acceptance tests.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::abelian::{same_points, GluingMatrix, ProjInterval, Slope};
use crate::cfd::{build_cfd_at, cfd_twist_compare, ArrowLabel};
use crate::coloring::surgery_is_lspace_oracle_window;
use crate::corpus::{self, gluing_pieces, random_record, random_splice};
use crate::error::{Error, Result};
use crate::gluing::{
    condition_systems, judicious_slope, predicted_dtau, splice_is_lspace, splice_via_spliced,
    SpliceProblem,
};
use crate::interval::{
    check_corollary_consistency, is_lspace_slope, lspace_interval, stored_witness,
    validate_witness, IntervalKind,
};
use crate::seifert::{
    fiber_complement, sfs_dtau_verdict, sfs_fiber_interval, sfs_is_lspace, SeifertData,
};
use crate::torsion::FloerSimpleManifold;

pub const DEFAULT_SEED: u64 = 20_240_917;

/// Wall-clock budgets per criterion, in milliseconds.
pub const BUDGET_MS: [u64; 9] = [1, 1, 1_000, 60_000, 3, 300_000, 300_000, 1, 120_000];

pub const RANDOM_RECORDS: usize = 6;
pub const RANDOM_SPLICES: usize = 500;
pub const SLOPE_BOX: i64 = 12;
pub const WITNESS_BOX: i64 = 5;

#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub correct: bool,
    pub elapsed_ms: f64,
    pub budget_ms: u64,
    pub detail: String,
}

impl std::fmt::Display for Criterion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "criterion {} [{}] {}: {} ({:.3} ms of {} ms)",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.elapsed_ms,
            self.budget_ms
        )
    }
}

fn timed(id: u8, name: &'static str, f: impl FnOnce() -> (bool, String)) -> Criterion {
    let start = Instant::now();
    let (correct, detail) = f();
    let elapsed: Duration = start.elapsed();
    let budget_ms = BUDGET_MS[id as usize - 1];
    let elapsed_ms = elapsed.as_secs_f64() * 1e3;
    Criterion {
        id,
        name,
        pass: correct && elapsed_ms <= budget_ms as f64,
        correct,
        elapsed_ms,
        budget_ms,
        detail,
    }
}

/// Primitive slopes a·m + b·l with |a|, |b| ≤ n, one per projective point.
pub fn slopes_in_box(n: i64) -> Vec<Slope> {
    let mut out = Vec::new();
    for a in 0..=n {
        for b in -n..=n {
            if (a == 0 && b <= 0) || a.gcd(&b) != 1 {
                continue;
            }
            out.push(Slope::new(a, b));
        }
    }
    out
}

fn interval_of(y: &FloerSimpleManifold, w: Slope) -> Result<ProjInterval> {
    Ok(lspace_interval(y, w)?.as_interval())
}

/// Interior slopes in the witness box that pass validation and give a Floer simple knot.
pub fn validated_witnesses(y: &FloerSimpleManifold) -> Result<Vec<Slope>> {
    let interior = interval_of(y, stored_witness(y)?)?.interior();
    Ok(slopes_in_box(WITNESS_BOX)
        .into_iter()
        .filter(|&w| {
            interior.contains(w) && validate_witness(y, w).is_ok() && y.hfk_support(w).is_ok()
        })
        .collect())
}

/// Named records plus random records with |T| ≤ 4, deg τ^c ≤ 5 and τ^c ≠ ∅.
pub fn cross_validation_corpus(seed: u64) -> Vec<(String, FloerSimpleManifold)> {
    let mut out: Vec<(String, FloerSimpleManifold)> = corpus::named()
        .into_iter()
        .map(|(n, y)| (n.to_string(), y))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = 0;
    while found < RANDOM_RECORDS {
        let y = random_record(&mut rng, 5);
        if y.tauc.is_empty() || y.max_tauc_phi() > 5 || y.group.torsion_size() > 4 {
            continue;
        }
        out.push((format!("random{found}"), y));
        found += 1;
    }
    out
}

/// L-space verdicts where the longitude filling counts as "not an L-space".
fn oracle_verdict(y: &FloerSimpleManifold, mu: Slope, nu: Slope, window: i64) -> Result<bool> {
    match surgery_is_lspace_oracle_window(y, mu, nu, window) {
        Err(Error::LongitudeFilling) => Ok(false),
        other => other,
    }
}

pub fn criterion_1() -> Criterion {
    timed(1, "trefoil interval", || {
        let r = lspace_interval(&corpus::trefoil(), Slope::new(3, 1));
        let ok = matches!(&r, Ok(r) if r.kind
            == IntervalKind::ClosedInterval { lo: Slope::new(1, 1), hi: Slope::new(1, 0) });
        (ok, format!("{:?}", r.map(|r| r.kind)))
    })
}

pub fn criterion_2() -> Criterion {
    timed(2, "T(2,5) interval", || {
        let y = corpus::t25();
        let r = stored_witness(&y).and_then(|w| lspace_interval(&y, w));
        let ok = matches!(&r, Ok(r) if r.kind
            == IntervalKind::ClosedInterval { lo: Slope::new(3, 1), hi: Slope::new(1, 0) });
        (ok, format!("{:?}", r.map(|r| r.kind)))
    })
}

pub fn criterion_3() -> Criterion {
    timed(3, "N_g family", || {
        let mut failures = Vec::new();
        for g in 2..=5 {
            let y = corpus::n_family(g);
            let checks = (|| -> Result<[bool; 5]> {
                let w = stored_witness(&y)?;
                let m = y.milnor_invariants()?;
                Ok([
                    y.dtau().positive.is_empty(),
                    lspace_interval(&y, w)?.kind == IntervalKind::AllButLongitude,
                    m.gst,
                    m.delta_bar.len() as i64 == g,
                    cfd_twist_compare(&y)?,
                ])
            })();
            match checks {
                Ok(c) if c.iter().all(|&b| b) => {}
                other => failures.push(format!("N_{g}: {other:?}")),
            }
        }
        let ok = failures.is_empty();
        (
            ok,
            if ok {
                "g = 2..5: all five checks hold".into()
            } else {
                failures.join("; ")
            },
        )
    })
}

/// All normalized M(e0; r_1/s_1, ..., r_n/s_n) with n ≤ 3, s_i ≤ 6, |e0| ≤ 3, fibers as multisets.
pub fn seifert_enumeration() -> Vec<SeifertData> {
    let mut fracs = Vec::new();
    for s in 2..=6i64 {
        for r in 1..s {
            if r.gcd(&s) == 1 {
                fracs.push((r, s));
            }
        }
    }
    let mut fiber_sets: Vec<Vec<(i64, i64)>> = vec![vec![]];
    for i in 0..fracs.len() {
        fiber_sets.push(vec![fracs[i]]);
        for j in i..fracs.len() {
            fiber_sets.push(vec![fracs[i], fracs[j]]);
            for k in j..fracs.len() {
                fiber_sets.push(vec![fracs[i], fracs[j], fracs[k]]);
            }
        }
    }
    let mut out = Vec::new();
    for e0 in -3..=3 {
        for f in &fiber_sets {
            out.push(SeifertData::new(e0, f));
        }
    }
    out
}

pub fn criterion_4() -> Criterion {
    timed(4, "Seifert classifier", || {
        let cases = seifert_enumeration();
        let mut mismatches = [0usize; 4];
        let mut first = None;
        for d in &cases {
            let r = (|| -> Result<[bool; 4]> {
                let v = sfs_is_lspace(d)?;
                let forms = v.fiber_form == v.orbifold_form && v.lspace == v.fiber_form;
                let mut fibers = true;
                for j in 1..=d.fibers.len() {
                    if d.fibers.len() >= 2 {
                        fibers &= sfs_fiber_interval(d, j)?.lspace == v.lspace;
                    }
                }
                let dtau = sfs_dtau_verdict(d)? == v.lspace;
                let complement = if d.fibers.is_empty() {
                    true
                } else {
                    let fc = fiber_complement(d)?;
                    is_lspace_slope(&fc.manifold, fc.mu_l, fc.mu_0)? == v.lspace
                };
                Ok([forms, fibers, dtau, complement])
            })();
            let flags = r.unwrap_or([false; 4]);
            for (k, ok) in flags.iter().enumerate() {
                if !ok {
                    mismatches[k] += 1;
                    first.get_or_insert_with(|| format!("{d}"));
                }
            }
        }
        let ok = mismatches.iter().all(|&m| m == 0);
        let detail = format!(
            "{} cases; mismatches: forms {}, fiber predicate {}, D^tau route {}, fiber complement {}{}",
            cases.len(),
            mismatches[0],
            mismatches[1],
            mismatches[2],
            mismatches[3],
            first.map(|d| format!("; first at {d}")).unwrap_or_default()
        );
        (ok, detail)
    })
}

pub fn criterion_5() -> Criterion {
    timed(5, "named Seifert verdicts", || {
        let cases = [
            (SeifertData::new(-1, &[(1, 2), (1, 2)]), false, "euler-zero"),
            (
                SeifertData::new(0, &[(1, 2), (1, 3), (1, 5)]),
                true,
                "outside-bounds",
            ),
            (
                SeifertData::new(-1, &[(1, 2), (1, 3), (1, 7)]),
                false,
                "inequality",
            ),
        ];
        let mut parts = Vec::new();
        let mut ok = true;
        for (d, want, reason) in cases {
            let got = sfs_is_lspace(&d);
            let good = matches!(&got, Ok(v) if v.lspace == want && v.reason == reason);
            ok &= good;
            parts.push(format!(
                "{d} -> {}",
                got.map(|v| v.reason).unwrap_or("error")
            ));
        }
        (ok, parts.join(", "))
    })
}

pub fn criterion_6(seed: u64) -> Criterion {
    timed(6, "oracle cross-validation", || {
        let corpus = cross_validation_corpus(seed);
        let slopes = slopes_in_box(SLOPE_BOX);
        let mut pairs = 0usize;
        let mut mismatches = Vec::new();
        let mut witnesses = 0usize;
        for (name, y) in &corpus {
            let ws = match validated_witnesses(y) {
                Ok(ws) if !ws.is_empty() => ws,
                other => {
                    mismatches.push(format!("{name}: no validated witness ({other:?})"));
                    continue;
                }
            };
            witnesses += ws.len();
            for &w in &ws {
                for &s in &slopes {
                    pairs += 1;
                    let direct = is_lspace_slope(y, w, s);
                    let oracle = oracle_verdict(y, w, s, 1);
                    let cons = check_corollary_consistency(y, w, s).map(|c| c.consistent);
                    if direct.is_err() || direct != oracle || cons != Ok(true) {
                        mismatches.push(format!(
                            "{name} w={w} s={s}: {direct:?} {oracle:?} {cons:?}"
                        ));
                    }
                }
            }
        }
        let ok = mismatches.is_empty();
        let mut detail = format!(
            "{} records, {witnesses} witnesses, {pairs} (witness, slope) pairs, {} mismatches",
            corpus.len(),
            mismatches.len()
        );
        if let Some(m) = mismatches.first() {
            detail.push_str(&format!("; first: {m}"));
        }
        (ok, detail)
    })
}

fn trefoil_pair(rows: [[i64; 2]; 2]) -> SpliceProblem {
    SpliceProblem {
        y1: corpus::trefoil(),
        y2: corpus::trefoil(),
        phi: GluingMatrix::new(rows).expect("det -1"),
    }
}

/// All four routes plus the piecewise D^τ prediction on one gluing.
pub fn gluing_routes(prob: &SpliceProblem) -> Result<[bool; 5]> {
    let verdict = splice_is_lspace(prob)?.lspace;
    let (js, sp, spliced) = splice_via_spliced(prob)?;
    let c = condition_systems(&js);
    let predicted = predicted_dtau(&js, &sp);
    let actual: BTreeSet<_> = sp
        .manifold
        .dtau()
        .all
        .into_iter()
        .map(|d| d.element)
        .collect();
    Ok([
        verdict,
        c.l_verdict,
        c.i_verdict,
        spliced,
        predicted == actual,
    ])
}

pub fn criterion_7(seed: u64) -> Criterion {
    timed(7, "gluing equivalences", || {
        let mut notes = Vec::new();
        let mut ok = true;

        let degenerate = trefoil_pair([[1, 0], [1, -1]]);
        let v = splice_is_lspace(&degenerate);
        let good = matches!(&v, Ok(v) if !v.lspace)
            && matches!(
                judicious_slope(&degenerate),
                Err(Error::NotRationalHomologySphere)
            );
        ok &= good;
        notes.push(format!(
            "[[1,0],[1,-1]] -> {}",
            v.map(|v| v.lspace.to_string()).unwrap_or_default()
        ));

        let named = trefoil_pair([[3, -5], [1, -2]]);
        let routes = gluing_routes(&named);
        let transcript = judicious_slope(&named).map(|js| condition_systems(&js).transcript);
        let line = transcript.as_ref().ok().and_then(|t| {
            t.iter()
                .find(|l| l.condition == "L.iii" && l.b == 35)
                .map(|l| (l.value, l.holds))
        });
        let good = matches!(routes, Ok(r) if r.iter().all(|&b| b)) && line == Some((37, true));
        ok &= good;
        notes.push(format!(
            "[[3,-5],[1,-2]] -> {:?}, L.iii at b=35: {}",
            routes,
            line.map(|(v, _)| format!("{v}/35"))
                .unwrap_or("missing".into())
        ));

        let pieces = gluing_pieces();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
        let mut bad = Vec::new();
        let mut positive = 0;
        for _ in 0..RANDOM_SPLICES {
            let (name, prob) = random_splice(&mut rng, &pieces, 6);
            match gluing_routes(&prob) {
                Ok(r) if r[..4].iter().all(|&b| b == r[0]) && r[4] => positive += usize::from(r[0]),
                other => bad.push(format!("{name}: {other:?}")),
            }
        }
        ok &= bad.is_empty();
        notes.push(format!(
            "{RANDOM_SPLICES} random gluings ({positive} L-spaces), {} mismatches{}",
            bad.len(),
            bad.first()
                .map(|b| format!(", first {b}"))
                .unwrap_or_default()
        ));
        (ok, notes.join("; "))
    })
}

pub fn criterion_8() -> Criterion {
    timed(8, "CFD worked example", || {
        let y = corpus::negative_trefoil();
        match build_cfd_at(&y, (5, -1), (-9, 2)) {
            Ok(g) => {
                let counts = [ArrowLabel::D1, ArrowLabel::D3, ArrowLabel::D23].map(|l| g.count(l));
                let valence = g.valences().iter().all(|(_, n)| *n == 2);
                let ok = g.v0.len() == 5 && g.v1.len() == 9 && counts == [5, 5, 4] && valence;
                (
                    ok,
                    format!(
                        "|V0|={} |V1|={} arrows {:?} valence two: {valence}",
                        g.v0.len(),
                        g.v1.len(),
                        counts
                    ),
                )
            }
            Err(e) => (false, format!("error {e}")),
        }
    })
}

pub fn criterion_9(seed: u64) -> Criterion {
    timed(9, "structural invariants", || {
        let corpus = cross_validation_corpus(seed);
        let probe = slopes_in_box(8);
        let mut violations: Vec<String> = Vec::new();
        let mut checked = 0usize;
        for (name, y) in &corpus {
            let mut fail = |what: String| violations.push(format!("{name}: {what}"));
            let bound = 2 * (y.max_tauc_phi() + 1) + 4 * y.g();
            checked += 1;
            if !y.gamma_closed(bound).closed {
                fail("semigroup closure".into());
            }
            let Ok(ws) = validated_witnesses(y) else {
                fail("witnesses".into());
                continue;
            };
            let Ok(reference) = interval_of(y, ws[0]) else {
                fail("interval".into());
                continue;
            };
            for &w in &ws {
                checked += 2;
                match interval_of(y, w) {
                    Ok(i) if same_points(&i, &reference) => {}
                    other => fail(format!("witness independence at {w}: {other:?}")),
                }
                match (y.hfk_support(w), y.filling_order(w)) {
                    (Ok(s), Some(n)) if s.len() as i64 == n => {}
                    other => fail(format!("|S_BLACK| at {w}: {other:?}")),
                }
            }
            for k in [-2i64, -1, 1, 2] {
                checked += 1;
                let moved = |s: Slope| Slope::new(s.a, s.b - k * s.a);
                let Ok(z) = y.rebase(k) else {
                    fail(format!("rebase {k}"));
                    continue;
                };
                match interval_of(&z, moved(ws[0])) {
                    Ok(i)
                        if probe
                            .iter()
                            .all(|&s| reference.contains(s) == i.contains(moved(s))) => {}
                    other => fail(format!("basis covariance k={k}: {other:?}")),
                }
            }
            let flipped = y.flip_longitude();
            let mirror = |s: Slope| Slope::new(s.a, -s.b);
            checked += 1;
            match interval_of(&flipped, mirror(ws[0])) {
                Ok(i)
                    if probe
                        .iter()
                        .all(|&s| reference.contains(s) == i.contains(mirror(s))) => {}
                other => fail(format!("longitude flip: {other:?}")),
            }
            let w = ws[0];
            for &s in &probe {
                checked += 1;
                let one = oracle_verdict(y, w, s, 1);
                let two = oracle_verdict(y, w, s, 2);
                if one != two {
                    fail(format!("window doubling at {s}: {one:?} vs {two:?}"));
                }
            }
        }
        let ok = violations.is_empty();
        let mut detail = format!(
            "{} records, {checked} checks, {} violations",
            corpus.len(),
            violations.len()
        );
        if let Some(v) = violations.first() {
            detail.push_str(&format!("; first: {v}"));
        }
        (ok, detail)
    })
}

/// Seed from LSPACE_SELFTEST_SEED, or the fixed default.
pub fn seed_from_env() -> u64 {
    std::env::var("LSPACE_SELFTEST_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn run_all(seed: u64) -> Vec<Criterion> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(seed),
        criterion_7(seed),
        criterion_8(),
        criterion_9(seed),
    ]
}
