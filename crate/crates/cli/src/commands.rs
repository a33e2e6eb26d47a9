use std::collections::BTreeSet;

use lspace_core::abelian::fmt_rat;
use lspace_core::cfd::{build_cfd, build_cfd_at, build_cfd_with_mu, cfd_twist_compare_report};
use lspace_core::coloring::surgery_is_lspace_oracle_window;
use lspace_core::gluing::{
    condition_systems, judicious_slope, splice_is_lspace, ConditionLine, SpliceProblem,
};
use lspace_core::interval::{
    check_corollary_consistency, is_lspace_slope, lspace_interval, stored_witness, IntervalKind,
};
use lspace_core::seifert::{sfs_fiber_interval, sfs_is_lspace, SeifertData};
use lspace_core::selftest;

use lspace_core::{
    Error, FloerSimpleManifold, GluingMatrix, GroupElement, ManifoldRecord, ProjInterval, Rat,
    Slope,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One request, from the command line or a batch line.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Request {
    Interval {
        input: Value,
        #[serde(default)]
        witness: Option<String>,
    },
    Check {
        input: Value,
        slope: String,
        #[serde(default)]
        witness: Option<String>,
    },
    Dtau {
        input: Value,
    },
    Sfs {
        input: Value,
        #[serde(default)]
        fiber: Option<usize>,
    },
    Glue {
        input: Value,
    },
    Oracle {
        input: Value,
        mu: String,
        nu: String,
        #[serde(default = "one")]
        window: i64,
    },
    Cfd {
        input: Value,
        #[serde(default)]
        mu: Option<String>,
        #[serde(default)]
        lambda: Option<String>,
        #[serde(default)]
        twist_compare: bool,
    },
    Gst {
        input: Value,
    },
    Selftest {
        #[serde(default)]
        seed: Option<u64>,
    },
}

fn one() -> i64 {
    1
}

/// Failure with its exit code: 2 for an unmet gluing hypothesis, 1 otherwise.
#[derive(Debug)]
pub struct Failure {
    pub name: String,
    pub message: String,
}

impl Failure {
    pub fn new(name: &str, message: impl Into<String>) -> Self {
        Failure {
            name: name.to_string(),
            message: message.into(),
        }
    }

    pub fn code(&self) -> i32 {
        if self.name == "HypothesisNotMet" {
            2
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            error: &'a str,
            message: &'a str,
        }
        serde_json::to_string(&Out {
            error: &self.name,
            message: &self.message,
        })
        .unwrap()
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(e.name(), e.to_string())
    }
}

pub struct Success {
    pub text: String,
    pub code: i32,
}

type Outcome = std::result::Result<Success, Failure>;

fn json<T: Serialize>(v: &T) -> Outcome {
    Ok(Success {
        text: serde_json::to_string(v).unwrap(),
        code: 0,
    })
}

/// Resolve an input argument: inline JSON, `-` for stdin, or a file path.
pub fn load_text(arg: &str) -> std::result::Result<String, Failure> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    if arg == "-" {
        let mut buf = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut buf)
            .map_err(|e| Failure::new("IoError", format!("stdin: {e}")))?;
        return Ok(buf);
    }
    std::fs::read_to_string(arg).map_err(|e| Failure::new("IoError", format!("{arg}: {e}")))
}

pub fn parse_text(text: &str) -> std::result::Result<Value, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::new("ParseError", e.to_string()))
}

/// A batch `input` may be an inline document or a string argument.
fn document(v: &Value) -> std::result::Result<Value, Failure> {
    match v {
        Value::String(s) => parse_text(&load_text(s)?),
        other => Ok(other.clone()),
    }
}

fn shape<T: serde::de::DeserializeOwned>(v: &Value) -> std::result::Result<T, Failure> {
    T::deserialize(v).map_err(|e| Failure::new("ParseError", e.to_string()))
}

fn manifold(v: &Value) -> std::result::Result<FloerSimpleManifold, Failure> {
    let rec: ManifoldRecord = shape(&document(v)?)?;
    Ok(FloerSimpleManifold::try_from(rec)?)
}

fn splice(v: &Value) -> std::result::Result<SpliceProblem, Failure> {
    #[derive(Deserialize)]
    struct Raw {
        y1: ManifoldRecord,
        y2: ManifoldRecord,
        phi: [[i64; 2]; 2],
    }
    let r: Raw = shape(&document(v)?)?;
    Ok(SpliceProblem {
        y1: FloerSimpleManifold::try_from(r.y1)?,
        y2: FloerSimpleManifold::try_from(r.y2)?,
        phi: GluingMatrix::new(r.phi)?,
    })
}

fn slope_arg(s: &str) -> std::result::Result<Slope, Failure> {
    Ok(s.parse::<Slope>()?)
}

/// A boundary class "a/b" whose sign is kept.
fn vector_arg(s: &str) -> std::result::Result<(i64, i64), Failure> {
    let bad = || {
        Failure::new(
            "InvalidInput",
            format!("cannot parse class {s:?}, expected a/b"),
        )
    };
    let (a, b) = s.split_once('/').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn witness_for(y: &FloerSimpleManifold, w: &Option<String>) -> std::result::Result<Slope, Failure> {
    match w {
        Some(s) => slope_arg(s),
        None => Ok(stored_witness(y)?),
    }
}

fn rat(r: Rat) -> String {
    fmt_rat(Some(r))
}

pub fn run(req: &Request) -> Outcome {
    match req {
        Request::Interval { input, witness } => interval(input, witness),
        Request::Check {
            input,
            slope,
            witness,
        } => check(input, slope, witness),
        Request::Dtau { input } => dtau(input),
        Request::Sfs { input, fiber } => sfs(input, *fiber),
        Request::Glue { input } => glue(input),
        Request::Oracle {
            input,
            mu,
            nu,
            window,
        } => oracle(input, mu, nu, *window),
        Request::Cfd {
            input,
            mu,
            lambda,
            twist_compare,
        } => cfd(input, mu, lambda, *twist_compare),
        Request::Gst { input } => gst(input),
        Request::Selftest { seed } => self_test(seed.unwrap_or_else(selftest::seed_from_env)),
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum IntervalOut {
    Closed { lo: String, hi: String },
    AllButLongitude { at: String },
    ComplementOfPoint { at: String },
}

fn interval(input: &Value, witness: &Option<String>) -> Outcome {
    let y = manifold(input)?;
    let w = witness_for(&y, witness)?;
    let out = match lspace_interval(&y, w)?.kind {
        IntervalKind::ClosedInterval { lo, hi } => IntervalOut::Closed {
            lo: lo.to_string(),
            hi: hi.to_string(),
        },
        IntervalKind::AllButLongitude => IntervalOut::AllButLongitude {
            at: Slope::L.to_string(),
        },
        IntervalKind::ComplementOfPoint { at } => {
            IntervalOut::ComplementOfPoint { at: at.to_string() }
        }
    };
    json(&out)
}

fn check(input: &Value, slope: &str, witness: &Option<String>) -> Outcome {
    #[derive(Serialize)]
    struct Out {
        lspace: bool,
        consistent: bool,
    }
    let y = manifold(input)?;
    let w = witness_for(&y, witness)?;
    let s = slope_arg(slope)?;
    let lspace = is_lspace_slope(&y, w, s)?;
    let report = check_corollary_consistency(&y, w, s)?;
    json(&Out {
        lspace,
        consistent: report.consistent && report.direct == lspace,
    })
}

fn dtau(input: &Value) -> Outcome {
    #[derive(Serialize)]
    struct Entry {
        delta: i64,
        gamma: i64,
        element: GroupElement,
    }
    #[derive(Serialize)]
    struct Out {
        all: Vec<Entry>,
        positive: Vec<Entry>,
    }
    let y = manifold(input)?;
    let d = y.dtau();
    let conv = |v: Vec<lspace_core::torsion::DtauElement>| {
        v.into_iter()
            .map(|e| Entry {
                delta: e.delta,
                gamma: e.gamma,
                element: e.element,
            })
            .collect()
    };
    json(&Out {
        all: conv(d.all),
        positive: conv(d.positive),
    })
}

fn sfs(input: &Value, fiber: Option<usize>) -> Outcome {
    #[derive(Serialize)]
    struct Short {
        lspace: bool,
        reason: &'static str,
    }
    #[derive(Serialize)]
    struct Fiber {
        j: usize,
        lower: String,
        upper: String,
        lspace: bool,
    }
    #[derive(Serialize)]
    struct Full {
        lspace: bool,
        reason: &'static str,
        euler: String,
        fiber_form: bool,
        orbifold_form: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        fiber_bounds: Option<[String; 2]>,
        #[serde(skip_serializing_if = "Option::is_none")]
        orbifold_bounds: Option<[String; 2]>,
        #[serde(skip_serializing_if = "Option::is_none")]
        fiber: Option<Fiber>,
    }
    let d: SeifertData = shape(&document(input)?)?;
    let v = sfs_is_lspace(&d)?;
    let fiber = match fiber {
        Some(j) => {
            let f = sfs_fiber_interval(&d, j)?;
            Some(Fiber {
                j,
                lower: rat(f.lower),
                upper: rat(f.upper),
                lspace: f.lspace,
            })
        }
        None => None,
    };
    if v.reason == "euler-zero" && fiber.is_none() {
        return json(&Short {
            lspace: v.lspace,
            reason: v.reason,
        });
    }
    let pair = |b: Option<(Rat, Rat)>| b.map(|(x, y)| [rat(x), rat(y)]);
    json(&Full {
        lspace: v.lspace,
        reason: v.reason,
        euler: rat(v.euler),
        fiber_form: v.fiber_form,
        orbifold_form: v.orbifold_form,
        fiber_bounds: pair(v.fiber_bounds),
        orbifold_bounds: pair(v.orbifold_bounds),
        fiber,
    })
}

/// A projective interval with slopes written as "a/b".
#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum IntervalText {
    Everything,
    Empty,
    Point {
        at: String,
    },
    ComplementOfPoint {
        at: String,
    },
    Arc {
        lo: String,
        hi: String,
        lo_closed: bool,
        hi_closed: bool,
    },
}

impl From<&ProjInterval> for IntervalText {
    fn from(i: &ProjInterval) -> Self {
        match *i {
            ProjInterval::Everything => IntervalText::Everything,
            ProjInterval::Empty => IntervalText::Empty,
            ProjInterval::Point { at } => IntervalText::Point { at: at.to_string() },
            ProjInterval::ComplementOfPoint { at } => {
                IntervalText::ComplementOfPoint { at: at.to_string() }
            }
            ProjInterval::Arc {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => IntervalText::Arc {
                lo: lo.to_string(),
                hi: hi.to_string(),
                lo_closed,
                hi_closed,
            },
        }
    }
}

fn glue(input: &Value) -> Outcome {
    #[derive(Serialize)]
    struct Short {
        lspace: bool,
        reason: &'static str,
    }
    #[derive(Serialize)]
    struct Judicious {
        mu1: String,
        mu2: String,
        q_star: i64,
        lambda1: [i64; 2],
        lambda2: [i64; 2],
        q_bar: [i64; 2],
        b1: BTreeSet<i64>,
        b2: BTreeSet<i64>,
        normalization: Vec<String>,
    }
    #[derive(Serialize)]
    struct Conditions {
        l: [bool; 3],
        i: [bool; 3],
        transcript: Vec<String>,
    }
    #[derive(Serialize)]
    struct Out {
        lspace: bool,
        reason: &'static str,
        i1: Option<IntervalText>,
        i2: Option<IntervalText>,
        image: Option<IntervalText>,
        judicious: Judicious,
        conditions: Conditions,
    }
    let prob = splice(input)?;
    let v = splice_is_lspace(&prob)?;
    if prob.phi.q_star() == 0 {
        return json(&Short {
            lspace: v.lspace,
            reason: v.reason,
        });
    }
    let js = judicious_slope(&prob)?;
    let c = condition_systems(&js);
    let (b1, b2) = lspace_core::gluing::b_sets(&js);
    let line = |l: &ConditionLine| {
        format!(
            "{} b={}: {}/{} {} 1",
            l.condition,
            l.b,
            l.value,
            l.b,
            if l.holds {
                if l.condition == "L.iii" {
                    ">"
                } else {
                    ">="
                }
            } else {
                "fails"
            }
        )
    };
    json(&Out {
        lspace: v.lspace,
        reason: v.reason,
        i1: v.i1.as_ref().map(IntervalText::from),
        i2: v.i2.as_ref().map(IntervalText::from),
        image: v.image.as_ref().map(IntervalText::from),
        judicious: Judicious {
            mu1: js.mu1.to_string(),
            mu2: format!("{}/{}", js.p2, js.q2),
            q_star: js.q_star,
            lambda1: [js.lambda1.0, js.lambda1.1],
            lambda2: [js.lambda2.0, js.lambda2.1],
            q_bar: [js.q_bar1, js.q_bar2],
            b1,
            b2,
            normalization: js.transcript.clone(),
        },
        conditions: Conditions {
            l: c.l,
            i: c.i,
            transcript: c.transcript.iter().map(line).collect(),
        },
    })
}

fn oracle(input: &Value, mu: &str, nu: &str, window: i64) -> Outcome {
    #[derive(Serialize)]
    struct Out {
        lspace: bool,
    }
    let y = manifold(input)?;
    let lspace = surgery_is_lspace_oracle_window(&y, slope_arg(mu)?, slope_arg(nu)?, window)?;
    json(&Out { lspace })
}

fn cfd(input: &Value, mu: &Option<String>, lambda: &Option<String>, twist: bool) -> Outcome {
    let y = manifold(input)?;
    if twist {
        return json(&cfd_twist_compare_report(&y)?);
    }
    let graph = match (mu, lambda) {
        (Some(m), Some(l)) => build_cfd_at(&y, vector_arg(m)?, vector_arg(l)?)?,
        (Some(m), None) => build_cfd_with_mu(&y, slope_arg(m)?)?,
        (None, None) => build_cfd(&y)?,
        (None, Some(_)) => return Err(Failure::new("InvalidInput", "--lambda requires --mu")),
    };
    Ok(Success {
        text: graph.to_dot().trim_end().to_string(),
        code: 0,
    })
}

fn gst(input: &Value) -> Outcome {
    #[derive(Serialize)]
    struct Out {
        generalized_solid_torus: bool,
        floer_homology_solid_torus: bool,
        g: i64,
        k: i64,
        norm: i64,
        delta_bar: Vec<i64>,
        detail: String,
    }
    let y = manifold(input)?;
    let m = y.milnor_invariants()?;
    let twist = cfd_twist_compare_report(&y)?;
    json(&Out {
        generalized_solid_torus: m.gst,
        floer_homology_solid_torus: twist.isomorphic,
        g: y.g(),
        k: m.k,
        norm: m.norm,
        delta_bar: m.delta_bar,
        detail: twist.detail,
    })
}

fn self_test(seed: u64) -> Outcome {
    #[derive(Serialize)]
    struct Out {
        seed: u64,
        passed: usize,
        failed: usize,
        criteria: Vec<selftest::Criterion>,
    }
    let criteria = selftest::run_all(seed);
    for c in &criteria {
        eprintln!("{c}");
    }
    let passed = criteria.iter().filter(|c| c.pass).count();
    let failed = criteria.len() - passed;
    let mut s = json(&Out {
        seed,
        passed,
        failed,
        criteria,
    })?;
    s.code = i32::from(failed > 0);
    Ok(s)
}
