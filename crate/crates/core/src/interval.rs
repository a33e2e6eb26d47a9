//! The L-space interval of a Floer simple manifold.

use num_integer::Integer;
use serde::Serialize;

use crate::abelian::{ceil_div, floor_div, pairing_and_label, ProjInterval, Slope};
use crate::error::{Error, Result};
use crate::torsion::{DtauElement, FloerSimpleManifold};
use crate::Rat;

/// b₊ and b₋ = b₊ − pg for one element of D^τ>0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub dtau: DtauElement,
    pub b_plus: i64,
    pub b_minus: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub witness: Slope,
    /// μ_L·l.
    pub p: i64,
    pub q: i64,
    pub bounds: Vec<Bound>,
    /// Whether the ĤFK coherence check ran (φ(ι(μ_L)) > norm).
    pub hfk_checked: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum IntervalKind {
    AllButLongitude,
    ClosedInterval { lo: Slope, hi: Slope },
    ComplementOfPoint { at: Slope },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LSpaceIntervalResult {
    pub kind: IntervalKind,
    /// (max b₋/δ, min b₊/δ) on surgery labels.
    pub label_bounds: Option<(Rat, Rat)>,
    /// Elements of D^τ>0 achieving the lower and upper label bounds.
    pub achieving: Option<(DtauElement, DtauElement)>,
}

impl LSpaceIntervalResult {
    pub fn as_interval(&self) -> ProjInterval {
        match self.kind {
            IntervalKind::AllButLongitude => ProjInterval::ComplementOfPoint { at: Slope::L },
            IntervalKind::ClosedInterval { lo, hi } => ProjInterval::closed(lo, hi),
            IntervalKind::ComplementOfPoint { at } => ProjInterval::ComplementOfPoint { at },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub direct: bool,
    pub dual_form: bool,
    pub endpoint_form: bool,
    pub consistent: bool,
}

pub fn validate_witness(y: &FloerSimpleManifold, mu_l: Slope) -> Result<WitnessReport> {
    let w = Slope::try_new(mu_l.a, mu_l.b)?;
    if w.a == 0 {
        return Err(Error::WitnessOnLongitude);
    }
    if !w.is_primitive() {
        return Err(Error::InvalidInput(format!("witness {w} is not primitive")));
    }
    let (p, q, g) = (w.a, w.b, y.g());
    let mut bounds = Vec::new();
    for d in y.dtau().positive {
        let b_plus = (p * d.gamma - q * d.delta).rem_euclid(p * g);
        if b_plus == 0 {
            return Err(Error::WitnessOnIntervalBoundary {
                delta: d.delta,
                gamma: d.gamma,
            });
        }
        bounds.push(Bound {
            b_minus: b_plus - p * g,
            b_plus,
            dtau: d,
        });
    }
    let norm = y.milnor_invariants()?.norm;
    let hfk_checked = p * g > norm;
    if hfk_checked {
        y.hfk_support(w)?;
    }
    Ok(WitnessReport {
        witness: w,
        p,
        q,
        bounds,
        hfk_checked,
    })
}

fn label_in_bounds(report: &WitnessReport, label: Rat) -> bool {
    report.bounds.iter().all(|b| {
        let d = b.dtau.delta as i128;
        Rat::new(b.b_minus as i128, d) <= label && label <= Rat::new(b.b_plus as i128, d)
    })
}

pub fn is_lspace_slope(y: &FloerSimpleManifold, mu_l: Slope, mu: Slope) -> Result<bool> {
    let report = validate_witness(y, mu_l)?;
    Ok(label_verdict(&report, mu))
}

fn label_verdict(report: &WitnessReport, mu: Slope) -> bool {
    let (_, _, label) = pairing_and_label(report.witness, mu.primitive());
    match label {
        None => false,
        Some(r) => label_in_bounds(report, r),
    }
}

/// The slope with surgery label b/δ relative to μ_L = (p, q).
fn slope_with_label(p: i64, q: i64, b: i64, delta: i64) -> Slope {
    Slope::new(p * delta, q * delta + b).primitive()
}

/// Lifts δm + c₊l and δm + c₋l of δι(m) + γι(l).
fn lifts(p: i64, q: i64, g: i64, d: &DtauElement) -> (i64, i64) {
    let up = ceil_div(q * d.delta, p);
    let down = floor_div(q * d.delta, p);
    (
        up + (d.gamma - up).rem_euclid(g),
        down - (down - d.gamma).rem_euclid(g),
    )
}

pub fn lspace_interval(y: &FloerSimpleManifold, mu_l: Slope) -> Result<LSpaceIntervalResult> {
    let r = validate_witness(y, mu_l)?;
    if r.bounds.is_empty() {
        return Ok(LSpaceIntervalResult {
            kind: IntervalKind::AllButLongitude,
            label_bounds: None,
            achieving: None,
        });
    }
    let lower = |b: &Bound| Rat::new(b.b_minus as i128, b.dtau.delta as i128);
    let upper = |b: &Bound| Rat::new(b.b_plus as i128, b.dtau.delta as i128);
    let lo_b = r.bounds.iter().max_by_key(|b| lower(b)).unwrap();
    let hi_b = r.bounds.iter().min_by_key(|b| upper(b)).unwrap();

    let (p, q, g) = (r.p, r.q, y.g());
    let (c_plus, _) = lifts(p, q, g, &hi_b.dtau);
    let (_, c_minus) = lifts(p, q, g, &lo_b.dtau);
    assert_eq!(p * c_plus - q * hi_b.dtau.delta, hi_b.b_plus);
    assert_eq!(p * c_minus - q * lo_b.dtau.delta, lo_b.b_minus);

    // labels increase as the slope coordinate p/(q + label) decreases
    let lo = Slope::new(hi_b.dtau.delta, c_plus).primitive();
    let hi = Slope::new(lo_b.dtau.delta, c_minus).primitive();
    debug_assert_eq!(lo, slope_with_label(p, q, hi_b.b_plus, hi_b.dtau.delta));
    debug_assert_eq!(hi, slope_with_label(p, q, lo_b.b_minus, lo_b.dtau.delta));
    let kind = if lo == hi {
        IntervalKind::ComplementOfPoint { at: lo }
    } else {
        IntervalKind::ClosedInterval { lo, hi }
    };
    Ok(LSpaceIntervalResult {
        kind,
        label_bounds: Some((lower(lo_b), upper(hi_b))),
        achieving: Some((lo_b.dtau.clone(), hi_b.dtau.clone())),
    })
}

/// λ_L = q*·m + p*·l with p·p* − q·q* = 1 and 0 ≤ q* < p.
pub fn canonical_dual(mu_l: Slope) -> (i64, i64) {
    let (p, q) = (mu_l.a, mu_l.b);
    assert!(p > 0);
    if p == 1 {
        return (0, 1);
    }
    // q* ≡ −q⁻¹ (mod p)
    let e = q.extended_gcd(&p);
    let q_star = (-e.x).rem_euclid(p);
    let num = 1 + q * q_star;
    assert_eq!(num.rem_euclid(p), 0);
    (q_star, num / p)
}

fn dual_form(report: &WitnessReport, mu: Slope) -> bool {
    let (p, q) = (report.p, report.q);
    let (q_star, p_star) = canonical_dual(report.witness);
    let lambda = Slope {
        a: q_star,
        b: p_star,
    };
    let alpha = mu.dot(lambda);
    let beta = report.witness.dot(mu);
    let n = alpha * p + beta * q_star;
    debug_assert_eq!(n, mu.a);
    debug_assert_eq!(p * p_star - q * q_star, 1);
    if n == 0 {
        return false;
    }
    if beta == 0 {
        return true;
    }
    let ab = Rat::new(alpha as i128, beta as i128);
    let positive = (beta > 0) == (n > 0);
    report.bounds.iter().all(|b| {
        let a_of = |bb: i64| {
            let num = b.dtau.delta - bb * q_star;
            assert_eq!(num % p, 0);
            num / p
        };
        if positive {
            Rat::new(a_of(b.b_plus) as i128, b.b_plus as i128) <= ab
        } else {
            ab <= Rat::new(a_of(b.b_minus) as i128, b.b_minus as i128)
        }
    })
}

/// The closed arc with endpoints (δ, c₊) and (δ, c₋) that misses l.
pub fn endpoint_interval(report: &WitnessReport, g: i64, d: &DtauElement) -> ProjInterval {
    let (c_plus, c_minus) = lifts(report.p, report.q, g, d);
    let x = Slope::new(d.delta, c_plus).primitive();
    let y = Slope::new(d.delta, c_minus).primitive();
    let arc = ProjInterval::closed(x, y);
    if arc.contains(Slope::L) {
        ProjInterval::closed(y, x)
    } else {
        arc
    }
}

fn endpoint_form(report: &WitnessReport, g: i64, mu: Slope) -> bool {
    let mu = mu.primitive();
    mu != Slope::L
        && report
            .bounds
            .iter()
            .all(|b| endpoint_interval(report, g, &b.dtau).contains(mu))
}

pub fn check_corollary_consistency(
    y: &FloerSimpleManifold,
    mu_l: Slope,
    mu: Slope,
) -> Result<ConsistencyReport> {
    let report = validate_witness(y, mu_l)?;
    let mu = mu.primitive();
    let direct = label_verdict(&report, mu);
    let dual = dual_form(&report, mu);
    let endpoint = endpoint_form(&report, y.g(), mu);
    Ok(ConsistencyReport {
        direct,
        dual_form: dual,
        endpoint_form: endpoint,
        consistent: direct == dual && dual == endpoint,
    })
}

pub fn nls_detected(y: &FloerSimpleManifold, mu_l: Slope) -> Result<ProjInterval> {
    Ok(lspace_interval(y, mu_l)?
        .as_interval()
        .complement()
        .closure())
}

/// The witness stored on the record.
pub fn stored_witness(y: &FloerSimpleManifold) -> Result<Slope> {
    y.witness
        .ok_or_else(|| Error::InvalidInput("manifold record has no witness".into()))
}
