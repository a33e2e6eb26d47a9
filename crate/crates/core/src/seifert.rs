//! Seifert fibered spaces over S²: M(e0; r_1/s_1, ..., r_n/s_n).

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::abelian::{FinAbGroup, GroupElement, Quotient, Slope};
use crate::error::{Error, Result};
use crate::torsion::FloerSimpleManifold;
use crate::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeifertData {
    pub e0: i64,
    #[serde(default)]
    pub fibers: Vec<(i64, i64)>,
}

impl SeifertData {
    pub fn new(e0: i64, fibers: &[(i64, i64)]) -> Self {
        SeifertData {
            e0,
            fibers: fibers.to_vec(),
        }
    }

    /// Σ r_i/s_i.
    pub fn fiber_sum(&self) -> Rat {
        self.fibers
            .iter()
            .map(|&(r, s)| Rat::new(r as i128, s as i128))
            .fold(Rat::zero(), |a, b| a + b)
    }

    /// e = e0 + Σ r_i/s_i.
    pub fn euler(&self) -> Rat {
        Rat::from_integer(self.e0 as i128) + self.fiber_sum()
    }

    fn lcm(&self) -> i64 {
        self.fibers.iter().fold(1, |a, &(_, s)| a.lcm(&s))
    }

    fn is_normalized(&self) -> bool {
        self.fibers
            .iter()
            .all(|&(r, s)| s > 0 && 0 < r && r < s && r.gcd(&s) == 1)
    }
}

impl std::fmt::Display for SeifertData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let fibers: Vec<String> = self
            .fibers
            .iter()
            .map(|(r, s)| format!("{r}/{s}"))
            .collect();
        write!(f, "M({}; {})", self.e0, fibers.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Normalized {
    pub data: SeifertData,
    pub transcript: Vec<String>,
}

/// Move each fiber into (0, 1) in lowest terms, absorbing integer parts into e0.
pub fn sfs_normalize(d: &SeifertData) -> Result<Normalized> {
    let mut e0 = d.e0;
    let mut fibers = Vec::new();
    let mut transcript = Vec::new();
    for &(r, s) in &d.fibers {
        if s == 0 {
            return Err(Error::InvalidInput(format!("fiber {r}/0")));
        }
        let (r0, s0) = if s < 0 { (-r, -s) } else { (r, s) };
        let gd = r0.gcd(&s0);
        let (r0, s0) = (r0 / gd, s0 / gd);
        if s0 == 1 {
            return Err(Error::IntegerFiberSlope(r, s));
        }
        let z = crate::abelian::floor_div(r0, s0);
        let r1 = r0 - z * s0;
        if z != 0 || (r0, s0) != (r, s) {
            transcript.push(format!("{r}/{s} -> {z} + {r1}/{s0}"));
        }
        e0 += z;
        fibers.push((r1, s0));
    }
    Ok(Normalized {
        data: SeifertData { e0, fibers },
        transcript,
    })
}

/// The orientation reversal M(−e0; −r_i/s_i), renormalized.
pub fn orientation_flip(d: &SeifertData) -> Result<Normalized> {
    let flipped = SeifertData {
        e0: -d.e0,
        fibers: d.fibers.iter().map(|&(r, s)| (-r, s)).collect(),
    };
    let mut n = sfs_normalize(&flipped)?;
    n.transcript.insert(0, format!("orientation flip of {d}"));
    Ok(n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SfsVerdict {
    pub lspace: bool,
    /// "euler-zero", "inequality" (strictly between the bounds) or "outside-bounds".
    pub reason: &'static str,
    pub euler: Rat,
    /// Verdict of the integer-part form of the inequality.
    pub fiber_form: bool,
    /// Verdict of the orbifold form, which compares e against shifted bounds.
    pub orbifold_form: bool,
    /// (min, max) of the two x-loops of the defining inequality.
    pub fiber_bounds: Option<(Rat, Rat)>,
    /// The same bounds shifted by Σ r_i/s_i, compared against e.
    pub orbifold_bounds: Option<(Rat, Rat)>,
}

fn frac_part(num: i64, den: i64) -> Rat {
    Rat::new(num.rem_euclid(den) as i128, den as i128)
}

/// min over 0 < x < s of −(1/x)(−1 + Σ⌈r_i x/s_i⌉), and max of −(1/x)(1 + Σ⌊r_i x/s_i⌋).
fn fiber_extremes(fibers: &[(i64, i64)], s: i64) -> (Rat, Rat) {
    let mut lo: Option<Rat> = None;
    let mut hi: Option<Rat> = None;
    for x in 1..s {
        let ceil: i64 = fibers
            .iter()
            .map(|&(r, si)| crate::abelian::ceil_div(r * x, si))
            .sum();
        let floor: i64 = fibers
            .iter()
            .map(|&(r, si)| crate::abelian::floor_div(r * x, si))
            .sum();
        let a = -Rat::new((ceil - 1) as i128, x as i128);
        let b = -Rat::new((1 + floor) as i128, x as i128);
        lo = Some(lo.map_or(a, |v| v.min(a)));
        hi = Some(hi.map_or(b, |v| v.max(b)));
    }
    (lo.expect("empty x-range"), hi.expect("empty x-range"))
}

/// The orbifold form: min (1/x)(1 − Σ[−r_i x]_{s_i}/s_i) and max (1/x)(−1 + Σ[r_i x]_{s_i}/s_i).
fn orbifold_extremes(fibers: &[(i64, i64)], s: i64) -> (Rat, Rat) {
    let mut lo: Option<Rat> = None;
    let mut hi: Option<Rat> = None;
    for x in 1..s {
        let xr = Rat::from_integer(x as i128);
        let neg: Rat = fibers.iter().map(|&(r, si)| frac_part(-r * x, si)).sum();
        let pos: Rat = fibers.iter().map(|&(r, si)| frac_part(r * x, si)).sum();
        let a = (Rat::one() - neg) / xr;
        let b = (pos - Rat::one()) / xr;
        lo = Some(lo.map_or(a, |v| v.min(a)));
        hi = Some(hi.map_or(b, |v| v.max(b)));
    }
    (lo.expect("empty x-range"), hi.expect("empty x-range"))
}

pub fn sfs_is_lspace(d: &SeifertData) -> Result<SfsVerdict> {
    let d = sfs_normalize(d)?.data;
    let euler = d.euler();
    if d.fibers.is_empty() {
        let lspace = d.e0 != 0;
        return Ok(SfsVerdict {
            lspace,
            reason: if lspace {
                "outside-bounds"
            } else {
                "euler-zero"
            },
            euler,
            fiber_form: lspace,
            orbifold_form: lspace,
            fiber_bounds: None,
            orbifold_bounds: None,
        });
    }
    let s = d.lcm();
    let (t_min, t_max) = fiber_extremes(&d.fibers, s);
    let (o_min, o_max) = orbifold_extremes(&d.fibers, s);
    let e0 = Rat::from_integer(d.e0 as i128);
    let fiber_between = t_min - e0 < Rat::zero() && Rat::zero() < t_max - e0;
    let orbifold_between = o_min < euler && euler < o_max;
    let (lspace, reason) = if euler.is_zero() {
        (false, "euler-zero")
    } else if fiber_between {
        (false, "inequality")
    } else {
        (true, "outside-bounds")
    };
    Ok(SfsVerdict {
        lspace,
        reason,
        euler,
        fiber_form: !euler.is_zero() && !fiber_between,
        orbifold_form: !euler.is_zero() && !orbifold_between,
        fiber_bounds: Some((t_min, t_max)),
        orbifold_bounds: Some((o_min, o_max)),
    })
}

/// Base surfaces other than S² give constant verdicts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseSurface {
    Sphere,
    ProjectivePlane,
    /// Orientable of positive genus, or any other nonorientable base.
    Other,
}

pub fn base_surface_verdict(base: BaseSurface, d: &SeifertData) -> Result<bool> {
    match base {
        BaseSurface::Sphere => Ok(sfs_is_lspace(d)?.lspace),
        BaseSurface::ProjectivePlane => Ok(true),
        BaseSurface::Other => Ok(false),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DtauEntry {
    pub j: i64,
    pub x: i64,
    pub delta: i64,
    pub a_minus: i64,
    pub b_minus: i64,
    pub a_plus: i64,
    pub b_plus: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SfsDtau {
    pub entries: Vec<DtauEntry>,
    pub p: i64,
    pub q_star: i64,
    pub g: i64,
    pub s: i64,
}

/// (s, g, p, q*) for the complement of the regular fiber.
fn basis_data(d: &SeifertData) -> (i64, i64, i64, i64) {
    let s = d.lcm();
    let sigma_s = d.fiber_sum() * Rat::from_integer(s as i128);
    assert!(sigma_s.is_integer());
    let sigma_s = *sigma_s.numer() as i64;
    let g = sigma_s.gcd(&s);
    (s, g, sigma_s / g, s / g)
}

pub fn sfs_dtau(d: &SeifertData) -> Result<SfsDtau> {
    if !d.is_normalized() {
        return Err(Error::InvalidInput(format!("{d} is not normalized")));
    }
    let (s, g, p, q_star) = basis_data(d);
    let n = d.fibers.len() as i64;
    let mut entries = Vec::new();
    for j in 1..n {
        for x in 1..s {
            let frac: Rat = d.fibers.iter().map(|&(r, si)| frac_part(r * x, si)).sum();
            let delta = Rat::from_integer(q_star as i128) * (frac - Rat::from_integer(j as i128));
            assert!(delta.is_integer(), "non-integral delta at j={j}, x={x}");
            let delta = *delta.numer() as i64;
            if delta < 0 {
                continue;
            }
            let floors: i64 = d
                .fibers
                .iter()
                .map(|&(r, si)| crate::abelian::floor_div(r * x, si))
                .sum();
            let b_minus = -j - floors;
            entries.push(DtauEntry {
                j,
                x,
                delta,
                a_minus: x,
                b_minus,
                a_plus: x - q_star * g,
                b_plus: b_minus + p * g,
            });
        }
    }
    Ok(SfsDtau {
        entries,
        p,
        q_star,
        g,
        s,
    })
}

/// L-space test through sfs_dtau and the (α, β) = (1, e0) form of the interval criterion.
pub fn sfs_dtau_verdict(d: &SeifertData) -> Result<bool> {
    let d = sfs_normalize(d)?.data;
    if d.fibers.is_empty() {
        return Ok(d.e0 != 0);
    }
    let t = sfs_dtau(&d)?;
    let n0 = t.q_star * d.e0 + t.p;
    if n0 == 0 {
        return Ok(false);
    }
    let beta = d.e0;
    let positive: Vec<&DtauEntry> = t.entries.iter().filter(|e| e.delta > 0).collect();
    if positive.is_empty() || beta == 0 {
        return Ok(true);
    }
    let ab = Rat::new(1, beta as i128);
    let beta_over_n_positive = (beta > 0) == (n0 > 0);
    Ok(positive.iter().all(|e| {
        if beta_over_n_positive {
            Rat::new(e.a_plus as i128, e.b_plus as i128) <= ab
        } else {
            ab <= Rat::new(e.a_minus as i128, e.b_minus as i128)
        }
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberInterval {
    pub j: usize,
    /// Fillings with r_j/s_j ≤ lower or ≥ upper are L-spaces (when e ≠ 0).
    pub lower: Rat,
    pub upper: Rat,
    pub lspace: bool,
}

/// Thresholds on r_j/s_j for fiber j (1-based) with the other fibers fixed.
pub fn sfs_fiber_interval(d: &SeifertData, j: usize) -> Result<FiberInterval> {
    let d = sfs_normalize(d)?.data;
    let n = d.fibers.len();
    if n < 2 {
        return Err(Error::InvalidInput(
            "fiber interval needs at least two fibers".into(),
        ));
    }
    if j == 0 || j > n {
        return Err(Error::InvalidInput(format!(
            "fiber index {j} out of range 1..={n}"
        )));
    }
    let others: Vec<(i64, i64)> = d
        .fibers
        .iter()
        .enumerate()
        .filter(|&(i, _)| i + 1 != j)
        .map(|(_, &f)| f)
        .collect();
    let s = others.iter().fold(1, |a, &(_, si)| a.lcm(&si));
    let e0 = Rat::from_integer(d.e0 as i128);
    let (t_min, t_max) = fiber_extremes(&others, s);
    let (lower, upper) = (t_min - e0, t_max - e0);
    let (r, sj) = d.fibers[j - 1];
    let x = Rat::new(r as i128, sj as i128);
    let lspace = !d.euler().is_zero() && (x <= lower || x >= upper);
    Ok(FiberInterval {
        j,
        lower,
        upper,
        lspace,
    })
}

/// Data of the complement Y of a regular fiber in M(e0; ...): its torsion record
/// in the (m, l) basis, with witness μ_L = p·m + q·l, and the classes
/// μ_L, λ_L, μ₀ where Y(μ₀) = M(e0; ...).
#[derive(Clone, Debug)]
pub struct FiberComplement {
    pub manifold: FloerSimpleManifold,
    pub mu_l: Slope,
    pub lambda_l: (i64, i64),
    pub mu_0: Slope,
}

/// Builds the torsion record of the complement of a regular fiber by Smith normal form.
pub fn fiber_complement(d: &SeifertData) -> Result<FiberComplement> {
    let d = sfs_normalize(d)?.data;
    let n = d.fibers.len();
    if n == 0 {
        return Err(Error::InvalidInput("no exceptional fibers".into()));
    }
    let (_, g, p, q_star) = basis_data(&d);
    // q ≡ −(q*)⁻¹ mod p, 0 ≤ q < p
    let q = if p == 1 {
        0
    } else {
        (-q_star.extended_gcd(&p).x).rem_euclid(p)
    };
    let p_star = (1 + q * q_star) / p;
    assert_eq!(p * p_star - q * q_star, 1);

    // generators f, h_0, ..., h_n
    let ngens = n + 2;
    let mut rels = vec![std::iter::once(0)
        .chain(std::iter::repeat_n(1, n + 1))
        .collect()];
    for (i, &(r, s)) in d.fibers.iter().enumerate() {
        let mut row = vec![0; ngens];
        row[0] = r;
        row[i + 2] = -s;
        rels.push(row);
    }
    let quot = Quotient::new(ngens, &rels);
    assert_eq!(quot.free_rank, 1, "fiber complement must have b1 = 1");
    let group = FinAbGroup::new(quot.orders.clone())?;
    let raw = |v: &[i64]| {
        let (free, tors) = quot.image(v);
        (free[0], tors)
    };
    let unit = |i: usize| {
        let mut v = vec![0; ngens];
        v[i] = 1;
        v
    };
    let comb = |a: i64, i: usize, b: i64, j: usize| {
        let mut v = vec![0; ngens];
        v[i] += a;
        v[j] += b;
        v
    };
    let m_raw = raw(&comb(-q, 0, -p_star, 1));
    let sign = if m_raw.0 < 0 { -1 } else { 1 };
    let elem = |v: &[i64]| {
        let (f, t) = raw(v);
        group.elem(sign * f, &t)
    };
    let iota_m = elem(&comb(-q, 0, -p_star, 1));
    let iota_l = elem(&comb(p, 0, q_star, 1));
    if iota_m.free != g {
        return Err(Error::InvalidInput(format!(
            "fiber complement meridian has free part {} (expected {g})",
            iota_m.free
        )));
    }

    // S[τ] = f·Z≥0 + {Σ y_i λ̂_i : 0 ≤ y_i < s_i}, λ̂_i = s_i*·f + r_i*·h_i
    let f = elem(&unit(0));
    assert!(f.free > 0);
    let hats: Vec<GroupElement> = d
        .fibers
        .iter()
        .enumerate()
        .map(|(i, &(r, s))| {
            let e = r.extended_gcd(&s);
            elem(&comb(e.y, 0, e.x, i + 2))
        })
        .collect();
    let mut boxes = vec![group.zero()];
    for (hat, &(_, s)) in hats.iter().zip(&d.fibers) {
        boxes = boxes
            .iter()
            .flat_map(|b| {
                (0..s)
                    .map(|y| group.add(b, &group.scale(hat, y)))
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    let top = boxes.iter().map(|b| b.free).max().unwrap() + f.free;
    let mut support = BTreeSet::new();
    for b in &boxes {
        let mut h = b.clone();
        while h.free <= top {
            support.insert(h.clone());
            h = group.add(&h, &f);
        }
    }
    let tauc: BTreeSet<GroupElement> = (0..=top)
        .flat_map(|phi| group.level(phi).collect::<Vec<_>>())
        .filter(|h| !support.contains(h))
        .collect();
    let mu_l = Slope::new(p, q);
    let minus_h0 = group.neg(&elem(&unit(1)));
    let y = FloerSimpleManifold::new(group.clone(), iota_m, iota_l, tauc, Some(mu_l))?;
    debug_assert_eq!(y.slope_image(mu_l), minus_h0);
    let mu_0 = Slope::new(p + d.e0 * q_star, q + d.e0 * p_star);
    Ok(FiberComplement {
        manifold: y,
        mu_l,
        lambda_l: (q_star, p_star),
        mu_0,
    })
}
