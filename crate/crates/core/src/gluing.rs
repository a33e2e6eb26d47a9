//! L-space gluings Y₁ ∪_φ Y₂ of Floer simple manifolds along their boundary tori.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::abelian::{
    intersects, union_covers, FinAbGroup, GluingMatrix, GroupElement, ProjInterval, Quotient, Slope,
};
use crate::error::{Error, Result};
use crate::interval::{canonical_dual, lspace_interval, stored_witness};
use crate::torsion::FloerSimpleManifold;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSplice", into = "RawSplice")]
pub struct SpliceProblem {
    pub y1: FloerSimpleManifold,
    pub y2: FloerSimpleManifold,
    pub phi: GluingMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawSplice {
    y1: FloerSimpleManifold,
    y2: FloerSimpleManifold,
    phi: [[i64; 2]; 2],
}

impl TryFrom<RawSplice> for SpliceProblem {
    type Error = Error;

    fn try_from(r: RawSplice) -> Result<Self> {
        Ok(SpliceProblem {
            y1: r.y1,
            y2: r.y2,
            phi: GluingMatrix::new(r.phi)?,
        })
    }
}

impl From<SpliceProblem> for RawSplice {
    fn from(p: SpliceProblem) -> Self {
        RawSplice {
            y1: p.y1,
            y2: p.y2,
            phi: p.phi.rows(),
        }
    }
}

impl SpliceProblem {
    /// The same gluing seen from the other side.
    pub fn swapped(&self) -> SpliceProblem {
        SpliceProblem {
            y1: self.y2.clone(),
            y2: self.y1.clone(),
            phi: self.phi.inverse(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpliceVerdict {
    pub lspace: bool,
    pub reason: &'static str,
    pub i1: Option<ProjInterval>,
    pub i2: Option<ProjInterval>,
    /// φ_P(I₁).
    pub image: Option<ProjInterval>,
    /// Whether the cover was tested with interiors.
    pub open_cover: bool,
}

pub fn splice_is_lspace(prob: &SpliceProblem) -> Result<SpliceVerdict> {
    if prob.phi.q_star() == 0 {
        return Ok(SpliceVerdict {
            lspace: false,
            reason: "not-rational-homology-sphere",
            i1: None,
            i2: None,
            image: None,
            open_cover: false,
        });
    }
    let i1 = lspace_interval(&prob.y1, stored_witness(&prob.y1)?)?.as_interval();
    let i2 = lspace_interval(&prob.y2, stored_witness(&prob.y2)?)?.as_interval();
    let image = prob.phi.apply_interval(&i1);
    if !intersects(&image.interior(), &i2.interior()) {
        return Err(Error::HypothesisNotMet(
            "interiors of φ(I1) and I2 are disjoint".into(),
        ));
    }
    let open_cover = !prob.y1.dtau().all.is_empty() && !prob.y2.dtau().all.is_empty();
    let lspace = if open_cover {
        union_covers(&[&image.interior(), &i2.interior()])
    } else {
        union_covers(&[&image, &i2])
    };
    Ok(SpliceVerdict {
        lspace,
        reason: if lspace {
            "intervals-cover"
        } else {
            "intervals-do-not-cover"
        },
        i1: Some(i1),
        i2: Some(i2),
        image: Some(image),
        open_cover,
    })
}

/// A slope μ₁ meeting every requirement of the construction, in a frame where
/// q* = −φ₁₂ > 0 and p₂ > 0.
#[derive(Clone, Debug)]
pub struct JudiciousSlope {
    pub y1: FloerSimpleManifold,
    pub y2: FloerSimpleManifold,
    pub phi: GluingMatrix,
    pub mu1: Slope,
    pub p1: i64,
    pub q1: i64,
    pub p2: i64,
    pub q2: i64,
    pub q_star: i64,
    /// λ₁ = q₁*·m₁ + p₁*·l₁ and λ₂ = −φ(λ₁), as (q_i*, p_i*).
    pub lambda1: (i64, i64),
    pub lambda2: (i64, i64),
    pub q_bar1: i64,
    pub q_bar2: i64,
    pub transcript: Vec<String>,
}

/// (m, l) ↦ (m, −l) on both sides.
fn flip_both(
    y1: &FloerSimpleManifold,
    y2: &FloerSimpleManifold,
    phi: &GluingMatrix,
) -> (FloerSimpleManifold, FloerSimpleManifold, GluingMatrix) {
    let phi = GluingMatrix {
        m11: phi.m11,
        m12: -phi.m12,
        m21: -phi.m21,
        m22: phi.m22,
    };
    (y1.flip_longitude(), y2.flip_longitude(), phi)
}

fn deg_factor(y: &FloerSimpleManifold) -> i64 {
    1 + y.max_tauc_phi().max(0)
}

const MAX_P1: i64 = 600;
const Q_SPREAD: i64 = 64;

pub fn judicious_slope(prob: &SpliceProblem) -> Result<JudiciousSlope> {
    if prob.phi.q_star() == 0 {
        return Err(Error::NotRationalHomologySphere);
    }
    let mut transcript = Vec::new();
    let (mut y1, mut y2, mut phi) = (prob.y1.clone(), prob.y2.clone(), prob.phi);
    if phi.q_star() < 0 {
        (y1, y2, phi) = flip_both(&y1, &y2, &phi);
        transcript.push("q* < 0: replaced l1, l2 by -l1, -l2".to_string());
    }
    let q_star = phi.q_star();
    let i1 = lspace_interval(&y1, stored_witness(&y1)?)?
        .as_interval()
        .interior();
    let i2 = lspace_interval(&y2, stored_witness(&y2)?)?
        .as_interval()
        .interior();
    if !intersects(&phi.apply_interval(&i1), &i2) {
        return Err(Error::HypothesisNotMet(
            "interiors of φ(I1) and I2 are disjoint".into(),
        ));
    }
    let bound = deg_factor(&y1) * deg_factor(&y2);
    let (g1, g2) = (y1.g(), y2.g());

    let mut found = None;
    'search: for p1 in (q_star.max(bound) + 1)..=MAX_P1 {
        if p1.gcd(&g2) != 1 {
            continue;
        }
        for t in 0..=Q_SPREAD * p1 {
            for q1 in if t == 0 { vec![0] } else { vec![t, -t] } {
                if p1.gcd(&q1) != 1 {
                    continue;
                }
                let mu1 = Slope::new(p1, q1);
                let (p2, _) = phi.apply_vec((p1, q1));
                let p2a = p2.abs();
                if p2a <= q_star
                    || p2a <= bound
                    || p1.gcd(&p2a) != 1
                    || p2a.gcd(&g1) != 1
                    || !i1.contains(mu1)
                    || !i2.contains(phi.apply_slope(mu1))
                {
                    continue;
                }
                found = Some((p1, q1, p2));
                break 'search;
            }
        }
    }
    let Some((p1, mut q1, p2)) = found else {
        return Err(Error::HypothesisNotMet(format!(
            "no judicious slope with p1 <= {MAX_P1}"
        )));
    };
    transcript.push(format!("judicious slope {p1}/{q1} (p2 = {p2})"));
    if p2 < 0 {
        phi = phi.negated();
        (y1, y2, phi) = flip_both(&y1, &y2, &phi);
        q1 = -q1;
        transcript.push("p2 < 0: replaced phi by -phi, then l1, l2 by -l1, -l2".to_string());
    }
    assert_eq!(phi.q_star(), q_star);

    let mu1 = Slope::new(p1, q1);
    let (p2, q2) = phi.apply_vec((p1, q1));
    assert!(p2 > 0);
    let lambda1 = canonical_dual(mu1);
    let (a, b) = phi.apply_vec(lambda1);
    let lambda2 = (-a, -b);
    assert_eq!(p2 * lambda2.1 - q2 * lambda2.0, 1);
    assert_eq!(lambda1.0 * p2 + lambda2.0 * p1, q_star);
    Ok(JudiciousSlope {
        q_bar1: lambda1.0.rem_euclid(p1),
        q_bar2: lambda2.0.rem_euclid(p2),
        y1,
        y2,
        phi,
        mu1,
        p1,
        q1,
        p2,
        q2,
        q_star,
        lambda1,
        lambda2,
        transcript,
    })
}

fn b_set(y: &FloerSimpleManifold, p: i64, q: i64) -> BTreeSet<i64> {
    let g = y.g();
    y.dtau()
        .all
        .iter()
        .map(|d| (p * d.gamma - q * d.delta).rem_euclid(p * g))
        .collect()
}

/// B_i = {[p_i γ − q_i δ]_{p_i g_i}} over all of D^τ≥(Y_i).
pub fn b_sets(js: &JudiciousSlope) -> (BTreeSet<i64>, BTreeSet<i64>) {
    (b_set(&js.y1, js.p1, js.q1), b_set(&js.y2, js.p2, js.q2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionLine {
    pub condition: &'static str,
    pub b: i64,
    /// ⌊b q̄₁/p₁⌋ + ⌊b q̄₂/p₂⌋, compared against b.
    pub value: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub l: [bool; 3],
    pub i: [bool; 3],
    pub l_verdict: bool,
    pub i_verdict: bool,
    /// Every L.iii evaluation plus the first failure of each other condition.
    pub transcript: Vec<ConditionLine>,
}

/// The L and I condition systems.
pub fn condition_systems(js: &JudiciousSlope) -> ConditionReport {
    let (b1s, b2s) = b_sets(js);
    let (p1, p2, g1, g2) = (js.p1, js.p2, js.y1.g(), js.y2.g());
    let g0 = g1.gcd(&g2);
    let modulus = p1 * p2 * g1 * g2 / g0;
    let f1 = |b: i64| crate::abelian::floor_div(b * js.q_bar1, p1);
    let f2 = |b: i64| crate::abelian::floor_div(b * js.q_bar2, p2);
    let big_f = |b: i64| f1(b) + f2(b);
    let mut transcript = Vec::new();
    let mut note = |condition: &'static str, b: i64, value: i64, holds: bool, always: bool| {
        if always
            || (!holds
                && !transcript
                    .iter()
                    .any(|l: &ConditionLine| l.condition == condition))
        {
            transcript.push(ConditionLine {
                condition,
                b,
                value,
                holds,
            });
        }
    };

    let mut class_ok = |name: &'static str, residues: &BTreeSet<i64>, m: i64| -> bool {
        let mut ok = true;
        for &r in residues {
            let mut b = r.rem_euclid(m);
            if b == 0 {
                b += m;
            }
            while b < modulus {
                let v = big_f(b);
                let holds = v >= b;
                note(name, b, v, holds, false);
                ok &= holds;
                b += m;
            }
        }
        ok
    };
    let l1 = class_ok("L.i", &b1s, p1 * g1);
    let l2 = class_ok("L.ii", &b2s, p2 * g2);
    let mut l3 = true;
    for &b1 in &b1s {
        for &b2 in &b2s {
            if (b1 - b2).rem_euclid(g0) != 0 {
                continue;
            }
            let b = crt(b1, p1 * g1, b2, p2 * g2, modulus);
            let v = big_f(b);
            let holds = v > b;
            note("L.iii", b, v, holds, true);
            l3 &= holds;
        }
    }

    let i1 = b1s.iter().all(|&b| {
        let v = big_f(b);
        note("I.i", b, v, v >= b, false);
        v >= b
    });
    let i2 = b2s.iter().all(|&b| {
        let v = big_f(b);
        note("I.ii", b, v, v >= b, false);
        v >= b
    });
    // f1(b1)/b1 + f2(b2)/b2 > 1  ⟺  f1(b1)·b2 + f2(b2)·b1 > b1·b2
    let i3 = b1s.iter().all(|&b1| {
        b2s.iter().all(|&b2| {
            let lhs = f1(b1) as i128 * b2 as i128 + f2(b2) as i128 * b1 as i128;
            lhs > b1 as i128 * b2 as i128
        })
    });
    ConditionReport {
        l: [l1, l2, l3],
        i: [i1, i2, i3],
        l_verdict: l1 && l2 && l3,
        i_verdict: i1 && i2 && i3,
        transcript,
    }
}

/// The b in [0, modulus) with b ≡ r1 (mod m1) and b ≡ r2 (mod m2).
fn crt(r1: i64, m1: i64, r2: i64, m2: i64, modulus: i64) -> i64 {
    let e = m1.extended_gcd(&m2);
    let d = e.gcd;
    assert_eq!((r2 - r1) % d, 0);
    let k = ((r2 - r1) / d) as i128 * e.x as i128 % (m2 / d) as i128;
    let b = (r1 as i128 + m1 as i128 * k).rem_euclid(modulus as i128) as i64;
    debug_assert_eq!(b.rem_euclid(m1), r1.rem_euclid(m1));
    debug_assert_eq!(b.rem_euclid(m2), r2.rem_euclid(m2));
    b
}

/// The Floer simple manifold Y with Y(μ_L) = Y₁(μ₁) # Y₂(μ₂) and Y(λ_L) = Y₁ ∪_φ Y₂.
#[derive(Clone, Debug)]
pub struct SplicedManifold {
    pub manifold: FloerSimpleManifold,
    pub mu_l: Slope,
    /// Slope of λ_L; its surgery label relative to μ_L is 1/q*.
    pub lambda_l: Slope,
    quotient: Quotient,
    sign: i64,
    split: usize,
    ngens: usize,
    shift: GroupElement,
}

impl SplicedManifold {
    fn image(&self, v: Vec<i64>) -> GroupElement {
        let (free, tors) = self.quotient.image(&v);
        self.manifold.group.elem(self.sign * free[0], &tors)
    }

    /// f₁ as a homomorphism H₁(Y₁) → H₁(Y).
    pub fn f1(&self, h: &GroupElement) -> GroupElement {
        let mut v: Vec<i64> = std::iter::once(h.free)
            .chain(h.torsion.iter().copied())
            .collect();
        v.resize(self.ngens, 0);
        self.image(v)
    }

    pub fn f2(&self, h: &GroupElement) -> GroupElement {
        let mut v = vec![0; self.split];
        v.push(h.free);
        v.extend(h.torsion.iter().copied());
        self.image(v)
    }

    /// The translation applied to normalize τ.
    pub fn shift(&self) -> &GroupElement {
        &self.shift
    }
}

pub fn spliced_manifold(js: &JudiciousSlope) -> Result<SplicedManifold> {
    let (y1, y2) = (&js.y1, &js.y2);
    let n1 = 1 + y1.group.torsion_orders.len();
    let n2 = 1 + y2.group.torsion_orders.len();
    let ngens = n1 + n2;
    let vec1 = |h: &GroupElement| {
        let mut v = y1.group.as_vector(h);
        v.resize(ngens, 0);
        v
    };
    let vec2 = |h: &GroupElement| {
        let mut v = vec![0; n1];
        v.extend(y2.group.as_vector(h));
        v
    };
    let mut rels = Vec::new();
    for (i, &o) in y1.group.torsion_orders.iter().enumerate() {
        let mut r = vec![0; ngens];
        r[1 + i] = o;
        rels.push(r);
    }
    for (i, &o) in y2.group.torsion_orders.iter().enumerate() {
        let mut r = vec![0; ngens];
        r[n1 + 1 + i] = o;
        rels.push(r);
    }
    let mu1_img = y1.slope_image(js.mu1);
    let mu2_img = y2.boundary_image((js.p2, js.q2));
    let glue: Vec<i64> = vec1(&mu1_img)
        .iter()
        .zip(vec2(&mu2_img))
        .map(|(a, b)| a - b)
        .collect();
    rels.push(glue);
    let quot = Quotient::new(ngens, &rels);
    assert_eq!(quot.free_rank, 1, "glued group must have rank one");
    let group = FinAbGroup::new(quot.orders.clone())?;
    let img = |v: Vec<i64>, sign: i64| {
        let (f, t) = quot.image(&v);
        group.elem(sign * f[0], &t)
    };

    let lam1 = y1.boundary_image(js.lambda1);
    let lam2 = y2.boundary_image(js.lambda2);
    let lam_v: Vec<i64> = vec1(&lam1)
        .iter()
        .zip(vec2(&lam2))
        .map(|(a, b)| a + b)
        .collect();
    let mu_v = vec1(&mu1_img);
    let phi_mu = img(mu_v.clone(), 1).free;
    let phi_lam = img(lam_v.clone(), 1).free;
    let d = phi_lam.gcd(&phi_mu);
    let (mut x, mut y) = (phi_lam / d, -phi_mu / d);
    if y < 0 {
        x = -x;
        y = -y;
    }
    let p = js.p1 * js.p2;
    assert_eq!(y, p, "longitude coefficient on λ_L");
    assert_eq!(x, -js.q_star, "longitude coefficient on μ_L");
    // m = u μ_L + v λ_L with u y − v x = 1
    let e = y.extended_gcd(&(-x));
    let (u, v) = (e.x, e.y);
    assert_eq!(u * y - v * x, 1);
    let m_v: Vec<i64> = mu_v
        .iter()
        .zip(&lam_v)
        .map(|(a, b)| u * a + v * b)
        .collect();
    let l_v: Vec<i64> = mu_v
        .iter()
        .zip(&lam_v)
        .map(|(a, b)| x * a + y * b)
        .collect();
    let sign = if img(m_v.clone(), 1).free < 0 { -1 } else { 1 };
    let iota_m = img(m_v, sign);
    let iota_l = img(l_v, sign);
    let g0 = y1.g().gcd(&y2.g());
    assert_eq!(iota_m.free, y1.g() * y2.g() / g0, "spliced g");

    let f1 = |h: &GroupElement| img(vec1(h), sign);
    let f2 = |h: &GroupElement| img(vec2(h), sign);
    let s1 = y1.hfk_support(js.mu1)?;
    let s2 = y2.hfk_support(Slope::new(js.p2, js.q2))?;
    let mut black: BTreeSet<GroupElement> = BTreeSet::new();
    for a in &s1 {
        for b in &s2 {
            black.insert(group.add(&f1(a), &f2(b)));
        }
    }
    assert_eq!(
        black.len(),
        s1.len() * s2.len(),
        "spliced black set collision"
    );
    let shift = black.iter().min().cloned().unwrap();
    let black: Vec<GroupElement> = black.iter().map(|s| group.sub(s, &shift)).collect();

    let im = img(mu_v, sign);
    let step = im.free;
    assert!(step > 0);
    let key = |h: &GroupElement| {
        let n = crate::abelian::floor_div(h.free, step);
        (group.sub(h, &group.scale(&im, n)), n)
    };
    let mut by_coset: BTreeMap<GroupElement, i64> = BTreeMap::new();
    for s in &black {
        let (k, n) = key(s);
        assert!(
            by_coset.insert(k, n).is_none(),
            "two black elements in one coset"
        );
    }
    let top = black.iter().map(|s| s.free).max().unwrap();
    let mut tauc = Vec::new();
    for phi in 0..top {
        for h in group.level(phi) {
            let (k, n) = key(&h);
            if n < by_coset[&k] {
                tauc.push(h);
            }
        }
    }
    let mu_l = Slope::new(y, -v);
    let lambda_l = Slope::new(js.q_star, u);
    let manifold = FloerSimpleManifold::new(group, iota_m, iota_l, tauc, Some(mu_l))?;
    let mu_img = manifold.slope_image(mu_l);
    assert_eq!(mu_img, im, "witness image");
    Ok(SplicedManifold {
        manifold,
        mu_l,
        lambda_l,
        quotient: quot,
        sign,
        split: n1,
        ngens,
        shift,
    })
}

/// D^τ≥ of the spliced manifold assembled from the pieces: A₀ ⊔ (A₁ ∪ A₂) ⊔ A₃,
/// restricted to the image of the boundary.
pub fn predicted_dtau(js: &JudiciousSlope, sp: &SplicedManifold) -> BTreeSet<GroupElement> {
    let y = &sp.manifold;
    let grp = &y.group;
    let (y1, y2) = (&js.y1, &js.y2);
    let (p1, p2) = (js.p1, js.p2);
    let d1: Vec<GroupElement> = y1.dtau().all.into_iter().map(|d| d.element).collect();
    let d2: Vec<GroupElement> = y2.dtau().all.into_iter().map(|d| d.element).collect();
    let multiples = |h: &GroupElement, n: i64| -> Vec<GroupElement> {
        (0..n).map(|k| grp.scale(h, k)).collect()
    };
    let sum = |a: &[GroupElement], b: &[GroupElement]| -> Vec<GroupElement> {
        a.iter()
            .flat_map(|x| b.iter().map(move |z| grp.add(x, z)))
            .collect()
    };
    let mut out = BTreeSet::new();

    let t_boundary = multiples(&y.iota_l, y.g());
    // k·ι(m) for k ≥ 0 outside the semigroup ⟨p₁, p₂⟩; the largest gap is p₁p₂ − p₁ − p₂.
    let gaps: Vec<GroupElement> = (0..p1 * p2)
        .filter(|&k| !(0..=k / p1).any(|i| (k - i * p1) % p2 == 0))
        .map(|k| grp.scale(&y.iota_m, k))
        .collect();
    out.extend(sum(&gaps, &t_boundary));

    let side = |d: &[GroupElement],
                f: &dyn Fn(&GroupElement) -> GroupElement,
                other: &FloerSimpleManifold,
                p_other: i64,
                f_other: &dyn Fn(&GroupElement) -> GroupElement| {
        let ms: Vec<GroupElement> = (0..p_other)
            .map(|j| f_other(&other.group.scale(&other.iota_m, j)))
            .collect();
        let ls: Vec<GroupElement> = (0..other.g())
            .map(|j| f_other(&other.group.scale(&other.iota_l, j)))
            .collect();
        let fd: Vec<GroupElement> = d.iter().map(f).collect();
        sum(&fd, &sum(&ms, &ls))
    };
    let f1 = |h: &GroupElement| sp.f1(h);
    let f2 = |h: &GroupElement| sp.f2(h);
    out.extend(side(&d1, &f1, y2, p2, &f2));
    out.extend(side(&d2, &f2, y1, p1, &f1));

    let mu_img = y.slope_image(sp.mu_l);
    let f1d: Vec<GroupElement> = d1.iter().map(|h| grp.add(&mu_img, &sp.f1(h))).collect();
    let f2d: Vec<GroupElement> = d2.iter().map(|h| sp.f2(h)).collect();
    out.extend(sum(&f1d, &f2d));

    out.into_iter()
        .filter(|h| h.free >= 0 && y.iota_coordinates(h).is_some())
        .collect()
}

/// Glues along φ and decides via the spliced manifold's own interval.
pub fn splice_via_spliced(prob: &SpliceProblem) -> Result<(JudiciousSlope, SplicedManifold, bool)> {
    let js = judicious_slope(prob)?;
    let sp = spliced_manifold(&js)?;
    let lspace = crate::interval::is_lspace_slope(&sp.manifold, sp.mu_l, sp.lambda_l)?;
    Ok((js, sp, lspace))
}
