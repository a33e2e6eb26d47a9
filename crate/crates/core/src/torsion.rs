//! Floer simple manifolds described by their Turaev torsion.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::abelian::{FinAbGroup, GroupElement, Slope};
use crate::error::{Error, Result};

/// The JSON shape of a manifold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldRecord {
    #[serde(default)]
    pub torsion_orders: Vec<i64>,
    pub iota_m: GroupElement,
    pub iota_l: GroupElement,
    #[serde(default)]
    pub tauc_support: Vec<GroupElement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Slope>,
}

/// A validated torsion record: H₁(Y) = Z ⊕ T, the boundary images ι(m), ι(l),
/// and the finite support of τ^c. Coefficients of τ are 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ManifoldRecord", into = "ManifoldRecord")]
pub struct FloerSimpleManifold {
    pub group: FinAbGroup,
    pub iota_m: GroupElement,
    pub iota_l: GroupElement,
    pub tauc: BTreeSet<GroupElement>,
    pub witness: Option<Slope>,
    g: i64,
    k: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub g: i64,
    pub k: i64,
    /// |T / (T ∩ im ι)| computed from a presentation.
    pub quotient_order: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MilnorInvariants {
    /// Coefficients of Δ̄, constant term first.
    pub delta_bar: Vec<i64>,
    pub norm: i64,
    pub monic: bool,
    /// deg Δ̄ < g.
    pub gst: bool,
    pub k: i64,
}

/// δ·ι(m) + γ·ι(l), with 0 ≤ γ < g.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DtauElement {
    pub delta: i64,
    pub gamma: i64,
    pub element: GroupElement,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Dtau {
    /// D^τ≥, every element with δ ≥ 0.
    pub all: Vec<DtauElement>,
    /// D^τ>0.
    pub positive: Vec<DtauElement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaClosure {
    pub closed: bool,
    /// (δ, γ) pairs x, y in Γ whose sum lands in D^τ.
    pub counterexample: Option<((i64, i64), (i64, i64))>,
}

impl TryFrom<ManifoldRecord> for FloerSimpleManifold {
    type Error = Error;

    fn try_from(r: ManifoldRecord) -> Result<Self> {
        let group = FinAbGroup::new(r.torsion_orders)?;
        FloerSimpleManifold::new(group, r.iota_m, r.iota_l, r.tauc_support, r.witness)
    }
}

impl From<FloerSimpleManifold> for ManifoldRecord {
    fn from(y: FloerSimpleManifold) -> Self {
        ManifoldRecord {
            torsion_orders: y.group.torsion_orders,
            iota_m: y.iota_m,
            iota_l: y.iota_l,
            tauc_support: y.tauc.into_iter().collect(),
            witness: y.witness,
        }
    }
}

pub fn validate_manifold(r: &ManifoldRecord) -> Result<ValidationReport> {
    FloerSimpleManifold::try_from(r.clone())?.validation_report()
}

impl FloerSimpleManifold {
    pub fn new(
        group: FinAbGroup,
        iota_m: GroupElement,
        iota_l: GroupElement,
        tauc: impl IntoIterator<Item = GroupElement>,
        witness: Option<Slope>,
    ) -> Result<Self> {
        group.check(&iota_m)?;
        group.check(&iota_l)?;
        if iota_l.free != 0 {
            return Err(Error::NonTorsionLongitude(iota_l.free));
        }
        let g = group.torsion_order(&iota_l);
        if iota_m.free != g {
            return Err(Error::BadMeridianFreePart {
                expected: g,
                found: iota_m.free,
            });
        }
        let mut set = BTreeSet::new();
        for h in tauc {
            group.check(&h)?;
            if h.free < 0 {
                return Err(Error::NegativePhiInComplement(h.free));
            }
            if h == group.zero() {
                return Err(Error::ZeroInComplement);
            }
            set.insert(h);
        }
        let y = FloerSimpleManifold {
            k: group.torsion_size() / g,
            g,
            group,
            iota_m,
            iota_l,
            tauc: set,
            witness,
        };
        let report = y.validation_report()?;
        if report.quotient_order != y.k {
            return Err(Error::InvalidInput(format!(
                "|T|/g = {} but |T/<iota(l)>| = {}",
                y.k, report.quotient_order
            )));
        }
        Ok(y)
    }

    pub fn g(&self) -> i64 {
        self.g
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn with_witness(mut self, w: Slope) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn validation_report(&self) -> Result<ValidationReport> {
        let q = self
            .group
            .quotient_order(&[self.iota_l.clone(), self.group.free_elem(1)])
            .ok_or_else(|| Error::InvalidInput("torsion quotient is infinite".into()))?;
        Ok(ValidationReport {
            g: self.g,
            k: self.k,
            quotient_order: q,
        })
    }

    pub fn tau_coefficient(&self, h: &GroupElement) -> u8 {
        u8::from(h.free >= 0 && !self.tauc.contains(h))
    }

    pub fn in_tau(&self, h: &GroupElement) -> bool {
        self.tau_coefficient(h) == 1
    }

    /// Largest φ in τ^c, or −1 when τ^c is empty.
    pub fn max_tauc_phi(&self) -> i64 {
        self.tauc.iter().map(|h| h.free).max().unwrap_or(-1)
    }

    /// The image of the boundary class x·m + y·l.
    pub fn boundary_image(&self, (x, y): (i64, i64)) -> GroupElement {
        self.group.add(
            &self.group.scale(&self.iota_m, x),
            &self.group.scale(&self.iota_l, y),
        )
    }

    pub fn slope_image(&self, s: Slope) -> GroupElement {
        self.boundary_image((s.a, s.b))
    }

    /// |H₁(Y(μ))|, or `None` when μ is the longitude.
    pub fn filling_order(&self, mu: Slope) -> Option<i64> {
        self.group.quotient_order(&[self.slope_image(mu)])
    }

    pub fn milnor_invariants(&self) -> Result<MilnorInvariants> {
        let size = self.group.torsion_size();
        let top = self.max_tauc_phi().max(0) + 1;
        let mut counts = vec![0i64; top as usize + 1];
        for h in &self.tauc {
            counts[h.free as usize] += 1;
        }
        let tau_bar: Vec<i64> = counts.iter().map(|c| size - c).collect();
        let mut delta_bar: Vec<i64> = (0..tau_bar.len())
            .map(|i| tau_bar[i] - if i == 0 { 0 } else { tau_bar[i - 1] })
            .collect();
        while delta_bar.len() > 1 && *delta_bar.last().unwrap() == 0 {
            delta_bar.pop();
        }
        let deg = delta_bar.len() as i64 - 1;
        let lead = *delta_bar.last().unwrap();
        let mut buckets = vec![0i64; self.g as usize];
        for (i, c) in delta_bar.iter().enumerate() {
            buckets[i % self.g as usize] += c;
        }
        if buckets.iter().any(|&b| b != self.k) {
            return Err(Error::Lemma73Violation {
                g: self.g,
                k: self.k,
            });
        }
        Ok(MilnorInvariants {
            norm: deg - 1,
            monic: lead.abs() == 1,
            gst: deg < self.g,
            k: self.k,
            delta_bar,
        })
    }

    /// (δ, γ) with h = δ·ι(m) + γ·ι(l) and 0 ≤ γ < g, if h lies in the image of ι.
    pub fn iota_coordinates(&self, h: &GroupElement) -> Option<(i64, i64)> {
        if h.free % self.g != 0 {
            return None;
        }
        let delta = h.free / self.g;
        let rest = self.group.sub(h, &self.group.scale(&self.iota_m, delta));
        let mut acc = self.group.zero();
        for gamma in 0..self.g {
            if acc == rest {
                return Some((delta, gamma));
            }
            acc = self.group.add(&acc, &self.iota_l);
        }
        None
    }

    pub fn dtau(&self) -> Dtau {
        let mut all = BTreeSet::new();
        let mut longitudes = vec![self.group.zero()];
        for _ in 1..self.g {
            longitudes.push(self.group.add(longitudes.last().unwrap(), &self.iota_l));
        }
        for x in &self.tauc {
            for delta in 0..=x.free / self.g {
                let dm = self.group.scale(&self.iota_m, delta);
                for (gamma, gl) in longitudes.iter().enumerate() {
                    let d = self.group.add(&dm, gl);
                    if self.in_tau(&self.group.sub(x, &d)) {
                        all.insert(DtauElement {
                            delta,
                            gamma: gamma as i64,
                            element: d,
                        });
                    }
                }
            }
        }
        let all: Vec<DtauElement> = all.into_iter().collect();
        let positive = all.iter().filter(|d| d.delta > 0).cloned().collect();
        Dtau { all, positive }
    }

    /// Checks Γ = ι(mZ≥0 + lZ) ∖ D^τ is closed under addition for pairs with φ-sum ≤ bound.
    pub fn gamma_closed(&self, bound: i64) -> GammaClosure {
        let d: BTreeSet<(i64, i64)> = self.dtau().all.iter().map(|e| (e.delta, e.gamma)).collect();
        let g = self.g;
        let max_delta = bound.div_euclid(g);
        let gamma: Vec<(i64, i64)> = (0..=max_delta)
            .flat_map(|dl| (0..g).map(move |gm| (dl, gm)))
            .filter(|x| !d.contains(x))
            .collect();
        for (i, x) in gamma.iter().enumerate() {
            for y in &gamma[i..] {
                if (x.0 + y.0) * g > bound {
                    continue;
                }
                let s = (x.0 + y.0, (x.1 + y.1) % g);
                if d.contains(&s) {
                    return GammaClosure {
                        closed: false,
                        counterexample: Some((*x, *y)),
                    };
                }
            }
        }
        GammaClosure {
            closed: true,
            counterexample: None,
        }
    }

    /// Support of ĤFK of the core of the μ filling: {h : a_h − a_{h−ι(μ)} = 1}.
    pub fn hfk_support(&self, mu: Slope) -> Result<Vec<GroupElement>> {
        let mu = mu.primitive();
        if mu.a == 0 {
            return Err(Error::LongitudeFilling);
        }
        let im = self.slope_image(mu);
        let top = im.free + self.max_tauc_phi();
        let mut out = Vec::new();
        for phi in 0..=top {
            for h in self.group.level(phi) {
                let prev = self.group.sub(&h, &im);
                match self.tau_coefficient(&h) as i8 - self.tau_coefficient(&prev) as i8 {
                    0 => {}
                    1 => out.push(h),
                    _ => return Err(Error::NotFloerSimpleSlope(mu.to_string())),
                }
            }
        }
        Ok(out)
    }

    /// Re-encode with meridian m + k·l. Slopes (a, b) become (a, b − k·a).
    pub fn rebase(&self, k: i64) -> Result<Self> {
        let iota_m = self.boundary_image((1, k));
        let witness = self.witness.map(|w| Slope::new(w.a, w.b - k * w.a));
        FloerSimpleManifold::new(
            self.group.clone(),
            iota_m,
            self.iota_l.clone(),
            self.tauc.iter().cloned(),
            witness,
        )
    }

    /// Re-encode with longitude −l. Slopes (a, b) become (a, −b).
    pub fn flip_longitude(&self) -> Self {
        let mut y = self.clone();
        y.iota_l = self.group.neg(&self.iota_l);
        y.witness = self.witness.map(|w| Slope::new(w.a, -w.b));
        y
    }

    /// Number of τ^c elements at each φ level.
    pub fn tauc_profile(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for h in &self.tauc {
            *m.entry(h.free).or_insert(0) += 1;
        }
        m
    }
}
