//! Type D structures of Floer simple manifolds as decorated graphs.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::abelian::{dot, GroupElement, Slope};
use crate::error::{Error, Result};
use crate::interval::{lspace_interval, stored_witness};
use crate::torsion::FloerSimpleManifold;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ArrowLabel {
    D1,
    D3,
    D23,
}

impl ArrowLabel {
    pub fn rho(self) -> &'static str {
        match self {
            ArrowLabel::D1 => "rho1",
            ArrowLabel::D3 => "rho3",
            ArrowLabel::D23 => "rho23",
        }
    }
}

/// A generator: idempotent 0 or 1 together with its Spin^c grading.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub idempotent: u8,
    pub grading: GroupElement,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub source: Vertex,
    pub target: Vertex,
    pub label: ArrowLabel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfdGraph {
    pub mu: (i64, i64),
    pub lambda: (i64, i64),
    pub v0: Vec<GroupElement>,
    pub v1: Vec<GroupElement>,
    /// j(s) = s + shift.
    pub shift: GroupElement,
    pub arrows: Vec<Arrow>,
}

impl CfdGraph {
    pub fn count(&self, label: ArrowLabel) -> usize {
        self.arrows.iter().filter(|a| a.label == label).count()
    }

    /// Number of arrow ends at each vertex.
    pub fn valences(&self) -> Vec<(Vertex, usize)> {
        let verts = self
            .v0
            .iter()
            .map(|g| Vertex {
                idempotent: 0,
                grading: g.clone(),
            })
            .chain(self.v1.iter().map(|g| Vertex {
                idempotent: 1,
                grading: g.clone(),
            }));
        verts
            .map(|v| {
                let n = self
                    .arrows
                    .iter()
                    .map(|a| usize::from(a.source == v) + usize::from(a.target == v))
                    .sum();
                (v, n)
            })
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let name = |v: &Vertex| format!("\"v{}_{}\"", v.idempotent, v.grading);
        let mut out = String::from("digraph cfd {\n");
        let _ = writeln!(
            out,
            "  label=\"mu=({},{}) lambda=({},{})\";",
            self.mu.0, self.mu.1, self.lambda.0, self.lambda.1
        );
        for (i, row) in [&self.v0, &self.v1].into_iter().enumerate() {
            for g in row {
                let v = Vertex {
                    idempotent: i as u8,
                    grading: g.clone(),
                };
                let _ = writeln!(
                    out,
                    "  {} [label=\"{}\", shape={}];",
                    name(&v),
                    g,
                    ["circle", "box"][i]
                );
            }
        }
        for a in &self.arrows {
            let _ = writeln!(
                out,
                "  {} -> {} [label=\"{}\"];",
                name(&a.source),
                name(&a.target),
                a.label.rho()
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the graph at the framing (μ, λ), which must satisfy μ·λ = 1 and φ(ι(μ)) > 0.
pub fn build_cfd_at(
    y: &FloerSimpleManifold,
    mu: (i64, i64),
    lambda: (i64, i64),
) -> Result<CfdGraph> {
    if dot(mu, lambda) != 1 {
        return Err(Error::InvalidInput(format!(
            "mu . lambda = {}",
            dot(mu, lambda)
        )));
    }
    if mu.0 <= 0 {
        return Err(Error::InvalidInput("phi(mu) must be positive".into()));
    }
    let grp = &y.group;
    let v0 = y.hfk_support(Slope::new(mu.0, mu.1))?;
    let v1 = y.hfk_support(Slope::new(lambda.0, lambda.1))?;
    let im = y.boundary_image(mu);
    let il = y.boundary_image(lambda);
    let v1_set: BTreeSet<&GroupElement> = v1.iter().collect();
    let top0 = v0.iter().max_by_key(|s| s.free).unwrap();
    let top1 = v1.iter().map(|s| s.free).max().unwrap();
    let d3_shift = grp.add(&il, &im);

    let mut found = None;
    for w in v1.iter().filter(|w| w.free == top1) {
        let c = grp.sub(w, top0);
        let ok = v0.iter().all(|s| {
            let j = grp.add(s, &c);
            v1_set.contains(&j) && v1_set.contains(&grp.add(&j, &d3_shift))
        });
        if ok {
            found = Some(c);
            break;
        }
    }
    let Some(c) = found else {
        return Err(Error::InvalidInput(format!(
            "no grading shift j at framing mu=({},{}) lambda=({},{})",
            mu.0, mu.1, lambda.0, lambda.1
        )));
    };

    let vx = |i: u8, g: GroupElement| Vertex {
        idempotent: i,
        grading: g,
    };
    let mut arrows = Vec::new();
    let mut d1_image = BTreeSet::new();
    let mut d3_image = BTreeSet::new();
    for s in &v0 {
        let j = grp.add(s, &c);
        let j3 = grp.add(&j, &d3_shift);
        d1_image.insert(j.clone());
        d3_image.insert(j3.clone());
        arrows.push(Arrow {
            source: vx(0, s.clone()),
            target: vx(1, j),
            label: ArrowLabel::D1,
        });
        arrows.push(Arrow {
            source: vx(0, s.clone()),
            target: vx(1, j3),
            label: ArrowLabel::D3,
        });
    }
    if d1_image.len() != v0.len() || d3_image.len() != v0.len() {
        return Err(Error::InvalidInput("D1 or D3 is not injective".into()));
    }
    for w in &v1 {
        if d1_image.contains(w) {
            continue;
        }
        let t = grp.add(w, &im);
        if !v1_set.contains(&t) || d3_image.contains(&t) {
            return Err(Error::InvalidInput(format!(
                "D23 from {w} has no admissible target"
            )));
        }
        arrows.push(Arrow {
            source: vx(1, w.clone()),
            target: vx(1, t),
            label: ArrowLabel::D23,
        });
    }
    arrows.sort();
    let graph = CfdGraph {
        mu,
        lambda,
        v0,
        v1,
        shift: c,
        arrows,
    };
    if let Some((v, n)) = graph.valences().into_iter().find(|(_, n)| *n != 2) {
        return Err(Error::InvalidInput(format!(
            "vertex {} has valence {n}",
            v.grading
        )));
    }
    Ok(graph)
}

/// A class λ₀ with μ·λ₀ = 1.
fn dual_vector(mu: (i64, i64)) -> (i64, i64) {
    // a·y − b·x = 1
    let e = mu.0.extended_gcd(&(-mu.1));
    assert_eq!(e.gcd, 1);
    (e.y, e.x)
}

const MAX_EXTRA_TWISTS: i64 = 64;

/// Builds at λ = λ₀ − Nμ for the least admissible N.
pub fn build_cfd_with_mu(y: &FloerSimpleManifold, mu: Slope) -> Result<CfdGraph> {
    let mu_v = (mu.a, mu.b);
    let v0 = y.hfk_support(mu)?;
    let spread =
        v0.iter().map(|s| s.free).max().unwrap() - v0.iter().map(|s| s.free).min().unwrap();
    let l0 = dual_vector(mu_v);
    let g = y.g();
    let phi = |v: (i64, i64)| g * v.0;
    let n_min = (0..)
        .find(|&n| -phi((l0.0 - n * mu.a, l0.1 - n * mu.b)) > spread)
        .unwrap();
    let mut last = None;
    for n in n_min..n_min + MAX_EXTRA_TWISTS {
        let lambda = (l0.0 - n * mu.a, l0.1 - n * mu.b);
        match build_cfd_at(y, mu_v, lambda) {
            Ok(gr) => return Ok(gr),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap())
}

/// Chooses μ inside the L-space interval with φ(ι(μ)) above the norm, then builds.
pub fn build_cfd(y: &FloerSimpleManifold) -> Result<CfdGraph> {
    let interior = lspace_interval(y, stored_witness(y)?)?
        .as_interval()
        .interior();
    let norm = y.milnor_invariants()?.norm;
    for a in 1..=64i64 {
        if y.g() * a <= norm {
            continue;
        }
        for t in 0..=4 * a + 8 {
            for b in if t == 0 { vec![0] } else { vec![t, -t] } {
                let mu = Slope::new(a, b);
                if !mu.is_primitive() || !interior.contains(mu) {
                    continue;
                }
                if let Ok(gr) = build_cfd_with_mu(y, mu) {
                    return Ok(gr);
                }
            }
        }
    }
    Err(Error::InvalidInput("no admissible framing found".into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistComparison {
    pub isomorphic: bool,
    pub gst: bool,
    pub n: Option<i64>,
    pub detail: String,
}

/// Compares the graphs at (m, l − Nm) and (m + l, l − Nm − Nl) via x ↦ x + ⌊φ(x)/g⌋·ι(l).
pub fn cfd_twist_compare_report(y: &FloerSimpleManifold) -> Result<TwistComparison> {
    let gst = y.milnor_invariants()?.gst;
    let g = y.g();
    let grp = &y.group;
    let shift = |x: &GroupElement| {
        grp.add(
            x,
            &grp.scale(&y.iota_l, crate::abelian::floor_div(x.free, g)),
        )
    };
    // S_m spans at most φ(ι(m)) + max φ(τ^c)
    let n0 = (g + y.max_tauc_phi().max(0)) / g + 1;
    let mut detail = String::from("no framing pair could be built");
    for n in n0..n0 + MAX_EXTRA_TWISTS {
        let (Ok(a), Ok(b)) = (
            build_cfd_at(y, (1, 0), (-n, 1)),
            build_cfd_at(y, (1, 1), (-n, 1 - n)),
        ) else {
            continue;
        };
        let map_v = |v: &Vertex| Vertex {
            idempotent: v.idempotent,
            grading: shift(&v.grading),
        };
        let v0: BTreeSet<GroupElement> = a.v0.iter().map(&shift).collect();
        let v1: BTreeSet<GroupElement> = a.v1.iter().map(&shift).collect();
        let bijective = v0 == b.v0.iter().cloned().collect()
            && v1 == b.v1.iter().cloned().collect()
            && v0.len() == a.v0.len()
            && v1.len() == a.v1.len();
        let mut mapped: Vec<Arrow> = a
            .arrows
            .iter()
            .map(|x| Arrow {
                source: map_v(&x.source),
                target: map_v(&x.target),
                label: x.label,
            })
            .collect();
        mapped.sort();
        let isomorphic = bijective && mapped == b.arrows;
        detail = if isomorphic {
            "shift map preserves generators and arrows".into()
        } else if bijective {
            "shift map does not preserve arrows".into()
        } else {
            "shift map is not a bijection of generators".into()
        };
        return Ok(TwistComparison {
            isomorphic,
            gst,
            n: Some(n),
            detail,
        });
    }
    Ok(TwistComparison {
        isomorphic: false,
        gst,
        n: None,
        detail,
    })
}

pub fn cfd_twist_compare(y: &FloerSimpleManifold) -> Result<bool> {
    Ok(cfd_twist_compare_report(y)?.isomorphic)
}
