//! Brute-force L-space oracle: proper colorings of Spin^c cosets.
//!
//! A rational filling Y(ν) is written as integral surgery on K_μ # K₂, with K₂ a
//! simple knot in a lens space. The combined group is
//! G′ = (H₁(Y) ⊕ Z·e) / ⟨ι(μ) − β·e⟩, whose elements are kept in the normal form
//! (h, k) with 0 ≤ k < β.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use crate::abelian::{FinAbGroup, GroupElement, Slope};
use crate::error::{Error, Result};
use crate::torsion::FloerSimpleManifold;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Color {
    Black,
    Red,
    Blue,
}

/// One coset of ⟨λ′⟩, walked upward in φ′ from a representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoredCoset {
    pub representative: (GroupElement, i64),
    /// (φ′, color) in increasing φ′ order.
    pub entries: Vec<(i64, Color)>,
}

impl ColoredCoset {
    /// No red entry strictly before a blue one.
    pub fn is_properly_colored(&self) -> bool {
        let mut seen_red = false;
        for &(_, c) in &self.entries {
            match c {
                Color::Red => seen_red = true,
                Color::Blue if seen_red => return false,
                _ => {}
            }
        }
        true
    }
}

/// S_BLACK for the base slope μ, indexed by coset of ⟨ι(μ)⟩.
pub struct Coloring<'a> {
    y: &'a FloerSimpleManifold,
    im: GroupElement,
    black: BTreeMap<GroupElement, GroupElement>,
    min_phi: i64,
    max_phi: i64,
}

impl<'a> Coloring<'a> {
    pub fn new(y: &'a FloerSimpleManifold, mu: Slope) -> Result<Self> {
        let mu = mu.primitive();
        let support = y.hfk_support(mu)?;
        let im = y.slope_image(mu);
        let mut c = Coloring {
            y,
            im,
            black: BTreeMap::new(),
            min_phi: support.iter().map(|s| s.free).min().unwrap_or(0),
            max_phi: support.iter().map(|s| s.free).max().unwrap_or(0),
        };
        for s in support {
            let key = c.coset_key(&s).0;
            let prev = c.black.insert(key, s);
            assert!(prev.is_none(), "two black elements in one coset");
        }
        Ok(c)
    }

    fn group(&self) -> &FinAbGroup {
        &self.y.group
    }

    /// (reduced representative with 0 ≤ φ < φ(ι(μ)), multiple of ι(μ) removed).
    fn coset_key(&self, h: &GroupElement) -> (GroupElement, i64) {
        let n = crate::abelian::floor_div(h.free, self.im.free);
        (self.group().sub(h, &self.group().scale(&self.im, n)), n)
    }

    pub fn black_set(&self) -> impl Iterator<Item = &GroupElement> {
        self.black.values()
    }

    pub fn black_count(&self) -> usize {
        self.black.len()
    }

    /// The n in h = s + n·ι(μ), s ∈ S_BLACK.
    pub fn offset(&self, h: &GroupElement) -> i64 {
        let (key, n) = self.coset_key(h);
        let s = &self.black[&key];
        n - self.coset_key(s).1
    }

    pub fn color(&self, h: &GroupElement) -> Color {
        match self.offset(h).signum() {
            0 => Color::Black,
            1 => Color::Red,
            _ => Color::Blue,
        }
    }
}

pub fn color(y: &FloerSimpleManifold, mu: Slope, h: &GroupElement) -> Result<Color> {
    Ok(Coloring::new(y, mu)?.color(h))
}

/// Support of the simple knot in L(q, p): q consecutive classes.
pub fn simple_knot_support(q: i64, p: i64) -> Vec<i64> {
    assert!(
        q >= 1 && q.gcd(&p) == 1,
        "simple knot needs q ≥ 1 and gcd(p, q) = 1"
    );
    (0..q).collect()
}

/// Some λ₀ with μ·λ₀ = 1.
fn dual_class(mu: Slope) -> (i64, i64) {
    // a·d − b·c = 1
    let e = mu.a.extended_gcd(&mu.b);
    assert_eq!(e.gcd, 1, "slope not primitive");
    (-e.y, e.x)
}

struct Combined<'a> {
    c: Coloring<'a>,
    beta: i64,
    step: i64,
}

impl Combined<'_> {
    fn group(&self) -> &FinAbGroup {
        self.c.group()
    }

    fn normalize(&self, h: &GroupElement, k: i64) -> (GroupElement, i64) {
        let (q, r) = k.div_mod_floor(&self.beta);
        (self.group().add(h, &self.group().scale(&self.c.im, q)), r)
    }

    fn phi(&self, x: &(GroupElement, i64)) -> i64 {
        self.beta * x.0.free + x.1 * self.step
    }

    fn add(&self, x: &(GroupElement, i64), y: &(GroupElement, i64)) -> (GroupElement, i64) {
        self.normalize(&self.group().add(&x.0, &y.0), x.1 + y.1)
    }

    fn level(&self, v: i64) -> Vec<(GroupElement, i64)> {
        let mut out = Vec::new();
        for k in 0..self.beta {
            let rest = v - k * self.step;
            if rest % self.beta == 0 {
                out.extend(self.group().level(rest / self.beta).map(|h| (h, k)));
            }
        }
        out
    }
}

/// Every coset of ⟨λ′⟩ in G′, walked across the window where colors can change.
/// `window` ≥ 1 scales the margins on both sides.
pub fn colored_cosets(
    y: &FloerSimpleManifold,
    mu: Slope,
    nu: Slope,
    window: i64,
) -> Result<Option<Vec<ColoredCoset>>> {
    let mu = mu.primitive();
    let nu = nu.primitive();
    if nu == Slope::L {
        return Err(Error::LongitudeFilling);
    }
    let lambda0 = dual_class(mu);
    let mut beta = mu.dot(nu);
    let mut alpha = crate::abelian::dot((nu.a, nu.b), lambda0);
    if beta < 0 {
        beta = -beta;
        alpha = -alpha;
    }
    let c = Coloring::new(y, mu)?;
    if beta == 0 {
        return Ok(None);
    }
    let step = c.im.free;
    let comb = Combined { c, beta, step };
    let lambda = comb.normalize(&y.boundary_image(lambda0), alpha);
    let big_phi = comb.phi(&lambda);
    if big_phi == 0 {
        return Ok(Some(vec![]));
    }
    let (dir, period) = if big_phi > 0 {
        (lambda, big_phi)
    } else {
        (
            comb.normalize(&comb.group().neg(&lambda.0), -lambda.1),
            -big_phi,
        )
    };

    let min_b = beta * comb.c.min_phi;
    let max_b = beta * comb.c.max_phi + (beta - 1) * step;
    let start = min_b - window * period;
    let stop = max_b + window * period;
    let mut cosets = Vec::new();
    for v in start..start + period {
        for rep in comb.level(v) {
            let mut x = rep.clone();
            let mut entries = Vec::new();
            while comb.phi(&x) <= stop {
                entries.push((comb.phi(&x), comb.c.color(&x.0)));
                x = comb.add(&x, &dir);
            }
            cosets.push(ColoredCoset {
                representative: rep,
                entries,
            });
        }
    }
    Ok(Some(cosets))
}

/// Is Y(ν) an L-space, given that Y(μ) is one with K_μ Floer simple.
pub fn surgery_is_lspace_oracle(y: &FloerSimpleManifold, mu: Slope, nu: Slope) -> Result<bool> {
    surgery_is_lspace_oracle_window(y, mu, nu, 1)
}

pub fn surgery_is_lspace_oracle_window(
    y: &FloerSimpleManifold,
    mu: Slope,
    nu: Slope,
    window: i64,
) -> Result<bool> {
    Ok(match colored_cosets(y, mu, nu, window)? {
        None => true,
        Some(cosets) if cosets.is_empty() => false,
        Some(cosets) => cosets.iter().all(ColoredCoset::is_properly_colored),
    })
}
