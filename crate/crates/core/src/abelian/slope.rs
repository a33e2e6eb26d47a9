use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rat;

/// The boundary class a·m + b·l, up to sign.
///
/// `Slope::new` normalizes so the first nonzero coordinate is positive.
/// The projective coordinate is a/b, so m is ∞ and l is 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slope {
    pub a: i64,
    pub b: i64,
}

impl Slope {
    pub const M: Slope = Slope { a: 1, b: 0 };
    pub const L: Slope = Slope { a: 0, b: 1 };

    pub fn new(a: i64, b: i64) -> Slope {
        Slope::try_new(a, b).expect("zero slope")
    }

    pub fn try_new(a: i64, b: i64) -> Result<Slope> {
        match (a, b) {
            (0, 0) => Err(Error::InvalidInput("zero slope".into())),
            (a, b) if a < 0 || (a == 0 && b < 0) => Ok(Slope { a: -a, b: -b }),
            (a, b) => Ok(Slope { a, b }),
        }
    }

    /// Primitive representative of the same projective point.
    pub fn primitive(self) -> Slope {
        let g = self.a.gcd(&self.b);
        Slope {
            a: self.a / g,
            b: self.b / g,
        }
    }

    pub fn is_primitive(self) -> bool {
        self.a.gcd(&self.b) == 1
    }

    /// Intersection pairing, (a,b)·(c,d) = ad − bc. So μ·l = a.
    pub fn dot(self, other: Slope) -> i64 {
        dot((self.a, self.b), (other.a, other.b))
    }

    /// The coordinate a/b, or `None` for ∞.
    pub fn coordinate(self) -> Option<Rat> {
        (self.b != 0).then(|| Rat::new(self.a as i128, self.b as i128))
    }

    pub fn from_coordinate(x: Option<Rat>) -> Slope {
        match x {
            None => Slope::M,
            Some(r) => Slope::new(to_i64(*r.numer()), to_i64(*r.denom())),
        }
    }

    fn key(self) -> (u8, Rat) {
        match self.coordinate() {
            Some(r) => (0, r),
            None => (1, Rat::zero()),
        }
    }

    /// Cyclic comparison along the projective line, ∞ last.
    pub fn cmp_projective(self, other: Slope) -> Ordering {
        self.primitive().key().cmp(&other.primitive().key())
    }
}

pub(crate) fn to_i64(x: i128) -> i64 {
    i64::try_from(x).expect("value overflows i64")
}

pub fn dot(x: (i64, i64), y: (i64, i64)) -> i64 {
    x.0 * y.1 - x.1 * y.0
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a, self.b)
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Slope> {
        let bad = || Error::InvalidInput(format!("cannot parse slope {s:?}, expected a/b"));
        let (a, b) = s.trim().split_once('/').ok_or_else(bad)?;
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        Slope::try_new(a, b)
    }
}

/// Format a rational as "n/d", with ∞ as "1/0".
pub fn fmt_rat(x: Option<Rat>) -> String {
    match x {
        Some(r) => format!("{}/{}", r.numer(), r.denom()),
        None => "1/0".to_string(),
    }
}

/// (β, n, β/n) for the reference slope μ_L and the slope μ; the label is `None` (∞) when n = 0.
pub fn pairing_and_label(mu_l: Slope, mu: Slope) -> (i64, i64, Option<Rat>) {
    let beta = mu_l.dot(mu);
    let n = mu.dot(Slope::L);
    let label = (n != 0).then(|| Rat::new(beta as i128, n as i128));
    (beta, n, label)
}

/// A connected subset of the projective slope line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ProjInterval {
    Everything,
    Empty,
    Point {
        at: Slope,
    },
    ComplementOfPoint {
        at: Slope,
    },
    /// Runs in increasing cyclic order from `lo` to `hi` (through ∞ if lo > hi).
    Arc {
        lo: Slope,
        hi: Slope,
        lo_closed: bool,
        hi_closed: bool,
    },
}

impl ProjInterval {
    pub fn arc(lo: Slope, hi: Slope, lo_closed: bool, hi_closed: bool) -> ProjInterval {
        let (lo, hi) = (lo.primitive(), hi.primitive());
        assert_ne!(lo, hi, "degenerate arc");
        ProjInterval::Arc {
            lo,
            hi,
            lo_closed,
            hi_closed,
        }
    }

    pub fn closed(lo: Slope, hi: Slope) -> ProjInterval {
        ProjInterval::arc(lo, hi, true, true)
    }

    pub fn open(lo: Slope, hi: Slope) -> ProjInterval {
        ProjInterval::arc(lo, hi, false, false)
    }

    pub fn contains(&self, s: Slope) -> bool {
        let s = s.primitive();
        match *self {
            ProjInterval::Everything => true,
            ProjInterval::Empty => false,
            ProjInterval::Point { at } => at == s,
            ProjInterval::ComplementOfPoint { at } => at != s,
            ProjInterval::Arc {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => {
                if s == lo {
                    lo_closed
                } else if s == hi {
                    hi_closed
                } else {
                    let (kl, kh, ks) = (lo.key(), hi.key(), s.key());
                    if kl < kh {
                        kl < ks && ks < kh
                    } else {
                        ks > kl || ks < kh
                    }
                }
            }
        }
    }

    pub fn complement(&self) -> ProjInterval {
        match *self {
            ProjInterval::Everything => ProjInterval::Empty,
            ProjInterval::Empty => ProjInterval::Everything,
            ProjInterval::Point { at } => ProjInterval::ComplementOfPoint { at },
            ProjInterval::ComplementOfPoint { at } => ProjInterval::Point { at },
            ProjInterval::Arc {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => ProjInterval::Arc {
                lo: hi,
                hi: lo,
                lo_closed: !hi_closed,
                hi_closed: !lo_closed,
            },
        }
    }

    pub fn closure(&self) -> ProjInterval {
        match *self {
            ProjInterval::ComplementOfPoint { .. } => ProjInterval::Everything,
            ProjInterval::Arc { lo, hi, .. } => ProjInterval::closed(lo, hi),
            ref other => other.clone(),
        }
    }

    pub fn interior(&self) -> ProjInterval {
        match *self {
            ProjInterval::Point { .. } => ProjInterval::Empty,
            ProjInterval::Arc { lo, hi, .. } => ProjInterval::open(lo, hi),
            ref other => other.clone(),
        }
    }

    fn endpoints(&self) -> Vec<Slope> {
        match *self {
            ProjInterval::Everything | ProjInterval::Empty => vec![],
            ProjInterval::Point { at } | ProjInterval::ComplementOfPoint { at } => vec![at],
            ProjInterval::Arc { lo, hi, .. } => vec![lo, hi],
        }
    }
}

/// One point from every cell of the decomposition of the projective line cut at the
/// endpoints of `intervals`: the endpoints themselves plus a point in each open gap.
/// Membership in each interval is constant on each cell.
pub fn sample_points(intervals: &[&ProjInterval]) -> Vec<Slope> {
    let mut ends: Vec<Slope> = intervals.iter().flat_map(|i| i.endpoints()).collect();
    ends.sort_by(|x, y| x.cmp_projective(*y));
    ends.dedup();
    let mut out = ends.clone();
    match ends.len() {
        0 => out.push(Slope::L),
        1 => out.push(if ends[0] == Slope::M {
            Slope::L
        } else {
            Slope::M
        }),
        n => {
            for i in 0..n {
                let (x, y) = (ends[i], ends[(i + 1) % n]);
                let gap = match (x.coordinate(), y.coordinate()) {
                    (Some(u), Some(v)) if u < v => Some((u + v) / Rat::from_integer(2)),
                    (Some(u), None) => Some(u + Rat::from_integer(1)),
                    (None, Some(v)) => Some(v - Rat::from_integer(1)),
                    // wrap-around gap between the largest and smallest finite endpoints
                    (Some(_), Some(_)) => None,
                    (None, None) => unreachable!("duplicate endpoint"),
                };
                out.push(Slope::from_coordinate(gap));
            }
        }
    }
    out
}

pub fn union_covers(intervals: &[&ProjInterval]) -> bool {
    sample_points(intervals)
        .into_iter()
        .all(|s| intervals.iter().any(|i| i.contains(s)))
}

pub fn intersects(x: &ProjInterval, y: &ProjInterval) -> bool {
    sample_points(&[x, y])
        .into_iter()
        .any(|s| x.contains(s) && y.contains(s))
}

pub fn same_points(x: &ProjInterval, y: &ProjInterval) -> bool {
    sample_points(&[x, y])
        .into_iter()
        .all(|s| x.contains(s) == y.contains(s))
}

/// Orientation reversing identification φ: H₁(∂Y₁) → H₁(∂Y₂), with
/// φ(m₁) = φ11·m₂ + φ21·l₂ and φ(l₁) = φ12·m₂ + φ22·l₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GluingMatrix {
    pub m11: i64,
    pub m12: i64,
    pub m21: i64,
    pub m22: i64,
}

impl GluingMatrix {
    pub fn new(rows: [[i64; 2]; 2]) -> Result<GluingMatrix> {
        let [[m11, m12], [m21, m22]] = rows;
        let det = m11 * m22 - m12 * m21;
        if det != -1 {
            return Err(Error::DeterminantError(det));
        }
        Ok(GluingMatrix { m11, m12, m21, m22 })
    }

    pub fn rows(&self) -> [[i64; 2]; 2] {
        [[self.m11, self.m12], [self.m21, self.m22]]
    }

    pub fn apply_vec(&self, (n, n2): (i64, i64)) -> (i64, i64) {
        (self.m11 * n + self.m12 * n2, self.m21 * n + self.m22 * n2)
    }

    pub fn apply_slope(&self, s: Slope) -> Slope {
        let (a, b) = self.apply_vec((s.a, s.b));
        Slope::new(a, b)
    }

    /// φ_P on point sets. Reverses orientation, so endpoints swap roles.
    pub fn apply_interval(&self, x: &ProjInterval) -> ProjInterval {
        match *x {
            ProjInterval::Everything => ProjInterval::Everything,
            ProjInterval::Empty => ProjInterval::Empty,
            ProjInterval::Point { at } => ProjInterval::Point {
                at: self.apply_slope(at),
            },
            ProjInterval::ComplementOfPoint { at } => ProjInterval::ComplementOfPoint {
                at: self.apply_slope(at),
            },
            ProjInterval::Arc {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => ProjInterval::Arc {
                lo: self.apply_slope(hi),
                hi: self.apply_slope(lo),
                lo_closed: hi_closed,
                hi_closed: lo_closed,
            },
        }
    }

    /// Inverse; also of determinant −1.
    pub fn inverse(&self) -> GluingMatrix {
        GluingMatrix {
            m11: -self.m22,
            m12: self.m12,
            m21: self.m21,
            m22: -self.m11,
        }
    }

    pub fn negated(&self) -> GluingMatrix {
        GluingMatrix {
            m11: -self.m11,
            m12: -self.m12,
            m21: -self.m21,
            m22: -self.m22,
        }
    }

    pub fn q_star(&self) -> i64 {
        -self.m12
    }
}

/// Checked slope image under a raw matrix, for callers holding unvalidated input.
pub fn apply_gluing_slope(rows: [[i64; 2]; 2], s: Slope) -> Result<Slope> {
    Ok(GluingMatrix::new(rows)?.apply_slope(s))
}

pub fn apply_gluing_interval(rows: [[i64; 2]; 2], x: &ProjInterval) -> Result<ProjInterval> {
    Ok(GluingMatrix::new(rows)?.apply_interval(x))
}

pub(crate) fn floor_div(a: i64, b: i64) -> i64 {
    Integer::div_floor(&a, &b)
}

pub(crate) fn ceil_div(a: i64, b: i64) -> i64 {
    -Integer::div_floor(&-a, &b)
}
