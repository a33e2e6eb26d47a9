use serde::{Deserialize, Serialize};

use super::snf::Quotient;
use crate::error::{Error, Result};

/// An element of Z ⊕ T. `free` is the value of φ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub free: i64,
    #[serde(default)]
    pub torsion: Vec<i64>,
}

impl GroupElement {
    pub fn new(free: i64, torsion: Vec<i64>) -> Self {
        GroupElement { free, torsion }
    }

    pub fn phi(&self) -> i64 {
        self.free
    }
}

impl std::fmt::Display for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.torsion.is_empty() {
            write!(f, "{}", self.free)
        } else {
            let t: Vec<String> = self.torsion.iter().map(|x| x.to_string()).collect();
            write!(f, "({};{})", self.free, t.join(","))
        }
    }
}

/// Z ⊕ Z/o_1 ⊕ ... ⊕ Z/o_k.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    pub torsion_orders: Vec<i64>,
}

impl FinAbGroup {
    pub fn new(torsion_orders: Vec<i64>) -> Result<Self> {
        if let Some(&o) = torsion_orders.iter().find(|&&o| o < 2) {
            return Err(Error::InvalidInput(format!("torsion order {o} < 2")));
        }
        Ok(FinAbGroup { torsion_orders })
    }

    pub fn trivial() -> Self {
        FinAbGroup::default()
    }

    pub fn torsion_size(&self) -> i64 {
        self.torsion_orders.iter().product()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::new(0, vec![0; self.torsion_orders.len()])
    }

    /// Reduce torsion residues into range.
    pub fn elem(&self, free: i64, torsion: &[i64]) -> GroupElement {
        assert_eq!(torsion.len(), self.torsion_orders.len(), "torsion arity");
        GroupElement::new(
            free,
            torsion
                .iter()
                .zip(&self.torsion_orders)
                .map(|(&t, &o)| t.rem_euclid(o))
                .collect(),
        )
    }

    pub fn free_elem(&self, free: i64) -> GroupElement {
        GroupElement::new(free, vec![0; self.torsion_orders.len()])
    }

    pub fn check(&self, e: &GroupElement) -> Result<()> {
        if e.torsion.len() != self.torsion_orders.len() {
            return Err(Error::InvalidInput(format!(
                "element {e} has {} torsion coordinates, group has {}",
                e.torsion.len(),
                self.torsion_orders.len()
            )));
        }
        for (&t, &o) in e.torsion.iter().zip(&self.torsion_orders) {
            if !(0..o).contains(&t) {
                return Err(Error::InvalidInput(format!(
                    "residue {t} out of range mod {o}"
                )));
            }
        }
        Ok(())
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement::new(
            x.free + y.free,
            x.torsion
                .iter()
                .zip(&y.torsion)
                .zip(&self.torsion_orders)
                .map(|((a, b), o)| (a + b) % o)
                .collect(),
        )
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        self.scale(x, -1)
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, x: &GroupElement, k: i64) -> GroupElement {
        GroupElement::new(
            x.free * k,
            x.torsion
                .iter()
                .zip(&self.torsion_orders)
                .map(|(a, o)| (a * k.rem_euclid(*o)) % o)
                .collect(),
        )
    }

    /// Order of the torsion part of x.
    pub fn torsion_order(&self, x: &GroupElement) -> i64 {
        x.torsion
            .iter()
            .zip(&self.torsion_orders)
            .fold(1, |acc, (&t, &o)| {
                num_integer::lcm(acc, o / num_integer::gcd(t, o))
            })
    }

    /// All elements of T, in lexicographic order.
    pub fn torsion_elements(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for &o in &self.torsion_orders {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..o).map(move |t| {
                        let mut v = prefix.clone();
                        v.push(t);
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// Elements with the given free part.
    pub fn level(&self, free: i64) -> impl Iterator<Item = GroupElement> + '_ {
        self.torsion_elements()
            .into_iter()
            .map(move |t| GroupElement::new(free, t))
    }

    /// Presentation on generators (free, e_1, ..., e_k) with the cyclic relations.
    pub fn relations(&self) -> Vec<Vec<i64>> {
        let k = self.torsion_orders.len();
        self.torsion_orders
            .iter()
            .enumerate()
            .map(|(i, &o)| {
                let mut r = vec![0; k + 1];
                r[i + 1] = o;
                r
            })
            .collect()
    }

    pub fn as_vector(&self, x: &GroupElement) -> Vec<i64> {
        std::iter::once(x.free)
            .chain(x.torsion.iter().copied())
            .collect()
    }

    /// The quotient by the subgroup generated by `gens`.
    pub fn quotient(&self, gens: &[GroupElement]) -> Quotient {
        let mut rels = self.relations();
        rels.extend(gens.iter().map(|g| self.as_vector(g)));
        Quotient::new(self.torsion_orders.len() + 1, &rels)
    }

    /// |G / ⟨gens⟩|, `None` if infinite.
    pub fn quotient_order(&self, gens: &[GroupElement]) -> Option<i64> {
        self.quotient(gens).order()
    }
}
