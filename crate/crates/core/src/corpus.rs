//! Named torsion records and a generator of random formal records.

use rand::Rng;

use crate::abelian::{FinAbGroup, GluingMatrix, GroupElement, Slope};
use crate::gluing::{splice_is_lspace, SpliceProblem};
use crate::interval::validate_witness;
use crate::torsion::FloerSimpleManifold;

fn z_record(tauc: &[i64], witness: Slope) -> FloerSimpleManifold {
    let group = FinAbGroup::trivial();
    FloerSimpleManifold::new(
        group.clone(),
        group.free_elem(1),
        group.zero(),
        tauc.iter().map(|&x| group.free_elem(x)),
        Some(witness),
    )
    .expect("named record")
}

/// Complement of the right-handed trefoil, witness 3m + l.
pub fn trefoil() -> FloerSimpleManifold {
    z_record(&[1], Slope::new(3, 1))
}

/// Complement of the left-handed trefoil: the same torsion with longitude −l.
pub fn negative_trefoil() -> FloerSimpleManifold {
    trefoil().flip_longitude()
}

/// Complement of T(2, 2k+1): τ^c has free parts 1, 3, ..., 2k−1.
pub fn torus_knot_2(k: i64) -> FloerSimpleManifold {
    assert!(k >= 1);
    let tauc: Vec<i64> = (0..k).map(|i| 2 * i + 1).collect();
    z_record(&tauc, Slope::new(2 * k + 2, 1))
}

pub fn t25() -> FloerSimpleManifold {
    torus_knot_2(2)
}

pub fn solid_torus() -> FloerSimpleManifold {
    z_record(&[], Slope::M)
}

/// N_g: T = Z/g, ι(m) = (g, 0), ι(l) = (0, 1), and
/// τ^c = {(i, k) : 0 ≤ i < g−1, i < k ≤ g−1}, so that Δ̄ = 1 + t + ... + t^(g−1).
pub fn n_family(g: i64) -> FloerSimpleManifold {
    assert!(g >= 2);
    let group = FinAbGroup::new(vec![g]).unwrap();
    let tauc = (0..g - 1).flat_map(|i| (i + 1..g).map(move |k| GroupElement::new(i, vec![k])));
    FloerSimpleManifold::new(
        group.clone(),
        group.elem(g, &[0]),
        group.elem(0, &[1]),
        tauc,
        Some(Slope::M),
    )
    .expect("N_g record")
}

/// The named records used throughout the test suites.
pub fn named() -> Vec<(&'static str, FloerSimpleManifold)> {
    vec![
        ("trefoil", trefoil()),
        ("t25", t25()),
        ("n2", n_family(2)),
        ("n3", n_family(3)),
        ("solid_torus", solid_torus()),
    ]
}

const TORSION_CHOICES: [&[i64]; 5] = [&[], &[2], &[3], &[4], &[2, 2]];

/// A random formal Floer simple record with |T| ≤ 4.
///
/// A knot class μ is fixed first; S = S_BLACK is a random set of coset
/// representatives of ⟨ι(μ)⟩ with φ ≤ `max_phi`, and τ = S/(1 − [ι(μ)]),
/// translated so that 0 ∈ S[τ]. Records failing the structural checks
/// (bucket congruence, closure of Γ, witness validation) are rejected and redrawn.
pub fn random_record<R: Rng>(rng: &mut R, max_phi: i64) -> FloerSimpleManifold {
    loop {
        if let Some(y) = try_random_record(rng, max_phi) {
            return y;
        }
    }
}

fn try_random_record<R: Rng>(rng: &mut R, max_phi: i64) -> Option<FloerSimpleManifold> {
    let orders = TORSION_CHOICES[rng.gen_range(0..TORSION_CHOICES.len())].to_vec();
    let group = FinAbGroup::new(orders.clone()).unwrap();
    let rand_torsion =
        |rng: &mut R| -> Vec<i64> { orders.iter().map(|&o| rng.gen_range(0..o)).collect() };
    let iota_l = GroupElement::new(0, rand_torsion(rng));
    let g = group.torsion_order(&iota_l);
    let iota_m = GroupElement::new(g, rand_torsion(rng));

    let a = rng.gen_range(1..=3i64);
    let b = rng.gen_range(-3..=3i64);
    let mu = Slope::new(a, b);
    if !mu.is_primitive() {
        return None;
    }
    let im = group.add(&group.scale(&iota_m, a), &group.scale(&iota_l, b));
    let step = im.free;

    let mut black = Vec::new();
    for phi in 0..step {
        for r in group.level(phi) {
            let lifts = (max_phi - phi).div_euclid(step).max(0);
            let j = rng.gen_range(0..=lifts);
            black.push(group.add(&r, &group.scale(&im, j)));
        }
    }
    let base = black.iter().min().cloned().unwrap();
    let black: Vec<GroupElement> = black.iter().map(|s| group.sub(s, &base)).collect();
    let mut tauc = Vec::new();
    for s in &black {
        let mut h = group.sub(s, &im);
        while h.free >= 0 {
            tauc.push(h.clone());
            h = group.sub(&h, &im);
        }
    }
    let y = FloerSimpleManifold::new(group, iota_m, iota_l, tauc, Some(mu)).ok()?;
    y.milnor_invariants().ok()?;
    let bound = (y.max_tauc_phi() + 1) * 2 + 2 * y.g();
    if !y.gamma_closed(bound).closed {
        return None;
    }
    validate_witness(&y, mu).ok()?;
    Some(y)
}

/// Pieces used for randomized gluings.
pub fn gluing_pieces() -> Vec<(&'static str, FloerSimpleManifold)> {
    let mut v = named();
    v.push(("negative_trefoil", negative_trefoil()));
    v
}

/// A random det −1 matrix with entries in [−bound, bound].
pub fn random_gluing_matrix<R: Rng>(rng: &mut R, bound: i64) -> GluingMatrix {
    loop {
        let mut e = || rng.gen_range(-bound..=bound);
        let rows = [[e(), e()], [e(), e()]];
        if let Ok(m) = GluingMatrix::new(rows) {
            return m;
        }
    }
}

/// A random gluing of two pieces with q* ≠ 0 whose intervals satisfy the overlap hypothesis.
pub fn random_splice<R: Rng>(
    rng: &mut R,
    pieces: &[(&'static str, FloerSimpleManifold)],
    bound: i64,
) -> (String, SpliceProblem) {
    loop {
        let (n1, y1) = &pieces[rng.gen_range(0..pieces.len())];
        let (n2, y2) = &pieces[rng.gen_range(0..pieces.len())];
        let phi = random_gluing_matrix(rng, bound);
        if phi.q_star() == 0 {
            continue;
        }
        let prob = SpliceProblem {
            y1: y1.clone(),
            y2: y2.clone(),
            phi,
        };
        if splice_is_lspace(&prob).is_ok() {
            return (format!("{n1}|{n2}|{:?}", phi.rows()), prob);
        }
    }
}
