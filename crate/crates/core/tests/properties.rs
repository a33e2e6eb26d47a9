use lspace_core::abelian::{dot, same_points, smith_normal_form, ProjInterval};
use lspace_core::corpus::random_record;
use lspace_core::interval::{is_lspace_slope, lspace_interval, stored_witness};
use lspace_core::seifert::{orientation_flip, sfs_is_lspace, SeifertData};
use lspace_core::{FloerSimpleManifold, GluingMatrix, GroupElement, ManifoldRecord, Slope};
use num_integer::Integer;
use proptest::prelude::*;
use rand::SeedableRng;

fn record(seed: u64) -> FloerSimpleManifold {
    random_record(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed), 5)
}

fn det(m: &[Vec<i64>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0] as i128,
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] as i128 * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (0..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// gcd of all k×k minors.
fn determinantal_divisor(m: &[Vec<i64>], k: usize) -> i128 {
    let (r, c) = (m.len(), m[0].len());
    let mut g = 0i128;
    for rows in subsets(r, k) {
        for cols in subsets(c, k) {
            let sub: Vec<Vec<i64>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| m[i][j]).collect())
                .collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

fn slope() -> impl Strategy<Value = Slope> {
    (-15i64..=15, -15i64..=15)
        .prop_filter("nonzero primitive", |&(a, b)| {
            (a, b) != (0, 0) && a.gcd(&b) == 1
        })
        .prop_map(|(a, b)| Slope::new(a, b))
}

fn gluing() -> impl Strategy<Value = GluingMatrix> {
    (-7i64..=7, -7i64..=7, -7i64..=7, -7i64..=7).prop_filter_map("det -1", |(a, b, c, d)| {
        GluingMatrix::new([[a, b], [c, d]]).ok()
    })
}

fn seifert() -> impl Strategy<Value = SeifertData> {
    let fiber = (2i64..=9)
        .prop_flat_map(|s| (1..s, Just(s)))
        .prop_filter("coprime", |(r, s)| r.gcd(s) == 1);
    (-3i64..=3, prop::collection::vec(fiber, 0..=4)).prop_map(|(e0, f)| SeifertData::new(e0, &f))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_matches_determinantal_divisors(m in matrix()) {
        let snf = smith_normal_form(&m);
        let mut prefix = 1i128;
        for (k, &d) in snf.diagonal.iter().enumerate() {
            prop_assert!(d >= 0);
            if k > 0 && snf.diagonal[k - 1] != 0 {
                prop_assert_eq!(d % snf.diagonal[k - 1], 0);
            }
            prefix *= d as i128;
            prop_assert_eq!(prefix, determinantal_divisor(&m, k + 1));
        }
    }

    #[test]
    fn snf_transforms_diagonalize(m in matrix()) {
        let snf = smith_normal_form(&m);
        let mul = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            (0..a.len()).map(|i| (0..b[0].len()).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
        };
        let d = mul(&mul(&snf.left, &m), &snf.right);
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let want = if i == j { snf.diagonal[i] } else { 0 };
                prop_assert_eq!(x, want);
            }
        }
    }

    #[test]
    fn pairing_is_antisymmetric(x in slope(), y in slope()) {
        prop_assert_eq!(x.dot(y), -y.dot(x));
        prop_assert_eq!(x.dot(Slope::L), x.a);
    }

    #[test]
    fn gluing_reverses_pairing(phi in gluing(), x in slope(), y in slope()) {
        let (u, v) = (phi.apply_vec((x.a, x.b)), phi.apply_vec((y.a, y.b)));
        prop_assert_eq!(dot(u, v), -x.dot(y));
    }

    #[test]
    fn gluing_inverse_round_trips(phi in gluing(), x in slope(), lo in slope(), hi in slope()) {
        let inv = phi.inverse();
        prop_assert_eq!(inv.apply_slope(phi.apply_slope(x)), x);
        prop_assume!(lo != hi);
        let arc = ProjInterval::closed(lo, hi);
        prop_assert!(same_points(&inv.apply_interval(&phi.apply_interval(&arc)), &arc));
        prop_assert_eq!(phi.apply_interval(&arc).contains(phi.apply_slope(x)), arc.contains(x));
    }

    #[test]
    fn complement_partitions(lo in slope(), hi in slope(), x in slope(), lc: bool, hc: bool) {
        prop_assume!(lo != hi);
        let arc = ProjInterval::arc(lo, hi, lc, hc);
        prop_assert_ne!(arc.contains(x), arc.complement().contains(x));
        prop_assert!(same_points(&arc.complement().complement(), &arc));
    }

    #[test]
    fn slope_text_round_trips(x in slope()) {
        let back: Slope = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
        prop_assert_eq!(Slope::new(-x.a, -x.b), x);
    }

    #[test]
    fn iota_coordinates_match_enumeration(seed: u64) {
        let y = record(seed);
        let mut image = std::collections::BTreeMap::new();
        for delta in 0..=3 {
            for gamma in 0..y.g() {
                image.insert(y.boundary_image((delta, gamma)), (delta, gamma));
            }
        }
        for phi in 0..=3 * y.g() {
            for h in y.group.level(phi) {
                prop_assert_eq!(y.iota_coordinates(&h), image.get(&h).copied());
            }
        }
    }

    #[test]
    fn interval_membership_is_coherent(seed: u64, s in slope()) {
        let y = record(seed);
        let w = stored_witness(&y).unwrap();
        let interval = lspace_interval(&y, w).unwrap().as_interval();
        prop_assert_eq!(is_lspace_slope(&y, w, s).unwrap(), interval.contains(s));
    }

    #[test]
    fn basis_change_moves_interval(seed: u64, k in -3i64..=3, s in slope()) {
        let y = record(seed);
        let w = stored_witness(&y).unwrap();
        let z = y.rebase(k).unwrap();
        let moved = |s: Slope| Slope::new(s.a, s.b - k * s.a);
        prop_assert_eq!(is_lspace_slope(&y, w, s).unwrap(), is_lspace_slope(&z, moved(w), moved(s)).unwrap());
        let f = y.flip_longitude();
        let mirror = |s: Slope| Slope::new(s.a, -s.b);
        prop_assert_eq!(is_lspace_slope(&y, w, s).unwrap(), is_lspace_slope(&f, mirror(w), mirror(s)).unwrap());
    }

    #[test]
    fn black_set_size_is_filling_order(seed: u64) {
        let y = record(seed);
        let w = stored_witness(&y).unwrap();
        prop_assert_eq!(y.hfk_support(w).unwrap().len() as i64, y.filling_order(w).unwrap());
    }

    #[test]
    fn record_json_round_trips(seed: u64) {
        let y = record(seed);
        let json = serde_json::to_string(&y).unwrap();
        let back: FloerSimpleManifold = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, &y);
        let raw: ManifoldRecord = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(raw.tauc_support.len(), y.tauc.len());
    }

    #[test]
    fn seifert_forms_agree(d in seifert()) {
        let v = sfs_is_lspace(&d).unwrap();
        prop_assert_eq!(v.fiber_form, v.orbifold_form);
        prop_assert_eq!(v.lspace, v.fiber_form);
    }

    #[test]
    fn seifert_verdict_ignores_orientation(d in seifert()) {
        let flipped = orientation_flip(&d).unwrap().data;
        prop_assert_eq!(sfs_is_lspace(&d).unwrap().lspace, sfs_is_lspace(&flipped).unwrap().lspace);
    }

    #[test]
    fn group_elements_reduce(t in prop::collection::vec(-20i64..20, 2), f in -5i64..5) {
        let g = lspace_core::FinAbGroup::new(vec![2, 6]).unwrap();
        let e = g.elem(f, &t);
        prop_assert!(e.torsion[0] >= 0 && e.torsion[0] < 2 && e.torsion[1] >= 0 && e.torsion[1] < 6);
        prop_assert_eq!(g.sub(&g.add(&e, &e), &e), e.clone());
        prop_assert_eq!(g.add(&e, &g.neg(&e)), GroupElement::new(0, vec![0, 0]));
    }
}
