//! Smith normal form over the integers, and finitely presented quotients.

/// Result of [`smith_normal_form`]: `left * m * right` is diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    /// Invariant factors d_1 | d_2 | ..., nonnegative, length min(rows, cols).
    pub diagonal: Vec<i64>,
    pub left: Vec<Vec<i64>>,
    pub right: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

fn narrow(m: Vec<Vec<i128>>) -> Vec<Vec<i64>> {
    m.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| i64::try_from(x).expect("SNF transform entry overflows i64"))
                .collect()
        })
        .collect()
}

pub fn smith_normal_form(m: &[Vec<i64>]) -> Snf {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "ragged matrix");
            r.iter().map(|&x| i128::from(x)).collect()
        })
        .collect();
    let mut left = identity(rows);
    let mut right = identity(cols);
    let n = rows.min(cols);

    'outer: for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'outer };
            a.swap(t, pi);
            left.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in right.iter_mut() {
                row.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / a[t][t];
                if q != 0 {
                    for j in 0..cols {
                        a[i][j] -= q * a[t][j];
                    }
                    for j in 0..rows {
                        left[i][j] -= q * left[t][j];
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / a[t][t];
                if q != 0 {
                    for i in 0..rows {
                        a[i][j] -= q * a[i][t];
                    }
                    for i in 0..cols {
                        right[i][j] -= q * right[i][t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }

            let d = a[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % d != 0));
            match bad {
                Some(i) => {
                    for j in 0..cols {
                        a[t][j] += a[i][j];
                    }
                    for j in 0..rows {
                        left[t][j] += left[i][j];
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
            for x in left[t].iter_mut() {
                *x = -*x;
            }
        }
    }

    let diagonal = (0..n)
        .map(|i| i64::try_from(a[i][i]).expect("invariant factor overflows i64"))
        .collect();
    Snf {
        diagonal,
        left: narrow(left),
        right: narrow(right),
    }
}

/// The group Z^ngens / rowspace(relations), in coordinates Z^r ⊕ ⊕ Z/d_i.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub free_rank: usize,
    /// Orders of the cyclic torsion factors, each ≥ 2, in divisibility order.
    pub orders: Vec<i64>,
    right: Vec<Vec<i64>>,
    free_cols: Vec<usize>,
    torsion_cols: Vec<usize>,
}

impl Quotient {
    pub fn new(ngens: usize, relations: &[Vec<i64>]) -> Quotient {
        for r in relations {
            assert_eq!(r.len(), ngens, "relation length mismatch");
        }
        let snf = smith_normal_form(relations);
        let right = if relations.is_empty() {
            (0..ngens)
                .map(|i| (0..ngens).map(|j| i64::from(i == j)).collect())
                .collect()
        } else {
            snf.right
        };
        let mut free_cols = Vec::new();
        let mut torsion_cols = Vec::new();
        let mut orders = Vec::new();
        for i in 0..ngens {
            let d = snf.diagonal.get(i).copied().unwrap_or(0);
            if d == 0 {
                free_cols.push(i);
            } else if d > 1 {
                torsion_cols.push(i);
                orders.push(d);
            }
        }
        Quotient {
            free_rank: free_cols.len(),
            orders,
            right,
            free_cols,
            torsion_cols,
        }
    }

    /// Image of the vector x (generator coefficients) as (free coords, torsion residues).
    pub fn image(&self, x: &[i64]) -> (Vec<i64>, Vec<i64>) {
        let coord = |c: usize| -> i128 {
            x.iter()
                .zip(&self.right)
                .map(|(&xi, row)| i128::from(xi) * i128::from(row[c]))
                .sum()
        };
        let free = self
            .free_cols
            .iter()
            .map(|&c| i64::try_from(coord(c)).expect("coordinate overflow"))
            .collect();
        let torsion = self
            .torsion_cols
            .iter()
            .zip(&self.orders)
            .map(|(&c, &d)| coord(c).rem_euclid(i128::from(d)) as i64)
            .collect();
        (free, torsion)
    }

    /// Cardinality, or `None` when the quotient is infinite.
    pub fn order(&self) -> Option<i64> {
        (self.free_rank == 0).then(|| self.orders.iter().product())
    }
}
