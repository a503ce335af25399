//! Growth-series coefficients by breadth-first enumeration of group elements
//! in the canonical reflection representation. Independent of the growth
//! module, so the two can check each other.

mod field;

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::combinatorics::PolyhedronCombinatorics;
use field::Quad;
pub use field::QuadraticFieldNumber;

/// Default BFS depth.
pub const DEFAULT_DEPTH: usize = 6;
/// Default cap on the number of stored elements.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;
/// Environment variable overriding [`DEFAULT_ELEMENT_CAP`].
pub const ELEMENT_CAP_ENV: &str = "IDEAL_COXETER_BFS_CAP";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("element cap {cap} exceeded; spheres complete through depth {completed_depth}")]
    ResourceLimit {
        cap: usize,
        completed_depth: usize,
        counts: Vec<u64>,
    },
    #[error("matrix entries overflowed; spheres complete through depth {completed_depth}")]
    Overflow { completed_depth: usize, counts: Vec<u64> },
}

/// Entry of a Coxeter matrix off the diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u8),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// Symmetric table of the orders `m(s, t)` of products of generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    n: usize,
    m: Vec<Vec<Order>>,
}

impl CoxeterMatrix {
    pub fn new(m: Vec<Vec<Order>>) -> Result<Self, OracleError> {
        let n = m.len();
        let bad = |s: String| Err(OracleError::InvalidMatrix(s));
        for (i, row) in m.iter().enumerate() {
            if row.len() != n {
                return bad(format!("row {i} has length {}", row.len()));
            }
            if row[i] != Order::Finite(1) {
                return bad(format!("diagonal entry {i} is not 1"));
            }
            for (j, &e) in row.iter().enumerate() {
                if e != m[j][i] {
                    return bad(format!("entries ({i},{j}) and ({j},{i}) differ"));
                }
                if i != j && !matches!(e, Order::Infinite | Order::Finite(2 | 3 | 4 | 6)) {
                    return bad(format!("entry ({i},{j}) = {e} not in {{2,3,4,6,inf}}"));
                }
            }
        }
        Ok(CoxeterMatrix { n, m })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, s: usize, t: usize) -> Order {
        self.m[s][t]
    }
}

impl fmt::Display for CoxeterMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.m {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Generators are the faces; adjacent faces give the edge label, all other
/// pairs generate an infinite dihedral group.
pub fn coxeter_matrix(p: &PolyhedronCombinatorics) -> CoxeterMatrix {
    let n = p.face_count();
    let m = (0..n)
        .map(|s| {
            (0..n)
                .map(|t| {
                    if s == t {
                        Order::Finite(1)
                    } else {
                        p.label(s, t).map_or(Order::Infinite, |l| Order::Finite(l.m()))
                    }
                })
                .collect()
        })
        .collect();
    CoxeterMatrix { n, m }
}

/// Square matrix over `Q(sqrt2, sqrt3)`, row-major.
pub type FieldMatrix = Vec<Vec<QuadraticFieldNumber>>;

/// `-2 B(e_s, e_t)`: `2 cos(pi/m)`, or `2` when `m` is infinite.
fn twice_cos(o: Order) -> QuadraticFieldNumber {
    match o {
        Order::Infinite => QuadraticFieldNumber::from_ints(2, 0, 0, 0),
        Order::Finite(1) => QuadraticFieldNumber::from_ints(-2, 0, 0, 0),
        Order::Finite(m) => {
            let c = QuadraticFieldNumber::cos_pi_over(m).expect("validated order");
            &c + &c
        }
    }
}

/// Matrices of `sigma_s(v) = v - 2 B(e_s, v) e_s` in the basis `e_t`, with
/// `B(e_s, e_t) = -cos(pi/m(s,t))` and `B = -1` for infinite order.
pub fn canonical_representation(m: &CoxeterMatrix) -> Vec<FieldMatrix> {
    let n = m.size();
    (0..n)
        .map(|s| {
            let mut mat: FieldMatrix = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                QuadraticFieldNumber::one()
                            } else {
                                QuadraticFieldNumber::zero()
                            }
                        })
                        .collect()
                })
                .collect();
            for (t, cell) in mat[s].iter_mut().enumerate() {
                *cell = if s == t {
                    QuadraticFieldNumber::from_ints(-1, 0, 0, 0)
                } else {
                    twice_cos(m.get(s, t))
                };
            }
            mat
        })
        .collect()
}

pub fn mat_mul(x: &FieldMatrix, y: &FieldMatrix) -> FieldMatrix {
    let n = x.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(QuadraticFieldNumber::zero(), |acc, k| &acc + &(&x[i][k] * &y[k][j])))
                .collect()
        })
        .collect()
}

pub fn is_identity(x: &FieldMatrix) -> bool {
    x.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, e)| {
            if i == j {
                *e == QuadraticFieldNumber::one()
            } else {
                e.is_zero()
            }
        })
    })
}

/// Sphere sizes `a_0..=a_depth` of the word metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthSample {
    pub depth: usize,
    pub counts: Vec<u64>,
}

/// Element cap from [`ELEMENT_CAP_ENV`], else the default.
pub fn element_cap() -> usize {
    std::env::var(ELEMENT_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ELEMENT_CAP)
}

pub fn bfs_growth(m: &CoxeterMatrix, depth: usize) -> Result<GrowthSample, OracleError> {
    bfs_growth_with_cap(m, depth, element_cap())
}

/// Breadth-first enumeration, one sphere at a time.
///
/// Left multiplication by a generator changes one length by exactly one, so
/// each new sphere is the set of products of generators with the current
/// sphere, minus the previous sphere.
pub fn bfs_growth_with_cap(m: &CoxeterMatrix, depth: usize, cap: usize) -> Result<GrowthSample, OracleError> {
    let n = m.size();
    // Row s of generator s; every other row is the identity's.
    let rows: Vec<Vec<Quad>> = canonical_representation(m)
        .into_iter()
        .enumerate()
        .map(|(s, mat)| {
            mat[s]
                .iter()
                .map(|e| Quad(e.to_i64s().expect("entries lie in Z[sqrt2, sqrt3]")))
                .collect()
        })
        .collect();

    let identity: Vec<Quad> = (0..n * n)
        .map(|k| {
            if k / n == k % n {
                Quad([1, 0, 0, 0])
            } else {
                Quad::default()
            }
        })
        .collect();
    let mut counts = vec![1u64];
    let mut prev: HashSet<Vec<Quad>> = HashSet::new();
    let mut cur: HashSet<Vec<Quad>> = HashSet::from([identity]);
    let mut stored = 1usize;

    for j in 1..=depth {
        let mut next: HashSet<Vec<Quad>> = HashSet::new();
        for w in &cur {
            for (s, row) in rows.iter().enumerate() {
                let mut x = w.clone();
                for col in 0..n {
                    let mut acc = Quad::default();
                    for (t, coef) in row.iter().enumerate() {
                        if coef.is_zero() {
                            continue;
                        }
                        let term = coef.checked_mul(w[t * n + col]);
                        acc = match term.and_then(|v| acc.checked_add(v)) {
                            Some(v) => v,
                            None => {
                                return Err(OracleError::Overflow {
                                    completed_depth: j - 1,
                                    counts,
                                })
                            }
                        };
                    }
                    x[s * n + col] = acc;
                }
                if !prev.contains(&x) {
                    next.insert(x);
                }
            }
            if stored + next.len() > cap {
                return Err(OracleError::ResourceLimit {
                    cap,
                    completed_depth: j - 1,
                    counts,
                });
            }
        }
        stored = cur.len() + next.len();
        counts.push(next.len() as u64);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(GrowthSample { depth, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::catalog;

    fn pow(x: &FieldMatrix, k: usize) -> FieldMatrix {
        let mut acc = x.clone();
        for _ in 1..k {
            acc = mat_mul(&acc, x);
        }
        acc
    }

    #[test]
    fn generators_are_involutions_with_prescribed_orders() {
        for name in ["P1", "P2", "P3", "P5"] {
            let m = coxeter_matrix(&catalog(name).unwrap());
            let gens = canonical_representation(&m);
            for (s, g) in gens.iter().enumerate() {
                assert!(is_identity(&mat_mul(g, g)), "{name}: generator {s}");
                for (t, h) in gens.iter().enumerate().skip(s + 1) {
                    let prod = mat_mul(g, h);
                    match m.get(s, t) {
                        Order::Finite(k) => {
                            let k = usize::from(k);
                            assert!(is_identity(&pow(&prod, k)));
                            assert!((1..k).all(|i| !is_identity(&pow(&prod, i))));
                        }
                        Order::Infinite => {
                            assert!((1..=12).all(|i| !is_identity(&pow(&prod, i))));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn matrix_shapes() {
        let m = coxeter_matrix(&catalog("OCT").unwrap());
        let finite = (0..8)
            .flat_map(|s| (s + 1..8).map(move |t| (s, t)))
            .filter(|&(s, t)| m.get(s, t) == Order::Finite(2))
            .count();
        assert_eq!(finite, 12);
        let m5 = coxeter_matrix(&catalog("P5").unwrap());
        assert!((1..5).all(|t| m5.get(0, t) == Order::Finite(4)));
        assert!(CoxeterMatrix::new(vec![
            vec![Order::Finite(1), Order::Finite(5)],
            vec![Order::Finite(5), Order::Finite(1)]
        ])
        .is_err());
    }

    #[test]
    fn small_spheres() {
        let m = coxeter_matrix(&catalog("P3").unwrap());
        assert_eq!(bfs_growth(&m, 3).unwrap().counts, vec![1, 4, 12, 30]);
        assert_eq!(bfs_growth(&m, 0).unwrap().counts, vec![1]);
        let m1 = coxeter_matrix(&catalog("P1").unwrap());
        assert_eq!(bfs_growth(&m1, 1).unwrap().counts, vec![1, 4]);
    }

    #[test]
    fn cap_reports_completed_depth() {
        let m = coxeter_matrix(&catalog("P3").unwrap());
        match bfs_growth_with_cap(&m, 6, 20) {
            Err(OracleError::ResourceLimit {
                completed_depth,
                counts,
                ..
            }) => {
                assert_eq!(completed_depth, 2);
                assert_eq!(counts, vec![1, 4, 12]);
            }
            other => panic!("expected resource limit, got {other:?}"),
        }
    }
}
