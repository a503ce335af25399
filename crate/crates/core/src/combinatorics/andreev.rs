//! Combinatorial realizability conditions for acute-angled almost simple
//! polyhedra, specialized to ideal polyhedra (every vertex is a cusp).

use std::collections::BTreeSet;

use super::cusp::classify_cusp;
use super::model::PolyhedronCombinatorics;
use crate::report::Report;

pub type AndreevReport = Report;

/// Angle `pi/m` in units of `pi/12`.
fn twelfths(m: u8) -> u32 {
    12 / u32::from(m)
}

fn share_cusp(p: &PolyhedronCombinatorics, faces: &[usize]) -> bool {
    p.cusps().iter().any(|c| faces.iter().all(|f| c.contains(f)))
}

pub fn andreev_check(p: &PolyhedronCombinatorics) -> AndreevReport {
    let mut r = Report::new();
    let n = p.face_count();
    let adj = |a: usize, b: usize| p.are_adjacent(a, b);
    let m = |a: usize, b: usize| p.label(a, b).map_or(0, |l| l.m());

    r.skip("(a)", "vacuous: an ideal polyhedron has no finite vertices");

    let mut bad3 = Vec::new();
    let mut bad4 = Vec::new();
    for c in p.cusps() {
        let Ok(labels) = p.cusp_labels(c) else {
            continue;
        };
        let ok = classify_cusp(c, p).is_ok();
        if c.len() == 3 {
            let sum: u32 = labels.iter().map(|l| twelfths(l.m())).sum();
            if !(ok && sum == 12) {
                bad3.push(format!("{c:?}"));
            }
        } else if !(ok && labels.iter().all(|l| l.m() == 2)) {
            bad4.push(format!("{c:?}"));
        }
    }
    r.check("(b) three faces at a cusp sum to pi", bad3.is_empty(), bad3.join(", "));
    r.check(
        "(c) four faces at a cusp are right-angled",
        bad4.is_empty(),
        bad4.join(", "),
    );
    r.skip("(c) vertex part", "vacuous: no finite vertices");

    let mut fails = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !adj(i, j) {
                continue;
            }
            for k in j + 1..n {
                if adj(i, k) && adj(j, k) && !share_cusp(p, &[i, j, k]) {
                    let sum = twelfths(m(i, j)) + twelfths(m(j, k)) + twelfths(m(i, k));
                    if sum >= 12 {
                        fails.push(format!("faces {i},{j},{k}"));
                    }
                }
            }
        }
    }
    r.check(
        "(d) prismatic 3-circuits sum below pi",
        fails.is_empty(),
        fails.join(", "),
    );

    let mut fails = BTreeSet::new();
    for c in p.cusps() {
        for (x, &j) in c.iter().enumerate() {
            for &k in &c[x + 1..] {
                if adj(j, k) {
                    continue;
                }
                for i in 0..n {
                    if c.contains(&i) || !adj(i, j) || !adj(i, k) {
                        continue;
                    }
                    if m(i, j) == 2 && m(i, k) == 2 {
                        fails.insert(format!("face {i} with {j},{k}"));
                    }
                }
            }
        }
    }
    let fails: Vec<String> = fails.into_iter().collect();
    r.check("(e)", fails.is_empty(), fails.join(", "));

    // Four-circuits f0-f1-f2-f3-f0, each counted once with f0 minimal and f1 < f3.
    let mut fails = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !adj(a, b) {
                continue;
            }
            for d in b + 1..n {
                if !adj(a, d) {
                    continue;
                }
                for c in a + 1..n {
                    if c == b || c == d || !adj(b, c) || !adj(c, d) {
                        continue;
                    }
                    if share_cusp(p, &[a, b, c, d]) {
                        continue;
                    }
                    if [m(a, b), m(b, c), m(c, d), m(d, a)].iter().all(|&x| x == 2) {
                        fails.push(format!("faces {a},{b},{c},{d}"));
                    }
                }
            }
        }
    }
    r.check(
        "(f) 4-circuits not all right-angled",
        fails.is_empty(),
        fails.join(", "),
    );
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::catalog::{antiprism, catalog};
    use crate::report::CheckStatus;

    #[test]
    fn catalog_passes() {
        for name in ["P1", "P2", "P3", "P4", "P5", "OCT"] {
            let r = andreev_check(&catalog(name).unwrap());
            assert!(r.passed(), "{name}:\n{r}");
        }
        assert!(andreev_check(&antiprism(4)).passed());
    }

    #[test]
    fn right_angled_belt_fails_d() {
        let p = PolyhedronCombinatorics::new(
            "prism",
            5,
            [
                (0, 2, 4),
                (0, 3, 4),
                (0, 4, 4),
                (1, 2, 4),
                (1, 3, 4),
                (1, 4, 4),
                (2, 3, 2),
                (3, 4, 2),
                (2, 4, 2),
            ],
            [
                vec![0, 2, 3],
                vec![0, 3, 4],
                vec![0, 4, 2],
                vec![1, 2, 3],
                vec![1, 3, 4],
                vec![1, 4, 2],
            ],
        )
        .unwrap();
        assert!(crate::combinatorics::validate(&p).is_valid());
        let r = andreev_check(&p);
        assert!(matches!(
            r.status("(d) prismatic 3-circuits sum below pi"),
            Some(CheckStatus::Fail(_))
        ));
    }
}
