//! Built-in models: the three ideal simplices, the two ideal pyramids, the
//! right-angled octahedron, and the right-angled antiprism family.

use super::icp::parse_icp;
use super::model::{ModelError, PolyhedronCombinatorics};

pub const CATALOG_NAMES: [&str; 6] = ["P1", "P2", "P3", "P4", "P5", "OCT"];

fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "P1" => include_str!("../../data/P1.icp"),
        "P2" => include_str!("../../data/P2.icp"),
        "P3" => include_str!("../../data/P3.icp"),
        "P4" => include_str!("../../data/P4.icp"),
        "P5" => include_str!("../../data/P5.icp"),
        "OCT" => include_str!("../../data/OCT.icp"),
        _ => return None,
    })
}

pub fn catalog(name: &str) -> Result<PolyhedronCombinatorics, ModelError> {
    let text = source(name).ok_or_else(|| ModelError::UnknownCatalogName(name.to_string()))?;
    Ok(parse_icp(text).expect("built-in catalog data parses"))
}

/// Every catalog entry, in catalog order.
pub fn catalog_all() -> Vec<PolyhedronCombinatorics> {
    CATALOG_NAMES.iter().map(|n| catalog(n).unwrap()).collect()
}

/// Right-angled ideal antiprism over an `n`-gon (`n >= 3`), with `2n + 2`
/// faces: top `0`, bottom `1`, upper band `2..2+n`, lower band `2+n..2+2n`.
/// `n = 3` is the octahedron.
pub fn antiprism(n: usize) -> PolyhedronCombinatorics {
    assert!(n >= 3, "antiprism needs n >= 3");
    let a = |i: usize| 2 + i % n;
    let c = |i: usize| 2 + n + i % n;
    let mut edges = Vec::new();
    let mut cusps = Vec::new();
    for i in 0..n {
        let prev = i + n - 1;
        edges.push((0, a(i), 2));
        edges.push((1, c(i), 2));
        edges.push((a(i), c(i), 2));
        edges.push((a(i), c(prev), 2));
        cusps.push(vec![0, a(prev), c(prev), a(i)]);
        cusps.push(vec![1, c(prev), a(i), c(i)]);
    }
    PolyhedronCombinatorics::new(format!("AP{n}"), 2 * n + 2, edges, cusps).expect("antiprism is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{compute_invariants, validate};

    #[test]
    fn all_entries_validate() {
        for p in catalog_all() {
            let v = validate(&p);
            assert!(v.is_valid(), "{}:\n{}", p.name(), v.report);
        }
        for n in 3..8 {
            let p = antiprism(n);
            assert!(validate(&p).is_valid(), "AP{n}");
        }
    }

    #[test]
    fn invariant_counts() {
        let iv = compute_invariants(&catalog("P1").unwrap()).unwrap();
        assert_eq!((iv.f, iv.c, iv.e, iv.e2, iv.e3, iv.e4, iv.e6), (4, 4, 6, 2, 2, 0, 2));
        assert_eq!((iv.c8, iv.c9, iv.c10, iv.c11), (0, 0, 0, 4));
        let iv = compute_invariants(&catalog("P3").unwrap()).unwrap();
        assert_eq!((iv.f, iv.c, iv.e3, iv.c9), (4, 4, 6, 4));
        let iv = compute_invariants(&catalog("OCT").unwrap()).unwrap();
        assert_eq!((iv.f, iv.c, iv.e, iv.c8, iv.e2), (8, 6, 12, 6, 12));
        let iv = compute_invariants(&catalog("P4").unwrap()).unwrap();
        assert_eq!((iv.f, iv.c, iv.c8, iv.c9, iv.c10, iv.c11), (5, 5, 1, 0, 0, 4));
    }

    #[test]
    fn unknown_name() {
        assert_eq!(catalog("P9"), Err(ModelError::UnknownCatalogName("P9".into())));
    }
}
