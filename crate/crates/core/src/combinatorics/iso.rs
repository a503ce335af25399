use std::collections::BTreeSet;

use super::model::{canonical_cycle, PolyhedronCombinatorics};

/// Local signature used to prune candidate images.
fn signature(p: &PolyhedronCombinatorics, f: usize) -> (Vec<u8>, usize) {
    let mut ls: Vec<u8> = p.neighbors(f).iter().map(|&n| p.label(f, n).unwrap().m()).collect();
    ls.sort_unstable();
    (ls, p.cusps_of_face(f).len())
}

fn cusp_set(p: &PolyhedronCombinatorics, perm: &[usize]) -> BTreeSet<Vec<usize>> {
    p.cusps()
        .iter()
        .map(|c| canonical_cycle(&c.iter().map(|&f| perm[f]).collect::<Vec<_>>()))
        .collect()
}

/// A face bijection `perm[face of p] = face of q` preserving labelled edges
/// and cusp cycles (up to rotation and reflection), if one exists.
pub fn find_isomorphism(p: &PolyhedronCombinatorics, q: &PolyhedronCombinatorics) -> Option<Vec<usize>> {
    let n = p.face_count();
    if n != q.face_count() || p.edge_count() != q.edge_count() || p.cusps().len() != q.cusps().len() {
        return None;
    }
    let sp: Vec<_> = (0..n).map(|f| signature(p, f)).collect();
    let sq: Vec<_> = (0..n).map(|f| signature(q, f)).collect();
    let target = cusp_set(q, &(0..n).collect::<Vec<_>>());
    if target.len() != q.cusps().len() {
        return None;
    }

    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn extend(
        i: usize,
        p: &PolyhedronCombinatorics,
        q: &PolyhedronCombinatorics,
        sp: &[(Vec<u8>, usize)],
        sq: &[(Vec<u8>, usize)],
        target: &BTreeSet<Vec<usize>>,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = perm.len();
        if i == n {
            return cusp_set(p, perm) == *target;
        }
        for img in 0..n {
            if used[img] || sp[i] != sq[img] {
                continue;
            }
            let consistent = (0..i).all(|j| p.label(i, j) == q.label(img, perm[j]));
            if !consistent {
                continue;
            }
            perm[i] = img;
            used[img] = true;
            if extend(i + 1, p, q, sp, sq, target, perm, used) {
                return true;
            }
            used[img] = false;
        }
        perm[i] = usize::MAX;
        false
    }
    extend(0, p, q, &sp, &sq, &target, &mut perm, &mut used).then_some(perm)
}

pub fn is_isomorphic(p: &PolyhedronCombinatorics, q: &PolyhedronCombinatorics) -> bool {
    find_isomorphism(p, q).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::catalog::{antiprism, catalog};

    #[test]
    fn relabelled_copies_match() {
        let p1 = catalog("P1").unwrap();
        let q = p1.permute_faces(&[2, 0, 3, 1]);
        let perm = find_isomorphism(&p1, &q).unwrap();
        assert_eq!(
            p1.permute_faces(&perm).edges().collect::<Vec<_>>(),
            q.edges().collect::<Vec<_>>()
        );
        let oct = catalog("OCT").unwrap();
        assert!(is_isomorphic(&oct.permute_faces(&[7, 6, 5, 4, 3, 2, 1, 0]), &oct));
    }

    #[test]
    fn distinct_models_differ() {
        assert!(!is_isomorphic(&catalog("P1").unwrap(), &catalog("P2").unwrap()));
        assert!(!is_isomorphic(&catalog("P4").unwrap(), &catalog("P5").unwrap()));
    }

    #[test]
    fn three_antiprism_is_octahedron() {
        assert!(is_isomorphic(&antiprism(3), &catalog("OCT").unwrap()));
    }
}
