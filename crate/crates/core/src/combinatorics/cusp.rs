use std::fmt;

use super::model::{AngleLabel, ModelError, PolyhedronCombinatorics};

/// The four possible cusp links of an ideal Coxeter polyhedron in H^3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CuspType {
    /// Four faces, all angles pi/2.
    TypeI,
    /// Three faces, angles (pi/3, pi/3, pi/3).
    TypeII,
    /// Three faces, angles (pi/2, pi/4, pi/4).
    TypeIII,
    /// Three faces, angles (pi/2, pi/3, pi/6).
    TypeIV,
}

impl fmt::Display for CuspType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CuspType::TypeI => "i",
            CuspType::TypeII => "ii",
            CuspType::TypeIII => "iii",
            CuspType::TypeIV => "iv",
        })
    }
}

/// Classifies a cusp from the labels of its incident edges.
///
/// A cusp link is a Euclidean polygon, so the labels satisfy
/// `sum (1 - 1/m_i) = 2`, which forces one of the four multisets.
pub fn classify_labels(labels: &[AngleLabel]) -> Option<CuspType> {
    let mut ms: Vec<u8> = labels.iter().map(|l| l.m()).collect();
    ms.sort_unstable();
    match ms.as_slice() {
        [2, 2, 2, 2] => Some(CuspType::TypeI),
        [3, 3, 3] => Some(CuspType::TypeII),
        [2, 4, 4] => Some(CuspType::TypeIII),
        [2, 3, 6] => Some(CuspType::TypeIV),
        _ => None,
    }
}

/// Classifies one cusp cycle of `p`.
pub fn classify_cusp(cusp: &[usize], p: &PolyhedronCombinatorics) -> Result<CuspType, ModelError> {
    let labels = p.cusp_labels(cusp)?;
    classify_labels(&labels).ok_or_else(|| {
        let mut ms: Vec<u8> = labels.iter().map(|l| l.m()).collect();
        ms.sort_unstable();
        ModelError::AngleSumViolation {
            cusp: cusp.to_vec(),
            labels: ms,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent route: the link angle sum in units of pi/12 must be 24.
    fn angle_sum_is_two_pi(ms: &[u8]) -> bool {
        ms.iter().map(|&m| 12 - 12 / u32::from(m)).sum::<u32>() == 24
    }

    fn multisets(k: usize) -> Vec<Vec<u8>> {
        let ms = [2u8, 3, 4, 6];
        let mut out: Vec<Vec<u8>> = vec![vec![]];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    ms.iter()
                        .filter(|&&m| prefix.last().is_none_or(|&l| l <= m))
                        .map(|&m| {
                            let mut v = prefix.clone();
                            v.push(m);
                            v
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
        }
        out
    }

    #[test]
    fn accepts_exactly_the_four_patterns() {
        let mut accepted = Vec::new();
        for k in [3, 4] {
            for ms in multisets(k) {
                let labels: Vec<AngleLabel> = ms.iter().map(|&m| AngleLabel::new(m.into()).unwrap()).collect();
                let got = classify_labels(&labels);
                assert_eq!(got.is_some(), angle_sum_is_two_pi(&ms), "labels {ms:?}");
                if got.is_some() {
                    accepted.push(ms);
                }
            }
        }
        assert_eq!(multisets(3).len() + multisets(4).len(), 20 + 35);
        accepted.sort();
        assert_eq!(
            accepted,
            vec![vec![2, 2, 2, 2], vec![2, 3, 6], vec![2, 4, 4], vec![3, 3, 3]]
        );
    }

    #[test]
    fn classifies_triangles_and_squares() {
        let l = |ms: &[u32]| ms.iter().map(|&m| AngleLabel::new(m).unwrap()).collect::<Vec<_>>();
        assert_eq!(classify_labels(&l(&[3, 3, 3])), Some(CuspType::TypeII));
        assert_eq!(classify_labels(&l(&[2, 2, 2, 2])), Some(CuspType::TypeI));
        assert_eq!(classify_labels(&l(&[4, 2, 4])), Some(CuspType::TypeIII));
        assert_eq!(classify_labels(&l(&[6, 3, 2])), Some(CuspType::TypeIV));
        assert_eq!(classify_labels(&l(&[2, 2, 2])), None);
    }

    #[test]
    fn violation_reports_label_multiset() {
        let p = PolyhedronCombinatorics::new("t", 4, [(0, 1, 2), (1, 2, 2), (0, 2, 2)], [vec![0, 1, 2]]).unwrap();
        let err = classify_cusp(&[0, 1, 2], &p).unwrap_err();
        assert_eq!(
            err,
            ModelError::AngleSumViolation {
                cusp: vec![0, 1, 2],
                labels: vec![2, 2, 2]
            }
        );
        assert!(matches!(
            classify_cusp(&[0, 1, 3], &p),
            Err(ModelError::MissingCuspEdge { .. })
        ));
    }
}
