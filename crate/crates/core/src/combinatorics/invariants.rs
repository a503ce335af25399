use std::fmt;

use super::cusp::{classify_cusp, CuspType};
use super::model::{ModelError, PolyhedronCombinatorics};

/// Face, cusp and edge counts of an ideal Coxeter polyhedron.
///
/// `e2..e6` count edges by dihedral label; `c8..c11` count cusps of types
/// (i)..(iv). Signed so the closed-form coefficients can be evaluated
/// directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct InvariantVector {
    pub f: i64,
    pub c: i64,
    pub e: i64,
    pub e2: i64,
    pub e3: i64,
    pub e4: i64,
    pub e6: i64,
    pub c8: i64,
    pub c9: i64,
    pub c10: i64,
    pub c11: i64,
}

impl InvariantVector {
    /// All edges are pi/2 (equivalently, every cusp has type (i)).
    pub fn is_right_angled(&self) -> bool {
        self.e > 0 && self.e == self.e2
    }

    /// The invariant vector determined by `f` and the cusp-type counts, via
    /// the edge/cusp incidence identities. `None` if the counts are
    /// inconsistent (odd totals).
    pub fn from_cusp_counts(f: i64, c8: i64, c9: i64, c10: i64, c11: i64) -> Option<Self> {
        let c = c8 + c9 + c10 + c11;
        let two_e = 4 * c8 + 3 * (c9 + c10 + c11);
        let two_e2 = 4 * c8 + c10 + c11;
        let two_e3 = 3 * c9 + c11;
        if two_e % 2 != 0 || two_e2 % 2 != 0 || two_e3 % 2 != 0 || c11 % 2 != 0 {
            return None;
        }
        Some(InvariantVector {
            f,
            c,
            e: two_e / 2,
            e2: two_e2 / 2,
            e3: two_e3 / 2,
            e4: c10,
            e6: c11 / 2,
            c8,
            c9,
            c10,
            c11,
        })
    }

    /// The identity checks `(1)..(10)` as `(label, holds)` pairs.
    pub fn identities(&self) -> Vec<(&'static str, bool)> {
        let s = self;
        vec![
            ("(1) c - e + f = 2", s.c - s.e + s.f == 2),
            (
                "(2) 4c8 + 3c9 + 3c10 + 3c11 = 2e",
                4 * s.c8 + 3 * (s.c9 + s.c10 + s.c11) == 2 * s.e,
            ),
            ("(3) 2e2 = 4c8 + c10 + c11", 2 * s.e2 == 4 * s.c8 + s.c10 + s.c11),
            ("(4) 2e3 = 3c9 + c11", 2 * s.e3 == 3 * s.c9 + s.c11),
            ("(5) e4 = c10", s.e4 == s.c10),
            ("(6) 2e6 = c11", 2 * s.e6 == s.c11),
            ("(7) c = c8 + c9 + c10 + c11", s.c == s.c8 + s.c9 + s.c10 + s.c11),
            ("(8) e = e2 + e3 + e4 + e6", s.e == s.e2 + s.e3 + s.e4 + s.e6),
            ("(9) c8 = 2f - c - 4", s.c8 == 2 * s.f - s.c - 4),
            (
                "(10) c9 + c10 + c11 = 2c - 2f + 4",
                s.c9 + s.c10 + s.c11 == 2 * s.c - 2 * s.f + 4,
            ),
        ]
    }

    pub fn identities_hold(&self) -> bool {
        self.identities().iter().all(|(_, ok)| *ok)
    }

    /// Identities, parities and the inequalities `(11)..(15)` together, as
    /// checked by `validate` (with its right-angled exemptions).
    pub fn admissible(&self) -> bool {
        let s = self;
        let parity = s.c9 % 2 == 0 && s.c10 % 2 == 0;
        let shape = if s.is_right_angled() {
            s.c == s.f - 2
        } else {
            s.c >= s.f && 4 * s.c - 4 * s.f + s.c9 - s.c10 + 4 >= 0
        };
        self.identities_hold()
            && parity
            && shape
            && 2 * s.f - s.c - 4 >= 0
            && 2 * s.c + 2 * s.f - s.c9 - 8 > 0
            && 4 * s.f - s.c9 + s.c10 - 12 >= 0
    }
}

impl fmt::Display for InvariantVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "f={} c={} e={} e2={} e3={} e4={} e6={} c8={} c9={} c10={} c11={}",
            self.f, self.c, self.e, self.e2, self.e3, self.e4, self.e6, self.c8, self.c9, self.c10, self.c11
        )
    }
}

/// Direct tally; cusps that fail to classify are counted in `c` only.
pub(crate) fn tally(p: &PolyhedronCombinatorics) -> (InvariantVector, Vec<ModelError>) {
    let mut iv = InvariantVector {
        f: p.face_count() as i64,
        c: p.cusps().len() as i64,
        e: p.edge_count() as i64,
        ..Default::default()
    };
    for e in p.edges() {
        match e.label.m() {
            2 => iv.e2 += 1,
            3 => iv.e3 += 1,
            4 => iv.e4 += 1,
            _ => iv.e6 += 1,
        }
    }
    let mut errors = Vec::new();
    for cusp in p.cusps() {
        match classify_cusp(cusp, p) {
            Ok(CuspType::TypeI) => iv.c8 += 1,
            Ok(CuspType::TypeII) => iv.c9 += 1,
            Ok(CuspType::TypeIII) => iv.c10 += 1,
            Ok(CuspType::TypeIV) => iv.c11 += 1,
            Err(e) => errors.push(e),
        }
    }
    (iv, errors)
}

pub fn compute_invariants(p: &PolyhedronCombinatorics) -> Result<InvariantVector, ModelError> {
    let (iv, mut errors) = tally(p);
    if errors.is_empty() {
        Ok(iv)
    } else {
        Err(errors.swap_remove(0))
    }
}
