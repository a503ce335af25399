use std::collections::{BTreeMap, BTreeSet};

use super::invariants::{tally, InvariantVector};
use super::model::PolyhedronCombinatorics;
use crate::report::Report;

/// Outcome of [`validate`]: every check is listed, failures do not stop the run.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub invariants: InvariantVector,
    pub right_angled: bool,
    pub report: Report,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.report.passed()
    }
}

pub fn validate(p: &PolyhedronCombinatorics) -> ValidationReport {
    let mut r = Report::new();
    let (iv, cusp_errors) = tally(p);
    let right = p.is_right_angled();

    r.check("face-count", iv.f >= 4, format!("f = {} < 4", iv.f));
    r.check("cusp-count", iv.c >= 4, format!("c = {} < 4", iv.c));

    let details: Vec<String> = cusp_errors.iter().map(ToString::to_string).collect();
    r.check("cusp-types", details.is_empty(), details.join("; "));

    let mut seen = BTreeMap::new();
    let mut repeated = Vec::new();
    for (i, cusp) in p.cusps().iter().enumerate() {
        let set: BTreeSet<usize> = cusp.iter().copied().collect();
        if let Some(j) = seen.insert(set, i) {
            repeated.push(format!("cusps {j} and {i}"));
        }
    }
    r.check("distinct-cusps", repeated.is_empty(), repeated.join(", "));

    let mut edge_uses: BTreeMap<(usize, usize), usize> = p.edges().map(|e| ((e.face_a, e.face_b), 0)).collect();
    for cusp in p.cusps() {
        let k = cusp.len();
        for i in 0..k {
            let (a, b) = (cusp[i], cusp[(i + 1) % k]);
            if let Some(n) = edge_uses.get_mut(&(a.min(b), a.max(b))) {
                *n += 1;
            }
        }
    }
    let bad: Vec<String> = edge_uses
        .iter()
        .filter(|(_, &n)| n != 2)
        .map(|(&(a, b), &n)| format!("edge {a}-{b} in {n} cusps"))
        .collect();
    r.check("edge-in-two-cusps", bad.is_empty(), bad.join(", "));

    let thin: Vec<String> = (0..p.face_count())
        .filter_map(|face| {
            let n = p.cusps_of_face(face).len();
            (n < 3).then(|| format!("face {face} has {n} cusps"))
        })
        .collect();
    r.check("face-has-three-cusps", thin.is_empty(), thin.join(", "));
    r.check(
        "4c >= 3f",
        4 * iv.c >= 3 * iv.f,
        format!("4c = {} < 3f = {}", 4 * iv.c, 3 * iv.f),
    );

    for (name, ok) in iv.identities() {
        r.check(name, ok, format!("fails for {iv}"));
    }
    r.check("c9 even", iv.c9 % 2 == 0, format!("c9 = {}", iv.c9));
    r.check("c10 even", iv.c10 % 2 == 0, format!("c10 = {}", iv.c10));

    let c = &iv;
    r.check(
        "(11) 2f - c - 4 >= 0",
        2 * c.f - c.c - 4 >= 0,
        format!("2f - c - 4 = {}", 2 * c.f - c.c - 4),
    );
    if right {
        r.skip("(12) c >= f", "right-angled: (12) not asserted");
        r.check(
            "right-angled c = f - 2",
            c.c == c.f - 2,
            format!("c = {}, f = {}", c.c, c.f),
        );
        r.skip(
            "(13) 4c - 4f + c9 - c10 + 4 >= 0",
            "right-angled: (13) not asserted (equals -4 when c = f - 2)",
        );
    } else {
        r.check("(12) c >= f", c.c >= c.f, format!("c = {} < f = {}", c.c, c.f));
        let v = 4 * c.c - 4 * c.f + c.c9 - c.c10 + 4;
        r.check("(13) 4c - 4f + c9 - c10 + 4 >= 0", v >= 0, format!("value {v}"));
    }
    let v = 2 * c.c + 2 * c.f - c.c9 - 8;
    r.check("(14) 2c + 2f - c9 - 8 > 0", v > 0, format!("value {v}"));
    let v = 4 * c.f - c.c9 + c.c10 - 12;
    r.check("(15) 4f - c9 + c10 - 12 >= 0", v >= 0, format!("value {v}"));

    ValidationReport {
        invariants: iv,
        right_angled: right,
        report: r,
    }
}
