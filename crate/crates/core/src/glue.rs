//! Gluing two polyhedra along a pair of matching faces.
//!
//! The glued model is built directly from the local angle rules. Matched
//! edges with labels `(2, 2)` disappear and their flanking faces merge;
//! `(4, 4)`, `(6, 6)` and `(3, 6)` become single edges labelled 2, 3 and 2.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::combinatorics::{
    compute_invariants, face_profile, validate, Builder, FaceProfile, ModelError, PolyhedronCombinatorics,
};
use crate::report::Report;
use crate::roots::{growth_rate, RootCertificate, RootError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlueError {
    #[error("malformed face matching: {0}")]
    BadMatching(String),
    #[error("faces are not glueable:\n{0}")]
    NotGlueable(Report),
    #[error("glued model is invalid: {0}")]
    GlueInvalid(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Face `face_p` of the first polyhedron is glued to `face_q` of the second.
/// Each pair `(k, l)` of `edge_map` matches the boundary edge shared with
/// neighbour `k` of `face_p` to the one shared with neighbour `l` of `face_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceMatching {
    pub face_p: usize,
    pub face_q: usize,
    pub edge_map: Vec<(usize, usize)>,
}

impl fmt::Display for FaceMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self.edge_map.iter().map(|(k, l)| format!("{k}:{l}")).collect();
        write!(
            f,
            "--face-a {} --face-b {} --map {}",
            self.face_p,
            self.face_q,
            pairs.join(",")
        )
    }
}

/// Parses `k1:l1,k2:l2,...`.
pub fn parse_edge_map(s: &str) -> Result<Vec<(usize, usize)>, GlueError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (k, l) = t
                .split_once(':')
                .ok_or_else(|| GlueError::BadMatching(format!("`{t}` is not of the form k:l")))?;
            let num = |x: &str| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| GlueError::BadMatching(format!("`{x}` is not a face index")))
            };
            Ok((num(k)?, num(l)?))
        })
        .collect()
}

/// Combined label of two matched edges: `Ok(None)` when the angles sum to pi
/// (faces merge), `Ok(Some(k))` for a sum of `pi/k`.
pub fn combined_label(m: u8, n: u8) -> Result<Option<u8>, String> {
    match (m.min(n), m.max(n)) {
        (2, 2) => Ok(None),
        (4, 4) => Ok(Some(2)),
        (6, 6) => Ok(Some(3)),
        (3, 6) => Ok(Some(2)),
        (a, b) => Err(format!(
            "pi/{a} + pi/{b} is not pi or a submultiple pi/k with k in {{2,3,4,6}}"
        )),
    }
}

/// Faces and their boundaries, with the matching turned into a position map.
struct Prepared {
    fp: FaceProfile,
    fq: FaceProfile,
    /// `pos[i]` is the position in `fq` matched to position `i` of `fp`.
    pos: Vec<usize>,
}

fn prepare(p: &PolyhedronCombinatorics, q: &PolyhedronCombinatorics, m: &FaceMatching) -> Result<Prepared, GlueError> {
    let bad = |s: String| GlueError::BadMatching(s);
    let fp = face_profile(p, m.face_p)?;
    let fq = face_profile(q, m.face_q)?;
    let k = fp.neighbors.len();
    if fq.neighbors.len() != k {
        return Err(bad(format!(
            "face boundaries have {} and {} edges",
            k,
            fq.neighbors.len()
        )));
    }
    if m.edge_map.len() != k {
        return Err(bad(format!("map has {} pairs, faces have {k} edges", m.edge_map.len())));
    }
    let mut pos = vec![usize::MAX; k];
    let mut used = vec![false; k];
    for &(a, b) in &m.edge_map {
        let i = fp
            .neighbors
            .iter()
            .position(|&x| x == a)
            .ok_or_else(|| bad(format!("{a} is not a neighbour of face {}", m.face_p)))?;
        let j = fq
            .neighbors
            .iter()
            .position(|&x| x == b)
            .ok_or_else(|| bad(format!("{b} is not a neighbour of face {}", m.face_q)))?;
        if pos[i] != usize::MAX || used[j] {
            return Err(bad(format!("pair {a}:{b} repeats an edge")));
        }
        pos[i] = j;
        used[j] = true;
    }
    // Cusp cycles carry no orientation, so any rotation or reflection of the
    // boundary polygon is an admissible identification.
    let step = (pos[1] + k - pos[0]) % k;
    let dihedral = (step == 1 || step == k - 1) && (0..k).all(|i| pos[(i + 1) % k] == (pos[i] + step) % k);
    if !dihedral {
        return Err(bad("map does not preserve adjacency of boundary edges".into()));
    }
    Ok(Prepared { fp, fq, pos })
}

/// All adjacency-preserving boundary bijections between the two faces.
pub fn candidate_matchings(
    p: &PolyhedronCombinatorics,
    q: &PolyhedronCombinatorics,
    face_p: usize,
    face_q: usize,
) -> Result<Vec<FaceMatching>, GlueError> {
    let fp = face_profile(p, face_p)?;
    let fq = face_profile(q, face_q)?;
    let k = fp.neighbors.len();
    if fq.neighbors.len() != k {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for reflect in [false, true] {
        for shift in 0..k {
            let edge_map = (0..k)
                .map(|i| {
                    let j = if reflect { (shift + k - i) % k } else { (shift + i) % k };
                    (fp.neighbors[i], fq.neighbors[j])
                })
                .collect();
            out.push(FaceMatching {
                face_p,
                face_q,
                edge_map,
            });
        }
    }
    Ok(out)
}

/// Angle check on every matched edge pair, followed by a construction and
/// validation of the result (which covers the cusp classification).
pub fn check_glueable(p: &PolyhedronCombinatorics, q: &PolyhedronCombinatorics, m: &FaceMatching) -> Report {
    let mut r = Report::new();
    let prep = match prepare(p, q, m) {
        Ok(x) => x,
        Err(e) => {
            r.fail("matching", e.to_string());
            return r;
        }
    };
    r.pass("matching");
    for (i, &j) in prep.pos.iter().enumerate() {
        let (a, b) = (prep.fp.neighbors[i], prep.fq.neighbors[j]);
        let (la, lb) = (prep.fp.boundary_labels[i].m(), prep.fq.boundary_labels[j].m());
        let name = format!("edge {a}:{b} ({la}+{lb})");
        match combined_label(la, lb) {
            Ok(None) => r.pass(format!("{name} -> faces merge")),
            Ok(Some(k)) => r.pass(format!("{name} -> label {k}")),
            Err(why) => r.fail(name, why),
        }
    }
    if !r.passed() {
        r.skip("glued model validates", "angle check failed");
        return r;
    }
    match construct(p, q, m, &prep) {
        Ok(g) => {
            let v = validate(&g);
            let failed: Vec<String> = v.report.failures().map(|c| c.name.clone()).collect();
            r.check(
                "glued model validates",
                v.is_valid(),
                format!("failed: {}", failed.join(", ")),
            );
        }
        Err(e) => r.fail("glued model validates", e.to_string()),
    }
    r
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// The cusp cycle with `face` removed, as a path from `start` to `end`.
fn open_cusp(cycle: &[usize], face: usize, start: usize, end: usize) -> Option<Vec<usize>> {
    let k = cycle.len();
    let i = cycle.iter().position(|&f| f == face)?;
    let path: Vec<usize> = (1..k).map(|d| cycle[(i + d) % k]).collect();
    if path.first() == Some(&start) && path.last() == Some(&end) {
        Some(path)
    } else if path.first() == Some(&end) && path.last() == Some(&start) {
        Some(path.into_iter().rev().collect())
    } else {
        None
    }
}

fn construct(
    p: &PolyhedronCombinatorics,
    q: &PolyhedronCombinatorics,
    m: &FaceMatching,
    prep: &Prepared,
) -> Result<PolyhedronCombinatorics, GlueError> {
    let invalid = |s: String| GlueError::GlueInvalid(s);
    let off = p.face_count();
    let total = off + q.face_count();
    let removed = [m.face_p, off + m.face_q];
    let mut uf = UnionFind((0..total).collect());
    let mut new_edges: Vec<(usize, usize, u8)> = Vec::new();
    let k = prep.pos.len();
    for i in 0..k {
        let j = prep.pos[i];
        let (a, b) = (prep.fp.neighbors[i], off + prep.fq.neighbors[j]);
        match combined_label(prep.fp.boundary_labels[i].m(), prep.fq.boundary_labels[j].m()) {
            Ok(None) => uf.union(a, b),
            Ok(Some(l)) => new_edges.push((a, b, l)),
            Err(why) => return Err(invalid(why)),
        }
    }

    // Surviving faces, numbered by their smallest member.
    let mut index: BTreeMap<usize, usize> = BTreeMap::new();
    for f in 0..total {
        if removed.contains(&f) {
            continue;
        }
        let r = uf.find(f);
        let next = index.len();
        index.entry(r).or_insert(next);
    }
    let ids: Vec<usize> = (0..total)
        .map(|f| index.get(&uf.find(f)).copied().unwrap_or(usize::MAX))
        .collect();
    let id = |f: usize| ids[f];

    let mut edges: BTreeMap<(usize, usize), u8> = BTreeMap::new();
    let mut add = |a: usize, b: usize, l: u8| -> Result<(), GlueError> {
        if a == b {
            return Err(invalid(format!("merged face {a} would be adjacent to itself")));
        }
        let key = (a.min(b), a.max(b));
        match edges.insert(key, l) {
            Some(old) if old != l => Err(invalid(format!(
                "faces {} and {} would meet at labels {old} and {l}",
                key.0, key.1
            ))),
            _ => Ok(()),
        }
    };
    for (poly, shift) in [(p, 0), (q, off)] {
        for e in poly.edges() {
            let (a, b) = (e.face_a + shift, e.face_b + shift);
            if removed.contains(&a) || removed.contains(&b) {
                continue;
            }
            add(id(a), id(b), e.label.m())?;
        }
    }
    for &(a, b, l) in &new_edges {
        add(id(a), id(b), l)?;
    }

    let mut cusps: Vec<Vec<usize>> = Vec::new();
    for (poly, shift, face) in [(p, 0, m.face_p), (q, off, m.face_q)] {
        for c in poly.cusps() {
            if !c.contains(&face) {
                cusps.push(c.iter().map(|&f| id(f + shift)).collect());
            }
        }
    }
    for i in 0..k {
        let (a0, a1) = (prep.fp.neighbors[i], prep.fp.neighbors[(i + 1) % k]);
        let (b0, b1) = (prep.fq.neighbors[prep.pos[i]], prep.fq.neighbors[prep.pos[(i + 1) % k]]);
        let pc = &p.cusps()[prep.fp.cusps[i]];
        let qi = (0..k)
            .find(|&j| {
                let (x, y) = (prep.fq.neighbors[j], prep.fq.neighbors[(j + 1) % k]);
                (x, y) == (b0, b1) || (x, y) == (b1, b0)
            })
            .ok_or_else(|| invalid("matched cusps do not correspond".into()))?;
        let qc = &q.cusps()[prep.fq.cusps[qi]];
        let pp = open_cusp(pc, m.face_p, a0, a1).ok_or_else(|| invalid("cusp path broken".into()))?;
        let qp = open_cusp(qc, m.face_q, b1, b0).ok_or_else(|| invalid("cusp path broken".into()))?;
        let mut cyc: Vec<usize> = pp
            .into_iter()
            .map(id)
            .chain(qp.into_iter().map(|f| id(f + off)))
            .collect();
        cyc.dedup();
        while cyc.len() > 1 && cyc.first() == cyc.last() {
            cyc.pop();
        }
        cusps.push(cyc);
    }

    let name = format!("{}*{}", p.name(), q.name());
    let mut b = Builder::new(name, index.len())?;
    for ((a, c), l) in edges {
        b.add_edge(a, c, u32::from(l))?;
    }
    for c in cusps {
        b.add_cusp(c)?;
    }
    Ok(b.build())
}

/// Glues after [`check_glueable`] passes; the result always validates.
pub fn glue(
    p: &PolyhedronCombinatorics,
    q: &PolyhedronCombinatorics,
    m: &FaceMatching,
) -> Result<PolyhedronCombinatorics, GlueError> {
    let prep = prepare(p, q, m)?;
    let angles = check_glueable(p, q, m);
    let angle_failures = angles.failures().filter(|c| c.name.starts_with("edge")).count();
    if angle_failures > 0 {
        return Err(GlueError::NotGlueable(angles));
    }
    let g = construct(p, q, m, &prep)?;
    let v = validate(&g);
    if !v.is_valid() {
        let failed: Vec<String> = v
            .report
            .failures()
            .map(|c| format!("{}: {:?}", c.name, c.status))
            .collect();
        return Err(GlueError::GlueInvalid(failed.join("; ")));
    }
    Ok(g)
}

/// A candidate matching with the outcome of gluing along it.
pub type GlueAttempt = (FaceMatching, Result<PolyhedronCombinatorics, GlueError>);

/// Every adjacency-preserving matching of the two faces, with its outcome.
pub fn auto_glue(
    p: &PolyhedronCombinatorics,
    q: &PolyhedronCombinatorics,
    face_p: usize,
    face_q: usize,
) -> Result<Vec<GlueAttempt>, GlueError> {
    Ok(candidate_matchings(p, q, face_p, face_q)?
        .into_iter()
        .map(|m| {
            let r = glue(p, q, &m);
            (m, r)
        })
        .collect())
}

/// Cusp and face counting identities for a glue along `F`.
pub fn glue_identities_check(
    p: &PolyhedronCombinatorics,
    q: &PolyhedronCombinatorics,
    m: &FaceMatching,
    glued: &PolyhedronCombinatorics,
) -> Result<Report, GlueError> {
    let prep = prepare(p, q, m)?;
    let (ip, iq, ig) = (
        compute_invariants(p)?,
        compute_invariants(q)?,
        compute_invariants(glued)?,
    );
    let f = &prep.fp;
    let mut r = Report::new();
    let expect = |got: i64, want: i64| format!("{got} != {want}");

    let c = ip.c + iq.c - f.cusp_count() as i64;
    r.check("(17) c = c(P) + c(Q) - c(F)", ig.c == c, expect(ig.c, c));

    // The c9 count assumes each (2,6)-cusp of F meets a (2,6)-cusp of F'.
    let k = f.neighbors.len();
    let like = (0..k).all(|i| {
        let lp = (f.boundary_labels[i].m(), f.boundary_labels[(i + 1) % k].m());
        if (lp.0.min(lp.1), lp.0.max(lp.1)) != (2, 6) {
            return true;
        }
        let (j0, j1) = (prep.pos[i], prep.pos[(i + 1) % k]);
        let lq = (prep.fq.boundary_labels[j0].m(), prep.fq.boundary_labels[j1].m());
        (lq.0.min(lq.1), lq.0.max(lq.1)) == (2, 6)
    });
    let c9 = ip.c9 + iq.c9 + f.c(2, 6) as i64;
    if like {
        r.check("(18) c9 = c9(P) + c9(Q) + c26(F)", ig.c9 == c9, expect(ig.c9, c9));
    } else {
        r.skip(
            "(18) c9 = c9(P) + c9(Q) + c26(F)",
            "not applicable: a (2,6)-cusp of F is matched to a cusp of another type",
        );
    }

    let c10 = ip.c10 + iq.c10 - 2 * f.c(4, 4) as i64 - f.c(2, 4) as i64;
    r.check(
        "(19) c10 = c10(P) + c10(Q) - 2 c44(F) - c24(F)",
        ig.c10 == c10,
        expect(ig.c10, c10),
    );

    let fc = ip.f + iq.f - f.e2 as i64 - 2;
    r.check("(20) f = f(P) + f(Q) - e2(F) - 2", ig.f == fc, expect(ig.f, fc));
    Ok(r)
}

/// Number of rational sample points in `(0, 1/2)` for the `g` comparison.
pub const G_SAMPLES: usize = 64;

/// Certificates of the three growth rates plus the comparison report.
#[derive(Debug, Clone)]
pub struct MonotonicityOutcome {
    pub report: Report,
    pub glued: RootCertificate,
    pub inputs: [RootCertificate; 2],
}

/// `tau(glued) > max(tau(P), tau(Q))` with disjoint enclosures, and
/// `g(glued) > g(P), g(Q)` on sample points of `(0, 1/2)`.
pub fn theorem6_check(
    p: &PolyhedronCombinatorics,
    q: &PolyhedronCombinatorics,
    glued: &PolyhedronCombinatorics,
    tol: &BigRational,
) -> Result<MonotonicityOutcome, RootError> {
    let mut tol = tol.clone();
    for _ in 0..4 {
        let cg = growth_rate(glued, &tol)?;
        let cp = growth_rate(p, &tol)?;
        let cq = growth_rate(q, &tol)?;
        let sep = |c: &RootCertificate| c.tau_enclosure.hi < cg.tau_enclosure.lo;
        if sep(&cp) && sep(&cq) {
            let mut report = Report::new();
            report.pass(format!(
                "tau(glued) in {} above tau(P) in {} and tau(Q) in {}",
                cg.tau_enclosure, cp.tau_enclosure, cq.tau_enclosure
            ));
            let gg = &cg.g;
            for (name, other) in [("P", &cp.g), ("Q", &cq.g)] {
                let bad: Vec<String> = (1..=G_SAMPLES)
                    .map(|j| BigRational::new(BigInt::from(2 * j - 1), BigInt::from(4 * G_SAMPLES)))
                    .filter(|t| gg.eval(t) <= other.eval(t))
                    .map(|t| t.to_string())
                    .collect();
                report.check(
                    format!("g(glued) > g({name}) on {G_SAMPLES} points of (0, 1/2)"),
                    bad.is_empty(),
                    format!("fails at {}", bad.join(", ")),
                );
            }
            return Ok(MonotonicityOutcome {
                report,
                glued: cg,
                inputs: [cp, cq],
            });
        }
        tol /= BigRational::from_integer(BigInt::from(1000));
    }
    Err(RootError::Inconclusive(
        "growth-rate enclosures still overlap after refinement".into(),
    ))
}

/// `glue` plus the identity and monotonicity checks, for reporting.
pub fn glue_and_verify(
    p: &PolyhedronCombinatorics,
    q: &PolyhedronCombinatorics,
    m: &FaceMatching,
    tol: &BigRational,
) -> Result<(PolyhedronCombinatorics, Report), GlueError> {
    let g = glue(p, q, m)?;
    let mut report = check_glueable(p, q, m);
    report.checks.extend(glue_identities_check(p, q, m, &g)?.checks);
    match theorem6_check(p, q, &g, tol) {
        Ok(o) => report.checks.extend(o.report.checks),
        Err(e) => report.fail("growth-rate monotonicity", e.to_string()),
    }
    Ok((g, report))
}

/// Lookup of a face's neighbour by label, for building matchings in tests.
pub fn neighbors_by_label(p: &PolyhedronCombinatorics, face: usize) -> Result<HashMap<u8, Vec<usize>>, GlueError> {
    let prof = face_profile(p, face)?;
    let mut out: HashMap<u8, Vec<usize>> = HashMap::new();
    for (n, l) in prof.neighbors.iter().zip(&prof.boundary_labels) {
        out.entry(l.m()).or_default().push(*n);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{catalog, is_isomorphic};
    use crate::report::CheckStatus;

    #[test]
    fn label_rules() {
        assert_eq!(combined_label(2, 2), Ok(None));
        assert_eq!(combined_label(4, 4), Ok(Some(2)));
        assert_eq!(combined_label(6, 6), Ok(Some(3)));
        assert_eq!(combined_label(6, 3), Ok(Some(2)));
        for (a, b) in [(3, 3), (2, 3), (2, 4), (2, 6), (3, 4), (4, 6)] {
            assert!(combined_label(a, b).is_err());
        }
    }

    #[test]
    fn map_parsing() {
        assert_eq!(parse_edge_map("1:2, 3:0").unwrap(), vec![(1, 2), (3, 0)]);
        assert!(parse_edge_map("1-2").is_err());
        assert!(parse_edge_map("a:2").is_err());
    }

    /// Face 0 of P1 has neighbours 1 (label 3), 2 (label 2), 3 (label 6).
    fn p1_cross() -> FaceMatching {
        FaceMatching {
            face_p: 0,
            face_q: 0,
            edge_map: vec![(2, 2), (1, 3), (3, 1)],
        }
    }

    #[test]
    fn p1_twice_is_p4() {
        let p1 = catalog("P1").unwrap();
        let m = p1_cross();
        assert!(check_glueable(&p1, &p1, &m).passed());
        let g = glue(&p1, &p1, &m).unwrap();
        assert!(is_isomorphic(&g, &catalog("P4").unwrap()));
        let ids = glue_identities_check(&p1, &p1, &m, &g).unwrap();
        assert!(ids.passed(), "{ids}");
        assert!(matches!(
            ids.status("(18) c9 = c9(P) + c9(Q) + c26(F)"),
            Some(CheckStatus::Skipped(_))
        ));
    }

    #[test]
    fn like_labels_fail_on_p1() {
        let p1 = catalog("P1").unwrap();
        let m = FaceMatching {
            face_p: 0,
            face_q: 0,
            edge_map: vec![(1, 1), (2, 2), (3, 3)],
        };
        let r = check_glueable(&p1, &p1, &m);
        assert!(!r.passed());
        assert!(matches!(glue(&p1, &p1, &m), Err(GlueError::NotGlueable(_))));
    }

    #[test]
    fn malformed_matchings() {
        let p1 = catalog("P1").unwrap();
        let short = FaceMatching {
            face_p: 0,
            face_q: 0,
            edge_map: vec![(1, 1), (2, 2)],
        };
        assert!(matches!(glue(&p1, &p1, &short), Err(GlueError::BadMatching(_))));
        let stranger = FaceMatching {
            face_p: 0,
            face_q: 0,
            edge_map: vec![(1, 0), (2, 2), (3, 3)],
        };
        assert!(matches!(glue(&p1, &p1, &stranger), Err(GlueError::BadMatching(_))));
        let p4 = catalog("P4").unwrap();
        let twisted = FaceMatching {
            face_p: 0,
            face_q: 0,
            edge_map: vec![(1, 1), (2, 3), (3, 2), (4, 4)],
        };
        assert!(matches!(glue(&p4, &p4, &twisted), Err(GlueError::BadMatching(_))));
    }

    #[test]
    fn auto_finds_every_orientation() {
        let p1 = catalog("P1").unwrap();
        let all = auto_glue(&p1, &p1, 0, 0).unwrap();
        assert_eq!(all.len(), 6);
        let ok: Vec<_> = all.iter().filter(|(_, r)| r.is_ok()).collect();
        assert_eq!(ok.len(), 1);
        let mut got = ok[0].0.edge_map.clone();
        let mut want = p1_cross().edge_map;
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn tau_increases() {
        let p1 = catalog("P1").unwrap();
        let g = glue(&p1, &p1, &p1_cross()).unwrap();
        let o = theorem6_check(&p1, &p1, &g, &crate::roots::default_tolerance()).unwrap();
        assert!(o.report.passed(), "{}", o.report);
    }
}
