use std::collections::BTreeMap;

use super::model::{AngleLabel, ModelError, PolyhedronCombinatorics};

/// Boundary data of one face: its polygon of edges and cusps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceProfile {
    pub face: usize,
    /// Neighbouring faces in cyclic boundary order.
    pub neighbors: Vec<usize>,
    /// `boundary_labels[i]` labels the edge shared with `neighbors[i]`.
    pub boundary_labels: Vec<AngleLabel>,
    /// `cusps[i]` is the cusp index between `neighbors[i]` and `neighbors[i + 1]`.
    pub cusps: Vec<usize>,
    pub e2: usize,
    pub e3: usize,
    pub e4: usize,
    pub e6: usize,
    c_mn: BTreeMap<(u8, u8), usize>,
}

impl FaceProfile {
    pub fn cusp_count(&self) -> usize {
        self.cusps.len()
    }

    /// Number of cusps of the face whose two boundary edges carry labels `m`, `n`.
    pub fn c(&self, m: u8, n: u8) -> usize {
        self.c_mn.get(&(m.min(n), m.max(n))).copied().unwrap_or(0)
    }

    pub fn e(&self, k: u8) -> usize {
        match k {
            2 => self.e2,
            3 => self.e3,
            4 => self.e4,
            6 => self.e6,
            _ => 0,
        }
    }

    pub fn c_mn(&self) -> &BTreeMap<(u8, u8), usize> {
        &self.c_mn
    }

    /// Boundary labels as plain integers, in cyclic order.
    pub fn label_values(&self) -> Vec<u8> {
        self.boundary_labels.iter().map(|l| l.m()).collect()
    }
}

/// The two neighbours of `face` inside a cusp cycle.
fn flanking(cusp: &[usize], face: usize) -> Option<(usize, usize)> {
    let k = cusp.len();
    let i = cusp.iter().position(|&f| f == face)?;
    Some((cusp[(i + k - 1) % k], cusp[(i + 1) % k]))
}

pub fn face_profile(p: &PolyhedronCombinatorics, face: usize) -> Result<FaceProfile, ModelError> {
    if face >= p.face_count() {
        return Err(ModelError::FaceOutOfRange {
            face,
            face_count: p.face_count(),
        });
    }
    let broken = || ModelError::NonSimpleBoundary(face);
    let nbrs = p.neighbors(face);
    let cusp_ids = p.cusps_of_face(face);
    if nbrs.len() < 3 || nbrs.len() != cusp_ids.len() {
        return Err(broken());
    }

    // Each neighbour touches exactly two of the face's cusps.
    let mut links: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for &ci in &cusp_ids {
        let (u, v) = flanking(&p.cusps()[ci], face).ok_or_else(broken)?;
        if u == v || !p.are_adjacent(face, u) || !p.are_adjacent(face, v) {
            return Err(broken());
        }
        links.entry(u).or_default().push((v, ci));
        links.entry(v).or_default().push((u, ci));
    }
    if links.len() != nbrs.len() || links.values().any(|l| l.len() != 2) {
        return Err(broken());
    }

    let start = nbrs[0];
    let mut order = vec![start];
    let mut cusps = Vec::new();
    let (mut prev_cusp, mut cur) = (usize::MAX, start);
    loop {
        let &(next, ci) = links[&cur].iter().find(|&&(_, c)| c != prev_cusp).ok_or_else(broken)?;
        cusps.push(ci);
        if next == start {
            break;
        }
        if order.contains(&next) {
            return Err(broken());
        }
        order.push(next);
        prev_cusp = ci;
        cur = next;
    }
    if order.len() != nbrs.len() {
        return Err(broken());
    }

    let labels: Vec<AngleLabel> = order
        .iter()
        .map(|&n| p.label(face, n).expect("neighbour shares an edge"))
        .collect();
    let k = labels.len();
    let mut prof = FaceProfile {
        face,
        neighbors: order,
        boundary_labels: labels.clone(),
        cusps,
        e2: 0,
        e3: 0,
        e4: 0,
        e6: 0,
        c_mn: BTreeMap::new(),
    };
    for (i, l) in labels.iter().enumerate() {
        match l.m() {
            2 => prof.e2 += 1,
            3 => prof.e3 += 1,
            4 => prof.e4 += 1,
            _ => prof.e6 += 1,
        }
        let (a, b) = (l.m(), labels[(i + 1) % k].m());
        *prof.c_mn.entry((a.min(b), a.max(b))).or_default() += 1;
    }
    Ok(prof)
}
