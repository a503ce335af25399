use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<ModelError>,
    },
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("dihedral label {0} is not one of 2, 3, 4, 6")]
    InvalidLabel(u32),
    #[error("duplicate edge between faces {0} and {1}")]
    DuplicateEdge(usize, usize),
    #[error("edge joins face {0} to itself")]
    SelfEdge(usize),
    #[error("face index {face} out of range (face count {face_count})")]
    FaceOutOfRange { face: usize, face_count: usize },
    #[error("cusp lists {0} faces; a cusp is shared by 3 or 4 faces")]
    BadCuspLength(usize),
    #[error("cusp repeats face {0}")]
    RepeatedCuspFace(usize),
    #[error("face count {0} is below the minimum of 4")]
    TooFewFaces(usize),
    #[error("cusp {cusp:?}: faces {a} and {b} are consecutive but share no edge")]
    MissingCuspEdge { cusp: Vec<usize>, a: usize, b: usize },
    #[error("cusp {cusp:?}: labels {labels:?} violate the cusp angle sum (sum of (pi - pi/m) must be 2pi)")]
    AngleSumViolation { cusp: Vec<usize>, labels: Vec<u8> },
    #[error("face {0}: boundary does not close into a single cycle")]
    NonSimpleBoundary(usize),
    #[error("unknown catalog entry `{0}` (expected one of P1, P2, P3, P4, P5, OCT)")]
    UnknownCatalogName(String),
}

impl ModelError {
    pub(crate) fn at_line(self, line: usize) -> Self {
        ModelError::AtLine {
            line,
            source: Box::new(self),
        }
    }
}

/// Dihedral angle `pi/m` of an edge; `m` is one of 2, 3, 4, 6.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AngleLabel(u8);

impl AngleLabel {
    pub const RIGHT: AngleLabel = AngleLabel(2);
    pub const ALL: [AngleLabel; 4] = [AngleLabel(2), AngleLabel(3), AngleLabel(4), AngleLabel(6)];

    pub fn new(m: u32) -> Result<Self, ModelError> {
        match m {
            2 | 3 | 4 | 6 => Ok(AngleLabel(m as u8)),
            _ => Err(ModelError::InvalidLabel(m)),
        }
    }

    pub fn m(self) -> u8 {
        self.0
    }
}

impl fmt::Display for AngleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub face_a: usize,
    pub face_b: usize,
    pub label: AngleLabel,
}

/// Combinatorial model of an ideal Coxeter polyhedron: faces, labelled edges
/// between face pairs, and each cusp as the cyclic list of faces around it.
///
/// Construction enforces only local well-formedness (label set, index range,
/// no duplicate face pairs, cusp length). Global consistency is the job of
/// [`validate`](super::validate).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyhedronCombinatorics {
    name: String,
    face_count: usize,
    edges: BTreeMap<(usize, usize), AngleLabel>,
    cusps: Vec<Vec<usize>>,
}

impl PolyhedronCombinatorics {
    pub fn new(
        name: impl Into<String>,
        face_count: usize,
        edges: impl IntoIterator<Item = (usize, usize, u32)>,
        cusps: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<Self, ModelError> {
        let mut b = Builder::new(name, face_count)?;
        for (a, c, m) in edges {
            b.add_edge(a, c, m)?;
        }
        for cusp in cusps {
            b.add_cusp(cusp)?;
        }
        Ok(b.build())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn face_count(&self) -> usize {
        self.face_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().map(|(&(a, b), &label)| Edge {
            face_a: a,
            face_b: b,
            label,
        })
    }

    pub fn cusps(&self) -> &[Vec<usize>] {
        &self.cusps
    }

    /// Label of the edge shared by two faces, in either order.
    pub fn label(&self, a: usize, b: usize) -> Option<AngleLabel> {
        self.edges.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn are_adjacent(&self, a: usize, b: usize) -> bool {
        self.label(a, b).is_some()
    }

    /// Faces sharing an edge with `face`, ascending.
    pub fn neighbors(&self, face: usize) -> Vec<usize> {
        self.edges
            .keys()
            .filter_map(|&(a, b)| {
                if a == face {
                    Some(b)
                } else if b == face {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Indices of the cusps incident to `face`.
    pub fn cusps_of_face(&self, face: usize) -> Vec<usize> {
        self.cusps
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(&face))
            .map(|(i, _)| i)
            .collect()
    }

    /// Labels of the consecutive face pairs around a cusp cycle.
    pub fn cusp_labels(&self, cusp: &[usize]) -> Result<Vec<AngleLabel>, ModelError> {
        let k = cusp.len();
        (0..k)
            .map(|i| {
                let (a, b) = (cusp[i], cusp[(i + 1) % k]);
                self.label(a, b).ok_or_else(|| ModelError::MissingCuspEdge {
                    cusp: cusp.to_vec(),
                    a,
                    b,
                })
            })
            .collect()
    }

    pub fn is_right_angled(&self) -> bool {
        !self.edges.is_empty() && self.edges.values().all(|&l| l == AngleLabel::RIGHT)
    }

    /// Renders the model in the line-based ICP text format.
    pub fn to_icp(&self) -> String {
        let mut out = format!("name {}\nfaces {}\n", self.name, self.face_count);
        for e in self.edges() {
            out.push_str(&format!("edge {} {} {}\n", e.face_a, e.face_b, e.label));
        }
        for c in &self.cusps {
            let faces: Vec<String> = c.iter().map(ToString::to_string).collect();
            out.push_str(&format!("cusp {}\n", faces.join(" ")));
        }
        out
    }

    /// Relabels faces by `perm[old] = new`.
    pub fn permute_faces(&self, perm: &[usize]) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|(&(a, b), &l)| {
                let (x, y) = (perm[a], perm[b]);
                ((x.min(y), x.max(y)), l)
            })
            .collect();
        let cusps = self
            .cusps
            .iter()
            .map(|c| c.iter().map(|&f| perm[f]).collect())
            .collect();
        PolyhedronCombinatorics {
            name: self.name.clone(),
            face_count: self.face_count,
            edges,
            cusps,
        }
    }
}

/// Incremental constructor enforcing the local structural rules.
#[derive(Debug)]
pub struct Builder {
    name: String,
    face_count: usize,
    edges: BTreeMap<(usize, usize), AngleLabel>,
    cusps: Vec<Vec<usize>>,
}

impl Builder {
    pub fn new(name: impl Into<String>, face_count: usize) -> Result<Self, ModelError> {
        if face_count < 4 {
            return Err(ModelError::TooFewFaces(face_count));
        }
        Ok(Builder {
            name: name.into(),
            face_count,
            edges: BTreeMap::new(),
            cusps: Vec::new(),
        })
    }

    fn check_face(&self, face: usize) -> Result<(), ModelError> {
        if face >= self.face_count {
            return Err(ModelError::FaceOutOfRange {
                face,
                face_count: self.face_count,
            });
        }
        Ok(())
    }

    pub fn add_edge(&mut self, a: usize, b: usize, m: u32) -> Result<(), ModelError> {
        let label = AngleLabel::new(m)?;
        self.check_face(a)?;
        self.check_face(b)?;
        if a == b {
            return Err(ModelError::SelfEdge(a));
        }
        let key = (a.min(b), a.max(b));
        if self.edges.insert(key, label).is_some() {
            return Err(ModelError::DuplicateEdge(key.0, key.1));
        }
        Ok(())
    }

    pub fn add_cusp(&mut self, faces: Vec<usize>) -> Result<(), ModelError> {
        if !(3..=4).contains(&faces.len()) {
            return Err(ModelError::BadCuspLength(faces.len()));
        }
        let mut seen = BTreeSet::new();
        for &f in &faces {
            self.check_face(f)?;
            if !seen.insert(f) {
                return Err(ModelError::RepeatedCuspFace(f));
            }
        }
        self.cusps.push(faces);
        Ok(())
    }

    pub fn build(self) -> PolyhedronCombinatorics {
        PolyhedronCombinatorics {
            name: self.name,
            face_count: self.face_count,
            edges: self.edges,
            cusps: self.cusps,
        }
    }
}

/// Canonical representative of a cyclic sequence up to rotation and reversal.
pub fn canonical_cycle(cycle: &[usize]) -> Vec<usize> {
    let k = cycle.len();
    let mut best: Option<Vec<usize>> = None;
    for dir in [false, true] {
        for start in 0..k {
            let cand: Vec<usize> = (0..k)
                .map(|i| {
                    let idx = if dir { (start + k - i) % k } else { (start + i) % k };
                    cycle[idx]
                })
                .collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}
