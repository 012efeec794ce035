//! Ideal triangulations stored as gluing tables.
//!
//! Triangle `t` has corners `v0, v1, v2` in counterclockwise order and side
//! `i` runs from `v_i` to `v_{i+1}`. A *dart* is the pair `(t, i)` encoded as
//! `3 * t + i`; it also names the oriented crossing that leaves `t` through
//! side `i`. Gluings always reverse the side orientation, so the surface is
//! oriented and the three darts of a triangle are in counterclockwise order
//! around the dual vertex.

use serde::{Deserialize, Serialize};

use super::SurfaceError;

/// Topological type `S_{g,m}` of a punctured surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSig {
    pub genus: u32,
    pub punctures: u32,
}

impl SurfaceSig {
    pub fn new(genus: u32, punctures: u32) -> Result<Self, SurfaceError> {
        if punctures == 0 {
            return Err(SurfaceError::Closed);
        }
        if 3 * genus as i64 - 3 + punctures as i64 <= 1 {
            return Err(SurfaceError::TooSimple { genus, punctures });
        }
        Ok(SurfaceSig { genus, punctures })
    }

    /// Number of curves in a pants decomposition, `3g - 3 + m`.
    pub fn complexity(&self) -> usize {
        (3 * self.genus + self.punctures - 3) as usize
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.punctures as i64
    }

    pub fn ideal_edges(&self) -> usize {
        (6 * self.genus + 3 * self.punctures - 6) as usize
    }

    pub fn ideal_triangles(&self) -> usize {
        (4 * self.genus + 2 * self.punctures - 4) as usize
    }

    /// Branch count of a complete train track, `18g - 18 + 6m`.
    pub fn complete_branches(&self) -> usize {
        (18 * self.genus + 6 * self.punctures - 18) as usize
    }

    /// Switch count of a complete train track, `12g - 12 + 4m`.
    pub fn complete_switches(&self) -> usize {
        (12 * self.genus + 4 * self.punctures - 12) as usize
    }
}

impl std::fmt::Display for SurfaceSig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "S_{{{},{}}}", self.genus, self.punctures)
    }
}

#[inline]
pub fn dart(t: usize, side: usize) -> usize {
    3 * t + side
}

#[inline]
pub fn dart_triangle(d: usize) -> usize {
    d / 3
}

#[inline]
pub fn dart_side(d: usize) -> usize {
    d % 3
}

/// An ideal triangulation of a punctured surface.
#[derive(Clone, Debug)]
pub struct Triangulation {
    name: String,
    sig: SurfaceSig,
    sides: Vec<[usize; 3]>,
    glue: Vec<usize>,
    edge_darts: Vec<[usize; 2]>,
    corner_vertex: Vec<usize>,
    n_vertices: usize,
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.sides == other.sides
    }
}

impl Eq for Triangulation {}

impl Triangulation {
    /// Builds a chart from per-triangle edge labels. Every edge label must
    /// occur in exactly two triangle slots; the two slots are glued.
    pub fn from_sides(name: &str, sides: Vec<[usize; 3]>) -> Result<Self, SurfaceError> {
        let n_edges = sides.len() * 3 / 2;
        if sides.is_empty() || !sides.len().is_multiple_of(2) {
            return Err(SurfaceError::BadChart(format!(
                "{} triangles cannot close up",
                sides.len()
            )));
        }
        let (glue, edge_darts) = pair_slots(&sides)?;
        let (corner_vertex, n_vertices) = label_corners(&glue);
        let chi = n_vertices as i64 - n_edges as i64 + sides.len() as i64;
        if (2 - chi) % 2 != 0 || chi > 2 {
            return Err(SurfaceError::BadChart(format!("odd Euler characteristic {chi}")));
        }
        let genus = ((2 - chi) / 2) as u32;
        let sig = SurfaceSig::new(genus, n_vertices as u32)?;
        debug_assert_eq!(sig.ideal_edges(), n_edges);
        debug_assert_eq!(sig.ideal_triangles(), sides.len());
        Ok(Triangulation {
            name: name.to_string(),
            sig,
            sides,
            glue,
            edge_darts,
            corner_vertex,
            n_vertices,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn sig(&self) -> SurfaceSig {
        self.sig
    }

    pub fn n_edges(&self) -> usize {
        self.edge_darts.len()
    }

    pub fn n_triangles(&self) -> usize {
        self.sides.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn sides(&self) -> &[[usize; 3]] {
        &self.sides
    }

    /// Edge crossed by a dart.
    #[inline]
    pub fn edge(&self, d: usize) -> usize {
        self.sides[dart_triangle(d)][dart_side(d)]
    }

    /// The dart on the other side of the same edge.
    #[inline]
    pub fn glue(&self, d: usize) -> usize {
        self.glue[d]
    }

    /// The two darts of an edge; the first is the reference side.
    #[inline]
    pub fn edge_darts(&self, e: usize) -> [usize; 2] {
        self.edge_darts[e]
    }

    #[inline]
    pub fn is_reference_dart(&self, d: usize) -> bool {
        self.edge_darts[self.edge(d)][0] == d
    }

    /// Puncture at corner `v_i` of triangle `t`.
    #[inline]
    pub fn corner_vertex(&self, t: usize, i: usize) -> usize {
        self.corner_vertex[dart(t, i)]
    }

    /// Normal coordinates of the curve linking puncture `p`.
    pub fn vertex_link(&self, p: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.n_edges()];
        for t in 0..self.n_triangles() {
            for i in 0..3 {
                if self.corner_vertex(t, i) == p {
                    // corner v_i touches sides i-1 and i; each corner arc
                    // meets both, and each edge is shared by two triangles.
                    v[self.sides[t][(i + 2) % 3]] += 1;
                    v[self.sides[t][i]] += 1;
                }
            }
        }
        for x in &mut v {
            *x /= 2;
        }
        v
    }

    pub fn to_json(&self) -> ChartJson {
        ChartJson {
            name: self.name.clone(),
            edges: (0..self.n_edges()).collect(),
            triangles: self.sides.clone(),
        }
    }

    pub fn from_json(j: &ChartJson) -> Result<Self, SurfaceError> {
        let n = j.edges.len();
        let mut relabel = std::collections::HashMap::new();
        for (k, &id) in j.edges.iter().enumerate() {
            if relabel.insert(id, k).is_some() {
                return Err(SurfaceError::BadChart(format!("duplicate edge id {id}")));
            }
        }
        let mut sides = Vec::with_capacity(j.triangles.len());
        for tri in &j.triangles {
            let mut s = [0; 3];
            for (i, e) in tri.iter().enumerate() {
                s[i] = *relabel
                    .get(e)
                    .ok_or_else(|| SurfaceError::BadChart(format!("unknown edge id {e}")))?;
            }
            sides.push(s);
        }
        if sides.len() * 3 != 2 * n {
            return Err(SurfaceError::BadChart(format!(
                "{} edges but {} triangles",
                n,
                sides.len()
            )));
        }
        Self::from_sides(&j.name, sides)
    }
}

fn pair_slots(sides: &[[usize; 3]]) -> Result<(Vec<usize>, Vec<[usize; 2]>), SurfaceError> {
    let n_edges = sides.len() * 3 / 2;
    let mut slots: Vec<Vec<usize>> = vec![Vec::new(); n_edges];
    for (t, tri) in sides.iter().enumerate() {
        for (i, &e) in tri.iter().enumerate() {
            if e >= n_edges {
                return Err(SurfaceError::BadChart(format!(
                    "edge label {e} out of range 0..{n_edges}"
                )));
            }
            slots[e].push(dart(t, i));
        }
    }
    let mut glue = vec![usize::MAX; 3 * sides.len()];
    let mut edge_darts = Vec::with_capacity(n_edges);
    for (e, s) in slots.iter().enumerate() {
        if s.len() != 2 {
            return Err(SurfaceError::BadChart(format!(
                "edge {e} appears in {} slots, expected 2",
                s.len()
            )));
        }
        glue[s[0]] = s[1];
        glue[s[1]] = s[0];
        edge_darts.push([s[0], s[1]]);
    }
    Ok((glue, edge_darts))
}

// Corner v_i of t sits between side i-1 and side i. Side i of t glued to
// side j of u identifies v_i ~ u.v_{j+1} and v_{i+1} ~ u.v_j.
fn label_corners(glue: &[usize]) -> (Vec<usize>, usize) {
    let n_corners = glue.len();
    let mut uf = UnionFind::new(n_corners);
    for (d, &g) in glue.iter().enumerate() {
        let (t, i) = (dart_triangle(d), dart_side(d));
        let (u, j) = (dart_triangle(g), dart_side(g));
        uf.union(dart(t, i), dart(u, (j + 1) % 3));
        uf.union(dart(t, (i + 1) % 3), dart(u, j));
    }
    let mut label = vec![usize::MAX; n_corners];
    let mut corner_vertex = vec![0; n_corners];
    let mut n_vertices = 0;
    for c in 0..n_corners {
        let r = uf.find(c);
        if label[r] == usize::MAX {
            label[r] = n_vertices;
            n_vertices += 1;
        }
        corner_vertex[c] = label[r];
    }
    (corner_vertex, n_vertices)
}

/// Vertex label of every corner of a closed triangulated surface given by
/// edge labels, and the number of vertices.
pub fn corner_labels(sides: &[[usize; 3]]) -> Result<(Vec<[usize; 3]>, usize), SurfaceError> {
    if sides.is_empty() || !sides.len().is_multiple_of(2) {
        return Err(SurfaceError::BadChart(format!("{} triangles cannot close up", sides.len())));
    }
    let (glue, _) = pair_slots(sides)?;
    let (cv, n) = label_corners(&glue);
    Ok((cv.chunks(3).map(|c| [c[0], c[1], c[2]]).collect(), n))
}

/// Serialized chart: `{name, edges:[id...], triangles:[[e,e,e]...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartJson {
    #[serde(default)]
    pub name: String,
    pub edges: Vec<usize>,
    pub triangles: Vec<[usize; 3]>,
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
        true
    }
}
