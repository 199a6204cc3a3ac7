//! Cell complexes of colored diagrams and octahedral triangulations of
//! tangle complements, tracked purely combinatorially.
//!
//! A tetrahedron has vertices `0..4`, vertex `k` opposite face `k`. The
//! over strand of its crossing enters through face 0 and leaves through
//! face 1; the under strand enters through face 2 and leaves through face 3.
//! Its chirality is the writhe of the crossing.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::diagram::moves::{Move, Site};
use crate::diagram::{zeta, Diagram, Token, TokenRef, ZetaResult};

/// Marked vertex of each face, indexed by `[positive][face][thick]`, as a
/// position `0..3` among the face's vertices in increasing order.
pub type StarTable = [[[u8; 2]; 4]; 2];

/// The marking used throughout; see [`star_tables`] for how it is found.
pub const STAR_TABLE: StarTable = [[[2, 0], [2, 0], [0, 0], [0, 0]], [[1, 0], [1, 0], [1, 1], [1, 1]]];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tetrahedron {
    pub crossing: TokenRef,
    /// Writhe of the crossing is +1.
    pub positive: bool,
    pub over_thick: bool,
    pub under_thick: bool,
}

impl Tetrahedron {
    fn face_thick(&self, face: usize) -> bool {
        if face < 2 {
            self.over_thick
        } else {
            self.under_thick
        }
    }

    /// Vertices of `face`, cyclically ordered by the induced orientation.
    fn face_cycle(&self, face: usize) -> [usize; 3] {
        let v: Vec<usize> = (0..4).filter(|&k| k != face).collect();
        if face.is_multiple_of(2) == self.positive {
            [v[0], v[1], v[2]]
        } else {
            [v[0], v[2], v[1]]
        }
    }

    fn marked(&self, face: usize, table: &StarTable) -> usize {
        let v: Vec<usize> = (0..4).filter(|&k| k != face).collect();
        v[table[self.positive as usize][face][self.face_thick(face) as usize] as usize]
    }

    /// The face's vertices starting at the marked one, in cyclic order.
    fn cycle_from_mark(&self, face: usize, table: &StarTable) -> [usize; 3] {
        let c = self.face_cycle(face);
        let m = self.marked(face, table);
        let i = c.iter().position(|&x| x == m).unwrap();
        [c[i], c[(i + 1) % 3], c[(i + 2) % 3]]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FaceRef {
    pub tet: usize,
    pub face: usize,
}

/// Two faces glued; `map[i]` is the vertex of `b` receiving vertex
/// `i` of `a` (only the three vertices of the face are meaningful).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gluing {
    pub a: FaceRef,
    pub b: FaceRef,
    pub map: [usize; 4],
    /// Tokens the strand passes between the two crossings.
    #[serde(skip)]
    pub via: Vec<TokenRef>,
    /// Row boundaries `(boundary, leg)` the strand passes on the way.
    #[serde(skip)]
    pub slots: Vec<(usize, usize)>,
}

/// A vertex or an edge of one tetrahedron.
pub type VertexRef = (usize, usize);
pub type EdgeRef = (usize, usize, usize);

/// A boundary face with the tokens and row-boundary slots its strand passes.
pub type EndPath = (FaceRef, Vec<TokenRef>, Vec<(usize, usize)>);

#[derive(Clone, Debug, Default, Serialize)]
pub struct CellComplex {
    pub tetrahedra: Vec<Tetrahedron>,
    pub gluings: Vec<Gluing>,
    /// Faces left unglued, the ends of open strands.
    pub boundary: Vec<FaceRef>,
    /// For each boundary face, the component of the diagram ending there
    /// and whether it is the component's start.
    pub ends: Vec<(FaceRef, usize, bool)>,
    /// Tokens and row-boundary slots between each boundary face and the
    /// end of its strand.
    #[serde(skip)]
    pub end_paths: Vec<EndPath>,
    /// The boundary of O(D), one leaf per end of D.
    pub leaves: Vec<Leaf>,
    /// Extra identifications on top of the face gluings.
    pub vertex_ids: Vec<(VertexRef, VertexRef)>,
    pub edge_ids: Vec<(EdgeRef, EdgeRef)>,
    /// Representatives of the vertices at +∞ and −∞, when placed.
    pub plus_inf: Option<VertexRef>,
    pub minus_inf: Option<VertexRef>,
    /// Tetrahedra of each octahedron, in the order t₁..t₄.
    pub octahedra: Vec<[usize; 4]>,
    /// The vertices `n` and `s` of each octahedron.
    pub poles: Vec<(VertexRef, VertexRef)>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind((0..n).collect())
    }

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

    /// Classes as sorted member lists, ordered by smallest member.
    fn classes(&mut self) -> Vec<Vec<usize>> {
        let mut m: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..self.0.len() {
            let r = self.find(x);
            m.entry(r).or_default().push(x);
        }
        m.into_values().collect()
    }
}

fn edge_index(i: usize, j: usize) -> usize {
    let (a, b) = (i.min(j), i.max(j));
    [[0, 0, 1, 2], [0, 0, 3, 4], [1, 3, 0, 5], [2, 4, 5, 0]][a][b]
}

const EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

impl CellComplex {
    fn vertex_uf(&self) -> UnionFind {
        let mut uf = UnionFind::new(4 * self.tetrahedra.len());
        for g in &self.gluings {
            for v in (0..4).filter(|&v| v != g.a.face) {
                uf.union(4 * g.a.tet + v, 4 * g.b.tet + g.map[v]);
            }
        }
        for &((t, v), (u, w)) in &self.vertex_ids {
            uf.union(4 * t + v, 4 * u + w);
        }
        uf
    }

    fn edge_uf(&self) -> UnionFind {
        let mut uf = UnionFind::new(6 * self.tetrahedra.len());
        for g in &self.gluings {
            for &(i, j) in EDGES.iter().filter(|&&(i, j)| i != g.a.face && j != g.a.face) {
                uf.union(6 * g.a.tet + edge_index(i, j), 6 * g.b.tet + edge_index(g.map[i], g.map[j]));
            }
        }
        for &((t, i, j), (u, k, l)) in &self.edge_ids {
            uf.union(6 * t + edge_index(i, j), 6 * u + edge_index(k, l));
        }
        uf
    }

    /// Vertex classes as lists of `(tetrahedron, vertex)`.
    pub fn vertex_classes(&self) -> Vec<Vec<VertexRef>> {
        self.vertex_uf().classes().into_iter().map(|c| c.into_iter().map(|x| (x / 4, x % 4)).collect()).collect()
    }

    /// Edge classes as lists of `(tetrahedron, i, j)`.
    pub fn edge_classes(&self) -> Vec<Vec<EdgeRef>> {
        self.edge_uf()
            .classes()
            .into_iter()
            .map(|c| {
                c.into_iter()
                    .map(|x| {
                        let (i, j) = EDGES[x % 6];
                        (x / 6, i, j)
                    })
                    .collect()
            })
            .collect()
    }

    /// Number of times each face occurs in a gluing or on the boundary.
    fn face_uses(&self) -> HashMap<FaceRef, usize> {
        let mut uses = HashMap::new();
        for f in self.gluings.iter().flat_map(|g| [g.a, g.b]).chain(self.boundary.iter().copied()) {
            *uses.entry(f).or_insert(0) += 1;
        }
        uses
    }

    /// Every face is glued exactly once or lies on the boundary once.
    pub fn perfect_matching(&self) -> bool {
        let uses = self.face_uses();
        uses.len() == 4 * self.tetrahedra.len() && uses.values().all(|&n| n == 1)
    }

    pub fn stats(&self) -> ComplexStats {
        let t = self.tetrahedra.len() as i64;
        let v = self.vertex_classes().len() as i64;
        let e = self.edge_classes().len() as i64;
        let f = (self.gluings.len() + self.boundary.len()) as i64;
        ComplexStats {
            tetrahedra: t as usize,
            face_pairs: self.gluings.len(),
            boundary_faces: self.boundary.len(),
            edge_classes: e as usize,
            vertex_classes: v as usize,
            euler: v - e + f - t,
            octahedra: self.octahedra.len(),
        }
    }
}

/// A leaf: the two boundary triangles at one end of a strand of D, each
/// with vertex labels −∞, +∞ and the puncture of the strand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Leaf {
    pub component: usize,
    pub start: bool,
    pub faces: [FaceRef; 2],
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ComplexStats {
    pub tetrahedra: usize,
    pub face_pairs: usize,
    pub boundary_faces: usize,
    pub edge_classes: usize,
    pub vertex_classes: usize,
    /// `V − E + F − T` over the identification classes.
    pub euler: i64,
    pub octahedra: usize,
}

/// C(Z) with the marking [`STAR_TABLE`].
pub fn build_c(z: &Diagram) -> CellComplex {
    build_c_with(z, &STAR_TABLE)
}

/// C(Z): a tetrahedron per crossing, in scan order, with the outflow face of
/// each crossing glued to the inflow face of the next crossing along the
/// same strand, marked vertices matched.
pub fn build_c_with(z: &Diagram, table: &StarTable) -> CellComplex {
    let crossings = z.crossings();
    let index: HashMap<TokenRef, usize> = crossings.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let tetrahedra: Vec<Tetrahedron> = crossings
        .iter()
        .map(|&c| {
            let t = z.token(c);
            let Token::Cross { positive, legs } = *t else { unreachable!() };
            let over = if positive { 0 } else { 1 };
            Tetrahedron { crossing: c, positive: t.writhe() == Some(1), over_thick: legs[over].thick, under_thick: legs[1 - over].thick }
        })
        .collect();
    let mut cx = CellComplex { tetrahedra, ..Default::default() };
    for (ci, comp) in z.components().into_iter().enumerate() {
        // (tetrahedron, inflow face, outflow face) along the strand, and the
        // tokens passed before each
        type Path = (Vec<TokenRef>, Vec<(usize, usize)>);
        let mut hits: Vec<(usize, usize, usize, Path)> = Vec::new();
        let mut passed: Path = (Vec::new(), Vec::new());
        let mut exits = Vec::new();
        if comp.open {
            if let Some(&v) = comp.visits.first() {
                exits.push(slot(z, v, z.token((v.row, v.token)).pieces()[v.piece].from));
            }
        }
        for v in &comp.visits {
            let at = (v.row, v.token);
            match index.get(&at) {
                Some(&tet) => {
                    let over = z.token(at).over_piece() == Some(v.piece);
                    let (fin, fout) = if over { (0, 1) } else { (2, 3) };
                    passed.1.append(&mut exits);
                    hits.push((tet, fin, fout, std::mem::take(&mut passed)));
                }
                None => {
                    passed.0.push(at);
                    passed.1.append(&mut exits);
                }
            }
            exits.push(slot(z, *v, z.token((v.row, v.token)).pieces()[v.piece].to));
        }
        passed.1.append(&mut exits);
        if hits.is_empty() {
            continue;
        }
        let n = hits.len();
        for i in 0..n {
            let next = i + 1;
            if next == n && comp.open {
                break;
            }
            let (t, _, fout, _) = hits[i];
            let (u, fin, _, ref before) = hits[next % n];
            let mut path = before.clone();
            if next == n {
                path.0 = passed.0.iter().chain(&before.0).copied().collect();
                path.1 = passed.1.iter().chain(&before.1).copied().collect();
            }
            let mut g = glue(&cx.tetrahedra, FaceRef { tet: t, face: fout }, FaceRef { tet: u, face: fin }, table, path.0);
            g.slots = path.1;
            cx.gluings.push(g);
        }
        if comp.open {
            let first = FaceRef { tet: hits[0].0, face: hits[0].1 };
            let last = FaceRef { tet: hits[n - 1].0, face: hits[n - 1].2 };
            cx.ends.push((first, ci, true));
            cx.ends.push((last, ci, false));
            cx.end_paths.push((first, hits[0].3 .0.clone(), hits[0].3 .1.clone()));
            cx.end_paths.push((last, passed.0.clone(), passed.1.clone()));
        }
    }
    cx.ends.sort();
    cx.boundary = cx.ends.iter().map(|e| e.0).collect();
    cx
}

/// The row boundary and leg at one end of a visited piece.
fn slot(z: &Diagram, v: crate::diagram::Visit, end: crate::diagram::End) -> (usize, usize) {
    use crate::diagram::End;
    let row = &z.rows()[v.row];
    match end {
        End::Top(j) => (v.row + 1, row[..v.token].iter().map(|t| t.top().len()).sum::<usize>() + j),
        End::Bottom(j) => (v.row, row[..v.token].iter().map(|t| t.bottom().len()).sum::<usize>() + j),
    }
}

/// The orientation-reversing gluing taking the marked vertex of `a` to that of `b`.
fn glue(tets: &[Tetrahedron], a: FaceRef, b: FaceRef, table: &StarTable, via: Vec<TokenRef>) -> Gluing {
    let ca = tets[a.tet].cycle_from_mark(a.face, table);
    let cb = tets[b.tet].cycle_from_mark(b.face, table);
    let mut map = [usize::MAX; 4];
    map[ca[0]] = cb[0];
    map[ca[1]] = cb[2];
    map[ca[2]] = cb[1];
    Gluing { a, b, map, via, slots: Vec::new() }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("the diagram has no crossings")]
    NoCrossings,
    #[error("the diagram is split: {0}")]
    Splitting(String),
    #[error("tetrahedra of crossing {0:?} do not assemble into an octahedron: {1}")]
    Octahedron(TokenRef, String),
}

/// The two conditions for O(D): the crossings connect all components into
/// one graph, and no component only passes over or only passes under.
pub fn check_non_splitting(d: &Diagram) -> Result<(), ComplexError> {
    let comps = d.components();
    let cmap = d.component_map();
    let mut uf = UnionFind::new(comps.len());
    let mut roles = vec![(false, false); comps.len()];
    for c in d.crossings() {
        let t = d.token(c);
        let over = t.over_piece().unwrap();
        let (a, b) = (cmap[&(c.0, c.1, 0)], cmap[&(c.0, c.1, 1)]);
        uf.union(a, b);
        for (piece, comp) in [(0, a), (1, b)] {
            if piece == over {
                roles[comp].0 = true;
            } else {
                roles[comp].1 = true;
            }
        }
    }
    if uf.classes().len() > 1 {
        return Err(ComplexError::Splitting("the crossing graph is disconnected".into()));
    }
    if let Some(i) = roles.iter().position(|&(o, u)| !(o && u)) {
        return Err(ComplexError::Splitting(format!("component {i} passes only over or only under")));
    }
    Ok(())
}

/// The vertex names of one assembled octahedron: `n`, `s` and `e[j]` for
/// e_{j,j+1}, each given by a representative.
#[derive(Clone, Copy, Debug)]
pub struct OctahedronNames {
    pub tets: [usize; 4],
    pub n: [usize; 4],
    pub s: [usize; 4],
    /// `e[j]` as vertices of `tets[j]` and `tets[(j + 1) % 4]`.
    pub e: [(usize, usize); 4],
}

/// Position in the crossing cluster of ζ (0 bottom, 1 left, 2 right, 3 top)
/// of t₁..t₄: t₁ is the right one with both strands turned to point
/// downwards, and the others follow counterclockwise.
fn cluster_order(up_a: bool, up_b: bool) -> [usize; 4] {
    // counterclockwise round the diamond: right, top, left, bottom
    let ccw = [2, 3, 1, 0];
    let start = match (up_a, up_b) {
        (false, false) => 0,
        (true, false) => 1,
        (true, true) => 2,
        (false, true) => 3,
    };
    [0, 1, 2, 3].map(|j| ccw[(start + j) % 4])
}

/// Checks that the four tetrahedra of the cluster of D-crossing `c` are
/// glued around a common edge from a vertex on their over edges (`n`) to
/// one on their under edges (`s`), and names the vertices.
pub fn assemble_octahedron(cx: &CellComplex, zr: &ZetaResult, d: &Diagram, c: TokenRef) -> Result<OctahedronNames, ComplexError> {
    let fail = |why: &str| ComplexError::Octahedron(c, why.to_string());
    let mut by_sub = [usize::MAX; 4];
    for (i, t) in cx.tetrahedra.iter().enumerate() {
        let o = zr.origin[&t.crossing];
        if o.source == c {
            by_sub[o.sub.unwrap()] = i;
        }
    }
    let Token::Cross { legs, .. } = *d.token(c) else { return Err(fail("not a crossing")) };
    let tets = cluster_order(legs[0].up, legs[1].up).map(|s| by_sub[s]);
    let local: Vec<&Gluing> = cx.gluings.iter().filter(|g| tets.contains(&g.a.tet) && tets.contains(&g.b.tet)).collect();
    if local.len() != 4 {
        return Err(fail("expected four internal gluings"));
    }
    let glued = |x: usize, y: usize| local.iter().find(|g| (g.a.tet, g.b.tet) == (x, y) || (g.a.tet, g.b.tet) == (y, x)).copied();
    let mut uf = UnionFind::new(16);
    let slot = |t: usize| tets.iter().position(|&x| x == t).unwrap();
    for g in &local {
        for v in (0..4).filter(|&v| v != g.a.face) {
            uf.union(4 * slot(g.a.tet) + v, 4 * slot(g.b.tet) + g.map[v]);
        }
    }
    let classes = uf.classes();
    if classes.len() != 6 {
        return Err(fail(&format!("{} vertex classes instead of 6", classes.len())));
    }
    let spans_all = |cl: &Vec<usize>| cl.len() == 4 && (0..4).all(|j| cl.iter().any(|x| x / 4 == j));
    let n_class = classes.iter().find(|cl| spans_all(cl) && cl.iter().all(|x| x % 4 >= 2));
    let s_class = classes.iter().find(|cl| spans_all(cl) && cl.iter().all(|x| x % 4 < 2));
    let (Some(nc), Some(sc)) = (n_class, s_class) else {
        return Err(fail("no common over and under vertices"));
    };
    let pick = |cl: &Vec<usize>, j: usize| cl.iter().find(|x| *x / 4 == j).unwrap() % 4;
    let n = [0, 1, 2, 3].map(|j| pick(nc, j));
    let s = [0, 1, 2, 3].map(|j| pick(sc, j));
    let mut e = [(0, 0); 4];
    for j in 0..4 {
        let k = (j + 1) % 4;
        let g = glued(tets[j], tets[k]).ok_or_else(|| fail("cluster gluings are not cyclic"))?;
        let (x, y) = if g.a.tet == tets[j] {
            let v = (0..4).find(|&v| v != g.a.face && v != n[j] && v != s[j]).unwrap();
            (v, g.map[v])
        } else {
            let v = (0..4).find(|&v| v != g.a.face && v != n[k] && v != s[k]).unwrap();
            (g.map[v], v)
        };
        e[j] = (x, y);
    }
    Ok(OctahedronNames { tets, n, s, e })
}

/// O(D): C(ζ(D)) with, for each crossing, the equatorial vertices sent to
/// ±∞ and the corresponding pairs of edges identified. For a positive
/// crossing e₂₃, e₄₁ go to +∞ and e₁₂, e₃₄ to −∞; for a negative one the
/// other way round.
pub fn build_o(d: &Diagram) -> Result<CellComplex, ComplexError> {
    build_o_with(d, &STAR_TABLE)
}

pub fn build_o_with(d: &Diagram, table: &StarTable) -> Result<CellComplex, ComplexError> {
    if d.crossing_count() == 0 {
        return Err(ComplexError::NoCrossings);
    }
    check_non_splitting(d)?;
    octahedral_unchecked(d, table)
}

/// The octahedral construction without the non-splitting check.
pub fn octahedral_unchecked(d: &Diagram, table: &StarTable) -> Result<CellComplex, ComplexError> {
    let zr = zeta(d);
    let mut cx = build_c_with(&zr.diagram, table);
    let mut plus: Vec<VertexRef> = Vec::new();
    let mut minus: Vec<VertexRef> = Vec::new();
    for c in d.crossings() {
        let o = assemble_octahedron(&cx, &zr, d, c)?;
        cx.octahedra.push(o.tets);
        cx.poles.push(((o.tets[0], o.n[0]), (o.tets[0], o.s[0])));
        // e[j] as a vertex of tets[j]
        let ev = |j: usize| (o.tets[j], o.e[j].0);
        let positive = d.token(c).writhe() == Some(1);
        let (up, down) = if positive { ([1, 3], [0, 2]) } else { ([0, 2], [1, 3]) };
        plus.extend(up.map(ev));
        minus.extend(down.map(ev));
        let edge = |apex: &[usize; 4], j: usize| (o.tets[j], apex[j].min(o.e[j].0), apex[j].max(o.e[j].0));
        cx.edge_ids.push((edge(&o.n, up[0]), edge(&o.n, up[1])));
        cx.edge_ids.push((edge(&o.s, down[0]), edge(&o.s, down[1])));
    }
    for w in plus.windows(2) {
        cx.vertex_ids.push((w[0], w[1]));
    }
    for w in minus.windows(2) {
        cx.vertex_ids.push((w[0], w[1]));
    }
    let mut leaves: BTreeMap<(usize, bool), Vec<FaceRef>> = BTreeMap::new();
    for &(f, comp, start) in &cx.ends {
        leaves.entry((zr.pair_of[comp].0, start)).or_default().push(f);
    }
    cx.leaves = leaves.into_iter().map(|((component, start), f)| Leaf { component, start, faces: [f[0], f[1]] }).collect();
    cx.plus_inf = plus.first().copied();
    cx.minus_inf = minus.first().copied();
    Ok(cx)
}

/// Checks on O(D): one octahedron per crossing, a perfect face matching,
/// ±∞ distinct, and every boundary face a leaf triangle with one vertex at
/// each of ±∞.
pub fn check_octahedral(d: &Diagram, cx: &CellComplex) -> Result<(), String> {
    let c = d.crossing_count();
    if cx.tetrahedra.len() != 4 * c || cx.octahedra.len() != c {
        return Err(format!("{} tetrahedra and {} octahedra for {c} crossings", cx.tetrahedra.len(), cx.octahedra.len()));
    }
    if !cx.perfect_matching() {
        return Err("face gluing is not a perfect matching".into());
    }
    let ends = d.bottom().len() + d.top().len();
    if cx.boundary.len() != 2 * ends {
        return Err(format!("{} boundary faces for {ends} ends", cx.boundary.len()));
    }
    let mut uf = cx.vertex_uf();
    let (Some(p), Some(m)) = (cx.plus_inf, cx.minus_inf) else { return Err("±∞ not placed".into()) };
    let (p, m) = (uf.find(4 * p.0 + p.1), uf.find(4 * m.0 + m.1));
    if p == m {
        return Err("+∞ and −∞ are identified".into());
    }
    for &(n, s) in &cx.poles {
        let (n, s) = (uf.find(4 * n.0 + n.1), uf.find(4 * s.0 + s.1));
        if [p, m].contains(&n) || [p, m].contains(&s) {
            return Err("a pole of an octahedron lies at infinity".into());
        }
    }
    if cx.leaves.len() != ends {
        return Err(format!("{} leaves for {ends} ends", cx.leaves.len()));
    }
    for leaf in &cx.leaves {
        let mut punctures = Vec::new();
        for f in leaf.faces {
            let vs: Vec<usize> = (0..4).filter(|&v| v != f.face).map(|v| uf.find(4 * f.tet + v)).collect();
            if vs.iter().filter(|&&x| x == p).count() != 1 || vs.iter().filter(|&&x| x == m).count() != 1 {
                return Err(format!("boundary face {f:?} is not labelled −∞, +∞, p"));
            }
            punctures.push(vs.into_iter().find(|&x| x != p && x != m).unwrap());
        }
        if punctures[0] != punctures[1] {
            return Err(format!("the two triangles of leaf {leaf:?} have different punctures"));
        }
    }
    Ok(())
}

/// Token positions covered by a window of `rows` placed at `site`.
fn window(rows: &[Vec<Token>], site: Site) -> HashSet<TokenRef> {
    rows.iter().enumerate().flat_map(|(k, r)| (0..r.len()).map(move |i| (site.row + k, site.pos + i))).collect()
}

/// A face named by its crossing, independently of tetrahedron numbering.
type NamedFace = (TokenRef, usize);

/// Gluings, boundary faces and faces facing the window, away from the site.
type Exterior = (BTreeSet<(NamedFace, NamedFace, [usize; 4])>, BTreeSet<NamedFace>, BTreeSet<NamedFace>);

/// The part of C(Z) that a move at `site` replacing `height` rows leaves
/// alone: gluings among exterior tetrahedra whose strands avoid the window,
/// exterior faces facing the window, and exterior boundary faces. Crossings
/// above the window are renumbered as if the window had height `frame`.
fn exterior(cx: &CellComplex, win: &HashSet<TokenRef>, site: Site, width: usize, height: usize, frame: usize) -> Exterior {
    let name = |f: FaceRef| {
        let (r, i) = cx.tetrahedra[f.tet].crossing;
        let r = if r >= site.row + height { r + frame - height } else { r };
        ((r, i), f.face)
    };
    let inside = |f: FaceRef| win.contains(&cx.tetrahedra[f.tet].crossing);
    let crosses = |via: &[TokenRef], slots: &[(usize, usize)]| {
        via.iter().any(|t| win.contains(t)) || slots.iter().any(|&(b, k)| b == site.row && (site.pos..site.pos + width).contains(&k))
    };
    let (mut glued, mut facing) = (BTreeSet::new(), BTreeSet::new());
    for (f, via, slots) in &cx.end_paths {
        if !inside(*f) && crosses(via, slots) {
            facing.insert(name(*f));
        }
    }
    for g in &cx.gluings {
        let through = crosses(&g.via, &g.slots);
        match (inside(g.a), inside(g.b)) {
            (false, false) if !through => {
                glued.insert((name(g.a), name(g.b), g.map));
            }
            (a, b) => {
                for (f, inn) in [(g.a, a), (g.b, b)] {
                    if !inn {
                        facing.insert(name(f));
                    }
                }
            }
        }
    }
    let boundary = cx.boundary.iter().filter(|f| !inside(**f) && !facing.contains(&name(**f))).map(|f| name(*f)).collect();
    (glued, facing, boundary)
}

/// Compares C(Z) and C(Z′) for a move taking `z` to `z2` at `site`: the
/// window must hold the stated numbers of tetrahedra on each side and the
/// complexes must agree outside it.
pub fn exteriors_agree(z: &Diagram, z2: &Diagram, mv: &Move, site: Site) -> Result<(usize, usize), String> {
    let (c1, c2) = (build_c(z), build_c(z2));
    let (w1, w2) = (window(&mv.lhs, site), window(&mv.rhs, site));
    let count = |cx: &CellComplex, w: &HashSet<TokenRef>| cx.tetrahedra.iter().filter(|t| w.contains(&t.crossing)).count();
    let (n1, n2) = (count(&c1, &w1), count(&c2, &w2));
    if c1.tetrahedra.len() - n1 != c2.tetrahedra.len() - n2 {
        return Err("exterior tetrahedra differ in number".into());
    }
    let w = mv.bottom.len();
    let e1 = exterior(&c1, &w1, site, w, mv.lhs.len(), mv.rhs.len());
    let e2 = exterior(&c2, &w2, site, w, mv.rhs.len(), mv.rhs.len());
    if e1.0 != e2.0 {
        return Err("exterior gluings differ".into());
    }
    if e1.1 != e2.1 {
        return Err("faces facing the window differ".into());
    }
    if e1.2 != e2.2 {
        return Err("exterior boundary faces differ".into());
    }
    Ok((n1, n2))
}

/// The eight single crossings, every sign and orientation.
pub fn oriented_crossings() -> Vec<Diagram> {
    let mut out = Vec::new();
    for p in [true, false] {
        for a in [true, false] {
            for b in [true, false] {
                out.push(crate::diagram::library::crossing(p, a, b));
            }
        }
    }
    out
}

fn half_table(code: u32) -> [[u8; 2]; 4] {
    let mut t = [[0; 2]; 4];
    let mut x = code;
    for f in t.iter_mut().flat_map(|r| r.iter_mut()) {
        *f = (x % 3) as u8;
        x /= 3;
    }
    t
}

/// Every marking under which the clusters of all eight oriented crossings
/// assemble into octahedra and O(D) passes [`check_octahedral`] on `suite`.
/// The two chiralities are searched separately for assembly, then jointly.
pub fn star_tables(suite: &[Diagram]) -> Vec<StarTable> {
    let crossings = oriented_crossings();
    let halves = |positive: bool| -> Vec<[[u8; 2]; 4]> {
        let mine: Vec<&Diagram> = crossings.iter().filter(|d| (d.token((0, 0)).writhe() == Some(1)) == positive).collect();
        (0..3u32.pow(8)).map(half_table).filter(|h| mine.iter().all(|d| octahedral_unchecked(d, &[*h, *h]).is_ok())).collect()
    };
    let (neg, pos) = (halves(false), halves(true));
    let mut out = Vec::new();
    for n in &neg {
        for p in &pos {
            let t = [*n, *p];
            if suite.iter().all(|d| build_o_with(d, &t).map_err(|e| e.to_string()).and_then(|cx| check_octahedral(d, &cx)).is_ok()) {
                out.push(t);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests;
