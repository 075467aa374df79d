//! The adjacency quiver of a triangulation with its permutations `f`, `g`
//! and the involution `bar`.
//!
//! Arrows are the corners of the triangulation: corner `(t, k)` is arrow
//! `3t + k`, running from side `k` to side `k + 1` of triangle `t`. `f`
//! rotates inside the triangle and `g` steps counterclockwise around the
//! puncture, so f-orbits are triangles and g-orbits are punctures.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::Triangulation;

pub type Arrow = usize;
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertex_count: usize,
    src: Vec<Vertex>,
    tgt: Vec<Vertex>,
    f: Vec<Arrow>,
    g: Vec<Arrow>,
    f_inv: Vec<Arrow>,
    g_inv: Vec<Arrow>,
    out: Vec<Vec<Arrow>>,
    g_orbit: Vec<usize>,
    g_orbit_len: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitKind {
    F,
    G,
    H,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    pub kind: OrbitKind,
    pub classes: Vec<Vec<Arrow>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuiverConditions {
    pub star: bool,
    pub diamond: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DiamondStructure {
    pub shape_ok: bool,
    pub distinct_orbits: bool,
    pub isomorphic_to_reference: bool,
}

impl DiamondStructure {
    pub fn holds(&self) -> bool {
        self.shape_ok && self.distinct_orbits && self.isomorphic_to_reference
    }
}

#[derive(Serialize, Deserialize)]
struct ArrowDoc {
    id: Arrow,
    src: Vertex,
    tgt: Vertex,
    f: Arrow,
    g: Arrow,
}

#[derive(Serialize, Deserialize)]
struct QuiverDoc {
    vertices: Vec<Vertex>,
    arrows: Vec<ArrowDoc>,
}

fn inverse(perm: &[usize]) -> Option<Vec<usize>> {
    let mut inv = vec![usize::MAX; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        if p >= perm.len() || inv[p] != usize::MAX {
            return None;
        }
        inv[p] = i;
    }
    Some(inv)
}

fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut c = s;
        let mut cycle = Vec::new();
        while !seen[c] {
            seen[c] = true;
            cycle.push(c);
            c = perm[c];
        }
        out.push(cycle);
    }
    out
}

impl Quiver {
    /// Assembles a quiver from raw arrays. Only checks that `f` and `g` are
    /// permutations and that endpoints are in range; see
    /// [`Quiver::invariant_violations`] for the full structural check.
    pub fn from_parts(
        vertex_count: usize,
        src: Vec<Vertex>,
        tgt: Vec<Vertex>,
        f: Vec<Arrow>,
        g: Vec<Arrow>,
    ) -> Result<Self> {
        let m = src.len();
        if tgt.len() != m || f.len() != m || g.len() != m {
            return Err(Error::InvalidQuiver("arrow arrays differ in length".into()));
        }
        if src.iter().chain(&tgt).any(|&v| v >= vertex_count) {
            return Err(Error::InvalidQuiver("arrow endpoint out of range".into()));
        }
        let f_inv = inverse(&f).ok_or_else(|| Error::InvalidQuiver("f is not a bijection".into()))?;
        let g_inv = inverse(&g).ok_or_else(|| Error::InvalidQuiver("g is not a bijection".into()))?;
        let mut out = vec![Vec::new(); vertex_count];
        for (a, &s) in src.iter().enumerate() {
            out[s].push(a);
        }
        let mut g_orbit = vec![0; m];
        let mut g_orbit_len = Vec::new();
        for (i, c) in cycles(&g).iter().enumerate() {
            for &a in c {
                g_orbit[a] = i;
            }
            g_orbit_len.push(c.len());
        }
        Ok(Quiver {
            vertex_count,
            src,
            tgt,
            f,
            g,
            f_inv,
            g_inv,
            out,
            g_orbit,
            g_orbit_len,
        })
    }

    pub fn from_json(document: &str) -> Result<Self> {
        let doc: QuiverDoc =
            serde_json::from_str(document).map_err(|e| Error::Parse(e.to_string()))?;
        let m = doc.arrows.len();
        let (mut src, mut tgt, mut f, mut g) = (vec![0; m], vec![0; m], vec![0; m], vec![0; m]);
        let mut seen = vec![false; m];
        for a in &doc.arrows {
            if a.id >= m || seen[a.id] {
                return Err(Error::Parse(format!("arrow ids must be 0..{m} without repeats")));
            }
            seen[a.id] = true;
            src[a.id] = a.src;
            tgt[a.id] = a.tgt;
            f[a.id] = a.f;
            g[a.id] = a.g;
        }
        let vertex_count = doc.vertices.iter().max().map_or(0, |&v| v + 1);
        Quiver::from_parts(vertex_count, src, tgt, f, g)
    }

    pub fn to_json(&self) -> String {
        let doc = QuiverDoc {
            vertices: (0..self.vertex_count).collect(),
            arrows: (0..self.arrow_count())
                .map(|a| ArrowDoc {
                    id: a,
                    src: self.src[a],
                    tgt: self.tgt[a],
                    f: self.f[a],
                    g: self.g[a],
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("quiver serializes")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrow_count(&self) -> usize {
        self.src.len()
    }

    pub fn arrows(&self) -> std::ops::Range<Arrow> {
        0..self.arrow_count()
    }

    pub fn source(&self, a: Arrow) -> Vertex {
        self.src[a]
    }

    pub fn target(&self, a: Arrow) -> Vertex {
        self.tgt[a]
    }

    pub fn f(&self, a: Arrow) -> Arrow {
        self.f[a]
    }

    pub fn g(&self, a: Arrow) -> Arrow {
        self.g[a]
    }

    pub fn f_inv(&self, a: Arrow) -> Arrow {
        self.f_inv[a]
    }

    pub fn g_inv(&self, a: Arrow) -> Arrow {
        self.g_inv[a]
    }

    pub fn g_pow(&self, mut a: Arrow, k: usize) -> Arrow {
        for _ in 0..k {
            a = self.g[a];
        }
        a
    }

    /// Arrows leaving `v`, in increasing id order.
    pub fn out_arrows(&self, v: Vertex) -> &[Arrow] {
        &self.out[v]
    }

    /// The other arrow leaving the source of `a`.
    ///
    /// Panics unless the source has out-degree two.
    pub fn bar(&self, a: Arrow) -> Arrow {
        match self.out[self.src[a]][..] {
            [x, y] if x == a => y,
            [x, y] if y == a => x,
            _ => panic!("vertex {} does not have out-degree 2", self.src[a]),
        }
    }

    /// Size of the g-orbit of `a`.
    pub fn n(&self, a: Arrow) -> usize {
        self.g_orbit_len[self.g_orbit[a]]
    }

    /// Index of the g-orbit of `a`; orbits are numbered by their smallest arrow.
    pub fn g_orbit_index(&self, a: Arrow) -> usize {
        self.g_orbit[a]
    }

    pub fn g_orbit_count(&self) -> usize {
        self.g_orbit_len.len()
    }

    /// `a, g(a), ..., g^(len-1)(a)`.
    pub fn g_chain(&self, a: Arrow, len: usize) -> Vec<Arrow> {
        let mut out = Vec::with_capacity(len);
        let mut c = a;
        for _ in 0..len {
            out.push(c);
            c = self.g[c];
        }
        out
    }

    /// `h(b) = g^-3(bar b)`.
    pub fn h(&self, a: Arrow) -> Arrow {
        let mut b = self.bar(a);
        for _ in 0..3 {
            b = self.g_inv[b];
        }
        b
    }

    pub fn orbit_partition(&self, kind: OrbitKind) -> OrbitPartition {
        let perm: Vec<Arrow> = match kind {
            OrbitKind::F => self.f.clone(),
            OrbitKind::G => self.g.clone(),
            OrbitKind::H => self.arrows().map(|a| self.h(a)).collect(),
        };
        OrbitPartition {
            kind,
            classes: cycles(&perm),
        }
    }

    /// Every structural property an adjacency quiver of a (T3) triangulation
    /// has; an empty list means all hold.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        let arrows: BTreeSet<(Vertex, Vertex)> =
            self.arrows().map(|a| (self.src[a], self.tgt[a])).collect();
        for &(s, t) in &arrows {
            if s == t {
                v.push(format!("loop at vertex {s}"));
            } else if s < t && arrows.contains(&(t, s)) {
                v.push(format!("2-cycle between {s} and {t}"));
            }
        }
        let mut indeg = vec![0; self.vertex_count];
        for a in self.arrows() {
            indeg[self.tgt[a]] += 1;
        }
        for i in 0..self.vertex_count {
            if self.out[i].len() != 2 || indeg[i] != 2 {
                v.push(format!(
                    "vertex {i} has out-degree {} and in-degree {}",
                    self.out[i].len(),
                    indeg[i]
                ));
            }
        }
        if !v.is_empty() {
            return v;
        }
        for a in self.arrows() {
            let mut pair = [self.f[a], self.g[a]];
            pair.sort_unstable();
            if pair[..] != self.out[self.tgt[a]][..] {
                v.push(format!("f({a}), g({a}) are not the arrows leaving target({a})"));
            }
            if self.f[a] == a {
                v.push(format!("f fixes arrow {a}"));
            }
            if self.f[self.f[self.f[a]]] != a {
                v.push(format!("f^3 moves arrow {a}"));
            }
        }
        for (i, &len) in self.g_orbit_len.iter().enumerate() {
            if len < 3 {
                v.push(format!("g-orbit {i} has size {len}"));
            }
        }
        if !self.xy_transitivity() {
            v.push("quiver is not connected".into());
        }
        v
    }

    pub fn conditions(&self) -> QuiverConditions {
        QuiverConditions {
            star: self.arrows().all(|a| self.n(a) >= 4 || self.n(self.f[a]) >= 4),
            diamond: self.g_orbit_len.iter().all(|&n| n == 3),
        }
    }

    /// Whether the group generated by `bar` and `g` acts transitively on the
    /// arrows.
    pub fn xy_transitivity(&self) -> bool {
        let m = self.arrow_count();
        if m == 0 {
            return false;
        }
        if self.out.iter().any(|o| o.len() != 2) {
            return false;
        }
        let mut seen = vec![false; m];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        let mut count = 1;
        while let Some(a) = queue.pop_front() {
            for b in [self.bar(a), self.g[a], self.g_inv[a]] {
                if !seen[b] {
                    seen[b] = true;
                    count += 1;
                    queue.push_back(b);
                }
            }
        }
        count == m
    }

    /// Checks the shape forced by (♦): 6 vertices, 12 arrows, 4 g-orbits, and
    /// `a`, `bar a`, `f a`, `f bar a` in four different g-orbits for every `a`.
    /// Also decides isomorphism with the tetrahedron's quiver.
    pub fn diamond_structure(&self) -> Result<DiamondStructure> {
        if !self.conditions().diamond {
            return Err(Error::Precondition("quiver does not satisfy (♦)".into()));
        }
        let shape_ok =
            self.vertex_count == 6 && self.arrow_count() == 12 && self.g_orbit_count() == 4;
        let distinct_orbits = shape_ok
            && self.out.iter().all(|o| o.len() == 2)
            && self.arrows().all(|a| {
                let b = self.bar(a);
                let orbits: BTreeSet<usize> = [a, b, self.f[a], self.f[b]]
                    .iter()
                    .map(|&x| self.g_orbit[x])
                    .collect();
                orbits.len() == 4
            });
        let reference = adjacency_quiver(&crate::surface::sphere_base(4)?)?;
        Ok(DiamondStructure {
            shape_ok,
            distinct_orbits,
            isomorphic_to_reference: self.is_isomorphic(&reference),
        })
    }

    pub fn diamond_structure_check(&self) -> Result<bool> {
        Ok(self.diamond_structure()?.holds())
    }

    /// Isomorphism of the (source, target, f, g) structures.
    ///
    /// Arrows connected by `f`/`g` moves are forced once one image is chosen,
    /// so each component needs only a choice of image for its first arrow;
    /// the search backtracks over those choices.
    pub fn is_isomorphic(&self, other: &Quiver) -> bool {
        let m = self.arrow_count();
        if m != other.arrow_count() || self.vertex_count != other.vertex_count {
            return false;
        }
        let mut map = vec![usize::MAX; m];
        let mut used = vec![false; m];
        let mut vmap = vec![usize::MAX; self.vertex_count];
        let mut vused = vec![false; self.vertex_count];
        self.extend_iso(other, &mut map, &mut used, &mut vmap, &mut vused)
    }

    fn extend_iso(
        &self,
        other: &Quiver,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        vmap: &mut Vec<usize>,
        vused: &mut Vec<bool>,
    ) -> bool {
        let Some(root) = map.iter().position(|&x| x == usize::MAX) else {
            return true;
        };
        for image in 0..other.arrow_count() {
            if used[image] {
                continue;
            }
            let (saved_map, saved_used) = (map.clone(), used.clone());
            let (saved_vmap, saved_vused) = (vmap.clone(), vused.clone());
            if self.propagate(other, root, image, map, used, vmap, vused)
                && self.extend_iso(other, map, used, vmap, vused)
            {
                return true;
            }
            *map = saved_map;
            *used = saved_used;
            *vmap = saved_vmap;
            *vused = saved_vused;
        }
        false
    }

    #[allow(clippy::too_many_arguments)]
    fn propagate(
        &self,
        other: &Quiver,
        root: Arrow,
        image: Arrow,
        map: &mut [usize],
        used: &mut [bool],
        vmap: &mut [usize],
        vused: &mut [bool],
    ) -> bool {
        let mut queue = VecDeque::from([(root, image)]);
        while let Some((a, b)) = queue.pop_front() {
            if map[a] != usize::MAX {
                if map[a] != b {
                    return false;
                }
                continue;
            }
            if used[b] {
                return false;
            }
            for (v, w) in [(self.src[a], other.src[b]), (self.tgt[a], other.tgt[b])] {
                if vmap[v] == usize::MAX {
                    if vused[w] {
                        return false;
                    }
                    vmap[v] = w;
                    vused[w] = true;
                } else if vmap[v] != w {
                    return false;
                }
            }
            map[a] = b;
            used[b] = true;
            queue.push_back((self.f[a], other.f[b]));
            queue.push_back((self.g[a], other.g[b]));
            queue.push_back((self.f_inv[a], other.f_inv[b]));
            queue.push_back((self.g_inv[a], other.g_inv[b]));
        }
        true
    }
}

/// The adjacency quiver of a valid triangulation.
pub fn adjacency_quiver(t: &Triangulation) -> Result<Quiver> {
    let report = t.validate();
    if !report.is_valid() {
        return Err(Error::InvalidTriangulation(report.messages().join("; ")));
    }
    let rotation = t.rotation_table();
    let m = 3 * t.triangle_count();
    let src: Vec<Vertex> = (0..m).map(|c| t.arc_at((c / 3, c % 3))).collect();
    let tgt: Vec<Vertex> = (0..m).map(|c| t.arc_at((c / 3, (c % 3 + 1) % 3))).collect();
    let f: Vec<Arrow> = (0..m).map(|c| 3 * (c / 3) + (c % 3 + 1) % 3).collect();
    Quiver::from_parts(t.arc_count(), src, tgt, f, rotation)
}
