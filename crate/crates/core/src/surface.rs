//! Closed marked surfaces and their ideal triangulations, stored as
//! combinatorial maps.
//!
//! A triangulation is a list of triangles, each an ordered triple of arc ids
//! listed clockwise. The two occurrences of an arc are glued to each other
//! (orientation-reversing, as on an oriented surface). A *corner* is a pair
//! `(triangle, position)`; corner `(t, k)` sits between sides `k` and `k + 1`.
//! Stepping from a corner to the corner of the neighbouring triangle across
//! side `k + 1` walks counterclockwise around the puncture, so the orbits of
//! that step are the punctures.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A closed oriented surface of the given genus with `punctures` marked points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MarkedSurface {
    pub genus: usize,
    pub punctures: usize,
}

impl MarkedSurface {
    /// Fails unless the surface admits a triangulation with valence at least
    /// three everywhere: genus >= 1 with at least one puncture, or a sphere
    /// with at least four.
    pub fn new(genus: usize, punctures: usize) -> Result<Self> {
        let s = MarkedSurface { genus, punctures };
        if s.is_triangulable() {
            Ok(s)
        } else {
            Err(Error::NotTriangulable { genus, punctures })
        }
    }

    pub fn is_triangulable(&self) -> bool {
        match self.genus {
            0 => self.punctures >= 4,
            _ => self.punctures >= 1,
        }
    }

    /// Number of arcs of any ideal triangulation: 6g - 6 + 3P.
    pub fn arc_count(&self) -> usize {
        6 * self.genus + 3 * self.punctures - 6
    }

    pub fn is_sphere(&self, punctures: usize) -> bool {
        self.genus == 0 && self.punctures == punctures
    }
}

/// Position of a corner: `(triangle index, position 0..3)`.
pub type Corner = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Triangulation {
    triangles: Vec<[usize; 3]>,
}

#[derive(Serialize, Deserialize)]
struct TriangulationDoc {
    triangles: Vec<[usize; 3]>,
}

/// One violated invariant of a [`Triangulation`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Empty,
    NonContiguousArcIds { missing: Vec<usize> },
    ArcMultiplicity { arc: usize, occurrences: usize },
    SelfFolded { triangle: usize },
    Disconnected { components: usize },
    T3 { puncture: usize, valence: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "triangulation has no triangles"),
            Violation::NonContiguousArcIds { missing } => {
                write!(f, "arc ids are not contiguous; missing {missing:?}")
            }
            Violation::ArcMultiplicity { arc, occurrences } => {
                write!(f, "arc {arc} occurs {occurrences} times (expected 2)")
            }
            Violation::SelfFolded { triangle } => {
                write!(f, "self-folded triangle at index {triangle}")
            }
            Violation::Disconnected { components } => {
                write!(f, "gluing graph is disconnected ({components} components)")
            }
            Violation::T3 { puncture, valence } => {
                write!(f, "(T3) violated at puncture {puncture} (valence {valence})")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn messages(&self) -> Vec<String> {
        self.violations.iter().map(ToString::to_string).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EulerData {
    pub punctures: usize,
    pub arcs: usize,
    pub triangles: usize,
    pub genus: usize,
}

/// The arcs met when walking counterclockwise around one puncture.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PunctureCycle {
    pub puncture_id: usize,
    pub arc_sequence: Vec<usize>,
    /// Corners visited, in the same order as `arc_sequence`.
    #[serde(skip)]
    pub corners: Vec<Corner>,
    pub n_p: usize,
    pub v_p: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    #[serde(rename = "T3")]
    pub t3: bool,
    #[serde(rename = "T3half")]
    pub t3half: bool,
    #[serde(rename = "T4")]
    pub t4: bool,
}

/// Parses the `{"triangles": [[a, b, c], ...]}` document. No validation
/// beyond shape and non-emptiness is applied.
pub fn parse_triangulation(document: &str) -> Result<Triangulation> {
    let doc: TriangulationDoc = serde_json::from_str(document).map_err(|e| {
        Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
    })?;
    if doc.triangles.is_empty() {
        return Err(Error::Parse("empty triangle list".into()));
    }
    Ok(Triangulation::new(doc.triangles))
}

impl Triangulation {
    pub fn new(triangles: Vec<[usize; 3]>) -> Self {
        Triangulation { triangles }
    }

    /// Builds a triangulation from consistently oriented faces given by vertex
    /// triples. Each unordered vertex pair becomes one arc, numbered in order
    /// of first appearance.
    pub fn from_oriented_faces(faces: &[[usize; 3]]) -> Self {
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut arc = |a: usize, b: usize| {
            let key = (a.min(b), a.max(b));
            match edges.iter().position(|&e| e == key) {
                Some(i) => i,
                None => {
                    edges.push(key);
                    edges.len() - 1
                }
            }
        };
        let triangles = faces
            .iter()
            .map(|&[a, b, c]| [arc(a, b), arc(b, c), arc(c, a)])
            .collect();
        Triangulation { triangles }
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    /// One more than the largest arc id (the arc count when ids are contiguous).
    pub fn arc_count(&self) -> usize {
        self.triangles
            .iter()
            .flatten()
            .max()
            .map_or(0, |&m| m + 1)
    }

    pub fn arc_at(&self, (t, k): Corner) -> usize {
        self.triangles[t][k]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TriangulationDoc {
            triangles: self.triangles.clone(),
        })
        .expect("triangulation serializes")
    }

    /// Occurrences of every arc id `0..arc_count`.
    fn occurrences(&self) -> Vec<Vec<Corner>> {
        let mut occ = vec![Vec::new(); self.arc_count()];
        for (t, tri) in self.triangles.iter().enumerate() {
            for (k, &a) in tri.iter().enumerate() {
                occ[a].push((t, k));
            }
        }
        occ
    }

    fn has_pairing(&self) -> bool {
        !self.triangles.is_empty() && self.occurrences().iter().all(|o| o.len() == 2)
    }

    /// The other occurrence of the arc sitting at `corner`.
    ///
    /// Panics if the arc does not occur exactly twice.
    pub fn partner(&self, corner: Corner) -> Corner {
        let a = self.arc_at(corner);
        for (t, tri) in self.triangles.iter().enumerate() {
            for (k, &b) in tri.iter().enumerate() {
                if b == a && (t, k) != corner {
                    return (t, k);
                }
            }
        }
        panic!("arc {a} has no partner occurrence")
    }

    /// Partner table indexed by `3 * t + k`.
    pub(crate) fn partner_table(&self) -> Vec<usize> {
        let occ = self.occurrences();
        let mut table = vec![usize::MAX; 3 * self.triangles.len()];
        for o in occ.iter().filter(|o| o.len() == 2) {
            let (a, b) = (3 * o[0].0 + o[0].1, 3 * o[1].0 + o[1].1);
            table[a] = b;
            table[b] = a;
        }
        table
    }

    /// Counterclockwise step around the puncture at corner `3t + k`: the
    /// partner of side `k + 1`. Requires every arc to occur twice.
    pub(crate) fn rotation_table(&self) -> Vec<usize> {
        let partner = self.partner_table();
        (0..3 * self.triangles.len())
            .map(|c| partner[3 * (c / 3) + (c % 3 + 1) % 3])
            .collect()
    }

    /// Orbits of the corner rotation, each starting at its smallest corner and
    /// ordered by that corner.
    fn corner_orbits(&self) -> Vec<Vec<usize>> {
        let next = self.rotation_table();
        let mut seen = vec![false; next.len()];
        let mut orbits = Vec::new();
        for start in 0..next.len() {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut c = start;
            while !seen[c] {
                seen[c] = true;
                orbit.push(c);
                c = next[c];
            }
            orbits.push(orbit);
        }
        orbits
    }

    /// Puncture id of every corner (index `3t + k`).
    pub(crate) fn corner_punctures(&self) -> Vec<usize> {
        let mut owner = vec![0; 3 * self.triangles.len()];
        for (p, orbit) in self.corner_orbits().iter().enumerate() {
            for &c in orbit {
                owner[c] = p;
            }
        }
        owner
    }

    fn component_count(&self) -> usize {
        let partner = self.partner_table();
        let n = self.triangles.len();
        let mut seen = vec![false; n];
        let mut components = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            components += 1;
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(t) = queue.pop_front() {
                for k in 0..3 {
                    let p = partner[3 * t + k];
                    if p != usize::MAX && !seen[p / 3] {
                        seen[p / 3] = true;
                        queue.push_back(p / 3);
                    }
                }
            }
        }
        components
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.triangles.is_empty() {
            violations.push(Violation::Empty);
            return ValidationReport { violations };
        }
        let occ = self.occurrences();
        let missing: Vec<usize> = (0..occ.len()).filter(|&a| occ[a].is_empty()).collect();
        if !missing.is_empty() {
            violations.push(Violation::NonContiguousArcIds { missing });
        }
        for (arc, o) in occ.iter().enumerate() {
            if !o.is_empty() && o.len() != 2 {
                violations.push(Violation::ArcMultiplicity {
                    arc,
                    occurrences: o.len(),
                });
            }
        }
        for (t, [a, b, c]) in self.triangles.iter().enumerate() {
            if a == b || b == c || a == c {
                violations.push(Violation::SelfFolded { triangle: t });
            }
        }
        let components = self.component_count();
        if components > 1 {
            violations.push(Violation::Disconnected { components });
        }
        if self.has_pairing() {
            for (puncture, orbit) in self.corner_orbits().iter().enumerate() {
                if orbit.len() < 3 {
                    violations.push(Violation::T3 {
                        puncture,
                        valence: orbit.len(),
                    });
                }
            }
        }
        ValidationReport { violations }
    }

    fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidTriangulation(report.messages().join("; ")))
        }
    }

    pub fn euler_data(&self) -> Result<EulerData> {
        self.ensure_valid()?;
        let punctures = self.corner_orbits().len();
        let arcs = self.arc_count();
        let triangles = self.triangles.len();
        let chi = punctures as i64 - arcs as i64 + triangles as i64;
        if chi > 2 || (2 - chi) % 2 != 0 {
            return Err(Error::InvalidTriangulation(format!(
                "Euler characteristic {chi} is not that of a closed oriented surface"
            )));
        }
        let genus = ((2 - chi) / 2) as usize;
        if arcs + 6 != 6 * genus + 3 * punctures {
            return Err(Error::InvalidTriangulation(format!(
                "{arcs} arcs but 6g - 6 + 3P = {}",
                6 * genus + 3 * punctures - 6
            )));
        }
        Ok(EulerData {
            punctures,
            arcs,
            triangles,
            genus,
        })
    }

    pub fn surface(&self) -> Result<MarkedSurface> {
        let e = self.euler_data()?;
        Ok(MarkedSurface {
            genus: e.genus,
            punctures: e.punctures,
        })
    }

    /// Requires every arc to occur exactly twice; otherwise the rotation is
    /// undefined and an empty list is returned.
    pub fn puncture_cycles(&self) -> Vec<PunctureCycle> {
        if !self.has_pairing() {
            return Vec::new();
        }
        let arcs = self.arc_count();
        self.corner_orbits()
            .into_iter()
            .enumerate()
            .map(|(puncture_id, orbit)| {
                let corners: Vec<Corner> = orbit.iter().map(|&c| (c / 3, c % 3)).collect();
                let arc_sequence: Vec<usize> = corners.iter().map(|&c| self.arc_at(c)).collect();
                let mut v_p = vec![0; arcs];
                for &a in &arc_sequence {
                    v_p[a] += 1;
                }
                PunctureCycle {
                    puncture_id,
                    n_p: arc_sequence.len(),
                    arc_sequence,
                    corners,
                    v_p,
                }
            })
            .collect()
    }

    /// The two endpoint punctures of every arc (equal for loop arcs).
    fn arc_endpoints(&self) -> Vec<[usize; 2]> {
        let owner = self.corner_punctures();
        let mut ends = vec![[usize::MAX; 2]; self.arc_count()];
        for (t, tri) in self.triangles.iter().enumerate() {
            // side k runs between corners (t, k - 1) and (t, k)
            for (k, &a) in tri.iter().enumerate() {
                if ends[a][0] == usize::MAX {
                    ends[a] = [owner[3 * t + (k + 2) % 3], owner[3 * t + k]];
                }
            }
        }
        ends
    }

    pub fn condition_report(&self) -> ConditionReport {
        if !self.validate().is_valid() {
            return ConditionReport {
                t3: false,
                t3half: false,
                t4: false,
            };
        }
        let valence: Vec<usize> = self.puncture_cycles().iter().map(|p| p.n_p).collect();
        let t4 = valence.iter().all(|&v| v >= 4);
        let t3half = self
            .arc_endpoints()
            .iter()
            .all(|&[p, q]| valence[p] >= 4 || valence[q] >= 4);
        ConditionReport {
            t3: true,
            t3half,
            t4,
        }
    }

    /// Replaces `arc` by a star of four arcs around a new puncture placed on
    /// it. The arc keeps its id for the half next to its first occurrence's
    /// start; the other three new arcs get the next free ids.
    pub fn add_puncture(&self, arc: usize) -> Result<Triangulation> {
        self.ensure_valid()?;
        if arc >= self.arc_count() {
            return Err(Error::UnknownArc(arc));
        }
        let occ = self.occurrences();
        let [(t1, k1), (t2, k2)] = [occ[arc][0], occ[arc][1]];
        let rot = |t: usize, k: usize| {
            let tri = self.triangles[t];
            [tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]]
        };
        // t1 = (x, a, b) with x running u -> v, t2 = (x, c, d) with x running v -> u
        let [_, a, b] = rot(t1, k1);
        let [_, c, d] = rot(t2, k2);
        let n = self.arc_count();
        let (x1, x2, y1, y2) = (arc, n, n + 1, n + 2);
        let mut triangles = self.triangles.clone();
        triangles[t1] = [x1, y1, b];
        triangles[t2] = [x2, y2, d];
        triangles.push([x2, a, y1]);
        triangles.push([x1, c, y2]);
        Ok(Triangulation { triangles })
    }
}

/// Faces of the tetrahedron, triangular bipyramid or octahedron.
pub fn sphere_base(punctures: usize) -> Result<Triangulation> {
    let faces: &[[usize; 3]] = match punctures {
        4 => &[[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]],
        // equator 0, 1, 2; poles 3 and 4
        5 => &[
            [3, 0, 1],
            [3, 1, 2],
            [3, 2, 0],
            [4, 1, 0],
            [4, 2, 1],
            [4, 0, 2],
        ],
        // equator 0..4; poles 4 and 5
        6 => &[
            [4, 0, 1],
            [4, 1, 2],
            [4, 2, 3],
            [4, 3, 0],
            [5, 1, 0],
            [5, 2, 1],
            [5, 3, 2],
            [5, 0, 3],
        ],
        n => return Err(Error::SphereBase(n)),
    };
    Ok(Triangulation::from_oriented_faces(faces))
}

/// Fan triangulation of the 4g-gon with side word a1 b1 a1^-1 b1^-1 ...;
/// all polygon vertices are identified to a single puncture.
pub fn once_punctured_genus(genus: usize) -> Result<Triangulation> {
    if genus == 0 {
        return Err(Error::NotTriangulable {
            genus,
            punctures: 1,
        });
    }
    let sides = 4 * genus;
    // polygon edge e runs from vertex e to e + 1; edges 4j and 4j + 2 carry the
    // same arc, as do 4j + 1 and 4j + 3
    let edge_arc = |e: usize| {
        let block = e / 4;
        2 * block + (e % 4) % 2
    };
    let boundary = 2 * genus;
    // diagonal from vertex 0 to vertex k, for 2 <= k <= sides - 2
    let diagonal = |k: usize| boundary + k - 2;
    let side = |from: usize, to: usize| -> usize {
        match (from, to) {
            (0, 1) | (1, 0) => edge_arc(0),
            (0, k) | (k, 0) if k == sides - 1 => edge_arc(sides - 1),
            (0, k) | (k, 0) => diagonal(k),
            (i, j) => edge_arc(i.min(j)),
        }
    };
    let triangles = (1..sides - 1)
        .map(|k| [side(0, k), side(k, k + 1), side(k + 1, 0)])
        .collect();
    Ok(Triangulation { triangles })
}

/// A triangulation of `surface` with the strongest valence condition it
/// admits: the tetrahedron for four punctures, the bipyramid for five,
/// otherwise (T4). Extra punctures are inserted on the smallest arc.
pub fn nice_triangulation(surface: MarkedSurface) -> Result<Triangulation> {
    build_nice(surface, |_| 0)
}

/// Like [`nice_triangulation`], but every inserted puncture lands on an arc
/// drawn from `rng`.
pub fn nice_triangulation_with<R: Rng>(surface: MarkedSurface, rng: &mut R) -> Result<Triangulation> {
    build_nice(surface, |t| rng.gen_range(0..t.arc_count()))
}

fn build_nice(
    surface: MarkedSurface,
    mut choose: impl FnMut(&Triangulation) -> usize,
) -> Result<Triangulation> {
    let surface = MarkedSurface::new(surface.genus, surface.punctures)?;
    let (mut t, base_punctures) = match surface.genus {
        0 => {
            let base = surface.punctures.min(6);
            (sphere_base(base)?, base)
        }
        g => (once_punctured_genus(g)?, 1),
    };
    for _ in base_punctures..surface.punctures {
        let arc = choose(&t);
        t = t.add_puncture(arc)?;
    }
    Ok(t)
}

/// Applies `count` random puncture insertions to `t`.
pub fn add_punctures_with<R: Rng>(t: &Triangulation, count: usize, rng: &mut R) -> Result<Triangulation> {
    let mut t = t.clone();
    for _ in 0..count {
        let arc = rng.gen_range(0..t.arc_count());
        t = t.add_puncture(arc)?;
    }
    Ok(t)
}

/// Valences of all punctures, sorted ascending.
pub fn valence_multiset(t: &Triangulation) -> Vec<usize> {
    let mut v: Vec<usize> = t.puncture_cycles().iter().map(|p| p.n_p).collect();
    v.sort_unstable();
    v
}

/// Arcs joining the two punctures `p` and `q`.
pub fn arcs_between(t: &Triangulation, p: usize, q: usize) -> BTreeSet<usize> {
    t.arc_endpoints()
        .iter()
        .enumerate()
        .filter(|(_, &[a, b])| (a == p && b == q) || (a == q && b == p))
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn torus() -> Triangulation {
        Triangulation::new(vec![[0, 1, 2], [0, 1, 2]])
    }

    #[test]
    fn parse_tetrahedron_document() {
        let t = parse_triangulation(&sphere_base(4).unwrap().to_json()).unwrap();
        assert_eq!(t.triangle_count(), 4);
        assert_eq!(t.arc_count(), 6);
    }

    #[test]
    fn parse_rejects_empty_and_malformed() {
        assert!(matches!(
            parse_triangulation(r#"{"triangles":[]}"#),
            Err(Error::Parse(_))
        ));
        let err = parse_triangulation("{\"triangles\": [[0,1]]}").unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
    }

    #[test]
    fn torus_map() {
        let t = parse_triangulation(r#"{"triangles":[[0,1,2],[0,1,2]]}"#).unwrap();
        assert!(t.validate().is_valid());
        assert_eq!(
            t.euler_data().unwrap(),
            EulerData {
                punctures: 1,
                arcs: 3,
                triangles: 2,
                genus: 1
            }
        );
        let cycles = t.puncture_cycles();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].n_p, 6);
        assert_eq!(cycles[0].v_p, vec![2, 2, 2]);
    }

    #[test]
    fn mirrored_pillow_is_a_thrice_punctured_sphere() {
        let t = Triangulation::new(vec![[0, 1, 2], [0, 2, 1]]);
        let report = t.validate();
        assert_eq!(report.violations.len(), 3);
        assert!(report
            .violations
            .iter()
            .all(|v| matches!(v, Violation::T3 { valence: 2, .. })));
        assert!(report.messages()[0].starts_with("(T3) violated at puncture"));
    }

    #[test]
    fn self_folded_triangle_reported() {
        let t = Triangulation::new(vec![[0, 0, 1], [1, 2, 2]]);
        let msgs = t.validate().messages();
        assert!(msgs.contains(&"self-folded triangle at index 0".to_string()), "{msgs:?}");
    }

    #[test]
    fn multiplicity_and_gaps_reported() {
        let t = Triangulation::new(vec![[0, 1, 3], [0, 1, 3], [0, 1, 3]]);
        let v = t.validate().violations;
        assert!(v.contains(&Violation::NonContiguousArcIds { missing: vec![2] }));
        assert!(v.contains(&Violation::ArcMultiplicity { arc: 0, occurrences: 3 }));
    }

    #[test]
    fn disconnected_reported() {
        let mut tris = sphere_base(4).unwrap().triangles().to_vec();
        tris.extend(sphere_base(4).unwrap().triangles().iter().map(|t| t.map(|a| a + 6)));
        let v = Triangulation::new(tris).validate().violations;
        assert!(v.contains(&Violation::Disconnected { components: 2 }));
    }

    #[test]
    fn sphere_bases() {
        let expect = [
            (4, 4, 6, vec![3, 3, 3, 3]),
            (5, 6, 9, vec![3, 3, 4, 4, 4]),
            (6, 8, 12, vec![4; 6]),
        ];
        for (p, tri, arcs, val) in expect {
            let t = sphere_base(p).unwrap();
            assert!(t.validate().is_valid(), "{:?}", t.validate());
            assert_eq!(t.triangle_count(), tri);
            assert_eq!(t.arc_count(), arcs);
            assert_eq!(valence_multiset(&t), val);
            let e = t.euler_data().unwrap();
            assert_eq!((e.genus, e.punctures), (0, p));
        }
        assert!(matches!(sphere_base(3), Err(Error::SphereBase(3))));
        assert!(matches!(sphere_base(7), Err(Error::SphereBase(7))));
    }

    #[test]
    fn euler_data_octahedron() {
        let e = sphere_base(6).unwrap().euler_data().unwrap();
        assert_eq!(
            e,
            EulerData {
                punctures: 6,
                arcs: 12,
                triangles: 8,
                genus: 0
            }
        );
    }

    #[test]
    fn tetrahedron_cycles_are_incidence_vectors() {
        let cycles = sphere_base(4).unwrap().puncture_cycles();
        assert_eq!(cycles.len(), 4);
        for c in &cycles {
            assert_eq!(c.n_p, 3);
            assert!(c.v_p.iter().all(|&x| x <= 1));
        }
    }

    #[test]
    fn once_punctured_surfaces() {
        for (g, arcs, tris, val) in [(1, 3, 2, 6), (2, 9, 6, 18), (3, 15, 10, 30)] {
            let t = once_punctured_genus(g).unwrap();
            assert!(t.validate().is_valid());
            assert_eq!(t.arc_count(), arcs);
            assert_eq!(t.triangle_count(), tris);
            assert_eq!(valence_multiset(&t), vec![val]);
            assert_eq!(t.euler_data().unwrap().genus, g);
            assert!(t.condition_report().t4);
        }
        let rotate_min = |t: &Triangulation| -> Vec<[usize; 3]> {
            t.triangles()
                .iter()
                .map(|tri| {
                    let k = (0..3).min_by_key(|&k| tri[k]).unwrap();
                    [tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]]
                })
                .collect()
        };
        assert_eq!(rotate_min(&once_punctured_genus(1).unwrap()), rotate_min(&torus()));
        assert!(once_punctured_genus(0).is_err());
    }

    #[test]
    fn condition_reports_of_sphere_bases() {
        let r = |p| sphere_base(p).unwrap().condition_report();
        assert_eq!(r(6), ConditionReport { t3: true, t3half: true, t4: true });
        assert_eq!(r(5), ConditionReport { t3: true, t3half: true, t4: false });
        assert_eq!(r(4), ConditionReport { t3: true, t3half: false, t4: false });
    }

    #[test]
    fn add_puncture_on_tetrahedron() {
        let t = sphere_base(4).unwrap();
        let cycles = t.puncture_cycles();
        let owner = t.corner_punctures();
        let (t1, k1) = (0..4)
            .flat_map(|t| (0..3).map(move |k| (t, k)))
            .find(|&c| t.arc_at(c) == 0)
            .unwrap();
        let endpoints = [owner[3 * t1 + (k1 + 2) % 3], owner[3 * t1 + k1]];
        let s = t.add_puncture(0).unwrap();
        assert!(s.validate().is_valid());
        let e = s.euler_data().unwrap();
        assert_eq!((e.genus, e.punctures, e.arcs, e.triangles), (0, 5, 9, 6));
        assert_eq!(valence_multiset(&s), vec![3, 3, 4, 4, 4]);
        assert!(s.condition_report().t3half);
        // both old endpoints keep valence 3 and are no longer adjacent
        let new_val: Vec<usize> = s.puncture_cycles().iter().map(|p| p.n_p).collect();
        let threes: Vec<usize> = (0..5).filter(|&p| new_val[p] == 3).collect();
        assert_eq!(threes.len(), 2);
        assert!(arcs_between(&s, threes[0], threes[1]).is_empty());
        assert_eq!(cycles.len(), 4);
        assert_ne!(endpoints[0], endpoints[1]);
    }

    #[test]
    fn add_puncture_on_torus_and_octahedron() {
        let s = torus().add_puncture(0).unwrap();
        let e = s.euler_data().unwrap();
        assert_eq!((e.genus, e.punctures, e.arcs, e.triangles), (1, 2, 6, 4));
        for arc in 0..12 {
            let s = sphere_base(6).unwrap().add_puncture(arc).unwrap();
            assert!(s.condition_report().t4);
            assert_eq!(s.euler_data().unwrap().punctures, 7);
        }
        assert!(matches!(torus().add_puncture(3), Err(Error::UnknownArc(3))));
    }

    #[test]
    fn nice_triangulations() {
        let t = nice_triangulation(MarkedSurface::new(0, 7).unwrap()).unwrap();
        assert!(t.condition_report().t4);
        let t = nice_triangulation(MarkedSurface::new(0, 4).unwrap()).unwrap();
        assert_eq!(t, sphere_base(4).unwrap());
        let t = nice_triangulation(MarkedSurface::new(2, 1).unwrap()).unwrap();
        assert!(t.condition_report().t4);
        assert!(MarkedSurface::new(0, 3).is_err());
        assert!(MarkedSurface::new(1, 0).is_err());
    }
}
