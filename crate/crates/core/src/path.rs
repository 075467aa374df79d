//! Paths, exact linear combinations of paths, and per-puncture scalars.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{Arrow, Quiver, Vertex};

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

/// A path of the quiver; the empty arrow sequence is the idempotent `e_source`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: Vertex,
    pub arrows: Vec<Arrow>,
}

impl Path {
    pub fn trivial(v: Vertex) -> Self {
        Path {
            source: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(q: &Quiver, a: Arrow) -> Self {
        Path {
            source: q.source(a),
            arrows: vec![a],
        }
    }

    /// Panics on an empty sequence; use [`Path::trivial`] for idempotents.
    pub fn from_arrows(q: &Quiver, arrows: Vec<Arrow>) -> Self {
        Path {
            source: q.source(arrows[0]),
            arrows,
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn target(&self, q: &Quiver) -> Vertex {
        self.arrows.last().map_or(self.source, |&a| q.target(a))
    }

    pub fn is_composable(&self, q: &Quiver) -> bool {
        match self.arrows.first() {
            None => self.source < q.vertex_count(),
            Some(&a) => {
                q.source(a) == self.source
                    && self.arrows.windows(2).all(|w| q.target(w[0]) == q.source(w[1]))
            }
        }
    }

    pub fn is_cycle(&self, q: &Quiver) -> bool {
        self.target(q) == self.source
    }

    /// Concatenation, or `None` when the endpoints do not match.
    pub fn concat(&self, other: &Path, q: &Quiver) -> Option<Path> {
        if self.target(q) != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            arrows,
        })
    }
}

/// Degree first, then lexicographic on arrow ids, then source vertex.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e{}", self.source)
        } else {
            let parts: Vec<String> = self.arrows.iter().map(|a| format!("a{a}")).collect();
            write!(f, "{}", parts.join("·"))
        }
    }
}

/// A finite linear combination of paths with nonzero rational coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PathVector {
    terms: BTreeMap<Path, Rational>,
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    coefficient: String,
    source: Vertex,
    arrows: Vec<Arrow>,
}

impl PathVector {
    pub fn zero() -> Self {
        PathVector::default()
    }

    pub fn from_path(p: Path) -> Self {
        Self::term(p, Rational::one())
    }

    pub fn term(p: Path, c: Rational) -> Self {
        let mut v = PathVector::zero();
        v.add_term(p, c);
        v
    }

    pub fn add_term(&mut self, p: Path, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(p);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &PathVector, c: &Rational) {
        for (p, v) in &other.terms {
            self.add_term(p.clone(), v * c);
        }
    }

    pub fn scaled(&self, c: &Rational) -> PathVector {
        let mut out = PathVector::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &PathVector) -> PathVector {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &Path) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest path length, 0 for the zero vector.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Path::len).max().unwrap_or(0)
    }

    /// Smallest path length among the terms.
    pub fn lowest_degree(&self) -> Option<usize> {
        self.terms.keys().map(Path::len).min()
    }

    /// Bilinear extension of path concatenation (non-composable pairs give 0).
    pub fn concat(&self, other: &PathVector, q: &Quiver) -> PathVector {
        let mut out = PathVector::zero();
        for (p, a) in &self.terms {
            for (r, b) in &other.terms {
                if let Some(pr) = p.concat(r, q) {
                    out.add_term(pr, a * b);
                }
            }
        }
        out
    }

    fn docs(&self) -> Vec<TermDoc> {
        self.terms
            .iter()
            .map(|(p, c)| TermDoc {
                coefficient: c.to_string(),
                source: p.source,
                arrows: p.arrows.clone(),
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.docs()).expect("path vector serializes")
    }

    pub fn from_json(document: &str) -> Result<Self> {
        let docs: Vec<TermDoc> =
            serde_json::from_str(document).map_err(|e| Error::Parse(e.to_string()))?;
        let mut v = PathVector::zero();
        for d in docs {
            v.add_term(
                Path {
                    source: d.source,
                    arrows: d.arrows,
                },
                parse_rational(&d.coefficient)?,
            );
        }
        Ok(v)
    }
}

impl Serialize for PathVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.docs().serialize(s)
    }
}

impl fmt::Display for PathVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(p, c)| format!("({c}) {p}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// One nonzero scalar per g-orbit (puncture), indexed by the orbit's position
/// when orbits are ordered by their smallest arrow id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarAssignment {
    values: Vec<Rational>,
}

fn primes(count: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(count);
    let mut n = 2;
    while out.len() < count {
        if out.iter().all(|p| n % p != 0) {
            out.push(n);
        }
        n += 1;
    }
    out
}

impl ScalarAssignment {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if let Some(i) = values.iter().position(Zero::is_zero) {
            return Err(Error::Scalars(format!("scalar {i} is zero")));
        }
        Ok(ScalarAssignment { values })
    }

    /// The k-th g-orbit gets the k-th prime.
    pub fn default_for(q: &Quiver) -> Self {
        ScalarAssignment {
            values: primes(q.g_orbit_count()).into_iter().map(rational).collect(),
        }
    }

    pub fn uniform(q: &Quiver, c: Rational) -> Result<Self> {
        Self::new(vec![c; q.g_orbit_count()])
    }

    /// Comma-separated rationals, e.g. `2,3/4,-5`.
    pub fn parse(list: &str) -> Result<Self> {
        let values = list
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }

    pub fn check_for(&self, q: &Quiver) -> Result<()> {
        if self.values.len() != q.g_orbit_count() {
            return Err(Error::Scalars(format!(
                "{} scalars given for {} punctures",
                self.values.len(),
                q.g_orbit_count()
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// The scalar of the g-orbit containing `a`.
    pub fn of(&self, q: &Quiver, a: Arrow) -> &Rational {
        &self.values[q.g_orbit_index(a)]
    }

    pub fn product(&self) -> Rational {
        self.values.iter().fold(Rational::one(), |acc, c| acc * c)
    }
}
