//! Normal forms by rewriting, valid whenever the finite-dimensionality
//! hypotheses hold.
//!
//! Every step of a path `w0 w1 ...` is either `w(j+1) = f(wj)` or
//! `w(j+1) = g(wj)`. A step change kills the path, and so do three
//! consecutive f-steps or a g-run longer than the puncture. What remains is an
//! idempotent, a g-chain of length below `n`, a full g-cycle (a multiple of
//! the socle element), a two-arrow f-path (a multiple of a g-chain of
//! length `n-1`) or a triangle (the socle element itself).

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::path::{Path, PathVector, Rational, ScalarAssignment};
use crate::quiver::{Arrow, Quiver, Vertex};

use super::Hypotheses;

/// A basis element of the Jacobian algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Standard {
    Idempotent(Vertex),
    /// `a g(a) ... g^(len-1)(a)` with `1 <= len <= n(a) - 1`.
    Chain(Arrow, usize),
    /// The socle element at a vertex.
    Socle(Vertex),
}

impl Standard {
    /// Every basis element: idempotents, g-chains, socle elements.
    pub fn all(q: &Quiver) -> Vec<Standard> {
        let mut out: Vec<Standard> = (0..q.vertex_count()).map(Standard::Idempotent).collect();
        for a in q.arrows() {
            out.extend((1..q.n(a)).map(|len| Standard::Chain(a, len)));
        }
        out.extend((0..q.vertex_count()).map(Standard::Socle));
        out
    }

    pub fn source(&self, q: &Quiver) -> Vertex {
        match *self {
            Standard::Idempotent(v) | Standard::Socle(v) => v,
            Standard::Chain(a, _) => q.source(a),
        }
    }

    pub fn target(&self, q: &Quiver) -> Vertex {
        match *self {
            Standard::Idempotent(v) | Standard::Socle(v) => v,
            Standard::Chain(a, len) => q.target(q.g_pow(a, len - 1)),
        }
    }

    pub fn degree(&self) -> usize {
        match *self {
            Standard::Idempotent(_) => 0,
            Standard::Chain(_, len) => len,
            Standard::Socle(_) => 3,
        }
    }

    /// The element as a combination of paths, with the socle element written
    /// as the scaled g-cycle of the smallest arrow leaving its vertex.
    pub fn to_vector(&self, q: &Quiver, c: &ScalarAssignment) -> PathVector {
        match *self {
            Standard::Idempotent(v) => PathVector::from_path(Path::trivial(v)),
            Standard::Chain(a, len) => PathVector::from_path(Path::from_arrows(q, q.g_chain(a, len))),
            Standard::Socle(v) => super::socle_element(q, c, v),
        }
    }

    /// `(path, m)` with `self = m · path` and `path` the smallest path in
    /// degree-lexicographic order that represents a multiple of `self`.
    pub fn canonical(&self, q: &Quiver, c: &ScalarAssignment) -> (Path, Rational) {
        match *self {
            Standard::Idempotent(v) => (Path::trivial(v), Rational::one()),
            Standard::Chain(a, len) if len + 1 < q.n(a) => {
                (Path::from_arrows(q, q.g_chain(a, len)), Rational::one())
            }
            Standard::Chain(a, len) => {
                // b f(b) = c_a · chain(a, n-1) for b = bar(a)
                let chain = Path::from_arrows(q, q.g_chain(a, len));
                let b = q.bar(a);
                let short = Path::from_arrows(q, vec![b, q.f(b)]);
                if short < chain {
                    (short, c.of(q, a).recip())
                } else {
                    (chain, Rational::one())
                }
            }
            Standard::Socle(v) => {
                let mut best: Option<(Path, Rational)> = None;
                for &a in q.out_arrows(v) {
                    let candidates = [
                        (Path::from_arrows(q, vec![a, q.f(a), q.f(q.f(a))]), Rational::one()),
                        (Path::from_arrows(q, q.g_chain(a, q.n(a))), c.of(q, a).clone()),
                    ];
                    for cand in candidates {
                        if best.as_ref().is_none_or(|b| cand.0 < b.0) {
                            best = Some(cand);
                        }
                    }
                }
                best.expect("every vertex has outgoing arrows")
            }
        }
    }
}

impl std::fmt::Display for Standard {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Standard::Idempotent(v) => write!(f, "e{v}"),
            Standard::Chain(a, len) => write!(f, "chain(a{a},{len})"),
            Standard::Socle(v) => write!(f, "z{v}"),
        }
    }
}

fn check(q: &Quiver, c: &ScalarAssignment) -> Result<()> {
    c.check_for(q)?;
    Hypotheses::of(q, c).require()
}

/// `(standard element, coefficient)` equal to the path `p`, or `None` if `p`
/// vanishes. Assumes the hypotheses hold.
pub fn classify(q: &Quiver, c: &ScalarAssignment, p: &Path) -> Result<Option<(Standard, Rational)>> {
    if !p.is_composable(q) {
        return Err(Error::Precondition(format!("path {p} is not composable")));
    }
    let w = &p.arrows;
    if w.is_empty() {
        return Ok(Some((Standard::Idempotent(p.source), Rational::one())));
    }
    let fsteps = w.windows(2).filter(|s| s[1] == q.f(s[0])).count();
    let gsteps = w.windows(2).filter(|s| s[1] == q.g(s[0])).count();
    let a = w[0];
    let len = w.len();
    let out = if fsteps == 0 {
        // a g-run, possibly a single arrow
        let n = q.n(a);
        match len.cmp(&n) {
            Ordering::Less => Some((Standard::Chain(a, len), Rational::one())),
            Ordering::Equal => Some((Standard::Socle(p.source), c.of(q, a).recip())),
            Ordering::Greater => None,
        }
    } else if gsteps > 0 {
        None
    } else {
        match len {
            2 => {
                let b = q.bar(a);
                let m = q.n(b) - 1;
                let coef = c.of(q, b).clone();
                if m == 0 {
                    Some((Standard::Idempotent(p.source), coef))
                } else {
                    Some((Standard::Chain(b, m), coef))
                }
            }
            3 => Some((Standard::Socle(p.source), Rational::one())),
            _ => None,
        }
    };
    Ok(out)
}

/// Coordinates of `x` over [`Standard`] elements, zero entries dropped.
pub fn coordinates(
    q: &Quiver,
    c: &ScalarAssignment,
    x: &PathVector,
) -> Result<Vec<(Standard, Rational)>> {
    check(q, c)?;
    let mut acc: std::collections::BTreeMap<Standard, Rational> = Default::default();
    for (p, k) in x.terms() {
        if let Some((s, m)) = classify(q, c, p)? {
            *acc.entry(s).or_insert_with(Rational::zero) += k * m;
        }
    }
    Ok(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect())
}

/// Rewrites `x` over the basis of idempotents, g-chains of length below `n`
/// and socle elements (each socle element as a scaled g-cycle).
pub fn rewrite(q: &Quiver, c: &ScalarAssignment, x: &PathVector) -> Result<PathVector> {
    let mut out = PathVector::zero();
    for (s, k) in coordinates(q, c, x)? {
        out.add_scaled(&s.to_vector(q, c), &k);
    }
    Ok(out)
}

/// The canonical form: each basis element written as its smallest
/// representing path in degree-lexicographic order. Agrees term by term
/// with [`super::TruncatedAlgebra::reduce`] once the truncation exceeds every
/// nonzero path.
pub fn normal_form(q: &Quiver, c: &ScalarAssignment, x: &PathVector) -> Result<PathVector> {
    let mut out = PathVector::zero();
    for (s, k) in coordinates(q, c, x)? {
        let (p, m) = s.canonical(q, c);
        out.add_term(p, k * m);
    }
    Ok(out)
}

pub fn multiply(
    q: &Quiver,
    c: &ScalarAssignment,
    x: &PathVector,
    y: &PathVector,
) -> Result<PathVector> {
    normal_form(q, c, &x.concat(y, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::truncated_quotient;
    use crate::path::rational;
    use crate::quiver::adjacency_quiver;
    use crate::surface::{once_punctured_genus, sphere_base, Triangulation};

    fn setup(t: Triangulation, scalars: Option<&str>) -> (Quiver, ScalarAssignment) {
        let q = adjacency_quiver(&t).unwrap();
        let c = match scalars {
            Some(s) => ScalarAssignment::parse(s).unwrap(),
            None => ScalarAssignment::default_for(&q),
        };
        (q, c)
    }

    fn paths_up_to(q: &Quiver, n: usize) -> Vec<Path> {
        let mut out: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
        let mut frontier: Vec<Path> = q.arrows().map(|a| Path::arrow(q, a)).collect();
        for _ in 0..n {
            out.extend(frontier.iter().cloned());
            frontier = frontier
                .iter()
                .flat_map(|p| {
                    q.out_arrows(p.target(q)).iter().map(move |&b| {
                        let mut r = p.clone();
                        r.arrows.push(b);
                        r
                    })
                })
                .collect();
        }
        out
    }

    fn agrees_with_oracle(q: &Quiver, c: &ScalarAssignment) {
        let max_n = q.arrows().map(|a| q.n(a)).max().unwrap();
        let n = max_n + 2;
        let oracle = truncated_quotient(q, c, n).unwrap();
        assert!(oracle.stabilized());
        for p in paths_up_to(q, n) {
            let x = PathVector::from_path(p.clone());
            assert_eq!(normal_form(q, c, &x).unwrap(), oracle.reduce(&x).unwrap(), "path {p}");
        }
        let ours: Vec<Path> = Standard::all(q).iter().map(|s| s.canonical(q, c).0).collect();
        let mut sorted = ours.clone();
        sorted.sort();
        assert_eq!(sorted, oracle.basis());
    }

    #[test]
    fn matches_oracle_on_sphere_bases() {
        let (q, c) = setup(sphere_base(4).unwrap(), Some("2,3,5,7"));
        agrees_with_oracle(&q, &c);
        for p in [5, 6] {
            let (q, c) = setup(sphere_base(p).unwrap(), None);
            agrees_with_oracle(&q, &c);
        }
    }

    #[test]
    fn matches_oracle_on_torus() {
        for s in ["3", "1", "-1/2"] {
            let (q, c) = setup(once_punctured_genus(1).unwrap(), Some(s));
            agrees_with_oracle(&q, &c);
        }
    }

    #[test]
    fn matches_oracle_after_adding_punctures() {
        let mut t = once_punctured_genus(1).unwrap();
        t = t.add_puncture(0).unwrap();
        let (q, c) = setup(t.clone(), None);
        agrees_with_oracle(&q, &c);
        let (q, c) = setup(sphere_base(4).unwrap().add_puncture(2).unwrap(), None);
        agrees_with_oracle(&q, &c);
    }

    #[test]
    fn two_arrow_f_path_rewrites_to_chain() {
        let (q, c) = setup(once_punctured_genus(1).unwrap(), Some("3"));
        let b = 0;
        let x = PathVector::from_path(Path::from_arrows(&q, vec![b, q.f(b)]));
        let bb = q.bar(b);
        let expect = PathVector::term(Path::from_arrows(&q, q.g_chain(bb, 5)), rational(3));
        assert_eq!(rewrite(&q, &c, &x).unwrap(), expect);
    }

    #[test]
    fn socle_annihilates_arrows() {
        let (q, c) = setup(sphere_base(6).unwrap(), None);
        for v in 0..q.vertex_count() {
            let z = Standard::Socle(v).to_vector(&q, &c);
            for a in q.arrows() {
                let x = PathVector::from_path(Path::arrow(&q, a));
                assert!(multiply(&q, &c, &z, &x).unwrap().is_zero());
                assert!(multiply(&q, &c, &x, &z).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn refuses_without_hypotheses() {
        let (q, c) = setup(sphere_base(4).unwrap(), Some("1,1,1,1"));
        let x = PathVector::from_path(Path::trivial(0));
        assert!(matches!(normal_form(&q, &c, &x), Err(Error::HypothesesNotMet(_))));
    }
}
