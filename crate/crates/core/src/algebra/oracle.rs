//! The quotient `KQ / (J + m^(N+1))` by exact elimination.
//!
//! The quotient is the space of paths of length at most `N` modulo the span
//! of the products `p·r·s` (terms longer than `N` dropped) for `r` a Jacobian
//! relation. Every relation here has exactly two terms, so every spanning
//! vector has support on at most two paths. Row reduction of such vectors
//! amounts to a weighted union-find: two paths in one connected component are
//! proportional, and a component collapses to zero as soon as it contains a
//! path touched by a one-term vector (a path pushed past the truncation) or a
//! cycle of proportionality factors whose product is not 1. A surviving
//! component contributes one basis vector, its smallest path in
//! degree-lexicographic order, which is the standard monomial that row
//! reduction with largest-term pivots leaves behind.
//!
//! Components are only explored from paths whose proper subpaths survive,
//! so the work scales with the size of the quotient, not with the number of
//! paths of length `N`.

use std::collections::{HashMap, HashSet};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::path::{Path, PathVector, Rational, ScalarAssignment};
use crate::quiver::{Arrow, Quiver};

use super::{jacobian_relations, Hypotheses};

/// Rewrite step `pattern = factor · replacement`, or `pattern = 0`.
#[derive(Debug, Clone)]
enum Move {
    Replace { with: Vec<Arrow>, factor: Rational },
    Kill,
}

/// The truncated Jacobian algebra with its standard-monomial basis.
#[derive(Debug, Clone)]
pub struct TruncatedAlgebra {
    quiver: Quiver,
    scalars: ScalarAssignment,
    truncation: usize,
    basis: Vec<Path>,
    /// Every path of length at most `N` that is nonzero in the quotient,
    /// mapped to `(basis index, coefficient)`.
    index: HashMap<Path, (usize, Rational)>,
    dims: Vec<usize>,
    longest_nonzero: usize,
}

/// Default truncation degree: twice the largest g-orbit plus two.
pub fn default_truncation(q: &Quiver) -> usize {
    let max_n = q.arrows().map(|a| q.n(a)).max().unwrap_or(0);
    2 * max_n + 2
}

struct Builder<'a> {
    q: &'a Quiver,
    n: usize,
    moves: HashMap<Vec<Arrow>, Vec<Move>>,
    pattern_lengths: Vec<usize>,
    index: HashMap<Path, (usize, Rational)>,
    by_len: Vec<Vec<Path>>,
    zero: HashSet<Path>,
    components: Vec<Path>,
}

impl<'a> Builder<'a> {
    fn new(q: &'a Quiver, relations: &[PathVector], n: usize) -> Result<Self> {
        let mut moves: HashMap<Vec<Arrow>, Vec<Move>> = HashMap::new();
        for r in relations {
            let terms: Vec<(&Path, &Rational)> = r.terms().collect();
            match terms[..] {
                [] => {}
                [(p, _)] => moves.entry(p.arrows.clone()).or_default().push(Move::Kill),
                [(p, a), (s, b)] => {
                    if p.is_empty() || s.is_empty() {
                        return Err(Error::Precondition("relation with a trivial path term".into()));
                    }
                    // a p + b s = 0, so p = (-b/a) s and s = (-a/b) p
                    let ps = -(b / a);
                    let sp = -(a / b);
                    moves.entry(p.arrows.clone()).or_default().push(Move::Replace {
                        with: s.arrows.clone(),
                        factor: ps,
                    });
                    moves.entry(s.arrows.clone()).or_default().push(Move::Replace {
                        with: p.arrows.clone(),
                        factor: sp,
                    });
                }
                _ => {
                    return Err(Error::Precondition(format!(
                        "relation {r} has more than two terms"
                    )))
                }
            }
        }
        let mut pattern_lengths: Vec<usize> = moves.keys().map(Vec::len).collect();
        pattern_lengths.sort_unstable();
        pattern_lengths.dedup();
        Ok(Builder {
            q,
            n,
            moves,
            pattern_lengths,
            index: HashMap::new(),
            by_len: vec![Vec::new(); n + 1],
            zero: HashSet::new(),
            components: Vec::new(),
        })
    }

    fn path(&self, arrows: Vec<Arrow>) -> Path {
        Path::from_arrows(self.q, arrows)
    }

    /// Whether `x` is already known to vanish, given that every path shorter
    /// than `level` has been classified.
    fn known_zero(&self, x: &Path, level: usize) -> bool {
        if self.zero.contains(x) {
            return true;
        }
        if x.len() < level {
            return !self.index.contains_key(x);
        }
        let w = level.saturating_sub(1);
        if w == 0 {
            return false;
        }
        x.arrows
            .windows(w)
            .any(|win| !self.index.contains_key(&self.path(win.to_vec())))
    }

    /// Paths one move away from `x`, each with `x = factor · neighbour`.
    /// `None` marks a move into the zero space.
    fn neighbours(&self, x: &Path) -> Vec<Option<(Path, Rational)>> {
        let mut out = Vec::new();
        let len = x.len();
        for i in 0..len {
            for &l in &self.pattern_lengths {
                if i + l > len {
                    break;
                }
                let Some(ms) = self.moves.get(&x.arrows[i..i + l]) else {
                    continue;
                };
                for m in ms {
                    match m {
                        Move::Kill => out.push(None),
                        Move::Replace { with, factor } => {
                            let mut arrows = x.arrows[..i].to_vec();
                            arrows.extend_from_slice(with);
                            arrows.extend_from_slice(&x.arrows[i + l..]);
                            if arrows.len() > self.n {
                                out.push(None);
                            } else {
                                let p = if arrows.is_empty() {
                                    Path::trivial(x.source)
                                } else {
                                    self.path(arrows)
                                };
                                out.push(Some((p, factor.clone())));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Explores the component of `start`; registers it if it survives.
    fn classify(&mut self, start: Path, level: usize) {
        let mut weight: HashMap<Path, Rational> = HashMap::new();
        weight.insert(start.clone(), Rational::one());
        let mut stack = vec![start];
        let mut killed = false;
        'explore: while let Some(x) = stack.pop() {
            if self.known_zero(&x, level) {
                killed = true;
                break;
            }
            let lx = weight[&x].clone();
            let mut next = Vec::new();
            for nb in self.neighbours(&x) {
                let Some((y, factor)) = nb else {
                    killed = true;
                    break 'explore;
                };
                // x = factor · y, so weight(y) = weight(x) / factor
                let ly = &lx / &factor;
                match weight.get(&y) {
                    Some(existing) if *existing != ly => {
                        killed = true;
                        break 'explore;
                    }
                    Some(_) => {}
                    None => {
                        weight.insert(y.clone(), ly);
                        next.push(y);
                    }
                }
            }
            // longest first off the stack: growth reaches the truncation fast
            next.sort_by_key(Path::len);
            stack.extend(next);
        }
        if killed {
            self.zero.extend(weight.into_keys());
            return;
        }
        let min = weight.keys().min().expect("component is nonempty").clone();
        let lmin = weight[&min].clone();
        let id = self.components.len();
        self.components.push(min);
        for (p, l) in weight {
            debug_assert!(!self.index.contains_key(&p));
            self.by_len[p.len()].push(p.clone());
            self.index.insert(p, (id, l / &lmin));
        }
    }

    fn run(&mut self) {
        for v in 0..self.q.vertex_count() {
            self.classify(Path::trivial(v), 0);
        }
        for a in self.q.arrows() {
            let p = Path::arrow(self.q, a);
            if !self.index.contains_key(&p) && !self.zero.contains(&p) {
                self.classify(p, 1);
            }
        }
        for level in 2..=self.n {
            let mut prev = self.by_len[level - 1].clone();
            if prev.is_empty() {
                break;
            }
            prev.sort();
            for w in prev {
                let target = w.target(self.q);
                for &b in self.q.out_arrows(target) {
                    let mut arrows = w.arrows.clone();
                    arrows.push(b);
                    let cand = self.path(arrows);
                    if self.index.contains_key(&cand) || self.zero.contains(&cand) {
                        continue;
                    }
                    let suffix = self.path(cand.arrows[1..].to_vec());
                    if !self.index.contains_key(&suffix) {
                        continue;
                    }
                    self.classify(cand, level);
                }
            }
        }
    }
}

/// Builds the truncated quotient from the Jacobian relations of `(q, c)`.
pub fn truncated_quotient(
    q: &Quiver,
    c: &ScalarAssignment,
    truncation: usize,
) -> Result<TruncatedAlgebra> {
    let relations = jacobian_relations(q, c)?;
    TruncatedAlgebra::from_relations(q, c, &relations, truncation)
}

impl TruncatedAlgebra {
    /// Quotient by an arbitrary family of relations with at most two terms each.
    pub fn from_relations(
        q: &Quiver,
        c: &ScalarAssignment,
        relations: &[PathVector],
        truncation: usize,
    ) -> Result<Self> {
        if truncation < 2 {
            return Err(Error::Precondition("truncation degree must be at least 2".into()));
        }
        let mut b = Builder::new(q, relations, truncation)?;
        b.run();
        let mut order: Vec<usize> = (0..b.components.len()).collect();
        order.sort_by(|&x, &y| b.components[x].cmp(&b.components[y]));
        let mut rank = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let basis: Vec<Path> = order.iter().map(|&i| b.components[i].clone()).collect();
        let index = b
            .index
            .into_iter()
            .map(|(p, (id, coef))| (p, (rank[id], coef)))
            .collect::<HashMap<_, _>>();
        let mut dims = vec![0; truncation + 1];
        for p in &basis {
            dims[p.len()] += 1;
        }
        let longest_nonzero = index.keys().map(Path::len).max().unwrap_or(0);
        Ok(TruncatedAlgebra {
            quiver: q.clone(),
            scalars: c.clone(),
            truncation,
            basis,
            index,
            dims,
            longest_nonzero,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn scalars(&self) -> &ScalarAssignment {
        &self.scalars
    }

    pub fn hypotheses(&self) -> Hypotheses {
        Hypotheses::of(&self.quiver, &self.scalars)
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Standard monomials, sorted in degree-lexicographic order.
    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Number of standard monomials of each degree `0..=N`.
    pub fn dims_per_degree(&self) -> &[usize] {
        &self.dims
    }

    /// Length of the longest path that survives in the quotient.
    pub fn longest_nonzero_path(&self) -> usize {
        self.longest_nonzero
    }

    /// No path of length `N` survives, so raising `N` cannot add basis
    /// elements through longer paths.
    pub fn stabilized(&self) -> bool {
        self.longest_nonzero < self.truncation
    }

    /// `(basis index, coefficient)` with `p = coefficient · basis[index]`, or
    /// `None` when `p` vanishes.
    pub fn reduce_path(&self, p: &Path) -> Result<Option<(usize, Rational)>> {
        if p.len() > self.truncation {
            return Err(Error::DegreeOverflow {
                degree: p.len(),
                truncation: self.truncation,
            });
        }
        Ok(self.index.get(p).cloned())
    }

    /// Coordinates over the standard-monomial basis.
    pub fn coordinates(&self, x: &PathVector) -> Result<HashMap<usize, Rational>> {
        let mut out: HashMap<usize, Rational> = HashMap::new();
        for (p, c) in x.terms() {
            if let Some((i, k)) = self.reduce_path(p)? {
                let e = out.entry(i).or_insert_with(Rational::zero);
                *e += c * k;
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// Canonical form: a combination of standard monomials.
    pub fn reduce(&self, x: &PathVector) -> Result<PathVector> {
        let mut out = PathVector::zero();
        for (i, c) in self.coordinates(x)? {
            out.add_term(self.basis[i].clone(), c);
        }
        Ok(out)
    }

    /// Product in the truncated algebra; concatenations longer than `N`
    /// vanish there.
    pub fn product(&self, x: &PathVector, y: &PathVector) -> Result<PathVector> {
        let xr = self.reduce(x)?;
        let yr = self.reduce(y)?;
        let mut out = PathVector::zero();
        for (p, a) in xr.terms() {
            for (r, b) in yr.terms() {
                if let Some(pr) = p.concat(r, &self.quiver) {
                    if pr.len() <= self.truncation {
                        out.add_term(pr, a * b);
                    }
                }
            }
        }
        self.reduce(&out)
    }
}
