//! The potential of a triangulation's quiver, its cyclic derivatives, and the
//! Jacobian algebra computed two ways: a truncated quotient by exact
//! elimination ([`oracle`]) and a normal form by rewriting ([`rewrite`]).

pub mod oracle;
pub mod rewrite;

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::path::{Path, PathVector, Rational, ScalarAssignment};
use crate::quiver::{Arrow, OrbitKind, Quiver};

pub use oracle::{truncated_quotient, TruncatedAlgebra};
pub use rewrite::{multiply, normal_form, rewrite};

/// Which of the finite-dimensionality hypotheses hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    pub star: bool,
    pub diamond: bool,
    /// Product of the scalars differs from 1; only reported under (♦).
    pub scalar_product_ok: Option<bool>,
    pub theorems_apply: bool,
}

impl Hypotheses {
    pub fn of(q: &Quiver, c: &ScalarAssignment) -> Self {
        let cond = q.conditions();
        let scalar_product_ok = cond.diamond.then(|| c.product() != Rational::one());
        Hypotheses {
            star: cond.star,
            diamond: cond.diamond,
            scalar_product_ok,
            theorems_apply: cond.star || (cond.diamond && scalar_product_ok == Some(true)),
        }
    }

    /// Why the theorems do not apply, if they don't.
    pub fn failure_reason(&self) -> Option<String> {
        if self.theorems_apply {
            None
        } else if self.diamond {
            Some("product of scalars equals 1".into())
        } else {
            Some("quiver satisfies neither (⋆) nor (♦)".into())
        }
    }

    pub fn require(&self) -> Result<()> {
        match self.failure_reason() {
            None => Ok(()),
            Some(r) => Err(Error::HypothesesNotMet(r)),
        }
    }
}

fn require_valid(q: &Quiver) -> Result<()> {
    let v = q.invariant_violations();
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidQuiver(v.join("; ")))
    }
}

/// Sum of the triangle 3-cycles minus the scaled puncture cycles, each
/// written from the smallest arrow of its orbit.
pub fn potential(q: &Quiver, c: &ScalarAssignment) -> Result<PathVector> {
    require_valid(q)?;
    c.check_for(q)?;
    let mut w = PathVector::zero();
    for class in q.orbit_partition(OrbitKind::F).classes {
        let a = class[0];
        w.add_term(
            Path::from_arrows(q, vec![a, q.f(a), q.f(q.f(a))]),
            Rational::one(),
        );
    }
    for class in q.orbit_partition(OrbitKind::G).classes {
        let b = class[0];
        w.add_term(Path::from_arrows(q, q.g_chain(b, q.n(b))), -c.of(q, b));
    }
    Ok(w)
}

/// Cyclic derivative of a linear combination of cycles with respect to `a`.
pub fn cyclic_derivative(w: &PathVector, a: Arrow, q: &Quiver) -> Result<PathVector> {
    let mut out = PathVector::zero();
    for (p, coef) in w.terms() {
        if p.is_empty() || !p.is_cycle(q) {
            return Err(Error::Precondition(format!("term {p} is not a cycle")));
        }
        for (j, &b) in p.arrows.iter().enumerate() {
            if b != a {
                continue;
            }
            let mut arrows = p.arrows[j + 1..].to_vec();
            arrows.extend_from_slice(&p.arrows[..j]);
            let path = Path {
                source: q.target(a),
                arrows,
            };
            out.add_term(path, coef.clone());
        }
    }
    Ok(out)
}

/// `∂_a W` for every arrow, in arrow order.
pub fn jacobian_relations(q: &Quiver, c: &ScalarAssignment) -> Result<Vec<PathVector>> {
    let w = potential(q, c)?;
    q.arrows().map(|a| cyclic_derivative(&w, a, q)).collect()
}

/// Generators of the ideal in the quiver-with-relations presentation: the
/// commutativity relations `a f(a) - c bar(a) g(bar a) ... g^(n-2)(bar a)`
/// and, under (⋆), the zero relations `b f(b) g(f(b))` for `b` the smallest
/// arrow of each h-orbit.
pub fn presentation_relations(q: &Quiver, c: &ScalarAssignment) -> Result<Vec<PathVector>> {
    let hyp = Hypotheses::of(q, c);
    hyp.require()?;
    let mut out = Vec::new();
    for a in q.arrows() {
        let b = q.bar(a);
        let lhs = PathVector::from_path(Path::from_arrows(q, vec![a, q.f(a)]));
        let rhs = PathVector::term(
            Path::from_arrows(q, q.g_chain(b, q.n(b) - 1)),
            c.of(q, b).clone(),
        );
        out.push(lhs.sub(&rhs));
    }
    if hyp.star {
        for class in q.orbit_partition(OrbitKind::H).classes {
            let b = class[0];
            out.push(PathVector::from_path(Path::from_arrows(
                q,
                vec![b, q.f(b), q.g(q.f(b))],
            )));
        }
    }
    Ok(out)
}

/// The two 3-cycles and two scaled g-cycles at `i` all equal `z_i`; this is
/// the g-cycle of the smallest arrow leaving `i`, scaled by its puncture's
/// scalar.
pub fn socle_element(q: &Quiver, c: &ScalarAssignment, i: usize) -> PathVector {
    let a = q.out_arrows(i)[0];
    PathVector::term(Path::from_arrows(q, q.g_chain(a, q.n(a))), c.of(q, a).clone())
}
