//! Named instances used by the tests, the acceptance suite and the guide.

use std::sync::Arc;

use crate::error::Result;
use crate::field::Field;
use crate::grading::{GradedAlgebra, LocalIdeal, LocalRing};
use crate::groebner::Ideal;
use crate::poly::{PolyRing, Polynomial};

pub fn parse_all<F: Field>(ring: &Arc<PolyRing<F>>, exprs: &[&str]) -> Result<Vec<Polynomial<F>>> {
    exprs.iter().map(|e| Polynomial::parse(ring, e)).collect()
}

/// A local ring with an ideal `I` and a candidate reduction `J`.
#[derive(Clone, Debug)]
pub struct ReductionInstance<F: Field> {
    pub ring: LocalRing<F>,
    pub i: LocalIdeal<F>,
    pub j: LocalIdeal<F>,
}

/// `I = (x⁷, x⁶y, x²y⁵, y⁷)` with `J = (x⁷, y⁷)` in `k[x,y]`: a minimal
/// reduction with respect to which `I` is not two-standard.
pub fn seven_powers<F: Field>(field: F) -> Result<ReductionInstance<F>> {
    let r = PolyRing::new(field, ["x", "y"]);
    let ring = LocalRing::polynomial(&r);
    let i = ring.ideal(parse_all(&r, &["x^7", "x^6*y", "x^2*y^5", "y^7"])?)?;
    let j = ring.ideal(parse_all(&r, &["x^7", "y^7"])?)?;
    Ok(ReductionInstance { ring, i, j })
}

/// The Rees algebra of the maximal ideal of `k[X,Y,Z]/(X³+Y³+Z³)`, presented
/// over `k[x,y,z,u,v,w]`, with the linear system of parameters
/// `(x, y+u, z+v)` and a cycle of degree three.
#[derive(Clone, Debug)]
pub struct ReesCubic<F: Field> {
    pub algebra: GradedAlgebra<F>,
    pub forms: Vec<Polynomial<F>>,
    pub cycle: Vec<Polynomial<F>>,
}

pub const REES_CUBIC_RELATIONS: [&str; 7] = [
    "x^3 + y^3 + z^3",
    "x^2*u + y^2*v + z^2*w",
    "x*u^2 + y*v^2 + z*w^2",
    "u^3 + v^3 + w^3",
    "y*w - z*v",
    "x*w - z*u",
    "x*v - y*u",
];

pub fn rees_cubic<F: Field>(field: F) -> Result<ReesCubic<F>> {
    let r = PolyRing::new(field, ["x", "y", "z", "u", "v", "w"]);
    let algebra = GradedAlgebra::new(Ideal::new(&r, parse_all(&r, &REES_CUBIC_RELATIONS)?)?)?;
    Ok(ReesCubic {
        forms: parse_all(&r, &["x", "y + u", "z + v"])?,
        cycle: parse_all(&r, &["x^2 - y*v + w^2", "y^2 - z*w", "z^2"])?,
        algebra,
    })
}

/// The Rees algebra above viewed as a local ring at its irrelevant ideal.
/// It is not Cohen–Macaulay: the system of parameters `(x, y+u, z+v)` has
/// nonvanishing first Koszul homology.
pub fn rees_cubic_local<F: Field>(field: F) -> Result<ReductionInstance<F>> {
    let r = PolyRing::new(field, ["x", "y", "z", "u", "v", "w"]);
    let ring = LocalRing::quotient(&r, parse_all(&r, &REES_CUBIC_RELATIONS)?, false)?;
    let i = ring.maximal();
    let j = ring.ideal(parse_all(&r, &["x", "y + u", "z + v"])?)?;
    Ok(ReductionInstance { ring, i, j })
}

/// `k[x,y,z]/(x⁵+y⁵+z⁵)`, a two-dimensional hypersurface (hence
/// Cohen–Macaulay) of multiplicity five.
pub fn fermat_quintic<F: Field>(field: F) -> Result<LocalRing<F>> {
    let r = PolyRing::new(field, ["x", "y", "z"]);
    LocalRing::quotient(&r, parse_all(&r, &["x^5 + y^5 + z^5"])?, true)
}
