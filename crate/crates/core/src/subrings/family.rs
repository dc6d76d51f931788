//! Subalgebras generated by `x^a + x^{a+3}, x^{a+1}, x^{a+2}` in
//! `K[x]/x^{2a+6}`, where the cotangent dimension (3) falls strictly below
//! the number of generators of the exponent set (4).

use std::sync::Arc;

use serde::Serialize;

use super::Subring;
use crate::coefficients::FieldCtx;
use crate::error::{Error, Result};
use crate::truncated_rings::RingCtx;

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub a: u32,
    pub q: u32,
    pub n: u32,
    pub generators: Vec<String>,
    pub basis: Vec<String>,
    pub exponent_set: Vec<u32>,
    pub minimal_generators: Vec<u32>,
    pub d_shape: u32,
    pub d_ring: u32,
    /// `g1·g3 - g2² = x^{2a+5}` holds coefficient-exactly.
    pub witness_holds: bool,
    pub witness: String,
    /// `d_ring = 3 < 4 = d_shape`.
    pub gap_holds: bool,
    /// Generators of the exponent set are `{a, a+1, a+2, 2a+5}`.
    pub generators_match: bool,
}

pub fn counterexample_family(a: u32, field: FieldCtx) -> Result<FamilyReport> {
    if a < 6 {
        return Err(Error::OutOfFamily(a));
    }
    let q = field.order();
    let n = 2 * a + 6;
    let ctx = Arc::new(RingCtx::poly_over_field(field, n as usize)?);
    let g1 = ctx.parse(&format!("x^{a}+x^{}", a + 3))?;
    let g2 = ctx.monomial(1, a as usize + 1);
    let g3 = ctx.monomial(1, a as usize + 2);
    let gens = [g1, g2, g3];
    let r = Subring::closure(ctx.clone(), &gens);

    let shape = r.exponent_set();
    let minimal_generators: Vec<u32> = shape.minimal_generators().iter().map(|v| v.deg).collect();
    let d_shape = minimal_generators.len() as u32;
    let d_ring = r.cotangent_dim();

    let lhs = ctx.sub(&ctx.mul(&gens[0], &gens[2])?, &ctx.mul(&gens[1], &gens[1])?)?;
    let witness_holds = lhs == ctx.monomial(1, 2 * a as usize + 5);

    Ok(FamilyReport {
        a,
        q,
        n,
        generators: gens.iter().map(|g| ctx.format(g)).collect(),
        basis: r.describe(),
        exponent_set: shape.degrees(),
        generators_match: minimal_generators == [a, a + 1, a + 2, 2 * a + 5],
        minimal_generators,
        d_shape,
        d_ring,
        witness_holds,
        witness: format!("g1*g3 - g2^2 = {}", ctx.format(&lhs)),
        gap_holds: d_ring == 3 && d_shape == 4,
    })
}
