use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{enumerate_subrings, Method, Subring};
use crate::error::Result;
use crate::partial_monoids::{recursion_bound, Shape};
use crate::truncated_rings::{RingCtx, Valuation};

/// One shape class of a census.
#[derive(Debug, Clone, Serialize)]
pub struct CensusRow {
    pub shape: Shape,
    pub count: u64,
    pub bound_exp: u32,
    pub bound: u128,
    pub equality: bool,
    pub d_shape: u32,
    pub d_ring_values: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subrings: Option<Vec<Vec<String>>>,
    #[serde(skip)]
    pub members: Vec<Subring>,
}

impl CensusRow {
    pub fn within_bound(&self) -> bool {
        (self.count as u128) <= self.bound
    }

    pub fn emit_bases(&mut self) {
        self.subrings = Some(self.members.iter().map(Subring::describe).collect());
    }
}

/// Partitions `subrings` (all in the same ambient ring) by exponent set.
pub fn census_of(subrings: &[Subring]) -> Result<Vec<CensusRow>> {
    let mut classes: BTreeMap<Vec<Valuation>, (Shape, Vec<Subring>)> = BTreeMap::new();
    for r in subrings {
        let shape = r.exponent_set();
        classes
            .entry(shape.elems().to_vec())
            .or_insert_with(|| (shape, Vec::new()))
            .1
            .push(r.clone());
    }
    let mut rows = Vec::with_capacity(classes.len());
    for (_, (shape, mut members)) in classes {
        members.sort();
        let ctx = members[0].ctx().clone();
        let bound_exp = recursion_bound(&shape)?;
        let bound = (ctx.coeff().residue_order() as u128)
            .checked_pow(bound_exp)
            .unwrap_or(u128::MAX);
        let mut d_ring_values: Vec<u32> = members.iter().map(Subring::cotangent_dim).collect();
        d_ring_values.sort_unstable();
        let count = members.len() as u64;
        rows.push(CensusRow {
            d_shape: shape.d(),
            shape,
            count,
            bound_exp,
            bound,
            equality: count as u128 == bound,
            d_ring_values,
            subrings: None,
            members,
        });
    }
    rows.sort_by(|a, b| (a.shape.len(), a.shape.elems()).cmp(&(b.shape.len(), b.shape.elems())));
    Ok(rows)
}

/// Census of all subrings of `ctx`.
pub fn census(ctx: &Arc<RingCtx>, method: Method) -> Result<Vec<CensusRow>> {
    census_of(&enumerate_subrings(ctx, method)?)
}
