//! Restriction of the one-step quotient maps to subrings and the affine
//! family of subrings mapping isomorphically onto a given target.

use std::sync::Arc;

use serde::Serialize;

use super::{Submodule, Subring};
use crate::error::{Error, Result};
use crate::truncated_rings::{RingCtx, RingElem};

/// `φ: R -> B` where `R = φ^{-1}(B)` and `ker φ = span(z)`.
#[derive(Debug, Clone)]
pub struct MinimalExtension {
    pub src: Subring,
    pub dst: Subring,
    pub kernel_gen: RingElem,
    /// Kernel is one-dimensional over the residue field and killed by `m_R`.
    pub is_minimal: bool,
    /// `z ∈ m_R²` (fields) resp. `z ∈ m_R² + pR`.
    pub kernel_in_small: bool,
}

#[derive(Debug, Clone)]
pub struct LiftFamily {
    pub base: MinimalExtension,
    pub exists: bool,
    /// `d(dst)`.
    pub dim: u32,
    pub lifts: Vec<Subring>,
}

pub fn restricted_extension(b: &Subring) -> MinimalExtension {
    restricted_extension_in(&Arc::new(b.ctx().parent()), b)
}

/// As [`restricted_extension`] with a caller-supplied `parent` (must equal
/// `b.ctx().parent()`).
pub fn restricted_extension_in(parent: &Arc<RingCtx>, b: &Subring) -> MinimalExtension {
    let src = b.preimage_in(parent);
    let z = parent.kernel_generator().expect("parent has a quotient");
    let ideal = src.ideal_data();

    let kernel = Submodule::span(parent.clone(), std::slice::from_ref(&z));
    let killed_by_m = ideal
        .m
        .rows()
        .iter()
        .all(|r| parent.mul_raw(r, z.coeffs()).iter().all(|&c| c == 0));
    let is_minimal = kernel.length() == 1 && killed_by_m;
    let kernel_in_small = ideal.small().contains(&z);

    MinimalExtension {
        src,
        dst: b.clone(),
        kernel_gen: z,
        is_minimal,
        kernel_in_small,
    }
}

/// All subrings of `ext.src`'s ambient ring mapping isomorphically onto
/// `ext.dst`.
///
/// With `W = m_R / small` and a basis `z̄, w_1, ..., w_d` of `W`, the lifts
/// are `coeff·1 + span{w_i - λ_i z} + small` for `λ` ranging over
/// `(residue field)^d`.
pub fn lift_isomorphic(ext: &MinimalExtension) -> Result<LiftFamily> {
    if !ext.is_minimal {
        return Err(Error::NotMinimal);
    }
    let dim = ext.dst.cotangent_dim();
    if ext.kernel_in_small {
        return Ok(LiftFamily {
            base: ext.clone(),
            exists: false,
            dim,
            lifts: Vec::new(),
        });
    }

    let ctx = ext.src.ctx().clone();
    let ideal = ext.src.ideal_data();
    let small = ideal.small();
    let z = ext.kernel_gen.coeffs().to_vec();

    let mut acc = small.extended([z.clone()]);
    let mut complement: Vec<Vec<u32>> = Vec::new();
    for g in ideal.m.rows() {
        if !acc.contains_raw(g) {
            complement.push(g.clone());
            acc = acc.extended([g.clone()]);
        }
    }
    debug_assert_eq!(complement.len() as u32, ideal.cotangent_dim() - 1);
    debug_assert_eq!(complement.len() as u32, dim);

    let reps = ctx.coeff().residue_reps();
    let d = complement.len();
    let total = (reps.len() as u64).pow(d as u32);
    let base_rows: Vec<Vec<u32>> = std::iter::once(ctx.one().into_coeffs())
        .chain(small.rows().iter().cloned())
        .collect();

    let lifts = (0..total)
        .map(|mut idx| {
            let shifted = complement.iter().map(|w| {
                let lambda = reps[(idx % reps.len() as u64) as usize];
                idx /= reps.len() as u64;
                ctx.sub_raw(w, &ctx.scale_raw(lambda, &z))
            });
            let rows = base_rows.iter().cloned().chain(shifted).collect();
            Subring::from_closed_rows(ctx.clone(), rows)
        })
        .collect();

    Ok(LiftFamily {
        base: ext.clone(),
        exists: true,
        dim,
        lifts,
    })
}

/// JSON view of a lift family.
#[derive(Debug, Serialize)]
pub struct LiftReport {
    pub target_ring: String,
    pub target: Vec<String>,
    pub source_ring: String,
    pub preimage: Vec<String>,
    pub kernel_generator: String,
    pub is_minimal: bool,
    pub kernel_in_small: bool,
    pub exists: bool,
    pub dim: u32,
    pub count: usize,
    pub lifts: Vec<Vec<String>>,
}

impl LiftFamily {
    pub fn report(&self) -> LiftReport {
        let src_ctx = self.base.src.ctx();
        LiftReport {
            target_ring: self.base.dst.ctx().describe(),
            target: self.base.dst.describe(),
            source_ring: src_ctx.describe(),
            preimage: self.base.src.describe(),
            kernel_generator: src_ctx.format(&self.base.kernel_gen),
            is_minimal: self.base.is_minimal,
            kernel_in_small: self.base.kernel_in_small,
            exists: self.exists,
            dim: self.dim,
            count: self.lifts.len(),
            lifts: self.lifts.iter().map(Subring::describe).collect(),
        }
    }
}
