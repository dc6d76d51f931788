//! Canonical row bases for submodules of an ambient ring, viewed as a
//! module over its coefficient ring.
//!
//! Over a field this is the reduced row-echelon form. Over Z/p^N it is the
//! Howell form: one row per pivot column, pivot entry exactly `p^v`, entries
//! above a pivot reduced into `[0, p^v)`, and for every pivot row the
//! multiple that kills its pivot lies in the span of the later rows. The
//! `x^{n-1}` coordinate of `R_{n,N,k}` only has length `k`, which the
//! annihilator step accounts for.

use crate::truncated_rings::RingCtx;

/// Pivot column and the valuation of the pivot entry.
pub(crate) fn pivot(ctx: &RingCtx, row: &[u32]) -> Option<(usize, u32)> {
    let (j, &c) = row.iter().enumerate().find(|(_, &c)| c != 0)?;
    Some((j, ctx.coeff().val(c)?))
}

fn is_zero(row: &[u32]) -> bool {
    row.iter().all(|&c| c == 0)
}

fn axpy(ctx: &RingCtx, target: &mut Vec<u32>, c: u32, row: &[u32]) {
    if c != 0 {
        *target = ctx.sub_raw(target, &ctx.scale_raw(c, row));
    }
}

pub(crate) fn canonicalize(ctx: &RingCtx, rows: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let coeff = ctx.coeff();
    let mut work: Vec<Vec<u32>> = rows
        .into_iter()
        .map(|mut r| {
            ctx.normalize(&mut r);
            r
        })
        .filter(|r| !is_zero(r))
        .collect();
    let mut out: Vec<Vec<u32>> = Vec::new();

    for j in 0..ctx.n() {
        let best = work
            .iter()
            .enumerate()
            .filter_map(|(i, r)| coeff.val(r[j]).map(|v| (v, i)))
            .min();
        let Some((v, idx)) = best else { continue };
        let raw = work.swap_remove(idx);
        let piv = ctx.scale_raw(coeff.unit_part_inv(raw[j]), &raw);
        debug_assert_eq!(piv[j], coeff.pi_pow(v));

        for r in work.iter_mut() {
            if r[j] != 0 {
                let c = coeff.quo_pi_pow(r[j], v);
                axpy(ctx, r, c, &piv);
                debug_assert_eq!(r[j], 0);
            }
        }
        // the multiple of the pivot row that vanishes in column j
        let ann = ctx.scale_raw(coeff.pi_pow(ctx.col_len(j) - v), &piv);
        if !is_zero(&ann) {
            work.push(ann);
        }
        work.retain(|r| !is_zero(r));
        out.push(piv);
    }
    debug_assert!(work.is_empty());

    for i in 0..out.len() {
        let (j, v) = pivot(ctx, &out[i]).expect("pivot rows are nonzero");
        let (above, below) = out.split_at_mut(i);
        let piv = &below[0];
        for h in above.iter_mut() {
            let c = coeff.quo_pi_pow(h[j], v);
            axpy(ctx, h, c, piv);
        }
    }
    out
}

/// Remainder of `v` after reduction by a canonical basis; zero iff `v` lies
/// in the span.
pub(crate) fn reduce(ctx: &RingCtx, basis: &[Vec<u32>], v: &[u32]) -> Vec<u32> {
    let mut rem = v.to_vec();
    ctx.normalize(&mut rem);
    for row in basis {
        let (j, val) = pivot(ctx, row).expect("pivot rows are nonzero");
        let c = ctx.coeff().quo_pi_pow(rem[j], val);
        axpy(ctx, &mut rem, c, row);
    }
    rem
}

pub(crate) fn contains(ctx: &RingCtx, basis: &[Vec<u32>], v: &[u32]) -> bool {
    is_zero(&reduce(ctx, basis, v))
}

/// log of the number of elements, base q (fields) or p (Z/p^N).
pub(crate) fn length(ctx: &RingCtx, basis: &[Vec<u32>]) -> u32 {
    basis
        .iter()
        .map(|row| {
            let (j, v) = pivot(ctx, row).expect("pivot rows are nonzero");
            ctx.col_len(j) - v
        })
        .sum()
}

/// Number of coefficient choices per row that give distinct members.
pub(crate) fn row_multiplier_counts(ctx: &RingCtx, basis: &[Vec<u32>]) -> Vec<u32> {
    basis
        .iter()
        .map(|row| {
            let (j, v) = pivot(ctx, row).expect("pivot rows are nonzero");
            ctx.coeff().residue_order().pow(ctx.col_len(j) - v)
        })
        .collect()
}

/// Every member of the span of a canonical basis, each exactly once.
pub(crate) fn members(ctx: &RingCtx, basis: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let counts = row_multiplier_counts(ctx, basis);
    let mut out = vec![vec![0u32; ctx.n()]];
    for (row, &count) in basis.iter().zip(&counts) {
        let multiples: Vec<Vec<u32>> = (0..count).map(|c| ctx.scale_raw(c, row)).collect();
        out = out
            .iter()
            .flat_map(|m| multiples.iter().map(move |r| ctx.add_raw(m, r)))
            .collect();
    }
    out
}
