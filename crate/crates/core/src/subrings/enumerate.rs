//! Complete enumeration of subrings by three independent routes.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use itertools::Itertools;

use super::extension::{lift_isomorphic, restricted_extension_in};
use super::Subring;
use crate::error::{Error, Result};
use crate::truncated_rings::RingCtx;

const MAX_SCAN_SUBSPACES: u128 = 1 << 20;
const MAX_BFS_AMBIENT: u64 = 1 << 14;
const MAX_MINIMAL_EXT_AMBIENT: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    /// Every subspace containing 1, filtered for multiplicative closure.
    SubspaceScan,
    /// Adjoin one element at a time starting from the prime subring.
    ClosureBfs,
    /// Preimages and lifts along the quotient chain.
    MinimalExt,
}

/// Every subring of `ctx`, sorted by (length, canonical basis).
pub fn enumerate_subrings(ctx: &Arc<RingCtx>, method: Method) -> Result<Vec<Subring>> {
    let mut out = match method {
        Method::SubspaceScan => subspace_scan(ctx)?,
        Method::ClosureBfs => closure_bfs(ctx)?,
        Method::MinimalExt => minimal_ext(ctx)?,
    };
    out.sort();
    Ok(out)
}

fn too_large(what: &str, ctx: &RingCtx) -> Error {
    Error::TooLarge(format!("{what} on {}", ctx.describe()))
}

fn subspace_scan(ctx: &Arc<RingCtx>) -> Result<Vec<Subring>> {
    if !ctx.is_field_kind() {
        return Err(Error::InvalidContext(
            "subspace_scan needs a field coefficient ring".into(),
        ));
    }
    let q = ctx.coeff().size();
    let n = ctx.n();
    let cols = n - 1;
    if subspace_count(q as u128, cols as u32) > MAX_SCAN_SUBSPACES {
        return Err(too_large("subspace_scan", ctx));
    }
    let one = ctx.one().into_coeffs();
    let mut out = Vec::new();

    // Subspaces containing 1 correspond to subspaces of the span of
    // x, ..., x^{n-1}; enumerate those by their reduced echelon forms.
    for rank in 0..=cols {
        for pivots in (1..n).combinations(rank) {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(i, &pc)| {
                    let pivots = &pivots;
                    (pc + 1..n)
                        .filter(move |c| !pivots.contains(c))
                        .map(move |c| (i, c))
                })
                .collect();
            for assignment in 0..(q as u64).pow(free.len() as u32) {
                let mut rows: Vec<Vec<u32>> = pivots
                    .iter()
                    .map(|&pc| {
                        let mut r = vec![0u32; n];
                        r[pc] = 1;
                        r
                    })
                    .collect();
                let mut a = assignment;
                for &(i, c) in &free {
                    rows[i][c] = (a % q as u64) as u32;
                    a /= q as u64;
                }
                rows.insert(0, one.clone());
                if is_closed_by_members(ctx, &rows) {
                    out.push(Subring::from_closed_rows(ctx.clone(), rows));
                }
            }
        }
    }
    Ok(out)
}

/// Number of subspaces of `F_q^dim`, saturating.
fn subspace_count(q: u128, dim: u32) -> u128 {
    if dim == 0 {
        return 1;
    }
    // Galois numbers: G(m+1) = 2 G(m) + (q^m - 1) G(m-1).
    let (mut prev, mut cur) = (1u128, 2u128);
    for m in 1..dim {
        let qm = q.saturating_pow(m);
        let next = cur
            .saturating_mul(2)
            .saturating_add((qm - 1).saturating_mul(prev));
        (prev, cur) = (cur, next);
    }
    cur
}

/// Multiplicative closure of a spanning set, checked against the explicit
/// member list.
fn is_closed_by_members(ctx: &RingCtx, rows: &[Vec<u32>]) -> bool {
    let q = ctx.coeff().size();
    let mut members: HashSet<Vec<u32>> = HashSet::from([vec![0u32; ctx.n()]]);
    for row in rows {
        let current: Vec<Vec<u32>> = members.iter().cloned().collect();
        for m in current {
            for c in 1..q {
                members.insert(ctx.add_raw(&m, &ctx.scale_raw(c, row)));
            }
        }
    }
    rows.iter()
        .tuple_combinations()
        .chain(rows.iter().map(|r| (r, r)))
        .all(|(a, b)| members.contains(&ctx.mul_raw(a, b)))
}

fn closure_bfs(ctx: &Arc<RingCtx>) -> Result<Vec<Subring>> {
    if ctx.size().is_none_or(|s| s > MAX_BFS_AMBIENT) {
        return Err(too_large("closure_bfs", ctx));
    }
    // Elements with zero constant term suffice: the prime subring supplies
    // every constant.
    let candidates: Vec<Vec<u32>> = ctx
        .elements()
        .map(|e| e.into_coeffs())
        .filter(|c| c[0] == 0 && c.iter().any(|&x| x != 0))
        .collect();
    let start = Subring::prime_subring(ctx.clone());
    let mut seen: HashSet<Subring> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        for a in &candidates {
            if s.module.contains_raw(a) {
                continue;
            }
            let rows = s
                .rows()
                .iter()
                .cloned()
                .chain(std::iter::once(a.clone()))
                .collect();
            let t = Subring::closure_of_rows(ctx.clone(), rows);
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

fn minimal_ext(ctx: &Arc<RingCtx>) -> Result<Vec<Subring>> {
    if ctx.size().is_none_or(|s| s > MAX_MINIMAL_EXT_AMBIENT) {
        return Err(too_large("minimal_ext", ctx));
    }
    let mut chain = vec![(**ctx).clone()];
    while let Some(next) = chain.last().unwrap().quotient() {
        chain.push(next);
    }
    chain.reverse();

    let bottom = Arc::new(chain[0].clone());
    let mut level = vec![Subring::prime_subring(bottom)];
    for parent in chain.into_iter().skip(1) {
        let parent = if parent == **ctx {
            ctx.clone()
        } else {
            Arc::new(parent)
        };
        let mut next = Vec::new();
        for b in &level {
            let ext = restricted_extension_in(&parent, b);
            let family = lift_isomorphic(&ext)?;
            next.push(ext.src);
            next.extend(family.lifts);
        }
        level = next;
    }
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(r: RingCtx) -> Arc<RingCtx> {
        Arc::new(r)
    }

    #[test]
    fn small_examples() {
        let f3 = arc(RingCtx::fq(2, 3).unwrap());
        let subs = enumerate_subrings(&f3, Method::SubspaceScan).unwrap();
        let got: Vec<Vec<String>> = subs.iter().map(Subring::describe).collect();
        assert_eq!(
            got,
            vec![vec!["1"], vec!["1", "x^2"], vec!["1", "x", "x^2"]]
        );

        let f4 = arc(RingCtx::fq(2, 4).unwrap());
        for m in [Method::SubspaceScan, Method::ClosureBfs, Method::MinimalExt] {
            assert_eq!(enumerate_subrings(&f4, m).unwrap().len(), 6);
        }

        let z = arc(RingCtx::zpn(2, 2, 2, 2).unwrap());
        let subs = enumerate_subrings(&z, Method::ClosureBfs).unwrap();
        let got: Vec<Vec<String>> = subs.iter().map(Subring::describe).collect();
        assert_eq!(got, vec![vec!["1"], vec!["1", "2x"], vec!["1", "x"]]);
        assert_eq!(enumerate_subrings(&z, Method::MinimalExt).unwrap(), subs);
    }

    #[test]
    fn galois_numbers() {
        let got: Vec<u128> = (0..6).map(|d| subspace_count(2, d)).collect();
        assert_eq!(got, vec![1, 2, 5, 16, 67, 374]);
        assert_eq!(subspace_count(3, 2), 6);
    }

    #[test]
    fn scale_limits() {
        let z = arc(RingCtx::zpn(2, 2, 2, 2).unwrap());
        assert!(matches!(
            enumerate_subrings(&z, Method::SubspaceScan),
            Err(Error::InvalidContext(_))
        ));
        let big = arc(RingCtx::fq(2, 20).unwrap());
        assert!(matches!(
            enumerate_subrings(&big, Method::ClosureBfs),
            Err(Error::TooLarge(_))
        ));
        assert!(matches!(
            enumerate_subrings(&big, Method::SubspaceScan),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn single_point_rings() {
        for ctx in [
            RingCtx::fq(5, 1).unwrap(),
            RingCtx::zpn(3, 2, 1, 2).unwrap(),
        ] {
            let ctx = arc(ctx);
            for m in [Method::ClosureBfs, Method::MinimalExt] {
                assert_eq!(enumerate_subrings(&ctx, m).unwrap().len(), 1);
            }
        }
    }
}
