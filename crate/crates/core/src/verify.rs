//! Exhaustive invariant checks over a single ambient ring.
//!
//! Every check records a tally under a law name and, on failure, a
//! [`Violation`] carrying a printable witness.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partial_monoids::{enumerate_shapes, Shape};
use crate::subrings::{
    census_of, enumerate_subrings, lift_isomorphic, restricted_extension_in, Method, Subring,
};
use crate::truncated_rings::{RingCtx, Valuation};

/// Largest ring whose element pairs are scanned by the valuation suite.
pub const MAX_VALUATION_SCAN: u64 = 1 << 10;
/// Largest subring whose members are listed to cross-check exponent sets.
const MAX_MEMBER_SCAN: u128 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Valuation,
    Bounds,
    Lifts,
    Props,
    All,
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub law: &'static str,
    pub witness: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub ring: String,
    /// Number of instances checked per law.
    pub checks: BTreeMap<&'static str, u64>,
    /// Counting steps skipped because their hypothesis failed.
    pub skipped: BTreeMap<&'static str, u64>,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new(ctx: &RingCtx) -> Self {
        Self {
            ring: ctx.describe(),
            ..Self::default()
        }
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn check(&mut self, law: &'static str, ok: bool, witness: impl FnOnce() -> String) {
        *self.checks.entry(law).or_default() += 1;
        if !ok {
            self.violations.push(Violation {
                law,
                witness: witness(),
            });
        }
    }

    fn skip(&mut self, law: &'static str) {
        *self.skipped.entry(law).or_default() += 1;
    }

    pub fn merge(&mut self, other: Report) {
        for (k, v) in other.checks {
            *self.checks.entry(k).or_default() += v;
        }
        for (k, v) in other.skipped {
            *self.skipped.entry(k).or_default() += v;
        }
        self.violations.extend(other.violations);
    }

    pub fn count(&self, law: &str) -> u64 {
        self.checks.get(law).copied().unwrap_or(0)
    }
}

/// `0` for field coefficients, `1` for Z/p^N.
fn offset(ctx: &RingCtx) -> u32 {
    u32::from(!ctx.is_field_kind())
}

fn show(r: &Subring) -> String {
    format!("{{{}}}", r.describe().join(", "))
}

fn show_nu(v: Option<Valuation>) -> String {
    v.map_or_else(|| "inf".to_string(), |v| v.to_string())
}

/// Strictness, the non-Archimedean law and monomial-likeness of `ν`, over
/// every pair of elements.
pub fn valuation_laws(ctx: &RingCtx, report: &mut Report) -> Result<()> {
    if ctx.size().is_none_or(|s| s > MAX_VALUATION_SCAN) {
        return Err(Error::TooLarge(format!(
            "valuation scan on {}",
            ctx.describe()
        )));
    }
    let domain = ctx.domain();
    let elems: Vec<Vec<u32>> = ctx.elements().map(|e| e.into_coeffs()).collect();
    let nus: Vec<Option<Valuation>> = elems.iter().map(|a| ctx.nu_raw(a)).collect();
    let coeff = ctx.coeff();
    let unit_consts: Vec<u32> = (0..coeff.size()).filter(|&c| coeff.is_unit(c)).collect();
    let units: Vec<&Vec<u32>> = elems.iter().filter(|a| coeff.is_unit(a[0])).collect();

    let mut seen_values = std::collections::BTreeSet::new();
    for (i, a) in elems.iter().enumerate() {
        if let Some(v) = nus[i] {
            seen_values.insert(v);
        }
        for (j, b) in elems.iter().enumerate() {
            let (Some(va), Some(vb)) = (nus[i], nus[j]) else {
                continue;
            };
            let fmt = |x: &[u32]| ctx.format_raw(x);

            if let Some(sum) = domain.add(va, vb) {
                let vab = ctx.nu_raw(&ctx.mul_raw(a, b));
                report.check("strictness", vab == Some(sum), || {
                    format!(
                        "nu(({})*({})) = {} but nu sum is {sum}",
                        fmt(a),
                        fmt(b),
                        show_nu(vab)
                    )
                });
            }

            if j < i {
                continue;
            }
            let vs = ctx.nu_raw(&ctx.add_raw(a, b));
            let lo = va.min(vb);
            let ok = match vs {
                None => va == vb,
                Some(v) => v >= lo && (va == vb || v == lo),
            };
            report.check("non_archimedean", ok, || {
                format!(
                    "nu({} + {}) = {} with nu values {va}, {vb}",
                    fmt(a),
                    fmt(b),
                    show_nu(vs)
                )
            });

            if va == vb {
                let works = |u: &[u32]| {
                    let d = ctx.sub_raw(a, &ctx.mul_raw(u, b));
                    ctx.nu_raw(&d).is_none_or(|w| w > va)
                };
                let ok = unit_consts
                    .iter()
                    .any(|&c| works(&ctx.monomial(c, 0).into_coeffs()))
                    || units.iter().any(|u| works(u));
                report.check("monomial_like", ok, || {
                    format!("no unit u with nu({} - u*({})) > {va}", fmt(a), fmt(b))
                });
            }
        }
    }
    let all_points: std::collections::BTreeSet<Valuation> = domain.points().into_iter().collect();
    report.check("surjectivity", seen_values == all_points, || {
        format!("values of nu miss part of {domain}")
    });
    Ok(())
}

/// Every census row respects its recursion bound, and the realized shapes
/// are exactly the realizable ones.
pub fn bound_laws(ctx: &RingCtx, subrings: &[Subring], report: &mut Report) -> Result<()> {
    let rows = census_of(subrings)?;
    for row in &rows {
        report.check("census_bound", row.within_bound(), || {
            format!(
                "shape {}: {} subrings exceed bound {}",
                row.shape, row.count, row.bound
            )
        });
    }
    let expected: Vec<Shape> = enumerate_shapes(ctx.domain(), !ctx.is_field_kind())?;
    let realized: Vec<&Shape> = rows.iter().map(|r| &r.shape).collect();
    let same = expected.len() == realized.len()
        && expected
            .iter()
            .zip(&realized)
            .all(|(a, b)| a.elems() == b.elems());
    report.check("realizable_shapes", same, || {
        let exp: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
        let got: Vec<String> = realized.iter().map(|s| s.to_string()).collect();
        format!("realizable {exp:?} but realized {got:?}")
    });
    Ok(())
}

/// Laws about a single subring and its restricted extension.
pub fn structural_laws(ctx: &Arc<RingCtx>, subrings: &[Subring], report: &mut Report) {
    let parent = Arc::new(ctx.parent());
    let q = ctx.coeff().residue_order() as u128;
    let off = offset(ctx);
    let top = ctx.domain().step_down().map(|(v, _)| v);

    for r in subrings {
        let shape = r.exponent_set();
        let ideal = r.ideal_data();
        let d_ring = ideal.cotangent_dim();
        let d_shape = shape.d();

        report.check(
            "size_law",
            Some(r.cardinality()) == q.checked_pow(shape.len() as u32),
            || {
                format!(
                    "{} has {} elements but shape {shape}",
                    show(r),
                    r.cardinality()
                )
            },
        );
        if r.cardinality() <= MAX_MEMBER_SCAN {
            let scanned = r.exponent_set_by_scan();
            report.check(
                "exponent_set_scan",
                scanned.elems() == shape.elems(),
                || format!("{}: pivots give {shape}, scan gives {scanned}", show(r)),
            );
        }
        report.check("cotangent_bound", d_ring + off <= d_shape, || {
            format!(
                "{}: d(R) = {d_ring}, shape {shape} has d = {d_shape}",
                show(r)
            )
        });

        if let (Some(top), Some(z)) = (top, ctx.kernel_generator()) {
            let gens = shape.minimal_generators();
            if shape.contains(top) && !gens.contains(&top) {
                report.check("tail_containment", ideal.small().contains(&z), || {
                    format!(
                        "{}: top point {top} is not a generator but z not in small",
                        show(r)
                    )
                });
            }
        }

        let ext = restricted_extension_in(&parent, r);
        report.check("extension_is_minimal", ext.is_minimal, || {
            format!("preimage of {} is not a minimal extension", show(r))
        });
        let Ok(family) = lift_isomorphic(&ext) else {
            continue;
        };
        let d_src = ext.src.cotangent_dim();
        let jumps = d_src == d_ring + 1;
        report.check(
            "lift_trichotomy",
            family.exists == !ext.kernel_in_small && family.exists == jumps,
            || {
                format!(
                    "{}: exists={}, kernel_in_small={}, d(src)={d_src}, d(B)={d_ring}",
                    show(r),
                    family.exists,
                    ext.kernel_in_small
                )
            },
        );
        let small = ext.src.ideal_data().small().clone();
        for a in &family.lifts {
            report.check(
                "lift_contains_small",
                small.is_subset_of(a.module()),
                || format!("lift {} of {} misses part of small", show(a), show(r)),
            );
        }

        let src_shape = ext.src.exponent_set();
        if jumps && d_ring + off == d_shape {
            report.check("equality_lifting", d_src + off == src_shape.d(), || {
                format!(
                    "{} attains its bound and the dimension jumps, but preimage {} has d = {d_src} against {}",
                    show(r),
                    show(&ext.src),
                    src_shape.d()
                )
            });
        }
        if d_src + off == src_shape.d() {
            report.check("equality_propagation", d_ring + off == d_shape, || {
                format!(
                    "preimage {} attains its bound but {} has d = {d_ring} against {d_shape}",
                    show(&ext.src),
                    show(r)
                )
            });
        }
    }
}

/// The available enumerators agree; returns their common list.
pub fn oracle_agreement(ctx: &Arc<RingCtx>, report: &mut Report) -> Result<Vec<Subring>> {
    let primary = enumerate_subrings(ctx, Method::MinimalExt)?;
    for m in [Method::SubspaceScan, Method::ClosureBfs] {
        match enumerate_subrings(ctx, m) {
            Ok(other) => report.check("oracle_agreement", other == primary, || {
                format!(
                    "{m:?} found {} subrings, minimal_ext {}",
                    other.len(),
                    primary.len()
                )
            }),
            Err(Error::TooLarge(_) | Error::InvalidContext(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(primary)
}

/// Subrings of `ctx.parent()` from an enumerator independent of the lift
/// construction.
pub fn parent_oracle(ctx: &RingCtx) -> Result<(Arc<RingCtx>, Vec<Subring>)> {
    let parent = Arc::new(ctx.parent());
    let method = if parent.is_field_kind() {
        Method::SubspaceScan
    } else {
        Method::ClosureBfs
    };
    let subs = match enumerate_subrings(&parent, method) {
        Err(Error::TooLarge(_)) if method == Method::SubspaceScan => {
            enumerate_subrings(&parent, Method::ClosureBfs)?
        }
        other => other?,
    };
    Ok((parent, subs))
}

/// Lift counts, disjointness of projected shape classes and the counting
/// step, all against an oracle census of the parent ring.
pub fn lift_laws(
    ctx: &Arc<RingCtx>,
    subrings: &[Subring],
    parent: &Arc<RingCtx>,
    parent_subrings: &[Subring],
    report: &mut Report,
) {
    let q = ctx.coeff().residue_order() as u128;
    let off = offset(ctx);
    let z = parent.kernel_generator().expect("parent has a quotient");
    let top = parent
        .domain()
        .step_down()
        .map(|(v, _)| v)
        .expect("parent has a top point");

    let mut lifts_of: HashMap<Subring, Vec<Subring>> = HashMap::new();
    let mut class_of_image: HashMap<Subring, Vec<Valuation>> = HashMap::new();
    let mut class_sizes: HashMap<Vec<Valuation>, u128> = HashMap::new();
    for a in parent_subrings {
        let b = a.project_to(ctx);
        let shape = a.exponent_set();
        if !shape.contains(top) {
            *class_sizes.entry(shape.elems().to_vec()).or_default() += 1;
            if let Some(prev) = class_of_image.insert(b.clone(), shape.elems().to_vec()) {
                report.check("image_disjointness", prev == shape.elems(), || {
                    format!("{} is the image of shapes {prev:?} and {shape}", show(&b))
                });
            }
        }
        if !a.contains(&z) {
            lifts_of.entry(b).or_default().push(a.clone());
        }
    }

    let mut classes: BTreeMap<Vec<Valuation>, ShapeStep> = BTreeMap::new();
    for b in subrings {
        let ext = restricted_extension_in(parent, b);
        let d_b = b.cotangent_dim();
        let mut oracle = lifts_of.remove(b).unwrap_or_default();
        oracle.sort();
        let expected = if ext.kernel_in_small { 0 } else { q.pow(d_b) };
        let law = if ext.kernel_in_small {
            "lift_count_obstructed"
        } else {
            "lift_count"
        };
        report.check(law, oracle.len() as u128 == expected, || {
            format!(
                "{}: oracle finds {} lifts, expected {expected} (kernel_in_small={})",
                show(b),
                oracle.len(),
                ext.kernel_in_small
            )
        });
        let jumps = ext.src.cotangent_dim() == d_b + 1;
        report.check(
            "lift_trichotomy_oracle",
            (!oracle.is_empty()) == jumps,
            || {
                format!(
                    "{}: {} oracle lifts but cotangent jump is {jumps}",
                    show(b),
                    oracle.len()
                )
            },
        );
        if let Ok(mut family) = lift_isomorphic(&ext) {
            family.lifts.sort();
            report.check("lift_family_matches_oracle", family.lifts == oracle, || {
                format!(
                    "{}: construction gives {} lifts, oracle {}",
                    show(b),
                    family.lifts.len(),
                    oracle.len()
                )
            });
        }

        let shape = b.exponent_set();
        let d_shape = shape.d();
        let step = classes
            .entry(shape.elems().to_vec())
            .or_insert_with(|| ShapeStep {
                shape,
                all_jump: true,
                all_extremal: true,
                count: 0,
                fiber_sum: 0,
            });
        step.all_jump &= jumps;
        step.all_extremal &= d_b + off == d_shape;
        step.count += 1;
        if !ext.kernel_in_small {
            step.fiber_sum += q.pow(d_b);
        }
    }

    for (elems, step) in classes {
        let shape = &step.shape;
        let lifted = class_sizes.get(&elems).copied().unwrap_or(0);
        report.check("fiber_sum", lifted == step.fiber_sum, || {
            format!(
                "shape {shape}: {lifted} subrings one step up, fibres sum to {}",
                step.fiber_sum
            )
        });
        let expected = q.pow(shape.d().saturating_sub(off)) * step.count;
        let witness = || {
            format!(
                "shape {shape}: {lifted} subrings one step up, expected {expected} = {} * {}",
                q.pow(shape.d().saturating_sub(off)),
                step.count
            )
        };
        if step.all_jump {
            report.check("counting_step", lifted == expected, witness);
        } else {
            report.skip("counting_step");
        }
        if step.all_jump && step.all_extremal {
            report.check("counting_step_extremal", lifted == expected, witness);
        }
    }
}

/// Per-shape data for one step up the quotient chain.
struct ShapeStep {
    shape: Shape,
    /// Every member has `d(φ^{-1}(B)) = d(B) + 1`.
    all_jump: bool,
    /// Every member attains the cotangent bound of the shape.
    all_extremal: bool,
    count: u128,
    /// `Σ q^{d(B)}` over unobstructed members.
    fiber_sum: u128,
}

/// Runs `suite` on `ctx`.
pub fn run_suite(ctx: &Arc<RingCtx>, suite: Suite) -> Result<Report> {
    let mut report = Report::new(ctx);
    let wants = |s: Suite| suite == s || suite == Suite::All;
    if wants(Suite::Valuation) {
        valuation_laws(ctx, &mut report)?;
    }
    if suite == Suite::Valuation {
        return Ok(report);
    }
    let subrings = if wants(Suite::Props) {
        oracle_agreement(ctx, &mut report)?
    } else {
        enumerate_subrings(ctx, Method::MinimalExt)?
    };
    if wants(Suite::Bounds) {
        bound_laws(ctx, &subrings, &mut report)?;
    }
    if wants(Suite::Props) {
        structural_laws(ctx, &subrings, &mut report);
    }
    if wants(Suite::Lifts) {
        let (parent, parent_subrings) = parent_oracle(ctx)?;
        lift_laws(ctx, &subrings, &parent, &parent_subrings, &mut report);
    }
    Ok(report)
}
