//! Subrings of the ambient rings, held as canonical row bases.
//!
//! Over `F_q[x]/x^n` "subring" means unital `F_q`-subalgebra; over
//! `R_{n,N,k}` it means unital subring (automatically a Z/p^N-submodule).

mod census;
mod enumerate;
mod extension;
mod family;
pub(crate) mod howell;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::partial_monoids::Shape;
use crate::truncated_rings::{RingCtx, RingElem, Valuation};

pub use census::{census, census_of, CensusRow};
pub use enumerate::{enumerate_subrings, Method};
pub use extension::{
    lift_isomorphic, restricted_extension, restricted_extension_in, LiftFamily, LiftReport,
    MinimalExtension,
};
pub use family::{counterexample_family, FamilyReport};

/// A coefficient-submodule of an ambient ring in canonical form.
#[derive(Clone)]
pub struct Submodule {
    ctx: Arc<RingCtx>,
    rows: Vec<Vec<u32>>,
}

impl Submodule {
    pub fn span(ctx: Arc<RingCtx>, gens: &[RingElem]) -> Self {
        let rows = gens.iter().map(|g| g.coeffs().to_vec()).collect();
        Self::from_rows(ctx, rows)
    }

    pub(crate) fn from_rows(ctx: Arc<RingCtx>, rows: Vec<Vec<u32>>) -> Self {
        let rows = howell::canonicalize(&ctx, rows);
        Self { ctx, rows }
    }

    pub fn ctx(&self) -> &Arc<RingCtx> {
        &self.ctx
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn basis(&self) -> Vec<RingElem> {
        self.rows
            .iter()
            .map(|r| self.ctx.reduced(r.clone()))
            .collect()
    }

    pub fn contains(&self, a: &RingElem) -> bool {
        self.contains_raw(a.coeffs())
    }

    pub(crate) fn contains_raw(&self, a: &[u32]) -> bool {
        howell::contains(&self.ctx, &self.rows, a)
    }

    /// Dimension over `F_q` for fields; `log_p` of the size for Z/p^N.
    pub fn length(&self) -> u32 {
        howell::length(&self.ctx, &self.rows)
    }

    pub fn cardinality(&self) -> u128 {
        (self.ctx.coeff().residue_order() as u128).pow(self.length())
    }

    /// Every element, each exactly once.
    pub fn members(&self) -> Vec<RingElem> {
        howell::members(&self.ctx, &self.rows)
            .into_iter()
            .map(|r| self.ctx.reduced(r))
            .collect()
    }

    pub fn is_subset_of(&self, other: &Submodule) -> bool {
        self.rows.iter().all(|r| other.contains_raw(r))
    }

    /// Span of `self` and extra rows.
    pub(crate) fn extended(&self, extra: impl IntoIterator<Item = Vec<u32>>) -> Submodule {
        let rows = self.rows.iter().cloned().chain(extra).collect();
        Submodule::from_rows(self.ctx.clone(), rows)
    }

    /// Span of all products of pairs of basis rows.
    pub(crate) fn products(&self, other: &Submodule) -> Submodule {
        let rows = self
            .rows
            .iter()
            .flat_map(|a| other.rows.iter().map(move |b| self.ctx.mul_raw(a, b)))
            .collect();
        Submodule::from_rows(self.ctx.clone(), rows)
    }

    pub fn describe(&self) -> Vec<String> {
        self.rows.iter().map(|r| self.ctx.format_raw(r)).collect()
    }
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && (Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx)
    }
}

impl Eq for Submodule {}

impl Hash for Submodule {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
    }
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{{}}}", self.describe().join(", "))
    }
}

/// Maximal ideal data of a subring.
#[derive(Debug, Clone)]
pub struct IdealData {
    pub m: Submodule,
    pub m_sq: Submodule,
    /// `m² + pR`, Z/p^N kind only.
    pub m_sq_p: Option<Submodule>,
}

impl IdealData {
    /// `m²` over a field, `m² + pR` over Z/p^N.
    pub fn small(&self) -> &Submodule {
        self.m_sq_p.as_ref().unwrap_or(&self.m_sq)
    }

    /// Dimension of `m / small` over the residue field.
    pub fn cotangent_dim(&self) -> u32 {
        self.m.length() - self.small().length()
    }
}

/// A unital subring in canonical form. Ordered by (length, basis).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subring {
    module: Submodule,
}

impl Subring {
    /// Smallest unital subring containing `gens`.
    pub fn closure(ctx: Arc<RingCtx>, gens: &[RingElem]) -> Self {
        let rows = std::iter::once(ctx.one().into_coeffs())
            .chain(gens.iter().map(|g| g.coeffs().to_vec()))
            .collect();
        Self::closure_of_rows(ctx, rows)
    }

    pub(crate) fn closure_of_rows(ctx: Arc<RingCtx>, rows: Vec<Vec<u32>>) -> Self {
        let mut module = Submodule::from_rows(ctx, rows);
        loop {
            let products = module.products(&module);
            let next = module.extended(products.rows);
            if next.rows == module.rows {
                return Self { module };
            }
            module = next;
        }
    }

    /// Wraps a span already known to be a unital subring.
    pub(crate) fn from_closed_rows(ctx: Arc<RingCtx>, rows: Vec<Vec<u32>>) -> Self {
        let module = Submodule::from_rows(ctx, rows);
        debug_assert!(module.contains_raw(module.ctx.one().coeffs()));
        debug_assert!(module.products(&module).is_subset_of(&module));
        Self { module }
    }

    /// `F_q·1` resp. `Z/p^N·1`.
    pub fn prime_subring(ctx: Arc<RingCtx>) -> Self {
        Self::closure(ctx, &[])
    }

    pub fn full(ctx: Arc<RingCtx>) -> Self {
        let rows = (0..ctx.n())
            .map(|i| ctx.monomial(1, i).into_coeffs())
            .collect();
        Self::from_closed_rows(ctx, rows)
    }

    pub fn module(&self) -> &Submodule {
        &self.module
    }

    pub fn ctx(&self) -> &Arc<RingCtx> {
        &self.module.ctx
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.module.rows
    }

    pub fn basis(&self) -> Vec<RingElem> {
        self.module.basis()
    }

    pub fn contains(&self, a: &RingElem) -> bool {
        self.module.contains(a)
    }

    pub fn length(&self) -> u32 {
        self.module.length()
    }

    pub fn cardinality(&self) -> u128 {
        self.module.cardinality()
    }

    pub fn members(&self) -> Vec<RingElem> {
        self.module.members()
    }

    pub fn describe(&self) -> Vec<String> {
        self.module.describe()
    }

    pub fn is_subset_of(&self, other: &Subring) -> bool {
        self.module.is_subset_of(&other.module)
    }

    /// `E(R)` resp. `D(R)`, read off the pivots of the canonical basis: a
    /// pivot `p^v` in column `j` contributes `(j, w)` for `v <= w < len_j`.
    pub fn exponent_set(&self) -> Shape {
        let ctx = self.ctx();
        let mut elems: Vec<Valuation> = self
            .rows()
            .iter()
            .flat_map(|row| {
                let (j, v) = howell::pivot(ctx, row).expect("pivot rows are nonzero");
                (v..ctx.col_len(j)).map(move |w| Valuation::new(j as u32, w))
            })
            .collect();
        elems.sort();
        let shape = Shape::from_sorted_unchecked(ctx.domain(), elems);
        debug_assert!(crate::partial_monoids::is_shape(
            ctx.domain(),
            &shape.elems().iter().copied().collect()
        ));
        shape
    }

    /// `E(R)` by valuing every member. Exponential; for cross-checks.
    pub fn exponent_set_by_scan(&self) -> Shape {
        let ctx = self.ctx();
        let set: std::collections::BTreeSet<Valuation> = self
            .members()
            .iter()
            .filter_map(|m| ctx.nu_raw(m.coeffs()))
            .collect();
        Shape::from_sorted_unchecked(ctx.domain(), set.into_iter().collect())
    }

    pub fn ideal_data(&self) -> IdealData {
        let ctx = self.ctx().clone();
        let rows = self.rows();
        debug_assert_eq!(rows[0], ctx.one().into_coeffs());
        let pi = ctx.coeff().pi_pow(1);
        let m_rows = std::iter::once(ctx.scale_raw(pi, &rows[0]))
            .chain(rows[1..].iter().cloned())
            .collect();
        let m = Submodule::from_rows(ctx.clone(), m_rows);
        let m_sq = m.products(&m);
        let m_sq_p = (!ctx.is_field_kind())
            .then(|| m_sq.extended(rows.iter().map(|r| ctx.scale_raw(pi, r))));
        IdealData { m, m_sq, m_sq_p }
    }

    /// `d(R)`: dimension of `m/m²` (fields) or `m/(m²+pR)` over F_p.
    pub fn cotangent_dim(&self) -> u32 {
        self.ideal_data().cotangent_dim()
    }

    /// Image under the quotient map to `dst`.
    pub fn project_to(&self, dst: &Arc<RingCtx>) -> Subring {
        let ctx = self.ctx();
        let rows = self
            .rows()
            .iter()
            .map(|r| ctx.project_raw(dst, r))
            .collect();
        Self::from_closed_rows(dst.clone(), rows)
    }

    /// Image under the quotient map one step down the chain.
    pub fn project(&self) -> Option<Subring> {
        let dst = Arc::new(self.ctx().quotient()?);
        Some(self.project_to(&dst))
    }

    /// `φ^{-1}(self)` inside `parent` (which must be `self.ctx().parent()`).
    pub fn preimage_in(&self, parent: &Arc<RingCtx>) -> Subring {
        let ctx = self.ctx();
        debug_assert_eq!(**parent, ctx.parent());
        let z = parent.kernel_generator().expect("parent has a quotient");
        let rows = self
            .rows()
            .iter()
            .map(|r| ctx.lift_raw(r))
            .chain(std::iter::once(z.into_coeffs()))
            .collect();
        Self::from_closed_rows(parent.clone(), rows)
    }

    pub fn preimage(&self) -> Subring {
        self.preimage_in(&Arc::new(self.ctx().parent()))
    }
}

impl PartialOrd for Subring {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subring {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.length(), self.rows()).cmp(&(other.length(), other.rows()))
    }
}

impl fmt::Debug for Subring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ring{{{}}}", self.describe().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(r: RingCtx) -> Arc<RingCtx> {
        Arc::new(r)
    }

    fn polys(c: &RingCtx, s: &[&str]) -> Vec<RingElem> {
        s.iter().map(|p| c.parse(p).unwrap()).collect()
    }

    #[test]
    fn closure_examples() {
        let f = ctx(RingCtx::fq(2, 4).unwrap());
        let r = Subring::closure(f.clone(), &polys(&f, &["x^2"]));
        assert_eq!(r.describe(), vec!["1", "x^2"]);

        let f18 = ctx(RingCtx::fq(2, 18).unwrap());
        let r = Subring::closure(f18.clone(), &polys(&f18, &["x^6+x^9", "x^7", "x^8"]));
        assert_eq!(r.length(), 10);
        assert_eq!(
            r.exponent_set().degrees(),
            vec![0, 6, 7, 8, 12, 13, 14, 15, 16, 17]
        );

        let z = ctx(RingCtx::zpn(2, 2, 2, 2).unwrap());
        let r = Subring::closure(z.clone(), &polys(&z, &["2x"]));
        assert_eq!(r.describe(), vec!["1", "2x"]);
        assert_eq!(r.cardinality(), 8);
    }

    #[test]
    fn exponent_set_examples() {
        let f = ctx(RingCtx::fq(3, 5).unwrap());
        assert_eq!(
            Subring::prime_subring(f.clone()).exponent_set().degrees(),
            vec![0]
        );
        assert_eq!(
            Subring::full(f.clone()).exponent_set().degrees(),
            vec![0, 1, 2, 3, 4]
        );
        let z = ctx(RingCtx::zpn(2, 2, 2, 2).unwrap());
        let r = Subring::closure(z.clone(), &polys(&z, &["2x"]));
        let d: Vec<(u32, u32)> = r
            .exponent_set()
            .elems()
            .iter()
            .map(|v| (v.deg, v.pval))
            .collect();
        assert_eq!(d, vec![(0, 0), (0, 1), (1, 1)]);
        assert_eq!(r.exponent_set(), r.exponent_set_by_scan());
    }

    #[test]
    fn ideal_examples() {
        let f = ctx(RingCtx::fq(2, 4).unwrap());
        let full = Subring::full(f.clone());
        let id = full.ideal_data();
        assert_eq!(id.m.describe(), vec!["x", "x^2", "x^3"]);
        assert_eq!(id.m_sq.describe(), vec!["x^2", "x^3"]);
        assert_eq!(full.cotangent_dim(), 1);

        let r = Subring::closure(f.clone(), &polys(&f, &["x^2", "x^3"]));
        let id = r.ideal_data();
        assert_eq!(id.m.describe(), vec!["x^2", "x^3"]);
        assert_eq!(id.m_sq.length(), 0);
        assert_eq!(r.cotangent_dim(), 2);

        let z = ctx(RingCtx::zpn(2, 2, 2, 2).unwrap());
        let full = Subring::full(z.clone());
        let id = full.ideal_data();
        assert_eq!(id.m.describe(), vec!["2", "x"]);
        assert_eq!(id.small().describe(), vec!["2", "2x"]);
        assert_eq!(full.cotangent_dim(), 1);
    }

    #[test]
    fn cotangent_of_full_rings() {
        for n in 2..6 {
            let f = ctx(RingCtx::fq(3, n).unwrap());
            assert_eq!(Subring::full(f).cotangent_dim(), 1);
        }
    }

    #[test]
    fn projection_and_preimage() {
        let f = ctx(RingCtx::fq(2, 4).unwrap());
        let r = Subring::closure(f.clone(), &polys(&f, &["x^2+x^3"]));
        let b = r.project().unwrap();
        assert_eq!(b.describe(), vec!["1", "x^2"]);
        let pre = b.preimage();
        assert_eq!(pre.describe(), vec!["1", "x^2", "x^3"]);
        assert!(r.is_subset_of(&pre));
    }
}
