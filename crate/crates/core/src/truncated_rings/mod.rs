//! The ambient rings `F_q[x]/x^n` and `R_{n,N,k} = Z[x]/(p^N, x^n, p^k x^{n-1})`,
//! their elements, the valuation `ν`, and the one-step quotient maps
//! between consecutive members of each family.

mod syntax;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::coefficients::{CoeffRing, FieldCtx, ZpNCtx};
use crate::error::{Error, Result};
use crate::partial_monoids::ExpDomain;

/// Value of `ν`: lowest x-degree and the p-adic valuation of its
/// coefficient. Ordered lexicographically. Over a field `pval` is always 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Valuation {
    pub deg: u32,
    pub pval: u32,
}

impl Valuation {
    pub const ZERO: Valuation = Valuation { deg: 0, pval: 0 };

    pub fn new(deg: u32, pval: u32) -> Self {
        Self { deg, pval }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.deg, self.pval)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingKind {
    PolyOverField,
    PolyOverZpN,
}

/// An ambient truncated ring.
///
/// For the Z/p^N family the tail exponent `k` satisfies `1 <= k <= N`
/// (`k = 0` is normalized to `R_{n-1,N,N}` on construction) and the
/// coefficient of `x^{n-1}` is stored reduced mod `p^k`. For fields `k` is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingCtx {
    coeff: CoeffRing,
    n: usize,
    k: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RingElem {
    coeffs: Vec<u32>,
}

impl RingElem {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl RingCtx {
    pub fn poly_over_field(field: FieldCtx, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidContext("n must be >= 1".into()));
        }
        Ok(Self {
            coeff: CoeffRing::Field(field),
            n,
            k: 1,
        })
    }

    pub fn poly_over_zpn(zpn: ZpNCtx, n: usize, k: u32) -> Result<Self> {
        let big_n = zpn.exponent();
        if big_n < 2 {
            return Err(Error::InvalidContext(
                "the Z/p^N family needs N >= 2 (use the field kind for N = 1)".into(),
            ));
        }
        if k > big_n {
            return Err(Error::InvalidContext(format!(
                "k = {k} exceeds N = {big_n}"
            )));
        }
        let (n, k) = if k == 0 {
            (n.saturating_sub(1), big_n)
        } else {
            (n, k)
        };
        if n == 0 {
            return Err(Error::InvalidContext("n must be >= 1".into()));
        }
        if n == 1 && k != big_n {
            return Err(Error::InvalidContext("R_{1,N,k} requires k = N".into()));
        }
        Ok(Self {
            coeff: CoeffRing::Zpn(zpn),
            n,
            k,
        })
    }

    /// `F_q[x]/x^n` with the default modulus.
    pub fn fq(q: u32, n: usize) -> Result<Self> {
        Self::poly_over_field(FieldCtx::with_order(q)?, n)
    }

    /// `R_{n,N,k}`.
    pub fn zpn(p: u32, big_n: u32, n: usize, k: u32) -> Result<Self> {
        Self::poly_over_zpn(ZpNCtx::new(p, big_n)?, n, k)
    }

    pub fn kind(&self) -> RingKind {
        match self.coeff {
            CoeffRing::Field(_) => RingKind::PolyOverField,
            CoeffRing::Zpn(_) => RingKind::PolyOverZpN,
        }
    }

    pub fn is_field_kind(&self) -> bool {
        self.kind() == RingKind::PolyOverField
    }

    pub fn coeff(&self) -> &CoeffRing {
        &self.coeff
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// N for the Z family, 1 for fields.
    pub fn big_n(&self) -> u32 {
        self.coeff.length()
    }

    pub fn p(&self) -> u32 {
        self.coeff.characteristic_prime()
    }

    /// Length of the coordinate module at `x^j` (p^len elements).
    pub fn col_len(&self, j: usize) -> u32 {
        if j + 1 == self.n {
            self.k
        } else {
            self.coeff.length()
        }
    }

    /// Number of distinct values of coordinate `j`.
    pub fn col_size(&self, j: usize) -> u32 {
        match &self.coeff {
            CoeffRing::Field(f) => f.order(),
            CoeffRing::Zpn(z) => z.p().pow(self.col_len(j)),
        }
    }

    /// Number of ring elements, if it fits in a u64.
    pub fn size(&self) -> Option<u64> {
        (0..self.n).try_fold(1u64, |acc, j| acc.checked_mul(self.col_size(j) as u64))
    }

    /// The partial-monoid of valuation values of this ring.
    pub fn domain(&self) -> ExpDomain {
        match self.kind() {
            RingKind::PolyOverField => ExpDomain::Interval { n: self.n as u32 },
            RingKind::PolyOverZpN => ExpDomain::Grid {
                n: self.n as u32,
                big_n: self.big_n(),
                k: self.k,
            },
        }
    }

    pub fn zero(&self) -> RingElem {
        RingElem {
            coeffs: vec![0; self.n],
        }
    }

    pub fn one(&self) -> RingElem {
        self.monomial(1, 0)
    }

    /// `c·x^i` (zero if `i >= n`).
    pub fn monomial(&self, c: u32, i: usize) -> RingElem {
        let mut coeffs = vec![0; self.n];
        if i < self.n {
            coeffs[i] = c;
        }
        self.reduced(coeffs)
    }

    /// Validates a coefficient vector.
    pub fn elem(&self, coeffs: Vec<u32>) -> Result<RingElem> {
        let a = RingElem { coeffs };
        self.check(&a)?;
        Ok(a)
    }

    /// Builds an element, reducing coefficients into range. Missing
    /// trailing coefficients are zero.
    pub fn reduced(&self, mut coeffs: Vec<u32>) -> RingElem {
        coeffs.resize(self.n, 0);
        let size = self.coeff.size();
        for c in coeffs.iter_mut() {
            *c %= size;
        }
        self.normalize(&mut coeffs);
        RingElem { coeffs }
    }

    pub fn check(&self, a: &RingElem) -> Result<()> {
        if a.coeffs.len() != self.n
            || a.coeffs
                .iter()
                .enumerate()
                .any(|(j, &c)| c >= self.col_size(j))
        {
            return Err(Error::CtxMismatch);
        }
        Ok(())
    }

    /// Reduces the `x^{n-1}` coordinate mod `p^k`.
    pub(crate) fn normalize(&self, row: &mut [u32]) {
        if let Some(last) = row.last_mut() {
            *last = self.coeff.reduce(*last, self.k);
        }
    }

    pub(crate) fn add_raw(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = a
            .iter()
            .zip(b)
            .map(|(&x, &y)| self.coeff.add(x, y))
            .collect();
        self.normalize(&mut out);
        out
    }

    pub(crate) fn sub_raw(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = a
            .iter()
            .zip(b)
            .map(|(&x, &y)| self.coeff.sub(x, y))
            .collect();
        self.normalize(&mut out);
        out
    }

    pub(crate) fn scale_raw(&self, c: u32, a: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = a.iter().map(|&x| self.coeff.mul(c, x)).collect();
        self.normalize(&mut out);
        out
    }

    pub(crate) fn mul_raw(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let n = self.n;
        let mut out = vec![0u32; n];
        for (i, &x) in a.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (j, &y) in b[..n - i].iter().enumerate().filter(|(_, &y)| y != 0) {
                out[i + j] = self.coeff.add(out[i + j], self.coeff.mul(x, y));
            }
        }
        self.normalize(&mut out);
        out
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> Result<RingElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(RingElem {
            coeffs: self.add_raw(&a.coeffs, &b.coeffs),
        })
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> Result<RingElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(RingElem {
            coeffs: self.sub_raw(&a.coeffs, &b.coeffs),
        })
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> Result<RingElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(RingElem {
            coeffs: self.mul_raw(&a.coeffs, &b.coeffs),
        })
    }

    /// Multiplication by a coefficient-ring scalar.
    pub fn scale(&self, c: u32, a: &RingElem) -> Result<RingElem> {
        self.check(a)?;
        Ok(RingElem {
            coeffs: self.scale_raw(c % self.coeff.size(), &a.coeffs),
        })
    }

    pub(crate) fn nu_raw(&self, a: &[u32]) -> Option<Valuation> {
        let (deg, &c) = a.iter().enumerate().find(|(_, &c)| c != 0)?;
        Some(Valuation::new(deg as u32, self.coeff.val(c)?))
    }

    pub fn nu(&self, a: &RingElem) -> Result<Valuation> {
        self.check(a)?;
        self.nu_raw(&a.coeffs).ok_or(Error::UndefinedValuation)
    }

    pub fn is_unit(&self, a: &RingElem) -> bool {
        a.coeffs.first().is_some_and(|&c| self.coeff.is_unit(c))
    }

    /// The ring one step further down the quotient chain, if any:
    /// `n -> n-1` for fields, `k -> k-1` (or `R_{n,N,1} -> R_{n-1,N,N}`) for Z.
    pub fn quotient(&self) -> Option<RingCtx> {
        if self.n == 1 {
            return None;
        }
        let next = match self.kind() {
            RingKind::PolyOverField => Self {
                n: self.n - 1,
                ..self.clone()
            },
            RingKind::PolyOverZpN if self.k > 1 => Self {
                k: self.k - 1,
                ..self.clone()
            },
            RingKind::PolyOverZpN => Self {
                n: self.n - 1,
                k: self.big_n(),
                ..self.clone()
            },
        };
        Some(next)
    }

    /// The ring one step up the chain, whose quotient is `self`.
    pub fn parent(&self) -> RingCtx {
        match self.kind() {
            RingKind::PolyOverField => Self {
                n: self.n + 1,
                ..self.clone()
            },
            RingKind::PolyOverZpN if self.k < self.big_n() => Self {
                k: self.k + 1,
                ..self.clone()
            },
            RingKind::PolyOverZpN => Self {
                n: self.n + 1,
                k: 1,
                ..self.clone()
            },
        }
    }

    /// Generator of the kernel of `self -> self.quotient()`:
    /// `x^{n-1}` for fields, `p^{k-1} x^{n-1}` for Z.
    pub fn kernel_generator(&self) -> Option<RingElem> {
        self.quotient()?;
        let c = self.coeff.pi_pow(self.k - 1);
        Some(self.monomial(c, self.n - 1))
    }

    /// The quotient map `self -> dst`.
    pub fn project(&self, dst: &RingCtx, a: &RingElem) -> Result<RingElem> {
        self.check(a)?;
        if self.quotient().as_ref() != Some(dst) {
            return Err(Error::NotAQuotient);
        }
        Ok(RingElem {
            coeffs: self.project_raw(dst, &a.coeffs),
        })
    }

    pub(crate) fn project_raw(&self, dst: &RingCtx, a: &[u32]) -> Vec<u32> {
        let mut out = a[..dst.n].to_vec();
        dst.normalize(&mut out);
        out
    }

    /// Representative preimage of `a` (an element of `self`) in `self.parent()`.
    pub(crate) fn lift_raw(&self, a: &[u32]) -> Vec<u32> {
        let mut out = a.to_vec();
        out.resize(self.parent().n, 0);
        out
    }

    /// Every element of the ring, in lexicographic order of coefficients
    /// (least significant coordinate first).
    pub fn elements(&self) -> impl Iterator<Item = RingElem> + '_ {
        let sizes: Vec<u32> = (0..self.n).map(|j| self.col_size(j)).collect();
        let total = self.size().expect("ring too large to enumerate");
        (0..total).map(move |mut idx| {
            let coeffs = sizes
                .iter()
                .map(|&s| {
                    let c = (idx % s as u64) as u32;
                    idx /= s as u64;
                    c
                })
                .collect();
            RingElem { coeffs }
        })
    }

    pub fn parse(&self, s: &str) -> Result<RingElem> {
        syntax::parse_poly(self, s)
    }

    pub fn format(&self, a: &RingElem) -> String {
        syntax::format_poly(self, &a.coeffs)
    }

    pub(crate) fn format_raw(&self, a: &[u32]) -> String {
        syntax::format_poly(self, a)
    }

    pub fn describe(&self) -> String {
        match &self.coeff {
            CoeffRing::Field(f) => format!("F_{}[x]/x^{}", f.order(), self.n),
            CoeffRing::Zpn(z) => {
                format!("R_{{{},{},{}}} (p={})", self.n, z.exponent(), self.k, z.p())
            }
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.deg, self.pval).serialize(s)
    }
}
