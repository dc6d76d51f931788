//! Coefficient arithmetic: the finite field F_q (q = p^e) and the chain ring
//! Z/p^N with its p-adic valuation.
//!
//! Both coefficient systems store elements as `u32`. Z/p^N residues are the
//! least non-negative representatives. An element of F_q is packed as the
//! integer `c_0 + c_1 p + ... + c_{e-1} p^{e-1}` of its coordinates in the
//! basis `1, t, ..., t^{e-1}`, so equality is always value comparison.

use std::fmt;

use crate::error::{Error, Result};

/// Largest field order for which operation tables are built.
pub const MAX_FIELD_ORDER: u32 = 1024;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power into `(p, e)`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

// Dense polynomials over F_p, lowest degree first, no trailing zeros.

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod_prime(a: u32, p: u32) -> u32 {
    // a^(p-2) mod p
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = poly_trim(a.to_vec());
    let m = poly_trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod_prime(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &mi) in m.iter().enumerate() {
            let sub = (c as u64 * mi as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn unpack(mut v: u32, p: u32, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn pack(coords: &[u32], p: u32) -> u32 {
    coords.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Irreducibility of a monic polynomial of degree `e` by trial division
/// against every monic polynomial of degree `1..=e/2`.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let m = poly_trim(modulus.to_vec());
    if m.len() < 2 {
        return false;
    }
    let e = m.len() - 1;
    for deg in 1..=e / 2 {
        for low in 0..(p as u64).pow(deg as u32) {
            let mut f = unpack(low as u32, p, deg);
            f.push(1);
            if poly_rem(&m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible polynomial of degree `e` over F_p whose packed
/// coefficient vector is smallest.
pub fn default_modulus(p: u32, e: u32) -> Vec<u32> {
    let count = (p as u64).pow(e);
    (0..count)
        .map(|low| {
            let mut f = unpack(low as u32, p, e as usize);
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElem(pub u32);

#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    e: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    add_table: Vec<u32>,
    mul_table: Vec<u32>,
    inv_table: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// Field of order `q`, using the default modulus when `q` is not prime.
    pub fn with_order(q: u32) -> Result<Self> {
        let (p, e) = prime_power(q)
            .ok_or_else(|| Error::InvalidContext(format!("{q} is not a prime power")))?;
        Self::new(p, e, None)
    }

    /// `modulus` is given lowest degree first and must be monic of degree `e`.
    pub fn new(p: u32, e: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidContext(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::InvalidContext(
                "extension degree must be >= 1".into(),
            ));
        }
        let q = (p as u64)
            .checked_pow(e)
            .filter(|&q| q <= MAX_FIELD_ORDER as u64)
            .ok_or_else(|| Error::TooLarge(format!("field order {p}^{e}")))? as u32;
        let modulus = if e == 1 {
            None
        } else {
            let m = match modulus {
                Some(m) => poly_trim(m.into_iter().map(|c| c % p).collect()),
                None => default_modulus(p, e),
            };
            if m.len() != e as usize + 1 || m[e as usize] != 1 {
                return Err(Error::InvalidContext(format!(
                    "modulus must be monic of degree {e}"
                )));
            }
            if !is_irreducible(&m, p) {
                return Err(Error::InvalidContext("modulus is reducible".into()));
            }
            Some(m)
        };

        let qs = q as usize;
        let mut add_table = vec![0; qs * qs];
        let mut mul_table = vec![0; qs * qs];
        for a in 0..q {
            let ca = unpack(a, p, e as usize);
            for b in 0..q {
                let cb = unpack(b, p, e as usize);
                let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                add_table[a as usize * qs + b as usize] = pack(&sum, p);

                let mut prod = vec![0u32; 2 * e as usize];
                for (i, &x) in ca.iter().enumerate() {
                    for (j, &y) in cb.iter().enumerate() {
                        prod[i + j] =
                            ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
                    }
                }
                let reduced = match &modulus {
                    Some(m) => poly_rem(&prod, m, p),
                    None => poly_trim(prod),
                };
                let mut padded = reduced;
                padded.resize(e as usize, 0);
                mul_table[a as usize * qs + b as usize] = pack(&padded, p);
            }
        }
        let mut inv_table = vec![0; qs];
        for a in 1..q {
            let b = (1..q)
                .find(|&b| mul_table[a as usize * qs + b as usize] == 1)
                .expect("nonzero elements of a field are invertible");
            inv_table[a as usize] = b;
        }
        Ok(Self {
            p,
            e,
            q,
            modulus,
            add_table,
            mul_table,
            inv_table,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    pub fn elem(&self, coords: &[u32]) -> Result<FieldElem> {
        if coords.len() > self.e as usize || coords.iter().any(|&c| c >= self.p) {
            return Err(Error::CtxMismatch);
        }
        Ok(FieldElem(pack(coords, self.p)))
    }

    pub fn coords(&self, a: FieldElem) -> Vec<u32> {
        unpack(a.0, self.p, self.e as usize)
    }

    pub fn contains(&self, a: FieldElem) -> bool {
        a.0 < self.q
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.add_table[a.0 as usize * self.q as usize + b.0 as usize])
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let coords: Vec<u32> = self
            .coords(a)
            .iter()
            .map(|&c| (self.p - c) % self.p)
            .collect();
        FieldElem(pack(&coords, self.p))
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.mul_table[a.0 as usize * self.q as usize + b.0 as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElem(self.inv_table[a.0 as usize]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ZpNElem(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ZpNCtx {
    p: u32,
    big_n: u32,
    modulus: u32,
}

impl ZpNCtx {
    pub fn new(p: u32, big_n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidContext(format!("{p} is not prime")));
        }
        if big_n == 0 {
            return Err(Error::InvalidContext("N must be >= 1".into()));
        }
        let modulus = (p as u64)
            .checked_pow(big_n)
            .filter(|&m| m < 1 << 32)
            .ok_or_else(|| Error::TooLarge(format!("{p}^{big_n} does not fit in 32 bits")))?;
        Ok(Self {
            p,
            big_n,
            modulus: modulus as u32,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.big_n
    }

    /// p^N
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn elem(&self, value: u64) -> ZpNElem {
        ZpNElem((value % self.modulus as u64) as u32)
    }

    pub fn contains(&self, a: ZpNElem) -> bool {
        a.0 < self.modulus
    }

    pub fn add(&self, a: ZpNElem, b: ZpNElem) -> ZpNElem {
        ZpNElem(((a.0 as u64 + b.0 as u64) % self.modulus as u64) as u32)
    }

    pub fn neg(&self, a: ZpNElem) -> ZpNElem {
        ZpNElem((self.modulus - a.0) % self.modulus)
    }

    pub fn sub(&self, a: ZpNElem, b: ZpNElem) -> ZpNElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: ZpNElem, b: ZpNElem) -> ZpNElem {
        ZpNElem((a.0 as u64 * b.0 as u64 % self.modulus as u64) as u32)
    }

    pub fn is_unit(&self, a: ZpNElem) -> bool {
        !a.0.is_multiple_of(self.p)
    }

    pub fn inv(&self, a: ZpNElem) -> Result<ZpNElem> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit(a.0));
        }
        // extended Euclid on (a, p^N)
        let (mut r0, mut r1) = (self.modulus as i64, a.0 as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let quot = r0 / r1;
            (r0, r1) = (r1, r0 - quot * r1);
            (t0, t1) = (t1, t0 - quot * t1);
        }
        Ok(ZpNElem(t0.rem_euclid(self.modulus as i64) as u32))
    }

    /// The exponent m with a = u p^m, u a unit.
    pub fn nu1(&self, a: ZpNElem) -> Result<u32> {
        if a.0 == 0 {
            return Err(Error::UndefinedValuation);
        }
        let mut v = a.0;
        let mut m = 0;
        while v.is_multiple_of(self.p) {
            v /= self.p;
            m += 1;
        }
        Ok(m)
    }

    pub fn p_pow(&self, m: u32) -> ZpNElem {
        if m >= self.big_n {
            return ZpNElem(0);
        }
        ZpNElem(self.p.pow(m))
    }
}

/// Coefficient ring of an ambient truncated ring: a finite chain ring whose
/// maximal ideal is generated by `pi` (p for Z/p^N, zero for a field).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffRing {
    Field(FieldCtx),
    Zpn(ZpNCtx),
}

impl CoeffRing {
    pub fn characteristic_prime(&self) -> u32 {
        match self {
            CoeffRing::Field(f) => f.p(),
            CoeffRing::Zpn(z) => z.p(),
        }
    }

    /// Number of elements.
    pub fn size(&self) -> u32 {
        match self {
            CoeffRing::Field(f) => f.order(),
            CoeffRing::Zpn(z) => z.modulus(),
        }
    }

    /// Nilpotency length of the maximal ideal (1 for a field, N for Z/p^N).
    pub fn length(&self) -> u32 {
        match self {
            CoeffRing::Field(_) => 1,
            CoeffRing::Zpn(z) => z.exponent(),
        }
    }

    /// Order of the residue field.
    pub fn residue_order(&self) -> u32 {
        match self {
            CoeffRing::Field(f) => f.order(),
            CoeffRing::Zpn(z) => z.p(),
        }
    }

    /// Representatives of the residue field inside the coefficient ring.
    pub fn residue_reps(&self) -> Vec<u32> {
        (0..self.residue_order()).collect()
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        match self {
            CoeffRing::Field(f) => f.add(FieldElem(a), FieldElem(b)).0,
            CoeffRing::Zpn(z) => z.add(ZpNElem(a), ZpNElem(b)).0,
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        match self {
            CoeffRing::Field(f) => f.neg(FieldElem(a)).0,
            CoeffRing::Zpn(z) => z.neg(ZpNElem(a)).0,
        }
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match self {
            CoeffRing::Field(f) => f.mul(FieldElem(a), FieldElem(b)).0,
            CoeffRing::Zpn(z) => z.mul(ZpNElem(a), ZpNElem(b)).0,
        }
    }

    pub fn is_unit(&self, a: u32) -> bool {
        match self {
            CoeffRing::Field(_) => a != 0,
            CoeffRing::Zpn(z) => z.is_unit(ZpNElem(a)),
        }
    }

    /// Valuation of a coefficient: 0 for nonzero field elements, ν₁ otherwise.
    pub fn val(&self, a: u32) -> Option<u32> {
        match self {
            _ if a == 0 => None,
            CoeffRing::Field(_) => Some(0),
            CoeffRing::Zpn(z) => z.nu1(ZpNElem(a)).ok(),
        }
    }

    pub fn pi_pow(&self, v: u32) -> u32 {
        match self {
            CoeffRing::Field(_) => u32::from(v == 0),
            CoeffRing::Zpn(z) => z.p_pow(v).0,
        }
    }

    /// `a / pi^v`; requires `val(a) >= v` (or a = 0).
    pub fn quo_pi_pow(&self, a: u32, v: u32) -> u32 {
        match self {
            CoeffRing::Field(_) => a,
            CoeffRing::Zpn(z) => a / z.p().pow(v),
        }
    }

    /// Inverse of the unit part `a / pi^val(a)`.
    pub fn unit_part_inv(&self, a: u32) -> u32 {
        match self {
            CoeffRing::Field(f) => f.inv(FieldElem(a)).expect("nonzero").0,
            CoeffRing::Zpn(z) => {
                let v = z.nu1(ZpNElem(a)).expect("nonzero");
                z.inv(ZpNElem(a / z.p().pow(v))).expect("unit").0
            }
        }
    }

    /// Reduction into a coordinate of length `len` (p^len for Z/p^N).
    pub fn reduce(&self, a: u32, len: u32) -> u32 {
        match self {
            CoeffRing::Field(_) => {
                if len == 0 {
                    0
                } else {
                    a
                }
            }
            CoeffRing::Zpn(z) => a % z.p().pow(len.min(z.exponent())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_add() {
        let f = FieldCtx::prime(2).unwrap();
        assert_eq!(f.add(FieldElem(1), FieldElem(1)), FieldElem(0));
    }

    // long division of t^2 by t^2+t+1 over F_2
    fn long_div_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
        let mut r = num.to_vec();
        while r.len() >= den.len() {
            let c = *r.last().unwrap();
            let shift = r.len() - den.len();
            for (i, &d) in den.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - c * d) % p;
            }
            r.pop();
        }
        r
    }

    #[test]
    fn f4_t_squared() {
        let f = FieldCtx::new(2, 2, Some(vec![1, 1, 1])).unwrap();
        let t = f.elem(&[0, 1]).unwrap();
        let expected = long_div_rem(&[0, 0, 1], &[1, 1, 1], 2);
        assert_eq!(expected, vec![1, 1]);
        assert_eq!(f.coords(f.mul(t, t)), expected);
    }

    #[test]
    fn f3_inverse() {
        let f = FieldCtx::prime(3).unwrap();
        assert_eq!(f.inv(FieldElem(2)).unwrap(), FieldElem(2));
        assert_eq!(f.inv(FieldElem(0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn default_moduli() {
        assert_eq!(default_modulus(2, 2), vec![1, 1, 1]);
        assert_eq!(default_modulus(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(default_modulus(3, 2), vec![1, 0, 1]);
    }

    #[test]
    fn reducible_modulus_rejected() {
        // t^2 + 1 = (t+1)^2 over F_2
        assert!(FieldCtx::new(2, 2, Some(vec![1, 0, 1])).is_err());
        assert!(FieldCtx::new(4, 1, None).is_err());
    }

    #[test]
    fn field_axioms_small_orders() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = FieldCtx::with_order(q).unwrap();
            let all: Vec<FieldElem> = (0..q).map(FieldElem).collect();
            for &a in &all {
                if a.0 != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem(1), "q={q}");
                }
                assert_eq!(f.add(a, f.neg(a)), FieldElem(0));
                for &b in &all {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &all {
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                        assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn zpn_examples() {
        let z9 = ZpNCtx::new(3, 2).unwrap();
        assert_eq!(z9.inv(ZpNElem(2)).unwrap(), ZpNElem(5));
        assert_eq!(z9.inv(ZpNElem(3)), Err(Error::NotAUnit(3)));
        let z4 = ZpNCtx::new(2, 2).unwrap();
        assert_eq!(z4.mul(ZpNElem(2), ZpNElem(2)), ZpNElem(0));
        let z8 = ZpNCtx::new(2, 3).unwrap();
        assert_eq!(z8.add(ZpNElem(5), ZpNElem(6)), ZpNElem(3));
    }

    #[test]
    fn nu1_examples() {
        let z16 = ZpNCtx::new(2, 4).unwrap();
        assert_eq!(z16.nu1(ZpNElem(12)).unwrap(), 2);
        assert_eq!(z16.nu1(ZpNElem(0)), Err(Error::UndefinedValuation));
        let z4 = ZpNCtx::new(2, 2).unwrap();
        assert_eq!(z4.nu1(ZpNElem(1)).unwrap(), 0);
        let z8 = ZpNCtx::new(2, 3).unwrap();
        assert_eq!(z8.nu1(ZpNElem(4)).unwrap(), 2);
    }

    #[test]
    fn nu1_strict_and_monomial_like() {
        for (p, n) in [(2, 3), (3, 2), (2, 4), (5, 2)] {
            let z = ZpNCtx::new(p, n).unwrap();
            let m = z.modulus();
            for a in 1..m {
                for b in 1..m {
                    let (va, vb) = (z.nu1(ZpNElem(a)).unwrap(), z.nu1(ZpNElem(b)).unwrap());
                    if va + vb < n {
                        let ab = z.mul(ZpNElem(a), ZpNElem(b));
                        assert_eq!(z.nu1(ab).unwrap(), va + vb);
                    }
                    if va == vb {
                        assert!((1..m).any(|u| z.is_unit(ZpNElem(u))
                            && z.mul(ZpNElem(u), ZpNElem(b)) == ZpNElem(a)));
                    }
                }
            }
        }
    }
}
