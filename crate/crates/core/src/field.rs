//! Finite fields `F_q = F_p[x]/(f)` with table-driven arithmetic.
//!
//! An element is stored as the integer `c_0 + c_1 p + … + c_{m-1} p^{m-1}`
//! built from its coefficient vector over `Z_p`, so element codes run over
//! `0..q` and code order is the enumeration order used everywhere else.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest field order for which explicit arithmetic tables are built.
pub const MAX_ORDER: u64 = 1 << 20;

/// Full addition tables are kept up to this order; above it addition goes
/// coefficient by coefficient.
const ADD_TABLE_LIMIT: u32 = 1024;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// The packed coefficient-vector code.
    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub(crate) fn from_code(code: u32) -> Self {
        FieldElement(code)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of the multiplicative group together with its exact order.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct RootOfUnity {
    pub element: FieldElement,
    pub order: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Pow(u64),
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, coefficients from the constant term up (length m + 1).
    modulus: Vec<u32>,
    add: Option<Vec<u32>>,
    neg: Vec<u32>,
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`.
    exp: Vec<u32>,
    /// Discrete log base `g`; `log[0]` is unused.
    log: Vec<u32>,
    generator: u32,
}

/// An immutable finite field; cheap to clone and safe to share.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<Inner>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.inner.p)
            .field("m", &self.inner.m)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

/// Builds `F_{p^m}` with the lexicographically least monic irreducible
/// modulus of degree `m` (coefficients compared from the constant term up).
pub fn make_field(p: u64, m: u32) -> Result<FieldCtx> {
    FieldCtx::new(p, m)
}

impl FieldCtx {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        let p = check_order(p, m)?;
        let modulus = least_irreducible(p, m);
        Ok(Self::build(p, m, modulus))
    }

    /// Builds `F_p[x]/(f)` for an explicit monic irreducible `f`, given by
    /// its coefficients from the constant term up.
    pub fn with_modulus(p: u64, modulus: &[u32]) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree at least 1".into()));
        }
        let m = (modulus.len() - 1) as u32;
        let p = check_order(p, m)?;
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!(
                "modulus coefficients must lie in [0, {p})"
            )));
        }
        if !is_irreducible(modulus, p) {
            return Err(Error::InvalidField(format!("{modulus:?} is reducible over F_{p}")));
        }
        Ok(Self::build(p, m, modulus.to_vec()))
    }

    fn build(p: u32, m: u32, modulus: Vec<u32>) -> Self {
        let q = p.pow(m);
        let slow_mul = |a: u32, b: u32| {
            let prod = poly_mulmod(&digits(a, p, m), &digits(b, p, m), &modulus, p);
            undigits(&prod, p)
        };

        let generator = primitive_element(q, &slow_mul);
        let order = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * order.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for (i, e) in exp.iter_mut().take(order).enumerate() {
            *e = x;
            log[x as usize] = i as u32;
            x = slow_mul(x, generator);
        }
        for i in order..exp.len() {
            exp[i] = exp[i - order];
        }

        let neg = (0..q)
            .map(|a| {
                let d: Vec<u32> = digits(a, p, m).iter().map(|&c| (p - c) % p).collect();
                undigits(&d, p)
            })
            .collect();

        let add = (q <= ADD_TABLE_LIMIT).then(|| {
            let mut table = Vec::with_capacity((q * q) as usize);
            for a in 0..q {
                for b in 0..q {
                    table.push(add_digits(a, b, p, m));
                }
            }
            table
        });

        FieldCtx {
            inner: Arc::new(Inner {
                p,
                m,
                q,
                modulus,
                add,
                neg,
                exp,
                log,
                generator,
            }),
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.inner.m
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// A generator of the multiplicative group.
    pub fn generator(&self) -> FieldElement {
        FieldElement(self.inner.generator)
    }

    pub fn element(&self, code: u32) -> Result<FieldElement> {
        if code < self.inner.q {
            Ok(FieldElement(code))
        } else {
            Err(Error::NotInField { code, q: self.inner.q })
        }
    }

    /// Image of an integer under `Z → F_p ⊆ F_q`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.inner.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.inner.m as usize || coeffs.iter().any(|&c| c >= self.inner.p) {
            return Err(Error::InvalidField(format!(
                "{coeffs:?} is not a coefficient vector over F_{} of length <= {}",
                self.inner.p, self.inner.m
            )));
        }
        Ok(FieldElement(undigits(coeffs, self.inner.p)))
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        digits(a.0, self.inner.p, self.inner.m)
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.inner.q).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.inner.q).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.inner;
        match &inner.add {
            Some(table) => FieldElement(table[(a.0 * inner.q + b.0) as usize]),
            None if inner.p == 2 => FieldElement(a.0 ^ b.0),
            None => FieldElement(add_digits(a.0, b.0, inner.p, inner.m)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.inner.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let inner = &*self.inner;
        let i = inner.log[a.0 as usize] + inner.log[b.0 as usize];
        FieldElement(inner.exp[i as usize])
    }

    #[inline]
    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_nonzero(a))
    }

    /// Inverse of an element known to be nonzero.
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: FieldElement) -> FieldElement {
        debug_assert!(a.0 != 0);
        let inner = &*self.inner;
        let order = inner.q - 1;
        let l = inner.log[a.0 as usize];
        FieldElement(inner.exp[((order - l) % order) as usize])
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let inner = &*self.inner;
        let order = (inner.q - 1) as u64;
        let l = inner.log[a.0 as usize] as u64;
        FieldElement(inner.exp[((l * (e % order)) % order) as usize])
    }

    /// Discrete logarithm to the base [`FieldCtx::generator`].
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (a.0 != 0).then(|| self.inner.log[a.0 as usize])
    }

    /// Exact multiplicative order of a nonzero element.
    pub fn order(&self, a: FieldElement) -> Option<u64> {
        let l = self.log(a)? as u64;
        let n = (self.inner.q - 1) as u64;
        Some(n / l.gcd(&n))
    }

    /// Checked arithmetic on validated element codes.
    pub fn arith(&self, op: ArithOp, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let a = self.element(a.0)?;
        let b = self.element(b.0)?;
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
            ArithOp::Inv => self.inv(a)?,
            ArithOp::Pow(e) => self.pow(a, e),
        })
    }

    /// Binds an element to this field.
    pub fn value(&self, code: u32) -> Result<FieldValue> {
        Ok(FieldValue {
            ctx: self.clone(),
            elem: self.element(code)?,
        })
    }
}

/// An element carrying its field, for arithmetic that must reject operands
/// from different fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldValue {
    ctx: FieldCtx,
    elem: FieldElement,
}

impl FieldValue {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn element(&self) -> FieldElement {
        self.elem
    }
}

/// Field arithmetic on bound elements. `b` is ignored by `Inv` and `Pow`.
pub fn field_arith(a: &FieldValue, b: &FieldValue, op: ArithOp) -> Result<FieldValue> {
    if a.ctx != b.ctx {
        return Err(Error::MixedContexts);
    }
    Ok(FieldValue {
        ctx: a.ctx.clone(),
        elem: a.ctx.arith(op, a.elem, b.elem)?,
    })
}

/// Every `x` in `F_q^×` with `x^k = 1`, in code order, with its exact order.
pub fn roots_of_unity(ctx: &FieldCtx, k: u64) -> Vec<RootOfUnity> {
    let mut roots: Vec<RootOfUnity> = ctx
        .nonzero_elements()
        .filter(|&x| ctx.pow(x, k) == FieldElement::ONE)
        .map(|x| RootOfUnity {
            element: x,
            order: ctx.order(x).expect("nonzero"),
        })
        .collect();
    roots.sort_by_key(|r| r.element);
    roots
}

/// `1` if `m` divides `q - 1`, else `0`.
pub fn factor_indicator(ctx: &FieldCtx, m: u64) -> u8 {
    divides_q_minus_one(ctx.q() as u64, m) as u8
}

pub(crate) fn divides_q_minus_one(q: u64, m: u64) -> bool {
    m != 0 && (q - 1).is_multiple_of(m)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^m` with `p` prime, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..)
        .take_while(|d| d * d <= q)
        .find(|d| q.is_multiple_of(*d))
        .unwrap_or(q);
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

fn check_order(p: u64, m: u32) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    if m < 1 {
        return Err(Error::InvalidField("extension degree must be at least 1".into()));
    }
    match p.checked_pow(m) {
        Some(q) if q <= MAX_ORDER => Ok(p as u32),
        _ => Err(Error::InvalidField(format!(
            "{p}^{m} exceeds the largest supported field order {MAX_ORDER}"
        ))),
    }
}

fn digits(mut code: u32, p: u32, m: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(m as usize);
    for _ in 0..m {
        d.push(code % p);
        code /= p;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn add_digits(mut a: u32, mut b: u32, p: u32, m: u32) -> u32 {
    let mut out = 0;
    let mut scale = 1;
    for _ in 0..m {
        out += ((a % p + b % p) % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    out
}

/// Product of two residues modulo a monic `modulus`, all over `Z_p`.
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let p = p as u64;
    for deg in (m..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (k, &f) in modulus.iter().take(m).enumerate() {
            let sub = c * f as u64 % p;
            let at = deg - m + k;
            prod[at] = (prod[at] + p - sub) % p;
        }
    }
    prod.truncate(m);
    prod.resize(m, 0);
    prod.into_iter().map(|c| c as u32).collect()
}

/// Remainder of `a` modulo monic `d` over `Z_p`.
fn poly_rem(a: &[u32], d: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let dd = d.len() - 1;
    let p = p as u64;
    while r.len() > dd {
        let c = r.pop().unwrap();
        if c == 0 {
            continue;
        }
        let top = r.len() - dd;
        for k in 0..dd {
            r[top + k] = (r[top + k] + p - c * d[k] as u64 % p) % p;
        }
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// Monic polynomials of degree `deg` over `Z_p`, in lexicographic order of
/// coefficients read from the constant term up.
fn monic_polys(p: u32, deg: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(deg);
    (0..count).map(move |idx| {
        let mut coeffs = vec![0u32; deg as usize + 1];
        let mut rest = idx;
        for j in (0..deg as usize).rev() {
            coeffs[j] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        coeffs[deg as usize] = 1;
        coeffs
    })
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = (f.len() - 1) as u32;
    (1..=deg / 2).all(|d| monic_polys(p, d).all(|g| poly_rem(f, &g, p).iter().any(|&c| c != 0)))
}

fn least_irreducible(p: u32, m: u32) -> Vec<u32> {
    monic_polys(p, m)
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn primitive_element(q: u32, mul: &impl Fn(u32, u32) -> u32) -> u32 {
    if q == 2 {
        return 1;
    }
    let order = (q - 1) as u64;
    let pow = |mut base: u32, mut e: u64| {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    let factors = prime_factors(order);
    (2..q)
        .find(|&g| factors.iter().all(|&r| pow(g, order / r) != 1))
        .expect("multiplicative group of a finite field is cyclic")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields_use_modulus_x() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]);
        assert_eq!(f2.q(), 2);
    }

    #[test]
    fn f4_modulus_is_forced() {
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        // g = x: x·x = x + 1
        let g = f4.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f4.mul(g, g), f4.from_coeffs(&[1, 1]).unwrap());
    }

    #[test]
    fn f9_modulus_is_least_irreducible_quadratic() {
        // Oracle: scan monic quadratics x^2 + c1 x + c0 over F_3 with c0
        // compared first, keeping the first one without a root in F_3.
        let mut expected = None;
        'outer: for c0 in 0..3u32 {
            for c1 in 0..3u32 {
                if (0..3u32).all(|x| (x * x + c1 * x + c0) % 3 != 0) {
                    expected = Some(vec![c0, c1, 1]);
                    break 'outer;
                }
            }
        }
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(f9.modulus(), expected.unwrap().as_slice());
        assert_eq!(f9.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(make_field(4, 1), Err(Error::InvalidField(_))));
        assert!(matches!(make_field(1, 1), Err(Error::InvalidField(_))));
        assert!(matches!(make_field(5, 0), Err(Error::InvalidField(_))));
        assert!(matches!(
            FieldCtx::with_modulus(2, &[1, 0, 1]),
            Err(Error::InvalidField(_))
        ));
    }

    #[test]
    fn small_arithmetic_examples() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.inv(FieldElement(2)).unwrap(), FieldElement(3));
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(f7.pow(FieldElement(3), 6), FieldElement::ONE);
        assert_eq!(f5.div(FieldElement(1), FieldElement::ZERO), Err(Error::DivisionByZero));
        assert_eq!(f5.inv(FieldElement::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn checked_arith_rejects_foreign_operands() {
        let f5 = make_field(5, 1).unwrap();
        let f7 = make_field(7, 1).unwrap();
        let a = f5.value(2).unwrap();
        let b = f7.value(3).unwrap();
        assert_eq!(field_arith(&a, &b, ArithOp::Add), Err(Error::MixedContexts));
        let c = make_field(5, 1).unwrap().value(4).unwrap();
        assert_eq!(field_arith(&a, &c, ArithOp::Mul).unwrap().element(), FieldElement(3));
        assert!(f5.value(5).is_err());
    }

    #[test]
    fn fermat_holds_exhaustively() {
        for (p, m) in [
            (2, 1),
            (3, 1),
            (2, 2),
            (5, 1),
            (7, 1),
            (2, 3),
            (3, 2),
            (2, 4),
            (5, 2),
            (2, 6),
            (7, 2),
            (3, 3),
        ] {
            let f = make_field(p, m).unwrap();
            let n = (f.q() - 1) as u64;
            for a in f.nonzero_elements() {
                assert_eq!(f.pow(a, n), FieldElement::ONE, "F_{}", f.q());
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
            }
        }
    }

    #[test]
    fn ring_axioms_exhaustive_small_fields() {
        for (p, m) in [
            (2, 1),
            (3, 1),
            (2, 2),
            (5, 1),
            (7, 1),
            (2, 3),
            (3, 2),
            (11, 1),
            (13, 1),
            (2, 4),
        ] {
            let f = make_field(p, m).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn large_field_without_add_table_agrees_with_digits() {
        let f = make_field(3, 7).unwrap();
        assert!(f.inner.add.is_none());
        let a = f.from_coeffs(&[1, 2, 0, 1, 1, 0, 2]).unwrap();
        let b = f.from_coeffs(&[2, 2, 1, 0, 2, 0, 1]).unwrap();
        assert_eq!(f.coeffs(f.add(a, b)), vec![0, 1, 1, 1, 0, 0, 0]);
        assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
    }

    #[test]
    fn roots_of_unity_examples() {
        let f4 = make_field(2, 2).unwrap();
        let roots = roots_of_unity(&f4, 3);
        assert_eq!(roots.len(), 3);
        assert_eq!(roots.iter().filter(|r| r.order == 3).count(), 2);

        let f5 = make_field(5, 1).unwrap();
        let roots = roots_of_unity(&f5, 3);
        assert_eq!(
            roots,
            vec![RootOfUnity {
                element: FieldElement::ONE,
                order: 1
            }]
        );

        // Oracle: cube every element of F_7^x.
        let f7 = make_field(7, 1).unwrap();
        let cubes: Vec<u32> = (1..7u32).filter(|x| x * x * x % 7 == 1).collect();
        let roots = roots_of_unity(&f7, 3);
        assert_eq!(roots.iter().map(|r| r.element.code()).collect::<Vec<_>>(), cubes);
        assert_eq!(cubes, vec![1, 2, 4]);
        let primitive: Vec<u32> = roots
            .iter()
            .filter(|r| r.order == 3)
            .map(|r| r.element.code())
            .collect();
        assert_eq!(primitive, vec![2, 4]);
    }

    #[test]
    fn roots_of_unity_count_is_gcd() {
        for (p, m) in [(2, 3), (3, 2), (5, 1), (7, 1), (2, 4), (13, 1)] {
            let f = make_field(p, m).unwrap();
            let n = (f.q() - 1) as u64;
            for k in 1..=2 * n {
                assert_eq!(roots_of_unity(&f, k).len() as u64, k.gcd(&n));
            }
            assert_eq!(roots_of_unity(&f, n).len() as u64, n);
        }
    }

    #[test]
    fn factor_indicator_examples() {
        assert_eq!(factor_indicator(&make_field(2, 1).unwrap(), 3), 0);
        assert_eq!(factor_indicator(&make_field(2, 2).unwrap(), 3), 1);
        assert_eq!(factor_indicator(&make_field(5, 1).unwrap(), 4), 1);
    }

    #[test]
    fn prime_power_splitting() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(0), None);
    }

    #[test]
    fn generator_has_full_order() {
        for (p, m) in [(2, 1), (2, 2), (3, 2), (5, 1), (2, 5), (17, 1)] {
            let f = make_field(p, m).unwrap();
            assert_eq!(f.order(f.generator()), Some((f.q() - 1) as u64));
        }
    }
}
