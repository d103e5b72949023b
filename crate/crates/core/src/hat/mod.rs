//! The divided-power Novikov algebra `H` and the embedding of a truncated
//! free differential algebra `A` into `Â = A ⊗ H`,
//! `ψ(a) = Σ_s d^s(a) ⊗ x^(s)`.
//!
//! `A` is the free magmatic algebra on generators `d^s(x_i)` with `d^N(x_i) = 0`;
//! no further relations are imposed.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::oracle::{DiffPoly, DiffTree};

/// `x^(n) · x^(m) = C(n+m−1, n) · x^(n+m−1)`.
///
/// `None` for `n = m = 0`, where the formula has no index; that product is
/// taken to be zero. For `m = 0 < n` the coefficient is `0`.
pub fn h_mult(n: usize, m: usize) -> Option<(BigInt, usize)> {
    if n + m == 0 {
        return None;
    }
    let top = n + m - 1;
    Some((binomial(top, n), top))
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// An element of `H`: index → coefficient.
pub type HElement = BTreeMap<usize, Rational>;

pub fn h_product(f: &HElement, g: &HElement) -> HElement {
    let mut out = HElement::new();
    for (a, ca) in f {
        for (b, cb) in g {
            if let Some((c, idx)) = h_mult(*a, *b) {
                if c.is_zero() {
                    continue;
                }
                let v = out.entry(idx).or_insert_with(Rational::zero);
                *v += ca * cb * Rational::from_integer(c);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn h_basis(n: usize) -> HElement {
    HElement::from([(n, Rational::one())])
}

/// Left-symmetry and right-commutativity of `H` on `x^(a), x^(b), x^(c)`
/// for `1 ≤ a, b, c ≤ bound`.
pub fn check_h_novikov(bound: usize) -> bool {
    let mul = h_product;
    let sub = |f: &HElement, g: &HElement| {
        let mut out = f.clone();
        for (i, c) in g {
            *out.entry(*i).or_insert_with(Rational::zero) -= c;
        }
        out.retain(|_, v| !v.is_zero());
        out
    };
    for a in 1..=bound {
        for b in 1..=bound {
            for c in 1..=bound {
                let (x, y, z) = (h_basis(a), h_basis(b), h_basis(c));
                let assoc = |p: &HElement, q: &HElement, r: &HElement| sub(&mul(&mul(p, q), r), &mul(p, &mul(q, r)));
                if assoc(&x, &y, &z) != assoc(&y, &x, &z) {
                    return false;
                }
                if mul(&mul(&x, &y), &z) != mul(&mul(&x, &z), &y) {
                    return false;
                }
            }
        }
    }
    true
}

/// An element of the free magmatic differential algebra modulo `d^N(x) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedElement {
    bound: u32,
    poly: DiffPoly,
}

impl TruncatedElement {
    pub fn zero(bound: u32) -> Self {
        TruncatedElement {
            bound,
            poly: DiffPoly::zero(1),
        }
    }

    /// `d^order(x_var)`, zero when `order ≥ bound`.
    pub fn generator(bound: u32, var: u8, order: u32) -> Self {
        TruncatedElement::from_poly(bound, DiffPoly::leaf(1, var, order))
    }

    /// Reduces `poly` modulo the truncation. `poly` must be magmatic.
    pub fn from_poly(bound: u32, poly: DiffPoly) -> Self {
        TruncatedElement {
            bound,
            poly: poly.filter(|t| max_order(t) < bound),
        }
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn poly(&self) -> &DiffPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, other: &TruncatedElement) -> Result<TruncatedElement> {
        self.same_bound(other)?;
        Ok(TruncatedElement {
            bound: self.bound,
            poly: self.poly.add(&other.poly),
        })
    }

    pub fn scale(&self, c: &Rational) -> TruncatedElement {
        TruncatedElement {
            bound: self.bound,
            poly: self.poly.scale(c),
        }
    }

    pub fn derive(&self) -> TruncatedElement {
        TruncatedElement::from_poly(self.bound, self.poly.derive(&Rational::zero()))
    }

    pub fn mul(&self, other: &TruncatedElement) -> Result<TruncatedElement> {
        self.same_bound(other)?;
        Ok(TruncatedElement {
            bound: self.bound,
            poly: DiffPoly::join(0, &self.poly, &other.poly)?,
        })
    }

    /// `a ≺ b = a · d(b)`
    pub fn prec(&self, other: &TruncatedElement) -> Result<TruncatedElement> {
        self.mul(&other.derive())
    }

    /// `a ≻ b = d(a) · b`
    pub fn succ(&self, other: &TruncatedElement) -> Result<TruncatedElement> {
        self.derive().mul(other)
    }

    fn same_bound(&self, other: &TruncatedElement) -> Result<()> {
        if self.bound != other.bound {
            return Err(Error::TruncationMismatch(self.bound, other.bound));
        }
        Ok(())
    }
}

fn max_order(t: &DiffTree) -> u32 {
    match t {
        DiffTree::Leaf { order, .. } => *order,
        DiffTree::Node(_, l, r) => max_order(l).max(max_order(r)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HatOp {
    Prec,
    Succ,
}

/// A finite combination of `a ⊗ x^(s)` with `a` a truncated basis tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatElement {
    bound: u32,
    terms: BTreeMap<(DiffTree, usize), Rational>,
}

impl HatElement {
    pub fn zero(bound: u32) -> Self {
        HatElement {
            bound,
            terms: BTreeMap::new(),
        }
    }

    /// `a ⊗ x^(s)`
    pub fn tensor(a: &TruncatedElement, s: usize) -> Self {
        let mut out = HatElement::zero(a.bound);
        for (t, c) in a.poly.terms() {
            out.push((t.clone(), s), c.clone());
        }
        out
    }

    fn push(&mut self, key: (DiffTree, usize), c: Rational) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(DiffTree, usize), &Rational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &HatElement) -> Result<HatElement> {
        if self.bound != other.bound {
            return Err(Error::TruncationMismatch(self.bound, other.bound));
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.push(k.clone(), c.clone());
        }
        Ok(out)
    }

    /// The `A`-coefficient of `x^(s)`.
    pub fn component(&self, s: usize) -> TruncatedElement {
        let mut poly = DiffPoly::zero(1);
        for ((t, i), c) in &self.terms {
            if *i == s {
                poly.push(t.clone(), c.clone());
            }
        }
        TruncatedElement {
            bound: self.bound,
            poly,
        }
    }
}

/// `(a⊗f) ≺ (b⊗g) = ab ⊗ f·g` and `(a⊗f) ≻ (b⊗g) = ab ⊗ g·f`.
pub fn hat_op(u: &HatElement, v: &HatElement, which: HatOp) -> Result<HatElement> {
    if u.bound != v.bound {
        return Err(Error::TruncationMismatch(u.bound, v.bound));
    }
    let mut out = HatElement::zero(u.bound);
    for ((a, f), ca) in &u.terms {
        for ((b, g), cb) in &v.terms {
            let product = match which {
                HatOp::Prec => h_mult(*f, *g),
                HatOp::Succ => h_mult(*g, *f),
            };
            if let Some((c, idx)) = product {
                let ab = DiffTree::Node(0, Box::new(a.clone()), Box::new(b.clone()));
                out.push((ab, idx), ca * cb * Rational::from_integer(c));
            }
        }
    }
    Ok(out)
}

/// `ψ(a) = Σ_{s≥0} d^s(a) ⊗ x^(s)`; the sum stops once `d^s(a)` vanishes.
pub fn psi(a: &TruncatedElement) -> HatElement {
    let mut out = HatElement::zero(a.bound);
    let mut current = a.clone();
    let mut s = 0;
    while !current.is_zero() {
        for (t, c) in current.poly.terms() {
            out.push((t.clone(), s), c.clone());
        }
        current = current.derive();
        s += 1;
    }
    out
}

fn random_tree(rng: &mut ChaCha8Rng, leaves: usize, bound: u32) -> DiffTree {
    if leaves == 1 {
        return DiffTree::Leaf {
            var: rng.gen_range(0..3),
            order: rng.gen_range(0..bound),
        };
    }
    let left = rng.gen_range(1..leaves);
    DiffTree::Node(
        0,
        Box::new(random_tree(rng, left, bound)),
        Box::new(random_tree(rng, leaves - left, bound)),
    )
}

/// A random truncated element with up to three terms of up to three leaves.
pub fn random_element(rng: &mut ChaCha8Rng, bound: u32) -> TruncatedElement {
    let mut poly = DiffPoly::zero(1);
    for _ in 0..rng.gen_range(1..=3) {
        let leaves = rng.gen_range(1..=3);
        let c: i64 = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
        poly = poly.add(&DiffPoly::term(1, random_tree(rng, leaves, bound), Rational::from_integer(c.into())));
    }
    TruncatedElement::from_poly(bound, poly)
}

/// Outcome of [`psi_homomorphism_report`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiReport {
    pub samples: usize,
    pub prec_failures: usize,
    pub succ_failures: usize,
}

impl PsiReport {
    pub fn passed(&self) -> bool {
        self.prec_failures == 0 && self.succ_failures == 0
    }
}

/// Checks `ψ(a≺b) = ψ(a)≺ψ(b)` and `ψ(a≻b) = ψ(a)≻ψ(b)` on seeded random
/// pairs, counting failures of each.
pub fn psi_homomorphism_report(samples: usize, bound: u32, seed: u64) -> Result<PsiReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PsiReport {
        samples,
        prec_failures: 0,
        succ_failures: 0,
    };
    for _ in 0..samples {
        let a = random_element(&mut rng, bound);
        let b = random_element(&mut rng, bound);
        if psi(&a.prec(&b)?) != hat_op(&psi(&a), &psi(&b), HatOp::Prec)? {
            report.prec_failures += 1;
        }
        if psi(&a.succ(&b)?) != hat_op(&psi(&a), &psi(&b), HatOp::Succ)? {
            report.succ_failures += 1;
        }
    }
    Ok(report)
}

pub fn check_psi_homomorphism(samples: usize, bound: u32, seed: u64) -> bool {
    psi_homomorphism_report(samples, bound, seed).is_ok_and(|r| r.passed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn divided_power_products() {
        assert_eq!(h_mult(1, 1), Some((BigInt::from(1), 1)));
        assert_eq!(h_mult(2, 3), Some((BigInt::from(6), 4)));
        assert_eq!(h_mult(1, 2), Some((BigInt::from(2), 2)));
        assert_eq!(h_mult(2, 1), Some((BigInt::from(1), 2)));
        assert_eq!(h_mult(3, 0), Some((BigInt::from(0), 2)));
        assert_eq!(h_mult(0, 0), None);
    }

    #[test]
    fn right_commutativity_instance() {
        let left = h_product(&h_product(&h_basis(1), &h_basis(2)), &h_basis(3));
        let right = h_product(&h_product(&h_basis(1), &h_basis(3)), &h_basis(2));
        assert_eq!(left, HElement::from([(4, int(12))]));
        assert_eq!(left, right);
    }

    #[test]
    fn h_is_novikov() {
        assert!(check_h_novikov(3));
        assert!(check_h_novikov(8));
    }

    #[test]
    fn psi_of_a_generator() {
        let x1 = TruncatedElement::generator(3, 0, 0);
        let mut expected = HatElement::zero(3);
        for s in 0..3 {
            expected = expected.add(&HatElement::tensor(&TruncatedElement::generator(3, 0, s as u32), s)).unwrap();
        }
        assert_eq!(psi(&x1), expected);
        let top = TruncatedElement::generator(3, 0, 2);
        assert_eq!(psi(&top), HatElement::tensor(&top, 0));
        assert!(psi(&TruncatedElement::zero(3)).is_zero());
    }

    #[test]
    fn hat_operations_on_small_elements() {
        let a = HatElement::tensor(&TruncatedElement::generator(4, 0, 0), 1);
        let b1 = HatElement::tensor(&TruncatedElement::generator(4, 1, 0), 1);
        let b2 = HatElement::tensor(&TruncatedElement::generator(4, 1, 0), 2);
        let ab = TruncatedElement::generator(4, 0, 0).mul(&TruncatedElement::generator(4, 1, 0)).unwrap();
        assert_eq!(hat_op(&a, &b1, HatOp::Prec).unwrap(), HatElement::tensor(&ab, 1));
        assert_eq!(hat_op(&a, &b2, HatOp::Succ).unwrap(), HatElement::tensor(&ab, 2));
        assert!(hat_op(&HatElement::zero(4), &b1, HatOp::Prec).unwrap().is_zero());
        assert!(hat_op(&HatElement::zero(3), &b1, HatOp::Prec).is_err());
    }

    #[test]
    fn psi_respects_derived_operations_on_generators() {
        let x1 = TruncatedElement::generator(3, 0, 0);
        let x2 = TruncatedElement::generator(3, 1, 0);
        assert_eq!(psi(&x1.prec(&x2).unwrap()), hat_op(&psi(&x1), &psi(&x2), HatOp::Prec).unwrap());
        assert_eq!(psi(&x1.succ(&x2).unwrap()), hat_op(&psi(&x1), &psi(&x2), HatOp::Succ).unwrap());
        let zero = TruncatedElement::zero(3);
        assert!(psi(&zero.prec(&x2).unwrap()).is_zero());
        assert!(hat_op(&psi(&zero), &psi(&x2), HatOp::Prec).unwrap().is_zero());
    }

    #[test]
    fn iterated_derivative_of_prec_matches_binomial_sum() {
        let a = TruncatedElement::generator(9, 0, 0);
        let b = TruncatedElement::generator(9, 1, 0);
        let ab = a.prec(&b).unwrap();
        let mut direct = ab;
        for s in 0..=4u32 {
            let mut formula = TruncatedElement::zero(9);
            for i in 0..=s {
                let term = TruncatedElement::generator(9, 0, i)
                    .mul(&TruncatedElement::generator(9, 1, s - i + 1))
                    .unwrap()
                    .scale(&Rational::from_integer(binomial(s as usize, i as usize)));
                formula = formula.add(&term).unwrap();
            }
            assert_eq!(direct, formula, "s = {s}");
            direct = direct.derive();
        }
    }

    #[test]
    fn psi_is_injective_on_the_degree_zero_part() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_element(&mut rng, 4);
            assert_eq!(psi(&a).component(0), a);
        }
    }

    #[test]
    fn seeded_homomorphism_run() {
        let r = psi_homomorphism_report(50, 4, 42).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(psi_homomorphism_report(50, 4, 42).unwrap(), r);
    }
}
