use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::group::FiniteAbelianGroup;
use crate::cyclotomic::{CyclotomicField, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::numtheory::{checked_pow, inv_mod, mul_mod};

/// Which coefficient ring a group-ring element lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingTag {
    ExactRational,
    Cyclotomic(u64),
    ResidueModPN { p: u64, n: u32 },
    ComplexFloat,
}

/// The residue ring `Z/p^n`. The precision `n` is part of the value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueRing {
    p: u64,
    n: u32,
    modulus: u64,
}

impl ResidueRing {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if p < 2 || n == 0 {
            return Err(Error::InvalidArgument(format!("bad residue ring {p}^{n}")));
        }
        let modulus = checked_pow(p, n)
            .filter(|&m| m < (1 << 62))
            .ok_or_else(|| Error::InvalidArgument(format!("{p}^{n} too large")))?;
        Ok(ResidueRing { p, n, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn element(&self, v: i64) -> Residue {
        Residue {
            value: v.rem_euclid(self.modulus as i64) as u64,
            modulus: self.modulus,
        }
    }

    /// p-adic valuation of a residue, capped at `n` (zero has valuation `n`).
    pub fn valuation(&self, x: u64) -> u32 {
        if x % self.modulus == 0 {
            return self.n;
        }
        crate::numtheory::valuation(x, self.p)
    }
}

/// An element of `Z/m`, carrying its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn inverse(&self) -> Option<Residue> {
        inv_mod(self.value, self.modulus).map(|value| Residue {
            value,
            modulus: self.modulus,
        })
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Coefficient rings usable in [`GroupRingElement`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Ring: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn tag(ring: &Self::Ring) -> RingTag;
    fn zero(ring: &Self::Ring) -> Self;
    fn from_int(ring: &Self::Ring, v: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Coefficient for BigRational {
    type Ring = ();

    fn tag(_: &()) -> RingTag {
        RingTag::ExactRational
    }
    fn zero(_: &()) -> Self {
        <BigRational as Zero>::zero()
    }
    fn from_int(_: &(), v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Coefficient for Residue {
    type Ring = ResidueRing;

    fn tag(ring: &ResidueRing) -> RingTag {
        RingTag::ResidueModPN {
            p: ring.p,
            n: ring.n,
        }
    }
    fn zero(ring: &ResidueRing) -> Self {
        ring.element(0)
    }
    fn from_int(ring: &ResidueRing, v: i64) -> Self {
        ring.element(v)
    }
    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Residue {
            value: ((self.value as u128 + other.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
    fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Residue {
            value: (self.value + self.modulus - other.value) % self.modulus,
            modulus: self.modulus,
        }
    }
    fn mul(&self, other: &Self) -> Self {
        Residue {
            value: mul_mod(self.value, other.value, self.modulus),
            modulus: self.modulus,
        }
    }
    fn neg(&self) -> Self {
        Residue {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl Coefficient for Complex64 {
    type Ring = ();

    fn tag(_: &()) -> RingTag {
        RingTag::ComplexFloat
    }
    fn zero(_: &()) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn from_int(_: &(), v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        *self == Complex64::new(0.0, 0.0)
    }
}

impl Coefficient for CyclotomicNumber {
    type Ring = Arc<CyclotomicField>;

    fn tag(ring: &Arc<CyclotomicField>) -> RingTag {
        RingTag::Cyclotomic(ring.level())
    }
    fn zero(ring: &Arc<CyclotomicField>) -> Self {
        CyclotomicNumber::zero(ring)
    }
    fn from_int(ring: &Arc<CyclotomicField>, v: i64) -> Self {
        CyclotomicNumber::from_rational(ring, BigRational::from_integer(v.into()))
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        CyclotomicNumber::is_zero(self)
    }
}

/// Commutative-ring interface shared by group-ring elements and scalars; the
/// module algebra (matrices, exterior powers) is written against it.
pub trait RingElement: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_elem(&self, other: &Self) -> Self;
    fn sub_elem(&self, other: &Self) -> Self;
    fn mul_elem(&self, other: &Self) -> Self;
    fn neg_elem(&self) -> Self;
}

impl RingElement for BigRational {
    fn zero_like(&self) -> Self {
        <BigRational as Zero>::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_elem(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_elem(&self) -> Self {
        -self
    }
}

impl RingElement for Residue {
    fn zero_like(&self) -> Self {
        Residue {
            value: 0,
            modulus: self.modulus,
        }
    }
    fn one_like(&self) -> Self {
        Residue {
            value: 1 % self.modulus,
            modulus: self.modulus,
        }
    }
    fn is_zero_elem(&self) -> bool {
        self.value == 0
    }
    fn add_elem(&self, other: &Self) -> Self {
        Coefficient::add(self, other)
    }
    fn sub_elem(&self, other: &Self) -> Self {
        Coefficient::sub(self, other)
    }
    fn mul_elem(&self, other: &Self) -> Self {
        Coefficient::mul(self, other)
    }
    fn neg_elem(&self) -> Self {
        Coefficient::neg(self)
    }
}

/// An element `sum_g c_g g` of `A[G]` with coefficients indexed by group-element index.
#[derive(Clone, PartialEq)]
pub struct GroupRingElement<C: Coefficient> {
    group: Arc<FiniteAbelianGroup>,
    ring: C::Ring,
    coeffs: Vec<C>,
}

pub type RationalGroupRing = GroupRingElement<BigRational>;
pub type ResidueGroupRing = GroupRingElement<Residue>;
pub type CyclotomicGroupRing = GroupRingElement<CyclotomicNumber>;
pub type ComplexGroupRing = GroupRingElement<Complex64>;

impl<C: Coefficient> fmt::Debug for GroupRingElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_map();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                list.entry(&format_args!("s{}", self.group.label(i)), c);
            }
        }
        list.finish()
    }
}

impl<C: Coefficient> GroupRingElement<C> {
    pub fn zero(group: &Arc<FiniteAbelianGroup>, ring: &C::Ring) -> Self {
        GroupRingElement {
            group: group.clone(),
            ring: ring.clone(),
            coeffs: vec![C::zero(ring); group.order()],
        }
    }

    pub fn one(group: &Arc<FiniteAbelianGroup>, ring: &C::Ring) -> Self {
        Self::basis(group, ring, group.identity())
    }

    /// The group element with index `x`, as a ring element.
    pub fn basis(group: &Arc<FiniteAbelianGroup>, ring: &C::Ring, x: usize) -> Self {
        let mut e = Self::zero(group, ring);
        e.coeffs[x] = C::from_int(ring, 1);
        e
    }

    pub fn from_coeffs(group: &Arc<FiniteAbelianGroup>, ring: &C::Ring, coeffs: Vec<C>) -> Self {
        assert_eq!(coeffs.len(), group.order(), "one coefficient per group element");
        GroupRingElement {
            group: group.clone(),
            ring: ring.clone(),
            coeffs,
        }
    }

    /// Build from (residue label, coefficient) pairs; repeated labels accumulate.
    pub fn from_terms(
        group: &Arc<FiniteAbelianGroup>,
        ring: &C::Ring,
        terms: impl IntoIterator<Item = (i64, C)>,
    ) -> Result<Self> {
        let mut e = Self::zero(group, ring);
        for (a, c) in terms {
            let x = group.try_element_of(a)?;
            e.coeffs[x] = e.coeffs[x].add(&c);
        }
        Ok(e)
    }

    pub fn group(&self) -> &Arc<FiniteAbelianGroup> {
        &self.group
    }

    pub fn ring(&self) -> &C::Ring {
        &self.ring
    }

    pub fn tag(&self) -> RingTag {
        C::tag(&self.ring)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, x: usize) -> &C {
        &self.coeffs[x]
    }

    /// Coefficient of `sigma_a`.
    pub fn coeff_of_label(&self, a: i64) -> Option<&C> {
        self.group.element_of(a).map(|x| &self.coeffs[x])
    }

    pub fn set_coeff(&mut self, x: usize, c: C) {
        self.coeffs[x] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        self.ring == other.ring && (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group)
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        GroupRingElement {
            group: self.group.clone(),
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Sum of coefficients.
    pub fn augmentation(&self) -> C {
        self.coeffs
            .iter()
            .fold(C::zero(&self.ring), |acc, c| acc.add(c))
    }

    /// Multiplication by the group element `g` (a permutation of coefficients).
    pub fn translate(&self, g: usize) -> Self {
        let mut out = Self::zero(&self.group, &self.ring);
        for (x, c) in self.coeffs.iter().enumerate() {
            out.coeffs[self.group.mul(g, x)] = c.clone();
        }
        out
    }

    /// The involution `sigma -> sigma^{-1}`.
    pub fn involution(&self) -> Self {
        let mut out = Self::zero(&self.group, &self.ring);
        for (x, c) in self.coeffs.iter().enumerate() {
            out.coeffs[self.group.inv(x)] = c.clone();
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(&self.group, &self.ring), |acc, _| &acc * self)
    }

    fn check_compatible(&self, other: &Self) {
        assert!(
            self.same_ring(other),
            "group-ring operands over different groups or rings"
        );
    }
}

impl<C: Coefficient> Add for &GroupRingElement<C> {
    type Output = GroupRingElement<C>;
    fn add(self, rhs: Self) -> GroupRingElement<C> {
        self.check_compatible(rhs);
        GroupRingElement {
            group: self.group.clone(),
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }
}

impl<C: Coefficient> Sub for &GroupRingElement<C> {
    type Output = GroupRingElement<C>;
    fn sub(self, rhs: Self) -> GroupRingElement<C> {
        self.check_compatible(rhs);
        GroupRingElement {
            group: self.group.clone(),
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.sub(b)).collect(),
        }
    }
}

impl<C: Coefficient> Mul for &GroupRingElement<C> {
    type Output = GroupRingElement<C>;
    fn mul(self, rhs: Self) -> GroupRingElement<C> {
        self.check_compatible(rhs);
        let mut out = GroupRingElement::<C>::zero(&self.group, &self.ring);
        for (x, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (y, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let z = self.group.mul(x, y);
                out.coeffs[z] = out.coeffs[z].add(&a.mul(b));
            }
        }
        out
    }
}

impl<C: Coefficient> Neg for &GroupRingElement<C> {
    type Output = GroupRingElement<C>;
    fn neg(self) -> GroupRingElement<C> {
        self.map(C::neg)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coefficient> $tr for GroupRingElement<C> {
            type Output = GroupRingElement<C>;
            fn $m(self, rhs: Self) -> GroupRingElement<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coefficient> RingElement for GroupRingElement<C> {
    fn zero_like(&self) -> Self {
        Self::zero(&self.group, &self.ring)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.group, &self.ring)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_elem(&self) -> Self {
        -self
    }
}

impl GroupRingElement<Residue> {
    pub fn residue_ring(&self) -> ResidueRing {
        self.ring
    }

    /// Coefficient values in element-index order.
    pub fn values(&self) -> Vec<u64> {
        self.coeffs.iter().map(Residue::value).collect()
    }
}

impl GroupRingElement<BigRational> {
    /// Exact inverse in `Q[G]`, by solving `x * y = 1` in the regular representation.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.group.order();
        // column y of the matrix is x * (basis y)
        let mut m: Vec<Vec<BigRational>> = vec![vec![<BigRational as Zero>::zero(); n + 1]; n];
        for y in 0..n {
            for (x, c) in self.coeffs.iter().enumerate() {
                m[self.group.mul(x, y)][y] += c;
            }
        }
        m[self.group.identity()][n] = BigRational::one();
        let sol = crate::modalg::matrix::solve_rational(m)?;
        Some(Self::from_coeffs(&self.group, &(), sol))
    }

    pub fn to_complex(&self) -> ComplexGroupRing {
        use num_traits::ToPrimitive;
        GroupRingElement {
            group: self.group.clone(),
            ring: (),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
                .collect(),
        }
    }
}

impl GroupRingElement<CyclotomicNumber> {
    /// Extract rational coefficients, failing if any coefficient is irrational.
    pub fn to_rational(&self) -> Result<RationalGroupRing> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(x, c)| c.as_rational().ok_or(Error::RationalDescent(self.group.label(x))))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupRingElement::from_coeffs(&self.group, &(), coeffs))
    }

    pub fn from_rational(x: &RationalGroupRing, field: &Arc<CyclotomicField>) -> Self {
        GroupRingElement {
            group: x.group.clone(),
            ring: field.clone(),
            coeffs: x
                .coeffs
                .iter()
                .map(|c| CyclotomicNumber::from_rational(field, c.clone()))
                .collect(),
        }
    }
}
