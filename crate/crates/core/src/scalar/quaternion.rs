use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{
    format_rational, parse_rational, parse_tuple, small_rational, Cardinality, FracSum, Ring, RingDescriptor, RingKind,
};
use crate::error::{Error, Result};

/// A rational quaternion `w + x i + y j + z k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quaternion {
    pub w: BigRational,
    pub x: BigRational,
    pub y: BigRational,
    pub z: BigRational,
}

impl Quaternion {
    pub fn new(w: BigRational, x: BigRational, y: BigRational, z: BigRational) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn from_ints(w: i64, x: i64, y: i64, z: i64) -> Self {
        let r = |v: i64| BigRational::from_integer(BigInt::from(v));
        Quaternion::new(r(w), r(x), r(y), r(z))
    }

    pub fn real(w: BigRational) -> Self {
        Quaternion::new(w, Zero::zero(), Zero::zero(), Zero::zero())
    }

    pub fn zero() -> Self {
        Quaternion::from_ints(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Quaternion::from_ints(1, 0, 0, 0)
    }

    pub fn i() -> Self {
        Quaternion::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Quaternion::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Quaternion::from_ints(0, 0, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// True when the quaternion lies in the center, i.e. is rational.
    pub fn is_real(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.w.clone(), -&self.x, -&self.y, -&self.z)
    }

    /// Reduced norm `w² + x² + y² + z²`.
    pub fn norm(&self) -> BigRational {
        &self.w * &self.w + &self.x * &self.x + &self.y * &self.y + &self.z * &self.z
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Quaternion::new(&self.w * s, &self.x * s, &self.y * s, &self.z * s)
    }

    pub fn scale_int(&self, s: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(s)))
    }

    fn add(&self, o: &Self) -> Self {
        Quaternion::new(&self.w + &o.w, &self.x + &o.x, &self.y + &o.y, &self.z + &o.z)
    }

    fn sub(&self, o: &Self) -> Self {
        Quaternion::new(&self.w - &o.w, &self.x - &o.x, &self.y - &o.y, &self.z - &o.z)
    }
}

/// The division ring of rational quaternions; its center is Q.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Quaternions;

impl Ring for Quaternions {
    type Elem = Quaternion;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor {
            kind: RingKind::QuaternionRational,
            is_commutative: false,
            is_division_ring: true,
            cardinality: Cardinality::Infinite,
        }
    }

    fn zero(&self) -> Quaternion {
        Quaternion::zero()
    }

    fn one(&self) -> Quaternion {
        Quaternion::one()
    }

    fn from_int(&self, k: i64) -> Quaternion {
        Quaternion::from_ints(k, 0, 0, 0)
    }

    fn add(&self, a: &Quaternion, b: &Quaternion) -> Quaternion {
        a.add(b)
    }

    fn neg(&self, a: &Quaternion) -> Quaternion {
        Quaternion::new(-&a.w, -&a.x, -&a.y, -&a.z)
    }

    fn sub(&self, a: &Quaternion, b: &Quaternion) -> Quaternion {
        a.sub(b)
    }

    fn mul(&self, a: &Quaternion, b: &Quaternion) -> Quaternion {
        if a.is_real() {
            return b.scale(&a.w);
        }
        if b.is_real() {
            return a.scale(&b.w);
        }
        self.dot([(a, b)])
    }

    /// Each component of `Σ a_k b_k` is one fraction sum of `4n` products.
    fn dot<'a, I>(&self, terms: I) -> Quaternion
    where
        I: IntoIterator<Item = (&'a Quaternion, &'a Quaternion)>,
    {
        let mut acc = [FracSum::new(), FracSum::new(), FracSum::new(), FracSum::new()];
        for (p, q) in terms {
            let l = [&p.w, &p.x, &p.y, &p.z];
            let r = [&q.w, &q.x, &q.y, &q.z];
            // (component, left index, right index, negate) for the Hamilton product.
            const TABLE: [(usize, usize, usize, bool); 16] = [
                (0, 0, 0, false),
                (0, 1, 1, true),
                (0, 2, 2, true),
                (0, 3, 3, true),
                (1, 0, 1, false),
                (1, 1, 0, false),
                (1, 2, 3, false),
                (1, 3, 2, true),
                (2, 0, 2, false),
                (2, 1, 3, true),
                (2, 2, 0, false),
                (2, 3, 1, false),
                (3, 0, 3, false),
                (3, 1, 2, false),
                (3, 2, 1, true),
                (3, 3, 0, false),
            ];
            for (c, i, j, neg) in TABLE {
                acc[c].add_product(l[i], r[j], neg);
            }
        }
        let [w, x, y, z] = acc.map(FracSum::finish);
        Quaternion::new(w, x, y, z)
    }

    fn is_zero(&self, a: &Quaternion) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &Quaternion) -> bool {
        a.is_real() && a.w.is_one()
    }

    /// Conjugate over reduced norm.
    fn inv(&self, a: &Quaternion) -> Result<Quaternion> {
        if a.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(a.conj().scale(&a.norm().recip()))
    }

    fn is_central(&self, a: &Quaternion) -> bool {
        a.is_real()
    }

    fn noncommuting_pair(&self) -> Option<(Quaternion, Quaternion)> {
        Some((Quaternion::i(), Quaternion::j()))
    }

    fn format_elem(&self, a: &Quaternion) -> String {
        format!(
            "[{},{},{},{}]",
            format_rational(&a.w),
            format_rational(&a.x),
            format_rational(&a.y),
            format_rational(&a.z)
        )
    }

    fn parse_elem(&self, s: &str) -> Result<Quaternion> {
        let parts = parse_tuple(s, 4)?;
        Ok(Quaternion::new(
            parse_rational(parts[0])?,
            parse_rational(parts[1])?,
            parse_rational(parts[2])?,
            parse_rational(parts[3])?,
        ))
    }

    fn sample<G: rand::Rng + ?Sized>(&self, rng: &mut G) -> Quaternion {
        Quaternion::new(
            small_rational(rng),
            small_rational(rng),
            small_rational(rng),
            small_rational(rng),
        )
    }
}
