use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{format_rational, parse_rational, small_rational, Cardinality, Ring, RingDescriptor, RingKind};
use crate::error::{Error, Result};

/// Unnormalized sum of rational products, reduced once in [`FracSum::finish`].
///
/// Stays in `i128` while every operand fits in `i64` and nothing overflows.
pub(crate) enum FracSum {
    Small { num: i128, den: i128 },
    Big { num: BigInt, den: BigInt },
}

fn small(x: &BigRational) -> Option<(i128, i128)> {
    Some((x.numer().to_i64()? as i128, x.denom().to_i64()? as i128))
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    // Binary gcd: i128 division is a slow library call.
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    if a == 0 || b == 0 {
        return (a | b) as i128;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return (a << shift) as i128;
        }
    }
}

impl FracSum {
    pub(crate) fn new() -> Self {
        FracSum::Small { num: 0, den: 1 }
    }

    fn make_big(&mut self) {
        if let FracSum::Small { num, den } = *self {
            *self = FracSum::Big {
                num: BigInt::from(num),
                den: BigInt::from(den),
            };
        }
    }

    fn add_small(num: i128, den: i128, pn: i128, pd: i128) -> Option<(i128, i128)> {
        if pd == den {
            Some((num.checked_add(pn)?, den))
        } else if pd == 1 || den == 1 {
            Some((num.checked_mul(pd)?.checked_add(pn.checked_mul(den)?)?, den * pd))
        } else {
            let g = gcd_i128(den, pd);
            let n = num.checked_mul(pd / g)?.checked_add(pn.checked_mul(den / g)?)?;
            Some((n, (den / g).checked_mul(pd)?))
        }
    }

    /// Adds `±a·b`.
    pub(crate) fn add_product(&mut self, a: &BigRational, b: &BigRational, negate: bool) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        if let FracSum::Small { num, den } = *self {
            if let (Some((an, ad)), Some((bn, bd))) = (small(a), small(b)) {
                let pn = if negate { -(an * bn) } else { an * bn };
                if let Some((n, d)) = Self::add_small(num, den, pn, ad * bd) {
                    *self = FracSum::Small { num: n, den: d };
                    return;
                }
            }
            self.make_big();
        }
        let FracSum::Big { num, den } = self else {
            unreachable!("promoted above")
        };
        let mut pn = a.numer() * b.numer();
        if negate {
            pn = -pn;
        }
        let pd = a.denom() * b.denom();
        if &pd == den {
            *num += pn;
        } else {
            *num = &*num * &pd + pn * &*den;
            *den *= pd;
        }
    }

    pub(crate) fn finish(self) -> BigRational {
        match self {
            FracSum::Small { num, den: 1 } => BigRational::from_integer(BigInt::from(num)),
            FracSum::Small { num, den } => {
                let g = gcd_i128(num, den).max(1);
                BigRational::new_raw(BigInt::from(num / g), BigInt::from(den / g))
            }
            FracSum::Big { num, den } => BigRational::new(num, den),
        }
    }
}

/// The field of rational numbers with arbitrary-precision fractions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor {
            kind: RingKind::Rational,
            is_commutative: true,
            is_division_ring: true,
            cardinality: Cardinality::Infinite,
        }
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_int(&self, k: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(k))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn dot<'a, I>(&self, terms: I) -> BigRational
    where
        I: IntoIterator<Item = (&'a BigRational, &'a BigRational)>,
    {
        let mut acc = FracSum::new();
        for (a, b) in terms {
            acc.add_product(a, b, false);
        }
        acc.finish()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            Err(Error::NotInvertible)
        } else {
            Ok(a.recip())
        }
    }

    fn is_central(&self, _a: &BigRational) -> bool {
        true
    }

    fn format_elem(&self, a: &BigRational) -> String {
        format_rational(a)
    }

    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        parse_rational(s)
    }

    fn sample<G: rand::Rng + ?Sized>(&self, rng: &mut G) -> BigRational {
        small_rational(rng)
    }
}
