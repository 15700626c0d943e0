use super::{random_residue, Cardinality, Ring, RingDescriptor, RingKind};
use crate::error::{Error, Result};

/// The prime field GF(p); elements are least residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    /// Primes up to `2^32` are accepted.
    pub fn new(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i128(&self, k: i128) -> u64 {
        k.rem_euclid(self.p as i128) as u64
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor {
            kind: RingKind::PrimeField { p: self.p },
            is_commutative: true,
            is_division_ring: true,
            cardinality: Cardinality::Finite(self.p as u128),
        }
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_int(&self, k: i64) -> u64 {
        self.reduce_i128(k as i128)
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            Err(Error::NotInvertible)
        } else {
            Ok(self.pow(*a, self.p - 2))
        }
    }

    fn is_central(&self, _a: &u64) -> bool {
        true
    }

    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<u64> {
        let k: i128 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid GF({}) residue {s:?}", self.p)))?;
        Ok(self.reduce_i128(k))
    }

    fn sample<G: rand::Rng + ?Sized>(&self, rng: &mut G) -> u64 {
        random_residue(rng, self.p)
    }
}
