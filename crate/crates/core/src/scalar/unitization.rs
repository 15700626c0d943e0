use super::{parse_tuple, BaseField, Cardinality, Ring, RingDescriptor, RingKind};
use crate::error::{Error, Result};

/// Element `t0·1 + t1 c1 + t2 c2 + t3 c3 + t4 c4` of the counterexample ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitElem<E> {
    pub unit: E,
    pub nil: [E; 4],
}

/// Unitization `C = F·1 ⊕ C0` of the four-dimensional F-algebra `C0` with
/// basis `c1..c4` and zero multiplication (`ci·cj = 0`).
///
/// Commutative and unital, but not a division ring: every `ci` squares to
/// zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Unitization<F> {
    base: F,
}

impl<F: Ring> Unitization<F> {
    /// The base must be a commutative field (Q or GF(p)).
    pub fn new(base: F) -> Result<Self> {
        let d = base.descriptor();
        if !d.is_field() {
            return Err(Error::UnsupportedRing(format!(
                "counterexample base must be a field, got {}",
                d.kind
            )));
        }
        Ok(Unitization { base })
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn embed(&self, t0: F::Elem) -> UnitElem<F::Elem> {
        let z = self.base.zero();
        UnitElem {
            unit: t0,
            nil: [z.clone(), z.clone(), z.clone(), z],
        }
    }

    /// The basis element `c_{i+1}` for `i` in `0..4`.
    pub fn c(&self, i: usize) -> UnitElem<F::Elem> {
        let mut e = self.embed(self.base.zero());
        e.nil[i] = self.base.one();
        e
    }
}

impl<F: Ring> Ring for Unitization<F> {
    type Elem = UnitElem<F::Elem>;

    fn descriptor(&self) -> RingDescriptor {
        let bd = self.base.descriptor();
        let base = match bd.kind {
            RingKind::PrimeField { p } => BaseField::PrimeField { p },
            _ => BaseField::Rational,
        };
        let cardinality = match bd.cardinality {
            Cardinality::Finite(q) => Cardinality::Finite(q.pow(5)),
            Cardinality::Infinite => Cardinality::Infinite,
        };
        RingDescriptor {
            kind: RingKind::Counterexample { base },
            is_commutative: true,
            is_division_ring: false,
            cardinality,
        }
    }

    fn zero(&self) -> Self::Elem {
        self.embed(self.base.zero())
    }

    fn one(&self) -> Self::Elem {
        self.embed(self.base.one())
    }

    fn from_int(&self, k: i64) -> Self::Elem {
        self.embed(self.base.from_int(k))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        UnitElem {
            unit: self.base.add(&a.unit, &b.unit),
            nil: std::array::from_fn(|i| self.base.add(&a.nil[i], &b.nil[i])),
        }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        UnitElem {
            unit: self.base.neg(&a.unit),
            nil: std::array::from_fn(|i| self.base.neg(&a.nil[i])),
        }
    }

    /// `(λ + a)(μ + b) = λμ + (λ b + μ a)` since `ab = 0` in `C0`.
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        UnitElem {
            unit: f.mul(&a.unit, &b.unit),
            nil: std::array::from_fn(|i| f.add(&f.mul(&a.unit, &b.nil[i]), &f.mul(&b.unit, &a.nil[i]))),
        }
    }

    fn dot<'a, I>(&self, terms: I) -> Self::Elem
    where
        I: IntoIterator<Item = (&'a Self::Elem, &'a Self::Elem)>,
    {
        let terms: Vec<_> = terms.into_iter().collect();
        let f = &self.base;
        UnitElem {
            unit: f.dot(terms.iter().map(|(a, b)| (&a.unit, &b.unit))),
            nil: std::array::from_fn(|i| {
                f.dot(
                    terms
                        .iter()
                        .flat_map(|(a, b)| [(&a.unit, &b.nil[i]), (&a.nil[i], &b.unit)]),
                )
            }),
        }
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.base.is_zero(&a.unit) && a.nil.iter().all(|t| self.base.is_zero(t))
    }

    /// `(t0 + v)^{-1} = t0^{-1} - t0^{-2} v`, defined iff `t0 != 0`.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        let f = &self.base;
        let u = f.inv(&a.unit)?;
        let u2 = f.neg(&f.mul(&u, &u));
        Ok(UnitElem {
            nil: std::array::from_fn(|i| f.mul(&u2, &a.nil[i])),
            unit: u,
        })
    }

    fn is_central(&self, _a: &Self::Elem) -> bool {
        true
    }

    fn format_elem(&self, a: &Self::Elem) -> String {
        let f = &self.base;
        format!(
            "[{},{},{},{},{}]",
            f.format_elem(&a.unit),
            f.format_elem(&a.nil[0]),
            f.format_elem(&a.nil[1]),
            f.format_elem(&a.nil[2]),
            f.format_elem(&a.nil[3])
        )
    }

    fn parse_elem(&self, s: &str) -> Result<Self::Elem> {
        let parts = parse_tuple(s, 5)?;
        let f = &self.base;
        Ok(UnitElem {
            unit: f.parse_elem(parts[0])?,
            nil: [
                f.parse_elem(parts[1])?,
                f.parse_elem(parts[2])?,
                f.parse_elem(parts[3])?,
                f.parse_elem(parts[4])?,
            ],
        })
    }

    fn sample<G: rand::Rng + ?Sized>(&self, rng: &mut G) -> Self::Elem {
        UnitElem {
            unit: self.base.sample(rng),
            nil: std::array::from_fn(|_| self.base.sample(rng)),
        }
    }
}
