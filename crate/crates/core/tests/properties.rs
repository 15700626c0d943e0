use commprod::derivation::{lder2_witness, minimal_polynomial_degree, product_span_dim, tder_decompose};
use commprod::dynamic::{AnyMatrix, RandomShape, Strategy};
use commprod::format::{certificate_from_json, certificate_to_json, matrix_from_json, matrix_to_json};
use commprod::kernels::{tracezero_triangular_commutator, zero_diag_commutator};
use commprod::matrix::{commutator, invert, minimal_polynomial, poly_eval, rank, CommutatorCertificate};
use commprod::random::{
    random_invertible, random_matrix, random_singular, random_tracezero_triangular, random_triangular,
    random_zero_diagonal, seeded,
};
use commprod::scalar::{PrimeField, Quaternions, Rationals, RingKind, Unitization};
use commprod::stable_rank::{invertible_three_commutators, singular_two_commutators};
use commprod::triangular::triangular_zero_diag_factor;
use commprod::{dynamic, Matrix, Orientation, Ring};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

/// Schoolbook product with one `mul` and `add` per term.
fn naive_mul<R: Ring>(a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
    let ring = a.ring().clone();
    Matrix::from_fn(ring.clone(), a.n(), |i, j| {
        (0..a.n()).fold(ring.zero(), |acc, k| {
            ring.add(&acc, &ring.mul(a.get(i, k), b.get(k, j)))
        })
    })
}

fn naive_comm<R: Ring>(x: &Matrix<R>, y: &Matrix<R>) -> Matrix<R> {
    let ring = x.ring().clone();
    let (xy, yx) = (naive_mul(x, y), naive_mul(y, x));
    Matrix::from_fn(ring.clone(), x.n(), |i, j| ring.sub(xy.get(i, j), yx.get(i, j)))
}

/// Recomputes `v⁻¹·Π[x_i, y_i]·v` without the library product.
fn certificate_holds<R: Ring>(c: &CommutatorCertificate<R>) -> bool {
    let n = c.target.n();
    let mut acc = Matrix::identity(c.target.ring().clone(), n);
    for p in &c.pairs {
        acc = naive_mul(&acc, &naive_comm(&p.x, &p.y));
    }
    if let Some(w) = &c.similarity {
        acc = naive_mul(&naive_mul(&w.v_inv, &acc), &w.v);
    }
    acc == c.target
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn any_kind() -> impl proptest::strategy::Strategy<Value = RingKind> {
    prop_oneof![
        Just(RingKind::Rational),
        Just(RingKind::PrimeField { p: 11 }),
        Just(RingKind::PrimeField { p: 7 }),
        Just(RingKind::QuaternionRational),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_dot_equals_fold(terms in prop::collection::vec(
        ((any::<i64>(), 1i64..=i64::MAX), (any::<i64>(), 1i64..=i64::MAX)), 0..12)
    ) {
        let r = Rationals;
        let pairs: Vec<_> = terms.iter().map(|&((a, b), (c, d))| (rational(a, b), rational(c, d))).collect();
        let fused = r.dot(pairs.iter().map(|(a, b)| (a, b)));
        let folded = pairs.iter().fold(r.zero(), |acc, (a, b)| r.add(&acc, &r.mul(a, b)));
        prop_assert_eq!(fused, folded);
    }

    #[test]
    fn quaternion_dot_equals_fold(seed in any::<u64>(), len in 0usize..8) {
        let h = Quaternions;
        let mut rng = seeded(seed);
        let pairs: Vec<_> = (0..len).map(|_| (h.sample(&mut rng), h.sample(&mut rng))).collect();
        let fused = h.dot(pairs.iter().map(|(a, b)| (a, b)));
        let folded = pairs.iter().fold(h.zero(), |acc, (a, b)| h.add(&acc, &h.mul(a, b)));
        prop_assert_eq!(fused, folded);
    }

    #[test]
    fn library_product_matches_schoolbook(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = seeded(seed);
        let a = random_matrix(&Quaternions, n, &mut rng);
        let b = random_matrix(&Quaternions, n, &mut rng);
        prop_assert_eq!(&a * &b, naive_mul(&a, &b));
        let c = random_matrix(&Unitization::new(gf(3)).unwrap(), n, &mut rng);
        prop_assert_eq!(&c * &c, naive_mul(&c, &c));
    }

    #[test]
    fn commutator_rank_is_at_most_twice_rank(seed in any::<u64>(), n in 2usize..6, r in 0usize..6) {
        let mut rng = seeded(seed);
        let f = gf(7);
        // Rank at most r: a product through an n×r bottleneck.
        let l = Matrix::from_fn(f, n, |_, j| if j < r { f.sample(&mut rng) } else { f.zero() });
        let a = &l * &random_matrix(&f, n, &mut rng);
        let x = random_matrix(&f, n, &mut rng);
        let ra = rank(&a).unwrap();
        prop_assert!(ra <= r.min(n));
        prop_assert!(rank(&commutator(&a, &x).unwrap()).unwrap() <= 2 * ra);
    }

    #[test]
    fn zero_diagonal_matrices_are_commutators(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = seeded(seed);
        {
            let c = random_zero_diagonal(&Rationals, n, &mut rng);
            let (x, y) = zero_diag_commutator(&c).unwrap();
            prop_assert_eq!(naive_comm(&x, &y), c);
        }
        let h = random_zero_diagonal(&Quaternions, n, &mut rng);
        let (x, y) = zero_diag_commutator(&h).unwrap();
        prop_assert_eq!(naive_comm(&x, &y), h);
    }

    #[test]
    fn tracezero_triangular_matrices_are_commutators(seed in any::<u64>(), n in 1usize..7, upper in any::<bool>()) {
        let mut rng = seeded(seed);
        let o = if upper { Orientation::Upper } else { Orientation::Lower };
        {
            let t = random_tracezero_triangular(&gf(5), n, o, &mut rng);
            let (x, y) = tracezero_triangular_commutator(&t, o).unwrap();
            prop_assert_eq!(naive_comm(&x, &y), t);
        }
        let t = random_tracezero_triangular(&Unitization::new(gf(2)).unwrap(), n, o, &mut rng);
        let (x, y) = tracezero_triangular_commutator(&t, o).unwrap();
        prop_assert_eq!(naive_comm(&x, &y), t);
    }

    #[test]
    fn triangular_factors_have_zero_diagonals(seed in any::<u64>(), n in 3usize..8, upper in any::<bool>()) {
        let mut rng = seeded(seed);
        let o = if upper { Orientation::Upper } else { Orientation::Lower };
        let a = random_triangular(&Quaternions, n, o, &mut rng);
        let (b, c) = triangular_zero_diag_factor(&a, o).unwrap();
        prop_assert!(b.has_zero_diagonal() && c.has_zero_diagonal());
        prop_assert_eq!(naive_mul(&b, &c), a);
    }

    #[test]
    fn invertible_matrices_take_three_pairs(seed in any::<u64>(), n in 3usize..6) {
        let mut rng = seeded(seed);
        let a = random_invertible(&Rationals, n, &mut rng);
        let c = invertible_three_commutators(&a).unwrap();
        prop_assert_eq!(c.pairs.len(), 3);
        prop_assert!(certificate_holds(&c));
    }

    #[test]
    fn singular_matrices_take_two_pairs(seed in any::<u64>(), n in 3usize..6) {
        let mut rng = seeded(seed);
        let a = random_singular(&gf(5), n, &mut rng);
        let c = singular_two_commutators(&a).unwrap();
        prop_assert_eq!(c.pairs.len(), 2);
        prop_assert!(certificate_holds(&c));
    }

    #[test]
    fn quaternion_matrices_take_two_pairs(seed in any::<u64>(), n in 2usize..5) {
        let mut rng = seeded(seed);
        let a = random_matrix(&Quaternions, n, &mut rng);
        let c = dynamic::factor(&a, Strategy::Auto).unwrap();
        prop_assert_eq!(c.pairs.len(), 2);
        prop_assert!(certificate_holds(&c));
        prop_assert!(invert(&naive_comm(&c.pairs[0].x, &c.pairs[0].y)).is_ok());
    }

    #[test]
    fn certificates_survive_json(kind in any_kind(), n in 2usize..5, seed in any::<u64>()) {
        let m = AnyMatrix::random(kind, n, RandomShape::Any, seed).unwrap();
        prop_assert_eq!(matrix_from_json(&matrix_to_json(&m), None).unwrap(), m.clone());
        let c = m.factor(Strategy::Auto).unwrap();
        let text = certificate_to_json(&c);
        let back = certificate_from_json(&text).unwrap();
        prop_assert!(back.verify().passed());
        prop_assert_eq!(certificate_to_json(&back), text);
        prop_assert_eq!(back.target(), m);
    }

    #[test]
    fn generation_and_factoring_are_deterministic(kind in any_kind(), n in 2usize..5, seed in any::<u64>()) {
        let a = AnyMatrix::random(kind, n, RandomShape::Upper, seed).unwrap();
        prop_assert_eq!(&a, &AnyMatrix::random(kind, n, RandomShape::Upper, seed).unwrap());
        let (c1, c2) = (a.factor(Strategy::Auto).unwrap(), a.factor(Strategy::Auto).unwrap());
        prop_assert_eq!(certificate_to_json(&c1), certificate_to_json(&c2));
    }

    #[test]
    fn minimal_polynomial_annihilates(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = seeded(seed);
        let a = random_matrix(&Rationals, n, &mut rng);
        let m = minimal_polynomial(&a).unwrap();
        prop_assert!(m.len() - 1 <= n);
        prop_assert!(poly_eval(&a, &m).is_zero());
        prop_assert_eq!(m.last().unwrap(), &Rationals.one());
    }

    #[test]
    fn span_is_full_exactly_above_degree_two(seed in any::<u64>(), n in 2usize..4) {
        let mut rng = seeded(seed);
        let f = gf(3);
        // Low-degree inputs s·1 + u·vᵀ mixed in with generic ones.
        let a = if seed % 2 == 0 {
            random_matrix(&f, n, &mut rng)
        } else {
            let (s, u, v) = (f.sample(&mut rng), random_matrix(&f, n, &mut rng), random_matrix(&f, n, &mut rng));
            Matrix::from_fn(f, n, |i, j| f.add(&if i == j { s } else { 0 }, &f.mul(u.get(i, 0), v.get(0, j))))
        };
        let report = product_span_dim(&a).unwrap();
        prop_assert_eq!(report.full, minimal_polynomial_degree(&a).unwrap() > 2);
    }

    #[test]
    fn fixed_derivation_decompositions_reconstruct(seed in any::<u64>(), n in 3usize..5) {
        let mut rng = seeded(seed);
        let f = gf(7);
        let a = random_matrix(&f, n, &mut rng);
        prop_assume!(minimal_polynomial_degree(&a).unwrap() > 2);
        let w = lder2_witness(&a).unwrap();
        prop_assert!(naive_mul(&w.b, &w.b).is_zero());
        let x = random_matrix(&f, n, &mut rng);
        let pairs = tder_decompose(&a, &x).unwrap();
        prop_assert!(pairs.len() <= n);
        let mut sum = Matrix::zero(f, n);
        for (p, q) in &pairs {
            sum = &sum + &naive_mul(&naive_comm(&a, p), &naive_comm(&a, q));
        }
        prop_assert_eq!(sum, x);
    }
}
