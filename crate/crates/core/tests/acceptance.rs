//! Acceptance criteria 1-9. Prints one line per criterion and exits nonzero
//! if any criterion fails. All checks are exact; the only tolerances are the
//! wall-clock limits below.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use commprod::counterexample::{
    oracle_level_generic, product_residue, r_system, unreachability_oracle, zero_product_dependence, SlTuple,
};
use commprod::derivation::{
    herstein_identity_check, lder2_witness, lder_identity_check, product_span_dim, tder_decompose,
};
use commprod::division::two_commutators;
use commprod::kernels::{tracezero_certificate, zero_diag_certificate};
use commprod::matrix::{invert, CommutatorCertificate};
use commprod::random::{
    random_invertible, random_matrix, random_singular, random_tracezero_triangular, random_triangular,
    random_zero_diagonal, seeded,
};
use commprod::scalar::{PrimeField, Quaternion, Quaternions, Rationals, UnitElem, Unitization};
use commprod::stable_rank::{invertible_three_commutators, singular_two_commutators};
use commprod::triangular::{triangular_two_commutators, triangular_zero_diag_factor};
use commprod::{Error, Matrix, Orientation, Ring};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const LIMIT_1: Duration = Duration::from_secs(10);
const LIMIT_2: Duration = Duration::from_secs(10);
const LIMIT_3: Duration = Duration::from_secs(30);
const LIMIT_4: Duration = Duration::from_secs(30);
const LIMIT_5: Duration = Duration::from_secs(60);
const LIMIT_6: Duration = Duration::from_secs(60);
const LIMIT_7: Duration = Duration::from_secs(60);
const LIMIT_8: Duration = Duration::from_secs(10);
const LIMIT_9: Duration = Duration::from_secs(120);

const TRIANGULAR_PER_RING_AND_SIZE: usize = 1000;
const KERNEL_INPUTS: usize = 2000;
const GL_PER_CASE: usize = 200;
const SINGULAR_PER_CASE: usize = 200;
const QUATERNION_PER_SIZE: usize = 200;
const ZERO_PRODUCT_INSTANCES: usize = 10_000;
const ORACLE_N_MAX: usize = 5;
const SPAN_RANDOM: usize = 2000;
const DECOMPOSE_TARGETS: usize = 1000;
const IDENTITY_INSTANCES: usize = 10_000;
const CLI_SEEDS: u64 = 3;

#[derive(Default)]
struct Tally {
    cases: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn summary(&self) -> String {
        match &self.first {
            None => format!("{} cases, 0 failures", self.cases),
            Some(f) => format!("{} cases, {} failures, first: {f}", self.cases, self.failures),
        }
    }
}

// Oracles written against the bare ring operations.

fn naive_mul<R: Ring>(a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
    let ring = a.ring().clone();
    let n = a.n();
    let mut out = vec![ring.zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a.get(i, k);
            if ring.is_zero(x) {
                continue;
            }
            for j in 0..n {
                let y = b.get(k, j);
                if !ring.is_zero(y) {
                    out[i * n + j] = ring.add(&out[i * n + j], &ring.mul(x, y));
                }
            }
        }
    }
    Matrix::new(ring, n, out).unwrap()
}

fn naive_sub<R: Ring>(a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
    let ring = a.ring().clone();
    Matrix::from_fn(ring.clone(), a.n(), |i, j| ring.sub(a.get(i, j), b.get(i, j)))
}

fn naive_add<R: Ring>(a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
    let ring = a.ring().clone();
    Matrix::from_fn(ring.clone(), a.n(), |i, j| ring.add(a.get(i, j), b.get(i, j)))
}

fn naive_comm<R: Ring>(x: &Matrix<R>, y: &Matrix<R>) -> Matrix<R> {
    naive_sub(&naive_mul(x, y), &naive_mul(y, x))
}

fn naive_is_identity<R: Ring>(m: &Matrix<R>) -> bool {
    let ring = m.ring();
    (0..m.n()).all(|i| {
        (0..m.n()).all(|j| {
            if i == j {
                ring.is_one(m.get(i, j))
            } else {
                ring.is_zero(m.get(i, j))
            }
        })
    })
}

/// `target = v⁻¹ · Π [x_i, y_i] · v`, recomputed from scratch.
fn naive_holds<R: Ring>(c: &CommutatorCertificate<R>) -> bool {
    let n = c.target.n();
    let mut p = Matrix::identity(c.target.ring().clone(), n);
    for pair in &c.pairs {
        if pair.x.n() != n || pair.y.n() != n {
            return false;
        }
        p = naive_mul(&p, &naive_comm(&pair.x, &pair.y));
    }
    match &c.similarity {
        None => p == c.target,
        Some(w) => {
            naive_is_identity(&naive_mul(&w.v, &w.v_inv))
                && naive_is_identity(&naive_mul(&w.v_inv, &w.v))
                && naive_mul(&naive_mul(&w.v_inv, &p), &w.v) == c.target
        }
    }
}

fn certificate_ok<R: Ring>(c: &CommutatorCertificate<R>) -> bool {
    c.verify().passed() && naive_holds(c)
}

/// Rank over a field by plain Gaussian elimination on row vectors.
fn oracle_rank<R: Ring>(ring: &R, mut rows: Vec<Vec<R::Elem>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !ring.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = ring.inv(&rows[rank][col]).unwrap();
        let pivot: Vec<R::Elem> = rows[rank].iter().map(|x| ring.mul(&inv, x)).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !ring.is_zero(&row[col]) {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = ring.sub(x, &ring.mul(&f, y));
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Smallest `k` with `1, a, ..., a^k` dependent.
fn oracle_min_poly_degree<R: Ring>(a: &Matrix<R>) -> usize {
    let ring = a.ring();
    let mut powers = vec![Matrix::identity(ring.clone(), a.n()).entries().to_vec()];
    let mut p = Matrix::identity(ring.clone(), a.n());
    loop {
        p = naive_mul(&p, a);
        powers.push(p.entries().to_vec());
        if oracle_rank(ring, powers.clone()) < powers.len() {
            return powers.len() - 1;
        }
    }
}

fn flip(k: usize) -> Orientation {
    if k.is_multiple_of(2) {
        Orientation::Upper
    } else {
        Orientation::Lower
    }
}

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

// Criterion 1.

fn triangular_factor_ring<R: Ring>(ring: &R, rng: &mut ChaCha8Rng, t: &mut Tally) {
    for n in 3..=8 {
        for k in 0..TRIANGULAR_PER_RING_AND_SIZE {
            let o = flip(k);
            let a = random_triangular(ring, n, o, rng);
            let ok = match triangular_zero_diag_factor(&a, o) {
                Ok((b, c)) => b.has_zero_diagonal() && c.has_zero_diagonal() && naive_mul(&b, &c) == a,
                Err(_) => false,
            };
            t.check(ok, || format!("{} n={n}:\n{a}", ring.descriptor().kind));
        }
    }
}

fn criterion_1() -> (bool, String) {
    let mut rng = seeded(1);
    let mut t = Tally::default();
    triangular_factor_ring(&Rationals, &mut rng, &mut t);
    triangular_factor_ring(&gf(7), &mut rng, &mut t);
    triangular_factor_ring(&Quaternions, &mut rng, &mut t);
    triangular_factor_ring(&Unitization::new(gf(2)).unwrap(), &mut rng, &mut t);
    (t.failures == 0, t.summary())
}

// Criterion 2.

fn kernels_ring<R: Ring>(
    ring: &R,
    sizes: std::ops::RangeInclusive<usize>,
    count: usize,
    rng: &mut ChaCha8Rng,
    t: [&mut Tally; 4],
) {
    let [zd, tz, reject, tri] = t;
    let sizes: Vec<usize> = sizes.collect();
    let kind = ring.descriptor().kind;
    let central = commprod::scalar::distinct_central(ring, 2).is_ok();
    for k in 0..count {
        let n = sizes[k % sizes.len()];
        let o = flip(k / sizes.len());
        if central {
            let c = random_zero_diagonal(ring, n, rng);
            let ok = zero_diag_certificate(&c).is_ok_and(|cert| cert.pairs.len() == 1 && certificate_ok(&cert));
            zd.check(ok, || format!("zero-diagonal {kind}:\n{c}"));

            if n >= 3 {
                let a = random_triangular(ring, n, o, rng);
                let ok =
                    triangular_two_commutators(&a, o).is_ok_and(|cert| cert.pairs.len() == 2 && certificate_ok(&cert));
                tri.check(ok, || format!("triangular {kind}:\n{a}"));
            }
        }

        let tt = random_tracezero_triangular(ring, n, o, rng);
        let ok = tracezero_certificate(&tt, o).is_ok_and(|cert| cert.pairs.len() == 1 && certificate_ok(&cert));
        tz.check(ok, || format!("trace-zero {kind}:\n{tt}"));

        let mut bad = random_triangular(ring, n, o, rng);
        if ring.is_zero(&bad.trace()) {
            bad.set(0, 0, ring.add(bad.get(0, 0), &ring.one()));
        }
        let rejected = matches!(tracezero_certificate(&bad, o), Err(Error::TraceNonzero));
        reject.check(rejected, || format!("nonzero trace accepted {kind}:\n{bad}"));
    }
}

fn criterion_2() -> (bool, String) {
    let mut rng = seeded(2);
    let (mut zd, mut tz, mut reject, mut tri) = Default::default();
    let share = KERNEL_INPUTS / 4;
    kernels_ring(
        &Rationals,
        2..=6,
        share,
        &mut rng,
        [&mut zd, &mut tz, &mut reject, &mut tri],
    );
    kernels_ring(
        &gf(7),
        2..=6,
        share,
        &mut rng,
        [&mut zd, &mut tz, &mut reject, &mut tri],
    );
    kernels_ring(
        &Quaternions,
        2..=5,
        share,
        &mut rng,
        [&mut zd, &mut tz, &mut reject, &mut tri],
    );
    // The counterexample ring has no central supply: only the trace-zero kernel applies there.
    kernels_ring(
        &Unitization::new(gf(2)).unwrap(),
        2..=6,
        share,
        &mut rng,
        [&mut zd, &mut tz, &mut reject, &mut tri],
    );
    // Top up the kernels that skip the last ring so each sees the full count.
    kernels_ring(
        &Rationals,
        3..=6,
        KERNEL_INPUTS - zd.cases,
        &mut rng,
        [
            &mut zd,
            &mut Tally::default(),
            &mut Tally::default(),
            &mut Tally::default(),
        ],
    );
    let mut top = seeded(22);
    while tri.cases < KERNEL_INPUTS {
        let n = 3 + tri.cases % 4;
        let o = flip(tri.cases);
        let a = random_triangular(&gf(7), n, o, &mut top);
        let ok = triangular_two_commutators(&a, o).is_ok_and(|cert| certificate_ok(&cert));
        tri.check(ok, || format!("triangular GF(7):\n{a}"));
    }
    let all = [&zd, &tz, &reject, &tri];
    let counts_ok = all.iter().all(|t| t.cases >= KERNEL_INPUTS);
    let ok = counts_ok && all.iter().all(|t| t.failures == 0);
    let detail = format!(
        "zero-diagonal {}; trace-zero {}; nonzero-trace rejections {}; triangular two-pair {}",
        zd.summary(),
        tz.summary(),
        reject.summary(),
        tri.summary()
    );
    (ok, detail)
}

// Criterion 3.

fn gl_ring<R: Ring>(ring: &R, n: usize, rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..GL_PER_CASE {
        let a = random_invertible(ring, n, rng);
        let ok = invertible_three_commutators(&a).is_ok_and(|c| c.pairs.len() == 3 && certificate_ok(&c));
        t.check(ok, || format!("{} n={n}:\n{a}", ring.descriptor().kind));
    }
}

fn criterion_3() -> (bool, String) {
    let mut rng = seeded(3);
    let mut t = Tally::default();
    for n in 3..=5 {
        gl_ring(&Rationals, n, &mut rng, &mut t);
        gl_ring(&gf(7), n, &mut rng, &mut t);
    }
    gl_ring(&Quaternions, 3, &mut rng, &mut t);
    (t.failures == 0, t.summary())
}

// Criterion 4.

fn singular_ring<R: Ring>(ring: &R, rng: &mut ChaCha8Rng, t: &mut Tally) {
    for n in 3..=5 {
        for _ in 0..SINGULAR_PER_CASE {
            let a = random_singular(ring, n, rng);
            let ok = singular_two_commutators(&a).is_ok_and(|c| c.pairs.len() == 2 && certificate_ok(&c));
            t.check(ok, || format!("{} n={n}:\n{a}", ring.descriptor().kind));
        }
    }
}

fn criterion_4() -> (bool, String) {
    let mut rng = seeded(4);
    let mut t = Tally::default();
    singular_ring(&gf(5), &mut rng, &mut t);
    singular_ring(&Rationals, &mut rng, &mut t);
    singular_ring(&Quaternions, &mut rng, &mut t);
    let f2 = gf(2);
    let mut guard = Tally::default();
    for n in 3..=5 {
        for _ in 0..20 {
            let a = random_singular(&f2, n, &mut rng);
            let err = singular_two_commutators(&a).unwrap_err();
            let ok = err == Error::FieldTooSmall { p: 2, needed: 3 } && err.to_string().contains("at least 3 elements");
            guard.check(ok, || format!("GF(2) gave {err:?}"));
        }
    }
    (
        t.failures == 0 && guard.failures == 0,
        format!("{}; GF(2) hypothesis errors {}", t.summary(), guard.summary()),
    )
}

// Criterion 5.

fn criterion_5() -> (bool, String) {
    let h = Quaternions;
    let mut rng = seeded(5);
    let mut t = Tally::default();
    let mut mix = [0usize; 3];
    for n in 2..=5 {
        for k in 0..QUATERNION_PER_SIZE {
            let a = match k % 3 {
                0 => random_invertible(&h, n, &mut rng),
                1 => random_singular(&h, n, &mut rng),
                _ => {
                    let lambda = Quaternion::from_ints(rng.random_range(-3..=3), 0, 0, 0);
                    Matrix::scalar(h, n, lambda)
                }
            };
            mix[k % 3] += 1;
            let ok = two_commutators(&a).is_ok_and(|c| {
                c.pairs.len() == 2
                    && c.pairs[0].flags.commutator_invertible
                    && invert(&naive_comm(&c.pairs[0].x, &c.pairs[0].y)).is_ok()
                    && c.pairs[1].flags.first_invertible
                    && invert(&c.pairs[1].x).is_ok()
                    && certificate_ok(&c)
            });
            t.check(ok, || format!("n={n}:\n{a}"));
        }
    }
    (
        t.failures == 0,
        format!(
            "{} (invertible {}, singular {}, central {})",
            t.summary(),
            mix[0],
            mix[1],
            mix[2]
        ),
    )
}

// Criterion 6.

fn sl2<F: Ring>(f: &F, rng: &mut ChaCha8Rng) -> Matrix<F> {
    let (a, b, c) = (f.sample(rng), f.sample(rng), f.sample(rng));
    Matrix::from_rows(f.clone(), vec![vec![a.clone(), b], vec![c, f.neg(&a)]]).unwrap()
}

/// `t·u·(Ju)ᵀ` with `J` the quarter turn, so trace and square vanish.
fn nilpotent<F: Ring>(f: &F, u: [F::Elem; 2], t: &F::Elem) -> Matrix<F> {
    let w = [f.neg(&u[1]), u[0].clone()];
    Matrix::from_fn(f.clone(), 2, |i, j| f.mul(t, &f.mul(&u[i], &w[j])))
}

fn zero_product_units<F: Ring>(f: &F, n: usize, variant: usize, rng: &mut ChaCha8Rng) -> Vec<Matrix<F>> {
    let mut s: Vec<Matrix<F>> = (0..n).map(|_| sl2(f, rng)).collect();
    let nonzero_vec = |rng: &mut ChaCha8Rng| loop {
        let u = [f.sample(rng), f.sample(rng)];
        if !(f.is_zero(&u[0]) && f.is_zero(&u[1])) {
            return u;
        }
    };
    match (variant, n) {
        (_, 1) | (1, _) => {
            let j = rng.random_range(0..n);
            s[j] = Matrix::zero(f.clone(), 2);
        }
        (2, 3..) => {
            // N1·M·N3 = 0 when u3 is orthogonal to Mᵀw1.
            let j = rng.random_range(0..n - 2);
            let u1 = nonzero_vec(rng);
            s[j] = nilpotent(f, u1.clone(), &f.sample_nonzero(rng));
            let w1 = [f.neg(&u1[1]), u1[0].clone()];
            let m = &s[j + 1];
            let mtw = [
                f.add(&f.mul(&w1[0], m.get(0, 0)), &f.mul(&w1[1], m.get(1, 0))),
                f.add(&f.mul(&w1[0], m.get(0, 1)), &f.mul(&w1[1], m.get(1, 1))),
            ];
            let u3 = [f.neg(&mtw[1]), mtw[0].clone()];
            s[j + 2] = nilpotent(f, u3, &f.sample(rng));
        }
        (3, ..=3) => {
            for _ in 0..1000 {
                if commprod::matrix::product(&s).unwrap().is_zero() {
                    return s;
                }
                s = (0..n).map(|_| sl2(f, rng)).collect();
            }
            return zero_product_units(f, n, 0, rng);
        }
        _ => {
            let j = rng.random_range(0..n - 1);
            let u = nonzero_vec(rng);
            s[j] = nilpotent(f, u.clone(), &f.sample(rng));
            s[j + 1] = nilpotent(f, u, &f.sample(rng));
        }
    }
    s
}

fn zero_product_instances<F: Ring>(f: &F, count: usize, variants: usize, rng: &mut ChaCha8Rng, t: &mut Tally) {
    let c = Unitization::new(f.clone()).unwrap();
    for k in 0..count {
        let n = rng.random_range(1..=5);
        let s = zero_product_units(f, n, k % variants, rng);
        let coeffs: [Vec<Matrix<F>>; 4] = std::array::from_fn(|_| (0..n).map(|_| sl2(f, rng)).collect());
        let tuple = SlTuple::new(s.clone(), coeffs.clone()).unwrap();
        let lifted: Vec<Matrix<Unitization<F>>> = (0..n)
            .map(|k| {
                Matrix::from_fn(c.clone(), 2, |i, j| UnitElem {
                    unit: s[k].get(i, j).clone(),
                    nil: std::array::from_fn(|m| coeffs[m][k].get(i, j).clone()),
                })
            })
            .collect();
        let ok = (|| {
            let r = r_system(&tuple).ok()?;
            let residue = product_residue(&lifted).ok()?;
            let report = zero_product_dependence(&tuple).ok()?;
            let lambda = report.dependence?;
            let combo = (0..4).fold(Matrix::zero(f.clone(), 2), |acc, i| {
                naive_add(&acc, &r[i].scale_left(&lambda[i]))
            });
            let nontrivial = lambda.iter().any(|x| !f.is_zero(x));
            let rank = oracle_rank(f, r.iter().map(|m| m.entries().to_vec()).collect());
            Some(
                residue.unit_product.is_zero()
                    && residue.r == r
                    && report.rank <= 3
                    && rank == report.rank
                    && nontrivial
                    && combo.is_zero(),
            )
        })()
        .unwrap_or(false);
        t.check(ok, || format!("{} tuple of length {n}", f.descriptor().kind));
    }
}

fn criterion_6() -> (bool, String) {
    let mut rng = seeded(6);
    let mut t = Tally::default();
    zero_product_instances(&gf(3), ZERO_PRODUCT_INSTANCES / 2, 4, &mut rng, &mut t);
    zero_product_instances(
        &Rationals,
        ZERO_PRODUCT_INSTANCES - ZERO_PRODUCT_INSTANCES / 2,
        3,
        &mut rng,
        &mut t,
    );

    let report = unreachability_oracle(ORACLE_N_MAX).unwrap();
    let tuples_ok = report.levels.iter().all(|l| l.tuples == 8u64.pow(l.n as u32));
    let cross_ok = report
        .levels
        .iter()
        .filter(|l| l.n <= 4)
        .all(|l| oracle_level_generic(l.n).unwrap() == l.max_dim);
    let oracle_ok = report.max_dim == 3 && report.unreachable && tuples_ok && cross_ok;
    (
        t.failures == 0 && oracle_ok,
        format!("zero-product instances {}; oracle: {}", t.summary(), report.summary()),
    )
}

// Criterion 7.

fn span_case<F: Ring>(a: &Matrix<F>, t: &mut Tally, exceptions: &mut usize) {
    let f = a.ring();
    let n = a.n();
    let mut products = Vec::with_capacity(n.pow(4));
    let units: Vec<Matrix<F>> = (0..n * n).map(|k| Matrix::unit(f.clone(), n, k / n, k % n)).collect();
    let ds: Vec<Matrix<F>> = units.iter().map(|e| naive_comm(a, e)).collect();
    for x in &ds {
        for y in &ds {
            products.push(naive_mul(x, y).entries().to_vec());
        }
    }
    let dim = oracle_rank(f, products);
    let degree = oracle_min_poly_degree(a);
    let full = dim == n * n;
    if full != (degree > 2) {
        *exceptions += 1;
    }
    let ok = product_span_dim(a)
        .is_ok_and(|r| r.dimension == dim && r.full == full && r.minimal_polynomial_degree == degree);
    t.check(ok && full == (degree > 2), || format!("{}:\n{a}", f.descriptor().kind));
}

fn exhaustive_2x2<F: Ring>(f: &F, t: &mut Tally, exceptions: &mut usize) {
    let p = f.descriptor().prime().unwrap() as usize;
    for code in 0..p.pow(4) {
        let a = Matrix::from_fn(f.clone(), 2, |i, j| {
            f.from_int(((code / p.pow((2 * i + j) as u32)) % p) as i64)
        });
        span_case(&a, t, exceptions);
    }
}

/// `s·1 + u·vᵀ`, whose minimal polynomial has degree at most 2.
fn low_degree<F: Ring>(f: &F, n: usize, rng: &mut ChaCha8Rng) -> Matrix<F> {
    let s = f.sample(rng);
    let u: Vec<F::Elem> = (0..n).map(|_| f.sample(rng)).collect();
    let v: Vec<F::Elem> = (0..n).map(|_| f.sample(rng)).collect();
    Matrix::from_fn(f.clone(), n, |i, j| {
        let uv = f.mul(&u[i], &v[j]);
        if i == j {
            f.add(&s, &uv)
        } else {
            uv
        }
    })
}

fn decompose_cases<F: Ring>(f: &F, count: usize, rng: &mut ChaCha8Rng, t: &mut Tally) {
    for k in 0..count {
        let n = 3 + k % 2;
        let a = loop {
            let a = random_matrix(f, n, rng);
            if oracle_min_poly_degree(&a) > 2 {
                break a;
            }
        };
        let x = random_matrix(f, n, rng);
        let ok = tder_decompose(&a, &x).is_ok_and(|pairs| {
            let sum = pairs.iter().fold(Matrix::zero(f.clone(), n), |acc, (p, q)| {
                naive_add(&acc, &naive_mul(&naive_comm(&a, p), &naive_comm(&a, q)))
            });
            pairs.len() <= n && sum == x
        });
        t.check(ok, || format!("{}:\na =\n{a}x =\n{x}", f.descriptor().kind));
    }
}

fn criterion_7() -> (bool, String) {
    let mut rng = seeded(7);
    let mut span = Tally::default();
    let mut exceptions = 0;
    exhaustive_2x2(&gf(2), &mut span, &mut exceptions);
    exhaustive_2x2(&gf(3), &mut span, &mut exceptions);
    let exhaustive = span.cases;
    let mut full_count = 0;
    for k in 0..SPAN_RANDOM {
        let n = 2 + k % 3;
        let low = k % 4 == 3;
        let before = span.failures;
        if k % 2 == 0 {
            let f = gf(7);
            let a = if low {
                low_degree(&f, n, &mut rng)
            } else {
                random_matrix(&f, n, &mut rng)
            };
            full_count += usize::from(oracle_min_poly_degree(&a) > 2);
            span_case(&a, &mut span, &mut exceptions);
        } else {
            let a = if low {
                low_degree(&Rationals, n, &mut rng)
            } else {
                random_matrix(&Rationals, n, &mut rng)
            };
            full_count += usize::from(oracle_min_poly_degree(&a) > 2);
            span_case(&a, &mut span, &mut exceptions);
        }
        debug_assert!(span.failures >= before);
    }
    let mut dec = Tally::default();
    decompose_cases(&gf(7), DECOMPOSE_TARGETS / 2, &mut rng, &mut dec);
    decompose_cases(
        &Rationals,
        DECOMPOSE_TARGETS - DECOMPOSE_TARGETS / 2,
        &mut rng,
        &mut dec,
    );
    (
        span.failures == 0 && exceptions == 0 && dec.failures == 0,
        format!(
            "span {} ({exhaustive} exhaustive, {full_count} of {SPAN_RANDOM} random full), {exceptions} exceptions; decompositions {}",
            span.summary(),
            dec.summary()
        ),
    )
}

// Criterion 8.

fn herstein_ring<R: Ring>(ring: &R, count: usize, max_n: usize, rng: &mut ChaCha8Rng, t: &mut Tally) {
    for k in 0..count {
        let n = 1 + k % max_n;
        let [a, x, y, z] = std::array::from_fn(|_| random_matrix(ring, n, rng));
        let ok = herstein_identity_check(&a, &x, &y, &z).unwrap_or(false);
        t.check(ok, || format!("{} n={n}", ring.descriptor().kind));
    }
}

/// Shift matrix `Σ e_{i+1,i}` and `e_13`, for which `[s, e_13]·e_13 = 0`.
fn shift_pair<R: Ring>(ring: &R, n: usize) -> (Matrix<R>, Matrix<R>) {
    let s = Matrix::from_fn(
        ring.clone(),
        n,
        |i, j| if i == j + 1 { ring.one() } else { ring.zero() },
    );
    (s, Matrix::unit(ring.clone(), n, 0, 2))
}

/// Inverse of a unit triangular matrix `1 + N` as `Σ (-N)^k`; `N` is nilpotent.
fn unit_triangular_inverse<R: Ring>(t: &Matrix<R>) -> Matrix<R> {
    let one = Matrix::identity(t.ring().clone(), t.n());
    let minus_n = &one - t;
    let (mut power, mut sum) = (one.clone(), one);
    for _ in 1..t.n() {
        power = &power * &minus_n;
        sum = &sum + &power;
    }
    sum
}

/// Unit lower times unit upper triangular, with its inverse.
fn random_unipotent<R: Ring>(ring: &R, n: usize, rng: &mut ChaCha8Rng) -> (Matrix<R>, Matrix<R>) {
    let mut l = random_triangular(ring, n, Orientation::Lower, rng);
    let mut u = random_triangular(ring, n, Orientation::Upper, rng);
    for i in 0..n {
        l.set(i, i, ring.one());
        u.set(i, i, ring.one());
    }
    (&l * &u, &unit_triangular_inverse(&u) * &unit_triangular_inverse(&l))
}

fn lder_ring<R: Ring>(ring: &R, count: usize, max_n: usize, witness: bool, rng: &mut ChaCha8Rng, t: &mut Tally) {
    for k in 0..count {
        let n = 3 + k % (max_n - 2);
        let (x, z, w) = (
            random_matrix(ring, n, rng),
            random_matrix(ring, n, rng),
            random_matrix(ring, n, rng),
        );
        let (a, b, c) = match k % 3 {
            0 => {
                let a = random_matrix(ring, n, rng);
                let lambda = ring.from_int(rng.random_range(-3..=3));
                let b = &(&a * &a) + &a.scale_right(&lambda);
                (a, b, w)
            }
            1 if witness => {
                let a = random_matrix(ring, n, rng);
                match lder2_witness(&a) {
                    Ok(wit) => {
                        let c = &wit.b * &w;
                        (a, wit.b, c)
                    }
                    Err(_) => {
                        let (s, e) = shift_pair(ring, n);
                        (s, e.clone(), &e * &w)
                    }
                }
            }
            _ => {
                let (s, e) = shift_pair(ring, n);
                let (p, p_inv) = random_unipotent(ring, n, rng);
                let alpha = ring.sample_nonzero(rng);
                let a = &(&p * &s.scale_left(&alpha)) * &p_inv;
                let b = &(&p * &e) * &p_inv;
                let c = &b * &w;
                (a, b, c)
            }
        };
        let pre = naive_mul(&naive_comm(&a, &b), &c).is_zero();
        let ok = pre && lder_identity_check(&a, &b, &c, &x, &z).unwrap_or(false);
        t.check(ok, || format!("{} n={n} mode {}", ring.descriptor().kind, k % 3));
    }
}

fn criterion_8() -> (bool, String) {
    let mut rng = seeded(8);
    let mut herstein = Tally::default();
    let share = IDENTITY_INSTANCES / 5;
    // Exact rational arithmetic grows fastest, so those rings stop at n = 3.
    herstein_ring(&Rationals, share, 3, &mut rng, &mut herstein);
    herstein_ring(&gf(7), share, 4, &mut rng, &mut herstein);
    herstein_ring(&Quaternions, share, 3, &mut rng, &mut herstein);
    herstein_ring(&Unitization::new(gf(2)).unwrap(), share, 4, &mut rng, &mut herstein);
    herstein_ring(
        &Unitization::new(Rationals).unwrap(),
        IDENTITY_INSTANCES - 4 * share,
        3,
        &mut rng,
        &mut herstein,
    );
    let mut lder = Tally::default();
    let quarter = IDENTITY_INSTANCES / 4;
    lder_ring(&Rationals, quarter, 3, true, &mut rng, &mut lder);
    lder_ring(&gf(7), quarter, 4, true, &mut rng, &mut lder);
    lder_ring(
        &Unitization::new(gf(2)).unwrap(),
        quarter,
        4,
        false,
        &mut rng,
        &mut lder,
    );
    lder_ring(
        &Quaternions,
        IDENTITY_INSTANCES - 3 * quarter,
        3,
        false,
        &mut rng,
        &mut lder,
    );
    (
        herstein.failures == 0 && lder.failures == 0,
        format!(
            "four-term identity {}; product identity {}",
            herstein.summary(),
            lder.summary()
        ),
    )
}

// Criterion 9.

fn bin(args: &[&str]) -> (i32, Vec<u8>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_commprod"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        out.stdout,
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn criterion_9() -> (bool, String) {
    let dir = tempfile::tempdir().unwrap();
    let inputs = dir.path().join("inputs");
    fs::create_dir(&inputs).unwrap();
    let specs: [(&str, &str, &str); 10] = [
        ("Q", "3", "invertible"),
        ("Q", "4", "singular"),
        ("Q", "2", "any"),
        ("GF(5)", "3", "singular"),
        ("GF(7)", "4", "invertible"),
        ("GF(7)", "5", "upper"),
        ("GF(2)", "2", "any"),
        ("H_Q", "2", "any"),
        ("H_Q", "3", "any"),
        ("H_Q", "3", "singular"),
    ];
    let mut t = Tally::default();
    let mut identical = Tally::default();
    for (idx, (ring, n, shape)) in specs.iter().enumerate() {
        for seed in 0..CLI_SEEDS {
            let seed_s = seed.to_string();
            let m = inputs.join(format!("m{idx:02}_{seed}.json"));
            let m2 = dir.path().join(format!("m{idx:02}_{seed}.again.json"));
            let gen = [
                "random", "--ring", ring, "--n", n, "--shape", shape, "--seed", &seed_s, "--out",
            ];
            let (c1, ..) = bin(&[&gen[..], &[path(&m)]].concat());
            let (c2, ..) = bin(&[&gen[..], &[path(&m2)]].concat());
            identical.check(
                c1 == 0 && c2 == 0 && fs::read(&m).unwrap() == fs::read(&m2).unwrap(),
                || format!("random {ring} n={n} {shape} seed {seed}"),
            );

            let cert = dir.path().join(format!("c{idx:02}_{seed}.json"));
            let cert2 = dir.path().join(format!("c{idx:02}_{seed}.again.json"));
            let (fc, _, ferr) = bin(&["factor", path(&m), "--out", path(&cert)]);
            let (fc2, ..) = bin(&["factor", path(&m), "--out", path(&cert2)]);
            let (vc, vout, _) = bin(&["verify", path(&cert)]);
            t.check(fc == 0 && vc == 0 && vout == b"pass\n", || {
                format!(
                    "{ring} n={n} {shape} seed {seed}: factor {fc} ({}) verify {vc}",
                    ferr.trim()
                )
            });
            identical.check(fc2 == 0 && fs::read(&cert).ok() == fs::read(&cert2).ok(), || {
                format!("factor output differs for {ring} n={n} seed {seed}")
            });
        }
    }

    // Batch mode: worker count does not change any byte.
    let one = dir.path().join("jobs1");
    let four = dir.path().join("jobs4");
    let (b1, o1, _) = bin(&["factor", path(&inputs), "--out", path(&one), "--jobs", "1"]);
    let (b4, o4, _) = bin(&["factor", path(&inputs), "--out", path(&four), "--jobs", "4"]);
    let mut names: Vec<_> = fs::read_dir(&one).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    let same = names.len() == specs.len() * CLI_SEEDS as usize
        && names
            .iter()
            .all(|nm| fs::read(one.join(nm)).unwrap() == fs::read(four.join(nm)).unwrap());
    identical.check(b1 == 0 && b4 == 0 && o1 == o4 && same, || "batch outputs differ".into());

    // Refutation and malformed input.
    let cert = dir.path().join("c00_0.json");
    let text = fs::read_to_string(&cert).unwrap();
    let tampered_path = dir.path().join("tampered.json");
    let pos = text.find("\"target\"").unwrap();
    let digit = pos + text[pos..].find(|ch: char| ch.is_ascii_digit()).unwrap();
    let mut tampered = text.clone();
    let replacement = if &text[digit..=digit] == "7" { "8" } else { "7" };
    tampered.replace_range(digit..=digit, replacement);
    fs::write(&tampered_path, &tampered).unwrap();
    let (tc, tout, _) = bin(&["verify", path(&tampered_path)]);
    let truncated = dir.path().join("truncated.json");
    fs::write(&truncated, &text[..text.len() / 2]).unwrap();
    let (uc, ..) = bin(&["verify", path(&truncated)]);
    let tamper_ok = tc == 1 && String::from_utf8_lossy(&tout).contains("E_MISMATCH") && uc == 2;

    (
        t.failures == 0 && identical.failures == 0 && tamper_ok,
        format!(
            "round trips {}; byte-identical reruns {}; tampered exit {tc}, truncated exit {uc}",
            t.summary(),
            identical.summary()
        ),
    )
}

type Criterion = (u8, &'static str, Duration, fn() -> (bool, String));

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "triangular zero-diagonal factors", LIMIT_1, criterion_1),
        (
            2,
            "single-commutator kernels and triangular pairs",
            LIMIT_2,
            criterion_2,
        ),
        (3, "invertible matrices as three commutators", LIMIT_3, criterion_3),
        (4, "singular matrices as two commutators", LIMIT_4, criterion_4),
        (5, "quaternion matrices as two commutators", LIMIT_5, criterion_5),
        (6, "counterexample ring bound and oracle", LIMIT_6, criterion_6),
        (7, "fixed-derivation span biconditional", LIMIT_7, criterion_7),
        (8, "derivation identities", LIMIT_8, criterion_8),
        (9, "CLI round trip and determinism", LIMIT_9, criterion_9),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let (ok, detail) = run();
        let elapsed = start.elapsed();
        let pass = ok && elapsed <= limit;
        failed += usize::from(!pass);
        println!(
            "criterion {id} [{}] {name}: {detail} ({:.2} s, limit {} s)",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
