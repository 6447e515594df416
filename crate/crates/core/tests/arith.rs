use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use qbl_core::arith::*;
use qbl_core::partitions::set_partitions;
use qbl_core::{rat, ratio, Poly, Rational};

fn poly(c: &[i64]) -> Poly {
    Poly::new(c.iter().map(|&x| rat(x)).collect())
}

/// Direct sum oracle for the discrete convolution.
fn conv_at(f: &Poly, g: &Poly, n: i64) -> Rational {
    (1..n).fold(Rational::zero(), |acc, i| acc + f.eval_int(i) * g.eval_int(n - i))
}

#[test]
fn bernoulli_values() {
    assert_eq!(bernoulli(0), rat(1));
    assert_eq!(bernoulli(1), ratio(-1, 2));
    assert_eq!(bernoulli(2), ratio(1, 6));
    assert_eq!(bernoulli(3), rat(0));
    assert_eq!(bernoulli(4), ratio(-1, 30));
    assert_eq!(bernoulli(12), ratio(-691, 2730));
    // sum_j binom(n+1, j) B_j = 0
    for n in 1..20u32 {
        let s = (0..=n).fold(Rational::zero(), |acc, j| {
            acc + Rational::from_integer(binomial((n + 1) as i64, j as i64)) * bernoulli(j)
        });
        assert!(s.is_zero(), "recursion fails at {n}");
    }
}

#[test]
fn faulhaber_examples() {
    assert_eq!(faulhaber::<Rational>(1), Poly::x());
    assert_eq!(faulhaber::<Rational>(2), Poly::new(vec![rat(0), ratio(1, 2), ratio(1, 2)]));
    assert_eq!(faulhaber::<Rational>(4).eval_int(3), rat(36));
    for l in 1..=9u32 {
        let f = faulhaber::<Rational>(l);
        assert!(f.coeff(0).is_zero());
        let mut acc = BigInt::zero();
        for n in 1..=12i64 {
            acc += BigInt::from(n).pow(l - 1);
            assert_eq!(f.eval_int(n), Rational::from_integer(acc.clone()));
            assert_eq!(faulhaber_value(l, n as u64), acc);
        }
        assert_eq!(disc_derivative(&f), Poly::monomial(l as usize - 1, rat(1)));
    }
}

#[test]
fn faulhaber_symmetry_and_bernoulli() {
    for l in 2..=10u32 {
        let f = faulhaber::<Rational>(l);
        let sign = if l % 2 == 0 { rat(1) } else { rat(-1) };
        assert_eq!(f, f.reflect().shift(&rat(1)).scale(&sign), "symmetry at l={l}");
    }
    for l in 2..=8u32 {
        let lhs = faulhaber::<Rational>(l).scale(&rat(l as i64));
        let rhs = bernoulli_poly(l).shift(&rat(1)) - Poly::constant(bernoulli(l));
        assert_eq!(lhs, rhs, "Bernoulli relation at l={l}");
    }
    // with B_1 = -1/2 the relation needs B_l(1) in place of B_l at l = 1
    for l in 1..=8u32 {
        let b = bernoulli_poly(l);
        let rhs = b.shift(&rat(1)) - Poly::constant(b.eval_int(1));
        assert_eq!(faulhaber::<Rational>(l).scale(&rat(l as i64)), rhs);
    }
}

#[test]
fn faulhaber_generating_series() {
    // sum_l F_l(n) z^{l-1}/(l-1)! = e^z (1 - e^{nz}) / (1 - e^z) = sum_{i=1}^n e^{iz}
    for n in 1..=6i64 {
        for l in 1..=9u32 {
            let coeff = (1..=n).fold(Rational::zero(), |acc, i| {
                acc + Rational::new(BigInt::from(i).pow(l - 1), factorial(l - 1))
            });
            let lhs = faulhaber::<Rational>(l).eval_int(n)
                / Rational::from_integer(factorial(l - 1));
            assert_eq!(lhs, coeff);
        }
    }
}

#[test]
fn discrete_derivative_examples() {
    assert!(disc_derivative(&poly(&[5])).is_zero());
    assert_eq!(disc_derivative(&poly(&[0, 0, 1])), poly(&[-1, 2]));
}

#[test]
fn convolution_examples() {
    let id = Poly::x();
    assert_eq!(disc_convolution(&id, &id).eval_int(4), rat(10));
    assert!(disc_convolution(&poly(&[1, 2, 3]), &Poly::zero()).is_zero());
    let f = faulhaber::<Rational>(3);
    let lhs = disc_derivative(&disc_derivative(&disc_convolution(&f, &id)));
    assert_eq!(lhs, &f - &disc_derivative(&f));
}

#[test]
fn stirling_counts_set_partitions() {
    for n in 0..=7usize {
        let all = set_partitions(n).unwrap();
        for j in 0..=n {
            let count = all.iter().filter(|a| a.len() == j).count();
            assert_eq!(stirling2(n as u32, j as u32), BigInt::from(count), "S({n},{j})");
        }
    }
    assert_eq!(stirling2(3, 2), BigInt::from(3));
    assert_eq!(stirling2(4, 2), BigInt::from(7));
}

#[test]
fn sinh_coefficients() {
    assert_eq!(sinh_coefficient(2), ratio(-1, 24));
    assert_eq!(sinh_coefficient(1), rat(0));
    assert_eq!(sinh_coefficient(3), rat(0));
    // 1/(2 sinh(x/2)) = 1/x - x/24 + 7x^3/5760 - ..., and c_k = (k-1)! [x^{k-1}]
    assert_eq!(sinh_coefficient(4), ratio(7 * 6, 5760));
}

#[test]
fn binom_basis_round_trip() {
    let p = poly(&[3, -1, 0, 2, 5]);
    let b = BinomPoly::from_poly(&p);
    assert_eq!(b.to_poly(), p);
    assert_eq!(binomial(-3, 2), BigInt::from(6));
    assert_eq!(binomial(4, -1), BigInt::zero());
}

#[test]
fn binomial_identity_needs_boundary_terms() {
    // binom(x,i) * binom(x,j) = binom(x+1, i+j+1) - [i=0] binom(x,j) - [j=0] binom(x,i)
    let b = |k: usize| BinomPoly::new((0..=k).map(|i| if i == k { rat(1) } else { rat(0) }).collect()).to_poly();
    for i in 0..4usize {
        for j in 0..4usize {
            let lhs = disc_convolution(&b(i), &b(j));
            let mut rhs = b(i + j + 1).shift(&rat(1));
            if i == 0 {
                rhs = &rhs - &b(j);
            }
            if j == 0 {
                rhs = &rhs - &b(i);
            }
            assert_eq!(lhs, rhs, "i={i} j={j}");
            for n in 1..10 {
                assert_eq!(lhs.eval_int(n), conv_at(&b(i), &b(j), n));
            }
        }
    }
}

#[test]
fn generic_scalar_machine_rationals() {
    use qbl_core::SmallRational;
    let f: Poly<SmallRational> = faulhaber(3);
    assert_eq!(f.eval_int(4), SmallRational::from_integer(30));
    let g = disc_convolution(&f, &Poly::<SmallRational>::x());
    assert_eq!(g.eval_int(3), SmallRational::from_integer(2 + 5));
}

fn arb_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((-9i64..=9, 1i64..=4), 0..=max_deg + 1)
        .prop_map(|c| Poly::new(c.into_iter().map(|(a, b)| ratio(a, b)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn convolution_matches_direct_sum(f in arb_poly(5), g in arb_poly(5)) {
        let h = disc_convolution(&f, &g);
        for n in 1..9 {
            prop_assert_eq!(h.eval_int(n), conv_at(&f, &g, n));
        }
    }

    #[test]
    fn derivative_commutes_with_convolution(f in arb_poly(6), g in arb_poly(6)) {
        let a = disc_derivative(&disc_convolution(&f, &g));
        let b = disc_convolution(&disc_derivative(&f), &g);
        let c = disc_convolution(&f, &disc_derivative(&g));
        // equal as functions on n >= 1 once the constant terms vanish
        if f.coeff(0).is_zero() && g.coeff(0).is_zero() {
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(&a, &c);
        }
    }

    #[test]
    fn discrete_leibniz(f in arb_poly(6), g in arb_poly(6)) {
        let d = disc_derivative;
        let lhs = d(&(&f * &g));
        let rhs = &(&(&d(&f) * &g) + &(&f * &d(&g))) - &(&d(&f) * &d(&g));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn id_is_a_derivation_of_convolution(f in arb_poly(5), g in arb_poly(5)) {
        let id = Poly::x();
        let lhs = &id * &disc_convolution(&f, &g);
        let rhs = &disc_convolution(&(&id * &f), &g) + &disc_convolution(&f, &(&id * &g));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ring_laws(f in arb_poly(4), g in arb_poly(4), h in arb_poly(4)) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f - &f, Poly::zero());
        prop_assert_eq!(BinomPoly::from_poly(&f).to_poly(), f.clone());
        let x = ratio(3, 7);
        prop_assert_eq!((&f * &g).eval(&x), f.eval(&x) * g.eval(&x));
        prop_assert!(Poly::<Rational>::constant(Rational::one()).eval(&x).is_one());
    }
}
