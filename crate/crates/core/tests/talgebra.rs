use num_traits::Zero;
use proptest::prelude::*;
use qbl_core::partitions::partitions_up_to;
use qbl_core::qseries::eisenstein;
use qbl_core::talgebra::*;
use qbl_core::{rat, ratio, Matrix, PFun, QMPoly, Rational, TExpr};

type Q = QMPoly<Rational>;

fn gen(k: i64, l: i64) -> TExpr {
    TExpr::generator(k, l, Basis::Induced).unwrap()
}

fn pgen(k: i64, l: i64) -> TExpr {
    TExpr::generator(k, l, Basis::Pointwise).unwrap()
}

fn mono(gens: &[(u32, u32)], basis: Basis) -> TExpr {
    TExpr::monomial(gens.to_vec(), rat(1), basis)
}

fn assert_same(f: &PFun, g: &PFun, n: usize) {
    if let Some(lam) = f.first_difference(g, n).unwrap() {
        panic!("{f} and {g} differ at {lam:?}");
    }
}

/// Even-weight generators of weight at most `w`.
fn generators(w: u32) -> Vec<Gen> {
    let mut out = Vec::new();
    for total in (2..=w).step_by(2) {
        for l in 1..=total {
            out.push((total - l, l));
        }
    }
    out
}

/// Multisets of even-weight generators of total weight at most `w`.
fn monomials(w: u32) -> Vec<TMonomial> {
    fn rec(gens: &[Gen], start: usize, budget: u32, cur: &mut TMonomial, out: &mut Vec<TMonomial>) {
        out.push(cur.clone());
        for i in start..gens.len() {
            let wt = gen_weight(&gens[i]);
            if wt <= budget {
                cur.push(gens[i]);
                rec(gens, i, budget - wt, cur, out);
                cur.pop();
            }
        }
    }
    let gens = generators(w);
    let mut out = Vec::new();
    rec(&gens, 0, w, &mut Vec::new(), &mut out);
    out
}

#[test]
fn generator_conventions() {
    assert_eq!(gen(0, 0), TExpr::constant(rat(-1), Basis::Induced));
    assert_eq!(gen(-1, 1), TExpr::constant(rat(-1), Basis::Induced));
    assert!(gen(-2, 2).is_zero());
    assert!(gen(3, -1).is_zero());
    assert!(TExpr::generator(1, 2, Basis::Induced).is_err());
    assert!(TExpr::generator_ext(1, 2, Basis::Induced).is_extended());
    assert_eq!(TExpr::s(4, Basis::Induced).unwrap(), gen(3, 1));
}

#[test]
fn structure_constant_examples() {
    for n in 1..=5usize {
        let c = structure_constants(&vec![1; n]).unwrap();
        assert_eq!(c[0], rat(1));
        assert!(c[1..].iter().all(Zero::is_zero), "n={n}");
    }
    let c = structure_constants(&[2, 2]).unwrap();
    assert_eq!(c, vec![ratio(5, 6), rat(0), ratio(1, 6), rat(0)]);
    for l in 1..8u32 {
        let c = structure_constants(&[l]).unwrap();
        assert_eq!(c[0], rat(1));
        assert!(c[1..].iter().all(Zero::is_zero));
    }
    assert!(structure_constants(&[13, 12]).is_err());
}

#[test]
fn structure_constants_vanish_at_odd_index() {
    for a in 1..=5u32 {
        for b in a..=5 {
            for cs in [vec![a, b], vec![a, b, 2]] {
                let c = structure_constants(&cs).unwrap();
                assert!(c.iter().skip(1).step_by(2).all(Zero::is_zero), "{cs:?}");
            }
        }
    }
}

#[test]
fn b_coefficients() {
    assert_eq!(b_coefficient(2, 2, 0), ratio(1, 6));
    assert_eq!(b_coefficient(2, 2, 2), ratio(-1, 6));
    assert_eq!(b_coefficient(2, 1, 0), ratio(1, 2));
    assert_eq!(b_coefficient(2, 1, 1), ratio(1, 2));
    // F_2 = sum_i B_i^{2,1} x^{2-i}
    let f2 = qbl_core::arith::faulhaber::<Rational>(2);
    for i in 0..=2u32 {
        assert_eq!(b_coefficient(2, 1, i), f2.coeff(2 - i as usize), "i={i}");
    }
}

#[test]
fn closed_formula_matches_brute_force() {
    for l in [vec![2u32, 2, 2], vec![2, 2], vec![2, 3], vec![3, 4], vec![2, 2, 3], vec![2, 3, 4], vec![2, 2, 2, 2]] {
        assert_eq!(structure_constants_formula(&l).unwrap(), structure_constants(&l).unwrap(), "{l:?}");
    }
    assert!(structure_constants_formula(&[1, 2]).is_err());
}

#[test]
fn two_variable_formula_at_even_and_odd_index() {
    for a in 1..=5u32 {
        for b in 1..=5u32 {
            let brute = structure_constants(&[a, b]).unwrap();
            let formula = two_variable_formula(a, b);
            for i in (0..brute.len()).step_by(2) {
                assert_eq!(formula[i], brute[i], "({a},{b}) i={i}");
            }
        }
    }
    // the closed form does not vanish at odd index
    assert_eq!(two_variable_formula(2, 2)[1], rat(1));
    assert_eq!(structure_constants(&[2, 2]).unwrap()[1], rat(0));
}

#[test]
fn connected_generator_examples() {
    assert_eq!(connected_generators(&[(1, 1), (1, 1)]).unwrap(), gen(2, 2));
    let e = connected_generators(&[(0, 2), (0, 2)]).unwrap();
    assert_eq!(e.to_string(), "5/6*T[0,4] + 1/6*T[0,2] + 1/288");
    assert_eq!(connected_generators(&[(3, 5)]).unwrap(), gen(3, 5));
    assert!(connected_generators(&[]).is_err());
}

#[test]
fn connected_generators_match_numeric_products() {
    let cases: &[&[Gen]] = &[
        &[(0, 2), (0, 2)],
        &[(1, 1), (0, 2)],
        &[(3, 1), (2, 2)],
        &[(0, 4), (1, 3)],
        &[(1, 1), (1, 1), (1, 1)],
        &[(0, 2), (1, 1), (2, 2)],
    ];
    for &pairs in cases {
        let sym = connected_generators(pairs).unwrap().to_pfun();
        let fs: Vec<PFun> = pairs.iter().map(|&(k, l)| PFun::t(k, l).unwrap()).collect();
        let n = if pairs.len() == 3 { 8 } else { 10 };
        assert_same(&sym, &PFun::connected(&fs).unwrap(), n);
    }
}

#[test]
fn conversion_examples() {
    let sq = pgen(0, 2).pointwise_mul(&pgen(0, 2)).unwrap();
    let ind = pointwise_to_induced(&sq).unwrap();
    assert_eq!(ind.to_string(), "T[0,2](+)T[0,2] + 5/6*T[0,4] + 1/6*T[0,2] + 1/288");
    assert_eq!(pointwise_to_induced(&pgen(3, 1)).unwrap(), gen(3, 1));
    let s2 = pgen(1, 1).pointwise_mul(&pgen(1, 1)).unwrap();
    let ind = pointwise_to_induced(&s2).unwrap();
    assert_eq!(ind.to_string(), "T[1,1](+)T[1,1] + T[2,2]");
    assert_same(&ind.to_pfun(), &s2.to_pfun(), 12);
    assert_eq!(sq.to_string(), "T[0,2]*T[0,2]");
}

#[test]
fn conversion_degree_guard() {
    let big = mono(&[(1, 1); 7], Basis::Pointwise);
    assert!(pointwise_to_induced(&big).is_err());
}

fn texpr_strategy(basis: Basis) -> impl Strategy<Value = TExpr> {
    let g = prop::sample::select(generators(4));
    let m = prop::collection::vec(g, 0..=3);
    prop::collection::vec((m, -3i64..=3), 1..=3).prop_map(move |terms| {
        TExpr::from_terms(basis, terms.into_iter().map(|(m, c)| (m, rat(c))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn conversion_round_trips(e in texpr_strategy(Basis::Pointwise)) {
        let ind = pointwise_to_induced(&e).unwrap();
        prop_assert_eq!(induced_to_pointwise(&ind).unwrap(), e.clone());
        let w = ind.weights().unwrap();
        let top = e.terms().map(|(m, _)| monomial_weight(m)).max().unwrap_or(0);
        prop_assert!(w.iter().all(|&x| x <= top));
    }

    #[test]
    fn induced_round_trips(e in texpr_strategy(Basis::Induced)) {
        let pw = induced_to_pointwise(&e).unwrap();
        prop_assert_eq!(pointwise_to_induced(&pw).unwrap(), e);
    }

    #[test]
    fn sl2_commutators(e in texpr_strategy(Basis::Induced)) {
        let d = |x: &TExpr| x.sl2_d().unwrap();
        let w = |x: &TExpr| x.sl2_w().unwrap();
        let dd = |x: &TExpr| x.sl2_lower().unwrap();
        prop_assert_eq!(w(&d(&e)).sub(&d(&w(&e))).unwrap(), d(&e).scale(&rat(2)));
        prop_assert_eq!(w(&dd(&e)).sub(&dd(&w(&e))).unwrap(), dd(&e).scale(&rat(-2)));
        prop_assert_eq!(dd(&d(&e)).sub(&d(&dd(&e))).unwrap(), w(&e));
    }

    #[test]
    fn closure_under_induced_product(a in texpr_strategy(Basis::Pointwise), b in texpr_strategy(Basis::Pointwise)) {
        let prod = a.induced_mul(&b).unwrap();
        prop_assert_eq!(prod.basis(), Basis::Induced);
        let back = induced_to_pointwise(&prod).unwrap();
        prop_assert_eq!(pointwise_to_induced(&back).unwrap(), prod.clone());
    }
}

#[test]
fn closure_matches_numeric_induced_product() {
    let a = pgen(0, 2).pointwise_mul(&pgen(1, 1)).unwrap();
    let b = pgen(2, 2).add(&pgen(0, 2)).unwrap();
    let prod = a.induced_mul(&b).unwrap();
    assert_same(&prod.to_pfun(), &a.to_pfun().induced_mul(&b.to_pfun()), 8);
}

#[test]
fn lowering_commutes_with_powers_of_d() {
    for g in generators(6) {
        let e = mono(&[g], Basis::Induced);
        for n in 1..=4u32 {
            let lhs = e.sl2_d_pow(n).unwrap().sl2_lower().unwrap().sub(&e.sl2_lower().unwrap().sl2_d_pow(n).unwrap()).unwrap();
            let dn1 = e.sl2_d_pow(n - 1).unwrap();
            let rhs = dn1.sl2_w().unwrap().sub(&dn1.scale(&rat(n as i64 - 1))).unwrap().scale(&rat(n as i64));
            assert_eq!(lhs, rhs, "{g:?} n={n}");
        }
    }
}

#[test]
fn sl2_examples() {
    assert_eq!(gen(1, 1).sl2_d().unwrap(), gen(2, 2));
    assert_eq!(gen(2, 2).sl2_lower().unwrap(), gen(1, 1).scale(&rat(2)));
    let sq = gen(1, 1).induced_mul(&gen(1, 1)).unwrap();
    assert_eq!(sq.sl2_lower().unwrap(), gen(1, 1).scale(&rat(-1)));
    assert_eq!(gen(1, 1).sl2_lower().unwrap(), TExpr::constant(ratio(-1, 2), Basis::Induced));
    assert_eq!(gen(0, 2).sl2_lower().unwrap(), TExpr::constant(ratio(-1, 2), Basis::Induced));
    assert_eq!(gen(3, 1).sl2_w().unwrap(), gen(3, 1).scale(&rat(4)));
}

#[test]
fn symbolic_bracket_examples() {
    assert_eq!(gen(3, 1).qm_bracket().unwrap(), Q::g4());
    let t22 = Q::g4().scale(&ratio(5, 6)).sub(&Q::g2().pow(2).scale(&rat(2)));
    assert_eq!(gen(2, 2).qm_bracket().unwrap(), t22);
    let p = gen(1, 1).induced_mul(&gen(0, 2)).unwrap();
    assert_eq!(p.qm_bracket().unwrap(), Q::g2().pow(2));
    let odd = TExpr::generator_ext(1, 2, Basis::Induced);
    assert!(odd.qm_bracket().is_err());
    assert!(TExpr::from_terms(Basis::Induced, [(vec![(1, 2)], rat(1))]).q_bracket(5).is_ok());
}

#[test]
fn symbolic_brackets_match_numeric() {
    let order = 20;
    for m in monomials(6) {
        for basis in [Basis::Pointwise, Basis::Induced] {
            let e = mono(&m, basis);
            if basis == Basis::Induced && m.len() > 2 {
                continue;
            }
            let numeric = e.to_pfun().q_bracket(order).unwrap();
            assert_eq!(e.q_bracket(order).unwrap(), numeric, "{e}");
        }
    }
}

#[test]
fn extended_generators_bracket_by_branch_rule() {
    // D^{l-1} G_{k-l+2} when k + 1 >= l, D^k G_{l-k} otherwise
    assert_eq!(generator_bracket_symbol((3, 1)), (0, 4));
    assert_eq!(generator_bracket_symbol((2, 2)), (1, 2));
    assert_eq!(generator_bracket_symbol((0, 2)), (0, 2));
    assert_eq!(generator_bracket_symbol((1, 5)), (1, 4));
    assert_eq!(generator_bracket_symbol((1, 2)), (1, 1));
    let order = 16;
    for (k, l) in [(1u32, 2u32), (0, 1), (2, 3), (0, 3), (3, 2)] {
        let e = TExpr::generator_ext(k as i64, l as i64, Basis::Induced);
        assert_eq!(e.q_bracket(order).unwrap(), PFun::t_ext(k, l).unwrap().q_bracket(order).unwrap(), "T[{k},{l}]");
    }
}

#[test]
fn equivariance_on_low_weight_basis() {
    let order = 40;
    for m in monomials(6) {
        let e = mono(&m, Basis::Induced);
        let br = e.qm_bracket().unwrap();
        assert_eq!(e.sl2_d().unwrap().q_bracket(order).unwrap(), e.q_bracket(order).unwrap().derive(), "D {e}");
        assert_eq!(e.sl2_d().unwrap().qm_bracket().unwrap(), br.derive(), "D {e}");
        assert_eq!(e.sl2_w().unwrap().qm_bracket().unwrap(), br.weight_op(), "W {e}");
        assert_eq!(e.sl2_lower().unwrap().qm_bracket().unwrap(), br.lower(), "lower {e}");
    }
}

#[test]
fn rankin_cohen_brackets() {
    let f = gen(3, 1);
    let g = gen(5, 1);
    assert_eq!(rankin_cohen(&f, &g, 0).unwrap(), f.induced_mul(&g).unwrap());
    assert!(rankin_cohen(&f, &f, 1).unwrap().is_zero());
    for n in 1..=3u32 {
        let rc = rankin_cohen(&f, &g, n).unwrap();
        assert!(rc.sl2_lower().unwrap().is_zero(), "n={n}");
    }
    // on brackets it is the usual Rankin-Cohen bracket
    let rc = rankin_cohen(&f, &g, 1).unwrap().qm_bracket().unwrap();
    let (a, b) = (Q::g4(), Q::eisenstein(6).unwrap());
    let expected = a.scale(&rat(4)).mul(&b.derive()).sub(&a.derive().mul(&b).scale(&rat(6)));
    assert_eq!(rc, expected);
    let mixed = gen(3, 1).add(&gen(1, 1)).unwrap();
    assert!(rankin_cohen(&mixed, &g, 1).is_err());
}

fn spoly(vars: &[u32]) -> SPoly {
    SPoly::monomial(vars.to_vec(), rat(1)).unwrap()
}

#[test]
fn s_operator_examples() {
    assert_eq!(spoly(&[2]).s_operator(), SPoly::constant(ratio(-1, 2)));
    assert_eq!(spoly(&[2, 2]).s_operator(), spoly(&[2]));
    let p = spoly(&[4]);
    let comm = spoly(&[2]).mul(&p).s_operator().sub(&spoly(&[2]).mul(&p.s_operator()));
    assert_eq!(comm, p.weight_op().sub(&p.scale(&ratio(1, 2))));
    assert_eq!(comm, p.scale(&ratio(7, 2)));
    assert!(SPoly::var(3).is_err());
}

#[test]
fn restricted_equivariance() {
    let order = 40;
    let mut polys = vec![SPoly::constant(rat(1))];
    for vars in [&[2u32][..], &[4], &[6], &[2, 2], &[2, 4], &[2, 2, 2]] {
        polys.push(spoly(vars));
    }
    let g2 = eisenstein(2, order).unwrap();
    for p in polys {
        let f = p.to_texpr();
        let br = f.q_bracket(order).unwrap();
        let s2f = spoly(&[2]).mul(&p).to_texpr().q_bracket(order).unwrap();
        assert_eq!(s2f, &br.derive() + &(&g2 * &br), "{p}");
        let lhs = p.s_operator().to_texpr().qm_bracket().unwrap();
        assert_eq!(lhs, f.qm_bracket().unwrap().lower(), "{p}");
    }
    let e = spoly(&[2, 2]).s_operator().to_texpr().q_bracket(order).unwrap();
    let bracket = Q::g2().pow(2).add(&Q::g2().derive());
    assert_eq!(e, bracket.lower().expand(order));
}

#[test]
fn tkl_expansion() {
    let one = TExpr::one(Basis::Pointwise);
    for (k, l) in [(0u32, 2u32), (1, 1), (3, 3)] {
        let e = expand_t_times(k, l, &one).unwrap();
        assert_eq!(e.to_induced().unwrap(), gen(k as i64, l as i64));
    }
    let t02 = pgen(0, 2);
    let e = expand_t_times(0, 2, &t02).unwrap();
    let sq = t02.pointwise_mul(&t02).unwrap();
    assert_eq!(e.to_induced().unwrap(), pointwise_to_induced(&sq).unwrap());

    let t11 = pgen(1, 1);
    let e = expand_t_times(1, 1, &t11).unwrap();
    let g2 = eisenstein(2, 30).unwrap();
    assert_eq!(e.q_bracket(30).unwrap(), &(&g2 * &g2) + &g2.derive());

    let f = pgen(1, 1).pointwise_mul(&pgen(0, 2)).unwrap().add(&pgen(2, 2)).unwrap();
    for (k, l) in [(0u32, 2u32), (2, 2), (1, 3)] {
        let e = expand_t_times(k, l, &f).unwrap();
        let lhs = pgen(k as i64, l as i64).pointwise_mul(&f).unwrap();
        assert_eq!(e.to_induced().unwrap(), pointwise_to_induced(&lhs).unwrap(), "T[{k},{l}]");
        assert_same(&e.to_pfun(), &lhs.to_pfun(), 8);
    }
    assert!(expand_t_times(1, 1, &mono(&[(1, 1); 5], Basis::Pointwise)).is_err());
    assert!(expand_t_times(1, 0, &one).is_err());
}

#[test]
fn s_ij_on_generators() {
    // T02 T02 = T02 ⊙ (T02 + 1/6) + 5/6 T04 + const
    let f = pgen(0, 2);
    let s00 = s_ij(0, 0, 2, &f).unwrap();
    assert_eq!(s00, f.add(&TExpr::constant(ratio(1, 6), Basis::Pointwise)).unwrap());
    let s0m = s_ij(0, 2, 2, &f).unwrap();
    assert_eq!(s0m, TExpr::constant(ratio(5, 6), Basis::Pointwise));
}

#[test]
fn surjectivity_determinants() {
    assert_eq!(surjectivity_matrix(4).unwrap().determinant, rat(-1));
    assert_eq!(surjectivity_matrix(6).unwrap().determinant, rat(-7));
    assert_eq!(surjectivity_matrix(8).unwrap().determinant, rat(-31));
    for m in (10..=20u32).step_by(2) {
        let sys = surjectivity_matrix(m).unwrap();
        assert_eq!(sys.determinant, rat(1) - rat(2).pow(m as i32 - 3), "m={m}");
    }
    assert!(surjectivity_matrix(5).is_err());
    assert!(surjectivity_matrix(22).is_err());
}

fn rank_on_partitions(fs: &[PFun], n: usize) -> usize {
    let parts = partitions_up_to(n);
    let rows: Vec<Vec<Rational>> = fs
        .iter()
        .map(|f| parts.iter().map(|p| f.eval(p).unwrap()).collect())
        .collect();
    Matrix::from_rows(rows).rank()
}

#[test]
fn pointwise_monomials_are_independent() {
    let ms = monomials(8);
    assert_eq!(ms.len(), 75);
    let fs: Vec<PFun> = ms.iter().map(|m| mono(m, Basis::Pointwise).to_pfun()).collect();
    assert_eq!(rank_on_partitions(&fs, 12), 75);
}

#[test]
fn induced_monomials_are_independent() {
    let ms = monomials(8);
    let fs: Vec<PFun> = ms.iter().map(|m| mono(m, Basis::Induced).to_pfun()).collect();
    assert_eq!(rank_on_partitions(&fs, 12), 75);
}

#[test]
fn products_with_k_at_least_l_stay_in_the_subalgebra() {
    for m in monomials(8) {
        if m.iter().any(|&(k, l)| k < l) {
            continue;
        }
        let ind = pointwise_to_induced(&mono(&m, Basis::Pointwise)).unwrap();
        for (mm, _) in ind.terms() {
            assert!(mm.iter().all(|&(k, l)| k >= l), "{m:?} gives {mm:?}");
        }
    }
}

#[test]
fn connected_texpr_products() {
    let c = TExpr::connected(&[pgen(1, 1), pgen(1, 1)]).unwrap();
    assert_eq!(c, gen(2, 2));
    let c = TExpr::connected(&[pgen(0, 2), TExpr::one(Basis::Pointwise)]).unwrap();
    assert!(c.is_zero());
    let c = TExpr::connected(&[pgen(1, 1), pgen(1, 1), pgen(1, 1)]).unwrap();
    assert_eq!(c.q_bracket(20).unwrap(), eisenstein(2, 20).unwrap().derive_n(2));
}
