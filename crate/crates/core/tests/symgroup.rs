use num_bigint::BigInt;
use num_traits::One;
use qbl_core::arith::{bernoulli, factorial, stirling2};
use qbl_core::partitions::{partitions_of, partitions_up_to};
use qbl_core::pfun::hook_lengths;
use qbl_core::quasimodular::fit_qm;
use qbl_core::symgroup::*;
use qbl_core::{rat, ratio, Matrix, Partition, PFun, Rational};

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn assert_same(f: &PFun, g: &PFun, n: usize) {
    if let Some(lam) = f.first_difference(g, n).unwrap() {
        panic!(
            "{f} and {g} differ at {lam:?}: {} vs {}",
            f.eval(&lam).unwrap(),
            g.eval(&lam).unwrap()
        );
    }
}

fn sign(h: u32) -> i64 {
    if h.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[test]
fn z_factor_examples() {
    assert_eq!(z_factor(&p(&[1, 1, 1])), rat(6));
    assert_eq!(z_factor(&p(&[7])), rat(7));
    assert_eq!(z_factor(&p(&[2, 2, 1])), rat(8));
    assert_eq!(z_factor(&Partition::empty()), rat(1));
    // class sizes n!/z_ν add up to n!
    for n in 0..=9usize {
        let total: Rational = partitions_of(n).iter().map(|nu| z_factor(nu).recip()).sum();
        assert_eq!(total, rat(1), "n={n}");
    }
}

#[test]
fn border_strip_examples() {
    assert_eq!(border_strips(&p(&[2, 1]), 1).len(), 2);
    let whole = border_strips(&p(&[2, 1]), 3);
    assert_eq!(whole.len(), 1);
    assert_eq!(whole[0].height, 1);
    assert!(whole[0].shape.inner().is_empty());
    let l = border_strips(&p(&[2, 2]), 3);
    assert_eq!(l.len(), 1);
    assert_eq!(l[0].shape.inner(), &p(&[1]));
    assert_eq!(l[0].height, 1);
    assert!(border_strips(&p(&[2, 2]), 2).len() == 2);
    assert!(border_strips(&p(&[3]), 4).is_empty());
}

#[test]
fn strips_by_beads_match_geometry() {
    for lam in partitions_up_to(10) {
        for m in 1..=lam.size() as u32 {
            let mut a: Vec<(Partition, u32)> =
                border_strips(&lam, m).into_iter().map(|s| (s.shape.inner().clone(), s.height)).collect();
            let mut b: Vec<(Partition, u32)> = border_strips_geometric(&SkewShape::straight(lam.clone()), m)
                .into_iter()
                .map(|s| (s.shape.inner().clone(), s.height))
                .collect();
            a.sort();
            b.sort();
            assert_eq!(a, b, "{lam:?} m={m}");
        }
    }
}

#[test]
fn skew_shapes() {
    let s = SkewShape::new(p(&[2, 2]), p(&[1])).unwrap();
    assert_eq!(s.size(), 3);
    assert_eq!(s.to_string(), "2,2/1");
    assert!(s.is_border_strip());
    assert_eq!(s.height(), 1);
    assert!(SkewShape::new(p(&[2]), p(&[3])).is_err());
    assert!(!SkewShape::straight(p(&[2, 2])).is_border_strip());
    let disconnected = SkewShape::new(p(&[3, 1]), p(&[1])).unwrap();
    assert!(!disconnected.is_border_strip());
}

#[test]
fn character_examples() {
    for n in 1..=8usize {
        for rho in partitions_of(n) {
            assert_eq!(character(&p(&[n as u32]), &rho).unwrap(), 1);
        }
    }
    assert_eq!(character(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), 2);
    assert_eq!(character(&p(&[2, 2]), &p(&[2, 2])).unwrap(), 2);
    assert_eq!(character(&Partition::empty(), &Partition::empty()).unwrap(), 1);
    assert!(character(&p(&[2, 1]), &p(&[2])).is_err());
    assert!(character(&p(&[31]), &p(&[31])).is_err());
}

/// `n! / prod hook lengths`.
fn dimension(lam: &Partition) -> BigInt {
    let prod = hook_lengths(lam).into_iter().fold(BigInt::one(), |a, h| a * h);
    factorial(lam.size() as u32) / prod
}

#[test]
fn characters_at_identity_are_dimensions() {
    for lam in partitions_up_to(12) {
        let ones = Partition::power(1, lam.size());
        assert_eq!(BigInt::from(character(&lam, &ones).unwrap()), dimension(&lam), "{lam:?}");
    }
}

#[test]
fn bst_examples() {
    let t = border_strip_tableaux_within(&p(&[4, 2, 1, 1]), &[2, 1, 2]).unwrap();
    assert_eq!(t.len(), 4);
    let mut heights: Vec<u32> = t.iter().map(|x| x.iter().map(|s| s.height).sum()).collect();
    heights.sort();
    assert_eq!(heights, vec![1, 1, 1, 1]);
    let signed: i64 = heights.iter().map(|&h| sign(h)).sum();
    assert_eq!(signed, -4);
    assert_eq!(character_bst(&p(&[1, 1]), &[2]).unwrap(), -1);
    assert_eq!(character_bst(&Partition::empty(), &[]).unwrap(), 1);
    assert!(character_bst(&p(&[2, 1]), &[2]).is_err());
    assert!(character_bst(&Partition::power(1, 15), &[1; 15]).is_err());
}

#[test]
fn bst_sum_matches_recursion() {
    for n in 0..=8usize {
        for lam in partitions_of(n) {
            for rho in partitions_of(n) {
                let a = character(&lam, &rho).unwrap();
                assert_eq!(character_bst(&lam, rho.parts()).unwrap(), a, "{lam:?} {rho:?}");
                // the order of the strips does not matter
                let mut rev = rho.parts().to_vec();
                rev.reverse();
                assert_eq!(character_bst(&lam, &rev).unwrap(), a, "{lam:?} {rho:?} reversed");
            }
        }
    }
}

#[test]
fn column_orthogonality() {
    for n in 0..=8usize {
        let ps = partitions_of(n);
        for a in &ps {
            for b in &ps {
                let s: Rational = ps
                    .iter()
                    .map(|nu| {
                        rat(character(a, nu).unwrap() * character(b, nu).unwrap()) / z_factor(nu)
                    })
                    .sum();
                let expected = if a == b { rat(1) } else { rat(0) };
                assert_eq!(s, expected, "{a:?} {b:?}");
            }
        }
    }
}

#[test]
fn hooks_and_strips_are_equinumerous() {
    for lam in partitions_up_to(12) {
        let mut hooks = hook_lengths(&lam);
        hooks.sort();
        let mut strips = Vec::new();
        for m in 1..=lam.size() as u32 {
            for _ in border_strips(&lam, m) {
                strips.push(m as i64);
            }
        }
        assert_eq!(hooks, strips, "{lam:?}");
    }
}

#[test]
fn hook_moment_definitions_agree() {
    for k in [2u32, 4, 6] {
        let h = PFun::hook_moment(k).unwrap();
        assert_same(&h, &hook_moment_strips(k).unwrap(), 10);
        assert_same(&h, &hook_moment_quadratic(k).unwrap(), 10);
        assert_same(&h, &hook_moment_moller(k, 10).unwrap(), 10);
    }
    assert!(hook_moment_strips(3).is_err());
    assert!(hook_moment_quadratic(0).is_err());
}

#[test]
fn skew_character_examples() {
    let hook = SkewShape::new(p(&[2, 2]), p(&[1])).unwrap();
    assert_eq!(skew_character(&hook, &p(&[3])).unwrap(), -1);
    let row = SkewShape::new(p(&[4, 1]), p(&[1, 1])).unwrap();
    assert_eq!(skew_character(&row, &p(&[3])).unwrap(), 1);
    for lam in partitions_up_to(7) {
        for rho in partitions_of(lam.size()) {
            let shape = SkewShape::straight(lam.clone());
            assert_eq!(skew_character(&shape, &rho).unwrap(), character_bst(&lam, rho.parts()).unwrap());
        }
    }
    assert!(skew_character(&hook, &p(&[2])).is_err());
}

#[test]
fn skew_characters_match_tableau_counts() {
    for lam in partitions_up_to(9) {
        for nu in partitions_up_to(lam.size()) {
            if !lam.diagram_contains(&nu) {
                continue;
            }
            let shape = SkewShape::new(lam.clone(), nu.clone()).unwrap();
            for rho in partitions_of(shape.size()) {
                let count: i64 = border_strip_tableaux(&shape, rho.parts())
                    .unwrap()
                    .iter()
                    .map(|t| sign(t.iter().map(|s| s.height).sum()))
                    .sum();
                assert_eq!(skew_character(&shape, &rho).unwrap(), count, "{shape} {rho:?}");
            }
        }
    }
}

#[test]
fn characters_split_through_skew_shapes() {
    for lam in partitions_up_to(8) {
        for rho in partitions_of(lam.size()) {
            // split off every sub-multiset ρ' of ρ
            for sub in qbl_core::partitions::submultisets(&rho) {
                let rest = rho.difference(&sub).unwrap();
                let mut total = 0i64;
                for nu in partitions_of(rest.size()) {
                    if !lam.diagram_contains(&nu) {
                        continue;
                    }
                    let shape = SkewShape::new(lam.clone(), nu.clone()).unwrap();
                    total += skew_character(&shape, &sub).unwrap() * character(&nu, &rest).unwrap();
                }
                assert_eq!(total, character(&lam, &rho).unwrap(), "{lam:?} {rho:?} {sub:?}");
            }
        }
    }
}

#[test]
fn moller_examples() {
    let one = moller(&PFun::one(), 10);
    assert_same(&one, &PFun::one().with_bound(10), 10);
    for k in [2u32, 4] {
        let s = PFun::s(k).unwrap();
        assert_same(&moller(&s, 10), &PFun::hook_moment(k).unwrap().with_bound(10), 10);
    }
    let t11 = moller(&PFun::t(1, 1).unwrap(), 10);
    let x11 = x_function(&[(1, 1)]).unwrap().add(&PFun::constant(ratio(-1, 24)));
    assert_same(&t11, &x11, 10);
    assert!(t11.at(&[11]).is_err());
}

#[test]
fn u_function_examples() {
    let u = u_function(&[(1, 1)]).unwrap();
    for lam in partitions_up_to(10) {
        assert_eq!(u.eval(&lam).unwrap(), rat(lam.size() as i64));
    }
    assert!(u_function(&[]).is_err());
    assert!(u_function(&[(1, 0)]).is_err());
    let u02 = u_function(&[(0, 2)]).unwrap();
    // pairs of equal parts
    assert_eq!(u02.at(&[2, 2, 2, 1]).unwrap(), rat(3));
}

#[test]
fn u_functions_multiply_by_concatenation() {
    let cases: &[(&[Block], &[Block])] = &[
        (&[(1, 1)], &[(0, 2)]),
        (&[(2, 1)], &[(1, 1)]),
        (&[(0, 2)], &[(0, 2)]),
        (&[(1, 1), (0, 1)], &[(2, 2)]),
    ];
    for &(a, b) in cases {
        let lhs = u_function(a).unwrap().induced_mul(&u_function(b).unwrap());
        let joined: Vec<Block> = a.iter().chain(b).copied().collect();
        assert_same(&lhs, &u_function(&joined).unwrap(), 10);
    }
}

#[test]
fn double_moments_in_u_functions() {
    for k in 0..4u32 {
        for l in 1..5u32 {
            let mut terms = vec![(rat(1), PFun::constant(qbl_core::pfun::t_constant(k, l)))];
            for j in 1..=l {
                let c = Rational::from_integer(stirling2(l, j) * factorial(j - 1));
                terms.push((c, u_function(&[(k, j)]).unwrap()));
            }
            assert_same(&PFun::t_ext(k, l).unwrap(), &PFun::linear_combination(&terms), 12);
        }
    }
}

#[test]
fn x_function_examples() {
    assert_eq!(x_function(&[(1, 1)]).unwrap().at(&[2, 1]).unwrap(), rat(3));
    // strips of sizes 1, 1 and 3, each weighted 1/m
    assert_eq!(x_function(&[(0, 1)]).unwrap().at(&[2, 1]).unwrap(), ratio(7, 3));
    assert_eq!(x_function(&[(2, 1), (0, 2)]).unwrap().eval(&Partition::empty()).unwrap(), rat(0));
    assert!(x_function(&[(1, 1)]).unwrap().at(&[13]).is_err());
    assert!(x_function(&[]).is_err());
}

#[test]
fn strip_moments_are_hook_moments() {
    // with the constant of the hook-length moment itself
    for k in [1u32, 3, 5] {
        let c = -bernoulli(k + 1) / rat(2 * (k + 1) as i64);
        let lhs = x_function(&[(k, 1)]).unwrap().add(&PFun::constant(c));
        assert_same(&lhs, &PFun::hook_moment(k + 1).unwrap().with_bound(12), 10);
    }
}

/// Multisets of blocks `(κ, l)`, `l >= 1`, with `Σ (κ + l) <= d`.
fn block_sets(d: u32) -> Vec<Vec<Block>> {
    fn rec(all: &[Block], start: usize, budget: u32, cur: &mut Vec<Block>, out: &mut Vec<Vec<Block>>) {
        out.push(cur.clone());
        for i in start..all.len() {
            let w = all[i].0 + all[i].1;
            if w <= budget {
                cur.push(all[i]);
                rec(all, i, budget - w, cur, out);
                cur.pop();
            }
        }
    }
    let mut all = Vec::new();
    for w in 1..=d {
        for l in 1..=w {
            all.push((w - l, l));
        }
    }
    let mut out = Vec::new();
    rec(&all, 0, d, &mut Vec::new(), &mut out);
    out
}

#[test]
fn moller_of_u_is_x() {
    for blocks in block_sets(6) {
        if blocks.is_empty() {
            continue;
        }
        let m = moller(&u_function(&blocks).unwrap(), 10);
        assert_same(&m, &x_function(&blocks).unwrap(), 10);
    }
}

#[test]
fn moller_of_double_moments() {
    // constant C_{k,l}, nonzero when l = 1 or k = 0
    for (k, l) in [(1u32, 1u32), (0, 2), (2, 2), (1, 3), (3, 1), (0, 4)] {
        let mut terms = vec![(rat(1), PFun::constant(qbl_core::pfun::t_constant(k, l)))];
        for j in 1..=l {
            let c = Rational::from_integer(stirling2(l, j) * factorial(j - 1));
            terms.push((c, x_function(&[(k, j)]).unwrap()));
        }
        let m = moller(&PFun::t(k, l).unwrap(), 10);
        assert_same(&m, &PFun::linear_combination(&terms), 9);
    }
}

#[test]
fn moller_of_induced_moment_products() {
    // 𝓜(S_{k_1} ⊙ ... ⊙ S_{k_n}) = Σ_A prod_{i ∉ A} (-B_{k_i}/2k_i) X_{(k_A - 1), (1,..,1)}
    for ks in [vec![2u32, 2], vec![2, 4], vec![2, 2, 4]] {
        let prod = PFun::induced_product(&ks.iter().map(|&k| PFun::s(k).unwrap()).collect::<Vec<_>>());
        let n = ks.len();
        let mut terms = Vec::new();
        for mask in 0u32..(1 << n) {
            let mut c = rat(1);
            let mut blocks = Vec::new();
            for (i, &k) in ks.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    blocks.push((k - 1, 1));
                } else {
                    c *= -bernoulli(k) / rat(2 * k as i64);
                }
            }
            let f = if blocks.is_empty() { PFun::one() } else { x_function(&blocks).unwrap() };
            terms.push((c, f));
        }
        assert_same(&moller(&prod, 8), &PFun::linear_combination(&terms), 8);
    }
}

fn in_span(target: &PFun, span: &[PFun], n: usize) -> bool {
    let parts = partitions_up_to(n);
    let row = |f: &PFun| -> Vec<Rational> { parts.iter().map(|p| f.eval(p).unwrap()).collect() };
    let rows: Vec<Vec<Rational>> = span.iter().map(row).collect();
    let base = Matrix::from_rows(rows.clone()).rank();
    let mut with = rows;
    with.push(row(target));
    Matrix::from_rows(with).rank() == base
}

#[test]
fn moller_leading_term_in_strip_filtration() {
    let cases: &[&[(u32, u32)]] = &[&[(2, 2)], &[(1, 1), (0, 2)], &[(0, 3)], &[(1, 3)]];
    for &gens in cases {
        let fs: Vec<PFun> = gens.iter().map(|&(k, l)| PFun::t_ext(k, l).unwrap()).collect();
        let norm: BigInt = gens.iter().map(|&(_, l)| factorial(l - 1)).product();
        let m = moller(&PFun::induced_product(&fs), 8).scale(&Rational::new(BigInt::one(), norm));
        let blocks: Vec<Block> = gens.to_vec();
        let residual = m.sub(&x_function(&blocks).unwrap());
        let degree: u32 = gens.iter().map(|&(k, l)| k + l).sum();
        let span: Vec<PFun> = block_sets(degree - 1)
            .into_iter()
            .map(|b| if b.is_empty() { PFun::one() } else { x_function(&b).unwrap() })
            .collect();
        assert!(in_span(&residual, &span, 8), "{gens:?}");
        // the leading term itself is not of lower degree
        assert!(!in_span(&x_function(&blocks).unwrap(), &span, 8), "{gens:?}");
    }
}

#[test]
fn moller_keeps_brackets_quasimodular() {
    let h4 = moller(&PFun::s(4).unwrap(), 16);
    let s = h4.q_bracket(16).unwrap();
    let fit = fit_qm(&s, 4).unwrap();
    assert!(!fit.is_zero());
    assert_eq!(fit.expand(16), s);
    assert!(x_function(&[(3, 1)]).unwrap().q_bracket(14).is_err());
}
