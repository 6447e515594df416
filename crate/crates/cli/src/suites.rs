//! Verification suites. Every check carries its own default bounds, which
//! the `--order` and `--psize` flags override, and reports the bounds it
//! actually used.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use qbl_core::arith::{faulhaber, faulhaber_value, factorial, stirling2};
use qbl_core::partitions::{partitions_of, partitions_up_to, set_partitions, SetPartition};
use qbl_core::pfun::{hook_lengths, t_constant};
use qbl_core::qseries::eisenstein;
use qbl_core::quasimodular::{dg_product_formula, fit_ce, fit_qm};
use qbl_core::symgroup::{
    border_strips, character, character_bst, hook_moment_moller, hook_moment_quadratic, hook_moment_strips, moller,
    u_function, x_function, z_factor, Block,
};
use qbl_core::talgebra::{connected_g, rankin_cohen, structure_constants, surjectivity_matrix, SPoly, TMonomial};
use qbl_core::{rat, ratio, Basis, PFun, QMPoly, QSeries, Rational, TExpr};
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, Default)]
pub struct Bounds {
    pub order: Option<usize>,
    pub psize: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psize: Option<usize>,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

/// Collects the outcome of one check.
struct Scope {
    order: Option<usize>,
    psize: Option<usize>,
    cases: usize,
    failure: Option<String>,
}

impl Scope {
    fn new() -> Self {
        Scope { order: None, psize: None, cases: 0, failure: None }
    }

    fn order(&mut self, b: &Bounds, default: usize) -> usize {
        let n = b.order.unwrap_or(default);
        self.order = Some(n);
        n
    }

    fn psize(&mut self, b: &Bounds, default: usize) -> usize {
        let n = b.psize.unwrap_or(default);
        self.psize = Some(n);
        n
    }

    fn fail(&mut self, msg: String) {
        self.cases += 1;
        if self.failure.is_none() {
            self.failure = Some(msg);
        }
    }

    fn ok(&mut self) {
        self.cases += 1;
    }

    fn check(&mut self, cond: bool, what: impl FnOnce() -> String) {
        if cond {
            self.ok()
        } else {
            self.fail(what())
        }
    }

    fn result<T>(&mut self, label: &str, r: qbl_core::Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.fail(format!("{label}: {e}"));
                None
            }
        }
    }

    fn series(&mut self, label: &str, a: &QSeries, b: &QSeries) {
        match a.first_mismatch(b) {
            None => self.ok(),
            Some(i) => self.fail(format!("{label}: first mismatch at q^{i}: {} vs {}", a.coeff(i), b.coeff(i))),
        }
    }

    fn functions(&mut self, label: &str, f: &PFun, g: &PFun, n: usize) {
        match f.first_difference(g, n) {
            Ok(None) => self.ok(),
            Ok(Some(lam)) => {
                let (a, b) = (f.eval(&lam).unwrap(), g.eval(&lam).unwrap());
                self.fail(format!("{label}: differs at λ=({lam}): {a} vs {b}"))
            }
            Err(e) => self.fail(format!("{label}: {e}")),
        }
    }

    fn finish(self, suite: &'static str, name: &'static str) -> CheckReport {
        CheckReport {
            suite,
            name,
            passed: self.failure.is_none() && self.cases > 0,
            order: self.order,
            psize: self.psize,
            cases: self.cases,
            counterexample: self.failure,
        }
    }
}

type CheckFn = fn(&Bounds, &mut Scope);

pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    run: CheckFn,
}

impl Check {
    pub fn run(&self, b: &Bounds) -> CheckReport {
        let mut scope = Scope::new();
        (self.run)(b, &mut scope);
        scope.finish(self.suite, self.name)
    }
}

pub const SUITES: &[&str] = &["appendix", "products", "sl2", "characters", "structure"];

pub fn all_checks() -> Vec<Check> {
    let c = |suite, name, run| Check { suite, name, run };
    vec![
        c("appendix", "definitions", appendix_definitions as CheckFn),
        c("appendix", "q-bracket", appendix_brackets),
        c("appendix", "D", appendix_d),
        c("appendix", "dd", appendix_lowering),
        c("appendix", "moller", appendix_moller),
        c("products", "moment-brackets", moment_brackets),
        c("products", "double-moment-brackets", double_moment_brackets),
        c("products", "mixed-weight", mixed_weight),
        c("products", "set-partition-formula", set_partition_formula),
        c("products", "connected-faulhaber", connected_faulhaber),
        c("products", "two-moment-brackets", two_moment_brackets),
        c("products", "extended-brackets", extended_brackets),
        c("sl2", "commutators", sl2_commutators),
        c("sl2", "equivariance", sl2_equivariance),
        c("sl2", "restricted", sl2_restricted),
        c("sl2", "rankin-cohen", rankin_cohen_check),
        c("characters", "strip-tableaux", characters_bst),
        c("characters", "orthogonality", characters_orthogonality),
        c("characters", "hook-strip-duality", hook_strip_duality),
        c("characters", "hook-moments", hook_moment_forms),
        c("characters", "stirling-u", stirling_u),
        c("characters", "u-concatenation", u_concatenation),
        c("characters", "moller-u", moller_u),
        c("structure", "constants", structure_constant_values),
        c("structure", "eisenstein-derivative", eisenstein_derivative),
        c("structure", "determinants", determinants),
        c("structure", "moebius-lemmas", moebius_lemmas),
    ]
}

/// Runs the checks of `suite` (or of every suite for `"all"`) in parallel;
/// the report order is the registry order.
pub fn run_suite(suite: &str, b: &Bounds) -> Option<Vec<CheckReport>> {
    if suite != "all" && !SUITES.contains(&suite) {
        return None;
    }
    let checks: Vec<Check> = all_checks().into_iter().filter(|c| suite == "all" || c.suite == suite).collect();
    Some(checks.par_iter().map(|c| c.run(b)).collect())
}

pub fn run_named(suite: &str, name: &str, b: &Bounds) -> Option<CheckReport> {
    all_checks().into_iter().find(|c| c.suite == suite && c.name == name).map(|c| c.run(b))
}

fn gen(k: u32, l: u32) -> TExpr {
    TExpr::generator(k as i64, l as i64, Basis::Pointwise).expect("even weight")
}

fn mono(gens: &[(u32, u32)], basis: Basis) -> TExpr {
    TExpr::monomial(gens.to_vec(), rat(1), basis)
}

fn lin(terms: &[(Rational, TExpr)]) -> TExpr {
    terms.iter().fold(TExpr::zero(Basis::Induced), |acc, (c, e)| acc.add(&e.scale(c)).unwrap())
}

fn x_comb(terms: &[(Rational, &[Block])], constant: Rational) -> PFun {
    let mut fs = vec![(rat(1), PFun::constant(constant))];
    for (c, bs) in terms {
        fs.push((c.clone(), x_function(bs).unwrap()));
    }
    PFun::linear_combination(&fs)
}

fn g2() -> QMPoly {
    QMPoly::g2()
}

fn g4() -> QMPoly {
    QMPoly::g4()
}

/// One column of the table of basis elements of weight at most 4.
pub struct AppendixRow {
    pub name: &'static str,
    /// The element as an induced product of generators.
    pub f: TExpr,
    /// The same element written with pointwise products.
    pub pointwise: TExpr,
    pub bracket: QMPoly,
    pub d: TExpr,
    pub dd: TExpr,
    pub moller: PFun,
}

pub fn appendix_table() -> Vec<AppendixRow> {
    let one = TExpr::one(Basis::Pointwise);
    let ind = |gs: &[(u32, u32)]| mono(gs, Basis::Induced);
    let pw = |gs: &[(u32, u32)]| mono(gs, Basis::Pointwise);
    let flagship_g2 = g2().pow(2);
    let quasi = g4().scale(&ratio(5, 6)).sub(&g2().pow(2).scale(&rat(2)));
    let c = |x: Rational| TExpr::constant(x, Basis::Induced);
    let mut rows = vec![
        AppendixRow {
            name: "1",
            f: one.clone(),
            pointwise: one.clone(),
            bracket: QMPoly::constant(rat(1)),
            d: TExpr::zero(Basis::Induced),
            dd: TExpr::zero(Basis::Induced),
            moller: PFun::one(),
        },
        AppendixRow {
            name: "T[1,1]",
            f: gen(1, 1),
            pointwise: gen(1, 1),
            bracket: g2(),
            d: gen(2, 2),
            dd: c(ratio(-1, 2)),
            moller: x_comb(&[(rat(1), &[(1, 1)])], ratio(-1, 24)),
        },
        AppendixRow {
            name: "T[0,2]",
            f: gen(0, 2),
            pointwise: gen(0, 2),
            bracket: g2(),
            d: gen(1, 3),
            dd: c(ratio(-1, 2)),
            moller: x_comb(&[(rat(1), &[(0, 2)]), (rat(1), &[(0, 1)])], ratio(-1, 24)),
        },
        AppendixRow {
            name: "T[3,1]",
            f: gen(3, 1),
            pointwise: gen(3, 1),
            bracket: g4(),
            d: gen(4, 2),
            dd: TExpr::zero(Basis::Induced),
            moller: x_comb(&[(rat(1), &[(3, 1)])], ratio(1, 240)),
        },
        AppendixRow {
            name: "T[2,2]",
            f: gen(2, 2),
            pointwise: gen(2, 2),
            bracket: quasi.clone(),
            d: gen(3, 3),
            dd: gen(1, 1).scale(&rat(2)),
            moller: x_comb(&[(rat(1), &[(2, 2)]), (rat(1), &[(2, 1)])], rat(0)),
        },
        AppendixRow {
            name: "T[1,3]",
            f: gen(1, 3),
            pointwise: gen(1, 3),
            bracket: quasi,
            d: gen(2, 4),
            dd: gen(0, 2).scale(&rat(2)),
            moller: x_comb(&[(rat(2), &[(1, 3)]), (rat(3), &[(1, 2)]), (rat(1), &[(1, 1)])], rat(0)),
        },
        AppendixRow {
            name: "T[0,4]",
            f: gen(0, 4),
            pointwise: gen(0, 4),
            bracket: g4(),
            d: gen(1, 5),
            dd: TExpr::zero(Basis::Induced),
            moller: x_comb(
                &[(rat(6), &[(0, 4)]), (rat(12), &[(0, 3)]), (rat(7), &[(0, 2)]), (rat(1), &[(0, 1)])],
                ratio(1, 240),
            ),
        },
        AppendixRow {
            name: "T[1,1](+)T[1,1]",
            f: ind(&[(1, 1), (1, 1)]),
            pointwise: pw(&[(1, 1), (1, 1)]).sub(&gen(2, 2)).unwrap(),
            bracket: flagship_g2.clone(),
            d: ind(&[(2, 2), (1, 1)]).scale(&rat(2)),
            dd: gen(1, 1).scale(&rat(-1)),
            moller: x_comb(&[(rat(1), &[(1, 1), (1, 1)]), (ratio(-1, 12), &[(1, 1)])], ratio(1, 576)),
        },
        AppendixRow {
            name: "T[1,1](+)T[0,2]",
            f: ind(&[(1, 1), (0, 2)]),
            pointwise: pw(&[(1, 1), (0, 2)]).sub(&gen(1, 3)).unwrap(),
            bracket: flagship_g2.clone(),
            d: lin(&[(rat(1), ind(&[(2, 2), (0, 2)])), (rat(1), ind(&[(1, 1), (1, 3)]))]),
            dd: lin(&[(ratio(-1, 2), gen(1, 1)), (ratio(-1, 2), gen(0, 2))]),
            // the printed table omits the -1/24 X[0;1] term
            moller: x_comb(
                &[
                    (rat(1), &[(1, 1), (0, 2)]),
                    (rat(1), &[(1, 1), (0, 1)]),
                    (ratio(-1, 24), &[(1, 1)]),
                    (ratio(-1, 24), &[(0, 2)]),
                    (ratio(-1, 24), &[(0, 1)]),
                ],
                ratio(1, 576),
            ),
        },
        AppendixRow {
            name: "T[0,2](+)T[0,2]",
            f: ind(&[(0, 2), (0, 2)]),
            pointwise: lin(&[
                (rat(1), pw(&[(0, 2), (0, 2)])),
                (ratio(-5, 6), gen(0, 4)),
                (ratio(-1, 6), gen(0, 2)),
                (ratio(-1, 288), TExpr::one(Basis::Pointwise)),
            ]),
            bracket: flagship_g2,
            d: ind(&[(1, 3), (0, 2)]).scale(&rat(2)),
            dd: gen(0, 2).scale(&rat(-1)),
            moller: x_comb(
                &[
                    (rat(1), &[(0, 2), (0, 2)]),
                    (rat(2), &[(0, 2), (0, 1)]),
                    (rat(1), &[(0, 1), (0, 1)]),
                    (ratio(-1, 12), &[(0, 2)]),
                    (ratio(-1, 12), &[(0, 1)]),
                ],
                ratio(1, 576),
            ),
        },
    ];
    for r in &mut rows {
        r.f = r.f.to_induced().unwrap();
    }
    rows
}

fn same_texpr(s: &mut Scope, label: String, a: &TExpr, b: &TExpr) {
    match (a.to_induced(), b.to_induced()) {
        (Ok(x), Ok(y)) => s.check(x == y, || format!("{label}: {x} vs {y}")),
        (Err(e), _) | (_, Err(e)) => s.fail(format!("{label}: {e}")),
    }
}

fn appendix_definitions(b: &Bounds, s: &mut Scope) {
    let n = s.psize(b, 10);
    for r in appendix_table() {
        same_texpr(s, format!("{} as pointwise expression", r.name), &r.f, &r.pointwise);
        s.functions(r.name, &r.f.to_pfun(), &r.pointwise.to_pfun(), n);
    }
}

fn appendix_brackets(b: &Bounds, s: &mut Scope) {
    let order = s.order(b, 30);
    for r in appendix_table() {
        let label = format!("<{}>", r.name);
        let Some(series) = s.result(&label, r.pointwise.to_pfun().q_bracket(order)) else { continue };
        if let Some(fit) = s.result(&label, fit_qm(&series, 4)) {
            s.check(fit == r.bracket, || format!("{label}: fitted {fit}, table {}", r.bracket));
        }
        if let Some(sym) = s.result(&label, r.f.qm_bracket()) {
            s.check(sym == r.bracket, || format!("{label}: symbolic {sym}, table {}", r.bracket));
        }
    }
}

fn appendix_d(b: &Bounds, s: &mut Scope) {
    let n = s.psize(b, 8);
    for r in appendix_table() {
        let label = format!("D({})", r.name);
        let Some(d) = s.result(&label, r.f.sl2_d()) else { continue };
        same_texpr(s, label.clone(), &d, &r.d);
        // D is the connected product with S_2
        s.functions(&label, &r.pointwise.to_pfun().derivation_d(), &r.d.to_pfun(), n);
    }
}

fn appendix_lowering(_: &Bounds, s: &mut Scope) {
    for r in appendix_table() {
        let label = format!("dd({})", r.name);
        if let Some(dd) = s.result(&label, r.f.sl2_lower()) {
            same_texpr(s, label, &dd, &r.dd);
        }
    }
}

fn appendix_moller(b: &Bounds, s: &mut Scope) {
    let n = s.psize(b, 10);
    for r in appendix_table() {
        let m = moller(&r.pointwise.to_pfun(), n);
        s.functions(&format!("moller({})", r.name), &m, &r.moller, n);
    }
}

fn moment_brackets(b: &Bounds, s: &mut Scope) {
    let order = s.order(b, 50);
    for k in [2u32, 4, 6, 8] {
        let label = format!("<S[{k}]>");
        let (Some(a), Some(e)) = (
            s.result(&label, PFun::s(k).and_then(|f| f.q_bracket(order))),
            s.result(&label, eisenstein(k, order)),
        ) else {
            continue;
        };
        s.series(&label, &a, &e);
    }
}

/// `D^{l-1} G_{k-l+2}` when `k + 1 >= l`, else `D^k G_{l-k}`.
fn branch(k: u32, l: u32, order: usize) -> qbl_core::Result<QSeries> {
    let (r, w) = if k + 1 >= l { (l - 1, k + 2 - l) } else { (k, l - k) };
    Ok(eisenstein(w, order)?.derive_n(r))
}

fn double_moment_brackets(b: &Bounds, s: &mut Scope) {
    let order = s.order(b, 50);
    let pairs: Vec<(u32, u32)> =
        (2..=10u32).step_by(2).flat_map(|w| (1..=w).map(move |l| (w - l, l))).collect();
    let results: Vec<_> = pairs
        .par_iter()
        .map(|&(k, l)| {
            let a = PFun::t(k, l).and_then(|f| f.q_bracket(order));
            let e = branch(k, l, order);
            ((k, l), a, e)
        })
        .collect();
    for ((k, l), a, e) in results {
        let label = format!("<T[{k},{l}]>");
        let (Some(a), Some(e)) = (s.result(&label, a), s.result(&label, e)) else { continue };
        s.series(&label, &a, &e);
    }
}

fn mixed_weight(b: &Bounds, s: &mut Scope) {
    let order = s.order(b, 50);
    let n = s.psize(b, 14);
    let t02 = PFun::t(0, 2).unwrap();
    let t04 = PFun::t(0, 4).unwrap();
    let sq = t02.pointwise_mul(&t02);
    let expected = g2().pow(2).add(&g4().scale(&ratio(5, 6))).add(&g2().scale(&ratio(1, 6)));
    let expected = expected.add(&QMPoly::constant(ratio(1, 288)));
    if let Some(series) = s.result("<T[0,2]^2>", sq.q_bracket(order)) {
        s.series("<T[0,2]^2>", &series, &expected.expand(order));
    }
    let rhs = PFun::linear_combination(&[
        (rat(1), t02.induced_mul(&t02)),
        (ratio(5, 6), t04),
        (ratio(1, 6), t02.clone()),
        (ratio(1, 288), PFun::one()),
    ]);
    s.functions("T[0,2]^2", &sq, &rhs, n);
}

fn dg(r: u32, k: u32, order: usize) -> QSeries {
    eisenstein(k, order).unwrap().derive_n(r)
}

fn moment_tuples() -> Vec<Vec<u32>> {
    let ks = [2u32, 4, 6];
    let mut out = Vec::new();
    for (i, &a) in ks.iter().enumerate() {
        out.push(vec![a]);
        for (j, &b) in ks.iter().enumerate().skip(i) {
            out.push(vec![a, b]);
            for &c in &ks[j..] {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

fn set_partition_formula(b: &Bounds, s: &mut Scope) {
    let order = s.order(b, 40);
    let results: Vec<_> = moment_tuples()
        .into_par_iter()
        .map(|ks| {
            let fs: Vec<PFun> = ks.iter().map(|&k| PFun::s(k).unwrap()).collect();
            let lhs = PFun::pointwise_product(&fs).q_bracket(order);
            let mut rhs = QSeries::zero(order);
            for alpha in set_partitions(ks.len()).unwrap() {
                let mut prod = QSeries::constant(rat(1), order);
                for block in alpha.blocks() {
                    let w: u32 = block.iter().map(|&i| ks[i]).sum::<u32>() + 2 - 2 * block.len() as u32;
                    prod = &prod * &dg(block.len() as u32 - 1, w, order);
                }
                rhs = &rhs + &prod;
            }
            (ks, lhs, rhs)
        })
        .collect();
    for (ks, lhs, rhs) in results {
        let label = format!("<S{ks:?}>");
        if let Some(lhs) = s.result(&label, lhs) {
            s.series(&label, &lhs, &rhs);
        }
    }
}

/// `g` from its definition, evaluated by direct summation at `n = 0..=top`.
fn connected_g_values(ls: &[u32], top: usize) -> Vec<Rational> {
    let fv = |l: u32, n: usize| Rational::from_integer(faulhaber_value(l, n as u64));
    let mut g = vec![Rational::zero(); top + 1];
    for alpha in set_partitions(ls.len()).unwrap() {
        let mut conv: Option<Vec<Rational>> = None;
        for block in alpha.blocks() {
            let fa: Vec<Rational> = (0..=top)
                .map(|n| block.iter().fold(Rational::one(), |acc, &i| acc * fv(ls[i], n)))
                .collect();
            conv = Some(match conv {
                None => fa,
                Some(c) => (0..=top)
                    .map(|n| (1..n).map(|i| &c[i] * &fa[n - i]).sum())
                    .collect(),
            });
        }
        let mut term = conv.unwrap();
        for _ in 1..alpha.len() {
            term = (0..=top)
                .map(|n| if n == 0 { Rational::zero() } else { &term[n] - &term[n - 1] })
                .collect();
        }
        let mu = Rational::from_integer(alpha.moebius_top());
        for (gn, t) in g.iter_mut().zip(term) {
            *gn += &mu * t;
        }
    }
    g
}

fn faulhaber_tuples() -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for a in 1..=8u32 {
        out.push(vec![a]);
        for b in a..=8 - a {
            out.push(vec![a, b]);
            for c in b..=(8 - a - b) {
                out.push(vec![a, b, c]);
            }
        }
    }
    out.retain(|t| t.iter().sum::<u32>() <= 8);
    out
}

fn connected_faulhaber(b: &Bounds, s: &mut Scope) {
    let n = s.psize(b, 12);
    let results: Vec<_> = faulhaber_tuples()
        .into_par_iter()
        .map(|ls| {
            let mut local = Scope::new();
            // exponents vary with the slot so the weights m^k are not all equal
            let ks: Vec<u32> = (0..ls.len() as u32).map(|i| 1 + i % 2).collect();
            let label = format!("l={ls:?}");
            let g = connected_g(&ls).unwrap();
            let top = 14;
            let brute = connected_g_values(&ls, top);
            // ∂ drops information at the low end, so compare where every
            // difference is taken inside the table
            for (x, v) in brute.iter().enumerate().skip(ls.len()) {
                let val = g.eval_int(x as i64);
                local.check(&val == v, || format!("{label}: g({x}) = {val}, direct sum {v}"));
            }
            let fs: Vec<PFun> = ls.iter().zip(&ks).map(|(&l, &k)| PFun::s_kf(k, &faulhaber(l))).collect();
            let kk: u32 = ks.iter().sum();
            match PFun::connected(&fs) {
                Ok(conn) => local.functions(&label, &conn, &PFun::s_kf(kk, &g), n),
                Err(e) => local.fail(format!("{label}: {e}")),
            }
            local
        })
        .collect();
    for local in results {
        s.cases += local.cases;
        if s.failure.is_none() {
            s.failure = local.failure;
        }
    }
}

fn two_moment_brackets(b: &Bounds, s: &mut Scope) {
    let order = s.order(b, 40);
    for (k, l) in [(2u32, 2u32), (2, 4), (2, 6), (4, 4)] {
        let label = format!("<S[{k}]S[{l}]>");
        let f = PFun::s(k).unwrap().pointwise_mul(&PFun::s(l).unwrap());
        let Some(lhs) = s.result(&label, f.q_bracket(order)) else { continue };
        let rhs = &(&eisenstein(k, order).unwrap() * &eisenstein(l, order).unwrap()) + &dg(1, k + l - 2, order);
        s.series(&label, &lhs, &rhs);
    }
}

fn extended_brackets(b: &Bounds, s: &mut Scope) {
    let order = s.order(b, 40);
    for w in [1u32, 3, 5] {
        for l in 1..=w {
            let k = w - l;
            let label = format!("<T[{k},{l}]>");
            let Some(series) = s.result(&label, PFun::t_ext(k, l).and_then(|f| f.q_bracket(order))) else {
                continue;
            };
            if let Some(fit) = s.result(&label, fit_ce(&series, w)) {
                s.check(fit.expand(order) == series, || format!("{label}: fit {fit} does not reproduce the series"));
            }
        }
    }
}

/// Even-weight generators of weight at most `w`.
fn generators(w: u32) -> Vec<(u32, u32)> {
    (2..=w).step_by(2).flat_map(|t| (1..=t).map(move |l| (t - l, l))).collect()
}

fn random_texpr(rng: &mut impl Rng, max_weight: u32) -> TExpr {
    let gens = generators(max_weight);
    let nterms = rng.gen_range(1..=3);
    let mut terms: Vec<(TMonomial, Rational)> = Vec::new();
    for _ in 0..nterms {
        let mut m = Vec::new();
        let mut budget = max_weight;
        while rng.gen_bool(0.6) {
            let fits: Vec<&(u32, u32)> = gens.iter().filter(|g| g.0 + g.1 <= budget).collect();
            if fits.is_empty() {
                break;
            }
            let g = *fits[rng.gen_range(0..fits.len())];
            budget -= g.0 + g.1;
            m.push(g);
        }
        terms.push((m, rat(rng.gen_range(-3..=3))));
    }
    TExpr::from_terms(Basis::Induced, terms)
}

fn sl2_commutators(_: &Bounds, s: &mut Scope) {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5127);
    for i in 0..30 {
        let e = random_texpr(&mut rng, 8);
        let label = format!("random element {i} ({e})");
        let d = |x: &TExpr| x.sl2_d().unwrap();
        let w = |x: &TExpr| x.sl2_w().unwrap();
        let dd = |x: &TExpr| x.sl2_lower().unwrap();
        s.check(w(&d(&e)).sub(&d(&w(&e))).unwrap() == d(&e).scale(&rat(2)), || format!("[W,D] on {label}"));
        s.check(w(&dd(&e)).sub(&dd(&w(&e))).unwrap() == dd(&e).scale(&rat(-2)), || format!("[W,dd] on {label}"));
        s.check(dd(&d(&e)).sub(&d(&dd(&e))).unwrap() == w(&e), || format!("[dd,D] on {label}"));
    }
}

fn sl2_equivariance(b: &Bounds, s: &mut Scope) {
    let order = s.order(b, 40);
    let results: Vec<_> = generators(8)
        .into_par_iter()
        .map(|(k, l)| {
            let mut local = Scope::new();
            let label = format!("T[{k},{l}]");
            let f = gen(k, l);
            let br = PFun::t(k, l).unwrap().q_bracket(order).unwrap();
            // D(T[k,l]) = T[k+1,l+1]
            let d = f.sl2_d().unwrap();
            match d.to_pfun().q_bracket(order) {
                Ok(x) => local.series(&format!("<D {label}>"), &x, &br.derive()),
                Err(e) => local.fail(format!("<D {label}>: {e}")),
            }
            let lowered = f.sl2_lower().unwrap();
            match (fit_qm(&br, k + l), lowered.to_pfun().q_bracket(order)) {
                (Ok(p), Ok(x)) => local.series(&format!("<dd {label}>"), &x, &p.lower().expand(order)),
                (Err(e), _) | (_, Err(e)) => local.fail(format!("<dd {label}>: {e}")),
            }
            local
        })
        .collect();
    for local in results {
        s.cases += local.cases;
        if s.failure.is_none() {
            s.failure = local.failure;
        }
    }
}

fn sl2_restricted(b: &Bounds, s: &mut Scope) {
    let order = s.order(b, 40);
    let monos: &[&[u32]] = &[&[], &[2], &[4], &[6], &[2, 2], &[2, 4], &[2, 2, 2]];
    let g2s = eisenstein(2, order).unwrap();
    let s2 = SPoly::var(2).unwrap();
    for &vars in monos {
        let p = SPoly::monomial(vars.to_vec(), rat(1)).unwrap();
        let label = format!("{p}");
        let w: u32 = vars.iter().sum();
        let br = p.to_texpr().to_pfun().q_bracket(order).unwrap();
        // multiplication by S_2 is D + G_2 on brackets
        let s2p = s2.mul(&p).to_texpr().to_pfun().q_bracket(order).unwrap();
        s.series(&format!("<S2 {label}>"), &s2p, &(&br.derive() + &(&g2s * &br)));
        // the lowering operator on polynomials in S_k matches dd on brackets
        let lowered = p.s_operator().to_texpr().to_pfun().q_bracket(order).unwrap();
        match fit_qm(&br, w) {
            Ok(q) => s.series(&format!("<s {label}>"), &lowered, &q.lower().expand(order)),
            Err(e) => s.fail(format!("<s {label}>: {e}")),
        }
        // [s, S_2] = W - 1/2
        let comm = s2.mul(&p).s_operator().sub(&s2.mul(&p.s_operator()));
        let expected = p.weight_op().sub(&p.scale(&ratio(1, 2)));
        s.check(comm == expected, || format!("[s,S2] on {label}: {comm} vs {expected}"));
    }
}

fn rankin_cohen_check(b: &Bounds, s: &mut Scope) {
    let order = s.order(b, 50);
    let (f, g) = (gen(3, 1), gen(5, 1));
    for n in [1u32, 2] {
        let label = format!("RC[{n}](T[3,1],T[5,1])");
        let Some(rc) = s.result(&label, rankin_cohen(&f, &g, n)) else { continue };
        let Some(low) = s.result(&label, rc.sl2_lower()) else { continue };
        s.check(low.is_zero(), || format!("dd {label} = {low}"));
        let Some(series) = s.result(&label, rc.q_bracket(order)) else { continue };
        let w = 10 + 2 * n;
        if let Some(fit) = s.result(&label, fit_qm(&series, w)) {
            // the weight 14 bracket vanishes: there are no cusp forms of that weight
            s.check(fit.weights().iter().all(|&x| x == w) && fit.depth() == 0, || {
                format!("{label}: fitted {fit} has weights {:?} and depth {}", fit.weights(), fit.depth())
            });
        }
    }
}

fn characters_bst(b: &Bounds, s: &mut Scope) {
    let n = s.psize(b, 8);
    for size in 0..=n {
        let classes = partitions_of(size);
        for lam in &classes {
            for rho in &classes {
                let (a, c) = (character(lam, rho), character_bst(lam, rho.parts()));
                s.check(a.is_ok() && a == c, || format!("χ^({lam})(({rho})): recursion {a:?}, tableaux {c:?}"));
            }
        }
    }
}

fn characters_orthogonality(b: &Bounds, s: &mut Scope) {
    let n = s.psize(b, 8);
    for size in 0..=n {
        let classes = partitions_of(size);
        let table: Vec<Vec<i64>> =
            classes.iter().map(|l| classes.iter().map(|r| character(l, r).unwrap()).collect()).collect();
        let z: Vec<Rational> = classes.iter().map(z_factor).collect();
        for i in 0..classes.len() {
            for j in 0..classes.len() {
                let sum: Rational =
                    (0..classes.len()).map(|c| rat(table[i][c] * table[j][c]) / &z[c]).sum();
                let expected = if i == j { rat(1) } else { rat(0) };
                s.check(sum == expected, || format!("<χ^({}), χ^({})> = {sum}", classes[i], classes[j]));
            }
        }
    }
}

fn hook_strip_duality(b: &Bounds, s: &mut Scope) {
    let n = s.psize(b, 12);
    for lam in partitions_up_to(n) {
        let mut hooks = hook_lengths(&lam);
        hooks.sort_unstable();
        let mut strips: Vec<i64> = Vec::new();
        for m in 1..=lam.size() as u32 {
            strips.extend(std::iter::repeat_n(m as i64, border_strips(&lam, m).len()));
        }
        s.check(hooks == strips, || format!("λ=({lam}): hooks {hooks:?}, strips {strips:?}"));
    }
}

fn hook_moment_forms(b: &Bounds, s: &mut Scope) {
    let n = s.psize(b, 10);
    for k in [2u32, 4, 6] {
        let h = PFun::hook_moment(k).unwrap();
        s.functions(&format!("H[{k}] by strips"), &h, &hook_moment_strips(k).unwrap(), n);
        s.functions(&format!("H[{k}] by shifted power sums"), &h, &hook_moment_quadratic(k).unwrap(), n);
        s.functions(&format!("H[{k}] by moller"), &h, &hook_moment_moller(k, n).unwrap(), n);
    }
}

/// Multisets of blocks `(κ, l)` with `l >= 1` and `Σ (κ + l) <= d`, nonempty.
pub fn block_sets(d: u32) -> Vec<Vec<Block>> {
    fn rec(all: &[Block], start: usize, budget: u32, cur: &mut Vec<Block>, out: &mut Vec<Vec<Block>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for i in start..all.len() {
            let w = all[i].0 + all[i].1;
            if w <= budget {
                cur.push(all[i]);
                rec(all, i, budget - w, cur, out);
                cur.pop();
            }
        }
    }
    let all: Vec<Block> = (1..=d).flat_map(|w| (1..=w).map(move |l| (w - l, l))).collect();
    let mut out = Vec::new();
    rec(&all, 0, d, &mut Vec::new(), &mut out);
    out
}

fn block_weight(bs: &[Block]) -> u32 {
    bs.iter().map(|b| b.0 + b.1).sum()
}

fn stirling_u(b: &Bounds, s: &mut Scope) {
    let n = s.psize(b, 10);
    for w in 1..=6u32 {
        for l in 1..=w {
            let k = w - l;
            let mut terms = vec![(rat(1), PFun::constant(t_constant(k, l)))];
            for j in 1..=l {
                let c = Rational::from_integer(stirling2(l, j) * factorial(j - 1));
                terms.push((c, u_function(&[(k, j)]).unwrap()));
            }
            s.functions(&format!("T[{k},{l}]"), &PFun::t_ext(k, l).unwrap(), &PFun::linear_combination(&terms), n);
        }
    }
}

fn u_concatenation(b: &Bounds, s: &mut Scope) {
    let n = s.psize(b, 10);
    let sets = block_sets(6);
    let mut pairs = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        for c in &sets[i..] {
            if block_weight(a) + block_weight(c) <= 6 {
                pairs.push((a.clone(), c.clone()));
            }
        }
    }
    let results: Vec<_> = pairs
        .into_par_iter()
        .map(|(a, c)| {
            let lhs = u_function(&a).unwrap().induced_mul(&u_function(&c).unwrap());
            let joined: Vec<Block> = a.iter().chain(&c).copied().collect();
            let mut local = Scope::new();
            local.functions(&format!("U{a:?} (+) U{c:?}"), &lhs, &u_function(&joined).unwrap(), n);
            local
        })
        .collect();
    for local in results {
        s.cases += local.cases;
        if s.failure.is_none() {
            s.failure = local.failure;
        }
    }
}

fn moller_u(b: &Bounds, s: &mut Scope) {
    let n = s.psize(b, 10);
    let results: Vec<_> = block_sets(6)
        .into_par_iter()
        .map(|bs| {
            let mut local = Scope::new();
            let m = moller(&u_function(&bs).unwrap(), n);
            local.functions(&format!("moller(U{bs:?})"), &m, &x_function(&bs).unwrap(), n);
            local
        })
        .collect();
    for local in results {
        s.cases += local.cases;
        if s.failure.is_none() {
            s.failure = local.failure;
        }
    }
}

fn structure_constant_values(_: &Bounds, s: &mut Scope) {
    match structure_constants(&[2, 2]) {
        Ok(c) => s.check(c == vec![ratio(5, 6), rat(0), ratio(1, 6), rat(0)], || format!("C^(2,2) = {c:?}")),
        Err(e) => s.fail(format!("C^(2,2): {e}")),
    }
    for n in 1..=6usize {
        match structure_constants(&vec![1; n]) {
            Ok(c) => s.check(c[0] == rat(1) && c[1..].iter().all(Zero::is_zero), || {
                format!("C^(1^{n}) = {c:?}")
            }),
            Err(e) => s.fail(format!("C^(1^{n}): {e}")),
        }
    }
}

fn eisenstein_derivative(b: &Bounds, s: &mut Scope) {
    let order = s.order(b, 50);
    for k in [2u32, 4, 6] {
        let label = format!("DG{k}");
        if let Some(rhs) = s.result(&label, dg_product_formula(k, order)) {
            s.series(&label, &dg(1, k, order), &rhs);
        }
    }
}

fn determinants(_: &Bounds, s: &mut Scope) {
    for m in [4u32, 6, 8] {
        let label = format!("m={m}");
        if let Some(sys) = s.result(&label, surjectivity_matrix(m)) {
            let expected = rat(1) - Rational::from_integer(BigInt::from(2).pow(m - 3));
            s.check(sys.determinant == expected, || format!("{label}: {} vs {expected}", sys.determinant));
        }
    }
}

fn moebius_lemmas(_: &Bounds, s: &mut Scope) {
    for n in 1..=6usize {
        let all = set_partitions(n).unwrap();
        // Σ_{α ≤ γ ≤ β} μ(α, γ) = δ_{α,β}
        for a in &all {
            for b in all.iter().filter(|b| a.refines(b)) {
                let sum: BigInt = all
                    .iter()
                    .filter(|g| a.refines(g) && g.refines(b))
                    .map(|g| SetPartition::moebius(a, g))
                    .sum();
                let expected = BigInt::from(i64::from(a == b));
                s.check(sum == expected, || format!("Σ μ({a}, γ) up to {b} = {sum}"));
            }
        }
        // for a proper nonempty Z, summing μ(α, 𝟏) over the α with fixed
        // restrictions to Z and its complement gives zero
        for mask in 1..(1u32 << n) - 1 {
            let z: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let zc: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
            let mut sums: std::collections::HashMap<(SetPartition, SetPartition), BigInt> = Default::default();
            for a in &all {
                *sums.entry((a.restrict(&z), a.restrict(&zc))).or_default() += a.moebius_top();
            }
            for ((x, y), v) in sums {
                s.check(v.is_zero(), || format!("n={n}, Z={z:?}, restrictions {x} | {y}: sum {v}"));
            }
        }
    }
}
