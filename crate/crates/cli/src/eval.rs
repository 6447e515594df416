//! Evaluation of parsed expressions.
//!
//! Anything built from `T`, `S`, literals and the sl2 operators stays a
//! symbolic [`TExpr`]; as soon as `Q`, `H`, `U`, `X` or `moller` enter, the
//! value drops to a numeric [`PFun`].

use anyhow::{anyhow, bail, Result};
use qbl_core::symgroup::{moller, u_function, x_function};
use qbl_core::talgebra::rankin_cohen;
use qbl_core::{Basis, PFun, QSeries, TExpr};

use crate::expr::{BinOp, Expr, UnOp};

#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    /// Size bound for `moller(...)`.
    pub psize: usize,
    /// Admit odd-weight generators.
    pub extended: bool,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx { psize: qbl_core::DEFAULT_PSIZE, extended: false }
    }
}

#[derive(Clone, Debug)]
pub enum Value {
    Sym(TExpr),
    Num(PFun),
}

impl Value {
    pub fn to_pfun(&self) -> PFun {
        match self {
            Value::Sym(e) => e.to_pfun(),
            Value::Num(f) => f.clone(),
        }
    }

    pub fn q_bracket(&self, order: usize) -> Result<QSeries> {
        Ok(match self {
            Value::Sym(e) => e.q_bracket(order)?,
            Value::Num(f) => f.q_bracket(order)?,
        })
    }

    /// Weights present in a symbolic value.
    pub fn weights(&self) -> Option<Vec<u32>> {
        match self {
            Value::Sym(e) => e.weights().ok(),
            Value::Num(_) => None,
        }
    }
}

fn generator(k: u32, l: u32, ctx: &Ctx) -> Result<TExpr> {
    if (k + l) % 2 == 1 {
        if !ctx.extended {
            bail!("T[{k},{l}] has odd weight; pass --extended to allow it");
        }
        return Ok(TExpr::generator_ext(k as i64, l as i64, Basis::Pointwise));
    }
    Ok(TExpr::generator(k as i64, l as i64, Basis::Pointwise)?)
}

fn symbolic(v: Value, what: &str) -> Result<TExpr> {
    match v {
        Value::Sym(e) => Ok(e),
        Value::Num(f) => Err(anyhow!("{what} needs a double moment expression, got {f}")),
    }
}

pub fn eval(e: &Expr, ctx: &Ctx) -> Result<Value> {
    use Value::{Num, Sym};
    Ok(match e {
        Expr::Lit(c) => Sym(TExpr::constant(c.clone(), Basis::Pointwise)),
        Expr::T(k, l) => Sym(generator(*k, *l, ctx)?),
        Expr::S(k) => Sym(generator(k - 1, 1, ctx)?),
        Expr::Q(k) => Num(PFun::q_shifted(*k)?),
        Expr::H(k) => Num(PFun::hook_moment(*k)?),
        Expr::U(bs) => Num(u_function(bs)?),
        Expr::X(bs) => Num(x_function(bs)?),
        Expr::Neg(a) => match eval(a, ctx)? {
            Sym(x) => Sym(x.scale(&-qbl_core::rat(1))),
            Num(f) => Num(f.scale(&-qbl_core::rat(1))),
        },
        Expr::Bin(op, a, b) => match (eval(a, ctx)?, eval(b, ctx)?) {
            (Sym(x), Sym(y)) => Sym(match op {
                BinOp::Add => x.add(&y)?,
                BinOp::Sub => x.sub(&y)?,
                BinOp::Mul => x.pointwise_mul(&y)?,
                BinOp::Odot => x.induced_mul(&y)?,
            }),
            (x, y) => {
                let (f, g) = (x.to_pfun(), y.to_pfun());
                Num(match op {
                    BinOp::Add => f.add(&g),
                    BinOp::Sub => f.sub(&g),
                    BinOp::Mul => f.pointwise_mul(&g),
                    BinOp::Odot => f.induced_mul(&g),
                })
            }
        },
        Expr::Unary(op, a) => {
            let v = eval(a, ctx)?;
            match (op, v) {
                (UnOp::D, Sym(x)) => Sym(x.sl2_d()?),
                (UnOp::D, Num(f)) => Num(f.derivation_d()),
                (UnOp::Dd, v) => Sym(symbolic(v, "dd")?.sl2_lower()?),
                (UnOp::W, v) => Sym(symbolic(v, "W")?.sl2_w()?),
                (UnOp::Moller, v) => Num(moller(&v.to_pfun(), ctx.psize)),
            }
        }
        Expr::Conn(args) => {
            let vals = args.iter().map(|a| eval(a, ctx)).collect::<Result<Vec<_>>>()?;
            if vals.iter().all(|v| matches!(v, Sym(_))) {
                let xs: Vec<TExpr> = vals.into_iter().map(|v| symbolic(v, "conn").unwrap()).collect();
                Sym(TExpr::connected(&xs)?)
            } else {
                Num(PFun::connected(&vals.iter().map(Value::to_pfun).collect::<Vec<_>>())?)
            }
        }
        Expr::Rc(n, a, b) => {
            let f = symbolic(eval(a, ctx)?, "RC")?;
            let g = symbolic(eval(b, ctx)?, "RC")?;
            Sym(rankin_cohen(&f, &g, *n)?)
        }
    })
}
