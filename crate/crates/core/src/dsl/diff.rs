use alloc::boxed::Box;
use alloc::vec;
use core::f64::consts::PI;
#[allow(unused_imports)] // unused when num-traits is built with `std`
use num_traits::Float;


use super::ast::{Expr, Func};

fn num(e: &Expr) -> Option<f64> {
    match e {
        Expr::Num(v) => Some(*v),
        _ => None,
    }
}

fn finite(v: f64) -> Option<Expr> {
    v.is_finite().then_some(Expr::Num(v))
}

fn neg(a: Expr) -> Expr {
    match a {
        Expr::Num(v) => Expr::Num(-v),
        Expr::Neg(inner) => *inner,
        Expr::Mul(c, rest) if num(&c).is_some() => mul(Expr::Num(-num(&c).unwrap()), *rest),
        a => Expr::Neg(Box::new(a)),
    }
}

fn add(a: Expr, b: Expr) -> Expr {
    match (num(&a), num(&b)) {
        (Some(x), Some(y)) => finite(x + y).unwrap_or_else(|| Expr::Add(Box::new(a), Box::new(b))),
        (Some(x), _) if x == 0.0 => b,
        (_, Some(y)) if y == 0.0 => a,
        _ => match b {
            Expr::Neg(inner) => Expr::Sub(Box::new(a), inner),
            b => Expr::Add(Box::new(a), Box::new(b)),
        },
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    match (num(&a), num(&b)) {
        (Some(x), Some(y)) => finite(x - y).unwrap_or_else(|| Expr::Sub(Box::new(a), Box::new(b))),
        (Some(x), _) if x == 0.0 => neg(b),
        (_, Some(y)) if y == 0.0 => a,
        _ => match b {
            Expr::Neg(inner) => Expr::Add(Box::new(a), inner),
            b => Expr::Sub(Box::new(a), Box::new(b)),
        },
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    match (num(&a), num(&b)) {
        (Some(x), Some(y)) => finite(x * y).unwrap_or_else(|| Expr::Mul(Box::new(a), Box::new(b))),
        (Some(x), _) | (_, Some(x)) if x == 0.0 => Expr::Num(0.0),
        (Some(x), _) if x == 1.0 => b,
        (_, Some(y)) if y == 1.0 => a,
        (Some(x), _) if x == -1.0 => neg(b),
        (_, Some(y)) if y == -1.0 => neg(a),
        // constants to the left, merged with an inner leading constant
        (None, Some(_)) => mul(b, a),
        (Some(x), None) => match b {
            Expr::Mul(c, rest) if num(&c).is_some() => mul(Expr::Num(x * num(&c).unwrap()), *rest),
            Expr::Neg(inner) => mul(Expr::Num(-x), *inner),
            b => Expr::Mul(Box::new(a), Box::new(b)),
        },
        (None, None) => match (a, b) {
            (Expr::Neg(x), Expr::Neg(y)) => mul(*x, *y),
            (Expr::Neg(x), y) | (y, Expr::Neg(x)) => neg(mul(*x, y)),
            (a, b) => Expr::Mul(Box::new(a), Box::new(b)),
        },
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    match (num(&a), num(&b)) {
        (Some(x), Some(y)) if y != 0.0 => finite(x / y).unwrap_or_else(|| Expr::Div(Box::new(a), Box::new(b))),
        (Some(x), _) if x == 0.0 => Expr::Num(0.0),
        (_, Some(y)) if y == 1.0 => a,
        _ => Expr::Div(Box::new(a), Box::new(b)),
    }
}

fn pow(a: Expr, b: Expr) -> Expr {
    match (num(&a), num(&b)) {
        (Some(x), Some(y)) => {
            let v = if y.fract() == 0.0 && y.abs() <= i32::MAX as f64 { x.powi(y as i32) } else { x.powf(y) };
            finite(v).unwrap_or_else(|| Expr::Pow(Box::new(a), Box::new(b)))
        }
        (_, Some(y)) if y == 1.0 => a,
        (_, Some(y)) if y == 0.0 => Expr::Num(1.0),
        _ => Expr::Pow(Box::new(a), Box::new(b)),
    }
}

fn call(f: Func, args: alloc::vec::Vec<Expr>) -> Expr {
    if args.iter().all(|a| num(a).is_some()) && !matches!(f, Func::Ifle) {
        let e = Expr::Call(f, args);
        if let Ok(v) = e.eval(0.0, &super::Params::new()) {
            return Expr::Num(v);
        }
        return e;
    }
    if f == Func::Ifle {
        if let (Some(a), Some(b)) = (num(&args[0]), num(&args[1])) {
            let mut it = args.into_iter().skip(2);
            let (x, y) = (it.next().unwrap(), it.next().unwrap());
            return if a <= b { x } else { y };
        }
        if args[2] == args[3] {
            return args.into_iter().nth(2).unwrap();
        }
    }
    Expr::Call(f, args)
}

impl Expr {
    /// Constant folding: evaluates numeric subtrees and removes neutral
    /// elements. No other algebraic simplification is attempted.
    pub fn fold(&self) -> Expr {
        match self {
            Expr::Num(_) | Expr::Var | Expr::Param(_) => self.clone(),
            Expr::Pi => Expr::Num(PI),
            Expr::Neg(a) => neg(a.fold()),
            Expr::Add(a, b) => add(a.fold(), b.fold()),
            Expr::Sub(a, b) => sub(a.fold(), b.fold()),
            Expr::Mul(a, b) => mul(a.fold(), b.fold()),
            Expr::Div(a, b) => div(a.fold(), b.fold()),
            Expr::Pow(a, b) => pow(a.fold(), b.fold()),
            Expr::Call(f, args) => call(*f, args.iter().map(Expr::fold).collect()),
        }
    }

    /// Symbolic derivative with respect to `t`, constant-folded.
    ///
    /// `abs` differentiates through `sign` (with `sign(0) = +1`); `min` and
    /// `max` differentiate to whichever branch is selected at evaluation
    /// time, expressed with `ifle`. Integer constant powers use the power
    /// rule; every other power goes through `exp(v*log(u))`, so a negative
    /// base is a domain error in the derivative.
    pub fn diff(&self) -> Expr {
        self.fold().diff_folded().fold()
    }

    fn diff_folded(&self) -> Expr {
        match self {
            Expr::Num(_) | Expr::Pi | Expr::Param(_) => Expr::Num(0.0),
            Expr::Var => Expr::Num(1.0),
            Expr::Neg(a) => neg(a.diff_folded()),
            Expr::Add(a, b) => add(a.diff_folded(), b.diff_folded()),
            Expr::Sub(a, b) => sub(a.diff_folded(), b.diff_folded()),
            Expr::Mul(a, b) => add(
                mul(a.diff_folded(), (**b).clone()),
                mul((**a).clone(), b.diff_folded()),
            ),
            Expr::Div(a, b) => {
                if !b.depends_on_t() {
                    return div(a.diff_folded(), (**b).clone());
                }
                div(
                    sub(
                        mul(a.diff_folded(), (**b).clone()),
                        mul((**a).clone(), b.diff_folded()),
                    ),
                    pow((**b).clone(), Expr::Num(2.0)),
                )
            }
            Expr::Pow(u, v) => {
                let du = u.diff_folded();
                match num(v) {
                    Some(n) if n.fract() == 0.0 => mul(
                        mul(Expr::Num(n), pow((**u).clone(), Expr::Num(n - 1.0))),
                        du,
                    ),
                    _ => {
                        let e = Expr::call1(
                            Func::Exp,
                            mul((**v).clone(), Expr::call1(Func::Log, (**u).clone())),
                        );
                        let dv = v.diff_folded();
                        let inner = add(
                            mul(dv, Expr::call1(Func::Log, (**u).clone())),
                            div(mul((**v).clone(), du), (**u).clone()),
                        );
                        mul(e, inner)
                    }
                }
            }
            Expr::Call(f, args) => {
                let u = &args[0];
                let du = || u.diff_folded();
                match f {
                    Func::Sin => mul(Expr::call1(Func::Cos, u.clone()), du()),
                    Func::Cos => neg(mul(Expr::call1(Func::Sin, u.clone()), du())),
                    Func::Exp => mul(Expr::call1(Func::Exp, u.clone()), du()),
                    Func::Log => div(du(), u.clone()),
                    Func::Sqrt => div(du(), mul(Expr::Num(2.0), Expr::call1(Func::Sqrt, u.clone()))),
                    Func::Abs => mul(Expr::call1(Func::Sign, u.clone()), du()),
                    Func::Sign => Expr::Num(0.0),
                    Func::Min => call(
                        Func::Ifle,
                        vec![args[0].clone(), args[1].clone(), args[0].diff_folded(), args[1].diff_folded()],
                    ),
                    Func::Max => call(
                        Func::Ifle,
                        vec![args[1].clone(), args[0].clone(), args[0].diff_folded(), args[1].diff_folded()],
                    ),
                    Func::Ifle => call(
                        Func::Ifle,
                        vec![args[0].clone(), args[1].clone(), args[2].diff_folded(), args[3].diff_folded()],
                    ),
                }
            }
        }
    }
}
