use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;


use super::ast::{Expr, Func};
use crate::error::EvalError;
#[allow(unused_imports)] // unused when num-traits is built with `std`
use num_traits::Float;

/// Parameter bindings for evaluation.
pub type Params = BTreeMap<String, f64>;

struct Evaluator<'a> {
    t: f64,
    params: &'a Params,
    trace: Option<&'a mut Vec<bool>>,
    fault: Option<&'static str>,
    unbound: Option<String>,
}

impl Evaluator<'_> {
    fn branch(&mut self, taken: bool) {
        if let Some(trace) = self.trace.as_mut() {
            trace.push(taken);
        }
    }

    fn note(&mut self, op: &'static str, inputs_finite: bool, out: f64) -> f64 {
        if self.fault.is_none() && inputs_finite && !out.is_finite() {
            self.fault = Some(op);
        }
        out
    }

    fn eval(&mut self, e: &Expr) -> f64 {
        match e {
            Expr::Num(v) => *v,
            Expr::Var => self.t,
            Expr::Pi => PI,
            Expr::Param(name) => match self.params.get(name) {
                Some(v) => *v,
                None => {
                    if self.unbound.is_none() {
                        self.unbound = Some(name.clone());
                    }
                    f64::NAN
                }
            },
            Expr::Neg(a) => -self.eval(a),
            Expr::Add(a, b) => self.eval(a) + self.eval(b),
            Expr::Sub(a, b) => self.eval(a) - self.eval(b),
            Expr::Mul(a, b) => self.eval(a) * self.eval(b),
            Expr::Div(a, b) => {
                let (x, y) = (self.eval(a), self.eval(b));
                let ok = x.is_finite() && y.is_finite();
                let out = if y == 0.0 { f64::INFINITY } else { x / y };
                self.note("division by zero", ok, out)
            }
            Expr::Pow(a, b) => {
                let (x, y) = (self.eval(a), self.eval(b));
                let ok = x.is_finite() && y.is_finite();
                let out = if y.fract() == 0.0 && y.abs() <= i32::MAX as f64 {
                    x.powi(y as i32)
                } else {
                    x.powf(y)
                };
                self.note("power", ok, out)
            }
            Expr::Call(f, args) => {
                let vals: Vec<f64> = args.iter().map(|a| self.eval(a)).collect();
                let ok = vals.iter().all(|v| v.is_finite());
                let out = match f {
                    Func::Sin => vals[0].sin(),
                    Func::Cos => vals[0].cos(),
                    Func::Exp => vals[0].exp(),
                    Func::Sqrt => {
                        if vals[0] < 0.0 {
                            f64::NAN
                        } else {
                            vals[0].sqrt()
                        }
                    }
                    Func::Log => {
                        if vals[0] <= 0.0 {
                            f64::NAN
                        } else {
                            vals[0].ln()
                        }
                    }
                    Func::Abs => {
                        self.branch(vals[0] >= 0.0);
                        vals[0].abs()
                    }
                    Func::Sign => {
                        let pos = vals[0] >= 0.0;
                        self.branch(pos);
                        if pos {
                            1.0
                        } else {
                            -1.0
                        }
                    }
                    Func::Min => {
                        let first = vals[0] <= vals[1];
                        self.branch(first);
                        if first {
                            vals[0]
                        } else {
                            vals[1]
                        }
                    }
                    Func::Max => {
                        let first = vals[1] <= vals[0];
                        self.branch(first);
                        if first {
                            vals[0]
                        } else {
                            vals[1]
                        }
                    }
                    Func::Ifle => {
                        let first = vals[0] <= vals[1];
                        self.branch(first);
                        if first {
                            vals[2]
                        } else {
                            vals[3]
                        }
                    }
                };
                match f {
                    // Non-finite operands of an untaken branch must not fault.
                    Func::Min | Func::Max | Func::Ifle => out,
                    _ => self.note(f.name(), ok, out),
                }
            }
        }
    }
}

fn finish(ev: Evaluator<'_>, t: f64, v: f64) -> Result<f64, EvalError> {
    if let Some(name) = ev.unbound {
        return Err(EvalError::UnboundParameter(name));
    }
    if v.is_finite() {
        Ok(v)
    } else {
        Err(EvalError::Domain { t, op: ev.fault.unwrap_or("non-finite result") })
    }
}

impl Expr {
    /// Evaluate at `t` in IEEE double arithmetic.
    ///
    /// Intermediate infinities are allowed (so `min(1/abs(sin(t)), 1)` is 1
    /// at `t = 0`); a non-finite final value is a [`EvalError::Domain`].
    pub fn eval(&self, t: f64, params: &Params) -> Result<f64, EvalError> {
        let mut ev = Evaluator { t, params, trace: None, fault: None, unbound: None };
        let v = ev.eval(self);
        finish(ev, t, v)
    }

    /// Like [`Expr::eval`], also appending every branch decision taken by
    /// `abs`, `sign`, `min`, `max` and `ifle` to `trace`, in tree order.
    pub fn eval_traced(&self, t: f64, params: &Params, trace: &mut Vec<bool>) -> Result<f64, EvalError> {
        let mut ev = Evaluator { t, params, trace: Some(trace), fault: None, unbound: None };
        let v = ev.eval(self);
        finish(ev, t, v)
    }
}
