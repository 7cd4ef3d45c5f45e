use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Built-in functions of the curve language.
///
/// `sign` and `ifle` never need to be typed by hand; they appear in
/// derivatives of `abs`, `min` and `max`. Both are accepted by the parser so
/// that printed derivatives re-parse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Abs,
    Sqrt,
    Exp,
    Log,
    Min,
    Max,
    /// `sign(u)`: +1 for `u >= 0`, -1 otherwise.
    Sign,
    /// `ifle(a, b, x, y)`: `x` when `a <= b`, else `y`.
    Ifle,
}

impl Func {
    pub const ALL: [Func; 10] = [
        Func::Sin,
        Func::Cos,
        Func::Abs,
        Func::Sqrt,
        Func::Exp,
        Func::Log,
        Func::Min,
        Func::Max,
        Func::Sign,
        Func::Ifle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Abs => "abs",
            Func::Sqrt => "sqrt",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Min => "min",
            Func::Max => "max",
            Func::Sign => "sign",
            Func::Ifle => "ifle",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Func::Min | Func::Max => 2,
            Func::Ifle => 4,
            _ => 1,
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.iter().copied().find(|f| f.name() == name)
    }
}

/// Expression tree over the single variable `t`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    /// The curve parameter `t`.
    Var,
    Pi,
    Param(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
}

impl Expr {
    pub fn num(v: f64) -> Expr {
        Expr::Num(v)
    }

    pub fn param(name: &str) -> Expr {
        Expr::Param(String::from(name))
    }

    pub fn call1(f: Func, a: Expr) -> Expr {
        Expr::Call(f, alloc::vec![a])
    }

    pub fn call2(f: Func, a: Expr, b: Expr) -> Expr {
        Expr::Call(f, alloc::vec![a, b])
    }

    /// Names of all parameters referenced by the tree.
    pub fn params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_params(&mut out);
        out
    }

    fn collect_params(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Param(name) => {
                out.insert(name.clone());
            }
            Expr::Num(_) | Expr::Var | Expr::Pi => {}
            Expr::Neg(a) => a.collect_params(out),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Pow(a, b) => {
                a.collect_params(out);
                b.collect_params(out);
            }
            Expr::Call(_, args) => args.iter().for_each(|a| a.collect_params(out)),
        }
    }

    /// True when the tree mentions `t`.
    pub fn depends_on_t(&self) -> bool {
        match self {
            Expr::Var => true,
            Expr::Num(_) | Expr::Pi | Expr::Param(_) => false,
            Expr::Neg(a) => a.depends_on_t(),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Pow(a, b) => a.depends_on_t() || b.depends_on_t(),
            Expr::Call(_, args) => args.iter().any(Expr::depends_on_t),
        }
    }

    /// True when the tree contains `abs`, `sign`, `min`, `max` or `ifle`.
    pub fn has_branches(&self) -> bool {
        match self {
            Expr::Num(_) | Expr::Var | Expr::Pi | Expr::Param(_) => false,
            Expr::Neg(a) => a.has_branches(),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Pow(a, b) => a.has_branches() || b.has_branches(),
            Expr::Call(f, args) => {
                matches!(f, Func::Abs | Func::Sign | Func::Min | Func::Max | Func::Ifle)
                    || args.iter().any(Expr::has_branches)
            }
        }
    }

    /// Replace every parameter found in `lookup` by its numeric value.
    pub fn bind(&self, lookup: &dyn Fn(&str) -> Option<f64>) -> Expr {
        match self {
            Expr::Param(name) => match lookup(name) {
                Some(v) => Expr::Num(v),
                None => self.clone(),
            },
            Expr::Num(_) | Expr::Var | Expr::Pi => self.clone(),
            Expr::Neg(a) => Expr::Neg(Box::new(a.bind(lookup))),
            Expr::Add(a, b) => Expr::Add(Box::new(a.bind(lookup)), Box::new(b.bind(lookup))),
            Expr::Sub(a, b) => Expr::Sub(Box::new(a.bind(lookup)), Box::new(b.bind(lookup))),
            Expr::Mul(a, b) => Expr::Mul(Box::new(a.bind(lookup)), Box::new(b.bind(lookup))),
            Expr::Div(a, b) => Expr::Div(Box::new(a.bind(lookup)), Box::new(b.bind(lookup))),
            Expr::Pow(a, b) => Expr::Pow(Box::new(a.bind(lookup)), Box::new(b.bind(lookup))),
            Expr::Call(f, args) => Expr::Call(*f, args.iter().map(|a| a.bind(lookup)).collect()),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Num(v) if v.is_sign_negative() => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let wrap = self.precedence() < min_prec;
        if wrap {
            f.write_str("(")?;
        }
        match self {
            Expr::Num(v) => write!(f, "{}", v)?,
            Expr::Var => f.write_str("t")?,
            Expr::Pi => f.write_str("pi")?,
            Expr::Param(name) => f.write_str(name)?,
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.fmt_at(f, 3)?;
            }
            Expr::Add(a, b) => {
                a.fmt_at(f, 1)?;
                f.write_str(" + ")?;
                b.fmt_at(f, 2)?;
            }
            Expr::Sub(a, b) => {
                a.fmt_at(f, 1)?;
                f.write_str(" - ")?;
                b.fmt_at(f, 2)?;
            }
            Expr::Mul(a, b) => {
                a.fmt_at(f, 2)?;
                f.write_str("*")?;
                b.fmt_at(f, 3)?;
            }
            Expr::Div(a, b) => {
                a.fmt_at(f, 2)?;
                f.write_str("/")?;
                b.fmt_at(f, 3)?;
            }
            Expr::Pow(a, b) => {
                a.fmt_at(f, 5)?;
                f.write_str("^")?;
                b.fmt_at(f, 3)?;
            }
            Expr::Call(func, args) => {
                f.write_str(func.name())?;
                f.write_str("(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    a.fmt_at(f, 0)?;
                }
                f.write_str(")")?;
            }
        }
        if wrap {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}
