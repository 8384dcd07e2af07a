//! A small scalar expression language.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?        exponent must be constant
//! primary := number | ident | func '(' expr ')' | '(' expr ')'
//! func    := sin | cos | exp | log | sqrt
//! ```
//!
//! `^` binds tighter than unary minus and is right-associative; its exponent
//! is folded to a literal at parse time. Evaluation is generic over
//! [`Numeric`], so the same tree yields values, [`Jet1`] derivatives or
//! [`JetN`](crate::jets::JetN) partials.

mod parser;

use std::fmt;

use crate::error::{Error, Result};
use crate::jets::{self, Jet1, JetN};
use crate::numeric::Numeric;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }

    fn apply<T: Numeric>(self, x: &T) -> Result<T> {
        match self {
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Exp => x.exp(),
            Func::Log => x.ln(),
            Func::Sqrt => x.sqrt(),
        }
    }
}

/// Expression tree node.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Const(f64),
    Var(usize),
    Neg(Box<Node>),
    Call(Func, Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    /// Power with a constant exponent.
    Pow(Box<Node>, f64),
}

impl Node {
    /// Value of a variable-free subtree; `None` if it references a variable.
    fn fold(&self) -> Option<Result<f64>> {
        let bin = |a: &Node, b: &Node, f: fn(&f64, &f64) -> Result<f64>| -> Option<Result<f64>> {
            let x = a.fold()?;
            let y = b.fold()?;
            Some(x.and_then(|x| y.and_then(|y| f(&x, &y))))
        };
        match self {
            Node::Const(c) => Some(Ok(*c)),
            Node::Var(_) => None,
            Node::Neg(a) => a.fold().map(|r| r.map(|v| -v)),
            Node::Call(f, a) => a.fold().map(|r| r.and_then(|v| f.apply(&v))),
            Node::Add(a, b) => bin(a, b, Numeric::add),
            Node::Sub(a, b) => bin(a, b, Numeric::sub),
            Node::Mul(a, b) => bin(a, b, Numeric::mul),
            Node::Div(a, b) => bin(a, b, Numeric::div),
            Node::Pow(a, p) => a.fold().map(|r| r.and_then(|v| Numeric::powf(&v, *p))),
        }
    }

    fn max_var(&self) -> Option<usize> {
        match self {
            Node::Const(_) => None,
            Node::Var(i) => Some(*i),
            Node::Neg(a) | Node::Call(_, a) | Node::Pow(a, _) => a.max_var(),
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                a.max_var().max(b.max_var())
            }
        }
    }

    fn eval<T: Numeric>(&self, vars: &[T], names: &[String]) -> Result<T> {
        let locate = |e: Error| match e {
            Error::Domain { func, value } => Error::DomainIn {
                func,
                value,
                subexpr: Printer { node: self, names }.to_string(),
            },
            other => other,
        };
        Ok(match self {
            Node::Const(c) => vars[0].constant_like(*c),
            Node::Var(i) => vars[*i].clone(),
            Node::Neg(a) => a.eval(vars, names)?.neg(),
            Node::Call(f, a) => f.apply(&a.eval(vars, names)?).map_err(locate)?,
            Node::Add(a, b) => a.eval(vars, names)?.add(&b.eval(vars, names)?)?,
            Node::Sub(a, b) => a.eval(vars, names)?.sub(&b.eval(vars, names)?)?,
            Node::Mul(a, b) => a.eval(vars, names)?.mul(&b.eval(vars, names)?)?,
            Node::Div(a, b) => a
                .eval(vars, names)?
                .div(&b.eval(vars, names)?)
                .map_err(locate)?,
            Node::Pow(a, p) => a.eval(vars, names)?.powf(*p).map_err(locate)?,
        })
    }
}

/// A parsed expression together with its variable names.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    root: Node,
    names: Vec<String>,
}

impl Expr {
    /// Parses `src` over the given variable names (arity = `names.len()`).
    pub fn parse<S: AsRef<str>>(src: &str, names: &[S]) -> Result<Expr> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.is_empty() {
            return Err(Error::arg("an expression needs at least one variable"));
        }
        for n in &names {
            if Func::from_name(n).is_some() {
                return Err(Error::arg(format!("variable name {n} is reserved")));
            }
        }
        let root = parser::Parser::parse(src, &names)?;
        Ok(Expr { root, names })
    }

    /// Function of one variable named `x`.
    pub fn univariate(src: &str) -> Result<Expr> {
        Expr::parse(src, &["x"])
    }

    /// Function of `n` variables named `y1 … yn`.
    pub fn outer(src: &str, n: usize) -> Result<Expr> {
        let names: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
        Expr::parse(src, &names)
    }

    /// Builds an expression from a tree; variable indices must be in range.
    pub fn from_node(root: Node, names: Vec<String>) -> Result<Expr> {
        if names.is_empty() {
            return Err(Error::arg("an expression needs at least one variable"));
        }
        if let Some(i) = root.max_var() {
            if i >= names.len() {
                return Err(Error::arg(format!("variable index {i} out of range")));
            }
        }
        Ok(Expr { root, names })
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    /// Evaluates over any [`Numeric`] type; `vars.len()` must equal the arity.
    pub fn eval<T: Numeric>(&self, vars: &[T]) -> Result<T> {
        if vars.len() != self.arity() {
            return Err(Error::arg(format!(
                "expression takes {} arguments, got {}",
                self.arity(),
                vars.len()
            )));
        }
        self.root.eval(vars, &self.names)
    }

    pub fn eval_scalar(&self, point: &[f64]) -> Result<f64> {
        self.eval(point)
    }

    /// Value of a univariate expression at `x`.
    pub fn eval_at(&self, x: f64) -> Result<f64> {
        self.eval(&[x])
    }

    /// Jet of a univariate expression at `x0`.
    pub fn eval_jet1(&self, x0: f64, order: usize) -> Result<Jet1> {
        self.eval(&[Jet1::lift(x0, order)])
    }

    pub fn eval_jetn(&self, point: &[f64], order: usize) -> Result<JetN> {
        jets::jetn_partials(self, point, order)
    }

    /// `r`-th derivative of a univariate expression at `x`.
    pub fn derivative_at(&self, x: f64, r: usize) -> Result<f64> {
        Ok(self.eval_jet1(x, r)?.derivative(r))
    }
}

struct Printer<'a> {
    node: &'a Node,
    names: &'a [String],
}

impl fmt::Display for Printer<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |node| Printer {
            node,
            names: self.names,
        };
        match self.node {
            Node::Const(c) if *c < 0.0 => write!(f, "(-{})", -c),
            Node::Const(c) => write!(f, "{c}"),
            Node::Var(i) => write!(f, "{}", self.names[*i]),
            Node::Neg(a) => write!(f, "(-{})", sub(a)),
            Node::Call(func, a) => write!(f, "{}({})", func.name(), sub(a)),
            Node::Add(a, b) => write!(f, "({} + {})", sub(a), sub(b)),
            Node::Sub(a, b) => write!(f, "({} - {})", sub(a), sub(b)),
            Node::Mul(a, b) => write!(f, "({} * {})", sub(a), sub(b)),
            Node::Div(a, b) => write!(f, "({} / {})", sub(a), sub(b)),
            Node::Pow(a, p) if matches!(**a, Node::Pow(..)) => write!(f, "({})^({})", sub(a), p),
            Node::Pow(a, p) => write!(f, "{}^({})", sub(a), p),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Printer {
            node: &self.root,
            names: &self.names,
        }
        .fmt(f)
    }
}
