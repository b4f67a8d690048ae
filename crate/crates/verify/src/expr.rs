//! Preset-combinator expressions for cosimplicial simplicial sets.
//!
//! ```text
//! expr := name | name "(" arg ("," arg)* ")"
//! arg  := expr | integer
//! ```
//!
//! Leaves: `simplex(p)`, `skeleton(ell, p)`, `epi`, `bpi`, `cosimplicial`,
//! `omega(s, t)`. Combinators: `suspension(x)`, `product(x, y)` (also
//! `tensor`), `orbits(x)`, `cofiber(x, k)`.

use crate::VerifyError;
use cosimp_core::simplicial::{build_preset, cofiber, image_size, kan_suspension, omega, CsRef, Preset, Product};
use cosimp_core::universal::hpi;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Simplex(usize),
    Skeleton(i64, usize),
    EPi,
    BPi,
    Cosimplicial,
    Omega(usize, usize),
    Suspension(Box<Expr>),
    Product(Box<Expr>, Box<Expr>),
    Orbits(Box<Expr>),
    /// Collapses every simplex with at most `k` distinct vertices.
    Cofiber(Box<Expr>, usize),
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr, VerifyError> {
        let mut p = Parser { src, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }

    /// Builds the object; `p_max`, `q_max` bound the closure check of a cofiber.
    pub fn build(&self, p_max: usize, q_max: usize) -> Result<CsRef, VerifyError> {
        Ok(match self {
            Expr::Simplex(p) => build_preset(Preset::Simplex(*p)),
            Expr::Skeleton(ell, p) => build_preset(Preset::Skeleton { ell: *ell, p: *p }),
            Expr::EPi => build_preset(Preset::EPi),
            Expr::BPi => build_preset(Preset::BPi),
            Expr::Cosimplicial => build_preset(Preset::Cosimplicial),
            Expr::Omega(s, t) => omega(*s, *t)?,
            Expr::Suspension(x) => kan_suspension(x.build(p_max, q_max)?),
            Expr::Product(a, b) => Arc::new(Product::new(a.build(p_max, q_max)?, b.build(p_max, q_max)?)),
            Expr::Orbits(x) => hpi(x.build(p_max, q_max)?),
            Expr::Cofiber(x, k) => {
                if !matches!(**x, Expr::Simplex(_) | Expr::Skeleton(..) | Expr::Cosimplicial) {
                    return Err(VerifyError::Expression(format!(
                        "cofiber needs a simplex, skeleton or cosimplicial leaf, got {x}"
                    )));
                }
                let k = *k;
                cofiber(x.build(p_max, q_max)?, Arc::new(move |_, _, y: &[u16]| image_size(y) <= k), p_max, q_max)?
            }
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Simplex(p) => write!(f, "simplex({p})"),
            Expr::Skeleton(l, p) => write!(f, "skeleton({l},{p})"),
            Expr::EPi => write!(f, "epi"),
            Expr::BPi => write!(f, "bpi"),
            Expr::Cosimplicial => write!(f, "cosimplicial"),
            Expr::Omega(s, t) => write!(f, "omega({s},{t})"),
            Expr::Suspension(x) => write!(f, "suspension({x})"),
            Expr::Product(a, b) => write!(f, "product({a},{b})"),
            Expr::Orbits(x) => write!(f, "orbits({x})"),
            Expr::Cofiber(x, k) => write!(f, "cofiber({x},{k})"),
        }
    }
}

enum Arg {
    Expr(Expr),
    Int(i64),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> VerifyError {
        VerifyError::Expression(format!("{what} at offset {} in `{}`", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &str {
        self.skip_ws();
        let start = self.pos;
        let len: usize = self.src[start..].chars().take_while(|&c| f(c)).map(char::len_utf8).sum();
        self.pos += len;
        &self.src[start..start + len]
    }

    fn arg(&mut self) -> Result<Arg, VerifyError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        if rest.starts_with(|c: char| c == '-' || c.is_ascii_digit()) {
            let neg = self.eat('-');
            let digits = self.take_while(|c| c.is_ascii_digit());
            let v: i64 = digits.parse().map_err(|_| self.error("expected an integer"))?;
            Ok(Arg::Int(if neg { -v } else { v }))
        } else {
            Ok(Arg::Expr(self.expr()?))
        }
    }

    fn expr(&mut self) -> Result<Expr, VerifyError> {
        let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_').to_ascii_lowercase();
        if name.is_empty() {
            return Err(self.error("expected a name"));
        }
        let mut args = Vec::new();
        if self.eat('(') {
            loop {
                args.push(self.arg()?);
                if self.eat(')') {
                    break;
                }
                if !self.eat(',') {
                    return Err(self.error("expected `,` or `)`"));
                }
            }
        }
        let bad = || VerifyError::Expression(format!("wrong arguments for `{name}`"));
        let nat = |a: &Arg| match a {
            Arg::Int(v) if *v >= 0 => Ok(*v as usize),
            _ => Err(bad()),
        };
        let sub = |a: Arg| match a {
            Arg::Expr(e) => Ok(Box::new(e)),
            Arg::Int(_) => Err(bad()),
        };
        let mut it = args.into_iter();
        let e = match (name.as_str(), it.len()) {
            ("simplex", 1) => Expr::Simplex(nat(&it.next().unwrap())?),
            ("skeleton", 2) => {
                let Arg::Int(ell) = it.next().unwrap() else { return Err(bad()) };
                Expr::Skeleton(ell, nat(&it.next().unwrap())?)
            }
            ("epi", 0) => Expr::EPi,
            ("bpi", 0) => Expr::BPi,
            ("cosimplicial", 0) => Expr::Cosimplicial,
            ("omega", 2) => {
                let s = nat(&it.next().unwrap())?;
                Expr::Omega(s, nat(&it.next().unwrap())?)
            }
            ("suspension", 1) => Expr::Suspension(sub(it.next().unwrap())?),
            ("product" | "tensor", 2) => {
                let a = sub(it.next().unwrap())?;
                Expr::Product(a, sub(it.next().unwrap())?)
            }
            ("orbits", 1) => Expr::Orbits(sub(it.next().unwrap())?),
            ("cofiber", 2) => {
                let x = sub(it.next().unwrap())?;
                Expr::Cofiber(x, nat(&it.next().unwrap())?)
            }
            _ => return Err(VerifyError::Expression(format!("unknown combinator `{name}` with {} arguments", it.len()))),
        };
        Ok(e)
    }
}
