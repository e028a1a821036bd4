use std::fmt;

use serde::{Deserialize, Serialize};

use crate::distributions::{sample, DistSpec, RandomStream};
use crate::error::ensure_domain;
use crate::Result;

/// A product-and-power expression over independent draws.
///
/// Every leaf is an independent variable, even when two leaves carry the
/// same spec: `Product([S, Reciprocal(S)])` is a ratio of two independent
/// copies of `S`, not the constant 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistExpr {
    Leaf(DistSpec),
    Product(Vec<DistExpr>),
    /// `x^p` for a real `p`.
    Power(Box<DistExpr>, f64),
    Reciprocal(Box<DistExpr>),
    /// `c · x`.
    Scale(f64, Box<DistExpr>),
    Abs(Box<DistExpr>),
    /// `a + b · x`.
    Affine { a: f64, b: f64, x: Box<DistExpr> },
}

/// How leaves of one expression are mapped to random streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LeafStreams {
    /// Leaf `k` draws from `side.derive(k)`.
    #[default]
    Independent,
    /// Every leaf draws from the side stream itself. Leaves with the same
    /// spec then coincide; only useful to show that independence matters.
    Shared,
}

impl DistExpr {
    pub fn leaf(spec: DistSpec) -> Self {
        DistExpr::Leaf(spec)
    }

    pub fn pow(self, p: f64) -> Self {
        if p == 1.0 {
            return self;
        }
        DistExpr::Power(Box::new(self), p)
    }

    pub fn sqrt(self) -> Self {
        self.pow(0.5)
    }

    pub fn recip(self) -> Self {
        DistExpr::Reciprocal(Box::new(self))
    }

    pub fn scale(self, c: f64) -> Self {
        DistExpr::Scale(c, Box::new(self))
    }

    pub fn abs(self) -> Self {
        DistExpr::Abs(Box::new(self))
    }

    pub fn affine(self, a: f64, b: f64) -> Self {
        DistExpr::Affine { a, b, x: Box::new(self) }
    }

    pub fn times(self, other: DistExpr) -> Self {
        match self {
            DistExpr::Product(mut v) => {
                v.push(other);
                DistExpr::Product(v)
            }
            x => DistExpr::Product(vec![x, other]),
        }
    }

    /// True when the expression is almost surely `>= 0`.
    pub fn is_nonnegative(&self) -> bool {
        match self {
            DistExpr::Leaf(s) => s.is_nonnegative(),
            DistExpr::Product(v) => v.iter().all(DistExpr::is_nonnegative),
            DistExpr::Power(..) | DistExpr::Abs(_) => true,
            DistExpr::Reciprocal(x) => x.is_nonnegative(),
            DistExpr::Scale(c, x) => *c >= 0.0 && x.is_nonnegative(),
            DistExpr::Affine { a, b, x } => *a >= 0.0 && *b >= 0.0 && x.is_nonnegative(),
        }
    }

    /// Checks every leaf and that non-integer powers only see nonnegative bases.
    pub fn validate(&self) -> Result<()> {
        match self {
            DistExpr::Leaf(s) => s.validate(),
            DistExpr::Product(v) => {
                ensure_domain!(!v.is_empty(), "empty product");
                v.iter().try_for_each(DistExpr::validate)
            }
            DistExpr::Power(x, p) => {
                ensure_domain!(p.is_finite(), "exponent must be finite, got {p}");
                ensure_domain!(
                    p.fract() == 0.0 || x.is_nonnegative(),
                    "power {p} applied to a signed expression {x}"
                );
                x.validate()
            }
            DistExpr::Scale(c, x) => {
                ensure_domain!(c.is_finite(), "scale must be finite, got {c}");
                x.validate()
            }
            DistExpr::Affine { a, b, x } => {
                ensure_domain!(a.is_finite() && b.is_finite(), "affine coefficients must be finite");
                x.validate()
            }
            DistExpr::Reciprocal(x) | DistExpr::Abs(x) => x.validate(),
        }
    }

    /// Leaves in depth-first order.
    pub fn leaves(&self) -> Vec<DistSpec> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<DistSpec>) {
        match self {
            DistExpr::Leaf(s) => out.push(*s),
            DistExpr::Product(v) => v.iter().for_each(|x| x.collect_leaves(out)),
            DistExpr::Power(x, _)
            | DistExpr::Reciprocal(x)
            | DistExpr::Scale(_, x)
            | DistExpr::Abs(x)
            | DistExpr::Affine { x, .. } => x.collect_leaves(out),
        }
    }

    /// The spec when the expression is a single draw.
    pub fn as_leaf(&self) -> Option<&DistSpec> {
        match self {
            DistExpr::Leaf(s) => Some(s),
            _ => None,
        }
    }

    /// `n` draws of the expression.
    pub fn sample(&self, n: usize, stream: &RandomStream, policy: LeafStreams) -> Result<Vec<f64>> {
        self.validate()?;
        let mut draws = Vec::new();
        for (k, spec) in self.leaves().iter().enumerate() {
            let s = match policy {
                LeafStreams::Independent => stream.derive(k as u64),
                LeafStreams::Shared => *stream,
            };
            draws.push(sample(spec, n, &s)?.values);
        }
        let mut next = draws.into_iter();
        Ok(self.combine(&mut next))
    }

    fn combine(&self, leaves: &mut impl Iterator<Item = Vec<f64>>) -> Vec<f64> {
        match self {
            DistExpr::Leaf(_) => leaves.next().expect("one batch per leaf"),
            DistExpr::Product(v) => {
                let mut acc = v[0].combine(leaves);
                for x in &v[1..] {
                    let y = x.combine(leaves);
                    acc.iter_mut().zip(y).for_each(|(a, b)| *a *= b);
                }
                acc
            }
            DistExpr::Power(x, p) => map(x.combine(leaves), |v| v.powf(*p)),
            DistExpr::Reciprocal(x) => map(x.combine(leaves), |v| 1.0 / v),
            DistExpr::Scale(c, x) => map(x.combine(leaves), |v| c * v),
            DistExpr::Abs(x) => map(x.combine(leaves), f64::abs),
            DistExpr::Affine { a, b, x } => map(x.combine(leaves), |v| a + b * v),
        }
    }
}

fn map(mut v: Vec<f64>, f: impl Fn(f64) -> f64) -> Vec<f64> {
    v.iter_mut().for_each(|x| *x = f(*x));
    v
}

impl fmt::Display for DistExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistExpr::Leaf(s) => write!(f, "{s}"),
            DistExpr::Product(v) => {
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" * ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            DistExpr::Power(x, p) => write!(f, "({x})^{p}"),
            DistExpr::Reciprocal(x) => write!(f, "1/({x})"),
            DistExpr::Scale(c, x) => write!(f, "{c}*({x})"),
            DistExpr::Abs(x) => write!(f, "|{x}|"),
            DistExpr::Affine { a, b, x } => write!(f, "{a} + {b}*({x})"),
        }
    }
}
