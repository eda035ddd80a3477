//! Built-in algebras addressed by short specifiers, and the default corpus.
//!
//! Grammar: `name` or `name(arg, ...)` where an argument is a number or
//! another specifier. Dashes and underscores in names are interchangeable.
//!
//! | specifier | algebra | operators |
//! |---|---|---|
//! | `mv-chain(n)` | `S_n` | |
//! | `godel-chain(n)` | Gödel chain with `n` elements | |
//! | `product(f, g)` | `f × g` | |
//! | `ordinal-sum(f, g, ...)` | `f ⊕ g ⊕ ...` | |
//! | `shape(l, n1, ..., nk)` | `S_l ⊕ (S_n1 × ... × S_nk)`, integer coordinates | |
//! | `four-element` | `0 < a < b < 1` | `sigma` |
//! | `diagonal(f)` | `f × f` | `sigma1 = (x,x)`, `sigma2 = (y,y)` |
//! | `trivial` | one element | |

use std::fmt;

use crate::algebra::{AlgebraError, BlAlgebra};
use crate::constructors::{
    diagonal_operator, direct_product, four_element, godel_chain, mv_chain, ordinal_sum, trivial_algebra, Coordinate,
};
use crate::operators::{idempotent_operator, StateOperator, SummandShape};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Spec {
    Number(usize),
    Call(String, Vec<Spec>),
}

impl fmt::Display for Spec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Spec::Number(n) => write!(f, "{n}"),
            Spec::Call(name, args) if args.is_empty() => f.write_str(name),
            Spec::Call(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err(&self, msg: &str) -> String {
        format!("{msg} at offset {}", self.pos)
    }

    fn spec(&mut self) -> Result<Spec, String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || b"-_".contains(&self.s[self.pos]))
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a name or number"));
        }
        let word = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        if word.bytes().all(|b| b.is_ascii_digit()) {
            return word.parse().map(Spec::Number).map_err(|_| self.err("number too large"));
        }
        let name = word.replace('_', "-").to_ascii_lowercase();
        let mut args = Vec::new();
        self.skip_ws();
        if self.s.get(self.pos) == Some(&b'(') {
            self.pos += 1;
            loop {
                args.push(self.spec()?);
                self.skip_ws();
                match self.s.get(self.pos) {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.err("expected ',' or ')'")),
                }
            }
        }
        Ok(Spec::Call(name, args))
    }
}

pub fn parse_spec(text: &str) -> Result<Spec, String> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.err("trailing input"));
    }
    Ok(spec)
}

/// An algebra with named operators and a stable identifier.
#[derive(Clone, Debug)]
pub struct Instance {
    pub id: String,
    pub algebra: BlAlgebra,
    pub operators: Vec<(String, StateOperator)>,
    /// Operators that are expected to fail verification.
    pub rejected: Vec<String>,
}

impl Instance {
    pub fn plain(id: impl Into<String>, algebra: BlAlgebra) -> Instance {
        Instance { id: id.into(), algebra, operators: Vec::new(), rejected: Vec::new() }
    }

    pub fn operator(&self, name: &str) -> Option<&StateOperator> {
        self.operators.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BuildError {
    #[error("{0}")]
    Syntax(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn number(args: &[Spec], i: usize, name: &str) -> Result<usize, BuildError> {
    match args.get(i) {
        Some(Spec::Number(n)) => Ok(*n),
        _ => Err(BuildError::Usage(format!("{name}: argument {} must be a number", i + 1))),
    }
}

fn arity(args: &[Spec], n: usize, name: &str) -> Result<(), BuildError> {
    if args.len() == n {
        Ok(())
    } else {
        Err(BuildError::Usage(format!("{name} takes {n} argument(s), got {}", args.len())))
    }
}

fn algebra_arg(spec: &Spec, name: &str) -> Result<BlAlgebra, BuildError> {
    match spec {
        Spec::Number(_) => Err(BuildError::Usage(format!("{name}: expected an algebra, got a number"))),
        s => Ok(build(s)?.algebra),
    }
}

pub fn build(spec: &Spec) -> Result<Instance, BuildError> {
    let Spec::Call(name, args) = spec else {
        return Err(BuildError::Usage("expected an algebra, got a number".into()));
    };
    let id = spec.to_string();
    let algebra = match name.as_str() {
        "mv-chain" => {
            arity(args, 1, name)?;
            let n = number(args, 0, name)?;
            if n == 0 {
                return Err(BuildError::Usage("mv-chain needs n >= 1".into()));
            }
            mv_chain(n)
        }
        "godel-chain" => {
            arity(args, 1, name)?;
            let n = number(args, 0, name)?;
            if n < 2 {
                return Err(BuildError::Usage("godel-chain needs n >= 2".into()));
            }
            godel_chain(n)
        }
        "product" => {
            arity(args, 2, name)?;
            direct_product(&algebra_arg(&args[0], name)?, &algebra_arg(&args[1], name)?)
        }
        "ordinal-sum" => {
            if args.len() < 2 {
                return Err(BuildError::Usage("ordinal-sum needs at least two summands".into()));
            }
            let summands = args.iter().map(|s| algebra_arg(s, name)).collect::<Result<Vec<_>, _>>()?;
            ordinal_sum(&summands)?
        }
        "shape" => {
            if args.len() < 2 {
                return Err(BuildError::Usage("shape needs a lower size and at least one factor".into()));
            }
            let nums = (0..args.len()).map(|i| number(args, i, name)).collect::<Result<Vec<_>, _>>()?;
            SummandShape::new(nums[0], nums[1..].to_vec())?.build()
        }
        "four-element" => {
            arity(args, 0, name)?;
            let (a, s) = four_element();
            return Ok(Instance { id, algebra: a, operators: vec![("sigma".into(), s)], rejected: Vec::new() });
        }
        "diagonal" => {
            arity(args, 1, name)?;
            let b = algebra_arg(&args[0], name)?;
            let (a, s1) = diagonal_operator(&b, Coordinate::First);
            let (_, s2) = diagonal_operator(&b, Coordinate::Second);
            return Ok(Instance {
                id,
                algebra: a,
                operators: vec![("sigma1".into(), s1), ("sigma2".into(), s2)],
                rejected: Vec::new(),
            });
        }
        "trivial" => {
            arity(args, 0, name)?;
            trivial_algebra()
        }
        other => return Err(BuildError::Usage(format!("unknown algebra {other:?}"))),
    };
    Ok(Instance::plain(id, algebra))
}

pub fn build_str(text: &str) -> Result<Instance, BuildError> {
    build(&parse_spec(text).map_err(BuildError::Syntax)?)
}

/// `S_4 × S_4` with the idempotent operator at `(0,4)`, which does not
/// cover the summand and is rejected.
pub fn noncovering_instance() -> Instance {
    let shape = SummandShape::new(0, vec![4, 4]).expect("valid shape");
    let a = shape.build();
    let e = shape.index(&[0, 4]);
    let sigma = idempotent_operator(&shape, &a, e).expect("(0,4) is idempotent");
    Instance {
        id: "shape(0,4,4)".into(),
        algebra: a,
        operators: vec![("sigma-a".into(), sigma)],
        rejected: vec!["sigma-a".into()],
    }
}

/// The default corpus, in a fixed order.
pub fn default_corpus() -> Vec<Instance> {
    let mut out: Vec<Instance> = (1..=5)
        .map(|n| format!("mv-chain({n})"))
        .chain((3..=5).map(|n| format!("godel-chain({n})")))
        .chain(
            [
                "four-element",
                "product(mv-chain(1),mv-chain(1))",
                "product(mv-chain(2),mv-chain(2))",
                "shape(1,1,1)",
                "diagonal(mv-chain(2))",
            ]
            .map(String::from),
        )
        .map(|s| build_str(&s).expect("built-in specifier"))
        .collect();
    out.push(noncovering_instance());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested_specifiers() {
        let s = parse_spec("product( mv_chain(1), Godel-Chain(3) )").unwrap();
        assert_eq!(s.to_string(), "product(mv-chain(1),godel-chain(3))");
        assert!(parse_spec("product(").is_err());
        assert!(parse_spec("mv-chain(2) x").is_err());
    }

    #[test]
    fn builds_corpus() {
        let corpus = default_corpus();
        let sizes: Vec<usize> = corpus.iter().map(|i| i.algebra.size()).collect();
        assert_eq!(sizes, [2, 3, 4, 5, 6, 3, 4, 5, 4, 4, 9, 5, 9, 25]);
        let last = corpus.last().unwrap();
        assert!(!last.operator("sigma-a").unwrap().is_state());
    }

    #[test]
    fn usage_errors() {
        assert!(matches!(build_str("mv-chain(0)"), Err(BuildError::Usage(_))));
        assert!(matches!(build_str("nope"), Err(BuildError::Usage(_))));
        assert!(matches!(build_str("product(1,2)"), Err(BuildError::Usage(_))));
        assert!(matches!(
            build_str("ordinal-sum(product(mv-chain(1),mv-chain(1)),mv-chain(1))"),
            Err(BuildError::Algebra(_))
        ));
    }
}
