//! Search constraints: linear (in)equalities over intersection numbers,
//! derived counts and spectral quantities, plus two family exclusions.
//!
//! Syntax is `lhs op rhs` with `op` one of `>= > <= < = != ==`, where each
//! side is a linear expression in the variables
//!
//! * `k`, `v`, `b<i>`, `c<i>`, `a<i>`, `k<i>` (valencies),
//! * `theta<i>` and `m<i>` (eigenvalues descending from `theta0 = k`, and
//!   their multiplicities),
//!
//! with rational coefficients, e.g. `a1 >= k/2 - 1` or `theta1 = b1/2 - 1`.
//! The literals `not bipartite` and `not taylor` exclude those families.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::feasibility::Params;
use crate::spectral::{Spectrum, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    K,
    V,
    B(usize),
    C(usize),
    A(usize),
    Valency(usize),
    Theta(usize),
    Mult(usize),
}

impl Var {
    pub fn is_spectral(self) -> bool {
        matches!(self, Var::Theta(_) | Var::Mult(_))
    }

    fn index(self) -> Option<usize> {
        match self {
            Var::K | Var::V => None,
            Var::B(i) | Var::C(i) | Var::A(i) | Var::Valency(i) | Var::Theta(i) | Var::Mult(i) => {
                Some(i)
            }
        }
    }

    fn parse(name: &str) -> Option<Var> {
        let name: String = name
            .chars()
            .filter(|&ch| ch != '_')
            .collect::<String>()
            .to_lowercase();
        match name.as_str() {
            "k" => return Some(Var::K),
            "v" => return Some(Var::V),
            _ => {}
        }
        let split = name.find(|ch: char| ch.is_ascii_digit())?;
        let (head, digits) = name.split_at(split);
        let i: usize = digits.parse().ok()?;
        Some(match head {
            "b" => Var::B(i),
            "c" => Var::C(i),
            "a" => Var::A(i),
            "k" => Var::Valency(i),
            "theta" => Var::Theta(i),
            "m" => Var::Mult(i),
            _ => return None,
        })
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::K => write!(f, "k"),
            Var::V => write!(f, "v"),
            Var::B(i) => write!(f, "b{i}"),
            Var::C(i) => write!(f, "c{i}"),
            Var::A(i) => write!(f, "a{i}"),
            Var::Valency(i) => write!(f, "k{i}"),
            Var::Theta(i) => write!(f, "theta{i}"),
            Var::Mult(i) => write!(f, "m{i}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Ge,
    Gt,
    Le,
    Lt,
    Eq,
    Ne,
}

impl Op {
    /// Whether `x op 0` holds given the sign of `x`.
    fn holds(self, sign: Ordering) -> bool {
        match self {
            Op::Ge => sign != Ordering::Less,
            Op::Gt => sign == Ordering::Greater,
            Op::Le => sign != Ordering::Greater,
            Op::Lt => sign == Ordering::Less,
            Op::Eq => sign == Ordering::Equal,
            Op::Ne => sign != Ordering::Equal,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstraintError {
    #[error("cannot parse constraint {text:?} at byte {position}: {message}")]
    Parse {
        text: String,
        position: usize,
        message: String,
    },
    #[error("constraint {text:?} refers to {var}, outside diameter {d}")]
    OutOfRange { text: String, var: String, d: usize },
}

/// `sum coeff * var + constant`, with integer coefficients after clearing
/// denominators.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Linear {
    terms: Vec<(Var, i128)>,
    constant: i128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    /// `expr op 0`.
    Linear {
        expr: Linear,
        op: Op,
    },
    NotBipartite,
    NotTaylor,
}

/// A parsed constraint; displays and serializes as its source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    text: String,
    kind: Kind,
}

impl Constraint {
    pub fn parse(text: &str) -> Result<Constraint, ConstraintError> {
        text.parse()
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// Needs eigenvalues or multiplicities, so can only be decided after the
    /// spectrum is known.
    pub fn is_spectral(&self) -> bool {
        match &self.kind {
            Kind::Linear { expr, .. } => expr.terms.iter().any(|(v, _)| v.is_spectral()),
            _ => false,
        }
    }

    /// Rejects references past the diameter.
    pub fn check_diameter(&self, d: usize) -> Result<(), ConstraintError> {
        let Kind::Linear { expr, .. } = &self.kind else {
            return Ok(());
        };
        for (var, _) in &expr.terms {
            let bad = match (*var, var.index()) {
                (Var::C(i), _) => i > d,
                (_, Some(i)) => i > d,
                _ => false,
            };
            if bad {
                return Err(ConstraintError::OutOfRange {
                    text: self.text.clone(),
                    var: var.to_string(),
                    d,
                });
            }
        }
        Ok(())
    }

    /// Decides an array-only constraint on a possibly partial array; `None`
    /// when an entry it needs is not chosen yet, or when it is spectral.
    pub fn eval_params(&self, p: &Params) -> Option<bool> {
        match &self.kind {
            Kind::NotBipartite => {
                let mut all_zero = true;
                for i in 1..=p.diameter() {
                    match p.a(i) {
                        Some(0) => {}
                        Some(_) => all_zero = false,
                        None => {
                            if all_zero {
                                return None;
                            }
                        }
                    }
                }
                Some(!all_zero)
            }
            Kind::NotTaylor => {
                if p.diameter() != 3 {
                    return Some(true);
                }
                let k = p.k();
                if p.b(2)? != 1 {
                    return Some(true);
                }
                if p.b(1)? != p.c(2)? {
                    return Some(true);
                }
                Some(p.c(3)? != k)
            }
            Kind::Linear { expr, op } => {
                if self.is_spectral() {
                    return None;
                }
                let sign = linear_sign(expr, p, None)?;
                Some(op.holds(sign))
            }
        }
    }

    /// Decides the constraint on a complete array with its spectrum. The
    /// multiplicities must already be known to be positive integers.
    pub fn eval_spectral(&self, p: &Params, spec: &Spectrum) -> bool {
        debug_assert!(p.is_complete());
        match &self.kind {
            Kind::Linear { expr, op } => {
                let sign = linear_sign(expr, p, Some(spec)).expect("complete array");
                op.holds(sign)
            }
            _ => self.eval_params(p).expect("complete array"),
        }
    }

    /// For `theta<j> = <array expression>`, the index `j` and the value the
    /// eigenvalue must take, as a function of the array. Lets the search
    /// discard arrays whose characteristic polynomial does not vanish there
    /// before isolating roots.
    pub fn eigenvalue_pin(&self) -> Option<EigenvaluePin> {
        let Kind::Linear { expr, op: Op::Eq } = &self.kind else {
            return None;
        };
        let spectral: Vec<_> = expr.terms.iter().filter(|(v, _)| v.is_spectral()).collect();
        let [&(Var::Theta(j), alpha)] = spectral.as_slice() else {
            return None;
        };
        let rest = Linear {
            terms: expr
                .terms
                .iter()
                .filter(|(v, _)| !v.is_spectral())
                .cloned()
                .collect(),
            constant: expr.constant,
        };
        Some(EigenvaluePin { j, alpha, rest })
    }
}

/// `alpha * theta_j + rest = 0`, see [`Constraint::eigenvalue_pin`].
#[derive(Clone, Debug)]
pub struct EigenvaluePin {
    pub j: usize,
    alpha: i128,
    rest: Linear,
}

impl EigenvaluePin {
    /// The pinned value `-rest / alpha` as a reduced fraction with positive
    /// denominator.
    pub fn value(&self, p: &Params) -> Option<(i128, i128)> {
        let (n, d) = linear_value(&self.rest, p, None)?;
        Some(reduce(-n, d * self.alpha))
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl Serialize for Constraint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.text)
    }
}

fn reduce(n: i128, d: i128) -> (i128, i128) {
    let g = n.gcd(&d).max(1);
    let (n, d) = (n / g, d / g);
    if d < 0 {
        (-n, -d)
    } else {
        (n, d)
    }
}

fn valency(p: &Params, i: usize) -> Option<(i128, i128)> {
    let (mut n, mut d) = (1i128, 1i128);
    for j in 1..=i {
        n *= p.b(j - 1)? as i128;
        d *= p.c(j)? as i128;
        (n, d) = reduce(n, d);
    }
    Some((n, d))
}

/// Value of `expr` as a fraction; `theta` terms use the spectrum when given
/// and must be absent otherwise.
fn linear_value(expr: &Linear, p: &Params, spec: Option<&Spectrum>) -> Option<(i128, i128)> {
    let (mut n, mut d) = (expr.constant, 1i128);
    for &(var, coeff) in &expr.terms {
        let (x, y) = match var {
            Var::K => (p.k() as i128, 1),
            Var::B(i) => (p.b(i)? as i128, 1),
            Var::C(i) => (p.c(i)? as i128, 1),
            Var::A(i) => (p.a(i)? as i128, 1),
            Var::Valency(i) => valency(p, i)?,
            Var::V => {
                let (mut sn, mut sd) = (0i128, 1i128);
                for i in 0..=p.diameter() {
                    let (a, b) = valency(p, i)?;
                    (sn, sd) = reduce(sn * b + a * sd, sd * b);
                }
                (sn, sd)
            }
            Var::Mult(i) => {
                let m = spec?.multiplicities[i].positive_integer()?;
                (m as i128, 1)
            }
            Var::Theta(_) => return None,
        };
        (n, d) = reduce(n * y + coeff * x * d, d * y);
    }
    Some((n, d))
}

fn linear_sign(expr: &Linear, p: &Params, spec: Option<&Spectrum>) -> Option<Ordering> {
    let theta: Vec<_> = expr
        .terms
        .iter()
        .filter(|(v, _)| matches!(v, Var::Theta(_)))
        .collect();
    let rest = Linear {
        terms: expr
            .terms
            .iter()
            .filter(|(v, _)| !matches!(v, Var::Theta(_)))
            .cloned()
            .collect(),
        constant: expr.constant,
    };
    let (n, d) = linear_value(&rest, p, spec)?;
    match theta.as_slice() {
        [] => Some(n.cmp(&0)),
        [&(Var::Theta(j), alpha)] => {
            // sign(alpha theta + n/d) = sign(alpha) * cmp(theta, -n/(d alpha))
            let t = &spec?.eigenvalues[j];
            let r = Q::new(BigInt::from(-n), BigInt::from(d * alpha));
            let c = t.cmp_rational(&r);
            Some(if alpha > 0 { c } else { c.reverse() })
        }
        _ => unreachable!("at most one eigenvalue term"),
    }
}

impl FromStr for Constraint {
    type Err = ConstraintError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let trimmed = text.trim();
        let words: Vec<String> = trimmed.split_whitespace().map(str::to_lowercase).collect();
        let kind = match words
            .iter()
            .map(String::as_str)
            .collect::<Vec<_>>()
            .as_slice()
        {
            ["not", "bipartite"] => Kind::NotBipartite,
            ["not", "taylor"] => Kind::NotTaylor,
            _ => parse_linear(trimmed)?,
        };
        Ok(Constraint {
            text: trimmed.to_string(),
            kind,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(Op),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, (usize, String)> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        let start = i;
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Num(text[start..i].parse().unwrap())));
            continue;
        }
        if ch.is_ascii_alphabetic() || ch == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
            continue;
        }
        let two = text.get(i..i + 2);
        let (tok, len) = match (two, ch) {
            (Some(">="), _) => (Tok::Op(Op::Ge), 2),
            (Some("<="), _) => (Tok::Op(Op::Le), 2),
            (Some("!="), _) => (Tok::Op(Op::Ne), 2),
            (Some("=="), _) => (Tok::Op(Op::Eq), 2),
            (_, '>') => (Tok::Op(Op::Gt), 1),
            (_, '<') => (Tok::Op(Op::Lt), 1),
            (_, '=') => (Tok::Op(Op::Eq), 1),
            (_, '+') => (Tok::Plus, 1),
            (_, '-') => (Tok::Minus, 1),
            (_, '*') => (Tok::Star, 1),
            (_, '/') => (Tok::Slash, 1),
            (_, '(') => (Tok::LParen, 1),
            (_, ')') => (Tok::RParen, 1),
            _ => return Err((i, format!("unexpected character {ch:?}"))),
        };
        out.push((start, tok));
        i += len;
    }
    Ok(out)
}

/// Linear form with rational coefficients during parsing.
#[derive(Clone, Debug, Default)]
struct Form {
    terms: BTreeMap<Var, Q>,
    constant: Q,
}

impl Form {
    fn constant(c: Q) -> Form {
        Form {
            terms: BTreeMap::new(),
            constant: c,
        }
    }

    fn is_constant(&self) -> bool {
        self.terms.values().all(Zero::is_zero)
    }

    fn add(mut self, other: Form, sign: &Q) -> Form {
        for (v, c) in other.terms {
            *self.terms.entry(v).or_insert_with(Q::zero) += c * sign;
        }
        self.constant += other.constant * sign;
        self
    }

    fn scale(mut self, s: &Q) -> Form {
        for c in self.terms.values_mut() {
            *c *= s;
        }
        self.constant *= s;
        self
    }
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
}

type ParseResult<T> = Result<T, (usize, String)>;

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn expr(&mut self) -> ParseResult<Form> {
        let mut acc = self.term()?;
        loop {
            let sign = match self.peek() {
                Some(Tok::Plus) => Q::one(),
                Some(Tok::Minus) => -Q::one(),
                _ => return Ok(acc),
            };
            self.pos += 1;
            let rhs = self.term()?;
            acc = acc.add(rhs, &sign);
        }
    }

    fn term(&mut self) -> ParseResult<Form> {
        let mut acc = self.factor()?;
        loop {
            let at = self.offset();
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = if rhs.is_constant() {
                        acc.scale(&rhs.constant)
                    } else if acc.is_constant() {
                        rhs.scale(&acc.constant)
                    } else {
                        return Err((at, "product of two variables is not linear".into()));
                    };
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    if !rhs.is_constant() {
                        return Err((at, "division by a variable is not linear".into()));
                    }
                    if rhs.constant.is_zero() {
                        return Err((at, "division by zero".into()));
                    }
                    acc = acc.scale(&rhs.constant.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> ParseResult<Form> {
        let at = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return Err((at, "expected a term".into()));
        };
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(Form::constant(Q::from_integer(n))),
            Tok::Ident(name) => {
                let var = Var::parse(&name).ok_or((at, format!("unknown variable {name:?}")))?;
                let mut f = Form::default();
                f.terms.insert(var, Q::one());
                Ok(f)
            }
            Tok::Minus => Ok(self.factor()?.scale(&-Q::one())),
            Tok::Plus => self.factor(),
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err((self.offset(), "expected ')'".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err((at, "expected a term".into())),
        }
    }
}

fn parse_linear(text: &str) -> Result<Kind, ConstraintError> {
    let err = |(position, message): (usize, String)| ConstraintError::Parse {
        text: text.to_string(),
        position,
        message,
    };
    let toks = tokenize(text).map_err(err)?;
    let mut parser = Parser {
        toks: &toks,
        pos: 0,
        end: text.len(),
    };
    let lhs = parser.expr().map_err(err)?;
    let op = match parser.peek() {
        Some(Tok::Op(op)) => *op,
        _ => return Err(err((parser.offset(), "expected a comparison".into()))),
    };
    parser.pos += 1;
    let rhs = parser.expr().map_err(err)?;
    if parser.pos != toks.len() {
        return Err(err((parser.offset(), "trailing input".into())));
    }
    let form = lhs.add(rhs, &-Q::one());
    let theta_terms = form
        .terms
        .iter()
        .filter(|(v, c)| matches!(v, Var::Theta(_)) && !c.is_zero())
        .count();
    if theta_terms > 1 {
        return Err(err((0, "at most one eigenvalue may appear".into())));
    }
    // clear denominators; scaling by a positive number keeps the sign
    let lcm = form
        .terms
        .values()
        .chain(std::iter::once(&form.constant))
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let to_int = |c: &Q| -> Result<i128, ConstraintError> {
        (c * Q::from_integer(lcm.clone()))
            .to_integer()
            .to_i128()
            .ok_or_else(|| err((0, "coefficient too large".into())))
    };
    let mut terms = Vec::new();
    for (v, c) in &form.terms {
        if !c.is_zero() {
            terms.push((*v, to_int(c)?));
        }
    }
    debug_assert!(lcm.is_positive());
    Ok(Kind::Linear {
        expr: Linear {
            terms,
            constant: to_int(&form.constant)?,
        },
        op,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrays::IntersectionArray;

    fn arr(s: &str) -> IntersectionArray {
        s.parse().unwrap()
    }

    fn holds(c: &str, a: &str) -> Option<bool> {
        let a = arr(a);
        Constraint::parse(c).unwrap().eval_params(&Params::of(&a))
    }

    #[test]
    fn parses_and_evaluates_linear_bounds() {
        assert_eq!(holds("a1 >= k/2 - 1", "12,6,2;1,4,9"), Some(true));
        assert_eq!(holds("c2 > k/3", "12,6,2;1,4,9"), Some(false));
        assert_eq!(holds("c2 > k / 6", "12,6,2;1,4,9"), Some(true));
        assert_eq!(holds("k2 <= 3*k/2", "12,6,2;1,4,9"), Some(true));
        assert_eq!(holds("v <= 7*k/2", "12,6,2;1,4,9"), Some(true));
        assert_eq!(holds("a3 != 0", "12,6,2;1,4,9"), Some(true));
        assert_eq!(holds("b1 = 2*c2", "4,2,1;1,1,4"), Some(true));
        assert_eq!(holds("2*(b1 - c2) == b1", "4,2,1;1,1,4"), Some(true));
    }

    #[test]
    fn implicit_product_is_rejected() {
        // "3k" tokenizes as 3 followed by the identifier k
        assert!(Constraint::parse("k2 < 3k/2").is_err());
        assert!(Constraint::parse("k2 < 3*k/2").is_ok());
    }

    #[test]
    fn family_literals() {
        assert_eq!(holds("not bipartite", "3,2,1;1,2,3"), Some(false));
        assert_eq!(holds("not bipartite", "12,6,2;1,4,9"), Some(true));
        assert_eq!(holds("not taylor", "5,2,1;1,2,5"), Some(false));
        assert_eq!(holds("Not Taylor", "12,6,2;1,4,9"), Some(true));
    }

    #[test]
    fn partial_arrays_are_undecided_until_known() {
        let b = [12u64, 6];
        let p = Params::new(3, &b, &[1]);
        let c = Constraint::parse("c2 > k/6").unwrap();
        assert_eq!(c.eval_params(&p), None);
        let c = Constraint::parse("a1 >= k/2 - 1").unwrap();
        assert_eq!(c.eval_params(&p), Some(true));
    }

    #[test]
    fn errors_report_position() {
        match Constraint::parse("a1 >= k*b1") {
            Err(ConstraintError::Parse { position, .. }) => assert_eq!(position, 7),
            other => panic!("{other:?}"),
        }
        assert!(Constraint::parse("a1 >= ").is_err());
        assert!(Constraint::parse("x1 > 0").is_err());
        assert!(Constraint::parse("theta1 + theta2 > 0").is_err());
        assert!(Constraint::parse("c4 > 0")
            .unwrap()
            .check_diameter(3)
            .is_err());
        assert!(Constraint::parse("c3 > 0")
            .unwrap()
            .check_diameter(3)
            .is_ok());
    }

    #[test]
    fn spectral_constraints() {
        let a = arr("12,6,2;1,4,9");
        let spec = Spectrum::of(&a).unwrap();
        let p = Params::of(&a);
        let pin = Constraint::parse("theta1 = b1 - 1").unwrap();
        assert!(pin.is_spectral());
        assert_eq!(pin.eval_params(&p), None);
        assert!(pin.eval_spectral(&p, &spec));
        assert_eq!(pin.eigenvalue_pin().unwrap().value(&p), Some((5, 1)));
        assert!(!Constraint::parse("theta1 = b1/2 - 1")
            .unwrap()
            .eval_spectral(&p, &spec));
        assert!(Constraint::parse("m1 >= k/2")
            .unwrap()
            .eval_spectral(&p, &spec));
        assert!(!Constraint::parse("m1 < k/2")
            .unwrap()
            .eval_spectral(&p, &spec));
        let ico = arr("5,2,1;1,2,5");
        let spec = Spectrum::of(&ico).unwrap();
        // theta1 = sqrt 5
        let c = Constraint::parse("theta1 > 2").unwrap();
        assert!(c.eval_spectral(&Params::of(&ico), &spec));
        let c = Constraint::parse("-theta1 > -3").unwrap();
        assert!(c.eval_spectral(&Params::of(&ico), &spec));
    }
}
