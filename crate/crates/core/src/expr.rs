//! The expression language for `L`.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := number | 'i' | 's2' | basis | bracket | ad | der
//!          | '(' expr ')' | '-' factor
//! number  := int ('/' int)?
//! basis   := 'L' '[' half ',' half ';' half ']'
//! half    := '-'? int ('/' '2')?
//! bracket := '[' expr ',' expr ',' expr ']'
//! ad      := 'ad' '(' expr ',' expr ')' '(' expr ')'
//! der     := 'der' '(' expr ',' expr ',' expr ')' '(' expr ')'
//! ```
//!
//! `der(a, b, c)(x)` applies the product derivation sending the three half
//! generators `L[0,0;1/2]`, `L[1/2,0;0]`, `L[0,1/2;0]` to `a`, `b`, `c`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{self, BasisIndex, Element};
use crate::derivations::Derivation;
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::scalars::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// A nonnegative rational literal.
    Num(Rational),
    I,
    S2,
    Basis(BasisIndex),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Bracket(Box<Expr>, Box<Expr>, Box<Expr>),
    Ad(Box<Expr>, Box<Expr>, Box<Expr>),
    Der(Box<Expr>, Box<Expr>, Box<Expr>, Box<Expr>),
}

// ---------------------------------------------------------------------------
// lexer

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

const SYMBOLS: &str = "+-*/()[],;";

fn lex(src: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut column, mut k) = (1, 1, 0);
    while k < chars.len() {
        let c = chars[k];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            k += 1;
            continue;
        }
        let start = k;
        let tok = if c.is_ascii_digit() {
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().collect();
            Tok::Int(digits.parse().expect("ascii digits"))
        } else if c.is_ascii_alphabetic() {
            while k < chars.len() && chars[k].is_ascii_alphanumeric() {
                k += 1;
            }
            Tok::Ident(chars[start..k].iter().collect())
        } else if SYMBOLS.contains(c) {
            k += 1;
            Tok::Sym(c)
        } else {
            return Err(Error::Syntax {
                line,
                column,
                found: format!("character {c:?}"),
                expected: vec!["a token".into()],
            });
        };
        column += k - start;
        out.push(Spanned {
            tok,
            line: l0,
            column: c0,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

// ---------------------------------------------------------------------------
// parser

const FACTOR_START: [&str; 9] = [
    "number", "'i'", "'s2'", "'L'", "'['", "'ad'", "'der'", "'('", "'-'",
];

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> Error {
        let s = &self.toks[self.pos];
        Error::Syntax {
            line: s.line,
            column: s.column,
            found: s.tok.to_string(),
            expected: expected.iter().map(|e| e.to_string()).collect(),
        }
    }

    fn is_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.is_sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[&format!("'{c}'")]))
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.error(&["integer"])),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.is_sym('+') {
                self.bump();
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.is_sym('-') {
                self.bump();
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        while self.is_sym('*') {
            self.bump();
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Int(_) => self.number(),
            Tok::Sym('-') => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::Sym('[') => {
                self.bump();
                let [a, b, c] = self.expr_list::<3>(']')?;
                Ok(Expr::Bracket(a, b, c))
            }
            Tok::Ident(name) => match name.as_str() {
                "i" => {
                    self.bump();
                    Ok(Expr::I)
                }
                "s2" => {
                    self.bump();
                    Ok(Expr::S2)
                }
                "L" => {
                    self.bump();
                    self.basis()
                }
                "ad" => {
                    self.bump();
                    self.expect_sym('(')?;
                    let [a, b] = self.expr_list::<2>(')')?;
                    let x = self.applied()?;
                    Ok(Expr::Ad(a, b, x))
                }
                "der" => {
                    self.bump();
                    self.expect_sym('(')?;
                    let [a, b, c] = self.expr_list::<3>(')')?;
                    let x = self.applied()?;
                    Ok(Expr::Der(a, b, c, x))
                }
                _ => Err(self.error(&FACTOR_START)),
            },
            _ => Err(self.error(&FACTOR_START)),
        }
    }

    /// `'(' expr ')'`
    fn applied(&mut self) -> Result<Box<Expr>> {
        self.expect_sym('(')?;
        let x = self.expr()?;
        self.expect_sym(')')?;
        Ok(Box::new(x))
    }

    /// `N` comma-separated expressions followed by `close`; the opener is
    /// already consumed.
    fn expr_list<const N: usize>(&mut self, close: char) -> Result<[Box<Expr>; N]> {
        let mut v = Vec::with_capacity(N);
        for k in 0..N {
            v.push(Box::new(self.expr()?));
            if k + 1 < N {
                self.expect_sym(',')?;
            }
        }
        self.expect_sym(close)?;
        Ok(v.try_into().expect("exactly N items"))
    }

    fn number(&mut self) -> Result<Expr> {
        let n = self.int()?;
        if self.is_sym('/') {
            self.bump();
            let at = self.pos;
            let d = self.int()?;
            if d.is_zero() {
                self.pos = at;
                return Err(self.error(&["nonzero denominator"]));
            }
            return Ok(Expr::Num(Rational::new(n, d)));
        }
        Ok(Expr::Num(Rational::from_integer(n)))
    }

    fn half(&mut self) -> Result<HalfInt> {
        let neg = self.is_sym('-');
        if neg {
            self.bump();
        }
        let at = self.pos;
        let n = self.int()?;
        let doubled = if self.is_sym('/') {
            self.bump();
            let d = self.int()?;
            if d != BigInt::from(2) {
                self.pos -= 1;
                return Err(self.error(&["2"]));
            }
            n
        } else {
            n * 2
        };
        let doubled: i64 = i64::try_from(doubled).map_err(|_| {
            self.pos = at;
            self.error(&["index within range"])
        })?;
        Ok(HalfInt::from_doubled(if neg { -doubled } else { doubled }))
    }

    fn basis(&mut self) -> Result<Expr> {
        self.expect_sym('[')?;
        let l = self.half()?;
        self.expect_sym(',')?;
        let m = self.half()?;
        self.expect_sym(';')?;
        let r = self.half()?;
        self.expect_sym(']')?;
        Ok(Expr::Basis(BasisIndex::new(l, m, r)))
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&["'+'", "'-'", "'*'", "end of input"]));
    }
    Ok(e)
}

// ---------------------------------------------------------------------------
// printer

impl Expr {
    /// Binding level: 1 sums, 2 products, 3 factors.
    fn level(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            _ => 3,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            f.write_str("(")?;
            self.write_at(f, 1)?;
            return f.write_str(")");
        }
        match self {
            Expr::Num(q) => write!(f, "{q}"),
            Expr::I => f.write_str("i"),
            Expr::S2 => f.write_str("s2"),
            Expr::Basis(b) => write!(f, "{b}"),
            Expr::Neg(x) => {
                f.write_str("-")?;
                x.write_at(f, 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_at(f, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) {
                    " + "
                } else {
                    " - "
                })?;
                b.write_at(f, 2)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, 2)?;
                f.write_str("*")?;
                b.write_at(f, 3)
            }
            Expr::Bracket(a, b, c) => write!(f, "[{a}, {b}, {c}]"),
            Expr::Ad(a, b, x) => write!(f, "ad({a}, {b})({x})"),
            Expr::Der(a, b, c, x) => write!(f, "der({a}, {b}, {c})({x})"),
        }
    }
}

/// The canonical form; it reparses to an identical tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 1)
    }
}

// ---------------------------------------------------------------------------
// evaluation

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(Scalar),
    Element(Element),
}

impl Value {
    /// Scalars are identified with multiples of the unit.
    pub fn into_element(self) -> Element {
        match self {
            Value::Scalar(c) => Element::term(BasisIndex::UNIT, c),
            Value::Element(e) => e,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(c) => write!(f, "{c}"),
            Value::Element(e) => write!(f, "{e}"),
        }
    }
}

fn element_operand(v: Value, what: &str) -> Result<Element> {
    match v {
        Value::Element(e) => Ok(e),
        Value::Scalar(c) => Err(Error::Type(format!(
            "{what} needs element operands, got scalar {c}"
        ))),
    }
}

impl Expr {
    pub fn eval(&self) -> Result<Value> {
        Ok(match self {
            Expr::Num(q) => Value::Scalar(Scalar::from_rational(q.clone())),
            Expr::I => Value::Scalar(Scalar::i()),
            Expr::S2 => Value::Scalar(Scalar::sqrt2()),
            Expr::Basis(b) => Value::Element(algebra::basis(*b)),
            Expr::Neg(x) => match x.eval()? {
                Value::Scalar(c) => Value::Scalar(-c),
                Value::Element(e) => Value::Element(-e),
            },
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let sub = matches!(self, Expr::Sub(..));
                match (a.eval()?, b.eval()?) {
                    (Value::Scalar(x), Value::Scalar(y)) => {
                        Value::Scalar(if sub { &x - &y } else { &x + &y })
                    }
                    (x, y) => {
                        let (x, y) = (x.into_element(), y.into_element());
                        Value::Element(if sub { &x - &y } else { &x + &y })
                    }
                }
            }
            Expr::Mul(a, b) => match (a.eval()?, b.eval()?) {
                (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x * &y),
                (Value::Scalar(c), Value::Element(e)) | (Value::Element(e), Value::Scalar(c)) => {
                    Value::Element(e.scale(&c))
                }
                (Value::Element(x), Value::Element(y)) => Value::Element(algebra::mul(&x, &y)),
            },
            Expr::Bracket(a, b, c) => {
                let x = element_operand(a.eval()?, "a bracket")?;
                let y = element_operand(b.eval()?, "a bracket")?;
                let z = element_operand(c.eval()?, "a bracket")?;
                Value::Element(algebra::bracket(&x, &y, &z))
            }
            Expr::Ad(a, b, c) => {
                let x = element_operand(a.eval()?, "ad")?;
                let y = element_operand(b.eval()?, "ad")?;
                let z = element_operand(c.eval()?, "ad")?;
                let f = algebra::ad(&x, &y);
                let out = f(&z);
                Value::Element(out)
            }
            Expr::Der(a, b, c, x) => {
                let d = Derivation::new(
                    element_operand(a.eval()?, "der")?,
                    element_operand(b.eval()?, "der")?,
                    element_operand(c.eval()?, "der")?,
                );
                Value::Element(d.apply(&element_operand(x.eval()?, "der")?))
            }
        })
    }
}

pub fn eval(src: &str) -> Result<Value> {
    parse(src)?.eval()
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scalar> {
        match eval(s)? {
            Value::Scalar(c) => Ok(c),
            Value::Element(e) => Err(Error::Type(format!("expected a scalar, got element {e}"))),
        }
    }
}

impl FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Expr> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn el(src: &str) -> Element {
        eval(src).unwrap().into_element()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(
            parse("L[0,1;1]").unwrap(),
            Expr::Basis(BasisIndex::ints(0, 1, 1))
        );
        let b = parse("[L[0,1;1], L[0,1;3], L[1,0;-2]]").unwrap();
        assert!(matches!(b, Expr::Bracket(..)));
        assert_eq!(
            b.eval().unwrap().into_element(),
            Element::term(BasisIndex::ints(0, 1, 2), Scalar::from_int(2))
        );
        let expected = Element::term(
            BasisIndex::from_doubled(1, 1, 0),
            Scalar::new(rat(1, 2), rat(1, 1), rat(0, 1), rat(0, 1)),
        );
        assert_eq!(el("(1/2 + i)*L[1/2,0;0] * L[0,1/2;0]"), expected);
    }

    #[test]
    fn scalars_and_promotion() {
        assert_eq!(
            "1/2 + i".parse::<Scalar>().unwrap(),
            Scalar::new(rat(1, 2), rat(1, 1), rat(0, 1), rat(0, 1))
        );
        assert_eq!("s2*s2".parse::<Scalar>().unwrap(), Scalar::from_int(2));
        assert_eq!(
            "-2*i".parse::<Scalar>().unwrap(),
            -(Scalar::i() + Scalar::i())
        );
        assert_eq!(
            el("1 + L[1,0;0]"),
            &algebra::unit() + &algebra::basis(BasisIndex::ints(1, 0, 0))
        );
        assert!("L[1,0;0]".parse::<Scalar>().is_err());
    }

    #[test]
    fn operators() {
        assert_eq!(
            el("ad(L[0,1;0], L[1,0;0])(L[2,3;1/2])"),
            Element::term(BasisIndex::from_doubled(4, 6, 1), Scalar::from_ratio(-1, 2))
        );
        assert_eq!(
            el("der(L[0,0;0], 0*L[0,0;0], 0*L[0,0;0])(L[1,2;3])"),
            Element::term(BasisIndex::from_doubled(2, 4, 5), Scalar::from_int(6))
        );
        assert!(matches!(
            eval("[1, L[1,0;0], L[0,1;0]]"),
            Err(Error::Type(_))
        ));
    }

    #[test]
    fn errors_have_positions() {
        match parse("L[1,0;0] +\n  * 2") {
            Err(Error::Syntax {
                line,
                column,
                expected,
                ..
            }) => {
                assert_eq!((line, column), (2, 3));
                assert!(expected.contains(&"'L'".to_string()));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse("L[1/3,0;0]"),
            Err(Error::Syntax { column: 5, .. })
        ));
        assert!(matches!(parse("1/0"), Err(Error::Syntax { column: 3, .. })));
        assert!(matches!(parse("L[0,0;0] L"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse("2 # 3"),
            Err(Error::Syntax { column: 3, .. })
        ));
    }

    #[test]
    fn printing_roundtrips() {
        for src in [
            "1 - (2 - 3)",
            "-(L[1,0;0] + 2)*i",
            "--1/2",
            "2*3*(4*5)",
            "L[-1/2,3;0] - -L[0,0;0]",
            "[L[0,1;1] + 1, ad(L[0,0;1], i)(s2), der(1, 2, 3)(L[1,1;1])]",
        ] {
            let e = parse(src).unwrap();
            let printed = e.to_string();
            assert_eq!(parse(&printed).unwrap(), e, "{src} -> {printed}");
        }
        assert_eq!(parse("1 - (2 - 3)").unwrap().to_string(), "1 - (2 - 3)");
        assert_eq!(parse("(1 - 2) - 3").unwrap().to_string(), "1 - 2 - 3");
    }

    #[test]
    fn element_display_reparses() {
        let e = el("(1 + i)*L[1/2,0;-3] - 1/2*L[0,0;1] + 3*s2*L[2,2;2] - L[0,1;0]");
        assert_eq!(el(&e.to_string()), e);
    }
}
