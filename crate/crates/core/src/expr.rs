//! Function literals such as `sin(sqrt(2)*pi*z)/sin(pi*z)` or `exp(i*z) + 2`.
//!
//! Grammar (usual precedence, `^` binds tightest and takes a non-negative
//! integer constant exponent):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' unary)?
//! atom  := number | 'z' | 'i' | 'pi' | 'sqrt2' | 'sqrt3'
//!        | ('sin' | 'cos' | 'exp' | 'sqrt') '(' expr ')' | '(' expr ')'
//! ```
//!
//! `sin`/`cos` take an argument `a z + b` with real `a`; `exp` takes `i λ z + b`
//! with real `λ`. Every literal normalizes to a quotient of exponential sums.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::{ExponentialSum, MeromorphicAP, Strip};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        match c {
            ' ' | '\t' | '\n' | '\r' => k += 1,
            '+' | '-' | '*' | '/' | '^' => {
                out.push(Token::Op(c));
                k += 1;
            }
            // Unicode minus, as it shows up in pasted formulas.
            '−' => {
                out.push(Token::Op('-'));
                k += 1;
            }
            '(' => {
                out.push(Token::LParen);
                k += 1;
            }
            ')' => {
                out.push(Token::RParen);
                k += 1;
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = k;
                while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                    k += 1;
                }
                if k < chars.len() && (chars[k] == 'e' || chars[k] == 'E') {
                    let mut j = k + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        k = j;
                        while k < chars.len() && chars[k].is_ascii_digit() {
                            k += 1;
                        }
                    }
                }
                let text: String = chars[start..k].iter().collect();
                let v = text.parse::<f64>().map_err(|_| Error::Parse(format!("bad number `{text}`")))?;
                out.push(Token::Num(v));
            }
            c if c.is_ascii_alphabetic() => {
                let start = k;
                while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                    k += 1;
                }
                out.push(Token::Ident(chars[start..k].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
enum Expr {
    Const(Complex64),
    Z,
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
    Call(String, Box<Expr>),
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(Token::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(Token::Op(op @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(Token::Op('-')) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Token::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some(Token::Op('^')) = self.peek() {
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(Expr::Bin('^', Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Token::Num(v)) => Ok(Expr::Const(Complex64::new(v, 0.0))),
            Some(Token::LParen) => {
                let e = self.expr()?;
                self.expect_rparen()?;
                Ok(e)
            }
            Some(Token::Ident(name)) => match name.as_str() {
                "z" => Ok(Expr::Z),
                "i" => Ok(Expr::Const(Complex64::i())),
                "pi" => Ok(Expr::Const(Complex64::new(std::f64::consts::PI, 0.0))),
                "sqrt2" => Ok(Expr::Const(Complex64::new(std::f64::consts::SQRT_2, 0.0))),
                "sqrt3" => Ok(Expr::Const(Complex64::new(3f64.sqrt(), 0.0))),
                "sin" | "cos" | "exp" | "sqrt" => {
                    match self.next() {
                        Some(Token::LParen) => {}
                        _ => return Err(Error::Parse(format!("expected `(` after `{name}`"))),
                    }
                    let arg = self.expr()?;
                    self.expect_rparen()?;
                    Ok(Expr::Call(name, Box::new(arg)))
                }
                other => Err(Error::Parse(format!("unknown identifier `{other}`"))),
            },
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }

    fn expect_rparen(&mut self) -> Result<()> {
        match self.next() {
            Some(Token::RParen) => Ok(()),
            _ => Err(Error::Parse("expected `)`".into())),
        }
    }
}

/// Intermediate value while normalizing.
#[derive(Debug, Clone)]
enum Value {
    Const(Complex64),
    /// `slope·z + offset`, only legal inside function arguments.
    Linear {
        slope: Complex64,
        offset: Complex64,
    },
    Quotient(ExponentialSum, ExponentialSum),
}

fn nonlinear() -> Error {
    Error::Parse("`z` may only appear linearly inside sin/cos/exp".into())
}

fn as_quotient(v: Value) -> Result<(ExponentialSum, ExponentialSum)> {
    match v {
        Value::Const(c) => Ok((ExponentialSum::constant(c), ExponentialSum::one())),
        Value::Quotient(n, d) => Ok((n, d)),
        Value::Linear { .. } => Err(nonlinear()),
    }
}

fn is_real(c: Complex64) -> bool {
    c.im.abs() <= 1e-15 * c.norm().max(1.0)
}

fn eval(e: &Expr) -> Result<Value> {
    match e {
        Expr::Const(c) => Ok(Value::Const(*c)),
        Expr::Z => Ok(Value::Linear { slope: Complex64::new(1.0, 0.0), offset: Complex64::new(0.0, 0.0) }),
        Expr::Neg(inner) => Ok(match eval(inner)? {
            Value::Const(c) => Value::Const(-c),
            Value::Linear { slope, offset } => Value::Linear { slope: -slope, offset: -offset },
            Value::Quotient(n, d) => Value::Quotient(-&n, d),
        }),
        Expr::Bin(op, a, b) => binary(*op, eval(a)?, eval(b)?),
        Expr::Call(name, arg) => call(name, eval(arg)?),
    }
}

fn binary(op: char, a: Value, b: Value) -> Result<Value> {
    use Value::*;
    match (op, a, b) {
        ('+', Const(x), Const(y)) => Ok(Const(x + y)),
        ('-', Const(x), Const(y)) => Ok(Const(x - y)),
        ('*', Const(x), Const(y)) => Ok(Const(x * y)),
        ('/', Const(x), Const(y)) => {
            if y.norm() == 0.0 {
                Err(Error::Parse("division by zero".into()))
            } else {
                Ok(Const(x / y))
            }
        }
        ('^', base, Const(k)) => {
            if !is_real(k) || k.re < 0.0 || k.re.fract() != 0.0 || k.re > 64.0 {
                return Err(Error::Parse("exponent must be an integer constant in 0..=64".into()));
            }
            let k = k.re as u32;
            match base {
                Const(x) => Ok(Const(x.powu(k))),
                Linear { .. } if k == 1 => Ok(base),
                Linear { .. } if k == 0 => Ok(Const(Complex64::new(1.0, 0.0))),
                Linear { .. } => Err(nonlinear()),
                Quotient(n, d) => Ok(Quotient(n.powu(k), d.powu(k))),
            }
        }
        ('^', _, _) => Err(Error::Parse("exponent must be a constant".into())),
        (op, Linear { slope, offset }, Const(c)) | (op @ ('+' | '*'), Const(c), Linear { slope, offset }) => match op {
            '+' => Ok(Linear { slope, offset: offset + c }),
            '-' => Ok(Linear { slope, offset: offset - c }),
            '*' => Ok(Linear { slope: slope * c, offset: offset * c }),
            '/' if c.norm() != 0.0 => Ok(Linear { slope: slope / c, offset: offset / c }),
            _ => Err(Error::Parse("division by zero".into())),
        },
        ('-', Const(c), Linear { slope, offset }) => Ok(Linear { slope: -slope, offset: c - offset }),
        ('+' | '-', Linear { slope: s1, offset: o1 }, Linear { slope: s2, offset: o2 }) => {
            let sign = if op == '+' { 1.0 } else { -1.0 };
            Ok(Linear { slope: s1 + s2 * sign, offset: o1 + o2 * sign })
        }
        (op, a, b) => {
            let (n1, d1) = as_quotient(a)?;
            let (n2, d2) = as_quotient(b)?;
            match op {
                '+' => Ok(Quotient(&(&n1 * &d2) + &(&n2 * &d1), &d1 * &d2)),
                '-' => Ok(Quotient(&(&n1 * &d2) - &(&n2 * &d1), &d1 * &d2)),
                '*' => Ok(Quotient(&n1 * &n2, &d1 * &d2)),
                '/' => {
                    if n2.is_zero() {
                        return Err(Error::ZeroDenominator);
                    }
                    Ok(Quotient(&n1 * &d2, &d1 * &n2))
                }
                _ => Err(Error::Parse(format!("unknown operator `{op}`"))),
            }
        }
    }
}

fn call(name: &str, arg: Value) -> Result<Value> {
    match (name, arg) {
        ("sin", Value::Const(c)) => Ok(Value::Const(c.sin())),
        ("cos", Value::Const(c)) => Ok(Value::Const(c.cos())),
        ("exp", Value::Const(c)) => Ok(Value::Const(c.exp())),
        ("sqrt", Value::Const(c)) => Ok(Value::Const(c.sqrt())),
        ("sin" | "cos", Value::Linear { slope, offset }) => {
            if !is_real(slope) {
                return Err(Error::Parse(format!("{name} needs a real multiple of z")));
            }
            let g = if name == "sin" {
                ExponentialSum::sin(slope.re, offset)
            } else {
                ExponentialSum::cos(slope.re, offset)
            };
            Ok(Value::Quotient(g, ExponentialSum::one()))
        }
        ("exp", Value::Linear { slope, offset }) => {
            // exp(iλz + b) = e^b · e^{iλz}
            let lambda = slope / Complex64::i();
            if !is_real(lambda) {
                return Err(Error::Parse("exp needs an argument of the form i*λ*z with real λ".into()));
            }
            Ok(Value::Quotient(ExponentialSum::exp_i(lambda.re).scale(offset.exp()), ExponentialSum::one()))
        }
        (name, _) => Err(Error::Parse(format!("{name} of a non-constant expression is not an exponential sum"))),
    }
}

/// Parses a literal into an exponential-sum quotient on `strip`.
pub fn parse_function(src: &str, strip: Strip) -> Result<MeromorphicAP> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { tokens, pos: 0 };
    let ast = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input after token {}", p.pos)));
    }
    let (num, den) = as_quotient(eval(&ast)?)?;
    MeromorphicAP::new(num, den, strip)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::ExtendedComplex;
    use std::f64::consts::{PI, SQRT_2};

    fn at(f: &MeromorphicAP, re: f64, im: f64) -> Complex64 {
        f.eval(Complex64::new(re, im)).unwrap().as_finite().unwrap()
    }

    #[test]
    fn sine_literal() {
        let f = parse_function("sin(pi*z)", Strip::plane()).unwrap();
        assert!((at(&f, 0.5, 0.0) - 1.0).norm() < 1e-15);
        assert_eq!(f.numerator(), &ExponentialSum::sin(PI, Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn quotient_literal_has_poles() {
        let f = parse_function("sin(sqrt(2)*pi*z)/sin(pi*z)", Strip::plane()).unwrap();
        assert_eq!(f.eval(Complex64::new(1.0, 0.0)).unwrap(), ExtendedComplex::Infinity);
        let z = Complex64::new(0.3, 0.4);
        let expected = (z * SQRT_2 * PI).sin() / (z * PI).sin();
        assert!((at(&f, 0.3, 0.4) - expected).norm() < 1e-12);
    }

    #[test]
    fn exponentials_and_constants() {
        let f = parse_function("exp(i*z) + exp(i*sqrt2*z) - 2*i", Strip::plane()).unwrap();
        let z = Complex64::new(1.1, -0.3);
        let i = Complex64::i();
        let expected = (i * z).exp() + (i * SQRT_2 * z).exp() - 2.0 * i;
        assert!((at(&f, 1.1, -0.3) - expected).norm() < 1e-13);
    }

    #[test]
    fn shifted_argument_and_powers() {
        let f = parse_function("sin(pi*(z+1/2))^2 + cos(pi*z - 0.25)", Strip::plane()).unwrap();
        let z = Complex64::new(0.2, 0.1);
        let expected = (PI * (z + 0.5)).sin().powu(2) + (PI * z - 0.25).cos();
        assert!((at(&f, 0.2, 0.1) - expected).norm() < 1e-13);
    }

    #[test]
    fn sum_of_reciprocals_normalizes() {
        let f = parse_function("1/sin(pi*z) + 1/sin((2*sqrt2-1)*pi*z)", Strip::plane()).unwrap();
        let z = Complex64::new(0.31, 0.2);
        let a = 2.0 * SQRT_2 - 1.0;
        let expected = 1.0 / (PI * z).sin() + 1.0 / (a * PI * z).sin();
        assert!((at(&f, 0.31, 0.2) - expected).norm() < 1e-12);
    }

    #[test]
    fn rejects_non_exponential_forms() {
        assert!(parse_function("z", Strip::plane()).is_err());
        assert!(parse_function("sin(z*z)", Strip::plane()).is_err());
        assert!(parse_function("exp(z)", Strip::plane()).is_err());
        assert!(parse_function("sin(i*z)", Strip::plane()).is_err());
        assert!(parse_function("1/(sin(z)-sin(z))", Strip::plane()).is_err());
        assert!(parse_function("sin(pi*z", Strip::plane()).is_err());
        assert!(parse_function("foo(z)", Strip::plane()).is_err());
        assert!(parse_function("", Strip::plane()).is_err());
    }
}
