//! Text syntax for causal type expressions.
//!
//! Atoms: `I`, `ZERO`, `ONE`, `C[n]`, `Q[d1,...,dk]`, `U[n]`, `UQ[d1,...]`.
//! Operators, tightest first: postfix `*` (dual); `<` / `>` (one-way
//! composition, non-associative); `&` / `+` (product / coproduct, left
//! associative); `x` / `|` (tensor / par, left associative); `-o` (hom,
//! right associative). Two distinct operators on the same level never
//! combine without parentheses, and `<`/`>` do not even chain with
//! themselves: the written form always determines one tree.

use crate::causal::{CausalError, CausalSet};
use crate::model::{Backend, ModelObject};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniformAtom {
    Classical(usize),
    Quantum(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeExpr {
    AtomC(usize),
    AtomQ(Vec<usize>),
    AtomU(UniformAtom),
    UnitI,
    Zero,
    One,
    Dual(Box<TypeExpr>),
    Tensor(Box<TypeExpr>, Box<TypeExpr>),
    Par(Box<TypeExpr>, Box<TypeExpr>),
    Seq(Box<TypeExpr>, Box<TypeExpr>),
    SeqRev(Box<TypeExpr>, Box<TypeExpr>),
    With(Box<TypeExpr>, Box<TypeExpr>),
    Plus(Box<TypeExpr>, Box<TypeExpr>),
    Lolli(Box<TypeExpr>, Box<TypeExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {pos}: {kind}")]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Lexical(String),
    #[error("operators `{a}` and `{b}` need parentheses to combine")]
    AmbiguousMixing { a: &'static str, b: &'static str },
    #[error("{0}")]
    Arity(String),
    #[error("unexpected {0}")]
    UnexpectedToken(String),
    #[error("unexpected end of input")]
    UnexpectedEnd,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    KwI,
    KwZero,
    KwOne,
    KwC,
    KwQ,
    KwU,
    KwUq,
    Number(usize),
    LBracket,
    RBracket,
    Comma,
    LParen,
    RParen,
    Star,
    Before,
    After,
    TensorOp,
    ParOp,
    WithOp,
    PlusOp,
    LolliOp,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::KwI => "`I`".into(),
            Tok::KwZero => "`ZERO`".into(),
            Tok::KwOne => "`ONE`".into(),
            Tok::KwC => "`C`".into(),
            Tok::KwQ => "`Q`".into(),
            Tok::KwU => "`U`".into(),
            Tok::KwUq => "`UQ`".into(),
            Tok::Number(n) => format!("number {n}"),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Star => "`*`".into(),
            Tok::Before => "`<`".into(),
            Tok::After => "`>`".into(),
            Tok::TensorOp => "`x`".into(),
            Tok::ParOp => "`|`".into(),
            Tok::WithOp => "`&`".into(),
            Tok::PlusOp => "`+`".into(),
            Tok::LolliOp => "`-o`".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let pos = i;
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'[' => out.push((Tok::LBracket, pos)),
            b']' => out.push((Tok::RBracket, pos)),
            b',' => out.push((Tok::Comma, pos)),
            b'(' => out.push((Tok::LParen, pos)),
            b')' => out.push((Tok::RParen, pos)),
            b'*' => out.push((Tok::Star, pos)),
            b'<' => out.push((Tok::Before, pos)),
            b'>' => out.push((Tok::After, pos)),
            b'|' => out.push((Tok::ParOp, pos)),
            b'&' => out.push((Tok::WithOp, pos)),
            b'+' => out.push((Tok::PlusOp, pos)),
            b'-' => {
                if bytes.get(i + 1) == Some(&b'o') {
                    out.push((Tok::LolliOp, pos));
                    i += 1;
                } else {
                    return Err(ParseError {
                        pos,
                        kind: ParseErrorKind::Lexical("`-` must be part of `-o`".into()),
                    });
                }
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &src[start..i];
                let n: usize = text.parse().map_err(|_| ParseError {
                    pos: start,
                    kind: ParseErrorKind::Lexical(format!("number {text} is too large")),
                })?;
                out.push((Tok::Number(n), start));
                continue;
            }
            b'A'..=b'Z' | b'a'..=b'z' => {
                // Every word is a fixed keyword; take the longest match so
                // operators and atoms may abut without whitespace.
                const KEYWORDS: [(&str, Tok); 8] = [
                    ("ZERO", Tok::KwZero),
                    ("ONE", Tok::KwOne),
                    ("UQ", Tok::KwUq),
                    ("I", Tok::KwI),
                    ("C", Tok::KwC),
                    ("Q", Tok::KwQ),
                    ("U", Tok::KwU),
                    ("x", Tok::TensorOp),
                ];
                let rest = &src[i..];
                let Some((word, tok)) =
                    KEYWORDS.iter().find(|(w, _)| rest.starts_with(w))
                else {
                    let end = i + rest
                        .bytes()
                        .take_while(|b| b.is_ascii_alphabetic())
                        .count();
                    return Err(ParseError {
                        pos: i,
                        kind: ParseErrorKind::Lexical(format!(
                            "unknown word `{}`",
                            &src[i..end]
                        )),
                    });
                };
                out.push((tok.clone(), i));
                i += word.len();
                continue;
            }
            _ => {
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::Lexical(format!(
                        "unexpected character `{}`",
                        &src[pos..pos + 1]
                    )),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        match self.bump() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(ParseError {
                pos: self.toks[self.at - 1].1,
                kind: ParseErrorKind::UnexpectedToken(format!(
                    "{} where {} was expected",
                    t.describe(),
                    want.describe()
                )),
            }),
            None => Err(ParseError { pos: self.end, kind: ParseErrorKind::UnexpectedEnd }),
        }
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        match self.bump() {
            Some(Tok::Number(n)) => Ok(n),
            Some(t) => Err(ParseError {
                pos: self.toks[self.at - 1].1,
                kind: ParseErrorKind::UnexpectedToken(format!(
                    "{} where a number was expected",
                    t.describe()
                )),
            }),
            None => Err(ParseError { pos: self.end, kind: ParseErrorKind::UnexpectedEnd }),
        }
    }

    fn positive(&mut self, what: &str) -> Result<usize, ParseError> {
        let pos = self.pos();
        let n = self.number()?;
        if n == 0 {
            return Err(ParseError {
                pos,
                kind: ParseErrorKind::Arity(format!("{what} must be positive")),
            });
        }
        Ok(n)
    }

    fn dims(&mut self, what: &str) -> Result<Vec<usize>, ParseError> {
        self.expect(Tok::LBracket)?;
        let mut dims = vec![self.positive(what)?];
        loop {
            match self.peek() {
                Some(Tok::Comma) => {
                    self.bump();
                    dims.push(self.positive(what)?);
                }
                Some(Tok::RBracket) => {
                    self.bump();
                    return Ok(dims);
                }
                _ => {
                    let pos = self.pos();
                    return Err(match self.bump() {
                        Some(t) => ParseError {
                            pos,
                            kind: ParseErrorKind::UnexpectedToken(format!(
                                "{} inside a dimension list",
                                t.describe()
                            )),
                        },
                        None => ParseError { pos, kind: ParseErrorKind::UnexpectedEnd },
                    });
                }
            }
        }
    }

    fn bracketed(&mut self, what: &str) -> Result<usize, ParseError> {
        self.expect(Tok::LBracket)?;
        let n = self.positive(what)?;
        self.expect(Tok::RBracket)?;
        Ok(n)
    }

    fn atom(&mut self) -> Result<TypeExpr, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::KwI) => Ok(TypeExpr::UnitI),
            Some(Tok::KwZero) => Ok(TypeExpr::Zero),
            Some(Tok::KwOne) => Ok(TypeExpr::One),
            Some(Tok::KwC) => Ok(TypeExpr::AtomC(self.bracketed("classical dimension")?)),
            Some(Tok::KwQ) => Ok(TypeExpr::AtomQ(self.dims("block dimension")?)),
            Some(Tok::KwU) => Ok(TypeExpr::AtomU(UniformAtom::Classical(
                self.bracketed("classical dimension")?,
            ))),
            Some(Tok::KwUq) => {
                Ok(TypeExpr::AtomU(UniformAtom::Quantum(self.dims("block dimension")?)))
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(t) => Err(ParseError {
                pos,
                kind: ParseErrorKind::UnexpectedToken(format!(
                    "{} where a type was expected",
                    t.describe()
                )),
            }),
            None => Err(ParseError { pos: self.end, kind: ParseErrorKind::UnexpectedEnd }),
        }
    }

    fn dual_postfix(&mut self) -> Result<TypeExpr, ParseError> {
        let mut e = self.atom()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            e = TypeExpr::Dual(Box::new(e));
        }
        Ok(e)
    }

    fn one_way(&mut self) -> Result<TypeExpr, ParseError> {
        let lhs = self.dual_postfix()?;
        let op = match self.peek() {
            Some(Tok::Before) => Tok::Before,
            Some(Tok::After) => Tok::After,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.dual_postfix()?;
        if let Some(next @ (Tok::Before | Tok::After)) = self.peek() {
            let a = if op == Tok::Before { "<" } else { ">" };
            let b = if *next == Tok::Before { "<" } else { ">" };
            return Err(ParseError {
                pos: self.pos(),
                kind: ParseErrorKind::AmbiguousMixing { a, b },
            });
        }
        Ok(match op {
            Tok::Before => TypeExpr::Seq(Box::new(lhs), Box::new(rhs)),
            _ => TypeExpr::SeqRev(Box::new(lhs), Box::new(rhs)),
        })
    }

    fn additive(&mut self) -> Result<TypeExpr, ParseError> {
        let mut e = self.one_way()?;
        let mut seen: Option<Tok> = None;
        loop {
            let op = match self.peek() {
                Some(Tok::WithOp) => Tok::WithOp,
                Some(Tok::PlusOp) => Tok::PlusOp,
                _ => return Ok(e),
            };
            if let Some(prev) = &seen {
                if *prev != op {
                    let (a, b) = if *prev == Tok::WithOp { ("&", "+") } else { ("+", "&") };
                    return Err(ParseError {
                        pos: self.pos(),
                        kind: ParseErrorKind::AmbiguousMixing { a, b },
                    });
                }
            }
            self.bump();
            let rhs = self.one_way()?;
            e = match op {
                Tok::WithOp => TypeExpr::With(Box::new(e), Box::new(rhs)),
                _ => TypeExpr::Plus(Box::new(e), Box::new(rhs)),
            };
            seen = Some(op);
        }
    }

    fn multiplicative(&mut self) -> Result<TypeExpr, ParseError> {
        let mut e = self.additive()?;
        let mut seen: Option<Tok> = None;
        loop {
            let op = match self.peek() {
                Some(Tok::TensorOp) => Tok::TensorOp,
                Some(Tok::ParOp) => Tok::ParOp,
                _ => return Ok(e),
            };
            if let Some(prev) = &seen {
                if *prev != op {
                    let (a, b) = if *prev == Tok::TensorOp { ("x", "|") } else { ("|", "x") };
                    return Err(ParseError {
                        pos: self.pos(),
                        kind: ParseErrorKind::AmbiguousMixing { a, b },
                    });
                }
            }
            self.bump();
            let rhs = self.additive()?;
            e = match op {
                Tok::TensorOp => TypeExpr::Tensor(Box::new(e), Box::new(rhs)),
                _ => TypeExpr::Par(Box::new(e), Box::new(rhs)),
            };
            seen = Some(op);
        }
    }

    fn expr(&mut self) -> Result<TypeExpr, ParseError> {
        let lhs = self.multiplicative()?;
        if self.peek() == Some(&Tok::LolliOp) {
            self.bump();
            let rhs = self.expr()?;
            return Ok(TypeExpr::Lolli(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }
}

pub fn parse(src: &str) -> Result<TypeExpr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, end: src.len() };
    let e = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(ParseError {
            pos: p.pos(),
            kind: ParseErrorKind::UnexpectedToken(format!("{} after the expression", t.describe())),
        });
    }
    Ok(e)
}

/// Binding level of the outermost construct; smaller binds tighter.
fn level(e: &TypeExpr) -> u8 {
    match e {
        TypeExpr::AtomC(_)
        | TypeExpr::AtomQ(_)
        | TypeExpr::AtomU(_)
        | TypeExpr::UnitI
        | TypeExpr::Zero
        | TypeExpr::One
        | TypeExpr::Dual(_) => 1,
        TypeExpr::Seq(..) | TypeExpr::SeqRev(..) => 2,
        TypeExpr::With(..) | TypeExpr::Plus(..) => 3,
        TypeExpr::Tensor(..) | TypeExpr::Par(..) => 4,
        TypeExpr::Lolli(..) => 5,
    }
}

fn op_token(e: &TypeExpr) -> &'static str {
    match e {
        TypeExpr::Seq(..) => "<",
        TypeExpr::SeqRev(..) => ">",
        TypeExpr::With(..) => "&",
        TypeExpr::Plus(..) => "+",
        TypeExpr::Tensor(..) => "x",
        TypeExpr::Par(..) => "|",
        TypeExpr::Lolli(..) => "-o",
        _ => unreachable!("atoms and duals carry no infix operator"),
    }
}

fn dims_text(dims: &[usize]) -> String {
    dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
}

fn render_into(e: &TypeExpr, out: &mut String) {
    let wrap = |child: &TypeExpr, needs: bool, out: &mut String| {
        if needs {
            out.push('(');
            render_into(child, out);
            out.push(')');
        } else {
            render_into(child, out);
        }
    };
    match e {
        TypeExpr::AtomC(n) => out.push_str(&format!("C[{n}]")),
        TypeExpr::AtomQ(dims) => out.push_str(&format!("Q[{}]", dims_text(dims))),
        TypeExpr::AtomU(UniformAtom::Classical(n)) => out.push_str(&format!("U[{n}]")),
        TypeExpr::AtomU(UniformAtom::Quantum(dims)) => {
            out.push_str(&format!("UQ[{}]", dims_text(dims)))
        }
        TypeExpr::UnitI => out.push('I'),
        TypeExpr::Zero => out.push_str("ZERO"),
        TypeExpr::One => out.push_str("ONE"),
        TypeExpr::Dual(inner) => {
            wrap(inner, level(inner) > 1, out);
            out.push('*');
        }
        TypeExpr::Seq(a, b) | TypeExpr::SeqRev(a, b) => {
            // Non-associative: any operator child needs parentheses.
            wrap(a, level(a) >= 2, out);
            out.push_str(&format!(" {} ", op_token(e)));
            wrap(b, level(b) >= 2, out);
        }
        TypeExpr::With(a, b) | TypeExpr::Plus(a, b) => {
            let lv = 3;
            wrap(a, level(a) > lv || (level(a) == lv && op_token(a) != op_token(e)), out);
            out.push_str(&format!(" {} ", op_token(e)));
            wrap(b, level(b) >= lv, out);
        }
        TypeExpr::Tensor(a, b) | TypeExpr::Par(a, b) => {
            let lv = 4;
            wrap(a, level(a) > lv || (level(a) == lv && op_token(a) != op_token(e)), out);
            out.push_str(&format!(" {} ", op_token(e)));
            wrap(b, level(b) >= lv, out);
        }
        TypeExpr::Lolli(a, b) => {
            wrap(a, level(a) >= 5, out);
            out.push_str(" -o ");
            wrap(b, level(b) > 5, out);
        }
    }
}

/// Canonical text form with minimal parentheses; reparsing returns the
/// identical tree.
pub fn render(e: &TypeExpr) -> String {
    let mut s = String::new();
    render_into(e, &mut s);
    s
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Causal(#[from] CausalError),
    #[error("atom `{atom}` is not available in the {} backend", backend.name())]
    AtomBackend { atom: String, backend: Backend },
}

fn atom_object(
    backend: Backend,
    atom: &str,
    classical: Option<usize>,
    quantum: Option<&[usize]>,
) -> Result<ModelObject, EvalError> {
    let object = match (backend, classical, quantum) {
        (Backend::ClassicalNonneg | Backend::ClassicalAffine, Some(n), _) => {
            ModelObject::classical(n)
        }
        // A classical atom in the quantum backend: n one-dimensional blocks.
        (Backend::QuantumCp, Some(n), _) => ModelObject::quantum(vec![1; n]),
        (Backend::QuantumCp, None, Some(dims)) => ModelObject::quantum(dims.to_vec()),
        (_, None, Some(_)) => {
            return Err(EvalError::AtomBackend { atom: atom.into(), backend })
        }
        _ => unreachable!("atom carries exactly one payload"),
    };
    object.map_err(|e| EvalError::Causal(CausalError::Model(e)))
}

/// Structural evaluation into a causal set over the given backend.
pub fn eval(e: &TypeExpr, backend: Backend) -> Result<CausalSet, EvalError> {
    Ok(match e {
        TypeExpr::AtomC(n) => {
            CausalSet::first_order(backend, atom_object(backend, "C", Some(*n), None)?)
                .map_err(EvalError::Causal)?
        }
        TypeExpr::AtomQ(dims) => {
            let obj = atom_object(backend, "Q", None, Some(dims))?;
            CausalSet::first_order(backend, obj).map_err(EvalError::Causal)?
        }
        TypeExpr::AtomU(UniformAtom::Classical(n)) => {
            let obj = atom_object(backend, "U", Some(*n), None)?;
            CausalSet::singleton_uniform(backend, obj).map_err(EvalError::Causal)?
        }
        TypeExpr::AtomU(UniformAtom::Quantum(dims)) => {
            let obj = atom_object(backend, "UQ", None, Some(dims))?;
            CausalSet::singleton_uniform(backend, obj).map_err(EvalError::Causal)?
        }
        TypeExpr::UnitI => CausalSet::unit(backend)?,
        TypeExpr::Zero => CausalSet::zero(backend)?,
        TypeExpr::One => CausalSet::one(backend)?,
        TypeExpr::Dual(a) => eval(a, backend)?.dual()?,
        TypeExpr::Tensor(a, b) => eval(a, backend)?.tensor(&eval(b, backend)?)?,
        TypeExpr::Par(a, b) => eval(a, backend)?.par(&eval(b, backend)?)?,
        TypeExpr::Seq(a, b) => eval(a, backend)?.seq(&eval(b, backend)?)?,
        TypeExpr::SeqRev(a, b) => eval(a, backend)?.seq_rev(&eval(b, backend)?)?,
        TypeExpr::With(a, b) => eval(a, backend)?.with_prod(&eval(b, backend)?)?,
        TypeExpr::Plus(a, b) => eval(a, backend)?.plus_coprod(&eval(b, backend)?)?,
        TypeExpr::Lolli(a, b) => eval(a, backend)?.lolli(&eval(b, backend)?)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn b(e: TypeExpr) -> Box<TypeExpr> {
        Box::new(e)
    }

    #[test]
    fn frozen_parses() {
        assert_eq!(
            parse("C[2]* < C[2]").unwrap(),
            TypeExpr::Seq(b(TypeExpr::Dual(b(TypeExpr::AtomC(2)))), b(TypeExpr::AtomC(2)))
        );
        assert_eq!(
            parse("(C[2] -o C[2]) x (C[2] -o C[2])").unwrap(),
            TypeExpr::Tensor(
                b(TypeExpr::Lolli(b(TypeExpr::AtomC(2)), b(TypeExpr::AtomC(2)))),
                b(TypeExpr::Lolli(b(TypeExpr::AtomC(2)), b(TypeExpr::AtomC(2)))),
            )
        );
        assert_eq!(parse("Q[2,3]").unwrap(), TypeExpr::AtomQ(vec![2, 3]));
        assert_eq!(parse("UQ[2]").unwrap(), TypeExpr::AtomU(UniformAtom::Quantum(vec![2])));
        assert_eq!(parse(" C[2]\tx\nC[2] ").unwrap(), parse("C[2]xC[2]").unwrap());
    }

    #[test]
    fn mixing_same_level_is_rejected_with_position() {
        let err = parse("C[2] x C[2] | C[2]").unwrap_err();
        assert_eq!(err.pos, 12);
        assert_eq!(err.kind, ParseErrorKind::AmbiguousMixing { a: "x", b: "|" });

        let err = parse("I & I + I").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::AmbiguousMixing { a: "&", b: "+" }));

        // One-way composition does not even self-chain.
        let err = parse("C[2] < C[2] < C[2]").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::AmbiguousMixing { a: "<", b: "<" });
        let err = parse("C[2] < C[2] > C[2]").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::AmbiguousMixing { a: "<", b: ">" });

        // Parenthesized forms are fine.
        assert!(parse("(C[2] x C[2]) | C[2]").is_ok());
        assert!(parse("(C[2] < C[2]) < C[2]").is_ok());
    }

    #[test]
    fn lexical_and_arity_errors_carry_positions() {
        let err = parse("C[2] $ C[2]").unwrap_err();
        assert_eq!(err.pos, 5);
        assert!(matches!(err.kind, ParseErrorKind::Lexical(_)));

        let err = parse("C[0]").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Arity(_)));

        let err = parse("Q[]").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::UnexpectedToken(_)));

        let err = parse("C[2] -").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Lexical(_)));

        let err = parse("C[2] x").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedEnd);
    }

    #[test]
    fn frozen_renders() {
        assert_eq!(
            render(&TypeExpr::Seq(b(TypeExpr::Dual(b(TypeExpr::AtomC(2)))), b(TypeExpr::AtomC(2)))),
            "C[2]* < C[2]"
        );
        assert_eq!(render(&TypeExpr::Dual(b(TypeExpr::Dual(b(TypeExpr::AtomC(3)))))), "C[3]**");
        // Same-operator nesting keeps the left-leaning side bare.
        let e = parse("I + I + I").unwrap();
        assert_eq!(render(&e), "I + I + I");
        let right = TypeExpr::Plus(b(TypeExpr::UnitI), b(parse("I + I").unwrap()));
        assert_eq!(render(&right), "I + (I + I)");
        // Hom is right-associative.
        assert_eq!(render(&parse("C[2] -o C[2] -o C[2]").unwrap()), "C[2] -o C[2] -o C[2]");
        assert_eq!(render(&parse("(C[2] -o C[2]) -o C[2]").unwrap()), "(C[2] -o C[2]) -o C[2]");
    }

    fn random_expr(rng: &mut ChaCha8Rng, depth: usize) -> TypeExpr {
        if depth == 0 {
            return match rng.gen_range(0..6) {
                0 => TypeExpr::AtomC(rng.gen_range(1..4)),
                1 => TypeExpr::AtomQ(vec![rng.gen_range(1..3); rng.gen_range(1..3)]),
                2 => TypeExpr::AtomU(UniformAtom::Classical(rng.gen_range(1..4))),
                3 => TypeExpr::UnitI,
                4 => TypeExpr::Zero,
                _ => TypeExpr::One,
            };
        }
        let l = b(random_expr(rng, depth - 1));
        let r = b(random_expr(rng, depth - 1));
        match rng.gen_range(0..9) {
            0 => TypeExpr::Dual(l),
            1 => TypeExpr::Tensor(l, r),
            2 => TypeExpr::Par(l, r),
            3 => TypeExpr::Seq(l, r),
            4 => TypeExpr::SeqRev(l, r),
            5 => TypeExpr::With(l, r),
            6 => TypeExpr::Plus(l, r),
            7 => TypeExpr::Lolli(l, r),
            _ => random_expr(rng, depth - 1),
        }
    }

    #[test]
    fn render_then_parse_is_identity_on_random_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..500 {
            let e = random_expr(&mut rng, 4);
            let text = render(&e);
            let back = parse(&text).unwrap_or_else(|err| panic!("`{text}`: {err}"));
            assert_eq!(back, e, "`{text}` reparsed differently");
            // Canonical text is a fixed point of the round trip.
            assert_eq!(render(&back), text);
        }
    }

    #[test]
    fn eval_frozen_examples() {
        let c2 = eval(&parse("C[2]").unwrap(), Backend::ClassicalNonneg).unwrap();
        assert_eq!(
            c2,
            CausalSet::first_order(Backend::ClassicalNonneg, ModelObject::Classical(2)).unwrap()
        );

        let grid = eval(
            &parse("(I+I)&(I+I) x (I+I)&(I+I)").unwrap(),
            Backend::ClassicalNonneg,
        )
        .unwrap();
        assert_eq!(grid.ambient(), 16);

        let mixed = eval(&parse("U[2] x C[3]").unwrap(), Backend::ClassicalNonneg).unwrap();
        assert_eq!(mixed.ambient(), 6);
        // One frozen factor: the free directions come from the second only.
        assert_eq!(mixed.body.dim(), Some(2));
    }

    #[test]
    fn eval_maps_atoms_by_backend() {
        let q = eval(&parse("C[2]").unwrap(), Backend::QuantumCp).unwrap();
        assert_eq!(q.object, ModelObject::quantum(vec![1, 1]).unwrap());

        let err = eval(&parse("Q[2]").unwrap(), Backend::ClassicalNonneg).unwrap_err();
        assert!(matches!(err, EvalError::AtomBackend { .. }));
        let err = eval(&parse("UQ[2]").unwrap(), Backend::ClassicalAffine).unwrap_err();
        assert!(matches!(err, EvalError::AtomBackend { .. }));

        let u = eval(&parse("UQ[2]").unwrap(), Backend::QuantumCp).unwrap();
        assert_eq!(u.body.dim(), Some(0));
    }

    #[test]
    fn eval_is_structural_on_operators() {
        let b_ = Backend::ClassicalNonneg;
        let lhs = eval(&parse("C[2] -o C[2]").unwrap(), b_).unwrap();
        let rhs = eval(&parse("C[2]").unwrap(), b_)
            .unwrap()
            .lolli(&eval(&parse("C[2]").unwrap(), b_).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);

        let s = eval(&parse("C[2]* < C[2]").unwrap(), b_).unwrap();
        let c2 = eval(&parse("C[2]").unwrap(), b_).unwrap();
        assert_eq!(s, c2.dual().unwrap().seq(&c2).unwrap());
    }
}
