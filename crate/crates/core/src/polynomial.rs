//! Two-variable words in both brace operations, written in postfix form.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::brace::FiniteBrace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Token {
    X,
    Y,
    /// additive inverse
    Neg,
    /// multiplicative inverse
    Inv,
    Add,
    Mul,
}

impl Token {
    fn arity(self) -> usize {
        match self {
            Token::X | Token::Y => 0,
            Token::Neg | Token::Inv => 1,
            Token::Add | Token::Mul => 2,
        }
    }
}

/// A well-formed postfix word; evaluation order is fixed by the token order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolynomialWord {
    tokens: Vec<Token>,
}

pub const MAX_WORD_LENGTH: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordSource {
    /// Uniform choice among the tokens that keep the word completable.
    Uniform,
    /// Built from words vanishing at 0 combined by absorbing operations.
    Structured,
}

use Token::*;

fn bin(a: &[Token], b: &[Token], t: Token) -> Vec<Token> {
    let mut v = Vec::with_capacity(a.len() + b.len() + 1);
    v.extend_from_slice(a);
    v.extend_from_slice(b);
    v.push(t);
    v
}

fn un(a: &[Token], t: Token) -> Vec<Token> {
    let mut v = a.to_vec();
    v.push(t);
    v
}

fn sub(a: &[Token], b: &[Token]) -> Vec<Token> {
    bin(a, &un(b, Neg), Add)
}

/// `−a + ab − b`
fn star(a: &[Token], b: &[Token]) -> Vec<Token> {
    bin(&bin(&un(a, Neg), &bin(a, b, Mul), Add), &un(b, Neg), Add)
}

/// `−a − b + a + b`
fn add_comm(a: &[Token], b: &[Token]) -> Vec<Token> {
    bin(&bin(&bin(&un(a, Neg), &un(b, Neg), Add), a, Add), b, Add)
}

/// `a⁻¹ b⁻¹ a b`
fn mul_comm(a: &[Token], b: &[Token]) -> Vec<Token> {
    bin(&bin(&bin(&un(a, Inv), &un(b, Inv), Mul), a, Mul), b, Mul)
}

/// `ab − (a + b)`
fn gap(a: &[Token], b: &[Token]) -> Vec<Token> {
    sub(&bin(a, b, Mul), &bin(a, b, Add))
}

impl PolynomialWord {
    pub fn new(tokens: Vec<Token>) -> Option<Self> {
        let mut depth: isize = 0;
        for t in &tokens {
            let a = t.arity() as isize;
            if depth < a {
                return None;
            }
            depth += 1 - a;
        }
        (depth == 1).then_some(PolynomialWord { tokens })
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// `[x,y]_+`, `[x,y]_·` and `xy − (x + y)`.
    pub fn canonical() -> [PolynomialWord; 3] {
        [
            PolynomialWord {
                tokens: add_comm(&[X], &[Y]),
            },
            PolynomialWord {
                tokens: mul_comm(&[X], &[Y]),
            },
            PolynomialWord {
                tokens: gap(&[X], &[Y]),
            },
        ]
    }

    pub fn eval(&self, b: &FiniteBrace, x: usize, y: usize) -> usize {
        let mut stack = [0usize; MAX_WORD_LENGTH * 4];
        let mut sp = 0;
        for &t in &self.tokens {
            match t {
                X => {
                    stack[sp] = x;
                    sp += 1;
                }
                Y => {
                    stack[sp] = y;
                    sp += 1;
                }
                Neg => stack[sp - 1] = b.neg(stack[sp - 1]),
                Inv => stack[sp - 1] = b.inv(stack[sp - 1]),
                Add => {
                    sp -= 1;
                    stack[sp - 1] = b.add(stack[sp - 1], stack[sp]);
                }
                Mul => {
                    sp -= 1;
                    stack[sp - 1] = b.mul(stack[sp - 1], stack[sp]);
                }
            }
        }
        stack[0]
    }

    /// Values at every `(x, y)`, row-major.
    pub fn eval_table(&self, b: &FiniteBrace) -> Vec<u8> {
        let n = b.order();
        let xs: Vec<u8> = (0..n * n).map(|k| (k / n) as u8).collect();
        let ys: Vec<u8> = (0..n * n).map(|k| (k % n) as u8).collect();
        let mut stack: Vec<Vec<u8>> = Vec::new();
        for &t in &self.tokens {
            match t {
                X => stack.push(xs.clone()),
                Y => stack.push(ys.clone()),
                Neg | Inv => {
                    let top = stack.last_mut().unwrap();
                    for v in top.iter_mut() {
                        *v = if t == Neg {
                            b.neg(*v as usize)
                        } else {
                            b.inv(*v as usize)
                        } as u8;
                    }
                }
                Add | Mul => {
                    let r = stack.pop().unwrap();
                    let l = stack.last_mut().unwrap();
                    for (v, w) in l.iter_mut().zip(&r) {
                        *v = if t == Add {
                            b.add(*v as usize, *w as usize)
                        } else {
                            b.mul(*v as usize, *w as usize)
                        } as u8;
                    }
                }
            }
        }
        stack.pop().unwrap()
    }

    /// `p(x, 0) = 0` and `p(0, y) = 0` for every element.
    pub fn is_absorbing(&self, b: &FiniteBrace) -> bool {
        (0..b.order()).all(|v| self.eval(b, v, 0) == 0 && self.eval(b, 0, v) == 0)
    }

    pub fn random<R: Rng>(rng: &mut R, source: WordSource) -> PolynomialWord {
        match source {
            WordSource::Uniform => Self::uniform(rng),
            WordSource::Structured => loop {
                let w = structured(rng, 2);
                if w.len() <= MAX_WORD_LENGTH {
                    return PolynomialWord { tokens: w };
                }
            },
        }
    }

    fn uniform<R: Rng>(rng: &mut R) -> PolynomialWord {
        let len = rng.gen_range(1..=MAX_WORD_LENGTH);
        let mut tokens = Vec::with_capacity(len);
        let mut depth = 0usize;
        for pos in 0..len {
            let remaining = len - pos - 1;
            let mut allowed: Vec<Token> = Vec::with_capacity(6);
            if depth <= remaining {
                allowed.extend([X, Y]);
            }
            if depth >= 1 && depth - 1 <= remaining {
                allowed.extend([Neg, Inv]);
            }
            if depth >= 2 && depth - 1 <= remaining + 1 {
                allowed.extend([Add, Mul]);
            }
            let t = allowed[rng.gen_range(0..allowed.len())];
            depth = depth + 1 - t.arity();
            tokens.push(t);
        }
        PolynomialWord::new(tokens).expect("grammar keeps the word well formed")
    }
}

/// A short word in a single variable (so it vanishes when the variable is 0).
fn one_variable<R: Rng>(rng: &mut R, var: Token) -> Vec<Token> {
    let mut w = vec![var];
    for _ in 0..rng.gen_range(0..3) {
        w = match rng.gen_range(0..4) {
            0 => un(&w, Neg),
            1 => un(&w, Inv),
            2 => bin(&w, &[var], Add),
            _ => bin(&w, &[var], Mul),
        };
    }
    w
}

/// An arbitrary short word in both variables.
fn any_word<R: Rng>(rng: &mut R) -> Vec<Token> {
    let leaf = |rng: &mut R| if rng.gen_bool(0.5) { vec![X] } else { vec![Y] };
    let mut w = leaf(rng);
    if rng.gen_bool(0.5) {
        let op = if rng.gen_bool(0.5) { Add } else { Mul };
        w = bin(&w, &leaf(rng), op);
    }
    if rng.gen_bool(0.3) {
        w = un(&w, if rng.gen_bool(0.5) { Neg } else { Inv });
    }
    w
}

fn structured<R: Rng>(rng: &mut R, depth: usize) -> Vec<Token> {
    if depth == 0 || rng.gen_bool(0.4) {
        let u = one_variable(rng, X);
        let v = one_variable(rng, Y);
        let (a, c) = if rng.gen_bool(0.5) { (u, v) } else { (v, u) };
        return match rng.gen_range(0..4) {
            0 => star(&a, &c),
            1 => add_comm(&a, &c),
            2 => mul_comm(&a, &c),
            _ => gap(&a, &c),
        };
    }
    let p = structured(rng, depth - 1);
    match rng.gen_range(0..9) {
        0 => un(&p, Neg),
        1 => un(&p, Inv),
        2 => bin(&p, &structured(rng, depth - 1), Add),
        3 => bin(&p, &structured(rng, depth - 1), Mul),
        4 => {
            let w = any_word(rng);
            sub(&bin(&w, &p, Add), &w)
        }
        5 => {
            let w = any_word(rng);
            bin(&bin(&w, &p, Mul), &un(&w, Inv), Mul)
        }
        6 => {
            // λ_w(p)
            let w = any_word(rng);
            bin(&un(&w, Neg), &bin(&w, &p, Mul), Add)
        }
        7 => star(&p, &any_word(rng)),
        _ => star(&any_word(rng), &p),
    }
}

impl fmt::Display for PolynomialWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut stack: Vec<String> = Vec::new();
        for &t in &self.tokens {
            match t {
                X => stack.push("x".into()),
                Y => stack.push("y".into()),
                Neg => {
                    let a = stack.pop().unwrap();
                    stack.push(format!("-{a}"));
                }
                Inv => {
                    let a = stack.pop().unwrap();
                    stack.push(format!("{a}^-1"));
                }
                Add | Mul => {
                    let r = stack.pop().unwrap();
                    let l = stack.pop().unwrap();
                    let op = if t == Add { " + " } else { " * " };
                    stack.push(format!("({l}{op}{r})"));
                }
            }
        }
        write!(f, "{}", stack.pop().unwrap_or_default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn uniform_words_are_well_formed_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..2000 {
            let w = PolynomialWord::random(&mut rng, WordSource::Uniform);
            assert!(!w.is_empty() && w.len() <= MAX_WORD_LENGTH);
            assert!(PolynomialWord::new(w.tokens().to_vec()).is_some());
        }
    }

    #[test]
    fn display_of_canonical_words() {
        let [p1, p2, p3] = PolynomialWord::canonical();
        assert_eq!(p1.to_string(), "(((-x + -y) + x) + y)");
        assert_eq!(p2.to_string(), "(((x^-1 * y^-1) * x) * y)");
        assert_eq!(p3.to_string(), "((x * y) + -(x + y))");
    }

    #[test]
    fn malformed_words_rejected() {
        assert!(PolynomialWord::new(vec![X, Y]).is_none());
        assert!(PolynomialWord::new(vec![Add]).is_none());
        assert!(PolynomialWord::new(vec![X, Y, Add]).is_some());
    }
}
