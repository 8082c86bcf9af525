//! A small expression language for describing graphs on the command line:
//! atoms `P<n>` (path), `C<n>` (cycle), `K<n>` (complete), `file:<path>`,
//! and the binary operators `box` (strong product), `cart` (cartesian
//! product), `lex` (lexicographic product), `+` (join), and `u` (disjoint
//! union). Products bind tighter than `+`/`u`; everything associates left.

use crate::error::{Error, Result};
use crate::graph::{
    cartesian_product, complete_graph, cycle_graph, lexicographic_product, parse_graph, path_graph,
    strong_product, Graph,
};

/// Abstract syntax of a graph expression.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GraphExpr {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    File(String),
    Strong(Box<GraphExpr>, Box<GraphExpr>),
    Cartesian(Box<GraphExpr>, Box<GraphExpr>),
    Lexicographic(Box<GraphExpr>, Box<GraphExpr>),
    Join(Box<GraphExpr>, Box<GraphExpr>),
    Union(Box<GraphExpr>, Box<GraphExpr>),
}

impl GraphExpr {
    /// 2 for products, 1 for join/union, 3 for atoms.
    fn precedence(&self) -> u8 {
        match self {
            GraphExpr::Strong(..) | GraphExpr::Cartesian(..) | GraphExpr::Lexicographic(..) => 2,
            GraphExpr::Join(..) | GraphExpr::Union(..) => 1,
            _ => 3,
        }
    }
}

impl std::fmt::Display for GraphExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fn side(f: &mut std::fmt::Formatter<'_>, e: &GraphExpr, parent: u8, right: bool) -> std::fmt::Result {
            // Left-associative grammar: a right child at the same level
            // needs parentheses, a left child does not.
            let needs = e.precedence() < parent || (right && e.precedence() == parent);
            if needs {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        let binary = |f: &mut std::fmt::Formatter<'_>, l: &GraphExpr, op: &str, r: &GraphExpr, prec: u8| {
            side(f, l, prec, false)?;
            write!(f, " {op} ")?;
            side(f, r, prec, true)
        };
        match self {
            GraphExpr::Path(n) => write!(f, "P{n}"),
            GraphExpr::Cycle(n) => write!(f, "C{n}"),
            GraphExpr::Complete(n) => write!(f, "K{n}"),
            GraphExpr::File(p) => write!(f, "file:{p}"),
            GraphExpr::Strong(l, r) => binary(f, l, "box", r, 2),
            GraphExpr::Cartesian(l, r) => binary(f, l, "cart", r, 2),
            GraphExpr::Lexicographic(l, r) => binary(f, l, "lex", r, 2),
            GraphExpr::Join(l, r) => binary(f, l, "+", r, 1),
            GraphExpr::Union(l, r) => binary(f, l, "u", r, 1),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Token {
    LParen,
    RParen,
    Plus,
    Word(String),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'(' => {
                tokens.push((i, Token::LParen));
                i += 1;
            }
            b')' => {
                tokens.push((i, Token::RParen));
                i += 1;
            }
            b'+' => {
                tokens.push((i, Token::Plus));
                i += 1;
            }
            _ => {
                let start = i;
                while i < bytes.len() && !matches!(bytes[i], b' ' | b'\t' | b'\n' | b'\r' | b'(' | b')' | b'+') {
                    i += 1;
                }
                tokens.push((start, Token::Word(text[start..i].to_string())));
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    _text: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&(usize, Token)> {
        self.tokens.get(self.pos)
    }

    fn err(&self, offset: usize, msg: impl Into<String>) -> Error {
        Error::ExprSyntax { offset, msg: msg.into() }
    }

    fn expr(&mut self) -> Result<GraphExpr> {
        let mut left = self.term()?;
        while let Some((_, tok)) = self.peek() {
            let op = match tok {
                Token::Plus => "+",
                Token::Word(w) if w == "u" => "u",
                _ => break,
            };
            self.pos += 1;
            let right = self.term()?;
            left = match op {
                "+" => GraphExpr::Join(Box::new(left), Box::new(right)),
                _ => GraphExpr::Union(Box::new(left), Box::new(right)),
            };
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<GraphExpr> {
        let mut left = self.factor()?;
        while let Some((_, Token::Word(w))) = self.peek() {
            let op = match w.as_str() {
                "box" | "cart" | "lex" => w.clone(),
                _ => break,
            };
            self.pos += 1;
            let right = self.factor()?;
            left = match op.as_str() {
                "box" => GraphExpr::Strong(Box::new(left), Box::new(right)),
                "cart" => GraphExpr::Cartesian(Box::new(left), Box::new(right)),
                _ => GraphExpr::Lexicographic(Box::new(left), Box::new(right)),
            };
        }
        Ok(left)
    }

    fn factor(&mut self) -> Result<GraphExpr> {
        match self.peek().cloned() {
            None => Err(self.err(self.end, "expected a graph atom or '(', found end of input")),
            Some((off, Token::LParen)) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some((_, Token::RParen)) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some(&(o, _)) => Err(self.err(o, "expected ')'")),
                    None => Err(self.err(off, "unclosed '('")),
                }
            }
            Some((off, Token::Word(w))) => {
                self.pos += 1;
                self.atom(off, &w)
            }
            Some((off, _)) => Err(self.err(off, "expected a graph atom or '('")),
        }
    }

    fn atom(&mut self, off: usize, word: &str) -> Result<GraphExpr> {
        if let Some(path) = word.strip_prefix("file:") {
            if path.is_empty() {
                return Err(self.err(off, "file atom has an empty path"));
            }
            return Ok(GraphExpr::File(path.to_string()));
        }
        if matches!(word, "box" | "cart" | "lex" | "u") {
            return Err(self.err(off, format!("expected a graph atom, found operator '{word}'")));
        }
        let (head, digits) = word.split_at(1.min(word.len()));
        let ctor = match head {
            "P" => GraphExpr::Path as fn(usize) -> GraphExpr,
            "C" => GraphExpr::Cycle,
            "K" => GraphExpr::Complete,
            _ => return Err(self.err(off, format!("unknown atom '{word}' (expected P<n>, C<n>, K<n>, or file:<path>)"))),
        };
        let n: usize = digits
            .parse()
            .map_err(|_| self.err(off, format!("unknown atom '{word}' (expected P<n>, C<n>, K<n>, or file:<path>)")))?;
        if n == 0 {
            return Err(self.err(off, format!("atom '{word}' has n = 0; atoms need n >= 1")));
        }
        Ok(ctor(n))
    }
}

/// Parses an expression; errors carry the byte offset of the offending token.
pub fn parse_graph_expr(text: &str) -> Result<GraphExpr> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, end: text.len(), _text: text };
    let ast = parser.expr()?;
    if let Some(&(off, _)) = parser.peek() {
        return Err(parser.err(off, "unexpected trailing input"));
    }
    Ok(ast)
}

/// Evaluates an expression to its graph. File atoms are read from disk in
/// the text format.
pub fn eval_expr(ast: &GraphExpr) -> Result<Graph> {
    match ast {
        GraphExpr::Path(n) => path_graph(*n),
        GraphExpr::Cycle(n) => cycle_graph(*n),
        GraphExpr::Complete(n) => complete_graph(*n),
        GraphExpr::File(path) => parse_graph(&std::fs::read_to_string(path)?),
        GraphExpr::Strong(l, r) => strong_product(&eval_expr(l)?, &eval_expr(r)?),
        GraphExpr::Cartesian(l, r) => cartesian_product(&eval_expr(l)?, &eval_expr(r)?),
        GraphExpr::Lexicographic(l, r) => lexicographic_product(&eval_expr(l)?, &eval_expr(r)?),
        GraphExpr::Join(l, r) => eval_expr(l)?.join(&eval_expr(r)?),
        GraphExpr::Union(l, r) => eval_expr(l)?.disjoint_union(&eval_expr(r)?),
    }
}

/// Parses and evaluates in one step.
pub fn eval_text(text: &str) -> Result<Graph> {
    eval_expr(&parse_graph_expr(text)?)
}
