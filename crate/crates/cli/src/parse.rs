//! Recursive-descent parser producing a Script, with diagnostic codes and
//! expected-token messages anchored to line:column spans.

use crate::ast::*;
use crate::lex::{lex, Span, Token, TokenKind};

#[derive(Debug, Clone)]
pub struct Diagnostic {
    pub code: &'static str,
    pub message: String,
    pub span: Span,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(out, "error[{}] {}: {}", self.code, self.span.start, self.message)
    }
}

pub fn parse(source: &str) -> Result<Script, Diagnostic> {
    let tokens = lex(source).map_err(|e| Diagnostic {
        code: "E101",
        message: e.message,
        span: Span { start: e.pos, end: e.pos },
    })?;
    let mut p = Parser { tokens, pos: 0 };
    let mut items = Vec::new();
    while !p.at_eof() {
        items.push(p.item()?);
    }
    Ok(Script { items })
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn at_eof(&self) -> bool {
        matches!(self.peek().kind, TokenKind::Eof)
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> Diagnostic {
        let t = self.peek();
        Diagnostic {
            code: "E102",
            message: format!("expected {expected}, found {}", t.kind.describe()),
            span: t.span,
        }
    }

    fn expect(&mut self, kind: TokenKind, expected: &str) -> Result<Token, Diagnostic> {
        if self.peek().kind == kind {
            Ok(self.advance())
        } else {
            Err(self.error(expected))
        }
    }

    fn ident(&mut self, expected: &str) -> Result<(String, Span), Diagnostic> {
        match self.peek().kind.clone() {
            TokenKind::Ident(name) => {
                let span = self.peek().span;
                self.advance();
                Ok((name, span))
            }
            _ => Err(self.error(expected)),
        }
    }

    fn int(&mut self, expected: &str) -> Result<u64, Diagnostic> {
        match self.peek().kind {
            TokenKind::Int(v) => {
                self.advance();
                Ok(v)
            }
            _ => Err(self.error(expected)),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<Span, Diagnostic> {
        match self.peek().kind.clone() {
            TokenKind::Ident(name) if name == word => Ok(self.advance().span),
            _ => Err(self.error(&format!("keyword '{word}'"))),
        }
    }

    fn item(&mut self) -> Result<Item, Diagnostic> {
        let start = self.peek().span;
        let (word, _) = match self.peek().kind.clone() {
            TokenKind::Ident(w) => (w, self.peek().span),
            _ => return Err(self.error("a declaration or query keyword")),
        };
        match word.as_str() {
            "ring" => self.ring_decl(start),
            "ideal" => self.ideal_decl(start),
            "module" => self.module_decl(start),
            "class" => self.class_decl(start),
            "grade" | "fdepth" | "gdepth" | "tjdepth" | "tbgrade" | "checkseq" | "cm"
            | "oracle" => self.query(start, &word),
            other => Err(Diagnostic {
                code: "E102",
                message: format!(
                    "expected one of ring/ideal/module/class/grade/fdepth/gdepth/tjdepth/tbgrade/checkseq/cm/oracle, found identifier {other:?}"
                ),
                span: start,
            }),
        }
    }

    fn semi_span(&mut self, start: Span) -> Result<Span, Diagnostic> {
        let semi = self.expect(TokenKind::Semi, "';'")?;
        Ok(Span { start: start.start, end: semi.span.end })
    }

    fn ring_decl(&mut self, start: Span) -> Result<Item, Diagnostic> {
        self.keyword("ring")?;
        let (name, _) = self.ident("a ring name")?;
        self.expect(TokenKind::Equals, "'='")?;
        self.keyword("GF")?;
        self.expect(TokenKind::LParen, "'('")?;
        let characteristic = self.int("a prime characteristic")?;
        self.expect(TokenKind::RParen, "')'")?;
        self.expect(TokenKind::LBracket, "'['")?;
        let mut vars = vec![self.ident("a variable name")?.0];
        while self.peek().kind == TokenKind::Comma {
            self.advance();
            vars.push(self.ident("a variable name")?.0);
        }
        self.expect(TokenKind::RBracket, "']'")?;
        let (order_word, order_span) = self.ident("a monomial order (lex, grevlex, block)")?;
        let order = match order_word.as_str() {
            "lex" => OrderSpec::Lex,
            "grevlex" => OrderSpec::GrevLex,
            "block" => {
                self.expect(TokenKind::LParen, "'('")?;
                let split = self.int("a block split position")?;
                self.expect(TokenKind::RParen, "')'")?;
                OrderSpec::Block(split)
            }
            other => {
                return Err(Diagnostic {
                    code: "E102",
                    message: format!("expected lex, grevlex or block(k), found {other:?}"),
                    span: order_span,
                })
            }
        };
        let span = self.semi_span(start)?;
        Ok(Item::Ring { name, characteristic, vars, order, span })
    }

    fn ideal_decl(&mut self, start: Span) -> Result<Item, Diagnostic> {
        self.keyword("ideal")?;
        let (name, _) = self.ident("an ideal name")?;
        self.expect(TokenKind::Equals, "'='")?;
        self.expect(TokenKind::LParen, "'('")?;
        let mut gens = Vec::new();
        if self.peek().kind != TokenKind::RParen {
            gens.push(self.poly_expr()?);
            while self.peek().kind == TokenKind::Comma {
                self.advance();
                gens.push(self.poly_expr()?);
            }
        }
        self.expect(TokenKind::RParen, "')'")?;
        let span = self.semi_span(start)?;
        Ok(Item::Ideal { name, gens, span })
    }

    fn module_decl(&mut self, start: Span) -> Result<Item, Diagnostic> {
        self.keyword("module")?;
        let (name, _) = self.ident("a module name")?;
        self.expect(TokenKind::Equals, "'='")?;
        let source = match self.peek().kind.clone() {
            TokenKind::Ident(w) if w == "coker" => {
                self.advance();
                self.expect(TokenKind::LBracket, "'['")?;
                let mut rows = vec![self.poly_row()?];
                while self.peek().kind == TokenKind::Comma {
                    self.advance();
                    rows.push(self.poly_row()?);
                }
                self.expect(TokenKind::RBracket, "']'")?;
                ModuleSource::Coker { rows }
            }
            TokenKind::Ident(_) => {
                let (ring_name, _) = self.ident("a ring name")?;
                self.expect(TokenKind::Slash, "'/'")?;
                let (ideal_name, _) = self.ident("an ideal name")?;
                ModuleSource::Quotient { ring_name, ideal_name }
            }
            _ => return Err(self.error("a ring quotient S/I or coker[[...]]")),
        };
        let span = self.semi_span(start)?;
        Ok(Item::Module { name, source, span })
    }

    fn poly_row(&mut self) -> Result<Vec<PolyExpr>, Diagnostic> {
        self.expect(TokenKind::LBracket, "'['")?;
        let mut row = vec![self.poly_expr()?];
        while self.peek().kind == TokenKind::Comma {
            self.advance();
            row.push(self.poly_expr()?);
        }
        self.expect(TokenKind::RBracket, "']'")?;
        Ok(row)
    }

    fn class_decl(&mut self, start: Span) -> Result<Item, Diagnostic> {
        self.keyword("class")?;
        let (name, _) = self.ident("a class name")?;
        self.expect(TokenKind::Equals, "'='")?;
        let (word, word_span) = self.ident("zero, dim_le(j) or supp_in(...)")?;
        let expr = match word.as_str() {
            "zero" => ClassExpr::Zero,
            "dim_le" => {
                self.expect(TokenKind::LParen, "'('")?;
                let j = self.int("a dimension bound")?;
                self.expect(TokenKind::RParen, "')'")?;
                ClassExpr::DimLe(j)
            }
            "supp_in" => {
                self.expect(TokenKind::LParen, "'('")?;
                let mut gens = vec![self.poly_expr()?];
                while self.peek().kind == TokenKind::Comma {
                    self.advance();
                    gens.push(self.poly_expr()?);
                }
                self.expect(TokenKind::RParen, "')'")?;
                ClassExpr::SuppIn(gens)
            }
            other => {
                return Err(Diagnostic {
                    code: "E102",
                    message: format!("expected zero, dim_le or supp_in, found {other:?}"),
                    span: word_span,
                })
            }
        };
        let span = self.semi_span(start)?;
        Ok(Item::Class { name, expr, span })
    }

    /// `a = <ideal name>` argument of the grade-style queries.
    fn ideal_arg(&mut self) -> Result<String, Diagnostic> {
        let (a, a_span) = self.ident("'a'")?;
        if a != "a" {
            return Err(Diagnostic {
                code: "E102",
                message: format!("expected 'a =' introducing the ideal argument, found {a:?}"),
                span: a_span,
            });
        }
        self.expect(TokenKind::Equals, "'='")?;
        Ok(self.ident("an ideal name")?.0)
    }

    fn query(&mut self, start: Span, word: &str) -> Result<Item, Diagnostic> {
        self.advance(); // the keyword itself
        let kind = match word {
            "grade" => {
                let ideal = self.ideal_arg()?;
                let module = self.ident("a module name")?.0;
                let class = self.ident("a class name")?.0;
                QueryKind::Grade { ideal, module, class }
            }
            "fdepth" => {
                let ideal = self.ideal_arg()?;
                let module = self.ident("a module name")?.0;
                QueryKind::FDepth { ideal, module }
            }
            "gdepth" => {
                let ideal = self.ideal_arg()?;
                let module = self.ident("a module name")?.0;
                QueryKind::GDepth { ideal, module }
            }
            "tjdepth" => {
                self.expect(TokenKind::LParen, "'('")?;
                let j = self.int("a dimension bound")?;
                self.expect(TokenKind::RParen, "')'")?;
                let ideal = self.ideal_arg()?;
                let module = self.ident("a module name")?.0;
                QueryKind::TjDepth { j, ideal, module }
            }
            "tbgrade" => {
                self.expect(TokenKind::LParen, "'('")?;
                let b_ideal = self.ident("an ideal name for b")?.0;
                self.expect(TokenKind::RParen, "')'")?;
                let ideal = self.ideal_arg()?;
                let module = self.ident("a module name")?.0;
                QueryKind::TbGrade { b_ideal, ideal, module }
            }
            "checkseq" => {
                self.expect(TokenKind::LBracket, "'['")?;
                let mut elements = vec![self.poly_expr()?];
                while self.peek().kind == TokenKind::Comma {
                    self.advance();
                    elements.push(self.poly_expr()?);
                }
                self.expect(TokenKind::RBracket, "']'")?;
                let module = self.ident("a module name")?.0;
                let class = self.ident("a class name")?.0;
                QueryKind::CheckSeq { elements, module, class }
            }
            "cm" => {
                let module = self.ident("a module name")?.0;
                let class = self.ident("a class name")?.0;
                QueryKind::Cm { module, class }
            }
            "oracle" => {
                let (sub, sub_span) = self.ident("ass, depth, dim, ncm or cm")?;
                let q = match sub.as_str() {
                    "ass" => OracleQuery::Ass(self.ident("an ideal name")?.0),
                    "depth" => OracleQuery::Depth(self.ident("an ideal name")?.0),
                    "dim" => OracleQuery::Dim(self.ident("an ideal name")?.0),
                    "ncm" => OracleQuery::Ncm(self.ident("an ideal name")?.0),
                    "cm" => {
                        let m = self.ident("a module name")?.0;
                        let c = self.ident("a class name")?.0;
                        OracleQuery::Cm(m, c)
                    }
                    other => {
                        return Err(Diagnostic {
                            code: "E102",
                            message: format!(
                                "expected ass, depth, dim, ncm or cm after oracle, found {other:?}"
                            ),
                            span: sub_span,
                        })
                    }
                };
                QueryKind::Oracle(q)
            }
            _ => unreachable!("query dispatched on known keyword"),
        };
        let span = self.semi_span(start)?;
        Ok(Item::Query { kind, span })
    }

    // polynomial expressions: + - binary, * tighter, ^ tightest, parens
    fn poly_expr(&mut self) -> Result<PolyExpr, Diagnostic> {
        let start = self.peek().span;
        let mut acc = if self.peek().kind == TokenKind::Minus {
            self.advance();
            let t = self.poly_term()?;
            let span = Span { start: start.start, end: t.span().end };
            PolyExpr::Neg(Box::new(t), span)
        } else {
            self.poly_term()?
        };
        loop {
            match self.peek().kind {
                TokenKind::Plus => {
                    self.advance();
                    let rhs = self.poly_term()?;
                    let span = Span { start: acc.span().start, end: rhs.span().end };
                    acc = PolyExpr::Add(Box::new(acc), Box::new(rhs), span);
                }
                TokenKind::Minus => {
                    self.advance();
                    let rhs = self.poly_term()?;
                    let span = Span { start: acc.span().start, end: rhs.span().end };
                    acc = PolyExpr::Sub(Box::new(acc), Box::new(rhs), span);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn poly_term(&mut self) -> Result<PolyExpr, Diagnostic> {
        let mut acc = self.poly_factor()?;
        while self.peek().kind == TokenKind::Star {
            self.advance();
            let rhs = self.poly_factor()?;
            let span = Span { start: acc.span().start, end: rhs.span().end };
            acc = PolyExpr::Mul(Box::new(acc), Box::new(rhs), span);
        }
        Ok(acc)
    }

    fn poly_factor(&mut self) -> Result<PolyExpr, Diagnostic> {
        let base = self.poly_atom()?;
        if self.peek().kind == TokenKind::Caret {
            self.advance();
            let end = self.peek().span;
            let e = self.int("an exponent")?;
            let span = Span { start: base.span().start, end: end.end };
            return Ok(PolyExpr::Pow(Box::new(base), e, span));
        }
        Ok(base)
    }

    fn poly_atom(&mut self) -> Result<PolyExpr, Diagnostic> {
        let t = self.peek().clone();
        match t.kind {
            TokenKind::Int(v) => {
                self.advance();
                Ok(PolyExpr::Int(v, t.span))
            }
            TokenKind::Ident(name) => {
                self.advance();
                Ok(PolyExpr::Var(name, t.span))
            }
            TokenKind::LParen => {
                self.advance();
                let inner = self.poly_expr()?;
                self.expect(TokenKind::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(self.error("a polynomial (integer, variable or parenthesized expression)")),
        }
    }
}
