//! Recursive-descent parser and validator for model files.

use super::lexer::{tokenize, Token, TokenKind};
use super::{Diagnostic, DiagnosticList};
use crate::graph::{kernel_by_name, MultiGraph, SelectionKernel, UNIFORM_NONADJACENT_PAIR};
use crate::rules::{rule_by_name, PicgModel, Rule, RewriteRule, ADD_EDGE, WEIGHT_SUM_TOLERANCE};

pub fn parse_model(src: &str) -> Result<PicgModel, DiagnosticList> {
    let mut parser = Parser {
        tokens: tokenize(src),
        pos: 0,
        diags: Vec::new(),
    };
    match parser.model() {
        Ok(model) if parser.diags.is_empty() => Ok(model.expect("no diagnostics, full model")),
        Ok(_) => Err(DiagnosticList(parser.diags)),
        Err(diag) => {
            parser.diags.push(diag);
            Err(DiagnosticList(parser.diags))
        }
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    diags: Vec<Diagnostic>,
}

struct ParsedBasis {
    graph: Option<MultiGraph>,
    prob: f64,
}

struct ParsedRule {
    rule: Option<Rule>,
    prob: f64,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        match self.tokens.get(self.pos).or_else(|| self.tokens.last()) {
            Some(t) => (t.line, t.col),
            None => (1, 1),
        }
    }

    fn syntax(&self, message: impl Into<String>) -> Diagnostic {
        let (line, col) = self.here();
        Diagnostic {
            line,
            col,
            message: message.into(),
        }
    }

    fn report(&mut self, line: usize, col: usize, message: impl Into<String>) {
        self.diags.push(Diagnostic {
            line,
            col,
            message: message.into(),
        });
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<Token, Diagnostic> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Word(kw.to_string()) => Ok(self.next().unwrap()),
            Some(t) => Err(self.syntax(format!("expected `{kw}`, found {}", t.kind))),
            None => Err(self.syntax(format!("expected `{kw}`, found end of input"))),
        }
    }

    fn expect_word(&mut self, what: &str) -> Result<(String, usize, usize), Diagnostic> {
        match self.peek() {
            Some(Token {
                kind: TokenKind::Word(_),
                ..
            }) => {
                let t = self.next().unwrap();
                let TokenKind::Word(w) = t.kind else {
                    unreachable!()
                };
                Ok((w, t.line, t.col))
            }
            Some(t) => Err(self.syntax(format!("expected {what}, found {}", t.kind))),
            None => Err(self.syntax(format!("expected {what}, found end of input"))),
        }
    }

    fn expect_punct(&mut self, kind: TokenKind, name: &str) -> Result<Token, Diagnostic> {
        match self.peek() {
            Some(t) if t.kind == kind => Ok(self.next().unwrap()),
            Some(t) => Err(self.syntax(format!("expected {name}, found {}", t.kind))),
            None => Err(self.syntax(format!("expected {name}, found end of input"))),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Token { kind: TokenKind::Word(w), .. }) if w == kw)
    }

    /// Probability literal: decimal (scientific notation allowed) or `a/b`.
    fn probability(&mut self) -> Result<(f64, usize, usize), Diagnostic> {
        let (word, line, col) = self.expect_word("a probability literal")?;
        let value = if let Some((a, b)) = word.split_once('/') {
            match (a.parse::<f64>(), b.parse::<f64>()) {
                (Ok(a), Ok(b)) if b != 0.0 => a / b,
                _ => {
                    return Err(Diagnostic {
                        line,
                        col,
                        message: format!("`{word}` is not a valid fraction"),
                    })
                }
            }
        } else {
            word.parse::<f64>().map_err(|_| Diagnostic {
                line,
                col,
                message: format!("`{word}` is not a valid probability literal"),
            })?
        };
        if !value.is_finite() {
            return Err(Diagnostic {
                line,
                col,
                message: format!("`{word}` is not finite"),
            });
        }
        Ok((value, line, col))
    }

    fn integer(&mut self, what: &str) -> Result<(usize, usize, usize), Diagnostic> {
        let (word, line, col) = self.expect_word(what)?;
        let value = word.parse::<usize>().map_err(|_| Diagnostic {
            line,
            col,
            message: format!("`{word}` is not a valid {what}"),
        })?;
        Ok((value, line, col))
    }

    fn model(&mut self) -> Result<Option<PicgModel>, Diagnostic> {
        self.expect_keyword("model")?;
        let (name, ..) = self.expect_word("a model name")?;

        let basis_kw = self.expect_keyword("basis")?;
        self.expect_punct(TokenKind::LBrace, "`{`")?;
        let mut basis = Vec::new();
        loop {
            if self
                .peek()
                .is_some_and(|t| t.kind == TokenKind::RBrace)
            {
                self.next();
                break;
            }
            if self.at_keyword("graph") {
                basis.push(self.basis_entry()?);
            } else {
                return Err(self.syntax("expected `graph` or `}` in the basis block"));
            }
        }
        if basis.is_empty() {
            self.report(basis_kw.line, basis_kw.col, "basis block declares no graphs");
        }

        let rules_kw = self.expect_keyword("rules")?;
        self.expect_punct(TokenKind::LBrace, "`{`")?;
        let mut rules = Vec::new();
        loop {
            if self
                .peek()
                .is_some_and(|t| t.kind == TokenKind::RBrace)
            {
                self.next();
                break;
            }
            if self.at_keyword("rule") {
                rules.push(self.rule_entry()?);
            } else {
                return Err(self.syntax("expected `rule` or `}` in the rules block"));
            }
        }
        if rules.is_empty() {
            self.report(rules_kw.line, rules_kw.col, "rules block declares no rules");
        }
        if let Some(t) = self.peek() {
            return Err(self.syntax(format!("unexpected {} after the rules block", t.kind)));
        }

        self.check_weight_sum("basis", &basis_kw, basis.iter().map(|b| b.prob));
        self.check_weight_sum("rule", &rules_kw, rules.iter().map(|r| r.prob));

        if !self.diags.is_empty() {
            return Ok(None);
        }
        let basis: Vec<(MultiGraph, f64)> = basis
            .into_iter()
            .map(|b| (b.graph.expect("diagnosed"), b.prob))
            .collect();
        let rules: Vec<(Rule, f64)> = rules
            .into_iter()
            .map(|r| (r.rule.expect("diagnosed"), r.prob))
            .collect();
        match PicgModel::new(name, basis, rules) {
            Ok(model) => Ok(Some(model)),
            Err(e) => {
                // weight and emptiness issues are reported above with better
                // positions; anything else surfaces here
                self.report(basis_kw.line, basis_kw.col, e.to_string());
                Ok(None)
            }
        }
    }

    fn check_weight_sum(
        &mut self,
        what: &'static str,
        at: &Token,
        weights: impl Iterator<Item = f64>,
    ) {
        let sum: f64 = weights.sum();
        if sum > 0.0 && (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            self.report(at.line, at.col, format!("{what} weights sum to {sum}, expected 1"));
        }
    }

    /// `graph <name> prob <p> { vertices <k> edges [ <u>-<v> ... ] }`
    fn basis_entry(&mut self) -> Result<ParsedBasis, Diagnostic> {
        self.expect_keyword("graph")?;
        self.expect_word("a graph name")?;
        self.expect_keyword("prob")?;
        let (prob, pline, pcol) = self.probability()?;
        if prob <= 0.0 {
            self.report(pline, pcol, format!("basis weight {prob} must be strictly positive"));
        }
        self.expect_punct(TokenKind::LBrace, "`{`")?;
        self.expect_keyword("vertices")?;
        let (vertices, vline, vcol) = self.integer("vertex count")?;
        if vertices == 0 {
            self.report(vline, vcol, "basis graph needs at least one vertex");
        }
        self.expect_keyword("edges")?;
        self.expect_punct(TokenKind::LBracket, "`[`")?;
        let mut graph = MultiGraph::with_vertices(vertices, false);
        let mut edges_ok = vertices > 0;
        loop {
            match self.peek() {
                Some(Token {
                    kind: TokenKind::RBracket,
                    ..
                }) => {
                    self.next();
                    break;
                }
                Some(Token {
                    kind: TokenKind::Word(_),
                    ..
                }) => {
                    let (word, line, col) = self.expect_word("an edge pair")?;
                    let Some((u, v)) = word
                        .split_once('-')
                        .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                    else {
                        return Err(Diagnostic {
                            line,
                            col,
                            message: format!("`{word}` is not an edge pair like `0-1`"),
                        });
                    };
                    if u >= vertices || v >= vertices {
                        self.report(line, col, format!("edge `{word}` references a vertex past {}", vertices.saturating_sub(1)));
                        edges_ok = false;
                    } else if u == v {
                        self.report(line, col, format!("edge `{word}` is a loop; basis graphs are loopless"));
                        edges_ok = false;
                    } else if edges_ok {
                        graph.add_edge(u, v).expect("bounds checked");
                    }
                }
                _ => return Err(self.syntax("expected an edge pair or `]`")),
            }
        }
        self.expect_punct(TokenKind::RBrace, "`}`")?;
        Ok(ParsedBasis {
            graph: edges_ok.then_some(graph),
            prob,
        })
    }

    /// `rule <name> kind <kind> prob <p> [select <kernel>] [simple]`
    ///
    /// `select` defaults to the kind's default kernel; `simple` switches an
    /// edge rule to the non-adjacent pair kernel.
    fn rule_entry(&mut self) -> Result<ParsedRule, Diagnostic> {
        self.expect_keyword("rule")?;
        self.expect_word("a rule name")?;
        self.expect_keyword("kind")?;
        let (kind_word, kline, kcol) = self.expect_word("a rule kind")?;
        let behavior: Option<&'static dyn RewriteRule> = rule_by_name(&kind_word);
        if behavior.is_none() {
            self.report(kline, kcol, format!("unknown rule kind `{kind_word}`"));
        }
        self.expect_keyword("prob")?;
        let (prob, pline, pcol) = self.probability()?;
        if prob <= 0.0 {
            self.report(pline, pcol, format!("rule weight {prob} must be strictly positive"));
        }

        let mut kernel: Option<(&'static dyn SelectionKernel, usize, usize)> = None;
        if self.at_keyword("select") {
            self.next();
            let (kernel_word, sline, scol) = self.expect_word("a kernel name")?;
            match kernel_by_name(&kernel_word) {
                Some(k) => kernel = Some((k, sline, scol)),
                None => self.report(sline, scol, format!("unknown kernel `{kernel_word}`")),
            }
        }
        if self.at_keyword("simple") {
            let t = self.next().unwrap();
            if behavior.is_some_and(|b| b.name() == ADD_EDGE) {
                kernel = Some((
                    kernel_by_name(UNIFORM_NONADJACENT_PAIR).expect("registered"),
                    t.line,
                    t.col,
                ));
            } else {
                self.report(t.line, t.col, "`simple` applies only to add_edge rules");
            }
        }

        let rule = behavior.and_then(|b| {
            let (k, kernel_line, kernel_col) = match kernel {
                Some(k) => k,
                None => (kernel_by_name(b.default_kernel()).expect("registered"), kline, kcol),
            };
            match Rule::new(b.name(), k.name()) {
                Ok(rule) => Some(rule),
                Err(e) => {
                    self.report(kernel_line, kernel_col, e.to_string());
                    None
                }
            }
        });
        Ok(ParsedRule { rule, prob })
    }
}
