use std::collections::BTreeMap;
use std::sync::Arc;

use super::{check_coupon, Coupon, CouponTable, Diagram, Gen, Pair, Sign, Signature};
use crate::category::Category;
use crate::error::{Error, Result};
use crate::exact::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Punct(char),
    Arrow,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const PUNCT: &[char] = &['[', ']', '{', '}', '(', ')', ',', ';', ':', '='];

fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        // `use NAME` keeps NAME whole, since builtin names contain ':'
        let lead = line.len() - line.trim_start().len();
        if let Some(rest) = line.trim_start().strip_prefix("use ") {
            let name = rest.split('#').next().unwrap_or("").trim();
            let col = line[..lead].chars().count() + 1;
            out.push(Token { tok: Tok::Word("use".into()), line: ln + 1, col });
            if !name.is_empty() {
                let off = line.find(name).unwrap_or(0);
                out.push(Token { tok: Tok::Word(name.into()), line: ln + 1, col: line[..off].chars().count() + 1 });
            }
            continue;
        }
        while i < chars.len() {
            let ch = chars[i];
            let (line, col) = (ln + 1, i + 1);
            if ch == '#' {
                break;
            } else if ch.is_whitespace() {
                i += 1;
            } else if ch == '-' && chars.get(i + 1) == Some(&'>') || ch == '→' {
                i += if ch == '→' { 1 } else { 2 };
                out.push(Token { tok: Tok::Arrow, line, col });
            } else if PUNCT.contains(&ch) {
                i += 1;
                out.push(Token { tok: Tok::Punct(ch), line, col });
            } else {
                let start = i;
                while i < chars.len()
                    && !chars[i].is_whitespace()
                    && !PUNCT.contains(&chars[i])
                    && chars[i] != '#'
                    && chars[i] != '→'
                    && !(chars[i] == '-' && chars.get(i + 1) == Some(&'>'))
                {
                    i += 1;
                }
                out.push(Token { tok: Tok::Word(chars[start..i].iter().collect()), line, col });
            }
        }
    }
    out
}

/// Parsed contents of a diagram file.
#[derive(Clone, Debug)]
pub struct DiagramFile {
    /// The category named by a `use` line, if any.
    pub category: Option<String>,
    pub coupons: Arc<CouponTable>,
    pub diagrams: Vec<(String, Diagram)>,
}

impl DiagramFile {
    pub fn get(&self, name: &str) -> Result<&Diagram> {
        self.diagrams
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, d)| d)
            .ok_or_else(|| Error::UnknownDiagram(name.to_string()))
    }

    /// The only diagram, or the named one.
    pub fn select(&self, name: Option<&str>) -> Result<&Diagram> {
        match name {
            Some(n) => self.get(n),
            None if self.diagrams.len() == 1 => Ok(&self.diagrams[0].1),
            None => Err(Error::Validation(format!("{} diagrams in file; name one", self.diagrams.len()))),
        }
    }

    /// The `use` line of a diagram file, read without a category.
    pub fn use_line(text: &str) -> Option<String> {
        let toks = tokenize(text);
        toks.windows(2).find_map(|w| match (&w[0].tok, &w[1].tok) {
            (Tok::Word(u), Tok::Word(name)) if u == "use" => Some(name.clone()),
            _ => None,
        })
    }
}

struct Parser<'a> {
    c: &'a Category,
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

struct RawDiagram {
    name: String,
    line: usize,
    source: Signature,
    target: Signature,
    rows: Vec<(Vec<(Token, Gen)>, usize)>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map(|t| (t.line, t.col)).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        Err(Error::parse(l, c, msg))
    }

    fn next(&mut self) -> Result<Token> {
        match self.toks.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => self.err("unexpected end of input"),
        }
    }

    fn word(&mut self, what: &str) -> Result<(String, Token)> {
        match self.peek().map(|t| t.tok.clone()) {
            Some(Tok::Word(w)) => Ok((w, self.next()?)),
            _ => self.err(format!("expected {what}")),
        }
    }

    fn punct(&mut self, ch: char) -> Result<()> {
        match self.peek() {
            Some(Token { tok: Tok::Punct(p), .. }) if *p == ch => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(format!("expected '{ch}'")),
        }
    }

    fn is_punct(&self, ch: char) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Punct(p), .. }) if *p == ch)
    }

    fn arrow(&mut self) -> Result<()> {
        match self.peek() {
            Some(Token { tok: Tok::Arrow, .. }) => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err("expected '->'"),
        }
    }

    fn object(&self, text: &str, at: &Token) -> Result<crate::category::ObjectRef> {
        self.c.object(text).map_err(|_| Error::parse(at.line, at.col, format!("unknown object {text:?}")))
    }

    fn pair(&mut self) -> Result<Pair> {
        let (w, at) = self.word("a signature entry such as P++")?;
        let mut chars: Vec<char> = w.chars().collect();
        let sign = match chars.pop() {
            Some('+') => Sign::Plus,
            Some('-') | Some('−') => Sign::Minus,
            _ => return Err(Error::parse(at.line, at.col, format!("{w:?} does not end in a sign"))),
        };
        let name: String = chars.into_iter().collect();
        Ok(Pair { obj: self.object(&name, &at)?, sign })
    }

    fn signature(&mut self) -> Result<Signature> {
        self.punct('[')?;
        let mut out = Vec::new();
        if self.is_punct(']') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.pair()?);
            if self.is_punct(',') {
                self.pos += 1;
            } else {
                self.punct(']')?;
                return Ok(out);
            }
        }
    }

    fn generator(&mut self) -> Result<(Token, Gen)> {
        let (kw, at) = self.word("a generator")?;
        let gen = match kw.as_str() {
            "id" => Gen::Id(self.pair()?),
            "ev" | "coev" | "tev" | "tcoev" => {
                let (name, t) = self.word("an object")?;
                let x = self.object(&name, &t)?;
                match kw.as_str() {
                    "ev" => Gen::Ev(x),
                    "coev" => Gen::Coev(x),
                    "tev" => Gen::Tev(x),
                    _ => Gen::Tcoev(x),
                }
            }
            "coupon" => Gen::Coupon(self.word("a coupon name")?.0),
            other => Gen::Coupon(other.to_string()),
        };
        Ok((at, gen))
    }

    fn matrix(&mut self) -> Result<Vec<Vec<(String, Token)>>> {
        self.punct('(')?;
        let mut rows = vec![Vec::new()];
        loop {
            match self.peek().map(|t| t.tok.clone()) {
                Some(Tok::Punct(')')) => {
                    self.pos += 1;
                    break;
                }
                Some(Tok::Punct(';')) => {
                    self.pos += 1;
                    rows.push(Vec::new());
                }
                Some(Tok::Word(w)) => {
                    let t = self.next()?;
                    rows.last_mut().expect("nonempty").push((w, t));
                }
                _ => return self.err("expected a matrix entry, ';' or ')'"),
            }
        }
        if rows.len() == 1 && rows[0].is_empty() {
            rows.clear();
        }
        Ok(rows)
    }
}

/// Parse a diagram file against a category.
pub fn parse_diagram_file(c: &Category, text: &str) -> Result<DiagramFile> {
    let toks = tokenize(text);
    let end = (text.lines().count().max(1), text.lines().last().map(|l| l.chars().count() + 1).unwrap_or(1));
    let mut p = Parser { c, toks, pos: 0, end };
    let mut category = None;
    let mut decls: BTreeMap<String, (Signature, Signature, Token)> = BTreeMap::new();
    let mut matrices: BTreeMap<String, (Vec<Vec<(String, Token)>>, Token)> = BTreeMap::new();
    let mut raw: Vec<RawDiagram> = Vec::new();
    while p.peek().is_some() {
        let (kw, at) = p.word("'use', 'coupon', 'matrix' or 'diagram'")?;
        match kw.as_str() {
            "use" => category = Some(p.word("a category name")?.0),
            "coupon" => {
                let (name, t) = p.word("a coupon name")?;
                p.punct(':')?;
                let s = p.signature()?;
                p.arrow()?;
                let tg = p.signature()?;
                if decls.insert(name.clone(), (s, tg, t.clone())).is_some() {
                    return Err(Error::parse(t.line, t.col, format!("coupon {name} declared twice")));
                }
            }
            "matrix" => {
                let (name, t) = p.word("a coupon name")?;
                p.punct('=')?;
                let m = p.matrix()?;
                if matrices.insert(name.clone(), (m, t.clone())).is_some() {
                    return Err(Error::parse(t.line, t.col, format!("matrix {name} given twice")));
                }
            }
            "diagram" => {
                let (name, t) = p.word("a diagram name")?;
                p.punct(':')?;
                let source = p.signature()?;
                p.arrow()?;
                let target = p.signature()?;
                p.punct('{')?;
                let mut rows = Vec::new();
                while !p.is_punct('}') {
                    let (kw, rt) = p.word("'row' or '}'")?;
                    if kw != "row" {
                        return Err(Error::parse(rt.line, rt.col, format!("expected 'row', found {kw:?}")));
                    }
                    let mut gens = Vec::new();
                    if !p.is_punct(';') {
                        loop {
                            gens.push(p.generator()?);
                            if p.is_punct(',') {
                                p.pos += 1;
                            } else {
                                break;
                            }
                        }
                    }
                    p.punct(';')?;
                    rows.push((gens, rt.line));
                }
                p.punct('}')?;
                if raw.iter().any(|d| d.name == name) {
                    return Err(Error::parse(t.line, t.col, format!("diagram {name} defined twice")));
                }
                raw.push(RawDiagram { name, line: t.line, source, target, rows });
            }
            other => return Err(Error::parse(at.line, at.col, format!("unknown statement {other:?}"))),
        }
    }

    let field = c.field();
    let mut table = CouponTable::new();
    for (name, (s, t, at)) in &decls {
        let Some((rows, _)) = matrices.get(name) else {
            return Err(Error::parse(at.line, at.col, format!("coupon {name} has no matrix")));
        };
        let (r, k) = (c.dim(&super::signature_object(t)), c.dim(&super::signature_object(s)));
        if rows.len() != r || rows.iter().any(|row| row.len() != k) {
            return Err(Error::parse(at.line, at.col, format!("matrix {name} must be {r}×{k}")));
        }
        let mut data = Vec::with_capacity(r * k);
        for (w, tok) in rows.iter().flatten() {
            data.push(field.parse_literal(w).map_err(|e| Error::parse(tok.line, tok.col, e.to_string()))?);
        }
        let cp = Coupon { source: s.clone(), target: t.clone(), matrix: Matrix::new(field, r, k, data)? };
        check_coupon(c, name, &cp).map_err(|e| Error::parse(at.line, at.col, e.to_string()))?;
        table.insert(name.clone(), cp);
    }
    if let Some((name, (_, t))) = matrices.iter().find(|(n, _)| !decls.contains_key(*n)) {
        return Err(Error::parse(t.line, t.col, format!("matrix for undeclared coupon {name}")));
    }
    let coupons = Arc::new(table);
    let mut diagrams = Vec::new();
    for d in raw {
        for (gens, _) in &d.rows {
            for (t, g) in gens {
                if let Gen::Coupon(n) = g {
                    if !coupons.contains_key(n) {
                        return Err(Error::parse(t.line, t.col, format!("unknown coupon {n:?}")));
                    }
                }
            }
        }
        let rows = d.rows.into_iter().map(|(g, _)| g.into_iter().map(|(_, g)| g).collect()).collect();
        let diag = Diagram::new(d.source, d.target, rows, coupons.clone()).map_err(|e| match e {
            Error::Typecheck { row, msg } => Error::Typecheck { row, msg: format!("diagram {} (line {}): {msg}", d.name, d.line) },
            e => e,
        })?;
        diagrams.push((d.name, diag));
    }
    Ok(DiagramFile { category, coupons, diagrams })
}

/// Coupon declarations and matrices in the diagram language.
pub fn write_coupons(c: &Category, coupons: &CouponTable) -> String {
    let mut s = String::new();
    for (name, cp) in coupons {
        s.push_str(&format!(
            "coupon {name} : {} -> {}\n",
            super::signature_name(c, &cp.source),
            super::signature_name(c, &cp.target)
        ));
        let rows: Vec<String> = (0..cp.matrix.rows())
            .map(|i| cp.matrix.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        s.push_str(&format!("matrix {name} = ( {} )\n", rows.join(" ; ")));
    }
    s
}
