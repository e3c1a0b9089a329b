//! Recursive-descent parser for the workspace language.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::lexer::{lex, Tok, Token};
use super::{IdentityDecl, OperatorDecl, Workspace};
use crate::algebra::{zero_vec, FiniteAlgebra, LinearOperator, Vector};
use crate::error::{Error, Result};
use crate::lincomb::{Identity, IdentitySystem, LinComb};
use crate::morphism::Morphism;
use crate::rational::Q;
use crate::signature::{is_variable_name, Mode, OpDecl, OpFlags, Signature};
use crate::subset::Subset;
use crate::term::{OpSym, Term};

/// Parses a source into a fresh workspace.
pub fn parse(src: &str) -> Result<Workspace> {
    let mut ws = Workspace::new();
    parse_into(&mut ws, src)?;
    Ok(ws)
}

/// Parses a source, adding its declarations to `ws`. References may point to
/// anything declared earlier, in this source or a previous one.
pub fn parse_into(ws: &mut Workspace, src: &str) -> Result<()> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    while !p.at_eof() {
        let start = p.peek().clone();
        p.statement(ws).map_err(|e| locate(e, &start))?;
    }
    Ok(())
}

/// Parses a linear combination of terms over `sig`.
pub fn parse_lincomb(sig: &Signature, src: &str) -> Result<LinComb> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    let l = p.lincomb(sig)?;
    if !p.at_eof() {
        return Err(p.error("expected end of input"));
    }
    Ok(l)
}

/// Attaches a position to errors raised while checking a statement.
fn locate(e: Error, at: &Token) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => Error::Parse {
            line: at.line,
            col: at.col,
            token: at.text(),
            msg: other.to_string(),
        },
    }
}

/// Splits `f^{1,2}` into `f` and `{1,2}`.
pub fn split_symbol(s: &str) -> Result<OpSym> {
    let bad = || Error::BadDecoration(format!("malformed operation symbol `{s}`"));
    match s.split_once("^{") {
        None => {
            if s.contains('{') {
                return Err(bad());
            }
            Ok(OpSym::plain(s))
        }
        Some((name, rest)) => {
            let inner = rest.strip_suffix('}').ok_or_else(bad)?;
            if name.contains('{') || inner.contains('{') {
                return Err(bad());
            }
            let elems = inner
                .split(',')
                .map(|e| e.parse::<u32>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            Ok(OpSym::decorated(name, Subset::from_elements(elems)?))
        }
    }
}

fn plain_ident(s: &str) -> bool {
    !s.contains('{') && !s.contains('^')
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn at_eof(&self) -> bool {
        self.peek().tok == Tok::Eof
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, msg: &str) -> Error {
        let t = self.peek();
        Error::Parse { line: t.line, col: t.col, token: t.text(), msg: msg.to_string() }
    }

    fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek().tok, Tok::Punct(q) if q == p)
    }

    fn eat(&mut self, p: &str) -> bool {
        if self.is_punct(p) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, p: &str) -> Result<()> {
        if self.eat(p) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{p}`")))
        }
    }

    fn is_keyword(&self, k: &str) -> bool {
        matches!(&self.peek().tok, Tok::Name(s) if s == k)
    }

    fn keyword(&mut self, k: &str) -> Result<()> {
        if self.is_keyword(k) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("expected `{k}`")))
        }
    }

    fn name(&mut self) -> Result<String> {
        match &self.peek().tok {
            Tok::Name(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.error("expected a name")),
        }
    }

    fn ident(&mut self) -> Result<String> {
        let save = self.pos;
        let s = self.name()?;
        if plain_ident(&s) {
            Ok(s)
        } else {
            self.pos = save;
            Err(self.error("expected a plain identifier"))
        }
    }

    fn int(&mut self) -> Result<usize> {
        match &self.peek().tok {
            Tok::Int(s) => {
                let v = s.parse().map_err(|_| self.error("integer out of range"))?;
                self.bump();
                Ok(v)
            }
            _ => Err(self.error("expected an integer")),
        }
    }

    /// `[-] INT [/ INT]`
    fn rational(&mut self) -> Result<Q> {
        let neg = self.eat("-");
        let n = self.unsigned_rational()?;
        Ok(if neg { -n } else { n })
    }

    fn unsigned_rational(&mut self) -> Result<Q> {
        let num = match &self.peek().tok {
            Tok::Int(s) => s.clone(),
            _ => return Err(self.error("expected a number")),
        };
        self.bump();
        let mut den = "1".to_string();
        if self.eat("/") {
            match &self.peek().tok {
                Tok::Int(s) => den = s.clone(),
                _ => return Err(self.error("expected a denominator")),
            }
            if den.bytes().all(|b| b == b'0') {
                return Err(self.error("zero denominator"));
            }
            self.bump();
        }
        crate::rational::parse_q(&format!("{num}/{den}"))
    }

    fn statement(&mut self, ws: &mut Workspace) -> Result<()> {
        let kw = self.ident()?;
        match kw.as_str() {
            "signature" => self.signature(ws),
            "identity" => self.identity(ws),
            "system" => self.system(ws),
            "morphism" => self.morphism(ws),
            "algebra" => self.algebra(ws),
            "operator" => self.operator(ws),
            _ => {
                self.pos -= 1;
                Err(self.error("expected a declaration keyword"))
            }
        }
    }

    fn signature(&mut self, ws: &mut Workspace) -> Result<()> {
        let name = self.ident()?;
        if self.eat("=") {
            let mode = match self.ident()?.as_str() {
                "di" | "pre" => Mode::Di,
                "tri" | "post" => Mode::Tri,
                _ => {
                    self.pos -= 1;
                    return Err(self.error("expected di, tri, pre or post"));
                }
            };
            let base = self.ident()?;
            self.expect(";")?;
            let sig = ws.signature(&base)?.decorated(mode, &name)?;
            return ws.ensure_signature(&sig);
        }
        self.expect("{")?;
        let mut ops = Vec::new();
        while !self.eat("}") {
            self.keyword("op")?;
            let op = self.ident()?;
            if is_variable_name(&op) {
                return Err(Error::Structural(format!("`{op}` is reserved for variables")));
            }
            self.expect(":")?;
            let arity = self.int()?;
            let mut flags = OpFlags::default();
            let bracket = self.eat("[");
            if self.is_keyword("flags") {
                self.bump();
                self.expect(":")?;
                loop {
                    match self.ident()?.as_str() {
                        "derivation" => flags.derivation = true,
                        "endomorphism" => flags.endomorphism = true,
                        _ => {
                            self.pos -= 1;
                            return Err(self.error("expected derivation or endomorphism"));
                        }
                    }
                    if !self.eat(",") && !self.eat("|") {
                        break;
                    }
                }
            }
            if bracket {
                self.expect("]")?;
            }
            self.expect(";")?;
            if (flags.derivation || flags.endomorphism) && arity != 1 {
                return Err(Error::Structural(format!("flags on `{op}` need arity 1")));
            }
            ops.push(OpDecl { name: op, arity, flags });
        }
        let mut seen = std::collections::BTreeSet::new();
        for o in &ops {
            if !seen.insert(o.name.clone()) {
                return Err(Error::Duplicate { kind: "op", name: o.name.clone() });
            }
        }
        ws.ensure_signature(&Signature::new(&name, ops)?)
    }

    fn identity(&mut self, ws: &mut Workspace) -> Result<()> {
        let name = self.name()?;
        self.keyword("over")?;
        let sig_name = self.ident()?;
        let sig = ws.signature(&sig_name)?.clone();
        self.expect(":")?;
        let lhs = self.lincomb(&sig)?;
        self.expect("=")?;
        let rhs = self.lincomb(&sig)?;
        self.expect(";")?;
        let l = lhs.sub(&rhs);
        let id = if l.is_zero() {
            Identity::new(&name, 1, l)?
        } else {
            Identity::from_lincomb(&name, l)?
        };
        ws.add_identity(IdentityDecl { signature: sig_name, identity: id })
    }

    fn system(&mut self, ws: &mut Workspace) -> Result<()> {
        let name = self.ident()?;
        let mut sig = None;
        if self.is_keyword("over") {
            self.bump();
            sig = Some(ws.signature(&self.ident()?)?.clone());
        }
        self.expect("=")?;
        self.expect("{")?;
        let mut ids = Vec::new();
        if !self.eat("}") {
            loop {
                ids.push(self.name()?);
                if self.eat("}") {
                    break;
                }
                self.expect(",")?;
            }
        }
        self.expect(";")?;
        let mut members = Vec::new();
        for id in &ids {
            let d = ws.identity(id)?;
            let s = ws.signature(&d.signature)?;
            match &sig {
                None => sig = Some(s.clone()),
                Some(t) if t == s => {}
                Some(t) => {
                    return Err(Error::SignatureMismatch(format!(
                        "identity `{id}` is over `{}`, not `{}`",
                        s.name, t.name
                    )))
                }
            }
            members.push(d.identity.clone());
        }
        let sig = sig.ok_or_else(|| Error::Structural(format!("empty system `{name}` needs `over`")))?;
        ws.add_system(IdentitySystem::new(&name, sig, members)?)
    }

    /// An operation symbol, with `f<` / `f>` read as `f^{1}` / `f^{2}`.
    fn symbol(&mut self) -> Result<OpSym> {
        let s = self.name()?;
        let sym = split_symbol(&s)?;
        if sym.deco.is_none() {
            if self.eat("<") {
                return Ok(sym.with_deco(Some(Subset::singleton(1))));
            }
            if self.eat(">") {
                return Ok(sym.with_deco(Some(Subset::singleton(2))));
            }
        }
        Ok(sym)
    }

    fn morphism(&mut self, ws: &mut Workspace) -> Result<()> {
        let name = self.ident()?;
        self.expect(":")?;
        let src = ws.signature(&self.ident()?)?.clone();
        self.expect("->")?;
        let tgt = ws.signature(&self.ident()?)?.clone();
        self.expect("{")?;
        let mut images = BTreeMap::new();
        while !self.eat("}") {
            let sym = self.symbol()?;
            src.arity_of(&sym)?;
            self.expect("|->")?;
            let img = self.lincomb(&tgt)?;
            self.expect(";")?;
            if images.insert(sym.clone(), img).is_some() {
                return Err(Error::Duplicate { kind: "image", name: sym.to_string() });
            }
        }
        ws.add_morphism(Morphism::new(&name, src, tgt, images)?)
    }

    fn algebra(&mut self, ws: &mut Workspace) -> Result<()> {
        let name = self.ident()?;
        self.keyword("over")?;
        let sig = ws.signature(&self.ident()?)?.clone();
        self.keyword("dim")?;
        let dim = self.int()?;
        self.expect("{")?;
        self.keyword("basis")?;
        let mut basis = vec![self.ident()?];
        while self.eat(",") {
            basis.push(self.ident()?);
        }
        self.expect(";")?;
        if basis.len() != dim || dim == 0 {
            return Err(Error::Dimension(format!("`{name}` declares dim {dim} with {} basis elements", basis.len())));
        }
        for (k, b) in basis.iter().enumerate() {
            if basis[..k].contains(b) {
                return Err(Error::Duplicate { kind: "basis element", name: b.clone() });
            }
        }
        let mut a = FiniteAlgebra::zero(&name, sig.clone(), basis);
        let mut seen = std::collections::BTreeSet::new();
        while !self.eat("}") {
            let sym = self.symbol()?;
            let arity = sig.arity_of(&sym)?;
            self.expect("(")?;
            let mut idx = Vec::new();
            loop {
                let b = self.ident()?;
                idx.push(a.basis_index(&b).ok_or_else(|| Error::UnknownReference {
                    kind: "basis element",
                    name: b.clone(),
                })?);
                if self.eat(")") {
                    break;
                }
                self.expect(",")?;
            }
            if idx.len() != arity {
                return Err(Error::Structural(format!("`{sym}` expects {arity} arguments, got {}", idx.len())));
            }
            self.expect("=")?;
            let v = self.vector(&a)?;
            self.expect(";")?;
            if !seen.insert((sym.clone(), idx.clone())) {
                return Err(Error::Duplicate { kind: "product", name: sym.to_string() });
            }
            a.set(&sym, &idx, v)?;
        }
        ws.add_algebra(a)
    }

    /// `c*b + ... ` over basis names, or `0`.
    fn vector(&mut self, a: &FiniteAlgebra) -> Result<Vector> {
        let mut v = zero_vec(a.dim());
        let mut first = true;
        loop {
            let neg = if self.eat("-") {
                true
            } else if first {
                self.eat("+");
                false
            } else if self.eat("+") {
                false
            } else {
                break;
            };
            first = false;
            let mut c = Q::one();
            let mut constant = false;
            if matches!(self.peek().tok, Tok::Int(_)) {
                c = self.unsigned_rational()?;
                if !self.eat("*") {
                    constant = true;
                }
            }
            if constant {
                if !c.is_zero() {
                    return Err(self.error("constants other than 0 need a basis element"));
                }
                continue;
            }
            let b = self.ident()?;
            let k = a.basis_index(&b).ok_or_else(|| Error::UnknownReference {
                kind: "basis element",
                name: b.clone(),
            })?;
            if neg {
                c = -c;
            }
            v[k] += c;
        }
        Ok(v)
    }

    fn operator(&mut self, ws: &mut Workspace) -> Result<()> {
        let name = self.ident()?;
        self.keyword("on")?;
        let alg = self.ident()?;
        self.expect("=")?;
        self.expect("[")?;
        let mut rows = Vec::new();
        loop {
            self.expect("[")?;
            let mut row = vec![self.rational()?];
            while self.eat(",") {
                row.push(self.rational()?);
            }
            self.expect("]")?;
            rows.push(row);
            if self.eat("]") {
                break;
            }
            self.expect(",")?;
        }
        self.expect(";")?;
        let op = LinearOperator::new(&name, rows)?;
        ws.add_operator(OperatorDecl { algebra: alg, operator: op })
    }

    fn lincomb(&mut self, sig: &Signature) -> Result<LinComb> {
        let mut out = LinComb::zero();
        let mut first = true;
        loop {
            let neg = if self.eat("-") {
                true
            } else if first {
                self.eat("+");
                false
            } else if self.eat("+") {
                false
            } else {
                break;
            };
            first = false;
            let mut c = Q::one();
            if matches!(self.peek().tok, Tok::Int(_)) {
                c = self.unsigned_rational()?;
                if !self.eat("*") {
                    if !c.is_zero() {
                        return Err(self.error("constant terms are not allowed"));
                    }
                    continue;
                }
            }
            let f = self.factor(sig)?;
            out.add_scaled(&f, &if neg { -c } else { c });
        }
        if first {
            return Err(self.error("expected a term"));
        }
        Ok(out)
    }

    fn factor(&mut self, sig: &Signature) -> Result<LinComb> {
        if self.eat("(") {
            let l = self.lincomb(sig)?;
            self.expect(")")?;
            return Ok(l);
        }
        let at = self.pos;
        let s = self.name()?;
        if is_variable_name(&s) {
            let i: u32 = s[1..].parse().map_err(|_| self.error("variable index out of range"))?;
            if i == 0 {
                self.pos = at;
                return Err(self.error("variables are numbered from x1"));
            }
            return Ok(LinComb::from_term(Term::var(i)));
        }
        self.pos = at;
        let sym = self.symbol()?;
        let arity = sig.arity_of(&sym).map_err(|e| {
            let t = &self.toks[at];
            Error::Parse { line: t.line, col: t.col, token: t.text(), msg: e.to_string() }
        })?;
        self.expect("(")?;
        let mut args = vec![self.lincomb(sig)?];
        while self.eat(",") {
            args.push(self.lincomb(sig)?);
        }
        self.expect(")")?;
        if args.len() != arity {
            let t = &self.toks[at];
            return Err(Error::Parse {
                line: t.line,
                col: t.col,
                token: t.text(),
                msg: format!("`{sym}` expects {arity} arguments, got {}", args.len()),
            });
        }
        Ok(LinComb::apply_op(&sym, &args))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LIE: &str = "
        signature lie_sig { op br : 2; }
        identity anti over lie_sig : br(x1,x2) + br(x2,x1) = 0;
        identity jacobi over lie_sig : br(br(x1,x2),x3) + br(br(x2,x3),x1) + br(br(x3,x1),x2) = 0;
        system lie = { anti, jacobi };
    ";

    #[test]
    fn lie_preset_shape() {
        let ws = parse(LIE).unwrap();
        assert_eq!(ws.signatures[0].ops.len(), 1);
        assert_eq!(ws.system("lie").unwrap().identities.len(), 2);
    }

    #[test]
    fn repeated_variable_rejected() {
        let src = "signature s { op f : 2; } identity bad over s : f(x1, x1) = 0;";
        match parse(src) {
            Err(Error::Parse { line, msg, .. }) => {
                assert_eq!(line, 1);
                assert!(msg.contains("multilinear"), "{msg}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn decorated_symbols_and_aliases() {
        let ws = parse("signature s { op f : 2; } signature d = di s;").unwrap();
        let sig = ws.signature("d").unwrap();
        let a = parse_lincomb(sig, "f<(x1,x2) - f^{2}(x2,x1)").unwrap();
        let b = parse_lincomb(sig, "f^{1}(x1,x2) - f>(x2,x1)").unwrap();
        assert_eq!(a, b);
        assert!(parse_lincomb(sig, "f^{1,2}(x1,x2)").is_err());
        assert!(parse_lincomb(sig, "f(x1,x2)").is_err());
    }

    #[test]
    fn lincomb_arguments_expand() {
        let ws = parse("signature s { op f : 2; }").unwrap();
        let sig = ws.signature("s").unwrap();
        let l = parse_lincomb(sig, "f(f(x1,x2) - f(x2,x1), x3)").unwrap();
        assert_eq!(l.len(), 2);
        let r = parse_lincomb(sig, "3/2*f(x1,x2) - 1/2*f(x1,x2)").unwrap();
        assert_eq!(r, parse_lincomb(sig, "f(x1,x2)").unwrap());
    }

    #[test]
    fn algebra_and_operator() {
        let src = "
            signature s { op m : 2; }
            algebra k over s dim 2 { basis a, b; m(a,a) = a; m(a,b) = 1/2*b - 0; }
            operator t on k = [[0, 1], [0, 0]];
        ";
        let ws = parse(src).unwrap();
        let a = ws.algebra("k").unwrap();
        assert_eq!(a.product_basis(&OpSym::plain("m"), &[0, 1]).unwrap()[1], crate::rational::frac(1, 2));
        assert_eq!(ws.operator("t").unwrap().operator.dim(), 2);
        assert!(parse("signature s { op m : 2; } algebra k over s dim 1 { basis a; } operator t on k = [[1,2],[3,4]];").is_err());
    }

    #[test]
    fn errors_carry_positions() {
        match parse("signature s {\n  op m : ;\n}") {
            Err(Error::Parse { line, col, token, .. }) => assert_eq!((line, col, token.as_str()), (2, 10, ";")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("identity a over nope : x1 = x1;"), Err(Error::Parse { .. })));
    }
}
