//! Canonical text output. Everything printed in [`Style::Machine`] parses back
//! to an identical object.

use num_traits::{One, Signed, Zero};

use super::{OperatorDecl, Workspace};
use crate::algebra::{basis_tuples, flat_index, FiniteAlgebra};
use crate::lincomb::{IdentitySystem, LinComb};
use crate::morphism::Morphism;
use crate::rational::{fmt_q, Q};
use crate::signature::{Mode, Signature};
use crate::term::Term;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Style {
    /// `f^{1}` everywhere.
    Machine,
    /// Binary di-decorated ops as `f<` / `f>`.
    Human,
}

pub fn format_term(t: &Term, mode: Mode, style: Style) -> String {
    match t {
        Term::Var(i) => format!("x{i}"),
        Term::App(op, args) => {
            let head = match (style, mode, op.deco) {
                (Style::Human, Mode::Di, Some(h)) if args.len() == 2 => {
                    format!("{}{}", op.name, if h.contains(1) { "<" } else { ">" })
                }
                _ => op.to_string(),
            };
            let inner: Vec<String> = args.iter().map(|a| format_term(a, mode, style)).collect();
            format!("{head}({})", inner.join(","))
        }
    }
}

fn signed_terms<'a>(items: impl Iterator<Item = (String, &'a Q)>) -> String {
    let mut out = String::new();
    for (k, (body, c)) in items.enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        let scaled = if a.is_one() { body } else { format!("{}*{body}", fmt_q(&a)) };
        match (k, neg) {
            (0, false) => out.push_str(&scaled),
            (0, true) => out.push_str(&format!("-{scaled}")),
            (_, false) => out.push_str(&format!(" + {scaled}")),
            (_, true) => out.push_str(&format!(" - {scaled}")),
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn format_lincomb(l: &LinComb, mode: Mode, style: Style) -> String {
    signed_terms(l.iter().map(|(t, c)| (format_term(t, mode, style), c)))
}

pub fn format_vector(a: &FiniteAlgebra, v: &[Q]) -> String {
    signed_terms(
        v.iter()
            .zip(&a.basis)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, b)| (b.clone(), c)),
    )
}

pub fn print_signature(sig: &Signature) -> String {
    if let (Some(base), true) = (&sig.base, sig.mode != Mode::Plain) {
        return format!("signature {} = {} {base};\n", sig.name, sig.mode);
    }
    let mut s = format!("signature {} {{\n", sig.name);
    for op in &sig.ops {
        let mut flags = Vec::new();
        if op.flags.derivation {
            flags.push("derivation");
        }
        if op.flags.endomorphism {
            flags.push("endomorphism");
        }
        if flags.is_empty() {
            s.push_str(&format!("  op {} : {};\n", op.name, op.arity));
        } else {
            s.push_str(&format!("  op {} : {} flags: {};\n", op.name, op.arity, flags.join(", ")));
        }
    }
    s.push_str("}\n");
    s
}

pub fn print_identity(name: &str, sig: &Signature, lhs: &LinComb, style: Style) -> String {
    format!(
        "identity {name} over {} : {} = 0;\n",
        sig.name,
        format_lincomb(lhs, sig.mode, style)
    )
}

/// The `system` line alone.
pub fn print_system_decl(sys: &IdentitySystem) -> String {
    let names: Vec<&str> = sys.identities.iter().map(|i| i.name.as_str()).collect();
    format!("system {} over {} = {{ {} }};\n", sys.name, sys.signature.name, names.join(", "))
}

/// Signatures, identities and the system line: a self-contained source.
pub fn print_system(sys: &IdentitySystem, style: Style) -> String {
    let mut s = String::new();
    if sys.signature.mode != Mode::Plain {
        s.push_str(&print_signature(&sys.signature.plain_base()));
    }
    s.push_str(&print_signature(&sys.signature));
    for id in &sys.identities {
        s.push_str(&print_identity(&id.name, &sys.signature, &id.lhs, style));
    }
    s.push_str(&print_system_decl(sys));
    s
}

pub fn print_morphism(m: &Morphism, style: Style) -> String {
    let mut s = format!("morphism {} : {} -> {} {{\n", m.name, m.source.name, m.target.name);
    for (sym, img) in &m.images {
        let head = format_term(
            &Term::App(sym.clone(), (1..=m.source.arity_of(sym).unwrap_or(0) as u32).map(Term::var).collect()),
            m.source.mode,
            style,
        );
        let head = head.split('(').next().unwrap_or_default().to_string();
        s.push_str(&format!("  {head} |-> {};\n", format_lincomb(img, m.target.mode, style)));
    }
    s.push_str("}\n");
    s
}

pub fn print_algebra(a: &FiniteAlgebra) -> String {
    let mut s = format!(
        "algebra {} over {} dim {} {{\n  basis {};\n",
        a.name,
        a.signature.name,
        a.dim(),
        a.basis.join(", ")
    );
    for (sym, t) in &a.tables {
        for idx in basis_tuples(a.dim(), t.arity) {
            let v = &t.data[flat_index(a.dim(), &idx)];
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            let args: Vec<&str> = idx.iter().map(|&k| a.basis[k].as_str()).collect();
            s.push_str(&format!("  {sym}({}) = {};\n", args.join(","), format_vector(a, v)));
        }
    }
    s.push_str("}\n");
    s
}

pub fn print_operator(o: &OperatorDecl) -> String {
    let rows: Vec<String> = o
        .operator
        .matrix
        .iter()
        .map(|r| format!("[{}]", r.iter().map(fmt_q).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("operator {} on {} = [{}];\n", o.operator.name, o.algebra, rows.join(", "))
}

pub fn print_workspace(ws: &Workspace) -> String {
    let mut s = String::new();
    for sig in &ws.signatures {
        s.push_str(&print_signature(sig));
    }
    for d in &ws.identities {
        let sig = ws.signature(&d.signature).expect("resolved at load");
        s.push_str(&print_identity(&d.identity.name, sig, &d.identity.lhs, Style::Machine));
    }
    for sys in &ws.systems {
        s.push_str(&print_system_decl(sys));
    }
    for m in &ws.morphisms {
        s.push_str(&print_morphism(m, Style::Machine));
    }
    for a in &ws.algebras {
        s.push_str(&print_algebra(a));
    }
    for o in &ws.operators {
        s.push_str(&print_operator(o));
    }
    s
}
