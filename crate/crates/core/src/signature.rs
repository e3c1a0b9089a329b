//! Operation signatures and their di-/tri- decorated versions.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::subset::Subset;
use crate::term::{OpSym, Term};

/// Whether operation symbols carry subset decorations.
///
/// `Di` allows singleton decorations `f^{i}`, `Tri` any nonempty `f^H`.
/// Unary operations are never decorated: `P(1)` has the single element `{1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Plain,
    Di,
    Tri,
}

impl Mode {
    /// Decorations allowed on an op of the given arity (`None` for undecorated).
    pub fn decorations(self, arity: usize) -> Vec<Option<Subset>> {
        match self {
            Mode::Plain => vec![None],
            _ if arity == 1 => vec![None],
            Mode::Di => (1..=arity as u32).map(|i| Some(Subset::singleton(i))).collect(),
            Mode::Tri => Subset::nonempty_subsets(arity as u32).into_iter().map(Some).collect(),
        }
    }

    /// Subsets `H ⊆ {1..n}` this mode ranges over (singletons for `Di`).
    pub fn subsets(self, n: usize) -> Vec<Subset> {
        match self {
            Mode::Di => (1..=n as u32).map(Subset::singleton).collect(),
            _ => Subset::nonempty_subsets(n as u32),
        }
    }

    pub fn allows(self, h: Subset) -> bool {
        match self {
            Mode::Plain => false,
            Mode::Di => h.is_singleton(),
            Mode::Tri => !h.is_empty(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Plain => "plain",
            Mode::Di => "di",
            Mode::Tri => "tri",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Flags permitted on unary operations.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize)]
pub struct OpFlags {
    pub derivation: bool,
    pub endomorphism: bool,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct OpDecl {
    pub name: String,
    pub arity: usize,
    pub flags: OpFlags,
}

impl OpDecl {
    pub fn new(name: &str, arity: usize) -> Self {
        OpDecl {
            name: name.to_string(),
            arity,
            flags: OpFlags::default(),
        }
    }

    pub fn derivation(name: &str) -> Self {
        OpDecl {
            name: name.to_string(),
            arity: 1,
            flags: OpFlags {
                derivation: true,
                endomorphism: false,
            },
        }
    }
}

/// A finite signature; decorated signatures keep the base ops and a mode.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Signature {
    pub name: String,
    pub ops: Vec<OpDecl>,
    pub mode: Mode,
    /// Name of the plain signature this one decorates.
    pub base: Option<String>,
}

pub(crate) fn is_variable_name(s: &str) -> bool {
    s.len() > 1 && s.starts_with('x') && s[1..].bytes().all(|b| b.is_ascii_digit())
}

impl Signature {
    pub fn new(name: &str, ops: Vec<OpDecl>) -> Result<Self> {
        let sig = Signature {
            name: name.to_string(),
            ops,
            mode: Mode::Plain,
            base: None,
        };
        sig.validate()?;
        Ok(sig)
    }

    pub fn validate(&self) -> Result<()> {
        for (k, op) in self.ops.iter().enumerate() {
            if op.arity == 0 {
                return Err(Error::Structural(format!("op `{}` has arity 0", op.name)));
            }
            if op.arity > 8 {
                return Err(Error::Unsupported(format!(
                    "op `{}` has arity {} (at most 8 supported)",
                    op.name, op.arity
                )));
            }
            if is_variable_name(&op.name) {
                return Err(Error::Structural(format!(
                    "op name `{}` clashes with variable syntax",
                    op.name
                )));
            }
            if self.ops[..k].iter().any(|o| o.name == op.name) {
                return Err(Error::Duplicate {
                    kind: "op",
                    name: op.name.clone(),
                });
            }
            if op.arity > 1 && (op.flags.derivation || op.flags.endomorphism) {
                return Err(Error::Structural(format!(
                    "flags are only allowed on unary ops (`{}`)",
                    op.name
                )));
            }
        }
        Ok(())
    }

    /// The decorated signature `Σ^(2)` (`Di`) or `Σ^(3)` (`Tri`).
    pub fn decorated(&self, mode: Mode, name: &str) -> Result<Self> {
        if self.mode != Mode::Plain {
            return Err(Error::SignatureMismatch(format!(
                "`{}` is already decorated",
                self.name
            )));
        }
        if mode == Mode::Plain {
            return Err(Error::SignatureMismatch("decoration mode must be di or tri".into()));
        }
        Ok(Signature {
            name: name.to_string(),
            ops: self.ops.clone(),
            mode,
            base: Some(self.name.clone()),
        })
    }

    /// The undecorated signature with the same ops.
    pub fn plain_base(&self) -> Signature {
        Signature {
            name: self.base.clone().unwrap_or_else(|| self.name.clone()),
            ops: self.ops.clone(),
            mode: Mode::Plain,
            base: None,
        }
    }

    pub fn op(&self, name: &str) -> Option<&OpDecl> {
        self.ops.iter().find(|o| o.name == name)
    }

    pub fn has_unary(&self) -> bool {
        self.ops.iter().any(|o| o.arity == 1)
    }

    /// All operation symbols with arities, in symbol order.
    pub fn symbols(&self) -> Vec<(OpSym, usize)> {
        let mut out = Vec::new();
        for op in &self.ops {
            for deco in self.mode.decorations(op.arity) {
                out.push((OpSym::plain(&op.name).with_deco(deco), op.arity));
            }
        }
        out.sort();
        out
    }

    /// Arity of a symbol, checking its decoration against the mode.
    pub fn arity_of(&self, sym: &OpSym) -> Result<usize> {
        let op = self.op(&sym.name).ok_or_else(|| Error::UnknownReference {
            kind: "op",
            name: sym.name.to_string(),
        })?;
        let ok = match (self.mode, sym.deco) {
            (_, None) => self.mode == Mode::Plain || op.arity == 1,
            (Mode::Plain, Some(_)) => false,
            (_, Some(_)) if op.arity == 1 => false,
            (mode, Some(h)) => mode.allows(h) && h.max() as usize <= op.arity,
        };
        if ok {
            Ok(op.arity)
        } else {
            Err(Error::BadDecoration(format!(
                "`{sym}` is not a symbol of {} signature `{}`",
                self.mode, self.name
            )))
        }
    }

    /// Every node uses a known symbol with the right number of children.
    pub fn check_term(&self, t: &Term) -> Result<()> {
        match t {
            Term::Var(_) => Ok(()),
            Term::App(op, args) => {
                let arity = self.arity_of(op)?;
                if arity != args.len() {
                    return Err(Error::Structural(format!(
                        "`{op}` expects {arity} arguments, got {}",
                        args.len()
                    )));
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
        }
    }

    /// Both signatures present the same operations (names may differ).
    pub fn same_ops(&self, other: &Signature) -> bool {
        self.mode == other.mode
            && self.ops.len() == other.ops.len()
            && self
                .ops
                .iter()
                .all(|o| other.op(&o.name).is_some_and(|p| p.arity == o.arity))
    }

    pub fn ensure_same(&self, other: &Signature) -> Result<()> {
        if self.same_ops(other) {
            Ok(())
        } else {
            Err(Error::SignatureMismatch(format!(
                "`{}` and `{}` differ",
                self.name, other.name
            )))
        }
    }
}
