//! The workspace language: signatures, identities, systems, morphisms,
//! algebras and operators, with a parser and a printer that round-trip.

pub mod lexer;
pub mod parser;
pub mod printer;

use crate::algebra::{FiniteAlgebra, LinearOperator};
use crate::error::{Error, Result};
use crate::lincomb::{Identity, IdentitySystem};
use crate::morphism::Morphism;
use crate::signature::Signature;

pub use parser::{parse, parse_into, parse_lincomb};
pub use printer::{print_workspace, Style};

/// A named identity together with the signature it was declared over.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdentityDecl {
    pub signature: String,
    pub identity: Identity,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OperatorDecl {
    pub algebra: String,
    pub operator: LinearOperator,
}

/// Everything loaded from one or more sources, in declaration order.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Workspace {
    pub signatures: Vec<Signature>,
    pub identities: Vec<IdentityDecl>,
    pub systems: Vec<IdentitySystem>,
    pub morphisms: Vec<Morphism>,
    pub algebras: Vec<FiniteAlgebra>,
    pub operators: Vec<OperatorDecl>,
}

fn unknown(kind: &'static str, name: &str) -> Error {
    Error::UnknownReference { kind, name: name.to_string() }
}

impl Workspace {
    pub fn new() -> Self {
        Workspace::default()
    }

    pub fn signature(&self, name: &str) -> Result<&Signature> {
        self.signatures.iter().find(|s| s.name == name).ok_or_else(|| unknown("signature", name))
    }

    pub fn identity(&self, name: &str) -> Result<&IdentityDecl> {
        self.identities.iter().find(|s| s.identity.name == name).ok_or_else(|| unknown("identity", name))
    }

    pub fn system(&self, name: &str) -> Result<&IdentitySystem> {
        self.systems.iter().find(|s| s.name == name).ok_or_else(|| unknown("system", name))
    }

    pub fn morphism(&self, name: &str) -> Result<&Morphism> {
        self.morphisms.iter().find(|s| s.name == name).ok_or_else(|| unknown("morphism", name))
    }

    pub fn algebra(&self, name: &str) -> Result<&FiniteAlgebra> {
        self.algebras.iter().find(|s| s.name == name).ok_or_else(|| unknown("algebra", name))
    }

    pub fn operator(&self, name: &str) -> Result<&OperatorDecl> {
        self.operators.iter().find(|s| s.operator.name == name).ok_or_else(|| unknown("operator", name))
    }

    /// A system by name, or a one-element system made from a named identity.
    pub fn system_or_identity(&self, name: &str) -> Result<IdentitySystem> {
        if let Ok(s) = self.system(name) {
            return Ok(s.clone());
        }
        let d = self.identity(name).map_err(|_| unknown("system", name))?;
        IdentitySystem::new(name, self.signature(&d.signature)?.clone(), vec![d.identity.clone()])
    }

    pub fn add_signature(&mut self, s: Signature) -> Result<()> {
        if self.signature(&s.name).is_ok() {
            return Err(Error::Duplicate { kind: "signature", name: s.name });
        }
        self.signatures.push(s);
        Ok(())
    }

    pub fn add_identity(&mut self, d: IdentityDecl) -> Result<()> {
        if self.identity(&d.identity.name).is_ok() {
            return Err(Error::Duplicate { kind: "identity", name: d.identity.name });
        }
        self.identities.push(d);
        Ok(())
    }

    pub fn add_system(&mut self, s: IdentitySystem) -> Result<()> {
        if self.system(&s.name).is_ok() {
            return Err(Error::Duplicate { kind: "system", name: s.name });
        }
        self.systems.push(s);
        Ok(())
    }

    pub fn add_morphism(&mut self, m: Morphism) -> Result<()> {
        if self.morphism(&m.name).is_ok() {
            return Err(Error::Duplicate { kind: "morphism", name: m.name });
        }
        self.morphisms.push(m);
        Ok(())
    }

    pub fn add_algebra(&mut self, a: FiniteAlgebra) -> Result<()> {
        if self.algebra(&a.name).is_ok() {
            return Err(Error::Duplicate { kind: "algebra", name: a.name });
        }
        a.check_unary_flags()?;
        self.algebras.push(a);
        Ok(())
    }

    pub fn add_operator(&mut self, o: OperatorDecl) -> Result<()> {
        if self.operator(&o.operator.name).is_ok() {
            return Err(Error::Duplicate { kind: "operator", name: o.operator.name });
        }
        let a = self.algebra(&o.algebra)?;
        if a.dim() != o.operator.dim() {
            return Err(Error::Dimension(format!(
                "operator `{}` has size {}, algebra `{}` has dimension {}",
                o.operator.name,
                o.operator.dim(),
                a.name,
                a.dim()
            )));
        }
        self.operators.push(o);
        Ok(())
    }

    /// Adds a signature unless one with the same name and content is present.
    pub fn ensure_signature(&mut self, s: &Signature) -> Result<()> {
        match self.signature(&s.name) {
            Ok(t) if t == s => Ok(()),
            Ok(_) => Err(Error::Duplicate { kind: "signature", name: s.name.clone() }),
            Err(_) => {
                if let Some(base) = &s.base {
                    self.ensure_signature(&s.plain_base())
                        .map_err(|_| Error::Duplicate { kind: "signature", name: base.clone() })?;
                }
                self.signatures.push(s.clone());
                Ok(())
            }
        }
    }
}
