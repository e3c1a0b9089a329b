//! Bundled signatures, systems, morphisms and algebras.

use crate::dsl::{parse_into, Workspace};
use crate::error::Result;

/// File name and source of every preset, in load order.
pub const FILES: &[(&str, &str)] = &[
    ("signatures.dt", include_str!("../presets/signatures.dt")),
    ("systems.dt", include_str!("../presets/systems.dt")),
    ("morphisms.dt", include_str!("../presets/morphisms.dt")),
    ("algebras.dt", include_str!("../presets/algebras.dt")),
    ("grassmann.dt", include_str!("../presets/grassmann.dt")),
];

/// All presets loaded into one workspace.
pub fn workspace() -> Result<Workspace> {
    let mut ws = Workspace::new();
    for (_, src) in FILES {
        parse_into(&mut ws, src)?;
    }
    Ok(ws)
}
