//! Genus-zero inputs shared by everything downstream, computed once per `(lambda, mu, D)`.

use super::frame::CanonicalFrame;
use super::generators::GeneratorBundle;
use crate::error::Result;
use crate::frobenius::{Params, Sector};
use crate::genus0::{ConnectionMatrices, NamedEntries};
use crate::genus0::relations::connection_matrices;

#[derive(Clone, Debug)]
pub struct CanonicalData {
    pub params: Params,
    pub conn: ConnectionMatrices,
    pub entries: NamedEntries,
    pub gens: GeneratorBundle,
    /// Indexed by `Sector::index`.
    pub frames: Vec<CanonicalFrame>,
}

impl CanonicalData {
    pub fn new(p: &Params, trunc: u32) -> Result<Self> {
        let conn = connection_matrices(p, trunc)?;
        let swapped = connection_matrices(&p.swapped(), trunc)?;
        let entries = NamedEntries::from_matrices(p, &conn, &swapped);
        let gens = GeneratorBundle::new(&entries)?;
        let frames = CanonicalFrame::all(p, trunc)?;
        Ok(CanonicalData { params: p.clone(), conn, entries, gens, frames })
    }

    pub fn trunc(&self) -> u32 {
        self.conn.trunc()
    }

    pub fn frame(&self, s: Sector) -> &CanonicalFrame {
        &self.frames[s.index()]
    }
}
