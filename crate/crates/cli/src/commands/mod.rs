pub mod algebra;
pub mod combinat;
pub mod verify;

use std::sync::Arc;

use schubert_core::groebner::{GroebnerBasis, TermOrder};
use schubert_core::{QIdeal, Rational};

use crate::cache::GbCache;

/// Settings shared by every command.
pub struct Ctx {
    pub cache: Option<GbCache>,
    pub extended: bool,
}

impl Ctx {
    pub fn groebner_basis(&self, ideal: &QIdeal, order: &TermOrder) -> Arc<GroebnerBasis<Rational>> {
        match &self.cache {
            Some(c) => c.groebner_basis(ideal, order),
            None => ideal.groebner_basis(order),
        }
    }
}
