use crate::alcove::{FieldTable, Model};
use crate::error::Result;
use crate::fusion::{build_ring, FusionRing};
use crate::modular::ModularData;

/// Exact fusion ring and S-matrix of one model, built together.
#[derive(Debug, Clone)]
pub struct Wzw {
    pub ring: FusionRing,
    pub modular: ModularData,
}

impl Wzw {
    pub fn new(model: Model, tolerance: f64) -> Result<Self> {
        Ok(Wzw {
            ring: build_ring(model)?,
            modular: ModularData::new(model, tolerance)?,
        })
    }

    pub fn model(&self) -> Model {
        self.ring.model()
    }

    pub fn table(&self) -> &FieldTable {
        self.ring.table()
    }

    pub fn tolerance(&self) -> f64 {
        self.modular.tolerance()
    }

    pub fn qdim(&self, x: usize) -> f64 {
        self.modular.qdim(x)
    }

    pub fn n(&self, a: usize, b: usize, c: usize) -> u32 {
        self.ring.n(a, b, c)
    }
}
