//! Cached computation of bases, boundary matrices, Smith summaries and
//! homology modules.

use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cache::{Cache, CacheError};
use crate::complex::{boundary, enumerate_basis, BasisTuple, ComplexError, ComplexSpec, SparsePolyMatrix};
use crate::homology::{homology_from_parts, summarize, BoundarySummary, Coefficients, HomologyError, HomologyModule, Provenance};
use crate::matrix::SparseMatrix;
use crate::ring::IntPoly;

/// Bumped whenever a stored artifact would change meaning.
pub const ARTIFACT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error("boundary composition is nonzero for {spec} at n={n}")]
    BoundarySquared { spec: String, n: usize },
    #[error("homology is defined here for n >= 1, got n={0}")]
    Degree(usize),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub cache_hits: usize,
    pub computed: usize,
}

#[derive(Serialize, Deserialize)]
struct StoredMatrix {
    nrows: usize,
    ncols: usize,
    entries: Vec<(usize, usize, IntPoly)>,
}

impl StoredMatrix {
    fn from_matrix(m: &SparseMatrix<IntPoly>) -> Self {
        StoredMatrix { nrows: m.nrows(), ncols: m.ncols(), entries: m.iter().map(|(i, j, v)| (i, j, v.clone())).collect() }
    }

    fn into_matrix(self) -> SparseMatrix<IntPoly> {
        let mut cols = vec![Vec::new(); self.ncols];
        for (i, j, v) in self.entries {
            cols[j].push((i, v));
        }
        SparseMatrix::from_columns(self.nrows, cols)
    }
}

pub struct Pipeline {
    cache: Cache,
    stats: Mutex<Stats>,
}

impl Pipeline {
    pub fn new(cache: Cache) -> Self {
        Pipeline { cache, stats: Mutex::new(Stats::default()) }
    }

    pub fn uncached() -> Self {
        Pipeline::new(Cache::disabled())
    }

    pub fn cache(&self) -> &Cache {
        &self.cache
    }

    pub fn stats(&self) -> Stats {
        *self.stats.lock().expect("stats lock")
    }

    fn config(spec: &ComplexSpec, what: &str) -> String {
        format!("v{ARTIFACT_VERSION} {spec} {what}")
    }

    fn cached<T, F>(&self, spec: &ComplexSpec, file: &str, what: &str, compute: F) -> Result<T, PipelineError>
    where
        T: Serialize + for<'de> Deserialize<'de>,
        F: FnOnce() -> Result<T, PipelineError>,
    {
        let dir = spec.key();
        let config = Self::config(spec, what);
        if let Some(v) = self.cache.load(&dir, file, &config)? {
            self.stats.lock().expect("stats lock").cache_hits += 1;
            return Ok(v);
        }
        let v = compute()?;
        self.stats.lock().expect("stats lock").computed += 1;
        self.cache.store(&dir, file, &config, &v)?;
        Ok(v)
    }

    pub fn basis(&self, spec: &ComplexSpec, n: usize) -> Result<Vec<BasisTuple>, PipelineError> {
        let spec = spec.canonical();
        spec.validate()?;
        self.cached(&spec, &format!("basis-n{n}.json"), &format!("basis n={n}"), || Ok(enumerate_basis(&spec, n)))
    }

    /// Boundary `∂_n` with bases.
    pub fn boundary(&self, spec: &ComplexSpec, n: usize) -> Result<SparsePolyMatrix, PipelineError> {
        let spec = spec.canonical();
        let stored = self.cached(&spec, &format!("boundary-n{n}.json"), &format!("boundary n={n}"), || {
            Ok(StoredMatrix::from_matrix(&boundary(&spec, n)?.matrix))
        })?;
        let matrix = stored.into_matrix();
        let row_basis = self.basis(&spec, n - 1)?;
        let col_basis = self.basis(&spec, n)?;
        Ok(SparsePolyMatrix { matrix, row_basis, col_basis })
    }

    pub fn summary(&self, spec: &ComplexSpec, n: usize, coeffs: Coefficients) -> Result<BoundarySummary, PipelineError> {
        let spec = spec.canonical();
        let file = format!("snf-n{n}-{}.json", coeffs.tag());
        self.cached(&spec, &file, &format!("snf n={n} {}", coeffs.tag()), || {
            let b = self.boundary(&spec, n)?;
            log::info!("smith form of {spec} boundary n={n}: {}x{}", b.nrows(), b.ncols());
            Ok(summarize(&b.matrix, coeffs)?)
        })
    }

    /// `H_n` of the spec. A fresh computation first checks `∂_n ∂_{n+1} = 0`.
    pub fn homology(&self, spec: &ComplexSpec, n: usize, coeffs: Coefficients) -> Result<HomologyModule, PipelineError> {
        if n == 0 {
            return Err(PipelineError::Degree(n));
        }
        let spec = spec.canonical();
        let file = format!("homology-n{n}-{}.json", coeffs.tag());
        self.cached(&spec, &file, &format!("homology n={n} {}", coeffs.tag()), || {
            let dim = self.basis(&spec, n)?.len();
            if dim == 0 {
                return Ok(HomologyModule::zero(Provenance::Direct));
            }
            let d_n = self.boundary(&spec, n)?;
            let d_n1 = self.boundary(&spec, n + 1)?;
            if !d_n.matrix.mul(&d_n1.matrix).is_zero() {
                return Err(PipelineError::BoundarySquared { spec: spec.to_string(), n });
            }
            let s_n = self.summary(&spec, n, coeffs)?;
            let s_n1 = self.summary(&spec, n + 1, coeffs)?;
            Ok(homology_from_parts(dim, &s_n, &s_n1))
        })
    }
}
