//! Verified two-colored sharpness witnesses for the classical Ramsey numbers
//! the constructions consume. Small witnesses are built-in circulants; the
//! (4,5) and (5,5) witnesses come from a cache directory or from search.
//! Nothing leaves this module without passing [`verify_witness`].

use crate::clique::mono_clique_number;
use crate::coloring::{ColoringBuilder, EdgeColoring};
use std::path::{Path, PathBuf};
use thiserror::Error;

/// Environment variable overriding the witness cache directory.
pub const CACHE_ENV_VAR: &str = "GALLAI_CACHE_DIR";

pub const RED: usize = 0;
pub const BLUE: usize = 1;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("connection set is not closed under negation mod {n}: {d} present, {} missing", n - d)]
    AsymmetricSet { n: usize, d: usize },
    #[error("connection set entry {d} out of range 1..{n}")]
    SetOutOfRange { n: usize, d: usize },
    #[error("witness requires a 2-coloring (got k = {0})")]
    NotTwoColored(usize),
    #[error("no ({s}, {t}) witness of order {n} available{}", hint.as_deref().map(|h| format!(": {h}")).unwrap_or_default())]
    Unavailable {
        s: usize,
        t: usize,
        n: usize,
        hint: Option<String>,
    },
    #[error("cached file {path} is not a valid ({s}, {t}) witness")]
    Invalid { s: usize, t: usize, path: String },
    #[error("unsupported clique bounds ({0}, {1})")]
    UnsupportedPair(usize, usize),
    #[error(transparent)]
    Coloring(#[from] crate::coloring::ColoringError),
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
}

/// 2-coloring of `K_n` where `{u, v}` is red iff `(u - v) mod n` lies in the
/// connection set.
pub fn circulant(n: usize, set: &[usize]) -> Result<EdgeColoring, CatalogError> {
    let mut member = vec![false; n];
    for &d in set {
        if d == 0 || d >= n {
            return Err(CatalogError::SetOutOfRange { n, d });
        }
        member[d] = true;
    }
    for d in 1..n {
        if member[d] && !member[n - d] {
            return Err(CatalogError::AsymmetricSet { n, d });
        }
    }
    let mut b = ColoringBuilder::new(n, 2, BLUE)?;
    for u in 0..n {
        for v in (u + 1)..n {
            if member[v - u] {
                b.set_color(u, v, RED)?;
            }
        }
    }
    Ok(b.build())
}

/// True iff the red clique number is below `s` and the blue one below `t`.
pub fn verify_witness(g: &EdgeColoring, s: usize, t: usize) -> Result<bool, CatalogError> {
    if g.k() != 2 {
        return Err(CatalogError::NotTwoColored(g.k()));
    }
    Ok(mono_clique_number(g, RED).unwrap() < s && mono_clique_number(g, BLUE).unwrap() < t)
}

/// Built-in circulant connection sets, all passing [`verify_witness`].
fn builtin(s: usize, t: usize) -> Option<(usize, &'static [usize])> {
    match (s, t) {
        (3, 3) => Some((5, &[1, 4])),
        (3, 4) => Some((8, &[1, 4, 7])),
        (3, 5) => Some((13, &[1, 5, 8, 12])),
        // quadratic residues mod 17
        (4, 4) => Some((17, &[1, 2, 4, 8, 9, 13, 15, 16])),
        _ => None,
    }
}

/// Default witness order per clique-bound pair.
pub fn standard_order(s: usize, t: usize) -> Option<usize> {
    match (s, t) {
        (3, 3) => Some(5),
        (3, 4) => Some(8),
        (4, 4) => Some(17),
        (3, 5) => Some(13),
        (4, 5) => Some(24),
        (5, 5) => Some(42),
        _ => None,
    }
}

/// Deterministic scan over all circulant 2-colorings of `K_n`, smallest
/// connection bitmask first; returns the first verified witness.
pub fn circulant_scan(n: usize, s: usize, t: usize) -> Option<EdgeColoring> {
    let half = n / 2;
    for mask in 1u64..(1u64 << half) {
        let mut set = Vec::new();
        for d in 1..=half {
            if (mask >> (d - 1)) & 1 == 1 {
                set.push(d);
                if d != n - d {
                    set.push(n - d);
                }
            }
        }
        let g = circulant(n, &set).expect("symmetric by construction");
        if verify_witness(&g, s, t).unwrap() {
            return Some(g);
        }
    }
    None
}

/// Witness source with an on-disk `.gec` cache.
///
/// Resolution order for the cache directory: explicit argument, then the
/// `GALLAI_CACHE_DIR` environment variable, then no cache.
pub struct Catalog {
    cache_dir: Option<PathBuf>,
}

impl Catalog {
    pub fn new(cache_dir: Option<PathBuf>) -> Catalog {
        let cache_dir = cache_dir.or_else(|| std::env::var_os(CACHE_ENV_VAR).map(PathBuf::from));
        Catalog { cache_dir }
    }

    /// A catalog that never touches the filesystem.
    pub fn builtin_only() -> Catalog {
        Catalog { cache_dir: None }
    }

    pub fn cache_dir(&self) -> Option<&Path> {
        self.cache_dir.as_deref()
    }

    fn cache_path(&self, s: usize, t: usize, n: usize) -> Option<PathBuf> {
        self.cache_dir
            .as_ref()
            .map(|d| d.join(format!("witness_{s}_{t}_{n}.gec")))
    }

    /// Verified witness of order `n` avoiding red `K_s` and blue `K_t`.
    pub fn witness(&self, s: usize, t: usize, n: usize) -> Result<EdgeColoring, CatalogError> {
        if let Some((order, set)) = builtin(s, t) {
            if order == n {
                let g = circulant(n, set)?;
                return if verify_witness(&g, s, t)? {
                    Ok(g)
                } else {
                    Err(CatalogError::Invalid {
                        s,
                        t,
                        path: "<builtin>".into(),
                    })
                };
            }
        }
        if let Some(path) = self.cache_path(s, t, n) {
            if path.exists() {
                let text = std::fs::read_to_string(&path)?;
                let g = EdgeColoring::from_gec(&text).map_err(|_| CatalogError::Invalid {
                    s,
                    t,
                    path: path.display().to_string(),
                })?;
                if g.n() == n && verify_witness(&g, s, t)? {
                    return Ok(g);
                }
                return Err(CatalogError::Invalid {
                    s,
                    t,
                    path: path.display().to_string(),
                });
            }
        }
        Err(CatalogError::Unavailable {
            s,
            t,
            n,
            hint: Some("run `catalog search` to populate the cache".into()),
        })
    }

    /// Witness at the standard order for the pair.
    pub fn known_witness(&self, s: usize, t: usize) -> Result<EdgeColoring, CatalogError> {
        let n = standard_order(s, t).ok_or(CatalogError::UnsupportedPair(s, t))?;
        self.witness(s, t, n)
    }

    /// Stores a verified witness in the cache (single-writer discipline is
    /// the caller's concern; writes go through a temp file + rename).
    pub fn store(&self, g: &EdgeColoring, s: usize, t: usize) -> Result<PathBuf, CatalogError> {
        if !verify_witness(g, s, t)? {
            return Err(CatalogError::Invalid {
                s,
                t,
                path: "<candidate>".into(),
            });
        }
        let path = self
            .cache_path(s, t, g.n())
            .ok_or_else(|| CatalogError::Unavailable {
                s,
                t,
                n: g.n(),
                hint: Some("no cache directory configured".into()),
            })?;
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let tmp = path.with_extension("gec.tmp");
        std::fs::write(&tmp, g.to_gec())?;
        std::fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// Tries the circulant scan, then tabu search, caching any find.
    pub fn acquire(
        &self,
        s: usize,
        t: usize,
        n: usize,
        seed: u64,
        budget: u64,
    ) -> Result<EdgeColoring, CatalogError> {
        if let Ok(g) = self.witness(s, t, n) {
            return Ok(g);
        }
        let found = if n <= 32 {
            circulant_scan(n, s, t)
        } else {
            None
        };
        let found = found.or_else(|| crate::search::search_witness(n, s, t, seed, budget));
        match found {
            Some(g) => {
                if self.cache_dir.is_some() {
                    self.store(&g, s, t)?;
                }
                Ok(g)
            }
            None => Err(CatalogError::Unavailable {
                s,
                t,
                n,
                hint: Some(format!("search exhausted budget {budget}")),
            }),
        }
    }
}
