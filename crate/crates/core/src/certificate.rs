//! Partition certificates: the proof object that a coloring is a
//! substitution product (or more generally admits a Gallai partition), plus
//! the `.cert.json` wire format.

use crate::bitset::VertexSet;
use crate::coloring::{ColoringBuilder, EdgeColoring};
use serde::{Deserialize, Serialize};

/// A vertex partition together with its reduced coloring.
///
/// Valid when: the parts partition the vertex set, every cross pair of parts
/// is monochromatic in the color the reduced coloring names, and at most two
/// distinct colors appear between parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionCertificate {
    /// Ordered, pairwise disjoint, covering all vertices.
    pub parts: Vec<VertexSet>,
    /// Complete coloring on one vertex per part, in the global palette.
    pub reduced: EdgeColoring,
    /// The distinct colors appearing between parts (at most two).
    pub colors_between: Vec<usize>,
}

impl PartitionCertificate {
    pub fn q(&self) -> usize {
        self.parts.len()
    }
}

/// Nested certificates for iterated substitutions: level 0 describes the
/// whole coloring; level `l + 1` describes the coloring induced on the first
/// part of level `l` (in a blow-up all parts of a level are identical).
#[derive(Clone, Debug, Default)]
pub struct CertificateChain {
    pub levels: Vec<PartitionCertificate>,
}

impl CertificateChain {
    pub fn single(cert: PartitionCertificate) -> CertificateChain {
        CertificateChain { levels: vec![cert] }
    }

    /// Wraps `self` (which certifies the first part) under an outer level.
    pub fn nest_under(mut self, outer: PartitionCertificate) -> CertificateChain {
        self.levels.insert(0, outer);
        self
    }
}

/// Structural validity of a certificate against a coloring. Never errors:
/// anything malformed is simply `false`.
pub fn verify_certificate(g: &EdgeColoring, cert: &PartitionCertificate) -> bool {
    let n = g.n();
    let q = cert.parts.len();
    if q == 0 || (n >= 2 && q < 2) || cert.reduced.n() != q || cert.reduced.k() != g.k() {
        return false;
    }
    let mut seen = VertexSet::empty(n);
    for part in &cert.parts {
        if part.capacity() != n || part.is_empty() || part.intersects(&seen) {
            return false;
        }
        seen.union_with(part);
    }
    if seen.len() != n {
        return false;
    }
    let mut used = Vec::new();
    for i in 0..q {
        let pi = cert.parts[i].to_vec();
        for j in (i + 1)..q {
            let expect = cert.reduced.color(i, j);
            for &u in &pi {
                for v in cert.parts[j].iter() {
                    if g.color(u, v) != expect {
                        return false;
                    }
                }
            }
            if !used.contains(&expect) {
                used.push(expect);
            }
        }
    }
    if used.len() > 2 {
        return false;
    }
    used.sort_unstable();
    let mut declared = cert.colors_between.clone();
    declared.sort_unstable();
    declared.dedup();
    declared == used
}

/// Validity of a whole chain: each level against the coloring induced by the
/// first parts of the levels above it.
pub fn verify_chain(g: &EdgeColoring, chain: &CertificateChain) -> bool {
    let mut current = g.clone();
    for level in &chain.levels {
        if !verify_certificate(&current, level) {
            return false;
        }
        match current.restrict(&level.parts[0]) {
            Ok(sub) => current = sub,
            Err(_) => return false,
        }
    }
    true
}

// --- .cert.json wire format ---------------------------------------------

#[derive(Serialize, Deserialize)]
struct ReducedJson {
    n: usize,
    k: usize,
    /// Upper-triangle rows, row `u` holding colors of `(u, u+1)..(u, n-1)`.
    rows: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct LevelJson {
    parts: Vec<Vec<usize>>,
    reduced: ReducedJson,
    colors_between: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ChainJson {
    version: u32,
    n: usize,
    k: usize,
    levels: Vec<LevelJson>,
}

pub fn chain_to_json(g: &EdgeColoring, chain: &CertificateChain) -> String {
    let levels = chain
        .levels
        .iter()
        .map(|level| {
            let q = level.reduced.n();
            LevelJson {
                parts: level.parts.iter().map(|p| p.to_vec()).collect(),
                reduced: ReducedJson {
                    n: q,
                    k: level.reduced.k(),
                    rows: (0..q.saturating_sub(1))
                        .map(|u| ((u + 1)..q).map(|v| level.reduced.color(u, v)).collect())
                        .collect(),
                },
                colors_between: level.colors_between.clone(),
            }
        })
        .collect();
    serde_json::to_string_pretty(&ChainJson {
        version: 1,
        n: g.n(),
        k: g.k(),
        levels,
    })
    .expect("serializable")
}

#[derive(Debug, thiserror::Error)]
#[error("certificate json: {0}")]
pub struct CertJsonError(String);

pub fn chain_from_json(text: &str) -> Result<CertificateChain, CertJsonError> {
    let parsed: ChainJson =
        serde_json::from_str(text).map_err(|e| CertJsonError(e.to_string()))?;
    if parsed.version != 1 {
        return Err(CertJsonError(format!(
            "unsupported version {}",
            parsed.version
        )));
    }
    let mut levels = Vec::new();
    let mut ambient = parsed.n;
    for (li, level) in parsed.levels.iter().enumerate() {
        let q = level.reduced.n;
        let mut b = ColoringBuilder::new(q.max(2), level.reduced.k, 0)
            .map_err(|e| CertJsonError(e.to_string()))?;
        // q >= 2 for any meaningful level; q < 2 rejected by verification later
        for (u, row) in level.reduced.rows.iter().enumerate() {
            for (off, &c) in row.iter().enumerate() {
                b.set_color(u, u + 1 + off, c)
                    .map_err(|e| CertJsonError(e.to_string()))?;
            }
        }
        let reduced = b.build();
        if reduced.n() != q {
            return Err(CertJsonError(format!("level {li}: reduced size mismatch")));
        }
        let parts: Vec<VertexSet> = level
            .parts
            .iter()
            .map(|p| VertexSet::from_iter(ambient, p.iter().copied()))
            .collect();
        ambient = parts.first().map(|p| p.len()).unwrap_or(0);
        levels.push(PartitionCertificate {
            parts,
            reduced,
            colors_between: level.colors_between.clone(),
        });
    }
    Ok(CertificateChain { levels })
}
