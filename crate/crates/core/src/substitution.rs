//! Building Gallai colorings by substitution: blow up a 2-colored template,
//! inserting a coloring into each template vertex. Realizes the extremal
//! lower-bound constructions for every parity case and the 3-colored K169
//! example.

use crate::bitset::VertexSet;
use crate::catalog::{Catalog, CatalogError, BLUE, RED};
use crate::certificate::{CertificateChain, PartitionCertificate};
use crate::coloring::{ColoringBuilder, ColoringError, EdgeColoring};
use crate::formula::{classify_case, GrParams, ParityCase};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SubstitutionError {
    #[error("template has {template} vertices but {parts} parts were supplied")]
    ArityMismatch { template: usize, parts: usize },
    #[error("template must carry exactly two colors (got {0})")]
    TemplateNotTwoColored(usize),
    #[error("color map entries must be distinct (both are {0})")]
    ColorCollision(usize),
    #[error("part {index} uses palette of {part_k} colors, expected {expected}")]
    PaletteMismatch {
        index: usize,
        part_k: usize,
        expected: usize,
    },
    #[error("palette provides {got} {class} colors but case {case} needs {need}")]
    PaletteTooSmall {
        case: ParityCase,
        class: &'static str,
        need: usize,
        got: usize,
    },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// Remaps every edge color through `map` (index = old color) into a palette
/// of `new_k` colors.
pub fn map_colors(
    g: &EdgeColoring,
    map: &[usize],
    new_k: usize,
) -> Result<EdgeColoring, ColoringError> {
    let mut b = ColoringBuilder::new(g.n().max(2), new_k, 0)?;
    if g.n() == 1 {
        return Ok(EdgeColoring::single_vertex(new_k));
    }
    for u in 0..g.n() {
        for v in (u + 1)..g.n() {
            b.set_color(u, v, map[g.color(u, v)])?;
        }
    }
    Ok(b.build())
}

/// Substitutes `parts[i]` for vertex `i` of the 2-colored `template`; cross
/// edges take `color_map[template color]`. Returns the product and the
/// certificate recording the partition.
pub fn substitute(
    template: &EdgeColoring,
    parts: &[EdgeColoring],
    color_map: [usize; 2],
) -> Result<(EdgeColoring, PartitionCertificate), SubstitutionError> {
    if template.k() != 2 {
        return Err(SubstitutionError::TemplateNotTwoColored(template.k()));
    }
    if parts.len() != template.n() {
        return Err(SubstitutionError::ArityMismatch {
            template: template.n(),
            parts: parts.len(),
        });
    }
    if color_map[0] == color_map[1] {
        return Err(SubstitutionError::ColorCollision(color_map[0]));
    }
    let k = parts[0].k();
    for (index, p) in parts.iter().enumerate() {
        if p.k() != k {
            return Err(SubstitutionError::PaletteMismatch {
                index,
                part_k: p.k(),
                expected: k,
            });
        }
    }
    for &c in &color_map {
        if c >= k {
            return Err(SubstitutionError::Coloring(
                ColoringError::ColorOutOfRange { color: c, k },
            ));
        }
    }

    let total: usize = parts.iter().map(|p| p.n()).sum();
    let mut offsets = Vec::with_capacity(parts.len());
    let mut acc = 0usize;
    for p in parts {
        offsets.push(acc);
        acc += p.n();
    }

    let mut b = ColoringBuilder::new(total, k, 0)?;
    for (i, p) in parts.iter().enumerate() {
        for u in 0..p.n() {
            for v in (u + 1)..p.n() {
                b.set_color(offsets[i] + u, offsets[i] + v, p.color(u, v))?;
            }
        }
    }
    for i in 0..parts.len() {
        for j in (i + 1)..parts.len() {
            let c = color_map[template.color(i, j)];
            for u in 0..parts[i].n() {
                for v in 0..parts[j].n() {
                    b.set_color(offsets[i] + u, offsets[j] + v, c)?;
                }
            }
        }
    }
    let product = b.build();

    let reduced = map_colors(template, &{
        let mut m = vec![0usize; 2];
        m[0] = color_map[0];
        m[1] = color_map[1];
        m
    }, k)?;
    let mut colors_between: Vec<usize> = (0..template.n())
        .flat_map(|i| ((i + 1)..template.n()).map(move |j| (i, j)))
        .map(|(i, j)| color_map[template.color(i, j)])
        .collect();
    colors_between.sort_unstable();
    colors_between.dedup();
    let parts_sets = parts
        .iter()
        .enumerate()
        .map(|(i, p)| VertexSet::from_iter(total, offsets[i]..offsets[i] + p.n()))
        .collect();
    Ok((
        product,
        PartitionCertificate {
            parts: parts_sets,
            reduced,
            colors_between,
        },
    ))
}

/// The colors a base graph consumes, drawn from the tail of each class.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BasePalette {
    pub k: usize,
    pub k5: Vec<usize>,
    pub k4: Vec<usize>,
    pub k3: Vec<usize>,
}

/// How many colors of each class a case's base graph consumes (K5, K4, K3).
pub fn base_color_demand(case: ParityCase) -> (usize, usize, usize) {
    use ParityCase::*;
    match case {
        C1 => (0, 0, 0),
        C2 => (0, 0, 1),
        C3 => (0, 1, 0),
        C4 => (1, 0, 0),
        C5 => (0, 1, 1),
        C6 => (1, 0, 1),
        C7 => (0, 1, 2),
        C8 => (1, 1, 0),
        C9 => (1, 0, 2),
        C10 => (1, 1, 1),
        C11 => (1, 2, 0),
    }
}

/// Order of each case's base graph.
pub fn base_order(case: ParityCase) -> usize {
    use ParityCase::*;
    match case {
        C1 => 1,
        C2 => 2,
        C3 => 3,
        C4 => 4,
        C5 => 8,
        C6 => 13,
        C7 => 16,
        C8 => 24,
        C9 => 26,
        C10 => 48,
        C11 => 72,
    }
}

fn need(
    case: ParityCase,
    class: &'static str,
    have: &[usize],
    want: usize,
) -> Result<(), SubstitutionError> {
    if have.len() < want {
        return Err(SubstitutionError::PaletteTooSmall {
            case,
            class,
            need: want,
            got: have.len(),
        });
    }
    Ok(())
}

/// Builds the base graph for a parity case in the given palette. The palette
/// lists which global colors each clique class may use; a case consuming
/// fewer colors than offered takes them from the front of each list.
/// Two-colored sharpness blocks come from the catalog.
pub fn base_graph(
    case: ParityCase,
    palette: &BasePalette,
    catalog: &Catalog,
) -> Result<(EdgeColoring, CertificateChain), SubstitutionError> {
    use ParityCase::*;
    let k = palette.k;
    let (w5, w4, w3) = base_color_demand(case);
    need(case, "K5", &palette.k5, w5)?;
    need(case, "K4", &palette.k4, w4)?;
    need(case, "K3", &palette.k3, w3)?;

    // witness(red -> a, blue -> b): the red class avoids the smaller clique
    let placed = |g: &EdgeColoring, a: usize, b: usize| -> Result<EdgeColoring, SubstitutionError> {
        let mut map = vec![0usize; 2];
        map[RED] = a;
        map[BLUE] = b;
        Ok(map_colors(g, &map, k)?)
    };
    // joined copies: cross edges in `join`, second template color unused
    let join_copies = |copies: Vec<EdgeColoring>,
                       join: usize|
     -> Result<(EdgeColoring, PartitionCertificate), SubstitutionError> {
        let template = EdgeColoring::new_complete(copies.len(), 2, 0)?;
        let other = (0..k).find(|&c| c != join).expect("k >= 2 here");
        substitute(&template, &copies, [join, other])
    };

    match case {
        C1 => Ok((EdgeColoring::single_vertex(k), CertificateChain::default())),
        C2 => Ok((
            mono(2, k, palette.k3[0])?,
            CertificateChain::default(),
        )),
        C3 => Ok((mono(3, k, palette.k4[0])?, CertificateChain::default())),
        C4 => Ok((mono(4, k, palette.k5[0])?, CertificateChain::default())),
        C5 => {
            let w = catalog.known_witness(3, 4)?;
            Ok((
                placed(&w, palette.k3[0], palette.k4[0])?,
                CertificateChain::default(),
            ))
        }
        C6 => {
            let w = catalog.known_witness(3, 5)?;
            Ok((
                placed(&w, palette.k3[0], palette.k5[0])?,
                CertificateChain::default(),
            ))
        }
        C7 => {
            let w = catalog.known_witness(3, 4)?;
            let block = placed(&w, palette.k3[0], palette.k4[0])?;
            let (g, cert) = join_copies(vec![block; 2], palette.k3[1])?;
            Ok((g, CertificateChain::single(cert)))
        }
        C8 => {
            let w = catalog.known_witness(4, 5)?;
            Ok((
                placed(&w, palette.k4[0], palette.k5[0])?,
                CertificateChain::default(),
            ))
        }
        C9 => {
            let w = catalog.known_witness(3, 5)?;
            let block = placed(&w, palette.k3[0], palette.k5[0])?;
            let (g, cert) = join_copies(vec![block; 2], palette.k3[1])?;
            Ok((g, CertificateChain::single(cert)))
        }
        C10 => {
            let w = catalog.known_witness(4, 5)?;
            let block = placed(&w, palette.k4[0], palette.k5[0])?;
            let (g, cert) = join_copies(vec![block; 2], palette.k3[0])?;
            Ok((g, CertificateChain::single(cert)))
        }
        C11 => {
            let w = catalog.known_witness(4, 5)?;
            let block = placed(&w, palette.k4[0], palette.k5[0])?;
            let (g, cert) = join_copies(vec![block; 3], palette.k4[1])?;
            Ok((g, CertificateChain::single(cert)))
        }
    }
}

fn mono(n: usize, k: usize, color: usize) -> Result<EdgeColoring, SubstitutionError> {
    Ok(EdgeColoring::new_complete(n, k, color)?)
}

/// Builds the extremal witness of order `g(r, s, t) - 1`: the case's base
/// graph, then one blow-up per unused color pair (K5 pairs by the `(5,5)`
/// witness of order R, K4 pairs by the order-17 witness, K3 pairs by the
/// pentagon), ascending color index within each class, K5 pairs innermost.
///
/// Colors `0..r` are the K5 colors, `r..r+s` the K4 colors, `r+s..k` the K3
/// colors; each base consumes the lexicographically last colors of its
/// classes.
pub fn build_g_witness(
    p: &GrParams,
    catalog: &Catalog,
) -> Result<(EdgeColoring, CertificateChain), SubstitutionError> {
    let (r, s, t) = (p.r as usize, p.s as usize, p.t as usize);
    let k = r + s + t;
    let case = classify_case(p.r, p.s, p.t);
    let (w5, w4, w3) = base_color_demand(case);

    let k5: Vec<usize> = (0..r).collect();
    let k4: Vec<usize> = (r..r + s).collect();
    let k3: Vec<usize> = (r + s..k).collect();
    let palette = BasePalette {
        k,
        k5: k5[r - w5..].to_vec(),
        k4: k4[s - w4..].to_vec(),
        k3: k3[t - w3..].to_vec(),
    };
    let (mut g, mut chain) = base_graph(case, &palette, catalog)?;

    let blow_up = |g: &EdgeColoring,
                       chain: CertificateChain,
                       witness: &EdgeColoring,
                       pair: (usize, usize)|
     -> Result<(EdgeColoring, CertificateChain), SubstitutionError> {
        let copies = vec![g.clone(); witness.n()];
        let (out, cert) = substitute(witness, &copies, [pair.0, pair.1])?;
        Ok((out, chain.nest_under(cert)))
    };

    for pair in k5[..r - w5].chunks(2) {
        let witness = catalog.witness(5, 5, p.ramsey_r as usize)?;
        (g, chain) = blow_up(&g, chain, &witness, (pair[0], pair[1]))?;
    }
    for pair in k4[..s - w4].chunks(2) {
        let witness = catalog.known_witness(4, 4)?;
        (g, chain) = blow_up(&g, chain, &witness, (pair[0], pair[1]))?;
    }
    for pair in k3[..t - w3].chunks(2) {
        let witness = catalog.known_witness(3, 3)?;
        (g, chain) = blow_up(&g, chain, &witness, (pair[0], pair[1]))?;
    }
    Ok((g, chain))
}

/// The 3-colored K169 with no rainbow triangle and no monochromatic K5:
/// the order-13 red/blue witness blown up by a red/green copy of itself.
pub fn build_k169() -> (EdgeColoring, CertificateChain) {
    let catalog = Catalog::builtin_only();
    let g_rb = catalog.known_witness(3, 5).expect("builtin witness");
    let g_rg = map_colors(&g_rb, &[0, 2], 3).expect("palette of three");
    let copies = vec![g_rg; 13];
    let (g, cert) = substitute(&g_rb, &copies, [0, 1]).expect("arity 13");
    (g, CertificateChain::single(cert))
}

/// Exact monochromatic clique number of a blow-up, computed on the reduced
/// data: the maximum over color-`c` cliques of the template of the sum of
/// the parts' color-`c` clique numbers. Colors absent from the template are
/// maxima over parts. Cross-validation helper for tests.
pub fn blowup_clique_number(
    template: &EdgeColoring,
    part_cliques: &[Vec<usize>],
    color_map: [usize; 2],
    c: usize,
) -> usize {
    let q = template.n();
    let inside: Vec<usize> = (0..q).map(|i| part_cliques[i][c]).collect();
    let best_inside = inside.iter().copied().max().unwrap_or(0);
    let template_color = if color_map[0] == c {
        Some(0)
    } else if color_map[1] == c {
        Some(1)
    } else {
        None
    };
    let tc = match template_color {
        Some(tc) => tc,
        None => return best_inside,
    };
    // weighted max clique in the template's class tc, weight = inside value
    let mut best = best_inside;
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        template: &EdgeColoring,
        tc: usize,
        inside: &[usize],
        chosen: &mut Vec<usize>,
        from: usize,
        weight: usize,
        best: &mut usize,
    ) {
        *best = (*best).max(weight);
        for v in from..template.n() {
            if chosen.iter().all(|&u| template.color(u, v) == tc) {
                chosen.push(v);
                rec(template, tc, inside, chosen, v + 1, weight + inside[v], best);
                chosen.pop();
            }
        }
    }
    rec(template, tc, &inside, &mut chosen, 0, 0, &mut best);
    best
}
