//! JSON wire formats: group, chart, polynomial-map, map, and atlas inputs,
//! plus helpers shared by every report emitter.
//!
//! All rational numbers travel as strings (`"p/q"`, or `"p"` for integers)
//! so nothing is ever rounded.  Matrices travel as flat row-major string
//! lists; their shapes come from the surrounding object.

use crate::error::{Error, Result};
use crate::groups::{close_group_with_cap, FiniteMatrixGroup, DEFAULT_CLOSURE_CAP};
use crate::linalg::{format_rat, parse_rat, QMatrix, Rat};
use crate::maps::{CompleteMap, OrbifoldMap};
use crate::orbifold::{AffineMap, QuotientChart, RawEmbedding};
use crate::polymap::{Poly, PolyMap};
use serde::{Deserialize, Serialize};

/// Parse a flat row-major list of rational strings into a matrix.
pub fn matrix_from_strings(rows: usize, cols: usize, flat: &[String]) -> Result<QMatrix> {
    if flat.len() != rows * cols {
        return Err(Error::Invalid(format!(
            "matrix needs {rows}x{cols} = {} entries, got {}",
            rows * cols,
            flat.len()
        )));
    }
    let data: Result<Vec<Rat>> = flat.iter().map(|s| parse_rat(s)).collect();
    QMatrix::new(rows, cols, data?)
}

/// Render a matrix as a flat row-major list of rational strings.
pub fn matrix_to_strings(m: &QMatrix) -> Vec<String> {
    m.entries().iter().map(format_rat).collect()
}

/// Render a vector of rationals as strings.
pub fn vector_to_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

/// A finite matrix group given by generators.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupJson {
    pub dim: usize,
    /// One generator per entry, flat row-major rational strings.
    pub generators: Vec<Vec<String>>,
}

impl GroupJson {
    pub fn to_group(&self) -> Result<FiniteMatrixGroup> {
        self.to_group_with_cap(DEFAULT_CLOSURE_CAP)
    }

    pub fn to_group_with_cap(&self, cap: usize) -> Result<FiniteMatrixGroup> {
        let gens: Result<Vec<QMatrix>> = self
            .generators
            .iter()
            .map(|g| matrix_from_strings(self.dim, self.dim, g))
            .collect();
        close_group_with_cap(self.dim, &gens?, cap)
    }

    pub fn from_group(group: &FiniteMatrixGroup) -> GroupJson {
        GroupJson {
            dim: group.dim(),
            generators: group
                .generator_indices()
                .iter()
                .map(|&i| matrix_to_strings(group.element(i)))
                .collect(),
        }
    }
}

/// A chart: a labeled group acting on its model space.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChartJson {
    #[serde(default)]
    pub label: Option<String>,
    pub dim: usize,
    pub generators: Vec<Vec<String>>,
}

impl ChartJson {
    /// Build the chart, using `fallback` when no label is given.
    pub fn to_chart(&self, fallback: &str) -> Result<QuotientChart> {
        self.to_chart_with_cap(fallback, DEFAULT_CLOSURE_CAP)
    }

    pub fn to_chart_with_cap(&self, fallback: &str, cap: usize) -> Result<QuotientChart> {
        let group = GroupJson { dim: self.dim, generators: self.generators.clone() }
            .to_group_with_cap(cap)?;
        let label = self.label.clone().unwrap_or_else(|| fallback.to_string());
        Ok(QuotientChart::new(label, group))
    }

    pub fn from_chart(chart: &QuotientChart) -> ChartJson {
        let g = GroupJson::from_group(chart.group());
        ChartJson { label: Some(chart.label().to_string()), dim: g.dim, generators: g.generators }
    }
}

/// One term of one polynomial component.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub monomial: Vec<u32>,
    pub coeff: String,
}

/// A polynomial map: one term list per component.
pub type PolyMapJson = Vec<Vec<TermJson>>;

/// Parse a polynomial map whose source dimension is known from context.
pub fn polymap_from_json(src_dim: usize, components: &PolyMapJson) -> Result<PolyMap> {
    let mut polys = Vec::with_capacity(components.len());
    for terms in components {
        let mut p = Poly::zero(src_dim);
        for t in terms {
            if t.monomial.len() != src_dim {
                return Err(Error::Invalid(format!(
                    "monomial {:?} has {} exponents, chart dimension is {src_dim}",
                    t.monomial,
                    t.monomial.len()
                )));
            }
            p.add_term(t.monomial.clone(), parse_rat(&t.coeff)?);
        }
        polys.push(p);
    }
    PolyMap::new(src_dim, polys)
}

/// Render a polynomial map with terms in canonical monomial order.
pub fn polymap_to_json(map: &PolyMap) -> PolyMapJson {
    map.components()
        .iter()
        .map(|p| {
            p.terms()
                .map(|(m, c)| TermJson { monomial: m.clone(), coeff: format_rat(c) })
                .collect()
        })
        .collect()
}

/// A map between chart quotients: lift plus optional homomorphism data
/// (generator image indices into the destination element list).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapJson {
    pub src: ChartJson,
    pub dst: ChartJson,
    pub lift: PolyMapJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<usize>>,
}

impl MapJson {
    pub fn to_orbifold_map(&self) -> Result<OrbifoldMap> {
        let src = self.src.to_chart("src")?;
        let dst = self.dst.to_chart("dst")?;
        let lift = polymap_from_json(src.dim(), &self.lift)?;
        OrbifoldMap::new(src, dst, lift)
    }

    /// Build the complete map; requires the `theta` field.
    pub fn to_complete_map(&self) -> Result<CompleteMap> {
        let images = self
            .theta
            .as_ref()
            .ok_or_else(|| Error::Invalid("map has no `theta` field".into()))?;
        let src = self.src.to_chart("src")?;
        let dst = self.dst.to_chart("dst")?;
        let lift = polymap_from_json(src.dim(), &self.lift)?;
        CompleteMap::from_generator_images(src, dst, lift, images)
    }

    pub fn from_complete_map(m: &CompleteMap) -> MapJson {
        let src_group = m.src().group();
        let theta = src_group
            .generator_indices()
            .iter()
            .map(|&g| m.theta().image_of(g))
            .collect();
        MapJson {
            src: ChartJson::from_chart(m.src()),
            dst: ChartJson::from_chart(m.dst()),
            lift: polymap_to_json(m.lift()),
            theta: Some(theta),
        }
    }

    pub fn from_orbifold_map(m: &OrbifoldMap) -> MapJson {
        MapJson {
            src: ChartJson::from_chart(m.src()),
            dst: ChartJson::from_chart(m.dst()),
            lift: polymap_to_json(m.lift()),
            theta: None,
        }
    }
}

/// An affine map `x ↦ A·x + b`, flat row-major `A`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AffineJson {
    #[serde(rename = "A")]
    pub a: Vec<String>,
    pub b: Vec<String>,
}

impl AffineJson {
    pub fn to_affine(&self, from_dim: usize, to_dim: usize) -> Result<AffineMap> {
        let matrix = matrix_from_strings(to_dim, from_dim, &self.a)?;
        let offset: Result<Vec<Rat>> = self.b.iter().map(|s| parse_rat(s)).collect();
        AffineMap::new(matrix, offset?)
    }
}

/// One chart embedding: the affine inclusion plus generator images of the
/// group injection.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmbeddingJson {
    pub from: String,
    pub to: String,
    pub affine: AffineJson,
    pub theta: Vec<usize>,
}

/// An atlas: labeled charts, embeddings, and the `[z, y, x]` label triples
/// whose composites should be checked.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AtlasJson {
    pub charts: Vec<ChartJson>,
    pub embeddings: Vec<EmbeddingJson>,
    #[serde(default)]
    pub triples: Vec<[String; 3]>,
}

/// The resolved pieces of an atlas file: charts, raw embeddings, and the
/// label triples to check.
pub type AtlasParts = (Vec<QuotientChart>, Vec<RawEmbedding>, Vec<[String; 3]>);

impl AtlasJson {
    pub fn to_parts(&self) -> Result<AtlasParts> {
        let mut charts = Vec::with_capacity(self.charts.len());
        for (i, c) in self.charts.iter().enumerate() {
            if c.label.is_none() {
                return Err(Error::Invalid(format!("atlas chart {i} has no label")));
            }
            charts.push(c.to_chart("")?);
        }
        let find_dim = |label: &str| -> Result<usize> {
            charts
                .iter()
                .find(|c| c.label() == label)
                .map(QuotientChart::dim)
                .ok_or_else(|| Error::UnknownLabel { label: label.to_string() })
        };
        let mut embeddings = Vec::with_capacity(self.embeddings.len());
        for e in &self.embeddings {
            let map = e.affine.to_affine(find_dim(&e.from)?, find_dim(&e.to)?)?;
            embeddings.push(RawEmbedding {
                from: e.from.clone(),
                to: e.to.clone(),
                map,
                theta_generator_images: e.theta.clone(),
            });
        }
        Ok((charts, embeddings, self.triples.clone()))
    }
}
