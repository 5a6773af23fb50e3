//! Canonical JSON for products. Coefficients are written as coordinate
//! vectors in the polynomial basis of the canonical modulus, so a file can be
//! read without agreeing on a generator; the label keeps the constructor
//! parameters as given.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::Label;
use crate::gf::{make_field, Fe, Field};
use crate::linmap::{Bilinear, BiprojPair, DoComponent, DoPoly, DoTerm, Factor, LinTerm, Presemifield, Product, Space, StructureTensor};

pub const MAP_SCHEMA: &str = "semifield-map/1";

type Coords = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadTerm {
    pub coeff: Coords,
    pub left: Factor,
    pub right: Factor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearTerm {
    pub coeff: Coords,
    pub factor: Factor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub quadratic: Vec<QuadTerm>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub linear: Vec<LinearTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ProductJson {
    Biproj { k: u32, left: [Coords; 4], l: u32, right: [Coords; 4] },
    Do { components: Vec<ComponentJson> },
    /// Products of basis vectors, row-major, as coordinate vectors of the whole space.
    Tensor { table: Vec<Coords> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub schema: String,
    pub p: u64,
    pub m: u32,
    pub blocks: usize,
    /// Low-to-high coefficients of the monic modulus.
    pub modulus: Vec<u32>,
    pub label: Label,
    pub product: ProductJson,
}

fn coords(ctx: &Field, a: Fe) -> Coords {
    ctx.coords(a)
}

fn element(ctx: &Field, v: &[u32]) -> Result<Fe> {
    let p = ctx.p();
    if v.len() != ctx.m() as usize || v.iter().any(|&c| c >= p) {
        return Err(Error::Format(format!("coordinate vector {v:?} is not in GF({}^{})", p, ctx.m())));
    }
    Ok(ctx.from_coords(v))
}

pub fn to_map_json(ps: &Presemifield) -> MapJson {
    let space = ps.space();
    let ctx = space.ctx();
    let product = match ps.product() {
        Product::Biproj(pair) => ProductJson::Biproj {
            k: pair.k(),
            left: pair.left().map(|c| coords(ctx, c)),
            l: pair.l(),
            right: pair.right().map(|c| coords(ctx, c)),
        },
        Product::Do(d) => ProductJson::Do {
            components: d
                .components()
                .iter()
                .map(|c| ComponentJson {
                    quadratic: c
                        .quadratic
                        .iter()
                        .map(|t| QuadTerm { coeff: coords(ctx, t.coeff), left: t.left, right: t.right })
                        .collect(),
                    linear: c.linear.iter().map(|t| LinearTerm { coeff: coords(ctx, t.coeff), factor: t.factor }).collect(),
                })
                .collect(),
        },
        Product::Tensor(t) => ProductJson::Tensor { table: t.coordinate_table() },
    };
    MapJson {
        schema: MAP_SCHEMA.into(),
        p: ctx.p() as u64,
        m: ctx.m(),
        blocks: space.blocks(),
        modulus: ctx.modulus().to_vec(),
        label: ps.label().clone(),
        product,
    }
}

pub fn from_map_json(map: &MapJson) -> Result<Presemifield> {
    if map.schema != MAP_SCHEMA {
        return Err(Error::Format(format!("unknown schema {:?}", map.schema)));
    }
    let ctx = make_field(map.p, map.m)?;
    if ctx.modulus() != map.modulus.as_slice() {
        return Err(Error::Format(format!("modulus {:?} differs from the canonical {:?}", map.modulus, ctx.modulus())));
    }
    if !(1..=2).contains(&map.blocks) {
        return Err(Error::Format(format!("{} blocks", map.blocks)));
    }
    let space = Space::new(ctx.clone(), map.blocks);
    let four = |cs: &[Coords; 4]| -> Result<[Fe; 4]> {
        Ok([element(&ctx, &cs[0])?, element(&ctx, &cs[1])?, element(&ctx, &cs[2])?, element(&ctx, &cs[3])?])
    };
    let check_factor = |f: &Factor| {
        if (f.var as usize) < map.blocks {
            Ok(*f)
        } else {
            Err(Error::Format(format!("variable {} out of range", f.var)))
        }
    };
    let product = match &map.product {
        ProductJson::Biproj { k, left, l, right } => {
            if map.blocks != 2 {
                return Err(Error::Format("a biprojective pair needs two blocks".into()));
            }
            Product::Biproj(BiprojPair::new(&ctx, *k, four(left)?, *l, four(right)?))
        }
        ProductJson::Do { components } => {
            if components.len() != map.blocks {
                return Err(Error::Format("one component per block required".into()));
            }
            let comps = components
                .iter()
                .map(|c| {
                    Ok(DoComponent {
                        quadratic: c
                            .quadratic
                            .iter()
                            .map(|t| {
                                Ok(DoTerm {
                                    coeff: element(&ctx, &t.coeff)?,
                                    left: check_factor(&t.left)?,
                                    right: check_factor(&t.right)?,
                                })
                            })
                            .collect::<Result<_>>()?,
                        linear: c
                            .linear
                            .iter()
                            .map(|t| Ok(LinTerm { coeff: element(&ctx, &t.coeff)?, factor: check_factor(&t.factor)? }))
                            .collect::<Result<_>>()?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Product::Do(DoPoly::new(&space, comps))
        }
        ProductJson::Tensor { table } => {
            let n = space.dim();
            if table.len() != n * n {
                return Err(Error::Format(format!("tensor table has {} entries, expected {}", table.len(), n * n)));
            }
            let pts = table
                .iter()
                .map(|v| {
                    if v.len() != n || v.iter().any(|&c| c >= ctx.p()) {
                        return Err(Error::Format(format!("bad tensor entry {v:?}")));
                    }
                    Ok(space.from_coords(v))
                })
                .collect::<Result<Vec<_>>>()?;
            Product::Tensor(StructureTensor::from_table(&space, pts))
        }
    };
    Ok(Presemifield::new(product, map.label.clone()))
}

/// Compact canonical JSON text; equal maps give identical strings.
pub fn to_json(ps: &Presemifield) -> String {
    serde_json::to_string(&to_map_json(ps)).expect("map JSON serializes")
}

pub fn from_json(text: &str) -> Result<Presemifield> {
    let map: MapJson = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    from_map_json(&map)
}
