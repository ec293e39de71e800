use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{poset, HolimError, PosetSn};
use crate::exactla::FpMatrix;
use crate::Provenance;

pub const ECOM_U3_P2: &str = include_str!("../../data/ecom_u3_p2.json");
pub const ECOM_U3_P3: &str = include_str!("../../data/ecom_u3_p3.json");
pub const DIAGRAM_SCHEMA: &str = "ecomu3.diagram/1";

/// A property a map must have, either in one degree or in all of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapConstraint {
    pub kind: ConstraintKind,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    /// `None` means every degree.
    pub degree: Option<usize>,
    pub provenance: Provenance,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintKind {
    Isomorphism,
    Injective,
    /// `[I | 0]`: keeps the leading coordinates and drops the rest.
    FirstCoordinateProjection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ObjectData {
    subset: Vec<usize>,
    dims: BTreeMap<usize, usize>,
    provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapData {
    source: Vec<usize>,
    target: Vec<usize>,
    matrices: BTreeMap<usize, Vec<Vec<i64>>>,
    provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramFile {
    schema: String,
    name: String,
    prime: u64,
    n: usize,
    max_degree: usize,
    objects: Vec<ObjectData>,
    maps: Vec<MapData>,
    #[serde(default)]
    constraints: Vec<MapConstraint>,
}

/// Per-degree maps on one arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowMaps {
    pub matrices: BTreeMap<usize, FpMatrix>,
    pub provenance: Provenance,
}

/// A functor from `S(n)` to graded F_p vector spaces, all maps of degree 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DiagramFile", into = "DiagramFile")]
pub struct PosetDiagram {
    pub name: String,
    pub poset: PosetSn,
    pub prime: u64,
    pub max_degree: usize,
    /// Per object: degree → dimension.
    pub dims: Vec<BTreeMap<usize, usize>>,
    pub dim_provenance: Vec<Provenance>,
    /// Keyed by arrow `(j, l)`; a missing degree means the zero map.
    pub maps: BTreeMap<(usize, usize), ArrowMaps>,
    pub constraints: Vec<MapConstraint>,
}

impl TryFrom<DiagramFile> for PosetDiagram {
    type Error = HolimError;

    fn try_from(f: DiagramFile) -> Result<Self, HolimError> {
        if f.schema != DIAGRAM_SCHEMA {
            return Err(HolimError::BadDiagram(format!("unknown schema {}", f.schema)));
        }
        let poset = poset(f.n);
        let mut dims = vec![BTreeMap::new(); poset.len()];
        let mut dim_provenance = vec![Provenance::Computed; poset.len()];
        let mut seen = vec![false; poset.len()];
        for o in f.objects {
            let i = poset
                .index_of(&o.subset)
                .ok_or_else(|| HolimError::BadDiagram(format!("{:?} is not an object of S({})", o.subset, f.n)))?;
            if seen[i] {
                return Err(HolimError::BadDiagram(format!("object {} listed twice", poset.label(i))));
            }
            seen[i] = true;
            dims[i] = o.dims.into_iter().filter(|&(_, d)| d > 0).collect();
            dim_provenance[i] = o.provenance;
        }
        let mut maps = BTreeMap::new();
        for m in f.maps {
            let (Some(j), Some(l)) = (poset.index_of(&m.source), poset.index_of(&m.target)) else {
                return Err(HolimError::BadDiagram(format!("unknown arrow {:?} → {:?}", m.source, m.target)));
            };
            if !poset.is_below(j, l) {
                return Err(HolimError::BadDiagram(format!("{:?} → {:?} is not an arrow", m.source, m.target)));
            }
            let matrices = m
                .matrices
                .into_iter()
                .map(|(k, rows)| {
                    if rows.iter().any(|r| r.len() != rows[0].len()) {
                        return Err(HolimError::BadDiagram(format!("ragged matrix on {:?} → {:?}", m.source, m.target)));
                    }
                    let mut mat = FpMatrix::from_rows(f.prime, &rows);
                    if rows.is_empty() {
                        mat = FpMatrix::zeros(f.prime, 0, 0);
                    }
                    Ok((k, mat))
                })
                .collect::<Result<_, _>>()?;
            maps.insert((j, l), ArrowMaps { matrices, provenance: m.provenance });
        }
        let d = PosetDiagram {
            name: f.name,
            poset,
            prime: f.prime,
            max_degree: f.max_degree,
            dims,
            dim_provenance,
            maps,
            constraints: f.constraints,
        };
        d.check_shapes()?;
        Ok(d)
    }
}

impl From<PosetDiagram> for DiagramFile {
    fn from(d: PosetDiagram) -> Self {
        let objects = (0..d.poset.len())
            .map(|i| ObjectData { subset: d.poset.objects[i].clone(), dims: d.dims[i].clone(), provenance: d.dim_provenance[i] })
            .collect();
        let maps = d
            .maps
            .iter()
            .map(|(&(j, l), a)| MapData {
                source: d.poset.objects[j].clone(),
                target: d.poset.objects[l].clone(),
                matrices: a
                    .matrices
                    .iter()
                    .map(|(&k, m)| (k, (0..m.rows).map(|r| m.row(r).iter().map(|&x| x as i64).collect()).collect()))
                    .collect(),
                provenance: a.provenance,
            })
            .collect();
        DiagramFile {
            schema: DIAGRAM_SCHEMA.to_string(),
            name: d.name,
            prime: d.prime,
            n: d.poset.n,
            max_degree: d.max_degree,
            objects,
            maps,
            constraints: d.constraints,
        }
    }
}

impl PosetDiagram {
    pub fn parse(text: &str) -> Result<Self, HolimError> {
        let file: DiagramFile = serde_json::from_str(text).map_err(|e| HolimError::BadDiagram(e.to_string()))?;
        Self::try_from(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serializes")
    }

    /// The shipped `E_com U(3)` diagram at `p ∈ {2, 3}`.
    pub fn bundled(p: u64) -> Result<Self, HolimError> {
        match p {
            2 => Self::parse(ECOM_U3_P2),
            3 => Self::parse(ECOM_U3_P3),
            _ => Err(HolimError::UnsupportedPrime(p)),
        }
    }

    /// `F_p` in degree 0 at every object, identities everywhere.
    pub fn constant(n: usize, p: u64) -> Self {
        let poset = poset(n);
        let k = poset.len();
        let maps = poset
            .arrows
            .iter()
            .map(|&a| (a, ArrowMaps { matrices: BTreeMap::from([(0, FpMatrix::identity(p, 1))]), provenance: Provenance::Computed }))
            .collect();
        PosetDiagram {
            name: format!("constant-F{p}"),
            poset,
            prime: p,
            max_degree: 0,
            dims: vec![BTreeMap::from([(0, 1)]); k],
            dim_provenance: vec![Provenance::Computed; k],
            maps,
            constraints: Vec::new(),
        }
    }

    pub fn zero(n: usize, p: u64, max_degree: usize) -> Self {
        let poset = poset(n);
        let k = poset.len();
        PosetDiagram {
            name: "zero".into(),
            poset,
            prime: p,
            max_degree,
            dims: vec![BTreeMap::new(); k],
            dim_provenance: vec![Provenance::Computed; k],
            maps: BTreeMap::new(),
            constraints: Vec::new(),
        }
    }

    /// Interval module: `F_p` in degree 0 on the objects of `support`, identities between them.
    pub fn indicator(n: usize, p: u64, support: &[usize]) -> Self {
        let mut d = Self::zero(n, p, 0);
        d.name = "interval".into();
        for &i in support {
            d.dims[i].insert(0, 1);
        }
        for &(j, l) in &d.poset.arrows {
            if support.contains(&j) && support.contains(&l) {
                d.maps.insert((j, l), ArrowMaps { matrices: BTreeMap::from([(0, FpMatrix::identity(p, 1))]), provenance: Provenance::Computed });
            }
        }
        d
    }

    pub fn dim(&self, object: usize, k: usize) -> usize {
        self.dims[object].get(&k).copied().unwrap_or(0)
    }

    /// Dimensions of all objects in degree `k`, in object order.
    pub fn dims_at(&self, k: usize) -> Vec<usize> {
        (0..self.poset.len()).map(|i| self.dim(i, k)).collect()
    }

    /// `p_{jl}` in degree `k` as a `dim(l) × dim(j)` matrix.
    pub fn map(&self, j: usize, l: usize, k: usize) -> FpMatrix {
        self.maps
            .get(&(j, l))
            .and_then(|a| a.matrices.get(&k))
            .cloned()
            .unwrap_or_else(|| FpMatrix::zeros(self.prime, self.dim(l, k), self.dim(j, k)))
    }

    /// Ranks of every arrow's map in degree `k`, in arrow order.
    pub fn rank_profile(&self, k: usize) -> Vec<usize> {
        self.poset.arrows.iter().map(|&(j, l)| self.map(j, l, k).rank()).collect()
    }

    fn check_shapes(&self) -> Result<(), HolimError> {
        for (&(j, l), a) in &self.maps {
            for (&k, m) in &a.matrices {
                let want = (self.dim(l, k), self.dim(j, k));
                let got = (m.rows, m.cols);
                let empty_ok = m.data.is_empty() && (want.0 == 0 || want.1 == 0);
                if got != want && !empty_ok {
                    return Err(HolimError::ShapeMismatch {
                        source_object: self.poset.label(j),
                        target_object: self.poset.label(l),
                        degree: k,
                        expected: want,
                        got,
                    });
                }
            }
        }
        Ok(())
    }

    /// `p_{ml} ∘ p_{jm} = p_{jl}` for every composable pair in degree `k`.
    pub fn check_functoriality(&self, k: usize) -> Result<(), HolimError> {
        for &(a, b, c) in &self.poset.chains3 {
            let composite = self.map(b, c, k).mul(&self.map(a, b, k));
            if composite != self.map(a, c, k) {
                return Err(HolimError::FunctorialityViolation {
                    chain: [self.poset.label(a), self.poset.label(b), self.poset.label(c)],
                    degree: k,
                });
            }
        }
        Ok(())
    }

    fn check_constraint(&self, c: &MapConstraint, k: usize) -> Result<(), HolimError> {
        let (Some(j), Some(l)) = (self.poset.index_of(&c.source), self.poset.index_of(&c.target)) else {
            return Err(HolimError::BadDiagram(format!("constraint on unknown arrow {:?} → {:?}", c.source, c.target)));
        };
        let m = self.map(j, l, k);
        let ok = match c.kind {
            ConstraintKind::Isomorphism => m.rows == m.cols && m.rank() == m.cols,
            ConstraintKind::Injective => m.rank() == m.cols,
            ConstraintKind::FirstCoordinateProjection => {
                m.rows <= m.cols && (0..m.rows).all(|r| (0..m.cols).all(|s| m.get(r, s) == u64::from(r == s)))
            }
        };
        if ok {
            Ok(())
        } else {
            Err(HolimError::ConstraintViolation {
                kind: c.kind,
                source_object: self.poset.label(j),
                target_object: self.poset.label(l),
                degree: k,
            })
        }
    }

    /// Shapes, functoriality in every degree, and every recorded constraint.
    pub fn validate(&self) -> Result<(), HolimError> {
        self.check_shapes()?;
        for k in 0..=self.max_degree {
            self.check_functoriality(k)?;
        }
        for c in &self.constraints {
            match c.degree {
                Some(k) => self.check_constraint(c, k)?,
                None => {
                    for k in 0..=self.max_degree {
                        self.check_constraint(c, k)?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Arrows constrained to be isomorphisms in every degree.
    pub fn pinned_arrows(&self) -> Vec<(usize, usize)> {
        self.constraints
            .iter()
            .filter(|c| c.kind == ConstraintKind::Isomorphism && c.degree.is_none())
            .filter_map(|c| Some((self.poset.index_of(&c.source)?, self.poset.index_of(&c.target)?)))
            .collect()
    }
}
