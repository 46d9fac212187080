//! Operations behind the command line tool, returning serializable reports.

use serde::Serialize;

use crate::complex::{
    balanced_coloring, is_bipartite, is_positively_decorated, normalized_volume, Bipartition, Coloring,
    DecorationReport, DualGraph, PointConfiguration, SimplicialComplex,
};
use crate::families::{
    cross_polytope_triangulation, cyclic_heights, cyclic_minimal_triangulation, cyclic_points, default_nodes,
    order_polytope_triangulation, snd_subcomplex, Poset, Triangulation,
};
use crate::linalg::serde_rational;
use crate::viro::{regularity_check, HeightFunction, RegularityReport};
use crate::{Error, Rational, RationalMatrix, Result};

/// Files describing a member of one of the families.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyArtifacts {
    pub complex: SimplicialComplex,
    pub points: PointConfiguration,
    pub heights: HeightFunction,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coloring: Option<Coloring>,
}

impl From<Triangulation> for FamilyArtifacts {
    fn from(t: Triangulation) -> Self {
        FamilyArtifacts {
            complex: t.complex,
            points: t.points,
            heights: t.heights,
            coloring: Some(t.coloring),
        }
    }
}

/// `Ô_{n,d}` (or `S_{n,d}` when `snd`) on the moment curve with heights
/// `a^{d+1}`. Nodes default to `1..=n`.
pub fn cyclic_family(n: usize, d: usize, nodes: Option<Vec<Rational>>, snd: bool) -> Result<FamilyArtifacts> {
    let nodes = nodes.unwrap_or_else(|| default_nodes(n));
    if nodes.len() != n {
        return Err(Error::InvalidArgument(format!("{} nodes given for n = {n}", nodes.len())));
    }
    let complex = if snd {
        snd_subcomplex(n, d)?
    } else {
        cyclic_minimal_triangulation(n, d)?
    };
    Ok(FamilyArtifacts {
        complex,
        points: cyclic_points(d, &nodes)?,
        heights: HeightFunction::new(cyclic_heights(d, &nodes)),
        coloring: None,
    })
}

pub fn order_family(p: &Poset) -> Result<FamilyArtifacts> {
    order_polytope_triangulation(p).map(Into::into)
}

pub fn cross_family(d: usize) -> Result<FamilyArtifacts> {
    cross_polytope_triangulation(d).map(Into::into)
}

/// Which properties to check.
#[derive(Clone, Copy, Debug, Default)]
pub struct CheckRequest {
    pub bipartite: bool,
    pub balanced: bool,
    pub decorated: bool,
    pub regular: bool,
    pub unimodular: bool,
}

impl CheckRequest {
    pub fn is_empty(&self) -> bool {
        !(self.bipartite || self.balanced || self.decorated || self.regular || self.unimodular)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BalancedVerdict {
    pub balanced: bool,
    pub coloring: Option<Coloring>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FacetVolume {
    pub facet: Vec<usize>,
    #[serde(with = "serde_rational")]
    pub volume: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnimodularVerdict {
    pub unimodular: bool,
    /// Facets whose normalized volume is not one.
    pub exceptions: Vec<FacetVolume>,
}

/// Results of the requested checks; absent fields were not requested.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bipartite: Option<Bipartition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub balanced: Option<BalancedVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decorated: Option<DecorationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regular: Option<RegularityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unimodular: Option<UnimodularVerdict>,
}

fn need<'a, T>(x: Option<&'a T>, what: &str, check: &str) -> Result<&'a T> {
    x.ok_or_else(|| Error::InvalidArgument(format!("--{check} needs {what}")))
}

/// Runs the requested checks. Missing inputs are reported before any
/// computation.
pub fn run_checks(
    k: &SimplicialComplex,
    points: Option<&PointConfiguration>,
    matrix: Option<&RationalMatrix>,
    heights: Option<&HeightFunction>,
    req: CheckRequest,
) -> Result<CheckReport> {
    if req.is_empty() {
        return Err(Error::InvalidArgument("no check requested".into()));
    }
    if req.decorated {
        need(matrix, "a coefficient matrix", "decorated")?;
    }
    if req.regular {
        need(points, "points", "regular")?;
        need(heights, "heights", "regular")?;
    }
    if req.unimodular {
        need(points, "points", "unimodular")?;
    }

    let bipartite = req.bipartite.then(|| is_bipartite(&DualGraph::of(k)));
    let balanced = req.balanced.then(|| {
        let coloring = balanced_coloring(k);
        BalancedVerdict {
            balanced: coloring.is_some(),
            coloring,
        }
    });
    let decorated = match (req.decorated, matrix) {
        (true, Some(c)) => Some(is_positively_decorated(k, c)?),
        _ => None,
    };
    let regular = match (req.regular, points, heights) {
        (true, Some(a), Some(nu)) => Some(regularity_check(a, nu, k)?),
        _ => None,
    };
    let unimodular = match (req.unimodular, points) {
        (true, Some(a)) => {
            a.check_complex(k)?;
            let mut exceptions = Vec::new();
            for f in k.facets() {
                let volume = normalized_volume(a, f)?;
                if volume != Rational::from_integer(1.into()) {
                    exceptions.push(FacetVolume {
                        facet: f.clone(),
                        volume,
                    });
                }
            }
            Some(UnimodularVerdict {
                unimodular: exceptions.is_empty(),
                exceptions,
            })
        }
        _ => None,
    };
    let pass = bipartite.as_ref().map_or(true, Bipartition::is_bipartite)
        && balanced.as_ref().map_or(true, |b| b.balanced)
        && decorated.as_ref().map_or(true, |d| d.decorated)
        && regular.as_ref().map_or(true, |r| r.regular)
        && unimodular.as_ref().map_or(true, |u| u.unimodular);
    Ok(CheckReport {
        pass,
        bipartite,
        balanced,
        decorated,
        regular,
        unimodular,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{prism_poset, s63_decoration};

    #[test]
    fn s63_checks() {
        let f = cyclic_family(6, 3, None, true).unwrap();
        let req = CheckRequest {
            bipartite: true,
            balanced: true,
            ..Default::default()
        };
        let r = run_checks(&f.complex, None, None, None, req).unwrap();
        assert!(!r.pass);
        assert!(r.bipartite.unwrap().is_bipartite());
        assert!(!r.balanced.unwrap().balanced);
        let req = CheckRequest {
            decorated: true,
            ..Default::default()
        };
        let c = s63_decoration();
        assert!(run_checks(&f.complex, None, Some(&c), None, req).unwrap().pass);
        assert!(run_checks(&f.complex, None, None, None, req).is_err());
    }

    #[test]
    fn prism_is_unimodular() {
        let f = order_family(&prism_poset()).unwrap();
        let req = CheckRequest {
            unimodular: true,
            ..Default::default()
        };
        let r = run_checks(&f.complex, Some(&f.points), None, None, req).unwrap();
        assert!(r.pass);
        let json = serde_json::to_value(&r).unwrap();
        assert!(json.get("regular").is_none());
        assert!(run_checks(&f.complex, None, None, None, CheckRequest::default()).is_err());
    }

    #[test]
    fn node_count_is_checked() {
        assert!(cyclic_family(6, 3, Some(default_nodes(5)), false).is_err());
        assert_eq!(cyclic_family(6, 3, None, false).unwrap().complex.len(), 6);
        assert_eq!(cross_family(3).unwrap().complex.len(), 8);
    }
}
