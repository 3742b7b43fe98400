//! Connectivity of spaces of flat connections and of the comparison map to
//! based mapping spaces, for rank-`n` unitary bundles over a surface.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::GroupExpr;

/// A connectivity value and whether it is known to be sharp.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub value: i64,
    pub sharp: bool,
}

/// Connectivity of the map `Hom(pi_1 S, U(n)) -> Map_*(S, BU(n))`. When
/// `low` is set the map is `(low, value)`-connected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MapBound {
    pub low: Option<i64>,
    pub value: i64,
    pub sharp: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectivityRecord {
    pub surface: String,
    pub rank: u32,
    /// Genus of the surface, or of its orientation double cover.
    pub genus: u32,
    pub flat_connections: Bound,
    pub classifying_map: MapBound,
    /// Exact connectivity of the flat connections over a non-orientable
    /// surface; only defined for double-cover genus > 1 and rank >= 9.
    pub flat_connections_sharp: Option<i64>,
}

pub fn connectivity_bounds(surface: &GroupExpr, n: u32) -> Result<ConnectivityRecord> {
    surface.validate()?;
    if n == 0 {
        return Err(Error::OutOfRange("bundle rank n must be at least 1".into()));
    }
    let rank = i64::from(n);
    match *surface {
        GroupExpr::Orientable(g) => {
            let g = i64::from(g);
            Ok(ConnectivityRecord {
                surface: surface.to_string(),
                rank: n,
                genus: g as u32,
                flat_connections: Bound { value: 2 * g * (rank - 1), sharp: true },
                classifying_map: MapBound {
                    low: Some(1),
                    value: 2 * g * (rank - 1) + 1,
                    sharp: true,
                },
                flat_connections_sharp: None,
            })
        }
        GroupExpr::NonOrientable(q) => {
            let cover = i64::from(q - 1);
            let sharp = (cover > 1 && n >= 9).then(|| 2 * rank * cover - 3 * cover - 1);
            Ok(ConnectivityRecord {
                surface: surface.to_string(),
                rank: n,
                genus: q - 1,
                flat_connections: Bound { value: cover * (rank - 1) - 1, sharp: false },
                classifying_map: MapBound { low: None, value: cover * (rank - 1), sharp: false },
                flat_connections_sharp: sharp,
            })
        }
        _ => Err(Error::Semantic(format!(
            "connectivity bounds are defined for single surfaces, not {surface}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientable_genus_two_rank_three() {
        let r = connectivity_bounds(&GroupExpr::Orientable(2), 3).unwrap();
        assert_eq!(r.flat_connections, Bound { value: 8, sharp: true });
        assert_eq!(r.classifying_map, MapBound { low: Some(1), value: 9, sharp: true });
    }

    #[test]
    fn nonorientable_sharp_value() {
        let r = connectivity_bounds(&GroupExpr::NonOrientable(3), 9).unwrap();
        assert_eq!(r.genus, 2);
        assert_eq!(r.flat_connections_sharp, Some(29));
        assert_eq!(r.flat_connections.value, 15);
        assert_eq!(r.classifying_map.value, 16);
        // the Klein bottle's double cover is the torus, genus 1: no sharp value
        assert_eq!(connectivity_bounds(&GroupExpr::NonOrientable(2), 10).unwrap().flat_connections_sharp, None);
        assert_eq!(connectivity_bounds(&GroupExpr::NonOrientable(4), 8).unwrap().flat_connections_sharp, None);
    }

    #[test]
    fn torus_rank_one() {
        let r = connectivity_bounds(&GroupExpr::Orientable(1), 1).unwrap();
        assert_eq!(r.flat_connections.value, 0);
    }

    #[test]
    fn guards() {
        assert!(matches!(connectivity_bounds(&GroupExpr::Orientable(1), 0), Err(Error::OutOfRange(_))));
        assert!(connectivity_bounds(&GroupExpr::Integers, 2).is_err());
        assert!(connectivity_bounds(&GroupExpr::NonOrientable(1), 2).is_err());
    }
}
