use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::{CrossingId, GeodesicId, MedialGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    SelfIntersection,
    DoubleCrossing,
    ClosedLoop,
}

/// A concrete reason a medial graph is not (semi)critical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeodesicViolation {
    pub kind: ViolationKind,
    pub geodesics: Vec<GeodesicId>,
    pub crossings: Vec<CrossingId>,
}

impl fmt::Display for GeodesicViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ViolationKind::SelfIntersection => {
                write!(f, "SelfIntersection: geodesic {} crosses itself at crossing {}", self.geodesics[0], self.crossings[0])
            }
            ViolationKind::DoubleCrossing => write!(
                f,
                "DoubleCrossing: geodesics {} and {} cross at crossings {} and {}",
                self.geodesics[0], self.geodesics[1], self.crossings[0], self.crossings[1]
            ),
            ViolationKind::ClosedLoop => write!(f, "ClosedLoop: geodesic {} is closed", self.geodesics[0]),
        }
    }
}

/// No geodesic meets itself and no two geodesics meet more than once.
pub fn check_semicritical(m: &MedialGraph) -> Result<(), GeodesicViolation> {
    for c in m.crossing_ids() {
        let [g, h] = m.strands(c);
        if g == h {
            return Err(GeodesicViolation { kind: ViolationKind::SelfIntersection, geodesics: vec![g], crossings: vec![c] });
        }
    }
    let mut seen: BTreeMap<(GeodesicId, GeodesicId), CrossingId> = BTreeMap::new();
    for c in m.crossing_ids() {
        let [g, h] = m.strands(c);
        let key = (g.min(h), g.max(h));
        if let Some(&first) = seen.get(&key) {
            return Err(GeodesicViolation { kind: ViolationKind::DoubleCrossing, geodesics: vec![key.0, key.1], crossings: vec![first, c] });
        }
        seen.insert(key, c);
    }
    Ok(())
}

/// Semicritical and every geodesic runs boundary to boundary.
pub fn check_critical(m: &MedialGraph) -> Result<(), GeodesicViolation> {
    check_semicritical(m)?;
    if let Some((g, geo)) = m.geodesics().iter().enumerate().find(|(_, g)| g.is_closed()) {
        return Err(GeodesicViolation { kind: ViolationKind::ClosedLoop, geodesics: vec![g], crossings: geo.crossings.clone() });
    }
    Ok(())
}
