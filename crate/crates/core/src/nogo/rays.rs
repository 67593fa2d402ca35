//! Projective rays in R³ with their orthogonality structure.

use serde::{Deserialize, Serialize};

use super::NogoError;

/// Rays closer to orthogonal than this count as orthogonal.
pub const ORTHO_TOL: f64 = 1e-9;

/// Unit vector in R³ identified up to overall sign, with a stable id (its
/// index in the owning set).
#[derive(Debug, Clone, PartialEq)]
pub struct Ray {
    pub direction: [f64; 3],
    pub id: usize,
}

/// A finite ray family together with every mutually orthogonal triple and
/// every orthogonal pair not inside a stored triple, both recomputed from
/// the directions on construction.
#[derive(Debug, Clone)]
pub struct RaySet {
    rays: Vec<Ray>,
    triples: Vec<[usize; 3]>,
    pairs: Vec<[usize; 2]>,
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Scales to unit length and flips sign so the first component of largest
/// magnitude is positive, giving each projective ray one representative.
fn canonical(v: [f64; 3]) -> Option<[f64; 3]> {
    let norm = dot(&v, &v).sqrt();
    if norm < 1e-12 {
        return None;
    }
    let mut u = [v[0] / norm, v[1] / norm, v[2] / norm];
    let lead = u.iter().cloned().find(|c| c.abs() > 1e-12).unwrap_or(0.0);
    if lead < 0.0 {
        for c in &mut u {
            *c = -*c;
        }
    }
    Some(u)
}

impl RaySet {
    /// Builds a ray set from raw directions: normalizes projectively,
    /// rejects zero vectors and duplicate rays, and scans all pairs and
    /// triples for orthogonality.
    pub fn from_directions(directions: &[[f64; 3]]) -> Result<Self, NogoError> {
        let mut rays: Vec<Ray> = Vec::with_capacity(directions.len());
        for (id, v) in directions.iter().enumerate() {
            let u = canonical(*v)
                .ok_or_else(|| NogoError::InvalidRaySet(format!("ray {id} is the zero vector")))?;
            for prev in &rays {
                if dot(&prev.direction, &u).abs() >= 1.0 - 1e-9 {
                    return Err(NogoError::InvalidRaySet(format!(
                        "rays {} and {id} are the same projective ray",
                        prev.id
                    )));
                }
            }
            rays.push(Ray { direction: u, id });
        }

        let n = rays.len();
        let orthogonal =
            |i: usize, j: usize| dot(&rays[i].direction, &rays[j].direction).abs() <= ORTHO_TOL;
        let mut triples = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if !orthogonal(i, j) {
                    continue;
                }
                for k in (j + 1)..n {
                    if orthogonal(i, k) && orthogonal(j, k) {
                        triples.push([i, j, k]);
                    }
                }
            }
        }
        let in_some_triple =
            |i: usize, j: usize| triples.iter().any(|t| t.contains(&i) && t.contains(&j));
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if orthogonal(i, j) && !in_some_triple(i, j) {
                    pairs.push([i, j]);
                }
            }
        }
        Ok(Self {
            rays,
            triples,
            pairs,
        })
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    pub fn pairs(&self) -> &[[usize; 2]] {
        &self.pairs
    }

    /// Restriction to a subset of ray indices (structure recomputed).
    pub fn subset(&self, indices: &[usize]) -> Result<Self, NogoError> {
        let dirs: Vec<[f64; 3]> = indices.iter().map(|&i| self.rays[i].direction).collect();
        Self::from_directions(&dirs)
    }
}

#[derive(Serialize, Deserialize)]
struct RaySetDto {
    rays: Vec<[f64; 3]>,
}

impl Serialize for RaySet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RaySetDto {
            rays: self.rays.iter().map(|r| r.direction).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RaySet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let dto = RaySetDto::deserialize(deserializer)?;
        RaySet::from_directions(&dto.rays).map_err(serde::de::Error::custom)
    }
}

/// The three coordinate axes, the smallest set with a triple constraint.
pub fn coordinate_triad() -> RaySet {
    RaySet::from_directions(&[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
        .expect("coordinate triad is well-formed")
}

/// The 33-ray set with components in {0, ±1, ±√2}.
///
/// Enumerates the whole component grid, deduplicates projectively, and
/// keeps the rays whose squared-component pattern (sorted) is one of
/// (0,0,1), (0,1/2,1/2), (0,1/3,2/3), (1/4,1/4,1/2): the axes, face
/// diagonals, and the two mixed families. Correctness rests on the checked
/// invariants (exactly 33 rays, non-colorable), not on a transcribed table.
pub fn peres_rays() -> RaySet {
    let values = [
        0.0,
        1.0,
        -1.0,
        std::f64::consts::SQRT_2,
        -std::f64::consts::SQRT_2,
    ];
    let patterns: [[f64; 3]; 4] = [
        [0.0, 0.0, 1.0],
        [0.0, 0.5, 0.5],
        [0.0, 1.0 / 3.0, 2.0 / 3.0],
        [0.25, 0.25, 0.5],
    ];
    let mut dirs: Vec<[f64; 3]> = Vec::new();
    for &a in &values {
        for &b in &values {
            for &c in &values {
                let Some(u) = canonical([a, b, c]) else {
                    continue;
                };
                let mut sq = [u[0] * u[0], u[1] * u[1], u[2] * u[2]];
                sq.sort_by(|x, y| x.partial_cmp(y).unwrap());
                let admitted = patterns
                    .iter()
                    .any(|p| (0..3).all(|i| (sq[i] - p[i]).abs() <= 1e-9));
                if !admitted {
                    continue;
                }
                if dirs.iter().all(|d| dot(d, &u).abs() < 1.0 - 1e-9) {
                    dirs.push(u);
                }
            }
        }
    }
    RaySet::from_directions(&dirs).expect("generated rays are distinct unit vectors")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn peres_set_has_exactly_33_rays() {
        assert_eq!(peres_rays().len(), 33);
    }

    #[test]
    fn peres_set_forms_sixteen_complete_triads() {
        let rs = peres_rays();
        assert_eq!(rs.triples().len(), 16);
        // orthogonal pairs not completed by a third set member, per the scan
        assert_eq!(rs.pairs().len(), 24);
    }

    #[test]
    fn peres_set_contains_the_coordinate_triad() {
        let rs = peres_rays();
        for axis in [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]] {
            assert!(rs
                .rays()
                .iter()
                .any(|r| dot(&r.direction, &axis).abs() >= 1.0 - 1e-12));
        }
    }

    #[test]
    fn orthogonality_scan_matches_brute_force_recount() {
        let rs = peres_rays();
        // independent O(n^3) recount straight off the direction list
        let n = rs.len();
        let orth = |i: usize, j: usize| {
            dot(&rs.rays()[i].direction, &rs.rays()[j].direction).abs() <= ORTHO_TOL
        };
        let mut triples = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    if orth(i, j) && orth(i, k) && orth(j, k) {
                        triples.push([i, j, k]);
                    }
                }
            }
        }
        assert_eq!(rs.triples(), triples.as_slice());
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if orth(i, j) && !triples.iter().any(|t| t.contains(&i) && t.contains(&j)) {
                    pairs.push([i, j]);
                }
            }
        }
        assert_eq!(rs.pairs(), pairs.as_slice());
    }

    #[test]
    fn stored_triples_are_mutually_orthogonal() {
        let rs = peres_rays();
        for t in rs.triples() {
            for a in 0..3 {
                for b in (a + 1)..3 {
                    let d = dot(&rs.rays()[t[a]].direction, &rs.rays()[t[b]].direction);
                    assert!(d.abs() <= ORTHO_TOL);
                }
            }
        }
    }

    #[test]
    fn duplicate_rays_are_rejected() {
        let err = RaySet::from_directions(&[[1.0, 0.0, 0.0], [-2.0, 0.0, 0.0]]).unwrap_err();
        assert!(matches!(err, NogoError::InvalidRaySet(_)));
    }

    #[test]
    fn zero_vector_is_rejected() {
        let err = RaySet::from_directions(&[[0.0, 0.0, 0.0]]).unwrap_err();
        assert!(matches!(err, NogoError::InvalidRaySet(_)));
    }

    #[test]
    fn json_round_trip_recomputes_structure() {
        let rs = coordinate_triad();
        let text = serde_json::to_string(&rs).unwrap();
        let back: RaySet = serde_json::from_str(&text).unwrap();
        assert_eq!(back.len(), 3);
        assert_eq!(back.triples().len(), 1);
        assert!(back.pairs().is_empty());
    }
}
