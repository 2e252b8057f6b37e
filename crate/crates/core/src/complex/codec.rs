use serde::{Deserialize, Serialize};

use super::{ComplexError, Simplex, SimplicialComplex};

/// Wire form `{"n": .., "r": .., "maximal_faces": [[..], ..]}` with ascending 1-based labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalComplex {
    pub n: u32,
    pub r: usize,
    pub maximal_faces: Vec<Vec<u32>>,
}

impl From<&SimplicialComplex> for CanonicalComplex {
    fn from(y: &SimplicialComplex) -> Self {
        CanonicalComplex {
            n: y.n(),
            r: y.r(),
            maximal_faces: y
                .maximal_faces()
                .iter()
                .map(|s| s.vertices().to_vec())
                .collect(),
        }
    }
}

impl TryFrom<CanonicalComplex> for SimplicialComplex {
    type Error = ComplexError;

    fn try_from(c: CanonicalComplex) -> Result<Self, Self::Error> {
        let gens = c
            .maximal_faces
            .into_iter()
            .map(Simplex::new)
            .collect::<Result<Vec<_>, _>>()?;
        SimplicialComplex::build(c.n, c.r, gens)
    }
}

impl SimplicialComplex {
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(&CanonicalComplex::from(self)).expect("plain data serializes")
    }

    pub fn from_canonical_json(text: &str) -> Result<Self, ComplexError> {
        let c: CanonicalComplex = serde_json::from_str(text)?;
        SimplicialComplex::try_from(c)
    }
}

/// Compact key naming a complex inside a fixed space: its maximal faces, e.g. `[[1,2],[3]]`.
pub fn canonical_key(y: &SimplicialComplex) -> String {
    serde_json::to_string(&CanonicalComplex::from(y).maximal_faces).expect("plain data serializes")
}

pub fn decode_key(n: u32, r: usize, key: &str) -> Result<SimplicialComplex, ComplexError> {
    let maximal_faces: Vec<Vec<u32>> = serde_json::from_str(key)?;
    SimplicialComplex::try_from(CanonicalComplex { n, r, maximal_faces })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_json_layout() {
        let y = SimplicialComplex::from_lists(4, 2, &[&[3], &[1, 2]]).unwrap();
        assert_eq!(
            y.to_canonical_json(),
            r#"{"n":4,"r":2,"maximal_faces":[[1,2],[3]]}"#
        );
        assert_eq!(canonical_key(&y), "[[1,2],[3]]");
        assert_eq!(canonical_key(&SimplicialComplex::empty(2, 1)), "[]");
    }

    #[test]
    fn decoding_closes_and_validates() {
        let y = SimplicialComplex::from_canonical_json(r#"{"n":3,"r":2,"maximal_faces":[[1,2,3]]}"#)
            .unwrap();
        assert_eq!(y.f_vector(), vec![3, 3, 1]);
        assert!(SimplicialComplex::from_canonical_json(r#"{"n":2,"r":1,"maximal_faces":[[1,3]]}"#)
            .is_err());
        assert!(SimplicialComplex::from_canonical_json(r#"{"n":3,"r":1,"maximal_faces":[[2,1]]}"#)
            .is_err());
        assert!(SimplicialComplex::from_canonical_json("not json").is_err());
        assert_eq!(decode_key(4, 2, "[[1,2],[3]]").unwrap().f_vector(), vec![3, 1, 0]);
    }
}
