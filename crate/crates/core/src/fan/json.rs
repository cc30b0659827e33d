use serde::{Deserialize, Serialize};

use super::Fan;
use crate::error::{Error, Result};
use crate::linalg::IntVector;

/// On-disk fan description. When no cone lists `faces`, the listed cones are
/// treated as generators and all their faces are computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanJson {
    pub ambient_rank: usize,
    #[serde(default)]
    pub lineality: Vec<IntVector>,
    pub rays: Vec<IntVector>,
    pub cones: Vec<ConeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeJson {
    pub rays: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<usize>>,
}

/// A fan read from JSON, with the fan cone index of every input cone.
#[derive(Clone, Debug)]
pub struct LoadedFan {
    pub fan: Fan,
    pub input_to_cone: Vec<usize>,
}

impl FanJson {
    pub fn into_fan(self) -> Result<LoadedFan> {
        let explicit = self.cones.iter().any(|c| c.faces.is_some());
        let (fan, input_to_cone) = if explicit {
            let mut faces = Vec::new();
            for (i, c) in self.cones.iter().enumerate() {
                for &j in c.faces.iter().flatten() {
                    faces.push((j, i));
                }
            }
            let cones = self.cones.into_iter().map(|c| c.rays).collect();
            Fan::build(self.ambient_rank, self.lineality, self.rays, cones, faces)?
        } else {
            let cones = self.cones.into_iter().map(|c| c.rays).collect();
            Fan::from_generators(self.ambient_rank, self.lineality, self.rays, cones)?
        };
        Ok(LoadedFan { fan, input_to_cone })
    }
}

impl Fan {
    /// The explicit form: every cone with its covering faces.
    pub fn to_json(&self) -> FanJson {
        let mut faces = vec![Vec::new(); self.cones().len()];
        for &(a, b) in self.face_relation() {
            faces[b].push(a);
        }
        FanJson {
            ambient_rank: self.ambient_rank(),
            lineality: self.lineality().to_vec(),
            rays: self.rays().to_vec(),
            cones: self
                .cones()
                .iter()
                .zip(faces)
                .map(|(c, f)| ConeJson {
                    rays: c.rays().to_vec(),
                    faces: Some(f),
                })
                .collect(),
        }
    }

    pub fn from_json_str(s: &str) -> Result<LoadedFan> {
        let raw: FanJson = serde_json::from_str(s).map_err(|e| Error::InvalidFan(format!("JSON: {e}")))?;
        raw.into_fan()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("fan serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::standard::projective_space;
    use crate::fan::{validate_fan, ValidationLevel};

    #[test]
    fn round_trip() {
        let f = projective_space(2);
        let back = Fan::from_json_str(&f.to_json_string()).unwrap();
        assert_eq!(back.fan, f);
        assert_eq!(back.input_to_cone, (0..7).collect::<Vec<_>>());
    }

    #[test]
    fn generator_form() {
        let s = r#"{
            "ambient_rank": 2,
            "rays": [[1,0],[0,1],[-1,-1]],
            "cones": [{"rays":[0,1]},{"rays":[1,2]},{"rays":[2,0]}]
        }"#;
        let loaded = Fan::from_json_str(s).unwrap();
        assert_eq!(loaded.fan, projective_space(2));
        assert!(loaded.input_to_cone.iter().all(|&i| loaded.fan.cone(i).dim() == 2));
        assert!(validate_fan(&loaded.fan, ValidationLevel::Geometric).is_valid());
    }

    #[test]
    fn explicit_form_with_big_entries() {
        let s = r#"{
            "ambient_rank": 1,
            "lineality": [],
            "rays": [["1"], [-1]],
            "cones": [{"rays":[], "faces": []}, {"rays":[0], "faces":[0]}, {"rays":[1], "faces":[0]}]
        }"#;
        let loaded = Fan::from_json_str(s).unwrap();
        assert_eq!(loaded.fan.cones().len(), 3);
        assert!(Fan::from_json_str(r#"{"ambient_rank": 1, "rays": [[1]], "cones": [], "extra": 1}"#).is_err());
    }
}
