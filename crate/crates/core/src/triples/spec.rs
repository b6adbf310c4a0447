//! Triple-spec files: YAML records with 1-based cycle strings.
//!
//! ```yaml
//! label: PSL(3,2)
//! degree: 14
//! generators: ["(1 2)(3 4)", ...]
//! H: [...]
//! K: [...]
//! ```
//!
//! Optional keys: `pair` (images of the generators under an automorphism
//! candidate) and `construct` (a construction stanza).

use serde::{Deserialize, Serialize};

use super::Triple;
use crate::error::{Error, Result};
use crate::permgroup::{format_generator_list, parse_generator_list, PermGroup, Permutation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub degree: usize,
    #[serde(default)]
    pub generators: Vec<String>,
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_yaml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_group(g: &PermGroup) -> Self {
        GroupSpec {
            degree: g.degree(),
            generators: format_generator_list(g.generators()),
        }
    }

    pub fn to_group(&self) -> Result<PermGroup> {
        PermGroup::new(self.degree, parse_generator_list(&self.generators, self.degree)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructStanza {
    /// `I`, `II` or `III`.
    pub variant: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(rename = "T")]
    pub t: GroupSpec,
    /// Type II/III: generators of the diagonal subgroups on `n·d` (Type II)
    /// or `k·d` (Type III) points.
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub l_gens: Option<Vec<String>>,
    #[serde(rename = "L'", default, skip_serializing_if = "Option::is_none")]
    pub l_prime_gens: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleSpec {
    pub label: String,
    pub degree: usize,
    pub generators: Vec<String>,
    #[serde(rename = "H")]
    pub h: Vec<String>,
    #[serde(rename = "K")]
    pub k: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construct: Option<ConstructStanza>,
}

impl TripleSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_yaml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_yaml(&self) -> String {
        serde_yaml::to_string(self).expect("plain data serializes")
    }

    pub fn from_triple(t: &Triple) -> Self {
        TripleSpec {
            label: t.label.clone(),
            degree: t.degree(),
            generators: format_generator_list(t.g().generators()),
            h: format_generator_list(t.h().generators()),
            k: format_generator_list(t.k().generators()),
            pair: None,
            construct: None,
        }
    }

    pub fn with_pair(mut self, images: &[Permutation]) -> Self {
        self.pair = Some(format_generator_list(images));
        self
    }

    pub fn to_triple(&self) -> Result<Triple> {
        let n = self.degree;
        let g = PermGroup::new(n, parse_generator_list(&self.generators, n)?)?;
        let h = PermGroup::new(n, parse_generator_list(&self.h, n)?)?;
        let k = PermGroup::new(n, parse_generator_list(&self.k, n)?)?;
        Triple::new(self.label.clone(), g, h, k)
    }

    pub fn pair_images(&self) -> Result<Option<Vec<Permutation>>> {
        self.pair
            .as_ref()
            .map(|p| parse_generator_list(p, self.degree))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A4: &str = "label: A4\ndegree: 4\ngenerators:\n- (1 2 3)\n- (2 3 4)\nH:\n- (1 2)(3 4)\nK:\n- (1 2)(3 4)\n- (1 3)(2 4)\n";

    #[test]
    fn parses_and_round_trips() {
        let spec = TripleSpec::parse(A4).unwrap();
        let t = spec.to_triple().unwrap();
        assert_eq!(t.g().order(), 12);
        assert_eq!(t.k().order(), 4);
        let again = TripleSpec::from_triple(&t);
        assert_eq!(again, spec);
        assert_eq!(again.to_yaml(), A4);
    }

    #[test]
    fn malformed_cycles_are_parse_errors() {
        let bad = A4.replace("(2 3 4)", "(2 3 x)");
        let spec = TripleSpec::parse(&bad).unwrap();
        assert!(matches!(spec.to_triple(), Err(Error::Parse(_))));
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(TripleSpec::parse(&format!("{A4}extra: 1\n")).is_err());
    }

    #[test]
    fn construct_stanza_round_trips() {
        let mut spec = TripleSpec::parse(A4).unwrap();
        spec.construct = Some(ConstructStanza {
            variant: "I".into(),
            n: Some(2),
            l: None,
            k: None,
            t: GroupSpec {
                degree: 2,
                generators: vec!["(1 2)".into()],
            },
            l_gens: None,
            l_prime_gens: None,
        });
        let text = spec.to_yaml();
        assert_eq!(TripleSpec::parse(&text).unwrap(), spec);
    }
}
