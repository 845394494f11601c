//! Diagram input documents and run configuration.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::diagram::{BraidWord, LinkDiagram};
use crate::error::Result;
use crate::skein::SkeinConfig;

/// One link diagram as read from a file.
///
/// `{"format": "pd", "crossings": [[a,b,c,d], …], "signs": [±1, …]}` or
/// `{"format": "braid", "strands": s, "word": [±i, …]}`. PD documents may
/// also carry `"free_loops": n` for crossing-free circles, which have no PD
/// tuple of their own.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "format", rename_all = "lowercase", deny_unknown_fields)]
pub enum DiagramDocument {
    Pd {
        crossings: Vec<[i64; 4]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        signs: Option<Vec<i64>>,
        #[serde(default, skip_serializing_if = "is_zero")]
        free_loops: usize,
    },
    Braid {
        strands: usize,
        word: Vec<i64>,
    },
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

impl DiagramDocument {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_diagram(&self) -> Result<LinkDiagram> {
        match self {
            DiagramDocument::Pd { crossings, signs, free_loops } => {
                let d = LinkDiagram::from_pd(crossings, signs.as_deref())?;
                Ok(d.distant_union(&LinkDiagram::unlink(*free_loops)))
            }
            DiagramDocument::Braid { strands, word } => {
                Ok(LinkDiagram::from_braid(&BraidWord::new(*strands, word.clone())?))
            }
        }
    }
}

/// Parses a diagram document straight to a diagram.
pub fn read_diagram(text: &str) -> Result<LinkDiagram> {
    DiagramDocument::parse(text)?.to_diagram()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub max_bruteforce_crossings: usize,
    pub max_contract_width: usize,
    pub max_color: u32,
    /// Restricts fitting to one parity coset (`N_j mod 2`).
    pub parity_offsets: Option<Vec<u32>>,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let s = SkeinConfig::default();
        Self {
            max_bruteforce_crossings: s.max_bruteforce_crossings,
            max_contract_width: s.max_contract_width,
            max_color: 4,
            parity_offsets: None,
            output: None,
        }
    }
}

impl RunConfig {
    pub fn skein(&self) -> SkeinConfig {
        SkeinConfig {
            max_bruteforce_crossings: self.max_bruteforce_crossings,
            max_contract_width: self.max_contract_width,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn pd_and_braid_documents() {
        let h = read_diagram(r#"{"format": "pd", "crossings": [[1,3,2,4],[3,1,4,2]]}"#).unwrap();
        assert_eq!(h, crate::corpus::hopf());
        let b = read_diagram(r#"{"format": "braid", "strands": 2, "word": [1,1,1]}"#).unwrap();
        assert_eq!(b.crossing_count(), 3);
        let e = read_diagram(r#"{"format": "pd", "crossings": []}"#).unwrap();
        assert!(e.is_empty());
        let u = read_diagram(r#"{"format": "pd", "crossings": [], "free_loops": 2}"#).unwrap();
        assert_eq!(u.num_components(), 2);
        let k = read_diagram(r#"{"format": "pd", "crossings": [[1,2,2,1]], "signs": [-1]}"#).unwrap();
        assert_eq!(k.crossing_stats().writhe, vec![-1]);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(read_diagram("{"), Err(Error::Document(_))));
        assert!(matches!(read_diagram(r#"{"format": "gauss"}"#), Err(Error::Document(_))));
        assert!(matches!(
            read_diagram(r#"{"format": "pd", "crossings": [[1,2,3,4]]}"#),
            Err(Error::MalformedPd(_))
        ));
        assert!(matches!(
            read_diagram(r#"{"format": "braid", "strands": 2, "word": [2]}"#),
            Err(Error::InvalidBraid(_))
        ));
    }

    #[test]
    fn round_trip() {
        let d = DiagramDocument::Braid { strands: 3, word: vec![1, -2] };
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"format":"braid","strands":3,"word":[1,-2]}"#);
        assert_eq!(DiagramDocument::parse(&s).unwrap(), d);
    }
}
