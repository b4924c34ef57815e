use std::path::Path;

use aslk_core::loop_calculus::FiberSlideCase;
use aslk_core::manifold_groups::ConnectedSumDescriptor;
use aslk_core::Sign;
use serde::Deserialize;

use crate::CliError;

/// Input document shared by `eval`, `centralizer` and `classify`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub manifold: ConnectedSumDescriptor,
    #[serde(default)]
    pub knot: KnotSection,
    #[serde(default)]
    pub context: ContextSection,
    #[serde(default, rename = "loop")]
    pub loop_word: Option<String>,
    #[serde(default)]
    pub path: Option<Vec<PathEntry>>,
    /// Trace of a loop `alpha`, decomposed as `t(alpha^i) = K^j f^k`.
    #[serde(default)]
    pub alpha_trace: Option<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotSection {
    /// Free-homotopy class as a word in the ambient group.
    #[serde(default)]
    pub class: Option<String>,
    /// A framed Gauss code, for knots in S³.
    #[serde(default)]
    pub gauss: Option<String>,
    #[serde(default)]
    pub crosses_nonseparating_sphere_once: bool,
    #[serde(default)]
    pub orientation_reversing: bool,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextSection {
    #[serde(default)]
    pub in_irreducible_summand: bool,
    #[serde(default)]
    pub fiber_slide: FiberSlideCase,
    /// Number of reducing spheres; defaults to the summand count minus one
    /// plus the number of S¹×S² summands.
    #[serde(default)]
    pub spheres: Option<u32>,
    #[serde(default)]
    pub alpha_squared: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathEntry {
    pub sign: Sign,
    pub loop_word: String,
}

impl Manifest {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let manifest: Manifest =
            serde_json::from_str(text).map_err(|e| CliError::Input(format!("manifest: {e}")))?;
        manifest.manifold.validate().map_err(|e| CliError::Input(format!("manifest: {e}")))?;
        Ok(manifest)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn default_spheres(&self) -> u32 {
        let m = &self.manifold;
        let separating = m.summands.len().saturating_sub(1);
        u32::try_from(separating + m.s1xs2_count()).unwrap_or(u32::MAX)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unknown_fields() {
        let ok = r#"{"manifold": {"summands": [{"family": "s3"}]}, "loop": "g2"}"#;
        assert!(Manifest::from_json(ok).is_ok());
        let bad = r#"{"manifold": {"summands": [{"family": "s3"}]}, "lop": "g2"}"#;
        assert!(matches!(Manifest::from_json(bad), Err(CliError::Input(_))));
        let bad = r#"{"manifold": {"summands": [{"family": "s3"}]}, "knot": {"klass": "e"}}"#;
        assert!(Manifest::from_json(bad).is_err());
        let invalid = r#"{"manifold": {"summands": []}}"#;
        assert!(Manifest::from_json(invalid).is_err());
    }

    #[test]
    fn path_signs() {
        let m = Manifest::from_json(
            r#"{"manifold": {"summands": [{"family": "s3"}]},
                "path": [{"sign": 1, "loop_word": "e"}, {"sign": "-", "loop_word": "e"}]}"#,
        )
        .unwrap();
        let signs: Vec<Sign> = m.path.unwrap().iter().map(|p| p.sign).collect();
        assert_eq!(signs, [Sign::Positive, Sign::Negative]);
    }
}
