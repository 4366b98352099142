//! The runner script and style inlined into every compiled page.

use sha2::{Digest, Sha256};

use super::CompileError;

const BUNDLED_SCRIPT: &str = include_str!("../../assets/runner.js");
const BUNDLED_STYLE: &str = include_str!("../../assets/runner.css");

/// Runner assets together with the hash they were produced under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunnerAssets {
    script: String,
    style: String,
    asset_hash: String,
}

/// Lowercase hex SHA-256 of `script` followed by `style`.
pub fn asset_hash(script: &str, style: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(script.as_bytes());
    hasher.update(style.as_bytes());
    hex::encode(hasher.finalize())
}

impl RunnerAssets {
    /// Assets whose hash is computed here.
    pub fn new(script: impl Into<String>, style: impl Into<String>) -> Result<Self, CompileError> {
        let (script, style) = (script.into(), style.into());
        let asset_hash = asset_hash(&script, &style);
        Self::from_parts(script, style, asset_hash)
    }

    /// Assets shipped with a recorded hash; a mismatch means the script or
    /// style changed after the hash was taken.
    pub fn from_parts(
        script: impl Into<String>,
        style: impl Into<String>,
        recorded_hash: impl Into<String>,
    ) -> Result<Self, CompileError> {
        let (script, style, recorded) = (script.into(), style.into(), recorded_hash.into());
        let actual = asset_hash(&script, &style);
        if actual != recorded {
            return Err(CompileError::StaleAssets { recorded, actual });
        }
        if script.to_ascii_lowercase().contains("</script") {
            return Err(CompileError::UnsafeAsset("script contains a closing script tag"));
        }
        if style.to_ascii_lowercase().contains("</style") {
            return Err(CompileError::UnsafeAsset("style contains a closing style tag"));
        }
        Ok(Self {
            script,
            style,
            asset_hash: actual,
        })
    }

    /// The runner built into this crate.
    pub fn bundled() -> Self {
        Self::new(BUNDLED_SCRIPT, BUNDLED_STYLE).expect("bundled runner assets are well formed")
    }

    pub fn script(&self) -> &str {
        &self.script
    }

    pub fn style(&self) -> &str {
        &self.style
    }

    pub fn asset_hash(&self) -> &str {
        &self.asset_hash
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stale_hash_is_rejected() {
        let good = RunnerAssets::new("run()", "p{}").unwrap();
        assert_eq!(good.asset_hash().len(), 64);
        let err = RunnerAssets::from_parts("run(1)", "p{}", good.asset_hash()).unwrap_err();
        assert!(matches!(err, CompileError::StaleAssets { .. }));
    }

    #[test]
    fn closing_tags_are_refused() {
        assert!(RunnerAssets::new("x='</SCRIPT>'", "").is_err());
        assert!(RunnerAssets::new("", "</style>").is_err());
    }

    #[test]
    fn known_digest() {
        assert_eq!(
            asset_hash("ab", "c"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
