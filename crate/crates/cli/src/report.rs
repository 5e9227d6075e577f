use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::RunConfig;

/// Output of one command. Contains no timings, so equal inputs give equal bytes.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub seed: u64,
    pub config: RunConfig,
    pub results: Value,
    pub pass: bool,
}

impl Report {
    pub fn new(
        command: &str,
        inputs: &[&[u8]],
        config: &RunConfig,
        results: Value,
        pass: bool,
    ) -> Self {
        Self {
            command: command.to_string(),
            inputs_digest: digest(inputs),
            seed: config.seed,
            config: config.clone(),
            results,
            pass,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// SHA-256 over the length-prefixed parts.
pub fn digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    hex::encode(h.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_separates_parts() {
        assert_ne!(digest(&[b"ab", b"c"]), digest(&[b"a", b"bc"]));
        assert_eq!(digest(&[b"x"]).len(), 64);
    }
}
