//! Sentence embedders. The real encoder runs behind an HTTP endpoint
//! (`POST /embed {"texts": [...]}` returning `{"vectors": [[...], ...]}`);
//! [`HashEmbedder`] is a deterministic stand-in for tests and offline runs.

use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::text;

#[derive(Debug, Error)]
pub enum EmbedError {
    #[error("embedding service unreachable: {0}")]
    Transport(String),
    #[error("embedding service answered HTTP {0}")]
    Status(u16),
    #[error("malformed embedding response: {0}")]
    Malformed(String),
    #[error("embedding service returned {got} vectors for {expected} texts")]
    CountMismatch { expected: usize, got: usize },
    #[error("embedding dimension changed from {expected} to {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

pub trait Embedder: Sync {
    /// One vector per input text, all of the same dimension.
    fn embed(&self, texts: &[String]) -> Result<Vec<Vec<f32>>, EmbedError>;

    /// Largest batch the embedder accepts in one call.
    fn batch_size(&self) -> usize {
        64
    }
}

pub fn cosine(a: &[f32], b: &[f32]) -> f64 {
    cosine_with_norms(a, sq_norm(a), b, sq_norm(b))
}

/// Squared Euclidean norm, computed the same way [`cosine`] does.
pub fn sq_norm(v: &[f32]) -> f64 {
    v.iter().map(|&x| (x as f64) * (x as f64)).sum()
}

/// Cosine given precomputed squared norms; bit-identical to [`cosine`].
/// Taking one square root of the product keeps a vector's cosine with
/// itself at exactly 1.0.
pub fn cosine_with_norms(a: &[f32], na2: f64, b: &[f32], nb2: f64) -> f64 {
    if na2 == 0.0 || nb2 == 0.0 {
        return 0.0;
    }
    let dot: f64 = a.iter().zip(b).map(|(&x, &y)| x as f64 * y as f64).sum();
    (dot / (na2 * nb2).sqrt()).clamp(-1.0, 1.0)
}

/// Embed `texts` in batches, checking counts and dimensions.
pub fn embed_all(embedder: &dyn Embedder, texts: &[String]) -> Result<Vec<Vec<f32>>, EmbedError> {
    let mut out = Vec::with_capacity(texts.len());
    let mut dim = None;
    for chunk in texts.chunks(embedder.batch_size().max(1)) {
        let vectors = embedder.embed(chunk)?;
        if vectors.len() != chunk.len() {
            return Err(EmbedError::CountMismatch { expected: chunk.len(), got: vectors.len() });
        }
        for v in vectors {
            let expected = *dim.get_or_insert(v.len());
            if v.len() != expected {
                return Err(EmbedError::DimensionMismatch { expected, got: v.len() });
            }
            out.push(v);
        }
    }
    Ok(out)
}

/// Signed feature hashing of lowercased word unigrams and bigrams.
#[derive(Debug, Clone)]
pub struct HashEmbedder {
    pub dim: usize,
    pub seed: u64,
}

impl Default for HashEmbedder {
    fn default() -> Self {
        HashEmbedder { dim: 512, seed: 0 }
    }
}

fn fnv1a(seed: u64, parts: &[&str]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ seed;
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            h ^= 0x1f;
            h = h.wrapping_mul(0x100_0000_01b3);
        }
        for b in p.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100_0000_01b3);
        }
    }
    h
}

impl HashEmbedder {
    pub fn new(dim: usize, seed: u64) -> Self {
        HashEmbedder { dim: dim.max(1), seed }
    }

    pub fn vector(&self, sentence: &str) -> Vec<f32> {
        let mut v = vec![0.0f32; self.dim];
        let words: Vec<String> = text::word_tokens(sentence).map(str::to_lowercase).collect();
        let mut add = |parts: &[&str], weight: f32| {
            let h = fnv1a(self.seed, parts);
            let sign = if h >> 63 == 0 { 1.0 } else { -1.0 };
            v[(h % self.dim as u64) as usize] += sign * weight;
        };
        for w in &words {
            add(&[w], 1.0);
        }
        for pair in words.windows(2) {
            add(&[&pair[0], &pair[1]], 0.5);
        }
        v
    }
}

impl Embedder for HashEmbedder {
    fn embed(&self, texts: &[String]) -> Result<Vec<Vec<f32>>, EmbedError> {
        Ok(texts.iter().map(|t| self.vector(t)).collect())
    }

    fn batch_size(&self) -> usize {
        1024
    }
}

#[derive(Serialize)]
struct EmbedRequest<'a> {
    texts: &'a [String],
}

#[derive(Deserialize)]
struct EmbedResponse {
    vectors: Vec<Vec<f32>>,
}

/// Client for an embedding service speaking the `/embed` contract.
pub struct HttpEmbedder {
    url: String,
    batch_size: usize,
    agent: ureq::Agent,
}

impl HttpEmbedder {
    /// `base` is either the service root or the full `/embed` URL.
    pub fn new(base: &str, batch_size: usize, timeout: Duration) -> Self {
        let base = base.trim_end_matches('/');
        let url = if base.ends_with("/embed") { base.to_string() } else { format!("{base}/embed") };
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(timeout))
            .build()
            .into();
        HttpEmbedder { url, batch_size: batch_size.max(1), agent }
    }

    pub fn url(&self) -> &str {
        &self.url
    }
}

impl Embedder for HttpEmbedder {
    fn embed(&self, texts: &[String]) -> Result<Vec<Vec<f32>>, EmbedError> {
        let mut resp = self.agent.post(&self.url).send_json(EmbedRequest { texts }).map_err(|e| match e {
            ureq::Error::StatusCode(code) => EmbedError::Status(code),
            other => EmbedError::Transport(other.to_string()),
        })?;
        let body: EmbedResponse = resp
            .body_mut()
            .read_json()
            .map_err(|e| EmbedError::Malformed(e.to_string()))?;
        if body.vectors.len() != texts.len() {
            return Err(EmbedError::CountMismatch { expected: texts.len(), got: body.vectors.len() });
        }
        Ok(body.vectors)
    }

    fn batch_size(&self) -> usize {
        self.batch_size
    }
}
