//! Declarative pipeline configuration (TOML). Every numeric setting
//! defaults to the value used in the original study, so an almost empty
//! file reproduces it:
//!
//! ```toml
//! store = "store"
//! houses = ["house_a"]
//!
//! [inputs.house_a]
//! articles = "articles.jsonl"
//! coref = "coref.jsonl"
//! conllu = "conllu"
//! generated = "generated.jsonl"
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::store::{iso_date, validate_house};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub store: PathBuf,
    pub houses: Vec<String>,
    #[serde(with = "iso_date")]
    pub date_from: NaiveDate,
    #[serde(with = "iso_date")]
    pub date_to: NaiveDate,
    /// Entities need strictly more demonstrations than this to be kept.
    pub entity_threshold: usize,
    pub test_entities: usize,
    pub cosine_threshold: f64,
    /// FT1 reference sentences need more word tokens than this.
    pub ft1_min_tokens: usize,
    pub max_generation_tokens: usize,
    /// `"stub"` or the base URL of an embedding service.
    pub embedder: String,
    pub embed_batch_size: usize,
    pub embed_timeout_secs: u64,
    pub stub_dim: usize,
    /// Sentiment lexicon (`word<TAB>valence`); the bundled one when unset.
    pub lexicon: Option<PathBuf>,
    /// Seeds the stub embedder's hashing.
    pub seed: u64,
    pub adapter: AdapterSettings,
    pub inputs: BTreeMap<String, HouseInputs>,
}

/// Settings handed through to model adapters; not interpreted here.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AdapterSettings {
    pub ft1_stop_loss: f64,
    pub ft2_stop_loss: f64,
    pub language_model: String,
    pub parser_model: String,
    pub coref_model: String,
    pub embedding_model: String,
}

impl Default for AdapterSettings {
    fn default() -> Self {
        AdapterSettings {
            ft1_stop_loss: 0.6,
            ft2_stop_loss: 0.1,
            language_model: "gpt2-medium".into(),
            parser_model: String::new(),
            coref_model: String::new(),
            embedding_model: String::new(),
        }
    }
}

/// Where a media house's inputs and adapter outputs come from. Each adapter
/// step is either replayed from a recorded file or run as a command; the
/// placeholders `{input}`, `{output}` and `{house_dir}` are substituted in
/// command arguments.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HouseInputs {
    pub articles: Option<PathBuf>,
    pub coref: Option<PathBuf>,
    pub coref_command: Option<Vec<String>>,
    /// A `.conllu` file or a directory of them.
    pub conllu: Option<PathBuf>,
    pub parse_command: Option<Vec<String>>,
    pub generated: Option<PathBuf>,
    pub generate_command: Option<Vec<String>>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            store: PathBuf::from("store"),
            houses: Vec::new(),
            date_from: NaiveDate::from_ymd_opt(2015, 1, 1).unwrap(),
            date_to: NaiveDate::from_ymd_opt(2021, 12, 31).unwrap(),
            entity_threshold: 500,
            test_entities: 10,
            cosine_threshold: 0.6,
            ft1_min_tokens: 10,
            max_generation_tokens: 30,
            embedder: "stub".into(),
            embed_batch_size: 64,
            embed_timeout_secs: 60,
            stub_dim: 512,
            lexicon: None,
            seed: 0,
            adapter: AdapterSettings::default(),
            inputs: BTreeMap::new(),
        }
    }
}

impl PipelineConfig {
    pub fn parse(src: &str) -> Result<Self> {
        let cfg: PipelineConfig = toml::from_str(src).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Load and validate a config file. Relative paths inside it are
    /// resolved against the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = PipelineConfig::parse(&src)?;
        if let Some(base) = path.parent() {
            cfg.rebase(base);
        }
        Ok(cfg)
    }

    fn rebase(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        fix(&mut self.store);
        if let Some(p) = self.lexicon.as_mut() {
            fix(p);
        }
        for inputs in self.inputs.values_mut() {
            for p in [&mut inputs.articles, &mut inputs.coref, &mut inputs.conllu, &mut inputs.generated]
                .into_iter()
                .flatten()
            {
                fix(p);
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        for h in self.houses.iter().chain(self.inputs.keys()) {
            validate_house(h).map_err(|_| Error::Config(format!("invalid media house name `{h}`")))?;
        }
        if let Some(h) = self.inputs.keys().find(|h| !self.houses.contains(h)) {
            return bad(format!("inputs given for `{h}`, which is not listed in `houses`"));
        }
        if self.date_from > self.date_to {
            return bad(format!("date_from {} is after date_to {}", self.date_from, self.date_to));
        }
        if self.test_entities == 0 {
            return bad("test_entities must be at least 1".into());
        }
        if !(self.cosine_threshold > 0.0 && self.cosine_threshold <= 1.0) {
            return bad(format!("cosine_threshold must be in (0, 1], got {}", self.cosine_threshold));
        }
        if self.max_generation_tokens == 0 {
            return bad("max_generation_tokens must be positive".into());
        }
        if self.embed_batch_size == 0 || self.stub_dim == 0 {
            return bad("embed_batch_size and stub_dim must be positive".into());
        }
        if !(self.adapter.ft1_stop_loss > 0.0 && self.adapter.ft2_stop_loss > 0.0) {
            return bad("adapter stop losses must be positive".into());
        }
        if self.embedder != "stub" && !self.embedder.starts_with("http://") && !self.embedder.starts_with("https://") {
            return bad(format!("embedder must be \"stub\" or an http(s) URL, got `{}`", self.embedder));
        }
        for (h, i) in &self.inputs {
            let both = |a: bool, b: bool, what: &str| {
                if a && b {
                    Err(Error::Config(format!("`{h}`: give either {what} or {what}_command, not both")))
                } else {
                    Ok(())
                }
            };
            both(i.coref.is_some(), i.coref_command.is_some(), "coref")?;
            both(i.conllu.is_some(), i.parse_command.is_some(), "conllu")?;
            both(i.generated.is_some(), i.generate_command.is_some(), "generated")?;
            for cmd in [&i.coref_command, &i.parse_command, &i.generate_command].into_iter().flatten() {
                if cmd.is_empty() {
                    return bad(format!("`{h}`: adapter command is empty"));
                }
            }
        }
        Ok(())
    }

    pub fn inputs_for(&self, house: &str) -> HouseInputs {
        self.inputs.get(house).cloned().unwrap_or_default()
    }

    /// The configuration as TOML, for embedding in reports.
    pub fn echo(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}
