//! On-disk corpus store.
//!
//! Every artifact lives under `<root>/<media_house>/` as one line-delimited
//! file per stage. Writes go through a lock file and a rename so a stage file
//! is either the old version or the complete new one. Each record stage also
//! gets a manifest under `<root>/<media_house>/manifests/<stage>.json`.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use chrono::NaiveDate;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Article {
    pub id: String,
    pub media_house: String,
    pub url: String,
    #[serde(with = "iso_date")]
    pub published_at: NaiveDate,
    pub text: String,
}

pub mod iso_date {
    use chrono::NaiveDate;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &NaiveDate, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&d.format("%Y-%m-%d").to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<NaiveDate, D::Error> {
        let raw = String::deserialize(d)?;
        super::parse_date(&raw).map_err(serde::de::Error::custom)
    }
}

/// Parse a publication date. Accepts `YYYY-MM-DD` or an RFC 3339 timestamp
/// (the date part is kept). Partial dates such as `2016-03` are rejected.
pub fn parse_date(raw: &str) -> std::result::Result<NaiveDate, String> {
    let raw = raw.trim();
    let date_part = match raw.find('T') {
        Some(10) => &raw[..10],
        _ => raw,
    };
    if date_part.len() != 10 {
        return Err(format!("incomplete or malformed date `{raw}`"));
    }
    NaiveDate::parse_from_str(date_part, "%Y-%m-%d").map_err(|e| format!("bad date `{raw}`: {e}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Raw,
    Coref,
    Resolved,
    Conllu,
    Clauses,
    Demos,
    Ft1,
    Ft2Train,
    Ft2Test,
    Split,
    Prompts,
    Generated,
    Evaluated,
}

impl Stage {
    pub const ALL: [Stage; 13] = [
        Stage::Raw,
        Stage::Coref,
        Stage::Resolved,
        Stage::Conllu,
        Stage::Clauses,
        Stage::Demos,
        Stage::Ft1,
        Stage::Ft2Train,
        Stage::Ft2Test,
        Stage::Split,
        Stage::Prompts,
        Stage::Generated,
        Stage::Evaluated,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Raw => "raw",
            Stage::Coref => "coref",
            Stage::Resolved => "resolved",
            Stage::Conllu => "conllu",
            Stage::Clauses => "clauses",
            Stage::Demos => "demos",
            Stage::Ft1 => "ft1",
            Stage::Ft2Train => "ft2-train",
            Stage::Ft2Test => "ft2-test",
            Stage::Split => "split",
            Stage::Prompts => "prompts",
            Stage::Generated => "generated",
            Stage::Evaluated => "evaluated",
        }
    }

    /// File (or directory, for CoNLL-U) name inside the house directory.
    pub fn file_name(self) -> &'static str {
        match self {
            Stage::Raw => "articles.jsonl",
            Stage::Coref => "coref.jsonl",
            Stage::Resolved => "resolved.jsonl",
            Stage::Conllu => "conllu",
            Stage::Clauses => "clauses.jsonl",
            Stage::Demos => "demos.jsonl",
            Stage::Ft1 => "ft1.txt",
            Stage::Ft2Train => "ft2_train.txt",
            Stage::Ft2Test => "ft2_test.jsonl",
            Stage::Split => "split_manifest.json",
            Stage::Prompts => "prompts.jsonl",
            Stage::Generated => "generated.jsonl",
            Stage::Evaluated => "eval_records.jsonl",
        }
    }

    /// The pipeline step that produces this stage.
    pub fn producer(self) -> &'static str {
        match self {
            Stage::Raw => "ingest",
            Stage::Coref => "coref adapter",
            Stage::Resolved => "resolve",
            Stage::Conllu => "parse adapter",
            Stage::Clauses => "clauses",
            Stage::Demos | Stage::Ft1 | Stage::Ft2Train | Stage::Ft2Test | Stage::Split => "synth",
            Stage::Prompts => "prompts",
            Stage::Generated => "generate",
            Stage::Evaluated => "evaluate",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Stage {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Stage::ALL
            .into_iter()
            .find(|st| st.as_str() == s)
            .ok_or_else(|| format!("unknown stage `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub media_house: String,
    #[serde(with = "iso_date")]
    pub date_from: NaiveDate,
    #[serde(with = "iso_date")]
    pub date_to: NaiveDate,
    pub article_count: usize,
    pub stage: Stage,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IngestFilter {
    pub media_house: String,
    pub date_from: NaiveDate,
    pub date_to: NaiveDate,
}

impl IngestFilter {
    pub fn new(media_house: &str, date_from: NaiveDate, date_to: NaiveDate) -> Result<Self> {
        validate_house(media_house)?;
        if date_from > date_to {
            return Err(Error::Config(format!(
                "date range is empty: {date_from} is after {date_to}"
            )));
        }
        Ok(IngestFilter {
            media_house: media_house.to_string(),
            date_from,
            date_to,
        })
    }

    fn admits(&self, article: &Article) -> Option<RejectReason> {
        if article.media_house != self.media_house {
            return Some(RejectReason::OtherHouse(article.media_house.clone()));
        }
        if article.published_at < self.date_from || article.published_at > self.date_to {
            return Some(RejectReason::OutsideDateRange(article.published_at));
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectReason {
    Malformed(String),
    Duplicate,
    OutsideDateRange(NaiveDate),
    OtherHouse(String),
}

impl RejectReason {
    /// Filtered records are expected; malformed and duplicate ones are not.
    pub fn is_filter(&self) -> bool {
        matches!(self, RejectReason::OutsideDateRange(_) | RejectReason::OtherHouse(_))
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::Malformed(why) => write!(f, "malformed: {why}"),
            RejectReason::Duplicate => f.write_str("duplicate id"),
            RejectReason::OutsideDateRange(d) => write!(f, "published {d} outside date range"),
            RejectReason::OtherHouse(h) => write!(f, "media house `{h}` not selected"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reject {
    pub line: usize,
    pub id: Option<String>,
    pub reason: RejectReason,
}

#[derive(Debug, Clone)]
pub struct IngestReport {
    pub manifest: CorpusManifest,
    /// Records newly added by this ingest.
    pub retained: usize,
    pub rejects: Vec<Reject>,
}

#[derive(Deserialize)]
struct RawArticle {
    id: String,
    media_house: String,
    #[serde(default)]
    url: String,
    published_at: String,
    text: String,
}

fn parse_article(line: &str) -> std::result::Result<Article, (Option<String>, String)> {
    let raw: RawArticle = serde_json::from_str(line).map_err(|e| (None, e.to_string()))?;
    let id = raw.id.trim().to_string();
    if id.is_empty() {
        return Err((None, "empty id".into()));
    }
    if raw.text.trim().is_empty() {
        return Err((Some(id), "empty text".into()));
    }
    let published_at = parse_date(&raw.published_at).map_err(|e| (Some(id.clone()), e))?;
    Ok(Article {
        id,
        media_house: raw.media_house,
        url: raw.url,
        published_at,
        text: raw.text,
    })
}

pub fn validate_house(name: &str) -> Result<()> {
    let ok = !name.is_empty()
        && name != "."
        && name != ".."
        && !name.contains(['/', '\\', '\0'])
        && !name.starts_with('.');
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidHouse(name.to_string()))
    }
}

/// Handle to a store root directory.
#[derive(Debug, Clone)]
pub struct Store {
    root: PathBuf,
}

impl Store {
    pub fn open(root: impl Into<PathBuf>) -> Result<Self> {
        let root = root.into();
        fs::create_dir_all(&root).map_err(|e| Error::io(&root, e))?;
        Ok(Store { root })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn house_dir(&self, house: &str) -> Result<PathBuf> {
        validate_house(house)?;
        Ok(self.root.join(house))
    }

    pub fn path(&self, stage: Stage, house: &str) -> Result<PathBuf> {
        Ok(self.house_dir(house)?.join(stage.file_name()))
    }

    pub fn exists(&self, stage: Stage, house: &str) -> bool {
        self.path(stage, house).map(|p| p.exists()).unwrap_or(false)
    }

    /// Path of an existing stage, or a not-found error naming its producer.
    pub fn require(&self, stage: Stage, house: &str) -> Result<PathBuf> {
        let path = self.path(stage, house)?;
        if path.exists() {
            Ok(path)
        } else {
            Err(Error::StageNotFound {
                stage: stage.to_string(),
                house: house.to_string(),
                producer: stage.producer().to_string(),
            })
        }
    }

    /// Media houses that have a directory under the root, sorted.
    pub fn houses(&self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        let entries = fs::read_dir(&self.root).map_err(|e| Error::io(&self.root, e))?;
        for entry in entries {
            let entry = entry.map_err(|e| Error::io(&self.root, e))?;
            if entry.path().is_dir() {
                if let Some(name) = entry.file_name().to_str() {
                    if validate_house(name).is_ok() {
                        out.push(name.to_string());
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Ingest line-delimited articles for one media house. Records outside
    /// the filter are skipped; malformed records and duplicate ids are
    /// rejected individually. Earlier records win over later duplicates,
    /// including records already in the store.
    pub fn ingest(&self, input: impl BufRead, filter: &IngestFilter) -> Result<IngestReport> {
        let house = &filter.media_house;
        let mut existing: BTreeMap<String, Article> = if self.exists(Stage::Raw, house) {
            self.read_articles(house)?
                .into_iter()
                .map(|a| (a.id.clone(), a))
                .collect()
        } else {
            BTreeMap::new()
        };

        let mut rejects = Vec::new();
        let mut retained = 0;
        for (n, line) in input.lines().enumerate() {
            let line_no = n + 1;
            let line = line.map_err(|e| Error::io("<ingest input>", e))?;
            if line.trim().is_empty() {
                continue;
            }
            let article = match parse_article(&line) {
                Ok(a) => a,
                Err((id, why)) => {
                    log::warn!("event=reject_article line={line_no} reason=\"{why}\"");
                    rejects.push(Reject {
                        line: line_no,
                        id,
                        reason: RejectReason::Malformed(why),
                    });
                    continue;
                }
            };
            if let Some(reason) = filter.admits(&article) {
                rejects.push(Reject {
                    line: line_no,
                    id: Some(article.id),
                    reason,
                });
                continue;
            }
            if existing.contains_key(&article.id) {
                log::warn!("event=duplicate_article line={line_no} id={}", article.id);
                rejects.push(Reject {
                    line: line_no,
                    id: Some(article.id),
                    reason: RejectReason::Duplicate,
                });
                continue;
            }
            existing.insert(article.id.clone(), article);
            retained += 1;
        }

        let articles: Vec<Article> = existing.into_values().collect();
        let manifest = CorpusManifest {
            media_house: house.clone(),
            date_from: filter.date_from,
            date_to: filter.date_to,
            article_count: articles.len(),
            stage: Stage::Raw,
        };
        self.write_jsonl(Stage::Raw, house, &articles)?;
        self.write_manifest(&manifest)?;
        Ok(IngestReport {
            manifest,
            retained,
            rejects,
        })
    }

    /// Articles of a media house, sorted by id.
    pub fn read_articles(&self, house: &str) -> Result<Vec<Article>> {
        let mut articles: Vec<Article> = self.read_jsonl(Stage::Raw, house)?;
        articles.sort_by(|a, b| a.id.cmp(&b.id));
        Ok(articles)
    }

    pub fn read_jsonl<T: DeserializeOwned>(&self, stage: Stage, house: &str) -> Result<Vec<T>> {
        let path = self.require(stage, house)?;
        read_jsonl_file(&path)
    }

    pub fn read_json<T: DeserializeOwned>(&self, stage: Stage, house: &str) -> Result<T> {
        let path = self.require(stage, house)?;
        let bytes = fs::read(&path).map_err(|e| Error::io(&path, e))?;
        serde_json::from_slice(&bytes).map_err(|source| Error::Json {
            path,
            line: 1,
            source,
        })
    }

    pub fn read_lines(&self, stage: Stage, house: &str) -> Result<Vec<String>> {
        let path = self.require(stage, house)?;
        let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        Ok(text.lines().map(str::to_string).collect())
    }

    /// Raw bytes of a stage file; reading twice yields identical bytes.
    pub fn read_bytes(&self, stage: Stage, house: &str) -> Result<Vec<u8>> {
        let path = self.require(stage, house)?;
        fs::read(&path).map_err(|e| Error::io(&path, e))
    }

    /// Write records in the given order, one JSON object per line.
    pub fn write_jsonl<T: Serialize>(&self, stage: Stage, house: &str, records: &[T]) -> Result<()> {
        let path = self.path(stage, house)?;
        let mut buf = Vec::new();
        for r in records {
            serde_json::to_writer(&mut buf, r).map_err(|source| Error::Json {
                path: path.clone(),
                line: 0,
                source,
            })?;
            buf.push(b'\n');
        }
        write_atomic(&path, &buf)
    }

    pub fn write_json<T: Serialize>(&self, stage: Stage, house: &str, value: &T) -> Result<()> {
        let path = self.path(stage, house)?;
        let mut buf = serde_json::to_vec_pretty(value).map_err(|source| Error::Json {
            path: path.clone(),
            line: 0,
            source,
        })?;
        buf.push(b'\n');
        write_atomic(&path, &buf)
    }

    pub fn write_lines(&self, stage: Stage, house: &str, lines: &[String]) -> Result<()> {
        let path = self.path(stage, house)?;
        let mut buf = String::new();
        for l in lines {
            buf.push_str(l);
            buf.push('\n');
        }
        write_atomic(&path, buf.as_bytes())
    }

    /// Write a stage's records together with its manifest. The date range is
    /// carried over from the raw-stage manifest when one exists.
    pub fn write_stage<T: Serialize>(&self, stage: Stage, house: &str, records: &[T]) -> Result<CorpusManifest> {
        self.write_jsonl(stage, house, records)?;
        self.record_manifest(stage, house, records.len())
    }

    pub fn record_manifest(&self, stage: Stage, house: &str, count: usize) -> Result<CorpusManifest> {
        let (date_from, date_to) = match self.manifest(Stage::Raw, house) {
            Ok(m) => (m.date_from, m.date_to),
            Err(_) => (NaiveDate::MIN, NaiveDate::MAX),
        };
        let manifest = CorpusManifest {
            media_house: house.to_string(),
            date_from,
            date_to,
            article_count: count,
            stage,
        };
        self.write_manifest(&manifest)?;
        Ok(manifest)
    }

    fn manifest_path(&self, stage: Stage, house: &str) -> Result<PathBuf> {
        Ok(self
            .house_dir(house)?
            .join("manifests")
            .join(format!("{}.json", stage.as_str())))
    }

    pub fn write_manifest(&self, manifest: &CorpusManifest) -> Result<()> {
        let path = self.manifest_path(manifest.stage, &manifest.media_house)?;
        let mut buf = serde_json::to_vec_pretty(manifest).expect("manifest serializes");
        buf.push(b'\n');
        write_atomic(&path, &buf)
    }

    pub fn manifest(&self, stage: Stage, house: &str) -> Result<CorpusManifest> {
        let path = self.manifest_path(stage, house)?;
        if !path.exists() {
            return Err(Error::StageNotFound {
                stage: format!("{stage} manifest"),
                house: house.to_string(),
                producer: stage.producer().to_string(),
            });
        }
        let bytes = fs::read(&path).map_err(|e| Error::io(&path, e))?;
        serde_json::from_slice(&bytes).map_err(|source| Error::Json {
            path,
            line: 1,
            source,
        })
    }
}

pub fn read_jsonl_file<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec = serde_json::from_str(&line).map_err(|source| Error::Json {
            path: path.to_path_buf(),
            line: n + 1,
            source,
        })?;
        out.push(rec);
    }
    Ok(out)
}

/// Held while a stage file is being written; removes the lock on drop.
struct WriteLock {
    path: PathBuf,
}

impl WriteLock {
    fn acquire(target: &Path) -> Result<Self> {
        let mut name = target.as_os_str().to_owned();
        name.push(".lock");
        let path = PathBuf::from(name);
        match OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(_) => Ok(WriteLock { path }),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                Err(Error::Locked(target.to_path_buf()))
            }
            Err(e) => Err(Error::io(&path, e)),
        }
    }
}

impl Drop for WriteLock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}

pub(crate) fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    let _lock = WriteLock::acquire(path)?;
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    {
        let file = File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
        let mut w = BufWriter::new(file);
        w.write_all(bytes).map_err(|e| Error::io(&tmp, e))?;
        w.flush().map_err(|e| Error::io(&tmp, e))?;
    }
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}
