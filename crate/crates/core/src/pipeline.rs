//! Stage runner over a [`Store`], driven by a [`PipelineConfig`].
//!
//! Each step reads its upstream stages from the store and writes its own
//! outputs atomically, so any step can be rerun on its own. Model-backed
//! steps (coreference, parsing, generation) either replay a recorded
//! adapter output or run the configured adapter command.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::fs::{self, File};
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::str::FromStr;
use std::time::Duration;

use rayon::prelude::*;

use crate::clause::{self, Clause, ClauseHistogram};
use crate::config::{HouseInputs, PipelineConfig};
use crate::conllu::parse_conllu;
use crate::demo::{self, Ft2TestRecord, SplitManifest, SynthStats};
use crate::error::{Error, Result};
use crate::eval::{
    build_prompts, compute_metrics, report, Embedder, EvalRecord, Evaluator, GeneratedRecord,
    GeneratedSentence, HashEmbedder, HttpEmbedder, IndexedReferences, Lexicon, MetricsReport, PromptJob,
    PromptTemplate, ReferenceSet,
};
use crate::resolve::{self, CorefClusterSet, ResolvedDocument};
use crate::store::{read_jsonl_file, write_atomic, IngestFilter, IngestReport, Stage, Store};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Ingest,
    Resolve,
    Clauses,
    Synth,
    Prompts,
    Generate,
    Evaluate,
    Report,
}

impl Step {
    pub const ALL: [Step; 8] = [
        Step::Ingest,
        Step::Resolve,
        Step::Clauses,
        Step::Synth,
        Step::Prompts,
        Step::Generate,
        Step::Evaluate,
        Step::Report,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Step::Ingest => "ingest",
            Step::Resolve => "resolve",
            Step::Clauses => "clauses",
            Step::Synth => "synth",
            Step::Prompts => "prompts",
            Step::Generate => "generate",
            Step::Evaluate => "evaluate",
            Step::Report => "report",
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Step {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Step::ALL
            .into_iter()
            .find(|st| st.as_str() == s)
            .ok_or_else(|| format!("unknown step `{s}`"))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ResolveSummary {
    pub documents: usize,
    pub failed: usize,
    pub without_coref: usize,
    pub entity_mentions: usize,
    pub aliases: usize,
    pub unresolved: usize,
}

impl fmt::Display for ResolveSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "documents={} failed={} without_coref={} entity_mentions={} aliases={} unresolved={}",
            self.documents, self.failed, self.without_coref, self.entity_mentions, self.aliases, self.unresolved
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct ClauseSummary {
    pub files: usize,
    pub sentences: usize,
    pub rejected_blocks: usize,
    pub subjectless: usize,
    pub histogram: ClauseHistogram,
}

impl fmt::Display for ClauseSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "files={} sentences={} rejected_blocks={} clauses={} subjectless={}",
            self.files,
            self.sentences,
            self.rejected_blocks,
            self.histogram.total(),
            self.subjectless
        )
    }
}

#[derive(Debug, Clone)]
pub struct SynthSummary {
    pub stats: SynthStats,
    pub split: SplitManifest,
    pub ft1_articles: usize,
    pub ft2_train: usize,
    pub ft2_test: usize,
}

impl fmt::Display for SynthSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "demonstrations={} duplicate_rate={:.4} kept_entities={} test_entities={} ft1_articles={} ft2_train={} ft2_test={}",
            self.stats.demonstrations,
            self.stats.duplicate_rate(),
            self.split.test_entities.len() + self.split.train_entities.len(),
            self.split.test_entities.len(),
            self.ft1_articles,
            self.ft2_train,
            self.ft2_test
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GenerateSummary {
    pub accepted: usize,
    pub rejected: usize,
    pub over_budget: usize,
    /// (entity, template) pairs with no accepted generation.
    pub missing: Vec<(String, PromptTemplate)>,
}

impl fmt::Display for GenerateSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "accepted={} rejected={} over_budget={} missing_pairs={}",
            self.accepted,
            self.rejected,
            self.over_budget,
            self.missing.len()
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EvaluateSummary {
    pub records: usize,
    pub unevaluated: usize,
    pub ft1_references: usize,
    pub ft2_references: usize,
}

impl fmt::Display for EvaluateSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "records={} unevaluated={} ft1_references={} ft2_references={}",
            self.records, self.unevaluated, self.ft1_references, self.ft2_references
        )
    }
}

pub struct Pipeline {
    pub config: PipelineConfig,
    pub store: Store,
}

impl Pipeline {
    pub fn new(config: PipelineConfig) -> Result<Self> {
        config.validate()?;
        let store = Store::open(&config.store)?;
        Ok(Pipeline { config, store })
    }

    fn inputs(&self, house: &str) -> HouseInputs {
        self.config.inputs_for(house)
    }

    /// Ingest the configured articles file of `house`.
    pub fn ingest(&self, house: &str) -> Result<IngestReport> {
        let path = self.inputs(house).articles.ok_or_else(|| {
            Error::Config(format!("no `articles` input configured for media house `{house}`"))
        })?;
        self.ingest_file(house, &path)
    }

    pub fn ingest_file(&self, house: &str, path: &Path) -> Result<IngestReport> {
        let filter = IngestFilter::new(house, self.config.date_from, self.config.date_to)?;
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let report = self.store.ingest(BufReader::new(file), &filter)?;
        let malformed = report.rejects.iter().filter(|r| !r.reason.is_filter()).count();
        log::info!(
            "event=ingest house={house} retained={} filtered={} malformed_or_duplicate={malformed} total={}",
            report.retained,
            report.rejects.len() - malformed,
            report.manifest.article_count
        );
        Ok(report)
    }

    fn run_adapter(&self, step: &str, argv: &[String], house: &str, input: &Path, output: &Path) -> Result<()> {
        let house_dir = self.store.house_dir(house)?;
        let subst = |a: &String| {
            a.replace("{input}", &input.to_string_lossy())
                .replace("{output}", &output.to_string_lossy())
                .replace("{house_dir}", &house_dir.to_string_lossy())
        };
        let adapter = &self.config.adapter;
        log::info!("event=adapter_start step={step} house={house} program={}", argv[0]);
        let status = Command::new(&argv[0])
            .args(argv[1..].iter().map(subst))
            .env("CHARFORGE_HOUSE", house)
            .env("CHARFORGE_FT1_STOP_LOSS", adapter.ft1_stop_loss.to_string())
            .env("CHARFORGE_FT2_STOP_LOSS", adapter.ft2_stop_loss.to_string())
            .env("CHARFORGE_MAX_TOKENS", self.config.max_generation_tokens.to_string())
            .env("CHARFORGE_LANGUAGE_MODEL", &adapter.language_model)
            .env("CHARFORGE_PARSER_MODEL", &adapter.parser_model)
            .env("CHARFORGE_COREF_MODEL", &adapter.coref_model)
            .env("CHARFORGE_EMBEDDING_MODEL", &adapter.embedding_model)
            .status()
            .map_err(|e| Error::Adapter { step: step.into(), reason: format!("cannot start `{}`: {e}", argv[0]) })?;
        if !status.success() {
            return Err(Error::Adapter { step: step.into(), reason: format!("exited with {status}") });
        }
        if !output.exists() {
            return Err(Error::Adapter { step: step.into(), reason: format!("did not write {}", output.display()) });
        }
        Ok(())
    }

    /// Source of an adapter step's output: the replay file, a fresh command
    /// run, or `None` to keep what the store already has.
    fn adapter_output(
        &self,
        step: &str,
        house: &str,
        replay: Option<PathBuf>,
        command: Option<Vec<String>>,
        input: &Path,
        scratch_name: &str,
    ) -> Result<Option<PathBuf>> {
        if let Some(path) = replay {
            return Ok(Some(path));
        }
        let Some(argv) = command else { return Ok(None) };
        let scratch = self.store.house_dir(house)?.join("adapter").join(scratch_name);
        if scratch.is_dir() {
            fs::remove_dir_all(&scratch).map_err(|e| Error::io(&scratch, e))?;
        } else if scratch.exists() {
            fs::remove_file(&scratch).map_err(|e| Error::io(&scratch, e))?;
        }
        let parent = scratch.parent().expect("scratch has a parent");
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        self.run_adapter(step, &argv, house, input, &scratch)?;
        Ok(Some(scratch))
    }

    fn import_coref(&self, house: &str) -> Result<()> {
        let inputs = self.inputs(house);
        let articles = self.store.require(Stage::Raw, house)?;
        let source = self.adapter_output("coref", house, inputs.coref, inputs.coref_command, &articles, "coref.jsonl")?;
        if let Some(src) = source {
            let sets: Vec<CorefClusterSet> = read_jsonl_file(&src)?;
            self.store.write_stage(Stage::Coref, house, &sets)?;
        }
        Ok(())
    }

    /// Coreference substitution and partial-name resolution for every
    /// article. A document whose cluster offsets are invalid is dropped.
    pub fn resolve(&self, house: &str) -> Result<ResolveSummary> {
        let articles = self.store.read_articles(house)?;
        self.import_coref(house)?;
        let sets: Vec<CorefClusterSet> = self.store.read_jsonl(Stage::Coref, house)?;
        let mut by_doc: HashMap<String, CorefClusterSet> = HashMap::new();
        for s in sets {
            by_doc.entry(s.doc_id.clone()).or_insert(s);
        }

        let results: Vec<_> = articles
            .par_iter()
            .map(|a| {
                let missing = !by_doc.contains_key(&a.id);
                let empty;
                let set = match by_doc.get(&a.id) {
                    Some(s) => s,
                    None => {
                        empty = CorefClusterSet { doc_id: a.id.clone(), clusters: vec![], person_mentions: vec![] };
                        &empty
                    }
                };
                (missing, resolve::resolve_document(a, set))
            })
            .collect();

        let mut summary = ResolveSummary::default();
        let mut docs = Vec::new();
        for (missing, r) in results {
            if missing {
                summary.without_coref += 1;
            }
            match r {
                Ok((doc, unresolved)) => {
                    summary.entity_mentions += doc.entity_mentions.len();
                    summary.aliases += doc.alias_map.len();
                    summary.unresolved += unresolved.len();
                    docs.push(doc);
                }
                Err(e) => {
                    log::warn!("event=document_failed house={house} error=\"{e}\"");
                    summary.failed += 1;
                }
            }
        }
        if summary.without_coref > 0 {
            log::warn!("event=missing_coref house={house} documents={}", summary.without_coref);
        }
        summary.documents = docs.len();
        self.store.write_stage(Stage::Resolved, house, &docs)?;
        log::info!("event=resolve house={house} {summary}");
        Ok(summary)
    }

    fn import_conllu(&self, house: &str) -> Result<()> {
        let inputs = self.inputs(house);
        let resolved = self.store.require(Stage::Resolved, house)?;
        let source = self.adapter_output("parse", house, inputs.conllu, inputs.parse_command, &resolved, "conllu")?;
        let Some(src) = source else { return Ok(()) };
        let files = conllu_files(&src)?;
        let dest = self.store.path(Stage::Conllu, house)?;
        fs::create_dir_all(&dest).map_err(|e| Error::io(&dest, e))?;
        let keep: HashSet<_> = files.iter().filter_map(|f| f.file_name().map(|n| n.to_owned())).collect();
        for entry in fs::read_dir(&dest).map_err(|e| Error::io(&dest, e))? {
            let entry = entry.map_err(|e| Error::io(&dest, e))?;
            if !keep.contains(&entry.file_name()) {
                fs::remove_file(entry.path()).map_err(|e| Error::io(entry.path(), e))?;
            }
        }
        for f in &files {
            let bytes = fs::read(f).map_err(|e| Error::io(f, e))?;
            write_atomic(&dest.join(f.file_name().expect("file has a name")), &bytes)?;
        }
        self.store.record_manifest(Stage::Conllu, house, files.len())?;
        Ok(())
    }

    /// Parse the stored CoNLL-U files and extract typed clauses.
    pub fn clauses(&self, house: &str) -> Result<ClauseSummary> {
        let docs: Vec<ResolvedDocument> = self.store.read_jsonl(Stage::Resolved, house)?;
        self.import_conllu(house)?;
        let dir = self.store.require(Stage::Conllu, house)?;
        let files = conllu_files(&dir)?;
        let sentence_counts: HashMap<&str, usize> = docs.iter().map(|d| (d.doc_id.as_str(), d.sentences.len())).collect();

        let parsed: Vec<_> = files
            .par_iter()
            .map(|path| -> Result<_> {
                let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
                let file = File::open(path).map_err(|e| Error::io(path, e))?;
                let outcome = parse_conllu(BufReader::new(file), &stem).map_err(|e| Error::io(path, e))?;
                let mut clauses = Vec::new();
                let mut subjectless = 0;
                for s in &outcome.sentences {
                    let ex = clause::extract(s);
                    subjectless += ex.subjectless.len();
                    clauses.extend(ex.clauses.into_iter().map(|c| c.clause));
                }
                Ok((path.clone(), outcome, clauses, subjectless))
            })
            .collect::<Result<_>>()?;

        let mut summary = ClauseSummary { files: files.len(), ..ClauseSummary::default() };
        let mut all: Vec<Clause> = Vec::new();
        let mut blocks_per_doc: BTreeMap<String, usize> = BTreeMap::new();
        for (path, outcome, clauses, subjectless) in parsed {
            for d in &outcome.diagnostics {
                log::warn!("event=conllu_rejected file={} {d}", path.display());
            }
            summary.rejected_blocks += outcome.diagnostics.len();
            summary.sentences += outcome.sentences.len();
            summary.subjectless += subjectless;
            for s in &outcome.sentences {
                let n = blocks_per_doc.entry(s.doc_id.clone()).or_default();
                *n = (*n).max(s.sentence_index + 1);
            }
            all.extend(clauses);
        }
        for (doc, blocks) in &blocks_per_doc {
            match sentence_counts.get(doc.as_str()) {
                None => log::warn!("event=conllu_unknown_doc house={house} doc={doc}"),
                Some(&n) if n != *blocks => {
                    log::warn!("event=sentence_misalignment house={house} doc={doc} resolved={n} conllu={blocks}")
                }
                _ => {}
            }
        }
        all.sort_by(|a, b| (&a.doc_id, a.sentence_index).cmp(&(&b.doc_id, b.sentence_index)));
        summary.histogram = ClauseHistogram::from_clauses(&all);
        self.store.write_stage(Stage::Clauses, house, &all)?;
        let hist_path = self.store.house_dir(house)?.join("clause_types.md");
        write_atomic(&hist_path, summary.histogram.render_markdown(house).as_bytes())?;
        log::info!("event=clauses house={house} {summary}");
        Ok(summary)
    }

    /// Demonstrations, the entity split and the fine-tuning corpora.
    pub fn synth(&self, house: &str) -> Result<SynthSummary> {
        let docs: Vec<ResolvedDocument> = self.store.read_jsonl(Stage::Resolved, house)?;
        let clauses: Vec<Clause> = self.store.read_jsonl(Stage::Clauses, house)?;
        let entities = demo::entity_names(&docs);
        let (demos, stats) = demo::synthesize_all(&clauses, &entities);
        self.store.write_stage(Stage::Demos, house, &demos)?;

        let counts = demo::entity_counts(&demos);
        let split = demo::filter_and_split(&counts, self.config.entity_threshold, self.config.test_entities)?;
        self.store.write_json(Stage::Split, house, &split)?;

        let corpora = demo::emit_corpora(&docs, &demos, &split)?;
        self.store.write_lines(Stage::Ft1, house, &corpora.ft1)?;
        self.store.record_manifest(Stage::Ft1, house, corpora.ft1.len())?;
        self.store.write_lines(Stage::Ft2Train, house, &corpora.ft2_train)?;
        self.store.record_manifest(Stage::Ft2Train, house, corpora.ft2_train.len())?;
        self.store.write_stage(Stage::Ft2Test, house, &corpora.ft2_test)?;

        let stats_path = self.store.house_dir(house)?.join("synth_stats.json");
        let mut buf = serde_json::to_vec_pretty(&stats).expect("stats serialize");
        buf.push(b'\n');
        write_atomic(&stats_path, &buf)?;

        let summary = SynthSummary {
            stats,
            split,
            ft1_articles: corpora.ft1.len(),
            ft2_train: corpora.ft2_train.len(),
            ft2_test: corpora.ft2_test.len(),
        };
        log::info!("event=synth house={house} {summary}");
        Ok(summary)
    }

    pub fn prompts(&self, house: &str) -> Result<Vec<PromptJob>> {
        let split: SplitManifest = self.store.read_json(Stage::Split, house)?;
        let jobs = build_prompts(&split, self.config.max_generation_tokens);
        self.store.write_stage(Stage::Prompts, house, &jobs)?;
        log::info!("event=prompts house={house} jobs={}", jobs.len());
        Ok(jobs)
    }

    /// Import generations (replayed or produced by the generation adapter)
    /// and keep those that honour the prompt contract and budget.
    pub fn generate(&self, house: &str) -> Result<GenerateSummary> {
        let jobs: Vec<PromptJob> = self.store.read_jsonl(Stage::Prompts, house)?;
        let inputs = self.inputs(house);
        let prompts_path = self.store.require(Stage::Prompts, house)?;
        let source = self
            .adapter_output("generate", house, inputs.generated, inputs.generate_command, &prompts_path, "generated.jsonl")?
            .ok_or_else(|| Error::Config(format!("no `generated` replay or `generate_command` configured for `{house}`")))?;

        let budgets: HashMap<(&str, PromptTemplate), usize> =
            jobs.iter().map(|j| ((j.entity.as_str(), j.template), j.budget)).collect();
        let mut used: HashMap<(String, PromptTemplate), usize> = HashMap::new();
        let mut summary = GenerateSummary::default();
        let mut accepted = Vec::new();
        let file = File::open(&source).map_err(|e| Error::io(&source, e))?;
        for (n, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| Error::io(&source, e))?;
            if line.trim().is_empty() {
                continue;
            }
            let rec: GeneratedRecord = match serde_json::from_str(&line) {
                Ok(r) => r,
                Err(e) => {
                    log::warn!("event=reject_generation line={} reason=\"{e}\"", n + 1);
                    summary.rejected += 1;
                    continue;
                }
            };
            let Some(&budget) = budgets.get(&(rec.entity.as_str(), rec.template)) else {
                log::warn!("event=reject_generation line={} reason=\"no prompt job for {} / {}\"", n + 1, rec.entity, rec.template);
                summary.rejected += 1;
                continue;
            };
            let g = match GeneratedSentence::from_record(rec, self.config.max_generation_tokens) {
                Ok(g) => g,
                Err(why) => {
                    log::warn!("event=reject_generation line={} reason=\"{why}\"", n + 1);
                    summary.rejected += 1;
                    continue;
                }
            };
            let count = used.entry((g.entity.clone(), g.template)).or_default();
            if *count >= budget {
                summary.over_budget += 1;
                continue;
            }
            *count += 1;
            accepted.push(g);
        }
        summary.accepted = accepted.len();
        summary.missing = jobs
            .iter()
            .filter(|j| !used.contains_key(&(j.entity.clone(), j.template)))
            .map(|j| (j.entity.clone(), j.template))
            .collect();
        for (e, t) in &summary.missing {
            log::warn!("event=no_generations house={house} entity=\"{e}\" template=\"{t}\"");
        }
        self.store.write_stage(Stage::Generated, house, &accepted)?;
        log::info!("event=generate house={house} {summary}");
        Ok(summary)
    }

    pub fn embedder(&self) -> Box<dyn Embedder> {
        if self.config.embedder == "stub" {
            Box::new(HashEmbedder::new(self.config.stub_dim, self.config.seed))
        } else {
            Box::new(HttpEmbedder::new(
                &self.config.embedder,
                self.config.embed_batch_size,
                Duration::from_secs(self.config.embed_timeout_secs),
            ))
        }
    }

    pub fn lexicon(&self) -> Result<Lexicon> {
        match &self.config.lexicon {
            Some(p) => Lexicon::load(p),
            None => Ok(Lexicon::builtin()),
        }
    }

    /// Match every generation against FT1 and FT2 reference sentences.
    pub fn evaluate(&self, house: &str) -> Result<EvaluateSummary> {
        let generated: Vec<GeneratedSentence> = self.store.read_jsonl(Stage::Generated, house)?;
        let test: Vec<Ft2TestRecord> = self.store.read_jsonl(Stage::Ft2Test, house)?;
        let docs: Vec<ResolvedDocument> = self.store.read_jsonl(Stage::Resolved, house)?;
        let embedder = self.embedder();
        let lexicon = self.lexicon()?;
        let evaluator = Evaluator { embedder: embedder.as_ref(), lexicon: &lexicon, threshold: self.config.cosine_threshold };

        let ft1 = IndexedReferences::build(ReferenceSet::ft1(&docs, self.config.ft1_min_tokens), embedder.as_ref())?;
        let ft2 = IndexedReferences::build(ReferenceSet::ft2(&test), embedder.as_ref())?;
        let mut records: Vec<EvalRecord> = evaluator.evaluate(house, &generated, &ft1);
        records.extend(evaluator.evaluate(house, &generated, &ft2));
        for r in records.iter().filter(|r| r.unevaluated.is_some()) {
            log::warn!(
                "event=unevaluated house={house} corpus={} entity=\"{}\" reason=\"{}\"",
                r.reference_corpus,
                r.generated.entity,
                r.unevaluated.as_deref().unwrap_or_default()
            );
        }
        let summary = EvaluateSummary {
            records: records.len(),
            unevaluated: records.iter().filter(|r| r.unevaluated.is_some()).count(),
            ft1_references: ft1.set.len(),
            ft2_references: ft2.set.len(),
        };
        self.store.write_stage(Stage::Evaluated, house, &records)?;
        log::info!("event=evaluate house={house} {summary}");
        Ok(summary)
    }

    /// Metrics over every configured house that has evaluation records,
    /// written to `report.csv` and `report.md` under the store root.
    pub fn report(&self) -> Result<MetricsReport> {
        let mut houses = self.config.houses.clone();
        if houses.is_empty() {
            houses = self.store.houses()?;
        }
        let mut records = Vec::new();
        let mut found = false;
        for h in &houses {
            if self.store.exists(Stage::Evaluated, h) {
                found = true;
                records.extend(self.store.read_jsonl::<EvalRecord>(Stage::Evaluated, h)?);
            }
        }
        if !found {
            return Err(Error::StageNotFound {
                stage: Stage::Evaluated.to_string(),
                house: houses.join(","),
                producer: Stage::Evaluated.producer().to_string(),
            });
        }
        let metrics = compute_metrics(&records, self.config.cosine_threshold);
        let root = self.store.root();
        write_atomic(&root.join("report.csv"), report::render_csv(&metrics).as_bytes())?;
        write_atomic(&root.join("report.md"), report::render_markdown(&metrics, &self.config.echo()).as_bytes())?;
        log::info!("event=report rows={} path={}", metrics.rows.len(), root.join("report.csv").display());
        Ok(metrics)
    }

    /// Run every step from `from` onward for each configured house, then
    /// the report. Ingest is skipped for a house with no configured
    /// articles file when its raw stage already exists.
    pub fn run(&self, from: Step) -> Result<MetricsReport> {
        if self.config.houses.is_empty() {
            return Err(Error::Config("no media houses configured".into()));
        }
        for house in &self.config.houses {
            for step in Step::ALL.into_iter().filter(|&s| s >= from && s != Step::Report) {
                self.run_house_step(step, house)?;
            }
        }
        self.report()
    }

    fn run_house_step(&self, step: Step, house: &str) -> Result<()> {
        match step {
            Step::Ingest => {
                if self.inputs(house).articles.is_none() && self.store.exists(Stage::Raw, house) {
                    log::info!("event=ingest_skipped house={house} reason=no_articles_input");
                } else {
                    self.ingest(house)?;
                }
            }
            Step::Resolve => {
                self.resolve(house)?;
            }
            Step::Clauses => {
                self.clauses(house)?;
            }
            Step::Synth => {
                self.synth(house)?;
            }
            Step::Prompts => {
                self.prompts(house)?;
            }
            Step::Generate => {
                self.generate(house)?;
            }
            Step::Evaluate => {
                self.evaluate(house)?;
            }
            Step::Report => {
                self.report()?;
            }
        }
        Ok(())
    }
}

/// `.conllu` files at `path` (a file or a directory), sorted by name.
fn conllu_files(path: &Path) -> Result<Vec<PathBuf>> {
    if path.is_file() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut files = Vec::new();
    for entry in fs::read_dir(path).map_err(|e| Error::io(path, e))? {
        let p = entry.map_err(|e| Error::io(path, e))?.path();
        if p.extension().is_some_and(|x| x == "conllu") {
            files.push(p);
        }
    }
    files.sort();
    Ok(files)
}
