#![allow(dead_code)]

pub mod oracles;
pub mod parse_gen;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use charforge::{Pipeline, PipelineConfig, Step};

pub fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(rel)
}

/// The bundled end-to-end config with its store moved under `store`.
pub fn e2e_config(store: &Path) -> PipelineConfig {
    let mut cfg = PipelineConfig::load(&fixture("e2e/config.toml")).expect("fixture config loads");
    cfg.store = store.to_path_buf();
    cfg
}

pub fn run_e2e(store: &Path) -> Pipeline {
    let pipeline = Pipeline::new(e2e_config(store)).expect("pipeline");
    pipeline.run(Step::Ingest).expect("fixture run succeeds");
    pipeline
}

/// Every file under `root`, keyed by relative path.
pub fn snapshot(root: &Path) -> BTreeMap<String, Vec<u8>> {
    fn walk(base: &Path, dir: &Path, out: &mut BTreeMap<String, Vec<u8>>) {
        let mut entries: Vec<_> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
        entries.sort();
        for p in entries {
            if p.is_dir() {
                walk(base, &p, out);
            } else {
                let rel = p.strip_prefix(base).unwrap().to_string_lossy().replace('\\', "/");
                out.insert(rel, fs::read(&p).unwrap());
            }
        }
    }
    let mut out = BTreeMap::new();
    walk(root, root, &mut out);
    out
}

pub fn read_jsonl(path: &Path) -> Vec<serde_json::Value> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}
