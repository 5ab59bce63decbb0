//! Corpus construction and evaluation toolkit for generative
//! characterization of person entities in news text.
//!
//! The pipeline stages, in order:
//!
//! 1. [`store`]: ingest articles per media house, filtered by date range.
//! 2. [`resolve`]: replace coreferent mentions with their representative
//!    and expand partial person names to full names.
//! 3. [`conllu`] and [`clause`]: read dependency parses and extract typed
//!    clauses (SV, SVA, SVC, SVO, SVOA, SVOC, SVOO).
//! 4. [`demo`]: turn clauses about entities into
//!    `<Entity> is described as <gerund> ...` demonstrations, filter
//!    entities by frequency and split them into train and test sets.
//! 5. [`eval`]: build prompts, match generations against reference
//!    sentences and compute precision, recall and F1.
//!
//! [`pipeline`] runs the stages against a [`store::Store`]; [`cli`] exposes
//! them as subcommands.

pub mod clause;
pub mod cli;
pub mod config;
pub mod conllu;
pub mod demo;
pub mod error;
pub mod eval;
pub mod gerund;
pub mod pipeline;
pub mod resolve;
pub mod store;
pub mod text;

pub use config::PipelineConfig;
pub use error::{Error, Result};
pub use pipeline::{Pipeline, Step};
pub use store::Store;
