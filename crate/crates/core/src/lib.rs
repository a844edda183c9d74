//! Static analysis of JUnit 4 assertion messages: extraction, taxonomy,
//! readability, part-of-speech patterns, anti-pattern lint and corpus
//! statistics.

pub mod antipattern;
pub mod ast;
pub mod category;
pub mod discover;
pub mod junit;
pub mod lexer;
pub mod parser;
pub mod pipeline;
pub mod pos;
pub mod readability;
pub mod report;
pub mod source;
pub mod splitter;

pub use pipeline::{Analyzer, AnalyzerConfig, FileAnalysis};
pub use report::CorpusReport;
