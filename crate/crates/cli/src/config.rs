use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use assertlint_core::antipattern::{RuleId, Severity};
use assertlint_core::discover::ProjectMode;
use assertlint_core::junit::DEFAULT_TOLERANCE_PATTERN;
use assertlint_core::report::Format;
use serde::{Deserialize, Serialize};

use crate::cli::CommonArgs;

/// Settings as read from a config file; every field is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    roots: Option<Vec<PathBuf>>,
    include: Option<Vec<String>>,
    exclude: Option<Vec<String>>,
    projects: Option<ProjectMode>,
    format: Option<Format>,
    out: Option<PathBuf>,
    jobs: Option<usize>,
    #[serde(default)]
    rules: RulesSection,
    #[serde(default)]
    junit: JunitSection,
    #[serde(default)]
    lint: LintSection,
    #[serde(default)]
    pos: PosSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RulesSection {
    disable: Option<Vec<String>>,
    enable: Option<Vec<String>>,
    min_words: Option<usize>,
    tolerance_name: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct JunitSection {
    assertion_table: Option<PathBuf>,
    require_junit_import: Option<bool>,
    include_helpers: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct LintSection {
    require_messages: Option<bool>,
    min_severity: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PosSection {
    lexicon: Option<PathBuf>,
    top_k: Option<usize>,
}

/// The merged configuration a command runs with.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Config {
    pub roots: Vec<PathBuf>,
    pub include: Vec<String>,
    pub exclude: Vec<String>,
    pub projects: ProjectMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
    pub rules: EffectiveRules,
    pub junit: EffectiveJunit,
    pub lint: EffectiveLint,
    pub pos: EffectivePos,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EffectiveRules {
    pub disable: Vec<String>,
    pub min_words: usize,
    pub tolerance_name: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EffectiveJunit {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assertion_table: Option<PathBuf>,
    pub require_junit_import: bool,
    pub include_helpers: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EffectiveLint {
    pub require_messages: bool,
    pub min_severity: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EffectivePos {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lexicon: Option<PathBuf>,
    pub top_k: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            roots: vec![PathBuf::from(".")],
            include: vec!["**/*.java".into()],
            exclude: Vec::new(),
            projects: ProjectMode::Root,
            format: None,
            out: None,
            jobs: None,
            rules: EffectiveRules {
                disable: Vec::new(),
                min_words: 2,
                tolerance_name: DEFAULT_TOLERANCE_PATTERN.into(),
            },
            junit: EffectiveJunit {
                assertion_table: None,
                require_junit_import: false,
                include_helpers: false,
            },
            lint: EffectiveLint {
                require_messages: false,
                min_severity: "info".into(),
            },
            pos: EffectivePos { lexicon: None, top_k: 2 },
        }
    }
}

impl Config {
    pub fn disabled_rules(&self) -> Result<Vec<RuleId>> {
        self.rules
            .disable
            .iter()
            .map(|r| r.parse::<RuleId>().map_err(Into::into))
            .collect()
    }

    pub fn min_severity(&self) -> Result<Severity> {
        self.lint.min_severity.parse().map_err(anyhow::Error::msg)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).context("cannot render configuration")
    }
}

fn resolve(base: &Path, p: PathBuf) -> PathBuf {
    if p.is_relative() {
        base.join(p)
    } else {
        p
    }
}

fn canonical_rule(name: &str) -> Result<RuleId> {
    Ok(name.parse::<RuleId>()?)
}

fn apply_toggles(disabled: &mut Vec<String>, require_messages: &mut bool, disable: &[String], enable: &[String]) -> Result<()> {
    for name in disable {
        let rule = canonical_rule(name)?;
        if !disabled.iter().any(|d| d == rule.as_str()) {
            disabled.push(rule.as_str().to_string());
        }
    }
    for name in enable {
        let rule = canonical_rule(name)?;
        disabled.retain(|d| d != rule.as_str());
        if rule == RuleId::NoMessage {
            *require_messages = true;
        }
    }
    disabled.sort();
    Ok(())
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig> {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("invalid config {}", path.display()))
    }
}

/// Defaults, then the config file, then command-line flags.
pub fn build(args: &CommonArgs) -> Result<Config> {
    let mut c = Config::default();
    if let Some(path) = &args.config {
        let file = FileConfig::load(path)?;
        let base = path.parent().unwrap_or(Path::new("")).to_path_buf();
        if let Some(v) = file.roots {
            c.roots = v.into_iter().map(|p| resolve(&base, p)).collect();
        }
        if let Some(v) = file.include {
            c.include = v;
        }
        if let Some(v) = file.exclude {
            c.exclude = v;
        }
        if let Some(v) = file.projects {
            c.projects = v;
        }
        c.format = file.format.or(c.format);
        c.out = file.out.map(|p| resolve(&base, p)).or(c.out);
        c.jobs = file.jobs.or(c.jobs);
        if let Some(v) = file.rules.min_words {
            c.rules.min_words = v;
        }
        if let Some(v) = file.rules.tolerance_name {
            c.rules.tolerance_name = v;
        }
        apply_toggles(
            &mut c.rules.disable,
            &mut c.lint.require_messages,
            file.rules.disable.as_deref().unwrap_or_default(),
            file.rules.enable.as_deref().unwrap_or_default(),
        )?;
        c.junit.assertion_table = file.junit.assertion_table.map(|p| resolve(&base, p));
        if let Some(v) = file.junit.require_junit_import {
            c.junit.require_junit_import = v;
        }
        if let Some(v) = file.junit.include_helpers {
            c.junit.include_helpers = v;
        }
        if let Some(v) = file.lint.require_messages {
            c.lint.require_messages = c.lint.require_messages || v;
        }
        if let Some(v) = file.lint.min_severity {
            c.lint.min_severity = v;
        }
        c.pos.lexicon = file.pos.lexicon.map(|p| resolve(&base, p));
        if let Some(v) = file.pos.top_k {
            c.pos.top_k = v;
        }
    }

    if !args.paths.is_empty() {
        c.roots = args.paths.clone();
    }
    if !args.include.is_empty() {
        c.include = args.include.clone();
    }
    if !args.exclude.is_empty() {
        c.exclude.extend(args.exclude.iter().cloned());
    }
    if let Some(v) = args.projects {
        c.projects = v;
    }
    c.format = args.format.or(c.format);
    c.out = args.out.clone().or(c.out);
    c.jobs = args.jobs.or(c.jobs);
    if let Some(v) = args.min_words {
        c.rules.min_words = v;
    }
    if let Some(v) = &args.tolerance_name {
        c.rules.tolerance_name = v.clone();
    }
    apply_toggles(&mut c.rules.disable, &mut c.lint.require_messages, &args.disable, &args.enable)?;
    if args.require_messages {
        c.lint.require_messages = true;
    }
    if args.require_junit_import {
        c.junit.require_junit_import = true;
    }
    if args.include_helpers {
        c.junit.include_helpers = true;
    }
    if let Some(v) = &args.min_severity {
        c.lint.min_severity = v.clone();
    }
    if let Some(v) = &args.assertion_table {
        c.junit.assertion_table = Some(v.clone());
    }
    if let Some(v) = &args.lexicon {
        c.pos.lexicon = Some(v.clone());
    }
    if let Some(v) = args.top_k {
        c.pos.top_k = v;
    }

    if c.jobs == Some(0) {
        bail!("--jobs must be at least 1");
    }
    c.min_severity()?;
    Ok(c)
}
