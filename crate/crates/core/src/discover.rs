//! Finding Java sources under the scan roots.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use globset::{Glob, GlobSet, GlobSetBuilder};
use serde::{Deserialize, Serialize};
use thiserror::Error;
use walkdir::WalkDir;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProjectMode {
    /// Every root is one project.
    #[default]
    Root,
    /// Every top-level directory under a root is its own project.
    Subdirectory,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscoverOptions {
    pub include: Vec<String>,
    pub exclude: Vec<String>,
    pub project_mode: ProjectMode,
}

impl Default for DiscoverOptions {
    fn default() -> Self {
        DiscoverOptions {
            include: vec!["**/*.java".into()],
            exclude: Vec::new(),
            project_mode: ProjectMode::Root,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SourceInput {
    pub project: String,
    pub path: PathBuf,
}

#[derive(Debug, Error)]
pub enum DiscoverError {
    #[error("{}: no such file or directory", .0.display())]
    Missing(PathBuf),
    #[error("cannot read {}: {source}", path.display())]
    Walk { path: PathBuf, source: walkdir::Error },
    #[error("bad glob `{pattern}`: {source}")]
    Glob { pattern: String, source: globset::Error },
}

fn glob_set(patterns: &[String]) -> Result<GlobSet, DiscoverError> {
    let mut b = GlobSetBuilder::new();
    for p in patterns {
        let glob = Glob::new(p).map_err(|source| DiscoverError::Glob { pattern: p.clone(), source })?;
        b.add(glob);
    }
    b.build().map_err(|source| DiscoverError::Glob { pattern: patterns.join(","), source })
}

fn root_name(root: &Path) -> String {
    let named = |p: &Path| p.file_name().map(|n| n.to_string_lossy().into_owned());
    named(root)
        .or_else(|| root.canonicalize().ok().as_deref().and_then(named))
        .unwrap_or_else(|| root.display().to_string())
}

/// Lists matching files in a stable order: roots as given, paths sorted
/// within each root. A file given directly as a root is always included.
pub fn discover(roots: &[PathBuf], options: &DiscoverOptions) -> Result<Vec<SourceInput>, DiscoverError> {
    let include = glob_set(&options.include)?;
    let exclude = glob_set(&options.exclude)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for root in roots {
        if !root.exists() {
            return Err(DiscoverError::Missing(root.clone()));
        }
        if root.is_file() {
            let project = root.parent().map(root_name).unwrap_or_default();
            if seen.insert(root.clone()) {
                out.push(SourceInput { project, path: root.clone() });
            }
            continue;
        }
        let name = root_name(root);
        let mut found = Vec::new();
        for entry in WalkDir::new(root).sort_by_file_name() {
            let entry = entry.map_err(|source| DiscoverError::Walk {
                path: source.path().map_or_else(|| root.clone(), Path::to_path_buf),
                source,
            })?;
            if !entry.file_type().is_file() {
                continue;
            }
            let rel = entry.path().strip_prefix(root).unwrap_or(entry.path());
            if !include.is_match(rel) || exclude.is_match(rel) {
                continue;
            }
            let project = match options.project_mode {
                ProjectMode::Root => name.clone(),
                ProjectMode::Subdirectory => {
                    let mut comps = rel.components();
                    match (comps.next(), comps.next()) {
                        (Some(first), Some(_)) => first.as_os_str().to_string_lossy().into_owned(),
                        _ => name.clone(),
                    }
                }
            };
            found.push(SourceInput { project, path: entry.path().to_path_buf() });
        }
        found.sort_by(|a, b| a.path.cmp(&b.path));
        for f in found {
            if seen.insert(f.path.clone()) {
                out.push(f);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    fn tree() -> tempfile::TempDir {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path().join("corpus");
        for f in ["a/src/FooTest.java", "a/src/Foo.kt", "b/BarTest.java", "Top.java", "b/gen/Gen.java"] {
            let p = root.join(f);
            fs::create_dir_all(p.parent().unwrap()).unwrap();
            fs::write(p, "class X {}").unwrap();
        }
        dir
    }

    #[test]
    fn finds_java_files_sorted() {
        let dir = tree();
        let root = dir.path().join("corpus");
        let found = discover(std::slice::from_ref(&root), &DiscoverOptions::default()).unwrap();
        let rel: Vec<_> = found.iter().map(|f| f.path.strip_prefix(&root).unwrap().to_path_buf()).collect();
        assert_eq!(
            rel,
            ["Top.java", "a/src/FooTest.java", "b/BarTest.java", "b/gen/Gen.java"].map(PathBuf::from)
        );
        assert!(found.iter().all(|f| f.project == "corpus"));
    }

    #[test]
    fn excludes_and_subdirectory_projects() {
        let dir = tree();
        let root = dir.path().join("corpus");
        let options = DiscoverOptions {
            exclude: vec!["**/gen/**".into()],
            project_mode: ProjectMode::Subdirectory,
            ..DiscoverOptions::default()
        };
        let found = discover(&[root], &options).unwrap();
        let projects: Vec<_> = found.iter().map(|f| f.project.as_str()).collect();
        assert_eq!(projects, ["corpus", "a", "b"]);
    }

    #[test]
    fn missing_root_and_bad_glob() {
        let err = discover(&[PathBuf::from("/definitely/not/here")], &DiscoverOptions::default()).unwrap_err();
        assert!(matches!(err, DiscoverError::Missing(_)));
        let options = DiscoverOptions { include: vec!["a[".into()], ..DiscoverOptions::default() };
        assert!(matches!(discover(&[], &options), Err(DiscoverError::Glob { .. })));
    }

    #[test]
    fn file_root_is_taken_as_is() {
        let dir = tree();
        let file = dir.path().join("corpus/a/src/Foo.kt");
        let found = discover(&[file.clone(), file.clone()], &DiscoverOptions::default()).unwrap();
        assert_eq!(found, [SourceInput { project: "src".into(), path: file }]);
    }
}
