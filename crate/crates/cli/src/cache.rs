//! Newline-delimited JSON caches for enumerations, keyed by object
//! family and size. Files are written atomically (temp file + rename).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const CACHE_ENV: &str = "PROGRAPHS_CACHE_DIR";

/// Resolves the cache directory: flag value, else environment, else none.
pub fn resolve_dir(flag: Option<&Path>) -> Option<PathBuf> {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
}

fn cache_file(dir: &Path, family: &str, n: usize) -> PathBuf {
    dir.join(format!("{family}-{n}.ndjson"))
}

pub fn load(dir: &Path, family: &str, n: usize) -> Option<Vec<String>> {
    let text = fs::read_to_string(cache_file(dir, family, n)).ok()?;
    let lines: Vec<String> = text.lines().map(str::to_string).collect();
    if lines.is_empty() && n > 0 {
        return None;
    }
    Some(lines)
}

pub fn store(dir: &Path, family: &str, n: usize, lines: &[String]) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let target = cache_file(dir, family, n);
    let tmp = target.with_extension("ndjson.tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        for line in lines {
            writeln!(f, "{line}")?;
        }
        f.sync_all()?;
    }
    fs::rename(&tmp, &target)
}

/// Fetch-or-compute with optional persistence.
pub fn cached<F: FnOnce() -> Vec<String>>(
    dir: Option<&Path>,
    family: &str,
    n: usize,
    compute: F,
) -> Vec<String> {
    if let Some(dir) = dir {
        if let Some(lines) = load(dir, family, n) {
            return lines;
        }
        let lines = compute();
        // A failed write only loses the cache, not the answer.
        let _ = store(dir, family, n, &lines);
        lines
    } else {
        compute()
    }
}
