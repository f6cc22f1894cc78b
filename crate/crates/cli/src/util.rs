//! Output and input helpers shared by the subcommands.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use wfsm::Rational;

/// Writes a file all-or-nothing: the content is produced into a temporary
/// sibling first and renamed over the target only on success, so failures
/// never leave partial outputs behind.
pub fn write_atomic(path: &Path, produce: impl FnOnce() -> Result<Vec<u8>>) -> Result<()> {
    let tmp = tmp_path(path);
    let result = produce().and_then(|bytes| {
        fs::write(&tmp, bytes).with_context(|| format!("writing {}", tmp.display()))?;
        fs::rename(&tmp, path).with_context(|| format!("renaming to {}", path.display()))?;
        Ok(())
    });
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

fn tmp_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".tmp");
    path.with_file_name(name)
}

/// Reads a corpus file: one string per line, trailing whitespace stripped,
/// empty lines skipped. Line numbers are kept for error messages.
pub fn read_lines(path: &Path) -> Result<Vec<(usize, String)>> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end().to_string()))
        .filter(|(_, l)| !l.is_empty())
        .collect())
}

/// Validates that every line is a string of the rule's length over its
/// universe alphabet, reporting the offending line number otherwise.
pub fn validate_strings(
    lines: &[(usize, String)],
    rule: &wfsm::MatchingRule,
    what: &str,
) -> Result<Vec<String>> {
    for (lineno, s) in lines {
        let n = s.chars().count();
        if n != rule.len() {
            bail!(
                "{what} line {lineno}: string {s:?} has length {n}, expected {}",
                rule.len()
            );
        }
        if let Some(c) = s.chars().find(|&c| !rule.alphabet().contains(c)) {
            bail!(
                "{what} line {lineno}: symbol {c:?} not in alphabet {}",
                rule.alphabet()
            );
        }
    }
    Ok(lines.iter().map(|(_, s)| s.clone()).collect())
}

/// Display-only decimal rendering with 12 significant digits.
pub fn decimal_12(x: &Rational) -> String {
    let v = x.to_f64();
    if v == 0.0 {
        return "0".to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    if !(-4..=14).contains(&magnitude) {
        return format!("{v:.11e}");
    }
    let decimals = (11 - magnitude).max(0) as usize;
    let s = format!("{v:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::decimal_12;
    use std::str::FromStr;
    use wfsm::Rational;

    #[test]
    fn twelve_significant_digits() {
        let r = |s: &str| Rational::from_str(s).unwrap();
        assert_eq!(decimal_12(&r("6/1")), "6");
        assert_eq!(decimal_12(&r("1/2")), "0.5");
        assert_eq!(decimal_12(&r("1/3")), "0.333333333333");
        assert_eq!(decimal_12(&r("-22/7")), "-3.14285714286");
        assert_eq!(decimal_12(&r("0/1")), "0");
        assert_eq!(decimal_12(&r("1000000/1")), "1000000");
    }
}
