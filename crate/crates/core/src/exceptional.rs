//! User supplied `(d,1)`-series tables for the exceptional types.
//!
//! The file format is line based UTF-8; `#` starts a comment:
//!
//! ```text
//! SERIES F4 : 1, B2, F4[-1], F4[i], F4''[1], F4[1]
//! F4 2 : {1, B2, F4[-1], F4[i], F4''[1]}
//! E6 3 : {1, D4} ; {E6[θ]}
//! ```
//!
//! A `SERIES` line lists the 1-series of a type, each named by its cuspidal
//! support. Every other line gives, for one `(type, d)`, the `(d,1)`-series
//! that are unions of several 1-series. A 1-series not mentioned on a `(type,
//! d)` line is a `(d,1)`-series on its own, and a `(type, d)` pair with no line
//! at all has the 1-series as its `(d,1)`-series.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::BufRead;
use std::path::Path;
use std::str::FromStr;

use crate::group::ExceptionalType;
use crate::{Error, Result};

/// A class of 1-series names.
pub type SeriesClass = BTreeSet<String>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExceptionalTable {
    series: BTreeMap<ExceptionalType, Vec<String>>,
    entries: BTreeMap<(ExceptionalType, u64), Vec<SeriesClass>>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_names(line: usize, text: &str) -> Result<Vec<String>> {
    let names: Vec<String> = text.split(',').map(|n| n.trim().to_string()).collect();
    if names.iter().any(String::is_empty) {
        return Err(parse_err(line, format!("empty series name in {text:?}")));
    }
    Ok(names)
}

fn parse_type(line: usize, text: &str) -> Result<ExceptionalType> {
    text.parse()
        .map_err(|_| parse_err(line, format!("unknown exceptional type {text:?}")))
}

impl ExceptionalTable {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Parse a table from a text stream.
    pub fn load(source: impl BufRead) -> Result<Self> {
        let mut table = Self::default();
        let mut key_lines: BTreeMap<(ExceptionalType, u64), usize> = BTreeMap::new();
        for (idx, line) in source.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.map_err(|e| parse_err(lineno, e.to_string()))?;
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (head, body) = content
                .split_once(':')
                .ok_or_else(|| parse_err(lineno, "missing ':'"))?;
            let words: Vec<&str> = head.split_whitespace().collect();
            match words.as_slice() {
                ["SERIES", ty] => {
                    let ty = parse_type(lineno, ty)?;
                    let names = parse_names(lineno, body)?;
                    if table.series.insert(ty, names).is_some() {
                        return Err(Error::Validation(format!(
                            "line {lineno}: duplicate SERIES line for {ty}"
                        )));
                    }
                }
                [ty, d] => {
                    let ty = parse_type(lineno, ty)?;
                    let d: u64 = d
                        .parse()
                        .ok()
                        .filter(|&d| d >= 1)
                        .ok_or_else(|| parse_err(lineno, format!("bad d {d:?}")))?;
                    let classes = body
                        .split(';')
                        .map(|c| {
                            let c = c.trim();
                            let inner = c
                                .strip_prefix('{')
                                .and_then(|c| c.strip_suffix('}'))
                                .ok_or_else(|| {
                                    parse_err(lineno, format!("class {c:?} is not braced"))
                                })?;
                            parse_names(lineno, inner)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    if key_lines.insert((ty, d), lineno).is_some() {
                        return Err(Error::Validation(format!(
                            "line {lineno}: duplicate entry for ({ty}, {d})"
                        )));
                    }
                    let mut seen = BTreeSet::new();
                    let mut sets = Vec::with_capacity(classes.len());
                    for class in classes {
                        let mut set = SeriesClass::new();
                        for name in class {
                            if !seen.insert(name.clone()) {
                                return Err(Error::Validation(format!(
                                    "line {lineno}: {name:?} appears in more than one class"
                                )));
                            }
                            set.insert(name);
                        }
                        sets.push(set);
                    }
                    sets.sort();
                    table.entries.insert((ty, d), sets);
                }
                _ => return Err(parse_err(lineno, format!("cannot parse header {head:?}"))),
            }
        }
        table.validate(&key_lines)?;
        Ok(table)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let file = std::fs::File::open(path.as_ref()).map_err(|e| Error::Parse {
            line: 0,
            message: format!("{}: {e}", path.as_ref().display()),
        })?;
        Self::load(std::io::BufReader::new(file))
    }

    fn validate(&self, key_lines: &BTreeMap<(ExceptionalType, u64), usize>) -> Result<()> {
        for (ty, names) in &self.series {
            let mut seen = BTreeSet::new();
            if let Some(dup) = names.iter().find(|n| !seen.insert(n.as_str())) {
                return Err(Error::Validation(format!(
                    "series {dup:?} listed twice for {ty}"
                )));
            }
        }
        for ((ty, d), classes) in &self.entries {
            let Some(known) = self.series.get(ty) else { continue };
            for name in classes.iter().flatten() {
                if !known.contains(name) {
                    return Err(Error::Validation(format!(
                        "line {}: {name:?} is not a 1-series of {ty} (d = {d})",
                        key_lines[&(*ty, *d)]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Known 1-series names of `ty`, if a `SERIES` line was given.
    pub fn series_names(&self, ty: ExceptionalType) -> Option<&[String]> {
        self.series.get(&ty).map(Vec::as_slice)
    }

    pub fn entry(&self, ty: ExceptionalType, d: u64) -> Option<&[SeriesClass]> {
        self.entries.get(&(ty, d)).map(Vec::as_slice)
    }

    pub fn is_empty(&self) -> bool {
        self.series.is_empty() && self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// The `(d,1)`-series of `ty` as classes of 1-series names.
    ///
    /// Stored classes come first; every known 1-series not mentioned in them
    /// follows as a singleton.
    pub fn d1_classes(&self, ty: ExceptionalType, d: u64) -> Vec<SeriesClass> {
        let mut classes: Vec<SeriesClass> = self.entry(ty, d).map(<[_]>::to_vec).unwrap_or_default();
        let covered: BTreeSet<&String> = classes.iter().flatten().collect();
        let rest: Vec<SeriesClass> = self
            .series_names(ty)
            .unwrap_or_default()
            .iter()
            .filter(|n| !covered.contains(n))
            .map(|n| SeriesClass::from([n.clone()]))
            .collect();
        classes.extend(rest);
        classes
    }
}

/// `(d,1)`-series of the exceptional type named `type_name`.
pub fn d1_series_exceptional(
    type_name: &str,
    d: u64,
    table: &ExceptionalTable,
) -> Result<Vec<SeriesClass>> {
    let ty: ExceptionalType = type_name.parse()?;
    Ok(table.d1_classes(ty, d))
}

impl FromStr for ExceptionalTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::load(s.as_bytes())
    }
}

impl fmt::Display for ExceptionalTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (ty, names) in &self.series {
            writeln!(f, "SERIES {ty} : {}", names.join(", "))?;
        }
        for ((ty, d), classes) in &self.entries {
            let rendered: Vec<String> = classes
                .iter()
                .map(|c| format!("{{{}}}", c.iter().cloned().collect::<Vec<_>>().join(", ")))
                .collect();
            writeln!(f, "{ty} {d} : {}", rendered.join(" ; "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const F4_LINE: &str = "F4 2 : {1, B2, F4[-1], F4[i], F4''[1]}";

    #[test]
    fn empty_file() {
        let t: ExceptionalTable = "".parse().unwrap();
        assert!(t.is_empty());
        let t: ExceptionalTable = "# nothing\n\n   # here\n".parse().unwrap();
        assert!(t.is_empty());
    }

    #[test]
    fn single_entry() {
        let t: ExceptionalTable = F4_LINE.parse().unwrap();
        assert_eq!(t.len(), 1);
        let e = t.entry(ExceptionalType::F4, 2).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].len(), 5);
        assert!(e[0].contains("F4''[1]"));
    }

    #[test]
    fn duplicate_key_is_validation_error() {
        let src = format!("{F4_LINE}\n{F4_LINE}\n");
        assert!(matches!(src.parse::<ExceptionalTable>(), Err(Error::Validation(_))));
    }

    #[test]
    fn overlapping_classes_rejected() {
        let err = "E6 3 : {1, D4} ; {D4}".parse::<ExceptionalTable>().unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn malformed_lines_report_line_numbers() {
        let err = "# ok\nF4 2 {1}".parse::<ExceptionalTable>().unwrap_err();
        assert_eq!(err, Error::Parse { line: 2, message: "missing ':'".into() });
        let err = "\n\nQ7 1 : {1}".parse::<ExceptionalTable>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = "F4 x : {1}".parse::<ExceptionalTable>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = "F4 2 : 1, B2".parse::<ExceptionalTable>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = "F4 2 : {1, }".parse::<ExceptionalTable>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn unknown_name_against_series_list() {
        let src = "SERIES G2 : 1, G2[1]\nG2 3 : {1, G2[-1]}";
        assert!(matches!(src.parse::<ExceptionalTable>(), Err(Error::Validation(_))));
    }

    #[test]
    fn fallback_is_one_series_partition() {
        let src = "SERIES G2 : 1, G2[1], G2[-1], G2[θ], G2[θ²]";
        let t: ExceptionalTable = src.parse().unwrap();
        let classes = d1_series_exceptional("G2", 5, &t).unwrap();
        assert_eq!(classes.len(), 5);
        assert!(classes.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn complement_rule() {
        let src = format!("SERIES F4 : 1, B2, F4[-1], F4[i], F4''[1], F4[1], F4[θ]\n{F4_LINE}");
        let t: ExceptionalTable = src.parse().unwrap();
        let classes = d1_series_exceptional("F4", 2, &t).unwrap();
        assert_eq!(classes.len(), 3);
        assert_eq!(classes[0].len(), 5);
        assert_eq!(classes[1], SeriesClass::from(["F4[1]".to_string()]));
        let other = d1_series_exceptional("F4", 3, &t).unwrap();
        assert_eq!(other.len(), 7);
    }

    #[test]
    fn empty_table_queries_fall_back() {
        let t = ExceptionalTable::empty();
        for d in 1..10 {
            assert!(d1_series_exceptional("E8", d, &t).unwrap().is_empty());
        }
        assert!(d1_series_exceptional("H3", 1, &t).is_err());
    }

    #[test]
    fn serialize_is_idempotent() {
        let src = format!("SERIES F4 : 1, B2, F4[-1], F4[i], F4''[1]\n# c\n{F4_LINE}\nE6 3 : {{D4}} ; {{1}}\n");
        let once: ExceptionalTable = src.parse().unwrap();
        let text = once.to_string();
        let twice: ExceptionalTable = text.parse().unwrap();
        assert_eq!(once, twice);
        assert_eq!(text, twice.to_string());
    }
}
