//! Plain-text output. Symbols print as two rows.

use std::io::Write;

use anyhow::{Context, Result};

use dunblocks::blocks::BlockPartition;
use dunblocks::series::{D1Partition, UnipotentChar};
use dunblocks::FiniteGroupSpec;

use crate::label_rows;

pub fn two_row(ch: &UnipotentChar) -> String {
    if ch.labels.is_empty() {
        return "1".to_owned();
    }
    let cells: Vec<(String, String)> = ch.labels.iter().map(label_rows).collect();
    let mut top = Vec::new();
    let mut bottom = Vec::new();
    for (t, b) in &cells {
        let w = t.chars().count().max(b.chars().count());
        top.push(format!("{t:<w$}"));
        bottom.push(format!("{b:<w$}"));
    }
    let top = top.join(" x ");
    let bottom = bottom.join("   ");
    if cells.iter().all(|(_, b)| b.is_empty()) {
        top.trim_end().to_owned()
    } else {
        format!("{}\n{}", top.trim_end(), bottom.trim_end())
    }
}

pub fn series_text(
    out: &mut impl Write,
    g: &FiniteGroupSpec,
    d: u64,
    kind: &str,
    p: &D1Partition,
) -> Result<()> {
    writeln!(out, "{g}, d = {d}, {kind}: {} classes, {} characters", p.len(), p.num_chars())?;
    for (i, class) in p.classes.iter().enumerate() {
        let mark = if p.trivial_class_index == Some(i) { " (trivial)" } else { "" };
        writeln!(out, "\nclass {i}{mark}: {} characters", class.len())?;
        for (j, ch) in class.iter().enumerate() {
            if j > 0 {
                writeln!(out)?;
            }
            for line in two_row(ch).lines() {
                writeln!(out, "  {line}")?;
            }
        }
    }
    Ok(())
}

pub fn blocks_text(out: &mut impl Write, b: &BlockPartition) -> Result<()> {
    writeln!(
        out,
        "n = {}, q = {}, ell = {}, d = {}, regime {}: {} blocks",
        b.n,
        b.q,
        b.ell,
        b.d,
        b.regime.as_str(),
        b.classes.len()
    )
    .context("writing output")?;
    for class in &b.classes {
        let labels: Vec<String> = class.iter().map(ToString::to_string).collect();
        writeln!(out, "  {{{}}}", labels.join(", ")).context("writing output")?;
    }
    Ok(())
}
