use std::fmt::Write;

use super::ranges::{MountainRange, RangeKind};

/// Fixed-width text grid: tb descending, rot ascending, blanks where no class exists.
/// Transverse ranges render as a single sl column.
pub fn render(range: &MountainRange) -> String {
    let rows = range.rows();
    let mut out = String::new();
    if range.kind() == RangeKind::Transverse {
        let w = rows.iter().map(|e| e.0.to_string().len().max(e.2.to_string().len())).max().unwrap_or(1).max(5);
        let _ = writeln!(out, "{:>w$} | count", "sl");
        for (sl, _, c) in rows {
            let _ = writeln!(out, "{sl:>w$} | {c:>5}");
        }
        return out;
    }
    let lo = rows.iter().map(|e| e.1).min().unwrap_or(0);
    let hi = rows.iter().map(|e| e.1).max().unwrap_or(0);
    let cell = rows
        .iter()
        .map(|e| e.2.to_string().len())
        .chain([lo.to_string().len(), hi.to_string().len()])
        .max()
        .unwrap_or(1)
        + 1;
    let label = rows.iter().map(|e| e.0.to_string().len()).max().unwrap_or(1).max(6);
    let mut header = format!("{:>label$} |", "tb\\rot");
    for r in lo..=hi {
        let _ = write!(header, "{r:>cell$}");
    }
    out.push_str(header.trim_end());
    out.push('\n');
    let bottom = rows.iter().map(|e| e.0).min().unwrap_or(range.max_tb());
    for t in (bottom..=range.max_tb()).rev() {
        let mut line = format!("{t:>label$} |");
        for r in lo..=hi {
            match range.count(t, r) {
                0 => line.push_str(&" ".repeat(cell)),
                c => {
                    let _ = write!(line, "{c:>cell$}");
                }
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
