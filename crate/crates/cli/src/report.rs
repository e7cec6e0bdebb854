//! Rendering of command results as aligned tables, CSV or JSON.

use std::fmt::Write as _;

use clap::ValueEnum;
use polyprod::chain::HomologySummary;
use polyprod::Coefficients;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

pub struct Section {
    pub title: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Section {
    pub fn new(title: impl Into<String>, header: Vec<&'static str>) -> Self {
        Section {
            title: title.into(),
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// Sections for the human and CSV formats plus the JSON document.
pub struct Report {
    pub sections: Vec<Section>,
    pub json: Value,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
                s.push('\n');
                s
            }
            Format::Csv => self.csv(),
            Format::Table => self.table(),
        }
    }

    fn table(&self) -> String {
        let mut out = String::new();
        for (i, sec) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "{}", sec.title);
            let mut widths: Vec<usize> = sec.header.iter().map(|h| h.chars().count()).collect();
            for r in &sec.rows {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |cells: Vec<&str>| -> String {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                    .collect();
                padded.join("  ").trim_end().to_string()
            };
            let _ = writeln!(out, "{}", line(sec.header.clone()));
            for r in &sec.rows {
                let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
            }
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        for (i, sec) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "# {}", sec.title);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&sec.header).expect("in-memory write");
            for r in &sec.rows {
                w.write_record(r).expect("in-memory write");
            }
            out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells"));
        }
        out
    }
}

pub fn torsion(t: &[u64]) -> String {
    format!("[{}]", t.iter().map(u64::to_string).collect::<Vec<_>>().join(", "))
}

/// `H1=Z⊕Z/2, H3=Z^2`, or `0`. `co` writes `H^d`.
pub fn summary(h: &HomologySummary, coeffs: Coefficients, co: bool) -> String {
    if h.is_zero() {
        return "0".to_string();
    }
    let ring = coeffs.to_string();
    h.groups
        .iter()
        .map(|g| {
            let mut parts = Vec::new();
            match g.free_rank {
                0 => {}
                1 => parts.push(ring.clone()),
                r => parts.push(format!("{ring}^{r}")),
            }
            parts.extend(g.torsion.iter().map(|t| format!("Z/{t}")));
            format!("H{}{}={}", if co { "^" } else { "" }, g.degree, parts.join("⊕"))
        })
        .collect::<Vec<_>>()
        .join(", ")
}
