use std::fmt::Write as _;

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Pretty,
}

/// Rows of already formatted cells.
pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    footer: Vec<String>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new(), footer: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// A trailing summary line; TSV output prefixes it with `#`.
    pub fn note(&mut self, s: impl Into<String>) {
        self.footer.push(s.into());
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Tsv => {
                writeln!(out, "{}", self.header.join("\t")).unwrap();
                for r in &self.rows {
                    writeln!(out, "{}", r.join("\t")).unwrap();
                }
                for n in &self.footer {
                    writeln!(out, "# {n}").unwrap();
                }
            }
            Format::Pretty => {
                let mut w: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
                for r in &self.rows {
                    for (i, c) in r.iter().enumerate() {
                        w[i] = w[i].max(c.chars().count());
                    }
                }
                let line = |cells: Vec<&str>| -> String {
                    let padded: Vec<String> = cells
                        .iter()
                        .enumerate()
                        .map(|(i, c)| format!("{c}{}", " ".repeat(w[i] - c.chars().count())))
                        .collect();
                    padded.join("  ").trim_end().to_string()
                };
                writeln!(out, "{}", line(self.header.clone())).unwrap();
                let total: usize = w.iter().sum::<usize>() + 2 * w.len().saturating_sub(1);
                writeln!(out, "{}", "-".repeat(total)).unwrap();
                for r in &self.rows {
                    writeln!(out, "{}", line(r.iter().map(String::as_str).collect())).unwrap();
                }
                for n in &self.footer {
                    writeln!(out, "{n}").unwrap();
                }
            }
        }
        out
    }
}

pub fn tuple<T: ToString>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(T::to_string).collect();
    format!("[{}]", parts.join(","))
}
