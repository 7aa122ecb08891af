//! Output assembly: every command fills a [`Report`], which renders either
//! as aligned text or as one JSON document.

use fsig_core::exact::{format_rational, Integer, Rational};
use serde_json::{Map, Value};

use crate::document::{InputDocument, FORMAT_VERSION};

pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, headers: &[&str]) -> Self {
        Table { title: title.into(), headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

enum Block {
    Fields(Vec<(String, String)>),
    Table(Table),
}

pub struct Report {
    json: Map<String, Value>,
    blocks: Vec<Block>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut json = Map::new();
        json.insert("format_version".into(), Value::from(FORMAT_VERSION));
        json.insert("command".into(), Value::from(command));
        Report { json, blocks: Vec::new() }
    }

    /// A `key  value` line in the text rendering.
    pub fn line(&mut self, key: impl Into<String>, value: impl Into<String>) {
        let pair = (key.into(), value.into());
        match self.blocks.last_mut() {
            Some(Block::Fields(f)) => f.push(pair),
            _ => self.blocks.push(Block::Fields(vec![pair])),
        }
    }

    pub fn table(&mut self, table: Table) {
        self.blocks.push(Block::Table(table));
    }

    /// A member of the JSON document.
    pub fn json(&mut self, key: &str, value: Value) {
        self.json.insert(key.into(), value);
    }

    pub fn echo_input(&mut self, doc: &InputDocument) {
        let mut m = Map::new();
        m.insert("name".into(), doc.name.clone().map_or(Value::Null, Value::from));
        m.insert("ambient_rank".into(), Value::from(doc.ambient_rank));
        m.insert("generators".into(), int_matrix(&doc.generators));
        self.json("input", Value::Object(m));
        self.line("name", doc.name.clone().unwrap_or_else(|| "(unnamed)".into()));
        self.line("ambient rank", doc.ambient_rank.to_string());
        self.line("generators", doc.generators.len().to_string());
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&Value::Object(self.json.clone())).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, block) in self.blocks.iter().enumerate() {
            if k > 0 {
                out.push('\n');
            }
            match block {
                Block::Fields(fields) => {
                    let width = fields.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
                    for (key, value) in fields {
                        out.push_str(&format!("{key:<width$}  {value}\n"));
                    }
                }
                Block::Table(t) => render_table(t, &mut out),
            }
        }
        out
    }
}

fn render_table(t: &Table, out: &mut String) {
    let mut widths: Vec<usize> = t.headers.iter().map(|h| h.chars().count()).collect();
    for row in &t.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    if !t.title.is_empty() {
        out.push_str(&format!("{}\n", t.title));
    }
    out.push_str(&line(&t.headers));
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    out.push_str(&line(&rule));
    for row in &t.rows {
        out.push_str(&line(row));
    }
}

/// An integer as a JSON number of any size.
pub fn int(i: &Integer) -> Value {
    Value::Number(i.to_string().parse().expect("integer renders as a JSON number"))
}

pub fn int_vec(v: &[Integer]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn int_matrix(rows: &[Vec<Integer>]) -> Value {
    Value::Array(rows.iter().map(|r| int_vec(r)).collect())
}

/// A rational as the string `p/q` in lowest terms.
pub fn rat(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn rat_vec(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

pub fn fmt_vec<T: std::fmt::Display>(v: &[T]) -> String {
    let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", items.join(", "))
}

pub fn fmt_rat_vec(v: &[Rational]) -> String {
    let items: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", items.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_integers_stay_exact_in_json() {
        let big: Integer = "98765432109876543210987654321".parse().unwrap();
        let mut r = Report::new("probe");
        r.json("value", int(&big));
        r.json("ratio", rat(&Rational::new(Integer::from(6), Integer::from(8))));
        let text = r.to_json();
        assert!(text.contains("98765432109876543210987654321"));
        assert!(text.contains("\"3/4\""));
        assert!(text.contains("\"format_version\": 1"));
    }

    #[test]
    fn text_tables_align() {
        let mut r = Report::new("probe");
        r.line("a", "1");
        r.line("longer", "2");
        let mut t = Table::new("rows", &["q", "a_q"]);
        t.push(vec!["2".into(), "6".into()]);
        t.push(vec!["10".into(), "1000".into()]);
        r.table(t);
        assert_eq!(r.to_text(), "a       1\nlonger  2\n\nrows\nq   a_q\n--  ----\n2   6\n10  1000\n");
    }
}
