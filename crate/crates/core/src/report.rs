//! Flat record serialization: JSON objects and CSV rows with exact `p/q`
//! strings plus decimal shadow columns (`*_float`, non-authoritative).

use serde_json::{Map, Number, Value as Json};

use crate::additive::{APCover, SmallDoublingReport};
use crate::gen::CounterexampleReport;
use crate::interval::IntervalSet;
use crate::intset::IntegerSet;
use crate::riesz::{DeficitReport, ProbeReport};
use crate::scalar::{approx, fmt_scalar, Scalar};

/// One serializable field value.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Rat(Scalar),
    Bool(bool),
    UInt(u64),
    Float(f64),
    Text(String),
    Null,
}

/// Ordered flat record; rationals are emitted as exact strings with a
/// trailing `_float` shadow column.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record {
    fields: Vec<(String, Value)>,
}

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn push_rat(&mut self, name: &str, value: &Scalar) -> &mut Self {
        self.fields.push((name.to_string(), Value::Rat(value.clone())));
        self.fields
            .push((format!("{name}_float"), Value::Float(approx(value))));
        self
    }

    pub fn push_opt_rat(&mut self, name: &str, value: Option<&Scalar>) -> &mut Self {
        match value {
            Some(v) => self.push_rat(name, v),
            None => {
                self.fields.push((name.to_string(), Value::Null));
                self.fields.push((format!("{name}_float"), Value::Null));
                self
            }
        }
    }

    pub fn push_bool(&mut self, name: &str, value: bool) -> &mut Self {
        self.fields.push((name.to_string(), Value::Bool(value)));
        self
    }

    pub fn push_uint(&mut self, name: &str, value: u64) -> &mut Self {
        self.fields.push((name.to_string(), Value::UInt(value)));
        self
    }

    pub fn push_text(&mut self, name: &str, value: &str) -> &mut Self {
        self.fields
            .push((name.to_string(), Value::Text(value.to_string())));
        self
    }

    pub fn push_set(&mut self, name: &str, value: &IntervalSet) -> &mut Self {
        self.push_text(name, &value.to_string())
    }

    pub fn push_int_set(&mut self, name: &str, value: &IntegerSet) -> &mut Self {
        self.push_text(name, &value.to_string())
    }

    /// Appends every field of another record, used to flatten an embedded
    /// report into a sweep row.
    pub fn extend(&mut self, other: Record) -> &mut Self {
        self.fields.extend(other.fields);
        self
    }

    pub fn to_json(&self) -> Json {
        let mut map = Map::new();
        for (name, value) in &self.fields {
            let json = match value {
                Value::Rat(q) => Json::String(fmt_scalar(q)),
                Value::Bool(b) => Json::Bool(*b),
                Value::UInt(u) => Json::Number((*u).into()),
                Value::Float(x) => Number::from_f64(*x).map(Json::Number).unwrap_or(Json::Null),
                Value::Text(s) => Json::String(s.clone()),
                Value::Null => Json::Null,
            };
            map.insert(name.clone(), json);
        }
        Json::Object(map)
    }

    pub fn csv_header(&self) -> Vec<String> {
        self.fields.iter().map(|(name, _)| name.clone()).collect()
    }

    pub fn csv_values(&self) -> Vec<String> {
        self.fields
            .iter()
            .map(|(_, value)| match value {
                Value::Rat(q) => fmt_scalar(q),
                Value::Bool(b) => b.to_string(),
                Value::UInt(u) => u.to_string(),
                Value::Float(x) => x.to_string(),
                Value::Text(s) => s.clone(),
                Value::Null => String::new(),
            })
            .collect()
    }
}

/// Types with a canonical flat-record rendering.
pub trait ToRecord {
    fn to_record(&self) -> Record;
}

impl ToRecord for DeficitReport {
    fn to_record(&self) -> Record {
        let mut r = Record::new();
        r.push_rat("a", &self.a)
            .push_rat("b", &self.b)
            .push_rat("c", &self.c)
            .push_rat("pairing", &self.pairing_value)
            .push_rat("theta", &self.theta_value)
            .push_rat("deficit", &self.deficit)
            .push_rat("delta", &self.delta)
            .push_bool("burchard_admissible", self.burchard_admissible);
        r
    }
}

impl ToRecord for ProbeReport {
    fn to_record(&self) -> Record {
        let mut r = Record::new();
        r.push_rat("a_measure", &self.a_measure)
            .push_rat("b_measure", &self.b_measure)
            .push_rat("e_measure", &self.e_measure)
            .push_rat("f_measure", &self.f_measure)
            .push_rat("alpha", &self.alpha)
            .push_rat("beta", &self.beta)
            .push_rat("delta1", &self.delta1)
            .push_rat("delta2", &self.delta2)
            .push_bool("window_ok", self.window_ok)
            .push_text("best_interval", &self.best_interval.to_string())
            .push_rat("epsilon", &self.epsilon)
            .push_opt_rat("s_alpha_measure", self.s_alpha_measure.as_ref())
            .push_opt_rat("s_beta_measure", self.s_beta_measure.as_ref());
        r
    }
}

impl ToRecord for CounterexampleReport {
    fn to_record(&self) -> Record {
        let mut r = Record::new();
        r.push_uint("lambda", self.lambda)
            .push_rat("a_measure", &self.a_measure)
            .push_rat("b_measure", &self.b_measure)
            .push_rat("max_value", &self.max_value)
            .push_bool("formula_ok", self.formula_ok)
            .push_bool("vanishes_ok", self.vanishes_ok)
            .push_rat("support_measure", &self.support_measure)
            .push_rat("interval_support_measure", &self.interval_support_measure)
            .push_rat("support_ratio", &self.support_ratio);
        r
    }
}

impl ToRecord for SmallDoublingReport {
    fn to_record(&self) -> Record {
        let mut r = Record::new();
        r.push_bool("premise", self.premise)
            .push_rat("a_measure", &self.a_measure)
            .push_rat("sumset_measure", &self.sumset_measure)
            .push_rat("hull_length", &self.hull_length)
            .push_rat("bound", &self.bound);
        r
    }
}

impl ToRecord for APCover {
    fn to_record(&self) -> Record {
        let mut r = Record::new();
        r.push_text("cover", &self.to_string())
            .push_uint("length", self.length);
        r
    }
}

/// Pretty JSON for a single record.
pub fn render_json_record(record: &Record) -> String {
    serde_json::to_string_pretty(&record.to_json()).expect("records serialize")
}

/// Pretty JSON array for a row set.
pub fn render_json_rows(rows: &[Record]) -> String {
    let array: Vec<Json> = rows.iter().map(Record::to_json).collect();
    serde_json::to_string_pretty(&Json::Array(array)).expect("records serialize")
}

/// CSV with a header row; the header comes from the first record.
pub fn render_csv(rows: &[Record]) -> String {
    let mut out = String::new();
    let Some(first) = rows.first() else {
        return out;
    };
    out.push_str(&join_csv(&first.csv_header()));
    out.push('\n');
    for row in rows {
        out.push_str(&join_csv(&row.csv_values()));
        out.push('\n');
    }
    out
}

fn join_csv(cells: &[String]) -> String {
    cells
        .iter()
        .map(|cell| csv_escape(cell))
        .collect::<Vec<_>>()
        .join(",")
}

fn csv_escape(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}
