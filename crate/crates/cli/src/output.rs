use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Integers become strings so that large orders survive any JSON reader.
pub fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(a) => Value::Array(a.into_iter().map(stringify_numbers).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, stringify_numbers(v))).collect()),
        other => other,
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn columns(records: &[Value]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for r in records {
        if let Value::Object(o) = r {
            for k in o.keys() {
                if !cols.contains(k) {
                    cols.push(k.clone());
                }
            }
        }
    }
    cols
}

fn csv(records: &[Value]) -> Result<String, String> {
    let cols = columns(records);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&cols).map_err(|e| e.to_string())?;
    for r in records {
        let row: Vec<String> = cols.iter().map(|c| r.get(c).map(cell).unwrap_or_default()).collect();
        w.write_record(&row).map_err(|e| e.to_string())?;
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

fn is_bound(r: &Value) -> bool {
    r.get("route").is_some() && r.get("provenance").is_some()
}

fn bounds_text(records: &[Value]) -> String {
    let head = ["group", "char", "route", "kind", "value", "lower"];
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| head.iter().map(|k| r.get(*k).map(cell).unwrap_or_default()).collect())
        .collect();
    let widths: Vec<usize> = (0..head.len())
        .map(|i| rows.iter().map(|r| r[i].chars().count()).chain([head[i].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: Vec<String>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(head.iter().map(|s| s.to_string()).collect());
    for r in rows {
        out += &line(r);
    }
    if records.len() == 1 {
        out += "\n";
        out += &steps_text(&records[0]);
    }
    out
}

fn steps_text(r: &Value) -> String {
    let mut out = String::new();
    if let Some(Value::Array(steps)) = r.get("provenance") {
        for (i, s) in steps.iter().enumerate() {
            let inputs: Vec<String> = match s.get("inputs") {
                Some(Value::Array(xs)) => xs
                    .iter()
                    .map(|x| {
                        let from = x.get("from_step").map(|k| format!(" [step {}]", cell(k))).unwrap_or_default();
                        format!("{} = {}{from}", cell(&x["name"]), cell(&x["value"]))
                    })
                    .collect(),
                _ => Vec::new(),
            };
            out += &format!(
                "step {i}: {} ({}) -> {}\n    {}\n",
                cell(&s["rule"]),
                inputs.join(", "),
                cell(&s["output"]),
                cell(&s["anchor"])
            );
        }
    }
    if let Some(Value::Array(certs)) = r.get("certificates") {
        for c in certs {
            out += &format!("certificate: {}\n", cell(c));
        }
    }
    out
}

fn record_text(r: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(o) = r {
        for (k, v) in o {
            match v {
                Value::Array(xs) if !xs.is_empty() => {
                    out += &format!("{k}:\n");
                    for x in xs {
                        out += &format!("  - {}\n", cell(x));
                    }
                }
                _ => out += &format!("{k}: {}\n", cell(v)),
            }
        }
    }
    out
}

pub fn render(format: Format, records: &[Value], single: bool) -> Result<String, String> {
    match format {
        Format::Json => {
            let v = if single && records.len() == 1 {
                records[0].clone()
            } else {
                Value::Array(records.to_vec())
            };
            serde_json::to_string_pretty(&v).map(|s| s + "\n").map_err(|e| e.to_string())
        }
        Format::Csv => csv(records),
        Format::Text if !records.is_empty() && records.iter().all(is_bound) => Ok(bounds_text(records)),
        Format::Text => Ok(records.iter().map(record_text).collect::<Vec<_>>().join("\n")),
    }
}
