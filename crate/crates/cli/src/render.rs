//! JSON bodies for each command and the two output styles. Ray indices in
//! everything printed here are 1-based.

use htriv_core::catalog;
use htriv_core::{ComputeError, FanError, Stack, StackyFan};
use serde_json::{json, Map, Value};

use crate::args::Format;

fn one_based(set: &[usize]) -> Vec<usize> {
    set.iter().map(|i| i + 1).collect()
}

/// Integers that came out of exact arithmetic, printed as JSON numbers.
fn big(x: &impl ToString) -> Value {
    serde_json::from_str(&x.to_string()).expect("integer literal")
}

pub fn validate(fan: &StackyFan) -> Value {
    let pairs: Vec<[usize; 2]> = fan
        .collinear_pairs()
        .into_iter()
        .map(|(i, j)| [i + 1, j + 1])
        .collect();
    json!({
        "valid": true,
        "rank": fan.rank(),
        "rays": fan.n(),
        "max_cones": fan.max_cones().len(),
        "collinear_pairs": pairs,
    })
}

pub fn pic(st: &Stack) -> Value {
    let pic = st.pic();
    let rows = |forms: Vec<Vec<_>>| -> Vec<Vec<Value>> {
        forms.iter().map(|r| r.iter().map(big).collect()).collect()
    };
    let torsion_forms: Vec<Value> = pic
        .torsion_coordinate_forms()
        .into_iter()
        .map(|(form, d)| json!({ "form": form.iter().map(big).collect::<Vec<_>>(), "modulus": big(&d) }))
        .collect();
    json!({
        "free_rank": pic.free_rank(),
        "torsion": pic.torsion().iter().map(big).collect::<Vec<_>>(),
        "free_coordinates": rows(pic.free_coordinate_forms()),
        "torsion_coordinates": torsion_forms,
    })
}

pub fn delta(st: &Stack) -> Value {
    let members: Vec<Value> = st
        .delta()
        .members()
        .iter()
        .map(|m| json!({ "index_set": one_based(&m.index_set), "betti": m.betti }))
        .collect();
    json!({
        "count": members.len(),
        "betti_from_degree": -1,
        "members": members,
    })
}

pub fn find_psi(st: &Stack) -> Value {
    match st.find_degenerate_psi() {
        Some(d) => json!({ "found": true, "ray": d.ray + 1, "psi": d.psi }),
        None => json!({ "found": false }),
    }
}

pub fn family(st: &Stack, s: usize, psi: &[i64], (lo, hi): (i64, i64)) -> Result<Value, ComputeError> {
    let mut members = Vec::new();
    for r in lo..=hi {
        let class = st.family_class(s, psi, r)?;
        let h_trivial = st.is_h_trivial(&class.raw)?;
        members.push(json!({ "r": r, "class": class, "h_trivial": h_trivial }));
    }
    Ok(json!({ "ray": s + 1, "psi": psi, "members": members }))
}

pub fn catalog(format: Format, name: Option<&str>) -> Result<String, FanError> {
    if let Some(name) = name {
        let fan = catalog::by_name(name)?;
        let value: Value = serde_json::from_str(&fan.to_json()).expect("fan json");
        return Ok(format!("{}\n", serde_json::to_string_pretty(&value).expect("json")));
    }
    let entries = catalog::entries();
    Ok(match format {
        Format::Json => {
            let list: Vec<Value> = entries
                .iter()
                .map(|e| json!({ "name": e.name, "description": e.description }))
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&json!({ "catalog": list })).expect("json"))
        }
        Format::Text => {
            let width = entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
            entries
                .iter()
                .map(|e| format!("{:width$}  {}\n", e.name, e.description))
                .collect()
        }
    })
}

/// Wraps a command body with the command name and fan fingerprint.
pub fn finish(format: Format, command: &str, fingerprint: &str, body: Value) -> String {
    match format {
        Format::Json => {
            let mut out = Map::new();
            out.insert("command".into(), json!(command));
            out.insert("fingerprint".into(), json!(fingerprint));
            if let Value::Object(fields) = body {
                out.extend(fields);
            }
            format!("{}\n", serde_json::to_string_pretty(&Value::Object(out)).expect("json"))
        }
        Format::Text => text(command, fingerprint, &body),
    }
}

fn text(command: &str, fingerprint: &str, body: &Value) -> String {
    let mut out = String::new();
    // answer first so `h-trivial` output can be read with `head -1`
    if command == "h-trivial" {
        out.push_str(&format!("{}\n", body["h_trivial"]));
    }
    if command == "report" {
        if let Some(v) = body["verdict"].as_str() {
            out.push_str(&format!("{v}\n"));
        }
    }
    out.push_str(&format!("fingerprint: {fingerprint}\n"));
    if let Value::Object(fields) = body {
        for (k, v) in fields {
            match v {
                Value::Array(items) if items.iter().any(Value::is_object) => {
                    out.push_str(&format!("{k}:\n"));
                    for item in items {
                        out.push_str(&format!("  {item}\n"));
                    }
                }
                _ => out.push_str(&format!("{k}: {v}\n")),
            }
        }
    }
    out
}
