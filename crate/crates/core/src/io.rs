//! JSON forms of tableaux, shifts and graphs.
//!
//! Tableau: `{"n": 3, "rows": [["pi", 2, 1], ["pi+2", 2], [0]]}`, rows listed
//! top first. An entry is an integer, a string such as `"pi+2"` or `"3/2"`,
//! or an object `{"sym": "pi", "q": "2"}` (`sym` optional, `q` an integer
//! or a `"p/q"` string).
//!
//! Graph: `{"n": 3, "arrows": [{"from": [3, 2], "to": [2, 2]}]}`.
//!
//! Shift: `"0,0,0|1,0|1"` or `{"n": 3, "rows": [[0, 0, 0], [1, 0], [1]]}`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{format_rational, parse_rational};
use crate::graph::{Arrow, TriGraph};
use crate::tableau::{Entry, ShiftVector, Tableau, Vertex};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArrow {
    from: [usize; 2],
    to: [usize; 2],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    n: usize,
    arrows: Vec<RawArrow>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRows {
    n: Option<usize>,
    rows: Vec<Vec<Value>>,
}

fn syntax(e: serde_json::Error) -> Error {
    // serde_json messages end in "at line L column C"
    Error::Parse(e.to_string())
}

fn entry_from_json(v: &Value, at: &str) -> Result<Entry> {
    let bad = |what: &str| Error::Parse(format!("{at}: {what}"));
    match v {
        Value::Number(x) => {
            let i = x.as_i64().ok_or_else(|| bad("entries must be integers, strings or objects"))?;
            Ok(Entry::int(i))
        }
        Value::String(s) => Entry::parse(s).map_err(|e| bad(&e.to_string())),
        Value::Object(map) => {
            if let Some(k) = map.keys().find(|k| *k != "sym" && *k != "q") {
                return Err(bad(&format!("unknown field {k:?}")));
            }
            let q = match map.get("q") {
                None => crate::Rational::from_integer(0.into()),
                Some(Value::Number(x)) => {
                    crate::Rational::from_integer(x.as_i64().ok_or_else(|| bad("q must be an integer or \"p/q\""))?.into())
                }
                Some(Value::String(s)) => parse_rational(s).ok_or_else(|| bad(&format!("ill-formed rational {s:?}")))?,
                Some(_) => return Err(bad("q must be an integer or \"p/q\"")),
            };
            match map.get("sym") {
                None => Ok(Entry::rational(q)),
                Some(Value::String(s)) if is_symbol(s) => Ok(Entry::symbolic(s, q)),
                Some(_) => Err(bad("sym must be an identifier")),
            }
        }
        _ => Err(bad("entries must be integers, strings or objects")),
    }
}

fn is_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

fn check_rank(declared: Option<usize>, rows: usize) -> Result<()> {
    match declared {
        Some(n) if n != rows => Err(Error::Parse(format!("\"n\" is {n} but {rows} rows are given"))),
        _ => Ok(()),
    }
}

pub fn tableau_from_json(text: &str) -> Result<Tableau> {
    let raw: RawRows = serde_json::from_str(text).map_err(syntax)?;
    check_rank(raw.n, raw.rows.len())?;
    let rows = raw
        .rows
        .iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(|(c, v)| entry_from_json(v, &format!("rows[{r}][{c}]")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Tableau::from_rows(rows)
}

fn entry_to_json(e: &Entry) -> Value {
    if e.is_rational() && e.offset.is_integer() {
        if let Ok(i) = i64::try_from(e.offset.to_integer()) {
            return json!(i);
        }
    }
    if e.is_rational() {
        json!({"q": format_rational(&e.offset)})
    } else {
        json!({"sym": e.sym, "q": format_rational(&e.offset)})
    }
}

pub fn tableau_to_json(t: &Tableau) -> Value {
    json!({
        "n": t.n(),
        "rows": t.rows_top_down().iter().map(|r| r.iter().map(entry_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn graph_from_json(text: &str) -> Result<TriGraph> {
    let raw: RawGraph = serde_json::from_str(text).map_err(syntax)?;
    let arrows = raw
        .arrows
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let from = Vertex::new(a.from[0], a.from[1]);
            let to = Vertex::new(a.to[0], a.to[1]);
            for v in [from, to] {
                v.check(raw.n).map_err(|e| Error::Parse(format!("arrows[{i}]: {e}")))?;
            }
            Ok(Arrow::new(from, to))
        })
        .collect::<Result<Vec<_>>>()?;
    TriGraph::new(raw.n, arrows.iter().copied()).map_err(|e| match e {
        Error::InvalidRank(_) => e,
        other => {
            let at = arrows
                .iter()
                .enumerate()
                .find(|(i, a)| a.from == a.to || arrows[..*i].contains(a))
                .map(|(i, _)| format!("arrows[{i}]: "))
                .unwrap_or_default();
            Error::Parse(format!("{at}{other}"))
        }
    })
}

pub fn graph_to_json(g: &TriGraph) -> Value {
    let raw = RawGraph {
        n: g.n(),
        arrows: g
            .arrows()
            .iter()
            .map(|a| RawArrow {
                from: [a.from.row, a.from.col],
                to: [a.to.row, a.to.col],
            })
            .collect(),
    };
    serde_json::to_value(raw).expect("graphs serialize")
}

/// A shift in text form or as a JSON object.
pub fn shift_from_text(n: usize, text: &str) -> Result<ShiftVector> {
    let trimmed = text.trim();
    if !trimmed.starts_with('{') {
        return ShiftVector::parse(n, trimmed.trim_matches('"'));
    }
    let raw: RawRows = serde_json::from_str(trimmed).map_err(syntax)?;
    check_rank(raw.n, raw.rows.len())?;
    let rows: Vec<String> = raw
        .rows
        .iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(|(c, v)| {
                    v.as_i64()
                        .map(|x| x.to_string())
                        .ok_or_else(|| Error::Parse(format!("rows[{r}][{c}]: shift values are integers")))
                })
                .collect::<Result<Vec<_>>>()
                .map(|cells| cells.join(","))
        })
        .collect::<Result<Vec<_>>>()?;
    ShiftVector::parse(n, &rows.join("|"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn tableau_round_trip() {
        for t in [presets::diamond_tableau(), presets::rank3_seed(), Tableau::parse("1/2,pi-1/3 | 0").unwrap()] {
            let text = tableau_to_json(&t).to_string();
            assert_eq!(tableau_from_json(&text).unwrap(), t);
        }
    }

    #[test]
    fn entry_forms() {
        let t = tableau_from_json(r#"{"n": 2, "rows": [[{"sym": "pi", "q": "1/2"}, {"q": 3}], ["pi+1/2"]]}"#).unwrap();
        assert_eq!(t, Tableau::parse("pi+1/2,3 | pi+1/2").unwrap());
    }

    #[test]
    fn errors_name_their_position() {
        let e = tableau_from_json(r#"{"rows": [[1, 2], [true]]}"#).unwrap_err();
        assert!(e.to_string().contains("rows[1][0]"), "{e}");
        let e = tableau_from_json("{\"rows\": [[1, 2],\n [3]").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
        let e = graph_from_json(r#"{"n": 3, "arrows": [{"from": [2,1], "to": [1,1]}, {"from": [2,1], "to": [1,1]}]}"#).unwrap_err();
        assert!(e.to_string().contains("arrows[1]"), "{e}");
        let e = graph_from_json(r#"{"n": 3, "arrows": [{"from": [4,1], "to": [1,1]}]}"#).unwrap_err();
        assert!(e.to_string().contains("arrows[0]"), "{e}");
        let e = tableau_from_json(r#"{"n": 3, "rows": [[1, 2], [3]]}"#).unwrap_err();
        assert!(e.to_string().contains("\"n\""), "{e}");
    }

    #[test]
    fn graph_round_trip() {
        for (_, g) in presets::family_graphs() {
            let text = graph_to_json(&g).to_string();
            assert_eq!(graph_from_json(&text).unwrap(), g);
        }
    }

    #[test]
    fn shift_forms() {
        let a = shift_from_text(3, "0,0,0|1,0|1").unwrap();
        let b = shift_from_text(3, r#"{"rows": [[0,0,0],[1,0],[1]]}"#).unwrap();
        assert_eq!(a, b);
        assert!(shift_from_text(3, "1,0,0|1,0|1").is_err());
    }
}
