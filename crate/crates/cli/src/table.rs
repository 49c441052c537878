//! Plain-text rendering of command payloads.

use std::fmt::Write;

use diffposet::IntPoly;
use serde_json::Value;

use crate::config::Command;

fn poly(v: &Value) -> String {
    serde_json::from_value::<IntPoly>(v.clone())
        .map(|p| p.to_string())
        .unwrap_or_else(|_| v.to_string())
}

fn polys(v: &Value) -> String {
    let items: Vec<String> = v.as_array().into_iter().flatten().map(poly).collect();
    if items.is_empty() {
        "-".into()
    } else {
        items.join(", ")
    }
}

fn text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Left-aligned columns separated by two spaces.
fn columns(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        if row.len() > widths.len() {
            widths.resize(row.len(), 0);
        }
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

pub fn render(command: &Command, v: &Value) -> String {
    let mut out = String::new();
    match command {
        Command::Ranks => {
            let _ = writeln!(out, "spec {} (r = {})", text(&v["spec"]), v["r"]);
            let rows: Vec<Vec<String>> = v["ranks"]
                .as_array()
                .into_iter()
                .flatten()
                .map(|r| vec![r["n"].to_string(), r["p_n"].to_string(), r["delta_p"].to_string()])
                .collect();
            out.push_str(&columns(&["n", "p_n", "delta_p"], &rows));
        }
        Command::Matrix { .. } => {
            let m = &v["matrix"];
            let _ = writeln!(
                out,
                "{}_{} for {} ({}x{})",
                text(&v["which"]),
                v["n"],
                text(&v["spec"]),
                m["rows"],
                m["cols"]
            );
            let rows: Vec<Vec<String>> = m["data"]
                .as_array()
                .into_iter()
                .flatten()
                .map(|r| r.as_array().into_iter().flatten().map(text).collect())
                .collect();
            let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
            for r in rows {
                let cells: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
                let _ = writeln!(out, "[{}]", cells.join(" "));
            }
        }
        Command::Axioms => {
            let _ = writeln!(
                out,
                "DU_n - UD_n = {}I for {} ranks of {}: {}",
                v["r"],
                v["ranks_checked"],
                text(&v["spec"]),
                verdict(v["passed"] == Value::Bool(true))
            );
            if !v["violation"].is_null() {
                let w = &v["violation"];
                let _ = writeln!(
                    out,
                    "first violation at n = {}, entry ({}, {}): expected {}, found {}",
                    w["n"],
                    w["row"],
                    w["col"],
                    text(&w["expected"]),
                    text(&w["actual"])
                );
            }
        }
        Command::Hypotheses => {
            let h = &v["hypotheses"];
            let ds = &h["down_surjective"];
            let _ = writeln!(
                out,
                "down maps surjective through n = {}: {}",
                ds["surjective_up_to"],
                verdict(
                    ds["consistent"] == Value::Bool(true)
                        && ds["entries"]
                            .as_array()
                            .into_iter()
                            .flatten()
                            .all(|e| e["down_surjective"] == Value::Bool(true))
                )
            );
            let ri = &h["rank_inequality"];
            let _ = writeln!(
                out,
                "rank inequality for {} < n <= {}: {}",
                ri["l"],
                ri["n_max"],
                verdict(ri["holds"] == Value::Bool(true))
            );
            for pair in h["base_cases_rcf"].as_array().into_iter().flatten() {
                let _ = writeln!(out, "base case DU_{} in canonical form: {}", pair[0], text(&pair[1]).to_uppercase());
            }
            let rs = &v["rank_sizes"];
            let _ = writeln!(
                out,
                "{}: {}",
                text(&rs["identity"]),
                verdict(rs["passed"] == Value::Bool(true))
            );
            let _ = writeln!(out, "overall: {}", verdict(v["passed"] == Value::Bool(true)));
        }
        Command::Predict => {
            let rows: Vec<Vec<String>> = v["records"]
                .as_array()
                .into_iter()
                .flatten()
                .map(|r| {
                    let ok = r["checks"]
                        .as_object()
                        .is_some_and(|c| c.values().all(|x| x == "pass"));
                    vec![
                        r["n"].to_string(),
                        r["p_n"].to_string(),
                        r["m"].to_string(),
                        verdict(ok).into(),
                        polys(&r["factors"]),
                    ]
                })
                .collect();
            out.push_str(&columns(&["n", "p_n", "m", "checks", "invariant factors of xI - DU_n"], &rows));
        }
        Command::Verify { .. } => {
            let h = &v["header"];
            let _ = writeln!(
                out,
                "spec {} (r = {}), l = {}, seed = {}, convention {}",
                text(&h["spec"]),
                h["r"],
                h["l"],
                h["seed"],
                text(&h["convention"])
            );
            let _ = writeln!(out, "axioms: {}", verdict(v["axioms"]["passed"] == Value::Bool(true)));
            let preds_ok = v["predictions"]
                .as_array()
                .into_iter()
                .flatten()
                .all(|r| r["checks"].as_object().is_some_and(|c| c.values().all(|x| x == "pass")));
            let _ = writeln!(out, "predictions: {}", verdict(preds_ok));
            let rows: Vec<Vec<String>> = v["ranks"]
                .as_array()
                .into_iter()
                .flatten()
                .map(|r| {
                    let obstructions: Vec<String> = r["obstructions"]
                        .as_array()
                        .into_iter()
                        .flatten()
                        .map(|o| text(&o["code"]))
                        .collect();
                    let mut row = vec![
                        r["n"].to_string(),
                        r["p_n"].to_string(),
                        text(&r["method"]),
                        text(&r["rcf"]).to_uppercase(),
                        text(&r["certificate"]).to_uppercase(),
                        if r["matches_prediction"] == Value::Bool(true) { "yes" } else { "no" }.into(),
                        polys(&r["invariant_factors"]),
                    ];
                    if !obstructions.is_empty() {
                        row.push(obstructions.join(","));
                    }
                    if let Some(ms) = r["timing_ms"].as_u64() {
                        row.push(format!("{ms} ms"));
                    }
                    row
                })
                .collect();
            out.push_str(&columns(
                &["n", "p_n", "method", "rcf", "cert", "match", "invariant factors of DU_n + xI"],
                &rows,
            ));
            let _ = writeln!(out, "status: {}", text(&v["status"]));
        }
        Command::Rcf { .. } => {
            let _ = writeln!(
                out,
                "DU_{} for {}: method {}, verified {}",
                v["n"],
                text(&v["spec"]),
                text(&v["method"]),
                v["verified"]
            );
            let d = &v["decomposition"];
            if !d.is_null() {
                let gens = d["generators"].as_array().cloned().unwrap_or_default();
                let anns = d["annihilators"].as_array().cloned().unwrap_or_default();
                for (i, (g, a)) in gens.iter().zip(&anns).enumerate() {
                    let g: Vec<String> = g.as_array().into_iter().flatten().map(text).collect();
                    let _ = writeln!(out, "v_{} = ({})  a_{} = {}", i + 1, g.join(", "), i + 1, poly(a));
                }
            }
            for o in v["obstructions"].as_array().into_iter().flatten() {
                let _ = writeln!(out, "{} at n = {}: {}", text(&o["code"]), o["n"], text(&o["detail"]));
            }
        }
    }
    out
}
