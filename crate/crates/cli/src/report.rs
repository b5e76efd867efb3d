use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use serde_json::{json, Value};

use opident::classify::{CaseReport, TheoremReport};

pub const SCHEMA: &str = "opident-report/1";

/// Writes either the text form or a JSON document that embeds the run
/// configuration.
pub struct Emitter {
    json: bool,
    output: Option<PathBuf>,
    header: Value,
}

impl Emitter {
    pub fn new(json: bool, output: Option<PathBuf>, header: Value) -> Self {
        Emitter { json, output, header }
    }

    pub fn emit(&self, value: &Value, text: &str) -> Result<()> {
        let body = if self.json {
            let mut doc = json!({ "schema": SCHEMA });
            if let (Some(d), Some(h)) = (doc.as_object_mut(), self.header.as_object()) {
                d.extend(h.clone());
                d.insert("result".into(), value.clone());
            }
            serde_json::to_string_pretty(&doc)? + "\n"
        } else {
            text.to_string()
        };
        match &self.output {
            Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display())),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(body.as_bytes())?;
                Ok(out.flush()?)
            }
        }
    }
}

pub fn case_text(rep: &CaseReport) -> String {
    let mut s = format!(
        "case {}: identity block {}, residual {}x{} ({} nonzero rows)\n",
        rep.case, rep.identity_block, rep.residual.rows, rep.residual.cols, rep.residual_nonzero_rows
    );
    if rep.full_rank_for_all_parameters {
        s.push_str("  rank 20 for every value of the free parameters\n");
    }
    for i in &rep.ideals {
        if let Some(g) = &i.generators {
            s.push_str(&format!(
                "  r={}: {} minors, {} nonzero, {} distinct monic, degrees {}..{}",
                i.r,
                g.total_minors,
                g.nonzero_count,
                g.monic_distinct_count,
                g.degree_min.unwrap_or(0),
                g.degree_max.unwrap_or(0)
            ));
        }
        match i.gbasis_size {
            Some(n) => s.push_str(&format!(", Groebner basis of {n}\n")),
            None => s.push_str(&format!(", {}\n", i.status)),
        }
        if i.gbasis_size.is_some_and(|n| n <= 12) {
            s.push_str(&format!("    {{{}}}\n", i.gbasis.join(", ")));
        }
    }
    for p in &rep.strata {
        s.push_str(&format!("  rank {}: {}   {}\n", p.rank, p.vector, p.equation));
    }
    for c in &rep.checks {
        let tag = match (c.passed, c.informational) {
            (true, _) => "ok  ",
            (false, true) => "note",
            (false, false) => "FAIL",
        };
        s.push_str(&format!("  [{tag}] {} {}\n", c.name, c.detail).replace("  \n", "\n"));
    }
    s
}

pub fn theorem_text(rep: &TheoremReport) -> String {
    let mut s = String::new();
    for c in &rep.identities {
        let mark = if c.claimed_rank == c.observed_rank { "ok" } else { "FAIL" };
        s.push_str(&format!("[{mark}] rank {:>2}  {}\n", c.observed_rank, c.equation));
    }
    s.push_str(&format!(
        "random points: {} trials, seed {}, ranks {}..{}\n",
        rep.generic.trials, rep.generic.seed, rep.generic.min_rank, rep.generic.max_rank
    ));
    let cases: Vec<String> = rep.full_rank_cases.iter().map(|k| k.to_string()).collect();
    s.push_str(&format!("full rank for all parameters in cases {}\n", cases.join(", ")));
    for f in &rep.failures {
        s.push_str(&format!("FAIL {f}\n"));
    }
    s.push_str(&rep.summary());
    s.push('\n');
    s
}
