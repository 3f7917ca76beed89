//! Deterministic result files: CSV for distributions and counts, JSON for
//! summaries. No timestamps or wall times are written, so identical
//! invocations produce byte-identical files.

use noisim::{Distribution, ShotCounts};

pub fn distribution_csv(d: &Distribution) -> String {
    let mut out = String::from("outcome,probability\n");
    for (o, p) in d.probs().iter().enumerate() {
        out.push_str(&format!("{o},{p}\n"));
    }
    out
}

pub fn counts_csv(c: &ShotCounts) -> String {
    let mut out = String::from("outcome,count\n");
    for (o, n) in c.counts().iter().enumerate() {
        out.push_str(&format!("{o},{n}\n"));
    }
    out
}

pub fn history_csv(history: &[f64]) -> String {
    let mut out = String::from("generation,best_hd\n");
    for (g, h) in history.iter().enumerate() {
        out.push_str(&format!("{g},{h}\n"));
    }
    out
}

pub fn parameters_csv(labels: &[String], pre: &[f64], post: &[f64]) -> String {
    let mut out = String::from("name,pre,post\n");
    for ((name, a), b) in labels.iter().zip(pre).zip(post) {
        out.push_str(&format!("{name},{a},{b}\n"));
    }
    out
}

pub fn to_json_pretty<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}
