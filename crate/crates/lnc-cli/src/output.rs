//! JSON reports and CSV tables.

use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::Result;
use convex_lnc::sections::SectionProbe;
use convex_lnc::ToolConfig;
use serde::Serialize;

#[derive(Serialize)]
pub struct Report<'a, T: Serialize> {
    pub command: &'a str,
    pub body: &'a str,
    pub config: &'a ToolConfig,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    pub result: T,
}

pub fn timestamp(deterministic: bool) -> Option<u64> {
    if deterministic {
        None
    } else {
        SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs())
    }
}

pub fn json<T: Serialize>(report: &Report<T>) -> Result<String> {
    Ok(serde_json::to_string_pretty(report)? + "\n")
}

/// 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// One row per path point (`index, y…, g…, jump from the previous row`),
/// then footer rows `max_jump`, `argmax` and `config`.
pub fn probe_csv(probe: &SectionProbe, cfg: &ToolConfig) -> Result<String> {
    let ydim = probe.path.first().map_or(0, |p| p.len());
    let gdim = probe.values.first().map_or(0, |p| p.len());
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    let mut header = vec!["index".to_string()];
    header.extend((0..ydim).map(|i| format!("y{i}")));
    header.extend((0..gdim).map(|i| format!("g{i}")));
    header.push("jump".into());
    w.write_record(&header)?;
    for (i, (y, g)) in probe.path.iter().zip(&probe.values).enumerate() {
        let mut row = vec![i.to_string()];
        row.extend(y.iter().map(|&v| num(v)));
        row.extend(g.iter().map(|&v| num(v)));
        row.push(if i == 0 { String::new() } else { num(probe.jumps[i - 1]) });
        w.write_record(&row)?;
    }
    w.write_record(["max_jump".to_string(), num(probe.max_jump)])?;
    w.write_record(["argmax".to_string(), probe.argmax.to_string()])?;
    w.write_record(["config".to_string(), serde_json::to_string(cfg)?])?;
    Ok(String::from_utf8(w.into_inner()?)?)
}
