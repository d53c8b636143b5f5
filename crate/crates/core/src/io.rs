//! File ingestion and result serialization.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{builtin_motif, MotifPattern, RegulatoryNetwork, Relation};

/// On-disk network layouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NetworkFormat {
    /// `src<TAB>dst<TAB>A|R|U`.
    #[default]
    Tsv,
    /// `TF<TAB>target<TAB>Activation|Repression|Unknown<TAB>pmids`.
    Trrust,
}

impl std::str::FromStr for NetworkFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "tsv" => Ok(NetworkFormat::Tsv),
            "trrust" => Ok(NetworkFormat::Trrust),
            other => Err(format!("unknown network format '{other}' (expected tsv or trrust)")),
        }
    }
}

/// One row of a TRRUST dump.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrrustRecord {
    pub tf: String,
    pub target: String,
    pub relation_raw: String,
    pub pmids: Vec<String>,
}

impl TrrustRecord {
    pub fn relation(&self) -> Option<Relation> {
        match self.relation_raw.as_str() {
            "Activation" => Some(Relation::Activation),
            "Repression" => Some(Relation::Repression),
            "Unknown" => Some(Relation::Unknown),
            _ => None,
        }
    }
}

pub fn parse_trrust_records(text: &str, path: &Path) -> Result<Vec<TrrustRecord>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(Error::parse(
                path,
                i + 1,
                format!(
                    "expected 4 tab-separated fields (TF, target, relation, PMIDs), found {}",
                    fields.len()
                ),
            ));
        }
        let rec = TrrustRecord {
            tf: fields[0].trim().to_owned(),
            target: fields[1].trim().to_owned(),
            relation_raw: fields[2].trim().to_owned(),
            pmids: fields[3]
                .split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::to_owned)
                .collect(),
        };
        if rec.tf.is_empty() || rec.target.is_empty() {
            return Err(Error::parse(path, i + 1, "empty gene symbol"));
        }
        if rec.relation().is_none() {
            return Err(Error::parse(
                path,
                i + 1,
                format!(
                    "relation must be Activation, Repression or Unknown, found '{}'",
                    rec.relation_raw
                ),
            ));
        }
        out.push(rec);
    }
    Ok(out)
}

/// Deduplicated network from TRRUST text. A `(tf, target)` pair listed with
/// different relations becomes Unknown.
pub fn parse_trrust_str(name: impl Into<String>, text: &str, path: &Path) -> Result<RegulatoryNetwork> {
    let name = name.into();
    let records = parse_trrust_records(text, path)?;
    let mut pairs: BTreeMap<(String, String), Relation> = BTreeMap::new();
    for rec in records {
        let rel = rec.relation().expect("validated while parsing");
        let key = (rec.tf, rec.target);
        match pairs.get(&key) {
            Some(&prev) if prev != rel => {
                log::warn!(
                    "{}: {} -> {} listed as {prev} and {rel}; using U",
                    path.display(),
                    key.0,
                    key.1
                );
                pairs.insert(key, Relation::Unknown);
            }
            Some(_) => {}
            None => {
                pairs.insert(key, rel);
            }
        }
    }
    let edges: Vec<(String, String, Relation)> = pairs.into_iter().map(|((s, d), r)| (s, d, r)).collect();
    let net = RegulatoryNetwork::from_named_edges(name.clone(), std::iter::empty::<&str>(), &edges)?;
    if net.edge_count() == 0 {
        return Err(Error::EmptyNetwork(name));
    }
    Ok(net)
}

pub fn parse_trrust(path: &Path) -> Result<RegulatoryNetwork> {
    let text = fs::read_to_string(path)?;
    parse_trrust_str(file_stem(path), &text, path)
}

/// Gene list: one symbol per line, optionally `symbol<TAB>score`. Scored
/// symbols below `min_score` are left out; unscored symbols are kept.
pub fn parse_gene_list(text: &str, path: &Path, min_score: f64) -> Result<BTreeSet<String>> {
    let mut genes = BTreeSet::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let symbol = fields[0].trim();
        if symbol.is_empty() {
            return Err(Error::parse(path, i + 1, "empty gene symbol"));
        }
        match fields.len() {
            1 => {}
            2 => {
                let score: f64 = fields[1]
                    .trim()
                    .parse()
                    .map_err(|e| Error::parse(path, i + 1, format!("score '{}': {e}", fields[1])))?;
                if score < min_score {
                    continue;
                }
            }
            n => return Err(Error::parse(path, i + 1, format!("expected 1 or 2 fields, found {n}"))),
        }
        genes.insert(symbol.to_owned());
    }
    Ok(genes)
}

pub fn read_gene_list(path: &Path, min_score: f64) -> Result<BTreeSet<String>> {
    parse_gene_list(&fs::read_to_string(path)?, path, min_score)
}

/// Subgraph induced on the network nodes named in `genes`.
pub fn filter_by_gene_list(net: &RegulatoryNetwork, genes: &BTreeSet<String>) -> RegulatoryNetwork {
    let keep: BTreeSet<usize> = (0..net.node_count())
        .filter(|&v| genes.contains(net.node_name(v)))
        .collect();
    net.induced_subgraph(&keep, net.name()).0
}

pub fn read_network(path: &Path, format: NetworkFormat) -> Result<RegulatoryNetwork> {
    match format {
        NetworkFormat::Trrust => parse_trrust(path),
        NetworkFormat::Tsv => RegulatoryNetwork::parse_tsv(file_stem(path), &fs::read_to_string(path)?, path),
    }
}

pub fn write_network(path: &Path, net: &RegulatoryNetwork) -> Result<()> {
    fs::write(path, net.to_tsv())?;
    Ok(())
}

/// A builtin motif name, or the path of a motif edge-list file.
pub fn load_motif(spec: &str) -> Result<MotifPattern> {
    if let Some(m) = builtin_motif(spec) {
        return Ok(m);
    }
    let path = Path::new(spec);
    if path.is_file() {
        return MotifPattern::parse_tsv(file_stem(path), &fs::read_to_string(path)?, path);
    }
    Err(Error::UnknownMotif(spec.to_owned()))
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "network".into())
}

/// One line of the fixed summary table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub instance: String,
    pub motif: String,
    pub solver: String,
    pub motif_count: usize,
    #[serde(rename = "AC")]
    pub activation_count: usize,
    #[serde(rename = "RC")]
    pub repression_count: usize,
    #[serde(rename = "UC")]
    pub unknown_count: usize,
    pub elapsed_ms: f64,
    pub seed: u64,
    /// Generator parameters, empty for real networks.
    pub n: Option<usize>,
    pub d: Option<f64>,
    pub r: Option<f64>,
}

pub const SUMMARY_COLUMNS: [&str; 12] = [
    "instance",
    "motif",
    "solver",
    "motif_count",
    "AC",
    "RC",
    "UC",
    "elapsed_ms",
    "seed",
    "n",
    "d",
    "r",
];

pub fn write_summary_csv<W: std::io::Write>(out: W, rows: &[SummaryRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(SUMMARY_COLUMNS).map_err(csv_err)?;
    }
    for row in rows {
        w.serialize(row).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub(crate) fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Io(std::io::Error::other(format!("{other:?}"))),
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}
