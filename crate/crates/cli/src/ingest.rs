//! Converting ranking scores into permutations.
//!
//! The input is a CSV with columns `observer,item,score`, grouped into one
//! block per observer by first appearance. Every observer must score the
//! same items; ties are rejected since positions in a permutation are a total
//! order. The items sorted by the first observer's scores (highest first)
//! fix the position order; each output line then lists, per position, the
//! rank the item gets from that observer.

use std::fs;
use std::path::Path;

use thiserror::Error;

use permrank::rational::{parse_ratio, Ratio};

use crate::Outcome;

#[derive(Error, Debug)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("missing column {0:?} (expected observer,item,score)")]
    MissingColumn(&'static str),
    #[error("observer {observer:?}: tied scores for items {a:?} and {b:?}")]
    TiedScores {
        observer: String,
        a: String,
        b: String,
    },
    #[error("observer {observer:?} scored item {item:?} twice")]
    DuplicateItem { observer: String, item: String },
    #[error("observer {observer:?} ranks a different item set than {first:?}")]
    ItemSetMismatch { observer: String, first: String },
    #[error("row {row}: {message}")]
    BadRow { row: usize, message: String },
    #[error("no rows")]
    Empty,
}

pub struct RankingRecord {
    pub item: String,
    pub score: Ratio,
}

struct ObserverBlock {
    name: String,
    records: Vec<RankingRecord>,
}

fn read_blocks(path: &Path) -> Result<Vec<ObserverBlock>, IngestError> {
    let text = fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    let column = |name: &'static str| -> Result<usize, IngestError> {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or(IngestError::MissingColumn(name))
    };
    let observer_col = column("observer")?;
    let item_col = column("item")?;
    let score_col = column("score")?;

    let mut blocks: Vec<ObserverBlock> = Vec::new();
    for (row_index, record) in reader.records().enumerate() {
        let record = record?;
        let row = row_index + 2; // 1-based, after the header
        let field = |col: usize| -> Result<&str, IngestError> {
            record.get(col).map(str::trim).ok_or(IngestError::BadRow {
                row,
                message: "missing field".to_string(),
            })
        };
        let observer = field(observer_col)?.to_string();
        let item = field(item_col)?.to_string();
        let score = parse_ratio(field(score_col)?).map_err(|e| IngestError::BadRow {
            row,
            message: e.to_string(),
        })?;
        let block = match blocks.iter_mut().find(|b| b.name == observer) {
            Some(block) => block,
            None => {
                blocks.push(ObserverBlock {
                    name: observer.clone(),
                    records: Vec::new(),
                });
                blocks.last_mut().expect("just pushed")
            }
        };
        if block.records.iter().any(|r| r.item == item) {
            return Err(IngestError::DuplicateItem {
                observer: block.name.clone(),
                item,
            });
        }
        block.records.push(RankingRecord { item, score });
    }
    if blocks.is_empty() {
        return Err(IngestError::Empty);
    }
    Ok(blocks)
}

/// Rank of every item under one observer: 1 for the highest score.
fn ranks(block: &ObserverBlock) -> Result<Vec<(String, usize)>, IngestError> {
    for (a_idx, a) in block.records.iter().enumerate() {
        for b in &block.records[a_idx + 1..] {
            if a.score == b.score {
                return Err(IngestError::TiedScores {
                    observer: block.name.clone(),
                    a: a.item.clone(),
                    b: b.item.clone(),
                });
            }
        }
    }
    let mut order: Vec<&RankingRecord> = block.records.iter().collect();
    order.sort_by(|a, b| b.score.cmp(&a.score));
    Ok(order
        .into_iter()
        .enumerate()
        .map(|(k, r)| (r.item.clone(), k + 1))
        .collect())
}

pub fn build_permutation_file(path: &Path) -> Result<String, IngestError> {
    let blocks = read_blocks(path)?;
    let first = &blocks[0];
    let first_ranks = ranks(first)?;

    // Position order: the first observer's ranking, best first.
    let mut items: Vec<String> = first_ranks.iter().map(|(item, _)| item.clone()).collect();
    items.sort_by_key(|item| {
        first_ranks
            .iter()
            .find(|(i, _)| i == item)
            .map(|(_, rank)| *rank)
            .expect("item came from the ranking")
    });

    let mut out = String::new();
    out.push_str(&format!(
        "# positions fixed by observer {:?} (rank 1 = highest score)\n",
        first.name
    ));
    for (k, item) in items.iter().enumerate() {
        out.push_str(&format!("# position {}: {}\n", k + 1, item));
    }
    for (k, block) in blocks.iter().enumerate() {
        out.push_str(&format!("# line {}: observer {:?}\n", k + 1, block.name));
    }

    for block in &blocks {
        if block.records.len() != items.len()
            || !items
                .iter()
                .all(|item| block.records.iter().any(|r| &r.item == item))
        {
            return Err(IngestError::ItemSetMismatch {
                observer: block.name.clone(),
                first: first.name.clone(),
            });
        }
        let block_ranks = ranks(block)?;
        let line: Vec<String> = items
            .iter()
            .map(|item| {
                block_ranks
                    .iter()
                    .find(|(i, _)| i == item)
                    .map(|(_, rank)| rank.to_string())
                    .expect("item sets match")
            })
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    Ok(out)
}

pub fn cmd_ingest(csv_path: &Path, output: Option<&Path>) -> Result<Outcome, String> {
    let rendered = build_permutation_file(csv_path).map_err(|e| e.to_string())?;
    match output {
        Some(path) => {
            fs::write(path, &rendered)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            println!("wrote {}", path.display());
        }
        None => print!("{rendered}"),
    }
    Ok(Outcome::Pass)
}
