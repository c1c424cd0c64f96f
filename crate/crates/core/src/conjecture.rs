//! A verifier for the structural characterization of the weighted-distance
//! spaces: an explicit finite metric space is examined for the four
//! conditions the characterization requires (point count `n!`, unique
//! antipodes, pseudolinear quadruples through antipodes, and maximal additive
//! chains of exactly `n(n-1)/2` edges), and for order 3 a weight and an
//! explicit isometry onto the permutation space are constructed.

use num::traits::{Signed, Zero};
use thiserror::Error;

use crate::metric::{distance, WeightMatrix};
use crate::perm::{IndexPair, Permutation};
use crate::quadruples::pseudolinear_pairing;
use crate::rational::{format_ratio, parse_ratio, Ratio};

/// Largest order embedded by default (120 points for order 5).
pub const DEFAULT_EMBED_CAP: usize = 5;

/// Largest table size for which the additive-chain search runs by default.
pub const DEFAULT_CHAIN_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricAxiom {
    Shape,
    Symmetry,
    ZeroDiagonal,
    PositiveOffDiagonal,
    TriangleInequality,
}

impl std::fmt::Display for MetricAxiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            MetricAxiom::Shape => "shape",
            MetricAxiom::Symmetry => "symmetry",
            MetricAxiom::ZeroDiagonal => "zero diagonal",
            MetricAxiom::PositiveOffDiagonal => "positive off-diagonal",
            MetricAxiom::TriangleInequality => "triangle inequality",
        };
        write!(f, "{name}")
    }
}

#[derive(Error, Debug, Clone, PartialEq)]
pub enum ConjectureError {
    #[error("metric axiom violated ({axiom}): {detail}")]
    MetricAxiomViolation { axiom: MetricAxiom, detail: String },
    #[error("weights must all be positive")]
    NotAMetric,
    #[error("order {n} exceeds the embedding cap {cap}")]
    OrderTooLarge { n: usize, cap: usize },
    #[error("no chain case applies; the table does not satisfy the required structure")]
    NoCaseApplies,
    #[error("metric table file, line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// An explicit finite metric space: point labels and an exact rational
/// distance matrix, validated on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricTable {
    labels: Vec<String>,
    dist: Vec<Vec<Ratio>>,
    diameter: Ratio,
}

impl MetricTable {
    pub fn new(labels: Vec<String>, dist: Vec<Vec<Ratio>>) -> Result<Self, ConjectureError> {
        let m = labels.len();
        if m == 0 || dist.len() != m || dist.iter().any(|row| row.len() != m) {
            return Err(ConjectureError::MetricAxiomViolation {
                axiom: MetricAxiom::Shape,
                detail: format!("expected a {m} x {m} matrix matching the labels"),
            });
        }
        for i in 0..m {
            if !dist[i][i].is_zero() {
                return Err(ConjectureError::MetricAxiomViolation {
                    axiom: MetricAxiom::ZeroDiagonal,
                    detail: format!("d({0},{0}) = {1}", labels[i], format_ratio(&dist[i][i])),
                });
            }
            for j in i + 1..m {
                if dist[i][j] != dist[j][i] {
                    return Err(ConjectureError::MetricAxiomViolation {
                        axiom: MetricAxiom::Symmetry,
                        detail: format!("d({},{}) != d({},{})", labels[i], labels[j], labels[j], labels[i]),
                    });
                }
                if !dist[i][j].is_positive() {
                    return Err(ConjectureError::MetricAxiomViolation {
                        axiom: MetricAxiom::PositiveOffDiagonal,
                        detail: format!(
                            "d({},{}) = {}",
                            labels[i],
                            labels[j],
                            format_ratio(&dist[i][j])
                        ),
                    });
                }
            }
        }
        for i in 0..m {
            for k in i + 1..m {
                for j in 0..m {
                    if j == i || j == k {
                        continue;
                    }
                    let via = &dist[i][j] + &dist[j][k];
                    if dist[i][k] > via {
                        return Err(ConjectureError::MetricAxiomViolation {
                            axiom: MetricAxiom::TriangleInequality,
                            detail: format!(
                                "d({},{}) > d({},{}) + d({},{})",
                                labels[i], labels[k], labels[i], labels[j], labels[j], labels[k]
                            ),
                        });
                    }
                }
            }
        }
        let diameter = dist
            .iter()
            .flatten()
            .max()
            .cloned()
            .unwrap_or_else(Ratio::zero);
        Ok(MetricTable {
            labels,
            dist,
            diameter,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn distance(&self, i: usize, j: usize) -> &Ratio {
        &self.dist[i][j]
    }

    pub fn diameter(&self) -> &Ratio {
        &self.diameter
    }

    /// Parses the table format: a header `points <m>`, a line of `m` labels,
    /// then `m` rows of `m` rational entries. Blank lines and `#` comments
    /// are skipped.
    pub fn parse(text: &str) -> Result<Self, ConjectureError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, line)| (k + 1, line.trim()))
            .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'));
        let (header_line, header) = lines.next().ok_or(ConjectureError::Parse {
            line: 0,
            message: "empty metric table file".to_string(),
        })?;
        let m = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["points", count] => count.parse::<usize>().map_err(|_| ConjectureError::Parse {
                line: header_line,
                message: format!("bad point count {count:?}"),
            })?,
            _ => {
                return Err(ConjectureError::Parse {
                    line: header_line,
                    message: format!("expected header \"points <m>\", got {header:?}"),
                })
            }
        };
        let (labels_line, labels_text) = lines.next().ok_or(ConjectureError::Parse {
            line: header_line,
            message: "missing labels line".to_string(),
        })?;
        let labels: Vec<String> = labels_text
            .split_whitespace()
            .map(str::to_string)
            .collect();
        if labels.len() != m {
            return Err(ConjectureError::Parse {
                line: labels_line,
                message: format!("expected {m} labels, got {}", labels.len()),
            });
        }
        let mut dist = Vec::with_capacity(m);
        for _ in 0..m {
            let (row_line, row_text) = lines.next().ok_or(ConjectureError::Parse {
                line: labels_line,
                message: format!("expected {m} matrix rows"),
            })?;
            let row: Result<Vec<Ratio>, _> = row_text
                .split_whitespace()
                .map(|tok| {
                    parse_ratio(tok).map_err(|e| ConjectureError::Parse {
                        line: row_line,
                        message: e.to_string(),
                    })
                })
                .collect();
            let row = row?;
            if row.len() != m {
                return Err(ConjectureError::Parse {
                    line: row_line,
                    message: format!("expected {m} entries, got {}", row.len()),
                });
            }
            dist.push(row);
        }
        MetricTable::new(labels, dist)
    }

    pub fn to_file_string(&self) -> String {
        let mut out = format!("points {}\n", self.len());
        out.push_str(&self.labels.join(" "));
        out.push('\n');
        for row in &self.dist {
            let rendered: Vec<String> = row.iter().map(format_ratio).collect();
            out.push_str(&rendered.join(" "));
            out.push('\n');
        }
        out
    }
}

/// The full distance table of a permutation space under a strict weight,
/// with points labeled by their value sequences in lexicographic order.
pub fn embed_sn(w: &WeightMatrix) -> Result<MetricTable, ConjectureError> {
    embed_sn_with_cap(w, DEFAULT_EMBED_CAP)
}

pub fn embed_sn_with_cap(w: &WeightMatrix, cap: usize) -> Result<MetricTable, ConjectureError> {
    if !w.is_metric() {
        return Err(ConjectureError::NotAMetric);
    }
    let n = w.order();
    if n > cap {
        return Err(ConjectureError::OrderTooLarge { n, cap });
    }
    let perms: Vec<Permutation> = Permutation::all(n).collect();
    let m = perms.len();
    let mut dist = vec![vec![Ratio::zero(); m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let d = distance(w, &perms[i], &perms[j]).expect("orders agree by construction");
            dist[i][j] = d.clone();
            dist[j][i] = d;
        }
    }
    // Table labels are single whitespace-free tokens in the file format, so
    // value sequences are joined with commas.
    let labels = perms
        .iter()
        .map(|p| {
            p.values()
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    MetricTable::new(labels, dist)
}

/// A witness for the chain condition: an additive chain from `anchor` to its
/// antipode passing through the pair `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainWitness {
    pub x: usize,
    pub y: usize,
    pub anchor: usize,
    pub chain: Vec<usize>,
}

/// The outcome of checking the four structural conditions on a table.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    /// Condition 1: the table has exactly `n!` points.
    pub size_ok: bool,
    /// Condition 2: every point has a unique antipode at diameter distance
    /// and the pairing is an involution; `antipode_map[i]` is the antipode of
    /// point `i` when the condition holds.
    pub antipode_map: Option<Vec<usize>>,
    /// Condition 3: every nondiametrical distinct pair, together with the
    /// two antipodes, forms a pseudolinear quadruple.
    pub quadruple_ok: bool,
    pub quadruple_failure: Option<(usize, usize)>,
    /// Condition 4: every distinct pair lies on an additive antipodal chain
    /// of exactly `n(n-1)/2` edges, and no longer additive antipodal chain
    /// exists.
    pub chain_ok: bool,
    pub chain_witnesses: Vec<ChainWitness>,
    pub chain_failure: Option<(usize, usize)>,
    /// An additive antipodal chain longer than `n(n-1)/2` edges, when one
    /// exists (which makes the condition fail).
    pub long_chain: Option<Vec<usize>>,
    /// Set when the table exceeded the chain-search cap, in which case the
    /// chain condition is reported as failed without being searched.
    pub chain_search_skipped: bool,
    pub overall: bool,
}

/// Checks the four structural conditions for order `n` with the default
/// chain-search cap.
pub fn check_conditions(table: &MetricTable, n: usize) -> ConditionReport {
    check_conditions_with_chain_cap(table, n, DEFAULT_CHAIN_CAP)
}

pub fn check_conditions_with_chain_cap(
    table: &MetricTable,
    n: usize,
    chain_cap: usize,
) -> ConditionReport {
    let m = table.len();
    let factorial: usize = (1..=n).product();
    let size_ok = m == factorial;

    let antipode_map = compute_antipodes(table);

    let mut quadruple_ok = true;
    let mut quadruple_failure = None;
    let mut chain_ok = true;
    let mut chain_witnesses = Vec::new();
    let mut chain_failure = None;
    let mut long_chain = None;
    let mut chain_search_skipped = false;

    if let Some(anti) = &antipode_map {
        'outer: for x in 0..m {
            for y in x + 1..m {
                if anti[x] == y {
                    continue;
                }
                let mut points = [x, y, anti[x], anti[y]];
                points.sort_unstable();
                let d = |a: usize, b: usize| table.distance(points[a], points[b]).clone();
                if pseudolinear_pairing(&d).is_none() {
                    quadruple_ok = false;
                    quadruple_failure = Some((x, y));
                    break 'outer;
                }
            }
        }

        if m > chain_cap {
            chain_ok = false;
            chain_search_skipped = true;
        } else {
            let edges = IndexPair::count(n);
            'pairs: for x in 0..m {
                for y in x + 1..m {
                    match chain_for_pair(table, anti, x, y, edges) {
                        Some(witness) => chain_witnesses.push(witness),
                        None => {
                            chain_ok = false;
                            chain_failure = Some((x, y));
                            break 'pairs;
                        }
                    }
                }
            }
            if chain_ok {
                for (z, &target) in anti.iter().enumerate() {
                    if let Some(chain) = find_additive_chain(table, z, target, edges + 1, None) {
                        chain_ok = false;
                        long_chain = Some(chain);
                        break;
                    }
                }
            }
        }
    } else {
        quadruple_ok = false;
        chain_ok = false;
    }

    let overall = size_ok && antipode_map.is_some() && quadruple_ok && chain_ok;
    ConditionReport {
        size_ok,
        antipode_map,
        quadruple_ok,
        quadruple_failure,
        chain_ok,
        chain_witnesses,
        chain_failure,
        long_chain,
        chain_search_skipped,
        overall,
    }
}

fn compute_antipodes(table: &MetricTable) -> Option<Vec<usize>> {
    let m = table.len();
    if m < 2 {
        return None;
    }
    let diam = table.diameter();
    let mut anti = Vec::with_capacity(m);
    for i in 0..m {
        let mut at_diameter = (0..m).filter(|&j| j != i && table.distance(i, j) == diam);
        let first = at_diameter.next()?;
        if at_diameter.next().is_some() {
            return None;
        }
        anti.push(first);
    }
    if anti.iter().enumerate().any(|(i, &j)| anti[j] != i) {
        return None;
    }
    Some(anti)
}

fn chain_for_pair(
    table: &MetricTable,
    anti: &[usize],
    x: usize,
    y: usize,
    edges: usize,
) -> Option<ChainWitness> {
    let m = table.len();
    let anchors = std::iter::once(x)
        .chain(std::iter::once(y))
        .chain((0..m).filter(|&z| z != x && z != y));
    for z in anchors {
        if let Some(chain) = find_additive_chain(table, z, anti[z], edges, Some((x, y))) {
            return Some(ChainWitness {
                x,
                y,
                anchor: z,
                chain,
            });
        }
    }
    None
}

/// Depth-first search for an additive chain of exactly `edges` edges from
/// `start` to `target`: a sequence of points whose pairwise distances all
/// equal the sums of the consecutive distances between them. Candidate
/// points are pruned by additivity against the whole prefix and by the
/// remaining distance to the target.
fn find_additive_chain(
    table: &MetricTable,
    start: usize,
    target: usize,
    edges: usize,
    must_contain: Option<(usize, usize)>,
) -> Option<Vec<usize>> {
    if edges == 0 {
        return None;
    }
    let mut chain = vec![start];
    let mut prefix = vec![Ratio::zero()];
    if extend_chain(table, target, edges, must_contain, &mut chain, &mut prefix) {
        Some(chain)
    } else {
        None
    }
}

fn extend_chain(
    table: &MetricTable,
    target: usize,
    edges: usize,
    must_contain: Option<(usize, usize)>,
    chain: &mut Vec<usize>,
    prefix: &mut Vec<Ratio>,
) -> bool {
    let position = chain.len();
    if position == edges + 1 {
        debug_assert_eq!(*chain.last().expect("nonempty"), target);
        if let Some((x, y)) = must_contain {
            return chain.contains(&x) && chain.contains(&y);
        }
        return true;
    }
    // Only the final slot may hold the target.
    let candidates: Vec<usize> = if position == edges {
        vec![target]
    } else {
        (0..table.len()).filter(|&w| w != target).collect()
    };
    let total = table.distance(chain[0], target).clone();
    'candidates: for w in candidates {
        let last = *chain.last().expect("nonempty");
        if w == last || chain.contains(&w) {
            continue;
        }
        let step = table.distance(last, w);
        if !step.is_positive() {
            continue;
        }
        let new_sum = &prefix[position - 1] + step;
        // The chain must end at the target additively.
        if table.distance(w, target) != &(&total - &new_sum) {
            continue;
        }
        for i in 0..position - 1 {
            if table.distance(chain[i], w) != &(&new_sum - &prefix[i]) {
                continue 'candidates;
            }
        }
        if let Some((x, y)) = must_contain {
            // Interior slots left after placing w; the final slot is the
            // target.
            let interior_left = edges.saturating_sub(position + 1);
            let mut needed = 0usize;
            for e in [x, y] {
                if e != w && e != target && !chain.contains(&e) {
                    needed += 1;
                }
            }
            if needed > interior_left {
                continue;
            }
        }
        chain.push(w);
        prefix.push(new_sum);
        if extend_chain(table, target, edges, must_contain, chain, prefix) {
            return true;
        }
        chain.pop();
        prefix.pop();
    }
    false
}

/// A weight and an explicit distance-preserving relabeling of a 6-point
/// table onto the order-3 permutation space.
#[derive(Debug, Clone, PartialEq)]
pub struct IsometryN3 {
    pub weight: WeightMatrix,
    /// `mapping[i]` is the permutation assigned to table point `i`.
    pub mapping: Vec<Permutation>,
    /// The 4-point additive chain of table indices the construction was read
    /// off from.
    pub case_chain: [usize; 4],
}

/// Constructs a weight and an isometry for a 6-point table satisfying the
/// four structural conditions for order 3.
///
/// The three antipodal pairs are labeled off the table, every admissible
/// 4-point chain shape between the first antipodal pair is tried in a fixed
/// deterministic order, and the first chain that is additive and whose
/// induced weight reproduces all 15 distances exactly is returned. Tables
/// that satisfy the conditions but have diameter different from 1 match no
/// weight (every strict-weight space has diameter exactly 1), so they are
/// reported as `NoCaseApplies`.
pub fn isometry_search_n3(table: &MetricTable) -> Result<IsometryN3, ConjectureError> {
    if table.len() != 6 {
        return Err(ConjectureError::NoCaseApplies);
    }
    let anti = compute_antipodes(table).ok_or(ConjectureError::NoCaseApplies)?;

    // Label the three antipodal pairs (x1, x4), (x2, x5), (x3, x6) off the
    // table in index order.
    let x1 = 0usize;
    let x4 = anti[x1];
    let x2 = (0..6).find(|&i| i != x1 && i != x4).expect("six points");
    let x5 = anti[x2];
    let x3 = (0..6)
        .find(|&i| i != x1 && i != x4 && i != x2 && i != x5)
        .expect("six points");
    let x6 = anti[x3];

    let d = |a: usize, b: usize| table.distance(a, b).clone();
    let diam = table.diameter().clone();

    // Side lengths around the hexagon pattern; each must agree with its
    // antipodal counterpart, and opposite sides must sum to the diameter.
    let side_pairs = [
        ((x1, x2), (x4, x5)),
        ((x2, x3), (x5, x6)),
        ((x3, x4), (x6, x1)),
        ((x2, x4), (x1, x5)),
        ((x2, x6), (x3, x5)),
        ((x1, x3), (x4, x6)),
    ];
    for ((a1, a2), (b1, b2)) in side_pairs {
        if d(a1, a2) != d(b1, b2) {
            return Err(ConjectureError::NoCaseApplies);
        }
    }
    if d(x1, x2) + d(x2, x4) != diam
        || d(x2, x3) + d(x2, x6) != diam
        || d(x3, x4) + d(x1, x3) != diam
    {
        return Err(ConjectureError::NoCaseApplies);
    }

    // Candidate middle pairs (u, v) for a chain x1, u, v, x4, skipping the
    // two antipodal middles; original shapes first, then their mirror
    // images.
    let cases = [
        (x6, x5),
        (x6, x2),
        (x5, x3),
        (x5, x6),
        (x3, x2),
        (x3, x5),
        (x2, x6),
        (x2, x3),
    ];
    let identity = Permutation::identity(3);
    let targets: [Permutation; 4] = [
        identity.clone(),
        "1 3 2".parse().expect("valid"),
        "2 3 1".parse().expect("valid"),
        identity.ordinal_inverse(),
    ];
    for (u, v) in cases {
        let additive = d(x1, u) + d(u, v) == d(x1, v)
            && d(u, v) + d(v, x4) == d(u, x4)
            && d(x1, u) + d(u, v) + d(v, x4) == diam;
        if !additive {
            continue;
        }
        // Chain vertices map onto one half of the hexagon; antipodes map to
        // ordinal inverses.
        let mut mapping: Vec<Option<Permutation>> = vec![None; 6];
        for (point, image) in [x1, u, v, x4].into_iter().zip(targets.iter()) {
            mapping[point] = Some(image.clone());
        }
        mapping[anti[u]] = Some(targets[1].ordinal_inverse());
        mapping[anti[v]] = Some(targets[2].ordinal_inverse());
        let mapping: Vec<Permutation> = mapping
            .into_iter()
            .map(|p| p.expect("all six points assigned"))
            .collect();

        // Edge weights read off the chain: the hexagon half used above
        // crosses the pairs (2,3), (1,3), (1,2) in that order.
        let entries = vec![
            (IndexPair::new(2, 3).expect("valid"), d(x1, u)),
            (IndexPair::new(1, 3).expect("valid"), d(u, v)),
            (IndexPair::new(1, 2).expect("valid"), d(v, x4)),
        ];
        let Ok(weight) = WeightMatrix::new(3, entries) else {
            continue;
        };

        let verified = (0..6).all(|i| {
            (i + 1..6).all(|j| {
                distance(&weight, &mapping[i], &mapping[j])
                    .map(|dw| &dw == table.distance(i, j))
                    .unwrap_or(false)
            })
        });
        if verified {
            return Ok(IsometryN3 {
                weight,
                mapping,
                case_chain: [x1, u, v, x4],
            });
        }
    }
    Err(ConjectureError::NoCaseApplies)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::distance;
    use crate::rational::ratio;

    fn pair(i: usize, j: usize) -> IndexPair {
        IndexPair::new(i, j).unwrap()
    }

    /// The 6-point hexagon pattern: antipodal pairs (0,3), (1,4), (2,5),
    /// sides a..f placed as in the weighted hexagon, diameter `diam`.
    fn hexagon_table(
        a: Ratio,
        b: Ratio,
        c: Ratio,
        d: Ratio,
        e: Ratio,
        f: Ratio,
        diam: Ratio,
    ) -> Result<MetricTable, ConjectureError> {
        let labels = (1..=6).map(|k| format!("x{k}")).collect();
        let mut m = vec![vec![Ratio::zero(); 6]; 6];
        let mut set = |i: usize, j: usize, value: Ratio| {
            m[i][j] = value.clone();
            m[j][i] = value;
        };
        set(0, 3, diam.clone());
        set(1, 4, diam.clone());
        set(2, 5, diam);
        set(0, 1, a.clone());
        set(3, 4, a);
        set(1, 2, b.clone());
        set(4, 5, b);
        set(2, 3, c.clone());
        set(5, 0, c);
        set(1, 3, d.clone());
        set(0, 4, d);
        set(1, 5, e.clone());
        set(2, 4, e);
        set(0, 2, f.clone());
        set(3, 5, f);
        MetricTable::new(labels, m)
    }

    #[test]
    fn validates_metric_axioms() {
        let table = hexagon_table(
            ratio(1, 1),
            ratio(1, 1),
            ratio(1, 1),
            ratio(2, 1),
            ratio(2, 1),
            ratio(2, 1),
            ratio(3, 1),
        )
        .unwrap();
        assert_eq!(table.diameter(), &ratio(3, 1));

        let labels = vec!["a".to_string(), "b".to_string()];
        let asym = MetricTable::new(
            labels.clone(),
            vec![
                vec![ratio(0, 1), ratio(1, 1)],
                vec![ratio(2, 1), ratio(0, 1)],
            ],
        );
        assert!(matches!(
            asym,
            Err(ConjectureError::MetricAxiomViolation {
                axiom: MetricAxiom::Symmetry,
                ..
            })
        ));

        let zero_off = MetricTable::new(
            labels,
            vec![
                vec![ratio(0, 1), ratio(0, 1)],
                vec![ratio(0, 1), ratio(0, 1)],
            ],
        );
        assert!(matches!(
            zero_off,
            Err(ConjectureError::MetricAxiomViolation {
                axiom: MetricAxiom::PositiveOffDiagonal,
                ..
            })
        ));

        let triangle = MetricTable::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![ratio(0, 1), ratio(1, 1), ratio(5, 1)],
                vec![ratio(1, 1), ratio(0, 1), ratio(1, 1)],
                vec![ratio(5, 1), ratio(1, 1), ratio(0, 1)],
            ],
        );
        assert!(matches!(
            triangle,
            Err(ConjectureError::MetricAxiomViolation {
                axiom: MetricAxiom::TriangleInequality,
                ..
            })
        ));
    }

    #[test]
    fn embedding_examples() {
        let table = embed_sn(&WeightMatrix::kendall_tau(3)).unwrap();
        assert_eq!(table.len(), 6);
        assert_eq!(table.diameter(), &ratio(1, 1));

        let two = embed_sn(&WeightMatrix::kendall_tau(2)).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(two.distance(0, 1), &ratio(1, 1));

        let partial = WeightMatrix::new(3, vec![(pair(1, 2), ratio(1, 1))]).unwrap();
        assert!(matches!(embed_sn(&partial), Err(ConjectureError::NotAMetric)));
        assert!(matches!(
            embed_sn(&WeightMatrix::kendall_tau(6)),
            Err(ConjectureError::OrderTooLarge { .. })
        ));
    }

    #[test]
    fn all_ones_embedding_satisfies_all_conditions_for_order_3() {
        let table = embed_sn(&WeightMatrix::kendall_tau(3)).unwrap();
        let report = check_conditions(&table, 3);
        assert!(report.overall, "{report:?}");
        assert!(report.size_ok);
        assert!(report.quadruple_ok);
        assert!(report.chain_ok);
        assert_eq!(report.chain_witnesses.len(), 15);
        for witness in &report.chain_witnesses {
            assert_eq!(witness.chain.len(), 4);
        }
        assert!(report.long_chain.is_none());
    }

    #[test]
    fn size_condition_fails_for_wrong_point_count() {
        let labels = (0..5).map(|k| format!("p{k}")).collect::<Vec<_>>();
        let mut dist = vec![vec![Ratio::zero(); 5]; 5];
        for (i, row) in dist.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                if i != j {
                    *entry = ratio(1, 1);
                }
            }
        }
        // Make antipodes unique by stretching one pairing per point; a plain
        // equilateral space has no unique antipode, which is also a failure.
        let table = MetricTable::new(labels, dist).unwrap();
        let report = check_conditions(&table, 3);
        assert!(!report.size_ok);
        assert!(!report.overall);
        assert!(report.antipode_map.is_none());
    }

    #[test]
    fn perturbed_hexagon_fails_the_quadruple_condition() {
        // Diameter 1 pattern from the all-ones weights, then one side length
        // moved off its antipodal partner while keeping a valid metric.
        let table = hexagon_table(
            ratio(1, 3),
            ratio(1, 3),
            ratio(1, 3),
            ratio(2, 3),
            ratio(2, 3),
            ratio(2, 3),
            ratio(1, 1),
        )
        .unwrap();
        assert!(check_conditions(&table, 3).overall);

        let labels = table.labels().to_vec();
        let mut dist: Vec<Vec<Ratio>> = (0..6)
            .map(|i| (0..6).map(|j| table.distance(i, j).clone()).collect())
            .collect();
        dist[0][1] = ratio(2, 5);
        dist[1][0] = ratio(2, 5);
        let perturbed = MetricTable::new(labels, dist).unwrap();
        let report = check_conditions(&perturbed, 3);
        assert!(!report.quadruple_ok);
        assert!(!report.overall);
    }

    #[test]
    fn isometry_recovers_a_weight_for_the_case_one_pattern() {
        // Pattern with b+c = d, a+c = e, a+b = f and diameter a+b+c = 1.
        let a = ratio(1, 6);
        let b = ratio(1, 3);
        let c = ratio(1, 2);
        let table = hexagon_table(
            a.clone(),
            b.clone(),
            c.clone(),
            &b + &c,
            &a + &c,
            &a + &b,
            ratio(1, 1),
        )
        .unwrap();
        let iso = isometry_search_n3(&table).unwrap();
        assert_eq!(iso.weight.weight(pair(1, 2)), a);
        assert_eq!(iso.weight.weight(pair(1, 3)), b);
        assert_eq!(iso.weight.weight(pair(2, 3)), c);
        let expected: Vec<Permutation> = ["1 2 3", "2 1 3", "3 1 2", "3 2 1", "2 3 1", "1 3 2"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(iso.mapping, expected);
    }

    #[test]
    fn isometry_recovers_a_weight_for_the_case_two_pattern() {
        // Pattern with c+e = a, c+d = b, d+e = f and diameter c+d+e = 1.
        let c = ratio(1, 6);
        let dd = ratio(1, 3);
        let e = ratio(1, 2);
        let a = &c + &e;
        let b = &c + &dd;
        let f = &dd + &e;
        let table = hexagon_table(a, b, c.clone(), dd.clone(), e.clone(), f, ratio(1, 1)).unwrap();
        let iso = isometry_search_n3(&table).unwrap();
        assert_eq!(iso.weight.weight(pair(1, 2)), dd);
        assert_eq!(iso.weight.weight(pair(1, 3)), e);
        assert_eq!(iso.weight.weight(pair(2, 3)), c);
        let expected: Vec<Permutation> = ["1 2 3", "2 3 1", "3 1 2", "3 2 1", "2 1 3", "1 3 2"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(iso.mapping, expected);
    }

    #[test]
    fn isometry_round_trip_reproduces_all_distances() {
        let w = WeightMatrix::new(
            3,
            vec![
                (pair(1, 2), ratio(2, 7)),
                (pair(1, 3), ratio(1, 7)),
                (pair(2, 3), ratio(4, 7)),
            ],
        )
        .unwrap();
        let table = embed_sn(&w).unwrap();
        let iso = isometry_search_n3(&table).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                if i == j {
                    continue;
                }
                assert_eq!(
                    &distance(&iso.weight, &iso.mapping[i], &iso.mapping[j]).unwrap(),
                    table.distance(i, j)
                );
            }
        }
    }

    #[test]
    fn scaled_tables_admit_no_isometry() {
        // Conditions hold after scaling, but every strict-weight space has
        // diameter exactly 1, so a diameter-3 table matches no weight.
        let table = hexagon_table(
            ratio(1, 1),
            ratio(1, 1),
            ratio(1, 1),
            ratio(2, 1),
            ratio(2, 1),
            ratio(2, 1),
            ratio(3, 1),
        )
        .unwrap();
        assert!(check_conditions(&table, 3).overall);
        assert!(matches!(
            isometry_search_n3(&table),
            Err(ConjectureError::NoCaseApplies)
        ));
    }

    #[test]
    fn random_embeddings_satisfy_all_conditions_for_orders_2_and_3() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for n in [2usize, 3] {
            for _ in 0..10 {
                let w = crate::sampling::random_strict_weights(n, &mut rng);
                let table = embed_sn(&w).unwrap();
                let report = check_conditions(&table, n);
                assert!(report.overall, "order {n}: {report:?}");
            }
        }
    }

    #[test]
    fn all_ones_embedding_satisfies_all_conditions_for_order_4() {
        let table = embed_sn(&WeightMatrix::kendall_tau(4)).unwrap();
        let report = check_conditions(&table, 4);
        assert!(report.overall, "{:?}", (report.size_ok, report.quadruple_ok, report.chain_ok));
        assert_eq!(report.chain_witnesses.len(), 276);
        for witness in &report.chain_witnesses {
            assert_eq!(witness.chain.len(), 7);
        }
    }

    #[test]
    fn isometry_chain_middles_are_never_antipodal() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(32);
        for _ in 0..10 {
            let w = crate::sampling::random_strict_weights(3, &mut rng);
            let table = embed_sn(&w).unwrap();
            let iso = isometry_search_n3(&table).unwrap();
            let [_, u, v, _] = iso.case_chain;
            assert_ne!(table.distance(u, v), table.diameter());
        }
    }

    #[test]
    fn table_file_round_trip() {
        let table = embed_sn(&WeightMatrix::kendall_tau(3)).unwrap();
        let text = table.to_file_string();
        let parsed = MetricTable::parse(&text).unwrap();
        assert_eq!(parsed, table);
        assert!(MetricTable::parse("points 2\na b\n0 1\n").is_err());
        assert!(MetricTable::parse("bogus\n").is_err());
    }
}
