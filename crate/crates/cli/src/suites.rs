//! Seeded invariant suites behind `permrank verify`. Each suite prints one
//! line per check with case counts, then a final PASS/FAIL verdict; output is
//! byte-identical for identical (inputs, seed).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use permrank::conjecture::{check_conditions, embed_sn, isometry_search_n3};
use permrank::graph::{
    composition_preserves_edges, graph_distance, lies_between_dsc, lies_between_metric,
    Cycle, LabeledGraph,
};
use permrank::metric::{distance, WeightMatrix};
use permrank::perm::{discordance_set, IndexPair, Permutation};
use permrank::quadruples::{
    antipodal_quadruple, generic_diametrical_criterion, is_pseudolinear, quadruples_from_cycle,
};
use permrank::rational::ratio;
use permrank::sampling::{
    random_permutation, random_positive_ratio, random_strict_weights, random_weights_with_zero,
};

use crate::Outcome;

struct Suite {
    failed: bool,
}

impl Suite {
    fn new() -> Self {
        Suite { failed: false }
    }

    fn check(&mut self, label: &str, cases: usize, counterexample: Option<String>) {
        match counterexample {
            None => println!("check {label}: {cases} cases OK"),
            Some(detail) => {
                println!("check {label}: FAIL ({detail})");
                self.failed = true;
            }
        }
    }

    fn finish(self, name: &str) -> Outcome {
        if self.failed {
            println!("suite {name}: FAIL");
            Outcome::Fail
        } else {
            println!("suite {name}: PASS");
            Outcome::Pass
        }
    }
}

pub fn cmd_verify(suite: &str, n: Option<usize>, seed: u64) -> Result<Outcome, String> {
    match suite {
        "core" => suite_core(n.unwrap_or(4), seed),
        "graph" => suite_graph(n.unwrap_or(4), seed),
        "quadruples" => suite_quadruples(n.unwrap_or(4), seed),
        "conjecture" => suite_conjecture(n.unwrap_or(3), seed),
        other => Err(format!("unknown suite {other:?}")),
    }
}

fn sample_pairs(
    n: usize,
    rng: &mut ChaCha8Rng,
    budget: usize,
) -> Vec<(Permutation, Permutation)> {
    let factorial: usize = (1..=n.min(10)).product();
    if n <= 4 {
        let perms: Vec<Permutation> = Permutation::all(n).collect();
        let mut pairs = Vec::with_capacity(factorial * factorial);
        for p in &perms {
            for q in &perms {
                pairs.push((p.clone(), q.clone()));
            }
        }
        pairs
    } else {
        (0..budget)
            .map(|_| (random_permutation(n, rng), random_permutation(n, rng)))
            .collect()
    }
}

fn suite_core(n: usize, seed: u64) -> Result<Outcome, String> {
    if n < 2 {
        return Err("core suite needs order >= 2".to_string());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut suite = Suite::new();

    // Distance identities under scaling, matrix addition, and ordinal
    // inversion, plus the diameter characterization.
    let pairs = sample_pairs(n, &mut rng, 2000);
    let mut counterexample = None;
    let mut cases = 0usize;
    'identities: for _ in 0..3 {
        let w = random_strict_weights(n, &mut rng);
        let v = random_strict_weights(n, &mut rng);
        let a = random_positive_ratio(&mut rng);
        let scaled = w.scale(&a).map_err(|e| e.to_string())?;
        let summed = w.add(&v).map_err(|e| e.to_string())?;
        for (p, q) in &pairs {
            cases += 1;
            let d = distance(&w, p, q).map_err(|e| e.to_string())?;
            let ok = distance(&scaled, p, q).map_err(|e| e.to_string())? == d
                && distance(&summed, p, q).map_err(|e| e.to_string())?
                    <= &d + distance(&v, p, q).map_err(|e| e.to_string())?
                && distance(&w, p, &q.ordinal_inverse()).map_err(|e| e.to_string())?
                    == ratio(1, 1) - &d
                && distance(&w, &p.ordinal_inverse(), &q.ordinal_inverse())
                    .map_err(|e| e.to_string())?
                    == d
                && d <= ratio(1, 1)
                && (d == ratio(1, 1)) == (q == &p.ordinal_inverse());
            if !ok {
                counterexample = Some(format!("p={p}, q={q}"));
                break 'identities;
            }
        }
    }
    suite.check("distance identities", cases, counterexample);

    // Zero-weight matrices admit distinct points at distance zero.
    let mut counterexample = None;
    for _ in 0..5 {
        let w = random_weights_with_zero(n, &mut rng);
        match w.zero_distance_witness() {
            Some((p, q)) => {
                let d = distance(&w, &p, &q).map_err(|e| e.to_string())?;
                if p == q || d != ratio(0, 1) {
                    counterexample = Some(format!("bad witness p={p}, q={q}"));
                    break;
                }
            }
            None => {
                counterexample = Some("no witness for a zero-weight matrix".to_string());
                break;
            }
        }
    }
    suite.check("zero-weight witnesses", 5, counterexample);

    // Strict weights separate distinct points.
    let mut counterexample = None;
    let mut cases = 0usize;
    'strict: for _ in 0..3 {
        let w = random_strict_weights(n, &mut rng);
        for (p, q) in &pairs {
            if p == q {
                continue;
            }
            cases += 1;
            let d = distance(&w, p, q).map_err(|e| e.to_string())?;
            if d == ratio(0, 1) {
                counterexample = Some(format!("d({p}, {q}) = 0 under a strict weight"));
                break 'strict;
            }
        }
    }
    suite.check("identity of indiscernibles", cases, counterexample);

    // Triangle inequality as an exact rational comparison.
    let mut counterexample = None;
    let mut cases = 0usize;
    let w = random_strict_weights(n, &mut rng);
    for _ in 0..1000 {
        let p = random_permutation(n, &mut rng);
        let q = random_permutation(n, &mut rng);
        let r = random_permutation(n, &mut rng);
        cases += 1;
        let pq = distance(&w, &p, &q).map_err(|e| e.to_string())?;
        let qr = distance(&w, &q, &r).map_err(|e| e.to_string())?;
        let pr = distance(&w, &p, &r).map_err(|e| e.to_string())?;
        if pr > pq + qr {
            counterexample = Some(format!("p={p}, q={q}, r={r}"));
            break;
        }
    }
    suite.check("triangle inequality", cases, counterexample);

    Ok(suite.finish("core"))
}

fn suite_graph(n: usize, seed: u64) -> Result<Outcome, String> {
    if n < 2 {
        return Err("graph suite needs order >= 2".to_string());
    }
    let cap = crate::graph_cap(None);
    let g = LabeledGraph::build_with_cap(n, cap).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut suite = Suite::new();

    let factorial: usize = (1..=n).product();
    let counts_ok = g.vertex_count() == factorial
        && g.edge_count() == factorial * (n - 1) / 2
        && (0..g.vertex_count()).all(|v| g.degree(v) == n - 1);
    suite.check(
        "vertex/edge counts and degrees",
        g.vertex_count() + 1,
        if counts_ok {
            None
        } else {
            Some(format!(
                "{} vertices, {} edges",
                g.vertex_count(),
                g.edge_count()
            ))
        },
    );

    // Breadth-first distance equals the discordance count.
    let sources: Vec<usize> = if n <= 5 {
        (0..g.vertex_count()).collect()
    } else {
        (0..10)
            .map(|_| rng.gen_range(0..g.vertex_count()))
            .collect()
    };
    let mut counterexample = None;
    let mut cases = 0usize;
    'bfs: for &u in &sources {
        let bfs = g.bfs_distances(u);
        for (v, &steps) in bfs.iter().enumerate() {
            cases += 1;
            let expected = graph_distance(&g.vertices()[u], &g.vertices()[v])
                .map_err(|e| e.to_string())?;
            if steps != expected {
                counterexample = Some(format!(
                    "{} -> {}: BFS {steps} vs {expected}",
                    g.vertices()[u],
                    g.vertices()[v],
                ));
                break 'bfs;
            }
        }
    }
    suite.check("graph distance = discordance count", cases, counterexample);

    // The discordance betweenness test agrees with exact metric additivity.
    let weights: Vec<WeightMatrix> = (0..3).map(|_| random_strict_weights(n, &mut rng)).collect();
    let triples: Vec<(Permutation, Permutation, Permutation)> = if n <= 4 {
        let perms: Vec<Permutation> = Permutation::all(n).collect();
        let mut out = Vec::new();
        for p in &perms {
            for m in &perms {
                for q in &perms {
                    if p != m && m != q && p != q {
                        out.push((p.clone(), m.clone(), q.clone()));
                    }
                }
            }
        }
        out
    } else {
        let mut out = Vec::new();
        while out.len() < 2000 {
            let p = random_permutation(n, &mut rng);
            let m = random_permutation(n, &mut rng);
            let q = random_permutation(n, &mut rng);
            if p != m && m != q && p != q {
                out.push((p, m, q));
            }
        }
        out
    };
    let mut counterexample = None;
    let mut cases = 0usize;
    'triples: for (p, m, q) in &triples {
        let by_sets = lies_between_dsc(p, m, q).map_err(|e| e.to_string())?;
        let union_matches = {
            let pm = discordance_set(p, m).map_err(|e| e.to_string())?;
            let mq = discordance_set(m, q).map_err(|e| e.to_string())?;
            let pq = discordance_set(p, q).map_err(|e| e.to_string())?;
            (pm.union(&mq).map_err(|e| e.to_string())? == pq) == by_sets
        };
        if !union_matches {
            counterexample = Some(format!("set tests disagree at ({p}; {m}; {q})"));
            break;
        }
        for w in &weights {
            cases += 1;
            let additive = lies_between_metric(w, p, m, q).map_err(|e| e.to_string())?;
            if additive != by_sets {
                counterexample = Some(format!("additivity disagrees at ({p}; {m}; {q})"));
                break 'triples;
            }
        }
    }
    suite.check("betweenness equivalence", cases, counterexample);

    let mut counterexample = None;
    for _ in 0..5 {
        let t = random_permutation(n, &mut rng);
        if !composition_preserves_edges(&g, &t).map_err(|e| e.to_string())? {
            counterexample = Some(format!("composition by {t}"));
            break;
        }
    }
    suite.check("composition preserves edges", 5, counterexample);

    Ok(suite.finish("graph"))
}

fn suite_quadruples(n: usize, seed: u64) -> Result<Outcome, String> {
    if n < 3 {
        return Err("quadruples suite needs order >= 3".to_string());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut suite = Suite::new();

    // Antipodal construction: always a quadruple of diameter exactly 1.
    let w = random_strict_weights(n, &mut rng);
    let mut counterexample = None;
    let mut cases = 0usize;
    while cases < 100 {
        let p = random_permutation(n, &mut rng);
        let q = random_permutation(n, &mut rng);
        if p == q || q == p.ordinal_inverse() {
            continue;
        }
        cases += 1;
        match antipodal_quadruple(&w, &p, &q) {
            Ok(cert) => {
                if cert.diameter() != ratio(1, 1) {
                    counterexample = Some(format!("diameter != 1 for p={p}, q={q}"));
                    break;
                }
                match is_pseudolinear(&w, cert.enumeration()) {
                    Ok(Some(_)) => {}
                    _ => {
                        counterexample = Some(format!("re-detection fails for p={p}, q={q}"));
                        break;
                    }
                }
            }
            Err(e) => {
                counterexample = Some(format!("construction fails for p={p}, q={q}: {e}"));
                break;
            }
        }
    }
    suite.check("antipodal quadruples", cases, counterexample);

    // The hexagon through the identity yields validated quadruples.
    let pair = |i, j| IndexPair::new(i, j).expect("valid pair");
    let hexagon = Cycle::from_label_sequence(
        &Permutation::identity(n),
        &[
            pair(1, 2),
            pair(1, 3),
            pair(2, 3),
            pair(1, 2),
            pair(1, 3),
            pair(2, 3),
        ],
    )
    .map_err(|e| e.to_string())?;
    let counterexample = match quadruples_from_cycle(&w, &hexagon) {
        Ok(certs) if certs.len() == 12 => None,
        Ok(certs) => Some(format!("{} certificates instead of 12", certs.len())),
        Err(e) => Some(e.to_string()),
    };
    suite.check("hexagon quadruples", 12, counterexample);

    // Generic-weight criterion: both sides agree on random 4-subsets.
    let mut counterexample = None;
    let mut cases = 0usize;
    if n <= 6 {
        let generic = WeightMatrix::generic(n);
        'criterion: for _ in 0..100 {
            let mut points = Vec::new();
            while points.len() < 4 {
                let p = random_permutation(n, &mut rng);
                if !points.contains(&p) {
                    points.push(p);
                }
            }
            let tuple: [Permutation; 4] = [
                points[0].clone(),
                points[1].clone(),
                points[2].clone(),
                points[3].clone(),
            ];
            cases += 1;
            let (lhs, rhs) =
                generic_diametrical_criterion(&generic, &tuple).map_err(|e| e.to_string())?;
            if lhs != rhs {
                counterexample = Some(format!(
                    "sides disagree on ({}; {}; {}; {})",
                    tuple[0], tuple[1], tuple[2], tuple[3]
                ));
                break 'criterion;
            }
        }
    }
    suite.check("generic diametrical criterion", cases, counterexample);

    Ok(suite.finish("quadruples"))
}

fn suite_conjecture(n: usize, seed: u64) -> Result<Outcome, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut suite = Suite::new();
    match n {
        2 | 3 => {
            let mut counterexample = None;
            for case in 0..10 {
                let w = random_strict_weights(n, &mut rng);
                let table = embed_sn(&w).map_err(|e| e.to_string())?;
                let report = check_conditions(&table, n);
                if !report.overall {
                    counterexample = Some(format!("case {case}: conditions fail"));
                    break;
                }
                if n == 3 {
                    match isometry_search_n3(&table) {
                        Ok(iso) => {
                            let exact = (0..table.len()).all(|i| {
                                (i + 1..table.len()).all(|j| {
                                    distance(&iso.weight, &iso.mapping[i], &iso.mapping[j])
                                        .map(|d| &d == table.distance(i, j))
                                        .unwrap_or(false)
                                })
                            });
                            if !exact {
                                counterexample =
                                    Some(format!("case {case}: isometry distorts a distance"));
                                break;
                            }
                        }
                        Err(e) => {
                            counterexample = Some(format!("case {case}: {e}"));
                            break;
                        }
                    }
                }
            }
            suite.check("embedded tables satisfy the conditions", 10, counterexample);
        }
        4 => {
            let w = WeightMatrix::kendall_tau(4);
            let table = embed_sn(&w).map_err(|e| e.to_string())?;
            let report = check_conditions(&table, 4);
            let counterexample = if report.overall {
                None
            } else {
                Some("all-ones order-4 table fails the conditions".to_string())
            };
            suite.check("order-4 single run", 1, counterexample);
        }
        other => return Err(format!("conjecture suite supports orders 2-4, got {other}")),
    }
    Ok(suite.finish("conjecture"))
}
