//! Pseudolinear quadruples: detection, the antipodal construction,
//! symmetrically labeled cycles, and the generic-weight diametrical
//! criterion.
//!
//! Four points form a pseudolinear quadruple when some enumeration
//! `x1, x2, x3, x4` satisfies `d(x1,x2) = d(x3,x4) = s`,
//! `d(x2,x3) = d(x4,x1) = t`, and `d(x2,x4) = d(x3,x1) = s + t` with
//! `s, t > 0`. All equalities here are exact rational comparisons.

use std::collections::BTreeMap;

use num::traits::Signed;
use thiserror::Error;

use crate::graph::{Cycle, GraphError};
use crate::metric::{distance, WeightMatrix};
use crate::perm::{discordance_set, IndexPair, Permutation};
use crate::rational::Ratio;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum QuadError {
    #[error("weights must all be positive")]
    NotAMetric,
    #[error("points must be pairwise distinct")]
    NotDistinct,
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("the two points are ordinal inverses of each other (a diametrical pair)")]
    DiametricalInput,
    #[error("the enumeration does not satisfy the quadruple equalities")]
    NotPseudolinear,
    #[error("cycle precondition failed: {reason}")]
    PreconditionFailed { reason: String },
    #[error("weights do not have pairwise-distinct subset sums")]
    NotGenericWeights,
    #[error("cannot parse cycle line: {message}")]
    Parse { message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A verified pseudolinear quadruple: the enumeration together with its side
/// lengths. Construction re-validates all six equalities.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadrupleCertificate {
    enumeration: [Permutation; 4],
    s: Ratio,
    t: Ratio,
}

impl QuadrupleCertificate {
    /// Validates that the given enumeration satisfies the quadruple
    /// equalities under `w`, with positive side lengths.
    pub fn new(
        w: &WeightMatrix,
        enumeration: [Permutation; 4],
    ) -> Result<Self, QuadError> {
        check_points(w, &enumeration)?;
        let d = |a: usize, b: usize| {
            distance(w, &enumeration[a], &enumeration[b]).expect("orders checked")
        };
        match validate_enumeration(&d) {
            Some((s, t)) => Ok(QuadrupleCertificate { enumeration, s, t }),
            None => Err(QuadError::NotPseudolinear),
        }
    }

    pub fn enumeration(&self) -> &[Permutation; 4] {
        &self.enumeration
    }

    pub fn s(&self) -> &Ratio {
        &self.s
    }

    pub fn t(&self) -> &Ratio {
        &self.t
    }

    /// The diagonal length `s + t`.
    pub fn diameter(&self) -> Ratio {
        &self.s + &self.t
    }

    /// The two diagonal pairs `(x1, x3)` and `(x2, x4)`.
    pub fn diagonals(&self) -> [(&Permutation, &Permutation); 2] {
        [
            (&self.enumeration[0], &self.enumeration[2]),
            (&self.enumeration[1], &self.enumeration[3]),
        ]
    }
}

fn check_points(w: &WeightMatrix, points: &[Permutation; 4]) -> Result<(), QuadError> {
    if !w.is_metric() {
        return Err(QuadError::NotAMetric);
    }
    for p in points {
        if p.order() != w.order() {
            return Err(QuadError::OrderMismatch {
                left: w.order(),
                right: p.order(),
            });
        }
    }
    for (k, p) in points.iter().enumerate() {
        if points[..k].contains(p) {
            return Err(QuadError::NotDistinct);
        }
    }
    Ok(())
}

/// Checks the six quadruple equalities for points in the order
/// `x1, x2, x3, x4` (indices 0..4) and returns `(s, t)` on success.
fn validate_enumeration<D>(d: &D) -> Option<(Ratio, Ratio)>
where
    D: Fn(usize, usize) -> Ratio,
{
    let s = d(0, 1);
    let t = d(1, 2);
    if !s.is_positive() || !t.is_positive() {
        return None;
    }
    let diagonal = &s + &t;
    if d(2, 3) == s && d(3, 0) == t && d(0, 2) == diagonal && d(1, 3) == diagonal {
        Some((s, t))
    } else {
        None
    }
}

/// Tries the three ways of splitting four points (given in a fixed order)
/// into two diagonal pairs, in the canonical order
/// `{(1,2),(3,4)}`, `{(1,3),(2,4)}`, `{(1,4),(2,3)}`, and returns the first
/// enumeration satisfying the quadruple equalities.
pub fn pseudolinear_pairing<D>(d: &D) -> Option<([usize; 4], Ratio, Ratio)>
where
    D: Fn(usize, usize) -> Ratio,
{
    // Each pairing lists the enumeration [x1, x2, x3, x4] with diagonals
    // (x1, x3) and (x2, x4).
    const ENUMERATIONS: [[usize; 4]; 3] = [[0, 2, 1, 3], [0, 1, 2, 3], [0, 1, 3, 2]];
    for order in ENUMERATIONS {
        let reindexed = |a: usize, b: usize| d(order[a], order[b]);
        if let Some((s, t)) = validate_enumeration(&reindexed) {
            return Some((order, s, t));
        }
    }
    None
}

/// Detects whether four distinct points form a pseudolinear quadruple under
/// a strict weight, trying the three diagonal pairings in canonical order
/// over the lexicographically sorted points.
pub fn is_pseudolinear(
    w: &WeightMatrix,
    points: &[Permutation; 4],
) -> Result<Option<QuadrupleCertificate>, QuadError> {
    check_points(w, points)?;
    let mut sorted: Vec<&Permutation> = points.iter().collect();
    sorted.sort();
    let d = |a: usize, b: usize| distance(w, sorted[a], sorted[b]).expect("orders checked");
    match pseudolinear_pairing(&d) {
        Some((order, _, _)) => {
            let enumeration = [
                sorted[order[0]].clone(),
                sorted[order[1]].clone(),
                sorted[order[2]].clone(),
                sorted[order[3]].clone(),
            ];
            Ok(Some(QuadrupleCertificate::new(w, enumeration)?))
        }
        None => Ok(None),
    }
}

/// The antipodal construction: two nondiametrical points together with their
/// ordinal inverses always form a pseudolinear quadruple of diameter 1, with
/// `s = d(p, q)` and `t = 1 - d(p, q)`.
pub fn antipodal_quadruple(
    w: &WeightMatrix,
    p: &Permutation,
    q: &Permutation,
) -> Result<QuadrupleCertificate, QuadError> {
    if !w.is_metric() {
        return Err(QuadError::NotAMetric);
    }
    if p.order() != q.order() || p.order() != w.order() {
        return Err(QuadError::OrderMismatch {
            left: w.order().max(p.order()),
            right: q.order().min(p.order()),
        });
    }
    if p == q {
        return Err(QuadError::NotDistinct);
    }
    if q == &p.ordinal_inverse() {
        return Err(QuadError::DiametricalInput);
    }
    QuadrupleCertificate::new(
        w,
        [
            p.clone(),
            q.clone(),
            p.ordinal_inverse(),
            q.ordinal_inverse(),
        ],
    )
}

/// Whether every edge of the cycle carries the same label as its
/// diametrically opposite edge.
pub fn is_symmetric_labeling(cycle: &Cycle) -> bool {
    let half = cycle.half_length();
    let labels = cycle.labels();
    (0..half).all(|k| labels[k] == labels[k + half])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelMultiplicity {
    pub count: usize,
    /// Whether the count has the form `2(2k - 1)`, i.e. is congruent to
    /// 2 mod 4.
    pub valid: bool,
}

/// Edge count per label of the cycle, with the parity condition the
/// quadruple construction requires (each count of the form `2(2k - 1)`).
pub fn label_multiplicities(cycle: &Cycle) -> BTreeMap<IndexPair, LabelMultiplicity> {
    let mut counts: BTreeMap<IndexPair, usize> = BTreeMap::new();
    for &label in cycle.labels() {
        *counts.entry(label).or_insert(0) += 1;
    }
    counts
        .into_iter()
        .map(|(label, count)| {
            (
                label,
                LabelMultiplicity {
                    count,
                    valid: count % 4 == 2,
                },
            )
        })
        .collect()
}

/// For a simple, symmetrically labeled cycle whose label multiplicities all
/// have the form `2(2k - 1)`, every unordered pair of distinct non-opposite
/// vertices `{p, q}` yields the pseudolinear quadruple
/// `{p, q, opposite(p), opposite(q)}`. Certificates are emitted in cycle
/// index order and every one is validated on construction.
pub fn quadruples_from_cycle(
    w: &WeightMatrix,
    cycle: &Cycle,
) -> Result<Vec<QuadrupleCertificate>, QuadError> {
    if !w.is_metric() {
        return Err(QuadError::NotAMetric);
    }
    let order = cycle.vertices()[0].order();
    if w.order() != order {
        return Err(QuadError::OrderMismatch {
            left: w.order(),
            right: order,
        });
    }
    if !is_symmetric_labeling(cycle) {
        return Err(QuadError::PreconditionFailed {
            reason: "cycle labeling is not symmetric".to_string(),
        });
    }
    for (label, m) in label_multiplicities(cycle) {
        if !m.valid {
            return Err(QuadError::PreconditionFailed {
                reason: format!(
                    "label {label} appears {} times, which is not of the form 2(2k-1)",
                    m.count
                ),
            });
        }
    }
    let len = cycle.len();
    let half = cycle.half_length();
    let mut certificates = Vec::new();
    for a in 0..len {
        for b in a + 1..len {
            if b - a == half {
                continue;
            }
            let enumeration = [
                cycle.vertices()[a].clone(),
                cycle.vertices()[b].clone(),
                cycle.vertices()[cycle.opposite_index(a)].clone(),
                cycle.vertices()[cycle.opposite_index(b)].clone(),
            ];
            certificates.push(QuadrupleCertificate::new(w, enumeration)?);
        }
    }
    Ok(certificates)
}

/// For a weight with pairwise-distinct subset sums, tests both sides of the
/// diametrical criterion on the ordered tuple `(p, q, p̄, q̄)`:
///
/// * `lhs` — the tuple is a pseudolinear quadruple in exactly this
///   enumeration, with diagonals `(p, p̄)` and `(q, q̄)`;
/// * `rhs` — `dsc(p,q) = dsc(p̄,q̄)`, `dsc(q,p̄) = dsc(q̄,p)`, and
///   `dsc(p,q) ∩ dsc(q,p̄) = ∅`.
///
/// Under the distinct-subset-sum condition the two sides always agree.
pub fn generic_diametrical_criterion(
    w: &WeightMatrix,
    points: &[Permutation; 4],
) -> Result<(bool, bool), QuadError> {
    check_points(w, points)?;
    if !w.has_distinct_subset_sums() {
        return Err(QuadError::NotGenericWeights);
    }
    let d = |a: usize, b: usize| distance(w, &points[a], &points[b]).expect("orders checked");
    let lhs = validate_enumeration(&d).is_some();

    let dsc = |a: usize, b: usize| discordance_set(&points[a], &points[b]).expect("orders checked");
    let side_pq = dsc(0, 1);
    let side_qpbar = dsc(1, 2);
    let rhs = side_pq == dsc(2, 3)
        && side_qpbar == dsc(3, 0)
        && side_pq.is_disjoint(&side_qpbar);
    Ok((lhs, rhs))
}

/// Parses a cycle given as permutations separated by `|`, for example
/// `"1 2 3|2 1 3|2 3 1|3 2 1|3 1 2|1 3 2"`, and validates it as a simple
/// cycle in the permutohedron graph.
pub fn parse_cycle_line(line: &str) -> Result<Cycle, QuadError> {
    let mut vertices = Vec::new();
    for part in line.split('|') {
        let p: Permutation = part.parse().map_err(|e| QuadError::Parse {
            message: format!("{e}"),
        })?;
        vertices.push(p);
    }
    Ok(Cycle::new(vertices)?)
}

/// Bounded search for a pair of label-identical simple paths `a -> b` and
/// `c -> d` advanced in lockstep (same label at every step). Such a pair of
/// paths exists whenever the four points lie on a symmetrically labeled
/// cycle with `a` opposite `c` and `b` opposite `d`, so a `false` result
/// refutes any such cycle up to the length cap.
pub fn synchronized_label_paths_exist(
    a: &Permutation,
    b: &Permutation,
    c: &Permutation,
    d: &Permutation,
    max_len: usize,
) -> Result<bool, QuadError> {
    let n = a.order();
    for p in [b, c, d] {
        if p.order() != n {
            return Err(QuadError::OrderMismatch {
                left: n,
                right: p.order(),
            });
        }
    }
    let mut seen_first = vec![a.clone()];
    let mut seen_second = vec![c.clone()];
    Ok(synchronized_search(
        a,
        c,
        b,
        d,
        max_len,
        &mut seen_first,
        &mut seen_second,
    ))
}

fn synchronized_search(
    u: &Permutation,
    v: &Permutation,
    target_u: &Permutation,
    target_v: &Permutation,
    remaining: usize,
    seen_u: &mut Vec<Permutation>,
    seen_v: &mut Vec<Permutation>,
) -> bool {
    if u == target_u && v == target_v && seen_u.len() > 1 {
        return true;
    }
    if remaining == 0 {
        return false;
    }
    let labels = crate::graph::adjacent_labels(u)
        .intersection(&crate::graph::adjacent_labels(v))
        .expect("orders agree");
    for label in labels.iter() {
        let nu = u.adjacent_transposition(label).expect("label is adjacent in u");
        let nv = v.adjacent_transposition(label).expect("label is adjacent in v");
        if seen_u.contains(&nu) || seen_v.contains(&nv) {
            continue;
        }
        seen_u.push(nu.clone());
        seen_v.push(nv.clone());
        if synchronized_search(&nu, &nv, target_u, target_v, remaining - 1, seen_u, seen_v) {
            return true;
        }
        seen_u.pop();
        seen_v.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::adjacent_labels;
    use crate::perm::PairSet;
    use crate::rational::ratio;

    fn perm(values: &[usize]) -> Permutation {
        Permutation::new(values.to_vec()).unwrap()
    }

    fn pair(i: usize, j: usize) -> IndexPair {
        IndexPair::new(i, j).unwrap()
    }

    fn s4_quadruple() -> [Permutation; 4] {
        [
            perm(&[1, 2, 3, 4]),
            perm(&[4, 1, 2, 3]),
            perm(&[4, 2, 3, 1]),
            perm(&[1, 3, 4, 2]),
        ]
    }

    /// The 12-cycle in the order-8 group whose label (1,2) appears six times.
    fn twelve_cycle_s8() -> Cycle {
        let labels = [
            pair(1, 2),
            pair(3, 4),
            pair(1, 2),
            pair(5, 6),
            pair(1, 2),
            pair(7, 8),
            pair(1, 2),
            pair(3, 4),
            pair(1, 2),
            pair(5, 6),
            pair(1, 2),
            pair(7, 8),
        ];
        Cycle::from_label_sequence(&Permutation::identity(8), &labels).unwrap()
    }

    /// The 8-cycle in the order-6 group whose label (1,2) appears four times.
    fn eight_cycle_s6() -> Cycle {
        let labels = [
            pair(1, 2),
            pair(3, 4),
            pair(1, 2),
            pair(5, 6),
            pair(1, 2),
            pair(3, 4),
            pair(1, 2),
            pair(5, 6),
        ];
        Cycle::from_label_sequence(&Permutation::identity(6), &labels).unwrap()
    }

    fn hexagon() -> Cycle {
        Cycle::from_label_sequence(
            &perm(&[1, 2, 3]),
            &[
                pair(1, 2),
                pair(1, 3),
                pair(2, 3),
                pair(1, 2),
                pair(1, 3),
                pair(2, 3),
            ],
        )
        .unwrap()
    }

    #[test]
    fn s4_quadruple_is_pseudolinear_with_expected_diagonals() {
        let [alpha, beta, gamma, delta] = s4_quadruple();
        let w = WeightMatrix::kendall_tau(4);
        let cert = is_pseudolinear(&w, &[alpha.clone(), beta.clone(), gamma.clone(), delta.clone()])
            .unwrap()
            .expect("quadruple detected");
        let [(d1a, d1b), (d2a, d2b)] = cert.diagonals();
        assert_eq!((d1a, d1b), (&alpha, &gamma));
        assert_eq!((d2a, d2b), (&delta, &beta));
        assert_eq!(cert.diameter(), ratio(5, 6));
        assert_eq!(cert.s(), &ratio(1, 3));
        assert_eq!(cert.t(), &ratio(1, 2));
    }

    #[test]
    fn small_hexagon_quadruple_example() {
        let w = WeightMatrix::kendall_tau(3);
        let points = [
            perm(&[1, 2, 3]),
            perm(&[2, 1, 3]),
            perm(&[3, 2, 1]),
            perm(&[2, 3, 1]),
        ];
        let cert = is_pseudolinear(&w, &points).unwrap().expect("detected");
        assert_eq!(cert.s(), &ratio(1, 3));
        assert_eq!(cert.t(), &ratio(2, 3));
    }

    #[test]
    fn equilateral_quadruple_in_s6_is_rejected() {
        let cycle = eight_cycle_s6();
        let points = [
            cycle.vertices()[0].clone(),
            cycle.vertices()[2].clone(),
            cycle.vertices()[4].clone(),
            cycle.vertices()[6].clone(),
        ];
        let w = WeightMatrix::kendall_tau(6);
        assert_eq!(is_pseudolinear(&w, &points).unwrap(), None);
        let generic = WeightMatrix::generic(6);
        assert_eq!(is_pseudolinear(&generic, &points).unwrap(), None);
    }

    #[test]
    fn detector_validates_inputs() {
        let w = WeightMatrix::kendall_tau(3);
        let p = perm(&[1, 2, 3]);
        assert!(matches!(
            is_pseudolinear(
                &w,
                &[p.clone(), p.clone(), perm(&[2, 1, 3]), perm(&[3, 2, 1])]
            ),
            Err(QuadError::NotDistinct)
        ));
        let partial =
            WeightMatrix::new(3, vec![(pair(1, 2), ratio(1, 1))]).unwrap();
        assert!(matches!(
            is_pseudolinear(
                &partial,
                &[p, perm(&[2, 1, 3]), perm(&[3, 2, 1]), perm(&[2, 3, 1])]
            ),
            Err(QuadError::NotAMetric)
        ));
    }

    #[test]
    fn antipodal_construction_examples() {
        let w = WeightMatrix::kendall_tau(3);
        let p = perm(&[1, 2, 3]);
        let q = perm(&[2, 1, 3]);
        let cert = antipodal_quadruple(&w, &p, &q).unwrap();
        assert_eq!(
            cert.enumeration(),
            &[
                p.clone(),
                q.clone(),
                perm(&[3, 2, 1]),
                perm(&[2, 3, 1])
            ]
        );
        assert_eq!(cert.s(), &ratio(1, 3));
        assert_eq!(cert.t(), &ratio(2, 3));
        assert_eq!(cert.diameter(), ratio(1, 1));

        assert!(matches!(
            antipodal_quadruple(&w, &p, &p.ordinal_inverse()),
            Err(QuadError::DiametricalInput)
        ));
        assert!(matches!(
            antipodal_quadruple(&w, &p, &p),
            Err(QuadError::NotDistinct)
        ));
    }

    #[test]
    fn symmetric_labeling_detection() {
        assert!(is_symmetric_labeling(&hexagon()));
        assert!(is_symmetric_labeling(&twelve_cycle_s8()));
        assert!(is_symmetric_labeling(&eight_cycle_s6()));

        // The 8-cycle bounding a hexagon face and a square face glued along
        // an edge is not symmetrically labeled.
        let asym = Cycle::from_label_sequence(
            &perm(&[1, 2, 3, 4]),
            &[
                pair(3, 4),
                pair(1, 2),
                pair(3, 4),
                pair(1, 3),
                pair(2, 3),
                pair(1, 2),
                pair(1, 3),
                pair(2, 3),
            ],
        )
        .unwrap();
        assert_eq!(asym.len(), 8);
        assert!(!is_symmetric_labeling(&asym));
    }

    #[test]
    fn label_multiplicity_examples() {
        let counts = label_multiplicities(&twelve_cycle_s8());
        assert_eq!(counts[&pair(1, 2)], LabelMultiplicity { count: 6, valid: true });
        for label in [pair(3, 4), pair(5, 6), pair(7, 8)] {
            assert_eq!(counts[&label], LabelMultiplicity { count: 2, valid: true });
        }

        let counts = label_multiplicities(&eight_cycle_s6());
        assert_eq!(
            counts[&pair(1, 2)],
            LabelMultiplicity { count: 4, valid: false }
        );

        let square = Cycle::from_label_sequence(
            &perm(&[1, 2, 3, 4]),
            &[pair(1, 2), pair(3, 4), pair(1, 2), pair(3, 4)],
        )
        .unwrap();
        for m in label_multiplicities(&square).values() {
            assert_eq!(*m, LabelMultiplicity { count: 2, valid: true });
        }
    }

    #[test]
    fn twelve_cycle_yields_sixty_validated_quadruples() {
        let cycle = twelve_cycle_s8();
        let w = WeightMatrix::kendall_tau(8);
        let certs = quadruples_from_cycle(&w, &cycle).unwrap();
        assert_eq!(certs.len(), 60);
        for cert in &certs {
            let recheck = is_pseudolinear(&w, cert.enumeration()).unwrap();
            assert!(recheck.is_some());
        }
    }

    #[test]
    fn hexagon_yields_twelve_quadruples() {
        let w = WeightMatrix::kendall_tau(3);
        let certs = quadruples_from_cycle(&w, &hexagon()).unwrap();
        assert_eq!(certs.len(), 12);
    }

    #[test]
    fn eight_cycle_fails_the_multiplicity_precondition() {
        let w = WeightMatrix::kendall_tau(6);
        assert!(matches!(
            quadruples_from_cycle(&w, &eight_cycle_s6()),
            Err(QuadError::PreconditionFailed { .. })
        ));
    }

    #[test]
    fn generic_criterion_examples() {
        let w = WeightMatrix::generic(4);
        let [alpha, beta, gamma, delta] = s4_quadruple();
        // Order the tuple so the diagonals are (alpha, gamma), (beta, delta).
        let ordered = [alpha.clone(), beta.clone(), gamma.clone(), delta.clone()];
        assert_eq!(generic_diametrical_criterion(&w, &ordered).unwrap(), (true, true));

        // A tuple paired across the wrong diagonal fails both sides.
        let wrong = [alpha.clone(), gamma.clone(), beta.clone(), delta.clone()];
        assert_eq!(
            generic_diametrical_criterion(&w, &wrong).unwrap(),
            (false, false)
        );

        let tau = WeightMatrix::kendall_tau(4);
        assert!(matches!(
            generic_diametrical_criterion(&tau, &ordered),
            Err(QuadError::NotGenericWeights)
        ));
    }

    #[test]
    fn adjacent_label_obstruction_for_the_s4_quadruple() {
        let [alpha, _beta, gamma, _delta] = s4_quadruple();
        let la = adjacent_labels(&alpha);
        let lg = adjacent_labels(&gamma);
        assert_eq!(
            la,
            PairSet::from_pairs(4, [pair(1, 2), pair(2, 3), pair(3, 4)]).unwrap()
        );
        let both = la.intersection(&lg).unwrap();
        assert_eq!(both, PairSet::from_pairs(4, [pair(2, 3)]).unwrap());

        let alpha1 = alpha.adjacent_transposition(pair(2, 3)).unwrap();
        let gamma1 = gamma.adjacent_transposition(pair(2, 3)).unwrap();
        assert_eq!(alpha1, perm(&[1, 3, 2, 4]));
        assert_eq!(gamma1, perm(&[4, 3, 2, 1]));
        let next = adjacent_labels(&alpha1)
            .intersection(&adjacent_labels(&gamma1))
            .unwrap();
        assert_eq!(next, PairSet::from_pairs(4, [pair(2, 3)]).unwrap());
    }

    #[test]
    fn no_synchronized_paths_for_the_s4_quadruple() {
        let [alpha, beta, gamma, delta] = s4_quadruple();
        assert!(!synchronized_label_paths_exist(&alpha, &beta, &gamma, &delta, 16).unwrap());
        // Positive control: opposite arcs of the hexagon are synchronized.
        let hex = hexagon();
        let a = &hex.vertices()[0];
        let b = &hex.vertices()[2];
        let c = &hex.vertices()[3];
        let d = &hex.vertices()[5];
        assert!(synchronized_label_paths_exist(a, b, c, d, 16).unwrap());
    }

    #[test]
    fn antipodal_quadruples_always_have_unit_diameter_on_s4() {
        use num::traits::One;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        let perms: Vec<Permutation> = Permutation::all(4).collect();
        for _ in 0..10 {
            let w = crate::sampling::random_strict_weights(4, &mut rng);
            for p in &perms {
                for q in &perms {
                    if p == q || q == &p.ordinal_inverse() {
                        continue;
                    }
                    let cert = antipodal_quadruple(&w, p, q).unwrap();
                    assert_eq!(cert.diameter(), Ratio::one());
                    assert_eq!(cert.s(), &distance(&w, p, q).unwrap());
                }
            }
        }
    }

    #[test]
    fn sampled_antipodal_quadruples_pass_the_detector() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(22);
        let w = crate::sampling::random_strict_weights(4, &mut rng);
        let mut checked = 0;
        while checked < 100 {
            let p = crate::sampling::random_permutation(4, &mut rng);
            let q = crate::sampling::random_permutation(4, &mut rng);
            if p == q || q == p.ordinal_inverse() {
                continue;
            }
            let cert = antipodal_quadruple(&w, &p, &q).unwrap();
            assert!(is_pseudolinear(&w, cert.enumeration()).unwrap().is_some());
            checked += 1;
        }
    }

    /// All simple cycles through the identity in the order-4 graph, up to
    /// length 12, that are symmetrically labeled with multiplicities of the
    /// required form, yield fully validated quadruples.
    #[test]
    fn every_admissible_short_cycle_in_s4_yields_valid_quadruples() {
        use crate::graph::LabeledGraph;

        let g = LabeledGraph::build(4).unwrap();
        let start = g.vertex_index(&Permutation::identity(4)).unwrap();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut chain = vec![start];
        collect_cycles(&g, start, &mut chain, 12, &mut cycles);

        let w = WeightMatrix::kendall_tau(4);
        let mut admissible = 0usize;
        for indices in &cycles {
            let vertices: Vec<Permutation> =
                indices.iter().map(|&v| g.vertices()[v].clone()).collect();
            let cycle = Cycle::new(vertices).unwrap();
            if !is_symmetric_labeling(&cycle) {
                continue;
            }
            if label_multiplicities(&cycle).values().any(|m| !m.valid) {
                continue;
            }
            admissible += 1;
            let certs = quadruples_from_cycle(&w, &cycle).unwrap();
            let expected = cycle.len() * (cycle.len() - 1) / 2 - cycle.half_length();
            assert_eq!(certs.len(), expected);
            for cert in certs {
                assert!(is_pseudolinear(&w, cert.enumeration()).unwrap().is_some());
            }
        }
        assert!(admissible >= 3, "found only {admissible} admissible cycles");
    }

    // Simple cycles through `start` with all other vertices above it, one
    // orientation each.
    fn collect_cycles(
        g: &crate::graph::LabeledGraph,
        start: usize,
        chain: &mut Vec<usize>,
        max_len: usize,
        cycles: &mut Vec<Vec<usize>>,
    ) {
        let &current = chain.last().unwrap();
        for &(next, _) in g.neighbors(current) {
            if next == start && chain.len() >= 3 && chain[1] < *chain.last().unwrap() {
                cycles.push(chain.clone());
                continue;
            }
            if chain.len() < max_len && next > start && !chain.contains(&next) {
                chain.push(next);
                collect_cycles(g, start, chain, max_len, cycles);
                chain.pop();
            }
        }
    }

    #[test]
    fn cycle_line_parsing() {
        let cycle = parse_cycle_line("1 2 3|2 1 3|3 1 2|3 2 1|2 3 1|1 3 2").unwrap();
        assert_eq!(cycle.len(), 6);
        assert!(parse_cycle_line("1 2 3|2 1 3").is_err());
        assert!(parse_cycle_line("1 2 3|bogus|2 1 3").is_err());
    }
}
