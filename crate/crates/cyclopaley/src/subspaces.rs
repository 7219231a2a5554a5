//! F_{p^t}-subspace machinery: enumeration of canonical cliques and their
//! Frobenius pairing, the index-set counting scan over `a = g^{(p+1)k}`, the
//! full 2-dimensional subspace-conjecture sweep, and the C_0 membership
//! facts that drive them.

use crate::cyclotomy::minimal_representation;
use crate::field::{Element, Field, FieldError};
use crate::graph::Graph;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubspaceError {
    WrongFieldShape { expected: String, got: String },
    NotSemiPrimitive,
    PaleyIndexSet,
    ZeroNotInIndexSet,
    NotInC0,
    NotSquareOrder,
    Field(FieldError),
}

impl fmt::Display for SubspaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubspaceError::WrongFieldShape { expected, got } => {
                write!(f, "field shape mismatch: expected {expected}, got {got}")
            }
            SubspaceError::NotSemiPrimitive => {
                write!(f, "operation requires semi-primitive parameters")
            }
            SubspaceError::PaleyIndexSet => {
                write!(
                    f,
                    "index set reduces to the Paley representation, excluded here"
                )
            }
            SubspaceError::ZeroNotInIndexSet => write!(f, "operation requires 0 in I"),
            SubspaceError::NotInC0 => write!(f, "element does not lie in C_0"),
            SubspaceError::NotSquareOrder => write!(f, "field order is not a square"),
            SubspaceError::Field(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SubspaceError {}

impl From<FieldError> for SubspaceError {
    fn from(e: FieldError) -> Self {
        SubspaceError::Field(e)
    }
}

/// The Galois involution `x -> x^sqrt(q)`.
pub fn frobenius_sqrt_q(field: &Field, x: Element) -> Result<Element, SubspaceError> {
    let s = field.sqrt_q().ok_or(SubspaceError::NotSquareOrder)?;
    Ok(field.pow(x, s))
}

/// A 2-dimensional F_{p^t}-subspace `F_{p^t} + a F_{p^t}` that is a clique of
/// size sqrt(q).
#[derive(Debug, Clone, Serialize)]
pub struct CanonicalClique {
    /// Discrete log of the canonical second basis element.
    pub a_log: u64,
    /// Basis over F_{p^t}: `[1, a]`. Independence is asserted by the
    /// span-size check when elements are materialized.
    #[serde(skip)]
    pub basis: [Element; 2],
    /// The subspace's F_{p^t}^*-lines, each as the smallest discrete log on
    /// the line (`log mod M` with `M = (q-1)/(p^t-1)`); sorted. Two
    /// parametrizations give the same subspace iff these keys agree.
    pub line_key: Vec<u64>,
    /// All sqrt(q) elements, 0 first then by ascending discrete log.
    #[serde(skip)]
    pub elements: Vec<Element>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CanonicalCliquesReport {
    pub subspaces: Vec<CanonicalClique>,
    pub count: usize,
    pub even_count: bool,
    /// Index pairs swapped by `x -> x^sqrt(q)`.
    pub frobenius_pairs: Vec<(usize, usize)>,
    pub frobenius_closed: bool,
    pub none_fixed: bool,
    /// Whether the subfield F_sqrt(q) is itself a clique (must be false when
    /// I is not the even Paley set).
    pub subfield_is_clique: bool,
}

/// Enumerates every 2-dimensional F_{p^t}-subspace `V` with `1 in V` whose
/// nonzero part lies in the connection set, for `q = p^{4t}`. Each `V` is a
/// union of `p^t + 1` F_{p^t}^*-lines, each of constant class (F_{p^t}^* is
/// inside C_0), so `V` is checked line by line and deduplicated by its line
/// key. The result is closed under `x -> x^sqrt(q)` in fixed-point-free
/// pairs.
pub fn enumerate_canonical_cliques(graph: &Graph) -> Result<CanonicalCliquesReport, SubspaceError> {
    let params = graph.params().ok_or(SubspaceError::NotSemiPrimitive)?;
    if params.r != 2 {
        return Err(SubspaceError::WrongFieldShape {
            expected: "q = p^{4t} (r = 2)".into(),
            got: format!("r = {}", params.r),
        });
    }
    if !graph.index_set().contains(0) {
        return Err(SubspaceError::ZeroNotInIndexSet);
    }
    let (two_dp, reduced) = minimal_representation(graph.index_set());
    if two_dp == 2 && reduced.members == [0] {
        return Err(SubspaceError::PaleyIndexSet);
    }

    let field = graph.field();
    let q = field.q();
    let two_d = graph.two_d();
    let p_t = params.p_to_t();
    let sqrt_q = field.sqrt_q().expect("r = 2 forces square q");
    let m_stride = (q - 1) / (p_t - 1);

    // F_{p^t} as explicit elements: 0 and the powers of g^M.
    let mut subfield_pt = vec![Element::ZERO];
    for i in 0..p_t - 1 {
        subfield_pt.push(field.exp_of(i * m_stride));
    }

    let line_classes_ok = |a: Element| -> Option<Vec<u64>> {
        // Lines of V = F_{p^t} + a F_{p^t}: the line of 1 (id 0) plus the
        // lines of a + c over c in F_{p^t}.
        let mut key = Vec::with_capacity(p_t as usize + 1);
        key.push(0u64);
        for &c in &subfield_pt {
            let rep = field.add(a, c);
            debug_assert!(!rep.is_zero());
            let log = field.discrete_log(rep).expect("a not in F_{p^t}");
            if !graph.index_set().contains(log % two_d) {
                return None;
            }
            key.push(log % m_stride);
        }
        key.sort_unstable();
        key.windows(2).all(|w| w[0] != w[1]).then_some(key)
    };

    let mut by_key: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    for s in 1..m_stride {
        let a = field.exp_of(s);
        if let Some(key) = line_classes_ok(a) {
            by_key.entry(key).or_insert(s);
        }
    }

    let mut subspaces: Vec<CanonicalClique> = by_key
        .iter()
        .map(|(key, &a_log)| {
            let a = field.exp_of(a_log);
            let mut elements = Vec::with_capacity((p_t * p_t) as usize);
            for &c1 in &subfield_pt {
                for &c2 in &subfield_pt {
                    elements.push(field.add(c1, field.mul(c2, a)));
                }
            }
            elements.sort_unstable();
            elements.dedup();
            assert_eq!(
                elements.len() as u64,
                p_t * p_t,
                "basis {{1, a}} must be F_{{p^t}}-independent"
            );
            let elements = crate::cliques::sort_by_log(field, elements);
            CanonicalClique {
                a_log,
                basis: [Element::ONE, a],
                line_key: key.clone(),
                elements,
            }
        })
        .collect();
    subspaces.sort_by(|x, y| x.line_key.cmp(&y.line_key));

    // Frobenius pairing on line keys: log -> log * sqrt(q) (mod q-1), id mod M.
    let key_index: BTreeMap<Vec<u64>, usize> = subspaces
        .iter()
        .enumerate()
        .map(|(i, s)| (s.line_key.clone(), i))
        .collect();
    let mut pairs = Vec::new();
    let mut frobenius_closed = true;
    let mut none_fixed = true;
    for (i, sub) in subspaces.iter().enumerate() {
        let mut fkey: Vec<u64> = sub
            .line_key
            .iter()
            .map(|&l| (l as u128 * sqrt_q as u128 % (q as u128 - 1)) as u64 % m_stride)
            .collect();
        fkey.sort_unstable();
        match key_index.get(&fkey) {
            Some(&j) => {
                if j == i {
                    none_fixed = false;
                } else if i < j {
                    pairs.push((i, j));
                }
            }
            None => frobenius_closed = false,
        }
    }

    // The subfield F_sqrt(q) must not be a clique here (I is not even-Paley).
    let subfield_is_clique = (0..sqrt_q - 1).all(|i| {
        let log = i * (sqrt_q + 1);
        graph.index_set().contains(log % two_d)
    });

    let count = subspaces.len();
    Ok(CanonicalCliquesReport {
        count,
        even_count: count % 2 == 0,
        frobenius_pairs: pairs,
        frobenius_closed,
        none_fixed,
        subfield_is_clique,
        subspaces,
    })
}

/// Result of the `a = g^{(p+1)k}` scan counting index sets `I` with
/// `omega(PP(p^4, p+1, I)) = p^2`.
#[derive(Debug, Clone, Serialize)]
pub struct IndexSetCount {
    pub p: u64,
    pub two_d: u64,
    pub count: u64,
    /// `(p^2 + 3) / 4`.
    pub expected: u64,
    pub valid_sets: Vec<Vec<u64>>,
    /// For each valid set, the `k` values in `[0, p^2]` that produced it.
    pub k_hits: Vec<Vec<u64>>,
    /// `k` values where `a = g^{(p+1)k}` fell inside F_p (degenerate span).
    pub skipped_degenerate_k: Vec<u64>,
}

/// Scans `k in [0, p^2]`, forms `R = {1, a, a+1, ..., a+(p-1)}` with
/// `a = g^{(p+1)k}`, and accepts the class multiset of `R` iff every class it
/// hits is hit exactly twice; valid index sets are deduplicated. `a in F_p`
/// (only `k = 0` in range) spans a 1-dimensional subspace and is skipped.
pub fn count_valid_index_sets(p: u64, cap: u64) -> Result<IndexSetCount, SubspaceError> {
    let field = Field::with_cap(p, 4, cap)?;
    let q = field.q();
    let two_d = p + 1;
    let m_stride = (q - 1) / (p - 1);
    let mut valid: BTreeMap<Vec<u64>, Vec<u64>> = BTreeMap::new();
    let mut skipped = Vec::new();
    for k in 0..=p * p {
        let a_log = (two_d * k) % (q - 1);
        if a_log % m_stride == 0 {
            skipped.push(k);
            continue;
        }
        let a = field.exp_of(a_log);
        let mut class_counts = vec![0u64; two_d as usize];
        class_counts[0] += 1; // the representative 1
        for c in 0..p {
            let rep = field.add(a, field.scalar(c));
            let log = field.discrete_log(rep).expect("a not in F_p");
            class_counts[(log % two_d) as usize] += 1;
        }
        if class_counts.iter().all(|&c| c == 0 || c == 2) {
            let set: Vec<u64> = (0..two_d)
                .filter(|&j| class_counts[j as usize] == 2)
                .collect();
            valid.entry(set).or_default().push(k);
        }
    }
    let count = valid.len() as u64;
    let (valid_sets, k_hits): (Vec<_>, Vec<_>) = valid.into_iter().unzip();
    Ok(IndexSetCount {
        p,
        two_d,
        count,
        expected: (p * p + 3) / 4,
        valid_sets,
        k_hits,
        skipped_degenerate_k: skipped,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SubspaceConjectureReport {
    pub p: u64,
    pub holds: bool,
    /// Number of distinct qualifying subspaces found by the full sweep.
    pub qualifying_count: u64,
    /// Number of distinct subspaces of the predicted form `F_p + g^{(p+1)k} F_p`,
    /// k odd.
    pub predicted_count: u64,
    /// `(p^2 + 1) / 2`, the count the predicted family must have.
    pub expected_count: u64,
}

/// Sweeps ALL 2-dimensional F_p-subspaces `V` of GF(p^4) with `1 in V` (not
/// just those spanned by C_0 elements): `V` qualifies iff its `p + 1` line
/// representatives hit exactly `(p+1)/2` classes, each exactly twice. Returns
/// whether the qualifying family equals `{F_p + a F_p : a = g^{(p+1)k}, k odd}`
/// up to subspace equality.
pub fn verify_subspace_conjecture(
    p: u64,
    cap: u64,
) -> Result<SubspaceConjectureReport, SubspaceError> {
    let field = Field::with_cap(p, 4, cap)?;
    let q = field.q();
    let two_d = p + 1;
    let m_stride = (q - 1) / (p - 1);

    let line_key_and_qualifies = |a: Element| -> (Vec<u64>, bool) {
        let mut key = Vec::with_capacity(p as usize + 1);
        key.push(0u64);
        let mut class_counts = vec![0u64; two_d as usize];
        class_counts[0] += 1;
        for c in 0..p {
            let rep = field.add(a, field.scalar(c));
            let log = field.discrete_log(rep).expect("a outside F_p");
            key.push(log % m_stride);
            class_counts[(log % two_d) as usize] += 1;
        }
        key.sort_unstable();
        let qualifies = class_counts.iter().all(|&c| c == 0 || c == 2);
        (key, qualifies)
    };

    let mut qualifying: std::collections::BTreeSet<Vec<u64>> = Default::default();
    for s in 1..m_stride {
        let (key, ok) = line_key_and_qualifies(field.exp_of(s));
        if ok {
            qualifying.insert(key);
        }
    }

    let mut predicted: std::collections::BTreeSet<Vec<u64>> = Default::default();
    let c0_order = (q - 1) / two_d;
    let mut k = 1;
    while k < c0_order {
        let (key, _) = line_key_and_qualifies(field.exp_of(two_d * k));
        predicted.insert(key);
        k += 2;
    }

    Ok(SubspaceConjectureReport {
        p,
        holds: qualifying == predicted,
        qualifying_count: qualifying.len() as u64,
        predicted_count: predicted.len() as u64,
        expected_count: (p * p + 1) / 2,
    })
}

/// Verifies `F_{p^t}^* subset C_0` element by element.
pub fn fpt_in_c0_check(graph: &Graph) -> Result<bool, SubspaceError> {
    let params = graph.params().ok_or(SubspaceError::NotSemiPrimitive)?;
    let field = graph.field();
    let p_t = params.p_to_t();
    let m_stride = (field.q() - 1) / (p_t - 1);
    let two_d = graph.two_d();
    for i in 0..p_t - 1 {
        let x = field.exp_of(i * m_stride);
        let log = field.discrete_log(x).expect("nonzero");
        if log % two_d != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Serialize)]
pub struct DependenceWitness {
    /// Whether `{x, x^{p^{2t}}}` is F_{p^t}-linearly dependent.
    pub dependent: bool,
    /// When dependent: whether `(p^{2t}+1) d` divides `log x`, as the theory
    /// requires.
    pub divisibility_ok: Option<bool>,
}

/// For `x in C_0` over `q = p^{4t}`: decides whether `x` and its conjugate
/// `x^{p^{2t}}` are F_{p^t}-linearly dependent (iff `x^{p^{2t}-1}` lands in
/// F_{p^t}^*), and when they are, checks `x` lies in `<g^{(p^{2t}+1) d}>`.
pub fn dependence_witness(graph: &Graph, x: Element) -> Result<DependenceWitness, SubspaceError> {
    let params = graph.params().ok_or(SubspaceError::NotSemiPrimitive)?;
    if params.r != 2 {
        return Err(SubspaceError::WrongFieldShape {
            expected: "q = p^{4t} (r = 2)".into(),
            got: format!("r = {}", params.r),
        });
    }
    let field = graph.field();
    let log = field.discrete_log(x).map_err(|_| SubspaceError::NotInC0)?;
    if log % graph.two_d() != 0 {
        return Err(SubspaceError::NotInC0);
    }
    let q = field.q();
    let p_2t = field.sqrt_q().expect("r = 2 forces square q");
    let m_stride = (q - 1) / (params.p_to_t() - 1);
    let y_log = (log as u128 * (p_2t as u128 - 1) % (q as u128 - 1)) as u64;
    let dependent = y_log % m_stride == 0;
    let divisibility_ok = dependent.then(|| log % ((p_2t + 1) * graph.d()) == 0);
    Ok(DependenceWitness {
        dependent,
        divisibility_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use std::sync::Arc;

    fn graph(p: u64, n: u32, two_d: u64, members: &[u64]) -> Graph {
        let f = Arc::new(Field::new(p, n).unwrap());
        Graph::build_from_members(f, two_d, members).unwrap()
    }

    #[test]
    fn frobenius_is_an_involution_fixing_subfield() {
        let f = Field::new(5, 4).unwrap();
        assert_eq!(frobenius_sqrt_q(&f, Element::ONE).unwrap(), Element::ONE);
        for x in f.elements().step_by(17) {
            let y = frobenius_sqrt_q(&f, x).unwrap();
            assert_eq!(frobenius_sqrt_q(&f, y).unwrap(), x);
        }
        // Fixes F_25 pointwise.
        for k in 0..24 {
            let x = f.exp_of(26 * k);
            assert_eq!(frobenius_sqrt_q(&f, x).unwrap(), x);
        }
        let f_odd = Field::new(5, 3).unwrap();
        assert_eq!(
            frobenius_sqrt_q(&f_odd, Element::ONE).unwrap_err(),
            SubspaceError::NotSquareOrder
        );
    }

    #[test]
    fn frobenius_preserves_edges() {
        let g = graph(5, 4, 6, &[0, 1, 3]);
        let f = g.field();
        for a in f.elements().step_by(23) {
            for b in f.elements().step_by(31) {
                let fa = frobenius_sqrt_q(f, a).unwrap();
                let fb = frobenius_sqrt_q(f, b).unwrap();
                assert_eq!(g.adjacent(a, b), g.adjacent(fa, fb));
            }
        }
    }

    #[test]
    fn canonical_cliques_of_pp_625_are_a_frobenius_pair() {
        let g = graph(5, 4, 6, &[0, 1, 3]);
        let rep = enumerate_canonical_cliques(&g).unwrap();
        assert_eq!(rep.count, 2);
        assert!(rep.even_count && rep.frobenius_closed && rep.none_fixed);
        assert_eq!(rep.frobenius_pairs, vec![(0, 1)]);
        assert!(!rep.subfield_is_clique);
        for sub in &rep.subspaces {
            assert_eq!(sub.elements.len(), 25);
            assert!(crate::cliques::is_clique(&g, &sub.elements));
            // Equal contribution and the character-sum certificate both hold
            // for every enumerated canonical clique.
            let prof = crate::cliques::profile(&g, &sub.elements).unwrap();
            assert_eq!(prof.equal_contribution, Some(true));
            let cert = crate::charsums::clique_certificate(&g, &sub.elements, 1).unwrap();
            assert_eq!(cert.status, crate::charsums::CertificateStatus::Pass);
        }
        // The two subspaces are exchanged by x -> x^25.
        let f = g.field();
        let image: Vec<Element> = rep.subspaces[0]
            .elements
            .iter()
            .map(|&x| frobenius_sqrt_q(f, x).unwrap())
            .collect();
        let image = crate::cliques::sort_by_log(f, image);
        assert_eq!(image, rep.subspaces[1].elements);
    }

    #[test]
    fn peisert_7_4_has_no_canonical_cliques() {
        let g = graph(7, 4, 4, &[0, 1]);
        let rep = enumerate_canonical_cliques(&g).unwrap();
        assert_eq!(rep.count, 0);
        assert!(rep.even_count);
    }

    #[test]
    fn enumerate_rejects_paley_and_wrong_shapes() {
        let paley = graph(5, 4, 6, &[0, 2, 4]);
        assert_eq!(
            enumerate_canonical_cliques(&paley).unwrap_err(),
            SubspaceError::PaleyIndexSet
        );
        let no_zero = graph(5, 4, 6, &[1, 3, 5]);
        assert_eq!(
            enumerate_canonical_cliques(&no_zero).unwrap_err(),
            SubspaceError::ZeroNotInIndexSet
        );
    }

    #[test]
    fn index_set_counts_small_primes() {
        let c3 = count_valid_index_sets(3, 1 << 27).unwrap();
        assert_eq!(c3.count, 3);
        assert_eq!(c3.expected, 3);
        assert_eq!(c3.skipped_degenerate_k, vec![0]);

        let c5 = count_valid_index_sets(5, 1 << 27).unwrap();
        assert_eq!(c5.count, 7);
        // The Table-1 index set {0, 1, 3} is among the valid ones.
        assert!(c5.valid_sets.contains(&vec![0, 1, 3]));
    }

    #[test]
    fn each_valid_set_appears_twice_except_paley() {
        let c5 = count_valid_index_sets(5, 1 << 27).unwrap();
        let evens: Vec<u64> = vec![0, 2, 4];
        for (set, hits) in c5.valid_sets.iter().zip(&c5.k_hits) {
            if *set == evens {
                assert_eq!(hits.len(), 1, "Paley set {set:?}");
            } else {
                assert_eq!(hits.len(), 2, "set {set:?}");
            }
        }
    }

    #[test]
    fn subspace_conjecture_small_primes() {
        for p in [3u64, 5] {
            let rep = verify_subspace_conjecture(p, 1 << 27).unwrap();
            assert!(rep.holds, "conjecture sweep failed at p = {p}");
            assert_eq!(rep.qualifying_count, rep.expected_count);
        }
    }

    #[test]
    fn fpt_in_c0_examples() {
        let g = graph(5, 4, 6, &[0, 1, 3]);
        assert!(fpt_in_c0_check(&g).unwrap());
        // g itself has class 1, so it cannot lie in F_{p^t}.
        let f = g.field();
        assert_eq!(f.discrete_log(f.generator()).unwrap() % 6, 1);

        // q = 3^8, 2d = 10: t = 2, so all of F_9^* sits in C_0.
        let g38 = graph(3, 8, 10, &[0, 1, 2, 3, 5]);
        assert_eq!(g38.params().map(|p| (p.t, p.r)), Some((2, 2)));
        assert!(fpt_in_c0_check(&g38).unwrap());
    }

    #[test]
    fn dependence_witness_cases() {
        let g = graph(5, 4, 6, &[0, 1, 3]);
        let f = g.field();
        // x in F_5^*: dependent, with the divisibility consequence.
        let x = f.exp_of(156);
        let w = dependence_witness(&g, x).unwrap();
        assert!(w.dependent);
        assert_eq!(w.divisibility_ok, Some(true));
        // x = g^{(p^{2t}+1) d} = g^78: dependent by construction.
        let w = dependence_witness(&g, f.exp_of(78)).unwrap();
        assert!(w.dependent);
        assert_eq!(w.divisibility_ok, Some(true));
        // Generic x = g^6 in C_0: independent.
        let w = dependence_witness(&g, f.exp_of(6)).unwrap();
        assert!(!w.dependent);
        // g^1 is not in C_0.
        assert_eq!(
            dependence_witness(&g, f.generator()).unwrap_err(),
            SubspaceError::NotInC0
        );
    }
}
