//! The Cayley graph PP(q, 2d, I) on the additive group of GF(q), with the
//! connection set `D = union of C_j for j in I`, served as an adjacency
//! oracle (no materialized adjacency matrix).

use crate::cyclotomy::{class_index, derive_params, CyclotomyError, IndexSet, SemiPrimitiveParams};
use crate::field::{Element, Field, FieldDescriptor};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use std::fmt;
use std::fmt::Write as _;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    DivisibilityViolation { two_d: u64, q: u64 },
    WrongIndexSet(String),
    Cyclotomy(CyclotomyError),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::DivisibilityViolation { two_d, q } => {
                write!(f, "2d = {two_d} does not divide q - 1 = {}", q - 1)
            }
            GraphError::WrongIndexSet(msg) => write!(f, "wrong index set: {msg}"),
            GraphError::Cyclotomy(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for GraphError {}

impl From<CyclotomyError> for GraphError {
    fn from(e: CyclotomyError) -> Self {
        GraphError::Cyclotomy(e)
    }
}

/// Above this order the self-complement witness samples differences instead
/// of sweeping all of them.
const SELF_COMP_EXHAUSTIVE_MAX_Q: u64 = 1 << 20;
const SELF_COMP_SAMPLES: u64 = 1 << 18;

#[derive(Serialize)]
pub struct GraphDescriptor {
    pub field: FieldDescriptor,
    pub two_d: u64,
    #[serde(rename = "I")]
    pub index_set: Vec<u64>,
    pub t: Option<u32>,
    pub r: Option<u32>,
    pub semi_primitive: bool,
}

/// PP(q, 2d, I): adjacency is `class(a - b) in I`.
#[derive(Debug)]
pub struct Graph {
    field: Arc<Field>,
    index_set: IndexSet,
    params: Option<SemiPrimitiveParams>,
    class_mask: Vec<bool>,
    symmetric: bool,
}

impl Graph {
    /// Builds the graph, verifying `2d | q - 1`. Parameters that are not
    /// semi-primitive are allowed (the Cayley graph is still well defined)
    /// but `params()` stays `None` and character-sum certificates refuse to
    /// run on them.
    pub fn build(field: Arc<Field>, index_set: IndexSet) -> Result<Graph, GraphError> {
        let two_d = index_set.two_d;
        if (field.q() - 1) % two_d != 0 {
            return Err(GraphError::DivisibilityViolation {
                two_d,
                q: field.q(),
            });
        }
        let params = derive_params(field.p(), field.n(), two_d);
        let class_mask = index_set.mask();
        // D = -D iff I is fixed by the class shift of -1.
        let minus_one_class = ((field.q() - 1) / 2) % two_d;
        let symmetric = index_set.shift(minus_one_class) == index_set;
        Ok(Graph {
            field,
            index_set,
            params,
            class_mask,
            symmetric,
        })
    }

    /// Convenience constructor from raw members.
    pub fn build_from_members(
        field: Arc<Field>,
        two_d: u64,
        members: &[u64],
    ) -> Result<Graph, GraphError> {
        let index_set = IndexSet::new(two_d, members)?;
        Graph::build(field, index_set)
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<Field> {
        Arc::clone(&self.field)
    }

    #[inline]
    pub fn two_d(&self) -> u64 {
        self.index_set.two_d
    }

    #[inline]
    pub fn d(&self) -> u64 {
        self.index_set.d()
    }

    pub fn index_set(&self) -> &IndexSet {
        &self.index_set
    }

    /// Semi-primitivity parameters, when `(p, n, 2d)` is semi-primitive.
    pub fn params(&self) -> Option<&SemiPrimitiveParams> {
        self.params.as_ref()
    }

    pub fn is_semi_primitive(&self) -> bool {
        self.params.is_some()
    }

    /// `D = -D`; guaranteed in the semi-primitive case, checked for all.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn class_of(&self, x: Element) -> Result<u64, GraphError> {
        Ok(class_index(&self.field, self.two_d(), x)?)
    }

    /// Whether the nonzero difference `x` lies in the connection set.
    #[inline]
    pub fn in_connection_set(&self, x: Element) -> bool {
        match self.field.discrete_log(x) {
            Ok(log) => self.class_mask[(log % self.two_d()) as usize],
            Err(_) => false,
        }
    }

    /// Cayley adjacency: `a != b` and `class(a - b) in I`.
    #[inline]
    pub fn adjacent(&self, a: Element, b: Element) -> bool {
        let diff = self.field.sub(a, b);
        !diff.is_zero() && self.in_connection_set(diff)
    }

    /// Adjacency in both directions; coincides with `adjacent` when `D = -D`.
    /// Clique verification uses this so that asymmetric (non-semi-primitive)
    /// parameter sets are still handled soundly.
    #[inline]
    pub fn mutually_adjacent(&self, a: Element, b: Element) -> bool {
        self.adjacent(a, b) && (self.symmetric || self.adjacent(b, a))
    }

    /// The connection set `D`, sorted by packed element value.
    pub fn connection_set(&self) -> Vec<Element> {
        let q = self.field.q();
        let two_d = self.two_d();
        let mut out = Vec::with_capacity(((q - 1) / 2) as usize);
        for &j in &self.index_set.members {
            let mut k = j;
            while k < q - 1 {
                out.push(self.field.exp_of(k));
                k += two_d;
            }
        }
        out.sort_unstable();
        out
    }

    /// Neighbors of `v`, i.e. `v + D`, sorted by packed element value.
    pub fn neighbors(&self, v: Element) -> Vec<Element> {
        let mut out: Vec<Element> = self
            .connection_set()
            .into_iter()
            .map(|d| self.field.add(v, d))
            .collect();
        out.sort_unstable();
        out
    }

    /// Degree without materializing the neighbor list.
    pub fn degree(&self, _v: Element) -> u64 {
        self.d() * (self.field.q() - 1) / self.two_d()
    }

    /// Witness that `GP*(q, 2d)` is self-complementary: the map `x -> g^d x`
    /// must exchange edges and non-edges. By translation invariance this
    /// reduces to checking, for every nonzero difference `c`, that exactly
    /// one of `c` and `g^d c` lies in `D`; the sweep over differences is
    /// exhaustive up to `q = 2^20` and randomly sampled beyond, always with
    /// exact class arithmetic.
    pub fn self_complement_witness(&self) -> Result<bool, GraphError> {
        if !self.index_set.is_generalized_peisert() {
            return Err(GraphError::WrongIndexSet(format!(
                "self-complement witness requires I = {{0, ..., d-1}}, got {}",
                self.index_set
            )));
        }
        let q = self.field.q();
        let two_d = self.two_d();
        let d = self.d();
        let check = |log_c: u64| -> bool {
            let in_d = self.class_mask[(log_c % two_d) as usize];
            let image_in_d = self.class_mask[((log_c + d) % two_d) as usize];
            in_d != image_in_d
        };
        if q <= SELF_COMP_EXHAUSTIVE_MAX_Q {
            Ok((0..q - 1).all(check))
        } else {
            let mut rng = StdRng::seed_from_u64(SELF_COMP_SAMPLE_SEED);
            Ok((0..SELF_COMP_SAMPLES).all(|_| check(rng.gen_range(0..q - 1))))
        }
    }

    pub fn descriptor(&self) -> GraphDescriptor {
        GraphDescriptor {
            field: self.field.descriptor(),
            two_d: self.two_d(),
            index_set: self.index_set.members.clone(),
            t: self.params.map(|p| p.t),
            r: self.params.map(|p| p.r),
            semi_primitive: self.params.is_some(),
        }
    }

    /// DIMACS `p edge` export of the subgraph induced on `verts`, for
    /// cross-checks against external clique solvers. Vertices are numbered
    /// 1..=n in the order given.
    pub fn dimacs_induced(&self, verts: &[Element]) -> String {
        let mut edges = Vec::new();
        for i in 0..verts.len() {
            for j in i + 1..verts.len() {
                if self.mutually_adjacent(verts[i], verts[j]) {
                    edges.push((i + 1, j + 1));
                }
            }
        }
        let mut out = String::new();
        let _ = writeln!(out, "p edge {} {}", verts.len(), edges.len());
        for (a, b) in edges {
            let _ = writeln!(out, "e {a} {b}");
        }
        out
    }
}

/// Fixed seed so sampled witnesses are reproducible run to run.
const SELF_COMP_SAMPLE_SEED: u64 = 0x5e1f_c03d_2024_0001;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn graph(p: u64, n: u32, two_d: u64, members: &[u64]) -> Graph {
        let f = Arc::new(Field::new(p, n).unwrap());
        Graph::build_from_members(f, two_d, members).unwrap()
    }

    #[test]
    fn build_validates_parameters() {
        let g = graph(5, 4, 6, &[0, 1, 3]);
        let params = g.params().unwrap();
        assert_eq!((params.t, params.r), (1, 2));

        let paley25 = graph(5, 2, 2, &[0]);
        assert!(paley25.is_semi_primitive());

        let f = Arc::new(Field::new(5, 4).unwrap());
        assert!(matches!(
            Graph::build_from_members(Arc::clone(&f), 4, &[0]).unwrap_err(),
            GraphError::Cyclotomy(_)
        )); // |I| != d
        assert!(matches!(
            Graph::build_from_members(f, 10, &[0, 1, 2, 3, 5]).unwrap_err(),
            GraphError::DivisibilityViolation { .. }
        )); // 10 does not divide 624
    }

    #[test]
    fn adjacency_basics() {
        let g = graph(5, 4, 6, &[0, 1, 3]);
        // 1 lies in C_0 and 0 is in I, so 0 ~ 1.
        assert!(g.adjacent(Element::ZERO, Element::ONE));
        for v in [Element(0), Element(7), Element(624)] {
            assert!(!g.adjacent(v, v));
        }
    }

    #[test]
    fn adjacency_is_symmetric_on_all_pairs_small() {
        let g = graph(3, 2, 2, &[0]); // P_9
        assert!(g.is_symmetric());
        for a in g.field().elements() {
            for b in g.field().elements() {
                assert_eq!(g.adjacent(a, b), g.adjacent(b, a));
            }
        }
    }

    #[test]
    fn regularity_and_neighbor_identities() {
        let g = graph(5, 2, 2, &[0]); // P_25
        let q = g.field().q();
        for v in g.field().elements() {
            assert_eq!(g.neighbors(v).len() as u64, (q - 1) / 2);
        }
        // neighbors(0) = D and neighbors(v) = v + D.
        assert_eq!(g.neighbors(Element::ZERO), g.connection_set());
        let v = Element(7);
        let shifted: Vec<Element> = {
            let mut s: Vec<Element> = g
                .connection_set()
                .iter()
                .map(|&d| g.field().add(v, d))
                .collect();
            s.sort_unstable();
            s
        };
        assert_eq!(g.neighbors(v), shifted);
    }

    #[test]
    fn translation_invariance() {
        let g = graph(5, 4, 6, &[0, 1, 3]);
        let f = g.field();
        for (a, b, c) in [(3u32, 99, 500), (17, 201, 88), (0, 1, 623)] {
            let (a, b, c) = (Element(a), Element(b), Element(c));
            assert_eq!(g.adjacent(a, b), g.adjacent(f.add(a, c), f.add(b, c)));
        }
    }

    #[test]
    fn multiplicative_symmetry_by_c0() {
        // Scaling by g^{2d} stabilizes D.
        let g = graph(5, 4, 6, &[0, 1, 3]);
        let f = g.field();
        let s = f.exp_of(6);
        for (a, b) in [(Element(3), Element(99)), (Element(88), Element(43))] {
            assert_eq!(g.adjacent(a, b), g.adjacent(f.mul(s, a), f.mul(s, b)));
        }
    }

    #[test]
    fn shift_automorphism_iff_index_set_fixed() {
        // For Paley-as-PP(625, 6, {0,2,4}), I + 2 = I, so x -> g^2 x is an
        // automorphism; for {0,1,3} it is not.
        let paley = graph(5, 4, 6, &[0, 2, 4]);
        let f = paley.field();
        let s = f.exp_of(2);
        for (a, b) in [(Element(3), Element(99)), (Element(88), Element(43))] {
            assert_eq!(
                paley.adjacent(a, b),
                paley.adjacent(f.mul(s, a), f.mul(s, b))
            );
        }
        let skew = graph(5, 4, 6, &[0, 1, 3]);
        let f = skew.field();
        let s = f.exp_of(2);
        let mut differs = false;
        for a in f.elements().step_by(11) {
            for b in f.elements().step_by(13) {
                if skew.adjacent(a, b) != skew.adjacent(f.mul(s, a), f.mul(s, b)) {
                    differs = true;
                }
            }
        }
        assert!(differs);
    }

    #[test]
    fn self_complement_witness_examples() {
        // P_9 = GP*(9, 2): multiplication by g exchanges squares and non-squares.
        let p9 = graph(3, 2, 2, &[0]);
        assert!(p9.self_complement_witness().unwrap());

        let gp625 = graph(5, 4, 6, &[0, 1, 2]);
        assert!(gp625.self_complement_witness().unwrap());

        let not_gp = graph(5, 4, 6, &[0, 1, 3]);
        assert!(matches!(
            not_gp.self_complement_witness().unwrap_err(),
            GraphError::WrongIndexSet(_)
        ));
    }

    #[test]
    fn dimacs_export_shape() {
        let g = graph(3, 2, 2, &[0]);
        let verts: Vec<Element> = g.field().elements().collect();
        let out = g.dimacs_induced(&verts);
        let header = out.lines().next().unwrap();
        // P_9 is 4-regular on 9 vertices: 18 edges.
        assert_eq!(header, "p edge 9 18");
        assert_eq!(out.lines().count(), 19);
    }
}
