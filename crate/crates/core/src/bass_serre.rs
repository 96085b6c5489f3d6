//! The Bass-Serre tree of the HNN splitting `BS(n,m) = HNN(Z, nZ, n -> m)`.
//!
//! Vertices are left cosets `g<a>`, positive edges are left cosets
//! `g<a^n>` with source `g<a>` and range `g b^-1 <a>`. The group acts by
//! left multiplication.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::group::{cyclically_reduce, BsPresentation, GroupWord, Letter, NormalForm};

/// A vertex `h<a>`, stored by its tail-free normal form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeVertex {
    rep: NormalForm,
}

impl TreeVertex {
    /// The vertex `<a>`.
    pub fn base() -> Self {
        TreeVertex {
            rep: NormalForm::identity(),
        }
    }

    pub fn coset_rep(&self) -> &NormalForm {
        &self.rep
    }

    /// `h . v`
    pub fn translate(&self, h: &NormalForm, g: &BsPresentation) -> TreeVertex {
        vertex_of(&h.mul(&self.rep, g), g)
    }

    /// Distance to the base vertex.
    pub fn depth(&self) -> usize {
        self.rep.b_length()
    }

    pub fn distance(&self, other: &TreeVertex, g: &BsPresentation) -> usize {
        self.rep.inverse(g).mul(&other.rep, g).b_length()
    }

    /// The `|n| + |m|` adjacent vertices: `h a^i b^-1 <a>` for `i < |n|`
    /// and `h a^i b <a>` for `i < |m|`.
    pub fn neighbors(&self, g: &BsPresentation) -> Vec<TreeVertex> {
        let down = (0..g.n().abs()).map(|i| (i, -1));
        let up = (0..g.m().abs()).map(|i| (i, 1));
        down.chain(up)
            .map(|(i, e)| {
                let step = GroupWord::from_syllables([(Letter::A, i.into()), (Letter::B, e.into())]);
                vertex_of(&self.rep.mul_word(&step, g), g)
            })
            .collect()
    }
}

impl fmt::Display for TreeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

/// A positive edge `h<a^n>`, stored with its tail reduced into `[0, |n|)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeEdge {
    rep: NormalForm,
}

impl TreeEdge {
    pub fn coset_rep(&self) -> &NormalForm {
        &self.rep
    }
}

impl fmt::Display for TreeEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

pub fn vertex_of(x: &NormalForm, _g: &BsPresentation) -> TreeVertex {
    TreeVertex {
        rep: x.without_tail(),
    }
}

pub fn edge_of(x: &NormalForm, g: &BsPresentation) -> TreeEdge {
    let tail = x.tail().mod_floor(&BigInt::from(g.n().abs()));
    TreeEdge {
        rep: x.with_tail(tail),
    }
}

pub fn source(e: &TreeEdge, g: &BsPresentation) -> TreeVertex {
    vertex_of(&e.rep, g)
}

pub fn range(e: &TreeEdge, g: &BsPresentation) -> TreeVertex {
    vertex_of(&e.rep.mul_word(&GroupWord::b(-1), g), g)
}

/// Whether `x` fixes `v = h<a>`, i.e. `h^-1 x h` lies in `<a>`.
pub fn fixes_vertex(x: &NormalForm, v: &TreeVertex, g: &BsPresentation) -> bool {
    v.rep.conjugate(x, g).b_length() == 0
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// `witness^-1 * g * witness` lies in `<a>`, so `g` fixes `witness<a>`.
    Elliptic { witness: NormalForm },
    Hyperbolic { translation_length: usize },
}

impl Classification {
    pub fn is_elliptic(&self) -> bool {
        matches!(self, Classification::Elliptic { .. })
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Elliptic { witness } => write!(f, "elliptic witness={witness}"),
            Classification::Hyperbolic { translation_length } => {
                write!(f, "hyperbolic translation_length={translation_length}")
            }
        }
    }
}

pub fn classify(x: &NormalForm, g: &BsPresentation) -> Classification {
    let (conjugator, core) = cyclically_reduce(x, g);
    if core.b_length() == 0 {
        Classification::Elliptic {
            witness: conjugator,
        }
    } else {
        Classification::Hyperbolic {
            translation_length: core.b_length(),
        }
    }
}

/// `classify(x)` hyperbolic implies `classify(x^z)` hyperbolic.
pub fn power_classify_consistency(x: &NormalForm, z: i64, g: &BsPresentation) -> bool {
    if z == 0 || classify(x, g).is_elliptic() {
        return true;
    }
    !classify(&x.pow(z, g), g).is_elliptic()
}

/// The vertices of the geodesic from `u` to `w`, both ends included.
pub fn geodesic(u: &TreeVertex, w: &TreeVertex, g: &BsPresentation) -> Vec<TreeVertex> {
    let z = u.rep.inverse(g).mul(&w.rep, g);
    let mut step = GroupWord::identity();
    let mut path = vec![u.clone()];
    for c in z.prefix() {
        step.push(Letter::A, c.shift.clone());
        step.push(Letter::B, BigInt::from(c.orient.sign()));
        path.push(vertex_of(&u.rep.mul_word(&step, g), g));
    }
    path
}

/// Search for a vertex fixed by every element of `xs` within distance
/// `radius_bound` of the fixed vertex of the first element.
///
/// Fixed sets and balls are subtrees, so the admissible set `C` is convex:
/// merging one element at a time, the geodesic from the current point of
/// `C` to a fixed point of the next element meets the new intersection
/// whenever it is nonempty. The returned vertex is the projection of `<a>`
/// onto `C`, i.e. the unique one whose representative `g0` has least
/// b-length; every element of `xs` lies in `g0 <a> g0^-1`. `None` means no
/// vertex of the ball is fixed by all of `xs`.
pub fn common_fixed_vertex(
    xs: &[NormalForm],
    g: &BsPresentation,
    radius_bound: usize,
) -> Result<Option<(TreeVertex, NormalForm)>> {
    if xs.is_empty() {
        return Err(Error::InvalidArgument("empty element list".into()));
    }
    let mut anchors = Vec::with_capacity(xs.len());
    for x in xs {
        match classify(x, g) {
            Classification::Hyperbolic { .. } => return Err(Error::Hyperbolic(x.to_string())),
            Classification::Elliptic { witness } => anchors.push(vertex_of(&witness, g)),
        }
    }
    let start = anchors[0].clone();
    let admissible = |v: &TreeVertex, upto: usize| {
        start.distance(v, g) <= radius_bound && xs[..upto].iter().all(|x| fixes_vertex(x, v, g))
    };
    let mut current = start.clone();
    for (j, anchor) in anchors.iter().enumerate().skip(1) {
        match geodesic(&current, anchor, g).into_iter().find(|v| admissible(v, j + 1)) {
            Some(v) => current = v,
            None => return Ok(None),
        }
    }
    let best = geodesic(&TreeVertex::base(), &current, g)
        .into_iter()
        .find(|v| admissible(v, xs.len()))
        .expect("the endpoint is admissible");
    let g0 = best.rep.clone();
    Ok(Some((best, g0)))
}

/// The induced subgraph on a ball of the tree.
#[derive(Debug, Clone)]
pub struct Ball {
    pub vertices: Vec<TreeVertex>,
    /// `(edge, source, range)` for every positive edge with both ends inside.
    pub edges: Vec<(TreeEdge, TreeVertex, TreeVertex)>,
}

impl Ball {
    /// Directed DOT graph with nodes and edges sorted by label.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph bass_serre {\n");
        let mut nodes: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        nodes.sort();
        for v in nodes {
            let _ = writeln!(out, "  \"{v}\";");
        }
        let mut edges: Vec<(String, String, String)> = self
            .edges
            .iter()
            .map(|(e, s, r)| (e.to_string(), s.to_string(), r.to_string()))
            .collect();
        edges.sort();
        for (e, s, r) in edges {
            let _ = writeln!(out, "  \"{s}\" -> \"{r}\" [label=\"{e}\"];");
        }
        out.push_str("}\n");
        out
    }

    /// Degree of each vertex inside the ball.
    pub fn degrees(&self) -> BTreeMap<TreeVertex, usize> {
        let mut deg: BTreeMap<TreeVertex, usize> =
            self.vertices.iter().map(|v| (v.clone(), 0)).collect();
        for (_, s, r) in &self.edges {
            *deg.get_mut(s).expect("source in ball") += 1;
            *deg.get_mut(r).expect("range in ball") += 1;
        }
        deg
    }
}

pub fn export_ball(center: &TreeVertex, radius: usize, g: &BsPresentation) -> Ball {
    let mut seen = BTreeSet::from([center.clone()]);
    let mut queue = VecDeque::from([(center.clone(), 0usize)]);
    let mut order = Vec::new();
    while let Some((v, d)) = queue.pop_front() {
        order.push(v.clone());
        if d == radius {
            continue;
        }
        for w in v.neighbors(g) {
            if seen.insert(w.clone()) {
                queue.push_back((w, d + 1));
            }
        }
    }
    let mut edges = Vec::new();
    for v in &order {
        for i in 0..g.n().abs() {
            let e = edge_of(&v.rep.mul(&NormalForm::a_power(i), g), g);
            let r = range(&e, g);
            if seen.contains(&r) {
                edges.push((e, v.clone(), r));
            }
        }
    }
    Ball {
        vertices: order,
        edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{normalize, parse_word};

    fn bs(n: i64, m: i64) -> BsPresentation {
        BsPresentation::new(n, m).unwrap()
    }

    fn nf(text: &str, g: &BsPresentation) -> NormalForm {
        normalize(&parse_word(text).unwrap(), g)
    }

    #[test]
    fn source_and_range() {
        let g = bs(2, 3);
        let e = edge_of(&NormalForm::a_power(2), &g);
        assert_eq!(e.coset_rep(), &NormalForm::identity());
        assert_eq!(source(&e, &g), TreeVertex::base());
        assert_eq!(range(&e, &g), vertex_of(&nf("b^-1", &g), &g));
        assert_eq!(vertex_of(&nf("a^7", &g), &g), TreeVertex::base());
        let e = edge_of(&nf("a", &g), &g);
        assert_eq!(range(&e, &g).to_string(), "a b^-1");
        // representatives differing by a^{nz} give the same edge
        assert_eq!(edge_of(&nf("b a^5", &g), &g), edge_of(&nf("b a", &g), &g));
    }

    #[test]
    fn fixed_vertices() {
        let g = bs(2, 3);
        assert!(fixes_vertex(&nf("a^9", &g), &TreeVertex::base(), &g));
        assert!(fixes_vertex(&nf("b a b^-1", &g), &vertex_of(&nf("b", &g), &g), &g));
        assert!(!fixes_vertex(&nf("b", &g), &TreeVertex::base(), &g));
    }

    #[test]
    fn classification_examples() {
        let g = bs(2, 3);
        assert_eq!(
            classify(&nf("a", &g), &g),
            Classification::Elliptic {
                witness: NormalForm::identity()
            }
        );
        assert_eq!(
            classify(&nf("b", &g), &g),
            Classification::Hyperbolic {
                translation_length: 1
            }
        );
        assert_eq!(
            classify(&nf("b a b^-1", &g), &g),
            Classification::Elliptic {
                witness: nf("b", &g)
            }
        );
        assert!(power_classify_consistency(&nf("b", &g), 3, &g));
        assert!(power_classify_consistency(&nf("a", &g), -2, &g));
        assert!(power_classify_consistency(&nf("a b", &g), 2, &g));
    }

    #[test]
    fn common_fixed_examples() {
        let g = bs(2, 3);
        let (v, g0) = common_fixed_vertex(&[nf("a", &g), nf("a^3", &g)], &g, 2)
            .unwrap()
            .unwrap();
        assert_eq!(v, TreeVertex::base());
        assert!(g0.is_identity());

        let (v, g0) = common_fixed_vertex(&[nf("b a b^-1", &g)], &g, 2).unwrap().unwrap();
        assert_eq!(v, vertex_of(&nf("b", &g), &g));
        assert_eq!(g0, nf("b", &g));

        let xs = [nf("a^2", &g), nf("b a^3 b^-1", &g)];
        let prod = xs[0].mul(&xs[1], &g);
        let found = common_fixed_vertex(&xs, &g, 2).unwrap();
        if classify(&prod, &g).is_elliptic() {
            let (v, _) = found.expect("common fixed vertex");
            assert!(xs.iter().all(|x| fixes_vertex(x, &v, &g)));
        }

        assert!(matches!(
            common_fixed_vertex(&[nf("b", &g)], &g, 2),
            Err(Error::Hyperbolic(_))
        ));
    }

    /// Exhaustive search over the ball, as a reference.
    fn ball_search(xs: &[NormalForm], g: &BsPresentation, radius: usize) -> Option<TreeVertex> {
        let start = match classify(&xs[0], g) {
            Classification::Elliptic { witness } => vertex_of(&witness, g),
            Classification::Hyperbolic { .. } => unreachable!(),
        };
        export_ball(&start, radius, g)
            .vertices
            .into_iter()
            .filter(|v| xs.iter().all(|x| fixes_vertex(x, v, g)))
            .min_by(|a, b| a.coset_rep().cmp(b.coset_rep()))
    }

    #[test]
    fn common_fixed_matches_ball_search() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for (n, m) in [(2, 3), (2, -2), (3, 3)] {
            let g = bs(n, m);
            for _ in 0..40 {
                let h = crate::sample::random_word(&mut rng, 2, 3);
                let u = crate::sample::random_word(&mut rng, 2, 2);
                let (s, t) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
                let x = normalize(&h.concat(&GroupWord::a(s)).concat(&h.inverse()), &g);
                let hu = h.concat(&u);
                let y = normalize(&hu.concat(&GroupWord::a(t)).concat(&hu.inverse()), &g);
                let xs = [x, y];
                for radius in [0, 1, 2, 3] {
                    let fast = common_fixed_vertex(&xs, &g, radius).unwrap().map(|p| p.0);
                    assert_eq!(fast, ball_search(&xs, &g, radius), "{g} {} {} r={radius}", xs[0], xs[1]);
                }
            }
        }
    }

    #[test]
    fn geodesic_walks_the_prefix() {
        let g = bs(2, 3);
        let u = vertex_of(&nf("b", &g), &g);
        let w = vertex_of(&nf("b^-1 a", &g), &g);
        let path = geodesic(&u, &w, &g);
        assert_eq!(path.len(), 3);
        assert_eq!(path[1], TreeVertex::base());
        for pair in path.windows(2) {
            assert_eq!(pair[0].distance(&pair[1], &g), 1);
        }
    }

    #[test]
    fn ball_counts() {
        let g = bs(2, 3);
        let ball = export_ball(&TreeVertex::base(), 0, &g);
        assert_eq!(ball.vertices.len(), 1);
        assert_eq!(ball.to_dot(), "digraph bass_serre {\n  \"e\";\n}\n");

        let ball = export_ball(&TreeVertex::base(), 1, &g);
        assert_eq!(ball.vertices.len(), 6);
        assert_eq!(ball.edges.len(), 5);
        let ball = export_ball(&TreeVertex::base(), 2, &g);
        assert_eq!(ball.vertices.len(), 1 + 5 + 5 * 4);
        let deg_sum: usize = ball.degrees().values().sum();
        assert_eq!(deg_sum, 2 * ball.edges.len());
    }

    #[test]
    fn radius_one_dot_golden() {
        let g = bs(2, 3);
        let dot = export_ball(&TreeVertex::base(), 1, &g).to_dot();
        let expected = "digraph bass_serre {
  \"a b\";
  \"a b^-1\";
  \"a^2 b\";
  \"b\";
  \"b^-1\";
  \"e\";
  \"e\" -> \"a b^-1\" [label=\"a\"];
  \"a b\" -> \"e\" [label=\"a b\"];
  \"a^2 b\" -> \"e\" [label=\"a^2 b\"];
  \"b\" -> \"e\" [label=\"b\"];
  \"e\" -> \"b^-1\" [label=\"e\"];
}
";
        assert_eq!(dot, expected);
    }
}
