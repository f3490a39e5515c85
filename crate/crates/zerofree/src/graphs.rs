//! Rooted graphs, exact independence polynomials, in/out partition functions
//! and occupation ratios, ratio composition under graph substitution, and
//! the reproducible graph corpus used by the verification suites.

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{eval_coeffs, poly_add, poly_mul, poly_shift, IndPolynomial};

/// Vertex cap for the exact enumeration backend on general graphs.
pub const ENUMERATION_CAP: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    RootOutOfRange { root: usize, n: usize },
    SelfLoop(usize),
    ParallelEdge(usize, usize),
    AsymmetricAdjacency(usize, usize),
    TooLarge { n: usize },
    Parse(String),
}

impl std::fmt::Display for GraphError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GraphError::RootOutOfRange { root, n } => {
                write!(f, "root {root} out of range for {n} vertices")
            }
            GraphError::SelfLoop(v) => write!(f, "self loop at vertex {v}"),
            GraphError::ParallelEdge(u, v) => write!(f, "parallel edge {u}-{v}"),
            GraphError::AsymmetricAdjacency(u, v) => {
                write!(f, "edge {u}-{v} is not symmetric")
            }
            GraphError::TooLarge { n } => {
                write!(f, "{n} vertices exceed the enumeration cap for non-tree graphs")
            }
            GraphError::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for GraphError {}

/// Simple undirected graph with a distinguished root vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedGraph {
    adj: Vec<Vec<usize>>,
    root: usize,
}

impl RootedGraph {
    pub fn new(adj: Vec<Vec<usize>>, root: usize) -> Result<RootedGraph, GraphError> {
        let n = adj.len();
        if root >= n {
            return Err(GraphError::RootOutOfRange { root, n });
        }
        for (u, nbrs) in adj.iter().enumerate() {
            let mut seen = vec![false; n];
            for &v in nbrs {
                if v == u {
                    return Err(GraphError::SelfLoop(u));
                }
                if v >= n {
                    return Err(GraphError::Parse(format!("neighbor {v} out of range")));
                }
                if seen[v] {
                    return Err(GraphError::ParallelEdge(u, v));
                }
                seen[v] = true;
                if !adj[v].contains(&u) {
                    return Err(GraphError::AsymmetricAdjacency(u, v));
                }
            }
        }
        Ok(RootedGraph { adj, root })
    }

    pub fn single_vertex() -> RootedGraph {
        RootedGraph { adj: vec![vec![]], root: 0 }
    }

    pub fn edge() -> RootedGraph {
        RootedGraph { adj: vec![vec![1], vec![0]], root: 0 }
    }

    pub fn path(n: usize) -> RootedGraph {
        assert!(n >= 1);
        let adj = (0..n)
            .map(|i| {
                let mut nb = Vec::new();
                if i > 0 {
                    nb.push(i - 1);
                }
                if i + 1 < n {
                    nb.push(i + 1);
                }
                nb
            })
            .collect();
        RootedGraph { adj, root: 0 }
    }

    pub fn cycle(n: usize) -> RootedGraph {
        assert!(n >= 3);
        let adj = (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect();
        RootedGraph { adj, root: 0 }
    }

    /// Star with `leaves` leaves, rooted at the center.
    pub fn star(leaves: usize) -> RootedGraph {
        let mut adj = vec![(1..=leaves).collect::<Vec<_>>()];
        adj.extend((0..leaves).map(|_| vec![0]));
        RootedGraph { adj, root: 0 }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn with_root(&self, root: usize) -> Result<RootedGraph, GraphError> {
        if root >= self.n() {
            return Err(GraphError::RootOutOfRange { root, n: self.n() });
        }
        Ok(RootedGraph { adj: self.adj.clone(), root })
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn root_degree(&self) -> usize {
        self.adj[self.root].len()
    }

    pub fn is_tree(&self) -> bool {
        let n = self.n();
        if self.edge_count() != n - 1 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }

    /// Parses the plain-text format: first line `n root`, then line `i`
    /// lists the neighbors of vertex `i` separated by spaces.
    pub fn parse(text: &str) -> Result<RootedGraph, GraphError> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| GraphError::Parse("empty input".into()))?;
        let mut parts = header.split_whitespace();
        let n: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| GraphError::Parse("expected vertex count".into()))?;
        let root: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| GraphError::Parse("expected root index".into()))?;
        let mut adj = Vec::with_capacity(n);
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| GraphError::Parse(format!("missing adjacency line {i}")))?;
            let nbrs: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
            adj.push(nbrs.map_err(|e| GraphError::Parse(format!("line {i}: {e}")))?);
        }
        RootedGraph::new(adj, root)
    }

    /// Children lists of the tree oriented away from the root, in an order
    /// such that children precede their parent (post-order positions).
    fn oriented_children(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let n = self.n();
        let mut children = vec![Vec::new(); n];
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        let mut stack = vec![self.root];
        seen[self.root] = true;
        let mut bfs = Vec::with_capacity(n);
        while let Some(u) = stack.pop() {
            bfs.push(u);
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    children[u].push(v);
                    stack.push(v);
                }
            }
        }
        for &u in bfs.iter().rev() {
            order.push(u);
        }
        (children, order)
    }
}

/// The in/out split of the independence polynomial at the root: `z_in`
/// counts independent sets containing the root, `z_out` the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioPair {
    pub z_in: Vec<BigUint>,
    pub z_out: Vec<BigUint>,
}

impl RatioPair {
    pub fn total(&self) -> IndPolynomial {
        let mut sum = self.z_in.clone();
        poly_add(&mut sum, &self.z_out);
        IndPolynomial::from_coeffs(sum)
    }

    pub fn eval(&self, lambda: Complex64) -> RatioValue {
        let num = eval_coeffs(&self.z_in, lambda);
        let den = eval_coeffs(&self.z_out, lambda);
        RatioValue::div(num, den)
    }
}

/// Value of an occupation ratio on the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RatioValue {
    Finite(Complex64),
    Infinity,
    Indeterminate,
}

pub(crate) const POLE_TOL: f64 = 1e-300;

impl RatioValue {
    pub(crate) fn div(num: Complex64, den: Complex64) -> RatioValue {
        let num_zero = num.norm() < POLE_TOL;
        let den_zero = den.norm() < POLE_TOL;
        match (num_zero, den_zero) {
            (true, true) => RatioValue::Indeterminate,
            (false, true) => RatioValue::Infinity,
            _ => RatioValue::Finite(num / den),
        }
    }

    pub fn finite(&self) -> Option<Complex64> {
        match self {
            RatioValue::Finite(v) => Some(*v),
            _ => None,
        }
    }

    pub fn scale(&self, factor: f64) -> RatioValue {
        match self {
            RatioValue::Finite(v) => RatioValue::Finite(v * factor),
            other => *other,
        }
    }
}

/// Exact `(z_in, z_out)` coefficient pair at the root.
///
/// Trees use the leaf-to-root recursion (iterative, so deep paths are fine);
/// other graphs use branch enumeration up to [`ENUMERATION_CAP`] vertices.
pub fn ratio_pair(g: &RootedGraph) -> Result<RatioPair, GraphError> {
    if g.is_tree() {
        Ok(tree_ratio_pair(g))
    } else if g.n() <= ENUMERATION_CAP {
        Ok(enumeration_ratio_pair(g))
    } else {
        Err(GraphError::TooLarge { n: g.n() })
    }
}

/// Exact independence polynomial of the whole graph.
pub fn ind_poly(g: &RootedGraph) -> Result<IndPolynomial, GraphError> {
    Ok(ratio_pair(g)?.total())
}

fn tree_ratio_pair(g: &RootedGraph) -> RatioPair {
    let (children, order) = g.oriented_children();
    let n = g.n();
    let one = || vec![BigUint::one()];
    let mut z_in: Vec<Option<Vec<BigUint>>> = vec![None; n];
    let mut z_out: Vec<Option<Vec<BigUint>>> = vec![None; n];
    for &u in &order {
        let mut in_prod = one();
        let mut out_prod = one();
        for &c in &children[u] {
            let ci = z_in[c].take().expect("post-order");
            let co = z_out[c].take().expect("post-order");
            in_prod = poly_mul(&in_prod, &co);
            let mut total = ci;
            poly_add(&mut total, &co);
            out_prod = poly_mul(&out_prod, &total);
        }
        z_in[u] = Some(poly_shift(&in_prod, 1));
        z_out[u] = Some(out_prod);
    }
    RatioPair {
        z_in: z_in[g.root].take().expect("root computed"),
        z_out: z_out[g.root].take().expect("root computed"),
    }
}

fn enumeration_ratio_pair(g: &RootedGraph) -> RatioPair {
    let n = g.n();
    let masks: Vec<u64> = (0..n)
        .map(|u| g.adj[u].iter().fold(0u64, |m, &v| m | (1 << v)))
        .collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let binom = binomial_table(n);
    let root_bit = 1u64 << g.root;
    // sets avoiding the root live in G - root; sets containing it live in
    // G - N[root], shifted by one occupied vertex
    let z_out = count_independent(&masks, all & !root_bit, &binom);
    let closed = root_bit | masks[g.root];
    let z_in = poly_shift(&count_independent(&masks, all & !closed, &binom), 1);
    RatioPair { z_in, z_out }
}

fn binomial_table(n: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut row = vec![BigUint::one()];
        for j in 1..=k {
            let prev = &rows[k - 1];
            let left = if j <= k - 1 { prev[j].clone() } else { BigUint::zero() };
            row.push(left + &prev[j - 1]);
        }
        rows.push(row);
    }
    rows
}

/// Independent-set counts by size within the `active` vertex set, by
/// branching on a maximum-degree vertex: `Z(G) = Z(G - v) + x Z(G - N[v])`.
fn count_independent(masks: &[u64], active: u64, binom: &[Vec<BigUint>]) -> Vec<BigUint> {
    let mut best_v = usize::MAX;
    let mut best_deg = 0usize;
    let mut m = active;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        let deg = (masks[v] & active).count_ones() as usize;
        if deg > best_deg || best_v == usize::MAX {
            best_deg = deg;
            best_v = v;
        }
    }
    if best_v == usize::MAX {
        return vec![BigUint::one()];
    }
    if best_deg == 0 {
        // edgeless: binomial counts
        let k = active.count_ones() as usize;
        return binom[k].clone();
    }
    let v_bit = 1u64 << best_v;
    let mut out = count_independent(masks, active & !v_bit, binom);
    let with_v = count_independent(masks, active & !(v_bit | masks[best_v]), binom);
    poly_add(&mut out, &poly_shift(&with_v, 1));
    out
}

/// Occupation ratio at the root, evaluated on the Riemann sphere.
///
/// Trees are evaluated by the projective form of the in/out recursion,
/// `R = lambda / prod(1 + R_child)`, which runs in linear time and cannot
/// overflow; other graphs evaluate the exact coefficient pair.
pub fn ratio(g: &RootedGraph, lambda: Complex64) -> Result<RatioValue, GraphError> {
    if g.is_tree() {
        Ok(tree_ratio_value(g, lambda))
    } else if g.n() <= ENUMERATION_CAP {
        Ok(enumeration_ratio_pair(g).eval(lambda))
    } else {
        Err(GraphError::TooLarge { n: g.n() })
    }
}

fn tree_ratio_value(g: &RootedGraph, lambda: Complex64) -> RatioValue {
    let (children, order) = g.oriented_children();
    let mut value: Vec<RatioValue> = vec![RatioValue::Finite(Complex64::new(0.0, 0.0)); g.n()];
    for &u in &order {
        let mut denom = Complex64::new(1.0, 0.0);
        let mut zero_factors = 0usize;
        let mut infinite_factors = 0usize;
        for &c in &children[u] {
            match value[c] {
                RatioValue::Indeterminate => {
                    value[u] = RatioValue::Indeterminate;
                    denom = Complex64::new(f64::NAN, 0.0);
                    break;
                }
                RatioValue::Infinity => infinite_factors += 1,
                RatioValue::Finite(r) => {
                    let f = r + 1.0;
                    if f.norm() < POLE_TOL {
                        zero_factors += 1;
                    } else {
                        denom *= f;
                    }
                }
            }
        }
        if denom.re.is_nan() {
            continue;
        }
        value[u] = match (zero_factors > 0, infinite_factors > 0) {
            (true, true) => RatioValue::Indeterminate,
            (true, false) => RatioValue::Infinity,
            (false, true) => RatioValue::Finite(Complex64::new(0.0, 0.0)),
            (false, false) => RatioValue::div(lambda, denom),
        };
    }
    value[g.root]
}

/// Ratio of the ratio pair "at infinity": the limit as `lambda` grows.
fn ratio_at_infinity(pair: &RatioPair) -> RatioValue {
    let deg = |c: &[BigUint]| c.iter().rposition(|x| !x.is_zero());
    match (deg(&pair.z_in), deg(&pair.z_out)) {
        (None, None) => RatioValue::Indeterminate,
        (Some(_), None) => RatioValue::Infinity,
        (None, Some(_)) => RatioValue::Finite(Complex64::new(0.0, 0.0)),
        (Some(di), Some(dout)) => {
            if di > dout {
                RatioValue::Infinity
            } else if di < dout {
                RatioValue::Finite(Complex64::new(0.0, 0.0))
            } else {
                let a = crate::poly::eval_coeffs(&pair.z_in[di..=di], Complex64::new(1.0, 0.0));
                let b = crate::poly::eval_coeffs(&pair.z_out[dout..=dout], Complex64::new(1.0, 0.0));
                RatioValue::Finite(a / b)
            }
        }
    }
}

/// Composition of ratios: `R_H(R_G(lambda))`, the ratio of the graph
/// obtained by substituting a copy of `G` for every vertex of `H`.
pub fn compose_ratio(
    h: &RootedGraph,
    g: &RootedGraph,
    lambda: Complex64,
) -> Result<RatioValue, GraphError> {
    match ratio(g, lambda)? {
        RatioValue::Indeterminate => Ok(RatioValue::Indeterminate),
        RatioValue::Infinity => Ok(ratio_at_infinity(&ratio_pair(h)?)),
        RatioValue::Finite(inner) => ratio_value_at(h, inner),
    }
}

fn ratio_value_at(g: &RootedGraph, value: Complex64) -> Result<RatioValue, GraphError> {
    if g.is_tree() {
        Ok(tree_ratio_value(g, value))
    } else if g.n() <= ENUMERATION_CAP {
        Ok(enumeration_ratio_pair(g).eval(value))
    } else {
        Err(GraphError::TooLarge { n: g.n() })
    }
}

/// Explicit substitution: every vertex of `h` is replaced by a copy of
/// `(g, root)`, and each edge of `h` joins the two root copies. The root of
/// the result is the root copy inside the copy substituted for `h`'s root.
pub fn substitute(h: &RootedGraph, g: &RootedGraph) -> RootedGraph {
    let gn = g.n();
    let hn = h.n();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); gn * hn];
    for hv in 0..hn {
        let base = hv * gn;
        for u in 0..gn {
            for &v in &g.adj[u] {
                adj[base + u].push(base + v);
            }
        }
        for &hw in &h.adj[hv] {
            adj[base + g.root].push(hw * gn + g.root);
        }
    }
    RootedGraph {
        adj,
        root: h.root * gn + g.root,
    }
}

pub mod corpus {
    //! Reproducible graph corpus: exhaustive rooted trees by canonical level
    //! sequences (Beyer-Hedetniemi successor rule) and seeded random
    //! degree-bounded graphs.

    use super::*;

    /// Canonical level sequences of all rooted trees on `n` vertices, in
    /// decreasing lexicographic order. The root has level 1.
    pub fn rooted_tree_level_sequences(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        let mut l: Vec<usize> = (1..=n).collect();
        loop {
            out.push(l.clone());
            let Some(p) = (0..n).rev().find(|&i| l[i] > 2) else {
                break;
            };
            let q = (0..p)
                .rev()
                .find(|&i| l[i] == l[p] - 1)
                .expect("level p-1 exists left of p");
            for i in p..n {
                l[i] = l[i - (p - q)];
            }
        }
        out
    }

    pub fn tree_from_level_sequence(levels: &[usize]) -> RootedGraph {
        let n = levels.len();
        let mut adj = vec![Vec::new(); n];
        for i in 1..n {
            let parent = (0..i)
                .rev()
                .find(|&j| levels[j] == levels[i] - 1)
                .expect("canonical level sequence");
            adj[i].push(parent);
            adj[parent].push(i);
        }
        RootedGraph { adj, root: 0 }
    }

    /// All rooted trees with between 1 and `max_n` vertices.
    pub fn exhaustive_rooted_trees(max_n: usize) -> Vec<RootedGraph> {
        (1..=max_n)
            .flat_map(|n| {
                rooted_tree_level_sequences(n)
                    .into_iter()
                    .map(|l| tree_from_level_sequence(&l))
            })
            .collect()
    }

    /// Connected random graph on up to `max_n` vertices with maximum degree
    /// at most `max_deg`: random attachment tree plus random extra edges
    /// subject to the degree cap.
    pub fn random_degree_bounded_graph(
        rng: &mut ChaCha8Rng,
        max_n: usize,
        max_deg: usize,
    ) -> RootedGraph {
        let n = rng.gen_range(2..=max_n.max(2));
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 1..n {
            let candidates: Vec<usize> = (0..v).filter(|&u| adj[u].len() < max_deg).collect();
            let u = if candidates.is_empty() {
                // every earlier vertex saturated; retire the cap for this edge
                rng.gen_range(0..v)
            } else {
                candidates[rng.gen_range(0..candidates.len())]
            };
            adj[v].push(u);
            adj[u].push(v);
        }
        let extra_tries = n;
        for _ in 0..extra_tries {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v
                && adj[u].len() < max_deg
                && adj[v].len() < max_deg
                && !adj[u].contains(&v)
                && rng.gen::<f64>() < 0.5
            {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        let root = rng.gen_range(0..n);
        RootedGraph { adj, root }
    }

    pub fn random_graphs(count: usize, max_n: usize, max_deg: usize, seed: u64) -> Vec<RootedGraph> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| random_degree_bounded_graph(&mut rng, max_n, max_deg))
            .collect()
    }

    /// The maximum-degree-three corpus: exhaustive trees up to 9 vertices
    /// filtered by degree, plus seeded random graphs up to 14 vertices.
    pub fn degree_two_corpus() -> Vec<RootedGraph> {
        let mut graphs: Vec<RootedGraph> = exhaustive_rooted_trees(9)
            .into_iter()
            .filter(|g| g.max_degree() <= 3)
            .collect();
        graphs.extend(random_graphs(60, 14, 3, 0x5EED_D2));
        graphs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn construction_validation() {
        assert!(RootedGraph::new(vec![vec![1], vec![0]], 0).is_ok());
        assert!(matches!(
            RootedGraph::new(vec![vec![0]], 0),
            Err(GraphError::SelfLoop(0))
        ));
        assert!(matches!(
            RootedGraph::new(vec![vec![1], vec![]], 0),
            Err(GraphError::AsymmetricAdjacency(0, 1))
        ));
        assert!(matches!(
            RootedGraph::new(vec![vec![1, 1], vec![0, 0]], 0),
            Err(GraphError::ParallelEdge(0, 1))
        ));
        assert!(matches!(
            RootedGraph::new(vec![vec![]], 3),
            Err(GraphError::RootOutOfRange { .. })
        ));
    }

    #[test]
    fn ind_poly_basics() {
        let p = ind_poly(&RootedGraph::single_vertex()).unwrap();
        assert_eq!(p.coefficients(), &[u(1), u(1)]);

        let p = ind_poly(&RootedGraph::edge()).unwrap();
        assert_eq!(p.coefficients(), &[u(1), u(2)]);

        // C4 by subset enumeration oracle: 1 + 4x + 2x^2
        let p = ind_poly(&RootedGraph::cycle(4)).unwrap();
        assert_eq!(p.coefficients(), &[u(1), u(4), u(2)]);
    }

    #[test]
    fn ratio_pair_splits_total() {
        for g in [
            RootedGraph::cycle(5),
            RootedGraph::path(6),
            RootedGraph::star(4),
        ] {
            let pair = ratio_pair(&g).unwrap();
            assert!(pair.z_in[0].is_zero());
            assert_eq!(pair.z_in[1], u(1)); // the root alone
            let total = pair.total();
            assert_eq!(total.coefficients()[0], u(1));
            assert_eq!(total.coefficients()[1], u(g.n() as u64));
        }
    }

    #[test]
    fn ratio_examples() {
        let lambda = c(0.37, -0.22);
        // single vertex: lambda
        match ratio(&RootedGraph::single_vertex(), lambda).unwrap() {
            RatioValue::Finite(v) => assert!((v - lambda).norm() < 1e-15),
            other => panic!("{other:?}"),
        }
        // edge rooted at an end: lambda / (1 + lambda)
        match ratio(&RootedGraph::edge(), lambda).unwrap() {
            RatioValue::Finite(v) => {
                assert!((v - lambda / (lambda + 1.0)).norm() < 1e-15)
            }
            other => panic!("{other:?}"),
        }
        // star K_{1,3} at the center: lambda / (1+lambda)^3
        match ratio(&RootedGraph::star(3), lambda).unwrap() {
            RatioValue::Finite(v) => {
                let expect = lambda / (lambda + 1.0).powu(3);
                assert!((v - expect).norm() < 1e-14)
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ratio_extended_values() {
        // edge at lambda = -1: z_out = 1 + lambda = 0, z_in = -1
        assert_eq!(
            ratio(&RootedGraph::edge(), c(-1.0, 0.0)).unwrap(),
            RatioValue::Infinity
        );
        // path of 3 rooted at an end at lambda = -1: pole cancels to 0
        match ratio(&RootedGraph::path(3), c(-1.0, 0.0)).unwrap() {
            RatioValue::Finite(v) => assert!(v.norm() < 1e-14),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tree_recursion_matches_enumeration() {
        for levels in corpus::rooted_tree_level_sequences(7) {
            let g = corpus::tree_from_level_sequence(&levels);
            let tree = tree_ratio_pair(&g);
            let enumr = enumeration_ratio_pair(&g);
            assert_eq!(tree, enumr, "levels {levels:?}");
        }
    }

    #[test]
    fn compose_ratio_edge_edge() {
        // R_H(R_G(1)) = (1/2) / (3/2) = 1/3, and the substituted path of 4
        // rooted at its second vertex agrees
        let h = RootedGraph::edge();
        let g = RootedGraph::edge();
        let v = compose_ratio(&h, &g, c(1.0, 0.0)).unwrap().finite().unwrap();
        assert!((v - c(1.0 / 3.0, 0.0)).norm() < 1e-15);

        let substituted = substitute(&h, &g);
        assert_eq!(substituted.n(), 4);
        assert!(substituted.is_tree());
        let direct = ratio(&substituted, c(1.0, 0.0)).unwrap().finite().unwrap();
        assert!((v - direct).norm() < 1e-15);
    }

    #[test]
    fn compose_with_single_vertex_is_identity() {
        let lambda = c(0.8, 0.1);
        let g = RootedGraph::path(4);
        let single = RootedGraph::single_vertex();
        let through = compose_ratio(&single, &g, lambda).unwrap().finite().unwrap();
        let direct = ratio(&g, lambda).unwrap().finite().unwrap();
        assert!((through - direct).norm() < 1e-15);
        let through = compose_ratio(&g, &single, lambda).unwrap().finite().unwrap();
        assert!((through - direct).norm() < 1e-15);
    }

    #[test]
    fn substitution_identity_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let lambda = c(0.23, 0.41);
        for _ in 0..25 {
            let h = corpus::random_degree_bounded_graph(&mut rng, 4, 3);
            let g = corpus::random_degree_bounded_graph(&mut rng, 4, 3);
            let composed = compose_ratio(&h, &g, lambda).unwrap();
            let explicit = ratio(&substitute(&h, &g), lambda).unwrap();
            match (composed, explicit) {
                (RatioValue::Finite(a), RatioValue::Finite(b)) => {
                    assert!((a - b).norm() < 1e-9 * (1.0 + a.norm()), "{a} vs {b}")
                }
                (x, y) => assert_eq!(x, y),
            }
        }
    }

    #[test]
    fn level_sequence_counts_match_known_values() {
        // rooted trees on n vertices: 1, 1, 2, 4, 9, 20, 48, 115, 286
        let expected = [1usize, 1, 2, 4, 9, 20, 48, 115, 286];
        for (i, &want) in expected.iter().enumerate() {
            let got = corpus::rooted_tree_level_sequences(i + 1).len();
            assert_eq!(got, want, "n = {}", i + 1);
        }
    }

    #[test]
    fn corpus_graphs_are_valid() {
        for g in corpus::degree_two_corpus() {
            assert!(g.max_degree() <= 3);
            // construct through the validator
            RootedGraph::new(g.adjacency().to_vec(), g.root()).unwrap();
        }
    }

    #[test]
    fn parse_round_trip() {
        let text = "3 1\n1\n0 2\n1\n";
        let g = RootedGraph::parse(text).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.root(), 1);
        assert!(g.is_tree());
        assert!(RootedGraph::parse("junk").is_err());
    }
}
