//! The rational recursion family and its bridge to the exponential
//! semi-group: expression trees for `F(z_1..z_k) = lambda / prod(1 + z_j)`,
//! tree realizations of semi-group elements with integer multiplicities
//! `floor(s_i * d)`, and the rescaled occupation ratios that converge to the
//! semi-group observables.

use num_complex::Complex64;

use crate::graphs::{ratio, GraphError, RatioValue, RootedGraph};
use crate::orbit::GSpec;

#[derive(Debug, Clone, PartialEq)]
pub enum FSpecError {
    /// Multiplicity sum at a node exceeds the declared degree bound.
    ArityExceedsDegree { sum: u64, d: u32 },
    ZeroMultiplicity,
    /// Some `1 + child` factor vanished during evaluation.
    Pole,
    Graph(GraphError),
}

impl std::fmt::Display for FSpecError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FSpecError::ArityExceedsDegree { sum, d } => {
                write!(f, "child multiplicities sum to {sum}, exceeding degree bound {d}")
            }
            FSpecError::ZeroMultiplicity => write!(f, "child multiplicities must be positive"),
            FSpecError::Pole => write!(f, "evaluation hit a pole (1 + z = 0)"),
            FSpecError::Graph(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FSpecError {}

impl From<GraphError> for FSpecError {
    fn from(e: GraphError) -> FSpecError {
        FSpecError::Graph(e)
    }
}

/// Expression tree for the rational recursion family: the identity map, or
/// an application of `F` to children with integer multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FSpec {
    Identity,
    Node { children: Vec<(u32, FSpec)> },
}

impl FSpec {
    /// Leaf node `F() = lambda`.
    pub fn leaf() -> FSpec {
        FSpec::Node { children: Vec::new() }
    }

    pub fn node(children: Vec<(u32, FSpec)>) -> FSpec {
        FSpec::Node { children }
    }

    fn multiplicity_sum(children: &[(u32, FSpec)]) -> u64 {
        children.iter().map(|(p, _)| *p as u64).sum()
    }
}

const POLE_TOL: f64 = 1e-300;

/// Recursive evaluation of `F_lambda(f_1(z) x p_1, ..., f_j(z) x p_j)` with
/// the degree bound `d` enforced at every node.
pub fn f_eval(spec: &FSpec, d: u32, lambda: Complex64, z: Complex64) -> Result<Complex64, FSpecError> {
    match spec {
        FSpec::Identity => Ok(z),
        FSpec::Node { children } => {
            let sum = FSpec::multiplicity_sum(children);
            if sum > d as u64 {
                return Err(FSpecError::ArityExceedsDegree { sum, d });
            }
            let mut denom = Complex64::new(1.0, 0.0);
            for (p, child) in children {
                if *p == 0 {
                    return Err(FSpecError::ZeroMultiplicity);
                }
                let factor = f_eval(child, d, lambda, z)? + 1.0;
                if factor.norm() < POLE_TOL {
                    return Err(FSpecError::Pole);
                }
                denom *= factor.powu(*p);
            }
            Ok(lambda / denom)
        }
    }
}

/// Mirrors a semi-group element into the rational family at degree `d`:
/// every weight `s_i` becomes the multiplicity `floor(s_i * d)`, identity
/// children become leaves, and children whose multiplicity floors to zero
/// are dropped, exactly as the tree construction drops them.
pub fn fspec_from_gspec(g: &GSpec, d: u32) -> FSpec {
    match g {
        GSpec::Identity => FSpec::leaf(),
        GSpec::Compose { weights, children } => {
            let kids = weights
                .weights()
                .iter()
                .zip(children)
                .filter_map(|(&s, child)| {
                    let p = (s * d as f64).floor() as u32;
                    if p == 0 {
                        None
                    } else {
                        Some((p, fspec_from_gspec(child, d)))
                    }
                })
                .collect();
            FSpec::Node { children: kids }
        }
    }
}

/// Materializes the rooted tree whose occupation ratio equals
/// `f_eval(spec, d, lambda, 0)`: each node becomes a vertex carrying
/// `p_i` copies of every non-identity child's tree; identity children
/// contribute the factor `1 + 0` and no vertex.
pub fn fspec_to_tree(spec: &FSpec, d: u32) -> Result<RootedGraph, FSpecError> {
    let mut adj: Vec<Vec<usize>> = Vec::new();
    let root = attach(spec, d, &mut adj)?;
    RootedGraph::new(adj, root).map_err(FSpecError::from)
}

fn attach(spec: &FSpec, d: u32, adj: &mut Vec<Vec<usize>>) -> Result<usize, FSpecError> {
    match spec {
        FSpec::Identity => {
            // identity children are dropped by the caller; a bare identity
            // spec still denotes the single-vertex graph (ratio = lambda)
            adj.push(Vec::new());
            Ok(adj.len() - 1)
        }
        FSpec::Node { children } => {
            let sum = FSpec::multiplicity_sum(children);
            if sum > d as u64 {
                return Err(FSpecError::ArityExceedsDegree { sum, d });
            }
            let v = adj.len();
            adj.push(Vec::new());
            for (p, child) in children {
                if *p == 0 {
                    return Err(FSpecError::ZeroMultiplicity);
                }
                if matches!(child, FSpec::Identity) {
                    continue;
                }
                for _ in 0..*p {
                    let c = attach(child, d, adj)?;
                    adj[v].push(c);
                    adj[c].push(v);
                }
            }
            // the degree bound d+1 could only break through the parent edge,
            // and the node check already keeps sum <= d
            Ok(v)
        }
    }
}

/// Rooted tree realization of a semi-group element at degree `d`.
pub fn gspec_to_tree(g: &GSpec, d: u32) -> Result<RootedGraph, FSpecError> {
    fspec_to_tree(&fspec_from_gspec(g, d), d)
}

/// `d * R(lambda / d)`: the rescaled occupation ratio that converges to the
/// semi-group observable as `d` grows.
pub fn rescaled_ratio(g: &RootedGraph, d: u32, lambda: Complex64) -> Result<RatioValue, GraphError> {
    Ok(ratio(g, lambda / d as f64)?.scale(d as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::{eval_gspec, WeightTuple};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn f_eval_examples() {
        let lambda = c(0.6, 0.2);
        // single F node over one identity child at z = 0: lambda / (1+0)
        let f_id = FSpec::node(vec![(1, FSpec::Identity)]);
        assert_eq!(f_eval(&f_id, 1, lambda, c(0.0, 0.0)).unwrap(), lambda);

        // F over two identity children at lambda = 1, z = 1: 1/4
        let f2 = FSpec::node(vec![(2, FSpec::Identity)]);
        let v = f_eval(&f2, 2, c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!((v - c(0.25, 0.0)).norm() < 1e-15);

        // nested F(F(id)) at z = 0 equals the 2-path end ratio
        let nested = FSpec::node(vec![(1, f_id)]);
        let v = f_eval(&nested, 2, lambda, c(0.0, 0.0)).unwrap();
        let path = ratio(&RootedGraph::path(2), lambda).unwrap().finite().unwrap();
        assert!((v - path).norm() < 1e-15);
    }

    #[test]
    fn f_eval_errors() {
        let spec = FSpec::node(vec![(3, FSpec::Identity)]);
        assert!(matches!(
            f_eval(&spec, 2, c(1.0, 0.0), c(0.0, 0.0)),
            Err(FSpecError::ArityExceedsDegree { sum: 3, d: 2 })
        ));
        let pole = FSpec::node(vec![(1, FSpec::Identity)]);
        assert!(matches!(
            f_eval(&pole, 1, c(1.0, 0.0), c(-1.0, 0.0)),
            Err(FSpecError::Pole)
        ));
    }

    #[test]
    fn gspec_to_tree_examples() {
        // the plain exponential map at d = 5 becomes the 5-leaf star
        let e_map = GSpec::compose(
            WeightTuple::new(vec![1.0]).unwrap(),
            vec![GSpec::Identity],
        )
        .unwrap();
        let star = gspec_to_tree(&e_map, 5).unwrap();
        assert_eq!(star.n(), 6);
        assert_eq!(star.root_degree(), 5);
        assert!(star.is_tree());

        // bare identity: a single vertex
        let single = gspec_to_tree(&GSpec::Identity, 5).unwrap();
        assert_eq!(single.n(), 1);

        // half-weight composition over the exponential at d = 10:
        // root with 5 children, each a 10-leaf star
        let nested = GSpec::compose(WeightTuple::new(vec![0.5]).unwrap(), vec![e_map]).unwrap();
        let t = gspec_to_tree(&nested, 10).unwrap();
        assert_eq!(t.n(), 1 + 5 * 11);
        assert_eq!(t.root_degree(), 5);
        assert_eq!(t.max_degree(), 11);
        assert!(t.is_tree());
    }

    #[test]
    fn rescaled_star_ratio_approaches_exponential() {
        // d * R_star(L/d) = L (1 + L/d)^{-d} -> L e^{-L}
        let lambda = c(1.0, 1.0);
        let mut prev_err = f64::INFINITY;
        for &d in &[10u32, 100, 1000] {
            let star = RootedGraph::star(d as usize);
            let v = rescaled_ratio(&star, d, lambda).unwrap().finite().unwrap();
            let limit = lambda * (-lambda).exp();
            let err = (v - limit).norm();
            assert!(err < prev_err, "error not decreasing at d = {d}");
            prev_err = err;
        }
        assert!(prev_err < 5e-3);
    }

    #[test]
    fn rescaled_single_vertex_is_identity() {
        let lambda = c(2.5, -0.3);
        let v = rescaled_ratio(&RootedGraph::single_vertex(), 17, lambda)
            .unwrap()
            .finite()
            .unwrap();
        assert!((v - lambda).norm() < 1e-15);
    }

    #[test]
    fn f_eval_matches_tree_ratio_on_random_specs() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xF5);
        let lambda = c(0.31, 0.17);
        for _ in 0..200 {
            let spec = random_fspec(&mut rng, 0);
            let d = 8;
            let by_eval = f_eval(&spec, d, lambda, c(0.0, 0.0));
            let tree = fspec_to_tree(&spec, d).unwrap();
            let by_ratio = ratio(&tree, lambda).unwrap();
            match (by_eval, by_ratio) {
                (Ok(a), RatioValue::Finite(b)) => {
                    assert!((a - b).norm() < 1e-12 * (1.0 + b.norm()), "{a} vs {b}")
                }
                (Err(FSpecError::Pole), RatioValue::Infinity) => {}
                (x, y) => panic!("mismatch: {x:?} vs {y:?}"),
            }
        }
    }

    // identity only appears as a child: the ratio correspondence concerns
    // non-identity elements, whose identity slots contribute (1 + 0)
    fn random_fspec(rng: &mut ChaCha8Rng, depth: usize) -> FSpec {
        if depth > 0 && (depth >= 3 || rng.gen::<f64>() < 0.35) {
            return if rng.gen::<bool>() { FSpec::Identity } else { FSpec::leaf() };
        }
        let k = rng.gen_range(1..=3usize);
        let mut budget = 8u32;
        let children = (0..k)
            .filter_map(|_| {
                if budget == 0 {
                    return None;
                }
                let p = rng.gen_range(1..=budget.min(3));
                budget -= p;
                Some((p, random_fspec(rng, depth + 1)))
            })
            .collect();
        FSpec::Node { children }
    }

    #[test]
    fn rescaled_error_halves_when_degree_doubles() {
        // smooth spec: weights are exact multiples of 1/d for the tested d
        let lambda = c(1.0, 0.5);
        let inner = GSpec::compose(WeightTuple::new(vec![0.5]).unwrap(), vec![GSpec::constant()]).unwrap();
        let g = GSpec::compose(
            WeightTuple::new(vec![0.25, 0.25]).unwrap(),
            vec![inner, GSpec::constant()],
        )
        .unwrap();
        let target = eval_gspec(&g, lambda, c(0.0, 0.0)).unwrap();
        let mut errs = Vec::new();
        for &d in &[100u32, 200, 400] {
            let tree = gspec_to_tree(&g, d).unwrap();
            let v = rescaled_ratio(&tree, d, lambda).unwrap().finite().unwrap();
            errs.push((v - target).norm());
        }
        for w in errs.windows(2) {
            let ratio = w[0] / w[1];
            assert!(
                (1.6..=2.4).contains(&ratio),
                "error ratio {ratio} outside O(1/d) band: {errs:?}"
            );
        }
    }
}
