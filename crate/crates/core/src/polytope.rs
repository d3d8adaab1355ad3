//! Transportation polytopes `C(P, Q)`.
//!
//! Internally every polytope is scaled to integers: with `D` the common
//! denominator of all marginal entries, row `i` supplies `a_i = p_i D` and
//! column `j` demands `b_j = q_j D`. Vertices are basic feasible solutions
//! whose basis is a spanning tree of the complete bipartite graph on the
//! `n + m` rows and columns, so every vertex cell is an integer multiple of
//! `1/D`.
//!
//! Enumeration walks the graph of feasible bases by transportation-simplex
//! pivots, starting from the north-west corner basis. Degenerate bases are
//! allowed and vertices are deduplicated by their cell values.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::measures::{to_counts, Coupling, Distribution, Rational};

/// Default cap on the number of distinct vertices a search may visit.
pub const DEFAULT_VERTEX_LIMIT: usize = 1_000_000;

/// The set `C(P, Q)` of couplings with row marginal `P` and column marginal `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportationPolytope {
    rows: Distribution,
    cols: Distribution,
    supply: Vec<BigUint>,
    demand: Vec<BigUint>,
    total: BigUint,
}

/// Basic cells of a spanning-tree basis, sorted row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisTree {
    cells: Vec<(usize, usize)>,
}

impl BasisTree {
    pub fn new(mut cells: Vec<(usize, usize)>) -> Self {
        cells.sort_unstable();
        cells.dedup();
        BasisTree { cells }
    }

    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: (usize, usize)) -> bool {
        self.cells.binary_search(&cell).is_ok()
    }

    fn from_indices(idx: &[usize], cols: usize) -> Self {
        BasisTree::new(idx.iter().map(|&k| (k / cols, k % cols)).collect())
    }
}

/// An extreme point of a transportation polytope with one basis that
/// certifies it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    coupling: Coupling,
    basis: BasisTree,
    counts: Vec<BigUint>,
}

impl Vertex {
    pub fn coupling(&self) -> &Coupling {
        &self.coupling
    }

    pub fn basis(&self) -> &BasisTree {
        &self.basis
    }

    pub fn into_coupling(self) -> Coupling {
        self.coupling
    }

    /// Cell numerators over the polytope's common denominator.
    pub(crate) fn counts(&self) -> &[BigUint] {
        &self.counts
    }
}

/// Outcome of a vertex walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Walk {
    pub complete: bool,
    pub distinct: usize,
}

impl TransportationPolytope {
    pub fn new(rows: Distribution, cols: Distribution) -> Self {
        let all: Vec<Rational> = rows.probs().iter().chain(cols.probs()).cloned().collect();
        let (mut counts, total) = to_counts(&all);
        let demand = counts.split_off(rows.len());
        TransportationPolytope {
            rows,
            cols,
            supply: counts,
            demand,
            total,
        }
    }

    pub fn row_marginal(&self) -> &Distribution {
        &self.rows
    }

    pub fn col_marginal(&self) -> &Distribution {
        &self.cols
    }

    /// `(n, m)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.supply.len(), self.demand.len())
    }

    /// Nominal dimension `(n-1)(m-1)` of the affine hull for strictly
    /// positive marginals. Diagnostic only.
    pub fn dimension(&self) -> usize {
        let (n, m) = self.shape();
        (n - 1) * (m - 1)
    }

    /// Common denominator `D` of all marginal entries.
    pub fn denominator(&self) -> &BigUint {
        &self.total
    }

    pub(crate) fn supply(&self) -> &[BigUint] {
        &self.supply
    }

    pub(crate) fn demand(&self) -> &[BigUint] {
        &self.demand
    }

    pub fn transpose(&self) -> TransportationPolytope {
        TransportationPolytope::new(self.cols.clone(), self.rows.clone())
    }

    /// The independent coupling `P x Q`.
    pub fn product_coupling(&self) -> Coupling {
        Coupling::product(&self.rows, &self.cols)
    }

    /// Exact membership test: shape, nonnegativity and both marginal systems.
    pub fn is_member(&self, s: &Coupling) -> bool {
        let (n, m) = self.shape();
        if s.rows() != n || s.cols() != m {
            return false;
        }
        if s.cells().iter().any(|v| v < &Rational::zero()) {
            return false;
        }
        s.row_sums() == self.rows.probs() && s.col_sums() == self.cols.probs()
    }

    pub(crate) fn coupling_from_counts(&self, counts: &[BigUint]) -> Coupling {
        let (n, m) = self.shape();
        Coupling::from_counts(n, m, counts, &self.total)
    }

    fn vertex(&self, counts: Vec<BigUint>, basis: BasisTree) -> Vertex {
        Vertex {
            coupling: self.coupling_from_counts(&counts),
            basis,
            counts,
        }
    }

    /// Basic feasible solution from the greedy north-west corner scan. When
    /// a row and a column are exhausted together the row advances first and
    /// the next cell enters the basis at zero, so the basis always has
    /// `n + m - 1` cells.
    pub fn northwest_corner(&self) -> Vertex {
        let (counts, basis) = self.northwest_state();
        self.vertex(counts, BasisTree::from_indices(&basis, self.shape().1))
    }

    fn northwest_state(&self) -> (Vec<BigUint>, Vec<usize>) {
        let (n, m) = self.shape();
        let mut a = self.supply.clone();
        let mut b = self.demand.clone();
        let mut counts = vec![BigUint::zero(); n * m];
        let mut basis = Vec::with_capacity(n + m - 1);
        let (mut i, mut j) = (0, 0);
        loop {
            let x = a[i].clone().min(b[j].clone());
            a[i] -= &x;
            b[j] -= &x;
            counts[i * m + j] = x;
            basis.push(i * m + j);
            if i + 1 == n && j + 1 == m {
                break;
            }
            if j + 1 == m || (i + 1 < n && a[i].is_zero()) {
                i += 1;
            } else {
                j += 1;
            }
        }
        (counts, basis)
    }

    /// Solves the unique point supported on a spanning-tree basis and checks
    /// that it is feasible.
    pub fn solve_basis(&self, basis: &BasisTree) -> Result<Vertex> {
        let (n, m) = self.shape();
        if basis.len() != n + m - 1 || basis.cells().iter().any(|&(i, j)| i >= n || j >= m) {
            return Err(Error::InvalidBasis(format!(
                "expected {} cells inside a {n}x{m} grid",
                n + m - 1
            )));
        }
        let idx: Vec<usize> = basis.cells().iter().map(|&(i, j)| i * m + j).collect();
        let tree = Tree::build(n, m, &idx).ok_or_else(|| Error::InvalidBasis("basis is not a spanning tree".into()))?;
        // Leaf peeling with signed residuals.
        let mut residual: Vec<BigInt> = self
            .supply
            .iter()
            .chain(&self.demand)
            .map(|v| BigInt::from(v.clone()))
            .collect();
        let mut degree: Vec<usize> = tree.adj.iter().map(Vec::len).collect();
        let mut used = vec![false; idx.len()];
        let mut queue: VecDeque<usize> = (0..n + m).filter(|&v| degree[v] == 1).collect();
        let mut counts = vec![BigUint::zero(); n * m];
        while let Some(v) = queue.pop_front() {
            if degree[v] != 1 {
                continue;
            }
            let Some(&(u, e)) = tree.adj[v].iter().find(|&&(_, e)| !used[e]) else {
                continue;
            };
            used[e] = true;
            let x = residual[v].clone();
            if x < BigInt::zero() {
                return Err(Error::InvalidBasis("basis solution is infeasible".into()));
            }
            residual[v] -= &x;
            residual[u] -= &x;
            counts[idx[e]] = x.to_biguint().expect("checked nonnegative");
            degree[v] -= 1;
            degree[u] -= 1;
            if degree[u] == 1 {
                queue.push_back(u);
            }
        }
        if residual.iter().any(|r| !r.is_zero()) {
            return Err(Error::InvalidBasis("basis solution is infeasible".into()));
        }
        Ok(self.vertex(counts, basis.clone()))
    }

    /// All distinct vertices, sorted lexicographically by cells. Fails with
    /// [`Error::LimitExceeded`] if there are more than `limit`.
    pub fn enumerate_vertices(&self, limit: usize) -> Result<Vec<Vertex>> {
        let m = self.shape().1;
        let mut out = Vec::new();
        let walk = self.walk(limit, |counts, basis| {
            out.push((counts.to_vec(), BasisTree::from_indices(basis, m)));
        });
        if !walk.complete {
            return Err(Error::LimitExceeded { limit });
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out.into_iter().map(|(c, b)| self.vertex(c, b)).collect())
    }

    /// Depth-first traversal of the feasible-basis graph from the north-west
    /// corner basis. `visit` runs once per distinct vertex, in discovery
    /// order, with the vertex counts and one of its bases.
    pub(crate) fn walk<F>(&self, limit: usize, mut visit: F) -> Walk
    where
        F: FnMut(&[BigUint], &[usize]),
    {
        let (n, m) = self.shape();
        let (counts, basis) = self.northwest_state();
        let mut seen_bases: HashSet<Vec<usize>> = HashSet::new();
        let mut seen_vertices: HashSet<Vec<BigUint>> = HashSet::new();
        let mut stack = vec![(basis, counts)];
        {
            let (b, c) = &stack[0];
            let mut key = b.clone();
            key.sort_unstable();
            seen_bases.insert(key);
            seen_vertices.insert(c.clone());
            if limit == 0 {
                return Walk {
                    complete: false,
                    distinct: 1,
                };
            }
            visit(c, b);
        }
        while let Some((basis, counts)) = stack.pop() {
            let Some(tree) = Tree::build(n, m, &basis) else {
                debug_assert!(false, "pivot produced a non-tree basis");
                continue;
            };
            let in_basis: HashSet<usize> = basis.iter().copied().collect();
            for enter in 0..n * m {
                if in_basis.contains(&enter) {
                    continue;
                }
                for p in pivot(&tree, &basis, &counts, enter, m) {
                    let mut key = p.basis.clone();
                    key.sort_unstable();
                    if !seen_bases.insert(key) {
                        continue;
                    }
                    if p.theta_positive && seen_vertices.insert(p.counts.clone()) {
                        if seen_vertices.len() > limit {
                            return Walk {
                                complete: false,
                                distinct: seen_vertices.len(),
                            };
                        }
                        visit(&p.counts, &p.basis);
                    }
                    stack.push((p.basis, p.counts));
                }
            }
        }
        Walk {
            complete: true,
            distinct: seen_vertices.len(),
        }
    }

    /// Vertices reached from `v` by a single pivot on its basis that moves
    /// the point: enter one nonbasic cell, shift mass around the unique
    /// cycle, and drop one blocking cell. Sorted lexicographically.
    pub fn pivot_neighbors(&self, v: &Vertex) -> Vec<Vertex> {
        let (n, m) = self.shape();
        let basis: Vec<usize> = v.basis.cells().iter().map(|&(i, j)| i * m + j).collect();
        let Some(tree) = Tree::build(n, m, &basis) else {
            return Vec::new();
        };
        let mut found: HashMap<Vec<BigUint>, Vec<usize>> = HashMap::new();
        for enter in 0..n * m {
            if basis.contains(&enter) {
                continue;
            }
            for p in pivot(&tree, &basis, &v.counts, enter, m) {
                if p.theta_positive {
                    found.entry(p.counts).or_insert(p.basis);
                }
            }
        }
        let mut out: Vec<(Vec<BigUint>, Vec<usize>)> = found.into_iter().collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out.into_iter()
            .map(|(c, b)| self.vertex(c, BasisTree::from_indices(&b, m)))
            .collect()
    }
}

/// Rooted spanning tree over nodes `0..n` (rows) and `n..n+m` (columns).
struct Tree {
    adj: Vec<Vec<(usize, usize)>>,
    parent: Vec<usize>,
    parent_edge: Vec<usize>,
    depth: Vec<usize>,
}

impl Tree {
    /// `None` unless `basis` forms a spanning tree.
    fn build(n: usize, m: usize, basis: &[usize]) -> Option<Tree> {
        let nodes = n + m;
        if basis.len() + 1 != nodes {
            return None;
        }
        let mut adj = vec![Vec::new(); nodes];
        for (e, &cell) in basis.iter().enumerate() {
            let (i, j) = (cell / m, cell % m);
            adj[i].push((n + j, e));
            adj[n + j].push((i, e));
        }
        let mut parent = vec![usize::MAX; nodes];
        let mut parent_edge = vec![usize::MAX; nodes];
        let mut depth = vec![0; nodes];
        let mut seen = vec![false; nodes];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &(v, e) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    parent[v] = u;
                    parent_edge[v] = e;
                    depth[v] = depth[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        (reached == nodes).then_some(Tree {
            adj,
            parent,
            parent_edge,
            depth,
        })
    }

    /// Edge indices on the tree path from `u` to `v`, in order from `u`.
    fn path(&self, mut u: usize, mut v: usize) -> Vec<usize> {
        let mut from_u = Vec::new();
        let mut from_v = Vec::new();
        while self.depth[u] > self.depth[v] {
            from_u.push(self.parent_edge[u]);
            u = self.parent[u];
        }
        while self.depth[v] > self.depth[u] {
            from_v.push(self.parent_edge[v]);
            v = self.parent[v];
        }
        while u != v {
            from_u.push(self.parent_edge[u]);
            u = self.parent[u];
            from_v.push(self.parent_edge[v]);
            v = self.parent[v];
        }
        from_u.extend(from_v.into_iter().rev());
        from_u
    }
}

struct Pivot {
    basis: Vec<usize>,
    counts: Vec<BigUint>,
    theta_positive: bool,
}

/// Every feasible pivot entering `enter`; one result per tied leaving cell.
fn pivot(tree: &Tree, basis: &[usize], counts: &[BigUint], enter: usize, m: usize) -> Vec<Pivot> {
    let n = tree.adj.len() - m;
    let (i, j) = (enter / m, enter % m);
    // Path from row i to column j alternates -, +, -, ..., - starting at row i.
    let path = tree.path(i, n + j);
    let minus: Vec<usize> = path.iter().step_by(2).copied().collect();
    let plus: Vec<usize> = path.iter().skip(1).step_by(2).copied().collect();
    let theta = minus
        .iter()
        .map(|&e| &counts[basis[e]])
        .min()
        .expect("path is nonempty")
        .clone();
    let mut shifted = counts.to_vec();
    if !theta.is_zero() {
        for &e in &minus {
            shifted[basis[e]] -= &theta;
        }
        for &e in &plus {
            shifted[basis[e]] += &theta;
        }
        shifted[enter] += &theta;
    }
    minus
        .iter()
        .filter(|&&e| counts[basis[e]] == theta)
        .map(|&leave| {
            let mut b = basis.to_vec();
            b[leave] = enter;
            Pivot {
                basis: b,
                counts: shifted.clone(),
                theta_positive: !theta.is_zero(),
            }
        })
        .collect()
}

/// Free-function form of [`TransportationPolytope::northwest_corner`].
pub fn northwest_corner(p: &TransportationPolytope) -> Vertex {
    p.northwest_corner()
}

/// Free-function form of [`TransportationPolytope::enumerate_vertices`].
pub fn enumerate_vertices(p: &TransportationPolytope, limit: usize) -> Result<Vec<Vertex>> {
    p.enumerate_vertices(limit)
}

/// Free-function form of [`TransportationPolytope::pivot_neighbors`].
pub fn pivot_neighbors(v: &Vertex, p: &TransportationPolytope) -> Vec<Vertex> {
    p.pivot_neighbors(v)
}

/// Free-function form of [`TransportationPolytope::is_member`].
pub fn is_member(s: &Coupling, p: &TransportationPolytope) -> bool {
    p.is_member(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::ratio;

    fn poly(p: &[u64], q: &[u64]) -> TransportationPolytope {
        TransportationPolytope::new(
            Distribution::from_weights(p.iter().copied()).unwrap(),
            Distribution::from_weights(q.iter().copied()).unwrap(),
        )
    }

    #[test]
    fn northwest_reproduces_worked_example() {
        let p = poly(&[1, 3, 5], &[2, 4, 3]);
        let v = p.northwest_corner();
        let expect = Coupling::from_integer_rows(&[vec![1, 0, 0], vec![1, 2, 0], vec![0, 2, 3]]).unwrap();
        assert_eq!(v.coupling(), &expect);
        assert_eq!(v.basis().len(), 5);
        assert!(p.is_member(v.coupling()));
    }

    #[test]
    fn northwest_tie_keeps_zero_basic_cell() {
        let p = poly(&[1, 1], &[1, 1]);
        let v = p.northwest_corner();
        assert_eq!(v.coupling(), &Coupling::diagonal(&Distribution::uniform(2).unwrap()));
        assert_eq!(v.basis().cells(), &[(0, 0), (1, 0), (1, 1)]);
    }

    #[test]
    fn single_cell_polytope() {
        let p = poly(&[1], &[1]);
        let vs = p.enumerate_vertices(10).unwrap();
        assert_eq!(vs.len(), 1);
        assert_eq!(vs[0].coupling().cell(0, 0), &ratio(1, 1));
        assert!(p.pivot_neighbors(&vs[0]).is_empty());
    }

    #[test]
    fn limit_is_enforced() {
        let p = poly(&[1, 1, 1], &[1, 1, 1]);
        assert_eq!(p.enumerate_vertices(6).unwrap().len(), 6);
        assert_eq!(p.enumerate_vertices(5), Err(Error::LimitExceeded { limit: 5 }));
    }

    #[test]
    fn solve_basis_rejects_cycles_and_infeasible_trees() {
        let p = poly(&[1, 1], &[1, 1]);
        assert!(p.solve_basis(&BasisTree::new(vec![(0, 0), (0, 1), (1, 0)])).is_ok());
        assert!(p.solve_basis(&BasisTree::new(vec![(0, 0), (0, 1), (1, 1)])).is_ok());
        let q = poly(&[3, 1], &[1, 3]);
        assert!(q.solve_basis(&BasisTree::new(vec![(0, 0), (0, 1), (1, 1)])).is_ok());
        assert!(q.solve_basis(&BasisTree::new(vec![(1, 0), (0, 1), (1, 1)])).is_ok());
        // Row 0 would put 3/4 into column 0, which only demands 1/4.
        assert!(q.solve_basis(&BasisTree::new(vec![(0, 0), (1, 0), (1, 1)])).is_err());
        assert!(q.solve_basis(&BasisTree::new(vec![(0, 0), (1, 1)])).is_err());
    }

    #[test]
    fn membership_is_exact() {
        let p = poly(&[1, 1], &[1, 2]);
        let d = Coupling::diagonal(&Distribution::uniform(2).unwrap());
        assert!(!p.is_member(&d));
        assert!(p.is_member(&p.product_coupling()));
        let wrong_shape = Coupling::from_integer_rows(&[vec![1, 1, 1]]).unwrap();
        assert!(!p.is_member(&wrong_shape));
    }

    #[test]
    fn dimension_diagnostic() {
        assert_eq!(poly(&[1, 3, 5], &[2, 4, 3]).dimension(), 4);
        assert_eq!(poly(&[1], &[1, 2]).dimension(), 0);
    }
}
