//! Closed trivalent graphs with monomial beads: admissible `Z_p` colorings
//! (`Lift_p`), automorphisms, forest coordinates (`φ_R`), and the graph
//! residue `Res_p`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::ring::rat;
use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Largest vertex count accepted by the brute-force automorphism search.
pub const MAX_AUT_VERTICES: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    #[serde(default)]
    pub bead: i64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct BeadedGraph {
    vertices: usize,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    vertices: usize,
    edges: Vec<Edge>,
}

impl TryFrom<RawGraph> for BeadedGraph {
    type Error = Error;
    fn try_from(r: RawGraph) -> Result<Self> {
        BeadedGraph::new(r.vertices, r.edges)
    }
}

impl From<BeadedGraph> for RawGraph {
    fn from(g: BeadedGraph) -> Self {
        RawGraph {
            vertices: g.vertices,
            edges: g.edges,
        }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

impl BeadedGraph {
    /// Every vertex must have exactly three half-edges; a loop contributes two.
    pub fn new(vertices: usize, edges: Vec<Edge>) -> Result<Self> {
        let mut valence = vec![0usize; vertices];
        for e in &edges {
            if e.from >= vertices || e.to >= vertices {
                return Err(Error::InvalidGraph(format!(
                    "edge {}-{} out of range",
                    e.from, e.to
                )));
            }
            valence[e.from] += 1;
            valence[e.to] += 1;
        }
        if let Some(v) = valence.iter().position(|&d| d != 3) {
            return Err(Error::InvalidGraph(format!(
                "vertex {v} has valence {}",
                valence[v]
            )));
        }
        Ok(Self { vertices, edges })
    }

    /// Θ: three parallel edges from vertex 0 to vertex 1.
    pub fn theta(beads: [i64; 3]) -> Self {
        Self::new(
            2,
            beads
                .iter()
                .map(|&bead| Edge {
                    from: 0,
                    to: 1,
                    bead,
                })
                .collect(),
        )
        .unwrap()
    }

    /// Eyes: a loop at each vertex joined by a middle edge (edges: loop at 0,
    /// middle, loop at 1).
    pub fn eyes(beads: [i64; 3]) -> Self {
        Self::new(
            2,
            vec![
                Edge {
                    from: 0,
                    to: 0,
                    bead: beads[0],
                },
                Edge {
                    from: 0,
                    to: 1,
                    bead: beads[1],
                },
                Edge {
                    from: 1,
                    to: 1,
                    bead: beads[2],
                },
            ],
        )
        .unwrap()
    }

    pub fn disjoint_union(&self, other: &Self) -> Self {
        let shift = self.vertices;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge {
            from: e.from + shift,
            to: e.to + shift,
            bead: e.bead,
        }));
        Self {
            vertices: self.vertices + other.vertices,
            edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn beads(&self) -> Vec<i64> {
        self.edges.iter().map(|e| e.bead).collect()
    }

    pub fn with_beads(&self, beads: &[i64]) -> Self {
        assert_eq!(beads.len(), self.edges.len());
        Self {
            vertices: self.vertices,
            edges: self
                .edges
                .iter()
                .zip(beads)
                .map(|(e, &bead)| Edge { bead, ..*e })
                .collect(),
        }
    }

    pub fn stripped(&self) -> Self {
        self.with_beads(&vec![0; self.edges.len()])
    }

    /// Multiplies the beads at vertex `v` by `t`, read on edges oriented away
    /// from `v` (an edge into `v` gets `t^{-1}`; loops are unchanged).
    pub fn push(&self, v: usize) -> Self {
        let beads: Vec<i64> = self
            .edges
            .iter()
            .map(|e| e.bead + i64::from(e.from == v) - i64::from(e.to == v))
            .collect();
        self.with_beads(&beads)
    }

    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices);
        let merges = self.edges.iter().filter(|e| uf.union(e.from, e.to)).count();
        self.vertices - merges
    }

    /// `b_1 = E − V + b_0`.
    pub fn first_betti(&self) -> usize {
        self.edges.len() + self.components() - self.vertices
    }

    /// `χ = V − E`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges.len() as i64
    }

    /// The default maximal forest: union-find over the edges in reverse order.
    pub fn default_forest(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.vertices);
        let mut forest: Vec<usize> = (0..self.edges.len())
            .rev()
            .filter(|&i| uf.union(self.edges[i].from, self.edges[i].to))
            .collect();
        forest.sort_unstable();
        forest
    }

    pub fn is_maximal_forest(&self, forest: &[usize]) -> bool {
        let mut uf = UnionFind::new(self.vertices);
        forest.len() + self.components() == self.vertices
            && forest
                .iter()
                .all(|&i| i < self.edges.len() && uf.union(self.edges[i].from, self.edges[i].to))
    }

    pub fn all_maximal_forests(&self) -> Vec<Vec<usize>> {
        let size = self.vertices - self.components();
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(
            g: &BeadedGraph,
            start: usize,
            size: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if cur.len() == size {
                if g.is_maximal_forest(cur) {
                    out.push(cur.clone());
                }
                return;
            }
            for i in start..g.edges.len() {
                cur.push(i);
                rec(g, i + 1, size, cur, out);
                cur.pop();
            }
        }
        rec(self, 0, size, &mut current, &mut out);
        out
    }
}

/// Number of vertex colorings in `Z_p` with `color(to) = color(from) + bead`
/// on every edge.
pub fn count_admissible(g: &BeadedGraph, p: u64) -> Result<u64> {
    if p == 0 {
        return Err(Error::ZeroP);
    }
    let p = p as i64;
    let mut color: Vec<Option<i64>> = vec![None; g.vertices];
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); g.vertices];
    for e in &g.edges {
        adj[e.from].push((e.to, e.bead));
        adj[e.to].push((e.from, -e.bead));
    }
    let mut count: u64 = 1;
    for root in 0..g.vertices {
        if color[root].is_some() {
            continue;
        }
        count *= p as u64;
        color[root] = Some(0);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let cv = color[v].unwrap();
            for &(w, shift) in &adj[v] {
                let want = (cv + shift).rem_euclid(p);
                match color[w] {
                    None => {
                        color[w] = Some(want);
                        stack.push(w);
                    }
                    Some(c) if c != want => return Ok(0),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(count)
}

/// Brute-force count over all `p^V` colorings.
pub fn count_admissible_brute(g: &BeadedGraph, p: u64) -> u64 {
    let v = g.vertices as u32;
    let total = p.pow(v);
    (0..total)
        .filter(|&code| {
            let color = |i: usize| (code / p.pow(i as u32)) % p;
            g.edges
                .iter()
                .all(|e| (color(e.from) as i64 + e.bead).rem_euclid(p as i64) == color(e.to) as i64)
        })
        .count() as u64
}

/// `Lift_p`: the count of admissible colorings and the stripped graph.
pub fn lift_p(g: &BeadedGraph, p: u64) -> Result<(u64, BeadedGraph)> {
    Ok((count_admissible(g, p)?, g.stripped()))
}

/// A graph automorphism: a vertex permutation and, for each edge, its image
/// edge and whether the orientation flips.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GraphAut {
    pub vertex: Vec<usize>,
    pub edge: Vec<(usize, bool)>,
}

impl GraphAut {
    /// Bead vector after transport: the image of edge `e` carries `±bead(e)`.
    pub fn act_on_beads(&self, beads: &[i64]) -> Vec<i64> {
        let mut out = vec![0; beads.len()];
        for (e, &(img, flip)) in self.edge.iter().enumerate() {
            out[img] = if flip { -beads[e] } else { beads[e] };
        }
        out
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// All automorphisms, by brute force over vertex permutations extended to
/// edge bijections with orientation flips. Flipping a loop counts.
pub fn automorphisms(g: &BeadedGraph) -> Result<Vec<GraphAut>> {
    if g.vertices > MAX_AUT_VERTICES {
        return Err(Error::TooLarge(g.vertices));
    }
    let m = g.edges.len();
    let mut out = Vec::new();
    for perm in permutations(g.vertices) {
        let mut used = vec![false; m];
        let mut assign: Vec<(usize, bool)> = Vec::with_capacity(m);
        fn rec(
            g: &BeadedGraph,
            perm: &[usize],
            used: &mut [bool],
            assign: &mut Vec<(usize, bool)>,
            out: &mut Vec<GraphAut>,
        ) {
            let e = assign.len();
            if e == g.edges.len() {
                out.push(GraphAut {
                    vertex: perm.to_vec(),
                    edge: assign.clone(),
                });
                return;
            }
            let (a, b) = (perm[g.edges[e].from], perm[g.edges[e].to]);
            for (f, edge) in g.edges.iter().enumerate() {
                if used[f] {
                    continue;
                }
                for flip in [false, true] {
                    let (s, t) = if flip {
                        (edge.to, edge.from)
                    } else {
                        (edge.from, edge.to)
                    };
                    if (s, t) == (a, b) {
                        used[f] = true;
                        assign.push((f, flip));
                        rec(g, perm, used, assign, out);
                        assign.pop();
                        used[f] = false;
                    }
                }
            }
        }
        rec(g, &perm, &mut used, &mut assign, &mut out);
    }
    Ok(out)
}

/// Laurent polynomial in several variables with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MultiLaurent {
    pub vars: usize,
    pub terms: BTreeMap<Vec<i64>, Rational>,
}

impl MultiLaurent {
    pub fn zero(vars: usize) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: &Rational) {
        assert_eq!(exps.len(), self.vars);
        let entry = self.terms.entry(exps).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|k| k.iter().all(|&e| e == 0))
    }
}

/// Flow coordinates: for each edge, its exponent vector in the variables
/// attached to the non-forest edges. Non-forest edge `k` carries the unit
/// vector `e_k`; forest edges are fixed by conservation at every vertex,
/// i.e. each variable flows around its fundamental cycle.
pub fn flow_coordinates(g: &BeadedGraph, forest: &[usize]) -> Result<Vec<Vec<i64>>> {
    if !g.is_maximal_forest(forest) {
        return Err(Error::InvalidGraph("not a maximal forest".into()));
    }
    let m = g.edges.len();
    let chords: Vec<usize> = (0..m).filter(|i| !forest.contains(i)).collect();
    let b = chords.len();
    let mut coords = vec![vec![0i64; b]; m];
    let mut tree_adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.vertices];
    for &i in forest {
        let e = g.edges[i];
        tree_adj[e.from].push((e.to, i));
        tree_adj[e.to].push((e.from, i));
    }
    for (k, &c) in chords.iter().enumerate() {
        coords[c][k] = 1;
        let (u, v) = (g.edges[c].from, g.edges[c].to);
        // Tree path from v back to u.
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; g.vertices];
        let mut seen = vec![false; g.vertices];
        seen[v] = true;
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for &(y, i) in &tree_adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    prev[y] = Some((x, i));
                    stack.push(y);
                }
            }
        }
        let mut x = u;
        while x != v {
            let (from, i) = prev[x].expect("chord endpoints lie in one tree");
            // traversing edge i from `from` to `x`
            coords[i][k] += if g.edges[i].from == from && g.edges[i].to == x {
                1
            } else {
                -1
            };
            x = from;
        }
    }
    Ok(coords)
}

fn monomial_exponents(coords: &[Vec<i64>], beads: &[i64], vars: usize) -> Vec<i64> {
    let mut out = vec![0i64; vars];
    for (c, &m) in coords.iter().zip(beads) {
        for (o, x) in out.iter_mut().zip(c) {
            *o += m * x;
        }
    }
    out
}

/// Unsymmetrized value `Π_e t^(bead_e · x_e)` in forest coordinates.
pub fn phi_unsymmetrized(g: &BeadedGraph, forest: &[usize]) -> Result<MultiLaurent> {
    let coords = flow_coordinates(g, forest)?;
    let vars = g.first_betti();
    let mut f = MultiLaurent::zero(vars);
    f.add_term(
        monomial_exponents(&coords, &g.beads(), vars),
        &Rational::one(),
    );
    Ok(f)
}

/// `φ_R` with the default forest.
pub fn phi_r(g: &BeadedGraph) -> Result<MultiLaurent> {
    phi_r_with_forest(g, &g.default_forest())
}

/// `φ_R`: the average over automorphisms of the transported monomials.
pub fn phi_r_with_forest(g: &BeadedGraph, forest: &[usize]) -> Result<MultiLaurent> {
    let auts = automorphisms(g)?;
    let coords = flow_coordinates(g, forest)?;
    let vars = g.first_betti();
    let weight = Rational::new(1.into(), (auts.len() as i64).into());
    let beads = g.beads();
    let mut f = MultiLaurent::zero(vars);
    for aut in &auts {
        f.add_term(
            monomial_exponents(&coords, &aut.act_on_beads(&beads), vars),
            &weight,
        );
    }
    Ok(f)
}

/// `Res_p f = p^χ Σ_{ω ∈ μ_p^{b_1}} f(ω)`, exact: each monomial sums to
/// `p^{b_1}` if `p` divides all its exponents and to 0 otherwise.
pub fn res_p_graph(f: &MultiLaurent, g: &BeadedGraph, p: u64) -> Result<Rational> {
    if p == 0 {
        return Err(Error::ZeroP);
    }
    if f.vars != g.first_betti() {
        return Err(Error::DimensionMismatch(format!(
            "{} variables for b1 = {}",
            f.vars,
            g.first_betti()
        )));
    }
    let pi = p as i64;
    let s: Rational = f
        .terms
        .iter()
        .filter(|(e, _)| e.iter().all(|x| x.rem_euclid(pi) == 0))
        .map(|(_, c)| c.clone())
        .sum();
    let exp = g.euler_characteristic() + f.vars as i64;
    let scale = if exp >= 0 {
        rat(pi.pow(exp as u32))
    } else {
        rat(pi.pow((-exp) as u32)).recip()
    };
    Ok(s * scale)
}

/// `Lift_p = Res_p ∘ φ_R` on one beaded graph.
pub fn liftres_check(g: &BeadedGraph, p: u64) -> Result<bool> {
    let (count, _) = lift_p(g, p)?;
    Ok(res_p_graph(&phi_r(g)?, g, p)? == rat(count as i64))
}

/// Every bead tuple in `{0..p-1}^E`; returns the tuples where the check fails.
pub fn liftres_sweep(g: &BeadedGraph, p: u64) -> Result<(usize, Vec<Vec<i64>>)> {
    let m = g.edges().len();
    let total = (p as usize).pow(m as u32);
    let mut failures = Vec::new();
    for code in 0..total {
        let beads: Vec<i64> = (0..m)
            .map(|i| ((code / (p as usize).pow(i as u32)) % p as usize) as i64)
            .collect();
        if !liftres_check(&g.with_beads(&beads), p)? {
            failures.push(beads);
        }
    }
    Ok((total, failures))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(count_admissible(&BeadedGraph::theta([0, 0, 0]), 5), Ok(5));
        assert_eq!(count_admissible(&BeadedGraph::theta([1, 1, 1]), 3), Ok(3));
        assert_eq!(count_admissible(&BeadedGraph::theta([1, 0, 0]), 2), Ok(0));
        let (c, s) = lift_p(&BeadedGraph::eyes([0, 0, 0]), 4).unwrap();
        assert_eq!((c, s), (4, BeadedGraph::eyes([0, 0, 0])));
        let tt = BeadedGraph::theta([0; 3]).disjoint_union(&BeadedGraph::theta([0; 3]));
        assert_eq!(lift_p(&tt, 3).unwrap().0, 9);
        assert_eq!(lift_p(&BeadedGraph::theta([2, 0, 0]), 2).unwrap().0, 2);
        for beads in [[1, 2, 3], [0, 4, 1], [2, 2, 2]] {
            for p in 1..6 {
                let g = BeadedGraph::eyes(beads);
                assert_eq!(
                    count_admissible(&g, p).unwrap(),
                    count_admissible_brute(&g, p)
                );
                let g = BeadedGraph::theta(beads);
                assert_eq!(
                    count_admissible(&g, p).unwrap(),
                    count_admissible_brute(&g, p)
                );
                assert_eq!(count_admissible(&g.push(0), p), count_admissible(&g, p));
            }
        }
    }

    #[test]
    fn constructor_rejects_bad_valence() {
        assert!(matches!(
            BeadedGraph::new(
                1,
                vec![Edge {
                    from: 0,
                    to: 0,
                    bead: 0
                }]
            ),
            Err(Error::InvalidGraph(_))
        ));
    }

    #[test]
    fn automorphism_orders() {
        assert_eq!(
            automorphisms(&BeadedGraph::theta([0; 3])).unwrap().len(),
            12
        );
        assert_eq!(automorphisms(&BeadedGraph::eyes([0; 3])).unwrap().len(), 8);
        let tt = BeadedGraph::theta([0; 3]).disjoint_union(&BeadedGraph::theta([0; 3]));
        assert_eq!(automorphisms(&tt).unwrap().len(), 288);
    }

    #[test]
    fn phi_examples() {
        let f = phi_r(&BeadedGraph::theta([0, 0, 0])).unwrap();
        assert!(f.is_constant());
        let f = phi_r(&BeadedGraph::theta([1, 1, 1])).unwrap();
        assert!(f.is_constant());
        let g = BeadedGraph::theta([2, 3, 5]);
        let f = phi_unsymmetrized(&g, &g.default_forest()).unwrap();
        assert_eq!(f.terms.keys().next().unwrap(), &vec![2 - 5, 3 - 5]);
        let g = BeadedGraph::eyes([2, 7, 3]);
        let f = phi_unsymmetrized(&g, &g.default_forest()).unwrap();
        assert_eq!(f.terms.keys().next().unwrap(), &vec![2, 3]);
    }

    #[test]
    fn residue_examples() {
        let theta = BeadedGraph::theta([0; 3]);
        let mut one = MultiLaurent::zero(2);
        one.add_term(vec![0, 0], &rat(1));
        assert_eq!(res_p_graph(&one, &theta, 3), Ok(rat(3)));
        let mut t1 = MultiLaurent::zero(2);
        t1.add_term(vec![1, 0], &rat(1));
        assert_eq!(res_p_graph(&t1, &theta, 2), Ok(rat(0)));
        let tt = theta.disjoint_union(&theta);
        let mut one = MultiLaurent::zero(4);
        one.add_term(vec![0; 4], &rat(1));
        assert_eq!(res_p_graph(&one, &tt, 2), Ok(rat(4)));
    }

    #[test]
    fn liftres_and_forest_independence() {
        for g in [BeadedGraph::theta([0; 3]), BeadedGraph::eyes([0; 3])] {
            for p in [2u64, 3] {
                let (_, failures) = liftres_sweep(&g, p).unwrap();
                assert!(failures.is_empty());
            }
            let forests = g.all_maximal_forests();
            assert!(!forests.is_empty());
            for beads in [[1, 2, 0], [3, 3, 3], [0, 2, 4]] {
                let h = g.with_beads(&beads);
                let base = res_p_graph(&phi_r(&h).unwrap(), &h, 3).unwrap();
                for forest in &forests {
                    let f = phi_r_with_forest(&h, forest).unwrap();
                    assert_eq!(res_p_graph(&f, &h, 3).unwrap(), base);
                }
            }
        }
    }
}
