//! Explicit schemes: maximum 3 on cubic graphs, maximum `Delta` on
//! `Delta`-regular bipartite graphs.
//!
//! The cubic construction starts from a proper 3-coloring `(X, Y, Z)` in
//! which every `X`-vertex sees both `Y` and `Z` and every `Y`-vertex sees
//! `Z`. Refining the classes by their neighborhoods gives
//!
//! | class  | members                                        | push |
//! |--------|------------------------------------------------|------|
//! | `X`    | color `X`                                      | 0    |
//! | `Y'`   | `Y` with an `X`-neighbor                       | 1    |
//! | `Y0`   | other `Y`, no neighbor in `Z''`                | 3    |
//! | `Y'''` | other `Y`, some neighbor in `Z''`              | layer|
//! | `Z'`   | `Z` with a neighbor in `X` or `Y'`             | 3    |
//! | `Z''`  | other `Z`                                      | layer|
//!
//! Vertices of `Y''' ∪ Z''` sit in layers `D_i` by distance `i` to `Z'` and
//! receive 0, 2, 3 for `i ≡ 1, 2, 0 (mod 3)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact;
use crate::graph::Graph;
use crate::scheme::{derive_sigma, is_proper, PushingScheme};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color3 {
    X,
    Y,
    Z,
}

impl Color3 {
    pub const ALL: [Color3; 3] = [Color3::X, Color3::Y, Color3::Z];

    pub fn index(self) -> usize {
        self as usize
    }
}

fn is_proper_coloring(g: &Graph, coloring: &[Color3]) -> bool {
    coloring.len() == g.n() && g.edges().all(|(u, v)| coloring[u] != coloring[v])
}

fn require_cubic_connected_not_k4(g: &Graph) -> Result<()> {
    if !g.is_cubic() {
        return Err(Error::Precondition("graph is not cubic".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.n() == 4 {
        return Err(Error::Precondition("K4 has chromatic number 4".into()));
    }
    Ok(())
}

/// Proper 3-coloring of a connected cubic graph other than `K4`.
///
/// Looks for a vertex `v` with non-adjacent neighbors `a`, `b` such that
/// `G - a - b` stays connected, colors `a` and `b` alike and greedily colors
/// the rest along a reverse BFS ordering of `G - a - b` ending at `v`. Every
/// vertex before `v` then has an uncolored later neighbor and `v` sees at
/// most two colors. Falls back to backtracking if no such triple exists.
pub fn brooks_3_coloring(g: &Graph) -> Result<Vec<Color3>> {
    require_cubic_connected_not_k4(g)?;
    let coloring = lovasz_coloring(g)
        .or_else(|| backtracking_3_coloring(g))
        .ok_or_else(|| Error::Invariant("no 3-coloring found for a cubic non-K4 graph".into()))?;
    if !is_proper_coloring(g, &coloring) {
        return Err(Error::Invariant("3-coloring is improper".into()));
    }
    Ok(coloring)
}

fn lovasz_coloring(g: &Graph) -> Option<Vec<Color3>> {
    let n = g.n();
    for v in 0..n {
        let nv = g.neighbors(v);
        for (i, &a) in nv.iter().enumerate() {
            for &b in &nv[i + 1..] {
                if g.has_edge(a, b) {
                    continue;
                }
                let removed = |x: usize| x == a || x == b;
                // BFS from v in G - a - b
                let mut dist = vec![usize::MAX; n];
                dist[v] = 0;
                let mut queue = std::collections::VecDeque::from([v]);
                let mut reached = 1;
                while let Some(x) = queue.pop_front() {
                    for &y in g.neighbors(x) {
                        if !removed(y) && dist[y] == usize::MAX {
                            dist[y] = dist[x] + 1;
                            reached += 1;
                            queue.push_back(y);
                        }
                    }
                }
                if reached != n - 2 {
                    continue;
                }
                let mut order: Vec<usize> = (0..n).filter(|&x| !removed(x)).collect();
                order.sort_by_key(|&x| (std::cmp::Reverse(dist[x]), x));
                let mut color: Vec<Option<Color3>> = vec![None; n];
                color[a] = Some(Color3::X);
                color[b] = Some(Color3::X);
                for &x in &order {
                    let free = Color3::ALL
                        .into_iter()
                        .find(|c| g.neighbors(x).iter().all(|&y| color[y] != Some(*c)));
                    color[x] = Some(free?);
                }
                return Some(color.into_iter().map(Option::unwrap).collect());
            }
        }
    }
    None
}

fn backtracking_3_coloring(g: &Graph) -> Option<Vec<Color3>> {
    fn go(g: &Graph, order: &[usize], i: usize, color: &mut [Option<Color3>]) -> bool {
        let Some(&x) = order.get(i) else {
            return true;
        };
        for c in Color3::ALL {
            if g.neighbors(x).iter().all(|&y| color[y] != Some(c)) {
                color[x] = Some(c);
                if go(g, order, i + 1, color) {
                    return true;
                }
            }
        }
        color[x] = None;
        false
    }
    let dist = g.bfs_distances(&[0]).ok()?;
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&x| (dist[x], x));
    let mut color = vec![None; g.n()];
    go(g, &order, 0, &mut color).then(|| color.into_iter().map(Option::unwrap).collect())
}

/// Output of [`maximize_coloring`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Maximized {
    pub coloring: Vec<Color3>,
    pub moves: usize,
}

/// Applies local recolorings until every `X`-vertex has a `Y`- and a
/// `Z`-neighbor and every `Y`-vertex has a `Z`-neighbor.
///
/// Moves: `X` without `Z`-neighbor to `Z`; `X` without `Y`-neighbor to `Y`;
/// `Y` without `Z`-neighbor to `Z`. Each raises `(|Z|, |Y|)`
/// lexicographically, so the loop terminates.
pub fn maximize_coloring(g: &Graph, coloring: &[Color3]) -> Result<Maximized> {
    if !is_proper_coloring(g, coloring) {
        return Err(Error::Precondition("input coloring is not proper".into()));
    }
    let mut col = coloring.to_vec();
    let sees = |col: &[Color3], v: usize, c: Color3| g.neighbors(v).iter().any(|&w| col[w] == c);
    let mut moves = 0;
    loop {
        let mut changed = false;
        for v in 0..g.n() {
            let target = match col[v] {
                Color3::X if !sees(&col, v, Color3::Z) => Some(Color3::Z),
                Color3::X if !sees(&col, v, Color3::Y) => Some(Color3::Y),
                Color3::Y if !sees(&col, v, Color3::Z) => Some(Color3::Z),
                _ => None,
            };
            if let Some(c) = target {
                col[v] = c;
                moves += 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(Maximized {
        coloring: col,
        moves,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CubicClass {
    X,
    YPrime,
    Y0,
    YTriple,
    ZPrime,
    ZDouble,
}

impl fmt::Display for CubicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CubicClass::X => "X",
            CubicClass::YPrime => "Y'",
            CubicClass::Y0 => "Y0",
            CubicClass::YTriple => "Y'''",
            CubicClass::ZPrime => "Z'",
            CubicClass::ZDouble => "Z''",
        })
    }
}

/// Class partition of a connected cubic graph driving the cubic scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicDecomposition {
    pub class: Vec<CubicClass>,
    /// Distance to `Z'` for vertices of `Y''' ∪ Z''`, `None` elsewhere.
    pub layer: Vec<Option<usize>>,
    pub coloring: Vec<Color3>,
}

/// Brooks coloring, local maximization, then [`decompose_with_coloring`].
pub fn cubic_decompose(g: &Graph) -> Result<CubicDecomposition> {
    require_cubic_connected_not_k4(g)?;
    let base = brooks_3_coloring(g)?;
    let maximized = maximize_coloring(g, &base)?;
    decompose_with_coloring(g, &maximized.coloring)
}

/// Decomposes a connected cubic graph along a maximized coloring.
/// Fails when `Z'` is empty or any structural property is violated.
pub fn decompose_with_coloring(g: &Graph, coloring: &[Color3]) -> Result<CubicDecomposition> {
    if !is_proper_coloring(g, coloring) {
        return Err(Error::Precondition("coloring is not proper".into()));
    }
    let n = g.n();
    let has = |v: usize, pred: &dyn Fn(usize) -> bool| g.neighbors(v).iter().any(|&w| pred(w));
    let mut class = vec![CubicClass::X; n];
    for v in 0..n {
        if coloring[v] == Color3::Y {
            class[v] = if has(v, &|w| coloring[w] == Color3::X) {
                CubicClass::YPrime
            } else {
                CubicClass::Y0 // refined below
            };
        }
    }
    for v in 0..n {
        if coloring[v] == Color3::Z {
            class[v] = if has(v, &|w| {
                coloring[w] == Color3::X || class[w] == CubicClass::YPrime
            }) {
                CubicClass::ZPrime
            } else {
                CubicClass::ZDouble
            };
        }
    }
    for v in 0..n {
        if class[v] == CubicClass::Y0 && has(v, &|w| class[w] == CubicClass::ZDouble) {
            class[v] = CubicClass::YTriple;
        }
    }
    let sources: Vec<usize> = (0..n).filter(|&v| class[v] == CubicClass::ZPrime).collect();
    if sources.is_empty() {
        return Err(Error::Precondition(
            "Z' is empty; the layered assignment is undefined".into(),
        ));
    }
    let dist = g.bfs_distances(&sources)?;
    let layer = (0..n)
        .map(|v| match class[v] {
            CubicClass::YTriple | CubicClass::ZDouble => dist[v],
            _ => None,
        })
        .collect();
    let dec = CubicDecomposition {
        class,
        layer,
        coloring: coloring.to_vec(),
    };
    let problems = dec.violations(g);
    if !problems.is_empty() {
        return Err(Error::Invariant(problems.join("; ")));
    }
    Ok(dec)
}

impl CubicDecomposition {
    /// Every structural property the cubic scheme relies on, as a list of
    /// human-readable violations naming the vertex.
    pub fn violations(&self, g: &Graph) -> Vec<String> {
        use CubicClass::*;
        let mut out = Vec::new();
        if !is_proper_coloring(g, &self.coloring) {
            out.push("underlying 3-coloring is not proper".into());
        }
        let cls = |w: usize| self.class[w];
        let any =
            |v: usize, set: &[CubicClass]| g.neighbors(v).iter().any(|&w| set.contains(&cls(w)));
        let all =
            |v: usize, set: &[CubicClass]| g.neighbors(v).iter().all(|&w| set.contains(&cls(w)));
        let z = [ZPrime, ZDouble];
        for v in 0..g.n() {
            let mut fail = |what: &str| out.push(format!("vertex {v} ({}): {what}", cls(v)));
            match cls(v) {
                X => {
                    if !any(v, &[YPrime]) {
                        fail("no neighbor in Y'");
                    }
                    if !any(v, &[ZPrime]) {
                        fail("no neighbor in Z'");
                    }
                    if any(v, &[Y0, YTriple, ZDouble]) {
                        fail("neighbor in Y'' or Z''");
                    }
                }
                YPrime => {
                    if !any(v, &[X]) {
                        fail("no neighbor in X");
                    }
                    if !any(v, &[ZPrime]) {
                        fail("no neighbor in Z'");
                    }
                    if any(v, &[ZDouble]) {
                        fail("neighbor in Z''");
                    }
                }
                Y0 => {
                    if !all(v, &[ZPrime]) {
                        fail("neighbor outside Z'");
                    }
                }
                YTriple => {
                    if !all(v, &z) {
                        fail("neighbor outside Z");
                    }
                    if !any(v, &[ZDouble]) {
                        fail("no neighbor in Z''");
                    }
                }
                ZPrime => {
                    if !any(v, &[X, YPrime]) {
                        fail("no neighbor in X or Y'");
                    }
                }
                ZDouble => {
                    if !all(v, &[YTriple]) {
                        fail("neighbor outside Y'''");
                    }
                }
            }
            match (cls(v), self.layer[v]) {
                (YTriple | ZDouble, None) => fail("unreachable from Z'"),
                (YTriple, Some(i)) if i % 2 == 0 => fail("Y''' vertex on an even layer"),
                (ZDouble, Some(i)) if i % 2 == 1 || i == 0 => fail("Z'' vertex on an odd layer"),
                (YTriple | ZDouble, Some(1)) => {
                    if !g.neighbors(v).iter().any(|&w| self.layer[w] == Some(2)) {
                        fail("layer 1 vertex without a neighbor on layer 2");
                    }
                }
                (YTriple | ZDouble, Some(i)) => {
                    if !g.neighbors(v).iter().any(|&w| self.layer[w] == Some(i - 1)) {
                        fail("layer vertex without a neighbor on the previous layer");
                    }
                }
                (_, Some(_)) => fail("layer assigned outside Y''' and Z''"),
                _ => {}
            }
        }
        out
    }

    pub fn push_value(&self, v: usize) -> u32 {
        match self.class[v] {
            CubicClass::X => 0,
            CubicClass::YPrime => 1,
            CubicClass::Y0 | CubicClass::ZPrime => 3,
            CubicClass::YTriple | CubicClass::ZDouble => {
                match self.layer[v].expect("layered vertex") % 3 {
                    1 => 0,
                    2 => 2,
                    _ => 3,
                }
            }
        }
    }

    pub fn scheme(&self) -> PushingScheme {
        PushingScheme::new((0..self.class.len()).map(|v| self.push_value(v)).collect())
    }

    /// Checks each vertex's sigma against the set its class permits, plus
    /// the two refinements for sigma 12.
    pub fn sigma_table_violations(&self, g: &Graph, sigma: &[u64]) -> Vec<String> {
        use CubicClass::*;
        let mut out = Vec::new();
        let in_layers = |w: usize, residue: usize| {
            matches!(self.class[w], YTriple | ZDouble)
                && self.layer[w].is_some_and(|i| i % 3 == residue)
        };
        for (v, &s) in sigma.iter().enumerate().take(g.n()) {
            let allowed: &[u64] = match (self.class[v], self.layer[v]) {
                (X, _) => &[8, 10],
                (YPrime, _) => &[9, 12],
                (Y0, _) => &[21],
                (ZPrime, _) => &[12, 13, 14, 15, 16, 17, 18, 19],
                (_, Some(1)) => &[10, 11],
                (_, Some(i)) if i % 3 == 1 => &[10, 11, 12],
                (_, Some(i)) if i % 3 == 2 => &[9, 12, 15],
                (_, Some(_)) => &[14, 16, 18],
                (_, None) => {
                    out.push(format!("vertex {v}: layered class without a layer"));
                    continue;
                }
            };
            if !allowed.contains(&s) {
                out.push(format!(
                    "vertex {v} ({}): sigma {s} not in {allowed:?}",
                    self.class[v]
                ));
            }
            if s == 12 {
                if self.class[v] == ZPrime
                    && g.neighbors(v).iter().any(|&w| self.class[w] == YPrime)
                {
                    out.push(format!("vertex {v} (Z'): sigma 12 with a neighbor in Y'"));
                }
                let upper_mod1 = self.layer[v].is_some_and(|i| i >= 4 && i % 3 == 1);
                if upper_mod1 && !g.neighbors(v).iter().all(|&w| in_layers(w, 0)) {
                    out.push(format!(
                        "vertex {v} (layer {:?}): sigma 12 with a neighbor outside layers 3i",
                        self.layer[v]
                    ));
                }
            }
        }
        out
    }
}

/// How a component of a cubic graph received its scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionMethod {
    /// `K4`, values `0, 1, 2, 3` in index order.
    CompleteK4,
    /// Layered class assignment.
    Decomposition,
    /// `Z'` empty (bipartite, `X` empty): BFS distance mod 3 with values
    /// `3, 1, 0`.
    BfsMod3Fallback,
    /// Exact search with cap 3 after the BFS fallback failed verification.
    ExactFallback,
}

#[derive(Debug, Clone)]
pub struct ComponentConstruction {
    pub vertices: Vec<usize>,
    pub method: ConstructionMethod,
    /// Local to the component (index `i` is `vertices[i]`).
    pub decomposition: Option<CubicDecomposition>,
}

#[derive(Debug, Clone)]
pub struct CubicConstruction {
    pub scheme: PushingScheme,
    pub components: Vec<ComponentConstruction>,
}

impl CubicConstruction {
    /// One line per vertex: `v class layer rho sigma`.
    pub fn dump(&self, g: &Graph) -> String {
        let sigma = derive_sigma(g, &self.scheme)
            .map(|p| p.sigma)
            .unwrap_or_default();
        let mut rows = vec![String::new(); g.n()];
        for comp in &self.components {
            for (i, &v) in comp.vertices.iter().enumerate() {
                let (class, layer) = match (&comp.decomposition, comp.method) {
                    (Some(d), _) => (
                        d.class[i].to_string(),
                        d.layer[i].map_or("-".to_string(), |l| l.to_string()),
                    ),
                    (None, ConstructionMethod::CompleteK4) => ("K4".into(), "-".into()),
                    (None, _) => ("fallback".into(), "-".into()),
                };
                rows[v] = format!(
                    "{v} {class} {layer} {} {}",
                    self.scheme.rho[v],
                    sigma.get(v).copied().unwrap_or(0)
                );
            }
        }
        rows.join("\n") + "\n"
    }
}

pub fn cubic_scheme(g: &Graph) -> Result<PushingScheme> {
    cubic_scheme_detailed(g).map(|c| c.scheme)
}

/// Scheme with maximum at most 3 for any cubic graph, component by
/// component, verified before return.
pub fn cubic_scheme_detailed(g: &Graph) -> Result<CubicConstruction> {
    if !g.is_cubic() {
        return Err(Error::Precondition("graph is not cubic".into()));
    }
    g.require_nice()?;
    let mut rho = vec![0u32; g.n()];
    let mut components = Vec::new();
    for vertices in g.components() {
        let h = g.induced(&vertices);
        let (local, method, decomposition) = cubic_component_scheme(&h)?;
        for (i, &v) in vertices.iter().enumerate() {
            rho[v] = local.rho[i];
        }
        components.push(ComponentConstruction {
            vertices,
            method,
            decomposition,
        });
    }
    let scheme = PushingScheme::new(rho);
    let construction = CubicConstruction { scheme, components };
    if let crate::scheme::Properness::Conflict(u, v) = is_proper(g, &construction.scheme)? {
        return Err(Error::Invariant(format!(
            "cubic scheme has conflict on edge {u}{v}:\n{}",
            construction.dump(g)
        )));
    }
    if construction.scheme.max() > 3 {
        return Err(Error::Invariant(format!(
            "cubic scheme uses {}",
            construction.scheme.max()
        )));
    }
    Ok(construction)
}

type ComponentScheme = (
    PushingScheme,
    ConstructionMethod,
    Option<CubicDecomposition>,
);

fn cubic_component_scheme(h: &Graph) -> Result<ComponentScheme> {
    if h.n() == 4 {
        return Ok((
            PushingScheme::new(vec![0, 1, 2, 3]),
            ConstructionMethod::CompleteK4,
            None,
        ));
    }
    let base = brooks_3_coloring(h)?;
    let maximized = maximize_coloring(h, &base)?;
    if maximized.coloring.contains(&Color3::X) {
        let dec = decompose_with_coloring(h, &maximized.coloring)?;
        let scheme = dec.scheme();
        if !is_proper(h, &scheme)?.is_proper() {
            return Err(Error::Invariant(format!(
                "decomposition scheme improper: {dec:?}"
            )));
        }
        return Ok((scheme, ConstructionMethod::Decomposition, Some(dec)));
    }
    let scheme = bfs_mod3_scheme(h, 0, 3)?;
    if is_proper(h, &scheme)?.is_proper() {
        return Ok((scheme, ConstructionMethod::BfsMod3Fallback, None));
    }
    log::warn!(
        "BFS mod 3 fallback failed on a cubic component of order {}",
        h.n()
    );
    let found = exact::feasible_with_cap(h, 3)?;
    match found.scheme {
        Some(s) => Ok((s, ConstructionMethod::ExactFallback, None)),
        None => Err(Error::Invariant(
            "no scheme with maximum 3 exists for a cubic component".into(),
        )),
    }
}

/// `high` on vertices at distance `≡ 0 (mod 3)` from `root`, 1 at `≡ 1`,
/// 0 at `≡ 2`.
pub fn bfs_mod3_scheme(g: &Graph, root: usize, high: u32) -> Result<PushingScheme> {
    let dist = g.bfs_distances(&[root])?;
    dist.iter()
        .map(|d| match d {
            None => Err(Error::Disconnected),
            Some(d) => Ok([high, 1, 0][d % 3]),
        })
        .collect::<Result<Vec<_>>>()
        .map(PushingScheme::new)
}

fn regular_bipartite_degree(g: &Graph) -> Result<usize> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let delta = g
        .regular_degree()
        .ok_or_else(|| Error::Precondition("graph is not regular".into()))?;
    if g.bipartition().is_none() {
        return Err(Error::Precondition("graph is not bipartite".into()));
    }
    Ok(delta)
}

/// Scheme with values in `{0, 1, Delta}` for a connected `Delta`-regular
/// bipartite graph, `Delta >= 4`, built from BFS distances to `root`.
pub fn bipartite_regular_scheme(g: &Graph, root: usize) -> Result<PushingScheme> {
    let delta = regular_bipartite_degree(g)?;
    if delta < 4 {
        return Err(Error::Precondition(format!("regularity {delta} < 4")));
    }
    if root >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: root,
            n: g.n(),
        });
    }
    let scheme = bfs_mod3_scheme(g, root, delta as u32)?;
    let profile = derive_sigma(g, &scheme)?;
    let d = delta as u64;
    if let Some(&(u, v)) = profile.conflicts.first() {
        return Err(Error::Invariant(format!(
            "bipartite scheme conflict on edge {u}{v}"
        )));
    }
    if profile.sigma[root] != d * d + 2 * d {
        return Err(Error::Invariant(format!(
            "sigma(root) = {}",
            profile.sigma[root]
        )));
    }
    Ok(scheme)
}

/// Vertices whose sigma falls outside the set allowed for their residue
/// class under [`bfs_mod3_scheme`] with `high = Delta`. The root is checked
/// against `Delta^2 + 2 Delta`.
pub fn bipartite_sigma_violations(g: &Graph, root: usize, sigma: &[u64]) -> Result<Vec<usize>> {
    let delta = regular_bipartite_degree(g)? as u64;
    let dist = g.bfs_distances(&[root])?;
    let d = delta;
    Ok((0..g.n())
        .filter(|&v| {
            let s = sigma[v];
            let dv = dist[v].unwrap();
            let ok = if dv == 0 {
                s == d * d + 2 * d
            } else {
                match dv % 3 {
                    0 => (0..d).any(|k| s == d * d + d + k),
                    1 => (1..=d).any(|k| s == 2 * d + k * d),
                    _ => (1..=d).any(|k| s == d + k + d * (d - k)),
                }
            };
            !ok
        })
        .collect())
}
