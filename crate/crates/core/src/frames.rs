//! Contexts of a vector set and the Kochen-Specker colouring decision.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exactvec::{inner, Direction};
use crate::kssets::VectorSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("a frame in dimension {dim} needs {dim} members, got {got}")]
    WrongSize { dim: usize, got: usize },
    #[error("{0} and {1} are not orthogonal")]
    NotOrthogonal(Direction, Direction),
    #[error("mixed ambient dimensions in frame")]
    MixedDimensions,
    #[error("frame member {0} is not in the vector set")]
    ForeignMember(Direction),
}

/// A complete orthogonal basis of rays: `m` members in dimension `m`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Frame {
    members: Vec<Direction>,
}

impl Frame {
    pub fn new(mut members: Vec<Direction>) -> Result<Self, FrameError> {
        let dim = members.first().map_or(0, Direction::dim);
        if members.iter().any(|d| d.dim() != dim) {
            return Err(FrameError::MixedDimensions);
        }
        if members.len() != dim || dim == 0 {
            return Err(FrameError::WrongSize {
                dim,
                got: members.len(),
            });
        }
        for (i, u) in members.iter().enumerate() {
            for v in &members[i + 1..] {
                if inner(u, v).expect("same dimension") != 0 {
                    return Err(FrameError::NotOrthogonal(u.clone(), v.clone()));
                }
            }
        }
        members.sort();
        Ok(Self { members })
    }

    pub fn members(&self) -> &[Direction] {
        &self.members
    }

    pub fn dim(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, d: &Direction) -> bool {
        self.members.binary_search(d).is_ok()
    }
}

impl std::fmt::Display for Frame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, d) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "}}")
    }
}

/// Orthogonality graph: vertices are the set members in canonical order,
/// edges join orthogonal pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalityGraph {
    vertices: Vec<Direction>,
    adjacency: Vec<Vec<bool>>,
    neighbours: Vec<Vec<usize>>,
}

impl OrthogonalityGraph {
    pub fn vertices(&self) -> &[Direction] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i][j]
    }

    pub fn neighbours(&self, i: usize) -> &[usize] {
        &self.neighbours[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbours[i].len()
    }

    pub fn index_of(&self, d: &Direction) -> Option<usize> {
        self.vertices.binary_search(d).ok()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbours.iter().map(Vec::len).sum::<usize>() / 2
    }
}

pub fn orthogonality_graph(s: &VectorSet) -> OrthogonalityGraph {
    let vertices = s.members().to_vec();
    let n = vertices.len();
    let mut adjacency = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if inner(&vertices[i], &vertices[j]).expect("one set, one dimension") == 0 {
                adjacency[i][j] = true;
                adjacency[j][i] = true;
            }
        }
    }
    let neighbours = adjacency
        .iter()
        .map(|row| (0..n).filter(|&j| row[j]).collect())
        .collect();
    OrthogonalityGraph {
        vertices,
        adjacency,
        neighbours,
    }
}

fn bron_kerbosch(
    g: &OrthogonalityGraph,
    clique: &mut Vec<usize>,
    mut candidates: Vec<usize>,
    mut excluded: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if candidates.is_empty() {
        if excluded.is_empty() {
            out.push(clique.clone());
        }
        return;
    }
    let pivot = candidates
        .iter()
        .chain(&excluded)
        .copied()
        .max_by_key(|&u| candidates.iter().filter(|&&v| g.adjacent(u, v)).count())
        .expect("candidates nonempty");
    let branch: Vec<usize> = candidates
        .iter()
        .copied()
        .filter(|&v| !g.adjacent(pivot, v))
        .collect();
    for v in branch {
        clique.push(v);
        let next_c = candidates
            .iter()
            .copied()
            .filter(|&u| g.adjacent(v, u))
            .collect();
        let next_x = excluded
            .iter()
            .copied()
            .filter(|&u| g.adjacent(v, u))
            .collect();
        bron_kerbosch(g, clique, next_c, next_x, out);
        clique.pop();
        candidates.retain(|&u| u != v);
        excluded.push(v);
    }
}

/// Maximal cliques of the orthogonality graph (pivoting Bron–Kerbosch).
pub fn maximal_cliques(g: &OrthogonalityGraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    bron_kerbosch(
        g,
        &mut Vec::new(),
        (0..g.len()).collect(),
        Vec::new(),
        &mut out,
    );
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn to_frame(g: &OrthogonalityGraph, clique: &[usize]) -> Frame {
    Frame::new(clique.iter().map(|&i| g.vertices[i].clone()).collect())
        .expect("cliques of size m are complete frames")
}

/// Every complete frame (orthogonal `m`-clique) of the set, sorted.
///
/// In dimension `m` no clique exceeds `m` members, so the `m`-cliques are
/// exactly the maximal cliques of size `m`.
pub fn enumerate_frames(s: &VectorSet) -> Vec<Frame> {
    let g = orthogonality_graph(s);
    let m = s.dim();
    let mut frames: Vec<Frame> = maximal_cliques(&g)
        .iter()
        .filter(|c| c.len() == m)
        .map(|c| to_frame(&g, c))
        .collect();
    frames.sort();
    frames
}

/// Same result as [`enumerate_frames`] by scanning every `m`-subset.
pub fn enumerate_frames_naive(s: &VectorSet) -> Vec<Frame> {
    let g = orthogonality_graph(s);
    let m = s.dim();
    let n = g.len();
    let mut frames = Vec::new();
    if m == 0 || m > n {
        return frames;
    }
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        let orthogonal = (0..m).all(|a| (a + 1..m).all(|b| g.adjacent(idx[a], idx[b])));
        if orthogonal {
            frames.push(to_frame(&g, &idx));
        }
        // advance to the next m-combination in lexicographic order
        let Some(pos) = (0..m).rev().find(|&i| idx[i] != i + n - m) else {
            break;
        };
        idx[pos] += 1;
        for i in pos + 1..m {
            idx[i] = idx[i - 1] + 1;
        }
    }
    frames.sort();
    frames
}

/// For each direction, every `(frame index, position)` where it occurs.
pub fn shared_vector_index(frames: &[Frame]) -> BTreeMap<Direction, Vec<(usize, usize)>> {
    let mut index: BTreeMap<Direction, Vec<(usize, usize)>> = BTreeMap::new();
    for (fi, f) in frames.iter().enumerate() {
        for (pos, d) in f.members().iter().enumerate() {
            index.entry(d.clone()).or_default().push((fi, pos));
        }
    }
    index
}

/// Colouring of a vector set: `true` marks the ray valued 1 (the −1 outcome
/// of its observable).
pub type Coloring = BTreeMap<Direction, bool>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColorabilityResult {
    Colorable(Coloring),
    NotColorable { nodes_explored: u64 },
}

impl ColorabilityResult {
    pub fn is_colorable(&self) -> bool {
        matches!(self, ColorabilityResult::Colorable(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Colorability {
    pub result: ColorabilityResult,
    pub warnings: Vec<String>,
}

/// Checks the two colouring rules: exactly one 1 per frame, and no two
/// orthogonal members of the set both 1.
pub fn validate_coloring(s: &VectorSet, frames: &[Frame], coloring: &Coloring) -> bool {
    let value = |d: &Direction| coloring.get(d).copied();
    if s.members().iter().any(|d| value(d).is_none()) {
        return false;
    }
    let frames_ok = frames.iter().all(|f| {
        f.members()
            .iter()
            .filter(|d| value(d) == Some(true))
            .count()
            == 1
    });
    let ones: Vec<&Direction> = s
        .members()
        .iter()
        .filter(|d| value(d) == Some(true))
        .collect();
    let exclusive = ones.iter().enumerate().all(|(i, u)| {
        ones[i + 1..]
            .iter()
            .all(|v| inner(u, v).map_or(false, |x| x != 0))
    });
    frames_ok && exclusive
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Cell {
    Free,
    Zero,
    One,
}

struct ColorSearch<'a> {
    g: &'a OrthogonalityGraph,
    frames: Vec<Vec<usize>>,
    frames_of: Vec<Vec<usize>>,
    order: Vec<usize>,
    cells: Vec<Cell>,
    trail: Vec<usize>,
    nodes: u64,
}

impl ColorSearch<'_> {
    fn set(&mut self, v: usize, c: Cell) {
        self.cells[v] = c;
        self.trail.push(v);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("nonempty");
            self.cells[v] = Cell::Free;
        }
    }

    /// Assigns and propagates; false on contradiction.
    fn assign(&mut self, v: usize, c: Cell) -> bool {
        let mut queue = vec![(v, c)];
        while let Some((v, c)) = queue.pop() {
            match (self.cells[v], c) {
                (Cell::Free, _) => self.set(v, c),
                (have, want) if have == want => continue,
                _ => return false,
            }
            match c {
                Cell::One => {
                    for &u in self.g.neighbours(v) {
                        match self.cells[u] {
                            Cell::One => return false,
                            Cell::Free => queue.push((u, Cell::Zero)),
                            Cell::Zero => {}
                        }
                    }
                }
                Cell::Zero => {
                    for &f in &self.frames_of[v] {
                        let mut free = None;
                        let mut free_count = 0;
                        let mut has_one = false;
                        for &u in &self.frames[f] {
                            match self.cells[u] {
                                Cell::One => has_one = true,
                                Cell::Free => {
                                    free_count += 1;
                                    free = Some(u);
                                }
                                Cell::Zero => {}
                            }
                        }
                        if has_one {
                            continue;
                        }
                        match free_count {
                            0 => return false,
                            1 => queue.push((free.expect("one free"), Cell::One)),
                            _ => {}
                        }
                    }
                }
                Cell::Free => unreachable!("never assigned"),
            }
        }
        true
    }

    fn search(&mut self) -> bool {
        let Some(&v) = self.order.iter().find(|&&v| self.cells[v] == Cell::Free) else {
            return true;
        };
        self.nodes += 1;
        for c in [Cell::One, Cell::Zero] {
            let mark = self.trail.len();
            if self.assign(v, c) && self.search() {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

/// Decides whether `s` admits a colouring with exactly one 1 in every given
/// frame and no two orthogonal members both 1.
///
/// Complete backtracking with unit propagation, branching on vertices in
/// descending frame-membership order. Passing fewer frames than
/// [`enumerate_frames`] returns decides a weaker property.
pub fn ks_colorable(s: &VectorSet, frames: &[Frame]) -> Result<Colorability, FrameError> {
    let g = orthogonality_graph(s);
    let mut warnings = Vec::new();
    if frames.is_empty() {
        warnings.push("no frames supplied; the all-zero colouring is trivially valid".to_string());
        let coloring = s.members().iter().map(|d| (d.clone(), false)).collect();
        return Ok(Colorability {
            result: ColorabilityResult::Colorable(coloring),
            warnings,
        });
    }
    let mut frame_idx = Vec::with_capacity(frames.len());
    for f in frames {
        let ids = f
            .members()
            .iter()
            .map(|d| {
                g.index_of(d)
                    .ok_or_else(|| FrameError::ForeignMember(d.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        frame_idx.push(ids);
    }
    let mut frames_of = vec![Vec::new(); g.len()];
    for (fi, f) in frame_idx.iter().enumerate() {
        for &v in f {
            frames_of[v].push(fi);
        }
    }
    let mut order: Vec<usize> = (0..g.len()).filter(|&v| !frames_of[v].is_empty()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(frames_of[v].len()), v));

    let mut search = ColorSearch {
        g: &g,
        frames: frame_idx,
        frames_of,
        order,
        cells: vec![Cell::Free; g.len()],
        trail: Vec::new(),
        nodes: 0,
    };
    let result = if search.search() {
        // vertices outside every frame take 0
        let coloring = g
            .vertices()
            .iter()
            .zip(&search.cells)
            .map(|(d, c)| (d.clone(), *c == Cell::One))
            .collect();
        ColorabilityResult::Colorable(coloring)
    } else {
        ColorabilityResult::NotColorable {
            nodes_explored: search.nodes,
        }
    };
    Ok(Colorability { result, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactvec::canonicalize;
    use crate::kssets::{build_a3, build_s4, build_s6, A3_LISTED_FRAMES};

    fn d(xs: &[i64]) -> Direction {
        canonicalize(xs).unwrap()
    }

    fn set3(raw: &[[i64; 3]]) -> VectorSet {
        VectorSet::from_raw("t", 3, raw).unwrap()
    }

    /// 2^k enumeration; only for small sets.
    fn brute_force_colorable(s: &VectorSet, frames: &[Frame]) -> bool {
        let k = s.len();
        assert!(k <= 16);
        (0u32..1 << k).any(|mask| {
            let c: Coloring = s
                .members()
                .iter()
                .enumerate()
                .map(|(i, d)| (d.clone(), mask >> i & 1 == 1))
                .collect();
            validate_coloring(s, frames, &c)
        })
    }

    #[test]
    fn frame_constructor() {
        assert!(Frame::new(vec![d(&[1, 0, 0]), d(&[0, 1, 0])]).is_err());
        assert!(matches!(
            Frame::new(vec![d(&[1, 0, 0]), d(&[0, 1, 0]), d(&[1, 1, 1])]),
            Err(FrameError::NotOrthogonal(_, _))
        ));
        let f = Frame::new(vec![d(&[0, 0, 1]), d(&[1, 0, 0]), d(&[0, 1, 0])]).unwrap();
        assert_eq!(f.members()[0], d(&[0, 0, 1]));
    }

    #[test]
    fn graph_examples() {
        let g = orthogonality_graph(&set3(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]));
        assert_eq!(g.edge_count(), 3);
        let g = orthogonality_graph(&set3(&[[1, 2, 3]]));
        assert_eq!(g.edge_count(), 0);

        let a3 = build_a3();
        let g = orthogonality_graph(&a3);
        let i = g.index_of(&d(&[1, 0, 0])).unwrap();
        let direct = a3
            .members()
            .iter()
            .filter(|v| v.components()[0] == 0)
            .count();
        assert_eq!(g.degree(i), direct);
        assert_eq!(g.degree(i), 8);
    }

    #[test]
    fn frame_enumeration_examples() {
        let e = set3(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(enumerate_frames(&e).len(), 1);

        let a3 = build_a3();
        let frames = enumerate_frames(&a3);
        let mut expected: Vec<Frame> = A3_LISTED_FRAMES
            .iter()
            .map(|f| Frame::new(f.iter().map(|v| d(v)).collect()).unwrap())
            .collect();
        expected.sort();
        assert_eq!(frames, expected);

        let s4 = build_s4();
        let tetrads = enumerate_frames(&s4);
        assert_eq!(tetrads.len(), 9);
        for v in s4.members() {
            assert!(tetrads.iter().any(|f| f.contains(v)), "{v} uncovered");
        }
    }

    #[test]
    fn naive_and_clique_enumeration_agree() {
        for s in [build_a3(), build_s4(), build_s6()] {
            assert_eq!(
                enumerate_frames(&s),
                enumerate_frames_naive(&s),
                "{}",
                s.name()
            );
        }
        assert_eq!(enumerate_frames(&build_s6()).len(), 16);
    }

    #[test]
    fn shared_index_examples() {
        let frames: Vec<Frame> = A3_LISTED_FRAMES
            .iter()
            .map(|f| Frame::new(f.iter().map(|v| d(v)).collect()).unwrap())
            .collect();
        let index = shared_vector_index(&frames);
        let numbers =
            |v: &[i64]| -> Vec<usize> { index[&d(v)].iter().map(|&(f, _)| f + 1).collect() };
        assert_eq!(numbers(&[1, 0, 0]), vec![1, 2, 5, 6]);
        assert_eq!(numbers(&[0, 1, -1]), vec![2, 11]);

        let single = [Frame::new(vec![d(&[1, 0, 0]), d(&[0, 1, 0]), d(&[0, 0, 1])]).unwrap()];
        let index = shared_vector_index(&single);
        assert_eq!(index[&d(&[0, 1, 0])], vec![(0, 1)]);
    }

    #[test]
    fn colorability_examples() {
        let e = set3(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        let frames = enumerate_frames(&e);
        let c = ks_colorable(&e, &frames).unwrap();
        let ColorabilityResult::Colorable(w) = &c.result else {
            panic!("colorable")
        };
        assert!(validate_coloring(&e, &frames, w));

        for s in [build_s4(), build_a3(), build_s6()] {
            let frames = enumerate_frames(&s);
            let c = ks_colorable(&s, &frames).unwrap();
            assert!(
                matches!(c.result, ColorabilityResult::NotColorable { nodes_explored } if nodes_explored > 0),
                "{}",
                s.name()
            );
        }
    }

    #[test]
    fn empty_frame_list_warns() {
        let a3 = build_a3();
        let c = ks_colorable(&a3, &[]).unwrap();
        assert!(c.result.is_colorable());
        assert_eq!(c.warnings.len(), 1);
    }

    #[test]
    fn foreign_frame_member_is_rejected() {
        let e = set3(&[[1, 0, 0], [0, 1, 0]]);
        let f = Frame::new(vec![d(&[1, 0, 0]), d(&[0, 1, 0]), d(&[0, 0, 1])]).unwrap();
        assert!(matches!(
            ks_colorable(&e, &[f]),
            Err(FrameError::ForeignMember(_))
        ));
    }

    #[test]
    fn rescaling_inputs_changes_nothing() {
        let raw: Vec<Vec<i64>> = build_a3()
            .members()
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.components()
                    .iter()
                    .map(|x| x * -(i as i64 % 4 + 1))
                    .collect()
            })
            .collect();
        let scaled = VectorSet::from_raw("A3", 3, &raw).unwrap();
        assert_eq!(scaled, build_a3());
    }

    #[test]
    fn backtracking_matches_brute_force_on_small_sets() {
        // subsets of 12 A3 directions drawn from overlapping frames
        let frames = enumerate_frames(&build_a3());
        let mut pool: Vec<Direction> = Vec::new();
        for f in &frames {
            for m in f.members() {
                if pool.len() < 12 && !pool.contains(m) {
                    pool.push(m.clone());
                }
            }
        }
        let mut checked = 0;
        for mask in (0u32..1 << pool.len()).step_by(3) {
            let members: Vec<Direction> = (0..pool.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| pool[i].clone())
                .collect();
            let s = VectorSet::new("sub", 3, members).unwrap();
            let frames = enumerate_frames(&s);
            if frames.is_empty() {
                continue;
            }
            let fast = ks_colorable(&s, &frames).unwrap().result;
            assert_eq!(fast.is_colorable(), brute_force_colorable(&s, &frames));
            if let ColorabilityResult::Colorable(w) = fast {
                assert!(validate_coloring(&s, &frames, &w));
            }
            checked += 1;
        }
        assert!(checked > 50);
    }
}
