//! Planar diagrams: a lattice together with left-to-right orders on the
//! covers of each element, plus the structural predicates built on them
//! (planarity, slimness, semimodularity, rectangularity, 4-cells).

use crate::lattice_ops::Lattice;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("lower order of element {0} is not a permutation of its lower covers")]
    BadLowerOrder(usize),
    #[error("upper order of element {0} is not a permutation of its upper covers")]
    BadUpperOrder(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlanarError {
    #[error("cover orders contradict each other around element {0}")]
    InconsistentOrders(usize),
    #[error("edges {0} and {1} cross in the computed drawing")]
    Crossing(PrimeInterval, PrimeInterval),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("lattice is not semimodular (witness pair {0}, {1})")]
    NotSemimodular(usize, usize),
}

/// A two-element interval `zero ≺ one`, i.e. an edge of the diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeInterval {
    pub zero: usize,
    pub one: usize,
}

impl PrimeInterval {
    pub fn new(zero: usize, one: usize) -> Self {
        PrimeInterval { zero, one }
    }
}

impl std::fmt::Display for PrimeInterval {
    fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{}]", self.zero, self.one)
    }
}

/// A covering square of the diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FourCell {
    pub top: usize,
    pub left_corner: usize,
    pub right_corner: usize,
    pub bottom: usize,
}

/// Lattice plus planar cover orders.
#[derive(Clone, Debug)]
pub struct Diagram {
    lattice: Lattice,
    lower_order: Vec<Vec<usize>>,
    upper_order: Vec<Vec<usize>>,
}

/// Valid drawing: `x` doubled to keep half-unit centering integral.
#[derive(Clone, Debug)]
pub struct Layout {
    pub heights: Vec<usize>,
    pub x2: Vec<i64>,
    pub levels: Vec<Vec<usize>>,
}

impl Diagram {
    pub fn new(
        lattice: Lattice,
        lower_order: Vec<Vec<usize>>,
        upper_order: Vec<Vec<usize>>,
    ) -> Result<Diagram, DiagramError> {
        let n = lattice.n();
        assert_eq!(lower_order.len(), n);
        assert_eq!(upper_order.len(), n);
        for e in 0..n {
            if !is_permutation_of(&lower_order[e], lattice.poset().lower_covers(e)) {
                return Err(DiagramError::BadLowerOrder(e));
            }
            if !is_permutation_of(&upper_order[e], lattice.poset().upper_covers(e)) {
                return Err(DiagramError::BadUpperOrder(e));
            }
        }
        Ok(Diagram {
            lattice,
            lower_order,
            upper_order,
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn n(&self) -> usize {
        self.lattice.n()
    }

    pub fn lower_order(&self, e: usize) -> &[usize] {
        &self.lower_order[e]
    }

    pub fn upper_order(&self, e: usize) -> &[usize] {
        &self.upper_order[e]
    }

    /// Position of `elem` among the lower covers of `top`, left to right.
    pub fn lower_pos(&self, top: usize, elem: usize) -> Option<usize> {
        self.lower_order[top].iter().position(|&x| x == elem)
    }

    /// All edges, sorted by `(zero, one)`.
    pub fn prime_intervals(&self) -> Vec<PrimeInterval> {
        self.lattice
            .poset()
            .covers()
            .iter()
            .map(|&(a, b)| PrimeInterval::new(a, b))
            .collect()
    }

    /// Left boundary chain: first upper cover all the way up.
    pub fn left_boundary(&self) -> Vec<usize> {
        self.boundary(true)
    }

    /// Right boundary chain: last upper cover all the way up.
    pub fn right_boundary(&self) -> Vec<usize> {
        self.boundary(false)
    }

    fn boundary(&self, left: bool) -> Vec<usize> {
        let mut chain = vec![self.lattice.bottom()];
        let mut cur = self.lattice.bottom();
        while cur != self.lattice.top() {
            let ups = &self.upper_order[cur];
            cur = if left { ups[0] } else { *ups.last().unwrap() };
            chain.push(cur);
        }
        chain
    }

    /// Mirror image: every cover order reversed.
    pub fn mirrored(&self) -> Diagram {
        Diagram {
            lattice: self.lattice.clone(),
            lower_order: self
                .lower_order
                .iter()
                .map(|v| v.iter().rev().copied().collect())
                .collect(),
            upper_order: self
                .upper_order
                .iter()
                .map(|v| v.iter().rev().copied().collect())
                .collect(),
        }
    }

    /// Applies a relabeling permutation (`perm[old] = new`).
    pub fn relabeled(&self, perm: &[usize]) -> Diagram {
        let n = self.n();
        let pairs: Vec<(usize, usize)> = self
            .lattice
            .poset()
            .covers()
            .iter()
            .map(|&(a, b)| (perm[a], perm[b]))
            .collect();
        let poset = crate::poset::Poset::from_covers(n, &pairs).expect("permutation keeps order");
        let lattice = Lattice::from_poset(poset).expect("permutation keeps lattice");
        let mut lower_order = vec![Vec::new(); n];
        let mut upper_order = vec![Vec::new(); n];
        for e in 0..n {
            lower_order[perm[e]] = self.lower_order[e].iter().map(|&x| perm[x]).collect();
            upper_order[perm[e]] = self.upper_order[e].iter().map(|&x| perm[x]).collect();
        }
        Diagram::new(lattice, lower_order, upper_order).expect("relabeling keeps orders")
    }

    // ----- drawing and planarity -----

    /// Computes a concrete layered drawing and checks it for edge crossings.
    pub fn validate_planar(&self) -> Result<Layout, PlanarError> {
        let layout = self.layout()?;
        let covers = self.lattice.poset().covers();
        let pt = |e: usize| (layout.x2[e], layout.heights[e] as i64 * 2);
        for (i, &(a, b)) in covers.iter().enumerate() {
            for &(c, d) in &covers[i + 1..] {
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                if segments_cross(pt(a), pt(b), pt(c), pt(d)) {
                    return Err(PlanarError::Crossing(
                        PrimeInterval::new(a, b),
                        PrimeInterval::new(c, d),
                    ));
                }
            }
            // a node sitting on the open segment also invalidates the drawing
            for e in 0..self.n() {
                if e != a && e != b && on_open_segment(pt(a), pt(b), pt(e)) {
                    let other = PrimeInterval::new(
                        e,
                        *self.upper_order[e].first().unwrap_or(&e),
                    );
                    return Err(PlanarError::Crossing(PrimeInterval::new(a, b), other));
                }
            }
        }
        Ok(layout)
    }

    /// Layered drawing: y from longest-chain height, x from per-level orders
    /// derived from the cover orders.
    pub fn layout(&self) -> Result<Layout, PlanarError> {
        let n = self.n();
        let heights = self.lattice.poset().heights();
        let max_h = heights.iter().copied().max().unwrap_or(0);
        let mut levels: Vec<Vec<usize>> = vec![Vec::new(); max_h + 1];

        // breadth-first scan order: walk each level left to right, appending
        // unseen upper covers in their left-to-right order
        let mut bfs_pos = vec![usize::MAX; n];
        let bottom = self.lattice.bottom();
        bfs_pos[bottom] = 0;
        levels[0].push(bottom);
        for h in 0..max_h {
            let mut next = 0usize;
            let scan: Vec<usize> = levels[h].clone();
            for e in scan {
                for &u in &self.upper_order[e] {
                    if heights[u] == h + 1 && bfs_pos[u] == usize::MAX {
                        bfs_pos[u] = next;
                        next += 1;
                        levels[h + 1].push(u);
                    }
                }
            }
            // elements whose lower covers all jump levels are placed last
            let mut strays: Vec<usize> = (0..n)
                .filter(|&e| heights[e] == h + 1 && bfs_pos[e] == usize::MAX)
                .collect();
            strays.sort_unstable();
            for e in strays {
                bfs_pos[e] = next;
                next += 1;
                levels[h + 1].push(e);
            }
            // refine by same-level precedence constraints from the cover orders
            levels[h + 1] = self.order_level(&levels[h + 1], &heights, &bfs_pos)?;
        }

        let mut x2 = vec![0i64; n];
        for level in &levels {
            let w = level.len() as i64;
            for (idx, &e) in level.iter().enumerate() {
                x2[e] = 2 * idx as i64 - (w - 1);
            }
        }
        Ok(Layout {
            heights,
            x2,
            levels,
        })
    }

    /// Topological sort of one level under "p left of q" constraints taken
    /// from consecutive same-level entries of every cover order.
    fn order_level(
        &self,
        level: &[usize],
        heights: &[usize],
        bfs_pos: &[usize],
    ) -> Result<Vec<usize>, PlanarError> {
        let n = self.n();
        let in_level = |e: usize| level.contains(&e);
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        let mut add = |succ: &mut Vec<Vec<usize>>, indeg: &mut Vec<usize>, p: usize, q: usize| {
            if !succ[p].contains(&q) {
                succ[p].push(q);
                indeg[q] += 1;
            }
        };
        for e in 0..n {
            for list in [&self.lower_order[e], &self.upper_order[e]] {
                for w in list.windows(2) {
                    let (p, q) = (w[0], w[1]);
                    if heights[p] == heights[q] && in_level(p) {
                        add(&mut succ, &mut indeg, p, q);
                    }
                }
            }
        }
        let mut ready: Vec<usize> = level.iter().copied().filter(|&e| indeg[e] == 0).collect();
        ready.sort_by_key(|&e| (bfs_pos[e], e));
        let mut out = Vec::with_capacity(level.len());
        while let Some(&e) = ready.first() {
            ready.remove(0);
            out.push(e);
            for &q in &succ[e] {
                indeg[q] -= 1;
                if indeg[q] == 0 {
                    let at = ready
                        .binary_search_by_key(&(bfs_pos[q], q), |&r| (bfs_pos[r], r))
                        .unwrap_or_else(|i| i);
                    ready.insert(at, q);
                }
            }
        }
        if out.len() != level.len() {
            let stuck = level.iter().find(|&&e| !out.contains(&e)).copied().unwrap();
            return Err(PlanarError::InconsistentOrders(stuck));
        }
        Ok(out)
    }

    // ----- structural predicates -----

    /// Three pairwise-incomparable elements with equal pairwise meets and
    /// joins span a diamond; returns the witness triple if one exists.
    pub fn m3_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.n();
        let l = &self.lattice;
        for u in 0..n {
            for v in u + 1..n {
                if l.poset().comparable(u, v) {
                    continue;
                }
                let m = l.meet(u, v);
                let j = l.join(u, v);
                for w in v + 1..n {
                    if l.poset().comparable(u, w) || l.poset().comparable(v, w) {
                        continue;
                    }
                    if l.meet(u, w) == m
                        && l.meet(v, w) == m
                        && l.join(u, w) == j
                        && l.join(v, w) == j
                    {
                        return Some((u, v, w));
                    }
                }
            }
        }
        None
    }

    pub fn is_slim(&self) -> bool {
        self.m3_witness().is_none()
    }

    /// Witness pair `(a, b)` with `meet(a,b) ≺ a` but `b ⊀ join(a,b)`.
    pub fn semimodular_witness(&self) -> Option<(usize, usize)> {
        let n = self.n();
        let l = &self.lattice;
        for a in 0..n {
            for b in 0..n {
                if l.poset().is_cover(l.meet(a, b), a) && !l.poset().is_cover(b, l.join(a, b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_semimodular(&self) -> bool {
        self.semimodular_witness().is_none()
    }

    /// For a planar semimodular diagram: exactly one doubly-irreducible
    /// element on each boundary chain, and the two are complementary.
    pub fn rectangularity(&self) -> Result<Option<(usize, usize)>, StructureError> {
        if let Some((a, b)) = self.semimodular_witness() {
            return Err(StructureError::NotSemimodular(a, b));
        }
        let l = &self.lattice;
        let di = |chain: &[usize]| -> Vec<usize> {
            chain
                .iter()
                .copied()
                .filter(|&e| l.is_doubly_irreducible(e))
                .collect()
        };
        let left = di(&self.left_boundary());
        let right = di(&self.right_boundary());
        if let ([cl], [cr]) = (left.as_slice(), right.as_slice()) {
            if l.join(*cl, *cr) == l.top() && l.meet(*cl, *cr) == l.bottom() {
                return Ok(Some((*cl, *cr)));
            }
        }
        Ok(None)
    }

    pub fn is_sps(&self) -> bool {
        self.is_slim() && self.is_semimodular() && self.validate_planar().is_ok()
    }

    pub fn is_sr(&self) -> bool {
        self.is_sps() && matches!(self.rectangularity(), Ok(Some(_)))
    }

    /// All covering squares, sorted by `(top, left_corner)`.
    ///
    /// Corners need not be adjacent among the covers of `top`, but every
    /// cover between them must fall outside the interval `[bottom, top]`.
    pub fn four_cells(&self) -> Vec<FourCell> {
        let l = &self.lattice;
        let mut out = Vec::new();
        for top in 0..self.n() {
            let lo = &self.lower_order[top];
            for i in 0..lo.len() {
                for j in i + 1..lo.len() {
                    let (a, b) = (lo[i], lo[j]);
                    let m = l.meet(a, b);
                    if !l.poset().is_cover(m, a) || !l.poset().is_cover(m, b) {
                        continue;
                    }
                    if lo[i + 1..j].iter().any(|&k| l.leq(m, k)) {
                        continue;
                    }
                    out.push(FourCell {
                        top,
                        left_corner: a,
                        right_corner: b,
                        bottom: m,
                    });
                }
            }
        }
        out.sort_unstable_by_key(|c| (c.top, c.left_corner));
        out
    }

    /// Elements covering three or more elements.
    pub fn wide_elements(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&e| self.lower_order[e].len() >= 3)
            .collect()
    }
}

fn is_permutation_of(list: &[usize], set: &[usize]) -> bool {
    if list.len() != set.len() {
        return false;
    }
    let mut a = list.to_vec();
    let mut b = set.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a.dedup();
    a.len() == list.len() && a == b
}

type Pt = (i64, i64);

fn orient(a: Pt, b: Pt, c: Pt) -> i64 {
    ((b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)).signum()
}

fn on_open_segment(a: Pt, b: Pt, p: Pt) -> bool {
    orient(a, b, p) == 0
        && p.0 >= a.0.min(b.0)
        && p.0 <= a.0.max(b.0)
        && p.1 >= a.1.min(b.1)
        && p.1 <= a.1.max(b.1)
        && p != a
        && p != b
}

/// Proper or improper intersection of two closed segments with all four
/// endpoints distinct.
fn segments_cross(a: Pt, b: Pt, c: Pt, d: Pt) -> bool {
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    if o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        return true;
    }
    // collinear overlap or endpoint touching interior
    on_open_segment(a, b, c)
        || on_open_segment(a, b, d)
        || on_open_segment(c, d, a)
        || on_open_segment(c, d, b)
}
