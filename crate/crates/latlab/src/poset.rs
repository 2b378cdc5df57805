//! Finite posets and lattices over dense element ids `0..n`.
//!
//! The cover relation is the source of truth; the full order is its
//! reflexive-transitive closure kept as a bit matrix. A [`Lattice`] adds
//! precomputed meet and join tables.

use crate::bits::BitMatrix;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("cover ({0}, {1}) references an element out of range")]
    ElementOutOfRange(usize, usize),
    #[error("duplicate cover pair ({0}, {1})")]
    DuplicateCover(usize, usize),
    #[error("order contains a cycle through elements {0} and {1}")]
    CycleDetected(usize, usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("pair ({0}, {1}) has no least upper bound")]
    NoJoin(usize, usize),
    #[error("pair ({0}, {1}) has no greatest lower bound")]
    NoMeet(usize, usize),
    #[error("poset is empty")]
    Empty,
}

/// Finite poset: `leq` is the full order, `covers` its transitive reduction.
#[derive(Clone, Debug)]
pub struct Poset {
    n: usize,
    leq: BitMatrix,
    covers: Vec<(usize, usize)>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
}

impl Poset {
    /// Builds a poset from cover pairs `(a, b)` meaning `a ≺ b`.
    ///
    /// The order is the reflexive-transitive closure of the pairs; input
    /// pairs that turn out to be transitively implied are dropped from the
    /// cover relation.
    pub fn from_covers(n: usize, pairs: &[(usize, usize)]) -> Result<Poset, PosetError> {
        let mut seen = std::collections::HashSet::new();
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(PosetError::ElementOutOfRange(a, b));
            }
            if !seen.insert((a, b)) {
                return Err(PosetError::DuplicateCover(a, b));
            }
            if a == b {
                return Err(PosetError::CycleDetected(a, b));
            }
        }

        let mut leq = BitMatrix::identity(n);
        for &(a, b) in pairs {
            leq.set(a, b);
        }
        // leq[a] is the up-set of a: propagate until fixpoint.
        let mut changed = true;
        while changed {
            changed = false;
            for &(a, b) in pairs {
                changed |= leq.union_rows(a, b);
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if leq.get(a, b) && leq.get(b, a) {
                    return Err(PosetError::CycleDetected(a, b));
                }
            }
        }
        Ok(Poset::from_leq(n, leq))
    }

    /// Builds a poset from an already-closed order relation.
    pub(crate) fn from_leq(n: usize, leq: BitMatrix) -> Poset {
        // a ≺ b iff a < b and no c with a < c < b.
        let mut covers = Vec::new();
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for a in 0..n {
            for b in 0..n {
                if a == b || !leq.get(a, b) {
                    continue;
                }
                let strict_between = (0..n)
                    .any(|c| c != a && c != b && leq.get(a, c) && leq.get(c, b));
                if !strict_between {
                    covers.push((a, b));
                    upper_covers[a].push(b);
                    lower_covers[b].push(a);
                }
            }
        }
        covers.sort_unstable();
        Poset {
            n,
            leq,
            covers,
            upper_covers,
            lower_covers,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq.get(a, b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq.get(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq.get(a, b) || self.leq.get(b, a)
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.upper_covers[a].contains(&b)
    }

    /// Cover pairs `(a, b)` with `a ≺ b`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, e: usize) -> &[usize] {
        &self.upper_covers[e]
    }

    pub fn lower_covers(&self, e: usize) -> &[usize] {
        &self.lower_covers[e]
    }

    /// Elements of the up-set of `a` (including `a`).
    pub fn up_set(&self, a: usize) -> Vec<usize> {
        self.leq.row_ones(a)
    }

    /// Longest-chain height of every element, measured from the minimal ones.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.n];
        // covers sorted by source does not imply topological order; iterate to fixpoint.
        let mut changed = true;
        while changed {
            changed = false;
            for &(a, b) in &self.covers {
                if h[b] < h[a] + 1 {
                    h[b] = h[a] + 1;
                    changed = true;
                }
            }
        }
        h
    }

    /// Maximal elements (no upper cover).
    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&e| self.upper_covers[e].is_empty()).collect()
    }

    /// Minimal elements (no lower cover).
    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&e| self.lower_covers[e].is_empty()).collect()
    }
}

/// Lattice: a poset in which every pair has a join and a meet, with the
/// tables filled in.
#[derive(Clone, Debug)]
pub struct Lattice {
    poset: Poset,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl Lattice {
    /// Checks for unique least upper and greatest lower bounds of every pair
    /// and fills the operation tables.
    pub fn from_poset(poset: Poset) -> Result<Lattice, LatticeError> {
        let n = poset.n();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut join = vec![0usize; n * n];
        let mut meet = vec![0usize; n * n];
        for a in 0..n {
            for b in a..n {
                let j = least_of(&poset, &poset.leq.row_intersection(a, b), true)
                    .ok_or(LatticeError::NoJoin(a, b))?;
                let lbs: Vec<usize> = (0..n)
                    .filter(|&c| poset.leq(c, a) && poset.leq(c, b))
                    .collect();
                let m = least_of(&poset, &lbs, false).ok_or(LatticeError::NoMeet(a, b))?;
                join[a * n + b] = j;
                join[b * n + a] = j;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
            }
        }
        let bottom = (0..n).fold(0, |acc, e| meet[acc * n + e]);
        let top = (0..n).fold(0, |acc, e| join[acc * n + e]);
        Ok(Lattice {
            poset,
            join,
            meet,
            bottom,
            top,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn n(&self) -> usize {
        self.poset.n()
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.poset.n() + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.poset.n() + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    /// Elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&e| self.poset.lower_covers(e).len() == 1)
            .collect()
    }

    /// Elements with exactly one upper cover.
    pub fn meet_irreducibles(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&e| self.poset.upper_covers(e).len() == 1)
            .collect()
    }

    /// Exactly one lower and exactly one upper cover.
    pub fn is_doubly_irreducible(&self, e: usize) -> bool {
        self.poset.lower_covers(e).len() == 1 && self.poset.upper_covers(e).len() == 1
    }
}

/// Least element of `candidates` under the order (`up = true`: least of an
/// upper-bound set; `up = false`: greatest of a lower-bound set).
fn least_of(poset: &Poset, candidates: &[usize], up: bool) -> Option<usize> {
    'outer: for &c in candidates {
        for &d in candidates {
            let ok = if up { poset.leq(c, d) } else { poset.leq(d, c) };
            if !ok {
                continue 'outer;
            }
        }
        return Some(c);
    }
    None
}

/// The nine-element "three-pendant three-crown" poset.
///
/// Elements 0..=5 form the crown (a, b, c, d, e, f), elements 6..=8 the
/// pendants (x, y, z). Each pendant sits below two crown elements.
pub fn r3() -> Poset {
    let (a, b, c, d, e, f, x, y, z) = (0, 1, 2, 3, 4, 5, 6, 7, 8);
    Poset::from_covers(
        9,
        &[
            (a, b),
            (a, c),
            (d, c),
            (d, f),
            (e, b),
            (e, f),
            (x, a),
            (x, f),
            (y, e),
            (y, c),
            (z, b),
            (z, d),
        ],
    )
    .expect("fixed cover list is acyclic")
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn chain_poset(k: usize) -> Poset {
        let pairs: Vec<_> = (0..k.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Poset::from_covers(k, &pairs).unwrap()
    }

    #[test]
    fn antichain_is_identity_order() {
        let p = Poset::from_covers(3, &[]).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(p.leq(a, b), a == b);
            }
        }
        assert!(p.covers().is_empty());
    }

    #[test]
    fn chain_order_closure() {
        let p = Poset::from_covers(3, &[(0, 1), (1, 2)]).unwrap();
        let pairs: usize = (0..3)
            .map(|a| (0..3).filter(|&b| p.leq(a, b)).count())
            .sum();
        assert_eq!(pairs, 6);
        assert!(p.leq(0, 2));
    }

    #[test]
    fn transitive_pairs_dropped_from_covers() {
        let p = Poset::from_covers(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn cycle_and_duplicate_rejected() {
        assert_eq!(
            Poset::from_covers(2, &[(0, 1), (1, 0)]),
            Err(PosetError::CycleDetected(0, 1))
        );
        assert_eq!(
            Poset::from_covers(2, &[(0, 1), (0, 1)]),
            Err(PosetError::DuplicateCover(0, 1))
        );
        assert!(matches!(
            Poset::from_covers(2, &[(0, 5)]),
            Err(PosetError::ElementOutOfRange(0, 5))
        ));
    }

    #[test]
    fn covers_equal_recomputed_transitive_reduction() {
        // rebuild from the closed order and compare
        for p in [chain_poset(5), r3(), Poset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()] {
            let rebuilt = Poset::from_leq(p.n(), p.leq.clone());
            assert_eq!(p.covers(), rebuilt.covers());
        }
    }

    #[test]
    fn chain_lattice_has_min_max_tables() {
        let l = Lattice::from_poset(chain_poset(3)).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(l.join(a, b), a.max(b));
                assert_eq!(l.meet(a, b), a.min(b));
            }
        }
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 2);
    }

    #[test]
    fn antichain_is_not_a_lattice() {
        let p = Poset::from_covers(2, &[]).unwrap();
        assert!(matches!(
            Lattice::from_poset(p),
            Err(LatticeError::NoJoin(0, 1))
        ));
    }

    #[test]
    fn r3_is_not_a_lattice() {
        // the crown has incomparable pairs with two maximal common upper bounds
        let err = Lattice::from_poset(r3());
        assert!(err.is_err());
        // independent brute-force confirmation on the witness pair
        let p = r3();
        if let Err(LatticeError::NoJoin(a, b)) = err {
            let ubs: Vec<usize> = (0..9)
                .filter(|&c| p.leq(a, c) && p.leq(b, c))
                .collect();
            let least = ubs
                .iter()
                .filter(|&&u| ubs.iter().all(|&v| p.leq(u, v)))
                .count();
            assert_eq!(least, 0, "witness pair must lack a least upper bound");
        }
    }

    #[test]
    fn r3_shape() {
        let p = r3();
        // crown: each of 0..6 has exactly two neighbours inside the crown
        let crown_covers: Vec<_> = p
            .covers()
            .iter()
            .filter(|&&(a, b)| a < 6 && b < 6)
            .collect();
        assert_eq!(crown_covers.len(), 6);
        // crown cover graph is a single 6-cycle
        let mut deg = [0usize; 6];
        for &&(a, b) in &crown_covers {
            deg[a] += 1;
            deg[b] += 1;
        }
        assert!(deg.iter().all(|&d| d == 2));
        // pendants: two upper covers, no lower covers
        for pendant in 6..9 {
            assert_eq!(p.upper_covers(pendant).len(), 2);
            assert!(p.lower_covers(pendant).is_empty());
        }
        assert_eq!(p.minimal_elements(), vec![0, 3, 4, 6, 7, 8]);
    }

    #[test]
    fn join_irreducibles_of_small_lattices() {
        let c4 = Lattice::from_poset(chain_poset(4)).unwrap();
        assert_eq!(c4.join_irreducibles(), vec![1, 2, 3]);

        // Boolean square 0 < a,b < 3
        let sq = Lattice::from_poset(
            Poset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap(),
        )
        .unwrap();
        assert_eq!(sq.join_irreducibles(), vec![1, 2]);
    }

    #[test]
    fn absorption_holds_on_samples() {
        for l in [
            Lattice::from_poset(chain_poset(5)).unwrap(),
            Lattice::from_poset(
                Poset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap(),
            )
            .unwrap(),
        ] {
            for a in 0..l.n() {
                for b in 0..l.n() {
                    assert_eq!(l.join(a, l.meet(a, b)), a);
                    assert_eq!(l.meet(a, l.join(a, b)), a);
                }
            }
        }
    }

    /// Downset lattice of a poset, brute force; the join-irreducible
    /// elements of the result must recover the original poset.
    #[test]
    fn join_irreducibles_regenerate_distributive_lattice() {
        let seed = r3(); // any small poset works as the generator
        let seeds = [chain_poset(3), Poset::from_covers(3, &[(0, 1), (0, 2)]).unwrap(), seed];
        for p in seeds {
            let n = p.n();
            let mut downsets: Vec<u64> = Vec::new();
            for mask in 0u64..(1 << n) {
                let is_down = (0..n).all(|b| {
                    mask >> b & 1 == 0
                        || (0..n).all(|a| !p.leq(a, b) || mask >> a & 1 == 1)
                });
                if is_down {
                    downsets.push(mask);
                }
            }
            // order downsets by inclusion, build the lattice D
            let m = downsets.len();
            let mut covers = Vec::new();
            for i in 0..m {
                for j in 0..m {
                    let (a, b) = (downsets[i], downsets[j]);
                    if a != b && a & !b == 0 {
                        let between = downsets.iter().any(|&c| {
                            c != a && c != b && a & !c == 0 && c & !b == 0
                        });
                        if !between {
                            covers.push((i, j));
                        }
                    }
                }
            }
            let d = Lattice::from_poset(Poset::from_covers(m, &covers).unwrap()).unwrap();
            let ji = d.join_irreducibles();
            assert_eq!(ji.len(), n, "|Ji(D)| must equal |P|");
            // Ji(D) with the induced order is isomorphic to P: each
            // join-irreducible downset is the principal downset of one element.
            let mut elem_of = std::collections::HashMap::new();
            for &j in &ji {
                let mask = downsets[j];
                let maxi: Vec<usize> = (0..n)
                    .filter(|&a| {
                        mask >> a & 1 == 1
                            && (0..n).all(|b| b == a || mask >> b & 1 == 0 || !p.leq(a, b))
                    })
                    .collect();
                assert_eq!(maxi.len(), 1);
                elem_of.insert(j, maxi[0]);
            }
            for &j1 in &ji {
                for &j2 in &ji {
                    let incl = downsets[j1] & !downsets[j2] == 0;
                    assert_eq!(incl, p.leq(elem_of[&j1], elem_of[&j2]));
                }
            }
        }
    }
}
