//! Exhaustive backtracking search for ray colorings.
//!
//! A coloring assigns 0 or 1 to every ray so that each orthogonal triple
//! carries exactly one 0 and no orthogonal pair carries two 0s. The search
//! interleaves unit propagation with depth-first branching and is complete:
//! when it reports unsatisfiable, no coloring exists.

use super::rays::RaySet;

/// Partial or complete 0/1 assignment; `Some(true)` is the color 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Coloring {
    assignment: Vec<Option<bool>>,
}

impl Coloring {
    pub fn value(&self, ray_id: usize) -> Option<u8> {
        self.assignment[ray_id].map(u8::from)
    }

    pub fn is_complete(&self) -> bool {
        self.assignment.iter().all(Option::is_some)
    }

    pub fn values(&self) -> Vec<Option<u8>> {
        self.assignment.iter().map(|v| v.map(u8::from)).collect()
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }
}

/// Statistics of an exhausted search: proof that no coloring exists.
#[derive(Debug, Clone, PartialEq)]
pub struct UnsatCertificate {
    /// Decision nodes expanded, including the root.
    pub nodes: u64,
    pub max_depth: usize,
    /// Subtrees closed without finding a solution.
    pub exhausted_branches: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ColoringOutcome {
    Satisfiable(Coloring),
    Unsatisfiable(UnsatCertificate),
}

impl ColoringOutcome {
    pub fn is_satisfiable(&self) -> bool {
        matches!(self, ColoringOutcome::Satisfiable(_))
    }
}

struct Searcher<'a> {
    rays: &'a RaySet,
    nodes: u64,
    max_depth: usize,
    exhausted: u64,
}

impl<'a> Searcher<'a> {
    /// Fixpoint unit propagation. Forced moves: a triple with a 0 forces 1
    /// on its other rays, a triple with two 1s forces a 0, a pair with a 0
    /// forces 1 on the partner. Returns false on contradiction.
    fn propagate(&self, a: &mut [Option<bool>]) -> bool {
        loop {
            let mut changed = false;
            for t in self.rays.triples() {
                let mut zeros = 0;
                let mut ones = 0;
                for &i in t {
                    match a[i] {
                        Some(false) => zeros += 1,
                        Some(true) => ones += 1,
                        None => {}
                    }
                }
                if zeros >= 2 || ones == 3 {
                    return false;
                }
                if zeros == 1 {
                    for &i in t {
                        if a[i].is_none() {
                            a[i] = Some(true);
                            changed = true;
                        }
                    }
                } else if ones == 2 {
                    for &i in t {
                        if a[i].is_none() {
                            a[i] = Some(false);
                            changed = true;
                        }
                    }
                }
            }
            for p in self.rays.pairs() {
                match (a[p[0]], a[p[1]]) {
                    (Some(false), Some(false)) => return false,
                    (Some(false), None) => {
                        a[p[1]] = Some(true);
                        changed = true;
                    }
                    (None, Some(false)) => {
                        a[p[0]] = Some(true);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// Unassigned ray occurring in the most incomplete triples; ties go to
    /// the lowest id, so node counts are reproducible.
    fn pick_branch_ray(&self, a: &[Option<bool>]) -> usize {
        let mut scores = vec![0usize; a.len()];
        for t in self.rays.triples() {
            if t.iter().any(|&i| a[i].is_none()) {
                for &i in t {
                    scores[i] += 1;
                }
            }
        }
        let mut best = usize::MAX;
        let mut best_score = 0;
        for (i, slot) in a.iter().enumerate() {
            if slot.is_none() && (best == usize::MAX || scores[i] > best_score) {
                best = i;
                best_score = scores[i];
            }
        }
        best
    }

    fn dfs(&mut self, mut a: Vec<Option<bool>>, depth: usize) -> Option<Vec<Option<bool>>> {
        self.nodes += 1;
        self.max_depth = self.max_depth.max(depth);
        if !self.propagate(&mut a) {
            self.exhausted += 1;
            return None;
        }
        if a.iter().all(Option::is_some) {
            return Some(a);
        }
        let ray = self.pick_branch_ray(&a);
        for value in [true, false] {
            let mut child = a.clone();
            child[ray] = Some(value);
            if let Some(solution) = self.dfs(child, depth + 1) {
                return Some(solution);
            }
        }
        self.exhausted += 1;
        None
    }
}

/// Complete backtracking search. Returns a valid coloring when one exists,
/// otherwise a certificate of exhaustion.
pub fn search_coloring(rays: &RaySet) -> ColoringOutcome {
    let mut searcher = Searcher {
        rays,
        nodes: 0,
        max_depth: 0,
        exhausted: 0,
    };
    let blank = vec![None; rays.len()];
    match searcher.dfs(blank, 0) {
        Some(assignment) => {
            let coloring = Coloring { assignment };
            debug_assert!(verify_coloring(rays, &coloring));
            ColoringOutcome::Satisfiable(coloring)
        }
        None => ColoringOutcome::Unsatisfiable(UnsatCertificate {
            nodes: searcher.nodes,
            max_depth: searcher.max_depth,
            exhausted_branches: searcher.exhausted,
        }),
    }
}

/// Independent constraint checker: the coloring is complete, every triple
/// has exactly one 0, and no stored pair has two 0s.
pub fn verify_coloring(rays: &RaySet, coloring: &Coloring) -> bool {
    if coloring.len() != rays.len() || !coloring.is_complete() {
        return false;
    }
    for t in rays.triples() {
        let zeros = t
            .iter()
            .filter(|&&i| coloring.assignment[i] == Some(false))
            .count();
        if zeros != 1 {
            return false;
        }
    }
    for p in rays.pairs() {
        if coloring.assignment[p[0]] == Some(false) && coloring.assignment[p[1]] == Some(false) {
            return false;
        }
    }
    true
}

/// Brute-force oracle: all valid colorings by direct enumeration of the 2ⁿ
/// complete assignments. Intended for small sets only.
pub fn enumerate_colorings(rays: &RaySet) -> Vec<Coloring> {
    let n = rays.len();
    assert!(n <= 24, "enumeration oracle is for small ray sets");
    let mut found = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let assignment: Vec<Option<bool>> = (0..n).map(|i| Some(mask >> i & 1 == 1)).collect();
        let candidate = Coloring { assignment };
        if verify_coloring(rays, &candidate) {
            found.push(candidate);
        }
    }
    found
}
