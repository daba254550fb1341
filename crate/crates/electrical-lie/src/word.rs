use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::ElError;

/// A word in the simple transpositions `s_1, …, s_{2n}` of `S_{2n+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CoxeterWord {
    pub n: usize,
    pub letters: Vec<usize>,
}

/// A rewrite at position `p`: swap two commuting letters, or replace `i j i` by `j i j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Move {
    Commute(usize),
    Braid(usize),
}

impl CoxeterWord {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self, ElError> {
        if n == 0 {
            return Err(ElError::EmptyGroup);
        }
        if let Some(&index) = letters.iter().find(|&&i| !(1..=2 * n).contains(&i)) {
            return Err(ElError::IndexOutOfRange { index, max: 2 * n });
        }
        Ok(CoxeterWord { n, letters })
    }

    /// Smallest `n` whose alphabet contains every letter.
    pub fn infer(letters: Vec<usize>) -> Result<Self, ElError> {
        let n = letters.iter().map(|&i| i.div_ceil(2)).max().unwrap_or(1).max(1);
        Self::new(n, letters)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `s_{i_1} ⋯ s_{i_l}` as the images of `0..2n+1`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut p: Vec<usize> = (0..=2 * self.n).collect();
        for &i in &self.letters {
            p.swap(i - 1, i);
        }
        p
    }

    /// Number of inversions of the product.
    pub fn coxeter_length(&self) -> usize {
        let p = self.permutation();
        (0..p.len()).map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count()).sum()
    }

    pub fn is_reduced(&self) -> bool {
        self.len() == self.coxeter_length()
    }

    pub fn moves(&self, braids: bool) -> Vec<Move> {
        let w = &self.letters;
        let mut out = Vec::new();
        for p in 0..w.len().saturating_sub(1) {
            if w[p].abs_diff(w[p + 1]) > 1 {
                out.push(Move::Commute(p));
            }
            if braids && p + 2 < w.len() && w[p] == w[p + 2] && w[p].abs_diff(w[p + 1]) == 1 {
                out.push(Move::Braid(p));
            }
        }
        out
    }

    pub fn apply(&self, mv: Move) -> CoxeterWord {
        let mut w = self.letters.clone();
        match mv {
            Move::Commute(p) => w.swap(p, p + 1),
            Move::Braid(p) => {
                let (i, j) = (w[p], w[p + 1]);
                w[p..p + 3].copy_from_slice(&[j, i, j]);
            }
        }
        CoxeterWord { n: self.n, letters: w }
    }

    fn search(&self, braids: bool, done: impl Fn(&CoxeterWord) -> bool) -> Option<(Vec<Move>, CoxeterWord)> {
        let mut seen: HashMap<CoxeterWord, Option<(CoxeterWord, Move)>> = HashMap::new();
        let mut queue = VecDeque::from([self.clone()]);
        seen.insert(self.clone(), None);
        while let Some(w) = queue.pop_front() {
            if done(&w) {
                let mut path = Vec::new();
                let mut cur = w.clone();
                while let Some(Some((prev, mv))) = seen.get(&cur) {
                    path.push(*mv);
                    cur = prev.clone();
                }
                path.reverse();
                return Some((path, w));
            }
            for mv in w.moves(braids) {
                let next = w.apply(mv);
                if !seen.contains_key(&next) {
                    seen.insert(next.clone(), Some((w.clone(), mv)));
                    queue.push_back(next);
                }
            }
        }
        None
    }

    /// Shortest sequence of commutations and braid moves turning `self` into `target`.
    pub fn path_to(&self, target: &CoxeterWord) -> Option<Vec<Move>> {
        self.search(true, |w| w == target).map(|(p, _)| p)
    }

    /// Moves reaching a word with two equal adjacent letters, and the position of the pair.
    pub fn path_to_repeat(&self, braids: bool) -> Option<(Vec<Move>, usize)> {
        let (path, w) = self.search(braids, |w| w.letters.windows(2).any(|p| p[0] == p[1]))?;
        let at = w.letters.windows(2).position(|p| p[0] == p[1]).expect("search stops at a repeat");
        Some((path, at))
    }
}
