use std::collections::{BTreeMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::AutomatonError;

/// Anything usable as an alphabet symbol.  The `Ord` instance doubles as the
/// fixed letter order for lexicographic constructions.
pub trait Letter: Clone + Ord + Eq + Hash + Debug {}
impl<T: Clone + Ord + Eq + Hash + Debug> Letter for T {}

/// A complete deterministic automaton.  Transitions are total; `delta[q][a]`
/// indexes letters by their position in the sorted alphabet.
#[derive(Clone, PartialEq, Eq)]
pub struct Dfa<L: Letter> {
    alphabet: Vec<L>,
    delta: Vec<Vec<usize>>,
    initial: usize,
    accepting: Vec<bool>,
}

impl<L: Letter> Dfa<L> {
    pub fn new(
        mut alphabet: Vec<L>,
        delta: Vec<Vec<usize>>,
        initial: usize,
        accepting: Vec<bool>,
    ) -> Result<Self, AutomatonError> {
        alphabet.sort();
        alphabet.dedup();
        let n = delta.len();
        if n == 0 || initial >= n || accepting.len() != n {
            return Err(AutomatonError::Malformed("state bookkeeping out of range".into()));
        }
        for row in &delta {
            if row.len() != alphabet.len() || row.iter().any(|&q| q >= n) {
                return Err(AutomatonError::Malformed("transition table not total".into()));
            }
        }
        Ok(Dfa { alphabet, delta, initial, accepting })
    }

    /// The automaton of the empty language.
    pub fn empty_language(alphabet: Vec<L>) -> Self {
        let k = {
            let mut a = alphabet.clone();
            a.sort();
            a.dedup();
            a.len()
        };
        Dfa::new(alphabet, vec![vec![0; k]], 0, vec![false]).expect("one-state automaton")
    }

    /// The automaton accepting every word.
    pub fn all_words(alphabet: Vec<L>) -> Self {
        let mut d = Dfa::empty_language(alphabet);
        d.accepting[0] = true;
        d
    }

    pub fn alphabet(&self) -> &[L] {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn step(&self, q: usize, letter_idx: usize) -> usize {
        self.delta[q][letter_idx]
    }

    pub fn letter_index(&self, l: &L) -> Option<usize> {
        self.alphabet.binary_search(l).ok()
    }

    pub fn accepts(&self, word: &[L]) -> bool {
        let mut q = self.initial;
        for l in word {
            match self.letter_index(l) {
                Some(i) => q = self.delta[q][i],
                None => return false,
            }
        }
        self.accepting[q]
    }

    pub fn complement(&self) -> Dfa<L> {
        let mut d = self.clone();
        for b in &mut d.accepting {
            *b = !*b;
        }
        d
    }

    fn product(&self, other: &Dfa<L>, keep: impl Fn(bool, bool) -> bool) -> Result<Dfa<L>, AutomatonError> {
        if self.alphabet != other.alphabet {
            return Err(AutomatonError::AlphabetMismatch);
        }
        let k = self.alphabet.len();
        let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut order: Vec<(usize, usize)> = Vec::new();
        let mut queue = VecDeque::new();
        index.insert((self.initial, other.initial), 0);
        order.push((self.initial, other.initial));
        queue.push_back((self.initial, other.initial));
        let mut delta: Vec<Vec<usize>> = Vec::new();
        while let Some((p, q)) = queue.pop_front() {
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let t = (self.delta[p][a], other.delta[q][a]);
                let id = *index.entry(t).or_insert_with(|| {
                    order.push(t);
                    queue.push_back(t);
                    order.len() - 1
                });
                row.push(id);
            }
            delta.push(row);
        }
        let accepting = order.iter().map(|&(p, q)| keep(self.accepting[p], other.accepting[q])).collect();
        Dfa::new(self.alphabet.clone(), delta, 0, accepting)
    }

    pub fn intersection(&self, other: &Dfa<L>) -> Result<Dfa<L>, AutomatonError> {
        self.product(other, |a, b| a && b)
    }

    pub fn union(&self, other: &Dfa<L>) -> Result<Dfa<L>, AutomatonError> {
        self.product(other, |a, b| a || b)
    }

    pub fn difference(&self, other: &Dfa<L>) -> Result<Dfa<L>, AutomatonError> {
        self.product(other, |a, b| a && !b)
    }

    pub fn is_empty_language(&self) -> bool {
        let mut seen = vec![false; self.state_count()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(q) = stack.pop() {
            if self.accepting[q] {
                return false;
            }
            for &t in &self.delta[q] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        true
    }

    pub fn same_language(&self, other: &Dfa<L>) -> Result<bool, AutomatonError> {
        Ok(self.difference(other)?.is_empty_language() && other.difference(self)?.is_empty_language())
    }

    /// Canonical minimal automaton: unreachable states dropped, Moore
    /// refinement, states renumbered by breadth-first search in letter order,
    /// so equal languages yield identical tables.
    pub fn minimize(&self) -> Dfa<L> {
        let k = self.alphabet.len();
        // reachable restriction
        let mut map = vec![usize::MAX; self.state_count()];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([self.initial]);
        map[self.initial] = 0;
        order.push(self.initial);
        while let Some(q) = queue.pop_front() {
            for &t in &self.delta[q] {
                if map[t] == usize::MAX {
                    map[t] = order.len();
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        let n = order.len();
        let delta: Vec<Vec<usize>> = order.iter().map(|&q| self.delta[q].iter().map(|&t| map[t]).collect()).collect();
        let accepting: Vec<bool> = order.iter().map(|&q| self.accepting[q]).collect();

        // Moore partition refinement
        let mut class: Vec<usize> = accepting.iter().map(|&b| usize::from(b)).collect();
        loop {
            let mut sig_index: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
            let mut next = vec![0usize; n];
            for q in 0..n {
                let sig: (usize, Vec<usize>) = (class[q], (0..k).map(|a| class[delta[q][a]]).collect());
                let c = sig_index.len();
                next[q] = *sig_index.entry(sig).or_insert(c);
            }
            if next == class {
                break;
            }
            class = next;
        }

        // canonical renumbering of classes by BFS from the initial class
        let class_count = class.iter().max().map_or(0, |&m| m + 1);
        let mut repr = vec![usize::MAX; class_count];
        for q in 0..n {
            if repr[class[q]] == usize::MAX {
                repr[class[q]] = q;
            }
        }
        let mut canon = vec![usize::MAX; class_count];
        let mut corder = Vec::new();
        let start = class[0];
        canon[start] = 0;
        corder.push(start);
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            let q = repr[c];
            for a in 0..k {
                let tc = class[delta[q][a]];
                if canon[tc] == usize::MAX {
                    canon[tc] = corder.len();
                    corder.push(tc);
                    queue.push_back(tc);
                }
            }
        }
        let mdelta: Vec<Vec<usize>> = corder
            .iter()
            .map(|&c| {
                let q = repr[c];
                (0..k).map(|a| canon[class[delta[q][a]]]).collect()
            })
            .collect();
        let maccept: Vec<bool> = corder.iter().map(|&c| accepting[repr[c]]).collect();
        Dfa { alphabet: self.alphabet.clone(), delta: mdelta, initial: 0, accepting: maccept }
    }

    /// Number of accepted words of each length 0..=n.
    pub fn count_words_up_to(&self, n: usize) -> Vec<BigUint> {
        let mut vec = vec![BigUint::zero(); self.state_count()];
        vec[self.initial] = BigUint::one();
        let mut out = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            let total = vec
                .iter()
                .zip(&self.accepting)
                .filter(|&(_, &acc)| acc)
                .map(|(c, _)| c)
                .sum::<BigUint>();
            out.push(total);
            let mut next = vec![BigUint::zero(); self.state_count()];
            for q in 0..self.state_count() {
                if vec[q].is_zero() {
                    continue;
                }
                for a in 0..self.alphabet.len() {
                    let t = self.delta[q][a];
                    let add = vec[q].clone();
                    next[t] += add;
                }
            }
            vec = next;
        }
        out
    }

    pub fn count_words(&self, n: usize) -> BigUint {
        self.count_words_up_to(n).pop().unwrap()
    }

    /// All accepted words of length exactly n, lexicographically.
    pub fn words_of_length(&self, n: usize) -> Vec<Vec<L>> {
        let mut out = Vec::new();
        let mut word: Vec<usize> = Vec::new();
        // count suffixes to prune dead branches
        let mut alive = vec![vec![false; self.state_count()]; n + 1];
        for q in 0..self.state_count() {
            alive[0][q] = self.accepting[q];
        }
        for d in 1..=n {
            for q in 0..self.state_count() {
                alive[d][q] = self.delta[q].iter().any(|&t| alive[d - 1][t]);
            }
        }
        fn rec<L: Letter>(
            dfa: &Dfa<L>,
            q: usize,
            n: usize,
            alive: &[Vec<bool>],
            word: &mut Vec<usize>,
            out: &mut Vec<Vec<L>>,
        ) {
            if word.len() == n {
                out.push(word.iter().map(|&a| dfa.alphabet[a].clone()).collect());
                return;
            }
            let left = n - word.len();
            for a in 0..dfa.alphabet.len() {
                let t = dfa.delta[q][a];
                if alive[left - 1][t] {
                    word.push(a);
                    rec(dfa, t, n, alive, word, out);
                    word.pop();
                }
            }
        }
        if alive[n][self.initial] {
            rec(self, self.initial, n, &alive, &mut word, &mut out);
        }
        out
    }

    /// Rename letters one-for-one without touching the language structure.
    /// The mapping must be injective.
    pub fn rename_letters<M: Letter>(&self, f: impl Fn(&L) -> M) -> Result<Dfa<M>, AutomatonError> {
        let mapped: Vec<M> = self.alphabet.iter().map(&f).collect();
        let mut sorted: Vec<(M, usize)> = mapped.iter().cloned().zip(0..).collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(AutomatonError::Malformed("letter renaming not injective".into()));
        }
        // old letter index -> new letter index
        let mut pos = vec![0usize; mapped.len()];
        for (new_idx, &(_, old_idx)) in sorted.iter().enumerate() {
            pos[old_idx] = new_idx;
        }
        let delta = self
            .delta
            .iter()
            .map(|row| {
                let mut new_row = vec![0usize; row.len()];
                for (old_idx, &t) in row.iter().enumerate() {
                    new_row[pos[old_idx]] = t;
                }
                new_row
            })
            .collect();
        Dfa::new(sorted.into_iter().map(|(m, _)| m).collect(), delta, self.initial, self.accepting.clone())
    }
}

impl<L: Letter> Debug for Dfa<L> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Dfa{{ {} states, alphabet {:?}, initial {}, accepting {:?} }}",
            self.state_count(),
            self.alphabet,
            self.initial,
            (0..self.state_count()).filter(|&q| self.accepting[q]).collect::<Vec<_>>()
        )
    }
}
