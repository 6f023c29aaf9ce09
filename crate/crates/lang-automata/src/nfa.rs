use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::dfa::{Dfa, Letter};
use crate::AutomatonError;

/// Nondeterministic automaton with epsilon moves; exists to be determinized.
#[derive(Clone, Debug)]
pub struct Nfa<L: Letter> {
    pub alphabet: Vec<L>,
    /// delta[state][letter index] = successor set
    pub delta: Vec<Vec<BTreeSet<usize>>>,
    pub eps: Vec<BTreeSet<usize>>,
    pub initial: BTreeSet<usize>,
    pub accepting: Vec<bool>,
}

impl<L: Letter> Nfa<L> {
    pub fn from_dfa(dfa: &Dfa<L>) -> Nfa<L> {
        let k = dfa.alphabet().len();
        let n = dfa.state_count();
        let mut delta = vec![vec![BTreeSet::new(); k]; n];
        for (q, row) in delta.iter_mut().enumerate() {
            for (a, set) in row.iter_mut().enumerate() {
                set.insert(dfa.step(q, a));
            }
        }
        Nfa {
            alphabet: dfa.alphabet().to_vec(),
            delta,
            eps: vec![BTreeSet::new(); n],
            initial: BTreeSet::from([dfa.initial()]),
            accepting: (0..n).map(|q| dfa.is_accepting(q)).collect(),
        }
    }

    fn eps_closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = set.clone();
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &t in &self.eps[q] {
                if out.insert(t) {
                    stack.push(t);
                }
            }
        }
        out
    }

    /// Subset construction; the result is total (the empty set is the sink).
    pub fn determinize(&self) -> Result<Dfa<L>, AutomatonError> {
        let k = self.alphabet.len();
        let start = self.eps_closure(&self.initial);
        let mut index: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
        let mut order: Vec<BTreeSet<usize>> = Vec::new();
        index.insert(start.clone(), 0);
        order.push(start.clone());
        let mut queue = VecDeque::from([start]);
        let mut delta: Vec<Vec<usize>> = Vec::new();
        while let Some(set) = queue.pop_front() {
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let mut next = BTreeSet::new();
                for &q in &set {
                    next.extend(self.delta[q][a].iter().copied());
                }
                let next = self.eps_closure(&next);
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    order.push(next.clone());
                    queue.push_back(next);
                    order.len() - 1
                });
                row.push(id);
            }
            delta.push(row);
        }
        let accepting = order.iter().map(|set| set.iter().any(|&q| self.accepting[q])).collect();
        Dfa::new(self.alphabet.clone(), delta, 0, accepting)
    }
}

/// Image of a regular language under a letter-to-letter homomorphism
/// (erasing images are excluded by construction: every letter maps to a
/// letter of the target alphabet).
pub fn hom_image<L: Letter, M: Letter>(dfa: &Dfa<L>, h: impl Fn(&L) -> M) -> Result<Dfa<M>, AutomatonError> {
    let mut target: Vec<M> = dfa.alphabet().iter().map(&h).collect();
    target.sort();
    target.dedup();
    let k = target.len();
    let n = dfa.state_count();
    let mut delta = vec![vec![BTreeSet::new(); k]; n];
    for q in 0..n {
        for (a, l) in dfa.alphabet().iter().enumerate() {
            let m = h(l);
            let mi = target.binary_search(&m).expect("image letter present");
            delta[q][mi].insert(dfa.step(q, a));
        }
    }
    let nfa = Nfa {
        alphabet: target,
        delta,
        eps: vec![BTreeSet::new(); n],
        initial: BTreeSet::from([dfa.initial()]),
        accepting: (0..n).map(|q| dfa.is_accepting(q)).collect(),
    };
    Ok(nfa.determinize()?.minimize())
}

/// Inverse image: the words over `source` whose letterwise image lies in the
/// language of `dfa`.
pub fn inverse_hom<L: Letter, M: Letter>(
    dfa: &Dfa<M>,
    source: Vec<L>,
    h: impl Fn(&L) -> M,
) -> Result<Dfa<L>, AutomatonError> {
    let mut source = source;
    source.sort();
    source.dedup();
    let mut delta = vec![Vec::with_capacity(source.len()); dfa.state_count()];
    for (q, row) in delta.iter_mut().enumerate() {
        for l in &source {
            let m = h(l);
            let mi = dfa
                .letter_index(&m)
                .ok_or_else(|| AutomatonError::Malformed(format!("image letter {m:?} not in alphabet")))?;
            row.push(dfa.step(q, mi));
        }
    }
    let accepting = (0..dfa.state_count()).map(|q| dfa.is_accepting(q)).collect();
    Dfa::new(source, delta, dfa.initial(), accepting)
}

/// The subword closure: all words obtained from accepted words by deleting
/// letters.  Letter deletion becomes an epsilon move along every transition.
pub fn subword_closure<L: Letter>(dfa: &Dfa<L>) -> Result<Dfa<L>, AutomatonError> {
    let mut nfa = Nfa::from_dfa(dfa);
    for q in 0..dfa.state_count() {
        for a in 0..dfa.alphabet().len() {
            let t = dfa.step(q, a);
            if t != q {
                nfa.eps[q].insert(t);
            }
        }
    }
    Ok(nfa.determinize()?.minimize())
}
