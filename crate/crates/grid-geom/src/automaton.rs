use std::collections::BTreeMap;

use lang_automata::{learn_subword_closed, Dfa};
use perm_core::Permutation;

use crate::decode::decode;
use crate::member::{geom_class_members, lexmin_word};
use crate::{CellLetter, GridError, GridMatrix};

/// How far an encoding automaton is backed by brute force.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certification {
    /// Word sets match the membership enumeration at every length up to the
    /// bound; beyond it the language is extrapolated by state merging.
    Inferred { certified_len: usize },
    /// Exactly the certified words and nothing longer (acyclic automaton).
    BoundedTrie { certified_len: usize },
}

impl Certification {
    pub fn certified_len(&self) -> usize {
        match *self {
            Certification::Inferred { certified_len } | Certification::BoundedTrie { certified_len } => certified_len,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Certification::Inferred { .. } => "automaton-certified",
            Certification::BoundedTrie { .. } => "bounded-exact",
        }
    }
}

#[derive(Clone, Debug)]
pub struct NormalFormAutomaton {
    pub dfa: Dfa<CellLetter>,
    pub certification: Certification,
}

// ---------------------------------------------------------------------------
// prefix tree with level-order node numbering

struct Trie {
    children: Vec<BTreeMap<usize, usize>>,
    accept: Vec<bool>,
}

impl Trie {
    fn build(words: &[Vec<usize>], accept_empty: bool) -> Trie {
        let mut t = Trie { children: vec![BTreeMap::new()], accept: vec![accept_empty] };
        let max_len = words.iter().map(Vec::len).max().unwrap_or(0);
        for depth in 0..max_len {
            for w in words {
                if w.len() > depth {
                    let mut node = 0;
                    for &a in &w[..depth] {
                        node = t.children[node][&a];
                    }
                    let next = *w.get(depth).unwrap();
                    if !t.children[node].contains_key(&next) {
                        t.children.push(BTreeMap::new());
                        t.accept.push(false);
                        let id = t.children.len() - 1;
                        t.children[node].insert(next, id);
                    }
                    if w.len() == depth + 1 {
                        let id = t.children[node][&next];
                        t.accept[id] = true;
                    }
                }
            }
        }
        t
    }

    fn to_dfa(&self, alphabet: Vec<CellLetter>) -> Dfa<CellLetter> {
        let k = alphabet.len();
        let n = self.children.len();
        let dead = n;
        let mut delta = Vec::with_capacity(n + 1);
        for node in 0..n {
            let row: Vec<usize> = (0..k).map(|a| *self.children[node].get(&a).unwrap_or(&dead)).collect();
            delta.push(row);
        }
        delta.push(vec![dead; k]);
        let mut accepting = self.accept.clone();
        accepting.push(false);
        Dfa::new(alphabet, delta, 0, accepting).expect("trie automaton is well formed").minimize()
    }
}

// ---------------------------------------------------------------------------
// inference by suffix signatures
//
// The trie carries complete accept/reject labels for every word up to the
// horizon N.  Two prefixes are identified when their accepted suffix sets
// agree up to an evidence depth h; the quotient yields a candidate automaton
// whose transitions must agree across each class.  Scanning h from deep to
// shallow finds the finest consistent quotient; the caller still certifies
// the result word-for-word against the horizon.

fn node_depths(trie: &Trie) -> Vec<usize> {
    let mut depth = vec![0usize; trie.children.len()];
    for node in 0..trie.children.len() {
        for &c in trie.children[node].values() {
            depth[c] = depth[node] + 1;
        }
    }
    depth
}

/// Accepted suffixes of length ≤ h below `node`, sorted.
fn suffix_signature(trie: &Trie, node: usize, h: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    fn rec(trie: &Trie, node: usize, h: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if trie.accept[node] {
            out.push(path.clone());
        }
        if h == 0 {
            return;
        }
        for (&a, &c) in &trie.children[node] {
            path.push(a);
            rec(trie, c, h - 1, path, out);
            path.pop();
        }
    }
    rec(trie, node, h, &mut path, &mut out);
    out.sort();
    out
}

fn quotient_at_depth(trie: &Trie, alphabet: &[CellLetter], horizon: usize, h: usize) -> Option<Dfa<CellLetter>> {
    let depth = node_depths(trie);
    let d_max = horizon.checked_sub(h)?;
    let k = alphabet.len();
    let mut class_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut classes: BTreeMap<Vec<Vec<usize>>, usize> = BTreeMap::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for node in 0..trie.children.len() {
        if depth[node] > d_max {
            continue;
        }
        let sig = suffix_signature(trie, node, h);
        let id = *classes.entry(sig).or_insert_with(|| {
            members.push(Vec::new());
            members.len() - 1
        });
        class_of.insert(node, id);
        members[id].push(node);
    }
    // transitions read off nodes with a full view of their children; every
    // class needs at least one such witness and all witnesses must agree
    let dead = members.len();
    let mut delta: Vec<Vec<usize>> = Vec::with_capacity(members.len() + 1);
    for nodes in &members {
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let mut target: Option<usize> = None;
            let mut seen_witness = false;
            for &v in nodes {
                if depth[v] >= d_max {
                    continue;
                }
                seen_witness = true;
                let t = match trie.children[v].get(&a) {
                    Some(&c) => class_of[&c],
                    None => dead,
                };
                match target {
                    None => target = Some(t),
                    Some(prev) if prev != t => return None,
                    _ => {}
                }
            }
            if !seen_witness {
                return None;
            }
            row.push(target.expect("witness sets a target"));
        }
        delta.push(row);
    }
    delta.push(vec![dead; k]);
    let mut accepting: Vec<bool> = members.iter().map(|nodes| trie.accept[nodes[0]]).collect();
    accepting.push(false);
    let initial = class_of[&0];
    Dfa::new(alphabet.to_vec(), delta, initial, accepting).ok().map(|d| d.minimize())
}

// ---------------------------------------------------------------------------

fn letters_to_indices(alphabet: &[CellLetter], w: &[CellLetter]) -> Vec<usize> {
    w.iter().map(|l| alphabet.binary_search(l).expect("letter of the alphabet")).collect()
}

/// One encoding per member of Geom(M): the lexicographically least word of
/// each fiber of the decoding map, realised as a DFA.
///
/// Word sets are computed outright up to `cert_len` from the membership
/// search, then generalized by state merging; if the generalized automaton
/// fails to reproduce the exact word sets it is discarded for the acyclic
/// automaton of the words themselves, and the certification field says which
/// happened.  A count disagreement between fibers and members aborts instead.
pub fn normal_form_automaton(m: &GridMatrix, cert_len: usize) -> Result<NormalFormAutomaton, GridError> {
    let signed = m.ensure_signs()?;
    let mut alphabet = signed.nonzero_cells();
    alphabet.sort();
    let members = geom_class_members(&signed, cert_len);

    let mut words_by_len: Vec<Vec<Vec<usize>>> = Vec::with_capacity(cert_len + 1);
    for level in &members {
        let mut words = Vec::with_capacity(level.len());
        for q in level {
            let w = lexmin_word(&signed, q)?.expect("members have encodings");
            debug_assert_eq!(decode(&signed, &w)?.0, *q);
            words.push(letters_to_indices(&alphabet, &w));
        }
        words.sort();
        words.dedup();
        if words.len() != level.len() {
            return Err(GridError::CertificationFailed { length: words[0].len() });
        }
        words_by_len.push(words);
    }

    let all_words: Vec<Vec<usize>> = words_by_len.iter().flatten().cloned().collect();
    let trie = Trie::build(&all_words, true);

    let matches_sample = |candidate: &Dfa<CellLetter>| {
        words_by_len.iter().enumerate().all(|(n, level)| {
            let expect: Vec<Vec<CellLetter>> =
                level.iter().map(|w| w.iter().map(|&a| alphabet[a]).collect()).collect();
            candidate.words_of_length(n) == expect
        })
    };
    for h in (1..cert_len).rev() {
        if let Some(candidate) = quotient_at_depth(&trie, &alphabet, cert_len, h) {
            if matches_sample(&candidate) {
                return Ok(NormalFormAutomaton {
                    dfa: candidate,
                    certification: Certification::Inferred { certified_len: cert_len },
                });
            }
        }
    }
    Ok(NormalFormAutomaton {
        dfa: trie.to_dfa(alphabet),
        certification: Certification::BoundedTrie { certified_len: cert_len },
    })
}

/// The encoding language of Geom(M) ∩ Av(B): minimal forbidden subwords of
/// the avoidance oracle are learned up to `bound`, intersected with the
/// normal-form automaton, and the result is certified by count comparison
/// with direct enumeration up to `bound + 2`.
#[derive(Clone, Debug)]
pub struct SubclassLanguage {
    pub dfa: Dfa<CellLetter>,
    pub forbidden_subwords: Vec<Vec<CellLetter>>,
    /// Exact agreement with enumeration to `checked_len`; a false flag marks
    /// the result heuristic, never silently exact.
    pub certified: bool,
    pub checked_len: usize,
    pub normal_form_certification: Certification,
}

pub fn subclass_language(m: &GridMatrix, basis: &[Permutation], bound: usize) -> Result<SubclassLanguage, GridError> {
    let signed = m.ensure_signs()?;
    if let Some(beta) = basis.iter().find(|b| b.len() > bound) {
        return Err(GridError::BoundTooSmall { bound, needed: beta.len() });
    }
    let normal = normal_form_automaton(&signed, bound)?;
    let alphabet = normal.dfa.alphabet().to_vec();

    let mut oracle = |w: &[CellLetter]| {
        let (perm, _) = decode(&signed, w).expect("letters from the alphabet");
        basis.iter().all(|beta| perm.avoids(beta))
    };
    let (forbidden, avoid_dfa) = learn_subword_closed(&mut oracle, alphabet, bound)?;
    let dfa = normal.dfa.intersection(&avoid_dfa)?.minimize();

    // certify counts against direct enumeration, two lengths past the bound
    let checked_len = bound + 2;
    let members = geom_class_members(&signed, checked_len);
    let mut certified = true;
    for (n, level) in members.iter().enumerate() {
        let truth = level.iter().filter(|q| basis.iter().all(|b| q.avoids(b))).count();
        if dfa.count_words(n) != truth.into() {
            certified = false;
            break;
        }
    }
    Ok(SubclassLanguage {
        dfa,
        forbidden_subwords: forbidden,
        certified,
        checked_len,
        normal_form_certification: normal.certification,
    })
}

/// One encoding per simple permutation in Geom(M) of length at most `bound`:
/// an acyclic automaton over the finitely many certified words.
pub fn simple_encoding_language(m: &GridMatrix, bound: usize) -> Result<Dfa<CellLetter>, GridError> {
    let signed = m.ensure_signs()?;
    let mut alphabet = signed.nonzero_cells();
    alphabet.sort();
    let members = geom_class_members(&signed, bound);
    let mut words = Vec::new();
    for level in &members {
        for q in level {
            if q.is_simple() {
                let w = lexmin_word(&signed, q)?.expect("members have encodings");
                words.push(letters_to_indices(&alphabet, &w));
            }
        }
    }
    words.sort();
    words.dedup();
    let trie = Trie::build(&words, false);
    Ok(trie.to_dfa(alphabet))
}
