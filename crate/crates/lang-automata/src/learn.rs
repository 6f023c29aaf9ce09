use std::collections::BTreeMap;

use crate::dfa::{Dfa, Letter};
use crate::AutomatonError;

/// Is `v` a subword (subsequence) of `w`?
pub fn is_subword<L: Eq>(v: &[L], w: &[L]) -> bool {
    let mut it = w.iter();
    v.iter().all(|x| it.any(|y| y == x))
}

/// The words avoiding every forbidden word as a subword.  States track the
/// longest matched prefix of each forbidden word; completing any match is
/// fatal.
pub fn subword_avoidance_dfa<L: Letter>(alphabet: Vec<L>, forbidden: &[Vec<L>]) -> Result<Dfa<L>, AutomatonError> {
    let mut alphabet = alphabet;
    alphabet.sort();
    alphabet.dedup();
    if forbidden.iter().any(|f| f.is_empty()) {
        return Ok(Dfa::empty_language(alphabet));
    }
    let k = alphabet.len();
    let dead_sig = vec![usize::MAX];
    let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let start = vec![0usize; forbidden.len()];
    index.insert(start.clone(), 0);
    let mut order = vec![start];
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let cur = order[i].clone();
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let next = if cur == dead_sig {
                dead_sig.clone()
            } else {
                let mut n: Vec<usize> = cur
                    .iter()
                    .zip(forbidden)
                    .map(|(&p, f)| if f[p] == alphabet[a] { p + 1 } else { p })
                    .collect();
                if n.iter().zip(forbidden).any(|(&p, f)| p == f.len()) {
                    n = dead_sig.clone();
                }
                n
            };
            let id = *index.entry(next.clone()).or_insert_with(|| {
                order.push(next);
                order.len() - 1
            });
            row.push(id);
        }
        delta.push(row);
        i += 1;
    }
    let accepting = order.iter().map(|sig| *sig != dead_sig).collect();
    Ok(Dfa::new(alphabet, delta, 0, accepting)?.minimize())
}

/// Learn a subword-closed language from a membership oracle, up to `bound`.
///
/// Returns the subword-minimal rejected words of length at most `bound` and
/// the automaton avoiding them.  Words containing an already-found forbidden
/// word are never queried; each freshly found forbidden word is probed with
/// one-letter extensions, so an oracle that is not subword closed is caught
/// with a witness.
pub fn learn_subword_closed<L: Letter>(
    oracle: &mut dyn FnMut(&[L]) -> bool,
    alphabet: Vec<L>,
    bound: usize,
) -> Result<(Vec<Vec<L>>, Dfa<L>), AutomatonError> {
    let mut alphabet = alphabet;
    alphabet.sort();
    alphabet.dedup();
    let mut forbidden: Vec<Vec<L>> = Vec::new();

    // spot checks: supersets of a rejected word must also be rejected
    fn probe_supersets<L: Letter>(
        f: &[L],
        alphabet: &[L],
        oracle: &mut dyn FnMut(&[L]) -> bool,
    ) -> Result<(), AutomatonError> {
        let mut probes: Vec<Vec<L>> = Vec::new();
        for x in alphabet {
            let mut left = vec![x.clone()];
            left.extend_from_slice(f);
            probes.push(left);
            let mut right = f.to_vec();
            right.push(x.clone());
            probes.push(right);
            for y in alphabet {
                let mut both = vec![x.clone()];
                both.extend_from_slice(f);
                both.push(y.clone());
                probes.push(both);
                let mut pre = vec![x.clone(), y.clone()];
                pre.extend_from_slice(f);
                probes.push(pre);
                let mut post = f.to_vec();
                post.extend([x.clone(), y.clone()]);
                probes.push(post);
            }
        }
        for w in probes {
            if oracle(&w) {
                return Err(AutomatonError::NotSubwordClosed {
                    word: format!("{w:?}"),
                    subword: format!("{f:?}"),
                });
            }
        }
        Ok(())
    }

    if !oracle(&[]) {
        forbidden.push(Vec::new());
        probe_supersets(&[], &alphabet, oracle)?;
        let dfa = subword_avoidance_dfa(alphabet, &forbidden)?;
        return Ok((forbidden, dfa));
    }

    let mut level: Vec<Vec<L>> = vec![Vec::new()];
    for _ in 1..=bound {
        let mut next: Vec<Vec<L>> = Vec::new();
        for w in &level {
            'letters: for a in &alphabet {
                let mut cand = w.clone();
                cand.push(a.clone());
                // the new letter may complete a forbidden subword
                for f in &forbidden {
                    if is_subword(f, &cand) {
                        continue 'letters;
                    }
                }
                if oracle(&cand) {
                    next.push(cand);
                } else {
                    // minimal: every one-letter deletion was accepted at the
                    // previous level
                    forbidden.push(cand.clone());
                    probe_supersets(&cand, &alphabet, oracle)?;
                }
            }
        }
        // duplicates arise when distinct parents extend to the same word
        next.sort();
        next.dedup();
        level = next;
        if level.is_empty() {
            break;
        }
    }
    forbidden.sort_by(|a, b| (a.len(), &a[..]).cmp(&(b.len(), &b[..])));
    forbidden.dedup();
    let dfa = subword_avoidance_dfa(alphabet, &forbidden)?;
    Ok((forbidden, dfa))
}
