//! Plain-text exchange format for automata, version 1.
//!
//! ```text
//! automaton v1
//! alphabet: a b
//! states: 2
//! initial: 0
//! accepting: 1
//! 0 a 1
//! 0 b 0
//! 1 a 1
//! 1 b 1
//! ```
//!
//! Every state/letter pair appears exactly once; letters are arbitrary
//! whitespace-free tokens.

use crate::dfa::Dfa;
use crate::AutomatonError;

pub fn serialize(dfa: &Dfa<String>) -> String {
    let mut out = String::from("automaton v1\n");
    out.push_str(&format!("alphabet: {}\n", dfa.alphabet().join(" ")));
    out.push_str(&format!("states: {}\n", dfa.state_count()));
    out.push_str(&format!("initial: {}\n", dfa.initial()));
    let acc: Vec<String> = (0..dfa.state_count())
        .filter(|&q| dfa.is_accepting(q))
        .map(|q| q.to_string())
        .collect();
    out.push_str(&format!("accepting: {}\n", acc.join(" ")));
    for q in 0..dfa.state_count() {
        for (i, l) in dfa.alphabet().iter().enumerate() {
            out.push_str(&format!("{q} {l} {}\n", dfa.step(q, i)));
        }
    }
    out
}

pub fn parse(text: &str) -> Result<Dfa<String>, AutomatonError> {
    let bad = |line: usize, msg: &str| AutomatonError::Malformed(format!("line {}: {msg}", line + 1));
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());

    let (i, header) = lines.next().ok_or_else(|| bad(0, "empty input"))?;
    if header.trim() != "automaton v1" {
        return Err(bad(i, "expected header `automaton v1`"));
    }
    let mut field = |name: &str| -> Result<(usize, String), AutomatonError> {
        let (i, line) = lines.next().ok_or_else(|| bad(0, "truncated input"))?;
        let rest = line
            .trim()
            .strip_prefix(name)
            .ok_or_else(|| bad(i, &format!("expected `{name}`")))?;
        Ok((i, rest.trim().to_string()))
    };
    let (_, alpha) = field("alphabet:")?;
    let alphabet: Vec<String> = alpha.split_whitespace().map(str::to_string).collect();
    let (i, states) = field("states:")?;
    let n: usize = states.parse().map_err(|_| bad(i, "bad state count"))?;
    let (i, init) = field("initial:")?;
    let initial: usize = init.parse().map_err(|_| bad(i, "bad initial state"))?;
    let (i, acc) = field("accepting:")?;
    let mut accepting = vec![false; n];
    for tok in acc.split_whitespace() {
        let q: usize = tok.parse().map_err(|_| bad(i, "bad accepting state"))?;
        if q >= n {
            return Err(bad(i, "accepting state out of range"));
        }
        accepting[q] = true;
    }

    let mut sorted = alphabet.clone();
    sorted.sort();
    sorted.dedup();
    let mut delta = vec![vec![usize::MAX; sorted.len()]; n];
    for (i, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(bad(i, "expected `state letter state`"));
        }
        let q: usize = toks[0].parse().map_err(|_| bad(i, "bad source state"))?;
        let a = sorted
            .binary_search(&toks[1].to_string())
            .map_err(|_| bad(i, "unknown letter"))?;
        let t: usize = toks[2].parse().map_err(|_| bad(i, "bad target state"))?;
        if q >= n || t >= n {
            return Err(bad(i, "state out of range"));
        }
        if delta[q][a] != usize::MAX {
            return Err(bad(i, "duplicate transition"));
        }
        delta[q][a] = t;
    }
    if delta.iter().any(|row| row.iter().any(|&t| t == usize::MAX)) {
        return Err(AutomatonError::Malformed("transition table not total".into()));
    }
    Dfa::new(sorted, delta, initial, accepting)
}
