use std::collections::HashMap;
use std::fmt;

use grid_geom::{geom_member, GridMatrix};
use perm_core::Permutation;

use crate::profile::u_profile_with;
use crate::ClassError;

/// An expression denoting a permutation class.  Every leaf is downward
/// closed and every node preserves downward closure.
#[derive(Clone, Debug)]
pub enum ClassSpec {
    /// Av(B) for a finite basis; the empty basis denotes all permutations.
    Avoid(Vec<Permutation>),
    /// The downward closure of a finite generator set.
    ExplicitDownset(Vec<Permutation>),
    /// A geometric grid class.
    Geom(GridMatrix),
    Intersection(Box<ClassSpec>, Box<ClassSpec>),
    Union(Box<ClassSpec>, Box<ClassSpec>),
    /// The substitution closure ⟨C⟩.
    SubstClosure(Box<ClassSpec>),
    /// C[U]: inflations of the first class by the second.
    Inflation(Box<ClassSpec>, Box<ClassSpec>),
    /// C^[d]: the d-th iterated inflation, with C^[0] the point class.
    IteratedInflation(Box<ClassSpec>, usize),
}

impl ClassSpec {
    pub fn avoid(basis: &[&str]) -> ClassSpec {
        ClassSpec::Avoid(basis.iter().map(|s| s.parse().expect("permutation literal")).collect())
    }

    pub fn downset(gens: &[&str]) -> ClassSpec {
        ClassSpec::ExplicitDownset(gens.iter().map(|s| s.parse().expect("permutation literal")).collect())
    }

    pub fn universe() -> ClassSpec {
        ClassSpec::Avoid(Vec::new())
    }

    /// Membership of a single permutation.  For repeated queries against the
    /// same spec use [`Evaluator`], which caches across calls.
    pub fn member(&self, perm: &Permutation) -> bool {
        Evaluator::new(self).member(perm)
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(perms: &[Permutation]) -> String {
            perms.iter().map(Permutation::to_string).collect::<Vec<_>>().join(",")
        }
        match self {
            ClassSpec::Avoid(b) => write!(f, "avoid({})", list(b)),
            ClassSpec::ExplicitDownset(g) => write!(f, "downset({})", list(g)),
            ClassSpec::Geom(_) => write!(f, "geom(...)"),
            ClassSpec::Intersection(a, b) => write!(f, "intersect({a},{b})"),
            ClassSpec::Union(a, b) => write!(f, "union({a},{b})"),
            ClassSpec::SubstClosure(c) => write!(f, "closure({c})"),
            ClassSpec::Inflation(c, u) => write!(f, "inflate({c},{u})"),
            ClassSpec::IteratedInflation(c, d) => write!(f, "iterate({c},{d})"),
        }
    }
}

// ---------------------------------------------------------------------------
// evaluation

enum Node {
    Avoid(Vec<Permutation>),
    Downset(Vec<Permutation>),
    Geom(GridMatrix),
    Inter(usize, usize),
    Union(usize, usize),
    Closure(usize),
    Inflate(usize, usize),
    /// The class {1} (with the empty permutation), the base of iterated
    /// inflation.
    Point,
}

/// A compiled class expression with one memo table per node.  Iterated
/// inflations are expanded into chains of plain inflations at compile time.
pub struct Evaluator {
    nodes: Vec<Node>,
    root: usize,
    cache: Vec<HashMap<Permutation, bool>>,
}

impl Evaluator {
    pub fn new(spec: &ClassSpec) -> Evaluator {
        let mut nodes = Vec::new();
        let root = compile(spec, &mut nodes);
        let cache = (0..nodes.len()).map(|_| HashMap::new()).collect();
        Evaluator { nodes, root, cache }
    }

    pub fn member(&mut self, perm: &Permutation) -> bool {
        self.member_at(self.root, perm)
    }

    fn member_at(&mut self, id: usize, perm: &Permutation) -> bool {
        if let Some(&hit) = self.cache[id].get(perm) {
            return hit;
        }
        let result = match &self.nodes[id] {
            Node::Avoid(basis) => basis.iter().all(|b| perm.avoids(b)),
            Node::Downset(gens) => perm.is_empty() || gens.iter().any(|g| g.contains(perm)),
            Node::Geom(m) => geom_member(m, perm),
            Node::Point => perm.len() <= 1,
            Node::Inter(a, b) => {
                let (a, b) = (*a, *b);
                self.member_at(a, perm) && self.member_at(b, perm)
            }
            Node::Union(a, b) => {
                let (a, b) = (*a, *b);
                self.member_at(a, perm) || self.member_at(b, perm)
            }
            Node::Closure(c) => {
                // every simple pattern must lie in the closed class
                let c = *c;
                perm.all_patterns()
                    .into_iter()
                    .filter(Permutation::is_simple)
                    .all(|sigma| self.member_at(c, &sigma))
            }
            Node::Inflate(c, u) => {
                let (c, u) = (*c, *u);
                if perm.is_empty() {
                    return true;
                }
                if self.member_at(u, &Permutation::one()) {
                    // the U-profile decides membership
                    let profile = u_profile_with(perm, &mut |q| self.member_at(u, q))
                        .expect("1 in U makes the profile total");
                    self.member_at(c, &profile)
                } else {
                    // degenerate U without the point: exhaustive decompositions
                    let mut found = false;
                    let decomps = crate::profile::u_decompositions_with(perm, &mut |q| self.member_at(u, q));
                    for d in decomps {
                        if self.member_at(c, &d.skeleton) {
                            found = true;
                            break;
                        }
                    }
                    found
                }
            }
        };
        self.cache[id].insert(perm.clone(), result);
        result
    }
}

fn compile(spec: &ClassSpec, nodes: &mut Vec<Node>) -> usize {
    let node = match spec {
        ClassSpec::Avoid(b) => Node::Avoid(b.clone()),
        ClassSpec::ExplicitDownset(g) => Node::Downset(g.clone()),
        ClassSpec::Geom(m) => Node::Geom(m.clone()),
        ClassSpec::Intersection(a, b) => {
            let (a, b) = (compile(a, nodes), compile(b, nodes));
            Node::Inter(a, b)
        }
        ClassSpec::Union(a, b) => {
            let (a, b) = (compile(a, nodes), compile(b, nodes));
            Node::Union(a, b)
        }
        ClassSpec::SubstClosure(c) => {
            let c = compile(c, nodes);
            Node::Closure(c)
        }
        ClassSpec::Inflation(c, u) => {
            let (c, u) = (compile(c, nodes), compile(u, nodes));
            Node::Inflate(c, u)
        }
        ClassSpec::IteratedInflation(c, depth) => {
            let c = compile(c, nodes);
            let mut u = {
                nodes.push(Node::Point);
                nodes.len() - 1
            };
            for _ in 0..*depth {
                nodes.push(Node::Inflate(c, u));
                u = nodes.len() - 1;
            }
            return u;
        }
    };
    nodes.push(node);
    nodes.len() - 1
}

// ---------------------------------------------------------------------------
// the prefix expression language

/// Parse a class expression such as `closure(downset(12,21))` or
/// `inflate(geom(M.txt), avoid(12))`.  `load_matrix` resolves `geom(...)`
/// arguments (usually a path).  Errors carry exact byte positions.
pub fn parse_class_spec(
    input: &str,
    load_matrix: &mut dyn FnMut(&str) -> Result<GridMatrix, String>,
) -> Result<ClassSpec, ClassError> {
    let mut p = Parser { input, pos: 0, load_matrix };
    let spec = p.expr()?;
    p.skip_ws();
    if p.pos != input.len() {
        return Err(p.err("trailing input"));
    }
    Ok(spec)
}

struct Parser<'a> {
    input: &'a str,
    pos: usize,
    load_matrix: &'a mut dyn FnMut(&str) -> Result<GridMatrix, String>,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> ClassError {
        ClassError::ParseAt { pos: self.pos, message: message.to_string() }
    }

    fn rest(&self) -> &str {
        &self.input[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: char) -> Result<(), ClassError> {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len_utf8();
            Ok(())
        } else {
            Err(self.err(&format!("expected {tok:?}")))
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.rest().starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        self.input[start..self.pos].to_string()
    }

    fn perm_list(&mut self) -> Result<Vec<Permutation>, ClassError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            if self.rest().starts_with(')') {
                break;
            }
            let start = self.pos;
            while self.rest().starts_with(|c: char| c.is_ascii_digit() || c == ' ') {
                self.pos += 1;
            }
            let tok = self.input[start..self.pos].trim();
            if tok.is_empty() {
                return Err(self.err("expected a permutation"));
            }
            let perm: Permutation =
                tok.parse().map_err(|e| ClassError::ParseAt { pos: start, message: format!("{e}") })?;
            out.push(perm);
            self.skip_ws();
            if self.rest().starts_with(',') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<ClassSpec, ClassError> {
        self.skip_ws();
        let at = self.pos;
        let head = self.ident();
        match head.as_str() {
            "all" => return Ok(ClassSpec::universe()),
            "point" => return Ok(ClassSpec::ExplicitDownset(vec![Permutation::one()])),
            "" => return Err(self.err("expected a class expression")),
            _ => {}
        }
        self.eat('(')?;
        let spec = match head.as_str() {
            "avoid" | "av" => ClassSpec::Avoid(self.perm_list()?),
            "downset" => ClassSpec::ExplicitDownset(self.perm_list()?),
            "geom" => {
                self.skip_ws();
                let start = self.pos;
                while !self.rest().starts_with(')') && !self.rest().is_empty() {
                    self.pos += 1;
                }
                let arg = self.input[start..self.pos].trim().to_string();
                let m = (self.load_matrix)(&arg)
                    .map_err(|message| ClassError::ParseAt { pos: start, message })?;
                ClassSpec::Geom(m)
            }
            "closure" => ClassSpec::SubstClosure(Box::new(self.expr()?)),
            "inflate" => {
                let c = self.expr()?;
                self.eat(',')?;
                let u = self.expr()?;
                ClassSpec::Inflation(Box::new(c), Box::new(u))
            }
            "iterate" => {
                let c = self.expr()?;
                self.eat(',')?;
                self.skip_ws();
                let start = self.pos;
                while self.rest().starts_with(|c: char| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let depth: usize = self.input[start..self.pos]
                    .parse()
                    .map_err(|_| ClassError::ParseAt { pos: start, message: "expected a depth".into() })?;
                ClassSpec::IteratedInflation(Box::new(c), depth)
            }
            "intersect" => {
                let a = self.expr()?;
                self.eat(',')?;
                let b = self.expr()?;
                ClassSpec::Intersection(Box::new(a), Box::new(b))
            }
            "union" => {
                let a = self.expr()?;
                self.eat(',')?;
                let b = self.expr()?;
                ClassSpec::Union(Box::new(a), Box::new(b))
            }
            other => {
                return Err(ClassError::ParseAt { pos: at, message: format!("unknown constructor {other:?}") })
            }
        };
        self.eat(')')?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> ClassSpec {
        parse_class_spec(s, &mut |_| Err("no matrices here".into())).unwrap()
    }

    #[test]
    fn parses_the_expression_language() {
        let spec = parse("closure(downset(12, 21))");
        assert!(matches!(spec, ClassSpec::SubstClosure(_)));
        let spec = parse("inflate(avoid(21), avoid(12))");
        assert_eq!(spec.to_string(), "inflate(avoid(21),avoid(12))");
        parse("iterate(downset(12,21), 3)");
        parse("union(avoid(12), intersect(all, point))");
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_class_spec("closure(downst(12))", &mut |_| Err("x".into())).unwrap_err();
        match err {
            ClassError::ParseAt { pos, .. } => assert_eq!(pos, 8),
            other => panic!("{other}"),
        }
        let err = parse_class_spec("avoid(12) junk", &mut |_| Err("x".into())).unwrap_err();
        assert!(err.to_string().contains("trailing"));
    }

    #[test]
    fn membership_basics() {
        let av21 = ClassSpec::avoid(&["21"]);
        assert!(av21.member(&"12345".parse().unwrap()));
        assert!(!av21.member(&"132".parse().unwrap()));
        let down = ClassSpec::downset(&["12", "21"]);
        assert!(down.member(&"1".parse().unwrap()));
        assert!(!down.member(&"123".parse().unwrap()));
    }
}
