use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use class_engine::{
    framework_properties, simple_frameworks_over, ClassSpec, Evaluator, ProfileCatalogue, Property, PropertyFamily,
    PropertySet,
};
use perm_core::{simple_permutations_up_to, Permutation};

use crate::series::Series;
use crate::GfError;

/// One equation per property set Q: f_Q is the sum over simple frameworks
/// with skeleton in the class and combined properties Q of the product of
/// the cell variables, plus the seed f_{Q•} = x.
#[derive(Clone, Debug)]
pub struct AlgebraicSystem {
    pub family: PropertyFamily,
    pub variables: Vec<PropertySet>,
    pub seed: usize,
    /// equations[v] = monomials; a monomial is the list of cell variable
    /// indices of one framework
    pub equations: Vec<Vec<Vec<usize>>>,
    /// how far the witness catalogue reaches; coefficients beyond
    /// catalogue_len + 1 may miss frameworks whose cells have only large
    /// witnesses
    pub catalogue_len: usize,
}

impl AlgebraicSystem {
    pub fn variable_index(&self, q: &PropertySet) -> Option<usize> {
        self.variables.iter().position(|v| v == q)
    }

    pub fn render_equations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (v, monomials) in self.equations.iter().enumerate() {
            let name = |i: usize| format!("f{}", self.variables[i].0);
            let mut rhs: Vec<String> = Vec::new();
            if v == self.seed {
                rhs.push("x".into());
            }
            for m in monomials {
                rhs.push(m.iter().map(|&i| name(i)).collect::<Vec<_>>().join("*"));
            }
            if rhs.is_empty() {
                rhs.push("0".into());
            }
            out.push(format!("{} = {}", name(v), rhs.join(" + ")));
        }
        out
    }
}

/// Build the algebraic system for the substitution closure of a class with
/// finitely many simple permutations.  The family is extended by Av(21) and
/// Av(12), which pins the profile of the point permutation; a simple member
/// found at the search bound aborts, since longer simples could be missing.
pub fn closure_system(
    c: &ClassSpec,
    fam: &PropertyFamily,
    bound: usize,
    catalogue_len: usize,
) -> Result<AlgebraicSystem, GfError> {
    let family = fam.clone().with_monotone();
    let mut eval = Evaluator::new(c);
    let mut skeletons: Vec<Permutation> = Vec::new();
    for level in simple_permutations_up_to(bound) {
        for q in level {
            if eval.member(&q) {
                if q.len() == bound {
                    return Err(GfError::SimplesAtBound { length: bound });
                }
                skeletons.push(q);
            }
        }
    }
    let cat = ProfileCatalogue::build(&family, catalogue_len);
    let frameworks = simple_frameworks_over(&skeletons, &family, &cat);

    let mut variables: Vec<PropertySet> = cat.realizable_profiles();
    let q_bullet = family.q_bullet();
    if !variables.contains(&q_bullet) {
        variables.push(q_bullet);
    }
    let mut index: BTreeMap<PropertySet, usize> =index_map(&variables);
    let mut equations: Vec<Vec<Vec<usize>>> = vec![Vec::new(); variables.len()];
    for f in &frameworks {
        let q = framework_properties(f, &family, &cat)?;
        let lhs = match index.get(&q) {
            Some(&i) => i,
            None => {
                variables.push(q);
                equations.push(Vec::new());
                index.insert(q, variables.len() - 1);
                variables.len() - 1
            }
        };
        let monomial: Vec<usize> = f.cells.iter().map(|cell| index[cell]).collect();
        equations[lhs].push(monomial);
    }
    let seed = index[&q_bullet];
    assert!(equations[seed].is_empty(), "no framework describes the point permutation");
    Ok(AlgebraicSystem { family, variables, seed, equations, catalogue_len })
}

fn index_map(variables: &[PropertySet]) -> BTreeMap<PropertySet, usize> {
    variables.iter().enumerate().map(|(i, v)| (*v, i)).collect()
}

/// Coefficientwise fixed point: substitute starting from zero (except the
/// seed x) until coefficients 1..=n_max stabilize.  Well-foundedness makes
/// every round monotone; failure to stabilize within n_max + 2 rounds is a
/// construction bug surfaced as an error.
pub fn solve_series(sys: &AlgebraicSystem, n_max: usize) -> Result<Vec<Series>, GfError> {
    let v = sys.variables.len();
    let mut cur: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n_max + 1]; v];
    let mut seed = vec![BigInt::zero(); n_max + 1];
    if n_max >= 1 {
        seed[1] = BigInt::from(1);
    }
    for round in 0..=n_max + 2 {
        let mut next: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n_max + 1]; v];
        next[sys.seed] = seed.clone();
        for (lhs, monomials) in sys.equations.iter().enumerate() {
            for m in monomials {
                // convolution of the cell series, truncated
                let mut acc = vec![BigInt::zero(); n_max + 1];
                acc[0] = BigInt::from(1);
                for &cell in m {
                    let mut conv = vec![BigInt::zero(); n_max + 1];
                    for i in 0..=n_max {
                        if acc[i].is_zero() {
                            continue;
                        }
                        for j in 0..=n_max - i {
                            if !cur[cell][j].is_zero() {
                                let t = &acc[i] * &cur[cell][j];
                                conv[i + j] += t;
                            }
                        }
                    }
                    acc = conv;
                }
                for i in 0..=n_max {
                    let t = std::mem::take(&mut acc[i]);
                    next[lhs][i] += t;
                }
            }
        }
        // monotone by well-foundedness
        for q in 0..v {
            for n in 0..=n_max {
                assert!(next[q][n] >= cur[q][n], "solve_series regressed");
            }
        }
        if next == cur {
            return Ok(cur.into_iter().map(Series::new).collect());
        }
        cur = next;
        if round == n_max + 2 {
            break;
        }
    }
    Err(GfError::IllFoundedSystem)
}

/// The counting series of the closure members satisfying at least the given
/// avoidance properties: the sum of f_Q over all Q containing them, with the
/// conventional empty-permutation term zero.
pub fn class_series(
    sys: &AlgebraicSystem,
    solution: &[Series],
    basis: &[Permutation],
    n_max: usize,
) -> Result<Series, GfError> {
    let mut required = PropertySet::EMPTY;
    for beta in basis {
        let idx = sys
            .family
            .index_of(&Property::Avoids(beta.clone()))
            .ok_or_else(|| GfError::MissingVariable(format!("Av({beta})")))?;
        required = required.with(idx);
    }
    let mut total = vec![BigInt::zero(); n_max + 1];
    for (v, q) in sys.variables.iter().enumerate() {
        if required.is_subset_of(q) {
            for n in 0..=n_max {
                total[n] += solution[v].coeff(n);
            }
        }
    }
    Ok(Series::new(total))
}
