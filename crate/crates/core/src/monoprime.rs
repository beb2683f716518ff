//! Minimal primes and connectivity in codimension one for squarefree
//! monomial ideals. A prime generated by variables is a sorted list of
//! variable indices.

use std::collections::VecDeque;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::poly::{Monomial, MonomialOrder, Polynomial};

/// Minimal generators of a monomial ideal, from its reduced Gröbner basis.
fn monomial_generators<F: Field>(ideal: &Ideal<F>) -> Result<Vec<Monomial>> {
    let order = MonomialOrder::grevlex();
    ideal
        .basis()
        .iter()
        .map(|g| {
            if g.is_monomial() {
                Ok(g.leading_monomial(&order).expect("nonzero").clone())
            } else {
                Err(AlgebraError::NotMonomial(g.to_string()))
            }
        })
        .collect()
}

fn supports<F: Field>(ideal: &Ideal<F>) -> Result<Vec<Vec<usize>>> {
    let gens = monomial_generators(ideal)?;
    let ring = ideal.ring();
    gens.iter()
        .map(|m| {
            if m.is_squarefree() {
                Ok(m.support().collect())
            } else {
                Err(AlgebraError::NotSquarefree(ring.format_monomial(m)))
            }
        })
        .collect()
}

/// Minimal vertex covers of the hypergraph with the given edges.
pub fn minimal_vertex_covers(edges: &[Vec<usize>]) -> Vec<Vec<usize>> {
    fn branch(edges: &[Vec<usize>], chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(open) = edges.iter().find(|e| !e.iter().any(|v| chosen.contains(v))) else {
            let mut c = chosen.clone();
            c.sort_unstable();
            out.push(c);
            return;
        };
        for &v in open {
            chosen.push(v);
            branch(edges, chosen, out);
            chosen.pop();
        }
    }
    let mut all = Vec::new();
    branch(edges, &mut Vec::new(), &mut all);
    all.sort();
    all.dedup();
    let minimal: Vec<Vec<usize>> = all
        .iter()
        .filter(|c| {
            !all.iter()
                .any(|d| d.len() < c.len() && d.iter().all(|v| c.contains(v)))
        })
        .cloned()
        .collect();
    canonical(minimal)
}

fn canonical(mut primes: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    primes.sort();
    primes.dedup();
    primes
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialPrimeSet {
    pub var_names: Vec<String>,
    pub primes: Vec<Vec<usize>>,
}

impl MonomialPrimeSet {
    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn format_prime(&self, p: &[usize]) -> String {
        let names: Vec<&str> = p.iter().map(|&i| self.var_names[i].as_str()).collect();
        format!("({})", names.join(", "))
    }

    /// `dim k[x]/I`: the size of a largest independent set of variables.
    pub fn dimension(&self) -> usize {
        self.nvars()
            - self
                .primes
                .iter()
                .map(Vec::len)
                .min()
                .unwrap_or(self.nvars())
    }

    pub fn is_equidimensional(&self) -> bool {
        self.primes.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// `ht_G(Q) = dim G − dim G/Q` for the prime generated by `vars`.
    pub fn height_in_quotient(&self, vars: &[usize]) -> usize {
        let quotient_dim = self.nvars() - vars.len();
        self.dimension().saturating_sub(quotient_dim)
    }
}

pub fn minimal_primes_squarefree<F: Field>(ideal: &Ideal<F>) -> Result<MonomialPrimeSet> {
    let edges = supports(ideal)?;
    let primes = if edges.iter().any(Vec::is_empty) {
        Vec::new()
    } else {
        minimal_vertex_covers(&edges)
    };
    Ok(MonomialPrimeSet {
        var_names: ideal.ring().var_names().to_vec(),
        primes,
    })
}

/// Generated by squarefree parts of the minimal generators, minimalized.
pub fn monomial_radical<F: Field>(ideal: &Ideal<F>) -> Result<Ideal<F>> {
    let ring = ideal.ring();
    let gens: Vec<Polynomial<F>> = monomial_generators(ideal)?
        .iter()
        .map(|m| Polynomial::monomial(ring, m.squarefree_part()))
        .collect();
    Ideal::new(ring, gens)
}

pub fn is_reduced_monomial<F: Field>(ideal: &Ideal<F>) -> Result<bool> {
    Ok(monomial_generators(ideal)?
        .iter()
        .all(Monomial::is_squarefree))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connectivity {
    pub connected: bool,
    pub primes: MonomialPrimeSet,
    /// `(i, j, ht_G(p_i + p_j))` for every pair.
    pub edges: Vec<(usize, usize, usize)>,
    /// Indices of two primes in different components.
    pub witness: Option<(usize, usize)>,
    /// The height convention is exact for equidimensional quotients.
    pub equidimensional: bool,
    /// Verdict taken from a declared domain rather than computed.
    pub declared_domain: bool,
}

impl Connectivity {
    /// A domain has a single minimal prime.
    pub fn declared_domain(var_names: Vec<String>) -> Self {
        Connectivity {
            connected: true,
            primes: MonomialPrimeSet {
                var_names,
                primes: vec![Vec::new()],
            },
            edges: Vec::new(),
            witness: None,
            equidimensional: true,
            declared_domain: true,
        }
    }

    pub fn witness_names(&self) -> Option<(String, String)> {
        let (a, b) = self.witness?;
        Some((
            self.primes.format_prime(&self.primes.primes[a]),
            self.primes.format_prime(&self.primes.primes[b]),
        ))
    }
}

/// Whether the minimal primes can be chained with consecutive sums of height
/// at most one in `k[x]/I`.
pub fn connected_in_codim_one<F: Field>(ideal: &Ideal<F>) -> Result<Connectivity> {
    let primes = minimal_primes_squarefree(ideal)?;
    let l = primes.primes.len();
    let mut edges = Vec::new();
    let mut adjacent = vec![Vec::new(); l];
    for i in 0..l {
        for j in i + 1..l {
            let mut union = primes.primes[i].clone();
            union.extend(&primes.primes[j]);
            union.sort_unstable();
            union.dedup();
            let h = primes.height_in_quotient(&union);
            edges.push((i, j, h));
            if h <= 1 {
                adjacent[i].push(j);
                adjacent[j].push(i);
            }
        }
    }
    let mut seen = vec![false; l];
    let mut queue = VecDeque::new();
    if l > 0 {
        seen[0] = true;
        queue.push_back(0);
    }
    while let Some(v) = queue.pop_front() {
        for &w in &adjacent[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    let witness = seen.iter().position(|s| !s).map(|j| (0, j));
    Ok(Connectivity {
        connected: witness.is_none(),
        equidimensional: primes.is_equidimensional(),
        primes,
        edges,
        witness,
        declared_domain: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::parse_all;
    use crate::field::Rationals;
    use crate::poly::PolyRing;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn ideal(vars: &[&str], gens: &[&str]) -> Ideal<Rationals> {
        let r: Arc<PolyRing<Rationals>> = PolyRing::new(Rationals, vars.iter().copied());
        Ideal::new(&r, parse_all(&r, gens).unwrap()).unwrap()
    }

    fn named(set: &MonomialPrimeSet) -> Vec<String> {
        set.primes.iter().map(|p| set.format_prime(p)).collect()
    }

    /// Minimal primes by checking every variable subset.
    fn exhaustive(n: usize, edges: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let covers: Vec<u32> = (0u32..1 << n)
            .filter(|mask| {
                edges
                    .iter()
                    .all(|e| e.iter().any(|&v| mask & (1 << v) != 0))
            })
            .collect();
        let mut out: Vec<Vec<usize>> = covers
            .iter()
            .filter(|&&c| !covers.iter().any(|&d| d != c && d & c == d))
            .map(|&c| (0..n).filter(|&v| c & (1 << v) != 0).collect())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn minimal_prime_examples() {
        let p = minimal_primes_squarefree(&ideal(&["x", "y"], &["x*y"])).unwrap();
        assert_eq!(named(&p), ["(x)", "(y)"]);
        let p =
            minimal_primes_squarefree(&ideal(&["x", "y", "u", "v"], &["x*u", "x*v", "y*u", "y*v"]))
                .unwrap();
        assert_eq!(named(&p), ["(x, y)", "(u, v)"]);
        let p = minimal_primes_squarefree(&ideal(&["x", "y"], &["x"])).unwrap();
        assert_eq!(named(&p), ["(x)"]);
        assert!(matches!(
            minimal_primes_squarefree(&ideal(&["x", "y"], &["x^2"])),
            Err(AlgebraError::NotSquarefree(_))
        ));
    }

    #[test]
    fn radicals() {
        let i = ideal(&["x", "y"], &["x^2*y"]);
        assert_eq!(monomial_radical(&i).unwrap().gens()[0].to_string(), "x*y");
        assert!(!is_reduced_monomial(&i).unwrap());
        assert!(
            is_reduced_monomial(&ideal(&["x", "y", "u", "v"], &["x*u", "x*v", "y*u", "y*v"]))
                .unwrap()
        );
        assert!(is_reduced_monomial(&ideal(&["x", "y"], &[])).unwrap());
        assert!(matches!(
            is_reduced_monomial(&ideal(&["x", "y"], &["x + y"])),
            Err(AlgebraError::NotMonomial(_))
        ));
    }

    #[test]
    fn two_planes_meeting_at_a_point() {
        let c =
            connected_in_codim_one(&ideal(&["x", "y", "u", "v"], &["x*u", "x*v", "y*u", "y*v"]))
                .unwrap();
        assert!(!c.connected);
        assert_eq!(c.witness_names(), Some(("(x, y)".into(), "(u, v)".into())));
        assert_eq!(c.edges, vec![(0, 1, 2)]);
    }

    #[test]
    fn connected_examples() {
        let c = connected_in_codim_one(&ideal(&["x", "y", "z"], &["x*y*z"])).unwrap();
        assert!(c.connected);
        let c = connected_in_codim_one(&ideal(&["x", "y"], &["x"])).unwrap();
        assert!(c.connected && c.primes.primes.len() == 1);
        // two triangles sharing the edge {x2, x3}
        let c = connected_in_codim_one(&ideal(&["x1", "x2", "x3", "x4"], &["x1*x4"])).unwrap();
        assert!(c.connected);
        assert_eq!(c.edges, vec![(0, 1, 1)]);
    }

    proptest! {
        #[test]
        fn covers_match_exhaustive_search(
            n in 2usize..9,
            raw in prop::collection::vec(prop::collection::vec(0usize..8, 1..4), 0..6),
        ) {
            let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            let r: Arc<PolyRing<Rationals>> = PolyRing::new(Rationals, names.iter().map(String::as_str));
            let gens: Vec<Polynomial<Rationals>> = raw
                .iter()
                .map(|e| {
                    let mut exps = vec![0u32; n];
                    for &v in e {
                        exps[v % n] = 1;
                    }
                    Polynomial::monomial(&r, Monomial::new(&exps))
                })
                .collect();
            let i = Ideal::new(&r, gens).unwrap();
            let set = minimal_primes_squarefree(&i).unwrap();
            let edges: Vec<Vec<usize>> = monomial_generators(&i).unwrap().iter().map(|m| m.support().collect()).collect();
            prop_assert_eq!(&set.primes, &exhaustive(n, &edges));
            if set.is_equidimensional() {
                for p in &set.primes {
                    prop_assert_eq!(set.height_in_quotient(p), 0);
                }
            }
            let rad = monomial_radical(&i).unwrap();
            prop_assert!(monomial_radical(&rad).unwrap().equals(&rad).unwrap());
        }
    }
}
