//! Monomial-existence conditions for a generic degree-`d` surface in
//! `P(a0,a1,a2,a3)` to be a well-formed quasi-smooth orbifold with
//! `-K_X = O(k - d)`.
//!
//! Readings used for the quantifiers:
//! - (i) a pure power `x_j^m` counts as `x_j^m x_{k(j)}` with `k(j) = j`;
//! - (ii) exponents in `x_j^m x_k^p` may be zero; the alternative needs two
//!   monomials `x_j^{m1} x_k^{p1} x_l1`, `x_j^{m2} x_k^{p2} x_l2` with
//!   `l1 ≠ l2` outside `{j, k}`;
//! - (iv) as (ii)'s first clause, for every pair with `gcd(a_j, a_k) > 1`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{weighted_monomials, Monomial, WeightSystem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexWitness {
    pub j: usize,
    pub witness: Option<Monomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "monomials")]
pub enum PairWitness {
    Binary(Monomial),
    TwoMonomials(Monomial, Monomial),
    Missing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCheck {
    pub j: usize,
    pub k: usize,
    pub witness: PairWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition<T> {
    pub pass: bool,
    pub checks: Vec<T>,
}

impl<T> Condition<T> {
    fn from_checks(checks: Vec<T>, ok: impl Fn(&T) -> bool) -> Self {
        Condition {
            pass: checks.iter().all(ok),
            checks,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleCheck {
    pub pass: bool,
    pub failing: Vec<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FletcherReport {
    pub cond_i: Condition<IndexWitness>,
    pub cond_ii: Condition<PairCheck>,
    pub cond_iii: Condition<IndexWitness>,
    /// Only pairs with `gcd(a_j, a_k) > 1` are listed; empty means vacuous.
    pub cond_iv: Condition<PairCheck>,
    pub triple_coprime: TripleCheck,
}

impl FletcherReport {
    pub fn passes(&self) -> bool {
        self.cond_i.pass
            && self.cond_ii.pass
            && self.cond_iii.pass
            && self.cond_iv.pass
            && self.triple_coprime.pass
    }
}

pub fn fletcher_check(w: &WeightSystem) -> FletcherReport {
    fletcher_check_with(w, &weighted_monomials(w))
}

/// As [`fletcher_check`], against a precomputed monomial list.
pub fn fletcher_check_with(w: &WeightSystem, monomials: &[Monomial]) -> FletcherReport {
    let a = w.weights();

    let cond_i = (0..4)
        .map(|j| IndexWitness {
            j,
            witness: monomials
                .iter()
                .find(|m| m.exponent(j) >= 1 && m.total_exponent_except(&[j]) <= 1)
                .copied(),
        })
        .collect();

    let cond_ii = pairs()
        .map(|(j, k)| PairCheck {
            j,
            k,
            witness: pair_witness(monomials, j, k, true),
        })
        .collect();

    let cond_iii = (0..4)
        .map(|j| IndexWitness {
            j,
            witness: monomials.iter().find(|m| m.exponent(j) == 0).copied(),
        })
        .collect();

    let cond_iv = pairs()
        .filter(|&(j, k)| a[j].gcd(&a[k]) > 1)
        .map(|(j, k)| PairCheck {
            j,
            k,
            witness: pair_witness(monomials, j, k, false),
        })
        .collect();

    let failing = w.non_coprime_triples();
    let present = |c: &IndexWitness| c.witness.is_some();
    let found = |c: &PairCheck| c.witness != PairWitness::Missing;
    FletcherReport {
        cond_i: Condition::from_checks(cond_i, present),
        cond_ii: Condition::from_checks(cond_ii, found),
        cond_iii: Condition::from_checks(cond_iii, present),
        cond_iv: Condition::from_checks(cond_iv, found),
        triple_coprime: TripleCheck {
            pass: failing.is_empty(),
            failing,
        },
    }
}

fn pairs() -> impl Iterator<Item = (usize, usize)> {
    (0..4).flat_map(|j| (j + 1..4).map(move |k| (j, k)))
}

fn pair_witness(monomials: &[Monomial], j: usize, k: usize, allow_two: bool) -> PairWitness {
    // Prefer a witness that involves both variables.
    let binary = monomials
        .iter()
        .filter(|m| m.supported_on(&[j, k]))
        .max_by_key(|m| {
            (
                m.exponent(j) > 0 && m.exponent(k) > 0,
                std::cmp::Reverse(**m),
            )
        });
    if let Some(m) = binary {
        return PairWitness::Binary(*m);
    }
    if !allow_two {
        return PairWitness::Missing;
    }
    // x_j^m x_k^p x_l with l outside {j, k}, grouped by l.
    let others: Vec<usize> = (0..4).filter(|&i| i != j && i != k).collect();
    let with_l = |l: usize| {
        monomials
            .iter()
            .find(|m| m.exponent(l) == 1 && others.iter().all(|&o| o == l || m.exponent(o) == 0))
    };
    match (with_l(others[0]), with_l(others[1])) {
        (Some(m1), Some(m2)) => PairWitness::TwoMonomials(*m1, *m2),
        _ => PairWitness::Missing,
    }
}

/// Condition (i) decided by divisibility alone, without enumerating
/// monomials; agrees with the `cond_i` field of [`fletcher_check`].
pub(crate) fn cond_i_holds(a: &[u64; 4], d: u64) -> bool {
    (0..4).all(|j| {
        d.is_multiple_of(a[j])
            || (0..4).any(|k| k != j && d >= a[k] + a[j] && (d - a[k]).is_multiple_of(a[j]))
    })
}
