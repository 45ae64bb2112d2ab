use super::{Monomial, WeightSystem};

/// All exponent vectors `α ∈ ℕ⁴` with `Σ αᵢ aᵢ = d`, in lexicographic order.
pub fn weighted_monomials(w: &WeightSystem) -> Vec<Monomial> {
    monomials_of_degree(&w.weights(), w.degree())
}

/// Bounded-knapsack enumeration of the degree-`degree` monomials for weights `a`.
pub(crate) fn monomials_of_degree(a: &[u64; 4], degree: u64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = [0u32; 4];
    fill(a, 0, degree, &mut exps, &mut out);
    out
}

fn fill(a: &[u64; 4], i: usize, remaining: u64, exps: &mut [u32; 4], out: &mut Vec<Monomial>) {
    if i == 3 {
        if remaining.is_multiple_of(a[3]) {
            exps[3] = (remaining / a[3]) as u32;
            out.push(Monomial(*exps));
        }
        return;
    }
    for e in 0..=remaining / a[i] {
        exps[i] = e as u32;
        fill(a, i + 1, remaining - e * a[i], exps, out);
    }
    exps[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrics_in_four_variables() {
        let w = WeightSystem::new([1, 1, 1, 1], 2).unwrap();
        assert_eq!(weighted_monomials(&w).len(), 10);
    }

    #[test]
    fn lexicographic_order() {
        let w = WeightSystem::new([1, 1, 2, 3], 3).unwrap();
        let m = weighted_monomials(&w);
        assert!(m.windows(2).all(|p| p[0] < p[1]));
        assert!(m.iter().all(|x| x.degree(&w) == 3));
    }
}
