use crate::{CoreError, Scalar};

/// Sign of reordering homogeneous factors by `perm`, where `perm[k]` is the
/// source position of the factor that ends up in slot `k`.
///
/// Each pair of factors that crosses contributes `(-1)^(d_a * d_b)` on the
/// effective degrees supplied by the caller. Which degrees are "effective"
/// is a policy of the calling layer, not of this function.
pub fn koszul_sign(perm: &[usize], degrees: &[i64]) -> Result<Scalar, CoreError> {
    if perm.len() != degrees.len() {
        return Err(CoreError::MalformedInput(format!(
            "permutation length {} does not match degree list length {}",
            perm.len(),
            degrees.len()
        )));
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(CoreError::MalformedInput(
                "not a permutation of 0..len".into(),
            ));
        }
        seen[p] = true;
    }
    let mut exp: i64 = 0;
    for a in 0..perm.len() {
        for b in (a + 1)..perm.len() {
            if perm[a] > perm[b] {
                exp += degrees[perm[a]] * degrees[perm[b]];
            }
        }
    }
    Ok(Scalar::neg_one_pow(exp))
}

/// Stably sorts `items` by `key`, returning the Koszul sign of the
/// rearrangement on `eff_degree`. Equal keys never cross, so the result is
/// deterministic and the sign well defined.
pub fn sort_by_key_with_sign<T, K: Ord>(
    items: &mut [T],
    key: impl Fn(&T) -> K,
    eff_degree: impl Fn(&T) -> i64,
) -> Scalar {
    let mut exp: i64 = 0;
    // Insertion sort; each adjacent swap crosses exactly one pair.
    for i in 1..items.len() {
        let mut j = i;
        while j > 0 && key(&items[j - 1]) > key(&items[j]) {
            exp += eff_degree(&items[j - 1]) * eff_degree(&items[j]);
            items.swap(j - 1, j);
            j -= 1;
        }
    }
    Scalar::neg_one_pow(exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: decompose the permutation into adjacent transpositions and
    /// multiply the pairwise signs one swap at a time.
    fn oracle(perm: &[usize], degrees: &[i64]) -> Scalar {
        let mut arr: Vec<usize> = perm.to_vec();
        let mut exp = 0i64;
        for i in 0..arr.len() {
            for j in ((i + 1)..arr.len()).rev() {
                if arr[j - 1] > arr[j] {
                    exp += degrees[arr[j - 1]] * degrees[arr[j]];
                    arr.swap(j - 1, j);
                }
            }
        }
        assert!(arr.windows(2).all(|w| w[0] < w[1]));
        Scalar::neg_one_pow(exp)
    }

    #[test]
    fn cycle_on_mixed_degrees() {
        // One-line cycle sending slot order to (2 3 1) on degrees (1, 2, 1).
        let perm = [1, 2, 0];
        let degrees = [1, 2, 1];
        assert_eq!(koszul_sign(&perm, &degrees).unwrap(), -Scalar::one());
        assert_eq!(oracle(&perm, &degrees), -Scalar::one());
    }

    #[test]
    fn even_degrees_never_sign() {
        let perm = [2, 0, 1];
        assert_eq!(koszul_sign(&perm, &[2, 0, 4]).unwrap(), Scalar::one());
    }

    #[test]
    fn matches_oracle_on_all_permutations_of_length_up_to_5() {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let degrees = [1, 2, 1, 3, 1];
        for n in 0..=5 {
            for p in perms(n) {
                assert_eq!(
                    koszul_sign(&p, &degrees[..n]).unwrap(),
                    oracle(&p, &degrees[..n]),
                    "perm {p:?}"
                );
            }
        }
    }

    #[test]
    fn composition_multiplies_signs() {
        // (sigma compose tau) acting on degrees has sign(sigma on permuted
        // degrees) * sign(tau on degrees).
        let degrees = [1, 1, 2, 3];
        let tau = [2, 0, 3, 1];
        let sigma = [1, 3, 0, 2];
        let composed: Vec<usize> = sigma.iter().map(|&i| tau[i]).collect();
        let tau_degrees: Vec<i64> = tau.iter().map(|&i| degrees[i]).collect();
        let lhs = koszul_sign(&composed, &degrees).unwrap();
        let rhs = koszul_sign(&sigma, &tau_degrees).unwrap() * koszul_sign(&tau, &degrees).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(koszul_sign(&[0, 0], &[1, 1]).is_err());
        assert!(koszul_sign(&[0, 2], &[1, 1]).is_err());
        assert!(koszul_sign(&[0], &[1, 1]).is_err());
    }

    #[test]
    fn sort_with_sign_tracks_crossings() {
        let mut items = vec![(2u32, 1i64), (1, 1), (3, 2)];
        let sign = sort_by_key_with_sign(&mut items, |t| t.0, |t| t.1);
        assert_eq!(items, vec![(1, 1), (2, 1), (3, 2)]);
        assert_eq!(sign, -Scalar::one());
    }

    #[test]
    fn sort_with_sign_is_stable_on_equal_keys() {
        let mut items = vec![("a", 1i64), ("a", 1)];
        let sign = sort_by_key_with_sign(&mut items, |t| t.0, |t| t.1);
        assert_eq!(sign, Scalar::one());
    }
}
