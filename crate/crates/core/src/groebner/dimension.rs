//! Krull dimension from leading terms.

/// Size of a largest set of variables containing no support from `supports`.
///
/// Each support is a bitmask of variables; a set `S` is independent when no
/// support is a subset of `S`. Equivalently we look for a smallest hitting set
/// of the supports and take its complement.
pub fn max_independent_set(nvars: usize, supports: &[u64]) -> usize {
    let mut minimal: Vec<u64> = Vec::new();
    let mut sorted = supports.to_vec();
    sorted.sort_by_key(|s| s.count_ones());
    for s in sorted {
        if !minimal.iter().any(|&m| m & !s == 0) {
            minimal.push(s);
        }
    }
    let mut best = nvars;
    hit(&minimal, 0, 0, &mut best);
    nvars - best
}

fn hit(supports: &[u64], chosen: u64, size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    // Branch on the unhit support with the fewest variables.
    let open = supports.iter().filter(|&&s| s & chosen == 0).min_by_key(|s| s.count_ones());
    let Some(&s) = open else {
        *best = size;
        return;
    };
    let mut rest = s;
    while rest != 0 {
        let bit = rest & rest.wrapping_neg();
        rest ^= bit;
        hit(supports, chosen | bit, size + 1, best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(nvars: usize, supports: &[u64]) -> usize {
        (0u64..1 << nvars)
            .filter(|&s| supports.iter().all(|&m| m & s != m))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn matches_brute_force() {
        let cases: &[(usize, &[u64])] = &[
            (3, &[0b001, 0b010, 0b100]),
            (4, &[0b0011, 0b1100]),
            (5, &[0b00111]),
            (6, &[0b000011, 0b000110, 0b001100, 0b011000, 0b110000]),
            (4, &[]),
        ];
        for (n, s) in cases {
            assert_eq!(max_independent_set(*n, s), brute(*n, s), "{s:?}");
        }
    }
}
