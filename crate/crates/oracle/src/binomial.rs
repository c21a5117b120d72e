/// Binomial coefficient parity from Pascal's rule, with no bit tricks.
pub fn pascal_parity(a: u64, b: u64) -> bool {
    if b > a {
        return false;
    }
    let a = a as usize;
    let b = b as usize;
    let mut row = vec![false; a + 1];
    row[0] = true;
    for r in 1..=a {
        for k in (1..=r).rev() {
            row[k] ^= row[k - 1];
        }
    }
    row[b]
}

/// Exact binomial coefficient by the multiplicative formula.
pub fn binomial(a: u64, b: u64) -> u128 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc * (a - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agree() {
        for a in 0..40 {
            for b in 0..=a + 2 {
                assert_eq!(pascal_parity(a, b), binomial(a, b) % 2 == 1);
            }
        }
        assert_eq!(binomial(6, 4), 15);
        assert_eq!(binomial(5, 2), 10);
    }
}
