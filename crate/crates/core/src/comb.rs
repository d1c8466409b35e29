//! Small combinatorial enumerators shared by the functional and power modules.
//!
//! All sequences are emitted in lexicographic order, which fixes the basis
//! orders used throughout the crate.

/// `n!` as `u64`. Panics for `n > 20`.
pub fn factorial(n: usize) -> u64 {
    assert!(n <= 20, "factorial overflow");
    (1..=n as u64).product()
}

/// Binomial coefficient `C(n, k)` as `usize`, 0 when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Strictly increasing `r`-tuples over `0..n`, lexicographically.
pub fn subsets_lex(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, r));
    if r > n {
        return out;
    }
    if r == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        out.push(cur.clone());
        // advance to the next increasing tuple
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - (r - i) {
                cur[i] += 1;
                for j in i + 1..r {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Weakly increasing `r`-tuples over `0..n`, lexicographically.
pub fn multisets_lex(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n + r - 1, r));
    if n == 0 {
        return out;
    }
    if r == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut cur = vec![0usize; r];
    loop {
        out.push(cur.clone());
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - 1 {
                cur[i] += 1;
                let v = cur[i];
                for j in i + 1..r {
                    cur[j] = v;
                }
                break;
            }
        }
    }
}

/// All `r`-tuples over `0..n` (the full tensor index set), lexicographically.
pub fn tuples_lex(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    if r == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut cur = vec![0usize; r];
    loop {
        out.push(cur.clone());
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - 1 {
                cur[i] += 1;
                for j in i + 1..r {
                    cur[j] = 0;
                }
                break;
            }
        }
    }
}

/// Product of factorials of the multiplicities of a weakly increasing tuple.
pub fn multiset_multiplicity(alpha: &[usize]) -> u64 {
    let mut acc = 1u64;
    let mut run = 1usize;
    for i in 1..alpha.len() {
        if alpha[i] == alpha[i - 1] {
            run += 1;
        } else {
            acc *= factorial(run);
            run = 1;
        }
    }
    if !alpha.is_empty() {
        acc *= factorial(run);
    }
    acc
}

/// Partitions of `n` as weakly decreasing part lists, in reverse
/// lexicographic order starting from `(n)`.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(remaining: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        let top = remaining.min(max_part);
        for p in (1..=top).rev() {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}
