//! Small combinatorial enumerations shared by the formula modules.

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, start: usize, n: usize, k: usize) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(out, cur, i + 1, n, k);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut out, &mut Vec::with_capacity(k), 0, n, k);
    out
}

/// Weak compositions of `total` into `parts` non-negative parts, first part
/// largest first: `(2,0), (1,1), (0,2)`.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(4, 2)[1], vec![0, 2]);
        assert_eq!(compositions(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        for (t, k) in [(3u32, 3usize), (4, 2), (0, 4)] {
            assert_eq!(
                compositions(t, k).len() as u64,
                binomial(t as u64 + k as u64 - 1, k as u64 - 1)
            );
        }
    }
}
