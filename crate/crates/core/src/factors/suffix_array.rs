//! Suffix array by prefix doubling with counting sorts, and Kasai LCP.

/// Suffix array of `s`: starting positions in lexicographic order of suffixes.
pub fn suffix_array(s: &[u8]) -> Vec<u32> {
    let n = s.len();
    if n == 0 {
        return Vec::new();
    }
    assert!(n < u32::MAX as usize, "text too long for 32-bit positions");
    let mut sa: Vec<usize> = (0..n).collect();
    sa.sort_by_key(|&i| s[i]);
    let mut rank: Vec<usize> = vec![0; n];
    for w in 1..n {
        rank[sa[w]] = rank[sa[w - 1]] + usize::from(s[sa[w]] != s[sa[w - 1]]);
    }
    let mut classes = rank[sa[n - 1]] + 1;
    let mut k = 1;
    let mut second = Vec::with_capacity(n);
    let mut next_sa = vec![0usize; n];
    let mut next_rank = vec![0usize; n];
    let mut count = Vec::new();
    while classes < n {
        // Order by second key: suffixes without a k-shifted partner first.
        second.clear();
        second.extend(n - k..n);
        second.extend(sa.iter().filter(|&&p| p >= k).map(|&p| p - k));

        count.clear();
        count.resize(classes + 1, 0usize);
        for &p in &second {
            count[rank[p] + 1] += 1;
        }
        for c in 1..=classes {
            count[c] += count[c - 1];
        }
        for &p in &second {
            let r = rank[p];
            next_sa[count[r]] = p;
            count[r] += 1;
        }
        std::mem::swap(&mut sa, &mut next_sa);

        let key = |p: usize| (rank[p], if p + k < n { rank[p + k] as isize } else { -1 });
        next_rank[sa[0]] = 0;
        for w in 1..n {
            next_rank[sa[w]] = next_rank[sa[w - 1]] + usize::from(key(sa[w]) != key(sa[w - 1]));
        }
        std::mem::swap(&mut rank, &mut next_rank);
        classes = rank[sa[n - 1]] + 1;
        k *= 2;
    }
    sa.into_iter().map(|p| p as u32).collect()
}

/// `lcp[r]` is the longest common prefix of the suffixes at ranks `r - 1` and `r`;
/// `lcp[0] = 0`.
pub fn lcp_array(s: &[u8], sa: &[u32]) -> Vec<u32> {
    let n = s.len();
    let mut rank = vec![0usize; n];
    for (r, &p) in sa.iter().enumerate() {
        rank[p as usize] = r;
    }
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        if rank[i] == 0 {
            h = 0;
            continue;
        }
        let j = sa[rank[i] - 1] as usize;
        while i + h < n && j + h < n && s[i + h] == s[j + h] {
            h += 1;
        }
        lcp[rank[i]] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_sa(s: &[u8]) -> Vec<u32> {
        let mut v: Vec<u32> = (0..s.len() as u32).collect();
        v.sort_by(|&a, &b| s[a as usize..].cmp(&s[b as usize..]));
        v
    }

    #[test]
    fn banana() {
        let s = b"banana";
        assert_eq!(suffix_array(s), vec![5, 3, 1, 0, 4, 2]);
        assert_eq!(lcp_array(s, &suffix_array(s)), vec![0, 1, 3, 0, 0, 2]);
    }

    #[test]
    fn degenerate() {
        assert!(suffix_array(&[]).is_empty());
        assert_eq!(suffix_array(&[7]), vec![0]);
        assert_eq!(suffix_array(&[0; 5]), vec![4, 3, 2, 1, 0]);
    }

    proptest! {
        #[test]
        fn matches_naive(s in proptest::collection::vec(0u8..3, 0..200)) {
            let sa = suffix_array(&s);
            prop_assert_eq!(&sa, &naive_sa(&s));
            let lcp = lcp_array(&s, &sa);
            for r in 1..s.len() {
                let a = &s[sa[r - 1] as usize..];
                let b = &s[sa[r] as usize..];
                let h = a.iter().zip(b).take_while(|(x, y)| x == y).count();
                prop_assert_eq!(lcp[r] as usize, h);
            }
        }
    }
}
