//! Binomial coefficients and ranking of k-subsets.
//!
//! All routines here work on 0-based, strictly increasing index slices. The
//! public vertex type (`graph::VertexSet`) is 1-based and converts at the
//! boundary.

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Dense table of `C(a, b)` for `a <= n_max`, `b <= k_max`.
#[derive(Clone, Debug)]
pub struct BinomTable {
    k_max: usize,
    rows: Vec<u64>,
}

impl BinomTable {
    pub fn new(n_max: usize, k_max: usize) -> Self {
        let width = k_max + 1;
        let mut rows = vec![0u64; (n_max + 1) * width];
        for a in 0..=n_max {
            rows[a * width] = 1;
            for b in 1..=k_max.min(a) {
                let left = rows[(a - 1) * width + b - 1];
                let up = if b < a { rows[(a - 1) * width + b] } else { 0 };
                rows[a * width + b] = left.saturating_add(up);
            }
        }
        Self { k_max, rows }
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> u64 {
        if b > self.k_max {
            return binom(a as u64, b as u64);
        }
        let idx = a * (self.k_max + 1) + b;
        if idx >= self.rows.len() {
            return binom(a as u64, b as u64);
        }
        self.rows[idx]
    }

    /// Colexicographic rank of a strictly increasing 0-based subset.
    #[inline]
    pub fn colex_rank(&self, subset: &[usize]) -> u64 {
        subset.iter().enumerate().map(|(i, &a)| self.get(a, i + 1)).sum()
    }

    /// Lexicographic rank of a strictly increasing 0-based `k`-subset of `0..n`.
    #[inline]
    pub fn lex_rank(&self, n: usize, subset: &[usize]) -> u64 {
        let k = subset.len();
        let mut tail = 0u64;
        for (i, &a) in subset.iter().enumerate() {
            tail += self.get(n - 1 - a, k - i);
        }
        self.get(n, k) - 1 - tail
    }

    /// Inverse of [`BinomTable::lex_rank`].
    pub fn lex_unrank(&self, n: usize, k: usize, rank: u64, out: &mut Vec<usize>) {
        out.clear();
        // Work in colex coordinates of the reflected subset.
        let mut rem = self.get(n, k) - 1 - rank;
        let mut hi = n;
        for i in (1..=k).rev() {
            // largest c < hi with C(c, i) <= rem
            let mut c = hi - 1;
            while self.get(c, i) > rem {
                c -= 1;
            }
            rem -= self.get(c, i);
            out.push(n - 1 - c);
            hi = c;
        }
    }
}

/// Lexicographic iterator over `k`-subsets of `0..n`.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            current: (0..k).collect(),
            done: k > n,
        }
    }

    /// Advances in place; returns `false` once exhausted.
    pub fn advance(&mut self) -> bool {
        let k = self.current.len();
        let n = self.n;
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.current[i] < n - k + i {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                return true;
            }
        }
        self.done = true;
        false
    }

    pub fn current(&self) -> &[usize] {
        &self.current
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        self.advance();
        Some(out)
    }
}

/// Calls `f` with every `k`-subset of `items` (in lexicographic position order).
pub fn for_each_sub<T: Copy>(items: &[T], k: usize, buf: &mut Vec<T>, f: &mut impl FnMut(&[T])) {
    fn rec<T: Copy>(items: &[T], k: usize, start: usize, buf: &mut Vec<T>, f: &mut impl FnMut(&[T])) {
        if buf.len() == k {
            f(buf);
            return;
        }
        let need = k - buf.len();
        for i in start..=items.len() - need {
            buf.push(items[i]);
            rec(items, k, i + 1, buf, f);
            buf.pop();
        }
    }
    buf.clear();
    if k > items.len() {
        return;
    }
    rec(items, k, 0, buf, f);
}
