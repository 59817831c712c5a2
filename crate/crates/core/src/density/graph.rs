use num_bigint::BigUint;
use num_integer::Integer;

/// Odd primes joined when neither divides the other minus one; cliques
/// are exactly the prime sets whose product lies in `M`.
#[derive(Debug, Clone)]
pub struct CompatibilityGraph {
    primes: Vec<u64>,
    adjacency: Vec<Bitset>,
}

pub fn compatible(p: u64, q: u64) -> bool {
    p != q && !(q - 1).is_multiple_of(p) && !(p - 1).is_multiple_of(q)
}

impl CompatibilityGraph {
    pub fn new(primes: &[u64]) -> Self {
        let n = primes.len();
        let mut adjacency = vec![Bitset::new(n); n];
        for i in 0..n {
            for j in i + 1..n {
                if compatible(primes[i], primes[j]) {
                    adjacency[i].insert(j);
                    adjacency[j].insert(i);
                }
            }
        }
        CompatibilityGraph { primes: primes.to_vec(), adjacency }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(j)
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(a, &i)| vertices[a + 1..].iter().all(|&j| self.has_edge(i, j)))
    }

    /// Visits every nonempty clique whose smallest vertex is `first`.
    /// The callback receives the clique as ascending vertex indices along
    /// with `m = ∏ p` and `λ(m) = lcm(p - 1)`.
    pub fn for_each_clique_from<F>(&self, first: usize, visit: &mut F)
    where
        F: FnMut(&[usize], &BigUint, &BigUint),
    {
        let p = self.primes[first];
        let mut candidates = self.adjacency[first].clone();
        candidates.retain_above(first);
        let mut stack = vec![first];
        self.extend(&mut stack, &BigUint::from(p), &BigUint::from(p - 1), &candidates, visit);
    }

    pub fn for_each_clique<F>(&self, mut visit: F)
    where
        F: FnMut(&[usize], &BigUint, &BigUint),
    {
        for first in 0..self.len() {
            self.for_each_clique_from(first, &mut visit);
        }
    }

    fn extend<F>(&self, clique: &mut Vec<usize>, m: &BigUint, lambda: &BigUint, candidates: &Bitset, visit: &mut F)
    where
        F: FnMut(&[usize], &BigUint, &BigUint),
    {
        visit(clique, m, lambda);
        for v in candidates.iter() {
            let p = self.primes[v];
            let mut next = candidates.intersection(&self.adjacency[v]);
            next.retain_above(v);
            clique.push(v);
            let m_next = m * p;
            let lambda_next = lambda.lcm(&BigUint::from(p - 1));
            self.extend(clique, &m_next, &lambda_next, &next, visit);
            clique.pop();
        }
    }

    pub fn clique_count(&self) -> u64 {
        let mut count = 0u64;
        self.for_each_clique(|_, _, _| count += 1);
        count
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    fn new(len: usize) -> Self {
        Bitset { words: vec![0; len.div_ceil(64)] }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn intersection(&self, other: &Bitset) -> Bitset {
        Bitset { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    /// Clears bits `0..=i`.
    fn retain_above(&mut self, i: usize) {
        for (w, word) in self.words.iter_mut().enumerate() {
            let lo = w * 64;
            if lo + 63 <= i {
                *word = 0;
            } else if lo <= i {
                let keep_from = i - lo + 1;
                *word &= !0u64 << keep_from;
            }
        }
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + t)
            })
        })
    }
}
