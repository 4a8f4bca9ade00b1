use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

/// Multiplicity vector `(i_1, …, i_k)`; part `j` is used `i_j` times.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Composition {
    pub parts: Vec<u64>,
}

impl Composition {
    /// `i_1 + 2 i_2 + … + k i_k`.
    pub fn weight(&self) -> u64 {
        self.parts.iter().enumerate().map(|(j, &c)| (j as u64 + 1) * c).sum()
    }

    /// `i_1 + … + i_k`.
    pub fn len(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(i_1 + … + i_k)! / (i_1! … i_k!)`, built by alternating multiply and exact divide.
    pub fn multinomial(&self) -> BigInt {
        let mut acc = BigInt::one();
        let mut total = 0u64;
        for &c in &self.parts {
            for t in 1..=c {
                total += 1;
                acc = acc * BigInt::from(total) / BigInt::from(t);
            }
        }
        acc
    }
}

/// All multiplicity vectors of weight `n` with `k` slots, in decreasing
/// lexicographic order: `(n, 0, …)` first, `(…, n/k)` last.
///
/// Odometer over the first `k-1` slots; the last slot absorbs the remainder
/// when it is divisible by `k`.
#[derive(Clone, Debug)]
pub struct Compositions {
    n: u64,
    k: usize,
    head: Vec<u64>,
    started: bool,
    done: bool,
}

impl Compositions {
    pub fn new(n: u64, k: usize) -> Self {
        assert!(k >= 1, "need at least one part size");
        Compositions {
            n,
            k,
            head: vec![0; k - 1],
            started: false,
            done: false,
        }
    }

    fn used(&self, upto: usize) -> u64 {
        self.head[..upto].iter().enumerate().map(|(j, &c)| (j as u64 + 1) * c).sum()
    }

    /// Greedy maximal fill of `head[from..]`.
    fn fill_from(&mut self, from: usize) {
        let mut rem = self.n - self.used(from);
        for j in from..self.k - 1 {
            let part = j as u64 + 1;
            self.head[j] = rem / part;
            rem -= self.head[j] * part;
        }
    }

    /// Moves to the next head in decreasing lexicographic order.
    fn advance(&mut self) -> bool {
        match self.head.iter().rposition(|&c| c > 0) {
            Some(q) => {
                self.head[q] -= 1;
                self.fill_from(q + 1);
                true
            }
            None => false,
        }
    }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill_from(0);
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        loop {
            let rem = self.n - self.used(self.k - 1);
            if rem.is_multiple_of(self.k as u64) {
                let mut parts = self.head.clone();
                parts.push(rem / self.k as u64);
                return Some(Composition { parts });
            }
            if !self.advance() {
                self.done = true;
                return None;
            }
        }
    }
}

pub fn compositions(n: u64, k: usize) -> Vec<Composition> {
    Compositions::new(n, k).collect()
}
