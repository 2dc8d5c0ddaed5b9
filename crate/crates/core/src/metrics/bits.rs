use crate::network::ThresholdGraph;

/// Adjacency as packed bit rows.
pub(crate) struct BitRows {
    words: usize,
    data: Vec<u64>,
}

impl BitRows {
    pub fn new(g: &ThresholdGraph) -> Self {
        let n = g.n();
        let words = n.div_ceil(64);
        let mut data = vec![0u64; n * words];
        for i in 0..n {
            for &j in g.neighbors(i) {
                let j = j as usize;
                data[i * words + j / 64] |= 1 << (j % 64);
            }
        }
        Self { words, data }
    }

    pub fn words(&self) -> usize {
        self.words
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }
}

/// Indices of set bits, ascending.
pub(crate) fn ones(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &word)| {
        let mut x = word;
        std::iter::from_fn(move || {
            (x != 0).then(|| {
                let b = x.trailing_zeros() as usize;
                x &= x - 1;
                w * 64 + b
            })
        })
    })
}
