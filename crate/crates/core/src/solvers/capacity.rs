/// Per-campaign recommendation counts `c_j` with `0 <= c_j <= b^j`, indexed
/// as a mixed-radix number with radices `b^j + 1` (campaign 0 varies fastest).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CapacityVector {
    counts: Vec<usize>,
}

impl CapacityVector {
    /// `None` if a count exceeds its upper bound or the lengths differ.
    pub fn new(counts: Vec<usize>, upper: &[usize]) -> Option<Self> {
        (counts.len() == upper.len() && counts.iter().zip(upper).all(|(c, b)| c <= b))
            .then_some(Self { counts })
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn encode(&self, upper: &[usize]) -> usize {
        self.counts
            .iter()
            .zip(upper)
            .rev()
            .fold(0, |acc, (&c, &b)| acc * (b + 1) + c)
    }

    pub fn decode(mut index: usize, upper: &[usize]) -> Self {
        let counts = upper
            .iter()
            .map(|&b| {
                let c = index % (b + 1);
                index /= b + 1;
                c
            })
            .collect();
        Self { counts }
    }

    /// Number of distinct vectors under `upper`, or `None` on overflow.
    pub fn state_count(upper: &[usize]) -> Option<usize> {
        upper
            .iter()
            .try_fold(1usize, |acc, &b| acc.checked_mul(b.checked_add(1)?))
    }

    /// Index offset of a unit step along each campaign axis.
    pub(crate) fn strides(upper: &[usize]) -> Vec<usize> {
        let mut stride = 1;
        upper
            .iter()
            .map(|&b| {
                let s = stride;
                stride *= b + 1;
                s
            })
            .collect()
    }
}
