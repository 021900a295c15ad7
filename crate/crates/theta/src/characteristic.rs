//! Half-integer theta characteristics [e1; e2] with entries in {0,1}.

/// A characteristic is a pair of {0,1}-vectors of length g. Parity: even
/// when e1.e2 = 0 mod 2; the even ones form the set S_g with
/// |S_g| = 2^{g-1}(2^g + 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaCharacteristic {
    pub eps1: Vec<u8>,
    pub eps2: Vec<u8>,
}

impl ThetaCharacteristic {
    pub fn new(eps1: Vec<u8>, eps2: Vec<u8>) -> Self {
        assert_eq!(eps1.len(), eps2.len());
        assert!(eps1.iter().chain(eps2.iter()).all(|&b| b <= 1));
        ThetaCharacteristic { eps1, eps2 }
    }

    pub fn g(&self) -> usize {
        self.eps1.len()
    }

    pub fn is_even(&self) -> bool {
        let dot: u32 = self
            .eps1
            .iter()
            .zip(&self.eps2)
            .map(|(&a, &b)| (a & b) as u32)
            .sum();
        dot % 2 == 0
    }

    /// Bit packing: component j is bit j.
    pub fn from_bits(g: usize, e1_bits: u32, e2_bits: u32) -> Self {
        let unpack = |bits: u32| (0..g).map(|j| ((bits >> j) & 1) as u8).collect();
        ThetaCharacteristic { eps1: unpack(e1_bits), eps2: unpack(e2_bits) }
    }

    pub fn e1_bits(&self) -> u32 {
        self.eps1.iter().enumerate().map(|(j, &b)| (b as u32) << j).sum()
    }

    pub fn e2_bits(&self) -> u32 {
        self.eps2.iter().enumerate().map(|(j, &b)| (b as u32) << j).sum()
    }

    /// Index into the 4^g table: (e1_bits << g) | e2_bits.
    pub fn table_index(&self) -> usize {
        ((self.e1_bits() as usize) << self.g()) | self.e2_bits() as usize
    }
}

/// All 2^{2g} characteristics with {0,1} entries, in ascending
/// (e1_bits, e2_bits) order.
pub fn enumerate_characteristics(g: usize) -> Vec<ThetaCharacteristic> {
    assert!((1..=4).contains(&g), "supported genus range is 1..=4");
    let mut out = Vec::with_capacity(1 << (2 * g));
    for e1 in 0..(1u32 << g) {
        for e2 in 0..(1u32 << g) {
            out.push(ThetaCharacteristic::from_bits(g, e1, e2));
        }
    }
    out
}

/// The even characteristics S_g in enumeration order.
pub fn even_characteristics(g: usize) -> Vec<ThetaCharacteristic> {
    enumerate_characteristics(g).into_iter().filter(|c| c.is_even()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_the_classical_formula() {
        // |S_g| = 2^{g-1}(2^g + 1)
        for g in 1..=4usize {
            let all = enumerate_characteristics(g);
            assert_eq!(all.len(), 1 << (2 * g));
            let even = all.iter().filter(|c| c.is_even()).count();
            assert_eq!(even, (1 << (g - 1)) * ((1 << g) + 1));
        }
    }

    #[test]
    fn genus_one_has_single_odd() {
        let odd: Vec<_> = enumerate_characteristics(1)
            .into_iter()
            .filter(|c| !c.is_even())
            .collect();
        assert_eq!(odd.len(), 1);
        assert_eq!(odd[0].eps1, vec![1]);
        assert_eq!(odd[0].eps2, vec![1]);
    }

    #[test]
    fn genus_three_even_count_is_36() {
        assert_eq!(even_characteristics(3).len(), 36);
        assert_eq!(even_characteristics(4).len(), 136);
    }

    #[test]
    fn table_index_round_trip() {
        for c in enumerate_characteristics(3) {
            let i = c.table_index();
            let back = ThetaCharacteristic::from_bits(3, (i >> 3) as u32, (i & 7) as u32);
            assert_eq!(c, back);
        }
    }
}
