use std::collections::HashMap;

use serde::Serialize;

use crate::bergman::BasisIndex;

/// Ordered set of basis indices, sorted by total degree and then by `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisWindow {
    indices: Vec<BasisIndex>,
    #[serde(skip)]
    position: HashMap<BasisIndex, usize>,
}

impl BasisWindow {
    pub fn from_indices<I: IntoIterator<Item = BasisIndex>>(indices: I) -> Self {
        let mut v: Vec<BasisIndex> = indices.into_iter().collect();
        v.sort_by_key(|i| i.graded_key());
        v.dedup();
        let position = v.iter().enumerate().map(|(k, i)| (*i, k)).collect();
        BasisWindow { indices: v, position }
    }

    /// All indices with `m + n <= degree`.
    pub fn graded(degree: u32) -> Self {
        Self::tail(None, degree)
    }

    /// Indices with `start < m + n <= degree`; `None` keeps everything.
    pub fn tail(start: Option<u32>, degree: u32) -> Self {
        let lo = start.map_or(0, |k| k + 1);
        Self::from_indices((lo..=degree).flat_map(|d| (0..=d).map(move |m| BasisIndex::new(m, d - m))))
    }

    /// `m <= m_max`, `n <= n_max`.
    pub fn rectangle(m_max: u32, n_max: u32) -> Self {
        Self::from_indices((0..=m_max).flat_map(|m| (0..=n_max).map(move |n| BasisIndex::new(m, n))))
    }

    pub fn indices(&self) -> &[BasisIndex] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn position(&self, idx: BasisIndex) -> Option<usize> {
        self.position.get(&idx).copied()
    }

    pub fn max_degree(&self) -> u32 {
        self.indices.iter().map(|i| i.degree()).max().unwrap_or(0)
    }

    /// Window with `m` and `n` exchanged.
    pub fn swapped(&self) -> Self {
        Self::from_indices(self.indices.iter().map(|i| BasisIndex::new(i.n, i.m)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_order_and_sizes() {
        let w = BasisWindow::graded(2);
        let got: Vec<(u32, u32)> = w.indices().iter().map(|i| (i.m, i.n)).collect();
        assert_eq!(got, vec![(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]);
        assert_eq!(BasisWindow::graded(30).len(), 31 * 32 / 2);
        assert_eq!(BasisWindow::tail(Some(2), 3).len(), 4);
        assert!(BasisWindow::tail(Some(3), 3).is_empty());
        assert_eq!(BasisWindow::rectangle(20, 20).len(), 441);
    }

    #[test]
    fn positions_and_swap() {
        let w = BasisWindow::rectangle(3, 1);
        for (k, i) in w.indices().iter().enumerate() {
            assert_eq!(w.position(*i), Some(k));
        }
        let s = w.swapped();
        assert_eq!(s.len(), w.len());
        assert!(s.position(BasisIndex::new(1, 3)).is_some());
        assert_eq!(BasisWindow::graded(4).swapped(), BasisWindow::graded(4));
    }
}
