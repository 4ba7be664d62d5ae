use super::FinCat;
use crate::par;

/// Chains of one length, stored flat and sorted lexicographically by morphism index.
///
/// A chain `(f_1, …, f_n)` satisfies `src f_i = tgt f_{i+1}`; degree 0 stores objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    n: usize,
    data: Vec<u32>,
    composite: Vec<u32>,
    degenerate: Vec<bool>,
}

impl Level {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.composite.len()
    }

    pub fn is_empty(&self) -> bool {
        self.composite.is_empty()
    }

    fn width(&self) -> usize {
        self.n.max(1)
    }

    /// Morphisms of chain `i`; for degree 0 the single entry is an object.
    pub fn chain(&self, i: usize) -> &[u32] {
        let w = self.width();
        &self.data[i * w..(i + 1) * w]
    }

    /// `f_1∘…∘f_n`, or the identity at the object in degree 0.
    pub fn composite(&self, i: usize) -> u32 {
        self.composite[i]
    }

    pub fn is_degenerate(&self, i: usize) -> bool {
        self.degenerate[i]
    }

    pub fn num_nondegenerate(&self) -> usize {
        self.degenerate.iter().filter(|d| !**d).count()
    }

    pub fn index_of(&self, chain: &[u32]) -> Option<usize> {
        debug_assert_eq!(chain.len(), self.width());
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.chain(mid).cmp(chain) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// The nerve up to a maximal degree; the normalized variant keeps only chains
/// without identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nerve {
    normalized: bool,
    levels: Vec<Level>,
}

impl Nerve {
    pub fn new(cat: &FinCat, n_max: usize, normalized: bool) -> Nerve {
        let n_obj = cat.num_objects() as u32;
        let mut levels = vec![Level {
            n: 0,
            data: (0..n_obj).collect(),
            composite: (0..n_obj).map(|o| cat.identity(o)).collect(),
            degenerate: vec![false; n_obj as usize],
        }];
        if n_max >= 1 {
            // Degree 1 lists morphisms in index order, which keeps every level lexicographic.
            let keep: Vec<u32> =
                (0..cat.num_morphisms() as u32).filter(|&f| !(normalized && cat.is_identity(f))).collect();
            levels.push(Level {
                n: 1,
                composite: keep.clone(),
                degenerate: keep.iter().map(|&f| cat.is_identity(f)).collect(),
                data: keep,
            });
        }
        for n in 2..=n_max {
            let prev = &levels[n - 1];
            // Extensions of each chain, computed independently and concatenated in order.
            let blocks = par::map_range(prev.len(), |i| {
                let prefix = prev.chain(i);
                let last_obj = cat.src(*prefix.last().unwrap());
                let mut data = Vec::new();
                let mut comp = Vec::new();
                let mut degen = Vec::new();
                for &f in cat.incoming(last_obj) {
                    let d = prev.is_degenerate(i) || cat.is_identity(f);
                    if normalized && d {
                        continue;
                    }
                    data.extend_from_slice(prefix);
                    data.push(f);
                    comp.push(cat.compose(prev.composite(i), f));
                    degen.push(d);
                }
                (data, comp, degen)
            });
            let mut level = Level { n, data: Vec::new(), composite: Vec::new(), degenerate: Vec::new() };
            for (d, c, g) in blocks {
                level.data.extend(d);
                level.composite.extend(c);
                level.degenerate.extend(g);
            }
            levels.push(level);
        }
        Nerve { normalized, levels }
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn max_degree(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &Level {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// (all chains, nondegenerate chains) per degree.
    pub fn counts(&self) -> Vec<(usize, usize)> {
        self.levels.iter().map(|l| (l.len(), l.num_nondegenerate())).collect()
    }

    /// Position of the `i`-th face of a chain of degree `n+1` within degree `n`,
    /// `None` when that face is absent (degenerate in a normalized nerve).
    ///
    /// Faces: `d_0` drops `f_1`, `d_{n+1}` drops `f_{n+1}`, `d_i` composes `f_i∘f_{i+1}`.
    pub fn face(&self, cat: &FinCat, chain: &[u32], i: usize, scratch: &mut Vec<u32>) -> Option<usize> {
        let m = chain.len();
        let lower = &self.levels[m - 1];
        scratch.clear();
        if m == 1 {
            let f = chain[0];
            scratch.push(if i == 0 { cat.src(f) } else { cat.tgt(f) });
            return lower.index_of(scratch);
        }
        if i == 0 {
            scratch.extend_from_slice(&chain[1..]);
        } else if i == m {
            scratch.extend_from_slice(&chain[..m - 1]);
        } else {
            scratch.extend_from_slice(&chain[..i - 1]);
            scratch.push(cat.compose(chain[i - 1], chain[i]));
            scratch.extend_from_slice(&chain[i + 1..]);
        }
        if self.normalized && scratch.iter().any(|&f| cat.is_identity(f)) {
            return None;
        }
        lower.index_of(scratch)
    }
}
