use rustc_hash::FxHashSet;

/// Set of dead states with bounded size.
///
/// Two generations approximate LRU: inserts go to `young`; when it fills
/// half the capacity the old generation is dropped and `young` takes its
/// place. Hits in the old generation are promoted.
pub(crate) struct Memo {
    young: FxHashSet<Box<[u32]>>,
    old: FxHashSet<Box<[u32]>>,
    half: usize,
}

impl Memo {
    pub(crate) fn new(capacity: usize) -> Self {
        Self {
            young: FxHashSet::default(),
            old: FxHashSet::default(),
            half: (capacity / 2).max(1),
        }
    }

    pub(crate) fn contains(&mut self, key: &[u32]) -> bool {
        if self.young.contains(key) {
            return true;
        }
        if let Some(k) = self.old.take(key) {
            self.put(k);
            return true;
        }
        false
    }

    pub(crate) fn insert(&mut self, key: &[u32]) {
        self.put(key.into());
    }

    fn put(&mut self, key: Box<[u32]>) {
        if self.young.len() >= self.half {
            self.old = std::mem::take(&mut self.young);
        }
        self.young.insert(key);
    }
}
