use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

/// Environment variable capping the largest index any memo table stores.
pub const CACHE_MAX_INDEX_ENV: &str = "SPREADPOLY_CACHE_MAX_INDEX";

fn cache_max_index() -> u64 {
    static MAX: OnceLock<u64> = OnceLock::new();
    *MAX.get_or_init(|| {
        std::env::var(CACHE_MAX_INDEX_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(u64::MAX)
    })
}

/// Insert-only memo table keyed by index.
///
/// Values are computed outside the lock. When two threads race on the same
/// key the first insertion wins and both callers observe it; since every
/// value is a pure function of its key the loser's copy is identical anyway.
pub(crate) struct Memo<V> {
    table: RwLock<HashMap<u64, Arc<V>>>,
}

impl<V> Memo<V> {
    pub(crate) fn new() -> Self {
        Self {
            table: RwLock::new(HashMap::new()),
        }
    }

    pub(crate) fn get(&self, key: u64) -> Option<Arc<V>> {
        self.table.read().unwrap().get(&key).cloned()
    }

    pub(crate) fn insert(&self, key: u64, value: V) -> Arc<V> {
        if key > cache_max_index() {
            return Arc::new(value);
        }
        self.table
            .write()
            .unwrap()
            .entry(key)
            .or_insert_with(|| Arc::new(value))
            .clone()
    }

    pub(crate) fn get_or_try_insert_with<E>(
        &self,
        key: u64,
        compute: impl FnOnce() -> Result<V, E>,
    ) -> Result<Arc<V>, E> {
        if let Some(v) = self.get(key) {
            return Ok(v);
        }
        let value = compute()?;
        Ok(self.insert(key, value))
    }

    pub(crate) fn get_or_insert_with(&self, key: u64, compute: impl FnOnce() -> V) -> Arc<V> {
        match self.get_or_try_insert_with::<std::convert::Infallible>(key, || Ok(compute())) {
            Ok(v) => v,
            Err(never) => match never {},
        }
    }
}
