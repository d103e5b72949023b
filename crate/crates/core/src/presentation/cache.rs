use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, RwLock};

use super::{relation_subspace_bounded, Component, OperadPresentation, DEFAULT_ARITY_BOUND};
use crate::error::Result;
use crate::linalg::Subspace;

/// Persistent storage for relation spaces, keyed by [`cache_key`].
///
/// Implementations must tolerate concurrent writers of the same key; the
/// value for a key is always the same canonical subspace.
pub trait ComponentStore: Send + Sync {
    fn load(&self, key: &str, ambient: usize) -> Option<Subspace>;
    fn store(&self, key: &str, relations: &Subspace);
}

impl<T: ComponentStore + ?Sized> ComponentStore for Arc<T> {
    fn load(&self, key: &str, ambient: usize) -> Option<Subspace> {
        (**self).load(key, ambient)
    }
    fn store(&self, key: &str, relations: &Subspace) {
        (**self).store(key, relations)
    }
}

pub fn cache_key(p: &OperadPresentation, n: usize) -> String {
    format!("{}-n{n}", p.content_hash())
}

/// Write-once memo of components, optionally backed by a [`ComponentStore`].
pub struct ComponentCache {
    bound: usize,
    memo: RwLock<HashMap<String, Arc<Component>>>,
    store: Option<Box<dyn ComponentStore>>,
    memory_hits: AtomicUsize,
    store_hits: AtomicUsize,
    computed: AtomicUsize,
}

impl Default for ComponentCache {
    fn default() -> Self {
        ComponentCache::new()
    }
}

impl ComponentCache {
    pub fn new() -> Self {
        ComponentCache::with_bound(DEFAULT_ARITY_BOUND)
    }

    pub fn with_bound(bound: usize) -> Self {
        ComponentCache {
            bound,
            memo: RwLock::new(HashMap::new()),
            store: None,
            memory_hits: AtomicUsize::new(0),
            store_hits: AtomicUsize::new(0),
            computed: AtomicUsize::new(0),
        }
    }

    pub fn with_store(mut self, store: Box<dyn ComponentStore>) -> Self {
        self.store = Some(store);
        self
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn component(&self, p: &OperadPresentation, n: usize) -> Result<Arc<Component>> {
        let key = cache_key(p, n);
        if let Some(c) = self.memo.read().expect("cache lock").get(&key) {
            self.memory_hits.fetch_add(1, Ordering::Relaxed);
            return Ok(Arc::clone(c));
        }
        let ambient = crate::freeop::Basis::new(n, p.alphabet())?.len();
        let stored = self.store.as_ref().and_then(|s| s.load(&key, ambient));
        let relations = match stored {
            Some(r) => {
                self.store_hits.fetch_add(1, Ordering::Relaxed);
                r
            }
            None => {
                let r = relation_subspace_bounded(p, n, self.bound)?;
                self.computed.fetch_add(1, Ordering::Relaxed);
                if let Some(s) = &self.store {
                    s.store(&key, &r);
                }
                r
            }
        };
        let c = Arc::new(Component::from_relations(p, n, relations)?);
        self.memo
            .write()
            .expect("cache lock")
            .insert(key, Arc::clone(&c));
        Ok(c)
    }

    /// `(memory hits, store hits, computed)` so far.
    pub fn stats(&self) -> (usize, usize, usize) {
        (
            self.memory_hits.load(Ordering::Relaxed),
            self.store_hits.load(Ordering::Relaxed),
            self.computed.load(Ordering::Relaxed),
        )
    }
}
