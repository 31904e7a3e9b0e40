//! Live sessions and per-session command serialization.
//!
//! Each session id maps to its own slot mutex. Commands on one session hold
//! that mutex from load through persist, so they apply in a single serial
//! order; commands on different sessions never contend beyond the brief
//! lookup in the slot table.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use finder_core::{CorpusIndex, Session};

use crate::error::ApiError;
use crate::store::SessionStore;

type Slot = Arc<Mutex<Option<Session>>>;

pub struct SessionRegistry {
    store: Arc<dyn SessionStore>,
    slots: Mutex<HashMap<String, Slot>>,
}

impl SessionRegistry {
    pub fn new(store: Arc<dyn SessionStore>) -> Self {
        Self {
            store,
            slots: Mutex::new(HashMap::new()),
        }
    }

    fn slot(&self, id: &str) -> Slot {
        self.slots
            .lock()
            .unwrap()
            .entry(id.to_owned())
            .or_default()
            .clone()
    }

    fn ensure_loaded(
        &self,
        index: &CorpusIndex,
        id: &str,
        slot: &mut Option<Session>,
    ) -> Result<(), ApiError> {
        if slot.is_none() {
            let blob = self
                .store
                .load(id)?
                .ok_or_else(|| ApiError::session_not_found(id))?;
            *slot = Some(Session::load(&blob, index)?);
        }
        Ok(())
    }

    pub fn create(&self, session: Session) -> Result<Session, ApiError> {
        let slot = self.slot(session.id());
        let mut guard = slot.lock().unwrap();
        if guard.is_some() || self.store.load(session.id())?.is_some() {
            return Err(ApiError::bad_request(
                "session_exists",
                format!("session `{}` already exists", session.id()),
            ));
        }
        self.store.save(session.id(), &session.save())?;
        *guard = Some(session.clone());
        Ok(session)
    }

    /// Runs a read-only query against the current state of a session.
    pub fn read<T>(
        &self,
        index: &CorpusIndex,
        id: &str,
        f: impl FnOnce(&Session) -> Result<T, ApiError>,
    ) -> Result<T, ApiError> {
        let slot = self.slot(id);
        let mut guard = slot.lock().unwrap();
        self.ensure_loaded(index, id, &mut guard)?;
        f(guard.as_ref().expect("loaded"))
    }

    /// Applies a command. The new state is persisted before it becomes
    /// visible; on any error the session is left unchanged.
    pub fn update(
        &self,
        index: &CorpusIndex,
        id: &str,
        f: impl FnOnce(&Session) -> finder_core::Result<Session>,
    ) -> Result<Session, ApiError> {
        let slot = self.slot(id);
        let mut guard = slot.lock().unwrap();
        self.ensure_loaded(index, id, &mut guard)?;
        let next = f(guard.as_ref().expect("loaded"))?;
        self.store.save(id, &next.save())?;
        *guard = Some(next.clone());
        Ok(next)
    }

    pub fn delete(&self, id: &str) -> Result<bool, ApiError> {
        let slot = self.slot(id);
        let mut guard = slot.lock().unwrap();
        let existed = guard.take().is_some() | self.store.delete(id)?;
        self.slots.lock().unwrap().remove(id);
        Ok(existed)
    }
}
