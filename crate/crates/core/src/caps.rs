//! Resource caps.
//!
//! Every enumeration in the engine is bounded by one of these values. The
//! active caps live in a thread-local so that a caller (or a test) can scope
//! an override without affecting other threads.

use std::cell::Cell;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest group order produced by closure (including wreath products).
    pub group_order: u64,
    /// Largest group order for which all subgroups are enumerated.
    pub subgroup_order: u64,
    /// Largest number of points in a constructed G-set or index set.
    pub points: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            group_order: 1_000_000,
            subgroup_order: 1_000,
            points: 1 << 20,
        }
    }
}

thread_local! {
    static ACTIVE: Cell<Caps> = Cell::new(Caps::default());
}

impl Caps {
    /// Caps in effect on the current thread.
    pub fn current() -> Caps {
        ACTIVE.with(|c| c.get())
    }

    /// Installs `self` for the current thread until replaced.
    pub fn install(self) {
        ACTIVE.with(|c| c.set(self));
    }

    /// Runs `f` with `self` installed, restoring the previous caps afterwards.
    pub fn scoped<T>(self, f: impl FnOnce() -> T) -> T {
        struct Restore(Caps);
        impl Drop for Restore {
            fn drop(&mut self) {
                ACTIVE.with(|c| c.set(self.0));
            }
        }
        let _restore = Restore(Caps::current());
        self.install();
        f()
    }

    pub(crate) fn check_group_order(requested: u128) -> Result<()> {
        let limit = Caps::current().group_order as u128;
        if requested > limit {
            return Err(Error::cap("group order", requested, limit));
        }
        Ok(())
    }

    pub(crate) fn check_subgroup_order(requested: u128) -> Result<()> {
        let limit = Caps::current().subgroup_order as u128;
        if requested > limit {
            return Err(Error::cap("subgroup enumeration order", requested, limit));
        }
        Ok(())
    }

    pub(crate) fn check_points(requested: u128) -> Result<()> {
        let limit = Caps::current().points as u128;
        if requested > limit {
            return Err(Error::cap("point count", requested, limit));
        }
        Ok(())
    }
}

impl fmt::Display for Caps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "group_order={},subgroup_order={},points={}",
            self.group_order, self.subgroup_order, self.points
        )
    }
}

/// Parses `key=value` pairs separated by commas, starting from the defaults.
/// Unknown keys are rejected.
impl FromStr for Caps {
    type Err = Error;

    fn from_str(s: &str) -> Result<Caps> {
        let mut caps = Caps::default();
        let mut pos = 0;
        for part in s.split(',') {
            let trimmed = part.trim();
            if !trimmed.is_empty() {
                let (key, value) = trimmed
                    .split_once('=')
                    .ok_or_else(|| Error::parse(pos, format!("expected key=value, got `{trimmed}`")))?;
                let value: u64 = value
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(pos, format!("invalid number `{value}`")))?;
                match key.trim() {
                    "group_order" => caps.group_order = value,
                    "subgroup_order" => caps.subgroup_order = value,
                    "points" => caps.points = value,
                    other => return Err(Error::parse(pos, format!("unknown cap `{other}`"))),
                }
            }
            pos += part.len() + 1;
        }
        Ok(caps)
    }
}
