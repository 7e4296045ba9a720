use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// End of a persistence interval. Classes that survive to the truncation
/// scale of the filtration are `Open(r_max)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Death {
    Finite(f64),
    Open { open_at: f64 },
}

impl Death {
    pub fn open(r_max: f64) -> Self {
        Death::Open { open_at: r_max }
    }

    /// The scale at which the interval ends, treating open deaths as ending
    /// at the truncation scale.
    pub fn value(&self) -> f64 {
        match *self {
            Death::Finite(d) => d,
            Death::Open { open_at } => open_at,
        }
    }

    pub fn is_open(&self) -> bool {
        matches!(self, Death::Open { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub dim: usize,
    pub birth: f64,
    pub death: Death,
}

impl Interval {
    pub fn finite(dim: usize, birth: f64, death: f64) -> Self {
        Interval {
            dim,
            birth,
            death: Death::Finite(death),
        }
    }

    pub fn open(dim: usize, birth: f64, r_max: f64) -> Self {
        Interval {
            dim,
            birth,
            death: Death::open(r_max),
        }
    }

    pub fn persistence(&self) -> f64 {
        self.death.value() - self.birth
    }

    /// Whether the class is alive at scale `t`, i.e. `birth <= t < death`
    /// (open intervals are alive up to and including their truncation scale).
    pub fn alive_at(&self, t: f64) -> bool {
        match self.death {
            Death::Finite(d) => self.birth <= t && t < d,
            Death::Open { open_at } => self.birth <= t && t <= open_at,
        }
    }
}

/// A multiset of persistence intervals.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Barcode {
    intervals: Vec<Interval>,
}

impl Barcode {
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        for iv in &intervals {
            let d = iv.death.value();
            if !(iv.birth.is_finite() && d.is_finite()) {
                return Err(Error::Schema("interval endpoints must be finite".into()));
            }
            if iv.birth < 0.0 || d < 0.0 {
                return Err(Error::Schema(format!("negative endpoint in {iv:?}")));
            }
            if iv.birth > d {
                return Err(Error::Schema(format!("birth after death in {iv:?}")));
            }
        }
        Ok(Barcode { intervals })
    }

    pub fn empty() -> Self {
        Barcode::default()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn in_dim(&self, dim: usize) -> Barcode {
        Barcode {
            intervals: self
                .intervals
                .iter()
                .copied()
                .filter(|i| i.dim == dim)
                .collect(),
        }
    }

    pub fn max_persistence(&self) -> f64 {
        self.intervals
            .iter()
            .map(Interval::persistence)
            .fold(0.0, f64::max)
    }

    /// Intervals whose persistence exceeds `threshold`.
    pub fn count_above(&self, threshold: f64) -> usize {
        self.intervals
            .iter()
            .filter(|i| i.persistence() > threshold)
            .count()
    }

    /// Replaces open deaths by finite deaths at their truncation scale.
    pub fn clip_open(&self) -> Barcode {
        Barcode {
            intervals: self
                .intervals
                .iter()
                .map(|i| Interval::finite(i.dim, i.birth, i.death.value()))
                .collect(),
        }
    }

    /// Number of intervals alive at scale `t`.
    pub fn rank_at(&self, t: f64) -> usize {
        self.intervals.iter().filter(|i| i.alive_at(t)).count()
    }

    /// Canonical ordering: by dimension, birth, death, finite before open.
    pub fn sorted(&self) -> Barcode {
        let mut intervals = self.intervals.clone();
        intervals.sort_by(|a, b| {
            a.dim
                .cmp(&b.dim)
                .then(a.birth.total_cmp(&b.birth))
                .then(a.death.is_open().cmp(&b.death.is_open()))
                .then(a.death.value().total_cmp(&b.death.value()))
        });
        Barcode { intervals }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn open_death_serializes_as_object() {
        let b = Barcode::new(vec![
            Interval::finite(1, 1.0, 2.0),
            Interval::open(0, 0.0, 3.5),
        ])
        .unwrap();
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(
            s,
            r#"[{"dim":1,"birth":1.0,"death":2.0},{"dim":0,"birth":0.0,"death":{"open_at":3.5}}]"#
        );
        let back: Barcode = serde_json::from_str(&s).unwrap();
        assert_eq!(back, b);
    }

    #[test]
    fn rejects_inverted_interval() {
        assert!(Barcode::new(vec![Interval::finite(0, 2.0, 1.0)]).is_err());
    }
}
