use std::fmt;

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Parameters shared by the sweeping subcommands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub m_min: i64,
    pub m_max: i64,
    pub mod3: Option<u8>,
    pub squarefree_only: bool,
    pub jobs: usize,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl SweepConfig {
    pub fn new(
        m_min: i64,
        m_max: i64,
        mod3: Option<u8>,
        jobs: usize,
        format: Format,
    ) -> Result<Self, ConfigError> {
        if m_min > m_max {
            return Err(ConfigError(format!("--min {m_min} exceeds --max {m_max}")));
        }
        if jobs == 0 {
            return Err(ConfigError("--jobs must be at least 1".into()));
        }
        if matches!(mod3, Some(r) if r > 2) {
            return Err(ConfigError("--mod3 must be 0, 1 or 2".into()));
        }
        Ok(Self {
            m_min,
            m_max,
            mod3,
            squarefree_only: true,
            jobs,
            format,
        })
    }

    /// Odd `m` in range passing the residue filter, ascending.
    pub fn parameters(&self) -> Vec<i64> {
        (self.m_min..=self.m_max)
            .filter(|m| m % 2 != 0)
            .filter(|m| self.mod3.is_none_or(|r| m.rem_euclid(3) == r as i64))
            .collect()
    }

    pub fn pool(&self) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .expect("thread pool")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_ranges() {
        assert!(SweepConfig::new(5, 1, None, 1, Format::Csv).is_err());
        assert!(SweepConfig::new(1, 5, None, 0, Format::Csv).is_err());
        assert!(SweepConfig::new(1, 5, Some(3), 1, Format::Csv).is_err());
    }

    #[test]
    fn parameters_are_odd_and_filtered() {
        let c = SweepConfig::new(-7, 7, Some(1), 1, Format::Csv).unwrap();
        assert_eq!(c.parameters(), vec![-5, 1, 7]);
        let c = SweepConfig::new(2, 2, None, 1, Format::Csv).unwrap();
        assert!(c.parameters().is_empty());
    }
}
