use galois_core::numeric::Precision;
use galois_core::radical::SolveConfig;
use galois_core::resolvent::MembershipConfig;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum PrecisionArg {
    Standard,
    Extended,
}

impl From<PrecisionArg> for Precision {
    fn from(p: PrecisionArg) -> Self {
        match p {
            PrecisionArg::Standard => Precision::Standard,
            PrecisionArg::Extended => Precision::Extended,
        }
    }
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub precision: Precision,
    pub tolerance: f64,
    /// Half-width of the Gaussian-integer sample box for membership tests.
    pub box_half_width: i64,
    pub max_retries: usize,
    pub output: OutputFormat,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            precision: Precision::Extended,
            tolerance: 1e-9,
            box_half_width: 2,
            max_retries: 5,
            output: OutputFormat::Text,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(format!("tolerance must be positive, got {}", self.tolerance));
        }
        if self.max_retries < 1 {
            return Err("retry limit must be at least 1".into());
        }
        if self.box_half_width < 1 {
            return Err(format!("sample box half-width must be at least 1, got {}", self.box_half_width));
        }
        Ok(())
    }

    pub fn membership(&self) -> MembershipConfig {
        MembershipConfig {
            precision: self.precision,
            seed: self.seed,
            max_retries: self.max_retries,
            box_half_width: self.box_half_width,
            ..MembershipConfig::default()
        }
    }

    pub fn solve_config(&self) -> SolveConfig {
        SolveConfig { precision: self.precision, tolerance: self.tolerance, membership: self.membership() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(RunConfig::default().validate().is_ok());
        let bad = RunConfig { tolerance: 0.0, ..RunConfig::default() };
        assert!(bad.validate().is_err());
        let bad = RunConfig { max_retries: 0, ..RunConfig::default() };
        assert!(bad.validate().is_err());
        let bad = RunConfig { tolerance: f64::NAN, ..RunConfig::default() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn membership_inherits_settings() {
        let cfg = RunConfig { seed: 7, box_half_width: 3, precision: Precision::Standard, ..RunConfig::default() };
        let m = cfg.membership();
        assert_eq!((m.seed, m.box_half_width, m.precision), (7, 3, Precision::Standard));
        assert!(m.escalate);
    }
}
