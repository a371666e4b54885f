//! Parallel campaign driver. Trials are keyed on (seed, trial index) and
//! collected in index order before reduction, so this path is
//! bit-identical to `hpm_core::montecarlo::run_campaign`.

use hpm_core::montecarlo::{run_trial, CampaignParams, McAccumulator, McSummary, TrialRecord};
use rayon::prelude::*;

pub fn run_campaign_parallel(
    params: &CampaignParams,
    range_m: f64,
    n_trials: u64,
    seed: u64,
) -> hpm_core::Result<McSummary> {
    let records = (0..n_trials)
        .into_par_iter()
        .map(|i| run_trial(params, range_m, seed, i))
        .collect::<hpm_core::Result<Vec<TrialRecord>>>()?;
    let mut acc = McAccumulator::new();
    for record in &records {
        acc.push(record);
    }
    acc.finish(seed, params.variant)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hpm_core::montecarlo::run_campaign;

    #[test]
    fn parallel_matches_serial_bitwise() {
        let params = CampaignParams::published_default();
        let serial = run_campaign(&params, 30.0, 5000, 42).unwrap();
        let parallel = run_campaign_parallel(&params, 30.0, 5000, 42).unwrap();
        assert_eq!(serial, parallel);
    }
}
