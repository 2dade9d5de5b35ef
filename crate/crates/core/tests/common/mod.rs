//! Shared helpers for the integration and acceptance suites.

use hiv_dynamics::{ModelParams, State};
use rand::Rng;

/// Draws one parameter set from the published literature ranges. Ranges
/// spanning more than a decade are sampled log-uniformly; control costs
/// stay at the reference values.
pub fn draw_params<R: Rng>(rng: &mut R) -> ModelParams {
    let mut p = ModelParams::reference();
    for (name, lo, hi) in hiv_dynamics::params::LITERATURE_RANGES {
        let value = if lo == hi {
            lo
        } else if hi / lo > 10.0 {
            (rng.gen_range(lo.ln()..hi.ln())).exp()
        } else {
            rng.gen_range(lo..hi)
        };
        p = p.with_field(name, value).expect("known field");
    }
    p
}

/// A random nonnegative state with components below 10.
pub fn draw_state<R: Rng>(rng: &mut R) -> State {
    State::new(
        rng.gen_range(0.0..10.0),
        rng.gen_range(0.0..10.0),
        rng.gen_range(0.0..10.0),
        rng.gen_range(0.0..10.0),
        rng.gen_range(0.0..10.0),
    )
}
