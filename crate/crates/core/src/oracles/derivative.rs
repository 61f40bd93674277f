use crate::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Richardson {
    #[default]
    Off,
    /// Combine steps `h` and `h/2` to cancel the `O(h²)` error.
    On,
}

/// Centered difference `(f(t + h) − f(t − h))/2h`, optionally Richardson-extrapolated.
pub fn numerical_time_derivative(f: impl Fn(f64) -> f64, t: f64, h: f64, richardson: Richardson) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidStep(h));
    }
    // divide by the spacing actually represented, not the nominal 2h
    let central = |h: f64| {
        let (hi, lo) = (t + h, t - h);
        (f(hi) - f(lo)) / (hi - lo)
    };
    Ok(match richardson {
        Richardson::Off => central(h),
        Richardson::On => {
            let coarse = central(h);
            let fine = central(0.5 * h);
            (4.0 * fine - coarse) / 3.0
        }
    })
}
