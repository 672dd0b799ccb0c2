use crate::error::{Error, Result};

/// Zeroth-order Bessel function of the first kind, accurate to a few ulp.
///
/// Correlation matrices built from it must stay positive semidefinite to
/// roundoff, which rules out the usual 1e-7 asymptotic shortcuts.
pub fn bessel_j0(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("bessel_j0 of non-finite argument {x}")));
    }
    Ok(libm::j0(x.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: plain power series with `terms` terms, each term
    /// computed from scratch.
    fn power_series(x: f64, terms: u32) -> f64 {
        (0..terms)
            .map(|k| {
                let fact: f64 = (1..=k).map(f64::from).product();
                (-1f64).powi(k as i32) * (x / 2.0).powi(2 * k as i32) / (fact * fact)
            })
            .sum()
    }

    #[test]
    fn value_at_zero() {
        assert_eq!(bessel_j0(0.0).unwrap(), 1.0);
    }

    #[test]
    fn oracle_values() {
        let z = power_series(2.404826, 30);
        assert!(z.abs() < 1e-6, "oracle root {z}");
        assert!((bessel_j0(2.404826).unwrap() - z).abs() < 1e-6);
        assert!(bessel_j0(2.404826).unwrap().abs() < 1e-6);

        let one = power_series(1.0, 30);
        assert!((one - 0.7651977).abs() < 1e-6);
        assert!((bessel_j0(1.0).unwrap() - 0.7651977).abs() < 1e-6);
    }

    #[test]
    fn matches_forty_term_series_on_zero_to_eight() {
        for i in 0..=800 {
            let x = i as f64 * 0.01;
            let want = power_series(x, 40);
            let got = bessel_j0(x).unwrap();
            assert!((got - want).abs() < 1e-12, "x={x}: {got} vs {want}");
            assert!(got.abs() <= 1.0);
        }
    }

    #[test]
    fn known_values_far_out() {
        // Reference values from an arbitrary-precision evaluation.
        let cases = [
            (10.0, -0.245_935_764_451),
            (20.0, 0.167_024_664_341),
            (29.8, -0.108_313_717_581_104),
            (50.0, 0.055_812_327_669_252),
            (100.0, 0.019_985_850_304_223_1),
        ];
        for (x, want) in cases {
            let got = bessel_j0(x).unwrap();
            assert!((got - want).abs() < 1e-11, "x={x}: {got} vs {want}");
        }
    }

    #[test]
    fn even_function() {
        for x in [0.3, 4.0, 9.5, 31.0] {
            assert_eq!(bessel_j0(x).unwrap(), bessel_j0(-x).unwrap());
        }
    }

    #[test]
    fn rejects_non_finite() {
        assert!(bessel_j0(f64::NAN).is_err());
        assert!(bessel_j0(f64::INFINITY).is_err());
    }
}
