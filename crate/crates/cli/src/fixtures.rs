//! Built-in fixtures: the worked 2×2 examples and their printed values.

use loewner_lab::hypotheses::thm1_condition;
use loewner_lab::spectral::spectral_interval;
use loewner_lab::{Relation, Suite, SymMatrix};
use serde::Serialize;

use crate::Failure;

/// Printed values carry 3–4 significant digits.
pub const DEFAULT_FIXTURE_TOLERANCE: f64 = 5e-3;
/// Tolerance for closed-form spectra, independent of `--tolerance`.
const EXACT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Serialize)]
pub struct Fixture {
    pub name: String,
    /// Largest entrywise relative error against the printed matrix.
    pub max_error: f64,
    pub tolerance: f64,
    pub expected: Option<Vec<Vec<f64>>>,
    pub computed: Option<Vec<Vec<f64>>>,
    pub passed: bool,
    pub details: Vec<String>,
}

fn m(rows: &[[f64; 2]; 2]) -> SymMatrix {
    SymMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
        .expect("fixture matrices are symmetric")
}

fn example_27() -> (SymMatrix, SymMatrix) {
    (
        m(&[[3.0, 1.0], [1.0, 5.0]]),
        m(&[[10.0, -1.0], [-1.0, 9.0]]),
    )
}

fn example_28() -> (SymMatrix, SymMatrix) {
    (m(&[[1.0, 1.0], [1.0, 1.0]]), m(&[[3.0, 1.0], [1.0, 1.0]]))
}

fn relative_error(computed: &SymMatrix, expected: &[[f64; 2]; 2]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, row) in expected.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let c = computed.get(i, j);
            let err = if *e == 0.0 {
                c.abs()
            } else {
                ((c - e) / e).abs()
            };
            worst = worst.max(err);
        }
    }
    worst
}

fn power_fixture(
    name: &str,
    r: f64,
    expected: [[f64; 2]; 2],
    tolerance: f64,
    suite: &Suite,
) -> Result<Fixture, Failure> {
    let (a, b) = example_27();
    let report = suite.check_power(r, &a, &b)?;
    let diff = report.rhs.sub(&report.lhs)?;
    let max_error = relative_error(&diff, &expected);
    let psd_nonzero = report.verdict.relation == Relation::GreaterOrEqual;
    Ok(Fixture {
        name: name.into(),
        max_error,
        tolerance,
        expected: Some(expected.iter().map(|r| r.to_vec()).collect()),
        computed: Some(diff.rows()),
        passed: max_error <= tolerance && psd_nonzero,
        details: vec![format!(
            "difference is {:?} (min eig {:e})",
            report.verdict.relation, report.verdict.min_eig_of_difference
        )],
    })
}

fn example_28_fixture(tolerance: f64, suite: &Suite) -> Result<Fixture, Failure> {
    let (a, b) = example_28();
    let (s2, s5) = (2f64.sqrt(), 5f64.sqrt());
    let mid = a.lin_comb(0.5, &b, 0.5)?;
    let spectra = [
        ("τ(A)", spectral_interval(&a)?, (0.0, 2.0)),
        ("τ(B)", spectral_interval(&b)?, (2.0 - s2, 2.0 + s2)),
        (
            "τ((A+B)/2)",
            spectral_interval(&mid)?,
            ((3.0 - s5) / 2.0, (3.0 + s5) / 2.0),
        ),
    ];
    let mut details = Vec::new();
    let mut spectra_ok = true;
    for (name, got, (lo, hi)) in spectra {
        let err = (got.lo - lo).abs().max((got.hi - hi).abs());
        spectra_ok &= err <= EXACT_TOLERANCE;
        details.push(format!("{name} = [{}, {}] (error {err:e})", got.lo, got.hi));
    }
    let report = suite.check_power(3.0, &a, &b)?;
    let diff = report.rhs.sub(&report.lhs)?;
    let expected = [[12.0, 2.0], [2.0, 0.0]];
    let max_error = relative_error(&diff, &expected);
    let hypothesis_failed = report.hypothesis_holds() == Some(false);
    let min_eig = report.verdict.min_eig_of_difference;
    let min_eig_ok = (min_eig - (6.0 - 40f64.sqrt())).abs() <= 1e-9;
    let violated = report.verdict.relation == Relation::Incomparable;
    details.push(format!(
        "hypothesis {}; difference {:?}, min eig {min_eig} (6 - √40 = {})",
        if hypothesis_failed { "fails" } else { "holds" },
        report.verdict.relation,
        6.0 - 40f64.sqrt()
    ));
    Ok(Fixture {
        name: "example 2.8, r = 3".into(),
        max_error,
        tolerance,
        expected: Some(expected.iter().map(|r| r.to_vec()).collect()),
        computed: Some(diff.rows()),
        passed: spectra_ok && max_error <= tolerance && hypothesis_failed && min_eig_ok && violated,
        details,
    })
}

fn example_27_hypothesis_fixture(tolerance: f64, suite: &Suite) -> Result<Fixture, Failure> {
    let (a, b) = example_27();
    let midpoint = suite
        .check_power(2.0, &a, &b)?
        .hypothesis
        .expect("power reports its hypothesis");
    let (ta, tb) = (spectral_interval(&a)?, spectral_interval(&b)?);
    let mean = thm1_condition(ta, tb, 0.5)?;
    Ok(Fixture {
        name: "example 2.7, spectral hypotheses".into(),
        max_error: 0.0,
        tolerance,
        expected: None,
        computed: None,
        passed: midpoint.holds && mean.holds,
        details: vec![
            format!(
                "τ(A) = [{}, {}], τ(B) = [{}, {}]",
                ta.lo, ta.hi, tb.lo, tb.hi
            ),
            format!("{}: margin {}", midpoint.condition_name, midpoint.margin),
            format!("{} at v = 1/2: margin {}", mean.condition_name, mean.margin),
        ],
    })
}

pub fn run(tolerance: f64, suite: &Suite) -> Result<Vec<Fixture>, Failure> {
    Ok(vec![
        power_fixture(
            "example 2.7(i), r = 6",
            6.0,
            [[985931.21, -476992.0], [-476992.0, 433279.0]],
            tolerance,
            suite,
        )?,
        power_fixture(
            "example 2.7(ii), r = -2",
            -2.0,
            [[0.0956, -0.0384], [-0.0384, 0.0229]],
            tolerance,
            suite,
        )?,
        power_fixture(
            "example 2.7(iii), r = 1/3",
            1.0 / 3.0,
            [[0.1519, -0.061], [-0.061, 0.0486]],
            tolerance,
            suite,
        )?,
        example_28_fixture(tolerance, suite)?,
        example_27_hypothesis_fixture(tolerance, suite)?,
    ])
}
