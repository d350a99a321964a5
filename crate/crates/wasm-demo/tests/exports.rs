use loewner_lab_wasm::{hypothesis_window, power_difference, ratio_curve};
use serde_json::Value;

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.unwrap()).unwrap()
}

#[test]
fn ratio_curve_for_the_square() {
    let v = parse(ratio_curve("power:2", 1.0, 2.0, 101));
    assert!((v["big_k"].as_f64().unwrap() - 1.125).abs() < 1e-10);
    let ratio = v["ratio"].as_array().unwrap();
    assert_eq!(ratio.len(), 101);
    assert!((ratio[0].as_f64().unwrap() - 1.0).abs() < 1e-15);
    assert!(ratio.iter().all(|r| r.as_f64().unwrap() <= 1.125 + 1e-12));
    assert!(ratio_curve("power:2", 2.0, 1.0, 10).is_err());
    assert!(ratio_curve("nope", 1.0, 2.0, 10).is_err());
}

#[test]
fn hypothesis_window_for_separated_spectra() {
    let s2 = 2f64.sqrt();
    let s5 = 5f64.sqrt();
    let v = parse(hypothesis_window(
        4.0 - s2,
        4.0 + s2,
        (19.0 - s5) / 2.0,
        (19.0 + s5) / 2.0,
        99,
    ));
    let v_grid = v["v"].as_array().unwrap();
    let margin = v["margin"].as_array().unwrap();
    let mid = v_grid
        .iter()
        .position(|x| (x.as_f64().unwrap() - 0.5).abs() < 1e-12)
        .unwrap();
    assert!(margin[mid].as_f64().unwrap() > 0.0);
    assert!(margin[0].as_f64().unwrap() < 0.0);
    assert_eq!(v["all_weights"], Value::Bool(false));
}

#[test]
fn power_difference_reproduces_the_cubic_counterexample() {
    let v = parse(power_difference(
        &[1.0, 1.0, 1.0, 1.0],
        &[3.0, 1.0, 1.0, 1.0],
        3.0,
    ));
    assert_eq!(
        v["difference"],
        serde_json::json!([[12.0, 2.0], [2.0, 0.0]])
    );
    assert_eq!(v["relation"], "Incomparable");
    assert!((v["min_eig"].as_f64().unwrap() - (6.0 - 40f64.sqrt())).abs() < 1e-9);
    assert_eq!(v["holds"], Value::Bool(false));
    assert!(power_difference(&[1.0, 2.0, 3.0], &[1.0, 0.0, 0.0], 2.0).is_err());
}
