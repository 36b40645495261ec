use superell_core::output::OutputDocument;
use superell_web::{psi_table_json, reduce_json, snf_text};

#[test]
fn reduce_matches_core() {
    let doc = OutputDocument::from_json(&reduce_json("quadratic", "x^2").unwrap()).unwrap();
    assert_eq!(doc.dimension, 3);
    assert_eq!(doc.rows[0].class.omega(2).to_string(), "-1/2 + 3*a^2/2");
    let doc = OutputDocument::from_json(&reduce_json("1, 0, -2*a, 0, 1", "u").unwrap()).unwrap();
    assert!(doc.rows[0].class.is_zero());
}

#[test]
fn psi_table_shape() {
    let doc = OutputDocument::from_json(&psi_table_json("quartic", 2, 3).unwrap()).unwrap();
    assert_eq!(doc.rows.len(), 14);
    assert_eq!(doc.dimension, 5);
    assert!(psi_table_json("quadratic", 100, 100).is_err());
}

#[test]
fn snf_values_and_errors() {
    assert_eq!(snf_text(2, 1, 2, 4, 2).unwrap(), "6");
    assert!(snf_text(3, 1, 1, 3, 2).is_err());
    assert!(reduce_json("cubic", "x").is_err());
    assert!(reduce_json("quadratic", "x^^2").is_err());
}
