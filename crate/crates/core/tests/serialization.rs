use ore_core::{chain_certificate, decide_diamond, normalize, DerivationSpec, Poly, Scalar};
use serde_json::json;

#[test]
fn chain_certificate_shape() {
    let cert = chain_certificate(&Poly::x(), &Scalar::one(), 2).unwrap();
    let v = serde_json::to_value(&cert).unwrap();
    assert_eq!(v["f"], "x");
    assert_eq!(v["alpha"], "1");
    assert_eq!(v["ideal_generator"], "(x - 1)*t");
    assert_eq!(
        v["links"],
        json!([
            { "j": 1, "generator": "x", "stability_cofactor": "1", "closure": "x", "next_divides": false },
            { "j": 2, "generator": "x^2", "stability_cofactor": "2", "closure": "x^2", "next_divides": null },
        ])
    );
}

#[test]
fn verdict_shape() {
    let spec = DerivationSpec::new(Scalar::zeta(3).unwrap(), Scalar::zero(), Poly::zero()).unwrap();
    let v = serde_json::to_value(decide_diamond(&spec).unwrap()).unwrap();
    assert_eq!(
        v,
        json!({
            "satisfied": true,
            "reason": { "code": "root_of_unity", "order": 3 },
            "normal_form": { "kind": "quantum_plane", "q": "zeta(3)" },
        })
    );
}

#[test]
fn iso_data_shape() {
    let spec = DerivationSpec::new(Scalar::from_int(2), Scalar::from_int(2), Poly::one()).unwrap();
    let v = serde_json::to_value(normalize(&spec).unwrap()).unwrap();
    assert_eq!(v["normal_form"]["kind"], "quantum_weyl");
    assert_eq!(v["iso"]["x_new"], "x + 2");
    assert_eq!(v["iso"]["y_new"], "t");
}
