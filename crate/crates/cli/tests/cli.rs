use orbistar_cli::{parse_expression, run_command, CommandOutput, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
use orbistar_core::{OrbifoldElement, Scalar, Term};
use proptest::prelude::*;

fn run(args: &[&str]) -> CommandOutput {
    run_command(std::iter::once("orbistar").chain(args.iter().copied()))
}

#[test]
fn prod_of_generators() {
    let out = run(&["prod", "y1", "y2"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "y1*y2 - h - u*R\n");
    let rev = run(&["prod", "y2", "y1"]);
    assert_eq!(rev.stdout, "y1*y2 + h + u*R\n");
}

#[test]
fn substitution_flags() {
    let out = run(&["prod", "y1", "y2", "--hbar", "1/2", "--u", "3"]);
    assert_eq!(out.stdout, "-1/2 - 3*R + y1*y2\n");
    let out = run(&["dunkl", "w", "wb", "--u", "2"]);
    assert_eq!(out.stdout, "R + w*wb\n");
    assert_eq!(run(&["prod", "y1", "y2", "--u", "x"]).code, EXIT_USAGE);
}

#[test]
fn localize_single_variable() {
    let out = run(&["localize", "--form", "1"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "(1)e^{1} + (-1)e^{0}\n");
    let bad = run(&["localize", "--form", "1,-1"]);
    assert_eq!(bad.code, EXIT_USAGE);
    assert!(bad.stderr.contains("degenerate"));
}

#[test]
fn verify_suites_exit_zero() {
    for suite in ["assoc", "cocycle", "cocycle0", "second-order", "casimir", "projectors"] {
        let out = run(&["verify", suite, "--max-degree", "3"]);
        assert_eq!(out.code, EXIT_OK, "{suite}: {}", out.stdout);
    }
    assert_eq!(run(&["verify", "assoc", "--max-degree", "4"]).code, EXIT_OK);
    assert_eq!(run(&["verify", "pbw"]).code, EXIT_OK);
}

#[test]
fn json_is_deterministic() {
    let args = ["prod", "y1^2 + R", "3/2*y2*y1 - u", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    let first = &v.as_array().unwrap()[0];
    let keys: Vec<&str> = first.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert_eq!(keys.len(), 6);
    assert!(first["coeff"].as_str().unwrap().contains('/'));
}

#[test]
fn dunkl_json_fields() {
    let out = run(&["dunkl", "w", "wb", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let last = v.as_array().unwrap().last().unwrap().clone();
    assert_eq!(last["coeff"], "1/2");
    assert_eq!(last["u_pow"], 1);
    assert_eq!(last["r_pow"], 1);
    assert_eq!(last["w_pow"], 0);
}

#[test]
fn phi_and_mn_agree() {
    let a = run(&["phi", "2", "y1^2*y2", "y2^2"]);
    let b = run(&["mn", "y1^2*y2", "y2^2", "1", "1"]);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["phi", "2", "y1^2*y2", "y2^2", "--param", "hpt"]);
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(run(&["phi", "1", "y1*R", "y2"]).code, EXIT_USAGE);
}

#[test]
fn casimir_products_agree_at_u_zero() {
    let star = run(&["casimir", "--product", "star"]);
    let pbw = run(&["casimir", "--product", "pbw"]);
    assert_eq!(star.stdout, "-3/4*h^2\n");
    let circle = run(&["casimir", "--product", "circle"]);
    assert_eq!(pbw.stdout, circle.stdout);
    let circle0 = run(&["casimir", "--u", "0"]);
    assert_eq!(circle0.stdout, star.stdout);
}

#[test]
fn usage_errors() {
    assert_eq!(run(&[]).code, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(run(&["prod", "y1"]).code, EXIT_USAGE);
    assert_eq!(run(&["prod", "y1 y2", "1"]).code, EXIT_USAGE);
    assert_eq!(run(&["prod", "y1^-1", "1"]).code, EXIT_USAGE);
    assert_eq!(run(&["prod", "w", "1"]).code, EXIT_USAGE);
    assert_eq!(run(&["dunkl", "y1", "w"]).code, EXIT_USAGE);
    assert_eq!(run(&["--help"]).code, EXIT_OK);
    assert_eq!(run(&["prod", "-h", "-y1"]).stdout, "h*y1\n");
    assert_eq!(run(&["localize", "--form", "-1,2"]).code, EXIT_OK);
}

#[test]
fn degree_cap_from_environment() {
    std::env::set_var("ORBISTAR_MAX_DEGREE", "2");
    let out = run(&["verify", "assoc", "--max-degree", "9"]);
    let uncapped = run(&["verify", "assoc"]);
    std::env::remove_var("ORBISTAR_MAX_DEGREE");
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stderr.contains("capped at 2"));
    assert_eq!(out.stdout, uncapped.stdout);
    assert_ne!(EXIT_FAILURE, EXIT_OK);
}

fn arb_element() -> impl Strategy<Value = OrbifoldElement> {
    let term = (-20i64..20, 1i64..6, 0u32..3, 0u32..3, 0u32..4, 0u32..4, 0u32..2).prop_map(
        |(n, d, h, u, a, b, r)| Term {
            coeff: Scalar::new(n, d),
            hbar_pow: h,
            u_pow: u,
            y1_pow: a,
            y2_pow: b,
            r_pow: r,
        },
    );
    prop::collection::vec(term, 0..6).prop_map(OrbifoldElement::from_terms)
}

proptest! {
    #[test]
    fn print_parse_round_trip(x in arb_element()) {
        let text = x.to_string();
        let back = parse_expression(&text).unwrap().to_element().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn command_output_round_trips(a in arb_element(), b in arb_element()) {
        let out = run(&["prod", &a.to_string(), &b.to_string()]);
        prop_assert_eq!(out.code, EXIT_OK);
        let parsed = parse_expression(out.stdout.trim()).unwrap().to_element().unwrap();
        prop_assert_eq!(parsed.to_string(), out.stdout.trim());
    }
}
