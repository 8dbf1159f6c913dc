use std::path::PathBuf;
use std::process::{Command, Output};

use jsonschema::{Resource, Validator};
use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jumploci"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn schema(name: &str) -> Value {
    let p: PathBuf = [
        env!("CARGO_MANIFEST_DIR"),
        "schemas",
        &format!("{name}.schema.json"),
    ]
    .iter()
    .collect();
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn validator(name: &str) -> Validator {
    let brieskorn = Resource::from_contents(schema("brieskorn")).unwrap();
    jsonschema::options()
        .with_resource("urn:jumploci:schema:brieskorn", brieskorn)
        .build(&schema(name))
        .unwrap()
}

fn assert_valid(name: &str, v: &Value) {
    let val = validator(name);
    let errors: Vec<String> = val.iter_errors(v).map(|e| e.to_string()).collect();
    assert!(
        errors.is_empty(),
        "{name} schema violations: {errors:?}\n{v:#}"
    );
}

#[test]
fn brieskorn_336_example() {
    let v = json_ok(&["brieskorn", "3,3,6"]);
    assert_eq!(v["components"], 3);
    assert_eq!(v["dim"], 2);
    assert_eq!(v["seifert"]["euler"], "-3/2");
    assert_valid("brieskorn", &v);
}

#[test]
fn alex_trefoil_example() {
    let v = json_ok(&["alex", &data("trefoil.grp")]);
    assert_eq!(v["delta"], "t^2 - t + 1");
    assert_eq!(v["almost_principal"]["consistent"], true);
    assert_valid("alex", &v);
}

#[test]
fn classify_t3_example() {
    let v = json_ok(&["classify", &data("t3.form")]);
    assert_eq!(v["class"], "ZxSurface");
    assert_eq!(v["g"], 1);
    assert_eq!(v["corank"], 1);
    assert_valid("classify", &v);
}

#[test]
fn outputs_match_schemas() {
    for f in ["trefoil.grp", "z2.grp", "figure8.grp", "surface2.json"] {
        assert_valid("alex", &json_ok(&["alex", &data(f), "--ideals", "1,2"]));
        assert_valid("charvar", &json_ok(&["charvar", &data(f), "--trials", "5"]));
    }
    for f in ["t3.form", "product_g2.form", "zero4.form"] {
        assert_valid("classify", &json_ok(&["classify", &data(f)]));
        assert_valid(
            "holonomy",
            &json_ok(&["holonomy", &data(f), "--degree", "3"]),
        );
    }
    assert_valid("holonomy", &json_ok(&["holonomy", &data("surface2.rel")]));
    assert_valid(
        "brieskorn_sweep",
        &json_ok(&["brieskorn", "sweep", "--max", "12", "--n", "3,4"]),
    );
}

#[test]
fn randomized_r1_echoes_seed_and_trials() {
    let v = json_ok(&[
        "classify",
        &data("product_g2.form"),
        "--symbolic-threshold",
        "3",
        "--seed",
        "11",
        "--trials",
        "7",
    ]);
    assert_eq!(v["r1"]["mode"], "randomized");
    assert_eq!(v["r1"]["seed"], 11);
    assert_eq!(v["r1"]["trials"], 7);
    assert_eq!(v["class"], "ZxSurface");
    assert_valid("classify", &v);
}

#[test]
fn charvar_explicit_characters() {
    let v = json_ok(&["charvar", &data("z2.grp"), "-c", "2:1,0", "-c", "6:1,5"]);
    assert!(v["sampled"].is_null());
    assert_eq!(v["results"].as_array().unwrap().len(), 2);
    assert_eq!(v["all_agree"], true);
}

#[test]
fn errors_are_structured() {
    let dir = std::env::temp_dir().join(format!("jumploci-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.grp");
    std::fs::write(&bad, "<x | x^>").unwrap();
    let cases: Vec<(Vec<String>, &str)> = vec![
        (vec!["alex".into(), bad.to_string_lossy().into()], "parse"),
        (
            vec!["alex".into(), dir.join("missing").to_string_lossy().into()],
            "io",
        ),
        (vec!["brieskorn".into(), "3,1,2".into()], "invalid_input"),
        (
            vec![
                "holonomy".into(),
                data("t3.form"),
                "--degree".into(),
                "9".into(),
            ],
            "degree_cap",
        ),
    ];
    for (args, kind) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let v: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
        assert_eq!(v["error"]["kind"], kind, "{v}");
        assert_valid("error", &v);
    }
    let out = run(&["alex", &bad.to_string_lossy()]);
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"]["offset"], 7);
}

#[test]
fn csv_and_text_formats() {
    let out = run(&[
        "brieskorn",
        "sweep",
        "--max",
        "4",
        "--n",
        "3",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "exponents,status,genus,euler,orbits,torsion_order,fiber_class_order,alpha,components,dim,translated,one_formal,tangent_cone_holds"
    );
    assert_eq!(lines.next().unwrap().split(',').next(), Some("2 2 2"));
    assert_eq!(text.lines().count(), 1 + 10);
    let out = run(&["holonomy", &data("surface2.rel"), "--format", "text"]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("degree 2: 5"));
}
