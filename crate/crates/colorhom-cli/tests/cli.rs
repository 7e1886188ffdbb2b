use std::path::PathBuf;
use std::process::Command;

use colorhom_cli::format::{load_document, parse_document, serialize_workspace};
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).display().to_string()
}

struct Run {
    code: i32,
    json: Value,
    stdout: String,
    stderr: String,
}

fn colorhom(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_colorhom"));
    cmd.args(args).env_remove("COLORHOM_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    Run {
        code: out.status.code().unwrap(),
        json: serde_json::from_str(&stdout).unwrap_or(Value::Null),
        stdout,
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

const SHIPPED: [&str; 5] = ["sl2c_z2z2.alg", "sl2c_z2z3.alg", "motion_z2z3.alg", "sl2_morphisms.alg", "qdiff_x3.alg"];

#[test]
fn validate_twisted_sl2c_passes() {
    let r = colorhom(&["validate", &data("sl2c_z2z2.alg")], &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json["schema"], 1);
    assert_eq!(r.json["pass"], true);
    let c = &r.json["result"]["algebras"]["sl2c"];
    assert_eq!(c["color_hom_lie"], true);
    assert_eq!(c["multiplicative"], true);
    assert!(r.stderr.starts_with("validate PASS"));
}

#[test]
fn cohomology_report_matches_library() {
    let r = colorhom(&["cohomology", &data("sl2c_z2z2.alg"), "--n", "2", "--r", "0"], &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let ws = load_document(data("sl2c_z2z2.alg").as_ref()).unwrap();
    let a = ws.algebra("sl2c").unwrap();
    let m = colorhom::representation::adjoint(a);
    let degrees = r.json["result"]["degrees"].as_array().unwrap();
    assert_eq!(degrees.len(), 4);
    for (d, g) in degrees.iter().zip(a.eps().group().elements()) {
        let h = colorhom::cohomology::cohomology_group(a, &m, 2, 0, &g).unwrap();
        assert_eq!(d["gamma"], g.to_string());
        assert_eq!(d["dim_z"], h.dim_z());
        assert_eq!(d["dim_b"], h.dim_b());
        assert_eq!(d["dim_h"], h.dim_h());
        assert_eq!(d["delta_squared_zero"], true);
    }
}

#[test]
fn single_degree_selection() {
    let r = colorhom(&["cohomology", &data("sl2c_z2z2.alg"), "--n", "1", "--gamma", "1,1"], &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json["result"]["degrees"].as_array().unwrap().len(), 1);
    assert_eq!(r.json["result"]["degrees"][0]["gamma"], "(1,1)");
}

#[test]
fn unknown_flag_is_usage_error() {
    let r = colorhom(&["validate", "--bogus", &data("sl2c_z2z2.alg")], &[]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
    let r = colorhom(&["frobnicate"], &[]);
    assert_eq!(r.code, 2);
}

#[test]
fn help_exits_zero() {
    let r = colorhom(&["--help"], &[]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("cohomology"));
}

#[test]
fn missing_file_is_usage_error() {
    let r = colorhom(&["validate", "/nonexistent/x.alg"], &[]);
    assert_eq!(r.code, 2);
    assert!(r.json["error"].as_str().unwrap().contains("/nonexistent/x.alg"));
}

#[test]
fn malformed_scalar_reports_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(data("sl2c_z2z2.alg")).unwrap().replace("\"e2 = \\\"-1\\\"\"", "");
    let text = text.replace("{ e2 = \"-1\" }", "{ e2 = \"1//2\" }");
    let path = dir.path().join("bad.alg");
    std::fs::write(&path, &text).unwrap();
    let line = text.lines().position(|l| l.contains("1//2")).unwrap() + 1;
    let col = text.lines().nth(line - 1).unwrap().find("\"1//2\"").unwrap() + 1;
    let r = colorhom(&["validate", path.to_str().unwrap()], &[]);
    assert_eq!(r.code, 2);
    let msg = r.json["error"].as_str().unwrap();
    assert!(msg.contains(&format!(":{line}:{col}:")), "{msg}");
}

#[test]
fn strict_turns_validation_failure_into_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    // a twist that is not a morphism breaks Hom-Jacobi
    let text = std::fs::read_to_string(data("sl2c_z2z2.alg"))
        .unwrap()
        .replace("[\"-1\", \"0\", \"0\"],\n  [\"0\", \"-1\", \"0\"]", "[\"-1\", \"1\", \"0\"],\n  [\"0\", \"-1\", \"0\"]");
    let path = dir.path().join("broken.alg");
    std::fs::write(&path, &text).unwrap();
    let p = path.to_str().unwrap();
    let r = colorhom(&["validate", p], &[]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json["result"]["algebras"]["sl2c"]["checks"]["jacobi"]["pass"], false);
    let lenient = colorhom(&["structure", p, "--kind", "der"], &[]);
    assert_eq!(lenient.code, 0, "{}", lenient.stderr);
    let strict = colorhom(&["--strict", "structure", p, "--kind", "der"], &[]);
    assert_eq!(strict.code, 1);
}

#[test]
fn budget_environment_override() {
    let f = data("sl2c_z2z3.alg");
    let r = colorhom(&["twists", &f], &[("COLORHOM_BUDGET", "100")]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("budget"), "{}", r.stderr);
    let r = colorhom(&["twists", &f, "--budget", "20000"], &[("COLORHOM_BUDGET", "100")]);
    assert_ne!(r.code, 2, "{}", r.stderr);
    assert_eq!(r.json["result"]["enumeration"]["morphisms"], 25);
}

#[test]
fn text_format_is_line_oriented() {
    let r = colorhom(&["--format", "text", "derived", &data("sl2c_z2z2.alg"), "--n", "1"], &[]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.lines().any(|l| l == "pass = true"));
    assert!(r.stdout.lines().any(|l| l == "schema = 1"));
}

#[test]
fn hls_delta_override_breaks_ijkl() {
    let f = data("qdiff_x3.alg");
    let q = colorhom(&["hls", &f], &[]);
    assert_eq!(q.json["result"]["checks"]["delta_sigma"]["pass"], true);
    let one = colorhom(&["hls", &f, "--delta", "1"], &[]);
    assert_eq!(one.json["result"]["checks"]["delta_sigma"]["pass"], false);
    assert_eq!(one.code, 1);
}

#[test]
fn jordan_and_lattice_pass_on_sl2c() {
    let f = data("sl2c_z2z2.alg");
    assert_eq!(colorhom(&["jordan", &f], &[]).code, 0);
    assert_eq!(colorhom(&["structure", &f, "--lattice"], &[]).code, 0);
}

#[test]
fn deform_compose_reports_cocycle() {
    let r = colorhom(
        &["deform", "compose", &data("sl2_morphisms.alg"), "--bundle", "listed", "--map", "alpha2", "--order", "2"],
        &[],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json["result"]["first_order"]["is_cocycle"], true);
    assert_eq!(r.json["result"]["bracket_terms"].as_array().unwrap().len(), 2);
    let strict = colorhom(
        &["--strict", "deform", "compose", &data("sl2_morphisms.alg"), "--bundle", "listed", "--map", "alpha2"],
        &[],
    );
    assert_eq!(strict.code, 1);
}

#[test]
fn deform_check_on_stored_deformation() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = std::fs::read_to_string(data("sl2c_z2z3.alg")).unwrap();
    // [.,.]_t = (Id + t·α₂)∘[.,.] truncated at t¹ with twist Id + t·α₂
    text.push_str(
        r#"
[deformations.first]
algebra = "sl2"
order = 1
bracket_terms = [{ "e1,e2" = { e3 = "-1" }, "e1,e3" = { e2 = "1" }, "e2,e3" = { e1 = "-1" } }]
alpha_terms = [[["-1", 0, 0], [0, 1, 0], [0, 0, "-1"]]]
"#,
    );
    let path = dir.path().join("def.alg");
    std::fs::write(&path, &text).unwrap();
    let r = colorhom(&["deform", "check", path.to_str().unwrap()], &[]);
    assert_eq!(r.json["result"]["order"], 1);
    assert_eq!(r.json["result"]["first_order"]["is_cocycle"], true);
    assert_eq!(r.code, 0, "{}", r.stdout);
}

#[test]
fn shipped_files_round_trip() {
    for f in SHIPPED {
        let ws = load_document(data(f).as_ref()).unwrap();
        let text = serialize_workspace(&ws).unwrap();
        let again = parse_document(&text, f, None).unwrap();
        assert_eq!(ws, again, "{f}");
        assert_eq!(text, serialize_workspace(&again).unwrap(), "{f}");
    }
}

#[test]
fn reports_are_byte_identical() {
    let f = data("sl2_morphisms.alg");
    let a = colorhom(&["twists", &f, "--algebra", "sl2", "--bundle", "listed"], &[]);
    let b = colorhom(&["twists", &f, "--algebra", "sl2", "--bundle", "listed"], &[]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.json["result"]["bundle"]["morphisms"], 24);
}
