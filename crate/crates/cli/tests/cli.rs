use std::io::Write;
use std::process::{Command, Output, Stdio};

fn shuffle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shuffle")).args(args).output().expect("spawn")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_shuffle"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = shuffle(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn code(args: &[&str]) -> i32 {
    shuffle(args).status.code().expect("exit code")
}

#[test]
fn documented_examples() {
    assert_eq!(ok(&["--field", "2", "bell", "9"]), "1 1 0 1 1 0 1 1 0");
    assert_eq!(ok(&["--field", "3", "exp-rat", "x/(1-x)"]), "(1+x+x^2)/(1-x^2-x^3)");
    assert_eq!(ok(&["--field", "2", "log", "1"]), "0");
}

#[test]
fn series_operations() {
    assert_eq!(ok(&["--field", "2", "tau", "1 0 1 1"]), "x + x^2");
    assert_eq!(ok(&["--field", "3", "--order", "6", "shuffle", "x", "x"]), "2*x^2");
    assert_eq!(ok(&["--field", "2", "section", "0,1,1,0,1,0,0,1", "1", "1"]), "1 + x^3");
    assert_eq!(ok(&["--field", "2", "--order", "3", "frobenius", "1+x"]), "1 + x^2");
    assert_eq!(ok(&["--field", "5", "--order", "8", "pow", "1+x", "5"]), "1");
    assert_eq!(ok(&["--field", "2", "--order", "6", "exp", "x"]), "1 + x + x^2 + x^3 + x^4 + x^5");
    assert_eq!(ok(&["--field", "3", "--order", "6", "inv", "1+x"]), ok(&["--field", "3", "--order", "6", "pow", "1+x", "2"]));
    assert_eq!(ok(&["--field", "2", "--order", "4", "mu", "x"]), "x^2");
    assert_eq!(ok(&["--field", "3", "rat-expand", "1/(1-x)", "4"]), "1 1 1 1");
    assert_eq!(ok(&["--field", "2", "rat-recognize", "1,1,0,1,1,0,1,1,0,1,1,0", "2"]), "1/(1+x+x^2)");
    assert_eq!(ok(&["--field", "5", "rat-norm", "(1+x+2*x^2-x^4)/(1-x^4-x^5)"]), "5");
    assert_eq!(ok(&["--field", "5", "--json", "rat-norm", "x^3"]), r#"{"norm":4}"#);
    assert_eq!(ok(&["--field", "3", "log-rat", "(1+x+x^2)/(1-x^2-x^3)"]), "x/(1-x)");
}

#[test]
fn automata_commands() {
    let tm: Vec<String> = (0u32..256).map(|n| (n.count_ones() % 2).to_string()).collect();
    let tm = tm.join(",");
    let k = ok(&["--field", "2", "kernel", &tm]);
    assert!(k.starts_with("dim 2,"), "{k}");
    let d = ok(&["--field", "2", "dfao", &tm]);
    assert!(d.starts_with("states 2, base 2"), "{d}");
    assert_eq!(ok(&["--field", "2", "minpoly", &tm, "3", "2"]), "(1+x+x^2+x^3)*y^2 + (1+x^2)*y + x");
    assert_eq!(code(&["--field", "2", "minpoly", &tm, "1", "1"]), 1);
    let j: serde_json::Value = serde_json::from_str(&ok(&["--field", "2", "--json", "dfao", &tm])).unwrap();
    assert_eq!(j["states"], 2);
    assert_eq!(j["output"], serde_json::json!([0, 1]));
}

#[test]
fn noncommutative_commands() {
    assert_eq!(ok(&["--field", "3", "--degree", "2", "nc-shuffle", "[1]", "[2]"]), "1*[1,2] + 1*[2,1]");
    assert_eq!(ok(&["--field", "3", "--degree", "3", "nc-rho", "2", "[1,2] + 2*[2]"]), "2*[] + 1*[1]");
    assert_eq!(ok(&["--field", "2", "--degree", "4", "nc-rank", "1 + [1] + [1,1]", "2"]), "rank 3 (L = 2, words up to length 2)");
    assert_eq!(ok(&["--field", "2", "--degree", "2", "--letters", "1", "nc-exp", "[1]"]), "1*[] + 1*[1] + 1*[1,1]");
    assert_eq!(ok(&["--field", "2", "--degree", "3", "nc-log", "1"]), "0");
    let rep = r#"{"field":"2","dim":1,"u":[1],"matrices":[[[1]],[[0]]],"v":[1]}"#;
    assert_eq!(ok(&["--field", "2", "--degree", "2", "nc-linrep-expand", rep]), "1*[] + 1*[1] + 1*[1,1]");
    assert_eq!(code(&["--field", "2", "--degree", "3", "nc-rank", "[1]", "2"]), 1);
}

#[test]
fn json_and_text_agree() {
    let text = ok(&["--field", "3^2", "--order", "12", "exp", "t*x + x^2"]);
    let json = ok(&["--field", "3^2", "--order", "12", "--json", "exp", "t*x + x^2"]);
    let again = with_stdin(&["--field", "3^2", "--order", "12", "shuffle", "-", "1"], &json);
    assert!(again.status.success());
    assert_eq!(String::from_utf8(again.stdout).unwrap().trim_end(), text);

    let back = with_stdin(&["--field", "3^2", "log"], &json);
    assert_eq!(String::from_utf8(back.stdout).unwrap().trim_end(), "t*x + x^2");

    let r = ok(&["--field", "5", "--json", "exp-rat", "x/(1-x)"]);
    assert_eq!(r, r#"{"field":"5","num":[1,1,2,0,4],"den":[1,0,0,0,4,4]}"#);
    assert_eq!(ok(&["--field", "5", "log-rat", &r]), "x/(1-x)");
}

#[test]
fn input_file() {
    let path = std::env::temp_dir().join(format!("shuffle-cli-{}.txt", std::process::id()));
    std::fs::write(&path, "x/(1-x)\n").unwrap();
    let out = ok(&["--field", "2", "--in", path.to_str().unwrap(), "exp-rat"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out, "1/(1+x+x^2)");
    assert_eq!(code(&["--field", "2", "--in", "/nonexistent/file", "exp-rat"]), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["bell", "9"]), 2);
    assert_eq!(code(&["--field", "6", "bell", "9"]), 2);
    assert_eq!(code(&["--field", "2", "bell", "0"]), 2);
    assert_eq!(code(&["--field", "2", "frobnicate"]), 2);
    assert_eq!(code(&["--field", "2", "tau", "1+t"]), 2);
    assert_eq!(code(&["--field", "2", "tau", "(1+x"]), 2);
    assert_eq!(code(&["--field", "2", "exp", "1+x"]), 1);
    assert_eq!(code(&["--field", "2", "log", "x"]), 1);
    assert_eq!(code(&["--field", "2", "inv", "x"]), 1);
    assert_eq!(code(&["--field", "2", "tau", "1/x"]), 1);
    assert_eq!(code(&["--field", "2", "shuffle", r#"{"field":"3","order":2,"coeffs":[1,2]}"#, "1"]), 1);
    assert_eq!(code(&["--field", "2", "shuffle", r#"{"field":"2","#, "1"]), 2);
    assert_eq!(code(&["--field", "2", "rat-recognize", "1,0,0,1,0,1,1,1,0,1,1,0", "1"]), 1);
    let out = shuffle(&["--field", "2", "exp", "1+x"]);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
}
