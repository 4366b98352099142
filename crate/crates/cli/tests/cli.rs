use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

const JAVA_SENTENCE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/BiologyTest.java");
const RUBY_SENTENCE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/biology.rb");

fn testme(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_testme"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const DUPLICATE: &str = r#"{
  "title": "Biology test",
  "pass_threshold_percent": 20,
  "questions": [
    {
      "kind": "multiple_choice",
      "text": "Which of the following are herbivores?",
      "points": 10,
      "answers": [
        { "text": "Sheep", "correct": true },
        { "text": "Lion", "correct": false },
        { "text": "Sheep", "correct": true }
      ]
    }
  ]
}"#;

const REPEATED_QUESTION: &str = r#"{"title":"t","pass_threshold_percent":50,"questions":[
  {"kind":"open_answer","text":"q","points":1,"expected":"a"},
  {"kind":"open_answer","text":"q","points":1,"expected":"b"}]}"#;

const UNKNOWN_KIND: &str =
    r#"{"title":"t","pass_threshold_percent":50,"questions":[{"kind":"essay","text":"q","points":1}]}"#;

fn workspace() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in [
        ("dup.testme.json", DUPLICATE),
        ("warn.testme.json", REPEATED_QUESTION),
        ("essay.testme.json", UNKNOWN_KIND),
        ("broken.testme.json", "{ not json"),
    ] {
        std::fs::write(dir.path().join(name), text).unwrap();
    }
    dir
}

#[test]
fn exit_codes() {
    let dir = workspace();
    let cases: &[(&[&str], u8)] = &[
        (&[], 2),
        (&["frobnicate"], 2),
        (&["check", "--no-such-flag", "x"], 2),
        (&["check"], 2),
        (&["--help"], 0),
        (&["--version"], 0),
        (&["check", "missing.testme.json"], 1),
        (&["check", "broken.testme.json"], 1),
        (&["check", "essay.testme.json"], 1),
        (&["check", "dup.testme.json"], 1),
        (&["check", "warn.testme.json"], 0),
        (&["build", "dup.testme.json", "-o", "dup.html"], 1),
        (&["build", "warn.testme.json"], 2),
        (&["build", "warn.testme.json", "-o", "no/such/dir/page.html"], 1),
        (&["build", "warn.testme.json", "-o", "warn.html"], 0),
        (&["analyze", JAVA_SENTENCE], 2),
        (&["analyze", JAVA_SENTENCE, "--profile", "cobol"], 2),
        (&["analyze", JAVA_SENTENCE, "--profile", "java", "--format", "xml"], 2),
        (&["analyze", "missing.java", "--profile", "java"], 1),
        (&["analyze", "dup.testme.json", "--profile", "java"], 1),
        (&["analyze", JAVA_SENTENCE, "--profile", "java"], 0),
        (&["new", "Bio.java"], 2),
        (&["new", "Bio.java", "--name", "Bio", "--set", "NOEQUALS"], 2),
        (&["new", "Bio.java", "--name", "Bio", "--set", "EXTRA=1"], 1),
        (&["new", "Bio.java", "--name", "Bio"], 0),
        (&["new", "Bio.java", "--name", "Bio"], 1),
        (&["new", "Bio.java", "--name", "Bio", "--force"], 0),
        (
            &["new", "Zoo.java", "--name", "Zoo", "--template", "missing.template"],
            1,
        ),
        (&["demo", "--out-dir", "demo"], 0),
        (&["corpus", "-o", "corpus.json"], 0),
    ];
    for (args, want) in cases {
        let out = testme(dir.path(), args);
        assert_eq!(
            out.status.code(),
            Some(i32::from(*want)),
            "testme {}\nstdout: {}\nstderr: {}",
            args.join(" "),
            stdout(&out),
            String::from_utf8_lossy(&out.stderr)
        );
    }
    assert!(!dir.path().join("dup.html").exists(), "a refused build writes nothing");
}

#[test]
fn demo_output_checks_clean_and_builds() {
    let dir = tempfile::tempdir().unwrap();
    assert!(testme(dir.path(), &["demo"]).status.success());
    let check = testme(dir.path(), &["check", "biology.testme.json"]);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(stdout(&check), "");
    let html = std::fs::read_to_string(dir.path().join("biology.html")).unwrap();
    assert!(html.contains("<title>Biology test</title>"));
    let build = testme(dir.path(), &["build", "biology.testme.json", "-o", "again.html"]);
    assert!(build.status.success());
    assert_eq!(std::fs::read_to_string(dir.path().join("again.html")).unwrap(), html);
}

#[test]
fn duplicate_is_reported_without_location() {
    let dir = workspace();
    let out = testme(dir.path(), &["check", "dup.testme.json"]);
    assert_eq!(stdout(&out), "The answer 'Sheep' is a duplicate\n");
}

#[test]
fn analyze_prints_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let java = testme(dir.path(), &["analyze", JAVA_SENTENCE, "--profile", "java"]);
    assert_eq!(
        stdout(&java),
        "surrounding_loc: 11\ninterlacing_tokens: 71\ndomain_tokens: 30\ntotal_significant_loc: 22\n"
    );
    let ruby = testme(
        dir.path(),
        &["analyze", RUBY_SENTENCE, "--profile", "ruby", "--format", "csv"],
    );
    let text = stdout(&ruby);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "file,profile,surrounding_loc,interlacing_tokens,domain_tokens,total_significant_loc"
    );
    assert!(lines.next().unwrap().ends_with(",ruby,1,38,31,13"));
}

#[test]
fn analyze_accepts_a_profile_file() {
    let dir = tempfile::tempdir().unwrap();
    let profile: PathBuf = dir.path().join("javaish.json");
    let java = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/profiles/java.json")).unwrap();
    std::fs::write(&profile, java.replace("\"java\"", "\"javaish\"")).unwrap();
    let out = testme(
        dir.path(),
        &["analyze", JAVA_SENTENCE, "--profile", profile.to_str().unwrap()],
    );
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("surrounding_loc: 11\n"));
}

#[test]
fn new_writes_the_skeleton() {
    let dir = tempfile::tempdir().unwrap();
    assert!(testme(
        dir.path(),
        &["new", "Zoo.java", "--name", "Zoo", "--package", "animals"]
    )
    .status
    .success());
    let text = std::fs::read_to_string(dir.path().join("Zoo.java")).unwrap();
    assert!(text.contains("package animals;"));
    assert!(text.contains("public class Zoo extends TestBuilder"));
    assert!(text.contains("new Zoo().compose();"));
}

#[test]
fn new_with_a_custom_template() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("quiz.rb.template"),
        "require_relative \"${LIB}\"\n\ncreate_test \"${NAME}\", 50\n",
    )
    .unwrap();
    std::fs::write(
        dir.path().join("quiz.rb.template.manifest.json"),
        r#"{"placeholders":["LIB","NAME"]}"#,
    )
    .unwrap();
    let out = testme(
        dir.path(),
        &[
            "new",
            "quiz.rb",
            "--name",
            "Quiz",
            "--template",
            "quiz.rb.template",
            "--set",
            "LIB=./testDSL",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(
        std::fs::read_to_string(dir.path().join("quiz.rb")).unwrap(),
        "require_relative \"./testDSL\"\n\ncreate_test \"Quiz\", 50\n"
    );
}

fn lsp_frame(body: &str) -> String {
    format!("Content-Length: {}\r\n\r\n{body}", body.len())
}

#[test]
fn serve_lsp_exit_codes() {
    for (shutdown, want) in [(true, 0), (false, 1)] {
        let mut input = lsp_frame(r#"{"jsonrpc":"2.0","id":1,"method":"initialize","params":{}}"#);
        if shutdown {
            input += &lsp_frame(r#"{"jsonrpc":"2.0","id":2,"method":"shutdown"}"#);
        }
        input += &lsp_frame(r#"{"jsonrpc":"2.0","method":"exit"}"#);
        let mut child = Command::new(env!("CARGO_BIN_EXE_testme"))
            .arg("serve-lsp")
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .unwrap();
        child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
        let out = child.wait_with_output().unwrap();
        assert_eq!(out.status.code(), Some(want));
        assert!(stdout(&out).starts_with("Content-Length: "));
    }
}

#[test]
fn corpus_has_the_fixed_cases() {
    let dir = tempfile::tempdir().unwrap();
    assert!(testme(dir.path(), &["corpus", "-o", "corpus.json"]).status.success());
    let text = std::fs::read_to_string(dir.path().join("corpus.json")).unwrap();
    assert!(text.contains("\"id\": \"case-199\""));
    assert!(text.contains("\"earned\": 40"));
}
