use std::fs;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_cardwriter");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("CARDWRITER_REGISTRY")
        .env_remove("CARDWRITER_CATALOG")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const WINDOW: [&str; 4] = ["--from", "2024-02-13", "--to", "2024-02-20"];

#[test]
fn no_ai_plain() {
    let o = run(&["--no-ai", "--format", "plain"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "PaperCard\n\nThe authors did not use any assistance from generative AI in writing this manuscript.\n"
    );
    assert!(o.stderr.is_empty());
}

#[test]
fn fuzzy_note_goes_to_stderr_only() {
    let mut args = vec!["--step", "paraphrasing", "--model", "Claud 3 Opus", "--d1"];
    args.extend(WINDOW);
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("We adopted Claude 3 Opus (url: https://claude.ai/chat/)"));
    assert!(!stdout(&o).contains("fuzzy"));
    assert!(stderr(&o).starts_with("warning: "));
    assert!(stderr(&o).contains("fuzzy-matched (0.909)"));
}

#[test]
fn no_disclaimer_warning() {
    let mut args = vec!["--step", "drafting", "--model", "Gemini"];
    args.extend(WINDOW);
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning: no disclaimers selected"));
    assert_eq!(stdout(&o).matches("\n\n").count(), 2);
}

#[test]
fn exit_codes() {
    let o = run(&["--no-ai", "--step", "editing"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error: "));
    assert!(stderr(&o).contains("mutually_exclusive"));
    assert!(o.stdout.is_empty());

    let o = run(&["--step", "drafting"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("[incomplete]"));

    let o = run(&["--step", "drafting", "--model", "gpt4", "--from", "2024-02-20", "--to", "2024-02-13"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("[window_order]"));

    let mut args = vec!["--step", "drafting", "--model", "Midjourney"];
    args.extend(WINDOW);
    let o = run(&args);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stderr(&o).lines().count(), 1);

    let o = run(&["--request", "/definitely/missing.json"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["--no-ai", "--match-threshold", "1.5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn malformed_request_file_is_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("req.json");
    fs::write(&path, r#"{"no_ai": true, "surprise": 1}"#).unwrap();
    let o = run(&["--request", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: "));
}

#[test]
fn model_flags_keep_command_line_order() {
    let mut args = vec![
        "--step",
        "translation",
        "--step",
        "drafting",
        "--model-custom",
        r#"{"model": "MyLM"}"#,
        "--model",
        "GPT-4",
    ];
    args.extend(WINDOW);
    let out = stdout(&run(&args));
    assert!(out.contains("especially in translation and drafting."));
    let custom = out.find("We adopted MyLM").unwrap();
    let gpt = out.find("We adopted GPT-4").unwrap();
    assert!(custom < gpt);
}

#[test]
fn request_file_matches_inline_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("req.json");
    fs::write(
        &path,
        r#"{"steps": ["paraphrasing"], "models": [{"name": "GPT-4"}],
            "disclaimers": {"d1_rights": true, "d2_ethics": true, "d3_integrity": true},
            "window": {"from": "2024-02-13", "to": "2024-02-20"}}"#,
    )
    .unwrap();
    for format in ["plain", "markdown", "latex"] {
        let from_file = run(&["--request", path.to_str().unwrap(), "--format", format]);
        let mut args = vec!["--step", "paraphrasing", "--model", "GPT-4", "--d1", "--d2", "--d3", "--format", format];
        args.extend(WINDOW);
        let inline = run(&args);
        assert_eq!(from_file.stdout, inline.stdout);
    }
}

#[test]
fn request_conflicts_with_inline_flags() {
    let o = run(&["--request", "x.json", "--no-ai"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_file_and_overlay_registry() {
    let dir = tempfile::tempdir().unwrap();
    let reg = dir.path().join("overlay.json");
    fs::write(
        &reg,
        r#"[{"model": "Llama 3", "provider": "Meta", "url": "https://llama.meta.com/", "terms": "https://llama.meta.com/llama3/license/", "version": "2024.04.18"}]"#,
    )
    .unwrap();
    let out = dir.path().join("card.md");
    let o = Command::new(BIN)
        .args(["--step", "drafting", "--model", "llama-3", "--d2", "--format", "markdown", "--output"])
        .arg(&out)
        .args(WINDOW)
        .env("CARDWRITER_REGISTRY", &reg)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let card = fs::read_to_string(&out).unwrap();
    assert!(card.starts_with("## PaperCard\n"));
    assert!(card.contains("We adopted Llama 3"));

    let listed = Command::new(BIN)
        .args(["--list-models", "--registry"])
        .arg(&reg)
        .output()
        .unwrap();
    let text = stdout(&listed);
    assert_eq!(text.lines().filter(|l| l.contains("\"model\"")).count(), 6);

    fs::write(&reg, "[{\"model\": 1}]").unwrap();
    let bad = Command::new(BIN).args(["--no-ai", "--registry"]).arg(&reg).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn list_models_is_the_registry_file_format() {
    let o = run(&["--list-models"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains(r#"{"model": "GPT-4", "provider": "OpenAI", "url": "https://chat.openai.com/", "terms": "https://openai.com/policies/terms-of-use", "version": "2024.02.13"}"#));
    let parsed = cardwriter::registry::load_registry(text.as_bytes()).unwrap();
    assert_eq!(parsed.len(), 5);
}

#[test]
fn list_steps() {
    let o = run(&["--list-steps"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 7);
}

#[test]
fn version_flag() {
    let o = run(&["--version"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("cardwriter "));
}
