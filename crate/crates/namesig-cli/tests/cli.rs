//! End-to-end tests driving the compiled binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use namesig::{score_name, Dictionary, MetricKind, Thresholds};

const FIXTURE_DICT: &str = include_str!("../../namesig/tests/data/fixture_dict.txt");

struct Env {
    _dir: tempfile::TempDir,
    root: PathBuf,
    dict: PathBuf,
}

impl Env {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path().to_path_buf();
        let dict = root.join("dictionary.txt");
        fs::write(&dict, FIXTURE_DICT).unwrap();
        Env {
            _dir: dir,
            root,
            dict,
        }
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_namesig"))
            .args(args)
            .env_remove("NAMESIG_DICT")
            .output()
            .expect("binary runs")
    }

    fn dict_arg(&self) -> String {
        self.dict.display().to_string()
    }

    fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }
}

fn stdout_json_lines(output: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&output.stdout)
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).expect("valid JSON line"))
        .collect()
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

fn fixture_dictionary() -> Dictionary {
    let words: Vec<&str> = FIXTURE_DICT
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    Dictionary::build(words, std::iter::empty::<&str>()).unwrap()
}

#[test]
fn check_admits_abbreviation() {
    let env = Env::new();
    let out = env.run(&["check", "naiss", "--dict", &env.dict_arg()]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let json = &stdout_json_lines(&out)[0];
    assert_eq!(json["attribut"], "naiss");
    assert_eq!(json["mppd"], "naisse");
    assert!((json["score"].as_f64().unwrap() - 0.96).abs() <= 0.01);
    assert_eq!(json["category"], "probable");
}

#[test]
fn check_rejects_noise() {
    let env = Env::new();
    let out = env.run(&["check", "abteofkf", "--dict", &env.dict_arg()]);
    assert_eq!(exit_code(&out), 1);
    let json = &stdout_json_lines(&out)[0];
    assert!((json["score"].as_f64().unwrap() - 0.02).abs() <= 0.01);
    assert_eq!(json["category"], "meaningless");
}

#[test]
fn check_missing_dictionary_is_a_config_error() {
    let env = Env::new();
    let out = env.run(&["check", "naiss", "--dict", "/nonexistent/words.txt"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/words.txt"));
}

#[test]
fn dictionary_path_can_come_from_the_environment() {
    let env = Env::new();
    let out = Command::new(env!("CARGO_BIN_EXE_namesig"))
        .args(["check", "naissance"])
        .env("NAMESIG_DICT", &env.dict)
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn check_respects_metric_and_threshold_flags() {
    let env = Env::new();
    let out = env.run(&[
        "check",
        "comimuae",
        "--dict",
        &env.dict_arg(),
        "--metric",
        "jaro-winkler",
        "--accept",
        "0.8",
    ]);
    // Reinforced Jaro-Winkler leaves comimuae around 0.87, above 0.8.
    assert_eq!(exit_code(&out), 0);
    let json = &stdout_json_lines(&out)[0];
    assert_eq!(json["mppd"], "comique");
}

#[test]
fn batch_output_matches_direct_library_scores() {
    let env = Env::new();
    let names = [
        "âgeclient", "naissance", "médecintraitant", "naiss", "dnaiss",
        "adr-post", "add pst", "comimuae", "abteofkf", "abateofkf",
    ];
    let input = env.path("names.txt");
    fs::write(&input, names.join("\n")).unwrap();
    let output = env.path("scores.jsonl");
    let out = env.run(&[
        "batch",
        "--input",
        input.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
        "--dict",
        &env.dict_arg(),
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));

    let dictionary = fixture_dictionary();
    let lines: Vec<serde_json::Value> = fs::read_to_string(&output)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), names.len());
    for (line, name) in lines.iter().zip(&names) {
        assert_eq!(line["attribut"], *name, "batch preserves input order");
        let direct = score_name(name, &dictionary, MetricKind::Levenshtein, &Thresholds::default());
        let reported = line["score"].as_f64().unwrap();
        assert!(
            (reported - direct.score).abs() <= 1e-4,
            "{name}: file has {reported}, library computed {}",
            direct.score
        );
        assert_eq!(line["category"], direct.category.as_str());
    }
}

#[test]
fn batch_over_empty_file_produces_empty_output() {
    let env = Env::new();
    let input = env.path("empty.txt");
    fs::write(&input, "").unwrap();
    let output = env.path("out.jsonl");
    let out = env.run(&[
        "batch",
        "--input",
        input.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
        "--dict",
        &env.dict_arg(),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(fs::read_to_string(&output).unwrap(), "");
}

#[test]
fn batch_reads_csv_attribute_column() {
    let env = Env::new();
    let input = env.path("attributes.csv");
    fs::write(
        &input,
        "domaine,table,attribut\nVente,Client,naiss\nVente,Client,abteofkf\n",
    )
    .unwrap();
    let out = env.run(&[
        "batch",
        "--input",
        input.to_str().unwrap(),
        "--dict",
        &env.dict_arg(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let lines = stdout_json_lines(&out);
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["attribut"], "naiss");
    assert_eq!(lines[1]["attribut"], "abteofkf");
}

#[test]
fn dict_build_cleans_and_orders() {
    let env = Env::new();
    let raw = env.path("raw.txt");
    fs::write(&raw, "# raw words\nle\ntrait\nTRAITANT\nÂge\nage\n\ntraitant\n").unwrap();
    let stop = env.path("stop.txt");
    fs::write(&stop, "le\n").unwrap();
    let built = env.path("built.txt");
    let out = env.run(&[
        "dict",
        "build",
        "--raw",
        raw.to_str().unwrap(),
        "--stopwords",
        stop.to_str().unwrap(),
        "--out",
        built.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let words: Vec<String> = fs::read_to_string(&built)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    assert_eq!(words, ["traitant", "trait", "age"]);
}

fn ingest_records(env: &Env, records_body: &str, kb: &Path) -> Output {
    let records = env.path("batches.jsonl");
    fs::write(&records, records_body).unwrap();
    env.run(&[
        "kb",
        "ingest",
        "--kb",
        kb.to_str().unwrap(),
        "--records",
        records.to_str().unwrap(),
        "--dict",
        &env.dict_arg(),
    ])
}

#[test]
fn kb_ingest_filters_and_aggregates() {
    let env = Env::new();
    let kb = env.path("kb.jsonl");

    // First analysis batch: one meaningful attribute, one noise attribute.
    let out = ingest_records(
        &env,
        concat!(
            r#"{"Domaine":"Vente","Table":"Client","Attribut":"naissance","Taille":120,"Taux":{"Nom personne":60,"Prénom personne":23,"Rue":5}}"#,
            "\n",
            r#"{"Domaine":"Vente","Table":"Client","Attribut":"abteofkf","Taille":120,"Taux":{"Nom personne":55}}"#,
            "\n",
        ),
        &kb,
    );
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("abteofkf"), "rejection is reported: {stderr}");

    let records = namesig::load_kb(&kb).unwrap();
    assert_eq!(records.len(), 1, "noise attribute must not be stored");
    assert_eq!(records[0].attribut, "naissance");
    assert_eq!(records[0].taille, vec![120]);

    // Second batch for the same attribute merges into the record.
    let out = ingest_records(
        &env,
        concat!(
            r#"{"Domaine":"Vente","Table":"Client","Attribut":"naissance","Taille":250,"Taux":{"Nom personne":70,"Prénom personne":25,"Rue":2}}"#,
            "\n",
        ),
        &kb,
    );
    assert_eq!(exit_code(&out), 0);
    let records = namesig::load_kb(&kb).unwrap();
    assert_eq!(records.len(), 1);
    let record = &records[0];
    assert_eq!(record.taille, vec![120, 250]);
    assert_eq!(record.taille_totale, 370);
    let finals: Vec<u32> = record.scoring.iter().map(|s| s.taux_final).collect();
    assert_eq!(finals, vec![67, 24, 3]);
}

#[test]
fn kb_query_filters_records() {
    let env = Env::new();
    let kb = env.path("kb.jsonl");
    let out = ingest_records(
        &env,
        concat!(
            r#"{"Domaine":"Vente","Table":"Client","Attribut":"naissance","Taille":100,"Taux":{"Rue":10}}"#,
            "\n",
            r#"{"Domaine":"RH","Table":"Employe","Attribut":"adr-post","Taille":50,"Taux":{"Rue":80}}"#,
            "\n",
        ),
        &kb,
    );
    assert_eq!(exit_code(&out), 0);

    let out = env.run(&["kb", "query", "--kb", kb.to_str().unwrap(), "--domaine", "RH"]);
    assert_eq!(exit_code(&out), 0);
    let lines = stdout_json_lines(&out);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["Attribut"], "adr-post");

    let out = env.run(&["kb", "query", "--kb", kb.to_str().unwrap()]);
    assert_eq!(stdout_json_lines(&out).len(), 2);

    let out = env.run(&[
        "kb",
        "query",
        "--kb",
        kb.to_str().unwrap(),
        "--attribut",
        "absent",
    ]);
    assert_eq!(stdout_json_lines(&out).len(), 0);
}

#[test]
fn bench_run_emits_csv_report() {
    let env = Env::new();
    let csv = env.path("timings.csv");
    let out = env.run(&[
        "bench",
        "run",
        "--dict",
        &env.dict_arg(),
        "--sizes",
        "5,20",
        "--reps",
        "1",
        "--seed",
        "3",
        "--metric",
        "levenshtein",
        "--output",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let content = fs::read_to_string(&csv).unwrap();
    let mut lines = content.lines();
    assert_eq!(
        lines.next().unwrap(),
        "metric,dict_words,group_size,elapsed_ms,names_per_sec"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.starts_with("levenshtein,27,")));
}

#[test]
fn invalid_metric_is_a_config_error() {
    let env = Env::new();
    let out = env.run(&["check", "naiss", "--dict", &env.dict_arg(), "--metric", "cosine"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("cosine"));
}
