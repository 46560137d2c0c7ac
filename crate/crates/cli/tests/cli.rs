use std::io::Write;
use std::process::{Command, Output, Stdio};

use corrmix::report::Record;

const TABLE1_CSV: &str =
    "6,2.5\n7,1.1\n12,6.3\n14,2.1\n23,2.9\n41,15.3\n53,20.7\n60,18.4\n69,22\n72,33\n";

fn corrmix(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_corrmix"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn corr_single_method_from_stdin() {
    let out = corrmix(&["corr", "--method", "spearman"], TABLE1_CSV);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("spearman     0.90303  strong"), "{text}");
    assert!(!text.contains("pearson "));
}

#[test]
fn report_text_is_byte_identical_across_runs() {
    let args = [
        "report",
        "--transform",
        "mean",
        "--transform",
        "std",
        "--plot",
        "ascii",
    ];
    let a = corrmix(&args, TABLE1_CSV);
    let b = corrmix(&args, TABLE1_CSV);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_values_match_library_bit_for_bit() {
    let out = corrmix(&["corr", "--format", "json"], TABLE1_CSV);
    let records: Vec<Record> = serde_json::from_str(&stdout(&out)).unwrap();
    let s = corrmix::fixtures::table1();
    for r in records {
        let method: corrmix::Method = r.method.parse().unwrap();
        let direct = corrmix::correlation(&s, method, corrmix::TiePolicy::Average).unwrap();
        assert_eq!(r.value.unwrap().to_bits(), direct.value.to_bits());
    }
}

#[test]
fn header_and_named_columns() {
    let input = "label;height;weight\na;1;2\nb;2;4.5\nc;3;5\n";
    let out = corrmix(
        &[
            "corr",
            "--delimiter",
            ";",
            "--header",
            "--x-col",
            "height",
            "--y-col",
            "weight",
            "--method",
            "pearson",
            "--format",
            "csv",
        ],
        input,
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.starts_with("n,method,value,strength"));
    assert!(text.contains("3,pearson,"));
}

#[test]
fn positional_columns_and_tabs() {
    let input = "0\t6\t2.5\n0\t7\t1.1\n0\t12\t6.3\n";
    let out = corrmix(
        &["fit", "--delimiter", "tab", "--x-col", "2", "--y-col", "3"],
        input,
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("least-squares fit:"));
}

#[test]
fn fit_json_schema() {
    let out = corrmix(&["fit", "--format", "json"], TABLE1_CSV);
    let records: Vec<Record> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(records.len(), 1);
    let r = &records[0];
    assert_eq!(r.method, "least_squares");
    assert_eq!(r.n, 10);
    assert!((r.b.unwrap() - 2479.29 / 6244.1).abs() < 1e-9);
    assert!(r.a.is_some() && r.ss_total.is_some() && r.ss_resid.is_some() && r.r_squared.is_some());
}

#[test]
fn fit_vertical_data_is_degenerate() {
    let out = corrmix(&["fit", "--format", "json"], "2,1\n2,5\n2,7\n");
    assert_eq!(out.status.code(), Some(4));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error_kind"], "zero_variance");
}

#[test]
fn transform_emits_csv() {
    let out = corrmix(&["transform", "--spec", "point:4"], TABLE1_CSV);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<(f64, f64)> = text
        .lines()
        .map(|l| {
            let (x, y) = l.split_once(',').unwrap();
            (x.parse().unwrap(), y.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[0].0, -8.0);
    assert!((rows[0].1 - 0.4).abs() < 1e-12);
    assert_eq!(rows[3], (0.0, 0.0));

    let out = corrmix(
        &[
            "transform",
            "--header",
            "--spec",
            "shift:1,1",
            "--spec",
            "scale:*2,/2",
        ],
        "a,b\n1,2\n3,4\n",
    );
    assert_eq!(stdout(&out), "x,y\n4,1.5\n8,2.5\n");
}

#[test]
fn transform_point_out_of_range() {
    let out = corrmix(&["transform", "--spec", "point:11"], TABLE1_CSV);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("index_out_of_range"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        corrmix(&["corr", "--method", "kendall"], TABLE1_CSV)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        corrmix(&["transform", "--spec", "scale:*0,*1"], TABLE1_CSV)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(corrmix(&["frobnicate"], "").status.code(), Some(2));
}

#[test]
fn parse_errors_exit_3() {
    let out = corrmix(&["corr"], "1,2\n3,x\n");
    assert_eq!(out.status.code(), Some(3));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("line 2"), "{msg}");

    let out = corrmix(&["corr", "--header", "--x-col", "nope"], "a,b\n1,2\n3,4\n");
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column_not_found"));

    let out = corrmix(&["corr", "/definitely/not/here.csv"], "");
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn too_few_rows_is_degenerate() {
    assert_eq!(corrmix(&["corr"], "1,2\n").status.code(), Some(4));
}

#[test]
fn constant_column_text_report_is_structured() {
    let out = corrmix(&["report"], "1,3\n2,3\n3,3\n");
    assert_eq!(out.status.code(), Some(4));
    let text = stdout(&out);
    assert_eq!(text.matches("error[zero_variance]").count(), 4, "{text}");
    assert!(text.contains("r_squared = undefined"));
}

#[test]
fn svg_plot_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let plot = dir.path().join("plot.svg");
    let out = corrmix(
        &[
            "report",
            "--plot",
            "svg",
            "--plot-output",
            plot.to_str().unwrap(),
        ],
        TABLE1_CSV,
    );
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(&plot).unwrap();
    assert_eq!(svg.matches("<circle").count(), 10);
    assert_eq!(svg.matches("<line").count(), 1);
    assert!(!stdout(&out).contains("<svg"));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = corrmix(
        &[
            "corr",
            "--format",
            "json",
            "--output",
            path.to_str().unwrap(),
        ],
        TABLE1_CSV,
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let records: Vec<Record> =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(records.len(), 4);
}

#[test]
fn precision_flag() {
    let out = corrmix(
        &["corr", "--method", "pearson", "--precision", "8"],
        TABLE1_CSV,
    );
    assert!(stdout(&out).contains("0.95074993"));
}

#[test]
fn tie_policy_flag_changes_ranks() {
    let input = "1,1\n2,1\n3,2\n4,3\n";
    let avg = stdout(&corrmix(
        &["corr", "--method", "spearman", "--format", "csv"],
        input,
    ));
    let dense = stdout(&corrmix(
        &[
            "corr", "--method", "spearman", "--ties", "dense", "--format", "csv",
        ],
        input,
    ));
    assert_ne!(avg, dense);
}
