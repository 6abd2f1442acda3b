use std::collections::HashSet;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_setcycles"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    {
        let mut input = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            input.write_all(s.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn lines(o: &Output) -> Vec<String> {
    stdout(o).lines().map(String::from).collect()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn reflected(n: usize) -> Vec<String> {
    (0..1u32 << n).map(|i| format!("{:0n$b}", i ^ (i >> 1))).collect()
}

#[test]
fn gen_middle_levels() {
    let o = run(&["gen", "middle:k=4"], None);
    assert_eq!(code(&o), 0);
    let ls = lines(&o);
    assert_eq!(ls.len() as u64, 2 * binom(9, 4));
    assert_eq!(ls.iter().collect::<HashSet<_>>().len(), ls.len());
    for w in &ls {
        let ones = w.chars().filter(|&c| c == '1').count();
        assert!(w.len() == 9 && (ones == 4 || ones == 5));
    }
}

#[test]
fn gen_petersen_warns() {
    let o = run(&["gen", "kneser:n=5,k=2"], None);
    assert_eq!(code(&o), 0);
    assert_eq!(lines(&o).len(), 10);
    assert!(stderr(&o).contains("Petersen exception"));
    let v = run(&["verify", "kneser:n=5,k=2", "--mode", "path"], Some(&stdout(&o)));
    assert_eq!(code(&v), 0);
    let v = run(&["verify", "kneser:n=5,k=2"], Some(&stdout(&o)));
    assert_eq!(code(&v), 1);
}

#[test]
fn gen_hypercube_brgc() {
    let o = run(&["gen", "hypercube:n=4", "--method", "brgc"], None);
    assert_eq!(code(&o), 0);
    assert_eq!(lines(&o), reflected(4));
}

#[test]
fn gen_errors() {
    assert_eq!(code(&run(&["gen", "kneser:n=4,k=3"], None)), 2);
    assert_eq!(code(&run(&["gen", "hypercube:n=4", "--method", "nope"], None)), 2);
    assert_eq!(code(&run(&["gen", "kneser:n=7,k=2", "--method", "brgc"], None)), 2);
    assert_eq!(code(&run(&["gen", "kneser:n=20,k=5", "--method", "brute"], None)), 4);
    let o = run(&["gen", "band:n=5,k=1"], None);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("5 and 10"));
}

#[test]
fn jsonl_records() {
    let o = run(&["gen", "kneser:n=6,k=2", "--format", "jsonl"], None);
    assert_eq!(code(&o), 0);
    let ls = lines(&o);
    assert_eq!(ls.len(), 15);
    for (i, l) in ls.iter().enumerate() {
        let v: serde_json::Value = serde_json::from_str(l).unwrap();
        assert_eq!(v["meta"]["i"], i);
        assert_eq!(v["meta"]["kind"], "cycle");
        assert_eq!(v["v"].as_str().unwrap().len(), 6);
    }
    assert!(ls[0].starts_with("{\"v\":"));
}

#[test]
fn verify_round_trip_and_failures() {
    let text = stdout(&run(&["gen", "hypercube:n=4", "--method", "brgc"], None));
    assert_eq!(code(&run(&["verify", "hypercube:n=4"], Some(&text))), 0);

    let mut ls: Vec<&str> = text.lines().collect();
    ls.swap(2, 3);
    let o = run(&["verify", "hypercube:n=4"], Some(&(ls.join("\n") + "\n")));
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let mut ls: Vec<String> = text.lines().map(String::from).collect();
    ls[5].push('0');
    assert_eq!(code(&run(&["verify", "hypercube:n=4"], Some(&ls.join("\n")))), 2);
    assert_eq!(code(&run(&["verify", "hypercube:n=4"], Some("0000\n0001\n"))), 1);
    assert_eq!(code(&run(&["verify", "hypercube:n=4"], Some("0000\n00x1\n"))), 2);
    assert_eq!(code(&run(&["verify", "hypercube:n=4"], Some(""))), 2);
}

#[test]
fn verify_duplicate_reports_both_lines() {
    let o = run(&["verify", "hypercube:n=2"], Some("00\n01\n00\n10\n"));
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("line 3: repeats line 1"));
}

#[test]
fn count_tables() {
    let o = run(&["count", "kt-cycles", "--k", "1..10"], None);
    assert_eq!(code(&o), 0);
    let counts: Vec<u64> = lines(&o).iter().map(|l| l.split('\t').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(counts, [1, 1, 2, 3, 6, 14, 34, 95, 280, 854]);

    let o = run(&["count", "cf-classes", "--k", "4"], None);
    assert_eq!(lines(&o), ["4\t0\t14", "4\t1\t14", "4\t2\t14", "4\t3\t14", "4\t4\t14"]);

    assert_eq!(lines(&run(&["count", "plane-trees", "--k", "6"], None)), ["6\t14"]);

    let o = run(&["count", "catalan", "--k", "1..=5"], None);
    let cat: Vec<u64> = (1..=5).map(|k| binom(2 * k, k) / (k + 1)).collect();
    let got: Vec<u64> = lines(&o).iter().map(|l| l.split('\t').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(got, cat);

    for bad in ["0..3", "5..2", "x", "1..99"] {
        assert_eq!(code(&run(&["count", "kt-cycles", "--k", bad], None)), 2, "{bad}");
    }
}

#[test]
fn gliders_single_speed_two() {
    let o = run(&["gliders", "--start", "11000", "--steps", "5"], None);
    assert_eq!(code(&o), 0);
    let ls = lines(&o);
    assert_eq!(ls.len(), 8);
    assert!(ls[0].contains("1100-"));
    assert_eq!(ls[0].split_whitespace().nth(1), ls[5].split_whitespace().nth(1));
    assert!(ls.contains(&"speeds\t{2}".to_string()));
    assert!(ls.contains(&"period\t5".to_string()));
}

#[test]
fn gliders_single_one_moves_uniformly() {
    let o = run(&["gliders", "--start", "1000000", "--steps", "7"], None);
    let ls = lines(&o);
    for (t, l) in ls.iter().take(7).enumerate() {
        assert!(l.ends_with(&format!("g0:v1@{}", t + 1)), "{l}");
    }
    assert!(ls.contains(&"speeds\t{1}".to_string()));
}

#[test]
fn gliders_interaction_keeps_ids() {
    let o = run(&["gliders", "--start", "1101000100100", "--steps", "6"], None);
    assert_eq!(code(&o), 0);
    let ls = lines(&o);
    assert!(ls.iter().any(|l| l.contains("interacting")));
    let ids = |l: &str| -> usize { l.matches(":v").count() };
    let separated: Vec<&String> = ls.iter().filter(|l| l.contains(":v")).collect();
    assert!(separated.len() >= 2);
    assert!(separated.iter().all(|l| ids(l) == 4));
    assert!(ls.contains(&"speeds\t{1,1,1,2}".to_string()));
}

#[test]
fn gliders_bad_start() {
    assert_eq!(code(&run(&["gliders", "--start", "1110", "--steps", "3"], None)), 2);
    assert_eq!(code(&run(&["gliders", "--start", "10a0"], None)), 2);
    assert_eq!(code(&run(&["gliders", "--start", "1000", "--steps", "0"], None)), 2);
}

fn pbm_for(rows: &[String]) -> String {
    let mut s = format!("P1\n{} {}\n", rows[0].len(), rows.len());
    for r in rows {
        s.push_str(r);
        s.push('\n');
    }
    s
}

#[test]
fn render_golden_brgc() {
    let golden = include_str!("golden/brgc4.pbm");
    assert_eq!(golden, pbm_for(&reflected(4)));
    let text = reflected(4).join("\n");
    assert_eq!(stdout(&run(&["render"], Some(&text))), golden);
    assert_eq!(stdout(&run(&["gen", "hypercube:n=4", "--method", "brgc", "--format", "pbm"], None)), golden);
}

#[test]
fn render_golden_combinations() {
    let golden = include_str!("golden/combo8_2.pbm");
    let rows: Vec<String> = reflected(8).into_iter().filter(|r| r.matches('1').count() == 2).collect();
    assert_eq!(rows.len(), 28);
    assert_eq!(golden, pbm_for(&rows));
    let o = run(&["gen", "johnson:n=8,k=2,s=1", "--method", "combo", "--format", "pbm"], None);
    assert_eq!(stdout(&o), golden);
}

#[test]
fn render_rejects_bad_input() {
    assert_eq!(code(&run(&["render"], Some(""))), 2);
    assert_eq!(code(&run(&["render"], Some("0101\n011\n"))), 2);
}

#[test]
fn factor_statistics() {
    let o = run(&["factor", "kt", "--k", "3"], None);
    assert_eq!(code(&o), 0);
    let ls = lines(&o);
    assert!(ls.contains(&"cycles\t2".to_string()));
    assert_eq!(ls.iter().filter(|l| l.starts_with("tree\t")).count(), 2);

    let o = run(&["factor", "paren", "--n", "9", "--k", "3", "--cycles"], None);
    let ls = lines(&o);
    let cycles: Vec<&String> = ls.iter().filter(|l| l.len() > 9 && !l.contains('\t')).collect();
    let total: usize = cycles.iter().map(|l| l.split(' ').count()).sum();
    assert_eq!(total as u64, binom(9, 3));
    for l in ls.iter().filter(|l| l.starts_with("speeds\t")) {
        let s: usize = l.split('\t').nth(2).unwrap().split(',').map(|v| v.parse::<usize>().unwrap()).sum();
        assert_eq!(s, 3);
    }
    assert_eq!(code(&run(&["factor", "paren", "--k", "3"], None)), 2);
    assert_eq!(code(&run(&["factor", "kt", "--k", "3", "--n", "7"], None)), 2);
}

#[test]
fn glue_assembles() {
    let o = run(&["glue", "kt", "--k", "3"], None);
    assert_eq!(code(&o), 0);
    assert!(lines(&o).contains(&"assembled\t70".to_string()));

    let o = run(&["glue", "paren", "--n", "10", "--k", "3", "--lengths", "4", "--emit"], None);
    assert_eq!(code(&o), 0);
    let v = run(&["verify", "kneser:n=10,k=3"], Some(&stdout(&o)));
    assert_eq!(code(&v), 0);

    assert_eq!(code(&run(&["glue", "odd", "--k", "2"], None)), 3);
}

#[test]
fn solve_modes() {
    let o = run(&["solve", "kneser:n=5,k=2"], None);
    assert_eq!(code(&o), 3);
    let o = run(&["solve", "kneser:n=5,k=2", "--mode", "path"], None);
    assert_eq!(code(&o), 0);
    assert_eq!(lines(&o).len(), 10);
    assert_eq!(code(&run(&["solve", "kneser:n=8,k=3", "--budget", "10"], None)), 4);
    assert_eq!(code(&run(&["solve", "hypercube:n=3", "--budget", "0"], None)), 2);
}

#[test]
fn output_is_deterministic() {
    for args in [&["gen", "odd:k=3"][..], &["gen", "kneser:n=9,k=3", "--format", "jsonl"], &["gliders", "--start", "1101000100100"]] {
        assert_eq!(run(args, None).stdout, run(args, None).stdout);
    }
}
