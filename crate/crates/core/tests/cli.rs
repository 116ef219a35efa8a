use barth_nieto::cache::CountCache;
use barth_nieto::cli::{run, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
use barth_nieto::maps::RoundtripReport;
use barth_nieto::modularity::{Verdict, VerificationReport};
use barth_nieto::varieties::CountRecord;

fn bnq(args: &[&str]) -> barth_nieto::cli::Outcome {
    run(std::iter::once("bnq").chain(args.iter().copied()))
}

#[test]
fn count_table() {
    let out = bnq(&["count", "--primes", "5,7,11,13,17,19,23,73"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let expected = "p\t#U\t#Y\tt3\n\
        5\t100\t1620\t6\n\
        7\t340\t3160\t-16\n\
        11\t1300\t7920\t12\n\
        13\t2140\t11260\t38\n\
        17\t5020\t20340\t-126\n\
        19\t6820\t25840\t20\n\
        23\t11980\t39600\t168\n\
        73\t388780\t658900\t218\n";
    assert_eq!(out.stdout, expected);
}

#[test]
fn count_twisted_and_errors() {
    let out = bnq(&["count", "--prime", "13", "--twisted"]);
    assert_eq!(
        out.stdout.lines().nth(1),
        Some("13\t2140\t11260\t38\t3440\t13080")
    );
    let out = bnq(&["count", "--prime", "4"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("not prime"));
    let out = bnq(&["count", "--prime", "2"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("good reduction"));
}

#[test]
fn count_json_round_trip() {
    let out = bnq(&["count", "--primes", "5..13", "--format", "json"]);
    let rows: Vec<CountRecord> = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(
        serde_json::to_string_pretty(&rows).unwrap() + "\n",
        out.stdout
    );
}

#[test]
fn qexp() {
    let out = bnq(&["qexp", "-N", "13"]);
    let coeffs: Vec<i64> = out
        .stdout
        .lines()
        .skip(1)
        .map(|l| l.split('\t').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(coeffs, [1, -2, -3, 4, 6, 6, -16, -8, 9, -12, 12, -12, 38]);
    let out = bnq(&["qexp", "-N", "100", "--check"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("0 violations"));
    assert_eq!(bnq(&["qexp", "-N", "0"]).code, EXIT_USAGE);
}

#[test]
fn verify_report() {
    let out = bnq(&["verify", "--hodge-prime", "13", "--k-range", "7..59"]);
    assert_eq!(out.code, EXIT_OK, "{}{}", out.stdout, out.stderr);
    let report: VerificationReport = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(report.verdict, Verdict::Verified);
    assert!(report.hodge.iter().all(|h| h.admissible == [0]));
    assert!(report.k_values.iter().all(|k| k.k == 40));
    assert_eq!(report.k_values.len(), 8);
    let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
    assert_eq!(again, out.stdout);

    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    for key in [
        "tool_version",
        "primes",
        "rows",
        "livne",
        "hodge",
        "k_values",
        "verdict",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    for key in ["p", "n_U", "n_Y", "t3", "a_p", "match"] {
        assert!(v["rows"][0].get(key).is_some(), "missing rows.{key}");
    }
    for key in ["S", "m", "T"] {
        assert!(v["livne"].get(key).is_some(), "missing livne.{key}");
    }
    assert_eq!(v["verdict"], "verified");
}

#[test]
fn verify_incomplete_without_73() {
    let out = bnq(&["verify", "--primes", "5..23", "--k-range", "none"]);
    assert_eq!(out.code, EXIT_FAILURE);
    let report: VerificationReport = serde_json::from_str(&out.stdout).unwrap();
    assert!(matches!(report.verdict, Verdict::Incomplete(_)));
}

#[test]
fn maps_reports() {
    let out = bnq(&["maps", "--prime", "13", "--samples", "1000", "--seed", "5"]);
    assert_eq!(out.code, EXIT_OK);
    let r: RoundtripReport = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!((r.samples, r.seed, r.failures()), (1000, Some(5), 0));

    let out = bnq(&["maps", "--prime", "5", "--exhaustive"]);
    let r: RoundtripReport = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!((r.samples, r.failures()), (100, 0));
    assert!(r.exhaustive);

    assert_eq!(bnq(&["maps", "--prime", "3"]).code, EXIT_USAGE);
}

#[test]
fn cayley() {
    let out = bnq(&["cayley", "--primes", "5..41"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout.lines().count(), 12);
    assert!(out.stdout.lines().skip(1).all(|l| l.ends_with("true")));
    let out = bnq(&["cayley", "--prime", "13"]);
    assert!(out
        .stdout
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("13\t274\t274\t0"));
    let out = bnq(&["cayley", "--prime", "7"]);
    assert!(out
        .stdout
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("7\t92\t92\t0"));
}

#[test]
fn threads_do_not_change_output() {
    let one = bnq(&["count", "--primes", "5..31", "--threads", "1", "--twisted"]);
    let four = bnq(&["count", "--primes", "5..31", "--threads", "4", "--twisted"]);
    assert_eq!(one, four);
    let one = bnq(&["maps", "--prime", "17", "--threads", "1"]);
    let four = bnq(&["maps", "--prime", "17", "--threads", "4"]);
    assert_eq!(one, four);
}

#[test]
fn cache_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("counts.json");
    let p = path.to_str().unwrap();
    let first = bnq(&["count", "--primes", "5,7", "--cache", p]);
    assert_eq!(first.code, EXIT_OK);
    let cache = CountCache::open(&path).unwrap();
    assert_eq!(cache.entries().len(), 4);
    assert_eq!(cache.get("U", 7), Some(340));

    let second = bnq(&["count", "--primes", "5,7", "--cache", p, "--recheck"]);
    assert_eq!(second.stdout, first.stdout);

    // corrupt one entry: plain reads trust it, --recheck refuses
    let text = std::fs::read_to_string(&path)
        .unwrap()
        .replace("340", "342");
    std::fs::write(&path, text).unwrap();
    let trusted = bnq(&["count", "--prime", "7", "--cache", p]);
    assert!(trusted.stdout.contains("7\t342"));
    let checked = bnq(&["count", "--prime", "7", "--cache", p, "--recheck"]);
    assert_eq!(checked.code, EXIT_FAILURE);
    assert!(checked.stderr.contains("recheck"));
}
