use mzv_core::identities::{check_double_shuffle, run_suite, SuiteConfig};
use mzv_core::numerics::Prec;
use mzv_core::word_algebra::Composition;

fn compositions_up_to_depth(max_depth: usize, max_weight: u32) -> Vec<Composition> {
    (2..=max_weight)
        .flat_map(Composition::admissible_of_weight)
        .filter(|c| c.depth() <= max_depth)
        .collect()
}

#[test]
fn double_shuffle_small_pairs() {
    let comps = compositions_up_to_depth(3, 7);
    let mut count = 0;
    for u in &comps {
        for v in &comps {
            if u.depth() + v.depth() > 4 || u.weight() + v.weight() > 8 {
                continue;
            }
            let r = check_double_shuffle(u, v, Prec::digits(30)).unwrap();
            assert!(r.pass, "{u} {v}: {r}");
            count += 1;
        }
    }
    assert!(count > 20);
}

#[test]
fn suite_is_deterministic_across_job_counts() {
    let text = "duality max_weight=6\ngf family=drin m=0..2 n=1\nreduction name=euler m=2..5\nq_shuffle max_len=2 x=4/5 q=7/10";
    let config = SuiteConfig::parse(text).unwrap();
    let strip = |jobs| {
        let report = run_suite(&config, jobs).unwrap();
        assert!(report.all_pass(), "{}", report.to_table());
        report
            .results
            .iter()
            .map(|r| format!("{} {} {} {} {}", r.name, r.params_text(), r.lhs, r.rhs, r.residual))
            .collect::<Vec<_>>()
    };
    assert_eq!(strip(1), strip(3));
}

#[test]
fn suite_json_lines_parse() {
    let config = SuiteConfig::parse("sum_formula n=4\nq_limit w=ab x=1").unwrap();
    let report = run_suite(&config, 2).unwrap();
    for line in report.to_json_lines().lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["pass"], serde_json::Value::Bool(true));
        assert!(v["params"].is_object());
    }
}
