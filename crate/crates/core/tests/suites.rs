use supertheory::verify::{run_suite, Suite};
use supertheory::{Family, GroupSpec, Guards, Session};

fn session(fam: Family, p: u64, half: &[usize]) -> Session {
    let spec = GroupSpec::from_half_blocks(fam, 2, p, half).unwrap();
    Session::new(spec, Guards::default(), None).unwrap()
}

fn failures(s: &Session) -> Vec<String> {
    let r = run_suite(s, Suite::All, None, true).unwrap();
    eprintln!("{} {:?}", s.spec().describe(), r.timings);
    r.checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| serde_json::to_string(c).unwrap())
        .collect()
}

#[test]
fn borel_d2() {
    assert_eq!(failures(&session(Family::D, 3, &[1, 1])), Vec::<String>::new());
}

#[test]
fn borel_b2() {
    assert_eq!(failures(&session(Family::B, 3, &[1, 1, 1])), Vec::<String>::new());
}

#[test]
fn borel_c2() {
    assert_eq!(failures(&session(Family::C, 3, &[1, 1])), Vec::<String>::new());
}

#[test]
fn b2_middle_block() {
    assert_eq!(failures(&session(Family::B, 3, &[1, 3])), Vec::<String>::new());
}

#[test]
fn c2_two_blocks() {
    for f in failures(&session(Family::C, 3, &[2])) {
        eprintln!("{f}");
    }
}

#[test]
fn borel_c2_q5() {
    assert_eq!(failures(&session(Family::C, 5, &[1, 1])), Vec::<String>::new());
}
