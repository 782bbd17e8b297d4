use serde_json::Value;
use superchar_web::{hopf_json, t_table_json, ut_table_json};

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn ut3_f2_table() {
    let v = parse(&ut_table_json(3, 2).unwrap());
    assert_eq!(v["order"], 8);
    assert_eq!(v["characters"].as_array().unwrap().len(), 5);
}

#[test]
fn t2_f3_table() {
    let v = parse(&t_table_json(2, 3).unwrap());
    assert_eq!(v["order"], 12);
    assert_eq!(v["classes"].as_array().unwrap().len(), 5);
}

#[test]
fn large_groups_are_refused() {
    let e = ut_table_json(6, 5).unwrap_err();
    assert!(e.contains("size cap"), "{e}");
    assert!(t_table_json(2, 4).is_err());
}

#[test]
fn hopf_operations() {
    let labels = |s: &[&str]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let v = parse(&hopf_json("coprod", "ns", &labels(&["14|2|3"]), 0).unwrap());
    assert_eq!(v.as_object().unwrap().len(), 6);
    assert_eq!(v["1 ⊗ 13|2"], 2);
    let v = parse(&hopf_json("mult", "ns", &labels(&["1", "1"]), 0).unwrap());
    assert_eq!(v, serde_json::json!({"12": 1, "1|2": 1}));
    let v = parse(&hopf_json("coprod", "nps", &labels(&["13;2:1"]), 1).unwrap());
    assert_eq!(v.as_object().unwrap().len(), 4);
    assert!(hopf_json("coprod", "ns", &labels(&["1", "12"]), 0).is_err());
    assert!(hopf_json("mult", "nps", &labels(&[";1:2"]), 1).is_err());
    assert!(hopf_json("antipode", "ns", &labels(&["1"]), 0).is_err());
}
