//! Evaluating a JSON query document in-process, as the command-line tool
//! does.

use tcrlab::cli::{evaluate_document, QueryDocument};

const QUERY: &str = r#"{
  "schema_version": "1.0",
  "hom": {
    "kind": "abelian",
    "source": {"free_rank": 3},
    "target": {"free_rank": 1, "torsion_factors": [2, 4]},
    "matrix": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
  },
  "r": [2, 3],
  "invariants": ["tc_r"]
}"#;

fn main() {
    let doc = QueryDocument::parse(QUERY).unwrap();
    let report = evaluate_document(&doc);
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
}
