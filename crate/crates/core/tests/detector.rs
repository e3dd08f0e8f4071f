//! Sanity of the table comparator itself: a deliberately wrong entry must
//! fail on exactly its own row, with a State diff, without stopping the run.

use opecalc::catalog::{FieldLibrary, SystemCase};
use opecalc::linalg::{closure_check, ClosureEntry};
use opecalc::Engine;

#[test]
fn corrupted_entry_fails_only_its_own_row() {
    let lib = FieldLibrary::build(SystemCase::AdjointW).expect("library builds");
    let engine = Engine::new(&lib.system);
    let resolve = |name: &str| lib.resolve(name);
    let entries = [
        ClosureEntry::new("v_h", "v_h", &[(1, "-3 one")]),
        // Wrong on purpose: the true level term is -3/2 one.
        ClosureEntry::new("v_x", "v_y", &[(1, "-2 one"), (0, "v_h")]),
        ClosureEntry::new("F", "F", &[(1, "3 one")]),
    ];
    let rows = closure_check(&engine, &[], &resolve, &entries).expect("check runs");

    let bad: Vec<_> = rows.iter().filter(|r| !r.ok).collect();
    assert_eq!(bad.len(), 1, "exactly one row should fail");
    let row = bad[0];
    assert!(row.label.contains("v_x") && row.label.contains("v_y"), "label: {}", row.label);
    assert_ne!(row.expected, row.got, "failure carries the exact diff");
    assert!(rows.len() > entries.len(), "regularity rows beyond the listed poles are included");
}
