use bialgd_web::{quadratic_report, scan_json, subgroup_report};

#[test]
fn scan_of_s3_has_six_rows() {
    let json = scan_json("S3").unwrap();
    let doc: bialgd_core::scan::ScanDocument = serde_json::from_str(&json).unwrap();
    assert_eq!(doc.rows.len(), 6);
    assert!(doc.consistent);
}

#[test]
fn unknown_group_is_an_error() {
    assert!(scan_json("A5").unwrap_err().contains("unknown group"));
    assert!(subgroup_report("S3", 6, 0).is_err());
}

#[test]
fn subgroup_rows_follow_scan_order() {
    // row 4 of S3 is A3, row 1 a non-normal subgroup of order 2
    assert!(subgroup_report("S3", 4, 0).unwrap().ends_with("overall: pass\n"));
    assert!(subgroup_report("S3", 1, 0).unwrap().ends_with("overall: fail\n"));
}

#[test]
fn quadratic_demo() {
    assert!(quadratic_report(2, 0).unwrap().ends_with("overall: pass\n"));
    // d = 0 gives the dual numbers: Frobenius, with a non-separable centralizer
    let dual = quadratic_report(0, 0).unwrap();
    assert!(dual.contains("weak lift: not_separable"), "{dual}");
    assert!(quadratic_report(5000, 0).is_err());
}
