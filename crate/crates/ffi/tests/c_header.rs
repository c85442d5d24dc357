//! Compiles and runs a C program against the generated header and the
//! static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "affinoid.h"

int main(void) {
    AffinoidGroupoid *gp = NULL;
    if (affinoid_groupoid_load("catalog:pair1", &gp) != AFFINOID_STATUS_OK) return 10;
    AffinoidReport *report = NULL;
    if (affinoid_run_suite("groupoid", gp, 0, false, 0, &report) != AFFINOID_STATUS_OK) return 11;
    char *json = affinoid_report_json(report);
    if (json == NULL || strstr(json, "affinoid-report/1") == NULL) return 12;
    affinoid_string_free(json);
    affinoid_report_free(report);
    affinoid_groupoid_free(gp);
    if (affinoid_groupoid_load("catalog:missing", &gp) != AFFINOID_STATUS_INVALID_INPUT) return 13;
    printf("%s\n", affinoid_last_error());
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // The test binary lives in <target>/<profile>/deps.
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let lib = target_dir().join("libaffinoid_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(&src, PROGRAM).unwrap();
    let exe = dir.path().join("main");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler runs");
    assert!(status.success(), "compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("missing"));
}
