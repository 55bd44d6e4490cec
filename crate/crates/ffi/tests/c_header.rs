//! Compiles and runs a small C program against the generated header and the
//! static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include "sl_orbits.h"

int main(void) {
    uint64_t order = 0, label = 0, size = 0;
    if (slo_group_order(2, 6, &order) != SLO_STATUS_OK || order != 144) return 1;

    uint64_t a[2] = {1, 0}, m[4] = {2, 0, 0, 2}, out[2];
    if (slo_act(4, 2, a, m, out) != SLO_STATUS_NOT_IN_SL) return 2;

    SloCensus *c = NULL;
    if (slo_census_new(2, 4, &c) != SLO_STATUS_OK) return 3;
    if (slo_census_len(c) != 3 || slo_census_total(c) != 16) return 4;
    if (slo_census_get(c, 1, &label, &size) != SLO_STATUS_OK || label != 2 || size != 3) return 5;
    slo_census_free(c);

    printf("%s\n", slo_status_message(SLO_STATUS_BUDGET_EXCEEDED));
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<this test> -> target/<profile>
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .and_then(|p| p.parent())
        .unwrap()
        .to_path_buf();
    let lib = profile_dir.join("libsl_orbits_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());

    let work = std::env::temp_dir().join(format!("sl_orbits_c_{}", std::process::id()));
    std::fs::create_dir_all(&work).unwrap();
    let src = work.join("smoke.c");
    let exe = work.join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();

    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler is available");
    assert!(status.success(), "C compilation failed");

    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "enumeration budget exceeded\n"
    );
    let _ = std::fs::remove_dir_all(&work);
}
