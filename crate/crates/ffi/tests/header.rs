//! Compiles and runs a C program against the generated header and the
//! static library.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "blstate.h"

int main(void) {
    BlsAlgebra *a = NULL;
    if (bls_algebra_from_spec("product(mv-chain(1),mv-chain(1))", &a) != BLS_STATUS_OK) return 10;
    size_t n = 0, count = 0;
    bls_algebra_size(a, &n);
    if (n != 4) return 11;
    if (bls_operator_count(a, BLS_CLASS_STATE, &count) != BLS_STATUS_OK) return 12;
    size_t states = 0;
    bls_extremal_state_count(a, &states);
    char *label = NULL;
    bls_algebra_label(a, 1, &label);
    printf("%zu %zu %zu %s\n", n, count, states, label);
    bls_string_free(label);
    if (bls_algebra_from_spec("nope", &a) != BLS_STATUS_PARSE) return 13;
    if (strlen(bls_last_error()) == 0) return 14;
    bls_algebra_free(a);
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_is_current_and_declares_the_api() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/blstate.h")).unwrap();
    for name in
        ["bls_algebra_from_spec", "bls_operator_class", "bls_extremal_state_value", "bls_last_error", "BLS_STATUS_OK"]
    {
        assert!(header.contains(name), "{name} missing from header");
    }
}

#[test]
fn c_program_links_against_static_library() {
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let lib = target_dir().join("libblstate_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("c_smoke");
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    let bin = dir.join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("cc available");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "4 3 2 (0,1)\n");
}
