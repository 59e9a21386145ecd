//! Compiles and runs a small C client against the generated header and
//! the staticlib, exercising the ABI from outside Rust.

use std::path::PathBuf;
use std::process::Command;

const C_CLIENT: &str = r#"
#include <stdio.h>
#include <string.h>
#include "chenbar.h"

int main(void) {
    ChbConnection *conn = NULL;
    const char *text = "torus g=1\nblocks 1 1\nentry 1 2 1 1 : dz1\n";
    if (chb_connection_parse(text, &conn) != ChbStatus_Ok) return 1;

    bool flat = false, trivial = false, higgs = true;
    if (chb_connection_is_flat(conn, &flat) != ChbStatus_Ok || !flat) return 2;
    if (chb_connection_classify(conn, &trivial, &higgs) != ChbStatus_Ok) return 3;
    if (!trivial || higgs) return 4;

    char *matrix = NULL;
    if (chb_connection_monodromy(conn, "a1", &matrix) != ChbStatus_Ok) return 5;
    if (strcmp(matrix, "[1, 1]\n[0, 1]\n") != 0) return 6;
    chb_string_free(matrix);

    bool agree = false;
    char *report = NULL;
    if (chb_connection_verify(conn, &agree, &report) != ChbStatus_Ok || !agree) return 7;
    chb_string_free(report);
    chb_connection_free(conn);

    ChbConnection *bad = NULL;
    if (chb_connection_parse("nonsense", &bad) != ChbStatus_ParseError) return 8;
    char *message = chb_last_error_message();
    if (message == NULL) return 9;
    chb_string_free(message);
    return 0;
}
"#;

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// `cargo test` links integration tests against the rlib only, so the
/// staticlib is produced here with an explicit build.
fn staticlib() -> PathBuf {
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let build = Command::new(cargo)
        .args(["build", "-p", "chenbar-ffi"])
        .current_dir(manifest_dir())
        .output()
        .expect("cargo is available");
    assert!(
        build.status.success(),
        "staticlib build failed:\n{}",
        String::from_utf8_lossy(&build.stderr)
    );
    let candidate = manifest_dir().join("../../target/debug/libchenbar_ffi.a");
    assert!(candidate.exists(), "staticlib missing after build");
    candidate
}

#[test]
fn c_client_compiles_and_runs() {
    let dir = std::env::temp_dir().join(format!("chenbar-ffi-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let source = dir.join("smoke.c");
    let binary = dir.join("smoke");
    std::fs::write(&source, C_CLIENT).unwrap();

    let compile = Command::new("cc")
        .arg(&source)
        .arg("-I")
        .arg(manifest_dir().join("include"))
        .arg(staticlib())
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&binary)
        .output()
        .expect("cc is available");
    assert!(
        compile.status.success(),
        "compilation failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&binary).output().expect("smoke binary runs");
    assert!(
        run.status.success(),
        "smoke client exited with {:?}",
        run.status.code()
    );
    std::fs::remove_dir_all(&dir).ok();
}
