use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use fuzzbisim_ffi::*;

const SEVEN_VERTICES: &str = "v a\nv b\nv c\nv d\nv e\nv f\nv g\n\
e a r c 1\ne a r d 0.7\ne a r e 1\ne b r e 1\ne b r f 1\ne b r g 0.6\n\
e f r a 1\ne c r a 1\ne g r b 1\n";

fn parse(text: &str) -> *mut FzbGraph {
    let text = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { fzb_graph_parse(text.as_ptr(), &mut g) },
        FzbStatus::Ok
    );
    g
}

fn blocks(p: *const FzbPartition) -> Vec<Vec<String>> {
    let mut count = 0;
    unsafe {
        assert_eq!(fzb_partition_block_count(p, &mut count), FzbStatus::Ok);
        (0..count)
            .map(|b| {
                let mut len = 0;
                assert_eq!(fzb_partition_block_len(p, b, &mut len), FzbStatus::Ok);
                (0..len)
                    .map(|i| {
                        let mut s = ptr::null();
                        assert_eq!(fzb_partition_vertex(p, b, i, &mut s), FzbStatus::Ok);
                        CStr::from_ptr(s).to_str().unwrap().to_owned()
                    })
                    .collect()
            })
            .collect()
    }
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(fzb_last_error()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn computes_seven_vertices_both_ways() {
    let g = parse(SEVEN_VERTICES);
    for (counting, expected) in [
        (false, vec!["a b", "c f g", "d e"]),
        (true, vec!["a", "b", "c f", "d e", "g"]),
    ] {
        let mut p = ptr::null_mut();
        assert_eq!(unsafe { fzb_compute(g, counting, &mut p) }, FzbStatus::Ok);
        let got: Vec<String> = blocks(p).iter().map(|b| b.join(" ")).collect();
        assert_eq!(got, expected);
        let mut json = ptr::null_mut();
        assert_eq!(
            unsafe { fzb_partition_to_json(p, &mut json) },
            FzbStatus::Ok
        );
        let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
        assert!(text.starts_with("[[\"a\""));
        unsafe {
            fzb_string_free(json);
            fzb_partition_free(p);
        }
    }
    unsafe { fzb_graph_free(g) };
}

#[test]
fn engine_and_oracle_agree_on_random_graphs() {
    for seed in 0..20 {
        let mut g = ptr::null_mut();
        assert_eq!(
            unsafe { fzb_graph_random(10, 30, 4, 2, seed, &mut g) },
            FzbStatus::Ok
        );
        let (mut n, mut m) = (0, 0);
        unsafe {
            fzb_graph_vertex_count(g, &mut n);
            fzb_graph_edge_count(g, &mut m);
        }
        assert_eq!((n, m), (10, 30));
        for counting in [false, true] {
            let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
            unsafe {
                assert_eq!(fzb_compute(g, counting, &mut a), FzbStatus::Ok);
                assert_eq!(fzb_oracle_compute(g, counting, &mut b), FzbStatus::Ok);
            }
            assert_eq!(blocks(a), blocks(b));
            unsafe {
                fzb_partition_free(a);
                fzb_partition_free(b);
            }
        }
        unsafe { fzb_graph_free(g) };
    }
}

#[test]
fn text_round_trip() {
    let g = parse(SEVEN_VERTICES);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { fzb_graph_to_text(g, &mut text) }, FzbStatus::Ok);
    let owned = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_owned();
    let again = parse(&owned);
    let mut m = 0;
    unsafe { fzb_graph_edge_count(again, &mut m) };
    assert_eq!(m, 9);
    unsafe {
        fzb_string_free(text);
        fzb_graph_free(g);
        fzb_graph_free(again);
    }
}

#[test]
fn error_codes() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(
            fzb_graph_parse(ptr::null(), &mut g),
            FzbStatus::NullArgument
        );
        let bad = CString::new("v a\ne a r b 0.5\n").unwrap();
        assert_eq!(fzb_graph_parse(bad.as_ptr(), &mut g), FzbStatus::ParseError);
        assert!(last_error().contains("line 2"));
        let invalid = [0xffu8, 0];
        assert_eq!(
            fzb_graph_parse(invalid.as_ptr().cast(), &mut g),
            FzbStatus::InvalidUtf8
        );
        assert_eq!(
            fzb_graph_random(2, 9, 1, 2, 0, &mut g),
            FzbStatus::InvalidParameters
        );
        assert!(g.is_null());
        let mut count = 0;
        assert_eq!(
            fzb_graph_vertex_count(ptr::null(), &mut count),
            FzbStatus::NullArgument
        );

        let g = parse("v a\n");
        assert_eq!(
            fzb_graph_vertex_count(g, ptr::null_mut()),
            FzbStatus::NullArgument
        );
        let mut p = ptr::null_mut();
        assert_eq!(fzb_compute(g, false, &mut p), FzbStatus::Ok);
        assert_eq!(last_error(), "");
        let mut len = 0;
        assert_eq!(
            fzb_partition_block_len(p, 1, &mut len),
            FzbStatus::IndexOutOfRange
        );
        let mut s = ptr::null();
        assert_eq!(
            fzb_partition_vertex(p, 0, 1, &mut s),
            FzbStatus::IndexOutOfRange
        );
        fzb_partition_free(p);
        fzb_graph_free(g);
        fzb_graph_free(ptr::null_mut());
        fzb_partition_free(ptr::null_mut());
        fzb_string_free(ptr::null_mut());
    }
}

fn target_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

/// Compiles a C program against the generated header and the static
/// library and runs it.
#[test]
fn c_program_links_against_header() {
    let lib = target_dir().join("libfuzzbisim_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() || !lib.exists() {
        eprintln!(
            "skipping: no C compiler or static library at {}",
            lib.display()
        );
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <string.h>
#include "fuzzbisim.h"
int main(void) {
    FzbGraph *g = NULL;
    if (fzb_graph_parse("v a\nv b\nv c\ne a r c 1\ne b r c 1\n", &g) != FZB_STATUS_OK) return 1;
    FzbPartition *p = NULL;
    if (fzb_compute(g, false, &p) != FZB_STATUS_OK) return 2;
    char *json = NULL;
    if (fzb_partition_to_json(p, &json) != FZB_STATUS_OK) return 3;
    printf("%s\n", json);
    int ok = strcmp(json, "[[\"a\",\"b\"],[\"c\"]]") == 0;
    fzb_string_free(json);
    fzb_partition_free(p);
    fzb_graph_free(g);
    return ok ? 0 : 4;
}
"#,
    )
    .unwrap();
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let exe = dir.path().join("main");
    let status = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}
