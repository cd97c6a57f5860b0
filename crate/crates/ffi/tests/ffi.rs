use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use septree_ffi::*;

const THREE_BLOBS: &str = r#"{"n":17,"names":["a1","a2","a3","a4","x1","p","x2","b1","b2","b3","y2","q","x3","c1","c2","c3","c4"],
"edges":[[0,1],[0,2],[0,3],[0,4],[1,2],[1,3],[1,4],[2,3],[2,4],[3,4],[4,5],[5,6],
[6,7],[6,8],[6,9],[6,10],[7,8],[7,9],[7,10],[8,9],[8,10],[9,10],[10,11],[11,12],
[12,13],[12,14],[12,15],[12,16],[13,14],[13,15],[13,16],[14,15],[14,16],[15,16]]}"#;

fn parse(text: &str) -> *mut SeptreeGraph {
    let src = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { septree_graph_parse(src.as_ptr(), &mut g) }, SeptreeStatus::Ok);
    assert!(!g.is_null());
    g
}

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { septree_string_free(s) };
    out
}

#[test]
fn blocks_through_the_c_abi() {
    let g = parse("3 2\n0 1\n1 2\n");
    assert_eq!(unsafe { septree_graph_vertex_count(g) }, 3);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { septree_k_blocks_json(g, 2, 0, &mut out) }, SeptreeStatus::Ok);
    assert_eq!(take(out), "[[0,1],[1,2]]");
    unsafe { septree_graph_free(g) };
}

#[test]
fn decomposition_handle() {
    let g = parse(THREE_BLOBS);
    let strategy = CString::new("|ext_r").unwrap();
    let mut d = ptr::null_mut();
    let status = unsafe { septree_decompose(g, 2, strategy.as_ptr(), SeptreeProfiles::All, 0, &mut d) };
    assert_eq!(status, SeptreeStatus::Ok);
    assert_eq!(unsafe { septree_decomposition_node_count(d) }, 7);
    assert_eq!(unsafe { septree_decomposition_adhesion(d) }, 1);
    assert_eq!(unsafe { septree_decomposition_verify(d) }, SeptreeStatus::Ok);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { septree_decomposition_json(d, &mut json) }, SeptreeStatus::Ok);
    assert!(take(json).starts_with("{\"nodes\":"));
    let mut dot = ptr::null_mut();
    assert_eq!(unsafe { septree_decomposition_dot(d, &mut dot) }, SeptreeStatus::Ok);
    assert!(take(dot).contains("label=\"{x1}\""));
    let (mut p, mut b, mut t) = (0, 0, 0);
    assert_eq!(
        unsafe { septree_count_profiles(g, 2, 0, &mut p, &mut b, &mut t) },
        SeptreeStatus::Ok
    );
    assert_eq!((p, b), (7, 7));
    unsafe {
        septree_decomposition_free(d);
        septree_graph_free(g);
    }
}

#[test]
fn errors_set_status_and_message() {
    let bad = CString::new("2 1\n0 5\n").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { septree_graph_parse(bad.as_ptr(), &mut g) },
        SeptreeStatus::Parse
    );
    assert!(g.is_null());
    let msg = unsafe { CStr::from_ptr(septree_last_error()) }.to_str().unwrap();
    assert!(msg.contains("line 2"), "{msg}");

    assert_eq!(
        unsafe { septree_graph_parse(ptr::null(), &mut g) },
        SeptreeStatus::NullPointer
    );
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { septree_k_blocks_json(ptr::null(), 2, 0, &mut out) },
        SeptreeStatus::NullPointer
    );

    let g = parse(THREE_BLOBS);
    assert_eq!(
        unsafe { septree_k_blocks_json(g, 2, 5, &mut out) },
        SeptreeStatus::Resource
    );
    let strategy = CString::new("|ext").unwrap();
    let mut d = ptr::null_mut();
    let status = unsafe { septree_decompose(g, 2, strategy.as_ptr(), SeptreeProfiles::All, 0, &mut d) };
    assert_eq!(status, SeptreeStatus::Invalid);
    assert!(d.is_null());
    assert_eq!(unsafe { septree_k_blocks_json(g, 2, 0, &mut out) }, SeptreeStatus::Ok);
    assert!(septree_last_error().is_null());
    unsafe {
        septree_string_free(out);
        septree_graph_free(g);
        septree_graph_free(ptr::null_mut());
        septree_decomposition_free(ptr::null_mut());
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/septree.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in [
        "septree_graph_parse",
        "septree_decompose",
        "septree_last_error",
        "SEPTREE_STATUS_RESOURCE",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(cc) = Command::new("cc").arg("--version").output() else {
        return;
    };
    if !cc.status.success() {
        return;
    }
    let dir = tempfile_dir();
    let src = dir.join("use_header.c");
    std::fs::write(
        &src,
        "#include \"septree.h\"\nint main(void) { SeptreeGraph *g = 0; return septree_graph_parse(\"1 0\\n\", &g); }\n",
    )
    .unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}

fn tempfile_dir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("septree-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
