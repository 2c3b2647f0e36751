use std::ffi::CString;
use std::path::Path;
use std::process::Command;
use std::ptr;

use facdecomp_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0 as libc::c_char; 256];
    let n = unsafe { fd_last_error(buf.as_mut_ptr(), buf.len()) };
    let bytes: Vec<u8> = buf[..n.min(255)].iter().map(|&c| c as u8).collect();
    String::from_utf8(bytes).unwrap()
}

fn word(spec: &str) -> *mut FdWord {
    let spec = CString::new(spec).unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { fd_word_new(spec.as_ptr(), &mut w) }, FdStatus::Ok);
    w
}

#[test]
fn prefix_round_trip() {
    let w = word("tm");
    let mut buf = [0 as libc::c_char; 16];
    let mut written = 0;
    unsafe {
        assert_eq!(
            fd_word_prefix(w, 8, buf.as_mut_ptr(), buf.len(), &mut written),
            FdStatus::Ok
        );
        assert_eq!(written, 8);
        let s = std::ffi::CStr::from_ptr(buf.as_ptr()).to_str().unwrap();
        assert_eq!(s, "01101001");
        assert_eq!(
            fd_word_prefix(w, 16, buf.as_mut_ptr(), buf.len(), &mut written),
            FdStatus::BufferTooSmall
        );
        assert_eq!(written, 16);
        fd_word_free(w);
    }
}

#[test]
fn bad_spec_reports_token() {
    let spec = CString::new("sturm:1,(x)").unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(
        unsafe { fd_word_new(spec.as_ptr(), &mut w) },
        FdStatus::BadSpec
    );
    assert!(w.is_null());
    assert!(last_error().contains("`x`"), "{}", last_error());
    assert_eq!(
        unsafe { fd_word_new(ptr::null(), &mut w) },
        FdStatus::NullPointer
    );
}

#[test]
fn index_queries() {
    let w = word("fib");
    let mut idx = ptr::null_mut();
    unsafe {
        assert_eq!(fd_index_new(w, 100, 64, &mut idx), FdStatus::WindowTooSmall);
        assert_eq!(fd_index_new(w, 3200, 64, &mut idx), FdStatus::Ok);
        for n in 1..=64 {
            let mut p = 0;
            assert_eq!(fd_index_complexity(idx, n, &mut p), FdStatus::Ok);
            assert_eq!(p, n as u64 + 1);
        }
        let mut p = 0;
        assert_eq!(fd_index_complexity(idx, 65, &mut p), FdStatus::OutOfRange);
        let mut g = 0;
        assert_eq!(fd_index_accumulative(idx, 3, &mut g), FdStatus::Ok);
        assert_eq!(g, 2 + 3 + 4);
        let (mut c, mut k) = (0, 0);
        assert_eq!(fd_index_slopes(idx, &mut c, &mut k), FdStatus::Ok);
        assert_eq!(c, 2);
        let mut found = false;
        let f = CString::new("00100").unwrap();
        assert_eq!(fd_index_contains(idx, f.as_ptr(), &mut found), FdStatus::Ok);
        assert!(found);
        let f = CString::new("11").unwrap();
        assert_eq!(fd_index_contains(idx, f.as_ptr(), &mut found), FdStatus::Ok);
        assert!(!found);
        let mut cover = FdCover::default();
        assert_eq!(fd_marker_cover(idx, &mut cover), FdStatus::Ok);
        assert_eq!(cover.covered, cover.total);
        fd_index_free(idx);
        fd_word_free(w);
    }
}

#[test]
fn thue_morse_cover_counts() {
    let w = word("tm");
    let mut idx = ptr::null_mut();
    let mut cover = FdCover::default();
    unsafe {
        assert_eq!(fd_index_new(w, 6400, 128, &mut idx), FdStatus::Ok);
        assert_eq!(fd_thue_morse_cover(idx, &mut cover), FdStatus::Ok);
        fd_index_free(idx);
        fd_word_free(w);
    }
    assert_eq!(cover.covered, cover.total);
    assert_eq!((cover.s_max, cover.t_max), (2, 2));
}

#[test]
fn marker_cover_rejects_quadratic_word() {
    let w = word("abk");
    let mut idx = ptr::null_mut();
    let mut cover = FdCover::default();
    unsafe {
        assert_eq!(fd_index_new(w, 6400, 128, &mut idx), FdStatus::Ok);
        assert_eq!(fd_marker_cover(idx, &mut cover), FdStatus::Precondition);
        fd_index_free(idx);
        fd_word_free(w);
    }
    assert!(last_error().contains("not linear"), "{}", last_error());
}

#[test]
fn scalar_functions() {
    let mut p = 0;
    let s = CString::new("aabaa").unwrap();
    assert_eq!(
        unsafe { fd_minimal_period(s.as_ptr(), &mut p) },
        FdStatus::Ok
    );
    assert_eq!(p, 3);
    let e = CString::new("").unwrap();
    assert_eq!(
        unsafe { fd_minimal_period(e.as_ptr(), &mut p) },
        FdStatus::Precondition
    );
    assert_eq!(fd_count_e(9), 0);
    assert_eq!(fd_count_e(1000), facdecomp::experiments::count_e(1000));
}

#[test]
fn null_handles_are_rejected() {
    let mut p = 0;
    unsafe {
        assert_eq!(
            fd_index_complexity(ptr::null(), 1, &mut p),
            FdStatus::NullPointer
        );
        fd_index_free(ptr::null_mut());
        fd_word_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_api_and_compiles() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/facdecomp.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "fd_word_new",
        "fd_index_complexity",
        "fd_marker_cover",
        "FD_STATUS_OK",
        "FdCover",
        "fd_last_error",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    // Syntax-check the header with the system C compiler when there is one.
    let dir = tempfile_dir();
    let src = dir.join("use_header.c");
    std::fs::write(&src, "#include \"facdecomp.h\"\nint main(void) { FdWord *w = 0; return fd_word_new(\"tm\", &w) == FD_STATUS_OK ? 0 : 1; }\n").unwrap();
    let include = header.parent().unwrap();
    match Command::new("cc")
        .arg("-fsyntax-only")
        .arg("-I")
        .arg(include)
        .arg(&src)
        .status()
    {
        Ok(status) => assert!(status.success()),
        Err(_) => eprintln!("no C compiler; header syntax check skipped"),
    }
}

fn tempfile_dir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("facdecomp-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
