use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use sgdim_ffi::*;

fn last_error() -> String {
    let p = sg_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn from_text(text: &str) -> Result<*mut SgGame, (SgStatus, String)> {
    let c = CString::new(text).unwrap();
    let mut game = ptr::null_mut();
    match unsafe { sg_game_from_text(c.as_ptr(), &mut game) } {
        SgStatus::Ok => Ok(game),
        status => Err((status, last_error())),
    }
}

#[test]
fn majority_round_trip() {
    let game = from_text("sg 1\nn 3\nw 0 1\nw 0 2\nw 1 2\n").unwrap();
    unsafe {
        assert_eq!(sg_game_num_players(game), 3);
        assert_eq!(sg_game_num_min_winning(game), 3);
        let mut wins = false;
        assert_eq!(sg_game_is_winning(game, 0b011, &mut wins), SgStatus::Ok);
        assert!(wins);
        assert_eq!(sg_game_is_winning(game, 0b100, &mut wins), SgStatus::Ok);
        assert!(!wins);
        assert_eq!(sg_game_is_winning(game, 0b1000, &mut wins), SgStatus::InvalidInput);

        let mut weighted = false;
        let mut rep = ptr::null_mut();
        assert_eq!(sg_game_is_weighted(game, &mut weighted, &mut rep), SgStatus::Ok);
        assert!(weighted);
        assert_eq!(CStr::from_ptr(rep).to_str().unwrap(), "[2; 1, 1, 1]");
        sg_string_free(rep);

        let mut text = ptr::null_mut();
        assert_eq!(sg_game_to_text(game, &mut text), SgStatus::Ok);
        assert_eq!(CStr::from_ptr(text).to_str().unwrap(), "sg 1\nn 3\nw 0 1\nw 0 2\nw 1 2\n");
        sg_string_free(text);

        // Majority of three is self-dual.
        let mut dual = ptr::null_mut();
        assert_eq!(sg_game_dual(game, &mut dual), SgStatus::Ok);
        assert_eq!(sg_game_num_min_winning(dual), 3);
        sg_game_free(dual);
        sg_game_free(game);
    }
}

#[test]
fn parse_errors_carry_position() {
    let (status, message) = from_text("sg 1\nn 3\nw 0 x\n").unwrap_err();
    assert_eq!(status, SgStatus::Parse);
    assert!(message.contains("line 3, column 5"), "{message}");
}

#[test]
fn null_arguments_are_rejected() {
    unsafe {
        let mut game = ptr::null_mut();
        assert_eq!(sg_game_from_text(ptr::null(), &mut game), SgStatus::NullArgument);
        assert!(last_error().contains("text"));
        let mut flag = false;
        assert_eq!(sg_game_is_winning(ptr::null(), 0, &mut flag), SgStatus::NullArgument);
        assert_eq!(sg_game_num_players(ptr::null()), 0);
        sg_game_free(ptr::null_mut());
        sg_string_free(ptr::null_mut());
    }
}

#[test]
fn hierarchical_dimension() {
    let sizes = [2usize, 5];
    let thresholds = [2usize, 5];
    let mut game = ptr::null_mut();
    unsafe {
        assert_eq!(
            sg_game_from_hier(false, sizes.as_ptr(), thresholds.as_ptr(), 2, &mut game),
            SgStatus::Ok
        );
        let mut weighted = true;
        let mut rep = ptr::null_mut();
        assert_eq!(sg_game_is_weighted(game, &mut weighted, &mut rep), SgStatus::Ok);
        assert!(!weighted);
        assert!(rep.is_null());

        let mut dim = SgDimension::default();
        assert_eq!(sg_game_dimension(game, 0, 0, &mut dim), SgStatus::Ok);
        assert!(dim.exact_known);
        assert_eq!((dim.lower, dim.upper, dim.exact), (2, 2, 2));

        // Two of four is weighted, so one part suffices.
        let mut dim = SgDimension::default();
        let masks = [0b0011u64, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100];
        let mut two_of_four = ptr::null_mut();
        assert_eq!(sg_game_from_masks(4, masks.as_ptr(), masks.len(), &mut two_of_four), SgStatus::Ok);
        assert_eq!(sg_game_dimension(two_of_four, 0, 0, &mut dim), SgStatus::Ok);
        assert_eq!(dim.exact, 1);
        sg_game_free(two_of_four);
        sg_game_free(game);
    }
}

#[test]
fn budget_exceeded_still_reports_bounds() {
    let (g, _) = sgdim::hierarchical::os3_witness_set(2, 3).unwrap();
    let masks: Vec<u64> = g.min_winning().iter().map(|c| c.bits()).collect();
    let mut game = ptr::null_mut();
    unsafe {
        assert_eq!(
            sg_game_from_masks(g.num_players(), masks.as_ptr(), masks.len(), &mut game),
            SgStatus::Ok
        );
        let mut dim = SgDimension::default();
        assert_eq!(sg_game_dimension(game, 5, 0, &mut dim), SgStatus::BudgetExceeded);
        assert!(!dim.exact_known);
        assert_eq!(dim.maximal_losing, 158);
        assert!(dim.lower >= 4 && dim.upper >= dim.lower);
        assert!(last_error().contains("exact-search limit"));
        sg_game_free(game);
    }
}

#[test]
fn invalid_hierarchy_is_a_precondition_error() {
    let sizes = [3usize, 2, 4];
    let thresholds = [2usize, 4, 4];
    let mut game = ptr::null_mut();
    let status = unsafe { sg_game_from_hier(false, sizes.as_ptr(), thresholds.as_ptr(), 3, &mut game) };
    assert_ne!(status, SgStatus::Ok);
    assert!(game.is_null());
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn compiler() -> Option<&'static str> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok())
}

/// The static library sits next to the `deps` directory holding this test binary.
fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let profile_dir = exe.parent()?.parent()?;
    let lib = profile_dir.join("libsgdim_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn generated_header_is_current_and_valid_c() {
    let header = crate_dir().join("include/sgdim.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "sg_game_from_text",
        "sg_game_from_hier",
        "sg_game_is_weighted",
        "sg_game_dimension",
        "sg_last_error",
        "typedef struct SgGame SgGame;",
        "SG_STATUS_BUDGET_EXCEEDED = 6",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
    let Some(cc) = compiler() else {
        eprintln!("no C compiler; skipping syntax check");
        return;
    };
    let out = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c"])
        .arg(&header)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "sgdim.h"

int main(void) {
    SgGame *game = NULL;
    if (sg_game_from_text("sg 1\nhier disj n=2,5 k=2,5\n", &game) != SG_STATUS_OK) return 10;
    if (sg_game_num_players(game) != 7) return 11;
    bool weighted = true;
    char *rep = NULL;
    if (sg_game_is_weighted(game, &weighted, &rep) != SG_STATUS_OK || weighted || rep) return 12;
    SgDimension dim;
    if (sg_game_dimension(game, 0, 0, &dim) != SG_STATUS_OK || !dim.exact_known || dim.exact != 2) return 13;
    sg_game_free(game);
    if (sg_game_from_text("sg 2\n", &game) != SG_STATUS_PARSE) return 14;
    if (strstr(sg_last_error(), "line 1") == NULL) return 15;
    printf("ok\n");
    return 0;
}
"#;

#[test]
fn c_program_links_against_static_library() {
    let (Some(cc), Some(lib)) = (compiler(), static_lib()) else {
        eprintln!("no C compiler or static library; skipping link test");
        return;
    };
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("c_api");
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    let exe = dir.join("main");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let out = Command::new(cc)
        .arg("-std=c99")
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout), "ok\n");
}
