//! C ABI over the `sgdim` library.
//!
//! Games live behind an opaque `SgGame` handle. Every fallible call returns
//! an `SgStatus`; on failure `sg_last_error` describes the most recent error
//! on the calling thread. Strings handed out by the library are released
//! with `sg_string_free`, games with `sg_game_free`.
//!
//! Coalitions cross the boundary as 64-bit masks: bit `i` set means player
//! `i` is a member.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sgdim::dimension::{exact_dimension, Budget};
use sgdim::hierarchical::{build, HierarchicalSpec, Kind};
use sgdim::io::GameFile;
use sgdim::lpsep::is_weighted;
use sgdim::{Coalition, Error, SimpleGame};

/// Opaque handle to a simple game.
pub struct SgGame {
    game: SimpleGame,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Text was not valid UTF-8 or not a valid game file.
    Parse = 2,
    InvalidInput = 3,
    /// Too many players for the requested operation.
    TooLarge = 4,
    Precondition = 5,
    /// Exact dimension search stopped before proving optimality; bounds are still filled in.
    BudgetExceeded = 6,
    /// A panic was caught at the boundary.
    Internal = 7,
}

/// Dimension bounds. `exact` is meaningful only when `exact_known` is true.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SgDimension {
    pub lower: usize,
    pub upper: usize,
    pub exact: usize,
    pub exact_known: bool,
    pub maximal_losing: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &Error) -> SgStatus {
    match e {
        Error::Parse { .. } => SgStatus::Parse,
        Error::TooManyPlayers { .. } => SgStatus::TooLarge,
        Error::Precondition(_) => SgStatus::Precondition,
        _ => SgStatus::InvalidInput,
    }
}

fn fail(status: SgStatus, message: impl Into<String>) -> SgStatus {
    set_error(message);
    status
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<SgStatus, SgStatus>) -> SgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) | Ok(Err(status)) => status,
        Err(_) => fail(SgStatus::Internal, "internal panic"),
    }
}

fn lib_error(e: Error) -> SgStatus {
    fail(status_of(&e), e.to_string())
}

fn not_null<T>(p: *const T, name: &str) -> Result<(), SgStatus> {
    if p.is_null() {
        Err(fail(SgStatus::NullArgument, format!("{name} is null")))
    } else {
        Ok(())
    }
}

fn emit_game(game: SimpleGame, out: *mut *mut SgGame) -> SgStatus {
    let handle = Box::into_raw(Box::new(SgGame { game }));
    // SAFETY: callers check `out` for null before building the game.
    unsafe { *out = handle };
    SgStatus::Ok
}

fn emit_string(text: String) -> *mut c_char {
    CString::new(text.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Parses a game file (`sg 1` format) into a new game.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_game_from_text(text: *const c_char, out: *mut *mut SgGame) -> SgStatus {
    guard(|| {
        not_null(text, "text")?;
        not_null(out, "out")?;
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| fail(SgStatus::Parse, "text is not valid UTF-8"))?;
        let game = GameFile::parse(text).and_then(|f| f.game()).map_err(lib_error)?;
        Ok(emit_game(game, out))
    })
}

/// Builds a game on `n` players from `count` minimal winning coalition masks.
///
/// # Safety
/// `masks` must point to `count` values (it may be null when `count` is 0)
/// and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_game_from_masks(
    n: usize,
    masks: *const u64,
    count: usize,
    out: *mut *mut SgGame,
) -> SgStatus {
    guard(|| {
        not_null(out, "out")?;
        let masks: &[u64] = if count == 0 {
            &[]
        } else {
            not_null(masks, "masks")?;
            std::slice::from_raw_parts(masks, count)
        };
        let game = SimpleGame::new(n, masks.iter().map(|&m| Coalition::from_bits(m))).map_err(lib_error)?;
        Ok(emit_game(game, out))
    })
}

/// Builds a hierarchical game. `conjunctive` selects the conjunctive kind;
/// `sizes` and `thresholds` each hold `classes` entries.
///
/// # Safety
/// `sizes` and `thresholds` must point to `classes` values and `out` must be
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_game_from_hier(
    conjunctive: bool,
    sizes: *const usize,
    thresholds: *const usize,
    classes: usize,
    out: *mut *mut SgGame,
) -> SgStatus {
    guard(|| {
        not_null(sizes, "sizes")?;
        not_null(thresholds, "thresholds")?;
        not_null(out, "out")?;
        let kind = if conjunctive { Kind::Conjunctive } else { Kind::Disjunctive };
        let sizes = std::slice::from_raw_parts(sizes, classes).to_vec();
        let thresholds = std::slice::from_raw_parts(thresholds, classes).to_vec();
        let game = HierarchicalSpec::new(kind, sizes, thresholds)
            .and_then(|s| build(&s))
            .map_err(lib_error)?;
        Ok(emit_game(game, out))
    })
}

/// Releases a game. Null is ignored.
///
/// # Safety
/// `game` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sg_game_free(game: *mut SgGame) {
    if !game.is_null() {
        drop(Box::from_raw(game));
    }
}

/// Number of players, or 0 for a null handle.
///
/// # Safety
/// `game` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sg_game_num_players(game: *const SgGame) -> usize {
    game.as_ref().map_or(0, |g| g.game.num_players())
}

/// Number of minimal winning coalitions, or 0 for a null handle.
///
/// # Safety
/// `game` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sg_game_num_min_winning(game: *const SgGame) -> usize {
    game.as_ref().map_or(0, |g| g.game.min_winning().len())
}

/// Writes whether the coalition `mask` wins.
///
/// # Safety
/// `game` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_game_is_winning(game: *const SgGame, mask: u64, out: *mut bool) -> SgStatus {
    guard(|| {
        not_null(game, "game")?;
        not_null(out, "out")?;
        let g = &(*game).game;
        let c = Coalition::from_bits(mask);
        if !c.fits(g.num_players()) {
            return Err(fail(
                SgStatus::InvalidInput,
                format!("mask {mask:#x} names players outside 0..{}", g.num_players()),
            ));
        }
        *out = g.is_winning(c);
        Ok(SgStatus::Ok)
    })
}

/// Decides weightedness. When the game is weighted and `rep` is not null, a
/// representation `[q; w1, ..., wn]` is written there; free it with
/// `sg_string_free`. Otherwise `*rep` is set to null.
///
/// # Safety
/// `game` must be a live handle, `out` a valid pointer, `rep` null or valid.
#[no_mangle]
pub unsafe extern "C" fn sg_game_is_weighted(game: *const SgGame, out: *mut bool, rep: *mut *mut c_char) -> SgStatus {
    guard(|| {
        not_null(game, "game")?;
        not_null(out, "out")?;
        let found = is_weighted(&(*game).game);
        *out = found.is_some();
        if !rep.is_null() {
            *rep = found.map_or(ptr::null_mut(), |r| emit_string(r.to_string()));
        }
        Ok(SgStatus::Ok)
    })
}

/// Dimension bounds and, within budget, the exact dimension. Pass 0 for
/// `max_losing` or `max_steps` to use the library defaults. Returns
/// `SG_STATUS_BUDGET_EXCEEDED` with bounds filled in when the search stops early.
///
/// # Safety
/// `game` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_game_dimension(
    game: *const SgGame,
    max_losing: usize,
    max_steps: u64,
    out: *mut SgDimension,
) -> SgStatus {
    guard(|| {
        not_null(game, "game")?;
        not_null(out, "out")?;
        let mut budget = Budget::default();
        if max_losing > 0 {
            budget.max_losing = max_losing;
        }
        if max_steps > 0 {
            budget.max_steps = max_steps;
        }
        let report = exact_dimension(&(*game).game, budget);
        *out = SgDimension {
            lower: report.lower,
            upper: report.upper,
            exact: report.exact.unwrap_or(0),
            exact_known: report.exact.is_some(),
            maximal_losing: report.maximal_losing,
        };
        if report.exact.is_some() {
            Ok(SgStatus::Ok)
        } else {
            Err(fail(SgStatus::BudgetExceeded, report.notes.join("; ")))
        }
    })
}

/// Creates the dual game as a new handle.
///
/// # Safety
/// `game` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_game_dual(game: *const SgGame, out: *mut *mut SgGame) -> SgStatus {
    guard(|| {
        not_null(game, "game")?;
        not_null(out, "out")?;
        Ok(emit_game((*game).game.dual(), out))
    })
}

/// Serializes the game as `sg 1` text listing minimal winning coalitions.
///
/// # Safety
/// `game` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_game_to_text(game: *const SgGame, out: *mut *mut c_char) -> SgStatus {
    guard(|| {
        not_null(game, "game")?;
        not_null(out, "out")?;
        *out = emit_string(GameFile::from_game(&(*game).game).to_string());
        Ok(SgStatus::Ok)
    })
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        assert_eq!(status_of(&Error::Precondition("x".into())), SgStatus::Precondition);
        assert_eq!(status_of(&Error::TooManyPlayers { n: 70, cap: 63 }), SgStatus::TooLarge);
        assert_eq!(status_of(&Error::NotComplete { i: 0, j: 1 }), SgStatus::InvalidInput);
    }

    #[test]
    fn panics_become_internal() {
        let status = guard(|| panic!("boom"));
        assert_eq!(status, SgStatus::Internal);
        let msg = unsafe { CStr::from_ptr(sg_last_error()) };
        assert_eq!(msg.to_str().unwrap(), "internal panic");
    }
}
