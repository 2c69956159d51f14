//! C interface to `fuzzbisim`.
//!
//! Graphs and partitions are opaque handles owned by the caller and released
//! with their `_free` function. Every fallible call returns an [`FzbStatus`];
//! on failure a message is available from [`fzb_last_error`] on the same
//! thread. Strings returned through `char **` are owned by the caller and
//! released with [`fzb_string_free`]; `const char *` results are borrowed
//! from the handle they came from.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};

use fuzzbisim::{oracle, refine, FuzzyGraph, Mode, PartitionResult};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FzbStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidParameters = 4,
    IndexOutOfRange = 5,
    Panic = 6,
}

/// A parsed or generated fuzzy labeled graph.
pub struct FzbGraph {
    graph: FuzzyGraph,
}

/// A partition of a graph's vertex ids in canonical order.
pub struct FzbPartition {
    partition: PartitionResult,
    ids: Vec<Vec<CString>>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let message = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(message).unwrap_or_default());
}

type Outcome = Result<(), (FzbStatus, String)>;

fn guard(f: impl FnOnce() -> Outcome) -> FzbStatus {
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            FzbStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            FzbStatus::Panic
        }
    }
}

fn null(what: &str) -> (FzbStatus, String) {
    (FzbStatus::NullArgument, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (FzbStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Outcome {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> Result<*mut c_char, (FzbStatus, String)> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| (FzbStatus::InvalidUtf8, "string contains NUL".to_owned()))
}

fn make_partition(partition: PartitionResult) -> Result<Box<FzbPartition>, (FzbStatus, String)> {
    let ids = partition
        .blocks()
        .iter()
        .map(|b| {
            b.iter()
                .map(|v| CString::new(v.as_str()))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| (FzbStatus::InvalidUtf8, "vertex id contains NUL".to_owned()))?;
    Ok(Box::new(FzbPartition { partition, ids }))
}

/// Message describing the last failed call on this thread, or an empty
/// string. Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn fzb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a graph in the text format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fzb_graph_parse(
    text: *const c_char,
    out: *mut *mut FzbGraph,
) -> FzbStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| (FzbStatus::InvalidUtf8, e.to_string()))?;
        let graph = FuzzyGraph::parse(text).map_err(|e| (FzbStatus::ParseError, e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(FzbGraph { graph })))
    })
}

/// Generates a reproducible random graph with `m` edges over `n` vertices.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fzb_graph_random(
    n: usize,
    m: usize,
    l: usize,
    labels: usize,
    seed: u64,
    out: *mut *mut FzbGraph,
) -> FzbStatus {
    guard(|| {
        let graph = oracle::random_graph(n, m, l, labels, seed)
            .map_err(|e| (FzbStatus::InvalidParameters, e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(FzbGraph { graph })))
    })
}

/// # Safety
/// `graph` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fzb_graph_free(graph: *mut FzbGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fzb_graph_vertex_count(
    graph: *const FzbGraph,
    out: *mut usize,
) -> FzbStatus {
    guard(|| write_out(out, deref(graph, "graph")?.graph.vertex_count()))
}

/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fzb_graph_edge_count(
    graph: *const FzbGraph,
    out: *mut usize,
) -> FzbStatus {
    guard(|| write_out(out, deref(graph, "graph")?.graph.edge_count()))
}

/// Serializes the graph in the text format.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fzb_graph_to_text(
    graph: *const FzbGraph,
    out: *mut *mut c_char,
) -> FzbStatus {
    guard(|| {
        let text = deref(graph, "graph")?.graph.to_text();
        write_out(out, owned_string(text)?)
    })
}

unsafe fn partition_with(
    graph: *const FzbGraph,
    out: *mut *mut FzbPartition,
    f: impl FnOnce(&FuzzyGraph) -> PartitionResult,
) -> FzbStatus {
    guard(|| {
        let g = &deref(graph, "graph")?.graph;
        if out.is_null() {
            return Err(null("out"));
        }
        write_out(out, Box::into_raw(make_partition(f(g))?))
    })
}

/// Partition of the largest crisp bisimulation; with `counting`, of the
/// largest bisimulation with counting successors.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fzb_compute(
    graph: *const FzbGraph,
    counting: bool,
    out: *mut *mut FzbPartition,
) -> FzbStatus {
    let mode = if counting {
        Mode::Counting
    } else {
        Mode::Plain
    };
    partition_with(graph, out, |g| refine(g, mode, &mut ()).partition)
}

/// Same result as [`fzb_compute`] from the slow reference implementation.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fzb_oracle_compute(
    graph: *const FzbGraph,
    counting: bool,
    out: *mut *mut FzbPartition,
) -> FzbStatus {
    partition_with(graph, out, |g| {
        if counting {
            oracle::naive_largest_s_bisimulation(g)
        } else {
            oracle::naive_largest_bisimulation(g)
        }
    })
}

/// # Safety
/// `partition` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fzb_partition_block_count(
    partition: *const FzbPartition,
    out: *mut usize,
) -> FzbStatus {
    guard(|| write_out(out, deref(partition, "partition")?.ids.len()))
}

/// # Safety
/// `partition` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fzb_partition_block_len(
    partition: *const FzbPartition,
    block: usize,
    out: *mut usize,
) -> FzbStatus {
    guard(|| {
        let p = deref(partition, "partition")?;
        let b = p
            .ids
            .get(block)
            .ok_or_else(|| out_of_range("block", block, p.ids.len()))?;
        write_out(out, b.len())
    })
}

fn out_of_range(what: &str, i: usize, len: usize) -> (FzbStatus, String) {
    (
        FzbStatus::IndexOutOfRange,
        format!("{what} {i} out of range (len {len})"),
    )
}

/// Id of the `index`-th vertex of block `block`. The string is borrowed
/// from the partition and lives as long as it does.
///
/// # Safety
/// `partition` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fzb_partition_vertex(
    partition: *const FzbPartition,
    block: usize,
    index: usize,
    out: *mut *const c_char,
) -> FzbStatus {
    guard(|| {
        let p = deref(partition, "partition")?;
        let b = p
            .ids
            .get(block)
            .ok_or_else(|| out_of_range("block", block, p.ids.len()))?;
        let v = b
            .get(index)
            .ok_or_else(|| out_of_range("vertex", index, b.len()))?;
        write_out(out, v.as_ptr())
    })
}

/// The partition as a JSON array of arrays of vertex ids.
///
/// # Safety
/// `partition` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fzb_partition_to_json(
    partition: *const FzbPartition,
    out: *mut *mut c_char,
) -> FzbStatus {
    guard(|| {
        let p = deref(partition, "partition")?;
        let json =
            serde_json::to_string(&p.partition).map_err(|e| (FzbStatus::Panic, e.to_string()))?;
        write_out(out, owned_string(json)?)
    })
}

/// # Safety
/// `partition` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fzb_partition_free(partition: *mut FzbPartition) {
    if !partition.is_null() {
        drop(Box::from_raw(partition));
    }
}

/// Releases a string returned through a `char **` out-parameter.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fzb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
