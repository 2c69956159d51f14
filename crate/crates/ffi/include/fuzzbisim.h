#ifndef FUZZBISIM_H
#define FUZZBISIM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum FzbStatus {
  FZB_STATUS_OK = 0,
  FZB_STATUS_NULL_ARGUMENT = 1,
  FZB_STATUS_INVALID_UTF8 = 2,
  FZB_STATUS_PARSE_ERROR = 3,
  FZB_STATUS_INVALID_PARAMETERS = 4,
  FZB_STATUS_INDEX_OUT_OF_RANGE = 5,
  FZB_STATUS_PANIC = 6,
} FzbStatus;

/**
 * A parsed or generated fuzzy labeled graph.
 */
typedef struct FzbGraph FzbGraph;

/**
 * A partition of a graph's vertex ids in canonical order.
 */
typedef struct FzbPartition FzbPartition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failed call on this thread, or an empty
 * string. Valid until the next call into this library on the same thread.
 */
const char *fzb_last_error(void);

/**
 * Parses a graph in the text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum FzbStatus fzb_graph_parse(const char *text, struct FzbGraph **out);

/**
 * Generates a reproducible random graph with `m` edges over `n` vertices.
 *
 * # Safety
 * `out` must be writable.
 */
enum FzbStatus fzb_graph_random(size_t n,
                                size_t m,
                                size_t l,
                                size_t labels,
                                uint64_t seed,
                                struct FzbGraph **out);

/**
 * # Safety
 * `graph` must be null or a handle from this library not yet freed.
 */
void fzb_graph_free(struct FzbGraph *graph);

/**
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum FzbStatus fzb_graph_vertex_count(const struct FzbGraph *graph, size_t *out);

/**
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum FzbStatus fzb_graph_edge_count(const struct FzbGraph *graph, size_t *out);

/**
 * Serializes the graph in the text format.
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum FzbStatus fzb_graph_to_text(const struct FzbGraph *graph, char **out);

/**
 * Partition of the largest crisp bisimulation; with `counting`, of the
 * largest bisimulation with counting successors.
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum FzbStatus fzb_compute(const struct FzbGraph *graph, bool counting, struct FzbPartition **out);

/**
 * Same result as [`fzb_compute`] from the slow reference implementation.
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum FzbStatus fzb_oracle_compute(const struct FzbGraph *graph,
                                  bool counting,
                                  struct FzbPartition **out);

/**
 * # Safety
 * `partition` must be a live handle; `out` must be writable.
 */
enum FzbStatus fzb_partition_block_count(const struct FzbPartition *partition, size_t *out);

/**
 * # Safety
 * `partition` must be a live handle; `out` must be writable.
 */
enum FzbStatus fzb_partition_block_len(const struct FzbPartition *partition,
                                       size_t block,
                                       size_t *out);

/**
 * Id of the `index`-th vertex of block `block`. The string is borrowed
 * from the partition and lives as long as it does.
 *
 * # Safety
 * `partition` must be a live handle; `out` must be writable.
 */
enum FzbStatus fzb_partition_vertex(const struct FzbPartition *partition,
                                    size_t block,
                                    size_t index,
                                    const char **out);

/**
 * The partition as a JSON array of arrays of vertex ids.
 *
 * # Safety
 * `partition` must be a live handle; `out` must be writable.
 */
enum FzbStatus fzb_partition_to_json(const struct FzbPartition *partition, char **out);

/**
 * # Safety
 * `partition` must be null or a handle from this library not yet freed.
 */
void fzb_partition_free(struct FzbPartition *partition);

/**
 * Releases a string returned through a `char **` out-parameter.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void fzb_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FUZZBISIM_H */
