#ifndef SEPTREE_H
#define SEPTREE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call. Values 1 to 5 match the command-line exit codes.
 */
typedef enum SeptreeStatus {
  SEPTREE_STATUS_OK = 0,
  SEPTREE_STATUS_INVALID = 1,
  SEPTREE_STATUS_PARSE = 2,
  SEPTREE_STATUS_RESOURCE = 3,
  SEPTREE_STATUS_VERIFICATION = 4,
  SEPTREE_STATUS_INTERNAL = 5,
  SEPTREE_STATUS_NULL_POINTER = 6,
  SEPTREE_STATUS_PANIC = 7,
} SeptreeStatus;

/**
 * Which k-profiles a decomposition has to distinguish.
 */
typedef enum SeptreeProfiles {
  SEPTREE_PROFILES_ALL = 0,
  SEPTREE_PROFILES_BLOCKS = 1,
  SEPTREE_PROFILES_TANGLES = 2,
} SeptreeProfiles;

/**
 * A tree-decomposition together with the graph it decomposes.
 */
typedef struct SeptreeDecomposition SeptreeDecomposition;

/**
 * A parsed graph.
 */
typedef struct SeptreeGraph SeptreeGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next septree call on the same thread.
 */
const char *septree_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void septree_string_free(char *s);

/**
 * Parses an edge list or adjacency JSON document (detected from the text).
 *
 * # Safety
 * `source` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SeptreeStatus septree_graph_parse(const char *source, struct SeptreeGraph **out);

/**
 * # Safety
 * `g` must come from [`septree_graph_parse`] and not have been freed.
 */
void septree_graph_free(struct SeptreeGraph *g);

/**
 * Vertex count, 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t septree_graph_vertex_count(const struct SeptreeGraph *g);

/**
 * The k-blocks as a JSON array of vertex lists.
 *
 * # Safety
 * `g` must be a live graph handle and `out` a valid pointer.
 */
enum SeptreeStatus septree_k_blocks_json(const struct SeptreeGraph *g,
                                         size_t k,
                                         size_t max_vertices,
                                         char **out);

/**
 * Number of k-profiles and how many of them are block profiles and tangles.
 *
 * # Safety
 * `g` must be a live graph handle; the count pointers must be valid.
 */
enum SeptreeStatus septree_count_profiles(const struct SeptreeGraph *g,
                                          size_t k,
                                          size_t max_vertices,
                                          size_t *profiles,
                                          size_t *blocks,
                                          size_t *tangles);

/**
 * Builds the decomposition of the k-strategy `strategy` (for example
 * `"|ext_r"`, repeated for every order) over the chosen profiles.
 *
 * # Safety
 * `g` must be a live graph handle, `strategy` a NUL-terminated string and
 * `out` a valid pointer.
 */
enum SeptreeStatus septree_decompose(const struct SeptreeGraph *g,
                                     size_t k,
                                     const char *strategy,
                                     enum SeptreeProfiles profiles,
                                     size_t max_vertices,
                                     struct SeptreeDecomposition **out);

/**
 * # Safety
 * `d` must come from [`septree_decompose`] and not have been freed.
 */
void septree_decomposition_free(struct SeptreeDecomposition *d);

/**
 * Number of tree nodes, 0 for a null handle.
 *
 * # Safety
 * `d` must be null or a live decomposition handle.
 */
size_t septree_decomposition_node_count(const struct SeptreeDecomposition *d);

/**
 * Largest adhesion set, 0 for a null handle or a single node.
 *
 * # Safety
 * `d` must be null or a live decomposition handle.
 */
size_t septree_decomposition_adhesion(const struct SeptreeDecomposition *d);

/**
 * Re-checks the tree-decomposition axioms; `SEPTREE_STATUS_VERIFICATION`
 * when one fails.
 *
 * # Safety
 * `d` must be a live decomposition handle.
 */
enum SeptreeStatus septree_decomposition_verify(const struct SeptreeDecomposition *d);

/**
 * `{"nodes": [...], "edges": [...]}` document.
 *
 * # Safety
 * `d` must be a live decomposition handle and `out` a valid pointer.
 */
enum SeptreeStatus septree_decomposition_json(const struct SeptreeDecomposition *d, char **out);

/**
 * Graphviz rendering.
 *
 * # Safety
 * `d` must be a live decomposition handle and `out` a valid pointer.
 */
enum SeptreeStatus septree_decomposition_dot(const struct SeptreeDecomposition *d, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEPTREE_H */
