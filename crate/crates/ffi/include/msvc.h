#ifndef MSVC_H
#define MSVC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum MsvcStatus {
  MSVC_STATUS_OK = 0,
  MSVC_STATUS_NULL_POINTER = 1,
  MSVC_STATUS_INVALID_INPUT = 2,
  MSVC_STATUS_PRECONDITION = 3,
  MSVC_STATUS_SIZE_LIMIT = 4,
  MSVC_STATUS_PARAMETER_EXCEEDED = 5,
  MSVC_STATUS_BUDGET = 6,
  MSVC_STATUS_OVERFLOW = 7,
  MSVC_STATUS_PARSE = 8,
  MSVC_STATUS_INTERNAL = 9,
  /**
   * Output buffer too small.
   */
  MSVC_STATUS_BUFFER_TOO_SMALL = 10,
  MSVC_STATUS_PANIC = 11,
} MsvcStatus;

typedef enum MsvcAlgorithm {
  MSVC_ALGORITHM_BRUTE = 0,
  MSVC_ALGORITHM_GREEDY = 1,
  MSVC_ALGORITHM_VC = 2,
  MSVC_ALGORITHM_CM = 3,
  /**
   * Vertex cover solver if the cover is small enough, then the clique
   * modulator solver, then brute force.
   */
  MSVC_ALGORITHM_AUTO = 4,
} MsvcAlgorithm;

/**
 * Mutable edge set; converted to a validated graph when solved.
 */
typedef struct MsvcGraph MsvcGraph;

typedef struct MsvcSolution MsvcSolution;

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *msvc_last_error_message(void);

/**
 * New graph with `n` vertices and no edges.
 */
struct MsvcGraph *msvc_graph_new(size_t n);

/**
 * # Safety
 * `graph` must be null or a handle from this library not yet freed.
 */
void msvc_graph_free(struct MsvcGraph *graph);

/**
 * Adds the undirected edge `{u, v}`. Self-loops, duplicates and
 * out-of-range vertices are rejected with `InvalidInput`.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
enum MsvcStatus msvc_graph_add_edge(struct MsvcGraph *graph, size_t u, size_t v);

/**
 * Parses the edge-list text format (`n m` header, 1-based `u v` lines).
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a writable pointer.
 */
enum MsvcStatus msvc_graph_parse(const char *text, struct MsvcGraph **out);

/**
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t msvc_graph_num_vertices(const struct MsvcGraph *graph);

/**
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t msvc_graph_num_edges(const struct MsvcGraph *graph);

/**
 * Cost of the ordering that lists vertex `order[i]` at position `i + 1`.
 *
 * # Safety
 * `graph` must be a live handle, `order` must point to `len` readable
 * values and `cost` must be writable.
 */
enum MsvcStatus msvc_evaluate_cost(const struct MsvcGraph *graph,
                                   const size_t *order,
                                   size_t len,
                                   uint64_t *cost);

/**
 * Solves `graph` with `algorithm`, one of the [`MsvcAlgorithm`] values.
 * `max_k` bounds the vertex cover or clique modulator size; `budget`
 * overrides the search budget when nonzero. On success `*out` receives a solution handle.
 *
 * # Safety
 * `graph` must be a live handle and `out` writable.
 */
enum MsvcStatus msvc_solve(const struct MsvcGraph *graph,
                           uint32_t algorithm,
                           size_t max_k,
                           uint64_t budget,
                           struct MsvcSolution **out);

/**
 * # Safety
 * `solution` must be null or a handle from [`msvc_solve`] not yet freed.
 */
void msvc_solution_free(struct MsvcSolution *solution);

/**
 * # Safety
 * `solution` must be null or a live handle.
 */
uint64_t msvc_solution_cost(const struct MsvcSolution *solution);

/**
 * Parameter value used by the solver, or -1 for brute force and greedy.
 *
 * # Safety
 * `solution` must be null or a live handle.
 */
int64_t msvc_solution_parameter(const struct MsvcSolution *solution);

/**
 * The algorithm that produced the solution (resolved when `Auto` was asked).
 *
 * # Safety
 * `solution` must be a live handle.
 */
enum MsvcAlgorithm msvc_solution_algorithm(const struct MsvcSolution *solution);

/**
 * Number of vertices in the ordering.
 *
 * # Safety
 * `solution` must be null or a live handle.
 */
size_t msvc_solution_len(const struct MsvcSolution *solution);

/**
 * Copies the ordering (0-based vertex ids by position) into `buf`, which
 * must hold at least [`msvc_solution_len`] entries.
 *
 * # Safety
 * `solution` must be a live handle and `buf` must point to `capacity`
 * writable values.
 */
enum MsvcStatus msvc_solution_ordering(const struct MsvcSolution *solution,
                                       size_t *buf,
                                       size_t capacity);

#endif  /* MSVC_H */
