/* C interface to semicover. Generated by cbindgen; do not edit. */

#ifndef SEMICOVER_H
#define SEMICOVER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum ScStatus {
  SC_STATUS_OK = 0,
  /**
   * A required pointer was null.
   */
  SC_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not UTF-8.
   */
  SC_STATUS_INVALID_UTF8 = 2,
  /**
   * A document did not parse.
   */
  SC_STATUS_PARSE = 3,
  /**
   * An argument or document refers to something that does not exist or
   * is out of range.
   */
  SC_STATUS_INVALID_INPUT = 4,
  /**
   * The operation does not apply to these inputs.
   */
  SC_STATUS_PRECONDITION = 5,
  /**
   * The input exceeds a size limit.
   */
  SC_STATUS_TOO_LARGE = 6,
  /**
   * The search budget ran out.
   */
  SC_STATUS_RESOURCE_LIMIT = 7,
  /**
   * An internal error; the library caught a panic.
   */
  SC_STATUS_INTERNAL = 8,
} ScStatus;

/**
 * Answer of a decision call.
 */
typedef enum ScVerdict {
  SC_VERDICT_NO = 0,
  SC_VERDICT_YES = 1,
  SC_VERDICT_UNKNOWN = 2,
} ScVerdict;

/**
 * Vertex and edge maps from a source graph to a target graph.
 */
typedef struct ScCover ScCover;

/**
 * A multigraph with loops and semi-edges.
 */
typedef struct ScGraph ScGraph;

/**
 * Admissible targets per vertex and edge, resolved against one source and
 * one target graph.
 */
typedef struct ScLists ScLists;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The string stays valid until the next call on this thread.
 */
const char *sc_last_error(void);

/**
 * Library version, a static string.
 */
const char *sc_version(void);

/**
 * Frees a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` is null or a string from this library that has not been freed.
 */
void sc_string_free(char *s);

/**
 * Parses a graph document.
 *
 * # Safety
 * `json` is a NUL-terminated string; `out` is writable.
 */
enum ScStatus sc_graph_parse(const char *json, struct ScGraph **out);

/**
 * Builds member `variant` of a named family (`ring`, `sausages`,
 * `one-vertex`, `cycle`, `open-path`, `complete-bipartite`, `triple-edge`,
 * `complete`, `petersen`).
 *
 * # Safety
 * `family` is a NUL-terminated string; `params` points to `n_params`
 * values or is null when `n_params` is 0; `out` is writable.
 */
enum ScStatus sc_graph_generate(const char *family,
                                const size_t *params,
                                size_t n_params,
                                size_t variant,
                                struct ScGraph **out);

/**
 * Frees a graph. Null is ignored.
 *
 * # Safety
 * `g` is null or a graph from this library that has not been freed.
 */
void sc_graph_free(struct ScGraph *g);

/**
 * Number of vertices; 0 for null.
 *
 * # Safety
 * `g` is null or a live graph.
 */
size_t sc_graph_vertex_count(const struct ScGraph *g);

/**
 * Number of edges, semi-edges and loops included; 0 for null.
 *
 * # Safety
 * `g` is null or a live graph.
 */
size_t sc_graph_edge_count(const struct ScGraph *g);

/**
 * Writes the graph document; free it with [`sc_string_free`].
 *
 * # Safety
 * `g` is a live graph; `out` is writable.
 */
enum ScStatus sc_graph_to_json(const struct ScGraph *g, char **out);

/**
 * Parses a lists document against source `g` and target `h`.
 *
 * # Safety
 * `json` is a NUL-terminated string; `g`, `h` are live graphs; `out` is
 * writable.
 */
enum ScStatus sc_lists_parse(const char *json,
                             const struct ScGraph *g,
                             const struct ScGraph *h,
                             struct ScLists **out);

/**
 * Frees a list assignment. Null is ignored.
 *
 * # Safety
 * `l` is null or a list assignment from this library that has not been
 * freed.
 */
void sc_lists_free(struct ScLists *l);

/**
 * Decides whether `g` covers `h` within the lists (null means full lists).
 * `max_nodes` bounds the search, 0 for no bound. On `Yes` and a non-null
 * `witness`, a cover is stored there. Running out of budget sets
 * `Unknown` and returns `ResourceLimit`.
 *
 * # Safety
 * `g`, `h` are live graphs; `lists` is null or live; `verdict` is
 * writable; `witness` is null or writable.
 */
enum ScStatus sc_solve(const struct ScGraph *g,
                       const struct ScGraph *h,
                       const struct ScLists *lists,
                       uint64_t max_nodes,
                       enum ScVerdict *verdict,
                       struct ScCover **witness);

/**
 * Counts covers (or partial covers) within the lists, stopping at
 * `limit` when it is non-zero.
 *
 * # Safety
 * `g`, `h` are live graphs; `lists` is null or live; `count` is writable.
 */
enum ScStatus sc_count_covers(const struct ScGraph *g,
                              const struct ScGraph *h,
                              const struct ScLists *lists,
                              bool partial,
                              size_t limit,
                              uint64_t max_nodes,
                              size_t *count);

/**
 * Parses a cover document from `g` to `h`.
 *
 * # Safety
 * `json` is a NUL-terminated string; `g`, `h` are live graphs; `out` is
 * writable.
 */
enum ScStatus sc_cover_parse(const char *json,
                             const struct ScGraph *g,
                             const struct ScGraph *h,
                             struct ScCover **out);

/**
 * Writes the cover document; free it with [`sc_string_free`].
 *
 * # Safety
 * `c` is a live cover from `g` to `h`; `out` is writable.
 */
enum ScStatus sc_cover_to_json(const struct ScCover *c,
                               const struct ScGraph *g,
                               const struct ScGraph *h,
                               char **out);

/**
 * Index of the image of vertex `v`, or `SIZE_MAX` when out of range.
 *
 * # Safety
 * `c` is null or a live cover.
 */
size_t sc_cover_vertex_image(const struct ScCover *c, size_t v);

/**
 * Frees a cover. Null is ignored.
 *
 * # Safety
 * `c` is null or a cover from this library that has not been freed.
 */
void sc_cover_free(struct ScCover *c);

/**
 * Checks that `c` is a (partial) covering projection respecting the lists
 * (null means full lists). A failed check sets `No` and leaves the reason
 * in [`sc_last_error`] while returning `Ok`.
 *
 * # Safety
 * `c` is a live cover; `g`, `h` are live graphs; `lists` is null or live;
 * `verdict` is writable.
 */
enum ScStatus sc_verify(const struct ScCover *c,
                        const struct ScGraph *g,
                        const struct ScGraph *h,
                        const struct ScLists *lists,
                        bool partial,
                        enum ScVerdict *verdict);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEMICOVER_H */
