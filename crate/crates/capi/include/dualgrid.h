/* C ABI for the dualgrid simultaneous-embedding library.
 *
 * Every fallible call returns a DgStatus and writes its result through an
 * out pointer. On any nonzero status the calling thread's error message is
 * available from dg_last_error() until the next failing call. Strings
 * returned through out pointers are heap-allocated and must be released
 * with dg_string_free; handles with dg_graph_free / dg_drawing_free. */

#ifndef DUALGRID_H
#define DUALGRID_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Which of the two interlocking drawings takes the single bent edge.
typedef enum DgBend {
  // Bend an edge of the input graph.
  DG_BEND_PRIMAL = 0,
  // Bend an edge of its dual.
  DG_BEND_DUAL = 1,
} DgBend;

// Coordinate engine: both produce identical drawings.
typedef enum DgEngine {
  // Absolute coordinates, quadratic shifts. Simple and traceable.
  DG_ENGINE_REFERENCE = 0,
  // Relative offsets, near-linear. The default for large inputs.
  DG_ENGINE_OFFSET = 1,
} DgEngine;

// Result of every fallible call. Nonzero codes leave a message for
// dg_last_error() on the calling thread.
typedef enum DgStatus {
  // The call succeeded and any out parameter was written.
  DG_STATUS_OK = 0,
  // A required pointer argument was null.
  DG_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  DG_STATUS_INVALID_UTF8 = 2,
  // A scalar argument was out of range.
  DG_STATUS_INVALID_ARGUMENT = 3,
  // Input JSON was malformed or described an unusable graph or drawing.
  DG_STATUS_PARSE = 4,
  // The graph is not simple, planar, and 3-connected as required.
  DG_STATUS_UNSUITABLE = 5,
  // Verification ran; at least one check failed (the report says which).
  DG_STATUS_CHECKS_FAILED = 6,
  // An internal invariant broke. The library state is still consistent.
  DG_STATUS_PANIC = 7,
} DgStatus;

// A finished grid drawing of a graph and its dual, with the context
// needed to serialize, verify, and render it.
typedef struct DgDrawing DgDrawing;

// An embedded planar graph with a distinguished outer face.
typedef struct DgGraph DgGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failing call on this thread, or null if no
// call has failed yet. The pointer stays valid until the next failing call
// on the same thread; do not free it.
const char *dg_last_error(void);

// Parse a graph from its JSON form: named vertices, rotation lists in
// counterclockwise order, and a distinguished outer face.
//
// # Safety
// `json` must be a valid NUL-terminated string and `out` a valid pointer.
enum DgStatus dg_graph_parse(const char *json, struct DgGraph **out);

// Generate a test graph. `kind` selects the family:
// - "platonic": `name` is one of tetrahedron, cube, octahedron,
//   dodecahedron, icosahedron; `n`, `seed`, `rate` are ignored.
// - "triangulation": random planar triangulation on `n` >= 4 vertices,
//   deterministic in `seed`; `name`, `rate` ignored.
// - "sparsified": triangulation with about `rate` (in [0, 1)) of its
//   edges removed while staying 3-connected.
//
// # Safety
// `kind` must be valid; `name` may be null unless kind is "platonic";
// `out` must be a valid pointer.
enum DgStatus dg_generate(const char *kind,
                          const char *name,
                          uintptr_t n,
                          uint64_t seed,
                          double rate,
                          struct DgGraph **out);

// Serialize a graph back to its JSON form.
//
// # Safety
// `g` must be a live handle from this library; `out` a valid pointer.
enum DgStatus dg_graph_to_json(const struct DgGraph *g, char **out);

// Release a graph handle. Null is a no-op.
//
// # Safety
// `g` must be null or a live handle from this library, and must not be
// used afterwards.
void dg_graph_free(struct DgGraph *g);

// Embed the graph and its dual on the (2n-2) x (2n-2) grid, n being the
// vertex plus face count. `outer_a`/`outer_b` optionally pin the outer
// edge by vertex name (both null to let the library choose). Set
// `check_three_connected` to reject unsuitable inputs up front.
//
// # Safety
// `g` must be a live handle; `outer_a`/`outer_b` null together or valid
// strings together; `out` a valid pointer.
enum DgStatus dg_embed(const struct DgGraph *g,
                       enum DgBend bend,
                       enum DgEngine engine,
                       const char *outer_a,
                       const char *outer_b,
                       bool check_three_connected,
                       struct DgDrawing **out);

// Parse a drawing (as produced by dg_drawing_to_json) against the graph it
// draws. The bend target and bent edge are read from the drawing itself.
//
// # Safety
// `g` must be a live handle, `json` a valid string, `out` a valid pointer.
enum DgStatus dg_drawing_parse(const struct DgGraph *g, const char *json, struct DgDrawing **out);

// Serialize a drawing to JSON: one grid point per primal and dual vertex,
// the bent edge with its bend point, and the repair counters.
//
// # Safety
// `d` must be a live handle; `out` a valid pointer.
enum DgStatus dg_drawing_to_json(const struct DgDrawing *d, char **out);

// Check a drawing against every requirement (grid bounds, distinct points,
// the single bend, planarity of both drawings, crossings exactly between
// corresponding primal/dual edge pairs, duals strictly inside their faces,
// the outer dual strictly outside, and strict convexity of the inner
// quadrangle faces). Writes the full report as JSON whether or not all
// checks pass; returns Ok only when they all do.
//
// # Safety
// `d` must be a live handle; `report_json` a valid pointer.
enum DgStatus dg_verify(const struct DgDrawing *d, char **report_json);

// Render a drawing as a standalone SVG document. `scale` is pixels per
// grid unit (at least 1); `show_grid` draws the integer lattice.
//
// # Safety
// `d` must be a live handle; `out` a valid pointer.
enum DgStatus dg_render_svg(const struct DgDrawing *d, uint32_t scale, bool show_grid, char **out);

// Release a drawing handle. Null is a no-op.
//
// # Safety
// `d` must be null or a live handle from this library, and must not be
// used afterwards.
void dg_drawing_free(struct DgDrawing *d);

// Release a string returned by this library. Null is a no-op.
//
// # Safety
// `s` must be null or a string returned by this library, and must not be
// used afterwards.
void dg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DUALGRID_H */
