#ifndef GROUPALG_H
#define GROUPALG_H

#include <stdbool.h>
#include <stddef.h>

typedef enum GroupalgStatus {
  GROUPALG_STATUS_OK = 0,
  GROUPALG_STATUS_NULL_POINTER = 1,
  GROUPALG_STATUS_INVALID_UTF8 = 2,
  GROUPALG_STATUS_PARSE = 3,
  // Input parsed but violates an axiom.
  GROUPALG_STATUS_INVALID = 4,
  GROUPALG_STATUS_UNSUPPORTED = 5,
  GROUPALG_STATUS_CAP_EXCEEDED = 6,
  GROUPALG_STATUS_PANIC = 7,
} GroupalgStatus;

typedef enum GroupalgGraphVerdict {
  GROUPALG_GRAPH_VERDICT_NOT_SIMPLE = 0,
  GROUPALG_GRAPH_VERDICT_SIMPLE_AF = 1,
  GROUPALG_GRAPH_VERDICT_SIMPLE_PURELY_INFINITE = 2,
} GroupalgGraphVerdict;

typedef enum GroupalgConclusion {
  GROUPALG_CONCLUSION_SIMPLE_PURELY_INFINITE = 0,
  GROUPALG_CONCLUSION_HYPOTHESIS_FAILS = 1,
  GROUPALG_CONCLUSION_UNDETERMINED = 2,
} GroupalgConclusion;

typedef struct GroupalgCoarse GroupalgCoarse;

typedef struct GroupalgGraph GroupalgGraph;

typedef struct GroupalgGroupoid GroupalgGroupoid;

typedef struct GroupalgSelfSimilar GroupalgSelfSimilar;

typedef struct GroupalgSemigroup GroupalgSemigroup;

typedef struct GroupalgCrossCheck {
  bool simple;
  bool diagonal_maximal_abelian;
  bool topologically_free;
  bool minimal;
  bool agree;
} GroupalgCrossCheck;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after success.
// Owned by the library; valid until the next call.
const char *groupalg_last_error(void);

// Library version, static storage.
const char *groupalg_version(void);

void groupalg_string_free(char *s);

// Parses and validates a groupoid.
enum GroupalgStatus groupalg_groupoid_from_json(const char *json, struct GroupalgGroupoid **out);

void groupalg_groupoid_free(struct GroupalgGroupoid *g);

size_t groupalg_groupoid_arrow_count(const struct GroupalgGroupoid *g);

size_t groupalg_groupoid_unit_count(const struct GroupalgGroupoid *g);

// Groupoid as JSON; free with [`groupalg_string_free`].
enum GroupalgStatus groupalg_groupoid_to_json(const struct GroupalgGroupoid *g, char **out);

enum GroupalgStatus groupalg_groupoid_is_topologically_free(const struct GroupalgGroupoid *g,
                                                            bool *out);

enum GroupalgStatus groupalg_groupoid_is_minimal(const struct GroupalgGroupoid *g, bool *out);

// Burnside simplicity and the diagonal test against freeness and
// minimality. `cocycle_json` may be null for the trivial cocycle.
enum GroupalgStatus groupalg_groupoid_crosscheck(const struct GroupalgGroupoid *g,
                                                 const char *cocycle_json,
                                                 struct GroupalgCrossCheck *out);

// Graph from JSON (text starting with `{`) or DOT.
enum GroupalgStatus groupalg_graph_parse(const char *source, struct GroupalgGraph **out);

void groupalg_graph_free(struct GroupalgGraph *q);

enum GroupalgStatus groupalg_graph_verdict(const struct GroupalgGraph *q,
                                           enum GroupalgGraphVerdict *out);

// Parses and validates an inverse semigroup.
enum GroupalgStatus groupalg_semigroup_from_json(const char *json, struct GroupalgSemigroup **out);

void groupalg_semigroup_free(struct GroupalgSemigroup *s);

// Number of tight filters, which here are the ultrafilters.
enum GroupalgStatus groupalg_semigroup_tight_filter_count(const struct GroupalgSemigroup *s,
                                                          size_t *out);

// The tight groupoid as a new groupoid handle.
enum GroupalgStatus groupalg_semigroup_tight_groupoid(const struct GroupalgSemigroup *s,
                                                      struct GroupalgGroupoid **out);

// Parses a self-similar action and checks its cocycle identities.
enum GroupalgStatus groupalg_selfsim_from_json(const char *json, struct GroupalgSelfSimilar **out);

void groupalg_selfsim_free(struct GroupalgSelfSimilar *a);

// Conclusions for the essential and the reduced algebra at search depth
// `depth`.
enum GroupalgStatus groupalg_selfsim_verdict(const struct GroupalgSelfSimilar *a,
                                             size_t depth,
                                             enum GroupalgConclusion *essential,
                                             enum GroupalgConclusion *reduced);

enum GroupalgStatus groupalg_coarse_from_json(const char *json, struct GroupalgCoarse **out);

void groupalg_coarse_free(struct GroupalgCoarse *c);

enum GroupalgStatus groupalg_coarse_is_simple(const struct GroupalgCoarse *c, bool *out);

// Runs the command line with `argv[0..argc]` (program name first). Output
// and error text are returned as new strings; either pointer may be null
// to discard it.
enum GroupalgStatus groupalg_run(int argc,
                                 const char *const *argv,
                                 int *exit_code,
                                 char **stdout_text,
                                 char **stderr_text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GROUPALG_H */
