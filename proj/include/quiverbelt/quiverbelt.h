/* C interface to the quiverbelt library. All functions return a status code
 * (QB_OK on success). Strings returned through char** are allocated by the
 * library and released with qb_free_string. The message of the most recent
 * failure on the calling thread is available from qb_last_error. */
#ifndef QUIVERBELT_H
#define QUIVERBELT_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    QB_OK = 0,
    QB_ERR_DIVISION_BY_ZERO = 1,
    QB_ERR_INVALID_MULTIPLIER = 2,
    QB_ERR_NOT_COSINE_FORM = 3,
    QB_ERR_SEARCH_BUDGET_EXCEEDED = 4,
    QB_ERR_DEGENERATE_REFERENCE = 5,
    QB_ERR_DEGENERATE_POSITIVITY = 6,
    QB_ERR_UNSUPPORTED_CLASS = 7,
    QB_ERR_NOT_ACYCLIC = 8,
    QB_ERR_BUDGET_EXCEEDED = 9,
    QB_ERR_PARSE = 10,
    QB_ERR_IO = 11,
    QB_ERR_INVALID_ARGUMENT = 12,
    QB_ERR_INTERNAL = 99
} qb_status;

typedef struct qb_matrix qb_matrix;
typedef struct qb_seed qb_seed;
typedef struct qb_graph qb_graph;

const char* qb_last_error(void);
const char* qb_status_name(int status);
void qb_free_string(char* s);
const char* qb_version(void);

/* Initial number of fractional bits used by the certified sign oracle. */
int qb_set_precision_bits(long bits);

/* Exchange matrices. Mutation indices are 1-based. */
int qb_matrix_parse(const char* text, qb_matrix** out);
int qb_matrix_spherical(long p1, long q1, long p2, long q2, qb_matrix** out);
int qb_matrix_affine(int d, qb_matrix** out);
int qb_matrix_markov(qb_matrix** out);
int qb_matrix_mutate(const qb_matrix* m, int k, qb_matrix** out);
int qb_matrix_json(const qb_matrix* m, char** out);
void qb_matrix_free(qb_matrix* m);
int qb_classify(const qb_matrix* m, int budget, char** json_out);

/* Planar seeds of the affine levels. */
int qb_seed_initial(int d, qb_seed** out);
int qb_seed_mutate(const qb_seed* s, int k, qb_seed** out);
int qb_seed_json(const qb_seed* s, char** out);
void qb_seed_free(qb_seed* s);

/* Exchange graphs. format is one of "json", "dot", "svg", "csv", "text". */
int qb_graph_affine(int d, int depth, int max_vertices, qb_graph** out);
int qb_graph_spherical(const qb_matrix* m, unsigned long long rng_seed, int max_vertices, qb_graph** out);
int qb_graph_counts(const qb_graph* g, long* vertices, long* edges, int* closed);
int qb_graph_export(const qb_graph* g, const char* format, char** out);
int qb_graph_lattice(const qb_graph* g, char** json_out);
int qb_graph_census(const qb_graph* g, char** json_out);
void qb_graph_free(qb_graph* g);

/* Growth table of the affine level d up to radius n as CSV "n,gr". */
int qb_growth_csv(int d, int n, char** out);

/* Rank-2 sector model: reference direction q in units of pi/(2b). */
int qb_rank2_orbit(long a, long b, long q, long* period, long* lazy_count, int* compatible);

/* Acceptance checks. criteria is a comma separated list of ids or NULL for
 * all. all_ok is set to 1 when every check passed. */
int qb_verify(const char* criteria, char** json_out, int* all_ok);

#ifdef __cplusplus
}
#endif

#endif
