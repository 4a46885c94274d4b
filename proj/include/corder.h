/* C interface to the circular-order library.
 *
 * All functions return a status code:
 *   0  success
 *   2  bad input (schema violation, descriptor mismatch, precondition failure);
 *      *err carries a diagnostic naming the offending JSON path when known
 *   70 internal invariant breach
 *
 * Strings returned through char** are heap-allocated; release them with
 * co_string_free.  Handles are opaque; release with the matching _free.
 */
#ifndef CORDER_H
#define CORDER_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct co_group co_group;
typedef struct co_order co_order;

/* -- lifecycle ----------------------------------------------------------- */

int co_group_parse(const char* json_text, co_group** out, char** err);
void co_group_free(co_group* g);

int co_order_parse(const char* json_text, co_order** out, char** err);
void co_order_free(co_order* c);

void co_string_free(char* s);

/* -- evaluation and validation ------------------------------------------- */

/* value in {-1, 0, +1} of the order on the triple (a, b, c) of element
 * JSON texts. */
int co_eval(const co_order* c, const char* a_json, const char* b_json,
            const char* c_json, int* value, char** err);

/* Checks the order axioms exhaustively on the ball of the given radius;
 * *report_json receives a ValidationReport, *ok is 1 iff no violations. */
int co_validate(const co_order* c, int radius, int max_violations,
                char** report_json, int* ok, char** err);

/* -- obstruction search --------------------------------------------------- */

/* mode is "co" or "lo".  *no is 1 when an unsatisfiable constraint system
 * was found, in which case *cert_json receives the minimized certificate;
 * *no = 0 means inconclusive. */
int co_search(const co_group* g, int max_radius, const char* mode, int* no,
              char** cert_json, char** err);

/* 1 in *ok iff the certificate replays UNSAT under exhaustive enumeration. */
int co_verify_certificate(const char* cert_json, int* ok, char** err);

/* All circular orders of a finite-table group; *out_json receives
 * {"count": n, "orders": [...]}. */
int co_enumerate_orders(const co_group* g, char** out_json, char** err);

/* All circular orders of Z/m, same output shape. */
int co_enumerate_cyclic(long m, char** out_json, char** err);

/* -- realization ----------------------------------------------------------*/

/* Pins the first `count` ball elements to exact circle positions.
 * format is "csv", "svg" or "json". */
int co_realize(const co_order* c, int count, const char* format, char** out,
               char** err);

/* -- abelian analysis ------------------------------------------------------*/

/* Rotation parameters agreeing with the order on ball(sample_radius);
 * *found is 0 and *params_json untouched when the budget runs out. */
int co_density_search(const co_order* c, int sample_radius, int budget,
                      int* found, char** params_json, char** err);

/* Smallest n <= N with c(e, g, h) != c(e, g^n, h); *witness = -1 when no
 * such n exists up to N. */
int co_archimedean(const co_order* c, const char* g_json, const char* h_json,
                   long N, long* witness, char** err);

/* -- free products ---------------------------------------------------------*/

/* triple_json is a 3-element array of free-product words; *trace_json
 * receives the reduction trace ending at the minimal triple. */
int co_reduce_triple(const co_group* g, const char* triple_json,
                     char** trace_json, char** err);

#ifdef __cplusplus
}
#endif

#endif
