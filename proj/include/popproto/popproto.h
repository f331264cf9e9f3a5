/*
 * popproto -- population protocols from symmetric games.
 *
 * C interface to the toolkit: opaque handles, integer status codes, and
 * caller-freed strings. Every function that can fail returns pp_status;
 * pp_last_error() describes the most recent failure on this thread.
 * Strings returned as char* must be released with pp_string_free, handles
 * with their matching *_free function. NULL handles are rejected with
 * PP_ERR_INVALID_ARGUMENT, never dereferenced.
 */

#ifndef POPPROTO_H
#define POPPROTO_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pp_status {
  PP_OK = 0,
  PP_ERR_PARSE = 1,
  PP_ERR_INVALID_ARGUMENT = 2,
  PP_ERR_NOT_FOUND = 3,
  PP_ERR_BUDGET_EXCEEDED = 4,
  PP_ERR_IO = 5,
  PP_ERR_INTERNAL = 6
} pp_status;

typedef struct pp_protocol pp_protocol;
typedef struct pp_matrix pp_matrix;
typedef struct pp_predicate pp_predicate;
typedef struct pp_graph pp_graph;
typedef struct pp_recognition pp_recognition;
typedef struct pp_verdict pp_verdict;
typedef struct pp_sim_report pp_sim_report;
typedef struct pp_falsify_report pp_falsify_report;

/* Message for the last failing call on the current thread. Borrowed. */
const char* pp_last_error(void);
void pp_string_free(char* s);

/* ---- protocols ------------------------------------------------------- */

pp_status pp_protocol_parse(const char* text, pp_protocol** out);
pp_status pp_protocol_load(const char* path, pp_protocol** out);
char* pp_protocol_format(const pp_protocol* p);
void pp_protocol_free(pp_protocol* p);
int pp_protocol_num_states(const pp_protocol* p);
int pp_protocol_num_symbols(const pp_protocol* p);
/* Borrowed; NULL when the index is out of range. */
const char* pp_protocol_state_name(const pp_protocol* p, int state);
const char* pp_protocol_symbol_name(const pp_protocol* p, int symbol);
int pp_protocol_is_deterministic(const pp_protocol* p);
int pp_protocol_is_symmetric(const pp_protocol* p);

/* ---- matrices and the game correspondence ---------------------------- */

pp_status pp_matrix_parse(const char* text, pp_matrix** out);
pp_status pp_matrix_load(const char* path, pp_matrix** out);
char* pp_matrix_format(const pp_matrix* m);
void pp_matrix_free(pp_matrix* m);
int pp_matrix_dim(const pp_matrix* m);

/*
 * Win-stay / lose-shift protocol of a payoff matrix. `inputs` and
 * `outputs` use the protocol file syntax ("sigma->q1 zero->q0",
 * "q0=0 q1=1"); pass NULL for the defaults (alphabet = states, identity
 * input map, all outputs 0; outputs listed override the default bit).
 */
pp_status pp_derive(const pp_matrix* m, const char* inputs,
                    const char* outputs, pp_protocol** out);

/* Witness matrix of a symmetric deterministic 2-state protocol. */
pp_status pp_two_state_matrix(const pp_protocol* p, pp_matrix** out);

enum {
  PP_RECOGNITION_PAVLOVIAN = 0,
  PP_RECOGNITION_NOT_SYMMETRIC = 1,
  PP_RECOGNITION_INFEASIBLE = 2
};

/* Does some payoff matrix induce this protocol? */
pp_status pp_recognize(const pp_protocol* p, pp_recognition** out);
int pp_recognition_kind(const pp_recognition* r);
/* Witness matrix copy; PP_ERR_NOT_FOUND unless the verdict is Pavlovian. */
pp_status pp_recognition_witness(const pp_recognition* r, pp_matrix** out);
char* pp_recognition_text(const pp_recognition* r);
char* pp_recognition_json(const pp_recognition* r);
void pp_recognition_free(pp_recognition* r);

/* ---- predicates ------------------------------------------------------ */

/* Expression over the protocol's input alphabet, e.g.
 * "count(sigma) >= 2", "count(one) mod 2 == 1", with and/or/not. */
pp_status pp_predicate_parse(const char* text, const pp_protocol* p,
                             pp_predicate** out);
void pp_predicate_free(pp_predicate* pr);

/* ---- stable-computation checking ------------------------------------- */

/* Pass 0 to use the default node budget (2,000,000 configurations). */
pp_status pp_check_stable(const pp_protocol* p, const pp_predicate* pred,
                          int n, uint64_t node_budget, pp_verdict** out);

/* Eventual-leader check over every initial configuration (on the image of
 * the input map) holding at least one agent in `leader_states_csv`. */
pp_status pp_check_leader(const pp_protocol* p, const char* leader_states_csv,
                          int n, uint64_t node_budget, pp_verdict** out);

int pp_verdict_holds(const pp_verdict* v);
char* pp_verdict_text(const pp_verdict* v);
char* pp_verdict_json(const pp_verdict* v);
void pp_verdict_free(pp_verdict* v);

/* ---- simulation ------------------------------------------------------ */

pp_status pp_graph_ring(int n, pp_graph** out);
pp_status pp_graph_complete(int n, pp_graph** out);
pp_status pp_graph_parse(const char* text, pp_graph** out);
pp_status pp_graph_load(const char* path, pp_graph** out);
int pp_graph_vertices(const pp_graph* g);
void pp_graph_free(pp_graph* g);

/*
 * Random-scheduler run from the initial configuration of `input`
 * ("sigma:3,zero:2"). The reachable bottom SCCs are certified with an
 * exploration first (skipped when explore_budget is 0, in which case
 * pp_sim_reached_bottom reports -1 for unknown).
 */
pp_status pp_simulate(const pp_protocol* p, const char* input,
                      uint64_t max_steps, uint64_t seed,
                      uint64_t explore_budget, pp_sim_report** out);

/*
 * Edge-draw run on a graph. Vertices take the input states in symbol
 * order; the input size must equal the vertex count. `absorbing_state`
 * names a state: the run stops once every vertex is in it (NULL = run to
 * max_steps).
 */
pp_status pp_simulate_graph(const pp_protocol* p, const pp_graph* g,
                            const char* input, const char* absorbing_state,
                            uint64_t max_steps, uint64_t seed,
                            pp_sim_report** out);

/* 1 = entered a certified bottom SCC / reached the absorbing vector,
 * 0 = did not, -1 = not determined. */
int pp_sim_reached_bottom(const pp_sim_report* r);
uint64_t pp_sim_steps(const pp_sim_report* r);
char* pp_sim_final(const pp_sim_report* r);
char* pp_sim_text(const pp_sim_report* r);
char* pp_sim_json(const pp_sim_report* r);
void pp_sim_report_free(pp_sim_report* r);

/* ---- symmetrization --------------------------------------------------- */

pp_status pp_symmetrize(const pp_protocol* p, pp_protocol** out);

/* ---- exhaustive search ------------------------------------------------ */

/*
 * Checks every 3-state protocol induced by a payoff matrix, under every
 * injective input assignment of {sigma, zero} and every output map,
 * against `predicate` (over sigma and zero) for populations 2..n_max.
 * threads <= 0 picks one worker.
 */
pp_status pp_falsify(const char* predicate, int n_max, int threads,
                     pp_falsify_report** out);
uint64_t pp_falsify_candidates(const pp_falsify_report* r);
uint64_t pp_falsify_survivors(const pp_falsify_report* r);
char* pp_falsify_text(const pp_falsify_report* r);
char* pp_falsify_json(const pp_falsify_report* r);
void pp_falsify_report_free(pp_falsify_report* r);

/* ---- catalog ---------------------------------------------------------- */

/* Newline-separated names of the built-in protocols. */
char* pp_catalog_names(void);
/* Either out-pointer may be NULL; *matrix is NULL when the entry has no
 * payoff matrix. */
pp_status pp_catalog_get(const char* name, pp_protocol** protocol,
                         pp_matrix** matrix);
/* One-line summary: states, rules, predicate or property, description. */
char* pp_catalog_describe(const char* name);
/* Predicate expression of the entry, or PP_ERR_NOT_FOUND. */
pp_status pp_catalog_predicate(const char* name, char** out);
/* Comma-separated leader states of the entry, or PP_ERR_NOT_FOUND. */
pp_status pp_catalog_leader_states(const char* name, char** out);

#ifdef __cplusplus
}
#endif

#endif /* POPPROTO_H */
