#ifndef SMBRIBE_H
#define SMBRIBE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SMB_API __declspec(dllexport)
#else
#define SMB_API __attribute__((visibility("default")))
#endif

typedef enum smb_error {
  SMB_OK = 0,
  SMB_ERR_SYNTAX = 1,
  SMB_ERR_UNKNOWN_NAME = 2,
  SMB_ERR_DUPLICATE = 3,
  SMB_ERR_NON_MUTUAL = 4,
  SMB_ERR_UNDECLARED_ADDABLE = 5,
  SMB_ERR_INVALID_ACTION = 6,
  SMB_ERR_INVALID_ARGUMENT = 7,
  SMB_ERR_NOT_STABLE = 8,
  SMB_ERR_CAP_EXCEEDED = 9,
  SMB_ERR_UNSUPPORTED = 10,
  SMB_ERR_INTERNAL = 11
} smb_error;

typedef enum smb_status {
  SMB_FEASIBLE = 0,
  SMB_INFEASIBLE_WITHIN_BUDGET = 1,
  SMB_INFEASIBLE_ALWAYS = 2
} smb_status;

typedef struct smb_instance smb_instance;
typedef struct smb_matching smb_matching;
typedef struct smb_result smb_result;

/* Message of the last error raised on the calling thread ("" if none). */
SMB_API const char *smb_last_error(void);
/* Strings returned through char** out-parameters are owned by the caller. */
SMB_API void smb_string_free(char *s);

SMB_API smb_error smb_instance_parse(const char *text, smb_instance **out);
SMB_API smb_error smb_instance_serialize(const smb_instance *inst, char **out);
/* Lowercase hex SHA-256 of the canonical serialization. */
SMB_API smb_error smb_instance_digest(const smb_instance *inst, char **out);
SMB_API void smb_instance_free(smb_instance *inst);

SMB_API smb_error smb_matching_parse(const smb_instance *inst, const char *text, smb_matching **out);
SMB_API smb_error smb_matching_serialize(const smb_instance *inst, const smb_matching *m, char **out);
SMB_API void smb_matching_free(smb_matching *m);

/* Lists blocking pairs and verdicts; *holds is 1 iff the matching is stable (and unique when requested). */
SMB_API smb_error smb_check(const smb_instance *inst, const smb_matching *m, int unique, char **report,
                            int *holds);

typedef struct smb_solve_options {
  const char *goal;       /* const-ex | dest-ex | exact-ex | exact-uni */
  const char *action;     /* swap | reorder | accdel | delete | add */
  const char *algo;       /* auto | approx2 | xp | bruteforce | fpt; NULL means auto */
  const char *pair_man;   /* target pair for const-ex / dest-ex */
  const char *pair_woman;
  const smb_matching *target; /* target matching for exact-ex / exact-uni */
  int has_budget;         /* 0 means unbounded */
  int budget;
  int oracle;             /* nonzero: exhaustive oracle instead of the solver */
} smb_solve_options;

SMB_API smb_error smb_solve(const smb_instance *inst, const smb_solve_options *opts, smb_result **out);
SMB_API smb_status smb_result_status(const smb_result *res);
/* Canonical result document ("result 1", sorted keys). Pass a negative seed for "no seed". */
SMB_API smb_error smb_result_render(const smb_result *res, const char *command, int64_t seed, double seconds,
                                    char **out);
SMB_API void smb_result_free(smb_result *res);

SMB_API smb_error smb_generate(int n, uint64_t seed, double addable_fraction, smb_instance **out);

typedef struct smb_gadget_options {
  const char *name;      /* clique-add | clique-accdel | clique-reorder | is-delete | hs-reorder | hs-add | dummy-block */
  int vertices;          /* graph gadgets */
  const char *edges;     /* "1-2,2-3" (1-based) */
  int universe;          /* hitting-set gadgets */
  const char *sets;      /* "1,2,3;1,2" */
  int k;                 /* clique / independent set / hitting set size, or block size for dummy-block */
  int unique;            /* is-delete: nonzero targets exact-uni instead of exact-ex */
} smb_gadget_options;

/* *target is NULL when the gadget targets a pair; *info receives goal, action, budget, pair and a note as JSON. */
SMB_API smb_error smb_gadget(const smb_gadget_options *opts, smb_instance **inst, smb_matching **target,
                             char **info);

/* One line per stable matching ("m-w" entries separated by spaces); fails above 16 agents. */
SMB_API smb_error smb_enumerate(const smb_instance *inst, char **out);

typedef struct smb_bench_options {
  const char *goal;
  const char *action;
  const int *n_list;
  int n_count;
  int reps;
  uint64_t seed;
} smb_bench_options;

/* Tab-separated per-instance costs followed by per-n summary lines. */
SMB_API smb_error smb_bench(const smb_bench_options *opts, char **out);

#ifdef __cplusplus
}
#endif

#endif
