/* querymind.h -- C interface to the querymind solver library.
 *
 * All handles are opaque. Functions returning qm_status report failures
 * through the status code and a thread-local message (qm_last_error).
 */

#ifndef QUERYMIND_H
#define QUERYMIND_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QUERYMIND_BUILDING_LIBRARY)
#    define QM_API __declspec(dllexport)
#  else
#    define QM_API __declspec(dllimport)
#  endif
#else
#  define QM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qm_status {
    QM_OK = 0,
    QM_INVALID_ARGUMENT = 1, /* bad config, option or input text */
    QM_INVALID_CODE = 2,     /* a code is not valid for the config */
    QM_DOMAIN = 3,           /* input outside an operation's scope */
    QM_CAPACITY = 4,         /* a size budget was exceeded */
    QM_CONTRADICTION = 5,    /* no code is consistent with the feedback */
    QM_PROTOCOL = 6,         /* a strategy submitted an invalid query */
    QM_INVARIANT = 7,        /* a checked property failed; result still produced */
    QM_INTERNAL = 8
} qm_status;

typedef enum qm_feedback_kind { QM_BLACK_ONLY = 0, QM_BLACK_WHITE = 1 } qm_feedback_kind;
typedef enum qm_repeats { QM_REPEATS_ALLOWED = 0, QM_REPEATS_FORBIDDEN = 1 } qm_repeats;
typedef enum qm_mode { QM_ADAPTIVE = 0, QM_NONADAPTIVE = 1 } qm_mode;

typedef struct qm_config {
    int n;
    int k;
    qm_feedback_kind feedback;
    qm_repeats repeats;
    qm_mode mode;
} qm_config_t;

/* Run options shared by the experiment entry points. Zero or NULL selects
 * the documented default; call qm_options_init before filling fields. */
typedef struct qm_options {
    const char *strategy;     /* "minimax" (default), "basis", "first-consistent" */
    int turn_budget;          /* 0: n*k + 1; also the exact solver's depth cap */
    uint64_t space_budget;    /* 0: per-command default */
    int s_cap;                /* -1: default 6 */
    uint64_t seed;            /* hidden-code choice and greedy tie-breaking */
    unsigned threads;         /* 0: hardware concurrency */
    const char *hidden;       /* solve: hidden code "1,2,3"; NULL picks one by seed */
    const char *query;        /* entropy-audit: one query; NULL audits every code */
    const char *queries_text; /* nonadaptive-search: query-set file contents to check */
    int lemma_c;              /* adversary-trace: 0 checks C = 1 and C = 2 */
} qm_options_t;

typedef struct qm_space qm_space;
typedef struct qm_result qm_result;

QM_API const char *qm_version(void);

/* Message for the last failing call on this thread; "" if none. */
QM_API const char *qm_last_error(void);

QM_API void qm_config_init(qm_config_t *config);
QM_API void qm_options_init(qm_options_t *options);
QM_API qm_status qm_config_validate(const qm_config_t *config);

/* Code spaces: all valid codes in lexicographic order. */
QM_API qm_status qm_space_create(const qm_config_t *config, uint64_t budget, qm_space **out);
QM_API void qm_space_destroy(qm_space *space);
QM_API uint64_t qm_space_size(const qm_space *space);
QM_API qm_status qm_space_code(const qm_space *space, uint64_t index, uint8_t *colors, size_t length);
QM_API qm_status qm_space_index(const qm_space *space, const uint8_t *colors, size_t length,
                                uint64_t *index);

/* Feedback of query q against hidden h; *white is -1 for black-only configs. */
QM_API qm_status qm_feedback(const qm_config_t *config, const uint8_t *q, const uint8_t *h,
                             size_t length, int *black, int *white);

/* Experiments. On QM_OK or QM_INVARIANT, *out holds a result that the
 * caller releases with qm_result_destroy. */
QM_API qm_status qm_solve(const qm_config_t *config, const qm_options_t *options, qm_result **out);
QM_API qm_status qm_worst_case(const qm_config_t *config, const qm_options_t *options,
                               qm_result **out);
QM_API qm_status qm_exact_value(const qm_config_t *config, const qm_options_t *options,
                                qm_result **out);
/* Uses only n and k; n may exceed the game limit of 64. */
QM_API qm_status qm_bounds(const qm_config_t *config, const qm_options_t *options, qm_result **out);
QM_API qm_status qm_adversary_trace(const qm_config_t *config, const qm_options_t *options,
                                    qm_result **out);
QM_API qm_status qm_nonadaptive_search(const qm_config_t *config, const qm_options_t *options,
                                       qm_result **out);
QM_API qm_status qm_entropy_audit(const qm_config_t *config, const qm_options_t *options,
                                  qm_result **out);

/* Result accessors; strings stay valid until qm_result_destroy. */
QM_API const char *qm_result_json(const qm_result *result);
QM_API const char *qm_result_csv(const qm_result *result); /* NULL if none */
QM_API const char *qm_result_summary(const qm_result *result);
QM_API void qm_result_destroy(qm_result *result);

#ifdef __cplusplus
}
#endif

#endif /* QUERYMIND_H */
