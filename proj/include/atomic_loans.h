/* Copyright (c) 2026 The atomic-loans-sim developers
 * Distributed under the MIT software license, see the accompanying
 * file COPYING or http://www.opensource.org/licenses/mit-license.php.
 *
 * C interface to the atomic loans simulator. All handles are opaque;
 * strings returned through a handle stay valid until the handle is freed.
 * Functions returning al_status set a thread-local message retrievable
 * with al_last_error().
 */

#ifndef ATOMIC_LOANS_H
#define ATOMIC_LOANS_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum al_status {
    AL_OK = 0,
    AL_ERR_USAGE = 1,             /* bad arguments (null pointers, bad party) */
    AL_ERR_UNKNOWN_SCENARIO = 2,  /* no builtin with that name */
    AL_ERR_PARSE = 3,             /* config text did not parse or validate */
    AL_ERR_SCENARIO_FAILED = 4,   /* run aborted (cheating strategy, ...) */
    AL_ERR_VALIDATION_FAILED = 5, /* trace does not replay byte for byte */
    AL_ERR_DEPTH = 6,             /* enumeration depth outside [0, 16] */
    AL_ERR_INTERNAL = 7
} al_status;

typedef struct al_run al_run;
typedef struct al_enum al_enum;

const char* al_version(void);
const char* al_status_str(al_status s);

/* Message describing the most recent failure on this thread; empty string
 * if the last call succeeded. */
const char* al_last_error(void);

/* Builtin scenario catalog. */
int al_builtin_count(void);
const char* al_builtin_name(int index); /* NULL if out of range */
/* Config text of a builtin, NULL if unknown. Valid until the next call
 * on this thread. */
const char* al_builtin_config_text(const char* name);

/* Executes a scenario and hands back a run handle on success. */
al_status al_run_builtin(const char* name, al_run** out);
al_status al_run_config_text(const char* ini_text, al_run** out);
void al_run_free(al_run* run);

const char* al_run_label(const al_run* run);
const char* al_run_terminal_state(const al_run* run);
const char* al_run_trace_jsonl(const al_run* run);
const char* al_run_report_text(const al_run* run);

/* Balance change over the run for a party ("alice", "bob", "charlie",
 * "rival", "escrow") on a chain ("ACoin" or "BCoin"). */
al_status al_run_delta(const al_run* run, const char* party, const char* chain,
                       long long* out_delta);

/* Searches deviating strategies for the parties not named in honest_csv
 * (comma-separated, may be empty) and checks the safety predicates for the
 * honest ones. Returns AL_OK even when violations were found; inspect the
 * handle. max_depth must lie in [0, 16]. */
al_status al_enumerate(const char* honest_csv, int max_depth, al_enum** out);
/* Same, but searching from the given scenario config instead of the
 * default terms. base_ini may be NULL. */
al_status al_enumerate_with_base(const char* honest_csv, int max_depth,
                                 const char* base_ini, al_enum** out);
void al_enum_free(al_enum* e);

unsigned long long al_enum_runs(const al_enum* e);
int al_enum_violation_count(const al_enum* e);
/* One line per violation: "predicate | plan | description". */
const char* al_enum_violation(const al_enum* e, int index);
/* Scenario config reproducing the first violation, NULL if none. */
const char* al_enum_first_violation_scenario(const al_enum* e);

/* Replays the scenario embedded in a JSONL trace and compares byte for
 * byte. On AL_ERR_VALIDATION_FAILED, *bad_line (1-based) names the first
 * offending line and al_last_error() explains the mismatch. */
al_status al_validate_trace_text(const char* jsonl, unsigned long long* bad_line);

#ifdef __cplusplus
}
#endif

#endif /* ATOMIC_LOANS_H */
