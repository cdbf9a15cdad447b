#pragma once

#include <cstddef>

namespace matchkit {

/* Process-wide knobs. All are read once per operation; set them before
 * kicking off work. Env variables MATCHKIT_EPS / MATCHKIT_ARITY_CAP /
 * MATCHKIT_MODE are applied by the CLI, not by the library. */

double float_eps();
void set_float_eps(double eps);  // default 1e-9, absolute

int arity_cap();
void set_arity_cap(int cap);     // default 16; dense 2^n tables

int holant_edge_cap();           // default 24
void set_holant_edge_cap(int cap);

int csp_variable_cap();          // default 20
void set_csp_variable_cap(int cap);

int pm_vertex_cap();             // default 16
void set_pm_vertex_cap(int cap);

}  // namespace matchkit
