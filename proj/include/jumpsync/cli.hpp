#pragma once

#include <vector>

namespace jumpsync::cli {

// Golden row of a published steady-state-speed table. The trade-off-optimal
// row of table 2 gets its (lambda, mu) from the numeric optimizer.
struct TableRow {
  double lambda;
  double mu;
  double v_n_paper;
  double v_star_paper;
};

// table_id is 1 (exponential jumps) or 2 (uniform [0,2] jumps); both vary
// (lambda, mu) along 2 lambda + mu = 1.
const std::vector<TableRow>& table_rows(int table_id);

// Full command-line surface. Returns the process exit code: 0 success,
// 1 validation/usage error, 2 numeric failure.
int dispatch(int argc, const char* const* argv);

}  // namespace jumpsync::cli
