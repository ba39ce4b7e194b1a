#pragma once

#include <limits>
#include <string>
#include <vector>

#include "hilbertsep/common.hpp"

namespace hilbertsep {

enum class Sense { Minimize, Maximize, FeasibilityOnly };
enum class Relation { LessEq, Equal, GreaterEq };

struct LpRow {
    Vec coeffs;
    Relation rel;
    double rhs;
};

/// Dense linear program over named variables with per-variable bounds.
/// Default bounds are [0, +inf); call set_free for unrestricted variables.
class LinearProgram {
  public:
    explicit LinearProgram(int num_vars);

    int num_vars() const { return static_cast<int>(objective_.size()); }
    int num_rows() const { return static_cast<int>(rows_.size()); }

    void set_sense(Sense s) { sense_ = s; }
    Sense sense() const { return sense_; }

    void set_objective(Vec c);
    const Vec& objective() const { return objective_; }

    void add_row(Vec coeffs, Relation rel, double rhs);
    const LpRow& row(int i) const { return rows_[i]; }

    void set_bounds(int j, double lo, double hi);
    void set_free(int j);
    double lower(int j) const { return lower_[j]; }
    double upper(int j) const { return upper_[j]; }

    void set_name(int j, std::string name);
    std::string name(int j) const;

  private:
    Sense sense_ = Sense::Minimize;
    Vec objective_;
    Vec lower_, upper_;
    std::vector<LpRow> rows_;
    std::vector<std::string> names_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Vec x;  // empty unless Optimal
    double objective_value = 0.0;
    int iterations = 0;
};

struct SimplexOptions {
    double tol = tol::lp;
    double pivot_tol = tol::lp_pivot;
    int max_iterations = 0;  // 0 = automatic bound from problem size
};

/// Two-phase primal simplex on a dense tableau. Dantzig pricing, switching to
/// Bland's rule after 5*(rows+cols) pivots. Throws IterationLimit when the
/// pivot budget is exhausted; the limit is never misreported as Infeasible.
LpSolution solve(const LinearProgram& lp, const SimplexOptions& opt = {});

/// Wraps solve() with FeasibilityOnly sense.
bool check_feasible(const LinearProgram& lp, const SimplexOptions& opt = {});

/// One-constraint-per-line interchange text (min:/max: header, bounds and
/// free declarations at the end). Used for cross-checking against external
/// solvers; enabled globally via HILBERTSEP_LP_DUMP=1.
std::string lp_text(const LinearProgram& lp);

}  // namespace hilbertsep
