#include "hilbertsep/lp.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <utility>

namespace hilbertsep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Substitution that rewrites one user variable in terms of nonnegative
// standard-form columns.
struct VarMap {
    enum Kind { Shifted, Negated, Split } kind = Shifted;
    double lo = 0.0;
    double hi = kInf;
    int col = -1;
    int neg_col = -1;  // second column of a Split variable
};

struct StdRow {
    Vec coeffs;
    Relation rel;
    double rhs;
};

void append_number(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

}  // namespace

LinearProgram::LinearProgram(int num_vars)
    : objective_(num_vars, 0.0),
      lower_(num_vars, 0.0),
      upper_(num_vars, kInf),
      names_(num_vars) {}

void LinearProgram::set_objective(Vec c) {
    if (static_cast<int>(c.size()) != num_vars())
        throw DimensionMismatch("DimensionMismatch: objective has " + std::to_string(c.size()) +
                                " coefficients for " + std::to_string(num_vars()) + " variables");
    objective_ = std::move(c);
}

void LinearProgram::add_row(Vec coeffs, Relation rel, double rhs) {
    if (static_cast<int>(coeffs.size()) != num_vars())
        throw DimensionMismatch("DimensionMismatch: row has " + std::to_string(coeffs.size()) +
                                " coefficients for " + std::to_string(num_vars()) + " variables");
    rows_.push_back(LpRow{std::move(coeffs), rel, rhs});
}

void LinearProgram::set_bounds(int j, double lo, double hi) {
    lower_[j] = lo;
    upper_[j] = hi;
}

void LinearProgram::set_free(int j) {
    lower_[j] = -kInf;
    upper_[j] = kInf;
}

void LinearProgram::set_name(int j, std::string name) { names_[j] = std::move(name); }

std::string LinearProgram::name(int j) const {
    return names_[j].empty() ? "x" + std::to_string(j) : names_[j];
}

std::string lp_text(const LinearProgram& lp) {
    std::string out;
    auto append_terms = [&](const Vec& coeffs) {
        bool any = false;
        for (int j = 0; j < static_cast<int>(coeffs.size()); ++j) {
            if (coeffs[j] == 0.0) continue;
            out += coeffs[j] < 0.0 ? " -" : " +";
            append_number(out, std::abs(coeffs[j]));
            out += ' ';
            out += lp.name(j);
            any = true;
        }
        if (!any) out += " 0";
    };

    out += lp.sense() == Sense::Maximize ? "max:" : "min:";
    append_terms(lp.objective());
    out += ";\n";

    for (int i = 0; i < lp.num_rows(); ++i) {
        const LpRow& row = lp.row(i);
        out += "r" + std::to_string(i) + ":";
        append_terms(row.coeffs);
        switch (row.rel) {
            case Relation::LessEq: out += " <= "; break;
            case Relation::Equal: out += " = "; break;
            case Relation::GreaterEq: out += " >= "; break;
        }
        append_number(out, row.rhs);
        out += ";\n";
    }

    for (int j = 0; j < lp.num_vars(); ++j) {
        const double lo = lp.lower(j), hi = lp.upper(j);
        if (lo == -kInf && hi == kInf) {
            out += "free " + lp.name(j) + ";\n";
            continue;
        }
        if (lo == -kInf) {
            out += lp.name(j) + " >= -1e30;\n";
        } else if (lo != 0.0) {
            out += lp.name(j) + " >= ";
            append_number(out, lo);
            out += ";\n";
        }
        if (hi < kInf) {
            out += lp.name(j) + " <= ";
            append_number(out, hi);
            out += ";\n";
        }
    }
    return out;
}

LpSolution solve(const LinearProgram& lp, const SimplexOptions& opt) {
    if (const char* dump = std::getenv("HILBERTSEP_LP_DUMP"); dump && dump[0] == '1' && dump[1] == '\0')
        std::cerr << lp_text(lp);

    const int n = lp.num_vars();

    // Rewrite every variable as a combination of nonnegative columns. Finite
    // upper bounds of shifted variables become explicit rows.
    std::vector<VarMap> vmap(n);
    std::vector<std::pair<int, double>> upper_rows;
    int next_col = 0;
    for (int j = 0; j < n; ++j) {
        const double lo = lp.lower(j), hi = lp.upper(j);
        if (lo > hi) return {LpStatus::Infeasible, {}, 0.0, 0};
        VarMap& m = vmap[j];
        m.lo = lo;
        m.hi = hi;
        if (lo > -kInf) {
            m.kind = VarMap::Shifted;
            m.col = next_col++;
            if (hi < kInf) upper_rows.emplace_back(m.col, hi - lo);
        } else if (hi < kInf) {
            m.kind = VarMap::Negated;
            m.col = next_col++;
        } else {
            m.kind = VarMap::Split;
            m.col = next_col;
            m.neg_col = next_col + 1;
            next_col += 2;
        }
    }
    const int S = next_col;

    // Standard-form rows, then flip signs so every right-hand side is >= 0.
    std::vector<StdRow> rows;
    rows.reserve(lp.num_rows() + upper_rows.size());
    for (int i = 0; i < lp.num_rows(); ++i) {
        const LpRow& src = lp.row(i);
        Vec t(S, 0.0);
        double b = src.rhs;
        for (int j = 0; j < n; ++j) {
            const double a = src.coeffs[j];
            if (a == 0.0) continue;
            const VarMap& m = vmap[j];
            switch (m.kind) {
                case VarMap::Shifted:
                    t[m.col] += a;
                    b -= a * m.lo;
                    break;
                case VarMap::Negated:
                    t[m.col] -= a;
                    b -= a * m.hi;
                    break;
                case VarMap::Split:
                    t[m.col] += a;
                    t[m.neg_col] -= a;
                    break;
            }
        }
        rows.push_back(StdRow{std::move(t), src.rel, b});
    }
    for (const auto& [col, bound] : upper_rows) {
        Vec t(S, 0.0);
        t[col] = 1.0;
        rows.push_back(StdRow{std::move(t), Relation::LessEq, bound});
    }
    double rhs_scale = 1.0;
    for (StdRow& row : rows) {
        if (row.rhs < 0.0) {
            for (double& v : row.coeffs) v = -v;
            row.rhs = -row.rhs;
            if (row.rel == Relation::LessEq) row.rel = Relation::GreaterEq;
            else if (row.rel == Relation::GreaterEq) row.rel = Relation::LessEq;
        }
        rhs_scale = std::max(rhs_scale, row.rhs);
    }

    // Column layout: structural | slack+surplus | artificial.
    int n_aux = 0, n_art = 0;
    for (const StdRow& row : rows) {
        if (row.rel != Relation::Equal) ++n_aux;
        if (row.rel != Relation::LessEq) ++n_art;
    }
    const int first_art = S + n_aux;
    const int C = first_art + n_art;

    int R = static_cast<int>(rows.size());
    std::vector<Vec> T(R, Vec(C + 1, 0.0));
    std::vector<int> basis(R, -1);
    int aux_at = S, art_at = first_art;
    for (int i = 0; i < R; ++i) {
        std::copy(rows[i].coeffs.begin(), rows[i].coeffs.end(), T[i].begin());
        T[i][C] = rows[i].rhs;
        switch (rows[i].rel) {
            case Relation::LessEq:
                T[i][aux_at] = 1.0;
                basis[i] = aux_at++;
                break;
            case Relation::GreaterEq:
                T[i][aux_at++] = -1.0;
                T[i][art_at] = 1.0;
                basis[i] = art_at++;
                break;
            case Relation::Equal:
                T[i][art_at] = 1.0;
                basis[i] = art_at++;
                break;
        }
    }

    const bool want_phase2 = lp.sense() != Sense::FeasibilityOnly;
    Vec c2(C, 0.0);
    if (want_phase2) {
        const double sense_sign = lp.sense() == Sense::Maximize ? -1.0 : 1.0;
        const Vec& obj = lp.objective();
        for (int j = 0; j < n; ++j) {
            const double cj = sense_sign * obj[j];
            if (cj == 0.0) continue;
            const VarMap& m = vmap[j];
            if (m.kind == VarMap::Negated) {
                c2[m.col] -= cj;
            } else {
                c2[m.col] += cj;
                if (m.kind == VarMap::Split) c2[m.neg_col] -= cj;
            }
        }
    }

    // Reduced-cost rows, maintained through every pivot. r1 prices the sum of
    // artificials, r2 the phase-2 objective; the last entry carries the
    // negated objective value of the current basis.
    Vec r1(C + 1, 0.0), r2(C + 1, 0.0);
    for (int k = first_art; k < C; ++k) r1[k] = 1.0;
    for (int i = 0; i < R; ++i) {
        if (basis[i] < first_art) continue;
        for (int j = 0; j <= C; ++j) r1[j] -= T[i][j];
    }
    std::copy(c2.begin(), c2.end(), r2.begin());

    std::vector<char> banned(C, 0);
    int iterations = 0;
    const int iter_cap = opt.max_iterations > 0 ? opt.max_iterations : 2000 + 200 * (R + C);

    auto pivot = [&](int r, int c) {
        Vec& prow = T[r];
        const double piv = prow[c];
        for (int j = 0; j <= C; ++j) prow[j] /= piv;
        prow[c] = 1.0;
        for (int i = 0; i < R; ++i) {
            if (i == r) continue;
            Vec& row = T[i];
            const double f = row[c];
            if (f == 0.0) continue;
            for (int j = 0; j <= C; ++j) row[j] -= f * prow[j];
            row[c] = 0.0;
            if (row[C] < 0.0 && row[C] > -1e-11) row[C] = 0.0;
        }
        for (Vec* red : {&r1, &r2}) {
            const double f = (*red)[c];
            if (f == 0.0) continue;
            for (int j = 0; j <= C; ++j) (*red)[j] -= f * prow[j];
            (*red)[c] = 0.0;
        }
        // Artificials never re-enter once they leave the basis.
        if (basis[r] >= first_art) banned[basis[r]] = 1;
        basis[r] = c;
        ++iterations;
    };

    enum class PhaseResult { Optimal, Unbounded };
    auto run_phase = [&](Vec& red, bool phase1) -> PhaseResult {
        const int bland_after = 5 * (R + C);
        int phase_pivots = 0;
        while (true) {
            if (iterations >= iter_cap)
                throw IterationLimit("IterationLimit: simplex exceeded " +
                                     std::to_string(iter_cap) + " pivots");
            // Dantzig pricing at first, Bland's rule once stalling is likely.
            const bool bland = phase_pivots >= bland_after;
            int enter = -1;
            double best = -opt.tol;
            for (int j = 0; j < C; ++j) {
                if (banned[j]) continue;
                if (!phase1 && j >= first_art) continue;
                if (red[j] < best) {
                    best = red[j];
                    enter = j;
                    if (bland) break;
                }
            }
            if (enter < 0) return PhaseResult::Optimal;

            int leave = -1;
            double best_ratio = kInf;
            for (int i = 0; i < R; ++i) {
                const double a = T[i][enter];
                if (a <= opt.pivot_tol) continue;
                const double ratio = T[i][C] / a;
                if (ratio < best_ratio - 1e-12) {
                    best_ratio = ratio;
                    leave = i;
                } else if (leave >= 0 && ratio < best_ratio + 1e-12) {
                    if (bland) {
                        if (basis[i] < basis[leave]) leave = i;
                    } else {
                        // Prefer to drive artificials out, then lowest index.
                        const bool cand_art = basis[i] >= first_art;
                        const bool cur_art = basis[leave] >= first_art;
                        if (cand_art != cur_art ? cand_art : basis[i] < basis[leave]) leave = i;
                    }
                }
            }
            if (leave < 0) {
                if (phase1) {
                    // The phase-1 objective is bounded below by zero, so this
                    // column is numerically unusable rather than improving.
                    banned[enter] = 1;
                    continue;
                }
                return PhaseResult::Unbounded;
            }
            pivot(leave, enter);
            ++phase_pivots;
        }
    };

    if (n_art > 0) {
        run_phase(r1, /*phase1=*/true);
        const double phase1_obj = -r1[C];
        if (phase1_obj > opt.tol * rhs_scale) return {LpStatus::Infeasible, {}, 0.0, iterations};

        if (want_phase2) {
            // Drive leftover artificials out of the basis; rows that offer no
            // pivot are linearly dependent and can be dropped.
            for (int i = 0; i < R;) {
                if (basis[i] < first_art) {
                    ++i;
                    continue;
                }
                int enter = -1;
                for (int j = 0; j < first_art; ++j) {
                    if (!banned[j] && std::abs(T[i][j]) > opt.pivot_tol) {
                        enter = j;
                        break;
                    }
                }
                if (enter >= 0) {
                    pivot(i, enter);
                    ++i;
                } else {
                    std::swap(T[i], T[R - 1]);
                    std::swap(basis[i], basis[R - 1]);
                    T.pop_back();
                    basis.pop_back();
                    --R;
                }
            }
        }
    }

    if (want_phase2) {
        if (run_phase(r2, /*phase1=*/false) == PhaseResult::Unbounded)
            return {LpStatus::Unbounded, {}, 0.0, iterations};
    }

    Vec xstd(C, 0.0);
    for (int i = 0; i < R; ++i) xstd[basis[i]] = std::max(T[i][C], 0.0);
    Vec x(n, 0.0);
    for (int j = 0; j < n; ++j) {
        const VarMap& m = vmap[j];
        switch (m.kind) {
            case VarMap::Shifted: x[j] = m.lo + xstd[m.col]; break;
            case VarMap::Negated: x[j] = m.hi - xstd[m.col]; break;
            case VarMap::Split: x[j] = xstd[m.col] - xstd[m.neg_col]; break;
        }
    }
    const double objective_value = want_phase2 ? dot(lp.objective(), x) : 0.0;
    return {LpStatus::Optimal, std::move(x), objective_value, iterations};
}

bool check_feasible(const LinearProgram& lp, const SimplexOptions& opt) {
    LinearProgram probe = lp;
    probe.set_sense(Sense::FeasibilityOnly);
    return solve(probe, opt).status == LpStatus::Optimal;
}

}  // namespace hilbertsep
