#include "ordref/lp.hpp"

namespace ordref {

std::string to_string(Relation r) {
    switch (r) {
        case Relation::GE: return ">=";
        case Relation::GT: return ">";
        case Relation::EQ: return "=";
        case Relation::LE: return "<=";
        case Relation::LT: return "<";
    }
    return "?";
}

std::size_t LinearFeasibilityProblem::add_variable(std::string name) {
    names_.push_back(std::move(name));
    return names_.size() - 1;
}

void LinearFeasibilityProblem::add(std::vector<std::pair<std::size_t, Rational>> terms, Relation rel,
                                   Rational rhs, std::string label) {
    for (const auto& t : terms)
        if (t.first >= names_.size()) throw std::out_of_range("constraint refers to an unknown variable");
    constraints_.push_back({std::move(terms), rel, std::move(rhs), std::move(label)});
}

FeasibilityResult solve_linear_feasibility(const LinearFeasibilityProblem& problem) {
    const auto n = static_cast<Eigen::Index>(problem.num_variables());
    bool strict = false;
    Eigen::Index rows = 0;
    for (const auto& c : problem.constraints()) {
        strict = strict || c.rel == Relation::GT || c.rel == Relation::LT;
        rows += c.rel == Relation::EQ ? 2 : 1;
    }
    if (strict) ++rows;  // g <= 1

    // columns: x+ (n), x- (n), g
    const Eigen::Index cols = 2 * n + (strict ? 1 : 0);
    const Eigen::Index g = 2 * n;
    MatrixQ A = MatrixQ::Zero(rows, cols);
    VectorQ b = VectorQ::Zero(rows);
    VectorQ c = VectorQ::Zero(cols);
    if (strict) c(g) = 1;

    Eigen::Index r = 0;
    auto emit = [&](const Constraint& con, const Rational& sign, bool with_gap) {
        // sign * (a.x) + [g] <= sign * rhs
        for (const auto& [v, coef] : con.terms) {
            auto j = static_cast<Eigen::Index>(v);
            A(r, j) += sign * coef;
            A(r, n + j) -= sign * coef;
        }
        if (with_gap) A(r, g) = 1;
        b(r) = sign * con.rhs;
        ++r;
    };
    for (const auto& con : problem.constraints()) {
        switch (con.rel) {
            case Relation::LE: emit(con, 1, false); break;
            case Relation::LT: emit(con, 1, true); break;
            case Relation::GE: emit(con, -1, false); break;
            case Relation::GT: emit(con, -1, true); break;
            case Relation::EQ:
                emit(con, 1, false);
                emit(con, -1, false);
                break;
        }
    }
    if (strict) {
        A(r, g) = 1;
        b(r) = 1;
    }

    DictionarySimplex<Rational> lp(A, b, c);
    FeasibilityResult out;
    if (lp.solve() != DictionarySimplex<Rational>::Status::Optimal) return out;
    VectorQ z = lp.solution();
    out.gap = strict ? z(g) : Rational(1);
    if (strict && out.gap <= 0) return out;
    out.feasible = true;
    out.assignment.resize(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) out.assignment[static_cast<std::size_t>(j)] = z(j) - z(n + j);
    return out;
}

bool satisfies(const LinearFeasibilityProblem& problem, const std::vector<Rational>& x) {
    if (x.size() != problem.num_variables()) return false;
    for (const auto& con : problem.constraints()) {
        Rational lhs = 0;
        for (const auto& [v, coef] : con.terms) lhs += coef * x[v];
        bool ok = false;
        switch (con.rel) {
            case Relation::GE: ok = lhs >= con.rhs; break;
            case Relation::GT: ok = lhs > con.rhs; break;
            case Relation::EQ: ok = lhs == con.rhs; break;
            case Relation::LE: ok = lhs <= con.rhs; break;
            case Relation::LT: ok = lhs < con.rhs; break;
        }
        if (!ok) return false;
    }
    return true;
}

}  // namespace ordref
