#pragma once

#include "ordref/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ordref {

// Dense dictionary simplex for   max c'z  s.t.  A z <= b,  z >= 0.
// Bland's rule throughout, Chvatal's auxiliary variable for phase 1.
// Exact for any field Scalar; intended for Rational.
template <typename Scalar>
class DictionarySimplex {
public:
    enum class Status { Optimal, Infeasible, Unbounded };

    DictionarySimplex(const Matrix<Scalar>& A, const Vector<Scalar>& b, const Vector<Scalar>& c)
        : m_(A.rows()), n_(A.cols()), c_(c) {
        // Dictionary rows: x_B[i] + sum_j D(i,j) x_N[j] = D(i, last).
        // Objective row m_: z + sum_j D(m_,j) x_N[j] = D(m_, last).
        D_ = Matrix<Scalar>::Zero(m_ + 1, n_ + 2);
        D_.topLeftCorner(m_, n_) = A;
        D_.block(0, n_ + 1, m_, 1) = b;
        for (Eigen::Index i = 0; i < m_; ++i) {
            D_(i, n_) = Scalar(-1);  // auxiliary x0, removed after phase 1
            basic_.push_back(n_ + i);
        }
        for (Eigen::Index j = 0; j < n_; ++j) nonbasic_.push_back(j);
        nonbasic_.push_back(n_ + m_);
    }

    Status solve() {
        const Eigen::Index rhs = n_ + 1;
        Eigen::Index worst = -1;
        for (Eigen::Index i = 0; i < m_; ++i)
            if (D_(i, rhs) < 0 && (worst < 0 || D_(i, rhs) < D_(worst, rhs))) worst = i;

        if (worst >= 0) {
            // phase 1: max -x0
            D_.row(m_).setZero();
            D_(m_, n_) = Scalar(1);
            pivot(worst, n_);
            if (run() != Status::Optimal) return status_ = Status::Infeasible;
            if (D_(m_, rhs) < 0) return status_ = Status::Infeasible;
            // drive x0 out of the basis if it stayed at level zero
            for (Eigen::Index i = 0; i < m_; ++i) {
                if (basic_[i] != aux()) continue;
                for (Eigen::Index j = 0; j <= n_; ++j)
                    if (nonbasic_[j] != aux() && D_(i, j) != 0) {
                        pivot(i, j);
                        break;
                    }
            }
        }
        // retire the auxiliary column
        for (Eigen::Index j = 0; j <= n_; ++j)
            if (nonbasic_[j] == aux()) {
                D_.col(j).setZero();
                retired_ = j;
            }
        install_objective();
        return status_ = run();
    }

    Status status() const { return status_; }
    Scalar objective() const { return D_(m_, n_ + 1); }

    Vector<Scalar> solution() const {
        Vector<Scalar> z = Vector<Scalar>::Zero(n_);
        for (Eigen::Index i = 0; i < m_; ++i)
            if (basic_[i] < n_) z(basic_[i]) = D_(i, n_ + 1);
        return z;
    }

private:
    Eigen::Index aux() const { return n_ + m_; }

    void install_objective() {
        const Eigen::Index rhs = n_ + 1;
        D_.row(m_).setZero();
        for (Eigen::Index j = 0; j <= n_; ++j)
            if (j != retired_ && nonbasic_[j] < n_) D_(m_, j) = -c_(nonbasic_[j]);
        for (Eigen::Index i = 0; i < m_; ++i) {
            if (basic_[i] >= n_) continue;
            const Scalar& cb = c_(basic_[i]);
            if (cb == 0) continue;
            for (Eigen::Index j = 0; j <= n_; ++j)
                if (j != retired_) D_(m_, j) += cb * D_(i, j);
            D_(m_, rhs) += cb * D_(i, rhs);
        }
    }

    Status run() {
        const Eigen::Index rhs = n_ + 1;
        for (;;) {
            Eigen::Index enter = -1;
            for (Eigen::Index j = 0; j <= n_; ++j) {
                if (j == retired_ || D_(m_, j) >= 0) continue;
                if (enter < 0 || nonbasic_[j] < nonbasic_[enter]) enter = j;
            }
            if (enter < 0) return Status::Optimal;
            Eigen::Index leave = -1;
            Scalar best;
            for (Eigen::Index i = 0; i < m_; ++i) {
                if (D_(i, enter) <= 0) continue;
                Scalar ratio = D_(i, rhs) / D_(i, enter);
                if (leave < 0 || ratio < best || (ratio == best && basic_[i] < basic_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return Status::Unbounded;
            pivot(leave, enter);
        }
    }

    void pivot(Eigen::Index l, Eigen::Index e) {
        const Scalar p = D_(l, e);
        Vector<Scalar> prow = D_.row(l).transpose() / p;
        prow(e) = Scalar(1) / p;
        for (Eigen::Index i = 0; i <= m_; ++i) {
            if (i == l) continue;
            const Scalar f = D_(i, e);
            if (f == 0) continue;
            D_.row(i) -= f * prow.transpose();
            D_(i, e) = -f / p;
        }
        D_.row(l) = prow.transpose();
        std::swap(basic_[l], nonbasic_[e]);
    }

    Eigen::Index m_, n_;
    Vector<Scalar> c_;
    Matrix<Scalar> D_;
    std::vector<Eigen::Index> basic_, nonbasic_;
    Eigen::Index retired_ = -1;
    Status status_ = Status::Infeasible;
};

enum class Relation { GE, GT, EQ, LE, LT };

std::string to_string(Relation r);

struct Constraint {
    std::vector<std::pair<std::size_t, Rational>> terms;
    Relation rel;
    Rational rhs;
    std::string label;
};

class LinearFeasibilityProblem {
public:
    std::size_t add_variable(std::string name);
    std::size_t num_variables() const { return names_.size(); }
    const std::string& name(std::size_t v) const { return names_[v]; }

    void add(std::vector<std::pair<std::size_t, Rational>> terms, Relation rel, Rational rhs,
             std::string label = {});
    const std::vector<Constraint>& constraints() const { return constraints_; }

private:
    std::vector<std::string> names_;
    std::vector<Constraint> constraints_;
};

struct FeasibilityResult {
    bool feasible = false;
    std::vector<Rational> assignment;  // meaningful only when feasible
    Rational gap;                      // optimal strictness gap (clamped at 1)
};

FeasibilityResult solve_linear_feasibility(const LinearFeasibilityProblem& problem);

// Exact re-substitution check.
bool satisfies(const LinearFeasibilityProblem& problem, const std::vector<Rational>& x);

}  // namespace ordref
