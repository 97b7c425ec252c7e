#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rce/sparse.hpp"

namespace rce {

// Row echelon engine with deterministic lowest-index pivoting: columns are
// scanned left to right, the pivot is the lowest-index remaining row with a
// unit coefficient. Row operations are mirrored on a transform matrix so the
// factorization can be reused for many right-hand sides.
template <class S>
class Echelon {
    using Row = std::vector<std::pair<int, S>>;  // sorted by column

  public:
    explicit Echelon(const SparseMat<S>& m) : nrows_(m.rows()), ncols_(m.cols()) {
        rows_.assign(nrows_, {});
        tr_.assign(nrows_, {});
        for (const auto& e : m.triplets()) rows_[e.r].push_back({e.c, e.v});
        for (int r = 0; r < nrows_; ++r) tr_[r].push_back({r, scalar_traits<S>::one()});
        pivot_row_of_col_.assign(ncols_, -1);
        row_is_pivot_.assign(nrows_, false);

        for (int c = 0; c < ncols_; ++c) {
            int pr = -1;
            bool any_nonzero = false;
            for (int r = 0; r < nrows_; ++r) {
                if (row_is_pivot_[r]) continue;
                const S* v = coeff(rows_[r], c);
                if (!v) continue;
                any_nonzero = true;
                if (scalar_traits<S>::is_unit(*v)) { pr = r; break; }
            }
            if (pr < 0) {
                if (any_nonzero) stuck_ = true;  // only non-unit entries (dual ring)
                continue;
            }
            const S piv = *coeff(rows_[pr], c);
            scale_row(pr, scalar_traits<S>::inv(piv));
            for (int r = 0; r < nrows_; ++r) {
                if (r == pr) continue;
                const S* v = coeff(rows_[r], c);
                if (!v) continue;
                axpy_row(r, pr, -*v);
            }
            pivot_row_of_col_[c] = pr;
            row_is_pivot_[pr] = true;
            pivots_.push_back({pr, c});
        }
    }

    int rank() const { return static_cast<int>(pivots_.size()); }
    bool column_stuck() const { return stuck_; }
    int cols() const { return ncols_; }

    // Particular solution with all free variables set to zero.
    std::optional<Vec<S>> solve(const Vec<S>& b) const {
        if (static_cast<int>(b.size()) != nrows_)
            throw std::invalid_argument("Echelon::solve: rhs size mismatch");
        if (stuck_) throw std::domain_error("Echelon::solve: non-unit pivot column");
        Vec<S> tb(nrows_, scalar_traits<S>::zero());
        for (int r = 0; r < nrows_; ++r)
            for (const auto& [c, v] : tr_[r]) tb[r] += v * b[c];
        for (int r = 0; r < nrows_; ++r) {
            if (!row_is_pivot_[r] && !(tb[r] == scalar_traits<S>::zero()) && rows_[r].empty())
                return std::nullopt;
            if (!row_is_pivot_[r] && !rows_[r].empty())
                throw std::domain_error("Echelon::solve: unreduced residual row");
        }
        Vec<S> x(ncols_, scalar_traits<S>::zero());
        for (const auto& [r, c] : pivots_) {
            // row r = unit at c plus entries at free columns; free vars are zero
            x[c] = tb[r];
        }
        return x;
    }

    std::vector<Vec<S>> kernel_basis() const {
        if (stuck_) throw std::domain_error("Echelon::kernel_basis: non-unit pivot column");
        std::vector<Vec<S>> out;
        for (int f = 0; f < ncols_; ++f) {
            if (pivot_row_of_col_[f] >= 0) continue;
            Vec<S> x(ncols_, scalar_traits<S>::zero());
            x[f] = scalar_traits<S>::one();
            for (const auto& [r, c] : pivots_) {
                const S* v = coeff(rows_[r], f);
                if (v) x[c] = -*v;
            }
            out.push_back(std::move(x));
        }
        return out;
    }

  private:
    static const S* coeff(const Row& row, int c) {
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const std::pair<int, S>& e, int k) { return e.first < k; });
        if (it != row.end() && it->first == c) return &it->second;
        return nullptr;
    }

    static Row row_axpy(const Row& a, const Row& b, const S& s) {
        // a + s*b
        Row out;
        out.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j >= b.size() || (i < a.size() && a[i].first < b[j].first)) {
                out.push_back(a[i++]);
            } else if (i >= a.size() || b[j].first < a[i].first) {
                S v = s * b[j].second;
                if (!(v == scalar_traits<S>::zero())) out.push_back({b[j].first, std::move(v)});
                ++j;
            } else {
                S v = a[i].second + s * b[j].second;
                if (!(v == scalar_traits<S>::zero())) out.push_back({a[i].first, std::move(v)});
                ++i;
                ++j;
            }
        }
        return out;
    }

    void scale_row(int r, const S& s) {
        for (auto& [c, v] : rows_[r]) v = v * s;
        for (auto& [c, v] : tr_[r]) v = v * s;
    }
    void axpy_row(int r, int src, const S& s) {
        rows_[r] = row_axpy(rows_[r], rows_[src], s);
        tr_[r] = row_axpy(tr_[r], tr_[src], s);
    }

    int nrows_, ncols_;
    std::vector<Row> rows_, tr_;
    std::vector<int> pivot_row_of_col_;
    std::vector<bool> row_is_pivot_;
    std::vector<std::pair<int, int>> pivots_;  // (row, col) in pivot order
    bool stuck_ = false;
};

inline int rank(const QMat& m) { return Echelon<Rational>(m).rank(); }

inline std::optional<QVec> solve(const QMat& m, const QVec& b) {
    return Echelon<Rational>(m).solve(b);
}

inline std::vector<QVec> kernel_basis(const QMat& m) {
    return Echelon<Rational>(m).kernel_basis();
}

struct BaseSingular : std::domain_error {
    BaseSingular() : std::domain_error("dual_solve: base singular") {}
};

// Exact solve over Q[eps]/(eps^2) via the stacked rational system
// [[A0,0],[A1,A0]] [x0;x1] = [b0;b1].
inline std::optional<Vec<Dual>> dual_solve(const SparseMat<Dual>& m, const Vec<Dual>& b) {
    const int R = m.rows(), C = m.cols();
    if (static_cast<int>(b.size()) != R) throw std::invalid_argument("dual_solve: rhs size mismatch");
    std::vector<Triplet<Rational>> joint, base;
    for (const auto& e : m.triplets()) {
        if (!e.v.a.is_zero()) {
            joint.push_back({e.r, e.c, e.v.a});
            joint.push_back({R + e.r, C + e.c, e.v.a});
            base.push_back({e.r, e.c, e.v.a});
        }
        if (!e.v.b.is_zero()) joint.push_back({R + e.r, e.c, e.v.b});
    }
    QVec rhs(2 * R, Rational(0)), rhs0(R, Rational(0));
    for (int i = 0; i < R; ++i) {
        rhs[i] = b[i].a;
        rhs[R + i] = b[i].b;
        rhs0[i] = b[i].a;
    }
    auto sol = solve(QMat::from_triplets(2 * R, 2 * C, std::move(joint)), rhs);
    if (!sol) {
        if (!solve(QMat::from_triplets(R, C, std::move(base)), rhs0)) throw BaseSingular();
        return std::nullopt;
    }
    Vec<Dual> x(C);
    for (int i = 0; i < C; ++i) x[i] = Dual((*sol)[i], (*sol)[C + i]);
    return x;
}

// Incremental sparse affine system A x = rhs over named variables; used for the
// homotopy-witness and coherence-data solves.
class LinearSystem {
  public:
    int new_var() { return nvars_++; }
    void add_term(const Rational& coef, int var) {
        if (!coef.is_zero()) cur_.push_back({var, coef});
    }
    void end_equation(const Rational& rhs) {
        for (auto& [v, c] : cur_) trips_.push_back({neq_, v, c});
        rhs_.push_back(rhs);
        cur_.clear();
        ++neq_;
    }

    int num_vars() const { return nvars_; }
    int num_eqs() const { return neq_; }

    // Lowest-index particular solution, or nullopt if inconsistent.
    std::optional<QVec> solve_system() const {
        QMat a = QMat::from_triplets(neq_, nvars_, trips_);
        return solve(a, rhs_);
    }

  private:
    int nvars_ = 0;
    int neq_ = 0;
    std::vector<std::pair<int, Rational>> cur_;
    std::vector<Triplet<Rational>> trips_;
    QVec rhs_;
};

}  // namespace rce
