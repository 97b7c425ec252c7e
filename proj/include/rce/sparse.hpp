#pragma once

#include <algorithm>
#include <cassert>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "rce/dual.hpp"
#include "rce/rational.hpp"

namespace rce {

template <class S>
struct Triplet {
    int r = 0;
    int c = 0;
    S v{};
};

template <class S>
using Vec = std::vector<S>;

// Sparse matrix in canonical triplet form: sorted by (row, col), no duplicates,
// no explicit zeros. Dimensions may be zero.
template <class S>
class SparseMat {
  public:
    SparseMat() = default;
    SparseMat(int rows, int cols) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("SparseMat: negative dimension");
    }

    static SparseMat identity(int n) {
        SparseMat m(n, n);
        for (int i = 0; i < n; ++i) m.t_.push_back({i, i, scalar_traits<S>::one()});
        return m;
    }

    static SparseMat from_triplets(int rows, int cols, std::vector<Triplet<S>> t) {
        SparseMat m(rows, cols);
        for (const auto& e : t) {
            if (e.r < 0 || e.r >= rows || e.c < 0 || e.c >= cols)
                throw std::out_of_range("SparseMat: triplet index out of range");
        }
        std::sort(t.begin(), t.end(), [](const Triplet<S>& a, const Triplet<S>& b) {
            return a.r != b.r ? a.r < b.r : a.c < b.c;
        });
        for (auto& e : t) {
            if (!m.t_.empty() && m.t_.back().r == e.r && m.t_.back().c == e.c)
                m.t_.back().v += e.v;
            else
                m.t_.push_back(std::move(e));
        }
        m.prune();
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    // ref-qualified so iterating the triplets of a temporary matrix is safe
    const std::vector<Triplet<S>>& triplets() const& { return t_; }
    std::vector<Triplet<S>> triplets() && { return std::move(t_); }
    int nnz() const { return static_cast<int>(t_.size()); }
    bool is_zero() const { return t_.empty(); }

    void add_at(int r, int c, const S& v) {
        // for incremental builders; call finish() before use
        t_.push_back({r, c, v});
        dirty_ = true;
    }
    void finish() {
        if (!dirty_) return;
        auto t = std::move(t_);
        *this = from_triplets(rows_, cols_, std::move(t));
    }

    S at(int r, int c) const {
        auto it = std::lower_bound(t_.begin(), t_.end(), std::pair<int, int>(r, c),
                                   [](const Triplet<S>& e, const std::pair<int, int>& k) {
                                       return e.r != k.first ? e.r < k.first : e.c < k.second;
                                   });
        if (it != t_.end() && it->r == r && it->c == c) return it->v;
        return scalar_traits<S>::zero();
    }

    Vec<S> apply(const Vec<S>& x) const {
        assert(static_cast<int>(x.size()) == cols_);
        Vec<S> y(rows_, scalar_traits<S>::zero());
        for (const auto& e : t_) y[e.r] += e.v * x[e.c];
        return y;
    }

    SparseMat transpose() const {
        std::vector<Triplet<S>> t;
        t.reserve(t_.size());
        for (const auto& e : t_) t.push_back({e.c, e.r, e.v});
        return from_triplets(cols_, rows_, std::move(t));
    }

    friend SparseMat operator*(const SparseMat& a, const SparseMat& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("SparseMat: product shape mismatch");
        // row-major accumulate: group b by row
        std::vector<std::vector<Triplet<S>>> brows(b.rows_);
        for (const auto& e : b.t_) brows[e.r].push_back(e);
        std::vector<Triplet<S>> out;
        for (const auto& ea : a.t_)
            for (const auto& eb : brows[ea.c]) out.push_back({ea.r, eb.c, ea.v * eb.v});
        return from_triplets(a.rows_, b.cols_, std::move(out));
    }

    friend SparseMat operator+(const SparseMat& a, const SparseMat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("SparseMat: sum shape mismatch");
        std::vector<Triplet<S>> t = a.t_;
        t.insert(t.end(), b.t_.begin(), b.t_.end());
        return from_triplets(a.rows_, a.cols_, std::move(t));
    }

    friend SparseMat operator-(const SparseMat& a, const SparseMat& b) { return a + (b * S(-1)); }

    friend SparseMat operator*(const SparseMat& a, const S& s) {
        SparseMat m(a.rows_, a.cols_);
        if (s == scalar_traits<S>::zero()) return m;
        m.t_ = a.t_;
        for (auto& e : m.t_) e.v = e.v * s;
        return m;
    }
    friend SparseMat operator*(const S& s, const SparseMat& a) { return a * s; }

    friend bool operator==(const SparseMat& a, const SparseMat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.t_.size() != b.t_.size()) return false;
        for (size_t i = 0; i < a.t_.size(); ++i) {
            if (a.t_[i].r != b.t_[i].r || a.t_[i].c != b.t_[i].c || !(a.t_[i].v == b.t_[i].v))
                return false;
        }
        return true;
    }
    friend bool operator!=(const SparseMat& a, const SparseMat& b) { return !(a == b); }

    // Text dump: header "rows cols nnz", then "row col value" sorted by (row, col).
    void dump(std::ostream& os) const {
        os << rows_ << " " << cols_ << " " << t_.size() << "\n";
        for (const auto& e : t_) os << e.r << " " << e.c << " " << scalar_traits<S>::str(e.v) << "\n";
    }

  private:
    void prune() {
        t_.erase(std::remove_if(t_.begin(), t_.end(),
                                [](const Triplet<S>& e) { return e.v == scalar_traits<S>::zero(); }),
                 t_.end());
        dirty_ = false;
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<Triplet<S>> t_;
    bool dirty_ = false;
};

using QMat = SparseMat<Rational>;
using QVec = Vec<Rational>;

inline QVec qvec_zero(int n) { return QVec(n, Rational(0)); }

template <class S>
Vec<S> vec_add(Vec<S> a, const Vec<S>& b) {
    assert(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

template <class S>
Vec<S> vec_scale(Vec<S> a, const S& s) {
    for (auto& x : a) x = x * s;
    return a;
}

template <class S>
bool vec_is_zero(const Vec<S>& a) {
    for (const auto& x : a)
        if (!(x == scalar_traits<S>::zero())) return false;
    return true;
}

}  // namespace rce
