#include "rce/equivalence.hpp"

#include <map>
#include <tuple>

#include "rce/linalg.hpp"

namespace rce {

namespace {

// Unknown graded map of a fixed shift with one variable per matrix entry.
struct UnknownMap {
    ComplexPtr src, tgt;
    int shift;
    std::map<std::tuple<int, int, int>, int> var;  // (deg, row, col)

    void allocate(LinearSystem& sys, int lo, int hi) {
        for (int m = lo; m <= hi; ++m)
            for (int i = 0; i < tgt->dim(m + shift); ++i)
                for (int j = 0; j < src->dim(m); ++j) var[{m, i, j}] = sys.new_var();
    }
    int at(int m, int i, int j) const { return var.at({m, i, j}); }

    GradedMap extract(const QVec& sol) const {
        GradedMap g = GradedMap::zero(src, tgt, shift);
        std::map<int, std::vector<Triplet<Rational>>> trips;
        for (const auto& [key, v] : var) {
            auto [m, i, j] = key;
            Rational val = sol[v];
            if (!val.is_zero()) trips[m].push_back({i, j, val});
        }
        for (auto& [m, t] : trips)
            g.set_component(m, QMat::from_triplets(tgt->dim(m + shift), src->dim(m), std::move(t)));
        return g;
    }
};

// Accumulates coefficient rows for equations of the form
//   sum_terms post * U * pre = rhs   (componentwise at degree m)
struct EqBuilder {
    LinearSystem& sys;
    int rows, cols;  // shape of the equation component
    // coefficient matrix under construction: list of (i, j) -> terms added via add()
    std::vector<std::vector<std::pair<int, Rational>>> coeff;  // [i*cols+j] -> (var, c)
    std::vector<Rational> rhs;

    EqBuilder(LinearSystem& s, int r, int c)
        : sys(s), rows(r), cols(c), coeff(static_cast<size_t>(r) * c), rhs(static_cast<size_t>(r) * c) {}

    // contribution  scale * post * U_m * pre  where post: (rows x a), U_m: (a x b), pre: (b x cols)
    void add(const Rational& scale, const QMat& post, const UnknownMap& u, int m, const QMat& pre) {
        if (scale.is_zero()) return;
        for (const auto& ep : post.triplets())
            for (const auto& eq : pre.triplets()) {
                // entry (ep.r, eq.c) receives scale*ep.v*eq.v * U[ep.c, eq.r]
                Rational c = scale * ep.v * eq.v;
                coeff[static_cast<size_t>(ep.r) * cols + eq.c].push_back({u.at(m, ep.c, eq.r), c});
            }
    }
    void add_rhs(const QMat& m, const Rational& scale) {
        for (const auto& e : m.triplets()) rhs[static_cast<size_t>(e.r) * cols + e.c] += e.v * scale;
    }
    void finish() {
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                size_t k = static_cast<size_t>(i) * cols + j;
                for (const auto& [v, c] : coeff[k]) sys.add_term(c, v);
                sys.end_equation(rhs[k]);
            }
    }
};

struct DegRange {
    int lo, hi;
};
DegRange joint_range(const ComplexPtr& a, const ComplexPtr& b) {
    int lo = std::min(a->lo(), b->lo()) - 2;
    int hi = std::max(a->hi(), b->hi()) + 2;
    return {lo, hi};
}

}  // namespace

EquivalenceData identity_equivalence(const ComplexPtr& c) {
    EquivalenceData e;
    e.f = GradedMap::identity(c);
    e.f_inv = GradedMap::identity(c);
    e.lambda = GradedMap::zero(c, c, 1);
    e.gamma = GradedMap::zero(c, c, 1);
    e.xi = GradedMap::zero(c, c, 2);
    return e;
}

EquivalenceData build_equivalence(const ChainMap& f) {
    require_chain_map(f, "build_equivalence");
    const ComplexPtr v = f.src;
    const ComplexPtr w = f.tgt;

    // Exact identity maps get the pinned all-zero data.
    {
        bool is_id = v->degrees() == w->degrees();
        if (is_id)
            for (int m : v->degrees())
                if (v->dim(m) != w->dim(m) || f.component(m) != QMat::identity(v->dim(m)))
                    is_id = false;
        if (is_id) return identity_equivalence(v);
    }

    auto [lo, hi] = joint_range(v, w);

    // Stage 1: joint solve for (f_inv, lambda):
    //   d^V f_inv - f_inv d^W = 0,   f f_inv - id = d^W lambda + lambda d^W.
    LinearSystem s1;
    UnknownMap ufi{w, v, 0, {}};
    UnknownMap ula{w, w, 1, {}};
    ufi.allocate(s1, lo, hi);
    ula.allocate(s1, lo, hi);
    for (int m = lo; m <= hi; ++m) {
        {
            EqBuilder eq(s1, v->dim(m - 1), w->dim(m));
            eq.add(Rational(1), v->diff(m), ufi, m, QMat::identity(w->dim(m)));
            eq.add(Rational(-1), QMat::identity(v->dim(m - 1)), ufi, m - 1, w->diff(m));
            eq.finish();
        }
        {
            EqBuilder eq(s1, w->dim(m), w->dim(m));
            QMat idm = QMat::identity(w->dim(m));
            eq.add(Rational(-1), w->diff(m + 1), ula, m, idm);
            eq.add(Rational(-1), QMat::identity(w->dim(m)), ula, m - 1, w->diff(m));
            // + f f_inv  = id  (move d lambda to the left)
            eq.add(Rational(1), f.component(m), ufi, m, idm);
            eq.add_rhs(idm, Rational(1));
            eq.finish();
        }
    }
    auto sol1 = s1.solve_system();
    if (!sol1) throw NotQuasiIso();
    EquivalenceData e;
    e.f = f;
    e.f_inv = ufi.extract(*sol1);
    e.lambda = ula.extract(*sol1);

    // Stage 2: with (f, f_inv, lambda) fixed, joint solve for (gamma, xi):
    //   f_inv f - id = d^V gamma + gamma d^V,
    //   f gamma - lambda f = d^W xi - xi d^V.
    auto solve_stage2 = [&](bool refit_lambda) -> bool {
        LinearSystem s2;
        UnknownMap uga{v, v, 1, {}};
        UnknownMap uxi{v, w, 2, {}};
        UnknownMap ula2{w, w, 1, {}};
        uga.allocate(s2, lo, hi);
        uxi.allocate(s2, lo, hi);
        if (refit_lambda) ula2.allocate(s2, lo, hi);
        GradedMap fif = compose(e.f_inv, f);
        GradedMap ffi = compose(f, e.f_inv);
        for (int m = lo; m <= hi; ++m) {
            if (refit_lambda) {
                EqBuilder eq(s2, w->dim(m), w->dim(m));
                QMat idm = QMat::identity(w->dim(m));
                eq.add(Rational(1), w->diff(m + 1), ula2, m, idm);
                eq.add(Rational(1), QMat::identity(w->dim(m)), ula2, m - 1, w->diff(m));
                eq.add_rhs(ffi.component(m) - idm, Rational(1));
                eq.finish();
            }
            {
                EqBuilder eq(s2, v->dim(m), v->dim(m));
                QMat idm = QMat::identity(v->dim(m));
                eq.add(Rational(1), v->diff(m + 1), uga, m, idm);
                eq.add(Rational(1), QMat::identity(v->dim(m)), uga, m - 1, v->diff(m));
                eq.add_rhs(fif.component(m) - idm, Rational(1));
                eq.finish();
            }
            {
                EqBuilder eq(s2, w->dim(m + 1), v->dim(m));
                QMat idv = QMat::identity(v->dim(m));
                eq.add(Rational(1), w->diff(m + 2), uxi, m, idv);
                eq.add(Rational(-1), QMat::identity(w->dim(m + 1)), uxi, m - 1, v->diff(m));
                eq.add(Rational(-1), f.component(m + 1), uga, m, idv);
                if (refit_lambda)
                    eq.add(Rational(1), QMat::identity(w->dim(m + 1)), ula2, m, f.component(m));
                else
                    eq.add_rhs(compose(e.lambda, f).component(m), Rational(-1));
                eq.finish();
            }
        }
        auto sol2 = s2.solve_system();
        if (!sol2) return false;
        e.gamma = uga.extract(*sol2);
        e.xi = uxi.extract(*sol2);
        if (refit_lambda) e.lambda = ula2.extract(*sol2);
        return true;
    };

    if (!solve_stage2(false)) {
        // fallback: re-solve with lambda free alongside (gamma, xi)
        if (!solve_stage2(true)) throw NotQuasiIso();
        e.second_stage_refit = true;
    }
    return e;
}

bool verify_equivalence(const EquivalenceData& e) {
    if (!is_chain_map(e.f) || !is_chain_map(e.f_inv)) return false;
    GradedMap a = compose(e.f, e.f_inv) - GradedMap::identity(e.f.tgt) - hom_boundary(e.lambda);
    GradedMap b = compose(e.f_inv, e.f) - GradedMap::identity(e.f.src) - hom_boundary(e.gamma);
    GradedMap c = compose(e.f, e.gamma) - compose(e.lambda, e.f) - hom_boundary(e.xi);
    return a.is_zero() && b.is_zero() && c.is_zero();
}

}  // namespace rce
