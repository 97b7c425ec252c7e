#include "rce/complex.hpp"

#include <algorithm>
#include <stdexcept>

namespace rce {

namespace {
const std::vector<std::string> kEmptyLabels;
}

ComplexPtr ChainComplex::make(std::map<int, std::vector<std::string>> basis,
                              std::map<int, QMat> diffs) {
    auto c = std::shared_ptr<ChainComplex>(new ChainComplex());
    for (auto it = basis.begin(); it != basis.end();) {
        if (it->second.empty())
            it = basis.erase(it);
        else
            ++it;
    }
    c->basis_ = std::move(basis);
    if (!c->basis_.empty()) {
        c->lo_ = c->basis_.begin()->first;
        c->hi_ = c->basis_.rbegin()->first;
    }
    for (auto& [deg, m] : diffs) {
        if (m.rows() != c->dim(deg - 1) || m.cols() != c->dim(deg))
            throw std::invalid_argument("ChainComplex: differential shape mismatch at degree " +
                                        std::to_string(deg));
        if (!m.is_zero()) c->diff_.emplace(deg, std::move(m));
    }
    for (const auto& [deg, m] : c->diff_) {
        QMat dd = c->diff(deg - 1) * m;
        if (!dd.is_zero())
            throw std::invalid_argument("ChainComplex: d^2 != 0 at degree " + std::to_string(deg));
    }
    return c;
}

ComplexPtr ChainComplex::ground_field(int degree, const std::string& label) {
    return make({{degree, {label}}}, {});
}

const std::vector<std::string>& ChainComplex::labels(int deg) const {
    auto it = basis_.find(deg);
    return it == basis_.end() ? kEmptyLabels : it->second;
}

QMat ChainComplex::diff(int deg) const {
    auto it = diff_.find(deg);
    if (it != diff_.end()) return it->second;
    return QMat(dim(deg - 1), dim(deg));
}

std::vector<int> ChainComplex::degrees() const {
    std::vector<int> ds;
    for (const auto& [d, b] : basis_) ds.push_back(d);
    return ds;
}

int ChainComplex::total_dim() const {
    int n = 0;
    for (const auto& [d, b] : basis_) n += static_cast<int>(b.size());
    return n;
}

GradedMap GradedMap::identity(const ComplexPtr& c) {
    GradedMap f{c, c, 0, {}};
    for (int d : c->degrees()) f.comp.emplace(d, QMat::identity(c->dim(d)));
    return f;
}

QMat GradedMap::component(int m) const {
    auto it = comp.find(m);
    if (it != comp.end()) return it->second;
    return QMat(tgt->dim(m + shift), src->dim(m));
}

void GradedMap::set_component(int m, QMat q) {
    if (q.rows() != tgt->dim(m + shift) || q.cols() != src->dim(m))
        throw std::invalid_argument("GradedMap: component shape mismatch");
    if (q.is_zero())
        comp.erase(m);
    else
        comp[m] = std::move(q);
}

bool GradedMap::is_zero() const {
    for (const auto& [m, q] : comp)
        if (!q.is_zero()) return false;
    return true;
}

GradedMap GradedMap::operator+(const GradedMap& o) const {
    if (shift != o.shift) throw std::invalid_argument("GradedMap: shift mismatch in sum");
    GradedMap r{src, tgt, shift, comp};
    for (const auto& [m, q] : o.comp) {
        auto it = r.comp.find(m);
        if (it == r.comp.end())
            r.comp.emplace(m, q);
        else {
            it->second = it->second + q;
            if (it->second.is_zero()) r.comp.erase(it);
        }
    }
    return r;
}

GradedMap GradedMap::operator-(const GradedMap& o) const { return *this + o * Rational(-1); }

GradedMap GradedMap::operator*(const Rational& s) const {
    GradedMap r{src, tgt, shift, {}};
    if (s.is_zero()) return r;
    for (const auto& [m, q] : comp) r.comp.emplace(m, q * s);
    return r;
}

GradedMap hom_boundary(const GradedMap& k) {
    GradedMap r = GradedMap::zero(k.src, k.tgt, k.shift - 1);
    const Rational sgn(k.shift % 2 == 0 ? 1 : -1);
    int lo = std::min(k.src->lo(), k.tgt->lo() - k.shift + 1) - 1;
    int hi = std::max(k.src->hi(), k.tgt->hi() - k.shift + 1) + 1;
    for (int m = lo; m <= hi; ++m) {
        QMat a = k.tgt->diff(m + k.shift) * k.component(m);
        QMat b = k.component(m - 1) * k.src->diff(m);
        r.set_component(m, a - b * sgn);
    }
    return r;
}

GradedMap compose(const GradedMap& g, const GradedMap& f) {
    GradedMap r = GradedMap::zero(f.src, g.tgt, f.shift + g.shift);
    for (const auto& [m, q] : f.comp) r.set_component(m, g.component(m + f.shift) * q);
    return r;
}

bool is_chain_map(const GradedMap& f) { return f.shift == 0 && hom_boundary(f).is_zero(); }

void require_chain_map(const GradedMap& f, const char* what) {
    if (!is_chain_map(f)) throw std::invalid_argument(std::string(what) + ": not a chain map");
}

std::map<int, int> homology_dims(const ChainComplex& v) {
    std::map<int, int> h;
    std::map<int, int> ranks;
    for (int d = v.lo(); d <= v.hi() + 1; ++d) ranks[d] = rank(v.diff(d));
    for (int d = v.lo(); d <= v.hi(); ++d) {
        int hk = v.dim(d) - ranks[d] - ranks[d + 1];
        if (hk != 0) h[d] = hk;
    }
    return h;
}

ComplexPtr mapping_cone_complex(const GradedMap& f) {
    require_chain_map(f, "mapping_cone");
    const auto& v = *f.src;
    const auto& w = *f.tgt;
    std::map<int, std::vector<std::string>> basis;
    std::map<int, QMat> diffs;
    int lo = std::min(v.lo() + 1, w.lo());
    int hi = std::max(v.hi() + 1, w.hi());
    for (int k = lo; k <= hi; ++k) {
        std::vector<std::string> b;
        for (const auto& l : w.labels(k)) b.push_back("w:" + l);
        for (const auto& l : v.labels(k - 1)) b.push_back("v:" + l);
        if (!b.empty()) basis[k] = std::move(b);
    }
    for (int k = lo; k <= hi; ++k) {
        int rows = w.dim(k - 1) + v.dim(k - 2);
        int cols = w.dim(k) + v.dim(k - 1);
        std::vector<Triplet<Rational>> t;
        for (const auto& e : w.diff(k).triplets()) t.push_back(e);
        for (const auto& e : f.component(k - 1).triplets()) t.push_back({e.r, w.dim(k) + e.c, e.v});
        for (const auto& e : v.diff(k - 1).triplets())
            t.push_back({w.dim(k - 1) + e.r, w.dim(k) + e.c, -e.v});
        diffs[k] = QMat::from_triplets(rows, cols, std::move(t));
    }
    return ChainComplex::make(std::move(basis), std::move(diffs));
}

bool is_quasi_iso(const GradedMap& f) {
    if (f.shift != 0 || !is_chain_map(f)) return false;
    auto cone = mapping_cone_complex(f);
    return homology_dims(*cone).empty();
}

ComplexPtr shift_complex(const ComplexPtr& v, int k) {
    std::map<int, std::vector<std::string>> basis;
    std::map<int, QMat> diffs;
    const Rational sgn(k % 2 == 0 ? 1 : -1);
    for (int d : v->degrees()) basis[d + k] = v->labels(d);
    for (int d = v->lo(); d <= v->hi() + 1; ++d) {
        QMat m = v->diff(d);
        if (!m.is_zero()) diffs[d + k] = m * sgn;
    }
    return ChainComplex::make(std::move(basis), std::move(diffs));
}

GradedMap shift_map(const GradedMap& f, int k) {
    GradedMap r = GradedMap::zero(shift_complex(f.src, k), shift_complex(f.tgt, k), f.shift);
    for (const auto& [m, q] : f.comp) r.set_component(m + k, q);
    return r;
}

SumComplex direct_sum(const ComplexPtr& a, const ComplexPtr& b) {
    std::map<int, std::vector<std::string>> basis;
    std::map<int, QMat> diffs;
    int lo = std::min(a->lo(), b->lo());
    int hi = std::max(a->hi(), b->hi());
    for (int k = lo; k <= hi; ++k) {
        std::vector<std::string> l;
        for (const auto& s : a->labels(k)) l.push_back("l:" + s);
        for (const auto& s : b->labels(k)) l.push_back("r:" + s);
        if (!l.empty()) basis[k] = std::move(l);
    }
    for (int k = lo; k <= hi; ++k) {
        std::vector<Triplet<Rational>> t;
        for (const auto& e : a->diff(k).triplets()) t.push_back(e);
        for (const auto& e : b->diff(k).triplets())
            t.push_back({a->dim(k - 1) + e.r, a->dim(k) + e.c, e.v});
        diffs[k] = QMat::from_triplets(a->dim(k - 1) + b->dim(k - 1), a->dim(k) + b->dim(k),
                                       std::move(t));
    }
    SumComplex s;
    s.cx = ChainComplex::make(std::move(basis), std::move(diffs));
    s.incl_left = GradedMap::zero(a, s.cx, 0);
    s.incl_right = GradedMap::zero(b, s.cx, 0);
    s.proj_left = GradedMap::zero(s.cx, a, 0);
    s.proj_right = GradedMap::zero(s.cx, b, 0);
    for (int k = lo; k <= hi; ++k) {
        std::vector<Triplet<Rational>> il, ir, pl, pr;
        for (int i = 0; i < a->dim(k); ++i) {
            il.push_back({i, i, Rational(1)});
            pl.push_back({i, i, Rational(1)});
        }
        for (int i = 0; i < b->dim(k); ++i) {
            ir.push_back({a->dim(k) + i, i, Rational(1)});
            pr.push_back({i, a->dim(k) + i, Rational(1)});
        }
        int n = a->dim(k) + b->dim(k);
        s.incl_left.set_component(k, QMat::from_triplets(n, a->dim(k), std::move(il)));
        s.incl_right.set_component(k, QMat::from_triplets(n, b->dim(k), std::move(ir)));
        s.proj_left.set_component(k, QMat::from_triplets(a->dim(k), n, std::move(pl)));
        s.proj_right.set_component(k, QMat::from_triplets(b->dim(k), n, std::move(pr)));
    }
    return s;
}

int TensorComplex::index_of(int deg_a, int idx_a, int deg_b, int idx_b) const {
    int m = deg_a + deg_b;
    auto dit = index.find(m);
    if (dit == index.end()) throw std::out_of_range("TensorComplex: empty degree");
    auto it = dit->second.find({deg_a, idx_a, idx_b});
    if (it == dit->second.end()) throw std::out_of_range("TensorComplex: bad factor index");
    return it->second;
}

TensorComplex tensor(const ComplexPtr& a, const ComplexPtr& b) {
    TensorComplex t;
    t.left = a;
    t.right = b;
    if (a->total_dim() == 0 || b->total_dim() == 0) {
        t.cx = ChainComplex::zero();
        return t;
    }
    std::map<int, std::vector<std::string>> basis;
    for (int da = a->lo(); da <= a->hi(); ++da) {
        for (int db = b->lo(); db <= b->hi(); ++db) {
            int m = da + db;
            for (int i = 0; i < a->dim(da); ++i)
                for (int j = 0; j < b->dim(db); ++j) {
                    t.index[m][{da, i, j}] = static_cast<int>(t.factors[m].size());
                    t.factors[m].push_back({da, i, j});
                    basis[m].push_back(a->label(da, i) + "⊗" + b->label(db, j));
                }
        }
    }
    std::map<int, QMat> diffs;
    for (const auto& [m, fac] : t.factors) {
        int rows = t.factors.count(m - 1) ? static_cast<int>(t.factors.at(m - 1).size()) : 0;
        std::vector<Triplet<Rational>> trip;
        for (int col = 0; col < static_cast<int>(fac.size()); ++col) {
            auto [da, i, j] = fac[col];
            int db = m - da;
            for (const auto& e : a->diff(da).triplets()) {
                if (e.c != i) continue;
                trip.push_back({t.index_of(da - 1, e.r, db, j), col, e.v});
            }
            const Rational sgn(da % 2 == 0 ? 1 : -1);
            for (const auto& e : b->diff(db).triplets()) {
                if (e.c != j) continue;
                trip.push_back({t.index_of(da, i, db - 1, e.r), col, e.v * sgn});
            }
        }
        diffs[m] = QMat::from_triplets(rows, static_cast<int>(fac.size()), std::move(trip));
    }
    t.cx = ChainComplex::make(std::move(basis), std::move(diffs));
    return t;
}

ChainMap tensor_map(const TensorComplex& src, const TensorComplex& dst, const GradedMap& f,
                    const GradedMap& g) {
    if (f.shift != 0 || g.shift != 0)
        throw std::invalid_argument("tensor_map: only degree-0 factors supported");
    ChainMap r = GradedMap::zero(src.cx, dst.cx, 0);
    for (const auto& [m, fac] : src.factors) {
        if (!dst.factors.count(m) && !fac.empty()) continue;
        std::vector<Triplet<Rational>> trip;
        for (int col = 0; col < static_cast<int>(fac.size()); ++col) {
            auto [da, i, j] = fac[col];
            int db = m - da;
            for (const auto& ef : f.component(da).triplets()) {
                if (ef.c != i) continue;
                for (const auto& eg : g.component(db).triplets()) {
                    if (eg.c != j) continue;
                    trip.push_back({dst.index_of(da, ef.r, db, eg.r), col, ef.v * eg.v});
                }
            }
        }
        int rows = dst.cx->dim(m);
        r.set_component(m, QMat::from_triplets(rows, static_cast<int>(fac.size()), std::move(trip)));
    }
    return r;
}

ChainMap koszul_braiding(const TensorComplex& vw, const TensorComplex& wv) {
    ChainMap r = GradedMap::zero(vw.cx, wv.cx, 0);
    for (const auto& [m, fac] : vw.factors) {
        std::vector<Triplet<Rational>> trip;
        for (int col = 0; col < static_cast<int>(fac.size()); ++col) {
            auto [da, i, j] = fac[col];
            int db = m - da;
            Rational sgn((da % 2 != 0 && db % 2 != 0) ? -1 : 1);
            trip.push_back({wv.index_of(db, j, da, i), col, sgn});
        }
        r.set_component(m, QMat::from_triplets(wv.cx->dim(m), static_cast<int>(fac.size()),
                                               std::move(trip)));
    }
    return r;
}

WedgeComplex wedge_square(const ComplexPtr& v) {
    WedgeComplex w;
    w.square = tensor(v, v);

    // Canonical representatives: global basis order (degree, index); the pair
    // (x,x) survives only in odd degree.
    struct Rep {
        int da, ia, db, ib;
    };
    std::map<int, std::vector<Rep>> reps;
    std::map<int, std::vector<std::string>> basis;
    for (int da = v->lo(); da <= v->hi(); ++da)
        for (int db = da; db <= v->hi(); ++db)
            for (int i = 0; i < v->dim(da); ++i) {
                int j0 = (db == da) ? i : 0;
                for (int j = j0; j < v->dim(db); ++j) {
                    if (da == db && i == j && da % 2 == 0) continue;
                    reps[da + db].push_back({da, i, db, j});
                    basis[da + db].push_back(v->label(da, i) + "∧" + v->label(db, j));
                }
            }
    // sort reps per degree by (da, ia, ib) to pin the order, then project.
    std::map<int, std::map<std::array<int, 3>, int>> rep_index;
    for (auto& [m, rs] : reps) {
        std::sort(rs.begin(), rs.end(), [](const Rep& a, const Rep& b) {
            return std::tie(a.da, a.ia, a.ib) < std::tie(b.da, b.ia, b.ib);
        });
        basis[m].clear();
        for (int k = 0; k < static_cast<int>(rs.size()); ++k) {
            rep_index[m][{rs[k].da, rs[k].ia, rs[k].ib}] = k;
            basis[m].push_back(v->label(rs[k].da, rs[k].ia) + "∧" +
                               v->label(rs[k].db, rs[k].ib));
        }
    }

    // projection of a pure tensor (da,i) (x) (db,j)
    auto project = [&](int da, int i, int db, int j) -> std::pair<int, Rational> {
        bool canonical = std::tie(da, i) <= std::tie(db, j);
        if (canonical) {
            auto it = rep_index.find(da + db);
            if (it == rep_index.end()) return {-1, Rational(0)};
            auto jt = it->second.find({da, i, j});
            if (jt == it->second.end()) return {-1, Rational(0)};  // even-degree square
            return {jt->second, Rational(1)};
        }
        auto it = rep_index.find(da + db);
        if (it == rep_index.end()) return {-1, Rational(0)};
        auto jt = it->second.find({db, j, i});
        if (jt == it->second.end()) return {-1, Rational(0)};
        Rational sgn((da % 2 != 0 && db % 2 != 0) ? 1 : -1);  // -(-1)^{|a||b|}
        return {jt->second, sgn};
    };

    std::map<int, QMat> proj_comp;
    for (const auto& [m, fac] : w.square.factors) {
        int rows = reps.count(m) ? static_cast<int>(reps[m].size()) : 0;
        std::vector<Triplet<Rational>> trip;
        for (int col = 0; col < static_cast<int>(fac.size()); ++col) {
            auto [da, i, j] = fac[col];
            auto [row, sgn] = project(da, i, m - da, j);
            if (row >= 0 && !sgn.is_zero()) trip.push_back({row, col, sgn});
        }
        proj_comp[m] = QMat::from_triplets(rows, static_cast<int>(fac.size()), std::move(trip));
    }

    std::map<int, QMat> sect_comp;
    for (const auto& [m, rs] : reps) {
        std::vector<Triplet<Rational>> trip;
        for (int k = 0; k < static_cast<int>(rs.size()); ++k) {
            const Rep& r = rs[k];
            if (r.da == r.db && r.ia == r.ib) {
                trip.push_back({w.square.index_of(r.da, r.ia, r.db, r.ib), k, Rational(1)});
            } else {
                Rational half(1, 2);
                Rational sgn((r.da % 2 != 0 && r.db % 2 != 0) ? 1 : -1);  // -(-1)^{|a||b|}
                trip.push_back({w.square.index_of(r.da, r.ia, r.db, r.ib), k, half});
                trip.push_back({w.square.index_of(r.db, r.ib, r.da, r.ia), k, half * sgn});
            }
        }
        sect_comp[m] = QMat::from_triplets(w.square.cx->dim(m), static_cast<int>(rs.size()),
                                           std::move(trip));
    }

    // differential descends: d_W = proj . d_tensor . sect
    std::map<int, QMat> diffs;
    for (const auto& [m, rs] : reps) {
        int rows = reps.count(m - 1) ? static_cast<int>(reps.at(m - 1).size()) : 0;
        QMat d = proj_comp.count(m - 1) ? proj_comp[m - 1] : QMat(rows, w.square.cx->dim(m - 1));
        diffs[m] = d * w.square.cx->diff(m) * sect_comp[m];
    }
    w.cx = ChainComplex::make(std::move(basis), std::move(diffs));
    w.proj = GradedMap::zero(w.square.cx, w.cx, 0);
    for (auto& [m, q] : proj_comp) w.proj.set_component(m, std::move(q));
    w.sect = GradedMap::zero(w.cx, w.square.cx, 0);
    for (auto& [m, q] : sect_comp) w.sect.set_component(m, std::move(q));
    return w;
}

}  // namespace rce
