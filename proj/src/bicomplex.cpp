#include "rce/bicomplex.hpp"

#include <stdexcept>

namespace rce {

namespace {
const std::vector<std::string> kEmpty;
}

BicomplexPtr Bicomplex::make(std::map<Key, std::vector<std::string>> basis,
                             std::map<Key, QMat> dv, std::map<Key, QMat> dh) {
    auto b = std::shared_ptr<Bicomplex>(new Bicomplex());
    for (auto it = basis.begin(); it != basis.end();) {
        if (it->second.empty())
            it = basis.erase(it);
        else
            ++it;
    }
    b->basis_ = std::move(basis);
    auto shape_ok = [&](const std::map<Key, QMat>& m, bool vertical) {
        for (const auto& [k, q] : m) {
            auto [p, h] = k;
            int rows = vertical ? b->dim(p - 1, h) : b->dim(p, h - 1);
            if (q.rows() != rows || q.cols() != b->dim(p, h))
                throw std::invalid_argument("Bicomplex: differential shape mismatch");
        }
    };
    shape_ok(dv, true);
    shape_ok(dh, false);
    for (auto& [k, q] : dv)
        if (!q.is_zero()) b->dv_.emplace(k, std::move(q));
    for (auto& [k, q] : dh)
        if (!q.is_zero()) b->dh_.emplace(k, std::move(q));
    for (const auto& [k, bs] : b->basis_) {
        auto [p, q] = k;
        if (!(b->dv(p - 1, q) * b->dv(p, q)).is_zero())
            throw std::invalid_argument("Bicomplex: dv^2 != 0");
        if (!(b->dh(p, q - 1) * b->dh(p, q)).is_zero())
            throw std::invalid_argument("Bicomplex: dh^2 != 0");
        QMat anti = b->dv(p, q - 1) * b->dh(p, q) + b->dh(p - 1, q) * b->dv(p, q);
        if (!anti.is_zero()) throw std::invalid_argument("Bicomplex: dv dh + dh dv != 0");
    }
    return b;
}

int Bicomplex::dim(int p, int q) const {
    auto it = basis_.find({p, q});
    return it == basis_.end() ? 0 : static_cast<int>(it->second.size());
}

const std::vector<std::string>& Bicomplex::labels(int p, int q) const {
    auto it = basis_.find({p, q});
    return it == basis_.end() ? kEmpty : it->second;
}

QMat Bicomplex::dv(int p, int q) const {
    auto it = dv_.find({p, q});
    if (it != dv_.end()) return it->second;
    return QMat(dim(p - 1, q), dim(p, q));
}

QMat Bicomplex::dh(int p, int q) const {
    auto it = dh_.find({p, q});
    if (it != dh_.end()) return it->second;
    return QMat(dim(p, q - 1), dim(p, q));
}

int TotComplex::index_of(int p, int q, int i) const {
    auto dit = index.find(p + q);
    if (dit == index.end()) throw std::out_of_range("TotComplex: empty degree");
    auto it = dit->second.find({p, i});
    if (it == dit->second.end()) throw std::out_of_range("TotComplex: bad cell");
    return it->second;
}

TotComplex tot_oplus(const Bicomplex& b) {
    TotComplex t;
    std::map<int, std::vector<std::string>> basis;
    // order by (p, q, label index); map iteration over (p,q) is already sorted
    for (const auto& [k, bs] : b.cells()) {
        auto [p, q] = k;
        int m = p + q;
        for (int i = 0; i < static_cast<int>(bs.size()); ++i) {
            t.index[m][{p, i}] = static_cast<int>(t.cells[m].size());
            t.cells[m].push_back({p, i});
            basis[m].push_back(bs[i]);
        }
    }
    // reindex cells so q is recoverable: store (p, i); q = m - p
    std::map<int, QMat> diffs;
    for (const auto& [m, cs] : t.cells) {
        int rows = t.cells.count(m - 1) ? static_cast<int>(t.cells.at(m - 1).size()) : 0;
        std::vector<Triplet<Rational>> trip;
        for (int col = 0; col < static_cast<int>(cs.size()); ++col) {
            auto [p, i] = cs[col];
            int q = m - p;
            for (const auto& e : b.dv(p, q).triplets())
                if (e.c == i) trip.push_back({t.index_of(p - 1, q, e.r), col, e.v});
            for (const auto& e : b.dh(p, q).triplets())
                if (e.c == i) trip.push_back({t.index_of(p, q - 1, e.r), col, e.v});
        }
        diffs[m] = QMat::from_triplets(rows, static_cast<int>(cs.size()), std::move(trip));
    }
    t.cx = ChainComplex::make(std::move(basis), std::move(diffs));
    return t;
}

int BicomplexTensor::index_of(int pa, int qa, int ia, int pb, int qb, int ib) const {
    auto dit = index.find({pa + pb, qa + qb});
    if (dit == index.end()) throw std::out_of_range("BicomplexTensor: empty cell");
    auto it = dit->second.find({pa, qa, ia, ib});
    if (it == dit->second.end()) throw std::out_of_range("BicomplexTensor: bad factor");
    return it->second;
}

BicomplexTensor bicomplex_tensor(const Bicomplex& a, const Bicomplex& b) {
    BicomplexTensor t;
    std::map<Bicomplex::Key, std::vector<std::string>> basis;
    for (const auto& [ka, la] : a.cells())
        for (const auto& [kb, lb] : b.cells()) {
            auto [pa, qa] = ka;
            auto [pb, qb] = kb;
            Bicomplex::Key k{pa + pb, qa + qb};
            for (int i = 0; i < static_cast<int>(la.size()); ++i)
                for (int j = 0; j < static_cast<int>(lb.size()); ++j) {
                    t.index[k][{pa, qa, i, j}] = static_cast<int>(t.factors[k].size());
                    t.factors[k].push_back({pa, qa, i, j});
                    basis[k].push_back(la[i] + "⊗" + lb[j]);
                }
        }
    std::map<Bicomplex::Key, QMat> dv, dh;
    for (const auto& [k, fac] : t.factors) {
        auto [p, q] = k;
        std::vector<Triplet<Rational>> tv, th;
        for (int col = 0; col < static_cast<int>(fac.size()); ++col) {
            auto [pa, qa, i, j] = fac[col];
            int pb = p - pa, qb = q - qa;
            // dv (x) id
            for (const auto& e : a.dv(pa, qa).triplets())
                if (e.c == i) tv.push_back({t.index_of(pa - 1, qa, e.r, pb, qb, j), col, e.v});
            // id (x) dv with Koszul sign by total degree of the left factor
            Rational sgn((pa + qa) % 2 == 0 ? 1 : -1);
            for (const auto& e : b.dv(pb, qb).triplets())
                if (e.c == j) tv.push_back({t.index_of(pa, qa, i, pb - 1, qb, e.r), col, e.v * sgn});
            for (const auto& e : a.dh(pa, qa).triplets())
                if (e.c == i) th.push_back({t.index_of(pa, qa - 1, e.r, pb, qb, j), col, e.v});
            for (const auto& e : b.dh(pb, qb).triplets())
                if (e.c == j) th.push_back({t.index_of(pa, qa, i, pb, qb - 1, e.r), col, e.v * sgn});
        }
        int n = static_cast<int>(fac.size());
        int rv = t.factors.count({p - 1, q}) ? static_cast<int>(t.factors.at({p - 1, q}).size()) : 0;
        int rh = t.factors.count({p, q - 1}) ? static_cast<int>(t.factors.at({p, q - 1}).size()) : 0;
        dv[k] = QMat::from_triplets(rv, n, std::move(tv));
        dh[k] = QMat::from_triplets(rh, n, std::move(th));
    }
    t.cx = Bicomplex::make(std::move(basis), std::move(dv), std::move(dh));
    return t;
}

std::map<Bicomplex::Key, QMat> bicomplex_braiding(const Bicomplex& a, const Bicomplex& b,
                                                  const BicomplexTensor& ab,
                                                  const BicomplexTensor& ba) {
    std::map<Bicomplex::Key, QMat> out;
    for (const auto& [k, fac] : ab.factors) {
        std::vector<Triplet<Rational>> trip;
        auto [p, q] = k;
        for (int col = 0; col < static_cast<int>(fac.size()); ++col) {
            auto [pa, qa, i, j] = fac[col];
            int pb = p - pa, qb = q - qa;
            int ta = pa + qa, tb = pb + qb;
            Rational sgn((ta % 2 != 0 && tb % 2 != 0) ? -1 : 1);
            trip.push_back({ba.index_of(pb, qb, j, pa, qa, i), col, sgn});
        }
        int rows = ba.factors.count(k) ? static_cast<int>(ba.factors.at(k).size()) : 0;
        out[k] = QMat::from_triplets(rows, static_cast<int>(fac.size()), std::move(trip));
    }
    return out;
}

ChainMap tot_monoidal_iso(const Bicomplex& a, const Bicomplex& b, const BicomplexTensor& ab,
                          const TotComplex& tot_ab, const TotComplex& tot_a,
                          const TotComplex& tot_b, const TensorComplex& tott) {
    (void)a;
    (void)b;
    ChainMap f = GradedMap::zero(tot_ab.cx, tott.cx, 0);
    for (const auto& [m, cs] : tot_ab.cells) {
        std::vector<Triplet<Rational>> trip;
        for (int col = 0; col < static_cast<int>(cs.size()); ++col) {
            auto [p, i] = cs[col];
            int q = m - p;
            auto [pa, qa, ia, ib] = ab.factors.at({p, q})[i];
            int pb = p - pa, qb = q - qa;
            int ra = tot_a.index_of(pa, qa, ia);
            int rb = tot_b.index_of(pb, qb, ib);
            trip.push_back({tott.index_of(pa + qa, ra, pb + qb, rb), col, Rational(1)});
        }
        f.set_component(m, QMat::from_triplets(tott.cx->dim(m), static_cast<int>(cs.size()),
                                               std::move(trip)));
    }
    return f;
}

}  // namespace rce
