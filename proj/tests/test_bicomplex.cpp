#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rce/bicomplex.hpp"
#include "rce/harness.hpp"

using namespace rce;

namespace {

QMat mat(int r, int c, std::vector<std::tuple<int, int, long, long>> e) {
    std::vector<Triplet<Rational>> t;
    for (auto [i, j, p, q] : e) t.push_back({i, j, Rational(p, q)});
    return QMat::from_triplets(r, c, std::move(t));
}

// random valid bicomplex: rows are a two-term vertical cone over a seeded
// horizontal complex, which forces all three axioms
BicomplexPtr cone_bicomplex(unsigned seed, int hdim) {
    Rng rng(seed);
    std::map<int, int> dims{{0, 1 + rng.below(hdim)}, {1, 1 + rng.below(hdim)}, {2, rng.below(hdim)}};
    std::map<Bicomplex::Key, std::vector<std::string>> basis;
    std::map<Bicomplex::Key, QMat> dv, dh;
    std::map<int, QMat> d;
    {
        // seeded horizontal square-zero differential: d1 arbitrary, d2 into ker d1
        int n0 = dims[0], n1 = dims[1], n2 = dims[2];
        std::vector<Triplet<Rational>> t;
        for (int i = 0; i < n0; ++i)
            for (int j = 0; j < n1; ++j) {
                Rational v = rng.small_rational(2, 2);
                if (!v.is_zero()) t.push_back({i, j, v});
            }
        d[1] = QMat::from_triplets(n0, n1, std::move(t));
        auto ker = kernel_basis(d[1]);
        std::vector<Triplet<Rational>> t2;
        for (int j = 0; j < n2; ++j) {
            if (!ker.empty()) {
                const QVec& k = ker[static_cast<size_t>(rng.below(static_cast<int>(ker.size())))];
                Rational scale = rng.small_nonzero(2, 1);
                for (int i = 0; i < n1; ++i)
                    if (!k[i].is_zero()) t2.push_back({i, j, k[i] * scale});
            }
        }
        d[2] = QMat::from_triplets(n1, n2, std::move(t2));
    }
    for (int q = 0; q <= 2; ++q) {
        for (int p = 0; p <= 1; ++p) {
            std::vector<std::string> b;
            for (int i = 0; i < dims[q]; ++i)
                b.push_back("c" + std::to_string(p) + std::to_string(q) + "." + std::to_string(i));
            basis[{p, q}] = b;
        }
        // vertical differential: identity from row 1 to row 0, twisted by the
        // horizontal-degree sign so the differentials anticommute
        Rational sgn(q % 2 == 0 ? 1 : -1);
        dv[{1, q}] = QMat::identity(dims[q]) * sgn;
    }
    for (int q = 1; q <= 2; ++q) {
        dh[{0, q}] = d[q];
        dh[{1, q}] = d[q];
    }
    return Bicomplex::make(std::move(basis), std::move(dv), std::move(dh));
}

}  // namespace

TEST_CASE("axioms are validated") {
    std::map<Bicomplex::Key, std::vector<std::string>> basis{
        {{0, 0}, {"a"}}, {{0, 1}, {"b"}}, {{1, 0}, {"c"}}, {{1, 1}, {"d"}}};
    std::map<Bicomplex::Key, QMat> dv{{{1, 0}, mat(1, 1, {{0, 0, 1, 1}})},
                                      {{1, 1}, mat(1, 1, {{0, 0, 1, 1}})}};
    std::map<Bicomplex::Key, QMat> dh{{{0, 1}, mat(1, 1, {{0, 0, 1, 1}})},
                                      {{1, 1}, mat(1, 1, {{0, 0, 1, 1}})}};
    CHECK_THROWS(Bicomplex::make(basis, dv, dh));  // differentials commute
    dh[{1, 1}] = mat(1, 1, {{0, 0, -1, 1}});
    CHECK_NOTHROW(Bicomplex::make(basis, dv, dh));
}

TEST_CASE("totalization of a single cell is the same complex") {
    auto b = Bicomplex::make({{{0, 0}, {"x", "y"}}}, {}, {});
    auto t = tot_oplus(*b);
    CHECK(t.cx->dim(0) == 2);
    CHECK(t.cx->total_dim() == 2);
}

TEST_CASE("two rows joined by a vertical isomorphism totalize acyclically") {
    auto b = cone_bicomplex(3, 2);
    auto t = tot_oplus(*b);
    CHECK(homology_dims(*t.cx).empty());
}

TEST_CASE("tot differential squares to zero and matches assembled homology") {
    for (unsigned seed : {1u, 7u, 21u}) {
        auto b = cone_bicomplex(seed, 3);
        auto t = tot_oplus(*b);  // ChainComplex::make re-validates d^2 = 0
        auto dims = homology_dims(*t.cx);
        for (int m = t.cx->lo(); m <= t.cx->hi(); ++m) {
            int h = t.cx->dim(m) - rank(t.cx->diff(m)) - rank(t.cx->diff(m + 1));
            CHECK((dims.count(m) ? dims[m] : 0) == h);
        }
    }
}

TEST_CASE("unit tensor is the identity") {
    auto unit = Bicomplex::make({{{0, 0}, {"1"}}}, {}, {});
    auto b = cone_bicomplex(5, 2);
    auto ub = bicomplex_tensor(*unit, *b);
    for (const auto& [k, cells] : b->cells()) {
        CHECK(ub.cx->dim(k.first, k.second) == static_cast<int>(cells.size()));
        CHECK(ub.cx->dv(k.first, k.second) == b->dv(k.first, k.second));
        CHECK(ub.cx->dh(k.first, k.second) == b->dh(k.first, k.second));
    }
}

TEST_CASE("one-cell tensor anticommutation") {
    auto b1 = Bicomplex::make({{{0, 1}, {"u"}}}, {}, {});
    auto b2 = Bicomplex::make({{{1, 0}, {"v"}}}, {}, {});
    auto t = bicomplex_tensor(*b1, *b2);  // validated on construction
    CHECK(t.cx->dim(1, 1) == 1);
}

TEST_CASE("strong monoidality of the totalization") {
    for (unsigned seed : {2u, 9u}) {
        auto a = cone_bicomplex(seed, 2);
        auto b = cone_bicomplex(seed + 100, 2);
        auto ab = bicomplex_tensor(*a, *b);
        auto tot_ab = tot_oplus(*ab.cx);
        auto ta = tot_oplus(*a);
        auto tb = tot_oplus(*b);
        auto tt = tensor(ta.cx, tb.cx);
        ChainMap iso = tot_monoidal_iso(*a, *b, ab, tot_ab, ta, tb, tt);
        CHECK(is_chain_map(iso));
        // basis bijection: every component is a permutation matrix
        for (int m = tot_ab.cx->lo(); m <= tot_ab.cx->hi(); ++m) {
            QMat q = iso.component(m);
            CHECK(q.nnz() == tot_ab.cx->dim(m));
            for (const auto& e : q.triplets()) CHECK(e.v == Rational(1));
        }
    }
}

TEST_CASE("braiding is a bicomplex isomorphism squaring to one") {
    auto a = cone_bicomplex(11, 2);
    auto b = cone_bicomplex(12, 2);
    auto ab = bicomplex_tensor(*a, *b);
    auto ba = bicomplex_tensor(*b, *a);
    auto br = bicomplex_braiding(*a, *b, ab, ba);
    auto br2 = bicomplex_braiding(*b, *a, ba, ab);
    for (const auto& [k, cells] : ab.cx->cells()) {
        auto [p, q] = k;
        auto get = [](const std::map<Bicomplex::Key, QMat>& m, Bicomplex::Key key, int r, int c) {
            auto it = m.find(key);
            return it == m.end() ? QMat(r, c) : it->second;
        };
        QMat m = br.at(k);
        QMat mv = get(br, {p - 1, q}, ba.cx->dim(p - 1, q), ab.cx->dim(p - 1, q));
        CHECK(mv * ab.cx->dv(p, q) == ba.cx->dv(p, q) * m);
        QMat mh = get(br, {p, q - 1}, ba.cx->dim(p, q - 1), ab.cx->dim(p, q - 1));
        CHECK(mh * ab.cx->dh(p, q) == ba.cx->dh(p, q) * m);
        CHECK(br2.at(k) * m == QMat::identity(ab.cx->dim(p, q)));
    }
}
