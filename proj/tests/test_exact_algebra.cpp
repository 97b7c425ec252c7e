#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rce/dual.hpp"
#include "rce/linalg.hpp"
#include "rce/rational.hpp"
#include "rce/sparse.hpp"

#include <random>
#include <sstream>

using namespace rce;

namespace {

QMat mat(int r, int c, std::vector<std::tuple<int, int, long, long>> entries) {
    std::vector<Triplet<Rational>> t;
    for (auto [i, j, p, q] : entries) t.push_back({i, j, Rational(p, q)});
    return QMat::from_triplets(r, c, std::move(t));
}

QMat random_mat(std::mt19937_64& rng, int r, int c, int density_pct = 60) {
    std::vector<Triplet<Rational>> t;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            if (static_cast<int>(rng() % 100) < density_pct) {
                long num = static_cast<long>(rng() % 9) - 4;
                long den = 1 + static_cast<long>(rng() % 3);
                t.push_back({i, j, Rational(num, den)});
            }
        }
    return QMat::from_triplets(r, c, std::move(t));
}

}  // namespace

TEST_CASE("rational canonical form") {
    CHECK(Rational(2, 6) == Rational(1, 3));
    CHECK(Rational(2, -6) == Rational(-1, 3));
    CHECK(Rational(2, -6).den() == 3);
    CHECK(Rational::parse("4/6").str() == "2/3");
    CHECK(Rational::parse("-7").str() == "-7");
    CHECK((Rational(1, 3) + Rational(1, 6)).str() == "1/2");
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("dual ring arithmetic") {
    Dual x(Rational(2), Rational(3));
    Dual y(Rational(5), Rational(-1));
    // (a+b e)(c+d e) = ac + (ad+bc) e, the e^2 term never materializes
    CHECK((x * y) == Dual(Rational(10), Rational(13)));
    CHECK((x * inverse(x)) == Dual(Rational(1)));
    CHECK_THROWS_AS(inverse(Dual::eps()), std::domain_error);
}

TEST_CASE("rank examples") {
    CHECK(rank(QMat(0, 0)) == 0);
    CHECK(rank(QMat::identity(2)) == 2);
    CHECK(rank(mat(2, 2, {{0, 0, 1, 1}, {0, 1, 2, 1}, {1, 0, 2, 1}, {1, 1, 4, 1}})) == 1);
}

TEST_CASE("solve examples") {
    QVec b{Rational(3), Rational(-2)};
    auto x = solve(QMat::identity(2), b);
    REQUIRE(x);
    CHECK(*x == b);

    // [[1,1]] x = 0 under lowest-index pivoting: free x1 = 0 forces x0 = 0
    auto y = solve(mat(1, 2, {{0, 0, 1, 1}, {0, 1, 1, 1}}), {Rational(0)});
    REQUIRE(y);
    CHECK((*y)[0] == Rational(0));
    CHECK((*y)[1] == Rational(0));

    CHECK(!solve(QMat(1, 1), {Rational(1)}));
}

TEST_CASE("kernel examples") {
    CHECK(kernel_basis(QMat::identity(3)).empty());
    CHECK(kernel_basis(QMat(1, 2)).size() == 2);

    auto k = kernel_basis(mat(2, 2, {{0, 0, 1, 1}, {0, 1, 2, 1}, {1, 0, 2, 1}, {1, 1, 4, 1}}));
    REQUIRE(k.size() == 1);
    // proportional to (2, -1): x0 * (-1) == x1 * 2
    CHECK(k[0][0] * Rational(-1) == k[0][1] * Rational(2));
}

TEST_CASE("rank-nullity and exact solve on random matrices") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 25; ++it) {
        int r = 1 + static_cast<int>(rng() % 7);
        int c = 1 + static_cast<int>(rng() % 7);
        QMat m = random_mat(rng, r, c);
        CHECK(rank(m) + static_cast<int>(kernel_basis(m).size()) == c);

        QVec v(c);
        for (int j = 0; j < c; ++j) v[j] = Rational(static_cast<long>(rng() % 11) - 5, 1 + rng() % 4);
        QVec b = m.apply(v);
        auto x = solve(m, b);
        REQUIRE(x);
        CHECK(m.apply(*x) == b);
    }
}

TEST_CASE("dual_solve") {
    using DM = SparseMat<Dual>;
    auto one = [](long p, long q, long sp, long sq) { return Dual(Rational(p, q), Rational(sp, sq)); };

    DM a = DM::from_triplets(1, 1, {{0, 0, one(1, 1, 0, 1)}});
    auto x = dual_solve(a, {one(1, 1, 2, 1)});
    REQUIRE(x);
    CHECK((*x)[0] == one(1, 1, 2, 1));

    DM b = DM::from_triplets(1, 1, {{0, 0, one(1, 1, 3, 1)}});
    auto y = dual_solve(b, {one(1, 1, 0, 1)});
    REQUIRE(y);
    CHECK((*y)[0] == one(1, 1, -3, 1));  // (1+3e)^{-1} = 1-3e

    DM c = DM::from_triplets(1, 1, {{0, 0, Dual::eps()}});
    CHECK_THROWS_AS(dual_solve(c, {Dual(Rational(1))}), BaseSingular);
}

TEST_CASE("sparse dump format") {
    QMat m = mat(2, 3, {{1, 2, -1, 2}, {0, 0, 3, 1}});
    std::ostringstream os;
    m.dump(os);
    CHECK(os.str() == "2 3 2\n0 0 3\n1 2 -1/2\n");
}
