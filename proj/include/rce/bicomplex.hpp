#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rce/complex.hpp"

namespace rce {

class Bicomplex;
using BicomplexPtr = std::shared_ptr<const Bicomplex>;

// Bigraded spaces with anticommuting square-zero differentials:
// vertical dv : (p,q) -> (p-1,q), horizontal dh : (p,q) -> (p,q-1),
// dv^2 = 0, dh^2 = 0, dv dh + dh dv = 0 (validated exactly).
class Bicomplex {
  public:
    using Key = std::pair<int, int>;  // (vertical p, horizontal q)

    static BicomplexPtr make(std::map<Key, std::vector<std::string>> basis,
                             std::map<Key, QMat> dv, std::map<Key, QMat> dh);

    int dim(int p, int q) const;
    const std::vector<std::string>& labels(int p, int q) const;
    QMat dv(int p, int q) const;  // (p,q) -> (p-1,q)
    QMat dh(int p, int q) const;  // (p,q) -> (p,q-1)
    const std::map<Key, std::vector<std::string>>& cells() const { return basis_; }

  private:
    Bicomplex() = default;
    std::map<Key, std::vector<std::string>> basis_;
    std::map<Key, QMat> dv_, dh_;
};

// Tot(B)_m = sum over p+q=m, differential dv + dh. Basis ordered by
// (vertical degree, then horizontal degree, then label index).
struct TotComplex {
    ComplexPtr cx;
    // per total degree m: list of (p, idx) in basis order, and reverse index
    std::map<int, std::vector<std::array<int, 2>>> cells;
    std::map<int, std::map<std::array<int, 2>, int>> index;
    int index_of(int p, int q, int i) const;
};
TotComplex tot_oplus(const Bicomplex& b);

// Tensor product of bicomplexes with total-degree Koszul signs; keeps factor
// index maps for the strong-monoidality comparison.
struct BicomplexTensor {
    BicomplexPtr cx;
    // per (p,q): (pa, qa, ia, ib)
    std::map<Bicomplex::Key, std::vector<std::array<int, 4>>> factors;
    std::map<Bicomplex::Key, std::map<std::array<int, 4>, int>> index;
    int index_of(int pa, int qa, int ia, int pb, int qb, int ib) const;
};
BicomplexTensor bicomplex_tensor(const Bicomplex& a, const Bicomplex& b);

// Braiding B1 (x) B2 -> B2 (x) B1 with total-degree Koszul signs, as matrices
// per (p,q).
std::map<Bicomplex::Key, QMat> bicomplex_braiding(const Bicomplex& a, const Bicomplex& b,
                                                  const BicomplexTensor& ab,
                                                  const BicomplexTensor& ba);

// Canonical basis bijection Tot(A (x) B) -> Tot(A) (x) Tot(B) as a chain map.
ChainMap tot_monoidal_iso(const Bicomplex& a, const Bicomplex& b, const BicomplexTensor& ab,
                          const TotComplex& tot_ab, const TotComplex& tot_a,
                          const TotComplex& tot_b, const TensorComplex& tott);

}  // namespace rce
