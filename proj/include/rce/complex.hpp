#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rce/linalg.hpp"
#include "rce/sparse.hpp"

namespace rce {

class ChainComplex;
using ComplexPtr = std::shared_ptr<const ChainComplex>;

// Finitely supported Z-graded chain complex over Q with degree -1 differential
// and explicit basis labels. Immutable after make(); d^2 = 0 is validated.
class ChainComplex {
  public:
    static ComplexPtr make(std::map<int, std::vector<std::string>> basis,
                           std::map<int, QMat> diffs);
    static ComplexPtr zero() { return make({}, {}); }

    // Q in a single degree.
    static ComplexPtr ground_field(int degree, const std::string& label = "1");

    int dim(int deg) const {
        auto it = basis_.find(deg);
        return it == basis_.end() ? 0 : static_cast<int>(it->second.size());
    }
    const std::vector<std::string>& labels(int deg) const;
    const std::string& label(int deg, int i) const { return labels(deg)[i]; }

    // d_deg : V_deg -> V_{deg-1}; zero matrix when absent.
    QMat diff(int deg) const;

    int lo() const { return lo_; }
    int hi() const { return hi_; }
    std::vector<int> degrees() const;
    int total_dim() const;

  private:
    ChainComplex() = default;
    std::map<int, std::vector<std::string>> basis_;
    std::map<int, QMat> diff_;
    int lo_ = 0, hi_ = -1;  // empty window when lo_ > hi_
};

// Degree-shift-n collection of maps kappa_m : V_m -> W_{m+n}.
struct GradedMap {
    ComplexPtr src;
    ComplexPtr tgt;
    int shift = 0;
    std::map<int, QMat> comp;

    static GradedMap zero(ComplexPtr s, ComplexPtr t, int n) { return {std::move(s), std::move(t), n, {}}; }
    static GradedMap identity(const ComplexPtr& c);

    QMat component(int m) const;
    void set_component(int m, QMat q);
    bool is_zero() const;
    QVec apply(int deg, const QVec& x) const { return component(deg).apply(x); }

    GradedMap operator+(const GradedMap& o) const;
    GradedMap operator-(const GradedMap& o) const;
    GradedMap operator*(const Rational& s) const;
};

using ChainMap = GradedMap;  // shift 0 + chain property, checked where required

// (d kappa)_m = d^W kappa_m - (-1)^n kappa_{m-1} d^V
GradedMap hom_boundary(const GradedMap& k);

// g after f; shifts add.
GradedMap compose(const GradedMap& g, const GradedMap& f);

bool is_chain_map(const GradedMap& f);
void require_chain_map(const GradedMap& f, const char* what);

std::map<int, int> homology_dims(const ChainComplex& v);

ComplexPtr mapping_cone_complex(const GradedMap& f);
bool is_quasi_iso(const GradedMap& f);

// V[k]_m = V_{m-k}, differential (-1)^k d.
ComplexPtr shift_complex(const ComplexPtr& v, int k);
GradedMap shift_map(const GradedMap& f, int k);

struct SumComplex {
    ComplexPtr cx;
    ChainMap incl_left, incl_right, proj_left, proj_right;
};
SumComplex direct_sum(const ComplexPtr& a, const ComplexPtr& b);

// Tensor product with Leibniz differential and Koszul signs; keeps the basis
// index maps needed to build maps into and out of the product.
struct TensorComplex {
    ComplexPtr cx;
    ComplexPtr left, right;
    // per product degree: (degA, idxA, idxB) in basis order
    std::map<int, std::vector<std::array<int, 3>>> factors;
    std::map<int, std::map<std::array<int, 3>, int>> index;

    int index_of(int deg_a, int idx_a, int deg_b, int idx_b) const;
};
TensorComplex tensor(const ComplexPtr& a, const ComplexPtr& b);

// f (x) g on prebuilt tensor complexes.
ChainMap tensor_map(const TensorComplex& src, const TensorComplex& dst, const GradedMap& f,
                    const GradedMap& g);

// Koszul braiding V (x) W -> W (x) V.
ChainMap koszul_braiding(const TensorComplex& vw, const TensorComplex& wv);

// V ^ V: quotient of V (x) V by v(x)w + (-1)^{|v||w|} w(x)v, with canonical
// representatives, projection and section.
struct WedgeComplex {
    TensorComplex square;
    ComplexPtr cx;
    ChainMap proj;  // V(x)V -> V^V
    ChainMap sect;  // V^V -> V(x)V, right inverse of proj
};
WedgeComplex wedge_square(const ComplexPtr& v);

}  // namespace rce
