#pragma once

#include <memory>
#include <string>

#include "rce/lattice.hpp"
#include "rce/site.hpp"

namespace rce {

// Linear observables L(N): degrees (-1,0,1,2) carried by (0,1,1,0)-forms with
// differentials (-delta, delta d, -d). Solution-complex elements use solution
// degrees (-2,-1,0,1) carried by (0,1,1,0)-forms with differentials
// (delta, delta d, d).
template <class S>
using LatObs = std::map<int, Form<S>>;  // L-degree -> form
template <class S>
using SolElem = std::map<int, Form<S>>;  // Sol-degree -> form

inline int obs_form_p(int deg) {
    switch (deg) {
        case -1: return 0;
        case 0: return 1;
        case 1: return 1;
        case 2: return 0;
    }
    throw std::invalid_argument("obs_form_p: degree out of range");
}
inline int sol_form_p(int deg) {
    switch (deg) {
        case -2: return 0;
        case -1: return 1;
        case 0: return 1;
        case 1: return 0;
    }
    throw std::invalid_argument("sol_form_p: degree out of range");
}

template <class S>
bool lat_is_zero(const std::map<int, Form<S>>& e) {
    for (const auto& [d, f] : e)
        if (!f.is_zero()) return false;
    return true;
}

template <class S>
std::map<int, Form<S>> lat_add(const std::map<int, Form<S>>& a, const std::map<int, Form<S>>& b) {
    auto r = a;
    for (const auto& [d, f] : b) {
        auto it = r.find(d);
        if (it == r.end())
            r[d] = f;
        else
            it->second = it->second + f;
    }
    for (auto it = r.begin(); it != r.end();)
        it = it->second.is_zero() ? r.erase(it) : std::next(it);
    return r;
}

template <class S>
std::map<int, Form<S>> lat_scale(std::map<int, Form<S>> a, const S& s) {
    for (auto& [d, f] : a) f = f * s;
    return a;
}

template <class S>
std::map<int, Form<S>> lat_sub(const std::map<int, Form<S>>& a, const std::map<int, Form<S>>& b) {
    return lat_add(a, lat_scale(b, -scalar_traits<S>::one()));
}

struct Horizon {
    int lo = 0, hi = 0;
};

// Operators of one region: observable/solution differentials, the inclusion j,
// retarded/advanced Green homotopies, the causal propagator and the Poisson
// pairing.
template <class S>
class YmRegionOps {
  public:
    Geometry<S> geo;
    Horizon hor;  // Green computation horizons (already padded)

    YmRegionOps() = default;
    YmRegionOps(Geometry<S> g, Horizon h) : geo(std::move(g)), hor(h) {
        for (int p = 0; p < 3; ++p)
            for (int dir = 0; dir < 2; ++dir)
                solvers_[p][dir] = std::make_unique<GreenSolver<S>>(geo, p, dir == 0);
    }

    Form<S> green(int p, bool retarded, const Form<S>& src, int horizon) const {
        return solvers_[p][retarded ? 0 : 1]->apply(src, horizon);
    }

    LatObs<S> obs_diff(const LatObs<S>& w) const {
        LatObs<S> out;
        for (const auto& [deg, f] : w) {
            Form<S> df{obs_form_p(deg - 1), {}};
            if (deg == 0) df = geo.delta(f) * (-scalar_traits<S>::one());
            else if (deg == 1) df = geo.delta(geo.d(f));
            else if (deg == 2) df = geo.d(f) * (-scalar_traits<S>::one());
            else continue;
            if (!df.is_zero()) out = lat_add(out, LatObs<S>{{deg - 1, df}});
        }
        return out;
    }

    SolElem<S> sol_diff(const SolElem<S>& w) const {
        SolElem<S> out;
        for (const auto& [deg, f] : w) {
            Form<S> df{sol_form_p(deg - 1), {}};
            if (deg == -1) df = geo.delta(f);
            else if (deg == 0) df = geo.delta(geo.d(f));
            else if (deg == 1) df = geo.d(f);
            else continue;
            if (!df.is_zero()) out = lat_add(out, SolElem<S>{{deg - 1, df}});
        }
        return out;
    }

    // signed inclusion j : L_k -> Sol_{k-1}, signs (-,-,+,+) for k = -1,0,1,2
    SolElem<S> j_incl(const LatObs<S>& w) const {
        SolElem<S> out;
        for (const auto& [deg, f] : w) {
            S sgn = (deg <= 0) ? -scalar_traits<S>::one() : scalar_traits<S>::one();
            out = lat_add(out, SolElem<S>{{deg - 1, f * sgn}});
        }
        return out;
    }

    // G^{+-}(chi) = G(d chi), G(phi), -G(delta alpha), 0; lands in Sol_k.
    SolElem<S> green_hom(bool retarded, const LatObs<S>& w) const {
        SolElem<S> out;
        int horizon = retarded ? hor.hi : hor.lo;
        for (const auto& [deg, f] : w) {
            if (deg == -1)
                out = lat_add(out, SolElem<S>{{-1, green(1, retarded, geo.d(f), horizon)}});
            else if (deg == 0)
                out = lat_add(out, SolElem<S>{{0, green(1, retarded, f, horizon)}});
            else if (deg == 1)
                out = lat_add(
                    out, SolElem<S>{{1, green(0, retarded, geo.delta(f), horizon) *
                                            (-scalar_traits<S>::one())}});
        }
        return out;
    }

    SolElem<S> causal(const LatObs<S>& w) const {
        return lat_sub(green_hom(true, w), green_hom(false, w));
    }

    // Q(chi) = -d chi, Q(phi) = phi, Q(alpha) = -delta alpha, Q(beta) = 0;
    // output has the shape of L_{k+1} and is stored at degree k+1.
    LatObs<S> q_op(const LatObs<S>& w) const {
        LatObs<S> out;
        for (const auto& [deg, f] : w) {
            if (deg == -1)
                out = lat_add(out, LatObs<S>{{0, geo.d(f) * (-scalar_traits<S>::one())}});
            else if (deg == 0)
                out = lat_add(out, LatObs<S>{{1, f}});
            else if (deg == 1)
                out = lat_add(out, LatObs<S>{{2, geo.delta(f) * (-scalar_traits<S>::one())}});
        }
        return out;
    }

    // lambda/gamma shape homotopy: -rho_+ G^- Q - rho_- G^+ Q with the sharp
    // cut at t0; degree k -> k+1, compactly supported around the cut.
    LatObs<S> cut_homotopy(int t0, const LatObs<S>& w) const {
        LatObs<S> out;
        for (const auto& [deg, qf] : q_op(w)) {
            Form<S> adv = green(qf.p, false, qf, t0 - 2);
            Form<S> ret = green(qf.p, true, qf, t0 + 2);
            Form<S> r = geo.cut(adv, t0, true) + geo.cut(ret, t0, false);
            r = r * (-scalar_traits<S>::one());
            if (!r.is_zero()) out = lat_add(out, LatObs<S>{{deg, r}});
        }
        return out;
    }

    // d(kappa) = D kappa + kappa D for a shift-1 L-endomorphism applier
    template <class F>
    LatObs<S> hom_boundary1(F&& kappa, const LatObs<S>& w) const {
        return lat_add(obs_diff(kappa(w)), kappa(obs_diff(w)));
    }

    // evaluation pairing of L_k against Sol_{-k}
    S pair_ls(const LatObs<S>& a, const SolElem<S>& s) const {
        S out = scalar_traits<S>::zero();
        for (const auto& [deg, f] : a) {
            auto it = s.find(-deg);
            if (it != s.end()) out += geo.pairing(f, it->second);
        }
        return out;
    }

    // tau(a (x) b) = <a, G(b)>
    S tau(const LatObs<S>& a, const LatObs<S>& b) const { return pair_ls(a, causal(b)); }
    S tau_with_causal(const LatObs<S>& a, const SolElem<S>& causal_b) const {
        return pair_ls(a, causal_b);
    }

  private:
    std::array<std::array<std::unique_ptr<GreenSolver<S>>, 2>, 3> solvers_;
};

// Scenario data for the discrete model: a T x X window of the cylinder with a
// compactly supported rational metric perturbation h in the window interior.
struct LatticeScenario {
    int T = 24;
    int X = 16;
    int margin = 5;                                   // h stays this far from the window ends
    int gap = 3;                                      // slab cuts this far from supp h
    std::map<std::pair<int, int>, Sym2Q> h;           // vertex -> perturbation entries

    void validate() const;
    int h_min_slice() const;
    int h_max_slice() const;

    // small default perturbation block
    static LatticeScenario standard(int T = 24, int X = 16, unsigned seed = 1);
};

// The four regions of the RCE diagram over a scenario, with the geometric
// equivalence data of the inclusions and the relative Cauchy evolution maps.
class YmSystem {
  public:
    explicit YmSystem(LatticeScenario s);

    const LatticeScenario& scenario() const { return sc_; }
    const YmRegionOps<Rational>& ops(Obj n) const { return *ops_[static_cast<int>(n)]; }
    YmRegionOps<Rational>& ops(Obj n) { return *ops_[static_cast<int>(n)]; }
    const YmRegionOps<Dual>& dual_mh() const { return *dual_mh_; }
    int t_plus() const { return t_plus_; }
    int t_minus() const { return t_minus_; }
    int t0_of(Mor f) const;  // partition cut used for the equivalence data of f
    Horizon window() const { return {0, sc_.T - 1}; }

    // basis observables of a region inside the window
    std::vector<std::pair<int, Cell>> window_basis(Obj n) const;
    LatObs<Rational> basis_obs(int deg, const Cell& c) const;

    // geometric equivalence data of an arrow (xi = 0)
    LatObs<Rational> lambda_f(Mor f, const LatObs<Rational>& w) const;
    LatObs<Rational> gamma_f(Mor f, const LatObs<Rational>& w) const;
    LatObs<Rational> f_inv(Mor f, const LatObs<Rational>& w) const;
    LatObs<Rational> arrow(Mor f, const LatObs<Rational>& w) const;  // extension by zero

    // rce^{lin,+} = id + (d^{L(M_h)} - d^{L(M)}) G_{M_h} Q_{M_h} : L(M+) -> L(M)
    LatObs<Rational> rce_lin_plus(const LatObs<Rational>& w) const;
    // the same composite over Q[eps] with metric g + eps h
    LatObs<Dual> rce_lin_plus_dual(const LatObs<Dual>& w) const;

    // eps-slope of the dual composite: the stress-energy derivative t
    LatObs<Rational> stress_t(const LatObs<Rational>& w) const;
    // correction homotopy psi (chi-degree only) and t-tilde = t + d(psi)
    LatObs<Rational> psi(const LatObs<Rational>& w) const;
    LatObs<Rational> stress_t_tilde(const LatObs<Rational>& w) const;

    Rational polarized_stress(const LatObs<Rational>& w1, const LatObs<Rational>& w2) const;
    // field-strength contraction reported alongside polarized_stress
    Rational field_strength_comparison(const LatObs<Rational>& w1,
                                       const LatObs<Rational>& w2) const;

  private:
    LatticeScenario sc_;
    int t_plus_ = 0, t_minus_ = 0;
    int t0_plus_ = 0, t0_minus_ = 0;
    std::array<std::unique_ptr<YmRegionOps<Rational>>, 4> ops_;
    std::unique_ptr<YmRegionOps<Dual>> dual_mh_;
    std::unique_ptr<YmRegionOps<Dual>> dual_m_;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// exact checks of the discrete model (see tests/acceptance for the gate)
CheckResult check_lattice_d2(const YmSystem& sys);
CheckResult check_stokes_adjointness(const YmSystem& sys, unsigned seed);
CheckResult check_green_identities(const YmSystem& sys, Obj region);
CheckResult check_green_commutation(const YmSystem& sys, Obj region);
CheckResult check_causal_support(const YmSystem& sys);
CheckResult check_tau_properties(const YmSystem& sys, unsigned seed);
CheckResult check_region_tau_preserved(const YmSystem& sys);
CheckResult check_prop63(const YmSystem& sys, Mor f);
CheckResult check_prop64(const YmSystem& sys);
CheckResult check_remark65(const YmSystem& sys);
CheckResult check_prop61_lattice(const YmSystem& sys);
CheckResult check_poisson_nonpreservation(const YmSystem& sys);
CheckResult check_stress_properties(const YmSystem& sys);
CheckResult check_psi_compatibility(const YmSystem& sys);
CheckResult check_polarized_stress(const YmSystem& sys);

}  // namespace rce
