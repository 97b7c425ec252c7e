#pragma once

#include <climits>
#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rce/dual.hpp"
#include "rce/linalg.hpp"
#include "rce/rational.hpp"

namespace rce {

// 1+1d lattice cylinder: space is periodic with circumference X, time is
// unbounded; regions are time slabs. Cells carry a (t, x) anchor:
// vertex (t,x); xedge from (t,x) to (t,x+1); tedge from (t,x) to (t+1,x);
// face with corners (t,x), (t,x+1), (t+1,x), (t+1,x+1).
enum class CellType : int { vertex = 0, xedge = 1, tedge = 2, face = 3 };

struct Cell {
    CellType ty = CellType::vertex;
    int t = 0;
    int x = 0;
    auto operator<=>(const Cell&) const = default;
};

inline int form_degree(CellType ty) {
    switch (ty) {
        case CellType::vertex: return 0;
        case CellType::xedge:
        case CellType::tedge: return 1;
        case CellType::face: return 2;
    }
    return 0;
}

// time stratum: vertices and xedges sit at 2t, tedges and faces at 2t+1
inline int cell_level(const Cell& c) {
    return 2 * c.t + ((c.ty == CellType::tedge || c.ty == CellType::face) ? 1 : 0);
}

template <class S>
struct Sym2 {
    S tt{}, tx{}, xx{};
    S det() const { return tt * xx - tx * tx; }
};

using Sym2Q = Sym2<Rational>;

template <class S>
struct Form {
    int p = 0;
    std::map<Cell, S> a;

    bool is_zero() const { return a.empty(); }
    void add(const Cell& c, const S& v) {
        if (v == scalar_traits<S>::zero()) return;
        auto [it, fresh] = a.emplace(c, v);
        if (!fresh) {
            it->second += v;
            if (it->second == scalar_traits<S>::zero()) a.erase(it);
        }
    }
    S at(const Cell& c) const {
        auto it = a.find(c);
        return it == a.end() ? scalar_traits<S>::zero() : it->second;
    }
    friend Form operator+(Form l, const Form& r) {
        if (l.p != r.p) throw std::invalid_argument("Form: degree mismatch");
        for (const auto& [c, v] : r.a) l.add(c, v);
        return l;
    }
    friend Form operator-(Form l, const Form& r) {
        if (l.p != r.p) throw std::invalid_argument("Form: degree mismatch");
        for (const auto& [c, v] : r.a) l.add(c, -v);
        return l;
    }
    friend Form operator*(Form l, const S& s) {
        if (s == scalar_traits<S>::zero()) return Form{l.p, {}};
        for (auto& [c, v] : l.a) v *= s;
        return l;
    }
    std::optional<int> min_slice() const {
        if (a.empty()) return std::nullopt;
        std::optional<int> m;
        for (const auto& [c, v] : a) m = m ? std::min(*m, c.t) : c.t;
        return m;
    }
    std::optional<int> max_slice() const {
        std::optional<int> m;
        for (const auto& [c, v] : a) {
            int top = c.t + ((c.ty == CellType::tedge || c.ty == CellType::face) ? 1 : 0);
            m = m ? std::max(*m, top) : top;
        }
        return m;
    }
};

struct NonSteppableMetric : std::domain_error {
    explicit NonSteppableMetric(const std::string& w) : std::domain_error(w) {}
};

// A time slab of the cylinder with a per-vertex metric. The codifferential is
// the exact adjoint of the coboundary for the metric-weighted pairings, so
// discrete integration by parts holds with zero error.
template <class S>
class Geometry {
  public:
    int X = 8;
    std::optional<int> slab_lo, slab_hi;  // inclusive vertex-slice bounds
    Sym2<S> flat{scalar_traits<S>::one(), scalar_traits<S>::zero(),
                 -scalar_traits<S>::one()};
    std::map<std::pair<int, int>, Sym2<S>> metric_over;  // vertex -> metric

    int wrap(int x) const { return ((x % X) + X) % X; }

    bool has_slice(int t) const {
        return (!slab_lo || t >= *slab_lo) && (!slab_hi || t <= *slab_hi);
    }
    bool contains(const Cell& c) const {
        switch (c.ty) {
            case CellType::vertex:
            case CellType::xedge: return has_slice(c.t);
            case CellType::tedge:
            case CellType::face: return has_slice(c.t) && has_slice(c.t + 1);
        }
        return false;
    }

    const Sym2<S>& g(int t, int x) const {
        auto it = metric_over.find({t, wrap(x)});
        return it == metric_over.end() ? flat : it->second;
    }
    bool is_flat_at(int t, int x) const { return !metric_over.count({t, wrap(x)}); }

    Sym2<S> g_inv(int t, int x) const {
        const Sym2<S>& m = g(t, x);
        S det = m.det();
        if (det == scalar_traits<S>::zero() || !scalar_traits<S>::is_unit(det))
            throw NonSteppableMetric("degenerate metric");
        S inv_det = scalar_traits<S>::inv(det);
        return {m.xx * inv_det, -m.tx * inv_det, m.tt * inv_det};
    }

    // --- coboundary ---
    Form<S> d(const Form<S>& w) const {
        Form<S> out{w.p + 1, {}};
        if (w.p == 0) {
            for (const auto& [c, v] : w.a) {
                Cell te{CellType::tedge, c.t, c.x};
                if (contains(te)) out.add(te, -v);
                Cell te2{CellType::tedge, c.t - 1, c.x};
                if (contains(te2)) out.add(te2, v);
                Cell xe{CellType::xedge, c.t, c.x};
                if (contains(xe)) out.add(xe, -v);
                Cell xe2{CellType::xedge, c.t, wrap(c.x - 1)};
                if (contains(xe2)) out.add(xe2, v);
            }
        } else if (w.p == 1) {
            for (const auto& [c, v] : w.a) {
                if (c.ty == CellType::xedge) {
                    Cell f{CellType::face, c.t, c.x};
                    if (contains(f)) out.add(f, v);
                    Cell f2{CellType::face, c.t - 1, c.x};
                    if (contains(f2)) out.add(f2, -v);
                } else {
                    Cell f{CellType::face, c.t, c.x};
                    if (contains(f)) out.add(f, -v);
                    Cell f2{CellType::face, c.t, wrap(c.x - 1)};
                    if (contains(f2)) out.add(f2, v);
                }
            }
        } else {
            // top degree
        }
        return out;
    }

    // --- metric weights ---
    Form<S> apply_w1(const Form<S>& w) const {
        Form<S> out{1, {}};
        // group by tail vertex block
        for (const auto& [c, v] : w.a) {
            int t = c.t, x = c.x;
            Sym2<S> wi = g_inv(t, x);
            Cell te{CellType::tedge, t, x}, xe{CellType::xedge, t, x};
            bool has_te = contains(te);
            if (c.ty == CellType::tedge) {
                out.add(te, wi.tt * v);
                out.add(xe, wi.tx * v);
            } else if (c.ty == CellType::xedge) {
                if (has_te) out.add(te, wi.tx * v);
                out.add(xe, wi.xx * v);
            } else {
                throw std::invalid_argument("apply_w1: not a 1-form");
            }
        }
        return out;
    }

    Form<S> apply_w1_inv(const Form<S>& w) const {
        Form<S> out{1, {}};
        for (const auto& [c, v] : w.a) {
            int t = c.t, x = c.x;
            Cell te{CellType::tedge, t, x}, xe{CellType::xedge, t, x};
            if (contains(te)) {
                const Sym2<S>& m = g(t, x);  // inverse of the g^{-1} block
                if (c.ty == CellType::tedge) {
                    out.add(te, m.tt * v);
                    out.add(xe, m.tx * v);
                } else {
                    out.add(te, m.tx * v);
                    out.add(xe, m.xx * v);
                }
            } else {
                // clipped 1x1 block [g^xx]
                Sym2<S> wi = g_inv(t, x);
                if (c.ty != CellType::xedge) throw std::invalid_argument("w1_inv: clipped tedge");
                out.add(xe, scalar_traits<S>::inv(wi.xx) * v);
            }
        }
        return out;
    }

    S w2(int t, int x) const {
        Sym2<S> m = g(t, x);
        return scalar_traits<S>::inv(m.det());
    }

    // adjoint incidence maps
    Form<S> d0t(const Form<S>& w) const {
        Form<S> out{0, {}};
        for (const auto& [c, v] : w.a) {
            if (c.ty == CellType::tedge) {
                out.add({CellType::vertex, c.t + 1, c.x}, v);
                out.add({CellType::vertex, c.t, c.x}, -v);
            } else {
                out.add({CellType::vertex, c.t, wrap(c.x + 1)}, v);
                out.add({CellType::vertex, c.t, c.x}, -v);
            }
        }
        return out;
    }

    Form<S> d1t(const Form<S>& w) const {
        Form<S> out{1, {}};
        for (const auto& [c, v] : w.a) {
            Cell xe_b{CellType::xedge, c.t, c.x};
            Cell xe_t{CellType::xedge, c.t + 1, c.x};
            Cell te_l{CellType::tedge, c.t, c.x};
            Cell te_r{CellType::tedge, c.t, wrap(c.x + 1)};
            out.add(xe_b, v);
            out.add(xe_t, -v);
            out.add(te_l, -v);
            out.add(te_r, v);
        }
        return out;
    }

    // --- codifferential: delta_p = W_{p-1}^{-1} d^T W_p ---
    Form<S> delta(const Form<S>& w) const {
        if (w.p == 1) return d0t(apply_w1(w));
        if (w.p == 2) {
            Form<S> scaled{2, {}};
            for (const auto& [c, v] : w.a) scaled.add(c, w2(c.t, c.x) * v);
            return apply_w1_inv(d1t(scaled));
        }
        return Form<S>{w.p - 1, {}};
    }

    Form<S> box(const Form<S>& w) const {
        Form<S> out{w.p, {}};
        if (w.p < 2) out = out + delta(d(w));
        if (w.p > 0) out = out + d(delta(w));
        return out;
    }

    // metric-weighted symmetric pairing <.,.>_p
    S pairing(const Form<S>& a, const Form<S>& b) const {
        if (a.p != b.p) throw std::invalid_argument("pairing: degree mismatch");
        S s = scalar_traits<S>::zero();
        if (a.p == 0) {
            for (const auto& [c, v] : a.a) s += v * b.at(c);
        } else if (a.p == 2) {
            for (const auto& [c, v] : a.a) s += v * w2(c.t, c.x) * b.at(c);
        } else {
            Form<S> wb = apply_w1(b);
            for (const auto& [c, v] : a.a) s += v * wb.at(c);
        }
        return s;
    }

    // sharp time cut: keep cells whose anchor slice is >= t0 (upper) or < t0
    Form<S> cut(const Form<S>& w, int t0, bool upper) const {
        Form<S> out{w.p, {}};
        for (const auto& [c, v] : w.a)
            if ((c.t >= t0) == upper) out.add(c, v);
        return out;
    }

    Form<S> restrict_band(const Form<S>& w, int t_lo, int t_hi) const {
        Form<S> out{w.p, {}};
        for (const auto& [c, v] : w.a)
            if (c.t >= t_lo && c.t <= t_hi) out.add(c, v);
        return out;
    }
};

// Retarded/advanced solves of box u = f by slice stepping: the unknown group
// of one cell type at slice t is pinned by the rows of the same cell type one
// slice towards the source. Per-group blocks are factored once and cached;
// flat interior slices share a factorization.
template <class S>
class GreenSolver {
  public:
    GreenSolver(const Geometry<S>& geo, int p, bool retarded)
        : geo_(&geo), p_(p), retarded_(retarded) {
        if (p == 0)
            types_ = {CellType::vertex};
        else if (p == 1)
            types_ = {CellType::xedge, CellType::tedge};
        else
            types_ = {CellType::face};
    }

    // Values are exact on all cells with slice between the source support and
    // the horizon (inclusive); the solution continues by the homogeneous
    // recursion beyond it.
    Form<S> apply(const Form<S>& src, int horizon) {
        if (src.is_zero()) return Form<S>{p_, {}};
        for (const auto& [c, v] : src.a)
            if (!geo_->contains(c)) throw std::invalid_argument("green: source outside region");
        Form<S> u{p_, {}};
        int lvl_min = 1 << 30, lvl_max = -(1 << 30);
        for (const auto& [c, v] : src.a) {
            lvl_min = std::min(lvl_min, cell_level(c));
            lvl_max = std::max(lvl_max, cell_level(c));
        }
        if (retarded_) {
            for (int lvl = lvl_min + 2; lvl <= 2 * horizon + 1; ++lvl) step(src, u, lvl);
        } else {
            for (int lvl = lvl_max - 2; lvl >= 2 * horizon; --lvl) step(src, u, lvl);
        }
        return u;
    }

  private:
    void step(const Form<S>& src, Form<S>& u, int lvl) {
        // unknown group: cells of type ty at slice tu with cell_level == lvl
        for (CellType ty : types_) {
            int off = (ty == CellType::tedge || ty == CellType::face) ? 1 : 0;
            if ((lvl - off) % 2 != 0) continue;
            int tu = (lvl - off) / 2;
            int tr = retarded_ ? tu - 1 : tu + 1;
            std::vector<Cell> unknowns = group_cells(ty, tu);
            if (unknowns.empty()) continue;
            std::vector<Cell> rows = group_cells(ty, tr);
            if (rows.empty()) {
                // determining rows outside the region: causal start, group stays zero
                continue;
            }
            // residual on the row group
            Form<S> band = geo_->restrict_band(u, tr - 2, tr + 2);
            Form<S> bu = geo_->box(band);
            Vec<S> rhs(rows.size());
            for (size_t i = 0; i < rows.size(); ++i) rhs[i] = src.at(rows[i]) - bu.at(rows[i]);
            const Echelon<S>& blk = block(ty, tu, tr);
            auto sol = blk.solve(rhs);
            if (!sol) throw NonSteppableMetric("green: inconsistent step block");
            for (size_t i = 0; i < unknowns.size(); ++i) u.add(unknowns[i], (*sol)[i]);
        }
    }

    std::vector<Cell> group_cells(CellType ty, int t) const {
        std::vector<Cell> cells;
        Cell probe{ty, t, 0};
        if (!geo_->contains(probe)) return cells;
        for (int x = 0; x < geo_->X; ++x) cells.push_back({ty, t, x});
        return cells;
    }

    bool flat_near(int t) const {
        for (int s = t - 3; s <= t + 3; ++s) {
            if (geo_->slab_lo && s < *geo_->slab_lo + 1 && s >= *geo_->slab_lo - 1) return false;
            if (geo_->slab_hi && s > *geo_->slab_hi - 1 && s <= *geo_->slab_hi + 1) return false;
            for (int x = 0; x < geo_->X; ++x)
                if (!geo_->is_flat_at(s, x)) return false;
        }
        return true;
    }

    const Echelon<S>& block(CellType ty, int tu, int tr) {
        long key_t = flat_near(tu) && flat_near(tr) ? LONG_MIN : tu;
        auto key = std::tuple<int, long>(static_cast<int>(ty), key_t);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;

        std::vector<Cell> unknowns = group_cells(ty, tu);
        std::vector<Cell> rows = group_cells(ty, tr);
        std::vector<Triplet<S>> trip;
        for (int j = 0; j < static_cast<int>(unknowns.size()); ++j) {
            Form<S> delta{p_, {}};
            delta.add(unknowns[j], scalar_traits<S>::one());
            Form<S> col = geo_->box(delta);
            for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
                S v = col.at(rows[i]);
                if (!(v == scalar_traits<S>::zero())) trip.push_back({i, j, v});
            }
        }
        SparseMat<S> b = SparseMat<S>::from_triplets(static_cast<int>(rows.size()),
                                                     static_cast<int>(unknowns.size()),
                                                     std::move(trip));
        Echelon<S> e(b);
        if (e.column_stuck() || e.rank() != static_cast<int>(unknowns.size()))
            throw NonSteppableMetric("green: singular step block at slice " + std::to_string(tu));
        return cache_.emplace(key, std::move(e)).first->second;
    }

    const Geometry<S>* geo_;
    int p_;
    bool retarded_;
    std::vector<CellType> types_;
    std::map<std::tuple<int, long>, Echelon<S>> cache_;
};

}  // namespace rce
