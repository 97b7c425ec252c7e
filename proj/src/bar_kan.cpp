#include "rce/bar_kan.hpp"

#include <stdexcept>

#include "rce/linalg.hpp"

namespace rce {

DerivedSymbol node_symbol(int level, Obj n, int deg, int idx) {
    return {level, false, identity_of(n), deg, idx};
}
DerivedSymbol edge_symbol(int level, Mor f, int deg, int idx) {
    if (is_identity(f)) throw std::invalid_argument("edge_symbol: identity morphism");
    return {level, true, f, deg, idx};
}

std::string symbol_name(const RceDiagram& d, const DerivedSymbol& s) {
    std::string base = d.at(s.carrier())->label(s.deg, s.idx);
    std::string slot = s.edge ? name(s.mor) : name(s.carrier());
    return "(" + std::to_string(s.level) + "," + slot + "," + base + ")";
}

void add_term(DerivedElement& e, const DerivedSymbol& s, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = e.emplace(s, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) e.erase(it);
    }
}

DerivedElement add(const DerivedElement& a, const DerivedElement& b) {
    DerivedElement r = a;
    for (const auto& [s, c] : b) add_term(r, s, c);
    return r;
}

DerivedElement scale(DerivedElement a, const Rational& s) {
    if (s.is_zero()) return {};
    for (auto& [k, c] : a) c *= s;
    return a;
}

bool element_is_zero(const DerivedElement& e) { return e.empty(); }

DerivedElement tilde_differential(const RceDiagram& d, const DerivedElement& e) {
    DerivedElement out;
    for (const auto& [s, c] : e) {
        const ComplexPtr& carrier = d.at(s.carrier());
        // horizontal: inherited differential of the carrier complex
        for (const auto& t : carrier->diff(s.deg).triplets()) {
            if (t.c != s.idx) continue;
            DerivedSymbol h = s;
            h.deg = s.deg - 1;
            h.idx = t.r;
            add_term(out, h, c * t.v);
        }
        if (!s.edge) continue;
        // vertical: delta(n,f,x) = (-1)^{|x|} ((n+L(f), source f, x) - (n, target f, X(f)x))
        Rational sgn(s.deg % 2 == 0 ? 1 : -1);
        add_term(out, node_symbol(s.level + localize(s.mor), source(s.mor), s.deg, s.idx), c * sgn);
        const ChainMap f = d.map_of(s.mor);
        for (const auto& t : f.component(s.deg).triplets()) {
            if (t.c != s.idx) continue;
            add_term(out, node_symbol(s.level, target(s.mor), s.deg, t.r), c * sgn * t.v * Rational(-1));
        }
    }
    return out;
}

DerivedElement rce_lin(const DerivedElement& e, int k) {
    DerivedElement out;
    for (const auto& [s, c] : e) {
        DerivedSymbol t = s;
        t.level += k;
        out.emplace(t, c);
    }
    return out;
}

DerivedElement iota(const RceDiagram& d, int deg, const QVec& x) {
    DerivedElement out;
    for (int i = 0; i < static_cast<int>(x.size()); ++i)
        add_term(out, node_symbol(0, Obj::M, deg, i), x[i]);
    (void)d;
    return out;
}

DerivedElement iota_basis(int deg, int idx) {
    DerivedElement out;
    add_term(out, node_symbol(0, Obj::M, deg, idx), Rational(1));
    return out;
}

GradedVec gv_add(const GradedVec& a, const GradedVec& b) {
    GradedVec r = a;
    for (const auto& [deg, v] : b) {
        auto it = r.find(deg);
        if (it == r.end())
            r[deg] = v;
        else
            it->second = vec_add(it->second, v);
    }
    return r;
}

GradedVec gv_scale(GradedVec a, const Rational& s) {
    for (auto& [deg, v] : a) v = vec_scale(v, s);
    return a;
}

bool gv_is_zero(const GradedVec& e) {
    for (const auto& [deg, v] : e)
        if (!vec_is_zero(v)) return false;
    return true;
}

GradedVec gv_apply(const GradedMap& f, const GradedVec& v) {
    GradedVec out;
    for (const auto& [deg, x] : v) {
        QVec y = f.component(deg).apply(x);
        if (!vec_is_zero(y)) out[deg + f.shift] = std::move(y);
    }
    return out;
}

ChainMap ZAction::power(int k) const {
    ChainMap r = GradedMap::identity(y);
    const ChainMap& step = k >= 0 ? gen : gen_inv;
    for (int i = 0; i < std::abs(k); ++i) r = compose(step, r);
    return r;
}

RceDiagram ZAction::pullback() const {
    std::array<ComplexPtr, 4> objects{y, y, y, y};
    std::array<ChainMap, 4> arrows;
    for (int i = 0; i < 4; ++i) arrows[i] = power(localize(kArrows[i]));
    return RceDiagram(objects, arrows);
}

GradedVec counit_epsilon(const ZAction& z, const DerivedElement& e) {
    GradedVec out;
    for (const auto& [s, c] : e) {
        if (s.edge) continue;
        ChainMap yn = z.power(s.level);
        QVec x(z.y->dim(s.deg), Rational(0));
        x[s.idx] = c;
        GradedVec t;
        t[s.deg] = yn.component(s.deg).apply(x);
        out = gv_add(out, t);
    }
    return out;
}

DerivedElement counit_kappa(const GradedVec& v) {
    DerivedElement out;
    for (const auto& [deg, x] : v)
        for (int i = 0; i < static_cast<int>(x.size()); ++i)
            add_term(out, node_symbol(0, Obj::M, deg, i), x[i]);
    return out;
}

DerivedElement counit_rho(const ZAction& z, const DerivedSymbol& s) {
    DerivedElement out;
    if (s.edge) return out;  // rho(n,f,y) = 0
    auto path = spiral_path({0, Obj::M}, {s.level, s.carrier()});
    Rational outer(s.deg % 2 == 0 ? -1 : 1);  // -(-1)^{|y|}
    QVec x(z.y->dim(s.deg), Rational(0));
    x[s.idx] = Rational(1);
    for (int i = 0; i < static_cast<int>(path.size()); ++i) {
        const SpiralEdge& e = path[i].edge;
        int n_src = edge_source(e).level;
        QVec v = z.power(s.level - n_src).component(s.deg).apply(x);
        Rational c = outer * Rational(i % 2 == 0 ? 1 : -1);
        for (int r = 0; r < static_cast<int>(v.size()); ++r)
            add_term(out, edge_symbol(e.level, e.mor, s.deg, r), c * v[r]);
    }
    return out;
}

namespace {

// morphisms with target n, identities first, then arrows in kArrows order
std::vector<Mor> arrows_into(Obj n) {
    std::vector<Mor> gs{identity_of(n)};
    for (Mor f : kArrows)
        if (target(f) == n) gs.push_back(f);
    return gs;
}

}  // namespace

QRes q_resolution(const RceDiagram& d, Obj n) {
    QRes r;
    r.obj = n;
    std::vector<Mor> gs = arrows_into(n);

    // vertical degree 0 symbols (g, x), then vertical degree 1 symbols (id,f,x)
    for (Mor g : gs) {
        const ComplexPtr& x = d.at(source(g));
        for (int deg : x->degrees())
            for (int i = 0; i < x->dim(deg); ++i) {
                QSymbol s{false, g, deg, i};
                r.pos[s] = static_cast<int>(r.table[deg].size());
                r.table[deg].push_back(s);
            }
    }
    for (Mor f : kArrows) {
        if (target(f) != n) continue;
        const ComplexPtr& x = d.at(source(f));
        for (int deg : x->degrees())
            for (int i = 0; i < x->dim(deg); ++i) {
                QSymbol s{true, f, deg, i};
                r.pos[s] = static_cast<int>(r.table[deg + 1].size());
                r.table[deg + 1].push_back(s);
            }
    }
    // reorder each total degree: vertical 0 first, then vertical 1 (already so
    // by construction order), build labels and the total differential
    std::map<int, std::vector<std::string>> basis;
    for (const auto& [m, syms] : r.table) {
        for (const QSymbol& s : syms) {
            const ComplexPtr& x = d.at(source(s.mor));
            std::string l = s.edge ? "(id," + name(s.mor) + "," : "(" + name(s.mor) + ",";
            basis[m].push_back(l + x->label(s.deg, s.idx) + ")");
        }
    }
    std::map<int, QMat> diffs;
    for (const auto& [m, syms] : r.table) {
        int rows = r.table.count(m - 1) ? static_cast<int>(r.table.at(m - 1).size()) : 0;
        std::vector<Triplet<Rational>> trip;
        for (int col = 0; col < static_cast<int>(syms.size()); ++col) {
            const QSymbol& s = syms[col];
            const ComplexPtr& x = d.at(source(s.mor));
            // horizontal
            for (const auto& t : x->diff(s.deg).triplets()) {
                if (t.c != s.idx) continue;
                QSymbol h = s;
                h.deg = s.deg - 1;
                h.idx = t.r;
                trip.push_back({r.pos.at(h), col, t.v});
            }
            if (!s.edge) continue;
            // delta(id,f,x) = (-1)^{|x|} ((f,x) - (id, X(f)x))
            Rational sgn(s.deg % 2 == 0 ? 1 : -1);
            trip.push_back({r.pos.at(QSymbol{false, s.mor, s.deg, s.idx}), col, sgn});
            const ChainMap f = d.map_of(s.mor);
            for (const auto& t : f.component(s.deg).triplets()) {
                if (t.c != s.idx) continue;
                trip.push_back({r.pos.at(QSymbol{false, identity_of(n), s.deg, t.r}), col,
                                sgn * t.v * Rational(-1)});
            }
        }
        diffs[m] = QMat::from_triplets(rows, static_cast<int>(syms.size()), std::move(trip));
    }
    r.cx = ChainComplex::make(std::move(basis), std::move(diffs));

    const ComplexPtr& xn = d.at(n);
    r.q = GradedMap::zero(r.cx, xn, 0);
    for (const auto& [m, syms] : r.table) {
        std::vector<Triplet<Rational>> trip;
        for (int col = 0; col < static_cast<int>(syms.size()); ++col) {
            const QSymbol& s = syms[col];
            if (s.edge) continue;
            const ChainMap g = d.map_of(s.mor);
            for (const auto& t : g.component(s.deg).triplets())
                if (t.c == s.idx) trip.push_back({t.r, col, t.v});
        }
        r.q.set_component(m, QMat::from_triplets(xn->dim(m), static_cast<int>(syms.size()),
                                                 std::move(trip)));
    }
    r.s = GradedMap::zero(xn, r.cx, 0);
    for (int deg : xn->degrees()) {
        std::vector<Triplet<Rational>> trip;
        for (int i = 0; i < xn->dim(deg); ++i)
            trip.push_back({r.pos.at(QSymbol{false, identity_of(n), deg, i}), i, Rational(1)});
        r.s.set_component(deg, QMat::from_triplets(r.cx->dim(deg), xn->dim(deg), std::move(trip)));
    }
    return r;
}

ChainMap q_functor_map(const RceDiagram& d, const QRes& from, const QRes& to, Mor h) {
    if (source(h) != from.obj || target(h) != to.obj)
        throw std::invalid_argument("q_functor_map: endpoint mismatch");
    ChainMap r = GradedMap::zero(from.cx, to.cx, 0);
    for (const auto& [m, syms] : from.table) {
        std::vector<Triplet<Rational>> trip;
        for (int col = 0; col < static_cast<int>(syms.size()); ++col) {
            QSymbol s = syms[col];
            if (!s.edge) {
                // (g,x) -> (h.g, x); h.g is h when g = id, else g when h = id
                Mor hg;
                if (is_identity(h))
                    hg = s.mor;
                else if (is_identity(s.mor))
                    hg = h;
                else
                    throw std::logic_error("q_functor_map: non-composable pair");
                trip.push_back({to.pos.at(QSymbol{false, hg, s.deg, s.idx}), col, Rational(1)});
            } else {
                if (!is_identity(h)) throw std::logic_error("q_functor_map: edge under non-identity");
                trip.push_back({to.pos.at(s), col, Rational(1)});
            }
        }
        r.set_component(m, QMat::from_triplets(to.cx->dim(m), static_cast<int>(syms.size()),
                                               std::move(trip)));
    }
    (void)d;
    return r;
}

DerivedElement derived_unit(const QSymbol& s) {
    DerivedElement out;
    if (!s.edge)
        add_term(out, node_symbol(localize(s.mor), source(s.mor), s.deg, s.idx), Rational(1));
    else
        add_term(out, edge_symbol(0, s.mor, s.deg, s.idx), Rational(1));
    return out;
}

GradedMap sq_homotopy_witness(const QRes& r) {
    GradedMap rhs = compose(r.s, r.q) - GradedMap::identity(r.cx);
    LinearSystem sys;
    std::map<std::tuple<int, int, int>, int> var;  // (deg, row, col)
    const ChainComplex& c = *r.cx;
    for (int m = c.lo(); m <= c.hi(); ++m)
        for (int i = 0; i < c.dim(m + 1); ++i)
            for (int j = 0; j < c.dim(m); ++j) var[{m, i, j}] = sys.new_var();
    // dH + Hd = rhs, componentwise at each degree m: d_{m+1} H_m + H_{m-1} d_m = rhs_m
    for (int m = c.lo() - 1; m <= c.hi() + 1; ++m) {
        QMat dm1 = c.diff(m + 1);
        QMat dm = c.diff(m);
        QMat rm = rhs.component(m);
        for (int i = 0; i < c.dim(m); ++i)
            for (int j = 0; j < c.dim(m); ++j) {
                for (const auto& e : dm1.triplets())
                    if (e.r == i) sys.add_term(e.v, var.at({m, e.c, j}));
                for (const auto& e : dm.triplets())
                    if (e.c == j) sys.add_term(e.v, var.at({m - 1, i, e.r}));
                sys.end_equation(rm.at(i, j));
            }
    }
    auto sol = sys.solve_system();
    if (!sol) throw std::logic_error("sq_homotopy_witness: no homotopy (internal invariant)");
    GradedMap h = GradedMap::zero(r.cx, r.cx, 1);
    for (int m = c.lo(); m <= c.hi(); ++m) {
        std::vector<Triplet<Rational>> trip;
        for (int i = 0; i < c.dim(m + 1); ++i)
            for (int j = 0; j < c.dim(m); ++j) {
                Rational v = (*sol)[var.at({m, i, j})];
                if (!v.is_zero()) trip.push_back({i, j, v});
            }
        h.set_component(m, QMat::from_triplets(c.dim(m + 1), c.dim(m), std::move(trip)));
    }
    return h;
}

ComplexPtr coker_stage(const RceDiagram& d, bool right_side, int p) {
    // ray nodes k = 0..p at coordinates base +/- k, edges f_k joining node k to
    // node k-1 (node -1 being the divided-out (0,M))
    const int base = spiral_coord({0, Obj::M});
    auto node_of = [&](int k) { return node_at_coord(right_side ? base + 1 + k : base - 1 - k); };
    auto edge_of = [&](int k) {
        return right_side ? edge_between(base + k) : edge_between(base - 1 - k);
    };

    struct Sym {
        bool edge;
        int k;
        int deg;
        int idx;
        auto operator<=>(const Sym&) const = default;
    };
    std::map<int, std::vector<Sym>> table;
    std::map<Sym, int> pos;
    auto carrier = [&](const Sym& s) -> ComplexPtr {
        return s.edge ? d.at(source(edge_of(s.k).mor)) : d.at(node_of(s.k).obj);
    };
    for (int k = 0; k <= p; ++k) {
        ComplexPtr x = d.at(node_of(k).obj);
        for (int deg : x->degrees())
            for (int i = 0; i < x->dim(deg); ++i) {
                Sym s{false, k, deg, i};
                pos[s] = static_cast<int>(table[deg].size());
                table[deg].push_back(s);
            }
    }
    for (int k = 0; k <= p; ++k) {
        ComplexPtr x = d.at(source(edge_of(k).mor));
        for (int deg : x->degrees())
            for (int i = 0; i < x->dim(deg); ++i) {
                Sym s{true, k, deg, i};
                pos[s] = static_cast<int>(table[deg + 1].size());
                table[deg + 1].push_back(s);
            }
    }
    std::map<int, std::vector<std::string>> basis;
    for (const auto& [m, syms] : table)
        for (const Sym& s : syms)
            basis[m].push_back((s.edge ? "e" : "n") + std::to_string(s.k) + ":" +
                               carrier(s)->label(s.deg, s.idx));

    auto node_index_at = [&](const SpiralNode& nd) -> int {
        int c = spiral_coord(nd);
        int k = right_side ? c - base - 1 : base - 1 - c;
        return k;  // -1 means the divided-out (0,M)... computed below
    };

    std::map<int, QMat> diffs;
    for (const auto& [m, syms] : table) {
        int rows = table.count(m - 1) ? static_cast<int>(table.at(m - 1).size()) : 0;
        std::vector<Triplet<Rational>> trip;
        for (int col = 0; col < static_cast<int>(syms.size()); ++col) {
            const Sym& s = syms[col];
            ComplexPtr x = carrier(s);
            for (const auto& t : x->diff(s.deg).triplets()) {
                if (t.c != s.idx) continue;
                Sym h = s;
                h.deg = s.deg - 1;
                h.idx = t.r;
                trip.push_back({pos.at(h), col, t.v});
            }
            if (!s.edge) continue;
            SpiralEdge e = edge_of(s.k);
            Rational sgn(s.deg % 2 == 0 ? 1 : -1);
            int ks = node_index_at(edge_source(e));
            if (ks >= 0 && ks <= p)
                trip.push_back({pos.at(Sym{false, ks, s.deg, s.idx}), col, sgn});
            int kt = node_index_at(edge_target(e));
            if (kt >= 0 && kt <= p) {
                const ChainMap f = d.map_of(e.mor);
                for (const auto& t : f.component(s.deg).triplets())
                    if (t.c == s.idx)
                        trip.push_back({pos.at(Sym{false, kt, s.deg, t.r}), col,
                                        sgn * t.v * Rational(-1)});
            }
        }
        diffs[m] = QMat::from_triplets(rows, static_cast<int>(syms.size()), std::move(trip));
    }
    return ChainComplex::make(std::move(basis), std::move(diffs));
}

bool coker_acyclicity_check(const RceDiagram& d, int p_max) {
    if (!d.check_homotopy_time_slice())
        throw std::invalid_argument("coker_acyclicity_check: diagram fails homotopy time-slice");
    for (int side = 0; side < 2; ++side)
        for (int p = 0; p <= p_max; ++p)
            if (!homology_dims(*coker_stage(d, side == 0, p)).empty()) return false;
    return true;
}

BicomplexPtr general_bar_bicomplex(const FinCat& cat, const FinDiagram& x, int d, int m_max) {
    // symbols per row m: (g, f_1..f_m, x) with tgt g = d, tgt f_1 = src g,
    // chained, all f_i non-identity
    struct Sym {
        std::vector<int> word;  // g, f_1..f_m
        int deg, idx;
    };
    std::vector<std::vector<Sym>> rows(m_max + 1);
    std::vector<std::vector<int>> words_prev;
    for (int g = 0; g < static_cast<int>(cat.mors.size()); ++g)
        if (cat.mors[g].tgt == d) words_prev.push_back({g});
    for (int m = 0; m <= m_max; ++m) {
        for (const auto& w : words_prev) {
            int src_last = cat.mors[w.back()].src;
            ComplexPtr cx = x.at[src_last];
            for (int deg = cx->lo(); deg <= cx->hi(); ++deg)
                for (int i = 0; i < cx->dim(deg); ++i) rows[m].push_back({w, deg, i});
        }
        if (m == m_max) break;
        std::vector<std::vector<int>> next;
        for (const auto& w : words_prev) {
            int src_last = cat.mors[w.back()].src;
            for (int f = 0; f < static_cast<int>(cat.mors.size()); ++f) {
                if (cat.mors[f].is_id || cat.mors[f].tgt != src_last) continue;
                auto w2 = w;
                w2.push_back(f);
                next.push_back(w2);
            }
        }
        words_prev = std::move(next);
    }

    auto find_sym = [&](int m, const std::vector<int>& w, int deg, int idx) -> int {
        for (int i = 0; i < static_cast<int>(rows[m].size()); ++i) {
            const Sym& s = rows[m][i];
            if (s.word == w && s.deg == deg && s.idx == idx) return i;
        }
        throw std::logic_error("general_bar: missing symbol");
    };

    std::map<Bicomplex::Key, std::vector<std::string>> basis;
    std::map<Bicomplex::Key, std::map<int, int>> col_of;  // (m,deg) -> row index -> column
    for (int m = 0; m <= m_max; ++m)
        for (int i = 0; i < static_cast<int>(rows[m].size()); ++i) {
            const Sym& s = rows[m][i];
            std::string l = "w";
            for (int f : s.word) l += "." + std::to_string(f);
            l += "|" + std::to_string(s.deg) + ":" + std::to_string(s.idx);
            Bicomplex::Key k{m, s.deg};
            col_of[k][i] = static_cast<int>(basis[k].size());
            basis[k].push_back(l);
        }

    std::map<Bicomplex::Key, std::vector<Triplet<Rational>>> dv_t, dh_t;
    auto cell_dim = [&](int m, int deg) {
        auto it = basis.find({m, deg});
        return it == basis.end() ? 0 : static_cast<int>(it->second.size());
    };
    for (int m = 0; m <= m_max; ++m)
        for (int i = 0; i < static_cast<int>(rows[m].size()); ++i) {
            const Sym& s = rows[m][i];
            Bicomplex::Key k{m, s.deg};
            int col = col_of[k][i];
            int src_last = cat.mors[s.word.back()].src;
            ComplexPtr cx = x.at[src_last];
            // horizontal: plain differential of x
            for (const auto& t : cx->diff(s.deg).triplets()) {
                if (t.c != s.idx) continue;
                int row = find_sym(m, s.word, s.deg - 1, t.r);
                dh_t[k].push_back({col_of[{m, s.deg - 1}][row], col, t.v});
            }
            if (m == 0) continue;
            // vertical alternating sum
            Rational sgn(s.deg % 2 == 0 ? 1 : -1);
            {  // (g.f1, f2.., x)
                auto w = s.word;
                int gf = cat.compose(w[0], w[1]);
                if (gf < 0) throw std::logic_error("general_bar: non-composable");
                std::vector<int> w2{gf};
                for (size_t j = 2; j < w.size(); ++j) w2.push_back(w[j]);
                int row = find_sym(m - 1, w2, s.deg, s.idx);
                dv_t[k].push_back({col_of[{m - 1, s.deg}][row], col, sgn});
            }
            for (int j = 1; j + 1 < static_cast<int>(s.word.size()); ++j) {
                auto w = s.word;
                int ff = cat.compose(w[j], w[j + 1]);
                if (ff < 0) throw std::logic_error("general_bar: non-composable");
                std::vector<int> w2(w.begin(), w.begin() + j);
                w2.push_back(ff);
                for (size_t l = j + 2; l < w.size(); ++l) w2.push_back(w[l]);
                // a composite of non-identities could be an identity only with
                // inverses, which these categories do not have
                Rational c = sgn * Rational(j % 2 == 0 ? 1 : -1);
                int row = find_sym(m - 1, w2, s.deg, s.idx);
                dv_t[k].push_back({col_of[{m - 1, s.deg}][row], col, c});
            }
            {  // (g, f1..f_{m-1}, X(f_m) x)
                auto w = s.word;
                int fm = w.back();
                std::vector<int> w2(w.begin(), w.end() - 1);
                Rational c = sgn * Rational(m % 2 == 0 ? 1 : -1);
                for (const auto& t : x.map_of[fm].component(s.deg).triplets()) {
                    if (t.c != s.idx) continue;
                    int row = find_sym(m - 1, w2, s.deg, t.r);
                    dv_t[k].push_back({col_of[{m - 1, s.deg}][row], col, c * t.v});
                }
            }
        }

    std::map<Bicomplex::Key, QMat> dv, dh;
    for (const auto& [k, b] : basis) {
        auto [m, deg] = k;
        dv[k] = QMat::from_triplets(cell_dim(m - 1, deg), static_cast<int>(b.size()),
                                    dv_t.count(k) ? dv_t[k] : std::vector<Triplet<Rational>>{});
        dh[k] = QMat::from_triplets(cell_dim(m, deg - 1), static_cast<int>(b.size()),
                                    dh_t.count(k) ? dh_t[k] : std::vector<Triplet<Rational>>{});
    }
    return Bicomplex::make(std::move(basis), std::move(dv), std::move(dh));
}

FinCat rce_fincat() {
    FinCat c;
    c.n_obj = 4;
    for (int i = 0; i < 8; ++i) {
        Mor f = static_cast<Mor>(i);
        c.mors.push_back({static_cast<int>(source(f)), static_cast<int>(target(f)), is_identity(f)});
    }
    c.id_of = {0, 1, 2, 3};
    c.comp.assign(8, std::vector<int>(8, -1));
    for (int g = 0; g < 8; ++g)
        for (int f = 0; f < 8; ++f) {
            if (c.mors[g].src != c.mors[f].tgt) continue;
            if (c.mors[g].is_id)
                c.comp[g][f] = f;
            else if (c.mors[f].is_id)
                c.comp[g][f] = g;
            // two non-identities are never composable in this category
        }
    return c;
}

FinDiagram rce_findiagram(const RceDiagram& d) {
    FinDiagram x;
    x.at.resize(4);
    for (int i = 0; i < 4; ++i) x.at[i] = d.at(static_cast<Obj>(i));
    for (int i = 0; i < 8; ++i) x.map_of.push_back(d.map_of(static_cast<Mor>(i)));
    return x;
}

}  // namespace rce
