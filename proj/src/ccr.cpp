#include "rce/ccr.hpp"

#include <deque>
#include <stdexcept>

namespace rce {

CcrElement ccr_unit() { return {{Word{}, Rational(1)}}; }
CcrElement ccr_gen(int id) { return {{Word{id}, Rational(1)}}; }

CcrElement ccr_add(const CcrElement& a, const CcrElement& b) {
    CcrElement r = a;
    for (const auto& [w, c] : b) {
        auto [it, fresh] = r.emplace(w, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) r.erase(it);
        }
    }
    return r;
}

CcrElement ccr_scale(CcrElement a, const Rational& s) {
    if (s.is_zero()) return {};
    for (auto& [w, c] : a) c *= s;
    return a;
}

bool ccr_is_zero(const CcrElement& a) { return a.empty(); }

namespace {

void accum(CcrElement& r, const Word& w, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = r.emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) r.erase(it);
    }
}

}  // namespace

CcrElement ccr_normalize(const CcrConfig& cfg, const Word& w0, const Rational& c0) {
    CcrElement out;
    std::deque<std::pair<Word, Rational>> work{{w0, c0}};
    while (!work.empty()) {
        auto [w, c] = std::move(work.front());
        work.pop_front();
        if (c.is_zero()) continue;
        if (static_cast<int>(w.size()) > cfg.cap) throw CapOverflow();
        bool reduced = false;
        for (size_t i = 0; i + 1 < w.size(); ++i) {
            int a = w[i], b = w[i + 1];
            if (cfg.less(a, b)) continue;
            int da = cfg.gens[a].degree, db = cfg.gens[b].degree;
            if (cfg.equal_key(a, b)) {
                if (da % 2 == 0) continue;  // even squares are normal
                // odd square: a a = lambda_q tau(a,a) / 2
                Word rest;
                rest.insert(rest.end(), w.begin(), w.begin() + i);
                rest.insert(rest.end(), w.begin() + i + 2, w.end());
                work.push_back({std::move(rest),
                                c * cfg.lambda_q * cfg.tau(a, b) * Rational(1, 2)});
                reduced = true;
                break;
            }
            // swap with Koszul sign, plus the tau term of length - 2
            Word sw = w;
            std::swap(sw[i], sw[i + 1]);
            Rational koszul((da % 2 != 0 && db % 2 != 0) ? -1 : 1);
            work.push_back({std::move(sw), c * koszul});
            Word rest;
            rest.insert(rest.end(), w.begin(), w.begin() + i);
            rest.insert(rest.end(), w.begin() + i + 2, w.end());
            work.push_back({std::move(rest), c * cfg.lambda_q * cfg.tau(a, b)});
            reduced = true;
            break;
        }
        if (!reduced) accum(out, w, c);
    }
    return out;
}

CcrElement ccr_mul(const CcrConfig& cfg, const CcrElement& a, const CcrElement& b) {
    CcrElement out;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) {
            if (static_cast<int>(wa.size() + wb.size()) > cfg.cap) throw CapOverflow();
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            out = ccr_add(out, ccr_normalize(cfg, w, ca * cb));
        }
    return out;
}

CcrElement ccr_differential(const CcrConfig& cfg, const CcrElement& a) {
    CcrElement out;
    for (const auto& [w, c] : a) {
        int sign_deg = 0;
        for (size_t i = 0; i < w.size(); ++i) {
            Rational koszul(sign_deg % 2 == 0 ? 1 : -1);
            for (const auto& [g, cg] : cfg.diff(w[i])) {
                Word sub = w;
                sub[i] = g;
                out = ccr_add(out, ccr_normalize(cfg, sub, c * koszul * cg));
            }
            sign_deg += cfg.gens[w[i]].degree;
        }
    }
    return out;
}

CcrMorphism ccr_map(const CcrConfig& src, const CcrConfig& tgt,
                    std::function<std::map<int, Rational>(int)> on_gen) {
    // degree preservation and tau preservation on all generator pairs
    for (int i = 0; i < static_cast<int>(src.gens.size()); ++i)
        for (const auto& [g, c] : on_gen(i))
            if (tgt.gens[g].degree != src.gens[i].degree)
                throw TauNotPreserved("ccr_map: generator image degree mismatch");
    auto pair_tau = [&](const std::map<int, Rational>& fa, const std::map<int, Rational>& fb) {
        Rational s(0);
        for (const auto& [ga, ca] : fa)
            for (const auto& [gb, cb] : fb) s += ca * cb * tgt.tau(ga, gb);
        return s;
    };
    for (int i = 0; i < static_cast<int>(src.gens.size()); ++i)
        for (int j = 0; j < static_cast<int>(src.gens.size()); ++j)
            if (pair_tau(on_gen(i), on_gen(j)) != src.tau(i, j))
                throw TauNotPreserved("ccr_map: tau not preserved on pair (" + src.gens[i].label +
                                      ", " + src.gens[j].label + ")");
    return CcrMorphism{&src, &tgt, std::move(on_gen)};
}

CcrElement ccr_apply(const CcrMorphism& f, const CcrElement& a) {
    CcrElement out;
    for (const auto& [w, c] : a) {
        CcrElement prod = ccr_scale(ccr_unit(), c);
        for (int g : w) {
            CcrElement img;
            for (const auto& [h, ch] : f.on_gen(g)) img = ccr_add(img, ccr_scale(ccr_gen(h), ch));
            prod = ccr_mul(*f.tgt, prod, img);
        }
        out = ccr_add(out, prod);
    }
    return out;
}

std::string ccr_to_string(const CcrConfig& cfg, const CcrElement& a) {
    if (a.empty()) return "0\n";
    std::string s;
    for (const auto& [w, c] : a) {
        s += c.str() + " * [";
        for (size_t i = 0; i < w.size(); ++i) {
            if (i) s += ", ";
            s += cfg.gens[w[i]].label;
        }
        s += "]\n";
    }
    return s;
}

}  // namespace rce
