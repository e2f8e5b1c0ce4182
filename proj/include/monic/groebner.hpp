#ifndef MONIC_GROEBNER_HPP
#define MONIC_GROEBNER_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <list>
#include <map>
#include <vector>

#include "monic/matrix.hpp"
#include "monic/poly.hpp"

namespace monic {

struct GroebnerBasis {
    std::vector<MultiPoly> generators;  // monic, sorted ascending by leading term
    MonomialOrder order;
    bool reduced = false;
    std::uint64_t spairs_processed = 0;

    bool is_trivial() const { return generators.size() == 1 && generators[0].is_one(); }
};

struct TimeoutError : Error {
    explicit TimeoutError(const std::string& msg) : Error(msg) {}
};

// Remainder of multivariate division of f by the (not necessarily reduced)
// list of divisors; zero iff f lies in the ideal when the list is a GB.
inline MultiPoly poly_reduce(MultiPoly f, const std::vector<MultiPoly>& divisors) {
    const VarUniverse& u = f.universe();
    MultiPoly rem(u, f.prime());
    while (!f.is_zero()) {
        bool reduced_step = false;
        const Term lt = f.leading();
        for (const auto& g : divisors) {
            if (g.is_zero()) continue;
            if (g.leading().mono.divides(lt.mono)) {
                Monomial q = lt.mono / g.leading().mono;
                std::uint64_t c = (Fp(lt.coeff, f.prime()) / Fp(g.leading().coeff, f.prime())).value();
                f = f.sub_term_mul(c, q, g);
                reduced_step = true;
                break;
            }
        }
        if (!reduced_step) {
            // leading term is irreducible; it migrates to the remainder, which
            // stays sorted because leading terms strictly decrease
            rem.push_term_unchecked(lt.mono, lt.coeff);
            MultiPoly t(u, f.prime());
            t.push_term_unchecked(lt.mono, lt.coeff);
            f = f - t;
        }
    }
    return rem;
}

inline MultiPoly normal_form(const MultiPoly& f, const GroebnerBasis& gb) {
    if (!gb.reduced) throw Error("normal_form: basis is not reduced");
    if (!gb.generators.empty()) f.check_compat(gb.generators.front());
    return poly_reduce(f, gb.generators);
}

namespace gbdetail {

struct Pair {
    std::size_t i, j;
    Monomial lcm;
    int sugar;
};

inline int sugar_of(const MultiPoly& f) { return f.wdeg(); }

}  // namespace gbdetail

// Buchberger with the Gebauer-Moeller pair update, normal selection on
// weighted sugar degree, full inter-reduction at the end. Deterministic for
// fixed input. `budget` (optional) is polled between S-pair reductions and
// aborts with TimeoutError when it returns false.
inline GroebnerBasis reduced_groebner(std::vector<MultiPoly> gens,
                                      const std::function<bool()>& budget = nullptr) {
    gens.erase(std::remove_if(gens.begin(), gens.end(), [](const MultiPoly& f) { return f.is_zero(); }),
               gens.end());
    if (gens.empty()) throw Error("reduced_groebner: no nonzero generators");
    for (const auto& g : gens) gens.front().check_compat(g);
    const VarUniverse u = gens.front().universe();
    const std::uint64_t p = gens.front().prime();

    std::vector<MultiPoly> basis;
    std::vector<gbdetail::Pair> pairs;
    std::uint64_t spairs = 0;

    auto add_pairs_for = [&](std::size_t t) {
        const Monomial& lt = basis[t].leading().mono;
        std::vector<gbdetail::Pair> fresh;
        for (std::size_t i = 0; i < t; ++i) {
            gbdetail::Pair pr;
            pr.i = i;
            pr.j = t;
            pr.lcm = Monomial::lcm(basis[i].leading().mono, lt);
            pr.sugar = std::max(gbdetail::sugar_of(basis[i]) + (pr.lcm / basis[i].leading().mono).wdeg(u),
                                gbdetail::sugar_of(basis[t]) + (pr.lcm / lt).wdeg(u));
            fresh.push_back(pr);
        }
        // Gebauer-Moeller: discard old pairs whose lcm is a proper multiple of lcm(i,t)
        pairs.erase(std::remove_if(pairs.begin(), pairs.end(),
                                   [&](const gbdetail::Pair& pr) {
                                       Monomial l = Monomial::lcm(basis[pr.i].leading().mono,
                                                                  basis[pr.j].leading().mono);
                                       Monomial li = Monomial::lcm(basis[pr.i].leading().mono, lt);
                                       Monomial lj = Monomial::lcm(basis[pr.j].leading().mono, lt);
                                       return lt.divides(l) && grevlex_cmp(li, l, u) != 0 &&
                                              grevlex_cmp(lj, l, u) != 0;
                                   }),
                    pairs.end());
        // among the fresh pairs, drop duplicates by lcm (keep first) and product-criterion pairs
        std::stable_sort(fresh.begin(), fresh.end(), [&](const gbdetail::Pair& a, const gbdetail::Pair& b) {
            return grevlex_cmp(a.lcm, b.lcm, u) < 0;
        });
        std::vector<gbdetail::Pair> kept;
        for (std::size_t a = 0; a < fresh.size(); ++a) {
            bool redundant = false;
            for (std::size_t b = 0; b < fresh.size() && !redundant; ++b) {
                if (b == a) continue;
                if (fresh[b].lcm.divides(fresh[a].lcm) && grevlex_cmp(fresh[b].lcm, fresh[a].lcm, u) != 0)
                    redundant = true;
                if (b < a && fresh[b].lcm == fresh[a].lcm) redundant = true;
            }
            if (redundant) continue;
            if (basis[fresh[a].i].leading().mono.coprime(basis[fresh[a].j].leading().mono)) continue;
            kept.push_back(fresh[a]);
        }
        pairs.insert(pairs.end(), kept.begin(), kept.end());
    };

    for (auto& g : gens) {
        basis.push_back(g.monic());
        add_pairs_for(basis.size() - 1);
    }

    while (!pairs.empty()) {
        if (budget && !budget()) throw TimeoutError("reduced_groebner: budget exceeded");
        // normal selection: minimal sugar, then minimal lcm
        auto best = std::min_element(pairs.begin(), pairs.end(),
                                     [&](const gbdetail::Pair& a, const gbdetail::Pair& b) {
                                         if (a.sugar != b.sugar) return a.sugar < b.sugar;
                                         return grevlex_cmp(a.lcm, b.lcm, u) < 0;
                                     });
        gbdetail::Pair pr = *best;
        pairs.erase(best);
        ++spairs;

        const MultiPoly& f = basis[pr.i];
        const MultiPoly& g = basis[pr.j];
        Monomial mf = pr.lcm / f.leading().mono;
        Monomial mg = pr.lcm / g.leading().mono;
        MultiPoly zero(u, p);
        MultiPoly s = zero.sub_term_mul(p - 1, mf, f).sub_term_mul(1, mg, g);
        MultiPoly r = poly_reduce(s, basis);
        if (r.is_zero()) continue;
        basis.push_back(r.monic());
        add_pairs_for(basis.size() - 1);
        if (basis.back().is_one()) break;  // unit ideal; nothing can shrink further
    }

    // minimalize: drop generators whose leading term is divisible by another's
    std::vector<MultiPoly> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool drop = false;
        for (std::size_t j = 0; j < basis.size() && !drop; ++j) {
            if (i == j) continue;
            const Monomial& li = basis[i].leading().mono;
            const Monomial& lj = basis[j].leading().mono;
            if (lj.divides(li) && (li != lj || j < i)) drop = true;
        }
        if (!drop) minimal.push_back(basis[i]);
    }
    // fully reduce each against the others
    std::vector<MultiPoly> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<MultiPoly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        MultiPoly r = poly_reduce(minimal[i], others);
        if (!r.is_zero()) reduced.push_back(r.monic());
    }
    std::sort(reduced.begin(), reduced.end(), [&](const MultiPoly& a, const MultiPoly& b) {
        return grevlex_cmp(a.leading().mono, b.leading().mono, u) < 0;
    });

    GroebnerBasis gb;
    gb.generators = std::move(reduced);
    gb.reduced = true;
    gb.spairs_processed = spairs;
    return gb;
}

// Brute-force ideal membership below a weighted-degree bound: sets up the
// linear system f = sum h_i g_i with unknown coefficients for the h_i and
// tests solvability over F_p. One-sided: false only means "not found below
// the bound". Small instances only.
inline bool macaulay_membership_oracle(const MultiPoly& f, const std::vector<MultiPoly>& gens,
                                       int degree_bound) {
    if (gens.empty()) throw Error("macaulay_membership_oracle: no generators");
    const VarUniverse u = f.universe();
    const std::uint64_t p = f.prime();
    for (const auto& g : gens) f.check_compat(g);
    if (u.nvars() > 4 || degree_bound > 12) throw Error("macaulay_membership_oracle: instance too large");
    if (degree_bound < f.wdeg()) throw Error("macaulay_membership_oracle: bound below deg f");

    // enumerate monomials of weighted degree <= bound
    std::vector<Monomial> monos;
    Monomial cur(u.nvars());
    std::function<void(int, int)> rec = [&](int var, int slack) {
        if (var == u.nvars()) {
            monos.push_back(cur);
            return;
        }
        int w = u.weight(var);
        for (int e = 0; e * w <= slack; ++e) {
            cur.e[var] = static_cast<std::uint16_t>(e);
            rec(var + 1, slack - e * w);
        }
        cur.e[var] = 0;
    };
    rec(0, degree_bound);

    // column index for each (generator, multiplier monomial); rows = monomials of products
    std::map<std::vector<std::uint16_t>, std::size_t> row_of;
    auto row_index = [&](const Monomial& m) {
        auto it = row_of.find(m.e);
        if (it != row_of.end()) return it->second;
        std::size_t id = row_of.size();
        row_of.emplace(m.e, id);
        return id;
    };
    struct Col {
        std::vector<std::pair<std::size_t, std::uint64_t>> entries;
    };
    std::vector<Col> cols;
    for (const auto& g : gens) {
        for (const auto& m : monos) {
            Col c;
            for (const auto& t : g.terms()) c.entries.push_back({row_index(t.mono * m), t.coeff});
            cols.push_back(std::move(c));
        }
    }
    std::size_t nrows = row_of.size();
    for (const auto& t : f.terms()) row_index(t.mono);
    nrows = row_of.size();

    Matrix<Fp> M(nrows, cols.size(), Fp(0, p));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [r, c] : cols[j].entries) M.at(r, j) = M.at(r, j) + Fp(c, p);
    Matrix<Fp> b(nrows, 1, Fp(0, p));
    for (const auto& t : f.terms()) b.at(row_of[t.mono.e], 0) = Fp(t.coeff, p);

    return solve_affine(M, b).has_value();
}

}  // namespace monic

#endif
