#ifndef MONIC_POLY_HPP
#define MONIC_POLY_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "monic/scalar.hpp"

namespace monic {

// Variable universe c[i][j] with i in 1..blocks, j in 1..slots.
// Variable (i,j) carries weight j; the weighted degree of a monomial is the
// sum of exponent * weight over its variables.
struct VarUniverse {
    int blocks = 0;
    int slots = 0;

    int nvars() const { return blocks * slots; }
    int weight(int var) const { return var % slots + 1; }
    int block(int var) const { return var / slots; }      // 0-based
    int slot(int var) const { return var % slots; }        // 0-based
    int var_index(int block0, int slot0) const { return block0 * slots + slot0; }
    std::string name(int var) const {
        return "c[" + std::to_string(block(var) + 1) + "][" + std::to_string(slot(var) + 1) + "]";
    }
    bool operator==(const VarUniverse& o) const { return blocks == o.blocks && slots == o.slots; }
    bool operator!=(const VarUniverse& o) const { return !(*this == o); }
};

struct Monomial {
    std::vector<std::uint16_t> e;

    explicit Monomial(std::size_t nvars = 0) : e(nvars, 0) {}

    int wdeg(const VarUniverse& u) const {
        int d = 0;
        for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * u.weight(static_cast<int>(i));
        return d;
    }
    bool divides(const Monomial& m) const {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > m.e[i]) return false;
        return true;
    }
    Monomial operator*(const Monomial& m) const {
        Monomial r = *this;
        for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = static_cast<std::uint16_t>(r.e[i] + m.e[i]);
        return r;
    }
    // quotient, caller guarantees divisibility
    Monomial operator/(const Monomial& m) const {
        Monomial r = *this;
        for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = static_cast<std::uint16_t>(r.e[i] - m.e[i]);
        return r;
    }
    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r = a;
        for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = std::max(a.e[i], b.e[i]);
        return r;
    }
    bool coprime(const Monomial& m) const {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0 && m.e[i] != 0) return false;
        return true;
    }
    bool is_one() const {
        return std::all_of(e.begin(), e.end(), [](std::uint16_t x) { return x == 0; });
    }
    bool operator==(const Monomial& m) const { return e == m.e; }
    bool operator!=(const Monomial& m) const { return e != m.e; }
};

// Graded reverse lexicographic order on the weighted grading, variables
// ordered c[1][1] > c[1][2] > ... > c[k][e].
// Returns +1 if a > b, 0 if equal, -1 if a < b.
inline int grevlex_cmp(const Monomial& a, const Monomial& b, const VarUniverse& u) {
    int da = a.wdeg(u), db = b.wdeg(u);
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = a.e.size(); i-- > 0;) {
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
    }
    return 0;
}

struct MonomialOrder {
    // the artifact ships exactly one order; kept as a type for metadata
    std::string kind = "weighted-grevlex";
};

struct Term {
    Monomial mono;
    std::uint64_t coeff;  // nonzero residue in [1, p)
};

// Sparse multivariate polynomial over F_p, terms sorted descending in the
// weighted grevlex order.
class MultiPoly {
   public:
    MultiPoly() = default;
    MultiPoly(VarUniverse universe, std::uint64_t p) : u_(universe), p_(p) {}

    static MultiPoly zero(VarUniverse u, std::uint64_t p) { return MultiPoly(u, p); }
    static MultiPoly constant(VarUniverse u, std::uint64_t p, std::uint64_t c) {
        MultiPoly f(u, p);
        c %= p;
        if (c != 0) f.terms_.push_back({Monomial(u.nvars()), c});
        return f;
    }
    static MultiPoly variable(VarUniverse u, std::uint64_t p, int var, std::uint64_t c = 1) {
        MultiPoly f(u, p);
        c %= p;
        if (c != 0) {
            Monomial m(u.nvars());
            m.e[var] = 1;
            f.terms_.push_back({m, c});
        }
        return f;
    }

    const VarUniverse& universe() const { return u_; }
    std::uint64_t prime() const { return p_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1; }

    const Term& leading() const {
        if (terms_.empty()) throw Error("MultiPoly: leading term of zero");
        return terms_.front();
    }

    int wdeg() const {
        int d = -1;
        for (const auto& t : terms_) d = std::max(d, t.mono.wdeg(u_));
        return d;
    }

    void check_compat(const MultiPoly& o) const {
        if (p_ != o.p_) throw Error("MultiPoly: mixed primes");
        if (u_ != o.u_) throw Error("MultiPoly: variable universe mismatch");
    }

    MultiPoly operator+(const MultiPoly& o) const {
        check_compat(o);
        MultiPoly r(u_, p_);
        r.terms_ = merge(terms_, o.terms_, 1);
        return r;
    }
    MultiPoly operator-(const MultiPoly& o) const {
        check_compat(o);
        MultiPoly r(u_, p_);
        r.terms_ = merge(terms_, o.terms_, p_ - 1);
        return r;
    }

    // f - c * m * g, the reduction kernel
    MultiPoly sub_term_mul(std::uint64_t c, const Monomial& m, const MultiPoly& g) const {
        check_compat(g);
        using u128 = unsigned __int128;
        std::vector<Term> shifted;
        shifted.reserve(g.terms_.size());
        std::uint64_t neg = (p_ - c % p_) % p_;
        for (const auto& t : g.terms_) {
            std::uint64_t cc = static_cast<std::uint64_t>(u128(t.coeff) * neg % p_);
            if (cc != 0) shifted.push_back({t.mono * m, cc});
        }
        MultiPoly r(u_, p_);
        r.terms_ = merge(terms_, shifted, 1);
        return r;
    }

    MultiPoly operator*(const MultiPoly& o) const {
        check_compat(o);
        using u128 = unsigned __int128;
        std::map<std::vector<std::uint16_t>, std::uint64_t> acc;
        for (const auto& a : terms_)
            for (const auto& b : o.terms_) {
                Monomial m = a.mono * b.mono;
                std::uint64_t c = static_cast<std::uint64_t>(u128(a.coeff) * b.coeff % p_);
                auto it = acc.find(m.e);
                if (it == acc.end())
                    acc.emplace(m.e, c);
                else {
                    it->second = (it->second + c) % p_;
                }
            }
        MultiPoly r(u_, p_);
        for (auto& [ev, c] : acc) {
            if (c == 0) continue;
            Monomial m(0);
            m.e = ev;
            r.terms_.push_back({m, c});
        }
        std::sort(r.terms_.begin(), r.terms_.end(),
                  [&](const Term& x, const Term& y) { return grevlex_cmp(x.mono, y.mono, u_) > 0; });
        return r;
    }

    MultiPoly scaled(std::uint64_t c) const {
        using u128 = unsigned __int128;
        c %= p_;
        MultiPoly r(u_, p_);
        if (c == 0) return r;
        r.terms_ = terms_;
        for (auto& t : r.terms_) t.coeff = static_cast<std::uint64_t>(u128(t.coeff) * c % p_);
        return r;
    }

    MultiPoly monic() const {
        if (is_zero()) return *this;
        return scaled(Fp(leading().coeff, p_).inv().value());
    }

    // apply a permutation of the block index i; perm[b] = image of block b (0-based)
    MultiPoly permute_blocks(const std::vector<int>& perm) const {
        MultiPoly r(u_, p_);
        for (const auto& t : terms_) {
            Monomial m(u_.nvars());
            for (int v = 0; v < u_.nvars(); ++v)
                m.e[u_.var_index(perm[u_.block(v)], u_.slot(v))] = t.mono.e[v];
            r.terms_.push_back({m, t.coeff});
        }
        std::sort(r.terms_.begin(), r.terms_.end(),
                  [&](const Term& x, const Term& y) { return grevlex_cmp(x.mono, y.mono, u_) > 0; });
        return r;
    }

    bool operator==(const MultiPoly& o) const {
        if (p_ != o.p_ || u_ != o.u_ || terms_.size() != o.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].coeff != o.terms_[i].coeff || terms_[i].mono != o.terms_[i].mono) return false;
        return true;
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    void push_term_unchecked(Monomial m, std::uint64_t c) { terms_.push_back({std::move(m), c % p_}); }
    void canonicalize() {
        std::sort(terms_.begin(), terms_.end(),
                  [&](const Term& x, const Term& y) { return grevlex_cmp(x.mono, y.mono, u_) > 0; });
        std::vector<Term> out;
        for (auto& t : terms_) {
            if (!out.empty() && out.back().mono == t.mono)
                out.back().coeff = (out.back().coeff + t.coeff) % p_;
            else
                out.push_back(t);
        }
        out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.coeff == 0; }), out.end());
        terms_ = std::move(out);
    }

    // text form: terms joined with '+', each 'coeff*c[i][j]^e*...'
    std::string to_text() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& t : terms_) {
            if (!first) os << "+";
            first = false;
            os << t.coeff;
            for (std::size_t v = 0; v < t.mono.e.size(); ++v)
                if (t.mono.e[v] != 0) os << "*" << u_.name(static_cast<int>(v)) << "^" << t.mono.e[v];
        }
        return os.str();
    }

    static MultiPoly from_text(const std::string& s, VarUniverse u, std::uint64_t p) {
        MultiPoly f(u, p);
        if (s == "0") return f;
        std::size_t pos = 0;
        while (pos < s.size()) {
            std::size_t next = s.find('+', pos);
            std::string chunk = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
            pos = next == std::string::npos ? s.size() : next + 1;
            std::istringstream is(chunk);
            std::uint64_t c;
            is >> c;
            Monomial m(u.nvars());
            char star;
            while (is >> star) {
                if (star != '*') throw Error("MultiPoly: parse error");
                char cch, br;
                int i, j, e;
                is >> cch >> br >> i;
                is >> br >> br >> j;  // "][" then j... need careful parse
                is >> br;             // ']'
                char caret;
                is >> caret >> e;
                m.e[u.var_index(i - 1, j - 1)] = static_cast<std::uint16_t>(m.e[u.var_index(i - 1, j - 1)] + e);
            }
            f.terms_.push_back({m, c % p});
        }
        f.canonicalize();
        return f;
    }

    nlohmann::json to_json() const {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& t : terms_) terms.push_back({{"coeff", t.coeff}, {"exps", t.mono.e}});
        return {{"prime", p_}, {"blocks", u_.blocks}, {"slots", u_.slots}, {"terms", terms}};
    }

    static MultiPoly from_json(const nlohmann::json& j) {
        VarUniverse u{j.at("blocks").get<int>(), j.at("slots").get<int>()};
        MultiPoly f(u, j.at("prime").get<std::uint64_t>());
        for (const auto& t : j.at("terms")) {
            Monomial m(u.nvars());
            auto exps = t.at("exps").get<std::vector<std::uint16_t>>();
            m.e = exps;
            f.terms_.push_back({m, t.at("coeff").get<std::uint64_t>()});
        }
        f.canonicalize();
        return f;
    }

   private:
    // merged = a + scale * b, both sorted descending
    std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, std::uint64_t scale) const {
        using u128 = unsigned __int128;
        std::vector<Term> r;
        r.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            int cmp;
            if (i == a.size())
                cmp = -1;
            else if (j == b.size())
                cmp = 1;
            else
                cmp = grevlex_cmp(a[i].mono, b[j].mono, u_);
            if (cmp > 0) {
                r.push_back(a[i++]);
            } else if (cmp < 0) {
                std::uint64_t c = static_cast<std::uint64_t>(u128(b[j].coeff) * scale % p_);
                if (c != 0) r.push_back({b[j].mono, c});
                ++j;
            } else {
                std::uint64_t c = (a[i].coeff + static_cast<std::uint64_t>(u128(b[j].coeff) * scale % p_)) % p_;
                if (c != 0) r.push_back({a[i].mono, c});
                ++i;
                ++j;
            }
        }
        return r;
    }

    VarUniverse u_;
    std::uint64_t p_ = 0;
    std::vector<Term> terms_;
};

// true iff every term has weighted degree equal to weight (zero passes for all)
inline bool is_weighted_homogeneous(const MultiPoly& f, int weight) {
    for (const auto& t : f.terms())
        if (t.mono.wdeg(f.universe()) != weight) return false;
    return true;
}

}  // namespace monic

#endif
