#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oneform/errors.hpp"
#include "oneform/poly.hpp"
#include "oneform/rational.hpp"

namespace oneform {

// Rational function in factored canonical form:
//
//     constant * prod_i (x - root_i)^exp_i
//
// with pairwise distinct roots sorted ascending and nonzero integer
// exponents. Only functions whose numerator and denominator split into
// linear factors over Q are representable; everything else raises
// SplitFieldRequired at construction. The zero function is admitted for
// closure of + and - (constant 0, no factors); 1-form carriers reject it.
class RatFunc {
public:
    using Factor = std::pair<Rat, int>;

    RatFunc() : constant_(0) {}
    explicit RatFunc(const Rat& c) : constant_(c) {}
    RatFunc(const Rat& c, std::vector<Factor> factors) : constant_(c) {
        if (c == 0) throw InvalidInput("factored form with zero constant");
        std::map<Rat, long long> m;
        for (const auto& [r, e] : factors) m[r] += e;
        for (const auto& [r, e] : m)
            if (e != 0) factors_.emplace_back(r, static_cast<int>(e));
    }

    static RatFunc zero() { return RatFunc(); }
    static RatFunc one() { return RatFunc(Rat(1)); }
    // x as a function
    static RatFunc x() { return RatFunc(Rat(1), {{Rat(0), 1}}); }

    static RatFunc from_poly(const Poly& p) {
        if (p.is_zero()) return zero();
        auto [lead, factors] = split_linear_factors(p);
        return RatFunc(lead, std::move(factors));
    }

    static RatFunc from_num_den(const Poly& n, const Poly& d) {
        if (d.is_zero()) throw DivisionByZeroFunction("zero denominator");
        if (n.is_zero()) return zero();
        RatFunc fn = from_poly(n);
        RatFunc fd = from_poly(d);
        return fn / fd;
    }

    bool is_zero() const { return constant_ == 0; }
    bool is_constant() const { return factors_.empty(); }
    const Rat& constant() const { return constant_; }
    const std::vector<Factor>& factors() const { return factors_; }

    int exponent_at(const Rat& root) const {
        for (const auto& [r, e] : factors_)
            if (r == root) return e;
        return 0;
    }

    // deg(numerator) - deg(denominator); 0 for constants.
    long long deg() const {
        long long s = 0;
        for (const auto& [r, e] : factors_) s += e;
        return s;
    }

    // Degree as a morphism P1 -> P1: max(deg num, deg den).
    long long map_degree() const {
        long long p = 0, q = 0;
        for (const auto& [r, e] : factors_) {
            if (e > 0) p += e;
            else q -= e;
        }
        return std::max(p, q);
    }

    // Expanded (numerator, denominator); denominator monic, constant carried
    // by the numerator.
    std::pair<Poly, Poly> num_den() const {
        Poly n(constant_), d(Rat(1));
        for (const auto& [r, e] : factors_) {
            Poly f = Poly::linear(r).pow(e > 0 ? e : -e);
            if (e > 0) n = n * f;
            else d = d * f;
        }
        return {n, d};
    }

    bool operator==(const RatFunc& o) const {
        return constant_ == o.constant_ && factors_ == o.factors_;
    }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc operator-() const {
        RatFunc r = *this;
        r.constant_ = -r.constant_;
        return r;
    }

    RatFunc operator*(const RatFunc& o) const {
        if (is_zero() || o.is_zero()) return zero();
        std::map<Rat, long long> m;
        for (const auto& [r, e] : factors_) m[r] += e;
        for (const auto& [r, e] : o.factors_) m[r] += e;
        RatFunc out;
        out.constant_ = constant_ * o.constant_;
        for (const auto& [r, e] : m)
            if (e != 0) out.factors_.emplace_back(r, static_cast<int>(e));
        return out;
    }

    RatFunc operator/(const RatFunc& o) const {
        if (o.is_zero()) throw DivisionByZeroFunction("division by the zero function");
        return *this * o.reciprocal();
    }

    RatFunc operator*(const Rat& s) const {
        if (s == 0) return zero();
        RatFunc r = *this;
        r.constant_ *= s;
        return r;
    }

    RatFunc reciprocal() const {
        if (is_zero()) throw DivisionByZeroFunction("reciprocal of the zero function");
        RatFunc r;
        r.constant_ = Rat(1) / constant_;
        r.factors_ = factors_;
        for (auto& [root, e] : r.factors_) e = -e;
        return r;
    }

    RatFunc pow(long long k) const {
        if (k == 0) return one();
        if (is_zero()) {
            if (k < 0) throw DivisionByZeroFunction("zero function to a negative power");
            return zero();
        }
        RatFunc r;
        r.constant_ = rat_pow(constant_, k);
        r.factors_ = factors_;
        for (auto& [root, e] : r.factors_) {
            long long v = static_cast<long long>(e) * k;
            e = static_cast<int>(v);
        }
        return r;
    }

    RatFunc operator+(const RatFunc& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        auto [n1, d1] = num_den();
        auto [n2, d2] = o.num_den();
        return from_num_den(n1 * d2 + n2 * d1, d1 * d2);
    }
    RatFunc operator-(const RatFunc& o) const { return *this + (-o); }

    Rat eval(const Rat& x0) const {
        if (is_zero()) return Rat(0);
        Rat acc = constant_;
        for (const auto& [r, e] : factors_) {
            Rat base = x0 - r;
            if (base == 0 && e < 0) throw PoleEvaluation("evaluation at a pole");
            acc *= rat_pow(base, e);
        }
        return acc;
    }

    // Formal derivative as a factored function; SplitFieldRequired when the
    // critical points are irrational. f' = f * sum_i e_i/(x - r_i).
    RatFunc derivative() const {
        if (is_constant()) return zero();
        Poly w;  // sum_i e_i prod_{j != i} (x - r_j)
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            Poly t(Rat(factors_[i].second));
            for (std::size_t j = 0; j < factors_.size(); ++j)
                if (j != i) t = t * Poly::linear(factors_[j].first);
            w = w + t;
        }
        RatFunc lognum = from_poly(w);
        RatFunc logden = one();
        for (const auto& [r, e] : factors_) logden = logden * RatFunc(Rat(1), {{r, 1}});
        return *this * lognum / logden;
    }

    // Derivative as an expanded (num, den) pair; never needs splitting.
    std::pair<Poly, Poly> derivative_num_den() const {
        auto [n, d] = num_den();
        return {n.derivative() * d - n * d.derivative(), d * d};
    }

    // f composed with phi, fully refactored. Fiber points of f's support
    // under phi must be rational.
    RatFunc compose(const RatFunc& phi) const {
        if (is_zero()) return zero();
        if (is_constant()) return *this;
        if (phi.map_degree() == 0) return RatFunc(eval(phi.constant()));
        auto [np, dp] = phi.num_den();
        RatFunc out(constant_);
        long long dshift = 0;
        for (const auto& [r, e] : factors_) {
            Poly shifted = np - Poly(r) * dp;
            if (shifted.is_zero()) throw InvalidInput("composition with phi identically equal to a root");
            out = out * from_poly(shifted).pow(e);
            dshift -= e;
        }
        out = out * from_poly(dp).pow(dshift);
        return out;
    }

    std::string to_string() const;

private:
    Rat constant_;
    std::vector<Factor> factors_;
};

inline RatFunc operator*(const Rat& s, const RatFunc& f) { return f * s; }

namespace detail {

inline std::string factor_string(const Rat& root, int e) {
    std::string base;
    if (root == 0) {
        base = "x";
    } else if (root > 0) {
        base = "(x - " + oneform::to_string(root) + ")";
    } else {
        base = "(x + " + oneform::to_string(Rat(-root)) + ")";
    }
    int a = e > 0 ? e : -e;
    if (a == 1) return base;
    if (root == 0) return base + "^" + std::to_string(a);
    return base + "^" + std::to_string(a);
}

} // namespace detail

inline std::string RatFunc::to_string() const {
    if (is_zero()) return "0";
    std::vector<std::string> nums, dens;
    for (const auto& [r, e] : factors_) {
        if (e > 0) nums.push_back(detail::factor_string(r, e));
        else dens.push_back(detail::factor_string(r, e));
    }
    std::string n;
    bool negative = constant_ < 0;
    Rat cabs = rat_abs(constant_);
    if (nums.empty()) {
        n = oneform::to_string(cabs);
    } else {
        if (cabs != 1) n = oneform::to_string(cabs);
        for (const auto& s : nums) {
            if (!n.empty()) n += " * ";
            n += s;
        }
    }
    std::string out = negative ? "-" + n : n;
    if (!dens.empty()) {
        std::string d;
        for (const auto& s : dens) {
            if (!d.empty()) d += " * ";
            d += s;
        }
        if (dens.size() > 1) d = "(" + d + ")";
        out += " / " + d;
    }
    return out;
}

// One term coeff/(x - pole)^order of a partial fraction decomposition.
struct PFTerm {
    Rat pole;
    int order = 1;
    Rat coeff;

    bool operator==(const PFTerm& o) const {
        return pole == o.pole && order == o.order && coeff == o.coeff;
    }
};

struct PartialFraction {
    Poly polynomial_part;
    std::vector<PFTerm> terms;  // sorted by (pole, order); nonzero coeffs

    // Exact recombination over the common denominator, for round-trip checks.
    std::pair<Poly, Poly> recombine_num_den() const {
        std::map<Rat, int> maxord;
        for (const auto& t : terms) maxord[t.pole] = std::max(maxord[t.pole], t.order);
        Poly d(Rat(1));
        for (const auto& [p, k] : maxord) d = d * Poly::linear(p).pow(k);
        Poly n = polynomial_part * d;
        for (const auto& t : terms) {
            Poly piece(t.coeff);
            for (const auto& [p, k] : maxord)
                piece = piece * Poly::linear(p).pow(p == t.pole ? k - t.order : k);
            n = n + piece;
        }
        return {n, d};
    }

    Rat residue_at(const Rat& pole) const {
        for (const auto& t : terms)
            if (t.pole == pole && t.order == 1) return t.coeff;
        return Rat(0);
    }

    // Termwise derivative stays in partial-fraction shape.
    PartialFraction derivative() const {
        PartialFraction out;
        out.polynomial_part = polynomial_part.derivative();
        for (const auto& t : terms)
            out.terms.push_back({t.pole, t.order + 1, t.coeff * Rat(-t.order)});
        std::sort(out.terms.begin(), out.terms.end(), [](const PFTerm& a, const PFTerm& b) {
            return a.pole != b.pole ? a.pole < b.pole : a.order < b.order;
        });
        return out;
    }

    std::string to_string() const;
};

// Exact partial fraction decomposition of a factored rational function.
// The coefficient of (x-c)^(-1) is the residue of f dx at c.
inline PartialFraction partial_fractions(const RatFunc& f) {
    if (f.is_zero()) return {};
    PartialFraction out;
    auto [n, d] = f.num_den();
    if (n.degree() >= d.degree()) out.polynomial_part = n.divmod(d).first;
    for (const auto& [pole, e] : f.factors()) {
        if (e >= 0) continue;
        std::size_t k = static_cast<std::size_t>(-e);
        // Laurent data at `pole`: expand f * (x-pole)^k in t = x - pole.
        std::vector<Rat> g(k, Rat(0));
        g[0] = f.constant();
        for (const auto& [r, er] : f.factors()) {
            if (r == pole) continue;
            g = series_mul(g, series_binomial_pow(pole - r, er, k), k);
        }
        for (std::size_t j = 0; j < k; ++j) {
            if (g[j] == 0) continue;
            out.terms.push_back({pole, static_cast<int>(k - j), g[j]});
        }
    }
    std::sort(out.terms.begin(), out.terms.end(), [](const PFTerm& a, const PFTerm& b) {
        return a.pole != b.pole ? a.pole < b.pole : a.order < b.order;
    });
    return out;
}

inline std::string PartialFraction::to_string() const {
    std::string out;
    auto append = [&out](const std::string& piece, bool negative) {
        if (out.empty()) {
            out = negative ? "-" + piece : piece;
        } else {
            out += negative ? " - " + piece : " + " + piece;
        }
    };
    if (!polynomial_part.is_zero()) {
        bool first = true;
        for (int i = polynomial_part.degree(); i >= 0; --i) {
            Rat c = polynomial_part.coeff(i);
            if (c == 0) continue;
            std::string mono;
            Rat cabs = rat_abs(c);
            if (i == 0) {
                mono = oneform::to_string(cabs);
            } else {
                mono = (cabs == 1 ? "" : oneform::to_string(cabs) + "*");
                mono += "x";
                if (i > 1) mono += "^" + std::to_string(i);
            }
            append(mono, c < 0);
            first = false;
        }
        (void)first;
    }
    for (const auto& t : terms) {
        Rat cabs = rat_abs(t.coeff);
        std::string piece = (cabs == 1 ? "1" : oneform::to_string(cabs));
        piece += "/" + detail::factor_string(t.pole, t.order);
        append(piece, t.coeff < 0);
    }
    if (out.empty()) out = "0";
    return out;
}

} // namespace oneform
