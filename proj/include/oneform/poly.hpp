#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "oneform/errors.hpp"
#include "oneform/rational.hpp"

namespace oneform {

// Dense univariate polynomial over the rationals, coefficients lowest degree
// first. The zero polynomial is the empty coefficient vector; otherwise the
// leading coefficient is nonzero.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { normalize(); }
    explicit Poly(const Rat& constant) {
        if (constant != 0) c_.push_back(constant);
    }

    static Poly x() { return Poly(std::vector<Rat>{Rat(0), Rat(1)}); }
    // x - r
    static Poly linear(const Rat& root) { return Poly(std::vector<Rat>{Rat(-root), Rat(1)}); }

    bool is_zero() const { return c_.empty(); }
    // Degree of the zero polynomial is -1.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rat>& coeffs() const { return c_; }

    Rat coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return Rat(0);
        return c_[static_cast<std::size_t>(i)];
    }
    Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const {
        std::vector<Rat> r(c_);
        for (auto& v : r) v = -v;
        return Poly(std::move(r));
    }

    Poly operator+(const Poly& o) const {
        std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
        return Poly(std::move(r));
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] += c_[i] * o.c_[j];
        return Poly(std::move(r));
    }

    Poly operator*(const Rat& s) const {
        if (s == 0) return Poly();
        std::vector<Rat> r(c_);
        for (auto& v : r) v *= s;
        return Poly(std::move(r));
    }

    Poly pow(long long e) const {
        if (e < 0) throw InvalidInput("negative polynomial power");
        Poly acc(Rat(1)), base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            if (e >>= 1) base = base * base;
        }
        return acc;
    }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<Rat> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rat(i);
        return Poly(std::move(r));
    }

    // Quotient and remainder with deg(rem) < deg(divisor).
    std::pair<Poly, Poly> divmod(const Poly& divisor) const {
        if (divisor.is_zero()) throw DivisionByZeroFunction("polynomial division by zero");
        if (degree() < divisor.degree()) return {Poly(), *this};
        std::vector<Rat> rem(c_);
        std::vector<Rat> quot(static_cast<std::size_t>(degree() - divisor.degree()) + 1, Rat(0));
        Rat lead = divisor.leading();
        for (int k = degree() - divisor.degree(); k >= 0; --k) {
            Rat q = rem[static_cast<std::size_t>(k + divisor.degree())] / lead;
            quot[static_cast<std::size_t>(k)] = q;
            if (q == 0) continue;
            for (int j = 0; j <= divisor.degree(); ++j)
                rem[static_cast<std::size_t>(k + j)] -= q * divisor.coeff(j);
        }
        return {Poly(std::move(quot)), Poly(std::move(rem))};
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * (Rat(1) / leading());
    }

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rat> c_;
};

inline Poly operator*(const Rat& s, const Poly& p) { return p * s; }

// Monic Euclidean gcd; exact over the rationals.
inline Poly poly_gcd(Poly a, Poly b) {
    a = a.monic();
    b = b.monic();
    while (!b.is_zero()) {
        Poly r = a.divmod(b).second;
        a = std::move(b);
        b = r.monic();
    }
    return a;
}

// Yun's squarefree decomposition: p = lead * prod_i part[i]^(i+1) with the
// parts squarefree, monic and pairwise coprime (parts may be 1).
inline std::vector<Poly> squarefree_decomposition(const Poly& p) {
    if (p.is_zero()) throw InvalidInput("squarefree decomposition of zero");
    Poly f = p.monic();
    std::vector<Poly> out;
    if (f.degree() == 0) return out;
    Poly fp = f.derivative();
    Poly a = poly_gcd(f, fp);
    Poly b = f.divmod(a).first;
    Poly c = fp.divmod(a).first;
    Poly d = c - b.derivative();
    while (b.degree() > 0) {
        Poly g = poly_gcd(b, d);
        out.push_back(g.monic());
        b = b.divmod(g).first;
        c = d.divmod(g).first;
        d = c - b.derivative();
    }
    return out;
}

namespace detail {

// Divisors of |n| by trial division, unordered. Desk-scale inputs only.
inline std::vector<Int> divisors(Int n) {
    n = int_abs(n);
    std::vector<std::pair<Int, int>> fac;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            fac.emplace_back(p, e);
        }
    }
    if (n > 1) fac.emplace_back(n, 1);
    std::vector<Int> out{Int(1)};
    for (const auto& [p, e] : fac) {
        std::size_t sz = out.size();
        Int pk(1);
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * pk);
        }
    }
    return out;
}

} // namespace detail

// All rational roots of a squarefree integer-content-free polynomial, found
// by the p/q candidate test with deflation.
inline std::vector<Rat> rational_roots_squarefree(Poly f) {
    std::vector<Rat> roots;
    if (f.degree() <= 0) return roots;
    // Root at zero first.
    while (f.coeff(0) == 0) {
        roots.push_back(Rat(0));
        f = f.divmod(Poly::x()).first;
    }
    if (f.degree() <= 0) return roots;
    if (f.degree() == 1) {
        roots.push_back(-f.coeff(0) / f.coeff(1));
        return roots;
    }
    // Clear denominators to an integer polynomial.
    Int l(1);
    for (const auto& c : f.coeffs()) l = int_lcm(l, den(c));
    std::vector<Int> ic;
    ic.reserve(f.coeffs().size());
    Int g(0);
    for (const auto& c : f.coeffs()) {
        Int v = num(c) * (l / den(c));
        ic.push_back(v);
        g = int_gcd(g, v);
    }
    if (g > 1)
        for (auto& v : ic) v /= g;
    std::vector<Int> ps = detail::divisors(ic.front());
    std::vector<Int> qs = detail::divisors(ic.back());
    std::vector<Rat> candidates;
    for (const auto& p : ps)
        for (const auto& q : qs) {
            if (int_gcd(p, q) != 1) continue;
            candidates.push_back(Rat(p, q));
            candidates.push_back(Rat(-p, q));
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& r : candidates) {
        if (f.degree() <= 0) break;
        if (f.eval(r) == 0) {
            roots.push_back(r);
            f = f.divmod(Poly::linear(r)).first;
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// (root, multiplicity) pairs with roots ascending plus the leading
// coefficient. Throws SplitFieldRequired if p does not split over Q.
inline std::pair<Rat, std::vector<std::pair<Rat, int>>> split_linear_factors(const Poly& p) {
    if (p.is_zero()) throw InvalidInput("cannot factor the zero polynomial");
    std::map<Rat, int> mult;
    auto parts = squarefree_decomposition(p);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const Poly& part = parts[i];
        if (part.degree() <= 0) continue;
        auto roots = rational_roots_squarefree(part);
        if (static_cast<int>(roots.size()) != part.degree())
            throw SplitFieldRequired("irreducible factor of degree >= 2 over the rationals");
        for (const auto& r : roots) mult[r] += static_cast<int>(i) + 1;
    }
    std::vector<std::pair<Rat, int>> out(mult.begin(), mult.end());
    return {p.leading(), out};
}

// --- truncated power series helpers (exact, used by partial fractions) ---

// Product of a and b modulo x^n.
inline std::vector<Rat> series_mul(const std::vector<Rat>& a, const std::vector<Rat>& b,
                                   std::size_t n) {
    std::vector<Rat> r(n, Rat(0));
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

// Multiplicative inverse of a modulo x^n; requires a[0] != 0.
inline std::vector<Rat> series_inv(const std::vector<Rat>& a, std::size_t n) {
    if (a.empty() || a[0] == 0) throw DivisionByZeroFunction("series inverse needs unit constant term");
    std::vector<Rat> r(n, Rat(0));
    r[0] = Rat(1) / a[0];
    for (std::size_t k = 1; k < n; ++k) {
        Rat s(0);
        for (std::size_t j = 1; j <= k && j < a.size(); ++j) s += a[j] * r[k - j];
        r[k] = -s / a[0];
    }
    return r;
}

// (c + x)^e modulo x^n for integer e (negative allowed; needs c != 0 then).
inline std::vector<Rat> series_binomial_pow(const Rat& c, long long e, std::size_t n) {
    std::vector<Rat> r(n, Rat(0));
    if (n == 0) return r;
    if (c == 0) {
        if (e < 0) throw DivisionByZeroFunction("expansion of x^negative at its own pole");
        if (static_cast<std::size_t>(e) < n) r[static_cast<std::size_t>(e)] = Rat(1);
        return r;
    }
    // Binomial series: sum_k C(e, k) c^(e-k) x^k, valid for any integer e.
    Rat term = rat_pow(c, e);
    r[0] = term;
    for (std::size_t k = 1; k < n; ++k) {
        // C(e,k)c^(e-k) = C(e,k-1)c^(e-k+1) * (e-k+1) / (k*c)
        term *= Rat(e - static_cast<long long>(k) + 1);
        term /= Rat(static_cast<long long>(k)) * c;
        r[k] = term;
    }
    return r;
}

} // namespace oneform
