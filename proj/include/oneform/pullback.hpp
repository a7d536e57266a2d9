#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "oneform/oneform.hpp"

namespace oneform {

// A morphism P^1 -> P^1 as a reduced fraction of polynomials, denominator
// monic. Unlike RatFunc this does not require splitting over Q (x^3 - 3x is
// a fine morphism even though x^2 - 3 is irreducible); fiber computations
// split on demand and raise SplitFieldRequired only when a requested fiber
// is genuinely irrational.
class RatMap {
public:
    RatMap() : num_(Rat(0)), den_(Rat(1)) {}

    RatMap(Poly num, Poly den) {
        if (den.is_zero()) throw DivisionByZeroFunction("map with zero denominator");
        Poly g = poly_gcd(num, den);
        if (g.degree() > 0) {
            num = num.divmod(g).first;
            den = den.divmod(g).first;
        }
        Rat lead = den.leading();
        num_ = num * (Rat(1) / lead);
        den_ = den * (Rat(1) / lead);
    }

    explicit RatMap(const Poly& num) : RatMap(num, Poly(Rat(1))) {}

    // Implicit on purpose: every factored rational function is a map.
    RatMap(const RatFunc& f) {
        auto nd = f.num_den();
        num_ = std::move(nd.first);
        den_ = std::move(nd.second);
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    long long degree() const { return std::max(num_.degree(), den_.degree()); }
    bool is_constant() const { return degree() <= 0; }

    // Factored view; SplitFieldRequired when num or den has irrational roots.
    RatFunc as_ratfunc() const { return RatFunc::from_num_den(num_, den_); }

    bool operator==(const RatMap& o) const {
        return num_ * o.den_ == o.num_ * den_;
    }

    std::string to_string() const {
        try {
            return as_ratfunc().to_string();
        } catch (const SplitFieldRequired&) {
            return poly_string(num_) + (den_.degree() > 0 || den_.leading() != 1
                                            ? " / (" + poly_string(den_) + ")"
                                            : "");
        }
    }

private:
    static std::string poly_string(const Poly& p) {
        if (p.is_zero()) return "0";
        std::string out;
        for (int i = p.degree(); i >= 0; --i) {
            Rat c = p.coeff(i);
            if (c == 0) continue;
            Rat cabs = rat_abs(c);
            std::string mono;
            if (i == 0) mono = oneform::to_string(cabs);
            else {
                if (cabs != 1) mono = oneform::to_string(cabs) + "*";
                mono += "x";
                if (i > 1) mono += "^" + std::to_string(i);
            }
            if (out.empty()) out = (c < 0 ? "-" : "") + mono;
            else out += (c < 0 ? " - " : " + ") + mono;
        }
        return out;
    }

    Poly num_, den_;
};

// phi(P) for a rational map phi and a concrete point P.
inline PointP1 map_eval(const RatMap& phi, const PointP1& p) {
    if (p.is_generic()) throw InvalidInput("cannot evaluate a map at a generic point");
    const Poly& n = phi.num();
    const Poly& d = phi.den();
    if (p.is_finite()) {
        Rat dv = d.eval(p.value());
        if (dv == 0) return PointP1::infinity();  // num and den are coprime
        return PointP1::finite(n.eval(p.value()) / dv);
    }
    if (n.degree() > d.degree()) return PointP1::infinity();
    if (n.degree() < d.degree()) return PointP1::finite(Rat(0));
    return PointP1::finite(n.leading() / d.leading());
}

// Ramification index of phi at P (local multiplicity).
inline int ram_index(const RatMap& phi, const PointP1& p) {
    if (phi.is_constant()) throw ConstantMap("ramification of a constant map");
    if (p.is_generic()) throw InvalidInput("ramification at a generic point");
    const Poly& n = phi.num();
    const Poly& d = phi.den();
    PointP1 q = map_eval(phi, p);
    if (p.is_finite()) {
        Poly fiber_poly = q.is_infinity() ? d : n - d * q.value();
        int e = 0;
        Poly lin = Poly::linear(p.value());
        while (!fiber_poly.is_zero() && fiber_poly.eval(p.value()) == 0) {
            fiber_poly = fiber_poly.divmod(lin).first;
            ++e;
        }
        return e;
    }
    // P = infinity
    if (q.is_infinity()) return n.degree() - d.degree();
    Poly fiber_poly = n - d * q.value();
    return static_cast<int>(phi.degree()) - fiber_poly.degree();
}

// The full fiber phi^{-1}(Q) with multiplicities; multiplicities sum to
// deg(phi). Q must be a finite rational point or infinity.
inline std::vector<std::pair<PointP1, int>> ramification_profile(const RatMap& phi,
                                                                 const PointP1& q) {
    long long d = phi.degree();
    if (d == 0) throw ConstantMap("fiber of a constant map");
    if (q.is_generic()) throw InvalidInput("fiber over a generic point");
    std::vector<std::pair<PointP1, int>> out;
    long long finite_total = 0;
    Poly fiber_poly = q.is_infinity() ? phi.den() : phi.num() - phi.den() * q.value();
    if (fiber_poly.degree() > 0) {
        auto [lead, factors] = split_linear_factors(fiber_poly);
        (void)lead;
        for (const auto& [r, e] : factors) {
            out.emplace_back(PointP1::finite(r), e);
            finite_total += e;
        }
    }
    if (finite_total < d) out.emplace_back(PointP1::infinity(), static_cast<int>(d - finite_total));
    return out;
}

// Exact pullback phi^* (f dx) = (f o phi) phi' dx, fully refactored.
inline OneFormP1 pullback_form(const RatMap& phi, const OneFormP1& eta) {
    if (phi.is_constant()) throw ConstantMap("pullback along a constant map");
    const RatFunc& f = eta.coefficient();
    const Poly& n = phi.num();
    const Poly& d = phi.den();
    // f o phi
    RatFunc pulled(f.constant());
    long long dshift = 0;
    for (const auto& [r, e] : f.factors()) {
        Poly shifted = n - d * r;
        pulled = pulled * RatFunc::from_poly(shifted).pow(e);
        dshift -= e;
    }
    pulled = pulled * RatFunc::from_poly(d).pow(dshift);
    // phi' = (n' d - n d') / d^2
    Poly w = n.derivative() * d - n * d.derivative();
    RatFunc deriv = RatFunc::from_poly(w) * RatFunc::from_poly(d).pow(-2);
    return OneFormP1::explicit_form(pulled * deriv);
}

struct LawCheck {
    std::string law;
    std::string detail;
    bool pass = false;
};

struct PullbackReport {
    std::vector<LawCheck> checks;
    bool all_pass = true;

    void record(const std::string& law, const std::string& detail, bool pass) {
        checks.push_back({law, detail, pass});
        if (!pass) all_pass = false;
    }
};

// Checks, for omega := phi^* eta: the order law at every point of
// supp(div omega), pole/zero fiber containments, fiber ratio equality, and
// residue scaling res_P(omega) = e_P res_{phi(P)}(eta).
inline PullbackReport verify_pullback_laws(const RatMap& phi, const OneFormP1& eta) {
    PullbackReport rep;
    OneFormP1 omega = pullback_form(phi, eta);
    Divisor dw = omega.divisor(), de = eta.divisor();
    auto res_w = omega.residues();
    auto res_e = eta.residues();

    // Order law over the support of omega.
    for (const auto& [p, ord] : dw.support()) {
        PointP1 q = map_eval(phi, p);
        int e = ram_index(phi, p);
        long long target_ord = de.order_at(q);
        bool ok = static_cast<long long>(e) * (target_ord + 1) == ord + 1;
        rep.record("order-law",
                   "P=" + p.to_string() + ", e=" + std::to_string(e) + ", Q=" + q.to_string(),
                   ok);
    }

    // Fibers over the support of eta.
    for (const auto& [q, qord] : de.support()) {
        auto fiber = ramification_profile(phi, q);
        if (qord == -1) {
            for (const auto& [p, e] : fiber)
                rep.record("simple-pole-fibers",
                           "fiber of " + q.to_string() + " contains " + p.to_string(),
                           dw.order_at(p) == -1);
        } else if (qord < -1) {
            for (const auto& [p, e] : fiber) {
                long long o = dw.order_at(p);
                bool in_higher = o <= -2;
                bool divides = in_higher && ((-o - 1) % e == 0);
                rep.record("higher-pole-fibers",
                           "fiber of " + q.to_string() + " contains " + p.to_string(),
                           in_higher && divides);
            }
        } else if (qord > 0) {
            for (const auto& [p, e] : fiber) {
                long long o = dw.order_at(p);
                bool is_zero_pt = o > 0;
                bool divides = is_zero_pt && ((o + 1) % e == 0) && e < o + 1;
                rep.record("zero-fibers",
                           "fiber of " + q.to_string() + " contains " + p.to_string(),
                           is_zero_pt && divides);
            }
        }
        // Fiber ratio equality: (ord_P + 1)/e_P agrees across the fiber.
        if (qord != 0 && fiber.size() >= 2) {
            bool ok = true;
            Rat ratio;
            bool first = true;
            for (const auto& [p, e] : fiber) {
                Rat r = make_rat(Int(dw.order_at(p) + 1), Int(e));
                if (first) {
                    ratio = r;
                    first = false;
                } else if (r != ratio) {
                    ok = false;
                }
            }
            rep.record("fiber-ratio", "fiber of " + q.to_string(), ok);
        }
    }

    // Zero divisibility plus the "maps outside the zeros of eta" criterion.
    for (const auto& [p, ord] : dw.support()) {
        if (ord <= 0) continue;
        int e = ram_index(phi, p);
        PointP1 q = map_eval(phi, p);
        bool div_ok = (ord + 1) % e == 0;
        bool outside = de.order_at(q) == 0;
        bool iff_ok = outside == (static_cast<long long>(e) == ord + 1);
        rep.record("zero-divisibility", "P=" + p.to_string(), div_ok && iff_ok);
    }

    // Residue scaling at every pole of omega.
    for (const auto& [p, ord] : dw.support()) {
        if (ord >= 0) continue;
        PointP1 q = map_eval(phi, p);
        int e = ram_index(phi, p);
        ResidueVal lhs;
        if (auto it = res_w.find(p); it != res_w.end()) lhs = it->second;
        ResidueVal rhs;
        if (auto it = res_e.find(q); it != res_e.end()) rhs = it->second * Rat(e);
        rep.record("residue-scaling",
                   "P=" + p.to_string() + ", e=" + std::to_string(e), lhs == rhs);
    }
    return rep;
}

} // namespace oneform
