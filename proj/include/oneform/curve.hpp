#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "oneform/classify.hpp"
#include "oneform/oneform.hpp"

namespace oneform {

// ---------------------------------------------------------------------------
// D(n): integers whose smallest prime factor exceeds n. 1 belongs vacuously
// but is skipped by the ordered enumeration, which serves pole orders > 1.

inline bool is_prime_ll(long long m) {
    if (m < 2) return false;
    for (long long p = 2; p * p <= m; ++p)
        if (m % p == 0) return false;
    return true;
}

struct DSet {
    int n;

    explicit DSet(int bound) : n(bound) {
        if (bound < 1) throw InvalidInput("D(n) needs n >= 1");
    }

    bool member(long long m) const {
        if (m < 1) return false;
        if (m == 1) return true;
        for (long long p = 2; p <= n && p * p <= m; ++p)
            if (m % p == 0) return false;
        return m > n;  // m <= n has itself or a smaller factor in range
    }

    // k-th member greater than 1, ascending, 1-based.
    long long nth_element(int k) const {
        if (k < 1) throw InvalidInput("nth_element is 1-based");
        long long m = 1;
        while (k > 0) {
            ++m;
            if (member(m)) --k;
        }
        return m;
    }
};

// ---------------------------------------------------------------------------
// Divisor shapes: the order data that the new-and-general-type criteria
// consume. Zero orders and higher-pole orders are kept sorted descending.

struct DivisorShape {
    int genus = 0;
    std::vector<long long> zero_orders;
    long long simple_pole_count = 0;
    std::vector<long long> higher_pole_orders;  // positive numbers w >= 2

    static DivisorShape of(const Divisor& div, int genus = 0) {
        DivisorShape s;
        s.genus = genus;
        for (const auto& [p, o] : div.support()) {
            if (o > 0) s.zero_orders.push_back(o);
            else if (o == -1) ++s.simple_pole_count;
            else s.higher_pole_orders.push_back(-o);
        }
        std::sort(s.zero_orders.rbegin(), s.zero_orders.rend());
        std::sort(s.higher_pole_orders.rbegin(), s.higher_pole_orders.rend());
        return s;
    }

    long long r() const { return static_cast<long long>(zero_orders.size()); }
    long long n() const { return simple_pole_count; }
    long long m() const { return static_cast<long long>(higher_pole_orders.size()); }
};

struct CheckResult {
    bool pass = false;
    std::string rule;
    std::string detail;
};

namespace detail {

inline bool has_unique_value(const std::vector<long long>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        bool unique = true;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (j != i && v[j] == v[i]) unique = false;
        if (unique) return true;
    }
    return false;
}

} // namespace detail

// New-and-general-type criterion from the pole-order rigidity argument: when
// every w_i - 1 avoids small divisors, the candidate ramification indices at
// the higher poles collapse to 1 and pole orders would have to repeat.
// Rules: (i) r>0, n>0, m>=2 with w_i-1 in D(2g+r+n-1) and some unique w_i;
// (ii) r>0, n=0, m>=2 with w_i-1 prime in D(2g+r+m), some unique w_i, and
// max u_i >= sum(w)-m; (i*) the zero-order variant of (i).
inline CheckResult check_rigid_pole_orders(const DivisorShape& s) {
    CheckResult out;
    if (s.r() < 1 || s.m() < 2) {
        throw ShapeMismatch("divisor shape needs at least one zero and two higher poles");
    }
    long long g = s.genus;
    if (s.n() > 0) {
        DSet dset(static_cast<int>(2 * g + s.r() + s.n() - 1));
        bool all_in = true;
        for (long long w : s.higher_pole_orders)
            if (!dset.member(w - 1)) all_in = false;
        if (all_in && detail::has_unique_value(s.higher_pole_orders)) {
            out.pass = true;
            out.rule = "rigid-pole-orders-i";
            out.detail = "all w-1 in D(" + std::to_string(dset.n) + ") with a unique w";
            return out;
        }
        // Zero-order variant. The bound is the maximal pullback degree
        // (deg div_0 + r)/2: when every u+1 has its smallest prime factor
        // beyond it, every zero is unramified, zero fibers collapse to
        // singletons by the distinctness of the u_i, and deg phi = 1.
        long long usum = 0;
        for (long long u : s.zero_orders) usum += u;
        long long bound = (usum + s.r()) / 2;
        bool zeros_in = bound >= 1;
        if (zeros_in) {
            DSet dz(static_cast<int>(bound));
            for (long long u : s.zero_orders)
                if (!dz.member(u + 1)) zeros_in = false;
        }
        std::vector<long long> us = s.zero_orders;
        std::sort(us.begin(), us.end());
        bool distinct = std::adjacent_find(us.begin(), us.end()) == us.end();
        if (zeros_in && distinct) {
            out.pass = true;
            out.rule = "rigid-zero-orders";
            out.detail = "all u+1 in D(" + std::to_string(bound) +
                         ") with pairwise distinct u";
            return out;
        }
        out.detail = "neither the pole-order nor the zero-order rigidity hypotheses hold";
        return out;
    }
    // n = 0
    DSet dset(static_cast<int>(2 * g + s.r() + s.m()));
    bool ok = true;
    for (long long w : s.higher_pole_orders)
        if (!dset.member(w - 1) || !is_prime_ll(w - 1)) ok = false;
    long long wsum = 0;
    for (long long w : s.higher_pole_orders) wsum += w;
    long long umax = s.zero_orders.empty() ? 0 : s.zero_orders.front();
    if (ok && detail::has_unique_value(s.higher_pole_orders) && umax >= wsum - s.m()) {
        out.pass = true;
        out.rule = "rigid-pole-orders-ii";
        out.detail = "all w-1 prime in D(" + std::to_string(dset.n) +
                     "), unique w, and a zero of order >= " + std::to_string(wsum - s.m());
        return out;
    }
    out.detail = "the prime pole-order hypotheses do not hold";
    return out;
}

// New-and-general-type criterion from residue independence: at least 2g+2
// poles with nonzero residues and every (2g+2)-subset of them Q-linearly
// independent.
inline CheckResult check_independent_residues(int genus,
                                              const std::vector<ResidueVal>& pole_residues) {
    CheckResult out;
    std::vector<ResidueVal> nonzero;
    for (const auto& r : pole_residues)
        if (!r.is_zero()) nonzero.push_back(r);
    long long need = 2LL * genus + 2;
    if (static_cast<long long>(nonzero.size()) < need) {
        out.detail = "only " + std::to_string(nonzero.size()) +
                     " poles with nonzero residues, need " + std::to_string(need);
        return out;
    }
    // every subset of size 2g+2 must have full rank
    std::vector<int> idx(static_cast<std::size_t>(need));
    std::iota(idx.begin(), idx.end(), 0);
    auto next_subset = [&](std::vector<int>& v) {
        int k = static_cast<int>(v.size()), n = static_cast<int>(nonzero.size());
        int i = k - 1;
        while (i >= 0 && v[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return false;
        ++v[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            v[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(j - 1)] + 1;
        return true;
    };
    do {
        std::vector<ResidueVal> subset;
        for (int i : idx) subset.push_back(nonzero[static_cast<std::size_t>(i)]);
        if (q_linear_rank(subset) < static_cast<int>(need)) {
            out.detail = "a " + std::to_string(need) + "-subset of residues is Q-dependent";
            return out;
        }
    } while (next_subset(idx));
    out.pass = true;
    out.rule = "independent-residues";
    out.detail = std::to_string(nonzero.size()) + " nonzero residues, every " +
                 std::to_string(need) + "-subset Q-independent";
    return out;
}

// New-and-general-type criterion for mixed polar divisors: a simple pole,
// two or more rigid higher poles carrying Q-independent nonzero residues.
inline CheckResult check_rigid_mixed_poles(const DivisorShape& s,
                                           const std::vector<ResidueVal>& higher_residues) {
    CheckResult out;
    if (s.n() < 1) {
        out.detail = "needs at least one simple pole";
        return out;
    }
    if (s.m() < 2 || static_cast<long long>(higher_residues.size()) != s.m()) {
        out.detail = "needs at least two higher poles with residue data";
        return out;
    }
    DSet dset(static_cast<int>(2 * s.genus + s.n() + s.m() + 1));
    for (long long w : s.higher_pole_orders)
        if (!dset.member(w - 1)) {
            out.detail = "pole order " + std::to_string(w) + " - 1 leaves D(" +
                         std::to_string(dset.n) + ")";
            return out;
        }
    if (!detail::has_unique_value(s.higher_pole_orders)) {
        out.detail = "no higher pole order is unique";
        return out;
    }
    // two Q-independent nonzero residues among the higher poles
    bool found = false;
    for (std::size_t i = 0; i < higher_residues.size() && !found; ++i)
        for (std::size_t j = i + 1; j < higher_residues.size() && !found; ++j)
            if (!higher_residues[i].is_zero() && !higher_residues[j].is_zero() &&
                q_linear_rank({higher_residues[i], higher_residues[j]}) == 2)
                found = true;
    if (!found) {
        out.detail = "no Q-independent pair of residues at the higher poles";
        return out;
    }
    out.pass = true;
    out.rule = "rigid-mixed-poles";
    out.detail = "rigid higher-pole orders with independent residues";
    return out;
}

// ---------------------------------------------------------------------------
// Hyperelliptic curves y^2 = (x-e_1)...(x-e_{2g+1}); genus 1 is the elliptic
// case. Points are tracked by x-coordinate and a sheet sign; the involution
// flips the sign and fixes the special points (e_i, 0) and infinity.

struct HyperCurve {
    int genus = 1;
    std::vector<Rat> roots;

    static HyperCurve make(std::vector<Rat> roots) {
        HyperCurve c;
        if (roots.size() % 2 == 0 || roots.size() < 3)
            throw InvalidInput("need an odd number >= 3 of branch roots");
        c.genus = static_cast<int>((roots.size() - 1) / 2);
        for (std::size_t i = 0; i < roots.size(); ++i)
            for (std::size_t j = i + 1; j < roots.size(); ++j)
                if (roots[i] == roots[j])
                    throw CoordinateCollision("branch roots must be pairwise distinct");
        c.roots = std::move(roots);
        return c;
    }

    bool is_root(const Rat& x) const {
        return std::find(roots.begin(), roots.end(), x) != roots.end();
    }
};

struct CurvePoint {
    enum class Kind { ordinary = 0, special = 1, infinity = 2 };
    Kind kind = Kind::infinity;
    Rat x;
    int sign = 0;  // +1 / -1 on ordinary points, 0 otherwise

    static CurvePoint ordinary(const Rat& x, int sign) {
        CurvePoint p;
        p.kind = Kind::ordinary;
        p.x = x;
        p.sign = sign >= 0 ? 1 : -1;
        return p;
    }
    static CurvePoint special(const Rat& root) {
        CurvePoint p;
        p.kind = Kind::special;
        p.x = root;
        return p;
    }
    static CurvePoint infinity() { return CurvePoint(); }

    CurvePoint involution() const {
        CurvePoint p = *this;
        if (kind == Kind::ordinary) p.sign = -p.sign;
        return p;
    }

    bool operator==(const CurvePoint& o) const {
        return kind == o.kind && x == o.x && sign == o.sign;
    }
    bool operator<(const CurvePoint& o) const {
        if (kind != o.kind) return static_cast<int>(kind) < static_cast<int>(o.kind);
        if (x != o.x) return x < o.x;
        return sign > o.sign;  // (x,+) before (x,-)
    }

    std::string to_string() const {
        switch (kind) {
            case Kind::ordinary:
                return "(" + oneform::to_string(x) + "," + (sign > 0 ? "+" : "-") + ")";
            case Kind::special: return "(" + oneform::to_string(x) + ",0)";
            case Kind::infinity: return "inf";
        }
        return "";
    }
};

using CurveDivisor = std::map<CurvePoint, long long>;

inline long long curve_divisor_degree(const CurveDivisor& d) {
    long long s = 0;
    for (const auto& [p, o] : d) s += o;
    return s;
}

inline std::string curve_divisor_to_string(const CurveDivisor& d) {
    std::string out;
    auto emit = [&](const CurvePoint& p, long long o) {
        long long a = o < 0 ? -o : o;
        std::string term = (a == 1 ? "" : std::to_string(a)) + "[" + p.to_string() + "]";
        if (out.empty()) out = (o < 0 ? "-" : "") + term;
        else out += (o < 0 ? " - " : " + ") + term;
    };
    for (const auto& [p, o] : d)
        if (o > 0) emit(p, o);
    for (const auto& [p, o] : d)
        if (o < 0) emit(p, o);
    return out.empty() ? "0" : out;
}

// The displayed class of 1-forms on a hyperelliptic curve:
//   prod (x-x_Pi)^{u_i} / (prod (x-x_Rj) prod (x-x_Sk)^{w_k})
//     * prod (x-e_i)^{k_i} * y^l dx
// with ordinary points tracked by x-coordinate only.
struct CurveFormSpec {
    std::vector<std::pair<Rat, long long>> zeros;        // (x, u >= 1), ordinary
    std::vector<Rat> simple_poles;                       // x, ordinary
    std::vector<std::pair<Rat, long long>> higher_poles; // (x, w >= 2), ordinary
    std::vector<long long> k;                            // one exponent per branch root
    long long l = 0;                                     // exponent of y

    std::string to_string() const;
};

// Divisor of the displayed class: ordinary factors contribute symmetrically
// on the two sheets, the special points collect 2k_i + l + 1, and infinity
// balances to total degree 2g - 2.
inline CurveDivisor curve_form_divisor(const HyperCurve& curve, const CurveFormSpec& spec) {
    if (spec.k.size() != curve.roots.size())
        throw InvalidInput("need one special exponent per branch root");
    std::vector<Rat> seen;
    auto check_x = [&](const Rat& x) {
        if (curve.is_root(x))
            throw CoordinateCollision("ordinary coordinate equals a branch root: " +
                                      oneform::to_string(x));
        if (std::find(seen.begin(), seen.end(), x) != seen.end())
            throw CoordinateCollision("repeated ordinary coordinate: " + oneform::to_string(x));
        seen.push_back(x);
    };
    CurveDivisor div;
    auto add = [&div](const CurvePoint& p, long long o) {
        if (o == 0) return;
        long long v = div[p] + o;
        if (v == 0) div.erase(p);
        else div[p] = v;
    };
    long long usum = 0, wsum = 0;
    for (const auto& [x, u] : spec.zeros) {
        if (u < 1) throw InvalidInput("zero multiplicities must be >= 1");
        check_x(x);
        add(CurvePoint::ordinary(x, +1), u);
        add(CurvePoint::ordinary(x, -1), u);
        usum += u;
    }
    for (const auto& x : spec.simple_poles) {
        check_x(x);
        add(CurvePoint::ordinary(x, +1), -1);
        add(CurvePoint::ordinary(x, -1), -1);
    }
    for (const auto& [x, w] : spec.higher_poles) {
        if (w < 2) throw InvalidInput("higher pole orders must be >= 2");
        check_x(x);
        add(CurvePoint::ordinary(x, +1), -w);
        add(CurvePoint::ordinary(x, -1), -w);
        wsum += w;
    }
    long long ksum = 0;
    for (std::size_t i = 0; i < curve.roots.size(); ++i) {
        add(CurvePoint::special(curve.roots[i]), 2 * spec.k[i] + spec.l + 1);
        ksum += spec.k[i];
    }
    long long g = curve.genus;
    long long n = static_cast<long long>(spec.simple_poles.size());
    add(CurvePoint::infinity(),
        2 * n + 2 * wsum - 2 * usum - 2 * ksum - spec.l * (2 * g + 1) - 3);
    if (curve_divisor_degree(div) != 2 * g - 2)
        throw Error("internal", "curve divisor degree is not 2g-2");
    return div;
}

// With l even the coefficient lives in the subfield C(x), so the form is a
// pullback along the double cover and old.
inline bool defined_in_subfield(const CurveFormSpec& spec) { return spec.l % 2 == 0; }

inline DivisorShape curve_divisor_shape(const CurveDivisor& div, int genus) {
    DivisorShape s;
    s.genus = genus;
    for (const auto& [p, o] : div) {
        if (o > 0) s.zero_orders.push_back(o);
        else if (o == -1) ++s.simple_pole_count;
        else if (o < 0) s.higher_pole_orders.push_back(-o);
    }
    std::sort(s.zero_orders.rbegin(), s.zero_orders.rend());
    std::sort(s.higher_pole_orders.rbegin(), s.higher_pole_orders.rend());
    return s;
}

inline std::string CurveFormSpec::to_string() const {
    std::string out;
    auto fact = [](const Rat& x, long long e) {
        std::string b = x == 0 ? "x"
                        : x > 0 ? "(x - " + oneform::to_string(x) + ")"
                                : "(x + " + oneform::to_string(Rat(-x)) + ")";
        return e == 1 ? b : b + "^" + std::to_string(e);
    };
    std::string num, den;
    for (const auto& [x, u] : zeros) num += (num.empty() ? "" : " ") + fact(x, u);
    for (const auto& x : simple_poles) den += (den.empty() ? "" : " ") + fact(x, 1);
    for (const auto& [x, w] : higher_poles) den += (den.empty() ? "" : " ") + fact(x, w);
    out = num.empty() ? "1" : num;
    if (!den.empty()) out += " / (" + den + ")";
    if (l != 0) out += " * y^" + std::to_string(l);
    return out + " dx";
}

// ---------------------------------------------------------------------------
// Constructive families of new and general type 1-forms with prescribed
// numbers of zeros (r), simple poles (n) and higher poles (m).

struct ConstructedForm {
    std::optional<OneFormP1> p1_form;
    std::optional<HyperCurve> curve;
    std::optional<CurveFormSpec> curve_spec;
    DivisorShape shape;
    CheckResult check;
    std::string description;
};

inline std::vector<ConstructedForm> construct_family_p1(long long r, long long n, long long m,
                                                        int count = 1) {
    if (r < 1 || m < 2 || n < 0) throw InfeasibleParameters("need r >= 1, n >= 0, m >= 2");
    if (n == 0 && m - r < 2)
        throw InfeasibleParameters("with no simple poles the construction needs m - r >= 2");
    std::vector<ConstructedForm> out;
    for (int v = 0; v < count; ++v) {
        std::vector<long long> ws, us;
        if (n > 0) {
            DSet ds(static_cast<int>(r + n - 1));
            long long a = ds.nth_element(1 + v), b = ds.nth_element(2 + v);
            ws.push_back(a + 1);
            for (long long i = 1; i < m; ++i) ws.push_back(b + 1);
            long long wsum = 0;
            for (long long w : ws) wsum += w;
            long long usum = n + wsum - 2;
            us.assign(static_cast<std::size_t>(r), 1);
            us[0] = usum - (r - 1);
        } else {
            DSet ds(static_cast<int>(r + m));
            std::vector<long long> primes;
            for (int k = 1; static_cast<long long>(primes.size()) < 2 + v; ++k) {
                long long cand = ds.nth_element(k);
                if (is_prime_ll(cand)) primes.push_back(cand);
            }
            long long a = primes[static_cast<std::size_t>(v)],
                      b = primes[static_cast<std::size_t>(v) + 1];
            ws.push_back(a + 1);
            for (long long i = 1; i < m; ++i) ws.push_back(b + 1);
            long long wsum = 0;
            for (long long w : ws) wsum += w;
            us.assign(static_cast<std::size_t>(r), 1);
            us[0] = wsum - m;  // the deliberately large zero
            if (r >= 2) us[1] = m - r;  // soaks the remaining degree; >= 1 since m-r >= 2
        }
        // Points at small integers: zeros, then simple poles, then higher.
        std::vector<RatFunc::Factor> factors;
        long long coord = 1;
        for (long long i = 0; i < r; ++i)
            factors.emplace_back(Rat(coord++), static_cast<int>(us[static_cast<std::size_t>(i)]));
        for (long long i = 0; i < n; ++i) factors.emplace_back(Rat(coord++), -1);
        for (long long i = 0; i < m; ++i)
            factors.emplace_back(Rat(coord++), static_cast<int>(-ws[static_cast<std::size_t>(i)]));
        OneFormP1 w = OneFormP1::explicit_form(RatFunc(Rat(1), factors));
        ConstructedForm cf;
        cf.p1_form = w;
        cf.shape = DivisorShape::of(w.divisor(), 0);
        cf.check = check_rigid_pole_orders(cf.shape);
        cf.description = w.coefficient().to_string() + " dx";
        if (!cf.check.pass) throw Error("internal", "constructed family member fails its check");
        out.push_back(std::move(cf));
    }
    return out;
}

inline std::vector<ConstructedForm> construct_family_curve(const HyperCurve& curve, long long r,
                                                           long long n, long long m,
                                                           int count = 1) {
    const long long g = curve.genus;
    if (r < 1 || m < 2 || n < 0) throw InfeasibleParameters("need r >= 1, n >= 0, m >= 2");
    if (n % 2 != 0)
        throw InfeasibleParameters("on a curve the simple poles pair up: n must be even");
    if (n == 0 && m - r < 2 - 2 * g)
        throw InfeasibleParameters("with no simple poles the construction needs m - r >= 2 - 2g");
    // Specials in use: poles take one or two, an odd r takes one more.
    long long pole_specials = (m % 2 == 0) ? 2 : 1;
    long long zero_specials = (r % 2 == 1) ? 1 : 0;
    if (pole_specials + zero_specials > 2 * g + 1)
        throw InfeasibleParameters("not enough special points on the curve");
    long long pole_pairs = (m - pole_specials) / 2;
    long long zero_pairs = (r - zero_specials) / 2;
    long long simple_pairs = n / 2;

    std::vector<ConstructedForm> out;
    for (int v = 0; v < count; ++v) {
        bool prime_case = (n == 0);
        DSet ds(static_cast<int>(2 * g + r + (n > 0 ? n - 1 : m)));
        auto nth_admissible = [&](int k) {
            int seen = 0;
            for (int i = 1;; ++i) {
                long long cand = ds.nth_element(i);
                if (prime_case && !is_prime_ll(cand)) continue;
                if (++seen == k) return cand;
            }
        };
        long long w_a = nth_admissible(1 + v) + 1;
        long long w_b = nth_admissible(2 + v) + 1;
        long long w_pair = nth_admissible(3 + v) + 1;
        // special pole orders must be even, i.e. their k-exponents integral
        if (w_a % 2 != 0 || w_b % 2 != 0)
            throw Error("internal", "D-set members above 2 should be odd");

        std::vector<long long> special_pole_w;
        if (pole_specials >= 1) special_pole_w.push_back(w_a);
        if (pole_specials == 2) special_pole_w.push_back(w_b);

        long long wsum = 0;
        for (long long w : special_pole_w) wsum += w;
        wsum += 2 * pole_pairs * w_pair;

        // Zero orders: minimal to start, then balance the infinity term.
        long long v0 = 2;  // special zero order, even
        std::vector<long long> pair_u(static_cast<std::size_t>(zero_pairs), 1);
        if (prime_case) {
            long long need = wsum - m;
            if (zero_specials == 1) {
                v0 = std::max<long long>(2, need + (need % 2));
            } else if (zero_pairs > 0) {
                pair_u[0] = std::max<long long>(1, need);
            }
        }

        // Assemble the k-exponents and compute the infinity coefficient.
        auto infinity_coeff = [&](long long v0_now, const std::vector<long long>& pu) {
            long long ksum = 0;
            for (long long w : special_pole_w) ksum += -(w + 2) / 2;
            if (zero_specials == 1) ksum += (v0_now - 2) / 2;
            long long used = pole_specials + zero_specials;
            ksum += -(2 * g + 1 - used);  // unused roots sit at order zero
            long long usum_x = 0;
            for (long long u : pu) usum_x += u;
            long long wsum_x = pole_pairs * w_pair;
            return 2 * simple_pairs + 2 * wsum_x - 2 * usum_x - 2 * ksum - (2 * g + 1) - 3;
        };
        long long c_inf = infinity_coeff(v0, pair_u);
        if (c_inf < 0 || c_inf % 2 != 0)
            throw InfeasibleParameters("cannot balance the divisor at infinity");
        // Absorb the leftover into a zero order.
        if (zero_specials == 1) v0 += c_inf;
        else if (zero_pairs > 0) pair_u[0] += c_inf / 2;
        else if (c_inf != 0) throw InfeasibleParameters("no free zero to balance infinity");
        if (infinity_coeff(v0, pair_u) != 0)
            throw Error("internal", "infinity balancing failed");

        // Lay the points out on distinct coordinates away from the roots.
        CurveFormSpec spec;
        spec.l = 1;
        spec.k.assign(curve.roots.size(), -1);
        std::size_t root_idx = 0;
        auto next_root = [&]() { return root_idx++; };
        for (long long w : special_pole_w)
            spec.k[next_root()] = -(w + 2) / 2;
        if (zero_specials == 1) spec.k[next_root()] = (v0 - 2) / 2;

        Rat coord(1);
        auto fresh = [&]() {
            while (curve.is_root(coord)) coord += 1;
            Rat c = coord;
            coord += 1;
            return c;
        };
        for (long long i = 0; i < zero_pairs; ++i)
            spec.zeros.emplace_back(fresh(), pair_u[static_cast<std::size_t>(i)]);
        for (long long i = 0; i < simple_pairs; ++i) spec.simple_poles.push_back(fresh());
        for (long long i = 0; i < pole_pairs; ++i) spec.higher_poles.emplace_back(fresh(), w_pair);

        CurveDivisor div = curve_form_divisor(curve, spec);
        ConstructedForm cf;
        cf.curve = curve;
        cf.curve_spec = spec;
        cf.shape = curve_divisor_shape(div, static_cast<int>(g));
        if (cf.shape.r() != r || cf.shape.n() != n || cf.shape.m() != m)
            throw Error("internal", "constructed curve form has the wrong shape");
        cf.check = check_rigid_pole_orders(cf.shape);
        cf.description = spec.to_string();
        if (!cf.check.pass) throw Error("internal", "constructed family member fails its check");
        out.push_back(std::move(cf));
    }
    return out;
}

// ---------------------------------------------------------------------------
// A vector space of new and general type forms inside Omega(D) on P^1 for
// D = R_1 + ... + R_n + z0*inf + w_1 S_1 + ... + w_m S_m: one block form per
// (simple pole, consecutive higher-pole pair), carrying fresh residue
// symbols, each passing the rigid-mixed-poles check.

struct OmegaDBasis {
    std::vector<OneFormP1> forms;
    std::vector<CheckResult> checks;
    int rank = 0;
    long long lower_bound = 0;  // n * floor(m/2)
};

inline int residue_record_rank(const std::vector<OneFormP1>& forms) {
    // Flatten each residue map over the (point, symbol) pairs and reuse the
    // rational rank computation.
    std::vector<ResidueVal> rows;
    for (const auto& w : forms) {
        ResidueVal row;
        for (const auto& [p, r] : w.residues())
            for (const auto& [s, c] : r.coords())
                row = row + ResidueVal::symbol(p.to_string() + "|" + s, c);
        rows.push_back(row);
    }
    return q_linear_rank(rows);
}

inline OmegaDBasis omega_d_basis(const std::vector<Rat>& simple_points, long long z0,
                                 const std::vector<std::pair<Rat, long long>>& higher) {
    const long long n = static_cast<long long>(simple_points.size());
    const long long m = static_cast<long long>(higher.size());
    if (n < 1 || m < 2 || z0 < 1)
        throw HypothesisViolated("need n >= 1 simple points, m >= 2 higher, z0 >= 1");
    DSet ds(static_cast<int>(n + m + 1));
    long long s = ds.nth_element(3);
    for (const auto& [x, w] : higher)
        if (w < s)
            throw HypothesisViolated("pole order " + std::to_string(w) +
                                     " is below the third D(n+m+1) element " + std::to_string(s));
    long long v1 = ds.nth_element(1) + 1, v2 = ds.nth_element(2) + 1;
    if (v1 > s || v2 > s) throw Error("internal", "block pole orders exceed the bound");

    OmegaDBasis out;
    out.lower_bound = n * (m / 2);
    for (long long i = 0; i < n; ++i) {
        for (long long k = 0; 2 * k + 1 < m; ++k) {
            std::string tag = std::to_string(i + 1) + "_" + std::to_string(k + 1);
            ResidueVal sa = ResidueVal::symbol("a" + tag);
            ResidueVal sb = ResidueVal::symbol("b" + tag);
            ResidueVal r_simple = ResidueVal::rational(Rat(1));
            AbstractForm a;
            a.basis = {"a" + tag, "b" + tag};
            long long inf_order = z0 == 1 ? -1 : -2;
            a.divisor.add(PointP1::finite(simple_points[static_cast<std::size_t>(i)]), -1);
            a.divisor.add(PointP1::infinity(), inf_order);
            a.divisor.add(PointP1::finite(higher[static_cast<std::size_t>(2 * k)].first),
                          -v1);
            a.divisor.add(PointP1::finite(higher[static_cast<std::size_t>(2 * k + 1)].first),
                          -v2);
            long long zero_total = -2 - a.divisor.degree();
            for (long long z = 0; z < zero_total; ++z)
                a.divisor.add(PointP1::generic("z" + tag + "_" + std::to_string(z + 1)), 1);
            a.residues[PointP1::finite(simple_points[static_cast<std::size_t>(i)])] = r_simple;
            a.residues[PointP1::finite(higher[static_cast<std::size_t>(2 * k)].first)] = sa;
            a.residues[PointP1::finite(higher[static_cast<std::size_t>(2 * k + 1)].first)] = sb;
            a.residues[PointP1::infinity()] = -(r_simple + sa + sb);
            OneFormP1 w = OneFormP1::abstract_form(a);
            DivisorShape shape = DivisorShape::of(w.divisor(), 0);
            std::vector<ResidueVal> higher_res;
            for (const auto& [p, o] : w.divisor().support())
                if (o <= -2) higher_res.push_back(w.residue_at(p));
            CheckResult chk = check_rigid_mixed_poles(shape, higher_res);
            if (!chk.pass) throw Error("internal", "block form fails the mixed-poles check");
            out.checks.push_back(chk);
            out.forms.push_back(std::move(w));
        }
    }
    out.rank = residue_record_rank(out.forms);
    return out;
}

// ---------------------------------------------------------------------------
// A 1-form with prescribed simple poles and residues: sum c_i dx/(x - P_i).
// Exists iff the residues sum to zero. Rational data yields an explicit
// form when its zeros are rational; otherwise the poles are exact and the
// zeros are generic labels.

inline OneFormP1 simple_pole_form_from_residues(const std::vector<PointP1>& points,
                                                const std::vector<ResidueVal>& residues) {
    if (points.size() != residues.size())
        throw InvalidInput("need one residue per point");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j]) throw CoordinateCollision("points must be distinct");
    ResidueVal sum;
    for (const auto& r : residues) sum = sum + r;
    if (!sum.is_zero()) throw ResidueSumNonzero("simple-pole residues must sum to zero");
    std::size_t nonzero = 0;
    for (const auto& r : residues)
        if (!r.is_zero()) ++nonzero;
    if (nonzero < 2) throw InvalidInput("need at least two nonzero residues");

    bool explicit_ok = true;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].is_generic() && !residues[i].is_zero()) explicit_ok = false;
        if (!residues[i].is_rational()) explicit_ok = false;
    }
    if (explicit_ok) {
        RatFunc f = RatFunc::zero();
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (residues[i].is_zero() || points[i].is_infinity()) continue;
            f = f + RatFunc(residues[i].rational_part(), {{points[i].value(), -1}});
        }
        try {
            return OneFormP1::explicit_form(f);
        } catch (const SplitFieldRequired&) {
            // fall through to the abstract encoding with generic zeros
        }
    }
    AbstractForm a;
    long long pole_total = 0;
    ResidueVal finite_sum;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (residues[i].is_zero()) continue;
        a.divisor.add(points[i], -1);
        a.residues[points[i]] = residues[i];
        for (const auto& [sym, c] : residues[i].coords())
            if (sym != ResidueVal::unit &&
                std::find(a.basis.begin(), a.basis.end(), sym) == a.basis.end())
                a.basis.push_back(sym);
        ++pole_total;
    }
    long long zero_total = pole_total - 2;
    for (long long z = 0; z < zero_total; ++z)
        a.divisor.add(PointP1::generic("z" + std::to_string(z + 1)), 1);
    return OneFormP1::abstract_form(a);
}

// ---------------------------------------------------------------------------
// The complete existence answer for new and general type forms in Omega(D)
// on P^1, D = R_1+...+R_n + w_1 S_1+...+w_m S_m.

struct OmegaDAnswer {
    std::string status;  // family | witness | exact-new-only | exponential-only | empty
    std::string reason;
    std::optional<OneFormP1> witness;
};

inline OmegaDAnswer omega_d_p1_existence(long long n, long long m,
                                         const std::vector<long long>& ws) {
    if (static_cast<long long>(ws.size()) != m)
        throw InvalidInput("need one order per higher-pole slot");
    for (long long w : ws)
        if (w < 2) throw InvalidInput("higher-pole slots need order >= 2");
    OmegaDAnswer out;
    if (n + m >= 3) {
        out.status = "family";
        out.reason = "n + m >= 3 poles can carry Q-independent residues";
        // witness: independent symbolic residues at every slot
        std::vector<PointP1> pts;
        std::vector<ResidueVal> res;
        ResidueVal sum;
        for (long long i = 0; i + 1 < n + m; ++i) {
            ResidueVal s = ResidueVal::symbol("c" + std::to_string(i + 1));
            res.push_back(s);
            sum = sum + s;
        }
        res.push_back(-sum);
        AbstractForm a;
        long long coord = 1;
        long long pole_degree = 0;
        for (long long i = 0; i < n; ++i) {
            a.divisor.add(PointP1::finite(Rat(coord)), -1);
            a.residues[PointP1::finite(Rat(coord))] = res[static_cast<std::size_t>(i)];
            ++coord;
            pole_degree += 1;
        }
        for (long long j = 0; j < m; ++j) {
            a.divisor.add(PointP1::finite(Rat(coord)), -ws[static_cast<std::size_t>(j)]);
            a.residues[PointP1::finite(Rat(coord))] = res[static_cast<std::size_t>(n + j)];
            ++coord;
            pole_degree += ws[static_cast<std::size_t>(j)];
        }
        for (long long z = 0; z < pole_degree - 2; ++z)
            a.divisor.add(PointP1::generic("z" + std::to_string(z + 1)), 1);
        for (long long i = 0; i + 1 < n + m; ++i) a.basis.push_back("c" + std::to_string(i + 1));
        out.witness = OneFormP1::abstract_form(a);
        return out;
    }
    if (n >= 1 && m >= 1) {
        // n = m = 1: dx/((x-S)^2 (x-R)) is new and general
        out.status = "witness";
        out.reason = "a double pole pinned to its own fiber";
        out.witness = OneFormP1::explicit_form(RatFunc(Rat(1), {{Rat(0), -2}, {Rat(1), -1}}));
        return out;
    }
    if (n == 0 && m == 2) {
        out.status = "witness";
        out.reason = "two double poles force a degree bound violation";
        out.witness = OneFormP1::explicit_form(RatFunc(Rat(1), {{Rat(0), -2}, {Rat(1), -2}}));
        return out;
    }
    if (n == 0 && m == 1) {
        out.status = "exact-new-only";
        out.reason = "every form in Omega(D) is exact; c dx/(x-S)^2 is new";
        out.witness = OneFormP1::explicit_form(RatFunc(Rat(1), {{Rat(0), -2}}));
        return out;
    }
    if (n == 2 && m == 0) {
        out.status = "exponential-only";
        out.reason = "two simple poles give dx/cx up to coordinates";
        return out;
    }
    out.status = "empty";
    out.reason = "deg D <= 1 admits no nonzero 1-form";
    return out;
}

} // namespace oneform
