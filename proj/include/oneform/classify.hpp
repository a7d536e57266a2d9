#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oneform/oneform.hpp"

namespace oneform {

enum class FormKind { exact, exponential, weierstrass, general };

inline std::string form_kind_name(FormKind k) {
    switch (k) {
        case FormKind::exact: return "exact";
        case FormKind::exponential: return "exponential";
        case FormKind::weierstrass: return "weierstrass";
        case FormKind::general: return "general";
    }
    return "";
}

// Exponential forms have residues c*m_i at their simple poles for a single
// direction c and integers m_i; c is normalized so that the m_i are
// coprime-free integers: c = r_1 / lcm(denominators of r_i/r_1).
struct ExponentialData {
    ResidueVal c;
    std::map<PointP1, long long> multipliers;
};

struct FormType {
    FormKind kind = FormKind::general;
    std::vector<std::string> rules;  // decision-table rows that fired
    std::string detail;
    std::optional<ExponentialData> exponential;
    std::optional<PartialFraction> antiderivative;  // explicit exact forms
};

// Termwise antiderivative of an exact coefficient function: no simple poles
// means no log terms, so h stays a rational function in partial-fraction
// shape. Verified exactly by differentiating back.
inline PartialFraction exact_antiderivative(const RatFunc& f) {
    PartialFraction pf = partial_fractions(f);
    PartialFraction h;
    if (!pf.polynomial_part.is_zero()) {
        std::vector<Rat> c(static_cast<std::size_t>(pf.polynomial_part.degree()) + 2, Rat(0));
        for (int i = 0; i <= pf.polynomial_part.degree(); ++i)
            c[static_cast<std::size_t>(i) + 1] = pf.polynomial_part.coeff(i) / Rat(i + 1);
        h.polynomial_part = Poly(std::move(c));
    }
    for (const auto& t : pf.terms) {
        if (t.order == 1)
            throw PreconditionViolated("nonzero residue: no rational antiderivative");
        h.terms.push_back({t.pole, t.order - 1, t.coeff / Rat(1 - t.order)});
    }
    std::sort(h.terms.begin(), h.terms.end(), [](const PFTerm& a, const PFTerm& b) {
        return a.pole != b.pole ? a.pole < b.pole : a.order < b.order;
    });
    PartialFraction back = h.derivative();
    if (!(back.polynomial_part == pf.polynomial_part) || back.terms != pf.terms)
        throw Error("internal", "antiderivative check failed");
    return h;
}

namespace detail {

inline std::optional<ExponentialData> exponential_from_residues(
    const std::vector<std::pair<PointP1, ResidueVal>>& pole_residues) {
    if (pole_residues.empty()) return std::nullopt;
    const ResidueVal& r1 = pole_residues.front().second;
    std::vector<Rat> ratios;
    for (const auto& [p, r] : pole_residues) {
        auto t = r.ratio_over(r1);
        if (!t) return std::nullopt;  // incommensurable pair
        ratios.push_back(*t);
    }
    Int l(1);
    for (const auto& t : ratios) l = int_lcm(l, den(t));
    ExponentialData data;
    data.c = r1 * make_rat(Int(1), l);
    for (std::size_t i = 0; i < pole_residues.size(); ++i) {
        Rat m = ratios[i] * Rat(l);
        data.multipliers[pole_residues[i].first] = to_long(num(m));
        // re-verify the identity r_i = c * m_i exactly
        if (pole_residues[i].second != data.c * m)
            throw Error("internal", "exponential normalization failed");
    }
    return data;
}

} // namespace detail

// Four-way type of a 1-form on P^1. Weierstrass type is unreachable here: a
// nonconstant morphism P^1 -> E would violate Riemann-Hurwitz with genus 0
// source and genus 1 target, so the classifier never returns it.
inline FormType classify_type(const OneFormP1& w) {
    Divisor div = w.divisor();
    auto residues = w.residues();

    bool has_simple = false, has_higher = false;
    bool all_residues_zero = true;
    std::vector<std::pair<PointP1, ResidueVal>> pole_residues;
    std::optional<PointP1> higher_with_residue;
    for (const auto& [p, o] : div.support()) {
        if (o >= 0) continue;
        ResidueVal r;
        if (auto it = residues.find(p); it != residues.end()) r = it->second;
        if (o == -1) has_simple = true;
        if (o <= -2) {
            has_higher = true;
            if (!r.is_zero() && !higher_with_residue) higher_with_residue = p;
        }
        if (!r.is_zero()) all_residues_zero = false;
        pole_residues.emplace_back(p, r);
    }

    FormType out;
    if (all_residues_zero) {
        out.kind = FormKind::exact;
        out.rules = {"all-residues-zero"};
        if (w.is_explicit()) out.antiderivative = exact_antiderivative(w.coefficient());
        return out;
    }
    if (!has_higher) {
        // all poles simple, all residues nonzero
        auto expo = detail::exponential_from_residues(pole_residues);
        if (expo) {
            out.kind = FormKind::exponential;
            out.rules = {"simple-poles-commensurable-residues"};
            out.exponential = std::move(expo);
            return out;
        }
        out.kind = FormKind::general;
        out.rules = {"incommensurable-residue-pair"};
        return out;
    }
    out.kind = FormKind::general;
    if (higher_with_residue) {
        out.rules.push_back("higher-pole-with-residue");
        out.detail = "pole of order >= 2 at " + higher_with_residue->to_string() +
                     " with nonzero residue";
    }
    if (has_simple) out.rules.push_back("higher-and-simple-pole");
    if (out.rules.empty())
        // higher poles, all residues zero there, but some simple pole carries
        // one; a simple pole must exist since some residue is nonzero.
        out.rules.push_back("higher-and-simple-pole");
    return out;
}

// An exact form is new iff its divisor is -2[c] for a single point c
// (equivalently omega = d dx/(x-c)^2 up to the chart at infinity).
inline bool exact_is_new(const OneFormP1& w) {
    FormType t = classify_type(w);
    if (t.kind != FormKind::exact)
        throw PreconditionViolated("exact_is_new requires an exact-type form");
    const Divisor d = w.divisor();
    return d.size() == 1 && d.poles().size() == 1 && d.poles().front().second == -2;
}

} // namespace oneform
