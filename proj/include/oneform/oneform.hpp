#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "oneform/divisor.hpp"
#include "oneform/errors.hpp"
#include "oneform/point.hpp"
#include "oneform/ratfunc.hpp"
#include "oneform/residue.hpp"

namespace oneform {

// Abstract description of a 1-form on P^1: its divisor, the residues at its
// poles over a declared symbol basis, nothing else. This is the input mode
// for forms with generic points or irrational residues.
struct AbstractForm {
    Divisor divisor;
    std::map<PointP1, ResidueVal> residues;
    std::vector<std::string> basis;  // symbols beyond the rational unit
};

// A meromorphic 1-form on P^1, either omega = f dx with f an explicit
// factored rational function, or abstract divisor/residue data.
class OneFormP1 {
public:
    static OneFormP1 explicit_form(const RatFunc& f) {
        if (f.is_zero()) throw InvalidInput("the zero 1-form is not admitted");
        OneFormP1 w;
        w.repr_ = f;
        return w;
    }

    static OneFormP1 abstract_form(AbstractForm a) {
        validate(a);
        OneFormP1 w;
        w.repr_ = std::move(a);
        return w;
    }

    bool is_explicit() const { return std::holds_alternative<RatFunc>(repr_); }
    bool is_abstract() const { return !is_explicit(); }

    const RatFunc& coefficient() const {
        if (!is_explicit()) throw PreconditionViolated("explicit 1-form required");
        return std::get<RatFunc>(repr_);
    }
    const AbstractForm& abstract() const {
        if (!is_abstract()) throw PreconditionViolated("abstract 1-form required");
        return std::get<AbstractForm>(repr_);
    }

    // Orders at finite c come from the factored coefficient; the order at
    // infinity follows the t = 1/x chart: ord_inf(f dx) = -deg(f) - 2.
    Divisor divisor() const {
        if (is_abstract()) return abstract().divisor;
        const RatFunc& f = coefficient();
        Divisor d;
        for (const auto& [r, e] : f.factors()) d.add(PointP1::finite(r), e);
        d.add(PointP1::infinity(), -f.deg() - 2);
        return d;
    }

    // Residues at every pole plus the point at infinity; the residue at
    // infinity is minus the sum of the finite ones, so the total is zero.
    std::map<PointP1, ResidueVal> residues() const {
        if (is_abstract()) return abstract().residues;
        const RatFunc& f = coefficient();
        PartialFraction pf = partial_fractions(f);
        std::map<PointP1, ResidueVal> out;
        for (const auto& [r, e] : f.factors())
            if (e < 0) out[PointP1::finite(r)] = ResidueVal::rational(pf.residue_at(r));
        Rat finite_sum(0);
        for (const auto& [p, v] : out) finite_sum += v.rational_part();
        out[PointP1::infinity()] = ResidueVal::rational(-finite_sum);
        return out;
    }

    ResidueVal residue_at(const PointP1& p) const {
        auto rs = residues();
        auto it = rs.find(p);
        return it == rs.end() ? ResidueVal() : it->second;
    }

    OneFormP1 scaled(const Rat& c) const {
        if (c == 0) throw InvalidInput("scaling a 1-form by zero");
        if (is_explicit()) return explicit_form(coefficient() * c);
        AbstractForm a = abstract();
        for (auto& [p, v] : a.residues) v = v * c;
        return abstract_form(std::move(a));
    }

    std::string to_string() const {
        if (is_explicit()) return coefficient().to_string() + " dx";
        return "abstract form, div = " + abstract().divisor.to_string();
    }

private:
    static void validate(const AbstractForm& a) {
        if (a.divisor.degree() != -2)
            throw InvalidInput("abstract divisor must have degree -2, got " +
                               std::to_string(a.divisor.degree()));
        for (const auto& [p, v] : a.residues) {
            long long ord = a.divisor.order_at(p);
            if (ord >= 0 && !v.is_zero())
                throw InvalidInput("nonzero residue at a non-pole point " + p.to_string());
        }
        ResidueVal sum;
        for (const auto& [p, o] : a.divisor.support()) {
            if (o >= 0) continue;
            auto it = a.residues.find(p);
            if (it == a.residues.end())
                throw InvalidInput("pole " + p.to_string() + " is missing a residue entry");
            if (o == -1 && it->second.is_zero())
                throw InvalidInput("simple pole " + p.to_string() + " must carry a nonzero residue");
            sum = sum + it->second;
        }
        if (!sum.is_zero()) throw ResidueSumNonzero("residues of a 1-form must sum to zero");
        for (const auto& [p, v] : a.residues)
            for (const auto& [s, c] : v.coords())
                if (s != ResidueVal::unit &&
                    std::find(a.basis.begin(), a.basis.end(), s) == a.basis.end())
                    throw InvalidInput("residue symbol '" + s + "' is not in the declared basis");
    }

    std::variant<RatFunc, AbstractForm> repr_;
};

} // namespace oneform
