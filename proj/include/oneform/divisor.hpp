#pragma once

#include <map>
#include <string>
#include <vector>

#include "oneform/point.hpp"

namespace oneform {

// Finite integer-valued support map on points of P^1. For the divisor of a
// 1-form on P^1 the total degree is -2.
class Divisor {
public:
    Divisor() = default;

    static Divisor single(const PointP1& p, long long order) {
        Divisor d;
        d.add(p, order);
        return d;
    }

    void add(const PointP1& p, long long order) {
        if (order == 0) return;
        long long v = support_[p] + order;
        if (v == 0) support_.erase(p);
        else support_[p] = v;
    }

    long long order_at(const PointP1& p) const {
        auto it = support_.find(p);
        return it == support_.end() ? 0 : it->second;
    }

    const std::map<PointP1, long long>& support() const { return support_; }
    bool empty() const { return support_.empty(); }
    std::size_t size() const { return support_.size(); }

    long long degree() const {
        long long s = 0;
        for (const auto& [p, o] : support_) s += o;
        return s;
    }

    Divisor operator+(const Divisor& o) const {
        Divisor d = *this;
        for (const auto& [p, v] : o.support_) d.add(p, v);
        return d;
    }

    bool operator==(const Divisor& o) const { return support_ == o.support_; }
    bool operator!=(const Divisor& o) const { return !(*this == o); }

    std::vector<std::pair<PointP1, long long>> zeros() const {
        std::vector<std::pair<PointP1, long long>> out;
        for (const auto& [p, o] : support_)
            if (o > 0) out.emplace_back(p, o);
        return out;
    }
    std::vector<std::pair<PointP1, long long>> poles() const {
        std::vector<std::pair<PointP1, long long>> out;
        for (const auto& [p, o] : support_)
            if (o < 0) out.emplace_back(p, o);
        return out;
    }

    // Zeros first, then poles, each in point order: "8[inf] - 2[0] - ...".
    std::string to_string(bool pretty_infinity = false) const {
        if (support_.empty()) return "0";
        std::string out;
        auto emit = [&](const PointP1& p, long long o) {
            long long a = o < 0 ? -o : o;
            std::string term =
                (a == 1 ? "" : std::to_string(a)) +
                "[" + (pretty_infinity ? p.pretty() : p.to_string()) + "]";
            if (out.empty()) out = (o < 0 ? "-" : "") + term;
            else out += (o < 0 ? " - " : " + ") + term;
        };
        for (const auto& [p, o] : support_)
            if (o > 0) emit(p, o);
        for (const auto& [p, o] : support_)
            if (o < 0) emit(p, o);
        return out;
    }

private:
    std::map<PointP1, long long> support_;
};

} // namespace oneform
