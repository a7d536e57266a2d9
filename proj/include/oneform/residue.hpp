#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oneform/rational.hpp"

namespace oneform {

// A formal finite-dimensional Q-linear combination over declared basis
// symbols; carries possibly-irrational residues exactly. The reserved symbol
// "1" denotes the rational unit. Basis symbols are Q-linearly independent by
// declaration.
class ResidueVal {
public:
    static constexpr const char* unit = "1";

    ResidueVal() = default;

    static ResidueVal rational(const Rat& q) {
        ResidueVal r;
        if (q != 0) r.coords_[unit] = q;
        return r;
    }
    static ResidueVal symbol(const std::string& name, const Rat& scale = Rat(1)) {
        ResidueVal r;
        if (scale != 0) r.coords_[name] = scale;
        return r;
    }

    const std::map<std::string, Rat>& coords() const { return coords_; }
    bool is_zero() const { return coords_.empty(); }

    bool is_rational() const {
        return coords_.empty() || (coords_.size() == 1 && coords_.begin()->first == unit);
    }
    Rat rational_part() const {
        auto it = coords_.find(unit);
        return it == coords_.end() ? Rat(0) : it->second;
    }

    Rat coord(const std::string& sym) const {
        auto it = coords_.find(sym);
        return it == coords_.end() ? Rat(0) : it->second;
    }

    ResidueVal operator+(const ResidueVal& o) const {
        ResidueVal r = *this;
        for (const auto& [s, v] : o.coords_) {
            Rat nv = r.coord(s) + v;
            if (nv == 0) r.coords_.erase(s);
            else r.coords_[s] = nv;
        }
        return r;
    }
    ResidueVal operator-() const {
        ResidueVal r = *this;
        for (auto& [s, v] : r.coords_) v = -v;
        return r;
    }
    ResidueVal operator-(const ResidueVal& o) const { return *this + (-o); }
    ResidueVal operator*(const Rat& q) const {
        ResidueVal r;
        if (q == 0) return r;
        for (const auto& [s, v] : coords_) r.coords_[s] = v * q;
        return r;
    }

    bool operator==(const ResidueVal& o) const { return coords_ == o.coords_; }
    bool operator!=(const ResidueVal& o) const { return !(*this == o); }

    // The rational q with *this == q * o, when both are nonzero multiples of
    // the same direction.
    std::optional<Rat> ratio_over(const ResidueVal& o) const {
        if (o.is_zero() || is_zero()) return std::nullopt;
        const auto& [s0, v0] = *o.coords_.begin();
        Rat q = coord(s0) / v0;
        if (*this == o * q) return q;
        return std::nullopt;
    }

    std::string to_string() const {
        if (coords_.empty()) return "0";
        std::string out;
        for (const auto& [s, v] : coords_) {
            std::string piece;
            Rat vabs = rat_abs(v);
            if (s == unit) piece = oneform::to_string(vabs);
            else piece = (vabs == 1 ? s : oneform::to_string(vabs) + "*" + s);
            if (out.empty()) out = (v < 0 ? "-" : "") + piece;
            else out += (v < 0 ? " - " : " + ") + piece;
        }
        return out;
    }

private:
    std::map<std::string, Rat> coords_;
};

inline ResidueVal operator*(const Rat& q, const ResidueVal& r) { return r * q; }

// Rank over Q of the coordinate matrix of the given values. Two values r, s
// are commensurable iff rank{r, s} <= 1.
inline int q_linear_rank(const std::vector<ResidueVal>& values) {
    std::vector<std::string> symbols;
    for (const auto& v : values)
        for (const auto& [s, c] : v.coords()) symbols.push_back(s);
    std::sort(symbols.begin(), symbols.end());
    symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
    if (symbols.empty()) return 0;
    std::vector<std::vector<Rat>> rows;
    for (const auto& v : values) {
        std::vector<Rat> row;
        row.reserve(symbols.size());
        for (const auto& s : symbols) row.push_back(v.coord(s));
        rows.push_back(std::move(row));
    }
    // Gaussian elimination over Q.
    int rank = 0;
    std::size_t cols = symbols.size();
    for (std::size_t col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
        std::size_t pivot = rows.size();
        for (std::size_t r = static_cast<std::size_t>(rank); r < rows.size(); ++r)
            if (rows[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot == rows.size()) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[pivot]);
        const auto& prow = rows[static_cast<std::size_t>(rank)];
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == static_cast<std::size_t>(rank) || rows[r][col] == 0) continue;
            Rat factor = rows[r][col] / prow[col];
            for (std::size_t c = col; c < cols; ++c) rows[r][c] -= factor * prow[c];
        }
        ++rank;
    }
    return rank;
}

} // namespace oneform
