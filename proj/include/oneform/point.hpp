#pragma once

#include <compare>
#include <string>

#include "oneform/rational.hpp"

namespace oneform {

// A point of P^1: a finite rational coordinate, the point at infinity, or a
// generic symbolic point. Generic labels are pairwise-distinct formal points,
// unequal to every finite point and to infinity; no arithmetic is performed
// on their coordinates.
class PointP1 {
public:
    enum class Kind { finite = 0, infinity = 1, generic = 2 };

    PointP1() : kind_(Kind::finite), value_(0) {}

    static PointP1 finite(const Rat& v) {
        PointP1 p;
        p.kind_ = Kind::finite;
        p.value_ = v;
        return p;
    }
    static PointP1 infinity() {
        PointP1 p;
        p.kind_ = Kind::infinity;
        return p;
    }
    static PointP1 generic(const std::string& label) {
        PointP1 p;
        p.kind_ = Kind::generic;
        p.label_ = label;
        return p;
    }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::finite; }
    bool is_infinity() const { return kind_ == Kind::infinity; }
    bool is_generic() const { return kind_ == Kind::generic; }

    const Rat& value() const { return value_; }
    const std::string& label() const { return label_; }

    bool operator==(const PointP1& o) const {
        if (kind_ != o.kind_) return false;
        switch (kind_) {
            case Kind::finite: return value_ == o.value_;
            case Kind::infinity: return true;
            case Kind::generic: return label_ == o.label_;
        }
        return false;
    }
    bool operator!=(const PointP1& o) const { return !(*this == o); }

    // Finite points by value, then infinity, then generic labels.
    bool operator<(const PointP1& o) const {
        if (kind_ != o.kind_) return static_cast<int>(kind_) < static_cast<int>(o.kind_);
        switch (kind_) {
            case Kind::finite: return value_ < o.value_;
            case Kind::infinity: return false;
            case Kind::generic: return label_ < o.label_;
        }
        return false;
    }

    std::string to_string() const {
        switch (kind_) {
            case Kind::finite: return oneform::to_string(value_);
            case Kind::infinity: return "inf";
            case Kind::generic: return "@" + label_;
        }
        return "";
    }

    // Human rendering; machine documents use to_string().
    std::string pretty() const { return is_infinity() ? "∞" : to_string(); }

private:
    Kind kind_;
    Rat value_;
    std::string label_;
};

} // namespace oneform
