#ifndef CYLREF_EXTNAT_HPP
#define CYLREF_EXTNAT_HPP

#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace cylref {

/**
 * Saturating counter over the naturals extended by infinity.
 *
 * Finite values are exact; any sum involving the infinite value is
 * infinite. Every finite value compares below infinity.
 */
class ExtNat {
public:
    constexpr ExtNat() : value_(0), infinite_(false) {}
    constexpr ExtNat(std::uint64_t v) : value_(v), infinite_(false) {}

    static constexpr ExtNat infinity() {
        ExtNat n;
        n.infinite_ = true;
        return n;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_zero() const { return !infinite_ && value_ == 0; }

    constexpr std::uint64_t finite_value() const {
        return infinite_ ? std::numeric_limits<std::uint64_t>::max() : value_;
    }

    friend constexpr ExtNat operator+(ExtNat a, ExtNat b) {
        if (a.infinite_ || b.infinite_) return infinity();
        std::uint64_t s = a.value_ + b.value_;
        if (s < a.value_) return infinity();  // saturate instead of wrapping
        return ExtNat(s);
    }
    ExtNat& operator+=(ExtNat o) { return *this = *this + o; }

    friend constexpr bool operator==(ExtNat a, ExtNat b) {
        if (a.infinite_ != b.infinite_) return false;
        return a.infinite_ || a.value_ == b.value_;
    }
    friend constexpr bool operator!=(ExtNat a, ExtNat b) { return !(a == b); }
    friend constexpr bool operator<(ExtNat a, ExtNat b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.value_ < b.value_;
    }
    friend constexpr bool operator<=(ExtNat a, ExtNat b) { return a < b || a == b; }

    // Serialized form is "inf" or decimal digits; both directions are exact.
    std::string str() const { return infinite_ ? "inf" : std::to_string(value_); }

    static ExtNat parse(const std::string& s) {
        if (s == "inf") return infinity();
        if (s.empty()) throw std::invalid_argument("ExtNat: empty string");
        for (char c : s)
            if (c < '0' || c > '9') throw std::invalid_argument("ExtNat: bad digit in '" + s + "'");
        return ExtNat(std::stoull(s));
    }

    friend std::ostream& operator<<(std::ostream& os, ExtNat n) { return os << n.str(); }

private:
    std::uint64_t value_;
    bool infinite_;
};

}  // namespace cylref

#endif
