#ifndef CYLREF_RATIONAL_HPP
#define CYLREF_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace cylref {

/**
 * Exact positive rational, always stored in lowest terms.
 *
 * Moduli, scales and stretch factors live here; comparisons are exact
 * and there is deliberately no conversion to floating point.
 */
class PosRational {
public:
    PosRational() : num_(1), den_(1) {}

    PosRational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
        if (num_ <= 0 || den_ <= 0)
            throw std::invalid_argument("PosRational: numerator and denominator must be positive");
        reduce();
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    friend PosRational operator*(PosRational a, PosRational b) {
        // Cross-cancel first so intermediate products stay small.
        std::int64_t g1 = std::gcd(a.num_, b.den_);
        std::int64_t g2 = std::gcd(b.num_, a.den_);
        return PosRational((a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1));
    }
    friend PosRational operator/(PosRational a, PosRational b) { return a * b.reciprocal(); }

    PosRational reciprocal() const { return PosRational(den_, num_); }

    friend bool operator==(PosRational a, PosRational b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(PosRational a, PosRational b) { return !(a == b); }
    friend bool operator<(PosRational a, PosRational b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator<=(PosRational a, PosRational b) { return a < b || a == b; }
    friend bool operator>(PosRational a, PosRational b) { return b < a; }
    friend bool operator>=(PosRational a, PosRational b) { return b <= a; }

    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

    // Accepts "p/q" or a bare positive integer "p".
    static PosRational parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return PosRational(std::stoll(s), 1);
            return PosRational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("PosRational: cannot parse '" + s + "'");
        } catch (const std::out_of_range&) {
            throw std::invalid_argument("PosRational: out of range '" + s + "'");
        }
    }

    friend std::ostream& operator<<(std::ostream& os, PosRational r) { return os << r.str(); }

private:
    void reduce() {
        std::int64_t g = std::gcd(num_, den_);
        num_ /= g;
        den_ /= g;
    }

    std::int64_t num_;
    std::int64_t den_;
};

}  // namespace cylref

#endif
