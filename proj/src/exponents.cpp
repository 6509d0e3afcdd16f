#include "ffproj/exponents.hpp"

#include <algorithm>
#include <stdexcept>

namespace ffproj {

double main_exponent(std::size_t n, std::size_t k, double a, double s) {
    if (k == 0 || k >= n) throw std::invalid_argument("main_exponent: need 0 < k < n");
    double kk = static_cast<double>(k), nn = static_cast<double>(n);
    return std::max(kk * (nn - kk) + 2 * (s - a), (kk - 1) * (nn - kk));
}

BoundExponents classical_exponents(std::size_t n, std::size_t k, double a, double s) {
    if (k == 0 || k >= n)
        throw std::invalid_argument("classical_exponents: need 0 < k < n");
    double kk = static_cast<double>(k), nn = static_cast<double>(n);
    BoundExponents out;
    out.kaufman = kk * (nn - kk) + s - kk;
    out.falconer = std::max(kk * (nn - kk) + s - a, 0.0);
    out.he_s_star = kk / nn * a;
    out.he_exponent = kk * (nn - kk) - 1;
    out.main_t = main_exponent(n, k, a, s);
    return out;
}

double conjectured_exponent(ConjTarget target, double a, double s) {
    if (a <= 0 || a > 3)
        throw std::invalid_argument("conjectured_exponent: need 0 < a <= 3");
    double k = target == ConjTarget::lines ? 1.0 : 2.0;
    if (s <= 0 || s >= std::min(k, a))
        throw std::invalid_argument("conjectured_exponent: s out of range");

    if (target == ConjTarget::lines) {
        if (a <= 1) return 1;
        if (a <= 2) {
            if (s <= (a - 1) / 2) return 0;
            if (s <= a - 1) return 1 + 2 * s - a;
            return 1;
        }
        if (s <= (a - 1) / 2) return 0;
        return 1 + 2 * s - a;
    }

    // planes
    if (a <= 1) return std::max(0.0, 2 * s - a);
    if (a <= 2) {
        if (s <= a / 2) return 0;
        if (s <= 1) return 2 * s - a;
        if (s <= (a + 1) / 2) return 1;
        return 2 * s - a;
    }
    if (s <= a - 1) return 0;
    if (s <= (a + 1) / 2) return 1;
    return 2 * s - a;
}

}  // namespace ffproj
