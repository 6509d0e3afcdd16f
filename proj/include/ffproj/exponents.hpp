#ifndef FFPROJ_EXPONENTS_HPP
#define FFPROJ_EXPONENTS_HPP

#include <cstddef>

namespace ffproj {

struct BoundExponents {
    double kaufman = 0;
    double falconer = 0;
    double he_s_star = 0;
    double he_exponent = 0;
    double main_t = 0;
};

// t(a,s) = max{k(n-k) + 2(s-a), (k-1)(n-k)}.
double main_exponent(std::size_t n, std::size_t k, double a, double s);

BoundExponents classical_exponents(std::size_t n, std::size_t k, double a, double s);

// Piecewise conjectured lower bounds for n = 3, following the printed
// inequalities verbatim (breakpoints closed on the left branch).
enum class ConjTarget { lines, planes };
double conjectured_exponent(ConjTarget target, double a, double s);

}  // namespace ffproj

#endif
