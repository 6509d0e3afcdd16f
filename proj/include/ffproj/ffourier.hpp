#ifndef FFPROJ_FFOURIER_HPP
#define FFPROJ_FFOURIER_HPP

#include <complex>
#include <utility>
#include <vector>

#include "ffproj/grassmann.hpp"
#include "ffproj/projlab.hpp"

namespace ffproj {

enum class Side { physical, frequency };

// A complex-valued function on F_p^n, indexed by PointIndex.
struct GridFunction {
    PrimeModulus p;
    std::size_t n;
    Side side;
    std::vector<std::complex<double>> values;

    GridFunction(const PrimeModulus& p_, std::size_t n_, Side side_);
};

GridFunction indicator(const Subspace& v);
GridFunction indicator(const PointSet& a);

// f_hat(xi) = sum_x f(x) e_p(-x.xi), computed as n axis transforms.
GridFunction dft(const GridFunction& f);

// g_vee(x) = p^-n sum_xi g(xi) e_p(x.xi).
GridFunction idft(const GridFunction& g);

// | sum|f|^2 - p^-n sum|f_hat|^2 |.
double plancherel_residual(const GridFunction& f);

// (low, high): low is the constant mean, high = f - low.
std::pair<GridFunction, GridFunction> high_low_split(const GridFunction& f);

// Recovers V* as supp(dft(1_V)) with threshold p^dim(V)/2; cross-checks that
// the support values equal p^dim(V) and that the support is a subspace.
Subspace dual_oracle(const Subspace& v);

}  // namespace ffproj

#endif
