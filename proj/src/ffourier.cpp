#include "ffproj/ffourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ffproj {

namespace {

// Axis-by-axis transform: for each fiber along axis d, apply the length-p
// character sum with sign = -1 (forward) or +1 (inverse).
void axis_transform(std::vector<std::complex<double>>& vals, std::uint64_t p,
                    std::size_t n, int sign) {
    std::vector<std::complex<double>> omega(p);
    for (std::uint64_t r = 0; r < p; ++r) {
        double t = 2.0 * std::numbers::pi * sign * static_cast<double>(r) /
                   static_cast<double>(p);
        omega[r] = {std::cos(t), std::sin(t)};
    }
    std::vector<std::complex<double>> fiber(p), out(p);
    std::uint64_t total = vals.size();
    for (std::size_t axis = 0; axis < n; ++axis) {
        std::uint64_t stride = pow_u64(p, axis);
        std::uint64_t block = stride * p;
        for (std::uint64_t base = 0; base < total; base += block) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                for (std::uint64_t i = 0; i < p; ++i)
                    fiber[i] = vals[base + off + i * stride];
                for (std::uint64_t j = 0; j < p; ++j) {
                    std::complex<double> acc = 0;
                    for (std::uint64_t i = 0; i < p; ++i)
                        acc += fiber[i] * omega[(i * j) % p];
                    out[j] = acc;
                }
                for (std::uint64_t j = 0; j < p; ++j)
                    vals[base + off + j * stride] = out[j];
            }
        }
    }
}

}  // namespace

GridFunction::GridFunction(const PrimeModulus& p_, std::size_t n_, Side side_)
    : p(p_), n(n_), side(side_) {
    std::uint64_t size = pow_u64(p.value(), n);
    if (size > max_points_guard())
        throw GuardError("instance too large: p^n exceeds the point guard");
    values.assign(size, 0.0);
}

GridFunction indicator(const Subspace& v) {
    GridFunction f(v.modulus(), v.ambient_dim(), Side::physical);
    for (PointIndex x : v.elements()) f.values[x] = 1.0;
    return f;
}

GridFunction indicator(const PointSet& a) {
    GridFunction f(a.modulus(), a.ambient_dim(), Side::physical);
    for (PointIndex x = 0; x < a.universe_size(); ++x)
        if (a.contains(x)) f.values[x] = 1.0;
    return f;
}

GridFunction dft(const GridFunction& f) {
    if (f.side != Side::physical)
        throw std::invalid_argument("dft: expects a physical-side function");
    GridFunction out(f.p, f.n, Side::frequency);
    out.values = f.values;
    axis_transform(out.values, f.p.value(), f.n, -1);
    return out;
}

GridFunction idft(const GridFunction& g) {
    if (g.side != Side::frequency)
        throw std::invalid_argument("idft: expects a frequency-side function");
    GridFunction out(g.p, g.n, Side::physical);
    out.values = g.values;
    axis_transform(out.values, g.p.value(), g.n, +1);
    double scale = 1.0 / static_cast<double>(out.values.size());
    for (auto& v : out.values) v *= scale;
    return out;
}

double plancherel_residual(const GridFunction& f) {
    if (f.side != Side::physical)
        throw std::invalid_argument("plancherel_residual: expects physical side");
    GridFunction g = dft(f);
    double phys = 0, freq = 0;
    for (const auto& v : f.values) phys += std::norm(v);
    for (const auto& v : g.values) freq += std::norm(v);
    return std::abs(phys - freq / static_cast<double>(f.values.size()));
}

std::pair<GridFunction, GridFunction> high_low_split(const GridFunction& f) {
    if (f.side != Side::physical)
        throw std::invalid_argument("high_low_split: expects physical side");
    std::complex<double> mean = 0;
    for (const auto& v : f.values) mean += v;
    mean /= static_cast<double>(f.values.size());
    GridFunction low(f.p, f.n, Side::physical), high(f.p, f.n, Side::physical);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        low.values[i] = mean;
        high.values[i] = f.values[i] - mean;
    }
    return {low, high};
}

Subspace dual_oracle(const Subspace& v) {
    GridFunction fhat = dft(indicator(v));
    double expected = std::pow(static_cast<double>(v.modulus().value()),
                               static_cast<double>(v.dim()));
    std::vector<PointIndex> support;
    for (PointIndex xi = 0; xi < fhat.values.size(); ++xi) {
        double mag = std::abs(fhat.values[xi]);
        if (mag > expected / 2) {
            if (std::abs(mag - expected) > 1e-6 * expected)
                throw std::runtime_error("dual_oracle: support value off p^k");
            support.push_back(xi);
        }
    }
    std::size_t n = v.ambient_dim();
    FpMatrix span_rows(support.size(), n);
    for (std::size_t r = 0; r < support.size(); ++r) {
        std::vector<Residue> coords = decode_point(support[r], v.modulus(), n);
        for (std::size_t c = 0; c < n; ++c) span_rows.at(r, c) = coords[c];
    }
    Subspace result = Subspace::from_span(v.modulus(), n, span_rows);
    if (result.dim() != n - v.dim() ||
        pow_u64(v.modulus().value(), result.dim()) != support.size())
        throw std::runtime_error("dual_oracle: support is not a subspace");
    return result;
}

}  // namespace ffproj
