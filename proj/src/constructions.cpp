#include "ffproj/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ffproj {

std::uint64_t SplitMix64::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("below: zero bound");
    std::uint64_t threshold = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
        std::uint64_t r = next();
        if (r < threshold) return r % bound;
    }
}

std::uint64_t round_half_down_pow(double p, double a) {
    double v = std::pow(p, a);
    double r = std::ceil(v - 0.5);
    if (r < 0) r = 0;
    return static_cast<std::uint64_t>(r);
}

PointSet random_set(const PrimeModulus& p, std::size_t n, double a,
                    std::uint64_t seed) {
    if (a <= 0 || a > static_cast<double>(n))
        throw std::invalid_argument("random_set: need 0 < a <= n");
    std::uint64_t universe = pow_u64(p.value(), n);
    std::uint64_t card = round_half_down_pow(static_cast<double>(p.value()), a);
    if (card > universe) throw std::invalid_argument("random_set: cardinality > p^n");

    PointSet out(p, n);
    if (card == universe) {
        for (PointIndex x = 0; x < universe; ++x) out.insert(x);
        return out;
    }
    // Seeded Fisher-Yates; the first `card` entries form the sample.
    std::vector<PointIndex> perm(universe);
    std::iota(perm.begin(), perm.end(), 0);
    SplitMix64 rng(seed);
    for (std::uint64_t i = 0; i < card; ++i) {
        std::uint64_t j = i + rng.below(universe - i);
        std::swap(perm[i], perm[j]);
        out.insert(perm[i]);
    }
    return out;
}

ConstructionResult st_product(const PrimeModulus& p, double a, double s) {
    double pd = static_cast<double>(p.value());
    if (2 * s < a) throw std::invalid_argument("st_product: need 2s >= a");
    if (s <= 0 || s >= 1) throw std::invalid_argument("st_product: need 0 < s < 1");
    std::uint64_t slope_max = static_cast<std::uint64_t>(std::floor(std::pow(pd, 2 * s - a)));
    std::uint64_t x_max = static_cast<std::uint64_t>(std::floor(std::pow(pd, a - s)));
    std::uint64_t y_max = static_cast<std::uint64_t>(std::floor(std::pow(pd, s)));
    // The covering argument needs |y - kx| <= 10 p^s for every point and every
    // predicted slope, and the 2*slope_max+1 slopes must stay distinct mod p.
    if (static_cast<double>(slope_max * x_max + y_max) > 10.0 * std::pow(pd, s) ||
        2 * slope_max + 1 > p.value())
        throw std::invalid_argument("st_product: construction would wrap mod p");

    PointSet set(p, 2);
    std::vector<Residue> coords(2);
    for (std::int64_t x = -static_cast<std::int64_t>(x_max);
         x <= static_cast<std::int64_t>(x_max); ++x) {
        for (std::int64_t y = -static_cast<std::int64_t>(y_max);
             y <= static_cast<std::int64_t>(y_max); ++y) {
            coords[0] = p.reduce(x);
            coords[1] = p.reduce(y);
            set.insert(encode_point(coords, p, 2));
        }
    }

    std::vector<Subspace> predicted;
    for (std::int64_t k = -static_cast<std::int64_t>(slope_max);
         k <= static_cast<std::int64_t>(slope_max); ++k) {
        FpMatrix row(1, 2);
        row.at(0, 0) = 1;
        row.at(0, 1) = p.reduce(k);
        predicted.push_back(Subspace::from_span(p, 2, row));
    }
    return {std::move(set), std::move(predicted), 21.0 * std::pow(pd, s)};
}

ConstructionResult cylinder(const PrimeModulus& p, std::size_t n,
                            const ConstructionSpec& base) {
    if (base.n + 1 != n || base.p != p.value())
        throw std::invalid_argument("cylinder: base must live in F_p^(n-1)");
    ConstructionResult base_result = build(base);

    PointSet set(p, n);
    std::uint64_t layer = pow_u64(p.value(), n - 1);
    for (PointIndex x : base_result.set.points())
        for (std::uint64_t t = 0; t < p.value(); ++t) set.insert(x + t * layer);

    // Lift each base direction V' to span{V', e_n}; coset counts are unchanged
    // since the cylinder factors through the base.
    std::vector<Subspace> predicted;
    for (const Subspace& v : base_result.predicted_directions) {
        FpMatrix rows(v.dim() + 1, n);
        for (std::size_t r = 0; r < v.dim(); ++r)
            for (std::size_t c = 0; c + 1 < n; ++c) rows.at(r, c) = v.basis().at(r, c);
        rows.at(v.dim(), n - 1) = 1;
        predicted.push_back(Subspace::from_span(p, n, rows));
    }
    double bound = base_result.predicted_directions.empty()
                       ? 0.0
                       : base_result.predicted_count_bound;
    // The vertical fiber direction itself projects onto the base set.
    if (base_result.set.cardinality() < layer) {
        FpMatrix vert(1, n);
        vert.at(0, n - 1) = 1;
        predicted.push_back(Subspace::from_span(p, n, vert));
        bound = std::max(bound, static_cast<double>(base_result.set.cardinality()));
    }
    return {std::move(set), std::move(predicted), bound};
}

ConstructionResult planar_slab(const PrimeModulus& p, std::size_t n,
                               std::size_t sub_dim, double slab_exponent) {
    if (sub_dim == 0 || sub_dim >= n)
        throw std::invalid_argument("planar_slab: need 0 < sub_dim < n");
    if (slab_exponent < 0 || slab_exponent >= 1)
        throw std::invalid_argument("planar_slab: need 0 <= slab_exponent < 1");
    std::uint64_t interval =
        std::max<std::uint64_t>(1, round_half_down_pow(static_cast<double>(p.value()),
                                                       slab_exponent));

    PointSet set(p, n);
    std::vector<Residue> coords(n, 0);
    // Odometer over F_p^sub_dim x I^(n-sub_dim).
    for (;;) {
        set.insert(encode_point(coords, p, n));
        std::size_t d = 0;
        for (; d < n; ++d) {
            std::uint64_t limit = d < sub_dim ? p.value() : interval;
            if (++coords[d] < limit) break;
            coords[d] = 0;
        }
        if (d == n) break;
    }

    // Every (sub_dim-1)-dimensional direction inside the coordinate subspace.
    std::vector<Subspace> predicted;
    for_each_subspace(p, sub_dim, sub_dim - 1, [&](const Subspace& v) {
        FpMatrix rows(v.dim(), n);
        for (std::size_t r = 0; r < v.dim(); ++r)
            for (std::size_t c = 0; c < sub_dim; ++c) rows.at(r, c) = v.basis().at(r, c);
        predicted.push_back(Subspace::from_span(p, n, rows));
    });
    double bound = static_cast<double>(p.value()) *
                   std::pow(static_cast<double>(interval),
                            static_cast<double>(n - sub_dim));
    return {std::move(set), std::move(predicted), bound};
}

ConstructionResult build(const ConstructionSpec& spec) {
    PrimeModulus p(spec.p);
    switch (spec.kind) {
        case ConstructionKind::st_product:
            return st_product(p, spec.a, spec.s);
        case ConstructionKind::cylinder: {
            ConstructionSpec base = spec;
            base.kind = spec.base_kind;
            base.n = spec.n - 1;
            return cylinder(p, spec.n, base);
        }
        case ConstructionKind::planar_slab:
            return planar_slab(p, spec.n, spec.sub_dim, spec.slab_exponent);
        case ConstructionKind::random_kind:
            return {random_set(p, spec.n, spec.a, spec.seed), {}, 0.0};
    }
    throw std::logic_error("build: unknown construction kind");
}

namespace {

ConstructionKind parse_kind(const std::string& name) {
    if (name == "st_product") return ConstructionKind::st_product;
    if (name == "cylinder") return ConstructionKind::cylinder;
    if (name == "planar_slab") return ConstructionKind::planar_slab;
    if (name == "random") return ConstructionKind::random_kind;
    throw std::invalid_argument("unknown construction kind: " + name);
}

std::string kind_name(ConstructionKind k) {
    switch (k) {
        case ConstructionKind::st_product: return "st_product";
        case ConstructionKind::cylinder: return "cylinder";
        case ConstructionKind::planar_slab: return "planar_slab";
        case ConstructionKind::random_kind: return "random";
    }
    return "?";
}

}  // namespace

ConstructionSpec ConstructionSpec::parse(const std::string& text) {
    ConstructionSpec spec;
    std::size_t colon = text.find(':');
    spec.kind = parse_kind(text.substr(0, colon));
    if (colon == std::string::npos) return spec;
    std::istringstream is(text.substr(colon + 1));
    std::string item;
    while (std::getline(is, item, ',')) {
        std::size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("construction parameter needs key=value: " + item);
        std::string key = item.substr(0, eq), value = item.substr(eq + 1);
        if (key == "p") spec.p = std::stoull(value);
        else if (key == "n") spec.n = std::stoull(value);
        else if (key == "a") spec.a = std::stod(value);
        else if (key == "s") spec.s = std::stod(value);
        else if (key == "slab_exponent") spec.slab_exponent = std::stod(value);
        else if (key == "sub_dim") spec.sub_dim = std::stoull(value);
        else if (key == "seed") spec.seed = std::stoull(value);
        else if (key == "base") spec.base_kind = parse_kind(value);
        else throw std::invalid_argument("unknown construction parameter: " + key);
    }
    if (spec.kind == ConstructionKind::st_product) spec.n = 2;
    return spec;
}

std::string ConstructionSpec::label() const { return kind_name(kind); }

}  // namespace ffproj
