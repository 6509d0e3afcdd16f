#ifndef FFPROJ_CONSTRUCTIONS_HPP
#define FFPROJ_CONSTRUCTIONS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ffproj/projlab.hpp"

namespace ffproj {

// Fixed 64-bit mixing generator (splitmix64 constants) so any implementation
// reproduces the same seeded sets.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // Uniform in [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound);

private:
    std::uint64_t state_;
};

// floor(p^a) rounded half-down: ceil(p^a - 1/2).
std::uint64_t round_half_down_pow(double p, double a);

enum class ConstructionKind { st_product, cylinder, planar_slab, random_kind };

struct ConstructionSpec {
    ConstructionKind kind = ConstructionKind::random_kind;
    std::uint64_t p = 3;
    std::size_t n = 2;
    double a = 1.0;
    double s = 0.5;
    double slab_exponent = 0.0;
    std::size_t sub_dim = 1;
    std::uint64_t seed = 0;
    // Cylinder only: the base construction in dimension n-1.
    ConstructionKind base_kind = ConstructionKind::random_kind;

    // "kind:param=value,param=value", e.g. "st_product:p=101,a=1.2,s=0.8".
    static ConstructionSpec parse(const std::string& text);
    std::string label() const;
};

struct ConstructionResult {
    PointSet set;
    std::vector<Subspace> predicted_directions;
    double predicted_count_bound = 0;
};

// Uniformly random subset of cardinality round_half_down(p^a); deterministic
// in (p, n, a, seed).
PointSet random_set(const PrimeModulus& p, std::size_t n, double a, std::uint64_t seed);

// Szemeredi-Trotter product example in F_p^2: the box |x| <= p^(a-s),
// |y| <= p^s, with the fan of slopes |k| <= p^(2s-a) as predicted directions.
ConstructionResult st_product(const PrimeModulus& p, double a, double s);

// A' x F_p for a base construction A' in F_p^(n-1).
ConstructionResult cylinder(const PrimeModulus& p, std::size_t n,
                            const ConstructionSpec& base);

// F_p^sub_dim x I^(n-sub_dim) with #I = round_half_down(p^slab_exponent).
ConstructionResult planar_slab(const PrimeModulus& p, std::size_t n,
                               std::size_t sub_dim, double slab_exponent);

ConstructionResult build(const ConstructionSpec& spec);

}  // namespace ffproj

#endif
