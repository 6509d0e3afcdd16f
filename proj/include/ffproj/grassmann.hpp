#ifndef FFPROJ_GRASSMANN_HPP
#define FFPROJ_GRASSMANN_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ffproj/fpcore.hpp"

namespace ffproj {

using BigInt = boost::multiprecision::cpp_int;

// Desk-scale guards; FFPROJ_MAX_POINTS in the environment overrides the
// point-count limit.
std::uint64_t max_points_guard();
inline constexpr std::uint64_t kMaxGrassmannian = std::uint64_t{1} << 22;

// A k-dimensional linear subspace of F_p^n, canonicalized by its RREF basis.
class Subspace {
public:
    // Canonicalizes an arbitrary spanning set (rows of `span_rows`).
    static Subspace from_span(const PrimeModulus& p, std::size_t n,
                              const FpMatrix& span_rows);
    // `basis` must already be in RREF with full row rank.
    static Subspace from_rref(const PrimeModulus& p, std::size_t n, FpMatrix basis,
                              std::vector<std::size_t> pivots);

    const PrimeModulus& modulus() const { return p_; }
    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const { return basis_.rows; }
    const FpMatrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    // True iff x (as a point of F_p^n) lies in the subspace.
    bool contains_point(PointIndex x) const;

    // All p^k member points, in span-enumeration order.
    std::vector<PointIndex> elements() const;

    // `k x n` RREF rows, e.g. "1,0,2;0,1,1"; "-" for the zero subspace.
    std::string to_text() const;
    static Subspace parse(const PrimeModulus& p, std::size_t n, const std::string& text);

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.p_ == b.p_ && a.n_ == b.n_ && a.basis_ == b.basis_;
    }

private:
    Subspace(const PrimeModulus& p, std::size_t n, FpMatrix basis,
             std::vector<std::size_t> pivots);

    PrimeModulus p_;
    std::size_t n_;
    FpMatrix basis_;
    std::vector<std::size_t> pivots_;
};

// Coset x + V with the canonical representative (pivot coordinates zeroed).
struct AffinePlane {
    Subspace direction;
    PointIndex rep;

    friend bool operator==(const AffinePlane& a, const AffinePlane& b) {
        return a.direction == b.direction && a.rep == b.rep;
    }
};

// Exact #G(k, F_p^n).
BigInt gaussian_binomial(std::size_t n, std::size_t k, const PrimeModulus& p);

// Streams G(k, F_p^n) in canonical order: pivot sets lexicographic, then free
// entries in base-p counting order.
void for_each_subspace(const PrimeModulus& p, std::size_t n, std::size_t k,
                       const std::function<void(const Subspace&)>& fn,
                       bool override_guard = false);
std::vector<Subspace> enumerate_subspaces(const PrimeModulus& p, std::size_t n,
                                          std::size_t k, bool override_guard = false);

// The frequency-side dual (annihilator) V*.
Subspace dual(const Subspace& v);

// True iff V is a subspace of W.
bool contains(const Subspace& w, const Subspace& v);

// Canonical representative of the coset x + V.
PointIndex coset_rep(const Subspace& v, PointIndex x);
AffinePlane coset_of(const Subspace& v, PointIndex x);

}  // namespace ffproj

#endif
