#ifndef FFPROJ_FPCORE_HPP
#define FFPROJ_FPCORE_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffproj {

using Residue = std::uint32_t;
using PointIndex = std::uint64_t;

// Thrown when an instance exceeds the desk-scale size guard.
class GuardError : public std::runtime_error {
public:
    explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

// Largest admissible modulus; keeps products of residues inside 64 bits.
inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 20;

bool is_prime_u64(std::uint64_t m);

// A validated prime modulus with the basic field operations.
class PrimeModulus {
public:
    explicit PrimeModulus(std::uint64_t p);

    std::uint64_t value() const { return p_; }

    Residue add(Residue a, Residue b) const {
        std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<Residue>(s >= p_ ? s - p_ : s);
    }
    Residue sub(Residue a, Residue b) const {
        return static_cast<Residue>(a >= b ? a - b : a + p_ - b);
    }
    Residue neg(Residue a) const { return a == 0 ? 0 : static_cast<Residue>(p_ - a); }
    Residue mul(Residue a, Residue b) const {
        return static_cast<Residue>((std::uint64_t{a} * b) % p_);
    }
    Residue reduce(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += static_cast<std::int64_t>(p_);
        return static_cast<Residue>(r);
    }
    Residue pow(Residue a, std::uint64_t e) const;
    Residue inv(Residue a) const;

    friend bool operator==(const PrimeModulus& x, const PrimeModulus& y) {
        return x.p_ == y.p_;
    }

private:
    std::uint64_t p_;
};

inline Residue fp_inv(Residue a, const PrimeModulus& p) { return p.inv(a); }

// Dense row-major matrix over F_p.
struct FpMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Residue> entries;

    FpMatrix() = default;
    FpMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, 0) {}

    Residue& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
    Residue at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
    std::span<const Residue> row(std::size_t r) const {
        return {entries.data() + r * cols, cols};
    }

    friend bool operator==(const FpMatrix& a, const FpMatrix& b) {
        return a.rows == b.rows && a.cols == b.cols && a.entries == b.entries;
    }
};

struct RrefResult {
    FpMatrix mat;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

// Reduced row echelon form over F_p; preserves the row space.
RrefResult rref(const FpMatrix& m, const PrimeModulus& p);

// RREF basis of the right kernel {xi : m.xi = 0}; (cols - rank) rows.
FpMatrix null_space(const FpMatrix& m, const PrimeModulus& p);

// y = m.x over F_p.
std::vector<Residue> mat_vec(const FpMatrix& m, std::span<const Residue> x,
                             const PrimeModulus& p);

// p^n, with an overflow check.
std::uint64_t pow_u64(std::uint64_t p, std::size_t n);

// Base-p point index, least significant digit = first coordinate.
PointIndex encode_point(std::span<const Residue> coords, const PrimeModulus& p,
                        std::size_t n);
std::vector<Residue> decode_point(PointIndex idx, const PrimeModulus& p, std::size_t n);

}  // namespace ffproj

#endif
