#ifndef FFPROJ_PROJLAB_HPP
#define FFPROJ_PROJLAB_HPP

#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "ffproj/grassmann.hpp"

namespace ffproj {

// A subset of F_p^n as a membership array over point indices.
class PointSet {
public:
    PointSet(const PrimeModulus& p, std::size_t n);

    const PrimeModulus& modulus() const { return p_; }
    std::size_t ambient_dim() const { return n_; }
    std::uint64_t universe_size() const { return members_.size(); }
    std::size_t cardinality() const { return cardinality_; }

    bool contains(PointIndex x) const { return members_[x] != 0; }
    void insert(PointIndex x);
    void erase(PointIndex x);

    // Set members in increasing index order.
    std::vector<PointIndex> points() const;

    // Exponent a with #A = p^a; 0 for the empty set.
    double log_p_cardinality() const;

    // Text format: "p n" header, then one comma-separated point per line.
    static PointSet load(std::istream& in);
    void save(std::ostream& out) const;

    friend bool operator==(const PointSet& a, const PointSet& b) {
        return a.p_ == b.p_ && a.n_ == b.n_ && a.members_ == b.members_;
    }

private:
    PrimeModulus p_;
    std::size_t n_;
    std::vector<std::uint8_t> members_;
    std::size_t cardinality_ = 0;
};

// pi_V(A): the distinct canonical coset representatives, sorted.
std::vector<PointIndex> project(const Subspace& v, const PointSet& a);
std::size_t projection_count(const Subspace& v, const PointSet& a);

struct DirectionCount {
    Subspace direction;
    std::size_t count;
};

struct ExceptionalReport {
    std::size_t k = 0;      // target plane dimension; directions live in G(n-k)
    double s = 0;
    double a = 0;           // log_p #A
    bool out_of_range = false;  // s outside (0, min{k, a})
    std::vector<DirectionCount> directions;   // all of G(n-k), enumeration order
    std::vector<std::size_t> exceptional;     // indices into `directions`
    std::size_t overlap_m = 0;
    std::optional<PointIndex> xi0;
    std::vector<std::size_t> theta;           // exceptional V with xi0 in V*
};

ExceptionalReport exceptional_set(const PointSet& a, std::size_t k, double s,
                                  unsigned threads = 1, bool override_guard = false);

// Max over nonzero xi of #{V in E : xi in V*}; ties broken by smallest index.
std::pair<std::size_t, std::optional<PointIndex>> overlap_number(
    const std::vector<Subspace>& e);

// M * p^(n-k+s-a), the Falconer-form right-hand side.
double falconer_rhs(const PointSet& a, std::size_t k, double s, std::size_t m);

struct DyadicClass {
    unsigned beta = 0;                  // slice sizes in [2^beta, 2^(beta+1))
    std::vector<std::size_t> indices;   // slice indices in the class
};

struct SliceDecomposition {
    Subspace direction;                    // H0, dim n-1
    std::vector<std::size_t> slice_sizes;  // p entries, indexed by coset coordinate
    std::vector<DyadicClass> classes;
    std::optional<std::size_t> best_class; // maximizes #I * 2^beta
};

SliceDecomposition slice(const PointSet& a, const Subspace& h0);

// Points of A in slice i of the H0 decomposition.
PointSet slice_member(const PointSet& a, const Subspace& h0, std::size_t i);

// Checks #pi_V(A) = sum_i #pi_V(A_i) for V inside H0.
bool fubini_check(const PointSet& a, const Subspace& v, const Subspace& h0);

// First affine hyperplane H with #(A cap H) >= p^(s+n-k-1), if any.
std::optional<std::pair<AffinePlane, Subspace>> case1_certificate(
    const PointSet& a, std::size_t k, double s, bool override_guard = false);

}  // namespace ffproj

#endif
