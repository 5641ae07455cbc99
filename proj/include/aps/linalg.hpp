#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace aps {

using BigInt = boost::multiprecision::cpp_int;

enum class Ring { Z, Q, F2 };

std::string ring_name(Ring r);
Ring ring_from_name(const std::string& name);

/// Exact sparse integer matrix in coordinate form.  Entries of the APS
/// differentials are always -1/+1, so the stored coefficient is a plain int;
/// all arithmetic that can grow (elimination, SNF) is done in BigInt.
struct SparseIntMatrix {
    std::int64_t rows = 0, cols = 0;
    struct Entry {
        std::int32_t row, col;
        std::int32_t value;
    };
    std::vector<Entry> entries;  // no duplicates, no zeros

    void add(std::int32_t r, std::int32_t c, std::int32_t v) { entries.push_back({r, c, v}); }
};

struct SnfResult {
    std::int64_t rank = 0;
    std::vector<BigInt> divisors;  // d_1 | d_2 | ... | d_rank, all positive
};

/// Smith normal form over Z, exact.  Markowitz-style pivoting with a strong
/// preference for unit pivots keeps fill and coefficient growth down.
SnfResult smith_normal_form(const SparseIntMatrix& m);

/// Rank over the rationals (= number of nonzero SNF divisors).
std::int64_t rank_q(const SparseIntMatrix& m);

/// Rank over F2.  Bit-packed elimination for narrow matrices, sparse column
/// reduction otherwise.
std::int64_t rank_mod2(const SparseIntMatrix& m);

struct DegreeHomology {
    int degree = 0;              // shifted homological degree h = |v| - n_minus
    std::int64_t dim = 0;        // chain dimension
    std::int64_t betti = 0;      // rank of H^degree over the chosen ring
    std::vector<BigInt> torsion; // elementary divisors > 1 (ring Z only)
};

struct HomologyReport {
    Ring ring = Ring::F2;
    std::vector<DegreeHomology> degrees;  // ascending degree
    std::int64_t total_rank = 0;
    std::int64_t euler_characteristic = 0;
};

/// A graded chain complex: dims[w] chains in internal degree w, and
/// differentials[w] : C_w -> C_{w+1} (rows = dims[w+1], cols = dims[w]).
/// `shift` is subtracted from w in reports (homological degree = w - shift).
struct GradedComplex {
    std::vector<std::int64_t> dims;
    std::vector<SparseIntMatrix> differentials;  // size dims.size()-1 (or 0)
    int shift = 0;
    bool verified_d_squared = false;

    std::int64_t total_dim() const;
};

/// Exact check that consecutive differentials compose to zero over Z.
bool differentials_square_to_zero(const GradedComplex& c);

/// Homology of the graded complex over the given ring.  Throws
/// InconsistentComplex when the complex was not verified and fails D^2 = 0.
HomologyReport homology(const GradedComplex& c, Ring ring);

}  // namespace aps
