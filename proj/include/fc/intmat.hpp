// Sparse integer matrices and Smith normal form over Z.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fc {

using Int = boost::multiprecision::cpp_int;

// Row-sparse matrix of arbitrary-precision integers. Immutable in spirit:
// constructions fill entries once, algorithms copy.
class IntMat {
public:
    IntMat() = default;
    IntMat(int rows, int cols) : rows_(rows), cols_(cols), row_(rows) {}

    static IntMat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int at(int i, int j) const;
    void set(int i, int j, Int v);
    void add(int i, int j, const Int& v);
    const std::map<int, Int>& row(int i) const { return row_[i]; }

    bool is_zero() const;
    int nnz() const;

    IntMat operator*(const IntMat& o) const;
    IntMat operator+(const IntMat& o) const;
    IntMat operator-(const IntMat& o) const;
    IntMat operator-() const;
    bool operator==(const IntMat& o) const;
    bool operator!=(const IntMat& o) const { return !(*this == o); }

    IntMat transposed() const;
    IntMat scaled(const Int& c) const;

    // Block placement: copy o into this with offset (r0, c0).
    void place(const IntMat& o, int r0, int c0);

    // Canonical serialization used for fingerprints and reports.
    std::string repr() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<std::map<int, Int>> row_;
};

IntMat hcat(const IntMat& a, const IntMat& b);
IntMat vcat(const IntMat& a, const IntMat& b);

struct SmithResult {
    std::vector<Int> divisors;  // nonzero invariant factors, d1 | d2 | ...
    int rank = 0;
    IntMat left, right;  // left * A * right = diag(divisors), when requested
    bool with_transforms = false;
};

SmithResult smith(const IntMat& a, bool transforms = false);
int rank_of(const IntMat& a);

// Columns of the result form a basis of ker(a) as a sublattice of Z^cols.
IntMat kernel_basis(const IntMat& a);

// Solve a * x = b over the integers, column by column.
std::optional<IntMat> solve_integer(const IntMat& a, const IntMat& b);

}  // namespace fc
