#pragma once

#include <compare>
#include <vector>

#include "grassfold/rational.hpp"

namespace grassfold {

// Dense matrix of exact rationals, row major.
class ExactMatrix {
  public:
    ExactMatrix() : rows_(0), cols_(0) {}
    ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }
    const std::vector<Rat>& entries() const { return a_; }

    static ExactMatrix identity(int n);

    std::vector<Rat> row(int i) const;
    void set_row(int i, const std::vector<Rat>& r);

    bool operator==(const ExactMatrix& o) const;
    // Lexicographic by (rows, cols, entries); gives all canonical orderings
    // used for deduplication and deterministic iteration downstream.
    std::strong_ordering operator<=>(const ExactMatrix& o) const;

  private:
    int rows_, cols_;
    std::vector<Rat> a_;
};

struct RrefResult {
    ExactMatrix reduced;
    std::vector<int> pivots;
    int rank = 0;
};

// Reduced row echelon form with deterministic pivoting: for each column in
// order, the first row with a nonzero entry.
RrefResult rref(const ExactMatrix& m);

int rank_of(const ExactMatrix& m);

// Exact determinant; throws precondition_error for non-square input.
Rat det(const ExactMatrix& m);

// Column j is (1, t_j, t_j^2, ..., t_j^{height-1})^T.
ExactMatrix vandermonde(const std::vector<Rat>& t, int height);

ExactMatrix stack_rows(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix mat_mul(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix transpose(const ExactMatrix& m);

}  // namespace grassfold
