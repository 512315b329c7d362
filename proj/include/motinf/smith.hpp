#pragma once

#include "motinf/int_matrix.hpp"

#include <vector>

namespace motinf::motives {

/// U * A * V = S with U, V unimodular and S diagonal, its nonzero diagonal
/// entries positive and forming a divisibility chain d_1 | d_2 | ...
struct SnfResult {
    IntMatrix S;
    IntMatrix U;
    IntMatrix V;

    /// Nonzero diagonal entries of S, in order.
    std::vector<Integer> divisors() const;
    std::size_t rank() const;
};

/// Gcd-driven pivoting on the entry of least absolute value.
SnfResult smith_normal_form(const IntMatrix& a);

struct Cokernel {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;  // elementary divisors > 1

    friend bool operator==(const Cokernel&, const Cokernel&) = default;
};

/// Z^rows / image(A), with A acting on column vectors.
Cokernel cokernel(const IntMatrix& a);
Cokernel cokernel(const SnfResult& snf);
/// Rank of ker(A : Z^cols -> Z^rows).
std::size_t kernel_rank(const IntMatrix& a);
std::size_t kernel_rank(const SnfResult& snf);

}  // namespace motinf::motives
