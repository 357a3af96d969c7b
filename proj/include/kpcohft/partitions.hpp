#ifndef KPCOHFT_PARTITIONS_HPP
#define KPCOHFT_PARTITIONS_HPP

#include "kpcohft/pseries.hpp"
#include "kpcohft/rational.hpp"

#include <vector>

namespace kpcohft {

/// Partition as weakly decreasing positive parts; the empty partition is {}.
using Partition = std::vector<int>;

int partition_size(const Partition &p);
int partition_length(const Partition &p);

/// All partitions of n, in lexicographically decreasing order of part lists.
std::vector<Partition> partitions_of(int n);

/// All partitions of 0..n (size-major order).
std::vector<Partition> partitions_up_to(int n);

Partition conjugate(const Partition &p);

/// Centralizer size z_mu = prod_k k^{m_k} m_k!.
Int z_mu(const Partition &mu);

/// Hook lengths of all cells, row-major.
std::vector<int> hook_lengths(const Partition &p);

/// Contents j-i of all cells, row-major.
std::vector<int> contents(const Partition &p);

/// Sum of contents; equals the second Casimir weight f_2(p) entering the
/// hypergeometric tau construction.
Int content_sum(const Partition &p);

/// Number of standard tableaux (hook length formula).
Int dimension(const Partition &p);

/// Irreducible symmetric group character chi^lambda_mu, |lambda| = |mu|.
/// Memoized; safe for concurrent callers.
Int character(const Partition &lambda, const Partition &mu);

/// Schur polynomial s_lambda expanded in power sums p_1, p_2, ...:
/// s_lambda = sum_mu chi^lambda_mu p_mu / z_mu. Coefficients are hbar-free.
PSeries schur_in_powersums(const Partition &lambda, int weight_cap);

} // namespace kpcohft

#endif
