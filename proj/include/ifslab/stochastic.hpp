#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ifslab/ifs.hpp"
#include "ifslab/matrix.hpp"
#include "ifslab/symbolic.hpp"

namespace ifslab {

/// Power iteration on the lazy chain (P + I)/2 from the uniform vector, which
/// converges for periodic irreducible P as well. Throws Structure for
/// reducible P and Convergence when max_iter is exhausted.
std::vector<double> stationary_vector(const TransitionMatrix& p, double tol = 1e-14, int max_iter = 1000000);

bool is_irreducible(const TransitionMatrix& p);
/// Irreducible and P^((k-1)^2+1) strictly positive (Wielandt's bound).
bool is_primitive(const TransitionMatrix& p);

/// Time-reversed chain q_ij = (p_j / p_i) p_ji.
TransitionMatrix inverse_matrix(const TransitionMatrix& p, std::span<const double> pbar);

using WordPair = std::pair<Word, Word>;

/// Throws Precondition unless every map sends J into itself and is
/// strictly monotone (hence injective) on J.
void check_invariant_injective(const Ifs& f, Interval j);

/// Admissible words u, v with the same first symbol whose images are
/// disjoint and lie in J. Pairs are visited by longest length, then
/// lexicographically, so the result is deterministic.
std::optional<WordPair> split_check(const Ifs& f, const TransitionMatrix& p, std::span<const double> pbar,
                                    Interval j, int max_depth);

/// Any two words whose images are disjoint and lie in J.
std::optional<WordPair> separability_check(const Ifs& f, Interval j, int max_depth);

struct RigidityResult {
    bool split_on_symbol = false;
    std::optional<WordPair> witness;
};

/// Two admissible words starting with `symbol`, with disjoint images of
/// diameter <= tol each: the coding map takes two values on that cylinder.
RigidityResult rigidity_check(const Ifs& f, const TransitionMatrix& p, std::span<const double> pbar, int symbol,
                              double tol, int max_depth);

}  // namespace ifslab
