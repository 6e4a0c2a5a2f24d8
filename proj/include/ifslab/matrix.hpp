#pragma once

#include <iosfwd>
#include <span>
#include <vector>

namespace ifslab {

/// Row-stochastic k x k matrix, row-major. Validated on construction:
/// entries are nonnegative and every row sums to one within 1e-12.
class TransitionMatrix {
public:
    TransitionMatrix() = default;
    TransitionMatrix(int k, std::vector<double> entries);

    /// Rank-one matrix whose rows all equal `weights` (an IFS with probabilities).
    static TransitionMatrix bernoulli(std::span<const double> weights);
    static TransitionMatrix from_rows(const std::vector<std::vector<double>>& rows);

    int size() const noexcept { return k_; }
    double operator()(int i, int j) const noexcept { return p_[static_cast<std::size_t>(i * k_ + j)]; }
    std::span<const double> row(int i) const noexcept {
        return {p_.data() + static_cast<std::size_t>(i * k_), static_cast<std::size_t>(k_)};
    }
    std::span<const double> entries() const noexcept { return p_; }

    /// Row vector times matrix.
    std::vector<double> left_multiply(std::span<const double> v) const;

    friend bool operator==(const TransitionMatrix&, const TransitionMatrix&) = default;

private:
    int k_ = 0;
    std::vector<double> p_;
};

/// One row per line, comma separated.
void write_csv(std::ostream& os, const TransitionMatrix& p);
TransitionMatrix read_matrix_csv(std::istream& is);

}  // namespace ifslab
