#include "ifslab/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "ifslab/error.hpp"

namespace ifslab {

TransitionMatrix::TransitionMatrix(int k, std::vector<double> entries) : k_(k), p_(std::move(entries)) {
    if (k < 1) fail(ErrorCode::InvalidAlphabet, "transition matrix needs k >= 1");
    if (p_.size() != static_cast<std::size_t>(k) * static_cast<std::size_t>(k))
        fail(ErrorCode::Shape, "transition matrix needs k*k entries");
    for (int i = 0; i < k; ++i) {
        double sum = 0.0;
        for (int j = 0; j < k; ++j) {
            double v = (*this)(i, j);
            if (!(v >= 0.0) || !std::isfinite(v))
                fail(ErrorCode::Parameter, "transition matrix entries must be finite and >= 0");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            fail(ErrorCode::Parameter, "row " + std::to_string(i + 1) + " of transition matrix sums to " +
                                           std::to_string(sum));
    }
}

TransitionMatrix TransitionMatrix::bernoulli(std::span<const double> weights) {
    const int k = static_cast<int>(weights.size());
    std::vector<double> e;
    e.reserve(weights.size() * weights.size());
    for (int i = 0; i < k; ++i) e.insert(e.end(), weights.begin(), weights.end());
    return TransitionMatrix(k, std::move(e));
}

TransitionMatrix TransitionMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const int k = static_cast<int>(rows.size());
    std::vector<double> e;
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != k) fail(ErrorCode::Shape, "transition matrix must be square");
        e.insert(e.end(), r.begin(), r.end());
    }
    return TransitionMatrix(k, std::move(e));
}

std::vector<double> TransitionMatrix::left_multiply(std::span<const double> v) const {
    if (static_cast<int>(v.size()) != k_) fail(ErrorCode::Shape, "vector length does not match matrix");
    std::vector<double> out(static_cast<std::size_t>(k_), 0.0);
    for (int i = 0; i < k_; ++i)
        for (int j = 0; j < k_; ++j) out[static_cast<std::size_t>(j)] += v[static_cast<std::size_t>(i)] * (*this)(i, j);
    return out;
}

void write_csv(std::ostream& os, const TransitionMatrix& p) {
    char buf[40];
    for (int i = 0; i < p.size(); ++i) {
        for (int j = 0; j < p.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", p(i, j));
            os << (j ? "," : "") << buf;
        }
        os << '\n';
    }
}

TransitionMatrix read_matrix_csv(std::istream& is) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                fail(ErrorCode::Io, "matrix csv: bad cell '" + cell + "'");
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) fail(ErrorCode::Io, "matrix csv: no rows");
    return TransitionMatrix::from_rows(rows);
}

}  // namespace ifslab
