#include "ifslab/symbolic.hpp"

#include <algorithm>
#include <limits>

#include "ifslab/error.hpp"
#include "ifslab/rng.hpp"

namespace ifslab {

namespace {

void check_alphabet(int k) {
    if (k < 1) fail(ErrorCode::InvalidAlphabet, "alphabet size must be >= 1, got " + std::to_string(k));
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
    return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

}  // namespace

Word::Word(int alphabet_size, std::vector<int> symbols) : k_(alphabet_size), symbols_(std::move(symbols)) {
    check_alphabet(k_);
    for (int s : symbols_)
        if (s < 1 || s > k_)
            fail(ErrorCode::Index, "symbol " + std::to_string(s) + " outside {1.." + std::to_string(k_) + "}");
}

Word Word::append(int symbol) const {
    std::vector<int> s = symbols_;
    s.push_back(symbol);
    return Word(k_, std::move(s));
}

Word Word::reversed() const {
    return Word(k_, std::vector<int>(symbols_.rbegin(), symbols_.rend()));
}

std::string Word::str() const {
    std::string out;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (i && k_ > 9) out += '.';
        out += std::to_string(symbols_[i]);
    }
    return out;
}

std::vector<Word> enumerate_words(int k, int max_len) {
    check_alphabet(k);
    if (max_len < 0) fail(ErrorCode::Parameter, "max_len must be >= 0");
    std::vector<Word> out;
    std::vector<std::vector<int>> level{{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<std::vector<int>> next;
        next.reserve(level.size() * static_cast<std::size_t>(k));
        for (const auto& w : level)
            for (int s = 1; s <= k; ++s) {
                auto v = w;
                v.push_back(s);
                next.push_back(std::move(v));
            }
        for (const auto& w : next) out.emplace_back(k, w);
        level = std::move(next);
    }
    return out;
}

std::uint64_t disjunctive_bound(int k, int max_len) {
    check_alphabet(k);
    std::uint64_t total = 0, count = 1;
    for (int len = 1; len <= max_len; ++len) {
        count = saturating_mul(count, static_cast<std::uint64_t>(k));
        total = saturating_add(total, saturating_mul(count, static_cast<std::uint64_t>(len)));
    }
    return total;
}

SymbolStream SymbolStream::constant(int k, int symbol) {
    check_alphabet(k);
    if (symbol < 1 || symbol > k) fail(ErrorCode::Index, "constant stream symbol out of range");
    SymbolStream s;
    s.kind_ = Kind::Constant;
    s.k_ = k;
    s.pattern_ = {symbol};
    return s;
}

SymbolStream SymbolStream::periodic(const Word& w) {
    if (w.empty()) fail(ErrorCode::Parameter, "periodic stream needs a nonempty word");
    SymbolStream s;
    s.kind_ = Kind::Periodic;
    s.k_ = w.alphabet_size();
    s.pattern_.assign(w.symbols().begin(), w.symbols().end());
    return s;
}

SymbolStream SymbolStream::disjunctive(int k) {
    check_alphabet(k);
    if (k == 1) return constant(1, 1);
    SymbolStream s;
    s.kind_ = Kind::Disjunctive;
    s.k_ = k;
    return s;
}

SymbolStream SymbolStream::bernoulli(std::vector<double> weights, std::uint64_t seed) {
    if (weights.empty()) fail(ErrorCode::InvalidAlphabet, "bernoulli stream needs weights");
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) fail(ErrorCode::Parameter, "bernoulli weights must be >= 0");
        sum += w;
    }
    if (!(sum > 0.0)) fail(ErrorCode::Parameter, "bernoulli weights must not all vanish");
    SymbolStream s;
    s.kind_ = Kind::RandomBernoulli;
    s.k_ = static_cast<int>(weights.size());
    s.weights_ = std::move(weights);
    s.seed_ = seed;
    return s;
}

SymbolStream SymbolStream::markov(TransitionMatrix p, std::vector<double> initial, std::uint64_t seed) {
    if (static_cast<int>(initial.size()) != p.size())
        fail(ErrorCode::Shape, "initial vector length does not match transition matrix");
    SymbolStream s;
    s.kind_ = Kind::RandomMarkov;
    s.k_ = p.size();
    s.matrix_ = std::move(p);
    s.weights_ = std::move(initial);
    s.seed_ = seed;
    return s;
}

int SymbolStream::at(std::size_t n) const {
    switch (kind_) {
        case Kind::Constant:
            return pattern_.front();
        case Kind::Periodic:
            return pattern_[n % pattern_.size()];
        case Kind::Disjunctive: {
            std::uint64_t offset = n;
            std::uint64_t count = 1;
            for (std::uint64_t len = 1;; ++len) {
                count = saturating_mul(count, static_cast<std::uint64_t>(k_));
                const std::uint64_t block = saturating_mul(count, len);
                if (offset < block) {
                    std::uint64_t index = offset / len;
                    const std::uint64_t pos = offset % len;
                    // Digit `pos` (most significant first) of `index` in base k.
                    for (std::uint64_t d = len - 1; d > pos; --d) index /= static_cast<std::uint64_t>(k_);
                    return static_cast<int>(index % static_cast<std::uint64_t>(k_)) + 1;
                }
                offset -= block;
            }
        }
        case Kind::RandomBernoulli:
            return draw_category(weights_, to_unit(derive_seed(seed_, n))) + 1;
        case Kind::RandomMarkov: {
            int state = draw_category(weights_, to_unit(derive_seed(seed_, 0)));
            for (std::size_t i = 1; i <= n; ++i) state = draw_category(matrix_.row(state), to_unit(derive_seed(seed_, i)));
            return state + 1;
        }
    }
    return 1;
}

std::vector<int> SymbolStream::prefix(std::size_t n) const {
    std::vector<int> out;
    out.reserve(n);
    if (kind_ == Kind::RandomMarkov) {
        if (n == 0) return out;
        int state = draw_category(weights_, to_unit(derive_seed(seed_, 0)));
        out.push_back(state + 1);
        for (std::size_t i = 1; i < n; ++i) {
            state = draw_category(matrix_.row(state), to_unit(derive_seed(seed_, i)));
            out.push_back(state + 1);
        }
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
    return out;
}

double cylinder_measure(const TransitionMatrix& p, std::span<const double> pbar, const Word& w) {
    if (w.empty()) fail(ErrorCode::Parameter, "cylinder_measure needs a nonempty word");
    if (static_cast<int>(pbar.size()) != p.size()) fail(ErrorCode::Shape, "stationary vector length mismatch");
    const auto s = w.symbols();
    for (int sym : s)
        if (sym < 1 || sym > p.size()) fail(ErrorCode::Index, "symbol outside matrix alphabet");
    double m = pbar[static_cast<std::size_t>(s[0] - 1)];
    for (std::size_t i = 0; i + 1 < s.size(); ++i) m *= p(s[i] - 1, s[i + 1] - 1);
    return m;
}

}  // namespace ifslab
