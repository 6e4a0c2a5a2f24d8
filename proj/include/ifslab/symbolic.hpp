#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ifslab/matrix.hpp"

namespace ifslab {

/// Finite word over {1..k}. The empty word stands for the identity composition.
class Word {
public:
    Word() = default;
    Word(int alphabet_size, std::vector<int> symbols);

    int alphabet_size() const noexcept { return k_; }
    std::span<const int> symbols() const noexcept { return symbols_; }
    std::size_t length() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    int operator[](std::size_t i) const noexcept { return symbols_[i]; }

    Word append(int symbol) const;
    Word reversed() const;
    std::string str() const;

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word& a, const Word& b) {
        if (a.length() != b.length()) return a.length() <=> b.length();
        return a.symbols_ <=> b.symbols_;
    }

private:
    int k_ = 1;
    std::vector<int> symbols_;
};

/// All words of length 1..max_len, length first, then lexicographic.
std::vector<Word> enumerate_words(int k, int max_len);

/// Total length of all words of length <= max_len: every word of length
/// max_len occurs as a block of the disjunctive stream within this prefix.
std::uint64_t disjunctive_bound(int k, int max_len);

/// Deterministic infinite sequence over {1..k}; symbol n is a pure function
/// of the stream's parameters.
class SymbolStream {
public:
    enum class Kind { Constant, Periodic, Disjunctive, RandomBernoulli, RandomMarkov };

    static SymbolStream constant(int k, int symbol);
    static SymbolStream periodic(const Word& w);
    /// Concatenation of all words in length-lexicographic order.
    static SymbolStream disjunctive(int k);
    static SymbolStream bernoulli(std::vector<double> weights, std::uint64_t seed);
    static SymbolStream markov(TransitionMatrix p, std::vector<double> initial, std::uint64_t seed);

    Kind kind() const noexcept { return kind_; }
    int alphabet_size() const noexcept { return k_; }

    /// O(1) for all kinds except RandomMarkov, which is O(n).
    int at(std::size_t n) const;
    std::vector<int> prefix(std::size_t n) const;
    Word prefix_word(std::size_t n) const { return Word(k_, prefix(n)); }

private:
    SymbolStream() = default;

    Kind kind_ = Kind::Constant;
    int k_ = 1;
    std::vector<int> pattern_;
    std::vector<double> weights_;
    TransitionMatrix matrix_;
    std::uint64_t seed_ = 0;
};

/// Markov measure of the cylinder [w0 ... wl]: pbar[w0] * prod p(w_i, w_{i+1}).
double cylinder_measure(const TransitionMatrix& p, std::span<const double> pbar, const Word& w);

}  // namespace ifslab
