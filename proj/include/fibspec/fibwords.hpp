#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fibspec {

/// Finite word over the alphabet {0, 1}. Letters are stored as 0/1 bytes and
/// serialize as ASCII '0'/'1'.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<std::uint8_t> letters);

    /// Parses a string of '0'/'1' characters; anything else is an error.
    static Word from_string(std::string_view text);

    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    std::uint8_t operator[](std::size_t i) const { return letters_[i]; }
    auto begin() const noexcept { return letters_.begin(); }
    auto end() const noexcept { return letters_.end(); }
    const std::vector<std::uint8_t>& letters() const noexcept { return letters_; }

    std::size_t count_ones() const noexcept;
    bool is_prefix_of(const Word& other) const noexcept;
    /// Cyclic left shift: result[i] = (*this)[(i + shift) mod size].
    Word rotated(std::size_t shift) const;
    std::string to_string() const;

    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<std::uint8_t> letters_;
};

/// Exact rational number used as the phase offset of rotation words.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
};

/// F_k with F_0 = F_1 = 1. Throws ErrorKind::Overflow past uint64 range (k > 92).
std::uint64_t fib_number(unsigned k);

/// S^k(1) for the substitution 0 -> 1, 1 -> 10; length F_{k+1}.
Word substitution_word(unsigned k);

/// Word of the k-th concatenated piece f_k: w_0 = 0, w_1 = 1,
/// w_k = w_{k-1} w_{k-2}. Equals S^{k-1}(1) for k >= 1 and has length F_k,
/// so its cell is the period-F_k approximant.
Word cell_word(unsigned k);

/// omega_n = floor((n+1) num/den + theta) - floor(n num/den + theta) for
/// n in [n_start, n_start + n_count), evaluated in exact integer arithmetic.
Word rotation_word(std::int64_t num, std::int64_t den, Rational theta,
                   std::int64_t n_start, std::int64_t n_count);

} // namespace fibspec
