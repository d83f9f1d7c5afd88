#include "fibspec/fibwords.hpp"

#include "fibspec/error.hpp"

#include <algorithm>

namespace fibspec {

namespace {

constexpr unsigned kMaxSubstitutionDepth = 40;

using wide = __int128;

wide floor_div(wide a, wide b) {
    wide q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

} // namespace

Word::Word(std::vector<std::uint8_t> letters) : letters_(std::move(letters)) {
    for (auto c : letters_) {
        if (c > 1) {
            throw Error(ErrorKind::InvalidArgument, "word letters must be 0 or 1");
        }
    }
}

Word Word::from_string(std::string_view text) {
    std::vector<std::uint8_t> letters;
    letters.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw Error(ErrorKind::InvalidArgument,
                        "word must consist of '0' and '1', got '" + std::string(text) + "'");
        }
        letters.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return Word(std::move(letters));
}

std::size_t Word::count_ones() const noexcept {
    return static_cast<std::size_t>(std::count(letters_.begin(), letters_.end(), 1));
}

bool Word::is_prefix_of(const Word& other) const noexcept {
    return size() <= other.size() && std::equal(begin(), end(), other.begin());
}

Word Word::rotated(std::size_t shift) const {
    if (empty()) {
        return *this;
    }
    auto out = letters_;
    std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(shift % size()), out.end());
    return Word(std::move(out));
}

std::string Word::to_string() const {
    std::string s;
    s.reserve(size());
    for (auto c : letters_) {
        s.push_back(static_cast<char>('0' + c));
    }
    return s;
}

std::uint64_t fib_number(unsigned k) {
    std::uint64_t prev = 1;
    std::uint64_t cur = 1;
    for (unsigned i = 1; i < k; ++i) {
        std::uint64_t next = 0;
        if (__builtin_add_overflow(cur, prev, &next)) {
            throw Error(ErrorKind::Overflow,
                        "F_" + std::to_string(k) + " exceeds 64-bit range");
        }
        prev = cur;
        cur = next;
    }
    return cur;
}

Word substitution_word(unsigned k) {
    if (k > kMaxSubstitutionDepth) {
        throw Error(ErrorKind::Overflow, "substitution depth " + std::to_string(k) +
                                             " exceeds supported maximum " +
                                             std::to_string(kMaxSubstitutionDepth));
    }
    std::vector<std::uint8_t> w{1};
    for (unsigned i = 0; i < k; ++i) {
        std::vector<std::uint8_t> next;
        next.reserve(w.size() * 2);
        for (auto c : w) {
            if (c == 0) {
                next.push_back(1);
            } else {
                next.push_back(1);
                next.push_back(0);
            }
        }
        w = std::move(next);
    }
    return Word(std::move(w));
}

Word cell_word(unsigned k) {
    if (k == 0) {
        return Word({0});
    }
    return substitution_word(k - 1);
}

Word rotation_word(std::int64_t num, std::int64_t den, Rational theta,
                   std::int64_t n_start, std::int64_t n_count) {
    if (den == 0) {
        throw Error(ErrorKind::InvalidFrequency, "frequency denominator is zero");
    }
    if (theta.den == 0) {
        throw Error(ErrorKind::InvalidFrequency, "offset denominator is zero");
    }
    if (n_count < 0) {
        throw Error(ErrorKind::InvalidArgument, "n_count must be nonnegative");
    }
    // floor(n num/den + tn/td) = floor((n num td + tn den) / (den td))
    const wide denom = static_cast<wide>(den) * theta.den;
    auto level = [&](wide n) {
        return floor_div(n * num * theta.den + static_cast<wide>(theta.num) * den, denom);
    };
    std::vector<std::uint8_t> letters;
    letters.reserve(static_cast<std::size_t>(n_count));
    for (std::int64_t i = 0; i < n_count; ++i) {
        const wide n = static_cast<wide>(n_start) + i;
        const wide d = level(n + 1) - level(n);
        if (d != 0 && d != 1) {
            throw Error(ErrorKind::InvalidFrequency,
                        "frequency outside [0, 1] produces letters other than 0/1");
        }
        letters.push_back(static_cast<std::uint8_t>(d));
    }
    return Word(std::move(letters));
}

} // namespace fibspec
