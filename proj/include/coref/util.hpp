// Small string/number helpers shared across the library.
#pragma once

#include <algorithm>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coref {

// Raised for malformed or inconsistent input data (parse errors, broken
// invariants, mismatched corpora). The CLI maps it to exit code 2.
class data_error : public std::runtime_error {
  public:
    explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

namespace util {

inline std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

inline std::string trim(std::string_view s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

// ASCII lowercase; multi-byte UTF-8 sequences pass through unchanged.
inline std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
}

// printf-style formatting into std::string; locale-independent for our use
// (the library never calls setlocale, so "%.2f" always yields a '.').
inline std::string strprintf(const char* fmt, ...) {
    va_list args;
    va_start(args, fmt);
    char buf[256];
    int n = std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    if (n < 0) return {};
    if (static_cast<size_t>(n) < sizeof buf) return std::string(buf, n);
    std::string big(static_cast<size_t>(n) + 1, '\0');
    va_start(args, fmt);
    std::vsnprintf(big.data(), big.size(), fmt, args);
    va_end(args);
    big.resize(static_cast<size_t>(n));
    return big;
}

inline std::string fmt2(double v) { return strprintf("%.2f", v); }
inline std::string fmt1(double v) { return strprintf("%.1f", v); }

// SplitMix64: tiny deterministic generator so shuffles and fuzzers behave
// identically across standard libraries and platforms.
class SplitMix64 {
  public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    uint64_t state_;
};

template <typename T>
void deterministic_shuffle(std::vector<T>& v, SplitMix64& rng) {
    for (size_t i = v.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(rng.below(i));
        std::swap(v[i - 1], v[j]);
    }
}

inline uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Left-justified / right-justified cells for aligned plain-text tables.
class TextTable {
  public:
    void add_row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

    // columns in `right_cols` are right-aligned (numbers), the rest left-aligned
    std::string render(const std::vector<int>& right_cols = {}) const {
        std::vector<size_t> width;
        for (const auto& row : rows_)
            for (size_t c = 0; c < row.size(); ++c) {
                if (width.size() <= c) width.resize(c + 1, 0);
                width[c] = std::max(width[c], row[c].size());
            }
        auto is_right = [&](size_t c) {
            return std::find(right_cols.begin(), right_cols.end(),
                             static_cast<int>(c)) != right_cols.end();
        };
        std::string out;
        for (const auto& row : rows_) {
            for (size_t c = 0; c < row.size(); ++c) {
                if (c) out += "  ";
                size_t pad = width[c] - row[c].size();
                if (is_right(c)) out += std::string(pad, ' ');
                out += row[c];
                if (!is_right(c) && c + 1 < row.size()) out += std::string(pad, ' ');
            }
            out += '\n';
        }
        return out;
    }

  private:
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace util
}  // namespace coref
