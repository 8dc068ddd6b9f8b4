#pragma once

// Cardinality budgets pi(n) bounding |A_n|. A budget may be total or
// partial: the central-binomial budgets in strict mode are defined only on
// part of the levels, and families must stay empty where the budget is
// undefined. Rounded mode replaces n/2 (resp. n/4) by its ceiling, which is
// defined everywhere, and is the default throughout.
//
// Identifier grammar (CLI and family ids):
//   const:<c>       constant c
//   pow2minus:<k>   2^(n-k) for n >= k, 0 below
//   cb1[:mode]      C(n, n/2) strict (even n only) / C(n, ceil(n/2)) rounded
//   cb2[:mode]      C(n/2, n/4)^2 strict (4 | n only) / ceilings rounded
//   full            2^n
//   table:<path>    whitespace-separated "n value" pairs; undefined elsewhere

#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "guesslab/scalar.hpp"

namespace guesslab {

enum class Mode { Strict, Rounded };

inline Mode parse_mode(std::string_view text) {
    if (text == "strict") return Mode::Strict;
    if (text == "rounded") return Mode::Rounded;
    throw std::invalid_argument("unknown mode: " + std::string(text));
}

class PiBound {
  public:
    using EvalFn = std::function<std::optional<BigInt>(std::size_t)>;

    PiBound(std::string name, EvalFn eval) : name_(std::move(name)), eval_(std::move(eval)) {}

    const std::string& name() const { return name_; }

    std::optional<BigInt> operator()(std::size_t n) const { return eval_(n); }

    bool defined(std::size_t n) const { return eval_(n).has_value(); }

    BigInt value_or_zero(std::size_t n) const {
        auto v = eval_(n);
        return v ? *v : BigInt(0);
    }

    static PiBound constant(BigInt c) {
        if (c < 0) throw std::invalid_argument("PiBound::constant: negative budget");
        return PiBound("const:" + c.str(),
                       [c](std::size_t) -> std::optional<BigInt> { return c; });
    }

    static PiBound pow2_minus(unsigned k) {
        return PiBound("pow2minus:" + std::to_string(k),
                       [k](std::size_t n) -> std::optional<BigInt> {
                           if (n < k) return BigInt(0);
                           return pow2(n - k);
                       });
    }

    static PiBound full() {
        return PiBound("full", [](std::size_t n) -> std::optional<BigInt> { return pow2(n); });
    }

    static PiBound central_binomial_1d(Mode mode) {
        if (mode == Mode::Strict) {
            return PiBound("cb1:strict", [](std::size_t n) -> std::optional<BigInt> {
                if (n % 2 != 0) return std::nullopt;
                return binomial(n, n / 2);
            });
        }
        return PiBound("cb1:rounded", [](std::size_t n) -> std::optional<BigInt> {
            return binomial(n, (n + 1) / 2);
        });
    }

    static PiBound central_binomial_2d(Mode mode) {
        if (mode == Mode::Strict) {
            return PiBound("cb2:strict", [](std::size_t n) -> std::optional<BigInt> {
                if (n % 4 != 0) return std::nullopt;
                const BigInt c = binomial(n / 2, n / 4);
                return c * c;
            });
        }
        return PiBound("cb2:rounded", [](std::size_t n) -> std::optional<BigInt> {
            // Even positions below n: ceil(n/2) of them; odd: floor(n/2).
            const std::size_t evens = (n + 1) / 2;
            const std::size_t odds = n / 2;
            const std::size_t quarter = (n + 3) / 4;
            return binomial(evens, quarter) * binomial(odds, quarter);
        });
    }

    static PiBound from_table(std::string name, std::map<std::size_t, BigInt> table) {
        return PiBound(std::move(name),
                       [tab = std::move(table)](std::size_t n) -> std::optional<BigInt> {
                           auto it = tab.find(n);
                           if (it == tab.end()) return std::nullopt;
                           return it->second;
                       });
    }

  private:
    std::string name_;
    EvalFn eval_;
};

inline PiBound load_pi_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("pi table: cannot open " + path);
    std::map<std::size_t, BigInt> table;
    std::size_t n;
    std::string value;
    while (in >> n >> value) table[n] = BigInt(value);
    return PiBound::from_table("table:" + path, std::move(table));
}

inline PiBound parse_pi_id(std::string_view id) {
    const auto colon = id.find(':');
    const std::string_view head = id.substr(0, colon);
    const std::string_view rest = colon == std::string_view::npos ? "" : id.substr(colon + 1);
    if (head == "const") {
        if (rest.empty()) throw std::invalid_argument("const: missing value");
        return PiBound::constant(BigInt(std::string(rest)));
    }
    if (head == "pow2minus") {
        if (rest.empty()) throw std::invalid_argument("pow2minus: missing exponent");
        return PiBound::pow2_minus(static_cast<unsigned>(std::stoul(std::string(rest))));
    }
    if (head == "cb1") return PiBound::central_binomial_1d(rest.empty() ? Mode::Rounded : parse_mode(rest));
    if (head == "cb2") return PiBound::central_binomial_2d(rest.empty() ? Mode::Rounded : parse_mode(rest));
    if (head == "full" && rest.empty()) return PiBound::full();
    if (head == "table") {
        if (rest.empty()) throw std::invalid_argument("table: missing path");
        return load_pi_table(std::string(rest));
    }
    throw std::invalid_argument("unknown pi id: " + std::string(id));
}

}  // namespace guesslab
