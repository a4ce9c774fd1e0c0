#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace midsub {

enum class FactorKind { A, V, R, B };

// Per-valence smoothing weights of a B factor. Valences without an explicit
// entry use the fallback pair. Parameters are exact rationals so subdivision
// matrices stay exact.
struct BSpec {
    Rational alpha_default{1, 4};
    Rational beta_default{1, 2};
    std::map<int, std::pair<Rational, Rational>> per_valence;

    Rational alpha(int m) const;
    Rational beta(int m) const;
    // True when alpha(4) = 1/4 and beta(4) = 1/2 (the restricted schemes).
    bool restricted() const;
    void validate() const;  // alpha, beta >= 0 and 0 < alpha+beta < 1 everywhere
};

struct Factor {
    FactorKind kind;
    BSpec b;  // meaningful only for FactorKind::B
};

enum class Orientation { Primal, Dual };

enum class WordClassKind {
    GeneralMidpoint,
    VAVScheme,
    GeneralizedCC,
    MidpointClassic,  // A^(n-1) R; also a VAV scheme
    Invalid,
};

struct WordClass {
    WordClassKind kind = WordClassKind::Invalid;
    // For VAV schemes: the factorization into {A, R, V^2, V A^l V} as strings
    // like "A", "R", "VV", "VAV", "VAAV", leftmost applied last.
    std::vector<std::string> vav_factors;
    int midpoint_degree = 0;  // for MidpointClassic
};

// A validated operator word. factors[0] is the leftmost symbol; application
// order is right to left, matching U = A^{a_s} V^{v_s} R^{r_s} ... R^{r_1}.
class OperatorWord {
public:
    static OperatorWord parse(const std::string& text);

    const std::vector<Factor>& factors() const { return factors_; }
    const std::string& text() const { return text_; }

    int count_a() const { return a_; }
    int count_v() const { return v_; }
    int count_r() const { return r_; }
    bool has_b() const { return has_b_; }

    // General midpoint validity: a+v >= 1 and v+r >= 1 (words with B factors
    // are validated by the generalized Catmull-Clark shape rule instead).
    bool valid() const;

    // Scaling factor sigma = 2^(-r-v/2); only defined for B-free words.
    double sigma() const;

    // The orientation of the word's output ringnet: R always yields a primal
    // mesh, V a dual mesh, A and B(post-R chains) flip / preserve. Every valid
    // word contains a V or R, so the result does not depend on the input.
    Orientation orientation() const;

    WordClass classify() const;

    OperatorWord squared() const;
    OperatorWord concat(const OperatorWord& rhs) const;  // this applied after rhs

private:
    std::vector<Factor> factors_;
    std::string text_;
    int a_ = 0, v_ = 0, r_ = 0;
    bool has_b_ = false;

    void recount();
};

} // namespace midsub
