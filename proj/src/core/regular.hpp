#pragma once

#include <array>
#include <map>
#include <vector>

#include "certificate.hpp"
#include "rational.hpp"
#include "word.hpp"

namespace midsub {

// Difference directions e1..e4 = (1,0), (0,1), (1,1), (-1,1); the tracked
// second-difference components are
//   0: d1 d1,  1: d3 d1,  2: d4 d1,  3: d2 d2,  4: d3 d2,  5: d4 d2.
inline constexpr int kDiffDirs[4][2] = {{1, 0}, {0, 1}, {1, 1}, {-1, 1}};
inline constexpr int kNumComponents = 6;

enum class BaseOp { A, R, V, AR };

// Affine lattice B Z^2 + t reached from Z^2 by a word; exact rational entries.
struct LatticeMap {
    Rational b1x{1}, b1y{0}, b2x{0}, b2y{1};
    Rational tx{0}, ty{0};
    double sigma = 1.0;   // 2^(-r-v/2)
    bool verified = false;  // |b1| = |b2| = sigma, orthogonal, 45-degree grid
    int rotation_steps_45 = 0;  // lattice rotation in 45-degree steps, mod 8
};

LatticeMap lattice_map(const OperatorWord& word);

// Translation-invariant stencil of a word on the regular grid: one mask per
// output class (output lattice modulo input Z^2 translations).
struct StencilMask {
    Rational fx, fy;  // representative output site
    std::vector<std::pair<std::array<int, 2>, Rational>> weights;  // input sites
};

struct RegularStencil {
    LatticeMap map;
    std::vector<StencilMask> masks;
};

// Exact symbolic stencil; feasible for short words (site count guarded).
RegularStencil regular_stencil(const OperatorWord& word);

// Second-order difference scheme of a base operator: for each output class
// and output component, the input-component combination. The tables follow
// the explicit representations of the difference-scheme estimates, so the
// row sums reproduce the stated norms exactly.
struct Diff2Term {
    int comp;       // input component 0..5
    int di, dj;     // input site offset from the class base index
    Rational w;
};

struct Diff2Scheme {
    BaseOp op;
    int num_classes;
    // rows[cls][comp] -> terms. Class/base-index conventions:
    //   A  : 1 class, output index i in Z^2 (site i + (1/2,1/2))
    //   R  : 4 classes p = (m1 mod 2, m2 mod 2), cls = p1 + 2 p2, base (m-p)/2
    //   V  : 2 classes (X = x-midpoints, Y = y-midpoints) on the quincunx
    //   AR : 4 classes as R, sites shifted by (1/4,1/4)
    std::vector<std::array<std::vector<Diff2Term>, kNumComponents>> rows;

    Rational row_abs_sum(int cls, int comp) const;
    std::vector<Rational> row_sums() const;
    Rational norm() const;  // max row abs sum
};

Diff2Scheme diff2_scheme(BaseOp op);

// Upper bound on ||(U^2)_dd|| per the regular-mesh smoothness proof:
// 2^(-2v-2r) when v >= 1 and (3/4) 2^(-2r) when v = 0, a,r >= 1.
double compose_diff2_bound(const OperatorWord& word);

// Residual of (U C)_dd = U_dd C_dd over random bounded meshes.
double verify_eq1(BaseOp op, int trials, unsigned seed);

Certificate certify_regular(const OperatorWord& word, const Config& cfg);

} // namespace midsub
