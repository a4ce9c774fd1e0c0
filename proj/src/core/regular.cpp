#include "regular.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "error.hpp"

namespace midsub {

namespace {

using Site = std::pair<Rational, Rational>;
using Combo = std::map<std::pair<int, int>, Rational>;

struct SymMesh {
    Rational b1x{1}, b1y{0}, b2x{0}, b2y{1};
    Rational tx{0}, ty{0};
    std::map<Site, Combo> verts;
};

Site add(const Site& p, const Rational& dx, const Rational& dy) {
    return {p.first + dx, p.second + dy};
}

void accumulate(Combo& dst, const Combo& src, const Rational& w) {
    for (const auto& [k, v] : src) dst[k] += v * w;
}

constexpr std::size_t kSiteCap = 500000;

void cap_check(std::size_t n) {
    if (n > kSiteCap)
        fail(ErrorKind::Resource, "regular stencil window exceeds the site cap; "
                                  "word too long for symbolic stencils");
}

SymMesh refine_sym(const SymMesh& in) {
    SymMesh out;
    out.b1x = in.b1x / Rational(2); out.b1y = in.b1y / Rational(2);
    out.b2x = in.b2x / Rational(2); out.b2y = in.b2y / Rational(2);
    out.tx = in.tx; out.ty = in.ty;
    Rational half(1, 2), quarter(1, 4);
    cap_check(in.verts.size() * 4);
    for (const auto& [p, combo] : in.verts) {
        out.verts[p] = combo;  // vertex copy
        auto p1 = add(p, in.b1x, in.b1y);
        auto p2 = add(p, in.b2x, in.b2y);
        auto p3 = add(p, in.b1x + in.b2x, in.b1y + in.b2y);
        auto i1 = in.verts.find(p1);
        auto i2 = in.verts.find(p2);
        auto i3 = in.verts.find(p3);
        if (i1 != in.verts.end()) {
            Combo c;
            accumulate(c, combo, half);
            accumulate(c, i1->second, half);
            out.verts[add(p, in.b1x / Rational(2), in.b1y / Rational(2))] = std::move(c);
        }
        if (i2 != in.verts.end()) {
            Combo c;
            accumulate(c, combo, half);
            accumulate(c, i2->second, half);
            out.verts[add(p, in.b2x / Rational(2), in.b2y / Rational(2))] = std::move(c);
        }
        if (i1 != in.verts.end() && i2 != in.verts.end() && i3 != in.verts.end()) {
            Combo c;
            accumulate(c, combo, quarter);
            accumulate(c, i1->second, quarter);
            accumulate(c, i2->second, quarter);
            accumulate(c, i3->second, quarter);
            out.verts[add(p, (in.b1x + in.b2x) / Rational(2), (in.b1y + in.b2y) / Rational(2))] =
                std::move(c);
        }
    }
    return out;
}

SymMesh average_sym(const SymMesh& in) {
    SymMesh out;
    out.b1x = in.b1x; out.b1y = in.b1y;
    out.b2x = in.b2x; out.b2y = in.b2y;
    out.tx = in.tx + (in.b1x + in.b2x) / Rational(2);
    out.ty = in.ty + (in.b1y + in.b2y) / Rational(2);
    Rational quarter(1, 4);
    for (const auto& [p, combo] : in.verts) {
        auto i1 = in.verts.find(add(p, in.b1x, in.b1y));
        auto i2 = in.verts.find(add(p, in.b2x, in.b2y));
        auto i3 = in.verts.find(add(p, in.b1x + in.b2x, in.b1y + in.b2y));
        if (i1 == in.verts.end() || i2 == in.verts.end() || i3 == in.verts.end()) continue;
        Combo c;
        accumulate(c, combo, quarter);
        accumulate(c, i1->second, quarter);
        accumulate(c, i2->second, quarter);
        accumulate(c, i3->second, quarter);
        out.verts[add(p, (in.b1x + in.b2x) / Rational(2), (in.b1y + in.b2y) / Rational(2))] =
            std::move(c);
    }
    return out;
}

SymMesh midedge_sym(const SymMesh& in) {
    SymMesh out;
    out.b1x = (in.b1x + in.b2x) / Rational(2);
    out.b1y = (in.b1y + in.b2y) / Rational(2);
    out.b2x = (in.b2x - in.b1x) / Rational(2);
    out.b2y = (in.b2y - in.b1y) / Rational(2);
    out.tx = in.tx + in.b1x / Rational(2);
    out.ty = in.ty + in.b1y / Rational(2);
    Rational half(1, 2);
    cap_check(in.verts.size() * 2);
    for (const auto& [p, combo] : in.verts) {
        auto i1 = in.verts.find(add(p, in.b1x, in.b1y));
        auto i2 = in.verts.find(add(p, in.b2x, in.b2y));
        if (i1 != in.verts.end()) {
            Combo c;
            accumulate(c, combo, half);
            accumulate(c, i1->second, half);
            out.verts[add(p, in.b1x / Rational(2), in.b1y / Rational(2))] = std::move(c);
        }
        if (i2 != in.verts.end()) {
            Combo c;
            accumulate(c, combo, half);
            accumulate(c, i2->second, half);
            out.verts[add(p, in.b2x / Rational(2), in.b2y / Rational(2))] = std::move(c);
        }
    }
    return out;
}

SymMesh smooth_sym(const SymMesh& in, const BSpec& spec) {
    // Regular grid: every vertex has valence 4.
    SymMesh out;
    out.b1x = in.b1x; out.b1y = in.b1y;
    out.b2x = in.b2x; out.b2y = in.b2y;
    out.tx = in.tx; out.ty = in.ty;
    Rational alpha = spec.alpha(4), beta = spec.beta(4);
    Rational be = beta / Rational(4), ga = (Rational(1) - alpha - beta) / Rational(4);
    for (const auto& [p, combo] : in.verts) {
        Combo c;
        accumulate(c, combo, alpha);
        bool full = true;
        for (int s = 0; s < 4 && full; ++s) {
            static const int d[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
            auto it = in.verts.find(add(p, in.b1x * Rational(d[s][0]) + in.b2x * Rational(d[s][1]),
                                        in.b1y * Rational(d[s][0]) + in.b2y * Rational(d[s][1])));
            if (it == in.verts.end()) { full = false; break; }
            accumulate(c, it->second, be);
        }
        for (int s = 0; s < 4 && full; ++s) {
            static const int d[4][2] = {{1, 1}, {-1, 1}, {1, -1}, {-1, -1}};
            auto it = in.verts.find(add(p, in.b1x * Rational(d[s][0]) + in.b2x * Rational(d[s][1]),
                                        in.b1y * Rational(d[s][0]) + in.b2y * Rational(d[s][1])));
            if (it == in.verts.end()) { full = false; break; }
            accumulate(c, it->second, ga);
        }
        if (full) out.verts[p] = std::move(c);
    }
    return out;
}

} // namespace

LatticeMap lattice_map(const OperatorWord& word) {
    LatticeMap m;
    int r = 0, v = 0;
    for (auto it = word.factors().rbegin(); it != word.factors().rend(); ++it) {
        switch (it->kind) {
            case FactorKind::R: {
                m.b1x = m.b1x / Rational(2); m.b1y = m.b1y / Rational(2);
                m.b2x = m.b2x / Rational(2); m.b2y = m.b2y / Rational(2);
                ++r;
                break;
            }
            case FactorKind::A: {
                m.tx = m.tx + (m.b1x + m.b2x) / Rational(2);
                m.ty = m.ty + (m.b1y + m.b2y) / Rational(2);
                break;
            }
            case FactorKind::V: {
                Rational nb1x = (m.b1x + m.b2x) / Rational(2);
                Rational nb1y = (m.b1y + m.b2y) / Rational(2);
                Rational nb2x = (m.b2x - m.b1x) / Rational(2);
                Rational nb2y = (m.b2y - m.b1y) / Rational(2);
                m.tx = m.tx + m.b1x / Rational(2);
                m.ty = m.ty + m.b1y / Rational(2);
                m.b1x = nb1x; m.b1y = nb1y; m.b2x = nb2x; m.b2y = nb2y;
                ++v;
                break;
            }
            case FactorKind::B:
                break;
        }
    }
    m.sigma = std::exp2(-(double)r - (double)v / 2.0);

    // sigma^2 = 2^(-2r-v) is rational, so the map verifies exactly.
    Rational sigma_sq(1);
    for (int k = 0; k < 2 * r + v; ++k) sigma_sq = sigma_sq / Rational(2);
    Rational n1 = m.b1x * m.b1x + m.b1y * m.b1y;
    Rational n2 = m.b2x * m.b2x + m.b2y * m.b2y;
    Rational dot = m.b1x * m.b2x + m.b1y * m.b2y;
    bool grid45 = (m.b1x.is_zero() || m.b1y.is_zero() || m.b1x.abs() == m.b1y.abs());
    m.verified = (n1 == sigma_sq) && (n2 == sigma_sq) && dot.is_zero() && grid45;
    double ang = std::atan2(m.b1y.to_double(), m.b1x.to_double());
    m.rotation_steps_45 = (int)std::llround(ang / (std::numbers::pi / 4));
    m.rotation_steps_45 = ((m.rotation_steps_45 % 8) + 8) % 8;
    return m;
}

RegularStencil regular_stencil(const OperatorWord& word) {
    int len = (int)word.factors().size();
    int n = 3 * (len + 1);

    SymMesh sm;
    for (int i = -n; i <= n; ++i)
        for (int j = -n; j <= n; ++j)
            sm.verts[{Rational(i), Rational(j)}] = {{{i, j}, Rational(1)}};

    for (auto it = word.factors().rbegin(); it != word.factors().rend(); ++it) {
        switch (it->kind) {
            case FactorKind::R: sm = refine_sym(sm); break;
            case FactorKind::A: sm = average_sym(sm); break;
            case FactorKind::V: sm = midedge_sym(sm); break;
            case FactorKind::B: sm = smooth_sym(sm, it->b); break;
        }
    }

    RegularStencil st;
    st.map = lattice_map(word);

    auto floor_rat = [](const Rational& x) {
        std::int64_t q = x.num() / x.den();
        if (x.num() % x.den() != 0 && x.num() < 0) --q;
        return q;
    };

    // Group output sites by their offset modulo Z^2; the representative
    // nearest the origin has full support by construction of the window.
    std::map<Site, std::pair<Site, double>> reps;
    for (const auto& [p, combo] : sm.verts) {
        (void)combo;
        Rational fx = p.first - Rational(floor_rat(p.first));
        Rational fy = p.second - Rational(floor_rat(p.second));
        double d = std::abs(p.first.to_double()) + std::abs(p.second.to_double());
        auto key = Site{fx, fy};
        auto it = reps.find(key);
        if (it == reps.end() || d < it->second.second) reps[key] = {p, d};
    }

    for (const auto& [frac, rep] : reps) {
        const Combo& combo = sm.verts.at(rep.first);
        StencilMask mask;
        mask.fx = frac.first;
        mask.fy = frac.second;
        std::int64_t bx = floor_rat(rep.first.first);
        std::int64_t by = floor_rat(rep.first.second);
        Rational sum(0);
        for (const auto& [idx, w] : combo) {
            if (w < Rational(0))
                fail(ErrorKind::Internal, "negative stencil weight");
            mask.weights.push_back({{(int)(idx.first - bx), (int)(idx.second - by)}, w});
            sum += w;
        }
        if (!(sum == Rational(1)))
            fail(ErrorKind::Internal, "stencil weights do not sum to 1");
        st.masks.push_back(std::move(mask));
    }
    return st;
}

namespace {

Diff2Term t(int comp, int di, int dj, Rational w) { return {comp, di, dj, w}; }

// Component ids.
constexpr int D1 = 0, D2 = 1, D3 = 2, D4 = 3, D5 = 4, D6 = 5;

Diff2Scheme make_a() {
    Diff2Scheme s;
    s.op = BaseOp::A;
    s.num_classes = 1;
    s.rows.resize(1);
    Rational q(1, 4);
    for (int c = 0; c < kNumComponents; ++c)
        s.rows[0][c] = {t(c, 0, 0, q), t(c, 1, 0, q), t(c, 0, 1, q), t(c, 1, 1, q)};
    return s;
}

Diff2Scheme make_r() {
    Diff2Scheme s;
    s.op = BaseOp::R;
    s.num_classes = 4;
    s.rows.resize(4);
    Rational q(1, 4), h(1, 2);
    // cls 0 = parity (0,0), 1 = (1,0), 2 = (0,1), 3 = (1,1); base (m - p)/2.
    s.rows[0][D1] = {};
    s.rows[1][D1] = {t(D1, 1, 0, h)};
    s.rows[2][D1] = {};
    s.rows[3][D1] = {t(D1, 1, 0, q), t(D1, 1, 1, q)};

    s.rows[0][D2] = {t(D2, 0, 0, q), t(D1, 0, -1, -q)};
    s.rows[1][D2] = {t(D1, 1, 0, q), t(D2, 1, 0, q)};
    s.rows[2][D2] = {t(D2, 0, 1, q), t(D1, 0, 0, -q)};
    s.rows[3][D2] = {t(D1, 1, 0, q), t(D2, 1, 1, q)};

    s.rows[0][D3] = {t(D3, 0, 0, q), t(D1, 1, 0, -q)};
    s.rows[1][D3] = {t(D2, 1, 0, q), t(D1, 1, -1, -q)};
    s.rows[2][D3] = {t(D3, 0, 1, q), t(D1, 1, 0, -q)};
    s.rows[3][D3] = {t(D2, 1, 1, q), t(D1, 1, 0, -q)};

    s.rows[0][D4] = {};
    s.rows[1][D4] = {};
    s.rows[2][D4] = {t(D4, 0, 1, h)};
    s.rows[3][D4] = {t(D4, 0, 1, q), t(D4, 1, 1, q)};

    s.rows[0][D5] = {t(D5, 0, 0, q), t(D4, -1, 0, -q)};
    s.rows[1][D5] = {t(D5, 1, 0, q), t(D4, 0, 0, -q)};
    s.rows[2][D5] = {t(D4, 0, 1, q), t(D5, 0, 1, q)};
    s.rows[3][D5] = {t(D4, 0, 1, q), t(D5, 1, 1, q)};

    s.rows[0][D6] = {t(D4, 0, 0, q), t(D5, 1, 0, -q)};
    s.rows[1][D6] = {t(D4, 0, 0, q), t(D5, 1, 0, -q)};
    s.rows[2][D6] = {t(D4, 0, 1, q), t(D6, 0, 1, q)};
    s.rows[3][D6] = {t(D6, 0, 1, q), t(D4, 1, 1, q)};
    return s;
}

Diff2Scheme make_v() {
    Diff2Scheme s;
    s.op = BaseOp::V;
    s.num_classes = 2;
    s.rows.resize(2);
    Rational h(1, 2);
    // cls 0 = X (x-edge midpoints, site i+(1/2,0));
    // cls 1 = Y (y-edge midpoints, site i+(0,1/2)).
    s.rows[0][D1] = {t(D2, 1, 0, h)};
    s.rows[0][D2] = {t(D5, 1, 0, h)};
    s.rows[0][D3] = {t(D2, 2, 0, -h)};
    s.rows[0][D4] = {t(D3, 1, 0, -h)};
    s.rows[0][D5] = {t(D6, 0, 0, h)};
    s.rows[0][D6] = {t(D3, 1, 0, -h)};

    s.rows[1][D1] = {t(D5, 0, 1, h)};
    s.rows[1][D2] = {t(D5, 0, 1, h)};
    s.rows[1][D3] = {t(D2, 1, 1, -h)};
    s.rows[1][D4] = {t(D6, 0, 1, h)};
    s.rows[1][D5] = {t(D6, 0, 1, h)};
    s.rows[1][D6] = {t(D3, 1, 1, -h)};
    return s;
}

Diff2Scheme make_ar() {
    Diff2Scheme s;
    s.op = BaseOp::AR;
    s.num_classes = 4;
    s.rows.resize(4);
    auto w = [](std::int64_t n) { return Rational(n, 16); };

    s.rows[0][D1] = {t(D1, 1, 0, w(3)), t(D1, 1, 1, w(1))};
    s.rows[1][D1] = {t(D1, 1, 0, w(3)), t(D1, 1, 1, w(1))};
    s.rows[2][D1] = {t(D1, 1, 0, w(1)), t(D1, 1, 1, w(3))};
    s.rows[3][D1] = {t(D1, 1, 0, w(1)), t(D1, 1, 1, w(3))};

    s.rows[0][D4] = {t(D4, 0, 1, w(3)), t(D4, 1, 1, w(1))};
    s.rows[2][D4] = {t(D4, 0, 1, w(3)), t(D4, 1, 1, w(1))};
    s.rows[1][D4] = {t(D4, 0, 1, w(1)), t(D4, 1, 1, w(3))};
    s.rows[3][D4] = {t(D4, 0, 1, w(1)), t(D4, 1, 1, w(3))};

    s.rows[0][D2] = {t(D2, 1, 0, w(2)), t(D2, 1, 1, w(1)), t(D2, 0, 1, w(1)),
                     t(D1, 1, 0, w(1)), t(D1, 0, 0, w(-1))};
    s.rows[1][D2] = {t(D2, 1, 1, w(2)), t(D2, 1, 0, w(2)), t(D1, 1, 0, w(1)),
                     t(D1, 1, -1, w(-1))};
    s.rows[2][D2] = {t(D2, 1, 1, w(3)), t(D3, 0, 1, w(1)), t(D1, 1, 0, w(2))};
    s.rows[3][D2] = {t(D2, 1, 1, w(4)), t(D1, 1, 1, w(1)), t(D1, 1, 0, w(-1))};

    s.rows[0][D3] = {t(D3, 0, 0, w(2)), t(D3, 0, 1, w(1)), t(D2, 1, 1, w(1)),
                     t(D1, 1, 0, w(-2))};
    s.rows[1][D3] = {t(D3, 1, 0, w(1)), t(D2, 1, 0, w(1)), t(D1, 1, -1, w(-1)),
                     t(D1, 2, 0, w(-1)), t(D3, 1, 1, w(2))};
    s.rows[2][D3] = {t(D3, 0, 1, w(3)), t(D2, 1, 1, w(1)), t(D1, 1, 0, w(-2))};
    s.rows[3][D3] = {t(D2, 1, 1, w(1)), t(D1, 1, 0, w(-1)), t(D3, 1, 1, w(3)),
                     t(D1, 2, 1, w(-1))};

    s.rows[0][D5] = {t(D5, 0, 1, w(2)), t(D5, 1, 1, w(1)), t(D4, 0, 1, w(1)),
                     t(D5, 1, 0, w(1)), t(D4, 0, 0, w(-1))};
    s.rows[1][D5] = {t(D5, 1, 1, w(3)), t(D4, 0, 1, w(1)), t(D5, 1, 0, w(1)),
                     t(D4, 0, 0, w(-1))};
    s.rows[2][D5] = {t(D5, 1, 1, w(2)), t(D5, 0, 1, w(2)), t(D4, 0, 1, w(1)),
                     t(D4, -1, 1, w(-1))};
    s.rows[3][D5] = {t(D5, 1, 1, w(4)), t(D4, 1, 1, w(1)), t(D4, 0, 1, w(-1))};

    s.rows[0][D6] = {t(D6, 0, 1, w(3)), t(D4, 0, 0, w(1)), t(D5, 1, 0, w(-1)),
                     t(D4, 1, 1, w(1))};
    s.rows[1][D6] = {t(D6, 0, 1, w(1)), t(D4, 0, 0, w(1)), t(D5, 1, 0, w(-1)),
                     t(D6, 1, 1, w(2)), t(D4, 1, 1, w(1))};
    s.rows[2][D6] = {t(D6, 0, 1, w(3)), t(D4, 0, 1, w(1)), t(D4, 1, 1, w(-1))};
    s.rows[3][D6] = {t(D6, 0, 1, w(2)), t(D4, 1, 1, w(2)), t(D6, 1, 1, w(1)),
                     t(D5, 1, 2, w(-1))};
    return s;
}

} // namespace

Diff2Scheme diff2_scheme(BaseOp op) {
    switch (op) {
        case BaseOp::A: return make_a();
        case BaseOp::R: return make_r();
        case BaseOp::V: return make_v();
        case BaseOp::AR: return make_ar();
    }
    fail(ErrorKind::Internal, "unknown base operator");
}

Rational Diff2Scheme::row_abs_sum(int cls, int comp) const {
    Rational s(0);
    for (const auto& term : rows[cls][comp]) s += term.w.abs();
    return s;
}

std::vector<Rational> Diff2Scheme::row_sums() const {
    std::vector<Rational> out;
    for (int c = 0; c < num_classes; ++c)
        for (int k = 0; k < kNumComponents; ++k) out.push_back(row_abs_sum(c, k));
    return out;
}

Rational Diff2Scheme::norm() const {
    Rational m(0);
    for (const auto& s : row_sums()) m = std::max(m, s);
    return m;
}

double compose_diff2_bound(const OperatorWord& word) {
    if (word.has_b() || !word.valid())
        fail(ErrorKind::InvalidWord,
             "word '" + word.text() + "' is not a valid general midpoint word");
    int v = word.count_v(), r = word.count_r(), a = word.count_a();
    if (v >= 1) return std::exp2(-2.0 * v - 2.0 * r);
    if (a >= 1 && r >= 1) return 0.75 * std::exp2(-2.0 * r);
    fail(ErrorKind::InvalidWord, "no bound case applies (expected a+v>=1, v+r>=1)");
}

namespace {

// Direct numeric application of the base operators on a window, used as the
// left-hand side of the Eq-(1) residual check. Index conventions match the
// Diff2Scheme contract.
struct Window {
    int n;
    std::vector<double> c;
    double& at(int i, int j) { return c[(std::size_t)(j + n) * (2 * n + 1) + (i + n)]; }
    double at(int i, int j) const { return c[(std::size_t)(j + n) * (2 * n + 1) + (i + n)]; }
    bool inside(int i, int j) const { return i >= -n && i <= n && j >= -n && j <= n; }
};

double diff2_component(const std::map<std::pair<int, int>, double>& vals, int comp,
                       std::pair<int, int> idx, bool* ok) {
    // nabla_k nabla_j over an index space; comp selects (j,k) per the header.
    static const int pairs[6][2] = {{0, 0}, {2, 0}, {3, 0}, {1, 1}, {2, 1}, {3, 1}};
    int dj = pairs[comp][0], dk = pairs[comp][1];
    auto get = [&](int i1, int i2) {
        auto it = vals.find({i1, i2});
        if (it == vals.end()) { *ok = false; return 0.0; }
        return it->second;
    };
    *ok = true;
    auto d = [&](int i1, int i2, int dir) {
        return get(i1, i2) - get(i1 - kDiffDirs[dir][0], i2 - kDiffDirs[dir][1]);
    };
    double a = d(idx.first, idx.second, dj);
    double b = d(idx.first - kDiffDirs[dk][0], idx.second - kDiffDirs[dk][1], dj);
    return a - b;
}

} // namespace

double verify_eq1(BaseOp op, int trials, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const int n = 8;
    Diff2Scheme scheme = diff2_scheme(op);
    double worst = 0.0;

    for (int trial = 0; trial < trials; ++trial) {
        Window w{n, std::vector<double>((std::size_t)(2 * n + 1) * (2 * n + 1))};
        for (auto& x : w.c) x = uni(rng);

        // Input second differences.
        std::map<std::pair<int, int>, double> comp_in[kNumComponents];
        for (int c = 0; c < kNumComponents; ++c) {
            for (int i = -n + 2; i <= n - 2; ++i)
                for (int j = -n + 2; j <= n - 2; ++j) {
                    std::map<std::pair<int, int>, double> raw;
                    for (int a2 = -2; a2 <= 2; ++a2)
                        for (int b2 = -2; b2 <= 2; ++b2) raw[{i + a2, j + b2}] = w.at(i + a2, j + b2);
                    bool ok = true;
                    double v = diff2_component(raw, c, {i, j}, &ok);
                    if (ok) comp_in[c][{i, j}] = v;
                }
        }

        // Output values, keyed by the operator's output index space.
        std::map<std::pair<int, int>, double> out_val;
        auto cat = [&](int i, int j) { return w.at(i, j); };
        int lim = n - 2;
        if (op == BaseOp::A) {
            for (int i = -lim; i < lim; ++i)
                for (int j = -lim; j < lim; ++j)
                    out_val[{i, j}] =
                        0.25 * (cat(i, j) + cat(i + 1, j) + cat(i, j + 1) + cat(i + 1, j + 1));
        } else if (op == BaseOp::R) {
            for (int i = -lim; i < lim; ++i)
                for (int j = -lim; j < lim; ++j) {
                    out_val[{2 * i, 2 * j}] = cat(i, j);
                    out_val[{2 * i + 1, 2 * j}] = 0.5 * (cat(i, j) + cat(i + 1, j));
                    out_val[{2 * i, 2 * j + 1}] = 0.5 * (cat(i, j) + cat(i, j + 1));
                    out_val[{2 * i + 1, 2 * j + 1}] =
                        0.25 * (cat(i, j) + cat(i + 1, j) + cat(i, j + 1) + cat(i + 1, j + 1));
                }
        } else if (op == BaseOp::AR) {
            for (int i = -lim; i < lim; ++i)
                for (int j = -lim; j < lim; ++j) {
                    double c00 = cat(i, j), c10 = cat(i + 1, j), c01 = cat(i, j + 1),
                           c11 = cat(i + 1, j + 1);
                    out_val[{2 * i, 2 * j}] = (9 * c00 + 3 * c10 + 3 * c01 + c11) / 16.0;
                    out_val[{2 * i + 1, 2 * j}] = (3 * c00 + 9 * c10 + c01 + 3 * c11) / 16.0;
                    out_val[{2 * i, 2 * j + 1}] = (3 * c00 + c10 + 9 * c01 + 3 * c11) / 16.0;
                    out_val[{2 * i + 1, 2 * j + 1}] = (c00 + 3 * c10 + 3 * c01 + 9 * c11) / 16.0;
                }
        } else {  // V, quincunx output index (n1, n2)
            for (int n1 = -2 * lim; n1 <= 2 * lim; ++n1)
                for (int n2 = -2 * lim; n2 <= 2 * lim; ++n2) {
                    if (((n1 + n2) % 2 + 2) % 2 == 0) {
                        int i = (n1 - n2) / 2, j = (n1 + n2) / 2;
                        if (w.inside(i, j) && w.inside(i + 1, j))
                            out_val[{n1, n2}] = 0.5 * (cat(i, j) + cat(i + 1, j));
                    } else {
                        int i = (1 + n1 - n2) / 2, j = (n1 + n2 - 1) / 2;
                        if (w.inside(i, j) && w.inside(i, j + 1))
                            out_val[{n1, n2}] = 0.5 * (cat(i, j) + cat(i, j + 1));
                    }
                }
        }

        // Compare LHS (differences of output values) against the scheme rows.
        for (const auto& [m, unused] : out_val) {
            (void)unused;
            int cls;
            std::pair<int, int> base;
            if (op == BaseOp::A) {
                cls = 0;
                base = m;
            } else if (op == BaseOp::V) {
                cls = ((m.first + m.second) % 2 + 2) % 2;
                if (cls == 0)
                    base = {(m.first - m.second) / 2, (m.first + m.second) / 2};
                else
                    base = {(1 + m.first - m.second) / 2, (m.first + m.second - 1) / 2};
            } else {
                int p1 = ((m.first % 2) + 2) % 2, p2 = ((m.second % 2) + 2) % 2;
                cls = p1 + 2 * p2;
                base = {(m.first - p1) / 2, (m.second - p2) / 2};
            }
            for (int c = 0; c < kNumComponents; ++c) {
                bool ok = true;
                double lhs = diff2_component(out_val, c, m, &ok);
                if (!ok) continue;
                double rhs = 0.0;
                for (const auto& term : scheme.rows[cls][c]) {
                    auto it = comp_in[term.comp].find(
                        {base.first + term.di, base.second + term.dj});
                    if (it == comp_in[term.comp].end()) { ok = false; break; }
                    rhs += term.w.to_double() * it->second;
                }
                if (!ok) continue;
                worst = std::max(worst, std::abs(lhs - rhs));
            }
        }
    }
    return worst;
}

Certificate certify_regular(const OperatorWord& word, const Config& cfg) {
    (void)cfg;
    Certificate cert;
    cert.word = word.text();
    cert.valence = 0;

    if (word.has_b()) {
        // Generalized Catmull-Clark words restrict to Lane-Riesenfeld schemes
        // on regular meshes: every B acts as A^2 there.
        if (word.classify().kind != WordClassKind::GeneralizedCC) {
            cert.verdict = verdict::kInvalidInput;
            cert.note = "word with B factors is not a generalized Catmull-Clark word";
            cert.add("valid", 0.0);
            return cert;
        }
        int b_count = 0;
        for (const auto& f : word.factors())
            if (f.kind == FactorKind::B) ++b_count;
        int a_eff = word.count_a() + 2 * b_count;
        OperatorWord eq = OperatorWord::parse(std::string((std::size_t)a_eff, 'A') + "R");
        Certificate inner = certify_regular(eq, cfg);
        inner.word = word.text();
        inner.note = "B factors act as A^2 on regular meshes; analyzed as the "
                     "equivalent midpoint word " + eq.text();
        return inner;
    }

    if (!word.valid()) {
        cert.verdict = verdict::kInvalidInput;
        cert.note = "general midpoint words need a+v >= 1 and v+r >= 1";
        cert.add("a", word.count_a());
        cert.add("v", word.count_v());
        cert.add("r", word.count_r());
        return cert;
    }

    int v = word.count_v(), r = word.count_r();
    double bound = compose_diff2_bound(word);
    double sigma = word.sigma();
    double sigma_sq = std::exp2(-(double)v - 2.0 * r);  // sigma(U^2)
    LatticeMap lm = lattice_map(word.squared());

    cert.add("a", word.count_a());
    cert.add("v", v);
    cert.add("r", r);
    cert.add("sigma", sigma);
    cert.add("sigma_squared_word", sigma_sq);
    cert.add("diff2_bound_squared_word", bound);
    cert.add("margin", sigma_sq - bound);
    cert.add("lattice_map_verified", lm.verified ? 1.0 : 0.0);
    cert.provenance = {"Smoothness condition for regular control meshes",
                       "Estimates about the difference schemes",
                       "C1 continuity for regular meshes"};
    cert.verdict = (bound < sigma_sq && lm.verified) ? verdict::kC1Regular
                                                     : verdict::kNotCertifiable;
    return cert;
}

} // namespace midsub
