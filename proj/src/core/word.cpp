#include "word.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace midsub {

Rational BSpec::alpha(int m) const {
    auto it = per_valence.find(m);
    return it != per_valence.end() ? it->second.first : alpha_default;
}

Rational BSpec::beta(int m) const {
    auto it = per_valence.find(m);
    return it != per_valence.end() ? it->second.second : beta_default;
}

bool BSpec::restricted() const {
    return alpha(4) == Rational(1, 4) && beta(4) == Rational(1, 2);
}

void BSpec::validate() const {
    auto check = [](const Rational& a, const Rational& b, const std::string& where) {
        if (a < Rational(0) || b < Rational(0))
            fail(ErrorKind::InvalidParameter, "B parameters must be nonnegative " + where);
        Rational s = a + b;
        if (!(Rational(0) < s && s < Rational(1)))
            fail(ErrorKind::InvalidParameter,
                 "B parameters must satisfy 0 < alpha+beta < 1 " + where);
    };
    check(alpha_default, beta_default, "(default pair)");
    for (const auto& [m, ab] : per_valence)
        check(ab.first, ab.second, "(valence " + std::to_string(m) + ")");
}

namespace {

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() { while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos; }
    bool done() { skip_ws(); return pos >= s.size(); }
    char peek() { skip_ws(); return s[pos]; }
    char take() { skip_ws(); return s[pos++]; }
    void expect(char c) {
        if (done() || s[pos] != c)
            fail(ErrorKind::InvalidParameter,
                 std::string("word syntax error at position ") + std::to_string(pos) +
                     ": expected '" + c + "'");
        ++pos;
    }
};

// num := digits[.digits] | digits/digits  (exact rational either way)
Rational parse_number(Cursor& c) {
    c.skip_ws();
    std::size_t start = c.pos;
    while (c.pos < c.s.size() &&
           (std::isdigit((unsigned char)c.s[c.pos]) || c.s[c.pos] == '.' || c.s[c.pos] == '/'))
        ++c.pos;
    std::string tok = c.s.substr(start, c.pos - start);
    if (tok.empty())
        fail(ErrorKind::InvalidParameter,
             "word syntax error at position " + std::to_string(start) + ": expected a number");
    auto slash = tok.find('/');
    if (slash != std::string::npos) {
        long n = std::strtol(tok.substr(0, slash).c_str(), nullptr, 10);
        long d = std::strtol(tok.substr(slash + 1).c_str(), nullptr, 10);
        if (d <= 0) fail(ErrorKind::InvalidParameter, "bad fraction '" + tok + "'");
        return Rational(n, d);
    }
    auto dot = tok.find('.');
    if (dot == std::string::npos) return Rational(std::strtol(tok.c_str(), nullptr, 10));
    std::string ipart = tok.substr(0, dot), fpart = tok.substr(dot + 1);
    if (fpart.size() > 15) fpart = fpart.substr(0, 15);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < fpart.size(); ++i) den *= 10;
    std::int64_t num = std::strtoll((ipart + fpart).c_str(), nullptr, 10);
    return Rational(num, den);
}

int parse_exponent(Cursor& c) {
    if (!c.done() && c.peek() == '^') {
        c.take();
        c.skip_ws();
        std::size_t start = c.pos;
        while (c.pos < c.s.size() && std::isdigit((unsigned char)c.s[c.pos])) ++c.pos;
        if (c.pos == start)
            fail(ErrorKind::InvalidParameter,
                 "word syntax error at position " + std::to_string(start) +
                     ": expected an exponent");
        int e = std::atoi(c.s.substr(start, c.pos - start).c_str());
        if (e < 1) fail(ErrorKind::InvalidParameter, "exponent must be >= 1");
        return e;
    }
    return 1;
}

// B(alpha,beta) or B(m:alpha:beta, m:alpha:beta, *:alpha:beta, ...)
BSpec parse_bspec(Cursor& c) {
    BSpec spec;
    c.expect('(');
    bool saw_default = false;
    bool first = true;
    Rational first_a, first_b;
    bool plain_pair = false;
    while (true) {
        c.skip_ws();
        if (!c.done() && c.peek() == '*') {
            c.take();
            c.expect(':');
            Rational a = parse_number(c);
            c.expect(':');
            Rational b = parse_number(c);
            spec.alpha_default = a;
            spec.beta_default = b;
            saw_default = true;
        } else {
            Rational x = parse_number(c);
            c.skip_ws();
            if (!c.done() && c.peek() == ':') {
                c.take();
                Rational a = parse_number(c);
                c.expect(':');
                Rational b = parse_number(c);
                int m = (int)x.num();
                if (x.den() != 1 || m < 3)
                    fail(ErrorKind::InvalidParameter, "B table valence must be an integer >= 3");
                spec.per_valence[m] = {a, b};
            } else if (first) {
                // Plain pair form B(alpha,beta): both numbers are the default.
                c.expect(',');
                Rational b = parse_number(c);
                first_a = x;
                first_b = b;
                plain_pair = true;
                c.skip_ws();
                c.expect(')');
                spec.alpha_default = first_a;
                spec.beta_default = first_b;
                spec.validate();
                return spec;
            } else {
                fail(ErrorKind::InvalidParameter, "bad B parameter list");
            }
        }
        first = false;
        c.skip_ws();
        if (!c.done() && c.peek() == ',') { c.take(); continue; }
        c.expect(')');
        break;
    }
    if (!saw_default && spec.per_valence.empty())
        fail(ErrorKind::InvalidParameter, "empty B parameter list");
    (void)plain_pair;
    spec.validate();
    return spec;
}

std::string factor_text(const Factor& f) {
    switch (f.kind) {
        case FactorKind::A: return "A";
        case FactorKind::V: return "V";
        case FactorKind::R: return "R";
        case FactorKind::B: {
            std::string s = "B(";
            if (f.b.per_valence.empty()) {
                s += f.b.alpha_default.str() + "," + f.b.beta_default.str();
            } else {
                bool first = true;
                for (const auto& [m, ab] : f.b.per_valence) {
                    if (!first) s += ",";
                    s += std::to_string(m) + ":" + ab.first.str() + ":" + ab.second.str();
                    first = false;
                }
                s += ",*:" + f.b.alpha_default.str() + ":" + f.b.beta_default.str();
            }
            return s + ")";
        }
    }
    return "?";
}

} // namespace

OperatorWord OperatorWord::parse(const std::string& text) {
    Cursor c{text};
    OperatorWord w;
    if (c.done()) fail(ErrorKind::InvalidParameter, "empty operator word");
    while (!c.done()) {
        char ch = c.take();
        Factor f;
        switch (ch) {
            case 'A': case 'a': f.kind = FactorKind::A; break;
            case 'V': case 'v': f.kind = FactorKind::V; break;
            case 'R': case 'r': f.kind = FactorKind::R; break;
            case 'B': case 'b':
                f.kind = FactorKind::B;
                f.b = parse_bspec(c);
                break;
            default:
                fail(ErrorKind::InvalidParameter,
                     std::string("word syntax error at position ") +
                         std::to_string(c.pos - 1) + ": unexpected '" + ch + "'");
        }
        int e = parse_exponent(c);
        for (int k = 0; k < e; ++k) w.factors_.push_back(f);
    }
    w.recount();
    return w;
}

void OperatorWord::recount() {
    a_ = v_ = r_ = 0;
    has_b_ = false;
    text_.clear();
    for (const auto& f : factors_) {
        switch (f.kind) {
            case FactorKind::A: ++a_; break;
            case FactorKind::V: ++v_; break;
            case FactorKind::R: ++r_; break;
            case FactorKind::B: has_b_ = true; break;
        }
        text_ += factor_text(f);
    }
}

bool OperatorWord::valid() const {
    if (has_b_) return classify().kind == WordClassKind::GeneralizedCC;
    return a_ + v_ >= 1 && v_ + r_ >= 1;
}

double OperatorWord::sigma() const {
    if (has_b_)
        fail(ErrorKind::InvalidParameter, "sigma is defined for B-free words only");
    return std::exp2(-(double)r_ - (double)v_ / 2.0);
}

Orientation OperatorWord::orientation() const {
    std::optional<Orientation> state;
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
        switch (it->kind) {
            case FactorKind::R: state = Orientation::Primal; break;
            case FactorKind::V: state = Orientation::Dual; break;
            case FactorKind::A:
                if (state)
                    state = (*state == Orientation::Primal) ? Orientation::Dual
                                                            : Orientation::Primal;
                break;
            case FactorKind::B: break;  // vertex smoothing keeps connectivity
        }
    }
    if (!state)
        fail(ErrorKind::InvalidWord,
             "word '" + text_ + "' contains no V or R; orientation undefined");
    return *state;
}

namespace {

// Letters of a B-free word in application order (index 0 applied first).
std::string letters_rightmost_first(const std::vector<Factor>& factors) {
    std::string s;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        switch (it->kind) {
            case FactorKind::A: s += 'A'; break;
            case FactorKind::V: s += 'V'; break;
            case FactorKind::R: s += 'R'; break;
            case FactorKind::B: s += 'B'; break;
        }
    }
    return s;
}

// Match one factor from {V A^l V (l>=0), A, R} at position k of the
// application-order string. A factor starting with V must close at the first
// V after the A-run (everything between the two V's has to be an A), so there
// is at most one match per position.
std::vector<int> factor_lengths_at(const std::string& s, std::size_t k) {
    std::vector<int> lengths;
    if (k >= s.size()) return lengths;
    if (s[k] == 'A' || s[k] == 'R') { lengths.push_back(1); return lengths; }
    if (s[k] == 'V') {
        std::size_t j = k + 1;
        while (j < s.size() && s[j] == 'A') ++j;
        if (j < s.size() && s[j] == 'V') lengths.push_back((int)(j - k + 1));
    }
    return lengths;
}

bool vav_factorize(const std::string& s, std::vector<std::string>& out) {
    // Greedy maximal munch from the application end first.
    out.clear();
    std::size_t k = 0;
    bool greedy_ok = true;
    std::vector<std::string> greedy;
    while (k < s.size()) {
        auto lens = factor_lengths_at(s, k);
        if (lens.empty()) { greedy_ok = false; break; }
        greedy.push_back(s.substr(k, lens.front()));
        k += lens.front();
    }
    if (greedy_ok) {
        out = std::move(greedy);
    } else {
        // Exhaustive search: feasibility DP plus path reconstruction. Words
        // are short, so cost is trivial.
        std::size_t n = s.size();
        std::vector<int> feasible(n + 1, 0), choice(n + 1, 0);
        feasible[n] = 1;
        for (std::size_t i = n; i-- > 0;) {
            for (int len : factor_lengths_at(s, i)) {
                if (feasible[i + len]) { feasible[i] = 1; choice[i] = len; break; }
            }
        }
        if (!feasible[0]) return false;
        for (std::size_t i = 0; i < n; i += choice[i])
            out.push_back(s.substr(i, choice[i]));
    }
    // Report factors leftmost-applied-last, matching the word text direction.
    std::reverse(out.begin(), out.end());
    for (auto& f : out) std::reverse(f.begin(), f.end());
    return true;
}

} // namespace

WordClass OperatorWord::classify() const {
    WordClass cls;

    if (has_b_) {
        // Generalized Catmull-Clark shape: B_r ... B_1 R or A B_r ... B_1 R.
        std::size_t i = 0;
        if (factors_[i].kind == FactorKind::A) ++i;
        std::size_t b_count = 0;
        while (i < factors_.size() && factors_[i].kind == FactorKind::B) { ++i; ++b_count; }
        if (b_count >= 1 && i + 1 == factors_.size() && factors_[i].kind == FactorKind::R) {
            for (const auto& f : factors_)
                if (f.kind == FactorKind::B) f.b.validate();
            cls.kind = WordClassKind::GeneralizedCC;
            return cls;
        }
        cls.kind = WordClassKind::Invalid;
        return cls;
    }

    if (!(a_ + v_ >= 1 && v_ + r_ >= 1)) {
        cls.kind = WordClassKind::Invalid;
        return cls;
    }

    // A^(n-1) R, n >= 2
    if (v_ == 0 && r_ == 1 && a_ >= 1 && factors_.back().kind == FactorKind::R) {
        bool all_a = true;
        for (std::size_t i = 0; i + 1 < factors_.size(); ++i)
            if (factors_[i].kind != FactorKind::A) all_a = false;
        if (all_a) {
            cls.kind = WordClassKind::MidpointClassic;
            cls.midpoint_degree = a_ + 1;
            vav_factorize(letters_rightmost_first(factors_), cls.vav_factors);
            return cls;
        }
    }

    std::string s = letters_rightmost_first(factors_);
    if (vav_factorize(s, cls.vav_factors)) {
        cls.kind = WordClassKind::VAVScheme;
        return cls;
    }
    cls.kind = WordClassKind::GeneralMidpoint;
    return cls;
}

OperatorWord OperatorWord::squared() const { return concat(*this); }

OperatorWord OperatorWord::concat(const OperatorWord& rhs) const {
    OperatorWord w;
    w.factors_ = factors_;
    w.factors_.insert(w.factors_.end(), rhs.factors_.begin(), rhs.factors_.end());
    w.recount();
    return w;
}

} // namespace midsub
