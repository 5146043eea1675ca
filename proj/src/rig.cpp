#include "rigmat/rig.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

namespace rigmat {

namespace {

const std::array<RigDescriptor, 8> kRigs = {{
    {RigKind::Rationals, "Rationals", true, true, true, "rational"},
    {RigKind::GaussianRationals, "GaussianRationals", true, true, true, "gaussian"},
    {RigKind::Integers, "Integers", true, true, true, "integer"},
    {RigKind::GF2, "GF2", true, true, true, "bit"},
    {RigKind::Booleans, "Booleans", false, true, true, "bit"},
    {RigKind::DualNumbersZ, "DualNumbersZ", true, true, true, "dual"},
    {RigKind::WordRigXY, "WordRigXY", false, false, false, "word-xy"},
    {RigKind::FreeIsometryRig, "FreeIsometryRig", false, true, false, "word-isometry"},
}};

bool is_word_rig(RigKind k) { return k == RigKind::WordRigXY || k == RigKind::FreeIsometryRig; }

void prune_zeros(Scalar::Words& w) {
    for (auto it = w.terms.begin(); it != w.terms.end();) {
        if (it->second == 0)
            it = w.terms.erase(it);
        else
            ++it;
    }
}

}  // namespace

const RigDescriptor& rig_info(RigKind k) { return kRigs[static_cast<std::size_t>(k)]; }

RigKind rig_by_name(const std::string& name) {
    for (const auto& d : kRigs)
        if (d.name == name) return d.kind;
    throw std::invalid_argument("unknown rig: " + name);
}

void Scalar::require_same(const Scalar& a, const Scalar& b) {
    if (a.kind_ != b.kind_)
        throw RigMismatch("rig mismatch: " + a.rig().name + " vs " + b.rig().name);
}

Scalar Scalar::zero(RigKind k) {
    switch (k) {
        case RigKind::Rationals: return Scalar(k, Rational(0));
        case RigKind::GaussianRationals: return Scalar(k, Gaussian{Rational(0), Rational(0)});
        case RigKind::Integers: return Scalar(k, Int(0));
        case RigKind::GF2:
        case RigKind::Booleans: return Scalar(k, false);
        case RigKind::DualNumbersZ: return Scalar(k, Dual{0, 0});
        default: return Scalar(k, Words{});
    }
}

Scalar Scalar::one(RigKind k) {
    switch (k) {
        case RigKind::Rationals: return Scalar(k, Rational(1));
        case RigKind::GaussianRationals: return Scalar(k, Gaussian{Rational(1), Rational(0)});
        case RigKind::Integers: return Scalar(k, Int(1));
        case RigKind::GF2:
        case RigKind::Booleans: return Scalar(k, true);
        case RigKind::DualNumbersZ: return Scalar(k, Dual{1, 0});
        default: {
            Words w;
            w.terms[{0, 0}] = 1;
            return Scalar(k, std::move(w));
        }
    }
}

Scalar Scalar::from_int(RigKind k, long long n) { return from_big_int(k, Int(n)); }

Scalar Scalar::from_big_int(RigKind k, const Int& n) {
    switch (k) {
        case RigKind::Rationals: return Scalar(k, Rational(n));
        case RigKind::GaussianRationals: return Scalar(k, Gaussian{Rational(n), Rational(0)});
        case RigKind::Integers: return Scalar(k, n);
        case RigKind::GF2: return Scalar(k, boost::multiprecision::abs(n) % 2 == 1);
        case RigKind::Booleans:
            if (n < 0) throw std::invalid_argument("Booleans: no negative elements");
            return Scalar(k, n != 0);
        case RigKind::DualNumbersZ: return Scalar(k, Dual{n, 0});
        default: {
            if (n < 0) throw std::invalid_argument(rig_info(k).name + ": no negative elements");
            Words w;
            if (n != 0) w.terms[{0, 0}] = n;
            return Scalar(k, std::move(w));
        }
    }
}

Scalar Scalar::rational(RigKind k, const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    switch (k) {
        case RigKind::Rationals: return Scalar(k, Rational(num, den));
        case RigKind::GaussianRationals:
            return Scalar(k, Gaussian{Rational(num, den), Rational(0)});
        default: throw std::invalid_argument(rig_info(k).name + ": fractions not supported");
    }
}

Scalar Scalar::gaussian(const Rational& re, const Rational& im) {
    return Scalar(RigKind::GaussianRationals, Gaussian{re, im});
}

Scalar Scalar::dual(const Int& a, const Int& b) { return Scalar(RigKind::DualNumbersZ, Dual{a, b}); }

Scalar Scalar::word(RigKind k, std::uint32_t first, std::uint32_t second) {
    if (!is_word_rig(k)) throw std::invalid_argument("word(): not a word rig");
    Words w;
    w.terms[{first, second}] = 1;
    return Scalar(k, std::move(w));
}

bool Scalar::is_zero() const { return *this == zero(kind_); }
bool Scalar::is_one() const { return *this == one(kind_); }

const Rational& Scalar::as_rational() const { return std::get<Rational>(payload_); }
const Int& Scalar::as_int() const { return std::get<Int>(payload_); }
bool Scalar::as_bit() const { return std::get<bool>(payload_); }
const Scalar::Gaussian& Scalar::as_gaussian() const { return std::get<Gaussian>(payload_); }
const Scalar::Dual& Scalar::as_dual() const { return std::get<Dual>(payload_); }
const Scalar::Words& Scalar::as_words() const { return std::get<Words>(payload_); }

Scalar Scalar::add(const Scalar& o) const {
    require_same(*this, o);
    switch (kind_) {
        case RigKind::Rationals: return Scalar(kind_, as_rational() + o.as_rational());
        case RigKind::GaussianRationals: {
            const auto &a = as_gaussian(), &b = o.as_gaussian();
            return Scalar(kind_, Gaussian{a.re + b.re, a.im + b.im});
        }
        case RigKind::Integers: return Scalar(kind_, as_int() + o.as_int());
        case RigKind::GF2: return Scalar(kind_, as_bit() != o.as_bit());
        case RigKind::Booleans: return Scalar(kind_, as_bit() || o.as_bit());
        case RigKind::DualNumbersZ: {
            const auto &a = as_dual(), &b = o.as_dual();
            return Scalar(kind_, Dual{a.a + b.a, a.b + b.b});
        }
        default: {
            Words w = as_words();
            for (const auto& [key, coeff] : o.as_words().terms) w.terms[key] += coeff;
            prune_zeros(w);
            return Scalar(kind_, std::move(w));
        }
    }
}

Scalar Scalar::mul(const Scalar& o) const {
    require_same(*this, o);
    switch (kind_) {
        case RigKind::Rationals: return Scalar(kind_, as_rational() * o.as_rational());
        case RigKind::GaussianRationals: {
            const auto &a = as_gaussian(), &b = o.as_gaussian();
            return Scalar(kind_, Gaussian{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re});
        }
        case RigKind::Integers: return Scalar(kind_, as_int() * o.as_int());
        case RigKind::GF2:
        case RigKind::Booleans: return Scalar(kind_, as_bit() && o.as_bit());
        case RigKind::DualNumbersZ: {
            // (a + bx)(c + dx) = ac + (ad + bc)x, since x^2 = 0.
            const auto &p = as_dual(), &q = o.as_dual();
            return Scalar(kind_, Dual{p.a * q.a, p.a * q.b + p.b * q.a});
        }
        case RigKind::WordRigXY: {
            // (y^a x^b)(y^c x^d): any word containing the factor xy is zero.
            Words w;
            for (const auto& [k1, c1] : as_words().terms)
                for (const auto& [k2, c2] : o.as_words().terms) {
                    auto [a, b] = k1;
                    auto [c, d] = k2;
                    if (b > 0 && c > 0) continue;
                    std::pair<std::uint32_t, std::uint32_t> key =
                        (b == 0) ? std::pair{a + c, d} : std::pair{a, b + d};
                    w.terms[key] += c1 * c2;
                }
            prune_zeros(w);
            return Scalar(kind_, std::move(w));
        }
        default: {
            // (x^j1 (x!)^i1)(x^j2 (x!)^i2): the middle (x!)^i1 x^j2 cancels
            // min(i1, j2) adjacent pairs via the oriented rewrite x!x -> 1.
            Words w;
            for (const auto& [k1, c1] : as_words().terms)
                for (const auto& [k2, c2] : o.as_words().terms) {
                    auto [j1, i1] = k1;
                    auto [j2, i2] = k2;
                    std::uint32_t m = std::min(i1, j2);
                    w.terms[{j1 + (j2 - m), (i1 - m) + i2}] += c1 * c2;
                }
            prune_zeros(w);
            return Scalar(kind_, std::move(w));
        }
    }
}

Scalar Scalar::dagger() const {
    if (!rig().has_dagger) throw std::invalid_argument(rig().name + ": rig has no dagger");
    switch (kind_) {
        case RigKind::GaussianRationals: {
            const auto& g = as_gaussian();
            return Scalar(kind_, Gaussian{g.re, -g.im});
        }
        case RigKind::FreeIsometryRig: {
            // Reversal with x <-> x! maps x^j (x!)^i to x^i (x!)^j.
            Words w;
            for (const auto& [key, coeff] : as_words().terms)
                w.terms[{key.second, key.first}] = coeff;
            return Scalar(kind_, std::move(w));
        }
        default: return *this;  // identity involution
    }
}

Verdict<Scalar> Scalar::negate() const {
    if (rig().has_negatives) return Verdict<Scalar>::exists(neg());
    if (is_zero()) return Verdict<Scalar>::exists(zero(kind_));
    return Verdict<Scalar>::not_exists(rig().name + ": " + format() +
                                       " has no negative (coefficients are natural numbers)");
}

Scalar Scalar::neg() const {
    switch (kind_) {
        case RigKind::Rationals: return Scalar(kind_, -as_rational());
        case RigKind::GaussianRationals: {
            const auto& g = as_gaussian();
            return Scalar(kind_, Gaussian{-g.re, -g.im});
        }
        case RigKind::Integers: return Scalar(kind_, -as_int());
        case RigKind::GF2: return *this;  // characteristic 2
        case RigKind::DualNumbersZ: {
            const auto& d = as_dual();
            return Scalar(kind_, Dual{-d.a, -d.b});
        }
        default:
            if (is_zero()) return *this;
            throw std::invalid_argument(rig().name + ": no negatives");
    }
}

Scalar Scalar::sub(const Scalar& o) const { return add(o.neg()); }

Scalar Scalar::inv() const {
    if (is_zero()) throw std::invalid_argument("inverse of zero");
    switch (kind_) {
        case RigKind::Rationals: return Scalar(kind_, Rational(1) / as_rational());
        case RigKind::GaussianRationals: {
            const auto& g = as_gaussian();
            Rational n = g.re * g.re + g.im * g.im;
            return Scalar(kind_, Gaussian{g.re / n, -g.im / n});
        }
        case RigKind::GF2: return *this;  // the only nonzero element is 1
        default: throw std::invalid_argument(rig().name + ": not a field");
    }
}

// ---------------------------------------------------------------------------
// Formatting

namespace {

std::string format_rational(const Rational& r) {
    std::ostringstream out;
    out << boost::multiprecision::numerator(r);
    if (boost::multiprecision::denominator(r) != 1)
        out << "/" << boost::multiprecision::denominator(r);
    return out.str();
}

// One generator factor of a word term, e.g. "x^3" or "x!" or "y".
void append_factor(std::string& out, const char* gen, std::uint32_t power) {
    if (power == 0) return;
    if (!out.empty()) out += ' ';
    out += gen;
    if (power > 1) out += "^" + std::to_string(power);
}

std::string format_words(const Scalar::Words& w, RigKind kind) {
    if (w.terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [key, coeff] : w.terms) {
        if (!first) out += " + ";
        first = false;
        std::string word;
        if (kind == RigKind::WordRigXY) {
            append_factor(word, "y", key.first);
            append_factor(word, "x", key.second);
        } else {
            append_factor(word, "x", key.first);
            append_factor(word, "x!", key.second);
        }
        if (word.empty()) {
            out += coeff.str();
        } else {
            if (coeff != 1) out += coeff.str() + " ";
            out += word;
        }
    }
    return out;
}

}  // namespace

std::string Scalar::format() const {
    switch (kind_) {
        case RigKind::Rationals: return format_rational(as_rational());
        case RigKind::GaussianRationals: {
            const auto& g = as_gaussian();
            if (g.im == 0) return format_rational(g.re);
            std::string im_part;
            Rational abs_im = g.im < 0 ? Rational(-g.im) : g.im;
            im_part = (abs_im == 1) ? "i" : format_rational(abs_im) + "i";
            if (g.re == 0) return (g.im < 0 ? "-" : "") + im_part;
            return format_rational(g.re) + (g.im < 0 ? "-" : "+") + im_part;
        }
        case RigKind::Integers: return as_int().str();
        case RigKind::GF2:
        case RigKind::Booleans: return as_bit() ? "1" : "0";
        case RigKind::DualNumbersZ: {
            const auto& d = as_dual();
            if (d.b == 0) return d.a.str();
            std::string x_part;
            Int abs_b = d.b < 0 ? Int(-d.b) : d.b;
            x_part = (abs_b == 1) ? "x" : abs_b.str() + "x";
            if (d.a == 0) return (d.b < 0 ? "-" : "") + x_part;
            return d.a.str() + (d.b < 0 ? "-" : "+") + x_part;
        }
        default: return format_words(as_words(), kind_);
    }
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() { return pos < text.size() ? text[pos] : '\0'; }
    bool eat(char c) {
        skip_ws();
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    Int integer() {
        skip_ws();
        std::size_t start = pos;
        if (peek() == '-' || peek() == '+') ++pos;
        std::size_t digits = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == digits) throw ParseError("expected integer", start);
        return Int(text.substr(start, pos - start));
    }
    Rational rational() {
        Int num = integer();
        if (eat('/')) {
            Int den = integer();
            if (den == 0) throw ParseError("zero denominator", pos);
            return Rational(num, den);
        }
        return Rational(num);
    }
    std::uint32_t exponent() {
        // optional ^k after a generator
        if (eat('^')) {
            Int e = integer();
            if (e < 0) throw ParseError("negative exponent", pos);
            return static_cast<std::uint32_t>(e);
        }
        return 1;
    }
};

Scalar parse_gaussian(Cursor& c) {
    // [sign] term { (+|-) term } where term is rational ['i'] or bare 'i'
    Rational re(0), im(0);
    bool any = false;
    while (!c.done()) {
        c.skip_ws();
        int sign = 1;
        if (c.peek() == '+' || c.peek() == '-') {
            if (c.text[c.pos] == '-') sign = -1;
            ++c.pos;
        } else if (any) {
            throw ParseError("expected + or -", c.pos);
        }
        c.skip_ws();
        Rational mag(1);
        bool has_number = false;
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
            mag = c.rational();
            has_number = true;
        }
        c.skip_ws();
        if (c.peek() == 'i') {
            ++c.pos;
            im += sign * mag;
        } else if (has_number) {
            re += sign * mag;
        } else {
            throw ParseError("expected number or i", c.pos);
        }
        any = true;
    }
    if (!any) throw ParseError("empty element", 0);
    return Scalar::gaussian(re, im);
}

Scalar parse_dual(Cursor& c) {
    Int a(0), b(0);
    bool any = false;
    while (!c.done()) {
        c.skip_ws();
        int sign = 1;
        if (c.peek() == '+' || c.peek() == '-') {
            if (c.text[c.pos] == '-') sign = -1;
            ++c.pos;
        } else if (any) {
            throw ParseError("expected + or -", c.pos);
        }
        c.skip_ws();
        Int mag(1);
        bool has_number = false;
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
            mag = c.integer();
            has_number = true;
        }
        c.skip_ws();
        if (c.peek() == 'x') {
            ++c.pos;
            std::uint32_t e = c.exponent();
            // normalization on parse: x^2 and higher vanish
            if (e == 1)
                b += sign * mag;
            else if (e == 0)
                a += sign * mag;
        } else if (has_number) {
            a += sign * mag;
        } else {
            throw ParseError("expected number or x", c.pos);
        }
        any = true;
    }
    if (!any) throw ParseError("empty element", 0);
    return Scalar::dual(a, b);
}

Scalar parse_word_rig(Cursor& c, RigKind kind) {
    Scalar total = Scalar::zero(kind);
    bool any = false;
    while (!c.done()) {
        if (any && !c.eat('+')) throw ParseError("expected +", c.pos);
        c.skip_ws();
        Int coeff(1);
        bool saw_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
            coeff = c.integer();
            saw_coeff = true;
        }
        // Multiply generator factors left to right; normalization happens in mul().
        Scalar term = Scalar::one(kind);
        bool saw_factor = false;
        while (true) {
            c.skip_ws();
            char g = c.peek();
            if (g != 'x' && g != 'y') break;
            ++c.pos;
            bool daggered = false;
            if (c.peek() == '!') {
                ++c.pos;
                daggered = true;
            }
            std::uint32_t e = c.exponent();
            Scalar gen = Scalar::one(kind);
            if (kind == RigKind::WordRigXY) {
                if (daggered) throw ParseError("WordRigXY has no dagger marker", c.pos);
                gen = (g == 'y') ? Scalar::word(kind, 1, 0) : Scalar::word(kind, 0, 1);
            } else {
                if (g == 'y') throw ParseError("FreeIsometryRig has no generator y", c.pos);
                gen = daggered ? Scalar::word(kind, 0, 1) : Scalar::word(kind, 1, 0);
            }
            for (std::uint32_t t = 0; t < e; ++t) term = term.mul(gen);
            saw_factor = true;
        }
        if (!saw_coeff && !saw_factor) throw ParseError("expected term", c.pos);
        total = total.add(Scalar::from_big_int(kind, coeff).mul(term));
        any = true;
    }
    if (!any) throw ParseError("empty element", 0);
    return total;
}

}  // namespace

Scalar parse_element(const std::string& text, RigKind k) {
    Cursor c{text};
    Scalar result = Scalar::zero(k);
    switch (k) {
        case RigKind::Rationals: {
            Rational r = c.rational();
            result = Scalar::rational(k, boost::multiprecision::numerator(r),
                                      boost::multiprecision::denominator(r));
            break;
        }
        case RigKind::GaussianRationals: return parse_gaussian(c);
        case RigKind::Integers:
            result = Scalar::from_big_int(k, c.integer());
            break;
        case RigKind::GF2:
        case RigKind::Booleans: {
            Int n = c.integer();
            if (n != 0 && n != 1) throw ParseError("expected 0 or 1", 0);
            result = n == 1 ? Scalar::one(k) : Scalar::zero(k);
            break;
        }
        case RigKind::DualNumbersZ: return parse_dual(c);
        default: return parse_word_rig(c, k);
    }
    if (!c.done()) throw ParseError("trailing characters", c.pos);
    return result;
}

}  // namespace rigmat
