#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>

#include "rigmat/verdict.hpp"

namespace rigmat {

using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                           boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::backends::rational_adaptor<
                                      boost::multiprecision::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;

/// The eight scalar rigs shipped with the library.
enum class RigKind {
    Rationals,          // Q
    GaussianRationals,  // Q(i), dagger = complex conjugation
    Integers,           // Z
    GF2,                // field with two elements, identity dagger
    Booleans,           // {0,1} with 1+1 = 1
    DualNumbersZ,       // Z[x]/(x^2), dagger fixes x
    WordRigXY,          // N<x,y>/(xy = 0); no dagger
    FreeIsometryRig,    // N<x,x!>/(x!x = 1), dagger reverses words and swaps x <-> x!
};

struct RigDescriptor {
    RigKind kind;
    std::string name;
    bool has_negatives;
    bool has_dagger;
    bool is_commutative;
    std::string element_grammar;  // short grammar id, documented in the README
};

const RigDescriptor& rig_info(RigKind k);
/// Looks a rig up by its descriptor name ("Rationals", "GF2", ...). Throws on unknown names.
RigKind rig_by_name(const std::string& name);

struct RigMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A scalar of one of the shipped rigs, always held in canonical form,
/// so equality is structural. Immutable once constructed.
class Scalar {
public:
    struct Gaussian {
        Rational re, im;
        bool operator==(const Gaussian&) const = default;
    };
    struct Dual {  // a + b*x with x^2 = 0
        Int a, b;
        bool operator==(const Dual&) const = default;
    };
    // Finite N-linear combination of normal-form words. Key meaning depends on the rig:
    //   WordRigXY:       (a,b) is the word y^a x^b      (all y's before all x's)
    //   FreeIsometryRig: (j,i) is the word x^j (x!)^i   (all x's before all daggers)
    // Coefficients are strictly positive; zero is the empty map.
    struct Words {
        std::map<std::pair<std::uint32_t, std::uint32_t>, Int> terms;
        bool operator==(const Words&) const = default;
    };

    static Scalar zero(RigKind k);
    static Scalar one(RigKind k);
    /// Embeds a machine integer. Throws if the rig has no negatives and n < 0.
    static Scalar from_int(RigKind k, long long n);
    static Scalar from_big_int(RigKind k, const Int& n);
    static Scalar rational(RigKind k, const Int& num, const Int& den);
    static Scalar gaussian(const Rational& re, const Rational& im);
    static Scalar dual(const Int& a, const Int& b);
    /// Single word with coefficient 1 in one of the word rigs; see Words for key meaning.
    static Scalar word(RigKind k, std::uint32_t first, std::uint32_t second);

    RigKind kind() const { return kind_; }
    const RigDescriptor& rig() const { return rig_info(kind_); }

    bool is_zero() const;
    bool is_one() const;
    bool operator==(const Scalar& o) const { return kind_ == o.kind_ && payload_ == o.payload_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar add(const Scalar& o) const;
    /// Rig product this * o (in that order; the rigs are not all commutative).
    Scalar mul(const Scalar& o) const;
    /// Involution. Throws for WordRigXY, which ships without a dagger.
    Scalar dagger() const;
    /// Exists(-a) when a negative exists; over natural-coefficient rigs only zero has one.
    Verdict<Scalar> negate() const;
    /// Unchecked negation; throws when no negative exists.
    Scalar neg() const;
    Scalar sub(const Scalar& o) const;
    /// Multiplicative inverse for the field rigs (Rationals, GaussianRationals, GF2).
    /// Throws on zero or on non-field rigs.
    Scalar inv() const;

    std::string format() const;

    // Payload accessors (throw if the rig does not match).
    const Rational& as_rational() const;
    const Int& as_int() const;
    bool as_bit() const;
    const Gaussian& as_gaussian() const;
    const Dual& as_dual() const;
    const Words& as_words() const;

private:
    using Payload = std::variant<bool, Int, Rational, Gaussian, Dual, Words>;
    Scalar(RigKind k, Payload p) : kind_(k), payload_(std::move(p)) {}
    static void require_same(const Scalar& a, const Scalar& b);

    RigKind kind_;
    Payload payload_;
};

/// Parses an element in the rig's textual grammar. The dagger marker is "!".
/// Throws ParseError (with a position) on malformed input.
Scalar parse_element(const std::string& text, RigKind k);

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

}  // namespace rigmat
