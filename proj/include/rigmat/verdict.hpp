#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace rigmat {

enum class VerdictState { Exists, NotExists, Unknown };

/// Three-valued outcome of a partial or semi-decidable query.
///
/// Exists carries a witness, NotExists a machine-checkable certificate
/// (as human-readable text describing the obstruction), Unknown the
/// reason the search gave up. Queries over rigs without a decision
/// procedure must never confuse NotExists with Unknown.
template <typename T>
class Verdict {
public:
    static Verdict exists(T witness, std::string note = {}) {
        return Verdict(VerdictState::Exists, std::move(witness), std::move(note));
    }
    static Verdict not_exists(std::string certificate) {
        return Verdict(VerdictState::NotExists, std::nullopt, std::move(certificate));
    }
    static Verdict unknown(std::string reason) {
        return Verdict(VerdictState::Unknown, std::nullopt, std::move(reason));
    }

    VerdictState state() const { return state_; }
    bool is_exists() const { return state_ == VerdictState::Exists; }
    bool is_not_exists() const { return state_ == VerdictState::NotExists; }
    bool is_unknown() const { return state_ == VerdictState::Unknown; }

    const T& witness() const {
        if (!value_) throw std::logic_error("Verdict: no witness (state is " + state_name() + ")");
        return *value_;
    }

    /// Certificate text for NotExists, reason text for Unknown, optional note for Exists.
    const std::string& message() const { return message_; }

    std::string state_name() const {
        switch (state_) {
            case VerdictState::Exists: return "Exists";
            case VerdictState::NotExists: return "NotExists";
            default: return "Unknown";
        }
    }

private:
    Verdict(VerdictState s, std::optional<T> v, std::string m)
        : state_(s), value_(std::move(v)), message_(std::move(m)) {}

    VerdictState state_;
    std::optional<T> value_;
    std::string message_;
};

}  // namespace rigmat
