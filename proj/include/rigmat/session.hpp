#pragma once

#include <map>
#include <string>
#include <vector>

#include "rigmat/matrix.hpp"

namespace rigmat {

/// Line-based session format, schema "rigmat-session/1":
///
///   # comment
///   rig Rationals
///   let f = [[1, -1], [0, 1]]
///   let g = dagger f
///   let h = compose f g
///   pinv f
///   trace f [1,1] [1,1]
///   pseudotrace f [1,1] [1,1]
///   is unitary f
///   assert is unitary f
///   assert pinv f
///   assert not pinv f
///   assert eq g h
///   print f
///
/// Matrix literals hold element strings in the rig grammar; all names must
/// be defined before use. Partitions are integer lists.
struct SessionStatement {
    int line = 0;
    std::string text;
    std::string kind;  // let | pinv | trace | pseudotrace | is | assert | print
};

struct SessionDocument {
    RigKind rig = RigKind::Rationals;
    std::vector<SessionStatement> statements;
};

struct SessionError : std::runtime_error {
    SessionError(const std::string& what, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

SessionDocument parse_session(const std::string& text,
                              const std::string& rig_override = std::string());

struct StatementResult {
    int line = 0;
    std::string text;
    std::string kind;
    std::string status;  // ok | Exists | NotExists | Unknown | true | false | pass | fail
    std::string value;   // formatted matrix / witness where applicable
    std::string message;
    bool assert_failed = false;
    bool assert_unknown = false;
};

struct SessionReport {
    std::string schema = "rigmat-report/1";
    std::string rig;
    std::vector<StatementResult> results;
    int assert_failures = 0;
    int asserted_unknowns = 0;

    /// 0 pass, 1 assertion failure, 3 Unknown where existence was asserted.
    int exit_code() const;
    std::string to_json() const;
};

/// Evaluates a session. With a kind filter ("pinv" or "trace"), bindings are
/// still established but only matching query statements are executed.
SessionReport evaluate_session(const SessionDocument& doc,
                               const std::string& kind_filter = std::string());

}  // namespace rigmat
