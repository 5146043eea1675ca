#include "rigmat/session.hpp"

#include <nlohmann/json.hpp>
#include <sstream>

#include "rigmat/pinv.hpp"
#include "rigmat/positivity.hpp"
#include "rigmat/trace.hpp"

namespace rigmat {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : line) {
        if (ch == '[') ++depth;
        if (ch == ']') --depth;
        if (std::isspace(static_cast<unsigned char>(ch)) && depth == 0) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

bool is_matrix_literal(const std::string& tok) { return !tok.empty() && tok.front() == '['; }

Matrix parse_matrix_literal(const std::string& text, RigKind rig, int line) {
    // [[e, e], [e, e]] with rig-grammar element strings; [] is the 0x0 matrix
    std::size_t pos = 0;
    auto fail = [&](const std::string& what) -> std::runtime_error {
        return SessionError(what + " in matrix literal", line);
    };
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_ws();
    if (pos >= text.size() || text[pos] != '[') throw fail("expected '['");
    ++pos;
    std::vector<std::vector<std::string>> rows;
    skip_ws();
    if (pos < text.size() && text[pos] == ']') {
        ++pos;
    } else {
        for (;;) {
            skip_ws();
            if (pos >= text.size() || text[pos] != '[') throw fail("expected row '['");
            ++pos;
            std::vector<std::string> row;
            std::string cell;
            for (; pos < text.size() && text[pos] != ']'; ++pos) {
                if (text[pos] == ',') {
                    row.push_back(cell);
                    cell.clear();
                } else {
                    cell += text[pos];
                }
            }
            if (pos >= text.size()) throw fail("unterminated row");
            ++pos;  // ']'
            if (!cell.empty() || !row.empty()) row.push_back(cell);
            rows.push_back(std::move(row));
            skip_ws();
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                continue;
            }
            break;
        }
        skip_ws();
        if (pos >= text.size() || text[pos] != ']') throw fail("expected closing ']'");
        ++pos;
    }
    skip_ws();
    if (pos != text.size()) throw fail("trailing characters");
    try {
        return Matrix::from_strings(rig, rows);
    } catch (const ParseError& e) {
        throw SessionError(std::string("element: ") + e.what(), line);
    } catch (const std::exception& e) {
        throw SessionError(e.what(), line);
    }
}

BlockPartition parse_partition(const std::string& tok, int line) {
    if (tok.size() < 2 || tok.front() != '[' || tok.back() != ']')
        throw SessionError("expected partition like [1,2]", line);
    std::vector<int> sizes;
    std::string body = tok.substr(1, tok.size() - 2);
    if (!body.empty()) {
        std::istringstream in(body);
        std::string piece;
        while (std::getline(in, piece, ',')) sizes.push_back(std::stoi(piece));
    }
    return BlockPartition(sizes);
}

struct Evaluator {
    RigKind rig;
    std::map<std::string, Matrix> bindings;

    const Matrix& lookup(const std::string& name, int line) const {
        auto it = bindings.find(name);
        if (it == bindings.end()) throw SessionError("undefined name: " + name, line);
        return it->second;
    }

    Matrix eval_expression(const std::vector<std::string>& toks, std::size_t from, int line) {
        if (from >= toks.size()) throw SessionError("missing expression", line);
        const std::string& head = toks[from];
        if (is_matrix_literal(head)) {
            if (from + 1 != toks.size()) throw SessionError("trailing tokens after literal", line);
            return parse_matrix_literal(head, rig, line);
        }
        auto args = [&](std::size_t count) {
            if (toks.size() - from - 1 != count)
                throw SessionError("operator " + head + " expects " + std::to_string(count) +
                                       " arguments",
                                   line);
        };
        if (head == "compose") {
            if (toks.size() - from - 1 < 2) throw SessionError("compose needs >= 2 names", line);
            Matrix acc = lookup(toks[from + 1], line);
            for (std::size_t i = from + 2; i < toks.size(); ++i)
                acc = compose(acc, lookup(toks[i], line));
            return acc;
        }
        if (head == "dagger") {
            args(1);
            return dagger(lookup(toks[from + 1], line));
        }
        if (head == "oplus") {
            args(2);
            return oplus(lookup(toks[from + 1], line), lookup(toks[from + 2], line));
        }
        if (head == "add") {
            args(2);
            return add(lookup(toks[from + 1], line), lookup(toks[from + 2], line));
        }
        if (head == "sub") {
            args(2);
            return sub(lookup(toks[from + 1], line), lookup(toks[from + 2], line));
        }
        if (head == "identity") {
            args(1);
            return identity(rig, std::stoi(toks[from + 1]));
        }
        // a bare name
        if (from + 1 != toks.size()) throw SessionError("unexpected tokens", line);
        return lookup(head, line);
    }
};

std::string verdict_status(VerdictState s) {
    switch (s) {
        case VerdictState::Exists: return "Exists";
        case VerdictState::NotExists: return "NotExists";
        default: return "Unknown";
    }
}

}  // namespace

SessionDocument parse_session(const std::string& text, const std::string& rig_override) {
    SessionDocument doc;
    bool rig_set = false;
    if (!rig_override.empty()) {
        doc.rig = rig_by_name(rig_override);
        rig_set = true;
    }
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = line;
        auto hash = stripped.find('#');
        if (hash != std::string::npos) stripped.resize(hash);
        std::vector<std::string> toks = tokenize(stripped);
        if (toks.empty()) continue;
        if (toks[0] == "schema") continue;  // informative only
        if (toks[0] == "rig") {
            if (toks.size() != 2) throw SessionError("rig expects one name", lineno);
            if (!rig_set) doc.rig = rig_by_name(toks[1]);
            rig_set = true;
            continue;
        }
        SessionStatement st;
        st.line = lineno;
        st.text = stripped;
        st.kind = toks[0] == "let" ? "let" : toks[0];
        doc.statements.push_back(std::move(st));
    }
    return doc;
}

SessionReport evaluate_session(const SessionDocument& doc, const std::string& kind_filter) {
    SessionReport report;
    report.rig = rig_info(doc.rig).name;
    Evaluator ev{doc.rig, {}};

    for (const SessionStatement& st : doc.statements) {
        std::vector<std::string> toks = tokenize(st.text);
        StatementResult res;
        res.line = st.line;
        res.text = st.text;
        res.kind = st.kind;

        bool asserted = false;
        std::size_t at = 0;
        bool expect_negative = false;
        if (toks[at] == "assert") {
            asserted = true;
            ++at;
            if (at < toks.size() && toks[at] == "not") {
                expect_negative = true;
                ++at;
            }
            if (at >= toks.size()) throw SessionError("empty assertion", st.line);
            res.kind = "assert";
        }
        const std::string op = toks[at];

        bool filter_match = op == kind_filter || (kind_filter == "trace" && op == "pseudotrace");
        if (!kind_filter.empty() && !asserted && op != "let" && !filter_match) continue;

        auto finish_bool = [&](bool value) {
            res.status = value ? "true" : "false";
            if (asserted) {
                bool ok = expect_negative ? !value : value;
                res.status = ok ? "pass" : "fail";
                if (!ok) {
                    res.assert_failed = true;
                    ++report.assert_failures;
                }
            }
        };
        auto finish_verdict = [&](const Verdict<Matrix>& v) {
            res.status = verdict_status(v.state());
            if (v.is_exists()) res.value = v.witness().format();
            res.message = v.message();
            if (asserted) {
                if (v.is_unknown()) {
                    res.status = "unknown";
                    res.assert_unknown = true;
                    ++report.asserted_unknowns;
                } else {
                    bool ok = expect_negative ? v.is_not_exists() : v.is_exists();
                    res.status = ok ? "pass" : "fail";
                    if (!ok) {
                        res.assert_failed = true;
                        ++report.assert_failures;
                    }
                }
            }
        };

        try {
            if (op == "let") {
                if (toks.size() < 4 || toks[at + 2] != "=")
                    throw SessionError("expected: let name = expression", st.line);
                std::string name = toks[at + 1];
                Matrix value = ev.eval_expression(toks, at + 3, st.line);
                ev.bindings.insert_or_assign(name, value);
                res.status = "ok";
                res.value = value.format();
            } else if (op == "print") {
                const Matrix& m = ev.lookup(toks[at + 1], st.line);
                res.status = "ok";
                res.value = m.format();
            } else if (op == "pinv") {
                if (toks.size() - at != 2) throw SessionError("pinv expects one name", st.line);
                PinvResult p = pinv(ev.lookup(toks[at + 1], st.line));
                finish_verdict(p.verdict);
            } else if (op == "trace" || op == "pseudotrace") {
                if (toks.size() - at != 4)
                    throw SessionError(op + " expects: name [a,x] [b,x]", st.line);
                const Matrix& f = ev.lookup(toks[at + 1], st.line);
                TraceProblem tp(f, parse_partition(toks[at + 2], st.line),
                                parse_partition(toks[at + 3], st.line));
                TraceResult t = op == "trace" ? kernel_image_trace(tp) : pseudotrace(tp);
                finish_verdict(t.verdict);
            } else if (op == "is") {
                if (toks.size() - at != 3)
                    throw SessionError("is expects: is predicate name", st.line);
                const std::string& pred = toks[at + 1];
                const Matrix& m = ev.lookup(toks[at + 2], st.line);
                if (pred == "isometry") finish_bool(is_isometry(m));
                else if (pred == "coisometry") finish_bool(is_coisometry(m));
                else if (pred == "unitary") finish_bool(is_unitary(m));
                else if (pred == "selfadjoint") finish_bool(is_self_adjoint(m));
                else if (pred == "idempotent") finish_bool(is_dagger_idempotent(m));
                else if (pred == "contraction") finish_verdict(is_contraction(m));
                else if (pred == "cocontraction") finish_verdict(is_cocontraction(m));
                else throw SessionError("unknown predicate: " + pred, st.line);
            } else if (op == "eq") {
                if (toks.size() - at != 3) throw SessionError("eq expects two names", st.line);
                finish_bool(ev.lookup(toks[at + 1], st.line) == ev.lookup(toks[at + 2], st.line));
            } else {
                throw SessionError("unknown statement: " + op, st.line);
            }
        } catch (const SessionError&) {
            throw;
        } catch (const std::exception& e) {
            throw SessionError(e.what(), st.line);
        }
        report.results.push_back(std::move(res));
    }
    return report;
}

int SessionReport::exit_code() const {
    if (assert_failures > 0) return 1;
    if (asserted_unknowns > 0) return 3;
    return 0;
}

std::string SessionReport::to_json() const {
    nlohmann::json j;
    j["schema"] = schema;
    j["rig"] = rig;
    j["assert_failures"] = assert_failures;
    j["asserted_unknowns"] = asserted_unknowns;
    nlohmann::json stmts = nlohmann::json::array();
    for (const auto& r : results) {
        nlohmann::json s;
        s["line"] = r.line;
        s["statement"] = r.text;
        s["kind"] = r.kind;
        s["status"] = r.status;
        if (!r.value.empty()) s["value"] = r.value;
        if (!r.message.empty()) s["message"] = r.message;
        stmts.push_back(std::move(s));
    }
    j["results"] = std::move(stmts);
    return j.dump(2);
}

}  // namespace rigmat
