// Acceptance suite: one line per criterion, all arithmetic exact
// (zero tolerance). Exits nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "rigmat/corpus.hpp"
#include "rigmat/pinv.hpp"
#include "rigmat/positivity.hpp"
#include "rigmat/split.hpp"
#include "rigmat/trace.hpp"

using namespace rigmat;

namespace {

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
};

// --- 1. corpus ---------------------------------------------------------------

bool crit_corpus(std::string& note) {
    auto start = std::chrono::steady_clock::now();
    auto reports = run_all_cases();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    int passed = 0;
    for (const auto& r : reports) {
        if (r.pass) {
            ++passed;
        } else {
            note = r.id + " failed: " + r.detail;
            return false;
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%d/17 cases, %.2f s", passed, secs);
    note = buf;
    if (reports.size() != 17) {
        note += " (wrong case count)";
        return false;
    }
    if (secs >= 10.0) {
        note += " (over the 10 s budget)";
        return false;
    }
    return true;
}

// --- 2. closure of the traced classes ----------------------------------------

bool crit_closure(std::string& note) {
    auto start = std::chrono::steady_clock::now();
    const int kSamples = 200;
    int total = 0;
    for (RigKind rig : {RigKind::Rationals, RigKind::GaussianRationals}) {
        GenConfig cfg;
        cfg.rig = rig;
        cfg.seed = 20240;
        for (ArrowClass cls : {ArrowClass::Unitary, ArrowClass::Isometry,
                               ArrowClass::Coisometry, ArrowClass::Contraction}) {
            for (int i = 0; i < kSamples; ++i) {
                Rng rng(cfg.seed, 0x200 + static_cast<std::uint64_t>(cls),
                        static_cast<std::uint64_t>(i));
                // traced dimension <= 3, ambient dimension <= 6
                int x = rng.uniform(0, 3);
                int room = 6 - x;
                int a = rng.uniform(0, room > 3 ? 3 : room);
                int b = a;
                switch (cls) {
                    case ArrowClass::Isometry: b = a + rng.uniform(0, std::min(2, room - a)); break;
                    case ArrowClass::Coisometry: a = b + rng.uniform(0, std::min(2, room - b)); break;
                    case ArrowClass::Contraction:
                        b = rng.uniform(0, room > 3 ? 3 : room);
                        break;
                    default: break;
                }
                Matrix f = sample_class(cfg, static_cast<std::uint64_t>(i) * 5 + 1, cls,
                                        a + x, b + x);
                TraceProblem tp(f, BlockPartition{a, x}, BlockPartition{b, x});
                if (!closure_check(f, tp, cls)) {
                    note = "closure failed for " + class_name(cls) + " over " +
                           rig_info(rig).name + " at sample " + std::to_string(i);
                    return false;
                }
                ++total;
            }
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "%d samples (200 per class, both rigs), all traces exist in-class, %.1f s",
                  total, secs);
    note = buf;
    if (secs >= 120.0) {
        note += " (over the 2 min budget)";
        return false;
    }
    return true;
}

// --- 3. Penrose verification and uniqueness ----------------------------------

bool enumerate_uniqueness(RigKind k, int rows, int cols, std::string& note) {
    long long fcount = 1LL << (rows * cols);
    for (long long fb = 0; fb < fcount; ++fb) {
        Matrix f(k, rows, cols);
        for (int e = 0; e < rows * cols; ++e)
            if (fb & (1LL << e)) f.set(e / cols, e % cols, Scalar::one(k));
        PinvResult p = pinv(f);
        int witnesses = 0;
        Matrix last(k, cols, rows);
        long long gcount = 1LL << (rows * cols);
        for (long long gb = 0; gb < gcount; ++gb) {
            Matrix g(k, cols, rows);
            for (int e = 0; e < rows * cols; ++e)
                if (gb & (1LL << e)) g.set(e / rows, e % rows, Scalar::one(k));
            if (verify_penrose(f, g)) {
                ++witnesses;
                last = g;
            }
        }
        if (p.verdict.is_exists()) {
            if (witnesses != 1 || last != p.verdict.witness()) {
                note = rig_info(k).name + " " + f.format() + ": " + std::to_string(witnesses) +
                       " penrose witnesses";
                return false;
            }
        } else if (p.verdict.is_not_exists()) {
            if (witnesses != 0) {
                note = rig_info(k).name + " " + f.format() + ": claimed NotExists but " +
                       std::to_string(witnesses) + " witnesses found";
                return false;
            }
        } else {
            note = rig_info(k).name + " " + f.format() + ": Unknown inside the exhaustive regime";
            return false;
        }
    }
    return true;
}

bool crit_penrose(std::string& note) {
    // every Exists result across the rigs satisfies all eight identities
    int verified = 0;
    for (RigKind k : {RigKind::Rationals, RigKind::GaussianRationals, RigKind::Integers,
                      RigKind::GF2, RigKind::Booleans, RigKind::DualNumbersZ}) {
        GenConfig cfg;
        cfg.rig = k;
        cfg.seed = 333;
        for (std::uint64_t i = 0; i < 60; ++i) {
            Rng rng(333, 0x300, i);
            Matrix f = gen_matrix(cfg, i, rng.uniform(0, 3), rng.uniform(0, 3));
            PinvResult p = pinv(f);
            if (!p.verdict.is_exists()) continue;
            // verify_penrose checks Eq-set one and the sliding characterization
            // and asserts their agreement internally
            if (!verify_penrose(f, p.verdict.witness())) {
                note = "penrose identities failed over " + rig_info(k).name;
                return false;
            }
            ++verified;
        }
    }
    // exhaustive uniqueness over GF2 and Booleans up to 3x3
    for (RigKind k : {RigKind::GF2, RigKind::Booleans})
        for (int rows = 1; rows <= 3; ++rows)
            for (int cols = 1; cols <= 3; ++cols)
                if (!enumerate_uniqueness(k, rows, cols, note)) return false;
    note = std::to_string(verified) + " sampled Exists verified; GF2/Boolean <= 3x3 exhaustive";
    return true;
}

// --- 4. coincidence -----------------------------------------------------------

bool crit_coincidence(std::string& note) {
    GenConfig cfg;
    cfg.seed = 444;
    int both = 0, attempts = 0;
    for (std::uint64_t i = 0; both < 500 && attempts < 4000; ++i, ++attempts) {
        Rng rng(444, 0x400, i);
        int a = rng.uniform(0, 2), b = rng.uniform(0, 2), x = rng.uniform(0, 3);
        Matrix f = rng.coin() ? gen_contraction(cfg, i, a + x, b + x)
                              : gen_matrix(cfg, i, b + x, a + x);
        TraceProblem tp(f, BlockPartition{a, x}, BlockPartition{b, x});
        TraceResult ki = kernel_image_trace(tp);
        TraceResult ps = pseudotrace(tp);
        if (!ki.verdict.is_exists() || !ps.verdict.is_exists()) continue;
        ++both;
        if (ki.verdict.witness() != ps.verdict.witness()) {
            note = "values differ at sample " + std::to_string(i);
            return false;
        }
    }
    note = std::to_string(both) + " doubly-defined rational problems, values equal";
    return both >= 500;
}

// --- 5. trace axiom suite ------------------------------------------------------

bool crit_laws(std::string& note) {
    GenConfig cfg;
    cfg.seed = 555;
    LawReport kleene = law_suite(cfg, ArrowClass::All, 200, false);
    if (!kleene.pass()) {
        note = "Kleene suite failed: " + kleene.failures.front().detail;
        return false;
    }
    LawReport total = law_suite(cfg, ArrowClass::Contraction, 200, true);
    if (!total.pass()) {
        note = "contraction totality failed: " + total.failures.front().detail;
        return false;
    }
    // dagger-trace asserted on unitaries as well
    LawReport unitary = law_suite(cfg, ArrowClass::Unitary, 200, true);
    if (!unitary.pass()) {
        note = "unitary suite failed: " + unitary.failures.front().detail;
        return false;
    }
    int checked = 0;
    for (const auto& [law, stats] : kleene.stats) checked += stats.checked;
    note = "8 axioms x 200 instances, Kleene on all maps; total on contractions and unitaries (" +
           std::to_string(checked) + " Kleene instances)";
    return true;
}

// --- 6. EP pipeline -------------------------------------------------------------

bool crit_ep(std::string& note) {
    GenConfig cfg;
    cfg.seed = 666;
    for (int i = 0; i < 200; ++i) {
        Rng rng(666, 0x600, static_cast<std::uint64_t>(i));
        int n = rng.uniform(1, 4);
        Matrix f = gen_contraction(cfg, static_cast<std::uint64_t>(i), n, n);
        Matrix g = sub(identity(RigKind::Rationals, n), f);
        Verdict<Matrix> ep = is_ep(g);
        if (!ep.is_exists()) {
            note = "id - f not EP at sample " + std::to_string(i);
            return false;
        }
        SvdPresentation pres = ep_decompose(g);
        Matrix rebuilt = compose(compose(pres.a1.idem, g), pres.b1.idem);
        if (rebuilt != g || !(pres.a1 == pres.b1)) {
            note = "presentation does not reconstruct id - f at sample " + std::to_string(i);
            return false;
        }
    }
    note = "200 endo-contractions: id - f is EP and the presentation reconstructs it";
    return true;
}

// --- 7. definiteness / maxed-out -----------------------------------------------

bool crit_maxed(std::string& note) {
    int checked = 0;
    for (RigKind rig : {RigKind::Rationals, RigKind::GaussianRationals}) {
        GenConfig cfg;
        cfg.rig = rig;
        cfg.seed = 777;
        for (int i = 0; i < 180; ++i) {
            Rng rng(777, 0x700, static_cast<std::uint64_t>(i));
            int a = rng.uniform(1, 3), extra = rng.uniform(0, 2);
            // column [f1; f2] with f1 an isometry: a contraction only when f2 = 0
            Matrix f1 = gen_isometry(cfg, static_cast<std::uint64_t>(i) * 2, a, a + extra);
            bool zero_tail = rng.coin();
            Matrix f2 = zero_tail ? zero(rig, rng.uniform(0, 2), a)
                                  : gen_matrix(cfg, static_cast<std::uint64_t>(i) * 2 + 1,
                                               rng.uniform(1, 2), a);
            Matrix stacked = assemble({{f1}, {f2}}, BlockPartition{a + extra, f2.rows()},
                                      BlockPartition{a});
            bool is_con = is_contraction(stacked).is_exists();
            if (is_con && !f2.is_zero()) {
                note = "maxed-out column violated over " + rig_info(rig).name;
                return false;
            }
            if (f2.is_zero() && !is_con) {
                note = "isometry with zero tail must remain a contraction";
                return false;
            }
            ++checked;

            // corner form [[id, u],[v, c]]: a contraction only when u = 0, v = 0
            int m = rng.uniform(1, 2), k = rng.uniform(1, 2);
            bool clean = rng.coin();
            Matrix u = clean ? zero(rig, m, k) : gen_matrix(cfg, 900 + static_cast<std::uint64_t>(i), m, k);
            Matrix v = clean ? zero(rig, k, m) : gen_matrix(cfg, 901 + static_cast<std::uint64_t>(i), k, m);
            Matrix c = gen_contraction(cfg, 902 + static_cast<std::uint64_t>(i), k, k);
            Matrix corner = assemble({{identity(rig, m), u}, {v, c}}, BlockPartition{m, k},
                                     BlockPartition{m, k});
            if (is_contraction(corner).is_exists() && !(u.is_zero() && v.is_zero())) {
                note = "maxed-out corner violated over " + rig_info(rig).name;
                return false;
            }
            ++checked;
        }
    }
    // integers: random partial signed permutations are contractions whose
    // rows and columns obey the maxed-out conclusion; crowding any used row
    // or column must be rejected
    int int_checked = 0;
    for (int i = 0; i < 200; ++i) {
        Rng rng(779, 0x701, static_cast<std::uint64_t>(i));
        int rows = rng.uniform(1, 4), cols = rng.uniform(1, 4);
        Matrix f(RigKind::Integers, rows, cols);
        std::vector<int> free_cols;
        for (int c = 0; c < cols; ++c) free_cols.push_back(c);
        int placed = 0;
        for (int r = 0; r < rows && !free_cols.empty(); ++r) {
            if (!rng.coin()) continue;
            int pick = rng.uniform(0, static_cast<int>(free_cols.size()) - 1);
            f.set(r, free_cols[static_cast<std::size_t>(pick)],
                  Scalar::from_int(RigKind::Integers, rng.coin() ? 1 : -1));
            free_cols.erase(free_cols.begin() + pick);
            ++placed;
        }
        if (!is_contraction(f).is_exists()) {
            note = "partial signed permutation rejected as a contraction";
            return false;
        }
        ++int_checked;
        if (placed > 0) {
            // crowd the row of the first placed entry with a second unit
            Matrix crowded = f;
            bool done = false;
            for (int r = 0; r < rows && !done; ++r)
                for (int c = 0; c < cols && !done; ++c)
                    if (!f.at(r, c).is_zero()) {
                        int other = (c + 1) % cols;
                        if (cols > 1) {
                            crowded.set(r, other, Scalar::from_int(RigKind::Integers, 1));
                            done = true;
                        }
                    }
            if (done && is_contraction(crowded).is_exists()) {
                note = "crowded integer row accepted as a contraction";
                return false;
            }
            ++int_checked;
        }
    }
    checked += int_checked;
    note = std::to_string(checked) + " samples across Rationals/GaussianRationals/Integers, zero violations";
    return checked >= 500;
}

// --- 8. non-continuity exhibit ----------------------------------------------

bool crit_noncontinuity(std::string& note) {
    RigKind q = RigKind::Rationals;
    auto traced = [&](const Matrix& m) {
        TraceProblem tp(m, BlockPartition{1, 1}, BlockPartition{1, 1});
        TraceResult t = kernel_image_trace(tp);
        if (!t.verdict.is_exists()) throw std::runtime_error("trace missing");
        return t.verdict.witness();
    };
    Matrix at_identity = traced(identity(q, 2));
    Matrix rot1 = traced(Matrix::from_strings(q, {{"3/5", "-4/5"}, {"4/5", "3/5"}}));
    Matrix rot2 = traced(Matrix::from_strings(q, {{"5/13", "-12/13"}, {"12/13", "5/13"}}));
    Matrix one = Matrix::from_ints(q, {{1}});
    Matrix minus_one = Matrix::from_ints(q, {{-1}});
    if (at_identity != one) {
        note = "trace at the identity is " + at_identity.format();
        return false;
    }
    if (rot1 != minus_one || rot2 != minus_one) {
        note = "rotation traces are " + rot1.format() + ", " + rot2.format();
        return false;
    }
    note = "trace 1 at the identity, -1 at two distinct rational rotations, exact";
    return true;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"corpus-bit-exact", crit_corpus},
        {"traced-class-closure", crit_closure},
        {"penrose-verification", crit_penrose},
        {"trace-coincidence", crit_coincidence},
        {"trace-axiom-suite", crit_laws},
        {"ep-pipeline", crit_ep},
        {"definiteness-maxed-out", crit_maxed},
        {"non-continuity-exhibit", crit_noncontinuity},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string note;
        bool ok = false;
        auto start = std::chrono::steady_clock::now();
        try {
            ok = criteria[i].run(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%zu/8] %-24s %s (%.1f s)%s%s\n", i + 1, criteria[i].name.c_str(),
                    ok ? "PASS" : "FAIL", secs, note.empty() ? "" : " - ", note.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures) std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    else std::printf("acceptance: all 8 criteria pass\n");
    return failures == 0 ? 0 : 1;
}
