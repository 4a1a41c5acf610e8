// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "amitsur/classify.hpp"
#include "amitsur/dual_algebra.hpp"
#include "fixtures.hpp"

using namespace amitsur;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Accumulates failures; the first message is kept for the summary line.
class Tally {
public:
    void require(bool ok, const std::string& what) {
        if (ok) return;
        ++failures_;
        if (first_.empty()) first_ = what;
    }
    Outcome done(const std::string& summary) const {
        if (failures_ == 0) return {true, summary};
        return {false, std::to_string(failures_) + " failure(s), first: " + first_ + "; " + summary};
    }

private:
    std::size_t failures_ = 0;
    std::string first_;
};

std::string count(std::size_t n) { return std::to_string(n); }

Outcome f4_cohomology() {
    Tally t;
    auto c = make_complex(fixtures::f4_over_f2());
    const auto u2 = enumerate_units(c->ring(2)).size(), u3 = enumerate_units(c->ring(3)).size();
    auto h = compute_h2(*c);
    t.require(u2 == 9, "|units(S^2)| = " + count(u2));
    t.require(u3 == 81, "|units(S^3)| = " + count(u3));
    t.require(h.cocycles.size() == 3, "|Z2| = " + count(h.cocycles.size()));
    t.require(h.coboundaries.size() == 3, "|B2| = " + count(h.coboundaries.size()));
    t.require(h.order == 1, "|H2| = " + std::to_string(h.order));
    return t.done("units 9/81, |Z2| = " + count(h.cocycles.size()) + ", |B2| = " + count(h.coboundaries.size()) +
                  ", |H2| = " + std::to_string(h.order));
}

Outcome pair_partition() {
    Tally t;
    auto census = classify_all(make_complex(fixtures::f2xf2_over_f2()));
    std::size_t coassoc = 0, counit = 0, azumaya = 0;
    for (const auto& e : census.entries) {
        const std::string at = " at " + e.u.to_string();
        t.require(e.coassociative == e.cosickle, "coassociative vs cosickle" + at);
        t.require(e.counit_admitting == e.almost_invertible, "counit vs almost invertible" + at);
        t.require(e.azumaya == e.cocycle, "Azumaya vs unit cocycle" + at);
        coassoc += e.coassociative;
        counit += e.counit_admitting;
        azumaya += e.azumaya;
    }
    t.require(census.entries.size() == 256, "swept " + count(census.entries.size()) + " elements");
    t.require(census.discrepancies() == 0, count(census.discrepancies()) + " census discrepancies");
    return t.done("256 swept; coassociative = cosickle = " + count(coassoc) + ", counit = almost-invertible = " +
                  count(counit) + ", Azumaya = unit cocycle = " + count(azumaya) + ", discrepancies " +
                  count(census.discrepancies()));
}

Outcome coboundary_and_norms() {
    Tally t;
    std::size_t units = 0, cocycles = 0;
    for (const auto& ext : {fixtures::f4_over_f2(), fixtures::gr42_over_z4()}) {
        auto c = make_complex(ext);
        for (const auto& v : enumerate_units(c->ring(2))) {
            ++units;
            t.require(coboundary(*c, coboundary(*c, v)).is_one(), "delta delta != 1 at " + v.to_string());
        }
        for (const auto& u : compute_h2(*c).cocycles) {
            ++cocycles;
            TwistElement te(c, u);
            t.require(check_norm_identities(te), "norm identities at " + u.to_string());
            auto n = normalize(te);
            t.require(n.twist.is_cocycle(), "normalized twist is not a cocycle at " + u.to_string());
            t.require(n.twist.norm().is_one(), "normalized norm is not 1 at " + u.to_string());
            t.require(n.twist.u() == u * coboundary(*c, n.witness), "normalize witness at " + u.to_string());
            auto w = cohomologous(*c, n.twist.u(), u);
            t.require(w && n.twist.u() == u * coboundary(*c, *w), "no verified cohomology witness at " + u.to_string());
        }
    }
    return t.done(count(units) + " units of S^2 and " + count(cocycles) + " cocycles over F4/F2 and GR(4,2)/Z4");
}

Outcome gamma_isomorphisms() {
    Tally t;
    auto c = make_complex(fixtures::f4_over_f2());
    std::size_t n = 0;
    for (const auto& u : compute_h2(*c).cocycles) {
        ++n;
        auto g = verify_gamma(twisted_coring(c, u));
        const std::string at = " at " + u.to_string();
        t.require(g.multiplicative && g.unital && g.bijective && g.image_in_descent, "gamma not a unital iso" + at);
        t.require(g.left_inverse, "gamma^-1 gamma != id" + at);
        t.require(g.right_inverse, "gamma gamma^-1 != id" + at);
        t.require(g.rank_ok && g.closed && g.descent_rank == 4, "dim A(u) = " + count(g.descent_rank) + at);
    }
    return t.done(count(n) + " cocycles, gamma verified with both inverse composites, dim A(u) = 4");
}

Outcome enveloping_maps() {
    Tally t;
    auto c = make_complex(fixtures::f4_over_f2());
    std::size_t n = 0;
    for (const auto& u : compute_h2(*c).cocycles) {
        ++n;
        auto a = right_dual_algebra(twisted_coring(c, u));
        t.require(enveloping_size(a) == 16, "enveloping size " + count(enveloping_size(a)));
        t.require(is_azumaya_algebra(a), "End_R(S)_u not Azumaya at " + u.to_string());
    }
    const bool control = is_azumaya_algebra(algebra_of(*c->ext()));
    t.require(!control, "F4 over F2 reported Azumaya");
    return t.done(count(n) + " twisted End algebras bijective at rank 16; F4 control bijective = " +
                  (control ? "true" : "false"));
}

Outcome monoidal_laws() {
    Tally t;
    std::size_t pairs = 0, witnesses = 0;
    for (const auto& ext : {fixtures::f4_over_f2(), fixtures::gr42_over_z4()}) {
        auto c = make_complex(ext);
        auto z = compute_h2(*c).cocycles;
        BrauerClasses classes(c);
        auto one = canonical_coring(c);
        const auto id = classes.identity();
        for (const auto& u : z) {
            auto Cu = twisted_coring(c, u);
            const std::string at = " at " + u.to_string();
            t.require(recover_twist(coring_tensor(one, Cu)).u() == u, "1 (x) C_u != C_u" + at);
            t.require(recover_twist(coring_tensor(Cu, one)).u() == u, "C_u (x) 1 != C_u" + at);
            t.require(classes.multiply(id, classes.of(Cu)) == classes.of(Cu), "identity class law" + at);
            t.require(recover_twist(coring_tensor(Cu, dual_coring(Cu))).u().is_one(), "C_u (x) C_u^* != C_1" + at);
            t.require(classes.multiply(classes.of(Cu), classes.of(twisted_coring(c, *try_invert(u)))) == id,
                      "class(u) class(u^-1) != 1" + at);
            for (const auto& v : z) {
                ++pairs;
                auto tw = recover_twist(coring_tensor(Cu, twisted_coring(c, v))).u();
                t.require(tw == u * v, "twist(C_u (x) C_v) != uv" + at + ", " + v.to_string());
            }
        }
        auto bc = self_base_change(*c);
        for (const auto& u : z) {
            ++witnesses;
            t.require(check_base_change_witness(*bc, TwistElement(c, u)).verified(),
                      "base-change witness at " + u.to_string());
        }
    }
    return t.done(count(pairs) + " cocycle pairs over F4/F2 and GR(4,2)/Z4, " + count(witnesses) +
                  " base-change witnesses verified");
}

Outcome coassociativity_agreement() {
    Tally t;
    auto pair = make_complex(fixtures::f2xf2_over_f2());
    std::size_t exhaustive = 0;
    for (const auto& u : enumerate_elements(pair->ring(3))) {
        ++exhaustive;
        auto C = twisted_coring(pair, u);
        t.require(coassociative_direct(C) == coassociative_identity(C), "F2xF2 disagreement at " + u.to_string());
    }
    auto gr = make_complex(fixtures::gr42_over_z4());
    const RingPtr& r3 = gr->ring(3);
    const std::uint64_t size = *r3->element_count();
    std::mt19937_64 rng(20240601);
    std::size_t random = 0, positive = 0;
    for (; random < 200; ++random) {
        RingElement u(r3, element_at(*r3, rng() % size));
        auto C = twisted_coring(gr, u);
        const bool direct = coassociative_direct(C);
        positive += direct;
        t.require(direct == coassociative_identity(C), "GR(4,2) disagreement at " + u.to_string());
    }
    return t.done(count(exhaustive) + " F2xF2 twists and " + count(random) + " seeded GR(4,2) twists (" +
                  count(positive) + " coassociative) agree");
}

// Runs the CLI and captures stdout; the exit status lands in `status`.
std::string capture(const std::string& cmd, int& status) {
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) {
        status = -1;
        return out;
    }
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    const int raw = pclose(p);
    status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return out;
}

Outcome cli_determinism() {
    Tally t;
    std::vector<std::filesystem::path> jobs;
    for (const auto& e : std::filesystem::directory_iterator(AMITSUR_JOBS_DIR))
        if (e.path().extension() == ".json") jobs.push_back(e.path());
    std::sort(jobs.begin(), jobs.end());
    t.require(!jobs.empty(), "no job files");
    std::size_t reports = 0;
    for (const auto& job : jobs) {
        for (const char* format : {"text", "json"}) {
            const std::string base = std::string(AMITSUR_CLI) + " " + job.string() + " --format " + format;
            int s1 = 0, s2 = 0, s4 = 0;
            const std::string a = capture(base + " --jobs 1 2>/dev/null", s1);
            const std::string b = capture(base + " --jobs 1 2>/dev/null", s2);
            const std::string c = capture(base + " --jobs 4 2>/dev/null", s4);
            const std::string at = " for " + job.filename().string() + " (" + format + ")";
            t.require(s1 == 0 || s1 == 1, "exit status " + std::to_string(s1) + at);
            t.require(!a.empty(), "empty report" + at);
            t.require(a == b && s1 == s2, "rerun differs" + at);
            t.require(a == c && s1 == s4, "--jobs 4 differs" + at);
            reports += 3;
        }
    }
    return t.done(count(jobs.size()) + " jobs, " + count(reports) + " reports byte-identical across reruns and --jobs 1/4");
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double budget_ms;  // 0: no time bound
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "F4/F2 unit groups and H2", f4_cohomology, 1000},
        {2, "cosickle partition over F2xF2/F2", pair_partition, 1000},
        {3, "delta delta = 1, norm identities, normalization", coboundary_and_norms, 0},
        {4, "gamma isomorphisms onto A(u)", gamma_isomorphisms, 1000},
        {5, "enveloping-map Azumaya test", enveloping_maps, 0},
        {6, "monoidal and duality laws, base-change witness", monoidal_laws, 0},
        {7, "direct coassociativity vs u1u3 = u2u4", coassociativity_agreement, 0},
        {8, "CLI report determinism", cli_determinism, 0},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_ms > 0 && ms >= c.budget_ms) {
            o.pass = false;
            o.detail += "; over the " + std::to_string(int(c.budget_ms)) + " ms budget";
        }
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.1f ms", ms);
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " -- " << o.detail
                  << " [" << timing << "]\n";
        failed += !o.pass;
    }
    std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - std::size_t(failed) << "/"
              << criteria.size() << "\n";
    return failed ? 1 : 0;
}
