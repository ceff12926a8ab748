#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "evospread/bounds.hpp"
#include "evospread/errors.hpp"
#include "evospread/oracle.hpp"
#include "evospread/profiles.hpp"
#include "support.hpp"

using namespace evospread;
using doctest::Approx;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::InvalidParams;
}

double harmonic(std::size_t m) {
    double s = 0.0;
    for (std::size_t k = 1; k <= m; ++k) s += 1.0 / static_cast<double>(k);
    return s;
}

// Survival of the discrete chain (up with prob beta) started at a: reach n
// before a - 1. Direct tridiagonal elimination on the ruin system.
double ruin_oracle(double beta, std::size_t n, std::size_t a) {
    if (a >= n) return 1.0;
    // States a-1 (lost), a..n-1, n (won). Unknowns h_a..h_{n-1}.
    const std::size_t m = n - a;
    std::vector<std::vector<double>> A(m, std::vector<double>(m, 0.0));
    std::vector<double> b(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        A[k][k] = 1.0;
        if (k + 1 < m) A[k][k + 1] = -beta;
        else b[k] += beta;
        if (k > 0) A[k][k - 1] = -(1.0 - beta);
    }
    return testsupport::dense_solve(A, b)[0];
}

}  // namespace

TEST_CASE("theorem 1") {
    const double f[] = {1, 1, 1};
    CHECK(theorem1_upper(f, 0.8).value == Approx(0.8 / 0.6 + 2 / 0.6));
    const double g[] = {2, kInf, kInf};
    CHECK(theorem1_upper(g, 0.8).value == Approx(0.8 / 0.6 / 2));
    CHECK(theorem1_upper(f, 1.0).value == Approx(3.0));
    const double z[] = {1, 0, 1};
    const auto r = theorem1_upper(z, 0.8);
    CHECK(r.value == kInf);
    CHECK(r.degenerate);
    CHECK(r.kind == BoundKind::Upper);
    CHECK(kind_of([&] { theorem1_upper(f, 0.5); }) == ErrorKind::InvalidBeta);
}

TEST_CASE("theorem 1 is nonincreasing in every entry") {
    Engine eng = make_stream(1, 0);
    for (int k = 0; k < 200; ++k) {
        std::vector<double> f(8);
        for (auto& x : f) x = 0.1 + uniform01(eng);
        const double base = theorem1_upper(f, 0.75).value;
        const auto i = uniform_index(eng, 8);
        f[i] *= 1.5;
        CHECK(theorem1_upper(f, 0.75).value <= base);
    }
}

TEST_CASE("corollary 1") {
    const auto k4 = profiles(complete(4, 1.0), ProfileMode::ClosedForm);
    CHECK(corollary1_upper(k4.phi, 0.8, 1.0).value == Approx(0.8 / 0.6 + (1 + 0.75 + 1) / 0.6));
    const double p2[] = {1.0};
    CHECK(corollary1_upper(p2, 0.8, 1.0).value == Approx(3.0));

    // Exact evaluation at complete(1000): 1.75 + 2.5 * 2 * H_999 * 999 / 1000.
    const auto k1000 = profiles(complete(1000, 1.0), ProfileMode::ClosedForm);
    const double exact = 1.75 + 2.5 * 2.0 * harmonic(999) * 999.0 / 1000.0;
    CHECK(corollary1_upper(k1000.phi, 0.7, 1.0).value == Approx(exact).epsilon(1e-12));
    // The expander relaxation with gamma = 1 is the plotted 37.82 curve.
    CHECK(expander_upper(0.7, 1.0, 1.0, 1000).value == Approx(37.823).epsilon(1e-4));

    double sum = 0.0;
    for (double v : k4.phi) sum += 1.0 / v;
    CHECK(corollary1_upper(k4.phi, 0.8, 1e12).value == Approx(sum / 0.6).epsilon(1e-9));
}

TEST_CASE("corollaries 3 and 4") {
    const auto k4 = profiles(complete(4, 1.0), ProfileMode::ClosedForm);
    CHECK(corollary3_lower(k4.eta, 1).value == Approx(2.75));
    CHECK(corollary3_lower(k4.eta, 3).value == Approx(1.0 / k4.eta[2]));
    const auto r6 = profiles(ring(6, 1.0), ProfileMode::ClosedForm);
    CHECK(corollary3_lower(r6.eta, 1).value == Approx(1 + 0.5 + 1.0 / 3 + 0.5 + 1));
    CHECK(corollary4_lower(k4.eta, 1, 1.0).value == Approx(3.75));
    CHECK(corollary4_lower(k4.eta, 1, 1e15).value == Approx(2.75));
    const double p2[] = {2.0};
    CHECK(corollary4_lower(p2, 1, 1.0).value == Approx(1.5));
    const double p2eta[] = {1.0};
    CHECK(corollary4_lower(p2eta, 1, 1.0).value == Approx(2.0));
    CHECK(corollary3_lower(k4.eta, 1).kind == BoundKind::Lower);
    CHECK(kind_of([&] { corollary3_lower(k4.eta, 0); }) == ErrorKind::InvalidParams);
    CHECK(kind_of([&] { corollary3_lower(k4.eta, 4); }) == ErrorKind::InvalidParams);
}

TEST_CASE("corollary 5") {
    auto r6 = ring(6, 1.0);
    const NodeId zero[] = {0};
    CHECK(corollary5_lower(r6, zero).value == Approx(1.0));
    std::vector<NodeId> all{0, 1, 2, 3, 4, 5};
    const auto inf = corollary5_lower(r6, all);
    CHECK(inf.value == kInf);
    CHECK(inf.degenerate);
    CHECK(inf.kind == BoundKind::Lower);
    CHECK(kind_of([] {
              const NodeId s[] = {0};
              corollary5_lower(complete(23, 1.0), s);
          }) == ErrorKind::TooLarge);

    // Path 0-1-2-3 with w = 1, support {1}: best superset {0,1,2} has zeta 1.
    auto p4 = path(4, 1.0);
    const NodeId one[] = {1};
    CHECK(corollary5_lower(p4, one).value == Approx(1.0));
    const NodeId R[] = {0, 1};
    CHECK(corollary5_lower_given(p4, one, R).value == Approx(1.0));
    const NodeId bad[] = {0, 2};
    CHECK(kind_of([&] { corollary5_lower_given(p4, one, bad); }) == ErrorKind::SupportNotSubset);

    Engine eng = make_stream(3, 0, StreamTag::Graph);
    for (double delta : {0.0, 200.0}) {
        auto g = sbm({2000, 0.4, 0.1, 5, 1.0, delta}, eng);
        std::vector<NodeId> block(800);
        for (NodeId i = 0; i < 800; ++i) block[i] = i;
        const auto r = corollary5_lower_given(g, zero, block);
        CHECK(r.value >= 24.0);
    }
}

TEST_CASE("corollary 5 matches enumeration on random graphs") {
    Engine eng = make_stream(4, 0);
    for (int gi = 0; gi < 10; ++gi) {
        auto g = testsupport::random_connected(7, 0.3, eng);
        const NodeId sup[] = {static_cast<NodeId>(gi % 7)};
        double best = kInf;
        for (std::uint64_t m = 1; m < 127; ++m)
            if (m & (std::uint64_t{1} << sup[0])) best = std::min(best, boundary_mask(g, m));
        CHECK(corollary5_lower(g, sup).value == Approx(1.0 / best).epsilon(1e-12));
    }
}

TEST_CASE("log lower and expander upper") {
    CHECK(log_lower(1.0, 1000, 1).value == Approx(6.907755).epsilon(1e-6));
    CHECK(log_lower(1.0, 5, 5).value == 0.0);
    CHECK(log_lower(2.0, static_cast<std::size_t>(std::round(std::exp(2.0) * 100)), 100).value ==
          Approx(1.0).epsilon(1e-3));

    CHECK(expander_upper(0.7, 1.0, 0.5, 1000).value == Approx(1.75 + (2 * std::log(500.0) + 2) / 0.2));
    CHECK(expander_upper(0.95, 1.0, 1.0, 2).value == Approx(0.95 / 0.9 + 2 / 0.9));
    double prev = kInf;
    for (double gamma = 0.1; gamma < 3; gamma += 0.1) {
        const double v = expander_upper(0.8, 1.0, gamma, 500).value;
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("sbm bounds") {
    const auto b = sbm_bounds(0.8, 1.0, 2000, 0.4, 0.1, 5, 1.0);
    CHECK(b.lower.value == Approx(24.0));
    CHECK(b.upper.value == Approx((800 + 300 * (std::log(1000.0) + 1)) / 0.6 + 0.8 / 0.6));
    CHECK(b.upper.value == Approx(5288.55).epsilon(1e-5));
    CHECK(sbm_bounds(0.8, 1.0, 4000, 0.4, 0.1, 5, 1.0).lower.value == Approx(48.0));
    bool whp = false;
    for (const auto& h : b.lower.hypotheses) whp = whp || h == "whp-over-graph";
    CHECK(whp);
}

TEST_CASE("ring lower") {
    CHECK(ring_lower(100, 5.0).value == Approx(4.75));
    CHECK(ring_lower(800, 10.0).value == Approx(19.75));
    const auto r = ring_lower(10, 1e9);
    CHECK(r.value == 0.0);
    CHECK(r.degenerate);
}

TEST_CASE("feedback bounds") {
    const double phi[] = {1, 1};
    const auto f = feedback_bounds(phi, 0.5, 0.8);
    CHECK(f.time_upper.value == Approx(6.0));
    CHECK(f.cost_upper.value == Approx(0.8 / 0.6));
    const double low[] = {0.1, 1, 0.2};
    CHECK(feedback_bounds(low, 0.5, 0.8).cost_upper.value == Approx(2.8 / 0.6));
    CHECK(feedback_bounds(phi, 0.5, 0.8).time_upper.value ==
          Approx(corollary1_upper(phi, 0.8, 0.5).value));

    Engine eng = make_stream(5, 0);
    std::vector<double> prof(30);
    for (auto& x : prof) x = 0.05 + uniform01(eng);
    double pt = kInf, pc = 0.0;
    for (double K = 0.01; K < 1.5; K += 0.02) {
        const auto r = feedback_bounds(prof, K, 0.75);
        CHECK(r.time_upper.value <= pt);
        CHECK(r.cost_upper.value >= pc);
        pt = r.time_upper.value;
        pc = r.cost_upper.value;
    }
}

TEST_CASE("sbm feedback upper") {
    const auto r = sbm_feedback_upper(0.8, 0.01, 0.4, 0.1, 1.0, 2000);
    CHECK(r.cost_upper.value == Approx(4.6667).epsilon(1e-4));
    CHECK(r.time_upper.value ==
          Approx(0.8 / 0.6 / 0.01 + (200 + 300 * (std::log(1000.0) + 1)) / 0.6).epsilon(1e-12));
    CHECK(r.time_upper.value == Approx(4420.55).epsilon(1e-5));
    const double edge = 0.4 * 1.0 * 0.1 / 2.0;
    CHECK(kind_of([&] { sbm_feedback_upper(0.8, edge, 0.4, 0.1, 1.0, 2000); }) == ErrorKind::KTooLarge);
    CHECK(kind_of([] { sbm_feedback_upper(0.8, 0.05, 0.4, 0.1, 1.0, 2000); }) == ErrorKind::KTooLarge);
}

TEST_CASE("moran and birth-death survival") {
    CHECK(moran_lower(0.75) == Approx(2.0 / 3.0));
    CHECK(moran_lower(1.0) == 1.0);
    CHECK(moran_lower(0.5 + 1e-12) < 1e-10);
    CHECK(birth_death_survival(0.75, 3, 2) == Approx(0.75));
    CHECK(birth_death_survival(0.75, 3, 3) == 1.0);
    CHECK(birth_death_survival(0.5, 10, 4) == Approx(1.0 / 7.0));
    CHECK(solve_birth_death(0.75, 3, 2) == Approx(0.75));
    CHECK(solve_birth_death(0.5, 10, 4) == Approx(1.0 / 7.0));
    CHECK(solve_birth_death(0.6, 5, 5) == 1.0);
}

TEST_CASE("birth-death closed form against two independent solves") {
    for (std::size_t n = 2; n <= 50; ++n)
        for (int k = 0; k <= 8; ++k) {
            const double beta = k < 8 ? 0.55 + 0.05 * k : 0.99;
            for (std::size_t a = 1; a < n; ++a) {
                const double v = birth_death_survival(beta, n, a);
                CHECK(std::fabs(v - solve_birth_death(beta, n, a)) <= 1e-12);
                CHECK(std::fabs(v - ruin_oracle(beta, n, a)) <= 1e-12);
                CHECK(v >= moran_lower(beta) - 1e-15);
            }
        }
}

TEST_CASE("bound reports are reproducible and serialize") {
    const auto a = expander_upper(0.8, 2.0, 0.5, 300);
    const auto b = expander_upper(0.8, 2.0, 0.5, 300);
    CHECK(a.value == b.value);
    const auto j = to_json(a);
    CHECK(j.at("name").get<std::string>() == a.name);
    CHECK(j.at("kind") == "upper");
    CHECK(j.at("value").get<double>() == a.value);
    CHECK(j.contains("hypotheses"));
    CHECK(j.contains("inputs"));
    const double z[] = {0.0};
    CHECK(to_json(theorem1_upper(z, 0.8)).at("value") == "inf");
}

TEST_CASE("sandwich on small graphs") {
    Engine eng = make_stream(6, 0, StreamTag::Graph);
    std::vector<Graph> gs{complete(4, 1.0), ring(5, 1.0), path(5, 1.0), star(6, 1.0)};
    for (int k = 0; k < 10; ++k) gs.push_back(erdos_renyi(6, 0.5, 1.0, eng));
    for (const auto& g : gs) {
        const auto p = profiles(g, ProfileMode::Exact);
        ConstantPolicy pol{std::vector<double>(g.size(), 0.0)};
        pol.u[0] = 1.0;
        for (double beta : {0.6, 0.8, 0.95}) {
            const double t = solve_exact(g, beta, pol).time_from_zero();
            CHECK(corollary4_lower(p.eta, 1, 1.0).value <= t + 1e-9);
            CHECK(t <= corollary1_upper(p.phi, beta, 1.0).value + 1e-9);
            const NodeId s[] = {0};
            CHECK(corollary5_lower(g, s).value <= t + 1e-9);
        }
    }
}
